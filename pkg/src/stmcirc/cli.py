"""Command-line interface: ``stmcirc {junction,design,sweep,bound,verify}``."""

import argparse
import logging
import sys
import warnings
from pathlib import Path

import numpy as np

from . import checks, fileio
from .bound import bound_report
from .compose import design_response, extract_metrics, isolation_notches, junction_response
from .config import builtin_config, load_config
from .errors import EmptyFeasibleSet, NoBand, NoResonance, NumericFailure, StmError
from .filters import LadderFilter, SynthesisSpec, junction_yc, optimize_df, synthesize_filter
from .junction import center_frequency, characteristic_admittance_at, matched_insertion_loss
from .sweep import SweepGrid, cells_to_csv, locus_to_csv, nearest_cell, optimal_locus, run_sweep

log = logging.getLogger("stmcirc")

FORMATS = ("csv", "s3p", "svg", "all")


def _wants(args, kind):
    return args.format in ("all", kind)


def _load(args):
    return load_config(args.config) if args.config else builtin_config()


def _out(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_junction(args):
    cfg = _load(args)
    p = cfg.junction
    out = _out(args)
    freqs = cfg.freqs()
    try:
        fc = center_frequency(p)
    except NoResonance as exc:
        fc = None
        print(f"junction does not circulate: {exc}")
    resp = junction_response(p, freqs, fc if fc is not None else p.f_res)
    yc = characteristic_admittance_at(p, freqs)
    if fc is not None:
        yc_c = characteristic_admittance_at(p, fc)
        print(f"center (B = 0):  {fc / 1e6:.3f} MHz")
        print(f"G/Y0 at center:  {yc_c.real / p.y0:.4f}   B/Y0: {yc_c.imag / p.y0:.2e}")
        try:
            m = extract_metrics(resp, cfg.alpha_db, cfg.beta_db)
            print(f"IX / IL / RL:    {m.ix_center_db:.2f} / {m.il_center_db:.3f} / {m.rl_center_db:.2f} dB")
            print(f"{cfg.beta_db:g} dB IX band:  {m.bw_frac * 100:.2f} %")
        except NoBand as exc:
            print(f"no isolation band: {exc}")
    if _wants(args, "s3p"):
        fileio.write_text(out / "junction.s3p", fileio.touchstone_text(freqs, resp.s, p.z0, ["junction S-parameters"]))
    if _wants(args, "csv"):
        fileio.write_text(out / "yc.csv", fileio.csv_text(("f_Hz", "G_S", "B_S"), (freqs, yc.real, yc.imag)))
    if _wants(args, "svg"):
        fileio.plot_sparams(out / "junction_s.svg", freqs, resp.s, "Junction")
        fileio.plot_admittance(out / "yc.svg", freqs, yc, p.y0)
    return 0


def _design_filter(cfg, fc):
    p = cfg.junction
    if cfg.f_lo is not None:
        spec = SynthesisSpec(cfg.f_lo, cfg.f_hi, p.z0)
        return synthesize_filter(junction_yc(p), spec), spec.df, None
    if cfg.df is not None:
        spec = SynthesisSpec.around(fc, cfg.df, p.z0)
        return synthesize_filter(junction_yc(p), spec), cfg.df, None
    opt = optimize_df(p, cfg.budget, iterations=cfg.synth_iterations)
    return opt.filter, opt.df, opt


def cmd_design(args):
    cfg = _load(args)
    p = cfg.junction
    out = _out(args)
    budget = cfg.budget
    fc = center_frequency(p)
    filt, df, opt = _design_filter(cfg, fc)
    if cfg.filter_q is not None:
        filt = LadderFilter(*filt.elements, q=cfg.filter_q)
    freqs = cfg.freqs()
    resp = design_response(p, filt, freqs, fc)
    try:
        m = extract_metrics(resp, budget.alpha_db, budget.beta_db)
    except NoBand as exc:
        raise type(exc)(f"composed design: {exc}") from None
    notches = isolation_notches(resp)
    bound = bound_report(p, budget).bound
    report = [
        f"center frequency     {fc / 1e6:.3f} MHz",
        f"matching offset df   {df / 1e6:.3f} MHz" + (" (optimized)" if opt else ""),
        f"L1 = {filt.l1 * 1e9:.4f} nH   C1 = {filt.c1 * 1e12:.4f} pF   (shunt, junction side)",
        f"L2 = {filt.l2 * 1e9:.4f} nH   C2 = {filt.c2 * 1e12:.4f} pF   (series, port side)",
        f"{budget.beta_db:g} dB IX bandwidth   {m.bw_frac * 100:.2f} %  [{m.band[0] / 1e6:.2f}, {m.band[1] / 1e6:.2f}] MHz",
        f"global bound         {bound * 100:.2f} %",
        f"in-band IL           {m.il_range_db[0]:.3f} .. {m.il_range_db[1]:.3f} dB",
        f"in-band IX min       {m.ix_min_db:.2f} dB",
        f"in-band RL min       {m.rl_min_db:.2f} dB",
        "isolation notches    " + ", ".join(f"{f / 1e6:.2f}" for f in notches) + " MHz",
    ]
    text = "\n".join(report) + "\n"
    print(text, end="")
    fileio.write_text(out / "metrics.txt", text)
    if _wants(args, "csv"):
        keys = ("center_Hz", "df_Hz", "bw_frac", "band_lo_Hz", "band_hi_Hz", "bound_frac",
                "il_min_dB", "il_max_dB", "ix_min_dB", "rl_min_dB")
        vals = (fc, df, m.bw_frac, m.band[0], m.band[1], bound, *m.il_range_db, m.ix_min_db, m.rl_min_db)
        fileio.write_text(out / "metrics.csv", fileio.csv_text(keys, [[float(v)] for v in vals]))
        fileio.write_text(
            out / "elements.csv",
            fileio.csv_text(("element", "value"), (("L1_H", "C1_F", "L2_H", "C2_F"), [float(v) for v in filt.elements])),
        )
    if _wants(args, "s3p"):
        fileio.write_text(out / "design.s3p", fileio.touchstone_text(freqs, resp.s, p.z0, ["composed circulator"]))
    if _wants(args, "svg"):
        fileio.plot_sparams(out / "design_mag.svg", freqs, resp.s, "Matched circulator")
        fileio.plot_phase(out / "design_phase.svg", freqs, resp.s, "Matched circulator")
    return 0


def _sweep_grid(cfg):
    s = cfg.sweep
    fm = np.linspace(s.get("fm_min", 0.01), s.get("fm_max", 0.30), int(s.get("fm_points", 60)))
    dc = np.linspace(s.get("dc_min", 0.02), s.get("dc_max", 0.95), int(s.get("dc_points", 60)))
    return SweepGrid(tuple(fm), tuple(dc), cfg.budget, cfg.junction)


def cmd_sweep(args):
    cfg = _load(args)
    out = _out(args)
    grid = _sweep_grid(cfg)
    workers = args.workers if args.workers is not None else int(cfg.sweep.get("workers", 1))
    cells = run_sweep(grid, workers=workers)
    n_ok = sum(c.feasible for row in cells for c in row)
    print(f"{n_ok} of {grid.shape[0] * grid.shape[1]} cells feasible")
    if n_ok == 0:
        raise EmptyFeasibleSet("no cell of the sweep meets the IL/IX requirement")
    ref = nearest_cell(cells, 0.11, cfg.junction.dc_ratio)
    if ref.feasible:
        print(f"cell ({ref.fm_ratio:.4f}, {ref.dc_ratio:.4f}): bound {ref.bound_frac * 100:.2f} %")
    locus = optimal_locus(cells)
    if _wants(args, "csv"):
        fileio.write_text(out / "map.csv", cells_to_csv(cells))
        fileio.write_text(out / "locus.csv", locus_to_csv(locus))
    if _wants(args, "svg"):
        fileio.plot_map(out / "map.svg", cells)
    return 0


def cmd_bound(args):
    cfg = _load(args)
    budget = cfg.budget
    rep = bound_report(cfg.junction, budget)
    il = matched_insertion_loss(cfg.junction, rep.fc)
    lines = [
        f"return-loss budget   {budget.rho_db:.3f} dB (|G| <= {budget.gamma_lin:.5f})",
        f"center frequency     {rep.fc / 1e6:.3f} MHz",
        f"Rc = {rep.model.rc:.3f} ohm   Lc = {rep.model.lc * 1e9:.3f} nH   Qc = {rep.model.qc:.3f}",
        f"Bode-Fano branch     {rep.bode_fano * 100:.2f} %",
        f"modulation branch    {rep.modulation_limit * 100:.2f} %",
        f"global bound         {rep.bound * 100:.2f} %",
        f"matched junction IL  {il:.3f} dB",
    ]
    text = "\n".join(lines) + "\n"
    print(text, end="")
    if _wants(args, "csv"):
        keys = ("rho_dB", "gamma_lin", "fc_Hz", "rc_ohm", "lc_H", "qc", "bode_fano", "modulation_limit", "bound")
        vals = (budget.rho_db, budget.gamma_lin, rep.fc, rep.model.rc, rep.model.lc, rep.model.qc,
                rep.bode_fano, rep.modulation_limit, rep.bound)
        fileio.write_text(_out(args) / "bound.csv", fileio.csv_text(keys, [[float(v)] for v in vals]))
    return 0


def cmd_verify(args):
    cfg = _load(args)
    p = cfg.junction
    filt = None
    try:
        fc = center_frequency(p)
        filt = _design_filter(cfg, fc)[0]
    except StmError as exc:
        print(f"[SKIP] design-dependent checks: {exc}")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RuntimeWarning)
        results = checks.run_all(p, filt, cfg.freqs())
    for w in caught:
        print(f"warning: {w.message}")
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)} passed, {len(failed)} failed")
    return NumericFailure.exit_code if failed else 0


def build_parser():
    parser = argparse.ArgumentParser(prog="stmcirc", description="Broadband modulated-capacitance circulator design")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, help_ in (
        ("junction", cmd_junction, "junction S-parameters and characteristic admittance"),
        ("design", cmd_design, "synthesize matching filters and compose the circulator"),
        ("sweep", cmd_sweep, "bandwidth-bound map over modulation parameters"),
        ("bound", cmd_bound, "bandwidth bound of one junction"),
        ("verify", cmd_verify, "run the reference cross-checks"),
    ):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--config", help="key = value config file (default: built-in table1.cfg)")
        sp.add_argument("--out", default="out", help="output directory")
        sp.add_argument("--format", choices=FORMATS, default="all")
        if name == "sweep":
            sp.add_argument("--workers", type=int, default=None, help="worker processes")
        sp.set_defaults(func=fn)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except StmError as exc:
        print(f"error ({type(exc).__name__}): {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
