"""Bandwidth-bound map over modulation frequency and depth."""

import csv
import io
import logging
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bound import SpecBudget, bound_report, reflection_budget
from .errors import EmptyRow, StmError
from .junction import REFERENCE_JUNCTION, JunctionParams, center_frequency, matched_insertion_loss

log = logging.getLogger(__name__)

CSV_FIELDS = ("fm_ratio", "dc_ratio", "feasible", "bound_frac", "bode_fano", "modulation_limit", "fc_Hz", "note")


@dataclass(frozen=True)
class SweepGrid:
    """Cell axes. ``fm`` of a cell is ``fm_ratio`` times the modulated tank resonance."""

    fm_ratios: tuple
    dc_ratios: tuple
    budget: SpecBudget
    base: JunctionParams = REFERENCE_JUNCTION

    def __post_init__(self):
        for name, vals, hi in (("fm_ratios", self.fm_ratios, 0.5), ("dc_ratios", self.dc_ratios, 1.0)):
            arr = np.asarray(vals, dtype=float)
            if arr.ndim != 1 or arr.size == 0:
                raise ValueError(f"{name} must be a non-empty 1-D sequence")
            if np.any(np.diff(arr) <= 0):
                raise ValueError(f"{name} must be strictly increasing")
            if arr[0] <= 0 or arr[-1] >= hi:
                raise ValueError(f"{name} must lie in (0, {hi})")
        object.__setattr__(self, "fm_ratios", tuple(float(v) for v in self.fm_ratios))
        object.__setattr__(self, "dc_ratios", tuple(float(v) for v in self.dc_ratios))

    @classmethod
    def default(cls, budget=None, base=REFERENCE_JUNCTION, points=60):
        budget = reflection_budget(3.0, 20.0) if budget is None else budget
        return cls(
            tuple(np.linspace(0.01, 0.30, points)),
            tuple(np.linspace(0.02, 0.95, points)),
            budget,
            base,
        )

    @property
    def shape(self):
        return len(self.fm_ratios), len(self.dc_ratios)


@dataclass(frozen=True)
class SweepCell:
    fm_ratio: float
    dc_ratio: float
    feasible: bool
    bound_frac: float | None = None
    bode_fano: float | None = None
    modulation_limit: float | None = None
    fc: float | None = None
    note: str = ""


def cell_params(base, fm_ratio, dc_ratio):
    probe = base.with_(dc_ratio=dc_ratio, fm=0.0)
    return base.with_(dc_ratio=dc_ratio, fm=fm_ratio * probe.f_res)


def evaluate_cell(base, budget, fm_ratio, dc_ratio):
    """Feasibility and bound for one cell; failures are recorded, never raised."""
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            p = cell_params(base, fm_ratio, dc_ratio)
        fc = center_frequency(p)
        il = matched_insertion_loss(p, fc)
        if il > budget.alpha_db:
            return SweepCell(fm_ratio, dc_ratio, False, fc=fc, note=f"matched IL {il:.3f} dB > alpha")
        rep = bound_report(p, budget)
    except (StmError, ValueError) as exc:
        return SweepCell(fm_ratio, dc_ratio, False, note=f"{type(exc).__name__}: {exc}")
    return SweepCell(
        fm_ratio, dc_ratio, True,
        float(rep.bound), float(rep.bode_fano), float(rep.modulation_limit), float(rep.fc),
    )


def _row(args):
    base, budget, fm_ratio, dc_ratios = args
    return [evaluate_cell(base, budget, fm_ratio, dc) for dc in dc_ratios]


def run_sweep(grid, workers=1):
    """Cell matrix indexed ``[fm_index][dc_index]``.

    The budget itself is checked once; rows are distributed over ``workers``
    processes with results ordered by grid index.
    """
    reflection_budget(grid.budget.alpha_db, grid.budget.beta_db)
    jobs = [(grid.base, grid.budget, fm, grid.dc_ratios) for fm in grid.fm_ratios]
    if workers <= 1:
        rows = [_row(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(_row, jobs))
    for row in rows:
        _check_contiguous(row)
    return rows


def _check_contiguous(row):
    flags = [c.feasible for c in row]
    runs = sum(1 for i, f in enumerate(flags) if f and (i == 0 or not flags[i - 1]))
    if runs > 1:
        log.info("row fm_ratio=%.4g: feasible set split into %d intervals", row[0].fm_ratio, runs)
    return runs <= 1


@dataclass(frozen=True)
class LocusPoint:
    fm_ratio: float
    dc_ratio: float
    bound: float


def best_in_row(row):
    """Feasible cell with the largest bound; ties go to the smallest dc_ratio."""
    feasible = [c for c in row if c.feasible]
    if not feasible:
        raise EmptyRow(f"no feasible cell at fm_ratio = {row[0].fm_ratio:.4g}" if row else "empty row")
    best = max(feasible, key=lambda c: (c.bound_frac, -c.dc_ratio))
    return LocusPoint(best.fm_ratio, best.dc_ratio, best.bound_frac)


def optimal_locus(cells, strict=False):
    """Best cell per fm row. Empty rows are skipped unless ``strict``."""
    out = []
    for row in cells:
        try:
            out.append(best_in_row(row))
        except EmptyRow:
            if strict:
                raise
            log.debug("skipping row without feasible cells")
    return out


def nearest_cell(cells, fm_ratio, dc_ratio):
    flat = [c for row in cells for c in row]
    return min(flat, key=lambda c: (abs(c.fm_ratio - fm_ratio), abs(c.dc_ratio - dc_ratio)))


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def cells_to_csv(cells):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for row in cells:
        for c in row:
            w.writerow([_fmt(getattr(c, k)) for k in ("fm_ratio", "dc_ratio", "feasible", "bound_frac", "bode_fano", "modulation_limit", "fc")] + [c.note])
    return buf.getvalue()


def cells_from_csv(text):
    """Inverse of :func:`cells_to_csv`; rows are regrouped by ``fm_ratio``."""
    reader = csv.DictReader(io.StringIO(text))
    rows, current = [], None

    def opt(s):
        return float(s) if s != "" else None

    for rec in reader:
        cell = SweepCell(
            float(rec["fm_ratio"]), float(rec["dc_ratio"]), rec["feasible"] == "1",
            opt(rec["bound_frac"]), opt(rec["bode_fano"]), opt(rec["modulation_limit"]), opt(rec["fc_Hz"]),
            rec["note"],
        )
        if current is None or cell.fm_ratio != current:
            rows.append([])
            current = cell.fm_ratio
        rows[-1].append(cell)
    return rows


def locus_to_csv(locus):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("fm_ratio", "dc_ratio", "bound_frac"))
    for pt in locus:
        w.writerow((repr(pt.fm_ratio), repr(pt.dc_ratio), repr(pt.bound)))
    return buf.getvalue()
