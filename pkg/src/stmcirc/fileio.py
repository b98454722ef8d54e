"""Touchstone, CSV and SVG output."""

import csv
import io
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .netcore import CyclicThreePort, Kind

SIG_DIGITS = 9


def _num(x):
    return f"{x:.{SIG_DIGITS - 1}e}"


def touchstone_text(freqs, s, z0=50.0, comments=()):
    """Version-1 ``.s3p`` text: one matrix row per line, frequency in GHz."""
    dense = s.dense().reshape(-1, 3, 3)
    lines = [f"! {c}" for c in comments]
    lines.append(f"# GHz S RI R {z0:g}")
    for f, m in zip(np.asarray(freqs, dtype=float), dense):
        for i in range(3):
            vals = " ".join(f"{_num(v.real)} {_num(v.imag)}" for v in m[i])
            lead = _num(f / 1e9) if i == 0 else " " * len(_num(f / 1e9))
            lines.append(f"{lead} {vals}")
    return "\n".join(lines) + "\n"


def parse_touchstone(text):
    """``(freqs_Hz, dense S (n, 3, 3), z0)`` from ``.s3p`` text in RI format."""
    unit_scale = {"HZ": 1.0, "KHZ": 1e3, "MHZ": 1e6, "GHZ": 1e9}
    scale, z0, tokens = 1e9, 50.0, []
    for raw in text.splitlines():
        line = raw.split("!", 1)[0].strip()
        if not line:
            continue
        if line.startswith("#"):
            opts = line[1:].upper().split()
            if "S" not in opts or "RI" not in opts:
                raise ConfigError(f"unsupported Touchstone option line: {line!r}")
            for u, k in unit_scale.items():
                if u in opts:
                    scale = k
            if "R" in opts:
                z0 = float(opts[opts.index("R") + 1])
            continue
        tokens.extend(float(t) for t in line.split())
    rec = 1 + 18
    if len(tokens) % rec:
        raise ConfigError(f"Touchstone data length {len(tokens)} is not a multiple of {rec}")
    arr = np.array(tokens).reshape(-1, rec)
    freqs = arr[:, 0] * scale
    s = (arr[:, 1::2] + 1j * arr[:, 2::2]).reshape(-1, 3, 3)
    return freqs, s, z0


def csv_text(header, columns):
    """CSV with a header row; floats printed with ``repr`` for exact round-trips."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in zip(*columns):
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def write_text(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return path


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "stmcirc"
    plt.rcParams["svg.fonttype"] = "none"
    return plt


def _save(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", metadata={"Date": None})
    return path


def plot_sparams(path, freqs, s, title, ylim=(-40.0, 0.0)):
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    fghz = np.asarray(freqs) / 1e9
    for label, v in (("|S11|", s.diag), ("|S21|", s.fwd), ("|S31|", s.bwd)):
        ax.plot(fghz, 20 * np.log10(np.abs(v)), label=label)
    ax.set_ylim(*ylim)
    ax.set_xlabel("Frequency (GHz)")
    ax.set_ylabel("Magnitude (dB)")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend()
    out = _save(fig, path)
    plt.close(fig)
    return out


def plot_phase(path, freqs, s, title):
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    fghz = np.asarray(freqs) / 1e9
    for label, v in (("S11", s.diag), ("S21", s.fwd), ("S31", s.bwd)):
        ax.plot(fghz, np.degrees(np.angle(v)), label=label)
    ax.set_xlabel("Frequency (GHz)")
    ax.set_ylabel("Phase (deg)")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend()
    out = _save(fig, path)
    plt.close(fig)
    return out


def plot_admittance(path, freqs, yc, y0):
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    fghz = np.asarray(freqs) / 1e9
    ax.plot(fghz, np.real(yc) / y0, label="G / Y0")
    ax.plot(fghz, np.imag(yc) / y0, label="B / Y0")
    ax.axhline(0.0, color="k", lw=0.5)
    ax.set_xlabel("Frequency (GHz)")
    ax.set_ylabel("Normalized admittance")
    ax.set_title("Characteristic admittance")
    ax.grid(True, alpha=0.3)
    ax.legend()
    out = _save(fig, path)
    plt.close(fig)
    return out


def plot_map(path, cells):
    plt = _pyplot()
    fm = np.array([row[0].fm_ratio for row in cells])
    dc = np.array([c.dc_ratio for c in cells[0]])
    z = np.array([[c.bound_frac * 100 if c.feasible else np.nan for c in row] for row in cells])
    fig, ax = plt.subplots(figsize=(6, 4.5))
    mesh = ax.pcolormesh(fm, dc, z.T, shading="nearest")
    fig.colorbar(mesh, ax=ax, label="Bound (%)")
    ax.set_xlabel("fm / f0")
    ax.set_ylabel("dC / C0")
    ax.set_title("Fractional bandwidth bound")
    out = _save(fig, path)
    plt.close(fig)
    return out


def response_from_touchstone(text, ref_admittance=None):
    freqs, dense, z0 = parse_touchstone(text)
    y0 = 1.0 / z0 if ref_admittance is None else ref_admittance
    return freqs, CyclicThreePort.from_dense(dense, Kind.SCATTERING, y0)
