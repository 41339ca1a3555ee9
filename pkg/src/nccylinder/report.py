"""Report rendering: JSON/CSV/text serialisation and figure output.

Floats are rounded to 15 significant digits before serialisation so that
repeated runs with the same seed produce byte-identical documents.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Sequence

from .checks import CheckResult


def _round15(x: float) -> float:
    if x == 0 or not math.isfinite(x):
        return x
    return float(f"{x:.15g}")


def normalise(obj):
    """Recursively convert complex numbers and round floats for output."""
    if isinstance(obj, complex):
        return {"re": _round15(obj.real), "im": _round15(obj.imag)}
    if isinstance(obj, float):
        return _round15(obj)
    if isinstance(obj, dict):
        return {k: normalise(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [normalise(v) for v in obj]
    if isinstance(obj, CheckResult):
        return normalise(obj.as_dict())
    return obj


def to_json(obj) -> str:
    return json.dumps(normalise(obj), indent=2, sort_keys=True) + "\n"


def _flatten(prefix: str, obj, out: list):
    if isinstance(obj, dict):
        for k in sorted(obj):
            _flatten(f"{prefix}.{k}" if prefix else str(k), obj[k], out)
    elif isinstance(obj, list):
        for idx, v in enumerate(obj):
            _flatten(f"{prefix}[{idx}]", v, out)
    else:
        out.append((prefix, obj))


def to_csv(obj) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    data = normalise(obj)
    if isinstance(data, list) and data and isinstance(data[0], dict) \
            and "name" in data[0]:
        writer.writerow(["name", "residual", "tol", "passed", "detail"])
        for row in data:
            writer.writerow([row["name"], row["residual"], row["tol"],
                             row["passed"], row.get("detail", "")])
    else:
        writer.writerow(["key", "value"])
        flat: list = []
        _flatten("", data, flat)
        for key, value in flat:
            writer.writerow([key, value])
    return buf.getvalue()


def to_text(obj) -> str:
    data = normalise(obj)
    if isinstance(data, list) and data and isinstance(data[0], dict) \
            and "name" in data[0]:
        width = max(len(r["name"]) for r in data)
        lines = []
        for r in data:
            flag = "PASS" if r["passed"] else "FAIL"
            lines.append(f"{r['name']:<{width}}  {flag}  "
                         f"residual={r['residual']:.3e}  tol={r['tol']:.0e}"
                         + (f"  ({r['detail']})" if r.get("detail") else ""))
        n_pass = sum(r["passed"] for r in data)
        lines.append(f"{n_pass}/{len(data)} checks passed")
        return "\n".join(lines) + "\n"
    flat: list = []
    _flatten("", data, flat)
    width = max((len(k) for k, _ in flat), default=0)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in flat) + "\n"


def render(obj, fmt: str) -> str:
    if fmt == "json":
        return to_json(obj)
    if fmt == "csv":
        return to_csv(obj)
    if fmt == "text":
        return to_text(obj)
    raise ValueError(f"unknown format {fmt!r}")


def profile_csv(profile: Sequence[tuple[float, float]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["u", "K"])
    for u, k in profile:
        writer.writerow([_round15(u), _round15(k)])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# figures


def _mpl():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def render_bump_figure(pair, n: int, path: str) -> str:
    """Plot the periodised plateau and square-root bumps to a file."""
    import numpy as np

    from .projections import build_fn_gn

    plt = _mpl()
    fn, gn = build_fn_gn(pair, n)
    hbar = pair.hbar
    u = np.linspace(-0.5 * hbar, (2 * n + 0.5) * hbar, 1200)
    fig, ax = plt.subplots(figsize=(7, 3))
    ax.plot(u, fn(u).real, label="plateau component")
    ax.plot(u, gn(u).real, label="square-root component")
    ax.set_xlabel("u")
    ax.set_title(f"projection bumps, n={n}, hbar={hbar:g}")
    ax.legend(loc="upper right", fontsize=8)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_profile_figure(profile, path: str, title: str = "Gaussian curvature") -> str:
    plt = _mpl()
    us = [p[0] for p in profile]
    ks = [p[1] for p in profile]
    fig, ax = plt.subplots(figsize=(7, 3))
    ax.plot(us, ks)
    ax.set_xlabel("u")
    ax.set_ylabel("K(u)")
    ax.set_title(title)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
