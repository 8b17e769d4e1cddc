"""Command-line front end.

Subcommands:

    point   single-state report: energies, weights, concurrence, criteria
    limits  detection limit temperatures and mean-field T_c for one model
    sweep   1-D parameter sweep emitted as CSV
    figure  regenerate the reference datasets (fig2/fig3/fig4) as CSV files

Exit codes: 0 success, 2 invalid input, 3 I/O failure, 4 solver
non-convergence.  Floats in CSV output carry up to 12 significant
digits; absent values are empty fields.  Output is deterministic:
identical invocations produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import criteria, entanglement, limits, meanfield, states
from .errors import NoConvergence, XyzentError
from .model import XYZParams, canonicalize

PARAM_KEYS = ("vx", "vy", "vz", "b")
STATE_COLUMNS = (
    "concurrence",
    "eof",
    "margin_12",
    "margin_03",
    "disorder_margin",
    "entropic_margin",
)
LIMIT_COLUMNS = (
    "t_exact",
    "t_disorder",
    "t_entropic",
    "t_critical",
    "reentry_lower",
    "reentry_upper",
)


def fmt(x) -> str:
    """CSV float rendering: 12 significant digits, '' for absent."""
    if x is None:
        return ""
    x = float(x)
    if not math.isfinite(x):
        return ""
    return f"{x:.12g}"


def _write_lines(lines, out_path):
    text = "".join(line + "\n" for line in lines)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# shared computation
# ---------------------------------------------------------------------------


def point_report(vx, vy, vz, b, temp) -> dict:
    """Everything `point` prints, as one plain dict (stable key order)."""
    p = canonicalize(vx, vy, vz, b)
    m = states.thermal_mixture(p, temp)
    exact = entanglement.separability_exact(m)
    dis = criteria.disorder_check(m)
    ent = criteria.entropic_check(m)
    pt = entanglement.pt_spectrum(m)
    return {
        "input": {"vx": vx, "vy": vy, "vz": vz, "b": b, "temp": temp},
        "canonical": {
            "vx": p.vx,
            "vy": p.vy,
            "vz": p.vz,
            "b": p.b,
            "flips": list(p.flips),
        },
        "energies": [float(e) for e in m.eigen.energies],
        "probabilities": [float(x) for x in m.probs],
        "concurrence": exact.concurrence,
        "eof": entanglement.entanglement_of_formation(exact.concurrence),
        "exact": {
            "margin_12": exact.margin_12,
            "margin_03": exact.margin_03,
            "entangled": exact.entangled,
            "violated": exact.violated,
        },
        "disorder": {
            "detected": dis.detected,
            "margin": dis.margin,
            "detail": list(dis.detail),
        },
        "entropic": {"detected": ent.detected, "margin": ent.margin},
        "pt_spectrum": [pt.q_0, pt.q_1, pt.q_2, pt.q_3],
    }


def _state_values(p: XYZParams, temp: float) -> dict:
    m = states.thermal_mixture(p, temp)
    exact = entanglement.separability_exact(m)
    return {
        "concurrence": exact.concurrence,
        "eof": entanglement.entanglement_of_formation(exact.concurrence),
        "margin_12": exact.margin_12,
        "margin_03": exact.margin_03,
        "disorder_margin": criteria.disorder_check(m).margin,
        "entropic_margin": criteria.entropic_check(m).margin,
    }


def _limit_values(p: XYZParams, tmax, grid, tol) -> dict:
    lt = limits.limit_temperatures(p, t_max=tmax, grid_n=grid, rel_tol=tol)
    tc = meanfield.critical_temperature(p, method="closed")
    return {
        "t_exact": lt.t_exact,
        "t_disorder": lt.t_disorder,
        "t_entropic": lt.t_entropic,
        "t_critical": tc.t_c,
        "reentry_lower": lt.reentry.lower if lt.reentry else None,
        "reentry_upper": lt.reentry.upper if lt.reentry else None,
    }


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_point(args) -> int:
    rep = point_report(args.vx, args.vy, args.vz, args.b, args.temp)
    if args.format == "json":
        _write_lines([json.dumps(rep)], args.out)
        return 0
    c = rep["canonical"]
    lines = [
        f"params: vx={fmt(args.vx)} vy={fmt(args.vy)} vz={fmt(args.vz)} b={fmt(args.b)} temp={fmt(args.temp)}",
        f"canonical: vx={fmt(c['vx'])} vy={fmt(c['vy'])} vz={fmt(c['vz'])} b={fmt(c['b'])}"
        + (f" (flipped: {', '.join(c['flips'])})" if c["flips"] else ""),
        "energies: " + " ".join(f"E{j}={fmt(e)}" for j, e in enumerate(rep["energies"])),
        "weights: " + " ".join(f"p{j}={fmt(x)}" for j, x in enumerate(rep["probabilities"])),
        f"concurrence: {fmt(rep['concurrence'])}",
        f"entanglement_of_formation: {fmt(rep['eof'])}",
        f"exact: {'entangled' if rep['exact']['entangled'] else 'separable'}"
        f" margin_12={fmt(rep['exact']['margin_12'])} margin_03={fmt(rep['exact']['margin_03'])}"
        + (f" violated={rep['exact']['violated']}" if rep["exact"]["violated"] else ""),
        f"disorder: {'detected' if rep['disorder']['detected'] else 'not detected'}"
        f" margin={fmt(rep['disorder']['margin'])}",
        f"entropic: {'detected' if rep['entropic']['detected'] else 'not detected'}"
        f" margin={fmt(rep['entropic']['margin'])}",
        "pt_spectrum: " + " ".join(fmt(q) for q in rep["pt_spectrum"]),
    ]
    _write_lines(lines, args.out)
    return 0


def cmd_limits(args) -> int:
    p = canonicalize(args.vx, args.vy, args.vz, args.b)
    lt = limits.limit_temperatures(p, t_max=args.tmax, grid_n=args.grid, rel_tol=args.tol)
    tc_closed = meanfield.critical_temperature(p, method="closed")
    tc_numeric = meanfield.critical_temperature(p, method="numeric")
    row = {
        "vx": args.vx,
        "vy": args.vy,
        "vz": args.vz,
        "b": args.b,
        "t_exact": lt.t_exact,
        "t_disorder": lt.t_disorder,
        "t_entropic": lt.t_entropic,
        "t_critical_closed": tc_closed.t_c,
        "t_critical_numeric": tc_numeric.t_c,
        "reentry_lower": lt.reentry.lower if lt.reentry else None,
        "reentry_upper": lt.reentry.upper if lt.reentry else None,
        "reentry_two_level": lt.reentry.two_level if lt.reentry else None,
    }
    if args.format == "json":
        _write_lines([json.dumps(row)], args.out)
    else:
        _write_lines(
            [",".join(row), ",".join(fmt(v) for v in row.values())],
            args.out,
        )
    return 0


_AXES = ("temp", "b", "v_plus", "v_minus", "vz")


def _sweep_params(args, value: float) -> tuple[XYZParams, float | None]:
    """Parameters and temperature for one grid point of the sweep."""
    vx, vy, vz, b, temp = args.vx, args.vy, args.vz, args.b, args.temp
    if args.axis == "temp":
        temp = value
    elif args.axis == "b":
        b = value
    elif args.axis == "vz":
        vz = value
    else:
        v_plus, v_minus = 0.5 * (vx + vy), 0.5 * (vx - vy)
        if args.axis == "v_plus":
            v_plus = value
        else:
            v_minus = value
        vx, vy = v_plus + v_minus, v_plus - v_minus
    return canonicalize(vx, vy, vz, b), temp


def cmd_sweep(args) -> int:
    if args.steps < 2:
        raise XyzentError(f"steps must be >= 2, got {args.steps}")
    if not args.start < args.stop:
        raise XyzentError(f"need from < to, got {args.start} and {args.stop}")

    groups = [g.strip() for g in args.outputs.split(",")] if args.outputs else None
    if groups is None:
        groups = ["state"] if args.axis == "temp" else ["limits"]
        if args.axis != "temp" and args.temp is not None:
            groups.insert(0, "state")
    for g in groups:
        if g not in ("state", "limits"):
            raise XyzentError(f"unknown output group {g!r}")
    if "state" in groups and args.axis != "temp" and args.temp is None:
        raise XyzentError("state columns on a parameter axis need --temp")

    columns = [args.axis]
    if "state" in groups:
        columns += list(STATE_COLUMNS)
    if "limits" in groups:
        columns += list(LIMIT_COLUMNS)

    values = np.linspace(args.start, args.stop, args.steps)
    lines = [",".join(columns)]
    for value in values:
        p, temp = _sweep_params(args, float(value))
        row = {args.axis: value}
        if "state" in groups:
            row.update(_state_values(p, temp))
        if "limits" in groups:
            row.update(_limit_values(p, args.tmax, args.grid, args.tol))
        lines.append(",".join(fmt(row[c]) for c in columns))
    _write_lines(lines, args.out)
    return 0


_FIGURES = {
    # v_plus, v_minus, field values for the concurrence-vs-T panel
    "fig2": (1.0, 0.0, (0.0, 0.5, 1.0, 1.5)),
    "fig3": (0.0, 1.0, (0.0, 0.5, 1.0, 2.0)),
    "fig4": (1.0, 0.7, (0.5, 0.8, 0.9, 1.0, 1.2)),
}


def cmd_figure(args) -> int:
    import os

    v_plus, v_minus, top_fields = _FIGURES[args.which]
    vx, vy = v_plus + v_minus, v_plus - v_minus
    os.makedirs(args.out, exist_ok=True)

    # top: concurrence vs temperature at a few fields
    temps = np.linspace(0.0, 2.5, 501)[1:]
    lines = ["b,temp,concurrence"]
    for b in top_fields:
        p = canonicalize(vx, vy, 0.0, b)
        for t in temps:
            m = states.thermal_mixture(p, float(t))
            c = entanglement.separability_exact(m).concurrence
            lines.append(f"{fmt(b)},{fmt(t)},{fmt(c)}")
    _write_lines(lines, os.path.join(args.out, f"{args.which}_top.csv"))

    # center: limit temperatures vs field; bottom: concurrence at each limit
    v_unit = v_plus if v_plus > 0.0 else v_minus
    fields = np.linspace(0.0, 2.0, args.steps) * v_unit
    center = [
        "b_over_v,v_over_b,t_exact,t_disorder,t_entropic,t_critical,"
        "reentry_lower,reentry_upper,reentry_two_level"
    ]
    bottom = ["b_over_v,v_over_b,c_at_t_exact,c_at_t_disorder,c_at_t_entropic,c_at_t_critical"]
    for b in fields:
        p = canonicalize(vx, vy, 0.0, float(b))
        lt = limits.limit_temperatures(p, t_max=args.tmax, grid_n=args.grid, rel_tol=args.tol)
        tc = meanfield.critical_temperature(p, method="closed")
        ratio = b / v_unit
        inv = 1.0 / ratio if ratio > 0.0 else None
        center.append(
            ",".join(
                fmt(x)
                for x in (
                    ratio,
                    inv,
                    lt.t_exact,
                    lt.t_disorder,
                    lt.t_entropic,
                    tc.t_c,
                    lt.reentry.lower if lt.reentry else None,
                    lt.reentry.upper if lt.reentry else None,
                    lt.reentry.two_level if lt.reentry else None,
                )
            )
        )

        def c_at(t):
            if t is None or t <= 0.0:
                return None
            return entanglement.separability_exact(states.thermal_mixture(p, t)).concurrence

        bottom.append(
            ",".join(
                fmt(x)
                for x in (
                    ratio,
                    inv,
                    c_at(lt.t_exact if lt.t_exact > 0 else None),
                    c_at(lt.t_disorder),
                    c_at(lt.t_entropic),
                    c_at(tc.t_c),
                )
            )
        )
    _write_lines(center, os.path.join(args.out, f"{args.which}_center.csv"))
    _write_lines(bottom, os.path.join(args.out, f"{args.which}_bottom.csv"))
    return 0


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


def _load_config(path) -> dict:
    cfg = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise XyzentError(f"bad config line: {line!r}")
            key, _, value = line.partition("=")
            cfg[key.strip()] = value.strip()
    return cfg


_FLOAT_KEYS = {"vx", "vy", "vz", "b", "temp", "tmax", "tol"}
_INT_KEYS = {"grid", "steps"}


def _apply_config(args):
    if not getattr(args, "config", None):
        return
    cfg = _load_config(args.config)
    for key, value in cfg.items():
        if not hasattr(args, key):
            continue  # keys for other subcommands are fine in one file
        if key in args._explicit:
            continue  # flags win over the file
        if key in _FLOAT_KEYS:
            value = float(value)
        elif key in _INT_KEYS:
            value = int(value)
        setattr(args, key, value)


class _Tracking(argparse.ArgumentParser):
    """Records which options were given explicitly, so config-file values
    only fill the gaps."""

    def parse_args(self, argv=None, namespace=None):
        args = super().parse_args(argv, namespace)
        explicit = set()
        argv = list(sys.argv[1:] if argv is None else argv)
        for token in argv:
            if token.startswith("--"):
                explicit.add(token[2:].split("=")[0].replace("-", "_"))
        args._explicit = explicit
        return args


def _add_common(sub, temp_default=None):
    sub.add_argument("--vx", type=float, default=0.0)
    sub.add_argument("--vy", type=float, default=0.0)
    sub.add_argument("--vz", type=float, default=0.0)
    sub.add_argument("--b", type=float, default=0.0)
    sub.add_argument("--temp", type=float, default=temp_default)
    sub.add_argument("--tmax", type=float, default=None, help="scan range override")
    sub.add_argument("--grid", type=int, default=limits.DEFAULT_GRID, help="scan grid points")
    sub.add_argument("--tol", type=float, default=limits.DEFAULT_REL_TOL, help="bisection relative tolerance")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--out", default=None, help="output file (default: stdout)")
    sub.add_argument("--config", default=None, help="key=value parameter file; flags win")


def build_parser() -> argparse.ArgumentParser:
    parser = _Tracking(prog="xyzent", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("point", help="report one thermal state")
    _add_common(sp, temp_default=None)
    sp.set_defaults(func=cmd_point)

    sl = subs.add_parser("limits", help="limit temperatures for one model")
    _add_common(sl)
    sl.set_defaults(func=cmd_limits)

    ss = subs.add_parser("sweep", help="1-D parameter sweep as CSV")
    _add_common(ss)
    ss.add_argument("--axis", choices=_AXES, required=True)
    ss.add_argument("--from", dest="start", type=float, required=True)
    ss.add_argument("--to", dest="stop", type=float, required=True)
    ss.add_argument("--steps", type=int, required=True)
    ss.add_argument("--outputs", default=None, help="comma list: state,limits")
    ss.set_defaults(func=cmd_sweep)

    sf = subs.add_parser("figure", help="regenerate a reference dataset")
    sf.add_argument("which", choices=tuple(_FIGURES))
    _add_common(sf)
    sf.add_argument("--steps", type=int, default=201, help="field grid points")
    sf.set_defaults(func=cmd_figure)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        if args.command == "point":
            if args.temp is None:
                raise XyzentError("point requires --temp")
            if args.temp < 0:
                raise XyzentError(f"temperature must be >= 0, got {args.temp}")
        elif args.command == "sweep":
            if args.axis == "temp":
                if "temp" in args._explicit:
                    raise XyzentError("axis parameter 'temp' cannot also be fixed")
            elif args.axis in ("b", "vz") and args.axis in args._explicit:
                raise XyzentError(f"axis parameter {args.axis!r} cannot also be fixed")
        return args.func(args)
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except XyzentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
