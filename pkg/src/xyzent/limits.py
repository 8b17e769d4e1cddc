"""Temperature-domain analysis of thermal states.

Limit temperatures, entangled temperature intervals, the
vanishing-plus-reentry window, reference closed forms, and the two-level
mixture thresholds.  All detection boundaries are located by a grid scan
of the relevant signed margin followed by bisection.

The two exact margins are scanned separately and their violation sets
merged.  Each margin crosses zero transversally, so both reentry
endpoints are resolved to machine precision even though the separable
gap between them shrinks exponentially as the field approaches the
level-crossing value (far below what any min-margin scan could see).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .errors import DegenerateBasis
from .model import EigenSystem, XYZParams, eigensystem
from .states import thermal_probabilities

__all__ = [
    "LimitTemperatures",
    "MixtureThresholds",
    "ReentryWindow",
    "ClosedFormLimits",
    "thermal_margin_exact",
    "entangled_intervals",
    "limit_temperature",
    "limit_temperatures",
    "reentry_window",
    "reentry_two_level",
    "mixture_thresholds",
    "closed_form_limits",
]

DEFAULT_GRID = 4096
DEFAULT_REL_TOL = 1e-10
_LN2 = math.log(2.0)


@dataclass(frozen=True)
class LimitTemperatures:
    """Summary of all detection limits for one parameter set.

    t_exact is 0.0 when the thermal state is separable at every
    temperature; t_disorder / t_entropic are None when the criterion
    never fires.
    """

    t_exact: float
    t_disorder: float | None
    t_entropic: float | None
    intervals: tuple[tuple[float, float], ...]
    reentry: "ReentryWindow | None"


@dataclass(frozen=True)
class MixtureThresholds:
    """Critical weights of the two-level mixture over levels 2 and 3.

    p_c = 1/(1 + v_minus/Delta): the single weight at which the mixture
    is separable; its concurrence is |p_2/p_c - 1|.  p_d and p_d_prime
    bound the window the disorder criterion cannot see into:
    p_d = 1/(2 - |b/Delta|) >= 1/2 >= p_d_prime = 1/(2 + |b/Delta|).
    """

    p_c: float
    p_d: float
    p_d_prime: float


@dataclass(frozen=True)
class ReentryWindow:
    """Separable gap inside the entangled temperature range.

    lower/upper are the scanned endpoints; two_level is the closed-form
    gap location (E_3 - E_2) / ln(Delta / v_minus) of the truncated
    two-level mixture, or None where that expression is undefined.
    """

    lower: float
    upper: float
    two_level: float | None


@dataclass(frozen=True)
class ClosedFormLimits:
    """Reference closed forms, when the parameter case admits one.

    case "xx" (v_minus = vz = 0):  t_exact = v_plus / ln(1 + sqrt(2)),
    independent of the field.  case "max_anisotropy" (v_plus = vz = 0):
    t_exact = Delta/arcsinh(Delta/v_minus) and t_disorder =
    Delta/arcsinh(Delta/(Delta - b)).  Otherwise empty.
    """

    case: str | None
    t_exact: float | None = None
    t_disorder: float | None = None


# ---------------------------------------------------------------------------
# margins as functions of temperature (vectorized over a T grid)
# ---------------------------------------------------------------------------


def _exact_margin_arrays(eig: EigenSystem, ts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Exact separability margins of the thermal state over a T grid.

    Works with half-exponent Gibbs amplitudes a_j = exp(-(E_j-E_min)/2T)
    (so cross terms like sqrt(p1 p2) survive where p1 itself would
    underflow) and groups the dominant weights first.  This keeps both
    margins free of spurious sign flips at any temperature: a genuinely
    separable model never scans as entangled.
    """
    e = eig.energies
    a = np.exp(-0.5 * (e[:, None] - e.min()) / np.asarray(ts)[None, :])
    w = a * a
    z = w.sum(axis=0)
    vm_r = eig.vm_ratio
    hi = np.maximum(w[1], w[2])
    lo = np.minimum(w[1], w[2])
    big = np.maximum(w[0], w[3])
    small = np.minimum(w[0], w[3])
    m12 = ((big - vm_r * hi) + small + vm_r * lo) / z
    m03 = (np.hypot(vm_r * (w[2] - w[1]), 2.0 * a[1] * a[2]) - np.abs(w[3] - w[0])) / z
    return m12, m03


def _disorder_margin_array(eig: EigenSystem, ts: np.ndarray) -> np.ndarray:
    p = thermal_probabilities(eig, ts)
    bound = 0.5 * (1.0 + np.abs(eig.b_ratio * (p[2] - p[1])))
    return bound - p.max(axis=0)


def _entropic_margin_array(eig: EigenSystem, ts: np.ndarray) -> np.ndarray:
    p = thermal_probabilities(eig, ts)
    s_global = -xlogy(p, p).sum(axis=0) / _LN2
    q = 0.5 * (1.0 + np.abs(eig.b_ratio * (p[1] - p[2])))
    s_reduced = -(xlogy(q, q) + xlogy(1.0 - q, 1.0 - q)) / _LN2
    return s_global - s_reduced


def thermal_margin_exact(p: XYZParams, temperature: float) -> tuple[float, float]:
    """The exact separability margins in their thermal (hyperbolic) form.

    margin 1:  cosh(b_+ ) - (v_-/Delta) e^{b_z} sinh(b_D)
    margin 2:  sqrt(1 + (v_-/Delta)^2 sinh^2(b_D)) - e^{-b_z} sinh(b_+)

    with b_+ = v_plus/T, b_z = vz/T, b_D = Delta/T.  Same signs as the
    probability-form margins (they differ by the positive factor
    Z e^{+-b_z/2} / 2), so min < 0 iff the thermal state is entangled.
    Evaluated with a factored-out exponential so extreme beta yields
    +-inf rather than NaN.
    """
    if temperature <= 0.0 or not math.isfinite(temperature):
        raise ValueError(f"temperature must be positive, got {temperature!r}")
    eig = eigensystem(p)
    beta = 1.0 / temperature
    a = beta * p.v_plus
    d = beta * eig.delta
    z = beta * p.vz
    vm_r = eig.vm_ratio

    m = max(a, z + d, z - d, 0.0)
    bracket = (
        0.5 * (math.exp(a - m) + math.exp(-a - m))
        - 0.5 * vm_r * (math.exp(z + d - m) - math.exp(z - d - m))
    )
    margin_1 = _scaled(bracket, m)

    m = max(d, a - z, -a - z, 0.0)
    sinh_d = 0.5 * (math.exp(d - m) - math.exp(-d - m))
    lhs = math.hypot(math.exp(-m), vm_r * sinh_d)
    rhs = 0.5 * (math.exp(a - z - m) - math.exp(-a - z - m))
    margin_2 = _scaled(lhs - rhs, m)
    return margin_1, margin_2


def _scaled(bracket: float, log_factor: float) -> float:
    if bracket == 0.0:
        return 0.0
    if log_factor > 700.0:  # exp would overflow; sign is already decided
        return math.copysign(math.inf, bracket)
    return bracket * math.exp(log_factor)


# ---------------------------------------------------------------------------
# scanning machinery
# ---------------------------------------------------------------------------


def _bisect(f, lo: float, hi: float, f_lo_neg: bool, rel: float = 1e-10) -> float:
    """Refine a sign change of f inside (lo, hi) to relative width `rel`."""
    for _ in range(200):
        if hi - lo <= rel * hi:
            break
        mid = 0.5 * (lo + hi)
        if (f(mid) < 0.0) == f_lo_neg:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _violation_intervals(f_arr, ts: np.ndarray, t_end: float, rel: float = DEFAULT_REL_TOL):
    """Maximal intervals where the sampled margin is negative.

    Grid endpoints are refined by bisection; a negative first sample
    extends the interval down to 0 (intervals are open there), and a
    negative last sample extends it to t_end.
    """
    vals = f_arr(ts)
    neg = vals < 0.0
    if not neg.any():
        return []

    def f(t):
        return float(f_arr(np.array([t]))[0])

    intervals = []
    idx = np.flatnonzero(np.diff(neg.astype(int)) != 0)
    starts = [0.0] if neg[0] else []
    for i in idx:
        t_cross = _bisect(f, float(ts[i]), float(ts[i + 1]), f_lo_neg=bool(neg[i]), rel=rel)
        if neg[i]:  # leaving the violated region
            intervals.append((starts.pop(), t_cross))
        else:
            starts.append(t_cross)
    if neg[-1]:
        intervals.append((starts.pop(), float(t_end)))
    return intervals


def _default_t_max(p: XYZParams) -> float:
    return 20.0 * max(p.energy_scale, 1e-6)


def _scan_grid(p: XYZParams, eig: EigenSystem, t_max: float | None, grid_n: int):
    """Resolve the scan range (adaptive doubling while still entangled at
    the top) and assemble the grid, densified around the two-level gap."""
    if grid_n < 64:
        raise ValueError(f"grid_n must be >= 64, got {grid_n}")
    if t_max is None:
        t_max = _default_t_max(p)
        for _ in range(8):
            m12, m03 = _exact_margin_arrays(eig, np.array([t_max]))
            if min(m12[0], m03[0]) >= 0.0:
                break
            t_max *= 2.0
    elif t_max <= 0.0:
        raise ValueError(f"t_max must be positive, got {t_max!r}")

    ts = np.linspace(0.0, t_max, grid_n + 1)[1:]
    t_r = reentry_two_level(p)
    e = eig.energies
    if t_r is not None and e[3] < min(e[0], e[1]):
        # the separable gap sits near t_r; make sure both lobes around it
        # are sampled even when they are much narrower than the base grid
        window = np.linspace(t_r / grid_n, min(3.0 * t_r, t_max), grid_n)
        ts = np.unique(np.concatenate([ts, window]))
        ts = ts[(ts > 0.0) & (ts <= t_max)]
    return ts, float(t_max)


def entangled_intervals(
    p: XYZParams,
    t_max: float | None = None,
    grid_n: int = DEFAULT_GRID,
    rel_tol: float = DEFAULT_REL_TOL,
) -> list[tuple[float, float]]:
    """Maximal temperature intervals on which the thermal state is entangled.

    Each of the two exact margins is scanned and bisected on its own and
    the violation sets are merged; they are disjoint (at most one margin
    is negative at a time), so any overlap beyond refinement noise would
    be a bug and is folded together defensively.  Empty result means
    separable at every sampled temperature.
    """
    eig = eigensystem(p)
    ts, t_end = _scan_grid(p, eig, t_max, grid_n)
    raw = _violation_intervals(lambda t: _exact_margin_arrays(eig, t)[0], ts, t_end, rel=rel_tol)
    raw += _violation_intervals(lambda t: _exact_margin_arrays(eig, t)[1], ts, t_end, rel=rel_tol)
    raw.sort()
    merged: list[tuple[float, float]] = []
    for lo, hi in raw:
        if merged and lo < merged[-1][1]:
            if merged[-1][1] - lo > 1e-6 * max(lo, merged[-1][1]):
                merged[-1] = (merged[-1][0], max(hi, merged[-1][1]))  # genuine overlap
                continue
            lo = merged[-1][1]  # refinement noise; keep the gap structure
        merged.append((lo, max(lo, hi)))
    return merged


_MARGIN_FNS = {
    "exact": lambda eig, ts: np.minimum(*_exact_margin_arrays(eig, ts)),
    "disorder": _disorder_margin_array,
    "entropic": _entropic_margin_array,
}


def limit_temperature(
    p: XYZParams,
    criterion: str = "exact",
    t_max: float | None = None,
    grid_n: int = DEFAULT_GRID,
    rel_tol: float = DEFAULT_REL_TOL,
) -> float | None:
    """Largest temperature at which the criterion detects entanglement of
    the thermal state, or None if it never fires."""
    if criterion == "exact":
        ints = entangled_intervals(p, t_max=t_max, grid_n=grid_n, rel_tol=rel_tol)
        return ints[-1][1] if ints else None
    try:
        f = _MARGIN_FNS[criterion]
    except KeyError:
        raise ValueError(f"unknown criterion {criterion!r}") from None
    eig = eigensystem(p)
    ts, t_end = _scan_grid(p, eig, t_max, grid_n)
    ints = _violation_intervals(lambda t: f(eig, t), ts, t_end, rel=rel_tol)
    return ints[-1][1] if ints else None


def reentry_two_level(p: XYZParams) -> float | None:
    """Closed-form gap temperature (E_3 - E_2) / ln(Delta / v_minus).

    Defined only when level 2 lies below level 3 and the logarithm is
    positive (v_minus > 0 and b > 0); None otherwise.
    """
    eig = eigensystem(p)
    vm = p.v_minus
    if vm <= 0.0 or eig.delta <= vm * (1.0 + 1e-15):
        return None
    if eig.energies[2] >= eig.energies[3]:
        return None
    return float((eig.energies[3] - eig.energies[2]) / math.log(eig.delta / vm))


def reentry_window(
    p: XYZParams,
    t_max: float | None = None,
    grid_n: int = DEFAULT_GRID,
    rel_tol: float = DEFAULT_REL_TOL,
) -> ReentryWindow | None:
    """The separable gap between the two entangled lobes, if present."""
    ints = entangled_intervals(p, t_max=t_max, grid_n=grid_n, rel_tol=rel_tol)
    if len(ints) < 2:
        return None
    return ReentryWindow(lower=ints[0][1], upper=ints[1][0], two_level=reentry_two_level(p))


def limit_temperatures(
    p: XYZParams,
    t_max: float | None = None,
    grid_n: int = DEFAULT_GRID,
    rel_tol: float = DEFAULT_REL_TOL,
) -> LimitTemperatures:
    """All detection limits in one record (see LimitTemperatures)."""
    ints = entangled_intervals(p, t_max=t_max, grid_n=grid_n, rel_tol=rel_tol)
    reentry = None
    if len(ints) >= 2:
        reentry = ReentryWindow(lower=ints[0][1], upper=ints[1][0], two_level=reentry_two_level(p))
    return LimitTemperatures(
        t_exact=ints[-1][1] if ints else 0.0,
        t_disorder=limit_temperature(p, "disorder", t_max=t_max, grid_n=grid_n, rel_tol=rel_tol),
        t_entropic=limit_temperature(p, "entropic", t_max=t_max, grid_n=grid_n, rel_tol=rel_tol),
        intervals=tuple(ints),
        reentry=reentry,
    )


def mixture_thresholds(p: XYZParams) -> MixtureThresholds:
    """Critical weights of the (levels 2, 3) two-level mixture."""
    eig = eigensystem(p)
    if eig.degenerate:
        raise DegenerateBasis("thresholds need Delta > 0")
    return MixtureThresholds(
        p_c=1.0 / (1.0 + eig.vm_ratio),
        p_d=1.0 / (2.0 - eig.b_ratio),
        p_d_prime=1.0 / (2.0 + eig.b_ratio),
    )


def closed_form_limits(p: XYZParams) -> ClosedFormLimits:
    """Reference closed forms for the two special coupling cases."""
    scale = max(p.energy_scale, 1.0)
    tol = 1e-12 * scale
    vp, vm, vz = p.v_plus, p.v_minus, p.vz
    if abs(vm) <= tol and abs(vz) <= tol and vp > tol:
        return ClosedFormLimits(case="xx", t_exact=vp / math.log(1.0 + math.sqrt(2.0)))
    if abs(vp) <= tol and abs(vz) <= tol and vm > tol:
        delta = math.hypot(vm, p.b)
        return ClosedFormLimits(
            case="max_anisotropy",
            t_exact=delta / math.asinh(delta / vm),
            t_disorder=delta / math.asinh(delta / (delta - p.b)),
        )
    return ClosedFormLimits(case=None)
