"""Weaker entanglement-detection criteria: disorder and entropic.

Both compare the global state against its single-qubit reductions and
can only under-detect: every detection implies genuine entanglement, but
entangled states may pass.  The disorder (majorization) check is exact
at zero field; the entropic check is strictly weaker for mixed states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entanglement import separability_exact
from .states import BellMixture, SpinAverages, spin_averages

__all__ = [
    "CriterionReport",
    "exact_check",
    "disorder_check",
    "disorder_margins_spin_form",
    "entropic_check",
    "majorization_margins",
]


@dataclass(frozen=True)
class CriterionReport:
    criterion: str  # "exact" | "disorder" | "entropic"
    detected: bool
    #: most-violated signed margin; negative means detection
    margin: float
    #: per-inequality margins backing `margin`
    detail: tuple[float, ...]


def exact_check(m: BellMixture) -> CriterionReport:
    """The exact verdict repackaged as a CriterionReport."""
    rep = separability_exact(m)
    return CriterionReport(
        criterion="exact",
        detected=rep.entangled,
        margin=float(min(rep.margin_12, rep.margin_03)),
        detail=(rep.margin_12, rep.margin_03),
    )


def disorder_check(m: BellMixture) -> CriterionReport:
    """Disorder (majorization) criterion.

    A separable state is majorized by each of its reductions; for two
    qubits that reduces to comparing largest eigenvalues, i.e.

        p_j <= [1 + |<S_z>|] / 2   for every j,

    with |<S_z>| = |(b/Delta)(p_2 - p_1)|.  Detection requires some
    p_j > 1/2, and the check is exact when b = 0.
    """
    bound = 0.5 * (1.0 + abs(m.eigen.b_ratio * (m.probs[2] - m.probs[1])))
    margins = tuple(float(bound - p) for p in m.probs)
    worst = min(margins)
    return CriterionReport(
        criterion="disorder",
        detected=bool(worst < 0.0),
        margin=worst,
        detail=margins,
    )


def disorder_margins_spin_form(a: SpinAverages) -> tuple[float, float]:
    """Disorder margins recast in total-spin averages.

    |<S_x^2 - S_y^2>| <= sqrt(<1-S_z^2>^2 + 2 |<S_z>| <1-S_z^2>)
    |<S_x^2 + S_y^2 - 1>| <= <S_z^2> + |<S_z>|

    Each line is sign-equivalent to the eigenvalue form restricted to
    levels 1,2 and 0,3 respectively (margins differ in magnitude).
    """
    w = 1.0 - a.sz2  # = p_0 + p_3, never negative
    margin_12 = math.sqrt(max(0.0, w * w + 2.0 * abs(a.sz) * w)) - abs(a.sx2 - a.sy2)
    margin_03 = (a.sz2 + abs(a.sz)) - abs(a.sx2 + a.sy2 - 1.0)
    return margin_12, margin_03


def entropic_check(m: BellMixture) -> CriterionReport:
    """Von Neumann entropic criterion, base-2 on both sides.

    margin = S(rho) - max(S(rho_A), S(rho_B)); the global entropy comes
    straight from the mixture weights (the state is diagonal in its own
    eigenbasis) and each reduction has spectrum (1 +- <S_z>)/2.
    """
    p = m.probs
    nz = p[p > 0.0]
    s_global = float(-(nz * np.log2(nz)).sum())
    s_reduced = _binary_entropy_bits(0.5 * (1.0 + abs(spin_averages(m).sz)))
    # the two reductions are identical by permutation symmetry
    margin = float(s_global - s_reduced)
    return CriterionReport(
        criterion="entropic",
        detected=bool(margin < 0.0),
        margin=margin,
        detail=(margin, margin),
    )


def _binary_entropy_bits(q: float) -> float:
    e = 0.0
    for x in (q, 1.0 - q):
        if x > 0.0:
            e -= x * math.log2(x)
    return e


def majorization_margins(spectrum4, spectrum2) -> np.ndarray:
    """Partial-sum margins of 'spectrum4 majorized by spectrum2'.

    Both spectra are sorted descending and the short one zero-padded;
    entry k is sum(top k of spectrum2) - sum(top k of spectrum4).  All
    entries >= 0 means majorized.  For a two-entry right-hand side only
    the first partial sum can bind, which is why disorder_check needs
    just the largest-eigenvalue comparison; this general form backs that
    reduction in tests.
    """
    a = np.sort(np.asarray(spectrum4, dtype=float))[::-1]
    r = np.zeros_like(a)
    b = np.sort(np.asarray(spectrum2, dtype=float))[::-1]
    r[: b.size] = b
    return np.cumsum(r) - np.cumsum(a)
