"""Finite-temperature independent-qubit (mean-field) approximation.

The free energy F = <H> - T S is minimized over product states
rho_A (x) rho_B, each qubit parameterized by an effective field vector
lambda with

    <s> = -lambda tanh(|lambda| / 2T) / (2 |lambda|),

which turns stationarity into the self-consistency conditions

    lambda_i^{A,B} = b delta_{iz} - 2 v_i <s_i^{B,A}>.

A transverse (x or y) component of lambda breaks phase-flip symmetry;
lambda^A != lambda^B breaks permutation symmetry.  The transverse
solution exists below the critical temperature

    T_c = v_max * chi / ln[(1+chi)/(1-chi)],   chi = |b| / (v_max - vz),

feasible for v_max > vz and |b| < v_max - vz, with T_c -> v_max/2 as
chi -> 0.  Entropies here are natural-log (thermodynamic convention).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import root
from scipy.special import logsumexp, xlogy

from .errors import InvalidTemperature, NoConvergence
from .model import XYZParams, eigensystem

__all__ = [
    "MeanFieldSolution",
    "CriticalTemperature",
    "qubit_expectations",
    "mf_free_energy",
    "exact_free_energy",
    "solve_mf",
    "critical_temperature",
]

#: |lambda_{x,y}| above this multiple of v_max counts as a broken phase flip
BREAK_TOL = 1e-6
#: self-consistency residual accepted as converged
RESIDUAL_TOL = 1e-9


@dataclass(frozen=True)
class MeanFieldSolution:
    lambda_a: np.ndarray  # effective field of qubit A, shape (3,)
    lambda_b: np.ndarray
    s_a: np.ndarray  # spin expectation of qubit A, |s| <= 1/2
    s_b: np.ndarray
    free_energy: float
    broken_phase_flip: bool
    broken_permutation: bool
    converged: bool
    iterations: int


@dataclass(frozen=True)
class CriticalTemperature:
    t_c: float | None  # None when the broken solution is infeasible
    chi: float
    v_max: float
    feasible: bool


def _check_temperature(t: float) -> float:
    t = float(t)
    if not math.isfinite(t) or t <= 0.0:
        raise InvalidTemperature(f"mean field needs T > 0, got {t!r}")
    return t


def qubit_expectations(lambdas, temperature: float) -> np.ndarray:
    """<s> for each effective field row; zero field gives zero spin."""
    lam = np.asarray(lambdas, dtype=float)
    norm = np.linalg.norm(lam, axis=-1, keepdims=True)
    amp = np.divide(
        np.tanh(0.5 * norm / temperature), norm, out=np.zeros_like(norm), where=norm > 0.0
    )
    return -0.5 * lam * amp


def _qubit_entropy_nat(s) -> np.ndarray:
    """Natural-log entropy of qubits with spin expectation rows s."""
    m = np.linalg.norm(np.asarray(s, dtype=float), axis=-1)
    up, dn = 0.5 + m, 0.5 - m
    return -(xlogy(up, up) + xlogy(dn, dn))


def _interaction_energy(p: XYZParams, s_a, s_b) -> np.ndarray:
    v = np.array([p.vx, p.vy, p.vz])
    return p.b * (s_a[..., 2] + s_b[..., 2]) - 2.0 * (v * s_a * s_b).sum(axis=-1)


def mf_free_energy(lambda_a, lambda_b, p: XYZParams, temperature: float) -> float:
    """Free energy of the product state defined by the two field vectors.

    Exact for genuinely uncorrelated problems (all couplings zero).
    """
    t = _check_temperature(temperature)
    s_a = qubit_expectations(lambda_a, t)
    s_b = qubit_expectations(lambda_b, t)
    energy = _interaction_energy(p, s_a, s_b)
    return float(energy - t * (_qubit_entropy_nat(s_a) + _qubit_entropy_nat(s_b)))


def exact_free_energy(p: XYZParams, temperature: float) -> float:
    """-T ln Z from the exact spectrum; lower bound for every product state."""
    t = _check_temperature(temperature)
    return float(-t * logsumexp(-eigensystem(p).energies / t))


def _default_seeds(p: XYZParams) -> np.ndarray:
    """Seed fields, shape (n_seeds, 2, 3): symmetric first (tie-break order),
    then +-x, +-y transverse, then one permutation-asymmetric x seed."""
    v = max(p.v_max, 0.0)
    seeds = np.zeros((6, 2, 3))
    seeds[1, :, 0] = v
    seeds[2, :, 0] = -v
    seeds[3, :, 1] = v
    seeds[4, :, 1] = -v
    seeds[5, 0, 0] = v
    seeds[5, 1, 0] = -v
    return seeds


def _self_consistent_map(lam, p: XYZParams, t: float) -> np.ndarray:
    """One sweep of lambda_i^{A,B} = b delta_iz - 2 v_i <s_i^{B,A}>."""
    v = np.array([p.vx, p.vy, p.vz])
    s = qubit_expectations(lam, t)
    out = -2.0 * v * s[..., ::-1, :]
    out[..., 2] += p.b
    return out


def solve_mf(
    p: XYZParams,
    temperature: float,
    seeds=None,
    max_iter: int = 100_000,
    update_tol: float = 1e-12,
) -> MeanFieldSolution:
    """Damped fixed-point solution of the self-consistency conditions.

    All seeds are iterated (damping 0.5) until the largest component
    update drops below `update_tol`; stragglers get a quasi-Newton
    finish, which cures the critical slowing down of plain iteration
    near T_c.  Among the seeds whose final residual is below 1e-9 the
    one with the lowest free energy wins (ties fall to seed order, so
    results are deterministic).
    """
    t = _check_temperature(temperature)
    lam = np.array(seeds, dtype=float) if seeds is not None else _default_seeds(p)
    if lam.ndim == 2:
        lam = lam[None]
    if lam.shape[1:] != (2, 3):
        raise ValueError(f"seeds must have shape (n, 2, 3), got {lam.shape}")

    fp_budget = min(max_iter, 2000)
    iterations = 0
    active = np.ones(lam.shape[0], dtype=bool)
    for _ in range(fp_budget):
        new = 0.5 * lam[active] + 0.5 * _self_consistent_map(lam[active], p, t)
        moved = np.abs(new - lam[active]).max(axis=(1, 2))
        lam[active] = new
        iterations += 1
        still = moved >= update_tol
        if not still.any():
            active[:] = False
            break
        idx = np.flatnonzero(active)
        active[idx[~still]] = False

    def residual(x):
        l = x.reshape(2, 3)
        return (_self_consistent_map(l, p, t) - l).ravel()

    scale = max(p.energy_scale, 1.0)
    resid = np.abs(_self_consistent_map(lam, p, t) - lam).max(axis=(1, 2))
    for i in np.flatnonzero(resid >= RESIDUAL_TOL * scale):
        # quasi-Newton polish for stragglers (plain iteration slows
        # critically near T_c); the iterate is already in the right basin
        sol = root(residual, lam[i].ravel(), method="hybr", tol=1e-13)
        lam[i] = sol.x.reshape(2, 3)
        resid[i] = np.abs(residual(sol.x)).max()
    ok = resid < RESIDUAL_TOL * scale
    if not ok.any():
        raise NoConvergence(f"no seed converged; best residual {resid.min():.3e}")

    s = qubit_expectations(lam, t)
    energy = _interaction_energy(p, s[:, 0], s[:, 1])
    free = energy - t * (_qubit_entropy_nat(s[:, 0]) + _qubit_entropy_nat(s[:, 1]))
    free = np.where(ok, free, np.inf)
    winner = int(np.argmin(free))  # argmin takes the first minimum: seed order

    lam_a, lam_b = lam[winner]
    break_scale = BREAK_TOL * p.v_max if p.v_max > 0.0 else 1e-12
    transverse = max(abs(lam_a[0]), abs(lam_a[1]), abs(lam_b[0]), abs(lam_b[1]))
    return MeanFieldSolution(
        lambda_a=lam_a,
        lambda_b=lam_b,
        s_a=s[winner, 0],
        s_b=s[winner, 1],
        free_energy=float(free[winner]),
        broken_phase_flip=bool(transverse > break_scale),
        broken_permutation=bool(np.abs(lam_a - lam_b).max() > break_scale),
        converged=bool(ok[winner]),
        iterations=iterations,
    )


def critical_temperature(p: XYZParams, method: str = "closed") -> CriticalTemperature:
    """Critical temperature of the transverse symmetry-breaking solution.

    "closed" evaluates T_c = v_max chi / ln[(1+chi)/(1-chi)] (the chi -> 0
    limit v_max/2 taken analytically); "numeric" bisects the onset of
    broken_phase_flip in solve_mf to 1e-6 relative.  Absent (t_c None)
    whenever v_max <= vz or |b| >= v_max - vz.
    """
    v_max = p.v_max
    b_c = p.b_critical
    feasible = v_max > p.vz and abs(p.b) < b_c
    chi = abs(p.b) / b_c if b_c > 0.0 else math.inf
    if not feasible:
        return CriticalTemperature(t_c=None, chi=chi, v_max=v_max, feasible=False)

    if method == "closed":
        t_c = 0.5 * v_max if chi == 0.0 else v_max * chi / (2.0 * math.atanh(chi))
        return CriticalTemperature(t_c=t_c, chi=chi, v_max=v_max, feasible=True)
    if method != "numeric":
        raise ValueError(f"method must be 'closed' or 'numeric', got {method!r}")

    lo, hi = 1e-4 * v_max, 0.75 * v_max
    if not solve_mf(p, lo).broken_phase_flip:
        return CriticalTemperature(t_c=None, chi=chi, v_max=v_max, feasible=True)
    while hi - lo > 1e-6 * hi:
        mid = 0.5 * (lo + hi)
        if solve_mf(p, mid).broken_phase_flip:
            lo = mid
        else:
            hi = mid
    return CriticalTemperature(t_c=0.5 * (lo + hi), chi=chi, v_max=v_max, feasible=True)
