"""Shared generators for randomized tests.

Random mixtures use sorted-uniform-gap simplex sampling; random couplings
are log-uniform over [1e-2, 1e2] so extreme anisotropy is exercised
while the aligned-sector gap stays well away from degeneracy.
"""

import numpy as np
import pytest

from xyzent.model import XYZParams, canonicalize
from xyzent.states import BellMixture, mixture


def random_simplex(rng, n=4, size=None):
    """Uniform sample(s) from the probability simplex via sorted gaps."""
    shape = (n - 1,) if size is None else (size, n - 1)
    cuts = np.sort(rng.uniform(0.0, 1.0, size=shape), axis=-1)
    full = np.concatenate(
        [
            np.zeros(cuts.shape[:-1] + (1,)),
            cuts,
            np.ones(cuts.shape[:-1] + (1,)),
        ],
        axis=-1,
    )
    return np.diff(full, axis=-1)


def log_uniform(rng, lo=1e-2, hi=1e2, size=None):
    return np.exp(rng.uniform(np.log(lo), np.log(hi), size=size))


def random_canonical_params(rng) -> XYZParams:
    """Canonical parameters with log-uniform magnitudes; Delta >= 1e-2."""
    v_plus, v_minus, b = log_uniform(rng, size=3)
    vz = log_uniform(rng) * rng.choice([-1.0, 1.0])
    return canonicalize(v_plus + v_minus, v_plus - v_minus, vz, b)


def random_mixture(rng, params: XYZParams | None = None) -> BellMixture:
    if params is None:
        params = random_canonical_params(rng)
    return mixture(params, random_simplex(rng))


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
