import numpy as np
import pytest

from fracchemo import Grid, Params


@pytest.fixture
def grid_1d():
    return Grid(dim=1, extent=2 * np.pi, points_per_axis=64)


@pytest.fixture
def grid_2d():
    return Grid(dim=2, extent=2 * np.pi, points_per_axis=32)


def random_params(rng, dim=1, balanced=False):
    """Admissible parameter draw for property tests."""
    chi1 = float(rng.uniform(0.0, 2.0))
    mu1 = float(rng.uniform(0.5, 2.0))
    lam1 = float(rng.uniform(0.5, 2.0))
    if balanced:
        chi2 = float(rng.uniform(0.1, 2.0))
        mu2 = chi1 * mu1 / chi2 if chi2 > 0 else mu1
        lam2 = lam1
        if mu2 <= 0.0:
            chi1, mu2 = chi2, mu1
    else:
        chi2 = float(rng.uniform(0.0, 2.0))
        mu2 = float(rng.uniform(0.5, 2.0))
        lam2 = float(rng.uniform(0.5, 2.0))
    return Params(
        dim=dim,
        alpha=float(rng.uniform(0.55, 0.95)),
        chi1=chi1,
        chi2=chi2,
        lambda1=lam1,
        lambda2=lam2,
        mu1=mu1,
        mu2=mu2,
        a=float(rng.uniform(0.2, 2.0)),
        b=float(rng.uniform(0.2, 2.0)),
        gamma=float(rng.uniform(1.5, 3.0)),
        k=float(rng.uniform(1.0, 2.0)),
    )
