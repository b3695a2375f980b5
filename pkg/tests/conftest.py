import numpy as np
import pytest

from qidlab.dist import density_from_callable, law_from_atoms, uniform_density


@pytest.fixture
def fair_bernoulli():
    return law_from_atoms([(0.0, 0.5), (1.0, 0.5)])


@pytest.fixture
def skewed_two_atom():
    return law_from_atoms([(0.0, 0.2), (1.0, 0.8)])


@pytest.fixture
def two_thirds_law():
    return law_from_atoms([(0.0, 2.0 / 3.0), (1.0, 1.0 / 3.0)])


@pytest.fixture
def uniform01():
    return uniform_density(0.0, 1.0)


@pytest.fixture
def truncated_normal():
    return density_from_callable(lambda x: np.exp(-0.5 * x * x), -3.0, 3.0)


def poisson_law(lam: float, kmax: int = 40):
    """Truncated Poisson(lam) on {0..kmax}, renormalized."""
    from math import exp, factorial
    masses = np.array([exp(-lam) * lam ** k / factorial(k) for k in range(kmax + 1)])
    masses /= masses.sum()
    return law_from_atoms([(float(k), float(m)) for k, m in enumerate(masses)])


def geometric_law(kmax: int = 60):
    """Masses 2^-k at k = 1..kmax, remainder folded into the last atom."""
    ks = np.arange(1, kmax + 1)
    ms = 0.5 ** ks
    ms[-1] += 1.0 - ms.sum()
    return law_from_atoms(list(zip(ks.astype(float), ms)))
