"""Shared fixtures and random-instance builders for the test suite."""

import numpy as np
import pytest

from fermion_noise import GaussianState, Lattice, QuadraticObservable

SEED = 20240817


@pytest.fixture
def rng():
    """Fresh deterministic generator per test."""
    return np.random.default_rng(SEED)


def random_antisymmetric(rng, n):
    """Real antisymmetric matrix with O(1) entries."""
    a = rng.normal(size=(n, n))
    return a - a.T


def random_normalized_observable(lattice, rng):
    """Random traceless quadratic observable with unit coefficient trace norm."""
    coeffs = random_antisymmetric(rng, lattice.n_majorana)
    coeffs /= np.linalg.svd(coeffs, compute_uv=False).sum()
    return QuadraticObservable(lattice, coeffs, offset=0.0, validate=False)


def random_correlation(rng, n_sites):
    """Hermitian N x N matrix with eigenvalues drawn uniformly from [0, 1]."""
    a = rng.normal(size=(n_sites, n_sites)) + 1j * rng.normal(size=(n_sites, n_sites))
    q, _ = np.linalg.qr(a)
    fillings = rng.uniform(0.0, 1.0, size=n_sites)
    return (q * fillings) @ q.conj().T


def random_gaussian_state(lattice, rng):
    """Generally mixed Gaussian state from a random correlation matrix."""
    corr = random_correlation(rng, lattice.n_sites)
    return GaussianState.from_correlation_matrix(lattice, corr)


def correlation_of(state):
    """Extract the complex <c^dag c> matrix back out of a covariance matrix."""
    g = state.gamma
    real = 0.5 * (g[0::2, 1::2] + np.eye(state.lattice.n_sites))
    imag = -0.5 * g[0::2, 0::2]
    return real + 1j * imag


def assert_close(actual, expected, atol, label=""):
    actual = np.asarray(actual)
    expected = np.asarray(expected)
    worst = float(np.abs(actual - expected).max())
    assert worst <= atol, f"{label} max deviation {worst:.3e} > {atol:.1e}"
