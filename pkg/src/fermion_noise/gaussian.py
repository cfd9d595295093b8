"""Fermionic Gaussian states on a torus, in Majorana covariance form.

Site ``x`` carries two Majorana operators, ``gamma^1_x = c_x^dag + c_x`` at
even index ``2x`` and ``gamma^2_x = i (c_x^dag - c_x)`` at odd index
``2x + 1``.  A Gaussian state is summarized by the real antisymmetric
covariance matrix ``Gamma`` with

    <gamma_a gamma_b> = delta_ab - i Gamma_ab,

so physical states satisfy ``||Gamma|| <= 1`` (pure states saturate it in
every direction) and the on-site entry ``Gamma[2x, 2x+1]`` equals
``2 <n_x> - 1``.  Observables quadratic in the Majoranas are carried as a
scalar offset plus a real antisymmetric coefficient matrix ``O`` with
``<O> = offset + sum_ab O_ab Gamma_ab``.

Besides mode-occupation (Fermi sea) states, the module provides synthetic
families used to probe correlation-decay premises: Haar-random pure states,
their Schur-damped power-law variants, and a translation-invariant circulant
family with an exactly known power-law envelope.
"""

from __future__ import annotations

from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.special import zeta as sc_zeta
from scipy.stats import special_ortho_group

from .errors import InvariantViolation
from .lattice import Lattice, MomentumGrid, momentum_grid, parity_of

NORM_SLACK = 1e-8


class QuadraticObservable:
    """Observable ``offset + sum_ab O_ab Gamma_ab`` with O real antisymmetric.

    Parameters
    ----------
    lattice : Lattice
        Lattice fixing the Majorana index space (2 * n_sites).
    coefficients : ndarray
        Real antisymmetric matrix of shape (2N, 2N).
    offset : float, optional
        Scalar part of the expectation value.
    """

    def __init__(self, lattice: Lattice, coefficients: np.ndarray, offset: float = 0.0,
                 *, validate: bool = True):
        coeffs = np.array(coefficients, dtype=float)
        n = lattice.n_majorana
        if coeffs.shape != (n, n):
            raise ValueError(f"coefficient matrix must be ({n}, {n}), got {coeffs.shape}")
        if validate and not np.allclose(coeffs, -coeffs.T, atol=1e-12):
            raise ValueError("coefficient matrix must be antisymmetric")
        coeffs.setflags(write=False)
        self.lattice = lattice
        self.coefficients = coeffs
        self.offset = float(offset)

    @classmethod
    def number(cls, lattice: Lattice, site: int) -> "QuadraticObservable":
        """Occupation ``n_x = c_x^dag c_x`` of a single site."""
        if not 0 <= site < lattice.n_sites:
            raise IndexError(f"site {site} outside [0, {lattice.n_sites})")
        coeffs = np.zeros((lattice.n_majorana,) * 2)
        a, b = 2 * site, 2 * site + 1
        coeffs[a, b] = 0.25
        coeffs[b, a] = -0.25
        return cls(lattice, coeffs, offset=0.5, validate=False)

    @classmethod
    def hopping(cls, lattice: Lattice, site_a: int, site_b: int) -> "QuadraticObservable":
        """Hermitian hopping ``c_a^dag c_b + c_b^dag c_a`` between two sites."""
        n_sites = lattice.n_sites
        if not (0 <= site_a < n_sites and 0 <= site_b < n_sites):
            raise IndexError(f"sites ({site_a}, {site_b}) outside [0, {n_sites})")
        if site_a == site_b:
            raise ValueError("hopping requires two distinct sites")
        coeffs = np.zeros((lattice.n_majorana,) * 2)
        for u, v in ((2 * site_a, 2 * site_b + 1), (2 * site_b, 2 * site_a + 1)):
            coeffs[u, v] = 0.25
            coeffs[v, u] = -0.25
        return cls(lattice, coeffs, validate=False)

    @classmethod
    def momentum_occupation(cls, lattice: Lattice, k: Sequence[float]) -> "QuadraticObservable":
        """Mode occupation ``n_k = b_k^dag b_k`` of the plane wave at k.

        With ``b_k = N^{-1/2} sum_x e^{-i k.x} c_x`` the operator is a
        rank-one projector (unit trace norm).  Its coefficient matrix couples
        all site pairs through ``sin``/``cos`` of ``k . (x - y)``.
        """
        k_vec = np.atleast_1d(np.asarray(k, dtype=float))
        if k_vec.shape != (lattice.dim,):
            raise ValueError(f"momentum must have {lattice.dim} components, got {k_vec.shape}")
        n_sites = lattice.n_sites
        phase = lattice.coords @ k_vec
        delta = phase[None, :] - phase[:, None]
        sin_block = np.sin(delta) / (4.0 * n_sites)
        cos_block = np.cos(delta) / (4.0 * n_sites)
        coeffs = np.zeros((2 * n_sites, 2 * n_sites))
        coeffs[0::2, 0::2] = sin_block
        coeffs[1::2, 1::2] = sin_block
        coeffs[0::2, 1::2] = cos_block
        coeffs[1::2, 0::2] = -cos_block
        return cls(lattice, coeffs, offset=0.5, validate=False)

    def scaled(self, factor: float) -> "QuadraticObservable":
        """The observable multiplied by a scalar (offset included)."""
        return QuadraticObservable(self.lattice, factor * self.coefficients,
                                   offset=factor * self.offset, validate=False)

    def coefficient_trace_norm(self) -> float:
        """Trace norm (sum of singular values) of the coefficient matrix.

        ``number`` and ``momentum_occupation`` observables have norm 1/2,
        ``hopping`` has norm 1.  Error bounds stated for unit-norm
        observables apply after dividing by this value.
        """
        return float(np.linalg.svd(self.coefficients, compute_uv=False).sum())

    def __repr__(self) -> str:
        nnz = int(np.count_nonzero(self.coefficients))
        return f"QuadraticObservable(offset={self.offset}, nnz={nnz})"


class GaussianState:
    """A fermionic Gaussian state held as its Majorana covariance matrix."""

    def __init__(self, lattice: Lattice, gamma: np.ndarray, *, validate: bool = True):
        g = np.array(gamma, dtype=float)
        n = lattice.n_majorana
        if g.shape != (n, n):
            raise ValueError(f"covariance matrix must be ({n}, {n}), got {g.shape}")
        if validate:
            if not np.allclose(g, -g.T, atol=1e-10):
                raise ValueError("covariance matrix must be antisymmetric")
            norm = np.linalg.norm(g, 2)
            if norm > 1.0 + NORM_SLACK:
                raise InvariantViolation(
                    f"covariance norm {norm:.6g} exceeds 1; state is unphysical"
                )
        g.setflags(write=False)
        self.lattice = lattice
        self._gamma = g

    # -- constructors ---------------------------------------------------

    @classmethod
    def vacuum(cls, lattice: Lattice) -> "GaussianState":
        """The Fock vacuum: every site empty."""
        n_sites = lattice.n_sites
        gamma = np.zeros((2 * n_sites, 2 * n_sites))
        idx = np.arange(n_sites)
        gamma[2 * idx, 2 * idx + 1] = -1.0
        gamma[2 * idx + 1, 2 * idx] = 1.0
        return cls(lattice, gamma, validate=False)

    @classmethod
    def from_correlation_matrix(cls, lattice: Lattice, corr: np.ndarray,
                                *, validate: bool = True) -> "GaussianState":
        """State of a number-conserving ensemble with ``C_xy = <c_x^dag c_y>``.

        The covariance blocks are ``Gamma^{11} = Gamma^{22} = -2 Im C`` and
        ``Gamma^{12} = 2 Re C - 1`` (flavor 1 row, flavor 2 column).
        """
        c = np.asarray(corr, dtype=complex)
        n_sites = lattice.n_sites
        if c.shape != (n_sites, n_sites):
            raise ValueError(f"correlation matrix must be ({n_sites}, {n_sites}), got {c.shape}")
        if validate and not np.allclose(c, c.conj().T, atol=1e-10):
            raise ValueError("correlation matrix must be Hermitian")
        same = -2.0 * c.imag
        cross = 2.0 * c.real - np.eye(n_sites)
        gamma = np.zeros((2 * n_sites, 2 * n_sites))
        gamma[0::2, 0::2] = same
        gamma[1::2, 1::2] = same
        gamma[0::2, 1::2] = cross
        gamma[1::2, 0::2] = -cross.T
        return cls(lattice, gamma, validate=validate)

    # -- accessors ------------------------------------------------------

    @property
    def gamma(self) -> np.ndarray:
        """The (read-only) covariance matrix."""
        return self._gamma

    @property
    def n_sites(self) -> int:
        return self.lattice.n_sites

    def occupation(self, site: int) -> float:
        """Mean occupation of one site, ``(1 + Gamma[2x, 2x+1]) / 2``."""
        if not 0 <= site < self.lattice.n_sites:
            raise IndexError(f"site {site} outside [0, {self.lattice.n_sites})")
        return 0.5 * (1.0 + self._gamma[2 * site, 2 * site + 1])

    def expectation(self, obs: QuadraticObservable) -> float:
        """Expectation value of a quadratic observable in this state."""
        return obs.offset + float(np.sum(obs.coefficients * self._gamma))

    def particle_number(self) -> float:
        """Total mean particle number."""
        diag = self._gamma[2 * np.arange(self.n_sites), 2 * np.arange(self.n_sites) + 1]
        return float(0.5 * np.sum(1.0 + diag))

    def __repr__(self) -> str:
        return f"GaussianState({self.lattice!r}, N={self.particle_number():.4g})"


# ----------------------------------------------------------------------
# Mode-occupation (Fermi sea) states
# ----------------------------------------------------------------------


def free_dispersion(momenta: np.ndarray) -> np.ndarray:
    """Euclidean momentum magnitude, filling modes outward from k = 0."""
    return np.linalg.norm(np.atleast_2d(momenta), axis=1)


def tight_binding_dispersion(momenta: np.ndarray) -> np.ndarray:
    """Nearest-neighbor band energy ``-2 sum_i cos(k_i)`` (unit hopping)."""
    return -2.0 * np.cos(np.atleast_2d(momenta)).sum(axis=1)


def occupied_modes(grid: MomentumGrid, n_occ: int,
                   energies: Optional[np.ndarray] = None) -> np.ndarray:
    """Indices of the ``n_occ`` lowest-energy modes of a momentum grid.

    Ties are broken lexicographically on the integer mode vector so the
    selection is deterministic.  ``energies`` defaults to the free dispersion
    ``|k|``.
    """
    n_modes = grid.momenta.shape[0]
    if not 0 <= n_occ <= n_modes:
        raise ValueError(f"n_occ must lie in [0, {n_modes}], got {n_occ}")
    if energies is None:
        energies = free_dispersion(grid.momenta)
    energies = np.asarray(energies, dtype=float)
    if energies.shape != (n_modes,):
        raise ValueError(f"energies must have shape ({n_modes},), got {energies.shape}")
    dim = grid.m_vectors.shape[1]
    keys = tuple(grid.m_vectors[:, d] for d in reversed(range(dim))) + (energies,)
    order = np.lexsort(keys)
    return np.sort(order[:n_occ])


def correlation_from_occupied(grid: MomentumGrid, occupied: np.ndarray) -> np.ndarray:
    """Two-point function ``C_xy = (1/N) sum_occ e^{i q.(x - y)}``."""
    lat = grid.lattice
    q = grid.momenta[np.asarray(occupied, dtype=int)]
    phases = lat.coords @ q.T
    phi = np.exp(1j * phases) / np.sqrt(lat.n_sites)
    return phi @ np.conj(phi).T


def correlation_from_mode_occupations(grid: MomentumGrid,
                                      occupations: np.ndarray) -> np.ndarray:
    """Two-point function of a mode-diagonal ensemble with fillings in [0, 1].

    Generalizes :func:`correlation_from_occupied` to fractional occupations:
    ``C_xy = (1/N) sum_q n(q) e^{i q.(x - y)}``.
    """
    n = np.asarray(occupations, dtype=float)
    n_modes = grid.momenta.shape[0]
    if n.shape != (n_modes,):
        raise ValueError(f"occupations must have shape ({n_modes},), got {n.shape}")
    if np.any(n < -1e-12) or np.any(n > 1 + 1e-12):
        raise ValueError("mode occupations must lie in [0, 1]")
    lat = grid.lattice
    phases = lat.coords @ grid.momenta.T
    phi = np.exp(1j * phases) / np.sqrt(lat.n_sites)
    return (phi * n) @ np.conj(phi).T


def fermi_sea(grid: MomentumGrid, n_occ: int,
              energies: Optional[np.ndarray] = None,
              dispersion: Optional[Callable[[np.ndarray], np.ndarray]] = None,
              ) -> Tuple[GaussianState, np.ndarray]:
    """Ground state filling the ``n_occ`` lowest modes; returns (state, occupied).

    ``dispersion`` maps the (n_modes, dim) momentum array to energies and is
    a convenience alternative to passing ``energies`` directly.
    """
    if energies is not None and dispersion is not None:
        raise ValueError("pass either energies or dispersion, not both")
    if dispersion is not None:
        energies = dispersion(grid.momenta)
    occ = occupied_modes(grid, n_occ, energies)
    corr = correlation_from_occupied(grid, occ)
    state = GaussianState.from_correlation_matrix(grid.lattice, corr, validate=False)
    return state, occ


def fermi_sea_1d(lattice: Lattice, n_occ: int) -> Tuple[GaussianState, MomentumGrid, np.ndarray]:
    """1D free-fermion ground state with ``n_occ`` particles.

    The momentum grid parity follows the particle number so that the lowest
    ``|k|`` modes fill symmetrically; returns (state, grid, occupied).
    """
    if lattice.dim != 1:
        raise ValueError(f"expected a 1D lattice, got dim={lattice.dim}")
    grid = momentum_grid(lattice, parity_of(n_occ))
    state, occ = fermi_sea(grid, n_occ, dispersion=free_dispersion)
    return state, grid, occ


def tight_binding_ground_state_2d(lattice: Lattice, n_occ: int,
                                  ) -> Tuple[GaussianState, MomentumGrid, np.ndarray]:
    """2D nearest-neighbour tight-binding ground state with ``n_occ`` particles."""
    if lattice.dim != 2:
        raise ValueError(f"expected a 2D lattice, got dim={lattice.dim}")
    grid = momentum_grid(lattice, parity_of(n_occ))
    state, occ = fermi_sea(grid, n_occ, dispersion=tight_binding_dispersion)
    return state, grid, occ


def momentum_occupation(state: GaussianState, k: Sequence[float]) -> float:
    """Expectation ``<n_k>`` of the plane-wave mode occupation at momentum k."""
    return state.expectation(QuadraticObservable.momentum_occupation(state.lattice, k))


# ----------------------------------------------------------------------
# Synthetic states with controlled correlation decay
# ----------------------------------------------------------------------


def random_pure_state(lattice: Lattice, rng: np.random.Generator) -> GaussianState:
    """Haar-random pure Gaussian state, ``Gamma = Q S Q^T`` with Q in SO(2N)."""
    n = lattice.n_majorana
    block = np.array([[0.0, 1.0], [-1.0, 0.0]])
    sigma = np.kron(np.eye(lattice.n_sites), block)
    q = special_ortho_group.rvs(n, random_state=rng)
    return GaussianState(lattice, q @ sigma @ q.T, validate=False)


def power_law_mask(lattice: Lattice, mu: float) -> np.ndarray:
    """Positive-semidefinite Schur mask decaying as ``(1 + d)^{-mu}``.

    Off-diagonal entries are scaled so each row sums (off the diagonal) to at
    most 0.9, making the mask diagonally dominant with unit diagonal; Schur
    multiplication by it therefore cannot push a covariance past norm 1.
    """
    if mu <= 0:
        raise ValueError(f"decay exponent must be positive, got {mu}")
    d = lattice.distance_matrix().astype(float)
    decay = (1.0 + d) ** (-mu)
    row_offdiag = decay.sum(axis=1).max() - 1.0
    scale = min(1.0, 0.9 / row_offdiag) if row_offdiag > 0 else 1.0
    mask = scale * decay
    np.fill_diagonal(mask, 1.0)
    return np.repeat(np.repeat(mask, 2, axis=0), 2, axis=1)


def damped_random_state(lattice: Lattice, mu: float,
                        rng: np.random.Generator) -> GaussianState:
    """Random state whose correlations decay at least as ``(1 + d)^{-mu}``."""
    pure = random_pure_state(lattice, rng)
    gamma = pure.gamma * power_law_mask(lattice, mu)
    return GaussianState(lattice, gamma, validate=False)


def decay_constant(state: GaussianState, mu: float) -> float:
    """Smallest K with ``|Gamma_ab| <= K (1 + d(a, b))^{-mu}`` for all pairs."""
    lat = state.lattice
    d = np.repeat(np.repeat(lat.distance_matrix(), 2, axis=0), 2, axis=1).astype(float)
    ratio = np.abs(state.gamma) * (1.0 + d) ** mu
    return float(ratio.max())


def _offdiagonal_decay_sum(dim: int, mu: float) -> float:
    """Infinite-lattice sum of ``(1 + |s|_1)^{-mu}`` over nonzero sites.

    There are 2 sites (dim 1) or 4d sites (dim 2) at taxicab distance d, so
    the sum telescopes into Riemann zeta values.
    """
    if mu <= dim:
        raise ValueError(f"need mu > dim for a convergent sum, got mu={mu}, dim={dim}")
    if dim == 1:
        return float(2.0 * (sc_zeta(mu) - 1.0))
    return float(4.0 * (sc_zeta(mu - 1.0) - sc_zeta(mu)))


def circulant_power_law_state(lattice: Lattice, mu: float) -> Tuple[GaussianState, float]:
    """Translation-invariant state with an exact power-law covariance envelope.

    The two-point function is real circulant: ``C(x, y) = 1/2`` on the
    diagonal and ``A (1 + d(x, y))^{-mu}`` off it, with A normalized against
    the infinite-lattice sum so every mode occupation stays in
    ``[0.05, 0.95]`` on any torus size.  Returns the state and the exact
    decay constant ``K = 2 A`` of its covariance matrix.
    """
    amp = 0.45 / _offdiagonal_decay_sum(lattice.dim, mu)
    d = lattice.distance_matrix().astype(float)
    corr = amp * (1.0 + d) ** (-mu)
    np.fill_diagonal(corr, 0.5)
    state = GaussianState.from_correlation_matrix(lattice, corr, validate=False)
    return state, 2.0 * amp
