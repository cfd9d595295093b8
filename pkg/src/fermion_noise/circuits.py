"""Noisy free-fermion brickwork circuits on the covariance level.

A circuit is a sequence of layers; each layer is a Gaussian unitary
``U = exp(-i H)`` with ``H = (i/4) sum_ab h_ab gamma_a gamma_b`` and is
stored as its orthogonal Majorana rotation ``R = exp(h)``:

    U^dag gamma_a U = sum_b R_ab gamma_b,
    state:       Gamma -> R Gamma R^T,
    observable:  O     -> R^T O R.

Every layer is followed by the single-qubit Pauli channel on all qubits, so
the Heisenberg-picture pullback of an observable through one layer damps its
coefficient matrix elementwise by the encoding's attenuation factors and
then rotates it.  Layers tile the torus with Haar-random special-orthogonal
gates on blocks of ``radius + 1`` consecutive sites, cycling the block axis
every layer and sliding the brick offset each full axis cycle, which
enforces a light cone of ``radius`` sites per layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.stats import special_ortho_group

from .encodings import EncodingWeightModel
from .gaussian import GaussianState, QuadraticObservable
from .lattice import Lattice
from .noise import PauliChannel, attenuation_matrix


@dataclass(frozen=True)
class Circuit:
    """A fixed sequence of Majorana-rotation layers over one lattice."""

    lattice: Lattice
    radius: int
    layers: tuple

    @property
    def depth(self) -> int:
        return len(self.layers)

    def light_cone_radius(self, depth: Optional[int] = None) -> int:
        """Largest site distance an operator can spread after ``depth`` layers."""
        d = self.depth if depth is None else depth
        return self.radius * d


def _layer_blocks(lattice: Lattice, axis: int, offset: int, block: int) -> List[List[int]]:
    """Disjoint site blocks tiling the torus along one axis with a cyclic offset.

    When the length is not a multiple of the block size the final chunk is
    truncated rather than wrapped, keeping the blocks disjoint.
    """
    length = lattice.length
    blocks = []
    coords = np.zeros(lattice.dim, dtype=int)

    def rec(free_axes):
        if not free_axes:
            for start in range(0, length, block):
                sites = []
                for i in range(min(block, length - start)):
                    c = coords.copy()
                    c[axis] = (offset + start + i) % length
                    sites.append(lattice.site_index(c))
                blocks.append(sites)
            return
        ax = free_axes[0]
        for v in range(length):
            coords[ax] = v
            rec(free_axes[1:])

    rec([a for a in range(lattice.dim) if a != axis])
    return blocks


def brickwork_circuit(lattice: Lattice, depth: int, radius: int = 1,
                      rng: Optional[np.random.Generator] = None) -> Circuit:
    """Haar-random brickwork circuit of the given depth.

    Layer ``l`` places gates on blocks of up to ``radius + 1`` consecutive
    sites along axis ``l % dim``, with brick offset ``(l // dim) % (radius +
    1)``; each gate is an independent Haar sample from SO(2 * block size)
    acting on the block's Majoranas.  Lengths that are not a multiple of the
    block size get one truncated (smaller) gate per row.
    """
    if depth < 0:
        raise ValueError(f"depth must be nonnegative, got {depth}")
    if radius < 1:
        raise ValueError(f"interaction radius must be at least 1, got {radius}")
    block = radius + 1
    if rng is None:
        rng = np.random.default_rng()
    n = lattice.n_majorana
    layers = []
    for layer_idx in range(depth):
        axis = layer_idx % lattice.dim
        offset = (layer_idx // lattice.dim) % block
        rot = np.eye(n)
        for sites in _layer_blocks(lattice, axis, offset, block):
            idx = [m for s in sites for m in (2 * s, 2 * s + 1)]
            gate = special_ortho_group.rvs(2 * len(sites), random_state=rng)
            rot[np.ix_(idx, idx)] = gate
        layers.append(rot)
    return Circuit(lattice=lattice, radius=radius, layers=tuple(layers))


def _layer_attenuation(circuit: Circuit, channel: Optional[PauliChannel],
                       enc: Optional[EncodingWeightModel], mode: str) -> Optional[np.ndarray]:
    if channel is None or channel.p == 0.0:
        return None
    if enc is None:
        raise ValueError("a noisy circuit needs an encoding weight model")
    if (enc.lattice.dim, enc.lattice.length) != (circuit.lattice.dim, circuit.lattice.length):
        raise ValueError("encoding and circuit lattices disagree")
    return attenuation_matrix(enc, channel, mode)


def evolve_state(state: GaussianState, circuit: Circuit,
                 channel: Optional[PauliChannel] = None,
                 enc: Optional[EncodingWeightModel] = None,
                 mode: str = "exact") -> GaussianState:
    """Push a state through the circuit (each layer: rotate, then noise)."""
    lam = _layer_attenuation(circuit, channel, enc, mode)
    gamma = state.gamma.copy()
    for rot in circuit.layers:
        gamma = rot @ gamma @ rot.T
        if lam is not None:
            gamma *= lam
    return GaussianState(state.lattice, gamma, validate=False)


def heisenberg_observable(obs: QuadraticObservable, circuit: Circuit,
                          channel: Optional[PauliChannel] = None,
                          enc: Optional[EncodingWeightModel] = None,
                          mode: str = "exact") -> QuadraticObservable:
    """Pull an observable back through the circuit in the Heisenberg picture.

    Layers are traversed last to first; each contributes the channel adjoint
    (the same elementwise damping, the channel being self-adjoint) followed
    by the rotation ``O -> R^T O R``.  The scalar offset is untouched since
    the channel is unital.
    """
    lam = _layer_attenuation(circuit, channel, enc, mode)
    coeffs = obs.coefficients.copy()
    for rot in reversed(circuit.layers):
        if lam is not None:
            coeffs *= lam
        coeffs = rot.T @ coeffs @ rot
    return QuadraticObservable(obs.lattice, coeffs, offset=obs.offset, validate=False)


def circuit_expectation(state: GaussianState, obs: QuadraticObservable,
                        circuit: Circuit,
                        channel: Optional[PauliChannel] = None,
                        enc: Optional[EncodingWeightModel] = None,
                        mode: str = "exact") -> float:
    """Expectation of ``obs`` after the noisy circuit acts on ``state``."""
    return state.expectation(heisenberg_observable(obs, circuit, channel, enc, mode))


def circuit_error_curve(state: GaussianState, obs: QuadraticObservable,
                        circuit: Circuit, enc: EncodingWeightModel,
                        p_grid: Sequence[float],
                        mode: str = "exact") -> List[Tuple[float, float]]:
    """|ideal - noisy| circuit expectation under depolarizing noise, per p."""
    ideal = circuit_expectation(state, obs, circuit)
    curve = []
    for p in p_grid:
        noisy = circuit_expectation(state, obs, circuit,
                                    PauliChannel.depolarizing(p), enc, mode)
        curve.append((float(p), abs(noisy - ideal)))
    return curve


@dataclass(frozen=True)
class LightConeReport:
    """Outcome of a correlation-spreading check after a brickwork circuit.

    ``allowed_distance`` is the strict cone ``2 * radius * depth`` for
    correlations (each of the two operator endpoints spreads by ``radius``
    per layer).  ``largest_violation_distance`` is 0 when the cone holds.
    """

    allowed_distance: int
    largest_correlated_distance: int
    largest_violation_distance: int
    max_outside_magnitude: float
    support_subset_of_noiseless: bool

    @property
    def ok(self) -> bool:
        return self.largest_violation_distance == 0


def lightcone_correlation_check(state: GaussianState, circuit: Circuit,
                                channel: Optional[PauliChannel] = None,
                                enc: Optional[EncodingWeightModel] = None,
                                mode: str = "exact",
                                tol: float = 1e-10) -> LightConeReport:
    """Verify that circuit evolution correlates no sites beyond the cone.

    Requires a product initial state (no correlations between distinct
    sites), evolves it exactly with and without noise, and reports the
    largest site distance carrying a correlation above ``tol`` outside the
    allowed region, plus whether the noisy support stayed inside the
    noiseless one.
    """
    lat = state.lattice
    sites = np.repeat(np.arange(lat.n_sites), 2)
    dist = lat.distance_matrix()[np.ix_(sites, sites)]
    off_site = dist > 0
    if np.abs(state.gamma[off_site]).max(initial=0.0) > tol:
        raise ValueError("light-cone check requires a product initial state")
    evolved = evolve_state(state, circuit, channel, enc, mode)
    noiseless = evolved if channel is None else evolve_state(state, circuit)
    allowed = 2 * circuit.radius * circuit.depth
    correlated = np.abs(evolved.gamma) > tol
    corr_dist = int(dist[correlated].max(initial=0))
    outside = correlated & (dist > allowed)
    violation = int(dist[outside].max(initial=0)) if outside.any() else 0
    max_outside = float(np.abs(evolved.gamma[dist > allowed]).max(initial=0.0))
    subset = bool(np.all(np.abs(noiseless.gamma)[correlated] > tol))
    return LightConeReport(
        allowed_distance=allowed,
        largest_correlated_distance=corr_dist,
        largest_violation_distance=violation,
        max_outside_magnitude=max_outside,
        support_subset_of_noiseless=subset,
    )
