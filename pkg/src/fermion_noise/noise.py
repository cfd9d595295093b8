"""Single-qubit Pauli noise acting on encoded quadratic observables.

The channel applies, independently on every qubit,

    M -> (1 - 3p/4) M + (3p/4) (a_x X M X + a_y Y M Y + a_z Z M Z),

so a Pauli string is an eigenoperator with eigenvalue
``prod_s eta_s^{n_s}``, ``eta_s = 1 - (3p/2)(1 - a_s)``.  For the uniform
(depolarizing) mix every non-identity factor contributes ``1 - p``; the
adversarial lower bound per factor is ``1 - 3p/2``, which requires
``p <= 2/3`` for the factor to stay nonnegative.

Because encoded Majorana bilinears are single Pauli strings, noise acts on
the quadratic sector exactly, as an elementwise damping of the covariance
(or, in the Heisenberg picture, of the observable's coefficient matrix) by
per-pair attenuation factors determined by the encoding's weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .encodings import EncodingWeightModel, StringComposition
from .gaussian import GaussianState, QuadraticObservable

MODES = ("exact", "worst-case")

P_MAX = 2.0 / 3.0


@dataclass(frozen=True)
class PauliChannel:
    """Single-qubit Pauli channel with strength p and mix (a_x, a_y, a_z)."""

    p: float
    alphas: Tuple[float, float, float] = (1 / 3, 1 / 3, 1 / 3)

    def __post_init__(self):
        if not 0.0 <= self.p <= P_MAX:
            raise ValueError(f"noise strength must lie in [0, 2/3], got {self.p}")
        a = np.asarray(self.alphas, dtype=float)
        if a.shape != (3,) or np.any(a < -1e-12):
            raise ValueError(f"alphas must be three nonnegative weights, got {self.alphas}")
        if abs(a.sum() - 1.0) > 1e-9:
            raise ValueError(f"alphas must sum to 1, got sum {a.sum()}")
        a = np.clip(a, 0.0, None)
        object.__setattr__(self, "alphas", tuple(a / a.sum()))

    @classmethod
    def depolarizing(cls, p: float) -> "PauliChannel":
        return cls(p)

    @property
    def is_depolarizing(self) -> bool:
        return max(abs(a - 1 / 3) for a in self.alphas) < 1e-12

    @property
    def etas(self) -> Tuple[float, float, float]:
        """Transfer eigenvalues (eta_x, eta_y, eta_z) of X, Y, Z."""
        return tuple(1.0 - 1.5 * self.p * (1.0 - a) for a in self.alphas)

    @property
    def worst_factor(self) -> float:
        """Universal per-factor lower bound ``1 - 3p/2``."""
        return 1.0 - 1.5 * self.p

    def string_attenuation(self, comp: StringComposition) -> float:
        """Exact attenuation of a string with known X/Y/Z multiplicities."""
        ex, ey, ez = self.etas
        return ex**comp.n_x * ey**comp.n_y * ez**comp.n_z

    def depolarizing_attenuation(self, weight) -> np.ndarray:
        """Exact attenuation ``(1 - p)^w`` (depolarizing mix only)."""
        if not self.is_depolarizing:
            raise ValueError("weight alone fixes the attenuation only for the uniform mix")
        return (1.0 - self.p) ** np.asarray(weight)

    def worst_case_attenuation(self, weight) -> np.ndarray:
        """Adversarial attenuation ``(1 - 3p/2)^w``."""
        return self.worst_factor ** np.asarray(weight)


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"unknown attenuation mode {mode!r}; expected one of {MODES}")


def pair_attenuation(enc: EncodingWeightModel, channel: PauliChannel,
                     a: int, b: int, mode: str = "exact") -> float:
    """Attenuation factor of the single encoded bilinear ``gamma_a gamma_b``."""
    _check_mode(mode)
    if mode == "worst-case":
        return float(channel.worst_case_attenuation(enc.bilinear_weight(a, b)))
    if channel.is_depolarizing:
        return float(channel.depolarizing_attenuation(enc.bilinear_weight(a, b)))
    if enc.supports_composition:
        return channel.string_attenuation(enc.string_composition(a, b))
    raise ValueError(
        f"exact attenuation for a non-uniform mix needs the string composition, "
        f"which {enc.kind!r} does not expose; use mode='worst-case'"
    )


def attenuation_matrix(enc: EncodingWeightModel, channel: PauliChannel,
                       mode: str = "exact") -> np.ndarray:
    """(2N, 2N) per-bilinear attenuation factors (diagonal fixed to 1)."""
    _check_mode(mode)
    if mode == "worst-case":
        lam = channel.worst_case_attenuation(enc.weight_matrix())
    elif channel.is_depolarizing:
        lam = channel.depolarizing_attenuation(enc.weight_matrix())
    elif enc.supports_composition:
        n = enc.lattice.n_majorana
        lam = np.ones((n, n))
        for a in range(n):
            for b in range(a + 1, n):
                lam[a, b] = lam[b, a] = channel.string_attenuation(enc.string_composition(a, b))
    else:
        raise ValueError(
            f"exact attenuation for a non-uniform mix needs the string composition, "
            f"which {enc.kind!r} does not expose; use mode='worst-case'"
        )
    lam = np.asarray(lam, dtype=float)
    np.fill_diagonal(lam, 1.0)
    return lam


def site_attenuation_matrix(enc: EncodingWeightModel, channel: PauliChannel,
                            mode: str = "exact") -> np.ndarray:
    """(N, N) site-level attenuation, when it is flavor independent.

    Available for flavor-independent weight models under the uniform mix or
    in worst-case mode; raises otherwise.
    """
    _check_mode(mode)
    if not enc.flavor_independent:
        raise ValueError(f"{enc.kind!r} weights depend on Majorana flavors")
    if mode == "worst-case":
        return channel.worst_case_attenuation(enc.site_weight_matrix())
    if channel.is_depolarizing:
        return channel.depolarizing_attenuation(enc.site_weight_matrix())
    raise ValueError("site-level attenuation for a non-uniform mix is flavor dependent")


def attenuated_state(state: GaussianState, enc: EncodingWeightModel,
                     channel: PauliChannel, mode: str = "exact") -> GaussianState:
    """The state whose covariance is the elementwise-damped ``lam * Gamma``."""
    lam = attenuation_matrix(enc, channel, mode)
    return GaussianState(state.lattice, lam * state.gamma, validate=False)


def noisy_expectation(state: GaussianState, obs: QuadraticObservable,
                      enc: EncodingWeightModel, channel: PauliChannel,
                      mode: str = "exact") -> float:
    """Expectation of an encoded observable measured through the channel."""
    lam = attenuation_matrix(enc, channel, mode)
    return obs.offset + float(np.sum(obs.coefficients * lam * state.gamma))


def measurement_error(state: GaussianState, obs: QuadraticObservable,
                      enc: EncodingWeightModel, channel: PauliChannel,
                      mode: str = "exact") -> float:
    """Absolute shift ``|<O> - <O>_noisy|`` induced by the channel."""
    lam = attenuation_matrix(enc, channel, mode)
    return float(abs(np.sum(obs.coefficients * (1.0 - lam) * state.gamma)))


def sensitivity(state: GaussianState, obs: QuadraticObservable,
                enc: EncodingWeightModel, p: float = 1e-2,
                mode: str = "exact") -> float:
    """Measurement error per unit noise strength under depolarizing noise.

    The ratio ``measurement_error / p`` at a small probe strength; for small
    p it approximates the derivative of the error at p = 0.
    """
    if p <= 0:
        raise ValueError(f"probe strength must be positive, got {p}")
    return measurement_error(state, obs, enc, PauliChannel.depolarizing(p), mode) / p


def momentum_error_map(state: GaussianState, enc: EncodingWeightModel,
                       channel: PauliChannel, momenta: np.ndarray,
                       mode: str = "exact") -> np.ndarray:
    """Noise-induced error of the mode occupation ``n_k`` for many momenta.

    Returns ``<n_k> - <n_k>_noisy`` for each row of ``momenta``.  When the
    attenuation is flavor independent the whole map reduces to one quadratic
    form per momentum in a precomputed matrix, which keeps full-grid maps
    cheap; otherwise each momentum falls back to the generic contraction.
    """
    lat = state.lattice
    momenta = np.atleast_2d(np.asarray(momenta, dtype=float))
    if momenta.shape[1] != lat.dim:
        raise ValueError(f"momenta must have {lat.dim} columns, got {momenta.shape}")
    fast = enc.flavor_independent and (mode == "worst-case" or channel.is_depolarizing)
    if fast:
        drop = 1.0 - site_attenuation_matrix(enc, channel, mode)
        g = state.gamma
        m_same = drop * (g[0::2, 0::2] + g[1::2, 1::2])
        m_cross = drop * g[0::2, 1::2]
        t_mat = (m_cross + m_cross.T) + 1j * m_same
        phi = np.exp(1j * (momenta @ lat.coords.T))
        vals = np.sum((phi @ t_mat) * phi.conj(), axis=1)
        return vals.real / (4.0 * lat.n_sites)
    lam = attenuation_matrix(enc, channel, mode)
    dropped = (1.0 - lam) * state.gamma
    out = np.empty(momenta.shape[0])
    for i, k in enumerate(momenta):
        obs = QuadraticObservable.momentum_occupation(lat, k)
        out[i] = np.sum(obs.coefficients * dropped)
    return out
