"""Pauli-weight models of fermion-to-qubit encodings.

For a pair of Majorana operators ``gamma_a gamma_b`` each encoding maps the
bilinear to a single Pauli string (up to phase); what matters for single-qubit
noise is the number of non-identity tensor factors of that string, and for
anisotropic channels additionally how many of them are X, Y, and Z.  Four
weight models are provided:

``local``
    An abstract geometrically local encoding: weight ``phi0 + d(r, r')`` with
    ``d`` the torus distance and ``phi0`` a constant overhead per bilinear.
``jw1d``
    The 1D Jordan-Wigner chain.  The weight is ``1 + |x - y|`` with the plain
    (non-wrapped) chain separation, matching the dense string
    ``{X,Y} Z ... Z {X,Y}`` produced by the textbook construction; the exact
    X/Y/Z composition of the string is exposed for anisotropic channels.
``jw2d_snake``
    Jordan-Wigner along a boustrophedon ordering of a 2D lattice: weight
    ``1 + |snake(r) - snake(r')|``.
``bravyi_kitaev``
    The Bravyi-Kitaev binary-tree encoding (number of modes a power of two).
    Weights come from the product of the two encoded Majorana strings, built
    from the standard update / parity / occupation index sets.

A brute-force oracle based on the recursive encoder matrix of the
Bravyi-Kitaev transform (the binary matrix mapping occupation vectors to
qubit bits) independently certifies the number-operator weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Set, Tuple

import numpy as np

from .lattice import Lattice, snake_index_vector

ENCODING_KINDS = ("local", "jw1d", "jw2d_snake", "bravyi_kitaev")


# ----------------------------------------------------------------------
# Jordan-Wigner string composition (1D chain)
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class StringComposition:
    """Multiplicities of X, Y, and Z factors in an encoded bilinear."""

    n_x: int
    n_y: int
    n_z: int

    @property
    def weight(self) -> int:
        return self.n_x + self.n_y + self.n_z


def _jw1d_composition(x: int, y: int, flavor_x: int, flavor_y: int) -> StringComposition:
    """Composition of the dense 1D Jordan-Wigner string for gamma_a gamma_b.

    For sites ``x < y`` the product collapses to an endpoint factor at each
    site and Z on everything strictly between: the left endpoint is Y for
    flavor 1 and X for flavor 2 (the extra Z from the partner string rotates
    it), the right endpoint is X for flavor 1 and Y for flavor 2.  Equal sites
    with different flavors give a single Z.
    """
    if x == y:
        return StringComposition(0, 0, 1)
    if x < y:
        lo_flavor, hi_flavor = flavor_x, flavor_y
    else:
        x, y = y, x
        lo_flavor, hi_flavor = flavor_y, flavor_x
    left = "Y" if lo_flavor == 1 else "X"
    right = "X" if hi_flavor == 1 else "Y"
    n_x = (left == "X") + (right == "X")
    n_y = (left == "Y") + (right == "Y")
    return StringComposition(int(n_x), int(n_y), y - x - 1)


# ----------------------------------------------------------------------
# Bravyi-Kitaev index sets (0-based modes, standard binary-tree form)
# ----------------------------------------------------------------------


def _bk_update_set(q: int, n_modes: int) -> Set[int]:
    """Qubits (above q) whose stored parity flips when mode q flips."""
    out: Set[int] = set()
    idx = q + 1
    idx += idx & (-idx)
    while idx <= n_modes:
        out.add(idx - 1)
        idx += idx & (-idx)
    return out


def _bk_parity_set(q: int) -> Set[int]:
    """Qubits that together store the parity of modes 0..q-1."""
    out: Set[int] = set()
    idx = q
    while idx > 0:
        out.add(idx - 1)
        idx &= idx - 1
    return out


def _bk_occupation_set(q: int) -> Set[int]:
    """Qubits whose joint parity equals the occupation of mode q."""
    out = {q}
    parent = (q + 1) & q
    idx = q
    while idx != parent:
        out.add(idx - 1)
        idx &= idx - 1
    return out


def bk_majorana_support(m: int, n_modes: int) -> Tuple[Set[int], Set[int]]:
    """X- and Z-support of the encoded Majorana with index ``m``.

    Returns ``(x_set, z_set)``; a qubit in both sets carries a Y factor.
    Flavor 1 (even m) maps to X on the update set plus the mode qubit and Z
    on the parity set; flavor 2 (odd m) differs by a Y on the mode qubit and
    Z on the symmetric difference of parity and occupation sets.
    """
    if not 0 <= m < 2 * n_modes:
        raise IndexError(f"Majorana index {m} outside [0, {2 * n_modes})")
    q, b = divmod(m, 2)
    update = _bk_update_set(q, n_modes)
    parity = _bk_parity_set(q)
    if b == 0:
        x_set = update | {q}
        z_set = set(parity)
    else:
        rho = parity ^ _bk_occupation_set(q)
        x_set = update | {q}
        z_set = (rho - {q}) | {q}
    return x_set, z_set


def bk_number_operator_weight(i: int, n_modes: int) -> int:
    """Pauli weight of the encoded number operator of mode i.

    The occupation of mode i is stored in the joint parity of its occupation
    set, so the Z-string implementing ``n_i - 1/2`` touches exactly those
    qubits: weight ``1 + |F(i)|`` with F(i) the flip (children) set of node i
    in the binary tree.  Even modes store their occupation directly and have
    weight 1; mode ``n - 1`` accumulates ``1 + log2(n)`` qubits.
    """
    _require_power_of_two(n_modes)
    if not 0 <= i < n_modes:
        raise IndexError(f"mode index {i} outside [0, {n_modes})")
    return len(_bk_occupation_set(i))


def _require_power_of_two(n: int) -> None:
    if n < 1 or n & (n - 1):
        raise ValueError(f"Bravyi-Kitaev requires a power-of-two mode count, got {n}")


# ----------------------------------------------------------------------
# Bravyi-Kitaev encoder-matrix oracle
# ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def bk_beta_matrix(n_modes: int) -> np.ndarray:
    """Binary encoder matrix beta with qubit bits ``b = beta n (mod 2)``.

    Built by the standard recursive doubling: two copies of the half-size
    block on the diagonal, and the last qubit of the upper half additionally
    accumulates every mode of the lower half.
    """
    _require_power_of_two(n_modes)
    beta = np.array([[1]], dtype=np.uint8)
    while beta.shape[0] < n_modes:
        m = beta.shape[0]
        grown = np.zeros((2 * m, 2 * m), dtype=np.uint8)
        grown[:m, :m] = beta
        grown[m:, m:] = beta
        grown[2 * m - 1, :m] = 1
        beta = grown
    out = beta.copy()
    out.setflags(write=False)
    return out


def _gf2_inverse(mat: np.ndarray) -> np.ndarray:
    """Inverse of a binary matrix over GF(2) by Gaussian elimination."""
    n = mat.shape[0]
    a = (mat % 2).astype(np.uint8)
    inv = np.eye(n, dtype=np.uint8)
    for col in range(n):
        pivot_rows = np.nonzero(a[col:, col])[0]
        if pivot_rows.size == 0:
            raise ValueError("matrix is singular over GF(2)")
        pivot = col + int(pivot_rows[0])
        if pivot != col:
            a[[col, pivot]] = a[[pivot, col]]
            inv[[col, pivot]] = inv[[pivot, col]]
        rows = np.nonzero(a[:, col])[0]
        rows = rows[rows != col]
        a[rows] ^= a[col]
        inv[rows] ^= inv[col]
    return inv


@lru_cache(maxsize=None)
def _bk_beta_inverse(n_modes: int) -> np.ndarray:
    inv = _gf2_inverse(np.asarray(bk_beta_matrix(n_modes)))
    inv.setflags(write=False)
    return inv


def bk_number_operator_weight_from_beta(i: int, n_modes: int) -> int:
    """Number-operator weight recovered from the encoder matrix.

    Decoding ``n = beta^{-1} b`` expresses the occupation of mode i as the
    parity of the qubits flagged in row i of the inverse; the weight of the
    corresponding Z-string is the number of ones in that row.  Serves as an
    independent oracle for :func:`bk_number_operator_weight`.
    """
    _require_power_of_two(n_modes)
    if not 0 <= i < n_modes:
        raise IndexError(f"mode index {i} outside [0, {n_modes})")
    return int(_bk_beta_inverse(n_modes)[i].sum())


# ----------------------------------------------------------------------
# the weight model
# ----------------------------------------------------------------------


class EncodingWeightModel:
    """Pauli-weight model of an encoding over a fixed lattice.

    Parameters
    ----------
    kind : str
        One of ``local``, ``jw1d``, ``jw2d_snake``, ``bravyi_kitaev``.
    lattice : Lattice
        Real-space lattice; ``jw1d`` requires dim 1, ``jw2d_snake`` dim 2,
        and ``bravyi_kitaev`` a power-of-two number of sites.
    phi0 : int, optional
        Constant weight overhead of the ``local`` model (default 2); for
        ``jw1d``/``jw2d_snake`` the overhead is fixed to 1 by the string
        structure and the argument is ignored.
    """

    def __init__(self, kind: str, lattice: Lattice, phi0: int = 2):
        if kind not in ENCODING_KINDS:
            raise ValueError(f"unknown encoding kind {kind!r}; expected one of {ENCODING_KINDS}")
        if kind == "jw1d" and lattice.dim != 1:
            raise ValueError("jw1d requires a 1D lattice")
        if kind == "jw2d_snake" and lattice.dim != 2:
            raise ValueError("jw2d_snake requires a 2D lattice")
        if kind == "bravyi_kitaev":
            _require_power_of_two(lattice.n_sites)
        if kind == "local":
            if int(phi0) != phi0 or phi0 < 0:
                raise ValueError(f"phi0 must be a nonnegative integer, got {phi0}")
            self.phi0 = int(phi0)
        else:
            self.phi0 = 1
        self.kind = kind
        self.lattice = lattice
        self._site_weights: Optional[np.ndarray] = None
        self._bk_masks: Optional[np.ndarray] = None

    # -- capabilities ---------------------------------------------------

    @property
    def supports_composition(self) -> bool:
        """Whether the exact X/Y/Z string composition is available."""
        return self.kind == "jw1d"

    @property
    def flavor_independent(self) -> bool:
        """Whether the weight depends on sites only, not Majorana flavors."""
        return self.kind != "bravyi_kitaev"

    # -- weights --------------------------------------------------------

    def bilinear_weight(self, a: int, b: int) -> int:
        """Pauli weight of the encoded bilinear ``gamma_a gamma_b``, a != b."""
        n = self.lattice.n_majorana
        if not (0 <= a < n and 0 <= b < n):
            raise IndexError(f"Majorana indices ({a}, {b}) outside [0, {n})")
        if a == b:
            raise ValueError("bilinear weight needs two distinct Majorana indices")
        if self.kind == "bravyi_kitaev":
            xa, za = self._bk_support(a)
            xb, zb = self._bk_support(b)
            return int(np.count_nonzero((xa ^ xb) | (za ^ zb)))
        return int(self.site_weight_matrix()[a // 2, b // 2])

    def site_weight_matrix(self) -> np.ndarray:
        """(n_sites, n_sites) weights for flavor-independent encodings."""
        if not self.flavor_independent:
            raise ValueError("Bravyi-Kitaev weights depend on Majorana flavors")
        if self._site_weights is None:
            lat = self.lattice
            if self.kind == "local":
                w = self.phi0 + lat.distance_matrix()
            elif self.kind == "jw1d":
                x = lat.coords[:, 0]
                w = 1 + np.abs(x[:, None] - x[None, :])
            else:  # jw2d_snake
                s = snake_index_vector(lat)
                w = 1 + np.abs(s[:, None] - s[None, :])
            self._site_weights = np.asarray(w, dtype=np.int64)
            self._site_weights.setflags(write=False)
        return self._site_weights

    def weight_matrix(self) -> np.ndarray:
        """(2N, 2N) weights for every Majorana pair (diagonal set to 0)."""
        if self.flavor_independent:
            w = np.repeat(np.repeat(self.site_weight_matrix(), 2, axis=0), 2, axis=1)
        else:
            x, z = self._bk_mask_arrays()
            n = x.shape[0]
            w = np.zeros((n, n), dtype=np.int64)
            step = max(1, (1 << 27) // max(1, n * x.shape[1]))
            for lo in range(0, n, step):
                hi = min(n, lo + step)
                diff = (x[lo:hi, None, :] ^ x[None, :, :]) | (z[lo:hi, None, :] ^ z[None, :, :])
                w[lo:hi] = np.count_nonzero(diff, axis=2)
        np.fill_diagonal(w, 0)
        return w

    def string_composition(self, a: int, b: int) -> StringComposition:
        """Exact X/Y/Z composition of the encoded bilinear (jw1d only)."""
        if not self.supports_composition:
            raise ValueError(
                f"string composition is only defined for jw1d, not {self.kind!r}"
            )
        if a == b:
            raise ValueError("string composition needs two distinct Majorana indices")
        lat = self.lattice
        return _jw1d_composition(
            lat.majorana_site(a), lat.majorana_site(b),
            lat.majorana_flavor(a), lat.majorana_flavor(b),
        )

    def max_weight(self) -> int:
        """Largest weight of the encoding's fragile observable family.

        For the site-distance models this is the maximum bilinear weight over
        all pairs.  For Bravyi-Kitaev it is the maximum *number-operator*
        weight (the on-site occupation strings the encoding is classified
        by, growing as log of the mode count); arbitrary bilinears can reach
        slightly higher weights, available via :meth:`weight_matrix`.
        """
        if self.flavor_independent:
            return int(self.site_weight_matrix().max())
        return bk_max_number_operator_weight(self.lattice.n_sites)

    # -- Bravyi-Kitaev internals ---------------------------------------

    def _bk_mask_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        if self._bk_masks is None:
            n_modes = self.lattice.n_sites
            x = np.zeros((2 * n_modes, n_modes), dtype=bool)
            z = np.zeros((2 * n_modes, n_modes), dtype=bool)
            for m in range(2 * n_modes):
                xs, zs = bk_majorana_support(m, n_modes)
                x[m, sorted(xs)] = True
                z[m, sorted(zs)] = True
            self._bk_masks = (x, z)
        return self._bk_masks

    def _bk_support(self, a: int) -> Tuple[np.ndarray, np.ndarray]:
        x, z = self._bk_mask_arrays()
        return x[a], z[a]

    def __repr__(self) -> str:
        extra = f", phi0={self.phi0}" if self.kind == "local" else ""
        return f"EncodingWeightModel({self.kind!r}, {self.lattice!r}{extra})"


def bilinear_weight(enc: EncodingWeightModel, a: int, b: int) -> int:
    """Module-level alias for :meth:`EncodingWeightModel.bilinear_weight`."""
    return enc.bilinear_weight(a, b)


def max_weight(enc: EncodingWeightModel) -> int:
    """Module-level alias for :meth:`EncodingWeightModel.max_weight`."""
    return enc.max_weight()


def bk_max_number_operator_weight(n_modes: int) -> int:
    """Largest number-operator weight over all modes (attained at n-1)."""
    _require_power_of_two(n_modes)
    return max(bk_number_operator_weight(i, n_modes) for i in range(n_modes))
