"""Dense pure states on small qudit registers, plus the measurement families
used throughout the cost analysis.

Everything is a plain complex amplitude vector over a computational product
basis.  Registers stay small (at most a handful of qubits/qudits), so dense
numpy is exact up to floating point and nothing fancier is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as _product

import numpy as np

NORM_TOL = 1e-10
PARAM_TOL = 1e-12

# eigenvalues of a reduced density matrix below this are treated as exact zeros
SPECTRUM_CLAMP = 1e-14


def binary_entropy(z: float) -> float:
    """h(z) = -z log2(z) - (1-z) log2(1-z), with the convention 0 log 0 = 0."""
    if z < 0.0 or z > 1.0:
        raise ValueError(f"binary entropy argument {z} outside [0, 1]")
    if z == 0.0 or z == 1.0:
        return 0.0
    return -(z * math.log2(z) + (1.0 - z) * math.log2(1.0 - z))


@dataclass(frozen=True)
class MaParams:
    """Parameters (a, b) of the four-outcome orthogonal qubit-pair measurement,
    with a >= b >= 0 and a^2 + b^2 = 1."""

    a: float
    b: float

    def __post_init__(self):
        if not (self.a >= self.b >= 0.0):
            raise ValueError(f"require a >= b >= 0, got a={self.a}, b={self.b}")
        if abs(self.a**2 + self.b**2 - 1.0) > PARAM_TOL:
            raise ValueError(f"a^2 + b^2 = {self.a**2 + self.b**2} != 1")

    @classmethod
    def from_a(cls, a: float) -> "MaParams":
        b = math.sqrt(max(0.0, 1.0 - a * a))
        if 0.0 < b - a <= 1e-12:
            # rounding at a = 1/sqrt(2) can push b one ulp above a
            b = a
        return cls(a, b)


@dataclass(frozen=True)
class MacParams:
    """Parameters of the unequal-entanglement measurement: (a, b) for the
    phi-type states, (c, d) for the psi-type states."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for name, v in (("a", self.a), ("b", self.b), ("c", self.c), ("d", self.d)):
            if v < 0.0:
                raise ValueError(f"coefficient {name}={v} must be nonnegative")
        if abs(self.a**2 + self.b**2 - 1.0) > PARAM_TOL:
            raise ValueError("a^2 + b^2 != 1")
        if abs(self.c**2 + self.d**2 - 1.0) > PARAM_TOL:
            raise ValueError("c^2 + d^2 != 1")

    @classmethod
    def from_ac(cls, a: float, c: float) -> "MacParams":
        return cls(a, math.sqrt(max(0.0, 1.0 - a * a)), c, math.sqrt(max(0.0, 1.0 - c * c)))


class PureState:
    """Complex amplitude vector over a multi-subsystem computational basis.

    `dims` gives the per-subsystem dimensions in layout order; `labels` are
    optional subsystem names.  States are normalized unless explicitly tagged
    otherwise (partial-inner-product results carry their probability weight
    in the norm).
    """

    __slots__ = ("amplitudes", "dims", "labels", "normalized")

    def __init__(self, amplitudes, dims, labels=None, normalized=True):
        amps = np.asarray(amplitudes, dtype=complex).ravel()
        dims = tuple(int(d) for d in dims)
        if amps.size != math.prod(dims):
            raise ValueError(f"{amps.size} amplitudes incompatible with layout {dims}")
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != len(dims):
                raise ValueError("one label per subsystem required")
        if normalized and abs(np.vdot(amps, amps).real - 1.0) > NORM_TOL:
            raise ValueError(f"state norm^2 = {np.vdot(amps, amps).real} is not 1")
        self.amplitudes = amps
        self.dims = dims
        self.labels = labels
        self.normalized = normalized

    @classmethod
    def basis(cls, dims, index, labels=None) -> "PureState":
        """Computational basis state |index[0], index[1], ...>."""
        dims = tuple(dims)
        amps = np.zeros(math.prod(dims), dtype=complex)
        amps[np.ravel_multi_index(tuple(index), dims)] = 1.0
        return cls(amps, dims, labels)

    @classmethod
    def from_vector(cls, vec, dims, labels=None) -> "PureState":
        """Normalize `vec` and wrap it."""
        v = np.asarray(vec, dtype=complex).ravel()
        n = np.linalg.norm(v)
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return cls(v / n, dims, labels)

    def as_tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims)

    def squared_norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def tensor(self, other: "PureState") -> "PureState":
        labels = None
        if self.labels is not None and other.labels is not None:
            labels = self.labels + other.labels
        return PureState(
            np.kron(self.amplitudes, other.amplitudes),
            self.dims + other.dims,
            labels,
            normalized=self.normalized and other.normalized,
        )

    def conj(self) -> "PureState":
        return PureState(self.amplitudes.conj(), self.dims, self.labels, self.normalized)

    def __repr__(self):
        tag = "" if self.normalized else ", unnormalized"
        return f"PureState(dims={self.dims}{tag})"


def overlap(bra: PureState, ket: PureState) -> complex:
    if bra.dims != ket.dims:
        raise ValueError(f"dimension mismatch {bra.dims} vs {ket.dims}")
    return complex(np.vdot(bra.amplitudes, ket.amplitudes))


def equal_up_to_phase(s1: PureState, s2: PureState, tol: float = 1e-10) -> bool:
    """State equality modulo a global phase (max fidelity within tol of 1)."""
    return abs(abs(overlap(s1, s2)) - 1.0) <= tol


@dataclass(frozen=True)
class BipartiteSplit:
    """A cut of the register into two nonempty sides, by layout position."""

    left: tuple
    right: tuple

    def __post_init__(self):
        if not self.left or not self.right:
            raise ValueError("both sides of the split must be nonempty")
        if set(self.left) & set(self.right):
            raise ValueError("split sides overlap")

    @classmethod
    def of(cls, left, n_subsystems: int) -> "BipartiteSplit":
        left = tuple(sorted(left))
        right = tuple(i for i in range(n_subsystems) if i not in left)
        return cls(left, right)


def schmidt_coefficients(state: PureState, split: BipartiteSplit) -> list:
    """Squared Schmidt coefficients across the split, descending, zeros dropped."""
    t = state.as_tensor()
    if set(split.left) | set(split.right) != set(range(len(state.dims))):
        raise ValueError("split does not cover the layout")
    perm = tuple(split.left) + tuple(split.right)
    d_left = math.prod(state.dims[i] for i in split.left)
    mat = t.transpose(perm).reshape(d_left, -1)
    svals = np.linalg.svd(mat, compute_uv=False)
    lam = svals**2
    lam = lam[lam > SPECTRUM_CLAMP]
    lam = np.sort(lam)[::-1]
    return [float(v) for v in lam]


def entanglement_entropy(state: PureState, split: BipartiteSplit) -> float:
    """Entropy (base 2) of either side's reduced state, in ebits."""
    lam = schmidt_coefficients(state, split)
    return float(-sum(v * math.log2(v) for v in lam if v > 0.0))


def partial_inner_product(bra: PureState, ket: PureState, subsystems) -> PureState:
    """Contract the conjugated `bra` against `ket` over the given layout
    positions of `ket`.  The result lives on the remaining subsystems and is
    tagged unnormalized; its squared norm is the probability weight."""
    subsystems = tuple(subsystems)
    if len(subsystems) != len(bra.dims):
        raise ValueError("bra must cover exactly the contracted subsystems")
    for ax, pos in enumerate(subsystems):
        if ket.dims[pos] != bra.dims[ax]:
            raise ValueError(
                f"dimension mismatch at subsystem {pos}: {ket.dims[pos]} vs {bra.dims[ax]}"
            )
    out = np.tensordot(bra.as_tensor().conj(), ket.as_tensor(),
                       axes=(tuple(range(len(bra.dims))), subsystems))
    rest = [i for i in range(len(ket.dims)) if i not in subsystems]
    rest_dims = tuple(ket.dims[i] for i in rest)
    rest_labels = tuple(ket.labels[i] for i in rest) if ket.labels is not None else None
    return PureState(out.ravel(), rest_dims, rest_labels, normalized=False)


@dataclass
class RankOnePovm:
    """Complete rank-one POVM: (weight, normalized state) pairs summing to
    the identity."""

    elements: list

    def __post_init__(self):
        if not self.elements:
            raise ValueError("empty POVM")
        dims = self.elements[0][1].dims
        acc = np.zeros((math.prod(dims), math.prod(dims)), dtype=complex)
        for w, phi in self.elements:
            if not (0.0 < w <= 1.0):
                raise ValueError(f"weight {w} outside (0, 1]")
            if phi.dims != dims:
                raise ValueError("POVM elements live on different registers")
            acc += w * np.outer(phi.amplitudes, phi.amplitudes.conj())
        resid = np.max(np.abs(acc - np.eye(acc.shape[0])))
        if resid > NORM_TOL:
            raise ValueError(f"POVM completeness residual {resid} exceeds {NORM_TOL}")

    @property
    def dims(self):
        return self.elements[0][1].dims

    def completeness_residual(self) -> float:
        dims = self.dims
        acc = np.zeros((math.prod(dims), math.prod(dims)), dtype=complex)
        for w, phi in self.elements:
            acc += w * np.outer(phi.amplitudes, phi.amplitudes.conj())
        return float(np.max(np.abs(acc - np.eye(acc.shape[0]))))


@dataclass
class BinaryProjectiveMeasurement:
    """Two-outcome projective measurement given by orthonormal bases of the
    two outcome subspaces, jointly spanning the whole space."""

    projector_p: list
    projector_q: list

    def __post_init__(self):
        vecs = [s.amplitudes for s in self.projector_p + self.projector_q]
        v = np.array(vecs)
        gram = v.conj() @ v.T
        if np.max(np.abs(gram - np.eye(len(vecs)))) > NORM_TOL:
            raise ValueError("outcome subspace states are not jointly orthonormal")
        if len(vecs) != v.shape[1]:
            raise ValueError("outcome subspaces do not span the full space")


# ---------------------------------------------------------------------------
# measurement families


def _ma_vectors(a: float) -> list:
    """The four orthonormal basis vectors a|00>+b|11>, b|00>-a|11>,
    a|01>+b|10>, b|01>-a|10> on two qubits (any real a with |a| <= 1)."""
    b = math.sqrt(max(0.0, 1.0 - a * a))
    return [
        np.array([a, 0, 0, b], dtype=complex),
        np.array([b, 0, 0, -a], dtype=complex),
        np.array([0, a, b, 0], dtype=complex),
        np.array([0, b, -a, 0], dtype=complex),
    ]


MA_LABELS = ("phi+", "phi-", "psi+", "psi-")


def ma_measurement(p: MaParams) -> RankOnePovm:
    """The orthogonal basis {phi+_a, phi-_a, psi+_a, psi-_a}, weights 1."""
    states = [PureState(v, (2, 2), ("A", "B")) for v in _ma_vectors(p.a)]
    return RankOnePovm([(1.0, s) for s in states])


def mac_measurement(p: MacParams) -> RankOnePovm:
    """Orthogonal basis with phi-type entanglement set by (a, b) and psi-type
    by (c, d)."""
    a, b, c, d = p.a, p.b, p.c, p.d
    vecs = [
        np.array([a, 0, 0, b], dtype=complex),
        np.array([b, 0, 0, -a], dtype=complex),
        np.array([0, c, d, 0], dtype=complex),
        np.array([0, d, -c, 0], dtype=complex),
    ]
    return RankOnePovm([(1.0, PureState(v, (2, 2), ("A", "B"))) for v in vecs])


def m8_measurement(p: MaParams) -> RankOnePovm:
    """Eight-outcome POVM, weights 1/2: the four M_a states plus the four
    obtained by interchanging a and b."""
    vecs = _ma_vectors(p.a) + _ma_vectors(p.b)
    return RankOnePovm([(0.5, PureState(v, (2, 2), ("A", "B"))) for v in vecs])


def generalized_pauli(d: int, kind: str, power: int = 1) -> np.ndarray:
    """Shift X |m> = |m+1 mod d> or clock Z |m> = w^m |m>, raised to `power`."""
    if d < 2:
        raise ValueError("dimension must be at least 2")
    m = np.arange(d)
    if kind == "X":
        op = np.zeros((d, d), dtype=complex)
        op[(m + power) % d, m] = 1.0
        return op
    if kind == "Z":
        omega = np.exp(2j * np.pi / d)
        return np.diag(omega ** ((m * power) % d)).astype(complex)
    raise ValueError(f"kind must be 'X' or 'Z', got {kind!r}")


def generalized_bell(d: int, j: int, k: int) -> PureState:
    """|B_jk> = (1/sqrt d) (Z^j x X^k) sum_r |r, r>."""
    if not (0 <= j < d and 0 <= k < d):
        raise ValueError("indices must lie in [0, d)")
    v = np.zeros(d * d, dtype=complex)
    for r in range(d):
        v[r * d + r] = 1.0 / math.sqrt(d)
    op = np.kron(generalized_pauli(d, "Z", j), generalized_pauli(d, "X", k))
    return PureState(op @ v, (d, d))


def pauli_invariant_povm(d: int, ensemble) -> RankOnePovm:
    """POVM generated by all local Pauli translates of an ensemble of seed
    states on d x d: elements (p_s/d^2, (Z^j1 X^k1 x Z^j2 X^k2)|phi_s>)."""
    if d < 2:
        raise ValueError("dimension must be at least 2")
    total = sum(w for w, _ in ensemble)
    if abs(total - 1.0) > NORM_TOL:
        raise ValueError(f"ensemble weights sum to {total}, not 1")
    elements = []
    for p_s, phi in ensemble:
        if phi.dims != (d, d):
            raise ValueError(f"seed state dims {phi.dims} incompatible with d={d}")
        for j1, k1, j2, k2 in _product(range(d), repeat=4):
            op = np.kron(
                generalized_pauli(d, "Z", j1) @ generalized_pauli(d, "X", k1),
                generalized_pauli(d, "Z", j2) @ generalized_pauli(d, "X", k2),
            )
            state = PureState(op @ phi.amplitudes, (d, d))
            elements.append((p_s / d**2, state))
    return RankOnePovm(elements)


def ma_unitary(p: MaParams) -> np.ndarray:
    """The two-qubit unitary exp(i alpha sigma_y x sigma_x) with cos(alpha)=a,
    which rotates the M_a eigenbasis onto the standard basis."""
    a, b = p.a, p.b
    return np.array(
        [
            [a, 0, 0, b],
            [0, a, b, 0],
            [0, -b, a, 0],
            [-b, 0, 0, a],
        ],
        dtype=complex,
    )
