"""Exact LOCC protocol simulation with an entanglement ledger.

Two execution modes share the same branch construction: exact aggregation
propagates every Kraus branch of the protocol tree and is the ground truth
(it proves the protocol realizes the intended measurement, and gives exact
expected costs), while the Monte Carlo walker samples a single path with a
seeded generator and serves as a statistical cross-check.

Register layout is always [A, B, C, D]: Alice holds A and C, Bob holds B
and D; resources are appended on CD and consumed within the round.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as _product
from typing import NamedTuple

import numpy as np

from .bounds import RoundSchedule, _next_raw
from .states import (
    MA_LABELS,
    BipartiteSplit,
    MacParams,
    MaParams,
    PureState,
    RankOnePovm,
    _ma_vectors,
    binary_entropy,
    entanglement_entropy,
    generalized_bell,
    ma_measurement,
    partial_inner_product,
    pauli_invariant_povm,
)

POVM_TOL = 1e-10


@dataclass
class ProtocolTrace:
    """Record of one protocol execution: the final outcome label, the per-round
    binary results, the entanglement spent, and whether the run fell back to
    teleportation."""

    outcome_label: str
    round_outcomes: list
    ebits_consumed: float
    teleported: bool


@dataclass(frozen=True)
class RoundConfig:
    """One round of the recursive protocol: resource parameter x and Bob's
    correction coefficients (A, B), tied to the current measurement parameter
    a by A x / a = B y / b."""

    a: float
    x: float
    coeff_a: float
    coeff_b: float

    def __post_init__(self):
        if abs(self.coeff_a**2 + self.coeff_b**2 - 1.0) > POVM_TOL:
            raise ValueError("correction coefficients are not normalized")
        b = math.sqrt(max(0.0, 1.0 - self.a**2))
        y = math.sqrt(max(0.0, 1.0 - self.x**2))
        if b > 0.0 and self.a > 0.0:
            lhs = self.coeff_a * self.x / self.a
            rhs = self.coeff_b * y / b
            if abs(lhs - rhs) > POVM_TOL:
                raise ValueError(f"defining relation violated: {lhs} != {rhs}")

    @classmethod
    def for_round(cls, a: float, x: float) -> "RoundConfig":
        b = math.sqrt(max(0.0, 1.0 - a * a))
        y = math.sqrt(max(0.0, 1.0 - x * x))
        n = math.hypot(y * a, x * b)
        if n == 0.0:
            raise ValueError(f"degenerate round at a={a}, x={x}")
        return cls(a, x, y * a / n, x * b / n)


@dataclass
class InducedPovm:
    """POVM realized on AB by a protocol, keyed by classical outcome label;
    elements must sum to the identity."""

    elements: dict

    def __post_init__(self):
        mats = list(self.elements.values())
        acc = sum(mats)
        resid = np.max(np.abs(acc - np.eye(acc.shape[0])))
        if resid > POVM_TOL:
            raise ValueError(f"induced POVM completeness residual {resid}")


# ---------------------------------------------------------------------------
# one round of the recursive protocol


def _bell_vectors():
    s = 1.0 / math.sqrt(2.0)
    return (
        np.array([1, 0, 0, 1], dtype=complex) * s,   # Phi+
        np.array([1, 0, 0, -1], dtype=complex) * s,  # Phi-
        np.array([0, 1, 1, 0], dtype=complex) * s,   # Psi+
        np.array([0, 1, -1, 0], dtype=complex) * s,  # Psi-
    )


def _bob_bases(ca: float, cb: float) -> dict:
    """Bob's four two-dimensional outcome subspaces on (B, D), built from the
    correction coefficients (A, B) = (ca, cb)."""
    return {
        "P1": (
            np.array([ca, 0, 0, cb], dtype=complex),
            np.array([0, cb, ca, 0], dtype=complex),
        ),
        "Q1": (
            np.array([cb, 0, 0, -ca], dtype=complex),
            np.array([0, ca, -cb, 0], dtype=complex),
        ),
        "P2": (
            np.array([cb, 0, 0, ca], dtype=complex),
            np.array([0, ca, cb, 0], dtype=complex),
        ),
        "Q2": (
            np.array([ca, 0, 0, -cb], dtype=complex),
            np.array([0, cb, -ca, 0], dtype=complex),
        ),
    }


class _RoundOps(NamedTuple):
    config: RoundConfig
    good: tuple  # ((alice, bob), ((row, outcome_index), ...)) per good branch
    bad: tuple   # ((alice, bob), matrix, permutation, next_a) per bad branch


def _branch_matrix(alice_pair, bob_pair, resource_map) -> np.ndarray:
    rows = []
    for u in alice_pair:
        for w in bob_pair:
            # g[a,b,c,d] = u[a,c] w[b,d]: the joint outcome state on ABCD
            g = np.einsum("ac,bd->abcd", u.reshape(2, 2), w.reshape(2, 2)).ravel()
            rows.append(g.conj() @ resource_map)
    return np.array(rows)


@lru_cache(maxsize=256)
def _round_operators(a: float, x: float) -> _RoundOps:
    """Kraus branches of one round at measurement parameter a and resource x.

    Good branches (P,P1) and (Q,Q2) terminate: each of their four rows is
    proportional to one M_a outcome bra.  Bad branches (P,Q1) and (Q,P2)
    hand the next round an effective M_{a2} problem; `permutation` maps the
    next round's outcome index back to this round's.
    """
    config = RoundConfig.for_round(a, x)
    y = math.sqrt(max(0.0, 1.0 - x * x))
    resource = np.array([x, 0, 0, y], dtype=complex)
    resource_map = np.kron(np.eye(4), resource.reshape(4, 1))

    phi_p, phi_m, psi_p, psi_m = _bell_vectors()
    alice = {"P": (phi_p, psi_m), "Q": (phi_m, psi_p)}
    bob = _bob_bases(config.coeff_a, config.coeff_b)
    m = _ma_vectors(a)

    good = []
    for alabel, blabel in (("P", "P1"), ("Q", "Q2")):
        mat = _branch_matrix(alice[alabel], bob[blabel], resource_map)
        rows = []
        for row in mat:
            v = row.conj()
            overlaps = [abs(np.vdot(mi, v)) for mi in m]
            idx = int(np.argmax(overlaps))
            norm = np.linalg.norm(v)
            if norm > 1e-12 and abs(overlaps[idx] / norm - 1.0) > 1e-9:
                raise RuntimeError(
                    f"good branch {alabel}{blabel} row does not align with an outcome"
                )
            rows.append((row, idx))
        good.append(((alabel, blabel), tuple(rows)))

    next_a = _next_raw(a, x)
    m2 = _ma_vectors(next_a)
    bad = []
    for alabel, blabel in (("P", "Q1"), ("Q", "P2")):
        mat = _branch_matrix(alice[alabel], bob[blabel], resource_map)
        perm = [None] * 4
        # for x^2 < 1/2 the images carry an extra Z on the first qubit; fold
        # that free local correction into the branch map so the continuation
        # sees plain M_{a2} basis vectors
        probe = mat @ m[0]
        if max(abs(np.vdot(m2j, probe)) for m2j in m2) < (1.0 - 1e-9) * np.linalg.norm(
            probe
        ):
            mat = np.diag([1.0, 1.0, -1.0, -1.0]) @ mat
        for i, mi in enumerate(m):
            image = mat @ mi
            norm = np.linalg.norm(image)
            overlaps = [abs(np.vdot(m2j, image)) for m2j in m2]
            j = int(np.argmax(overlaps))
            if norm > 1e-12 and abs(overlaps[j] / norm - 1.0) > 1e-9:
                raise RuntimeError(
                    f"bad branch {alabel}{blabel} image of outcome {i} is not an "
                    f"M_a2 basis vector"
                )
            perm[j] = i
        if sorted(p for p in perm if p is not None) != sorted(
            set(p for p in perm if p is not None)
        ):
            raise RuntimeError(f"bad branch {alabel}{blabel} permutation is not 1:1")
        bad.append(((alabel, blabel), mat, tuple(perm), next_a))

    return _RoundOps(config, tuple(good), tuple(bad))


# ---------------------------------------------------------------------------
# exact branch-tree aggregation


class _Leaf(NamedTuple):
    outcome: int          # top-level M_a outcome index
    kraus_row: np.ndarray  # functional on AB: amplitude = row . psi
    cost: float
    teleported: bool


def _branch_tree(a: float, schedule: RoundSchedule) -> list:
    """All leaves of the exact protocol tree at top-level parameter a."""
    leaves = []

    def finish(a_cur, kraus, cost, perm, teleported):
        for i, mi in enumerate(_ma_vectors(a_cur)):
            leaves.append(_Leaf(perm[i], mi.conj() @ kraus, cost, teleported))

    def walk(a_cur, xs, kraus, cost, perm):
        # the scheduled resource is consumed round by round even when the
        # effective parameter degenerates to a product basis, matching the
        # literal cost recursion; schedule optimization, not the executor,
        # is what drops pointless rounds
        if not xs:
            finish(a_cur, kraus, cost + 1.0, perm, True)
            return
        x = xs[0]
        cost_after = cost + binary_entropy(x * x)
        ops = _round_operators(a_cur, x)
        for _, rows in ops.good:
            for row, idx in rows:
                leaves.append(_Leaf(perm[idx], row @ kraus, cost_after, False))
        for _, mat, branch_perm, next_a in ops.bad:
            walk(
                next_a,
                xs[1:],
                mat @ kraus,
                cost_after,
                tuple(perm[p] for p in branch_perm),
            )

    walk(a, schedule.xs, np.eye(4, dtype=complex), 0.0, (0, 1, 2, 3))
    return leaves


def induced_povm(a: float, schedule: RoundSchedule) -> InducedPovm:
    """The POVM the protocol realizes on AB, by exact aggregation; raises if
    it differs from the intended measurement beyond tolerance."""
    acc = {i: np.zeros((4, 4), dtype=complex) for i in range(4)}
    for leaf in _branch_tree(a, schedule):
        acc[leaf.outcome] += np.outer(leaf.kraus_row.conj(), leaf.kraus_row)
    target = ma_measurement(MaParams.from_a(a))
    for i, (w, phi) in enumerate(target.elements):
        expected = w * np.outer(phi.amplitudes, phi.amplitudes.conj())
        resid = np.max(np.abs(acc[i] - expected))
        if resid > POVM_TOL:
            raise RuntimeError(
                f"induced element {MA_LABELS[i]} deviates by {resid} from M_a"
            )
    return InducedPovm({MA_LABELS[i]: acc[i] for i in range(4)})


def expected_cost(a: float, schedule: RoundSchedule) -> float:
    """Exact expected entanglement consumption on the maximally mixed input."""
    total = 0.0
    for leaf in _branch_tree(a, schedule):
        total += (np.vdot(leaf.kraus_row, leaf.kraus_row).real / 4.0) * leaf.cost
    return float(total)


# ---------------------------------------------------------------------------
# Monte Carlo walker


def run_protocol(a: float, schedule: RoundSchedule, input_state=None, seed: int = 0):
    """Sample one execution of the recursive protocol.

    `input_state` is a PureState whose first two subsystems are the qubits
    A and B (further subsystems ride along as ancillas); None means the
    maximally mixed AB input, realized by drawing a uniform computational
    basis state before any quantum sampling.  `seed` may be an integer or an
    existing numpy Generator (handy for long run batches).  Returns
    (trace, posterior).
    """
    rng = np.random.default_rng(seed)
    if input_state is None:
        idx = int(rng.integers(4))
        input_state = PureState.basis((2, 2), divmod(idx, 2), ("A", "B"))
    if len(input_state.dims) < 2 or input_state.dims[0] != 2 or input_state.dims[1] != 2:
        raise ValueError(f"input must start with two qubits, got dims {input_state.dims}")

    mat = input_state.amplitudes.reshape(4, -1)
    anc_dims = input_state.dims[2:]
    a_cur = a
    perm = (0, 1, 2, 3)
    cost = 0.0
    round_outcomes = []
    teleported = False

    def born_choice(weights):
        total = sum(weights)
        if total <= 0.0:
            raise RuntimeError("all branch probabilities vanished")
        r = rng.random() * total
        acc = 0.0
        for i, w in enumerate(weights):
            acc += w
            if r < acc:
                return i
        return len(weights) - 1

    def sq_norm(v):
        return float(np.vdot(v, v).real)

    finished = None
    for r, x in enumerate(schedule.xs):
        ops = _round_operators(a_cur, x)
        cost += binary_entropy(x * x)
        good_mats = list(ops.good)
        bad_mats = list(ops.bad)
        probs = [
            sum(sq_norm(row @ mat) for row, _ in rows) for _, rows in good_mats
        ] + [sq_norm(m @ mat) for _, m, _, _ in bad_mats]
        # order: (P,P1), (Q,Q2), (P,Q1), (Q,P2)
        choice = born_choice(probs)
        if choice < 2:
            labels, rows = good_mats[choice]
            round_outcomes.append((r, labels[0], labels[1]))
            row_probs = [sq_norm(row @ mat) for row, _ in rows]
            k = born_choice(row_probs)
            row, idx = rows[k]
            finished = (perm[idx], row @ mat)
            break
        labels, m, branch_perm, next_a = bad_mats[choice - 2]
        round_outcomes.append((r, labels[0], labels[1]))
        new = m @ mat
        mat = new / math.sqrt(sq_norm(new))
        perm = tuple(perm[p] for p in branch_perm)
        a_cur = next_a

    if finished is None:
        cost += 1.0
        teleported = True
        m = _ma_vectors(a_cur)
        row_probs = [sq_norm(mi.conj() @ mat) for mi in m]
        k = born_choice(row_probs)
        finished = (perm[k], m[k].conj() @ mat)

    top_idx, anc_vec = finished
    top_state = _ma_vectors(a)[top_idx]
    if anc_dims:
        post = PureState.from_vector(
            np.kron(top_state, anc_vec), (2, 2) + anc_dims
        )
    else:
        post = PureState(top_state, (2, 2), ("A", "B"))
    trace = ProtocolTrace(MA_LABELS[top_idx], round_outcomes, cost, teleported)
    return trace, post


# ---------------------------------------------------------------------------
# Bell-measurement protocol for Pauli-invariant POVMs


def _pauli_label(j1, k1, j2, k2, s) -> str:
    return f"{j1}{k1}{j2}{k2};s{s}"


def pauli_induced_povm(d: int, ensemble) -> InducedPovm:
    """Exact POVM realized on AB by the double generalized-Bell protocol with
    resource conj(phi_s) on CD; raises if it differs from the local-Pauli
    translate construction beyond tolerance."""
    target = pauli_invariant_povm(d, ensemble)
    targets = {}
    it = iter(target.elements)
    for s in range(len(ensemble)):
        for j1, k1, j2, k2 in _product(range(d), repeat=4):
            targets[(s, j1, k1, j2, k2)] = next(it)
    bells = {
        (j, k): generalized_bell(d, j, k).as_tensor()
        for j, k in _product(range(d), repeat=2)
    }
    elements = {}
    for s, (p_s, phi) in enumerate(ensemble):
        phi_mat = phi.as_tensor()
        for j1, k1, j2, k2 in _product(range(d), repeat=4):
            vec = np.einsum("ac,bd,cd->ab", bells[(j1, k1)], bells[(j2, k2)], phi_mat)
            vec = vec.ravel()
            element = p_s * np.outer(vec, vec.conj())
            # the conjugated resource negates the shift powers: Bell outcome
            # (j, k) realizes the translate with X power -k (mod d)
            w, tstate = targets[(s, j1, (-k1) % d, j2, (-k2) % d)]
            expected = w * np.outer(tstate.amplitudes, tstate.amplitudes.conj())
            resid = np.max(np.abs(element - expected))
            if resid > POVM_TOL:
                raise RuntimeError(
                    f"induced element {_pauli_label(j1, k1, j2, k2, s)} deviates "
                    f"by {resid} from the Pauli-translate construction"
                )
            elements[_pauli_label(j1, k1, j2, k2, s)] = element
    return InducedPovm(elements)


def pauli_protocol_cost(d: int, ensemble) -> float:
    """Exact expected resource entanglement of the Bell-measurement protocol:
    sum_s p_s E(phi_s)."""
    split = BipartiteSplit.of((0,), 2)
    return float(
        sum(p_s * entanglement_entropy(phi, split) for p_s, phi in ensemble)
    )


def run_pauli_povm_protocol(d: int, ensemble, seed: int = 0) -> ProtocolTrace:
    """Sample one run of the Bell-measurement protocol on the maximally mixed
    AB input.  Draw order: ensemble index s, then the uniform AB basis state,
    then Alice's Bell outcome, then Bob's."""
    rng = np.random.default_rng(seed)
    weights = np.array([p for p, _ in ensemble], dtype=float)
    s = int(rng.choice(len(ensemble), p=weights / weights.sum()))
    p_s, phi = ensemble[s]

    idx = int(rng.integers(d * d))
    ab = PureState.basis((d, d), divmod(idx, d), ("A", "B"))
    state = ab.tensor(phi.conj())  # layout [A, B, C, D]

    labels = list(_product(range(d), repeat=2))
    bells = [generalized_bell(d, j, k) for j, k in labels]

    # Alice measures (A, C)
    posts = [partial_inner_product(bv, state, (0, 2)) for bv in bells]
    probs = [p.squared_norm() for p in posts]
    ia = int(rng.choice(len(labels), p=np.array(probs) / sum(probs)))
    j1, k1 = labels[ia]
    bd = PureState.from_vector(posts[ia].amplitudes, (d, d))

    # Bob measures (B, D)
    probs_b = [abs(np.vdot(bv.amplitudes, bd.amplitudes)) ** 2 for bv in bells]
    ib = int(rng.choice(len(labels), p=np.array(probs_b) / sum(probs_b)))
    j2, k2 = labels[ib]

    split = BipartiteSplit.of((0,), 2)
    return ProtocolTrace(
        outcome_label=_pauli_label(j1, k1, j2, k2, s),
        round_outcomes=[(0, f"B{j1}{k1}", f"B{j2}{k2}")],
        ebits_consumed=entanglement_entropy(phi, split),
        teleported=False,
    )


# ---------------------------------------------------------------------------
# entanglement production experiments


def entanglement_production(m: RankOnePovm) -> float:
    """Average entanglement left on CD when AB of the double maximally
    entangled state |Phi+>_AC |Phi+>_BD is measured with m."""
    dims = m.dims
    if len(dims) != 2 or dims[0] != dims[1]:
        raise ValueError(f"expected a d x d POVM, got dims {dims}")
    d = dims[0]
    psi = np.zeros((d, d, d, d), dtype=complex)
    for i, j in _product(range(d), repeat=2):
        psi[i, j, i, j] = 1.0 / d
    big = PureState(psi.ravel(), (d, d, d, d), ("A", "B", "C", "D"))
    split = BipartiteSplit.of((0,), 2)
    total = 0.0
    for w, phi in m.elements:
        post = partial_inner_product(phi, big, (0, 1))
        prob = w * post.squared_norm()
        if prob <= 0.0:
            continue
        total += prob * entanglement_entropy(
            PureState.from_vector(post.amplitudes, (d, d)), split
        )
    return float(total)


def _correlated_state(vectors_ab, vectors_cd) -> PureState:
    """(1/2) sum_i |m_i>_AB |n_i>_CD on the four-qubit register [A, B, C, D]."""
    amps = np.zeros((2, 2, 2, 2), dtype=complex)
    for vab, vcd in zip(vectors_ab, vectors_cd):
        amps += 0.5 * np.einsum(
            "ab,cd->abcd", vab.reshape(2, 2), vcd.reshape(2, 2)
        )
    return PureState(amps.ravel(), (2, 2, 2, 2), ("A", "B", "C", "D"))


def _production_pair(vectors_ab, vectors_cd):
    state = _correlated_state(vectors_ab, vectors_cd)
    e_initial = entanglement_entropy(state, BipartiteSplit.of((0, 2), 4))
    split_cd = BipartiteSplit.of((0,), 2)
    e_final = 0.0
    for vab in vectors_ab:
        bra = PureState(vab, (2, 2))
        post = partial_inner_product(bra, state, (0, 1))
        prob = post.squared_norm()
        if prob <= 0.0:
            continue
        e_final += prob * entanglement_entropy(
            PureState.from_vector(post.amplitudes, (2, 2)), split_cd
        )
    return float(e_initial), float(e_final)


def production_with_ancilla(a: float, c: float):
    """Entanglement across AC|BD before, and the average CD entanglement after,
    measuring M_a on AB of the correlated state built from M_a and M_c
    eigenvectors.  Returns (E_initial, E_final)."""
    return _production_pair(_ma_vectors(a), _ma_vectors(c))


def _mac_vectors(p: MacParams) -> list:
    a, b, c, d = p.a, p.b, p.c, p.d
    return [
        np.array([a, 0, 0, b], dtype=complex),
        np.array([b, 0, 0, -a], dtype=complex),
        np.array([0, c, d, 0], dtype=complex),
        np.array([0, d, -c, 0], dtype=complex),
    ]


def production_with_ancilla_general(p: MacParams, ancilla: MacParams):
    """Generalized production experiment for the unequal-entanglement family:
    the AB register carries the (a, c) measurement, the CD ancillas carry the
    (a', c') coefficients.  Returns (E_initial, E_final)."""
    return _production_pair(_mac_vectors(p), _mac_vectors(ancilla))


# ---------------------------------------------------------------------------
# three-qubit demo


def demo_three_qubit(input_state=None) -> float:
    """Average teleportation cost of the three-qubit measurement whose
    eigenstates pair |0>_{A'} with Bell states of AB and |1>_{A'} with
    product states: Alice measures A' and teleports A only on outcome 0.
    None means the maximally mixed input (exact aggregation over the basis)."""
    if input_state is None:
        # each basis state contributes 1/8; the four with A' = 0 teleport
        return sum(1.0 for i in range(8) if i < 4) / 8.0
    if input_state.dims != (2, 2, 2):
        raise ValueError(f"expected three qubits, got dims {input_state.dims}")
    amps = input_state.as_tensor()
    p0 = float(np.sum(np.abs(amps[0]) ** 2))
    return p0
