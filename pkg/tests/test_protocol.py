import math

import numpy as np
import pytest

from entcost.bounds import (
    RoundSchedule,
    avg_entanglement_lower,
    failure_probability,
    mac_probabilities,
    multiround_upper,
)
from entcost.protocol import (
    InducedPovm,
    RoundConfig,
    _correlated_state,
    demo_three_qubit,
    entanglement_production,
    expected_cost,
    induced_povm,
    pauli_induced_povm,
    pauli_protocol_cost,
    production_with_ancilla,
    production_with_ancilla_general,
    run_pauli_povm_protocol,
    run_protocol,
)
from entcost.states import (
    BipartiteSplit,
    MacParams,
    MaParams,
    PureState,
    _ma_vectors,
    binary_entropy,
    m8_measurement,
    ma_measurement,
    mac_measurement,
    pauli_invariant_povm,
    schmidt_coefficients,
)

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def shannon(probs):
    return -sum(p * math.log2(p) for p in probs if p > 0.0)


def test_round_config_relation():
    cfg = RoundConfig.for_round(math.sqrt(0.8), math.sqrt(0.9))
    assert cfg.coeff_a**2 + cfg.coeff_b**2 == pytest.approx(1.0, abs=1e-12)
    y = math.sqrt(0.1)
    lhs = cfg.coeff_a * cfg.x / cfg.a
    rhs = cfg.coeff_b * y / math.sqrt(0.2)
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_round_config_rejects_bad_coefficients():
    with pytest.raises(ValueError):
        RoundConfig(math.sqrt(0.8), math.sqrt(0.9), 0.9, 0.9)


def test_induced_povm_matches_target_single_round():
    pov = induced_povm(math.sqrt(0.8), RoundSchedule((math.sqrt(0.9),)))
    assert set(pov.elements) == {"phi+", "phi-", "psi+", "psi-"}
    target = ma_measurement(MaParams.from_a(math.sqrt(0.8)))
    for (label, mat), (w, phi) in zip(pov.elements.items(), target.elements):
        expected = w * np.outer(phi.amplitudes, phi.amplitudes.conj())
        assert np.max(np.abs(mat - expected)) < 1e-10


def test_induced_povm_product_basis():
    pov = induced_povm(1.0, RoundSchedule((math.sqrt(0.9),)))
    # a = 1: the four standard-basis projectors
    for i, label in enumerate(("phi+", "phi-", "psi+", "psi-")):
        mat = pov.elements[label]
        vec = _ma_vectors(1.0)[i]
        assert np.max(np.abs(mat - np.outer(vec, vec.conj()))) < 1e-12


def test_induced_povm_bell_two_rounds():
    pov = induced_povm(INV_SQRT2, RoundSchedule((math.sqrt(0.6), math.sqrt(0.8))))
    for i, vec in enumerate(_ma_vectors(INV_SQRT2)):
        label = ("phi+", "phi-", "psi+", "psi-")[i]
        assert np.max(np.abs(pov.elements[label] - np.outer(vec, vec.conj()))) < 1e-10


def test_induced_povm_completeness_enforced():
    with pytest.raises(ValueError):
        InducedPovm({"only": np.eye(4) * 0.5})


def test_expected_cost_matches_recursion():
    rng = np.random.default_rng(21)
    for _ in range(6):
        a = math.sqrt(rng.uniform(0.5, 1.0 - 1e-6))
        xs = tuple(math.sqrt(rng.uniform(0.05, 0.95)) for _ in range(rng.integers(1, 3)))
        schedule = RoundSchedule(xs)
        assert expected_cost(a, schedule) == pytest.approx(
            multiround_upper(a, schedule), abs=1e-10
        )


def test_good_outcome_probability_bell_matched():
    # a = x = 1/sqrt(2): the two good outcomes carry total probability 1/2
    a = INV_SQRT2
    assert failure_probability(a, a) == pytest.approx(0.5, abs=1e-14)
    runs = 4000
    rng = np.random.default_rng(9)
    good = sum(
        not run_protocol(a, RoundSchedule((a,)), seed=rng)[0].teleported
        for _ in range(runs)
    )
    sigma = math.sqrt(0.25 / runs)
    assert abs(good / runs - 0.5) < 3.0 * sigma + 1e-12


def test_run_protocol_product_basis_follows_schedule():
    # a = 1 is a product measurement, but the executor still consumes the
    # scheduled resource; dropping pointless rounds is the optimizer's job
    x = math.sqrt(0.9)
    schedule = RoundSchedule((x,))
    for seed in range(20):
        trace, _ = run_protocol(1.0, schedule, seed=seed)
        expected = binary_entropy(x * x) + (1.0 if trace.teleported else 0.0)
        assert trace.ebits_consumed == pytest.approx(expected, abs=1e-12)
    assert expected_cost(1.0, schedule) == pytest.approx(
        multiround_upper(1.0, schedule), abs=1e-12
    )


def test_run_protocol_pure_input_deterministic_outcome():
    a = math.sqrt(0.8)
    schedule = RoundSchedule((math.sqrt(0.9),))
    labels = ("phi+", "phi-", "psi+", "psi-")
    for i, vec in enumerate(_ma_vectors(a)):
        state = PureState(vec, (2, 2))
        for seed in (0, 1, 2):
            trace, post = run_protocol(a, schedule, state, seed=seed)
            assert trace.outcome_label == labels[i]
            assert np.max(np.abs(post.amplitudes - vec)) < 1e-10


def test_run_protocol_cost_ledger_invariant():
    a = math.sqrt(0.8)
    xs = (math.sqrt(0.9), math.sqrt(0.8))
    schedule = RoundSchedule(xs)
    for seed in range(40):
        trace, _ = run_protocol(a, schedule, seed=seed)
        rounds_used = len(trace.round_outcomes)
        expected = sum(binary_entropy(x * x) for x in xs[:rounds_used])
        if trace.teleported:
            expected += 1.0
        assert trace.ebits_consumed == pytest.approx(expected, abs=1e-12)


def test_run_protocol_failure_frequency():
    a = math.sqrt(0.8)
    x = math.sqrt(0.9)
    runs = 20000
    rng = np.random.default_rng(42)
    fails = sum(
        run_protocol(a, RoundSchedule((x,)), seed=rng)[0].teleported
        for _ in range(runs)
    )
    p = failure_probability(a, x)
    sigma = math.sqrt(p * (1 - p) / runs)
    assert abs(fails / runs - p) < 3.0 * sigma + 1e-12


def test_run_protocol_with_ancilla_register():
    # AB maximally correlated with a two-qubit ancilla CD: measuring AB in
    # the M_a basis collapses CD onto the conjugate eigenstate
    a = math.sqrt(0.8)
    state = _correlated_state(_ma_vectors(a), _ma_vectors(a))
    trace, post = run_protocol(a, RoundSchedule((math.sqrt(0.9),)), state, seed=3)
    idx = ("phi+", "phi-", "psi+", "psi-").index(trace.outcome_label)
    expected = np.kron(_ma_vectors(a)[idx], _ma_vectors(a)[idx])
    fidelity = abs(np.vdot(expected, post.amplitudes))
    assert fidelity == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("a2", [0.6, 0.8])
def test_pauli_induced_povm_d2(a2):
    phi = PureState([math.sqrt(a2), 0, 0, math.sqrt(1 - a2)], (2, 2))
    pov = pauli_induced_povm(2, [(1.0, phi)])
    assert len(pov.elements) == 16
    cost = pauli_protocol_cost(2, [(1.0, phi)])
    avg = avg_entanglement_lower(pauli_invariant_povm(2, [(1.0, phi)]))
    assert cost == pytest.approx(binary_entropy(a2), abs=1e-12)
    assert cost == pytest.approx(avg, abs=1e-10)


def test_pauli_induced_povm_d3_random_seed():
    rng = np.random.default_rng(2024)
    phi = PureState.from_vector(rng.normal(size=9) + 1j * rng.normal(size=9), (3, 3))
    pov = pauli_induced_povm(3, [(1.0, phi)])
    assert len(pov.elements) == 81
    cost = pauli_protocol_cost(3, [(1.0, phi)])
    avg = avg_entanglement_lower(pauli_invariant_povm(3, [(1.0, phi)]))
    assert cost == pytest.approx(avg, abs=1e-10)


def test_pauli_induced_povm_ensemble():
    phi1 = PureState([1, 0, 0, 0], (2, 2))
    phi2 = PureState(np.array([1, 0, 0, 1]) * INV_SQRT2, (2, 2))
    ensemble = [(0.25, phi1), (0.75, phi2)]
    pov = pauli_induced_povm(2, ensemble)
    assert len(pov.elements) == 32
    assert pauli_protocol_cost(2, ensemble) == pytest.approx(0.75, abs=1e-12)


def test_run_pauli_povm_protocol_uniform_bell_outcomes():
    phi = PureState(np.array([1, 0, 0, 1]) * INV_SQRT2, (2, 2))
    ensemble = [(1.0, phi)]
    runs = 4000
    counts = {}
    for seed in range(runs):
        trace = run_pauli_povm_protocol(2, ensemble, seed=seed)
        assert trace.ebits_consumed == pytest.approx(1.0, abs=1e-12)
        counts[trace.outcome_label] = counts.get(trace.outcome_label, 0) + 1
    assert len(counts) == 16
    sigma = math.sqrt((1 / 16) * (15 / 16) / runs)
    for label, n in counts.items():
        assert abs(n / runs - 1 / 16) < 4.0 * sigma


def test_entanglement_production_families():
    a = math.sqrt(0.8)
    p = MaParams.from_a(a)
    for m in (ma_measurement(p), m8_measurement(p)):
        assert entanglement_production(m) == pytest.approx(
            avg_entanglement_lower(m), abs=1e-10
        )
    pm = MacParams.from_ac(a, math.sqrt(0.6))
    assert entanglement_production(mac_measurement(pm)) == pytest.approx(
        avg_entanglement_lower(mac_measurement(pm)), abs=1e-10
    )


def test_entanglement_production_product_basis():
    assert entanglement_production(ma_measurement(MaParams.from_a(1.0))) == pytest.approx(
        0.0, abs=1e-12
    )


def test_production_with_ancilla_trivial_cases():
    e_init, e_final = production_with_ancilla(INV_SQRT2, INV_SQRT2)
    assert e_init == pytest.approx(0.0, abs=1e-10)
    assert e_final == pytest.approx(1.0, abs=1e-10)
    c = math.sqrt(0.3)
    e_init, e_final = production_with_ancilla(1.0, c)
    assert e_init == pytest.approx(binary_entropy(0.3), abs=1e-10)
    assert e_final == pytest.approx(binary_entropy(0.3), abs=1e-10)


def test_production_with_ancilla_formula():
    a, b = math.sqrt(0.8), math.sqrt(0.2)
    c, d = math.sqrt(0.3), math.sqrt(0.7)
    e_init, e_final = production_with_ancilla(a, c)
    assert e_init == pytest.approx(binary_entropy((a * c + b * d) ** 2), abs=1e-10)
    assert e_final == pytest.approx(binary_entropy(0.3), abs=1e-10)


def test_correlated_state_schmidt_pair():
    a, b = math.sqrt(0.8), math.sqrt(0.2)
    c, d = math.sqrt(0.3), math.sqrt(0.7)
    xi = _correlated_state(_ma_vectors(a), _ma_vectors(c))
    coeffs = schmidt_coefficients(xi, BipartiteSplit.of((0, 2), 4))
    expected = sorted([(a * c + b * d) ** 2, (a * d - b * c) ** 2], reverse=True)
    assert coeffs == pytest.approx(expected, abs=1e-10)


def test_production_with_ancilla_general():
    p = MacParams.from_ac(math.sqrt(0.8), math.sqrt(0.3))
    anc = MacParams.from_ac(math.sqrt(0.6), math.sqrt(0.55))
    e_init, e_final = production_with_ancilla_general(p, anc)
    probs = mac_probabilities(p, anc.a, anc.c)
    assert e_init == pytest.approx(shannon(probs), abs=1e-10)
    assert e_final == pytest.approx(
        (binary_entropy(anc.a**2) + binary_entropy(anc.c**2)) / 2.0, abs=1e-10
    )


def test_demo_three_qubit():
    assert demo_three_qubit() == 0.5
    assert demo_three_qubit(PureState.basis((2, 2, 2), (1, 0, 0))) == 0.0
    assert demo_three_qubit(PureState.basis((2, 2, 2), (0, 0, 0))) == 1.0
    with pytest.raises(ValueError):
        demo_three_qubit(PureState.basis((2, 2), (0, 0)))
