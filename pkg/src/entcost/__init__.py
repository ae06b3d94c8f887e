"""Entanglement cost of nonlocal bipartite measurements.

Core state/measurement machinery, every upper and lower cost bound for the
two-qubit measurement families, exact LOCC protocol simulation, and a CLI
that sweeps the bounds into CSV/JSON artifacts.
"""

from .states import (
    MA_LABELS,
    BinaryProjectiveMeasurement,
    BipartiteSplit,
    MacParams,
    MaParams,
    PureState,
    RankOnePovm,
    binary_entropy,
    entanglement_entropy,
    equal_up_to_phase,
    generalized_bell,
    generalized_pauli,
    m8_measurement,
    ma_measurement,
    ma_unitary,
    mac_measurement,
    overlap,
    partial_inner_product,
    pauli_invariant_povm,
    schmidt_coefficients,
)
from .optimize import (
    Interval,
    NonFiniteObjectiveError,
    OptResult,
    bisect_root,
    maximize_2d,
    maximize_scalar,
    minimize_scalar,
)
from .bounds import (
    BERRY_SLOPE,
    SMALL_B_OPTIMAL_C,
    BoundsRow,
    NextParameter,
    RoundSchedule,
    absolute_lower,
    absolute_lower_detail,
    asymptotic_absolute_lower,
    asymptotic_single_round,
    avg_entanglement_lower,
    bounds_row,
    failure_probability,
    jp_success_bound,
    mac_lower,
    mac_lower_detail,
    mac_probabilities,
    multiround_upper,
    multiround_upper_opt,
    next_parameter,
    single_round_lower,
    single_round_upper,
    teleport_upper,
)
from .protocol import (
    InducedPovm,
    ProtocolTrace,
    RoundConfig,
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

__all__ = [name for name in dir() if not name.startswith("_")]
