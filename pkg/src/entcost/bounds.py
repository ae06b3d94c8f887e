"""Cost bounds for the two-qubit measurement families, as pure real-valued
functions of the measurement parameters.

Conventions: the measurement parameter a satisfies a >= b = sqrt(1-a^2)
at the API surface; internally the round recursion may carry parameters
with a < b, which label the same measurement family (the roles of the
phi/psi coefficients are swapped by a free local flip).  All logarithms
are base 2; costs are in ebits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .optimize import Interval, OptResult, bisect_root, maximize_2d, maximize_scalar, minimize_scalar
from .states import MacParams, MaParams, RankOnePovm, BipartiteSplit, binary_entropy, entanglement_entropy

INVARIANT_TOL = 1e-9


@dataclass(frozen=True)
class RoundSchedule:
    """Resource parameters x_1..x_L for the multi-round protocol, one per
    round, each strictly inside (0, 1)."""

    xs: tuple

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(float(x) for x in self.xs))
        if not self.xs:
            raise ValueError("schedule must contain at least one round")
        for x in self.xs:
            if not 0.0 < x < 1.0:
                raise ValueError(f"resource parameter {x} outside (0, 1)")

    @property
    def rounds(self) -> int:
        return len(self.xs)


@dataclass
class BoundsRow:
    """All bound values at one measurement parameter a (one row of the
    sweep output)."""

    a: float
    b: float
    avg_ent: float
    lower_absolute: float
    lower_single: float
    upper_single: float
    upper_multiround: float
    multiround_rounds: int
    teleport_upper: float

    def check_ordering(self, tol: float = INVARIANT_TOL) -> list:
        """Return the list of violated ordering relations (empty when sound)."""
        bad = []
        if self.avg_ent > self.lower_absolute + tol:
            bad.append("avg_ent > lower_absolute")
        if self.lower_absolute > self.upper_multiround + tol:
            bad.append("lower_absolute > upper_multiround")
        if self.upper_multiround > min(self.upper_single, self.teleport_upper) + tol:
            bad.append("upper_multiround > min(upper_single, teleport_upper)")
        if self.lower_single > self.upper_single + tol:
            bad.append("lower_single > upper_single")
        return bad


def teleport_upper(d_a: int, d_b: int) -> float:
    """Teleport the smaller side and measure locally: min(log2 dA, log2 dB)."""
    if d_a < 2 or d_b < 2:
        raise ValueError("subsystem dimensions must be at least 2")
    return min(math.log2(d_a), math.log2(d_b))


def avg_entanglement_lower(m: RankOnePovm) -> float:
    """Average entanglement of the POVM states on the maximally mixed input:
    (1/d^2) sum_i w_i E(phi_i)."""
    dims = m.dims
    if len(dims) != 2 or dims[0] != dims[1]:
        raise ValueError(f"expected a d x d bipartite POVM, got dims {dims}")
    split = BipartiteSplit.of((0,), 2)
    d2 = dims[0] * dims[1]
    return sum(w * entanglement_entropy(phi, split) for w, phi in m.elements) / d2


def failure_probability(a: float, x: float) -> float:
    """Probability 1 - 1/((a/x)^2 + (b/y)^2) that a round fails, with
    b = sqrt(1-a^2), y = sqrt(1-x^2); endpoint limits included."""
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"parameter a={a} outside [0, 1]")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"resource parameter x={x} outside [0, 1]")
    b2 = 1.0 - a * a
    y2 = 1.0 - x * x
    if y2 == 0.0:
        return 1.0 if b2 > 0.0 else 0.0
    if x == 0.0:
        return 1.0 if a > 0.0 else 0.0
    s = a * a / (x * x) + b2 / y2
    return min(max(1.0 - 1.0 / s, 0.0), 1.0)


class NextParameter(NamedTuple):
    value: float
    swapped: bool


def _next_raw(a: float, x: float) -> float:
    """|a2| of the failed-round recursion, without the a >= b normalization.
    Valid for any real a in [-1, 1]."""
    b = math.sqrt(max(0.0, 1.0 - a * a))
    y2 = 1.0 - x * x
    x2 = x * x
    denom = math.sqrt(x2 * x2 * b * b + y2 * y2 * a * a)
    if denom == 0.0:
        raise ValueError(f"degenerate recursion at a={a}, x={x}")
    return abs((x2 - y2) * a * b / denom)


def next_parameter(a: float, x: float) -> NextParameter:
    """Measurement parameter after a failed round, normalized to a >= b;
    `swapped` records whether the phi/psi coefficient roles were exchanged."""
    if not 0.0 < x < 1.0:
        raise ValueError(f"resource parameter x={x} outside (0, 1)")
    a2 = _next_raw(a, x)
    b2 = math.sqrt(max(0.0, 1.0 - a2 * a2))
    if a2 < b2:
        return NextParameter(b2, True)
    return NextParameter(a2, False)


def multiround_upper(a: float, schedule: RoundSchedule) -> float:
    """The round-recursion bound B_L(a; x_1..x_L): each round costs h(x^2)
    and on failure hands the next round the updated parameter; after the
    last round the participants teleport (terminal cost 1)."""
    def recurse(cur: float, xs) -> float:
        if not xs:
            return 1.0
        x = xs[0]
        return binary_entropy(x * x) + failure_probability(cur, x) * recurse(_next_raw(cur, x), xs[1:])

    return recurse(a, schedule.xs)


# --- vectorized objective pieces ---------------------------------------------
#
# Grid scans dominate the optimization time, so the scalar building blocks
# above also exist in ndarray form; the scalar versions stay authoritative
# for the refinement stage.


def _h_arr(z: np.ndarray) -> np.ndarray:
    z = np.clip(z, 0.0, 1.0)
    out = np.zeros_like(z)
    inner = (z > 0.0) & (z < 1.0)
    zi = z[inner]
    out[inner] = -zi * np.log2(zi) - (1.0 - zi) * np.log2(1.0 - zi)
    return out


def _failure_arr(a: float, xs: np.ndarray) -> np.ndarray:
    """failure_probability for interior xs, vectorized."""
    b2 = 1.0 - a * a
    y2 = 1.0 - xs * xs
    s = a * a / (xs * xs) + b2 / y2
    return np.clip(1.0 - 1.0 / s, 0.0, 1.0)


def _next_raw_arr(a: float, xs: np.ndarray) -> np.ndarray:
    b = math.sqrt(max(0.0, 1.0 - a * a))
    x2 = xs * xs
    y2 = 1.0 - x2
    denom = np.sqrt(x2 * x2 * b * b + y2 * y2 * a * a)
    return np.abs((x2 - y2) * a * b / denom)


# --- multi-round optimization -------------------------------------------------
#
# Value functions V_L(beta) = optimal bound with at most L rounds remaining,
# tabulated on a log-spaced grid in beta = min(a, b) (the bound depends on the
# parameter only through beta).  Levels below the top are interpolated
# (log-log, which is near-linear for these curves); the top level is solved
# exactly at the requested parameter, and the reported value is an exact
# B_n evaluation of the reconstructed schedule, so it is a true upper bound.

_BETA_MIN = 1e-6
_BETA_GRID_N = 801
_LN_BETA_GRID = np.linspace(math.log(_BETA_MIN), math.log(1.0 / math.sqrt(2.0)), _BETA_GRID_N)
_BETA_GRID = np.exp(_LN_BETA_GRID)
_value_tables: dict = {}


def _beta_of(a: float) -> float:
    a = abs(a)
    return min(a, math.sqrt(max(0.0, 1.0 - a * a)))


def _interp_value(level: int, a: float) -> float:
    beta = _beta_of(a)
    if level == 0:
        return 1.0 if beta > 0.0 else 0.0
    if beta == 0.0:
        return 0.0
    ln_v = _value_tables[level]
    if beta <= _BETA_MIN:
        # below the grid the value scales essentially linearly in beta
        return math.exp(ln_v[0]) * beta / _BETA_MIN
    val = float(np.interp(math.log(beta), _LN_BETA_GRID, ln_v))
    return math.exp(val)


def _interp_value_arr(level: int, a_arr: np.ndarray) -> np.ndarray:
    aa = np.abs(a_arr)
    beta = np.minimum(aa, np.sqrt(np.maximum(0.0, 1.0 - aa * aa)))
    if level == 0:
        return np.where(beta > 0.0, 1.0, 0.0)
    ln_v = _value_tables[level]
    out = np.zeros_like(beta)
    small = (beta > 0.0) & (beta <= _BETA_MIN)
    out[small] = math.exp(ln_v[0]) * beta[small] / _BETA_MIN
    big = beta > _BETA_MIN
    out[big] = np.exp(np.interp(np.log(beta[big]), _LN_BETA_GRID, ln_v))
    return out


def _level_objective(level: int, a: float):
    def obj(x: float) -> float:
        return (
            binary_entropy(x * x)
            + failure_probability(a, x) * _interp_value(level - 1, _next_raw(a, x))
        )

    def obj_vec(xs: np.ndarray) -> np.ndarray:
        return (
            _h_arr(xs * xs)
            + _failure_arr(a, xs) * _interp_value_arr(level - 1, _next_raw_arr(a, xs))
        )

    return obj, obj_vec


def _ensure_tables(up_to_level: int) -> None:
    for level in range(1, up_to_level + 1):
        if level in _value_tables:
            continue
        vals = np.empty(_BETA_GRID_N)
        for i, beta in enumerate(_BETA_GRID):
            a = math.sqrt(max(0.0, 1.0 - beta * beta))
            obj, obj_vec = _level_objective(level, a)
            res = minimize_scalar(obj, Interval(0.0, 1.0), f_vec=obj_vec)
            vals[i] = min(1.0, res.value)
        _value_tables[level] = np.log(np.maximum(vals, 1e-300))


def multiround_upper_opt(a: float, l_max: int):
    """Minimize the round-recursion bound over round count n <= l_max and the
    resource schedule.  Returns (bound, schedule or None); None means plain
    teleportation is best.  The bound is an exact B_n evaluation of the
    reconstructed schedule."""
    if l_max < 1:
        raise ValueError("round cap must be at least 1")
    b = math.sqrt(max(0.0, 1.0 - a * a))
    if b == 0.0:
        return 0.0, None
    _ensure_tables(l_max - 1)
    xs = []
    cur = a
    for level in range(l_max, 0, -1):
        obj, obj_vec = _level_objective(level, cur)
        res = minimize_scalar(obj, Interval(0.0, 1.0), f_vec=obj_vec)
        if res.value >= 1.0:
            break  # teleporting now beats another round
        if res.argument < 1e-9 or res.argument > 1.0 - 1e-9:
            # degenerate resource: a free round that leaves the parameter
            # unchanged, i.e. fewer real rounds suffice — drop to the next level
            continue
        xs.append(res.argument)
        cur = _next_raw(cur, res.argument)
    if not xs:
        return 1.0, None
    schedule = RoundSchedule(tuple(xs))
    return min(1.0, multiround_upper(a, schedule)), schedule


def single_round_upper(a: float) -> float:
    """min over x of h(x^2) + F(a, x), with x = 1 meaning pure teleportation
    (cost 1 for b > 0, 0 for the product basis)."""
    b2 = 1.0 - a * a
    if b2 == 0.0:
        return 0.0
    res = minimize_scalar(
        lambda x: binary_entropy(x * x) + failure_probability(a, x),
        Interval(0.0, 1.0),
        f_vec=lambda xs: _h_arr(xs * xs) + _failure_arr(a, xs),
    )
    return min(res.value, 1.0)


def jp_success_bound(initial_sq_schmidt, final_sq_schmidt) -> float:
    """Largest possible success probability of converting the initial spectrum
    to the final one by local operations: min over tail-sum ratios, capped
    at 1."""
    alphas = [float(v) for v in initial_sq_schmidt]
    betas = [float(v) for v in final_sq_schmidt]
    for name, spec in (("initial", alphas), ("final", betas)):
        if any(spec[i] < spec[i + 1] - 1e-12 for i in range(len(spec) - 1)):
            raise ValueError(f"{name} spectrum is not descending")
        if abs(sum(spec) - 1.0) > 1e-10:
            raise ValueError(f"{name} spectrum sums to {sum(spec)}, not 1")
    best = 1.0
    for ell in range(1, len(betas) + 1):
        den = sum(betas[ell - 1:])
        if den <= 0.0:
            continue
        num = sum(alphas[ell - 1:])
        best = min(best, num / den)
    return best


def _entangled_sum_sq(a: float, c: float) -> float:
    """(ac + bd)^2 with b, d the complements of a, c."""
    b = math.sqrt(max(0.0, 1.0 - a * a))
    d = math.sqrt(max(0.0, 1.0 - c * c))
    return (a * c + b * d) ** 2


def single_round_lower(a: float) -> float:
    """Best lower bound on the single-round cost: the crossing of the two
    candidate expressions, located by bisection in d on [b, 1/sqrt2]."""
    b = math.sqrt(max(0.0, 1.0 - a * a))
    if b == 0.0:
        return 0.0
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    if b >= inv_sqrt2 - 1e-12:
        return 1.0

    def gap(d: float) -> float:
        c = math.sqrt(max(0.0, 1.0 - d * d))
        s = _entangled_sum_sq(a, c)
        return binary_entropy(min(1.0, c * c / s)) - (s - c * c) / (d * d)

    d_root = bisect_root(gap, Interval(b, inv_sqrt2))
    c = math.sqrt(max(0.0, 1.0 - d_root * d_root))
    s = _entangled_sum_sq(a, c)
    return (s - c * c) / (1.0 - c * c)


def absolute_lower_detail(a: float) -> OptResult:
    """Maximize h(c^2) - h[(ac+bd)^2] over the ancilla parameter c; the
    argument of the result is the optimizing c."""
    b = math.sqrt(max(0.0, 1.0 - a * a))

    def obj_vec(cs: np.ndarray) -> np.ndarray:
        ds = np.sqrt(np.maximum(0.0, 1.0 - cs * cs))
        return _h_arr(cs * cs) - _h_arr((a * cs + b * ds) ** 2)

    return maximize_scalar(
        lambda c: binary_entropy(c * c) - binary_entropy(min(1.0, _entangled_sum_sq(a, c))),
        Interval(0.0, 1.0),
        f_vec=obj_vec,
    )


def absolute_lower(a: float) -> float:
    """Entanglement-production lower bound on the cost, any number of rounds."""
    return max(0.0, absolute_lower_detail(a).value)


def mac_probabilities(p: MacParams, a1: float, c1: float) -> list:
    """The four squared-overlap probabilities that set the initial
    entanglement of the four-qubit production state."""
    a, b, c, d = p.a, p.b, p.c, p.d
    b1 = math.sqrt(max(0.0, 1.0 - a1 * a1))
    d1 = math.sqrt(max(0.0, 1.0 - c1 * c1))
    probs = [
        (a * a1 + b * b1 + c * c1 + d * d1) ** 2 / 4.0,
        (a * a1 + b * b1 - c * c1 - d * d1) ** 2 / 4.0,
        (a * b1 - b * a1 + d * c1 - c * d1) ** 2 / 4.0,
        (a * b1 - b * a1 - d * c1 + c * d1) ** 2 / 4.0,
    ]
    if abs(sum(probs) - 1.0) > 1e-9:
        raise AssertionError(f"production probabilities sum to {sum(probs)}")
    return probs


def _shannon(probs) -> float:
    return -sum(p * math.log2(p) for p in probs if p > 0.0)


def mac_lower_detail(p: MacParams) -> OptResult:
    """Maximize the produced-minus-initial entanglement over the ancilla
    parameters (a', c')."""

    def objective(a1: float, c1: float) -> float:
        gain = (binary_entropy(a1 * a1) + binary_entropy(c1 * c1)) / 2.0
        return gain - _shannon(mac_probabilities(p, a1, c1))

    a, b, c, d = p.a, p.b, p.c, p.d

    def objective_vec(a1: np.ndarray, c1: np.ndarray) -> np.ndarray:
        b1 = np.sqrt(np.maximum(0.0, 1.0 - a1 * a1))
        d1 = np.sqrt(np.maximum(0.0, 1.0 - c1 * c1))
        probs = np.stack(
            np.broadcast_arrays(
                (a * a1 + b * b1 + c * c1 + d * d1) ** 2 / 4.0,
                (a * a1 + b * b1 - c * c1 - d * d1) ** 2 / 4.0,
                (a * b1 - b * a1 + d * c1 - c * d1) ** 2 / 4.0,
                (a * b1 - b * a1 - d * c1 + c * d1) ** 2 / 4.0,
            )
        )
        shannon = np.where(probs > 0.0, -probs * np.log2(np.maximum(probs, 1e-300)), 0.0).sum(axis=0)
        return (_h_arr(a1 * a1) + _h_arr(c1 * c1)) / 2.0 - shannon

    return maximize_2d(
        objective, Interval(0.0, 1.0), Interval(0.0, 1.0), f_vec=objective_vec
    )


def mac_lower(p: MacParams) -> float:
    """Entanglement-production lower bound for the unequal-entanglement
    measurement family."""
    return max(0.0, mac_lower_detail(p).value)


def asymptotic_single_round(b: float) -> float:
    """Small-b approximation 2 b sqrt(log2(1/b)) of both single-round bounds."""
    if not 0.0 < b <= 0.1:
        raise ValueError(f"small-b approximation requires 0 < b <= 0.1, got {b}")
    return 2.0 * b * math.sqrt(math.log2(1.0 / b))


def asymptotic_absolute_lower(b: float) -> float:
    """Small-b limit 1.9123 b of the absolute lower bound."""
    if not 0.0 < b <= 0.1:
        raise ValueError(f"small-b approximation requires 0 < b <= 0.1, got {b}")
    return 1.9123 * b


# small-b slope of the optimized multi-round upper bound
BERRY_SLOPE = 5.6418


def berry_slope() -> float:
    return BERRY_SLOPE


# optimal ancilla parameter of the absolute lower bound as b -> 0
SMALL_B_OPTIMAL_C = 0.28848


def bounds_row(a: float, l_max: int = 2) -> BoundsRow:
    """Evaluate every bound at parameter a."""
    p = MaParams.from_a(a)
    upper_multi, schedule = multiround_upper_opt(a, l_max)
    return BoundsRow(
        a=p.a,
        b=p.b,
        avg_ent=binary_entropy(p.a**2),
        lower_absolute=absolute_lower(a),
        lower_single=single_round_lower(a),
        upper_single=single_round_upper(a),
        upper_multiround=upper_multi,
        multiround_rounds=0 if schedule is None else schedule.rounds,
        teleport_upper=teleport_upper(2, 2),
    )
