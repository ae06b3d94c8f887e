"""Deterministic scalar optimization and root finding.

Grid-first strategy: none of the objectives here are known to be unimodal,
so every minimization starts from a dense grid scan and only then refines
the best bracket by golden section.  Identical inputs give bit-identical
results; value ties break toward the smaller argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

# endpoints are nudged inward by this much before evaluation, so objectives
# singular at interval ends stay finite
ENDPOINT_NUDGE = 1e-12

SCALAR_GRID = 2001
GRID_2D = 201
BRACKET_TOL = 1e-10
ROOT_TOL = 1e-12


class NonFiniteObjectiveError(ValueError):
    """Objective returned inf/nan; carries the offending argument."""

    def __init__(self, argument):
        self.argument = argument
        super().__init__(f"objective is not finite at {argument}")


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"require lo < hi, got [{self.lo}, {self.hi}]")


@dataclass
class OptResult:
    """Best argument found (a float, or an (x, y) pair in 2-D), its objective
    value, and the number of objective evaluations spent."""

    argument: object
    value: float
    evaluations: int


class _Tracker:
    """Evaluates the objective with endpoint nudging, counts calls, and keeps
    the running best with smallest-argument tie-breaking."""

    def __init__(self, f, iv: Interval):
        self.f = f
        self.lo = iv.lo
        self.hi = iv.hi
        self.count = 0
        self.best_x = None
        self.best_val = math.inf

    def __call__(self, x: float) -> float:
        x_eval = min(max(x, self.lo + ENDPOINT_NUDGE), self.hi - ENDPOINT_NUDGE)
        val = self.f(x_eval)
        self.count += 1
        if not math.isfinite(val):
            raise NonFiniteObjectiveError(x_eval)
        if val < self.best_val or (val == self.best_val and x < self.best_x):
            self.best_val = val
            self.best_x = x
        return val


def _golden_refine(tracker: _Tracker, lo: float, hi: float) -> None:
    c = hi - GOLDEN * (hi - lo)
    d = lo + GOLDEN * (hi - lo)
    fc = tracker(c)
    fd = tracker(d)
    while hi - lo > BRACKET_TOL:
        if fc <= fd:
            hi, d, fd = d, c, fc
            c = hi - GOLDEN * (hi - lo)
            fc = tracker(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + GOLDEN * (hi - lo)
            fd = tracker(d)


def minimize_scalar(f, iv: Interval, grid: int = SCALAR_GRID, f_vec=None) -> OptResult:
    """Grid scan followed by golden-section refinement around the best grid
    point.  Never returns a value worse than the best grid value.

    `f_vec`, when given, must evaluate `f` on an ndarray of arguments; it is
    used only for the grid stage and must agree with `f` pointwise."""
    import numpy as np

    tracker = _Tracker(f, iv)
    step = (iv.hi - iv.lo) / (grid - 1)
    if f_vec is not None:
        xs = iv.lo + step * np.arange(grid)
        xs_eval = np.clip(xs, iv.lo + ENDPOINT_NUDGE, iv.hi - ENDPOINT_NUDGE)
        vals = np.asarray(f_vec(xs_eval), dtype=float)
        tracker.count += grid
        if not np.all(np.isfinite(vals)):
            raise NonFiniteObjectiveError(float(xs_eval[np.argmax(~np.isfinite(vals))]))
        best_i = int(np.argmin(vals))  # first minimum: smallest-argument tie-break
        tracker.best_val = float(vals[best_i])
        tracker.best_x = float(xs[best_i])
    else:
        best_i = 0
        best_val = math.inf
        for i in range(grid):
            x = iv.lo + i * step
            val = tracker(x)
            if val < best_val:
                best_val = val
                best_i = i
    lo = iv.lo + max(best_i - 1, 0) * step
    hi = iv.lo + min(best_i + 1, grid - 1) * step
    _golden_refine(tracker, lo, hi)
    return OptResult(tracker.best_x, tracker.best_val, tracker.count)


def maximize_scalar(f, iv: Interval, grid: int = SCALAR_GRID, f_vec=None) -> OptResult:
    neg_vec = None if f_vec is None else (lambda xs: -f_vec(xs))
    res = minimize_scalar(lambda x: -f(x), iv, grid, f_vec=neg_vec)
    res.value = -res.value
    return res


def bisect_root(f, iv: Interval) -> float:
    """Root of f in iv by bisection, to absolute argument tolerance 1e-12.
    Requires a sign change across the interval."""
    lo, hi = iv.lo, iv.hi
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise ValueError(f"no sign change on [{lo}, {hi}]: f={flo}, {fhi}")
    while hi - lo > ROOT_TOL:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def maximize_2d(f, iv1: Interval, iv2: Interval, grid: int = GRID_2D, f_vec=None) -> OptResult:
    """201x201 grid scan, then three alternating coordinate-wise golden-section
    passes from the best cell.

    `f_vec`, when given, must evaluate `f` on broadcastable ndarrays and is
    used only for the grid stage."""
    import numpy as np

    step1 = (iv1.hi - iv1.lo) / (grid - 1)
    step2 = (iv2.hi - iv2.lo) / (grid - 1)
    evals = 0
    best = (-math.inf, iv1.lo, iv2.lo)

    def g(u, v):
        nonlocal evals
        u = min(max(u, iv1.lo + ENDPOINT_NUDGE), iv1.hi - ENDPOINT_NUDGE)
        v = min(max(v, iv2.lo + ENDPOINT_NUDGE), iv2.hi - ENDPOINT_NUDGE)
        val = f(u, v)
        evals += 1
        if not math.isfinite(val):
            raise NonFiniteObjectiveError((u, v))
        return val

    if f_vec is not None:
        us = iv1.lo + step1 * np.arange(grid)
        vs = iv2.lo + step2 * np.arange(grid)
        us_eval = np.clip(us, iv1.lo + ENDPOINT_NUDGE, iv1.hi - ENDPOINT_NUDGE)
        vs_eval = np.clip(vs, iv2.lo + ENDPOINT_NUDGE, iv2.hi - ENDPOINT_NUDGE)
        vals = np.asarray(f_vec(us_eval[:, None], vs_eval[None, :]), dtype=float)
        evals += grid * grid
        if not np.all(np.isfinite(vals)):
            raise NonFiniteObjectiveError("grid")
        # np.argmax takes the first maximum in row-major order, which matches
        # the smaller-(u, v)-wins tie-break of the scalar scan
        flat = int(np.argmax(vals))
        i, j = divmod(flat, grid)
        best = (float(vals[i, j]), float(us[i]), float(vs[j]))
    else:
        for i in range(grid):
            u = iv1.lo + i * step1
            for j in range(grid):
                v = iv2.lo + j * step2
                val = g(u, v)
                # tie-break: smaller (u, v) wins, which the scan order guarantees
                if val > best[0]:
                    best = (val, u, v)

    _, bu, bv = best
    for _ in range(3):
        r1 = minimize_scalar(
            lambda u: -g(u, bv),
            Interval(max(iv1.lo, bu - step1), min(iv1.hi, bu + step1)),
            grid=3,
        )
        if -r1.value > best[0]:
            best = (-r1.value, r1.argument, bv)
            bu = r1.argument
        r2 = minimize_scalar(
            lambda v: -g(bu, v),
            Interval(max(iv2.lo, bv - step2), min(iv2.hi, bv + step2)),
            grid=3,
        )
        if -r2.value > best[0]:
            best = (-r2.value, bu, r2.argument)
            bv = r2.argument

    return OptResult((best[1], best[2]), best[0], evals)
