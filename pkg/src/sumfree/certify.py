"""Mechanical re-derivation of the measure-deficiency bound delta = 1/114.

The upper-bound proof for 3-sum-free sets runs by contradiction: assume
measure x = 1/2 - delta, derive inf(A) <= 4*delta and a budget for how
much of the top interval (2/3, 1] can be missing, split the rest of the
set into three blocks, and close three case branches, each of the form

    x  <=  constant + coefficient * delta.

Each branch contradicts x = 1/2 - delta exactly below the delta solving
constant + coefficient*delta = 1/2 - delta, so the proof certifies every
delta below the *minimum* of the three branch suprema.  This module
stores the three (constant, coefficient) pairs as data, solves each
branch exactly, and re-checks the supporting inequality chain at the
substitution points the argument actually uses.

The sumset growth inequality |A+A| >= min(3|A|, |A| + diam(A)) enters the
derivation as an external fact; ``sumset_bound_harness`` stress-tests it
exactly on seeded random interval unions (any violation would mean a bug
in the interval algebra, not new mathematics).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .intervals import IntervalUnion

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class BranchBound:
    """One contradiction branch: x <= constant + delta_coeff * delta."""

    name: str
    description: str
    constant: Fraction
    delta_coeff: Fraction

    @property
    def delta_sup(self) -> Fraction:
        """Exact delta where the branch bound meets x = 1/2 - delta."""
        return (HALF - self.constant) / (self.delta_coeff + 1)

    def bound_at(self, delta: Fraction) -> Fraction:
        return self.constant + self.delta_coeff * delta


@dataclass(frozen=True)
class ChainStep:
    name: str
    lhs: Fraction
    rhs: Fraction
    ok: bool
    note: str = ""


@dataclass(frozen=True)
class Certificate:
    branches: tuple[BranchBound, ...]
    delta_star: Fraction
    steps: tuple[ChainStep, ...]

    def all_steps_ok(self) -> bool:
        return all(s.ok for s in self.steps)


# Branch totals, as affine functions of delta:
#   empty middle block:  (2d/3 + 1/9) + 1/3 + 2d          = 4/9 + 8d/3
#   wide gap c - b > 1/3:  4/9 + 2d
#   narrow gap c - b <= 1/3: (2d/3 + 1/9) + 8d/3 + 1/3 + 2d = 4/9 + 16d/3
BRANCHES = (
    BranchBound("middle_block_empty",
                "second block empty: x <= low block + top third + slack",
                Fraction(4, 9), Fraction(8, 3)),
    BranchBound("wide_gap",
                "gap between blocks exceeds 1/3: x <= 4/9 + 2*delta",
                Fraction(4, 9), Fraction(2)),
    BranchBound("narrow_gap",
                "sum windows overlap and swallow the middle block: "
                "x <= 4/9 + 16*delta/3",
                Fraction(4, 9), Fraction(16, 3)),
)


def sumset_case_bounds(set_inf: Fraction) -> tuple[Fraction, Fraction]:
    """The two sumset-driven measure bounds: 1/2 - inf/3 and 1/2 - inf/4.

    At least one of the two applies (they come from the two cases of
    min(3x, x + 1 - inf)), so only their maximum is binding.
    """
    return HALF - set_inf / 3, HALF - set_inf / 4


def top_slice_bounds(set_inf: Fraction, top_gap: Fraction) -> tuple[Fraction, Fraction]:
    """Measure bounds refined by a top slice of measure top_gap missing.

    A gap of measure g in (2/3, 1] sharpens the two case bounds to
    1/2 - inf/3 - g/2 and 1/2 - inf/4 - 3*g/4; for g > 2*delta either one
    already forces x < 1/2 - delta.
    """
    b1, b2 = sumset_case_bounds(set_inf)
    return b1 - top_gap / 2, b2 - 3 * top_gap / 4


def check_chain(delta: Fraction, set_inf: Fraction,
                top_gap: Fraction = Fraction(0)) -> tuple[ChainStep, ...]:
    """Evaluate the supporting inequalities at measure x = 1/2 - delta.

    ``set_inf`` is the infimum of the candidate set, ``top_gap`` the
    measure missing from its top third (2/3, 1].  Each step's ``ok``
    means "no contradiction fires at this point"; a False anywhere shows
    the assumed parameters cannot coexist.
    """
    delta = Fraction(delta)
    set_inf = Fraction(set_inf)
    top_gap = Fraction(top_gap)
    if delta < 0 or set_inf < 0 or top_gap < 0:
        raise ValueError("parameters must be nonnegative")
    x = HALF - delta
    b1, b2 = sumset_case_bounds(set_inf)
    c1, c2 = top_slice_bounds(set_inf, top_gap)
    low_block = set_inf / 6 + Fraction(1, 9)
    steps = (
        ChainStep("scaled_halving", x, HALF, x <= HALF,
                  "any 3-sum-free subset of [0, w] has measure <= w/2 (w = 1)"),
        ChainStep("sumset_cases", x, max(b1, b2), x <= max(b1, b2),
                  f"case bounds 1/2 - inf/3 = {b1} and 1/2 - inf/4 = {b2}; "
                  "one of the two always applies"),
        ChainStep("inf_bound", set_inf, 4 * delta, set_inf <= 4 * delta,
                  "x = 1/2 - delta in the weaker case bound caps the infimum "
                  "at 4*delta"),
        ChainStep("top_slice_budget", top_gap, 2 * delta, top_gap <= 2 * delta,
                  f"refined case bounds {c1} and {c2}; above the budget "
                  "either one forces x < 1/2 - delta"),
        ChainStep("low_block_bound", low_block, 2 * delta / 3 + Fraction(1, 9),
                  low_block <= 2 * delta / 3 + Fraction(1, 9),
                  "block in [inf, inf/3 + 2/9] is halved, then inf <= 4*delta "
                  "applied"),
    )
    return steps


def derive_delta() -> Certificate:
    """Solve each branch exactly and take the minimum supremum."""
    delta_star = min(b.delta_sup for b in BRANCHES)
    steps = check_chain(delta_star, 4 * delta_star, 2 * delta_star)
    return Certificate(branches=BRANCHES, delta_star=delta_star, steps=steps)


@dataclass(frozen=True)
class HarnessReport:
    trials: int
    max_intervals: int
    seed: int
    violations: int
    min_slack: Fraction
    min_slack_example: IntervalUnion
    first_violation: IntervalUnion | None = None

    def passed(self) -> bool:
        return self.violations == 0


def random_union(rng: random.Random, max_intervals: int,
                 max_denominator: int = 64) -> IntervalUnion:
    """Seeded random union of up to max_intervals intervals in [0, 1]."""
    while True:
        m = rng.randint(1, max_intervals)
        cuts = sorted(
            Fraction(rng.randint(0, d), d)
            for d in (rng.randint(1, max_denominator) for _ in range(2 * m))
        )
        u = IntervalUnion.from_pairs(list(zip(cuts[0::2], cuts[1::2])))
        if not u.is_empty():
            return u


def sumset_bound_harness(trials: int = 10_000, max_intervals: int = 6,
                        seed: int = 0) -> HarnessReport:
    """Exact check of |A+A| >= min(3|A|, |A| + diam(A)) on random unions."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    min_slack: Fraction | None = None
    min_example: IntervalUnion | None = None
    violations = 0
    first_violation = None
    for _ in range(trials):
        u = random_union(rng, max_intervals)
        measure = u.measure()
        _, _, diam = u.extent()
        sum_measure = u.minkowski_sum(u).measure()
        slack = sum_measure - min(3 * measure, measure + diam)
        if slack < 0:
            violations += 1
            if first_violation is None:
                first_violation = u
        if min_slack is None or slack < min_slack:
            min_slack = slack
            min_example = u
    return HarnessReport(trials=trials, max_intervals=max_intervals, seed=seed,
                         violations=violations, min_slack=min_slack,
                         min_slack_example=min_example,
                         first_violation=first_violation)
