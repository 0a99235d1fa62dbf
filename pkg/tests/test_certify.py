import random
from fractions import Fraction

import pytest

from sumfree.certify import (
    BRANCHES,
    check_chain,
    derive_delta,
    random_union,
    sumset_bound_harness,
    sumset_case_bounds,
    top_slice_bounds,
)
from sumfree.intervals import IntervalUnion

F = Fraction


def test_branch_suprema():
    by_name = {b.name: b for b in BRANCHES}
    assert by_name["middle_block_empty"].delta_sup == F(1, 66)
    assert by_name["wide_gap"].delta_sup == F(1, 54)
    assert by_name["narrow_gap"].delta_sup == F(1, 114)


def test_branch_suprema_solve_their_equations():
    for b in BRANCHES:
        d = b.delta_sup
        assert b.bound_at(d) == F(1, 2) - d  # exact crossing point


def test_branch_totals_decompose_into_block_bounds():
    # each branch total is a sum of named block bounds; both sides are
    # affine in d, so agreement at two points proves the identity
    by_name = {b.name: b for b in BRANCHES}
    top_block = F(1, 3)  # measure of the top third (2/3, 1]
    for d in (F(0), F(1)):
        low_block = 2 * d / 3 + F(1, 9)  # halved block below inf/3 + 2/9 at inf = 4d
        discard = 2 * d                  # the two slices removed up front
        middle_cap = 8 * d / 3           # middle block swallowed by the sum window
        assert by_name["middle_block_empty"].bound_at(d) == low_block + top_block + discard
        assert by_name["narrow_gap"].bound_at(d) == (
            low_block + middle_cap + top_block + discard)
        # wide gap: the two lower blocks jointly fit in 1/9 regardless of d
        assert by_name["wide_gap"].bound_at(d) == F(1, 9) + top_block + discard


def test_delta_star_is_the_strict_minimum():
    cert = derive_delta()
    assert cert.delta_star == F(1, 114)
    others = sorted(b.delta_sup for b in cert.branches)
    assert others == [F(1, 114), F(1, 66), F(1, 54)]
    assert others[0] < others[1] < others[2]


def test_chain_clean_at_the_boundary_point():
    steps = check_chain(F(1, 114), F(4, 114), F(2, 114))
    assert all(s.ok for s in steps)
    cert = derive_delta()
    assert cert.all_steps_ok()


def test_chain_at_zero_reduces_to_half():
    steps = {s.name: s for s in check_chain(F(0), F(0), F(0))}
    assert steps["scaled_halving"].lhs == F(1, 2)
    assert steps["scaled_halving"].rhs == F(1, 2)
    assert steps["sumset_cases"].rhs == F(1, 2)
    assert all(s.ok for s in steps.values())


def test_chain_flags_impossible_parameters():
    # inf(A) above 4*delta contradicts the sumset bounds
    steps = {s.name: s for s in check_chain(F(1, 114), F(5, 114))}
    assert not steps["inf_bound"].ok
    assert not steps["sumset_cases"].ok
    # missing more than the top-slice budget
    steps = {s.name: s for s in check_chain(F(1, 114), F(0), F(3, 114))}
    assert not steps["top_slice_budget"].ok


def test_epsilon_correction_terms():
    d = F(1, 114)
    c1, c2 = top_slice_bounds(F(0), 2 * d)
    assert c1 == F(1, 2) - d            # first case: exactly the target bound
    assert c2 == F(1, 2) - 3 * d / 2    # second case lands strictly below
    assert c2 <= F(1, 2) - d
    b1, b2 = sumset_case_bounds(F(0))
    assert b1 == b2 == F(1, 2)


def test_overlap_branch_contradicts_any_smaller_delta():
    overlap = next(b for b in BRANCHES if b.name == "narrow_gap")
    for d in (F(0), F(1, 1000), F(1, 200), F(1, 115)):
        assert overlap.bound_at(d) < F(1, 2) - d
    assert overlap.bound_at(F(1, 114)) == F(1, 2) - F(1, 114)


def test_check_chain_rejects_negative_parameters():
    with pytest.raises(ValueError):
        check_chain(F(-1, 10), F(0))


def test_tight_sumset_examples():
    a = IntervalUnion.from_pairs([(F(0), F(1, 4)), (F(3, 4), F(1))])
    s = a.minkowski_sum(a)
    assert s.pairs() == [(F(0), F(1, 2)), (F(3, 4), F(5, 4)), (F(3, 2), F(2))]
    assert s.measure() == F(3, 2)
    assert min(3 * a.measure(), a.measure() + a.extent()[2]) == F(3, 2)

    whole = IntervalUnion.from_pairs([(F(0), F(1))])
    assert whole.minkowski_sum(whole).measure() == 2
    assert min(3 * whole.measure(), whole.measure() + whole.extent()[2]) == 2


def test_harness_small_run_has_no_violations():
    report = sumset_bound_harness(trials=400, max_intervals=6, seed=42)
    assert report.passed()
    assert report.violations == 0
    assert report.min_slack >= 0


def test_harness_is_reproducible():
    a = sumset_bound_harness(trials=100, max_intervals=4, seed=7)
    b = sumset_bound_harness(trials=100, max_intervals=4, seed=7)
    assert a == b


def test_harness_rejects_bad_trials():
    with pytest.raises(ValueError):
        sumset_bound_harness(trials=0)


def test_random_union_is_seeded_and_nonempty():
    rng = random.Random(3)
    for _ in range(50):
        u = random_union(rng, 5)
        assert not u.is_empty()
        lo, hi, _ = u.extent()
        assert 0 <= lo < hi <= 1
