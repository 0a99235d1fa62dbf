"""Global maximization of the measure of a k-sum-free union of intervals.

A candidate set is a configuration of m open intervals in [0, 1] given by
an ordered endpoint chain l1 <= r1 <= l2 <= ... <= lm <= rm.  The set is
k-sum-free exactly when, for every component pair (i, j) and every target
component t, the open sum window (l_i+l_j, r_i+r_j) stays off k*(l_t, r_t):
entirely left (r_i + r_j <= k*l_t) or entirely right (l_i + l_j >= k*r_t).
Each such either/or is a disjunctive constraint, linear once a side is
chosen, so the problem is solved by branch-and-bound over exact LP
relaxations: solve the LP with the resolved rows only, and if the optimal
configuration still has a positively overlapping unresolved window, branch
it LEFT/RIGHT; otherwise the vertex is feasible and fathoms the node.

The two-sided split covers every configuration whose intervals all have
positive length (for such, non-overlap really is left-or-right), so the
search runs once per interval count m' = 1..m and takes the best;
incumbents from small m' prune the larger trees.  Identical resolved sets
reached along different branch orders are memoized away.

With ``all_optima`` the search additionally enumerates every vertex of
each fathomed node's optimal face (zero-reduced-cost pivots), proving
uniqueness claims instead of merely returning one maximizer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .intervals import IntervalUnion, is_k_sum_free
from . import lp as lp_mod
from .lp import Constraint, LinearProgram, LESS_EQ, GREATER_EQ, OPTIMAL

LEFT = "L"
RIGHT = "R"

PROVEN = "proven"
INTERRUPTED = "interrupted"

Choice = tuple[str, int, int, int]  # side, i, j, t


@dataclass(frozen=True)
class Configuration:
    """Endpoint chain of m possibly-degenerate intervals in [0, 1]."""

    m: int
    endpoints: tuple[Fraction, ...]  # l1, r1, l2, r2, ...

    def __post_init__(self):
        if len(self.endpoints) != 2 * self.m:
            raise ValueError("endpoint count != 2m")
        prev = Fraction(0)
        for x in self.endpoints:
            if x < prev:
                raise ValueError("endpoint chain is not nondecreasing")
            prev = x
        if prev > 1:
            raise ValueError("endpoints must lie in [0, 1]")

    def to_union(self) -> IntervalUnion:
        """Drop vanished intervals and canonicalize."""
        e = self.endpoints
        return IntervalUnion.from_pairs([(e[2 * i], e[2 * i + 1]) for i in range(self.m)])


@dataclass(frozen=True)
class DisjunctionPattern:
    """Resolved LEFT/RIGHT choices per (pair, target); absent = unresolved."""

    m: int
    choices: frozenset[Choice] = frozenset()

    def resolve(self, side: str, i: int, j: int, t: int) -> "DisjunctionPattern":
        if side not in (LEFT, RIGHT):
            raise ValueError(f"bad side {side!r}")
        if not (0 <= i <= j < self.m and 0 <= t < self.m):
            raise ValueError(f"bad entry ({i},{j},{t}) for m={self.m}")
        return DisjunctionPattern(self.m, self.choices | {(side, i, j, t)})

    def is_resolved(self, i: int, j: int, t: int) -> bool:
        return (LEFT, i, j, t) in self.choices or (RIGHT, i, j, t) in self.choices


@dataclass(frozen=True)
class SearchResult:
    optimum: Fraction
    witnesses: tuple[IntervalUnion, ...]
    nodes_explored: int
    status: str
    # True when the witness list is provably the complete set of maximizers
    # (all contributing optimal faces were single vertices or single sets).
    witnesses_exact: bool = True
    lp_pivots: int = 0


def mu_formula(k: int) -> Fraction:
    """Closed form for the maximal k-sum-free measure, valid for k >= 4."""
    if k < 4:
        raise ValueError(f"the closed form is only asserted for k >= 4, got {k}")
    main = Fraction(k * (k - 2), k * k - 2)
    corr = Fraction(8 * (k - 2), k * (k * k - 2) * (k**4 - 2 * k * k - 4))
    return main + corr


def build_pattern_lp(m: int, k: int, pattern: DisjunctionPattern) -> LinearProgram:
    """LP relaxation: maximize total length under chain, box and resolved rows.

    Variables are (l1, r1, ..., lm, rm).  All rows are non-strict: touching
    windows are legal under the open-interval convention, so no epsilons.
    """
    if pattern.m != m:
        raise ValueError("pattern built for a different m")
    n = 2 * m
    zero = [Fraction(0)] * n
    objective = []
    for _ in range(m):
        objective += [Fraction(-1), Fraction(1)]
    cons: list[Constraint] = []
    for i in range(m):
        row = zero.copy()
        row[2 * i] = Fraction(1)
        row[2 * i + 1] = Fraction(-1)
        cons.append(Constraint(tuple(row), LESS_EQ, Fraction(0)))  # l_i <= r_i
        if i + 1 < m:
            row = zero.copy()
            row[2 * i + 1] = Fraction(1)
            row[2 * i + 2] = Fraction(-1)
            cons.append(Constraint(tuple(row), LESS_EQ, Fraction(0)))  # r_i <= l_{i+1}
    for side, i, j, t in sorted(pattern.choices):
        row = zero.copy()
        if side == LEFT:  # r_i + r_j <= k l_t
            row[2 * i + 1] += 1
            row[2 * j + 1] += 1
            row[2 * t] -= k
            cons.append(Constraint(tuple(row), LESS_EQ, Fraction(0)))
        else:  # l_i + l_j >= k r_t
            row[2 * i] += 1
            row[2 * j] += 1
            row[2 * t + 1] -= k
            cons.append(Constraint(tuple(row), GREATER_EQ, Fraction(0)))
    bounds = tuple((Fraction(0), Fraction(1)) for _ in range(n))
    return LinearProgram(num_vars=n, objective=tuple(objective),
                         constraints=tuple(cons), bounds=bounds)


def _pick_branch(v: tuple[Fraction, ...], m: int, k: int,
                 choices: frozenset[Choice]) -> Choice | None:
    """Unresolved entry with the largest positive sum-window overlap.

    Overlaps are measured in the (A+A)-scale (a constant k versus the
    z-scale, so argmax is unchanged); ties go to the lowest (i, j, t).
    Entries whose pair or target interval is degenerate at the vertex are
    skipped: they witness nothing about the actual point set.
    """
    best_ov = Fraction(0)
    best = None
    for i in range(m):
        li, ri = v[2 * i], v[2 * i + 1]
        if li == ri:
            continue
        for j in range(i, m):
            lj, rj = v[2 * j], v[2 * j + 1]
            if lj == rj:
                continue
            slo, shi = li + lj, ri + rj
            for t in range(m):
                lt, rt = v[2 * t], v[2 * t + 1]
                if lt == rt:
                    continue
                if (LEFT, i, j, t) in choices or (RIGHT, i, j, t) in choices:
                    continue
                ov = min(shi, k * rt) - max(slo, k * lt)
                if ov > best_ov:
                    best_ov = ov
                    best = (i, j, t)
    return best


@dataclass
class _RunState:
    k: int
    all_optima: bool
    node_limit: int | None
    pivot_rule: str
    best: Fraction = Fraction(0)
    witnesses: set = field(default_factory=set)
    witnesses_exact: bool = True
    nodes: int = 0
    pivots: int = 0
    interrupted: bool = False


def _union_key(u: IntervalUnion):
    return tuple((iv.lo, iv.hi) for iv in u.intervals)


def _record_leaf(state: _RunState, m: int, lp_obj: LinearProgram,
                 value: Fraction, union: IntervalUnion) -> None:
    free, _ = is_k_sum_free(union, state.k)
    if not free:
        raise AssertionError("relaxation vertex fathomed but union is not sum-free")
    if value > state.best:
        state.best = value
        state.witnesses = set()
        state.witnesses_exact = True
    if value < state.best:
        return
    if not state.all_optima:
        state.witnesses.add(_union_key(union))
        return
    verts, complete = lp_mod.enumerate_optimal_vertices(lp_obj, state.pivot_rule)
    leaf_sets = set()
    all_free = True
    for vx in verts:
        u = Configuration(m, vx).to_union()
        ok, _ = is_k_sum_free(u, state.k)
        if ok:
            leaf_sets.add(_union_key(u))
        else:
            all_free = False
    if not complete or not (len(verts) == 1 or (all_free and len(leaf_sets) == 1)):
        state.witnesses_exact = False
    state.witnesses |= leaf_sets


def _explore(m: int, state: _RunState, roots: Iterable[frozenset] | None = None) -> None:
    """Depth-first branch-and-bound over resolved-choice sets for fixed m."""
    stack = [frozenset()] if roots is None else list(roots)
    memo: set[frozenset] = set()
    while stack:
        if state.node_limit is not None and state.nodes >= state.node_limit:
            state.interrupted = True
            return
        choices = stack.pop()
        if choices in memo:
            continue
        memo.add(choices)
        state.nodes += 1
        prog = build_pattern_lp(m, state.k, DisjunctionPattern(m, choices))
        res = lp_mod.solve(prog, pivot_rule=state.pivot_rule)
        state.pivots += res.pivots
        if res.status != OPTIMAL:
            continue
        if res.value < state.best:
            continue
        if res.value == state.best and not state.all_optima:
            # Equal-bound nodes can only tie the incumbent; when ties are
            # not being collected the incumbent witness already realizes it.
            continue
        entry = _pick_branch(res.vertex, m, state.k, choices)
        if entry is None:
            _record_leaf(state, m, prog, res.value,
                         Configuration(m, res.vertex).to_union())
            continue
        i, j, t = entry
        stack.append(choices | {(RIGHT, i, j, t)})
        stack.append(choices | {(LEFT, i, j, t)})


def _frontier(m: int, state: _RunState, want: int) -> list[frozenset]:
    """Breadth-first expansion of the root until >= want open nodes."""
    frontier: list[frozenset] = [frozenset()]
    while len(frontier) < want:
        grown: list[frozenset] = []
        progress = False
        for choices in frontier:
            if state.node_limit is not None and state.nodes >= state.node_limit:
                state.interrupted = True
                return []
            prog = build_pattern_lp(m, state.k, DisjunctionPattern(m, choices))
            res = lp_mod.solve(prog, pivot_rule=state.pivot_rule)
            state.pivots += res.pivots
            state.nodes += 1
            if res.status != OPTIMAL or res.value < state.best:
                continue
            if res.value == state.best and not state.all_optima:
                continue
            entry = _pick_branch(res.vertex, m, state.k, choices)
            if entry is None:
                _record_leaf(state, m, prog, res.value,
                             Configuration(m, res.vertex).to_union())
                continue
            i, j, t = entry
            grown.append(choices | {(LEFT, i, j, t)})
            grown.append(choices | {(RIGHT, i, j, t)})
            progress = True
        frontier = grown
        if not progress or not frontier:
            break
    return frontier


def _worker(args):
    m, k, all_optima, node_limit, pivot_rule, best, roots = args
    state = _RunState(k=k, all_optima=all_optima, node_limit=node_limit,
                      pivot_rule=pivot_rule, best=best)
    _explore(m, state, roots=roots)
    return (state.best, sorted(state.witnesses), state.witnesses_exact,
            state.nodes, state.pivots, state.interrupted)


def maximize_measure(m: int, k: int, *, all_optima: bool = False,
                     parallel: int = 1, node_limit: int | None = None,
                     pivot_rule: str = "bland") -> SearchResult:
    """Exact maximum measure of a k-sum-free union of at most m intervals.

    Runs the disjunctive branch-and-bound once per interval count
    m' = 1..m (each covers all configurations of exactly m' nondegenerate
    intervals; together they cover every union of at most m).  The global
    incumbent is shared across runs, so the cheap small-m' optima prune
    the large trees.  ``parallel`` distributes the largest run's subtrees
    over worker processes; the optimum is schedule-independent, and with
    ``all_optima`` so is the witness list, which is then the complete,
    deduplicated set of maximizers whenever ``witnesses_exact`` is True.
    Without ``all_optima`` the single reported witness may depend on the
    schedule and no completeness is claimed.
    """
    if m < 1 or k < 1:
        raise ValueError("m and k must be positive")
    state = _RunState(k=k, all_optima=all_optima, node_limit=node_limit,
                      pivot_rule=pivot_rule)
    state.witnesses.add(_union_key(IntervalUnion()))  # measure-0 incumbent

    for m_eff in range(1, m + 1):
        if state.interrupted:
            break
        if m_eff == m and parallel > 1 and not state.interrupted:
            _explore_parallel(m_eff, state, parallel)
        else:
            _explore(m_eff, state)

    witnesses = tuple(
        IntervalUnion.from_pairs(key)
        for key in sorted(state.witnesses)
        if state.best == 0 or key  # drop the measure-0 seed once beaten
    )
    # Completeness of the witness list is only established (and only
    # schedule-independent) when ties were collected and every optimal
    # face resolved cleanly.
    exact = all_optima and not state.interrupted and state.witnesses_exact
    return SearchResult(
        optimum=state.best,
        witnesses=witnesses,
        nodes_explored=state.nodes,
        status=INTERRUPTED if state.interrupted else PROVEN,
        witnesses_exact=exact,
        lp_pivots=state.pivots,
    )


def _explore_parallel(m: int, state: _RunState, workers: int) -> None:
    from concurrent.futures import ProcessPoolExecutor

    roots = _frontier(m, state, want=max(4 * workers, 8))
    if state.interrupted or not roots:
        return
    chunks: list[list[frozenset]] = [[] for _ in range(workers)]
    for idx, node in enumerate(sorted(roots, key=sorted)):
        chunks[idx % workers].append(node)
    args = [(m, state.k, state.all_optima, state.node_limit, state.pivot_rule,
             state.best, chunk) for chunk in chunks if chunk]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        outcomes = list(pool.map(_worker, args))
    for best, wit_keys, exact, nodes, pivots, interrupted in outcomes:
        state.nodes += nodes
        state.pivots += pivots
        state.interrupted |= interrupted
        if best > state.best:
            state.best = best
            state.witnesses = set()
            state.witnesses_exact = True
    for best, wit_keys, exact, nodes, pivots, interrupted in outcomes:
        if best == state.best:
            state.witnesses.update(wit_keys)
            state.witnesses_exact &= exact
