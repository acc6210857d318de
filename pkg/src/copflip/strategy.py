"""The order-guided cop strategy and its invariant checker.

Given an order v_0 < ... < v_{n-1}, round 0 grounds one cop on v_0 and the
robber picks x_0.  In round i >= 1 the cops move to the back-reach set of
the robber's last position x_{i-1} at threshold v_i and radius 2r; the cops
in ``D_i = C_{i-1} & C_i`` stay put while the robber runs.  The strategy
only looks at ``i`` and the robber's last position, and it wins with at
most ``order_cost_scol(G, order, 4r)`` cops.

By default the back-reach set is :func:`reach_M_closed`, whose walks may
pass through v_i itself.  ``literal=True`` uses the strict
:func:`reach_M`; that variant lets the robber slip through v_i while a cop
is still in the air (already on the path 0-1-2 with r = 2) and is kept
for demonstrating exactly that.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .graph import Graph, iter_bits, members, reach_avoiding, shortest_path_avoiding
from .ordering import VertexOrder, order_cost_scol, reach_M, reach_M_closed

STRATEGY_MAX_N = 9

INVARIANTS = ("6", "7", "8", "9", "10")
INVARIANT_NAMES = {
    "6": "v_i <= x_i",
    "7": "short paths from x_{i-1} into V_{i-1} meet D_i",
    "8": "M(v_i, x_i, r) within C_i",
    "9": "P_i misses V_{i-1}",
    "10": "v_i = x_i implies capture",
}


class StrategyError(RuntimeError):
    pass


@dataclass(frozen=True)
class StrategyRound:
    i: int
    v: int
    x: int
    cops: int          # C_i
    stayed: int        # D_i
    visited: int       # V_i
    path: tuple[int, ...]   # P_i, empty in round 0

    @property
    def captured(self) -> bool:
        return bool(self.cops >> self.x & 1)


def _mset(literal: bool):
    return reach_M if literal else reach_M_closed


def next_cop_positions(g: Graph, order: VertexOrder, i: int, x_prev: int, r: int,
                       literal: bool = False) -> int:
    """Cop set for round ``i``; needs ``v_i`` not after ``x_prev``."""
    if not 0 <= i < g.n:
        raise StrategyError(f"round {i} is past the end of the order")
    v = order[i]
    if order.pos[v] > order.pos[x_prev]:
        raise StrategyError(f"round {i}: v_i={v} comes after the robber at {x_prev}")
    return _mset(literal)(g, order, v, x_prev, 2 * r)


def opening_round(order: VertexOrder, x0: int) -> StrategyRound:
    v0 = order[0]
    return StrategyRound(0, v0, x0, 1 << v0, 0, 1 << v0, ())


def advance(g: Graph, order: VertexOrder, r: int, prev: StrategyRound, x: int,
            path: Optional[Sequence[int]] = None, literal: bool = False) -> StrategyRound:
    """Next round of the strategy with the robber ending at ``x``.

    ``path`` defaults to a shortest path avoiding the grounded cops.
    """
    i = prev.i + 1
    cops = next_cop_positions(g, order, i, prev.x, r, literal)
    stayed = prev.cops & cops
    if path is None:
        path = shortest_path_avoiding(g, prev.x, x, stayed)
        if path is None:
            raise StrategyError(f"round {i}: robber cannot reach {x} from {prev.x}")
    return StrategyRound(i, order[i], x, cops, stayed, prev.visited | 1 << order[i], tuple(path))


def play(g: Graph, order: VertexOrder, r: int,
         robber: Callable[[StrategyRound, int, int], int], x0: int,
         literal: bool = False) -> list[StrategyRound]:
    """Play the strategy against ``robber(prev_round, announced C_i, legal mask)``.

    Stops at capture or when the strategy cannot continue.
    """
    trace = [opening_round(order, x0)]
    while not trace[-1].captured:
        prev = trace[-1]
        try:
            cops = next_cop_positions(g, order, prev.i + 1, prev.x, r, literal)
        except StrategyError:
            break
        legal = reach_avoiding(g, prev.x, r, prev.cops & cops)
        trace.append(advance(g, order, r, prev, robber(prev, cops, legal), literal=literal))
    return trace


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------

def _is_path(g: Graph, path: Sequence[int]) -> bool:
    return len(set(path)) == len(path) and all(g.has_edge(a, b) for a, b in zip(path, path[1:]))


def check_round(g: Graph, order: VertexOrder, r: int, prev: Optional[StrategyRound],
                cur: StrategyRound, literal: bool = False) -> list[str]:
    """Invariants (and tuple definitions) violated by ``cur``; ``prev`` is None in round 0."""
    bad = []
    pos = order.pos
    mset = _mset(literal)
    if prev is None:
        v0 = order[0]
        if cur.cops != 1 << v0 or cur.stayed or cur.path or cur.visited != 1 << v0:
            bad.append("tuple")
    else:
        expect = mset(g, order, order[cur.i], prev.x, 2 * r) if pos[order[cur.i]] <= pos[prev.x] else None
        p = cur.path
        if (expect is None or cur.cops != expect or cur.stayed != prev.cops & cur.cops
                or cur.visited != prev.visited | 1 << order[cur.i]
                or not p or p[0] != prev.x or p[-1] != cur.x or len(p) - 1 > r
                or not _is_path(g, p) or any(cur.stayed >> u & 1 for u in p)):
            bad.append("tuple")
        if reach_avoiding(g, prev.x, r, cur.stayed) & prev.visited:
            bad.append("7")
        if any(prev.visited >> u & 1 for u in p):
            bad.append("9")
    six = pos[cur.v] <= pos[cur.x]
    if not six:
        bad.append("6")
    elif mset(g, order, cur.v, cur.x, r) & ~cur.cops:
        bad.append("8")
    if cur.v == cur.x and not cur.captured:
        bad.append("10")
    return [k for k in ("tuple",) + INVARIANTS if k in bad]


@dataclass
class InvariantReport:
    ok: bool
    captured: bool
    first_violation: Optional[tuple[str, int]] = None
    failures: dict[str, list[int]] = field(default_factory=dict)

    def summary(self) -> dict[str, str]:
        return {k: ("fail" if self.failures.get(k) else "pass") for k in INVARIANTS}


def check_invariants(g: Graph, order: VertexOrder, r: int,
                     trace: Sequence[StrategyRound], literal: bool = False) -> InvariantReport:
    failures: dict[str, list[int]] = {}
    first = None
    prev = None
    for cur in trace:
        for inv in check_round(g, order, r, prev, cur, literal):
            failures.setdefault(inv, []).append(cur.i)
            if first is None:
                first = (inv, cur.i)
        prev = cur
    captured = bool(trace) and trace[-1].captured
    return InvariantReport(first is None, captured, first, failures)


# ---------------------------------------------------------------------------
# exhaustive verification
# ---------------------------------------------------------------------------

@dataclass
class StrategyReport:
    ok: bool
    max_cops: int
    max_rounds: int
    bound: int
    invariants: dict[str, str]
    problems: list[str] = field(default_factory=list)


def verify_all_robbers(g: Graph, order: VertexOrder, r: int, literal: bool = False) -> StrategyReport:
    """Run the strategy against every robber and check every round.

    The robber's options in round i depend on (i, x_{i-1}, C_{i-1}), which
    is the memo key.  Each robber target is reached by a shortest legal
    path; invariant (7) is checked against all short paths regardless.
    """
    n = g.n
    if n > STRATEGY_MAX_N:
        raise ValueError(f"exhaustive verification is limited to n <= {STRATEGY_MAX_N}")
    if n == 0:
        return StrategyReport(True, 0, 0, 0, {k: "pass" for k in INVARIANTS})
    bound = order_cost_scol(g, order, 4 * r)
    failures: dict[str, list[int]] = {}
    problems: list[str] = []
    max_cops = 1
    memo: dict[tuple[int, int, int], int] = {}

    def note(bad: list[str], rnd: StrategyRound) -> None:
        for inv in bad:
            failures.setdefault(inv, []).append(rnd.i)

    def explore(prev: StrategyRound) -> int:
        """Worst capture round from a non-captured round; -1 on failure."""
        nonlocal max_cops
        key = (prev.i, prev.x, prev.cops)
        if key in memo:
            return memo[key]
        i = prev.i + 1
        try:
            cops = next_cop_positions(g, order, i, prev.x, r, literal)
        except StrategyError as exc:
            problems.append(str(exc))
            memo[key] = -1
            return -1
        max_cops = max(max_cops, cops.bit_count())
        worst = i
        for y in iter_bits(reach_avoiding(g, prev.x, r, prev.cops & cops)):
            cur = advance(g, order, r, prev, y, literal=literal)
            bad = check_round(g, order, r, prev, cur, literal)
            if bad:
                note(bad, cur)
            if cur.captured:
                continue
            sub = explore(cur)
            if sub < 0:
                worst = -1
                break
            worst = max(worst, sub)
        memo[key] = worst
        return worst

    worst_round = 0
    for x0 in range(n):
        opening = opening_round(order, x0)
        bad = check_round(g, order, r, None, opening, literal)
        if bad:
            note(bad, opening)
        if opening.captured:
            continue
        w = explore(opening)
        if w < 0:
            worst_round = -1
            break
        worst_round = max(worst_round, w)

    ok = worst_round >= 0 and not failures and max_cops <= bound and worst_round <= n - 1
    if max_cops > bound:
        problems.append(f"used {max_cops} cops, order cost is {bound}")
    if worst_round > n - 1:
        problems.append(f"capture took {worst_round} rounds on {n} vertices")
    summary = {k: ("fail" if failures.get(k) else "pass") for k in INVARIANTS}
    if failures.get("tuple"):
        problems.append(f"tuple definitions broken in rounds {sorted(set(failures['tuple']))}")
    return StrategyReport(ok, max_cops, worst_round, bound, summary, problems)


def describe_round(rnd: StrategyRound) -> dict:
    return {
        "i": rnd.i, "v": rnd.v, "x": rnd.x, "C": members(rnd.cops), "D": members(rnd.stayed),
        "V": members(rnd.visited), "P": list(rnd.path), "captured": rnd.captured,
    }
