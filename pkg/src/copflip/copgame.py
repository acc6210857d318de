"""The radius-r cop-width game and an exact solver for small graphs.

Round semantics (round i >= 1): the cops announce C_i with |C_i| <= k, the
robber runs a path of length <= r from x_{i-1} that avoids every cop that
stays grounded (C_{i-1} & C_i), then the cops land.  Capture iff
x_i in C_i.  Round 0 has no cops and the robber picks x_0.  An infinite
play is a robber win.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Optional

from .graph import Graph, iter_bits, members, reach_avoiding, shortest_path_avoiding, subsets_up_to

COP_MAX_N = 12
COP_MAX_K = 6


class IllegalMoveError(ValueError):
    def __init__(self, round_index: int, message: str):
        super().__init__(f"round {round_index}: {message}")
        self.round_index = round_index


@dataclass(frozen=True)
class CopGameState:
    cops: int
    robber: int

    def __post_init__(self):
        if self.cops >> self.robber & 1:
            raise ValueError("robber stands on a cop; the game is already over")


def robber_moves(g: Graph, x: int, c_prev: int, c_next: int, r: int) -> int:
    """Where the robber may end up while the cops fly from ``c_prev`` to ``c_next``."""
    if c_prev >> x & 1:
        raise ValueError(f"robber at {x} stands on a grounded cop")
    return reach_avoiding(g, x, r, c_prev & c_next)


def _guards(g: Graph, r: int, k: int) -> None:
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    if g.n > COP_MAX_N:
        raise ValueError(f"cop-game solver is limited to n <= {COP_MAX_N}")
    if k > COP_MAX_K:
        raise ValueError(f"cop-game solver is limited to k <= {COP_MAX_K}")


@dataclass
class CopDecision:
    cops_win: bool
    certificate: dict[tuple[int, int], int]
    states_explored: int
    rank: dict[tuple[int, int], int] = field(default_factory=dict)

    def policy(self) -> Callable[[int, int, int], int]:
        cert = self.certificate

        def cop_policy(cops: int, robber: int, round_index: int) -> int:
            return cert[(cops, robber)]

        return cop_policy


def copwidth_decide(g: Graph, r: int, k: int) -> CopDecision:
    """Backward attractor over states (C, x) with x not in C.

    A state joins the attractor once some announcement C' sends every robber
    reply either onto C' or into a state already in the attractor.  States
    added in sweep t only point at states from earlier sweeps or earlier in
    the same sweep, so the certificate is well-founded.
    """
    _guards(g, r, k)
    n = g.n
    if n == 0:
        return CopDecision(True, {}, 0)
    k = min(k, n)
    cop_sets = list(subsets_up_to(n, k))
    reach_cache: dict[tuple[int, int], int] = {}

    def reach(x: int, blocked: int) -> int:
        key = (x, blocked)
        got = reach_cache.get(key)
        if got is None:
            got = reach_cache[key] = reach_avoiding(g, x, r, blocked)
        return got

    won = {c: 0 for c in cop_sets}  # cop set -> mask of robber spots won by cops
    certificate: dict[tuple[int, int], int] = {}
    rank: dict[tuple[int, int], int] = {}
    pending = [(c, x) for c in cop_sets for x in range(n) if not c >> x & 1]
    sweep = 0
    while pending:
        sweep += 1
        still = []
        for c, x in pending:
            for c2 in cop_sets:
                ys = reach(x, c & c2)
                if not ys & ~(c2 | won[c2]):
                    won[c] |= 1 << x
                    certificate[(c, x)] = c2
                    rank[(c, x)] = sweep
                    break
            else:
                still.append((c, x))
        if len(still) == len(pending):
            break
        pending = still
    cops_win = won[0] == g.full
    return CopDecision(cops_win, certificate, len(cop_sets) * n, rank)


def copwidth_exact(g: Graph, r: int) -> int:
    """Least k for which the cops win; k = n always suffices."""
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        if copwidth_decide(g, r, k).cops_win:
            return k
    raise AssertionError("n cops always win")  # pragma: no cover


# ---------------------------------------------------------------------------
# independent oracle
# ---------------------------------------------------------------------------

def _walk_reach(g: Graph, x: int, r: int, blocked: frozenset) -> frozenset:
    # explicit path enumeration, no bitmask BFS
    out = {x}

    def extend(path: list[int]) -> None:
        if len(path) - 1 == r:
            return
        for w in g.neighbors(path[-1]):
            if w in blocked or w in path:
                continue
            out.add(w)
            path.append(w)
            extend(path)
            path.pop()

    extend([x])
    return frozenset(out)


def copwidth_minimax(g: Graph, r: int, k: int) -> bool:
    """Depth-bounded minimax: do the cops capture within (#states + 1) rounds?

    Any capture that is forced at all is forced within that many rounds, so
    this agrees with the attractor; it shares no code with it.
    """
    _guards(g, r, k)
    n = g.n
    if n == 0:
        return True
    cop_sets = [frozenset(c) for size in range(min(k, n) + 1) for c in combinations(range(n), size)]
    depth = len(cop_sets) * n + 1

    @lru_cache(maxsize=None)
    def cops_force(c: frozenset, x: int, d: int) -> bool:
        if d == 0:
            return False
        for c2 in cop_sets:
            ys = _walk_reach(g, x, r, c & c2)
            if all(y in c2 or cops_force(c2, y, d - 1) for y in ys):
                return True
        return False

    return all(cops_force(frozenset(), x, depth) for x in range(n))


# ---------------------------------------------------------------------------
# simulation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GameRound:
    announced: int
    path: tuple[int, ...]
    landed: int


@dataclass
class GameTrace:
    start: Optional[int]
    rounds: list[GameRound]
    captured_at: Optional[int]

    @property
    def outcome(self) -> str:
        return "survived" if self.captured_at is None else f"captured@{self.captured_at}"


CopPolicy = Callable[[int, int, int], int]
"""(grounded cops, robber vertex, round about to be played) -> announced set."""

RobberPolicy = Callable[[int, int, int, int], int]
"""(grounded cops, announced set, robber vertex or -1 at start, legal mask) -> target."""


def simulate(g: Graph, cop_policy: CopPolicy, robber_policy: RobberPolicy, r: int, k: int,
             horizon: int) -> GameTrace:
    """Play up to ``horizon`` rounds; the robber path is a shortest legal one."""
    start = robber_policy(0, 0, -1, g.full)
    if not 0 <= start < g.n:
        raise IllegalMoveError(0, f"robber start {start} is not a vertex")
    trace = GameTrace(start, [], None)
    cops, x = 0, start
    for i in range(1, horizon + 1):
        announced = cop_policy(cops, x, i)
        if announced & ~g.full or announced.bit_count() > k:
            raise IllegalMoveError(i, f"cops announced {members(announced)} with k={k}")
        legal = robber_moves(g, x, cops, announced, r)
        y = robber_policy(cops, announced, x, legal)
        if not legal >> y & 1:
            raise IllegalMoveError(i, f"robber cannot reach {y} from {x}")
        path = shortest_path_avoiding(g, x, y, cops & announced)
        trace.rounds.append(GameRound(announced, path, announced))
        cops, x = announced, y
        if cops >> x & 1:
            trace.captured_at = i
            break
    return trace


def cops_policy_wins(g: Graph, r: int, k: int, cop_policy: CopPolicy) -> tuple[bool, int]:
    """Play a memoryless cop policy against every robber behaviour.

    Returns (every branch captured, worst-case capture round).  A robber
    loop through a repeated state is an escape.
    """
    memo: dict[tuple[int, int], Optional[int]] = {}
    on_stack: set[tuple[int, int]] = set()

    def worst(cops: int, x: int) -> Optional[int]:
        key = (cops, x)
        if key in memo:
            return memo[key]
        if key in on_stack:
            return None
        on_stack.add(key)
        announced = cop_policy(cops, x, 0)
        if announced.bit_count() > k:
            result = None
        else:
            result = 0
            for y in iter_bits(robber_moves(g, x, cops, announced, r)):
                if announced >> y & 1:
                    sub = 1
                else:
                    tail = worst(announced, y)
                    if tail is None:
                        result = None
                        break
                    sub = tail + 1
                result = max(result, sub)
        on_stack.discard(key)
        memo[key] = result
        return result

    rounds = 0
    for x in range(g.n):
        w = worst(0, x)
        if w is None:
            return False, -1
        rounds = max(rounds, w)
    return True, rounds


def all_vertices_policy(g: Graph) -> CopPolicy:
    """Announce every vertex: wins in one round whenever k >= n."""
    full = g.full
    return lambda cops, robber, i: full

