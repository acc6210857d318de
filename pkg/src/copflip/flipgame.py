"""k-flips, neighbourhood diversity, the flip-width game and the cop lift.

Flip game rules: G_0 = G and the runner picks x_0.  In round i >= 1 the
flipper announces a k-flip G_i of G, then the runner moves along a path of
length <= r in the *previous* graph G_{i-1}.  The flipper wins as soon as
the runner stands on a vertex isolated in the current graph (round 0
included).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional

from .graph import Graph, iter_bits, members, subsets_up_to
from .ordering import VertexOrder, order_cost_scol
from .strategy import StrategyError, next_cop_positions

KFLIP_MAX_N = 6
KFLIP_MAX_K = 3
FLIPWIDTH_MAX_N = 5
FLIPWIDTH_MAX_K = 2
LIFT_MAX_N = 8


class FlipError(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    blocks: tuple[int, ...]

    def validate(self, n: int) -> None:
        seen = 0
        for b in self.blocks:
            if not b:
                raise FlipError("empty block in partition")
            if b & seen:
                raise FlipError("partition blocks overlap")
            seen |= b
        if seen != (1 << n) - 1:
            raise FlipError("partition does not cover every vertex")

    def __len__(self) -> int:
        return len(self.blocks)


@dataclass(frozen=True)
class FlipSpec:
    """A partition plus unordered block pairs ``(i, j)``, ``i <= j``, to invert."""

    partition: Partition
    pairs: frozenset[tuple[int, int]]

    @classmethod
    def build(cls, blocks: Iterable[int], pairs: Iterable[tuple[int, int]]) -> "FlipSpec":
        return cls(Partition(tuple(blocks)), frozenset((min(a, b), max(a, b)) for a, b in pairs))

    @property
    def width(self) -> int:
        return len(self.partition)

    def describe(self) -> dict:
        return {
            "blocks": [members(b) for b in self.partition.blocks],
            "pairs": sorted(list(p) for p in self.pairs),
        }


def apply_flip(g: Graph, spec: FlipSpec) -> Graph:
    spec.partition.validate(g.n)
    blocks = spec.partition.blocks
    adj = list(g.adj)
    for i, j in spec.pairs:
        if not 0 <= i <= j < len(blocks):
            raise FlipError(f"pair ({i}, {j}) does not name two blocks")
        a, b = blocks[i], blocks[j]
        for u in iter_bits(a):
            adj[u] ^= b & ~(1 << u)
        if i != j:
            for u in iter_bits(b):
                adj[u] ^= a
    return Graph(g.n, tuple(adj))


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def set_partitions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Partitions of ``range(n)`` into at most ``k`` blocks (restricted growth)."""
    if n == 0:
        yield ()
        return
    labels = [0] * n

    def rec(i: int, used: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            blocks = [0] * used
            for v, lab in enumerate(labels):
                blocks[lab] |= 1 << v
            yield tuple(blocks)
            return
        for lab in range(min(used + 1, k)):
            labels[i] = lab
            yield from rec(i + 1, max(used, lab + 1))

    labels[0] = 0
    yield from rec(1, 1)


def kflip_witnesses(g: Graph, k: int) -> dict[Graph, FlipSpec]:
    """Every distinct k-flip of ``g`` with the first spec that produces it."""
    if g.n > KFLIP_MAX_N or k > KFLIP_MAX_K:
        raise FlipError(f"k-flip enumeration is limited to n <= {KFLIP_MAX_N}, k <= {KFLIP_MAX_K}")
    if k < 1:
        raise FlipError("k must be >= 1")
    out: dict[Graph, FlipSpec] = {}
    for blocks in set_partitions(g.n, k):
        all_pairs = [(i, j) for i in range(len(blocks)) for j in range(i, len(blocks))]
        for size in range(len(all_pairs) + 1):
            for chosen in combinations(all_pairs, size):
                spec = FlipSpec(Partition(blocks), frozenset(chosen))
                out.setdefault(apply_flip(g, spec), spec)
    return out


def enumerate_kflips(g: Graph, k: int) -> frozenset[Graph]:
    return frozenset(kflip_witnesses(g, k))


# ---------------------------------------------------------------------------
# exact flip-width
# ---------------------------------------------------------------------------

@dataclass
class FlipDecision:
    flipper_wins: bool
    certificate: dict[tuple[Graph, int], tuple[Graph, FlipSpec]]
    states_explored: int


def flipwidth_decide(g: Graph, r: int, k: int) -> FlipDecision:
    """Attractor over states (current graph, runner) for the flipper.

    From (H, x) the runner may reach any vertex of the closed r-ball of x in
    H; the flipper wins there if some k-flip H' isolates each such vertex or
    leads to a state already won.  Only the ball matters, so the sweep runs
    over distinct ball masks.
    """
    if r < 1 or k < 1:
        raise FlipError("r and k must be >= 1")
    if g.n > FLIPWIDTH_MAX_N or k > FLIPWIDTH_MAX_K:
        raise FlipError(f"exact flip-width is limited to n <= {FLIPWIDTH_MAX_N}, k <= {FLIPWIDTH_MAX_K}")
    n = g.n
    if n == 0:
        return FlipDecision(True, {}, 0)
    witnesses = kflip_witnesses(g, k)
    graphs = list(witnesses)
    if g not in witnesses:  # pragma: no cover - the empty pair set reproduces g
        graphs.append(g)
    iso = {h: h.isolated() for h in graphs}
    balls = {h: [h.ball(x, r) for x in range(n)] for h in graphs}
    won = {h: 0 for h in graphs}
    good_ball: dict[int, Graph] = {}
    certificate: dict[tuple[Graph, int], tuple[Graph, FlipSpec]] = {}
    pending = [(h, x) for h in graphs for x in range(n) if not iso[h] >> x & 1]
    while True:
        progress = False
        still = []
        failed: set[int] = set()
        for h, x in pending:
            b = balls[h][x]
            target = good_ball.get(b)
            if target is None and b not in failed:
                for h2 in graphs:
                    if not b & ~(iso[h2] | won[h2]):
                        target = good_ball[b] = h2
                        break
            if target is None:
                failed.add(b)
                still.append((h, x))
                continue
            won[h] |= 1 << x
            certificate[(h, x)] = (target, witnesses.get(target))
            progress = True
        pending = still
        if not progress or not pending:
            break
    flipper_wins = not (g.full & ~(iso[g] | won[g]))
    return FlipDecision(flipper_wins, certificate, len(graphs) * n)


def flipwidth_exact(g: Graph, r: int, max_k: int = FLIPWIDTH_MAX_K) -> Optional[int]:
    """Least k <= max_k for which the flipper wins, or None if none does."""
    if g.n == 0:
        return 0
    for k in range(1, max_k + 1):
        if flipwidth_decide(g, r, k).flipper_wins:
            return k
    return None


# ---------------------------------------------------------------------------
# neighbourhood diversity and the isolating flip
# ---------------------------------------------------------------------------

def neighbourhood_diversity(g: Graph, s: int) -> int:
    """Number of distinct traces ``N(v) & s`` over ``v`` outside ``s``."""
    return len({g.adj[v] & s for v in iter_bits(g.full & ~s)})


def pi_k(g: Graph, k: int) -> int:
    """Largest neighbourhood diversity over sets of at most ``k`` vertices."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if g.n > 16 and k > 3:
        raise ValueError("pi_k enumeration is limited to n <= 16 or k <= 3")
    return max(neighbourhood_diversity(g, s) for s in subsets_up_to(g.n, k))


def isolating_flip(g: Graph, s: int) -> FlipSpec:
    """Flip that isolates ``s`` and leaves ``G - s`` untouched.

    Blocks: each vertex of ``s`` alone, then the outside vertices grouped by
    their trace on ``s``.  Each singleton is flipped with every block that
    is complete to it.
    """
    if not s:
        raise FlipError("cannot build an isolating flip for an empty set")
    if s & ~g.full:
        raise FlipError("set is not a subset of V(G)")
    blocks = [1 << v for v in iter_bits(s)]
    classes: dict[int, int] = {}
    for v in iter_bits(g.full & ~s):
        trace = g.adj[v] & s
        classes[trace] = classes.get(trace, 0) | 1 << v
    blocks.extend(sorted(classes.values(), key=lambda b: b & -b))
    pairs = set()
    for i, v in enumerate(iter_bits(s)):
        nb = g.adj[v]
        for j, block in enumerate(blocks):
            if j != i and block & ~nb == 0:
                pairs.add((min(i, j), max(i, j)))
    return FlipSpec(Partition(tuple(blocks)), frozenset(pairs))


# ---------------------------------------------------------------------------
# lifting the order-guided cop strategy
# ---------------------------------------------------------------------------

@dataclass
class LiftReport:
    ok: bool
    max_width: int
    width_bound: int      # max over announced cop sets of diversity + size
    max_cops: int
    max_rounds: int
    problems: list[str]


def lift_cop_strategy(g: Graph, order: VertexOrder, r: int, literal: bool = False) -> LiftReport:
    """Flipper strategy: each round, isolate the cop set of the order-guided strategy.

    The flip game starts with no flip in force, so flip round 1 isolates
    ``{v_0}`` (the strategy's opening cop) and the runner's landing spot
    plays the role of x_0; flip round i + 1 then isolates C_i.  Every runner
    branch is explored.
    """
    n = g.n
    if n > LIFT_MAX_N:
        raise FlipError(f"lift verification is limited to n <= {LIFT_MAX_N}")
    if n == 0:
        return LiftReport(True, 0, 0, 0, 0, [])
    problems: list[str] = []
    flips: dict[int, Graph] = {}
    widths: list[int] = []
    bounds: list[int] = []
    max_cops = 1

    def isolated_graph(c: int) -> Graph:
        h = flips.get(c)
        if h is None:
            # no cops at all: announce G itself, one block and no pairs
            spec = isolating_flip(g, c) if c else FlipSpec(Partition((g.full,)), frozenset())
            h = flips[c] = apply_flip(g, spec)
            widths.append(spec.width)
            bounds.append(neighbourhood_diversity(g, c) + c.bit_count())
        return h

    memo: dict[tuple[int, int, int], int] = {}

    def explore(i: int, x: int, c: int) -> int:
        """Runner at x after strategy round i with C_i = c in force; worst end round or -1."""
        nonlocal max_cops
        key = (i, x, c)
        if key in memo:
            return memo[key]
        try:
            c_next = next_cop_positions(g, order, i + 1, x, r, literal)
        except StrategyError as exc:
            problems.append(str(exc))
            memo[key] = -1
            return -1
        max_cops = max(max_cops, c_next.bit_count())
        here = isolated_graph(c)
        nxt = isolated_graph(c_next)
        iso = nxt.isolated()
        worst = i + 2
        for y in iter_bits(here.ball(x, r)):
            if iso >> y & 1:
                continue
            sub = explore(i + 1, y, c_next)
            if sub < 0:
                worst = -1
                break
            worst = max(worst, sub)
        memo[key] = worst
        return worst

    c0 = 1 << order[0]
    first = isolated_graph(c0)
    worst_round = 0
    iso_g = g.isolated()
    for start in range(n):
        if iso_g >> start & 1:
            continue
        iso0 = first.isolated()
        for x0 in iter_bits(g.ball(start, r)):
            if iso0 >> x0 & 1:
                worst_round = max(worst_round, 1)
                continue
            w = explore(0, x0, c0)
            if w < 0:
                worst_round = -1
                break
            worst_round = max(worst_round, w)
        if worst_round < 0:
            break
    ok = worst_round >= 0 and worst_round <= n and not problems
    return LiftReport(ok, max(widths), max(bounds), max_cops, worst_round, problems)


def lift_width_bound(g: Graph, order: VertexOrder, r: int) -> int:
    """``pi_k(G, k) + k`` with k the order's strong cost at radius 4r."""
    k = order_cost_scol(g, order, 4 * r)
    return pi_k(g, k) + k
