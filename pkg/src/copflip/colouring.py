"""Strong and weak colouring numbers, with witness orders.

``scol_exact`` is a subset DP over after-sets; ``scol_bruteforce`` is the
permutation oracle it is checked against.  ``wcol_exact`` has no subset
decomposition and runs branch-and-bound over order prefixes.
"""

from __future__ import annotations

from itertools import permutations

from .graph import Graph, iter_bits
from .ordering import VertexOrder, order_cost_scol, reach_below

SCOL_EXACT_MAX_N = 24
BRUTEFORCE_MAX_N = 8
WCOL_EXACT_MAX_N = 8


class SizeGuardError(ValueError):
    """Instance exceeds an exponential solver's size guard."""


def _guard(g: Graph, limit: int, what: str) -> None:
    if g.n > limit:
        raise SizeGuardError(f"{what} is limited to n <= {limit}, got n={g.n}")


def _check_r(r: int) -> None:
    if r < 1:
        raise ValueError("r must be >= 1")


def strong_cost(g: Graph, v: int, after: int, r: int) -> int:
    """|R(v)| when exactly the vertices of ``after`` come after ``v``."""
    return reach_below(g, v, after, r).bit_count()


def scol_exact(g: Graph, r: int) -> tuple[int, VertexOrder]:
    """Exact ``scol_r`` by DP over after-sets.

    f(A) is the best max-cost for ordering the vertices of A as a suffix;
    the first vertex v of A only sees A - {v} after it, so
    f(A) = min_v max(cost(v, A - {v}), f(A - {v})).
    """
    _check_r(r)
    _guard(g, SCOL_EXACT_MAX_N, "scol_exact")
    n = g.n
    if n == 0:
        return 0, VertexOrder.of(())
    size = 1 << n
    f = [0] * size
    for a in range(1, size):
        best = n + 1
        for v in iter_bits(a):
            rest = a ^ (1 << v)
            sub = f[rest]
            if sub >= best:
                continue
            c = strong_cost(g, v, rest, r)
            val = c if c > sub else sub
            if val < best:
                best = val
        f[a] = best
    # reconstruct front-to-back; smallest vertex id among optimal choices
    seq = []
    a = size - 1
    target = f[a]
    while a:
        for v in iter_bits(a):
            rest = a ^ (1 << v)
            if f[rest] <= target and strong_cost(g, v, rest, r) <= target:
                seq.append(v)
                a = rest
                break
    order = VertexOrder.of(seq)
    return target, order


def scol_bruteforce(g: Graph, r: int) -> int:
    """Minimum of ``order_cost_scol`` over all ``n!`` orders."""
    _check_r(r)
    _guard(g, BRUTEFORCE_MAX_N, "scol_bruteforce")
    if g.n == 0:
        return 0
    return min(order_cost_scol(g, VertexOrder.of(p), r) for p in permutations(range(g.n)))


def wcol_exact(g: Graph, r: int) -> tuple[int, VertexOrder]:
    """Exact ``wcol_r`` by branch-and-bound over prefixes.

    Placing ``w`` next fixes exactly which later vertices weakly reach it:
    those within ``r`` steps of ``w`` through still-unplaced vertices.  The
    per-vertex counts only grow, so the running max is an admissible bound.
    """
    _check_r(r)
    _guard(g, WCOL_EXACT_MAX_N, "wcol_exact")
    n = g.n
    if n == 0:
        return 0, VertexOrder.of(())
    adj = g.adj
    best = [n + 1, None]
    counts = [0] * n
    seq: list[int] = []

    def weak_hits(w: int, unplaced: int) -> int:
        seen = frontier = 1 << w
        for _ in range(r):
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= adj[u]
            frontier = nxt & unplaced & ~seen
            if not frontier:
                break
            seen |= frontier
        return seen

    def search(unplaced: int, running: int) -> None:
        if not unplaced:
            if running < best[0]:
                best[0], best[1] = running, tuple(seq)
            return
        for w in iter_bits(unplaced):
            rest = unplaced ^ (1 << w)
            hit = weak_hits(w, rest)
            worst = running
            for v in iter_bits(hit):
                counts[v] += 1
                if counts[v] > worst:
                    worst = counts[v]
            if worst < best[0]:
                seq.append(w)
                search(rest, worst)
                seq.pop()
            for v in iter_bits(hit):
                counts[v] -= 1

    search(g.full, 0)
    return best[0], VertexOrder.of(best[1])


def scol_greedy(g: Graph, r: int) -> tuple[int, VertexOrder]:
    """Heuristic upper bound: fill the order from the back.

    At each step the unplaced vertex with the smallest strong cost against
    the already-placed suffix goes next (ties to the smallest id).  At
    ``r = 1`` this is the min-degree elimination order.
    """
    _check_r(r)
    n = g.n
    placed = 0
    back: list[int] = []
    unplaced = g.full
    while unplaced:
        pick, pick_cost = -1, n + 1
        for v in iter_bits(unplaced):
            c = strong_cost(g, v, placed, r)
            if c < pick_cost:
                pick, pick_cost = v, c
        back.append(pick)
        placed |= 1 << pick
        unplaced ^= 1 << pick
    order = VertexOrder.of(reversed(back))
    return order_cost_scol(g, order, r), order


def degeneracy(g: Graph) -> tuple[int, VertexOrder]:
    """Degeneracy with an order whose back-degrees never exceed it.

    Repeatedly removes a min-degree vertex (smallest id on ties) and puts it
    at the end of the order.
    """
    n = g.n
    deg = [g.degree(v) for v in range(n)]
    alive = g.full
    value = 0
    back = []
    while alive:
        v = min(iter_bits(alive), key=lambda u: (deg[u], u))
        value = max(value, deg[v])
        back.append(v)
        alive ^= 1 << v
        for u in iter_bits(g.adj[v] & alive):
            deg[u] -= 1
    return value, VertexOrder.of(reversed(back))
