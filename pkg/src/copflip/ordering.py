"""Vertex orders and the back-reach sets R, Q and M.

All three sets are defined through paths whose internal vertices sit above
some position threshold.  With a single threshold, a bounded walk can be
shortened to a path on a subset of its vertices, so the searches below are
plain layered BFS over walks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .graph import Graph, iter_bits


@dataclass(frozen=True)
class VertexOrder:
    """Total order ``seq[0] < seq[1] < ...`` with inverse ``pos``."""

    seq: tuple[int, ...]
    pos: tuple[int, ...]

    @classmethod
    def of(cls, seq: Iterable[int]) -> "VertexOrder":
        seq = tuple(seq)
        n = len(seq)
        if sorted(seq) != list(range(n)):
            raise ValueError(f"order {seq} is not a permutation of 0..{n - 1}")
        pos = [0] * n
        for i, v in enumerate(seq):
            pos[v] = i
        return cls(seq, tuple(pos))

    @classmethod
    def identity(cls, n: int) -> "VertexOrder":
        return cls.of(range(n))

    def __len__(self) -> int:
        return len(self.seq)

    def __getitem__(self, i: int) -> int:
        return self.seq[i]

    @cached_property
    def _afters(self) -> tuple[int, ...]:
        out = [0] * len(self.seq)
        m = 0
        for v in reversed(self.seq):
            out[v] = m
            m |= 1 << v
        return tuple(out)

    def after_mask(self, v: int) -> int:
        """Vertices strictly after ``v``."""
        return self._afters[v]

    def prefix_mask(self, i: int) -> int:
        """``{seq[0], ..., seq[i]}``."""
        m = 0
        for u in self.seq[: i + 1]:
            m |= 1 << u
        return m


def parse_order(text: str) -> VertexOrder:
    return VertexOrder.of(int(tok) for tok in text.split())


def serialize_order(order: VertexOrder) -> str:
    return " ".join(map(str, order.seq)) + "\n"


def _check_len(g: Graph, order: VertexOrder) -> None:
    if len(order) != g.n:
        raise ValueError(f"order has {len(order)} vertices but graph has {g.n}")


def walk_endpoints(g: Graph, start: int, inner: int, ends: int, steps: int) -> int:
    """Vertices of ``ends`` reachable from ``start`` by a walk of length <= steps
    whose internal vertices all lie in ``inner`` (``start`` counts at length 0)."""
    adj = g.adj
    found = ends & (1 << start)
    seen = frontier = 1 << start
    for _ in range(steps):
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= adj[u]
        found |= nxt & ends
        frontier = nxt & inner & ~seen
        if not frontier:
            break
        seen |= frontier
    return found


def reach_below(g: Graph, start: int, allowed: int, steps: int) -> int:
    """Endpoints outside ``allowed`` of walks from ``start`` of length <= steps
    whose internal vertices all lie in ``allowed``."""
    return walk_endpoints(g, start, allowed, g.full & ~allowed, steps)


def reach_R(g: Graph, order: VertexOrder, v: int, r: int) -> int:
    """Strong back-reach: internals strictly after ``v``, endpoint not after ``v``."""
    _check_len(g, order)
    return reach_below(g, v, order.after_mask(v), r)


def reach_Q(g: Graph, order: VertexOrder, v: int, r: int) -> int:
    """Weak back-reach: internals strictly after the endpoint ``w``."""
    _check_len(g, order)
    result = 1 << v
    pv = order.pos[v]
    for w in order.seq[:pv]:
        # path w -> v with every vertex past w lying after w
        if _hits(g, w, order.after_mask(w), v, r):
            result |= 1 << w
    return result


def _hits(g: Graph, start: int, allowed: int, target: int, steps: int) -> bool:
    # is ``target`` within ``steps`` of ``start`` through ``allowed`` internals?
    adj = g.adj
    seen = frontier = 1 << start
    for _ in range(steps):
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= adj[u]
        if nxt >> target & 1:
            return True
        frontier = nxt & allowed & ~seen
        if not frontier:
            return False
        seen |= frontier
    return False


def reach_M(g: Graph, order: VertexOrder, vi: int, vj: int, s: int) -> int:
    """Vertices ``w`` not after ``vi`` reachable from ``vj`` by a walk of length
    <= s whose internals are strictly after ``vi``."""
    _check_len(g, order)
    if order.pos[vi] > order.pos[vj]:
        raise ValueError(f"reach_M requires pos({vi}) <= pos({vj})")
    if s < 0:
        raise ValueError("radius must be non-negative")
    return reach_below(g, vj, order.after_mask(vi), s)


def reach_M_closed(g: Graph, order: VertexOrder, vi: int, vj: int, s: int) -> int:
    """Like :func:`reach_M` but internals may also equal ``vi``.

    Equivalently: internals avoid every vertex strictly before ``vi``.  The
    strong-colouring bound on M survives this relaxation (cut the combined
    walk at its last visit to the threshold vertex), and the order-guided
    cop strategy needs it: with the strict version the robber can run
    through ``vi`` while a cop is still flying there.
    """
    _check_len(g, order)
    if order.pos[vi] > order.pos[vj]:
        raise ValueError(f"reach_M_closed requires pos({vi}) <= pos({vj})")
    if s < 0:
        raise ValueError("radius must be non-negative")
    above = order.after_mask(vi)
    return walk_endpoints(g, vj, above | 1 << vi, g.full & ~above, s)


def order_cost_scol(g: Graph, order: VertexOrder, r: int) -> int:
    if r < 1:
        raise ValueError("r must be >= 1")
    return max((reach_R(g, order, v, r).bit_count() for v in range(g.n)), default=0)


def order_cost_wcol(g: Graph, order: VertexOrder, r: int) -> int:
    if r < 1:
        raise ValueError("r must be >= 1")
    return max((reach_Q(g, order, v, r).bit_count() for v in range(g.n)), default=0)
