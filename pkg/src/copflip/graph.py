"""Bitmask graphs, generators, edge-list I/O and bounded reachability.

Vertex sets are plain ``int`` bitmasks (bit ``v`` set iff ``v`` is a member).
Every solver in the package is subset-heavy, so graphs are capped at 64
vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

MAX_VERTICES = 64
MAX_ENUM_VERTICES = 5

MASK64 = (1 << 64) - 1


class GraphError(ValueError):
    """Malformed graph input or invalid generator parameters."""


# ---------------------------------------------------------------------------
# vertex-set helpers
# ---------------------------------------------------------------------------

def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    """Vertices of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


def subsets_up_to(n: int, k: int) -> Iterator[int]:
    """All subsets of ``range(n)`` with at most ``k`` members, by size then lex."""
    for size in range(min(k, n) + 1):
        for combo in combinations(range(n), size):
            yield mask_of(combo)


# ---------------------------------------------------------------------------
# Graph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the neighbourhood of ``v`` as a bitmask.  Instances are
    immutable and hashable, so they can key solver tables directly.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"graphs are limited to {MAX_VERTICES} vertices, got n={self.n}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        full = self.full
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if nb >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in iter_bits(nb):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    def neighbors(self, v: int) -> list[int]:
        return members(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def complement(self) -> "Graph":
        full = self.full
        return Graph(self.n, tuple(full & ~nb & ~(1 << v) for v, nb in enumerate(self.adj)))

    def isolated(self) -> int:
        """Mask of isolated vertices."""
        return mask_of(v for v, nb in enumerate(self.adj) if not nb)

    def ball(self, x: int, r: int) -> int:
        """Closed ``r``-ball around ``x``."""
        return reach_avoiding(self, x, r, 0)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# ---------------------------------------------------------------------------
# edge-list format
# ---------------------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse the ``"n m"`` header plus ``m`` lines of ``"u v"``.

    Duplicate edges collapse, after which the distinct edge count must equal
    ``m``.  Blank lines are ignored.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphError("empty edge-list document")
    header = lines[0].split()
    if len(header) != 2:
        raise GraphError(f"line 1: expected 'n m', got {lines[0]!r}")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphError(f"line 1: non-integer header {lines[0]!r}") from None
    if n < 0 or m < 0:
        raise GraphError("line 1: negative n or m")
    if n > MAX_VERTICES:
        raise GraphError(f"graphs are limited to {MAX_VERTICES} vertices, got n={n}")
    edges = set()
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex in {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"line {lineno}: vertex id out of range 0..{n - 1}")
        if u == v:
            raise GraphError(f"line {lineno}: self-loop at {u}")
        edges.add((min(u, v), max(u, v)))
    if len(edges) != m:
        raise GraphError(f"header declares {m} edges but {len(edges)} distinct edges were listed")
    return Graph.from_edges(n, edges)


def serialize_graph(g: Graph) -> str:
    edges = g.edges()
    out = [f"{g.n} {len(edges)}"]
    out.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(out) + "\n"


def read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


# ---------------------------------------------------------------------------
# reachability
# ---------------------------------------------------------------------------

def reach_avoiding(g: Graph, x: int, r: int, blocked: int) -> int:
    """Endpoints of paths of length <= r from ``x`` that never touch ``blocked``.

    Always contains ``x`` itself.
    """
    if blocked >> x & 1:
        raise ValueError(f"start vertex {x} lies in the blocked set")
    if r < 0:
        raise ValueError("radius must be non-negative")
    adj = g.adj
    free = ~blocked
    seen = frontier = 1 << x
    for _ in range(r):
        nxt = 0
        for u in iter_bits(frontier):
            nxt |= adj[u]
        frontier = nxt & free & ~seen
        if not frontier:
            break
        seen |= frontier
    return seen


def shortest_path_avoiding(g: Graph, x: int, y: int, blocked: int) -> tuple[int, ...] | None:
    """A shortest ``x``-``y`` path avoiding ``blocked``, or None."""
    if blocked >> x & 1 or blocked >> y & 1:
        return None
    parent = {x: None}
    frontier = [x]
    while frontier and y not in parent:
        nxt = []
        for u in frontier:
            for w in iter_bits(g.adj[u] & ~blocked):
                if w not in parent:
                    parent[w] = u
                    nxt.append(w)
        frontier = nxt
    if y not in parent:
        return None
    path = [y]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return tuple(reversed(path))


# ---------------------------------------------------------------------------
# PRNG and generators
# ---------------------------------------------------------------------------

class SplitMix64:
    """SplitMix64 (Steele, Lea, Flood 2014).

    state += 0x9E3779B97F4A7C15; z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
    return z ^ (z >> 31)            (all arithmetic mod 2**64)
    """

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, bound: int) -> int:
        """Integer in ``[0, bound)`` by plain modulo reduction."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates, from the back."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


FAMILIES = ("path", "cycle", "complete", "complete-bipartite", "grid",
            "apollonian", "erdos-renyi", "hypercube")


@dataclass(frozen=True)
class FamilySpec:
    """Generator request.

    ``n`` is the vertex count (path, cycle, complete, apollonian,
    erdos-renyi) or the dimension (hypercube); ``a``/``b`` are the side
    sizes for complete-bipartite and grid.
    """

    family: str
    n: int = 0
    a: int = 0
    b: int = 0
    p: float = 0.5
    seed: int = 0

    def label(self) -> str:
        if self.family in ("complete-bipartite", "grid"):
            return f"{self.family}({self.a},{self.b})"
        if self.family == "erdos-renyi":
            return f"{self.family}({self.n},p={self.p},seed={self.seed})"
        if self.family == "apollonian":
            return f"{self.family}({self.n},seed={self.seed})"
        return f"{self.family}({self.n})"


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise GraphError(msg)


def generate(spec: FamilySpec) -> Graph:
    fam = spec.family
    if fam == "path":
        _need(spec.n >= 1, "path needs n >= 1")
        return Graph.from_edges(spec.n, [(i, i + 1) for i in range(spec.n - 1)])
    if fam == "cycle":
        _need(spec.n >= 3, "cycle needs n >= 3")
        return Graph.from_edges(spec.n, [(i, (i + 1) % spec.n) for i in range(spec.n)])
    if fam == "complete":
        _need(spec.n >= 1, "complete needs n >= 1")
        return Graph.from_edges(spec.n, combinations(range(spec.n), 2))
    if fam == "complete-bipartite":
        _need(spec.a >= 1 and spec.b >= 1, "complete-bipartite needs a, b >= 1")
        a, b = spec.a, spec.b
        return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])
    if fam == "grid":
        _need(spec.a >= 1 and spec.b >= 1, "grid needs a, b >= 1")
        a, b = spec.a, spec.b
        edges = []
        for i in range(a):
            for j in range(b):
                v = i * b + j
                if j + 1 < b:
                    edges.append((v, v + 1))
                if i + 1 < a:
                    edges.append((v, v + b))
        return Graph.from_edges(a * b, edges)
    if fam == "apollonian":
        return _apollonian(spec.n, spec.seed)
    if fam == "erdos-renyi":
        _need(spec.n >= 1, "erdos-renyi needs n >= 1")
        _need(0.0 <= spec.p <= 1.0, "erdos-renyi needs 0 <= p <= 1")
        rng = SplitMix64(spec.seed)
        edges = [(u, v) for u, v in combinations(range(spec.n), 2) if rng.random() < spec.p]
        return Graph.from_edges(spec.n, edges)
    if fam == "hypercube":
        _need(0 <= spec.n <= 6, "hypercube dimension must be in 0..6")
        size = 1 << spec.n
        edges = [(v, v ^ (1 << d)) for v in range(size) for d in range(spec.n) if v < v ^ (1 << d)]
        return Graph.from_edges(size, edges)
    raise GraphError(f"unknown family {fam!r}; expected one of {', '.join(FAMILIES)}")


def _apollonian(n: int, seed: int) -> Graph:
    # stacked triangulation: each new vertex goes into a seed-chosen face
    _need(n >= 3, "apollonian needs n >= 3")
    rng = SplitMix64(seed)
    edges = [(0, 1), (0, 2), (1, 2)]
    faces = [(0, 1, 2)]
    for v in range(3, n):
        idx = rng.below(len(faces))
        a, b, c = faces[idx]
        edges += [(a, v), (b, v), (c, v)]
        faces[idx] = (a, b, v)
        faces.append((b, c, v))
        faces.append((a, c, v))
    return Graph.from_edges(n, edges)


def enumerate_labeled_graphs(n: int) -> Iterator[Graph]:
    """Every labeled graph on ``n`` vertices, ordered by edge mask.

    Bit ``i`` of the mask selects the ``i``-th pair of
    ``combinations(range(n), 2)``.
    """
    if n < 0:
        raise GraphError("n must be non-negative")
    if n > MAX_ENUM_VERTICES:
        raise GraphError(f"labeled enumeration is limited to n <= {MAX_ENUM_VERTICES}")
    pairs = list(combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        adj = [0] * n
        for i, (u, v) in enumerate(pairs):
            if code >> i & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        yield Graph(n, tuple(adj))


def labeled_corpus(max_n: int, min_n: int = 1) -> Iterator[Graph]:
    for n in range(min_n, max_n + 1):
        yield from enumerate_labeled_graphs(n)
