"""Immutable simple graphs, the standard builders and the BFS oracles.

Adjacency is kept as one Python int per vertex used as a bit row, so that
neighbourhood unions and clique checks are single integer operations. The
distance work (girth, odd girth, walk powers) is delegated to
scipy.sparse.csgraph breadth-first searches.
"""
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .errors import InvalidInputError, InvalidParameterError

if TYPE_CHECKING:
    from .petersen import GPParams

Edge = Tuple[int, int]

# Rows of BFS sources handled per scipy call; bounds the dense distance block.
_CHUNK = 256


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of `mask`, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class SimpleGraph:
    """Undirected simple graph on the vertices 0..vertex_count-1.

    Edges are normalised to sorted (u, v) pairs with u < v; duplicates are
    merged. Labels are diagnostic only and take no part in equality.
    """

    vertex_count: int
    edges: Tuple[Edge, ...] = ()
    labels: Optional[Tuple[str, ...]] = field(default=None, compare=False)
    rows: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise InvalidInputError(f"vertex_count must be nonnegative, got {n}")
        normalised = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidInputError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInputError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
            normalised.add((u, v) if u < v else (v, u))
        rows = [0] * n
        for u, v in normalised:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        object.__setattr__(self, "edges", tuple(sorted(normalised)))
        object.__setattr__(self, "rows", tuple(rows))
        if self.labels is not None:
            labels = tuple(str(label) for label in self.labels)
            if len(labels) != n:
                raise InvalidInputError(f"expected {n} labels, got {len(labels)}")
            object.__setattr__(self, "labels", labels)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def neighbors(self, v: int) -> List[int]:
        return list(iter_bits(self.rows[v]))

    def degree(self, v: int) -> int:
        return popcount(self.rows[v])

    def degree_sequence(self) -> List[int]:
        return sorted((self.degree(v) for v in range(self.vertex_count)), reverse=True)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def is_clique(self, vertices: Iterable[int]) -> bool:
        """True when the given vertices are pairwise adjacent."""
        vertices = list(vertices)
        mask = 0
        for v in vertices:
            mask |= 1 << v
        return all((self.rows[v] | (1 << v)) & mask == mask for v in vertices)

    def adjacency_matrix(self) -> np.ndarray:
        matrix = np.zeros((self.vertex_count, self.vertex_count), dtype=np.int64)
        if self.edges:
            ends = np.asarray(self.edges, dtype=np.int64)
            matrix[ends[:, 0], ends[:, 1]] = 1
            matrix[ends[:, 1], ends[:, 0]] = 1
        return matrix

    def to_sparse(self) -> csr_matrix:
        n = self.vertex_count
        if not self.edges:
            return csr_matrix((n, n), dtype=np.int8)
        ends = np.asarray(self.edges, dtype=np.int64)
        rows = np.concatenate([ends[:, 0], ends[:, 1]])
        cols = np.concatenate([ends[:, 1], ends[:, 0]])
        data = np.ones(len(rows), dtype=np.int8)
        return csr_matrix((data, (rows, cols)), shape=(n, n))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.vertex_count))
        graph.add_edges_from(self.edges)
        return graph


@dataclass(frozen=True)
class CycleSignature:
    """Oriented edge-class counts of a cycle in Pet(n,k)."""

    length: int
    u_plus: int = 0
    u_minus: int = 0
    v_plus: int = 0
    v_minus: int = 0
    b: int = 0

    def violations(self, n: int, k: int) -> List[str]:
        """Names of the cycle identities that do not hold (empty when all do)."""
        failed = []
        if self.u_plus + self.u_minus + self.v_plus + self.v_minus + self.b != self.length:
            failed.append("edge classes do not sum to the length")
        if self.b % 2:
            failed.append("spoke count is odd")
        if ((self.u_plus - self.u_minus) + k * (self.v_plus - self.v_minus)) % n:
            failed.append("index displacement is not 0 mod n")
        return failed


# Builders

def make_cycle(n: int) -> SimpleGraph:
    if n < 3:
        raise InvalidParameterError(f"a cycle needs n >= 3, got {n}")
    return SimpleGraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def make_complete(n: int) -> SimpleGraph:
    if n < 1:
        raise InvalidParameterError(f"a complete graph needs n >= 1, got {n}")
    return SimpleGraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def make_circular_complete(p: int, q: int) -> SimpleGraph:
    """K_{p/q}: i ~ j iff q <= |i - j| <= p - q."""
    if q < 1 or p < 2 * q:
        raise InvalidParameterError(f"K_{{p/q}} needs p >= 2q >= 2, got p={p}, q={q}")
    return SimpleGraph(p, tuple((i, j) for i in range(p) for j in range(i + 1, p) if q <= j - i <= p - q))


def complement(g: SimpleGraph) -> SimpleGraph:
    n = g.vertex_count
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if not g.has_edge(u, v)]
    return SimpleGraph(n, tuple(edges), labels=g.labels)


def subdivide(g: SimpleGraph, d: int) -> SimpleGraph:
    """G^{1/d}: every edge becomes a path of length d through d-1 new vertices."""
    if d < 1:
        raise InvalidParameterError(f"subdivision needs d >= 1, got {d}")
    if d == 1:
        return g
    n = g.vertex_count
    edges = []
    labels = list(g.labels) if g.labels is not None else None
    for index, (u, v) in enumerate(g.edges):
        inner = [n + index * (d - 1) + step for step in range(d - 1)]
        path = [u] + inner + [v]
        edges.extend(zip(path, path[1:]))
        if labels is not None:
            labels.extend(f"{g.label(u)}~{g.label(v)}:{step + 1}" for step in range(d - 1))
    total = n + (d - 1) * g.edge_count
    return SimpleGraph(total, tuple(edges), labels=tuple(labels) if labels is not None else None)


# Distance oracles

def _double_cover(g: SimpleGraph) -> csr_matrix:
    """Bipartite double cover: vertex (v, parity) is index parity * n + v."""
    n = g.vertex_count
    if not g.edges:
        return csr_matrix((2 * n, 2 * n), dtype=np.int8)
    ends = np.asarray(g.edges, dtype=np.int64)
    a, b = ends[:, 0], ends[:, 1]
    rows = np.concatenate([a, a + n, b, b + n])
    cols = np.concatenate([b + n, b, a + n, a])
    data = np.ones(len(rows), dtype=np.int8)
    return csr_matrix((data, (rows, cols)), shape=(2 * n, 2 * n))


def _chunks(sources: Sequence[int]) -> Iterator[np.ndarray]:
    sources = np.asarray(list(sources), dtype=np.int64)
    for start in range(0, len(sources), _CHUNK):
        yield sources[start:start + _CHUNK]


def parity_distances(g: SimpleGraph, sources: Optional[Iterable[int]] = None) -> np.ndarray:
    """Shortest even and odd walk lengths from each source.

    Returns an array of shape (len(sources), 2, vertex_count); entry
    [i, p, v] is the length of the shortest walk from sources[i] to v whose
    length has parity p, or inf when none exists.
    """
    n = g.vertex_count
    sources = np.arange(n) if sources is None else np.asarray(list(sources), dtype=np.int64)
    if n == 0 or len(sources) == 0:
        return np.full((len(sources), 2, n), np.inf)
    dist = shortest_path(_double_cover(g), method="D", directed=False, unweighted=True, indices=sources)
    return np.asarray(dist).reshape(len(sources), 2, n)


def walk_power(g: SimpleGraph, r: int) -> SimpleGraph:
    """G^r: distinct u, v adjacent iff some walk of length exactly r joins them.

    A walk of length r exists iff the shortest walk of the same parity has
    length <= r, since any nonempty walk can be padded by back-and-forth steps.
    """
    if r < 1:
        raise InvalidParameterError(f"walk power needs r >= 1, got {r}")
    if r == 1:
        return g
    n = g.vertex_count
    parity = r % 2
    edges: List[Edge] = []
    for chunk in _chunks(range(n)):
        reach = parity_distances(g, chunk)[:, parity, :] <= r
        reach[np.arange(len(chunk)), chunk] = False
        rows, cols = np.nonzero(reach)
        rows = chunk[rows]
        keep = rows < cols
        edges.extend(zip(rows[keep].tolist(), cols[keep].tolist()))
    return SimpleGraph(n, tuple(edges), labels=g.labels)


def distance_power(g: SimpleGraph, r: int) -> SimpleGraph:
    """Distinct u, v adjacent iff dist(u, v) <= r. Used for cross-checks only."""
    if r < 1:
        raise InvalidParameterError(f"distance power needs r >= 1, got {r}")
    n = g.vertex_count
    edges: List[Edge] = []
    graph = g.to_sparse()
    for chunk in _chunks(range(n)):
        dist = np.asarray(shortest_path(graph, method="D", directed=False, unweighted=True, indices=chunk))
        reach = dist <= r
        reach[np.arange(len(chunk)), chunk] = False
        rows, cols = np.nonzero(reach)
        rows = chunk[rows]
        keep = rows < cols
        edges.extend(zip(rows[keep].tolist(), cols[keep].tolist()))
    return SimpleGraph(n, tuple(edges), labels=g.labels)


def fractional_power(g: SimpleGraph, r: int, d: int) -> SimpleGraph:
    """G^{r/d} = (G^{1/d})^r."""
    return walk_power(subdivide(g, d), r)


def odd_girth_bfs(g: SimpleGraph, roots: Optional[Iterable[int]] = None) -> Optional[int]:
    """Length of the shortest odd cycle, or None for bipartite graphs.

    The shortest odd closed walk through a root is read off the double cover
    as the distance from (root, even) to (root, odd); the global minimum of
    these is the odd girth. `roots` may be restricted to representatives of
    the vertex orbits under the graph's automorphisms.
    """
    roots = range(g.vertex_count) if roots is None else list(roots)
    if not g.edges or len(roots) == 0:
        return None
    best = np.inf
    for chunk in _chunks(roots):
        dist = parity_distances(g, chunk)
        best = min(best, dist[np.arange(len(chunk)), 1, chunk].min())
    return None if np.isinf(best) else int(best)


def girth_bfs(g: SimpleGraph, roots: Optional[Iterable[int]] = None) -> Optional[int]:
    """Length of the shortest cycle, or None for forests."""
    roots = range(g.vertex_count) if roots is None else list(roots)
    if not g.edges or len(roots) == 0:
        return None
    ends = np.asarray(g.edges, dtype=np.int64)
    a, b = ends[:, 0], ends[:, 1]
    graph = g.to_sparse()
    best = np.inf
    for chunk in _chunks(roots):
        block = np.asarray(shortest_path(graph, method="D", directed=False, unweighted=True, indices=chunk))
        for dist in block:
            da, db = dist[a], dist[b]
            reached = np.isfinite(da) & np.isfinite(db)
            level = reached & (da == db)
            if level.any():
                best = min(best, 2 * da[level].min() + 1)
            # a vertex with two BFS parents closes an even cycle
            down = reached & (db == da + 1)
            up = reached & (da == db + 1)
            parents = np.bincount(np.concatenate([b[down], a[up]]), minlength=g.vertex_count)
            merged = parents >= 2
            if merged.any():
                best = min(best, 2 * dist[merged].min())
    return None if np.isinf(best) else int(best)


def is_bipartite(g: SimpleGraph) -> bool:
    return nx.is_bipartite(g.to_networkx())


# Pet(n,k) cycles

def cycle_signature(params: "GPParams", cycle: Sequence[int]) -> CycleSignature:
    """Count the oriented edge classes of a cycle of Pet(n,k).

    Vertices follow the shared convention: 0..n-1 are u_0..u_{n-1} and
    n..2n-1 are v_0..v_{n-1}. When n = 2k the inner step is counted as v_plus.
    """
    n, k = params.n, params.k
    walk = [int(w) for w in cycle]
    if len(walk) < 3:
        raise InvalidInputError("a cycle needs at least 3 vertices")
    if len(set(walk)) != len(walk):
        raise InvalidInputError("cycle repeats a vertex")
    if any(not 0 <= w < 2 * n for w in walk):
        raise InvalidInputError(f"cycle vertex outside [0, {2 * n})")
    counts = dict(u_plus=0, u_minus=0, v_plus=0, v_minus=0, b=0)
    for x, y in zip(walk, walk[1:] + walk[:1]):
        if x < n and y < n:
            if y == (x + 1) % n:
                counts["u_plus"] += 1
            elif y == (x - 1) % n:
                counts["u_minus"] += 1
            else:
                raise InvalidInputError(f"u{x} and u{y} are not adjacent in Pet({n},{k})")
        elif x >= n and y >= n:
            i, j = x - n, y - n
            if j == (i + k) % n:
                counts["v_plus"] += 1
            elif j == (i - k) % n:
                counts["v_minus"] += 1
            else:
                raise InvalidInputError(f"v{i} and v{j} are not adjacent in Pet({n},{k})")
        elif x % n == y % n:
            counts["b"] += 1
        else:
            raise InvalidInputError(f"vertices {x} and {y} are not adjacent in Pet({n},{k})")
    return CycleSignature(length=len(walk), **counts)


# Edge-list text format

def write_edge_list(g: SimpleGraph) -> str:
    """Render the "p <V> <E>" / "e <u> <v>" edge list; output is deterministic."""
    lines = [f"p {g.vertex_count} {g.edge_count}"]
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> SimpleGraph:
    header = None
    edges = []
    for number, raw in enumerate(text.splitlines(), 1):
        fields = raw.split()
        if not fields or fields[0] == "c":
            continue
        try:
            if fields[0] == "p" and header is None:
                _, vertices, declared = fields
                header = (int(vertices), int(declared))
            elif fields[0] == "e" and header is not None:
                _, u, v = fields
                edges.append((int(u), int(v)))
            else:
                raise ValueError(raw)
        except ValueError:
            raise InvalidInputError(f"malformed edge-list line {number}: {raw!r}")
    if header is None:
        raise InvalidInputError("edge list has no 'p' header line")
    graph = SimpleGraph(header[0], tuple(edges))
    if graph.edge_count != header[1] or len(edges) != header[1]:
        raise InvalidInputError(f"header declares {header[1]} edges, found {len(edges)} lines")
    return graph
