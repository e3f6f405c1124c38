"""Generalized Petersen graphs Pet(n,k), their collapse Pb(n,k) and C_n^k."""
from dataclasses import dataclass
from typing import Dict, List, Tuple

import networkx as nx

from .errors import InvalidInputError, InvalidParameterError
from .graph_core import SimpleGraph, make_cycle, walk_power

EDGE_TRANSITIVE = frozenset({(4, 1), (5, 2), (8, 3), (10, 2), (10, 3), (12, 5), (24, 5)})

NAMED_GRAPHS: Dict[str, Tuple[int, int]] = {
    "petersen": (5, 2),
    "durer": (6, 2),
    "mobius-kantor": (8, 3),
    "dodecahedron": (10, 2),
    "desargues": (10, 3),
    "nauru": (12, 5),
}


@dataclass(frozen=True)
class GPParams:
    """A validated (n, k) with 2 < 2k <= n."""

    n: int
    k: int

    def __post_init__(self):
        if self.k < 2 or 2 * self.k > self.n:
            raise InvalidParameterError(f"Pet(n,k) requires 2 < 2k <= n, got n={self.n}, k={self.k}")

    def __str__(self) -> str:
        return f"Pet({self.n},{self.k})"

    @property
    def is_degenerate(self) -> bool:
        """n = 2k: the inner chords pair up and Pet(n,k) is not 3-regular."""
        return self.n == 2 * self.k

    def u(self, i: int) -> int:
        return i % self.n

    def v(self, i: int) -> int:
        return self.n + i % self.n

    def orbit_roots(self) -> Tuple[int, int]:
        """One outer and one inner vertex; the rotation i -> i+1 covers the rest."""
        return (0, self.n)


@dataclass(frozen=True)
class PropertyFlags:
    bipartite: bool
    vertex_transitive: bool
    cayley: bool
    edge_transitive: bool
    three_regular: bool
    warnings: Tuple[str, ...] = ()


def named_graph(name: str) -> GPParams:
    try:
        return GPParams(*NAMED_GRAPHS[name.lower()])
    except KeyError:
        raise InvalidInputError(f"unknown graph name {name!r}; expected one of {', '.join(NAMED_GRAPHS)}")


def build_petersen(params: GPParams) -> SimpleGraph:
    """Pet(n,k) with u_i at index i and v_i at index n+i."""
    n, k = params.n, params.k
    edges = []
    for i in range(n):
        edges.append((params.u(i), params.u(i + 1)))
        edges.append((params.u(i), params.v(i)))
        edges.append((params.v(i), params.v(i + k)))
    labels = tuple(f"u{i}" for i in range(n)) + tuple(f"v{i}" for i in range(n))
    return SimpleGraph(2 * n, tuple(edges), labels=labels)


def build_pb(params: GPParams) -> SimpleGraph:
    """Pb(n,k): Pet(n,k) with u_i and v_i identified, i.e. the circulant C_n(1,k)."""
    n, k = params.n, params.k
    edges = [(i, (i + step) % n) for i in range(n) for step in (1, k)]
    return SimpleGraph(n, tuple(edges))


def pb_quotient(params: GPParams) -> List[int]:
    """The identification u_i, v_i -> i taking Pet(n,k) onto Pb(n,k)."""
    return [i % params.n for i in range(2 * params.n)]


def build_cycle_power_k(params: GPParams) -> SimpleGraph:
    return walk_power(make_cycle(params.n), params.k)


def iso_congruence(n: int, k: int, m: int) -> bool:
    """Pet(n,k) and Pet(n,m) are isomorphic iff m = +-k or mk = +-1 (mod n)."""
    GPParams(n, k)
    GPParams(n, m)
    return (m - k) % n == 0 or (m + k) % n == 0 or (m * k - 1) % n == 0 or (m * k + 1) % n == 0


def isomorphic_by_search(n: int, k: int, m: int) -> bool:
    first = build_petersen(GPParams(n, k)).to_networkx()
    second = build_petersen(GPParams(n, m)).to_networkx()
    return nx.is_isomorphic(first, second)


def property_flags(n: int, k: int) -> PropertyFlags:
    """Structural predicates of Pet(n,k) from their arithmetic characterisations.

    (4, 1) lies outside the Pet(n,k) domain but appears in the edge-transitive
    list; it is answered with edge_transitive=False and a warning.
    """
    warnings = []
    if (n, k) == (4, 1):
        warnings.append("(4,1) is outside 2 < 2k <= n; edge_transitive reported as false")
        edge_transitive = False
    else:
        params = GPParams(n, k)
        edge_transitive = (n, k) in EDGE_TRANSITIVE
        if params.is_degenerate:
            warnings.append(f"Pet({n},{k}) has n = 2k: inner vertices have degree 2, the graph is not 3-regular")
    square = (k * k) % n
    return PropertyFlags(
        bipartite=n % 2 == 0 and k % 2 == 1,
        vertex_transitive=(n, k) == (10, 2) or square in (1 % n, (n - 1) % n),
        cayley=square == 1 % n,
        edge_transitive=edge_transitive,
        three_regular=n != 2 * k,
        warnings=tuple(warnings),
    )


def short_cycle_witness(params: GPParams) -> List[int]:
    """The 8-cycle u_0 u_1 v_1 v_{k+1} u_{k+1} u_k v_k v_0 present in every Pet(n,k)."""
    k = params.k
    return [params.u(0), params.u(1), params.v(1), params.v(k + 1),
            params.u(k + 1), params.u(k), params.v(k), params.v(0)]
