"""Graph homomorphisms: verification, exhaustive search and explicit constructions.

The constructions map Pet(n,k) onto Pb(n,k) and C_n^k, colour those with
residues mod n at a rational separation, and compose the results into
circular cliques such as C_5 = K_{5/2}. Each construction is checked by
`verify_hom` before it is returned.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import ceil, gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DomainError, InvalidInputError, SearchBudgetExhausted, VerificationError
from .graph_core import Edge, SimpleGraph, iter_bits, make_circular_complete, make_cycle, odd_girth_bfs, popcount, walk_power
from .odd_girth import IpSolution, ip_enumerate
from .petersen import GPParams, build_cycle_power_k, build_pb, build_petersen

DEFAULT_BUDGET = 2_000_000


class SearchOutcome(str, Enum):
    FOUND = "found"
    NONE = "none"
    BUDGET = "budget-exhausted"


@dataclass(frozen=True)
class HomCheck:
    ok: bool
    failing_edge: Optional[Edge] = None


@dataclass(frozen=True)
class VertexMap:
    source: SimpleGraph
    target: SimpleGraph
    assignment: Tuple[int, ...]
    source_name: str = ""
    target_name: str = ""
    verified: bool = False

    def __getitem__(self, vertex: int) -> int:
        return self.assignment[vertex]

    def to_dict(self) -> dict:
        return dict(source=self.source_name, target=self.target_name,
                    assignment=list(self.assignment), verified=self.verified)


@dataclass(frozen=True)
class SearchResult:
    outcome: SearchOutcome
    mapping: Optional[VertexMap] = None
    nodes: int = 0


@dataclass(frozen=True)
class CircularColoring:
    """Residues mod `modulus` whose adjacent pairs sit at circular distance >= threshold."""

    modulus: int
    threshold: Fraction
    values: Tuple[int, ...]

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.modulus) / self.threshold

    def verify(self, graph: SimpleGraph) -> HomCheck:
        if len(self.values) != graph.vertex_count:
            raise InvalidInputError(f"coloring has {len(self.values)} values for {graph.vertex_count} vertices")
        for a, b in graph.edges:
            if circular_distance(self.values[a], self.values[b], self.modulus) < self.threshold:
                return HomCheck(False, (a, b))
        return HomCheck(True)

    def as_vertex_map(self, graph: SimpleGraph, source_name: str = "") -> VertexMap:
        """The same coloring as a homomorphism into K_{modulus/ceil(threshold)}."""
        q = ceil(self.threshold)
        target = make_circular_complete(self.modulus, q)
        return verified_map(graph, target, self.values, source_name, f"K_{{{self.modulus}/{q}}}")

    def to_dict(self) -> dict:
        return dict(modulus=self.modulus,
                    threshold=dict(num=self.threshold.numerator, den=self.threshold.denominator),
                    values=list(self.values))


@dataclass(frozen=True)
class CliqueWitness:
    host: SimpleGraph
    vertices: Tuple[int, ...]
    description: str
    verified: bool = False

    @property
    def size(self) -> int:
        return len(self.vertices)

    def to_dict(self) -> dict:
        return dict(description=self.description, size=self.size, verified=self.verified,
                    vertices=[self.host.label(v) for v in self.vertices])


@dataclass(frozen=True)
class InterleaveReport:
    params: GPParams
    q: int
    power: int
    max_ell: int
    failures: Tuple[Tuple[int, int], ...]

    @property
    def holds(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return dict(n=self.params.n, k=self.params.k, q=self.q, power=self.power, max_ell=self.max_ell,
                    holds=self.holds, failures=[list(f) for f in self.failures[:20]])


@dataclass(frozen=True)
class NonColorabilityCertificate:
    """Pet(n,k) has no homomorphism to C_{2r+3}.

    A homomorphism would induce Pet(n,k)^{2r+1} -> C_{2r+3}^{2r+1} = K_{2r+3},
    which the clique of size 4r+2 in the first power forbids.
    """

    params: GPParams
    clique: CliqueWitness
    cycle_length: int
    power: int
    cycle_power_complete: bool

    @property
    def valid(self) -> bool:
        return self.clique.verified and self.cycle_power_complete and self.clique.size > self.cycle_length

    def to_dict(self) -> dict:
        return dict(n=self.params.n, k=self.params.k, cycle_length=self.cycle_length, power=self.power,
                    cycle_power_complete=self.cycle_power_complete, valid=self.valid, clique=self.clique.to_dict())


def circular_distance(a: int, b: int, modulus: int) -> int:
    d = (a - b) % modulus
    return min(d, modulus - d)


# Verification

def verify_hom(mapping: VertexMap) -> HomCheck:
    """Check edge preservation; reports the first source edge whose image is not an edge."""
    source, target, assignment = mapping.source, mapping.target, mapping.assignment
    if len(assignment) != source.vertex_count:
        raise InvalidInputError(f"assignment has {len(assignment)} entries for {source.vertex_count} vertices")
    if any(not 0 <= x < target.vertex_count for x in assignment):
        raise InvalidInputError(f"assignment leaves the target's vertex range [0, {target.vertex_count})")
    for a, b in source.edges:
        if not target.has_edge(assignment[a], assignment[b]):
            return HomCheck(False, (a, b))
    return HomCheck(True)


def verified_map(source: SimpleGraph, target: SimpleGraph, assignment: Sequence[int],
                 source_name: str = "", target_name: str = "") -> VertexMap:
    """Build a VertexMap and verify it; a failure is a VerificationError with the edge."""
    mapping = VertexMap(source, target, tuple(int(x) for x in assignment), source_name, target_name)
    check = verify_hom(mapping)
    if not check.ok:
        raise VerificationError(f"map {source_name or 'G'} -> {target_name or 'H'} breaks edge {check.failing_edge}",
                                witness=check.failing_edge)
    return VertexMap(mapping.source, mapping.target, mapping.assignment, source_name, target_name, verified=True)


def compose(first: VertexMap, second: VertexMap) -> VertexMap:
    if first.target != second.source:
        raise InvalidInputError("cannot compose: the first map's target is not the second map's source")
    assignment = [second.assignment[x] for x in first.assignment]
    return verified_map(first.source, second.target, assignment, first.source_name, second.target_name)


# Search

class _BudgetExceeded(Exception):
    pass


class _Backtracker:
    """Bitmask-domain backtracking with arc consistency after every assignment."""

    def __init__(self, g: SimpleGraph, h: SimpleGraph, budget: int, target_transitive: bool):
        self.g = g
        self.h = h
        self.budget = budget
        self.target_transitive = target_transitive
        self.nodes = 0
        self.full = (1 << h.vertex_count) - 1
        self._unions: Dict[int, int] = {}

    def neighbourhood(self, mask: int) -> int:
        union = self._unions.get(mask)
        if union is None:
            union = 0
            for w in iter_bits(mask):
                union |= self.h.rows[w]
            self._unions[mask] = union
        return union

    def propagate(self, domains: List[int], changed: List[int]) -> bool:
        queue = list(changed)
        while queue:
            x = queue.pop()
            reach = self.neighbourhood(domains[x])
            for y in iter_bits(self.g.rows[x]):
                narrowed = domains[y] & reach
                if narrowed != domains[y]:
                    if not narrowed:
                        return False
                    domains[y] = narrowed
                    queue.append(y)
        return True

    def choose(self, domains: List[int]) -> Optional[int]:
        best, best_key = None, None
        for x, mask in enumerate(domains):
            size = popcount(mask)
            if size > 1:
                key = (size, -self.g.degree(x), x)
                if best_key is None or key < best_key:
                    best, best_key = x, key
        return best

    def search(self, domains: List[int], first: bool) -> Optional[List[int]]:
        x = self.choose(domains)
        if x is None:
            return domains
        values = list(iter_bits(domains[x]))
        if first and self.target_transitive and domains[x] == self.full:
            values = values[:1]
        for value in values:
            self.nodes += 1
            if self.nodes > self.budget:
                raise _BudgetExceeded()
            trial = list(domains)
            trial[x] = 1 << value
            if self.propagate(trial, [x]):
                found = self.search(trial, False)
                if found is not None:
                    return found
        return None

    def run(self) -> Optional[List[int]]:
        live = 0
        for w in range(self.h.vertex_count):
            if self.h.rows[w]:
                live |= 1 << w
        domains = [live if self.g.rows[x] else self.full for x in range(self.g.vertex_count)]
        if any(d == 0 for d in domains):
            return None
        if not self.propagate(domains, list(range(self.g.vertex_count))):
            return None
        found = self.search(domains, True)
        return None if found is None else [m.bit_length() - 1 for m in found]


def search_hom(g: SimpleGraph, h: SimpleGraph, budget: int = DEFAULT_BUDGET,
               target_transitive: bool = False) -> SearchResult:
    """Decide whether g maps homomorphically to h, within a node budget.

    NONE is returned only when the search space is exhausted. With
    `target_transitive` the first branching vertex is pinned to target vertex 0,
    which is sound when h is vertex-transitive.
    """
    if g.vertex_count == 0:
        return SearchResult(SearchOutcome.FOUND, VertexMap(g, h, (), verified=True))
    if h.vertex_count == 0:
        return SearchResult(SearchOutcome.NONE)
    if g.edges:
        if not h.edges:
            return SearchResult(SearchOutcome.NONE)
        g_odd, h_odd = odd_girth_bfs(g), odd_girth_bfs(h)
        if g_odd is not None and (h_odd is None or h_odd > g_odd):
            return SearchResult(SearchOutcome.NONE)
    backtracker = _Backtracker(g, h, budget, target_transitive)
    try:
        assignment = backtracker.run()
    except _BudgetExceeded:
        return SearchResult(SearchOutcome.BUDGET, nodes=backtracker.nodes)
    if assignment is None:
        return SearchResult(SearchOutcome.NONE, nodes=backtracker.nodes)
    return SearchResult(SearchOutcome.FOUND, verified_map(g, h, assignment), backtracker.nodes)


def circular_ratios(p_max: int) -> List[Fraction]:
    """Reduced p/q >= 2 with p <= p_max, ascending."""
    return sorted(Fraction(p, q) for p in range(2, p_max + 1) for q in range(1, p // 2 + 1) if gcd(p, q) == 1)


def chi_c_exact(g: SimpleGraph, p_max: Optional[int] = None, budget: int = DEFAULT_BUDGET) -> Fraction:
    """Circular chromatic number: the least p/q with g -> K_{p/q}, p <= p_max.

    p_max defaults to the vertex count, which always suffices. Running out of
    budget, or of ratios, raises SearchBudgetExhausted carrying the largest
    ratio refuted so far.
    """
    if not g.edges:
        raise DomainError("the circular chromatic number is only defined here for graphs with an edge")
    p_max = g.vertex_count if p_max is None else p_max
    refuted = None
    for ratio in circular_ratios(p_max):
        p, q = ratio.numerator, ratio.denominator
        result = search_hom(g, make_circular_complete(p, q), budget, target_transitive=True)
        if result.outcome is SearchOutcome.FOUND:
            return ratio
        if result.outcome is SearchOutcome.BUDGET:
            raise SearchBudgetExhausted(f"search for a map into K_{{{p}/{q}}} ran out of budget", partial=refuted)
        refuted = ratio
    raise SearchBudgetExhausted(f"no K_{{p/q}} with p <= {p_max} admits a map", partial=refuted)


# Constructions

def _pet_shift(params: GPParams) -> List[int]:
    # v_i -> i, u_{i+1} -> i
    n = params.n
    return [(i - 1) % n for i in range(n)] + list(range(n))


def collapse_pet_to_pb(params: GPParams) -> VertexMap:
    return verified_map(build_petersen(params), build_pb(params), _pet_shift(params),
                        str(params), f"Pb({params.n},{params.k})")


def pet_to_cycle_power(params: GPParams) -> VertexMap:
    n, k = params.n, params.k
    if n % 2 == 0 or k % 2 == 0 or n <= 2 * k + 1:
        raise DomainError(f"Pet(n,k) -> C_n^k needs n and k odd with n > 2k+1, got n={n}, k={k}")
    return verified_map(build_petersen(params), build_cycle_power_k(params), _pet_shift(params),
                        str(params), f"C_{n}^{k}")


def pb_circular_coloring(params: GPParams) -> CircularColoring:
    """Pb(n,k) coloured by j -> j/(k-1) mod n at separation (n-4)(k-2)/(2(k-1))."""
    n, k = params.n, params.k
    if n % 2 == 0 or k % 2 == 1 or k < 4:
        raise DomainError(f"the Pb(n,k) coloring needs n odd and k even with k >= 4, got n={n}, k={k}")
    if n % (k - 1) not in (2 % (k - 1), (k - 3) % (k - 1)):
        raise DomainError(f"the Pb(n,k) coloring requires n ≡ ±2 (mod k−1), got n={n}, k={k}")
    inverse = pow(k - 1, -1, n)
    coloring = CircularColoring(modulus=n, threshold=Fraction((n - 4) * (k - 2), 2 * (k - 1)),
                                values=tuple(j * inverse % n for j in range(n)))
    check = coloring.verify(build_pb(params))
    if not check.ok:
        raise VerificationError(f"Pb({n},{k}) coloring breaks edge {check.failing_edge}", witness=check.failing_edge)
    return coloring


def eta_cycle_power_coloring(params: GPParams) -> CircularColoring:
    """C_n^k coloured by i -> i/2 mod n at separation (n-k)/2."""
    n, k = params.n, params.k
    if n % 2 == 0 or k % 2 == 0 or n <= 2 * k + 1:
        raise DomainError(f"the C_n^k coloring needs n and k odd with n > 2k+1, got n={n}, k={k}")
    half = pow(2, -1, n)
    coloring = CircularColoring(modulus=n, threshold=Fraction(n - k, 2),
                                values=tuple(i * half % n for i in range(n)))
    check = coloring.verify(build_cycle_power_k(params))
    if not check.ok:
        raise VerificationError(f"C_{n}^{k} coloring breaks edge {check.failing_edge}", witness=check.failing_edge)
    return coloring


def circular_clique_hom(p: int, q: int, p2: int, q2: int, budget: int = DEFAULT_BUDGET) -> VertexMap:
    """K_{p/q} -> K_{p2/q2} for p/q <= p2/q2, by i -> floor(i*p2/p)."""
    if Fraction(p, q) > Fraction(p2, q2):
        raise DomainError(f"K_{{{p}/{q}}} maps to K_{{{p2}/{q2}}} only when p/q <= p2/q2")
    source, target = make_circular_complete(p, q), make_circular_complete(p2, q2)
    names = (f"K_{{{p}/{q}}}", f"K_{{{p2}/{q2}}}")
    mapping = VertexMap(source, target, tuple(i * p2 // p for i in range(p)), *names)
    if verify_hom(mapping).ok:
        return VertexMap(source, target, mapping.assignment, *names, verified=True)
    result = search_hom(source, target, budget, target_transitive=True)
    if result.mapping is None:
        raise VerificationError(f"no map {names[0]} -> {names[1]} found ({result.outcome.value})")
    return VertexMap(source, target, result.mapping.assignment, *names, verified=True)


def c5_coloring(params: GPParams) -> VertexMap:
    """A verified homomorphism Pet(n,k) -> C_5, realised as K_{5/2}."""
    n, k = params.n, params.k
    if n % 2 == 1 and k % 2 == 1:
        if n < 5 * k:
            raise DomainError(f"C_5-coloring of Pet(n,k) with n, k odd needs n >= 5k, got n={n}, k={k}")
        first = pet_to_cycle_power(params)
        coloring = eta_cycle_power_coloring(params)
    elif n % 2 == 1 and k % 2 == 0 and k >= 4:
        coloring = pb_circular_coloring(params)
        if coloring.ratio > Fraction(5, 2):
            raise DomainError(f"C_5-coloring via Pb({n},{k}) needs 2n(k−1)/((n−4)(k−2)) <= 5/2, got {coloring.ratio}")
        first = collapse_pet_to_pb(params)
    else:
        raise DomainError(f"no C_5-coloring construction covers Pet({n},{k})")
    chain = compose(first, coloring.as_vertex_map(first.target, first.target_name))
    return compose(chain, circular_clique_hom(n, ceil(coloring.threshold), 5, 2))


def clique_embedding(params: GPParams, sol: Optional[IpSolution] = None) -> CliqueWitness:
    """A clique of size 4r+2 in Pet(n,k)^{2r+1} built from an optimal nontrivial solution.

    Requires that no trivial solution attains the optimum 2r+1. Solutions with
    t < 0 use the inner step n-k, which describes the same inner edges.
    """
    n, k = params.n, params.k
    result = ip_enumerate(params)
    if result is None:
        raise DomainError(f"{params} is bipartite; the integer program has no solution")
    if result.has_trivial_optimum:
        raise DomainError(f"{params} has a trivial optimal solution; no clique embedding applies")
    if sol is None:
        usable = [s for s in result.optima if s.t != 0]
        if not usable:
            raise DomainError(f"every optimal solution of {params} has t = 0; no clique embedding applies")
        # positive t first, then the smaller |t| and u
        sol = min(usable, key=lambda s: (s.t < 0, abs(s.t), s.u))
    if sol not in result.optima:
        raise InvalidInputError(f"({sol.u}, {sol.v}, {sol.t}) is not an optimal solution for {params}")
    if sol.t == 0:
        raise DomainError(f"the ({k},-1,0) solution of {params} has no clique embedding")
    step = k if sol.v > 0 else n - k
    u, length = sol.u, abs(sol.v)
    indices = list(range(u + 1)) + [(u + h * step) % n for h in range(1, length)]
    vertices = tuple([i % n for i in indices] + [n + i % n for i in indices])
    host = walk_power(build_petersen(params), 2 * sol.r + 1)
    description = f"K_{4 * sol.r + 2} in {params}^{2 * sol.r + 1} from (u={sol.u}, v={sol.v}, t={sol.t})"
    if len(set(vertices)) != 4 * sol.r + 2 or not host.is_clique(vertices):
        raise VerificationError(f"clique embedding failed: {description}", witness=vertices)
    return CliqueWitness(host=host, vertices=vertices, description=description, verified=True)


def interleave_embedding(params: GPParams, q: Optional[int] = None) -> InterleaveReport:
    """Check x_i ~ x_{i+l} in Pet(n,K)^{K+1} for the order u_0, v_0, u_1, v_1, ...

    K is the (even) inner step. The default q is 2K+2; `max_ell` is the
    largest L such that every l <= L passes.
    """
    n, inner = params.n, params.k
    if inner % 2:
        raise DomainError(f"the interleaved order needs an even inner step, got k={inner}")
    q = 2 * inner + 2 if q is None else q
    if q < 2:
        raise InvalidInputError(f"q must be at least 2, got {q}")
    power = inner + 1
    host = walk_power(build_petersen(params), power)
    order = [params.u(i // 2) if i % 2 == 0 else params.v(i // 2) for i in range(2 * n)]
    max_ell = 0
    failures = []
    for ell in range(1, 2 * n):
        bad = [i for i in range(2 * n) if not host.has_edge(order[i], order[(i + ell) % (2 * n)])]
        if not bad and max_ell == ell - 1:
            max_ell = ell
        if ell <= q - 1:
            failures.extend((i, ell) for i in bad)
    return InterleaveReport(params=params, q=q, power=power, max_ell=max_ell, failures=tuple(failures))


def cycle_noncolorability_certificate(params: GPParams) -> NonColorabilityCertificate:
    clique = clique_embedding(params)
    power = clique.size // 2
    cycle_length = power + 2
    cycle_power = walk_power(make_cycle(cycle_length), power)
    complete = cycle_power.edge_count == cycle_length * (cycle_length - 1) // 2
    return NonColorabilityCertificate(params=params, clique=clique, cycle_length=cycle_length,
                                      power=power, cycle_power_complete=complete)
