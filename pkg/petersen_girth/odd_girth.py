"""Odd girth of Pet(n,k): the integer program, the closed form and the BFS cross-check.

The integer program asks for the smallest odd u + |v| with u >= 0 and
u + k*v = t*n. A solution is trivial when u = 0 or v = 0. The optimum 2r+1
is the odd girth when some trivial solution attains it; otherwise the odd
girth is 2r+3.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterator, List, Optional, Tuple

from .errors import DomainError, InvalidParameterError
from .graph_core import odd_girth_bfs
from .petersen import GPParams, build_petersen


@dataclass(frozen=True)
class IpSolution:
    u: int
    v: int
    t: int

    @property
    def objective(self) -> int:
        return self.u + abs(self.v)

    @property
    def r(self) -> int:
        return (self.objective - 1) // 2

    @property
    def trivial(self) -> bool:
        return self.u == 0 or self.v == 0

    @property
    def is_odd(self) -> bool:
        return self.objective % 2 == 1

    def to_dict(self) -> dict:
        return dict(u=self.u, v=self.v, t=self.t, r=self.r, objective=self.objective, trivial=self.trivial)


@dataclass(frozen=True)
class IpResult:
    """Optimum of the integer program: a representative plus every optimal point."""

    solution: IpSolution
    optima: Tuple[IpSolution, ...]

    @property
    def objective(self) -> int:
        return self.solution.objective

    @property
    def has_trivial_optimum(self) -> bool:
        return any(s.trivial for s in self.optima)


@dataclass(frozen=True)
class FormulaTrace:
    ind_set: Tuple[int, ...]
    g_set: Tuple[int, ...]
    trivial_candidates: Tuple[int, ...]
    chosen: int
    par_k: int

    def to_dict(self) -> dict:
        return dict(ind_set=list(self.ind_set), g_set=list(self.g_set),
                    trivial_candidates=list(self.trivial_candidates), chosen=self.chosen, par_k=self.par_k)


@dataclass(frozen=True)
class GirthBounds:
    lower: Fraction
    upper: Fraction
    odd_girth: int
    exempt_k_plus_3: bool

    @property
    def holds(self) -> bool:
        return self.exempt_k_plus_3 or self.lower <= self.odd_girth <= self.upper


@dataclass(frozen=True)
class ValidationRow:
    n: int
    k: int
    formula: Optional[int]
    ip: Optional[int]
    bfs: Optional[int]
    girth_bounds_ok: Optional[bool] = None
    trace: Optional[FormulaTrace] = field(default=None, compare=False)

    @property
    def match(self) -> bool:
        return self.formula == self.ip == self.bfs and self.girth_bounds_ok is not False

    def to_dict(self) -> dict:
        return dict(n=self.n, k=self.k, formula=self.formula, ip=self.ip, bfs=self.bfs, match=self.match,
                    girth_bounds_ok=self.girth_bounds_ok,
                    trace=self.trace.to_dict() if self.trace is not None else None)


@dataclass(frozen=True)
class ValidationReport:
    n_max: int
    rows: Tuple[ValidationRow, ...]

    @property
    def mismatches(self) -> List[ValidationRow]:
        return [row for row in self.rows if not row.match]


def _is_bipartite_pair(params: GPParams) -> bool:
    return params.n % 2 == 0 and params.k % 2 == 1


def _ip_order(sol: IpSolution) -> Tuple[int, int, int, int]:
    # smaller |t|, nonnegative t first, then smaller u, then smaller |v|
    return (abs(sol.t), sol.t < 0, sol.u, abs(sol.v))


def ip_enumerate(params: GPParams) -> Optional[IpResult]:
    """Exhaustive solution of the integer program over u in [0, n], |v| <= n.

    For each v the feasible u are the residue of -k*v mod n plus multiples of
    n; only the residue itself can keep u + |v| <= n, apart from (n, 0).
    Returns None when no feasible point exists.
    """
    n, k = params.n, params.k
    best, points = n + 1, []
    for v in range(-n, n + 1):
        u = (-k * v) % n if v else n
        objective = u + abs(v)
        if objective % 2 == 0 or objective > best:
            continue
        if objective < best:
            best, points = objective, []
        points.append((u, v))
    if not points:
        return None
    optima = sorted((IpSolution(u=u, v=v, t=(u + k * v) // n) for u, v in points), key=_ip_order)
    return IpResult(solution=optima[0], optima=tuple(optima))


def unique_solution_for_t(params: GPParams, t: int) -> IpSolution:
    """The only candidate with a given nonzero t that can be optimal.

    The objective of the result may be even; callers filter by `is_odd`.
    """
    n, k = params.n, params.k
    if t == 0:
        raise InvalidParameterError("t must be nonzero")
    if t > 0:
        v = t * n // k
        return IpSolution(u=t * n - k * v, v=v, t=t)
    m = -(t * n // k)
    return IpSolution(u=k * m + t * n, v=-m, t=t)


def ind_set(params: GPParams) -> Tuple[int, ...]:
    n, k = params.n, params.k
    if _is_bipartite_pair(params):
        raise DomainError(f"{params} is bipartite; Ind(n,k) requires n odd or k even")
    g = gcd(n, k)
    slack = (k - 1) ** 2 // n
    if k % 2 == 1:
        return tuple(range(1, min(2 * k // g, slack + 1) + 1, 2))
    if (n // g) % 2 == 1:
        return tuple(range(1, min(2 * k // g, slack) + 1))
    return tuple(range(1, min(k // g, slack) + 1))


def candidate_g_set(params: GPParams) -> Tuple[int, ...]:
    n, k = params.n, params.k
    values = set()
    for t in ind_set(params):
        floor = t * n // k
        ceil = -(-t * n // k)
        values.add(t * n + (1 - k) * floor + 2)
        values.add((1 + k) * ceil - t * n + 2)
    return tuple(sorted(values))


def formula_trace(params: GPParams) -> Optional[FormulaTrace]:
    """Closed-form odd girth with every intermediate set; None when bipartite."""
    if _is_bipartite_pair(params):
        return None
    n, k = params.n, params.k
    trivial = tuple(sorted({n // gcd(n, k), k + 3}))
    g_set = candidate_g_set(params)
    chosen = min(x for x in trivial + g_set if x % 2 == 1)
    return FormulaTrace(ind_set=ind_set(params), g_set=g_set, trivial_candidates=trivial,
                        chosen=chosen, par_k=k % 2)


def odd_girth_formula(params: GPParams) -> Optional[int]:
    trace = formula_trace(params)
    return trace.chosen if trace is not None else None


def odd_girth_from_ip(params: GPParams) -> Optional[int]:
    result = ip_enumerate(params)
    if result is None:
        return None
    return result.objective if result.has_trivial_optimum else result.objective + 2


def odd_girth_pet3(n: int) -> int:
    """Odd girth of the non-bipartite Pet(n,3), n odd and at least 7."""
    if n < 7 or n % 2 == 0:
        raise DomainError(f"Pet(n,3) is non-bipartite for odd n >= 7, got n={n}")
    return {0: n // 3, 1: (n + 8) // 3, 2: (n + 10) // 3}[n % 3]


def girth_bounds(params: GPParams) -> GirthBounds:
    n, k = params.n, params.k
    g_odd = odd_girth_formula(params)
    if g_odd is None:
        raise DomainError(f"{params} is bipartite; odd girth bounds need n odd or k even")
    lower = max(Fraction(n, k), Fraction(min(gcd(n, k - 1), gcd(n, k + 1)) + 2))
    upper = Fraction(n, k) * (k % 2) + k + 1
    return GirthBounds(lower=lower, upper=upper, odd_girth=g_odd, exempt_k_plus_3=g_odd == k + 3)


def check_solution_structure(params: GPParams, sol: IpSolution) -> List[str]:
    """Names of the structural facts an optimal solution violates (empty when none)."""
    n, k = params.n, params.k
    failed = []
    if sol.u < 0:
        failed.append("u is negative")
    if sol.u + k * sol.v != sol.t * n:
        failed.append("u + k*v != t*n")
    if not sol.is_odd:
        failed.append("objective is even")
    if sol.objective > n:
        failed.append("objective exceeds n")
    if n % 2 == 0 and k % 2 == 1:
        failed.append("n even with k odd admits no solution")
    if sol.u % gcd(n, k):
        failed.append("gcd(n,k) does not divide u")
    if k % 2 == 1 and sol.u >= k:
        failed.append("k odd but u >= k")
    if k % 2 == 0 and sol.u >= k and (sol.u, sol.v, sol.t) != (k, -1, 0):
        failed.append("k even but u >= k outside (k,-1,0)")
    return failed


def odd_girth_closed_witness(target: int) -> GPParams:
    """The first Pet(n,k), by n then k, whose odd girth is at least `target`."""
    if target < 3:
        raise InvalidParameterError(f"target odd girth must be >= 3, got {target}")
    n = 5
    while True:
        for k in range(2, n // 2 + 1):
            params = GPParams(n, k)
            g_odd = odd_girth_formula(params)
            if g_odd is not None and g_odd >= target:
                return params
        n += 1


# Cross-validation

def validation_pairs(n_max: int) -> List[GPParams]:
    return [GPParams(n, k) for n in range(5, n_max + 1) for k in range(2, n // 2 + 1)]


def validate_pair(params: GPParams) -> ValidationRow:
    trace = formula_trace(params)
    bfs = odd_girth_bfs(build_petersen(params), roots=params.orbit_roots())
    bounds_ok = girth_bounds(params).holds if trace is not None else None
    return ValidationRow(n=params.n, k=params.k, formula=trace.chosen if trace else None,
                         ip=odd_girth_from_ip(params), bfs=bfs, girth_bounds_ok=bounds_ok, trace=trace)


def iter_cross_validate(n_max: int, jobs: int = 1) -> Iterator[ValidationRow]:
    """Yield validation rows in (n, k) order; `jobs` > 1 spreads them over processes."""
    pairs = validation_pairs(n_max)
    if jobs <= 1:
        yield from map(validate_pair, pairs)
        return
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        yield from executor.map(validate_pair, pairs, chunksize=64)


def cross_validate(n_max: int, jobs: int = 1) -> ValidationReport:
    return ValidationReport(n_max=n_max, rows=tuple(iter_cross_validate(n_max, jobs)))
