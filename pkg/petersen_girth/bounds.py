"""Exact lower and upper bounds on the circular chromatic number of Pet(n,k)."""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import DomainError, InvalidParameterError, VerificationError
from .odd_girth import ip_enumerate, odd_girth_formula
from .petersen import GPParams

PENTAGON = Fraction(5, 2)


@dataclass(frozen=True)
class BoundEntry:
    name: str
    kind: str
    value: Optional[Fraction]
    applicable: bool
    reason: str = ""


@dataclass(frozen=True)
class BoundReport:
    params: GPParams
    odd_girth: int
    entries: Tuple[BoundEntry, ...]

    @property
    def lowers(self) -> List[BoundEntry]:
        return [e for e in self.entries if e.kind == "lower"]

    @property
    def uppers(self) -> List[BoundEntry]:
        return [e for e in self.entries if e.kind == "upper"]

    @property
    def best_lower(self) -> Optional[Fraction]:
        values = [e.value for e in self.lowers if e.applicable]
        return max(values) if values else None

    @property
    def best_upper(self) -> Optional[Fraction]:
        values = [e.value for e in self.uppers if e.applicable]
        return min(values) if values else None

    @property
    def consistent(self) -> bool:
        lower, upper = self.best_lower, self.best_upper
        return lower is None or upper is None or lower <= upper

    @property
    def c5_colorable(self) -> bool:
        """The best upper bound certifies a homomorphism to C_5."""
        return self.best_upper is not None and self.best_upper <= PENTAGON


def lower_compk_a(params: GPParams) -> Optional[Fraction]:
    """2 + 4r/(4r^2+2r+1) when n, k are odd and no trivial solution is optimal."""
    if params.n % 2 == 0 or params.k % 2 == 0:
        return None
    result = ip_enumerate(params)
    if result is None or result.has_trivial_optimum:
        return None
    r = result.solution.r
    return 2 + Fraction(4 * r, 4 * r * r + 2 * r + 1)


def compk_b_value(n: int, inner: int) -> Fraction:
    """2n(K+1)/(Kn + floor(2n/(2K+2))) for the even inner step K."""
    return Fraction(2 * n * (inner + 1), inner * n + (2 * n) // (2 * inner + 2))


def lower_compk_b(params: GPParams) -> Optional[Fraction]:
    if params.k % 2 or odd_girth_formula(params) != params.k + 3:
        return None
    return compk_b_value(params.n, params.k)


def lower_ghebleh(params: GPParams) -> Optional[Fraction]:
    if params.k % 2:
        return None
    return 2 + Fraction(2, params.k + 1)


def proposition_condition(params: GPParams) -> bool:
    """y = n mod (K+2) with 0 < y <= K+1 - n/(K+2); then the odd-girth bound beats 2 + 2/(K+1)."""
    n, inner = params.n, params.k
    if inner % 2:
        raise DomainError(f"the comparison needs an even inner step, got k={inner}")
    y = n % (inner + 2)
    holds = 0 < y <= inner + 1 - Fraction(n, inner + 2)
    if holds and not compk_b_value(n, inner) > lower_ghebleh(params):
        raise VerificationError(f"{params}: odd-girth bound does not exceed 2 + 2/(k+1)", witness=(n, inner))
    return holds


def _even_applicable(params: GPParams) -> bool:
    n, k = params.n, params.k
    return n % 2 == 1 and k % 2 == 0 and k >= 4 and n % (k - 1) in (2 % (k - 1), (k - 3) % (k - 1))


def upper_even(params: GPParams) -> Optional[Fraction]:
    if not _even_applicable(params):
        return None
    n, k = params.n, params.k
    return Fraction(2 * n * (k - 1), (n - 4) * (k - 2))


def upper_odd(params: GPParams) -> Optional[Fraction]:
    n, k = params.n, params.k
    if n % 2 == 0 or k % 2 == 0 or n <= 2 * k + 1:
        return None
    return Fraction(2 * n, n - k)


def chi_c_cycle_power(n: int, k: int) -> Fraction:
    if n % 2 == 0 or k % 2 == 0 or n <= 2 * k + 1:
        raise DomainError(f"chi_c(C_n^k) = 2n/(n-k) needs n and k odd with n > 2k+1, got n={n}, k={k}")
    return Fraction(2 * n, n - k)


def chi_c_subdivision_formula(chi: Fraction, s: int) -> Fraction:
    """Circular chromatic number of G^{1/(2s+1)} from chi = chi_c(G)."""
    chi = Fraction(chi)
    if chi <= 2:
        raise DomainError(f"the subdivision formula needs chi > 2, got {chi}")
    if s < 0:
        raise InvalidParameterError(f"s must be nonnegative, got {s}")
    return (2 * s + 1) * chi / (s * chi + 1)


def chi_c_complement_circular(p: int, q: int) -> Fraction:
    if q < 2 or p < 2 * q:
        raise DomainError(f"complement of K_{{p/q}} needs q >= 2 and p >= 2q, got p={p}, q={q}")
    return Fraction(p, p // q)


def lower_pet3(n: int) -> Optional[Fraction]:
    """Closed form of lower_compk_a for Pet(n,3); None when n is a multiple of 3."""
    if n < 7 or n % 2 == 0:
        raise DomainError(f"Pet(n,3) bound needs odd n >= 7, got n={n}")
    if n % 3 == 1:
        return 2 + Fraction(6 * n - 6, n * n + n + 7)
    if n % 3 == 2:
        return 2 + Fraction(6 * n + 6, n * n + 5 * n + 13)
    return None


def _entry(name: str, kind: str, value: Optional[Fraction], reason: str) -> BoundEntry:
    return BoundEntry(name=name, kind=kind, value=value, applicable=value is not None,
                      reason="" if value is not None else reason)


def bound_report(params: GPParams) -> BoundReport:
    g_odd = odd_girth_formula(params)
    if g_odd is None:
        raise DomainError(f"{params} is bipartite; chi_c = 2")
    entries = (
        _entry("compk_a", "lower", lower_compk_a(params), "needs n, k odd and no trivial optimal solution"),
        _entry("compk_b", "lower", lower_compk_b(params), "needs k even and odd girth k+3"),
        _entry("ghebleh", "lower", lower_ghebleh(params), "needs k even"),
        _entry("upper_even", "upper", upper_even(params), "needs n odd, k even >= 4, n ≡ ±2 (mod k−1)"),
        _entry("upper_odd", "upper", upper_odd(params), "needs n, k odd and n > 2k+1"),
        _entry("three_chromatic", "upper", Fraction(3), ""),
    )
    return BoundReport(params=params, odd_girth=g_odd, entries=entries)
