"""Period-p characters, divisor sums tau, and the tau-relation scanner.

The character assigns +1 to the residues a and p-a, -1 to b and p-b, and
0 elsewhere; tau(n) is the divisor sum of X(d)*d.  The scanner looks for
rational vectors c with sum_j c[j] tau(j n) = 0 for all sampled n, the
machine version of solving that linear system over a table of tau values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional

from .linalg import nullspace_rational, solve_exact


class SpecError(ValueError):
    pass


def _as_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class RQSpec:
    """The triple (a, b, p) of positive rationals defining a quantity.

    The derived exponent Q = -(a-b)/2 + (a^2-b^2)/(2p) is the power of q
    in front of the agile quotient; the sign convention is pinned so that
    the (1,2,5) spec gives the classical q^(1/5) prefactor.
    """

    a: Fraction
    b: Fraction
    p: Fraction

    def __init__(self, a, b, p):
        a, b, p = _as_fraction(a), _as_fraction(b), _as_fraction(p)
        if a <= 0 or b <= 0 or p <= 0:
            raise SpecError("spec entries must be positive")
        if a == b:
            raise SpecError("degenerate spec a == b (quantity is constant 1)")
        if a >= p or b >= p:
            raise SpecError("spec requires a < p and b < p")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "p", p)

    @property
    def Q(self) -> Fraction:
        return -(self.a - self.b) / 2 + (self.a ** 2 - self.b ** 2) / (2 * self.p)

    @property
    def is_integer(self) -> bool:
        return all(x.denominator == 1 for x in (self.a, self.b, self.p))

    def as_ints(self):
        if not self.is_integer:
            raise SpecError(f"integer spec required, got {self}")
        return int(self.a), int(self.b), int(self.p)

    def swapped(self) -> "RQSpec":
        return RQSpec(self.b, self.a, self.p)

    def __str__(self):
        return f"({self.a},{self.b},{self.p})"

    @classmethod
    def parse(cls, text: str) -> "RQSpec":
        parts = text.split(",")
        if len(parts) != 3:
            raise SpecError(f"spec must be 'a,b,p', got {text!r}")
        return cls(*(Fraction(part.strip()) for part in parts))


def _residues(spec: RQSpec):
    a, b, p = spec.as_ints()
    plus = {a % p, (p - a) % p}
    minus = {b % p, (p - b) % p}
    clash = plus & minus
    if clash:
        raise SpecError(
            f"character residues collide mod {p}: {sorted(clash)} appear with "
            f"both signs for spec {spec}")
    # a == p-a (or b == p-b) mod p is allowed and counts once, matching the
    # piecewise definition of the character.
    return plus, minus, p


def chi(spec: RQSpec, n: int) -> int:
    """Character value in {-1, 0, +1}; period p in n."""
    plus, minus, p = _residues(spec)
    r = n % p
    if r in plus:
        return 1
    if r in minus:
        return -1
    return 0


@dataclass
class TauTable:
    """Memoized character and divisor-sum values for an integer spec."""

    spec: RQSpec
    chi_row: tuple = field(init=False, repr=False)
    tau_cache: Dict[int, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        plus, minus, p = _residues(self.spec)
        row = [0] * p
        for r in plus:
            row[r] = 1
        for r in minus:
            row[r] = -1
        self.chi_row = tuple(row)

    def chi(self, n: int) -> int:
        p = len(self.chi_row)
        return self.chi_row[n % p]

    def tau(self, n: int) -> int:
        """tau(n) = sum over d | n of X(d)*d, by divisor enumeration."""
        got = self.tau_cache.get(n)
        if got is not None:
            return got
        total = 0
        d = 1
        while d * d <= n:
            if n % d == 0:
                total += self.chi(d) * d
                e = n // d
                if e != d:
                    total += self.chi(e) * e
            d += 1
        self.tau_cache[n] = total
        return total

    def fill(self, n_max: int):
        """Sieve tau for all n <= n_max (faster than per-n enumeration)."""
        totals = [0] * (n_max + 1)
        for d in range(1, n_max + 1):
            x = self.chi(d)
            if x:
                step = x * d
                for m in range(d, n_max + 1, d):
                    totals[m] += step
        for n in range(1, n_max + 1):
            self.tau_cache[n] = totals[n]
        return self


def tau(spec: RQSpec, n: int) -> int:
    return TauTable(spec).tau(n)


@dataclass
class TauRelation:
    """One empirically mined relation sum_j coeffs[j-1] * tau(j n) = 0."""

    spec: RQSpec
    J: int
    n_max: int
    coeffs: List[int]
    status: str  # "empirical" or "re-verified"

    def support(self):
        return [(j + 1, c) for j, c in enumerate(self.coeffs) if c]

    def __str__(self):
        parts = []
        for j, c in self.support():
            term = f"tau({j}n)" if j > 1 else "tau(n)"
            if parts:
                parts.append(f"+ {c}*{term}" if c > 0 else f"- {-c}*{term}")
            else:
                parts.append(f"{c}*{term}")
        return " ".join(parts) + " = 0"

    def to_json(self) -> dict:
        return {
            "spec": str(self.spec),
            "J": self.J,
            "n_max": self.n_max,
            "coeffs": self.coeffs,
            "status": self.status,
        }


def tau_relation_scan(spec: RQSpec, J: int, n_max: int,
                      reverify_factor: int = 4) -> List[TauRelation]:
    """Mine a basis of empirically valid tau relations up to multiplier J.

    Solves sum_{j<=J} c[j] tau(j n) = 0 over n <= n_max exactly, then
    re-checks every basis vector on n_max < n <= reverify_factor*n_max.
    Returned vectors are primitive integers with positive leading entry.
    """
    table = TauTable(spec).fill(J * n_max)
    matrix = [[table.tau(j * n) for j in range(1, J + 1)]
              for n in range(1, n_max + 1)]
    basis = nullspace_rational(matrix)
    relations = []
    hi = reverify_factor * n_max
    if hi > n_max:
        table.fill(J * hi)
    for vec in basis:
        ok = all(
            sum(c * table.tau(j * n) for j, c in enumerate(vec, start=1)) == 0
            for n in range(n_max + 1, hi + 1))
        relations.append(TauRelation(
            spec, J, n_max, list(vec),
            "re-verified" if ok else "empirical"))
    return relations


@dataclass
class DivisorCombination:
    """X written as an integer combination of divisibility indicators.

    ``coeffs[d]`` multiplies the indicator of d | n; the matching product
    representation is prod_d f(-q^d)**coeffs[d].
    """

    spec: RQSpec
    modulus: int
    coeffs: Dict[int, Fraction]

    def eta_exponents(self) -> Dict[int, int]:
        out = {}
        for d, c in self.coeffs.items():
            if c:
                if c.denominator != 1:
                    raise SpecError("non-integer divisor combination")
                out[d] = int(c)
        return out


def _divisors(n: int) -> List[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def decompose_character(spec: RQSpec, G: int) -> Optional[DivisorCombination]:
    """Write X as sum over d | G of b_d * [d divides n], if possible.

    Solves the linear system over one full period and checks it back on
    the period; characters that are genuine Legendre-type twists (for
    example (1,3,5)) admit no such combination and yield None.
    """
    a, b, p = spec.as_ints()
    if p != G:
        raise SpecError(f"period mismatch: spec has p={p}, requested G={G}")
    divs = _divisors(G)
    table = TauTable(spec)
    matrix = []
    rhs = []
    for n in range(1, G + 1):
        matrix.append([1 if n % d == 0 else 0 for d in divs])
        rhs.append(table.chi(n))
    sol = solve_exact(matrix, rhs)
    if sol is None:
        return None
    combo = {d: c for d, c in zip(divs, sol)}
    for n in range(1, G + 1):
        if sum(c for d, c in combo.items() if n % d == 0) != table.chi(n):
            return None
    return DivisorCombination(spec, G, combo)
