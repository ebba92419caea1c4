"""Exact truncated formal series in a fractional power of q.

A :class:`FormalSeries` carries coefficients on the lattice of exponents
``k / denom`` together with an explicit truncation bound.  Coefficients
are exact rationals throughout; a request for a coefficient beyond the
provable truncation raises :class:`TruncationError` instead of silently
returning zero.  The truncation bound shrinks conservatively under
arithmetic (min rule for addition, product rule for multiplication).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Tuple, Union

from ._backend import convolve, reciprocal

try:
    from gmpy2 import mpq as Rational

    COEFF_BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - environment dependent
    Rational = Fraction
    COEFF_BACKEND = "fractions"

RationalLike = Union[int, str, Fraction]


class SeriesError(ValueError):
    pass


class TruncationError(SeriesError):
    """A coefficient beyond the provable truncation order was requested."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, tuple):
        return Fraction(*x)
    return Fraction(x)


def _coeff(x):
    if isinstance(x, (Fraction, int)):
        return Rational(x)
    return Rational(str(x)) if isinstance(x, str) else Rational(x)


class FormalSeries:
    """Truncated series ``sum c_k q^((lead+k)/denom)``.

    Exponent numerators run over ``lead .. lead+len(coeffs)-1``; every
    lattice exponent up to the truncation ``(lead+len(coeffs)-1)/denom``
    is known exactly (including known zeros).  The canonical zero series
    has empty ``coeffs`` and ``lead = trunc_num + 1``.
    """

    __slots__ = ("denom", "lead", "coeffs")

    def __init__(self, denom: int, lead: int, coeffs: Sequence, *, _raw=False):
        if denom <= 0:
            raise SeriesError("denom must be positive")
        if _raw:
            self.denom = denom
            self.lead = lead
            self.coeffs = coeffs
            return
        coeffs = [_coeff(c) for c in coeffs]
        # strip leading zeros so that coeffs[0] != 0 for nonzero series
        k = 0
        while k < len(coeffs) and not coeffs[k]:
            k += 1
        lead += k
        coeffs = coeffs[k:]
        if not coeffs:
            # canonical zero: remember only the truncation
            self.denom = denom
            self.lead = lead
            self.coeffs = ()
            self._reduce_zero()
            return
        self.denom = denom
        self.lead = lead
        self.coeffs = tuple(coeffs)
        self._reduce()

    # -- canonical form -------------------------------------------------

    def _reduce(self):
        """Shrink denom so the lattice is minimal for the actual support."""
        g = self.denom
        for i, c in enumerate(self.coeffs):
            if c:
                g = gcd(g, abs(self.lead + i))
                if g == 1:
                    return
        if g == 1:
            return
        trunc = self.lead + len(self.coeffs) - 1
        new_lead = self.lead // g
        new_trunc = trunc // g  # conservative floor onto the coarse lattice
        new = [Rational(0)] * (new_trunc - new_lead + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                new[(self.lead + i) // g - new_lead] = c
        self.denom //= g
        self.lead = new_lead
        self.coeffs = tuple(new)

    def _reduce_zero(self):
        trunc = self.lead - 1
        if self.denom > 1:
            self.lead = (trunc // self.denom) + 1
            self.denom = 1

    # -- basic queries --------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def order(self) -> int:
        """Relative truncation order N (coeffs are c_0..c_N)."""
        return len(self.coeffs) - 1

    @property
    def trunc(self) -> Fraction:
        """Highest exponent whose coefficient is known."""
        return Fraction(self.lead + len(self.coeffs) - 1, self.denom)

    @property
    def lead_exponent(self) -> Fraction:
        if self.is_zero:
            raise SeriesError("zero series has no leading exponent")
        return Fraction(self.lead, self.denom)

    def coeff(self, exponent: RationalLike):
        """Exact coefficient at ``exponent``; TruncationError beyond trunc."""
        e = _frac(exponent)
        if e > self.trunc:
            raise TruncationError(
                f"coefficient at {e} beyond truncation {self.trunc}")
        num = e * self.denom
        if num.denominator != 1:
            return Rational(0)
        i = int(num) - self.lead
        if i < 0 or i >= len(self.coeffs):
            return Rational(0)
        return self.coeffs[i]

    def terms(self) -> Iterable[Tuple[Fraction, object]]:
        """(exponent, coefficient) pairs with nonzero coefficient."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield Fraction(self.lead + i, self.denom), c

    def __eq__(self, other):
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return (self.denom == other.denom and self.lead == other.lead
                and list(self.coeffs) == list(other.coeffs))

    def __hash__(self):
        return hash((self.denom, self.lead, tuple(self.coeffs)))

    def agrees_with(self, other: "FormalSeries", order: RationalLike) -> bool:
        """True if self-other vanishes at every exponent <= order."""
        diff = self - other
        bound = _frac(order)
        if diff.trunc < bound:
            raise TruncationError(
                f"cannot compare to order {bound}: known only to {diff.trunc}")
        return all(e > bound for e, _ in diff.terms())

    def first_nonzero(self):
        """Leading exponent, or None for the zero series."""
        for e, _ in self.terms():
            return e
        return None

    # -- rendering ------------------------------------------------------

    def __str__(self):
        if self.is_zero:
            return f"0 + O(q^({self.lead}/{self.denom}))"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "1" if i == 0 else f"q^({i}/{self.denom})"
            if c == 1 and i != 0:
                parts.append(f"+ {mono}" if parts else mono)
            elif c == -1 and i != 0:
                parts.append(f"- {mono}" if parts else f"-{mono}")
            else:
                s = str(c)
                if parts:
                    sign = "+ " if not s.startswith("-") else "- "
                    s = s.lstrip("-")
                    body = s if i == 0 else f"{s}*{mono}"
                    parts.append(sign + body)
                else:
                    parts.append(s if i == 0 else f"{s}*{mono}")
        body = " ".join(parts)
        head = f"q^({self.lead}/{self.denom}) * ({body})"
        tail = f"O(q^({self.lead + len(self.coeffs)}/{self.denom}))"
        return f"{head} + {tail}"

    def __repr__(self):
        return (f"FormalSeries(denom={self.denom}, lead={self.lead}, "
                f"order={self.order})")

    # -- lattice helpers ------------------------------------------------

    def rebased(self, denom: int) -> "FormalSeries":
        """Exact copy on the finer lattice ``denom`` (a multiple of ours)."""
        if denom == self.denom:
            return self
        if denom % self.denom:
            raise SeriesError(f"{denom} is not a multiple of {self.denom}")
        m = denom // self.denom
        if self.is_zero:
            out = FormalSeries.__new__(FormalSeries)
            out.denom = denom
            out.lead = (self.lead - 1) * m + m  # trunc scales exactly
            out.coeffs = ()
            return out
        n = (len(self.coeffs) - 1) * m + 1
        new = [Rational(0)] * n
        for i, c in enumerate(self.coeffs):
            new[i * m] = c
        out = FormalSeries.__new__(FormalSeries)
        out.denom = denom
        out.lead = self.lead * m
        out.coeffs = tuple(new)
        return out

    def _aligned(self, other: "FormalSeries"):
        d = self.denom * other.denom // gcd(self.denom, other.denom)
        return self.rebased(d), other.rebased(d), d

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = _as_series(other, like=self)
        a, b, d = self._aligned(other)
        ta = a.lead + len(a.coeffs) - 1
        tb = b.lead + len(b.coeffs) - 1
        trunc = min(ta, tb)
        lead = min(a.lead if a.coeffs else trunc + 1,
                   b.lead if b.coeffs else trunc + 1)
        n = trunc - lead + 1
        if n <= 0:
            return FormalSeries(d, trunc + 1, ())
        out = [Rational(0)] * n
        for i, c in enumerate(a.coeffs):
            j = a.lead + i - lead
            if 0 <= j < n:
                out[j] += c
        for i, c in enumerate(b.coeffs):
            j = b.lead + i - lead
            if 0 <= j < n:
                out[j] += c
        return FormalSeries(d, lead, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        out = FormalSeries.__new__(FormalSeries)
        out.denom = self.denom
        out.lead = self.lead
        out.coeffs = tuple(-c for c in self.coeffs)
        return out

    def __sub__(self, other):
        return self + (-_as_series(other, like=self))

    def __rsub__(self, other):
        return _as_series(other, like=self) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) or type(other) is Rational:
            c = _coeff(other)
            if not c:
                return FormalSeries(self.denom,
                                    self.lead + len(self.coeffs), ())
            out = FormalSeries.__new__(FormalSeries)
            out.denom = self.denom
            out.lead = self.lead
            out.coeffs = tuple(c * x for x in self.coeffs)
            return out
        other = _as_series(other, like=self)
        a, b, d = self._aligned(other)
        if a.is_zero or b.is_zero:
            # zero to the best provable order
            if a.is_zero and b.is_zero:
                lead = min(a.lead + b.lead, a.lead + b.lead)
            elif a.is_zero:
                lead = a.lead + b.lead
            else:
                lead = b.lead + a.lead
            return FormalSeries(d, lead, ())
        n = min(len(a.coeffs), len(b.coeffs))
        out = convolve(list(a.coeffs), list(b.coeffs), n)
        return FormalSeries(d, a.lead + b.lead, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) or type(other) is Rational:
            return self * (Fraction(1, 1) / Fraction(_frac_of(other)))
        other = _as_series(other, like=self)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_series(other, like=self) / self

    def inverse(self) -> "FormalSeries":
        if self.is_zero:
            raise SeriesError("division by zero series")
        inv = reciprocal(list(self.coeffs), len(self.coeffs))
        return FormalSeries(self.denom, -self.lead, inv)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise SeriesError("pow exponent must be an integer")
        if n < 0:
            return self.inverse() ** (-n)
        base = self
        if n == 0:
            return constant(1, self.trunc)
        result = None
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- structural operations ------------------------------------------

    def substitute_power(self, m: RationalLike) -> "FormalSeries":
        """Replace q by q**m (m a positive rational); exact."""
        m = _frac(m)
        if m <= 0:
            raise SeriesError("substitution power must be positive")
        d = self.denom * m.denominator
        step = m.numerator
        if self.is_zero:
            trunc = (self.lead - 1) * step
            return FormalSeries(d, trunc + 1, ())
        n = (len(self.coeffs) - 1) * step + 1
        new = [Rational(0)] * n
        for i, c in enumerate(self.coeffs):
            new[i * step] = c
        return FormalSeries(d, self.lead * step, new)

    def q_derivative(self) -> "FormalSeries":
        """The theta operator q*d/dq: c*q^e -> c*e*q^e."""
        out = [c * Rational(self.lead + i, self.denom) if c else c
               for i, c in enumerate(self.coeffs)]
        return FormalSeries(self.denom, self.lead, out)

    def truncated(self, order: RationalLike) -> "FormalSeries":
        """Forget coefficients beyond ``order`` (shrinks the truncation)."""
        bound = _frac(order)
        if bound >= self.trunc:
            return self
        t = (bound.numerator * self.denom) // bound.denominator
        n = t - self.lead + 1
        if n <= 0:
            return FormalSeries(self.denom, t + 1, ())
        return FormalSeries(self.denom, self.lead, list(self.coeffs[:n]))


def _frac_of(x):
    if type(x) is Rational and Rational is not Fraction:
        return Fraction(int(x.numerator), int(x.denominator))
    return _frac(x)


def _as_series(x, like: FormalSeries) -> FormalSeries:
    if isinstance(x, FormalSeries):
        return x
    c = _coeff(x)
    # constant known to the same absolute truncation as ``like``
    trunc = like.lead + len(like.coeffs) - 1
    if trunc < 0:
        trunc = 0
    out = [Rational(0)] * (trunc + 1)
    out[0] = c
    return FormalSeries(like.denom, 0, out)


# -- public constructors ------------------------------------------------

def make_series(terms, order: RationalLike) -> FormalSeries:
    """Series from (exponent, coefficient) pairs, truncated at ``order``.

    Exponents must be distinct and not exceed ``order``.
    """
    order = _frac(order)
    pairs = [(_frac(e), _coeff(c)) for e, c in terms]
    exps = [e for e, _ in pairs]
    if len(set(exps)) != len(exps):
        raise SeriesError("duplicate exponents")
    if any(e > order for e in exps):
        raise SeriesError("exponent beyond requested order")
    if not pairs:
        d = order.denominator
        t = order.numerator * 1
        return FormalSeries(d, t + 1, ())
    d = 1
    for e in exps + [order]:
        d = d * e.denominator // gcd(d, e.denominator)
    trunc = (order.numerator * d) // order.denominator
    lead = min(int(e * d) for e in exps)
    out = [Rational(0)] * (trunc - lead + 1)
    for e, c in pairs:
        out[int(e * d) - lead] += c
    return FormalSeries(d, lead, out)


def constant(value, order: RationalLike) -> FormalSeries:
    return make_series([(0, value)], order) if value else zero(order)


def zero(order: RationalLike) -> FormalSeries:
    order = _frac(order)
    d = order.denominator
    return FormalSeries(d, order.numerator + 1, ())


def arith(op: str, a: FormalSeries, b) -> FormalSeries:
    """Named dispatch over the ring operations (CLI convenience)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow_int":
        return a ** int(b)
    raise SeriesError(f"unknown operation {op!r}")


def substitute_power(a: FormalSeries, m: RationalLike) -> FormalSeries:
    return a.substitute_power(m)


def q_derivative(a: FormalSeries) -> FormalSeries:
    return a.q_derivative()


def pochhammer_inf(a_exp: RationalLike, p_exp: RationalLike,
                   order: RationalLike) -> FormalSeries:
    """(q^a; q^p)_infinity truncated at ``order``; exact.

    Only finitely many factors reach below any finite order, so the
    truncated product is computed exactly.
    """
    a = _frac(a_exp)
    p = _frac(p_exp)
    order = _frac(order)
    if a <= 0:
        raise SeriesError("first exponent must be positive")
    if p <= 0:
        raise SeriesError("step exponent must be positive")
    result = constant(1, order)
    e = a
    while e <= order:
        result = result * make_series([(0, 1), (e, -1)], order)
        e += p
    return result.truncated(order)
