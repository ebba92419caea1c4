"""Builders for agiles, Ramanujan quantities, eta-type series and M(q).

Everything here returns a :class:`FormalSeries` with exact rational
coefficients.  The bottom half of the module is a read-only catalog of
known identities between these objects, each stored as a builder that
produces both sides to a requested order so the equality can be checked
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Dict, Tuple

from . import series as S
from .characters import RQSpec, SpecError, TauTable
from .series import FormalSeries, Rational


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def agile_series(a_exp, p_exp, order) -> FormalSeries:
    """The product (q^(p-a); q^p)_inf (q^a; q^p)_inf, exact to ``order``."""
    a = _frac(a_exp)
    p = _frac(p_exp)
    if not 0 < a < p:
        raise SpecError("agile requires 0 < a < p")
    order = _frac(order)
    return (S.pochhammer_inf(p - a, p, order)
            * S.pochhammer_inf(a, p, order)).truncated(order)


def rq_series(spec: RQSpec, order) -> FormalSeries:
    """q^Q times the agile quotient [a,p;q]/[b,p;q]."""
    order = _frac(order)
    if order <= spec.Q:
        raise SpecError(f"order {order} must exceed the prefactor {spec.Q}")
    # build the quotient with margin for the shift, then truncate back
    num = agile_series(spec.a, spec.p, order)
    den = agile_series(spec.b, spec.p, order)
    shift = S.make_series([(spec.Q, 1)], order)
    return (shift * (num / den)).truncated(order)


def rq_star_series(spec: RQSpec, order) -> FormalSeries:
    """The agile quotient without the q^Q prefactor."""
    order = _frac(order)
    return (agile_series(spec.a, spec.p, order)
            / agile_series(spec.b, spec.p, order)).truncated(order)


def product_over_X(spec: RQSpec, order: int) -> FormalSeries:
    """prod (1-q^n)^X(n), factor by factor with exact arithmetic."""
    table = TauTable(spec)
    result = S.constant(1, order)
    for n in range(1, int(order) + 1):
        x = table.chi(n)
        if x:
            factor = S.make_series([(0, 1), (n, -1)], order)
            result = result * factor if x > 0 else result / factor
    return result.truncated(order)


def log_rq_series(spec: RQSpec, order: int) -> FormalSeries:
    """Formal log of the agile quotient: -sum tau(n) q^n / n."""
    table = TauTable(spec).fill(int(order))
    terms = []
    for n in range(1, int(order) + 1):
        t = table.tau(n)
        if t:
            terms.append((n, Fraction(-t, n)))
    return S.make_series(terms, order)


def m_series(spec: RQSpec, order: int) -> FormalSeries:
    """M(q) = Q - sum tau(n) q^n, the logarithmic q-derivative of R."""
    table = TauTable(spec).fill(int(order))
    terms = [(Fraction(0), spec.Q)]
    for n in range(1, int(order) + 1):
        t = table.tau(n)
        if t:
            terms.append((Fraction(n), -t))
    return S.make_series(terms, order)


def eta_series(kind: str, order: int) -> FormalSeries:
    """f(-q) by the pentagonal expansion, or the divisor sum L1(q).

    ``L`` returns 1 - 24*L1(q).
    """
    order = int(order)
    if kind == "f_minus_q":
        terms = []
        k = 0
        while True:
            for kk in ((k, -k) if k else (0,)):
                e = kk * (3 * kk - 1) // 2
                if e <= order:
                    terms.append((e, (-1) ** (kk % 2)))
            if k * (3 * k - 1) // 2 > order and k * (3 * k + 1) // 2 > order:
                break
            k += 1
        return S.make_series(terms, order)
    if kind in ("L1", "L"):
        sigma = [0] * (order + 1)
        for d in range(1, order + 1):
            for m in range(d, order + 1, d):
                sigma[m] += d
        if kind == "L1":
            terms = [(n, sigma[n]) for n in range(1, order + 1)]
        else:
            terms = [(Fraction(0), 1)]
            terms += [(n, -24 * sigma[n]) for n in range(1, order + 1)]
        return S.make_series(terms, order)
    raise SpecError(f"unknown eta series kind {kind!r}")


def f_minus_q_power(m, order) -> FormalSeries:
    """f(-q^m) truncated at ``order`` (rational m > 0 allowed)."""
    m = _frac(m)
    order = _frac(order)
    base = eta_series("f_minus_q", max(0, ceil(order / m)))
    # trunc is m*ceil(order/m) >= order; keep the margin, callers truncate
    return base.substitute_power(m)


def x_minus_q_power(m, order) -> FormalSeries:
    """X(-q^m) = prod (1 - q^(m(2n+1))), the odd-exponent eta-type product."""
    m = _frac(m)
    return S.pochhammer_inf(m, 2 * m, _frac(order))


@dataclass(frozen=True)
class EtaQuotient:
    """q^prefactor_exp * prod_m f(-q^m)^e_m."""

    prefactor_exp: Fraction
    factors: Tuple[Tuple[Fraction, int], ...]

    @classmethod
    def build(cls, prefactor_exp, factors: Dict) -> "EtaQuotient":
        items = tuple(sorted((_frac(m), int(e)) for m, e in factors.items()))
        return cls(_frac(prefactor_exp), items)


def eta_quotient_series(eq: EtaQuotient, order) -> FormalSeries:
    order = _frac(order)
    rel = order - eq.prefactor_exp
    result = S.make_series([(eq.prefactor_exp, 1)], order)
    for m, e in eq.factors:
        if e == 0:
            continue
        f = f_minus_q_power(m, rel)
        result = result * (f ** e)
    return result.truncated(order)


def normalize_rational_spec(spec: RQSpec):
    """Integer w-spec, substitution exponent and inversion flag.

    Returns (w_spec, s, inverted) with
    ``rq_series(spec)(q) == rq_series(w_spec)(q^(1/s))^(+-1)`` where
    s = a2*b2*p2 (the denominators) and the inversion enforces
    first entry < second entry via the reciprocal law.
    """
    a, b, p = spec.a, spec.b, spec.p
    s = a.denominator * b.denominator * p.denominator
    wa = a.numerator * (s // a.denominator)
    wb = b.numerator * (s // b.denominator)
    wp = p.numerator * (s // p.denominator)
    inverted = wa > wb
    if inverted:
        wa, wb = wb, wa
    return RQSpec(wa, wb, wp), Fraction(1, s), inverted


def normalized_agile_series(a_exp, p_exp, order, power=1) -> FormalSeries:
    """q^(p/12 - a/2 + a^2/(2p)) [a,p;q], optionally at q^power.

    This prefactor makes the agile transform like an eta quotient; the
    quotient of two normalized agiles with the same p is exactly the
    Ramanujan quantity R(a,b,p;q), prefactor included.  Polynomial
    relations between agiles are homogeneous only in this normalization.
    """
    a, p, power = _frac(a_exp), _frac(p_exp), _frac(power)
    order = _frac(order)
    e = power * (p / 12 - a / 2 + a * a / (2 * p))
    rel = order - e
    if rel <= 0:
        rel = power  # degenerate request; one lattice period is enough
    base = agile_series(a, p, rel / power).substitute_power(power)
    pre = S.make_series([(e, 1)], order)
    return (pre * base).truncated(order)


def at_minus_q(s: FormalSeries) -> FormalSeries:
    """The series at -q, signs taken relative to the leading exponent.

    Coefficients at odd integer offsets from the lead flip sign; the
    fractional prefactor q^Q keeps its magnitude, which is the real-branch
    reading of (-q)^Q and the one under which the even-doubling relations
    close.  Requires every exponent to sit an integer above the lead.
    """
    terms = list(s.terms())
    if not terms:
        return s
    lead = terms[0][0]
    out = []
    for e, c in terms:
        k = e - lead
        if k.denominator != 1:
            raise S.SeriesError(
                f"exponent {e} is not an integer offset from lead {lead}")
        out.append((e, c if k.numerator % 2 == 0 else -c))
    return S.make_series(out, _frac(s.trunc))


def abs_leading(s: FormalSeries) -> FormalSeries:
    """Negate the whole series if its leading coefficient is negative."""
    for _, c in s.terms():
        if c:
            return s if c > 0 else -1 * s
    return s


# --------------------------------------------------------------------------
# identity catalog
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class IdentityRecord:
    """One machine-checkable identity: builders for both sides.

    ``status`` is "proved" for identities with a known derivation and
    "conjectured" for empirical ones; ``lattice_denom`` is the natural
    denominator of the q-lattice the identity lives on, so a request for
    N lattice steps is checked to exponent N/lattice_denom.
    """

    id: str
    status: str
    lattice_denom: int
    build: object  # callable order -> (lhs, rhs) FormalSeries pair
    note: str = ""

    def verify(self, steps: int = 200) -> dict:
        order = Fraction(steps, self.lattice_denom)
        # padding absorbs truncation erosion from high powers and shifts,
        # so the full requested range really gets checked
        lhs, rhs = self.build(order + 4)
        diff = lhs + (-1) * rhs
        report = {"id": self.id, "status": self.status,
                  "requested_steps": steps}
        for e, c in diff.terms():
            if c:
                report["first_failure_exponent"] = str(e)
                return report
        checked = min(_frac(lhs.trunc), _frac(rhs.trunc))
        report["verified_order"] = str(checked)
        report["verified_steps"] = int(checked * self.lattice_denom)
        return report


def _pair(lhs, rhs):
    return lhs, rhs


def _monomial(e, order):
    return S.make_series([(_frac(e), 1)], order)


def _cf_product_builder(A: int, B: int):
    """Both sides of the continued-fraction product expansion.

    For a = 2A + 3p/4, b = 2B + p/4, p = 4(A+B) the agile quotient
    equals (1-q^(B-A)) times a quotient of four Pochhammer products, the
    Euler-product form of a known continued fraction.
    """
    p = 4 * (A + B)
    a = 2 * A + 3 * p // 4
    b = 2 * B + p // 4
    g = A + B

    def build(order):
        lhs = rq_star_series(RQSpec(a, b, p), order)
        def poch(e):
            return S.pochhammer_inf(e, 4 * g, order)
        quot = (poch(2 * A + 3 * g) * poch(2 * B + 3 * g)) \
            / (poch(2 * A + g) * poch(2 * B + g))
        rhs = S.make_series([(Fraction(0), 1), (Fraction(B - A), -1)],
                            order) * quot
        return _pair(lhs, rhs.truncated(order))
    return build


def _tau_period_builder(spec: RQSpec):
    def build(order):
        n_max = int(order)
        table = TauTable(spec).fill(int(spec.p) * n_max)
        lhs = S.make_series(
            [(n, table.tau(n)) for n in range(1, n_max + 1)], order)
        rhs = S.make_series(
            [(n, table.tau(int(spec.p) * n)) for n in range(1, n_max + 1)],
            order)
        return _pair(lhs, rhs)
    return build


def _eta(order, prefactor, factors):
    return eta_quotient_series(EtaQuotient.build(prefactor, factors), order)


def identity_registry():
    """The built-in catalog of identities, in verification-ready form.

    Entries marked "proved" must verify at any order; "conjectured" ones
    are empirical observations whose reports carry either the verified
    order or the first failing exponent.
    """
    R = rq_series
    fpow = f_minus_q_power
    xpow = x_minus_q_power
    nag = normalized_agile_series
    entries = []

    def add(id, status, denom, build, note=""):
        entries.append(IdentityRecord(id, status, denom, build, note))

    add("cf-expansion-p12", "proved", 1, _cf_product_builder(1, 2),
        "agile quotient (11,7,12) as a continued-fraction product")
    add("cf-expansion-p16", "proved", 1, _cf_product_builder(1, 3),
        "agile quotient (14,10,16) as a continued-fraction product")
    add("tau-prime-period", "proved", 1, _tau_period_builder(RQSpec(1, 2, 5)),
        "tau(5n) = tau(n); the exact content behind the root-of-unity "
        "product splitting of R(q^5)")

    def b_rr_product(order):
        v = R(RQSpec(1, 2, 5), order)
        return _pair(v * v.substitute_power(2), R(RQSpec(1, 3, 10), order))
    add("rr-product-1310", "proved", 5, b_rr_product,
        "R(q)R(q^2) equals the (1,3,10) quantity")

    def b_agile_quotient_1310(order):
        lhs = _monomial(Fraction(3, 5), order) * (
            agile_series(1, 10, order) / agile_series(3, 10, order))
        v = R(RQSpec(1, 2, 5), order)
        return _pair(lhs.truncated(order), v * v.substitute_power(2))
    add("agile-quotient-1310", "proved", 5, b_agile_quotient_1310,
        "prefactored agile quotient form of the same product")

    def b_agile_product_110(order):
        lhs = agile_series(1, 10, order) * agile_series(3, 10, order)
        rhs = (fpow(1, order) * fpow(10, order)) \
            / (fpow(2, order) * fpow(5, order))
        return _pair(lhs.truncated(order), rhs.truncated(order))
    add("agile-product-110", "proved", 1, b_agile_product_110)

    def b_eta_126(order):
        return _pair(R(RQSpec(1, 2, 6), order),
                     _eta(order, Fraction(1, 4), {1: 1, 6: 2, 2: -2, 3: -1}))
    add("eta-form-126", "proved", 4, b_eta_126)

    def b_eta_inv_y(order):
        lhs = _monomial(Fraction(1, 8), order) / R(RQSpec(1, 2, 4), order)
        rhs = fpow(2, order) * xpow(2, order) ** 2 / fpow(1, order)
        return _pair(lhs.truncated(order), rhs.truncated(order))
    add("eta-form-inv-124", "proved", 8, b_eta_inv_y,
        "reciprocal of the octic quantity as an eta and odd-product form")

    def b_eta_136(order):
        rhs = _monomial(Fraction(1, 3), order) * fpow(1, order) \
            * fpow(6, order) / (fpow(2, order) * fpow(3, order)
                                * xpow(3, order) ** 2)
        return _pair(R(RQSpec(1, 3, 6), order), rhs.truncated(order))
    add("eta-form-136", "proved", 3, b_eta_136,
        "cubic continued fraction as an eta and odd-product quotient")

    def b_eta_236(order):
        rhs = _monomial(Fraction(1, 12), order) * fpow(2, order) \
            / (fpow(6, order) * xpow(3, order) ** 2)
        return _pair(R(RQSpec(2, 3, 6), order), rhs.truncated(order))
    add("eta-form-236", "proved", 12, b_eta_236)

    def _ten_eta(order):
        return (fpow(1, order) * fpow(10, order) ** 2) \
            / (fpow(2, order) ** 2 * fpow(5, order))

    def b_sq_1210(order):
        v = R(RQSpec(1, 2, 5), order)
        rhs = _monomial(Fraction(1, 2), order) * _ten_eta(order) * v
        return _pair(R(RQSpec(1, 2, 10), order) ** 2, rhs.truncated(order))
    add("square-eta-1210", "proved", 10, b_sq_1210,
        "q^(1/2) prefactor restored; the bare eta form is off by it")

    def b_sq_1410(order):
        v = R(RQSpec(1, 2, 5), order)
        rhs = _monomial(Fraction(1, 2), order) * _ten_eta(order) * v \
            * v.substitute_power(2) ** 2
        return _pair(R(RQSpec(1, 4, 10), order) ** 2, rhs.truncated(order))
    add("square-eta-1410", "proved", 10, b_sq_1410,
        "q^(1/2) prefactor restored")

    def b_sq_2310(order):
        v = R(RQSpec(1, 2, 5), order)
        rhs = (_monomial(Fraction(-1, 2), order) / _ten_eta(order)) * v \
            * v.substitute_power(2) ** 2
        return _pair(R(RQSpec(2, 3, 10), order) ** 2, rhs.truncated(order))
    add("square-eta-2310", "proved", 10, b_sq_2310,
        "q^(-1/2) prefactor restored")

    def b_sq_3410(order):
        v = R(RQSpec(1, 2, 5), order)
        rhs = _monomial(Fraction(1, 2), order) * _ten_eta(order) / v
        return _pair(R(RQSpec(3, 4, 10), order) ** 2, rhs.truncated(order))
    add("square-eta-3410", "proved", 20, b_sq_3410,
        "q^(1/2) prefactor restored")

    def b_agile_110_sq(order):
        v = R(RQSpec(1, 2, 5), order)
        rhs = _monomial(Fraction(-3, 5), order) * v \
            * v.substitute_power(2) * _ten_eta_sym(order)
        return _pair(agile_series(1, 10, order) ** 2, rhs.truncated(order))

    def _ten_eta_sym(order):
        return (fpow(1, order) * fpow(10, order)) \
            / (fpow(2, order) * fpow(5, order))
    add("agile-110-squared", "proved", 5, b_agile_110_sq,
        "square of the radical form for the first decic agile")

    def b_agile_310_sq(order):
        v = R(RQSpec(1, 2, 5), order)
        rhs = _monomial(Fraction(3, 5), order) * _ten_eta_sym(order) \
            / (v * v.substitute_power(2))
        return _pair(agile_series(3, 10, order) ** 2, rhs.truncated(order))
    add("agile-310-squared", "proved", 5, b_agile_310_sq,
        "square of the radical form for the second decic agile")

    def b_rr_recip(order):
        v = R(RQSpec(1, 2, 5), order)
        lhs = v.inverse() - S.constant(1, order) - v
        rhs = fpow(Fraction(1, 5), order) \
            / (_monomial(Fraction(1, 5), order) * fpow(5, order))
        return _pair(lhs.truncated(order), rhs.truncated(order))
    add("rr-reciprocal-sum", "proved", 5, b_rr_recip)

    def b_rr_recip5(order):
        v5 = R(RQSpec(1, 2, 5), order) ** 5
        lhs = v5.inverse() - S.constant(11, order) - v5
        rhs = fpow(1, order) ** 6 / (_monomial(1, order)
                                     * fpow(5, order) ** 6)
        return _pair(lhs.truncated(order), rhs.truncated(order))
    add("rr-reciprocal-sum-5th", "proved", 1, b_rr_recip5)

    def b_agile_modular_p5(order):
        x = nag(1, 5, order)
        y = nag(3, 5, order)
        lhs = x ** 10 - y ** 10 + 11 * (x ** 5 * y ** 5) + x ** 11 * y ** 11
        return _pair(lhs.truncated(order), S.zero(order))
    add("agile-modular-p5", "proved", 60, b_agile_modular_p5,
        "normalized agiles; the fifth-power reciprocal sum in disguise")

    # empirical polynomial relations between quantities and agiles
    def b_poly_1310(order):
        u = R(RQSpec(1, 3, 10), order)
        v = R(RQSpec(1, 2, 5), order)
        lhs = u ** 3 - u * v + u ** 2 * v ** 3 + v ** 4
        return _pair(lhs.truncated(order), S.zero(order))
    add("poly-1310-rr", "conjectured", 5, b_poly_1310)

    def b_minus_q_poly(order):
        v = R(RQSpec(1, 2, 5), order)
        w = at_minus_q(v)  # |R(-q)|; the real branch has R(-q) = -w
        # phases (-1)^(k/5) read as real fifth roots: -1, +1, -1, +1
        lhs = (-1 * v + w - (v ** 5 * w) + 5 * (v ** 4 * w ** 2)
               - 10 * (v ** 3 * w ** 3) + 5 * (v ** 2 * w ** 4)
               - v * w ** 5 - v ** 6 * w ** 5 + v ** 5 * w ** 6)
        return _pair(lhs.truncated(order), S.zero(order))
    add("rr-minus-q-poly", "conjectured", 5, b_minus_q_poly,
        "signed relation between R(q) and R(-q) under the real "
        "fifth-root branch, the reading under which it closes")

    def b_even_doubling_m(order):
        m = m_series(RQSpec(1, 3, 8), int(order))
        lhs = 2 * m.substitute_power(2)
        return _pair(lhs.truncated(order),
                     (m + at_minus_q(m)).truncated(order))
    add("m-even-doubling-138", "conjectured", 1, b_even_doubling_m,
        "doubling law for the log-derivative when a,b odd and p even")

    def b_even_doubling_r(order):
        h = R(RQSpec(1, 3, 8), order)
        lhs = h * abs_leading(at_minus_q(h))
        return _pair(lhs.truncated(order),
                     h.substitute_power(2).truncated(order))
    add("r-even-doubling-138", "conjectured", 2, b_even_doubling_r)

    def b_even_doubling_1310(order):
        u = R(RQSpec(1, 3, 10), order)
        lhs = u * abs_leading(at_minus_q(u))
        return _pair(lhs.truncated(order),
                     u.substitute_power(2).truncated(order))
    add("r-even-doubling-1310", "conjectured", 5, b_even_doubling_1310)

    def b_modular_p6_cubed(order):
        x = nag(1, 6, order, power=3)
        y = nag(3, 6, order)
        lhs = 8 * x ** 9 - y ** 3 + x ** 12 * y ** 3 + x ** 3 * y ** 6
        return _pair(lhs.truncated(order), S.zero(order))
    add("agile-modular-p6-cubed", "conjectured", 12, b_modular_p6_cubed)

    def b_modular_p6_squared(order):
        x = nag(1, 6, order, power=2)
        y = nag(2, 6, order)
        lhs = -9 * x ** 8 + y ** 4 + x ** 12 * y ** 4 - x ** 4 * y ** 8
        return _pair(lhs.truncated(order), S.zero(order))
    add("agile-modular-p6-squared", "conjectured", 6, b_modular_p6_squared)

    def b_modular_p4(order):
        x = nag(1, 4, order)
        y = nag(2, 4, order)
        lhs = 16 * x ** 8 + x ** 16 * y ** 4 - y ** 8
        return _pair(lhs.truncated(order), S.zero(order))
    add("agile-modular-p4", "conjectured", 24, b_modular_p4)

    def b_y_x_product(order):
        yq = R(RQSpec(1, 2, 4), order)
        lhs = (yq ** 16).inverse() - 16 * (yq ** 8).inverse()
        rhs = _monomial(-2, order) * xpow(2, order) ** 24
        return _pair(lhs.truncated(order), rhs.truncated(order))
    add("octic-x-product", "conjectured", 2, b_y_x_product)

    def b_modular_p6(order):
        x = nag(1, 6, order)
        y = nag(3, 6, order)
        lhs = 8 * x ** 3 - y ** 3 + x ** 12 * y ** 3 + x ** 9 * y ** 6
        return _pair(lhs.truncated(order), S.zero(order))
    add("agile-modular-p6", "conjectured", 12, b_modular_p6)

    def b_cubic_x_product(order):
        v = R(RQSpec(1, 3, 6), order)
        one = S.constant(1, order)
        lhs = (one - 8 * v ** 3) / (v ** 9 * (one + v ** 3))
        rhs = _monomial(-3, order) * xpow(3, order) ** 24
        return _pair(lhs.truncated(order), rhs.truncated(order))
    add("cubic-x-product", "conjectured", 3, b_cubic_x_product)

    return entries


def verify_registry(steps: int = 200):
    """Verify every catalog entry; returns the list of report dicts."""
    return [record.verify(steps) for record in identity_registry()]
