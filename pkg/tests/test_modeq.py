"""Unit tests for polynomial canonicalization and nullspace mining."""

from fractions import Fraction

import pytest

from rqwork import quantities as Q
from rqwork.characters import RQSpec
from rqwork.modeq import (BivariatePolynomial, MiningError, MiningJob,
                          SeriesRecipe, mine, mine_cross, n_series,
                          verify_relation)


class TestPolynomial:
    def test_canonical_scaling(self):
        a = BivariatePolynomial.build({(2, 0): 2, (0, 1): -2})
        b = BivariatePolynomial.build({(2, 0): 1, (0, 1): -1})
        c = BivariatePolynomial.build({(2, 0): -3, (0, 1): 3})
        assert a == b == c
        assert len({a, b, c}) == 1

    def test_content_cleared(self):
        p = BivariatePolynomial.build({(1, 0): 4, (0, 1): -6})
        assert dict(p.terms) == {(1, 0): 2, (0, 1): -3}

    def test_text_rendering(self):
        p = BivariatePolynomial.build({(4, 0): 1, (0, 2): -1, (4, 4): 4})
        assert str(p) == "u^4 - v^2 + 4*u^4*v^4"

    def test_degree_and_count(self):
        p = BivariatePolynomial.build({(4, 0): 1, (0, 2): -1, (4, 4): 4})
        assert p.total_degree == 8
        assert p.term_count == 3

    def test_evaluate_on_series(self):
        import rqwork.series as S
        u = S.make_series([(1, 1)], 10)
        v = S.make_series([(2, 1)], 20)
        p = BivariatePolynomial.build({(2, 0): 1, (0, 1): -1})
        assert p.evaluate(u, v).is_zero

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            BivariatePolynomial.build({})


class TestMining:
    def test_doubling_equation(self):
        spec = RQSpec(1, 2, 4)
        job = MiningJob(SeriesRecipe(spec, 1), SeriesRecipe(spec, 2),
                        shape="box", size=4)
        report = {}
        found = mine(job, report=report)
        target = BivariatePolynomial.build(
            {(4, 0): 1, (0, 2): -1, (4, 4): 4})
        assert target in found
        assert report["dropped_candidates"] == []
        assert report["polynomials"][0]["terms"]

    def test_cross_mining(self):
        found = mine_cross(SeriesRecipe(RQSpec(1, 3, 10), 1),
                           SeriesRecipe(RQSpec(1, 2, 5), 1), size=4)
        target = BivariatePolynomial.build(
            {(3, 0): 1, (1, 1): -1, (2, 3): 1, (0, 4): 1})
        assert target in found

    def test_too_small_order_raises(self):
        spec = RQSpec(1, 2, 5)
        job = MiningJob(SeriesRecipe(spec, 1), SeriesRecipe(spec, 2),
                        shape="box", size=4, order_steps=10)
        with pytest.raises(MiningError):
            mine(job)

    def test_verify_relation_detects_perturbation(self):
        spec = RQSpec(1, 2, 4)
        u = Q.rq_series(spec, 30)
        v = Q.rq_series(spec, 60).substitute_power(2).truncated(30)
        good = BivariatePolynomial.build({(4, 0): 1, (0, 2): -1, (4, 4): 4})
        assert verify_relation(good, u, v, 25)["verdict"] == "holds_to_order"
        bad = BivariatePolynomial.build({(4, 0): 1, (0, 2): -1, (4, 4): 5})
        verdict = verify_relation(bad, u, v, 25)
        assert verdict["verdict"] == "fails_at"

    def test_verify_relation_respects_truncation(self):
        spec = RQSpec(1, 2, 4)
        u = Q.rq_series(spec, 10)
        v = Q.rq_series(spec, 20).substitute_power(2).truncated(10)
        good = BivariatePolynomial.build({(4, 0): 1, (0, 2): -1, (4, 4): 4})
        with pytest.raises(MiningError):
            verify_relation(good, u, v, 50)


class TestNormalizedSeries:
    def test_n_series_satisfies_doubling(self):
        u = n_series(RQSpec(1, 2, 5), 60)
        v = n_series(RQSpec(1, 2, 5), 30).substitute_power(2)
        poly = BivariatePolynomial.build(
            {(6, 0): 5, (2, 2): -1, (4, 4): -125, (0, 6): 5})
        verdict = verify_relation(poly, u, v, 50)
        assert verdict["verdict"] == "holds_to_order"

    def test_recipe_lattice(self):
        recipe = SeriesRecipe(RQSpec(1, 2, 5), Fraction(1, 2))
        s = recipe.build(Fraction(5))
        assert s.coeff(Fraction(1, 10)) == 1
        assert recipe.to_json()["power"] == "1/2"
