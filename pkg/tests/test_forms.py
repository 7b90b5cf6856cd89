"""Quasilinear forms: construction, invariants, isometry, similarity, and
generic subforms, cross-checked against the parity oracle."""

import random

import pytest

from quasiform.errors import (
    BadCodimension,
    DimensionMismatch,
    IsotropicInput,
    ZeroCoefficient,
    ZeroElement,
)
from quasiform.fieldtower import FieldTower
from quasiform.forms import (
    FormInvariants,
    QuasilinearForm,
    anisotropic_part,
    decide_similar,
    generic_subform,
    invariants,
    is_anisotropic,
    is_isometric,
    isotropic_vectors_basis,
    total_index,
)

from oracles import monomial_total_index, sample_monomial_form


@pytest.fixture
def F():
    return FieldTower.rational(("a", "b"))


@pytest.fixture
def elems(F):
    return F.one(), F.var("a"), F.var("b")


class TestConstruction:
    def test_rejects_zero_coefficient(self, F, elems):
        one, a, _ = elems
        with pytest.raises(ZeroCoefficient):
            QuasilinearForm(F, [one, F.zero()])
        with pytest.raises(ZeroCoefficient):
            QuasilinearForm(F, [])

    def test_rejects_foreign_tower(self, F, elems):
        G = FieldTower.rational(("a", "b"))
        K = F.extend_transcendental(("u",))
        with pytest.raises(ValueError):
            QuasilinearForm(F, [K.one()])
        # equal towers are interchangeable
        QuasilinearForm(F, [G.one()])

    def test_evaluate(self, F, elems):
        one, a, b = elems
        q = QuasilinearForm(F, [one, a])
        assert q.evaluate([b, one]) == b.square() + a
        with pytest.raises(DimensionMismatch):
            q.evaluate([one])

    def test_scale_and_subform(self, F, elems):
        one, a, b = elems
        q = QuasilinearForm(F, [one, a, b])
        assert q.scale(a).coeffs == (a, a.square(), a * b)
        assert q.subform([0, 2]).coeffs == (one, b)
        with pytest.raises(ZeroElement):
            q.scale(F.zero())

    def test_over(self, F, elems):
        one, a, b = elems
        K = F.extend_inseparable(a, "y")
        q = QuasilinearForm(F, [one, a]).over(K)
        assert q.field == K
        assert total_index(q) == 1


class TestInvariants:
    def test_against_parity_oracle(self, F):
        rng = random.Random(31)
        for _ in range(50):
            dim = rng.randrange(1, 7)
            form, exps = sample_monomial_form(rng, F, dim, 3)
            inv = invariants(form)
            expected = monomial_total_index(exps)
            assert inv == FormInvariants(dim=dim, total_index=expected,
                                         anisotropic_dim=dim - expected)
            assert is_anisotropic(form) == (expected == 0)

    def test_anisotropic_part(self, F, elems):
        one, a, b = elems
        q = QuasilinearForm(F, [one, a, a ** 3, b])
        part = anisotropic_part(q)
        assert part.dim == 3
        assert is_anisotropic(part)
        assert part.coeffs == (one, a, b)

    def test_isotropic_vectors_evaluate_to_zero(self, F):
        rng = random.Random(32)
        for _ in range(20):
            form, exps = sample_monomial_form(rng, F, rng.randrange(2, 6), 3)
            basis = isotropic_vectors_basis(form)
            assert len(basis) == total_index(form)
            for vec in basis:
                assert form.evaluate(vec).is_zero


class TestIsometry:
    def test_square_scaling_is_isometric(self, F, elems):
        one, a, b = elems
        q = QuasilinearForm(F, [one, a, b])
        assert is_isometric(q, q.scale(b.square()))

    def test_permutation_is_isometric(self, F, elems):
        one, a, b = elems
        q = QuasilinearForm(F, [one, a, b])
        p = QuasilinearForm(F, [b, one, a])
        assert is_isometric(q, p)

    def test_adding_square_multiples_is_isometric(self, F, elems):
        # <1, a> = <1 + a, a> since (x+y, y) is a change of basis with
        # q(x+y, y) = x^2 + (1+a)y^2 ... value sets coincide over squares
        one, a, _ = elems
        q = QuasilinearForm(F, [one, a])
        p = QuasilinearForm(F, [one + a, a])
        assert is_isometric(q, p)

    def test_represented_factor_is_isometric(self, F, elems):
        # <a, a^2> = a<1, a> and a is a value of <1, a>, so they coincide
        one, a, _ = elems
        assert is_isometric(QuasilinearForm(F, [one, a]),
                            QuasilinearForm(F, [a, a.square()]))

    def test_non_isometric(self, F, elems):
        one, a, b = elems
        assert not is_isometric(QuasilinearForm(F, [one, a]),
                                QuasilinearForm(F, [one, b]))
        # b<1, a> is similar to <1, a> but not isometric: b is not a value
        assert not is_isometric(QuasilinearForm(F, [one, a]),
                                QuasilinearForm(F, [b, a * b]))

    def test_dimension_mismatch_is_false(self, F, elems):
        one, a, _ = elems
        assert not is_isometric(QuasilinearForm(F, [one]),
                                QuasilinearForm(F, [one, a]))


class TestSimilarity:
    def test_scaled_form_is_similar(self, F, elems):
        one, a, b = elems
        q = QuasilinearForm(F, [one, a])
        factor = decide_similar(q, q.scale(a))
        assert factor is not None
        assert is_isometric(q.scale(factor), q.scale(a))

    def test_pfister_absorbs_represented_values(self, F, elems):
        one, a, b = elems
        p = QuasilinearForm(F, [one, a, b, a * b])
        factor = decide_similar(p, p.scale(a + b))
        assert factor is not None
        assert is_isometric(p.scale(factor), p.scale(a + b))

    def test_not_similar(self, F, elems):
        one, a, b = elems
        q = QuasilinearForm(F, [one, a])
        p = QuasilinearForm(F, [one, b])
        assert decide_similar(q, p) is None

    def test_errors(self, F, elems):
        one, a, _ = elems
        q = QuasilinearForm(F, [one, a])
        with pytest.raises(DimensionMismatch):
            decide_similar(q, QuasilinearForm(F, [one]))
        iso = QuasilinearForm(F, [a, a ** 3])
        with pytest.raises(IsotropicInput):
            decide_similar(iso, iso)


class TestGenericSubform:
    def test_dimension_and_anisotropy(self, F, elems):
        one, a, b = elems
        q = QuasilinearForm(F, [one, a, b, a * b])
        for j in (1, 2):
            sub = generic_subform(q, j)
            assert sub.dim == q.dim - j
            assert is_anisotropic(sub)

    def test_codimension_zero_is_identity(self, F, elems):
        one, a, _ = elems
        q = QuasilinearForm(F, [one, a])
        assert generic_subform(q, 0) == q

    def test_bad_codimension(self, F, elems):
        one, a, _ = elems
        q = QuasilinearForm(F, [one, a])
        with pytest.raises(BadCodimension):
            generic_subform(q, 1)
        with pytest.raises(BadCodimension):
            generic_subform(q, -1)

    def test_isotropic_input_rejected(self, F, elems):
        one, a, _ = elems
        iso = QuasilinearForm(F, [a, a ** 3, one])
        with pytest.raises(IsotropicInput):
            generic_subform(iso, 1)
