"""Function fields of quadrics, splitting patterns, and Witt indices,
checked against hand-derived frozen values and structural properties."""

import random

import pytest

from quasiform.errors import DimensionTooSmall, IsotropicInput
from quasiform.fieldtower import FieldTower
from quasiform.forms import QuasilinearForm, is_anisotropic, total_index
from quasiform.pfister import quasi_pfister
from quasiform.splitting import (
    check_hl_bound,
    essential_dimension,
    first_witt_index,
    function_field,
    hl_bound,
    splitting_pattern,
    total_index_over,
)

from oracles import FROZEN, sample_monomial_form


@pytest.fixture
def F():
    return FieldTower.rational(("a", "b", "c"))


def pfister2(F):
    return quasi_pfister([F.var("a"), F.var("b")], F)


class TestFunctionField:
    def test_generic_point_is_isotropic(self, F):
        q = pfister2(F)
        ff = function_field(q)
        assert q.over(ff.tower).evaluate(ff.generic_point).is_zero
        assert len(ff.generic_point) == q.dim
        assert ff.generic_point[0].is_one

    def test_tower_shape(self, F):
        q = pfister2(F)
        ff = function_field(q)
        assert ff.tower.depth == F.depth + 1
        assert len(ff.tower.base_vars) == len(F.base_vars) + q.dim - 2
        assert len(ff.fresh_names) == q.dim - 1

    def test_deterministic(self, F):
        q = pfister2(F)
        ff1 = function_field(q)
        ff2 = function_field(q)
        assert ff1.tower == ff2.tower
        assert ff1.generic_point == ff2.generic_point
        assert ff1.fresh_names == ff2.fresh_names

    def test_dimension_one_rejected(self, F):
        with pytest.raises(DimensionTooSmall):
            function_field(QuasilinearForm(F, [F.var("a")]))

    def test_isotropic_rejected(self, F):
        a = F.var("a")
        with pytest.raises(IsotropicInput):
            function_field(QuasilinearForm(F, [a, a ** 3]))

    def test_binary_form_adds_no_transcendentals(self, F):
        q = QuasilinearForm(F, [F.one(), F.var("a")])
        ff = function_field(q)
        assert ff.tower.base_vars == F.base_vars
        assert ff.tower.depth == 1


class TestWittIndices:
    def test_frozen_pfister2(self, F):
        q = pfister2(F)
        assert splitting_pattern(q).dims == FROZEN["pfister2"]["pattern"]
        assert first_witt_index(q) == FROZEN["pfister2"]["i1"]
        assert essential_dimension(q) == \
            FROZEN["pfister2"]["essential_dimension"]

    def test_frozen_pfister3(self, F):
        q = quasi_pfister([F.var("a"), F.var("b"), F.var("c")], F)
        assert splitting_pattern(q).dims == FROZEN["pfister3"]["pattern"]
        assert first_witt_index(q) == FROZEN["pfister3"]["i1"]
        assert essential_dimension(q) == \
            FROZEN["pfister3"]["essential_dimension"]

    def test_frozen_five_dim(self, F):
        a, b, c = F.var("a"), F.var("b"), F.var("c")
        q = QuasilinearForm(F, [F.one(), a, b, a * b, c])
        assert first_witt_index(q) == FROZEN["five_dim"]["i1"]
        assert is_anisotropic(q) == FROZEN["five_dim"]["anisotropic"]

    def test_frozen_neighbor(self, F):
        a, b = F.var("a"), F.var("b")
        q = QuasilinearForm(F, [F.one(), a, b])
        assert splitting_pattern(q).dims == \
            FROZEN["three_dim_neighbor"]["pattern"]
        assert first_witt_index(q) == FROZEN["three_dim_neighbor"]["i1"]

    def test_generic_forms(self):
        for n in (2, 3, 4):
            G = FieldTower.rational(tuple(f"t{i}" for i in range(1, n + 1)))
            q = QuasilinearForm(G, [G.var(f"t{i}")
                                    for i in range(1, n + 1)])
            assert splitting_pattern(q).dims == FROZEN["generic"][n]
            assert first_witt_index(q) == 1

    def test_pattern_of_isotropic_form_starts_at_kernel(self, F):
        a = F.var("a")
        q = QuasilinearForm(F, [a, a ** 3, F.var("b")])
        assert splitting_pattern(q).dims == (2, 1)

    def test_total_index_over_function_field(self, F):
        q = pfister2(F)
        assert total_index(q) == 0
        ff = function_field(q)
        assert total_index_over(q, ff.tower) == 2
        # a foreign form keeps its anisotropy over an unrelated field
        other = QuasilinearForm(F, [F.one(), F.var("c")])
        assert total_index_over(other, ff.tower) == 0


class TestHLBound:
    def test_values(self):
        assert hl_bound(2) == 1
        assert hl_bound(3) == 1
        assert hl_bound(4) == 2
        assert hl_bound(5) == 1
        assert hl_bound(6) == 2
        assert hl_bound(8) == 4
        assert hl_bound(9) == 1
        with pytest.raises(DimensionTooSmall):
            hl_bound(1)

    def test_bound_holds_on_samples(self):
        F = FieldTower.rational(("a", "b"))
        rng = random.Random(91)
        checked = 0
        while checked < 15:
            dim = rng.randrange(2, 6)
            form, _ = sample_monomial_form(rng, F, dim, 2)
            if not is_anisotropic(form):
                continue
            assert check_hl_bound(form)
            checked += 1

    def test_pfister_forms_attain_the_bound(self, F):
        q = pfister2(F)
        assert first_witt_index(q) == hl_bound(q.dim)
