"""Field towers F2(vars)(y1, y2, ...) with y_i^2 given, their element
arithmetic, and structural embeddings, cross-checked in GF(2^15)."""

import random

import pytest

from quasiform.errors import (
    DivisionByZero,
    EmbeddingFailure,
    IsSquare,
    NameCollision,
    TowerDepthExceeded,
    UnknownVariable,
    ZeroElement,
)
from quasiform.fieldtower import (
    FieldTower,
    TowerHom,
    extend_inseparable,
    extend_transcendental,
    fresh_names,
    invert,
    sqrt_in_tower,
    square,
    tower_substitute,
)

from oracles import eval_elem, gf_mul, tower_point


@pytest.fixture
def F():
    return FieldTower.rational(("a", "b"))


@pytest.fixture
def K(F):
    # K = F(y) with y^2 = a*b + 1
    a, b = F.var("a"), F.var("b")
    return F.extend_inseparable(a * b + F.one(), "y")


class TestTowerConstruction:
    def test_rational(self, F):
        assert F.base_vars == ("a", "b")
        assert F.depth == 0
        assert F.var("a") * F.var("a") == F.var("a").square()

    def test_unknown_variable(self, F):
        with pytest.raises(UnknownVariable):
            F.var("c")

    def test_extend_transcendental(self, F):
        K = F.extend_transcendental(("u1", "u2"))
        assert K.base_vars == ("a", "b", "u1", "u2")
        assert F.embeds_into(K)
        assert extend_transcendental(F, ["w"]).base_vars == ("a", "b", "w")

    def test_name_collision(self, F, K):
        with pytest.raises(NameCollision):
            F.extend_transcendental(("a",))
        with pytest.raises(NameCollision):
            K.extend_transcendental(("y",))
        a = F.var("a")
        with pytest.raises(NameCollision):
            F.extend_inseparable(a, "b")

    def test_extend_inseparable_rejects_squares(self, F):
        a = F.var("a")
        with pytest.raises(IsSquare):
            F.extend_inseparable(a.square(), "y")
        with pytest.raises(IsSquare):
            F.extend_inseparable(F.one(), "y")
        with pytest.raises(ZeroElement):
            F.extend_inseparable(F.zero(), "y")

    def test_generator_relation(self, F, K):
        a, b = F.var("a"), F.var("b")
        y = K.gen_by_name("y")
        assert y.square() == F.embed(a * b + F.one(), K)
        assert K.depth == 1

    def test_depth_limit(self):
        F = FieldTower.rational(("a",), depth_limit=1)
        a = F.var("a")
        K = F.extend_inseparable(a, "y1")
        theta = K.gen_by_name("y1") + F.embed(a, K) + K.one()
        with pytest.raises(TowerDepthExceeded):
            K.extend_inseparable(theta, "y2")

    def test_prefix_embedding(self, F, K):
        assert F.embeds_into(K)
        assert not K.embeds_into(F)
        a = F.var("a")
        assert F.embed(a, K).square() == F.embed(a.square(), K)


class TestElementArithmetic:
    def test_field_axioms_numeric(self, K):
        rng = random.Random(11)
        y = K.gen_by_name("y")
        a = K.var("a")
        b = K.var("b")
        xs = [y * a + b, (y + a).invert(), a * b.invert() + y,
              K.one(), y.square() * b]
        for _ in range(4):
            point = tower_point(K, rng)
            vals = [eval_elem(x, point) for x in xs]
            for x, vx in zip(xs, vals):
                for z, vz in zip(xs, vals):
                    assert eval_elem(x + z, point) == vx ^ vz
                    assert eval_elem(x * z, point) == gf_mul(vx, vz)

    def test_inverse(self, K):
        y = K.gen_by_name("y")
        a = K.var("a")
        x = y + a
        assert (x * x.invert()).is_one
        assert (invert(x) * x).is_one
        with pytest.raises(ZeroElement):
            K.zero().invert()

    def test_square_and_pow(self, K):
        y = K.gen_by_name("y")
        a = K.var("a")
        x = y * a + K.one()
        assert square(x) == x * x
        assert x ** 3 == x * x * x
        assert x ** 0 == K.one()

    def test_characteristic_two(self, K):
        y = K.gen_by_name("y")
        assert (y + y).is_zero
        x = y + K.var("a")
        assert (x + x).is_zero

    def test_frobenius_is_additive(self, K):
        y = K.gen_by_name("y")
        a, b = K.var("a"), K.var("b")
        p, q = y + a, y * b + K.one()
        assert (p + q).square() == p.square() + q.square()
        assert (p * q).square() == p.square() * q.square()

    def test_squares_drop_into_base(self, K):
        # the square of any element has no generator component
        y = K.gen_by_name("y")
        x = (y * K.var("a") + K.var("b")).square()
        assert set(x.coeffs) <= {0}


class TestSquareRoots:
    def test_sqrt_exists(self, K):
        y = K.gen_by_name("y")
        a = K.var("a")
        x = y * a + K.one()
        assert sqrt_in_tower(x.square()) == x

    def test_sqrt_missing(self, F, K):
        assert sqrt_in_tower(K.var("a")) is None
        # a*b + 1 became a square in K, and so did a*b = (y+1)^2
        ab = K.var("a") * K.var("b")
        assert sqrt_in_tower(ab + K.one()) == K.gen_by_name("y")
        assert sqrt_in_tower(ab) == K.gen_by_name("y") + K.one()
        # a + b stays a non-square: K^2 is spanned by 1 and a*b over F^2
        assert sqrt_in_tower(K.var("a") + K.var("b")) is None
        assert sqrt_in_tower(F.var("a")) is None


class TestFreshNames:
    def test_skips_taken(self, K):
        L = K.extend_transcendental(("u1", "t3"))
        assert fresh_names(L, "u", 2) == ["u2", "u3"]
        assert fresh_names(L, "t", 3) == ["t1", "t2", "t4"]
        # the generator "y" itself does not shadow "y1"
        assert fresh_names(L, "y", 1) == ["y1"]


class TestTowerHom:
    def test_identity_like_substitution(self, F):
        # u -> a*b on F(u); images must satisfy nothing, plain rename
        K = F.extend_transcendental(("u",))
        target = F
        hom = TowerHom(K, target, {"u": F.var("a") * F.var("b")})
        u = K.var("u")
        expr = u * K.var("a") + K.one()
        image = hom.apply(expr)
        assert image == F.var("a").square() * F.var("b") + F.one()

    def test_gen_relation_validated(self, F, K):
        # mapping y to something whose square is not theta must fail
        with pytest.raises(EmbeddingFailure):
            TowerHom(K, F, {"y": F.var("a")})

    def test_gen_image_accepted_when_relation_holds(self, F, K):
        # target: L = F(z) with z^2 = a*b + 1; map y -> z
        a, b = F.var("a"), F.var("b")
        L = F.extend_inseparable(a * b + F.one(), "z")
        hom = TowerHom(K, L, {"y": L.gen_by_name("z")})
        y = K.gen_by_name("y")
        assert hom.apply(y * K.var("a")) == L.gen_by_name("z") * L.var("a")

    def test_unknown_assignment_rejected(self, F, K):
        with pytest.raises(UnknownVariable):
            TowerHom(K, F, {"nope": F.one()})

    def test_wrong_tower_value_rejected(self, F, K):
        with pytest.raises(ValueError):
            TowerHom(K, F, {"y": K.one()})

    def test_tower_substitute_wrapper(self, F):
        K = F.extend_transcendental(("u",))
        expr = K.var("u").square() + K.var("b")
        out = tower_substitute(expr, F, {"u": F.var("a")})
        assert out == F.var("a").square() + F.var("b")

    def test_substitution_is_homomorphism_numeric(self, F, K):
        # check phi(x*z + w) = phi(x)phi(z) + phi(w) numerically
        a, b = F.var("a"), F.var("b")
        L = F.extend_inseparable(a * b + F.one(), "z")
        hom = TowerHom(K, L, {"y": L.gen_by_name("z")})
        y = K.gen_by_name("y")
        xs = [y * K.var("a"), (y + K.var("b")).invert(), K.var("b") + y]
        rng = random.Random(13)
        for _ in range(3):
            point = tower_point(L, rng)
            # same point works for K: same base vars, matching gen value
            point_k = dict(point)
            point_k["y"] = point["z"]
            for x in xs:
                assert eval_elem(hom.apply(x), point) == \
                    eval_elem(x, point_k)


class TestStrings:
    def test_element_str_mentions_generators(self, K):
        y = K.gen_by_name("y")
        s = str(y * K.var("a") + K.one())
        assert "y" in s and "a" in s
