import itertools
from fractions import Fraction

import pytest

from diffalg.carriers import random_poly
from diffalg.errors import NonLinearImage, UnboundVariable
from diffalg.polynomial import (
    LinearMap,
    Poly,
    Tensor,
    coderive,
    derive,
    derive_twice,
    eta,
    euler,
    flat,
    map_linear,
    partial,
    rename_vars,
    sharp,
    substitute,
    unit_poly,
)
from diffalg.rng import SplitMix64

x, y, z = eta("x"), eta("y"), eta("z")


class TestRingOps:
    def test_add(self):
        assert (x + 1) + (-1) == x
        p = x * y + 2
        assert Poly.zero() + p == p
        assert x ** 2 + x ** 2 == 2 * x ** 2

    def test_mul(self):
        assert (x + 1) * (x - 1) == x ** 2 - 1
        p = 3 * x * y - y
        assert unit_poly() * p == p
        # (x+y)^2 expanded by hand
        assert (x + y) ** 2 == x ** 2 + 2 * x * y + y ** 2

    def test_mul_commutative_associative(self):
        rng = SplitMix64(3)
        for _ in range(25):
            p, q, r = (random_poly(rng, 3) for _ in range(3))
            assert p * q == q * p
            assert (p * q) * r == p * (q * r)

    def test_scalar_promotion(self):
        assert Fraction(1, 2) * x + Fraction(1, 2) * x == x
        assert x * 0 == Poly.zero()
        assert Poly.const(5) == 5
        assert Poly.zero() == 0

    def test_pow(self):
        assert x ** 0 == 1
        assert (x + 1) ** 3 == x ** 3 + 3 * x ** 2 + 3 * x + 1
        with pytest.raises(ValueError):
            x ** -1

    def test_degenerate_inputs(self):
        assert Poly.zero().is_zero()
        assert derive(Poly.zero()).is_zero()
        assert substitute(Poly.zero(), {"x": y}) == 0
        assert Poly.const(0) == Poly.zero()


class TestSubstitute:
    def test_expansion(self):
        X = eta("X")
        assert substitute(X ** 2, {"X": x + y}) == x ** 2 + 2 * x * y + y ** 2

    def test_identity_env(self):
        p = x ** 2 * y - 3 * z
        assert substitute(p, {}) == p
        assert substitute(p, {"x": x}) == p

    def test_constants_pass_through(self):
        X, Y = eta("X"), eta("Y")
        assert substitute(X * Y, {"X": Poly.const(2), "Y": z}) == 2 * z

    def test_ring_morphism(self):
        rng = SplitMix64(11)
        env = {"w": x + y, "x": y ** 2, "y": Poly.const(3), "z": x * z}
        for _ in range(20):
            p, q = random_poly(rng, 3), random_poly(rng, 3)
            assert substitute(p * q, env) == substitute(p, env) * substitute(q, env)
            assert substitute(p + q, env) == substitute(p, env) + substitute(q, env)
        assert substitute(unit_poly(), env) == 1

    def test_unit_triangle(self):
        p = x ** 2 + y
        assert substitute(eta("X"), {"X": p}) == p


class TestMapLinear:
    def test_expand(self):
        u, v = eta("u"), eta("v")
        f = LinearMap({"x": u + v, "y": u})
        # (u+v)^2 * u expanded by hand
        want = u ** 3 + 2 * u ** 2 * v + u * v ** 2
        assert map_linear(x ** 2 * y, f) == want

    def test_identity_and_zero(self):
        p = x ** 2 * y + 3 * x
        assert map_linear(p, LinearMap({})) == p
        assert map_linear(x, LinearMap({"x": Poly.zero()})) == 0

    def test_rejects_nonlinear(self):
        with pytest.raises(NonLinearImage):
            map_linear(x, LinearMap({"x": x ** 2}))
        with pytest.raises(NonLinearImage):
            map_linear(x, LinearMap({"x": x + 1}))

    def test_preserves_products(self):
        rng = SplitMix64(5)
        f = LinearMap({"w": x, "x": 2 * y, "y": y - z, "z": Poly.variable("w")})
        for _ in range(20):
            p, q = random_poly(rng, 3), random_poly(rng, 3)
            assert map_linear(p * q, f) == map_linear(p, f) * map_linear(q, f)
        assert map_linear(unit_poly(), f) == 1


class TestDerive:
    def test_partials_by_hand(self):
        t = derive(x ** 2 * y)
        want = Tensor.of(2 * x * y, "x") + Tensor.of(x ** 2, "y")
        assert t == want

    def test_constant_rule(self):
        assert derive(Poly.const(7)).is_zero()
        assert derive(unit_poly()).is_zero()

    def test_linear_rule(self):
        assert derive(x) == Tensor.of(unit_poly(), "x")

    def test_coderive(self):
        assert coderive(Tensor.of(x + y, "x")) == x ** 2 + x * y
        assert coderive(Tensor.zero()) == 0
        t = Tensor.of(unit_poly(), "x") + Tensor.of(unit_poly(), "y")
        assert coderive(t) == x + y

    def test_partial(self):
        assert partial(x ** 2 * y, "x") == 2 * x * y
        assert partial(x ** 2 * y, "y") == x ** 2
        assert partial(x, "y") == 0


class TestEuler:
    def test_examples(self):
        assert euler(x ** 2 * y) == 3 * x ** 2 * y
        assert euler(Poly.const(9)) == 0
        assert euler(x + y) == x + y

    def test_degree_scaling_exhaustive(self):
        for degs in itertools.product(range(4), repeat=3):
            m = Poly.monomial({"x": degs[0], "y": degs[1], "z": degs[2]})
            assert euler(m) == sum(degs) * m


class TestFlatSharp:
    def test_flat_examples(self):
        assert flat({"x": unit_poly()}, x ** 2) == 2 * x
        assert flat({"x": y ** 2}, Poly.const(5)) == 0
        assert flat({"x": x}, x ** 3) == 3 * x ** 3
        assert flat({"x": x}, x ** 3) == euler(x ** 3)

    def test_flat_unbound(self):
        with pytest.raises(UnboundVariable):
            flat({"x": y}, x * y)

    def test_flat_is_derivation(self):
        rng = SplitMix64(17)
        images = {"w": x * y, "x": Poly.const(1), "y": z ** 2, "z": x + y}
        for _ in range(20):
            p, q = random_poly(rng, 3), random_poly(rng, 3)
            lhs = flat(images, p * q)
            rhs = p * flat(images, q) + flat(images, p) * q
            assert lhs == rhs

    def test_flat_chain_rule_two_ways(self):
        # differentiating after substitution agrees with substituting the
        # partials and differentiating the images
        rng = SplitMix64(19)
        images = {"w": x * y, "x": unit_poly(), "y": z ** 2, "z": x + y}
        for _ in range(20):
            p = random_poly(rng, 2, pool=("X1", "X2"), max_degree=3)
            env = {v: random_poly(rng, 2, max_degree=2) for v in ("X1", "X2")}
            lhs = flat(images, substitute(p, env))
            rhs = Poly.zero()
            for v in ("X1", "X2"):
                dp = partial(p, v)
                if not dp.is_zero():
                    rhs = rhs + substitute(dp, env) * flat(images, env[v])
            assert lhs == rhs

    def test_sharp_examples(self):
        ident = LinearMap({})
        assert sharp(ident, x ** 2 * y) == 3 * x ** 2 * y  # identity gives euler
        swap = LinearMap({"x": y, "y": x})
        assert sharp(swap, x ** 2) == 2 * x * y
        assert sharp(LinearMap({"x": Poly.zero(), "y": Poly.zero()}), x * y) == 0

    def test_sharp_rejects_nonlinear(self):
        with pytest.raises(NonLinearImage):
            sharp(LinearMap({"x": x ** 2}), x ** 2)

    def test_sharp_restricted_to_generators_recovers_map(self):
        g = LinearMap({"x": y, "y": x + z, "z": 2 * z})
        for v in ("x", "y", "z"):
            assert sharp(g, eta(v)) == g.image(v)


class TestAxioms:
    """The five defining rules of the total-derivative tensor."""

    def test_leibniz(self):
        rng = SplitMix64(23)
        for _ in range(50):
            p, q = random_poly(rng), random_poly(rng)
            assert derive(p * q) == derive(p).scale_poly(q) + derive(q).scale_poly(p)

    def test_chain(self):
        rng = SplitMix64(29)
        X1, X2 = eta("X1"), eta("X2")
        for _ in range(30):
            p = random_poly(rng, 3, pool=("X1", "X2"), max_degree=3)
            env = {"X1": random_poly(rng, 2, max_degree=2), "X2": random_poly(rng, 2, max_degree=2)}
            lhs = derive(substitute(p, env))
            rhs = Tensor.zero()
            for v in ("X1", "X2"):
                dp = partial(p, v)
                if not dp.is_zero():
                    rhs = rhs + derive(env[v]).scale_poly(substitute(dp, env))
            assert lhs == rhs

    def test_interchange(self):
        rng = SplitMix64(31)
        for _ in range(50):
            p = random_poly(rng)
            grid = derive_twice(p)
            assert grid == {(m, vi, vj): c for (m, vj, vi), c in grid.items()}

    def test_naturality_of_derive(self):
        rng = SplitMix64(37)
        f = LinearMap({"w": x + y, "x": 2 * z, "y": y, "z": Poly.variable("w") - z})
        for _ in range(30):
            p = random_poly(rng, 3)
            lhs = derive(map_linear(p, f))
            rhs = derive(p).map_poly(lambda q: map_linear(q, f)).map_var(f)
            assert lhs == rhs


class TestRenameVars:
    def test_rename(self):
        assert rename_vars(x ** 2 * y, lambda v: v.upper()) == eta("X") ** 2 * eta("Y")

    def test_merging_collisions(self):
        assert rename_vars(x * y, lambda v: "t") == eta("t") ** 2


def test_str_canonical_order():
    p = 2 * x + x ** 2 + 1
    assert str(p) == "x^2 + 2*x + 1"
    assert str(Poly.zero()) == "0"
    # terms sort descending on (degree, variable sequence); negative
    # coefficients keep their sign inside " + " joins
    assert str(x - y) == "-1*y + x"
