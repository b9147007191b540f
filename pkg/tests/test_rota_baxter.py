from fractions import Fraction

from diffalg.carriers import rota_baxter_carrier
from diffalg.diff_laws import check_constant_rule, check_kernel_closure, check_leibniz
from diffalg.polynomial import EMPTY_MONO, Poly
from diffalg.rng import SplitMix64
from diffalg.rota_baxter import (
    RBElem,
    check_rota_baxter,
    random_rbelem,
    raw_scale,
    rb_D,
    rb_D_raw,
    rb_mul,
    rb_P,
    shuffle,
    shuffle_term_count,
)
from diffalg.scalars import binom

F = Fraction
x, y = Poly.variable("x"), Poly.variable("y")
a, b, c = Poly.variable("a"), Poly.variable("b"), Poly.variable("c")

MX = (("x", 1),)
MY = (("y", 1),)


def word(*letters):
    return tuple(next(p.terms())[0] for p in letters)


class TestShuffle:
    def test_two_singletons(self):
        combo = shuffle([a], [b])
        assert combo == {word(a, b): F(1), word(b, a): F(1)}

    def test_two_into_one(self):
        combo = shuffle([a, b], [c])
        assert combo == {word(a, b, c): F(1), word(a, c, b): F(1), word(c, a, b): F(1)}

    def test_empty_word_unit(self):
        combo = shuffle([a, b], [])
        assert combo == {word(a, b): F(1)}

    def test_term_count(self):
        for j in range(5):
            for k in range(5):
                u = [Poly.variable(f"u{i}") for i in range(j)]
                v = [Poly.variable(f"v{i}") for i in range(k)]
                assert shuffle_term_count(u, v) == binom(j + k, j)

    def test_multilinear_letters(self):
        # a word with a sum letter equals the sum of monomial-letter words
        assert shuffle([a + b], []) == {word(a): F(1), word(b): F(1)}
        assert shuffle([2 * a], []) == {word(a): F(2)}

    def test_commutative_associative(self):
        rng = SplitMix64(3)
        for _ in range(10):
            s, t, u = (random_rbelem(rng, max_terms=1, max_word=2) for _ in range(3))
            assert rb_mul(s, t) == rb_mul(t, s)
            assert rb_mul(rb_mul(s, t), u) == rb_mul(s, rb_mul(t, u))


class TestProduct:
    def test_tail_only(self):
        s = RBElem.term([], x)
        t = RBElem.term([], y)
        assert rb_mul(s, t) == RBElem.term([], x * y)

    def test_word_only(self):
        s = RBElem.term([a], Poly.one())
        t = RBElem.term([b], Poly.one())
        want = RBElem({(word(a, b), EMPTY_MONO): F(1), (word(b, a), EMPTY_MONO): F(1)})
        assert rb_mul(s, t) == want

    def test_mixed(self):
        s = RBElem.term([], x)
        t = RBElem.term([a], y)
        assert rb_mul(s, t) == RBElem.term([a], x * y)

    def test_unit(self):
        rng = SplitMix64(5)
        for _ in range(10):
            s = random_rbelem(rng)
            assert rb_mul(RBElem.one(), s) == s


class TestP:
    def test_single_append(self):
        assert rb_P(RBElem.term([], x)) == RBElem.term([x], Poly.one())

    def test_append_unit_letter(self):
        got = rb_P(rb_P(RBElem.term([], x)))
        assert got == RBElem.term([x, Poly.one()], Poly.one())

    def test_d_of_p_vanishes(self):
        rng = SplitMix64(7)
        for _ in range(40):
            s = random_rbelem(rng)
            assert rb_D(rb_P(s)).is_zero()

    def test_identity_worked_example(self):
        ea = RBElem.term([], x)
        eb = RBElem.term([], y)
        lhs = rb_mul(rb_P(ea), rb_P(eb))
        want = RBElem({(word(x, y), EMPTY_MONO): F(1), (word(y, x), EMPTY_MONO): F(1)})
        assert lhs == want
        assert rb_P(rb_mul(ea, rb_P(eb))) == RBElem({(word(y, x), EMPTY_MONO): F(1)})
        assert rb_P(rb_mul(rb_P(ea), eb)) == RBElem({(word(x, y), EMPTY_MONO): F(1)})

    def test_identity_unit_tails(self):
        e = RBElem.term([], Poly.one())
        lhs = rb_mul(rb_P(e), rb_P(e))
        rhs = rb_P(rb_mul(e, rb_P(e))) + rb_P(rb_mul(rb_P(e), e))
        assert lhs == rhs
        assert lhs == RBElem({(word(Poly.one(), Poly.one()), EMPTY_MONO): F(2)})

    def test_identity_zero(self):
        zero = RBElem.zero()
        assert rb_mul(rb_P(zero), rb_P(zero)) == RBElem.zero()

    def test_identity_random(self):
        report = check_rota_baxter(60, 11)
        assert report.passed, report.to_json()
        assert report.trials == 60


class TestD:
    def test_raw_form(self):
        got = rb_D_raw(RBElem.term([], x ** 2))
        assert got == {((), MX, "x"): F(2)}

    def test_constant_tail(self):
        assert rb_D(RBElem.term([a, b], Poly.one())).is_zero()
        assert rb_D_raw(RBElem.term([a, b], Poly.one())) == {}

    def test_endomorphism_scales_by_degree(self):
        assert rb_D(RBElem.term([], x ** 2 * y)) == 3 * RBElem.term([], x ** 2 * y)

    def test_raw_leibniz(self):
        s = RBElem.term([], x)
        t = RBElem.term([], y)
        got = rb_D_raw(rb_mul(s, t))
        want = {}
        for key, coeff in raw_scale(rb_D_raw(s), t).items():
            want[key] = want.get(key, 0) + coeff
        for key, coeff in raw_scale(rb_D_raw(t), s).items():
            want[key] = want.get(key, 0) + coeff
        assert got == {((), MY, "x"): F(1), ((), MX, "y"): F(1)}
        assert got == want

    def test_raw_leibniz_random(self):
        rng = SplitMix64(13)
        for _ in range(25):
            s = random_rbelem(rng, max_terms=2, max_word=2)
            t = random_rbelem(rng, max_terms=2, max_word=2)
            got = rb_D_raw(rb_mul(s, t))
            want: dict = {}
            for raw, other in ((rb_D_raw(s), t), (rb_D_raw(t), s)):
                for key, coeff in raw_scale(raw, other).items():
                    acc = want.get(key, 0) + coeff
                    if acc:
                        want[key] = acc
                    elif key in want:
                        del want[key]
            assert got == want

    def test_endomorphism_leibniz(self):
        rng = SplitMix64(17)
        for _ in range(25):
            s = random_rbelem(rng)
            t = random_rbelem(rng)
            assert rb_D(rb_mul(s, t)) == rb_mul(s, rb_D(t)) + rb_mul(rb_D(s), t)


class TestCarrierRegistration:
    def test_constant_and_leibniz_suites(self):
        carrier = rota_baxter_carrier()
        assert check_constant_rule(carrier, 1, 19).passed
        assert check_leibniz(carrier, 60, 19).passed
        assert check_kernel_closure(carrier, 30, 19).passed
