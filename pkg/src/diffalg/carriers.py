"""The shipped differential-algebra carriers for the law harness, plus the
deliberately broken ones used as negative controls.

Carrier elements are drawn with the harness-wide bounds: polynomials with
at most 4 variables, degree at most 4, coefficients with |numerator| <= 9
and denominator <= 4; series with random rational entries up to the
truncation order.  Series carriers install window-restricted equality and
window-truncating multiplication, because each derivation application
costs one order of precision.
"""

from __future__ import annotations

from fractions import Fraction

from . import hurwitz as hz
from . import rota_baxter as rb
from .diff_laws import DiffCarrier
from .free_diff import DVar, d_shift
from .polynomial import LinearMap, Poly, sharp
from .rng import SplitMix64

POLY_POOL = ("w", "x", "y", "z")


def random_fraction(rng: SplitMix64) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 4))


def random_poly(rng: SplitMix64, size: int = 4, pool=POLY_POOL, max_degree: int = 4) -> Poly:
    """Random polynomial: up to ``size`` terms of degree <= max_degree."""
    p = Poly.zero()
    for _ in range(rng.randint(1, max(size, 1))):
        exps: dict = {}
        for _ in range(rng.randint(0, max_degree)):
            v = rng.choice(pool)
            exps[v] = exps.get(v, 0) + 1
        c = random_fraction(rng)
        if c:
            p = p + Poly.monomial(exps, c)
    return p


def random_diffpoly(rng: SplitMix64, size: int = 4, bases=("x", "y"),
                    max_order: int = 2, max_degree: int = 4) -> Poly:
    """Random differential polynomial over derivative variables of bounded
    order."""
    p = Poly.zero()
    for _ in range(rng.randint(1, max(size, 1))):
        exps: dict = {}
        for _ in range(rng.randint(0, max_degree)):
            v = DVar(rng.choice(bases), rng.randint(0, max_order))
            exps[v] = exps.get(v, 0) + 1
        c = random_fraction(rng)
        if c:
            p = p + Poly.monomial(exps, c)
    return p


def random_series(rng: SplitMix64, order: int, flavor: hz.Flavor) -> hz.Series:
    return hz.Series(tuple(random_fraction(rng) for _ in range(order + 1)), flavor)


def _poly_scale(c: Fraction, p):
    return c * p


def poly_sharp_carrier() -> DiffCarrier:
    """Plain polynomials with the derivation induced by the cyclic linear
    variable map w -> x -> y -> z -> w."""
    cycle = LinearMap({
        "w": Poly.variable("x"),
        "x": Poly.variable("y"),
        "y": Poly.variable("z"),
        "z": Poly.variable("w"),
    })
    return DiffCarrier(
        name="poly_sharp",
        zero=Poly.zero(),
        one=Poly.one(),
        add=lambda a, b: a + b,
        mul=lambda a, b: a * b,
        scale=_poly_scale,
        d=lambda p: sharp(cycle, p),
        sample=lambda rng, size: random_poly(rng, size),
        sample_kernel=lambda rng, size: Poly.const(random_fraction(rng)),
    )


def diffpoly_carrier() -> DiffCarrier:
    """Differential polynomials with the shift derivation."""
    return DiffCarrier(
        name="diffpoly",
        zero=Poly.zero(),
        one=Poly.one(),
        add=lambda a, b: a + b,
        mul=lambda a, b: a * b,
        scale=_poly_scale,
        d=d_shift,
        sample=lambda rng, size: random_diffpoly(rng, size),
        sample_kernel=lambda rng, size: Poly.const(random_fraction(rng)),
    )


def _series_carrier(name: str, flavor: hz.Flavor, order: int) -> DiffCarrier:
    def kernel(rng, size):
        coeffs = [random_fraction(rng)] + [Fraction(0)] * order
        return hz.Series(tuple(coeffs), flavor)

    return DiffCarrier(
        name=name,
        zero=Fraction(0) * hz.sunit(order, flavor),
        one=hz.sunit(order, flavor),
        add=lambda a, b: a + b,
        mul=hz.smul_trunc,
        scale=lambda c, s: c * s,
        d=hz.sderive,
        sample=lambda rng, size: random_series(rng, order, flavor),
        eq=lambda a, b: a.window_eq(b),
        sample_kernel=kernel,
    )


def hurwitz_carrier(order: int = 8) -> DiffCarrier:
    """Truncated Hurwitz series over the rationals, derivation = shift."""
    return _series_carrier("hurwitz", hz.Flavor.HURWITZ, order)


def power_carrier(order: int = 8) -> DiffCarrier:
    """Truncated power series over the rationals, derivation = scaled
    shift."""
    return _series_carrier("power", hz.Flavor.POWER, order)


def rota_baxter_carrier() -> DiffCarrier:
    """The shuffle-algebra carrier with the tail derivation."""

    def kernel(rng, size):
        elem = rb.random_rbelem(rng)
        return rb.rb_P(elem)  # images of P have constant tail, so D kills them

    return DiffCarrier(
        name="rota_baxter",
        zero=rb.RBElem.zero(),
        one=rb.RBElem.one(),
        add=lambda a, b: a + b,
        mul=rb.rb_mul,
        scale=lambda c, s: c * s,
        d=rb.rb_D,
        sample=lambda rng, size: rb.random_rbelem(rng),
        sample_kernel=kernel,
    )


# -- negative controls ------------------------------------------------------


def broken_identity_carrier() -> DiffCarrier:
    """D = identity: violates the constant rule (D(1) = 1)."""
    base = poly_sharp_carrier()
    return DiffCarrier(
        name="broken_identity",
        zero=base.zero, one=base.one, add=base.add, mul=base.mul,
        scale=base.scale, d=lambda p: p, sample=base.sample,
    )


def broken_squaring_carrier() -> DiffCarrier:
    """D(p) = p·p: violates the Leibniz rule."""
    base = poly_sharp_carrier()
    return DiffCarrier(
        name="broken_squaring",
        zero=base.zero, one=base.one, add=base.add, mul=base.mul,
        scale=base.scale, d=lambda p: p * p, sample=base.sample,
    )


def broken_unscaled_shift_carrier(order: int = 8) -> DiffCarrier:
    """Power-flavored series with the plain (Hurwitz-style) shift: the
    shift is a derivation for the binomial product but not for the Cauchy
    product, so Leibniz fails."""
    base = power_carrier(order)
    return DiffCarrier(
        name="broken_unscaled_shift",
        zero=base.zero, one=base.one, add=base.add, mul=base.mul,
        scale=base.scale,
        d=lambda s: hz.Series(s.coeffs[1:], s.flavor),
        sample=base.sample, eq=base.eq,
    )


def shipped_carriers(order: int = 8) -> tuple[DiffCarrier, ...]:
    return (
        poly_sharp_carrier(),
        diffpoly_carrier(),
        hurwitz_carrier(order),
        power_carrier(order),
        rota_baxter_carrier(),
    )


def broken_carriers() -> tuple[DiffCarrier, ...]:
    return (
        broken_identity_carrier(),
        broken_squaring_carrier(),
        broken_unscaled_shift_carrier(),
    )
