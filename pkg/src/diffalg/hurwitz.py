"""Truncated Hurwitz series and power series over a carrier algebra.

A series is a window (a_0, ..., a_N) of the first N+1 coefficients of a
sequence valued in some commutative algebra (exact rationals, polynomials,
differential polynomials).  The flavor decides the multiplication:

* Hurwitz:  (f·g)(n) = sum_k  C(n,k) f(k) g(n-k),  derivation = shift,
* power:    (f·g)(n) = sum_k  f(k) g(n-k),         derivation = scaled
  shift (n+1)·f(n+1),

which are the cofree differential algebra and the classical power series
ring on the same carrier.  Over the rationals the two are isomorphic via
:func:`psi` (multiply coefficient n by n!), and that isomorphism
intertwines the two derivations.

Truncation bookkeeping: multiplication preserves the order, each
application of the derivation consumes one coefficient of precision.
Strict operations (:func:`smul`) require equal orders; tests and the law
harness compare series only on the intersection of their windows
(:meth:`Series.window_eq`).

Evaluating a polynomial p at series arguments can be done two ways: with
the ring operations above, or coefficient-by-coefficient with the
recursions :func:`omega_eval` (Hurwitz) and :func:`delta_eval` (power).
The recursions and the ring evaluations agree; that equality is one of the
package's central executable facts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .errors import FlavorMismatch, OrderExhausted, OrderMismatch, UnboundVariable
from .polynomial import Poly, partial
from .scalars import binom, factorial


class Flavor(enum.Enum):
    HURWITZ = "hurwitz"
    POWER = "power"


@dataclass(frozen=True)
class Series:
    """A truncated series: coefficients (a_0, ..., a_N) plus a flavor."""

    coeffs: tuple
    flavor: Flavor

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least the order-0 coefficient")
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def truncate(self, order: int) -> "Series":
        if order < 0:
            raise ValueError("order must be non-negative")
        if order >= self.order:
            return self
        return Series(self.coeffs[: order + 1], self.flavor)

    def window_eq(self, other: "Series") -> bool:
        """Componentwise equality on the intersection of the two windows.
        Mismatched flavors never compare equal."""
        if self.flavor is not other.flavor:
            return False
        n = min(self.order, other.order)
        return all(self.coeffs[i] == other.coeffs[i] for i in range(n + 1))

    def __add__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        if self.flavor is not other.flavor:
            raise FlavorMismatch(f"{self.flavor.value} + {other.flavor.value}")
        n = min(self.order, other.order)
        return Series(tuple(self.coeffs[i] + other.coeffs[i] for i in range(n + 1)), self.flavor)

    def __rmul__(self, scalar):
        if isinstance(scalar, Series):
            return NotImplemented
        return Series(tuple(scalar * a for a in self.coeffs), self.flavor)

    def __mul__(self, other):
        if isinstance(other, Series):
            return smul(self, other)
        return Series(tuple(a * other for a in self.coeffs), self.flavor)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"exponent must be a natural number, got {n!r}")
        out = sunit(self.order, self.flavor)
        for _ in range(n):
            out = smul(out, self)
        return out

    def __str__(self) -> str:
        return "[" + ",".join(str(a) for a in self.coeffs) + "]"

    def __repr__(self) -> str:
        return f"Series({self}, {self.flavor.value})"


def sunit(order: int, flavor: Flavor) -> Series:
    """The multiplicative unit (1, 0, ..., 0) at the given order."""
    if order < 0:
        raise ValueError("order must be non-negative")
    return Series((Fraction(1),) + (Fraction(0),) * order, flavor)


def smul(f: Series, g: Series) -> Series:
    """Flavor-dependent convolution; strict about flavor and order."""
    if f.flavor is not g.flavor:
        raise FlavorMismatch(f"{f.flavor.value} * {g.flavor.value}")
    if f.order != g.order:
        raise OrderMismatch(f"order {f.order} * order {g.order}")
    hurwitz = f.flavor is Flavor.HURWITZ
    out = []
    for n in range(f.order + 1):
        acc = None
        for k in range(n + 1):
            term = f.coeffs[k] * g.coeffs[n - k]
            if hurwitz:
                term = binom(n, k) * term
            acc = term if acc is None else acc + term
        out.append(acc)
    return Series(tuple(out), f.flavor)


def smul_trunc(f: Series, g: Series) -> Series:
    """Multiply after truncating both factors to the shared window."""
    n = min(f.order, g.order)
    return smul(f.truncate(n), g.truncate(n))


def sderive(f: Series) -> Series:
    """The derivation: shift for Hurwitz, (n+1)-scaled shift for power.
    Consumes one order of precision; raises :class:`OrderExhausted` when no
    precision is left."""
    if f.order == 0:
        raise OrderExhausted("cannot derive a series of order 0")
    if f.flavor is Flavor.HURWITZ:
        return Series(f.coeffs[1:], f.flavor)
    return Series(tuple((n + 1) * f.coeffs[n + 1] for n in range(f.order)), f.flavor)


def _eval_at(p: Poly, var_value: Callable):
    """Evaluate p with each variable replaced by var_value(v); the values
    live in any commutative algebra that mixes with rationals."""
    total = Fraction(0)
    for m, c in p.terms():
        acc = c
        for v, e in m:
            value = var_value(v)
            for _ in range(e):
                acc = acc * value
        total = total + acc
    return total


def ring_eval(p: Poly, env: Mapping) -> Series:
    """Evaluate p at series arguments using the series ring operations.

    All series in env must share flavor and order.  Variables of p missing
    from env raise :class:`UnboundVariable`.
    """
    if not env:
        raise ValueError("ring_eval needs at least one series to fix flavor and order")
    first = next(iter(env.values()))
    flavor, order = first.flavor, first.order
    for s in env.values():
        if s.flavor is not flavor:
            raise FlavorMismatch("environment mixes series flavors")
        if s.order != order:
            raise OrderMismatch("environment mixes series orders")

    def var_value(v):
        if v not in env:
            raise UnboundVariable(f"no series for variable {v!r}")
        return env[v]

    total = sunit(order, flavor) * Fraction(0)
    for m, c in p.terms():
        acc = sunit(order, flavor)
        for v, e in m:
            acc = smul(acc, var_value(v) ** e)
        total = total + (c * acc)
    return total


def _check_env(p: Poly, env: Mapping, n: int, flavor: Flavor) -> None:
    if n < 0:
        raise ValueError("component index must be non-negative")
    for v in p.variables():
        if v not in env:
            raise UnboundVariable(f"no series for variable {v!r}")
        s = env[v]
        if s.flavor is not flavor:
            raise FlavorMismatch(f"expected {flavor.value} series for {v!r}")
        if s.order < n:
            raise OrderExhausted(f"series for {v!r} has order {s.order} < {n}")


def omega_eval(p: Poly, env: Mapping, n: int):
    """Coefficient n of the Hurwitz-ring evaluation of p, by the inductive
    recursion:

        w_0(q)     = q evaluated at the 0-components,
        w_{m+1}(q) = sum_{k<=m} C(m,k) sum_j w_k(dq/dx_j) · env(x_j)[m-k+1].

    Memoized per call on (sub-polynomial, k); equals ring_eval(p, env)[n].
    """
    _check_env(p, env, n, Flavor.HURWITZ)
    memo: dict = {}

    def w(q: Poly, k: int):
        key = (q, k)
        if key in memo:
            return memo[key]
        if k == 0:
            val = _eval_at(q, lambda v: env[v].coeffs[0])
        else:
            m = k - 1
            val = Fraction(0)
            for j in range(m + 1):
                bc = binom(m, j)
                for v in q.variables():
                    dq = partial(q, v)
                    if dq.is_zero():
                        continue
                    val = val + bc * (w(dq, j) * env[v].coeffs[m - j + 1])
        memo[key] = val
        return val

    return w(p, n)


def delta_eval(p: Poly, env: Mapping, n: int):
    """Coefficient n of the power-series (Cauchy) evaluation of p.

    The recursion carries the exact rational weight (m-k+1)/(m+1) that the
    scaled-shift derivation forces:

        d_0(q)     = q evaluated at the 0-components,
        d_{m+1}(q) = sum_{k<=m} (m-k+1)/(m+1) sum_j d_k(dq/dx_j) · env(x_j)[m-k+1],

    and equals ring_eval(p, env)[n] for power-flavored environments.
    """
    _check_env(p, env, n, Flavor.POWER)
    memo: dict = {}

    def d(q: Poly, k: int):
        key = (q, k)
        if key in memo:
            return memo[key]
        if k == 0:
            val = _eval_at(q, lambda v: env[v].coeffs[0])
        else:
            m = k - 1
            val = Fraction(0)
            for j in range(m + 1):
                weight = Fraction(m - j + 1, m + 1)
                for v in q.variables():
                    dq = partial(q, v)
                    if dq.is_zero():
                        continue
                    val = val + weight * (d(dq, j) * env[v].coeffs[m - j + 1])
        memo[key] = val
        return val

    return d(p, n)


def diamond(d: Callable, a, order: int) -> Series:
    """The Hurwitz series of iterated derivatives (a, D(a), ..., D^order(a)).

    It converts products to Hurwitz products (the higher-order Leibniz rule
    in series form) and intertwines D with the shift.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    coeffs = [a]
    for _ in range(order):
        coeffs.append(d(coeffs[-1]))
    return Series(tuple(coeffs), Flavor.HURWITZ)


@dataclass(frozen=True)
class SeriesOfSeries:
    """A rectangular grid of carrier elements: the truncated codomain of
    comultiplication."""

    grid: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.grid)
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("grid must be non-empty and rectangular")
        object.__setattr__(self, "grid", rows)

    @property
    def n_rows(self) -> int:
        return len(self.grid) - 1

    @property
    def n_cols(self) -> int:
        return len(self.grid[0]) - 1

    def row_series(self, i: int) -> Series:
        return Series(self.grid[i], Flavor.HURWITZ)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.grid)


def comul(f: Series, rows: int) -> SeriesOfSeries:
    """Comultiplication at truncation: grid[m][n] = f(m+n), for m <= rows
    and n <= order - rows (the valid triangle).  Row 0 recovers f."""
    if f.flavor is not Flavor.HURWITZ:
        raise FlavorMismatch("comultiplication lives on Hurwitz series")
    if rows < 0:
        raise ValueError("rows must be non-negative")
    if rows > f.order:
        raise OrderExhausted(f"rows {rows} exceeds order {f.order}")
    cols = f.order - rows
    return SeriesOfSeries(
        tuple(tuple(f.coeffs[m + n] for n in range(cols + 1)) for m in range(rows + 1))
    )


def psi(f: Series) -> Series:
    """Power -> Hurwitz isomorphism: multiply coefficient n by n!."""
    if f.flavor is not Flavor.POWER:
        raise FlavorMismatch("psi expects a power-flavored series")
    return Series(tuple(factorial(n) * a for n, a in enumerate(f.coeffs)), Flavor.HURWITZ)


def psi_inv(f: Series) -> Series:
    """Hurwitz -> power: divide coefficient n by n! (exact in rationals)."""
    if f.flavor is not Flavor.HURWITZ:
        raise FlavorMismatch("psi_inv expects a Hurwitz-flavored series")
    return Series(
        tuple(Fraction(1, factorial(n)) * a for n, a in enumerate(f.coeffs)), Flavor.POWER
    )


def colift(images: Mapping, carrier, p, order: int) -> Series:
    """The universal map into the Hurwitz algebra determined by a ring
    morphism given on generators: (f(p), f(Dp), f(D²p), ...).

    ``images`` maps variables of the source carrier's elements to values in
    any commutative algebra; variables without an image stand for
    themselves, so the empty map is the identity morphism and recovers
    :func:`diamond`.  Coefficient 0 is f(p), the counit law.
    """
    if order < 0:
        raise ValueError("order must be non-negative")

    def f(q):
        return _eval_at(q, lambda v: images.get(v, Poly.variable(v)))

    coeffs = []
    current = p
    for n in range(order + 1):
        coeffs.append(f(current))
        if n < order:
            current = carrier.d(current)
    return Series(tuple(coeffs), Flavor.HURWITZ)
