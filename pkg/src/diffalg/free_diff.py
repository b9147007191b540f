"""Free differential algebras: polynomials in derivative-indexed variables.

A differential polynomial is an ordinary :class:`~diffalg.polynomial.Poly`
whose variables are :class:`DVar` values: a base name together with a
derivative order, so ``DVar("x", 2)`` is the second derivative x''.  The
shift derivation bumps one order per Leibniz summand:

    d_shift((x,0)·(y,1)) = (x,1)·(y,1) + (x,0)·(y,2).

The same derivation also arises from the categorical recipe (derive, bump
the tensor variable, multiply back in); :func:`d_shift_via_sharp` computes
it that way and agrees with :func:`d_shift` on every input, which the test
suite uses as an oracle.

On top of the carrier sit the free-algebra structure maps: ``alpha`` embeds
plain polynomials at order 0, ``beta`` flattens one level of nesting (outer
variables whose base names encode inner differential polynomials), and
``extend`` evaluates a differential polynomial in any differential algebra
by sending (x, n) to the n-th derivative of the chosen image of x.
"""

from __future__ import annotations

import json
from typing import Callable, Mapping, NamedTuple

from .errors import MalformedNesting, UnboundVariable
from .polynomial import LinearMap, Poly, derive, coderive, rename_vars, substitute


class DVar(NamedTuple):
    """A derivative-indexed variable: (base name, derivative order)."""

    base: str
    order: int

    def __str__(self) -> str:
        if self.order <= 3:
            return self.base + "'" * self.order
        return f"{self.base}^({self.order})"


def dvar(base: str, order: int = 0) -> Poly:
    """The differential polynomial consisting of one derivative variable."""
    if order < 0:
        raise ValueError(f"derivative order must be non-negative, got {order}")
    return Poly.variable(DVar(base, order))


def d_shift(p: Poly) -> Poly:
    """The shift derivation, directly by the Leibniz expansion.

    On a monomial, each occurrence of a variable (x, n) contributes its
    exponent times the monomial with one factor bumped to (x, n+1).
    """
    out: dict = {}
    for m, c in p.terms():
        exps = dict(m)
        for v, e in m:
            bumped = DVar(v.base, v.order + 1)
            if e == 1:
                del exps[v]
            else:
                exps[v] = e - 1
            exps[bumped] = exps.get(bumped, 0) + 1
            key = tuple(sorted(exps.items()))
            # undo for the next factor
            if exps[bumped] == 1:
                del exps[bumped]
            else:
                exps[bumped] -= 1
            exps[v] = e
            acc = out.get(key, 0) + c * e
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
    return Poly(out)


def d_shift_via_sharp(p: Poly) -> Poly:
    """The shift derivation by the categorical recipe: derive, bump each
    tensor variable's order by one, multiply back in.  Extensionally equal
    to :func:`d_shift`."""
    bump = LinearMap({v: dvar(v.base, v.order + 1) for v in p.variables()})
    return coderive(derive(p).map_var(bump))


def alpha(p: Poly) -> Poly:
    """Include a plain polynomial as a differential polynomial of order 0,
    renaming every variable x to (x, 0).  On a single variable this is the
    generator embedding; on products it is the induced algebra morphism."""
    return rename_vars(p, lambda v: DVar(v, 0))


def natural_map(d: Callable, a, n_max: int) -> list:
    """The derivative tower [a, D(a), D²(a), ..., D^n_max(a)]."""
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    out = [a]
    for _ in range(n_max):
        out.append(d(out[-1]))
    return out


# -- nesting: differential polynomials over differential polynomials -------
#
# An outer variable (E, n) carries an inner differential polynomial
# serialized into its base name E.  The serialization is canonical JSON of
# the sorted term list, so equal inner polynomials encode to equal strings
# and nesting can be iterated (encoded names nest inside encoded names).


def encode_nested(p: Poly) -> str:
    """Serialize a differential polynomial for use as an outer base name."""
    terms_map = dict(p.terms())
    terms = []
    for m in sorted(terms_map):
        c = terms_map[m]
        terms.append([str(c), [[v.base, v.order, e] for v, e in m]])
    return json.dumps(terms, separators=(",", ":"))


def decode_nested(s: str) -> Poly:
    """Inverse of :func:`encode_nested`; raises :class:`MalformedNesting`
    if the string is not a serialized differential polynomial."""
    from fractions import Fraction

    try:
        data = json.loads(s)
        terms = {}
        for coeff_s, mono in data:
            exps = {}
            for base, order, e in mono:
                if not isinstance(base, str) or order < 0 or e <= 0:
                    raise ValueError("bad variable entry")
                v = DVar(base, int(order))
                exps[v] = exps.get(v, 0) + int(e)
            m = tuple(sorted(exps.items()))
            terms[m] = terms.get(m, Fraction(0)) + Fraction(coeff_s)
        return Poly(terms)
    except (ValueError, TypeError, KeyError) as exc:
        raise MalformedNesting(f"not an encoded differential polynomial: {s!r}") from exc


def nest(p: Poly, order: int = 0) -> Poly:
    """The outer differential polynomial consisting of the single variable
    whose base name encodes p, at the given derivative order."""
    return dvar(encode_nested(p), order)


def beta(p: Poly) -> Poly:
    """Flatten one level of nesting: replace each outer variable (E, n) by
    the n-th shift derivative of the inner polynomial encoded by E, then
    expand.  Raises :class:`MalformedNesting` when a base name does not
    decode."""
    env = {}
    inner_cache: dict[str, Poly] = {}
    for v in p.variables():
        inner = inner_cache.get(v.base)
        if inner is None:
            inner = decode_nested(v.base)
            inner_cache[v.base] = inner
        q = inner
        for _ in range(v.order):
            q = d_shift(q)
        env[v] = q
    return substitute(p, env)


def extend(images: Mapping, carrier, p: Poly):
    """Evaluate a differential polynomial in a differential algebra.

    ``images`` assigns a carrier element to each base name; the variable
    (x, n) evaluates to the n-th derivative of images[x] under the
    carrier's derivation.  This is the unique derivation-compatible ring
    morphism extending the assignment.  Raises :class:`UnboundVariable`
    for base names without an image.
    """
    towers: dict[str, list] = {}

    def value(v: DVar):
        tower = towers.get(v.base)
        if tower is None:
            if v.base not in images:
                raise UnboundVariable(f"no image for base name {v.base!r}")
            tower = [images[v.base]]
            towers[v.base] = tower
        while len(tower) <= v.order:
            tower.append(carrier.d(tower[-1]))
        return tower[v.order]

    total = carrier.zero
    for m, c in p.terms():
        acc = carrier.one
        for v, e in m:
            elem = value(v)
            for _ in range(e):
                acc = carrier.mul(acc, elem)
        total = carrier.add(total, carrier.scale(c, acc))
    return total
