"""Sparse multivariate polynomials over exact rationals, with the
total-derivative tensor.

A polynomial is a finite map from monomials to nonzero rational
coefficients.  A monomial is a sorted tuple of ``(variable, exponent)``
pairs with positive exponents; the empty tuple is the monomial 1.
Variables can be any hashable, mutually comparable values: plain name
strings for ordinary polynomials, ``(name, order)`` pairs for differential
polynomials.  Every operation re-canonicalizes immediately, so two
polynomials are equal as ring elements iff they are equal as values.

Differentiating a polynomial does not produce another polynomial here but a
:class:`Tensor`: a finite sum of (polynomial ⊗ variable) pairs,

    derive(p) = sum_i  dp/dx_i ⊗ x_i.

Multiplying each pair back out (:func:`coderive`) recovers a polynomial;
the composite :func:`euler` scales every monomial by its total degree.
Together these give the derived maps :func:`flat` and :func:`sharp`, which
turn variable assignments and linear endomorphisms into derivations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterator, Mapping

from .errors import NonLinearImage, UnboundVariable

# A monomial: sorted tuple of (variable, positive exponent) pairs.
Mono = tuple
EMPTY_MONO: Mono = ()


def _coerce(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise TypeError(f"expected an exact rational or int, got {type(value).__name__}")


def mono_from_exponents(exponents: Mapping) -> Mono:
    """Canonical monomial from a variable -> exponent mapping."""
    items = []
    for v, e in exponents.items():
        e = int(e)
        if e < 0:
            raise ValueError(f"negative exponent {e} for {v!r}")
        if e:
            items.append((v, e))
    items.sort()
    return tuple(items)


def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


def mono_str(m: Mono) -> str:
    if not m:
        return "1"
    return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in m)


def term_sort_key(m: Mono):
    """Canonical ordering key: (total degree, the (variable, exponent)
    sequence); terms print in descending key order."""
    return (mono_degree(m), m)


class Poly:
    """Immutable sparse polynomial in canonical form."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Mono, Fraction] | None = None):
        canon = {}
        if terms:
            for m, c in terms.items():
                c = _coerce(c)
                if c:
                    canon[m] = c
        self._terms = canon
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def one(cls) -> "Poly":
        return cls({EMPTY_MONO: Fraction(1)})

    @classmethod
    def const(cls, value) -> "Poly":
        return cls({EMPTY_MONO: _coerce(value)})

    @classmethod
    def variable(cls, v) -> "Poly":
        return cls({((v, 1),): Fraction(1)})

    @classmethod
    def monomial(cls, exponents: Mapping, coeff=1) -> "Poly":
        return cls({mono_from_exponents(exponents): _coerce(coeff)})

    # -- inspection --------------------------------------------------------

    def terms(self) -> Iterator[tuple[Mono, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, m: Mono) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def variables(self) -> tuple:
        """All variables occurring in the polynomial, sorted."""
        seen = set()
        for m in self._terms:
            for v, _ in m:
                seen.add(v)
        return tuple(sorted(seen))

    def total_degree(self) -> int:
        """Largest monomial degree; the zero polynomial reports 0."""
        return max((mono_degree(m) for m in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {EMPTY_MONO}

    def constant_value(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        return self._terms[EMPTY_MONO]

    def n_terms(self) -> int:
        return len(self._terms)

    # -- ring structure ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other)
            except TypeError:
                return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            acc = out.get(m, 0) + c
            if acc:
                out[m] = acc
            elif m in out:
                del out[m]
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                scalar = _coerce(other)
            except TypeError:
                return NotImplemented
            if not scalar:
                return Poly.zero()
            return Poly({m: c * scalar for m, c in self._terms.items()})
        out: dict[Mono, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                acc = out.get(m, 0) + c1 * c2
                if acc:
                    out[m] = acc
                elif m in out:
                    del out[m]
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"exponent must be a natural number, got {n!r}")
        out = Poly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._terms == other._terms
        try:
            return self._terms == Poly.const(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, key=term_sort_key, reverse=True):
            c = self._terms[m]
            if not m:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono_str(m))
            else:
                parts.append(f"{c}*{mono_str(m)}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self})"


class LinearMap:
    """A map sending variables to polynomials; absent variables map to
    themselves.  Where an operation needs linearity (functorial renaming,
    :func:`sharp`), the images must be degree-1 with no constant term."""

    __slots__ = ("_images",)

    def __init__(self, images: Mapping | None = None):
        self._images = {}
        if images:
            for v, p in images.items():
                self._images[v] = p if isinstance(p, Poly) else Poly.const(p)

    def image(self, v) -> Poly:
        return self._images.get(v, Poly.variable(v))

    def linear_image(self, v) -> tuple:
        """The image of v as ((variable, coefficient), ...) pairs.

        Raises :class:`NonLinearImage` if the image has a constant term or a
        monomial of degree other than 1.
        """
        p = self.image(v)
        out = []
        for m, c in p.terms():
            if len(m) != 1 or m[0][1] != 1:
                raise NonLinearImage(f"image of {v!r} is not linear: {p}")
            out.append((m[0][0], c))
        return tuple(out)

    def items(self):
        return self._images.items()


def _as_linear_map(f) -> LinearMap:
    return f if isinstance(f, LinearMap) else LinearMap(f)


class Tensor:
    """A finite sum of (polynomial ⊗ variable) pairs with rational
    coefficients, stored with the polynomial slot distributed to monomials:
    keys are (monomial, variable)."""

    __slots__ = ("_pairs", "_hash")

    def __init__(self, pairs: Mapping | None = None):
        canon = {}
        if pairs:
            for key, c in pairs.items():
                c = _coerce(c)
                if c:
                    canon[key] = c
        self._pairs = canon
        self._hash = None

    @classmethod
    def zero(cls) -> "Tensor":
        return cls()

    @classmethod
    def of(cls, p: Poly, v) -> "Tensor":
        """The elementary tensor p ⊗ v, distributed to canonical form."""
        return cls({(m, v): c for m, c in p.terms()})

    def pairs(self) -> Iterator:
        return iter(self._pairs.items())

    def is_zero(self) -> bool:
        return not self._pairs

    def __bool__(self) -> bool:
        return bool(self._pairs)

    def __add__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        out = dict(self._pairs)
        for key, c in other._pairs.items():
            acc = out.get(key, 0) + c
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
        return Tensor(out)

    def __neg__(self):
        return Tensor({k: -c for k, c in self._pairs.items()})

    def __sub__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, scalar):
        scalar = _coerce(scalar)
        if not scalar:
            return Tensor.zero()
        return Tensor({k: scalar * c for k, c in self._pairs.items()})

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self._pairs == other._pairs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._pairs.items()))
        return self._hash

    def scale_poly(self, q: Poly) -> "Tensor":
        """Multiply the polynomial slot of every pair by q."""
        out: dict = {}
        for (m, v), c in self._pairs.items():
            for m2, c2 in q.terms():
                key = (mono_mul(m, m2), v)
                acc = out.get(key, 0) + c * c2
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
        return Tensor(out)

    def map_poly(self, fn: Callable[[Poly], Poly]) -> "Tensor":
        """Apply a linear function to the polynomial slot of every pair."""
        out = Tensor.zero()
        for (m, v), c in self._pairs.items():
            out = out + Tensor.of(fn(Poly({m: c})), v)
        return out

    def map_var(self, f) -> "Tensor":
        """Apply a linear variable map to the variable slot of every pair."""
        f = _as_linear_map(f)
        out: dict = {}
        for (m, v), c in self._pairs.items():
            for w, a in f.linear_image(v):
                key = (m, w)
                acc = out.get(key, 0) + c * a
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
        return Tensor(out)

    def __str__(self) -> str:
        if not self._pairs:
            return "0"
        parts = []
        for (m, v) in sorted(self._pairs, key=lambda k: (k[1], term_sort_key(k[0])), reverse=False):
            c = self._pairs[(m, v)]
            p = Poly({m: c})
            parts.append(f"{p} (x) {v}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"Tensor({self})"


# -- the categorical operations -------------------------------------------


def unit_poly() -> Poly:
    """The constant polynomial 1."""
    return Poly.one()


def eta(v) -> Poly:
    """The polynomial consisting of the single variable v."""
    return Poly.variable(v)


def substitute(p: Poly, env: Mapping) -> Poly:
    """Simultaneous substitution, fully expanded to canonical form.

    Variables missing from env stand for themselves.  Substitution is a
    ring morphism: it preserves sums, products, and the unit.
    """
    out = Poly.zero()
    cache: dict = {}
    for m, c in p.terms():
        acc = Poly.const(c)
        for v, e in m:
            key = (v, e)
            power = cache.get(key)
            if power is None:
                image = env.get(v)
                if image is None:
                    image = Poly.variable(v)
                elif not isinstance(image, Poly):
                    image = Poly.const(image)
                power = image ** e
                cache[key] = power
            acc = acc * power
        out = out + acc
    return out


def rename_vars(p: Poly, fn: Callable) -> Poly:
    """Rebuild p with every variable v replaced by the variable fn(v)."""
    out: dict[Mono, Fraction] = {}
    for m, c in p.terms():
        exps: dict = {}
        for v, e in m:
            w = fn(v)
            exps[w] = exps.get(w, 0) + e
        m2 = tuple(sorted(exps.items()))
        acc = out.get(m2, 0) + c
        if acc:
            out[m2] = acc
        elif m2 in out:
            del out[m2]
    return Poly(out)


def map_linear(p: Poly, f) -> Poly:
    """Apply a linear variable map multiplicatively to every monomial.

    This is the functorial action on polynomials: it preserves products and
    the unit exactly.  Raises :class:`NonLinearImage` if any used variable
    has a non-linear image.
    """
    f = _as_linear_map(f)
    env = {}
    for v in p.variables():
        terms = f.linear_image(v)  # validates linearity
        env[v] = Poly({((w, 1),): c for w, c in terms})
    return substitute(p, env)


def partial(p: Poly, v) -> Poly:
    """Partial derivative of p with respect to the variable v."""
    out: dict[Mono, Fraction] = {}
    for m, c in p.terms():
        exps = dict(m)
        e = exps.get(v)
        if not e:
            continue
        if e == 1:
            del exps[v]
        else:
            exps[v] = e - 1
        m2 = tuple(sorted(exps.items()))
        acc = out.get(m2, 0) + c * e
        if acc:
            out[m2] = acc
        elif m2 in out:
            del out[m2]
    return Poly(out)


def derive(p: Poly) -> Tensor:
    """The total-derivative tensor: sum_i dp/dx_i ⊗ x_i."""
    out: dict = {}
    for m, c in p.terms():
        exps = dict(m)
        for v, e in m:
            if e == 1:
                del exps[v]
            else:
                exps[v] = e - 1
            key = (tuple(sorted(exps.items())), v)
            exps[v] = e  # restore
            acc = out.get(key, 0) + c * e
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
    return Tensor(out)


def coderive(t: Tensor) -> Poly:
    """Multiply each tensor pair back out: sum c · p · v."""
    out: dict[Mono, Fraction] = {}
    for (m, v), c in t.pairs():
        m2 = mono_mul(m, ((v, 1),))
        acc = out.get(m2, 0) + c
        if acc:
            out[m2] = acc
        elif m2 in out:
            del out[m2]
    return Poly(out)


def euler(p: Poly) -> Poly:
    """Derive then multiply back in: scales each monomial by its total
    degree."""
    return coderive(derive(p))


def flat(images: Mapping, p: Poly) -> Poly:
    """The derivation induced by a variable assignment:

        flat(f, p) = sum_i  dp/dx_i · f(x_i).

    Every variable of p must have an image; raises
    :class:`UnboundVariable` otherwise.
    """
    out = Poly.zero()
    for v in p.variables():
        if v not in images:
            raise UnboundVariable(f"no image for variable {v!r}")
    for (m, v), c in derive(p).pairs():
        image = images[v]
        if not isinstance(image, Poly):
            image = Poly.const(image)
        out = out + Poly({m: c}) * image
    return out


def sharp(g, p: Poly) -> Poly:
    """The derivation induced by a linear endomorphism g of the variables:

        sharp(g, p) = sum_i  dp/dx_i · g(x_i),

    computed as derive, apply g in the variable slot, multiply back in.
    The identity map gives :func:`euler`.
    """
    return coderive(derive(p).map_var(g))


def derive_twice(p: Poly) -> dict:
    """The twice-derived object as a map (monomial, v_j, v_i) -> coefficient,
    representing  sum_{i,j} d²p/dx_i dx_j ⊗ x_j ⊗ x_i."""
    out: dict = {}
    for (m1, vi), c1 in derive(p).pairs():
        for (m2, vj), c2 in derive(Poly({m1: c1})).pairs():
            key = (m2, vj, vi)
            acc = out.get(key, 0) + c2
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
    return out
