"""The shuffle-algebra Rota-Baxter instance.

Carrier: finite linear combinations of (word, tail) pairs, where a word is
a finite sequence of polynomial letters and the tail is a polynomial.
Words are multilinear in their letters, so elements are canonicalized by
expanding every letter and the tail into monomials: stored keys are
(tuple-of-monomials, monomial) with rational coefficients.

The product shuffles the word parts (sum over all interleavings preserving
each word's internal order, counted with multiplicity) and multiplies the
tails.  The operator P appends the tail to the word as a new letter and
resets the tail to 1; it satisfies the Rota-Baxter identity

    P(a)·P(b) = P(a·P(b)) + P(P(a)·b)

exactly (weight 0).  The derivation D differentiates only the tail: in
raw form it produces (word, d tail/dx_j, x_j) triples; collapsed to an
endomorphism it multiplies each partial back by its variable, which on a
monomial tail is just scaling by the tail's total degree.  D and P are
incompatible by construction: D(P(a)) = 0, since P leaves a constant tail.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .polynomial import EMPTY_MONO, Mono, Poly, mono_degree, mono_mul, mono_str

# A word: tuple of letters, each letter a monomial of the polynomial algebra.
Word = tuple


def _interleavings(a: Word, b: Word) -> Iterator[Word]:
    """All interleavings of a and b preserving internal order, with
    multiplicity: exactly binom(|a|+|b|, |a|) sequences are yielded."""
    if not a:
        yield b
        return
    if not b:
        yield a
        return
    for rest in _interleavings(a[1:], b):
        yield (a[0],) + rest
    for rest in _interleavings(a, b[1:]):
        yield (b[0],) + rest


def normalize_word(letters: Sequence) -> dict[Word, Fraction]:
    """Expand a sequence of polynomial letters multilinearly into a linear
    combination of monomial-letter words.  A letter given as a bare
    monomial tuple is taken with coefficient 1; a zero letter kills the
    word."""
    combo: dict[Word, Fraction] = {(): Fraction(1)}
    for letter in letters:
        if isinstance(letter, Poly):
            expansions = list(letter.terms())
        else:
            expansions = [(tuple(letter), Fraction(1))]
        nxt: dict[Word, Fraction] = {}
        for w, c in combo.items():
            for m, cm in expansions:
                key = w + (m,)
                acc = nxt.get(key, 0) + c * cm
                if acc:
                    nxt[key] = acc
                elif key in nxt:
                    del nxt[key]
        combo = nxt
        if not combo:
            break
    return combo


def shuffle(u: Sequence, v: Sequence) -> dict[Word, Fraction]:
    """Shuffle product of two words, as a linear combination of words."""
    out: dict[Word, Fraction] = {}
    for wu, cu in normalize_word(u).items():
        for wv, cv in normalize_word(v).items():
            c = cu * cv
            for w in _interleavings(wu, wv):
                acc = out.get(w, 0) + c
                if acc:
                    out[w] = acc
                elif w in out:
                    del out[w]
    return out


def shuffle_term_count(u: Sequence, v: Sequence) -> Fraction:
    """Number of interleavings counted with multiplicity (sum of shuffle
    coefficients); equals binom(|u|+|v|, |u|) for monic monomial letters."""
    return sum(shuffle(u, v).values(), Fraction(0))


class RBElem:
    """Immutable element of the Rota-Baxter carrier, in canonical form."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        canon: dict = {}
        if terms:
            for key, c in terms.items():
                c = Fraction(c)
                if c:
                    canon[key] = c
        self._terms = canon
        self._hash = None

    @classmethod
    def zero(cls) -> "RBElem":
        return cls()

    @classmethod
    def one(cls) -> "RBElem":
        return cls({((), EMPTY_MONO): Fraction(1)})

    @classmethod
    def term(cls, letters: Sequence, tail: Poly, coeff=1) -> "RBElem":
        """Build coeff · (word, tail), canonicalizing letters and tail."""
        if not isinstance(tail, Poly):
            tail = Poly.const(tail)
        out: dict = {}
        for w, cw in normalize_word(letters).items():
            for m, cm in tail.terms():
                key = (w, m)
                acc = out.get(key, 0) + cw * cm * Fraction(coeff)
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
        return cls(out)

    def terms(self) -> Iterator:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other):
        if not isinstance(other, RBElem):
            return NotImplemented
        out = dict(self._terms)
        for key, c in other._terms.items():
            acc = out.get(key, 0) + c
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
        return RBElem(out)

    def __neg__(self):
        return RBElem({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, RBElem):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, scalar):
        if isinstance(scalar, RBElem):
            return NotImplemented
        scalar = Fraction(scalar)
        if not scalar:
            return RBElem.zero()
        return RBElem({k: scalar * c for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, RBElem):
            return rb_mul(self, other)
        return self.__rmul__(other)

    def __eq__(self, other):
        if not isinstance(other, RBElem):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (w, t) in sorted(self._terms):
            c = self._terms[(w, t)]
            word_s = "[" + ", ".join(mono_str(m) for m in w) + "]"
            parts.append(f"{c}*({word_s}, {mono_str(t)})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"RBElem({self})"


def rb_mul(s: RBElem, t: RBElem) -> RBElem:
    """Bilinear product: shuffle on word parts, monomial product on tails."""
    out: dict = {}
    for (w1, t1), c1 in s.terms():
        for (w2, t2), c2 in t.terms():
            tail = mono_mul(t1, t2)
            c = c1 * c2
            for w in _interleavings(w1, w2):
                key = (w, tail)
                acc = out.get(key, 0) + c
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
    return RBElem(out)


def rb_P(s: RBElem) -> RBElem:
    """The Rota-Baxter operator: append the tail to the word as a new
    letter and reset the tail to 1, extended linearly."""
    out: dict = {}
    for (w, t), c in s.terms():
        key = (w + (t,), EMPTY_MONO)
        acc = out.get(key, 0) + c
        if acc:
            out[key] = acc
        elif key in out:
            del out[key]
    return RBElem(out)


def rb_D(s: RBElem) -> RBElem:
    """The tail derivation as an endomorphism: each partial derivative of
    the tail is multiplied back by its variable, which scales a monomial
    tail by its total degree."""
    out: dict = {}
    for (w, t), c in s.terms():
        deg = mono_degree(t)
        if not deg:
            continue
        key = (w, t)
        acc = out.get(key, 0) + c * deg
        if acc:
            out[key] = acc
        elif key in out:
            del out[key]
    return RBElem(out)


def rb_D_raw(s: RBElem) -> dict:
    """The tail derivation in raw tensor form: a map
    (word, monomial, variable) -> coefficient representing
    sum_j (word, d tail/dx_j, x_j)."""
    out: dict = {}
    for (w, t), c in s.terms():
        exps = dict(t)
        for v, e in t:
            if e == 1:
                del exps[v]
            else:
                exps[v] = e - 1
            key = (w, tuple(sorted(exps.items())), v)
            exps[v] = e
            acc = out.get(key, 0) + c * e
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
    return out


def raw_scale(raw: dict, s: RBElem) -> dict:
    """Multiply a raw tensor by an element on the non-variable slots:
    (w, t, v) · (w', t') = (w shuffled w', t·t', v).  Used to state the
    Leibniz rule for the raw form."""
    out: dict = {}
    for (w1, t1, v), c1 in raw.items():
        for (w2, t2), c2 in s.terms():
            tail = mono_mul(t1, t2)
            c = c1 * c2
            for w in _interleavings(w1, w2):
                key = (w, tail, v)
                acc = out.get(key, 0) + c
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
    return out


def random_rbelem(rng, pool: Sequence[str] = ("x", "y"), max_terms: int = 2,
                  max_word: int = 3, max_tail_deg: int = 2) -> RBElem:
    """Seeded random element: up to max_terms terms, words of at most
    max_word monomial letters, tails of degree at most max_tail_deg."""

    def random_mono(max_deg: int) -> Mono:
        exps: dict = {}
        for _ in range(rng.randint(0, max_deg)):
            v = rng.choice(pool)
            exps[v] = exps.get(v, 0) + 1
        return tuple(sorted(exps.items()))

    out = RBElem.zero()
    for _ in range(rng.randint(1, max_terms)):
        word = tuple(random_mono(2) for _ in range(rng.randint(0, max_word)))
        tail = random_mono(max_tail_deg)
        coeff = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        if coeff:
            out = out + RBElem({(word, tail): coeff})
    return out


def check_rota_baxter(trials: int, seed: int):
    """Verify P(a)P(b) = P(aP(b)) + P(P(a)b) on seeded random elements."""
    from .diff_laws import LawReport
    from .rng import SplitMix64

    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = SplitMix64(seed)
    for i in range(trials):
        a = random_rbelem(rng)
        b = random_rbelem(rng)
        lhs = rb_mul(rb_P(a), rb_P(b))
        rhs = rb_P(rb_mul(a, rb_P(b))) + rb_P(rb_mul(rb_P(a), b))
        if lhs != rhs:
            return LawReport(
                law="rota_baxter_identity",
                trials=i + 1,
                passed=False,
                seed=seed,
                counterexample={"a": str(a), "b": str(b), "lhs": str(lhs), "rhs": str(rhs)},
            )
    return LawReport(law="rota_baxter_identity", trials=trials, passed=True, seed=seed)
