"""A reusable harness for checking derivation laws on any carrier.

A carrier is a behavioral bundle: ring operations, a rational scalar
action, an endomorphism D, and a seeded random-element generator.  Each
check runs a deterministic number of seeded trials and returns a
:class:`LawReport` with the first counterexample on failure; rerunning
with the same (seed, trials) reproduces the identical report.

The laws:

* constant rule        D(1) = 0
* Leibniz rule         D(ab) = a·D(b) + D(a)·b
* higher-order Leibniz D^n(ab) = sum_k C(n,k) D^k(a)·D^(n-k)(b)
* chain rule           D(p(a_1..a_m)) = sum_j (dp/dx_j)(a_1..a_m)·D(a_j)
* higher-order chain   D^(n+1)(p(a⃗)) = sum_k C(n,k) sum_j
                         D^k((dp/dx_j)(a⃗)) · D^(n-k+1)(a_j)
* kernel closure       D(a) = D(b) = 0  implies  D(ab) = 0
* derivation monoid    the pointwise sum of two derivations is one

Chain-rule-style checks take an explicit polynomial p and an environment
mapping its variables to carrier elements; the polynomial is evaluated
through the carrier's own ring operations.  Carriers whose elements are
truncated series compare results only on the shared validity window; the
harness always compares through the carrier's ``eq``.
"""

from __future__ import annotations

import json
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from .errors import UnboundVariable
from .polynomial import Poly, partial
from .rng import SplitMix64
from .scalars import binom


@dataclass(frozen=True)
class LawReport:
    """Outcome of one law check.  ``passed`` is true iff no counterexample
    was found; ``skipped`` marks checks whose precondition failed."""

    law: str
    trials: int
    passed: bool
    seed: int
    counterexample: dict | None = None
    skipped: bool = False

    def to_json_dict(self) -> dict:
        out = {"law": self.law, "trials": self.trials, "pass": self.passed, "seed": self.seed}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.skipped:
            out["skipped"] = True
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=False)


@dataclass(frozen=True)
class DiffCarrier:
    """A ring with a derivation and a seeded element generator.

    ``sample(rng, size)`` draws a random element of bounded complexity;
    ``eq`` is the comparison the laws are checked under (series carriers
    restrict it to the shared truncation window); ``sample_kernel``, when
    present, draws elements with D = 0.
    """

    name: str
    zero: object
    one: object
    add: Callable
    mul: Callable
    scale: Callable  # (Fraction, elem) -> elem
    d: Callable
    sample: Callable  # (SplitMix64, int) -> elem
    eq: Callable = operator.eq
    sample_kernel: Callable | None = None


def d_pow(c: DiffCarrier, x, n: int):
    """n-fold application of the carrier's derivation; D^0 is the identity."""
    for _ in range(n):
        x = c.d(x)
    return x


def eval_in_carrier(c: DiffCarrier, p: Poly, env: Mapping):
    """Evaluate a polynomial at carrier elements through the carrier's ring
    operations.  Raises :class:`UnboundVariable` for missing variables."""
    total = c.zero
    for m, coeff in p.terms():
        acc = c.one
        for v, e in m:
            if v not in env:
                raise UnboundVariable(f"no carrier element for variable {v!r}")
            for _ in range(e):
                acc = c.mul(acc, env[v])
        total = c.add(total, c.scale(coeff, acc))
    return total


def _fail(law: str, trials: int, seed: int, inputs: dict, lhs, rhs) -> LawReport:
    ce = {k: str(v) for k, v in inputs.items()}
    ce["lhs"] = str(lhs)
    ce["rhs"] = str(rhs)
    return LawReport(law=law, trials=trials, passed=False, seed=seed, counterexample=ce)


def check_constant_rule(c: DiffCarrier, trials: int = 1, seed: int = 0) -> LawReport:
    """D(1) = 0.  Deterministic; trials beyond the single check are moot."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    law = f"constant_rule[{c.name}]"
    lhs = c.d(c.one)
    if not c.eq(lhs, c.zero):
        return _fail(law, 1, seed, {"input": c.one}, lhs, c.zero)
    return LawReport(law=law, trials=1, passed=True, seed=seed)


def check_leibniz(c: DiffCarrier, trials: int, seed: int) -> LawReport:
    """D(ab) = a·D(b) + D(a)·b on random pairs."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    law = f"leibniz[{c.name}]"
    rng = SplitMix64(seed)
    for i in range(trials):
        a = c.sample(rng, 4)
        b = c.sample(rng, 4)
        lhs = c.d(c.mul(a, b))
        rhs = c.add(c.mul(a, c.d(b)), c.mul(c.d(a), b))
        if not c.eq(lhs, rhs):
            return _fail(law, i + 1, seed, {"a": a, "b": b}, lhs, rhs)
    return LawReport(law=law, trials=trials, passed=True, seed=seed)


def check_higher_leibniz(c: DiffCarrier, n_max: int, trials: int, seed: int) -> LawReport:
    """D^n(ab) = sum_k C(n,k)·D^k(a)·D^(n-k)(b) for every n <= n_max."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    law = f"higher_leibniz[{c.name}]"
    rng = SplitMix64(seed)
    for i in range(trials):
        a = c.sample(rng, 3)
        b = c.sample(rng, 3)
        da = [a]
        db = [b]
        for _ in range(n_max):
            da.append(c.d(da[-1]))
            db.append(c.d(db[-1]))
        prod = c.mul(a, b)
        lhs = prod
        for n in range(n_max + 1):
            if n > 0:
                lhs = c.d(lhs)
            rhs = c.zero
            for k in range(n + 1):
                rhs = c.add(rhs, c.scale(Fraction(binom(n, k)), c.mul(da[k], db[n - k])))
            if not c.eq(lhs, rhs):
                return _fail(law, i + 1, seed, {"n": n, "a": a, "b": b}, lhs, rhs)
    return LawReport(law=law, trials=trials, passed=True, seed=seed)


def check_chain_rule(env: Mapping, p: Poly, c: DiffCarrier, seed: int = 0) -> LawReport:
    """D(p(a_1..a_m)) = sum_j (dp/dx_j)(a_1..a_m)·D(a_j) for one explicit
    polynomial and environment."""
    law = f"chain_rule[{c.name}]"
    value = eval_in_carrier(c, p, env)
    lhs = c.d(value)
    rhs = c.zero
    for v in p.variables():
        dp = partial(p, v)
        if dp.is_zero():
            continue
        rhs = c.add(rhs, c.mul(eval_in_carrier(c, dp, env), c.d(env[v])))
    if not c.eq(lhs, rhs):
        return _fail(law, 1, seed, {"p": p, **{str(k): v for k, v in env.items()}}, lhs, rhs)
    return LawReport(law=law, trials=1, passed=True, seed=seed)


def check_faa_di_bruno(env: Mapping, p: Poly, n_max: int, c: DiffCarrier,
                       seed: int = 0) -> LawReport:
    """Higher-order chain rule: for each 0 <= n < n_max,

        D^(n+1)(p(a⃗)) = sum_{k<=n} C(n,k) sum_j
                          D^k((dp/dx_j)(a⃗)) · D^(n-k+1)(a_j).
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    law = f"faa_di_bruno[{c.name}]"
    for v in p.variables():
        if v not in env:
            raise UnboundVariable(f"no carrier element for variable {v!r}")
    towers = {}
    partial_towers = {}
    for v in p.variables():
        tower = [env[v]]
        for _ in range(n_max):  # D^(n-k+1) reaches at most D^n_max
            tower.append(c.d(tower[-1]))
        towers[v] = tower
        dp_tower = [eval_in_carrier(c, partial(p, v), env)]
        for _ in range(max(n_max - 1, 0)):  # D^k reaches at most D^(n_max-1)
            dp_tower.append(c.d(dp_tower[-1]))
        partial_towers[v] = dp_tower
    lhs = eval_in_carrier(c, p, env)
    for n in range(n_max):
        lhs = c.d(lhs)
        rhs = c.zero
        for k in range(n + 1):
            bc = Fraction(binom(n, k))
            inner = c.zero
            for v in p.variables():
                inner = c.add(inner, c.mul(partial_towers[v][k], towers[v][n - k + 1]))
            rhs = c.add(rhs, c.scale(bc, inner))
        if not c.eq(lhs, rhs):
            return _fail(law, n + 1, seed, {"n": n, "p": p}, lhs, rhs)
    return LawReport(law=law, trials=max(n_max, 1), passed=True, seed=seed)


def check_kernel_closure(c: DiffCarrier, trials: int, seed: int) -> LawReport:
    """Products of derivation-killed elements are derivation-killed, and
    D(1) = 0.  Requires the carrier to provide a kernel sampler."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    law = f"kernel_closure[{c.name}]"
    if c.sample_kernel is None:
        return LawReport(law=law, trials=0, passed=True, seed=seed, skipped=True)
    if not c.eq(c.d(c.one), c.zero):
        return _fail(law, 1, seed, {"input": c.one}, c.d(c.one), c.zero)
    rng = SplitMix64(seed)
    for i in range(trials):
        a = c.sample_kernel(rng, 3)
        b = c.sample_kernel(rng, 3)
        if not c.eq(c.d(a), c.zero) or not c.eq(c.d(b), c.zero):
            # Sampler violated its contract; surface it as a failure.
            return _fail(law, i + 1, seed, {"a": a, "b": b}, c.d(a), c.zero)
        lhs = c.d(c.mul(a, b))
        if not c.eq(lhs, c.zero):
            return _fail(law, i + 1, seed, {"a": a, "b": b}, lhs, c.zero)
    return LawReport(law=law, trials=trials, passed=True, seed=seed)


def _random_abstract_poly(rng: SplitMix64, n_vars: int, max_degree: int,
                          max_terms: int) -> tuple[Poly, tuple]:
    """A random polynomial over fresh formal variables X1..Xm, together with
    the variable tuple.  Coefficient bounds follow the harness defaults:
    |numerator| <= 9, denominator <= 4."""
    variables = tuple(f"X{i + 1}" for i in range(n_vars))
    p = Poly.zero()
    for _ in range(rng.randint(1, max_terms)):
        exps: dict = {}
        for _ in range(rng.randint(0, max_degree)):
            v = rng.choice(variables)
            exps[v] = exps.get(v, 0) + 1
        coeff = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        if coeff:
            p = p + Poly.monomial(exps, coeff)
    return p, variables


def check_derivation_monoid(c: DiffCarrier, d1: Callable, d2: Callable,
                            trials: int, seed: int) -> LawReport:
    """If d1 and d2 both satisfy the chain rule on the sampled data, then so
    does their pointwise sum (and the zero map).  Reports ``skipped`` when
    the precondition fails."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    law = f"derivation_monoid[{c.name}]"
    rng = SplitMix64(seed)

    def chain_holds(d: Callable, p: Poly, env: Mapping) -> bool:
        probe = DiffCarrier(
            name=c.name, zero=c.zero, one=c.one, add=c.add, mul=c.mul,
            scale=c.scale, d=d, sample=c.sample, eq=c.eq,
        )
        return check_chain_rule(env, p, probe, seed).passed

    for i in range(trials):
        p, variables = _random_abstract_poly(rng, n_vars=2, max_degree=3, max_terms=2)
        env = {v: c.sample(rng, 3) for v in variables}
        if not (chain_holds(d1, p, env) and chain_holds(d2, p, env)):
            return LawReport(law=law, trials=i + 1, passed=True, seed=seed, skipped=True)
        d_sum = lambda x: c.add(d1(x), d2(x))  # noqa: E731 - tiny closure
        d_zero = lambda x: c.zero  # noqa: E731
        for d in (d_sum, d_zero):
            if not chain_holds(d, p, env):
                return _fail(law, i + 1, seed, {"p": p}, "chain rule fails for sum", "")
    return LawReport(law=law, trials=trials, passed=True, seed=seed)
