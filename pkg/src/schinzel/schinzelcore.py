"""Constructive specialization machinery for the first parameter.

Given a family with primitive members and no fixed prime divisor, builds a
Bezout constant, the finite bad-prime set, a CRT nonvanishing point and an
arithmetic progression along which the first parameter can be specialized.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .fixdiv import fixed_prime_divisors
from .factorlab import is_primitive_wrt
from .numutil import crt, prime_factors, primes_upto
from .polyring import MPoly, PolyError, VarSplit, reduce_mod


class HypothesisError(PolyError):
    """A required hypothesis fails; carries the condition name and a witness."""

    def __init__(self, condition, detail):
        super().__init__(f"hypothesis {condition} fails: {detail}")
        self.condition = condition
        self.detail = detail


@dataclass(frozen=True)
class ProgressionWitness:
    param_index: int  # 1-based index of the specialized parameter
    delta: int  # Bezout constant
    bad_primes: tuple
    omega: int
    base_point: tuple
    residue_witnesses: dict  # constrained prime -> residue tuple

    @property
    def progression(self):
        return (self.omega, self.base_point[0])


# -- Bezout constant over Q[T] ---------------------------------------


def _q_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _q_divmod(a, b):
    a = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = c
        for j in range(len(b)):
            a[k + j] -= c * b[j]
        _q_trim(a)
    return q, a


def _q_sub_mul(a, q, b):
    # a - q*b
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, qi in enumerate(q):
        if qi:
            for j, bj in enumerate(b):
                out[i + j] -= qi * bj
    return _q_trim(out)


def _q_ext_gcd(a, b):
    """(g, s, t) with s*a + t*b = g, g monic (or zero)."""
    r0, r1 = [Fraction(x) for x in a], [Fraction(x) for x in b]
    s0, s1 = [Fraction(1)], [Fraction(0)]
    t0, t1 = [Fraction(0)], [Fraction(1)]
    _q_trim(r0)
    _q_trim(r1)
    while r1:
        q, r = _q_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _q_sub_mul(s0, q, s1)
        t0, t1 = t1, _q_sub_mul(t0, q, t1)
    if r0:
        lead = r0[-1]
        r0 = [c / lead for c in r0]
        s0 = [c / lead for c in s0]
        t0 = [c / lead for c in t0]
    return r0, s0, t0


def _q_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _q_trim(out)


def bezout_constant(coeffs):
    """Nonzero integer in the ideal generated by univariate polynomials.

    The inputs must be coprime over the rationals; iterated extended Euclid
    produces 1 as a rational combination, and clearing denominators gives
    the integer.
    """
    if not coeffs:
        raise PolyError("empty coefficient list")
    names = set()
    for c in coeffs:
        names |= set(c.variables())
    if len(names) > 1:
        raise PolyError(f"coefficients involve several variables: {sorted(names)}")
    name = names.pop() if names else None
    dense = []
    for c in coeffs:
        if name is None:
            dense.append([Fraction(c.constant_value())] if not c.is_zero() else [])
        else:
            d = c.degree_in(name)
            i = c.registry.index(name)
            row = [Fraction(0)] * (d + 1) if d >= 0 else []
            for expo, coeff in c.terms.items():
                row[expo[i]] += coeff
            dense.append(_q_trim(row))
    dense = [d for d in dense if d]
    if not dense:
        raise PolyError("all coefficients are zero")

    g = dense[0]
    combo = [[Fraction(1)]] + [[] for _ in dense[1:]]
    for i in range(1, len(dense)):
        g2, s, t = _q_ext_gcd(g, dense[i])
        combo = [_q_mul(s, u) for u in combo]
        combo[i] = t
        g = g2
    if len(g) != 1:
        raise PolyError("inputs are not coprime over the rationals")
    unit = g[0]
    combo = [[c / unit for c in u] for u in combo]
    denoms = [c.denominator for u in combo for c in u]
    delta = lcm(*denoms) if denoms else 1
    return delta


# -- bad primes and CRT point ----------------------------------------


def bad_prime_set(P, split, delta):
    """Primes dividing delta or the content, or at most Delta; ascending."""
    if P.is_zero() or delta == 0:
        raise PolyError("nonzero product and delta required")
    split.check_registry(P.registry)
    big_delta = max((P.degree_in(t) for t in split.params), default=0)
    out = set(primes_upto(big_delta))
    out |= set(prime_factors(delta))
    out |= set(prime_factors(P.content()))
    return sorted(out)


def nonvanishing_point(P, split, primes):
    """Point v in Z^k with P(v, Y) nonzero mod every listed prime.

    Per prime, the lexicographically least nonvanishing residue tuple is
    taken; primes where every residue tuple works impose no congruence.
    The coordinates are the least non-negative CRT representatives.
    """
    k = split.k
    constrained = {}
    for p in primes:
        witness = None
        all_good = True
        for tup in itertools.product(range(p), repeat=k):
            value = P.substitute(dict(zip(split.params, tup)))
            if reduce_mod(value, p).is_zero():
                all_good = False
            elif witness is None:
                witness = tup
        if witness is None:
            raise HypothesisError(
                "NoFixDiv", f"prime {p} is a fixed prime of the product"
            )
        if not all_good:
            constrained[p] = witness
    if not constrained:
        return (0,) * k
    mods = sorted(constrained)
    coords = []
    for i in range(k):
        coords.append(crt([constrained[p][i] for p in mods], mods))
    return tuple(coords)


def _t1_coefficients(P, split):
    """Coefficients of P in Z[T1], viewing P in the remaining names."""
    t1 = split.params[0]
    i = P.registry.index(t1)
    groups = {}
    for expo, coeff in P.terms.items():
        key = tuple(0 if j == i else e for j, e in enumerate(expo))
        only_t1 = tuple(expo[i] if j == i else 0 for j in range(len(expo)))
        bucket = groups.setdefault(key, {})
        bucket[only_t1] = bucket.get(only_t1, 0) + coeff
    return [MPoly(P.registry, terms) for _, terms in sorted(groups.items())]


def progression_witness(polys, split):
    """Arithmetic progression for T1 preserving primitivity and NoFixDiv.

    Checks the hypotheses first and raises HypothesisError naming the
    violated condition otherwise.
    """
    if split.k < 1:
        raise PolyError("at least one parameter required")
    if not polys:
        raise PolyError("empty family")
    product = MPoly.const(polys[0].registry, 1)
    for i, P in enumerate(polys):
        if P.is_zero():
            raise HypothesisError("Nonzero", f"polynomial #{i + 1} is zero")
        if not is_primitive_wrt(P, split):
            raise HypothesisError(
                "Prim/Q[T]", f"polynomial #{i + 1} is not primitive w.r.t. Q[T]"
            )
        product = product * P
    report = fixed_prime_divisors(product, split)
    if report.confirmed:
        raise HypothesisError(
            "NoFixDiv",
            f"fixed prime divisor {report.confirmed[0]} of the product",
        )
    delta = bezout_constant(_t1_coefficients(product, split))
    bad = bad_prime_set(product, split, delta)
    v = nonvanishing_point(product, split, bad)
    omega = 1
    for p in bad:
        omega *= p
    constrained = {}
    for p in bad:
        constrained[p] = tuple(c % p for c in v)
    return ProgressionWitness(1, delta, tuple(bad), omega, v, constrained)


@dataclass(frozen=True)
class ProgressionCheck:
    ell: int
    t1: int
    ok: bool
    failures: tuple  # (condition, detail)


def verify_progression(polys, split, witness, ell_values):
    """Specialize T1 along the progression and recheck both conditions."""
    t1_name = split.params[0]
    rest_params = split.params[1:]
    reduced = VarSplit(rest_params, split.variables) if rest_params else None
    out = []
    for ell in ell_values:
        t1 = witness.omega * ell + witness.base_point[0]
        failures = []
        specialized = [P.substitute({t1_name: t1}) for P in polys]
        product = MPoly.const(polys[0].registry, 1)
        for i, S in enumerate(specialized):
            if S.is_zero():
                failures.append(("Nonzero", f"polynomial #{i + 1} vanishes"))
                continue
            if reduced is not None and not is_primitive_wrt(S, reduced):
                failures.append(("Prim/Q[T']", f"polynomial #{i + 1}"))
            product = product * S
        if not any(f[0] == "Nonzero" for f in failures):
            report = fixed_prime_divisors(product, rest_params)
            if report.confirmed:
                failures.append(
                    ("NoFixDiv", f"fixed prime {report.confirmed[0]}")
                )
        out.append(ProgressionCheck(ell, t1, not failures, tuple(failures)))
    return out
