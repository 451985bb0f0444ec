"""Detection, certification and removal of fixed prime divisors.

A prime p is fixed for P w.r.t. the parameters T when every specialization
P(t, Y) with integer t vanishes mod p.  Candidates are finite: p <= Delta
(the max parameter degree) or p dividing the content.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .numutil import prime_factors, prime_powers_upto, primes_upto
from .polyring import PolyError, reduce_mod

EXHAUSTION_BUDGET = 10**6


class BudgetExceeded(PolyError):
    pass


def _params_of(split_or_params):
    """Accept a VarSplit or a bare tuple of parameter names."""
    if hasattr(split_or_params, "params"):
        return tuple(split_or_params.params)
    return tuple(split_or_params)


@dataclass(frozen=True)
class FixedDivisorReport:
    candidates: tuple
    confirmed: tuple
    witnesses: dict  # refuted prime -> residue tuple with nonvanishing reduction
    delta: int
    content: int

    @property
    def has_fixed_divisor(self):
        return bool(self.confirmed)


def candidate_fixed_primes(P, split):
    """Primes <= Delta plus primes dividing the content, ascending.

    Every fixed prime of P w.r.t. the parameters lies in this list.
    """
    if P.is_zero():
        raise PolyError("zero polynomial has every divisor fixed")
    params = _params_of(split)
    delta = max((P.degree_in(t) for t in params), default=0)
    cands = set(primes_upto(delta)) | set(prime_factors(P.content()))
    return sorted(cands)


def is_fixed_prime(P, split, p, budget=EXHAUSTION_BUDGET):
    """Exhaustive check over all residue tuples mod p.

    Returns (True, None) if p is fixed, else (False, witness) with the
    lexicographically least residue tuple where P(t, Y) does not vanish
    mod p.
    """
    if P.is_zero():
        raise PolyError("zero polynomial")
    params = _params_of(split)
    k = len(params)
    if p**k > budget:
        raise BudgetExceeded(f"{p}^{k} residue tuples exceed the budget {budget}")
    for tup in itertools.product(range(p), repeat=k):
        value = P.substitute(dict(zip(params, tup)))
        if not reduce_mod(value, p).is_zero():
            return False, tup
    return True, None


def fixed_prime_divisors(P, split, budget=EXHAUSTION_BUDGET):
    """Full report: candidates, confirmed fixed primes, per-prime witnesses.

    Over Z an empty confirmed set is equivalent to having no fixed divisor
    among all nonunits: a fixed composite would force a fixed prime.
    """
    candidates = candidate_fixed_primes(P, split)
    delta = max((P.degree_in(t) for t in _params_of(split)), default=0)
    confirmed, witnesses = [], {}
    for p in candidates:
        fixed, witness = is_fixed_prime(P, split, p, budget=budget)
        if fixed:
            confirmed.append(p)
        else:
            witnesses[p] = witness
    return FixedDivisorReport(
        tuple(candidates), tuple(confirmed), witnesses, delta, P.content()
    )


def removal_scalar(P, split, budget=EXHAUSTION_BUDGET):
    """Product of the confirmed fixed primes; P has no fixed prime over Z[1/phi]."""
    report = fixed_prime_divisors(P, split, budget=budget)
    phi = 1
    for p in report.confirmed:
        phi *= p
    return phi


def gamma_b_witness(B):
    """Positive integer divisible by every prime <= B.

    Product of 2^q - 2 over prime powers q <= B; each prime p <= B divides
    the q = p factor by Fermat's little theorem.
    """
    if B < 1:
        raise PolyError("B must be >= 1")
    a = 1
    for q in prime_powers_upto(B):
        a *= 2**q - 2
    return a
