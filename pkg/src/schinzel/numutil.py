"""Small integer-arithmetic helpers: primes, divisors, CRT, spiral enumeration."""

import itertools
import math


def primes_upto(n):
    """Ascending list of primes <= n (simple sieve)."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i in range(2, n + 1) if sieve[i]]


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n):
    """Sorted list of distinct prime factors of |n| (0 and +-1 give [])."""
    n = abs(n)
    out = []
    if n < 2:
        return out
    for p in itertools.chain([2], itertools.count(3, 2)):
        if p * p > n:
            break
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
    if n > 1:
        out.append(n)
    return out


def divisors(n):
    """All positive divisors of |n|, ascending. n must be nonzero."""
    n = abs(n)
    if n == 0:
        raise ValueError("divisors of 0")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def prime_powers_upto(n):
    """Prime powers q = p^r with q <= n, ascending."""
    out = []
    for p in primes_upto(n):
        q = p
        while q <= n:
            out.append(q)
            q *= p
    return sorted(out)


def crt(residues, moduli):
    """Least non-negative x with x = r_i mod m_i, for pairwise coprime m_i."""
    x, m = 0, 1
    for r, mi in zip(residues, moduli):
        g = math.gcd(m, mi)
        if g != 1:
            raise ValueError("moduli not coprime")
        # x + m*t = r (mod mi)
        t = ((r - x) * pow(m, -1, mi)) % mi
        x += m * t
        m *= mi
    return x % m


def signed_ints():
    """0, 1, -1, 2, -2, ... endless."""
    yield 0
    for n in itertools.count(1):
        yield n
        yield -n


def spiral(k):
    """Tuples of Z^k graded by max-norm, lexicographic within each shell."""
    if k == 0:
        yield ()
        return
    yield (0,) * k
    for r in itertools.count(1):
        for t in itertools.product(range(-r, r + 1), repeat=k):
            if max(abs(c) for c in t) == r:
                yield t
