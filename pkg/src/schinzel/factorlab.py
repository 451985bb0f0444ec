"""Irreducibility decisions and factorization over Z and Q.

Two routes are kept strictly separate: cheap certificates (mod-p and
evaluation witnesses) and the exhaustive Kronecker oracle, which serves as
desk-scale ground truth for everything the certificates claim.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .numutil import divisors, is_prime, signed_ints, spiral
from .polyring import MPoly, PolyError, ResiduePoly

MODP_TRIES = 10
EVAL_POINT_TRIES = 40


class BudgetError(PolyError):
    """Raised when an exhaustive search exceeds its configured budget."""


@dataclass(frozen=True)
class IrredCertificate:
    """Evidence for an irreducibility verdict.

    method is one of 'mod-p', 'evaluation', 'kronecker', 'content'.
    For mod-p the witness is the prime; for evaluation the point plus the
    inner certificate of the univariate image; for reducible verdicts the
    witness is a nontrivial factor dividing the input exactly.
    """

    verdict: str
    method: str
    prime: int | None = None
    point: dict | None = None
    factor: MPoly | None = None
    detail: str = ""

    @property
    def irreducible(self):
        return self.verdict == "irreducible"


@dataclass(frozen=True)
class Factorization:
    unit: int
    content: int
    factors: tuple  # ((MPoly, multiplicity), ...) primitive, positive leading coeff

    def product(self, registry=None):
        if registry is None:
            if not self.factors:
                raise PolyError("registry required for a factorless product")
            registry = self.factors[0][0].registry
        out = MPoly.const(registry, self.unit * self.content)
        for f, m in self.factors:
            out = out * f**m
        return out


# -- dense univariate helpers over Z ---------------------------------


def _dense(P, name):
    i = P.registry.index(name)
    d = P.degree_in(name)
    out = [0] * (d + 1)
    for expo, coeff in P.terms.items():
        out[expo[i]] += coeff
    return out


def _undense(coeffs, registry, name):
    i = tuple(registry).index(name)
    terms = {}
    for e, c in enumerate(coeffs):
        if c:
            expo = [0] * len(registry)
            expo[i] = e
            terms[tuple(expo)] = c
    return MPoly(registry, terms)


def _deg(c):
    d = len(c) - 1
    while d >= 0 and c[d] == 0:
        d -= 1
    return d


def _eval_dense(c, x):
    v = 0
    for a in reversed(c):
        v = v * x + a
    return v


def _trim(c):
    d = _deg(c)
    return c[: d + 1]


def _dense_exact_div(f, g):
    """f/g for dense integer lists, or None if not an exact Z-divisor."""
    f = [Fraction(a) for a in _trim(f)]
    g = _trim(g)
    if not g:
        raise PolyError("division by zero")
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        return None
    q = [Fraction(0)] * (df - dg + 1)
    for k in range(df - dg, -1, -1):
        c = f[k + dg] / g[dg]
        q[k] = c
        if c:
            for j in range(dg + 1):
                f[k + j] -= c * g[j]
    if any(f):
        return None
    if any(c.denominator != 1 for c in q):
        return None
    return [int(c) for c in q]


# -- finite field univariate -----------------------------------------


def _fp_trim(c, p):
    c = [a % p for a in c]
    return _trim(c)


def _fp_monic(c, p):
    c = _fp_trim(c, p)
    inv = pow(c[-1], -1, p)
    return [a * inv % p for a in c]


def _fp_mod(a, m, p):
    a = _fp_trim(a, p)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        da = len(a) - 1
        c = a[-1]
        for j in range(dm + 1):
            a[da - dm + j] = (a[da - dm + j] - c * m[j]) % p
        a = _trim(a)
    return a


def _fp_mulmod(a, b, m, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _fp_mod(out, m, p)


def _fp_powmod(a, e, m, p):
    result = [1]
    base = _fp_mod(a, m, p)
    while e:
        if e & 1:
            result = _fp_mulmod(result, base, m, p)
        base = _fp_mulmod(base, base, m, p)
        e >>= 1
    return result


def _fp_gcd(a, b, p):
    a, b = _fp_trim(a, p), _fp_trim(b, p)
    while b:
        a, b = b, _fp_mod(a, _fp_monic(b, p), p)
    return _fp_monic(a, p) if a else []


def is_irreducible_fp(rp):
    """Distinct-degree irreducibility test in F_p[x].

    True iff rp is irreducible: gcd(f, x^(p^i) - x) is constant for every
    i <= deg(f)/2.
    """
    p = rp.modulus
    if not is_prime(p):
        raise PolyError(f"modulus {p} is not prime")
    names = rp.variables()
    if len(names) != 1:
        raise PolyError("univariate polynomial required")
    name = names[0]
    i = rp.registry.index(name)
    f = [0] * (rp.degree_in(name) + 1)
    for expo, coeff in rp.terms.items():
        f[expo[i]] += coeff
    f = _fp_monic(f, p)
    d = len(f) - 1
    if d < 1:
        raise PolyError("constant polynomial")
    if d == 1:
        return True
    frob = [0, 1]  # x
    for i in range(1, d // 2 + 1):
        frob = _fp_powmod(frob, p, f, p)
        diff = list(frob)
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        g = _fp_gcd(f, diff, p)
        if len(g) - 1 >= 1:
            return False
    return True


# -- Kronecker oracle ------------------------------------------------


def _interp(points, values):
    """Lagrange interpolation; list of Fraction coefficients."""
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, vi) in enumerate(zip(points, values)):
        basis = [Fraction(1)]
        denom = 1
        for j, xj in enumerate(points):
            if j == i:
                continue
            # multiply basis by (x - xj)
            nxt = [Fraction(0)] * (len(basis) + 1)
            for k, c in enumerate(basis):
                nxt[k + 1] += c
                nxt[k] -= c * xj
            basis = nxt
            denom *= xi - xj
        scale = Fraction(vi, denom)
        for k, c in enumerate(basis):
            coeffs[k] += c * scale
    return coeffs


def _signed_divisors(v, positive_only=False):
    ds = divisors(v)
    if positive_only:
        return ds
    return [d for a in ds for d in (a, -a)]


def _find_dense_factor(f, combo_budget):
    """Smallest-degree proper factor of a primitive dense poly, or None.

    Divisor interpolation: a degree-d factor is determined by its values at
    d+1 points, and those values divide the values of f there.
    """
    n = _deg(f)
    max_d = n // 2
    # gather sample points, splitting off roots immediately
    points, values = [], []
    for x in signed_ints():
        v = _eval_dense(f, x)
        if v == 0:
            return [-x, 1]
        points.append(x)
        values.append(v)
        if len(points) > max_d:
            break
    combos = 0
    for d in range(1, max_d + 1):
        pts = points[: d + 1]
        divlists = [
            _signed_divisors(values[i], positive_only=(i == 0)) for i in range(d + 1)
        ]
        lead_f = f[n]
        const_f = f[0]

        chosen = [0] * (d + 1)

        def search(level):
            nonlocal combos
            if level == d + 1:
                combos += 1
                if combos > combo_budget:
                    raise BudgetError(
                        f"kronecker oracle exceeded {combo_budget} interpolation candidates"
                    )
                cand = _interp(pts, chosen)
                if any(c.denominator != 1 for c in cand):
                    return None
                g = [int(c) for c in cand]
                if _deg(g) != d:
                    return None
                if lead_f % g[d] != 0:
                    return None
                if g[0] != 0 and const_f % g[0] != 0:
                    return None
                if _dense_exact_div(f, g) is not None:
                    return g
                return None
            for e in divlists[level]:
                ok = True
                for j in range(level):
                    step = pts[level] - pts[j]
                    if (e - chosen[j]) % step != 0:
                        ok = False
                        break
                if ok:
                    chosen[level] = e
                    hit = search(level + 1)
                    if hit is not None:
                        return hit
            return None

        hit = search(0)
        if hit is not None:
            return hit
    return None


def _factor_dense(f, combo_budget):
    """Irreducible factors (with multiplicity) of a primitive dense poly."""
    out = []
    cur = _trim(list(f))
    if cur[-1] < 0:
        cur = [-a for a in cur]
    while _deg(cur) >= 1:
        g = _find_dense_factor(cur, combo_budget)
        if g is None:
            out.append(cur)
            break
        if g[-1] < 0:
            g = [-a for a in g]
        c = math.gcd(*g)
        g = [a // c for a in g]
        out.append(g)
        cur = _dense_exact_div(cur, g)
    out.sort(key=lambda c: (len(c), c))
    return out


def exact_div(f, g):
    """f/g in Z[registry] if the division is exact, else None."""
    if g.is_zero():
        raise PolyError("division by zero polynomial")
    if f.is_zero():
        return f
    if g.registry != f.registry:
        raise PolyError("registry mismatch in division")
    gterms = sorted(g.terms.items(), reverse=True)  # lex order
    glead_e, glead_c = gterms[0]
    rem = {e: Fraction(c) for e, c in f.terms.items()}
    quot = {}
    while rem:
        e = max(rem)
        c = rem[e]
        qe = tuple(a - b for a, b in zip(e, glead_e))
        if any(x < 0 for x in qe):
            return None
        qc = c / glead_c
        quot[qe] = qc
        for ge, gc in gterms:
            re = tuple(a + b for a, b in zip(qe, ge))
            nv = rem.get(re, Fraction(0)) - qc * gc
            if nv:
                rem[re] = nv
            else:
                rem.pop(re, None)
    if any(c.denominator != 1 for c in quot.values()):
        return None
    return MPoly(f.registry, {e: int(c) for e, c in quot.items()})


def _normalize_sign(P):
    """Flip sign so the graded-lex leading coefficient is positive."""
    return -P if P.leading_coefficient() < 0 else P


def kronecker_factor(P, max_total_degree=12, max_vars=3, combo_budget=2_000_000):
    """Complete factorization over Z by the Kronecker method.

    Returns Factorization(unit, content, factors).  Multivariate inputs are
    packed into one variable by Kronecker substitution, the image is
    factored by divisor interpolation, and candidate factors are lifted
    back with exact division checks.  Raises BudgetError beyond desk scale.
    """
    if P.is_zero():
        raise PolyError("cannot factor the zero polynomial")
    content = P.content()
    pp = P.primitive_part()
    unit = 1
    if pp.leading_coefficient() < 0:
        unit = -1
        pp = -pp
    names = pp.variables()
    if not names:
        return Factorization(unit, content, ())
    if len(names) > max_vars:
        raise BudgetError(f"{len(names)} variables exceeds the {max_vars}-variable budget")
    if pp.total_degree() > max_total_degree:
        raise BudgetError(
            f"total degree {pp.total_degree()} exceeds the degree-{max_total_degree} budget"
        )

    if len(names) == 1:
        name = names[0]
        dense_factors = _factor_dense(_dense(pp, name), combo_budget)
        collected = []
        for df in dense_factors:
            collected.append(_undense(df, P.registry, name))
    else:
        collected = _kronecker_multivar(pp, names, combo_budget)

    counted = {}
    for fct in collected:
        counted[fct] = counted.get(fct, 0) + 1
    ordered = sorted(
        counted.items(), key=lambda kv: (kv[0].total_degree(), str(kv[0]))
    )
    return Factorization(unit, content, tuple(ordered))


def _kronecker_multivar(pp, names, combo_budget):
    """Lift the univariate factorization of the Kronecker image."""
    degs = [pp.degree_in(n) for n in names]
    weights = []
    w = 1
    for d in degs:
        weights.append(w)
        w *= d + 1
    idx = [pp.registry.index(n) for n in names]

    def pack(poly):
        out = {}
        for expo, coeff in poly.terms.items():
            e = sum(expo[i] * wt for i, wt in zip(idx, weights))
            out[e] = out.get(e, 0) + coeff
        dense = [0] * (max(out) + 1)
        for e, c in out.items():
            dense[e] = c
        return dense

    def unpack(dense):
        terms = {}
        for e, c in enumerate(dense):
            if not c:
                continue
            expo = [0] * len(pp.registry)
            rest = e
            for i, d in zip(idx, degs):
                expo[i] = rest % (d + 1)
                rest //= d + 1
            if rest:
                return None  # exponent overflow: not the image of a bounded-degree poly
            terms[tuple(expo)] = c
        return MPoly(pp.registry, terms)

    image_factors = _factor_dense(pack(pp), combo_budget)
    remaining = pp
    out = []
    pool = list(range(len(image_factors)))
    size = 1
    while pool and not remaining.is_constant():
        found = False
        for combo in itertools.combinations(pool, size):
            prod = [1]
            for i in combo:
                nxt = [0] * (len(prod) + len(image_factors[i]) - 1)
                for a, x in enumerate(prod):
                    for b, y in enumerate(image_factors[i]):
                        nxt[a + b] += x * y
                prod = nxt
            cand = unpack(prod)
            if cand is None or cand.is_constant():
                continue
            cand = _normalize_sign(cand.primitive_part())
            quo = exact_div(remaining, cand)
            if quo is not None:
                out.append(cand)
                remaining = quo
                pool = [i for i in pool if i not in combo]
                found = True
                break
        if not found:
            size += 1
            if size > max(len(pool), 1):
                break
    if not remaining.is_constant():
        out.append(_normalize_sign(remaining.primitive_part()))
    return out


# -- certificates ----------------------------------------------------


def _prime_schedule(lead, tries=MODP_TRIES):
    """First `tries` primes not dividing the leading coefficient."""
    out = []
    p = 2
    while len(out) < tries:
        if is_prime(p) and lead % p != 0:
            out.append(p)
        p += 1
    return out


def _univar_certificate(P, name, combo_budget=2_000_000):
    """Irreducibility of a primitive univariate over Q: mod-p first, oracle after."""
    dense = _dense(P, name)
    d = _deg(dense)
    for p in _prime_schedule(dense[d]):
        rp = ResiduePoly(p, P.registry, P.terms)
        if rp.degree_in(name) != d:
            continue
        if is_irreducible_fp(rp):
            return IrredCertificate("irreducible", "mod-p", prime=p)
    fac = kronecker_factor(P, combo_budget=combo_budget)
    if len(fac.factors) == 1 and fac.factors[0][1] == 1:
        return IrredCertificate("irreducible", "kronecker")
    witness = fac.factors[0][0]
    return IrredCertificate("reducible", "kronecker", factor=witness)


def is_irreducible_q(P, eval_tries=EVAL_POINT_TRIES, **oracle_opts):
    """Irreducibility in Q[registry], with a certificate.

    Univariate: mod-p schedule, then the Kronecker oracle.  Multivariate:
    primitivity in a main variable plus a degree-preserving integer
    evaluation with irreducible univariate image; full oracle as fallback.
    """
    if P.is_zero() or P.is_constant():
        raise PolyError("irreducibility undefined for constants")
    pp = _normalize_sign(P.primitive_part())
    names = pp.variables()
    if len(names) == 1:
        return _univar_certificate(pp, names[0], **oracle_opts)

    # main variable: largest degree, ties broken by registry order
    main = max(names, key=lambda n: pp.degree_in(n))
    others = [n for n in names if n != main]
    coeffs = _coefficients_wrt(pp, main)
    g = None
    for c in coeffs:
        g = c if g is None else gcd_q(g, c)
        if g.is_constant():
            break
    if not g.is_constant():
        return IrredCertificate(
            "reducible", "evaluation", factor=g, detail=f"common factor in {main}-coefficients"
        )
    d = pp.degree_in(main)
    tried = 0
    for point in spiral(len(others)):
        if tried >= eval_tries:
            break
        tried += 1
        bindings = dict(zip(others, point))
        image = pp.substitute(bindings)
        if image.degree_in(main) != d:
            continue
        inner = _univar_certificate(image.primitive_part(), main, **oracle_opts)
        if inner.irreducible:
            return IrredCertificate(
                "irreducible",
                "evaluation",
                prime=inner.prime,
                point=bindings,
                detail=f"image method {inner.method}",
            )
        # reducible image is inconclusive for the multivariate input
    fac = kronecker_factor(pp, **oracle_opts)
    if len(fac.factors) == 1 and fac.factors[0][1] == 1:
        return IrredCertificate("irreducible", "kronecker")
    return IrredCertificate("reducible", "kronecker", factor=fac.factors[0][0])


def is_irreducible_z(P, **opts):
    """True iff P is irreducible in Z[registry]: Q-irreducible with unit content."""
    if P.is_zero() or P.is_constant():
        raise PolyError("irreducibility undefined for constants")
    c = P.content()
    if c != 1:
        return False, IrredCertificate(
            "reducible",
            "content",
            factor=MPoly.const(P.registry, c),
            detail=f"content {c}",
        )
    cert = is_irreducible_q(P, **opts)
    return cert.irreducible, cert


# -- gcd over the rationals ------------------------------------------


def _coefficients_wrt(P, name):
    """Nonzero coefficients of P viewed as a univariate in `name`."""
    i = P.registry.index(name)
    groups = {}
    for expo, coeff in P.terms.items():
        rest = tuple(0 if j == i else e for j, e in enumerate(expo))
        groups.setdefault(expo[i], {})[rest] = (
            groups.get(expo[i], {}).get(rest, 0) + coeff
        )
    return [MPoly(P.registry, terms) for _, terms in sorted(groups.items())]


def _dense_wrt(P, name):
    i = P.registry.index(name)
    d = P.degree_in(name)
    out = [MPoly.zero(P.registry) for _ in range(d + 1)]
    for expo, coeff in P.terms.items():
        rest = tuple(0 if j == i else e for j, e in enumerate(expo))
        out[expo[i]] = out[expo[i]] + MPoly(P.registry, {rest: coeff})
    return out


def _from_dense_wrt(coeffs, registry, name):
    x = MPoly.var(registry, name)
    out = MPoly.zero(registry)
    for e, c in enumerate(coeffs):
        out = out + c * x**e
    return out


def _content_wrt(P, name):
    cs = [c for c in _dense_wrt(P, name) if not c.is_zero()]
    g = None
    for c in cs:
        g = c if g is None else _gcd_q_raw(g, c)
        if g.is_constant():
            return MPoly.const(P.registry, 1)
    return g


def _prem(A, B, name):
    """Pseudo-remainder of A by B w.r.t. one variable."""
    a = _dense_wrt(A, name)
    b = _dense_wrt(B, name)
    db = len(b) - 1
    lb = b[db]
    while len(a) - 1 >= db:
        da = len(a) - 1
        lead = a[da]
        a = [lb * c for c in a]
        for j in range(db + 1):
            a[da - db + j] = a[da - db + j] - lead * b[j]
        while a and a[-1].is_zero():
            a.pop()
        if not a:
            break
    if not a:
        return MPoly.zero(A.registry)
    return _from_dense_wrt(a, A.registry, name)


def _gcd_q_raw(A, B):
    """gcd up to units in Q[registry]; constants are treated as units."""
    A = A.primitive_part()
    B = B.primitive_part()
    if A.is_constant() or B.is_constant():
        return MPoly.const(A.registry, 1)
    present = set(A.variables()) | set(B.variables())
    name = [n for n in A.registry if n in present][-1]
    if A.degree_in(name) == 0 or B.degree_in(name) == 0:
        # one side is free of the main variable: recurse into the content
        free, other = (A, B) if A.degree_in(name) == 0 else (B, A)
        return _gcd_q_raw(_content_wrt(other, name), free)
    contA, contB = _content_wrt(A, name), _content_wrt(B, name)
    ppA = exact_div(A, contA)
    ppB = exact_div(B, contB)
    cg = _gcd_q_raw(contA, contB)
    while not ppB.is_zero():
        R = _prem(ppA, ppB, name)
        if R.is_zero():
            ppA, ppB = ppB, R
        else:
            ppA, ppB = ppB, exact_div(R, _content_wrt(R, name)).primitive_part()
    if ppA.is_constant():
        return cg if not cg.is_constant() else MPoly.const(A.registry, 1)
    result = cg * exact_div(ppA, _content_wrt(ppA, name))
    return result.primitive_part()


def gcd_q(P, Q):
    """Primitive gcd over the rationals, positive leading coefficient."""
    if P.is_zero() and Q.is_zero():
        raise PolyError("gcd of two zero polynomials")
    if P.is_zero():
        return _normalize_sign(Q.primitive_part())
    if Q.is_zero():
        return _normalize_sign(P.primitive_part())
    if P.registry != Q.registry:
        raise PolyError("registry mismatch in gcd")
    if P.is_constant() or Q.is_constant():
        return MPoly.const(P.registry, 1)
    return _normalize_sign(_gcd_q_raw(P, Q).primitive_part())


def is_primitive_wrt(P, split):
    """True iff the variable-monomial coefficients of P have unit gcd over Q."""
    if P.is_zero():
        raise PolyError("primitivity undefined for the zero polynomial")
    split.check_registry(P.registry)
    vidx = [P.registry.index(n) for n in split.variables]
    groups = {}
    for expo, coeff in P.terms.items():
        key = tuple(expo[i] for i in vidx)
        rest = tuple(0 if i in vidx else e for i, e in enumerate(expo))
        groups.setdefault(key, {})
        groups[key][rest] = groups[key].get(rest, 0) + coeff
    coeffs = [MPoly(P.registry, t) for t in groups.values()]
    coeffs = [c for c in coeffs if not c.is_zero()]
    g = None
    for c in coeffs:
        g = c if g is None else gcd_q(g, c)
        if g.is_constant():
            return True
    return g.is_constant()
