"""Polynomial Schinzel engine.

Degree-condition diagnostics, generic substitution with indeterminate
coefficients, fixed-divisor verification of the substituted family, the
specialization solver, the strong (no-fixed-divisor) pipeline, iterated
composition, and the sharpness counterexample generator.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import prod

from .factorlab import is_irreducible_q, is_irreducible_z
from .fixdiv import (
    EXHAUSTION_BUDGET,
    BudgetExceeded,
    FixedDivisorReport,
    candidate_fixed_primes,
    fixed_prime_divisors,
)
from .numutil import crt, prime_factors, primes_upto, spiral
from .polyring import MPoly, PolyError, VarSplit, reduce_mod
from .schinzelcore import HypothesisError


def ell(d):
    """Number of monic monomials with per-variable degree bounded by d."""
    return prod(dj + 1 for dj in d)


def _degree_matrix(d, k, n):
    """Normalize d into a k-row matrix of n-tuples of non-negative ints."""
    rows = []
    for row in d:
        row = (row,) if isinstance(row, int) else tuple(row)
        if len(row) != n:
            raise PolyError(f"degree row {row} does not match {n} variable(s)")
        if any(x < 0 for x in row):
            raise PolyError("negative degree bound")
        rows.append(row)
    if len(rows) != k:
        raise PolyError(f"{len(rows)} degree rows for {k} parameter(s)")
    return tuple(rows)


@dataclass(frozen=True)
class DegreeConditions:
    star: bool
    a: bool
    b: bool
    c: bool | None  # None when k != 1
    mode: str

    @property
    def admissible(self):
        return self.star and (self.a or self.b or bool(self.c))

    def failed(self):
        out = []
        if not self.star:
            out.append("(*)")
        if not self.a:
            out.append("(a)")
        if not self.b:
            out.append("(b)")
        if self.c is False:
            out.append("(c)")
        return tuple(out)


def check_degree_conditions(polys, split, d, mode="general"):
    """Diagnostic verdicts for conditions (*), (a), (b) and (when k=1) (c)."""
    if mode not in ("general", "near-ufd"):
        raise PolyError(f"unknown mode {mode!r}")
    d = _degree_matrix(d, split.k, split.n)
    star = all(P.total_degree(split.variables) >= 1 for P in polys) or all(
        any(x > 0 for x in row) for row in d
    )
    a = b = True
    for i, t in enumerate(split.params):
        total = sum(max(P.degree_in(t), 0) for P in polys)
        li = ell(d[i])
        a = a and li > total
        b = b and 2**li > total
    c = None
    if split.k == 1:
        degs = [max(P.total_degree(split.variables), 0) for P in polys]
        bound = max(degs) if mode == "near-ufd" else sum(degs)
        c = sum(d[0]) > bound
    return DegreeConditions(star, a, b, c, mode)


# -- generic substitution --------------------------------------------


def _monomials_upto(d):
    """Exponent tuples e <= d componentwise, graded-lex ascending.

    The constant comes first and the top monomial Y^d last.
    """
    mons = list(itertools.product(*(range(x + 1) for x in d)))
    mons.sort(key=lambda e: (sum(e), e))
    return tuple(mons)


@dataclass(frozen=True)
class GenericSubstitution:
    split: VarSplit
    d: tuple
    registry: tuple  # lambda names followed by the variables
    lam_names: tuple  # per parameter, tuple of lambda names
    monomials: tuple  # per parameter, tuple of exponent tuples over the variables
    Ms: tuple  # generic M_{Q_i} over `registry`
    Fs: tuple  # substituted family over `registry`

    @property
    def lam_flat(self):
        return tuple(name for row in self.lam_names for name in row)


def generic_substitution(polys, split, d, lam_budget=64):
    """Replace each parameter by a generic polynomial in the variables."""
    d = _degree_matrix(d, split.k, split.n)
    lam_names, monomials = [], []
    for i, row in enumerate(d):
        mons = _monomials_upto(row)
        lam_names.append(tuple(f"lam{i}q{l}" for l in range(len(mons))))
        monomials.append(mons)
    flat = [name for row in lam_names for name in row]
    if len(flat) > lam_budget:
        raise BudgetExceeded(f"{len(flat)} lambda indeterminates exceed the budget {lam_budget}")
    if set(flat) & set(polys[0].registry):
        raise PolyError("input names collide with the lambda indeterminates")

    registry = tuple(flat) + tuple(split.variables)
    bridge = tuple(split.params) + registry
    vpos = {name: bridge.index(name) for name in split.variables}
    Ms = []
    for i, t in enumerate(split.params):
        terms = {}
        for l, mon in enumerate(monomials[i]):
            expo = [0] * len(bridge)
            expo[bridge.index(lam_names[i][l])] = 1
            for j, name in enumerate(split.variables):
                expo[vpos[name]] = mon[j]
            terms[tuple(expo)] = 1
        Ms.append(MPoly(bridge, terms))
    bindings = dict(zip(split.params, Ms))
    Fs = [P.rename(bridge).substitute(bindings).rename(registry) for P in polys]
    return GenericSubstitution(
        split,
        d,
        registry,
        tuple(lam_names),
        tuple(monomials),
        tuple(M.rename(registry) for M in Ms),
        tuple(Fs),
    )


def verify_no_fixed_divisor_generic(gs, budget=EXHAUSTION_BUDGET):
    """Fixed-prime report of prod(F_i) with Lambda as the parameter tuple.

    Candidate primes are first attacked with monomial-selection points:
    each lambda row set to a 0/1 vector picking a single monomial.  A
    selection whose product is nonzero mod p refutes p without exhausting
    the p^|Lambda| residue tuples.
    """
    product = MPoly.const(gs.registry, 1)
    for F in gs.Fs:
        product = product * F
    lam = gs.lam_flat
    candidates = candidate_fixed_primes(product, lam)
    delta = max((product.degree_in(name) for name in lam), default=0)

    # index of every lambda name inside the flat tuple
    offset = {}
    pos = 0
    for row in gs.lam_names:
        for name in row:
            offset[name] = pos
            pos += 1

    confirmed, witnesses = [], {}
    for p in candidates:
        witness = None
        for picks in itertools.product(*(range(len(row)) for row in gs.lam_names)):
            tup = [0] * len(lam)
            for i, l in enumerate(picks):
                tup[offset[gs.lam_names[i][l]]] = 1
            value = product.substitute(dict(zip(lam, tup)))
            if not reduce_mod(value, p).is_zero():
                witness = tuple(tup)
                break
        if witness is not None:
            witnesses[p] = witness
            continue
        if p ** len(lam) > budget:
            raise BudgetExceeded(
                f"prime {p} survived the monomial-selection shortcut and "
                f"{p}^{len(lam)} residue tuples exceed the budget {budget}"
            )
        for tup in itertools.product(range(p), repeat=len(lam)):
            value = product.substitute(dict(zip(lam, tup)))
            if not reduce_mod(value, p).is_zero():
                witness = tup
                break
        if witness is None:
            confirmed.append(p)
        else:
            witnesses[p] = witness
    return FixedDivisorReport(
        tuple(candidates), tuple(confirmed), witnesses, delta, product.content()
    )


# -- the solver -------------------------------------------------------


@dataclass(frozen=True)
class SubstitutionPlan:
    theta: tuple  # per parameter, the integer coefficient tuple
    Ms: tuple  # concrete substitution polynomials over the variables
    certificates: tuple  # per polynomial, the composition certificate
    fixdiv_report: object = None  # composed product w.r.t. the variables
    base: int | None = None  # theta of the strong pipeline
    omega: int | None = None
    bad_primes: tuple | None = None
    tried: int = 0


class SchinzelRefusal(HypothesisError):
    """Precondition failure of the solver, with the collected diagnosis."""

    def __init__(self, condition, detail, conditions=None, generic_report=None):
        super().__init__(condition, detail)
        self.conditions = conditions
        self.generic_report = generic_report


def _compose(P, split, bindings_vars):
    """P with every parameter replaced by a polynomial in the variables."""
    reg = P.registry
    bound = {t: M.rename(reg) for t, M in bindings_vars.items()}
    return P.substitute(bound).rename(tuple(split.variables))


def solve_polynomial_schinzel(polys, split, d, budget=5000, exact_degree=True,
                              lam_budget=64):
    """First Theta (spiral order) whose compositions are irreducible in Z[Y].

    Refuses, with a full diagnosis, whenever the hypotheses fail: rational
    irreducibility of each input, unit content of the product, condition
    (*), one of (a)/(b)/(c), and no fixed prime for the generic family.
    """
    d = _degree_matrix(d, split.k, split.n)
    for i, P in enumerate(polys):
        cert = is_irreducible_q(P)
        if not cert.irreducible:
            raise SchinzelRefusal(
                "Irred", f"polynomial #{i + 1} is reducible over the rationals"
            )
    product = MPoly.const(polys[0].registry, 1)
    for P in polys:
        product = product * P
    if product.content() != 1:
        raise SchinzelRefusal("Prim", f"product has content {product.content()}")

    conds = check_degree_conditions(polys, split, d)
    gs = generic_substitution(polys, split, d, lam_budget=lam_budget)
    report = verify_no_fixed_divisor_generic(gs)
    if not conds.admissible or report.confirmed:
        failed = ", ".join(conds.failed()) or "none"
        parts = []
        if not conds.admissible:
            parts.append(f"degree conditions {failed} fail")
        if report.confirmed:
            primes = ", ".join(str(p) for p in report.confirmed)
            parts.append(f"generic family has fixed prime {primes}")
        failures = conds.failed()
        if not conds.admissible:
            condition = "(b)" if "(b)" in failures else failures[-1]
        else:
            condition = "NoFixDiv"
        raise SchinzelRefusal(
            condition, "; ".join(parts), conditions=conds, generic_report=report
        )

    sizes = [len(mons) for mons in gs.monomials]
    total = sum(sizes)
    var_reg = tuple(split.variables)
    tried = 0
    for theta in spiral(total):
        if tried >= budget:
            break
        tried += 1
        chunks, pos = [], 0
        for size in sizes:
            chunks.append(theta[pos:pos + size])
            pos += size
        if exact_degree and any(chunk[-1] == 0 for chunk in chunks):
            continue
        Ms = {}
        for i, t in enumerate(split.params):
            terms = {}
            for coeff, mon in zip(chunks[i], gs.monomials[i]):
                if coeff:
                    terms[mon] = terms.get(mon, 0) + coeff
            Ms[t] = MPoly(var_reg, terms)
        comps = [_compose(P, split, Ms) for P in polys]
        if any(c.is_constant() for c in comps):
            continue
        certs = []
        ok = True
        for c in comps:
            flag, cert = is_irreducible_z(c)
            certs.append(cert)
            if not flag:
                ok = False
                break
        if ok:
            return SubstitutionPlan(
                theta=tuple(tuple(chunk) for chunk in chunks),
                Ms=tuple(Ms[t] for t in split.params),
                certificates=tuple(certs),
                tried=tried,
            )
    raise BudgetExceeded(f"no plan within {tried} coefficient tuples")


# -- the strong pipeline ----------------------------------------------


def _as_univariate(polys):
    """Validate a family of univariate polynomials sharing one name."""
    reg = polys[0].registry
    name = None
    for P in polys:
        if P.registry != reg:
            raise PolyError("family members use different registries")
        used = P.variables()
        if len(used) > 1:
            raise PolyError(f"polynomial {P} is not univariate")
        if used:
            if name is None:
                name = used[0]
            elif used[0] != name:
                raise PolyError("family members use different parameter names")
    if name is None:
        raise PolyError("constant family")
    return name


def strong_pipeline(polys, variables, d, budget=2000, monic=False):
    """Substitution M(Y) whose compositions are irreducible with no fixed divisor.

    Follows the constructive argument: theta handles the bad primes S (those
    dividing the leading coefficient or at most r*(d_1+...+d_n)), omega is
    their product, and M = theta + omega*R with R ranging over monic shape
    polynomials.  The composed product's fixed-prime set w.r.t. the
    variables is recomputed from scratch, not assumed.

    With monic=True the construction is bypassed in favor of a direct search
    over monic M; this mode is heuristic and may exhaust the budget.
    """
    variables = tuple(variables)
    d = tuple(d)
    if len(d) != len(variables):
        raise PolyError("one degree bound per variable required")
    if all(x == 0 for x in d):
        raise PolyError("d must be nonzero")
    t1 = _as_univariate(polys)
    for i, P in enumerate(polys):
        cert = is_irreducible_q(P)
        if not cert.irreducible:
            raise HypothesisError(
                "Irred", f"polynomial #{i + 1} is reducible over the rationals"
            )
    product = MPoly.const(polys[0].registry, 1)
    for P in polys:
        product = product * P
    in_report = fixed_prime_divisors(product, (t1,))
    if in_report.confirmed:
        raise HypothesisError(
            "NoFixDiv", f"fixed prime {in_report.confirmed[0]} in input"
        )

    monomials = _monomials_upto(d)  # ascending; top monomial last
    var_reg = variables
    bridge = (t1,) + tuple(v for v in variables if v != t1)

    def compositions(M):
        bound = {t1: M.rename(bridge)}
        return [P.rename(bridge).substitute(bound).rename(var_reg) for P in polys]

    def check(M):
        comps = compositions(M)
        certs = []
        for c in comps:
            flag, cert = is_irreducible_z(c)
            certs.append(cert)
            if not flag:
                return None
        composed = MPoly.const(var_reg, 1)
        for c in comps:
            composed = composed * c
        rep = fixed_prime_divisors(composed, variables)
        if rep.confirmed:
            return None
        return certs, rep

    if monic:
        tried = 0
        free = len(monomials) - 1
        top = {monomials[-1]: 1}
        for v in spiral(free):
            if tried >= budget:
                break
            tried += 1
            terms = dict(top)
            for coeff, mon in zip(v, monomials[:-1]):
                if coeff:
                    terms[mon] = terms.get(mon, 0) + coeff
            M = MPoly(var_reg, terms)
            hit = check(M)
            if hit is not None:
                certs, rep = hit
                return SubstitutionPlan(
                    theta=(tuple(v) + (1,),),
                    Ms=(M,),
                    certificates=tuple(certs),
                    fixdiv_report=rep,
                    tried=tried,
                )
        raise BudgetExceeded(f"no monic plan within {tried} coefficient tuples")

    r = product.degree_in(t1)
    i1 = product.registry.index(t1)
    a_r = sum(c for e, c in product.terms.items() if e[i1] == r)
    delta = r * sum(d)
    S = sorted(set(primes_upto(delta)) | set(prime_factors(abs(a_r))))

    residues, mods = [], []
    for p in S:
        found = None
        for t in range(p):
            if product.evaluate({t1: t}) % p:
                found = t
                break
        if found is None:
            raise HypothesisError("NoFixDiv", f"fixed prime {p} in input")
        residues.append(found)
        mods.append(p)
    theta = crt(residues, mods) if mods else 0
    omega = prod(S) if S else 1

    tried = 0
    free = len(monomials) - 1
    for v in spiral(free):
        if tried >= budget:
            break
        tried += 1
        terms = {monomials[-1]: omega}
        for coeff, mon in zip(v, monomials[:-1]):
            if coeff:
                terms[mon] = terms.get(mon, 0) + omega * coeff
        zero = (0,) * len(var_reg)
        terms[zero] = terms.get(zero, 0) + theta
        M = MPoly(var_reg, terms)
        hit = check(M)
        if hit is not None:
            certs, rep = hit
            return SubstitutionPlan(
                theta=(tuple(v),),
                Ms=(M,),
                certificates=tuple(certs),
                fixdiv_report=rep,
                base=theta,
                omega=omega,
                bad_primes=tuple(S),
                tried=tried,
            )
    raise BudgetExceeded(f"no plan within {tried} shape tuples")


# -- iterated composition ---------------------------------------------


@dataclass(frozen=True)
class IteratedPlan:
    stages: tuple  # SubstitutionPlan per stage
    Ms: tuple  # M_1, ..., M_m as univariate polynomials in the parameter
    composition: object  # C_m = C_{m-1} o M_m (MPoly in the parameter)
    family: tuple  # P_i(C_m(T)) for every family member


def iterated_composition(polys, degrees, budget=2000, monic=False):
    """Run the pipeline stage by stage, re-verifying both invariants."""
    t1 = _as_univariate(polys)
    reg = polys[0].registry
    yname = "Y" if t1 != "Y" else "Z"
    current = list(polys)
    C = MPoly.var(reg, t1)
    stages, Ms = [], []
    for stage, dm in enumerate(degrees, start=1):
        try:
            plan = strong_pipeline(current, (yname,), (dm,), budget=budget, monic=monic)
        except (HypothesisError, BudgetExceeded) as exc:
            raise PolyError(f"stage {stage}: {exc}") from exc
        M = plan.Ms[0].rename(reg, {yname: t1})
        # invariant re-check on the freshly composed family
        new_family = [P.substitute({t1: M}) for P in current]
        composed = MPoly.const(reg, 1)
        for i, Q in enumerate(new_family):
            flag, _ = is_irreducible_z(Q)
            if not flag:
                raise PolyError(f"stage {stage}: composition #{i + 1} not irreducible")
            composed = composed * Q
        rep = fixed_prime_divisors(composed, (t1,))
        if rep.confirmed:
            raise PolyError(f"stage {stage}: fixed prime {rep.confirmed[0]} reappeared")
        stages.append(plan)
        Ms.append(M)
        current = new_family
        C = C.substitute({t1: M})
    return IteratedPlan(tuple(stages), tuple(Ms), C, tuple(current))


# -- sharpness counterexample -----------------------------------------


@dataclass(frozen=True)
class CounterexampleBundle:
    d: int
    family: tuple  # the {0,1}-coefficient polynomials of degree <= d
    P0: object
    m: int
    P: object
    certificate: object
    samples: tuple  # (M, content of the composition, index of M mod 2 in family)
    all_even: bool


def sharpness_counterexample(d, m_budget=200, samples=100, coeff_bound=10, seed=0):
    """P of T-degree 2^(d+1) whose compositions with every degree-d M are even.

    P = prod over {0,1}-polynomials p of degree <= d of (T - p(Y)), shifted
    by the least even constant 2m making it irreducible.  Any M of degree d
    is congruent mod 2 to one member p, so T - p(Y) kills P(M(Y), Y) mod 2.
    """
    if d < 0:
        raise PolyError("d must be non-negative")
    reg = ("T", "Y")
    T = MPoly.var(reg, "T")
    family = []
    for bits in itertools.product((0, 1), repeat=d + 1):
        family.append(MPoly(reg, {(0, j): b for j, b in enumerate(bits) if b}))
    P0 = MPoly.const(reg, 1)
    for p in family:
        P0 = P0 * (T - p)

    chosen = None
    for m in range(1, m_budget + 1):
        P = P0 + MPoly.const(reg, 2 * m)
        flag, cert = is_irreducible_z(P)
        if flag:
            chosen = (m, P, cert)
            break
    if chosen is None:
        raise BudgetExceeded(f"no irreducible shift with m <= {m_budget}")
    m, P, cert = chosen

    rng = random.Random(seed)
    yreg = ("Y",)
    log = []
    all_even = True
    residues = {
        tuple(sorted((e[1], c % 2) for e, c in p.terms.items())): idx
        for idx, p in enumerate(family)
    }
    for _ in range(samples):
        coeffs = [rng.randint(-coeff_bound, coeff_bound) for _ in range(d)]
        lead = 0
        while lead == 0:
            lead = rng.randint(-coeff_bound, coeff_bound)
        coeffs.append(lead)
        M = MPoly(yreg, {(j,): c for j, c in enumerate(coeffs) if c})
        comp = P.substitute({"T": M.rename(reg, {"Y": "Y"})}).rename(yreg)
        content = comp.content()
        key = tuple(sorted((e[0], c % 2) for e, c in M.terms.items() if c % 2))
        log.append((M, content, residues.get(key)))
        if content % 2:
            all_even = False
    return CounterexampleBundle(
        d, tuple(family), P0, m, P, cert, tuple(log), all_even
    )
