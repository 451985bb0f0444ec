"""Exact sparse multivariate polynomials over arbitrary-precision integers.

Polynomials are stored canonically: a fixed ordered variable registry and a
mapping from exponent vectors to nonzero integer coefficients.  Values are
immutable after construction and safe to share.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class PolyError(Exception):
    pass


class RegistryMismatch(PolyError):
    pass


class ParseError(PolyError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _grlex_key(registry):
    # graded lexicographic by registry order, largest first when sorting descending
    def key(expo):
        return (sum(expo), expo)

    return key


class MPoly:
    """Sparse polynomial in Z[registry]."""

    __slots__ = ("registry", "terms")

    def __init__(self, registry, terms):
        registry = tuple(registry)
        clean = {}
        for expo, coeff in terms.items():
            expo = tuple(expo)
            if len(expo) != len(registry):
                raise PolyError("exponent vector length does not match registry")
            if any(e < 0 for e in expo):
                raise PolyError("negative exponent")
            if coeff:
                clean[expo] = int(coeff)
        object.__setattr__(self, "registry", registry)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, registry):
        return cls(registry, {})

    @classmethod
    def const(cls, registry, c):
        registry = tuple(registry)
        if c == 0:
            return cls(registry, {})
        return cls(registry, {(0,) * len(registry): int(c)})

    @classmethod
    def var(cls, registry, name, power=1):
        registry = tuple(registry)
        if name not in registry:
            raise PolyError(f"unknown variable {name!r}")
        expo = tuple(power if v == name else 0 for v in registry)
        return cls(registry, {expo: 1})

    # -- basic queries ------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise PolyError("not a constant polynomial")
        return self.terms.get((0,) * len(self.registry), 0)

    def degree_in(self, name):
        """Degree in one variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        i = self.registry.index(name)
        return max(e[i] for e in self.terms)

    def total_degree(self, names=None):
        """Total degree in the given variables (all by default); -1 if zero."""
        if not self.terms:
            return -1
        if names is None:
            idx = range(len(self.registry))
        else:
            idx = [self.registry.index(n) for n in names]
        return max(sum(e[i] for i in idx) for e in self.terms)

    def variables(self):
        """Registry names actually appearing with positive degree."""
        out = []
        for i, name in enumerate(self.registry):
            if any(e[i] > 0 for e in self.terms):
                out.append(name)
        return out

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        key = _grlex_key(self.registry)
        return sorted(self.terms.items(), key=lambda kv: key(kv[0]), reverse=True)

    def leading_coefficient(self):
        """Coefficient of the graded-lex leading term (0 for the zero poly)."""
        if not self.terms:
            return 0
        return self.sorted_terms()[0][1]

    def content(self):
        """gcd of all coefficients; 0 for the zero polynomial."""
        return math.gcd(*self.terms.values()) if self.terms else 0

    def primitive_part(self):
        """self // content; zero stays zero."""
        c = self.content()
        if c == 0:
            return self
        return MPoly(self.registry, {e: v // c for e, v in self.terms.items()})

    # -- arithmetic ---------------------------------------------------

    def _check(self, other):
        if isinstance(other, int):
            other = MPoly.const(self.registry, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        if other.registry != self.registry:
            raise RegistryMismatch(
                f"registries differ: {self.registry} vs {other.registry}"
            )
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for e, v in other.terms.items():
            terms[e] = terms.get(e, 0) + v
        return MPoly(self.registry, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.registry, {e: -v for e, v in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        terms = {}
        for e1, v1 in self.terms.items():
            for e2, v2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + v1 * v2
        return MPoly(self.registry, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise PolyError("negative power")
        result = MPoly.const(self.registry, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = MPoly.const(self.registry, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.registry == other.registry and self.terms == other.terms

    def __hash__(self):
        return hash((self.registry, frozenset(self.terms.items())))

    # -- substitution -------------------------------------------------

    def substitute(self, bindings):
        """Ring-homomorphism image: replace names by polynomials (or ints).

        Unbound variables pass through.  Bound values must share this
        registry or be integers.
        """
        reg = self.registry
        polys = {}
        for name, val in bindings.items():
            if name not in reg:
                raise PolyError(f"unknown variable {name!r} in substitution")
            if isinstance(val, int):
                val = MPoly.const(reg, val)
            elif val.registry != reg:
                raise RegistryMismatch("bound polynomial has a different registry")
            polys[reg.index(name)] = val

        # cache powers of each bound polynomial
        powcache = {i: {0: MPoly.const(reg, 1)} for i in polys}

        def power(i, e):
            cache = powcache[i]
            if e not in cache:
                cache[e] = polys[i] ** e
            return cache[e]

        total = MPoly.zero(reg)
        for expo, coeff in self.terms.items():
            rest = tuple(0 if i in polys else e for i, e in enumerate(expo))
            part = MPoly(reg, {rest: coeff})
            for i in polys:
                if expo[i]:
                    part = part * power(i, expo[i])
            total = total + part
        return total

    def evaluate(self, point):
        """Integer value at a full integer point {name: int}."""
        total = 0
        idx = {name: self.registry.index(name) for name in point}
        for expo, coeff in self.terms.items():
            v = coeff
            for i, e in enumerate(expo):
                if e:
                    name = self.registry[i]
                    if name not in point:
                        raise PolyError(f"no value for variable {name!r}")
                    v *= point[name] ** e
            total += v
        return total

    def rename(self, registry, mapping=None):
        """Copy onto another registry; mapping renames variables."""
        mapping = mapping or {}
        registry = tuple(registry)
        pos = {}
        for i, name in enumerate(self.registry):
            target = mapping.get(name, name)
            if any(e[i] for e in self.terms):
                if target not in registry:
                    raise PolyError(f"variable {target!r} missing from target registry")
                pos[i] = registry.index(target)
        terms = {}
        for expo, coeff in self.terms.items():
            new = [0] * len(registry)
            for i, e in enumerate(expo):
                if e:
                    new[pos[i]] += e
            terms[tuple(new)] = terms.get(tuple(new), 0) + coeff
        return MPoly(registry, terms)

    # -- printing -----------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for expo, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(self.registry, expo):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if not factors:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(coeff))] + factors)
            sign = "-" if coeff < 0 else "+"
            chunks.append((sign, body))
        first_sign, first_body = chunks[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in chunks[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"MPoly({self})"


@dataclass(frozen=True)
class VarSplit:
    """Ordered partition of a registry into parameters and variables."""

    params: tuple
    variables: tuple

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(self.params))
        object.__setattr__(self, "variables", tuple(self.variables))
        if set(self.params) & set(self.variables):
            raise PolyError("parameter and variable names overlap")
        if not self.variables:
            raise PolyError("at least one variable is required")

    @property
    def k(self):
        return len(self.params)

    @property
    def n(self):
        return len(self.variables)

    def check_registry(self, registry):
        missing = (set(self.params) | set(self.variables)) - set(registry)
        if missing:
            raise PolyError(f"split names not in registry: {sorted(missing)}")


class ResiduePoly:
    """Polynomial with coefficients reduced into [0, m), m >= 2."""

    __slots__ = ("modulus", "registry", "terms")

    def __init__(self, modulus, registry, terms):
        if modulus < 2:
            raise PolyError("modulus must be >= 2")
        clean = {}
        for expo, coeff in terms.items():
            c = coeff % modulus
            if c:
                clean[tuple(expo)] = c
        object.__setattr__(self, "modulus", int(modulus))
        object.__setattr__(self, "registry", tuple(registry))
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("ResiduePoly is immutable")

    def is_zero(self):
        return not self.terms

    def degree_in(self, name):
        if not self.terms:
            return -1
        i = self.registry.index(name)
        return max(e[i] for e in self.terms)

    def variables(self):
        out = []
        for i, name in enumerate(self.registry):
            if any(e[i] > 0 for e in self.terms):
                out.append(name)
        return out

    def __eq__(self, other):
        if not isinstance(other, ResiduePoly):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self.registry == other.registry
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.modulus, self.registry, frozenset(self.terms.items())))

    def __mul__(self, other):
        if self.modulus != other.modulus or self.registry != other.registry:
            raise RegistryMismatch("moduli or registries differ")
        terms = {}
        for e1, v1 in self.terms.items():
            for e2, v2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = (terms.get(e, 0) + v1 * v2) % self.modulus
        return ResiduePoly(self.modulus, self.registry, terms)

    def __str__(self):
        lifted = MPoly(self.registry, self.terms)
        return f"({lifted}) mod {self.modulus}"

    __repr__ = __str__


def reduce_mod(P, m):
    """Coefficientwise reduction of an MPoly modulo m >= 2."""
    if m < 2:
        raise PolyError("modulus must be >= 2")
    return ResiduePoly(m, P.registry, P.terms)


@dataclass(frozen=True)
class DegreeProfile:
    per_name: dict
    delta: int
    deg_vars: int


def degree_profile(P, split):
    """Per-name degrees, Delta = max parameter degree, total degree in variables."""
    if P.is_zero():
        raise PolyError("degree profile of the zero polynomial")
    split.check_registry(P.registry)
    per = {name: P.degree_in(name) for name in split.params + split.variables}
    delta = max((per[t] for t in split.params), default=0)
    return DegreeProfile(per, delta, P.total_degree(split.variables))


# -- parser ----------------------------------------------------------

_WHITESPACE = " \t\r\n"


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos] in _WHITESPACE:
            self.pos += 1

    def peek(self):
        self._skip()
        if self.pos >= len(self.text):
            return None
        return self.text[self.pos]

    def take_op(self, chars):
        c = self.peek()
        if c is not None and c in chars:
            self.pos += 1
            return c
        return None

    def take_int(self):
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected integer", start)
        return int(self.text[start : self.pos])

    def take_ident(self):
        self._skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
            while self.pos < len(self.text) and self.text[self.pos].isalnum():
                self.pos += 1
        if self.pos == start:
            raise ParseError("expected identifier", start)
        return self.text[start : self.pos]


def parse_poly(text, registry):
    """Parse an expression into canonical MPoly form.

    Grammar: integers, registered identifiers, + - * ^ and parentheses.
    Multiplication is always explicit.
    """
    registry = tuple(registry)
    toks = _Tokens(text)

    def parse_expr():
        sign = 1
        while True:
            c = toks.take_op("+-")
            if c is None:
                break
            if c == "-":
                sign = -sign
        result = parse_term()
        if sign < 0:
            result = -result
        while True:
            c = toks.take_op("+-")
            if c is None:
                return result
            sign = -1 if c == "-" else 1
            while True:
                c2 = toks.take_op("+-")
                if c2 is None:
                    break
                if c2 == "-":
                    sign = -sign
            rhs = parse_term()
            result = result + (rhs if sign > 0 else -rhs)

    def parse_term():
        result = parse_factor()
        while toks.take_op("*"):
            result = result * parse_factor()
        return result

    def parse_factor():
        base = parse_base()
        if toks.take_op("^"):
            e = toks.take_int()
            return base**e
        return base

    def parse_base():
        c = toks.peek()
        if c is None:
            raise ParseError("unexpected end of expression", toks.pos)
        if c == "(":
            toks.take_op("(")
            inner = parse_expr()
            if not toks.take_op(")"):
                raise ParseError("expected ')'", toks.pos)
            return inner
        if c == "-":
            toks.take_op("-")
            return -parse_factor()
        if c.isdigit():
            return MPoly.const(registry, toks.take_int())
        if c.isalpha():
            pos = toks.pos
            name = toks.take_ident()
            if name not in registry:
                raise ParseError(f"unknown identifier {name!r}", pos)
            return MPoly.var(registry, name)
        raise ParseError(f"unexpected character {c!r}", toks.pos)

    result = parse_expr()
    if toks.peek() is not None:
        raise ParseError(f"trailing input {toks.peek()!r}", toks.pos)
    return result
