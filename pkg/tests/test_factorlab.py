import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schinzel.factorlab import (
    BudgetError,
    gcd_q,
    is_irreducible_fp,
    is_irreducible_q,
    is_irreducible_z,
    is_primitive_wrt,
    kronecker_factor,
)
from schinzel.polyring import MPoly, PolyError, VarSplit, parse_poly, reduce_mod

REG = ("T", "Y")
X = ("x",)


def U(expr):
    return parse_poly(expr, X)


def P(expr):
    return parse_poly(expr, REG)


# -- finite-field test ------------------------------------------------


def test_fp_irreducible_quadratics():
    assert is_irreducible_fp(reduce_mod(U("x^2 + x + 1"), 2))
    assert not is_irreducible_fp(reduce_mod(U("x^2 + 1"), 2))  # (x+1)^2
    assert is_irreducible_fp(reduce_mod(U("x^2 + 1"), 3))


def test_fp_linear_and_errors():
    assert is_irreducible_fp(reduce_mod(U("x + 1"), 5))
    with pytest.raises(PolyError):
        is_irreducible_fp(reduce_mod(U("x^2 + 1"), 4))


# -- Kronecker oracle -------------------------------------------------


def test_oracle_univariate_products():
    f = U("(x^2+1)*(x-3)*(x-3)")
    fact = kronecker_factor(f)
    assert fact.product() == f
    got = sorted((str(g), m) for g, m in fact.factors)
    assert got == [("x - 3", 2), ("x^2 + 1", 1)]


def test_oracle_content_and_unit():
    fact = kronecker_factor(U("-6*x + 6"))
    assert fact.unit == -1
    assert fact.content == 6
    assert fact.product() == U("-6*x + 6")


def test_oracle_irreducible_stays_whole():
    fact = kronecker_factor(U("x^4 + x + 1"))
    assert len(fact.factors) == 1 and fact.factors[0][1] == 1


def test_oracle_multivariate():
    f = P("(T + Y)*(T - Y)")
    fact = kronecker_factor(f)
    assert fact.product() == f
    assert len(fact.factors) == 2


def test_oracle_budget():
    with pytest.raises(BudgetError):
        kronecker_factor(U("x^13 + x + 1"))


# -- certificates -----------------------------------------------------


def test_modp_certificate():
    cert = is_irreducible_q(U("x^2 - x - 1"))
    assert cert.irreducible and cert.method == "mod-p"


def test_oracle_fallback_certificate():
    # reducible over Q: every mod-p try fails, the oracle produces a factor
    cert = is_irreducible_q(U("x^2 - 1"))
    assert not cert.irreducible
    assert cert.factor is not None


def test_swinnerton_dyer_needs_oracle():
    # (x^2-2)(x^2-3)(x^2-6) splits mod every prime but x^2-2 is Q-irreducible
    cert = is_irreducible_q(U("x^2 - 2"))
    assert cert.irreducible


def test_multivariate_evaluation_witness():
    cert = is_irreducible_q(P("Y^2 - T"))
    assert cert.irreducible
    assert cert.method in ("evaluation", "kronecker")


def test_multivariate_reducible():
    cert = is_irreducible_q(P("(Y - T)*(Y + T)"))
    assert not cert.irreducible


def test_z_irreducibility_content():
    flag, cert = is_irreducible_z(U("2*x^2 + 2"))
    assert not flag and cert.method == "content"
    flag, _ = is_irreducible_z(U("x^2 + 1"))
    assert flag


def test_constant_rejected():
    with pytest.raises(PolyError):
        is_irreducible_q(U("5"))


# -- gcd over Q -------------------------------------------------------


def test_gcd_basic():
    a = P("(T + Y)*(T - Y)")
    b = P("(T + Y)*(T + 1)")
    assert gcd_q(a, b) == P("T + Y")


def test_gcd_constants_are_units():
    # integer contents do not count: gcd over Q of 2T and 2T+2 is 1
    assert gcd_q(P("2*T"), P("2*T + 2")) == P("1")
    assert gcd_q(P("2"), P("4*T")) == P("1")


def test_gcd_coprime():
    assert gcd_q(P("T^2 + 1"), P("T")) == P("1")


@given(st.integers(1, 4), st.integers(-5, 5), st.integers(-5, 5))
@settings(max_examples=50, deadline=None)
def test_gcd_divides_both(e, a, b):
    g = U(f"x^{e}") + MPoly.const(X, a)
    f1 = g * (U("x") + MPoly.const(X, b))
    f2 = g * U("x^2 + 1")
    d = gcd_q(f1, f2)
    assert d.degree_in("x") >= g.primitive_part().degree_in("x") or g.is_constant()


# -- primitivity ------------------------------------------------------


def test_primitivity_wrt_params():
    split = VarSplit(("T",), ("Y",))
    assert is_primitive_wrt(P("T*Y + 2"), split)
    assert not is_primitive_wrt(P("T*Y + T"), split)  # common factor T
