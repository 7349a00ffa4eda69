from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supalg.distributions import gl_coordinates
from supalg.expr import ParseError, parse_poly
from supalg.superpoly import (DiffOperator, Signature, SignatureError, SuperDerivation,
                              SuperPolynomial, apply_derivation, derive, evaluate, format_poly,
                              inverse, poly_from_json, poly_to_json, reduce_mod_odd, substitute,
                              supercommutator, tensor)

from strategies import homogeneous_polys, polys

SIG = gl_coordinates(1, 1)


def g(name):
    return SuperPolynomial.gen(SIG, name)


a11, a22, al12, al21 = g("a11"), g("a22"), g("alpha12"), g("alpha21")
D12 = SuperDerivation(SIG, {"alpha12": a11, "a22": al21}, 1)
D21 = SuperDerivation(SIG, {"a11": al12, "alpha21": a22}, 1)


def test_signature_order_and_parity():
    assert SIG.names == ("a11", "a22", "alpha12", "alpha21")
    assert SIG.odd_indices == (2, 3)
    with pytest.raises(SignatureError):
        Signature([("xi", "odd", True)])
    with pytest.raises(SignatureError):
        Signature(["x", "x"])


def test_odd_generators_anticommute():
    assert al21 * al12 == -(al12 * al21)
    assert not (al12 * al12)


def test_odd_square_vanishes_in_product():
    assert (a11 + al12) * (a11 - al12) == a11 ** 2


def test_left_derivative_signs():
    assert derive("alpha21", al12 * al21) == -al12
    assert derive("a11", a11 ** -1) == -(a11 ** -2)
    assert derive("alpha12", derive("alpha21", al12 * al21)) == SuperPolynomial.const(SIG, -1)
    assert derive("alpha21", derive("alpha12", al12 * al21)) == SuperPolynomial.one(SIG)
    with pytest.raises(SignatureError):
        derive("b", a11)


def test_apply_derivation_on_coordinates():
    assert apply_derivation(D12, al12) == a11
    assert apply_derivation(D21, a11) == al12
    assert not apply_derivation(D12, SuperPolynomial.one(SIG))


def test_supercommutator_of_odd_fields():
    # both odd, so this is the anticommutator; on a11 it equals D_E11 + D_E22 = a11
    assert supercommutator(D12, D21)(a11) == a11
    # [D12, D12] = 2 D12∘D12 for an odd field
    twice = D12(D12(al12 * al21)) * 2
    assert supercommutator(D12, D12)(al12 * al21) == twice


def test_symmetrized_product_of_odd_fields():
    """½(D12 D21 − D21 D12) modulo odd coefficients."""
    op12, op21 = D12.to_operator(), D21.to_operator()
    sym = (op12.compose(op21) - op21.compose(op12)).scale(Fraction(1, 2)).reduce_coefficients()
    key = lambda **e: tuple(e.get(n, 0) for n in SIG.names)
    expected = DiffOperator(SIG, {key(a11=1): a11 * Fraction(1, 2),
                                  key(a22=1): a22 * Fraction(-1, 2),
                                  key(alpha12=1, alpha21=1): a11 * a22})
    assert sym == expected


def test_reduce_mod_odd_examples():
    assert reduce_mod_odd(a11 + al12 * al21) == a11
    assert not reduce_mod_odd(al12)
    assert reduce_mod_odd(D12(al12 * a22)) == a11 * a22


def test_evaluate_and_substitute():
    assert evaluate(a11 * a22 ** -1, {"a11": 2, "a22": 3}) == Fraction(2, 3)
    assert evaluate(SuperPolynomial.one(SIG), {"a11": 5, "a22": 7}) == 1
    with pytest.raises(ZeroDivisionError):
        evaluate(a11 ** -1, {"a11": 0, "a22": 1})
    with pytest.raises(SignatureError):
        substitute(a11, {"a11": al12}, SIG)
    sig2 = SIG.tensor_power(2)
    delta = {n: SuperPolynomial.gen(sig2, f"{n}@1") for n in SIG.names}
    delta["a11"] = SuperPolynomial.gen(sig2, "a11@1") * SuperPolynomial.gen(sig2, "a11@2")
    assert substitute(a11 ** 2, delta, sig2) == substitute(a11, delta, sig2) ** 2


def test_inverse_of_unit_with_nilpotent_part():
    u = a11 + al12 * al21
    assert u * inverse(u) == SuperPolynomial.one(SIG)


def test_tensor_uses_koszul_sign():
    sig2 = SIG.tensor_power(2)
    left = tensor(SuperPolynomial.one(SIG), al12) * tensor(al21, SuperPolynomial.one(SIG))
    right = tensor(al21, al12)
    assert left == -right
    assert left.sig == sig2


def test_signature_mismatch():
    other = Signature(["y"])
    with pytest.raises(SignatureError):
        a11 + SuperPolynomial.gen(other, "y")


@settings(max_examples=200)
@given(homogeneous_polys(SIG), homogeneous_polys(SIG))
def test_supercommutativity(u, v):
    pu, pv = u.parity() or 0, v.parity() or 0
    assert u * v == v * u * (-1 if pu and pv else 1)


@settings(max_examples=200)
@given(polys(SIG), polys(SIG), polys(SIG))
def test_associativity(p, q, r):
    assert (p * q) * r == p * (q * r)


derivations = st.sampled_from([D12, D21,
                               SuperDerivation(SIG, {"a11": a11}, 0),
                               SuperDerivation(SIG, {"a22": a11 * a22 ** -1, "alpha12": al12}, 0)])


@settings(max_examples=200)
@given(derivations, homogeneous_polys(SIG), homogeneous_polys(SIG))
def test_graded_leibniz(D, p, q):
    sign = -1 if D.parity and (p.parity() or 0) else 1
    assert D(p * q) == D(p) * q + p * D(q) * sign


@settings(max_examples=200)
@given(polys(SIG), polys(SIG))
def test_reduce_mod_odd_is_multiplicative(p, q):
    assert reduce_mod_odd(p * q) == reduce_mod_odd(p) * reduce_mod_odd(q)
    assert reduce_mod_odd(reduce_mod_odd(p)) == reduce_mod_odd(p)


@settings(max_examples=50)
@given(derivations, derivations, polys(SIG))
def test_supercommutator_matches_composition(D, E, p):
    sign = -1 if D.parity and E.parity else 1
    assert supercommutator(D, E)(p) == D(E(p)) - E(D(p)) * sign


@settings(max_examples=100)
@given(polys(SIG))
def test_parse_format_round_trip(p):
    assert parse_poly(format_poly(p), SIG) == p


@given(polys(SIG))
def test_json_round_trip(p):
    assert poly_from_json(SIG, poly_to_json(p)) == p


def test_parse_errors_report_position():
    with pytest.raises(ParseError) as err:
        parse_poly("a11 + * a22", SIG)
    assert err.value.pos == 6
    with pytest.raises(ParseError):
        parse_poly("a33", SIG)
