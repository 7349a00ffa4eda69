from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supalg import distributions as dist
from supalg.distributions import Distribution, SuperspaceDistribution
from supalg.enveloping import UElement
from supalg.liesuper import ReducedPoint
from supalg.superpoly import SuperPolynomial

from strategies import diagonal_entries, u_elements

H = dist.gl_hopf(1, 1)
A = H.U
E = A.gen
e = H.identity
g = lambda n: SuperPolynomial.gen(H.sig, n)


def at(point, u=None):
    return Distribution.at(H, point, u)


# -- additive superspace -----------------------------------------------------

K = dist.superspace_hopf(1, 1)
x, xi = (SuperPolynomial.gen(K.sig, n) for n in ("x1", "xi1"))


def test_superspace_basis_is_dual_to_monomials():
    assert dist.pair(SuperspaceDistribution.basis(K, (2, 0)), x * x) == 1
    assert dist.pair(SuperspaceDistribution.basis(K, (0, 1)), xi) == 1
    assert dist.pair(SuperspaceDistribution.basis(K, (2, 0)), x) == 0
    assert dist.pair(SuperspaceDistribution.basis(K, (1, 1)), x * xi) == 1


def test_superspace_convolution():
    phi_x = SuperspaceDistribution.basis(K, (1, 0))
    phi_xi = SuperspaceDistribution.basis(K, (0, 1))
    # Δ(x^2) carries 2 x⊗x, so φ_x ⋆ φ_x = 2 φ_{x^2}
    assert dist.convolve_functionals(phi_x, phi_x) == SuperspaceDistribution(K, {(2, 0): 2})
    assert not dist.convolve_functionals(phi_xi, phi_xi).coeffs
    assert dist.convolve_functionals(phi_x, phi_xi) == SuperspaceDistribution.basis(K, (1, 1))


# -- pairing oracles on GL(1|1) ------------------------------------------------
# Right translation by exp(t E11) scales a11 by e^t, so g⊗E11^k differentiates
# a11^p a22^q to p^k a^p b^q at g = diag(a, b); likewise for E22.

@settings(max_examples=50)
@given(diagonal_entries(2), st.integers(-2, 3), st.integers(-2, 3), st.integers(0, 3))
def test_even_pairing_matches_derivatives(entries, p, q, k):
    a, b = entries
    pt = ReducedPoint.diagonal(a, b, m=1)
    f = g("a11") ** p * g("a22") ** q
    assert at(pt, E("E11") ** k).pair(f) == Fraction(p) ** k * a ** p * b ** q
    assert at(pt, E("E22") ** k).pair(f) == Fraction(q) ** k * a ** p * b ** q


def test_odd_pairing_by_hand():
    assert at(e, E("E12")).pair(g("alpha12")) == 1
    assert at(e, E("E12")).pair(g("alpha21")) == 0
    top = g("alpha12") * g("alpha21")
    # Δα12 Δα21 worked out by hand: only α12a22 ⊗ a22α21 (and its mirror) survive
    assert at(e, E("E12") * E("E21")).pair(top) == 1
    assert at(e, E("E21") * E("E12")).pair(top) == -1


# -- convolution -----------------------------------------------------------------

def test_unit_and_point_products():
    h1 = ReducedPoint.diagonal(2, 3, m=1)
    h2 = ReducedPoint.diagonal(Fraction(1, 2), 5, m=1)
    assert dist.convolve(at(e), at(h1, E("E12"))) == at(h1, E("E12"))
    assert dist.convolve(at(h1), at(h2)) == at(h1 * h2)


def test_smash_product_example():
    h = ReducedPoint.diagonal(2, 3, m=1)
    assert dist.smash_multiply(at(e, E("E12")), at(h)) == at(h, E("E12") * Fraction(3, 2))
    assert dist.convolve(at(e, E("E12")), at(h)) == at(h, E("E12") * Fraction(3, 2))


@settings(max_examples=40)
@given(diagonal_entries(2), u_elements(A, 2, 2), diagonal_entries(2), u_elements(A, 2, 2))
def test_convolution_is_the_smash_product(ga, u, gb, v):
    phi = at(ReducedPoint.diagonal(*ga, m=1), u)
    psi = at(ReducedPoint.diagonal(*gb, m=1), v)
    assert dist.convolve(phi, psi) == dist.smash_multiply(phi, psi)


@settings(max_examples=20)
@given(u_elements(A, 2, 2), u_elements(A, 2, 2), st.integers(0, 2), st.integers(-1, 2),
       st.integers(0, 1), st.integers(0, 1))
def test_convolution_pairs_through_the_coproduct(u, v, p, q, i, j):
    phi = at(ReducedPoint.diagonal(2, 3, m=1), u)
    psi = at(ReducedPoint.diagonal(-1, Fraction(1, 2), m=1), v)
    f = g("a11") ** p * g("a22") ** q * g("alpha12") ** i * g("alpha21") ** j
    n = len(H.sig)
    direct = Fraction(0)
    for m, c in H.delta(f).terms.items():
        f1 = SuperPolynomial(H.sig, {m[:n]: 1})
        f2 = SuperPolynomial(H.sig, {m[n:]: 1})
        direct += c * phi.pair(f1) * psi.pair(f2)
    assert dist.convolve(phi, psi).pair(f) == direct


def test_translate_to_identity():
    h = ReducedPoint.diagonal(2, 3, m=1)
    u = E("E12") * E("E21") + E("E11")
    phi = dist.convolve_functionals(dist.evaluation(H, h), dist.alpha(H, u))
    assert dist.translate_to_identity(phi) == u
    assert dist.from_functional(phi) == at(h, u)
    with pytest.raises(ValueError):
        dist.translate_to_identity(at(h) + at(e))


def test_alpha_is_an_isomorphism():
    report = dist.check_alpha_iso(2, H)
    assert report["passed"]
    assert all(m["invertible"] for m in report["matrices"].values())


# -- Hopf structure --------------------------------------------------------------

def test_counit_and_antipode_of_points():
    h = ReducedPoint.diagonal(2, 3, m=1)
    assert dist.dist_counit(at(h, E("E11") + A.scalar(4))) == 4
    assert dist.dist_antipode(at(h)) == at(h.inverse())


@settings(max_examples=30)
@given(u_elements(A, 2, 2), st.integers(-1, 2), st.integers(0, 1), st.integers(0, 1))
def test_antipode_is_precomposition(u, p, i, j):
    phi = at(ReducedPoint.diagonal(2, -3, m=1), u)
    f = g("a11") ** p * g("alpha12") ** i * g("alpha21") ** j
    assert dist.dist_antipode(phi).pair(f) == phi.pair(H.antipode(f))


def _monomials(limit=1):
    out = []
    for p in range(0, limit + 1):
        for i in (0, 1):
            for j in (0, 1):
                out.append(g("a11") ** p * g("alpha12") ** i * g("alpha21") ** j)
    return out


def test_coproduct_pairs_as_multiplication_plainly():
    phi = at(e, E("E12") * E("E21"))
    D = dist.dist_coproduct(phi)
    for f in _monomials():
        for h in _monomials():
            assert dist.pair_tensor(H, D, f, h) == phi.pair(f * h)


def test_koszul_signed_pairing_fails():
    phi = at(e, E("E12") * E("E21"))
    D = dist.dist_coproduct(phi)
    f, h = g("alpha21"), g("alpha12")
    assert dist.pair_tensor(H, D, f, h) == phi.pair(f * h)
    assert dist.pair_tensor(H, D, f, h, koszul=True) != phi.pair(f * h)


def test_coordinate_hopf_axioms():
    assert not H.check_axioms()


def test_json_round_trip():
    d = at(ReducedPoint.diagonal(2, 3, m=1), E("E12") * 2) + at(e, A.one())
    assert Distribution.from_json(H, d.to_json()) == d


def test_sum_at_different_points_is_not_a_jet():
    with pytest.raises(ValueError):
        dist.evaluation(H, ReducedPoint.diagonal(2, 3, m=1)) + dist.evaluation(H, e)
