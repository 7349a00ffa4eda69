from fractions import Fraction

import pytest
from hypothesis import given, settings

from supalg import shcp
from supalg.distributions import Distribution
from supalg.liesuper import ReducedPoint, build_gl
from supalg.superpoly import DiffOperator, SuperPolynomial, SignatureError, evaluate

from strategies import diagonal_entries, polys

P = shcp.gl11_shcp()
H = P.ambient
U = P.U
g = lambda n: SuperPolynomial.gen(H.sig, n)
t = lambda n: SuperPolynomial.gen(P.sig0, n)
W12, W21, TOP = (U.wedge_from_label(s) for s in ("E12", "E21", "E12^E21"))


def key(**e):
    return tuple(e.get(n, 0) for n in H.sig.names)


def sections(low=-2, high=2):
    from hypothesis import strategies as st
    comp = polys(P.sig0, low, high, 2)
    return st.tuples(comp, comp, comp, comp).map(
        lambda cs: shcp.SHCPSection(P, dict(zip(P.wedges, cs))))


# -- left-invariant operators ------------------------------------------------

def test_odd_operators_in_coordinates():
    d12 = DiffOperator(H.sig, {key(alpha12=1): g("a11"), key(a22=1): g("alpha21")})
    d21 = DiffOperator(H.sig, {key(a11=1): g("alpha12"), key(alpha21=1): g("a22")})
    assert shcp.left_invariant_derivation(P.lie, "E12", H.sig).to_operator() == d12
    assert shcp.left_invariant_derivation(P.lie, "E21", H.sig).to_operator() == d21


def test_top_operator_modulo_odd_coefficients():
    top = DiffOperator(H.sig, {key(alpha12=1, alpha21=1): g("a11") * g("a22"),
                               key(a11=1): g("a11") * Fraction(1, 2),
                               key(a22=1): g("a22") * Fraction(-1, 2)})
    op = shcp.left_invariant_operator(P.lie, P.gamma(TOP), H.sig)
    assert op.reduce_coefficients() == top


def test_left_invariance_on_coordinates():
    assert shcp.check_left_invariance(H, P.lie) == []


@pytest.mark.parametrize("mn", [(1, 1), (2, 1)])
def test_bracket_goes_to_supercommutator(mn):
    assert shcp.check_bracket_homomorphism(build_gl(*mn)) == []


# -- eta* and reconstruction ------------------------------------------------------

def test_eta_star_examples():
    s = shcp.eta_star(g("a11"))
    assert s[()] == t("a11") and not s[W12] and not s[W21]
    assert s[TOP] == t("a11") * Fraction(1, 2)
    assert shcp.eta_star(SuperPolynomial.one(H.sig)) == shcp.SHCPSection.unit(P)
    assert shcp.eta_star(g("alpha12")).comps == {W12: -t("a11")}


@settings(max_examples=60)
@given(polys(H.sig, -2, 2, 3))
def test_reconstruct_after_eta(s):
    assert shcp.reconstruct(shcp.eta_star(s)) == s


@settings(max_examples=60)
@given(sections())
def test_eta_after_reconstruct(sigma):
    assert shcp.eta_star(shcp.reconstruct(sigma)) == sigma


@settings(max_examples=30)
@given(polys(H.sig, -1, 2, 2), polys(H.sig, -1, 2, 2))
def test_eta_is_multiplicative(a, b):
    assert shcp.eta_star(a * b) == shcp.eta_star(a) * shcp.eta_star(b)


def test_reconstruct_example():
    sigma = shcp.SHCPSection(P, {(): t("a11")})
    expected = g("a11") + g("a22") ** -1 * g("alpha12") * g("alpha21") * Fraction(1, 2)
    assert shcp.reconstruct(sigma) == expected


@settings(max_examples=30)
@given(sections())
def test_closed_form_agrees_up_to_fixed_signs(sigma):
    cmp = shcp.compare_closed_form(sigma)
    assert cmp["1"] in (0, 1) and cmp["E21"] in (0, 1)
    assert cmp["E12"] in (0, -1) and cmp["E12^E21"] in (0, -1)


# -- pairing identification vs the distribution oracle ------------------------

@settings(max_examples=30)
@given(polys(H.sig, -2, 2, 3), diagonal_entries(2))
def test_pairing_section_is_the_distribution_pairing(s, entries):
    pt = ReducedPoint.diagonal(*entries, m=1)
    sec = shcp.pairing_section(s, P)
    vals = {"a11": entries[0], "a22": entries[1]}
    for w in P.wedges:
        assert evaluate(sec[w], vals) == Distribution.at(H, pt, P.gamma(w)).pair(s)


@settings(max_examples=30)
@given(polys(H.sig, -2, 2, 3))
def test_pairing_round_trip(s):
    assert shcp.pairing_reconstruct(shcp.pairing_section(s, P)) == s


# -- Hopf structure on sections -----------------------------------------------------

@pytest.mark.parametrize("name", ["a11", "a22", "alpha12", "alpha21"])
def test_mu_star_is_the_matrix_coproduct(name):
    lhs = shcp.mu_star(shcp.coordinates_to_section(g(name)))
    assert lhs == shcp.coordinates_to_double_section(H.delta(g(name)))


@pytest.mark.parametrize("name", ["a11", "a22", "alpha12", "alpha21"])
def test_i_star_is_the_coordinate_antipode(name):
    lhs = shcp.i_star(shcp.coordinates_to_section(g(name)))
    assert lhs == shcp.coordinates_to_section(H.antipode(g(name)))


def test_counit_examples():
    assert shcp.e_star(shcp.coordinates_to_section(g("a11") - 1)) == 0
    assert shcp.e_star(shcp.coordinates_to_section(g("a22") * 3)) == 3


@settings(max_examples=15)
@given(sections(-1, 2))
def test_hopf_axioms_on_sections(sigma):
    assert all(ok for _, ok in shcp.check_hopf_axioms(sigma))


@settings(max_examples=15)
@given(polys(H.sig, -1, 2, 2), polys(H.sig, -1, 2, 2))
def test_section_product_matches_coordinates(a, b):
    c2s = shcp.coordinates_to_section
    assert c2s(a * b) == c2s(a) * c2s(b)


def test_specialization_matches_pointwise_formulas():
    f = shcp.coordinates_to_section(g("a11") * g("alpha12") * g("alpha21") + g("a22") ** -1)
    mu = shcp.mu_star(f)
    fi = shcp.i_star(f)
    for a, b in (((2, 3), (Fraction(1, 2), -1)), ((-1, 5), (3, Fraction(2, 3)))):
        gp, hp = ReducedPoint.diagonal(*a, m=1), ReducedPoint.diagonal(*b, m=1)
        sp = shcp.specialize_pair(mu, gp, hp)
        for u in P.wedges:
            for v in P.wedges:
                assert sp.get((u, v), 0) == shcp.pointwise_mu(f, u, v, gp, hp)
        vals = {"a11": gp.matrix[0][0], "a22": gp.matrix[1][1]}
        for w in P.wedges:
            assert evaluate(fi[w], vals) == shcp.pointwise_i(f, w, gp)


def test_free_basis():
    report = shcp.free_basis_report(P)
    assert report == {"rank": 4, "expected": 4, "closed": True, "top_reached": True}


# -- morphisms and parsing ------------------------------------------------------------

def test_identity_morphism_fixes_sections():
    f = shcp.coordinates_to_section(g("a11") ** 2 + g("alpha12") * g("alpha21"))
    assert shcp.apply_morphism(shcp.identity_morphism(P), f) == f


def test_torus_inclusion_keeps_the_even_component():
    T = shcp.torus_shcp()
    inc = shcp.torus_inclusion(T, P)
    assert inc.violations() == []
    f = shcp.coordinates_to_section(g("a11") ** 2 * g("a22") + g("alpha12") * g("alpha21"))
    pulled = shcp.apply_morphism(inc, f)
    assert pulled.comps == {(): f[()]}


def test_morphism_with_wrong_differential_is_rejected():
    T = shcp.torus_shcp()
    rho = [P.lie.basis_vector("E22"), P.lie.basis_vector("E11")]
    with pytest.raises(ValueError):
        shcp.SHCPMorphism(T, P, {n: t(n) for n in P.sig0.names}, rho)


def test_section_json():
    f = shcp.coordinates_to_section(g("a11") + g("alpha12"))
    assert shcp.SHCPSection.from_json(P, f.to_json()) == f
    assert shcp.SHCPSection.from_json(P, {"1": "a11"}) == shcp.SHCPSection(P, {(): t("a11")})
    with pytest.raises(ValueError, match="odd generator alpha12"):
        shcp.SHCPSection.from_json(P, {"1": "a11*alpha12"})
    with pytest.raises(ValueError):
        shcp.SHCPSection.from_json(P, ["a11"])


def test_components_must_be_even():
    with pytest.raises(SignatureError):
        shcp.SHCPSection(P, {(): g("alpha12")})
