import pytest

from supalg import actions as act
from supalg.shcp import gl11_shcp, pairing_section
from supalg.superpoly import SuperDerivation, SuperPolynomial, EVEN, ODD

P = gl11_shcp()
H = P.ambient
STD = act.standard_action()
M = STD.sigM
x, xi = SuperPolynomial.gen(M, "x"), SuperPolynomial.gen(M, "xi")
idx = H.lie.index


def derivation(par, **coeffs):
    return SuperDerivation(M, coeffs, par)


def test_standard_action_axioms():
    assert all(ok for _, ok in act.check_action_axioms(STD))


@pytest.mark.parametrize("make", [act.trivial_action, act.berezinian_action])
def test_other_actions_satisfy_axioms(make):
    assert all(ok for _, ok in act.check_action_axioms(make()))


def test_corrupted_action_fails_associativity():
    failing = [label for label, ok in act.check_action_axioms(act.corrupted_action()) if not ok]
    assert failing == ["associativity on x", "associativity on xi"]


def test_images_of_the_standard_action():
    J = STD.joint
    g = lambda n: SuperPolynomial.gen(J, n)
    assert STD.coact(x) == g("a11") * g("x") + g("alpha12") * g("xi")
    assert STD.coact(xi) == g("alpha21") * g("x") + g("a22") * g("xi")


# ρ(X)(z) = (X ⊗ id) a*(z): X picks the coefficient of its own coordinate.
def test_infinitesimal_action_values():
    rho = [act.infinitesimal_derivation(STD, k) for k in range(H.lie.dim)]
    assert rho[idx("E11")] == derivation(EVEN, x=x)
    assert rho[idx("E22")] == derivation(EVEN, xi=xi)
    assert rho[idx("E12")] == derivation(ODD, x=xi)
    assert rho[idx("E21")] == derivation(ODD, xi=x)


def test_products_act_in_reverse_order():
    U = H.U
    S = act.shcp_action_of(STD)
    for a, b in (("E12", "E21"), ("E21", "E12"), ("E11", "E12")):
        whole = act.infinitesimal_action(STD, U.gen(a) * U.gen(b))
        ra, rb = S.rho[idx(a)], S.rho[idx(b)]
        for f in (x, xi, x * xi, x * x):
            assert whole(f) == rb(ra(f))
            assert S.rho_u(U.gen(a) * U.gen(b), f) == whole(f)


@pytest.mark.parametrize("make", [act.standard_action, act.berezinian_action])
def test_bracket_relation(make):
    assert act.check_bracket_relation(make()) == []


def test_reduced_action_is_the_even_part():
    S = act.shcp_action_of(STD)
    g = lambda n: SuperPolynomial.gen(S.joint, n)
    assert S.reduced == {"x": g("a11") * g("x"), "xi": g("a22") * g("xi")}


def test_empty_wedge_component_is_the_reduced_action():
    S = act.shcp_action_of(STD)
    secs = act.action_sections(S, "x")
    n0 = len(P.sig0)
    for right, sec in secs.items():
        expected = {left: c for left, r, c in act._split(S.reduced["x"], n0) if r == right}
        assert sec[()] == SuperPolynomial(P.sig0, expected)


def test_action_sections_are_pairing_sections_of_the_coaction():
    S = act.shcp_action_of(STD)
    n = len(H.sig)
    for z in ("x", "xi"):
        full = {}
        for left, right, c in act._split(STD.coact(SuperPolynomial.gen(M, z)), n):
            full.setdefault(right, {})[left] = c
        secs = act.action_sections(S, z)
        assert set(secs) == set(full)
        for right, terms in full.items():
            assert secs[right] == pairing_section(SuperPolynomial(H.sig, terms), P)


@pytest.mark.parametrize("make", [act.standard_action, act.trivial_action, act.berezinian_action])
def test_reconstruction_round_trip(make):
    a = make()
    assert act.reconstruct_action(act.shcp_action_of(a)) == a


def test_compatibility_holds():
    S = act.shcp_action_of(STD)
    assert all(ok for _, ok in S.compatibility(samples=10, seed=3))


def test_incompatible_rho_is_rejected():
    S = act.shcp_action_of(STD)
    rho = list(S.rho)
    rho[idx("E11")], rho[idx("E22")] = rho[idx("E22")], rho[idx("E11")]
    bad = act.SHCPAction(P, S.sigM, S.reduced, rho)
    with pytest.raises(ValueError, match="compatibility"):
        act.reconstruct_action(bad)


def test_wrong_parity_image_is_rejected():
    J = STD.joint
    with pytest.raises(ValueError, match="parity"):
        act.SupergroupAction(H, M, {"x": SuperPolynomial.gen(J, "xi"), "xi": SuperPolynomial.gen(J, "xi")})


def test_json_round_trip():
    assert act.SupergroupAction.from_json(H, STD.to_json()) == STD
