"""Verification suites behind ``supalg check``.

Each suite returns a JSON-ready report: a list of checks with pass/fail
status and a witness for the first failure, plus free-text notes.  Timing is
deliberately absent so reports for a fixed seed are byte-identical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import actions as act
from . import distributions as dist
from . import shcp
from .enveloping import UAlgebra, UElement
from .liesuper import build_gl, check_antisymmetry, jacobi_defect
from .randomgen import (random_diagonal_point, random_distribution, random_poly,
                        random_section, random_u)
from .superpoly import DiffOperator, SuperPolynomial, evaluate

SUITES = ("jacobi", "pbw", "hopf-u", "distributions", "shcp-hopf",
          "eta-roundtrip", "closed-form", "actions")

DEFAULT_JACOBI_GROUPS = ((1, 1), (2, 1), (2, 2))


@dataclass(frozen=True)
class Config:
    group: tuple | None = None  # (m, n); None lets each suite use its defaults
    degree_bound: int = 4
    seed: int = 0

    def __post_init__(self):
        if self.degree_bound < 1:
            raise ValueError("degree bound must be positive")
        if self.group is not None:
            m, n = self.group
            if not (1 <= m <= 3 and 0 <= n <= 3):
                raise ValueError("group must be gl(m|n) with 1 <= m <= 3, n <= 3")


def parse_group(text: str):
    """'gl(2|1)' or '2,1' -> (2, 1)."""
    t = text.strip().lower().replace(" ", "")
    if t.startswith("gl(") and t.endswith(")"):
        t = t[3:-1]
    for sep in ("|", ","):
        if sep in t:
            a, b = t.split(sep, 1)
            try:
                return int(a), int(b)
            except ValueError:
                break
    raise ValueError(f"cannot read group {text!r}; expected e.g. gl(1|1)")


class Report:
    def __init__(self, name):
        self.name = name
        self.checks = []
        self.notes = []

    def add(self, check_id, ok, witness=None):
        entry = {"id": check_id, "status": "pass" if ok else "fail"}
        if not ok and witness is not None:
            entry["witness"] = str(witness)
        self.checks.append(entry)
        return ok

    def all_of(self, check_id, items, test):
        """One check line covering many cases; the witness is the first failure."""
        count = 0
        for item in items:
            count += 1
            ok = test(item)
            if not ok:
                return self.add(check_id, False, item)
        return self.add(f"{check_id} ({count} cases)", True)

    def note(self, text):
        self.notes.append(text)

    @property
    def passed(self):
        return all(c["status"] == "pass" for c in self.checks)

    def to_json(self):
        return {"suite": self.name, "passed": self.passed,
                "checks": self.checks, "notes": self.notes}


def _rng(cfg, salt):
    # one generator per suite, derived from the run seed, so suites can run in any order
    return random.Random(f"{cfg.seed}:{salt}")


# -- liesuper ------------------------------------------------------------------

def suite_jacobi(cfg: Config) -> Report:
    rep = Report("jacobi")
    groups = [cfg.group] if cfg.group else DEFAULT_JACOBI_GROUPS
    for m, n in groups:
        L = build_gl(m, n)
        tag = f"gl({m}|{n})"
        bad = check_antisymmetry(L)
        rep.add(f"{tag} antisymmetry", not bad, bad[:1] or None)
        classes = {k: [] for k in range(4)}
        for t in product(range(L.dim), repeat=3):
            classes[sum(L.parities[i] for i in t)].append(t)
        for k in range(4):
            triples = classes[k]
            bad = [t for t in triples if any(jacobi_defect(L, *t))]
            witness = tuple(L.names[i] for i in bad[0]) if bad else None
            rep.add(f"{tag} jacobi, {k} odd ({len(triples)} triples)", not bad, witness)
    return rep


# -- enveloping ----------------------------------------------------------------

def suite_pbw(cfg: Config) -> Report:
    rep = Report("pbw")
    rng = _rng(cfg, "pbw")
    for (m, n), count in (((1, 1), 200), ((2, 1), 50)):
        A = UAlgebra(build_gl(m, n))
        tag = f"U(gl({m}|{n}))"
        triples = [tuple(random_u(A, rng, 3, 2) for _ in range(3)) for _ in range(count)]
        rep.all_of(f"{tag} associativity", triples,
                   lambda t: (t[0] * t[1]) * t[2] == t[0] * (t[1] * t[2]))
        odd = A.L.odd_indices
        pairs = [(i, j) for i in odd for j in odd if A.rank[i] < A.rank[j]]

        def gamma_pair(p):
            x, y = A.gen(p[0]), A.gen(p[1])
            return A.symmetrizer(p) == (x * y - y * x) * Fraction(1, 2)
        rep.all_of(f"{tag} gamma on two-factor wedges", pairs, gamma_pair)
        rep.all_of(f"{tag} split after gamma is the identity", A.wedge_monomials(),
                   lambda w: A.pbw_split(A.symmetrizer(w)) == {w: A.one()})
        monos = dist.pbw_monomials(A, 4)
        rep.all_of(f"{tag} gamma after split is the identity", monos,
                   lambda mo: A.pbw_join(A.pbw_split(UElement(A, {mo: 1}))) == UElement(A, {mo: 1}))
    rep.note("join-after-split runs on every PBW monomial of degree <= 4")
    A = UAlgebra(build_gl(1, 1))
    rep.add("E21*E12 normal form", str(A.gen("E21") * A.gen("E12")) == "E11 + E22 - E12*E21",
            A.gen("E21") * A.gen("E12"))
    rep.add("odd square E12*E12 vanishes", not (A.gen("E12") * A.gen("E12")).terms)
    return rep


def _coassoc(A, u):
    D = A.coproduct(u)
    return D.apply_slot(0, A._mono_coproduct) == D.apply_slot(1, A._mono_coproduct)


def _counit_sides(A, u):
    left, right = A.zero(), A.zero()
    for (m1, m2), c in A.coproduct(u).terms.items():
        if m1 == A.unit_mono:
            left = left + UElement(A, {m2: c})
        if m2 == A.unit_mono:
            right = right + UElement(A, {m1: c})
    return left == u and right == u


def _antipode_sides(A, u):
    left, right = A.zero(), A.zero()
    for (m1, m2), c in A.coproduct(u).terms.items():
        x1, x2 = UElement(A, {m1: 1}), UElement(A, {m2: 1})
        left = left + A.antipode(x1) * x2 * c
        right = right + x1 * A.antipode(x2) * c
    unit = A.one() * A.counit(u)
    return left == unit and right == unit


def suite_hopf_u(cfg: Config) -> Report:
    rep = Report("hopf-u")
    rng = _rng(cfg, "hopf-u")
    A = UAlgebra(build_gl(1, 1))
    basis = [UElement(A, {m: 1}) for m in dist.pbw_monomials(A, 3)]
    rand = [random_u(A, rng, 3, 3) for _ in range(50)]
    for label, items in (("basis deg<=3", basis), ("random", rand)):
        rep.all_of(f"coassociativity, {label}", items, lambda u: _coassoc(A, u))
        rep.all_of(f"counit, {label}", items, lambda u: _counit_sides(A, u))
        rep.all_of(f"antipode law, {label}", items, lambda u: _antipode_sides(A, u))
    pairs = [(random_u(A, rng, 2, 2), random_u(A, rng, 2, 2)) for _ in range(20)]
    rep.all_of("coproduct is multiplicative", pairs,
               lambda p: A.coproduct(p[0] * p[1]) == A.coproduct(p[0]) * A.coproduct(p[1]))
    return rep


# -- distributions -------------------------------------------------------------

def _random_monomial_poly(sig, rng, bound):
    """A monomial in the coordinates of total degree <= bound (no inverses)."""
    m = [0] * len(sig)
    for _ in range(rng.randint(0, bound)):
        i = rng.randrange(len(sig))
        if sig.parities[i] and m[i]:
            continue
        m[i] += 1
    return SuperPolynomial(sig, {tuple(m): 1})


def suite_distributions(cfg: Config) -> Report:
    rep = Report("distributions")
    rng = _rng(cfg, "distributions")
    H = dist.gl_hopf(1, 1)
    e = H.identity
    unit = dist.Distribution.at(H, e)
    samples = [random_distribution(H, rng) for _ in range(20)]
    rep.all_of("ev_e is a two-sided unit", samples,
               lambda p: dist.convolve(unit, p) == p and dist.convolve(p, unit) == p)
    pairs = [(random_distribution(H, rng, 1, 2, 2), random_distribution(H, rng, 1, 2, 2))
             for _ in range(100)]
    rep.all_of("Psi intertwines convolution with the smash product", pairs,
               lambda p: dist.convolve(*p) == dist.smash_multiply(*p))
    pts = [(random_diagonal_point(1, 1, rng), random_diagonal_point(1, 1, rng)) for _ in range(50)]
    rep.all_of("point supports multiply as group elements", pts,
               lambda p: dist.convolve(dist.Distribution.at(H, p[0]), dist.Distribution.at(H, p[1]))
               == dist.Distribution.at(H, p[0] * p[1]))

    bound = cfg.degree_bound

    def functional_agreement(p):
        phi, psi = p
        fa, fb = phi.functionals(), psi.functionals()
        conv = dist.convolve(phi, psi)
        for _ in range(3):
            f = _random_monomial_poly(H.sig, rng, bound)
            direct = Fraction(0)
            for m, c in H.delta(f).terms.items():
                f1, f2 = _split_tensor(H, m)
                direct += c * sum(a(f1) for a in fa.values()) * sum(b(f2) for b in fb.values())
            if conv.pair(f) != direct:
                return False
        return True
    rep.all_of(f"convolution agrees with (phi x psi) Delta up to degree {bound}", pairs[:20],
               functional_agreement)

    iso = dist.check_alpha_iso(2, H)
    bad = [name for name, ok in iso["checks"] if not ok]
    rep.add("alpha is an isomorphism up to order 2", iso["passed"], bad[:1] or None)

    triples = [tuple(random_distribution(H, rng, 1, 1, 2) for _ in range(3)) for _ in range(10)]
    rep.all_of("smash product is associative", triples,
               lambda t: dist.smash_multiply(dist.smash_multiply(t[0], t[1]), t[2])
               == dist.smash_multiply(t[0], dist.smash_multiply(t[1], t[2])))

    def coproduct_pairing(p):
        phi, _ = p
        D = dist.dist_coproduct(phi)
        for _ in range(2):
            f = _random_monomial_poly(H.sig, rng, 2)
            h = _random_monomial_poly(H.sig, rng, 2)
            if dist.pair_tensor(H, D, f, h) != phi.pair(f * h):
                return False
        return True
    rep.all_of("coproduct pairs as multiplication", pairs[:20], coproduct_pairing)

    def antipode_pairing(p):
        phi, _ = p
        S = dist.dist_antipode(phi)
        for _ in range(2):
            f = _random_monomial_poly(H.sig, rng, 2)
            if S.pair(f) != phi.pair(H.antipode(f)):
                return False
        return True
    rep.all_of("antipode is precomposition with the coordinate antipode", pairs[:20],
               antipode_pairing)
    axioms = H.check_axioms()
    rep.add("coordinate Hopf axioms of O(GL(1|1))", not axioms, axioms[:1] or None)
    rep.note("the coproduct of distributions is paired with f (x) h without a Koszul sign")
    return rep


def _split_tensor(H, m):
    n = len(H.sig)
    return (SuperPolynomial(H.sig, {m[:n]: 1}), SuperPolynomial(H.sig, {m[n:]: 1}))


# -- SHCP ----------------------------------------------------------------------

def _expected_operators(sig):
    g = lambda n: SuperPolynomial.gen(sig, n)

    def key(**e):
        return tuple(e.get(n, 0) for n in sig.names)
    d12 = DiffOperator(sig, {key(alpha12=1): g("a11"), key(a22=1): g("alpha21")})
    d21 = DiffOperator(sig, {key(a11=1): g("alpha12"), key(alpha21=1): g("a22")})
    top = DiffOperator(sig, {key(alpha12=1, alpha21=1): g("a11") * g("a22"),
                             key(a11=1): g("a11") * Fraction(1, 2),
                             key(a22=1): g("a22") * Fraction(-1, 2)})
    return d12, d21, top


def suite_shcp_hopf(cfg: Config) -> Report:
    rep = Report("shcp-hopf")
    rng = _rng(cfg, "shcp-hopf")
    P = shcp.gl11_shcp()
    H = P.ambient
    L, A = P.lie, P.U
    d12, d21, top = _expected_operators(H.sig)
    D12 = shcp.left_invariant_derivation(L, "E12", H.sig).to_operator()
    D21 = shcp.left_invariant_derivation(L, "E21", H.sig).to_operator()
    rep.add("D12 = a11 d[alpha12] + alpha21 d[a22]", D12 == d12, D12)
    rep.add("D21 = alpha12 d[a11] + a22 d[alpha21]", D21 == d21, D21)
    g12 = shcp.left_invariant_operator(L, A.symmetrizer(A.wedge_from_label("E12^E21")), H.sig)
    red = g12.reduce_coefficients()
    rep.add("gamma(D12 D21) modulo odd coefficients", red == top, red)
    bad = shcp.check_left_invariance(H, L)
    rep.add("D_X are left-invariant on coordinates", not bad, bad[:1] or None)
    for m, n in ((1, 1), (2, 1)):
        bad = shcp.check_bracket_homomorphism(build_gl(m, n))
        rep.add(f"D_[X,Y] = [D_X, D_Y] on gl({m}|{n}) basis pairs", not bad, bad[:1] or None)
    rep.note("X -> D_X is a homomorphism: D_[X,Y] = [D_X, D_Y]")

    g = lambda n: SuperPolynomial.gen(H.sig, n)
    rep.all_of("mu* agrees with the matrix coproduct on coordinates", H.sig.names,
               lambda n: shcp.mu_star(shcp.coordinates_to_section(g(n)))
               == shcp.coordinates_to_double_section(H.delta(g(n))))
    rep.all_of("i* agrees with the coordinate antipode on coordinates", H.sig.names,
               lambda n: shcp.i_star(shcp.coordinates_to_section(g(n)))
               == shcp.coordinates_to_section(H.antipode(g(n))))
    coord_secs = [shcp.coordinates_to_section(g(n)) for n in H.sig.names]
    randoms = [random_section(P, rng, -2, 3, 2) for _ in range(50)]
    for label, secs in (("coordinates", coord_secs), ("random sections", randoms)):
        results = [(f, dict(shcp.check_hopf_axioms(f))) for f in secs]
        for axiom in ("coassociativity", "left counit", "right counit",
                      "left antipode", "right antipode"):
            rep.all_of(f"{axiom} on {label}", results, lambda r, ax=axiom: r[1][ax])
    f = randoms[0] * randoms[1]
    mu, fi = shcp.mu_star(f), shcp.i_star(f)
    points = [(random_diagonal_point(1, 1, rng), random_diagonal_point(1, 1, rng)) for _ in range(20)]

    def pointwise(p):
        gp, hp = p
        sp = shcp.specialize_pair(mu, gp, hp)
        for u in P.wedges:
            for v in P.wedges:
                if sp.get((u, v), 0) != shcp.pointwise_mu(f, u, v, gp, hp):
                    return False
        vals = shcp._point_values(P, gp)
        return all(evaluate(fi[w], vals) == shcp.pointwise_i(f, w, gp) for w in P.wedges)
    rep.all_of("specialization matches the pointwise formulas", points, pointwise)

    fb = shcp.free_basis_report(P)
    rep.add("pure components form a free basis of rank 4",
            fb["rank"] == fb["expected"] == 4 and fb["closed"] and fb["top_reached"], fb)
    inc = shcp.torus_inclusion(shcp.torus_shcp(), P)
    rep.add("torus inclusion is a morphism of pairs", not inc.violations())
    rep.note("sections are identified with coordinates through eta* composed with "
             "alpha21 -> -alpha21; with this identification mu* is the matrix coproduct")
    return rep


def suite_eta_roundtrip(cfg: Config) -> Report:
    rep = Report("eta-roundtrip")
    rng = _rng(cfg, "eta-roundtrip")
    P = shcp.gl11_shcp()
    H = P.ambient
    secs = [random_section(P, rng, -2, 3, 2) for _ in range(100)]
    rep.all_of("eta* after reconstruct is the identity", secs,
               lambda s: shcp.eta_star(shcp.reconstruct(s)) == s)
    polys = [random_poly(H.sig, rng, -2, 3, 3) for _ in range(100)]
    rep.all_of("reconstruct after eta* is the identity", polys,
               lambda s: shcp.reconstruct(shcp.eta_star(s)) == s)
    pairs = list(zip(polys[:20], polys[20:40]))
    rep.all_of("eta* is multiplicative", pairs,
               lambda p: shcp.eta_star(p[0] * p[1]) == shcp.eta_star(p[0]) * shcp.eta_star(p[1]))
    rep.note("100 round trips in each direction; Laurent degrees -2..3")
    return rep


def suite_closed_form(cfg: Config) -> Report:
    rep = Report("closed-form")
    rng = _rng(cfg, "closed-form")
    P = shcp.gl11_shcp()
    A = P.U
    secs = [shcp.SHCPSection.pure(P, w) for w in P.wedges]
    secs += [random_section(P, rng, -2, 3, 2) for _ in range(30)]
    signs = {A.wedge_label(w): set() for w in P.wedges}
    beyond = None
    for s in secs:
        cmp = shcp.compare_closed_form(s)
        for label, v in cmp.items():
            if v is None and beyond is None:
                beyond = (label, s)
            elif v:
                signs[label].add(v)
    rep.add("solver and closed form differ at most by signs", beyond is None,
            beyond and f"component {beyond[0]} of {beyond[1]}")
    for label, found in signs.items():
        rep.add(f"component {label}: one sign across samples", len(found) <= 1, sorted(found))
    flipped = [label for label, found in signs.items() if found == {-1}]
    rep.note("sign normalization: " + (", ".join(flipped) + " enter with sign -1"
                                       if flipped else "none needed"))
    return rep


# -- actions -------------------------------------------------------------------

def suite_actions(cfg: Config) -> Report:
    rep = Report("actions")
    std = act.standard_action()
    for label, ok in act.check_action_axioms(std):
        rep.add(f"standard action: {label}", ok)
    S = act.shcp_action_of(std)
    back = act.reconstruct_action(S)
    rep.add("standard action round-trips through (reduced action, rho)", back == std, back)
    for a in (act.trivial_action(), act.berezinian_action()):
        b = act.reconstruct_action(act.shcp_action_of(a))
        rep.add(f"{a.name} action round-trips", b == a, b)
    bad = act.corrupted_action()
    failures = [label for label, ok in act.check_action_axioms(bad) if not ok]
    rep.add("corrupted action is rejected", bool(failures))
    if failures:
        rep.note("corrupted action fails: " + ", ".join(failures))
    comp = [label for label, ok in S.compatibility(samples=20, seed=cfg.seed) if not ok]
    rep.add("rho(g.Y) is the g-conjugate of rho(Y)", not comp, comp[:1] or None)
    br = act.check_bracket_relation(std)
    rep.add("rho([X,Y]) = -(-1)^{|X||Y|} [rho X, rho Y]", not br, br[:1] or None)
    rep.note("rho(X) = (X (x) id) a* reverses products: rho(XY) = rho(Y) rho(X)")
    return rep


RUNNERS = {
    "jacobi": suite_jacobi,
    "pbw": suite_pbw,
    "hopf-u": suite_hopf_u,
    "distributions": suite_distributions,
    "shcp-hopf": suite_shcp_hopf,
    "eta-roundtrip": suite_eta_roundtrip,
    "closed-form": suite_closed_form,
    "actions": suite_actions,
}


def run_suite(name: str, cfg: Config) -> dict:
    """JSON report for one suite or for ``all``."""
    if name == "all":
        reports = [RUNNERS[s](cfg).to_json() for s in SUITES]
        return {"suite": "all", "seed": cfg.seed, "degree_bound": cfg.degree_bound,
                "passed": all(r["passed"] for r in reports), "suites": reports}
    if name not in RUNNERS:
        raise KeyError(name)
    out = RUNNERS[name](cfg).to_json()
    out["seed"] = cfg.seed
    out["degree_bound"] = cfg.degree_bound
    return out


def render_text(report: dict) -> str:
    """Human-readable rendering derived from the JSON report."""
    if "suites" in report:
        lines = [render_text(r) for r in report["suites"]]
        lines.append(f"ALL: {'PASS' if report['passed'] else 'FAIL'}")
        return "\n".join(lines)
    lines = [f"== {report['suite']}: {'PASS' if report['passed'] else 'FAIL'}"]
    for c in report["checks"]:
        line = f"  [{c['status']}] {c['id']}"
        if "witness" in c:
            line += f"  witness: {c['witness']}"
        lines.append(line)
    for n in report["notes"]:
        lines.append(f"  note: {n}")
    return "\n".join(lines)
