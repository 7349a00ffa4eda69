"""Supergroup actions on affine superspaces and their SHCP counterparts.

An action of G on M is a coaction a*: O(M) -> O(G) ⊗ O(M), stored as the
images of the generators of O(M) in a joint signature listing the
coordinates of G before those of M (so the canonical monomial order is the
tensor order).  The SHCP side keeps the reduced coaction into O(G0) ⊗ O(M)
and the infinitesimal action ρ of g by derivations of O(M).
"""

from __future__ import annotations

import random
from fractions import Fraction

from .distributions import alpha
from .enveloping import UElement
from .shcp import SHCP, SHCPSection, gl11_shcp, pairing_reconstruct
from .superpoly import (EVEN, ODD, Signature, SuperDerivation, SuperPolynomial, evaluate,
                        inverse, poly_from_json, poly_to_json, substitute, supercommutator)


def joint_signature(left: Signature, right: Signature, suffix=None) -> Signature:
    gens = list(left.generators) + list(right.generators)
    if suffix:
        gens = [(f"{n}{suffix}", p, i) for n, p, i in left.generators] + list(right.generators)
    return Signature(gens)


def superline():
    """O(k^{1|1}): one even coordinate x and one odd coordinate xi."""
    return Signature([("x", EVEN), ("xi", ODD)])


def _split(p, nleft):
    """Monomials of a joint polynomial as (left exps, right exps, coeff)."""
    for m, c in p.terms.items():
        yield m[:nleft], m[nleft:], c


class SupergroupAction:
    """Coaction a*: O(M) -> O(G) ⊗ O(M) given on generators."""

    def __init__(self, H, sigM, images, name="action"):
        self.H = H
        self.sigM = sigM
        self.joint = joint_signature(H.sig, sigM)
        self.images = {}
        for g in sigM.names:
            p = images[g]
            if p.sig != self.joint:
                raise ValueError("images must live on the joint signature")
            if p and p.parity() != sigM.parities[sigM.index(g)]:
                raise ValueError(f"image of {g} has the wrong parity")
            self.images[g] = p
        self.name = name

    def coact(self, f):
        return substitute(f, self.images, self.joint)

    def __eq__(self, other):
        return isinstance(other, SupergroupAction) and self.images == other.images

    def to_json(self):
        return {"group": self.H.name,
                "space": [{"name": n, "parity": "odd" if p else "even"}
                          for n, p in zip(self.sigM.names, self.sigM.parities)],
                "images": {g: poly_to_json(p) for g, p in self.images.items()}}

    @classmethod
    def from_json(cls, H, data):
        sigM = Signature((d["name"], d["parity"]) for d in data["space"])
        joint = joint_signature(H.sig, sigM)
        return cls(H, sigM, {g: poly_from_json(joint, v) for g, v in data["images"].items()})

    def __repr__(self):
        from .superpoly import format_poly
        return "; ".join(f"a*({g}) = {format_poly(p)}" for g, p in self.images.items())


def standard_action(H=None):
    """GL(1|1) acting on k^{1|1} by matrix times column, dualized."""
    H = H or gl11_shcp().ambient
    sigM = superline()
    J = joint_signature(H.sig, sigM)
    g = lambda n: SuperPolynomial.gen(J, n)
    return SupergroupAction(H, sigM, {
        "x": g("a11") * g("x") + g("alpha12") * g("xi"),
        "xi": g("alpha21") * g("x") + g("a22") * g("xi"),
    }, name="standard")


def trivial_action(H=None, sigM=None):
    H = H or gl11_shcp().ambient
    sigM = sigM or superline()
    J = joint_signature(H.sig, sigM)
    return SupergroupAction(H, sigM, {n: SuperPolynomial.gen(J, n) for n in sigM.names},
                            name="trivial")


def berezinian_action(H=None):
    """x -> Ber ⊗ x, ξ -> 1 ⊗ ξ: a character acting on the even line."""
    base = standard_action(H)
    g = lambda n: SuperPolynomial.gen(base.joint, n)
    ber = (g("a11") - g("alpha12") * inverse(g("a22")) * g("alpha21")) * inverse(g("a22"))
    return SupergroupAction(base.H, base.sigM, {"x": ber * g("x"), "xi": g("xi")},
                            name="berezinian")


def corrupted_action(H=None):
    """The standard action with the α12 ⊗ ξ term removed from a*(x)."""
    A = standard_action(H)
    g = lambda n: SuperPolynomial.gen(A.joint, n)
    images = dict(A.images)
    images["x"] = g("a11") * g("x")
    return SupergroupAction(A.H, A.sigM, images, name="corrupted")


def check_action_axioms(A: SupergroupAction):
    """(Δ ⊗ id) a* = (id ⊗ a*) a* and (ε ⊗ id) a* = id on every generator."""
    H = A.H
    sig3 = Signature([(f"{n}@1", p, i) for n, p, i in H.sig.generators]
                     + [(f"{n}@2", p, i) for n, p, i in H.sig.generators]
                     + list(A.sigM.generators))
    slot = lambda s, q: substitute(q, {f"{n}@{k}": SuperPolynomial.gen(sig3, f"{n}@{s if k == 1 else s + 1}")
                                       for n in H.sig.names for k in (1, 2)}, sig3)
    via_delta = {}
    for n in H.sig.names:
        via_delta[n] = slot(1, H.delta(SuperPolynomial.gen(H.sig, n)))
    via_delta.update({n: SuperPolynomial.gen(sig3, n) for n in A.sigM.names})
    inner = {n: SuperPolynomial.gen(sig3, f"{n}@1") for n in H.sig.names}
    for z in A.sigM.names:
        inner[z] = substitute(A.images[z], {**{n: SuperPolynomial.gen(sig3, f"{n}@2") for n in H.sig.names},
                                            **{m: SuperPolynomial.gen(sig3, m) for m in A.sigM.names}}, sig3)
    counit = {n: SuperPolynomial.const(A.sigM, H.counit_values.get(n, 0)) for n in H.sig.names}
    counit.update({m: SuperPolynomial.gen(A.sigM, m) for m in A.sigM.names})
    report = []
    for z in A.sigM.names:
        img = A.images[z]
        lhs = substitute(img, via_delta, sig3)
        rhs = substitute(img, inner, sig3)
        report.append((f"associativity on {z}", lhs == rhs))
        report.append((f"unit on {z}", substitute(img, counit, A.sigM) == SuperPolynomial.gen(A.sigM, z)))
    return report


# -- infinitesimal action ---------------------------------------------------------

def infinitesimal_action(A: SupergroupAction, X):
    """The operator (X ⊗ id) a* on O(M), X in U(g) (a basis name or a UElement)."""
    H = A.H
    if isinstance(X, str):
        X = H.U.gen(X)
    phi = alpha(H, X)
    n = len(H.sig)
    cache = {}

    def op(f):
        if f.sig != A.sigM:
            raise ValueError("operator acts on O(M)")
        out = {}
        for left, right, c in _split(A.coact(f), n):
            if left not in cache:
                cache[left] = phi(SuperPolynomial(H.sig, {left: 1}))
            v = cache[left]
            if v:
                out[right] = out.get(right, 0) + c * v
        return SuperPolynomial(A.sigM, out)

    return op


def infinitesimal_derivation(A: SupergroupAction, k) -> SuperDerivation:
    """ρ(X) for a basis vector X as a derivation of O(M)."""
    H = A.H
    name = H.lie.names[k] if isinstance(k, int) else k
    op = infinitesimal_action(A, name)
    values = {z: op(SuperPolynomial.gen(A.sigM, z)) for z in A.sigM.names}
    par = H.lie.parities[H.lie.index(name)]
    return SuperDerivation(A.sigM, {z: v for z, v in _as_coefficients(A.sigM, values).items()}, par)


def _as_coefficients(sig, values):
    """Derivation coefficients p_z with D(z) = p_z: D = Σ p_z ∂_z."""
    return {z: v for z, v in values.items() if v}


def check_bracket_relation(A: SupergroupAction, probes=None):
    """ρ([X,Y]) = -(-1)^{|X||Y|} [ρ(X), ρ(Y)] on every pair of basis vectors.

    ρ(X) = (X ⊗ id)a* reverses products, so brackets pick up this sign.
    Returns the failing (X, Y) pairs.
    """
    L = A.H.lie
    rho = [infinitesimal_derivation(A, k) for k in range(L.dim)]
    if probes is None:
        gens = [SuperPolynomial.gen(A.sigM, z) for z in A.sigM.names]
        probes = gens + [a * b for a in gens for b in gens]
    bad = []
    for i in range(L.dim):
        for j in range(L.dim):
            br = L.bracket_basis(i, j)
            sign = 1 if (L.parities[i] & L.parities[j]) else -1
            comm = supercommutator(rho[i], rho[j])
            for f in probes:
                lhs = SuperPolynomial.zero(A.sigM)
                for k, c in enumerate(br):
                    if c:
                        lhs = lhs + rho[k](f) * c
                if lhs != comm(f) * sign:
                    bad.append((L.names[i], L.names[j]))
                    break
    return bad


# -- SHCP actions ----------------------------------------------------------------

class SHCPAction:
    """Reduced coaction a̅* into O(G0) ⊗ O(M) plus ρ: g -> Der(O(M))."""

    def __init__(self, P: SHCP, sigM, reduced_images, rho, name="shcp action"):
        self.P = P
        self.sigM = sigM
        self.joint = joint_signature(P.sig0, sigM)
        self.reduced = dict(reduced_images)
        self.rho = list(rho)
        self.name = name

    def reduced_coact(self, f):
        return substitute(f, self.reduced, self.joint)

    def rho_u(self, u: UElement, f: SuperPolynomial) -> SuperPolynomial:
        """ρ extended to U(g) as an anti-homomorphism: ρ(XY) = ρ(Y)∘ρ(X)."""
        out = SuperPolynomial.zero(f.sig)
        for m, c in u.terms.items():
            q = f
            for b in u.A.word(m):
                q = self._rho_slot(b, q)
                if not q:
                    break
            if q:
                out = out + q * c
        return out

    def _rho_slot(self, b, q):
        """Apply ρ(b) to the O(M) part of a polynomial on the joint signature."""
        D = self.rho[b]
        if q.sig == self.sigM:
            return D(q)
        n0 = len(self.P.sig0)
        out = SuperPolynomial.zero(q.sig)
        for left, right, c in _split(q, n0):
            r = D(SuperPolynomial(self.sigM, {right: 1}))
            if r:
                lift = SuperPolynomial(self.joint, {left + (0,) * len(self.sigM): c})
                out = out + lift * _embed_right(r, self.joint, n0)
        return out

    def point_map(self, values):
        """(a̅^g)*: O(M) -> O(M), the reduced coaction evaluated at g."""
        images = {}
        for z, p in self.reduced.items():
            images[z] = _evaluate_left(p, values, self.sigM, len(self.P.sig0))
        return lambda f: substitute(f, images, self.sigM)

    def compatibility(self, samples=20, seed=0):
        """ρ|g0 matches the reduced coaction; ρ(g.Y) = (a̅^{g^{-1}})* ρ(Y) (a̅^g)*."""
        P = self.P
        L = P.lie
        report = []
        # differential of the reduced coaction along even basis vectors
        for b, gname in P.torus_letters.items():
            for z in self.sigM.names:
                img = self.reduced[z]
                out = {}
                i = P.sig0.index(gname)
                for left, right, c in _split(img, len(P.sig0)):
                    if left[i]:
                        out[right] = out.get(right, 0) + c * left[i]
                expect = SuperPolynomial(self.sigM, out)
                ok = self.rho[b](SuperPolynomial.gen(self.sigM, z)) == expect
                report.append((f"rho({L.names[b]}) on {z} is the reduced derivative", ok))
        rng = random.Random(seed)
        for t in range(samples):
            vals = {g: Fraction(rng.choice([1, 2, 3, 5, -1, -2]), rng.choice([1, 2, 3])) for g in P.sig0.names}
            inv_vals = {g: 1 / v for g, v in vals.items()}
            fwd, back = self.point_map(vals), self.point_map(inv_vals)
            ok = True
            for k in range(L.dim):
                moved = [Fraction(0)] * L.dim
                for j, p in P.coaction[k].items():
                    moved[j] += evaluate(p, inv_vals)
                lhs_rho = _combine(self.rho, moved, self.sigM)
                for z in self.sigM.names:
                    x = SuperPolynomial.gen(self.sigM, z)
                    if lhs_rho(x) != back(self.rho[k](fwd(x))):
                        ok = False
            report.append((f"Ad compatibility at sample {t}", ok))
        return report


def _combine(rho, vec, sigM):
    def op(f):
        out = SuperPolynomial.zero(sigM)
        for j, c in enumerate(vec):
            if c:
                out = out + rho[j](f) * c
        return out
    return op


def _embed_right(p, joint, offset):
    return SuperPolynomial(joint, {(0,) * offset + m: c for m, c in p.terms.items()})


def _evaluate_left(p, values, sigM, n0):
    out = {}
    left_sig_names = list(p.sig.names[:n0])
    for left, right, c in _split(p, n0):
        v = c
        for name, e in zip(left_sig_names, left):
            if e:
                v *= Fraction(values[name]) ** e
        out[right] = out.get(right, 0) + v
    return SuperPolynomial(sigM, out)


def shcp_action_of(A: SupergroupAction, P: SHCP | None = None) -> SHCPAction:
    """Reduced coaction and infinitesimal action of a supergroup action."""
    P = P or gl11_shcp()
    H = A.H
    joint0 = joint_signature(P.sig0, A.sigM)
    odd_g = [i for i in H.sig.odd_indices]
    reduced = {}
    for z, p in A.images.items():
        out = {}
        for m, c in p.terms.items():
            if any(m[i] for i in odd_g):
                continue
            left = tuple(m[H.sig.index(g)] for g in P.sig0.names)
            out[left + m[len(H.sig):]] = c
        reduced[z] = SuperPolynomial(joint0, out)
    rho = [infinitesimal_derivation(A, k) for k in range(H.lie.dim)]
    return SHCPAction(P, A.sigM, reduced, rho, name=f"{A.name} (reduced)")


def action_sections(S: SHCPAction, z: str) -> dict:
    """a*(z) in split-section ⊗ O(M) form: {M-monomial: section over G}.

    The section attached to an M-monomial n is the coefficient of n in
    w -> (1 ⊗ ρ(γ(w))) a̅*(z).
    """
    P = S.P
    n0 = len(P.sig0)
    base = S.reduced_coact(SuperPolynomial.gen(S.sigM, z))
    per_mono = {}
    for w in P.wedges:
        val = S.rho_u(P.gamma(w), base)
        for left, right, c in _split(val, n0):
            comp = SuperPolynomial(P.sig0, {left: c})
            d = per_mono.setdefault(right, {})
            d[w] = d[w] + comp if w in d else comp
    return {right: SHCPSection(P, comps) for right, comps in per_mono.items()}


def reconstruct_action(S: SHCPAction, check: bool = True) -> SupergroupAction:
    """The supergroup action with reduced action a̅* and infinitesimal action ρ.

    Each section of action_sections is read through the distribution pairing
    g -> ⟨g ⊗ γ(w), s⟩ (pairing_section), which is what ρ is built from;
    no extra parity sign enters.  With ``check`` the compatibility relations
    are verified first and a violation raises ValueError.
    """
    if check:
        bad = [label for label, ok in S.compatibility() if not ok]
        if bad:
            raise ValueError(f"SHCP action violates a compatibility relation: {bad[0]}")
    P = S.P
    H = P.ambient
    joint = joint_signature(H.sig, S.sigM)
    images = {}
    for z in S.sigM.names:
        total = SuperPolynomial.zero(joint)
        for right, section in action_sections(S, z).items():
            s = pairing_reconstruct(section)
            lifted = SuperPolynomial(joint, {m + (0,) * len(S.sigM): c for m, c in s.terms.items()})
            total = total + lifted * _embed_right(SuperPolynomial(S.sigM, {right: 1}), joint, len(H.sig))
        images[z] = total
    return SupergroupAction(H, S.sigM, images, name="reconstructed")
