"""Super Harish-Chandra pairs and the supergroup they reconstruct.

Sections of the reconstructed coordinate ring are U(g0)-linear maps
U(g) -> O(G0); they are stored in split form, one O(G0) component per
wedge monomial of the odd part.  Multi-sections (the tensor powers used by
the coproduct) carry one wedge per slot and components over the matching
tensor power of the reduced signature, slot ``j`` using names ``x@j``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .distributions import gl_coordinates, gl_hopf
from .enveloping import UAlgebra, UElement, generic_u_adjoint
from .liesuper import ReducedPoint, build_gl, generic_adjoint, torus_signature
from .superpoly import (EVEN, ODD, DiffOperator, SignatureError, SuperDerivation,
                        SuperPolynomial, as_fraction, derive, evaluate, extend_signature,
                        inverse, poly_from_json, poly_to_json, restrict_to_even, slot_parts,
                        substitute, supercommutator, tensor)


# -- left-invariant operators on O(GL(m|n)) ------------------------------------

def left_invariant_derivation(L, x, sig=None):
    """D_X = Σ_ij c_ij Σ_k x_ki ∂_{x_kj} for X = Σ c_ij E_ij."""
    m, n = L.gl_shape
    sig = sig or gl_coordinates(m, n)
    from .distributions import coordinate_name
    size = m + n
    if isinstance(x, str):
        x = L.basis_vector(x)
    out = None
    for c, (i, j) in zip(x, L.gl_order):
        if not c:
            continue
        terms = {}
        for k in range(1, size + 1):
            coeff = SuperPolynomial.gen(sig, coordinate_name(k, i, m)) * c
            g = coordinate_name(k, j, m)
            terms[g] = terms[g] + coeff if g in terms else coeff
        par = L.parities[L.gl_order.index((i, j))]
        d = SuperDerivation(sig, terms, par)
        out = d if out is None else out + d
    return out if out is not None else SuperDerivation(sig, {}, EVEN)


def left_invariant_operator(L, X, sig=None):
    """D_X as a differential operator; U(g) elements act by composition."""
    m, n = L.gl_shape
    sig = sig or gl_coordinates(m, n)
    if isinstance(X, UElement):
        A = X.A
        out = DiffOperator(sig)
        for mono, c in X.terms.items():
            op = DiffOperator.identity(sig)
            for b in reversed(A.word(mono)):
                op = left_invariant_derivation(L, L.basis_vector(b), sig).to_operator().compose(op)
            out = out + op.scale(c)
        return out
    if isinstance(X, str):
        X = L.basis_vector(X)
    return left_invariant_derivation(L, X, sig)


def apply_u(L, u: UElement, s: SuperPolynomial, cache=None):
    """D_u(s) computed letter by letter (rightmost letter acts first)."""
    A = u.A
    out = SuperPolynomial.zero(s.sig)
    ders = cache if cache is not None else {}
    for mono, c in u.terms.items():
        q = s
        for b in reversed(A.word(mono)):
            if b not in ders:
                ders[b] = left_invariant_derivation(L, L.basis_vector(b), s.sig)
            q = ders[b](q)
            if not q:
                break
        if q:
            out = out + q * c
    return out


def check_left_invariance(H, L):
    """(id ⊗ D_X) Δ(x) = Δ(D_X x) for every generator x and basis vector X."""
    failures = []
    for k in range(L.dim):
        D = left_invariant_derivation(L, L.basis_vector(k), H.sig)
        for g in H.sig.names:
            x = SuperPolynomial.gen(H.sig, g)
            lhs = slot_apply(H.delta(x), H.sig, 2, D)
            rhs = H.delta(D(x))
            if lhs != rhs:
                failures.append((L.names[k], g))
    return failures


def check_bracket_homomorphism(L, sig=None):
    """Basis pairs where D_[X,Y] differs from the supercommutator [D_X, D_Y]."""
    m, n = L.gl_shape
    sig = sig or gl_coordinates(m, n)
    D = [left_invariant_derivation(L, L.basis_vector(k), sig) for k in range(L.dim)]
    bad = []
    for i in range(L.dim):
        for j in range(L.dim):
            lhs = left_invariant_derivation(L, L.bracket_basis(i, j), sig)
            if lhs != supercommutator(D[i], D[j]):
                bad.append((L.names[i], L.names[j]))
    return bad


def slot_apply(F, sig, slot, op):
    """Apply a linear operator to one slot of a 2-fold tensor, no sign."""
    out = SuperPolynomial.zero(F.sig)
    for m, c in F.terms.items():
        parts = slot_parts(F.sig, m, 2)
        polys = [SuperPolynomial(sig, {p: 1}) for p in parts]
        polys[slot - 1] = op(polys[slot - 1])
        if polys[slot - 1]:
            out = out + tensor(*polys) * c
    return out


# -- SHCP data ------------------------------------------------------------------

class SHCP:
    """A reduced torus G0, a Lie superalgebra g and the G0-action on g.

    ``torus_letters`` maps each even basis index of g to the torus
    coordinate whose Euler operator a∂_a realises it on O(G0).  ``coaction``
    gives h^{-1}.x for basis vectors as {index: polynomial in h}.
    """

    def __init__(self, lie, sig0, torus_letters, coaction, *, ambient=None, name="SHCP"):
        self.lie = lie
        self.U = UAlgebra(lie)
        self.sig0 = sig0
        self.torus_letters = dict(torus_letters)
        self.coaction = coaction
        self.ambient = ambient
        self.name = name
        self.wedges = self.U.wedge_monomials()
        self._gamma = {w: self.U.symmetrizer(w) for w in self.wedges}
        self._split_cache = {}
        self._delta_cache = {}
        self._eta_cache = {}
        self._sigs = {}
        self._li_cache = {}
        self._pairing_cache = {}

    def __repr__(self):
        return f"SHCP({self.name})"

    def sig(self, r):
        if r not in self._sigs:
            self._sigs[r] = self.sig0.tensor_power(r)
        return self._sigs[r]

    def gamma(self, w):
        return self._gamma[w]

    def split(self, u):
        key = frozenset(u.terms.items())
        hit = self._split_cache.get(key)
        if hit is None:
            hit = self.U.pbw_split(u)
            self._split_cache[key] = hit
        return hit

    def euler(self, Y, p, slot=None):
        """D̃_Y on O(G0) (or on slot ``slot`` of a tensor power)."""
        sig = p.sig
        letter_pos = {}
        for b, g in self.torus_letters.items():
            letter_pos[b] = sig.index(g if slot is None else f"{g}@{slot}")
        out = {}
        for m, c in p.terms.items():
            total = Fraction(0)
            for ym, yc in Y.terms.items():
                f = yc
                for b, e in enumerate(ym):
                    if e:
                        if b not in letter_pos:
                            raise ValueError("U(g0) letter without a torus coordinate")
                        f *= Fraction(m[letter_pos[b]]) ** e
                        if not f:
                            break
                total += f
            if total:
                out[m] = c * total
        return SuperPolynomial(sig, out)

    def check(self, samples=5, seed=0):
        """Pair axioms: dimensions, and the coaction restricted to g0 is Ad."""
        import random
        rng = random.Random(seed)
        L = self.lie
        problems = []
        if len(L.even_indices) != len(self.sig0):
            problems.append("dim g0 differs from dim G0")
        for _ in range(samples):
            vals = {g: Fraction(rng.choice([1, 2, 3, -1, -2]), rng.choice([1, 2, 3])) for g in self.sig0.names}
            for k in L.even_indices:
                img = self.coaction[k]
                vec = [Fraction(0)] * L.dim
                for j, p in img.items():
                    vec[j] += evaluate(p, vals)
                if any(vec[j] for j in L.odd_indices):
                    problems.append(f"coaction moves even {L.names[k]} into the odd part")
                # torus is abelian, so its conjugation fixes g0
                if vec != list(L.basis_vector(k)):
                    problems.append(f"coaction on {L.names[k]} is not conjugation")
        return problems


@lru_cache(maxsize=None)
def gl11_shcp():
    """The pair of GL(1|1); shared, since sections compare pairs by identity."""
    L = build_gl(1, 1)
    sig0 = torus_signature(1, 1)
    coaction = [generic_adjoint(L, L.basis_vector(k), sig0) for k in range(L.dim)]
    letters = {L.index("E11"): "a11", L.index("E22"): "a22"}
    return SHCP(L, sig0, letters, coaction, ambient=gl_hopf(1, 1), name="GL(1|1)")


@lru_cache(maxsize=None)
def torus_shcp():
    """(GL(1) x GL(1), g0): the reduced pair of GL(1|1)."""
    L = build_gl(1, 1).even_subalgebra()
    sig0 = torus_signature(1, 1)
    coaction = [{k: SuperPolynomial.one(sig0)} for k in range(L.dim)]
    letters = {L.index("E11"): "a11", L.index("E22"): "a22"}
    return SHCP(L, sig0, letters, coaction, name="GL(1)xGL(1)")


# -- sections ---------------------------------------------------------------------

class SHCPSection:
    """Split section: wedge monomial -> component in O(G0)."""

    __slots__ = ("P", "comps")

    def __init__(self, P: SHCP, comps):
        self.P = P
        clean = {}
        for w, p in comps.items():
            w = tuple(w)
            if w not in P._gamma:
                raise KeyError(f"not a wedge monomial: {w}")
            if not isinstance(p, SuperPolynomial):
                p = SuperPolynomial.const(P.sig0, p)
            if p.sig != P.sig0:
                if any(par == ODD for par in p.sig.parities) and p.has_odd():
                    raise SignatureError("section components must be free of odd generators")
                p = restrict_to_even(p) if p.sig.odd_indices else p
                if p.sig != P.sig0:
                    raise SignatureError("component over the wrong signature")
            if p:
                clean[w] = p
        self.comps = clean

    @classmethod
    def unit(cls, P):
        return cls(P, {(): SuperPolynomial.one(P.sig0)})

    @classmethod
    def pure(cls, P, w, p=1):
        return cls(P, {tuple(w): p})

    def __getitem__(self, w):
        return self.comps.get(tuple(w), SuperPolynomial.zero(self.P.sig0))

    def __eq__(self, other):
        return isinstance(other, SHCPSection) and self.P is other.P and self.comps == other.comps

    def __add__(self, other):
        out = dict(self.comps)
        for w, p in other.comps.items():
            out[w] = out[w] + p if w in out else p
        return SHCPSection(self.P, out)

    def __neg__(self):
        return SHCPSection(self.P, {w: -p for w, p in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return SHCPSection(self.P, {w: p * c for w, p in self.comps.items()})

    def __mul__(self, other):
        if isinstance(other, SHCPSection):
            return section_multiply(self, other)
        return self.scale(other)

    def value(self, u: UElement) -> SuperPolynomial:
        """f(u) for any u in U(g), through u = Σ Y_w γ(w)."""
        out = SuperPolynomial.zero(self.P.sig0)
        for w, Y in self.P.split(u).items():
            comp = self.comps.get(w)
            if comp is not None:
                out = out + self.P.euler(Y, comp)
        return out

    def to_multi(self):
        sig1 = self.P.sig(1)
        return MultiSection(self.P, 1, {(w,): _to_slot(p, sig1, 1) for w, p in self.comps.items()})

    def __repr__(self):
        from .superpoly import format_poly
        parts = [f"{self.P.U.wedge_label(w)}: {format_poly(p)}" for w, p in self.sorted_items()]
        return "{" + ", ".join(parts) + "}"

    def sorted_items(self):
        order = {w: i for i, w in enumerate(self.P.wedges)}
        return sorted(self.comps.items(), key=lambda t: order[t[0]])

    def to_json(self):
        return {self.P.U.wedge_label(w): poly_to_json(p) for w, p in self.sorted_items()}

    @classmethod
    def from_json(cls, P, data):
        from .expr import parse_poly
        comps = {}
        if not isinstance(data, dict):
            raise ValueError("a section is a JSON object keyed by wedge labels")
        odd = set(P.ambient.sig.names[i] for i in P.ambient.sig.odd_indices) if P.ambient else set()
        for label, val in data.items():
            w = P.U.wedge_from_label(label)
            if isinstance(val, str):
                from .expr import tokenize
                hits = sorted({t[1] for t in tokenize(val) if t[1] in odd})
            else:
                hits = sorted({n for e in val for n in e.get("monomial", {}) if n in odd})
            if hits:
                raise ValueError(f"odd generator {hits[0]} in component {label!r}; "
                                 "components live on the reduced group")
            if isinstance(val, str):
                p = parse_poly(val, P.sig0)
            else:
                p = poly_from_json(P.sig0, val)
            comps[w] = comps[w] + p if w in comps else p
        return cls(P, comps)


def _to_slot(p, sigr, slot):
    return substitute(p, {g: SuperPolynomial.gen(sigr, f"{g}@{slot}") for g in p.sig.names}, sigr)


def _wedge_parity(w):
    return len(w) & 1


def _koszul(ws):
    """Parity of Σ_{i<j} |w_i||w_j|."""
    par = [_wedge_parity(w) for w in ws]
    return sum(par[i] & par[j] for i in range(len(par)) for j in range(i + 1, len(par))) & 1


class MultiSection:
    """Element of the r-fold tensor power of the section algebra."""

    __slots__ = ("P", "r", "comps")

    def __init__(self, P, r, comps):
        self.P = P
        self.r = r
        self.comps = {k: p for k, p in comps.items() if p}

    def __eq__(self, other):
        return (isinstance(other, MultiSection) and self.P is other.P and self.r == other.r
                and self.comps == other.comps)

    def get(self, key):
        return self.comps.get(key)

    def to_section(self):
        if self.r != 1:
            raise ValueError("only single sections convert back")
        return SHCPSection(self.P, {k[0]: _from_slot(p, self.P.sig0, 1) for k, p in self.comps.items()})

    def specialize(self, values):
        """Components evaluated at a point of G0^r ({name@slot: value})."""
        return {k: evaluate(p, values) for k, p in self.comps.items()}

    def __repr__(self):
        from .superpoly import format_poly
        lab = self.P.U.wedge_label
        return "{" + ", ".join(f"({', '.join(lab(w) for w in k)}): {format_poly(p)}"
                               for k, p in sorted(self.comps.items())) + "}"


def _from_slot(p, sig0, slot):
    return substitute(p, {f"{g}@{slot}": SuperPolynomial.gen(sig0, g) for g in sig0.names}, sig0)


def _rename_slots(P, p, src_r, dst_r, mapping):
    """Substitute slot variables: slot s -> polynomial mapping(g, s) over sig(dst_r)."""
    dst = P.sig(dst_r)
    images = {}
    for s in range(1, src_r + 1):
        for g in P.sig0.names:
            images[f"{g}@{s}"] = mapping(g, s, dst)
    return substitute(p, images, dst)


def _slot_value(F: MultiSection, key, j, u):
    """Value of F with u in slot j and key elsewhere (key[j-1] ignored)."""
    P = F.P
    out = SuperPolynomial.zero(P.sig(F.r))
    for w, Y in P.split(u).items():
        k2 = key[:j - 1] + (w,) + key[j:]
        comp = F.comps.get(k2)
        if comp is not None:
            out = out + P.euler(Y, comp, slot=j)
    return out


def _all_keys(P, r):
    return itertools.product(P.wedges, repeat=r)


# -- the product -------------------------------------------------------------

def _delta_lambda(P, w):
    """Δ_U(γ(w)) as (monomial, monomial, coefficient, Koszul sign)."""
    hit = P._delta_cache.get(w)
    if hit is None:
        A = P.U
        hit = []
        for (m1, m2), c in sorted(P.U.coproduct(P.gamma(w)).terms.items()):
            s = -1 if (A.mono_parity(m1) and A.mono_parity(m2)) else 1
            hit.append((UElement(A, {m1: 1}), UElement(A, {m2: 1}), c, s))
        P._delta_cache[w] = hit
    return hit


def multiply_multi(F: MultiSection) -> MultiSection:
    """m: sections ⊗ sections -> sections, (mF)(u) = Σ F(u1, u2).

    Double sections hold values F(u1, u2); the Koszul sign of the product
    already sits inside those values (see ``tensor_sections``).
    """
    if F.r != 2:
        raise ValueError("multiplication takes a double section")
    P = F.P
    collapse = lambda g, s, dst: SuperPolynomial.gen(dst, f"{g}@1")
    out = {}
    for w in P.wedges:
        total = SuperPolynomial.zero(P.sig(2))
        for u1, u2, c, s in _delta_lambda(P, w):
            for w1, Y1 in P.split(u1).items():
                for w2, Y2 in P.split(u2).items():
                    comp = F.comps.get((w1, w2))
                    if comp is None:
                        continue
                    v = P.euler(Y2, P.euler(Y1, comp, slot=1), slot=2)
                    total = total + v * c
        if total:
            out[(w,)] = _rename_slots(P, total, 2, 1, collapse)
    return MultiSection(P, 1, out)


def section_multiply(f1: SHCPSection, f2: SHCPSection) -> SHCPSection:
    """(f1·f2)(u) = Σ (-1)^{|u1||u2|} f1(u1) f2(u2) over Δ_U(u)."""
    if f1.P is not f2.P:
        raise ValueError("sections of different pairs")
    P = f1.P
    out = {}
    for w in P.wedges:
        total = SuperPolynomial.zero(P.sig0)
        for u1, u2, c, s in _delta_lambda(P, w):
            a = f1.value(u1)
            if not a:
                continue
            b = f2.value(u2)
            if b:
                total = total + a * b * (c * s)
        if total:
            out[w] = total
    return SHCPSection(P, out)


def tensor_sections(*fs) -> MultiSection:
    """Values of f1 ⊗ ... ⊗ fr: ±f1(w1)···fr(wr) with the Koszul sign of
    moving each f_j past the arguments w_i, i < j."""
    P = fs[0].P
    r = len(fs)
    sigr = P.sig(r)
    out = {}
    lifted = [{w: _to_slot(p, sigr, i + 1) for w, p in f.comps.items()} for i, f in enumerate(fs)]
    for key in itertools.product(*[list(d.items()) for d in lifted]):
        ws = tuple(w for w, _ in key)
        prod = SuperPolynomial.one(sigr)
        for _, p in key:
            prod = prod * p
        out[ws] = -prod if _koszul(ws) else prod
    return MultiSection(P, r, out)


# -- Hopf structure ----------------------------------------------------------

def _coaction_in(P, sig, slot, inverse_point=False):
    """h^{-1}.x (or h.x) coefficients with h placed in ``slot`` of ``sig``."""
    out = []
    for k in range(P.lie.dim):
        img = {}
        for j, p in P.coaction[k].items():
            q = substitute(p, {g: SuperPolynomial.gen(P.sig0, g) ** -1 for g in P.sig0.names},
                           P.sig0) if inverse_point else p
            img[j] = _to_slot(q, sig, slot)
        out.append(img)
    return out


def mu_slot(F: MultiSection, j: int) -> MultiSection:
    """Apply μ* to slot j: [μ*(f)(X, Y)](g, h) = [f((h^{-1}.X) Y)](gh)."""
    P = F.P
    r = F.r
    dst = P.sig(r + 1)
    coact = _coaction_in(P, dst, j + 1)

    def rename(g, s, sig):
        if s < j:
            return SuperPolynomial.gen(sig, f"{g}@{s}")
        if s == j:
            return SuperPolynomial.gen(sig, f"{g}@{j}") * SuperPolynomial.gen(sig, f"{g}@{j + 1}")
        return SuperPolynomial.gen(sig, f"{g}@{s + 1}")

    key_cache = {}
    out = {}
    for u_w in P.wedges:
        for v_w in P.wedges:
            ck = (u_w, v_w, r, j)
            terms = key_cache.get(ck)
            if terms is None:
                moved = generic_u_adjoint(P.U, P.gamma(u_w), coact, dst) * P.gamma(v_w)
                terms = [(UElement(P.U, {m: 1}), p) for m, p in moved.terms.items()]
                key_cache[ck] = terms
            for rest in itertools.product(P.wedges, repeat=r - 1):
                key = rest[:j - 1] + (None,) + rest[j - 1:]
                total = SuperPolynomial.zero(dst)
                for X, p in terms:
                    val = _slot_value(F, key, j, X)
                    if val:
                        total = total + p * _rename_slots(P, val, r, r + 1, rename)
                if total:
                    out[rest[:j - 1] + (u_w, v_w) + rest[j - 1:]] = total
    return MultiSection(P, r + 1, out)


def i_slot(F: MultiSection, j: int) -> MultiSection:
    """Apply i* to slot j: [i*(f)(X)](k) = [f(k.X̄)](k^{-1})."""
    P = F.P
    r = F.r
    sig = P.sig(r)
    coact = _coaction_in(P, sig, j, inverse_point=True)

    def invert(g, s, dst):
        x = SuperPolynomial.gen(dst, f"{g}@{s}")
        return x ** -1 if s == j else x

    out = {}
    for w in P.wedges:
        bar = P.U.antipode(P.gamma(w))
        moved = generic_u_adjoint(P.U, bar, coact, sig)
        terms = [(UElement(P.U, {m: 1}), p) for m, p in moved.terms.items()]
        for rest in itertools.product(P.wedges, repeat=r - 1):
            key = rest[:j - 1] + (None,) + rest[j - 1:]
            total = SuperPolynomial.zero(sig)
            for X, p in terms:
                val = _slot_value(F, key, j, X)
                if val:
                    total = total + p * _rename_slots(P, val, r, r, invert)
            if total:
                out[rest[:j - 1] + (w,) + rest[j - 1:]] = total
    return MultiSection(P, r, out)


def e_slot(F: MultiSection, j: int) -> MultiSection:
    """Apply e* to slot j: keep the empty-wedge component, evaluate at e."""
    P = F.P
    r = F.r

    def rename(g, s, dst):
        if s < j:
            return SuperPolynomial.gen(dst, f"{g}@{s}")
        if s == j:
            return SuperPolynomial.one(dst)
        return SuperPolynomial.gen(dst, f"{g}@{s - 1}")

    out = {}
    for key, p in F.comps.items():
        if key[j - 1] == ():
            out[key[:j - 1] + key[j:]] = _rename_slots(P, p, r, r - 1, rename)
    return MultiSection(P, r - 1, out)


def mu_star(f: SHCPSection) -> MultiSection:
    return mu_slot(f.to_multi(), 1)


def i_star(f: SHCPSection) -> SHCPSection:
    return i_slot(f.to_multi(), 1).to_section()


def e_star(f: SHCPSection) -> Fraction:
    comp = f[()]
    return evaluate(comp, {g: 1 for g in f.P.sig0.names})


def check_hopf_axioms(f: SHCPSection):
    """Coassociativity, counit and antipode laws on one section."""
    P = f.P
    F = f.to_multi()
    mu = mu_slot(F, 1)
    unit = SHCPSection.unit(P).scale(e_star(f)).to_multi()
    checks = [
        ("coassociativity", mu_slot(mu, 1) == mu_slot(mu, 2)),
        ("left counit", e_slot(mu, 1) == F),
        ("right counit", e_slot(mu, 2) == F),
        ("left antipode", multiply_multi(i_slot(mu, 1)) == unit),
        ("right antipode", multiply_multi(i_slot(mu, 2)) == unit),
    ]
    return checks


def pointwise_mu(f: SHCPSection, u_w, v_w, g: ReducedPoint, h: ReducedPoint) -> Fraction:
    """[f((h^{-1}.X) Y)](gh) at rational points."""
    P = f.P
    A = P.U
    X = A.u_adjoint(h.inverse(), P.gamma(u_w)) * P.gamma(v_w)
    gh = g * h
    return evaluate(f.value(X), _point_values(P, gh))


def pointwise_i(f: SHCPSection, w, k: ReducedPoint) -> Fraction:
    """[f(k.X̄)](k^{-1})."""
    P = f.P
    A = P.U
    X = A.u_adjoint(k, A.antipode(P.gamma(w)))
    return evaluate(f.value(X), _point_values(P, k.inverse()))


def _point_values(P, g, slot=None):
    vals = {}
    for b, name in P.torus_letters.items():
        idx = int(name[1]) - 1
        key = name if slot is None else f"{name}@{slot}"
        vals[key] = g.matrix[idx][idx]
    return vals


def specialize_pair(F: MultiSection, g, h):
    vals = _point_values(F.P, g, 1) | _point_values(F.P, h, 2)
    return F.specialize(vals)


# -- η* and reconstruction --------------------------------------------------------

def eta_star(s: SuperPolynomial, P: SHCP | None = None) -> SHCPSection:
    """Component at w is (-1)^{|w|} |D_{γ(w)} s|."""
    P = P or _default_pair()
    H = P.ambient
    if s.sig != H.sig:
        s = extend_signature(s, H.sig)
    out = {}
    for w in P.wedges:
        v = apply_u(P.lie, P.gamma(w), s, P._li_cache)
        r = restrict_to_even(v)
        if r:
            out[w] = -r if _wedge_parity(w) else r
    return SHCPSection(P, out)


def eta_star_tensor(F: SuperPolynomial, P: SHCP | None = None) -> MultiSection:
    """(η* ⊗ η*) on O(G) ⊗ O(G), as values on pairs of wedges (Koszul signs)."""
    P = P or _default_pair()
    H = P.ambient
    out = {}
    cache = P._eta_cache
    for m, c in F.terms.items():
        parts = slot_parts(F.sig, m, 2)
        sects = []
        for part in parts:
            if part not in cache:
                cache[part] = eta_star(SuperPolynomial(H.sig, {part: 1}), P)
            sects.append(cache[part])
        for w1, p1 in sects[0].comps.items():
            for w2, p2 in sects[1].comps.items():
                key = (w1, w2)
                val = tensor(p1, p2) * (-c if _koszul(key) else c)
                out[key] = out[key] + val if key in out else val
    return MultiSection(P, 2, {k: v for k, v in out.items() if v})


def _odd_monomial(P, w):
    """α^w: product of the odd coordinates dual to w, in wedge order."""
    H = P.ambient
    from .distributions import coordinate_name
    m, _ = P.lie.gl_shape
    out = SuperPolynomial.one(H.sig)
    for b in w:
        i, j = P.lie.gl_order[b]
        out = out * SuperPolynomial.gen(H.sig, coordinate_name(i, j, m))
    return out


def _triangular_solve(sigma: SHCPSection, section_map) -> SuperPolynomial:
    """Find s with section_map(s) = σ, one odd monomial α^w at a time.

    The w-component of section_map(t α^w) only sees t through
    section_map(α^w)[w] once all shorter wedges are fixed, so each step is a
    division by that (unit) leading coefficient.
    """
    P = sigma.P
    H = P.ambient
    if H is None:
        raise ValueError("reconstruction needs coordinates on G")
    s = SuperPolynomial.zero(H.sig)
    for w in P.wedges:  # sorted by length
        current = section_map(s, P)[w] if s else SuperPolynomial.zero(P.sig0)
        residual = sigma[w] - current
        if not residual:
            continue
        lead = section_map(_odd_monomial(P, w), P)[w]
        coeff = residual * inverse(lead)
        s = s + extend_signature(coeff, H.sig) * _odd_monomial(P, w)
    if section_map(s, P) != sigma:
        raise ArithmeticError("triangular solve did not reproduce the section")
    return s


def reconstruct(sigma: SHCPSection) -> SuperPolynomial:
    """Inverse of eta_star: solve ±|D_{γ(w)} s| = σ(w) degree by degree in the odd part."""
    return _triangular_solve(sigma, eta_star)


# -- the pairing identification ------------------------------------------------

def pairing_derivation(L, x, sig):
    """(id ⊗ X)Δ on O(GL(m|n)) as a right derivation, for a basis vector X.

    Returned as the left derivation L_X with R_X(p) = (-1)^{d(|p|+1)} L_X(p),
    d = |X|; on generators R_{E_ij}(x_ab) = δ_bj x_ai.
    """
    from .distributions import coordinate_name
    m, n = L.gl_shape
    k = L.index(x) if isinstance(x, str) else x
    i, j = L.gl_order[k]
    d = L.parities[k]
    terms = {}
    for a in range(1, m + n + 1):
        src = coordinate_name(a, j, m)
        val = SuperPolynomial.gen(sig, coordinate_name(a, i, m))
        sign = -1 if d and not sig.parities[sig.index(src)] else 1
        terms[src] = val * sign
    return SuperDerivation(sig, terms, d)


def apply_pairing(L, u: UElement, s: SuperPolynomial, cache=None):
    """(id ⊗ u)Δ(s): the letters of u act as right derivations, last letter first."""
    A = u.A
    ders = cache if cache is not None else {}
    out = SuperPolynomial.zero(s.sig)
    for mono, c in u.terms.items():
        q = s
        for b in reversed(A.word(mono)):
            if b not in ders:
                ders[b] = pairing_derivation(L, b, s.sig)
            D = ders[b]
            parts = q.homogeneous_parts()
            q = SuperPolynomial.zero(s.sig)
            for par, part in parts.items():
                if part:
                    v = D(part)
                    q = q + (-v if D.parity and not par else v)
            if not q:
                break
        if q:
            out = out + q * c
    return out


def pairing_section(s: SuperPolynomial, P: SHCP | None = None) -> SHCPSection:
    """w -> |(id ⊗ γ(w))Δ s|, the section g -> ⟨g ⊗ γ(w), s⟩ of the distribution pairing."""
    P = P or _default_pair()
    H = P.ambient
    if s.sig != H.sig:
        s = extend_signature(s, H.sig)
    cache = P._pairing_cache
    out = {}
    for w in P.wedges:
        r = restrict_to_even(apply_pairing(P.lie, P.gamma(w), s, cache))
        if r:
            out[w] = r
    return SHCPSection(P, out)


def pairing_reconstruct(sigma: SHCPSection) -> SuperPolynomial:
    """Inverse of pairing_section."""
    return _triangular_solve(sigma, pairing_section)


def _default_pair():
    return gl11_shcp()


def odd_sign_flip(s: SuperPolynomial, P: SHCP | None = None) -> SuperPolynomial:
    """ν: α21 -> -α21 (every odd coordinate below the diagonal changes sign).

    ν carries the matrix coproduct Δ(x_ij) = Σ x_ik ⊗ x_kj to the coproduct
    Σ (-1)^{|x_ik||x_kj|} x_ik ⊗ x_kj for which the D_X are left invariant
    as left derivations; it is an involutive Hopf isomorphism.
    """
    P = P or _default_pair()
    H = P.ambient
    from .distributions import coordinate_name
    m, _ = P.lie.gl_shape
    images = {}
    for i, j in P.lie.gl_order:
        name = coordinate_name(i, j, m)
        x = SuperPolynomial.gen(H.sig, name)
        images[name] = -x if (i > j and H.sig.parities[H.sig.index(name)] == ODD) else x
    return substitute(s, images, H.sig)


def coordinates_to_section(s: SuperPolynomial, P: SHCP | None = None) -> SHCPSection:
    """Hopf isomorphism O(GL(1|1)) -> split sections, η* ∘ ν."""
    P = P or _default_pair()
    if s.sig != P.ambient.sig:
        s = extend_signature(s, P.ambient.sig)
    return eta_star(odd_sign_flip(s, P), P)


def sections_to_coordinates(sigma: SHCPSection) -> SuperPolynomial:
    return odd_sign_flip(reconstruct(sigma), sigma.P)


def coordinates_to_double_section(F: SuperPolynomial, P: SHCP | None = None) -> MultiSection:
    """The tensor square of coordinates_to_section."""
    P = P or _default_pair()
    H = P.ambient
    flip = lambda p: odd_sign_flip(p, P)
    return eta_star_tensor(H.slot_map(H.slot_map(F, 1, flip), 2, flip), P)


def closed_form(sigma: SHCPSection) -> SuperPolynomial:
    """Hand-derived GL(1|1) reconstruction formula, used as a cross-check."""
    P = sigma.P
    H = P.ambient
    U = P.U
    g = lambda n: SuperPolynomial.gen(H.sig, n)
    lift = lambda p: extend_signature(p, H.sig)
    w12 = U.wedge_from_label("E12")
    w21 = U.wedge_from_label("E21")
    top = U.wedge_from_label("E12^E21")
    s0 = sigma[()]
    a11, a22 = g("a11"), g("a22")
    euler = (SuperPolynomial.gen(P.sig0, "a11") * derive("a11", s0)
             - SuperPolynomial.gen(P.sig0, "a22") * derive("a22", s0))
    bracket = sigma[top] - euler * Fraction(1, 2)
    return (lift(s0) + g("alpha12") * lift(sigma[w12]) * inverse(a11)
            - g("alpha21") * lift(sigma[w21]) * inverse(a22)
            + lift(bracket) * g("alpha12") * g("alpha21") * inverse(a11 * a22))


def odd_components(s: SuperPolynomial, P: SHCP | None = None):
    """Coefficient of α^w in s, for each wedge w (coefficients in O(G0))."""
    P = P or _default_pair()
    H = P.ambient
    odd = H.sig.odd_indices
    out = {}
    for w in P.wedges:
        (mkey, sign), = _odd_monomial(P, w).terms.items()
        pattern = tuple(mkey[i] for i in odd)
        terms = {}
        for m, c in s.terms.items():
            if tuple(m[i] for i in odd) == pattern:
                stripped = tuple(0 if i in odd else e for i, e in enumerate(m))
                terms[stripped] = c / sign
        out[w] = restrict_to_even(SuperPolynomial(H.sig, terms))
    return out


def compare_closed_form(sigma: SHCPSection):
    """Per-component sign relating the solver to the closed form.

    Returns {wedge label: +1 | -1 | None}; None means the components differ
    by more than a sign (or the closed form leaves a component nonzero where
    the solver has zero, and vice versa).
    """
    P = sigma.P
    a = odd_components(reconstruct(sigma), P)
    b = odd_components(closed_form(sigma), P)
    out = {}
    for w in P.wedges:
        x, y = a[w], b[w]
        if x == y and not x:
            out[P.U.wedge_label(w)] = 0
        elif x == y:
            out[P.U.wedge_label(w)] = 1
        elif x == -y:
            out[P.U.wedge_label(w)] = -1
        else:
            out[P.U.wedge_label(w)] = None
    return out


def free_basis_report(P: SHCP | None = None):
    """Pure-component sections e_w: a basis over O(G0) closed under products."""
    P = P or _default_pair()
    basis = {w: SHCPSection.pure(P, w) for w in P.wedges}
    table = {}
    for w1 in P.wedges:
        for w2 in P.wedges:
            table[(w1, w2)] = section_multiply(basis[w1], basis[w2])
    # each product is a scalar multiple of a single basis element or zero
    ok = True
    for (w1, w2), prod in table.items():
        if len(prod.comps) > 1:
            ok = False
        for w, p in prod.comps.items():
            if not p.is_constant():
                ok = False
    nonzero_top = bool(table[(P.wedges[1], P.wedges[2])].comps) if len(P.wedges) >= 4 else True
    return {"rank": len(basis), "expected": 2 ** len(P.lie.odd_indices),
            "closed": ok, "top_reached": nonzero_top}


# -- morphisms -------------------------------------------------------------------

class SHCPMorphism:
    """(ψ0, ρ): source pair -> target pair.

    ``psi0`` maps each target torus coordinate to a polynomial on the source
    torus (the pull-back ψ0*); ``rho`` maps source basis indices to target
    vectors.
    """

    def __init__(self, source: SHCP, target: SHCP, psi0, rho, *, check=True, samples=5, seed=0):
        self.source = source
        self.target = target
        self.psi0 = {g: (p if isinstance(p, SuperPolynomial) else SuperPolynomial.const(source.sig0, p))
                     for g, p in psi0.items()}
        self.rho = [tuple(as_fraction(c) for c in v) for v in rho]
        if check:
            problems = self.violations(samples, seed)
            if problems:
                raise ValueError(f"not a morphism of pairs: {problems[0]}")

    def rho_u(self, u: UElement) -> UElement:
        T = self.target.U
        images = [T.from_vector(v) for v in self.rho]
        return u.A.map_letters(u, images, target=T)

    def pull(self, p: SuperPolynomial) -> SuperPolynomial:
        return substitute(p, self.psi0, self.source.sig0)

    def differential(self):
        """dψ0 on the even basis, read off from the exponents of ψ0*."""
        S, T = self.source, self.target
        out = {}
        inv_letters = {g: b for b, g in T.torus_letters.items()}
        for b, g_src in S.torus_letters.items():
            vec = [Fraction(0)] * T.lie.dim
            for g_tgt, p in self.psi0.items():
                if len(p.terms) != 1:
                    raise ValueError("ψ0* must send coordinates to monomials")
                (m, c), = p.terms.items()
                vec[inv_letters[g_tgt]] += m[S.sig0.index(g_src)]
            out[b] = tuple(vec)
        return out

    def violations(self, samples=5, seed=0):
        import random
        rng = random.Random(seed)
        S, T = self.source, self.target
        problems = []
        for b, v in self.differential().items():
            if v != self.rho[b]:
                problems.append(f"ρ differs from dψ0 on {S.lie.names[b]}")
        for _ in range(samples):
            vals = {g: Fraction(rng.choice([1, 2, 3, -1, -2, 5]), rng.choice([1, 2, 3]))
                    for g in S.sig0.names}
            tvals = {g: evaluate(p, vals) for g, p in self.psi0.items()}
            for k in range(S.lie.dim):
                lhs = _ad_at(T, tvals, self.rho[k])
                rhs = [Fraction(0)] * T.lie.dim
                for j, c in enumerate(_ad_at(S, vals, S.lie.basis_vector(k))):
                    if c:
                        for i, d in enumerate(self.rho[j]):
                            rhs[i] += c * d
                if list(lhs) != rhs:
                    problems.append(f"Ad compatibility fails on {S.lie.names[k]} at {vals}")
        return problems

    def compose(self, other: "SHCPMorphism") -> "SHCPMorphism":
        """self ∘ other (other first)."""
        psi0 = {g: other.pull(p) for g, p in self.psi0.items()}
        rho = []
        for v in other.rho:
            out = [Fraction(0)] * self.target.lie.dim
            for j, c in enumerate(v):
                if c:
                    for i, d in enumerate(self.rho[j]):
                        out[i] += c * d
            rho.append(tuple(out))
        return SHCPMorphism(other.source, self.target, psi0, rho, check=False)


def _ad_at(P, vals, x):
    """Ad(g)x with g given by torus coordinate values: coaction at g^{-1}."""
    inv_vals = {g: 1 / v for g, v in vals.items()}
    out = [Fraction(0)] * P.lie.dim
    for k, c in enumerate(x):
        if c:
            for j, p in P.coaction[k].items():
                out[j] += c * evaluate(p, inv_vals)
    return tuple(out)


def apply_morphism(psi: SHCPMorphism, f: SHCPSection) -> SHCPSection:
    """f -> ψ0* ∘ f ∘ ρ."""
    if f.P is not psi.target:
        raise ValueError("section does not live on the morphism's target")
    out = {}
    for w in psi.source.wedges:
        u = psi.rho_u(psi.source.gamma(w))
        v = f.value(u)
        if v:
            out[w] = psi.pull(v)
    return SHCPSection(psi.source, out)


def identity_morphism(P: SHCP) -> SHCPMorphism:
    return SHCPMorphism(P, P, {g: SuperPolynomial.gen(P.sig0, g) for g in P.sig0.names},
                        [P.lie.basis_vector(k) for k in range(P.lie.dim)])


def torus_inclusion(source: SHCP, target: SHCP) -> SHCPMorphism:
    rho = [target.lie.basis_vector(source.lie.names[k]) for k in range(source.lie.dim)]
    return SHCPMorphism(source, target, {g: SuperPolynomial.gen(source.sig0, g)
                                         for g in target.sig0.names}, rho)
