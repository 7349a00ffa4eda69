"""U(g) in PBW normal form, its super Hopf structure and the symmetrizer.

PBW monomials are exponent tuples indexed like the basis of g.  Letters are
ordered with every even basis element before every odd one; normal forms
list letters in that order with odd exponents at most one.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import factorial

from .liesuper import LieSuperAlgebra, adjoint
from .superpoly import EVEN, ODD, SuperPolynomial, as_fraction, format_coeff_term


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _addto(acc, key, c):
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


class UAlgebra:
    """Universal enveloping superalgebra of ``L`` with memoised rewriting."""

    def __init__(self, L: LieSuperAlgebra):
        self.L = L
        self.dim = L.dim
        self.parities = L.parities
        self.order = L.even_indices + L.odd_indices
        self.rank = [0] * L.dim
        for r, i in enumerate(self.order):
            self.rank[i] = r
        self.unit_mono = (0,) * L.dim
        self._letter_cache = {}
        self._mono_cache = {}
        self._coproduct_cache = {}

    def __repr__(self):
        return f"U({', '.join(self.L.names)})"

    # -- elements ---------------------------------------------------------
    def element(self, terms):
        return UElement(self, terms)

    def one(self):
        return UElement(self, {self.unit_mono: Fraction(1)})

    def zero(self):
        return UElement(self, {})

    def scalar(self, c):
        return self.one() * c

    def gen(self, name_or_index):
        i = self.L.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        m = [0] * self.dim
        m[i] = 1
        return UElement(self, {tuple(m): Fraction(1)})

    def from_vector(self, x):
        out = {}
        for i, c in enumerate(x):
            if c:
                m = [0] * self.dim
                m[i] = 1
                out[tuple(m)] = as_fraction(c)
        return UElement(self, out)

    def word(self, m):
        """Letters of a PBW monomial in normal order."""
        out = []
        for i in self.order:
            out.extend([i] * m[i])
        return out

    def mono_parity(self, m):
        return sum(m[i] for i in self.L.odd_indices) & 1

    def mono_degree(self, m):
        return sum(m)

    # -- rewriting --------------------------------------------------------
    def _times_letter(self, m, b):
        """PBW monomial m times basis letter b, as a dict."""
        key = (m, b)
        hit = self._letter_cache.get(key)
        if hit is not None:
            return hit
        out = {}
        last = None
        for i in reversed(self.order):
            if m[i]:
                last = i
                break
        if last is None or self.rank[b] > self.rank[last] or (b == last and self.parities[b] == EVEN):
            mm = list(m)
            mm[b] += 1
            out[tuple(mm)] = Fraction(1)
        elif b == last:
            # odd square: b b = ½[b, b]
            mm = list(m)
            mm[b] -= 1
            mm = tuple(mm)
            for c, coef in enumerate(self.L.bracket_basis(b, b)):
                if coef:
                    for k, v in self._times_letter(mm, c).items():
                        _addto(out, k, v * coef / 2)
        else:
            # x_last b = s b x_last + [x_last, b]
            mm = list(m)
            mm[last] -= 1
            mm = tuple(mm)
            s = -1 if (self.parities[last] & self.parities[b]) else 1
            for k, v in self._times_letter(mm, b).items():
                for k2, v2 in self._times_letter(k, last).items():
                    _addto(out, k2, s * v * v2)
            for c, coef in enumerate(self.L.bracket_basis(last, b)):
                if coef:
                    for k, v in self._times_letter(mm, c).items():
                        _addto(out, k, v * coef)
        self._letter_cache[key] = out
        return out

    def _mono_times_mono(self, m1, m2):
        key = (m1, m2)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        acc = {m1: Fraction(1)}
        for b in self.word(m2):
            nxt = {}
            for k, v in acc.items():
                for k2, v2 in self._times_letter(k, b).items():
                    _addto(nxt, k2, v * v2)
            acc = nxt
        self._mono_cache[key] = acc
        return acc

    def normal_order(self, word):
        """Normal form of a product of basis letters (names or indices)."""
        acc = {self.unit_mono: Fraction(1)}
        for b in word:
            if isinstance(b, str):
                b = self.L.index(b)
            nxt = {}
            for k, v in acc.items():
                for k2, v2 in self._times_letter(k, b).items():
                    _addto(nxt, k2, v * v2)
            acc = nxt
        return UElement(self, acc)

    def multiply(self, u, v):
        if u.A is not self or v.A is not self:
            raise ValueError("elements of different enveloping algebras")
        out = {}
        for m1, c1 in u.terms.items():
            for m2, c2 in v.terms.items():
                for k, c in self._mono_times_mono(m1, m2).items():
                    _addto(out, k, c1 * c2 * c)
        return UElement(self, out)

    # -- Hopf structure ---------------------------------------------------
    def _mono_coproduct(self, m):
        hit = self._coproduct_cache.get(m)
        if hit is not None:
            return hit
        acc = {(self.unit_mono, self.unit_mono): Fraction(1)}
        for b in self.word(m):
            e = [0] * self.dim
            e[b] = 1
            e = tuple(e)
            delta_b = {(e, self.unit_mono): Fraction(1), (self.unit_mono, e): Fraction(1)}
            acc = self.tensor_multiply(acc, delta_b)
        self._coproduct_cache[m] = acc
        return acc

    def tensor_multiply(self, A, B):
        """Product in the graded tensor power, Koszul signs included."""
        out = {}
        for ka, ca in A.items():
            pa = [self.mono_parity(x) for x in ka]
            for kb, cb in B.items():
                pb = [self.mono_parity(x) for x in kb]
                sign = 1
                n = len(ka)
                for i in range(n):
                    if pb[i]:
                        for j in range(i + 1, n):
                            if pa[j]:
                                sign = -sign
                slots = [self._mono_times_mono(x, y) for x, y in zip(ka, kb)]
                partial = {(): sign * ca * cb}
                for sl in slots:
                    nxt = {}
                    for key, v in partial.items():
                        for mono, c in sl.items():
                            _addto(nxt, key + (mono,), v * c)
                    partial = nxt
                for key, v in partial.items():
                    _addto(out, key, v)
        return out

    def coproduct(self, u):
        out = {}
        for m, c in u.terms.items():
            for k, v in self._mono_coproduct(m).items():
                _addto(out, k, c * v)
        return TensorElement(self, out, 2)

    def counit(self, u):
        return u.terms.get(self.unit_mono, Fraction(0))

    def antipode(self, u):
        out = self.zero()
        for m, c in u.terms.items():
            word = self.word(m)
            odd = sum(1 for b in word if self.parities[b])
            sign = -1 if (len(word) + odd * (odd - 1) // 2) % 2 else 1
            out = out + self.normal_order(list(reversed(word))) * (sign * c)
        return out

    # -- symmetrizer and PBW splitting ---------------------------------
    def wedge_monomials(self):
        odd = sorted(self.L.odd_indices, key=lambda i: self.rank[i])
        out = []
        for mask in range(1 << len(odd)):
            out.append(tuple(odd[i] for i in range(len(odd)) if mask >> i & 1))
        return sorted(out, key=lambda w: (len(w), [self.rank[i] for i in w]))

    def wedge_label(self, w):
        return "^".join(self.L.names[i] for i in w) if w else "1"

    def wedge_from_label(self, label):
        if label in ("1", "", "∅"):
            return ()
        idx = [self.L.index(n) for n in label.split("^")]
        return tuple(sorted(idx, key=lambda i: self.rank[i]))

    def symmetrizer(self, w):
        """γ(X1 ∧ ... ∧ Xp) = 1/p! Σ_τ sgn(τ) X_τ(1) ... X_τ(p)."""
        w = tuple(w)
        for i in w:
            if self.parities[i] != ODD:
                raise ValueError("wedge factors must be odd")
        if len(set(w)) != len(w):
            return self.zero()
        p = len(w)
        out = self.zero()
        for perm in permutations(range(p)):
            out = out + self.normal_order([w[i] for i in perm]) * _perm_sign(perm)
        return out * Fraction(1, factorial(p))

    def split_mono(self, m):
        """(even part, odd wedge) of a PBW monomial."""
        ev = tuple(m[i] if self.parities[i] == EVEN else 0 for i in range(self.dim))
        w = tuple(i for i in self.order if self.parities[i] == ODD and m[i])
        return ev, w

    def pbw_split(self, u):
        """Inverse of U(g0) ⊗ Λ(g1) -> U(g), X ⊗ w -> X γ(w)."""
        rest = u
        out = {}
        while rest.terms:
            top = max(len(self.split_mono(m)[1]) for m in rest.terms)
            chunk = self.zero()
            for m, c in rest.terms.items():
                ev, w = self.split_mono(m)
                if len(w) == top:
                    coeff = UElement(self, {ev: c})
                    out[w] = out[w] + coeff if w in out else coeff
                    chunk = chunk + coeff * self.symmetrizer(w)
            rest = rest - chunk
        return {w: v for w, v in out.items() if v.terms}

    def pbw_join(self, split):
        """û_γ: Σ_w X_w γ(w)."""
        out = self.zero()
        for w, x in split.items():
            out = out + x * self.symmetrizer(w)
        return out

    # -- adjoint action -------------------------------------------------
    def map_letters(self, u, images, target=None):
        """Algebra morphism U(g) -> target given on basis letters."""
        target = target or self
        out = target.zero()
        for m, c in u.terms.items():
            acc = target.one()
            for b in self.word(m):
                acc = acc * images[b]
            out = out + acc * c
        return out

    def u_adjoint(self, h, u):
        """Multiplicative extension of Ad(h) to U(g)."""
        images = [self.from_vector(adjoint(self.L, h, self.L.basis_vector(i)))
                  for i in range(self.dim)]
        return self.map_letters(u, images)

    def format_mono(self, m):
        parts = []
        for i in self.order:
            e = m[i]
            if e == 1:
                parts.append(self.L.names[i])
            elif e:
                parts.append(f"{self.L.names[i]}^{e}")
        return "*".join(parts)

    def mono_sort_key(self, m):
        return (sum(m), tuple(-m[i] for i in self.order))


class UElement:
    """Element of U(g) stored in PBW normal form."""

    __slots__ = ("A", "terms")

    def __init__(self, A: UAlgebra, terms):
        self.A = A
        clean = {}
        for m, c in terms.items():
            c = as_fraction(c)
            if c:
                m = tuple(m)
                for i in A.L.odd_indices:
                    if m[i] > 1:
                        raise ValueError("odd exponent above one; use normal_order")
                clean[m] = clean.get(m, 0) + c
        self.terms = {m: c for m, c in clean.items() if c}

    def __eq__(self, other):
        if isinstance(other, UElement):
            return self.A is other.A and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.A.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, UElement):
            other = self.A.scalar(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _addto(out, m, c)
        return UElement(self.A, out)

    __radd__ = __add__

    def __neg__(self):
        return UElement(self.A, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, UElement):
            other = self.A.scalar(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, UElement):
            return self.A.multiply(self, other)
        c = as_fraction(other)
        return UElement(self.A, {m: v * c for m, v in self.terms.items()})

    def __rmul__(self, other):
        c = as_fraction(other)
        return UElement(self.A, {m: v * c for m, v in self.terms.items()})

    def __pow__(self, k):
        out = self.A.one()
        for _ in range(k):
            out = out * self
        return out

    def parity(self):
        ps = {self.A.mono_parity(m) for m in self.terms}
        if not ps:
            return EVEN
        return ps.pop() if len(ps) == 1 else None

    def degree(self):
        return max((sum(m) for m in self.terms), default=0)

    def homogeneous_parts(self):
        parts = {EVEN: {}, ODD: {}}
        for m, c in self.terms.items():
            parts[self.A.mono_parity(m)][m] = c
        return {p: UElement(self.A, t) for p, t in parts.items()}

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self.A.mono_sort_key(t[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        return "".join(format_coeff_term(c, self.A.format_mono(m), i == 0)
                       for i, (m, c) in enumerate(self.sorted_terms()))

    def __repr__(self):
        return f"UElement({self})"

    def to_json(self):
        return [{"monomial": {self.A.L.names[i]: m[i] for i in self.A.order if m[i]},
                 "coeff": f"{c.numerator}/{c.denominator}"}
                for m, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, A, data):
        out = A.zero()
        for entry in data:
            word = []
            for n, e in entry["monomial"].items():
                word.extend([n] * e)
            out = out + A.normal_order(word) * as_fraction(entry["coeff"])
        return out


class TensorElement:
    """Element of the n-fold graded tensor power of U(g)."""

    __slots__ = ("A", "terms", "n")

    def __init__(self, A, terms, n):
        self.A = A
        self.n = n
        self.terms = {k: as_fraction(c) for k, c in terms.items() if c}

    def __eq__(self, other):
        return (isinstance(other, TensorElement) and self.A is other.A
                and self.n == other.n and self.terms == other.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            _addto(out, k, c)
        return TensorElement(self.A, out, self.n)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return TensorElement(self.A, {k: v * c for k, v in self.terms.items()}, self.n)

    def __mul__(self, other):
        return TensorElement(self.A, self.A.tensor_multiply(self.terms, other.terms), self.n)

    @classmethod
    def pure(cls, *factors):
        A = factors[0].A
        acc = {(): Fraction(1)}
        for f in factors:
            nxt = {}
            for k, v in acc.items():
                for m, c in f.terms.items():
                    _addto(nxt, k + (m,), v * c)
            acc = nxt
        return cls(A, acc, len(factors))

    def apply_slot(self, slot, fn):
        """Apply a linear map U -> U^{⊗r} (given on monomials) on one slot.

        ``fn(m)`` returns a dict of r-tuples of monomials.  No sign is needed
        when the map is even.
        """
        out = {}
        r = None
        for k, c in self.terms.items():
            for sub, v in fn(k[slot]).items():
                r = len(sub)
                _addto(out, k[:slot] + sub + k[slot + 1:], c * v)
        return TensorElement(self.A, out, self.n - 1 + (r if r is not None else 1))

    def multiply_out(self):
        """m: U ⊗ U -> U."""
        out = self.A.zero()
        for k, c in self.terms.items():
            acc = self.A.one()
            for m in k:
                acc = acc * UElement(self.A, {m: 1})
            out = out + acc * c
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, (k, c) in enumerate(sorted(self.terms.items(),
                                          key=lambda t: [self.A.mono_sort_key(x) for x in t[0]])):
            body = "⊗".join(self.A.format_mono(m) or "1" for m in k)
            parts.append(format_coeff_term(c, body, i == 0))
        return "".join(parts)

    __repr__ = __str__


# -- U(g) with coefficients in a commutative (even) polynomial algebra ----

class CoeffUElement:
    """Σ p_m · m with p_m even polynomials (central coefficients)."""

    __slots__ = ("A", "sig", "terms")

    def __init__(self, A, sig, terms):
        self.A = A
        self.sig = sig
        self.terms = {m: p for m, p in terms.items() if p}

    @classmethod
    def lift(cls, u, sig):
        return cls(u.A, sig, {m: SuperPolynomial.const(sig, c) for m, c in u.terms.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for m, p in other.terms.items():
            out[m] = out[m] + p if m in out else p
        return CoeffUElement(self.A, self.sig, out)

    def __mul__(self, other):
        if isinstance(other, CoeffUElement):
            out = {}
            for m1, p1 in self.terms.items():
                for m2, p2 in other.terms.items():
                    pp = p1 * p2
                    for k, c in self.A._mono_times_mono(m1, m2).items():
                        out[k] = out[k] + pp * c if k in out else pp * c
            return CoeffUElement(self.A, self.sig, out)
        if isinstance(other, UElement):
            return self * CoeffUElement.lift(other, self.sig)
        return CoeffUElement(self.A, self.sig, {m: p * other for m, p in self.terms.items()})

    def specialize(self, point):
        from .superpoly import evaluate
        out = {}
        for m, p in self.terms.items():
            out[m] = evaluate(p, point)
        return UElement(self.A, out)


def generic_u_adjoint(A, u, coaction, sig):
    """h^{-1}.u with h generic; ``coaction`` maps letters to {index: poly}."""
    images = []
    for i in range(A.dim):
        terms = {}
        for k, p in coaction[i].items():
            m = [0] * A.dim
            m[k] = 1
            terms[tuple(m)] = p
        images.append(CoeffUElement(A, sig, terms))
    out = CoeffUElement(A, sig, {})
    one = CoeffUElement(A, sig, {A.unit_mono: SuperPolynomial.one(sig)})
    for m, c in u.terms.items():
        acc = one
        for b in A.word(m):
            acc = acc * images[b]
        out = out + acc * c
    return out
