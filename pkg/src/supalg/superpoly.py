"""Supercommutative Laurent polynomials over the rationals.

Generators carry a parity and (for even ones) an optional invertibility flag.
Monomials are exponent tuples aligned with the signature; their canonical
form lists factors in signature order, and every sign produced by reordering
odd factors is absorbed into the coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Mapping

EVEN, ODD = 0, 1

_PARITY_NAMES = {"even": EVEN, "odd": ODD, 0: EVEN, 1: ODD}


class SignatureError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


class Signature:
    """Ordered list of generators ``(name, parity, invertible)``."""

    __slots__ = ("names", "parities", "invertible", "_index", "_hash")

    def __init__(self, generators: Iterable = ()):
        names, parities, inv = [], [], []
        for g in generators:
            if isinstance(g, str):
                g = (g, EVEN, False)
            name, parity = g[0], _PARITY_NAMES[g[1]]
            invertible = bool(g[2]) if len(g) > 2 else False
            if invertible and parity == ODD:
                raise SignatureError(f"odd generator {name} cannot be invertible")
            names.append(name)
            parities.append(parity)
            inv.append(invertible)
        if len(set(names)) != len(names):
            raise SignatureError("generator names must be unique")
        self.names = tuple(names)
        self.parities = tuple(parities)
        self.invertible = tuple(inv)
        self._index = {n: i for i, n in enumerate(names)}
        self._hash = hash((self.names, self.parities, self.invertible))

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return (isinstance(other, Signature) and self.names == other.names
                and self.parities == other.parities
                and self.invertible == other.invertible)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        parts = []
        for n, p, i in zip(self.names, self.parities, self.invertible):
            parts.append(n + ("'" if p else "") + ("^±" if i else ""))
        return f"Signature({', '.join(parts)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise SignatureError(f"unknown generator {name!r}") from None

    def __contains__(self, name):
        return name in self._index

    @property
    def generators(self):
        return tuple(zip(self.names, self.parities, self.invertible))

    @property
    def odd_indices(self):
        return tuple(i for i, p in enumerate(self.parities) if p)

    def even_part(self) -> "Signature":
        return Signature(g for g in self.generators if g[1] == EVEN)

    def tensor_power(self, k: int) -> "Signature":
        """Signature of the k-fold graded tensor power.

        Slot ``i`` (1-based) renames ``x`` to ``x@i``; slots follow each
        other, so canonical ordering reproduces the Koszul sign rule.
        """
        return Signature((f"{n}@{i}", p, inv)
                         for i in range(1, k + 1)
                         for n, p, inv in self.generators)

    def monomial(self, exps: Mapping[str, int]) -> tuple:
        m = [0] * len(self)
        for name, e in exps.items():
            m[self.index(name)] = e
        m = tuple(m)
        self.check_monomial(m)
        return m

    def check_monomial(self, m):
        for e, p, inv in zip(m, self.parities, self.invertible):
            if p == ODD and e not in (0, 1):
                raise SignatureError("odd exponents must be 0 or 1")
            if e < 0 and not inv:
                raise SignatureError("negative exponent on a non-invertible generator")


def _mono_parity(sig: Signature, m) -> int:
    return sum(m[i] for i in sig.odd_indices) & 1


def _mono_mul(sig: Signature, m1, m2):
    """Return (sign, product) or (0, None) when an odd square appears."""
    sign = 1
    odd = sig.odd_indices
    for j in odd:
        if m2[j]:
            if m1[j]:
                return 0, None
            # m2's factor j must travel left past m1's odd factors with index > j
            for i in odd:
                if i > j and m1[i]:
                    sign = -sign
    return sign, tuple(a + b for a, b in zip(m1, m2))


class SuperPolynomial:
    """Element of a supercommutative Laurent polynomial algebra over Q."""

    __slots__ = ("sig", "terms", "_hash")

    def __init__(self, sig: Signature, terms: Mapping | None = None, *, _trusted=False):
        self.sig = sig
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            for m, c in (terms or {}).items():
                m = tuple(m)
                if len(m) != len(sig):
                    raise SignatureError("monomial length does not match signature")
                sig.check_monomial(m)
                c = as_fraction(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
            self.terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, sig):
        return cls(sig, {}, _trusted=True)

    @classmethod
    def const(cls, sig, c):
        c = as_fraction(c)
        return cls(sig, {(0,) * len(sig): c} if c else {}, _trusted=True)

    @classmethod
    def one(cls, sig):
        return cls.const(sig, 1)

    @classmethod
    def gen(cls, sig, name, power=1):
        m = [0] * len(sig)
        m[sig.index(name)] = power
        m = tuple(m)
        sig.check_monomial(m)
        return cls(sig, {m: Fraction(1)}, _trusted=True)

    @classmethod
    def from_monomial(cls, sig, exps: Mapping[str, int], coeff=1):
        return cls(sig, {sig.monomial(exps): coeff})

    # -- basic protocol -------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, SuperPolynomial):
            return self.sig == other.sig and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == SuperPolynomial.const(self.sig, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.sig, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"SuperPolynomial({format_poly(self)})"

    def __str__(self):
        return format_poly(self)

    def _coerce(self, other):
        if isinstance(other, SuperPolynomial):
            if other.sig != self.sig:
                raise SignatureError("signature mismatch")
            return other
        return SuperPolynomial.const(self.sig, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return SuperPolynomial(self.sig, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return SuperPolynomial(self.sig, {m: -c for m, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, SuperPolynomial):
            c = as_fraction(other)
            if not c:
                return SuperPolynomial.zero(self.sig)
            return SuperPolynomial(self.sig, {m: c * v for m, v in self.terms.items()}, _trusted=True)
        return poly_multiply(self, other)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        if isinstance(other, SuperPolynomial):
            return self * inverse(other)
        return self * (1 / as_fraction(other))

    def __pow__(self, k: int):
        if k < 0:
            return inverse(self) ** (-k)
        result = SuperPolynomial.one(self.sig)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- queries ----------------------------------------------------------
    def parity(self):
        """0 or 1 for homogeneous elements, None otherwise (zero is even)."""
        ps = {_mono_parity(self.sig, m) for m in self.terms}
        if not ps:
            return EVEN
        return ps.pop() if len(ps) == 1 else None

    def homogeneous_parts(self):
        parts = {EVEN: {}, ODD: {}}
        for m, c in self.terms.items():
            parts[_mono_parity(self.sig, m)][m] = c
        return {p: SuperPolynomial(self.sig, t, _trusted=True) for p, t in parts.items()}

    def is_constant(self):
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.sig), Fraction(0))

    def coefficient(self, exps: Mapping[str, int]) -> Fraction:
        return self.terms.get(self.sig.monomial(exps), Fraction(0))

    def has_odd(self):
        odd = self.sig.odd_indices
        return any(m[i] for m in self.terms for i in odd)

    def degree(self):
        """Total degree (sum of absolute exponents), 0 for the zero polynomial."""
        return max((sum(abs(e) for e in m) for m in self.terms), default=0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _mono_key(t[0]))


def _mono_key(m):
    return (sum(abs(e) for e in m), tuple(-e for e in m))


def poly_multiply(p: SuperPolynomial, q: SuperPolynomial) -> SuperPolynomial:
    if p.sig != q.sig:
        raise SignatureError("signature mismatch")
    sig = p.sig
    out = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            s, m = _mono_mul(sig, m1, m2)
            if s:
                out[m] = out.get(m, 0) + s * c1 * c2
    return SuperPolynomial(sig, {m: c for m, c in out.items() if c}, _trusted=True)


def derive(g: str, p: SuperPolynomial) -> SuperPolynomial:
    """Left partial derivative with respect to generator ``g``."""
    sig = p.sig
    k = sig.index(g)
    out = {}
    if sig.parities[k] == EVEN:
        for m, c in p.terms.items():
            e = m[k]
            if e:
                mm = list(m)
                mm[k] = e - 1
                out[tuple(mm)] = c * e
    else:
        for m, c in p.terms.items():
            if m[k]:
                before = sum(m[i] for i in sig.odd_indices if i < k)
                mm = list(m)
                mm[k] = 0
                out[tuple(mm)] = -c if before & 1 else c
    return SuperPolynomial(sig, out, _trusted=True)


def reduce_mod_odd(p: SuperPolynomial) -> SuperPolynomial:
    """Drop every monomial containing an odd generator."""
    odd = p.sig.odd_indices
    return SuperPolynomial(p.sig, {m: c for m, c in p.terms.items()
                                   if not any(m[i] for i in odd)}, _trusted=True)


def restrict_to_even(p: SuperPolynomial) -> SuperPolynomial:
    """Reduce mod odd and re-express over the even sub-signature."""
    sig = p.sig
    esig = sig.even_part()
    keep = [i for i, par in enumerate(sig.parities) if par == EVEN]
    r = reduce_mod_odd(p)
    return SuperPolynomial(esig, {tuple(m[i] for i in keep): c for m, c in r.terms.items()},
                           _trusted=True)


def extend_signature(p: SuperPolynomial, sig: Signature) -> SuperPolynomial:
    """Re-express ``p`` in a larger signature containing all its generators."""
    pos = [sig.index(n) for n in p.sig.names]
    out = {}
    for m, c in p.terms.items():
        mm = [0] * len(sig)
        for i, e in zip(pos, m):
            mm[i] = e
        out[tuple(mm)] = c
    # reordering generators can reorder odd factors: rebuild through products
    if _order_preserving(p.sig, sig):
        return SuperPolynomial(sig, out, _trusted=True)
    images = {n: SuperPolynomial.gen(sig, n) for n in p.sig.names}
    return substitute(p, images, sig)


def _order_preserving(small, big):
    pos = [big.index(n) for n, par in zip(small.names, small.parities) if par]
    return pos == sorted(pos)


def inverse(p: SuperPolynomial) -> SuperPolynomial:
    """Inverse of an element whose reduction is a unit Laurent monomial."""
    sig = p.sig
    red = reduce_mod_odd(p)
    if len(red.terms) != 1:
        raise ZeroDivisionError("reduced part is not a unit monomial")
    (m0, c0), = red.terms.items()
    for e, inv in zip(m0, sig.invertible):
        if e and not inv:
            raise ZeroDivisionError("reduced part involves a non-invertible generator")
    u_inv = SuperPolynomial(sig, {tuple(-e for e in m0): 1 / c0}, _trusted=True)
    nil = u_inv * (p - red)
    if not nil:
        return u_inv
    total = SuperPolynomial.one(sig)
    term = SuperPolynomial.one(sig)
    while True:
        term = -(term * nil)
        if not term:
            break
        total = total + term
    return total * u_inv


def substitute(p: SuperPolynomial, images: Mapping[str, SuperPolynomial],
               target: Signature | None = None) -> SuperPolynomial:
    """Algebra morphism sending each generator to its image.

    Generators absent from ``images`` map to themselves (requires the target
    signature to contain them).  Images must match the generator parity.
    """
    sig = p.sig
    if target is None:
        target = next(iter(images.values())).sig if images else sig
    gens = []
    for n, par in zip(sig.names, sig.parities):
        if n in images:
            img = images[n]
            if not isinstance(img, SuperPolynomial):
                img = SuperPolynomial.const(target, img)
            if img.sig != target:
                raise SignatureError("images must share the target signature")
            ip = img.parity()
            if img and ip != par:
                raise SignatureError(f"parity mismatch for generator {n}")
        else:
            img = SuperPolynomial.gen(target, n)
        gens.append(img)
    cache = {}

    def power(i, e):
        key = (i, e)
        if key not in cache:
            if e < 0:
                cache[key] = inverse(gens[i]) ** (-e)
            else:
                cache[key] = gens[i] ** e
        return cache[key]

    result = SuperPolynomial.zero(target)
    one = SuperPolynomial.one(target)
    for m, c in p.terms.items():
        factors = [power(i, e) for i, e in enumerate(m) if e]
        term = reduce(poly_multiply, factors, one)
        result = result + term * c
    return result


def evaluate(p: SuperPolynomial, point: Mapping[str, object]) -> Fraction:
    """Value of an odd-free polynomial at a rational point."""
    sig = p.sig
    if p.has_odd():
        raise SignatureError("evaluate needs an odd-free polynomial")
    vals = []
    for n, par, inv in sig.generators:
        if par == ODD:
            vals.append(None)
            continue
        if n not in point:
            vals.append(None)
            continue
        v = as_fraction(point[n])
        if inv and v == 0:
            raise ZeroDivisionError(f"zero assigned to invertible generator {n}")
        vals.append(v)
    total = Fraction(0)
    for m, c in p.terms.items():
        t = c
        for i, e in enumerate(m):
            if e:
                if vals[i] is None:
                    raise SignatureError(f"no value for generator {sig.names[i]}")
                t *= vals[i] ** e
        total += t
    return total


# -- tensor powers ------------------------------------------------------

def embed(p: SuperPolynomial, slot: int, k: int) -> SuperPolynomial:
    """Place ``p`` in tensor slot ``slot`` (1-based) of the k-fold power."""
    n = len(p.sig)
    tsig = p.sig.tensor_power(k)
    off = (slot - 1) * n
    out = {}
    for m, c in p.terms.items():
        mm = [0] * (n * k)
        mm[off:off + n] = m
        out[tuple(mm)] = c
    return SuperPolynomial(tsig, out, _trusted=True)


def tensor(*polys: SuperPolynomial) -> SuperPolynomial:
    """p1 ⊗ p2 ⊗ ... as an element of the tensor power (Koszul convention)."""
    k = len(polys)
    return reduce(poly_multiply, [embed(p, i + 1, k) for i, p in enumerate(polys)])


def slot_parts(sig: Signature, m, k: int):
    n = len(sig) // k
    return [tuple(m[i * n:(i + 1) * n]) for i in range(k)]


def multiply_slots(p: SuperPolynomial, base: Signature) -> SuperPolynomial:
    """The multiplication map O^{⊗k} -> O."""
    k = len(p.sig) // len(base)
    images = {}
    for i in range(1, k + 1):
        for n in base.names:
            images[f"{n}@{i}"] = SuperPolynomial.gen(base, n)
    return substitute(p, images, base)


def map_slot(p: SuperPolynomial, base: Signature, slot: int, k: int,
             images: Mapping[str, SuperPolynomial], new_slot_span: int = 1) -> SuperPolynomial:
    """Apply a generator substitution (given over ``base``) on one tensor slot.

    ``images`` map base generators to elements of the ``new_slot_span``-fold
    power; the result lives in the (k - 1 + new_slot_span)-fold power with
    the slot expanded in place.
    """
    new_k = k - 1 + new_slot_span
    tsig = base.tensor_power(new_k)
    table = {}
    for i in range(1, k + 1):
        for n in base.names:
            name = f"{n}@{i}"
            if i < slot:
                table[name] = SuperPolynomial.gen(tsig, f"{n}@{i}")
            elif i > slot:
                table[name] = SuperPolynomial.gen(tsig, f"{n}@{i - 1 + new_slot_span}")
            else:
                img = images[n]
                rename = {}
                for j in range(1, new_slot_span + 1):
                    for b in base.names:
                        src = f"{b}@{j}" if new_slot_span > 1 else b
                        rename[src] = SuperPolynomial.gen(tsig, f"{b}@{slot - 1 + j}")
                table[name] = substitute(img, rename, tsig)
    return substitute(p, table, tsig)


# -- derivations and differential operators ------------------------------

class SuperDerivation:
    """Σ p_g ∂_g with left partial derivatives; homogeneous of one parity."""

    __slots__ = ("sig", "terms", "parity")

    def __init__(self, sig: Signature, terms: Mapping[str, SuperPolynomial], parity=None):
        self.sig = sig
        clean = {}
        for g, c in terms.items():
            k = sig.index(g)
            if not isinstance(c, SuperPolynomial):
                c = SuperPolynomial.const(sig, c)
            if c.sig != sig:
                raise SignatureError("coefficient signature mismatch")
            if not c:
                continue
            cp = c.parity()
            if cp is None:
                raise ValueError("derivation coefficients must be homogeneous")
            tp = (cp + sig.parities[k]) & 1
            if parity is None:
                parity = tp
            elif tp != parity:
                raise ValueError("inhomogeneous derivation")
            clean[g] = c
        self.terms = clean
        self.parity = EVEN if parity is None else parity

    def __call__(self, p):
        return apply_derivation(self, p)

    def __eq__(self, other):
        return (isinstance(other, SuperDerivation) and self.sig == other.sig
                and self.terms == other.terms and (self.parity == other.parity or not self.terms))

    def __hash__(self):
        return hash((self.sig, frozenset(self.terms.items())))

    def __add__(self, other):
        if other.sig != self.sig:
            raise SignatureError("signature mismatch")
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out[g] + c if g in out else c
        return SuperDerivation(self.sig, out, self.parity if self.terms else other.parity)

    def __neg__(self):
        return SuperDerivation(self.sig, {g: -c for g, c in self.terms.items()}, self.parity)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return SuperDerivation(self.sig, {g: v * c for g, v in self.terms.items()}, self.parity)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for g in self.sig.names:
            if g in self.terms:
                parts.append(f"({format_poly(self.terms[g])})*d[{g}]")
        return " + ".join(parts)

    def to_operator(self) -> "DiffOperator":
        out = {}
        for g, c in self.terms.items():
            key = [0] * len(self.sig)
            key[self.sig.index(g)] = 1
            out[tuple(key)] = c
        return DiffOperator(self.sig, out)

    @classmethod
    def from_values(cls, sig, values: Mapping[str, SuperPolynomial], parity):
        """Derivation determined by its values on the generators."""
        return cls(sig, values, parity)


def apply_derivation(D: SuperDerivation, p: SuperPolynomial) -> SuperPolynomial:
    if D.sig != p.sig:
        raise SignatureError("signature mismatch")
    out = SuperPolynomial.zero(p.sig)
    for g, c in D.terms.items():
        out = out + c * derive(g, p)
    return out


def supercommutator(D: SuperDerivation, E: SuperDerivation) -> SuperDerivation:
    """[D, E] = DE - (-1)^{|D||E|} ED, returned as a derivation."""
    if D.sig != E.sig:
        raise SignatureError("signature mismatch")
    s = -1 if (D.parity & E.parity) else 1
    values = {}
    for g in D.sig.names:
        x = SuperPolynomial.gen(D.sig, g)
        v = D(E(x)) - E(D(x)) * s
        if v:
            values[g] = v
    return SuperDerivation(D.sig, values, (D.parity + E.parity) & 1)


class DiffOperator:
    """Σ c_I ∂^I with coefficients on the left, ∂^I in signature order.

    ∂^I = ∂_{g1}^{i1} ... ∂_{gn}^{in} acts right-to-left (∂_{gn} first).
    """

    __slots__ = ("sig", "terms")

    def __init__(self, sig: Signature, terms: Mapping[tuple, SuperPolynomial] | None = None):
        self.sig = sig
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def identity(cls, sig):
        return cls(sig, {(0,) * len(sig): SuperPolynomial.one(sig)})

    @classmethod
    def partial(cls, sig, name, coeff=None):
        key = [0] * len(sig)
        key[sig.index(name)] = 1
        return cls(sig, {tuple(key): coeff if coeff is not None else SuperPolynomial.one(sig)})

    def __eq__(self, other):
        return isinstance(other, DiffOperator) and self.sig == other.sig and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return DiffOperator(self.sig, out)

    def __neg__(self):
        return DiffOperator(self.sig, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return DiffOperator(self.sig, {k: v * c for k, v in self.terms.items()})

    def left_multiply(self, p: SuperPolynomial):
        return DiffOperator(self.sig, {k: p * v for k, v in self.terms.items()})

    def __call__(self, p: SuperPolynomial) -> SuperPolynomial:
        out = SuperPolynomial.zero(self.sig)
        names = self.sig.names
        for key, c in self.terms.items():
            q = p
            for i in range(len(key) - 1, -1, -1):
                for _ in range(key[i]):
                    q = derive(names[i], q)
                    if not q:
                        break
            if q:
                out = out + c * q
        return out

    def compose(self, other: "DiffOperator") -> "DiffOperator":
        """self ∘ other."""
        out = DiffOperator(self.sig)
        for key, c in self.terms.items():
            op = other
            for i in range(len(key) - 1, -1, -1):
                for _ in range(key[i]):
                    op = _partial_then(self.sig, i, op)
            out = out + op.left_multiply(c)
        return out

    def reduce_coefficients(self) -> "DiffOperator":
        """Drop coefficient terms lying in the ideal generated by odd elements."""
        return DiffOperator(self.sig, {k: reduce_mod_odd(c) for k, c in self.terms.items()})

    def order(self):
        return max((sum(k) for k in self.terms), default=0)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, c in sorted(self.terms.items()):
            d = "".join(f"d[{n}]" + (f"^{e}" if e > 1 else "")
                        for n, e in zip(self.sig.names, key) if e)
            parts.append(f"({format_poly(c)})" + ("*" + d if d else ""))
        return " + ".join(parts)


def _partial_then(sig, i, op: DiffOperator) -> DiffOperator:
    """∂_i ∘ op, renormalised to left-coefficient form."""
    name = sig.names[i]
    gpar = sig.parities[i]
    odd = sig.odd_indices
    out = {}

    def add(k, c):
        if c:
            out[k] = out[k] + c if k in out else c

    for key, c in op.terms.items():
        add(key, derive(name, c))
        # (-1)^{|g||c|} c ∂_g ∂^key, splitting c into homogeneous parts
        if gpar == ODD and key[i]:
            continue
        k2 = list(key)
        k2[i] += 1
        sign = 1
        if gpar == ODD:
            if sum(key[j] for j in odd if j < i) & 1:
                sign = -sign
        parts = c.homogeneous_parts()
        cc = parts[EVEN] + (-parts[ODD] if gpar == ODD else parts[ODD])
        add(tuple(k2), cc * sign)
    return DiffOperator(sig, out)


# -- formatting and JSON --------------------------------------------------

def format_monomial(sig: Signature, m) -> str:
    parts = []
    for n, e in zip(sig.names, m):
        if e == 1:
            parts.append(n)
        elif e:
            parts.append(f"{n}^{e}")
    return "*".join(parts)


def format_coeff_term(c: Fraction, body: str, first: bool) -> str:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    if body:
        text = body if a == 1 else f"{a}*{body}"
    else:
        text = str(a)
    if first:
        return ("-" if c < 0 else "") + text
    return f" {sign} {text}"


def format_poly(p: SuperPolynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        out.append(format_coeff_term(c, format_monomial(p.sig, m), i == 0))
    return "".join(out)


def poly_to_json(p: SuperPolynomial) -> list:
    out = []
    for m, c in sorted(p.terms.items()):
        out.append({"monomial": {n: e for n, e in zip(p.sig.names, m) if e},
                    "coeff": f"{c.numerator}/{c.denominator}"})
    return out


def poly_from_json(sig: Signature, data: list) -> SuperPolynomial:
    terms = {}
    for entry in data:
        m = sig.monomial(entry["monomial"])
        terms[m] = terms.get(m, 0) + as_fraction(entry["coeff"])
    return SuperPolynomial(sig, terms)


def signature_to_json(sig: Signature) -> list:
    return [{"name": n, "parity": "odd" if p else "even", "invertible": i}
            for n, p, i in sig.generators]


def signature_from_json(data) -> Signature:
    return Signature((d["name"], d["parity"], d.get("invertible", False)) for d in data)
