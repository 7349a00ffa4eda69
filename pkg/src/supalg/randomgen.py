"""Seeded random elements for the verification suites and tests.

Every generator takes an explicit ``random.Random`` so a single seed fixes
a whole run.
"""

from __future__ import annotations

from fractions import Fraction

from .enveloping import UAlgebra, UElement
from .liesuper import ReducedPoint
from .superpoly import Signature, SuperPolynomial


def random_coeff(rng, span=3):
    num = rng.choice([k for k in range(-span, span + 1) if k])
    return Fraction(num, rng.randint(1, span))


def random_pbw_monomial(A: UAlgebra, rng, max_degree):
    """A PBW monomial of total degree ≤ max_degree (odd exponents 0 or 1)."""
    budget = rng.randint(0, max_degree)
    m = [0] * A.dim
    for _ in range(budget):
        b = rng.randrange(A.dim)
        if A.parities[b] and m[b]:
            continue
        m[b] += 1
    return tuple(m)


def random_u(A: UAlgebra, rng, max_degree=3, terms=3) -> UElement:
    out = {}
    for _ in range(rng.randint(1, terms)):
        m = random_pbw_monomial(A, rng, max_degree)
        out[m] = out.get(m, 0) + random_coeff(rng)
    return UElement(A, out)


def random_homogeneous_u(A: UAlgebra, rng, max_degree=3, terms=3) -> UElement:
    u = random_u(A, rng, max_degree, terms)
    parts = u.homogeneous_parts()
    return parts[rng.choice([p for p, v in parts.items() if v.terms] or [0])]


def random_poly(sig: Signature, rng, low=-2, high=3, terms=3) -> SuperPolynomial:
    """Laurent exponents in [low, high] on invertible generators, [0, high] otherwise."""
    out = SuperPolynomial.zero(sig)
    for _ in range(rng.randint(1, terms)):
        m = []
        for p, inv in zip(sig.parities, sig.invertible):
            if p:
                m.append(rng.randint(0, 1))
            else:
                m.append(rng.randint(low if inv else 0, high))
        out = out + SuperPolynomial(sig, {tuple(m): random_coeff(rng)})
    return out


def random_diagonal_point(m, n, rng, span=5) -> ReducedPoint:
    entries = [random_coeff(rng, span) for _ in range(m + n)]
    return ReducedPoint.diagonal(*entries, m=m)


def random_section(P, rng, low=-2, high=3, terms=2):
    from .shcp import SHCPSection
    comps = {}
    for w in P.wedges:
        if rng.random() < 0.75:
            comps[w] = random_poly(P.sig0, rng, low, high, terms)
    return SHCPSection(P, comps)


def random_distribution(H, rng, points=2, max_degree=2, terms=2):
    from .distributions import Distribution
    m, n = H.lie.gl_shape
    out = Distribution(H, {})
    for _ in range(rng.randint(1, points)):
        g = random_diagonal_point(m, n, rng) if rng.random() < 0.7 else ReducedPoint.identity(m, n)
        out = out + Distribution.at(H, g, random_u(H.U, rng, max_degree, terms))
    return out
