"""Hypothesis strategies for the algebraic types."""

from hypothesis import strategies as st

from supalg.superpoly import SuperPolynomial
from supalg.enveloping import UElement

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)


def monomials(sig, low=-2, high=3):
    parts = []
    for p, inv in zip(sig.parities, sig.invertible):
        if p:
            parts.append(st.integers(0, 1))
        else:
            parts.append(st.integers(low if inv else 0, high))
    return st.tuples(*parts)


def polys(sig, low=-2, high=3, max_terms=4):
    return st.dictionaries(monomials(sig, low, high), coeffs, max_size=max_terms).map(
        lambda d: SuperPolynomial(sig, d))


def homogeneous_polys(sig, low=-2, high=3, max_terms=4):
    return st.tuples(polys(sig, low, high, max_terms), st.integers(0, 1)).map(
        lambda t: t[0].homogeneous_parts()[t[1]])


def pbw_monomials(A, max_degree=3):
    def build(exps):
        m = [e if not A.parities[i] else min(e, 1) for i, e in enumerate(exps)]
        while sum(m) > max_degree:
            k = max(range(len(m)), key=lambda i: m[i])
            m[k] -= 1
        return tuple(m)
    return st.tuples(*[st.integers(0, max_degree)] * A.dim).map(build)


def u_elements(A, max_degree=3, max_terms=3):
    return st.dictionaries(pbw_monomials(A, max_degree), coeffs, min_size=1,
                           max_size=max_terms).map(lambda d: UElement(A, d))


def diagonal_entries(size):
    nonzero = st.fractions(min_value=-6, max_value=6, max_denominator=4).filter(bool)
    return st.lists(nonzero, min_size=size, max_size=size)

