"""Finite-dimensional Lie superalgebras given by structure constants."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .superpoly import EVEN, ODD, Signature, SuperPolynomial, as_fraction


class LieSuperAlgebra:
    """Homogeneous basis ``(name, parity)`` and constants [b_i, b_j] = Σ c_ij^k b_k.

    Constants are stored densely as ``consts[i][j] -> tuple`` of length dim.
    """

    def __init__(self, basis, consts, *, check=True):
        self.names = tuple(n for n, _ in basis)
        self.parities = tuple(EVEN if p in (0, "even") else ODD for _, p in basis)
        self.dim = len(self.names)
        self._index = {n: i for i, n in enumerate(self.names)}
        self.consts = tuple(tuple(tuple(as_fraction(c) for c in consts[i][j])
                                  for j in range(self.dim)) for i in range(self.dim))
        self._cache = {}
        if check:
            bad = check_antisymmetry(self)
            if bad:
                raise ValueError(f"structure constants are not graded antisymmetric: {bad[0]}")

    def __repr__(self):
        return f"LieSuperAlgebra({', '.join(self.names)})"

    def index(self, name):
        return self._index[name]

    def basis_vector(self, i):
        if isinstance(i, str):
            i = self.index(i)
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return tuple(v)

    def vector(self, coeffs):
        """GVector from a mapping name -> coefficient."""
        v = [Fraction(0)] * self.dim
        for n, c in coeffs.items():
            v[self.index(n)] += as_fraction(c)
        return tuple(v)

    def zero(self):
        return (Fraction(0),) * self.dim

    @property
    def even_indices(self):
        return tuple(i for i, p in enumerate(self.parities) if p == EVEN)

    @property
    def odd_indices(self):
        return tuple(i for i, p in enumerate(self.parities) if p == ODD)

    def parity_of(self, x):
        ps = {self.parities[i] for i, c in enumerate(x) if c}
        if not ps:
            return EVEN
        return ps.pop() if len(ps) == 1 else None

    def bracket_basis(self, i, j):
        return self.consts[i][j]

    def bracket(self, x, y):
        if len(x) != self.dim or len(y) != self.dim:
            raise ValueError("dimension mismatch")
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in enumerate(self.consts[i][j]):
                    if c:
                        out[k] += ab * c
        return tuple(out)

    def format_vector(self, x):
        parts = []
        for n, c in zip(self.names, x):
            if c:
                parts.append(n if c == 1 else f"{c}*{n}")
        return " + ".join(parts) if parts else "0"

    def even_subalgebra(self):
        ev = self.even_indices
        basis = [(self.names[i], EVEN) for i in ev]
        consts = []
        for i in ev:
            row = []
            for j in ev:
                c = self.consts[i][j]
                if any(c[k] for k in self.odd_indices):
                    raise ValueError("even part is not closed under the bracket")
                row.append(tuple(c[k] for k in ev))
            consts.append(row)
        return LieSuperAlgebra(basis, consts)

    def to_json(self):
        return {
            "basis": [{"name": n, "parity": "odd" if p else "even"}
                      for n, p in zip(self.names, self.parities)],
            "brackets": [{"x": self.names[i], "y": self.names[j],
                          "value": {self.names[k]: str(c) for k, c in enumerate(v) if c}}
                         for i in range(self.dim) for j in range(self.dim)
                         for v in [self.consts[i][j]] if any(v)],
        }

    @classmethod
    def from_json(cls, data):
        basis = [(b["name"], b["parity"]) for b in data["basis"]]
        names = [n for n, _ in basis]
        idx = {n: i for i, n in enumerate(names)}
        dim = len(names)
        consts = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for entry in data["brackets"]:
            i, j = idx[entry["x"]], idx[entry["y"]]
            for n, c in entry["value"].items():
                consts[i][j][idx[n]] = as_fraction(c)
        return cls(basis, consts)


def _sign(p, q):
    return -1 if (p & q) else 1


def check_antisymmetry(L):
    """Return the list of failing (i, j) pairs."""
    bad = []
    for i in range(L.dim):
        for j in range(L.dim):
            s = _sign(L.parities[i], L.parities[j])
            a, b = L.consts[i][j], L.consts[j][i]
            if any(x + s * y for x, y in zip(a, b)):
                bad.append((L.names[i], L.names[j]))
    return bad


def jacobi_defect(L, i, j, k):
    """(-1)^{|x||z|}[x,[y,z]] + cyclic, for basis indices x=i, y=j, z=k."""
    p = L.parities
    x, y, z = (L.basis_vector(t) for t in (i, j, k))
    t1 = L.bracket(x, L.bracket(y, z))
    t2 = L.bracket(y, L.bracket(z, x))
    t3 = L.bracket(z, L.bracket(x, y))
    s1, s2, s3 = _sign(p[i], p[k]), _sign(p[j], p[i]), _sign(p[k], p[j])
    return tuple(s1 * a + s2 * b + s3 * c for a, b, c in zip(t1, t2, t3))


def check_jacobi(L):
    """Failing triples, grouped by the number of odd entries."""
    bad = []
    for i, j, k in product(range(L.dim), repeat=3):
        if any(jacobi_defect(L, i, j, k)):
            bad.append((L.names[i], L.names[j], L.names[k]))
    return bad


# -- gl(m|n) ---------------------------------------------------------------

def gl_index_parity(i, m):
    """Parity of the row/column index i (1-based)."""
    return EVEN if i <= m else ODD


def gl_basis_order(m, n):
    """E_ij labels, even ones first, each block lexicographic."""
    size = m + n
    pairs = [(i, j) for i in range(1, size + 1) for j in range(1, size + 1)]
    even = [(i, j) for i, j in pairs if gl_index_parity(i, m) == gl_index_parity(j, m)]
    odd = [(i, j) for i, j in pairs if gl_index_parity(i, m) != gl_index_parity(j, m)]
    return even + odd


def _label(i, j, size):
    return f"E{i}{j}" if size < 10 else f"E{i}_{j}"


def build_gl(m: int, n: int) -> LieSuperAlgebra:
    """gl(m|n) with the supercommutator of elementary matrices."""
    if m < 0 or n < 0 or m + n < 1:
        raise ValueError("need m, n >= 0 and m + n >= 1")
    size = m + n
    order = gl_basis_order(m, n)
    pos = {ij: k for k, ij in enumerate(order)}
    par = [EVEN if gl_index_parity(i, m) == gl_index_parity(j, m) else ODD for i, j in order]
    dim = len(order)
    consts = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    for a, (i, j) in enumerate(order):
        for b, (k, l) in enumerate(order):
            s = _sign(par[a], par[b])
            # E_ij E_kl = δ_jk E_il ; E_kl E_ij = δ_li E_kj
            if j == k:
                consts[a][b][pos[(i, l)]] += 1
            if l == i:
                consts[a][b][pos[(k, j)]] -= s
    L = LieSuperAlgebra([(_label(i, j, size), p) for (i, j), p in zip(order, par)], consts)
    L.gl_shape = (m, n)
    L.gl_order = order
    return L


def gl_matrix(L, x):
    """Matrix (list of rows of Fractions) of a GVector of gl(m|n)."""
    m, n = L.gl_shape
    size = m + n
    M = [[Fraction(0)] * size for _ in range(size)]
    for c, (i, j) in zip(x, L.gl_order):
        M[i - 1][j - 1] += c
    return M


def gl_vector(L, M):
    return tuple(Fraction(M[i - 1][j - 1]) for i, j in L.gl_order)


def matmul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0))
             for j in range(len(B[0]))] for i in range(len(A))]


def mat_inverse(A):
    """Exact Gauss-Jordan inverse; raises ZeroDivisionError when singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        f = M[col][col]
        M[col] = [x / f for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                g = M[r][col]
                M[r] = [a - g * b for a, b in zip(M[r], M[col])]
    return [row[n:] for row in M]


class ReducedPoint:
    """Rational point of GL(m) x GL(n): an invertible block-diagonal matrix."""

    __slots__ = ("m", "n", "matrix", "_key")

    def __init__(self, m, n, matrix):
        size = m + n
        M = tuple(tuple(Fraction(x) for x in row) for row in matrix)
        if len(M) != size or any(len(r) != size for r in M):
            raise ValueError("wrong matrix size")
        for i in range(size):
            for j in range(size):
                if (i < m) != (j < m) and M[i][j]:
                    raise ValueError("reduced points are block diagonal")
        mat_inverse([list(r) for r in M])  # raises when singular
        self.m, self.n, self.matrix = m, n, M
        self._key = (m, n, M)

    @classmethod
    def diagonal(cls, *entries, m=None):
        size = len(entries)
        if m is None:
            m = 1 if size == 2 else size
        M = [[Fraction(entries[i]) if i == j else Fraction(0) for j in range(size)]
             for i in range(size)]
        return cls(m, size - m, M)

    @classmethod
    def identity(cls, m, n):
        size = m + n
        return cls(m, n, [[int(i == j) for j in range(size)] for i in range(size)])

    def __eq__(self, other):
        return isinstance(other, ReducedPoint) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other):
        return self._key < other._key

    def __mul__(self, other):
        return ReducedPoint(self.m, self.n, matmul(self.matrix, other.matrix))

    def inverse(self):
        return ReducedPoint(self.m, self.n, mat_inverse([list(r) for r in self.matrix]))

    def is_identity(self):
        return self == ReducedPoint.identity(self.m, self.n)

    def __repr__(self):
        if all(self.matrix[i][j] == 0 for i in range(len(self.matrix))
               for j in range(len(self.matrix)) if i != j):
            return "diag(" + ", ".join(str(self.matrix[i][i]) for i in range(len(self.matrix))) + ")"
        return f"ReducedPoint({[list(map(str, r)) for r in self.matrix]})"

    def to_json(self):
        return [[str(x) for x in row] for row in self.matrix]

    @classmethod
    def from_json(cls, data, m):
        n = len(data) - m
        return cls(m, n, [[Fraction(x) for x in row] for row in data])


def adjoint(L, h: ReducedPoint, x):
    """Ad(h)x = h X h^{-1} in gl(m|n)."""
    X = gl_matrix(L, x)
    H = [list(r) for r in h.matrix]
    return gl_vector(L, matmul(matmul(H, X), mat_inverse(H)))


def adjoint_matrix(L, h):
    """Columns are Ad(h) applied to basis vectors."""
    cols = [adjoint(L, h, L.basis_vector(i)) for i in range(L.dim)]
    return [[cols[j][i] for j in range(L.dim)] for i in range(L.dim)]


def torus_signature(m=1, n=1):
    """Coordinate ring of the diagonal torus GL(1)^(m+n)."""
    return Signature((f"a{i}{i}", EVEN, True) for i in range(1, m + n + 1))


def generic_adjoint(L, x, sig=None):
    """h^{-1}.x for a generic diagonal point h, coefficients in O(torus).

    Returns a mapping basis index -> SuperPolynomial.  Supported when the
    reduced group is a torus, i.e. gl(1|1) (or gl(1|0), gl(0|1)).
    """
    m, n = getattr(L, "gl_shape", (None, None))
    if m is None or m > 1 or n > 1:
        raise NotImplementedError("generic adjoint needs GL(1) x GL(1)")
    sig = sig or torus_signature(m, n)
    out = {}
    for c, (i, j), k in zip(x, L.gl_order, range(L.dim)):
        if not c:
            continue
        # (h^{-1} E_ij h) = h_ii^{-1} h_jj E_ij
        coeff = SuperPolynomial.from_monomial(sig, _merge({f"a{i}{i}": -1}, {f"a{j}{j}": 1}), c)
        if coeff:
            out[k] = out[k] + coeff if k in out else coeff
    return out


def _merge(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def dual_number_check(L, Z, X):
    """Compare Ad(1 + tZ) X with X + t[Z, X] modulo t^2 for even Z.

    Entries are pairs (a, b) meaning a + b t.  Returns True on agreement.
    """
    size = sum(L.gl_shape)
    Zm = gl_matrix(L, Z)
    Xm = gl_matrix(L, X)
    one = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    g = [[(one[i][j], Zm[i][j]) for j in range(size)] for i in range(size)]
    ginv = [[(one[i][j], -Zm[i][j]) for j in range(size)] for i in range(size)]
    xm = [[(Xm[i][j], Fraction(0)) for j in range(size)] for i in range(size)]

    def mul(A, B):
        out = []
        for i in range(size):
            row = []
            for j in range(size):
                a = b = Fraction(0)
                for k in range(size):
                    a0, a1 = A[i][k]
                    b0, b1 = B[k][j]
                    a += a0 * b0
                    b += a0 * b1 + a1 * b0
                row.append((a, b))
            out.append(row)
        return out

    conj = mul(mul(g, xm), ginv)
    expect0 = Xm
    expect1 = gl_matrix(L, L.bracket(Z, X))
    return all(conj[i][j] == (expect0[i][j], expect1[i][j])
               for i in range(size) for j in range(size))
