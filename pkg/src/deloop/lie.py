"""Chevalley-Eilenberg homology of finite-dimensional Lie algebras.

Sign conventions, fixed once:

* ``d(x_1 ^ ... ^ x_n) = sum_{i<j} (-1)^(i+j+1) [x_i, x_j] ^ x_1 ^ ..^.. ^ x_n``
  with 1-based positions, so ``d(x ^ y) = [x, y]``.
* The coproduct is the unshuffle sum
  ``D(x_1 ^ ... ^ x_n) = sum_S sign(S) x_S (x) x_{S^c}`` where ``sign(S)`` is the
  sign of the permutation listing ``S`` then ``S^c``.
* The tensor square carries ``D(u (x) v) = du (x) v + (-1)^|u| u (x) dv``.

With these choices the coproduct is a chain map, which the test-suite checks.
"""

from functools import lru_cache
from itertools import combinations, product
from math import comb

from .budget import DEFAULT_BUDGET, check_budget
from .homology import complex_homology
from .linalg import Echelon, RatMatrix, as_rational

__all__ = [
    "LieAlgebraError",
    "FinDimLieAlgebra",
    "ExteriorBasis",
    "abelian",
    "sl2",
    "gl",
    "direct_sum",
    "ce_boundary",
    "ce_boundary_column",
    "lie_homology",
    "TensorSquareBasis",
    "shuffle_coproduct",
    "coproduct_terms",
    "tensor_square_boundary",
    "primitive_dim",
]


class LieAlgebraError(ValueError):
    pass


class FinDimLieAlgebra:
    def __init__(self, dim, brackets, label="g", *, check=True):
        if dim < 1:
            raise LieAlgebraError("dimension must be positive")
        self.dim = dim
        self.label = label
        br = [[{} for _ in range(dim)] for _ in range(dim)]
        for (i, j), vec in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise LieAlgebraError(f"basis index ({i}, {j}) out of range")
            clean = {k: as_rational(c) for k, c in vec.items() if c}
            if any(not 0 <= k < dim for k in clean):
                raise LieAlgebraError("bracket index out of range")
            br[i][j] = clean
        self.br = br
        if check:
            self.check()

    def bracket_constants(self):
        return {
            (i, j, k): c
            for i in range(self.dim)
            for j in range(self.dim)
            for k, c in sorted(self.br[i][j].items())
        }

    def bracket_vec(self, x, y):
        acc = {}
        for i, a in x.items():
            row = self.br[i]
            for j, b in y.items():
                for k, c in row[j].items():
                    v = acc.get(k, 0) + a * b * c
                    if v:
                        acc[k] = v
                    else:
                        acc.pop(k, None)
        return acc

    def check(self):
        d = self.dim
        for i in range(d):
            if self.br[i][i]:
                raise LieAlgebraError(f"{self.label}: [e{i}, e{i}] is nonzero")
            for j in range(i + 1, d):
                neg = {k: -c for k, c in self.br[j][i].items()}
                if self.br[i][j] != neg:
                    raise LieAlgebraError(f"{self.label}: antisymmetry fails on ({i}, {j})")
        for i, j, k in combinations(range(d), 3):
            ei, ej, ek = {i: 1}, {j: 1}, {k: 1}
            total = {}
            for x, y, z in ((ei, ej, ek), (ej, ek, ei), (ek, ei, ej)):
                for key, v in self.bracket_vec(self.bracket_vec(x, y), z).items():
                    total[key] = total.get(key, 0) + v
            if any(total.values()):
                raise LieAlgebraError(f"{self.label}: Jacobi identity fails on ({i}, {j}, {k})")

    def is_abelian(self):
        return not any(self.br[i][j] for i in range(self.dim) for j in range(self.dim))

    def __repr__(self):
        return f"FinDimLieAlgebra({self.label!r}, dim={self.dim})"


def abelian(d):
    return FinDimLieAlgebra(d, {}, f"ab{d}")


def sl2():
    """``sl_2`` in the basis ``(e, h, f)``."""
    e, h, f = 0, 1, 2
    brackets = {
        (e, f): {h: 1},
        (f, e): {h: -1},
        (h, e): {e: 2},
        (e, h): {e: -2},
        (h, f): {f: -2},
        (f, h): {f: 2},
    }
    return FinDimLieAlgebra(3, brackets, "sl2")


def gl(n, A=None):
    """``gl_n(A)``, by default over Q; basis is that of ``matrix_algebra(A, n)``."""
    from .algebra import base_field, lie_of, matrix_algebra

    A = A if A is not None else base_field()
    g = lie_of(matrix_algebra(A, n))
    g.label = f"gl{n}({A.label})"
    return g


def direct_sum(g, h):
    """``g + h`` with the basis of ``g`` first."""
    d = g.dim
    brackets = {}
    for i in range(g.dim):
        for j in range(g.dim):
            if g.br[i][j]:
                brackets[(i, j)] = dict(g.br[i][j])
    for i in range(h.dim):
        for j in range(h.dim):
            if h.br[i][j]:
                brackets[(i + d, j + d)] = {k + d: c for k, c in h.br[i][j].items()}
    return FinDimLieAlgebra(g.dim + h.dim, brackets, f"{g.label}+{h.label}", check=False)


class ExteriorBasis:
    """Increasing index tuples of length ``n`` in lexicographic order."""

    def __init__(self, dim, n):
        self.dim = dim
        self.degree = n
        self.tuples = list(combinations(range(dim), n))
        self.index = {t: i for i, t in enumerate(self.tuples)}

    def __len__(self):
        return len(self.tuples)


@lru_cache(maxsize=64)
def _exterior(dim, n):
    return ExteriorBasis(dim, n)


def _wedge_front(k, rest):
    """``x_k ^ x_rest`` as ``(sign, sorted tuple)``, or ``(0, None)``."""
    if k in rest:
        return 0, None
    pos = 0
    for r in rest:
        if r < k:
            pos += 1
        else:
            break
    sign = -1 if pos % 2 else 1
    return sign, rest[:pos] + (k,) + rest[pos:]


def ce_boundary_column(g, x):
    """Boundary of the single wedge ``x`` as ``{tuple: coefficient}``."""
    n = len(x)
    out = {}
    for a in range(n):
        for b in range(a + 1, n):
            br = g.br[x[a]][x[b]]
            if not br:
                continue
            sign = -1 if (a + b) % 2 == 0 else 1
            rest = x[:a] + x[a + 1 : b] + x[b + 1 :]
            for k, v in br.items():
                s, t = _wedge_front(k, rest)
                if s:
                    y = out.get(t, 0) + sign * s * v
                    if y:
                        out[t] = y
                    else:
                        del out[t]
    return out


def ce_boundary(g, n):
    """Matrix of the Chevalley-Eilenberg boundary from degree ``n`` to ``n - 1``."""
    if n < 1:
        raise ValueError("ce_boundary needs n >= 1")
    src = _exterior(g.dim, n)
    dst = _exterior(g.dim, n - 1)
    cols = {}
    for c, x in enumerate(src.tuples):
        col = {dst.index[t]: v for t, v in ce_boundary_column(g, x).items()}
        if col:
            cols[c] = col
    return RatMatrix(len(dst), len(src), cols, _trusted=True)


def lie_homology(g, cap, budget=DEFAULT_BUDGET, representatives=True):
    """``H_n(g, Q)`` for ``0 <= n <= cap`` with trivial coefficients."""
    space_dims = {}
    for n in range(cap + 2):
        space_dims[n] = comb(g.dim, n)
        check_budget(n, space_dims[n], budget, "exterior power")
    return complex_homology(
        f"H({g.label})", space_dims, lambda n: ce_boundary(g, n), cap, representatives
    )


# -- the coproduct ------------------------------------------------------------


class TensorSquareBasis:
    """Basis of ``sum_{p+q=n} L^p g (x) L^q g``: blocks by ``p`` ascending, then
    left tuple, then right tuple, each in lexicographic order."""

    def __init__(self, dim, n):
        self.dim = dim
        self.degree = n
        self.offsets = []
        off = 0
        for p in range(n + 1):
            self.offsets.append(off)
            off += comb(dim, p) * comb(dim, n - p)
        self.size = off

    def __len__(self):
        return self.size

    def index(self, left, right):
        p = len(left)
        q = len(right)
        return (
            self.offsets[p]
            + _exterior(self.dim, p).index[left] * comb(self.dim, q)
            + _exterior(self.dim, q).index[right]
        )

    def pairs(self):
        for p in range(self.degree + 1):
            lefts = _exterior(self.dim, p).tuples
            rights = _exterior(self.dim, self.degree - p).tuples
            for left, right in product(lefts, rights):
                yield left, right


def coproduct_terms(x):
    """Unshuffle terms ``(sign, x_S, x_{S^c})`` of a single wedge ``x``."""
    n = len(x)
    for p in range(n + 1):
        for S in combinations(range(n), p):
            Sset = set(S)
            comp = [i for i in range(n) if i not in Sset]
            inversions = sum(1 for s in S for t in comp if t < s)
            sign = -1 if inversions % 2 else 1
            yield sign, tuple(x[i] for i in S), tuple(x[i] for i in comp)


def _coproduct_matrix(dim, n):
    src = _exterior(dim, n)
    dst = TensorSquareBasis(dim, n)
    cols = {}
    for c, x in enumerate(src.tuples):
        cols[c] = {dst.index(l, r): s for s, l, r in coproduct_terms(x)}
    return RatMatrix(len(dst), len(src), cols, _trusted=True)


def shuffle_coproduct(g, n, chain):
    """Apply the coproduct to a chain in degree ``n`` (dense coordinates)."""
    if len(chain) != comb(g.dim, n):
        raise ValueError(f"chain of length {len(chain)} is not in degree {n} of {g.label}")
    return _coproduct_matrix(g.dim, n).apply(chain)


def tensor_square_boundary(g, n):
    """Boundary of the tensor square complex from total degree ``n`` to ``n - 1``."""
    src = TensorSquareBasis(g.dim, n)
    dst = TensorSquareBasis(g.dim, n - 1)
    cache = {}
    cols = {}
    for c, (left, right) in enumerate(src.pairs()):
        for t in (left, right):
            if t not in cache:
                cache[t] = ce_boundary_column(g, t)
        col = {}
        for t, v in cache[left].items():
            r = dst.index(t, right)
            col[r] = col.get(r, 0) + v
        sign = -1 if len(left) % 2 else 1
        for t, v in cache[right].items():
            r = dst.index(left, t)
            col[r] = col.get(r, 0) + sign * v
        col = {r: v for r, v in col.items() if v}
        if col:
            cols[c] = col
    return RatMatrix(len(dst), len(src), cols, _trusted=True)


def primitive_dim(g, n, cap=None, budget=DEFAULT_BUDGET, report=None):
    """Dimension of the primitive part of ``H_n(g, Q)``.

    A class ``[z]`` is primitive when the reduced coproduct
    ``D(z) - z (x) 1 - 1 (x) z`` is a boundary in the tensor square. The
    condition is linear on ``H_n``, so the answer is ``dim H_n`` minus the rank
    the reduced coproducts add on top of the boundaries.
    """
    if cap is not None and n > cap:
        raise ValueError(f"degree {n} exceeds cap {cap}")
    if n == 0:
        return 0
    size = TensorSquareBasis(g.dim, n + 1).size
    check_budget(n + 1, size, budget, "tensor square")
    if report is None or n not in report.representatives:
        report = lie_homology(g, n, budget, representatives=True)
    reps = report.representatives[n]
    if not reps:
        return 0
    ech = Echelon()
    for _, col in tensor_square_boundary(g, n + 1).columns():
        ech.add(col)
    base = len(ech)
    delta = _coproduct_matrix(g.dim, n)
    tsq = TensorSquareBasis(g.dim, n)
    lo, hi = tsq.offsets[1], tsq.offsets[n]
    for z in reps:
        dz = delta.apply(z)
        reduced = {i: v for i, v in enumerate(dz) if v and lo <= i < hi}
        ech.add(reduced)
    return len(reps) - (len(ech) - base)
