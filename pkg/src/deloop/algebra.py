"""Finite-dimensional unital associative algebras over Q.

An algebra is a multiplication table on a basis ``e_0 .. e_{d-1}``:
``mult[i][j]`` is the sparse vector ``{k: c}`` with ``e_i e_j = sum c e_k``.
Associativity and the unit laws are checked on every basis triple when the
algebra is built, so a bad table never reaches the homology code.
"""

from fractions import Fraction
from itertools import product

from .linalg import as_rational
from .lie import FinDimLieAlgebra

__all__ = [
    "AlgebraError",
    "FinDimAlgebra",
    "AlgebraElement",
    "base_field",
    "dual_numbers",
    "truncated_poly",
    "group_algebra_cyclic",
    "matrix_algebra",
    "lie_of",
    "alg_mul",
]


class AlgebraError(ValueError):
    pass


def _axpy(acc, scale, vec):
    """acc += scale * vec on sparse dicts, dropping zeros."""
    for k, v in vec.items():
        y = acc.get(k, 0) + scale * v
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)


class FinDimAlgebra:
    def __init__(self, dim, table, unit, label="A", *, check=True):
        if dim < 1:
            raise AlgebraError("dimension must be positive")
        self.dim = dim
        self.label = label
        mult = [[{} for _ in range(dim)] for _ in range(dim)]
        for (i, j), vec in table.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise AlgebraError(f"basis index ({i}, {j}) out of range")
            clean = {}
            for k, c in vec.items():
                if not 0 <= k < dim:
                    raise AlgebraError(f"product index {k} out of range")
                c = as_rational(c)
                if c:
                    clean[k] = c
            mult[i][j] = clean
        self.mult = mult
        unit = tuple(as_rational(u) for u in unit)
        if len(unit) != dim:
            raise AlgebraError("unit has the wrong length")
        self.unit = unit
        if check:
            self.check()

    # -- structure ---------------------------------------------------------

    def structure_constants(self):
        """Nonzero constants as ``{(i, j, k): c}`` in canonical order."""
        out = {}
        for i in range(self.dim):
            for j in range(self.dim):
                for k in sorted(self.mult[i][j]):
                    out[(i, j, k)] = self.mult[i][j][k]
        return out

    def mul_vec(self, x, y):
        """Product of sparse coordinate dicts."""
        acc = {}
        mult = self.mult
        for i, a in x.items():
            row = mult[i]
            for j, b in y.items():
                prod = row[j]
                if prod:
                    _axpy(acc, a * b, prod)
        return acc

    def mul_coords(self, x, y):
        acc = self.mul_vec(_sparse(x), _sparse(y))
        return self._dense(acc)

    def _dense(self, vec):
        out = [0] * self.dim
        for k, v in vec.items():
            out[k] = as_rational(v)
        return tuple(out)

    def check(self):
        d = self.dim
        unit = _sparse(self.unit)
        for i in range(d):
            e = {i: 1}
            if self.mul_vec(unit, e) != e or self.mul_vec(e, unit) != e:
                raise AlgebraError(f"{self.label}: unit law fails on basis element {i}")
        for i, j, k in product(range(d), repeat=3):
            left = self.mul_vec(self.mult[i][j], {k: 1})
            right = self.mul_vec({i: 1}, self.mult[j][k])
            if left != right:
                raise AlgebraError(
                    f"{self.label}: associativity fails on basis triple ({i}, {j}, {k})"
                )

    # -- elements ----------------------------------------------------------

    def element(self, coords):
        return AlgebraElement(coords, self)

    def basis(self, i):
        c = [0] * self.dim
        c[i] = 1
        return AlgebraElement(c, self)

    def one(self):
        return AlgebraElement(self.unit, self)

    def zero(self):
        return AlgebraElement((0,) * self.dim, self)

    def scalar(self, c):
        c = as_rational(c)
        return AlgebraElement(tuple(c * u for u in self.unit), self)

    def is_commutative(self):
        d = self.dim
        return all(self.mult[i][j] == self.mult[j][i] for i in range(d) for j in range(i))

    # -- the commutator subspace and A/[A,A] ------------------------------

    def _commutator_rref(self):
        try:
            return self._rref
        except AttributeError:
            pass
        rows = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                v = dict(self.mult[i][j])
                _axpy(v, -1, self.mult[j][i])
                v = _rref_reduce(rows, v)
                if v:
                    lead = min(v)
                    inv = Fraction(1) / v[lead]
                    v = {k: x * inv for k, x in v.items()}
                    for key, row in rows.items():
                        if lead in row:
                            _axpy(row, -row[lead], v)
                    rows[lead] = v
        self._rref = rows
        return rows

    def commutator_dim(self):
        """Dimension of the span of all ``ab - ba``."""
        return len(self._commutator_rref())

    def hc0_dim(self):
        return self.dim - self.commutator_dim()

    def reduce_mod_commutators(self, x):
        """Canonical representative of ``x`` in ``A/[A,A]``."""
        coords = x.coords if isinstance(x, AlgebraElement) else tuple(x)
        v = _rref_reduce(self._commutator_rref(), _sparse(coords))
        return AlgebraElement(self._dense(v), self)

    def __repr__(self):
        return f"FinDimAlgebra({self.label!r}, dim={self.dim})"

    def __eq__(self, other):
        if not isinstance(other, FinDimAlgebra):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.unit == other.unit
            and self.mult == other.mult
        )

    def __hash__(self):
        return hash((self.dim, self.unit, tuple(self.structure_constants().items())))


def _rref_reduce(rows, v):
    v = dict(v)
    for lead in sorted(rows):
        c = v.get(lead)
        if c:
            _axpy(v, -c, rows[lead])
    return v


def _sparse(coords):
    return {i: c for i, c in enumerate(coords) if c}


class AlgebraElement:
    __slots__ = ("coords", "parent")

    def __init__(self, coords, parent):
        coords = tuple(as_rational(c) for c in coords)
        if len(coords) != parent.dim:
            raise AlgebraError(
                f"coordinate vector of length {len(coords)} for algebra of dim {parent.dim}"
            )
        self.coords = coords
        self.parent = parent

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"expected an AlgebraElement, got {type(other).__name__}")
        if other.parent is not self.parent and other.parent != self.parent:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        return AlgebraElement([a + b for a, b in zip(self.coords, other.coords)], self.parent)

    def __sub__(self, other):
        self._check(other)
        return AlgebraElement([a - b for a, b in zip(self.coords, other.coords)], self.parent)

    def __neg__(self):
        return AlgebraElement([-a for a in self.coords], self.parent)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return alg_mul(self, other)
        c = as_rational(other)
        return AlgebraElement([c * a for a in self.coords], self.parent)

    def __rmul__(self, other):
        c = as_rational(other)
        return AlgebraElement([c * a for a in self.coords], self.parent)

    def __bool__(self):
        return any(self.coords)

    def is_zero(self):
        return not any(self.coords)

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.coords == other.coords and (
                self.parent is other.parent or self.parent == other.parent
            )
        if isinstance(other, (int, Fraction)):
            return self.coords == self.parent.scalar(other).coords
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        if self.parent.dim == 1:
            return str(self.coords[0])
        return f"{self.parent.label}{list(map(str, self.coords))}"


def alg_mul(a, b):
    a._check(b)
    return AlgebraElement(a.parent.mul_coords(a.coords, b.coords), a.parent)


# -- constructors ------------------------------------------------------------


def base_field():
    """The rationals as a one-dimensional algebra."""
    return FinDimAlgebra(1, {(0, 0): {0: 1}}, (1,), "Q")


def truncated_poly(n):
    """``Q[x]/(x^n)`` with basis ``1, x, ..., x^(n-1)``."""
    if n < 1:
        raise AlgebraError("truncated_poly needs n >= 1")
    table = {(i, j): {i + j: 1} for i in range(n) for j in range(n) if i + j < n}
    unit = (1,) + (0,) * (n - 1)
    return FinDimAlgebra(n, table, unit, f"Q[x]/(x^{n})")


def dual_numbers():
    """``Q[eps]/(eps^2)`` with basis ``1, eps``."""
    A = truncated_poly(2)
    A.label = "Q[eps]"
    return A


def group_algebra_cyclic(m):
    """``Q[Z/m]`` with basis ``1, g, ..., g^(m-1)``."""
    if m < 1:
        raise AlgebraError("group_algebra_cyclic needs m >= 1")
    table = {(i, j): {(i + j) % m: 1} for i in range(m) for j in range(m)}
    unit = (1,) + (0,) * (m - 1)
    return FinDimAlgebra(m, table, unit, f"Q[Z/{m}]")


def matrix_algebra(A, n):
    """``M_n(A)``; basis index of ``E_rc (x) a_k`` is ``(r*n + c)*dim(A) + k``."""
    if n < 1:
        raise AlgebraError("matrix_algebra needs n >= 1")
    d = A.dim
    table = {}
    for r, c, s in product(range(n), repeat=3):
        for i in range(d):
            for j in range(d):
                prod = A.mult[i][j]
                if prod:
                    left = (r * n + c) * d + i
                    right = (c * n + s) * d + j
                    base = (r * n + s) * d
                    table[(left, right)] = {base + k: v for k, v in prod.items()}
    unit = [0] * (n * n * d)
    for r in range(n):
        for k, u in enumerate(A.unit):
            unit[(r * n + r) * d + k] = u
    return FinDimAlgebra(n * n * d, table, unit, f"M{n}({A.label})")


def lie_of(A):
    """The commutator Lie algebra of ``A``."""
    brackets = {}
    for i in range(A.dim):
        for j in range(A.dim):
            if i == j:
                continue
            v = dict(A.mult[i][j])
            _axpy(v, -1, A.mult[j][i])
            if v:
                brackets[(i, j)] = v
    return FinDimLieAlgebra(A.dim, brackets, f"gl({A.label})")
