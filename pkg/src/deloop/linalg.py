"""Exact sparse linear algebra over the rationals.

Matrices are stored column-major as ``{col: {row: value}}`` with no stored
zeros. Values are Python ``int`` or ``fractions.Fraction``; an ``int`` is the
rational with denominator one, so no conversion is ever lossy.

Elimination is fraction-free: every vector is scaled to integers by the lcm of
its denominators and then reduced with integer combinations, dividing out the
content after each step so entries stay small.
"""

from fractions import Fraction
from math import gcd, lcm

__all__ = [
    "RatMatrix",
    "as_rational",
    "rank",
    "kernel_basis",
    "homology_dim",
    "in_span",
    "image_echelon",
    "Echelon",
]


def as_rational(x):
    """Normalize ``x`` to an ``int`` when integral, else a ``Fraction``."""
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    if isinstance(x, str):
        x = Fraction(x)
    elif not isinstance(x, Fraction):
        if isinstance(x, float):
            raise TypeError("floating point values are not exact rationals")
        x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return x


class RatMatrix:
    """Immutable sparse rational matrix."""

    __slots__ = ("nrows", "ncols", "_cols")

    def __init__(self, nrows, ncols, columns=None, *, _trusted=False):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.nrows = nrows
        self.ncols = ncols
        if _trusted:
            self._cols = columns or {}
            return
        cols = {}
        for c, col in (columns or {}).items():
            if not 0 <= c < ncols:
                raise IndexError(f"column {c} out of range for {ncols} columns")
            clean = {}
            for r, v in col.items():
                if not 0 <= r < nrows:
                    raise IndexError(f"row {r} out of range for {nrows} rows")
                v = as_rational(v)
                if v:
                    clean[r] = v
            if clean:
                cols[c] = clean
        self._cols = cols

    @classmethod
    def from_entries(cls, nrows, ncols, entries):
        cols = {}
        for (r, c), v in entries.items():
            cols.setdefault(c, {})
            cols[c][r] = cols[c].get(r, 0) + v
        return cls(nrows, ncols, cols)

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        cols = {}
        for r, row in enumerate(rows):
            if len(row) != ncols:
                raise ValueError("ragged rows")
            for c, v in enumerate(row):
                if v:
                    cols.setdefault(c, {})[r] = v
        return cls(len(rows), ncols, cols)

    @classmethod
    def from_columns(cls, nrows, vectors):
        """Build a matrix whose columns are the given dense vectors."""
        vectors = list(vectors)
        cols = {}
        for c, vec in enumerate(vectors):
            if len(vec) != nrows:
                raise ValueError("column length mismatch")
            col = {r: v for r, v in enumerate(vec) if v}
            if col:
                cols[c] = col
        return cls(nrows, len(vectors), cols)

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(nrows, ncols, {}, _trusted=True)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {i: {i: 1} for i in range(n)}, _trusted=True)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def nnz(self):
        return sum(len(col) for col in self._cols.values())

    def column(self, c):
        """Sparse copy of column ``c`` as ``{row: value}``."""
        return dict(self._cols.get(c, {}))

    def columns(self):
        """Iterate ``(col, {row: value})`` over nonzero columns in order."""
        for c in sorted(self._cols):
            yield c, self._cols[c]

    def entries(self):
        """Iterate ``((row, col), value)`` in canonical row-major order."""
        triples = [(r, c, v) for c, col in self._cols.items() for r, v in col.items()]
        triples.sort()
        for r, c, v in triples:
            yield (r, c), v

    def __getitem__(self, rc):
        r, c = rc
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError(rc)
        return self._cols.get(c, {}).get(r, 0)

    def transpose(self):
        cols = {}
        for c, col in self._cols.items():
            for r, v in col.items():
                cols.setdefault(r, {})[c] = v
        return RatMatrix(self.ncols, self.nrows, cols, _trusted=True)

    T = property(transpose)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = {}
        for c, ocol in other._cols.items():
            acc = {}
            for k, w in ocol.items():
                for r, v in self._cols.get(k, {}).items():
                    acc[r] = acc.get(r, 0) + v * w
            acc = {r: as_rational(v) for r, v in acc.items() if v}
            if acc:
                cols[c] = acc
        return RatMatrix(self.nrows, other.ncols, cols, _trusted=True)

    def apply(self, vec):
        """Multiply by a dense vector, returning a dense tuple."""
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        out = [0] * self.nrows
        for c, x in enumerate(vec):
            if x:
                for r, v in self._cols.get(c, {}).items():
                    out[r] += v * x
        return tuple(as_rational(x) for x in out)

    def apply_sparse(self, vec):
        """Multiply by a sparse vector ``{col: value}``."""
        acc = {}
        for c, x in vec.items():
            for r, v in self._cols.get(c, {}).items():
                acc[r] = acc.get(r, 0) + v * x
        return {r: v for r, v in acc.items() if v}

    def is_zero(self):
        return not self._cols

    def to_dense(self):
        rows = [[0] * self.ncols for _ in range(self.nrows)]
        for c, col in self._cols.items():
            for r, v in col.items():
                rows[r][c] = v
        return rows

    def permuted(self, row_perm=None, col_perm=None):
        """Return the matrix with row ``r`` moved to ``row_perm[r]`` (same for columns)."""
        rp = row_perm or range(self.nrows)
        cp = col_perm or range(self.ncols)
        cols = {}
        for c, col in self._cols.items():
            cols[cp[c]] = {rp[r]: v for r, v in col.items()}
        return RatMatrix(self.nrows, self.ncols, cols, _trusted=True)

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._cols == other._cols

    def __hash__(self):
        return hash((self.shape, tuple(self.entries())))

    def __repr__(self):
        return f"RatMatrix({self.nrows}x{self.ncols}, nnz={self.nnz})"


def _integral(vec):
    """Clear denominators of a sparse rational vector; return ``(ints, factor)``."""
    den = 1
    for v in vec.values():
        if isinstance(v, Fraction):
            den = lcm(den, v.denominator)
    if den == 1:
        return dict(vec), 1
    return {k: int(v * den) for k, v in vec.items()}, den


class Echelon:
    """Incremental row echelon form over the integers.

    Each stored vector is keyed by its smallest index (its lead). Optionally a
    second sparse vector is carried along and transformed identically, which
    is how kernels and span coefficients are recovered.
    """

    def __init__(self):
        self.pivots = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, vec, combo=None):
        """Reduce ``vec`` against the stored pivots; return ``(vec, combo)``."""
        v, den = _integral(vec)
        if combo is not None:
            combo, cden = _integral(combo)
            if cden != 1 or den != 1:
                # v and combo must carry the same scale factor
                v = {k: x * cden for k, x in v.items()}
                combo = {k: x * den for k, x in combo.items()}
        pivots = self.pivots
        while v:
            lead = min(v)
            piv = pivots.get(lead)
            if piv is None:
                break
            p, pc = piv
            a = v[lead]
            b = p[lead]
            g = gcd(a, b)
            fa, fb = b // g, a // g
            if fa < 0:
                fa, fb = -fa, -fb
            if fa != 1:
                v = {k: x * fa for k, x in v.items()}
            for k, x in p.items():
                y = v.get(k, 0) - fb * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
            if combo is not None:
                if fa != 1:
                    combo = {k: x * fa for k, x in combo.items()}
                for k, x in pc.items():
                    y = combo.get(k, 0) - fb * x
                    if y:
                        combo[k] = y
                    else:
                        combo.pop(k, None)
            if v:
                g = gcd(*v.values())
                if combo:
                    g = gcd(g, *combo.values())
                if g > 1:
                    v = {k: x // g for k, x in v.items()}
                    if combo is not None:
                        combo = {k: x // g for k, x in combo.items()}
        return v, combo

    def add(self, vec, combo=None):
        """Insert ``vec``; return the tracked combination if it reduced to zero.

        Returns ``None`` when ``vec`` was independent (and is now a pivot).
        """
        v, c = self.reduce(vec, combo)
        if v:
            lead = min(v)
            if v[lead] < 0:
                v = {k: -x for k, x in v.items()}
                if c is not None:
                    c = {k: -x for k, x in c.items()}
            self.pivots[lead] = (v, c if c is not None else {})
            return None
        return c if c is not None else {}

    def contains(self, vec):
        v, _ = self.reduce(vec)
        return not v


def _vectors(m):
    """Pick the cheaper side of ``m`` to eliminate; rank is the same either way."""
    if m.nrows < m.ncols:
        m = m.transpose()
    vecs = [col for _, col in m.columns()]
    vecs.sort(key=len)
    return vecs


def rank(m):
    """Rank of ``m`` over the rationals."""
    ech = Echelon()
    for vec in _vectors(m):
        ech.add(vec)
    return len(ech)


def kernel_basis(m):
    """Basis of the right null space of ``m`` as dense tuples.

    Vectors are primitive integer vectors, in order of the column at which the
    dependency was first detected.
    """
    ech = Echelon()
    basis = []
    for c in range(m.ncols):
        col = m._cols.get(c)
        if col is None:
            dep = {c: 1}
        else:
            dep = ech.add(col, {c: 1})
        if dep is not None:
            vec = [0] * m.ncols
            for k, x in dep.items():
                vec[k] = x
            basis.append(_primitive(vec))
    return basis


def _primitive(vec):
    den = 1
    for x in vec:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    vec = [int(x * den) for x in vec]
    g = gcd(*vec)
    if g > 1:
        vec = [x // g for x in vec]
    lead = next((x for x in vec if x), 0)
    if lead < 0:
        vec = [-x for x in vec]
    return tuple(vec)


def homology_dim(d_out, d_in):
    """``dim ker(d_out) - rank(d_in)`` for a composable pair with ``d_out @ d_in == 0``."""
    if d_out.ncols != d_in.nrows:
        raise ValueError(
            f"boundaries are not composable: {d_out.shape} after {d_in.shape}"
        )
    if not (d_out @ d_in).is_zero():
        raise ValueError("not a chain complex: d_out @ d_in is nonzero")
    return d_out.ncols - rank(d_out) - rank(d_in)


def _sparse(vec):
    return {i: as_rational(x) for i, x in enumerate(vec) if x}


def in_span(v, basis):
    """Whether the dense vector ``v`` lies in the rational span of ``basis``."""
    n = len(v)
    ech = Echelon()
    for b in basis:
        if len(b) != n:
            raise ValueError("vector length mismatch")
        ech.add(_sparse(b))
    return ech.contains(_sparse(v))


def image_echelon(m):
    """Echelon form of the column span of ``m``."""
    ech = Echelon()
    for _, col in m.columns():
        ech.add(col)
    return ech
