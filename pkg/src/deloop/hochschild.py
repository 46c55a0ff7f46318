"""Hochschild and cyclic homology of finite-dimensional algebras.

Chain spaces are the unnormalized ``C_n(A) = A^{(x)(n+1)}``. A basis word
``(a_0, ..., a_n)`` is numbered in base ``dim(A)`` with ``a_0`` most
significant, which is also the order ``itertools.product`` enumerates.

Cyclic homology is computed twice: from Connes' complex of coinvariants of the
signed cyclic operator, and from the total complex of the ``(b, b')``
bicomplex. The two must agree or :class:`RouteDisagreement` is raised.
"""

from itertools import product

from .budget import DEFAULT_BUDGET, DEFAULT_CAP, check_budget
from .homology import HomologyReport, complex_homology
from .linalg import RatMatrix

__all__ = [
    "RouteDisagreement",
    "ChainLevelComplex",
    "hochschild_boundary",
    "hochschild_bprime",
    "cyclic_operator",
    "norm_operator",
    "hochschild_homology",
    "hochschild_two_column_dims",
    "connes_lambda_complex",
    "cyclic_bicomplex_total",
    "lambda_descends",
    "lambda_homology_dims",
    "bicomplex_homology_dims",
    "cyclic_homology",
]


class RouteDisagreement(ArithmeticError):
    """Two independent constructions produced different homology."""


def _words(d, n):
    return product(range(d), repeat=n + 1)


def _faces(A, n, last_face):
    """Matrix of ``sum (-1)^i d_i`` on ``C_n``; the wrapping face is optional."""
    d = A.dim
    mult = A.mult
    size_out = d**n
    weights = [d ** (n - 1 - i) for i in range(n)]
    cols = {}
    for c, w in enumerate(_words(d, n)):
        col = {}
        for i in range(n):
            prod = mult[w[i]][w[i + 1]]
            if not prod:
                continue
            sign = -1 if i % 2 else 1
            # index of the word with positions i, i+1 merged into k
            base = 0
            for pos in range(i):
                base += w[pos] * weights[pos]
            for pos in range(i + 2, n + 1):
                base += w[pos] * weights[pos - 1]
            for k, v in prod.items():
                r = base + k * weights[i]
                y = col.get(r, 0) + sign * v
                if y:
                    col[r] = y
                else:
                    del col[r]
        if last_face:
            prod = mult[w[n]][w[0]]
            if prod:
                sign = -1 if n % 2 else 1
                base = 0
                for pos in range(1, n):
                    base += w[pos] * weights[pos]
                for k, v in prod.items():
                    r = base + k * weights[0]
                    y = col.get(r, 0) + sign * v
                    if y:
                        col[r] = y
                    else:
                        del col[r]
        if col:
            cols[c] = col
    return RatMatrix(size_out, d ** (n + 1), cols, _trusted=True)


def hochschild_boundary(A, n):
    """The Hochschild boundary ``b: C_n -> C_{n-1}``."""
    if n < 1:
        raise ValueError("hochschild_boundary needs n >= 1")
    return _faces(A, n, last_face=True)


def hochschild_bprime(A, n):
    """``b'``: the Hochschild boundary without the wrapping face."""
    if n < 1:
        raise ValueError("hochschild_bprime needs n >= 1")
    return _faces(A, n, last_face=False)


def _rotate_index(d, n, c):
    """Index of ``(a_n, a_0, ..., a_{n-1})`` given the index ``c`` of ``(a_0, ..., a_n)``."""
    last = c % d
    return last * d**n + c // d


def cyclic_operator(A, n):
    """``t(a_0 (x) ... (x) a_n) = (-1)^n a_n (x) a_0 (x) ... (x) a_{n-1}``."""
    d = A.dim
    size = d ** (n + 1)
    sign = -1 if n % 2 else 1
    cols = {c: {_rotate_index(d, n, c): sign} for c in range(size)}
    return RatMatrix(size, size, cols, _trusted=True)


def norm_operator(A, n):
    """``N = 1 + t + ... + t^n`` on ``C_n``."""
    d = A.dim
    size = d ** (n + 1)
    terms = _rotation_terms(d, n)
    cols = {}
    for c in range(size):
        col = {}
        for idx, v in terms(c):
            y = col.get(idx, 0) + v
            if y:
                col[idx] = y
            else:
                del col[idx]
        if col:
            cols[c] = col
    return RatMatrix(size, size, cols, _trusted=True)


def _space_sizes(A, top, budget):
    sizes = {}
    for n in range(top + 1):
        sizes[n] = A.dim ** (n + 1)
        check_budget(n, sizes[n], budget)
    return sizes


def hochschild_homology(A, cap=DEFAULT_CAP, budget=DEFAULT_BUDGET, representatives=False):
    """``HH_n(A)`` for ``0 <= n <= cap`` from the unnormalized b-complex."""
    sizes = _space_sizes(A, cap + 1, budget)
    return complex_homology(
        f"HH({A.label})", sizes, lambda n: hochschild_boundary(A, n), cap, representatives
    )


# -- Connes' complex -----------------------------------------------------------


class ChainLevelComplex:
    """A truncated chain complex: space dimensions and boundary matrices.

    ``boundaries[n]`` maps degree ``n`` to ``n - 1`` for ``1 <= n <= top``.
    """

    def __init__(self, label, degree_cap, spaces, boundaries):
        self.label = label
        self.degree_cap = degree_cap
        self.spaces = spaces
        self.boundaries = boundaries

    def check(self):
        for n in range(2, max(self.boundaries) + 1):
            if not (self.boundaries[n - 1] @ self.boundaries[n]).is_zero():
                return False
        return True

    def homology(self, representatives=False):
        return complex_homology(
            self.label,
            self.spaces,
            self.boundaries.__getitem__,
            self.degree_cap,
            representatives,
            check=False,
        )


def _orbits(d, n):
    """Classes of words under the signed cyclic action on ``C_n``.

    Returns ``(reps, where)``: ``reps`` lists the surviving orbit
    representatives (lexicographically least rotation) and ``where[c]`` is
    ``(orbit, sign)`` with ``[word c] = sign * [reps[orbit]]``; orbits that
    the sign kills map to ``(None, 0)``.
    """
    size = d ** (n + 1)
    step = -1 if n % 2 else 1
    where = [None] * size
    reps = []
    for c in range(size):
        if where[c] is not None:
            continue
        orbit = [c]
        idx = _rotate_index(d, n, c)
        while idx != c:
            orbit.append(idx)
            idx = _rotate_index(d, n, idx)
        period = len(orbit)
        # a full turn of the period multiplies the class by step**period
        killed = step == -1 and period % 2 == 1
        if killed:
            for idx in orbit:
                where[idx] = (None, 0)
            continue
        least = min(orbit)
        k0 = orbit.index(least)
        o = len(reps)
        reps.append(least)
        # orbit[k] = rot^k(c); [rot^k w] = step^k [w]
        for k, idx in enumerate(orbit):
            sign = step ** ((k - k0) % period)
            where[idx] = (o, sign)
    return reps, where


def connes_lambda_complex(A, cap=DEFAULT_CAP, budget=DEFAULT_BUDGET):
    """Connes' complex ``C_n / (1 - t)`` up to degree ``cap + 1``."""
    d = A.dim
    top = cap + 1
    _space_sizes(A, top, budget)
    orbit_data = {n: _orbits(d, n) for n in range(top + 1)}
    spaces = {n: len(orbit_data[n][0]) for n in orbit_data}
    boundaries = {}
    for n in range(1, top + 1):
        b = hochschild_boundary(A, n)
        reps, _ = orbit_data[n]
        _, where_low = orbit_data[n - 1]
        cols = {}
        for o, c in enumerate(reps):
            col = {}
            for r, v in b.column(c).items():
                target, sign = where_low[r]
                if target is None:
                    continue
                y = col.get(target, 0) + sign * v
                if y:
                    col[target] = y
                else:
                    del col[target]
            if col:
                cols[o] = col
        boundaries[n] = RatMatrix(spaces[n - 1], spaces[n], cols, _trusted=True)
    return ChainLevelComplex(f"HC({A.label})", cap, spaces, boundaries)


def lambda_descends(A, n):
    """Check that ``b`` is compatible with the projection to coinvariants.

    For every word ``w`` the projected images of ``b(w)`` and ``b(t w)`` must
    satisfy ``[b(t w)] = [b(w)]`` in ``C_{n-1} / (1 - t)``.
    """
    d = A.dim
    b = hochschild_boundary(A, n)
    _, where_low = _orbits(d, n - 1)
    sign = -1 if n % 2 else 1

    def project(vec):
        out = {}
        for r, v in vec.items():
            target, s = where_low[r]
            if target is not None:
                out[target] = out.get(target, 0) + s * v
        return {k: v for k, v in out.items() if v}

    for c in range(d ** (n + 1)):
        tw = {_rotate_index(d, n, c): sign}
        if project(b.apply_sparse(tw)) != project(b.column(c)):
            return False
    return True


def lambda_homology_dims(A, cap=DEFAULT_CAP, budget=DEFAULT_BUDGET):
    return connes_lambda_complex(A, cap, budget).homology().dims


# -- the (b, b') bicomplex -----------------------------------------------------


def _rotation_terms(d, n):
    """``c -> [(t^k c index, sign)]`` for ``k = 0..n``, the terms of ``N``."""
    sign = -1 if n % 2 else 1

    def terms(c):
        out, idx, s = [], c, 1
        for _ in range(n + 1):
            out.append((idx, s))
            idx = _rotate_index(d, n, idx)
            s *= sign
        return out

    return terms


def cyclic_bicomplex_total(A, cap=DEFAULT_CAP, budget=DEFAULT_BUDGET, columns=None):
    """Total complex of the cyclic bicomplex, degrees ``0..cap + 1``.

    Column ``p`` holds ``C_q`` in total degree ``p + q``. Even columns carry
    ``b``, odd columns ``-b'``; horizontal maps are ``1 - t`` out of odd
    columns and ``N`` out of even ones. ``columns`` keeps only the first few
    columns (two columns give a complex quasi-isomorphic to Hochschild's).
    """
    d = A.dim
    top = cap + 1
    sizes = _space_sizes(A, top, budget)
    ncols = top + 1 if columns is None else columns

    def blocks(n):
        offs, off = {}, 0
        for p in range(min(n, ncols - 1) + 1):
            offs[p] = off
            off += sizes[n - p]
        return offs, off

    layout = {n: blocks(n) for n in range(top + 1)}
    spaces = {n: layout[n][1] for n in layout}
    boundaries = {}
    for n in range(1, top + 1):
        src_off, _ = layout[n]
        dst_off, _ = layout[n - 1]
        cols = {}

        def add(col, r, v):
            y = col.get(r, 0) + v
            if y:
                col[r] = y
            else:
                del col[r]

        for p in src_off:
            q = n - p
            so = src_off[p]
            if q >= 1:
                vert = hochschild_boundary(A, q) if p % 2 == 0 else hochschild_bprime(A, q)
                scale = 1 if p % 2 == 0 else -1
                do = dst_off[p]
                for c, vcol in vert.columns():
                    col = cols.setdefault(so + c, {})
                    for r, v in vcol.items():
                        add(col, do + r, scale * v)
                del vert
            if p >= 1:
                do = dst_off[p - 1]
                sign = -1 if q % 2 else 1
                if p % 2 == 1:
                    # 1 - t
                    for c in range(sizes[q]):
                        col = cols.setdefault(so + c, {})
                        add(col, do + c, 1)
                        add(col, do + _rotate_index(d, q, c), -sign)
                else:
                    norm = _rotation_terms(d, q)
                    for c in range(sizes[q]):
                        col = cols.setdefault(so + c, {})
                        for r, v in norm(c):
                            add(col, do + r, v)
        cols = {c: col for c, col in cols.items() if col}
        boundaries[n] = RatMatrix(spaces[n - 1], spaces[n], cols, _trusted=True)
    return ChainLevelComplex(f"CC({A.label})", cap, spaces, boundaries)


def bicomplex_homology_dims(A, cap=DEFAULT_CAP, budget=DEFAULT_BUDGET):
    return cyclic_bicomplex_total(A, cap, budget).homology().dims


def hochschild_two_column_dims(A, cap=DEFAULT_CAP, budget=DEFAULT_BUDGET):
    """Hochschild homology from the first two columns of the cyclic bicomplex.

    The ``b'`` column is contractible for unital algebras, so this total
    complex has the same homology as the b-complex while sharing none of its
    matrices' shapes.
    """
    return cyclic_bicomplex_total(A, cap, budget, columns=2).homology().dims


def cyclic_homology(A, cap=DEFAULT_CAP, budget=DEFAULT_BUDGET, representatives=False):
    """``HC_n(A)`` for ``0 <= n <= cap``; both constructions must agree."""
    lam = connes_lambda_complex(A, cap, budget)
    report = lam.homology(representatives)
    other = bicomplex_homology_dims(A, cap, budget)
    if other != report.dims:
        raise RouteDisagreement(
            f"HC({A.label}): Connes complex gives {report.dims}, bicomplex gives {other}"
        )
    return report
