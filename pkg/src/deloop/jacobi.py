"""Banded Z x Z matrices with eventually constant diagonals.

An operator is a finite sum of terms ``(d_m, m)``: the diagonal sequence
``d_m`` placed at offset ``m``, so that the matrix entry is
``a[i, j] = d_{i-j}(i)``. The row index feeds the sequence. Under this
convention ``T = shift_power(1)`` is multiplication by ``t`` (it sends the
basis vector ``t^j`` to ``t^(j+1)``) and ``P = projection_P()`` projects onto
the span of ``t^i`` with ``i >= 0``.

Each diagonal is a :class:`TailSequence`, constant to the left and to the
right of a finite window. Sums, products and shifts of such sequences are
again of that shape, so the operators form an algebra with exact canonical
forms. It contains the finite matrices, all shift powers and ``P``.
"""

import math
import random

from .algebra import AlgebraElement, base_field

__all__ = [
    "RingMismatch",
    "TraceClassError",
    "EVERYTHING",
    "NOTHING",
    "TailSequence",
    "JacobiOperator",
    "identity",
    "zero",
    "shift_power",
    "projection_P",
    "from_finite_matrix",
    "diagonal",
    "op_mul",
    "op_commutator",
    "apply",
    "in_Iplus",
    "in_Iminus",
    "in_I0",
    "split",
    "trace_I0",
    "cocycle",
    "cocycle_identity_check",
    "lattice_witness_forward",
    "lattice_witness_backward",
    "validate_lattice_witnesses",
    "truncate",
    "truncated_product",
    "random_operator",
    "random_finite_operator",
    "make_rng",
]

# lattice indices are plain ints; these stand for "the image lies in every
# lattice" (forward) and "every lattice maps into the target" (backward)
EVERYTHING = math.inf
NOTHING = -math.inf


class RingMismatch(ValueError):
    pass


class TraceClassError(ValueError):
    """The trace is only defined on finitely supported operators."""


_DEFAULT_RING = None


def _default_ring():
    global _DEFAULT_RING
    if _DEFAULT_RING is None:
        _DEFAULT_RING = base_field()
    return _DEFAULT_RING


def _same_ring(R, S):
    if R is not S and R != S:
        raise RingMismatch(f"operators over {R.label} and {S.label}")


def _coerce(ring, x):
    if isinstance(x, AlgebraElement):
        _same_ring(ring, x.parent)
        return x
    return ring.scalar(x)


class TailSequence:
    """A Z-indexed sequence in a ring, constant outside ``[start, start + len(window))``."""

    __slots__ = ("left", "start", "window", "right")

    def __init__(self, left, start, window, right):
        window = list(window)
        while window and window[0] == left:
            window.pop(0)
            start += 1
        while window and window[-1] == right:
            window.pop()
        if not window and left == right:
            start = 0
        self.left = left
        self.start = start
        self.window = tuple(window)
        self.right = right

    @classmethod
    def constant(cls, value):
        return cls(value, 0, (), value)

    @classmethod
    def from_values(cls, ring, values, left=None, right=None):
        """Sequence with the given finitely many values and the given tails."""
        zero = ring.zero()
        left = zero if left is None else _coerce(ring, left)
        right = zero if right is None else _coerce(ring, right)
        if not values:
            return cls(left, 0, (), right)
        lo, hi = min(values), max(values) + 1
        window = [_coerce(ring, values[i]) if i in values else zero for i in range(lo, hi)]
        return cls(left, lo, window, right)

    @property
    def ring(self):
        return self.left.parent

    @property
    def end(self):
        return self.start + len(self.window)

    def __call__(self, i):
        if i < self.start:
            return self.left
        if i >= self.end:
            return self.right
        return self.window[i - self.start]

    def is_zero(self):
        return not self.window and not self.left and not self.right

    def shifted(self, m):
        """The sequence ``i -> self(i - m)``."""
        return TailSequence(self.left, self.start + m, self.window, self.right)

    def combine(self, other, f):
        lo = min(self.start, other.start)
        hi = max(self.end, other.end)
        window = [f(self(i), other(i)) for i in range(lo, hi)]
        return TailSequence(f(self.left, other.left), lo, window, f(self.right, other.right))

    def map(self, f):
        return TailSequence(f(self.left), self.start, [f(x) for x in self.window], f(self.right))

    def __add__(self, other):
        return self.combine(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self.combine(other, lambda x, y: x - y)

    def __neg__(self):
        return self.map(lambda x: -x)

    def __mul__(self, other):
        """Pointwise product."""
        return self.combine(other, lambda x, y: x * y)

    def first_nonzero_from(self, i):
        """Least ``k >= i`` with ``self(k) != 0``, or None."""
        if i < self.start:
            if self.left:
                return i
            i = self.start
        for k in range(i, self.end):
            if self(k):
                return k
        if self.right:
            return max(i, self.end)
        return None

    def last_nonzero_before(self, i):
        """Greatest ``k < i`` with ``self(k) != 0``, or None."""
        if i > self.end:
            if self.right:
                return i - 1
            i = self.end
        for k in range(i - 1, self.start - 1, -1):
            if self(k):
                return k
        if self.left:
            return min(i, self.start) - 1
        return None

    def _key(self):
        return (
            self.left.coords,
            self.start,
            tuple(x.coords for x in self.window),
            self.right.coords,
        )

    def __eq__(self, other):
        if not isinstance(other, TailSequence):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        win = ", ".join(map(repr, self.window))
        return f"TailSequence({self.left!r} | {self.start}: [{win}] | {self.right!r})"


class JacobiOperator:
    """A finite sum of diagonals at integer offsets; see the module docstring."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None):
        self.ring = ring
        clean = {}
        for m, seq in (terms or {}).items():
            _same_ring(ring, seq.ring)
            if not seq.is_zero():
                clean[int(m)] = seq
        self.terms = dict(sorted(clean.items()))

    # -- entries -----------------------------------------------------------

    def entry(self, i, j):
        seq = self.terms.get(i - j)
        return seq(i) if seq is not None else self.ring.zero()

    @property
    def band_width(self):
        return max((abs(m) for m in self.terms), default=0)

    def is_zero(self):
        return not self.terms

    # -- algebra -----------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, JacobiOperator):
            raise TypeError(f"expected a JacobiOperator, got {type(other).__name__}")
        _same_ring(self.ring, other.ring)

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for m, seq in other.terms.items():
            terms[m] = terms[m] + seq if m in terms else seq
        return JacobiOperator(self.ring, terms)

    def __neg__(self):
        return JacobiOperator(self.ring, {m: -seq for m, seq in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, JacobiOperator):
            return op_mul(self, other)
        c = _coerce(self.ring, other)
        return JacobiOperator(self.ring, {m: s.map(lambda x: x * c) for m, s in self.terms.items()})

    def __rmul__(self, other):
        c = _coerce(self.ring, other)
        return JacobiOperator(self.ring, {m: s.map(lambda x: c * x) for m, s in self.terms.items()})

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers are not defined in general")
        out = identity(self.ring)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, JacobiOperator):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "JacobiOperator(0)"
        body = ", ".join(f"{m}: {s!r}" for m, s in self.terms.items())
        return f"JacobiOperator({{{body}}})"

    # method spellings of the module functions
    def apply(self, f):
        return apply(self, f)

    def truncate(self, N):
        return truncate(self, N)


# -- constructors -------------------------------------------------------------


def zero(ring=None):
    return JacobiOperator(ring or _default_ring())


def diagonal(seq, offset=0):
    return JacobiOperator(seq.ring, {offset: seq})


def identity(ring=None):
    return shift_power(0, ring)


def shift_power(k, ring=None):
    """``T^k``: the single diagonal of ones at offset ``k``."""
    ring = ring or _default_ring()
    return diagonal(TailSequence.constant(ring.one()), k)


def projection_P(ring=None):
    """Projection onto the indices ``i >= 0``."""
    ring = ring or _default_ring()
    return diagonal(TailSequence(ring.zero(), 0, (), ring.one()))


def from_finite_matrix(entries, ring=None):
    """Operator with the given finitely many entries ``{(i, j): value}``."""
    ring = ring or _default_ring()
    by_offset = {}
    for (i, j), v in entries.items():
        by_offset.setdefault(i - j, {})[i] = v
    terms = {m: TailSequence.from_values(ring, vals) for m, vals in by_offset.items()}
    return JacobiOperator(ring, terms)


# -- operations ---------------------------------------------------------------


def op_mul(a, b):
    """Matrix product: ``(d, m) * (e, n)`` contributes ``i -> d(i) e(i - m)`` at ``m + n``."""
    a._check(b)
    terms = {}
    for m, d in a.terms.items():
        for n, e in b.terms.items():
            seq = d * e.shifted(m)
            if seq.is_zero():
                continue
            k = m + n
            terms[k] = terms[k] + seq if k in terms else seq
    return JacobiOperator(a.ring, terms)


def op_commutator(a, b):
    return op_mul(a, b) - op_mul(b, a)


def apply(a, f):
    """Act on a finitely supported Laurent vector ``{i: coefficient}``."""
    ring = a.ring
    out = {}
    for k, fk in f.items():
        fk = _coerce(ring, fk)
        if not fk:
            continue
        for m, d in a.terms.items():
            v = d(k + m) * fk
            if v:
                i = k + m
                out[i] = out[i] + v if i in out else v
    return {i: v for i, v in sorted(out.items()) if v}


def in_Iplus(a):
    """Rows vanish far up: every diagonal has zero left tail."""
    return all(not seq.left for seq in a.terms.values())


def in_Iminus(a):
    """Columns vanish far right: every diagonal has zero right tail."""
    return all(not seq.right for seq in a.terms.values())


def in_I0(a):
    """Finitely many nonzero entries."""
    return in_Iplus(a) and in_Iminus(a)


def split(a):
    """``(P a, (1 - P) a)``: an ``I+`` part and an ``I-`` part summing to ``a``."""
    P = projection_P(a.ring)
    return op_mul(P, a), op_mul(identity(a.ring) - P, a)


def trace_I0(a):
    if not in_I0(a):
        raise TraceClassError("trace is only defined for finitely supported operators")
    seq = a.terms.get(0)
    total = a.ring.zero()
    if seq is not None:
        for x in seq.window:
            total = total + x
    return total


def cocycle(a, b):
    """``tr(P b (1-P) a P) - tr(P a (1-P) b P)`` modulo commutators of the ring."""
    a._check(b)
    ring = a.ring
    P = projection_P(ring)
    Q = identity(ring) - P
    first = trace_I0(P * b * Q * a * P)
    second = trace_I0(P * a * Q * b * P)
    return ring.reduce_mod_commutators(first - second)


def cocycle_identity_check(a, b, c):
    """Whether ``c([a,b], z) + c([b,z], a) + c([z,a], b)`` vanishes, with ``z = c``."""
    a._check(b)
    a._check(c)
    z = c
    total = (
        cocycle(op_commutator(a, b), z)
        + cocycle(op_commutator(b, z), a)
        + cocycle(op_commutator(z, a), b)
    )
    return a.ring.reduce_mod_commutators(total).is_zero()


# -- lattice boundedness ------------------------------------------------------


def lattice_witness_forward(a, n):
    """Largest ``n'`` with ``a(t^n R[[t]])`` inside ``t^n' R[[t]]``.

    Column ``k`` of ``a`` has its entries at rows ``k + m``, so the answer is
    the least row ``i >= n + m`` carrying a nonzero entry of some diagonal
    ``d_m``. Returns :data:`EVERYTHING` when the lattice is annihilated.
    """
    best = EVERYTHING
    for m, seq in a.terms.items():
        i = seq.first_nonzero_from(n + m)
        if i is not None and i < best:
            best = i
    return best


def lattice_witness_backward(a, m):
    """Least ``m'`` with ``a(t^m' R[[t]])`` inside ``t^m R[[t]]``.

    A column ``k`` is bad when some entry sits at a row ``< m``; the answer is
    one past the last bad column, or :data:`NOTHING` when no column is bad.
    """
    worst = NOTHING
    for off, seq in a.terms.items():
        i = seq.last_nonzero_before(m)
        if i is not None and i - off > worst:
            worst = i - off
    return worst + 1 if worst != NOTHING else NOTHING


def _boundaries(a):
    pts = [0]
    for seq in a.terms.values():
        pts += [seq.start, seq.end]
    return min(pts), max(pts)


def validate_lattice_witnesses(a, n, m, width=None):
    """Check both witnesses against ``apply`` on basis vectors.

    Columns are probed over a range wide enough to pass every tail boundary,
    which covers all behaviour of the operator. Returns a list of failure
    messages (empty when both witnesses are correct and optimal).
    """
    lo, hi = _boundaries(a)
    w = a.band_width
    if width is None:
        width = max(hi - min(n, m), 0) + 2 * w + 2
    one = a.ring.one()
    failures = []

    def column_rows(k):
        return [i for i in apply(a, {k: one})]

    fwd = lattice_witness_forward(a, n)
    rows_seen = []
    for k in range(n, n + width + 1):
        rows_seen += column_rows(k)
    if fwd == EVERYTHING:
        if rows_seen:
            failures.append(f"forward({n}): claims annihilation but column image is nonzero")
    else:
        if any(i < fwd for i in rows_seen):
            failures.append(f"forward({n}) = {fwd}: some image entry lies below it")
        if fwd not in rows_seen:
            failures.append(f"forward({n}) = {fwd}: not attained, so not maximal")

    bwd = lattice_witness_backward(a, m)
    start = bwd if bwd != NOTHING else lo - w - width
    for k in range(start, start + width + 1):
        if any(i < m for i in column_rows(k)):
            failures.append(f"backward({m}) = {bwd}: column {k} has an entry below {m}")
            break
    if bwd != NOTHING and not any(i < m for i in column_rows(bwd - 1)):
        failures.append(f"backward({m}) = {bwd}: column {bwd - 1} is fine, so not minimal")
    return failures


# -- truncation oracle --------------------------------------------------------


def truncate(a, N):
    """Entries ``a[i, j]`` for ``-N <= i, j <= N`` as a nested list."""
    return [[a.entry(i, j) for j in range(-N, N + 1)] for i in range(-N, N + 1)]


def truncated_product(x, y, ring):
    """Product of two square nested lists over ``ring``."""
    n = len(x)
    zero = ring.zero()
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = zero
            for k in range(n):
                if x[i][k] and y[k][j]:
                    acc = acc + x[i][k] * y[k][j]
            row.append(acc)
        out.append(row)
    return out


# -- random operators for property suites --------------------------------------


def _random_element(rng, ring, coeff):
    return ring.element([rng.randint(-coeff, coeff) for _ in range(ring.dim)])


def random_operator(rng, ring=None, band=3, lo=-4, hi=4, coeff=2, tail_prob=0.5, density=0.6):
    """A random operator with offsets in ``[-band, band]`` and windows inside ``[lo, hi]``.

    Each tail is nonzero with probability ``tail_prob`` so that all four
    ideal-membership combinations occur.
    """
    ring = ring or _default_ring()
    terms = {}
    for m in range(-band, band + 1):
        if rng.random() > density:
            continue
        left = _random_element(rng, ring, coeff) if rng.random() < tail_prob else ring.zero()
        right = _random_element(rng, ring, coeff) if rng.random() < tail_prob else ring.zero()
        s = rng.randint(lo, hi)
        e = rng.randint(s, hi)
        window = [_random_element(rng, ring, coeff) for _ in range(s, e + 1)]
        terms[m] = TailSequence(left, s, window, right)
    return JacobiOperator(ring, terms)


def random_finite_operator(rng, ring=None, band=3, lo=-4, hi=4, coeff=2):
    return random_operator(rng, ring, band, lo, hi, coeff, tail_prob=0.0, density=0.6)


def make_rng(seed):
    return random.Random(seed)
