from math import comb

import pytest

from deloop.algebra import base_field, dual_numbers, group_algebra_cyclic, matrix_algebra
from deloop.hochschild import cyclic_homology
from deloop.lie import (
    ExteriorBasis,
    FinDimLieAlgebra,
    LieAlgebraError,
    TensorSquareBasis,
    _coproduct_matrix,
    abelian,
    ce_boundary,
    coproduct_terms,
    direct_sum,
    gl,
    lie_homology,
    primitive_dim,
    shuffle_coproduct,
    sl2,
    tensor_square_boundary,
)
from deloop.budget import SizeBudgetExceeded

LIES = [sl2(), gl(2), abelian(3), gl(1, matrix_algebra(base_field(), 2))]


def _label(g):
    return g.label


def test_bracket_of_two_vectors_is_the_boundary():
    g = sl2()
    d2 = ce_boundary(g, 2)
    basis = ExteriorBasis(3, 2)
    # d(e ^ f) = [e, f] = h
    col = d2.column(basis.index[(0, 2)])
    assert col == {1: 1}


@pytest.mark.parametrize("g", LIES, ids=_label)
def test_ce_boundary_squares_to_zero(g):
    for n in range(2, g.dim + 1):
        assert (ce_boundary(g, n - 1) @ ce_boundary(g, n)).is_zero()


def test_homology_examples():
    assert lie_homology(sl2(), 3).dims_tuple() == (1, 0, 0, 1)
    assert lie_homology(gl(2), 4).dims_tuple() == (1, 1, 0, 1, 1)
    assert lie_homology(abelian(4), 4).dims_tuple() == tuple(comb(4, n) for n in range(5))


def test_gl2_is_sl2_plus_line():
    # Kunneth: H(sl2 + Q) = (1,0,0,1) (x) (1,1)
    g = direct_sum(sl2(), abelian(1))
    assert lie_homology(g, 4).dims == lie_homology(gl(2), 4).dims


def test_second_boundary_rank_of_gl2():
    from deloop.linalg import rank

    assert rank(ce_boundary(gl(2), 2)) == 3


def _tensor_to_sum_index(g, n):
    """Send the tensor-square basis to the exterior basis of g + g."""
    d = g.dim
    dst = ExteriorBasis(2 * d, n)
    src = TensorSquareBasis(d, n)
    mapping = {}
    for left, right in src.pairs():
        mapping[src.index(left, right)] = dst.index[left + tuple(r + d for r in right)]
    return mapping


@pytest.mark.parametrize("g", LIES[:3], ids=_label)
def test_tensor_square_is_ce_of_direct_sum(g):
    gg = direct_sum(g, g)
    for n in range(1, 5):
        mine = tensor_square_boundary(g, n)
        ref = ce_boundary(gg, n)
        src = _tensor_to_sum_index(g, n)
        dst = _tensor_to_sum_index(g, n - 1)
        for c, col in mine.columns():
            assert {dst[r]: v for r, v in col.items()} == ref.column(src[c])
        assert mine.nnz == ref.nnz


def _wedge_right(chain, k):
    out = {}
    for t, v in chain.items():
        if k in t:
            continue
        bigger = sum(1 for x in t if x > k)
        key = tuple(sorted(t + (k,)))
        out[key] = out.get(key, 0) + (-1) ** bigger * v
    return {t: v for t, v in out.items() if v}


@pytest.mark.parametrize("d, n", [(3, 1), (3, 2), (3, 3), (4, 2), (4, 3), (4, 4)])
def test_coproduct_is_induced_by_the_diagonal(d, n):
    # x -> x + x' on generators, extended multiplicatively
    src = ExteriorBasis(d, n)
    delta = _coproduct_matrix(d, n)
    tsq = TensorSquareBasis(d, n)
    for c, x in enumerate(src.tuples):
        chain = {(): 1}
        for k in x:
            a = _wedge_right(chain, k)
            b = _wedge_right(chain, k + d)
            chain = {t: a.get(t, 0) + b.get(t, 0) for t in set(a) | set(b)}
            chain = {t: v for t, v in chain.items() if v}
        expected = {}
        for t, v in chain.items():
            left = tuple(i for i in t if i < d)
            right = tuple(i - d for i in t if i >= d)
            expected[tsq.index(left, right)] = v
        assert delta.column(c) == expected


@pytest.mark.parametrize("g", LIES[:3], ids=_label)
def test_coproduct_is_a_chain_map(g):
    for n in range(1, g.dim + 1):
        lhs = tensor_square_boundary(g, n) @ _coproduct_matrix(g.dim, n)
        rhs = _coproduct_matrix(g.dim, n - 1) @ ce_boundary(g, n)
        assert lhs == rhs


@pytest.mark.parametrize("x", [(0,), (0, 2), (0, 1, 3), (1, 2, 3, 4)])
def test_coproduct_is_coassociative(x):
    left, right = {}, {}
    for s, a, bc in coproduct_terms(x):
        for s2, b, c in coproduct_terms(bc):
            key = (a, b, c)
            right[key] = right.get(key, 0) + s * s2
    for s, ab, c in coproduct_terms(x):
        for s2, a, b in coproduct_terms(ab):
            key = (a, b, c)
            left[key] = left.get(key, 0) + s * s2
    assert left == right


def test_shuffle_coproduct_on_chain():
    g = abelian(2)
    out = shuffle_coproduct(g, 1, [1, 0])
    tsq = TensorSquareBasis(2, 1)
    assert out[tsq.index((), (0,))] == 1 and out[tsq.index((0,), ())] == 1
    with pytest.raises(ValueError):
        shuffle_coproduct(g, 1, [1, 0, 0])


def test_primitive_dims_of_gl2():
    g = gl(2)
    report = lie_homology(g, 4)
    assert tuple(primitive_dim(g, n, 4, report=report) for n in range(1, 5)) == (1, 0, 1, 0)


def test_primitive_dims_of_sl2_and_abelian():
    assert [primitive_dim(sl2(), n) for n in range(4)] == [0, 0, 0, 1]
    # in an exterior algebra only the generators are primitive
    assert [primitive_dim(abelian(3), n) for n in range(4)] == [0, 3, 0, 0]


def test_primitive_dim_rejects_degree_over_cap():
    with pytest.raises(ValueError):
        primitive_dim(sl2(), 4, cap=3)


@pytest.mark.parametrize("A", [base_field(), dual_numbers(), group_algebra_cyclic(2)], ids=lambda A: A.label)
@pytest.mark.parametrize("n", [2, 3])
def test_first_homology_of_gl_is_hc0(A, n):
    assert lie_homology(gl(n, A), 1, representatives=False).dims[1] == cyclic_homology(A, 0).dims[0]


def test_bad_brackets_rejected():
    with pytest.raises(LieAlgebraError):
        FinDimLieAlgebra(2, {(0, 1): {0: 1}})
    with pytest.raises(LieAlgebraError):
        FinDimLieAlgebra(1, {(0, 0): {0: 1}})
    # antisymmetric but [[x,y],z] + ... != 0
    br = {(0, 1): {2: 1}, (1, 0): {2: -1}, (1, 2): {1: 1}, (2, 1): {1: -1}}
    with pytest.raises(LieAlgebraError):
        FinDimLieAlgebra(3, br)


def test_lie_budget():
    with pytest.raises(SizeBudgetExceeded) as info:
        lie_homology(gl(3), 3, budget=50)
    assert info.value.degree == 3  # C(9, 3) = 84 is the first space over 50
