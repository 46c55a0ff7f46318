from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from deloop.algebra import (
    AlgebraError,
    FinDimAlgebra,
    base_field,
    dual_numbers,
    group_algebra_cyclic,
    lie_of,
    matrix_algebra,
    truncated_poly,
)
from oracles import commutator_quotient_dim

TEST_ALGEBRAS = [
    base_field(),
    dual_numbers(),
    truncated_poly(3),
    group_algebra_cyclic(2),
    group_algebra_cyclic(3),
    matrix_algebra(base_field(), 2),
    matrix_algebra(dual_numbers(), 2),
]


@pytest.mark.parametrize("A", TEST_ALGEBRAS, ids=lambda A: A.label)
def test_constructed_algebras_are_unital_associative(A):
    A.check()
    one = A.one()
    for i in range(A.dim):
        e = A.basis(i)
        assert one * e == e == e * one


@pytest.mark.parametrize("A", TEST_ALGEBRAS, ids=lambda A: A.label)
def test_commutator_quotient_matches_brute_force(A):
    assert A.hc0_dim() == commutator_quotient_dim(A)
    assert A.commutator_dim() == A.dim - A.hc0_dim()


def test_known_quotients():
    assert matrix_algebra(base_field(), 3).hc0_dim() == 1
    assert group_algebra_cyclic(4).hc0_dim() == 4
    assert matrix_algebra(dual_numbers(), 2).hc0_dim() == 2


def test_bad_tables_rejected():
    # claimed unit (1, 0), but 1 * x = 0
    with pytest.raises(AlgebraError):
        FinDimAlgebra(2, {(0, 0): {0: 1}, (1, 1): {0: 1}}, (1, 0))
    # unital but (z y) y = z y = z while z (y y) = 0
    table = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (2, 2): {1: 1}, (0, 2): {2: 1}, (2, 0): {2: 1}, (2, 1): {2: 1}}
    with pytest.raises(AlgebraError):
        FinDimAlgebra(3, table, (1, 0, 0))
    with pytest.raises(AlgebraError):
        FinDimAlgebra(1, {(0, 1): {0: 1}}, (1,))


def test_elements_and_scalars():
    A = dual_numbers()
    eps = A.basis(1)
    assert (eps * eps).is_zero()
    x = A.element([Fraction(1, 2), 3])
    assert x * x == A.element([Fraction(1, 4), 3])
    assert 2 * x == x + x
    assert -x + x == A.zero()
    with pytest.raises(ValueError):
        x + base_field().one()


coords = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=3, max_size=3)


@given(coords, coords, coords)
def test_truncated_poly_ring_axioms(a, b, c):
    A = truncated_poly(3)
    x, y, z = A.element(a), A.element(b), A.element(c)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


def _matrix_entry_index(n, d, r, c, k):
    return (r * n + c) * d + k


def test_matrix_of_matrices_is_bigger_matrix_algebra():
    # M_n(M_m(A)) and M_nm(A) agree under the block reindexing
    A = dual_numbers()
    n, m = 2, 2
    d = A.dim
    outer = matrix_algebra(matrix_algebra(A, m), n)
    flat = matrix_algebra(A, n * m)
    inner_dim = m * m * d
    perm = {}
    for R, C, r, c, k in product(range(n), range(n), range(m), range(m), range(d)):
        src = (R * n + C) * inner_dim + (r * m + c) * d + k
        perm[src] = _matrix_entry_index(n * m, d, R * m + r, C * m + c, k)
    for i in range(outer.dim):
        for j in range(outer.dim):
            mapped = {perm[k]: v for k, v in outer.mult[i][j].items()}
            assert mapped == flat.mult[perm[i]][perm[j]]
    assert [outer.unit[i] for i in sorted(perm, key=perm.get)] == list(flat.unit)


def test_lie_of_commutative_is_abelian():
    assert lie_of(group_algebra_cyclic(3)).is_abelian()
    assert not lie_of(matrix_algebra(base_field(), 2)).is_abelian()


def test_reduce_mod_commutators_is_canonical():
    M = matrix_algebra(base_field(), 2)
    e00, e11 = M.basis(0), M.basis(3)
    # E00 - E11 = [E01, E10] is a commutator, so E00 and E11 have the same class
    assert M.reduce_mod_commutators(e00) == M.reduce_mod_commutators(e11)
    assert M.reduce_mod_commutators(M.basis(1)).is_zero()
    assert not M.reduce_mod_commutators(M.one()).is_zero()
