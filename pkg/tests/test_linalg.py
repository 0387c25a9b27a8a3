"""Exact linear algebra: frozen examples plus brute-force and sympy oracles."""

from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lyagraph.linalg import (
    F2Matrix,
    IntMatrix,
    SmithForm,
    det_abs,
    f2_kernel_dim,
    f2_rank,
    mod2_reduce,
    smith_normal_form,
)


# ---------------------------------------------------------------------------
# Independent oracles
# ---------------------------------------------------------------------------

def rank_by_span_enumeration(rows: list[list[int]]) -> int:
    """GF(2) rank as log2 of the row-span size, by enumerating all row sums."""
    span = {0}
    for row in rows:
        packed = 0
        for j, e in enumerate(row):
            packed |= (e & 1) << j
        span |= {v ^ packed for v in span}
    size = len(span)
    assert size & (size - 1) == 0
    return size.bit_length() - 1


def kernel_count_brute(m: F2Matrix) -> int:
    """Number of vectors x over GF(2) with m @ x = 0, by full enumeration."""
    n = m.cols
    count = 0
    for x in range(1 << n):
        if all((r & x).bit_count() % 2 == 0 for r in m.row_bits):
            count += 1
    return count


def det_by_cofactor(rows: list[list[int]]) -> int:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * det_by_cofactor(minor)
    return total


def sympy_invariant_factors(rows: list[list[int]]) -> tuple[int, ...]:
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf

    diag = sympy_snf(Matrix(rows), domain=ZZ)
    n = min(len(rows), len(rows[0]))
    factors = [abs(int(diag[i, i])) for i in range(min(diag.rows, diag.cols))]
    factors += [0] * (n - len(factors))
    nonzero = [d for d in factors if d]
    return tuple(nonzero + [0] * (n - len(nonzero)))


square_int_matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(-9, 9), min_size=n, max_size=n),
        min_size=n, max_size=n,
    )
)


# ---------------------------------------------------------------------------
# IntMatrix / F2Matrix basics
# ---------------------------------------------------------------------------

def test_int_matrix_shape_validation():
    with pytest.raises(ValueError):
        IntMatrix(2, 2, (1, 2, 3))
    with pytest.raises(ValueError):
        IntMatrix(0, 1, ())
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2], [3]])


def test_int_matrix_transpose_and_sub():
    a = IntMatrix.from_rows([[1, 2], [0, 1]])
    assert a.transpose().to_rows() == [[1, 0], [2, 1]]
    i = IntMatrix.identity(2)
    assert (i - a).to_rows() == [[0, -2], [0, 0]]


def test_f2_matrix_rejects_non_binary():
    with pytest.raises(ValueError):
        F2Matrix.from_rows([[0, 2]])


def test_mod2_reduce_examples():
    assert mod2_reduce(IntMatrix.from_rows([[2]])).to_rows() == [[0]]
    assert mod2_reduce(IntMatrix.from_rows([[1, 2], [3, 4]])).to_rows() == [[1, 0], [1, 0]]
    for n in (1, 2, 5):
        assert mod2_reduce(IntMatrix.identity(n)).to_rows() == IntMatrix.identity(n).to_rows()


def test_mod2_reduce_negative_entries():
    assert mod2_reduce(IntMatrix.from_rows([[-1, -2], [-3, 4]])).to_rows() == [[1, 0], [1, 0]]


# ---------------------------------------------------------------------------
# Rank and kernel
# ---------------------------------------------------------------------------

def test_f2_rank_examples():
    assert f2_rank(F2Matrix.from_rows([[0] * 3] * 3)) == 0
    assert f2_rank(mod2_reduce(IntMatrix.identity(4))) == 4
    swap = [[0, 1], [1, 0]]
    assert rank_by_span_enumeration(swap) == 2
    assert f2_rank(F2Matrix.from_rows(swap)) == 2


def test_f2_kernel_dim_examples():
    assert f2_kernel_dim(F2Matrix.from_rows([[0]])) == 1
    assert f2_kernel_dim(mod2_reduce(IntMatrix.identity(3))) == 0
    swap = F2Matrix.from_rows([[0, 1], [1, 0]])
    assert kernel_count_brute(swap) == 1
    assert f2_kernel_dim(swap) == 0


def test_f2_kernel_dim_requires_square():
    with pytest.raises(ValueError):
        f2_kernel_dim(F2Matrix.from_rows([[1, 0, 1]]))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 12), st.data())
def test_kernel_dim_matches_brute_force(n, data):
    rows = data.draw(st.lists(
        st.lists(st.integers(0, 1), min_size=n, max_size=n),
        min_size=n, max_size=n))
    m = F2Matrix.from_rows(rows)
    assert 2 ** f2_kernel_dim(m) == kernel_count_brute(m)


@settings(max_examples=200, deadline=None)
@given(square_int_matrices)
def test_rank_is_transpose_invariant(rows):
    m = mod2_reduce(IntMatrix.from_rows(rows))
    assert f2_rank(m) == f2_rank(m.transpose())


@settings(max_examples=200, deadline=None)
@given(square_int_matrices)
def test_rank_plus_kernel_is_cols(rows):
    m = mod2_reduce(IntMatrix.from_rows(rows))
    assert f2_rank(m) + f2_kernel_dim(m) == m.cols


# ---------------------------------------------------------------------------
# Smith normal form and determinant
# ---------------------------------------------------------------------------

def test_smith_form_examples():
    assert smith_normal_form(IntMatrix.identity(2)).invariant_factors == (1, 1)
    assert smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 2]])).invariant_factors == (2, 2)
    assert smith_normal_form(IntMatrix.from_rows([[0, 1], [1, 0]])).invariant_factors == (1, 1)


def test_smith_form_zero_and_rectangular():
    assert smith_normal_form(IntMatrix.from_rows([[0, 0], [0, 0]])).invariant_factors == (0, 0)
    assert smith_normal_form(IntMatrix.from_rows([[2, 4, 6]])).invariant_factors == (2,)
    assert smith_normal_form(IntMatrix.from_rows([[3], [6]])).invariant_factors == (3,)


def test_smith_form_type_rejects_bad_chains():
    with pytest.raises(ValueError):
        SmithForm((2, 3))
    with pytest.raises(ValueError):
        SmithForm((0, 2))
    with pytest.raises(ValueError):
        SmithForm((-1,))


def test_det_abs_examples():
    for n in (1, 3, 6):
        assert det_abs(IntMatrix.identity(n)) == 1
    assert det_abs(IntMatrix.from_rows([[0, 1], [1, 0]])) == 1
    assert det_abs(IntMatrix.from_rows([[1, 2], [3, 4]])) == 2


def test_det_abs_requires_square():
    with pytest.raises(ValueError):
        det_abs(IntMatrix.from_rows([[1, 2]]))


@settings(max_examples=150, deadline=None)
@given(square_int_matrices)
def test_smith_form_matches_sympy(rows):
    ours = smith_normal_form(IntMatrix.from_rows(rows)).invariant_factors
    assert ours == sympy_invariant_factors(rows)


@settings(max_examples=150, deadline=None)
@given(square_int_matrices)
def test_det_abs_matches_cofactor_and_factors(rows):
    a = IntMatrix.from_rows(rows)
    expected = abs(det_by_cofactor(rows))
    assert det_abs(a) == expected
    factors = smith_normal_form(a).invariant_factors
    if expected:
        assert all(factors)
        assert prod(factors) == expected
    else:
        assert 0 in factors


@settings(max_examples=150, deadline=None)
@given(square_int_matrices)
def test_odd_factor_count_is_mod2_rank(rows):
    a = IntMatrix.from_rows(rows)
    factors = smith_normal_form(a).invariant_factors
    odd = sum(1 for d in factors if d % 2 == 1)
    assert odd == f2_rank(mod2_reduce(a))
