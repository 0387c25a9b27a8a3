"""Subshift matrix invariants against brute-force and permutation oracles."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lyagraph.invariants import (
    invariant_report,
    is_irreducible,
    is_permutation,
    k_invariant,
)
from lyagraph.linalg import IntMatrix, f2_rank, mod2_reduce


def mat(rows):
    return IntMatrix.from_rows(rows)


def kernel_count_brute(a: IntMatrix) -> int:
    """Count solutions of (I - A) x = 0 over GF(2) by full enumeration."""
    m = mod2_reduce(IntMatrix.identity(a.rows) - a)
    count = 0
    for x in range(1 << m.cols):
        if all((r & x).bit_count() % 2 == 0 for r in m.row_bits):
            count += 1
    return count


def permutation_matrix(perm: list[int]) -> IntMatrix:
    n = len(perm)
    return IntMatrix(n, n, tuple(
        1 if perm[i] == j else 0 for i in range(n) for j in range(n)))


def cycle_count(perm: list[int]) -> int:
    seen = [False] * len(perm)
    cycles = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycles += 1
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
    return cycles


nonneg_matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(0, 4), min_size=n, max_size=n),
        min_size=n, max_size=n,
    )
)


# ---------------------------------------------------------------------------
# k_invariant
# ---------------------------------------------------------------------------

def test_k_invariant_examples():
    assert k_invariant(mat([[1]])) == 1        # saddle orbit
    assert k_invariant(mat([[2]])) == 0
    assert k_invariant(mat([[1, 1], [1, 1]])) == 0
    assert k_invariant(mat([[1, 0], [0, 1]])) == 2


def test_k_invariant_rejects_bad_input():
    with pytest.raises(ValueError):
        k_invariant(mat([[1, 0]]))
    with pytest.raises(ValueError):
        k_invariant(mat([[-1]]))


@settings(max_examples=200, deadline=None)
@given(nonneg_matrices)
def test_k_invariant_transpose_invariant(rows):
    a = mat(rows)
    assert k_invariant(a) == k_invariant(a.transpose())


@settings(max_examples=200, deadline=None)
@given(nonneg_matrices)
def test_k_invariant_matches_brute_force(rows):
    a = mat(rows)
    assert 2 ** k_invariant(a) == kernel_count_brute(a)


def test_k_invariant_of_permutation_counts_cycles():
    rng = random.Random(20240817)
    for _ in range(100):
        n = rng.randint(1, 8)
        perm = list(range(n))
        rng.shuffle(perm)
        p = permutation_matrix(perm)
        k = k_invariant(p)
        assert k == cycle_count(perm)
        assert 2 ** k == kernel_count_brute(p)


# ---------------------------------------------------------------------------
# irreducibility / permutation predicates
# ---------------------------------------------------------------------------

def test_is_irreducible_examples():
    assert is_irreducible(mat([[1]]))
    assert not is_irreducible(mat([[1, 0], [0, 1]]))
    assert is_irreducible(mat([[0, 1], [1, 0]]))


def test_is_irreducible_larger():
    assert is_irreducible(mat([[0, 1, 0], [0, 0, 1], [1, 0, 0]]))
    assert not is_irreducible(mat([[1, 1, 0], [0, 1, 1], [0, 0, 1]]))


def test_is_permutation_examples():
    assert is_permutation(IntMatrix.identity(3))
    assert is_permutation(mat([[0, 1], [1, 0]]))
    assert not is_permutation(mat([[1, 1], [0, 1]]))
    assert not is_permutation(mat([[2, 0], [0, 1]]))
    assert not is_permutation(mat([[0, 0], [1, 1]]))


# ---------------------------------------------------------------------------
# invariant_report
# ---------------------------------------------------------------------------

def test_invariant_report_single_two():
    r = invariant_report(mat([[2]]))
    assert (r.k, r.irreducible, r.permutation) == (0, True, False)
    assert r.parry_sullivan == 1
    assert r.bowen_franks == (1,)


def test_invariant_report_identity_two():
    r = invariant_report(mat([[1, 0], [0, 1]]))
    assert (r.k, r.irreducible, r.permutation) == (2, False, True)
    assert r.parry_sullivan == 0
    assert r.bowen_franks == (0, 0)


def test_invariant_report_full_two():
    r = invariant_report(mat([[1, 1], [1, 1]]))
    assert (r.k, r.irreducible) == (0, True)
    assert r.parry_sullivan == 1


@settings(max_examples=200, deadline=None)
@given(nonneg_matrices)
def test_report_k_equals_even_factor_count(rows):
    r = invariant_report(mat(rows))
    assert r.k == sum(1 for d in r.bowen_franks if d % 2 == 0)


@settings(max_examples=100, deadline=None)
@given(nonneg_matrices, st.randoms(use_true_random=False))
def test_flow_invariants_stable_under_conjugation(rows, rng):
    a = mat(rows)
    n = a.rows
    perm = list(range(n))
    rng.shuffle(perm)
    conj = IntMatrix(n, n, tuple(
        a.at(perm[i], perm[j]) for i in range(n) for j in range(n)))
    ra, rc = invariant_report(a), invariant_report(conj)
    assert ra.parry_sullivan == rc.parry_sullivan
    assert ra.bowen_franks == rc.bowen_franks
    assert ra.k == rc.k


def test_rank_kernel_consistency_on_defaults():
    # every default-pool matrix: rank of I-A mod 2 plus k is the size
    for rows in ([[1]], [[2]], [[1, 1], [1, 1]], [[1, 0], [0, 1]]):
        a = mat(rows)
        m = mod2_reduce(IntMatrix.identity(a.rows) - a)
        assert f2_rank(m) + k_invariant(a) == a.rows
