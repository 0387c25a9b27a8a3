"""Invariants of nonnegative integer matrices labeling suspended subshifts.

The central quantity is the mod-2 kernel dimension of I - A, which counts
the even invariant factors of I - A and controls how many boundary surfaces
a basic block for the suspension can carry.  The Bowen-Franks factors and
the Parry-Sullivan magnitude |det(I - A)| are flow-equivalence invariants
kept as cross-checks; irreducibility and permutation status are reported as
informational flags only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import IntMatrix, det_abs, f2_kernel_dim, mod2_reduce, smith_normal_form


@dataclass(frozen=True)
class MatrixInvariantReport:
    k: int
    irreducible: bool
    permutation: bool
    parry_sullivan: int
    bowen_franks: tuple[int, ...]


def _require_sft_matrix(a: IntMatrix) -> None:
    if not a.is_square:
        raise ValueError("subshift matrix must be square")
    if any(e < 0 for e in a.entries):
        raise ValueError("subshift matrix entries must be nonnegative")


def k_invariant(a: IntMatrix) -> int:
    """Dimension over GF(2) of the kernel of I - A reduced mod 2."""
    _require_sft_matrix(a)
    return f2_kernel_dim(mod2_reduce(IntMatrix.identity(a.rows) - a))


def is_irreducible(a: IntMatrix) -> bool:
    """True when the digraph with an arc i -> j whenever a[i][j] > 0 is strongly connected.

    A 1x1 matrix is trivially strongly connected, loop or not.
    """
    _require_sft_matrix(a)
    n = a.rows
    forward = _reachable(a, transpose=False)
    backward = _reachable(a, transpose=True)
    return all(forward) and all(backward)


def _reachable(a: IntMatrix, transpose: bool) -> list[bool]:
    n = a.rows
    seen = [False] * n
    seen[0] = True
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            hit = a.at(j, i) if transpose else a.at(i, j)
            if hit > 0 and not seen[j]:
                seen[j] = True
                stack.append(j)
    return seen


def is_permutation(a: IntMatrix) -> bool:
    """True when every row and every column has exactly one 1 and the rest 0."""
    if not a.is_square:
        raise ValueError("permutation test requires a square matrix")
    n = a.rows
    col_ones = [0] * n
    for i in range(n):
        row_ones = 0
        for j in range(n):
            e = a.at(i, j)
            if e == 1:
                row_ones += 1
                col_ones[j] += 1
            elif e != 0:
                return False
        if row_ones != 1:
            return False
    return all(c == 1 for c in col_ones)


def invariant_report(a: IntMatrix) -> MatrixInvariantReport:
    """All invariants of one subshift matrix, with internal consistency checked."""
    _require_sft_matrix(a)
    k = k_invariant(a)
    delta = IntMatrix.identity(a.rows) - a
    factors = smith_normal_form(delta).invariant_factors
    even = sum(1 for d in factors if d % 2 == 0)
    assert k == even, f"kernel dimension {k} disagrees with even factor count {even}"
    return MatrixInvariantReport(
        k=k,
        irreducible=is_irreducible(a),
        permutation=is_permutation(a),
        parry_sullivan=det_abs(delta),
        bowen_franks=factors,
    )
