# -*- coding: utf-8 -*-

# ==============================================================================
#   pmdist, ver. 1.0
#   Exact algebraic Wasserstein distances for persistence modules
#   This software is licensed under the terms of the MIT License.
# ==============================================================================

"""Exact dense linear algebra over the prime field GF(p).

Matrices are numpy int64 arrays with entries in 0..p-1. Every function
returns a fresh array and reduces its result mod p. The active prime is a
module-level setting (default 31) that is changed with set_field_prime()
when the configuration or the command line asks for another field.
Products of two residues must fit into int64 when summed over a few
thousand terms, which is why the prime is limited to MAX_FIELD_PRIME.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from utils import FieldError


DEFAULT_FIELD_PRIME = 31
MAX_FIELD_PRIME = 2**24

_field_prime = DEFAULT_FIELD_PRIME


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True

def set_field_prime(p):
    """Set the characteristic of the active field."""
    global _field_prime
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
        raise FieldError(f'modulus must be an integer, got {p!r}')
    p = int(p)
    if not (2 <= p < MAX_FIELD_PRIME) or not is_prime(p):
        raise FieldError(f'{p} is not a prime in [2, {MAX_FIELD_PRIME})')
    _field_prime = p

def field_prime():
    return _field_prime


class active_field:
    """Context manager that temporarily switches the active field, e.g.
    with active_field(2): ...
    """

    def __init__(self, p):
        self.p = p
        self.previous = None

    def __enter__(self):
        self.previous = _field_prime
        set_field_prime(self.p)
        return self

    def __exit__(self, *args):
        set_field_prime(self.previous)
        return False


@dataclass(frozen=True)
class RowReduceResult:
    matrix: np.ndarray
    rank: int
    pivots: Tuple[int, ...]


def to_field(matrix, rows=None, cols=None):
    """Convert nested lists or an integer array into a matrix over the active
    field. Negative entries are reduced mod p. Empty inputs need explicit
    rows/cols to fix the shape.
    """
    mat = np.array(matrix, dtype=np.int64)
    if mat.size == 0:
        r = rows if rows is not None else (mat.shape[0] if mat.ndim == 2 else 0)
        c = cols if cols is not None else (mat.shape[1] if mat.ndim == 2 else 0)
        return np.zeros((r, c), dtype=np.int64)
    if mat.ndim == 1:
        mat = mat.reshape(-1, 1)
    if mat.ndim != 2:
        raise FieldError('matrix must be two-dimensional', 102)
    if ((rows is not None and mat.shape[0] != rows)
            or (cols is not None and mat.shape[1] != cols)):
        raise FieldError(
            f'expected shape ({rows}, {cols}), got {mat.shape}', 102)
    return mat % _field_prime

def zeros(rows, cols):
    return np.zeros((rows, cols), dtype=np.int64)

def identity(n):
    return np.eye(n, dtype=np.int64)

def scalar(value):
    """Reduce an integer or Fraction to a residue of the active field."""
    p = _field_prime
    numerator = getattr(value, 'numerator', value)
    denominator = getattr(value, 'denominator', 1)
    if denominator % p == 0:
        raise FieldError(f'{value} has no residue mod {p}', 103)
    return (int(numerator) * pow(int(denominator), -1, p)) % p

def inverse_scalar(value):
    value = int(value) % _field_prime
    if value == 0:
        raise FieldError('zero has no inverse', 103)
    return pow(value, -1, _field_prime)

def is_zero(matrix):
    return not np.any(np.asarray(matrix) % _field_prime)

def matmul(a, b):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[1] != b.shape[0]:
        raise FieldError(f'cannot multiply {a.shape} by {b.shape}', 102)
    if a.shape[1] == 0:
        return zeros(a.shape[0], b.shape[1])
    return (a @ b) % _field_prime

def matmul_chain(*mats):
    result = mats[0]
    for mat in mats[1:]:
        result = matmul(result, mat)
    return result

def equal(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    return a.shape == b.shape and not np.any((a - b) % _field_prime)

def row_reduce(matrix):
    """Reduced row echelon form with pivot columns."""
    p = _field_prime
    mat = to_field(matrix).copy()
    m, n = mat.shape
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nonzero = np.nonzero(mat[row:, col])[0]
        if nonzero.size == 0:
            continue
        pivot = row + int(nonzero[0])
        if pivot != row:
            mat[[row, pivot]] = mat[[pivot, row]]
        mat[row] = (mat[row] * inverse_scalar(mat[row, col])) % p
        factors = mat[:, col].copy()
        factors[row] = 0
        mat = (mat - np.outer(factors, mat[row])) % p
        pivots.append(col)
        row += 1
    return RowReduceResult(matrix=mat, rank=len(pivots), pivots=tuple(pivots))

def rank(matrix):
    mat = np.asarray(matrix)
    if mat.size == 0:
        return 0
    return row_reduce(mat).rank

def kernel_basis(matrix):
    """Columns form a basis of the null space of matrix."""
    mat = np.asarray(matrix)
    n = mat.shape[1]
    if mat.shape[0] == 0:
        return identity(n)
    reduced = row_reduce(mat)
    pivot_set = set(reduced.pivots)
    free_cols = [c for c in range(n) if c not in pivot_set]
    basis = zeros(n, len(free_cols))
    for k, free in enumerate(free_cols):
        basis[free, k] = 1
        for row, col in enumerate(reduced.pivots):
            basis[col, k] = (-reduced.matrix[row, free]) % _field_prime
    return basis

def column_space_basis(matrix):
    """Linearly independent columns spanning the column space (a subset of
    the columns of matrix, in their original order)."""
    mat = to_field(matrix)
    if mat.size == 0:
        return zeros(mat.shape[0], 0)
    reduced = row_reduce(mat)
    return mat[:, list(reduced.pivots)]

def solve_matrix(matrix, rhs):
    """Solve matrix @ x = rhs for a matrix of right-hand sides. Returns one
    solution or None if the system is inconsistent."""
    mat = to_field(matrix)
    rhs = np.asarray(rhs, dtype=np.int64)
    if rhs.ndim == 1:
        rhs = rhs.reshape(-1, 1)
    if rhs.shape[0] != mat.shape[0]:
        raise FieldError(f'right-hand side has {rhs.shape[0]} rows, '
                         f'matrix has {mat.shape[0]}', 102)
    m, n = mat.shape
    k = rhs.shape[1]
    if m == 0:
        return zeros(n, k)
    augmented = np.concatenate([mat, rhs % _field_prime], axis=1)
    reduced = row_reduce(augmented)
    if any(col >= n for col in reduced.pivots):
        return None
    solution = zeros(n, k)
    for row, col in enumerate(reduced.pivots):
        solution[col] = reduced.matrix[row, n:]
    return solution

def solve(matrix, b):
    """Solve matrix @ x = b for a single column b; None if inconsistent."""
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    solution = solve_matrix(matrix, b.reshape(-1, 1))
    if solution is None:
        return None
    return solution[:, 0]

def inverse(matrix):
    mat = to_field(matrix)
    if mat.shape[0] != mat.shape[1]:
        raise FieldError(f'cannot invert a {mat.shape} matrix', 102)
    solution = solve_matrix(mat, identity(mat.shape[0]))
    if solution is None:
        raise FieldError('matrix is singular', 103)
    return solution

def is_invertible(matrix):
    mat = np.asarray(matrix)
    return mat.shape[0] == mat.shape[1] and rank(mat) == mat.shape[0]

def extend_to_basis(columns, dim):
    """Extend linearly independent columns (dim x k) to a basis of K^dim by
    adding standard basis vectors. Returns the added columns."""
    current = to_field(columns, rows=dim)
    added = []
    r = rank(current)
    for i in range(dim):
        if r == dim:
            break
        e = zeros(dim, 1)
        e[i, 0] = 1
        candidate = np.concatenate([current, e], axis=1)
        if rank(candidate) > r:
            current = candidate
            added.append(e)
            r += 1
    if not added:
        return zeros(dim, 0)
    return np.concatenate(added, axis=1)

def block_diagonal(blocks):
    """Block diagonal matrix of the given (possibly empty) blocks."""
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    result = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        result[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return result

def random_matrix(rng, rows, cols):
    return rng.integers(0, _field_prime, size=(rows, cols), dtype=np.int64)
