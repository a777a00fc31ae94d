# -*- coding: utf-8 -*-

"""Tests for exact linear algebra over GF(p).
"""

import pytest

from fractions import Fraction

import numpy as np

import exact_linalg as la
from utils import FieldError


def test_default_prime():
    assert la.field_prime() == la.DEFAULT_FIELD_PRIME == 31

def test_set_field_prime_rejects_composites():
    with pytest.raises(FieldError) as e:
        la.set_field_prime(15)
    assert e.value.error_state == 101
    with pytest.raises(FieldError):
        la.set_field_prime(True)
    assert la.field_prime() == 31

def test_active_field_restores_prime():
    with la.active_field(2):
        assert la.field_prime() == 2
        assert la.rank([[1, 1], [1, 1]]) == 1
    assert la.field_prime() == 31

def test_to_field_reduces_negative_entries():
    assert la.to_field([[-1, 32]]).tolist() == [[30, 1]]
    assert la.to_field([], rows=0, cols=3).shape == (0, 3)

def test_scalar_of_fraction():
    assert la.scalar(Fraction(1, 2)) == 16
    with pytest.raises(FieldError):
        la.scalar(Fraction(1, 31))

def test_rank_depends_on_field():
    m = [[1, 1], [1, -1]]
    assert la.rank(m) == 2
    with la.active_field(2):
        assert la.rank(m) == 1

def test_kernel_basis():
    m = la.to_field([[1, 2, 3], [2, 4, 6]])
    kernel = la.kernel_basis(m)
    assert kernel.shape == (3, 2)
    assert la.is_zero(la.matmul(m, kernel))
    assert la.rank(kernel) == 2

def test_kernel_of_map_to_zero_space():
    assert la.equal(la.kernel_basis(la.zeros(0, 2)), la.identity(2))

def test_solve_and_inverse():
    m = la.to_field([[2, 1], [1, 1]])
    x = la.solve(m, [3, 2])
    assert la.equal(la.matmul(m, x.reshape(-1, 1)), [[3], [2]])
    assert la.equal(la.matmul(m, la.inverse(m)), la.identity(2))
    assert la.solve([[1, 0], [0, 0]], [0, 1]) is None

def test_inverse_of_singular_matrix():
    with pytest.raises(FieldError) as e:
        la.inverse([[1, 2], [2, 4]])
    assert e.value.error_state == 103

def test_matmul_shape_mismatch():
    with pytest.raises(FieldError) as e:
        la.matmul(la.zeros(2, 3), la.zeros(2, 3))
    assert e.value.error_state == 102

def test_matmul_with_empty_inner_dimension():
    assert la.matmul(la.zeros(2, 0), la.zeros(0, 3)).shape == (2, 3)

def test_extend_to_basis():
    columns = la.to_field([[1], [1], [0]])
    added = la.extend_to_basis(columns, 3)
    assert added.shape == (3, 2)
    assert la.is_invertible(np.concatenate([columns, added], axis=1))

def test_column_space_basis_keeps_original_columns():
    m = la.to_field([[1, 2, 0], [0, 0, 1]])
    basis = la.column_space_basis(m)
    assert basis.tolist() == [[1, 0], [0, 1]]

def test_block_diagonal():
    b = la.block_diagonal([la.identity(1), la.zeros(0, 1), la.identity(2)])
    assert b.shape == (3, 4)
    assert b[0, 0] == 1 and b[1, 2] == 1 and b[2, 3] == 1
