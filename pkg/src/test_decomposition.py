# -*- coding: utf-8 -*-

"""Tests for interval decomposition, coherent bases and change of basis.
"""

import pytest

import numpy as np

import exact_linalg as la
import persistence_module as pm
import random_instances as ri
from decomposition import (IntervalMorphism, canonical_map, change_basis,
                           coherent_decomposition, decompose,
                           decompose_morphism, hom_dim, interval_module,
                           module_from_barcode, segment_rank,
                           to_interval_coordinates)
from index_poset import Barcode, GridPoset, Interval, LinearPoset
from utils import DecompositionError, PosetError


@pytest.fixture
def line():
    return LinearPoset.integer(6)

@pytest.fixture
def zigzag_poset():
    return LinearPoset.integer(5, 'ffbb')

@pytest.fixture
def rng():
    return np.random.default_rng(2024)


def test_hom_dim_on_ordered_poset(line):
    # I -> J is nonzero iff J starts no later and ends no later than I,
    # and the two overlap
    assert hom_dim(Interval(line, 1, 4), Interval(line, 0, 2)) == 1
    assert hom_dim(Interval(line, 0, 2), Interval(line, 1, 4)) == 0
    assert hom_dim(Interval(line, 0, 1), Interval(line, 3, 4)) == 0
    assert hom_dim(Interval(line, 2, 3), Interval(line, 2, 3)) == 1

def test_hom_dim_on_zigzag_poset(zigzag_poset):
    l = Interval(zigzag_poset, 0, 4)
    m = Interval(zigzag_poset, 0, 2)
    n = Interval(zigzag_poset, 2, 4)
    assert hom_dim(m, l) == 1
    assert hom_dim(n, l) == 1
    assert hom_dim(l, m) == 0
    assert hom_dim(l, n) == 0


def naturality_hom_dim(i, j):
    """Nullity of the naturality equations for one scalar per point of the
    overlap of I and J."""
    overlap = [k for k in i.poset.points() if i.contains(k) and j.contains(k)]
    if not overlap:
        return 0
    column = {k: c for c, k in enumerate(overlap)}
    rows = []
    for a, b in i.poset.arrows():
        if not (i.contains(a) and j.contains(b)):
            continue
        row = [0] * len(overlap)
        if a in column:
            row[column[a]] += 1
        if b in column:
            row[column[b]] -= 1
        rows.append(row)
    equations = np.array(rows, dtype=np.int64).reshape(-1, len(overlap))
    return len(overlap) - la.rank(equations % la.field_prime())

@pytest.mark.parametrize('n', range(1, 7))
def test_hom_dim_solves_the_naturality_equations(n):
    for orientations in ri.all_orientations(n):
        poset = LinearPoset.integer(n, orientations)
        intervals = [Interval(poset, lo, hi) for lo in poset.points()
                     for hi in range(lo, n)]
        for i in intervals:
            for j in intervals:
                assert hom_dim(i, j) == naturality_hom_dim(i, j), \
                    (orientations, i.label(), j.label())

def test_canonical_map(line):
    f = canonical_map(Interval(line, 1, 4), Interval(line, 0, 2))
    assert f.ranks() == (0, 1, 1, 0, 0, 0)
    assert canonical_map(Interval(line, 0, 2), Interval(line, 1, 4)).is_zero()

def test_reduction_recovers_a_disguised_barcode(line, rng):
    barcode = Barcode(line, [Interval(line, 0, 5), Interval(line, 1, 3),
                             Interval(line, 1, 3), Interval(line, 2, 4)])
    m = ri.disguised_module(rng, barcode)
    found, basis = coherent_decomposition(m)
    assert found == barcode
    assert basis.validate(m)

def test_segment_ranks_agree_with_reduction(line, rng):
    for _ in range(10):
        m = ri.random_module(rng, line, 3)
        assert decompose(m, 'segment') == decompose(m, 'reduction')

def test_zigzag_module_decomposes_by_segment_ranks(zigzag_poset):
    # M + N written out as matrices: basis (M, N) at the middle point
    maps = {(0, 1): [[1]], (1, 2): [[1], [0]], (3, 2): [[0], [1]],
            (4, 3): [[1]]}
    m = pm.PersistenceModule(zigzag_poset, [1, 1, 2, 1, 1], maps)
    assert decompose(m) == Barcode(zigzag_poset, [
        Interval(zigzag_poset, 0, 2), Interval(zigzag_poset, 2, 4)])
    assert segment_rank(m, 0, 4) == 0
    assert segment_rank(m, 0, 2) == 1

def test_reduction_needs_an_ordered_poset(zigzag_poset):
    m = pm.PersistenceModule.zero(zigzag_poset)
    with pytest.raises(PosetError) as e:
        coherent_decomposition(m)
    assert e.value.error_state == 205

def test_grid_modules_are_not_decomposed():
    m = pm.PersistenceModule.zero(GridPoset([0, 1], [0, 1]))
    with pytest.raises(DecompositionError) as e:
        decompose(m)
    assert e.value.error_state == 401

def test_model_basis_is_coherent(zigzag_poset):
    barcode = Barcode(zigzag_poset, [Interval(zigzag_poset, 0, 2),
                                     Interval(zigzag_poset, 1, 4)])
    m, basis = module_from_barcode(barcode)
    assert basis.validate(m)
    assert basis.labels(2) == (0, 1)
    assert decompose(m) == barcode

def test_incoherent_basis_is_rejected(line):
    barcode = Barcode(line, [Interval(line, 0, 3)])
    m, basis = module_from_barcode(barcode)
    vectors = list(basis.vectors)
    vectors[2] = 2 * vectors[2]
    with pytest.raises(DecompositionError) as e:
        basis.with_vectors(vectors).validate(m)
    assert e.value.error_state == 402

def test_interval_coordinates_round_trip(line, rng):
    source_barcode = Barcode(line, [Interval(line, 1, 4),
                                    Interval(line, 2, 5)])
    target_barcode = Barcode(line, [Interval(line, 0, 3),
                                    Interval(line, 1, 4)])
    source, src_basis = module_from_barcode(source_barcode)
    target, tgt_basis = module_from_barcode(target_barcode)
    coefficients = ri.random_coefficients(rng, src_basis.summands,
                                          tgt_basis.summands, density=1.0)
    coordinates = IntervalMorphism(src_basis.summands, tgt_basis.summands,
                                   coefficients)
    f = coordinates.to_morphism(source, target, src_basis, tgt_basis)
    assert to_interval_coordinates(f, src_basis, tgt_basis) == coordinates

def test_coefficient_without_a_map_is_rejected(line):
    with pytest.raises(DecompositionError):
        IntervalMorphism([Interval(line, 0, 2)], [Interval(line, 1, 4)],
                         [[1]])

def one_to_two(line):
    """[2, 4] -> [0, 3] + [1, 4] with both coefficients 1."""
    source = interval_module(Interval(line, 2, 4))
    target, _ = module_from_barcode(Barcode(line, [Interval(line, 0, 3),
                                                   Interval(line, 1, 4)]))
    ones = [[1], [1]]
    return pm.Morphism(source, target, [la.zeros(1, 0), la.zeros(2, 0), ones,
                                        ones, [[1]], la.zeros(0, 1)])

def test_change_basis_kills_the_coefficient_on_the_smaller_summand(line):
    d = decompose_morphism(one_to_two(line))
    assert d.coefficients[:, 0].tolist() == [1, 1]
    # [1, 4] := [1, 4] + [0, 3] on the overlap
    d = change_basis(d, 'target', 0, 1, 1, 1)
    assert d.coefficients[:, 0].tolist() == [0, 1]
    assert len(d.operations) == 1
    assert d.tgt_basis.validate(d.morphism.target)

def test_change_basis_preconditions(line):
    d = decompose_morphism(one_to_two(line))
    with pytest.raises(DecompositionError) as e:
        change_basis(d, 'target', 1, 0, 1, 1)
    assert e.value.error_state == 403
    with pytest.raises(DecompositionError):
        change_basis(d, 'target', 0, 0)
    with pytest.raises(DecompositionError):
        change_basis(d, 'target', 0, 1, 0, 1)
    with pytest.raises(DecompositionError):
        change_basis(d, 'middle', 0, 1)
