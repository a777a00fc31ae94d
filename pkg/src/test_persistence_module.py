# -*- coding: utf-8 -*-

"""Tests for persistence modules and morphisms.
"""

import pytest

import numpy as np

import exact_linalg as la
import persistence_module as pm
from decomposition import interval_module, module_from_barcode
from index_poset import Barcode, GridPoset, Interval, LinearPoset, Measure
from utils import ModuleError, PosetError


@pytest.fixture
def line():
    return LinearPoset.integer(4)

@pytest.fixture
def inclusion(line):
    # [1, 3] -> [0, 3], identity where both are nonzero
    source = interval_module(Interval(line, 1, 3))
    target = interval_module(Interval(line, 0, 3))
    return pm.Morphism(source, target, [la.zeros(1, 0), [[1]], [[1]], [[1]]])


def test_missing_map_is_rejected(line):
    with pytest.raises(ModuleError):
        pm.PersistenceModule(line, [1, 1, 0, 0])

def test_shape_check(line):
    with pytest.raises(ModuleError) as e:
        pm.PersistenceModule(line, [1, 2, 0, 0], {(0, 1): [[1, 0]]})
    assert e.value.error_state == 301

def test_maps_to_and_from_zero_spaces_are_implicit(line):
    m = pm.PersistenceModule(line, [0, 1, 1, 0], {(1, 2): [[1]]})
    assert m.map(0, 1).shape == (1, 0)
    assert m.total_dim() == 2

def test_grid_commutativity():
    grid = GridPoset([0, 1], [0, 1])
    ones = {arrow: [[1]] for arrow in grid.arrows()}
    pm.PersistenceModule(grid, [1, 1, 1, 1], ones)
    ones[(grid.index(0, 0), grid.index(1, 0))] = [[2]]
    with pytest.raises(ModuleError) as e:
        pm.PersistenceModule(grid, [1, 1, 1, 1], ones)
    assert e.value.error_state == 302

def test_map_along(line):
    m, _ = module_from_barcode(Barcode(line, [Interval(line, 0, 3)]))
    assert la.equal(m.map_along(0, 3), [[1]])
    with pytest.raises(PosetError):
        m.map_along(3, 0)

def test_naturality(inclusion):
    assert inclusion.is_mono()
    assert not inclusion.is_epi()
    rng = np.random.default_rng(0)
    broken = pm.random_perturbation(inclusion, rng, k=2)
    with pytest.raises(ModuleError) as e:
        pm.Morphism(inclusion.source, inclusion.target, broken)
    assert e.value.error_state == 303

def test_ker_coker_dims(inclusion):
    ker, coker = pm.ker_coker_dims(inclusion)
    assert ker == (0, 0, 0, 0)
    assert coker == (1, 0, 0, 0)

def test_hilbert_bounds(line):
    m = interval_module(Interval(line, 0, 2))
    n = interval_module(Interval(line, 1, 3))
    mu = Measure.from_weights(line, [1, 2, 3, 4])
    assert pm.hilbert(m) == (1, 1, 1, 0)
    assert pm.hilbert_bounds(m, n, mu) == (5, 15)
    assert pm.integral(m, mu) == 6

def test_compose_and_identity(inclusion):
    identity = pm.Morphism.identity(inclusion.target)
    assert pm.compose(identity, inclusion) == inclusion
    with pytest.raises(ModuleError):
        pm.compose(inclusion, inclusion)

def test_direct_sum(line):
    a = interval_module(Interval(line, 0, 1))
    b = interval_module(Interval(line, 1, 3))
    total, injections, projections = pm.direct_sum([a, b])
    assert total.dims == (1, 2, 1, 1)
    for inj, proj in zip(injections, projections):
        assert pm.compose(proj, inj) == pm.Morphism.identity(inj.source)
    total_b, _ = module_from_barcode(
        Barcode(line, [Interval(line, 0, 1), Interval(line, 1, 3)]))
    assert total == total_b

def test_kernel_cokernel_image(line):
    # [0, 3] -> [0, 1], the quotient onto the first two points
    source = interval_module(Interval(line, 0, 3))
    target = interval_module(Interval(line, 0, 1))
    f = pm.Morphism(source, target, [[[1]], [[1]], la.zeros(0, 1),
                                     la.zeros(0, 1)])
    kernel, inclusion = pm.kernel_module(f)
    assert kernel.dims == (0, 0, 1, 1)
    assert pm.compose(f, inclusion).is_zero()
    cokernel, _ = pm.cokernel_module(f)
    assert cokernel.is_zero()
    epi, mono = pm.image_factorize(f)
    assert epi.is_epi() and mono.is_mono()
    assert pm.compose(mono, epi) == f

def test_cokernel_of_inclusion(inclusion):
    cokernel, quotient = pm.cokernel_module(inclusion)
    assert cokernel.dims == (1, 0, 0, 0)
    assert quotient.is_epi()
