# -*- coding: utf-8 -*-

"""Tests for H_0 of graph filtrations.
"""

import pytest

from decomposition import decompose
from graph_filtration import (GraphFiltration, h0_inclusion_morphism,
                              h0_of_graph_filtration)
from index_poset import Barcode, GridPoset, Interval, LinearPoset
from utils import ModuleError


@pytest.fixture
def line():
    return LinearPoset.integer(6)

@pytest.fixture
def path(line):
    # two vertices born at 0 and 2, joined at 4
    return GraphFiltration(line, {'u': [0], 'v': [2]},
                           {'uv': ('u', 'v', [4])})


def test_h0_dims(path):
    m = h0_of_graph_filtration(path)
    assert m.dims == (1, 1, 2, 2, 1, 1)

def test_h0_barcode_follows_the_elder_rule(path, line):
    barcode = decompose(h0_of_graph_filtration(path))
    assert barcode == Barcode(line, [Interval(line, 0, 5),
                                     Interval(line, 2, 3)])

def test_components_are_ordered_by_first_vertex(path):
    assert path.components(3) == [[0], [1]]
    assert path.components(4) == [[0, 1]]

def test_edge_before_vertex_is_rejected(line):
    with pytest.raises(ModuleError) as e:
        GraphFiltration(line, {'u': [0], 'v': [2]}, {'uv': ('u', 'v', [1])})
    assert e.value.error_state == 305

def test_appearance_set_must_be_an_antichain(line):
    with pytest.raises(ModuleError):
        GraphFiltration(line, {'u': [0, 2]})
    grid = GridPoset([0, 1, 2], [0, 1, 2])
    GraphFiltration(grid, {'u': [grid.index(0, 1), grid.index(1, 0)]})
    with pytest.raises(ModuleError):
        GraphFiltration(grid, {'u': [grid.index(0, 0), grid.index(1, 1)]})

def test_unknown_edge_vertex(line):
    with pytest.raises(ModuleError):
        GraphFiltration(line, {'u': [0]}, {'uw': ('u', 'w', [1])})

def test_inclusion_morphism(line, path):
    sub = GraphFiltration(line, {'u': [1], 'v': [2]}, {'uv': ('u', 'v', [5])})
    assert path.contains(sub)
    assert not sub.contains(path)
    f = h0_inclusion_morphism(sub, path)
    assert f.ranks() == (0, 1, 2, 2, 1, 1)
    with pytest.raises(ModuleError):
        h0_inclusion_morphism(path, sub)

def test_h0_on_a_grid_commutes():
    grid = GridPoset([0, 1, 2], [0, 1, 2])
    filtration = GraphFiltration(
        grid, {'a': [grid.index(0, 1)], 'b': [grid.index(1, 0)]},
        {'e': ('a', 'b', [grid.index(2, 1), grid.index(1, 2)])})
    m = h0_of_graph_filtration(filtration)
    assert m.dims[grid.index(1, 1)] == 2
    assert m.dims[grid.index(2, 2)] == 1
    assert m.dims[grid.index(0, 0)] == 0
