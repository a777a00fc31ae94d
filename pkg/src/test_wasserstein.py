# -*- coding: utf-8 -*-

"""Tests for interval distances, W_p on diagrams and barcodes, the d_mu
bracket and the lower bound from declared parts.
"""

import math
import pytest

import numpy as np
from fractions import Fraction

import persistence_module as pm
import random_instances as ri
from decomposition import interval_module, module_from_barcode
from index_poset import Barcode, Interval, LinearPoset, Measure
from utils import MetricError, PosetError
from wasserstein import (DiagramPoint, d_interval, d_interval_witness,
                         d_mu_bracket, d_mu_exact_decomposable, diagram,
                         diagram_point, format_exponent, lp_norm_of,
                         parse_exponent, w_inf_via_w1_matching,
                         wasserstein_barcodes, wasserstein_diagrams,
                         w1_matching_zigzag, wasserstein_modules,
                         wp_lower_bound_indecomposable)
from zigzag import FORWARD, Zigzag, zigzag_cost


@pytest.fixture
def line():
    return LinearPoset.integer(6)

@pytest.fixture
def mu(line):
    return Measure.counting(line)

@pytest.fixture
def quiver():
    return LinearPoset.integer(5, 'ffbb')


def barcode(poset, *pairs):
    return Barcode(poset, [Interval(poset, lo, hi) for lo, hi in pairs])


def test_parse_exponent():
    assert parse_exponent(1) == 1
    assert parse_exponent('3') == 3
    assert parse_exponent('inf') == math.inf
    assert parse_exponent('∞') == math.inf
    assert parse_exponent(math.inf) == math.inf
    assert format_exponent(math.inf) == 'inf'
    assert format_exponent(2) == '2'
    for bad in (0, -1, 'x', '1.5', True, 2.5):
        with pytest.raises(MetricError) as e:
            parse_exponent(bad)
        assert e.value.error_state == 501

def test_diagram_points_use_half_open_cells(line, mu):
    point = diagram_point(Interval(line, 1, 3), mu)
    assert (point.birth, point.death) == (1, 4)
    assert point.persistence == 3
    weighted = Measure.from_weights(line, [1, 2, 3, 4, 5, 6])
    point = diagram_point(Interval(line, 1, 3), weighted)
    assert (point.birth, point.death) == (1, 10)
    assert diagram(barcode(line, (0, 2), (4, 5)), mu) == [
        DiagramPoint(0, 3), DiagramPoint(4, 6)]

def test_diagram_point_validation():
    with pytest.raises(MetricError):
        DiagramPoint(3, 1)
    with pytest.raises(MetricError) as e:
        DiagramPoint(0, math.inf).distance(DiagramPoint(1, math.inf))
    assert e.value.error_state == 502
    assert DiagramPoint(0, math.inf).persistence == math.inf

def test_diagram_distance_is_mu_of_the_symmetric_difference(line, mu):
    i, j = Interval(line, 0, 3), Interval(line, 2, 5)
    assert diagram_point(i, mu).distance(diagram_point(j, mu)) == \
        d_interval(i, j, mu) == 4
    assert d_interval(i, None, mu) == 4

def test_wasserstein_diagrams():
    result = wasserstein_diagrams(2, [DiagramPoint(0, 3)], [])
    assert result.value_pth_power == 9
    assert result.exact_value() == 3
    assert result.unmatched_a == [(0, 3)]
    result = wasserstein_diagrams(1, [DiagramPoint(0, 3)],
                                  [DiagramPoint(0, 4)])
    assert result.value_pth_power == 1
    assert result.pairs == [(0, 0, 1)]
    result = wasserstein_diagrams(math.inf, [DiagramPoint(0, 1)],
                                  [DiagramPoint(5, 7)])
    assert result.value_pth_power == 2
    assert result.pairs == []

def test_wasserstein_barcodes_for_each_exponent(line, mu):
    a = barcode(line, (0, 3), (1, 4))
    b = barcode(line, (0, 4))
    w1 = wasserstein_barcodes(1, a, b, mu)
    assert w1.value_pth_power == 5
    assert len(w1.pairs) == 1
    assert sorted(w1.cost_vector()) == [1, 4]
    assert w_inf_via_w1_matching(w1) == 4
    w2 = wasserstein_barcodes(2, a, b, mu)
    assert w2.value_pth_power == 17
    assert w2.exact_value() is None
    assert w2.value_root(6) == '4.12311'
    assert wasserstein_barcodes(math.inf, a, b, mu).value_pth_power == 4

def test_wasserstein_modules_ignores_the_choice_of_bases(line, mu):
    rng = np.random.default_rng(5)
    a = barcode(line, (0, 3), (1, 4))
    b = barcode(line, (0, 4))
    m = ri.disguised_module(rng, a)
    n = ri.disguised_module(rng, b)
    for p, expected in ((1, 5), (2, 17), (math.inf, 4)):
        assert wasserstein_modules(p, m, n, mu).value_pth_power == expected

def test_wasserstein_of_equal_barcodes_is_zero(line, mu):
    a = barcode(line, (0, 3), (1, 4), (1, 4))
    result = wasserstein_barcodes(2, a, a, mu)
    assert result.value_pth_power == 0
    assert result.exact_value() == 0

def test_lp_norm_of():
    assert lp_norm_of([3, 4], 2) == 25
    assert lp_norm_of([3, 4], 'inf') == 4
    assert lp_norm_of([], 1) == 0

@pytest.mark.parametrize('i, j', [((0, 3), (2, 5)), ((1, 4), (0, 4)),
                                  ((0, 1), (3, 5)), ((2, 2), (2, 2)),
                                  ((0, 4), (1, 3))])
def test_interval_witness_realizes_d_interval(line, mu, i, j):
    i, j = Interval(line, *i), Interval(line, *j)
    witness = d_interval_witness(i, j)
    assert witness.start == interval_module(i)
    assert witness.end == interval_module(j)
    assert zigzag_cost(witness, mu) == d_interval(i, j, mu)

def test_witness_to_zero(line, mu):
    i = Interval(line, 1, 3)
    witness = d_interval_witness(i, None)
    assert witness.end == pm.PersistenceModule.zero(line)
    assert zigzag_cost(witness, mu) == 3

def test_exact_value_on_ordered_posets(line, mu):
    m, _ = module_from_barcode(barcode(line, (0, 3), (1, 4)))
    n, _ = module_from_barcode(barcode(line, (0, 4)))
    value, witness = d_mu_exact_decomposable(m, n, mu)
    assert value == 5
    assert witness.start == m
    assert witness.end == n
    assert zigzag_cost(witness, mu) == 5
    bracket = d_mu_bracket(m, n, mu)
    assert tuple(bracket) == (5, 5)
    assert bracket.is_exact
    assert bracket.witness_name == 'W1 matching'

def test_w1_matching_is_only_an_upper_bound_on_zigzag_posets(quiver):
    mu = Measure.counting(quiver)
    mn, _ = module_from_barcode(barcode(quiver, (0, 2), (2, 4)))
    l, _ = module_from_barcode(barcode(quiver, (0, 4)))
    with pytest.raises(PosetError) as e:
        d_mu_exact_decomposable(mn, l, mu)
    assert e.value.error_state == 205
    value, witness = w1_matching_zigzag(mn, l, mu)
    assert value == 5
    assert zigzag_cost(witness, mu) == 5

def test_bracket_on_the_zigzag_quiver(quiver):
    mu = Measure.counting(quiver)
    mn, _ = module_from_barcode(barcode(quiver, (0, 2), (2, 4)))
    l, _ = module_from_barcode(barcode(quiver, (0, 4)))
    bracket = d_mu_bracket(mn, l, mu)
    assert tuple(bracket) == (1, 5)
    assert bracket.witness_name == 'W1 matching'
    epi = pm.Morphism(mn, l, [[[1]], [[1]], [[1, 1]], [[1]], [[1]]])
    hint = Zigzag(mn, [(epi, FORWARD)])
    bracket = d_mu_bracket(mn, l, mu, [hint])
    assert tuple(bracket) == (1, 1)
    assert bracket.witness_name == 'hint 0'
    # hints are accepted in either direction
    assert tuple(d_mu_bracket(l, mn, mu, [hint])) == (1, 1)

def test_bracket_rejects_unrelated_hints(quiver):
    mu = Measure.counting(quiver)
    mn, _ = module_from_barcode(barcode(quiver, (0, 2), (2, 4)))
    l, _ = module_from_barcode(barcode(quiver, (0, 4)))
    with pytest.raises(MetricError) as e:
        d_mu_bracket(mn, l, mu, [Zigzag(mn)])
    assert e.value.error_state == 503
    with pytest.raises(MetricError):
        d_mu_bracket(mn, l, mu, ['not a zigzag'])

def test_lower_bound_from_declared_parts(line, mu):
    a = interval_module(Interval(line, 0, 3))
    b = interval_module(Interval(line, 1, 4))
    c = interval_module(Interval(line, 0, 4))
    whole, _, _ = pm.direct_sum([a, b])
    w1 = wp_lower_bound_indecomposable(1, [a, b], [c], mu, whole_m=whole)
    assert w1.value_pth_power == 5
    w_inf = wp_lower_bound_indecomposable(math.inf, [a, b], [c], mu)
    assert w_inf.value_pth_power == 4
    with pytest.raises(MetricError) as e:
        wp_lower_bound_indecomposable(1, [a], [c], mu, whole_m=whole)
    assert e.value.error_state == 504

def test_lower_bound_never_exceeds_the_exact_value(line, mu):
    a = interval_module(Interval(line, 0, 2))
    b = interval_module(Interval(line, 1, 5))
    bound = wp_lower_bound_indecomposable(1, [a], [b], mu)
    exact = d_interval(Interval(line, 0, 2), Interval(line, 1, 5), mu)
    assert bound.value_pth_power <= exact == Fraction(4)
