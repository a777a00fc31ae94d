# -*- coding: utf-8 -*-

"""Worked examples of the corpus folder, run through the commands. The
expected values are listed in corpus/README.md.
"""

import math
import os
import pytest

from fractions import Fraction

import commands
import exact_linalg as la
import persistence_module as pm
import wasserstein as ws
from config_template import load_cfg
from module_files import load_module_file
from utils import LogSink, ModeMismatchError, format_rational


CORPUS = os.path.join(os.path.dirname(os.path.abspath(__file__)), '..',
                      'corpus')


def path(*parts):
    return os.path.join(CORPUS, *parts)

@pytest.fixture
def session():
    return commands.Session(load_cfg(), LogSink())


# Zigzag quiver 0 -> 1 -> 2 <- 3 <- 4

def test_w1_of_m_plus_n_and_l(session):
    result = commands.cmd_distance(1, path('zigzag_quiver', 'MN.ini'),
                                   path('zigzag_quiver', 'L.ini'), 'module',
                                   session)
    assert result.data['value'] == '5'
    assert result.data['value_pth_power'] == '5'
    assert len(result.data['pairs']) == 1
    assert result.data['pairs'][0]['cost'] == '2'
    assert [u['cost'] for u in result.data['unmatched_a']] == ['3']
    assert result.lines[0] == 'W_1 = 5'

def test_epi_onto_l(session):
    result = commands.cmd_match(path('zigzag_quiver', 'epi.ini'), 'epi',
                                session)
    data = result.data
    assert data['pairs'] == [{'source': '[0, 2]', 'target': '[0, 4]',
                              'd_mu': '2', 'diagonal_ok': False}]
    assert data['unmatched_sources'] == ['[2, 4]']
    assert data['ker_weight'] == '1'
    assert data['matched_cost'] == '5'
    assert data['identity_holds'] is False

@pytest.mark.parametrize('name', ['epi.ini', 'epi_module.ini'])
def test_epi_between_explicit_matrix_files(session, name):
    result = commands.cmd_match(path('zigzag_quiver', name), 'epi', session)
    assert result.data['pairs'][0]['source'] == '[0, 2]'
    assert result.data['unmatched_sources'] == ['[2, 4]']
    assert result.data['ker_weight'] == '1'

def test_zigzag_modules_must_be_written_as_their_model(session, tmp_path):
    # L with the first structure map scaled by 2: isomorphic to L, but not
    # written as the model of its barcode
    (tmp_path / 'L_scaled.ini').write_text(
        '[poset]\nkind = "linear"\ncoords = [0, 1, 2, 3, 4]\n'
        'orientations = "ffbb"\n\n[module]\ndims = [1, 1, 1, 1, 1]\n'
        'maps = [[0, 1, [[2]]], [1, 2, [[1]]], [3, 2, [[1]]], '
        '[4, 3, [[1]]]]\n')
    (tmp_path / 'epi.ini').write_text(
        '[morphism]\nkind = "matrices"\n'
        f'source = "{path("zigzag_quiver", "MN_module.ini")}"\n'
        'target = "L_scaled.ini"\n'
        'components = [[0, [[1]]], [1, [[2]]], [2, [[2, 1]]], '
        '[3, [[1]]], [4, [[1]]]]\n')
    with pytest.raises(ModeMismatchError) as e:
        commands.cmd_match(str(tmp_path / 'epi.ini'), 'epi', session)
    assert e.value.error_state == 401

def test_bracket_with_the_epi_hint(session):
    result = commands.cmd_distance(
        1, path('zigzag_quiver', 'MN.ini'), path('zigzag_quiver', 'L.ini'),
        'bracket', session, [path('zigzag_quiver', 'epi_hint.ini')])
    assert (result.data['lower'], result.data['upper']) == ('1', '1')
    assert result.data['witness'] == 'hint 0'
    assert result.data['exact'] is True
    assert result.lines[-1] == 'd_mu = 1 (exact)'

def test_cost_of_the_epi_hint(session):
    result = commands.cmd_cost(path('zigzag_quiver', 'epi_hint.ini'),
                               session)
    assert result.data['total'] == '1'
    assert result.data['steps'] == [{'direction': 'forward',
                                     'file': 'epi.ini', 'ker': '1',
                                     'coker': '0'}]

def test_explicit_matrices_decompose_into_m_and_n(session):
    result = commands.cmd_decompose(path('zigzag_quiver', 'MN_module.ini'),
                                    session)
    assert result.data['intervals'] == [
        {'lo': '0', 'hi': '2', 'multiplicity': 1,
         'diagram_point': ['0', '3']},
        {'lo': '2', 'hi': '4', 'multiplicity': 1,
         'diagram_point': ['2', '5']}]
    explicit = load_module_file(path('zigzag_quiver', 'MN_module.ini'))
    model = load_module_file(path('zigzag_quiver', 'MN.ini'))
    assert explicit.module() == model.module()
    assert load_module_file(path('zigzag_quiver', 'L_module.ini')).module() \
        == load_module_file(path('zigzag_quiver', 'L.ini')).module()


# Two-parameter filtrations X, Y, Z and W

@pytest.mark.parametrize('name', ['gamma.ini', 'gamma_prime.ini'])
def test_cost_of_the_two_zigzags(session, name):
    result = commands.cmd_cost(path('two_param_1', name), session)
    assert result.data['total'] == '4'
    assert [(s['ker'], s['coker']) for s in result.data['steps']] == \
        [('2', '0'), ('2', '0')]

def test_bracket_of_x_and_y(session):
    result = commands.cmd_distance(
        1, path('two_param_1', 'X.ini'), path('two_param_1', 'Y.ini'),
        'bracket', session, [path('two_param_1', 'gamma.ini'),
                             path('two_param_1', 'gamma_prime.ini')])
    assert (result.data['lower'], result.data['upper']) == ('0', '4')
    assert result.data['witness'] == 'hint 0'
    assert result.data['exact'] is False

def test_grid_files_need_bracket_mode(session):
    with pytest.raises(ModeMismatchError):
        commands.cmd_distance(1, path('two_param_1', 'X.ini'),
                              path('two_param_1', 'Y.ini'), 'module', session)
    with pytest.raises(ModeMismatchError):
        commands.cmd_decompose(path('two_param_1', 'X.ini'), session)


# M_t and M_1 on a Lebesgue grid

@pytest.mark.parametrize('folder, t', [('two_param_2_t0', Fraction(0)),
                                       ('two_param_2_t_half',
                                        Fraction(1, 2))])
def test_integrals(folder, t):
    mt = load_module_file(path(folder, 'Mt.ini'))
    mu = mt.measure
    assert pm.integral(mt.module(), mu) == 42 - 3 * t
    for name, value in (('M1.ini', 39), ('A.ini', 29), ('B.ini', 10)):
        assert pm.integral(load_module_file(path(folder, name)).module(),
                           mu) == value

@pytest.mark.parametrize('folder, t', [('two_param_2_t0', Fraction(0)),
                                       ('two_param_2_t_half',
                                        Fraction(1, 2))])
def test_bracket_of_mt_and_m1_is_exact(session, folder, t):
    result = commands.cmd_distance(
        1, path(folder, 'Mt.ini'), path(folder, 'M1.ini'), 'bracket',
        session, [path(folder, 'inclusion_hint.ini')])
    expected = format_rational(3 * (1 - t))
    assert (result.data['lower'], result.data['upper']) == (expected,
                                                           expected)
    assert result.data['exact'] is True

@pytest.mark.parametrize('folder, t', [('two_param_2_t0', Fraction(0)),
                                       ('two_param_2_t_half',
                                        Fraction(1, 2))])
def test_lower_bounds_from_the_summands(folder, t):
    docs = {name: load_module_file(path(folder, name + '.ini'))
            for name in ('Mt', 'M1', 'A', 'B')}
    mu = docs['Mt'].measure
    mt = docs['Mt'].module()
    parts = [docs['A'].module(), docs['B'].module()]
    w1 = ws.wp_lower_bound_indecomposable(1, [mt], parts, mu,
                                          whole_n=docs['M1'].module())
    assert w1.value_pth_power == 23 - 3 * t
    w2 = ws.wp_lower_bound_indecomposable(2, [mt], parts, mu)
    assert w2.value_pth_power == (13 - 3 * t) ** 2 + 10 ** 2
    w_inf = ws.wp_lower_bound_indecomposable(math.inf, [mt], parts, mu)
    assert w_inf.value_pth_power == 13 - 3 * t


@pytest.mark.parametrize('folder, name', [
    ('two_param_1', 'X'), ('two_param_1', 'Y')] + [
    (folder, name) for folder in ('two_param_2_t0', 'two_param_2_t_half')
    for name in ('Mt', 'M1', 'A', 'B')])
def test_written_out_grid_modules_match_the_filtrations(folder, name):
    derived = load_module_file(path(folder, name + '.ini')).module()
    written = load_module_file(path(folder, name + '_module.ini')).module()
    assert written.dims == derived.dims
    poset = derived.poset
    for a in poset.points():
        for b in poset.points():
            if poset.leq(a, b):
                assert la.rank(written.map_along(a, b)) == \
                    la.rank(derived.map_along(a, b)), (a, b)


# Ordered poset 0 -> 1 -> ... -> 5

def test_one_to_two(session):
    result = commands.cmd_match(path('ordered', 'one_to_two.ini'),
                                'from-interval', session)
    data = result.data
    assert data['interval'] == '[2, 4]'
    assert data['chain'] == ['[1, 4]']
    assert data['residual'] == ['[0, 3]']
    assert data['coefficients'] == [[0], [1]]
    assert data['coker_dims'] == [1, 2, 1, 1, 0, 0]
    assert data['ker_dims'] == [0] * 6
    assert len(data['operations']) == 1

def test_one_to_two_as_a_monomorphism(session):
    result = commands.cmd_match(path('ordered', 'one_to_two.ini'), 'mono',
                                session)
    data = result.data
    assert [(p['source'], p['target']) for p in data['pairs']] == [
        ('[2, 4]', '[1, 4]')]
    assert data['unmatched_targets'] == ['[0, 3]']
    assert data['coker_weight'] == '5'
    assert data['identity_holds'] is True

def test_two_to_one(session):
    result = commands.cmd_match(path('ordered', 'two_to_one.ini'),
                                'to-interval', session)
    data = result.data
    assert data['interval'] == '[0, 2]'
    assert data['chain'] == ['[1, 3]']
    assert data['residual'] == ['[2, 4]']
    assert data['coefficients'] == [[1, 0]]
    assert data['ker_dims'] == [0, 0, 1, 2, 1, 0]
    assert data['coker_dims'] == [1, 0, 0, 0, 0, 0]

def test_nested_chains(session):
    data = commands.cmd_match(path('ordered', 'nested_from.ini'),
                              'from-interval', session).data
    assert data['chain'] == ['[0, 4]', '[1, 3]']
    assert data['residual'] == []
    assert data['coker_dims'] == [1, 2, 1, 1, 0, 0]
    data = commands.cmd_match(path('ordered', 'nested_to.ini'),
                              'to-interval', session).data
    assert data['chain'] == ['[1, 5]', '[2, 4]']
    assert data['ker_dims'] == [0, 0, 1, 1, 2, 1]

def test_vertex_inclusion(session):
    data = commands.cmd_match(path('ordered', 'inclusion.ini'), 'mono',
                              session).data
    assert data['pairs'] == [{'source': '[2, 5]', 'target': '[0, 5]',
                              'd_mu': '2', 'diagonal_ok': True}]
    assert data['coker_weight'] == '2'
    assert data['identity_holds'] is True
