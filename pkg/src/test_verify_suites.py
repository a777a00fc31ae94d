# -*- coding: utf-8 -*-

"""Tests for the random instance generators and the property suites of the
verify command.
"""

import math
import pytest

import numpy as np

import commands
import random_instances as ri
from config_template import load_cfg
from decomposition import decompose, module_from_barcode
from index_poset import LinearPoset
from utils import ConfigError, LogSink
from verify_suites import (SUITES, SuiteSettings, root_sum_leq, run_suite,
                           run_suites)


@pytest.fixture
def settings():
    return SuiteSettings(seed=7, trials=3, max_intervals=4, max_coord=6,
                         max_points=3, max_dim=2, max_match_intervals=3,
                         max_interval_points=3)


def test_trial_generators_are_reproducible():
    first = [rng.integers(1000) for rng in ri.trial_generators(3, 4)]
    second = [rng.integers(1000) for rng in ri.trial_generators(3, 4)]
    assert first == second
    assert len(ri.trial_generators(3, 0)) == 0

def test_all_orientations():
    assert ri.all_orientations(1) == ['']
    assert sorted(ri.all_orientations(3)) == ['bb', 'bf', 'fb', 'ff']

def test_disguised_module_keeps_its_barcode():
    rng = np.random.default_rng(11)
    poset = LinearPoset.integer(5)
    barcode = ri.random_barcode(rng, poset, 5, min_intervals=1)
    m = ri.disguised_module(rng, barcode)
    assert m.dims == barcode.dims()
    assert decompose(m) == barcode

def test_random_zigzag_joins_the_two_models():
    rng = np.random.default_rng(5)
    poset = LinearPoset.integer(4, 'fbf')
    a = ri.random_barcode(rng, poset, 3)
    b = ri.random_barcode(rng, poset, 3)
    g = ri.random_zigzag(rng, a, b)
    assert g.start == module_from_barcode(a)[0]
    assert g.end == module_from_barcode(b)[0]

def test_root_sum_leq():
    assert root_sum_leq(25, [9, 16], 2)
    assert root_sum_leq(49, [9, 16], 2)
    assert not root_sum_leq(50, [9, 16], 2)
    assert root_sum_leq(5, [2, 3], 1)
    assert not root_sum_leq(6, [2, 3], math.inf)
    with pytest.raises(ValueError):
        root_sum_leq(1, [1, 1], 3)

def test_settings_from_cfg():
    settings = SuiteSettings.from_cfg(load_cfg())
    assert settings == SuiteSettings()

@pytest.mark.parametrize('name', SUITES)
def test_suites_pass(settings, name):
    report = run_suite(name, settings)
    assert report.failures == []
    assert report.passed

def test_exhaustive_suites_run_once(settings):
    assert run_suite('intervals', settings).trials == 1

def test_all_runs_every_suite(settings):
    settings.trials = 1
    reports = run_suites(['all'], settings)
    assert [report.name for report in reports] == list(SUITES)

def test_unknown_suite(settings):
    with pytest.raises(ConfigError):
        run_suite('speed', settings)

def test_cmd_verify_reports_every_suite():
    cfg = load_cfg()
    cfg['verify']['max_interval_points'] = '3'
    session = commands.Session(cfg, LogSink())
    result = commands.cmd_verify(['intervals', 'axioms'], session,
                                 trials=2, seed=1)
    assert result.error_state == 0
    assert result.data['seed'] == 1
    assert [suite['name'] for suite in result.data['suites']] == [
        'intervals', 'axioms']
    assert all(suite['passed'] for suite in result.data['suites'])
    assert result.lines[0].startswith('PASS  intervals')
    assert len(session.log.entries) == 2
