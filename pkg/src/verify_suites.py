# -*- coding: utf-8 -*-

# ==============================================================================
#   pmdist, ver. 1.0
#   Exact algebraic Wasserstein distances for persistence modules
#   This software is licensed under the terms of the MIT License.
# ==============================================================================

"""Randomized property suites run by the verify command.

Each suite runs a number of independent trials; trial t draws from its own
generator, derived from the seed (random_instances.trial_generators). A
trial returns None when every property holds and a description of the
counterexample otherwise. All comparisons are exact.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import persistence_module as pm
import random_instances as ri
import wasserstein as ws
from decomposition import (barcode_from_segment_ranks, coherent_decomposition,
                           decompose, module_from_barcode, segment_rank_table)
from index_poset import (Barcode, Interval, LinearPoset, Measure,
                         symmetric_difference_measure)
from matching_structure import induced_matching_epi, induced_matching_mono
from utils import ConfigError, show_progress_in_console
from zigzag import zigzag_cost


SUITES = ('isometry', 'axioms', 'bounds', 'matching', 'decomposition',
          'intervals')
EXPONENTS = (1, 2, 3, math.inf)
AXIOM_EXPONENTS = (1, 2, math.inf)


@dataclass
class SuiteReport:
    name: str
    trials: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures


@dataclass
class SuiteSettings:
    seed: int = 0
    trials: int = 200
    max_intervals: int = 8
    max_coord: int = 20
    max_points: int = 6
    max_dim: int = 3
    max_match_intervals: int = 6
    max_interval_points: int = 5

    @classmethod
    def from_cfg(cls, cfg):
        section = cfg['verify']
        return cls(**{key: int(section[key]) for key in (
            'seed', 'trials', 'max_intervals', 'max_coord', 'max_points',
            'max_dim', 'max_match_intervals', 'max_interval_points')})


def root_sum_leq(lhs, terms, p):
    """lhs^(1/p) <= sum of t^(1/p) over terms, for p-th powers lhs and
    terms (p = inf: plain values)."""
    if p == math.inf:
        return lhs <= sum(terms, Fraction(0))
    if p == 1:
        return lhs <= sum(terms, Fraction(0))
    if p == 2 and len(terms) == 2:
        y, z = terms
        excess = lhs - y - z
        return excess <= 0 or excess * excess <= 4 * y * z
    raise ValueError(f'exact root comparison not available for p={p}')


def _isometry_trial(rng, settings):
    barcode_a, barcode_b = ri.random_barcode_pair(
        rng, settings.max_intervals, settings.max_coord)
    m = ri.disguised_module(rng, barcode_a)
    n = ri.disguised_module(rng, barcode_b)
    mu = Measure.counting(m.poset)
    for p in EXPONENTS:
        modules = ws.wasserstein_modules(p, m, n, mu)
        diagrams = ws.wasserstein_diagrams(p, ws.diagram(barcode_a, mu),
                                           ws.diagram(barcode_b, mu))
        if modules.value_pth_power != diagrams.value_pth_power:
            return (f'p={ws.format_exponent(p)}: modules '
                    f'{modules.value_pth_power} != diagrams '
                    f'{diagrams.value_pth_power} for {barcode_a} vs '
                    f'{barcode_b}')
    value, witness = ws.d_mu_exact_decomposable(m, n, mu)
    if zigzag_cost(witness, mu) != value:
        return f'witness cost differs from W1 = {value} for {barcode_a}'
    return None

def _axioms_trial(rng, settings):
    poset = LinearPoset.integer(settings.max_coord + 1)
    mu = Measure.counting(poset)
    barcodes = [ri.random_barcode(rng, poset, settings.max_intervals)
                for _ in range(5)]
    a, b, c, a2, b2 = barcodes
    for p in AXIOM_EXPONENTS:
        def w(x, y):
            return ws.wasserstein_barcodes(p, x, y, mu).value_pth_power
        label = ws.format_exponent(p)
        if w(a, b) != w(b, a):
            return f'p={label}: symmetry fails for {a}, {b}'
        if w(a, a) != 0:
            return f'p={label}: W(M, M) != 0 for {a}'
        if not root_sum_leq(w(a, c), [w(a, b), w(b, c)], p):
            return f'p={label}: triangle inequality fails for {a}, {b}, {c}'
        left = w(_sum(a, a2), _sum(b, b2))
        if p == math.inf:
            holds = left <= max(w(a, b), w(a2, b2))
        else:
            holds = left <= w(a, b) + w(a2, b2)
        if not holds:
            return f'p={label}: subadditivity fails for {a}+{a2}, {b}+{b2}'
    return None

def _sum(x, y):
    total = Barcode(x.poset, x.intervals())
    for interval in y.intervals():
        total.add(interval)
    return total

def _bounds_trial(rng, settings):
    barcode_a, barcode_b = ri.random_barcode_pair(
        rng, min(settings.max_intervals, 4), min(settings.max_coord, 8))
    m, _ = module_from_barcode(barcode_a)
    n, _ = module_from_barcode(barcode_b)
    mu = Measure.counting(m.poset)
    w1 = ws.wasserstein_barcodes(1, barcode_a, barcode_b, mu)
    lower, upper = pm.hilbert_bounds(m, n, mu)
    if not lower <= w1.value_pth_power <= upper:
        return f'W1 = {w1.value_pth_power} outside Hilbert bounds'
    g = ri.random_zigzag(rng, barcode_a, barcode_b)
    if zigzag_cost(g, mu) < w1.value_pth_power:
        return (f'zigzag of cost {zigzag_cost(g, mu)} below W1 = '
                f'{w1.value_pth_power} for {barcode_a} vs {barcode_b}')
    parts_m = [module_from_barcode(Barcode(m.poset, [i]))[0]
               for i in barcode_a.intervals()]
    parts_n = [module_from_barcode(Barcode(n.poset, [j]))[0]
               for j in barcode_b.intervals()]
    for p in AXIOM_EXPONENTS:
        bound = ws.wp_lower_bound_indecomposable(p, parts_m, parts_n, mu, m, n)
        exact = ws.wasserstein_barcodes(p, barcode_a, barcode_b, mu)
        if bound.value_pth_power > exact.value_pth_power:
            return (f'p={ws.format_exponent(p)}: lower bound '
                    f'{bound.value_pth_power} exceeds W_p')
    if ws.w_inf_via_w1_matching(w1) < ws.wasserstein_barcodes(
            math.inf, barcode_a, barcode_b, mu).value_pth_power:
        return 'largest cost of the W1 matching is below W_inf'
    return None

def _matching_trial(rng, settings):
    poset = LinearPoset.integer(min(settings.max_coord, 8) + 1)
    mu = Measure.counting(poset)
    for kind, generate, induce in (
            ('mono', ri.random_mono, induced_matching_mono),
            ('epi', ri.random_epi, induced_matching_epi)):
        f = generate(rng, poset, settings.max_match_intervals)
        matching = induce(f)
        if not all(matching.diagonal_ok):
            return f'{kind}: a diagonal component lacks the rank property'
        if not matching.ends_agree():
            return f'{kind}: matched ends differ'
        if not matching.identity_holds(mu):
            return (f'{kind}: matched cost {matching.matched_cost(mu)} != '
                    f'{matching.identity_value(mu)}')
    return None

def _decomposition_trial(rng, settings):
    for n in range(1, settings.max_points + 1):
        for orientations in ri.all_orientations(n):
            poset = LinearPoset.integer(n, orientations)
            m = ri.random_module(rng, poset, settings.max_dim)
            ranks = segment_rank_table(m)
            barcode = barcode_from_segment_ranks(poset, ranks)
            if barcode.dims() != m.dims:
                return f'{orientations!r}: barcode dims {barcode.dims()}'
            model, _ = module_from_barcode(barcode)
            if segment_rank_table(model) != ranks:
                return f'{orientations!r}: segment ranks of the model differ'
            if poset.is_ordered and coherent_decomposition(m)[0] != barcode:
                return f'{orientations!r}: reduction and segment ranks differ'
            if decompose(model) != barcode:
                return f'{orientations!r}: model does not round-trip'
    return None

def _intervals_trial(rng, settings):
    for n in range(1, settings.max_interval_points + 1):
        for orientations in ri.all_orientations(n):
            poset = LinearPoset.integer(n, orientations)
            for mu in (Measure.counting(poset),
                       ri.random_weights_measure(rng, poset)):
                failure = _check_interval_pairs(poset, mu)
                if failure:
                    return f'{orientations!r}: {failure}'
    return None

def _check_interval_pairs(poset, mu):
    intervals = [Interval(poset, lo, hi) for lo in poset.points()
                 for hi in range(lo, poset.size)]
    for i in intervals:
        for j in intervals + [None]:
            points_j = set(j.points()) if j is not None else set()
            brute = mu.of_points(set(i.points()) ^ points_j)
            value = ws.d_interval(i, j, mu)
            if value != brute:
                return f'd({i.label()}, {j}) = {value} != {brute}'
            if j is not None and value != symmetric_difference_measure(i, j, mu):
                return f'd({i.label()}, {j.label()}) is not mu(I sym J)'
            witness = ws.d_interval_witness(i, j)
            if zigzag_cost(witness, mu) != value:
                return f'witness for {i.label()}, {j} costs more'
            if j is not None:
                lower, _ = pm.hilbert_bounds(witness.start, witness.end, mu)
                if lower != value:
                    return f'Hilbert bound differs for {i.label()}, {j.label()}'
    return None


SUITE_TRIALS = {
    'isometry': _isometry_trial,
    'axioms': _axioms_trial,
    'bounds': _bounds_trial,
    'matching': _matching_trial,
    'decomposition': _decomposition_trial,
    'intervals': _intervals_trial,
}

# Exhaustive suites run once whatever the trial count
EXHAUSTIVE_SUITES = ('intervals',)


def run_suite(name, settings, show_progress=False):
    if name not in SUITE_TRIALS:
        raise ConfigError(f'unknown suite {name!r}')
    trials = settings.trials
    if name in EXHAUSTIVE_SUITES:
        trials = min(trials, 1)
    report = SuiteReport(name, trials)
    trial = SUITE_TRIALS[name]
    for index, rng in enumerate(ri.trial_generators(settings.seed, trials)):
        failure = trial(rng, settings)
        if failure is not None:
            report.failures.append(f'trial {index}: {failure}')
        if show_progress:
            show_progress_in_console(int(100 * (index + 1) / trials))
    return report

def run_suites(names, settings, show_progress=False):
    if 'all' in names:
        names = SUITES
    return [run_suite(name, settings, show_progress) for name in names]
