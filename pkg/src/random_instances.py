# -*- coding: utf-8 -*-

# ==============================================================================
#   pmdist, ver. 1.0
#   Exact algebraic Wasserstein distances for persistence modules
#   This software is licensed under the terms of the MIT License.
# ==============================================================================

"""Seeded random posets, barcodes, modules, morphisms and zigzags for the
verification suites and the tests. Every generator takes a
numpy.random.Generator; trial_generators() derives independent generators
per trial from one seed, so results do not depend on the trial order.
"""

import numpy as np

import exact_linalg as la
import persistence_module as pm
from decomposition import IntervalMorphism, hom_dim, module_from_barcode
from index_poset import (BACKWARD, FORWARD, Barcode, Interval, LinearPoset,
                         Measure)
from zigzag import BACKWARD as STEP_BACKWARD
from zigzag import FORWARD as STEP_FORWARD
from zigzag import Zigzag


def trial_generators(seed, trials):
    children = np.random.SeedSequence(seed).spawn(trials)
    return [np.random.default_rng(child) for child in children]

def all_orientations(n):
    """Every orientation string of a linear quiver with n points."""
    patterns = ['']
    for _ in range(n - 1):
        patterns = [p + o for p in patterns for o in (FORWARD, BACKWARD)]
    return patterns

def random_weights_measure(rng, poset, max_weight=4):
    return Measure.from_weights(
        poset, [int(w) for w in rng.integers(0, max_weight + 1, poset.size)])

def random_interval(rng, poset):
    lo = int(rng.integers(poset.size))
    hi = int(rng.integers(lo, poset.size))
    return Interval(poset, lo, hi)

def random_barcode(rng, poset, max_intervals, min_intervals=0):
    count = int(rng.integers(min_intervals, max_intervals + 1))
    return Barcode(poset, [random_interval(rng, poset) for _ in range(count)])

def random_barcode_pair(rng, max_intervals=8, max_coord=20):
    """Two barcodes on the ordered poset 0..max_coord."""
    poset = LinearPoset.integer(max_coord + 1)
    return (random_barcode(rng, poset, max_intervals),
            random_barcode(rng, poset, max_intervals))

def random_invertible(rng, n):
    while True:
        matrix = la.random_matrix(rng, n, n)
        if la.is_invertible(matrix):
            return matrix

def random_module(rng, poset, max_dim):
    """Random dimensions and random structure maps (linear posets)."""
    dims = [int(d) for d in rng.integers(0, max_dim + 1, poset.size)]
    maps = {(a, b): la.random_matrix(rng, dims[b], dims[a])
            for a, b in poset.arrows()}
    return pm.PersistenceModule(poset, dims, maps)

def random_changes(rng, m):
    return [random_invertible(rng, d) for d in m.dims]

def conjugate_module(m, changes):
    """The module with bases changed by changes[k] at every point; changes
    is then an isomorphism from m to the result."""
    maps = {(a, b): la.matmul_chain(changes[b], m.map(a, b),
                                    la.inverse(changes[a]))
            for a, b in m.poset.arrows()}
    return pm.PersistenceModule(m.poset, m.dims, maps)

def conjugate_morphism(f, src_changes, tgt_changes):
    source = conjugate_module(f.source, src_changes)
    target = conjugate_module(f.target, tgt_changes)
    components = [la.matmul_chain(tgt_changes[k], f.components[k],
                                  la.inverse(src_changes[k]))
                  for k in f.source.poset.points()]
    return pm.Morphism(source, target, components)

def disguised_module(rng, barcode):
    """A module isomorphic to the barcode model, in random bases."""
    model, _ = module_from_barcode(barcode)
    return conjugate_module(model, random_changes(rng, model))

def random_coefficients(rng, source_summands, target_summands, density=0.5):
    coefficients = la.zeros(len(target_summands), len(source_summands))
    for j, target in enumerate(target_summands):
        for k, source in enumerate(source_summands):
            if hom_dim(source, target) and rng.random() < density:
                coefficients[j, k] = int(rng.integers(1, la.field_prime()))
    return coefficients

def random_interval_morphism(rng, source_barcode, target_barcode, density=0.5):
    """Random morphism between two barcode models."""
    source, src_basis = module_from_barcode(source_barcode)
    target, tgt_basis = module_from_barcode(target_barcode)
    coefficients = random_coefficients(rng, src_basis.summands,
                                       tgt_basis.summands, density)
    return IntervalMorphism(src_basis.summands, tgt_basis.summands,
                            coefficients).to_morphism(source, target,
                                                      src_basis, tgt_basis)

def _sub_barcode(rng, target, keep_end):
    """One interval per chosen target interval, sharing its right end
    (keep_end = 'hi') or its left end (keep_end = 'lo')."""
    intervals = []
    for interval in target.intervals():
        if rng.random() < 0.3:
            continue
        if keep_end == 'hi':
            lo = int(rng.integers(interval.lo, interval.hi + 1))
            intervals.append(Interval(interval.poset, lo, interval.hi))
        else:
            hi = int(rng.integers(interval.lo, interval.hi + 1))
            intervals.append(Interval(interval.poset, interval.lo, hi))
    return Barcode(target.poset, intervals)

def _diagonal_morphism(rng, kind, barcode, max_tries=20):
    """Random morphism between barcode models with the required rank
    property, built around a diagonal of nonzero coefficients."""
    other = _sub_barcode(rng, barcode, 'hi' if kind == 'mono' else 'lo')
    if kind == 'mono':
        source_barcode, target_barcode = other, barcode
    else:
        source_barcode, target_barcode = barcode, other
    source, src_basis = module_from_barcode(source_barcode)
    target, tgt_basis = module_from_barcode(target_barcode)
    sources, targets = src_basis.summands, tgt_basis.summands
    # Pair the intervals of other with their parents in order of creation
    diagonal = []
    used = set()
    for small_id, small in enumerate(other.intervals()):
        for big_id, big in enumerate(barcode.intervals()):
            contains = big.lo <= small.lo and small.hi <= big.hi
            shares = (small.hi == big.hi if kind == 'mono'
                      else small.lo == big.lo)
            if big_id not in used and contains and shares:
                used.add(big_id)
                diagonal.append((small_id, big_id))
                break
    for attempt in range(max_tries + 1):
        density = 0.5 if attempt < max_tries else 0.0
        coefficients = random_coefficients(rng, sources, targets, density)
        for small_id, big_id in diagonal:
            j, k = (big_id, small_id) if kind == 'mono' else (small_id, big_id)
            coefficients[j, k] = int(rng.integers(1, la.field_prime()))
        f = IntervalMorphism(sources, targets, coefficients).to_morphism(
            source, target, src_basis, tgt_basis)
        if (f.is_mono() if kind == 'mono' else f.is_epi()):
            return f
    raise AssertionError('diagonal morphism without the rank property')

def random_mono(rng, poset, max_intervals, disguise=True):
    barcode = random_barcode(rng, poset, max_intervals)
    f = _diagonal_morphism(rng, 'mono', barcode)
    if disguise:
        f = conjugate_morphism(f, random_changes(rng, f.source),
                               random_changes(rng, f.target))
    return f

def random_epi(rng, poset, max_intervals, disguise=True):
    barcode = random_barcode(rng, poset, max_intervals)
    f = _diagonal_morphism(rng, 'epi', barcode)
    if disguise:
        f = conjugate_morphism(f, random_changes(rng, f.source),
                               random_changes(rng, f.target))
    return f

def random_zigzag(rng, start_barcode, end_barcode, max_steps=4,
                  max_intervals=4):
    """Random zigzag of random morphisms between barcode models, from the
    model of start_barcode to the model of end_barcode."""
    poset = start_barcode.poset
    barcodes = [start_barcode]
    for _ in range(int(rng.integers(0, max_steps))):
        barcodes.append(random_barcode(rng, poset, max_intervals))
    barcodes.append(end_barcode)
    steps = []
    for left, right in zip(barcodes, barcodes[1:]):
        if rng.integers(2):
            steps.append((random_interval_morphism(rng, left, right),
                          STEP_FORWARD))
        else:
            steps.append((random_interval_morphism(rng, right, left),
                          STEP_BACKWARD))
    return Zigzag(module_from_barcode(start_barcode)[0], steps)
