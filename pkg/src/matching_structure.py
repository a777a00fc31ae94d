# -*- coding: utf-8 -*-

# ==============================================================================
#   pmdist, ver. 1.0
#   Exact algebraic Wasserstein distances for persistence modules
#   This software is licensed under the terms of the MIT License.
# ==============================================================================

"""Induced algebraic matchings of monomorphisms and epimorphisms, and the
structure of morphisms from and to an interval module.

All procedures work on a DecomposedMorphism (coefficients f_{j,k} between
source summand k and target summand j) and only ever change bases with
decomposition.change_basis, so the morphism itself is never altered. Every
change of basis is recorded in the operations list of the result.

Mono case: summands are grouped by right end. Inside a block, sources are
visited by reverse inclusion (largest first) and targets are scanned by
inclusion (smallest first); the first unused target with a nonzero
coefficient becomes the partner. The other unused targets of the block are
cleared in that column, and the later sources of the block are cleared in
the partner's row. The epi case is the mirror image with left ends.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import exact_linalg as la
import persistence_module as pm
from decomposition import (canonical_map, change_basis, decompose_morphism,
                           hom_dim)
from index_poset import (interval_leq, interval_strictly_inside, measure_of,
                         require_ordered, symmetric_difference_measure)
from utils import MatchingError


@dataclass
class AlgebraicMatching:
    """Partial injection between source and target summands."""
    kind: str
    pairs: list
    unmatched_sources: list
    unmatched_targets: list
    decomposed: object
    diagonal_ok: list = field(default_factory=list)

    @property
    def source_summands(self):
        return self.decomposed.src_basis.summands

    @property
    def target_summands(self):
        return self.decomposed.tgt_basis.summands

    @property
    def operations(self):
        return self.decomposed.operations

    def pair_costs(self, mu):
        """d_mu of every matched pair, in the order of pairs."""
        return [symmetric_difference_measure(self.source_summands[k],
                                             self.target_summands[j], mu)
                for k, j in self.pairs]

    def matched_cost(self, mu):
        """Sum of d_mu over matched pairs plus the measure of every
        summand matched to zero."""
        total = sum(self.pair_costs(mu), Fraction(0))
        total += sum((measure_of(self.source_summands[k], mu)
                      for k in self.unmatched_sources), Fraction(0))
        total += sum((measure_of(self.target_summands[j], mu)
                      for j in self.unmatched_targets), Fraction(0))
        return total

    def identity_value(self, mu):
        """Integral of dim coker f (mono) or dim ker f (epi)."""
        ker, coker = pm.ker_coker_dims(self.decomposed.morphism)
        return mu.integrate(coker if self.kind == 'mono' else ker)

    def identity_holds(self, mu):
        return self.matched_cost(mu) == self.identity_value(mu)

    def ends_agree(self):
        for k, j in self.pairs:
            source = self.source_summands[k]
            target = self.target_summands[j]
            if self.kind == 'mono':
                if source.hi != target.hi or target.lo > source.lo:
                    return False
            elif source.lo != target.lo or source.hi < target.hi:
                return False
        return True


def diagonal_component(d, k, j):
    """p'_j f i_k as a morphism between the interval modules of source
    summand k and target summand j."""
    source = d.src_basis.summands[k]
    target = d.tgt_basis.summands[j]
    canonical = canonical_map(source, target)
    value = d.coordinates.coefficient(j, k)
    return pm.Morphism(canonical.source, canonical.target,
                       [(c * value) % la.field_prime()
                        for c in canonical.components], validate=False)

def _blocks(summands, end):
    blocks = {}
    for index, interval in enumerate(summands):
        key = interval.hi if end == 'right' else interval.lo
        blocks.setdefault(key, []).append(index)
    return blocks

def _ratio(a, b):
    return (int(a) * la.inverse_scalar(b)) % la.field_prime()

def induced_matching_mono(f, src_basis=None, tgt_basis=None):
    if not f.is_mono():
        raise MatchingError('morphism is not a monomorphism')
    d = decompose_morphism(f, src_basis, tgt_basis)
    sources = d.src_basis.summands
    targets = d.tgt_basis.summands
    ordered = f.source.poset.is_ordered
    source_blocks = _blocks(sources, 'right')
    target_blocks = _blocks(targets, 'right')
    pairs = []
    unmatched_sources = []
    for end in sorted(set(source_blocks) | set(target_blocks)):
        src_block = sorted(source_blocks.get(end, []),
                           key=lambda k: (sources[k].lo, k))
        tgt_block = sorted(target_blocks.get(end, []),
                           key=lambda j: (-targets[j].lo, j))
        used = set()
        for position, k in enumerate(src_block):
            pivot = None
            for j in tgt_block:
                if j not in used and d.coefficients[j, k]:
                    pivot = j
                    break
            if pivot is None:
                if ordered:
                    raise MatchingError(f'no partner for source summand {k}',
                                        406)
                unmatched_sources.append(k)
                continue
            used.add(pivot)
            pairs.append((k, pivot))
            for j in tgt_block:
                if j in used or not d.coefficients[j, k]:
                    continue
                if hom_dim(targets[pivot], targets[j]):
                    l = _ratio(d.coefficients[j, k], d.coefficients[pivot, k])
                    d = change_basis(d, 'target', j, pivot, 1, l)
            for k2 in src_block[position + 1:]:
                if not d.coefficients[pivot, k2]:
                    continue
                if hom_dim(sources[k2], sources[k]):
                    l = _ratio(-d.coefficients[pivot, k2],
                               d.coefficients[pivot, k])
                    d = change_basis(d, 'source', k, k2, 1, l)
    matched_targets = {j for _, j in pairs}
    matching = AlgebraicMatching(
        'mono', pairs, unmatched_sources,
        [j for j in range(len(targets)) if j not in matched_targets], d)
    matching.diagonal_ok = [diagonal_component(d, k, j).is_mono()
                            for k, j in pairs]
    return matching

def induced_matching_epi(f, src_basis=None, tgt_basis=None):
    if not f.is_epi():
        raise MatchingError('morphism is not an epimorphism')
    d = decompose_morphism(f, src_basis, tgt_basis)
    sources = d.src_basis.summands
    targets = d.tgt_basis.summands
    ordered = f.source.poset.is_ordered
    source_blocks = _blocks(sources, 'left')
    target_blocks = _blocks(targets, 'left')
    pairs = []
    unmatched_targets = []
    for start in sorted(set(source_blocks) | set(target_blocks)):
        tgt_block = sorted(target_blocks.get(start, []),
                           key=lambda j: (-targets[j].hi, j))
        src_block = sorted(source_blocks.get(start, []),
                           key=lambda k: (sources[k].hi, k))
        used = set()
        for position, j in enumerate(tgt_block):
            pivot = None
            for k in src_block:
                if k not in used and d.coefficients[j, k]:
                    pivot = k
                    break
            if pivot is None:
                if ordered:
                    raise MatchingError(f'no partner for target summand {j}',
                                        406)
                unmatched_targets.append(j)
                continue
            used.add(pivot)
            pairs.append((pivot, j))
            for k in src_block:
                if k in used or not d.coefficients[j, k]:
                    continue
                if hom_dim(sources[k], sources[pivot]):
                    l = _ratio(-d.coefficients[j, k], d.coefficients[j, pivot])
                    d = change_basis(d, 'source', pivot, k, 1, l)
            for j2 in tgt_block[position + 1:]:
                if not d.coefficients[j2, pivot]:
                    continue
                if hom_dim(targets[j], targets[j2]):
                    l = _ratio(d.coefficients[j2, pivot],
                               d.coefficients[j, pivot])
                    d = change_basis(d, 'target', j2, j, 1, l)
    matched_sources = {k for k, _ in pairs}
    matching = AlgebraicMatching(
        'epi', pairs,
        [k for k in range(len(sources)) if k not in matched_sources],
        unmatched_targets, d)
    matching.diagonal_ok = [diagonal_component(d, k, j).is_epi()
                            for k, j in pairs]
    return matching


@dataclass
class NestedChain:
    """Chain M_1, ..., M_n of summands (strictly nested, largest first) that
    f sees, plus the residual summands N that f does not see."""
    kind: str
    interval: object
    chain: list
    residual: list
    decomposed: object
    ker_dims: tuple = ()
    coker_dims: tuple = ()

    @property
    def summands(self):
        d = self.decomposed
        return d.tgt_basis.summands if self.kind == 'from' else \
            d.src_basis.summands

    def chain_intervals(self):
        return [self.summands[index] for index in self.chain]

    @property
    def operations(self):
        return self.decomposed.operations

    def chain_weight(self, mu):
        """mu(M_n & I) + sum over j < n of mu((M_j \\ M_{j+1}) & I)."""
        intervals = self.chain_intervals()
        inside = set(self.interval.points())
        total = Fraction(0)
        for t, m in enumerate(intervals):
            points = set(m.points())
            if t + 1 < len(intervals):
                points -= set(intervals[t + 1].points())
            total += mu.of_points(points & inside)
        return total


def _indicator(poset, points):
    points = set(points)
    return [1 if k in points else 0 for k in poset.points()]

def _chain_formula(poset, interval, chain, residual, summands):
    """Dimensions of N + (M_n \\ I) + sum_{j<n} M_j \\ ((M_j \\ M_{j+1}) & I).
    This is coker f for maps from I and ker f for maps to I."""
    dims = [0] * poset.size
    inside = set(interval.points())
    for index in residual:
        for k in summands[index].points():
            dims[k] += 1
    intervals = [summands[index] for index in chain]
    for t, m in enumerate(intervals):
        points = set(m.points())
        if t + 1 < len(intervals):
            removed = (points - set(intervals[t + 1].points())) & inside
        else:
            removed = inside
        for k in points - removed:
            dims[k] += 1
    return tuple(dims)

def _eliminate_comparable(d, side, single_is_source):
    """Zero coefficients until the summands seen by f are pairwise
    incomparable under <=."""
    while True:
        if single_is_source:
            coefficients = d.coefficients[:, 0]
            summands = d.tgt_basis.summands
        else:
            coefficients = d.coefficients[0, :]
            summands = d.src_basis.summands
        seen = [index for index in range(len(summands)) if coefficients[index]]
        step = None
        for a in seen:
            for b in seen:
                if a != b and interval_leq(summands[a], summands[b]):
                    step = (a, b)
                    break
            if step:
                break
        if step is None:
            return d
        a, b = step
        if single_is_source:
            # n_b := n_b + l n_a kills the coefficient on the smaller M_a
            l = _ratio(coefficients[a], coefficients[b])
            d = change_basis(d, side, a, b, 1, l)
        else:
            # m_b := m_b + l m_a kills the coefficient on the larger M_b
            l = _ratio(-coefficients[b], coefficients[a])
            d = change_basis(d, side, a, b, 1, l)

def _single_interval(basis, what):
    if len(basis.summands) != 1:
        raise MatchingError(f'{what} is not an interval module', 405)
    return basis.summands[0]

def _nested_chain(kind, f, interval, d, summands, coefficients):
    seen = [index for index in range(len(summands)) if coefficients[index]]
    chain = sorted(seen, key=lambda index: (summands[index].lo,
                                            -summands[index].hi, index))
    residual = [index for index in range(len(summands)) if index not in seen]
    for a, b in zip(chain, chain[1:]):
        if not interval_strictly_inside(summands[b], summands[a]):
            raise MatchingError('summands seen by f are not strictly nested',
                                406)
    for index in chain:
        relation = (interval_leq(summands[index], interval) if kind == 'from'
                    else interval_leq(interval, summands[index]))
        if not relation:
            raise MatchingError('chain summand violates the interval '
                                'relation', 406)
    poset = f.source.poset
    first = set(summands[chain[0]].points())
    outside = _indicator(poset, set(interval.points()) - first)
    formula = _chain_formula(poset, interval, chain, residual, summands)
    if kind == 'from':
        ker_dims, coker_dims = tuple(outside), formula
    else:
        ker_dims, coker_dims = formula, tuple(outside)
    if (ker_dims, coker_dims) != pm.ker_coker_dims(f):
        raise MatchingError('kernel and cokernel formulas disagree with the '
                            'morphism', 406)
    return NestedChain(kind, interval, chain, residual, d, ker_dims,
                       coker_dims)

def structure_from_interval(f, tgt_basis=None):
    """Structure of a nonzero morphism f: I -> M with I an interval module
    and M a finite direct sum of interval modules."""
    require_ordered(f.source.poset)
    if f.is_zero():
        raise MatchingError('morphism is zero', 405)
    d = decompose_morphism(f, None, tgt_basis)
    interval = _single_interval(d.src_basis, 'source')
    d = _eliminate_comparable(d, 'target', True)
    return _nested_chain('from', f, interval, d, d.tgt_basis.summands,
                         d.coefficients[:, 0])

def structure_to_interval(f, src_basis=None):
    """Structure of a nonzero morphism f: M -> I with I an interval module
    and M a finite direct sum of interval modules."""
    require_ordered(f.source.poset)
    if f.is_zero():
        raise MatchingError('morphism is zero', 405)
    d = decompose_morphism(f, src_basis, None)
    interval = _single_interval(d.tgt_basis, 'target')
    d = _eliminate_comparable(d, 'source', False)
    return _nested_chain('to', f, interval, d, d.src_basis.summands,
                         d.coefficients[0, :])
