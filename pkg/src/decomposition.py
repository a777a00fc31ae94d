# -*- coding: utf-8 -*-

# ==============================================================================
#   pmdist, ver. 1.0
#   Exact algebraic Wasserstein distances for persistence modules
#   This software is licensed under the terms of the MIT License.
# ==============================================================================

"""Interval decomposition of modules over linear posets, coherent bases and
morphisms in interval coordinates.

Two decomposition methods are provided:
- reduction (ordered posets only): a left-to-right sweep that keeps a basis
  labelled by birth points, reduces the images of the alive vectors with
  older ones, and back-propagates every column operation so that the result
  is a coherent basis;
- segment ranks (any orientation): for every segment [i..j] the rank of the
  map from the limit to the colimit of the restricted module; interval
  multiplicities follow by inclusion-exclusion.

Interval ids are positions in Barcode.intervals(), i.e. intervals sorted by
(lo, hi) with repetitions.
"""

from dataclasses import dataclass, field, replace

import numpy as np

import exact_linalg as la
import persistence_module as pm
from index_poset import Barcode, Interval, require_ordered
from utils import DecompositionError, PosetError


def hom_dim(i, j):
    """Dimension (0 or 1) of the space of morphisms from the interval module
    I to the interval module J. The canonical map is the identity on the
    overlap; it is natural iff at each end of the overlap, a neighbouring
    point of J outside I has its arrow pointing into the overlap and a
    neighbouring point of I outside J has its arrow pointing away."""
    i.poset.check_same(j.poset)
    overlap = i.intersection(j)
    if overlap is None:
        return 0
    poset = i.poset
    for inner, outer in ((overlap.lo, overlap.lo - 1),
                         (overlap.hi, overlap.hi + 1)):
        if not 0 <= outer < poset.size:
            continue
        into_overlap = poset.leq(outer, inner)
        if j.contains(outer) and not into_overlap:
            return 0
        if i.contains(outer) and into_overlap:
            return 0
    return 1


class CoherentBasis:
    """Per-point bases of a module labelled by interval ids.

    summands[id] is the interval of the summand with that id. At point k the
    basis vectors are the columns of vectors[k]; column r belongs to the
    r-th id (in increasing order) among the summands containing k. The basis
    is coherent if every structure map sends the vector of an id to the
    vector of the same id, or to zero when the summand ends.
    """

    def __init__(self, summands, vectors):
        self.summands = tuple(summands)
        self.vectors = tuple(np.asarray(v, dtype=np.int64) for v in vectors)
        poset = self.poset
        if poset is not None and len(self.vectors) != poset.size:
            raise DecompositionError('one basis matrix per point expected',
                                     402)
        self._labels = []
        for k in range(len(self.vectors)):
            self._labels.append(tuple(
                index for index, s in enumerate(self.summands)
                if s.contains(k)))

    @property
    def poset(self):
        if not self.summands:
            return None
        return self.summands[0].poset

    def labels(self, k):
        return self._labels[k]

    def column(self, k, interval_id):
        return self._labels[k].index(interval_id)

    def vector(self, k, interval_id):
        return self.vectors[k][:, self.column(k, interval_id)]

    def barcode(self, poset):
        return Barcode(poset, self.summands)

    def validate(self, module):
        """Check that these bases are coherent bases of module."""
        if len(self.vectors) != module.poset.size:
            raise DecompositionError('basis and module sizes differ', 402)
        for s in self.summands:
            module.poset.check_same(s.poset)
        for k in module.poset.points():
            shape = (module.dims[k], len(self._labels[k]))
            if self.vectors[k].shape != shape:
                raise DecompositionError(
                    f'basis at {module.poset.label(k)} has shape '
                    f'{self.vectors[k].shape}, expected {shape}', 402)
            if not la.is_invertible(self.vectors[k]):
                raise DecompositionError(
                    f'basis at {module.poset.label(k)} is singular', 402)
        for a, b in module.poset.arrows():
            image = la.matmul(module.map(a, b), self.vectors[a])
            for column, interval_id in enumerate(self._labels[a]):
                if interval_id in self._labels[b]:
                    expected = self.vector(b, interval_id)
                else:
                    expected = la.zeros(module.dims[b], 1)[:, 0]
                if not la.equal(image[:, column], expected):
                    raise DecompositionError(
                        f'summand {interval_id} is not carried along arrow '
                        f'{module.poset.label(a)}->{module.poset.label(b)}',
                        402)
        return True

    def with_vectors(self, vectors):
        return CoherentBasis(self.summands, vectors)


def module_from_barcode(b):
    """Direct sum of the interval modules of b, with its standard coherent
    basis."""
    poset = b.poset
    summands = b.intervals()
    labels = [[index for index, s in enumerate(summands) if s.contains(k)]
              for k in poset.points()]
    dims = [len(l) for l in labels]
    maps = {}
    for a, c in poset.arrows():
        matrix = la.zeros(dims[c], dims[a])
        for column, interval_id in enumerate(labels[a]):
            if interval_id in labels[c]:
                matrix[labels[c].index(interval_id), column] = 1
        maps[(a, c)] = matrix
    module = pm.PersistenceModule(poset, dims, maps)
    basis = CoherentBasis(summands, [la.identity(d) for d in dims])
    return module, basis

def interval_module(interval):
    module, _ = module_from_barcode(Barcode(interval.poset, [interval]))
    return module

def canonical_map(i, j):
    """The canonical morphism I -> J (identity on the overlap) between
    interval modules, or the zero morphism when hom_dim(I, J) = 0."""
    source, target = interval_module(i), interval_module(j)
    if not hom_dim(i, j):
        return pm.Morphism.zero(source, target)
    components = []
    for k in i.poset.points():
        value = 1 if (i.contains(k) and j.contains(k)) else 0
        components.append(la.zeros(target.dims[k], source.dims[k]) + value)
    return pm.Morphism(source, target, components)


def coherent_decomposition(m):
    """Barcode and coherent basis of a module on an ordered linear poset by
    left-to-right reduction. Older vectors (earlier birth, then smaller
    label) are added to younger ones, never the reverse."""
    if m.poset.kind != 'linear':
        raise DecompositionError('grid modules are not decomposed')
    require_ordered(m.poset)
    p = la.field_prime()
    n = m.poset.size
    birth = {}
    death = {}
    # vectors[label][k]: vector of that label at point k
    vectors = {}
    alive = []
    next_label = 0

    def born(columns, k):
        nonlocal next_label
        for column in range(columns.shape[1]):
            birth[next_label] = k
            vectors[next_label] = {k: columns[:, column] % p}
            alive.append(next_label)
            next_label += 1

    born(la.identity(m.dims[0]), 0)
    for k in range(n - 1):
        arrow = la.matmul(m.map(k, k + 1),
                          _columns(vectors, alive, k, m.dims[k]))
        pivot_of_row = {}
        survivors = []
        for position, label in enumerate(alive):
            column = arrow[:, position].copy()
            while True:
                nonzero = np.nonzero(column)[0]
                if nonzero.size == 0:
                    break
                low = int(nonzero[-1])
                if low not in pivot_of_row:
                    break
                older, older_column = pivot_of_row[low]
                factor = (column[low] * la.inverse_scalar(older_column[low])) % p
                column = (column - factor * older_column) % p
                for j in range(birth[label], k + 1):
                    vectors[label][j] = (vectors[label][j]
                                         - factor * vectors[older][j]) % p
            if np.any(column):
                pivot_of_row[int(np.nonzero(column)[0][-1])] = (label, column)
                survivors.append((label, column))
            else:
                death[label] = k
        alive = [label for label, _ in survivors]
        for label, column in survivors:
            vectors[label][k + 1] = column
        current = _columns(vectors, alive, k + 1, m.dims[k + 1])
        born(la.extend_to_basis(current, m.dims[k + 1]), k + 1)
    for label in alive:
        death[label] = n - 1

    order = sorted(birth, key=lambda label: (birth[label], death[label], label))
    summands = [Interval(m.poset, birth[label], death[label])
                for label in order]
    basis_vectors = []
    for k in range(n):
        labels_here = [label for label in order
                       if birth[label] <= k <= death[label]]
        basis_vectors.append(_columns(vectors, labels_here, k, m.dims[k]))
    basis = CoherentBasis(summands, basis_vectors)
    return Barcode(m.poset, summands), basis

def _columns(vectors, labels, k, dim):
    if not labels:
        return la.zeros(dim, 0)
    return np.stack([vectors[label][k] for label in labels], axis=1)


def segment_rank(m, i, j):
    """Rank of the map from the limit to the colimit of M restricted to the
    segment [i..j] of a linear poset (any orientation)."""
    if m.poset.kind != 'linear':
        raise DecompositionError('segment ranks need a linear poset')
    if not 0 <= i <= j < m.poset.size:
        raise PosetError(f'[{i}, {j}] is not a segment', 204)
    offsets = {}
    total = 0
    for k in range(i, j + 1):
        offsets[k] = total
        total += m.dims[k]
    if total == 0:
        return 0
    arrows = [m.poset.edge_arrow(k) for k in range(i, j)]
    # Sections: v_b = M(a -> b) v_a for every arrow in the segment
    constraint_rows = []
    relation_columns = []
    for a, b in arrows:
        matrix = m.map(a, b)
        rows = la.zeros(m.dims[b], total)
        rows[:, offsets[a]:offsets[a] + m.dims[a]] = matrix
        rows[:, offsets[b]:offsets[b] + m.dims[b]] = (-la.identity(m.dims[b]))
        constraint_rows.append(rows % la.field_prime())
        relation = la.zeros(total, m.dims[a])
        relation[offsets[a]:offsets[a] + m.dims[a], :] = la.identity(m.dims[a])
        relation[offsets[b]:offsets[b] + m.dims[b], :] = -matrix
        relation_columns.append(relation % la.field_prime())
    if constraint_rows:
        sections = la.kernel_basis(np.concatenate(constraint_rows, axis=0))
        relations = np.concatenate(relation_columns, axis=1)
    else:
        sections = la.identity(total)
        relations = la.zeros(total, 0)
    start = la.zeros(total, sections.shape[1])
    start[offsets[i]:offsets[i] + m.dims[i], :] = (
        sections[offsets[i]:offsets[i] + m.dims[i], :])
    return (la.rank(np.concatenate([start, relations], axis=1))
            - la.rank(relations))

def segment_rank_table(m):
    n = m.poset.size
    return {(i, j): segment_rank(m, i, j)
            for i in range(n) for j in range(i, n)}

def barcode_from_segment_ranks(poset, ranks):
    """Inclusion-exclusion over segment endpoints."""
    n = poset.size

    def rk(i, j):
        if i < 0 or j >= n:
            return 0
        return ranks[(i, j)]

    barcode = Barcode(poset)
    for i in range(n):
        for j in range(i, n):
            multiplicity = rk(i, j) - rk(i - 1, j) - rk(i, j + 1) + rk(i - 1, j + 1)
            if multiplicity < 0:
                raise DecompositionError('negative multiplicity from segment '
                                         f'ranks at [{i}, {j}]')
            barcode.add(Interval(poset, i, j), multiplicity)
    return barcode

def decompose(m, method='auto'):
    """Barcode of a module over a linear poset. method is 'reduction'
    (ordered posets only), 'segment' or 'auto' (reduction when the poset is
    ordered)."""
    if m.poset.kind != 'linear':
        raise DecompositionError('grid modules are not decomposed')
    if method == 'auto':
        method = 'reduction' if m.poset.is_ordered else 'segment'
    if method == 'reduction':
        barcode, _ = coherent_decomposition(m)
        return barcode
    if method == 'segment':
        return barcode_from_segment_ranks(m.poset, segment_rank_table(m))
    raise DecompositionError(f'unknown decomposition method {method!r}')

def model_basis(m):
    """Standard coherent basis of m when m is written exactly as the model
    of its barcode (see module_from_barcode), else None."""
    model, basis = module_from_barcode(decompose(m))
    return basis if model == m else None


class IntervalMorphism:
    """Scalars f_{j,k} of a morphism between direct sums of intervals:
    coefficients[j, k] belongs to target summand j and source summand k."""

    def __init__(self, source_summands, target_summands, coefficients):
        self.source_summands = tuple(source_summands)
        self.target_summands = tuple(target_summands)
        coefficients = np.asarray(coefficients, dtype=np.int64)
        shape = (len(self.target_summands), len(self.source_summands))
        if coefficients.size == 0:
            coefficients = la.zeros(*shape)
        if coefficients.shape != shape:
            raise DecompositionError(f'coefficient matrix has shape '
                                     f'{coefficients.shape}, expected {shape}',
                                     402)
        self.coefficients = coefficients % la.field_prime()
        for j, target in enumerate(self.target_summands):
            for k, source in enumerate(self.source_summands):
                if self.coefficients[j, k] and not hom_dim(source, target):
                    raise DecompositionError(
                        f'nonzero coefficient from {source.label()} to '
                        f'{target.label()} without a nonzero map', 402)

    def coefficient(self, j, k):
        return int(self.coefficients[j, k])

    def nonzero_targets(self, k):
        return [j for j in range(len(self.target_summands))
                if self.coefficients[j, k]]

    def nonzero_sources(self, j):
        return [k for k in range(len(self.source_summands))
                if self.coefficients[j, k]]

    def to_morphism(self, source, target, src_basis, tgt_basis):
        """Pointwise morphism with these coefficients in the given bases."""
        components = []
        for c in source.poset.points():
            src_labels = src_basis.labels(c)
            tgt_labels = tgt_basis.labels(c)
            local = la.zeros(len(tgt_labels), len(src_labels))
            for r, j in enumerate(tgt_labels):
                for s, k in enumerate(src_labels):
                    local[r, s] = self.coefficients[j, k]
            components.append(la.matmul_chain(
                tgt_basis.vectors[c], local, la.inverse(src_basis.vectors[c])))
        return pm.Morphism(source, target, components)

    def __eq__(self, other):
        return (isinstance(other, IntervalMorphism)
                and self.source_summands == other.source_summands
                and self.target_summands == other.target_summands
                and la.equal(self.coefficients, other.coefficients))


def to_interval_coordinates(f, src_basis, tgt_basis):
    """Express f in the given coherent bases of its source and target."""
    src_basis.validate(f.source)
    tgt_basis.validate(f.target)
    coefficients = la.zeros(len(tgt_basis.summands), len(src_basis.summands))
    seen = set()
    for c in f.source.poset.points():
        local = la.matmul_chain(la.inverse(tgt_basis.vectors[c]),
                                f.components[c], src_basis.vectors[c])
        for r, j in enumerate(tgt_basis.labels(c)):
            for s, k in enumerate(src_basis.labels(c)):
                value = local[r, s]
                if (j, k) in seen:
                    if value != coefficients[j, k]:
                        raise DecompositionError(
                            f'coefficient of summand {k} -> {j} changes '
                            'along the overlap', 402)
                else:
                    seen.add((j, k))
                    coefficients[j, k] = value
    return IntervalMorphism(src_basis.summands, tgt_basis.summands,
                            coefficients)


@dataclass(frozen=True)
class DecomposedMorphism:
    """A morphism together with coherent bases of its source and target and
    its coefficients in these bases."""
    morphism: pm.Morphism
    src_basis: CoherentBasis
    tgt_basis: CoherentBasis
    coordinates: IntervalMorphism
    operations: tuple = field(default=())

    @property
    def coefficients(self):
        return self.coordinates.coefficients


def decompose_morphism(f, src_basis=None, tgt_basis=None):
    if src_basis is None:
        _, src_basis = coherent_decomposition(f.source)
    if tgt_basis is None:
        _, tgt_basis = coherent_decomposition(f.target)
    return DecomposedMorphism(f, src_basis, tgt_basis,
                              to_interval_coordinates(f, src_basis, tgt_basis))

def change_basis(d, side, lower_id, upper_id, k=1, l=0):
    """Replace summand upper_id (J) of the source or target by the
    combination k * J + l * I on the overlap with I = summand lower_id
    (k * J outside the overlap). Needs I <= J with I and J intersecting,
    i.e. a nonzero map J -> I. Returns a new DecomposedMorphism; the
    morphism itself is unchanged."""
    if side not in ('source', 'target'):
        raise DecompositionError(f'side must be source or target, got {side!r}')
    basis = d.src_basis if side == 'source' else d.tgt_basis
    module = d.morphism.source if side == 'source' else d.morphism.target
    summands = basis.summands
    for interval_id in (lower_id, upper_id):
        if not 0 <= interval_id < len(summands):
            raise DecompositionError(f'no summand {interval_id}', 403)
    if lower_id == upper_id:
        raise DecompositionError('a summand cannot be combined with itself',
                                 403)
    lower, upper = summands[lower_id], summands[upper_id]
    if not hom_dim(upper, lower):
        raise DecompositionError(
            f'{lower.label()} <= {upper.label()} with nonempty overlap '
            'does not hold', 403)
    k = int(k) % la.field_prime()
    l = int(l) % la.field_prime()
    if k == 0:
        raise DecompositionError('scalar k must be nonzero', 403)
    vectors = []
    for c in module.poset.points():
        v = basis.vectors[c].copy()
        if upper.contains(c):
            column = basis.column(c, upper_id)
            new = k * v[:, column]
            if lower.contains(c):
                new = new + l * basis.vector(c, lower_id)
            v[:, column] = new % la.field_prime()
        vectors.append(v)
    new_basis = basis.with_vectors(vectors)
    new_basis.validate(module)
    if side == 'source':
        src, tgt = new_basis, d.tgt_basis
    else:
        src, tgt = d.src_basis, new_basis
    note = (f'{side} summand {upper_id} {upper.label()} := '
            f'{k}*{upper_id} + {l}*{lower_id} {lower.label()}')
    return replace(d, src_basis=src, tgt_basis=tgt,
                   coordinates=to_interval_coordinates(d.morphism, src, tgt),
                   operations=d.operations + (note,))
