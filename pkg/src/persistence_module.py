# -*- coding: utf-8 -*-

# ==============================================================================
#   pmdist, ver. 1.0
#   Exact algebraic Wasserstein distances for persistence modules
#   This software is licensed under the terms of the MIT License.
# ==============================================================================

"""This module provides persistence modules and their morphisms over the
finite posets of index_poset.py, together with kernels, cokernels, images,
direct sums and the Hilbert-function bounds.

A module stores one dimension per point and one matrix per generating arrow
(a, b), of shape dims[b] x dims[a]. A morphism stores one component matrix
per point. Both are validated when they are constructed (shapes, commuting
grid squares, naturality) and are not modified afterwards.
"""

import numpy as np

import exact_linalg as la
from utils import ModuleError, PosetError


class PersistenceModule:
    """Dimensions plus structure matrices over a linear or grid poset."""

    def __init__(self, poset, dims, maps=None, validate=True):
        self.poset = poset
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != poset.size:
            raise ModuleError(f'{poset.size} points need as many dimensions, '
                              f'got {len(self.dims)}')
        if any(d < 0 for d in self.dims):
            raise ModuleError('dimensions must be non-negative')
        maps = maps or {}
        unknown = set(maps) - set(poset.arrows())
        if unknown:
            raise ModuleError(f'no such arrows: {sorted(unknown)}')
        self._maps = {}
        for a, b in poset.arrows():
            rows, cols = self.dims[b], self.dims[a]
            if (a, b) in maps:
                matrix = np.asarray(maps[(a, b)], dtype=np.int64)
                if matrix.size == 0 and rows * cols == 0:
                    matrix = la.zeros(rows, cols)
                if matrix.shape != (rows, cols):
                    raise ModuleError(
                        f'map {poset.label(a)}->{poset.label(b)} has shape '
                        f'{matrix.shape}, expected {(rows, cols)}')
                self._maps[(a, b)] = matrix % la.field_prime()
            elif rows * cols == 0:
                self._maps[(a, b)] = la.zeros(rows, cols)
            else:
                raise ModuleError(f'missing map {poset.label(a)}->'
                                  f'{poset.label(b)}')
        if validate and poset.kind == 'grid':
            self.check_commutativity()

    @classmethod
    def zero(cls, poset):
        return cls(poset, [0] * poset.size)

    def check_commutativity(self):
        for p00, p10, p01, p11 in self.poset.squares():
            right_up = la.matmul(self.map(p10, p11), self.map(p00, p10))
            up_right = la.matmul(self.map(p01, p11), self.map(p00, p01))
            if not la.equal(right_up, up_right):
                raise ModuleError(f'square at {self.poset.label(p00)} does '
                                  'not commute', 302)

    def map(self, a, b):
        """Structure matrix of the generating arrow a -> b."""
        try:
            return self._maps[(a, b)]
        except KeyError:
            raise ModuleError(f'{a}->{b} is not a generating arrow')

    def maps(self):
        return dict(self._maps)

    def map_along(self, a, b):
        """Structure matrix M(a <= b) for comparable points a <= b."""
        if not self.poset.leq(a, b):
            raise PosetError(f'{self.poset.label(a)} is not below '
                             f'{self.poset.label(b)}')
        result = la.identity(self.dims[a])
        for u, v in _path(self.poset, a, b):
            result = la.matmul(self.map(u, v), result)
        return result

    def hilbert(self):
        return self.dims

    def is_zero(self):
        return not any(self.dims)

    def total_dim(self):
        return sum(self.dims)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, PersistenceModule):
            return NotImplemented
        return (self.poset == other.poset and self.dims == other.dims
                and all(la.equal(self._maps[arrow], other._maps[arrow])
                        for arrow in self._maps))

    def __hash__(self):
        return hash((self.poset, self.dims))

    def __repr__(self):
        return f'PersistenceModule({self.poset!r}, dims={list(self.dims)})'


def _path(poset, a, b):
    """Generating arrows of a path from a to b (a <= b)."""
    if poset.kind == 'linear':
        if a <= b:
            return [(k, k + 1) for k in range(a, b)]
        return [(k, k - 1) for k in range(a, b, -1)]
    ia, ja = poset.position(a)
    ib, jb = poset.position(b)
    path = [(poset.index(i, ja), poset.index(i + 1, ja)) for i in range(ia, ib)]
    path += [(poset.index(ib, j), poset.index(ib, j + 1))
             for j in range(ja, jb)]
    return path


class Morphism:
    """Natural transformation: one component matrix per poset point."""

    def __init__(self, source, target, components, validate=True):
        source.poset.check_same(target.poset)
        self.source = source
        self.target = target
        poset = source.poset
        if len(components) != poset.size:
            raise ModuleError(f'{poset.size} points need as many components, '
                              f'got {len(components)}')
        self.components = []
        for k, component in enumerate(components):
            shape = (target.dims[k], source.dims[k])
            matrix = np.asarray(component, dtype=np.int64)
            if matrix.size == 0 and shape[0] * shape[1] == 0:
                matrix = la.zeros(*shape)
            if matrix.shape != shape:
                raise ModuleError(f'component at {poset.label(k)} has shape '
                                  f'{matrix.shape}, expected {shape}')
            self.components.append(matrix % la.field_prime())
        self.components = tuple(self.components)
        if validate:
            self.check_naturality()

    @classmethod
    def identity(cls, m):
        return cls(m, m, [la.identity(d) for d in m.dims], validate=False)

    @classmethod
    def zero(cls, m, n):
        return cls(m, n, [la.zeros(n.dims[k], m.dims[k])
                          for k in m.poset.points()], validate=False)

    def check_naturality(self):
        for a, b in self.source.poset.arrows():
            lhs = la.matmul(self.target.map(a, b), self.components[a])
            rhs = la.matmul(self.components[b], self.source.map(a, b))
            if not la.equal(lhs, rhs):
                raise ModuleError(
                    'naturality fails on arrow '
                    f'{self.source.poset.label(a)}->'
                    f'{self.source.poset.label(b)}', 303)

    def component(self, k):
        return self.components[k]

    def ranks(self):
        return tuple(la.rank(c) for c in self.components)

    def is_mono(self):
        return all(r == d for r, d in zip(self.ranks(), self.source.dims))

    def is_epi(self):
        return all(r == d for r, d in zip(self.ranks(), self.target.dims))

    def is_zero(self):
        return all(la.is_zero(c) for c in self.components)

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and all(la.equal(a, b) for a, b in
                        zip(self.components, other.components)))

    def __repr__(self):
        return f'Morphism({self.source!r} -> {self.target!r})'


def compose(g, f):
    """g o f for f: L -> M and g: M -> N."""
    if f.target != g.source:
        raise ModuleError('morphisms are not composable')
    return Morphism(f.source, g.target,
                    [la.matmul(gk, fk) for gk, fk in
                     zip(g.components, f.components)], validate=False)

def hilbert(m):
    return m.hilbert()

def ker_coker_dims(f):
    """Pointwise dimensions of ker f and coker f."""
    ranks = f.ranks()
    ker = tuple(d - r for d, r in zip(f.source.dims, ranks))
    coker = tuple(d - r for d, r in zip(f.target.dims, ranks))
    return ker, coker

def hilbert_bounds(m, n, mu):
    """(lower, upper) bounds for d_mu(M, N) from the Hilbert functions."""
    m.poset.check_same(n.poset)
    m.poset.check_same(mu.poset)
    lower = mu.integrate([abs(a - b) for a, b in zip(m.dims, n.dims)])
    upper = mu.integrate([a + b for a, b in zip(m.dims, n.dims)])
    return lower, upper

def integral(m, mu):
    m.poset.check_same(mu.poset)
    return mu.integrate(m.dims)

def direct_sum(ms):
    """Direct sum with its injections and projections."""
    if not ms:
        raise ModuleError('direct sum of an empty list needs a poset')
    poset = ms[0].poset
    for m in ms[1:]:
        poset.check_same(m.poset)
    dims = [sum(m.dims[k] for m in ms) for k in poset.points()]
    maps = {arrow: la.block_diagonal([m.map(*arrow) for m in ms])
            for arrow in poset.arrows()}
    total = PersistenceModule(poset, dims, maps, validate=False)
    injections, projections = [], []
    offsets = [0] * poset.size
    for m in ms:
        inj, proj = [], []
        for k in poset.points():
            i = la.zeros(dims[k], m.dims[k])
            i[offsets[k]:offsets[k] + m.dims[k], :] = la.identity(m.dims[k])
            inj.append(i)
            proj.append(i.T.copy())
            offsets[k] += m.dims[k]
        injections.append(Morphism(m, total, inj, validate=False))
        projections.append(Morphism(total, m, proj, validate=False))
    return total, injections, projections

def direct_sum_morphisms(fs):
    """Block diagonal morphism between the direct sums of sources and
    targets."""
    source, _, _ = direct_sum([f.source for f in fs])
    target, _, _ = direct_sum([f.target for f in fs])
    components = [la.block_diagonal([f.components[k] for f in fs])
                  for k in source.poset.points()]
    return Morphism(source, target, components, validate=False)

def _structure_on_subspaces(module, bases):
    """Structure maps induced on a family of subspaces (given by column
    bases) that is closed under the structure maps of module."""
    maps = {}
    for a, b in module.poset.arrows():
        image = la.matmul(module.map(a, b), bases[a])
        x = la.solve_matrix(bases[b], image)
        if x is None:
            raise ModuleError('subspaces are not a submodule')
        maps[(a, b)] = x
    return maps

def image_factorize(f):
    """Factor f = mono o epi through its image module."""
    poset = f.source.poset
    bases = [la.column_space_basis(c) for c in f.components]
    image = PersistenceModule(
        poset, [b.shape[1] for b in bases],
        _structure_on_subspaces(f.target, bases), validate=False)
    epi_components = []
    for k in poset.points():
        e = la.solve_matrix(bases[k], f.components[k])
        epi_components.append(e)
    epi = Morphism(f.source, image, epi_components, validate=False)
    mono = Morphism(image, f.target, bases, validate=False)
    return epi, mono

def kernel_module(f):
    """ker f with its inclusion into the source."""
    poset = f.source.poset
    bases = [la.kernel_basis(c) for c in f.components]
    kernel = PersistenceModule(
        poset, [b.shape[1] for b in bases],
        _structure_on_subspaces(f.source, bases), validate=False)
    return kernel, Morphism(kernel, f.source, bases, validate=False)

def cokernel_module(f):
    """coker f with the quotient morphism from the target."""
    poset = f.target.poset
    complements, quotients = [], []
    for k in poset.points():
        image = la.column_space_basis(f.components[k])
        complement = la.extend_to_basis(image, f.target.dims[k])
        change = la.inverse(np.concatenate([image, complement], axis=1))
        complements.append(complement)
        quotients.append(change[image.shape[1]:, :])
    maps = {(a, b): la.matmul_chain(quotients[b], f.target.map(a, b),
                                    complements[a])
            for a, b in poset.arrows()}
    cokernel = PersistenceModule(
        poset, [c.shape[1] for c in complements], maps, validate=False)
    return cokernel, Morphism(f.target, cokernel, quotients, validate=False)

def random_perturbation(f, rng, k=None):
    """Copy of the component list of f with one entry changed (used by the
    naturality tests)."""
    components = [c.copy() for c in f.components]
    candidates = [j for j in range(len(components)) if components[j].size]
    if not candidates:
        return components
    if k is None:
        k = int(rng.choice(candidates))
    rows, cols = components[k].shape
    r, c = int(rng.integers(rows)), int(rng.integers(cols))
    shift = int(rng.integers(1, la.field_prime()))
    components[k][r, c] = (components[k][r, c] + shift) % la.field_prime()
    return components
