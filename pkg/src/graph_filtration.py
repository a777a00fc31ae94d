# -*- coding: utf-8 -*-

# ==============================================================================
#   pmdist, ver. 1.0
#   Exact algebraic Wasserstein distances for persistence modules
#   This software is licensed under the terms of the MIT License.
# ==============================================================================

"""H_0 of graph filtrations.

A filtration assigns to every vertex and edge of a graph an antichain of
poset points; the simplex is present at every point above one of them. At
each point, H_0 is the free vector space on the connected components of the
subgraph present there. Components are ordered by their smallest vertex
(vertex order is the order of declaration), and the structure map of an
arrow a -> b sends the component of a vertex v at a to the component of v
at b.
"""

from networkx.utils import UnionFind

import exact_linalg as la
import persistence_module as pm
from utils import ModuleError


class GraphFiltration:
    """Vertices and edges with their appearance antichains."""

    def __init__(self, poset, vertices, edges=None):
        self.poset = poset
        # vertices: name -> list of points; edges: name -> (u, v, points)
        self.vertices = {name: tuple(points)
                         for name, points in vertices.items()}
        self.edges = {}
        for name, (u, v, points) in (edges or {}).items():
            self.edges[name] = (u, v, tuple(points))
        self.vertex_names = list(self.vertices)
        self.validate()

    def validate(self):
        for name, points in self.vertices.items():
            self._check_antichain('vertex ' + name, points)
        for name, (u, v, points) in self.edges.items():
            self._check_antichain('edge ' + name, points)
            for end in (u, v):
                if end not in self.vertices:
                    raise ModuleError(f'edge {name} uses unknown vertex {end}',
                                      305)
                for q in points:
                    if not self.present(self.vertices[end], q):
                        raise ModuleError(
                            f'edge {name} appears at {self.poset.label(q)} '
                            f'before its vertex {end}', 305)

    def _check_antichain(self, what, points):
        if not points:
            raise ModuleError(f'{what} never appears', 305)
        for p in points:
            if not 0 <= p < self.poset.size:
                raise ModuleError(f'{what}: point {p} out of range', 305)
        for i, p in enumerate(points):
            for q in points[i + 1:]:
                if p == q or self.poset.leq(p, q) or self.poset.leq(q, p):
                    raise ModuleError(f'{what}: appearance set is not an '
                                      'antichain', 305)

    def present(self, points, k):
        return any(self.poset.leq(p, k) for p in points)

    def components(self, k):
        """Connected components at point k, each a sorted list of vertex
        positions, ordered by their smallest vertex."""
        alive = [i for i, name in enumerate(self.vertex_names)
                 if self.present(self.vertices[name], k)]
        union_find = UnionFind(alive)
        position = {name: i for i, name in enumerate(self.vertex_names)}
        for u, v, points in self.edges.values():
            if self.present(points, k):
                union_find.union(position[u], position[v])
        groups = [sorted(group) for group in union_find.to_sets()]
        return sorted(groups, key=lambda group: group[0])

    def contains(self, other):
        """True if every simplex of other is present in self wherever it is
        present in other."""
        for name, points in other.vertices.items():
            if name not in self.vertices:
                return False
            if not all(self.present(self.vertices[name], q) for q in points):
                return False
        for name, (u, v, points) in other.edges.items():
            if name not in self.edges or {u, v} != set(self.edges[name][:2]):
                return False
            if not all(self.present(self.edges[name][2], q) for q in points):
                return False
        return True


def _component_of(components):
    lookup = {}
    for index, group in enumerate(components):
        for vertex in group:
            lookup[vertex] = index
    return lookup

def h0_of_graph_filtration(filtration):
    poset = filtration.poset
    components = [filtration.components(k) for k in poset.points()]
    dims = [len(c) for c in components]
    maps = {}
    for a, b in poset.arrows():
        target = _component_of(components[b])
        matrix = la.zeros(dims[b], dims[a])
        for column, group in enumerate(components[a]):
            matrix[target[group[0]], column] = 1
        maps[(a, b)] = matrix
    return pm.PersistenceModule(poset, dims, maps)

def h0_inclusion_morphism(sub, sup):
    """Morphism H_0(sub) -> H_0(sup) induced by an inclusion of
    filtrations."""
    sub.poset.check_same(sup.poset)
    if not sup.contains(sub):
        raise ModuleError('filtration is not contained in the other', 305)
    source = h0_of_graph_filtration(sub)
    target = h0_of_graph_filtration(sup)
    position = {name: i for i, name in enumerate(sup.vertex_names)}
    components = []
    for k in sub.poset.points():
        target_lookup = _component_of(sup.components(k))
        matrix = la.zeros(target.dims[k], source.dims[k])
        for column, group in enumerate(sub.components(k)):
            vertex = position[sub.vertex_names[group[0]]]
            matrix[target_lookup[vertex], column] = 1
        components.append(matrix)
    return pm.Morphism(source, target, components)
