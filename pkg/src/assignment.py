# -*- coding: utf-8 -*-

# ==============================================================================
#   pmdist, ver. 1.0
#   Exact algebraic Wasserstein distances for persistence modules
#   This software is licensed under the terms of the MIT License.
# ==============================================================================

"""Exact assignment solvers on square cost matrices of Fractions.

A cost matrix is a list of rows; an entry None marks a forbidden pair.
min_cost_assignment is the Hungarian method with row and column potentials
(rows are added one at a time and an augmenting path is grown along the
reduced costs). bottleneck_assignment minimizes the largest cost used by a
perfect matching: binary search over the distinct costs, with a
Hopcroft-Karp feasibility test for each threshold.
"""

import math
from fractions import Fraction

import networkx as nx

from utils import MetricError


def _check_square(cost):
    n = len(cost)
    if any(len(row) != n for row in cost):
        raise MetricError('cost matrix must be square')
    return n

def min_cost_assignment(cost):
    """Return (total, assignment) with assignment[i] the column of row i."""
    n = _check_square(cost)
    if n == 0:
        return Fraction(0), []
    u = [Fraction(0)] * (n + 1)
    v = [Fraction(0)] * (n + 1)
    # row_of[j]: row matched to column j (1-based, 0 = free)
    row_of = [0] * (n + 1)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        row_of[0] = i
        j0 = 0
        minv = [math.inf] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = row_of[j0]
            delta = math.inf
            j1 = 0
            for j in range(1, n + 1):
                if used[j]:
                    continue
                entry = cost[i0 - 1][j - 1]
                if entry is not None:
                    current = entry - u[i0] - v[j]
                    if current < minv[j]:
                        minv[j] = current
                        way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            if delta == math.inf:
                raise MetricError('no perfect matching avoids the forbidden '
                                  'pairs')
            for j in range(n + 1):
                if used[j]:
                    u[row_of[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if row_of[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            row_of[j0] = row_of[j1]
            j0 = j1
    assignment = [-1] * n
    for j in range(1, n + 1):
        assignment[row_of[j] - 1] = j - 1
    total = sum((cost[i][assignment[i]] for i in range(n)), Fraction(0))
    return total, assignment

def _perfect_matching(cost, threshold):
    n = len(cost)
    graph = nx.Graph()
    rows = [('row', i) for i in range(n)]
    graph.add_nodes_from(rows, bipartite=0)
    graph.add_nodes_from((('col', j) for j in range(n)), bipartite=1)
    for i in range(n):
        for j in range(n):
            if cost[i][j] is not None and cost[i][j] <= threshold:
                graph.add_edge(('row', i), ('col', j))
    matching = nx.algorithms.bipartite.hopcroft_karp_matching(graph, rows)
    assignment = [matching.get(('row', i)) for i in range(n)]
    if any(col is None for col in assignment):
        return None
    return [col[1] for col in assignment]

def bottleneck_assignment(cost):
    """Return (value, assignment) minimizing the largest cost used."""
    n = _check_square(cost)
    if n == 0:
        return Fraction(0), []
    candidates = sorted({entry for row in cost for entry in row
                         if entry is not None})
    if not candidates or _perfect_matching(cost, candidates[-1]) is None:
        raise MetricError('no perfect matching avoids the forbidden pairs')
    lo, hi = 0, len(candidates) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _perfect_matching(cost, candidates[mid]) is None:
            lo = mid + 1
        else:
            hi = mid
    return candidates[lo], _perfect_matching(cost, candidates[lo])
