# -*- coding: utf-8 -*-

# ==============================================================================
#   pmdist, ver. 1.0
#   Exact algebraic Wasserstein distances for persistence modules
#   This software is licensed under the terms of the MIT License.
# ==============================================================================

"""Distances between interval modules, p-Wasserstein distances on
persistence diagrams and on interval decomposable modules, bounds for
d_mu and witnessing zigzags.

Conventions:
- p is a positive integer or math.inf. For finite p all comparisons are
  made on p-th powers, which stay rational.
- Diagram points use the half-open convention: the interval lo..hi becomes
  (c_0 + mu(points before lo), c_0 + mu(points up to hi)), so that
  death - birth = mu(I) and the 1-norm distance of two overlapping
  intervals is mu(I sym J).
- The diagonal cost of a point is death - birth.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

import exact_linalg as la
import persistence_module as pm
import utils
from assignment import bottleneck_assignment, min_cost_assignment
from decomposition import (canonical_map, coherent_decomposition, decompose,
                           hom_dim, interval_module, model_basis)
from index_poset import (Interval, Measure, measure_of, require_ordered,
                         symmetric_difference_measure)
from utils import MetricError
from zigzag import BACKWARD, FORWARD, Zigzag, ZigzagStep, zigzag_cost


def parse_exponent(p):
    """Return p as a positive int or math.inf."""
    if isinstance(p, str):
        text = p.strip().lower()
        if text in ('inf', 'infinity', '∞'):
            return math.inf
        if not text.isdigit():
            raise MetricError(f'p must be a positive integer or inf, got {p!r}')
        p = int(text)
    if p == math.inf:
        return math.inf
    if isinstance(p, bool) or not isinstance(p, (int, np.integer)) or p < 1:
        raise MetricError(f'p must be a positive integer or inf, got {p!r}')
    return int(p)

def format_exponent(p):
    return 'inf' if p == math.inf else str(p)


def _difference(a, b):
    if math.isinf(a) or math.isinf(b):
        if a == b:
            raise MetricError(f'{a} - {b}', 502)
        return math.inf
    return abs(a - b)


@dataclass(frozen=True)
class DiagramPoint:
    birth: object
    death: object

    def __post_init__(self):
        if self.birth > self.death:
            raise MetricError(f'birth {self.birth} exceeds death {self.death}')

    @property
    def persistence(self):
        return _difference(self.death, self.birth)

    def distance(self, other):
        """1-norm distance."""
        return (_difference(self.birth, other.birth)
                + _difference(self.death, other.death))

    def diagonal_distance(self):
        return self.persistence

    def label(self):
        def text(x):
            return str(x) if math.isinf(x) else utils.format_rational(x)
        return f'({text(self.birth)}, {text(self.death)})'


def diagram_point(interval, mu=None):
    if mu is None:
        mu = Measure.counting(interval.poset)
    interval.poset.check_same(mu.poset)
    base = interval.poset.coords[0]
    birth = base + mu.of_points(range(interval.lo))
    death = birth + measure_of(interval, mu)
    return DiagramPoint(birth, death)

def diagram(barcode, mu=None):
    return [diagram_point(interval, mu) for interval in barcode.intervals()]


def d_interval(i, j, mu):
    """d_mu between interval modules; j = None stands for the zero module."""
    if j is None:
        return measure_of(i, mu)
    return symmetric_difference_measure(i, j, mu)

def _shrink_step(current, smaller):
    """Sub or quotient step between two interval modules, whichever the
    arrow at the trimmed end allows."""
    if hom_dim(current, smaller):
        return ZigzagStep(canonical_map(current, smaller), FORWARD)
    return ZigzagStep(canonical_map(smaller, current), BACKWARD)

def _shrink_to(i, core):
    """Zigzag from I to the interval module of core (core inside I): first
    the left end, then the right end."""
    steps = []
    current = i
    for target in (Interval(i.poset, core.lo, i.hi), core):
        if target != current:
            steps.append(_shrink_step(current, target))
            current = target
    return Zigzag(interval_module(i), steps)

def d_interval_witness(i, j):
    """Zigzag from I to J (or to zero when j is None) whose cost is
    mu(I sym J)."""
    start = interval_module(i)
    if j is None:
        zero = pm.PersistenceModule.zero(i.poset)
        return Zigzag(start, [(pm.Morphism.zero(start, zero), FORWARD)])
    overlap = i.intersection(j)
    if overlap is None:
        return Zigzag.through_zero(start, interval_module(j))
    return _shrink_to(i, overlap).concatenate(_shrink_to(j, overlap).reversed())


@dataclass
class WassersteinResult:
    """Optimal matching between two finite families of items (diagram
    points, intervals or declared parts). pairs holds (a, b, cost),
    unmatched_a and unmatched_b hold (index, cost) of the items matched to
    the diagonal or to zero."""
    p: object
    value_pth_power: Fraction
    pairs: list = field(default_factory=list)
    unmatched_a: list = field(default_factory=list)
    unmatched_b: list = field(default_factory=list)
    items_a: list = field(default_factory=list)
    items_b: list = field(default_factory=list)

    def cost_vector(self):
        return ([cost for _, _, cost in self.pairs]
                + [cost for _, cost in self.unmatched_a]
                + [cost for _, cost in self.unmatched_b])

    def exact_value(self):
        """The distance itself when it is rational, else None."""
        if self.p == math.inf or self.p == 1:
            return self.value_pth_power
        root = []
        for part in (self.value_pth_power.numerator,
                     self.value_pth_power.denominator):
            r = round(part ** (1.0 / self.p))
            candidates = [c for c in (r - 1, r, r + 1)
                          if c >= 0 and c ** self.p == part]
            if not candidates:
                return None
            root.append(candidates[0])
        return Fraction(root[0], root[1])

    def value_root(self, digits=12):
        value = self.exact_value()
        if value is not None:
            return utils.format_rational(value)
        return utils.decimal_string(
            float(self.value_pth_power) ** (1.0 / self.p), digits)


def lp_norm_of(costs, p):
    """Sum of c^p for finite p, max c for p = inf (the scale of
    WassersteinResult.value_pth_power)."""
    p = parse_exponent(p)
    costs = list(costs)
    if p == math.inf:
        return max(costs, default=Fraction(0))
    return sum((Fraction(c) ** p for c in costs), Fraction(0))

def _solve(p, pair_cost, diag_a, diag_b, items_a=(), items_b=()):
    """Diagonal-augmented assignment. Rows are the items of A followed by
    one diagonal slot per item of B; columns are the items of B followed by
    one diagonal slot per item of A."""
    p = parse_exponent(p)
    na, nb = len(diag_a), len(diag_b)

    def scale(c):
        return c if p == math.inf else c ** p

    size = na + nb
    cost = [[None] * size for _ in range(size)]
    for a in range(na):
        for b in range(nb):
            cost[a][b] = scale(pair_cost[a][b])
        cost[a][nb + a] = scale(diag_a[a])
    for b in range(nb):
        cost[na + b][b] = scale(diag_b[b])
        for a in range(na):
            cost[na + b][nb + a] = Fraction(0)
    if p == math.inf:
        value, assignment = bottleneck_assignment(cost)
    else:
        value, assignment = min_cost_assignment(cost)
    result = WassersteinResult(p, Fraction(value), items_a=list(items_a),
                               items_b=list(items_b))
    for a in range(na):
        column = assignment[a]
        if column < nb:
            result.pairs.append((a, column, pair_cost[a][column]))
        else:
            result.unmatched_a.append((a, diag_a[a]))
    for b in range(nb):
        if assignment[na + b] == b:
            result.unmatched_b.append((b, diag_b[b]))
    return result

def ground_cost_diagram_points(dgm_a, dgm_b):
    return [[x.distance(y) for y in dgm_b] for x in dgm_a]

def wasserstein_diagrams(p, dgm_a, dgm_b):
    dgm_a, dgm_b = list(dgm_a), list(dgm_b)
    return _solve(p, ground_cost_diagram_points(dgm_a, dgm_b),
                  [x.diagonal_distance() for x in dgm_a],
                  [y.diagonal_distance() for y in dgm_b], dgm_a, dgm_b)

def wasserstein_barcodes(p, barcode_a, barcode_b, mu):
    """W_p(d_mu) between the direct sums of the intervals of two barcodes;
    item indices are interval ids."""
    a, b = barcode_a.intervals(), barcode_b.intervals()
    return _solve(p, [[d_interval(i, j, mu) for j in b] for i in a],
                  [d_interval(i, None, mu) for i in a],
                  [d_interval(j, None, mu) for j in b], a, b)

def wasserstein_modules(p, m, n, mu):
    m.poset.check_same(n.poset)
    m.poset.check_same(mu.poset)
    return wasserstein_barcodes(p, decompose(m), decompose(n), mu)


def _coherent(m):
    """Barcode and coherent basis of m, or (barcode, None) when m is a
    module over a zigzag poset that is not literally its barcode model."""
    if m.poset.is_ordered:
        return coherent_decomposition(m)
    return decompose(m), model_basis(m)

def _iso_from_sum(total, ids, basis, module):
    """Isomorphism from the direct sum of summands ids (in that order) to
    module, sending every summand to its coherent basis vectors."""
    components = []
    for k in module.poset.points():
        columns = [basis.vector(k, index) for index in ids
                   if basis.summands[index].contains(k)]
        if columns:
            components.append(np.stack(columns, axis=1))
        else:
            components.append(la.zeros(module.dims[k], 0))
    return pm.Morphism(total, module, components)

def _pad(zigzag, length):
    """Spread the steps of zigzag over the alternating pattern
    forward, backward, forward, ... of the given length, filling the
    other slots with identities."""
    steps = []
    current = zigzag.start
    pending = list(zigzag.steps)
    for slot in range(length):
        direction = FORWARD if slot % 2 == 0 else BACKWARD
        if pending and pending[0].direction == direction:
            step = pending.pop(0)
            steps.append(step)
            current = step.right
        else:
            steps.append(ZigzagStep(pm.Morphism.identity(current), direction))
    if pending:
        raise MetricError('zigzag does not fit the padding pattern', 503)
    return steps

def _zero_witness(i, side):
    """I -> 0 for an M summand, 0 <- J for an N summand."""
    module = interval_module(i)
    zero = pm.PersistenceModule.zero(i.poset)
    if side == 'a':
        return Zigzag(module, [(pm.Morphism.zero(module, zero), FORWARD)])
    return Zigzag(zero, [(pm.Morphism.zero(module, zero), BACKWARD)])

def matching_witness(result):
    """Direct sum of the interval witnesses of a W_1 matching of two
    barcodes: a zigzag from the direct sum of the A intervals (in id order)
    to a direct sum of the B intervals. Returns the zigzag and the order of
    the B ids at its end."""
    partner = {a: b for a, b, _ in result.pairs}
    pieces = []
    end_ids = []
    for a, interval in enumerate(result.items_a):
        if a in partner:
            pieces.append(d_interval_witness(interval,
                                             result.items_b[partner[a]]))
            end_ids.append(partner[a])
        else:
            pieces.append(_zero_witness(interval, 'a'))
    for b, _ in result.unmatched_b:
        pieces.append(_zero_witness(result.items_b[b], 'b'))
        end_ids.append(b)
    if not pieces:
        return None, end_ids
    length = 2 * max(len(piece) for piece in pieces)
    padded = [_pad(piece, length) for piece in pieces]
    start, _, _ = pm.direct_sum([piece.start for piece in pieces])
    steps = []
    for slot in range(length):
        direction = padded[0][slot].direction
        morphism = pm.direct_sum_morphisms(
            [piece[slot].morphism for piece in padded])
        steps.append(ZigzagStep(morphism, direction))
    return Zigzag(start, steps), end_ids

def w1_matching_zigzag(m, n, mu):
    """W_1(d_mu)(M, N) together with a zigzag from M to N of that cost, for
    interval decomposable modules on a linear poset. The value is an upper
    bound for d_mu(M, N); see d_mu_exact_decomposable for ordered posets.
    On zigzag posets the zigzag runs between the barcode models unless the
    modules are given as barcode models."""
    m.poset.check_same(n.poset)
    barcode_m, basis_m = _coherent(m)
    barcode_n, basis_n = _coherent(n)
    result = wasserstein_barcodes(1, barcode_m, barcode_n, mu)
    witness, end_ids = matching_witness(result)
    if witness is None:
        return result.value_pth_power, Zigzag(m)
    steps = list(witness.steps)
    start = witness.start
    if basis_m is not None:
        iso = _iso_from_sum(witness.start, range(len(barcode_m)), basis_m, m)
        steps.insert(0, ZigzagStep(iso, BACKWARD))
        start = m
    if basis_n is not None:
        iso = _iso_from_sum(witness.end, end_ids, basis_n, n)
        steps.append(ZigzagStep(iso, FORWARD))
    return result.value_pth_power, Zigzag(start, steps)

def d_mu_exact_decomposable(m, n, mu):
    """d_mu(M, N) = W_1(d_mu)(M, N) on an ordered poset, with a witnessing
    zigzag."""
    require_ordered(m.poset)
    return w1_matching_zigzag(m, n, mu)


@dataclass
class Bracket:
    """lower <= d_mu(M, N) <= upper; witness realizes upper."""
    lower: Fraction
    upper: Fraction
    witness_name: str = 'through-zero'
    witness: object = None

    def __iter__(self):
        return iter((self.lower, self.upper))

    @property
    def is_exact(self):
        return self.lower == self.upper


def _oriented_hint(hint, m, n, index):
    if not isinstance(hint, Zigzag):
        raise MetricError(f'hint {index} is not a zigzag', 503)
    if hint.start == m and hint.end == n:
        return hint
    if hint.start == n and hint.end == m:
        return hint.reversed()
    raise MetricError(f'hint {index} does not connect the two modules', 503)

def d_mu_bracket(m, n, mu, hints=()):
    m.poset.check_same(n.poset)
    m.poset.check_same(mu.poset)
    lower, upper = pm.hilbert_bounds(m, n, mu)
    bracket = Bracket(lower, upper, 'through-zero', Zigzag.through_zero(m, n))
    for index, hint in enumerate(hints):
        hint = _oriented_hint(hint, m, n, index)
        cost = zigzag_cost(hint, mu)
        if cost < bracket.upper:
            bracket.upper = cost
            bracket.witness_name = f'hint {index}'
            bracket.witness = hint
    if m.poset.kind == 'linear':
        value, witness = w1_matching_zigzag(m, n, mu)
        if m.poset.is_ordered:
            return Bracket(value, value, 'W1 matching', witness)
        if value < bracket.upper:
            bracket.upper = value
            bracket.witness_name = 'W1 matching'
            bracket.witness = witness
    if bracket.lower > bracket.upper:
        raise MetricError('lower bound exceeds upper bound', 503)
    return bracket


def wp_lower_bound_indecomposable(p, parts_m, parts_n, mu, whole_m=None,
                                  whole_n=None):
    """Optimal matching of declared indecomposable parts with the Hilbert
    lower bounds as ground costs; value_pth_power bounds W_p(d_mu)^p from
    below."""
    parts_m, parts_n = list(parts_m), list(parts_n)
    for part in parts_m + parts_n:
        part.poset.check_same(mu.poset)
    for whole, parts in ((whole_m, parts_m), (whole_n, parts_n)):
        if whole is None:
            continue
        total = tuple(sum(part.dims[k] for part in parts)
                      for k in mu.poset.points())
        if total != whole.dims:
            raise MetricError('declared parts do not add up to the module '
                              'dimensions', 504)

    def hilbert_lower(a, b):
        return mu.integrate([abs(x - y) for x, y in zip(a.dims, b.dims)])

    return _solve(p, [[hilbert_lower(a, b) for b in parts_n] for a in parts_m],
                  [pm.integral(a, mu) for a in parts_m],
                  [pm.integral(b, mu) for b in parts_n], parts_m, parts_n)


def w_inf_via_w1_matching(result_w1):
    """Largest cost used by a W_1-optimal matching; never below W_inf."""
    return max(result_w1.cost_vector(), default=Fraction(0))
