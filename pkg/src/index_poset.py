# -*- coding: utf-8 -*-

# ==============================================================================
#   pmdist, ver. 1.0
#   Exact algebraic Wasserstein distances for persistence modules
#   This software is licensed under the terms of the MIT License.
# ==============================================================================

"""This module provides the finite indexing posets, measures, intervals and
barcodes. Naming convention: points are referred to by their index k
(0..n-1); c_k is the coordinate of point k. On grids, point (i, j) has index
k = i * ny + j, where i counts along x and j along y, in the same way as the
tiles of a grid are numbered row by row.

Linear posets carry one orientation per edge. Edge k joins points k and k+1;
'f' (forward) gives the arrow k -> k+1, 'b' (backward) the arrow k+1 -> k.
A linear poset is ordered if all edges are forward. Grid posets only have
the covering arrows (i, j) -> (i+1, j) and (i, j) -> (i, j+1).
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import utils
from utils import PosetError


FORWARD = 'f'
BACKWARD = 'b'


def _strictly_increasing(coords, name):
    values = tuple(utils.parse_rational(c) for c in coords)
    for a, b in zip(values, values[1:]):
        if not a < b:
            raise PosetError(f'{name} not strictly increasing: {a} >= {b}')
    return values


class LinearPoset:
    """A linear quiver with n points and arbitrary edge orientations."""

    kind = 'linear'

    def __init__(self, coords, orientations=None):
        self.coords = _strictly_increasing(coords, 'coordinates')
        if not self.coords:
            raise PosetError('a poset needs at least one point')
        if orientations is None:
            orientations = FORWARD * (len(self.coords) - 1)
        orientations = ''.join(orientations)
        if len(orientations) != len(self.coords) - 1:
            raise PosetError(f'{len(self.coords)} points need '
                             f'{len(self.coords) - 1} orientations, '
                             f'got {len(orientations)}')
        if set(orientations) - {FORWARD, BACKWARD}:
            raise PosetError(f'orientations must be {FORWARD!r} or '
                             f'{BACKWARD!r}: {orientations!r}')
        self.orientations = orientations
        self._arrows = tuple(
            (k, k + 1) if o == FORWARD else (k + 1, k)
            for k, o in enumerate(self.orientations))

    @classmethod
    def integer(cls, n, orientations=None, start=0):
        """Points with coordinates start, start+1, ..., start+n-1."""
        return cls(range(start, start + n), orientations)

    @property
    def size(self):
        return len(self.coords)

    @property
    def is_ordered(self):
        return BACKWARD not in self.orientations

    def points(self):
        return range(self.size)

    def arrows(self):
        """Generating arrows (a, b), one per edge, in edge order."""
        return self._arrows

    def edge_arrow(self, k):
        return self._arrows[k]

    def leq(self, a, b):
        """a <= b iff every edge between a and b points from a towards b."""
        if a == b:
            return True
        if a < b:
            return all(o == FORWARD for o in self.orientations[a:b])
        return all(o == BACKWARD for o in self.orientations[b:a])

    def point_at(self, coord):
        coord = utils.parse_rational(coord)
        try:
            return self.coords.index(coord)
        except ValueError:
            raise PosetError(f'no point with coordinate {coord}')

    def label(self, k):
        return utils.format_rational(self.coords[k])

    def check_same(self, other):
        if self != other:
            raise PosetError('objects live on different posets', 202)

    def __eq__(self, other):
        return (isinstance(other, LinearPoset)
                and self.coords == other.coords
                and self.orientations == other.orientations)

    def __hash__(self):
        return hash(('linear', self.coords, self.orientations))

    def __repr__(self):
        return (f'LinearPoset({[self.label(k) for k in self.points()]}, '
                f'{self.orientations!r})')


class GridPoset:
    """Product of two finite chains with the coordinate-wise order."""

    kind = 'grid'
    is_ordered = False

    def __init__(self, x_coords, y_coords):
        self.x_coords = _strictly_increasing(x_coords, 'x coordinates')
        self.y_coords = _strictly_increasing(y_coords, 'y coordinates')
        if not self.x_coords or not self.y_coords:
            raise PosetError('a grid needs at least one point')
        self.nx = len(self.x_coords)
        self.ny = len(self.y_coords)
        arrows = []
        for i in range(self.nx):
            for j in range(self.ny):
                if i + 1 < self.nx:
                    arrows.append((self.index(i, j), self.index(i + 1, j)))
                if j + 1 < self.ny:
                    arrows.append((self.index(i, j), self.index(i, j + 1)))
        self._arrows = tuple(arrows)

    @property
    def size(self):
        return self.nx * self.ny

    def points(self):
        return range(self.size)

    def index(self, i, j):
        return i * self.ny + j

    def position(self, k):
        return divmod(k, self.ny)

    def arrows(self):
        return self._arrows

    def squares(self):
        """Unit squares as (lower left, right, up, upper right) indices."""
        return [(self.index(i, j), self.index(i + 1, j),
                 self.index(i, j + 1), self.index(i + 1, j + 1))
                for i in range(self.nx - 1) for j in range(self.ny - 1)]

    def leq(self, a, b):
        ia, ja = self.position(a)
        ib, jb = self.position(b)
        return ia <= ib and ja <= jb

    def point_at(self, coord):
        try:
            x, y = coord
            i = self.x_coords.index(utils.parse_rational(x))
            j = self.y_coords.index(utils.parse_rational(y))
        except (TypeError, ValueError):
            raise PosetError(f'no grid point with coordinates {coord}')
        return self.index(i, j)

    def label(self, k):
        i, j = self.position(k)
        return (f'({utils.format_rational(self.x_coords[i])},'
                f'{utils.format_rational(self.y_coords[j])})')

    def check_same(self, other):
        if self != other:
            raise PosetError('objects live on different posets', 202)

    def __eq__(self, other):
        return (isinstance(other, GridPoset)
                and self.x_coords == other.x_coords
                and self.y_coords == other.y_coords)

    def __hash__(self):
        return hash(('grid', self.x_coords, self.y_coords))

    def __repr__(self):
        return f'GridPoset({self.nx}x{self.ny})'


class Measure:
    """Non-negative rational weight per poset point."""

    def __init__(self, poset, weights, kind='weights', extent=None):
        self.poset = poset
        self.weights = tuple(utils.parse_rational(w) for w in weights)
        if len(self.weights) != poset.size:
            raise PosetError(f'{poset.size} points need as many weights, '
                             f'got {len(self.weights)}', 203)
        if any(w < 0 for w in self.weights):
            raise PosetError('weights must be non-negative', 203)
        self.kind = kind
        self.extent = extent

    @classmethod
    def counting(cls, poset):
        return cls(poset, [1] * poset.size, kind='counting')

    @classmethod
    def from_weights(cls, poset, weights):
        return cls(poset, weights, kind='weights')

    @classmethod
    def lebesgue(cls, poset, extent):
        """Lebesgue emulation: every point stands for the half-open cell
        between its coordinate and the next one (the last cell ends at
        extent). On grids the weight is the cell area."""
        if poset.kind == 'linear':
            extent = utils.parse_rational(extent)
            widths = _cell_widths(poset.coords, extent)
            return cls(poset, widths, kind='lebesgue', extent=extent)
        ex, ey = (utils.parse_rational(e) for e in extent)
        x_widths = _cell_widths(poset.x_coords, ex)
        y_widths = _cell_widths(poset.y_coords, ey)
        weights = [wx * wy for wx in x_widths for wy in y_widths]
        return cls(poset, weights, kind='lebesgue', extent=(ex, ey))

    @property
    def is_counting(self):
        return all(w == 1 for w in self.weights)

    def weight(self, k):
        return self.weights[k]

    def of_points(self, points):
        return sum((self.weights[k] for k in points), Fraction(0))

    def integrate(self, dims):
        """Integral of a dimension function (sequence of counts)."""
        if len(dims) != self.poset.size:
            raise PosetError('dimension function does not match the poset',
                             202)
        return sum((d * w for d, w in zip(dims, self.weights)), Fraction(0))

    def __eq__(self, other):
        return (isinstance(other, Measure) and self.poset == other.poset
                and self.weights == other.weights)

    def __repr__(self):
        return f'Measure({self.kind}, {self.poset!r})'


def _cell_widths(coords, extent):
    if extent <= coords[-1]:
        raise PosetError(f'extent {extent} must exceed the last coordinate '
                         f'{coords[-1]}', 203)
    ends = list(coords[1:]) + [extent]
    return [b - a for a, b in zip(coords, ends)]


@dataclass(frozen=True)
class Interval:
    """Contiguous index range lo..hi (inclusive) of a linear poset."""
    poset: LinearPoset
    lo: int
    hi: int

    def __post_init__(self):
        if not isinstance(self.poset, LinearPoset):
            raise PosetError('intervals live on linear posets', 204)
        if not (0 <= self.lo <= self.hi < self.poset.size):
            raise PosetError(f'[{self.lo}, {self.hi}] is not a nonempty '
                             f'range of 0..{self.poset.size - 1}', 204)

    def points(self):
        return range(self.lo, self.hi + 1)

    def contains(self, k):
        return self.lo <= k <= self.hi

    def indicator(self):
        return tuple(1 if self.contains(k) else 0
                     for k in self.poset.points())

    def intersection(self, other):
        """Intersection interval, or None if the intervals are disjoint."""
        self.poset.check_same(other.poset)
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            return None
        return Interval(self.poset, lo, hi)

    def sort_key(self):
        return (self.lo, self.hi)

    def label(self):
        return f'[{self.poset.label(self.lo)}, {self.poset.label(self.hi)}]'

    def __repr__(self):
        return f'Interval({self.lo}, {self.hi})'


class Barcode:
    """Multiset of intervals on one linear poset, stored as counts."""

    def __init__(self, poset, intervals=()):
        self.poset = poset
        self.counts = Counter()
        for interval in intervals:
            self.add(interval)

    @classmethod
    def from_counts(cls, poset, counts):
        barcode = cls(poset)
        for interval, multiplicity in counts.items():
            barcode.add(interval, multiplicity)
        return barcode

    def add(self, interval, multiplicity=1):
        self.poset.check_same(interval.poset)
        if multiplicity < 0:
            raise PosetError('negative multiplicity', 204)
        if multiplicity:
            self.counts[interval] += multiplicity

    def items(self):
        """(interval, multiplicity) pairs sorted by (lo, hi)."""
        return sorted(self.counts.items(), key=lambda item: item[0].sort_key())

    def intervals(self):
        """All intervals with repetitions, sorted by (lo, hi). The position
        in this list is the interval id used by coherent bases."""
        return [interval for interval, multiplicity in self.items()
                for _ in range(multiplicity)]

    def dims(self):
        dims = [0] * self.poset.size
        for interval, multiplicity in self.counts.items():
            for k in interval.points():
                dims[k] += multiplicity
        return tuple(dims)

    def total_measure(self, mu):
        return sum((multiplicity * measure_of(interval, mu)
                    for interval, multiplicity in self.counts.items()),
                   Fraction(0))

    def __len__(self):
        return sum(self.counts.values())

    def __eq__(self, other):
        return (isinstance(other, Barcode) and self.poset == other.poset
                and +self.counts == +other.counts)

    def __repr__(self):
        body = ', '.join(f'{i.label()}x{m}' for i, m in self.items())
        return f'Barcode({body})'


def measure_of(i, mu):
    """mu(I); an absent interval (None) has measure 0."""
    if i is None:
        return Fraction(0)
    i.poset.check_same(mu.poset)
    return mu.of_points(i.points())

def symmetric_difference_measure(i, j, mu):
    i.poset.check_same(j.poset)
    i.poset.check_same(mu.poset)
    points = set(i.points()) ^ set(j.points())
    return mu.of_points(points)

def require_ordered(poset):
    if poset.kind != 'linear' or not poset.is_ordered:
        raise PosetError('operation needs an ordered linear poset', 205)

def interval_leq(i, j):
    """I <= J: every point of I has a point of J above it and every point
    of J has a point of I below it."""
    i.poset.check_same(j.poset)
    require_ordered(i.poset)
    return i.lo <= j.lo and i.hi <= j.hi

def interval_strictly_inside(i, j):
    """I is strictly inside J: J has points on both sides of I."""
    i.poset.check_same(j.poset)
    return j.lo < i.lo and i.hi < j.hi
