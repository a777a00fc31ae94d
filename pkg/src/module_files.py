# -*- coding: utf-8 -*-

# ==============================================================================
#   pmdist, ver. 1.0
#   Exact algebraic Wasserstein distances for persistence modules
#   This software is licensed under the terms of the MIT License.
# ==============================================================================

"""Module, morphism and zigzag files.

All files are INI files read with ConfigParser whose values are JSON, in the
same way as the session configuration. Coordinates are JSON integers or
strings such as "1/2"; grid points are [x, y] pairs. Matrices are lists of
integer rows and are reduced modulo the active field prime on load.

Module file:
    [poset]      kind ("linear" | "grid"), coords + orientations (linear) or
                 x_coords + y_coords (grid)
    [measure]    kind ("counting" | "weights" | "lebesgue"), weights, extent
    and exactly one of
    [barcode]    intervals = [[lo, hi, multiplicity], ...]
    [module]     dims = [...], maps = [[a, b, matrix], ...]
    [filtration] vertices = {name: [point, ...]},
                 edges = {name: [u, v, [point, ...]]}
    [derived]    operation ("kernel" | "cokernel" | "image"),
                 morphism = morphism file

Morphism file:
    [morphism]   kind ("matrices" | "inclusion"), source, target (module
                 files), components = [[point, matrix], ...] for "matrices";
                 "inclusion" induces the map on H_0 of two filtration files

Zigzag file:
    [zigzag]     steps = [["forward" | "backward", morphism file], ...]

Paths inside files are relative to the directory of the file.
"""

import io
import json
import os
from configparser import ConfigParser, Error as ConfigParserError
from dataclasses import dataclass, field

import numpy as np

import exact_linalg as la
import persistence_module as pm
import utils
from decomposition import module_from_barcode
from graph_filtration import (GraphFiltration, h0_inclusion_morphism,
                              h0_of_graph_filtration)
from index_poset import Barcode, GridPoset, Interval, LinearPoset, Measure
from utils import FileFormatError, PMDistError
from zigzag import BACKWARD, FORWARD, Zigzag


CONTENT_SECTIONS = ('barcode', 'module', 'filtration', 'derived')
DERIVED_OPERATIONS = ('kernel', 'cokernel', 'image')
MORPHISM_KINDS = ('matrices', 'inclusion')


def _read_ini(path):
    if not os.path.isfile(path):
        raise FileFormatError(path, 602)
    cfg = ConfigParser()
    try:
        with open(path, 'r') as file:
            cfg.read_file(file)
    except (ConfigParserError, UnicodeDecodeError) as e:
        raise FileFormatError(f'{path}: {e}')
    return cfg

def _parse_ini_text(text, name='<text>'):
    cfg = ConfigParser()
    try:
        cfg.read_string(text, source=name)
    except ConfigParserError as e:
        raise FileFormatError(f'{name}: {e}')
    return cfg

def _get(cfg, section, key, default=None, required=True):
    if not cfg.has_option(section, key):
        if required:
            raise FileFormatError(f'missing key [{section}] {key}')
        return default
    try:
        return json.loads(cfg[section][key])
    except json.JSONDecodeError as e:
        raise FileFormatError(f'[{section}] {key}: {e}')

def _set(cfg, section, key, value):
    if not cfg.has_section(section):
        cfg.add_section(section)
    cfg[section][key] = json.dumps(value)

def _write_text(cfg):
    buffer = io.StringIO()
    cfg.write(buffer)
    return buffer.getvalue()

def encode_coord(value):
    text = utils.format_rational(value)
    return int(text) if '/' not in text else text

def _decode_coord(value):
    try:
        return utils.parse_rational(value)
    except (ValueError, ZeroDivisionError) as e:
        raise FileFormatError(f'bad coordinate {value!r}: {e}')

def _integer(value, what):
    # true and false are not integers here
    if isinstance(value, bool) or not isinstance(value, int):
        raise FileFormatError(f'{what}: {value!r} is not an integer')
    return value

def _contains_bool(value):
    if isinstance(value, list):
        return any(_contains_bool(v) for v in value)
    return isinstance(value, bool)

def _matrix(value, what):
    if _contains_bool(value):
        raise FileFormatError(f'{what}: not an integer matrix')
    try:
        matrix = np.asarray(value, dtype=np.int64)
    except (TypeError, ValueError, OverflowError):
        raise FileFormatError(f'{what}: not an integer matrix')
    if matrix.size == 0:
        return la.zeros(0, 0)
    if matrix.ndim != 2:
        raise FileFormatError(f'{what}: matrix must be a list of rows')
    return matrix % la.field_prime()

def _encode_matrix(matrix):
    return [[int(x) for x in row] for row in np.asarray(matrix)]


# Posets and measures

def parse_poset(cfg):
    kind = _get(cfg, 'poset', 'kind')
    if kind == 'linear':
        coords = [_decode_coord(c) for c in _get(cfg, 'poset', 'coords')]
        orientations = _get(cfg, 'poset', 'orientations', None, False)
        return LinearPoset(coords, orientations)
    if kind == 'grid':
        return GridPoset(
            [_decode_coord(c) for c in _get(cfg, 'poset', 'x_coords')],
            [_decode_coord(c) for c in _get(cfg, 'poset', 'y_coords')])
    raise FileFormatError(f'unknown poset kind {kind!r}')

def write_poset(cfg, poset):
    _set(cfg, 'poset', 'kind', poset.kind)
    if poset.kind == 'linear':
        _set(cfg, 'poset', 'coords', [encode_coord(c) for c in poset.coords])
        _set(cfg, 'poset', 'orientations', poset.orientations)
    else:
        _set(cfg, 'poset', 'x_coords',
             [encode_coord(c) for c in poset.x_coords])
        _set(cfg, 'poset', 'y_coords',
             [encode_coord(c) for c in poset.y_coords])

def parse_measure(cfg, poset):
    if not cfg.has_section('measure'):
        return Measure.counting(poset)
    kind = _get(cfg, 'measure', 'kind')
    if kind == 'counting':
        return Measure.counting(poset)
    if kind == 'weights':
        return Measure.from_weights(
            poset, [_decode_coord(w) for w in _get(cfg, 'measure', 'weights')])
    if kind == 'lebesgue':
        extent = _get(cfg, 'measure', 'extent')
        if poset.kind == 'grid':
            return Measure.lebesgue(poset, [_decode_coord(e) for e in extent])
        return Measure.lebesgue(poset, _decode_coord(extent))
    raise FileFormatError(f'unknown measure kind {kind!r}')

def write_measure(cfg, measure):
    kind = measure.kind
    if kind == 'counting' or (kind == 'weights' and measure.is_counting):
        _set(cfg, 'measure', 'kind', 'counting')
    elif kind == 'lebesgue':
        _set(cfg, 'measure', 'kind', 'lebesgue')
        if measure.poset.kind == 'grid':
            _set(cfg, 'measure', 'extent',
                 [encode_coord(e) for e in measure.extent])
        else:
            _set(cfg, 'measure', 'extent', encode_coord(measure.extent))
    else:
        _set(cfg, 'measure', 'kind', 'weights')
        _set(cfg, 'measure', 'weights',
             [encode_coord(w) for w in measure.weights])

def point_index(poset, value):
    """Index of the point written as a coordinate (linear) or [x, y]
    (grid)."""
    try:
        if poset.kind == 'grid':
            if not isinstance(value, list) or len(value) != 2:
                raise FileFormatError(f'grid point must be [x, y]: {value!r}')
            return poset.point_at([_decode_coord(v) for v in value])
        return poset.point_at(_decode_coord(value))
    except PMDistError as e:
        if isinstance(e, FileFormatError):
            raise
        raise FileFormatError(e.error_info)

def encode_point(poset, k):
    if poset.kind == 'grid':
        i, j = poset.position(k)
        return [encode_coord(poset.x_coords[i]), encode_coord(poset.y_coords[j])]
    return encode_coord(poset.coords[k])


# Module files

@dataclass(eq=False)
class ModuleDocument:
    poset: object
    measure: object
    content: str
    barcode: object = None
    dims: tuple = ()
    maps: dict = field(default_factory=dict)
    filtration: object = None
    operation: str = ''
    morphism_file: str = ''
    base_dir: str = ''
    _module: object = field(default=None, repr=False)

    def module(self):
        if self._module is None:
            self._module = self._build()
        return self._module

    def _build(self):
        if self.content == 'barcode':
            return module_from_barcode(self.barcode)[0]
        if self.content == 'module':
            return pm.PersistenceModule(self.poset, self.dims, self.maps)
        if self.content == 'filtration':
            return h0_of_graph_filtration(self.filtration)
        f = load_morphism_file(
            os.path.join(self.base_dir, self.morphism_file)).morphism()
        self.poset.check_same(f.source.poset)
        if self.operation == 'kernel':
            return pm.kernel_module(f)[0]
        if self.operation == 'cokernel':
            return pm.cokernel_module(f)[0]
        return pm.image_factorize(f)[0].target

    def coherent_basis(self):
        """Standard coherent basis of a barcode file, else None."""
        if self.content != 'barcode':
            return None
        return module_from_barcode(self.barcode)[1]

    def __eq__(self, other):
        return (isinstance(other, ModuleDocument)
                and serialize_module(self) == serialize_module(other))


def parse_module_cfg(cfg, base_dir=''):
    try:
        poset = parse_poset(cfg)
        measure = parse_measure(cfg, poset)
    except FileFormatError:
        raise
    except PMDistError as e:
        raise FileFormatError(str(e))
    present = [s for s in CONTENT_SECTIONS if cfg.has_section(s)]
    if len(present) != 1:
        raise FileFormatError('a module file needs exactly one of '
                              f'{", ".join(CONTENT_SECTIONS)}')
    content = present[0]
    doc = ModuleDocument(poset, measure, content, base_dir=base_dir)
    if content == 'barcode':
        if poset.kind != 'linear':
            raise FileFormatError('barcodes need a linear poset', 603)
        doc.barcode = Barcode(poset)
        for entry in _get(cfg, 'barcode', 'intervals'):
            if len(entry) != 3:
                raise FileFormatError(f'interval entry {entry!r} is not '
                                      '[lo, hi, multiplicity]')
            _integer(entry[2], 'multiplicity')
            lo, hi = point_index(poset, entry[0]), point_index(poset, entry[1])
            try:
                doc.barcode.add(Interval(poset, lo, hi), entry[2])
            except PMDistError as e:
                raise FileFormatError(e.error_info)
    elif content == 'module':
        dims = _get(cfg, 'module', 'dims')
        if not isinstance(dims, list):
            raise FileFormatError('dims must be a list')
        doc.dims = tuple(_integer(d, 'dims') for d in dims)
        for entry in _get(cfg, 'module', 'maps', [], False):
            if len(entry) != 3:
                raise FileFormatError(f'map entry {entry!r} is not [a, b, '
                                      'matrix]')
            arrow = (point_index(poset, entry[0]), point_index(poset, entry[1]))
            doc.maps[arrow] = _matrix(entry[2], f'map {entry[0]}->{entry[1]}')
    elif content == 'filtration':
        vertices = {
            name: [point_index(poset, q) for q in points]
            for name, points in _get(cfg, 'filtration', 'vertices').items()}
        edges = {}
        for name, entry in _get(cfg, 'filtration', 'edges', {}, False).items():
            if len(entry) != 3:
                raise FileFormatError(f'edge {name} is not [u, v, points]')
            edges[name] = (entry[0], entry[1],
                           [point_index(poset, q) for q in entry[2]])
        doc.filtration = GraphFiltration(poset, vertices, edges)
    else:
        doc.operation = _get(cfg, 'derived', 'operation')
        if doc.operation not in DERIVED_OPERATIONS:
            raise FileFormatError(f'unknown operation {doc.operation!r}')
        doc.morphism_file = _get(cfg, 'derived', 'morphism')
    return doc

def parse_module_text(text, base_dir=''):
    return parse_module_cfg(_parse_ini_text(text), base_dir)

def load_module_file(path):
    doc = parse_module_cfg(_read_ini(path), os.path.dirname(path))
    doc.module()
    return doc

def serialize_module(doc):
    cfg = ConfigParser()
    write_poset(cfg, doc.poset)
    write_measure(cfg, doc.measure)
    poset = doc.poset
    if doc.content == 'barcode':
        _set(cfg, 'barcode', 'intervals',
             [[encode_point(poset, i.lo), encode_point(poset, i.hi), m]
              for i, m in doc.barcode.items()])
    elif doc.content == 'module':
        _set(cfg, 'module', 'dims', list(doc.dims))
        _set(cfg, 'module', 'maps',
             [[encode_point(poset, a), encode_point(poset, b),
               _encode_matrix(matrix)]
              for (a, b), matrix in sorted(doc.maps.items())
              if matrix.size])
    elif doc.content == 'filtration':
        f = doc.filtration
        _set(cfg, 'filtration', 'vertices',
             {name: [encode_point(poset, q) for q in points]
              for name, points in f.vertices.items()})
        _set(cfg, 'filtration', 'edges',
             {name: [u, v, [encode_point(poset, q) for q in points]]
              for name, (u, v, points) in f.edges.items()})
    else:
        _set(cfg, 'derived', 'operation', doc.operation)
        _set(cfg, 'derived', 'morphism', doc.morphism_file)
    return _write_text(cfg)

def barcode_document(barcode, measure=None):
    measure = measure or Measure.counting(barcode.poset)
    return ModuleDocument(barcode.poset, measure, 'barcode', barcode=barcode)

def save_file(text, path):
    try:
        with open(path, 'w') as file:
            file.write(text)
    except OSError as e:
        raise FileFormatError(f'{path}: {e}', 604)


# Morphism files

@dataclass(eq=False)
class MorphismDocument:
    kind: str
    source_file: str
    target_file: str
    components: dict = field(default_factory=dict)
    base_dir: str = ''
    _morphism: object = field(default=None, repr=False)

    def source_document(self):
        return load_module_file(os.path.join(self.base_dir, self.source_file))

    def target_document(self):
        return load_module_file(os.path.join(self.base_dir, self.target_file))

    def morphism(self):
        if self._morphism is None:
            self._morphism = self._build()
        return self._morphism

    def _build(self):
        source, target = self.source_document(), self.target_document()
        if self.kind == 'inclusion':
            if not source.content == target.content == 'filtration':
                raise FileFormatError('inclusion morphisms need two '
                                      'filtration files')
            return h0_inclusion_morphism(source.filtration, target.filtration)
        m, n = source.module(), target.module()
        m.poset.check_same(n.poset)
        components = []
        for k in m.poset.points():
            if k in self.components:
                components.append(self.components[k])
            else:
                components.append(la.zeros(n.dims[k], m.dims[k]))
        return pm.Morphism(m, n, components)

    def __eq__(self, other):
        return (isinstance(other, MorphismDocument)
                and serialize_morphism(self) == serialize_morphism(other))


def parse_morphism_cfg(cfg, base_dir=''):
    kind = _get(cfg, 'morphism', 'kind')
    if kind not in MORPHISM_KINDS:
        raise FileFormatError(f'unknown morphism kind {kind!r}')
    doc = MorphismDocument(kind, _get(cfg, 'morphism', 'source'),
                           _get(cfg, 'morphism', 'target'), base_dir=base_dir)
    if kind == 'matrices':
        poset = doc.source_document().poset
        for entry in _get(cfg, 'morphism', 'components', [], False):
            if len(entry) != 2:
                raise FileFormatError(f'component entry {entry!r} is not '
                                      '[point, matrix]')
            k = point_index(poset, entry[0])
            doc.components[k] = _matrix(entry[1], f'component {entry[0]}')
    return doc

def load_morphism_file(path):
    return parse_morphism_cfg(_read_ini(path), os.path.dirname(path))

def serialize_morphism(doc):
    cfg = ConfigParser()
    _set(cfg, 'morphism', 'kind', doc.kind)
    _set(cfg, 'morphism', 'source', doc.source_file)
    _set(cfg, 'morphism', 'target', doc.target_file)
    if doc.kind == 'matrices':
        poset = doc.source_document().poset
        _set(cfg, 'morphism', 'components',
             [[encode_point(poset, k), _encode_matrix(matrix)]
              for k, matrix in sorted(doc.components.items())
              if matrix.size])
    return _write_text(cfg)


# Zigzag files

@dataclass(eq=False)
class ZigzagDocument:
    steps: list
    base_dir: str = ''

    def zigzag(self):
        morphisms = []
        for direction, path in self.steps:
            doc = load_morphism_file(os.path.join(self.base_dir, path))
            morphisms.append((doc.morphism(), direction))
        first, direction = morphisms[0]
        start = first.source if direction == FORWARD else first.target
        try:
            return Zigzag(start, morphisms)
        except PMDistError as e:
            raise FileFormatError(str(e))

    def __eq__(self, other):
        return (isinstance(other, ZigzagDocument)
                and serialize_zigzag(self) == serialize_zigzag(other))


def parse_zigzag_cfg(cfg, base_dir=''):
    steps = []
    for entry in _get(cfg, 'zigzag', 'steps'):
        if len(entry) != 2 or entry[0] not in (FORWARD, BACKWARD):
            raise FileFormatError(f'step {entry!r} is not [direction, file]')
        steps.append((entry[0], entry[1]))
    if not steps:
        raise FileFormatError('a zigzag file needs at least one step')
    return ZigzagDocument(steps, base_dir)

def load_zigzag_file(path):
    return parse_zigzag_cfg(_read_ini(path), os.path.dirname(path))

def serialize_zigzag(doc):
    cfg = ConfigParser()
    _set(cfg, 'zigzag', 'steps', [list(step) for step in doc.steps])
    return _write_text(cfg)
