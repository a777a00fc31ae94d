# -*- coding: utf-8 -*-

# ==============================================================================
#   pmdist, ver. 1.0
#   Exact algebraic Wasserstein distances for persistence modules
#   This software is licensed under the terms of the MIT License.
# ==============================================================================

"""Implementation of the subcommands decompose, distance, match, verify and
cost. Every command returns a CommandResult: a machine-readable dict (only
strings, ints, lists and dicts, so that it can be dumped as YAML), the
lines of the pretty report, and an error state (0, or 801 when a
verification suite failed). Library errors propagate as PMDistError.
"""

import math
import os
from dataclasses import dataclass, field

import wasserstein as ws
from config_template import cfg_value
from decomposition import decompose, model_basis
from matching_structure import (induced_matching_epi, induced_matching_mono,
                                structure_from_interval,
                                structure_to_interval)
from module_files import (barcode_document, load_module_file,
                          load_morphism_file, load_zigzag_file, save_file,
                          serialize_module)
from utils import (TAG_DECOMP, TAG_DIST, TAG_FILE, TAG_MATCH, TAG_VERIFY,
                   ModeMismatchError, PosetError, format_rational)
from verify_suites import SuiteSettings, run_suites
from zigzag import step_costs, zigzag_cost


MATCH_KINDS = ('mono', 'epi', 'from-interval', 'to-interval')


@dataclass
class CommandResult:
    command: str
    data: dict = field(default_factory=dict)
    lines: list = field(default_factory=list)
    error_state: int = 0


class Session:
    """Settings and log sink shared by the commands of one invocation."""

    def __init__(self, cfg, log):
        self.cfg = cfg
        self.log = log
        self.digits = cfg_value(cfg, 'sys', 'decimal_digits')

    def load_module(self, path):
        doc = load_module_file(path)
        self.log.add(TAG_FILE, f'Loaded {doc.content} module from {path}')
        return doc


def _rational(value):
    if isinstance(value, float) and math.isinf(value):
        return 'inf'
    return format_rational(value)

def _barcode_lines(barcode, mu):
    lines = []
    for interval, multiplicity in barcode.items():
        point = ws.diagram_point(interval, mu)
        lines.append(f'  {interval.label()} x{multiplicity}   '
                     f'diagram point {point.label()}')
    return lines


def _interval_data(doc, interval, multiplicity):
    point = ws.diagram_point(interval, doc.measure)
    return {'lo': doc.poset.label(interval.lo),
            'hi': doc.poset.label(interval.hi),
            'multiplicity': multiplicity,
            'diagram_point': [_rational(point.birth), _rational(point.death)]}

def cmd_decompose(path, session, save_path=None):
    doc = session.load_module(path)
    if doc.poset.kind != 'linear':
        raise ModeMismatchError('decompose needs a linear poset')
    barcode = decompose(doc.module())
    method = 'reduction' if doc.poset.is_ordered else 'segment ranks'
    session.log.add(TAG_DECOMP, f'{len(barcode)} intervals ({method})')
    result = CommandResult('decompose')
    result.data = {
        'file': path,
        'intervals': [
            _interval_data(doc, interval, multiplicity)
            for interval, multiplicity in barcode.items()]}
    result.lines = [f'Barcode of {os.path.basename(path)} '
                    f'({len(barcode)} intervals):']
    result.lines += _barcode_lines(barcode, doc.measure)
    if save_path:
        save_file(serialize_module(barcode_document(barcode, doc.measure)),
                  save_path)
        session.log.add(TAG_FILE, f'Saved barcode to {save_path}')
        result.data['saved'] = save_path
        result.lines.append(f'Saved to {save_path}')
    return result


def _pair_files(path_a, path_b, session):
    a, b = session.load_module(path_a), session.load_module(path_b)
    a.poset.check_same(b.poset)
    if a.measure != b.measure:
        raise PosetError('the two files declare different measures', 203)
    return a, b

def _matching_data(result, label_a, label_b):
    return {
        'pairs': [{'a': label_a(a), 'b': label_b(b), 'cost': _rational(c)}
                  for a, b, c in result.pairs],
        'unmatched_a': [{'a': label_a(a), 'cost': _rational(c)}
                        for a, c in result.unmatched_a],
        'unmatched_b': [{'b': label_b(b), 'cost': _rational(c)}
                        for b, c in result.unmatched_b]}

def _matching_lines(result, label_a, label_b):
    lines = ['Optimal matching:']
    for a, b, cost in result.pairs:
        lines.append(f'  {label_a(a)} <-> {label_b(b)}   cost {_rational(cost)}')
    for a, cost in result.unmatched_a:
        lines.append(f'  {label_a(a)} <-> 0   cost {_rational(cost)}')
    for b, cost in result.unmatched_b:
        lines.append(f'  0 <-> {label_b(b)}   cost {_rational(cost)}')
    return lines

def cmd_distance(p, path_a, path_b, mode, session, hints=()):
    p = ws.parse_exponent(p)
    a, b = _pair_files(path_a, path_b, session)
    mu = a.measure
    if hints and mode != 'bracket':
        raise ModeMismatchError('hints are only used in bracket mode')
    result = CommandResult('distance')
    result.data = {'mode': mode, 'p': ws.format_exponent(p)}
    if mode == 'bracket':
        zigzags = []
        for path in hints:
            zigzags.append(load_zigzag_file(path).zigzag())
            session.log.add(TAG_FILE, f'Loaded hint zigzag from {path}')
        bracket = ws.d_mu_bracket(a.module(), b.module(), mu, zigzags)
        session.log.add(TAG_DIST, f'bracket ({_rational(bracket.lower)}, '
                                  f'{_rational(bracket.upper)}) via '
                                  f'{bracket.witness_name}')
        result.data.update({'lower': _rational(bracket.lower),
                            'upper': _rational(bracket.upper),
                            'witness': bracket.witness_name,
                            'exact': bracket.is_exact})
        result.lines = [f'd_mu bracket: [{_rational(bracket.lower)}, '
                        f'{_rational(bracket.upper)}]',
                        f'Upper bound realized by: {bracket.witness_name}']
        if bracket.is_exact:
            result.lines.append(f'd_mu = {_rational(bracket.lower)} (exact)')
        return result
    if a.poset.kind != 'linear':
        raise ModeMismatchError(f'{mode} mode needs a linear poset')
    if mode == 'diagram':
        w = ws.wasserstein_diagrams(p, ws.diagram(decompose(a.module()), mu),
                                    ws.diagram(decompose(b.module()), mu))
    elif mode == 'module':
        w = ws.wasserstein_modules(p, a.module(), b.module(), mu)
    else:
        raise ModeMismatchError(f'unknown mode {mode!r}')

    def label_a(index):
        return w.items_a[index].label()

    def label_b(index):
        return w.items_b[index].label()

    root = w.value_root(session.digits)
    session.log.add(TAG_DIST, f'W_{ws.format_exponent(p)} = {root} ({mode})')
    result.data.update({'value_pth_power': _rational(w.value_pth_power),
                        'value': root})
    result.data.update(_matching_data(w, label_a, label_b))
    if p in (1, math.inf):
        result.lines = [f'W_{ws.format_exponent(p)} = {root}']
    else:
        result.lines = [f'W_{p}^{p} = {_rational(w.value_pth_power)}',
                        f'W_{p} = {root}']
    result.lines += _matching_lines(w, label_a, label_b)
    return result


def _bases(doc):
    """Coherent basis of a module file on a zigzag poset: the standard basis
    of a barcode file or of an explicit module written as its barcode model.
    None lets the library decompose the module by reduction."""
    if doc.poset.kind == 'linear' and not doc.poset.is_ordered:
        basis = doc.coherent_basis()
        if basis is None:
            basis = model_basis(doc.module())
        if basis is None:
            raise ModeMismatchError(
                'morphisms on zigzag posets need barcode files or modules '
                'written as their barcode model', 401)
        return basis
    return None

def cmd_match(path, kind, session):
    doc = load_morphism_file(path)
    source, target = doc.source_document(), doc.target_document()
    f = doc.morphism()
    mu = source.measure
    session.log.add(TAG_FILE, f'Loaded morphism from {path}')
    if f.source.poset.kind != 'linear':
        raise ModeMismatchError('match needs a linear poset')
    result = CommandResult('match')
    if kind in ('mono', 'epi'):
        induce = induced_matching_mono if kind == 'mono' else \
            induced_matching_epi
        matching = induce(f, _bases(source), _bases(target))
        session.log.add_all(TAG_MATCH, matching.operations)
        sources, targets = matching.source_summands, matching.target_summands
        costs = matching.pair_costs(mu)
        weight = matching.identity_value(mu)
        result.data = {
            'kind': kind,
            'pairs': [{'source': sources[k].label(),
                       'target': targets[j].label(),
                       'd_mu': _rational(c), 'diagonal_ok': ok}
                      for (k, j), c, ok in zip(matching.pairs, costs,
                                               matching.diagonal_ok)],
            'unmatched_sources': [sources[k].label()
                                  for k in matching.unmatched_sources],
            'unmatched_targets': [targets[j].label()
                                  for j in matching.unmatched_targets],
            'matched_cost': _rational(matching.matched_cost(mu)),
            ('coker_weight' if kind == 'mono' else 'ker_weight'):
                _rational(weight),
            'identity_holds': matching.identity_holds(mu),
            'coefficients': [[int(x) for x in row]
                             for row in matching.decomposed.coefficients],
            'operations': list(matching.operations)}
        result.lines = [f'Induced matching ({kind}):']
        for (k, j), c, ok in zip(matching.pairs, costs, matching.diagonal_ok):
            flag = '' if ok else '   (diagonal component lacks rank)'
            result.lines.append(f'  {sources[k].label()} -> '
                                f'{targets[j].label()}   d_mu {_rational(c)}'
                                f'{flag}')
        for k in matching.unmatched_sources:
            result.lines.append(f'  {sources[k].label()} -> 0')
        for j in matching.unmatched_targets:
            result.lines.append(f'  0 -> {targets[j].label()}')
        name = 'coker' if kind == 'mono' else 'ker'
        result.lines += [
            f'Sum of d_mu over the matching: '
            f'{_rational(matching.matched_cost(mu))}',
            f'Integral of dim {name} f: {_rational(weight)}',
            'Identity ' + ('holds' if matching.identity_holds(mu)
                           else 'does not hold')]
        return result
    if kind not in MATCH_KINDS:
        raise ModeMismatchError(f'unknown match kind {kind!r}')
    structure = (structure_from_interval(f) if kind == 'from-interval'
                 else structure_to_interval(f))
    session.log.add_all(TAG_MATCH, structure.operations)
    chain = structure.chain_intervals()
    residual = [structure.summands[index].label()
                for index in structure.residual]
    result.data = {
        'kind': kind,
        'interval': structure.interval.label(),
        'chain': [m.label() for m in chain],
        'residual': residual,
        'ker_dims': list(structure.ker_dims),
        'coker_dims': list(structure.coker_dims),
        'chain_weight': _rational(structure.chain_weight(mu)),
        'coefficients': [[int(x) for x in row]
                         for row in structure.decomposed.coefficients],
        'operations': list(structure.operations)}
    result.lines = [f'Interval {structure.interval.label()}',
                    'Nested chain: ' + ' > '.join(m.label() for m in chain),
                    'Residual summands: ' + (', '.join(residual) or 'none'),
                    f'dim ker f:   {list(structure.ker_dims)}',
                    f'dim coker f: {list(structure.coker_dims)}',
                    f'Chain weight: {_rational(structure.chain_weight(mu))}']
    return result


def cmd_verify(suites, session, trials=None, seed=None, show_progress=False):
    settings = SuiteSettings.from_cfg(session.cfg)
    if trials is not None:
        settings.trials = trials
    if seed is not None:
        settings.seed = seed
    reports = run_suites(suites, settings, show_progress)
    result = CommandResult('verify')
    result.data = {'seed': settings.seed, 'trials': settings.trials,
                   'suites': []}
    for report in reports:
        status = 'PASS' if report.passed else 'FAIL'
        session.log.add(TAG_VERIFY, f'{report.name}: {status} '
                                    f'({report.trials} trials)')
        result.data['suites'].append({'name': report.name,
                                      'trials': report.trials,
                                      'passed': report.passed,
                                      'failures': report.failures})
        result.lines.append(f'{status}  {report.name} ({report.trials} '
                            'trials)')
        result.lines += ['      ' + failure for failure in report.failures]
    if not all(report.passed for report in reports):
        result.error_state = 801
    return result


def cmd_cost(path, session):
    doc = load_zigzag_file(path)
    g = doc.zigzag()
    first_direction, first_file = doc.steps[0]
    morphism_doc = load_morphism_file(os.path.join(doc.base_dir, first_file))
    start_doc = (morphism_doc.source_document() if first_direction == 'forward'
                 else morphism_doc.target_document())
    mu = start_doc.measure
    costs = step_costs(g, mu)
    total = zigzag_cost(g, mu)
    session.log.add(TAG_DIST, f'zigzag cost {_rational(total)} '
                              f'({len(g)} steps)')
    result = CommandResult('cost')
    result.data = {
        'steps': [{'direction': step.direction, 'file': file,
                   'ker': _rational(ker), 'coker': _rational(coker)}
                  for step, (_, file), (ker, coker) in
                  zip(g.steps, doc.steps, costs)],
        'total': _rational(total)}
    result.lines = [f'Zigzag {os.path.basename(path)}: {g!r}']
    for index, ((direction, file), (ker, coker)) in enumerate(
            zip(doc.steps, costs)):
        result.lines.append(f'  step {index} {direction:8s} {file}: '
                            f'ker {_rational(ker)}, coker {_rational(coker)}')
    result.lines.append(f'Total cost: {_rational(total)}')
    return result
