#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# ==============================================================================
#   pmdist, ver. 1.0
#   Exact algebraic Wasserstein distances for persistence modules
#   This software is licensed under the terms of the MIT License.
# ==============================================================================

"""pmdist.py is the command line launcher.

The configuration (cfg/default.ini, or the file given with --config) is
loaded and checked against the template, command line flags override its
values, and the selected subcommand is run. Reports are printed as text
(--output pretty) or as a YAML document (--output machine).

Exit codes: 0 success, 1 verification failure, 2 parse or validation error,
3 mode mismatch.

Use 'python pmdist.py <command> ...' from the src folder, for example
'python pmdist.py distance --p 1 --module
../corpus/zigzag_quiver/MN.ini ../corpus/zigzag_quiver/L.ini'.
"""

import argparse
import json
import sys

import colorama
from colorama import Fore, Style
import yaml

import commands
import exact_linalg as la
from config_template import cfg_value, load_cfg
from utils import LogSink, PMDistError, TAG_CTRL, exit_code


VERSION = '1.0'


def build_parser():
    parser = argparse.ArgumentParser(
        prog='pmdist',
        description='Exact algebraic Wasserstein distances for persistence '
                    'modules.')
    parser.add_argument('--config', help='configuration file (default: '
                                         'cfg/default.ini)')
    parser.add_argument('--field-prime', type=int,
                        help='characteristic of the coefficient field')
    parser.add_argument('--output', choices=('pretty', 'machine'))
    parser.add_argument('--seed', type=int, help='seed of the random suites')
    parser.add_argument('--log-file', help='append the session log to this '
                                           'file')
    sub = parser.add_subparsers(dest='command', required=True)

    p_decompose = sub.add_parser('decompose', help='barcode of a module file')
    p_decompose.add_argument('input')
    p_decompose.add_argument('--save', metavar='FILE',
                             help='write the barcode as a module file')

    p_distance = sub.add_parser('distance', help='distance of two module files')
    p_distance.add_argument('--p', help='exponent: positive integer or inf')
    mode = p_distance.add_mutually_exclusive_group()
    mode.add_argument('--module', dest='mode', action='store_const',
                      const='module')
    mode.add_argument('--diagram', dest='mode', action='store_const',
                      const='diagram')
    mode.add_argument('--bracket', dest='mode', action='store_const',
                      const='bracket')
    p_distance.add_argument('--hint', action='append', default=[],
                            help='zigzag file (bracket mode, repeatable)')
    p_distance.add_argument('file_a')
    p_distance.add_argument('file_b')

    p_match = sub.add_parser('match', help='induced matching of a morphism')
    kind = p_match.add_mutually_exclusive_group(required=True)
    for name in commands.MATCH_KINDS:
        kind.add_argument('--' + name, dest='kind', action='store_const',
                          const=name)
    p_match.add_argument('morphism')

    p_verify = sub.add_parser('verify', help='randomized property suites')
    p_verify.add_argument('suites', nargs='*', default=['all'],
                          help='isometry, axioms, bounds, matching, '
                               'decomposition, intervals or all')
    p_verify.add_argument('--trials', type=int)

    p_cost = sub.add_parser('cost', help='cost of a zigzag file')
    p_cost.add_argument('zigzag')
    return parser


def apply_overrides(cfg, args):
    """Command line flags override configuration values."""
    if args.field_prime is not None:
        cfg['sys']['field_prime'] = str(args.field_prime)
    if args.output is not None:
        cfg['sys']['output'] = json.dumps(args.output)
    if args.seed is not None:
        cfg['verify']['seed'] = str(args.seed)
    if args.log_file is not None:
        cfg['sys']['log_file'] = json.dumps(args.log_file)
    if getattr(args, 'trials', None) is not None:
        cfg['verify']['trials'] = str(args.trials)


def run(args, cfg, log):
    session = commands.Session(cfg, log)
    if args.command == 'decompose':
        return commands.cmd_decompose(args.input, session, args.save)
    if args.command == 'distance':
        p = args.p if args.p is not None else cfg_value(cfg, 'distance', 'p')
        mode = args.mode or cfg_value(cfg, 'distance', 'mode')
        return commands.cmd_distance(p, args.file_a, args.file_b, mode,
                                     session, args.hint)
    if args.command == 'match':
        return commands.cmd_match(args.morphism, args.kind, session)
    if args.command == 'verify':
        return commands.cmd_verify(
            args.suites, session, show_progress=(
                cfg_value(cfg, 'sys', 'output') == 'pretty'
                and sys.stderr.isatty()))
    return commands.cmd_cost(args.zigzag, session)


def print_result(result, output):
    if output == 'machine':
        document = {'command': result.command, 'error_state': result.error_state}
        document.update(result.data)
        print(yaml.safe_dump(document, sort_keys=False), end='')
        return
    for line in result.lines:
        if line.startswith('PASS'):
            line = Fore.GREEN + line + Style.RESET_ALL
        elif line.startswith('FAIL'):
            line = Fore.RED + line + Style.RESET_ALL
        print(line)


def print_error(e, output):
    if output == 'machine':
        print(yaml.safe_dump({'error_state': e.error_state,
                              'error': str(e)}, sort_keys=False), end='')
    print(Fore.RED + 'Error: ' + str(e) + Style.RESET_ALL, file=sys.stderr)


def main(argv=None):
    """Load configuration and run the selected command. Returns the exit
    code."""
    args = build_parser().parse_args(argv)
    colorama.init()
    output = args.output or 'pretty'
    try:
        cfg = load_cfg(args.config)
        apply_overrides(cfg, args)
        output = cfg_value(cfg, 'sys', 'output')
        la.set_field_prime(cfg_value(cfg, 'sys', 'field_prime'))
        log = LogSink(cfg_value(cfg, 'sys', 'log_file'),
                      cfg['sys']['echo_log'].lower() == 'true')
        if output == 'pretty':
            version_info = 'Version ' + VERSION
            line_of_stars = '*' * (len(version_info) + 10)
            print(f'{line_of_stars}\n'
                  f'     pmdist\n'
                  f'     {version_info}\n'
                  f'{line_of_stars}\n')
        log.add(TAG_CTRL, f'pmdist {VERSION}: {args.command}, field prime '
                          f'{la.field_prime()}')
        result = run(args, cfg, log)
    except PMDistError as e:
        print_error(e, output)
        return exit_code(e.error_state)
    print_result(result, output)
    return exit_code(result.error_state)


if __name__ == '__main__':
    sys.exit(main())
