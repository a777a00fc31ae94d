# -*- coding: utf-8 -*-

# ==============================================================================
#   pmdist, ver. 1.0
#   Exact algebraic Wasserstein distances for persistence modules
#   This software is licensed under the terms of the MIT License.
# ==============================================================================

"""This module provides various constants, the error classes and helper
functions for logging and console output.
"""

import os
import sys
import datetime

from fractions import Fraction


# Tags used in log entries (up to five capital letters, see format_log_entry)
TAG_CTRL = 'CTRL'
TAG_DECOMP = 'DECMP'
TAG_MATCH = 'MATCH'
TAG_DIST = 'DIST'
TAG_VERIFY = 'VERIF'
TAG_FILE = 'FILE'

ERROR_LIST = {
    0: 'No error',

    # First digit 1: exact linear algebra
    101: 'Field error (modulus not prime or out of range)',
    102: 'Matrix dimension mismatch',
    103: 'Matrix not invertible',

    # First digit 2: posets, measures, intervals
    201: 'Poset error (invalid coordinates or orientations)',
    202: 'Poset mismatch',
    203: 'Measure error (invalid weights)',
    204: 'Interval error (empty or out of range)',
    205: 'Ordered poset required',

    # First digit 3: modules and morphisms
    301: 'Structure map shape error',
    302: 'Grid square does not commute',
    303: 'Naturality error',
    304: 'Zigzag error (modules do not chain)',
    305: 'Filtration error (ill-formed appearance sets)',

    # First digit 4: decomposition and matchings
    401: 'Decomposition unavailable (grid poset)',
    402: 'Basis not coherent',
    403: 'Change of basis precondition violated',
    404: 'Morphism not of declared kind',
    405: 'Morphism zero or not from/to an interval module',
    406: 'Matching elimination failed',

    # First digit 5: metrics
    501: 'Invalid Wasserstein exponent',
    502: 'Undefined cost (infinite endpoints)',
    503: 'Invalid hint zigzag',
    504: 'Declared parts inconsistent with dimensions',

    # First digit 6: files
    601: 'Parse error',
    602: 'File not found',
    603: 'Mode does not match poset kind',
    604: 'File could not be written',

    # First digit 7: error in configuration
    701: 'Configuration error',

    # First digit 8: verification
    801: 'Verification failure'
}

# Error codes that the command line reports as a mode mismatch (exit code 3)
MODE_MISMATCH_ERRORS = (205, 401, 603)


class PMDistError(Exception):
    """Base class of all errors raised by pmdist. Like the device classes
    of the acquisition software this code base grew out of, every error
    carries a numeric error_state (a key of ERROR_LIST) and a free-form
    error_info string with details.
    """
    default_error_state = 0

    def __init__(self, error_info='', error_state=None):
        if error_state is None:
            error_state = self.default_error_state
        self.error_state = error_state
        self.error_info = error_info
        super().__init__(self.__str__())

    def __str__(self):
        msg = ERROR_LIST.get(self.error_state, 'Unknown error')
        if self.error_info:
            msg += ': ' + self.error_info
        return f'[{self.error_state}] {msg}'


class FieldError(PMDistError):
    default_error_state = 101


class PosetError(PMDistError):
    default_error_state = 201


class ModuleError(PMDistError):
    default_error_state = 301


class DecompositionError(PMDistError):
    default_error_state = 401


class MatchingError(PMDistError):
    default_error_state = 404


class MetricError(PMDistError):
    default_error_state = 501


class FileFormatError(PMDistError):
    default_error_state = 601


class ModeMismatchError(PMDistError):
    default_error_state = 603


class ConfigError(PMDistError):
    default_error_state = 701


def exit_code(error_state):
    """Map an error code to the exit code of the command line tool:
    0 success, 1 verification failure, 2 parse/validation error,
    3 mode mismatch.
    """
    if error_state == 0:
        return 0
    if error_state // 100 == 8:
        return 1
    if error_state in MODE_MISMATCH_ERRORS:
        return 3
    return 2

def format_log_entry(msg):
    """Add timestamp and align msg for logging purposes"""
    timestamp = str(datetime.datetime.now())
    # Align colon (msg must begin with a tag of up to five capital letters,
    # such as 'MATCH' followed by a colon)
    i = msg.find(':')
    if i == -1:   # colon not found
        i = 0
    return (timestamp[:22] + ' | ' + msg[:i] + (6-i) * ' ' + msg[i:])

def show_progress_in_console(progress):
    """Show character-based progress bar in console window"""
    print('\r[{0}] {1}%'.format(
        '.' * int(progress/10)
        + ' ' * (10 - int(progress/10)),
        progress), end='', file=sys.stderr)


class LogSink:
    """Collect the log entries of one session. Entries are formatted with
    format_log_entry, kept in memory, appended to the log file (if one is
    configured) and optionally echoed to stderr.
    """

    def __init__(self, log_file='', echo=False):
        self.log_file = log_file
        self.echo = echo
        self.entries = []
        if self.log_file:
            log_dir = os.path.dirname(os.path.abspath(self.log_file))
            try:
                os.makedirs(log_dir, exist_ok=True)
            except OSError as e:
                raise ConfigError(f'log directory {log_dir}: {e}')

    def add(self, tag, msg):
        entry = format_log_entry(f'{tag}: {msg}')
        self.entries.append(entry)
        if self.echo:
            print(entry, file=sys.stderr)
        if self.log_file:
            with open(self.log_file, 'a') as file:
                file.write(entry + '\n')

    def add_all(self, tag, messages):
        for msg in messages:
            self.add(tag, msg)


def parse_rational(value):
    """Convert a JSON scalar (int, or string such as '1/2' or '0.25') or a
    Fraction into a Fraction. Strings 'inf' and '-inf' are not accepted here.
    """
    if isinstance(value, bool):
        raise ValueError(f'not a rational number: {value!r}')
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        # Floats are accepted only if they are exact decimal literals
        return Fraction(repr(value))
    raise ValueError(f'not a rational number: {value!r}')

def format_rational(value):
    """Format a Fraction as 'n' or 'n/d' (inverse of parse_rational)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f'{value.numerator}/{value.denominator}'

def decimal_string(value, digits=12):
    """Decimal approximation of a non-negative real given as float or
    Fraction, for display next to exact values."""
    return f'{float(value):.{digits}g}'
