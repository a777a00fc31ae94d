# -*- coding: utf-8 -*-

# ==============================================================================
#   pmdist, ver. 1.0
#   Exact algebraic Wasserstein distances for persistence modules
#   This software is licensed under the terms of the MIT License.
# ==============================================================================

"""The following functions check configuration files, and update older or
non-compliant configuration files to match default.ini.
"""

import json
import os
from configparser import ConfigParser, Error as ConfigParserError

from utils import ConfigError


# The following constants must be updated if entries are added to or
# deleted from the default configuration file
CFG_TEMPLATE_FILE = os.path.join(
    os.path.dirname(os.path.abspath(__file__)), '..', 'cfg', 'default.ini')
CFG_NUMBER_SECTIONS = 3
CFG_NUMBER_KEYS = 15

# Obsolete key names: (section, old key) -> new key
RENAMED_KEYS = {
    ('sys', 'prime'): 'field_prime',
    ('verify', 'trial_count'): 'trials',
}


def read_cfg(path):
    cfg = ConfigParser()
    try:
        with open(path, 'r') as file:
            cfg.read_file(file)
    except (OSError, ConfigParserError) as e:
        raise ConfigError(f'{path}: {e}')
    return cfg


def process_cfg(current_cfg, is_default_cfg=False):
    """Go through all sections and keys of the template configuration file
    and check whether entries are present in the configuration to be
    processed. If an entry cannot be found, use the entry from the template.
    """
    cfg_template = None
    cfg_load_success = True
    cfg_valid = True
    cfg_changed = False
    exceptions = ''

    if is_default_cfg:
        # The only validity check is verifying the number of entries.
        cfg_valid = check_number_of_entries(current_cfg)
        cfg_template = current_cfg
    else:
        # The template must be up-to-date. It is always bundled with pmdist.
        if os.path.isfile(CFG_TEMPLATE_FILE):
            try:
                cfg_template = read_cfg(CFG_TEMPLATE_FILE)
            except ConfigError as e:
                cfg_load_success = False
                exceptions += str(e) + ';'
        else:
            cfg_load_success = False
            exceptions += 'template ' + CFG_TEMPLATE_FILE + ' not found;'
        if cfg_load_success:
            cfg_valid = check_number_of_entries(cfg_template)
        if cfg_load_success and cfg_valid:
            # If there are obsolete key names, update them and preserve
            # the entries.
            cfg_changed = update_key_names(current_cfg)
            for section in cfg_template.sections():
                for key in cfg_template[section]:
                    if current_cfg.has_option(section, key):
                        cfg_template[section][key] = current_cfg[section][key]
                    else:
                        cfg_changed = True

    success = cfg_load_success and cfg_valid
    # cfg_template is now the updated version of the current configuration
    return success, exceptions, cfg_changed, cfg_template


def check_number_of_entries(cfg):
    all_sections = cfg.sections()
    key_count = sum(len(cfg[section]) for section in all_sections)
    return (len(all_sections) == CFG_NUMBER_SECTIONS
            and key_count == CFG_NUMBER_KEYS)


def update_key_names(cfg):
    """Ensure backward compatibility for several key names."""
    cfg_changed = False
    for (section, old_key), new_key in RENAMED_KEYS.items():
        if cfg.has_option(section, old_key):
            cfg[section][new_key] = cfg[section][old_key]
            cfg.remove_option(section, old_key)
            cfg_changed = True
    return cfg_changed


def load_cfg(path=None):
    """Load the template (path None) or a user configuration and bring it
    in line with the template."""
    if path is None:
        cfg = read_cfg(CFG_TEMPLATE_FILE)
        success, exceptions, _, cfg = process_cfg(cfg, is_default_cfg=True)
    else:
        if not os.path.isfile(path):
            raise ConfigError(f'configuration file {path} not found')
        success, exceptions, _, cfg = process_cfg(read_cfg(path))
    if not success:
        raise ConfigError(exceptions or 'configuration does not match the '
                          'template')
    validate_cfg(cfg)
    return cfg


def cfg_value(cfg, section, key):
    try:
        return json.loads(cfg[section][key])
    except (KeyError, json.JSONDecodeError) as e:
        raise ConfigError(f'[{section}] {key}: {e}')


def validate_cfg(cfg):
    output = cfg_value(cfg, 'sys', 'output')
    if output not in ('pretty', 'machine'):
        raise ConfigError(f'output must be pretty or machine, got {output!r}')
    mode = cfg_value(cfg, 'distance', 'mode')
    if mode not in ('module', 'diagram', 'bracket'):
        raise ConfigError(f'unknown distance mode {mode!r}')
    if cfg['sys']['echo_log'].lower() not in ('true', 'false'):
        raise ConfigError('echo_log must be True or False')
    for section, key in (('sys', 'field_prime'), ('sys', 'decimal_digits'),
                         ('verify', 'seed'), ('verify', 'trials')):
        value = cfg_value(cfg, section, key)
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise ConfigError(f'[{section}] {key} must be a non-negative '
                              'integer')
