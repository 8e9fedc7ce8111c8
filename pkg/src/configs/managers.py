'''Where configuration files live and which of them get loaded'''

import os
from pathlib import Path
import appdirs
from .configs import Config

PROGRAM_NAME = 'symptomcast'
PROGRAM_VERSION = 'v0'
CONFIG_HOME_ENV = 'SYMPTOMCAST_CONFIG_HOME'
CONFIG_SUFFIX = '.conf'
DROPIN_SUFFIX = '.conf.d'


def _layer(root, config_name):
    '''The base file of one directory followed by its drop-ins by name'''
    dropins = root / (config_name + DROPIN_SUFFIX)
    found = []
    if dropins.is_dir():
        found = sorted(item for item in dropins.iterdir() if item.is_file())
    return [root / (config_name + CONFIG_SUFFIX)] + found


class ConfigPaths:
    '''Site directories first, then the user directory'''

    @property
    def roots(self):
        return list(self.site_paths) + list(self.user_paths)

    def filenames(self, config_name):
        return [filename for root in self.roots
                for filename in _layer(root, config_name)]

    def user_config(self, config_name):
        return self.user_paths[0] / (config_name + CONFIG_SUFFIX)

    def prepare(self, config_name):
        for root in self.user_paths:
            (root / (config_name + DROPIN_SUFFIX)).mkdir(parents=True,
                                                         exist_ok=True)

    @staticmethod
    def _site_defaults(program_name, program_version):
        joined = appdirs.site_config_dir(program_name, program_version,
                                         multipath=True)
        return [Path(item) for item in joined.split(os.pathsep)]

    def __init__(self, program_name=PROGRAM_NAME,
                 program_version=PROGRAM_VERSION):
        home = os.environ.get(CONFIG_HOME_ENV)
        if home:
            self.site_paths = []
            self.user_paths = [Path(home)]
        else:
            self.site_paths = self._site_defaults(program_name,
                                                  program_version)
            self.user_paths = [Path(appdirs.user_config_dir(
                program_name, program_version, roaming=True))]


class ConfigManager:
    '''Loads each named config once, on first access'''

    def __contains__(self, config_name):
        return config_name in self._loaded

    def __getitem__(self, config_name):
        config = self._loaded.get(config_name)
        if config is None:
            self.paths.prepare(config_name)
            config = Config(self.paths.filenames(config_name),
                            self.paths.user_config(config_name),
                            self._defaults.get(config_name, ''))
            self._loaded[config_name] = config
        return config

    def request(self, config_name, default_value):
        '''Registers package defaults on first call and returns the config'''
        self._defaults.setdefault(config_name, default_value)
        return self[config_name]

    def add_default(self, config_name, value):
        if config_name in self._defaults:
            raise KeyError(config_name)
        self._defaults[config_name] = value

    def user_config(self, config_name):
        self.paths.prepare(config_name)
        return self.paths.user_config(config_name)

    def replace(self, other):
        self.paths = other.paths
        self._loaded = other._loaded
        self._defaults = other._defaults

    def __init__(self, paths=None):
        self.paths = paths if paths is not None else ConfigPaths()
        self._loaded = {}
        self._defaults = {}


manager = ConfigManager()
