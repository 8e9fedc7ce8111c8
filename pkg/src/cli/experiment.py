'''
Subcommands driven by layered experiment configuration

Settings come from package defaults (site and user config files), then
the experiment file given with ``--config``, then command-line flags. Every
command writes a JSON manifest next to its outputs.
'''
import hashlib
import json
import logging
import os
import platform
import time
from pathlib import Path
from configs import load_settings
from runconf import ConfigError, ParseError, Schema
from .consoleapp import Subcommand, setup_logging, print_error
from .consoleapp import EXIT_OK, EXIT_FAILURE, EXIT_USAGE

logger = logging.getLogger(__name__)

HASH_CHUNK = 1 << 16


def file_digest(path):
    digest = hashlib.sha256()
    with open(path, 'rb') as raw:
        for chunk in iter(lambda: raw.read(HASH_CHUNK), b''):
            digest.update(chunk)
    return digest.hexdigest()


def write_json(path, value):
    with open(path, 'w', encoding='utf8') as output:
        json.dump(value, output, indent=2, sort_keys=True)
        output.write('\n')


def write_manifest(directory, command, settings, inputs=(), started=None,
                   **extra):
    '''
    Record the settings in force, input hashes and wall-clock time

    Identical invocations produce identical manifests apart from the
    ``wall_clock_seconds`` field.
    '''
    manifest = {
        'command': command,
        'settings': settings,
        'inputs': {str(path): file_digest(path) for path in inputs},
        'python': platform.python_version(),
        'wall_clock_seconds': (None if started is None
                               else round(time.monotonic() - started, 3)),
    }
    manifest.update(extra)
    path = Path(directory) / (command + '-manifest.json')
    write_json(path, manifest)
    return path


class ExperimentSubcommand(Subcommand):
    '''
    Base for subcommands configured by an experiment file

    Subclasses list the ``config()`` accessors and ``add_sections``
    functions of the packages they use, and the package exceptions that
    map to the usage (2) and failure (1) exit codes.
    '''
    configs = ()
    schema_parts = ()
    usage_errors = ()
    runtime_errors = ()

    def _update_parser(self, parser):
        super()._update_parser(parser)
        parser.add_argument('-c', '--config', type=Path,
                            help='Experiment configuration file')
        parser.add_argument('-o', '--out', type=str,
                            help='Output directory (overrides paths::out)')
        parser.add_argument('-s', '--seed', type=int,
                            help='Single seed overriding the configured ones')
        parser.add_argument('--clamp-nonneg', action='store_true',
                            default=None,
                            help='Clamp predictions to be non-negative')
        parser.add_argument('-q', '--quiet', action='store_true',
                            help='Only print warnings and errors')

    def schema(self):
        result = Schema()
        for add_sections in self.schema_parts:
            add_sections(result)
        return result

    def overrides(self, args):
        result = {}
        if args.out is not None:
            result['paths'] = {'out': args.out}
        return result

    def settings(self, args):
        if args.config is not None and not args.config.is_file():
            raise ConfigError('experiment file {} does not exist'
                              .format(args.config))
        return load_settings(self.schema(),
                             [config() for config in self.configs],
                             args.config, self.overrides(args))

    def output_dir(self, settings):
        out = Path(settings['paths']['out'])
        out.mkdir(parents=True, exist_ok=True)
        return out

    def execute(self, args, settings):
        raise NotImplementedError()

    def run(self, args):
        setup_logging(args.quiet)
        try:
            return self.execute(args, self.settings(args))
        except (ConfigError, ParseError) + tuple(self.usage_errors) as exc:
            print_error(str(exc))
            return EXIT_USAGE
        except (OSError,) + tuple(self.runtime_errors) as exc:
            print_error(str(exc))
            return EXIT_FAILURE


def require_file(value, what):
    if value is None:
        raise ConfigError('{} is not configured'.format(what))
    if not os.path.isfile(value):
        raise FileNotFoundError('{} file {} does not exist'
                                .format(what, value))
    return Path(value)


__all__ = ['ExperimentSubcommand', 'write_manifest', 'write_json',
           'file_digest', 'require_file', 'EXIT_OK']
