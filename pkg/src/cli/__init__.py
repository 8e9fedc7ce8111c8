from .consoleapp import SubcommandError, Subcommand, ConsoleApp
from .consoleapp import setup_logging, print_error
from .consoleapp import EXIT_OK, EXIT_FAILURE, EXIT_USAGE
from .experiment import ExperimentSubcommand, write_manifest, write_json
from .experiment import file_digest, require_file
