from .errors import OrchestrationError, ConfigurationError, SampleError
from .families import AbstractModelFamily, register_family, create_family
from .families import list_families, load_any_model
from .suite import RunConfig, SeedRun, SuiteResult, confidence_interval
from .suite import ALL, LOCAL, GRANULARITIES, CI_FORMULA, MIN_TRAIN_ROWS
from .runs import run_global, run_local, run_suite, feature_sweep
from .cli import TrainSubcommand, SweepSubcommand, EvaluateSubcommand
from .cli import ImportanceSubcommand
