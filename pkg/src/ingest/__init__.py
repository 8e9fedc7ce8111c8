from .errors import IngestError, FormatError, ValidationError
from .errors import ConfigurationError, SplitError
from .features import FEATURE_NAMES, ColumnManifest
from .survey import SurveySnapshot, parse_survey_table
from .survey import filter_aggregate_demographics
from .cases import CumulativeCaseSeries, DailyCases
from .cases import parse_cases_table, cumulative_to_daily
from .panel import PanelDataset, DateSplit, JoinDrops, IngestSummary
from .panel import join_panel, split_by_date, load_panel
from .synth import SynthConfig, GroundTruth, generate_synthetic
from .synth import write_synthetic, state_codes
from .cli import SynthSubcommand
