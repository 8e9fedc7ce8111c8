from .errors import MetricError, UndefinedDenominatorError, SchemaMismatch
from .predictions import PredictionSet, PREDICTION_COLUMNS
from .reports import StateMetrics, ErrorReport, OVERALL
from .reports import mae, nmae, per_state_report
from .reports import comparison_wins, comparison_frame, write_comparison
from .importance import ImportanceTable, FrequencyReport
from .importance import permutation_importance, model_importance
from .importance import top_k_frequency, sort_scores
from .importance import GAIN, PERMUTATION, AUTO, GLOBAL
