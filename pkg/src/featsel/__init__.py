from .errors import FeatureSelectionError, SampleSizeError, BoundsError
from .scoring import FeatureScore, f_regression_score, score_columns
from .ranking import FeatureRanking, rank_features, select_top_k
