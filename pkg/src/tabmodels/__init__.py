from .errors import ModelError, ShapeError, HyperparameterError
from .errors import SerializationError
from .hyperparams import TreeHyperparams
from .linear import LinearModel, fit_linear
from .tree import RegressionTree, SplitRule, fit_tree, grow_tree
from .boosting import BoostedEnsemble, fit_gbdt, fit_xgb_style
from .boosting import FIRST_ORDER, SECOND_ORDER
from .models import predict_tab, gain_importance
from .models import model_to_dict, model_from_dict, dump_model, load_model
