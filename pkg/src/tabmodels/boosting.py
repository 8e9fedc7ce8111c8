import logging
import numpy as np
from .linear import as_matrix
from .tree import SplitRule, grow_tree

logger = logging.getLogger(__name__)

FIRST_ORDER = 'first-order'
SECOND_ORDER = 'second-order'


class BoostedEnsemble:
    '''
    base_prediction + shrinkage * sum of tree outputs

    ``loss_curve[m]`` is the training mean squared error after m + 1
    rounds.
    '''
    kind = 'ensemble'

    @property
    def n_features(self):
        return self.trees[0].n_features if self.trees else self._n_features

    def staged_predict(self, X):
        X = as_matrix(X, self.n_features)
        prediction = np.full(X.shape[0], self.base_prediction)
        for tree in self.trees:
            prediction = prediction + self.shrinkage * tree.predict(X)
            yield prediction

    def predict(self, X):
        X = as_matrix(X, self.n_features)
        prediction = np.full(X.shape[0], self.base_prediction)
        for prediction in self.staged_predict(X):
            pass
        return prediction

    def __init__(self, base_prediction, trees, shrinkage, mode,
                 reg_lambda=0.0, gamma=0.0, n_features=None,
                 feature_names=None, loss_curve=None):
        self.base_prediction = float(base_prediction)
        self.trees = list(trees)
        self.shrinkage = float(shrinkage)
        self.mode = mode
        self.reg_lambda = float(reg_lambda)
        self.gamma = float(gamma)
        self._n_features = n_features
        self.feature_names = (None if feature_names is None
                              else list(feature_names))
        self.loss_curve = [] if loss_curve is None else list(loss_curve)


def _boost(X, y, hp, rule, mode, feature_names):
    X = as_matrix(X)
    y = np.asarray(y, dtype=float).ravel()
    base = float(y.mean())
    prediction = np.full(y.size, base)
    hessian = np.ones_like(y)
    trees = []
    loss_curve = []
    for _ in range(hp.n_rounds):
        tree = grow_tree(X, prediction - y, hessian, rule, hp.max_depth,
                         hp.min_samples_leaf, feature_names)
        prediction = prediction + hp.shrinkage * tree.predict(X)
        trees.append(tree)
        loss_curve.append(float(np.mean((prediction - y) ** 2)))
    logger.debug('%s boosting: %d rounds, final training mse %g', mode,
                 hp.n_rounds, loss_curve[-1])
    return BoostedEnsemble(base, trees, hp.shrinkage, mode,
                           rule.reg_lambda, rule.gamma, X.shape[1],
                           feature_names, loss_curve)


def fit_gbdt(X, y, hp, feature_names=None):
    '''Each round fits a squared-error tree to the current residuals'''
    return _boost(X, y, hp, SplitRule(), FIRST_ORDER, feature_names)


def fit_xgb_style(X, y, hp, feature_names=None):
    '''Second-order boosting with L2 leaf penalty and minimum split gain'''
    rule = SplitRule(second_order=True, reg_lambda=hp.reg_lambda,
                     gamma=hp.gamma)
    return _boost(X, y, hp, rule, SECOND_ORDER, feature_names)
