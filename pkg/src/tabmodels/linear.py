import numpy as np
from .errors import ShapeError

RIDGE = 1e-8


def as_matrix(X, n_features=None):
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.ndim != 2:
        raise ShapeError('feature matrix must be 2-dimensional, got shape {}'
                         .format(X.shape))
    if n_features is not None and X.shape[1] != n_features:
        raise ShapeError('model expects {} features, got {}'
                         .format(n_features, X.shape[1]))
    return X


class LinearModel:
    kind = 'linear'

    @property
    def n_features(self):
        return self.coefficients.size

    def predict(self, X):
        X = as_matrix(X, self.n_features)
        return X @ self.coefficients + self.intercept

    def __init__(self, coefficients, intercept, feature_names=None):
        self.coefficients = np.asarray(coefficients, dtype=float).ravel()
        self.intercept = float(intercept)
        self.feature_names = (None if feature_names is None
                              else list(feature_names))


def fit_linear(X, y, feature_names=None):
    '''
    Ordinary least squares through centred normal equations

    A fixed ridge of 1e-8 on the diagonal keeps collinear columns solvable.
    '''
    X = as_matrix(X)
    y = np.asarray(y, dtype=float).ravel()
    if X.shape[0] != y.size or not y.size:
        raise ShapeError('need n >= 1 rows with one target each')
    x_mean = X.mean(axis=0)
    y_mean = y.mean()
    Xc = X - x_mean
    gram = Xc.T @ Xc + RIDGE * np.eye(X.shape[1])
    coefficients = np.linalg.solve(gram, Xc.T @ (y - y_mean))
    return LinearModel(coefficients, y_mean - x_mean @ coefficients,
                       feature_names)
