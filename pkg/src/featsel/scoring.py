'''
Univariate F-regression scores

For one regressor the F statistic of a simple linear fit is a function of
the Pearson correlation alone: f = r^2 / (1 - r^2) * (n - 2).
'''
import logging
from collections import namedtuple
import numpy as np
from .errors import SampleSizeError

logger = logging.getLogger(__name__)

FeatureScore = namedtuple('FeatureScore',
                          ['name', 'f_stat', 'correlation', 'degenerate'])

# |r| this close to 1 is a perfect fit
PERFECT_FIT_TOLERANCE = 1e-12


def _check_samples(n):
    if n < 3:
        raise SampleSizeError('at least 3 samples are needed, got {}'
                              .format(n))


def _f_from_correlation(corr, n):
    corr = np.clip(corr, -1.0, 1.0)
    perfect = np.abs(corr) >= 1.0 - PERFECT_FIT_TOLERANCE
    with np.errstate(divide='ignore', invalid='ignore'):
        f_stat = corr ** 2 / (1.0 - corr ** 2) * (n - 2)
    return corr, np.where(perfect, np.inf, f_stat)


def score_columns(X, y, names):
    '''
    Score every column of X against y in one pass

    Constant columns (or a constant target) get f_stat 0, correlation 0 and
    the degenerate flag.
    '''
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float).ravel()
    if X.ndim != 2 or X.shape[0] != y.size:
        raise ValueError('X must be n by F with n = {}'.format(y.size))
    n = y.size
    _check_samples(n)
    degenerate = (np.ptp(X, axis=0) == 0) | (np.ptp(y) == 0)
    Xc = X - X.mean(axis=0)
    yc = y - y.mean()
    with np.errstate(divide='ignore', invalid='ignore'):
        # column-wise sums keep a column's score independent of its position
        corr = ((Xc * yc[:, None]).sum(axis=0) /
                np.sqrt((Xc ** 2).sum(axis=0) * (yc @ yc)))
    corr = np.where(degenerate, 0.0, corr)
    corr, f_stat = _f_from_correlation(corr, n)
    f_stat = np.where(degenerate, 0.0, f_stat)
    for name in np.asarray(names)[degenerate]:
        logger.warning('feature %s is degenerate (constant column or '
                       'target), scored as 0', name)
    return [FeatureScore(str(name), float(f), float(r), bool(flag))
            for name, f, r, flag in zip(names, f_stat, corr, degenerate)]


def f_regression_score(x, y, name=''):
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.size != y.size:
        raise ValueError('x and y lengths differ: {} != {}'
                         .format(x.size, y.size))
    _check_samples(y.size)
    return score_columns(x.reshape(-1, 1), y, [name])[0]
