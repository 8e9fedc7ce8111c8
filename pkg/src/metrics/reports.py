'''
Mean absolute error, normalised MAE and per-state breakdowns
'''
import logging
from collections import namedtuple
import numpy as np
import pandas as pd
from .errors import MetricError, SchemaMismatch, UndefinedDenominatorError

logger = logging.getLogger(__name__)

OVERALL = 'entire'

StateMetrics = namedtuple('StateMetrics', ['mae', 'nmae', 'n'])


def _arrays(preds):
    if len(preds) == 0:
        raise MetricError('no predictions to evaluate')
    return preds.predicted, preds.actual


def mae(preds):
    predicted, actual = _arrays(preds)
    return float(np.abs(predicted - actual).mean())


def nmae(preds):
    '''100 * sum |p - t| / sum t, in percent'''
    predicted, actual = _arrays(preds)
    total = actual.sum()
    if total == 0:
        raise UndefinedDenominatorError('targets sum to zero, nMAE is '
                                        'undefined')
    return float(100.0 * np.abs(predicted - actual).sum() / total)


def _nmae_or_none(preds, what):
    try:
        return nmae(preds)
    except UndefinedDenominatorError:
        logger.warning('%s: test targets sum to zero, nMAE left empty', what)
        return None


class ErrorReport:
    '''
    Overall and per-state errors of one PredictionSet

    A state whose test targets sum to zero keeps its MAE and row count but
    has ``nmae`` None; its rows still count toward the overall numbers.
    '''

    @property
    def states(self):
        return list(self.per_state)

    def to_frame(self):
        rows = [(state, m.mae, m.nmae, m.n)
                for state, m in self.per_state.items()]
        rows.append((OVERALL, self.overall_mae, self.overall_nmae, self.n))
        return pd.DataFrame(rows, columns=['state', 'mae', 'nmae', 'n'])

    def save(self, path):
        self.to_frame().to_csv(str(path), index=False, float_format='%.17g')

    def __init__(self, overall_mae, overall_nmae, per_state, n):
        self.overall_mae = overall_mae
        self.overall_nmae = overall_nmae
        self.per_state = dict(sorted(per_state.items()))
        self.n = n


def per_state_report(preds):
    overall = mae(preds)
    per_state = {}
    for state in preds.distinct_states():
        subset = preds.for_state(state)
        per_state[state] = StateMetrics(mae(subset),
                                        _nmae_or_none(subset, state),
                                        len(subset))
    return ErrorReport(overall, _nmae_or_none(preds, OVERALL), per_state,
                       len(preds))


def comparison_wins(first, second):
    '''(states where ``first`` has the lower MAE, states compared)'''
    _check_same_states(first, second)
    wins = sum(1 for state, metrics in first.per_state.items()
               if metrics.mae < second.per_state[state].mae)
    return wins, len(first.per_state)


def _check_same_states(first, second):
    if first.states != second.states:
        missing = sorted(set(first.states) ^ set(second.states))
        raise SchemaMismatch('reports cover different states: {}'
                             .format(', '.join(missing)))


def comparison_frame(first, second, labels=('local', 'global')):
    '''
    Two reports side by side: ``state,mae_<a>,mae_<b>,nmae_<a>,nmae_<b>``
    with a final row for the entire test set
    '''
    _check_same_states(first, second)
    a, b = labels
    rows = [(state, metrics.mae, second.per_state[state].mae, metrics.nmae,
             second.per_state[state].nmae)
            for state, metrics in first.per_state.items()]
    rows.append((OVERALL, first.overall_mae, second.overall_mae,
                 first.overall_nmae, second.overall_nmae))
    return pd.DataFrame(rows, columns=['state', 'mae_' + a, 'mae_' + b,
                                       'nmae_' + a, 'nmae_' + b])


def write_comparison(first, second, path, labels=('local', 'global')):
    comparison_frame(first, second, labels).to_csv(
        str(path), index=False, float_format='%.17g')
