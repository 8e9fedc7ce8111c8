'''
Predicted and actual targets keyed by (state, date)
'''
import numpy as np
import pandas as pd
from .errors import MetricError, SchemaMismatch

PREDICTION_COLUMNS = ['state', 'date', 'predicted', 'actual']


def _frozen(array):
    array.setflags(write=False)
    return array


class PredictionSet:
    '''Rows sorted by state, then date'''

    def __len__(self):
        return len(self.predicted)

    def __eq__(self, other):
        if not isinstance(other, PredictionSet):
            return NotImplemented
        return (np.array_equal(self.states, other.states) and
                np.array_equal(self.dates, other.dates) and
                np.array_equal(self.predicted, other.predicted) and
                np.array_equal(self.actual, other.actual))

    def __repr__(self):
        return 'PredictionSet({} rows, {} states)'.format(
            len(self), len(self.distinct_states()))

    @property
    def rows(self):
        return list(zip(self.states.tolist(), self.dates,
                        self.predicted.tolist(), self.actual.tolist()))

    def keys(self):
        return list(zip(self.states.tolist(), self.dates.tolist()))

    def distinct_states(self):
        return sorted(set(self.states.tolist()))

    def for_state(self, state):
        mask = self.states == state
        return PredictionSet(self.states[mask], self.dates[mask],
                             self.predicted[mask], self.actual[mask])

    def clamp_nonneg(self):
        return PredictionSet(self.states, self.dates,
                             np.maximum(self.predicted, 0.0), self.actual)

    def to_frame(self):
        return pd.DataFrame({
            'state': self.states,
            'date': pd.to_datetime(self.dates).strftime('%Y-%m-%d'),
            'predicted': self.predicted,
            'actual': self.actual,
        }, columns=PREDICTION_COLUMNS)

    def save(self, path):
        self.to_frame().to_csv(str(path), index=False, float_format='%.17g')

    @staticmethod
    def load(path):
        frame = pd.read_csv(str(path), dtype={'state': str, 'date': str},
                            keep_default_na=False)
        if list(frame.columns) != PREDICTION_COLUMNS:
            raise SchemaMismatch('{}: expected columns {}'.format(
                path, ','.join(PREDICTION_COLUMNS)))
        try:
            predicted = frame['predicted'].astype(float).to_numpy()
            actual = frame['actual'].astype(float).to_numpy()
            dates = frame['date'].to_numpy(dtype='datetime64[D]')
        except ValueError as exc:
            raise SchemaMismatch('{}: {}'.format(path, exc)) from exc
        return PredictionSet(frame['state'].to_numpy(dtype=object), dates,
                             predicted, actual)

    @staticmethod
    def concat(sets):
        sets = list(sets)
        if not sets:
            return PredictionSet([], [], [], [])
        return PredictionSet(
            np.concatenate([item.states for item in sets]),
            np.concatenate([item.dates for item in sets]),
            np.concatenate([item.predicted for item in sets]),
            np.concatenate([item.actual for item in sets]))

    def __init__(self, states, dates, predicted, actual):
        states = np.array(states, dtype=object).reshape(-1)
        dates = np.array(dates, dtype='datetime64[D]').reshape(-1)
        predicted = np.array(predicted, dtype=np.float64).reshape(-1)
        actual = np.array(actual, dtype=np.float64).reshape(-1)
        if not len(states) == len(dates) == len(predicted) == len(actual):
            raise MetricError('prediction columns differ in length')
        order = np.lexsort((dates, states.astype(str))) if len(states) \
            else np.arange(0)
        self.states = _frozen(states[order])
        self.dates = _frozen(dates[order])
        self.predicted = _frozen(predicted[order])
        self.actual = _frozen(actual[order])
