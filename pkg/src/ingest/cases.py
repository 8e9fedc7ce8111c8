import logging
from collections import namedtuple
import numpy as np
import pandas as pd
from .errors import ValidationError
from .survey import FIRST_DATA_LINE, read_table, require_columns
from .survey import parse_states, parse_dates

logger = logging.getLogger(__name__)

DailyCases = namedtuple('DailyCases', ['state', 'date', 'cases'])

CASE_COLUMNS = ('state', 'date', 'cumulative_cases')


class CumulativeCaseSeries:
    def __len__(self):
        return len(self.dates)

    @property
    def points(self):
        return list(zip(self.dates, (int(count) for count in self.counts)))

    def __init__(self, state, points):
        self.state = state
        self.dates = np.array([point[0] for point in points],
                              dtype='datetime64[D]')
        self.counts = np.array([point[1] for point in points], dtype=np.int64)
        if np.any(self.dates[1:] <= self.dates[:-1]):
            raise ValidationError('dates of {} are not strictly increasing'
                                  .format(state))
        if np.any(self.counts < 0):
            raise ValidationError('negative cumulative count for {}'
                                  .format(state))


def parse_cases_table(raw):
    frame = read_table(raw, 'cases')
    require_columns(frame, CASE_COLUMNS, 'cases')
    states = parse_states(frame['state'], 'state')
    dates = parse_dates(frame['date'], 'date')
    counts = pd.to_numeric(frame['cumulative_cases'].str.strip(),
                           errors='coerce').to_numpy(dtype=float)
    bad = np.flatnonzero(np.isnan(counts) | (counts < 0) |
                         (counts != np.floor(counts)))
    if bad.size:
        row = int(bad[0])
        raise ValidationError('{} is not a non-negative integer'.format(
            repr(frame['cumulative_cases'].iloc[row])),
            row + FIRST_DATA_LINE, 'cumulative_cases')

    result = []
    for state in sorted(set(states)):
        rows = np.flatnonzero(states == state)
        rows = rows[np.argsort(dates[rows], kind='stable')]
        duplicate = np.flatnonzero(dates[rows][1:] == dates[rows][:-1])
        if duplicate.size:
            raise ValidationError('duplicate date {} for {}'.format(
                dates[rows[duplicate[0]]], state),
                int(rows[duplicate[0] + 1]) + FIRST_DATA_LINE, 'date')
        result.append(CumulativeCaseSeries(
            str(state), list(zip(dates[rows], counts[rows].astype(np.int64)))))
    return result


def cumulative_to_daily(series):
    '''
    First differences of a cumulative series

    The first date has no predecessor and is dropped. Negative differences
    (upstream corrections) are clamped to zero; returns (records, clamped).
    '''
    if len(series) < 2:
        return [], 0
    diffs = np.diff(series.counts)
    clamped = int(np.count_nonzero(diffs < 0))
    if clamped:
        logger.warning('%s: clamped %d negative daily differences',
                       series.state, clamped)
    daily = np.maximum(diffs, 0)
    records = [DailyCases(series.state, date, float(cases))
               for date, cases in zip(series.dates[1:], daily)]
    return records, clamped
