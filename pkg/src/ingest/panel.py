'''
Panel dataset: one row per (state, date) with a feature vector and target
'''
import logging
import math
from collections import namedtuple
import numpy as np
from .errors import ConfigurationError, IngestError, SplitError
from .features import ColumnManifest
from .survey import filter_aggregate_demographics, parse_survey_table
from .cases import cumulative_to_daily, parse_cases_table

logger = logging.getLogger(__name__)

JoinDrops = namedtuple('JoinDrops', ['missing_target', 'incomplete'])
DateSplit = namedtuple('DateSplit', ['train', 'test', 'boundary'])
IngestSummary = namedtuple('IngestSummary', [
    'survey_rows', 'demographic_dropped', 'missing_target', 'incomplete',
    'clamped', 'rows', 'states', 'first_date', 'last_date'])


def _frozen(array):
    array.setflags(write=False)
    return array


class PanelDataset:
    '''
    Immutable panel of survey features and daily case targets

    Rows are kept sorted by (state, date). ``features`` is an n by F float
    matrix whose columns follow ``feature_names``.
    '''

    def __len__(self):
        return len(self.targets)

    def __eq__(self, other):
        if not isinstance(other, PanelDataset):
            return NotImplemented
        return (self.feature_names == other.feature_names and
                np.array_equal(self.states, other.states) and
                np.array_equal(self.dates, other.dates) and
                np.array_equal(self.features, other.features) and
                np.array_equal(self.targets, other.targets))

    def __repr__(self):
        return '<PanelDataset rows={} features={} states={}>'.format(
            len(self), len(self.feature_names), len(self.distinct_states()))

    @property
    def rows(self):
        for i in range(len(self)):
            yield (str(self.states[i]), self.dates[i], self.features[i],
                   float(self.targets[i]))

    def distinct_states(self):
        return sorted(set(self.states.tolist()))

    def distinct_dates(self):
        return np.unique(self.dates)

    def date_range(self):
        if not len(self):
            return None
        return self.dates.min(), self.dates.max()

    def column(self, name):
        return self.features[:, self.feature_names.index(name)]

    def select(self, mask):
        return PanelDataset(self.feature_names, self.states[mask],
                            self.dates[mask], self.features[mask],
                            self.targets[mask])

    def for_state(self, state):
        return self.select(self.states == state)

    def project(self, names):
        missing = [name for name in names if name not in self.feature_names]
        if missing:
            raise ConfigurationError('unknown features: {}'
                                     .format(', '.join(missing)))
        columns = [self.feature_names.index(name) for name in names]
        return PanelDataset(names, self.states, self.dates,
                            self.features[:, columns], self.targets)

    def with_features(self, features):
        return PanelDataset(self.feature_names, self.states, self.dates,
                            features, self.targets)

    def __init__(self, feature_names, states, dates, features, targets):
        feature_names = list(feature_names)
        if not feature_names:
            raise ConfigurationError('feature list is empty')
        if len(set(feature_names)) != len(feature_names):
            raise ConfigurationError('feature names contain duplicates')
        states = np.asarray(states, dtype=str)
        dates = np.asarray(dates, dtype='datetime64[D]')
        features = np.asarray(features, dtype=float).reshape(
            len(states), len(feature_names))
        targets = np.asarray(targets, dtype=float)
        if not len(states) == len(dates) == len(targets):
            raise IngestError('panel columns have different lengths')
        order = np.lexsort((dates, states))
        if len(order):
            same = ((states[order][1:] == states[order][:-1]) &
                    (dates[order][1:] == dates[order][:-1]))
            if np.any(same):
                i = order[1:][same][0]
                raise IngestError('duplicate panel row {} {}'
                                  .format(states[i], dates[i]))
        self.feature_names = feature_names
        self.states = _frozen(states[order])
        self.dates = _frozen(dates[order])
        self.features = _frozen(features[order])
        self.targets = _frozen(targets[order])


def join_panel(snapshots, daily, feature_names):
    '''
    Inner join of snapshots and daily cases on (state, date)

    Returns (panel, JoinDrops). Snapshots without a case record or lacking
    any named feature are dropped and counted.
    '''
    feature_names = list(feature_names)
    if not feature_names:
        raise ConfigurationError('feature list is empty')
    cases = {(record.state, np.datetime64(record.date, 'D')): record.cases
             for record in daily}
    states, dates, vectors, targets = [], [], [], []
    missing_target = incomplete = 0
    for snapshot in snapshots:
        key = (snapshot.state, np.datetime64(snapshot.date, 'D'))
        if key not in cases:
            missing_target += 1
            continue
        vector = [snapshot.features.get(name) for name in feature_names]
        if any(value is None or math.isnan(value) for value in vector):
            incomplete += 1
            logger.debug('dropping %s %s: incomplete features', *key)
            continue
        states.append(key[0])
        dates.append(key[1])
        vectors.append(vector)
        targets.append(cases[key])
    if missing_target:
        logger.info('dropped %d snapshots without a case record',
                    missing_target)
    if incomplete:
        logger.warning('dropped %d snapshots with missing features',
                       incomplete)
    features = np.array(vectors, dtype=float).reshape(len(targets),
                                                     len(feature_names))
    panel = PanelDataset(feature_names, states, dates, features, targets)
    return panel, JoinDrops(missing_target, incomplete)


def split_by_date(ds, train_fraction):
    '''
    Split at one date boundary shared by every state

    The first floor(train_fraction * |D|) distinct dates (at least one) go
    to the training side.
    '''
    if not 0.0 < train_fraction < 1.0:
        raise SplitError('train fraction must be in (0, 1), got {}'
                         .format(train_fraction))
    dates = ds.distinct_dates()
    if len(dates) < 2:
        raise SplitError('at least 2 distinct dates are needed, got {}'
                         .format(len(dates)))
    n_train = max(1, int(math.floor(train_fraction * len(dates))))
    if n_train >= len(dates):
        raise SplitError('train fraction {} leaves no test dates'
                         .format(train_fraction))
    boundary = dates[n_train - 1]
    return DateSplit(ds.select(ds.dates <= boundary),
                     ds.select(ds.dates > boundary), boundary)


def load_panel(survey_path, cases_path, feature_names=None, manifest=None):
    '''
    Parse, filter, difference and join the two input files

    With feature_names None every feature column of the survey table is
    used, in header order.
    '''
    if manifest is None:
        manifest = ColumnManifest()
    if feature_names is not None:
        manifest = manifest.select(feature_names)
    with open(survey_path, 'r') as raw:
        snapshots = parse_survey_table(raw, manifest)
    with open(cases_path, 'r') as raw:
        series = parse_cases_table(raw)
    if feature_names is None:
        feature_names = list(snapshots[0].features) if snapshots else []
    kept, dropped = filter_aggregate_demographics(snapshots)
    daily = []
    clamped = 0
    for item in series:
        records, count = cumulative_to_daily(item)
        daily.extend(records)
        clamped += count
    panel, drops = join_panel(kept, daily, feature_names)
    span = panel.date_range() or (None, None)
    summary = IngestSummary(
        survey_rows=len(snapshots), demographic_dropped=dropped,
        missing_target=drops.missing_target, incomplete=drops.incomplete,
        clamped=clamped, rows=len(panel),
        states=len(panel.distinct_states()),
        first_date=None if span[0] is None else str(span[0]),
        last_date=None if span[1] is None else str(span[1]))
    logger.info('loaded %d panel rows over %d states', summary.rows,
                summary.states)
    return panel, summary
