import logging
import math
from collections import namedtuple
import numpy as np
import pandas as pd
from .errors import FormatError, ValidationError
from .features import AGGREGATE_TOKENS, ColumnManifest

logger = logging.getLogger(__name__)

SurveySnapshot = namedtuple('SurveySnapshot',
                            ['state', 'date', 'features', 'demographic'])

# data rows start on the second line of the file
FIRST_DATA_LINE = 2


def read_table(raw, what):
    try:
        return pd.read_csv(raw, dtype=str, keep_default_na=False,
                           skipinitialspace=True)
    except pd.errors.EmptyDataError:
        raise FormatError('{} table is empty, header row missing'
                          .format(what))
    except pd.errors.ParserError as exc:
        raise FormatError('cannot parse {} table: {}'.format(what, exc))


def require_columns(frame, columns, what):
    header = [str(column) for column in frame.columns]
    for column in columns:
        if column not in header:
            raise FormatError('{} table header has no column {}'
                              .format(what, repr(column)))


def parse_states(column, name):
    states = column.str.strip().str.lower()
    for row, state in enumerate(states):
        if len(state) != 2 or not state.isalpha():
            raise ValidationError('{} is not a two-letter region code'
                                  .format(repr(state)),
                                  row + FIRST_DATA_LINE, name)
    return states.to_numpy(dtype=str)


def parse_dates(column, name):
    dates = pd.to_datetime(column.str.strip(), format='%Y-%m-%d',
                           errors='coerce')
    bad = np.flatnonzero(dates.isna().to_numpy())
    if bad.size:
        row = int(bad[0])
        raise ValidationError('{} is not an ISO-8601 date'
                              .format(repr(column.iloc[row])),
                              row + FIRST_DATA_LINE, name)
    return dates.to_numpy().astype('datetime64[D]')


def parse_percentages(column, name):
    values = pd.to_numeric(column.str.strip(), errors='coerce').to_numpy(
        dtype=float)
    outside = np.flatnonzero((values < 0.0) | (values > 100.0))
    if outside.size:
        row = int(outside[0])
        raise ValidationError('{} is outside [0, 100]'.format(values[row]),
                              row + FIRST_DATA_LINE, name)
    return values


def _demographic_labels(frame, manifest):
    columns = [column for column in (manifest.gender, manifest.age_bucket)
               if column in frame.columns]
    if not columns:
        return [None] * len(frame)
    parts = []
    for column in (manifest.gender, manifest.age_bucket):
        if column in frame.columns:
            parts.append(frame[column].str.strip().str.lower().tolist())
        else:
            parts.append(['all'] * len(frame))
    return list(zip(*parts))


def parse_survey_table(raw, manifest=None):
    '''
    Parse a survey aggregate table into snapshots

    Unparseable or empty numeric cells are kept as None (missing) rather
    than zero; percentages outside [0, 100] are rejected.
    '''
    if manifest is None:
        manifest = ColumnManifest()
    frame = read_table(raw, 'survey')
    require_columns(frame, [manifest.state, manifest.date], 'survey')
    states = parse_states(frame[manifest.state], manifest.state)
    dates = parse_dates(frame[manifest.date], manifest.date)
    demographics = _demographic_labels(frame, manifest)
    if manifest.features is not None:
        require_columns(frame, list(manifest.features), 'survey')
    columns = manifest.feature_columns(list(frame.columns))
    values = {name: parse_percentages(frame[raw_name], raw_name)
              for raw_name, name in columns.items()}

    snapshots = []
    seen = set()
    for row in range(len(frame)):
        key = (states[row], dates[row], demographics[row])
        if key in seen:
            raise ValidationError('duplicate snapshot for {} {} {}'
                                  .format(states[row], dates[row],
                                          demographics[row] or 'aggregate'),
                                  row + FIRST_DATA_LINE)
        seen.add(key)
        features = {}
        for name, column in values.items():
            value = float(column[row])
            features[name] = None if math.isnan(value) else value
        snapshots.append(SurveySnapshot(str(states[row]), dates[row],
                                        features, demographics[row]))
    logger.debug('parsed %d survey rows with %d feature columns',
                 len(snapshots), len(values))
    return snapshots


def is_aggregate(demographic):
    if demographic is None:
        return True
    return all(part in AGGREGATE_TOKENS for part in demographic)


def filter_aggregate_demographics(snapshots):
    kept = [snapshot for snapshot in snapshots
            if is_aggregate(snapshot.demographic)]
    dropped = len(snapshots) - len(kept)
    if dropped:
        logger.info('dropped %d demographic split rows', dropped)
    return kept, dropped
