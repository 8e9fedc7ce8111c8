import logging
import pandas as pd
from .errors import BoundsError, FeatureSelectionError
from .scoring import FeatureScore, score_columns

logger = logging.getLogger(__name__)

RANKING_COLUMNS = ['rank', 'feature', 'f_stat', 'correlation']


def score_key(score):
    # infinities first, degenerate columns after genuine zero scores
    return (-score.f_stat, score.degenerate, score.name)


class FeatureRanking:
    '''Scores sorted by f_stat descending, names ascending on ties'''

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        if not isinstance(other, FeatureRanking):
            return NotImplemented
        return (self.entries == other.entries and
                self.n_samples == other.n_samples)

    def names(self):
        return [entry.name for entry in self.entries]

    def top(self, k):
        if not 1 <= k <= len(self.entries):
            raise BoundsError('k must be in [1, {}], got {}'
                              .format(len(self.entries), k))
        return self.names()[:k]

    def to_frame(self):
        return pd.DataFrame(
            [(i + 1, entry.name, entry.f_stat, entry.correlation)
             for i, entry in enumerate(self.entries)],
            columns=RANKING_COLUMNS)

    def save(self, path):
        self.to_frame().to_csv(path, index=False, float_format='%.17g')

    @staticmethod
    def load(path, n_samples=None):
        '''
        Read a ranking CSV back

        The file has no degeneracy column; zero scores with zero correlation
        are taken to be degenerate.
        '''
        frame = pd.read_csv(path)
        if list(frame.columns) != RANKING_COLUMNS:
            raise FeatureSelectionError('{}: expected columns {}'
                                        .format(path,
                                                ','.join(RANKING_COLUMNS)))
        frame = frame.sort_values('rank')
        entries = [FeatureScore(str(row.feature), float(row.f_stat),
                                float(row.correlation),
                                bool(row.f_stat == 0 and
                                     row.correlation == 0))
                   for row in frame.itertuples(index=False)]
        return FeatureRanking(entries, n_samples)

    def __init__(self, entries, n_samples):
        entries = sorted(entries, key=score_key)
        names = [entry.name for entry in entries]
        if len(set(names)) != len(names):
            raise FeatureSelectionError('feature scored more than once')
        self.entries = entries
        self.n_samples = n_samples


def rank_features(ds):
    '''Rank every feature of the dataset against its target'''
    scores = score_columns(ds.features, ds.targets, ds.feature_names)
    ranking = FeatureRanking(scores, len(ds))
    logger.debug('top features: %s', ', '.join(ranking.names()[:5]))
    return ranking


def select_top_k(ds, ranking, k):
    '''Project the dataset onto the k best features, in ranking order'''
    return ds.project(ranking.top(k))
