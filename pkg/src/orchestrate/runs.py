'''
Experiment protocol: global and per-state training over seeded repeats

Both granularities split the panel once at a shared date boundary, rank
features on the training side of every group (the pooled panel, or one
state), keep the top k, fit one model per (group, seed) and predict the
group's test rows. Groups and seeds are independent; their results are
reduced in sorted (seed, group) order.
'''
import logging
import math
from concurrent import futures
import numpy as np
from featsel import rank_features
from ingest import split_by_date
from metrics import GLOBAL, PredictionSet
from .errors import ConfigurationError, SampleError
from .suite import ALL, LOCAL, SeedRun, SuiteResult, normalize_k

logger = logging.getLogger(__name__)


class _Group:
    def __init__(self, name, train, test):
        self.name = name
        self.train = train
        self.test = test
        self.ranking = None


def _groups(ds, cfg):
    '''Split once and partition into evaluated groups, skipped states'''
    split = split_by_date(ds, cfg.train_fraction)
    if cfg.granularity == GLOBAL:
        return split, [_Group(GLOBAL, split.train, split.test)], []
    groups, skipped = [], []
    for state in ds.distinct_states():
        train = split.train.for_state(state)
        test = split.test.for_state(state)
        if len(train) < cfg.min_train_rows or not len(test):
            logger.warning('skipping state %s: %d training rows, %d test '
                           'rows (at least %d training rows and one test '
                           'row needed)', state, len(train), len(test),
                           cfg.min_train_rows)
            skipped.append(state)
            continue
        groups.append(_Group(state, train, test))
    if not groups:
        raise SampleError('every state was skipped; no local model can be '
                          'trained')
    return split, groups, skipped


def _rank(groups):
    for group in groups:
        group.ranking = rank_features(group.train)


def _fit_one(family, group, names, seed):
    model = family.fit(group.train.project(names), seed)
    test = group.test.project(names)
    predicted = family.predict(model, test.features)
    return model, PredictionSet(test.states, test.dates, predicted,
                                test.targets)


def _execute(cfg, groups, k, seeds):
    '''Fit every (seed, group); returns per-seed runs and first-seed models'''
    family = cfg.family_instance()
    tasks = [(seed, group) for seed in seeds for group in groups]

    def work(task):
        seed, group = task
        logger.debug('fitting %s on %s (seed %d, %d rows)', cfg.family,
                     group.name, seed, len(group.train))
        return _fit_one(family, group, group.ranking.top(k), seed)

    if cfg.jobs > 1:
        with futures.ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(work, tasks))
    else:
        results = [work(task) for task in tasks]
    by_task = dict(zip(((seed, group.name) for seed, group in tasks),
                       results))
    per_seed, models = [], {}
    for seed in seeds:
        parts = []
        for group in groups:
            model, predictions = by_task[(seed, group.name)]
            if seed == seeds[0]:
                models[group.name] = model
            parts.append(predictions)
        predictions = PredictionSet.concat(parts)
        if cfg.clamp_nonneg:
            predictions = predictions.clamp_nonneg()
        per_seed.append(SeedRun.evaluate(seed, predictions))
    return per_seed, models


def _run(ds, cfg):
    k = cfg.resolve_k(len(ds.feature_names))
    split, groups, skipped = _groups(ds, cfg)
    _rank(groups)
    per_seed, models = _execute(cfg, groups, k, cfg.seeds)
    features = {group.name: group.ranking.top(k) for group in groups}
    logger.info('%s %s suite: mean MAE %.6g over %d seeds', cfg.granularity,
                cfg.family, np.mean([run.mae for run in per_seed]),
                len(per_seed))
    rankings = {group.name: group.ranking for group in groups}
    return SuiteResult(cfg, per_seed, models, features, skipped,
                       split.boundary, rankings)


def run_global(ds, cfg):
    '''One model on the pooled training rows of every state'''
    if cfg.granularity != GLOBAL:
        raise ConfigurationError('run_global needs granularity global, got '
                                 '{}'.format(cfg.granularity))
    return _run(ds, cfg)


def run_local(ds, cfg):
    '''
    One model per state, evaluated as an ensemble

    Each state's test rows are predicted by its own model; states with
    fewer than ``cfg.min_train_rows`` training rows are skipped.
    '''
    if cfg.granularity != LOCAL:
        raise ConfigurationError('run_local needs granularity local, got {}'
                                 .format(cfg.granularity))
    return _run(ds, cfg)


def run_suite(ds, cfg):
    if cfg.granularity == GLOBAL:
        return run_global(ds, cfg)
    return run_local(ds, cfg)


def resolve_ks(ks, n_features):
    resolved = [n_features if normalize_k(k) == ALL else k for k in ks]
    if not resolved:
        raise ConfigurationError('feature count list is empty')
    for k in resolved:
        if not 1 <= k <= n_features:
            raise ConfigurationError('feature count {} outside [1, {}]'
                                     .format(k, n_features))
    if any(b <= a for a, b in zip(resolved, resolved[1:])):
        raise ConfigurationError('feature counts must be strictly '
                                 'ascending, got {}'.format(list(ks)))
    return resolved


def feature_sweep(ds, cfg, ks, all_seeds=False):
    '''
    Overall MAE for each feature count in ``ks``

    Rankings are computed once and their prefixes reused for every k.
    Only the first configured seed is used unless ``all_seeds`` is set,
    in which case the MAE is averaged over the seeds.
    '''
    resolved = resolve_ks(ks, len(ds.feature_names))
    seeds = cfg.seeds if all_seeds else cfg.seeds[:1]
    _, groups, _ = _groups(ds, cfg)
    _rank(groups)
    curve = []
    for k in resolved:
        per_seed, _ = _execute(cfg, groups, k, seeds)
        value = math.fsum(run.mae for run in per_seed) / len(per_seed)
        logger.info('k=%d: MAE %.6g', k, value)
        curve.append((k, value))
    return curve
