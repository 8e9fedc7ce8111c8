from configs import manager
from runconf import Field
from .families import list_families
from .suite import GRANULARITIES, MIN_TRAIN_ROWS_FLOOR, RunConfig

DEFAULT_CONFIG = '''[run]
# lr, dt, gbdt, xgb, mlp, cnn7 or resnet1d
family: string = 'gbdt'
# global: one pooled model; local: one model per state
granularity: string = 'global'
# Number of top-ranked features (0 or 'all': every feature)
feature-k: int = 0
# Share of distinct dates used for training
train-fraction: float = 0.8
seeds: int[] = [0]
# States with fewer training rows are skipped in local runs
min-train-rows: int = 10
clamp-nonneg: bool = false
# Worker threads for independent (seed, group) fits
jobs: int = 1

[sweep]
# Feature counts, ascending ('all' may close the list)
ks: int[] = [1, 5, 15, 35]
# Average every configured seed instead of the first
all-seeds: bool = false
'''

CONFIG_NAME = 'orchestrate'


def config():
    return manager.request(CONFIG_NAME, DEFAULT_CONFIG)


def add_sections(schema):
    schema.add_section('run', [
        Field('family', 'string', choices=list_families()),
        Field('granularity', 'string', choices=list(GRANULARITIES)),
        Field('feature-k', 'count-or-all', minimum=0),
        Field('train-fraction', 'float', minimum=1e-9, maximum=1 - 1e-9),
        Field('seeds', 'int[]', minimum=0),
        Field('min-train-rows', 'int', minimum=MIN_TRAIN_ROWS_FLOOR),
        Field('clamp-nonneg', 'bool'),
        Field('jobs', 'int', minimum=1),
    ])
    schema.add_section('sweep', [
        Field('ks', 'count-or-all[]', minimum=0),
        Field('all-seeds', 'bool'),
    ])


def family_settings(settings):
    '''Sections a model family reads its hyperparameters from'''
    return {name: settings[name] for name in ('tree', 'train', 'network')
            if name in settings}


def run_config(settings):
    run = settings['run']
    return RunConfig(
        family=run['family'], granularity=run['granularity'],
        feature_k=run['feature_k'], train_fraction=run['train_fraction'],
        seeds=run['seeds'], settings=family_settings(settings),
        min_train_rows=run['min_train_rows'],
        clamp_nonneg=run['clamp_nonneg'], jobs=run['jobs'])
