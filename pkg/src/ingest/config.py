from configs import manager
from runconf import Field
from .features import ColumnManifest
from .synth import SynthConfig

DEFAULT_CONFIG = '''[paths]
# Input tables (null: must be set by the experiment file)
survey: string = null
cases: string = null
# Directory for every file a command writes
out: string = 'out'

[columns]
state: string = 'state'
date: string = 'date'
gender: string = 'gender'
age-bucket: string = 'age_bucket'
# Feature columns to use, in order (null: every non-role column)
features: string[] = null

[synth]
n-states: int = 5
n-dates: int = 100
n-features: int = 35
n-informative: int = 5
# shared or per-state
coefficients: string = 'shared'
coefficient-low: float = 1.0
coefficient-high: float = 10.0
intercept: float = 50.0
intercept-spread: float = 0.0
noise-sd: float = 0.0
seed: int = 0
'''

CONFIG_NAME = 'ingest'


def config():
    return manager.request(CONFIG_NAME, DEFAULT_CONFIG)


def add_sections(schema):
    schema.add_section('paths', [
        Field('survey', 'string', nullable=True),
        Field('cases', 'string', nullable=True),
        Field('out', 'string'),
    ])
    schema.add_section('columns', [
        Field('state', 'string'),
        Field('date', 'string'),
        Field('gender', 'string'),
        Field('age-bucket', 'string'),
        Field('features', 'string[]', nullable=True),
    ])
    schema.add_section('synth', [
        Field('n-states', 'int', minimum=1),
        Field('n-dates', 'int', minimum=2),
        Field('n-features', 'int', minimum=1),
        Field('n-informative', 'int', minimum=0),
        Field('coefficients', 'string', choices=['shared', 'per-state']),
        Field('coefficient-low', 'float'),
        Field('coefficient-high', 'float'),
        Field('intercept', 'float'),
        Field('intercept-spread', 'float', minimum=0.0),
        Field('noise-sd', 'float', minimum=0.0),
        Field('seed', 'int', minimum=0),
    ])


def column_manifest(columns):
    features = columns['features']
    if features is not None:
        features = {name: name for name in features}
    return ColumnManifest(state=columns['state'], date=columns['date'],
                          gender=columns['gender'],
                          age_bucket=columns['age_bucket'], features=features)


def synth_config(synth):
    return SynthConfig(
        n_states=synth['n_states'], n_dates=synth['n_dates'],
        n_features=synth['n_features'], n_informative=synth['n_informative'],
        coefficients=synth['coefficients'],
        coefficient_range=(synth['coefficient_low'],
                           synth['coefficient_high']),
        intercept=synth['intercept'],
        intercept_spread=synth['intercept_spread'],
        noise_sd=synth['noise_sd'], seed=synth['seed'])
