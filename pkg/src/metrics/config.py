from configs import manager
from runconf import Field
from .importance import AUTO, GAIN, PERMUTATION

DEFAULT_CONFIG = '''[report]
# Per-state error table next to the overall numbers
per-state: bool = true
# auto: gain for tree models, permutation for the rest
importance-method: string = 'auto'
permutation-repeats: int = 5
# Sizes of the per-state top lists and the frequency table
top: int[] = [5, 15]
frequency: bool = true
# Column labels of a two-suite comparison
compare-labels: string[] = ['local', 'global']
# Emit an SVG chart next to the sweep CSV
plot: bool = true
'''

CONFIG_NAME = 'metrics'


def config():
    return manager.request(CONFIG_NAME, DEFAULT_CONFIG)


def add_sections(schema):
    schema.add_section('report', [
        Field('per-state', 'bool'),
        Field('importance-method', 'string',
              choices=[AUTO, GAIN, PERMUTATION]),
        Field('permutation-repeats', 'int', minimum=1),
        Field('top', 'int[]', minimum=1),
        Field('frequency', 'bool'),
        Field('compare-labels', 'string[]'),
        Field('plot', 'bool'),
    ])
