from configs import manager
from runconf import Field

DEFAULT_CONFIG = '''[tree]
# Shared by dt, gbdt and xgb
max-depth: int = 4
min-samples-leaf: int = 2
# Boosting rounds and learning rate (gbdt, xgb)
n-rounds: int = 200
shrinkage: float = 0.1
# L2 leaf penalty and minimum split gain (xgb only)
lambda: float = 1.0
gamma: float = 0.0
'''

CONFIG_NAME = 'tabmodels'


def config():
    return manager.request(CONFIG_NAME, DEFAULT_CONFIG)


def add_sections(schema):
    schema.add_section('tree', [
        Field('max-depth', 'int', minimum=1),
        Field('min-samples-leaf', 'int', minimum=1),
        Field('n-rounds', 'int', minimum=1),
        Field('shrinkage', 'float', minimum=0.0, maximum=1.0),
        Field('lambda', 'float', minimum=0.0),
        Field('gamma', 'float', minimum=0.0),
    ])
