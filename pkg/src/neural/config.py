from configs import manager
from runconf import Field
from .training import ADAM, SGD

DEFAULT_CONFIG = '''[train]
# adam or sgd
optimizer: string = 'adam'
lr: float = 0.001
beta1: float = 0.9
beta2: float = 0.999
epsilon: float = 1e-8
epochs: int = 200
batch-size: int = 32
standardize-features: bool = true
standardize-target: bool = true

[network]
# Hidden layer sizes of mlp ([] gives an affine model)
mlp-hidden: int[] = [64, 32]
# Seven convolution widths of cnn7
cnn7-channels: int[] = [16, 16, 32, 32, 64, 64, 64]
# Three residual block widths of resnet1d
resnet-channels: int[] = [32, 64, 128]
# Batch normalisation and relu after the resnet1d stem convolution
resnet-stem-norm: bool = false
# Relu after each hidden dense layer of the resnet1d head
resnet-head-activation: bool = false
'''

CONFIG_NAME = 'neural'


def config():
    return manager.request(CONFIG_NAME, DEFAULT_CONFIG)


def add_sections(schema):
    schema.add_section('train', [
        Field('optimizer', 'string', choices=[ADAM, SGD]),
        Field('lr', 'float', minimum=0.0),
        Field('beta1', 'float', minimum=0.0, maximum=0.999999),
        Field('beta2', 'float', minimum=0.0, maximum=0.999999),
        Field('epsilon', 'float', minimum=1e-300),
        Field('epochs', 'int', minimum=1),
        Field('batch-size', 'int', minimum=1),
        Field('standardize-features', 'bool'),
        Field('standardize-target', 'bool'),
    ])
    schema.add_section('network', [
        Field('mlp-hidden', 'int[]', minimum=1, allow_empty=True),
        Field('cnn7-channels', 'int[]', minimum=1),
        Field('resnet-channels', 'int[]', minimum=1),
        Field('resnet-stem-norm', 'bool'),
        Field('resnet-head-activation', 'bool'),
    ])
