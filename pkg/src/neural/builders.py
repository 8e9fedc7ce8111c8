from .errors import ConfigurationError
from .layers import LayerSpec
from .network import NetworkSpec

CNN7_CHANNELS = (16, 16, 32, 32, 64, 64, 64)
RESNET_CHANNELS = (32, 64, 128)
MLP_HIDDEN = (64, 32)


def _counts(values, expected, what):
    values = list(values)
    if expected is not None and len(values) != expected:
        raise ConfigurationError('{} needs {} entries, got {}'
                                 .format(what, expected, len(values)))
    for value in values:
        if not isinstance(value, int) or value < 1:
            raise ConfigurationError('{} entries must be positive integers, '
                                     'got {}'.format(what, value))
    return values


def build_mlp(input_features, hidden=MLP_HIDDEN, seed=0):
    '''Dense-relu stack ending in one unit; ``hidden=[]`` is affine'''
    layers = []
    for units in _counts(hidden, None, 'mlp hidden sizes'):
        layers += [LayerSpec.dense(units), LayerSpec.relu()]
    layers.append(LayerSpec.dense(1))
    return NetworkSpec((input_features,), layers, seed)


def build_cnn7(input_features, channels=CNN7_CHANNELS, seed=0):
    '''
    Seven same-padded kernel-3 convolutions over the features as one
    channel, then global average pooling and a dense 64-1 head
    '''
    layers = []
    for count in _counts(channels, 7, 'cnn7 channels'):
        layers += [LayerSpec.conv1d(count, kernel_size=3, stride=1,
                                    padding=1),
                   LayerSpec.relu()]
    layers += [LayerSpec.global_avg_pool(), LayerSpec.dense(64),
               LayerSpec.relu(), LayerSpec.dense(1)]
    return NetworkSpec((1, input_features), layers, seed)


def build_resnet1d(input_features, block_channels=RESNET_CHANNELS, seed=0,
                   stem_norm=False, head_activation=False):
    '''
    Stem convolution, three residual blocks, global average pooling and a
    256-128-1 dense head with dropout 0.5 between the dense layers

    ``stem_norm`` puts batch normalisation and a relu after the stem and
    ``head_activation`` a relu after each hidden dense layer.
    '''
    blocks = _counts(block_channels, 3, 'resnet1d block channels')
    layers = [LayerSpec.conv1d(blocks[0], kernel_size=3, stride=1, padding=1)]
    if stem_norm:
        layers += [LayerSpec.batchnorm1d(), LayerSpec.relu()]
    layers += [LayerSpec.residual_block(count) for count in blocks]
    layers.append(LayerSpec.global_avg_pool())
    for units in (256, 128):
        layers.append(LayerSpec.dense(units))
        if head_activation:
            layers.append(LayerSpec.relu())
        layers.append(LayerSpec.dropout(0.5))
    layers.append(LayerSpec.dense(1))
    return NetworkSpec((1, input_features), layers, seed)
