'''
Layer specifications and the layers built from them

Per-sample shapes exclude the batch dimension: ``(features,)`` for dense
data, ``(channels, length)`` for sequences. Parameters are named
``<index>.<kind>.<param>`` so a network's parameter map is stable across
rebuilds of the same spec.
'''
import math
import numpy as np
from . import autodiff as ad
from .errors import ConfigurationError, ShapeError

DENSE = 'dense'
CONV1D = 'conv1d'
RELU = 'relu'
BATCHNORM = 'batchnorm1d'
GLOBAL_AVG_POOL = 'global_avg_pool'
DROPOUT = 'dropout'
RESIDUAL = 'residual_block'

KINDS = (DENSE, CONV1D, RELU, BATCHNORM, GLOBAL_AVG_POOL, DROPOUT, RESIDUAL)

BN_MOMENTUM = 0.1
BN_EPS = 1e-5


class LayerSpec:
    '''One layer kind plus its kind-specific parameters'''
    REQUIRED = {
        DENSE: ('out_units',),
        CONV1D: ('out_channels', 'kernel_size', 'stride', 'padding'),
        RELU: (),
        BATCHNORM: (),
        GLOBAL_AVG_POOL: (),
        DROPOUT: ('rate',),
        RESIDUAL: ('out_channels', 'stride'),
    }

    @classmethod
    def dense(cls, out_units):
        return cls(DENSE, out_units=out_units)

    @classmethod
    def conv1d(cls, out_channels, kernel_size=3, stride=1, padding=None):
        if padding is None:
            padding = (kernel_size - 1) // 2
        return cls(CONV1D, out_channels=out_channels, kernel_size=kernel_size,
                   stride=stride, padding=padding)

    @classmethod
    def relu(cls):
        return cls(RELU)

    @classmethod
    def batchnorm1d(cls):
        return cls(BATCHNORM)

    @classmethod
    def global_avg_pool(cls):
        return cls(GLOBAL_AVG_POOL)

    @classmethod
    def dropout(cls, rate):
        return cls(DROPOUT, rate=rate)

    @classmethod
    def residual_block(cls, out_channels, stride=1):
        return cls(RESIDUAL, out_channels=out_channels, stride=stride)

    def as_dict(self):
        return dict(self.params, kind=self.kind)

    @classmethod
    def from_dict(cls, value):
        value = dict(value)
        return cls(value.pop('kind', None), **value)

    def __getattr__(self, name):
        params = self.__dict__.get('params', {})
        if name in params:
            return params[name]
        raise AttributeError(name)

    def __eq__(self, other):
        return (isinstance(other, LayerSpec) and self.kind == other.kind and
                self.params == other.params)

    def __repr__(self):
        args = ', '.join('{}={}'.format(key, value)
                         for key, value in sorted(self.params.items()))
        return 'LayerSpec({}{})'.format(self.kind, ', ' + args if args else '')

    def __validate(self):
        for key in ('out_units', 'out_channels', 'kernel_size', 'stride'):
            if key in self.params and (
                    not isinstance(self.params[key], int) or
                    self.params[key] < 1):
                raise ConfigurationError('{} {} must be a positive integer, '
                                         'got {}'.format(self.kind, key,
                                                         self.params[key]))
        if 'padding' in self.params and self.params['padding'] < 0:
            raise ConfigurationError('conv1d padding must be non-negative')
        if 'rate' in self.params and not 0.0 <= self.params['rate'] < 1.0:
            raise ConfigurationError('dropout rate must be in [0, 1), got {}'
                                     .format(self.params['rate']))

    def __init__(self, kind, **params):
        if kind not in KINDS:
            raise ConfigurationError('unknown layer kind {}'.format(kind))
        required = self.REQUIRED[kind]
        if set(params) != set(required):
            raise ConfigurationError('{} layer takes parameters ({}), got ({})'
                                     .format(kind, ', '.join(required),
                                             ', '.join(sorted(params))))
        self.kind = kind
        self.params = params
        self.__validate()


def _he_uniform(rng, shape, fan_in):
    limit = math.sqrt(6.0 / fan_in)
    return rng.uniform(-limit, limit, shape)


class Layer:
    '''Base layer: no parameters, shape-preserving'''

    def output_shape(self, in_shape):
        return tuple(in_shape)

    def parameters(self):
        return {}

    def buffers(self):
        return {}

    def forward(self, x, training, rng):
        raise NotImplementedError()

    def _shape_error(self, message):
        return ShapeError('layer {}: {}'.format(self.name, message))

    def __init__(self, name, in_shape):
        self.name = name
        self.in_shape = tuple(in_shape)


class Dense(Layer):
    def output_shape(self, in_shape):
        if len(in_shape) != 1:
            raise self._shape_error('dense expects (features,), got {}'
                                    .format(tuple(in_shape)))
        return (self.out_units,)

    def parameters(self):
        return {self.weight.name: self.weight, self.bias.name: self.bias}

    def forward(self, x, training, rng):
        return ad.add(ad.matmul(x, self.weight), self.bias)

    def __init__(self, name, in_shape, out_units, rng):
        super().__init__(name, in_shape)
        self.out_units = out_units
        self.output_shape(in_shape)
        fan_in = in_shape[0]
        self.weight = ad.parameter(
            _he_uniform(rng, (fan_in, out_units), fan_in), name + '.weight')
        self.bias = ad.parameter(np.zeros(out_units), name + '.bias')


class Conv1d(Layer):
    def output_shape(self, in_shape):
        if len(in_shape) != 2:
            raise self._shape_error('conv1d expects (channels, length), got {}'
                                    .format(tuple(in_shape)))
        channels, length = in_shape
        if channels != self.in_channels:
            raise self._shape_error('expected {} channels, got {}'
                                    .format(self.in_channels, channels))
        padded = length + 2 * self.padding
        if padded < self.kernel_size:
            raise self._shape_error('length {} is shorter than kernel {}'
                                    .format(length, self.kernel_size))
        return (self.out_channels,
                (padded - self.kernel_size) // self.stride + 1)

    def parameters(self):
        return {self.weight.name: self.weight, self.bias.name: self.bias}

    def forward(self, x, training, rng):
        return ad.conv1d(x, self.weight, self.bias, self.stride, self.padding)

    def __init__(self, name, in_shape, out_channels, kernel_size, stride,
                 padding, rng):
        super().__init__(name, in_shape)
        if len(in_shape) != 2:
            raise self._shape_error('conv1d expects (channels, length), got {}'
                                    .format(tuple(in_shape)))
        self.in_channels = in_shape[0]
        self.out_channels = out_channels
        self.kernel_size = kernel_size
        self.stride = stride
        self.padding = padding
        self.output_shape(in_shape)
        fan_in = self.in_channels * kernel_size
        self.weight = ad.parameter(
            _he_uniform(rng, (out_channels, self.in_channels, kernel_size),
                        fan_in), name + '.weight')
        self.bias = ad.parameter(np.zeros(out_channels), name + '.bias')


class ReLU(Layer):
    def forward(self, x, training, rng):
        return ad.relu(x)


class BatchNorm1d(Layer):
    '''
    Per-channel (or per-feature) normalisation

    Training mode normalises with batch statistics and folds them into the
    running estimates; inference uses the running estimates only.
    '''

    def parameters(self):
        return {self.gamma.name: self.gamma, self.beta.name: self.beta}

    def buffers(self):
        return {self.name + '.running_mean': self.running_mean,
                self.name + '.running_var': self.running_var}

    def forward(self, x, training, rng):
        axes = (0,) if x.data.ndim == 2 else (0, 2)
        if not training:
            out, _, _ = ad.batch_norm(
                x, self.gamma, self.beta, axes, BN_EPS,
                stats=(self.running_mean, self.running_var))
            return out
        out, mu, var = ad.batch_norm(x, self.gamma, self.beta, axes, BN_EPS)
        count = x.data.size // x.shape[1]
        if count > 1:
            var = var * count / (count - 1)
        self.running_mean *= 1.0 - BN_MOMENTUM
        self.running_mean += BN_MOMENTUM * mu
        self.running_var *= 1.0 - BN_MOMENTUM
        self.running_var += BN_MOMENTUM * var
        return out

    def __init__(self, name, in_shape):
        super().__init__(name, in_shape)
        if len(in_shape) not in (1, 2):
            raise self._shape_error('batchnorm1d expects 1 or 2 dimensions, '
                                    'got {}'.format(tuple(in_shape)))
        channels = in_shape[0]
        self.gamma = ad.parameter(np.ones(channels), name + '.gamma')
        self.beta = ad.parameter(np.zeros(channels), name + '.beta')
        self.running_mean = np.zeros(channels)
        self.running_var = np.ones(channels)


class GlobalAvgPool(Layer):
    def output_shape(self, in_shape):
        if len(in_shape) != 2:
            raise self._shape_error('global_avg_pool expects (channels, '
                                    'length), got {}'.format(tuple(in_shape)))
        return (in_shape[0],)

    def forward(self, x, training, rng):
        return ad.mean(x, axis=2)

    def __init__(self, name, in_shape):
        super().__init__(name, in_shape)
        self.output_shape(in_shape)


class Dropout(Layer):
    '''Inverted dropout; the identity outside training'''

    def forward(self, x, training, rng):
        if not training or self.rate == 0.0:
            return x
        keep = rng.random(x.shape) >= self.rate
        return ad.mul(x, keep / (1.0 - self.rate))

    def __init__(self, name, in_shape, rate):
        super().__init__(name, in_shape)
        self.rate = rate


class ResidualBlock(Layer):
    '''
    conv-bn-relu-conv-bn plus a skip connection, relu after the sum

    The skip is a 1x1 convolution when the channel count or stride changes
    and the identity otherwise.
    '''

    def output_shape(self, in_shape):
        shape = self.conv1.output_shape(in_shape)
        return self.conv2.output_shape(shape)

    def sublayers(self):
        layers = [self.conv1, self.bn1, self.conv2, self.bn2]
        if self.projection is not None:
            layers.append(self.projection)
        return layers

    def parameters(self):
        result = {}
        for layer in self.sublayers():
            result.update(layer.parameters())
        return result

    def buffers(self):
        return dict(self.bn1.buffers(), **self.bn2.buffers())

    def forward(self, x, training, rng):
        branch = self.conv1.forward(x, training, rng)
        branch = ad.relu(self.bn1.forward(branch, training, rng))
        branch = self.conv2.forward(branch, training, rng)
        branch = self.bn2.forward(branch, training, rng)
        skip = x
        if self.projection is not None:
            skip = self.projection.forward(x, training, rng)
        return ad.relu(ad.add(branch, skip))

    def __init__(self, name, in_shape, out_channels, stride, rng):
        super().__init__(name, in_shape)
        if len(in_shape) != 2:
            raise self._shape_error('residual_block expects (channels, '
                                    'length), got {}'.format(tuple(in_shape)))
        self.conv1 = Conv1d(name + '.conv1', in_shape, out_channels, 3,
                            stride, 1, rng)
        shape = self.conv1.output_shape(in_shape)
        self.bn1 = BatchNorm1d(name + '.bn1', shape)
        self.conv2 = Conv1d(name + '.conv2', shape, out_channels, 3, 1, 1, rng)
        self.bn2 = BatchNorm1d(name + '.bn2', shape)
        self.projection = None
        if in_shape[0] != out_channels or stride != 1:
            self.projection = Conv1d(name + '.projection', in_shape,
                                     out_channels, 1, stride, 0, rng)


def build_layer(index, spec, in_shape, rng):
    '''Instantiate ``spec`` as layer ``index`` on ``in_shape`` inputs'''
    name = '{}.{}'.format(index, spec.kind)
    if spec.kind == DENSE:
        return Dense(name, in_shape, spec.out_units, rng)
    if spec.kind == CONV1D:
        return Conv1d(name, in_shape, spec.out_channels, spec.kernel_size,
                      spec.stride, spec.padding, rng)
    if spec.kind == RELU:
        return ReLU(name, in_shape)
    if spec.kind == BATCHNORM:
        return BatchNorm1d(name, in_shape)
    if spec.kind == GLOBAL_AVG_POOL:
        return GlobalAvgPool(name, in_shape)
    if spec.kind == DROPOUT:
        return Dropout(name, in_shape, spec.rate)
    return ResidualBlock(name, in_shape, spec.out_channels, spec.stride, rng)
