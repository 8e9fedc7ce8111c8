'''
Network specifications, instantiated networks and the gradient checker
'''
import logging
import numpy as np
from . import autodiff as ad
from .errors import ConfigurationError, ShapeError
from .layers import LayerSpec, build_layer

logger = logging.getLogger(__name__)

GRAD_CHECK_SAMPLES = 16
GRAD_CHECK_FLOOR = 1e-4
GRAD_CHECK_HALVINGS = 8


class NetworkSpec:
    '''
    Per-sample input shape, ordered layers and an initialisation seed

    ``input_shape`` is ``(features,)`` for dense stacks and
    ``(channels, length)`` for convolutional ones.
    '''

    def output_shape(self):
        '''Per-sample output shape, checking every layer composes'''
        return Network(self).output_shape

    @property
    def input_features(self):
        return int(np.prod(self.input_shape))

    def count(self, kind):
        return sum(1 for layer in self.layers if layer.kind == kind)

    def as_dict(self):
        return {'input_shape': list(self.input_shape),
                'layers': [layer.as_dict() for layer in self.layers],
                'seed': self.seed}

    @classmethod
    def from_dict(cls, value):
        try:
            return cls(value['input_shape'],
                       [LayerSpec.from_dict(layer)
                        for layer in value['layers']],
                       value['seed'])
        except (KeyError, TypeError) as exc:
            raise ConfigurationError('malformed network spec: {}'
                                     .format(exc)) from exc

    def __eq__(self, other):
        return (isinstance(other, NetworkSpec) and
                self.input_shape == other.input_shape and
                self.layers == other.layers and self.seed == other.seed)

    def __repr__(self):
        return 'NetworkSpec(input_shape={}, layers={}, seed={})'.format(
            self.input_shape, self.layers, self.seed)

    def __init__(self, input_shape, layers, seed=0):
        self.input_shape = tuple(int(size) for size in input_shape)
        if not self.input_shape or len(self.input_shape) > 2 or \
                min(self.input_shape) < 1:
            raise ConfigurationError('input shape must be (features,) or '
                                     '(channels, length), got {}'
                                     .format(self.input_shape))
        self.layers = list(layers)
        self.seed = int(seed)


class Network:
    '''Layers instantiated from a NetworkSpec with seeded initialisation'''

    def parameters(self):
        result = {}
        for layer in self.layers:
            result.update(layer.parameters())
        return result

    def buffers(self):
        result = {}
        for layer in self.layers:
            result.update(layer.buffers())
        return result

    def state(self):
        '''Copies of every parameter and buffer array'''
        return ({name: tensor.data.copy()
                 for name, tensor in self.parameters().items()},
                {name: array.copy() for name, array in self.buffers().items()})

    def load_state(self, parameters, buffers=None):
        for name, tensor in self.parameters().items():
            if name not in parameters:
                raise ShapeError('missing parameter {}'.format(name))
            value = np.asarray(parameters[name], dtype=np.float64)
            if value.shape != tensor.shape:
                raise ShapeError('parameter {} has shape {}, expected {}'
                                 .format(name, value.shape, tensor.shape))
            tensor.data[...] = value
        for name, array in self.buffers().items():
            if buffers is not None and name in buffers:
                array[...] = buffers[name]

    def _input(self, batch):
        batch = np.asarray(batch, dtype=np.float64)
        if batch.ndim == 2 and len(self.spec.input_shape) == 2 and \
                batch.shape[1] == self.spec.input_features:
            batch = batch.reshape((batch.shape[0],) + self.spec.input_shape)
        if batch.shape[1:] != self.spec.input_shape:
            raise ShapeError('layer input: expected samples of shape {}, '
                             'got batch of shape {}'
                             .format(self.spec.input_shape, batch.shape))
        return ad.constant(batch)

    def forward(self, batch, training=False, rng=None):
        '''
        Run ``batch`` through every layer, returning the output Tensor

        Dense input batches ``(B, features)`` are reshaped to
        ``(B, 1, features)`` for single-channel convolutional networks.
        '''
        x = self._input(batch)
        if training and rng is None:
            rng = np.random.default_rng(self.spec.seed)
        for layer in self.layers:
            x = layer.forward(x, training, rng)
        return x

    def __init__(self, spec):
        self.spec = spec
        rng = np.random.default_rng(spec.seed)
        shape = spec.input_shape
        self.layers = []
        for index, layer_spec in enumerate(spec.layers):
            layer = build_layer(index, layer_spec, shape, rng)
            shape = layer.output_shape(shape)
            self.layers.append(layer)
        self.output_shape = tuple(shape)


def forward(net, batch, training_mode=False, rng=None):
    return net.forward(batch, training_mode, rng)


def backward(loss, parameters):
    return ad.backward(loss, parameters)


def _deviation(analytic, numeric):
    scale = max(abs(analytic), abs(numeric), GRAD_CHECK_FLOOR)
    return abs(analytic - numeric) / scale


def _same_pattern(first, second):
    return all(np.array_equal(a, b) for a, b in zip(first, second))


def grad_check(spec, batch, h=1e-6, target=None, seed=0):
    '''
    Worst relative deviation between reverse-mode and central-difference
    gradients of a mean-squared-error loss

    Runs in training mode with the dropout generator re-seeded on every
    evaluation, so masks are identical across perturbations. Large tensors
    are checked on a seeded sample of entries. An entry whose perturbation
    flips any ReLU is retried with half the step; entries still straddling a
    kink after GRAD_CHECK_HALVINGS retries are skipped.
    '''
    net = spec if isinstance(spec, Network) else Network(spec)
    parameters = net.parameters()
    if not parameters:
        return 0.0
    saved = net.state()
    batch = np.asarray(batch, dtype=np.float64)
    rng = np.random.default_rng(seed)
    if target is None:
        target = rng.normal(0.0, 1.0, (batch.shape[0],) + net.output_shape)

    def loss():
        out = net.forward(batch, True, np.random.default_rng(seed))
        return ad.mse_loss(out, target)

    base = loss()
    pattern = ad.activation_pattern(base)
    analytic = ad.backward(base, parameters)
    worst = 0.0
    skipped = 0
    for name, tensor in parameters.items():
        flat = tensor.data.reshape(-1)
        if flat.size <= GRAD_CHECK_SAMPLES:
            indices = np.arange(flat.size)
        else:
            indices = np.sort(rng.choice(flat.size, GRAD_CHECK_SAMPLES,
                                         replace=False))
        grad = analytic[name].reshape(-1)
        for index in indices:
            original = flat[index]
            step = h
            for _ in range(GRAD_CHECK_HALVINGS + 1):
                flat[index] = original + step
                upper = loss()
                flat[index] = original - step
                lower = loss()
                flat[index] = original
                if _same_pattern(pattern, ad.activation_pattern(upper)) and \
                        _same_pattern(pattern, ad.activation_pattern(lower)):
                    break
                step /= 2
            else:
                skipped += 1
                continue
            numeric = (upper.item() - lower.item()) / (2 * step)
            worst = max(worst, _deviation(grad[index], numeric))
    net.load_state(*saved)
    if skipped:
        logger.debug('grad check: %d entries straddled a ReLU kink', skipped)
    logger.debug('grad check: worst deviation %.3g', worst)
    return worst
