'''
Minibatch training of networks on a mean-squared-error loss
'''
import logging
import math
import numpy as np
from . import autodiff as ad
from .errors import ConfigurationError, ShapeError, TrainingError
from .network import Network

logger = logging.getLogger(__name__)

ADAM = 'adam'
SGD = 'sgd'


class TrainOptions:
    '''Optimizer, epoch budget, batch size, seed and standardisation'''

    def as_dict(self):
        return {'optimizer': self.optimizer, 'lr': self.lr,
                'beta1': self.beta1, 'beta2': self.beta2,
                'epsilon': self.epsilon, 'epochs': self.epochs,
                'batch_size': self.batch_size, 'loss': 'mse',
                'seed': self.seed,
                'standardize_features': self.standardize_features,
                'standardize_target': self.standardize_target}

    @classmethod
    def from_dict(cls, value):
        value = dict(value)
        value.pop('loss', None)
        return cls(**value)

    def replace(self, **changes):
        values = self.as_dict()
        values.pop('loss')
        values.update(changes)
        return TrainOptions(**values)

    def __eq__(self, other):
        return isinstance(other, TrainOptions) and \
            self.as_dict() == other.as_dict()

    def __repr__(self):
        return 'TrainOptions({})'.format(', '.join(
            '{}={!r}'.format(key, value)
            for key, value in self.as_dict().items()))

    def __init__(self, optimizer=ADAM, lr=1e-3, beta1=0.9, beta2=0.999,
                 epsilon=1e-8, epochs=200, batch_size=32, seed=0,
                 standardize_features=True, standardize_target=True):
        if optimizer not in (ADAM, SGD):
            raise ConfigurationError('unknown optimizer {}'.format(optimizer))
        if not lr >= 0:
            raise ConfigurationError('learning rate must be non-negative, '
                                     'got {}'.format(lr))
        if epochs < 1:
            raise ConfigurationError('epochs must be at least 1, got {}'
                                     .format(epochs))
        if batch_size < 1:
            raise ConfigurationError('batch size must be at least 1, got {}'
                                     .format(batch_size))
        if not (0 <= beta1 < 1 and 0 <= beta2 < 1 and epsilon > 0):
            raise ConfigurationError('adam needs beta1, beta2 in [0, 1) and '
                                     'a positive epsilon')
        self.optimizer = optimizer
        self.lr = float(lr)
        self.beta1 = float(beta1)
        self.beta2 = float(beta2)
        self.epsilon = float(epsilon)
        self.epochs = int(epochs)
        self.batch_size = int(batch_size)
        self.seed = int(seed)
        self.standardize_features = bool(standardize_features)
        self.standardize_target = bool(standardize_target)


class Sgd:
    def step(self, parameters, grads):
        for name, tensor in parameters.items():
            tensor.data -= self.lr * grads[name]

    def __init__(self, lr):
        self.lr = lr


class Adam:
    def step(self, parameters, grads):
        self.t += 1
        correction1 = 1.0 - self.beta1 ** self.t
        correction2 = 1.0 - self.beta2 ** self.t
        for name, tensor in parameters.items():
            grad = grads[name]
            m = self.m.setdefault(name, np.zeros_like(grad))
            v = self.v.setdefault(name, np.zeros_like(grad))
            m *= self.beta1
            m += (1.0 - self.beta1) * grad
            v *= self.beta2
            v += (1.0 - self.beta2) * grad * grad
            step = (m / correction1) / (np.sqrt(v / correction2) + self.eps)
            tensor.data -= self.lr * step

    def __init__(self, lr, beta1, beta2, eps):
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m = {}
        self.v = {}


def make_optimizer(opts):
    if opts.optimizer == SGD:
        return Sgd(opts.lr)
    return Adam(opts.lr, opts.beta1, opts.beta2, opts.epsilon)


class Normalization:
    '''Feature and target means and deviations fitted on training data'''

    def features(self, X):
        return (X - self.feature_mean) / self.feature_sd

    def target(self, y):
        return (y - self.target_mean) / self.target_sd

    def restore_target(self, z):
        return z * self.target_sd + self.target_mean

    def as_dict(self):
        return {'feature_mean': self.feature_mean.tolist(),
                'feature_sd': self.feature_sd.tolist(),
                'target_mean': self.target_mean,
                'target_sd': self.target_sd}

    @classmethod
    def from_dict(cls, value):
        return cls(value['feature_mean'], value['feature_sd'],
                   value['target_mean'], value['target_sd'])

    @classmethod
    def fit(cls, X, y, opts):
        n_features = X.shape[1]
        feature_mean, feature_sd = np.zeros(n_features), np.ones(n_features)
        target_mean, target_sd = 0.0, 1.0
        if opts.standardize_features:
            feature_mean = X.mean(axis=0)
            feature_sd = X.std(axis=0)
            feature_sd[feature_sd == 0] = 1.0
        if opts.standardize_target:
            target_mean = float(y.mean())
            target_sd = float(y.std()) or 1.0
        return cls(feature_mean, feature_sd, target_mean, target_sd)

    def __init__(self, feature_mean, feature_sd, target_mean, target_sd):
        self.feature_mean = np.asarray(feature_mean, dtype=np.float64)
        self.feature_sd = np.asarray(feature_sd, dtype=np.float64)
        self.target_mean = float(target_mean)
        self.target_sd = float(target_sd)


class TrainedNetwork:
    '''Immutable result of training: spec, weights and normalisation'''

    def network(self):
        net = Network(self.spec)
        net.load_state(self.parameters, self.buffers)
        return net

    def predict(self, X):
        return predict_network(self, X)

    def __init__(self, spec, parameters, buffers, normalization,
                 loss_curve=(), options=None):
        self.spec = spec
        self.parameters = {name: np.array(value, dtype=np.float64)
                           for name, value in parameters.items()}
        self.buffers = {name: np.array(value, dtype=np.float64)
                        for name, value in buffers.items()}
        for array in list(self.parameters.values()) + \
                list(self.buffers.values()):
            array.setflags(write=False)
        self.normalization = normalization
        self.loss_curve = [float(loss) for loss in loss_curve]
        self.options = options
        self.__net = None

    @property
    def _net(self):
        if self.__net is None:
            self.__net = self.network()
        return self.__net


def _training_arrays(train):
    if isinstance(train, tuple):
        X, y = train
    else:
        X, y = train.features, train.targets
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if X.ndim != 2 or X.shape[0] != y.shape[0]:
        raise ShapeError('training data must be (rows, features) with one '
                         'target per row, got {} and {}'
                         .format(X.shape, y.shape))
    if X.shape[0] == 0:
        raise ShapeError('no training rows')
    return X, y


def train_network(spec, train, opts=None):
    '''
    Fit ``spec`` to a PanelDataset (or an ``(X, y)`` pair) by minibatch
    descent on mean-squared error

    Rows are reshuffled every epoch from a generator seeded with
    ``opts.seed``; the same generator drives dropout. Raises TrainingError
    naming the epoch if the loss stops being finite.
    '''
    opts = opts or TrainOptions()
    X, y = _training_arrays(train)
    if X.shape[1] != spec.input_features:
        raise ShapeError('network expects {} features, data has {}'
                         .format(spec.input_features, X.shape[1]))
    normalization = Normalization.fit(X, y, opts)
    Xs = normalization.features(X)
    ys = normalization.target(y)

    net = Network(spec)
    parameters = net.parameters()
    optimizer = make_optimizer(opts)
    rng = np.random.default_rng(opts.seed)
    n = X.shape[0]
    curve = []
    for epoch in range(1, opts.epochs + 1):
        order = rng.permutation(n)
        total = 0.0
        for start in range(0, n, opts.batch_size):
            rows = order[start:start + opts.batch_size]
            out = net.forward(Xs[rows], training=True, rng=rng)
            loss = ad.mse_loss(out, ys[rows])
            value = loss.item()
            if not math.isfinite(value):
                raise TrainingError('loss became {}'.format(value), epoch)
            grads = ad.backward(loss, parameters)
            optimizer.step(parameters, grads)
            total += value * len(rows)
        curve.append(total / n)
        if epoch == 1 or epoch == opts.epochs or epoch % 50 == 0:
            logger.debug('epoch %d: loss %.6g', epoch, curve[-1])
    weights, buffers = net.state()
    for name, value in weights.items():
        if not np.all(np.isfinite(value)):
            raise TrainingError('parameter {} is not finite'.format(name),
                                opts.epochs)
    return TrainedNetwork(spec, weights, buffers, normalization, curve, opts)


def predict_network(net, X):
    '''Standardise, run in inference mode and restore the target scale'''
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    if X.ndim != 2 or X.shape[1] != net.spec.input_features:
        raise ShapeError('network expects {} features, got input of shape {}'
                         .format(net.spec.input_features, X.shape))
    out = net._net.forward(net.normalization.features(X), training=False)
    return net.normalization.restore_target(out.data.reshape(-1))


__all__ = ['TrainOptions', 'TrainedNetwork', 'Normalization', 'Adam', 'Sgd',
           'train_network', 'predict_network']
