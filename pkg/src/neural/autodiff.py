'''
Reverse-mode differentiation over dense float64 arrays

Every operation returns a Tensor that remembers its parents and a closure
mapping the gradient of the output onto gradients of the parents. backward
walks the recorded graph once in reverse topological order.
'''
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from .errors import ShapeError, StateError

RELU = 'relu'


class Tensor:
    def __init__(self, data, parents=(), backward=None, name=None,
                 requires_grad=None):
        self.data = np.asarray(data, dtype=np.float64)
        self.grad = None
        self.name = name
        self.parents = tuple(parents)
        self.backward_fn = backward
        if requires_grad is None:
            requires_grad = any(parent.requires_grad for parent in parents)
        self.requires_grad = requires_grad
        self.consumed = False

    @property
    def shape(self):
        return self.data.shape

    def item(self):
        return float(self.data)

    def __repr__(self):
        return 'Tensor(shape={}, name={})'.format(self.shape, self.name)


def parameter(data, name):
    return Tensor(data, name=name, requires_grad=True)


def constant(data):
    if isinstance(data, Tensor):
        return data
    return Tensor(data, requires_grad=False)


def _unbroadcast(grad, shape):
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def add(a, b):
    a, b = constant(a), constant(b)

    def backward(grad):
        return _unbroadcast(grad, a.shape), _unbroadcast(grad, b.shape)
    return Tensor(a.data + b.data, (a, b), backward)


def mul(a, b):
    a, b = constant(a), constant(b)

    def backward(grad):
        return (_unbroadcast(grad * b.data, a.shape),
                _unbroadcast(grad * a.data, b.shape))
    return Tensor(a.data * b.data, (a, b), backward)


def matmul(a, b):
    a, b = constant(a), constant(b)
    if a.data.ndim != 2 or b.data.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ShapeError('cannot multiply {} by {}'.format(a.shape, b.shape))

    def backward(grad):
        return grad @ b.data.T, a.data.T @ grad
    return Tensor(a.data @ b.data, (a, b), backward)


def relu(a):
    mask = a.data > 0

    def backward(grad):
        return (grad * mask,)
    out = Tensor(np.where(mask, a.data, 0.0), (a,), backward, name=RELU)
    out.mask = mask
    return out


def reshape(a, shape):
    def backward(grad):
        return (grad.reshape(a.shape),)
    return Tensor(a.data.reshape(shape), (a,), backward)


def mean(a, axis=None):
    count = a.data.size if axis is None else a.shape[axis]

    def backward(grad):
        if axis is not None:
            grad = np.expand_dims(grad, axis)
        return (np.broadcast_to(grad, a.shape) / count,)
    return Tensor(a.data.mean(axis=axis), (a,), backward)


def mse_loss(prediction, target):
    '''Mean squared error between a (B, 1) output and B targets'''
    target = np.asarray(target, dtype=np.float64).reshape(prediction.shape)
    diff = add(prediction, -target)
    return mean(mul(diff, diff))


def conv1d(x, weight, bias, stride=1, padding=0):
    '''
    x (B, C, L), weight (O, C, K), bias (O,) -> (B, O, L_out)

    Zero padding on both ends; L_out = (L + 2 * padding - K) // stride + 1.
    '''
    batch, channels, length = x.shape
    out_channels, in_channels, kernel = weight.shape
    if channels != in_channels:
        raise ShapeError('conv1d expects {} input channels, got {}'
                         .format(in_channels, channels))
    padded = np.pad(x.data, ((0, 0), (0, 0), (padding, padding)))
    if padded.shape[2] < kernel:
        raise ShapeError('input of length {} is shorter than kernel {}'
                         .format(length, kernel))
    windows = sliding_window_view(padded, kernel, axis=2)[:, :, ::stride, :]
    out_length = windows.shape[2]
    out = np.einsum('bclk,ock->bol', windows, weight.data)
    out = out + bias.data[None, :, None]

    def backward(grad):
        grad_weight = np.einsum('bclk,bol->ock', windows, grad)
        grad_bias = grad.sum(axis=(0, 2))
        grad_windows = np.einsum('bol,ock->bclk', grad, weight.data)
        grad_padded = np.zeros_like(padded)
        span = stride * (out_length - 1) + 1
        for k in range(kernel):
            grad_padded[:, :, k:k + span:stride] += grad_windows[..., k]
        grad_x = grad_padded[:, :, padding:padding + length]
        return grad_x, grad_weight, grad_bias
    return Tensor(out, (x, weight, bias), backward)


def batch_norm(x, gamma, beta, axes, eps, stats=None):
    '''
    Per-channel normalisation over ``axes``

    With stats None the batch mean and biased variance are used and
    differentiated through; otherwise ``stats`` = (mean, var) are constants.
    Returns (output, mean, var).
    '''
    shape = [1] * x.data.ndim
    shape[1] = x.shape[1]
    if stats is None:
        mu = x.data.mean(axis=axes, keepdims=True)
        var = x.data.var(axis=axes, keepdims=True)
    else:
        mu = np.reshape(stats[0], shape)
        var = np.reshape(stats[1], shape)
    inv_std = 1.0 / np.sqrt(var + eps)
    normalized = (x.data - mu) * inv_std
    g = gamma.data.reshape(shape)
    out = normalized * g + beta.data.reshape(shape)
    count = x.data.size // x.shape[1]

    def backward(grad):
        grad_gamma = (grad * normalized).sum(axis=axes)
        grad_beta = grad.sum(axis=axes)
        grad_norm = grad * g
        if stats is not None:
            return grad_norm * inv_std, grad_gamma, grad_beta
        grad_x = inv_std / count * (
            count * grad_norm -
            grad_norm.sum(axis=axes, keepdims=True) -
            normalized * (grad_norm * normalized).sum(axis=axes,
                                                      keepdims=True))
        return grad_x, grad_gamma, grad_beta
    result = Tensor(out, (x, gamma, beta), backward)
    return result, mu.reshape(-1), var.reshape(-1)


def graph(root):
    '''Nodes reachable from root through differentiable edges, parents first'''
    order = []
    visited = set()
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in visited:
            continue
        visited.add(id(node))
        stack.append((node, True))
        for parent in node.parents:
            if parent.requires_grad and id(parent) not in visited:
                stack.append((parent, False))
    return order


def backward(loss, parameters=None):
    '''
    Accumulate d loss / d node into every node's ``grad``

    Returns {name: gradient} for ``parameters`` (a name -> Tensor map),
    with zeros for parameters the loss does not depend on. A recorded graph
    can be differentiated only once.
    '''
    if loss.consumed:
        raise StateError('backward already ran on this graph; run a new '
                         'forward pass first')
    if loss.data.size != 1:
        raise ShapeError('backward needs a scalar loss, got shape {}'
                         .format(loss.shape))
    loss.consumed = True
    order = graph(loss)
    grads = {id(loss): np.ones_like(loss.data)}
    for node in reversed(order):
        grad = grads.get(id(node))
        node.grad = grad
        if grad is None or node.backward_fn is None:
            continue
        for parent, parent_grad in zip(node.parents, node.backward_fn(grad)):
            if not parent.requires_grad or parent_grad is None:
                continue
            if id(parent) in grads:
                grads[id(parent)] = grads[id(parent)] + parent_grad
            else:
                grads[id(parent)] = np.array(parent_grad, dtype=np.float64)
    if parameters is None:
        return {}
    result = {}
    for name, tensor in parameters.items():
        grad = grads.get(id(tensor))
        result[name] = (np.zeros_like(tensor.data) if grad is None
                        else grad.reshape(tensor.shape))
    return result


def activation_pattern(root):
    '''ReLU on/off masks of every rectifier feeding ``root``'''
    return [node.mask for node in graph(root) if node.name == RELU]
