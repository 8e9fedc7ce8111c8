import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from neural import *
from neural import autodiff as ad


def test_square_gradient():
    w = parameter(3.0, 'w')
    grads = backward(ad.mul(w, w), {'w': w})
    assert grads['w'] == pytest.approx(6.0)


def test_unreached_parameter_gets_zero():
    w = parameter([1.0, 2.0], 'w')
    unused = parameter(np.ones((2, 3)), 'unused')
    loss = ad.mean(ad.mul(w, w))
    grads = backward(loss, {'w': w, 'unused': unused})
    np.testing.assert_allclose(grads['w'], [1.0, 2.0])
    assert grads['unused'].shape == (2, 3)
    assert not grads['unused'].any()


def test_backward_twice_needs_new_forward():
    w = parameter(2.0, 'w')
    loss = ad.mul(w, w)
    backward(loss, {'w': w})
    with pytest.raises(StateError):
        backward(loss, {'w': w})
    assert backward(ad.mul(w, w), {'w': w})['w'] == pytest.approx(4.0)


def test_broadcast_add_sums_gradient():
    x = parameter(np.ones((4, 3)), 'x')
    b = parameter(np.zeros(3), 'b')
    grads = backward(ad.mean(ad.add(x, b)), {'x': x, 'b': b})
    np.testing.assert_allclose(grads['b'], [1.0 / 3] * 3)
    np.testing.assert_allclose(grads['x'], np.full((4, 3), 1.0 / 12))


def test_shared_node_accumulates():
    w = parameter(1.5, 'w')
    square = ad.mul(w, w)
    loss = ad.add(square, square)
    assert backward(loss, {'w': w})['w'] == pytest.approx(6.0)


def test_non_scalar_loss():
    w = parameter(np.ones(3), 'w')
    with pytest.raises(ShapeError):
        backward(ad.mul(w, w), {'w': w})


def test_dense_matches_finite_differences():
    rng = np.random.default_rng(0)
    spec = build_mlp(5, [], seed=3)
    assert grad_check(spec, rng.normal(0, 1, (7, 5)), h=1e-4) <= 1e-4


def test_strided_convolution_matches_finite_differences():
    rng = np.random.default_rng(1)
    spec = NetworkSpec((2, 9), [
        LayerSpec.conv1d(3, kernel_size=3, stride=2, padding=1),
        LayerSpec.global_avg_pool(),
        LayerSpec.dense(1)], seed=5)
    assert grad_check(spec, rng.normal(0, 1, (4, 2, 9)), h=1e-4) <= 1e-4


def test_batchnorm_matches_finite_differences():
    rng = np.random.default_rng(2)
    spec = NetworkSpec((3,), [LayerSpec.dense(4), LayerSpec.batchnorm1d(),
                              LayerSpec.dense(1)], seed=1)
    assert grad_check(spec, rng.normal(0, 1, (6, 3))) <= 1e-4


def test_pooling_only_network_passes_vacuously():
    spec = NetworkSpec((2, 4), [LayerSpec.global_avg_pool()])
    assert grad_check(spec, np.ones((3, 2, 4))) == 0.0


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 6), max_size=3), st.integers(1, 6),
       st.integers(0, 2 ** 32 - 1))
def test_any_dense_only_network(widths, n_inputs, seed):
    spec = NetworkSpec((n_inputs,), [LayerSpec.dense(width)
                                     for width in widths + [1]], seed=seed)
    batch = np.random.default_rng(seed).normal(0, 1, (5, n_inputs))
    assert grad_check(spec, batch, h=1e-4, seed=seed) <= 1e-4


def test_relu_network_matches_finite_differences():
    rng = np.random.default_rng(3)
    spec = build_mlp(6, [8, 4], seed=2)
    assert grad_check(spec, rng.normal(0, 1, (5, 6))) <= 1e-4


def test_cnn7_matches_finite_differences():
    rng = np.random.default_rng(4)
    spec = build_cnn7(6, [2, 3, 2, 3, 2, 3, 2], seed=6)
    assert grad_check(spec, rng.normal(0, 1, (3, 6))) <= 1e-4


def test_resnet1d_matches_finite_differences():
    rng = np.random.default_rng(5)
    spec = build_resnet1d(6, [2, 3, 3], seed=7)
    assert grad_check(spec, rng.normal(0, 1, (4, 6))) <= 1e-4
    spec = build_resnet1d(6, [2, 3, 3], seed=7, stem_norm=True,
                          head_activation=True)
    assert grad_check(spec, rng.normal(0, 1, (4, 6))) <= 1e-4


def test_grad_check_leaves_network_untouched():
    net = Network(build_resnet1d(5, [2, 2, 2], seed=1))
    before, buffers = net.state()
    grad_check(net, np.random.default_rng(0).normal(0, 1, (3, 5)))
    after, buffers_after = net.state()
    for name in before:
        assert np.array_equal(before[name], after[name])
    for name in buffers:
        assert np.array_equal(buffers[name], buffers_after[name])
