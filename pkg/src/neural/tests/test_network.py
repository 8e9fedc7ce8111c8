import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from neural import *
from neural.layers import DENSE, CONV1D, DROPOUT, RESIDUAL, GLOBAL_AVG_POOL
from neural.layers import BATCHNORM, RELU


def set_parameters(net, **values):
    parameters = net.parameters()
    for name, value in values.items():
        parameters[name.replace('__', '.')].data[...] = value


def test_identity_dense():
    net = Network(NetworkSpec((3,), [LayerSpec.dense(3)]))
    set_parameters(net, **{'0__dense__weight': np.eye(3),
                           '0__dense__bias': 0.0})
    batch = np.random.default_rng(0).normal(0, 1, (4, 3))
    assert np.array_equal(forward(net, batch).data, batch)


def test_dropout_is_identity_at_inference():
    net = Network(NetworkSpec((6,), [LayerSpec.dropout(0.5)]))
    batch = np.arange(12, dtype=float).reshape(2, 6) + 1.0
    assert np.array_equal(net.forward(batch, training=False).data, batch)
    out = net.forward(batch, training=True,
                      rng=np.random.default_rng(1)).data
    assert set(np.unique(out / batch)) <= {0.0, 2.0}


def test_identity_convolution():
    net = Network(NetworkSpec((1, 5), [LayerSpec.conv1d(1, kernel_size=1)]))
    set_parameters(net, **{'0__conv1d__weight': 1.0, '0__conv1d__bias': 0.0})
    batch = np.random.default_rng(2).normal(0, 1, (3, 1, 5))
    assert np.array_equal(net.forward(batch).data, batch)
    # dense rows feed single-channel sequences
    assert np.array_equal(net.forward(batch[:, 0, :]).data, batch)


def test_batchnorm_modes():
    net = Network(NetworkSpec((2,), [LayerSpec.batchnorm1d()]))
    batch = np.array([[1.0, 10.0], [3.0, 30.0]])
    out = net.forward(batch, training=True).data
    np.testing.assert_allclose(out.mean(axis=0), 0.0, atol=1e-12)
    buffers = net.buffers()
    np.testing.assert_allclose(buffers['0.batchnorm1d.running_mean'],
                               [0.2, 2.0])
    # unbiased batch variance is 2 and 200
    np.testing.assert_allclose(buffers['0.batchnorm1d.running_var'],
                               [0.9 + 0.2, 0.9 + 20.0])
    single = net.forward(batch[:1], training=False).data
    both = net.forward(batch, training=False).data
    np.testing.assert_allclose(single, both[:1], rtol=0, atol=1e-12)


def test_zero_residual_branch_is_identity():
    net = Network(NetworkSpec((3, 5), [LayerSpec.residual_block(3)]))
    set_parameters(net, **{'0__residual_block__bn2__gamma': 0.0,
                           '0__residual_block__bn2__beta': 0.0})
    batch = np.random.default_rng(3).uniform(0, 2, (2, 3, 5))
    assert np.array_equal(net.forward(batch, training=True).data, batch)
    assert np.array_equal(net.forward(batch).data, batch)


def test_zero_residual_branch_with_projection():
    net = Network(NetworkSpec((2, 6), [LayerSpec.residual_block(4,
                                                                stride=2)]))
    set_parameters(net, **{'0__residual_block__bn2__gamma': 0.0,
                           '0__residual_block__bn2__beta': 0.0})
    parameters = net.parameters()
    weight = parameters['0.residual_block.projection.weight'].data
    bias = parameters['0.residual_block.projection.bias'].data
    batch = np.random.default_rng(4).normal(0, 1, (2, 2, 6))
    projected = np.einsum('bcl,oc->bol', batch[:, :, ::2], weight[:, :, 0])
    expected = np.maximum(projected + bias[None, :, None], 0.0)
    assert net.output_shape == (4, 3)
    np.testing.assert_allclose(net.forward(batch).data, expected, atol=1e-12)


def test_pooling_is_shift_invariant_with_pointwise_convolutions():
    spec = NetworkSpec((2, 7), [
        LayerSpec.conv1d(3, kernel_size=1), LayerSpec.relu(),
        LayerSpec.conv1d(4, kernel_size=1), LayerSpec.global_avg_pool()],
        seed=9)
    net = Network(spec)
    batch = np.random.default_rng(5).normal(0, 1, (3, 2, 7))
    shifted = np.roll(batch, 3, axis=2)
    np.testing.assert_allclose(net.forward(shifted).data,
                               net.forward(batch).data, atol=1e-12)


def test_shape_errors_name_the_layer():
    with pytest.raises(ShapeError, match='0.conv1d'):
        Network(NetworkSpec((1, 2), [LayerSpec.conv1d(1, kernel_size=5,
                                                      padding=0)]))
    with pytest.raises(ShapeError, match='1.dense'):
        NetworkSpec((1, 4), [LayerSpec.conv1d(2), LayerSpec.dense(2)]) \
            .output_shape()
    with pytest.raises(ShapeError, match='input'):
        Network(build_mlp(4)).forward(np.zeros((2, 5)))


@pytest.mark.parametrize('make', [
    lambda: LayerSpec.dropout(1.0),
    lambda: LayerSpec.dropout(-0.1),
    lambda: LayerSpec.conv1d(2, kernel_size=0),
    lambda: LayerSpec.conv1d(2, stride=0),
    lambda: LayerSpec.residual_block(0),
    lambda: LayerSpec('pooling'),
    lambda: LayerSpec(DENSE),
])
def test_invalid_layer_specs(make):
    with pytest.raises(ConfigurationError):
        make()


def test_build_mlp():
    spec = build_mlp(35, [64, 32])
    assert [layer.kind for layer in spec.layers] == \
        ['dense', 'relu', 'dense', 'relu', 'dense']
    assert [layer.out_units for layer in spec.layers
            if layer.kind == DENSE] == [64, 32, 1]
    assert build_mlp(35, []).layers == [LayerSpec.dense(1)]
    assert Network(spec).forward(np.zeros((8, 35))).shape == (8, 1)


def test_build_cnn7():
    spec = build_cnn7(35)
    assert spec.count(CONV1D) == 7
    assert spec.input_shape == (1, 35)
    assert all(layer.kernel_size == 3 and layer.padding == 1
               for layer in spec.layers if layer.kind == CONV1D)
    assert spec.output_shape() == (1,)
    assert Network(spec).forward(np.zeros((4, 35))).shape == (4, 1)
    with pytest.raises(ConfigurationError):
        build_cnn7(35, [16] * 6)


def test_build_resnet1d():
    spec = build_resnet1d(35, [4, 8, 8])
    assert spec.count(RESIDUAL) == 3
    assert [layer.kind for layer in spec.layers] == \
        [CONV1D] + [RESIDUAL] * 3 + [GLOBAL_AVG_POOL, DENSE, DROPOUT,
                                     DENSE, DROPOUT, DENSE]
    kinds = [layer.kind for layer in spec.layers]
    head = spec.layers[kinds.index(GLOBAL_AVG_POOL) + 1:]
    assert [layer.out_units for layer in head if layer.kind == DENSE] == \
        [256, 128, 1]
    assert [layer.rate for layer in head if layer.kind == DROPOUT] == \
        [0.5, 0.5]
    assert head[-1] == LayerSpec.dense(1)
    assert spec.output_shape() == (1,)
    with pytest.raises(ConfigurationError):
        build_resnet1d(35, [4, 8])


def test_build_resnet1d_options():
    spec = build_resnet1d(35, [4, 8, 8], stem_norm=True,
                          head_activation=True)
    assert [layer.kind for layer in spec.layers] == \
        [CONV1D, BATCHNORM, RELU] + [RESIDUAL] * 3 + \
        [GLOBAL_AVG_POOL, DENSE, RELU, DROPOUT, DENSE, RELU, DROPOUT, DENSE]
    plain = build_resnet1d(35, [4, 8, 8], head_activation=True)
    assert plain.layers[1].kind == RESIDUAL
    assert Network(spec).forward(np.zeros((2, 35))).shape == (2, 1)


def test_same_seed_same_initialisation():
    first, _ = Network(build_cnn7(10, seed=4)).state()
    second, _ = Network(build_cnn7(10, seed=4)).state()
    third, _ = Network(build_cnn7(10, seed=5)).state()
    assert first.keys() == second.keys()
    assert all(np.array_equal(first[name], second[name]) for name in first)
    assert not all(np.array_equal(first[name], third[name])
                   for name in first)


def test_spec_dict_roundtrip():
    spec = build_resnet1d(12, seed=3)
    assert NetworkSpec.from_dict(spec.as_dict()) == spec
    with pytest.raises(ConfigurationError):
        NetworkSpec.from_dict({'layers': []})


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 16), max_size=4), st.integers(1, 40),
       st.integers(1, 9))
def test_mlp_shapes_compose(hidden, n_features, batch):
    spec = build_mlp(n_features, hidden)
    assert spec.output_shape() == (1,)
    out = Network(spec).forward(np.ones((batch, n_features)))
    assert out.shape == (batch, 1)
