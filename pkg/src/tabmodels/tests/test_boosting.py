import numpy as np
import pytest
from tabmodels import *


def random_instance(rng):
    n = int(rng.integers(8, 40))
    n_features = int(rng.integers(1, 5))
    X = rng.uniform(0, 10, (n, n_features))
    y = X[:, 0] ** 2 + rng.normal(0, 2, n)
    return X, y


def test_constant_target():
    X = np.arange(20, dtype=float).reshape(-1, 2)
    model = fit_gbdt(X, np.full(10, 3.0), TreeHyperparams(n_rounds=5))
    assert model.base_prediction == 3.0
    for tree in model.trees:
        np.testing.assert_allclose(tree.predict(X), 0.0, atol=1e-12)


def test_one_round_contract():
    rng = np.random.default_rng(1)
    X = rng.uniform(0, 1, (30, 2))
    y = rng.normal(0, 1, 30)
    hp = TreeHyperparams(max_depth=64, min_samples_leaf=1, n_rounds=1,
                         shrinkage=1.0)
    model = fit_gbdt(X, y, hp)
    single = fit_tree(X, y - y.mean(), hp)
    np.testing.assert_allclose(model.predict(X), y.mean() + single.predict(X),
                               atol=1e-12)
    assert np.mean((model.predict(X) - y) ** 2) <= np.var(y)


def test_gbdt_mse_non_increasing():
    rng = np.random.default_rng(2)
    for _ in range(50):
        X, y = random_instance(rng)
        hp = TreeHyperparams(max_depth=3, min_samples_leaf=1, n_rounds=200,
                             shrinkage=0.3)
        model = fit_gbdt(X, y, hp)
        curve = [np.mean((y - y.mean()) ** 2)] + model.loss_curve
        for before, after in zip(curve[:-1], curve[1:]):
            assert after <= before * (1 + 1e-12) + 1e-12
        staged = list(model.staged_predict(X))
        assert len(staged) == 200
        assert np.mean((staged[-1] - y) ** 2) == model.loss_curve[-1]


def test_xgb_without_regularisation_matches_gbdt():
    rng = np.random.default_rng(3)
    for _ in range(50):
        X, y = random_instance(rng)
        hp = TreeHyperparams(max_depth=3, min_samples_leaf=2, n_rounds=30,
                             shrinkage=0.5, reg_lambda=0.0, gamma=0.0)
        first = fit_gbdt(X, y, hp)
        second = fit_xgb_style(X, y, hp)
        np.testing.assert_allclose(second.predict(X), first.predict(X),
                                   rtol=0, atol=1e-9)
        assert second.mode == SECOND_ORDER
        assert first.mode == FIRST_ORDER


def test_xgb_single_split_gain():
    X = np.arange(1, 7, dtype=float).reshape(-1, 1)
    y = np.array([1.0, 1.0, 1.0, 5.0, 5.0, 5.0])
    hp = TreeHyperparams(max_depth=1, min_samples_leaf=1, n_rounds=1,
                         shrinkage=1.0, reg_lambda=1.0, gamma=0.0)
    model = fit_xgb_style(X, y, hp)
    tree = model.trees[0]
    # G_L = 6, G_R = -6, H_L = H_R = 3: 0.5 * (36/4 + 36/4 - 0/7)
    assert tree.gain[0] == pytest.approx(9.0)
    assert tree.threshold[0] == 3.5
    np.testing.assert_allclose(model.predict(X), [1.5] * 3 + [4.5] * 3)

    hp = hp.replace(gamma=10.0)
    assert len(fit_xgb_style(X, y, hp).trees[0]) == 1


def test_large_gamma_predicts_base():
    rng = np.random.default_rng(4)
    X, y = random_instance(rng)
    hp = TreeHyperparams(n_rounds=20, gamma=1e12)
    model = fit_xgb_style(X, y, hp)
    assert all(len(tree) == 1 for tree in model.trees)
    np.testing.assert_allclose(model.predict(X), y.mean(), atol=1e-9)


def test_ensemble_is_sum_of_trees():
    rng = np.random.default_rng(5)
    X, y = random_instance(rng)
    model = fit_xgb_style(X, y, TreeHyperparams(n_rounds=15))
    expected = model.base_prediction + model.shrinkage * sum(
        tree.predict(X) for tree in model.trees)
    np.testing.assert_allclose(predict_tab(model, X), expected, atol=1e-9)
    with pytest.raises(ShapeError):
        predict_tab(model, X[:, :0])


def test_deterministic():
    rng = np.random.default_rng(6)
    X, y = random_instance(rng)
    hp = TreeHyperparams(n_rounds=20)
    first = fit_xgb_style(X, y, hp)
    second = fit_xgb_style(X, y, hp)
    assert model_to_dict(first) == model_to_dict(second)


def test_hyperparams():
    hp = TreeHyperparams()
    assert hp.as_dict() == {'max_depth': 4, 'min_samples_leaf': 2,
                            'n_rounds': 200, 'shrinkage': 0.1, 'lambda': 1.0,
                            'gamma': 0.0, 'seed': 0}
    assert TreeHyperparams.from_config(hp.as_dict()) == hp
    for bad in ({'max_depth': 0}, {'min_samples_leaf': 0}, {'n_rounds': 0},
                {'shrinkage': 0.0}, {'gamma': -1.0}):
        with pytest.raises(HyperparameterError):
            hp.replace(**bad)
