import math
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays
from ingest import PanelDataset
from featsel import *


def two_pass_score(x, y):
    n = len(x)
    mx = sum(x) / n
    my = sum(y) / n
    sxy = sum((a - mx) * (b - my) for a, b in zip(x, y))
    sxx = sum((a - mx) ** 2 for a in x)
    syy = sum((b - my) ** 2 for b in y)
    r = sxy / math.sqrt(sxx * syy)
    return r, r * r / (1 - r * r) * (n - 2)


def panel(columns, target):
    names = sorted(columns)
    n = len(target)
    return PanelDataset(names, ['ca'] * n,
                        np.datetime64('2020-04-06') + np.arange(n),
                        np.column_stack([columns[name] for name in names]),
                        target)


def test_perfect_correlation():
    x = [1.0, 5.0, 2.0, 8.0]
    score = f_regression_score(x, x)
    assert score.correlation == pytest.approx(1.0)
    assert score.f_stat == math.inf
    score = f_regression_score([1, 2, 3, 4], [4, 3, 2, 1])
    assert score.correlation == pytest.approx(-1.0)
    assert score.f_stat == math.inf


def test_closed_form():
    score = f_regression_score([1, 2, 3, 4], [1, 2, 2, 4], 'a')
    assert score.name == 'a'
    assert score.correlation == pytest.approx(4.5 / math.sqrt(23.75),
                                              rel=1e-12)
    assert score.f_stat == pytest.approx(81.0 / 7.0, rel=1e-12)
    assert not score.degenerate


def test_degenerate_and_sample_size():
    score = f_regression_score([3, 3, 3, 3], [1, 2, 3, 4])
    assert (score.f_stat, score.correlation, score.degenerate) == (0, 0, True)
    assert f_regression_score([1, 2, 3], [5, 5, 5]).degenerate
    with pytest.raises(SampleSizeError):
        f_regression_score([1, 2], [1, 2])


vectors = st.integers(min_value=3, max_value=50).flatmap(
    lambda n: st.tuples(
        arrays(float, n, elements=st.floats(-100, 100)),
        arrays(float, n, elements=st.floats(-100, 100))))


@settings(max_examples=200, deadline=None)
@given(vectors)
def test_matches_two_pass(pair):
    x, y = pair
    if np.ptp(x) < 1e-1 or np.ptp(y) < 1e-1:
        return
    r, f = two_pass_score(x.tolist(), y.tolist())
    if abs(r) > 1 - 1e-6:
        return
    score = f_regression_score(x, y)
    assert score.correlation == pytest.approx(r, rel=1e-10, abs=1e-12)
    assert score.f_stat == pytest.approx(f, rel=1e-8, abs=1e-10)


@settings(max_examples=100, deadline=None)
@given(vectors, st.floats(0.5, 20), st.floats(-50, 50), st.booleans())
def test_scale_shift_invariance(pair, scale, shift, flip):
    x, y = pair
    if np.ptp(x) < 1e-2 or np.ptp(y) < 1e-2:
        return
    base = f_regression_score(x, y)
    if math.isinf(base.f_stat) or abs(base.correlation) > 1 - 1e-6:
        return
    a = -scale if flip else scale
    moved = f_regression_score(a * x + shift, y)
    assert moved.f_stat == pytest.approx(base.f_stat, rel=1e-7, abs=1e-9)
    expected = -base.correlation if flip else base.correlation
    assert moved.correlation == pytest.approx(expected, rel=1e-7, abs=1e-9)


def test_rank_features():
    rng = np.random.default_rng(0)
    target = rng.uniform(0, 10, 30)
    ds = panel({'a': target.copy(), 'b': rng.uniform(0, 1, 30),
                'c': np.ones(30)}, target)
    ranking = rank_features(ds)
    assert ranking.names()[0] == 'a'
    assert ranking.names()[-1] == 'c'
    assert ranking.entries[-1].degenerate
    assert ranking.n_samples == 30


def test_rank_ties_and_permutation():
    rng = np.random.default_rng(1)
    target = rng.uniform(0, 10, 20)
    column = target + rng.normal(0, 1, 20)
    noise = rng.uniform(0, 1, 20)
    ds = panel({'zeta': column, 'alpha': column.copy(), 'noise': noise},
               target)
    ranking = rank_features(ds)
    assert ranking.names()[:2] == ['alpha', 'zeta']

    reordered = ds.project(['noise', 'zeta', 'alpha'])
    assert rank_features(reordered) == ranking

    order = rng.permutation(20)
    shuffled = PanelDataset(ds.feature_names, ['ca'] * 20,
                            ds.dates[order], ds.features[order],
                            ds.targets[order])
    assert rank_features(shuffled).names() == ranking.names()


def test_select_top_k():
    rng = np.random.default_rng(2)
    target = rng.uniform(0, 10, 25)
    ds = panel({'a': target + rng.normal(0, 5, 25),
                'b': target + rng.normal(0, 0.1, 25),
                'c': rng.uniform(0, 1, 25)}, target)
    ranking = rank_features(ds)
    full = select_top_k(ds, ranking, 3)
    assert full.feature_names == ranking.names()
    assert np.array_equal(full.column('c'), ds.column('c'))
    assert np.array_equal(full.targets, ds.targets)
    one = select_top_k(ds, ranking, 1)
    assert one.feature_names == ['b']
    for k1 in range(1, 4):
        for k2 in range(k1, 4):
            assert (select_top_k(ds, ranking, k2).feature_names[:k1] ==
                    select_top_k(ds, ranking, k1).feature_names)
    for k in (0, 4):
        with pytest.raises(BoundsError):
            select_top_k(ds, ranking, k)


def test_ranking_csv(tmpdir):
    ranking = FeatureRanking([
        FeatureScore('a', math.inf, 1.0, False),
        FeatureScore('b', 2.5, -0.3, False),
        FeatureScore('c', 0.0, 0.0, True),
    ], 10)
    path = str(tmpdir / 'ranking.csv')
    ranking.save(path)
    with open(path) as raw:
        lines = raw.read().splitlines()
    assert lines[0] == 'rank,feature,f_stat,correlation'
    assert lines[1] == '1,a,inf,1'
    assert FeatureRanking.load(path, 10) == ranking
