import random
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from ingest import *

D1 = np.datetime64('2020-04-06')
D2 = np.datetime64('2020-04-07')


def snapshot(state, date, **features):
    return SurveySnapshot(state, date, features, None)


def test_join_exact_key():
    panel, drops = join_panel([snapshot('ca', D1, a=1.0, b=2.0)],
                              [DailyCases('ca', D1, 40.0)], ['b', 'a'])
    assert len(panel) == 1
    assert panel.targets.tolist() == [40.0]
    assert panel.features.tolist() == [[2.0, 1.0]]
    assert drops == JoinDrops(0, 0)


def test_join_drops():
    snapshots = [snapshot('ca', D1, a=1.0), snapshot('ca', D2, a=None),
                 snapshot('ny', D1, a=3.0), snapshot('wa', D1)]
    daily = [DailyCases('ca', D1, 1.0), DailyCases('ca', D2, 2.0),
             DailyCases('wa', D1, 3.0)]
    panel, drops = join_panel(snapshots, daily, ['a'])
    assert len(panel) == 1
    assert drops.missing_target == 1
    assert drops.incomplete == 2


def test_join_empty_features():
    with pytest.raises(ConfigurationError):
        join_panel([], [], [])


def test_join_order_insensitive():
    rng = np.random.default_rng(3)
    snapshots = []
    daily = []
    for state in ['ca', 'ny', 'tx']:
        for day in range(5):
            date = D1 + day
            snapshots.append(snapshot(state, date, a=float(rng.uniform()),
                                      b=float(rng.uniform())))
            daily.append(DailyCases(state, date, float(day)))
    first, _ = join_panel(snapshots, daily, ['a', 'b'])
    shuffled = list(snapshots)
    random.Random(1).shuffle(shuffled)
    second, _ = join_panel(shuffled, daily, ['a', 'b'])
    assert first == second
    assert first.states.tolist() == sorted(first.states.tolist())


def make_panel(n_dates, states=('ca', 'ny')):
    rows = [(state, D1 + day) for state in states for day in range(n_dates)]
    return PanelDataset(['a'], [r[0] for r in rows], [r[1] for r in rows],
                        np.arange(len(rows), dtype=float).reshape(-1, 1),
                        np.ones(len(rows)))


@pytest.mark.parametrize('n_dates,n_train', [(10, 8), (7, 5), (2, 1)])
def test_split_by_date(n_dates, n_train):
    split = split_by_date(make_panel(n_dates), 0.8)
    assert len(split.train.distinct_dates()) == n_train
    assert len(split.test.distinct_dates()) == n_dates - n_train
    assert split.boundary == D1 + (n_train - 1)
    assert split.train.distinct_states() == ['ca', 'ny']


@pytest.mark.parametrize('n_dates,fraction', [(1, 0.8), (0, 0.8),
                                              (5, 0.0), (5, 1.0)])
def test_split_errors(n_dates, fraction):
    with pytest.raises(SplitError):
        split_by_date(make_panel(n_dates), fraction)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=2, max_value=40),
       st.floats(min_value=0.01, max_value=0.95))
def test_split_partitions_rows(n_dates, fraction):
    panel = make_panel(n_dates, ('ca', 'ny', 'tx'))
    try:
        split = split_by_date(panel, fraction)
    except SplitError:
        return
    assert split.train.dates.max() < split.test.dates.min()
    keys = set(zip(panel.states.tolist(), panel.dates.tolist()))
    train = set(zip(split.train.states.tolist(), split.train.dates.tolist()))
    test = set(zip(split.test.states.tolist(), split.test.dates.tolist()))
    assert train | test == keys
    assert not train & test


def test_panel_helpers():
    panel = PanelDataset(['a', 'b'], ['ny', 'ca'], [D1, D1],
                         [[1.0, 2.0], [3.0, 4.0]], [5.0, 6.0])
    assert panel.states.tolist() == ['ca', 'ny']
    assert panel.for_state('ny').features.tolist() == [[1.0, 2.0]]
    projected = panel.project(['b'])
    assert projected.feature_names == ['b']
    assert projected.features.tolist() == [[4.0], [2.0]]
    assert panel.date_range() == (D1, D1)
    with pytest.raises(ConfigurationError):
        panel.project(['c'])
    with pytest.raises(ValueError):
        panel.features[0, 0] = 1.0


def test_panel_invariants():
    with pytest.raises(ConfigurationError):
        PanelDataset(['a', 'a'], [], [], np.zeros((0, 2)), [])
    with pytest.raises(IngestError):
        PanelDataset(['a'], ['ca', 'ca'], [D1, D1], [[1.0], [2.0]],
                     [1.0, 1.0])


def test_load_panel(tmpdir):
    survey = tmpdir / 'survey.csv'
    survey.write('state,date,gender,cmnty_cli,hh_cli\n'
                 'ca,2020-04-06,all,10,1\n'
                 'ca,2020-04-06,male,11,1\n'
                 'ca,2020-04-07,all,12,\n'
                 'ca,2020-04-08,all,13,3\n'
                 'ny,2020-04-08,all,14,4\n')
    cases = tmpdir / 'cases.csv'
    cases.write('state,date,cumulative_cases\n'
                'ca,2020-04-05,0\n'
                'ca,2020-04-06,5\n'
                'ca,2020-04-07,15\n'
                'ca,2020-04-08,12\n')
    panel, summary = load_panel(str(survey), str(cases))
    assert panel.feature_names == ['cmnty_cli', 'hh_cli']
    assert panel.targets.tolist() == [5.0, 0.0]
    assert summary.survey_rows == 5
    assert summary.demographic_dropped == 1
    assert summary.incomplete == 1
    assert summary.missing_target == 1
    assert summary.clamped == 1
    assert summary.rows == 2
    assert summary.first_date == '2020-04-06'
    assert summary.last_date == '2020-04-08'


def test_load_panel_ignores_unselected_columns(tmpdir):
    survey = tmpdir / 'survey.csv'
    survey.write('state,date,cmnty_cli,sample_size\n'
                 'ca,2020-04-06,22.5,1830\n'
                 'ca,2020-04-07,23.0,1902\n')
    cases = tmpdir / 'cases.csv'
    cases.write('state,date,cumulative_cases\n'
                'ca,2020-04-05,0\n'
                'ca,2020-04-06,10\n'
                'ca,2020-04-07,25\n')
    panel, summary = load_panel(str(survey), str(cases), ['cmnty_cli'])
    assert panel.feature_names == ['cmnty_cli']
    assert panel.features.tolist() == [[22.5], [23.0]]
    assert panel.targets.tolist() == [10.0, 15.0]
    assert summary.rows == 2

    # every column is a feature when none are selected
    with pytest.raises(ValidationError):
        load_panel(str(survey), str(cases))
    with pytest.raises(FormatError):
        load_panel(str(survey), str(cases), ['cmnty_cli', 'hh_cli'])
    mapped = ColumnManifest(features={'cmnty_cli': 'community'})
    panel, _ = load_panel(str(survey), str(cases), ['community'], mapped)
    assert panel.feature_names == ['community']
    with pytest.raises(ConfigurationError):
        load_panel(str(survey), str(cases), ['cmnty_cli'], mapped)
