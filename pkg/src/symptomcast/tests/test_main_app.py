import json
from pathlib import Path
from xml.etree import ElementTree
import pytest
from symptomcast import create_app
from ...pytest_fixtures import config_manager

SYNTH = '''[synth]
n-states = 3
n-dates = 40
n-features = 6
n-informative = 3
coefficients = per-state
noise-sd = 1.0
seed = 4
'''

EXPERIMENT = '''[paths]
survey = 'data/survey.csv'
cases = 'data/cases.csv'

[run]
family = {family}
granularity = {granularity}
seeds = [0, 1]

[tree]
n-rounds = 10
max-depth = 3

[sweep]
ks = [1, 3, 6]
'''


def invoke(*args):
    with pytest.raises(SystemExit) as exc:
        create_app().run([str(arg) for arg in args])
    return exc.value.code


@pytest.fixture
def workdir(tmpdir, monkeypatch, config_manager):
    monkeypatch.chdir(tmpdir)
    Path('synth.conf').write_text(SYNTH)
    for family in ('gbdt', 'lr'):
        for granularity in ('local', 'global'):
            Path('{}-{}.conf'.format(family, granularity)).write_text(
                EXPERIMENT.format(family=family, granularity=granularity))
    assert invoke('synth', '-c', 'synth.conf', '-o', 'data', '-q') == 0
    return Path(str(tmpdir))


def test_help(capsys):
    assert invoke('-h') == 0
    assert 'usage:' in capsys.readouterr().out
    assert invoke() == 2
    assert 'no command specified' in capsys.readouterr().err


def test_synth(workdir):
    names = ['survey.csv', 'cases.csv', 'ground_truth.json']
    for name in names:
        assert (workdir / 'data' / name).is_file()
    assert (workdir / 'data' / 'synth-manifest.json').is_file()
    assert invoke('synth', '-c', 'synth.conf', '-o', 'nested/again') == 0
    for name in names:
        assert (workdir / 'data' / name).read_bytes() == \
            (workdir / 'nested' / 'again' / name).read_bytes()


def test_synth_bad_config(workdir, capsys):
    Path('bad.conf').write_text('[synth]\nnoise-sd = -1.0\n')
    assert invoke('synth', '-c', 'bad.conf', '-o', 'out') == 2
    assert 'noise-sd' in capsys.readouterr().err
    assert invoke('synth', '-c', 'missing.conf') == 2


def test_train_local(workdir):
    assert invoke('train', '-c', 'gbdt-local.conf', '-o', 'local',
                  '-s', 7) == 0
    out = workdir / 'local'
    assert sorted(p.name for p in (out / 'models').iterdir()) == \
        ['ak.json', 'al.json', 'ar.json']
    assert sorted(p.name for p in (out / 'rankings').iterdir()) == \
        ['ak.csv', 'al.csv', 'ar.csv']
    assert sorted(p.name for p in (out / 'loss').iterdir()) == \
        ['ak.csv', 'al.csv', 'ar.csv']
    assert sorted(p.name for p in out.glob('predictions-*.csv')) == \
        ['predictions-seed7.csv']
    manifest = json.loads((out / 'train-manifest.json').read_text())
    assert manifest['command'] == 'train'
    assert manifest['settings']['run']['seeds'] == [7]
    assert manifest['skipped'] == []
    assert sorted(manifest['inputs']) == ['data/cases.csv',
                                          'data/survey.csv']
    assert manifest['ingest']['states'] == 3

    first = (out / 'predictions-seed7.csv').read_bytes()
    assert invoke('train', '-c', 'gbdt-local.conf', '-o', 'again',
                  '-s', 7) == 0
    assert (workdir / 'again' / 'predictions-seed7.csv').read_bytes() == \
        first
    again = json.loads((workdir / 'again' / 'train-manifest.json')
                       .read_text())
    for key in ('wall_clock_seconds', 'settings'):
        manifest.pop(key)
        again.pop(key)
    assert manifest == again


def test_train_global(workdir, capsys):
    assert invoke('train', '-c', 'gbdt-global.conf', '-o', 'global',
                  '--clamp-nonneg') == 0
    out = workdir / 'global'
    assert [p.name for p in (out / 'models').iterdir()] == ['global.json']
    assert len(list(out.glob('predictions-*.csv'))) == 2
    assert 'CI' in capsys.readouterr().out
    suite = json.loads((out / 'suite.json').read_text())
    assert suite['config']['clamp_nonneg'] is True
    assert suite['hyperparameters']['n_rounds'] == 10


def test_train_errors(workdir):
    Path('nofile.conf').write_text("[paths]\nsurvey = 'nope.csv'\n"
                                   "cases = 'data/cases.csv'\n")
    assert invoke('train', '-c', 'nofile.conf', '-o', 'x') == 1
    Path('badfamily.conf').write_text('[run]\nfamily = svm\n')
    assert invoke('train', '-c', 'badfamily.conf', '-o', 'x') == 2
    Path('badnet.conf').write_text(EXPERIMENT.format(
        family='lr', granularity='global') + '\n[network]\n' +
        'mlp-hidden = [0]\n')
    assert invoke('train', '-c', 'badnet.conf', '-o', 'x') == 2
    Path('fewrows.conf').write_text(EXPERIMENT.format(
        family='lr', granularity='local').replace(
            'seeds = [0, 1]\n', 'seeds = [0, 1]\nmin-train-rows = 2\n'))
    assert invoke('train', '-c', 'fewrows.conf', '-o', 'x') == 2


def test_evaluate_and_compare(workdir, capsys):
    assert invoke('train', '-c', 'gbdt-local.conf', '-o', 'local') == 0
    assert invoke('train', '-c', 'gbdt-global.conf', '-o', 'global') == 0
    capsys.readouterr()

    assert invoke('evaluate', '-c', 'gbdt-local.conf', '-o', 'single',
                  'local') == 0
    single = workdir / 'single'
    assert (single / 'per-state.csv').is_file()
    assert not (single / 'comparison.csv').exists()
    overall = (single / 'overall.csv').read_text().splitlines()
    assert overall[0] == 'seed,mae,nmae'
    assert len(overall) == 3

    assert invoke('evaluate', '-c', 'gbdt-local.conf', '-o', 'report',
                  'local', '--compare', 'global') == 0
    assert 'local wins: ' in capsys.readouterr().out
    lines = (workdir / 'report' / 'comparison.csv').read_text().splitlines()
    assert lines[0] == 'state,mae_local,mae_global,nmae_local,nmae_global'
    assert [line.split(',')[0] for line in lines[1:]] == \
        ['ak', 'al', 'ar', 'entire']
    manifest = json.loads((workdir / 'report' / 'evaluate-manifest.json')
                          .read_text())
    assert manifest['wins']['states'] == 3

    first = (workdir / 'report' / 'per-state.csv').read_bytes()
    assert invoke('evaluate', '-c', 'gbdt-local.conf', '-o', 'report2',
                  'local', '--compare', 'global') == 0
    assert (workdir / 'report2' / 'per-state.csv').read_bytes() == first


def test_evaluate_errors(workdir):
    assert invoke('evaluate', '-o', 'report', 'nowhere') == 1
    Path('two.conf').write_text(SYNTH.replace('n-states = 3',
                                              'n-states = 2'))
    assert invoke('synth', '-c', 'two.conf', '-o', 'data2') == 0
    Path('two-lr.conf').write_text(
        EXPERIMENT.format(family='lr', granularity='global')
        .replace('data/', 'data2/'))
    assert invoke('train', '-c', 'two-lr.conf', '-o', 'two') == 0
    assert invoke('train', '-c', 'lr-global.conf', '-o', 'three') == 0
    assert invoke('evaluate', '-o', 'report', 'three',
                  '--compare', 'two') == 1


def read_rows(path):
    lines = path.read_text().splitlines()
    return lines[0], [line.split(',') for line in lines[1:]]


def test_importance_local(workdir):
    assert invoke('train', '-c', 'gbdt-local.conf', '-o', 'local') == 0
    assert invoke('importance', '-c', 'gbdt-local.conf', '-o', 'imp',
                  'local', '--top', 2, '--top', 4) == 0
    header, rows = read_rows(workdir / 'imp' / 'importance.csv')
    assert header == 'top_k,state,rank,feature,score'
    for state in ('ak', 'al', 'ar'):
        top2 = [row[3] for row in rows if row[:2] == ['2', state]]
        top4 = [row[3] for row in rows if row[:2] == ['4', state]]
        assert len(top2) == 2 and len(top4) == 4
        assert top4[:2] == top2
    header, rows = read_rows(workdir / 'imp' / 'frequency.csv')
    assert header == 'feature,top2_count,top4_count'
    assert len(rows) == 6
    for _, top2, top4 in rows:
        assert 0 <= int(top2) <= int(top4) <= 3
    manifest = json.loads((workdir / 'imp' / 'importance-manifest.json')
                          .read_text())
    assert manifest['method'] == 'gain'


def test_importance_permutation(workdir):
    assert invoke('train', '-c', 'lr-local.conf', '-o', 'local') == 0
    assert invoke('importance', '-c', 'lr-local.conf', '-o', 'imp',
                  'local') == 0
    manifest = json.loads((workdir / 'imp' / 'importance-manifest.json')
                          .read_text())
    assert manifest['method'] == 'permutation'
    assert 'data/survey.csv' in manifest['inputs']
    first = (workdir / 'imp' / 'frequency.csv').read_bytes()
    assert invoke('importance', '-c', 'lr-local.conf', '-o', 'imp2',
                  'local') == 0
    assert (workdir / 'imp2' / 'frequency.csv').read_bytes() == first


def test_importance_global(workdir):
    assert invoke('train', '-c', 'gbdt-global.conf', '-o', 'global') == 0
    assert invoke('importance', '-c', 'gbdt-global.conf', '-o', 'imp',
                  'global') == 0
    _, rows = read_rows(workdir / 'imp' / 'importance.csv')
    assert {row[1] for row in rows} == {'global'}
    assert not (workdir / 'imp' / 'frequency.csv').exists()


def test_sweep(workdir):
    assert invoke('sweep', '-c', 'gbdt-global.conf', '-o', 'sweep',
                  '--ks', 1, 3, 'all') == 0
    lines = (workdir / 'sweep' / 'sweep.csv').read_text().splitlines()
    assert lines[0] == 'k,mae'
    assert [line.split(',')[0] for line in lines[1:]] == ['1', '3', '6']
    svg = ElementTree.parse(str(workdir / 'sweep' / 'sweep.svg'))
    polylines = svg.getroot().findall('{http://www.w3.org/2000/svg}polyline')
    assert len(polylines) == 1
    assert len(polylines[0].get('points').split()) == 3

    assert invoke('sweep', '-c', 'gbdt-global.conf', '-o', 'sweep2') == 0
    lines = (workdir / 'sweep2' / 'sweep.csv').read_text().splitlines()
    assert len(lines) == 4
    assert invoke('sweep', '-c', 'gbdt-global.conf', '-o', 'sweep3',
                  '--ks', 1, 3, 'all') == 0
    assert (workdir / 'sweep3' / 'sweep.csv').read_bytes() == \
        (workdir / 'sweep' / 'sweep.csv').read_bytes()
    assert invoke('sweep', '-c', 'gbdt-global.conf', '-o', 'bad',
                  '--ks', 3, 1) == 2
