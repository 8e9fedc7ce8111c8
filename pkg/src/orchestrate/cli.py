'''
train, sweep, evaluate and importance subcommands
'''
import logging
import time
from pathlib import Path
import pandas as pd
import featsel
import neural
import tabmodels
import ingest
import ingest.config
import metrics
import metrics.config
import neural.config
import tabmodels.config
from cli import ExperimentSubcommand, write_manifest, require_file, EXIT_OK
from runconf import ALL, ConfigError
from .config import config, add_sections, run_config
from .errors import ConfigurationError, OrchestrationError
from .runs import feature_sweep, run_suite
from .suite import SUITE_FILE, CI_FORMULA, SuiteResult

logger = logging.getLogger(__name__)

RUNTIME_ERRORS = (ingest.IngestError, featsel.FeatureSelectionError,
                  tabmodels.ModelError, neural.NetworkError,
                  OrchestrationError, metrics.MetricError)
USAGE_ERRORS = (ConfigurationError, ingest.ConfigurationError,
                tabmodels.HyperparameterError, neural.ConfigurationError)

# One experiment file serves every command below
CONFIGS = (ingest.config.config, tabmodels.config.config,
           neural.config.config, config, metrics.config.config)
SCHEMA_PARTS = (ingest.config.add_sections, tabmodels.config.add_sections,
                neural.config.add_sections, add_sections,
                metrics.config.add_sections)

SWEEP_CSV = 'sweep.csv'
SWEEP_SVG = 'sweep.svg'
OVERALL_CSV = 'overall.csv'
PER_STATE_CSV = 'per-state.csv'
COMPARISON_CSV = 'comparison.csv'
IMPORTANCE_CSV = 'importance.csv'
FREQUENCY_CSV = 'frequency.csv'


def count_or_all(value):
    if value == ALL:
        return ALL
    return int(value)


def load_input(settings):
    '''Panel from the configured tables; returns (panel, summary, inputs)'''
    paths = settings['paths']
    survey = require_file(paths['survey'], 'paths::survey')
    cases = require_file(paths['cases'], 'paths::cases')
    columns = settings['columns']
    panel, summary = ingest.load_panel(
        str(survey), str(cases), columns['features'],
        ingest.config.column_manifest(columns))
    return panel, summary, [survey, cases]


class RunSubcommand(ExperimentSubcommand):
    '''Commands that load the panel and fit model families'''
    configs = CONFIGS
    schema_parts = SCHEMA_PARTS
    usage_errors = USAGE_ERRORS
    runtime_errors = RUNTIME_ERRORS

    def overrides(self, args):
        result = super().overrides(args)
        run = {}
        if args.seed is not None:
            run['seeds'] = [args.seed]
        if args.clamp_nonneg:
            run['clamp-nonneg'] = True
        if run:
            result['run'] = run
        return result


class TrainSubcommand(RunSubcommand):
    def execute(self, args, settings):
        started = time.monotonic()
        panel, summary, inputs = load_input(settings)
        cfg = run_config(settings)
        suite = run_suite(panel, cfg)
        out = self.output_dir(settings)
        written = suite.save(out)
        totals = suite.summary()
        write_manifest(out, 'train', settings, inputs=inputs,
                       started=started, ingest=summary._asdict(),
                       boundary=str(suite.boundary), skipped=suite.skipped,
                       ci_formula=CI_FORMULA, summary=totals,
                       outputs=sorted(str(path.relative_to(out))
                                      for path in written))
        if totals['mae_ci'] is None:
            print('MAE {:.6g}'.format(totals['mae_mean']))
        else:
            print('MAE {:.6g} ({:.0%} CI {:.6g} to {:.6g})'.format(
                totals['mae_mean'], totals['level'], *totals['mae_ci']))
        return EXIT_OK

    def __init__(self):
        super().__init__('train', 'Train a global or local suite over the '
                                  'configured seeds')


class SweepSubcommand(RunSubcommand):
    def _update_parser(self, parser):
        super()._update_parser(parser)
        parser.add_argument('--ks', nargs='+', type=count_or_all,
                            help="Feature counts, ascending ('all' allowed)")

    def overrides(self, args):
        result = super().overrides(args)
        if args.ks is not None:
            result['sweep'] = {'ks': args.ks}
        return result

    def execute(self, args, settings):
        started = time.monotonic()
        panel, summary, inputs = load_input(settings)
        cfg = run_config(settings)
        curve = feature_sweep(panel, cfg, settings['sweep']['ks'],
                              settings['sweep']['all_seeds'])
        out = self.output_dir(settings)
        pd.DataFrame(curve, columns=['k', 'mae']).to_csv(
            str(out / SWEEP_CSV), index=False, float_format='%.17g')
        outputs = [SWEEP_CSV]
        if settings['report']['plot']:
            write_sweep_svg(curve, out / SWEEP_SVG,
                            '{} MAE by feature count'.format(cfg.family))
            outputs.append(SWEEP_SVG)
        write_manifest(out, 'sweep', settings, inputs=inputs,
                       started=started, ingest=summary._asdict(),
                       outputs=outputs)
        for k, value in curve:
            print('k={}: MAE {:.6g}'.format(k, value))
        return EXIT_OK

    def __init__(self):
        super().__init__('sweep', 'Test MAE as a function of the number of '
                                  'top-ranked features')


class SuiteSubcommand(ExperimentSubcommand):
    '''Commands that read a saved suite directory'''
    configs = CONFIGS
    schema_parts = SCHEMA_PARTS
    usage_errors = USAGE_ERRORS
    runtime_errors = RUNTIME_ERRORS

    def _update_parser(self, parser):
        super()._update_parser(parser)
        parser.add_argument('suite', type=Path,
                            help='Directory written by train')


class EvaluateSubcommand(SuiteSubcommand):
    def _update_parser(self, parser):
        super()._update_parser(parser)
        parser.add_argument('--compare', type=Path, metavar='SUITE',
                            help='Second suite compared state by state')

    def execute(self, args, settings):
        started = time.monotonic()
        report_settings = settings['report']
        labels = report_settings['compare_labels']
        if args.compare is not None and len(labels) != 2:
            raise ConfigError('report::compare-labels needs exactly 2 '
                              'labels, got {}'.format(len(labels)))
        suite = SuiteResult.load(args.suite)
        out = self.output_dir(settings)
        inputs = [args.suite / SUITE_FILE]
        pd.DataFrame([(run.seed, run.mae, run.nmae)
                      for run in suite.per_seed],
                     columns=['seed', 'mae', 'nmae']).to_csv(
            str(out / OVERALL_CSV), index=False, float_format='%.17g')
        outputs = [OVERALL_CSV]
        report = metrics.per_state_report(suite.first().predictions)
        if report_settings['per_state']:
            report.save(out / PER_STATE_CSV)
            outputs.append(PER_STATE_CSV)
        extra = {}
        if args.compare is not None:
            other = SuiteResult.load(args.compare)
            inputs.append(args.compare / SUITE_FILE)
            other_report = metrics.per_state_report(
                other.first().predictions)
            wins, total = metrics.comparison_wins(report, other_report)
            metrics.write_comparison(report, other_report,
                                     out / COMPARISON_CSV, labels)
            outputs.append(COMPARISON_CSV)
            extra['wins'] = {'label': labels[0], 'wins': wins,
                             'states': total}
            print('{} wins: {}/{} states'.format(labels[0], wins, total))
        totals = suite.summary()
        write_manifest(out, 'evaluate', settings, inputs=inputs,
                       started=started, summary=totals, outputs=outputs,
                       **extra)
        print('MAE {:.6g} over {} seed(s)'.format(totals['mae_mean'],
                                                  totals['runs']))
        return EXIT_OK

    def __init__(self):
        super().__init__('evaluate', 'Error reports of a saved suite')


class ImportanceSubcommand(SuiteSubcommand):
    def _update_parser(self, parser):
        super()._update_parser(parser)
        parser.add_argument('--top', type=int, action='append',
                            help='Top-list size (repeatable)')

    def overrides(self, args):
        result = super().overrides(args)
        if args.top:
            result['report'] = {'top': sorted(set(args.top))}
        return result

    def _training_rows(self, settings, suite):
        '''Loads the panel once and returns a per-group row lookup'''
        cache = {}

        def rows(group):
            if 'split' not in cache:
                panel, _, inputs = load_input(settings)
                cache['split'] = ingest.split_by_date(
                    panel, suite.config.train_fraction)
                cache['inputs'] = inputs
            train = cache['split'].train
            if group != metrics.GLOBAL:
                train = train.for_state(group)
            return train.project(suite.model_features[group])
        return rows, cache

    @staticmethod
    def _needs_rows(model, method):
        if method == metrics.PERMUTATION:
            return True
        try:
            tabmodels.gain_importance(model)
        except tabmodels.ModelError:
            return method == metrics.AUTO
        return False

    def execute(self, args, settings):
        started = time.monotonic()
        report_settings = settings['report']
        method = report_settings['importance_method']
        tops = sorted(report_settings['top'])
        suite = SuiteResult.load(args.suite)
        rows, cache = self._training_rows(settings, suite)
        per_group = {}
        used = None
        for group in suite.groups():
            model = suite.models[group]
            ds = rows(group) if self._needs_rows(model, method) else None
            used, scores = metrics.model_importance(
                model, ds, method, report_settings['permutation_repeats'],
                suite.seeds[0])
            per_group[group] = scores
        table = metrics.ImportanceTable(per_group, used)
        out = self.output_dir(settings)
        table.save(out / IMPORTANCE_CSV, ks=tops)
        outputs = [IMPORTANCE_CSV]
        if not suite.is_local:
            logger.warning('suite has a single global model: wrote its '
                           'ranking and skipped the frequency table')
        elif report_settings['frequency']:
            metrics.top_k_frequency(table, tops).save(out / FREQUENCY_CSV)
            outputs.append(FREQUENCY_CSV)
        write_manifest(out, 'importance', settings,
                       inputs=[args.suite / SUITE_FILE] +
                       cache.get('inputs', []),
                       started=started, method=used, outputs=outputs)
        logger.info('%s importance of %d model(s) written to %s', used,
                    len(per_group), out)
        return EXIT_OK

    def __init__(self):
        super().__init__('importance', 'Per-state feature importance and '
                                       'top-k frequency of a saved suite')


SVG_WIDTH = 480
SVG_HEIGHT = 320
SVG_MARGIN = 48


def _scale(values, low, high):
    lo, hi = min(values), max(values)
    if hi == lo:
        return [(low + high) / 2.0 for _ in values]
    return [low + (value - lo) * (high - low) / (hi - lo) for value in values]


def write_sweep_svg(curve, path, title):
    '''One polyline of MAE against k with labelled end points'''
    ks = [k for k, _ in curve]
    maes = [value for _, value in curve]
    xs = _scale(ks, SVG_MARGIN, SVG_WIDTH - SVG_MARGIN)
    ys = _scale(maes, SVG_HEIGHT - SVG_MARGIN, SVG_MARGIN)
    points = ' '.join('{:.2f},{:.2f}'.format(x, y) for x, y in zip(xs, ys))
    bottom = SVG_HEIGHT - SVG_MARGIN
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{1}" '
        'viewBox="0 0 {0} {1}">'.format(SVG_WIDTH, SVG_HEIGHT),
        '<title>{}</title>'.format(_escape(title)),
        '<rect width="100%" height="100%" fill="white"/>',
        '<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="black"/>'.format(
            SVG_MARGIN, bottom, SVG_WIDTH - SVG_MARGIN),
        '<line x1="{0}" y1="{1}" x2="{0}" y2="{2}" stroke="black"/>'.format(
            SVG_MARGIN, SVG_MARGIN, bottom),
        '<polyline fill="none" stroke="steelblue" stroke-width="2" '
        'points="{}"/>'.format(points),
    ]
    for k, x in zip(ks, xs):
        lines.append('<text x="{:.2f}" y="{}" font-size="10" '
                     'text-anchor="middle">{}</text>'.format(
                         x, bottom + 16, k))
    lines.append('<text x="{}" y="{}" font-size="10">MAE {:.4g} to {:.4g}'
                 '</text>'.format(SVG_MARGIN, SVG_MARGIN - 16, min(maes),
                                  max(maes)))
    lines.append('<text x="{}" y="{}" font-size="10" text-anchor="middle">'
                 'features (k)</text>'.format(SVG_WIDTH // 2,
                                              SVG_HEIGHT - 8))
    lines.append('</svg>')
    with open(str(path), 'w', encoding='utf8') as output:
        output.write('\n'.join(lines) + '\n')


def _escape(text):
    return (text.replace('&', '&amp;').replace('<', '&lt;')
            .replace('>', '&gt;'))
