'''
Synthetic panels with a known linear ground truth
'''
import itertools
import json
import logging
import os
import string
from collections import namedtuple
import numpy as np
import pandas as pd
from .errors import ConfigurationError
from .features import FEATURE_NAMES
from .panel import PanelDataset

logger = logging.getLogger(__name__)

# 50 states and the District of Columbia
STATE_CODES = (
    'ak', 'al', 'ar', 'az', 'ca', 'co', 'ct', 'dc', 'de', 'fl', 'ga', 'hi',
    'ia', 'id', 'il', 'in', 'ks', 'ky', 'la', 'ma', 'md', 'me', 'mi', 'mn',
    'mo', 'ms', 'mt', 'nc', 'nd', 'ne', 'nh', 'nj', 'nm', 'nv', 'ny', 'oh',
    'ok', 'or', 'pa', 'ri', 'sc', 'sd', 'tn', 'tx', 'ut', 'va', 'vt', 'wa',
    'wi', 'wv', 'wy',
)

START_DATE = np.datetime64('2020-04-06', 'D')

GroundTruth = namedtuple('GroundTruth', ['states', 'feature_names',
                                         'intercepts', 'coefficients'])


def state_codes(count):
    '''Real codes first, then unused two-letter combinations'''
    codes = list(STATE_CODES[:count])
    if len(codes) < count:
        used = set(STATE_CODES)
        for pair in itertools.product(string.ascii_lowercase, repeat=2):
            code = ''.join(pair)
            if code not in used:
                codes.append(code)
                if len(codes) == count:
                    break
    return codes


def feature_names(count):
    if count <= len(FEATURE_NAMES):
        return list(FEATURE_NAMES[:count])
    return list(FEATURE_NAMES) + ['feature_{}'.format(i + 1)
                                  for i in range(len(FEATURE_NAMES), count)]


class SynthConfig:
    '''
    Parameters of a synthetic panel

    ``coefficients`` is 'shared' (one draw used by every state),
    'per-state' (an independent draw per state) or an explicit
    n_states by n_features matrix.
    '''

    def as_dict(self):
        coefficients = self.coefficients
        if not isinstance(coefficients, str):
            coefficients = coefficients.tolist()
        return {'n_states': self.n_states, 'n_dates': self.n_dates,
                'n_features': self.n_features,
                'n_informative': self.n_informative,
                'coefficients': coefficients,
                'coefficient_range': list(self.coefficient_range),
                'intercept': self.intercept,
                'intercept_spread': self.intercept_spread,
                'noise_sd': self.noise_sd, 'seed': self.seed,
                'start_date': str(self.start_date)}

    def __init__(self, n_states, n_dates, n_features=35, n_informative=5,
                 coefficients='shared', coefficient_range=(1.0, 10.0),
                 intercept=50.0, intercept_spread=0.0, noise_sd=0.0, seed=0,
                 start_date=START_DATE):
        if n_states < 1 or n_dates < 1 or n_features < 1:
            raise ConfigurationError('state, date and feature counts must '
                                     'be positive')
        if not 0 <= n_informative <= n_features:
            raise ConfigurationError('n_informative must be in [0, {}], '
                                     'got {}'.format(n_features,
                                                     n_informative))
        if noise_sd < 0:
            raise ConfigurationError('noise_sd must be non-negative, got {}'
                                     .format(noise_sd))
        low, high = coefficient_range
        if low > high:
            raise ConfigurationError('empty coefficient range {}'
                                     .format(coefficient_range))
        if isinstance(coefficients, str):
            if coefficients not in ('shared', 'per-state'):
                raise ConfigurationError('unknown coefficient mode {}'
                                         .format(repr(coefficients)))
        else:
            coefficients = np.array(coefficients, dtype=float)
            if coefficients.shape != (n_states, n_features):
                raise ConfigurationError(
                    'coefficient matrix must be {}x{}, got {}'.format(
                        n_states, n_features, coefficients.shape))
            if np.any(coefficients[:, n_informative:] != 0):
                raise ConfigurationError('coefficients beyond the first {} '
                                         'features must be zero'
                                         .format(n_informative))
        self.n_states = n_states
        self.n_dates = n_dates
        self.n_features = n_features
        self.n_informative = n_informative
        self.coefficients = coefficients
        self.coefficient_range = (float(low), float(high))
        self.intercept = float(intercept)
        self.intercept_spread = float(intercept_spread)
        self.noise_sd = float(noise_sd)
        self.seed = seed
        self.start_date = np.datetime64(start_date, 'D')


def _draw_coefficients(cfg, rng):
    if not isinstance(cfg.coefficients, str):
        return cfg.coefficients.copy()
    low, high = cfg.coefficient_range
    rows = 1 if cfg.coefficients == 'shared' else cfg.n_states
    drawn = rng.uniform(low, high, size=(rows, cfg.n_informative))
    coefficients = np.zeros((cfg.n_states, cfg.n_features))
    coefficients[:, :cfg.n_informative] = drawn
    return coefficients


def generate_synthetic(cfg):
    '''
    Draw a panel whose target is a clamped noisy linear form of features

    Draw order from the seeded generator: coefficients, intercepts,
    features, noise. Returns (panel, GroundTruth).
    '''
    rng = np.random.default_rng(cfg.seed)
    coefficients = _draw_coefficients(cfg, rng)
    intercepts = cfg.intercept + rng.uniform(
        -cfg.intercept_spread, cfg.intercept_spread, size=cfg.n_states)
    n_rows = cfg.n_states * cfg.n_dates
    features = rng.uniform(0.0, 100.0, size=(n_rows, cfg.n_features))
    noise = rng.normal(0.0, cfg.noise_sd, size=n_rows)

    codes = state_codes(cfg.n_states)
    names = feature_names(cfg.n_features)
    state_index = np.repeat(np.arange(cfg.n_states), cfg.n_dates)
    dates = cfg.start_date + np.tile(np.arange(cfg.n_dates), cfg.n_states)
    linear = (intercepts[state_index] +
              np.einsum('ij,ij->i', features, coefficients[state_index]))
    targets = np.maximum(0.0, linear + noise)
    panel = PanelDataset(names, np.array(codes)[state_index], dates,
                         features, targets)
    truth = GroundTruth(codes, names, intercepts, coefficients)
    logger.debug('generated %d synthetic rows (seed %d)', n_rows, cfg.seed)
    return panel, truth


def ground_truth_dict(truth):
    return {
        'feature_names': list(truth.feature_names),
        'states': {state: {'intercept': float(truth.intercepts[i]),
                           'coefficients': truth.coefficients[i].tolist()}
                   for i, state in enumerate(truth.states)},
    }


def write_synthetic(panel, truth, directory):
    '''
    Write survey.csv, cases.csv and ground_truth.json into directory

    Cumulative counts accumulate rounded daily targets from a zero count on
    the day before the first date, so reading them back reproduces the
    rounded targets.
    '''
    os.makedirs(directory, exist_ok=True)
    survey = pd.DataFrame(panel.features, columns=panel.feature_names)
    survey.insert(0, 'date', [str(date) for date in panel.dates])
    survey.insert(0, 'state', panel.states)
    survey_path = os.path.join(directory, 'survey.csv')
    survey.to_csv(survey_path, index=False, float_format='%.10g')

    frames = []
    for state in panel.distinct_states():
        part = panel.for_state(state)
        dates = np.concatenate([[part.dates[0] - 1], part.dates])
        counts = np.concatenate([[0], np.cumsum(np.rint(part.targets))])
        frames.append(pd.DataFrame({
            'state': state, 'date': [str(date) for date in dates],
            'cumulative_cases': counts.astype(np.int64)}))
    cases_path = os.path.join(directory, 'cases.csv')
    pd.concat(frames).to_csv(cases_path, index=False)

    truth_path = os.path.join(directory, 'ground_truth.json')
    with open(truth_path, 'w') as output:
        json.dump(ground_truth_dict(truth), output, indent=2)
    return survey_path, cases_path, truth_path
