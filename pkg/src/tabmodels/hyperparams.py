from .errors import HyperparameterError


class TreeHyperparams:
    def as_dict(self):
        return {'max_depth': self.max_depth,
                'min_samples_leaf': self.min_samples_leaf,
                'n_rounds': self.n_rounds, 'shrinkage': self.shrinkage,
                'lambda': self.reg_lambda, 'gamma': self.gamma,
                'seed': self.seed}

    def replace(self, **changes):
        values = self.as_dict()
        if 'reg_lambda' in changes:
            changes['lambda'] = changes.pop('reg_lambda')
        values.update(changes)
        return TreeHyperparams.from_config(values)

    @staticmethod
    def from_config(section):
        '''Build from a validated ``[tree]`` section'''
        return TreeHyperparams(
            max_depth=section['max_depth'],
            min_samples_leaf=section['min_samples_leaf'],
            n_rounds=section['n_rounds'], shrinkage=section['shrinkage'],
            reg_lambda=section['lambda'], gamma=section['gamma'],
            seed=section.get('seed', 0))

    def __eq__(self, other):
        if not isinstance(other, TreeHyperparams):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    def __repr__(self):
        return 'TreeHyperparams({})'.format(', '.join(
            '{}={!r}'.format(key, value)
            for key, value in self.as_dict().items()))

    def __init__(self, max_depth=4, min_samples_leaf=2, n_rounds=200,
                 shrinkage=0.1, reg_lambda=1.0, gamma=0.0, seed=0):
        if max_depth < 1:
            raise HyperparameterError('max_depth must be at least 1')
        if min_samples_leaf < 1:
            raise HyperparameterError('min_samples_leaf must be at least 1')
        if n_rounds < 1:
            raise HyperparameterError('n_rounds must be at least 1')
        if not 0.0 < shrinkage <= 1.0:
            raise HyperparameterError('shrinkage must be in (0, 1]')
        if reg_lambda < 0.0 or gamma < 0.0:
            raise HyperparameterError('lambda and gamma must be non-negative')
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.n_rounds = n_rounds
        self.shrinkage = float(shrinkage)
        self.reg_lambda = float(reg_lambda)
        self.gamma = float(gamma)
        self.seed = seed
