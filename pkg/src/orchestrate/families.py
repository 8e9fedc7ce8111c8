'''
Model families: how each kind of model is fitted, applied and stored

Families are registered by name; a family instance carries the
hyperparameters of one run and fits one model per (rows, seed).
'''
import json
from pathlib import Path
import neural
import tabmodels
from .errors import ConfigurationError


class AbstractModelFamily:
    @staticmethod
    def name():
        raise NotImplementedError()

    def fit(self, ds, seed):
        raise NotImplementedError()

    def predict(self, model, X):
        return model.predict(X)

    def hyperparameters(self):
        return {}

    def dump(self, model, path):
        tabmodels.dump_model(model, str(path))

    def loss_curve(self, model):
        return list(getattr(model, 'loss_curve', ()))

    def __init__(self, settings=None):
        self.settings = settings or {}


class LinearFamily(AbstractModelFamily):
    @staticmethod
    def name():
        return 'lr'

    def fit(self, ds, seed):
        return tabmodels.fit_linear(ds.features, ds.targets, ds.feature_names)


class TreeFamily(AbstractModelFamily):
    '''Families configured by the [tree] section'''
    fitter = None

    def _hyperparams(self, seed=0):
        values = tabmodels.TreeHyperparams().as_dict()
        values.update(self.settings.get('tree') or {})
        values['seed'] = seed
        return tabmodels.TreeHyperparams.from_config(values)

    def hyperparameters(self):
        values = self._hyperparams().as_dict()
        values.pop('seed')
        return values

    def fit(self, ds, seed):
        return type(self).fitter(ds.features, ds.targets,
                                 self._hyperparams(seed), ds.feature_names)


class DecisionTreeFamily(TreeFamily):
    fitter = staticmethod(tabmodels.fit_tree)

    @staticmethod
    def name():
        return 'dt'

    def hyperparameters(self):
        values = super().hyperparameters()
        return {'max_depth': values['max_depth'],
                'min_samples_leaf': values['min_samples_leaf']}


class GbdtFamily(TreeFamily):
    fitter = staticmethod(tabmodels.fit_gbdt)

    @staticmethod
    def name():
        return 'gbdt'


class XgbFamily(TreeFamily):
    fitter = staticmethod(tabmodels.fit_xgb_style)

    @staticmethod
    def name():
        return 'xgb'


class NetworkFamily(AbstractModelFamily):
    '''Families trained by the [train] section'''

    def build_spec(self, n_features, seed):
        raise NotImplementedError()

    def _network_settings(self):
        return self.settings.get('network', {})

    def _options(self, seed=0):
        values = neural.TrainOptions().as_dict()
        values.update(self.settings.get('train') or {})
        values['seed'] = seed
        return neural.TrainOptions.from_dict(values)

    def hyperparameters(self):
        values = self._options().as_dict()
        values.pop('seed')
        values['architecture'] = self.build_spec(1, 0).as_dict()['layers']
        return values

    def fit(self, ds, seed):
        spec = self.build_spec(len(ds.feature_names), seed)
        try:
            return neural.train_network(spec, ds, self._options(seed))
        except neural.ConfigurationError as exc:
            raise ConfigurationError(str(exc)) from exc

    def dump(self, model, path):
        neural.save_network(model, path)


class MlpFamily(NetworkFamily):
    @staticmethod
    def name():
        return 'mlp'

    def build_spec(self, n_features, seed):
        hidden = self._network_settings().get('mlp_hidden',
                                              neural.MLP_HIDDEN)
        return neural.build_mlp(n_features, hidden, seed)


class Cnn7Family(NetworkFamily):
    @staticmethod
    def name():
        return 'cnn7'

    def build_spec(self, n_features, seed):
        channels = self._network_settings().get('cnn7_channels',
                                                neural.CNN7_CHANNELS)
        return neural.build_cnn7(n_features, channels, seed)


class Resnet1dFamily(NetworkFamily):
    @staticmethod
    def name():
        return 'resnet1d'

    def build_spec(self, n_features, seed):
        network = self._network_settings()
        return neural.build_resnet1d(
            n_features, network.get('resnet_channels', neural.RESNET_CHANNELS),
            seed, stem_norm=network.get('resnet_stem_norm', False),
            head_activation=network.get('resnet_head_activation', False))


__FAMILIES = {}


def register_family(family_class):
    if family_class.name() in __FAMILIES:
        raise KeyError(family_class.name())
    __FAMILIES[family_class.name()] = family_class


def create_family(name, settings=None):
    if name not in __FAMILIES:
        raise ConfigurationError('unknown model family {}; expected one of '
                                 '{}'.format(name, ', '.join(list_families())))
    family = __FAMILIES[name](settings)
    try:
        family.hyperparameters()
    except (tabmodels.HyperparameterError, neural.NetworkError) as exc:
        raise ConfigurationError('{}: {}'.format(name, exc)) from exc
    return family


def list_families():
    return list(__FAMILIES)


register_family(LinearFamily)
register_family(DecisionTreeFamily)
register_family(GbdtFamily)
register_family(XgbFamily)
register_family(MlpFamily)
register_family(Cnn7Family)
register_family(Resnet1dFamily)


def load_any_model(path):
    '''Load a dump written by any family's ``dump``'''
    path = Path(path)
    with open(str(path), 'r', encoding='utf8') as raw:
        try:
            kind = json.load(raw).get('kind')
        except ValueError as exc:
            raise tabmodels.SerializationError('{}: {}'.format(path, exc))
    if kind == 'network':
        return neural.load_network(path)
    return tabmodels.load_model(str(path))
