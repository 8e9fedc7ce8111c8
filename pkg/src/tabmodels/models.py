import json
import numpy as np
from .errors import ModelError, SerializationError, ShapeError
from .linear import LinearModel, as_matrix
from .tree import RegressionTree
from .boosting import BoostedEnsemble

FORMAT_VERSION = 1

TREE_ARRAYS = ('feature', 'threshold', 'left', 'right', 'value',
               'n_samples', 'gain')


def feature_names_of(model, n_features):
    if model.feature_names is not None:
        return list(model.feature_names)
    return ['x{}'.format(j) for j in range(n_features)]


def predict_tab(model, X):
    if not isinstance(model, (LinearModel, RegressionTree, BoostedEnsemble)):
        raise ModelError('not a tabular model: {}'.format(type(model)))
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != model.n_features:
        raise ShapeError('model expects {} feature columns, got shape {}'
                         .format(model.n_features, X.shape))
    return model.predict(X)


def gain_importance(model):
    '''Total recorded split gain per feature name'''
    if isinstance(model, RegressionTree):
        trees = [model]
    elif isinstance(model, BoostedEnsemble):
        trees = model.trees
    else:
        raise ModelError('gain importance needs a tree model')
    totals = np.zeros(model.n_features)
    for tree in trees:
        internal = tree.feature >= 0
        np.add.at(totals, tree.feature[internal], tree.gain[internal])
    names = feature_names_of(model, model.n_features)
    return {name: float(total) for name, total in zip(names, totals)}


def _tree_dict(tree):
    result = {name: getattr(tree, name).tolist() for name in TREE_ARRAYS}
    result['n_features'] = tree.n_features
    return result


def _tree_from_dict(value, feature_names):
    return RegressionTree(value['n_features'],
                          feature_names=feature_names,
                          **{name: value[name] for name in TREE_ARRAYS})


def model_to_dict(model):
    n_features = model.n_features
    result = {'format': FORMAT_VERSION, 'kind': model.kind,
              'feature_names': feature_names_of(model, n_features)}
    if isinstance(model, LinearModel):
        result['coefficients'] = model.coefficients.tolist()
        result['intercept'] = model.intercept
    elif isinstance(model, RegressionTree):
        result['tree'] = _tree_dict(model)
    elif isinstance(model, BoostedEnsemble):
        result.update({
            'base_prediction': model.base_prediction,
            'shrinkage': model.shrinkage, 'mode': model.mode,
            'lambda': model.reg_lambda, 'gamma': model.gamma,
            'n_features': n_features, 'loss_curve': model.loss_curve,
            'trees': [_tree_dict(tree) for tree in model.trees]})
    else:
        raise SerializationError('cannot serialize {}'.format(type(model)))
    return result


def model_from_dict(value):
    try:
        if value.get('format') != FORMAT_VERSION:
            raise SerializationError('unsupported model format {}'
                                     .format(value.get('format')))
        names = value['feature_names']
        kind = value['kind']
        if kind == LinearModel.kind:
            return LinearModel(value['coefficients'], value['intercept'],
                               names)
        if kind == RegressionTree.kind:
            return _tree_from_dict(value['tree'], names)
        if kind == BoostedEnsemble.kind:
            return BoostedEnsemble(
                value['base_prediction'],
                [_tree_from_dict(tree, names) for tree in value['trees']],
                value['shrinkage'], value['mode'], value['lambda'],
                value['gamma'], value['n_features'], names,
                value['loss_curve'])
    except (KeyError, TypeError) as exc:
        raise SerializationError('malformed model dump: {}'.format(exc))
    raise SerializationError('unknown model kind {}'.format(repr(kind)))


def dump_model(model, path):
    with open(path, 'w', encoding='utf8') as output:
        json.dump(model_to_dict(model), output, indent=1)
        output.write('\n')


def load_model(path):
    with open(path, 'r', encoding='utf8') as raw:
        try:
            value = json.load(raw)
        except ValueError as exc:
            raise SerializationError('{}: {}'.format(path, exc))
    return model_from_dict(value)


__all__ = ['predict_tab', 'gain_importance', 'model_to_dict',
           'model_from_dict', 'dump_model', 'load_model', 'as_matrix']
