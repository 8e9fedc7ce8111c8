'''
Regression trees grown from per-row gradients and hessians

Both the plain CART tree and the boosted learners use one grower. With
g = F - y and h = 1 the first-order gain G_L^2/H_L + G_R^2/H_R - G^2/H is
exactly the reduction of the squared error and the leaf value -G/H is the
mean residual. The second-order form halves the gain, adds lambda to every
hessian sum and subtracts gamma.
'''
import numpy as np
from .linear import as_matrix

LEAF = -1

# gains within this fraction of the parent score are rounding noise
RELATIVE_GAIN_FLOOR = 1e-12


class SplitRule:
    def score(self, G, H):
        return self.factor * G ** 2 / (H + self.reg_lambda)

    def leaf_value(self, G, H):
        return -G / (H + self.reg_lambda)

    def __init__(self, second_order=False, reg_lambda=0.0, gamma=0.0):
        self.factor = 0.5 if second_order else 1.0
        self.reg_lambda = reg_lambda
        self.gamma = gamma


def midpoint(low, high):
    threshold = low + (high - low) / 2.0
    # adjacent floats: only the upper value separates them
    return high if threshold <= low else threshold


def best_split(X, g, h, rule, min_samples_leaf):
    '''
    Best (feature, threshold, gain) for one node, or None

    All candidate splits are scored at once. Ties go to the lowest feature
    index, then the lowest threshold.
    '''
    m, n_features = X.shape
    if m < 2 * min_samples_leaf:
        return None
    order = np.argsort(X, axis=0, kind='stable')
    xs = np.take_along_axis(X, order, axis=0)
    G_left = np.cumsum(g[order], axis=0)
    H_left = np.cumsum(h[order], axis=0)
    G = G_left[-1]
    H = H_left[-1]
    G_left = G_left[:-1]
    H_left = H_left[:-1]
    parent = rule.score(G, H)
    with np.errstate(divide='ignore', invalid='ignore'):
        gain = (rule.score(G_left, H_left) +
                rule.score(G - G_left, H - H_left) - parent - rule.gamma)
    n_left = np.arange(1, m)[:, None]
    valid = ((xs[1:] > xs[:-1]) & (n_left >= min_samples_leaf) &
             (m - n_left >= min_samples_leaf) & np.isfinite(gain))
    gain = np.where(valid, gain, -np.inf)
    # feature-major flattening makes argmax honour the tie-break order
    best = int(np.argmax(gain.T))
    feature, position = divmod(best, m - 1)
    value = gain[position, feature]
    if not value > RELATIVE_GAIN_FLOOR * abs(parent[feature]):
        return None
    threshold = midpoint(xs[position, feature], xs[position + 1, feature])
    return feature, threshold, float(value)


class RegressionTree:
    '''
    Flat array tree

    Node 0 is the root. Internal nodes route x[feature] < threshold to
    ``left``; leaves have feature -1. ``gain`` is the split gain recorded at
    fit time (0 for leaves).
    '''
    kind = 'tree'

    def __len__(self):
        return len(self.feature)

    def is_leaf(self, node):
        return self.feature[node] == LEAF

    def depth(self):
        depths = np.zeros(len(self), dtype=int)
        for node in range(len(self)):
            if not self.is_leaf(node):
                depths[self.left[node]] = depths[node] + 1
                depths[self.right[node]] = depths[node] + 1
        return int(depths.max())

    def apply(self, X):
        '''Index of the leaf every row is routed to'''
        X = as_matrix(X, self.n_features)
        node = np.zeros(X.shape[0], dtype=int)
        active = ~self._leaf_mask[node]
        while np.any(active):
            rows = np.flatnonzero(active)
            current = node[rows]
            go_left = (X[rows, self.feature[current]] <
                       self.threshold[current])
            node[rows] = np.where(go_left, self.left[current],
                                  self.right[current])
            active = ~self._leaf_mask[node]
        return node

    def predict(self, X):
        return self.value[self.apply(X)]

    def __init__(self, n_features, feature, threshold, left, right, value,
                 n_samples, gain, feature_names=None):
        self.n_features = n_features
        self.feature = np.asarray(feature, dtype=int)
        self.threshold = np.asarray(threshold, dtype=float)
        self.left = np.asarray(left, dtype=int)
        self.right = np.asarray(right, dtype=int)
        self.value = np.asarray(value, dtype=float)
        self.n_samples = np.asarray(n_samples, dtype=int)
        self.gain = np.asarray(gain, dtype=float)
        self.feature_names = (None if feature_names is None
                              else list(feature_names))
        self._leaf_mask = self.feature == LEAF


def grow_tree(X, g, h, rule, max_depth, min_samples_leaf,
              feature_names=None):
    X = as_matrix(X)
    g = np.asarray(g, dtype=float).ravel()
    h = np.asarray(h, dtype=float).ravel()
    nodes = {key: [] for key in ('feature', 'threshold', 'left', 'right',
                                 'value', 'n_samples', 'gain')}

    def new_node(rows):
        nodes['feature'].append(LEAF)
        nodes['threshold'].append(0.0)
        nodes['left'].append(LEAF)
        nodes['right'].append(LEAF)
        nodes['value'].append(float(rule.leaf_value(g[rows].sum(),
                                                    h[rows].sum())))
        nodes['n_samples'].append(len(rows))
        nodes['gain'].append(0.0)
        return len(nodes['feature']) - 1

    stack = [(new_node(np.arange(X.shape[0])), np.arange(X.shape[0]), 0)]
    while stack:
        node, rows, depth = stack.pop()
        if depth >= max_depth:
            continue
        split = best_split(X[rows], g[rows], h[rows], rule, min_samples_leaf)
        if split is None:
            continue
        feature, threshold, gain = split
        go_left = X[rows, feature] < threshold
        left_rows, right_rows = rows[go_left], rows[~go_left]
        left, right = new_node(left_rows), new_node(right_rows)
        nodes['feature'][node] = feature
        nodes['threshold'][node] = threshold
        nodes['left'][node] = left
        nodes['right'][node] = right
        nodes['gain'][node] = gain
        stack.append((right, right_rows, depth + 1))
        stack.append((left, left_rows, depth + 1))
    return RegressionTree(X.shape[1], feature_names=feature_names, **nodes)


def fit_tree(X, y, hp, feature_names=None):
    '''CART regression tree; leaves hold the mean of their targets'''
    y = np.asarray(y, dtype=float).ravel()
    return grow_tree(X, -y, np.ones_like(y), SplitRule(), hp.max_depth,
                     hp.min_samples_leaf, feature_names)
