'''
Trained networks on disk

``<name>.json`` holds the spec, normalisation, training options, loss curve
and an index of named tensors; ``<name>.bin`` holds every tensor as
little-endian float64 values, concatenated in index order.
'''
import json
import os
import numpy as np
import pandas as pd
from .errors import ConfigurationError, SerializationError
from .network import NetworkSpec
from .training import Normalization, TrainedNetwork, TrainOptions

FORMAT_VERSION = 1
BLOB_DTYPE = '<f8'


def blob_path(path):
    return os.path.splitext(str(path))[0] + '.bin'


def save_network(net, path):
    '''Write ``net`` to ``path`` (JSON) and its sibling ``.bin`` blob'''
    index = []
    chunks = []
    offset = 0
    for group, tensors in (('parameter', net.parameters),
                           ('buffer', net.buffers)):
        for name, value in tensors.items():
            index.append({'name': name, 'group': group, 'offset': offset,
                          'shape': list(value.shape)})
            chunks.append(np.ascontiguousarray(value, dtype=BLOB_DTYPE)
                          .reshape(-1))
            offset += value.size
    blob = blob_path(path)
    with open(blob, 'wb') as output:
        for chunk in chunks:
            output.write(chunk.tobytes())
    document = {
        'format': FORMAT_VERSION,
        'kind': 'network',
        'spec': net.spec.as_dict(),
        'normalization': net.normalization.as_dict(),
        'options': None if net.options is None else net.options.as_dict(),
        'loss_curve': net.loss_curve,
        'blob': os.path.basename(blob),
        'tensors': index,
    }
    with open(str(path), 'w', encoding='utf8') as output:
        json.dump(document, output, indent=1)
        output.write('\n')
    return blob


def load_network(path):
    try:
        with open(str(path), 'r', encoding='utf8') as raw:
            document = json.load(raw)
    except ValueError as exc:
        raise SerializationError('{}: {}'.format(path, exc)) from exc
    if document.get('format') != FORMAT_VERSION or \
            document.get('kind') != 'network':
        raise SerializationError('{}: not a network dump'.format(path))
    blob = os.path.join(os.path.dirname(str(path)), document['blob'])
    values = np.fromfile(blob, dtype=BLOB_DTYPE).astype(np.float64)
    groups = {'parameter': {}, 'buffer': {}}
    try:
        for entry in document['tensors']:
            size = int(np.prod(entry['shape']))
            start = entry['offset']
            if start + size > values.size:
                raise SerializationError('{}: blob is truncated at tensor {}'
                                         .format(blob, entry['name']))
            groups[entry['group']][entry['name']] = \
                values[start:start + size].reshape(entry['shape'])
        spec = NetworkSpec.from_dict(document['spec'])
        options = document['options']
        return TrainedNetwork(
            spec, groups['parameter'], groups['buffer'],
            Normalization.from_dict(document['normalization']),
            document['loss_curve'],
            None if options is None else TrainOptions.from_dict(options))
    except (KeyError, TypeError, ConfigurationError) as exc:
        raise SerializationError('{}: malformed network dump: {}'
                                 .format(path, exc)) from exc


def write_loss_curve(curve, path):
    '''``epoch,loss`` rows, epochs counted from 1'''
    frame = pd.DataFrame({'epoch': np.arange(1, len(curve) + 1),
                          'loss': np.asarray(curve, dtype=np.float64)})
    frame.to_csv(str(path), index=False, float_format='%.17g')
