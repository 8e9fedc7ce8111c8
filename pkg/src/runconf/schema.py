'''
Validation of loaded configuration against declared fields

A schema maps section names to fields. Validation turns the raw
``{section: {key: value}}`` mapping into plain Python values with keys
converted to identifiers (``max-depth`` becomes ``max_depth``), rejecting
unknown keys, wrong types and out-of-range values with ConfigError.
'''
import math
from .parseutils import ConfigError

ALL = 'all'


class Field:
    def check(self, section, value):
        if value is None:
            if self.nullable:
                return None
            raise ConfigError('{}::{} cannot be null'.format(section,
                                                             self.key))
        value = self._convert(section, value)
        if self.choices is not None and value not in self.choices:
            raise ConfigError('{}::{} must be one of {}, got {}'.format(
                section, self.key, ', '.join(map(str, self.choices)),
                repr(value)))
        for item in (value if isinstance(value, list) else [value]):
            self.__check_range(section, item)
        return value

    def __check_range(self, section, item):
        if not isinstance(item, (int, float)) or isinstance(item, bool):
            return
        if self.minimum is not None and item < self.minimum:
            raise ConfigError('{}::{} must be at least {}, got {}'
                              .format(section, self.key, self.minimum, item))
        if self.maximum is not None and item > self.maximum:
            raise ConfigError('{}::{} must be at most {}, got {}'
                              .format(section, self.key, self.maximum, item))

    def _convert(self, section, value):
        kind = self.kind
        if kind.endswith('[]'):
            if not isinstance(value, list):
                raise self._type_error(section, value)
            if not value and not self.allow_empty:
                raise ConfigError('{}::{} cannot be empty'
                                  .format(section, self.key))
            return [self._convert_scalar(section, kind[:-2], item)
                    for item in value]
        return self._convert_scalar(section, kind, value)

    def _convert_scalar(self, section, kind, value):
        if kind == 'count-or-all':
            if value == ALL:
                return ALL
            kind = 'int'
        if kind == 'float' and type(value) == int:
            return float(value)
        if kind == 'float' and type(value) == float:
            if math.isnan(value):
                raise ConfigError('{}::{} is NaN'.format(section, self.key))
            return value
        expected = {'int': int, 'bool': bool, 'string': str}.get(kind)
        if expected is None or type(value) != expected:
            raise self._type_error(section, value)
        return value

    def _type_error(self, section, value):
        return ConfigError('{}::{} must be of type {}, got {}'
                           .format(section, self.key, self.kind, repr(value)))

    @property
    def name(self):
        return self.key.replace('-', '_')

    def __init__(self, key, kind, minimum=None, maximum=None, choices=None,
                 nullable=False, required=True, allow_empty=False):
        self.key = key
        self.kind = kind
        self.minimum = minimum
        self.maximum = maximum
        self.choices = choices
        self.nullable = nullable
        self.required = required
        self.allow_empty = allow_empty


class Schema:
    def add_section(self, section, fields):
        if section in self.__sections:
            raise KeyError(section)
        self.__sections[section] = {field.key: field for field in fields}

    def sections(self):
        return list(self.__sections)

    def validate_section(self, section, values):
        if section not in self.__sections:
            raise ConfigError('unknown section [{}]'.format(section))
        fields = self.__sections[section]
        result = {}
        for key, value in values.items():
            if key not in fields:
                raise ConfigError('unknown key {}::{}'.format(section, key))
            result[fields[key].name] = fields[key].check(section, value)
        for field in fields.values():
            if field.required and field.name not in result:
                raise ConfigError('{}::{} is missing'
                                  .format(section, field.key))
            result.setdefault(field.name, None)
        return result

    def validate(self, values, sections=None):
        if sections is None:
            sections = list(values)
        for section in values:
            if section not in self.__sections:
                raise ConfigError('unknown section [{}]'.format(section))
        return {section: self.validate_section(section,
                                               values.get(section, {}))
                for section in sections}

    def __init__(self):
        self.__sections = {}


def overlay(base, *overrides):
    '''Layer {section: {key: value}} mappings, later ones win per key'''
    result = {section: dict(values) for section, values in base.items()}
    for override in overrides:
        for section, values in override.items():
            result.setdefault(section, {}).update(values)
    return result
