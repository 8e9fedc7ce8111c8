from .parseutils import ParseError, INT_MIN, INT_MAX
from .parseutils import extract_word, extract_string, skip_spaces, line_expect
from .parseutils import is_name_valid


class Value:
    type_name = None
    py_type = None

    def is_valid(self):
        if self.value is None:
            return True
        return type(self.value) == self.py_type

    def validate(self):
        if not self.is_valid():
            raise ValueError('{} is not a valid {} value'
                             .format(repr(self.value), self.type_name))

    def _do_load(self, line, pos):
        raise NotImplementedError()

    def load(self, line, pos=0):
        new_pos, _, word = extract_word(line, pos)
        if word == 'null':
            self.value = None
            return new_pos
        pos = self._do_load(line, pos)
        if not self.is_valid():
            raise ParseError(-1, pos,
                             'invalid {} value'.format(self.type_name))
        return pos

    def _do_save(self):
        return str(self.value)

    def save(self):
        self.validate()
        return 'null' if self.value is None else self._do_save()

    def __init__(self, value=None):
        self.value = value


class NumberValue(Value):
    def _do_load(self, line, pos):
        pos, start, word = extract_word(line, pos)
        try:
            self.value = self.py_type(word)
        except ValueError:
            raise ParseError(-1, start, '{} expected, {} token found'
                             .format(self.type_name, repr(word)))
        return pos


class IntValue(NumberValue):
    type_name = 'int'
    py_type = int

    def is_valid(self):
        if type(self.value) == int:
            return INT_MIN <= self.value <= INT_MAX
        return super().is_valid()


class FloatValue(NumberValue):
    type_name = 'float'
    py_type = float

    def _do_save(self):
        return repr(self.value)


class BoolValue(Value):
    type_name = 'bool'
    py_type = bool

    def _do_load(self, line, pos):
        pos, start, word = extract_word(line, pos)
        if word not in ('true', 'false'):
            raise ParseError(-1, start, 'expected true or false')
        self.value = word == 'true'
        return pos

    def _do_save(self):
        return 'true' if self.value else 'false'


class StrValue(Value):
    type_name = 'string'
    py_type = str

    def _do_load(self, line, pos):
        pos, self.value = extract_string(line, pos)
        return pos

    def _do_save(self):
        return repr(self.value)


class WordValue(StrValue):
    '''Unquoted string, only tried as the last resort of type deduction'''

    def _do_load(self, line, pos):
        pos, start, word = extract_word(line, pos)
        if not is_name_valid(word):
            raise ParseError(-1, start, 'value expected')
        rest = skip_spaces(line, pos)
        if rest < len(line) and line[rest] != '#':
            raise ParseError(-1, rest,
                             'unexpected {!r}'.format(line[rest]))
        self.value = word
        return pos


class ArrayValue(Value):
    py_type = list

    @property
    def type_name(self):
        return self.item.type_name + '[]'

    def is_valid(self):
        if self.value is None:
            return True
        if type(self.value) != list:
            return False
        for item in self.value:
            self.item.value = item
            if item is None or not self.item.is_valid():
                return False
        return True

    def _do_load(self, line, pos):
        pos = line_expect(line, skip_spaces(line, pos), '[')
        self.value = []
        while True:
            pos = skip_spaces(line, pos)
            if pos >= len(line):
                raise ParseError(-1, pos, 'unterminated array')
            if line[pos] == ']':
                return pos + 1
            if self.value:
                pos = skip_spaces(line, line_expect(line, pos, ','))
            pos = self.item.load(line, pos)
            if self.item.value is None:
                raise ParseError(-1, pos, 'null is not allowed in arrays')
            self.value.append(self.item.value)

    def _do_save(self):
        items = []
        for item in self.value:
            self.item.value = item
            items.append(self.item.save())
        return '[' + ', '.join(items) + ']'

    def __init__(self, item_class, value=None):
        self.item = item_class()
        super().__init__(value)


SCALAR_TYPES = [IntValue, FloatValue, BoolValue, StrValue]


def create_value(type_name):
    if type_name.endswith('[]'):
        item_class = _scalar_class(type_name[:-2])
        return ArrayValue(item_class)
    return _scalar_class(type_name)()


def _scalar_class(type_name):
    for value_class in SCALAR_TYPES:
        if value_class.type_name == type_name:
            return value_class
    raise KeyError(type_name)


def type_names():
    return ([cls.type_name for cls in SCALAR_TYPES] +
            [cls.type_name + '[]' for cls in SCALAR_TYPES])


def value_type_name(value):
    '''Deduce the config type name of a Python value'''
    if isinstance(value, list):
        if not value:
            raise ValueError('cannot deduce type of an empty list')
        names = {value_type_name(item) for item in value}
        if names == {'int', 'float'}:
            names = {'float'}
        if len(names) != 1:
            raise ValueError('mixed types in {}'.format(repr(value)))
        return names.pop() + '[]'
    for value_class in SCALAR_TYPES:
        if type(value) == value_class.py_type:
            return value_class.type_name
    raise ValueError('unsupported value {}'.format(repr(value)))


def detect_value(line, pos):
    '''Try every known type and return the first one that loads'''
    best = None
    candidates = [create_value(name) for name in type_names()]
    candidates.append(WordValue())
    for value in candidates:
        try:
            new_pos = value.load(line, pos)
        except ParseError as exc:
            if best is None or exc.column > best.column:
                best = exc
            continue
        if value.value is None:
            raise ParseError(-1, new_pos, 'found null, cannot deduce type')
        if isinstance(value, WordValue):
            value = StrValue(value.value)
        if _ends_cleanly(line, new_pos):
            return new_pos, value
    if best is None:
        best = ParseError(-1, pos, 'value expected')
    raise best


def _ends_cleanly(line, pos):
    pos = skip_spaces(line, pos)
    return pos == len(line) or line[pos] == '#'
