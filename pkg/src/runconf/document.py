'''
Typed INI documents

A document is a list of sections, each holding typed variables. Lines are
either blank/comment lines, section headers (``[name]``) or assignments.
Assignments may declare the type explicitly (``key: float = 1``) or let it
be deduced (``key = 1``). Comments and blank lines are kept, so a document
dumped after loading reads the same as the original.
'''
import os
from .parseutils import ParseError, ConfigError, is_name_valid
from .parseutils import skip_spaces, extract_word, line_expect, next_nonspace
from .parseutils import DELIM_CHARS_TYPE
from .values import create_value, detect_value, value_type_name


class CommentLine:
    @classmethod
    def can_load(cls, line):
        return next_nonspace(line) in ('', '#')

    def load(self, line, pos=0):
        pos = skip_spaces(line, pos)
        if pos == len(line):
            self.comment = None
            return pos
        if line[pos] != '#':
            raise ParseError(-1, pos, 'comment expected')
        self.comment = line[pos+1:]
        return len(line)

    def save(self, line=''):
        if self.comment is None:
            return line
        if line:
            line += ' '
        return line + '#' + self.comment

    def __init__(self, comment=None):
        self.comment = comment


class Variable(CommentLine):
    @classmethod
    def can_load(cls, line):
        char = next_nonspace(line)
        return bool(char) and is_name_valid(char)

    def load(self, line, pos=0):
        pos, start, self.key = extract_word(line, pos)
        if not is_name_valid(self.key):
            raise ParseError(-1, start,
                             'invalid variable name: {}'.format(self.key))
        pos = skip_spaces(line, pos)
        if pos == len(line) or line[pos] not in ':=':
            raise ParseError(-1, pos, "':' or '=' expected")
        if line[pos] == '=':
            pos, self.value = detect_value(line, pos + 1)
            return super().load(line, pos)
        pos, start, type_name = extract_word(line, pos + 1, DELIM_CHARS_TYPE)
        try:
            self.value = create_value(type_name)
        except KeyError:
            raise ParseError(-1, start, 'unknown type {}'.format(type_name))
        pos = skip_spaces(line, pos)
        if pos < len(line) and line[pos] == '=':
            pos = self.value.load(line, pos + 1)
        return super().load(line, pos)

    @property
    def type_name(self):
        return self.value.type_name

    def reset(self, type_name, value):
        self.value = create_value(type_name)
        self.value.value = value
        self.value.validate()

    def save(self, line=''):
        line += '{}: {}'.format(self.key, self.value.type_name)
        if self.value.value is not None:
            line += ' = {}'.format(self.value.save())
        return super().save(line)

    def __init__(self, key='', value=None, comment=None):
        super().__init__(comment)
        self.key = key
        self.value = value


class Header(CommentLine):
    @classmethod
    def can_load(cls, line):
        return next_nonspace(line) == '['

    def load(self, line, pos=0):
        pos = line_expect(line, skip_spaces(line, pos), '[')
        pos, start, self.key = extract_word(line, pos)
        if not is_name_valid(self.key):
            raise ParseError(-1, start,
                             'invalid section name: {}'.format(self.key))
        pos = line_expect(line, skip_spaces(line, pos), ']')
        return super().load(line, pos)

    def save(self, line=''):
        return super().save(line + '[{}]'.format(self.key))

    def __init__(self, key='', comment=None):
        super().__init__(comment)
        self.key = key


class Section:
    def __iter__(self):
        return (line for line in self.lines if isinstance(line, Variable))

    def __contains__(self, key):
        return self.find(key) is not None

    def __getitem__(self, key):
        variable = self.find(key)
        if variable is None:
            raise KeyError(key)
        return variable.value.value

    def find(self, key):
        for variable in self:
            if variable.key == key:
                return variable
        return None

    def append(self, line):
        if isinstance(line, Variable):
            if line.key in self:
                raise ParseError(-1, -1, 'duplicate key {}::{}'
                                 .format(self.key, line.key))
        self.lines.append(line)

    def set(self, key, value, type_name=None):
        if type_name is None:
            type_name = value_type_name(value)
        variable = self.find(key)
        if variable is None:
            variable = Variable(key)
            self.lines.append(variable)
        variable.reset(type_name, value)

    def as_dict(self):
        return {variable.key: variable.value.value for variable in self}

    def dump(self):
        return '\n'.join([self.header.save()] +
                         [line.save() for line in self.lines])

    @property
    def key(self):
        return self.header.key

    def __init__(self, header):
        self.header = header
        self.lines = []


class Document:
    def __iter__(self):
        return iter(self.__sections)

    def __contains__(self, key):
        return self.find(key) is not None

    def __getitem__(self, key):
        section = self.find(key)
        if section is None:
            raise KeyError(key)
        return section

    def find(self, key):
        for section in self.__sections:
            if section.key == key:
                return section
        return None

    def ensure_section(self, key):
        section = self.find(key)
        if section is None:
            section = Section(Header(key))
            self.__sections.append(section)
        return section

    def __parse_line(self, line):
        for line_class in (Header, Variable, CommentLine):
            if line_class.can_load(line):
                break
        node = line_class()
        node.load(line)
        if isinstance(node, Header):
            if node.key in self:
                raise ParseError(-1, -1,
                                 'duplicate section {}'.format(node.key))
            self.__sections.append(Section(node))
        elif self.__sections:
            self.__sections[-1].append(node)
        elif isinstance(node, Variable):
            raise ParseError(-1, -1, 'variable {} outside of any section'
                             .format(node.key))
        else:
            self.__preamble.append(node)

    def load(self, text, filename=None):
        self.__preamble = []
        self.__sections = []
        for row, line in enumerate(text.splitlines()):
            try:
                self.__parse_line(line)
            except ParseError as err:
                err.row = row
                if err.column < 0:
                    err.column = max(len(line) - 1, 0)
                err.filename = filename
                raise err
        return self

    def load_from_file(self, filename):
        with open(os.fspath(filename), 'r', encoding='utf8') as file:
            return self.load(file.read(), filename)

    def dump(self):
        parts = [line.save() for line in self.__preamble]
        parts += [section.dump() for section in self.__sections]
        return '\n'.join(parts)

    def save_to_file(self, filename):
        with open(os.fspath(filename), 'w', encoding='utf8') as file:
            file.write(self.dump() + '\n')

    def as_dict(self):
        return {section.key: section.as_dict() for section in self}

    def __init__(self, text=None):
        self.__preamble = []
        self.__sections = []
        if text is not None:
            self.load(text)


class MergeError(ConfigError):
    pass


def merge(dest, source):
    '''Merge source into dest, values of source win'''
    for src_section in source:
        dst_section = dest.ensure_section(src_section.key)
        for src_var in src_section:
            dst_var = dst_section.find(src_var.key)
            type_name = src_var.type_name
            if dst_var is not None and dst_var.type_name != type_name:
                type_name = _widen(dst_var.type_name, type_name)
                if type_name is None:
                    raise MergeError('type mismatch for {}::{}: expected {}, '
                                     'got {}'.format(src_section.key,
                                                     src_var.key,
                                                     dst_var.type_name,
                                                     src_var.type_name))
            value = src_var.value.value
            if value is not None and type_name.startswith('float'):
                value = _to_float(value)
            dst_section.set(src_var.key, value, type_name)
    return dest


def _widen(dest_type, src_type):
    # ints are accepted where floats are expected
    if (dest_type, src_type) in {('float', 'int'), ('float[]', 'int[]')}:
        return dest_type
    return None


def _to_float(value):
    if isinstance(value, list):
        return [float(item) for item in value]
    return float(value)
