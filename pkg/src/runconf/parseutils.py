'''Line scanning helpers shared by the document and value parsers'''

import codecs
from functools import lru_cache
import re


class ConfigError(Exception):
    pass


class ParseError(ConfigError):
    '''Syntax error at a zero-based row and column'''

    def __init__(self, row, column, text):
        super().__init__()
        self.row = row
        self.column = column
        self.text = text
        self.filename = None

    def __str__(self):
        where = '{}:{}'.format(self.row + 1, self.column + 1)
        if self.filename is not None:
            where = '{}:{}'.format(self.filename, where)
        return '{}: error: {}'.format(where, self.text)


SPACE_CHARS = frozenset(' \t')
DELIM_CHARS = SPACE_CHARS | frozenset(',:;[]()=#')
DELIM_CHARS_TYPE = SPACE_CHARS | frozenset(':=,#')
INT_MIN = -(2 ** 63)
INT_MAX = 2 ** 63 - 1

_SPACES = re.compile(r'[ \t]*')
_NAME = re.compile(r'[A-Za-z0-9+_./][A-Za-z0-9+\-_./]*')
_QUOTED = {quote: re.compile(r'{0}((?:[^{0}\\]|\\.)*){0}'.format(quote))
           for quote in '\'"'}


@lru_cache(maxsize=None)
def _word_pattern(delim):
    return re.compile('[^{}]*'.format(re.escape(''.join(sorted(delim)))))


def is_name_valid(name):
    return _NAME.fullmatch(name) is not None


def unescape_str(string):
    return codecs.escape_decode(string.encode())[0].decode()


def skip_spaces(line, pos):
    return _SPACES.match(line, pos).end()


def extract_word(line, pos, delim=DELIM_CHARS):
    '''Returns (end, start, word) of the token after optional spaces'''
    start = skip_spaces(line, pos)
    end = _word_pattern(frozenset(delim)).match(line, start).end()
    return end, start, line[start:end]


def extract_string(line, pos):
    pos = skip_spaces(line, pos)
    quote = line[pos:pos + 1]
    if quote not in _QUOTED:
        raise ParseError(-1, pos, '\' or " expected')
    match = _QUOTED[quote].match(line, pos)
    if match is None:
        raise ParseError(-1, len(line), 'string is not terminated')
    return match.end(), unescape_str(match.group(1))


def line_expect(line, pos, char):
    if line[pos:pos + 1] != char:
        raise ParseError(-1, pos, '{!r} expected'.format(char))
    return pos + 1


def next_nonspace(line, pos=0):
    pos = skip_spaces(line, pos)
    return line[pos:pos + 1]
