from .parseutils import ConfigError, ParseError
from .document import Document, Section, MergeError, merge
from .schema import Field, Schema, overlay, ALL
