"""Project description language: lexing, parsing, lowering, printing."""

from .lexer import LexedSource, Token, tokenize
from .lower import (
    LoweringFailure,
    load_project,
    load_project_with_spans,
    lower_documents,
)
from .parser import (
    Block,
    Document,
    Entry,
    ListValue,
    ParseFailure,
    Scalar,
    parse_path,
    parse_source,
)
from .printer import format_entities, format_project

__all__ = [
    "Block",
    "Document",
    "Entry",
    "LexedSource",
    "ListValue",
    "LoweringFailure",
    "ParseFailure",
    "Scalar",
    "Token",
    "format_entities",
    "format_project",
    "load_project",
    "load_project_with_spans",
    "lower_documents",
    "parse_path",
    "parse_source",
    "tokenize",
]
