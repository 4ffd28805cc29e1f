"""Recursive-descent parser producing a block tree with source spans.

Errors never abort the pass: the parser records a diagnostic and
resynchronizes, at worst at the next top-level block header, so one broken
block cannot hide problems in the blocks after it. All collected
diagnostics are raised together as :class:`ParseFailure`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from ..diagnostics import Diagnostic, DiagnosticsError, SourceSpan, sort_diagnostics
from . import lexer
from .lexer import Token, tokenize

TOP_KINDS = (
    "scenario", "asset", "threat", "function", "hara", "goal", "attack", "justify",
)
CHILD_KINDS = ("subscenario",)
ALL_KINDS = TOP_KINDS + CHILD_KINDS

# Which child block kinds each block kind may contain.
ALLOWED_CHILDREN = {"scenario": ("subscenario",)}


@dataclass(frozen=True)
class Scalar:
    """A single value: ``kind`` is one of ``string``, ``ident``, ``int``."""

    kind: str
    text: str
    span: SourceSpan = field(compare=False)

    @property
    def int_value(self) -> int:
        return int(self.text)


@dataclass(frozen=True)
class ListValue:
    items: tuple[object, ...]
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class Entry:
    key: str
    value: object
    key_span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class Block:
    kind: str
    name: str
    entries: tuple[Entry, ...]
    children: tuple[Block, ...] = ()
    span: SourceSpan = field(compare=False, default=SourceSpan("", 1, 1))


@dataclass(frozen=True)
class Document:
    blocks: tuple[Block, ...]


class ParseFailure(DiagnosticsError):
    """Raised when a source has lexical or syntactic errors.

    ``document`` holds the partial tree built before and after recovery.
    """

    def __init__(self, diagnostics, document: Document) -> None:
        super().__init__(diagnostics)
        self.document = document


# Body-loop outcomes: the closing brace was found, the body ran into the
# end of file, or it unwound at a block header that cannot nest here.
_CLOSED = "closed"
_EOF = "eof"
_UNWIND = "unwind"


class _Parser:
    def __init__(self, tokens: tuple[Token, ...]) -> None:
        self.tokens = tokens
        self.pos = 0
        self.diagnostics: list[Diagnostic] = []
        self._flagged_unwind = -1

    def peek(self, offset: int = 0) -> Token:
        index = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[index]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != lexer.EOF and self.pos < len(self.tokens) - 1:
            self.pos += 1
        return token

    def error(self, message: str, span: SourceSpan) -> None:
        self.diagnostics.append(Diagnostic(
            code="ParseError", message=message, span=span))

    def at_block_header(self, offset: int = 0) -> bool:
        return (self.peek(offset).kind == lexer.WORD
                and self.peek(offset).text in ALL_KINDS
                and self.peek(offset + 1).kind == lexer.WORD
                and self.peek(offset + 2).kind == lexer.LBRACE)

    def parse_document(self) -> Document:
        blocks: list[Block] = []
        while self.peek().kind != lexer.EOF:
            token = self.peek()
            if self.at_block_header():
                block, _ = self.parse_block()
                if token.text in TOP_KINDS:
                    blocks.append(block)
                else:
                    self.error(
                        f"{token.text!r} blocks only appear inside "
                        f"a {self._parent_of(token.text)!r} block", token.span)
            elif (token.kind == lexer.WORD
                  and self.peek(1).kind == lexer.WORD
                  and self.peek(2).kind == lexer.LBRACE):
                self.error(f"unknown block kind {token.text!r}", token.span)
                self.parse_block()
            else:
                self.error(
                    f"expected a block header, found {self._describe(token)}",
                    token.span)
                self.sync_to_block()
        return Document(tuple(blocks))

    @staticmethod
    def _parent_of(kind: str) -> str:
        for parent, children in ALLOWED_CHILDREN.items():
            if kind in children:
                return parent
        return "scenario"

    @staticmethod
    def _describe(token: Token) -> str:
        if token.kind == lexer.EOF:
            return "end of file"
        if token.kind == lexer.STRING:
            return "a string"
        return repr(token.text)

    def sync_to_block(self) -> None:
        """Skip tokens until the next plausible block header or end of file."""
        while self.peek().kind != lexer.EOF:
            if (self.peek().kind == lexer.WORD
                    and self.peek(1).kind == lexer.WORD
                    and self.peek(2).kind == lexer.LBRACE):
                return
            self.advance()

    def parse_block(self) -> tuple[Block, str]:
        """Parse ``KIND IDENT { ... }``; the caller verified the header shape."""
        kind_token = self.advance()
        name_token = self.advance()
        self.advance()  # the opening brace
        entries, children, outcome = self.parse_body(kind_token.text, name_token)
        block = Block(
            kind=kind_token.text,
            name=name_token.text,
            entries=tuple(entries),
            children=tuple(children),
            span=kind_token.span,
        )
        return block, outcome

    def parse_body(
        self, kind: str, name_token: Token,
    ) -> tuple[list[Entry], list[Block], str]:
        entries: list[Entry] = []
        children: list[Block] = []
        seen_keys: dict[str, SourceSpan] = {}
        allowed_children = ALLOWED_CHILDREN.get(kind, ())
        while True:
            token = self.peek()
            if token.kind == lexer.RBRACE:
                self.advance()
                return entries, children, _CLOSED
            if token.kind == lexer.EOF:
                if self._flagged_unwind != self.pos:
                    self.error(
                        f"missing '}}' to close {kind} block {name_token.text!r}",
                        token.span)
                    self._flagged_unwind = self.pos
                return entries, children, _EOF
            if token.kind == lexer.WORD and self.peek(1).kind == lexer.COLON:
                entry = self.parse_entry()
                if entry is None:
                    continue
                if entry.key in seen_keys:
                    self.diagnostics.append(Diagnostic(
                        code="DuplicateKey",
                        message=f"duplicate key {entry.key!r} in this block",
                        span=entry.key_span))
                else:
                    seen_keys[entry.key] = entry.key_span
                    entries.append(entry)
                continue
            if self.at_block_header():
                if token.text in allowed_children:
                    child, outcome = self.parse_block()
                    children.append(child)
                    if outcome == _UNWIND and self.at_block_header() \
                            and self.peek().text in allowed_children:
                        # The child unwound at a header this block can
                        # adopt, so resume here instead of propagating.
                        continue
                    if outcome != _CLOSED:
                        return entries, children, outcome
                    continue
                # A block header that cannot nest here: almost always a
                # missing brace above, so end this block and let an outer
                # level (or the top level) consume the header.
                if self._flagged_unwind != self.pos:
                    self.error(
                        f"missing '}}' before {token.text!r} block "
                        f"(to close {kind} block {name_token.text!r})",
                        token.span)
                    self._flagged_unwind = self.pos
                return entries, children, _UNWIND
            self.error(
                f"expected a key or '}}', found {self._describe(token)}",
                token.span)
            self.advance()
            self.skip_to_entry_boundary()

    def skip_to_entry_boundary(self) -> None:
        while True:
            token = self.peek()
            if token.kind in (lexer.RBRACE, lexer.EOF):
                return
            if token.kind == lexer.WORD and self.peek(1).kind == lexer.COLON:
                return
            if self.at_block_header():
                return
            self.advance()

    def parse_entry(self) -> Entry | None:
        key_token = self.advance()
        self.advance()  # the colon
        value = self.parse_value()
        if value is None:
            self.skip_to_entry_boundary()
            return None
        return Entry(key=key_token.text, value=value, key_span=key_token.span)

    def parse_value(self):
        token = self.peek()
        if token.kind == lexer.STRING:
            self.advance()
            return Scalar("string", token.text, token.span)
        if token.kind == lexer.INT:
            self.advance()
            return Scalar("int", token.text, token.span)
        if token.kind == lexer.WORD:
            self.advance()
            return Scalar("ident", token.text, token.span)
        if token.kind == lexer.LBRACKET:
            return self.parse_list()
        self.error(f"expected a value, found {self._describe(token)}", token.span)
        return None

    def parse_list(self):
        open_token = self.advance()
        items: list[object] = []
        if self.peek().kind == lexer.RBRACKET:
            self.advance()
            return ListValue(tuple(items), open_token.span)
        while True:
            value = self.parse_value()
            if value is not None:
                items.append(value)
            else:
                self.skip_in_list()
            token = self.peek()
            if token.kind == lexer.COMMA:
                self.advance()
                if self.peek().kind == lexer.RBRACKET:
                    self.error("expected a value after ','", self.peek().span)
                    self.advance()
                    return ListValue(tuple(items), open_token.span)
                continue
            if token.kind == lexer.RBRACKET:
                self.advance()
                return ListValue(tuple(items), open_token.span)
            if (token.kind in (lexer.RBRACE, lexer.EOF)
                    or (token.kind == lexer.WORD
                        and self.peek(1).kind == lexer.COLON)
                    or self.at_block_header()):
                self.error("missing ']' to close list", token.span)
                return ListValue(tuple(items), open_token.span)
            self.error(
                f"expected ',' or ']' in list, found {self._describe(token)}",
                token.span)

    def skip_in_list(self) -> None:
        while True:
            token = self.peek()
            if token.kind in (lexer.COMMA, lexer.RBRACKET,
                              lexer.RBRACE, lexer.EOF):
                return
            if token.kind == lexer.WORD and self.peek(1).kind == lexer.COLON:
                return
            self.advance()


def parse_source(text: str, filename: str) -> Document:
    """Parse one source text; raise :class:`ParseFailure` on any error."""
    lexed = tokenize(text, filename)
    parser = _Parser(lexed.tokens)
    document = parser.parse_document()
    diagnostics = sort_diagnostics(
        list(lexed.diagnostics) + parser.diagnostics)
    if diagnostics:
        raise ParseFailure(diagnostics, document)
    return document


def parse_path(path: str | Path) -> Document:
    """Parse one file; I/O problems propagate as :class:`OSError`."""
    path = Path(path)
    return parse_source(path.read_text(encoding="utf-8"), str(path))
