"""Tokenizer for the project description language.

Lexing never raises: malformed input yields diagnostics plus a best-effort
token stream so the parser can keep going and report further problems.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..diagnostics import Diagnostic, SourceSpan

WORD = "word"
STRING = "string"
INT = "int"
LBRACE = "lbrace"
RBRACE = "rbrace"
LBRACKET = "lbracket"
RBRACKET = "rbracket"
COLON = "colon"
COMMA = "comma"
EOF = "eof"

_PUNCT = {
    "{": LBRACE,
    "}": RBRACE,
    "[": LBRACKET,
    "]": RBRACKET,
    ":": COLON,
    ",": COMMA,
}

_ESCAPES = {'"': '"', "\\": "\\", "n": "\n"}


@dataclass(frozen=True)
class Token:
    """One lexeme. ``text`` holds the decoded value for strings."""

    kind: str
    text: str
    span: SourceSpan = field(compare=False)


@dataclass(frozen=True)
class LexedSource:
    tokens: tuple[Token, ...]
    diagnostics: tuple[Diagnostic, ...]


def _is_word_start(ch: str) -> bool:
    return ch.isalpha() and ch.isascii()


def _is_word_part(ch: str) -> bool:
    return ch.isascii() and (ch.isalnum() or ch in "_.-")


def tokenize(text: str, filename: str) -> LexedSource:
    """Split source text into tokens, collecting lexical diagnostics."""
    tokens: list[Token] = []
    diagnostics: list[Diagnostic] = []
    line = 1
    column = 1
    i = 0
    n = len(text)

    def span(length: int = 1) -> SourceSpan:
        return SourceSpan(filename, line, column, length)

    def error(message: str, length: int = 1) -> None:
        diagnostics.append(Diagnostic(
            code="LexError", message=message, span=span(length)))

    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            column = 1
            continue
        if ch in " \t\r":
            i += 1
            column += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
                column += 1
            continue
        if ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, span()))
            i += 1
            column += 1
            continue
        if ch.isdigit() or (ch == "-" and i + 1 < n and text[i + 1].isdigit()):
            start = i
            start_span = span()
            i += 1
            while i < n and text[i].isdigit():
                i += 1
            raw = text[start:i]
            tokens.append(Token(INT, raw, SourceSpan(
                filename, start_span.line, start_span.column, len(raw))))
            column += len(raw)
            continue
        if _is_word_start(ch):
            start = i
            start_span = span()
            i += 1
            while i < n and _is_word_part(text[i]):
                i += 1
            raw = text[start:i]
            tokens.append(Token(WORD, raw, SourceSpan(
                filename, start_span.line, start_span.column, len(raw))))
            column += len(raw)
            continue
        if ch == '"':
            token, i, line, column = _lex_string(
                text, i, line, column, filename, diagnostics)
            tokens.append(token)
            continue
        error(f"unexpected character {ch!r}")
        i += 1
        column += 1

    tokens.append(Token(EOF, "", SourceSpan(filename, line, column, 1)))
    return LexedSource(tuple(tokens), tuple(diagnostics))


def _lex_string(
    text: str, i: int, line: int, column: int, filename: str,
    diagnostics: list[Diagnostic],
) -> tuple[Token, int, int, int]:
    """Lex one double-quoted string starting at ``text[i]``.

    Strings stay on one line; a raw newline or end of input terminates the
    token with a diagnostic so lexing can continue on the next line.
    """
    start_line = line
    start_column = column
    n = len(text)
    i += 1
    column += 1
    parts: list[str] = []
    closed = False
    while i < n:
        ch = text[i]
        if ch == '"':
            i += 1
            column += 1
            closed = True
            break
        if ch == "\n":
            break
        if ch == "\\":
            if i + 1 >= n or text[i + 1] == "\n":
                i += 1
                column += 1
                break
            escape = text[i + 1]
            if escape in _ESCAPES:
                parts.append(_ESCAPES[escape])
            else:
                diagnostics.append(Diagnostic(
                    code="LexError",
                    message=f"unknown escape sequence '\\{escape}'",
                    span=SourceSpan(filename, line, column, 2)))
                parts.append(escape)
            i += 2
            column += 2
            continue
        parts.append(ch)
        i += 1
        column += 1
    if not closed:
        diagnostics.append(Diagnostic(
            code="LexError",
            message="unterminated string",
            span=SourceSpan(filename, start_line, start_column,
                            column - start_column)))
    token = Token(STRING, "".join(parts), SourceSpan(
        filename, start_line, start_column, column - start_column))
    return token, i, line, column
