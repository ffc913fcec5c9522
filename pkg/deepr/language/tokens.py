"""Tokenizer for R source text."""
import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import Any, List, Optional

from ..core.conditions import IncompleteInput, RSyntaxError


logger = logging.getLogger(__name__)


class TokenKind(str, Enum):
    NUMBER = 'number'
    STRING = 'string'
    SYMBOL = 'symbol'
    BACKTICK = 'backtick-symbol'
    OPERATOR = 'operator'
    PUNCT = 'punctuation'
    KEYWORD = 'keyword'
    COMMENT = 'comment'
    NEWLINE = 'newline'
    EOF = 'eof'


@dataclass
class Token:
    kind: TokenKind
    lexeme: str
    value: Any = None
    line: int = 1
    col: int = 1
    start: int = 0
    end: int = 0

    def is_op(self, *ops: str) -> bool:
        return self.kind in (TokenKind.OPERATOR, TokenKind.PUNCT) and self.lexeme in ops

    def is_keyword(self, *words: str) -> bool:
        return self.kind == TokenKind.KEYWORD and self.lexeme in words


KEYWORDS = {
    'if', 'else', 'repeat', 'while', 'function', 'for', 'in', 'next', 'break',
    'TRUE', 'FALSE', 'NULL', 'Inf', 'NaN', 'NA', 'NA_integer_', 'NA_real_',
    'NA_character_',
}

CONSTANT_KEYWORDS = {
    'TRUE', 'FALSE', 'NULL', 'Inf', 'NaN', 'NA', 'NA_integer_', 'NA_real_', 'NA_character_',
}

# longest first
OPERATORS = [
    ':::', '<<-', '->>',
    '|>', '<-', '<=', '>=', '==', '!=', '->', '&&', '||', '::', ':=', '**',
    '+', '-', '*', '/', '^', '<', '>', '!', '&', '|', '~', '?', ':', '=', '$', '@',
]

PUNCTUATION = set('(){}[],;')

_NUMBER = re.compile(
    r'0[xX][0-9a-fA-F]+L?|(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?L?')

_SIMPLE_ESCAPES = {
    'n': '\n', 't': '\t', 'r': '\r', '\\': '\\', '"': '"', "'": "'", '`': '`',
    '0': '\0', 'a': '\a', 'b': '\b', 'f': '\f', 'v': '\v', ' ': ' ',
}

_RAW_CLOSE = {'(': ')', '[': ']', '{': '}'}


def _is_ident_start(ch: str) -> bool:
    return ch.isalpha() or ch == '.'


def _is_ident_char(ch: str) -> bool:
    return ch.isalnum() or ch in '._'


class Lexer:
    """Single-pass scanner tracking bracket context for newline handling."""

    def __init__(self, source: str):
        self.src = source
        self.pos = 0
        self.line = 1
        self.col = 1
        self.brackets: List[str] = []
        self.tokens: List[Token] = []

    def error(self, message: str, line: int, col: int, incomplete: bool = False):
        cls = IncompleteInput if incomplete else RSyntaxError
        line_text = self._context_line(line)
        return cls(message, line, col, snippet=line_text[:max(col, 0)], source_line=line_text)

    def _context_line(self, line: int) -> str:
        lines = self.src.split('\n')
        return lines[line - 1] if 0 < line <= len(lines) else ''

    def _advance(self, n: int = 1) -> str:
        text = self.src[self.pos:self.pos + n]
        for ch in text:
            if ch == '\n':
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n
        return text

    def _emit(self, kind: TokenKind, lexeme: str, value: Any, line: int, col: int, start: int):
        self.tokens.append(Token(kind, lexeme, value, line, col, start, self.pos))

    def _skip_newlines(self) -> bool:
        return bool(self.brackets) and self.brackets[-1] in ('(', '[', '[[')

    def run(self) -> List[Token]:
        src = self.src
        while self.pos < len(src):
            ch = src[self.pos]
            line, col, start = self.line, self.col, self.pos
            if ch == '\n':
                self._advance()
                if not self._skip_newlines():
                    self._emit(TokenKind.NEWLINE, '\n', None, line, col, start)
                continue
            if ch in ' \t\r\f':
                self._advance()
                continue
            if ch == '#':
                end = src.find('\n', self.pos)
                end = len(src) if end < 0 else end
                text = self._advance(end - self.pos)
                self._emit(TokenKind.COMMENT, text, None, line, col, start)
                continue
            if ch in 'rR' and self.pos + 1 < len(src) and src[self.pos + 1] in '"\'':
                self._raw_string(line, col, start)
                continue
            if ch.isdigit() or (ch == '.' and self.pos + 1 < len(src) and src[self.pos + 1].isdigit()):
                self._number(line, col, start)
                continue
            if _is_ident_start(ch):
                self._identifier(line, col, start)
                continue
            if ch == '_':
                self._advance()
                self._emit(TokenKind.SYMBOL, '_', '_', line, col, start)
                continue
            if ch in '"\'':
                text = self._quoted(ch, line, col)
                self._emit(TokenKind.STRING, src[start:self.pos], text, line, col, start)
                continue
            if ch == '`':
                name = self._quoted('`', line, col)
                if name == '':
                    raise self.error("attempt to use zero-length variable name", line, col)
                self._emit(TokenKind.BACKTICK, src[start:self.pos], name, line, col, start)
                continue
            if ch == '%':
                end = src.find('%', self.pos + 1)
                newline = src.find('\n', self.pos + 1)
                if end < 0 or (0 <= newline < end):
                    raise self.error("unexpected input", line, col)
                text = self._advance(end + 1 - self.pos)
                self._emit(TokenKind.OPERATOR, text, None, line, col, start)
                continue
            if ch == '\\':
                self._advance()
                self._emit(TokenKind.KEYWORD, 'function', None, line, col, start)
                continue
            if ch in PUNCTUATION:
                self._punctuation(ch, line, col, start)
                continue
            for op in OPERATORS:
                if src.startswith(op, self.pos):
                    self._advance(len(op))
                    self._emit(TokenKind.OPERATOR, '^' if op == '**' else op, None, line, col, start)
                    break
            else:
                raise self.error("unexpected input", line, col)
        nlines = src.count('\n') + 1
        self.tokens.append(Token(TokenKind.EOF, '', None, nlines + 1, 0, len(src), len(src)))
        return self.tokens

    def _punctuation(self, ch: str, line: int, col: int, start: int):
        src = self.src
        if ch == '[' and src.startswith('[[', self.pos):
            self._advance(2)
            self.brackets.append('[[')
            self._emit(TokenKind.PUNCT, '[[', None, line, col, start)
            return
        if ch in '([{':
            self.brackets.append(ch)
            self._advance()
            self._emit(TokenKind.PUNCT, ch, None, line, col, start)
            return
        if ch == ']' and self.brackets and self.brackets[-1] == '[[':
            if not src.startswith(']]', self.pos):
                raise self.error("unexpected ']'", line, col)
            self.brackets.pop()
            self._advance(2)
            self._emit(TokenKind.PUNCT, ']]', None, line, col, start)
            return
        if ch in ')]}':
            opener = {')': '(', ']': '[', '}': '{'}[ch]
            if not self.brackets or self.brackets[-1] != opener:
                raise self.error(f"unexpected '{ch}'", line, col)
            self.brackets.pop()
        self._advance()
        self._emit(TokenKind.PUNCT, ch, None, line, col, start)

    def _number(self, line: int, col: int, start: int):
        m = _NUMBER.match(self.src, self.pos)
        text = m.group(0)
        self._advance(len(text))
        if self.pos < len(self.src) and self.src[self.pos] == 'i':
            raise self.error("complex literals are not supported", line, col)
        if self.pos < len(self.src) and _is_ident_char(self.src[self.pos]):
            raise self.error("unexpected symbol", line, col)
        is_int = text.endswith('L')
        body = text[:-1] if is_int else text
        if body[:2] in ('0x', '0X'):
            value = float(int(body, 16))
        else:
            value = float(body)
        if is_int and value.is_integer() and abs(value) <= 2147483647:
            self._emit(TokenKind.NUMBER, text, int(value), line, col, start)
        else:
            self._emit(TokenKind.NUMBER, text, value, line, col, start)

    def _identifier(self, line: int, col: int, start: int):
        end = self.pos
        while end < len(self.src) and _is_ident_char(self.src[end]):
            end += 1
        text = self._advance(end - self.pos)
        kind = TokenKind.KEYWORD if text in KEYWORDS else TokenKind.SYMBOL
        self._emit(kind, text, text, line, col, start)

    def _quoted(self, quote: str, line: int, col: int) -> str:
        src = self.src
        self._advance()
        out = []
        while True:
            if self.pos >= len(src):
                raise self.error("unexpected INCOMPLETE_STRING", line, col, incomplete=True)
            ch = src[self.pos]
            if ch == quote:
                self._advance()
                return ''.join(out)
            if ch == '\\':
                out.append(self._escape(line, col))
                continue
            out.append(self._advance())

    def _escape(self, line: int, col: int) -> str:
        src = self.src
        if self.pos + 1 >= len(src):
            raise self.error("unexpected INCOMPLETE_STRING", line, col, incomplete=True)
        code = src[self.pos + 1]
        if code in _SIMPLE_ESCAPES:
            self._advance(2)
            return _SIMPLE_ESCAPES[code]
        if code == '\n':
            self._advance(2)
            return '\n'
        limits = {'x': 2, 'u': 4, 'U': 8}
        if code in limits:
            self._advance(2)
            braced = self.pos < len(src) and src[self.pos] == '{'
            if braced:
                close = src.find('}', self.pos)
                if close < 0:
                    raise self.error(f"invalid \\{code}{{xxxx}} sequence", self.line, self.col)
                digits = src[self.pos + 1:close]
                self._advance(close + 1 - self.pos)
            else:
                digits = ''
                while (len(digits) < limits[code] and self.pos < len(src)
                       and src[self.pos] in '0123456789abcdefABCDEF'):
                    digits += self._advance()
            if not digits or any(c not in '0123456789abcdefABCDEF' for c in digits):
                raise self.error(f"'\\{code}' used without hex digits in character string", line, col)
            return chr(int(digits, 16))
        raise self.error(f"'\\{code}' is an unrecognized escape in character string", line, col)

    def _raw_string(self, line: int, col: int, start: int):
        src = self.src
        quote = src[self.pos + 1]
        i = self.pos + 2
        dashes = 0
        while i < len(src) and src[i] == '-':
            dashes += 1
            i += 1
        if i >= len(src) or src[i] not in _RAW_CLOSE:
            raise self.error("malformed raw string literal", line, col)
        closing = _RAW_CLOSE[src[i]] + '-' * dashes + quote
        end = src.find(closing, i + 1)
        if end < 0:
            raise self.error("unexpected INCOMPLETE_STRING", line, col, incomplete=True)
        text = src[i + 1:end]
        self._advance(end + len(closing) - self.pos)
        self._emit(TokenKind.STRING, src[start:self.pos], text, line, col, start)


def tokenize(source: str, keep_comments: bool = False) -> List[Token]:
    """Split ``source`` into tokens ending with an EOF token.

    Raises ``IncompleteInput`` when a string or backtick name is still open
    at the end of the text.
    """
    tokens = Lexer(source).run()
    if keep_comments:
        return tokens
    return [t for t in tokens if t.kind != TokenKind.COMMENT]


def describe_token(token: Optional[Token]) -> str:
    """The noun R uses in ``unexpected ...`` messages."""
    if token is None or token.kind == TokenKind.EOF:
        return 'end of input'
    if token.kind == TokenKind.NUMBER:
        return 'numeric constant'
    if token.kind == TokenKind.STRING:
        return 'string constant'
    if token.kind in (TokenKind.SYMBOL, TokenKind.BACKTICK):
        return 'symbol'
    if token.kind == TokenKind.NEWLINE:
        return 'newline'
    if token.kind == TokenKind.KEYWORD:
        if token.lexeme == 'NULL':
            return 'NULL_CONST'
        if token.lexeme in CONSTANT_KEYWORDS:
            return 'numeric constant'
        return f"'{token.lexeme}'"
    if token.lexeme in ('<-', '<<-', '=', '->', '->>'):
        return 'assignment' if token.lexeme != '=' else "'='"
    if token.kind == TokenKind.OPERATOR and token.lexeme.startswith('%'):
        return 'SPECIAL'
    return f"'{token.lexeme}'"
