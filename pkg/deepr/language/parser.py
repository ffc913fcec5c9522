"""Pratt parser producing calls for every operator and control form."""
import logging
import math
from typing import Any, List, Optional, Tuple

from ..core.conditions import IncompleteInput, RSyntaxError
from ..core.values import NULL, mk_double, mk_int, mk_list, mk_logical, mk_str
from .ast import Arg, Call, MISSING_ARG, Symbol
from .tokens import Token, TokenKind, describe_token, tokenize


logger = logging.getLogger(__name__)


# (left binding power, right binding power); left-assoc ops use rbp = lbp + 1
BINARY_POWER = {
    '?': (2, 3),
    '=': (5, 4),
    '<-': (7, 6), '<<-': (7, 6), ':=': (7, 6),
    '->': (8, 9), '->>': (8, 9),
    '~': (10, 11),
    '||': (12, 13), '|': (12, 13),
    '&&': (14, 15), '&': (14, 15),
    '==': (18, 19), '!=': (18, 19), '<': (18, 19), '>': (18, 19), '<=': (18, 19), '>=': (18, 19),
    '+': (20, 21), '-': (20, 21),
    '*': (22, 23), '/': (22, 23),
    '|>': (24, 25),
    ':': (26, 27),
    '^': (31, 30),
    '$': (32, 33), '@': (32, 33),
    '::': (34, 35), ':::': (34, 35),
}

SPECIAL_POWER = (24, 25)
POSTFIX_POWER = 36

PREFIX_POWER = {'-': 28, '+': 28, '!': 16, '~': 11, '?': 3}

COMPARISONS = {'==', '!=', '<', '>', '<=', '>='}

ARG_VALUE_POWER = 6


class Parser:
    """Recursive descent over statements, Pratt parsing within expressions."""

    def __init__(self, source: str):
        self.source = source
        self.tokens = tokenize(source)
        self.i = 0
        self.brace_depth = 0
        self.stmt_start = 0
        self.last_end = 0

    # token stream

    def peek(self, offset: int = 0) -> Token:
        j = min(self.i + offset, len(self.tokens) - 1)
        return self.tokens[j]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        if tok.kind != TokenKind.EOF:
            self.i += 1
            self.last_end = tok.end
        return tok

    def skip_newlines(self):
        while self.peek().kind == TokenKind.NEWLINE:
            self.advance()

    def unexpected(self, tok: Token) -> RSyntaxError:
        lines = self.source.split('\n')
        line_text = lines[tok.line - 1] if 0 < tok.line <= len(lines) else ''
        if tok.kind == TokenKind.EOF:
            return IncompleteInput("unexpected end of input", tok.line, tok.col,
                                   snippet='', source_line='')
        snippet = self.source[self.stmt_start:tok.end].lstrip('\n')
        return RSyntaxError(f"unexpected {describe_token(tok)}", tok.line, tok.col,
                            snippet=snippet, source_line=line_text)

    def expect(self, lexeme: str) -> Token:
        tok = self.peek()
        if not tok.is_op(lexeme):
            raise self.unexpected(tok)
        return self.advance()

    # statements

    def parse_program(self) -> List[Any]:
        exprs = []
        while True:
            while self.peek().kind == TokenKind.NEWLINE or self.peek().is_op(';'):
                self.advance()
            tok = self.peek()
            if tok.kind == TokenKind.EOF:
                break
            self.stmt_start = tok.start
            exprs.append(self.parse_expr(0))
            end = self.peek()
            if not (end.kind in (TokenKind.NEWLINE, TokenKind.EOF) or end.is_op(';')):
                raise self.unexpected(end)
        return exprs

    # expressions

    def parse_expr(self, min_bp: int) -> Any:
        lhs = self.parse_prefix()
        chained_comparison = False
        while True:
            tok = self.peek()
            if tok.kind in (TokenKind.NEWLINE, TokenKind.EOF):
                break
            if tok.kind == TokenKind.PUNCT and tok.lexeme in ('(', '[', '[['):
                if POSTFIX_POWER < min_bp:
                    break
                lhs = self.parse_postfix(lhs)
                chained_comparison = False
                continue
            if tok.kind != TokenKind.OPERATOR:
                break
            op = tok.lexeme
            power = SPECIAL_POWER if op.startswith('%') else BINARY_POWER.get(op)
            if power is None:
                break
            lbp, rbp = power
            if lbp < min_bp:
                break
            if op in COMPARISONS and chained_comparison:
                raise self.unexpected(tok)
            self.advance()
            lhs = self.parse_infix(lhs, tok, rbp)
            chained_comparison = op in COMPARISONS
        return lhs

    def parse_infix(self, lhs: Any, tok: Token, rbp: int) -> Any:
        op = tok.lexeme
        pos = (tok.line, tok.col)
        if op in ('$', '@'):
            self.skip_newlines()
            rhs = self.parse_name_operand()
            return Call(Symbol(op), [Arg(None, lhs), Arg(None, rhs)], pos)
        if op in ('::', ':::'):
            rhs = self.parse_name_operand()
            return Call(Symbol(op), [Arg(None, lhs), Arg(None, rhs)], pos)
        self.skip_newlines()
        rhs = self.parse_expr(rbp)
        if op in ('->', '->>'):
            target = _assignment_target(rhs)
            return Call(Symbol('<-' if op == '->' else '<<-'), [Arg(None, target), Arg(None, lhs)], pos)
        if op in ('<-', '<<-', '='):
            lhs = _assignment_target(lhs)
        if op == '|>':
            return desugar_pipe(lhs, rhs, tok)
        return Call(Symbol(op), [Arg(None, lhs), Arg(None, rhs)], pos)

    def parse_name_operand(self) -> Any:
        tok = self.peek()
        if tok.kind in (TokenKind.SYMBOL, TokenKind.BACKTICK, TokenKind.STRING):
            self.advance()
            return Symbol(tok.value)
        if tok.is_op('('):
            return self.parse_prefix()
        raise self.unexpected(tok)

    def parse_postfix(self, lhs: Any) -> Any:
        tok = self.advance()
        pos = (tok.line, tok.col)
        if tok.lexeme == '(' and _is_string_constant(lhs):
            lhs = Symbol(lhs.data[0])
        if tok.lexeme == '(':
            args = self.parse_args(')', empty_is_missing=False)
            return Call(lhs, args, pos)
        close = ']' if tok.lexeme == '[' else ']]'
        args = self.parse_args(close, empty_is_missing=True)
        return Call(Symbol(tok.lexeme), [Arg(None, lhs)] + args, pos)

    def parse_args(self, close: str, empty_is_missing: bool) -> List[Arg]:
        args: List[Arg] = []
        if self.peek().is_op(close):
            self.advance()
            return [Arg(None, MISSING_ARG)] if empty_is_missing else []
        while True:
            args.append(self.parse_arg(close))
            tok = self.peek()
            if tok.is_op(','):
                self.advance()
                if self.peek().is_op(close):
                    args.append(Arg(None, MISSING_ARG))
                    self.advance()
                    return args
                continue
            if tok.is_op(close):
                self.advance()
                return args
            raise self.unexpected(tok)

    def parse_arg(self, close: str) -> Arg:
        tok = self.peek()
        if tok.is_op(',') or tok.is_op(close):
            return Arg(None, MISSING_ARG)
        nxt = self.peek(1)
        nameable = tok.kind in (TokenKind.SYMBOL, TokenKind.BACKTICK, TokenKind.STRING) or tok.is_keyword('NULL')
        if nameable and nxt.is_op('='):
            self.advance()
            self.advance()
            name = 'NULL' if tok.is_keyword('NULL') else tok.value
            after = self.peek()
            if after.is_op(',') or after.is_op(close):
                return Arg(name, MISSING_ARG)
            return Arg(name, self.parse_expr(ARG_VALUE_POWER))
        return Arg(None, self.parse_expr(ARG_VALUE_POWER))

    def parse_prefix(self) -> Any:
        tok = self.peek()
        kind = tok.kind
        if kind == TokenKind.NUMBER:
            self.advance()
            return mk_int([tok.value]) if isinstance(tok.value, int) else mk_double([tok.value])
        if kind == TokenKind.STRING:
            self.advance()
            return mk_str([tok.value])
        if kind in (TokenKind.SYMBOL, TokenKind.BACKTICK):
            self.advance()
            return Symbol(tok.value)
        if kind == TokenKind.KEYWORD:
            return self.parse_keyword(tok)
        if tok.is_op('('):
            self.advance()
            self.skip_newlines()
            inner = self.parse_expr(0)
            self.skip_newlines()
            self.expect(')')
            return Call(Symbol('('), [Arg(None, inner)], (tok.line, tok.col))
        if tok.is_op('{'):
            return self.parse_block()
        if kind == TokenKind.OPERATOR and tok.lexeme in PREFIX_POWER:
            self.advance()
            self.skip_newlines()
            operand = self.parse_expr(PREFIX_POWER[tok.lexeme])
            return Call(Symbol(tok.lexeme), [Arg(None, operand)], (tok.line, tok.col))
        raise self.unexpected(tok)

    def parse_block(self) -> Call:
        open_tok = self.advance()
        self.brace_depth += 1
        exprs = []
        saved_start = self.stmt_start
        while True:
            while self.peek().kind == TokenKind.NEWLINE or self.peek().is_op(';'):
                self.advance()
            if self.peek().is_op('}'):
                self.advance()
                break
            exprs.append(Arg(None, self.parse_expr(0)))
            end = self.peek()
            if end.is_op('}'):
                continue
            if not (end.kind == TokenKind.NEWLINE or end.is_op(';')):
                raise self.unexpected(end)
        self.brace_depth -= 1
        self.stmt_start = saved_start
        return Call(Symbol('{'), exprs, (open_tok.line, open_tok.col))

    def parse_body(self) -> Any:
        self.skip_newlines()
        return self.parse_expr(0)

    def parse_keyword(self, tok: Token) -> Any:
        word = tok.lexeme
        constant = _keyword_constant(word)
        if constant is not None:
            self.advance()
            return constant
        pos = (tok.line, tok.col)
        if word == 'function':
            return self.parse_function(tok)
        if word == 'if':
            self.advance()
            self.expect('(')
            cond = self.parse_expr(0)
            self.expect(')')
            then = self.parse_body()
            if self._else_follows():
                self.skip_newlines()
                self.advance()
                alt = self.parse_body()
                return Call(Symbol('if'), [Arg(None, cond), Arg(None, then), Arg(None, alt)], pos)
            return Call(Symbol('if'), [Arg(None, cond), Arg(None, then)], pos)
        if word == 'for':
            self.advance()
            self.expect('(')
            var_tok = self.peek()
            if var_tok.kind not in (TokenKind.SYMBOL, TokenKind.BACKTICK):
                raise self.unexpected(var_tok)
            self.advance()
            in_tok = self.peek()
            if not in_tok.is_keyword('in'):
                raise self.unexpected(in_tok)
            self.advance()
            seq = self.parse_expr(0)
            self.expect(')')
            body = self.parse_body()
            return Call(Symbol('for'), [Arg(None, Symbol(var_tok.value)), Arg(None, seq), Arg(None, body)], pos)
        if word == 'while':
            self.advance()
            self.expect('(')
            cond = self.parse_expr(0)
            self.expect(')')
            body = self.parse_body()
            return Call(Symbol('while'), [Arg(None, cond), Arg(None, body)], pos)
        if word == 'repeat':
            self.advance()
            body = self.parse_body()
            return Call(Symbol('repeat'), [Arg(None, body)], pos)
        if word in ('break', 'next'):
            self.advance()
            return Call(Symbol(word), [], pos)
        raise self.unexpected(tok)

    def _else_follows(self) -> bool:
        if self.peek().is_keyword('else'):
            return True
        if self.brace_depth == 0:
            return False
        j = 0
        while self.peek(j).kind == TokenKind.NEWLINE:
            j += 1
        return self.peek(j).is_keyword('else')

    def parse_function(self, tok: Token) -> Call:
        self.advance()
        self.expect('(')
        names: List[str] = []
        defaults: List[Any] = []
        if not self.peek().is_op(')'):
            while True:
                ptok = self.peek()
                if ptok.kind not in (TokenKind.SYMBOL, TokenKind.BACKTICK):
                    raise self.unexpected(ptok)
                self.advance()
                if ptok.value in names:
                    raise RSyntaxError(f"repeated formal argument '{ptok.value}' on line {ptok.line}",
                                       ptok.line, ptok.col)
                names.append(ptok.value)
                if self.peek().is_op('='):
                    self.advance()
                    defaults.append(self.parse_expr(ARG_VALUE_POWER))
                else:
                    defaults.append(MISSING_ARG)
                if self.peek().is_op(','):
                    self.advance()
                    continue
                break
        self.expect(')')
        body = self.parse_body()
        srcref = self.source[tok.start:self.last_end]
        formals = mk_list(defaults, names) if names else NULL
        return Call(Symbol('function'), [Arg(None, formals), Arg(None, body)],
                    (tok.line, tok.col), srcref=srcref)


def _keyword_constant(word: str) -> Optional[Any]:
    if word == 'TRUE':
        return mk_logical([True])
    if word == 'FALSE':
        return mk_logical([False])
    if word == 'NULL':
        return NULL
    if word == 'NA':
        return mk_logical([None])
    if word == 'NA_integer_':
        return mk_int([None])
    if word == 'NA_real_':
        return mk_double([None])
    if word == 'NA_character_':
        return mk_str([None])
    if word == 'Inf':
        return mk_double([math.inf])
    if word == 'NaN':
        return mk_double([math.nan])
    return None


def _is_string_constant(node: Any) -> bool:
    return getattr(node, 'rtype', None) == 'character' and node.length() == 1 and not node.na[0]


def _assignment_target(node: Any) -> Any:
    if _is_string_constant(node):
        return Symbol(node.data[0])
    return node


def desugar_pipe(lhs: Any, rhs: Any, tok: Optional[Token] = None) -> Call:
    """Rewrite ``lhs |> f(args)`` into ``f(lhs, args)``.

    A single ``_`` passed as a named argument receives ``lhs`` instead.
    """
    line, col = (tok.line, tok.col) if tok is not None else (0, 0)
    if not isinstance(rhs, Call) or (isinstance(rhs.fn, Symbol) and rhs.fn.name == 'function'):
        raise RSyntaxError("The pipe operator requires a function call as RHS", line, col)
    placeholder = Symbol('_')
    slots = [k for k, a in enumerate(rhs.args) if a.value is placeholder]
    if not slots:
        return Call(rhs.fn, [Arg(None, lhs)] + rhs.args, rhs.pos)
    if len(slots) > 1:
        raise RSyntaxError("pipe placeholder may only appear once", line, col)
    k = slots[0]
    if rhs.args[k].name is None:
        raise RSyntaxError("pipe placeholder can only be used as a named argument", line, col)
    args = list(rhs.args)
    args[k] = Arg(args[k].name, lhs)
    return Call(rhs.fn, args, rhs.pos)


def parse_program(source: str) -> List[Any]:
    """Parse ``source`` into its top-level expressions, in order."""
    exprs = Parser(source).parse_program()
    logger.debug("parsed %d top-level expressions", len(exprs))
    return exprs


def parse_one(source: str) -> Any:
    exprs = parse_program(source)
    return exprs[0] if exprs else NULL


def is_incomplete(source: str) -> bool:
    """True when ``source`` is a valid prefix that needs more input."""
    try:
        parse_program(source)
    except IncompleteInput:
        return True
    except RSyntaxError:
        return False
    return False


def statement_spans(source: str) -> List[Tuple[Any, str]]:
    """Top-level expressions paired with their source text."""
    parser = Parser(source)
    spans = []
    while True:
        while parser.peek().kind == TokenKind.NEWLINE or parser.peek().is_op(';'):
            parser.advance()
        tok = parser.peek()
        if tok.kind == TokenKind.EOF:
            break
        parser.stmt_start = tok.start
        expr = parser.parse_expr(0)
        end = parser.peek()
        if not (end.kind in (TokenKind.NEWLINE, TokenKind.EOF) or end.is_op(';')):
            raise parser.unexpected(end)
        spans.append((expr, source[tok.start:parser.last_end]))
    return spans
