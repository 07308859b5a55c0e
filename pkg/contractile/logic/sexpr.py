"""
S-expression syntax of terms, assertions and contracts

Terms
    42, -1, 0x58          integer literals
    true, false, unit     boolean and unit literals
    ?x                    logic variable
    Machine               any other bare symbol is an enum literal
    (op t ...)            application, e.g. (bvadd ?a 4) or (field:L ?cfg)

Assertions
    emp
    (star A ...)  (or A B ...)  (wand A B)
    (reg pc t)  (mem t t)  (pure t)  (pred NAME t ...)
    (exists ?x TYPE A)

Types are scalar or registered names (int, bool, bits32, Privilege, ...),
(tuple TYPE ...) or _ for an untyped binder.

Contracts
    (contract (vars (?x TYPE) ...) (pre A) (post A))

`;` starts a comment. Printing and parsing round-trip.
"""

# built-ins
import re

# internal packages
from .assertions import (EMP, Contract, Exists, Or, PointsToMem, PointsToReg, Pred, Pure, Star,
                         Wand, or_, star)
from .terms import App, Lit, Var
from ..core.types import TupleType, named_type
from ..errors import ParseError


_TOKEN = re.compile(r"\(|\)|[^\s()]+")
_SYMBOL = re.compile(r'^[A-Za-z_][\w:.#\-]*$')


class Symbol(str):

    """An atom remembering the line it was read from"""

    def __new__(cls, text, line=0):
        symbol = super().__new__(cls, text)
        symbol.line = line
        return symbol


def _tokens(text):
    for number, raw in enumerate(text.splitlines(), start=1):
        for token in _TOKEN.findall(raw.split(";", 1)[0]):
            yield number, token if token in "()" else Symbol(token, number)


def read(text):

    """
    Nested lists of Symbols, one per top-level expression

    Raises
    ------
    ParseError
        on unbalanced parentheses
    """

    stack = [[]]
    lines = [1]
    for line, token in _tokens(text):
        if token == '(':
            stack.append([])
            lines.append(line)
        elif token == ')':
            if len(stack) == 1:
                raise ParseError(line, "unexpected ')'")
            done = stack.pop()
            stack[-1].append(_Located(done, lines.pop()))
        else:
            stack[-1].append(token)
    if len(stack) > 1:
        raise ParseError(lines[-1], "unclosed '('")
    return stack[0]


class _Located(list):

    """A parenthesized list remembering the line that opens it"""

    def __init__(self, items, line):

        super().__init__(items)
        self.line = line


def _line(expr):
    return getattr(expr, 'line', 0)


def _head(expr):
    if not isinstance(expr, list) or not expr or not isinstance(expr[0], Symbol):
        raise ParseError(_line(expr), f"expected a form, got {show_expr(expr)}")
    return str(expr[0])


# terms

def parse_term(expr):
    if isinstance(expr, list):
        op = _head(expr)
        return App(op, tuple(parse_term(a) for a in expr[1:]))
    token = str(expr)
    if token.startswith('?'):
        if len(token) == 1:
            raise ParseError(_line(expr), "empty variable name")
        return Var(token[1:])
    if token == 'true':
        return Lit(True)
    if token == 'false':
        return Lit(False)
    if token == 'unit':
        return Lit(None)
    try:
        return Lit(int(token, 0))
    except ValueError:
        pass
    if not _SYMBOL.match(token):
        raise ParseError(_line(expr), f"not a term: {token!r}")
    return Lit(token)


def show_term(term):
    if isinstance(term, Var):
        return '?' + term.name
    if isinstance(term, Lit):
        value = term.value
        if value is True:
            return 'true'
        if value is False:
            return 'false'
        if value is None:
            return 'unit'
        if isinstance(value, int):
            return str(value)
        if isinstance(value, str) and _SYMBOL.match(value) and value not in ('true', 'false', 'unit'):
            return value
        raise TypeError(f"no s-expression for literal {value!r}")
    return '(' + ' '.join([term.op] + [show_term(a) for a in term.args]) + ')'


# types

def parse_type(expr):
    if isinstance(expr, list):
        if _head(expr) != 'tuple':
            raise ParseError(_line(expr), f"unknown type form {show_expr(expr)}")
        return TupleType(tuple(parse_type(e) for e in expr[1:]))
    if expr == '_':
        return None
    try:
        return named_type(str(expr))
    except KeyError as e:
        raise ParseError(_line(expr), str(e.args[0])) from None


def show_type(ty):
    if ty is None:
        return '_'
    if isinstance(ty, TupleType):
        return '(tuple ' + ' '.join(show_type(t) for t in ty.items) + ')'
    return ty.name


def _binder(expr):
    name = str(expr)
    if isinstance(expr, list) or not name:
        raise ParseError(_line(expr), f"expected a variable, got {show_expr(expr)}")
    return name[1:] if name.startswith('?') else name


# assertions

def _arity(expr, n):
    if len(expr) - 1 != n:
        raise ParseError(_line(expr), f"'{expr[0]}' takes {n} arguments, got {len(expr) - 1}")


def parse_assertion(expr):

    """
    Raises
    ------
    ParseError
        on unknown forms or wrong arities
    """

    if expr == 'emp':
        return EMP
    head = _head(expr)
    args = expr[1:]
    if head == 'star':
        return star(*(parse_assertion(a) for a in args))
    if head == 'or':
        if not args:
            raise ParseError(_line(expr), "'or' needs at least one alternative")
        return or_(*(parse_assertion(a) for a in args))
    if head == 'wand':
        _arity(expr, 2)
        return Wand(parse_assertion(args[0]), parse_assertion(args[1]))
    if head == 'reg':
        _arity(expr, 2)
        return PointsToReg(str(args[0]), parse_term(args[1]))
    if head == 'mem':
        _arity(expr, 2)
        return PointsToMem(parse_term(args[0]), parse_term(args[1]))
    if head == 'pure':
        _arity(expr, 1)
        return Pure(parse_term(args[0]))
    if head == 'pred':
        if not args:
            raise ParseError(_line(expr), "'pred' needs a name")
        return Pred(str(args[0]), tuple(parse_term(a) for a in args[1:]))
    if head == 'exists':
        _arity(expr, 3)
        return Exists(_binder(args[0]), parse_type(args[1]), parse_assertion(args[2]))
    raise ParseError(_line(expr), f"unknown assertion form '{head}'")


def show_assertion(a):
    if a == EMP:
        return 'emp'
    if isinstance(a, Star):
        parts = []
        while isinstance(a, Star):
            parts.append(a.left)
            a = a.right
        parts.append(a)
        return '(star ' + ' '.join(show_assertion(p) for p in parts) + ')'
    if isinstance(a, Or):
        return f"(or {show_assertion(a.left)} {show_assertion(a.right)})"
    if isinstance(a, Wand):
        return f"(wand {show_assertion(a.lhs)} {show_assertion(a.rhs)})"
    if isinstance(a, PointsToReg):
        return f"(reg {a.reg} {show_term(a.value)})"
    if isinstance(a, PointsToMem):
        return f"(mem {show_term(a.addr)} {show_term(a.value)})"
    if isinstance(a, Pure):
        return f"(pure {show_term(a.term)})"
    if isinstance(a, Pred):
        return '(pred ' + ' '.join([a.name] + [show_term(t) for t in a.args]) + ')'
    if isinstance(a, Exists):
        return f"(exists ?{a.name} {show_type(a.ty)} {show_assertion(a.body)})"
    raise TypeError(f"not an assertion: {a!r}")


# contracts

def parse_contract(expr):
    if _head(expr) != 'contract':
        raise ParseError(_line(expr), f"expected (contract ...), got '{expr[0]}'")
    sections = {}
    for section in expr[1:]:
        key = _head(section)
        if key in sections:
            raise ParseError(_line(section), f"duplicate section '{key}'")
        sections[key] = section
    for key in ('pre', 'post'):
        if key not in sections:
            raise ParseError(_line(expr), f"contract without '{key}'")
        _arity(sections[key], 1)
    logic_vars = []
    for binding in sections.get('vars', [None])[1:]:
        if not isinstance(binding, list) or len(binding) != 2:
            raise ParseError(_line(expr), f"expected (?x TYPE), got {show_expr(binding)}")
        logic_vars.append((_binder(binding[0]), parse_type(binding[1])))
    return Contract(tuple(logic_vars), parse_assertion(sections['pre'][1]),
                    parse_assertion(sections['post'][1]))


def show_contract(contract):
    binders = ' '.join(f"(?{n} {show_type(t)})" for n, t in contract.logic_vars)
    return (f"(contract\n  (vars {binders})\n  (pre {show_assertion(contract.pre)})\n"
            f"  (post {show_assertion(contract.post)}))\n")


def _single(text):
    exprs = read(text)
    if len(exprs) != 1:
        raise ParseError(1, f"expected one expression, got {len(exprs)}")
    return exprs[0]


def loads_term(text):
    return parse_term(_single(text))


def loads_assertion(text):
    return parse_assertion(_single(text))


def loads_contract(text):
    return parse_contract(_single(text))


def show_expr(expr):
    if isinstance(expr, list):
        return '(' + ' '.join(show_expr(e) for e in expr) + ')'
    return str(expr)
