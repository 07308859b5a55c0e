"""
Symbolic terms

Three node kinds: `Lit` holds an atomic value (int, bool, enum name, unit),
`Var` a symbolic value and `App` an operator application. Compound values are
applications of the structural operators `tuple`, `ctor:<Tag>` and
`record:<Name>`; `field:<f>`, `proj:<i>` and `if` destructure them. Every
other operator is a primitive from `core.prims` and folds when its arguments
are ground.
"""

# built-ins
import functools

# internal packages
from ..core.prims import MASK32, PRIMS, evaluate_prim
from ..core.types import Ctor, RecordType, TupleType, ctor_info, record_type, record_type_of


class Term:

    __slots__ = ()


class Lit(Term):

    __slots__ = ('value',)

    def __init__(self, value):
        self.value = value

    def __eq__(self, other):
        return (isinstance(other, Lit) and type(self.value) is type(other.value)
                and self.value == other.value)

    def __hash__(self):
        return hash((type(self.value).__name__, self.value))

    def __repr__(self):
        return f"Lit({self.value!r})"

    def __str__(self):
        if self.value is True:
            return 'true'
        if self.value is False:
            return 'false'
        if self.value is None:
            return 'unit'
        return str(self.value)


class Var(Term):

    __slots__ = ('name', 'ty')

    def __init__(self, name, ty=None):
        self.name = name
        self.ty = ty

    def __eq__(self, other):
        return isinstance(other, Var) and self.name == other.name

    def __hash__(self):
        return hash(('var', self.name))

    def __repr__(self):
        return f"Var({self.name!r})"

    def __str__(self):
        return self.name


class App(Term):

    __slots__ = ('op', 'args', '_hash', '_fv')

    def __init__(self, op, args=()):
        self.op = op
        self.args = tuple(args)
        self._hash = None
        self._fv = None

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, App) and self.op == other.op and self.args == other.args

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.op, self.args))
        return self._hash

    def __repr__(self):
        return f"App({self.op!r}, {self.args!r})"

    def __str__(self):
        if not self.args:
            return f"({self.op})"
        return f"({self.op} {' '.join(str(a) for a in self.args)})"


TRUE = Lit(True)
FALSE = Lit(False)
UNIT_LIT = Lit(None)

_STRUCTURAL_PREFIXES = ('ctor:', 'record:')


def is_structural(term):

    """True for applications that build compound values"""

    return isinstance(term, App) and (term.op == 'tuple' or term.op.startswith(_STRUCTURAL_PREFIXES))


def app(op, *args):
    return App(op, args)


def lift(value):

    """Turns a concrete value into a ground term"""

    if value is None or isinstance(value, (bool, int, str)):
        return Lit(value)
    if isinstance(value, tuple):
        return App('tuple', tuple(lift(v) for v in value))
    if isinstance(value, Ctor):
        return App('ctor:' + value.tag, tuple(lift(v) for v in value.args))
    rt = record_type_of(value)
    if rt is not None:
        return App('record:' + rt.name, tuple(lift(getattr(value, f)) for f in rt.field_names))
    raise TypeError(f"cannot lift {value!r} into a term")


def apply_op(op, values):

    """Concrete meaning of any operator, structural or primitive"""

    if op == 'tuple':
        return tuple(values)
    if op.startswith('ctor:'):
        return Ctor(op[5:], tuple(values))
    if op.startswith('record:'):
        return record_type(op[7:]).cls(*values)
    if op.startswith('field:'):
        return getattr(values[0], op[6:])
    if op.startswith('proj:'):
        return values[0][int(op[5:])]
    if op == 'if':
        return values[1] if values[0] else values[2]
    return evaluate_prim(op, values)


def evaluate(term, assignment=None):

    """
    Evaluates a term to a concrete value

    Parameters
    ----------
    term : Term
    assignment : dict, optional
        Variable name to concrete value

    Raises
    ------
    KeyError
        when a variable has no value in `assignment`
    """

    if isinstance(term, Lit):
        return term.value
    if isinstance(term, Var):
        if assignment is None or term.name not in assignment:
            raise KeyError(f"no value for '{term.name}'")
        return assignment[term.name]
    if term.op == 'if':
        cond = evaluate(term.args[0], assignment)
        return evaluate(term.args[1] if cond else term.args[2], assignment)
    return apply_op(term.op, [evaluate(a, assignment) for a in term.args])


def lower(term):
    return evaluate(term, None)


def free_vars(term):
    if isinstance(term, Var):
        return frozenset((term.name,))
    if isinstance(term, Lit):
        return frozenset()
    if term._fv is None:
        names = frozenset()
        for a in term.args:
            names = names | free_vars(a)
        term._fv = names
    return term._fv


def is_ground(term):
    return not free_vars(term)


def subst(term, mapping):

    """Replaces variables named in `mapping` (name to Term); does not simplify"""

    if not mapping or isinstance(term, Lit):
        return term
    if isinstance(term, Var):
        return mapping.get(term.name, term)
    if not (free_vars(term) & mapping.keys()):
        return term
    return App(term.op, tuple(subst(a, mapping) for a in term.args))


def replace(term, table):

    """Replaces whole subterms found as keys of `table`"""

    if term in table:
        return table[term]
    if isinstance(term, App):
        args = tuple(replace(a, table) for a in term.args)
        if args != term.args:
            return App(term.op, args)
    return term


def subterms(term):
    yield term
    if isinstance(term, App):
        for a in term.args:
            yield from subterms(a)


def conjuncts(term):
    if isinstance(term, App) and term.op == 'and':
        for a in term.args:
            yield from conjuncts(a)
    elif term != TRUE:
        yield term


def negate(term):
    return simplify(App('not', (term,)))


def _order_key(term):
    return (type(term).__name__, str(term))


def _evaluable(op):
    return op in PRIMS or op.startswith(('field:', 'proj:')) or op == 'if'


@functools.lru_cache(maxsize=1 << 16)
def simplify(term):

    """Bottom-up rewriting to a canonical form; ground applications are folded"""

    if not isinstance(term, App):
        return term
    return _rewrite(term.op, tuple(simplify(a) for a in term.args))


def _rewrite(op, args):
    if op == 'tuple' or op.startswith(_STRUCTURAL_PREFIXES):
        return App(op, args)

    if _evaluable(op) and all(is_ground(a) for a in args):
        # an ill-typed ground application stays symbolic
        try:
            return lift(apply_op(op, [lower(a) for a in args]))
        except (ArithmeticError, AttributeError, IndexError, KeyError, TypeError, ValueError):
            pass

    rule = _RULES.get(op)
    if rule is None:
        if op.startswith('field:'):
            rule = _field
        elif op.startswith('proj:'):
            rule = _proj
    if rule is not None:
        return rule(op, args)
    return App(op, args)


def _field(op, args):
    (x,) = args
    if isinstance(x, App) and x.op.startswith('record:'):
        names = record_type(x.op[7:]).field_names
        return x.args[names.index(op[6:])]
    if isinstance(x, App) and x.op == 'if':
        return _rewrite('if', (x.args[0], _rewrite(op, (x.args[1],)), _rewrite(op, (x.args[2],))))
    return App(op, args)


def _proj(op, args):
    (x,) = args
    if isinstance(x, App) and x.op == 'tuple':
        return x.args[int(op[5:])]
    if isinstance(x, App) and x.op == 'if':
        return _rewrite('if', (x.args[0], _rewrite(op, (x.args[1],)), _rewrite(op, (x.args[2],))))
    return App(op, args)


def _if(op, args):
    c, a, b = args
    if isinstance(c, Lit):
        return a if c.value else b
    if a == b:
        return a
    if a == TRUE and b == FALSE:
        return c
    if a == FALSE and b == TRUE:
        return _rewrite('not', (c,))
    return App(op, args)


def _not(op, args):
    (a,) = args
    if isinstance(a, Lit):
        return Lit(not a.value)
    if isinstance(a, App) and a.op == 'not':
        return a.args[0]
    return App(op, args)


def _complement(term):
    if isinstance(term, App) and term.op == 'not':
        return term.args[0]
    return App('not', (term,))


def _junction(op, args):
    unit, zero = (TRUE, FALSE) if op == 'and' else (FALSE, TRUE)
    items = []
    for a in args:
        if a == unit:
            continue
        if a == zero:
            return zero
        if isinstance(a, App) and a.op == op:
            items.extend(a.args)
        else:
            items.append(a)
    seen = set()
    unique = []
    for item in items:
        if item not in seen:
            seen.add(item)
            unique.append(item)
    if any(_complement(item) in seen for item in unique):
        return zero
    if not unique:
        return unit
    if len(unique) == 1:
        return unique[0]
    return App(op, tuple(unique))


def _implies(op, args):
    a, b = args
    return _rewrite('or', (_rewrite('not', (a,)), b))


def _ne(op, args):
    return _rewrite('not', (_rewrite('eq', args),))


def _lt(op, args):
    a, b = args
    return _rewrite('not', (_rewrite('le', (b, a)),))


def _gt(op, args):
    a, b = args
    return _rewrite('not', (_rewrite('le', (a, b)),))


def _ge(op, args):
    a, b = args
    return _rewrite('le', (b, a))


def _le(op, args):
    a, b = args
    if a == b:
        return TRUE
    return App(op, args)


def _structure_kind(term):
    if is_structural(term):
        return term.op
    return None


def _eq(op, args):
    a, b = args
    if a == b:
        return TRUE
    if isinstance(a, Lit) and isinstance(b, Lit):
        return FALSE
    ka, kb = _structure_kind(a), _structure_kind(b)
    if ka and kb:
        if ka != kb or len(a.args) != len(b.args):
            return FALSE
        return _rewrite('and', tuple(_rewrite('eq', (x, y)) for x, y in zip(a.args, b.args)))
    if (ka and isinstance(b, Lit)) or (kb and isinstance(a, Lit)):
        return FALSE
    for x, y in ((a, b), (b, a)):
        if y == TRUE:
            return x
        if y == FALSE:
            return _rewrite('not', (x,))
    if isinstance(a, Lit) or (not isinstance(b, Lit) and _order_key(a) > _order_key(b)):
        a, b = b, a
    return App(op, (a, b))


def _add(op, args):
    a, b = args
    if isinstance(a, Lit) and not isinstance(b, Lit):
        a, b = b, a
    if b == Lit(0):
        return a
    if isinstance(b, Lit) and isinstance(a, App) and a.op == 'add' and isinstance(a.args[1], Lit):
        return _rewrite('add', (a.args[0], Lit(a.args[1].value + b.value)))
    return App(op, (a, b))


def _sub(op, args):
    a, b = args
    if a == b:
        return Lit(0)
    if isinstance(b, Lit) and isinstance(b.value, int):
        return _rewrite('add', (a, Lit(-b.value)))
    return App(op, args)


def _bvadd(op, args):
    a, b = args
    if isinstance(a, Lit) and not isinstance(b, Lit):
        a, b = b, a
    if isinstance(b, Lit):
        b = Lit(b.value & MASK32)
        if b.value == 0:
            return a
        if isinstance(a, App) and a.op == 'bvadd' and isinstance(a.args[1], Lit):
            return _rewrite('bvadd', (a.args[0], Lit((a.args[1].value + b.value) & MASK32)))
    return App(op, (a, b))


_RULES = {
    'if': _if,
    'not': _not,
    'and': _junction,
    'or': _junction,
    'implies': _implies,
    'ne': _ne,
    'lt': _lt,
    'gt': _gt,
    'ge': _ge,
    'le': _le,
    'eq': _eq,
    'add': _add,
    'sub': _sub,
    'bvadd': _bvadd,
}


def fresh_vars(name, ty, make_name):

    """
    Builds the symbolic value of a fresh variable of type `ty`

    Records and tuples are expanded into structures of fresh atomic variables
    so that field access always simplifies.

    Parameters
    ----------
    make_name : function
        Called with a name hint, returns an unused variable name

    Returns
    -------
    (Term, list of Var)
    """

    created = []

    def build(hint, t):
        if isinstance(t, RecordType):
            return App('record:' + t.name, tuple(build(f"{hint}.{f}", ft) for f, ft in t.fields))
        if isinstance(t, TupleType):
            return App('tuple', tuple(build(f"{hint}.{i}", it) for i, it in enumerate(t.items)))
        v = Var(make_name(hint), t)
        created.append(v)
        return v

    return build(name, ty), created


def ctor_term(tag, args):
    ctor_info(tag)
    return App('ctor:' + tag, tuple(args))
