# built-ins
from dataclasses import dataclass
from types import MappingProxyType

# internal packages
from . import syntax as s
from .prims import is_primitive
from .types import (BitsType, BoolType, EnumType, IntType, UnitType,
                    check_value, ctor_info, record_type)
from ..errors import NotFound, WellformednessError


FOREIGN = 'foreign'
ENTRY_POINTS = ('fdeStep', 'fdeCycle')


@dataclass(frozen=True)
class FunctionDecl:

    """
    Declaration of a core-language function

    Attributes
    ----------
    params : tuple
        (name, Type) pairs
    body : Stm or str
        The statement body, or FOREIGN for functions implemented by the runtime
    """

    name: str
    params: tuple
    ret: object
    body: object

    @property
    def foreign(self):
        return self.body == FOREIGN

    @property
    def param_names(self):
        return tuple(n for n, _ in self.params)


class Program:

    """
    Registry of functions and lemmas of one ISA

    The registry is read-only once built; `replace` returns a modified copy,
    which is how mutants are derived from a bundled program.
    """

    def __init__(self, name, functions, lemmas=None, registers=None):

        """
        Parameters
        ----------
        name : str
        functions : iterable of FunctionDecl
        lemmas : dict, optional
            Lemma name to LemmaDecl
        registers : dict, optional
            Register name to Type
        """

        table = {}
        for decl in functions:
            if decl.name in table:
                raise ValueError(f"duplicate function '{decl.name}'")
            table[decl.name] = decl

        self.name = name
        self.__functions = MappingProxyType(table)
        self.__lemmas = MappingProxyType(dict(lemmas or {}))
        self.__registers = MappingProxyType(dict(registers or {}))

    @property
    def functions(self):
        return self.__functions

    @property
    def lemmas(self):
        return self.__lemmas

    @property
    def registers(self):
        return self.__registers

    def function(self, name):
        return lookup_function(self, name)

    def replace(self, *decls, name=None):
        table = dict(self.__functions)
        for decl in decls:
            table[decl.name] = decl
        return Program(name or self.name, table.values(), self.__lemmas, self.__registers)

    def __repr__(self):
        return f"Program({self.name!r}, {len(self.__functions)} functions)"


def lookup_function(p, name):
    try:
        return p.functions[name]
    except KeyError:
        raise NotFound(name) from None


def fresh_name(used, prefix='v'):

    """First name of the form `<prefix><n>` (n = 0, 1, ...) not in `used`"""

    n = 0
    while f"{prefix}{n}" in used:
        n += 1
    return f"{prefix}{n}"


def _compatible(expected, stm, scope):

    """False only when the argument's type is known and clashes with `expected`"""

    if isinstance(stm, s.Literal):
        value = stm.value
        if isinstance(expected, (IntType, BitsType)):
            return isinstance(value, int) and not isinstance(value, bool)
        if isinstance(expected, (BoolType, UnitType, EnumType)):
            return check_value(expected, value)
        return True
    if isinstance(stm, s.Var) and scope.get(stm.name) is not None:
        actual = scope[stm.name]
        numeric = (IntType, BitsType)
        scalar = numeric + (BoolType, EnumType)
        if not (isinstance(expected, scalar) and isinstance(actual, scalar)):
            return True
        if isinstance(expected, numeric) and isinstance(actual, numeric):
            return True
        return actual == expected
    return True


class _Checker:

    def __init__(self, program):

        self.program = program
        self.diagnostics = []

    def report(self, where, node, message):
        self.diagnostics.append((f"{where}:{node.nid}", message))

    def check_call(self, where, node, scope, want_foreign):
        decl = self.program.functions.get(node.fn)
        if decl is None:
            self.report(where, node, f"unknown function '{node.fn}'")
            return
        if decl.foreign != want_foreign:
            kind = 'foreign' if decl.foreign else 'internal'
            self.report(where, node, f"'{node.fn}' is {kind}")
        if len(decl.params) != len(node.args):
            self.report(where, node, f"'{node.fn}' expects {len(decl.params)} arguments, got {len(node.args)}")
            return
        for (pname, pty), arg in zip(decl.params, node.args):
            if not _compatible(pty, arg, scope):
                self.report(where, node, f"argument '{pname}' of '{node.fn}' should be {pty}")

    def check_pattern(self, where, node, pattern):
        if isinstance(pattern, s.PCtor):
            try:
                _, args = ctor_info(pattern.tag)
            except KeyError:
                self.report(where, node, f"unknown constructor '{pattern.tag}'")
                return
            if len(args) != len(pattern.names):
                self.report(where, node, f"constructor '{pattern.tag}' takes {len(args)} binders")
        elif isinstance(pattern, s.PRecord):
            try:
                rt = record_type(pattern.rtype)
            except KeyError:
                self.report(where, node, f"unknown record type '{pattern.rtype}'")
                return
            if len(rt.fields) != len(pattern.names):
                self.report(where, node, f"record '{pattern.rtype}' has {len(rt.fields)} fields")

    def pattern_scope(self, pattern, scope):
        inner = dict(scope)
        if isinstance(pattern, s.PBind):
            inner[pattern.name] = None
        elif isinstance(pattern, s.PCtor):
            try:
                _, args = ctor_info(pattern.tag)
            except KeyError:
                args = (None,) * len(pattern.names)
            for n, ty in zip(pattern.names, args):
                if n is not None:
                    inner[n] = ty
        elif isinstance(pattern, s.PRecord):
            try:
                types = [t for _, t in record_type(pattern.rtype).fields]
            except KeyError:
                types = [None] * len(pattern.names)
            for n, ty in zip(pattern.names, types):
                if n is not None:
                    inner[n] = ty
        else:
            for n in pattern.binders():
                inner[n] = None
        return inner

    def visit(self, where, node, scope):
        if isinstance(node, s.Var):
            if node.name not in scope:
                self.report(where, node, f"unbound variable '{node.name}'")
            return
        if isinstance(node, s.Let):
            self.visit(where, node.bound, scope)
            self.visit(where, node.body, {**scope, node.name: None})
            return
        if isinstance(node, s.Match):
            self.visit(where, node.scrutinee, scope)
            for case in node.cases:
                self.check_pattern(where, node, case.pattern)
                self.visit(where, case.body, self.pattern_scope(case.pattern, scope))
            return
        if isinstance(node, s.CallInternal):
            self.check_call(where, node, scope, want_foreign=False)
        elif isinstance(node, s.CallForeign):
            self.check_call(where, node, scope, want_foreign=True)
        elif isinstance(node, s.LemmaInvoke):
            decl = self.program.lemmas.get(node.lemma)
            if decl is None:
                self.report(where, node, f"unknown lemma '{node.lemma}'")
            elif len(decl.params) != len(node.args):
                self.report(where, node, f"lemma '{node.lemma}' expects {len(decl.params)} arguments")
        elif isinstance(node, (s.ReadReg, s.WriteReg)):
            if node.reg not in self.program.registers:
                self.report(where, node, f"unknown register '{node.reg}'")
        elif isinstance(node, s.Prim):
            if not is_primitive(node.op):
                self.report(where, node, f"unknown primitive '{node.op}'")
        elif isinstance(node, s.Construct):
            try:
                _, args = ctor_info(node.tag)
            except KeyError:
                self.report(where, node, f"unknown constructor '{node.tag}'")
            else:
                if len(args) != len(node.args):
                    self.report(where, node, f"constructor '{node.tag}' takes {len(args)} arguments")
        elif isinstance(node, s.RecordNew):
            try:
                rt = record_type(node.rtype)
            except KeyError:
                self.report(where, node, f"unknown record type '{node.rtype}'")
            else:
                if len(rt.fields) != len(node.args):
                    self.report(where, node, f"record '{node.rtype}' has {len(rt.fields)} fields")
        for child in node.children():
            self.visit(where, child, scope)

    def run(self):
        functions = self.program.functions
        for entry in ENTRY_POINTS:
            if entry not in functions:
                self.diagnostics.append((self.program.name, f"missing entry point '{entry}'"))

        cycle = functions.get('fdeCycle')
        if cycle is not None:
            expected = s.Seq(s.CallInternal('fdeStep', ()), s.CallInternal('fdeCycle', ()))
            if cycle.foreign or cycle.body != expected:
                where = cycle.body.nid if isinstance(cycle.body, s.Stm) else 0
                self.diagnostics.append((f"fdeCycle:{where}", "fdeCycle shape: body must be fdeStep(); fdeCycle()"))

        for name in sorted(functions):
            decl = functions[name]
            if decl.foreign:
                continue
            scope = {n: ty for n, ty in decl.params}
            self.visit(name, decl.body, scope)
        return self.diagnostics


def check_wellformed(p):

    """
    Checks scoping, call targets, arities and call-site types of every function

    Returns
    -------
    list
        (location, message) pairs; locations read '<function>:<node id>'
    """

    return _Checker(p).run()


def require_wellformed(p):

    """
    Raises
    ------
    WellformednessError
        listing every diagnostic of check_wellformed
    """

    diagnostics = check_wellformed(p)
    if diagnostics:
        raise WellformednessError(diagnostics)
    return p
