
# internal packages
from contractile.core.types import BITS32, BOOL, INT, TupleType
from contractile.errors import ParseError
from contractile.isa.riscv.types import PRIVILEGE
from contractile.logic.assertions import (EMP, Exists, Or, PointsToMem, PointsToReg, Pred, Pure,
                                          Star, Wand)
from contractile.logic.sexpr import (loads_assertion, loads_contract, loads_term, parse_type,
                                     read, show_assertion, show_contract, show_term, show_type)
from contractile.logic.terms import App, Lit, Var

# external packages
import pytest
from hypothesis import given, strategies as st


class TestTerms:

    def test_atoms(self):
        assert loads_term('?a') == Var('a')
        assert loads_term('0x58') == Lit(88)
        assert loads_term('-3') == Lit(-3)
        assert loads_term('true') == Lit(True)
        assert loads_term('unit') == Lit(None)
        assert loads_term('Machine') == Lit('Machine')

    def test_application(self):
        assert loads_term('(bvadd ?a 4)') == App('bvadd', (Var('a'), Lit(4)))

    def test_comments_are_ignored(self):
        assert loads_term('; a comment\n(add ?x 1) ; trailing') == App('add', (Var('x'), Lit(1)))

    @pytest.mark.parametrize('text', ['?', '(', ')', '?a ?b', '()', '"quoted"'])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            loads_term(text)


class TestAssertions:

    def test_forms(self):
        text = "(star (reg pc 0) (mem 84 ?s) (pred V ?w) (pure (le ?s 9)) emp)"
        assert loads_assertion(text) == Star(
            PointsToReg('pc', Lit(0)),
            Star(PointsToMem(Lit(84), Var('s')),
                 Star(Pred('V', (Var('w'),)), Pure(App('le', (Var('s'), Lit(9)))))))

    def test_exists_and_or(self):
        parsed = loads_assertion("(exists ?w bits32 (or (reg x1 ?w) (wand (pred IH) emp)))")
        assert parsed == Exists('w', BITS32, Or(PointsToReg('x1', Var('w')), Wand(Pred('IH'), EMP)))

    @pytest.mark.parametrize('text', [
        "(reg pc)",
        "(frob 1)",
        "(exists ?w nosuchtype emp)",
        "(or)",
        "(pred)",
    ])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            loads_assertion(text)

    def test_unbalanced_reports_line(self):
        with pytest.raises(ParseError) as info:
            read("(star\n  (reg pc 0)\n")
        assert info.value.line == 1

    @pytest.mark.parametrize('text', [
        "(star\n  (reg pc 0)\n  (reg x1 1x))",
        "(star\n  (reg pc 0)\n  (reg x1 ?))",
        "(star\n  emp\n  (exists ?w nosuchtype emp))",
    ])
    def test_bad_atom_reports_line(self, text):
        with pytest.raises(ParseError) as info:
            loads_assertion(text)
        assert info.value.line == 3


class TestContracts:

    def test_missing_post(self):
        with pytest.raises(ParseError):
            loads_contract("(contract (vars) (pre emp))")

    def test_duplicate_section(self):
        with pytest.raises(ParseError):
            loads_contract("(contract (pre emp) (pre emp) (post emp))")

    def test_femtokernel_contracts_round_trip(self, femto):
        for contract in femto.contracts.values():
            assert loads_contract(show_contract(contract)) == contract

    def test_fixture_files_match_generated_contracts(self, femto, fixtures_dir):
        for name in ('init', 'handler'):
            text = (fixtures_dir / f'femto_{name}.contract').read_text(encoding='utf-8')
            assert loads_contract(text) == femto.contracts[name]


@pytest.mark.parametrize('ty', [INT, BOOL, BITS32, PRIVILEGE, TupleType((INT, BITS32))])
def test_types_round_trip(ty):
    assert parse_type(read(show_type(ty))[0]) == ty


variables = st.sampled_from('abcxyz').map(Var)
literals = st.one_of(st.integers(-1000, 1000).map(Lit), st.booleans().map(Lit),
                     st.sampled_from(['Machine', 'User', 'R', 'RW']).map(Lit))
terms = st.recursive(
    st.one_of(variables, literals),
    lambda children: st.tuples(st.sampled_from(['add', 'bvadd', 'eq', 'le']),
                               st.lists(children, min_size=1, max_size=3)).map(
        lambda p: App(p[0], tuple(p[1]))),
    max_leaves=8)

atoms = st.one_of(
    st.tuples(st.sampled_from(['pc', 'x1', 'R0']), terms).map(lambda p: PointsToReg(*p)),
    st.tuples(terms, terms).map(lambda p: PointsToMem(*p)),
    st.tuples(st.sampled_from(['V', 'IH']), st.lists(terms, max_size=2)).map(
        lambda p: Pred(p[0], tuple(p[1]))),
    terms.filter(lambda t: isinstance(t, App)).map(Pure),
)

assertions = st.recursive(
    atoms,
    lambda children: st.one_of(
        st.tuples(children, children).map(lambda p: Star(*p)),
        st.tuples(children, children).map(lambda p: Or(*p)),
        st.tuples(children, children).map(lambda p: Wand(*p)),
        st.tuples(st.sampled_from('uvw'), st.sampled_from([INT, BITS32, PRIVILEGE]), children).map(
            lambda p: Exists(*p)),
    ),
    max_leaves=6)


@given(terms)
def test_terms_round_trip(term):
    assert loads_term(show_term(term)) == term


@given(assertions)
def test_assertions_round_trip(assertion):
    assert loads_assertion(show_assertion(assertion)) == assertion
