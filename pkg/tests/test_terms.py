
# internal packages
from contractile.core.prims import PRIMS, PrimOp
from contractile.core.types import Ctor
from contractile.isa.minimalcaps import Capability
from contractile.logic.terms import (FALSE, TRUE, App, Lit, Var, evaluate, free_vars, lift,
                                     simplify, subst)

# external packages
import pytest
from hypothesis import given, strategies as st


X, Y, Z = Var('x'), Var('y'), Var('z')


def app(op, *args):
    return App(op, args)


class TestLiterals:

    def test_equality_is_type_exact(self):
        """True and 1 are different literals"""
        assert Lit(True) != Lit(1)
        assert Lit(0) != Lit(False)
        assert Lit(5) == Lit(5)

    def test_variables_compare_by_name(self):
        assert Var('x') == Var('x', ty=None)
        assert Var('x') != Var('y')


class TestSimplify:

    def test_ground_primitives_fold(self):
        assert simplify(app('add', Lit(2), Lit(3))) == Lit(5)
        assert simplify(app('le', Lit(2), Lit(3))) == TRUE

    def test_double_negation(self):
        assert simplify(app('not', app('not', app('le', X, Y)))) == app('le', X, Y)

    def test_junction_complements(self):
        a = app('le', X, Y)
        assert simplify(app('and', a, app('not', a))) == FALSE
        assert simplify(app('or', a, app('not', a))) == TRUE

    def test_junction_dedupes_and_drops_units(self):
        a = app('le', X, Y)
        assert simplify(app('and', a, TRUE, a)) == a
        assert simplify(app('or', FALSE, a)) == a

    def test_equality(self):
        assert simplify(app('eq', X, X)) == TRUE
        assert simplify(app('eq', Lit(1), Lit(2))) == FALSE
        assert simplify(app('eq', Lit('E'), X)) == app('eq', X, Lit('E'))

    def test_structural_equality_splits(self):
        left = app('tuple', X, Lit(1))
        right = app('tuple', Y, Lit(1))
        assert simplify(app('eq', left, right)) == app('eq', X, Y)

    def test_addition_collects_constants(self):
        assert simplify(app('add', app('add', X, Lit(2)), Lit(3))) == app('add', X, Lit(5))
        assert simplify(app('add', Lit(0), X)) == X
        assert simplify(app('sub', X, X)) == Lit(0)
        assert simplify(app('sub', X, Lit(4))) == app('add', X, Lit(-4))

    def test_bvadd_wraps(self):
        assert simplify(app('bvadd', Lit(0xFFFFFFFF), Lit(1))) == Lit(0)

    def test_if_with_literal_condition(self):
        assert simplify(app('if', TRUE, X, Y)) == X
        assert simplify(app('if', app('le', X, Y), Z, Z)) == Z

    def test_field_of_record(self):
        record = lift(Capability('RW', 0, 9, 3))
        begin = app('field:begin', app('record:Capability', Lit('RW'), X, Lit(9), Lit(3)))
        assert simplify(begin) == X
        assert simplify(app('field:cursor', record)) == Lit(3)

    def test_projection_of_tuple(self):
        assert simplify(app('proj:1', app('tuple', X, Y))) == Y

    def test_ill_typed_ground_application_stays(self):
        term = app('bvand', Lit('Machine'), Lit(1))
        assert simplify(term) == term

    def test_unexpected_primitive_errors_propagate(self, monkeypatch):

        def explode(value):
            raise RuntimeError("primitive bug")

        monkeypatch.setitem(PRIMS, 'explode', PrimOp('explode', explode, 1))
        with pytest.raises(RuntimeError):
            simplify(app('explode', Lit(1)))

    def test_implication(self):
        a, b = app('le', X, Y), app('le', Y, Z)
        assert simplify(app('implies', a, b)) == simplify(app('or', app('not', a), b))


class TestEvaluate:

    def test_unbound_variable(self):
        with pytest.raises(KeyError):
            evaluate(app('add', X, Lit(1)), {})

    def test_lift_round_trips_values(self):
        for value in (5, True, 'Machine', (1, 'R'), Ctor('Cap', (Capability('R', 1, 2, 1),))):
            assert evaluate(lift(value)) == value

    def test_if_is_lazy(self):
        assert evaluate(app('if', TRUE, Lit(1), X), {}) == 1


def test_free_vars_and_subst():
    term = app('add', X, app('add', Y, Lit(1)))
    assert free_vars(term) == {'x', 'y'}
    replaced = subst(term, {'x': Lit(2)})
    assert free_vars(replaced) == {'y'}
    assert subst(term, {}) is term


int_leaves = st.one_of(st.sampled_from([X, Y, Z]), st.integers(-50, 50).map(Lit))


def _int_nodes(children):
    return st.one_of(
        st.tuples(children, children).map(lambda p: app('add', *p)),
        st.tuples(children, children).map(lambda p: app('sub', *p)),
        st.tuples(children, children, children, children).map(
            lambda p: app('if', app('le', p[0], p[1]), p[2], p[3])),
    )


int_terms = st.recursive(int_leaves, _int_nodes, max_leaves=12)


def _bool_nodes(children):
    return st.one_of(
        children.map(lambda a: app('not', a)),
        st.tuples(children, children).map(lambda p: app('and', *p)),
        st.tuples(children, children).map(lambda p: app('or', *p)),
    )


bool_terms = st.recursive(
    st.one_of(st.tuples(int_terms, int_terms).map(lambda p: app('le', *p)),
              st.tuples(int_terms, int_terms).map(lambda p: app('eq', *p))),
    _bool_nodes, max_leaves=6)

assignments = st.fixed_dictionaries({n: st.integers(-50, 50) for n in 'xyz'})


@given(int_terms, assignments)
def test_simplify_preserves_integer_meaning(term, assignment):
    assert evaluate(simplify(term), assignment) == evaluate(term, assignment)


@given(bool_terms, assignments)
def test_simplify_preserves_boolean_meaning(term, assignment):
    assert evaluate(simplify(term), assignment) == evaluate(term, assignment)
