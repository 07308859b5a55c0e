
# internal packages
from contractile.core import builder as b
from contractile.core.program import (FOREIGN, FunctionDecl, Program, check_wellformed, fresh_name,
                                      lookup_function, require_wellformed)
from contractile.core.types import BOOL, INT, UNIT
from contractile.errors import NotFound, ParseError, WellformednessError
from contractile.isa import minimalcaps, riscv
from contractile.isa.minimalcaps import Cap, Int
from contractile.machine import Failure, Interpreter, MachineState, OutOfFuel, Value
from contractile.machine.image import dump_words, load_image, parse_image

# external packages
import pytest


def _toy(*extra):
    functions = [
        FunctionDecl('double', (('n', INT),), INT, b.add(b.var('n'), b.var('n'))),
        FunctionDecl('classify', (('n', INT),), INT,
                     b.match(b.var('n'), (b.plit(0), 100), (b.wild(), b.var('n')))),
        FunctionDecl('guarded', (('n', INT),), UNIT, b.assert_(b.le(0, b.var('n')), "negative")),
        FunctionDecl('zero_only', (('n', INT),), INT, b.match(b.var('n'), (b.plit(0), 1))),
        FunctionDecl('tick', (), BOOL,
                     b.seq(b.write('counter', b.add(b.read('counter'), 1)),
                           b.le(b.read('counter'), 3))),
        FunctionDecl('fdeStep', (), BOOL, b.call('tick')),
        FunctionDecl('fdeCycle', (), UNIT, b.seq(b.call('fdeStep'), b.call('fdeCycle'))),
    ]
    return Program('toy', functions + list(extra), registers={'counter': INT})


class TestProgram:

    def test_registry_is_read_only(self):
        program = _toy()
        with pytest.raises(TypeError):
            program.functions['double'] = None

    def test_duplicate_function(self):
        decl = FunctionDecl('f', (), INT, b.lit(1))
        with pytest.raises(ValueError):
            Program('dup', [decl, decl])

    def test_unknown_function(self):
        with pytest.raises(NotFound):
            _toy().function('nowhere')

    def test_replace_returns_a_copy(self):
        program = _toy()
        changed = program.replace(FunctionDecl('double', (('n', INT),), INT, b.var('n')),
                                  name='toy-mutant')
        assert changed.name == 'toy-mutant'
        assert changed.function('double').body == b.var('n')
        assert program.function('double').body != b.var('n')

    def test_foreign(self):
        assert FunctionDecl('read_mem', (('c', INT),), INT, FOREIGN).foreign
        assert FunctionDecl('f', (('a', INT), ('b', INT)), INT, b.lit(0)).param_names == ('a', 'b')

    def test_fresh_name(self):
        assert fresh_name(set()) == 'v0'
        assert fresh_name({'v0', 'v1'}) == 'v2'
        assert fresh_name({'t0'}, prefix='t') == 't1'


class TestWellformed:

    def test_bundled_programs(self, mc_bundle, rv_program):
        assert check_wellformed(mc_bundle.program) == []
        assert check_wellformed(rv_program) == []

    def test_toy(self):
        assert check_wellformed(_toy()) == []

    def _messages(self, program):
        return [message for _, message in check_wellformed(program)]

    def test_scoping_and_calls(self):
        broken = _toy().replace(
            FunctionDecl('double', (('n', INT),), INT, b.add(b.var('m'), b.call('nowhere'))))
        messages = self._messages(broken)
        assert "unbound variable 'm'" in messages
        assert "unknown function 'nowhere'" in messages

    def test_missing_entry_point(self):
        program = Program('bare', [FunctionDecl('f', (), INT, b.lit(1))])
        messages = self._messages(program)
        assert "missing entry point 'fdeStep'" in messages
        assert "missing entry point 'fdeCycle'" in messages

    def test_unknown_names(self):
        broken = _toy(FunctionDecl('bad', (), INT,
                                   b.seq(b.read('nope'), b.lemma('no_lemma'), b.prim('frob', 1))))
        messages = self._messages(broken)
        assert "unknown register 'nope'" in messages
        assert "unknown lemma 'no_lemma'" in messages
        assert "unknown primitive 'frob'" in messages

    def test_arity(self):
        broken = _toy(FunctionDecl('bad', (), INT, b.call('double', 1, 2)))
        assert "'double' expects 1 arguments, got 2" in self._messages(broken)

    def test_cycle_shape(self):
        broken = _toy().replace(FunctionDecl('fdeCycle', (), UNIT, b.call('fdeStep')))
        assert any(m.startswith("fdeCycle shape") for m in self._messages(broken))

    def test_require_wellformed(self):
        program = _toy()
        assert require_wellformed(program) is program
        broken = program.replace(FunctionDecl('double', (('n', INT),), INT, b.var('m')))
        with pytest.raises(WellformednessError) as info:
            require_wellformed(broken)
        assert "unbound variable 'm'" in str(info.value)
        assert info.value.diagnostics == check_wellformed(broken)
        assert [message for _, message in info.value.diagnostics] == ["unbound variable 'm'"]

    def test_lookup_missing_function(self):
        with pytest.raises(NotFound) as info:
            lookup_function(_toy(), 'nowhere')
        assert info.value.name == 'nowhere'


class TestInterpreter:

    def setup_method(self):
        self.interp = Interpreter(_toy(), {})
        self.state = MachineState({'counter': 0})

    def test_run_function(self):
        _, outcome = self.interp.run_function(self.state, 'double', [21])
        assert outcome == Value(42)

    def test_match(self):
        assert self.interp.run_function(self.state, 'classify', [0])[1] == Value(100)
        assert self.interp.run_function(self.state, 'classify', [7])[1] == Value(7)

    def test_no_matching_case(self):
        assert self.interp.run_function(self.state, 'zero_only', [3])[1] == Failure("no matching case")

    def test_assertion(self):
        assert self.interp.run_function(self.state, 'guarded', [1])[1] == Value(None)
        assert self.interp.run_function(self.state, 'guarded', [-1])[1] == Failure("negative")

    def test_entry_points_copy_the_state(self):
        final, outcome = self.interp.run_fde_step(self.state)
        assert outcome == Value(True)
        assert final.registers['counter'] == 1
        assert self.state.registers['counter'] == 0

    def test_cycle_halts(self):
        final, outcome = self.interp.run_fde_cycle(self.state, 10)
        assert outcome == Value(None)
        assert final.registers['counter'] == 4

    def test_cycle_runs_out_of_fuel(self):
        final, outcome = self.interp.run_fde_cycle(self.state, 2)
        assert outcome == OutOfFuel(2)
        assert final.registers['counter'] == 2

    def test_negative_fuel(self):
        with pytest.raises(ValueError):
            self.interp.run_fde_cycle(self.state, -1)

    def test_exec_statement(self):
        final, outcome = self.interp.exec_statement(self.state, {'x': 5},
                                                    b.seq(b.write('counter', b.var('x')), b.read('counter')))
        assert outcome == Value(5)
        assert final.registers['counter'] == 5

    def test_missing_foreign_implementation(self):
        program = _toy(FunctionDecl('ext', (), INT, FOREIGN))
        with pytest.raises(NotFound):
            Interpreter(program, {}).call('ext', [], self.state)


class TestState:

    def test_words_are_little_endian(self):
        state = MachineState({}, memsize=16)
        state.write_word(4, 0x11223344)
        assert state.read_byte(4) == 0x44
        assert state.read_byte(7) == 0x11
        assert state.read_word(4) == 0x11223344
        assert state.words() == {4: 0x11223344}

    def test_in_range(self):
        state = MachineState({}, memsize=16)
        assert state.in_range(12, 4)
        assert not state.in_range(13, 4)
        assert not state.in_range(-1)

    def test_word_addressed(self):
        state = minimalcaps.make_state(16)
        state.write_word(3, Int(9))
        assert state.read_word(3) == Int(9)
        assert state.read_word(4) == Int(0)
        assert state.words() == {3: Int(9)}

    def test_touched(self):
        state = MachineState({}, trace=[('read', 4), ('write', 8)])
        assert state.touched() == {4, 8}
        assert state.touched('write') == {8}


class TestImages:

    def test_parse(self):
        text = "# a comment\n0 int 5\n\n1 cap RW 0 9 0  # trailing\n"
        assert parse_image(text, minimalcaps.parse_word) == [(0, Int(5)), (1, Cap('RW', 0, 9, 0))]

    @pytest.mark.parametrize('text', ["0\n", "zz int 1\n", "0 cap XX 0 1 0\n", "0 word 1\n"])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_image(text, minimalcaps.parse_word)

    def test_line_number(self):
        with pytest.raises(ParseError) as info:
            parse_image("0 0x13\n4 banana\n", riscv.parse_word)
        assert info.value.line == 2

    @pytest.mark.parametrize('text, word', [
        ("0x54 42\n", 66),
        ("54 0x2a\n", 42),
        ("0x54 0000002A\n", 42),
    ])
    def test_words_are_hexadecimal(self, text, word):
        assert parse_image(text, riscv.parse_word) == [(84, word)]

    def test_load_out_of_range(self):
        with pytest.raises(ParseError) as info:
            load_image(riscv.make_state(64), "# header\n0 0x13\n40 0x13\n", riscv.parse_word)
        assert info.value.line == 3

    def test_load_leaves_input_alone(self):
        state = riscv.make_state(64)
        loaded = load_image(state, "8 0x00500093\n", riscv.parse_word)
        assert loaded.read_word(8) == 0x00500093
        assert state.read_word(8) == 0

    def test_load_fixture(self, fixtures_dir):
        state = riscv.load(fixtures_dir / 'femtokernel.img')
        assert state.read_word(0) == 0x00000097
        assert state.read_word(84) == 42

    def test_dump_words(self):
        state = riscv.make_state(64, memory={4: 7, 8: 9})
        assert dump_words(state, 5, 12) == [(4, 7), (8, 9)]
        assert minimalcaps.show_word(Cap('R', 1, 2, 1)) == "cap R 1 2 1"
