"""
Subcommands of the contractile command line

Every command takes the parsed arguments, the Settings and an output stream,
and returns the process exit code: 0 when everything checked passed, 1 when a
verification or property failed. Usage errors are raised as ContractileError
(or OSError for unreadable files) and turned into exit code 2 by the caller.
"""

# built-ins
import json
import logging
import pathlib

# internal packages
from .objects import Display, Listing, Table
from .textformat import status
from ..blocks import femto_assets, parse_block, show_block, verify_block
from ..blocks.femtokernel import contract_texts
from ..fuzz import fuzz_confinement, fuzz_integrity
from ..isa import load_isa
from ..logic.sexpr import loads_contract
from ..machine.image import dump_words, read_source
from ..machine.state import Failure
from ..mutants import run_mutants
from ..tools.pandas_extension import export_report, status_percentage
from ..verifier import VERIFIED, Report, verify_all


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _write_outputs(args, report, stream):

    """--json and --export of a Report; returns False when a file could not be written"""

    ok = True
    if getattr(args, 'json', None):
        pathlib.Path(args.json).write_text(report.to_json() + '\n', encoding='utf-8')
        Display("Report written to '{path}'", {'path': args.json}, stream=stream).draw()
    if getattr(args, 'export', None):
        success, message = export_report(report.to_dataframe(), args.export)
        Display(message, stream=stream).draw()
        ok = success
    return ok


def _shares(report):
    shares = status_percentage(report.to_dataframe())
    return ", ".join(f"{name} {share:.0f}%" for name, share in shares.items())


def _draw_report(title, report, stream):
    table = Table(report.table_rows(), stream=stream)
    table.table_header = title
    table.description = _shares(report)
    table.status_column = 1
    table.draw()
    for r in report:
        if r.status != VERIFIED and (r.message or r.residual):
            Listing(f"{r.function}: {status(r.status)}",
                    (r.message or r.residual).splitlines(), stream=stream).draw()


def cmd_verify(args, settings, stream=None):
    isa = load_isa(args.isa)
    bundle = isa.universal_bundle(settings.memsize(isa.name))
    functions = [args.function] if args.function else None
    report = verify_all(bundle, functions, max_alternatives=settings.max_alternatives)
    _draw_report(f"Contracts of {bundle.name}", report, stream)
    if not _write_outputs(args, report, stream):
        return EXIT_USAGE
    return EXIT_OK if all(r.status == VERIFIED for r in report) else EXIT_FAILED


def _show_pc(isa, pc):
    return f"{pc:#x}" if isinstance(pc, int) else isa.show_word(pc)


def cmd_run(args, settings, stream=None):
    isa = load_isa(args.isa)
    memsize = settings.memsize(isa.name)
    state = isa.load(pathlib.Path(args.image), memsize)
    interp = isa.interpreter(isa.universal_bundle(memsize).program)
    fuel = settings.fuel if args.fuel is None else args.fuel
    final, outcome = interp.run_fde_cycle(state, fuel)

    rows = [['Outcome', 'pc'], [str(outcome), _show_pc(isa, final.registers['pc'])]]
    if 'cur_privilege' in final.registers:
        rows[0].append('Privilege')
        rows[1].append(final.registers['cur_privilege'])
    Table(rows, stream=stream).draw()
    Display("priv={priv} pc={pc}", {'priv': final.registers.get('cur_privilege', '-'),
                                     'pc': _show_pc(isa, final.registers['pc'])},
            stream=stream).draw()

    if args.dump_range:
        lo, hi = args.dump_range
        Listing(f"memory [{lo:#x}, {hi:#x})",
                [f"{a:#06x}: {isa.show_word(w)}" for a, w in dump_words(final, lo, hi)],
                stream=stream).draw()
    return EXIT_FAILED if isinstance(outcome, Failure) else EXIT_OK


def cmd_verify_block(args, settings, stream=None):
    block = parse_block(pathlib.Path(args.block).read_text(encoding='utf-8'),
                        pathlib.Path(args.block).stem)
    contract = loads_contract(read_source(pathlib.Path(args.contract)))
    result = verify_block(block, contract, memsize=settings.riscv_memsize,
                          max_alternatives=settings.max_alternatives)
    report = Report(block.name, [result])
    _draw_report(f"Block {block.name} at {block.base:#x}", report, stream)
    if not _write_outputs(args, report, stream):
        return EXIT_USAGE
    return EXIT_OK if result.status == VERIFIED else EXIT_FAILED


def cmd_fuzz_integrity(args, settings, stream=None):
    seed = settings.seed if args.seed is None else args.seed
    trials = settings.fuzz_trials if args.trials is None else args.trials
    fuel = settings.fuel if args.fuel is None else args.fuel
    adv_words = settings.adv_words if args.adv_words is None else args.adv_words
    report = fuzz_integrity(seed, trials, fuel, adv_words, memsize=settings.riscv_memsize,
                            progress=not args.quiet)

    table = Table(report.summary_rows(), stream=stream)
    table.table_header = f"Femtokernel integrity, seed {seed}"
    table.description = 'pass' if report.ok else 'FAIL'
    table.draw()
    for v in report.violations:
        Display("trial {trial}: word at 84 = {secret}, kernel intact: {intact}; "
                "replay with numpy.random.default_rng({seed})",
                {'trial': v.trial, 'secret': v.outcome.secret,
                 'intact': v.outcome.kernel_intact, 'seed': v.seed}, stream=stream).draw()
        Listing("minimized counterexample" if v.minimized else "counterexample",
                v.disassembly(), stream=stream).draw()
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_fuzz_confinement(args, settings, stream=None):
    seed = settings.seed if args.seed is None else args.seed
    fuel = 1000 if args.fuel is None else args.fuel
    report = fuzz_confinement(seed, args.programs, fuel, memsize=settings.minimalcaps_memsize,
                              progress=not args.quiet)

    table = Table(report.summary_rows(), stream=stream)
    table.table_header = f"MinimalCaps confinement, seed {seed}"
    table.description = 'pass' if report.ok else 'FAIL'
    table.draw()
    for v in report.violations:
        Display("program {index} wrote outside its authority at {addresses}; replay with "
                "numpy.random.default_rng({seed})",
                {'index': v.index, 'addresses': v.addresses, 'seed': v.seed}, stream=stream).draw()
        Listing("minimized program" if v.minimized else "program", v.disassembly(),
                stream=stream).draw()
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_mutants(args, settings, stream=None):
    outcomes = run_mutants(args.only or None, memsize=settings.riscv_memsize)
    rows = [['Mutant', 'Outcome', 'Check', 'Result']]
    rows += [[o.mutant, 'killed' if o.killed else 'survived', o.check, o.result]
             for o in outcomes]
    table = Table(rows, stream=stream)
    table.table_header = "Mutation suite"
    table.status_column = 1
    table.draw()
    if getattr(args, 'json', None):
        pathlib.Path(args.json).write_text(
            json.dumps([o.to_dict() for o in outcomes], indent=2) + '\n', encoding='utf-8')
    return EXIT_OK if all(o.killed for o in outcomes) else EXIT_FAILED


def cmd_femto(args, settings, stream=None):

    """Writes the femtokernel image, blocks and contracts for a memory size"""

    memsize = settings.riscv_memsize
    assets = femto_assets(memsize)
    out = pathlib.Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    files = {
        'femtokernel.img': assets.image,
        'femto_init.blk': show_block(assets.init),
        'femto_handler.blk': show_block(assets.handler),
        'femto_init.contract': contract_texts(memsize)['init'],
        'femto_handler.contract': contract_texts(memsize)['handler'],
    }
    for name, text in files.items():
        (out / name).write_text(text, encoding='utf-8')
    Listing(f"femtokernel for {memsize} bytes", [str(out / n) for n in files], stream=stream).draw()
    return EXIT_OK


COMMANDS = {
    'verify': cmd_verify,
    'run': cmd_run,
    'verify-block': cmd_verify_block,
    'fuzz-integrity': cmd_fuzz_integrity,
    'fuzz-confinement': cmd_fuzz_confinement,
    'mutants': cmd_mutants,
    'femto': cmd_femto,
}
