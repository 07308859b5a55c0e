"""
contractile command line

    contractile verify --isa minimalcaps
    contractile run --isa riscv-pmp --image kernel.img --fuel 20
    contractile verify-block --isa riscv-pmp --block init.blk --contract init.contract
    contractile fuzz-integrity --seed 1 --trials 1000 --fuel 10000
    contractile fuzz-confinement --seed 1 --programs 500
    contractile mutants

Exit codes: 0 pass, 1 verification or property failure, 2 usage error.
"""

# built-ins
import argparse
import logging
import sys

# internal packages
from .cli.commands import COMMANDS, EXIT_USAGE
from .config import load_settings
from .errors import ConfigError, ContractileError, NotFound, ParseError
from .isa import ISAS
from .mutants import MUTANTS


logger = logging.getLogger(__name__)


def _positive(text):
    value = int(text, 0)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} is not a positive integer")
    return value


def _natural(text):
    value = int(text, 0)
    if value < 0:
        raise argparse.ArgumentTypeError(f"{text} is negative")
    return value


def _address(text):
    return int(text, 0)


def build_parser():
    parser = argparse.ArgumentParser(
        prog='contractile',
        description="Contract verification, concrete runs and fuzzing of ISA specifications")
    parser.add_argument('--verbose', '-v', action='store_true', help="log at DEBUG level")
    parser.add_argument('--config', default='.', metavar='PATH',
                        help="contractile.ini or the directory holding it")
    sub = parser.add_subparsers(dest='command', required=True)

    verify = sub.add_parser('verify', help="verify the contracts of an ISA bundle")
    verify.add_argument('--isa', required=True, help=f"one of {', '.join(ISAS)}")
    verify.add_argument('--function', metavar='NAME', help="verify only this function")
    verify.add_argument('--json', metavar='PATH', help="write the JSON report")
    verify.add_argument('--export', metavar='PATH', help="write the report as .json, .csv or .tsv")

    run = sub.add_parser('run', help="run a memory image")
    run.add_argument('--isa', required=True, help=f"one of {', '.join(ISAS)}")
    run.add_argument('--image', required=True, metavar='PATH')
    run.add_argument('--fuel', type=_natural, metavar='N')
    run.add_argument('--dump-range', nargs=2, type=_address, metavar=('LO', 'HI'))

    block = sub.add_parser('verify-block', help="verify a straight-line block against a contract")
    block.add_argument('--isa', choices=['riscv-pmp'], default='riscv-pmp')
    block.add_argument('--block', required=True, metavar='PATH')
    block.add_argument('--contract', required=True, metavar='PATH')
    block.add_argument('--json', metavar='PATH', help="write the JSON report")
    block.add_argument('--export', metavar='PATH', help="write the report as .json, .csv or .tsv")

    integrity = sub.add_parser('fuzz-integrity', help="fuzz the femtokernel with random user code")
    integrity.add_argument('--seed', type=_natural)
    integrity.add_argument('--trials', type=_positive)
    integrity.add_argument('--fuel', type=_positive)
    integrity.add_argument('--adv-words', type=_positive, metavar='K')
    integrity.add_argument('--quiet', '-q', action='store_true', help="no progress bar")

    confinement = sub.add_parser('fuzz-confinement',
                                 help="fuzz MinimalCaps programs for capability confinement")
    confinement.add_argument('--seed', type=_natural)
    confinement.add_argument('--programs', type=_positive, default=500)
    confinement.add_argument('--fuel', type=_positive)
    confinement.add_argument('--quiet', '-q', action='store_true', help="no progress bar")

    mutants = sub.add_parser('mutants', help="run the mutation suite")
    mutants.add_argument('--only', nargs='+', choices=sorted(MUTANTS), metavar='MUTANT')
    mutants.add_argument('--json', metavar='PATH', help="write the outcomes as JSON")

    femto = sub.add_parser('femto', help="write the femtokernel fixtures for the memory size")
    femto.add_argument('--output', default='.', metavar='DIR')

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')

    try:
        settings = load_settings(args.config)
        return COMMANDS[args.command](args, settings)
    except (NotFound, ParseError, ConfigError) as e:
        print(f"contractile: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"contractile: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ContractileError as e:
        logger.error("%s", e)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
