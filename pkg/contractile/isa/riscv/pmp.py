"""
Physical memory protection with top-of-range entries

An entry (cfg, addr) in TOR mode covers the byte range [previous addr, addr);
the previous address of entry 0 is 0. Entries are checked in index order and
the first one covering every byte of an access decides it by its permissions.
An entry covering only some of the bytes does not match, and checking goes on
with the next entry. An access no entry matches is allowed only in Machine
mode. Machine mode ignores the permissions of unlocked entries.
"""

# internal packages
from .types import PmpCfg
from ...core.prims import primitive
from ...logic.solver import register_unfolding
from ...logic.terms import App, Lit


ALLOW = 'Allow'
DENY = 'Deny'


@primitive('pmp_match_tor', 4)
def pmp_match_tor(addr, width, lo, hi):
    return lo <= addr and addr + width <= hi


@primitive('pmp_perm_ok', 3)
def pmp_perm_ok(cfg, priv, acc):
    if priv == 'Machine' and not cfg.L:
        return True
    if acc == 'Read':
        return cfg.R
    if acc == 'Write':
        return cfg.W
    if acc == 'ReadWrite':
        return cfg.R and cfg.W
    return cfg.X


@primitive('pmp_access', 5)
def pmp_access(addr, width, entries, priv, acc):
    lo = 0
    for cfg, hi in entries:
        if cfg.A == 'TOR' and pmp_match_tor(addr, width, lo, hi):
            return pmp_perm_ok(cfg, priv, acc)
        lo = hi
    return priv == 'Machine'


def pmp_check(addr, width, acc, priv, entries):

    """
    Parameters
    ----------
    entries : sequence
        (PmpCfg, address) pairs in priority order

    Returns
    -------
    str
        ALLOW or DENY
    """

    return ALLOW if pmp_access(addr, width, tuple(entries), priv, acc) else DENY


def byte_oracle(addr, width, acc, priv, entries):

    """
    The same decision from the bytes up

    Collects, for every byte of the access, the set of entries whose range
    holds it; the lowest entry in all of those sets decides.
    """

    ranges, lo = [], 0
    for cfg, hi in entries:
        ranges.append(set(range(lo, hi)) if cfg.A == 'TOR' else set())
        lo = hi
    holders = [{i for i, r in enumerate(ranges) if byte in r} for byte in range(addr, addr + width)]
    matching = set.intersection(*holders) if holders else set()
    if not matching:
        return ALLOW if priv == 'Machine' else DENY
    return ALLOW if pmp_perm_ok(entries[min(matching)][0], priv, acc) else DENY


# configuration bytes: R bit 0, W bit 1, X bit 2, A bits 3-4 (0 OFF, 1 TOR), L bit 7

@primitive('pmpcfg_of_byte', 1)
def pmpcfg_of_byte(byte):
    mode = 'TOR' if (byte >> 3) & 3 == 1 else 'OFF'
    return PmpCfg(L=bool(byte & 0x80), A=mode, X=bool(byte & 4), W=bool(byte & 2), R=bool(byte & 1))


@primitive('byte_of_pmpcfg', 1)
def byte_of_pmpcfg(cfg):
    return (int(cfg.R) | int(cfg.W) << 1 | int(cfg.X) << 2
            | (1 << 3 if cfg.A == 'TOR' else 0) | int(cfg.L) << 7)


@primitive('pack_pmpcfg0', 2)
def pack_pmpcfg0(cfg0, cfg1):
    return byte_of_pmpcfg(cfg0) | byte_of_pmpcfg(cfg1) << 8


# symbolic unfolding of pmp_access into the decision chain pmp_check runs

def _is_tor(cfg):
    return App('eq', (App('field:A', (cfg,)), Lit('TOR')))


def entry_terms(entries):

    """(cfg, addr) terms of both entries of a PMP_ENTRIES term"""

    pairs = [App(f'proj:{i}', (entries,)) for i in (0, 1)]
    return [(App('proj:0', (e,)), App('proj:1', (e,))) for e in pairs]


def unfold_access(addr, width, entries, priv, acc):
    terms = entry_terms(entries)
    result = App('eq', (priv, Lit('Machine')))
    for i in reversed(range(len(terms))):
        cfg, hi = terms[i]
        lo = Lit(0) if i == 0 else terms[i - 1][1]
        result = App('if', (
            App('and', (_is_tor(cfg), App('pmp_match_tor', (addr, width, lo, hi)))),
            App('pmp_perm_ok', (cfg, priv, acc)),
            result,
        ))
    return result


register_unfolding('pmp_access', unfold_access)
