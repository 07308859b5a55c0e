"""
Stand-alone application of ghost lemmas to a symbolic heap

The symbolic executor applies lemmas along its paths; `apply_lemma` offers the
same step outside an execution, for tests and for tools that transform heaps.
"""

# built-ins
import itertools
from typing import NamedTuple

# internal packages
from .heap import ConsumeSearch, FreshSupply, produce
from .solver import Prover
from ..errors import NotFound, SpatialFailure


class LemmaApplication(NamedTuple):

    heap: tuple
    facts: tuple
    obligations: tuple
    valuation: dict


def choose_alternative(search, facts, prover, limit=None):

    """
    First consume alternative whose obligations `prover` discharges under
    `facts`, else the first alternative found, else None
    """

    first = None
    for alternative in itertools.islice(search, limit):
        if first is None:
            first = alternative
        if all(prover.prove(o, facts) for o in alternative.obligations):
            return alternative
    return first


def apply_lemma(lemmas, name, args, heap, facts=(), prover=None, supply=None, limit=256):

    """
    Consumes a lemma's precondition from `heap` and produces its postcondition

    Parameters
    ----------
    lemmas : dict
        Lemma name to LemmaDecl, usually `Program.lemmas`
    args : tuple
        Terms for the lemma parameters
    facts : tuple
        Path condition consulted for pure atoms

    Returns
    -------
    LemmaApplication
        `obligations` lists the pure atoms of the precondition that `facts` do
        not entail; `facts` holds the pure content of the postcondition

    Raises
    ------
    NotFound
        when the lemma is not registered
    SpatialFailure
        when a spatial atom of the precondition has no matching chunk
    """

    decl = lemmas.get(name)
    if decl is None:
        raise NotFound(name, 'lemma')
    prover = prover or Prover()

    valuation = dict(zip(decl.param_names, args))
    search = ConsumeSearch(decl.pre, valuation, heap, facts)
    chosen = choose_alternative(search, facts, prover, limit)
    if chosen is None:
        raise SpatialFailure(search.failed if search.failed is not None else decl.pre)

    pending = tuple(o for o in chosen.obligations if not prover.prove(o, facts))
    (out, *_) = produce(decl.post, chosen.valuation, chosen.heap, supply or FreshSupply())
    return LemmaApplication(out.heap, out.facts, pending, chosen.valuation)
