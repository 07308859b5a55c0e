from .terms import Term, Lit, Var, App, TRUE, FALSE, lift, evaluate, simplify, free_vars, subst
from .assertions import (
    Assertion, Pure, PointsToReg, PointsToMem, Star, Wand, Exists, Pred, Or, EMP, star, or_,
    exists, register_predicate, Contract, LemmaDecl
)
from .heap import RegChunk, MemChunk, PredChunk, WandChunk, produce, consume, ConsumeSearch
from .lemmas import apply_lemma
from .solver import Prover, entails, register_unfolding
