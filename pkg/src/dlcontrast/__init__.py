"""Contrastive explanations for EL⊥ knowledge bases."""
from .abduce import FoilJustification, Hypothesis, abduce, candidate_space, foil_justification
from .contrast import (
    ContrastiveExplanation,
    ContrastiveQuestion,
    ce_full_partition,
    ce_lipton,
    ce_relative,
    ce_symdiff,
    compute_conflicts,
    divergence,
    explain_concept,
    explain_entity,
    preferred_ce,
    relative_diff,
    relative_symdiff,
)
from .errors import ContrastError, NoExplanation, PreconditionError
from .justify import Justification, justify, justify_all
from .parser import ParseError, load_owl_subset, parse_axiom, parse_kb, serialize
from .reasoner import ELReasoner, InconsistentKB, entails, instances, is_consistent
from .syntax import (
    BOTTOM,
    TOP,
    GCI,
    And,
    Atomic,
    ConceptAssertion,
    ContrastPair,
    KnowledgeBase,
    RoleAssertion,
    Signature,
    Some,
    conj,
    disjoint,
    rename,
)

__version__ = "0.1.0"
