"""Propositional theories whose models are exactly a framework's extensions.

Conflict-free, admissible, complete and stable semantics have direct
structural encodings. Grounded and preferred are not closed under the model
set of any such formula shape, so they go through the enumerative encoding.
The constellation encoding describes, for one query argument, every induced
subgraph in which that argument is credulously accepted.
"""

from __future__ import annotations

from .af import (
    ArgumentationFramework,
    Semantics,
    _extension_masks,
    attackers,
    extensions,
)
from .errors import CapacityError, InputError
from .formula import Formula, and_, lit, not_, or_, var

# Constellation work scans all 2^n induced subgraphs.
MAX_CONSTELLATION_ARGUMENTS = 20


def _implies(p: Formula, q: Formula) -> Formula:
    return or_((not_(p), q))


def _iff(p: Formula, q: Formula) -> Formula:
    return and_((_implies(p, q), _implies(q, p)))


def _no_attacker(af: ArgumentationFramework, name: str) -> Formula:
    return and_(lit(b, False) for b in sorted(attackers(af, name)))


def _some_defender(af: ArgumentationFramework, name: str) -> Formula:
    # One disjunct per attacker; an unattacked attacker contributes an empty
    # disjunction, i.e. false, which is what makes defence impossible.
    return and_(
        or_(var(c) for c in sorted(attackers(af, b)))
        for b in sorted(attackers(af, name))
    )


def encode(af: ArgumentationFramework, semantics: Semantics) -> Formula:
    """Direct structural theory for CF, AD, CO or ST."""
    if semantics is Semantics.CF:
        return and_(
            or_((lit(source, False), lit(target, False)))
            for source, target in sorted(af.attacks)
        )
    if semantics is Semantics.AD:
        parts = []
        for name in af.arguments:
            parts.append(_implies(var(name), _no_attacker(af, name)))
            parts.append(_implies(var(name), _some_defender(af, name)))
        return and_(parts)
    if semantics is Semantics.ST:
        return and_(_iff(var(name), _no_attacker(af, name)) for name in af.arguments)
    if semantics is Semantics.CO:
        reinstatement = (
            _iff(var(name), _some_defender(af, name)) for name in af.arguments
        )
        return and_((encode(af, Semantics.CF), *reinstatement))
    raise InputError(
        f"no direct encoding for {semantics.value}; use encode_enumerative"
    )


def _assignment_conjunction(af: ArgumentationFramework, mask: int) -> Formula:
    return and_(
        lit(name, bool(mask >> i & 1)) for i, name in enumerate(af.arguments)
    )


def encode_enumerative(af: ArgumentationFramework, semantics: Semantics) -> Formula:
    """Disjunction of complete assignment conjunctions, one per extension.

    Works for every semantics; it is the only route for GR and PR.
    """
    inside = {af._mask(e) for e in extensions(af, semantics)}
    return or_(_assignment_conjunction(af, m) for m in sorted(inside))


def encode_constellation(
    af: ArgumentationFramework, semantics: Semantics, argument: str
) -> Formula:
    """Theory of the induced subgraphs that credulously accept the argument.

    Each model is a full assignment naming the arguments present in one
    accepting subgraph.
    """
    bit = 1 << af._require(argument)
    if len(af.arguments) > MAX_CONSTELLATION_ARGUMENTS:
        raise CapacityError(
            f"constellation encoding supports at most {MAX_CONSTELLATION_ARGUMENTS} "
            f"arguments, got {len(af.arguments)}"
        )
    terms = []
    for sub in range(1 << len(af.arguments)):
        if sub & bit and any(
            m & bit for m in _extension_masks(af, sub, semantics)
        ):
            terms.append(_assignment_conjunction(af, sub))
    return or_(terms)
