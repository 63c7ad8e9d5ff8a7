"""Abstract argumentation frameworks and their extension-based semantics.

A framework is a finite directed attack graph over string-named arguments.
Extensions are computed by explicit enumeration over subsets (the grounded
extension by its fixed point), which keeps this module simple enough to act
as the ground truth that every encoding and circuit is validated against.
Subsets are handled as bit masks over the sorted argument list internally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from typing import Iterable, Iterator

from .errors import CapacityError, InputError

# Enumeration over 2^n subsets; refuse anything past this.
MAX_ENUMERATION_ARGUMENTS = 25

_ID_PATTERN = re.compile(r"[A-Za-z0-9_]+\Z")


class Semantics(str, Enum):
    """Extension-based acceptance criteria."""

    CF = "CF"  # conflict-free
    AD = "AD"  # admissible
    CO = "CO"  # complete
    GR = "GR"  # grounded
    ST = "ST"  # stable
    PR = "PR"  # preferred


@dataclass(frozen=True)
class ArgumentationFramework:
    """Finite set of arguments together with a directed attack relation.

    Arguments are stored sorted, so equal frameworks compare and hash equal
    regardless of construction order.
    """

    arguments: tuple[str, ...]
    attacks: frozenset[tuple[str, str]]

    def __init__(self, arguments: Iterable[str], attacks: Iterable[tuple[str, str]] = ()):
        names = tuple(sorted(dict.fromkeys(arguments)))
        for name in names:
            if not isinstance(name, str) or not _ID_PATTERN.match(name):
                raise InputError(f"invalid argument id {name!r}")
        pairs = set()
        for pair in attacks:
            source, target = pair
            pairs.add((source, target))
        known = set(names)
        for source, target in sorted(pairs):
            if source not in known or target not in known:
                raise InputError(f"attack ({source},{target}) references an undeclared argument")
        object.__setattr__(self, "arguments", names)
        object.__setattr__(self, "attacks", frozenset(pairs))

    def __contains__(self, name: object) -> bool:
        return name in self._index

    @cached_property
    def _index(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.arguments)}

    @cached_property
    def _attacker_masks(self) -> tuple[int, ...]:
        masks = [0] * len(self.arguments)
        for source, target in self.attacks:
            masks[self._index[target]] |= 1 << self._index[source]
        return tuple(masks)

    @cached_property
    def _attacked_masks(self) -> tuple[int, ...]:
        masks = [0] * len(self.arguments)
        for source, target in self.attacks:
            masks[self._index[source]] |= 1 << self._index[target]
        return tuple(masks)

    @property
    def _full_mask(self) -> int:
        return (1 << len(self.arguments)) - 1

    def _mask(self, group: Iterable[str]) -> int:
        mask = 0
        for name in group:
            index = self._index.get(name)
            if index is None:
                raise InputError(f"unknown argument {name!r}")
            mask |= 1 << index
        return mask

    def _members(self, mask: int) -> frozenset[str]:
        return frozenset(self.arguments[i] for i in _bits(mask))

    def _require(self, name: str) -> int:
        index = self._index.get(name)
        if index is None:
            raise InputError(f"unknown argument {name!r}")
        return index


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def attackers(af: ArgumentationFramework, argument: str) -> frozenset[str]:
    """Arguments attacking the given one."""
    return af._members(af._attacker_masks[af._require(argument)])


def attacked(af: ArgumentationFramework, group: Iterable[str]) -> frozenset[str]:
    """Arguments attacked by at least one member of the group."""
    mask = af._mask(group)
    hit = 0
    for i in _bits(mask):
        hit |= af._attacked_masks[i]
    return af._members(hit)


def is_conflict_free(af: ArgumentationFramework, group: Iterable[str]) -> bool:
    """True when no member of the group attacks another member."""
    mask = af._mask(group)
    hit = 0
    for i in _bits(mask):
        hit |= af._attacked_masks[i]
    return (hit & mask) == 0


def characteristic(af: ArgumentationFramework, group: Iterable[str]) -> frozenset[str]:
    """Arguments whose every attacker is attacked by the group."""
    mask = af._mask(group)
    return af._members(_characteristic_mask(af, af._full_mask, mask))


def _attacked_by(af: ArgumentationFramework, universe: int, mask: int) -> int:
    hit = 0
    for i in _bits(mask):
        hit |= af._attacked_masks[i]
    return hit & universe


def _characteristic_mask(af: ArgumentationFramework, universe: int, mask: int) -> int:
    hit = _attacked_by(af, universe, mask)
    out = 0
    for i in _bits(universe):
        if af._attacker_masks[i] & universe & ~hit == 0:
            out |= 1 << i
    return out


@lru_cache(maxsize=None)
def _extension_masks(af: ArgumentationFramework, universe: int, semantics: Semantics) -> tuple[int, ...]:
    """Extensions of the subgraph induced by ``universe``, as sorted bit masks."""
    if semantics is Semantics.GR:
        current = 0
        while True:
            after = _characteristic_mask(af, universe, current)
            if after == current:
                return (current,)
            current = after

    found = []
    subset = universe
    while True:
        hit = _attacked_by(af, universe, subset)
        if hit & subset == 0:  # conflict-free
            if semantics is Semantics.CF:
                found.append(subset)
            elif semantics is Semantics.ST:
                if subset | hit == universe:
                    found.append(subset)
            elif semantics is Semantics.CO:
                if _characteristic_mask(af, universe, subset) == subset:
                    found.append(subset)
            else:  # AD or PR: admissibility first
                defended = True
                for i in _bits(subset):
                    if af._attacker_masks[i] & universe & ~hit:
                        defended = False
                        break
                if defended:
                    found.append(subset)
        if subset == 0:
            break
        subset = (subset - 1) & universe

    if semantics is Semantics.PR:
        found = [m for m in found if not any(m != o and m & o == m for o in found)]
    return tuple(sorted(found))


def _sorted_sets(af: ArgumentationFramework, masks: Iterable[int]) -> tuple[frozenset[str], ...]:
    groups = [af._members(m) for m in masks]
    return tuple(sorted(groups, key=lambda g: tuple(sorted(g))))


def extensions(af: ArgumentationFramework, semantics: Semantics) -> tuple[frozenset[str], ...]:
    """All extensions under the given semantics, sorted for determinism."""
    if len(af.arguments) > MAX_ENUMERATION_ARGUMENTS:
        raise CapacityError(
            f"extension enumeration supports at most {MAX_ENUMERATION_ARGUMENTS} arguments, "
            f"got {len(af.arguments)}"
        )
    return _sorted_sets(af, _extension_masks(af, af._full_mask, semantics))


def credulous(af: ArgumentationFramework, semantics: Semantics, argument: str) -> bool:
    """True when some extension under the semantics contains the argument."""
    bit = 1 << af._require(argument)
    if len(af.arguments) > MAX_ENUMERATION_ARGUMENTS:
        raise CapacityError(
            f"extension enumeration supports at most {MAX_ENUMERATION_ARGUMENTS} arguments, "
            f"got {len(af.arguments)}"
        )
    return any(m & bit for m in _extension_masks(af, af._full_mask, semantics))


def subgraph(af: ArgumentationFramework, members: Iterable[str]) -> ArgumentationFramework:
    """Framework induced by a subset of the arguments."""
    mask = af._mask(members)
    kept = [af.arguments[i] for i in _bits(mask)]
    inside = set(kept)
    return ArgumentationFramework(
        kept, [(s, t) for s, t in af.attacks if s in inside and t in inside]
    )


def subgraph_extensions(
    af: ArgumentationFramework, members: Iterable[str], semantics: Semantics
) -> tuple[frozenset[str], ...]:
    """Extensions of the induced subgraph, expressed over the parent's ids."""
    return _sorted_sets(af, _extension_masks(af, af._mask(members), semantics))
