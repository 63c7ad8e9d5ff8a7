"""Hash-consed propositional formulas in negation normal form.

Every connective is built through a factory that flattens nested operators,
drops neutral elements, deduplicates children and collapses complementary
literal pairs, so structurally equal formulas are always the same object.
That makes identity-keyed caches (negation, cofactors, compilation) cheap.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Mapping, Sequence

_serial = itertools.count()


class Formula:
    __slots__ = ("serial", "vars")

    serial: int
    vars: frozenset[str]

    def _init(self, vars_: frozenset[str]) -> None:
        self.serial = next(_serial)
        self.vars = vars_


class _Const(Formula):
    __slots__ = ("value",)

    def __init__(self, value: bool):
        self._init(frozenset())
        self.value = value

    def __repr__(self) -> str:
        return "true" if self.value else "false"


class Lit(Formula):
    __slots__ = ("var", "positive")

    def __init__(self, var: str, positive: bool):
        self._init(frozenset((var,)))
        self.var = var
        self.positive = positive

    def __repr__(self) -> str:
        return self.var if self.positive else "~" + self.var


class And(Formula):
    __slots__ = ("children",)

    def __init__(self, children: tuple[Formula, ...]):
        self._init(frozenset().union(*(c.vars for c in children)))
        self.children = children

    def __repr__(self) -> str:
        return "(" + " & ".join(map(repr, self.children)) + ")"


class Or(Formula):
    __slots__ = ("children",)

    def __init__(self, children: tuple[Formula, ...]):
        self._init(frozenset().union(*(c.vars for c in children)))
        self.children = children

    def __repr__(self) -> str:
        return "(" + " | ".join(map(repr, self.children)) + ")"


TRUE = _Const(True)
FALSE = _Const(False)

_LITERALS: dict[tuple[str, bool], Lit] = {}
_ANDS: dict[tuple[int, ...], And] = {}
_ORS: dict[tuple[int, ...], Or] = {}
_NEGATIONS: dict[Formula, Formula] = {}
_COFACTORS: dict[tuple[Formula, str, bool], Formula] = {}


def lit(name: str, positive: bool = True) -> Formula:
    key = (name, positive)
    node = _LITERALS.get(key)
    if node is None:
        node = _LITERALS[key] = Lit(name, positive)
    return node


def var(name: str) -> Formula:
    return lit(name, True)


def not_(f: Formula) -> Formula:
    if f is TRUE:
        return FALSE
    if f is FALSE:
        return TRUE
    cached = _NEGATIONS.get(f)
    if cached is not None:
        return cached
    if isinstance(f, Lit):
        result: Formula = lit(f.var, not f.positive)
    elif isinstance(f, And):
        result = or_(not_(c) for c in f.children)
    else:
        result = and_(not_(c) for c in f.children)
    _NEGATIONS[f] = result
    _NEGATIONS[result] = f
    return result


def _gather(items: Iterable[Formula], absorbing: Formula, neutral: Formula,
            flatten: type) -> list[Formula] | None:
    # None signals that the absorbing constant was hit.
    flat: list[Formula] = []
    for f in items:
        if f is neutral:
            continue
        if f is absorbing:
            return None
        if isinstance(f, flatten):
            flat.extend(f.children)
        else:
            flat.append(f)
    return flat


def _normalize(flat: list[Formula]) -> list[Formula] | None:
    # Dedupe (interning makes identity comparisons sound) and detect x with ~x.
    unique = sorted(set(flat), key=lambda f: f.serial)
    polarity: dict[str, bool] = {}
    for f in unique:
        if isinstance(f, Lit):
            if polarity.setdefault(f.var, f.positive) != f.positive:
                return None
    return unique


def and_(items: Iterable[Formula]) -> Formula:
    flat = _gather(items, absorbing=FALSE, neutral=TRUE, flatten=And)
    if flat is None:
        return FALSE
    unique = _normalize(flat)
    if unique is None:
        return FALSE
    if not unique:
        return TRUE
    if len(unique) == 1:
        return unique[0]
    key = tuple(f.serial for f in unique)
    node = _ANDS.get(key)
    if node is None:
        node = _ANDS[key] = And(tuple(unique))
    return node


def or_(items: Iterable[Formula]) -> Formula:
    flat = _gather(items, absorbing=TRUE, neutral=FALSE, flatten=Or)
    if flat is None:
        return TRUE
    unique = _normalize(flat)
    if unique is None:
        return TRUE
    if not unique:
        return FALSE
    if len(unique) == 1:
        return unique[0]
    key = tuple(f.serial for f in unique)
    node = _ORS.get(key)
    if node is None:
        node = _ORS[key] = Or(tuple(unique))
    return node


def assign(f: Formula, name: str, value: bool) -> Formula:
    """Cofactor: substitute a constant for one variable and simplify."""
    if name not in f.vars:
        return f
    key = (f, name, value)
    cached = _COFACTORS.get(key)
    if cached is not None:
        return cached
    if isinstance(f, Lit):
        result = TRUE if f.positive == value else FALSE
    elif isinstance(f, And):
        result = and_(assign(c, name, value) for c in f.children)
    else:
        result = or_(assign(c, name, value) for c in f.children)
    _COFACTORS[key] = result
    return result


def restrict(f: Formula, assignment: Mapping[str, bool]) -> Formula:
    for name in sorted(assignment):
        f = assign(f, name, assignment[name])
    return f


def satisfies(f: Formula, true_vars: Iterable[str]) -> bool:
    """Evaluate under the assignment that sets exactly ``true_vars`` to true."""
    on = frozenset(true_vars)
    if isinstance(f, _Const):
        return f.value
    if isinstance(f, Lit):
        return (f.var in on) == f.positive
    if isinstance(f, And):
        return all(satisfies(c, on) for c in f.children)
    return any(satisfies(c, on) for c in f.children)


def models(f: Formula, variables: Sequence[str]) -> Iterator[frozenset[str]]:
    """Enumerate satisfying assignments over the given variables (truth table)."""
    names = sorted(set(variables))
    if not set(f.vars) <= set(names):
        raise ValueError(f"formula mentions variables outside {names}")
    for mask in range(1 << len(names)):
        on = frozenset(names[i] for i in range(len(names)) if mask >> i & 1)
        if satisfies(f, on):
            yield on
