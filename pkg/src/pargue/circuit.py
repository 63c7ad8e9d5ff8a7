"""Compilation of formulas into smooth deterministic decomposable circuits.

The compiler runs Shannon expansion over a fixed variable order (sorted
argument ids), with unit propagation and a cache keyed on the simplified
subformula, so shared subproblems become shared circuit nodes. Disjunctions
always branch on a decision variable, which gives determinism by
construction; decomposability falls out of conditioning; smoothing is a
separate rewrite that pads branches with (v or not v) gap nodes.

Circuits are immutable node arrays where children precede parents, the
format used by the standard `.nnf` file layout this module also emits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterable, Mapping

from .errors import CapacityError, InputError, StructuralError
from .formula import FALSE, TRUE, And, Formula, Lit, and_, assign

MAX_COMPILE_VARIABLES = 25
# Exact determinism validation enumerates full truth tables up to this width.
MAX_EXACT_CHECK_VARIABLES = 20


@dataclass(frozen=True)
class Node:
    """One circuit node; ``children`` are indices of earlier nodes.

    ``var``/``positive`` are used by literal nodes, ``decision`` records the
    branch variable of disjunctions introduced by Shannon expansion.
    """

    kind: str  # "true" | "false" | "lit" | "and" | "or"
    var: str | None = None
    positive: bool = True
    children: tuple[int, ...] = ()
    decision: str | None = None


@dataclass(frozen=True)
class Circuit:
    nodes: tuple[Node, ...]
    root: int
    variables: tuple[str, ...]
    smoothed: bool = False

    @property
    def edge_count(self) -> int:
        return sum(len(n.children) for n in self.nodes)


class _Builder:
    """Append-only node arena with structural hash-consing."""

    def __init__(self) -> None:
        self.nodes: list[Node] = []
        self._memo: dict[Node, int] = {}

    def _add(self, node: Node) -> int:
        index = self._memo.get(node)
        if index is None:
            index = len(self.nodes)
            self.nodes.append(node)
            self._memo[node] = index
        return index

    def true(self) -> int:
        return self._add(Node("true"))

    def false(self) -> int:
        return self._add(Node("false"))

    def literal(self, var: str, positive: bool) -> int:
        return self._add(Node("lit", var=var, positive=positive))

    def conj(self, children: Iterable[int]) -> int:
        flat: list[int] = []
        for c in children:
            node = self.nodes[c]
            if node.kind == "true":
                continue
            if node.kind == "false":
                return self.false()
            if node.kind == "and":
                flat.extend(node.children)
            else:
                flat.append(c)
        flat = list(dict.fromkeys(flat))
        if not flat:
            return self.true()
        if len(flat) == 1:
            return flat[0]
        return self._add(Node("and", children=tuple(flat)))

    def disj(self, children: Iterable[int], decision: str | None = None) -> int:
        kept: list[int] = []
        for c in children:
            node = self.nodes[c]
            if node.kind == "false":
                continue
            if node.kind == "true":
                return self.true()
            kept.append(c)
        kept = list(dict.fromkeys(kept))
        if not kept:
            return self.false()
        if len(kept) == 1:
            return kept[0]
        return self._add(Node("or", children=tuple(kept), decision=decision))


def compile_formula(f: Formula, variables: Iterable[str] | None = None) -> Circuit:
    """Compile to a smooth deterministic decomposable circuit.

    ``variables`` widens the declared variable set beyond vars(f); smoothing
    then covers the extras, so model counts range over the full set.
    """
    declared = tuple(sorted(set(variables))) if variables is not None else tuple(sorted(f.vars))
    extra = f.vars - set(declared)
    if extra:
        raise InputError(f"formula mentions undeclared variables {sorted(extra)}")
    if len(declared) > MAX_COMPILE_VARIABLES:
        raise CapacityError(
            f"compilation supports at most {MAX_COMPILE_VARIABLES} variables, "
            f"got {len(declared)}"
        )

    builder = _Builder()
    seen: dict[Formula, int] = {}

    def build(g: Formula) -> int:
        if g is TRUE:
            return builder.true()
        if g is FALSE:
            return builder.false()
        cached = seen.get(g)
        if cached is not None:
            return cached
        if isinstance(g, Lit):
            result = builder.literal(g.var, g.positive)
        else:
            units = (
                [c for c in g.children if isinstance(c, Lit)]
                if isinstance(g, And)
                else []
            )
            if units:
                # Unit propagation: peel forced literals, condition the rest.
                rest = and_(c for c in g.children if not isinstance(c, Lit))
                for u in units:
                    rest = assign(rest, u.var, u.positive)
                parts = [builder.literal(u.var, u.positive) for u in units]
                parts.append(build(rest))
                result = builder.conj(parts)
            else:
                v = min(g.vars)
                high = builder.conj([builder.literal(v, True), build(assign(g, v, True))])
                low = builder.conj([builder.literal(v, False), build(assign(g, v, False))])
                result = builder.disj([high, low], decision=v)
        seen[g] = result
        return result

    root = build(f)
    raw = Circuit(tuple(builder.nodes), root, declared, smoothed=False)
    return smooth(raw, declared)


def _varsets(circuit: Circuit) -> list[frozenset[str]]:
    sets: list[frozenset[str]] = []
    for node in circuit.nodes:
        if node.kind == "lit":
            sets.append(frozenset((node.var,)))
        elif node.children:
            sets.append(frozenset().union(*(sets[c] for c in node.children)))
        else:
            sets.append(frozenset())
    return sets


def smooth(circuit: Circuit, variables: Iterable[str] | None = None) -> Circuit:
    """Rewrite so every disjunction's branches mention the same variables.

    Missing variables are padded in with (v or not v) gap nodes; the root is
    padded up to the declared set. Model counts over the declared set are
    unchanged. The rebuild also drops unreachable nodes.
    """
    declared = (
        tuple(sorted(set(variables))) if variables is not None else circuit.variables
    )
    sets = _varsets(circuit)
    extra = sets[circuit.root] - set(declared)
    if extra:
        raise InputError(f"circuit mentions undeclared variables {sorted(extra)}")

    builder = _Builder()
    rebuilt: dict[int, int] = {}
    gaps: dict[str, int] = {}

    def gap(v: str) -> int:
        node = gaps.get(v)
        if node is None:
            node = builder.disj(
                [builder.literal(v, True), builder.literal(v, False)], decision=v
            )
            gaps[v] = node
        return node

    def pad(index: int, missing: Iterable[str]) -> int:
        parts = [index]
        parts.extend(gap(v) for v in missing)
        return builder.conj(parts)

    def rebuild(i: int) -> int:
        done = rebuilt.get(i)
        if done is not None:
            return done
        node = circuit.nodes[i]
        if node.kind == "true":
            result = builder.true()
        elif node.kind == "false":
            result = builder.false()
        elif node.kind == "lit":
            result = builder.literal(node.var, node.positive)
        elif node.kind == "and":
            result = builder.conj([rebuild(c) for c in node.children])
        else:
            span = sets[i]
            branches = [
                pad(rebuild(c), sorted(span - sets[c])) for c in node.children
            ]
            result = builder.disj(branches, decision=node.decision)
        rebuilt[i] = result
        return result

    root = rebuild(circuit.root)
    root = pad(root, sorted(set(declared) - sets[circuit.root]))
    # Children precede parents, so trimming at the root drops only orphans
    # and leaves the root on the last line of the emitted format.
    return Circuit(tuple(builder.nodes[: root + 1]), root, declared, smoothed=True)


def _variable_pattern(position: int, width: int) -> int:
    # Truth-table mask (one bit per assignment) of "variable <position> is true".
    block = 1 << position
    total = 1 << width
    mask = ((1 << block) - 1) << block
    span = 2 * block
    while span < total:
        mask |= mask << span
        span *= 2
    return mask


def _truth_masks(circuit: Circuit, ids: Iterable[int], order: dict[str, int]) -> dict[int, int]:
    width = len(order)
    full = (1 << (1 << width)) - 1
    masks: dict[int, int] = {}
    for i in sorted(ids):
        node = circuit.nodes[i]
        if node.kind == "true":
            masks[i] = full
        elif node.kind == "false":
            masks[i] = 0
        elif node.kind == "lit":
            pattern = _variable_pattern(order[node.var], width)
            masks[i] = pattern if node.positive else full ^ pattern
        else:
            value = full if node.kind == "and" else 0
            for c in node.children:
                value = value & masks[c] if node.kind == "and" else value | masks[c]
            masks[i] = value
    return masks


def _closure(circuit: Circuit, start: int) -> list[int]:
    seen = {start}
    stack = [start]
    while stack:
        for c in circuit.nodes[stack.pop()].children:
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return sorted(seen)


def _guard_polarity(circuit: Circuit, index: int) -> dict[str, bool]:
    node = circuit.nodes[index]
    if node.kind == "lit":
        return {node.var: node.positive}
    guards: dict[str, bool] = {}
    if node.kind == "and":
        for c in node.children:
            child = circuit.nodes[c]
            if child.kind == "lit":
                guards[child.var] = child.positive
    return guards


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the three structural checks, with first offending nodes."""

    decomposable: bool
    deterministic: bool
    smooth: bool
    first_nondecomposable: int | None = None
    first_nondeterministic: int | None = None
    first_unsmooth: int | None = None

    @property
    def all_passed(self) -> bool:
        return self.decomposable and self.deterministic and self.smooth


def validate(circuit: Circuit) -> ValidationReport:
    """Check decomposability, determinism and smoothness of the circuit.

    Determinism is decided exactly by truth tables while the relevant
    variable sets stay at or below 20 variables; past that a structural
    complementary-guard argument is tried, and an inconclusive wide
    disjunction raises a capacity error rather than guessing.
    """
    sets = _varsets(circuit)
    reach = _closure(circuit, circuit.root)

    bad_and = None
    for i in reach:
        node = circuit.nodes[i]
        if node.kind != "and":
            continue
        seen: set[str] = set()
        for c in node.children:
            if sets[c] & seen:
                bad_and = i
                break
            seen |= sets[c]
        if bad_and is not None:
            break

    bad_smooth = None
    for i in reach:
        node = circuit.nodes[i]
        if node.kind == "or" and len({sets[c] for c in node.children}) > 1:
            bad_smooth = i
            break

    bad_or = None
    global_masks: dict[int, int] | None = None
    if len(circuit.variables) <= MAX_EXACT_CHECK_VARIABLES:
        order = {v: p for p, v in enumerate(circuit.variables)}
        global_masks = _truth_masks(circuit, reach, order)
    for i in reach:
        node = circuit.nodes[i]
        if node.kind != "or":
            continue
        if global_masks is not None:
            masks = global_masks
        elif len(sets[i]) <= MAX_EXACT_CHECK_VARIABLES:
            order = {v: p for p, v in enumerate(sorted(sets[i]))}
            masks = _truth_masks(circuit, _closure(circuit, i), order)
        else:
            masks = {}
        if masks:
            seen_mask = 0
            for c in node.children:
                if masks[c] & seen_mask:
                    bad_or = i
                    break
                seen_mask |= masks[c]
        else:
            guards = [_guard_polarity(circuit, c) for c in node.children]
            for a in range(len(guards)):
                for b in range(a + 1, len(guards)):
                    if not any(
                        guards[a].get(v) is not None and guards[a][v] != pol
                        for v, pol in guards[b].items()
                    ):
                        raise CapacityError(
                            "determinism validation needs at most "
                            f"{MAX_EXACT_CHECK_VARIABLES} variables per disjunction"
                        )
        if bad_or is not None:
            break

    return ValidationReport(
        decomposable=bad_and is None,
        deterministic=bad_or is None,
        smooth=bad_smooth is None,
        first_nondecomposable=bad_and,
        first_nondeterministic=bad_or,
        first_unsmooth=bad_smooth,
    )


def model_count(circuit: Circuit) -> int:
    """Number of satisfying assignments over the declared variables."""
    if not circuit.smoothed:
        raise StructuralError("model counting requires a smoothed circuit")
    from .semiring import COUNTING, Labelling, evaluate

    return evaluate(circuit, COUNTING, Labelling.constant(circuit.variables, 1))


def _normalize_literals(
    fixed: Mapping[str, bool] | Iterable[tuple[str, bool]], variables: tuple[str, ...]
) -> dict[str, bool]:
    items = fixed.items() if isinstance(fixed, Mapping) else fixed
    known = set(variables)
    out: dict[str, bool] = {}
    for entry in items:
        try:
            name, value = entry
        except (TypeError, ValueError):
            raise InputError(f"literal must be a (variable, polarity) pair, got {entry!r}")
        if name not in known:
            raise InputError(f"unknown variable {name!r}")
        value = bool(value)
        if name in out and out[name] != value:
            raise InputError(f"inconsistent literals for {name!r}")
        out[name] = value
    return out


def condition(
    circuit: Circuit, fixed: Mapping[str, bool] | Iterable[tuple[str, bool]]
) -> Circuit:
    """Replace literals contradicting ``fixed`` by false, keeping the shape.

    The declared variable set is unchanged, so counts and probabilities stay
    comparable with the unconditioned circuit.
    """
    forced = _normalize_literals(fixed, circuit.variables)
    if not forced:
        return circuit
    builder = _Builder()
    mapped: list[int] = []
    for node in circuit.nodes:
        if node.kind == "true":
            mapped.append(builder.true())
        elif node.kind == "false":
            mapped.append(builder.false())
        elif node.kind == "lit":
            want = forced.get(node.var)
            if want is not None and node.positive != want:
                mapped.append(builder.false())
            else:
                mapped.append(builder.literal(node.var, node.positive))
        elif node.kind == "and":
            mapped.append(builder.conj([mapped[c] for c in node.children]))
        else:
            mapped.append(builder.disj([mapped[c] for c in node.children], decision=node.decision))
    root = mapped[circuit.root]
    return Circuit(
        tuple(builder.nodes[: root + 1]), root, circuit.variables, circuit.smoothed
    )


def format_nnf(circuit: Circuit) -> str:
    """Render in the standard text format for NNF circuits.

    Header ``nnf <nodes> <edges> <vars>``; one node per line (``L``, ``A``,
    ``O``, ``T``, ``F``), children referenced by line position; variable ids
    recorded up front as ``c var <index> <id>`` comments.
    """
    index = {name: i + 1 for i, name in enumerate(circuit.variables)}
    lines = [f"nnf {len(circuit.nodes)} {circuit.edge_count} {len(circuit.variables)}"]
    lines.extend(f"c var {i + 1} {name}" for i, name in enumerate(circuit.variables))
    for node in circuit.nodes:
        if node.kind == "true":
            lines.append("T")
        elif node.kind == "false":
            lines.append("F")
        elif node.kind == "lit":
            lines.append(f"L {index[node.var] if node.positive else -index[node.var]}")
        elif node.kind == "and":
            lines.append(f"A {len(node.children)} " + " ".join(map(str, node.children)))
        else:
            decision = index[node.decision] if node.decision is not None else 0
            lines.append(
                f"O {decision} {len(node.children)} " + " ".join(map(str, node.children))
            )
    return "\n".join(lines) + "\n"


def write_nnf(circuit: Circuit, out: IO[str] | str) -> None:
    text = format_nnf(circuit)
    if isinstance(out, str):
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        out.write(text)
