"""Bottom-up circuit evaluation over commutative semirings.

On a smooth deterministic decomposable circuit, a single pass that maps
literals through a labelling function, disjunctions through the semiring
addition and conjunctions through its multiplication computes the algebraic
model count. The probability and counting instances are provided; query
conditioning reuses the same compiled circuit.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Callable, Iterable, Mapping

from .errors import InputError

if TYPE_CHECKING:
    from .circuit import Circuit


@dataclass(frozen=True)
class Semiring:
    """Commutative semiring: (plus, zero) and (times, one), times distributing."""

    name: str
    plus: Callable[[Any, Any], Any]
    times: Callable[[Any, Any], Any]
    zero: Any
    one: Any


PROBABILITY = Semiring("probability", operator.add, operator.mul, 0.0, 1.0)
COUNTING = Semiring("counting", operator.add, operator.mul, 0, 1)


class Labelling:
    """Total map from literals to semiring values."""

    def __init__(self, values: Mapping[tuple[str, bool], Any]):
        self._values = dict(values)

    def __call__(self, var: str, positive: bool) -> Any:
        try:
            return self._values[(var, positive)]
        except KeyError:
            sign = "" if positive else "~"
            raise InputError(f"missing label for literal {sign}{var}") from None

    @classmethod
    def from_point_probabilities(cls, weights: Mapping[str, float]) -> "Labelling":
        """Probability labelling with complementary negative literals."""
        values: dict[tuple[str, bool], float] = {}
        for name, p in weights.items():
            p = float(p)
            if not 0.0 <= p <= 1.0:
                raise InputError(f"probability for {name!r} out of [0,1]: {p}")
            values[(name, True)] = p
            values[(name, False)] = 1.0 - p
        return cls(values)

    @classmethod
    def constant(cls, variables: Iterable[str], value: Any) -> "Labelling":
        """Label every literal of the given variables with one value."""
        return cls({(v, s): value for v in variables for s in (True, False)})


def evaluate(circuit: "Circuit", semiring: Semiring, labelling: Labelling) -> Any:
    """One bottom-up pass; children precede parents in circuit storage."""
    values: list[Any] = []
    plus, times = semiring.plus, semiring.times
    for node in circuit.nodes:
        if node.kind == "true":
            values.append(semiring.one)
        elif node.kind == "false":
            values.append(semiring.zero)
        elif node.kind == "lit":
            values.append(labelling(node.var, node.positive))
        elif node.kind == "and":
            acc = semiring.one
            for c in node.children:
                acc = times(acc, values[c])
            values.append(acc)
        else:
            acc = semiring.zero
            for c in node.children:
                acc = plus(acc, values[c])
            values.append(acc)
    return values[circuit.root]


def amc_query(
    circuit: "Circuit",
    query: Mapping[str, bool] | Iterable[tuple[str, bool]],
    semiring: Semiring,
    labelling: Labelling,
) -> Any:
    """Evaluate with the query literals forced true (their negations zeroed)."""
    from .circuit import condition

    return evaluate(condition(circuit, query), semiring, labelling)
