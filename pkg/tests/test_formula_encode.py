"""Formula normalization and the three semantics encodings."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pargue import (
    FALSE,
    TRUE,
    ArgumentationFramework,
    CapacityError,
    InputError,
    Semantics,
    and_,
    encode,
    encode_constellation,
    encode_enumerative,
    extensions,
    lit,
    models,
    not_,
    or_,
    restrict,
    satisfies,
    subgraph_extensions,
    var,
)
from pargue.formula import assign

from conftest import frameworks

DIRECT = [Semantics.CF, Semantics.AD, Semantics.CO, Semantics.ST]


def model_set(f, names):
    return {tuple(sorted(m)) for m in models(f, names)}


@st.composite
def formulas(draw, names=("a", "b", "c", "d")):
    base = st.one_of(
        st.sampled_from([TRUE, FALSE]),
        st.builds(lit, st.sampled_from(list(names)), st.booleans()),
    )

    def extend(children):
        return st.one_of(
            st.builds(lambda cs: and_(cs), st.lists(children, min_size=0, max_size=3)),
            st.builds(lambda cs: or_(cs), st.lists(children, min_size=0, max_size=3)),
            st.builds(not_, children),
        )

    return draw(st.recursive(base, extend, max_leaves=12))


class TestNormalization:
    def test_empty_connectives(self):
        assert and_([]) is TRUE
        assert or_([]) is FALSE

    def test_neutral_and_absorbing(self):
        a = var("a")
        assert and_([a, TRUE]) is a
        assert and_([a, FALSE]) is FALSE
        assert or_([a, FALSE]) is a
        assert or_([a, TRUE]) is TRUE

    def test_flattening_and_dedupe(self):
        a, b, c = var("a"), var("b"), var("c")
        assert and_([a, and_([b, c])]) is and_([a, b, c])
        assert or_([a, a, b]) is or_([b, a])

    def test_complementary_literals(self):
        a = var("a")
        assert and_([a, not_(a)]) is FALSE
        assert or_([a, not_(a)]) is TRUE

    def test_interning(self):
        one = and_([var("a"), lit("b", False)])
        two = and_([lit("b", False), var("a")])
        assert one is two

    def test_negation_is_involution(self):
        f = or_([and_([var("a"), lit("b", False)]), var("c")])
        assert not_(not_(f)) is f

    def test_vars(self):
        f = or_([and_([var("a"), lit("b", False)]), var("c")])
        assert f.vars == {"a", "b", "c"}

    def test_assign(self):
        f = or_([and_([var("a"), var("b")]), var("c")])
        assert assign(f, "c", True) is TRUE
        assert assign(f, "c", False) is and_([var("a"), var("b")])
        assert assign(f, "z", True) is f

    def test_restrict(self):
        f = and_([var("a"), or_([var("b"), var("c")])])
        assert restrict(f, {"a": True, "b": False}) is var("c")

    @given(formulas(), st.sampled_from(["a", "b", "c", "d"]), st.booleans())
    def test_assign_agrees_with_semantics(self, f, name, value):
        g = assign(f, name, value)
        assert name not in g.vars
        names = ["a", "b", "c", "d"]
        for m in models(f, names):
            if (name in m) == value:
                assert satisfies(g, m - {name})
        for m in models(g, [n for n in names if n != name]):
            with_name = m | {name} if value else m
            assert satisfies(f, with_name)


class TestDirectEncodings:
    def test_worked_example_admissible_theory(self, example_af):
        # equivalent to (c > ~a) & (c > ~b) & (d > (a | b)) & ~c
        a, b, c, d = map(var, "abcd")
        target = and_(
            [
                or_([not_(c), not_(a)]),
                or_([not_(c), not_(b)]),
                or_([not_(d), or_([a, b])]),
                not_(c),
            ]
        )
        assert model_set(encode(example_af, Semantics.AD), "abcd") == model_set(
            target, "abcd"
        )

    def test_stable_without_attacks_forces_everything(self):
        af = ArgumentationFramework(["a", "b", "c"])
        assert encode(af, Semantics.ST) is and_([var("a"), var("b"), var("c")])

    def test_self_attack(self):
        af = ArgumentationFramework(["a"], [("a", "a")])
        assert model_set(encode(af, Semantics.CF), "a") == {()}
        assert model_set(encode(af, Semantics.AD), "a") == {()}
        assert encode(af, Semantics.ST) is FALSE

    def test_no_direct_encoding_for_grounded_or_preferred(self, example_af):
        for semantics in (Semantics.GR, Semantics.PR):
            with pytest.raises(InputError):
                encode(example_af, semantics)

    @given(frameworks())
    def test_models_are_extensions(self, af):
        for semantics in DIRECT:
            got = model_set(encode(af, semantics), af.arguments)
            want = {tuple(sorted(e)) for e in extensions(af, semantics)}
            assert got == want, semantics

    @given(frameworks())
    def test_variables_stay_inside_framework(self, af):
        for semantics in DIRECT:
            assert encode(af, semantics).vars <= set(af.arguments)


class TestEnumerativeEncoding:
    def test_grounded_single_full_conjunction(self, example_af):
        f = encode_enumerative(example_af, Semantics.GR)
        assert model_set(f, "abcd") == {("a", "b", "d")}

    def test_chain_preferred(self, chain_af):
        f = encode_enumerative(chain_af, Semantics.PR)
        assert model_set(f, "abc") == {("a", "c")}

    def test_no_extension_is_false(self):
        af = ArgumentationFramework(["a"], [("a", "a")])
        assert encode_enumerative(af, Semantics.ST) is FALSE

    @given(frameworks())
    def test_matches_direct_encodings(self, af):
        for semantics in DIRECT:
            direct = model_set(encode(af, semantics), af.arguments)
            listed = model_set(encode_enumerative(af, semantics), af.arguments)
            assert direct == listed

    @given(frameworks())
    def test_every_semantics(self, af):
        for semantics in Semantics:
            got = model_set(encode_enumerative(af, semantics), af.arguments)
            want = {tuple(sorted(e)) for e in extensions(af, semantics)}
            assert got == want


class TestConstellationEncoding:
    def test_chain_grounded_query(self, chain_af):
        # c is grounded-accepted in subgraphs {c}, {a,b,c}, {a,c}... checked
        # against the definitional per-subgraph route below; the frozen model
        # set here is the independent expectation.
        f = encode_constellation(chain_af, Semantics.GR, "c")
        assert model_set(f, "abc") == {("c",), ("a", "c"), ("a", "b", "c")}

    def test_unattacked_argument_all_subgraphs_containing_it(self, example_af):
        f = encode_constellation(example_af, Semantics.AD, "a")
        got = model_set(f, "abcd")
        assert len(got) == 8
        assert all("a" in m for m in got)

    def test_self_attacker_never_accepted(self):
        af = ArgumentationFramework(["a"], [("a", "a")])
        assert encode_constellation(af, Semantics.AD, "a") is FALSE

    def test_unknown_argument(self, example_af):
        with pytest.raises(InputError):
            encode_constellation(example_af, Semantics.AD, "z")

    def test_capacity(self):
        af = ArgumentationFramework([f"x{i}" for i in range(21)])
        with pytest.raises(CapacityError):
            encode_constellation(af, Semantics.AD, "x0")

    @given(frameworks(max_args=5))
    def test_models_are_accepting_subgraphs(self, af):
        names = list(af.arguments)
        for semantics in Semantics:
            for name in names:
                f = encode_constellation(af, semantics, name)
                got = model_set(f, names)
                want = set()
                for mask in range(1 << len(names)):
                    members = {names[i] for i in range(len(names)) if mask >> i & 1}
                    if name in members and any(
                        name in e
                        for e in subgraph_extensions(af, members, semantics)
                    ):
                        want.add(tuple(sorted(members)))
                assert got == want
