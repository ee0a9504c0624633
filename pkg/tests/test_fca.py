"""Contexts, derivation, next-closure enumeration, and the implication basis.

The heavy checks compare against the brute-force oracles in oracles.py; the
worked examples freeze values that were computed there first.
"""

import random

import pytest
from hypothesis import given, settings, strategies as st

from kbcomplete import FormalContext, Implication, explore, holds_in, stem_base
from kbcomplete.errors import ClosureContractError, CounterexampleError, InputError
from kbcomplete.fca import (
    Counterexample,
    closed_sets,
    context_closure,
    derive_extent,
    derive_intent,
    implication_closure,
    next_closed,
)

import oracles


def small_context() -> FormalContext:
    ctx = FormalContext(["a", "b", "c"])
    ctx.add_object("g1", ["b"])
    ctx.add_object("g2", ["a", "b"])
    ctx.add_object("g3", ["b", "c"])
    return ctx


def contexts(seed: int, count: int, **kwargs):
    rng = random.Random(seed)
    return [oracles.random_context(rng, **kwargs) for _ in range(count)]


class TestContext:
    def test_rows_and_attributes(self):
        ctx = small_context()
        assert ctx.attributes == ("a", "b", "c")
        assert ctx.objects == ("g1", "g2", "g3")
        assert ctx.row("g2") == frozenset({"a", "b"})

    def test_duplicate_object_rejected(self):
        ctx = small_context()
        with pytest.raises(InputError):
            ctx.add_object("g1", ["a"])

    def test_unknown_attribute_rejected(self):
        ctx = small_context()
        with pytest.raises(InputError):
            ctx.add_object("g4", ["z"])

    def test_duplicate_attribute_rejected(self):
        with pytest.raises(InputError):
            FormalContext(["a", "a"])


class TestDerivation:
    def test_worked_example(self):
        ctx = small_context()
        assert derive_intent(ctx, ["g1", "g2"]) == frozenset({"b"})
        assert derive_extent(ctx, ["b", "c"]) == frozenset({"g3"})
        assert context_closure(ctx, ["a"]) == frozenset({"a", "b"})
        assert context_closure(ctx, []) == frozenset({"b"})

    def test_matches_brute_force(self):
        for ctx in contexts(seed=1001, count=40, max_objects=5, max_attributes=5):
            for s in oracles.powerset(ctx.attributes):
                assert derive_extent(ctx, s) == oracles.brute_extent(ctx, s)
                assert context_closure(ctx, s) == oracles.brute_closure(ctx, s)

    def test_galois_connection_exhaustive(self):
        # B <= A' iff A <= B' for every pair, on a handful of 5x5 contexts.
        for ctx in contexts(seed=77, count=8, max_objects=5, max_attributes=5):
            attr_sets = oracles.powerset(ctx.attributes)
            obj_sets = oracles.powerset(ctx.objects)
            for a in obj_sets:
                for b in attr_sets:
                    assert (b <= derive_intent(ctx, a)) == (a <= derive_extent(ctx, b))

    def test_closure_is_extensive_monotone_idempotent(self):
        for ctx in contexts(seed=5, count=30):
            sets = oracles.powerset(ctx.attributes)
            rng = random.Random(9)
            for s in rng.sample(sets, min(8, len(sets))):
                closed = context_closure(ctx, s)
                assert s <= closed
                assert context_closure(ctx, closed) == closed
            for s in rng.sample(sets, min(6, len(sets))):
                for t in rng.sample(sets, min(6, len(sets))):
                    if s <= t:
                        assert context_closure(ctx, s) <= context_closure(ctx, t)


class TestNextClosed:
    def test_worked_sequence(self):
        # Frozen from the brute-force enumeration of the worked example.
        ctx = small_context()
        seq = list(closed_sets(lambda s: context_closure(ctx, s), ctx.attributes))
        assert seq == [
            frozenset({"b"}),
            frozenset({"b", "c"}),
            frozenset({"a", "b"}),
            frozenset({"a", "b", "c"}),
        ]

    def test_enumerates_brute_closed_sets_in_lectic_order(self):
        # Acceptance-scale sweep lives in test_acceptance; this is the dev loop.
        for ctx in contexts(seed=2024, count=60):
            got = list(closed_sets(lambda s: context_closure(ctx, s), ctx.attributes))
            assert got == oracles.brute_closed_sets(ctx)

    def test_next_closed_from_arbitrary_point(self):
        ctx = small_context()
        assert next_closed(lambda s: context_closure(ctx, s), frozenset({"b"}),
                           ctx.attributes) == frozenset({"b", "c"})
        assert next_closed(lambda s: context_closure(ctx, s), frozenset({"a", "b", "c"}),
                           ctx.attributes) is None

    def test_closure_contract_enforced(self):
        # A shrinking "closure" violates extensivity and must be reported.
        with pytest.raises(ClosureContractError):
            list(closed_sets(lambda s: frozenset(), ["a", "b"]))

    def test_non_idempotent_closure_reported(self):
        state = {"calls": 0}

        def alternating(s):
            state["calls"] += 1
            return frozenset(s) | {"b"} if state["calls"] % 2 else frozenset(s) | {"a", "b"}

        with pytest.raises(ClosureContractError):
            list(closed_sets(alternating, ["a", "b"]))


class TestImplicationClosure:
    @given(st.data())
    @settings(max_examples=120, deadline=None)
    def test_matches_naive_fixpoint(self, data):
        universe = ["a", "b", "c", "d", "e"][: data.draw(st.integers(1, 5))]
        subsets = st.frozensets(st.sampled_from(universe))
        imps = data.draw(st.lists(st.builds(Implication, subsets, subsets), max_size=8))
        seed = data.draw(subsets)
        assert implication_closure(imps, seed) == oracles.naive_implication_closure(imps, seed)

    def test_empty_basis_is_identity(self):
        assert implication_closure([], {"x"}) == frozenset({"x"})


class TestStemBase:
    def test_worked_example(self):
        # Every object has b, so the empty set is the single pseudo-intent;
        # frozen from the definition-level oracle.
        ctx = small_context()
        assert oracles.brute_pseudo_intents(ctx) == {frozenset()}
        assert stem_base(ctx) == [Implication(frozenset(), frozenset("b"))]

    def test_sound_complete_minimal(self):
        for ctx in contexts(seed=31337, count=60):
            basis = stem_base(ctx)
            assert oracles.basis_sound(ctx, basis)
            assert oracles.basis_complete(ctx, basis)
            premises = {imp.premise for imp in basis}
            assert premises == oracles.brute_pseudo_intents(ctx)

    def test_minimum_cardinality_exhaustive(self):
        for ctx in contexts(seed=4242, count=12, max_objects=5, max_attributes=3):
            assert len(stem_base(ctx)) == oracles.minimum_basis_size(ctx)

    def test_holds_in(self):
        ctx = small_context()
        assert holds_in(ctx, Implication(frozenset("c"), frozenset("b")))
        assert not holds_in(ctx, Implication(frozenset("b"), frozenset("c")))


class _ContextOracle:
    """Expert backed by a hidden full context; counterexamples are its rows."""

    def __init__(self, ctx: FormalContext, mangle=None):
        self.ctx = ctx
        self.mangle = mangle
        self.asked = 0

    def ask(self, question):
        self.asked += 1
        for obj in self.ctx.objects:
            row = self.ctx.row(obj)
            if question.premise <= row and not question.conclusion <= row:
                if self.mangle is not None:
                    mangled = self.mangle(self, obj, row)
                    if mangled is not None:
                        return mangled
                return Counterexample(f"{obj}@{self.asked}", row)
        return None


class TestExplore:
    def test_always_yes_expert_reproduces_stem_base(self):
        for ctx in contexts(seed=88, count=25):

            class Yes:
                def ask(self, question):
                    return None

            result = explore(ctx.copy(), Yes())
            assert result.implications == stem_base(ctx)
            assert result.context == ctx

    def test_oracle_expert_learns_hidden_context_theory(self):
        for hidden in contexts(seed=99, count=25, max_objects=5, max_attributes=5):
            visible = FormalContext(hidden.attributes)
            result = explore(visible, _ContextOracle(hidden))
            for s in oracles.powerset(hidden.attributes):
                assert (
                    oracles.naive_implication_closure(result.implications, s)
                    == oracles.brute_closure(hidden, s)
                )

    def test_background_implications_are_honored(self):
        ctx = small_context()
        background = stem_base(ctx)

        class Count:
            asked = 0

            def ask(self, question):
                Count.asked += 1
                return None

        result = explore(ctx.copy(), Count(), background=background)
        assert result.implications == []
        assert Count.asked == 0

    def test_invalid_counterexample_requeried(self):
        hidden = small_context()

        def lie_once(expert, obj, row):
            if expert.asked == 1 and not hasattr(expert, "lied"):
                expert.lied = True
                return Counterexample("liar", frozenset(hidden.attributes))
            return None

        visible = FormalContext(hidden.attributes)
        result = explore(visible, _ContextOracle(hidden, mangle=lie_once))
        assert "liar" not in result.context.objects

    def test_persistent_liar_rejected(self):
        hidden = small_context()

        def always_lie(expert, obj, row):
            return Counterexample("liar", frozenset(hidden.attributes))

        with pytest.raises(CounterexampleError):
            explore(FormalContext(hidden.attributes), _ContextOracle(hidden, mangle=always_lie))


class TestLecticOrder:
    def test_matches_definition(self):
        rng = random.Random(7)
        universe = ["a", "b", "c", "d"]
        cmp = oracles.lectic_cmp_key(universe)
        from kbcomplete.attrsets import AttributeOrder

        ao = AttributeOrder(universe)
        sets = oracles.powerset(universe)
        for _ in range(300):
            x, y = rng.choice(sets), rng.choice(sets)
            assert ao.lectic_less(ao.mask(x), ao.mask(y)) == (cmp(x, y) < 0)
