import pytest

from ielprove.formula import parse, render
from ielprove.kripke import check_frame, forces
from ielprove.oracle import (
    brute_force_invalid,
    crosscheck,
    enumerate_models,
    random_formulas,
    variables,
)
from ielprove.sequent import Logic


class TestEnumerate:
    def test_single_world_counts(self):
        # With seriality a lone world must E-reach itself; without it the
        # empty relation is also allowed.
        assert len(list(enumerate_models(frozenset(), 1, Logic.IEL))) == 1
        assert len(list(enumerate_models(frozenset(), 1, Logic.IEL_MINUS))) == 2

    def test_models_pass_frame_check(self):
        for logic in Logic:
            for m in enumerate_models(frozenset({"a"}), 2, logic):
                assert check_frame(m, logic) == []

    def test_deterministic_order(self):
        first = list(enumerate_models(frozenset({"a"}), 2, Logic.IEL))
        second = list(enumerate_models(frozenset({"a"}), 2, Logic.IEL))
        assert first == second

    def test_bound_validated(self):
        with pytest.raises(ValueError):
            next(enumerate_models(frozenset(), 0, Logic.IEL))

    def test_valuations_are_persistent(self):
        for m in enumerate_models(frozenset({"a", "b"}), 2, Logic.IEL_MINUS):
            for w, v in m.leq:
                assert m.valuation[w] <= m.valuation[v]


class TestBruteForce:
    def test_classical_reflection(self):
        r = brute_force_invalid(parse("K a -> a"), 2, Logic.IEL)
        assert r.countermodel is not None
        assert r.min_depth_found == 2

    def test_co_reflection_has_no_countermodel(self):
        r = brute_force_invalid(parse("a -> K a"), 3, Logic.IEL)
        assert r.countermodel is None
        assert r.min_depth_found is None

    def test_bare_k(self):
        r = brute_force_invalid(parse("K a"), 3, Logic.IEL)
        assert r.min_depth_found == 1

    def test_countermodels_refute(self):
        for text in ("K a -> a", "K a", "K(a | b) -> (K a | K b)"):
            f = parse(text)
            r = brute_force_invalid(f, 3, Logic.IEL)
            assert r.countermodel is not None
            assert not forces(r.countermodel, r.countermodel.root, f)

    def test_first_scan_only(self):
        r = brute_force_invalid(parse("K a -> a"), 3, Logic.IEL, full_scan=False)
        assert r.countermodel is not None
        assert r.min_depth_found is None
        assert not forces(r.countermodel, r.countermodel.root, parse("K a -> a"))


class TestCrosscheck:
    def test_invalid_agreement(self):
        r = crosscheck(parse("K(a | b) -> (K a | K b)"), Logic.IEL, 3)
        assert r.consistent
        assert not r.prover_valid
        assert r.oracle.countermodel is not None

    def test_valid_agreement(self):
        r = crosscheck(parse("~~(K a -> a)"), Logic.IEL, 3)
        assert r.consistent
        assert r.prover_valid
        assert r.oracle.countermodel is None

    def test_depth_agreement_without_seriality(self):
        r = crosscheck(parse("K a -> ~~a"), Logic.IEL_MINUS, 2)
        assert r.consistent
        assert r.prover_model_depth == 1
        assert r.oracle.min_depth_found == 1

    def test_corpus(self, corpus_records):
        for valid, logic, f in corpus_records:
            r = crosscheck(f, logic, 3)
            assert r.consistent, (render(f), r.problems)
            assert r.prover_valid == valid


class TestCorpusAtBoundFour:
    def test_no_false_validity(self, corpus_records):
        # Deeper scan for the formulas the prover claims valid.
        for valid, logic, f in corpus_records:
            if not valid:
                continue
            r = brute_force_invalid(f, 4, logic)
            assert r.countermodel is None, render(f)


class TestRandomFormulas:
    def test_deterministic(self):
        assert random_formulas(30, seed=5) == random_formulas(30, seed=5)
        assert random_formulas(30, seed=5) != random_formulas(30, seed=6)

    def test_respects_bounds(self):
        from ielprove.formula import connective_count
        for f in random_formulas(200, seed=1, max_connectives=8):
            assert connective_count(f) <= 8
            assert variables(f) <= {"a", "b", "c"}
