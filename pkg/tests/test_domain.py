import pytest
from hypothesis import given, settings, strategies as st

from modalwb.domain import (
    KVariant,
    accepts,
    entails_acceptance,
    entails_truth,
    find_accepting_state,
    truth_at,
)
from modalwb.models import (
    ClassicalModel,
    InformationModel,
    enumerate_classical_models,
    enumerate_information_models,
    full_mask,
    worlds_in,
)
from modalwb.results import CounterExample, UnknownAgentError, UnknownAtomError, ValidUpTo
from modalwb.syntax import Know, enumerate_formulas, parse

MOD = KVariant.MODIFIED_FACTIVE


def knowledge_gap_model() -> ClassicalModel:
    # two worlds, p only at world 1, agent state at world 0 spans both
    return ClassicalModel(InformationModel(2, {"p": 0b10}), (0b11, 0b10))


def test_truth_knowledge_outruns_state():
    m = knowledge_gap_model()
    i = 0b01
    assert truth_at(m, 0, i, parse("K<>p")) is True
    assert truth_at(m, 0, i, parse("<>p")) is False
    # the factive variant closes the gap by demanding truth of the complement
    assert truth_at(m, 0, i, parse("K<>p"), MOD) is False


def test_truth_atomic_ignores_state():
    m = knowledge_gap_model()
    for w in range(2):
        expected = bool(m.valuation["p"] >> w & 1)
        for i in range(4):
            assert truth_at(m, w, i, parse("p")) is expected


def test_truth_argument_checks():
    m = knowledge_gap_model()
    with pytest.raises(UnknownAtomError):
        truth_at(m, 0, 0b01, parse("zz"))
    with pytest.raises(UnknownAgentError):
        truth_at(m, 0, 0b01, parse("K{2}p"))
    with pytest.raises(ValueError):
        truth_at(m, 5, 0b01, parse("p"))


def test_empty_state_accepts_everything():
    m = knowledge_gap_model()
    for text in ("p", "~p", "<>p", "K<>p", "p & ~p"):
        assert accepts(m, 0, parse(text)) is True


def test_no_state_accepts_might_contradictions():
    for f in (parse("p & <>~p"), parse("~p & <>p")):
        for n in range(1, 4):
            for m in enumerate_classical_models(n, ("p",)):
                for i in range(1, full_mask(n) + 1):
                    assert not accepts(m, i, f)
                    assert not accepts(m, i, f, MOD)


def test_might_contradiction_is_truth_consistent():
    # truth at a world inside a state with an outside ~p-world
    m = ClassicalModel(InformationModel(2, {"p": 0b01}), (0b01, 0b10))
    assert truth_at(m, 0, 0b11, parse("p & <>~p")) is True


def test_transparency_gap_at_acceptance_level():
    # p at world 0, q at world 1, knowledge spans both worlds everywhere
    m = ClassicalModel(InformationModel(2, {"p": 0b01, "q": 0b10}), (0b11, 0b11))
    i = 0b11
    assert accepts(m, i, parse("K~(p & q)"), MOD) is True
    assert accepts(m, i, parse("K~(p & <>q)"), MOD) is False


def test_entails_truth_examples():
    assert isinstance(entails_truth(parse("p & q"), parse("p")), ValidUpTo)
    res = entails_truth(parse("K<>p"), parse("<>p"))
    assert isinstance(res, CounterExample)
    assert res.model.world_count == 2
    # the witness genuinely refutes
    assert truth_at(res.model, res.world, res.state, parse("K<>p"))
    assert not truth_at(res.model, res.world, res.state, parse("<>p"))
    # deterministic across runs
    again = entails_truth(parse("K<>p"), parse("<>p"))
    assert (again.model, again.state, again.world) == (res.model, res.state, res.world)


def test_entails_acceptance_negative_transparency():
    for variant in (KVariant.CLASSIC, MOD):
        assert isinstance(
            entails_acceptance(parse("K~<>p"), parse("K~p"), 2, variant), ValidUpTo
        )
        assert isinstance(
            entails_acceptance(parse("K~p"), parse("K~<>p"), 2, variant), ValidUpTo
        )
    res = entails_acceptance(parse("K~(p&q)"), parse("K~(p&<>q)"), 2, MOD)
    assert isinstance(res, CounterExample)
    assert accepts(res.model, res.state, parse("K~(p&q)"), MOD)
    assert not accepts(res.model, res.state, parse("K~(p&<>q)"), MOD)


def test_find_accepting_state():
    hit = find_accepting_state(parse("p & <>q"), 2)
    assert hit is not None
    assert accepts(hit.model, hit.state, parse("p & <>q"))
    assert find_accepting_state(parse("p & ~p"), 2) is None


def _trivial_classical(base: InformationModel) -> ClassicalModel:
    return ClassicalModel(base, tuple(1 << w for w in range(base.world_count)))


def test_derived_acceptance_table():
    # acceptance of the knowledge-free fragment reduces to set talk
    neg_p, disj, might_p, neg_might_p = (
        parse("~p"),
        parse("p | q"),
        parse("<>p"),
        parse("~<>p"),
    )
    for n in range(1, 4):
        for base in enumerate_information_models(n, ("p", "q")):
            m = _trivial_classical(base)
            p_mask, q_mask = base.valuation["p"], base.valuation["q"]
            # the empty state accepts everything vacuously, so the
            # existential rows reduce only on nonempty states
            for i in range(1, full_mask(n) + 1):
                members = worlds_in(i)
                assert accepts(m, i, neg_p) == all(not p_mask >> w & 1 for w in members)
                split = any(
                    all(p_mask >> w & 1 for w in worlds_in(i1))
                    and all(q_mask >> w & 1 for w in worlds_in(i & ~i1))
                    for i1 in range(i + 1)
                    if i1 & ~i == 0
                )
                assert accepts(m, i, disj) == split
                assert accepts(m, i, might_p) == any(p_mask >> w & 1 for w in members)
                assert accepts(m, i, neg_might_p) == all(
                    not p_mask >> w & 1 for w in members
                )


def _might_free(formulas):
    from modalwb.syntax import Might

    def has_might(f):
        if isinstance(f, Might):
            return True
        if hasattr(f, "child"):
            return has_might(f.child)
        if hasattr(f, "left"):
            return has_might(f.left) or has_might(f.right)
        return False

    return [f for f in formulas if not has_might(f)]


def test_veridicality_for_might_free_formulas_classic():
    # knowledge of might-free claims is veridical even under the plain clause
    formulas = _might_free(enumerate_formulas(5, ("p", "q"), (1,)))
    assert len(formulas) == 202
    for f in formulas:
        kf = Know(1, f)
        for n in (1, 2):
            for m in enumerate_classical_models(n, ("p", "q")):
                for w in range(n):
                    for i in range(1, full_mask(n) + 1):
                        if truth_at(m, w, i, kf):
                            assert truth_at(m, w, i, f)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 201), st.integers(0, 4095), st.integers(0, 2), st.integers(1, 7))
def test_veridicality_might_free_classic_n3_sampled(f_idx, m_idx, w, i):
    formulas = _might_free(enumerate_formulas(5, ("p", "q"), (1,)))
    models = _CLASSICAL_N3
    f = formulas[f_idx]
    m = models[m_idx]
    if truth_at(m, w, i, Know(1, f)):
        assert truth_at(m, w, i, f)


_CLASSICAL_N3 = list(enumerate_classical_models(3, ("p", "q")))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 393), st.integers(0, 4095), st.integers(0, 2), st.integers(1, 7))
def test_modified_variant_is_veridical_sampled(f_idx, m_idx, w, i):
    formulas = list(enumerate_formulas(5, ("p", "q"), (1,)))
    f = formulas[f_idx]
    m = _CLASSICAL_N3[m_idx]
    if truth_at(m, w, i, Know(1, f), MOD):
        assert truth_at(m, w, i, f, MOD)
