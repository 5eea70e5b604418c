import json
from itertools import product

import pytest

from modalwb.models import (
    BoundedModel,
    ClassicalModel,
    InformationModel,
    InvalidModelError,
    accessible_refinements,
    drop_world,
    enumerate_bounded_models,
    enumerate_classical_models,
    enumerate_information_models,
    from_json_dict,
    full_mask,
    is_accessible,
    is_internally_coherent,
    is_subset,
    load_model,
    mask_of,
    permute_worlds,
    save_model,
    submasks,
    to_json_dict,
    validate,
    worlds_in,
)


def two_world_split() -> BoundedModel:
    # p at world 0; every world sees only itself
    return BoundedModel(
        InformationModel(2, {"p": 0b01}), (0b01, 0b10), {1: (0b01, 0b10)}
    )


def test_mask_helpers():
    assert mask_of([0, 2]) == 0b101
    assert worlds_in(0b101) == [0, 2]
    assert full_mask(3) == 0b111
    assert is_subset(0b101, 0b111) and not is_subset(0b101, 0b011)
    assert list(submasks(0b101)) == [0b000, 0b001, 0b100, 0b101]


def test_information_model_validation():
    with pytest.raises(ValueError):
        InformationModel(0, {})
    with pytest.raises(ValueError):
        InformationModel(2, {"p": 0b100})  # unknown world
    with pytest.raises(ValueError):
        InformationModel(2, {"P": 0b01})  # bad atom name
    m = InformationModel(2, {"q": 0b01, "p": 0b10})
    assert m.atoms == ("p", "q")


def test_validate_clauses():
    assert validate(two_world_split()) is None
    base = InformationModel(2, {"p": 0b01})

    v = validate(BoundedModel(base, (0b01, 0b10), {1: (0b01, 0b01)}))
    assert v is not None and v.clause == "k-veridicality" and v.world == 1

    v = validate(BoundedModel(base, (0b10, 0b10), {1: (0b01, 0b10)}))
    assert v is not None and v.clause == "i-veridicality" and v.world == 0

    # world 1 carries world 0 in its information, but i^0 is not inside i^1
    v = validate(BoundedModel(base, (0b11, 0b11), {1: (0b11, 0b11)}))
    assert v is None  # that one is fine: i^0 = i^1 = {0,1}
    v = validate(BoundedModel(base, (0b01, 0b11), {1: (0b01, 0b11)}))
    assert v is None  # i^0 = {0} is inside i^1
    v = validate(
        BoundedModel(
            InformationModel(3, {"p": 0}),
            (0b011, 0b010, 0b111),
            {1: (0b011, 0b010, 0b111)},
        )
    )
    # i^2 = {0,1,2} contains 0 whose information {0,1} fits, fine; but
    # i^0 = {0,1} contains 1 with i^1 = {1} inside, fine too
    assert v is None
    v = validate(
        BoundedModel(
            InformationModel(3, {"p": 0}),
            (0b011, 0b110, 0b100),
            {1: (0b001, 0b010, 0b100)},
        )
    )
    assert v is not None and v.clause == "i-coherence" and (v.world, v.other) == (0, 1)

    # k must be closed under worldly information of its members
    v = validate(BoundedModel(base, (0b01, 0b11), {1: (0b01, 0b10)}))
    assert v is not None and v.clause == "k-coherence" and v.world == 1

    v = validate(ClassicalModel(base, (0b01, 0b01)))
    assert v is not None and v.clause == "k-veridicality" and v.world == 1
    assert validate(ClassicalModel(base, (0b11, 0b10))) is None


def test_internal_coherence():
    m = two_world_split()
    assert not is_internally_coherent(0, m)
    for w in range(2):
        assert is_internally_coherent(m.ifun[w], m)
    assert is_internally_coherent(0b11, m)

    nested = BoundedModel(
        InformationModel(2, {"p": 0}), (0b11, 0b10), {1: (0b11, 0b10)}
    )
    assert validate(nested) is None
    assert not is_internally_coherent(0b01, nested)  # i^0 = {0,1} leaks out
    assert is_internally_coherent(0b10, nested)
    assert is_internally_coherent(0b11, nested)


def test_accessibility():
    m = two_world_split()
    assert is_accessible(m.ifun[0], 0, m)
    assert not is_accessible(0, 0, m)
    assert is_accessible(0b01, 0, m)
    assert not is_accessible(0b01, 1, m)  # not veridical at 1


def test_accessible_refinements_against_definition():
    # oracle: filter subsets by the definition, written out independently
    def oracle(i, m):
        out = set()
        for j in submasks(i):
            if any(
                (j >> w & 1) and j != 0 and all(is_subset(m.ifun[u], j) for u in worlds_in(j))
                for w in worlds_in(i)
            ):
                out.add(j)
        return out

    m = two_world_split()
    assert accessible_refinements(0b11, m) == {0b01, 0b10, 0b11}
    assert accessible_refinements(0b01, m) == {0b01}
    for model in enumerate_bounded_models(2, ("p",)):
        for i in range(4):
            assert accessible_refinements(i, model) == oracle(i, model)
    assert 0 not in accessible_refinements(0b11, m)

    # contains the worldly information of every member, and i itself when coherent
    for model in enumerate_bounded_models(2, ("p",)):
        for i in range(1, 4):
            if is_internally_coherent(i, model):
                acc = accessible_refinements(i, model)
                assert i in acc
                for u in worlds_in(i):
                    assert model.ifun[u] in acc


def test_enumerate_information_models():
    assert len(list(enumerate_information_models(1, ("p",)))) == 2
    assert len(list(enumerate_information_models(2, ("p",)))) == 4
    ms = list(enumerate_information_models(3, ("p", "q")))
    assert len(ms) == 64
    # lexicographic in (p, q) masks
    assert [m.valuation["p"] for m in ms[:9]] == [0] * 8 + [1]
    assert [m.valuation["q"] for m in ms[:3]] == [0, 1, 2]
    with pytest.raises(ValueError):
        list(enumerate_information_models(17, ("p",)))


def test_enumerate_classical_models():
    ms = list(enumerate_classical_models(1, ("p",)))
    assert len(ms) == 2 and all(m.k == (0b1,) for m in ms)
    ms = list(enumerate_classical_models(2, ("p",)))
    # 2 k-choices per world, 4 valuations
    assert len(ms) == 4 * 4
    assert all(validate(m) is None for m in ms)
    assert len({(m.k, m.valuation["p"]) for m in ms}) == 16


def test_enumerate_bounded_models_small():
    ms = list(enumerate_bounded_models(1, ("p",)))
    assert len(ms) == 2
    assert all(m.ifun == (0b1,) and m.kfun[1] == (0b1,) for m in ms)

    ms = list(enumerate_bounded_models(2, ("p",)))
    assert len(ms) == 36  # regression constant, cross-checked below
    assert all(validate(m) is None for m in ms)
    keys = [(m.ifun, m.kfun[1], m.valuation["p"]) for m in ms]
    assert len(set(keys)) == len(keys)
    assert keys == [(m.ifun, m.kfun[1], m.valuation["p"]) for m in enumerate_bounded_models(2, ("p",))]


def test_enumerate_bounded_models_matches_naive_filter():
    # independent oracle: try every pair of functions from worlds to
    # nonempty states and keep what validates
    n = 2
    nonempty = [m for m in range(1, 4)]
    expected = set()
    for ifun in product(nonempty, repeat=n):
        for kfun in product(nonempty, repeat=n):
            for val in range(4):
                m = BoundedModel(InformationModel(n, {"p": val}), ifun, {1: kfun})
                if validate(m) is None:
                    expected.add((ifun, kfun, val))
    got = {
        (m.ifun, m.kfun[1], m.valuation["p"]) for m in enumerate_bounded_models(2, ("p",))
    }
    assert got == expected
    assert len(got) == 36


def test_enumerate_bounded_models_counts_n3():
    # frozen regression constants (naive-filter checked at n=2 above)
    ms = list(enumerate_bounded_models(3, ("p",)))
    assert len(ms) == 2896
    assert len(list(enumerate_bounded_models(3, ("p", "q")))) == 23168
    assert all(validate(m) is None for m in ms[::97])


def test_enumerate_bounded_models_multi_agent():
    ms = list(enumerate_bounded_models(2, ("p",), agents=(1, 2)))
    # per ifun the agents choose independently: sum of squares, times valuations
    assert len(ms) == (16 + 4 + 4 + 1) * 4
    assert all(validate(m) is None for m in ms)


def test_enumeration_cap(monkeypatch):
    with pytest.raises(ValueError):
        list(enumerate_bounded_models(5, ("p",)))
    monkeypatch.setenv("MODAL_WB_MAX_WORLDS", "2")
    with pytest.raises(ValueError):
        list(enumerate_bounded_models(3, ("p",)))
    monkeypatch.setenv("MODAL_WB_MAX_WORLDS", "5")
    gen = enumerate_bounded_models(5, ("p",))
    next(gen)  # cap lifted


def test_json_roundtrip(tmp_path):
    m = two_world_split()
    data = to_json_dict(m)
    assert data == {
        "worlds": 2,
        "valuation": {"p": [0]},
        "ifun": {"0": [0], "1": [1]},
        "kfun": {"1": {"0": [0], "1": [1]}},
    }
    assert from_json_dict(data) == m

    c = ClassicalModel(InformationModel(2, {"p": 0b10}), (0b11, 0b10))
    assert to_json_dict(c)["k"] == {"0": [0, 1], "1": [1]}
    assert from_json_dict(to_json_dict(c)) == c

    i = InformationModel(1, {"p": 1})
    assert from_json_dict(to_json_dict(i)) == i

    path = tmp_path / "model.json"
    save_model(m, str(path))
    assert load_model(str(path)) == m


def test_json_rejects_invalid():
    bad = {
        "worlds": 2,
        "valuation": {"p": [0]},
        "ifun": {"0": [0], "1": [1]},
        "kfun": {"1": {"0": [0], "1": [0]}},  # not veridical at 1
    }
    with pytest.raises(InvalidModelError) as err:
        from_json_dict(bad)
    assert err.value.violation.clause == "k-veridicality"
    with pytest.raises(ValueError):
        from_json_dict({"worlds": 2, "valuation": {"p": [5]}})
    with pytest.raises(ValueError):
        from_json_dict({"worlds": 2, "valuation": {"p": [0]}, "ifun": {"0": [0], "1": [1]}})
    with pytest.raises(ValueError):
        from_json_dict({"valuation": {}})


def test_json_is_serializable():
    m = two_world_split()
    text = json.dumps(to_json_dict(m), sort_keys=True)
    assert from_json_dict(json.loads(text)) == m


def test_drop_world():
    m = two_world_split()
    d = drop_world(m, 1)
    assert d.world_count == 1
    assert d.valuation["p"] == 0b1
    assert d.ifun == (0b1,) and d.kfun[1] == (0b1,)
    assert validate(d) is None
    # dropping a world another world depends on leaves an invalid model
    chain = BoundedModel(
        InformationModel(2, {"p": 0}), (0b01, 0b11), {1: (0b01, 0b11)}
    )
    assert validate(chain) is None
    broken = drop_world(chain, 0)
    assert validate(broken) is None  # {1} shrinks to a singleton, still fine
    with pytest.raises(ValueError):
        drop_world(d, 0)


def test_permute_worlds():
    m = BoundedModel(
        InformationModel(2, {"p": 0b01}), (0b01, 0b11), {1: (0b11, 0b11)}
    )
    swapped = permute_worlds(m, (1, 0))
    assert swapped.valuation["p"] == 0b10
    assert swapped.ifun == (0b11, 0b10)
    assert permute_worlds(swapped, (1, 0)) == m
