import pytest
from hypothesis import given, strategies as st

from modalwb.syntax import (
    And,
    Atom,
    Know,
    Might,
    Neg,
    ParseError,
    agents_of,
    atoms_of,
    enumerate_formulas,
    formula_size,
    is_diamond_restricted,
    or_,
    parse,
    print_formula,
)

P = Atom("p")
Q = Atom("q")


def test_parse_examples():
    assert parse("K ~<>p") == Know(1, Neg(Might(P)))
    assert parse("p | q") == Neg(And(Neg(P), Neg(Q)))
    assert parse("K{2} (p & <>q)") == Know(2, And(P, Might(Q)))


def test_parse_precedence():
    # prefix ops bind tighter than &, which binds tighter than |
    assert parse("~p & q") == And(Neg(P), Q)
    assert parse("K p & q") == And(Know(1, P), Q)
    assert parse("p & q | q") == or_(And(P, Q), Q)
    assert parse("p | q & q") == or_(P, And(Q, Q))
    assert parse("p & q & p") == And(And(P, Q), P)  # left-assoc
    assert parse("p | q | p") == or_(or_(P, Q), P)


def test_parse_unicode_aliases():
    assert parse("◇p ∧ ¬q") == parse("<>p & ~q")
    assert parse("p ∨ q") == parse("p | q")


def test_parse_agent_indices():
    assert parse("K{12}p") == Know(12, P)
    assert parse("Kp") == Know(1, P)
    with pytest.raises(ParseError) as err:
        parse("K{0}p")
    assert err.value.offset == 2
    with pytest.raises(ParseError):
        parse("K{}p")


def test_parse_errors_carry_offset_and_expectations():
    with pytest.raises(ParseError) as err:
        parse("p &")
    assert err.value.offset == 3
    assert err.value.expected  # nonempty expected-token set
    with pytest.raises(ParseError) as err:
        parse("(p & q")
    assert err.value.offset == 6
    with pytest.raises(ParseError) as err:
        parse("p q")
    assert err.value.offset == 2


def test_parse_error_offsets_are_bytes():
    # the diamond alias is three bytes in UTF-8
    with pytest.raises(ParseError) as err:
        parse("◇")
    assert err.value.offset == 3


def test_print_minimal_parens():
    assert print_formula(Neg(And(P, Q))) == "~(p & q)"
    assert print_formula(And(And(P, Q), P)) == "p & q & p"
    assert print_formula(And(P, And(Q, P))) == "p & (q & p)"
    assert print_formula(Know(1, Neg(Might(P)))) == "K~<>p"
    assert print_formula(Know(2, P)) == "K{2}p"
    assert print_formula(Might(And(P, Q))) == "<>(p & q)"


def test_print_unicode():
    text = print_formula(Know(1, Neg(Might(And(P, Q)))), unicode=True)
    assert text == "K¬◇(p ∧ q)"
    assert parse(text) == Know(1, Neg(Might(And(P, Q))))


def test_roundtrip_enumerated():
    # parse . print is the identity over every AST up to size 8
    count = 0
    for f in enumerate_formulas(8, ("p", "q"), (1,)):
        assert parse(print_formula(f)) == f
        count += 1
    assert count > 50000


def test_roundtrip_multi_agent_and_unicode():
    for f in enumerate_formulas(5, ("p",), (1, 2)):
        assert parse(print_formula(f)) == f
        assert parse(print_formula(f, unicode=True)) == f


def _texts() -> st.SearchStrategy:
    # (text, expected AST) pairs; generated text parenthesizes children,
    # so expectations are unambiguous
    atoms = st.sampled_from(["p", "q", "r_1"]).map(lambda s: (s, Atom(s)))

    def extend(children):
        unary = children.flatmap(
            lambda tf: st.sampled_from(
                [
                    ("~" + tf[0], Neg(tf[1])),
                    ("<>" + tf[0], Might(tf[1])),
                    ("K" + tf[0], Know(1, tf[1])),
                    ("K{3}" + tf[0], Know(3, tf[1])),
                ]
            )
        )
        binary = st.tuples(children, children, st.sampled_from(["&", "|"])).map(
            lambda t: (
                f"({t[0][0]} {t[2]} {t[1][0]})",
                And(t[0][1], t[1][1]) if t[2] == "&" else or_(t[0][1], t[1][1]),
            )
        )
        return unary | binary

    return st.recursive(atoms, extend, max_leaves=12)


@given(_texts())
def test_parse_matches_construction(pair):
    text, expected = pair
    assert parse(text) == expected


def test_desugaring_never_yields_or_nodes():
    # the AST has no disjunction constructor; check the desugared shape
    f = parse("p | <>q")
    assert f == Neg(And(Neg(P), Neg(Might(Q))))


def _might_reachable_outside_k(f) -> bool:
    # oracle: a might node reachable from the root without crossing K
    if isinstance(f, Atom):
        return False
    if isinstance(f, Might):
        return True
    if isinstance(f, Neg):
        return _might_reachable_outside_k(f.child)
    if isinstance(f, And):
        return _might_reachable_outside_k(f.left) or _might_reachable_outside_k(f.right)
    return False  # Know shields everything below


def test_diamond_restriction_examples():
    assert is_diamond_restricted(Neg(And(P, Q)))
    assert is_diamond_restricted(Know(1, Might(P)))
    assert not is_diamond_restricted(Might(P))
    assert not is_diamond_restricted(parse("~<>(p | q)"))


def test_diamond_restriction_against_reachability_oracle():
    for f in enumerate_formulas(6, ("p", "q"), (1,)):
        assert is_diamond_restricted(f) == (not _might_reachable_outside_k(f))


def test_diamond_restriction_closure():
    restricted = [f for f in enumerate_formulas(4, ("p", "q"), (1,)) if is_diamond_restricted(f)]
    anything = list(enumerate_formulas(3, ("p", "q"), (1,)))
    for f in restricted[:40]:
        assert is_diamond_restricted(Neg(f))
        for g in restricted[:10]:
            assert is_diamond_restricted(And(f, g))
    for f in anything:
        assert is_diamond_restricted(Know(1, f))


def test_enumerate_formulas_counts_and_uniqueness():
    formulas = list(enumerate_formulas(6, ("p", "q"), (1,)))
    # counts per size follow N(s) = 3 N(s-1) + sum N(a) N(s-1-a)
    assert len(formulas) == 2320
    assert len(set(formulas)) == 2320
    assert all(formula_size(f) <= 6 for f in formulas)
    sizes = [formula_size(f) for f in formulas]
    assert sizes == sorted(sizes)
    again = list(enumerate_formulas(6, ("p", "q"), (1,)))
    assert formulas == again


def test_structure_helpers():
    f = parse("K{2}(p & <>q) & ~r_1")
    assert formula_size(f) == 8
    assert atoms_of(f) == ("p", "q", "r_1")
    assert agents_of(f) == (2,)
    assert agents_of(P) == ()
