"""Tests for shortlex rewriting systems and bounded completion."""

import pytest

from geolt.alphabet import Alphabet
from geolt.errors import BudgetError, SpecError
from geolt.rewriting import RewritingSystem, complete_rs, group_equations

AB = Alphabet.make(self_inverse=("a", "b"))


def test_normal_form_basic():
    rs = RewritingSystem(AB, (((0, 0), ()),))  # aa -> empty
    assert rs.normal_form((0, 0, 0)) == (0,)
    assert rs.normal_form((1, 0, 0, 1)) == (1, 1)
    assert rs.normal_form(()) == ()


def test_normal_form_rescans_after_rewrite():
    # removing the inner ab exposes a new ab straddling the rewrite site
    rs = RewritingSystem(AB, (((0, 1), ()),))
    assert rs.normal_form((0, 0, 1, 1)) == ()
    assert rs.normal_form((0, 0, 0, 1, 1, 1)) == ()
    assert rs.normal_form((1, 0, 0, 1, 1, 0)) == (1, 0)


def test_is_irreducible():
    rs = RewritingSystem(AB, (((0, 0), ()),))
    assert rs.is_irreducible((0, 1, 0))
    assert not rs.is_irreducible((1, 0, 0))


def test_rules_must_reduce_shortlex():
    with pytest.raises(SpecError):
        RewritingSystem(AB, (((0,), (0, 0)),))  # rhs longer
    with pytest.raises(SpecError):
        RewritingSystem(AB, (((0, 1), (1, 0)),))  # rhs lex-larger, same length
    with pytest.raises(SpecError):
        RewritingSystem(AB, (((), ()),))  # empty lhs
    with pytest.raises(SpecError):
        RewritingSystem(AB, (((0, 7), ()),))  # letter out of range
    # same length but lex-smaller is a valid orientation
    RewritingSystem(AB, (((1, 0), (0, 1)),))


def test_critical_pairs_found():
    # ab -> a and ba -> b overlap on aba and bab
    rs = RewritingSystem(AB, (((0, 1), (0,)), ((1, 0), (1,))))
    pairs = set(rs.critical_pairs())
    assert ((0, 0), (0, 1)) in pairs or ((0, 1), (0, 0)) in pairs
    assert not rs.is_confluent()


def test_inner_overlap_between_distinct_rules():
    # bab -> b contains ab -> a; resolving aba vs b shows non-confluence
    rs = RewritingSystem(AB, (((1, 0, 1), (1,)), ((0, 1), (0,))))
    assert not rs.is_confluent()


def test_confluent_commutation_system():
    # ba -> ab alone is confluent (bubble sort)
    rs = RewritingSystem(AB, (((1, 0), (0, 1)),))
    assert rs.is_confluent()
    assert rs.normal_form((1, 0, 1, 0)) == (0, 0, 1, 1)


def test_group_equations_shape():
    f = Alphabet.make(pairs=(("a", "A"),))
    eqs = group_equations(f, [(0, 0, 0)])
    assert ((0, 1), ()) in eqs
    assert ((1, 0), ()) in eqs
    assert ((0, 0, 0), ()) in eqs


def test_complete_cyclic_group():
    z3 = Alphabet.make(pairs=(("c", "C"),))
    rs = complete_rs(z3, group_equations(z3, [(0, 0, 0)]))
    assert rs.is_confluent()
    # normal forms are empty, c, C: c^2 must reduce to C
    assert rs.normal_form((0, 0)) == (1,)
    assert rs.normal_form((1, 1)) == (0,)
    assert rs.normal_form((0, 1)) == ()
    nfs = {w for w in z3.iter_words(4) if rs.is_irreducible(w)}
    assert nfs == {(), (0,), (1,)}


def test_complete_free_group_is_just_cancellation():
    f2 = Alphabet.make(pairs=(("a", "A"), ("b", "B")))
    rs = complete_rs(f2, group_equations(f2, []))
    assert rs.is_confluent()
    assert sorted(rs.rules) == [((0, 1), ()), ((1, 0), ()),
                                ((2, 3), ()), ((3, 2), ())]


def test_complete_free_abelian_group():
    f2 = Alphabet.make(pairs=(("a", "A"), ("b", "B")))
    rs = complete_rs(f2, group_equations(f2, [(0, 2, 1, 3)]))
    assert rs.is_confluent()
    # every equation still holds in the completed system
    for lhs, rhs in group_equations(f2, [(0, 2, 1, 3)]):
        assert rs.normal_form(lhs) == rs.normal_form(rhs)
    # normal forms are sorted words without cancelling pairs: a^i A^j b^k B^l
    assert rs.normal_form((2, 0)) == (0, 2)
    assert rs.normal_form((3, 0, 2)) == (0,)
    counts = [sum(1 for w in f2.iter_words(r) if rs.is_irreducible(w)
                  and len(w) == r) for r in range(4)]
    assert counts == [1, 4, 8, 12]


def test_complete_dihedral_group():
    d = Alphabet.make(self_inverse=("a", "b"))
    rs = complete_rs(d, group_equations(d, [(0, 1) * 3]))
    assert rs.is_confluent()
    nfs = {w for w in d.iter_words(6) if rs.is_irreducible(w)}
    assert len(nfs) == 6


def test_completion_budget():
    f2 = Alphabet.make(pairs=(("a", "A"), ("b", "B")))
    with pytest.raises(BudgetError):
        complete_rs(f2, group_equations(f2, [(0, 2, 1, 3)]), max_rules=3)


def test_equations_with_oriented_both_sides():
    # an equation between two same-length words orients toward the smaller
    ab = Alphabet.make(self_inverse=("a", "b"))
    rs = complete_rs(ab, group_equations(ab, []) + [((1, 0), (0, 1))])
    assert rs.normal_form((1, 0)) == (0, 1)


def test_json_round_trip():
    rs = RewritingSystem(AB, (((0, 0), ()), ((1, 0), (0, 1))))
    again = RewritingSystem.loads(rs.dumps())
    assert again.alphabet.symbols == rs.alphabet.symbols
    assert again.rules == rs.rules
    assert again.normal_form((1, 0, 0)) == rs.normal_form((1, 0, 0))


def test_json_rejects_wrong_kind():
    rs = RewritingSystem(AB, (((0, 0), ()),))
    data = rs.to_json()
    data["kind"] = "automaton"
    with pytest.raises(SpecError):
        RewritingSystem.from_json(data)
