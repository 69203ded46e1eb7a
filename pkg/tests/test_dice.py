import itertools
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from emergent.dice import (
    DieSpec,
    enumerate_microstates,
    identity_mapping,
    macrostate_table,
    sum_mapping,
)
from emergent.errors import DomainError, ResourceError

TABLE_I = {2: 1, 3: 2, 4: 3, 5: 4, 6: 5, 7: 6, 8: 5, 9: 4, 10: 3, 11: 2, 12: 1}


def test_die_spec_defaults_and_validation():
    assert DieSpec(4).labels == (1, 2, 3, 4)
    assert DieSpec(2, ("heads", "tails")).labels == ("heads", "tails")
    with pytest.raises(DomainError):
        DieSpec(0)
    with pytest.raises(DomainError):
        DieSpec(3, ("a", "b"))


@pytest.mark.parametrize("faces,count", [([6, 6], 36), ([6], 6), ([6, 8], 48)])
def test_enumeration_size(faces, count):
    micro = enumerate_microstates([DieSpec(f) for f in faces])
    assert len(micro) == count
    assert micro == sorted(micro)
    assert len(set(micro)) == count


def test_enumeration_cap():
    with pytest.raises(ResourceError):
        enumerate_microstates([DieSpec(10)] * 3, cap=999)
    with pytest.raises(DomainError):
        enumerate_microstates([])


def test_two_d6_matches_table_one():
    table = macrostate_table([DieSpec(6), DieSpec(6)])
    assert table.multiplicities() == TABLE_I
    assert table.total == 36
    assert table.row(7).probability == Fraction(1, 6)
    assert table.row(2).probability == Fraction(1, 36)
    assert table.row(3).probability == Fraction(1, 18)
    assert table.row(10).probability == Fraction(1, 12)
    with pytest.raises(KeyError):
        table.row(14)


def test_animals_remove_macrostate_structure():
    zoo1 = DieSpec(6, ("cat", "dog", "owl", "eel", "yak", "emu"))
    zoo2 = DieSpec(6, ("ant", "bee", "cod", "elk", "fox", "gnu"))
    table = macrostate_table([zoo1, zoo2], identity_mapping)
    assert len(table) == 36
    assert all(r.multiplicity == 1 and r.probability == Fraction(1, 36) for r in table)


def test_sum_mapping_needs_numbers():
    with pytest.raises(DomainError):
        macrostate_table([DieSpec(2, ("a", "b"))])


def test_partial_mapping_is_a_domain_error():
    dice = [DieSpec(2), DieSpec(2)]
    partial = {(1, 1): "low", (2, 2): "high"}
    with pytest.raises(DomainError):
        macrostate_table(dice, partial)
    with pytest.raises(DomainError):
        macrostate_table(dice, lambda m: None)


def test_dict_mapping_when_total():
    dice = [DieSpec(2), DieSpec(2)]
    doubles = {m: ("pair" if m[0] == m[1] else "mixed") for m in itertools.product((1, 2), repeat=2)}
    table = macrostate_table(dice, doubles)
    assert table.multiplicities() == {"mixed": 2, "pair": 2}


dice_sets = st.lists(st.integers(1, 12), min_size=1, max_size=4).map(
    lambda fs: [DieSpec(f) for f in fs]
)


@settings(max_examples=40, deadline=None)
@given(dice_sets)
def test_conservation_and_normalisation(dice):
    table = macrostate_table(dice)
    product = 1
    for d in dice:
        product *= d.faces
    assert sum(r.multiplicity for r in table) == product == table.total
    assert sum(r.probability for r in table) == 1


@settings(max_examples=40, deadline=None)
@given(dice_sets)
def test_counting_matches_brute_force_tally(dice):
    tally = Counter(sum_mapping(m) for m in enumerate_microstates(dice))
    assert macrostate_table(dice).multiplicities() == dict(tally)
    assert macrostate_table(dice, sum_mapping).multiplicities() == dict(tally)


@given(st.integers(1, 20))
def test_identical_pair_sum_symmetry(faces):
    omega = macrostate_table([DieSpec(faces), DieSpec(faces)]).multiplicities()
    lo, hi = min(omega), max(omega)
    for s, w in omega.items():
        assert omega[lo + hi - s] == w


def test_d6_d8_has_thirteen_sums():
    table = macrostate_table([DieSpec(6), DieSpec(8)])
    assert [r.macrostate for r in table] == list(range(2, 15))
    assert table.total == 48
