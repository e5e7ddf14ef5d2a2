import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from keibridge.codec import parse_kei, serialize
from keibridge.kei import (
    KeiValidationError,
    dihedral,
    dihedral_modulus,
    is_faithful,
    iterated_act,
    trivial_kei,
    validate_kei,
)

from conftest import R3_PLUS_POINT
from oracles import brute_axiom_ok


def test_order_one_table_is_a_kei():
    X = validate_kei([[0]])
    assert X.order == 1


def test_r3_table_validates():
    table = [[(2 * j - i) % 3 for j in range(3)] for i in range(3)]
    assert validate_kei(table).table == dihedral(3).table


def test_idempotence_violation_is_reported_with_witness():
    table = [list(r) for r in dihedral(3).table]
    table[0][0] = 1
    with pytest.raises(KeiValidationError) as info:
        validate_kei(table)
    axioms = {(v.axiom, v.witness) for v in info.value.violations}
    assert ("idempotence", (0,)) in axioms


def test_all_violations_reported_not_just_first():
    table = [[1, 0], [1, 0]]
    with pytest.raises(KeiValidationError) as info:
        validate_kei(table)
    kinds = {v.axiom for v in info.value.violations}
    assert kinds == {"idempotence", "right-involution", "right-self-distributivity"}
    assert sum(v.axiom == "idempotence" for v in info.value.violations) == 2


@pytest.mark.parametrize("table, fragment", [
    ([[0, 1], [1]], "row 1"),
    ([[0, 5], [1, 1]], r"entry \(0,1\)"),
    ([], "empty"),
])
def test_shape_errors(table, fragment):
    with pytest.raises(KeiValidationError, match=fragment):
        validate_kei(table)


def test_dihedral_values():
    R3, R5 = dihedral(3), dihedral(5)
    assert R3.op(1, 2) == 0
    assert R5.op(0, 1) == 2
    assert R5.op(2, 1) == 0
    with pytest.raises(ValueError):
        dihedral(0)


@pytest.mark.parametrize("p", range(1, 17))
def test_dihedral_passes_exhaustive_validation(p):
    X = dihedral(p)
    assert validate_kei(X.table).order == p
    assert all(X.op(i, i) == i for i in range(p))


def test_non_dihedral_order_four_kei():
    X = validate_kei(R3_PLUS_POINT)
    assert dihedral_modulus(X) is None
    assert dihedral_modulus(dihedral(4)) == 4
    # the four right translations are pairwise distinct
    assert len({X.right_translation(b) for b in range(4)}) == 4
    assert is_faithful(X)


def test_iterated_act_examples():
    R3 = dihedral(3)
    assert iterated_act(R3, 1, 0, 0) == 1
    assert iterated_act(R3, 1, 0, 2) == 1
    # 1*0 = 2, 2*0 = 1, 1*0 = 2
    x = 1
    for _ in range(3):
        x = R3.table[x][0]
    assert x == 2
    assert iterated_act(R3, 1, 0, 3) == 2


@settings(max_examples=200)
@given(p=st.integers(1, 12), data=st.data())
def test_iterated_act_depends_on_parity(p, data):
    X = dihedral(p)
    x = data.draw(st.integers(0, p - 1))
    a = data.draw(st.integers(0, p - 1))
    m = data.draw(st.integers(-50, 50))
    assert iterated_act(X, x, a, m) == iterated_act(X, x, a, m % 2)
    y = x
    for _ in range(abs(m)):
        y = X.table[y][a]
    assert iterated_act(X, x, a, m) == y


def test_faithfulness_examples():
    assert is_faithful(dihedral(3))
    assert is_faithful(validate_kei([[0]]))
    R4 = dihedral(4)
    # *0 and *2 both send i to -i mod 4
    assert R4.right_translation(0) == R4.right_translation(2) == (0, 3, 2, 1)
    assert not is_faithful(R4)


@pytest.mark.parametrize("p", range(2, 17))
def test_dihedral_faithful_iff_odd(p):
    assert is_faithful(dihedral(p)) == (p % 2 == 1)


def test_trivial_kei_not_faithful():
    assert not is_faithful(trivial_kei(3))


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_validation_agrees_with_brute_force_scan(table):
    ok = brute_axiom_ok(table)
    try:
        validate_kei(table)
        accepted = True
    except KeiValidationError:
        accepted = False
    assert accepted == ok


def test_kei_file_round_trip():
    X = dihedral(5)
    text = serialize(X)
    assert json.loads(text) == {"label": "R_5", "order": 5, "table": [list(r) for r in X.table]}
    Y = parse_kei(text)
    assert Y == X and Y.label == "R_5"
    assert serialize(Y) == text
