import json

import pytest
from hypothesis import given, settings, strategies as st

from triverify.chartab import (CharacterTable, Cyclotomic, IntegralityError, TableError,
                               brute_force_structure_constant, brute_triple_count,
                               class_alignment, cyclic_table, dihedral_table, load_table,
                               mn_character, oracle_sweep, partitions, pgl2_table,
                               structure_constant, symmetric_table, table_from_json, triple_count)
from triverify.perm import symmetric_group


def fixture(data_dir, name):
    return load_table(data_dir / f"{name}.json")


def test_s3_accepted(data_dir):
    t = fixture(data_dir, "s3")
    assert t.degrees == [1, 1, 2]
    assert [c.centralizer_order for c in t.classes] == [6, 2, 3]


def test_s3_examples(data_dir):
    t = fixture(data_dir, "s3")
    assert structure_constant(t, 1, 1, 2) == 3
    for j in range(3):
        for k in range(3):
            assert structure_constant(t, 0, j, k) == (1 if j == k else 0)
    # (m, n) = (3, 2): a 3-cycle times a transposition is a transposition
    assert any(tc.value for tc in triple_count(t, 3, 2))
    assert triple_count(t, 5, 2) == []


@pytest.mark.parametrize("mutate,msg", [
    (lambda d: d["irreducibles"][2].__setitem__(0, 3), "squared degrees"),
    (lambda d: d["classes"][2].__setitem__("label", "2a"), "duplicated"),
    (lambda d: d["classes"][1].__setitem__("size", "4"), "sum to"),
    (lambda d: d["irreducibles"][1].__setitem__(1, 1), "orthogonality"),
    (lambda d: d["irreducibles"].pop(), "irreducibles for"),
    (lambda d: d.__setitem__("group", [[1, 0, 2]]), "order"),
])
def test_rejections(data_dir, mutate, msg):
    d = json.loads((data_dir / "s3.json").read_text())
    mutate(d)
    with pytest.raises(TableError, match=msg):
        table_from_json(d)


def test_malformed_values(data_dir):
    d = json.loads((data_dir / "s3.json").read_text())
    d["irreducibles"][0][0] = {"conductor": 0, "terms": []}
    with pytest.raises(TableError):
        table_from_json(d)
    d["irreducibles"][0][0] = True
    with pytest.raises(TableError):
        table_from_json(d)


def test_integrality_is_asserted(data_dir):
    t = fixture(data_dir, "s3")
    bad = CharacterTable(t.name, t.order, t.classes,
                         [t.irreducibles[0], t.irreducibles[1],
                          [Cyclotomic.integer(2), Cyclotomic.integer(0),
                           Cyclotomic(6, ((1, 1),))]])
    with pytest.raises(IntegralityError):
        structure_constant(bad, 2, 2, 2)


def test_cyclotomic_round_trip():
    v = Cyclotomic(5, ((0, 1), (1, 1), (4, 1)))
    assert abs(complex(v.evaluate()) - 1.6180339887) < 1e-9
    assert Cyclotomic.integer(-3).to_json() == -3


@pytest.mark.parametrize("name", ["s3", "a4", "a5"])
def test_fixture_oracle(data_dir, name):
    assert oracle_sweep(fixture(data_dir, name)) == []


@pytest.mark.parametrize("build,arg", [
    (cyclic_table, 1), (cyclic_table, 7), (cyclic_table, 12),
    (dihedral_table, 3), (dihedral_table, 8), (dihedral_table, 9),
    (symmetric_table, 4), (symmetric_table, 5), (symmetric_table, 6),
    (pgl2_table, 5), (pgl2_table, 7), (pgl2_table, 11),
])
def test_builder_oracle(build, arg):
    assert oracle_sweep(build(arg)) == []


@pytest.mark.parametrize("n", range(1, 9))
def test_murnaghan_nakayama_degrees(n):
    t = symmetric_table(n)
    # hook length formula for the degrees
    for lam, d in zip(partitions(n), t.degrees):
        hooks = 1
        conj = [sum(1 for p in lam if p > j) for j in range(lam[0])] if lam else []
        for i, row in enumerate(lam):
            for j in range(row):
                hooks *= (row - j - 1) + (conj[j] - i - 1) + 1
        import math
        assert d == math.factorial(n) // hooks
    assert mn_character((2, 1), (3,)) == -1


def test_column_sum_identity():
    t = symmetric_table(5)
    h = len(t.classes)
    cd = t.group.class_data()
    for i in range(h):
        for j in range(h):
            s = sum(structure_constant(t, i, j, k) * t.classes[k].size for k in range(h))
            assert s == t.classes[i].size * t.classes[j].size
            b = sum(brute_force_structure_constant(cd, i, j, k) * len(cd.classes[k]) for k in range(h))
            assert b == len(cd.classes[i]) * len(cd.classes[j])


def test_inverse_class_swaps_pairs(data_dir):
    # (x, y) -> (y^-1, x^-1) maps pairs with product z^-1 to pairs with product z
    t = fixture(data_dir, "a4")
    cd = t.group.class_data()
    align = class_alignment(t, cd)
    inv = {}
    c = cd.group.codec
    for k, rep in enumerate(cd.representatives):
        inv[k] = cd.index[c.inv(c.pack(rep))]
    for i in range(4):
        for j in range(4):
            for k in range(4):
                a = brute_force_structure_constant(cd, align[i], align[j], inv[align[k]])
                b = brute_force_structure_constant(cd, inv[align[j]], inv[align[i]], align[k])
                assert a == b
                assert structure_constant(t, i, j, k) == structure_constant(t, j, i, k)


def test_pgl2_13_count():
    t = pgl2_table(13)
    outer = [i for i in t.classes_of_order(2) if t.classes[i].size == 78]
    assert len(outer) == 1
    cd = t.group.class_data()
    align = class_alignment(t, cd)
    z = t.classes_of_order(13)[0]
    for j in t.classes_of_order(14):
        assert structure_constant(t, outer[0], j, z) == 13
        assert brute_force_structure_constant(cd, align[outer[0]], align[j], align[z]) == 13
    assert any(tc.value for tc in triple_count(t, 13, 14))


def test_brute_triple_count_on_group():
    cd = symmetric_group(3).class_data()
    counts = brute_triple_count(cd, 3, 2)
    assert [tc.value for tc in counts] == [2]


def test_json_round_trip(tmp_path):
    t = pgl2_table(7)
    p = tmp_path / "t.json"
    p.write_text(json.dumps(t.to_json()))
    again = load_table(p)
    assert again.classes == t.classes
    assert structure_constant(again, 1, 2, 3) == structure_constant(t, 1, 2, 3)


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 12))
def test_dihedral_involution_products(n):
    t = dihedral_table(n)
    cd = t.group.class_data()
    align = class_alignment(t, cd)
    for tc in triple_count(t, 2, 2):
        assert tc.value == brute_force_structure_constant(cd, *(align[x] for x in (tc.i, tc.j, tc.k)))
