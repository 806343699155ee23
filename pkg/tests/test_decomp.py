import json

import pytest

from superlink.decomp import (
    DecompTable,
    YoungDiagram,
    builtin_table,
    diagram_weight,
    enumerate_allowable,
    gl21_adjoint_table,
    gl_family_table,
    load_table,
    osp_family_table,
    same_table,
    save_table,
    table_from_json,
    table_to_json,
)
from superlink.errors import InvariantViolation, NotAllowable, SchemaError
from superlink.superalg import AlgebraKind
from superlink.suites import diagram_dimension_sum


def test_allowable_order_gl22():
    rows = [d.rows for d in enumerate_allowable(2, 2)]
    assert rows == [(), (1,), (2,), (1, 1), (2, 1), (2, 2)]


@pytest.mark.parametrize("m,n", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3)])
def test_allowable_count_is_binomial(m, n):
    from math import comb
    assert len(enumerate_allowable(m, n)) == comb(m + n, m)


def test_young_diagram():
    d = YoungDiagram((3, 1))
    assert d.conjugate().rows == (2, 1, 1)
    assert d.size == 4 and d.length == 2
    assert not d.fits(2, 2)
    with pytest.raises(NotAllowable):
        YoungDiagram((1, 2))


def test_diagram_weight():
    assert diagram_weight(2, 2, YoungDiagram((2, 1))).to_literal() == "(-1,-2|2,1)"
    assert diagram_weight(3, 2, YoungDiagram((1,))).to_literal() == "(0,0,-1|1,0)"
    with pytest.raises(NotAllowable):
        diagram_weight(2, 1, YoungDiagram((2,)))


def test_example_dimension_sum():
    # 1 + 4 + 3 + 3 + 4 + 1
    assert diagram_dimension_sum(2, 2) == 16


def test_gl_table_parities():
    t = gl_family_table(2, 2)
    assert [x.parity for x in t.terms] == [0, 1, 0, 0, 1, 0]
    assert all(x.multiplicity == 1 for x in t.terms)
    t.validate()


def test_osp_table_shape():
    t = osp_family_table(2)
    assert len(t.terms) == 6
    assert t.terms[0].nu.to_literal() == "(2*al|0,0)"
    t.validate()


def test_adjoint_table():
    t = gl21_adjoint_table()
    assert sum(x.multiplicity for x in t.terms) == 7
    assert [x.multiplicity for x in t.terms].count(2) == 1
    lhs, rhs = t.dimension_balance(0)
    assert lhs == rhs == 64


def test_validation_errors():
    t = gl_family_table(2, 1)
    from dataclasses import replace
    bad = replace(t, terms=(replace(t.terms[0], m_plus=0, m_minus=0),) + t.terms[1:])
    with pytest.raises(InvariantViolation) as exc:
        bad.validate()
    assert exc.value.index == 0
    with pytest.raises(InvariantViolation):
        replace(t, family="Other").validate()
    with pytest.raises(NotAllowable):
        builtin_table(AlgebraKind.gl(2, 2), "adjoint")


def test_json_round_trip(tmp_path):
    for t in (gl_family_table(3, 2), osp_family_table(3), gl21_adjoint_table()):
        obj = json.loads(json.dumps(table_to_json(t)))
        assert same_table(table_from_json(obj), t)
        save_table(t, tmp_path / "t.json")
        assert same_table(load_table(tmp_path / "t.json"), t)


def test_schema_errors(tmp_path):
    good = table_to_json(gl_family_table(2, 1))
    for mutate in (
        lambda o: o.pop("terms"),
        lambda o: o["terms"][0].__setitem__("m_plus", "1"),
        lambda o: o["terms"][0].__setitem__("nu", "(0|0)"),
        lambda o: o["algebra"].__setitem__("kind", "sl"),
    ):
        obj = json.loads(json.dumps(good))
        mutate(obj)
        with pytest.raises(SchemaError):
            table_from_json(obj)
    p = tmp_path / "x.json"
    p.write_text("{not json")
    with pytest.raises(SchemaError):
        load_table(p)


def test_user_table_typicality_flag():
    obj = table_to_json(gl_family_table(2, 1))
    obj["terms"].append({"nu": "(0,0|0)", "m_plus": 1, "m_minus": 0, "parity": 0})
    obj["family"] = "UserSupplied"
    with pytest.raises(InvariantViolation):
        table_from_json(obj)
    assert isinstance(table_from_json(obj, require_typical=False), DecompTable)


def test_parity_flip():
    t = gl_family_table(2, 1)
    f = t.with_parity_flipped(1)
    assert f.terms[1].parity == 0 and (f.terms[1].m_plus, f.terms[1].m_minus) == (0, 1)
    assert f.terms[0] == t.terms[0]
