import os

import pytest

import singchi

DATA = os.path.join(os.path.dirname(__file__), "..", "..", "data", "curves")


def table(text):
    return singchi.CodimTable(singchi.parse_curve(text))


def test_cusp_alexander_and_zeta():
    t = table("branch { x = t^2, y = t^3 }")
    assert singchi.alexander(t) == {(0,): 1, (1,): -1, (2,): 1}
    assert singchi.alexander(t) == singchi.torus_knot_alexander(2, 3)
    numerator, has_denominator = singchi.zeta(t)
    assert has_denominator
    assert numerator == {(0,): 1, (1,): -1, (2,): 1}


def test_codim_and_chi():
    t = table("branch { x = t^2, y = t^3 }")
    assert t.codim([2]) == 1
    node = singchi.CodimTable(singchi.load_curve(os.path.join(DATA, "node.crv")))
    assert node.r == 2
    assert singchi.fiber_chi(node, [0, 0]) == 1
    assert singchi.alexander(node) == {(0, 0): 1}


def test_multibranch_fixture():
    t = singchi.CodimTable(singchi.load_curve(os.path.join(DATA, "tacnode.crv")))
    assert singchi.alexander(t, threads=2) == {(0, 0): 1, (1, 1): 1}


def test_motivic_specializes_to_chi():
    t = table("branch { x = t^3, y = t^4 }")
    for s in range(8):
        cls = singchi.motivic_fiber_class(t, [s])
        assert sum(cls.values()) == singchi.fiber_chi(t, [s])


def test_semigroup_and_verify():
    c = singchi.parse_curve("branch { x = t^4, y = t^6 + t^7 }", "two_pairs")
    assert c.name == "two_pairs"
    sg = singchi.semigroup(c)
    assert sg["generators"] == [4, 6, 13]
    assert sg["conductor"] == 16
    ok, items = singchi.verify(singchi.CodimTable(c))
    assert ok
    assert [i["name"] for i in items][0] == "alexander_matches_semigroup_oracle"


def test_errors_map_to_python_exceptions():
    with pytest.raises(singchi.ParseError):
        singchi.parse_curve("branch { x = t^^2 }")
    with pytest.raises(singchi.ValidationError):
        singchi.parse_curve("branch { x = 1 + t, y = t }")
    with pytest.raises(singchi.NotCoprime):
        singchi.torus_knot_alexander(2, 4)
    assert issubclass(singchi.NotStabilized, singchi.SingchiError)
