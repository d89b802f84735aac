import json

import pytest

from qkchevalley.chevalley import (
    NotInQuotient,
    cancellation_report,
    classical_terms,
    closed_formula,
    coefficient_table,
    expansion_to_json,
    gamma_Q,
    oracle_expansion,
    setup,
    to_qk_product_string,
)
from qkchevalley.rootsystem import RootSystem, RootSystemError


def test_gamma_Q():
    assert gamma_Q(RootSystem.build("A", 4), 2) == (0, 1, 0, 0)
    assert gamma_Q(RootSystem.build("B", 3), 3) == (0, 1, 2)
    assert gamma_Q(RootSystem.build("B", 2), 2) == (1, 2)
    with pytest.raises(RootSystemError):
        gamma_Q(RootSystem.build("B", 3), 1)


def test_setup_rejects_non_minuscule():
    with pytest.raises(RootSystemError):
        setup("B", 3, 1)
    with pytest.raises(RootSystemError):
        setup("D", 5, 2)


def test_projective_line():
    s = setup("A", 1, 1)
    e, s1 = s.group.e, s.group.s(1)
    assert closed_formula(s, e).terms == {(e, 0): 1, (s1, 0): -1}
    assert closed_formula(s, s1).terms == {(s1, 0): 1, (e, 1): -1}


def test_projective_plane_point():
    s = setup("A", 2, 1)
    x = s.group.parse_word("2 1")
    exp = closed_formula(s, x)
    assert to_qk_product_string(exp) == "[O_{2 1}] * [O(-w1)] = e^{-w2} ( [O_{2 1}] - [O_{e}] Q1 )"


def test_identity_coset():
    for f, n, k in [("A", 5, 3), ("B", 3, 3), ("D", 4, 4), ("E", 6, 1)]:
        s = setup(f, n, k)
        g = s.group
        exp = closed_formula(s, g.e)
        assert exp.terms == {(g.e, 0): 1, (g.s(k), 0): -1}
        assert oracle_expansion(s, g.e) == exp
        assert cancellation_report(s, g.e).rows == []


def test_gr37_example():
    s = setup("A", 6, 3)
    g = s.group
    P = g.parse_word
    x = P("1 4 3 2 6 5 4 3")
    assert s.s_theta == P("1 2 6 5 4 3")
    exp = closed_formula(s, x)
    classical = {
        P("1 4 3 2 6 5 4 3"): 1,
        P("2 1 4 3 2 6 5 4 3"): -1,
        P("1 5 4 3 2 6 5 4 3"): -1,
        P("2 1 5 4 3 2 6 5 4 3"): 1,
    }
    quantum = {P("4 3"): -1, P("2 4 3"): 1, P("5 4 3"): 1, P("2 5 4 3"): -1}
    assert dict(exp.block(0)) == classical
    assert dict(exp.block(1)) == quantum
    assert exp.prefactor == x.act(s.rs.fundamental_weight(3))
    assert exp == oracle_expansion(s, x)


def test_require():
    s = setup("A", 3, 2)
    g = s.group
    with pytest.raises(NotInQuotient, match="floor is 2"):
        classical_terms(s, g.parse_word("2 1"))


@pytest.mark.parametrize("f,n,k", [("A", 4, 2), ("B", 3, 3), ("D", 4, 1)])
def test_tables_agree(f, n, k):
    s = setup(f, n, k)
    assert coefficient_table(s, "closed") == coefficient_table(s, "oracle")


@pytest.mark.parametrize("f,n,k", [("A", 4, 2), ("B", 4, 4), ("D", 5, 5)])
def test_cancellation_reports(f, n, k):
    s = setup(f, n, k)
    for x in s.group.enumerate_WJ(s.J):
        rep = cancellation_report(s, x)
        assert rep.ok, rep.to_text()
        if x != s.group.e and not rep.above:
            assert all(c != 1 for _, c, _ in rep.rows)


def test_json_schema():
    s = setup("A", 6, 3)
    x = s.group.parse_word("1 4 3 2 6 5 4 3")
    d = expansion_to_json(closed_formula(s, x))
    assert set(d) == {
        "type", "rank", "k", "x", "prefactor", "side", "classical", "quantum", "above_s_theta"
    }
    assert d["above_s_theta"] is True
    assert all(set(t) == {"y", "sign"} for t in d["classical"])
    assert all(t["q_power"] == 1 for t in d["quantum"])
    json.dumps(d)


def test_character_side():
    s = setup("A", 1, 1)
    text = to_qk_product_string(closed_formula(s, s.group.s(1)), side="Character")
    assert text.startswith("gch V^-_{1}((N-1) w1)")
    assert "t_{a1^v}" in text
