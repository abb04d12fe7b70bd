from fractions import Fraction

from sepvar import Budget, df5, df5_verify, f6, f6_verify


def test_df5_builder():
    case = df5()
    R = case.ring
    assert R.names == ("x", "s", "t", "u", "v")
    D = case.derivation
    x = R.var("x")
    assert D.image("s") == x ** 3
    assert D.image("t") == R.var("s")
    assert D.image("u") == R.var("t")
    assert D.image("v") == x ** 2
    assert len(case.invariants) == 6
    for f in case.invariants:
        assert D.apply(f).is_zero()
    assert [a["label"] for a in case.assumed_facts] == ["kernel-containment"]


def test_f6_builder():
    case = f6()
    B = case.ring
    assert B.names == ("x", "y", "s", "t", "u", "v")
    D = case.derivation
    x, y = B.var("x"), B.var("y")
    assert D.image("s") == x ** 3
    assert D.image("t") == y ** 3 * B.var("s")
    assert D.image("u") == y ** 3 * B.var("t")
    assert D.image("v") == x ** 2 * y ** 2
    for f in case.invariants:
        assert D.apply(f).is_zero()
    assert {a["label"] for a in case.assumed_facts} == {
        "kernel-containment-xy",
        "kernel-containment-xs",
    }


def test_df5_report_complete(df5_report):
    rep = df5_report
    assert rep.status == "complete"
    assert rep.ok
    assert all(c["ok"] for c in rep.checks)
    labels = [c["label"] for c in rep.checks]
    assert "plinth: image of s" in labels
    assert any(l.startswith("plinth: second integral") for l in labels)

    comps = {c["label"]: c for c in rep.components}
    assert comps["base_product"]["dim"] == 6
    assert comps["base_product"]["dim_by_linear_count"] == 6
    assert comps["graph_closure"]["dim"] == 6
    assert comps["graph_closure"]["ok"]

    directions = {(r["small"], r["big"]): r for r in rep.non_containments}
    assert not directions[("base_product", "graph_closure")]["contained"]
    assert not directions[("graph_closure", "base_product")]["contained"]
    for r in rep.non_containments:
        assert r["records"]
    assert [a["label"] for a in rep.assumptions] == ["kernel-containment"]


def test_f6_report_complete(f6_report):
    rep = f6_report
    assert rep.status == "complete"
    assert rep.ok
    assert all(c["ok"] for c in rep.checks)

    comps = {c["label"]: c for c in rep.components}
    assert comps["xy_product"]["dim"] == 8
    assert comps["xs_diagonal"]["dim"] == 7
    assert comps["graph_closure"]["dim"] == 7
    assert comps["xy_product"]["dim_by_linear_count"] == 8

    assert any(o["label"] == "dimension excess" for o in rep.observations)

    directions = {(r["small"], r["big"]) for r in rep.non_containments}
    assert directions == {
        ("xy_product", "xs_diagonal"),
        ("xs_diagonal", "xy_product"),
        ("graph_closure", "xy_product"),
        ("graph_closure", "xs_diagonal"),
        ("xy_product", "graph_closure"),
        ("xs_diagonal", "graph_closure"),
    }
    assert all(not r["contained"] for r in rep.non_containments)

    escapes = [r for r in rep.non_containments if r["small"] == "graph_closure"]
    for r in escapes:
        assert r["records"][0]["route"] == "graph point evaluated on a generator"
        assert Fraction(r["records"][0]["value"]) != 0

    assert len(rep.assumptions) == 2


def test_df5_partial_on_tiny_budget():
    rep = df5_verify(budget=Budget(pairs=1))
    assert rep.status == "partial"
    assert rep.ok
    comps = {c["label"]: c for c in rep.components}
    assert comps["base_product"]["ok"]
    assert comps["graph_closure"]["dim"] is None
    assert comps["graph_closure"]["note"] == "unresolved within budget"
    # the witness escape survives the timeout
    assert rep.non_containments[0]["small"] == "graph_closure"
    assert not rep.non_containments[0]["contained"]


def test_f6_partial_on_tiny_budget():
    rep = f6_verify(budget=Budget(pairs=1))
    assert rep.status == "partial"
    assert rep.ok
    comps = {c["label"]: c for c in rep.components}
    assert comps["xy_product"]["ok"] and comps["xs_diagonal"]["ok"]
    assert comps["graph_closure"]["note"] == "unresolved within budget"
    done = {(r["small"], r["big"]) for r in rep.non_containments}
    assert ("xy_product", "xs_diagonal") in done
    assert ("graph_closure", "xy_product") in done
    assert all(not r["contained"] for r in rep.non_containments)
