import dataclasses
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import CANONICAL3_TABLE, interpolate_table

from nsystems.nsystem import (GeometryError, GraphData, InvalidParams, NSystem, Params,
                              UnsupportedDimension, build_geometry, canonical_params,
                              check_axioms, eval_system, export_graph,
                              geometry_from_graph, telescope, validate_params)


def test_canonical_n3():
    p = canonical_params(3)
    assert p.C == 3
    assert p.A == (F(1, 8), F(1, 8), F(1, 4), F(1, 2))
    assert p.B == (F(5, 16), F(5, 8))
    assert p.D == F(11, 32)


def test_canonical_n4():
    p = canonical_params(4)
    assert p.A == (F(1, 16), F(1, 16), F(1, 8), F(1, 4), F(1, 2))
    assert p.B == (F(5, 32), F(5, 16), F(5, 8))
    assert p.D == F(11, 64)


@pytest.mark.parametrize("n", range(3, 9))
def test_canonical_valid_and_normalized(n):
    p = canonical_params(n)
    assert sum(p.A) == 1
    assert validate_params(p).ok


def test_canonical_rejects_small_n():
    with pytest.raises(UnsupportedDimension):
        canonical_params(2)


def test_validate_boundary_equality(canon3):
    bad = dataclasses.replace(canon3, B=(F(3, 8), F(5, 8)))
    rep = validate_params(bad)
    assert not rep.ok
    assert "B_2 < C·A_2" in rep.checks()


def test_validate_n2_is_error():
    p = Params(2, (F(1, 4), F(1, 4), F(1, 2)), (F(3, 4),), F(3), F(1, 2))
    with pytest.raises(UnsupportedDimension, match="unsupported dimension"):
        validate_params(p)


def test_validate_lists_every_violation(canon3):
    bad = dataclasses.replace(canon3, D=F(1), A=(F(1, 8), F(1, 8), F(1, 4), F(1, 4)))
    checks = validate_params(bad).checks()
    assert {"D < C·A_2", "A_1 + ... + A_{n+1} = 1", "A_3 < A_4"} <= checks


def test_from_free_round_trip():
    for n in range(3, 7):
        p = canonical_params(n)
        assert Params.from_free(n, p.free()) == p


def test_json_round_trip_and_short_form(canon3):
    obj = canon3.to_json()
    assert Params.from_json(obj) == canon3
    short = dict(obj, A=obj["A"][1:-1])
    assert Params.from_json(short) == canon3


# --- construction ----------------------------------------------------------


def test_geometry_n3_breakpoints(canon3):
    g = build_geometry(canon3)
    assert [bp.q for bp in g.breakpoints] == [row[0] for row in CANONICAL3_TABLE]
    assert [bp.values for bp in g.breakpoints] == [row[1] for row in CANONICAL3_TABLE]
    assert [bp.labels[0] for bp in g.breakpoints] == [row[2] for row in CANONICAL3_TABLE]
    assert g.find("mu(4)").labels == ("delta(3,2)", "mu(4)")
    assert g.breakpoints[0].values == canon3.A


@pytest.mark.parametrize("n", range(3, 9))
def test_division_point_count_and_axioms(n):
    g = build_geometry(canonical_params(n))
    assert len({bp.q for bp in g.breakpoints}) == 3 * n + 1
    assert check_axioms(g).ok


@pytest.mark.parametrize("n", range(3, 7))
def test_closure_symbolic(n):
    """The construction ends at C for every parameter value, not just the samples."""
    sym = Params.symbolic(n)
    assert telescope(sym)[-1][1] == sym.C


def test_switch_labels(canon3):
    g = build_geometry(canon3)
    kinds = {bp.label: bp.kind for bp in g.breakpoints}
    assert [lab for lab, k in kinds.items() if k == "switch"] == ["mu(3)", "mu(2)", "mu(1)"]


def test_build_rejects_invalid(canon3):
    with pytest.raises(InvalidParams):
        build_geometry(dataclasses.replace(canon3, D=F(1, 4)))


def test_build_detects_closure_failure(canon3):
    # closure holds identically once the A_k sum to 1, so break that
    broken = dataclasses.replace(canon3, A=(F(1, 8), F(1, 8), F(1, 4), F(9, 16)))
    with pytest.raises(InvalidParams):
        build_geometry(broken)
    with pytest.raises(GeometryError, match="closure"):
        build_geometry(broken, check=False)


def test_axioms_detect_perturbed_value(canon3):
    g = build_geometry(canon3)
    bp = g.breakpoints[4]
    vals = list(bp.values)
    vals[0] += F(1, 1000)
    bad = dataclasses.replace(bp, values=tuple(vals))
    bps = g.breakpoints[:4] + (bad,) + g.breakpoints[5:]
    rep = check_axioms(dataclasses.replace(g, breakpoints=bps))
    assert any(v.check == "sum identity" and v.where == bp.label for v in rep.violations)


def test_axioms_detect_relabel(canon3):
    g = build_geometry(canon3)
    i = g.index_of("mu(1)")
    bps = list(g.breakpoints)
    bps[i] = dataclasses.replace(bps[i], kind="ordinary")
    rep = check_axioms(dataclasses.replace(g, breakpoints=tuple(bps)))
    assert [v.check for v in rep.violations] == ["switch labels"]


def test_axioms_detect_double_riser(canon3):
    g = build_geometry(canon3)
    ivs = list(g.intervals)
    ivs[0] = dataclasses.replace(ivs[0], rising=(2, 3))
    rep = check_axioms(dataclasses.replace(g, intervals=tuple(ivs)))
    assert "single rising unit" in rep.checks()


# --- evaluation ------------------------------------------------------------


def test_eval_interior(canon3):
    s = NSystem.from_params(canon3)
    assert eval_system(s, F(9, 4)) == (F(1, 8), F(5, 16), F(5, 8), F(19, 16))


def test_eval_self_similar(canon3):
    s = NSystem.from_params(canon3)
    assert s(F(27, 8)) == (F(3, 8), F(3, 4), F(3, 4), F(3, 2))
    assert s(F(27, 8)) == tuple(3 * v for v in s(F(9, 8)))


def test_eval_outside_domain(canon3):
    with pytest.raises(ValueError, match="outside domain"):
        eval_system(NSystem.from_params(canon3), F(1, 2))


def test_eval_matches_hand_table(canon3):
    s = NSystem.from_params(canon3)
    for i in range(0, 200):
        q = 1 + F(i, 100)
        assert s(q) == interpolate_table(CANONICAL3_TABLE, q)


qs = st.fractions(min_value=1, max_value=200, max_denominator=97)


@settings(max_examples=200, deadline=None)
@given(qs)
def test_sum_and_order_everywhere(q):
    s = NSystem.from_params(canonical_params(4))
    v = s(q)
    assert sum(v) == q
    assert all(a <= b for a, b in zip(v, v[1:]))


@settings(max_examples=100, deadline=None)
@given(st.fractions(min_value=27, max_value=729, max_denominator=61), st.integers(-3, 3))
def test_self_similarity_property(q, m):
    s = NSystem.from_params(canonical_params(3))
    assert s(q * F(3) ** m) == tuple(F(3) ** m * v for v in s(q))


def test_slopes_sum_to_one(canon3):
    g = build_geometry(canon3)
    for bp0, bp1 in zip(g.breakpoints, g.breakpoints[1:]):
        mid = (bp0.q + bp1.q) / 2
        s = NSystem(g)
        h = (bp1.q - bp0.q) / 4
        rise = sum(s(mid + h)) - sum(s(mid - h))
        assert rise / (2 * h) == 1


# --- graph export ----------------------------------------------------------


def test_graph_export(canon3):
    g = build_geometry(canon3)
    data = export_graph(g)
    assert len(data.division_points) == 10
    for j in range(1, 5):
        line = data.polyline(j)
        assert [q for q, _ in line] == [bp.q for bp in g.breakpoints]
    assert {s.slope for s in data.segments} <= {F(0), F(1, 2), F(1)}


def test_graph_segments_chain(canon3):
    data = export_graph(build_geometry(canon3))
    for j in range(1, 5):
        segs = [s for s in data.segments if s.component == j]
        for a, b in zip(segs, segs[1:]):
            assert (a.q1, a.v1) == (b.q0, b.v0)


@pytest.mark.parametrize("n", [3, 5])
def test_graph_round_trip(n):
    g = build_geometry(canonical_params(n))
    data = export_graph(g)
    assert GraphData.from_json(data.to_json()) == data
    assert geometry_from_graph(data) == g


def test_graph_json_shape(canon3):
    obj = export_graph(build_geometry(canon3)).to_json()
    assert set(obj) == {"n", "segments", "division_points"}
    assert set(obj["segments"][0]) == {"component", "q0", "q1", "v0", "v1", "slope"}
    assert obj["division_points"][4] == {"q": "27/16", "kind": "ordinary",
                                         "label": "delta(3,2)=mu(4)"}
