import json

import pytest

from annuli.catalog import gen_series, series_id
from annuli.cli import main
from annuli.io import (
    ParseError,
    emit_curve_file,
    parse_curve_file,
    parse_point_factor,
)
from annuli.laurent import LaurentPoly
from annuli.scalars import Scalar

t = LaurentPoly.t


def test_parse_basic_example():
    doc = '{"field":{"d":1},"x":[[0,"-1","0"],[1,"1","0"]],"y":[[-1,"1","0"]]}'
    c = parse_curve_file(doc)
    assert c.phi == t(1) - 1
    assert c.psi == t(-1)


def test_round_trip_stability():
    for sid in (series_id("w"), series_id("s", n=1), series_id("v"), series_id("r", n=0)):
        c = gen_series(sid)
        text = emit_curve_file(c)
        c2 = parse_curve_file(text)
        assert c2.phi == c.phi and c2.psi == c.psi
        assert emit_curve_file(c2) == text


def test_duplicate_exponent_rejected():
    doc = '{"field":{"d":1},"x":[[1,"1","0"],[1,"2","0"]],"y":[[-1,"1","0"]]}'
    with pytest.raises(ParseError):
        parse_curve_file(doc)


def test_unsorted_exponents_rejected():
    doc = '{"field":{"d":1},"x":[[2,"1","0"],[0,"1","0"]],"y":[[-1,"1","0"]]}'
    with pytest.raises(ParseError):
        parse_curve_file(doc)


def test_zero_coefficient_rejected():
    doc = '{"field":{"d":1},"x":[[1,"0","0"]],"y":[[-1,"1","0"]]}'
    with pytest.raises(ParseError):
        parse_curve_file(doc)


def test_surd_requires_field():
    doc = '{"field":{"d":1},"x":[[1,"1","1"]],"y":[[-1,"1","0"]]}'
    with pytest.raises(ParseError):
        parse_curve_file(doc)


def test_json_error_reports_position():
    with pytest.raises(ParseError) as exc:
        parse_curve_file("{invalid")
    assert "line" in str(exc.value)


def test_parse_point_factor():
    assert parse_point_factor("t^2+t+1") == LaurentPoly({2: 1, 1: 1, 0: 1})
    assert parse_point_factor("t-1/2") == LaurentPoly({1: 1, 0: Scalar("-1/2")})
    f = parse_point_factor("t+(3+1*sqrt(5))/2", 5)
    assert f[0] == Scalar("3/2") + Scalar(0, "1/2", 5)


def test_cli_analyze_exit_codes(tmp_path):
    w_path = tmp_path / "w.json"
    assert main(["catalog", "gen", "--series", "w", "--out", str(w_path)]) == 0
    assert main(["analyze", str(w_path)]) == 0
    bad = tmp_path / "bad.json"
    bad.write_text(emit_curve_file(gen_series(series_id("w"))).replace('"1"', '"1"', 1))
    # power cover: exit 3
    pc = tmp_path / "pc.json"
    pc.write_text('{"field":{"d":1},"x":[[2,"1","0"]],"y":[[4,"1","0"]]}')
    assert main(["analyze", str(pc)]) == 3
    # parse error: exit 1
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    assert main(["analyze", str(broken)]) == 1
    # excluded params: exit 2
    assert main(["catalog", "gen", "--series", "b", "--k", "1", "--m", "0"]) == 2


def test_cli_analyze_self_intersection_exit_code(tmp_path):
    fx = tmp_path / "fx.json"
    from annuli.curves import ParametricCurve
    from annuli.io import emit_curve_file as emit

    c = ParametricCurve(((t(1) - 1) ** 4).shift(-2), ((t(1) - 1) ** 2 * (t(1) + 1)).shift(-1))
    fx.write_text(emit(c))
    assert main(["analyze", str(fx)]) == 3


def test_cli_report_deterministic(tmp_path):
    w = tmp_path / "w.json"
    main(["catalog", "gen", "--series", "w", "--out", str(w)])
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    main(["analyze", str(w), "--json", str(r1)])
    main(["analyze", str(w), "--json", str(r2)])
    assert r1.read_bytes() == r2.read_bytes()


def test_cli_catalog_list(capsys):
    assert main(["catalog", "list"]) == 0
    out = capsys.readouterr().out
    assert "(w)" in out and "(a)" in out


def test_cli_verify_series_b_with_ranges_and_jobs(tmp_path, capsys):
    out1 = tmp_path / "v1.json"
    code = main(["catalog", "verify", "--series", "b", "--k", "1..3", "--m", "0..2", "--json", str(out1)])
    assert code == 0
    text = capsys.readouterr().out
    assert "SKIP" in text  # the excluded points are reported, not hidden
    res = json.loads(out1.read_text())
    skipped = [r for r in res if r["status"] == "excluded"]
    assert len(skipped) == 3  # (1,0), (2,0), (1,1)
    passed = [r for r in res if r["status"] == "pass"]
    assert len(passed) == 6
    out2 = tmp_path / "v2.json"
    code = main(["catalog", "verify", "--series", "b", "--k", "1..3", "--m", "0..2", "--jobs", "2", "--json", str(out2)])
    assert code == 0
    assert out1.read_bytes() == out2.read_bytes()  # jobs-invariant output


def test_cli_gen_series_j(tmp_path, capsys):
    assert main(["catalog", "gen", "--series", "j", "--m", "1", "--n", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    c = parse_curve_file(json.dumps(doc))
    assert c.phi == LaurentPoly({3: 1, 1: -3})  # Z_{1,1} = t^3 - 3t
    assert c.psi == t(1) + t(-1)


def test_cli_oracle_delta(tmp_path, capsys):
    u = tmp_path / "u.json"
    main(["catalog", "gen", "--series", "u", "--out", str(u)])
    capsys.readouterr()
    assert main(["oracle", "delta", str(u), "--point", "t-1", "--bound", "20"]) == 0
    out = capsys.readouterr().out
    assert "delta = 4" in out
