import pytest

from trop_morse.services import fixtures
from trop_morse.services.curve_service import CurveService
from trop_morse.services.report_service import canonical_json, run_report


def test_curve_check_fixture(run_json):
    code, report = run_json("curve", "check", "fixture:elliptic/3")
    assert code == 0
    [result] = report["results"]
    assert result["euler"] == 3
    assert result["rr_ok"] and result["rotation_ok"]
    assert report["command"] == ["--json", "curve", "check", "fixture:elliptic/3"]
    assert list(report["digests"]) == ["fixture:elliptic/3"]


def test_curve_check_text_output(run_cli):
    code, out, _ = run_cli("curve", "check", "fixture:star/2,1")
    assert code == 0
    assert "v:o" in out
    assert out.endswith("ok: true\n")


def test_curve_check_files(run_json, write_json):
    curve = write_json("curve.json", {
        "vertices": [{"id": "o"}],
        "edges": [{"id": "e", "tail": "o", "head": "o", "length": "1"}],
    })
    divisor = write_json("divisor.json", {"profiles": {"e": [["0", "0"], ["1", "4"]]}})
    code, report = run_json("curve", "check", curve, divisor)
    assert code == 0
    assert report["results"][0]["euler"] == 4
    assert set(report["digests"]) == {curve, divisor}


def test_non_permissible_divisor_exits_1(run_cli):
    code, out, err = run_cli("curve", "check", "fixture:trivalent-bad")
    assert code == 1
    assert out == ""
    assert "prepermissibility" in err


def test_truncated_json_exits_3(run_cli, write_json):
    path = write_json("curve.json", '{"vertices": [')
    code, _, err = run_cli("curve", "check", path, path)
    assert code == 3
    assert "not valid JSON" in err


def test_structural_error_exits_3(run_cli, write_json):
    curve = write_json("curve.json", {
        "vertices": [{"id": "o"}],
        "edges": [{"id": "e", "tail": "o", "head": "ghost"}],
    })
    divisor = write_json("divisor.json", {"profiles": {"e": [["0", "0"], ["1", "1"]]}})
    code, _, _ = run_cli("curve", "check", curve, divisor)
    assert code == 3


@pytest.mark.parametrize(
    "argv",
    [["curve"], ["nope"], ["--seed=abc", "fixtures"], ["compose", "sym", "-n", "2"], ["curve", "check", "fixture:x/"]],
)
def test_usage_errors_exit_3(run_cli, argv):
    code, _, _ = run_cli(*argv)
    assert code == 3


def test_random_run_is_deterministic(run_json):
    argv = ["--seed", "11", "curve", "random", "--genus", "2", "--leaves", "1", "--count", "25", "--split"]
    first_code, first = run_json(*argv)
    second_code, second = run_json(*argv)
    assert first_code == second_code == 0
    assert first.pop("wall_time_s") >= 0
    assert second.pop("wall_time_s") >= 0
    assert canonical_json(first) == canonical_json(second)


def test_wall_time_is_reported(run_json, run_cli):
    _, report = run_json("compose", "sym", "--chi", "2", "-n", "3")
    assert isinstance(report["wall_time_s"], float)
    _, out, _ = run_cli("compose", "sym", "--chi", "2", "-n", "3")
    assert "wall time: " in out


def test_random_run_reports_counts(run_json):
    code, report = run_json("curve", "random", "--genus", "1", "--count", "10")
    assert code == 0
    [result] = report["results"]
    assert result["passed"] == 10
    assert result["first_failure"] is None


def test_torus_check(run_json):
    code, report = run_json("torus", "check", "fixture:torus/2,3", "fixture:torus/0,1")
    assert code == 0
    regular, degenerate = report["results"]
    assert regular["euler"] == 6
    assert regular["brute_force_count"] == 6
    assert len(regular["points"]) == 6
    assert degenerate["degenerate"] and degenerate["count"] is None
    assert degenerate["ok"]


def test_torus_file_with_shift(run_json, write_json):
    path = write_json("torus.json", {"n": 2, "matrix": [[2, 1], [1, 3]], "shift": ["1/2", "0"]})
    code, report = run_json("torus", "check", path)
    assert code == 0
    assert report["results"][0]["euler"] == 5
    assert report["results"][0]["shift"] == ["1/2", "0"]


def test_bohr_sommerfeld(run_json):
    code, report = run_json("bs", "count", "fixture:lattice/2,3")
    assert code == 0
    assert report["results"][0]["count"] == 6


def test_ehrhart(run_json):
    code, report = run_json("ehrhart", "fixture:cube/2", "fixture:simplex/2,2")
    assert code == 0
    cube, simplex = report["results"]
    assert cube["ehrhart"] == ["1", "2", "1"]
    assert simplex["lattice_count"] == 6
    assert all(r["ok"] for r in simplex["reciprocity"])


def test_toric_lmd(run_json):
    code, report = run_json("toric", "lmd", "fixture:segment/5", "fixture:simplex/2")
    assert code == 0
    segment, simplex = report["results"]
    assert segment["lmd"] == {"plus": [[0, 6]], "minus": [[1, 4]]}
    assert simplex["delzant"] is True


def test_polytope_file_mismatch_exits_1(run_cli, write_json):
    path = write_json("p.json", {
        "n": 2,
        "vertices": [[0, 0], [1, 0], [0, 1], [1, 1]],
        "facets": [{"a": [-1, 0], "b": 0}, {"a": [0, -1], "b": 0}, {"a": [1, 1], "b": 1}],
    })
    code, _, _ = run_cli("toric", "lmd", path)
    assert code == 1


def test_compose_product(run_json):
    code, report = run_json("compose", "product", "fixture:elliptic/2", "fixture:elliptic/3")
    assert code == 0
    [result] = report["results"]
    assert result["euler"] == 6
    assert result["oracle"] == 6


def test_compose_product_of_tori(run_json):
    code, report = run_json("compose", "product", "fixture:torus/2", "fixture:torus/-1,3")
    assert code == 0
    assert report["results"][0]["euler"] == report["results"][0]["oracle"] == -6


def test_compose_cyclic_cover(run_json):
    code, report = run_json("compose", "cover", "fixture:elliptic/2", "--mode", "cyclic", "-d", "2")
    assert code == 0
    assert report["results"][0]["euler"] == 4


def test_compose_cyclic_cover_needs_a_curve(run_cli):
    code, _, _ = run_cli("compose", "cover", "fixture:torus/2", "--mode", "cyclic")
    assert code == 3


def test_compose_sym_from_chi(run_json):
    code, report = run_json("compose", "sym", "--chi", "2", "-n", "3")
    assert code == 0
    assert report["results"][0]["euler"] == 4
    code, report = run_json("compose", "sym", "--chi=-1", "-n", "2")
    assert report["results"][0]["euler"] == 0


def test_compose_sym_from_a_prior_report(run_cli, run_json, write_json):
    _, out, _ = run_cli("--json", "curve", "check", "fixture:tp1/2")
    path = write_json("report.json", out)
    code, report = run_json("compose", "sym", path, "-n", "2")
    assert code == 0
    # chi = 3, C(4, 2) = 6
    assert report["results"][0]["euler"] == 6


def test_fixture_listing(run_json):
    code, report = run_json("fixtures")
    assert code == 0
    assert {r["name"] for r in report["results"]} == set(fixtures.FIXTURES)


def test_mismatch_exits_2(monkeypatch, run_cli):
    real_check = CurveService.check

    def broken(curve, div, name=None):
        return real_check(curve, div, name).model_copy(update={"ok": False})

    monkeypatch.setattr(CurveService, "check", staticmethod(broken))
    code, out, _ = run_cli("--json", "curve", "check", "fixture:elliptic/2")
    assert code == 2
    assert '"ok": false' in out


def test_canonical_json_is_sorted():
    report = run_report(["x"], {"b": "2", "a": "1"}, [{"z": 1, "ok": True}])
    text = canonical_json(report)
    assert text.endswith("}\n")
    assert text.index('"command"') < text.index('"digests"') < text.index('"ok"') < text.index('"results"')
