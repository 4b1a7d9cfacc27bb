"""Command-line driver: problem files in, reports out, exit codes honest."""

import json

import pytest

import folindex.cli as cli
from folindex.verify import GlobalReport


def write_problem(tmp_path, doc, name="problem.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run(tmp_path, argv, doc, name="problem.json", report="report.json"):
    inp = write_problem(tmp_path, doc, name)
    out = str(tmp_path / report)
    code = cli.main(argv + ["--input", inp, "--json", out])
    payload = json.loads((tmp_path / report).read_text()) if (tmp_path / report).exists() else None
    return code, payload


CUSP_HAM = {
    "variables": ["x", "y"],
    "germ": {"vector_field": ["2*y", "3*x^2"], "divisor": "y^2 - x^3"},
}

DIAG_FOL = {
    "variables": ["x", "y", "z"],
    "foliation": {"affine_field": ["x", "2*y"], "divisor": "z"},
}


# ----------------------------------------------------------------- exit 0

def test_index_gsv_report(tmp_path):
    code, payload = run(tmp_path, ["index", "--kind", "gsv"], CUSP_HAM)
    assert code == 0
    assert payload["schema_version"] == "1"
    assert payload["kind"] == "GSV"
    assert payload["value"] == "0"
    assert payload["pass"] is True
    assert payload["problem"] == CUSP_HAM
    assert payload["ingredients"]["milnor"] == "2"


def test_verify_seh_report(tmp_path):
    code, payload = run(tmp_path, ["verify", "--theorem", "seh"], DIAG_FOL)
    assert code == 0
    assert payload["kind"] == "COR_SEH"
    assert payload["value"] == "1"
    assert payload["ingredients"]["lhs"] == payload["ingredients"]["rhs"] == "1"
    kinds = sorted(kind for _, kind, _ in payload["per_point"])
    assert kinds == ["LOG", "LOG", "PH"]


def test_verify_baum_bott_ignores_missing_divisor(tmp_path):
    doc = {"variables": ["x", "y", "z"],
           "foliation": {"affine_field": ["x", "2*y"]}}
    code, payload = run(tmp_path, ["verify", "--theorem", "baum-bott"], doc)
    assert code == 0
    assert payload["value"] == "3"


def test_puiseux_report(tmp_path):
    code, payload = run(tmp_path, ["puiseux"], CUSP_HAM)
    assert code == 0
    assert payload["value"] == "1"
    branches = payload["ingredients"]["branches"]
    assert len(branches) == 1
    assert branches[0]["exact"] is True
    assert payload["ingredients"]["curve_multiplicity"] == "2"


def test_confun_expression(tmp_path):
    code, payload = run(tmp_path, ["confun", "--expr", "1[y^2 - x^3]"], CUSP_HAM)
    assert code == 0
    assert payload["value"] == "2"
    # complement of the two axes: saddle gives 0, the squares field gives 1
    for field, want in ((["x", "-y"], "0"), (["x^2", "y^2"], "1")):
        code, payload = run(tmp_path, ["confun", "--expr", "1[W] - 1[x] - 1[y] + 1[0]"],
                            {"variables": ["x", "y"],
                             "germ": {"vector_field": field}})
        assert code == 0
        assert payload["value"] == want


def test_confun_euler_atom(tmp_path):
    code, payload = run(tmp_path, ["confun", "--expr", "Eu[y^2 - x^3]"], CUSP_HAM)
    assert code == 0
    assert payload["value"] == "3"
    code, payload = run(tmp_path, ["confun", "--expr", "2*Eu[y^2 - x^3] - Psi[y^2 - x^3]"],
                        CUSP_HAM)
    assert code == 0
    assert payload["value"] == "6"


def test_chern_plane(tmp_path):
    doc = {"variables": [], "chern": {"kind": "plane", "twist": -1}}
    code, payload = run(tmp_path, ["chern"], doc)
    assert code == 0
    assert payload["value"] == "7"


def test_chern_snc(tmp_path):
    doc = {"variables": [], "chern": {"kind": "snc", "degrees": [1, 1, 1]}}
    code, payload = run(tmp_path, ["chern"], doc)
    assert code == 0
    assert payload["value"] == "0"


def test_field_extension_problem(tmp_path):
    doc = {
        "variables": ["x", "y"],
        "field": {"generator": "r", "minpoly": "r^2 - 2"},
        "germ": {"vector_field": ["x - r*y", "y + r*x"]},
    }
    code, payload = run(tmp_path, ["index", "--kind", "ph"], doc)
    assert code == 0
    assert payload["value"] == "1"


def test_log_with_explicit_basis(tmp_path):
    doc = {
        "variables": ["x", "y"],
        "germ": {"vector_field": ["2*y", "3*x^2"], "divisor": "y^2 - x^3",
                 "log_basis": [["2*x", "3*y"], ["2*y", "3*x^2"]]},
    }
    code, payload = run(tmp_path, ["index", "--kind", "log"], doc)
    assert code == 0
    assert payload["value"] == "0"


# -------------------------------------------------------------- determinism

def test_reports_are_deterministic(tmp_path):
    inp = write_problem(tmp_path, CUSP_HAM)
    out1, out2 = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    assert cli.main(["index", "--kind", "schwartz", "--input", inp, "--json", out1]) == 0
    assert cli.main(["index", "--kind", "schwartz", "--input", inp, "--json", out2]) == 0
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_report_echo_reproduces_itself(tmp_path):
    code, payload = run(tmp_path, ["index", "--kind", "euobs"], CUSP_HAM)
    assert code == 0
    code2, payload2 = run(tmp_path, ["index", "--kind", "euobs"], payload["problem"],
                          name="echo.json", report="echo_report.json")
    assert code2 == 0
    assert payload2 == payload


# ------------------------------------------------------------------ exit 1

def test_unknown_top_level_key(tmp_path):
    doc = dict(CUSP_HAM)
    doc["extra"] = 1
    code, _ = run(tmp_path, ["index", "--kind", "gsv"], doc)
    assert code == 1


def test_unknown_germ_key(tmp_path):
    doc = {"variables": ["x", "y"],
           "germ": {"vector_field": ["x", "y"], "divisorr": "x*y"}}
    code, _ = run(tmp_path, ["index", "--kind", "ph"], doc)
    assert code == 1


def test_malformed_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert cli.main(["index", "--kind", "ph", "--input", str(path)]) == 1


def test_two_sections_rejected(tmp_path):
    doc = {"variables": ["x", "y"],
           "germ": {"vector_field": ["x", "y"]},
           "chern": {"kind": "plane"}}
    code, _ = run(tmp_path, ["index", "--kind", "ph"], doc)
    assert code == 1


def test_usage_errors_are_exit_1(tmp_path):
    assert cli.main(["index"]) == 1
    assert cli.main(["nonsense"]) == 1
    inp = write_problem(tmp_path, CUSP_HAM)
    assert cli.main(["index", "--kind", "wrong", "--input", inp]) == 1


def test_bad_expressions(tmp_path):
    for expr in ("", "1[x", "1]x[", "Foo[x]", "1[W] + + 1[0]", "1[W] 1[0]"):
        code, _ = run(tmp_path, ["confun", "--expr", expr], CUSP_HAM,
                      report=f"r{hash(expr) % 97}.json")
        assert code == 1, expr


def test_wrong_section_for_command(tmp_path):
    code, _ = run(tmp_path, ["verify", "--theorem", "baum-bott"], CUSP_HAM)
    assert code == 1


# ------------------------------------------------------------------ exit 2

def test_log_without_basis(tmp_path):
    code, _ = run(tmp_path, ["index", "--kind", "log"], CUSP_HAM)
    assert code == 2


def test_missing_divisor(tmp_path):
    doc = {"variables": ["x", "y"], "germ": {"vector_field": ["2*y", "3*x^2"]}}
    code, _ = run(tmp_path, ["index", "--kind", "gsv"], doc)
    assert code == 2


def test_non_tangent_field(tmp_path):
    doc = {"variables": ["x", "y"],
           "germ": {"vector_field": ["x", "y"], "divisor": "y^2 - x^3"}}
    code, _ = run(tmp_path, ["index", "--kind", "euobs"], doc)
    assert code == 2


def test_non_invariant_divisor(tmp_path):
    doc = {"variables": ["x", "y", "z"],
           "foliation": {"affine_field": ["y^2 - x^3", "1 - x^2*y"],
                         "divisor": "x*y*z"}}
    code, _ = run(tmp_path, ["verify", "--theorem", "seh"], doc)
    assert code == 2


# ------------------------------------------------------------------ exit 3

def test_failed_identity_is_exit_3(tmp_path, monkeypatch):
    def broken(foliation):
        return GlobalReport(theorem="BAUM_BOTT", lhs=3, rhs=4,
                            per_point=(), passed=False)

    monkeypatch.setattr(cli, "verify_baum_bott", broken)
    doc = {"variables": ["x", "y", "z"],
           "foliation": {"affine_field": ["x", "2*y"]}}
    code, payload = run(tmp_path, ["verify", "--theorem", "baum-bott"], doc)
    assert code == 3
    assert payload["pass"] is False
    assert payload["ingredients"]["lhs"] == "3"
    assert payload["ingredients"]["rhs"] == "4"


# ------------------------------------------------------------------ exit 4

NONEXACT = {
    "variables": ["x", "y"],
    "germ": {"vector_field": ["2*y", "3*x^2 + 4*x^3"],
             "divisor": "y^2 - x^3 - x^4"},
}


def test_precision_cap_is_exit_4(tmp_path, monkeypatch):
    monkeypatch.setenv("FOLINDEX_PRECISION_CAP", "2")
    code, _ = run(tmp_path, ["index", "--kind", "euobs"], NONEXACT)
    assert code == 4


def test_default_cap_clears_the_same_problem(tmp_path):
    code, payload = run(tmp_path, ["index", "--kind", "euobs"], NONEXACT)
    assert code == 0
    assert payload["value"] == "3"


def test_bad_cap_value_is_exit_1(tmp_path, monkeypatch):
    monkeypatch.setenv("FOLINDEX_PRECISION_CAP", "one")
    code, _ = run(tmp_path, ["index", "--kind", "euobs"], NONEXACT)
    assert code == 1
