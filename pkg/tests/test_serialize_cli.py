"""JSON round trips, bundled golden files, and the command-line interface."""

import json
import os

import pytest

from hlya import serialize
from hlya.algebra import check_axioms
from hlya.cli import EXIT_INPUT, EXIT_OK, main
from hlya.cochain import Cochain
from hlya.deformation import (
    identity_gauge,
    null_deformation,
    random_gauge,
    verify_deformation,
)
from hlya.exactlin import rat
from hlya.serialize import ParseError

DATA = os.path.join(os.path.dirname(__file__), "..", "data")


def _golden(name):
    return os.path.join(DATA, name)


# --- round trips -----------------------------------------------------------


def test_algebra_round_trip(bundled):
    for a in bundled:
        assert serialize.algebra_from_obj(serialize.algebra_to_obj(a)) == a


def test_cochain_round_trip(e1):
    c = Cochain(2, 2, {(0, 1): (rat("1/2"), rat(-3)), (1, 0): (rat("-1/2"), rat(3))})
    obj = serialize.cochain_to_obj(c)
    assert serialize.cochain_from_obj(obj, 2, 2) == c


def test_cochain_duplicate_entries_summed():
    entries = [[1, 2, 1, "1/3"], [1, 2, 1, "2/3"]]
    c = serialize.cochain_from_obj(entries, 2, 2)
    assert c.value((0, 1)) == (rat(1), rat(0))


def test_deformation_and_gauge_round_trip(e1):
    import random

    d = null_deformation(e1, 2)
    obj = serialize.deformation_to_obj(d)
    assert serialize.deformation_from_obj(obj) == d
    p = random_gauge(e1, 2, random.Random(13))
    assert serialize.gauge_from_obj(serialize.gauge_to_obj(p)) == p


def test_matrix_round_trip(e2):
    from hlya.coboundary import delta1

    m = delta1(e2).matrix
    assert serialize.matrix_from_obj(serialize.matrix_to_obj(m)) == m


def test_dumps_deterministic(e2):
    obj = serialize.algebra_to_obj(e2)
    assert serialize.dumps(obj) == serialize.dumps(json.loads(serialize.dumps(obj)))


def test_parse_errors():
    with pytest.raises(ParseError):
        serialize.algebra_from_obj({"dim": 0})
    with pytest.raises(ParseError):
        serialize.algebra_from_obj({"dim": 2, "binary": [[2, 1, ["1", "0"]]]})
    with pytest.raises(ParseError):
        serialize.cochain_from_obj([[1, 2, 1, "1/0"]], 2, 2)
    with pytest.raises(ParseError):
        serialize.load_json(_golden("does_not_exist.json"))


# --- bundled goldens -------------------------------------------------------


def test_goldens_parse_and_pass_axioms(bundled):
    names = ["e0_abelian.json", "e1_aff1.json", "e2_sl2.json", "e3_heisenberg.json"]
    for name, expected in zip(names, bundled):
        a = serialize.load_algebra(_golden(name))
        assert check_axioms(a).all_passed
        assert a == expected


def test_golden_deformation_resolves_base_reference():
    d = serialize.load_deformation(_golden("e0_plus_aff.json"))
    assert d.base.dim == 2 and d.order == 2
    assert verify_deformation(d).ok


# --- command line ----------------------------------------------------------


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_check_ok(capsys):
    code, out, _ = _run(capsys, "check", _golden("e2_sl2.json"))
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["all_passed"] is True
    assert report["dim"] == 3


def test_cli_check_reports_failures_with_exit_zero(tmp_path, capsys):
    # axiom failure is an analysis verdict, not an input error
    obj = {
        "name": "broken",
        "dim": 2,
        "binary": [[1, 2, ["1", "0"]]],
        "ternary": [[1, 2, 1, ["0", "1"]]],
    }
    path = tmp_path / "broken.json"
    path.write_text(serialize.dumps(obj))
    code, out, _ = _run(capsys, "check", str(path))
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["all_passed"] is False
    assert report["counterexamples"]


def test_cli_input_errors(tmp_path, capsys):
    code, _, err = _run(capsys, "check", str(tmp_path / "missing.json"))
    assert code == EXIT_INPUT and "error:" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = _run(capsys, "check", str(bad))
    assert code == EXIT_INPUT


def test_cli_cohomology_and_table_format(capsys):
    code, out, _ = _run(capsys, "cohomology", _golden("e1_aff1.json"))
    assert code == EXIT_OK
    assert json.loads(out)["dims"]["h1"] == 2
    code, out, _ = _run(capsys, "cohomology", "--format", "table", _golden("e1_aff1.json"))
    assert code == EXIT_OK
    assert "h1: 2" in out


def test_cli_derive(capsys):
    code, out, _ = _run(capsys, "derive", "--k-max", "2", _golden("e3_heisenberg.json"))
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["dims"] == {"0": 3, "1": 3, "2": 3}
    assert report["closure_checked_pairs"] > 0


def test_cli_deform_check(capsys):
    code, out, _ = _run(capsys, "deform-check", _golden("e0_plus_aff.json"))
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["ok"] is True and report["failures"] == {}


def test_cli_trivialize_obstructed(capsys):
    code, out, _ = _run(capsys, "trivialize", _golden("e0_plus_aff.json"))
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["trivial"] is False
    assert report["obstructed_at"] == 1
    assert report["representative"]["f"]


def test_cli_obstruct(capsys):
    code, out, _ = _run(capsys, "obstruct", _golden("e0_plus_aff.json"))
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["in_z4z5"] is True
    assert report["F"] == [] and report["G"] == []
    assert report["extension_closes"] is True


def test_cli_equiv(tmp_path, capsys, e1):
    d = null_deformation(e1, 2)
    d_path = tmp_path / "d.json"
    d_path.write_text(serialize.dumps(serialize.deformation_to_obj(d)))
    g_path = tmp_path / "g.json"
    g_path.write_text(serialize.dumps(serialize.gauge_to_obj(identity_gauge(e1, 2))))
    code, out, _ = _run(capsys, "equiv", str(d_path), str(d_path), str(g_path))
    assert code == EXIT_OK
    assert json.loads(out)["equivalent"] is True


def test_cli_dump_operator(capsys):
    code, out, _ = _run(capsys, "dump-operator", _golden("e1_aff1.json"), "1")
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["domain_dims"] == [4]
    assert report["codomain_dims"] == [2, 4]
    assert report["matrix"]["rows"] == 6


def test_cli_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = _run(
        capsys, "check", "--output", str(target), _golden("e0_abelian.json")
    )
    assert code == EXIT_OK and out == ""
    assert json.loads(target.read_text())["all_passed"] is True


def test_cli_output_deterministic(tmp_path, capsys):
    t1, t2 = tmp_path / "a.json", tmp_path / "b.json"
    for t in (t1, t2):
        assert _run(capsys, "cohomology", "--output", str(t), _golden("e2_sl2.json"))[0] == EXIT_OK
    assert t1.read_bytes() == t2.read_bytes()
