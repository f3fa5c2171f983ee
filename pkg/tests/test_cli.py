import json
import os

import pytest

from treelattice.cli import main

DATA = os.path.join(os.path.dirname(__file__), os.pardir, "data")


def data(name):
    return os.path.join(DATA, name)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", "--graph", data("single_star.json"))
    assert code == 0 and json.loads(out)["valid"] is True
    bad = {"vertices": [{"id": "a"}, {"id": "b"}],
           "edges": [{"id": "e", "origin": "a", "terminus": "b", "index": 0, "reverse": "f"},
                     {"id": "f", "origin": "b", "terminus": "a", "index": 1, "reverse": "e"}]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, out, _ = run(capsys, "validate", "--graph", str(path))
    assert code == 3 and "index must be ≥ 1" in out


def test_unreadable_input(capsys, tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "validate", "--graph", str(path))
    assert code == 2 and "cannot read" in err


def test_order(capsys):
    code, out, _ = run(capsys, "order", "--graph", data("single_star.json"), "--base", "v0",
                       "--integral")
    assert code == 0
    assert json.loads(out)["vertices"]["v0"] == "1/1"
    code, _, err = run(capsys, "order", "--graph", data("nonunimodular_cycle.json"), "--base", "a")
    assert code == 4 and "not unimodular" in err


def test_covers(capsys):
    code, out, _ = run(capsys, "cover-degree", "--cover", data("identity_cover.json"))
    assert code == 0 and out.strip() == "1"
    code, out, _ = run(capsys, "cover-check", "--cover", data("identity_cover.json"))
    assert code == 0


@pytest.mark.parametrize("argv,expect", [
    (["--startree", "ray", "--n", "3"], "2/1"),
    (["--startree", "ray", "--n", "6", "--s", "(3,6)"], "5/3"),
    (["--startree", "star", "--n", "3"], "1/1"),
])
def test_covolume(capsys, argv, expect):
    code, out, _ = run(capsys, "covolume", *argv)
    assert code == 0 and out.strip() == expect


def test_covolume_from_file(capsys):
    code, out, _ = run(capsys, "covolume", "--startree", data("ray_with_B2.json"), "--n", "3")
    assert code == 0 and out.strip() == "9/4"


def test_startree_formats(capsys):
    code, out, _ = run(capsys, "startree", "--startree", "ray", "--depth", "2")
    assert code == 0 and json.loads(out)["vertices"]
    code, out, _ = run(capsys, "startree", "--startree", "ray", "--depth", "2", "--format", "dot",
                       "--ordering")
    assert code == 0 and "v2" in out
    code, _, _ = run(capsys, "startree", "--startree", "ray")
    assert code == 4


def test_realize(capsys):
    code, out, _ = run(capsys, "realize", "--kappa", "3", "--m", "4", "--n", "3")
    rep = json.loads(out)
    assert code == 0 and rep["covolume"] == "3/1" and rep["digits"]["digits"] == "2,(0)"
    code, _, _ = run(capsys, "realize", "--kappa", "1", "--m", "4", "--n", "3", "--f", "exp:2")
    assert code == 4


def test_realize_samples(capsys):
    code, out, _ = run(capsys, "realize", "--kappa", "7/2", "--n", "3", "--samples", "5",
                       "--seed", "1")
    assert code == 0
    again = run(capsys, "realize", "--kappa", "7/2", "--n", "3", "--samples", "5", "--seed", "1")[1]
    assert out == again


def test_shrink(capsys):
    code, out, _ = run(capsys, "shrink", "--startree", "ray", "--n", "4", "--k", "2", "--depth", "3")
    rep = json.loads(out)
    assert code == 0 and rep["covolume"] == "1/4" and rep["checks"]["H_order"] == 6


def test_growth(capsys):
    code, out, _ = run(capsys, "growth", "--f", "exp:3/2", "--g", "exp:7/4")
    assert code == 0 and json.loads(out)["equivalent"]["holds"] is False
    code, out, _ = run(capsys, "growth", "--startree", "ray", "--kind", "stabilizer", "--v0-only",
                       "--k-max", "5")
    assert code == 0


def test_export(capsys):
    code, out, _ = run(capsys, "export", "--graph", data("single_star.json"), "--format", "dot")
    assert code == 0 and "v0" in out
