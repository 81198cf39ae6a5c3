"""The command line must report exactly what the library computes."""

import json
import subprocess
import sys
from fractions import Fraction

import pytest

from avclab import io as jio
from avclab.aerm import aerm_halfspace
from avclab.cli import main
from avclab.geometry import ConstraintSet, dual_seminorm
from avclab.hypotheses import LabeledDataset
from avclab.risk import sample_complexity_bound
from avclab.shattering import point_indicator_construction, shattered_witness, unachievable_pattern


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def test_bound(capsys):
    code, doc = run(capsys, "bound", "--d", "3", "--eps", "0.1", "--delta", "0.05", "--C", "1")
    assert code == 0
    assert doc["sample_complexity"] == sample_complexity_bound(3, Fraction(1, 10), Fraction(1, 20), 1) == 1320


def test_construct_point_indicator(capsys):
    code, doc = run(capsys, "construct", "--paper-sec", "5", "--d", "2")
    assert code == 0
    assert doc["data"]["points"] == [["-1/1", "1/1"], ["1/1", "-1/1"]]
    assert jio.dataset_from_json(doc["data"]) == point_indicator_construction(2).data


def test_construct_witness(capsys):
    code, doc = run(capsys, "construct", "--construction", "witness", "--d", "2", "--linf", "1")
    assert jio.dataset_from_json(doc["data"]) == shattered_witness(ConstraintSet.lp_ball(2, "inf", 1))


def test_shatter_point_indicator(capsys):
    code, doc = run(capsys, "shatter", "--class", "pointind", "--d", "2", "--linf", "1", "--labels", "-1,-1")
    assert code == 0 and doc["shattered"] is True and doc["patterns"] == 4


def test_dualnorm(capsys):
    code, doc = run(capsys, "dualnorm", "--d", "2", "--linf", "2", "--w", "3,-4", "--x", "1,1")
    assert doc["dual_seminorm"] == "14/1" == jio.fmt(dual_seminorm(ConstraintSet.lp_ball(2, "inf", 2), (3, -4)))
    assert doc["seminorm"] == "1/2"


def test_corrupt_eval(capsys):
    code, doc = run(capsys, "corrupt-eval", "--d", "2", "--l2", "1", "--a", "1,0", "--x", "1/2,0")
    assert doc["labels"] == ["bot"]


def test_certify_and_aerm(capsys, tmp_path):
    data = LabeledDataset(((0,), (1,), (2,)), (1, 1, 1))
    path = tmp_path / "d.json"
    path.write_text(json.dumps(jio.dataset_to_json(data)))
    code, doc = run(capsys, "certify", "--d", "1", "--linf", "1", "--data", str(path))
    eta, cert = unachievable_pattern(data, ConstraintSet.lp_ball(1, "inf", 1))
    assert doc["pattern"] == doc["appendix_cert"]["eta"] == list(eta)
    assert doc["verified"] is True and doc["oracle"]["status"] == "infeasible"
    code, doc = run(capsys, "aerm", "--d", "1", "--linf", "1", "--points", "0;2", "--labels", "1,-1")
    ref = aerm_halfspace(LabeledDataset(((0,), (2,)), (1, -1)), ConstraintSet.lp_ball(1, "inf", 1))
    assert doc == jio.erm_to_json(ref)


def test_avc(capsys):
    code, doc = run(capsys, "avc", "--d", "2", "--l1", "1", "--trials", "4", "--seed", "1")
    assert doc["theorem_value"] == 3 and doc["witness_verified"] is True
    assert doc["counterexample_search_result"]["all_certified"] is True and doc["seed"] == 1


def test_rademacher(capsys, tmp_path):
    path = tmp_path / "v.json"
    path.write_text(json.dumps([[0, 0], [0, 1], [1, 0], [1, 1]]))
    code, doc = run(capsys, "rademacher", "--vectors", str(path))
    assert doc["value"] == "1/2" and doc["exact"] is True
    code, doc = run(capsys, "rademacher", "--vectors", str(path), "--samples", "100")
    assert doc["exact"] is False and isinstance(doc["seed"], int)


def test_experiment_is_reproducible(capsys, tmp_path):
    cfg = {
        "experiment": "sample_complexity",
        "seed": 3,
        "distribution": {"kind": "uniform_margin", "dim": 1, "gap": "3"},
        "body": {"dim": 1, "body": {"kind": "lp", "p": "inf", "eps": "1"}},
        "n_grid": [4, 6],
        "trials": 2,
        "holdout_size": 200,
    }
    (tmp_path / "c.json").write_text(json.dumps(cfg))
    outs = []
    for name in ("a", "b"):
        code, doc = run(capsys, "experiment", "--config", str(tmp_path / "c.json"),
                        "--out", str(tmp_path / f"{name}.jsonl"), "--summary", str(tmp_path / f"{name}.csv"))
        assert code == 0 and doc["records"] == 4
        outs.append((tmp_path / f"{name}.jsonl").read_bytes())
    assert outs[0] == outs[1]
    assert (tmp_path / "a.csv").read_text().startswith("n,eps,median_excess,iqr")


def test_exit_codes(capsys):
    code, doc = run(capsys, "bound", "--d", "3", "--eps", "2", "--delta", "0.5")
    assert code == 1 and doc["error"] == "PreconditionError" and "eps" in doc["message"]
    code, doc = run(capsys, "certify", "--d", "1", "--linf", "1", "--points", "0;1")
    assert code == 1 and "need at least" in doc["message"]
    code, doc = run(capsys, "aerm", "--points", "0")
    assert code == 2 and doc["error"] == "usage"
    with pytest.raises(SystemExit) as e:
        main(["bound", "--d", "x"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["nosuch"])
    assert e.value.code == 2


def test_pretty_table(capsys):
    main(["bound", "--d", "2", "--eps", "1/2", "--delta", "1/2", "--pretty"])
    assert capsys.readouterr().out.startswith("sample_complexity  ")


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "avclab.cli", "bound", "--d", "1", "--eps", "1/2", "--delta", "1/2"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout) == {"sample_complexity": sample_complexity_bound(1, Fraction(1, 2), Fraction(1, 2))}
