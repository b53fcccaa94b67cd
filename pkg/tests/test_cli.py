import json
import subprocess
import sys

import pytest

from raagcc.cli import main, run
from raagcc.corpus import diamonds, path


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


def test_rank_from_file(tmp_path):
    f = write(tmp_path, "d3.json", diamonds(3).to_json())
    report, code = run(["rank", "--graph", f])
    assert code == 0
    assert report["artifacts"]["rank"] == 3
    assert report["artifacts"]["sphere_dimension"] == 2


def test_decompose_text(tmp_path, capsys):
    f = write(tmp_path, "p.json", path(5).to_json())
    assert main(["decompose", "--graph", f, "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("command: decompose")
    assert "[PASS] rank-sum" in out


def test_analyze_and_parabolics():
    report, code = run(["analyze", "--example", "diamonds:2"])
    assert code == 0 and report["artifacts"]["rank"] == 2
    report, code = run(["parabolics", "--example", "diamonds:3"])
    assert code == 0 and len(report["artifacts"]["parabolics"]) == 3


def test_exit_codes(tmp_path, capsys):
    assert main(["rank", "--graph", str(tmp_path / "missing.json")]) == 2
    assert "error:" in capsys.readouterr().err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["rank", "--graph", str(bad)]) == 2
    assert main(["rank"]) == 2
    assert main(["rank", "--example", "complete:6", "--max-vertices", "4"]) == 3
    assert main(["building", "--n", "5"]) == 3
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_out_file_and_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["decompose", "--example", "diamonds:3", "--out", str(a)]) == 0
    assert main(["decompose", "--example", "diamonds:3", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())
    assert set(report) == {"command", "inputs", "verdicts", "artifacts"}
    assert all(v["lemma"] for v in report["verdicts"])


def test_homology_complex(tmp_path):
    f = write(tmp_path, "k.json", {"facets": [["a", "b"], ["b", "c"], ["a", "c"]]})
    report, code = run(["homology", "--complex", f, "--certify", "spherical", "--degree", "1"])
    assert code == 0
    assert report["artifacts"]["homology"]["1"]["betti"] == 1
    assert report["verdicts"][0]["pass"]
    report, code = run(["homology", "--complex", f, "--certify", "spherical", "--degree", "0"])
    assert code == 4


def test_homology_multigraph():
    report, code = run(["homology", "--example", "rose:2"])
    assert code == 0
    assert all(v["pass"] for v in report["verdicts"])


def test_coset(tmp_path):
    fam = write(tmp_path, "fam.json", {"generators": [[2], [3]]})
    report, code = run(["coset", "--example", "z:6", "--family", fam])
    assert code == 0
    assert report["artifacts"]["cc_homology"]["1"]["betti"] == 2
    assert run(["coset", "--example", "z:6"])[1] == 2


def test_coset_with_normal(tmp_path):
    # S3 on permutations; family {<(01)>, A3}, normal A3
    group = write(tmp_path, "g.json", {"permutations": [[1, 0, 2], [1, 2, 0]]})
    report, _ = run(["coset", "--group", group, "--family", write(tmp_path, "x.json", [])])
    assert "error" in report
    from raagcc.groups import FiniteGroup

    g = FiniteGroup.from_json({"permutations": [[1, 0, 2], [1, 2, 0]]})
    a3 = next(h for h in g.subgroups if len(h) == 3)
    t = next(h for h in g.subgroups if len(h) == 2)
    fam = write(tmp_path, "f.json", [sorted(a3), sorted(t)])
    normal = write(tmp_path, "n.json", sorted(a3))
    report, code = run(["coset", "--group", group, "--family", fam, "--normal", normal])
    assert code == 0
    assert report["artifacts"]["divided"]["strongly_divided"]
    assert {v["check"] for v in report["verdicts"]} >= {"ses-join", "kernel-iso", "closure-split"}


def test_building():
    report, code = run(["building", "--n", "3", "--q", "2"])
    assert code == 0
    assert report["artifacts"]["subspaces"] == 14


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "raagcc", "rank", "--example", "diamonds:2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["artifacts"]["rank"] == 2
