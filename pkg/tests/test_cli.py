from __future__ import annotations

import json

import pytest

from subdivcat import corpus, io
from subdivcat.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_IO, EXIT_OK, EXIT_PARSE, EXIT_USAGE, WE_STYLE, run
from subdivcat.relcat import make_check, make_hat
from subdivcat.sset import boundary, delta, horn


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else io.dumps(obj))
        return str(path)

    return write


def test_subdivide_text(files, capsys):
    path = files("c1.json", make_check(1))
    assert run(["subdivide", path, "--format", "text"]) == EXIT_OK
    assert capsys.readouterr().out == "5 elements, 4 covers, 3 weak-equivalence covers\n"


def test_subdivide_json_round_trips(files, capsys, tmp_path):
    path = files("d.json", corpus.with_identity_we(corpus.diamond()))
    out = tmp_path / "out.json"
    assert run(["subdivide", "-t", path, "-o", str(out)]) == EXIT_OK
    P = io.load(out)
    assert len(P.elements) == 8  # 4 points + 4 comparable pairs


def test_dot_marks_weak_equivalences(files, capsys):
    path = files("h.json", make_hat(1))
    assert run(["dot", path]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("digraph") and WE_STYLE in out


def test_homology_of_diamond(files, capsys):
    assert run(["homology", files("d.json", corpus.diamond())]) == EXIT_OK
    assert capsys.readouterr().out == "H0=Z, H1=Z\n"


def test_compare_thomason(files, capsys):
    C = io.category_to_json(corpus.categories()["[1]"])
    assert run(["compare-thomason", files("c.json", json.dumps(C)), "-d", "1"]) == EXIT_OK
    assert "n=1: 13 = 13 MATCH" in capsys.readouterr().out


def test_hom_count_and_transpose_check(files, capsys):
    K, X = files("k.json", delta(1)), files("x.json", make_hat(1))
    assert run(["hom-count", K, X]) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == ["Hom(c K, X) = 13", "Hom(K, N X) = 13", "MATCH"]
    assert run(["transpose-check", files("b.json", boundary(1)), X, "--format", "json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["ok"] is True


def test_left_adjoint_and_materialize(files, capsys, tmp_path):
    out = tmp_path / "p.json"
    assert run(["left-adjoint", files("h.json", horn(2, 1)), "-o", str(out)]) == EXIT_OK
    assert run(["materialize", str(out), "--format", "text"]) == EXIT_OK
    assert capsys.readouterr().out == "9 objects, 17 morphisms, 15 weak equivalences\n"


def test_relnerve_and_inner_horns(files, capsys):
    path = files("c1.json", make_check(1))
    assert run(["relnerve", path, "-d", "2"]) == EXIT_OK
    assert capsys.readouterr().out == "n=0: 2\nn=1: 3\nn=2: 4\n"
    assert run(["inner-horns", path, "-d", "2"]) == EXIT_OK
    assert capsys.readouterr().out == "Lambda^2_1: 4 horns, 0 without filler\n"


def test_validate_reports_violations(files, capsys, expect_invalid):
    bad = files("bad.json", json.dumps({"elements": [0, 1, 2], "leq": [[0, 0], [1, 1], [2, 2], [0, 1], [1, 2]]}))
    with expect_invalid():
        assert run(["validate", bad]) == EXIT_FAIL
    assert "transitiv" in capsys.readouterr().out
    assert run(["validate", files("ok.json", make_check(2))]) == EXIT_OK


def test_error_exit_codes(files, tmp_path):
    assert run(["homology", str(tmp_path / "missing.json")]) == EXIT_IO
    assert run(["homology", files("junk.json", "{not json")]) == EXIT_PARSE
    assert run(["homology", files("odd.json", json.dumps({"elements": [0], "leq": [[0, 0]], "x": 1}))]) == EXIT_PARSE
    assert run(["no-such-verb"]) == EXIT_USAGE
    assert run(["relnerve", files("h.json", make_hat(1)), "-d", "2", "--budget", "100"]) == EXIT_BUDGET
    assert run(["materialize", files("c.json", make_check(1))]) == EXIT_USAGE


def test_output_is_byte_identical_and_reloads(files, tmp_path):
    path = files("d.json", corpus.with_identity_we(corpus.diamond()))
    outs = []
    for i in range(2):
        out = tmp_path / f"run{i}.json"
        assert run(["subdivide", "--twofold", path, "-o", str(out)]) == EXIT_OK
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    assert io.load(tmp_path / "run0.json") is not None
    nerve_out = tmp_path / "nerve.json"
    assert run(["relnerve", files("c.json", make_check(1)), "-d", "2", "--format", "json", "-o", str(nerve_out)]) == EXIT_OK
    assert io.load(nerve_out).counts == (2, 1, 0)
