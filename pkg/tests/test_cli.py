import io
import json
import subprocess
import sys

import pytest

from mcfg_mix.cli import default_jobs, growth_exponent, main, run_check, run_lemma_check
from mcfg_mix.grammar import derivation_from_dict, mix_o2_grammar, yield_of

from conftest import FIG1, FIG4

G = mix_o2_grammar()


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_recognize_exit_codes():
    assert run("recognize", "--mix-o2", "aAbB") == (0, "accept\n")
    assert run("recognize", "ab") == (1, "reject\n")
    assert run("recognize", FIG1[0] + FIG1[1])[0] == 0
    assert run("recognize", "--unicode", "ab̄āb̄ābba") == (0, "accept\n")
    assert run("recognize", "")[0] == 0
    assert run("recognize", "abc")[0] == 2


def test_recognize_with_grammar_file(tmp_path):
    g = tmp_path / "copy.mcfg"
    g.write_text("S(x y) <- T(x, y)\nT(a x, a y) <- T(x, y)\nT(b x, b y) <- T(x, y)\nT(eps, eps) <-\n")
    assert run("recognize", "--grammar", str(g), "abab")[0] == 0
    assert run("recognize", "--grammar", str(g), "abba")[0] == 1
    assert run("recognize", "--grammar", str(tmp_path / "missing"), "ab")[0] == 2
    bad = tmp_path / "bad.mcfg"
    bad.write_text("S(x) <- <-\n")
    assert run("recognize", "--grammar", str(bad), "ab")[0] == 2


@pytest.mark.parametrize("method", ["chart", "constructive"])
def test_derive_replays(method):
    w = FIG1[0] + FIG1[1]
    code, text = run("derive", w, "--method", method)
    assert code == 0
    tree = derivation_from_dict(json.loads(text))
    assert yield_of(G, tree) == (w,)
    code, text = run("derive", "aA", "--method", method, "--format", "sexpr")
    assert code == 0 and text.startswith("(1 ")


def test_derive_rejects_unbalanced(capsys):
    assert run("derive", "ab")[0] == 1
    assert "not in O2" in capsys.readouterr().err


def test_check_counts():
    code, text = run("check", "--max-len", "4")
    assert code == 0
    assert "length 0: 1 accepted" in text and "length 2: 4 accepted" in text and "length 4: 36 accepted" in text
    assert "length 3: 0 accepted" in text and "mismatches: 0" in text
    assert run("check", "--max-len", "2")[1].count("accepted") == 3
    code, text = run("check", "--max-len", "0")
    assert code == 0 and "length 0: 1 accepted" in text


def test_check_jobs_do_not_change_output():
    one = run("check", "--max-len", "5", "--jobs", "1")
    two = run("check", "--max-len", "5", "--jobs", "2")
    assert one == two and one[0] == 0
    rep = run_check(4, "chart", 1)
    assert rep.accepted == {0: 1, 1: 0, 2: 4, 3: 0, 4: 36}


def test_jobs_env(monkeypatch):
    monkeypatch.setenv("MCFG_MIX_JOBS", "3")
    assert default_jobs() == 3
    monkeypatch.setenv("MCFG_MIX_JOBS", "x")
    with pytest.raises(ValueError):
        default_jobs()
    monkeypatch.delenv("MCFG_MIX_JOBS")
    assert default_jobs() == 1
    assert run("check", "--max-len", "2", "--jobs", "0")[0] == 2


def test_lemma_check():
    code, text = run("lemma-check", "--max-len", "6")
    assert code == 0
    assert "admissible pairs: 288" in text and "counterexamples: 0" in text
    code, text = run("lemma-check", "--max-len", "2")
    assert code == 0 and "admissible pairs: 0" in text
    rep = run_lemma_check(6, 2, False)
    assert rep.admissible == 288 and rep.by_length == {4: 36, 6: 252}
    assert run_lemma_check(6, 1, True).counterexamples == []


def test_lemma_check_sampling_is_deterministic():
    a = run("lemma-check", "--samples", "50", "--len", "12", "--seed", "3")
    b = run("lemma-check", "--samples", "50", "--len", "12", "--seed", "3")
    assert a == b and a[0] == 0
    assert run("lemma-check", "--samples", "5", "--len", "7")[0] == 2
    assert run("lemma-check", "--samples", "5")[0] == 2
    assert run("lemma-check")[0] == 2


def test_geometry_outputs(tmp_path):
    svg, js = tmp_path / "f.svg", tmp_path / "f.json"
    assert run("geometry", *FIG1, "--svg", str(svg), "--json", str(js))[0] == 0
    doc = json.loads(js.read_text())
    assert doc["points"]["P[1]"] == [-1, -1]
    assert svg.read_text().startswith("<svg")
    code, text = run("geometry", *FIG4, "--origin=-3,0", "--k-range=-1..1")
    assert code == 0
    doc = json.loads(text)
    assert {"point": [0, 1], "d": [6, 1], "overlap": False} in doc["intersections"]["A[0]&A[1]"]
    assert "A[-1]" in doc["paths"]


@pytest.mark.parametrize("argv", [
    ("geometry", "", ""),
    ("geometry", "aA", "bB"),
    ("geometry", "ab", "A"),
    ("geometry", "a", "A", "--k-range", "3..1"),
    ("geometry", "a", "A", "--origin", "x"),
])
def test_geometry_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_bench_counts_are_deterministic():
    code, text = run("bench", "--lengths", "0,4,8", "--samples", "2", "--seed", "1")
    assert code == 0
    rows = [ln.split() for ln in text.splitlines()[1:] if ln[:1].isdigit()]
    assert [r[0] for r in rows] == ["0", "4", "8"]
    again = [ln.split() for ln in run("bench", "--lengths", "0,4,8", "--samples", "2", "--seed", "1")[1]
             .splitlines()[1:] if ln[:1].isdigit()]
    assert [r[:4] for r in rows] == [r[:4] for r in again]
    assert run("bench", "--lengths", "3")[0] == 2


def test_growth_exponent():
    pts = [(n, 5 * n ** 3) for n in (8, 12, 16, 20)]
    assert growth_exponent(pts) == pytest.approx(3.0)


def test_unknown_flags_and_commands():
    assert run("recognize", "aA", "--bogus")[0] == 2
    assert run("frobnicate")[0] == 2
    assert run()[0] == 2


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "mcfg_mix.cli", "recognize", "aA"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "accept\n"
