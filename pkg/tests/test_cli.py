import json

import pytest

from ovalcode.cli import main, read_word
from ovalcode.errors import FieldDomainError
from ovalcode.gf2m import field_new
from ovalcode.nmds import build_generator, encode
from ovalcode.ovalpoly import make_family

CODE3 = ["--m", "3", "--family", "translation", "--h", "2"]


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_construct(capsys):
    rc, out, _ = run(capsys, "construct", *CODE3)
    assert rc == 0
    js = json.loads(out)
    assert js["n"] == 13 and len(js["columns"]) == 13
    assert js["columns"][2] == [1, 2, 6]
    assert js["modulus"] == 11


def test_construct_textual_oval(capsys):
    rc, out, _ = run(capsys, "construct", "--m", "3", "--oval", "family=custom terms=4:1")
    assert rc == 0
    assert json.loads(out)["oval"]["terms"] == [[4, 1]]


@pytest.mark.parametrize("argv", [
    ["construct", "--m", "4", "--family", "segre"],
    ["construct", "--m", "3", "--family", "payne"],
    ["construct", "--m", "3", "--family", "custom", "--terms", "1:1"],
    ["construct", "--m", "3"],
    ["construct", "--family", "segre"],
])
def test_construct_parameter_errors(capsys, argv):
    rc, _, err = run(capsys, *argv)
    assert rc == 2
    assert err.startswith("error:")


def test_payne_diagnostic(capsys):
    _, _, err = run(capsys, "construct", "--m", "3", "--family", "payne")
    assert "not an integer" in err


def test_argparse_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        main(["construct", "--family", "hyperbola"])
    assert e.value.code == 2


def test_check_oval(capsys):
    rc, out, _ = run(capsys, "check-oval", "--m", "3", "--family", "segre")
    assert rc == 0 and json.loads(out)["oval"] is True
    rc, out, _ = run(capsys, "check-oval", "--m", "3", "--family", "custom", "--terms", "3:1")
    assert rc == 1
    # field-only commands accept even m
    rc, out, _ = run(capsys, "check-oval", "--m", "4", "--family", "custom", "--terms", "4:1")
    assert rc == 1 and json.loads(out)["permutation"] is True


def test_weights_csv(capsys, tmp_path):
    fig = tmp_path / "w.png"
    rc, out, _ = run(capsys, "weights", *CODE3, "--figure", str(fig))
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "weight,count"
    assert "10,112" in lines and "13,126" in lines
    assert fig.stat().st_size > 0


def test_weights_dual_json(capsys):
    rc, out, _ = run(capsys, "weights", *CODE3, "--dual", "--format", "json")
    assert rc == 0
    js = json.loads(out)
    assert js["counts"][:4] == [1, 0, 0, 112]
    assert sum(js["counts"]) == 8 ** 10


def test_verify_m3(capsys):
    rc, out, _ = run(capsys, "verify", *CODE3)
    assert rc == 0
    assert "[13,3,10]" in out and "112z^10" in out
    assert "FAIL" not in out


def test_verify_json_and_report(capsys, tmp_path):
    rc, out, _ = run(capsys, "verify", "--m", "5", "--family", "glynn-a", "--format", "json",
                     "--samples", "20", "--report-dir", str(tmp_path))
    assert rc == 0
    js = json.loads(out)
    assert js["passed"] and js["nmds"]["d"] == 34
    for name in ("weights.csv", "dual_weights.csv", "cases.csv", "generator.json",
                 "repair_plans.json", "optimality.json", "weights.png", "cases.png"):
        assert (tmp_path / name).exists()
    rows = (tmp_path / "weights.csv").read_text().splitlines()
    assert rows[0] == "weight,count,closed_form" and "34,1612,1612" in rows


def test_verify_resource_limit(capsys, monkeypatch):
    monkeypatch.delenv("OVALCODE_MAX_M", raising=False)
    rc, _, err = run(capsys, "verify", "--m", "9", "--family", "segre")
    assert rc == 3 and "cap" in err


def test_verify_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("OVALCODE_MAX_M", "3")
    rc, _, _ = run(capsys, "verify", "--m", "5", "--family", "segre")
    assert rc == 3
    rc, _, _ = run(capsys, "verify", "--m", "5", "--family", "segre", "--max-m", "5", "--samples", "5")
    assert rc == 0


def test_locality(capsys):
    rc, out, _ = run(capsys, "locality", *CODE3, "--dual-plans")
    js = json.loads(out)
    assert rc == 0
    assert js["locality"] == 2 and js["dual_locality"] == 9
    assert js["support_union_is_all"] and js["support_intersection"] == []
    assert len(js["repair_plans"]) == 13
    assert all(len(p["repair_set"]) == 9 for p in js["dual_repair_plans"])


def _word_file(tmp_path, symbols):
    p = tmp_path / "word.txt"
    p.write_text(" ".join(str(s) for s in symbols) + "\n")
    return str(p)


@pytest.fixture(scope="module")
def c3():
    return build_generator(make_family("translation", field_new(3), 2))


def test_repair_roundtrip(capsys, tmp_path, c3):
    c = encode(c3, [3, 6, 1])
    word = ["?"] + c[1:]
    rc, out, _ = run(capsys, "repair", *CODE3, "--codeword", _word_file(tmp_path, word))
    js = json.loads(out)
    assert rc == 0
    assert js["value"] == c[0] and js["codeword"] == c and js["verified"]


def test_repair_explicit_index_zero_word(capsys, tmp_path):
    rc, out, _ = run(capsys, "repair", *CODE3, "--codeword", _word_file(tmp_path, [0] * 13),
                     "--erase", "5")
    assert rc == 0 and json.loads(out)["value"] == 0


def test_repair_not_a_codeword(capsys, tmp_path, c3):
    c = encode(c3, [3, 6, 1])
    c[4] ^= 1
    rc, _, err = run(capsys, "repair", *CODE3, "--codeword", _word_file(tmp_path, c), "--erase", "0")
    assert rc == 1 and "not consistent" in err


def test_repair_wrong_length(capsys, tmp_path):
    rc, _, _ = run(capsys, "repair", *CODE3, "--codeword", _word_file(tmp_path, [0] * 12), "--erase", "0")
    assert rc == 2


def test_repair_index_out_of_range(capsys, tmp_path):
    rc, _, _ = run(capsys, "repair", *CODE3, "--codeword", _word_file(tmp_path, [0] * 13), "--erase", "13")
    assert rc == 2


def test_repair_erasure_in_repair_set(capsys, tmp_path, c3):
    c = encode(c3, [1, 2, 3])
    word = ["?", "?"] + c[2:]
    # the plan for 0 uses the lexicographically smallest support containing 0
    from ovalcode.lrc import repair_plan
    rs = repair_plan(c3, 0).repair_set
    word = ["?" if j == 0 or j == rs[0] else v for j, v in enumerate(c)]
    rc, _, err = run(capsys, "repair", *CODE3, "--codeword", _word_file(tmp_path, word), "--erase", "0")
    assert rc == 2 and "erased" in err


def test_repair_two_erasures_outside_plan(capsys, tmp_path, c3):
    from ovalcode.lrc import repair_plan
    c = encode(c3, [5, 0, 2])
    rs = repair_plan(c3, 0).repair_set
    other = next(j for j in range(1, 13) if j not in rs)
    word = ["?" if j in (0, other) else v for j, v in enumerate(c)]
    rc, out, _ = run(capsys, "repair", *CODE3, "--codeword", _word_file(tmp_path, word), "--erase", "0")
    js = json.loads(out)
    assert rc == 0 and js["value"] == c[0] and js["codeword"] is None


def test_repair_dual(capsys, tmp_path, c3):
    import random
    from ovalcode.lrc import random_dual_codewords
    y = random_dual_codewords(c3, 1, random.Random(5))[0]
    word = list(y)
    word[7] = "?"
    rc, out, _ = run(capsys, "repair", *CODE3, "--dual", "--codeword", _word_file(tmp_path, word))
    js = json.loads(out)
    assert rc == 0 and js["value"] == y[7] and len(js["repair_set"]) == 9


def test_repair_stdin(capsys, monkeypatch, c3):
    import io
    c = encode(c3, [0, 0, 1])
    monkeypatch.setattr("sys.stdin", io.StringIO(" ".join(map(str, c[:12])) + " ?\n"))
    rc, out, _ = run(capsys, "repair", *CODE3, "--codeword", "-", "--format", "text")
    assert rc == 0 and f"c[12] = {c[12]}" in out


def test_read_word():
    assert read_word("1 ? 3", 8) == ([1, 0, 3], {1})
    with pytest.raises(FieldDomainError):
        read_word("1 9", 8)
    with pytest.raises(FieldDomainError):
        read_word("1 x", 8)


def test_bounds_numeric(capsys):
    rc, out, _ = run(capsys, "bounds", "--n", "13", "--k", "10", "--d", "3", "--r", "9", "--q", "8")
    js = json.loads(out)
    assert rc == 0
    assert js["singleton_like_rhs"] == 3 and js["cm_rhs"] == 10
    assert js["distance_optimal"] and js["dimension_optimal"]


def test_bounds_from_code(capsys):
    rc, out, _ = run(capsys, "bounds", *CODE3)
    js = json.loads(out)
    assert js["code"]["r"] == 2 and js["dual"]["r"] == 9
    assert js["code"]["cm_rhs"] == 3 and js["dual"]["cm_rhs"] == 10


def test_export(capsys, tmp_path):
    rc, _, _ = run(capsys, "export", *CODE3, "--dir", str(tmp_path / "out"), "--samples", "10")
    assert rc == 0
    names = {p.name for p in (tmp_path / "out").iterdir()}
    assert {"checks.csv", "dual_repair_plans.json", "weights.png", "cases.png"} <= names
    checks = (tmp_path / "out" / "checks.csv").read_text().splitlines()
    assert all(",1," in line for line in checks[1:])


def test_determinism(capsys, tmp_path):
    outs = []
    for i in range(2):
        run(capsys, "export", *CODE3, "--dir", str(tmp_path / f"r{i}"), "--samples", "10")
        rc, out, _ = run(capsys, "verify", *CODE3, "--format", "json")
        outs.append(out)
    assert outs[0] == outs[1]
    for name in ("weights.csv", "cases.csv", "repair_plans.json", "dual_repair_plans.json",
                 "generator.json", "weights.png"):
        assert (tmp_path / "r0" / name).read_bytes() == (tmp_path / "r1" / name).read_bytes()
