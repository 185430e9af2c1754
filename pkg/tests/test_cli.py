import subprocess
import sys
from pathlib import Path

import pytest

from mnsemiring import algebra as A
from mnsemiring.cli import format_algebra, main, parse_algebra, parse_algebra_file, run_command
from mnsemiring.constructions import boolean_mn_semiring, modular_mn_semiring
from mnsemiring.errors import ArityBound, FormatError
from mnsemiring.morphisms import enumerate_congruences
from mnsemiring.systems import derive_order, parse_term

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    rep = run_command([str(x) for x in argv])
    return rep, dict(rep.fields)


# algebra file format

def test_rule_file_matches_constructor():
    S = parse_algebra_file(DATA / "z4.alg")
    T = modular_mn_semiring(4, 2, 3)
    assert S.f == T.f and S.g == T.g


def test_boolean_rules():
    S = parse_algebra_file(DATA / "bool2.alg")
    T = boolean_mn_semiring(2, 3, 2)
    assert S.f == T.f and S.g == T.g


def test_explicit_table_loaded_verbatim():
    entries = [3, 1, 0, 1, 0, 2, 2, 3, 1, 1, 0, 0, 2, 3, 3, 2]
    text = "size 4\nm 2\nn 2\nf table\n" + " ".join(map(str, entries)) + "\ng rule mod-mul\n"
    S = parse_algebra(text)
    assert S.f.entries == tuple(entries)


def test_table_may_span_lines_and_carry_comments():
    text = "size 2\nm 2\nn 2\nf table  # xor\n0 1\n1 0 # second row\ng table\n0 0 0 1\n"
    S = parse_algebra(text)
    assert S.f.entries == (0, 1, 1, 0) and S.g.entries == (0, 0, 0, 1)


@pytest.mark.parametrize("text,line", [
    ("size 4\nm 2\nn 3\nf table\n" + " ".join(["0"] * 15) + "\ng rule mod-mul\n", 4),
    ("size 4\nm 2\nn 3\nf rule nope\ng rule mod-mul\n", 4),
    ("size 4\nm 2\nf rule mod-add\n", 3),
    ("size x\n", 1),
    ("size 3\nm 2\nn 2\nf rule union\ng rule mod-mul\n", 4),
    ("size 2\nm 2\nn 2\nf table 0 1 1 7\ng rule mod-mul\n", 4),
    ("size 2\nm 2\nn 2\nf rule mod-add\nwhat\n", 5),
    ("size 2\nm 2\nn 2\nf rule mod-add\nf rule mod-add\n", 5),
])
def test_format_errors_carry_line(text, line):
    with pytest.raises(FormatError) as err:
        parse_algebra(text)
    assert err.value.line == line


def test_missing_g_is_format_error():
    with pytest.raises(FormatError):
        parse_algebra("size 2\nm 2\nn 2\nf rule mod-add\n")


def test_arity_bound():
    with pytest.raises(ArityBound):
        parse_algebra("size 2\nm 5\nn 2\nf rule mod-add\ng rule mod-mul\n")


@pytest.mark.parametrize("S", [modular_mn_semiring(4, 2, 3), boolean_mn_semiring(2, 3, 2),
                               modular_mn_semiring(1, 2, 2), modular_mn_semiring(5, 3, 3)])
def test_round_trip_is_bit_exact(S):
    T = parse_algebra(format_algebra(S))
    assert T.f.entries == S.f.entries and T.g.entries == S.g.entries
    assert format_algebra(T) == format_algebra(S)


# subcommands as thin adapters

def test_algebra_check():
    rep, fields = run("algebra", "check", DATA / "z4.alg")
    assert rep.code == 0 and fields["semiring"] == "true"
    assert rep.render().startswith("semiring: true\n")


def test_algebra_check_failure_prints_witness():
    rep, fields = run("algebra", "check", DATA / "sub3.alg")
    assert rep.code == 1 and fields["semiring"] == "false" and fields["associative_f"] == "false"
    assert any("witness AssocFail" in line for line in rep.text)


def test_algebra_props_matches_library():
    rep, fields = run("algebra", "props", DATA / "bool2.alg")
    r = A.analyze(boolean_mn_semiring(2, 3, 2))
    for name, value in r.items():
        expected = "none" if value is None else str(value).lower() if isinstance(value, bool) else value
        assert fields[name] == expected
    assert rep.code == 0


def test_algebra_congruences_matches_library():
    rep, fields = run("algebra", "congruences", DATA / "z6.alg")
    expected = [str(c) for c in enumerate_congruences(modular_mn_semiring(6, 2, 2))]
    assert fields["count"] == len(expected) and rep.text == expected
    assert "0,3|1,4|2,5" in rep.text and "0,2,4|1,3,5" in rep.text


def test_algebra_quotient_and_iso(tmp_path):
    rep, fields = run("algebra", "quotient", DATA / "z6.alg", "--partition", "0,3|1,4|2,5")
    assert rep.code == 0 and fields["congruence"] == "true"
    out = tmp_path / "q.alg"
    out.write_text("\n".join(rep.text) + "\n")
    rep, fields = run("algebra", "iso", out, DATA / "z3.alg")
    assert rep.code == 0 and fields["isomorphic"] == "true"


def test_algebra_quotient_rejects_non_congruence():
    rep, fields = run("algebra", "quotient", DATA / "z6.alg", "--partition", "0,1|2,3|4,5")
    assert rep.code == 1 and fields["congruence"] == "false"


def test_algebra_iso_negative():
    rep, fields = run("algebra", "iso", DATA / "z4.alg", DATA / "bool2.alg")
    assert rep.code == 2  # arities differ
    rep, fields = run("algebra", "iso", DATA / "z6.alg", DATA / "z3.alg")
    assert rep.code == 1 and fields["isomorphic"] == "false"


def test_hom_commands():
    rep, fields = run("hom", "check", DATA / "z6.alg", DATA / "z3.alg", "--map", "0,1,2,0,1,2")
    assert rep.code == 0 and fields["homomorphism"] == "true"
    rep, fields = run("hom", "check", DATA / "z6.alg", DATA / "z3.alg", "--map", "1,2,0,1,2,0")
    assert rep.code == 1 and fields["homomorphism"] == "false"
    rep, fields = run("hom", "kernel", "0,1,2,0,1,2")
    assert fields["kernel"] == "0,3|1,4|2,5"
    rep, fields = run("hom", "factor", DATA / "z6.alg", DATA / "z3.alg", "--map", "0,1,2,0,1,2")
    assert rep.code == 0
    assert fields["quotient_size"] == 3 and fields["injective"] == "true" and fields["factorizes"] == "true"


def test_ideal_commands():
    z6 = DATA / "z6.alg"
    rep, fields = run("ideal", "check", z6, "--set", "0,2,4")
    assert rep.code == 0 and fields["ideal"] == "true"
    rep, fields = run("ideal", "check", z6, "--set", "0,1", "--position", "1")
    assert rep.code == 1 and fields["1-ideal"] == "false"
    rep, fields = run("ideal", "generate", z6, "--set", "2")
    assert fields["generated"] == "{0,2,4}"
    rep, fields = run("ideal", "product", z6, "--set", "1", "--set", "2")
    assert fields["product"] == "{0,2,4}"
    rep, fields = run("ideal", "intersect", z6, "--set", "0,3", "--set", "0,2,4")
    assert fields["intersection"] == "{0}" and fields["ideal"] == "true"
    rep, fields = run("ideal", "intersect", z6, "--set", "1", "--set", "2")
    assert rep.code == 2


def test_order_compare_membership():
    rep, fields = run("order", "compare", DATA / "sys.poset", "(g a b)", "a")
    assert rep.code == 0 and fields["relation"] == "LE"
    assert any(line.startswith("R5 membership") for line in rep.text)
    assert rep.text == list(derive_order(parse_term("(g a b)"), parse_term("a")).derivation)


def test_order_compare_unknown_exits_zero():
    rep, fields = run("order", "compare", DATA / "empty.poset", "a", "b")
    assert rep.code == 0 and fields["relation"] == "UNKNOWN"
    assert any("unknown" in line for line in rep.text)


def test_order_compare_uses_poset():
    rep, fields = run("order", "compare", DATA / "sys.poset", "a", "b")
    assert fields["relation"] == "LE"


def test_order_soundness():
    argv = ["order", "soundness", DATA / "sys.poset", "(f a b)", "(f a a b b)", "--samples", "32", "--seed", "3"]
    rep, fields = run(*argv)
    assert rep.code == 0 and fields["sound"] == "true" and fields["violations"] == 0
    assert fields["derived"] == "LE" and fields["samples"] == 32 and fields["seed"] == 3
    assert run(*argv)[0].render() == rep.render()


def test_reliability_eval():
    rep, fields = run("reliability", "eval", DATA / "ab.rel", "(f (f a b) (f a b))")
    assert fields["failure_probability"] == "301/625" and fields["reliability"] == "324/625"
    rep, fields = run("reliability", "eval", DATA / "ab.rel", "(f a c)")
    assert rep.code == 2


@pytest.mark.parametrize("argv", [
    [],
    ["algebra"],
    ["algebra", "bogus", "x"],
    ["algebra", "check", "/nonexistent.alg"],
    ["order", "compare", "x"],
    ["order", "compare", str(DATA / "empty.poset"), "(g a)", "a"],
])
def test_usage_errors_exit_two(argv):
    assert run_command(argv).code == 2


def test_budget_flag():
    rep, fields = run("algebra", "check", DATA / "z4.alg", "--budget", "10")
    assert rep.code == 2 and "BudgetExceeded" in fields["error"]


def test_max_k_flag():
    rep, _ = run("algebra", "congruences", DATA / "z6.alg", "--max-k", "5")
    assert rep.code == 2


# golden outputs

GOLDEN_CASES = {
    "algebra_check_z4": ["algebra", "check", "z4.alg"],
    "algebra_props_z4": ["algebra", "props", "z4.alg"],
    "algebra_congruences_z6": ["algebra", "congruences", "z6.alg"],
    "order_compare_membership": ["order", "compare", "sys.poset", "(g a b)", "a"],
    "order_compare_unknown": ["order", "compare", "empty.poset", "a", "b"],
    "reliability_eval": ["reliability", "eval", "ab.rel", "(f (f a b) (f a b))"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(name, capsys, monkeypatch):
    monkeypatch.chdir(DATA)
    code = main(GOLDEN_CASES[name])
    out = capsys.readouterr().out
    expected = (GOLDEN / f"{name}.txt").read_text(encoding="utf-8")
    assert out == expected
    assert code == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mnsemiring", "algebra", "check", str(DATA / "z4.alg")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("semiring: true")
    proc = subprocess.run([sys.executable, "-m", "mnsemiring", "nope"], capture_output=True, text=True)
    assert proc.returncode == 2
