"""Command surface: outputs and the 0/1/2 exit-code contract."""

import pytest

from znfree import factory, towerfile
from znfree.cli import run_command


@pytest.fixture(scope="module")
def t1_file(tmp_path_factory):
    p = tmp_path_factory.mktemp("towers") / "t1.tower"
    towerfile.save_tower(factory.t1(), str(p))
    return str(p)


@pytest.fixture(scope="module")
def free_a_file(tmp_path_factory):
    p = tmp_path_factory.mktemp("towers") / "free_a.tower"
    towerfile.save_tower(factory.free_tower(["a"]), str(p))
    return str(p)


def run(capsys, *argv):
    code = run_command(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eval(capsys, t1_file):
    code, out, _ = run(capsys, "eval", "-t", t1_file, "a^3*z")
    assert code == 0
    assert "length: (3,1)" in out
    assert "lambda: 1" in out


def test_eq(capsys, t1_file):
    code, out, _ = run(capsys, "eq", "-t", t1_file, "z^-1*a*z", "b")
    assert code == 0 and "equal" in out
    code, out, _ = run(capsys, "eq", "-t", t1_file, "a", "b")
    assert code == 0 and "distinct" in out


def test_com(capsys, t1_file):
    code, out, _ = run(capsys, "com", "-t", t1_file, "z*a", "z*b")
    assert code == 0 and out.strip() == "z"


def test_commutes(capsys, t1_file):
    code, out, _ = run(capsys, "commutes", "-t", t1_file, "a", "a^2")
    assert code == 0 and "commute" in out


def test_centralizer(capsys, t1_file):
    code, out, _ = run(capsys, "centralizer", "-t", t1_file, "a")
    assert code == 0 and "rank: 1" in out and "gen: a" in out


def test_reduce_gens(capsys, t1_file):
    code, out, _ = run(capsys, "reduce-gens", "-t", t1_file, "a*z", "b*z")
    assert code == 0
    assert "weight: 1" in out
    assert "step: mu" in out
    assert "witness:" in out


def test_split_level(capsys, t1_file):
    code, out, _ = run(capsys, "split-level", "-t", t1_file, "a", "b", "z")
    assert code == 0
    assert "base: a b" in out
    assert "letter: z [a -> b]" in out


def test_extend_hnn_rejection(capsys, free_a_file):
    code, out, _ = run(capsys, "extend-hnn", "-t", free_a_file,
                       "--name", "z", "--source", "a", "--target", "a^-1")
    assert code == 1
    assert "admissible-pair: conjugate-to-inverse" in out


def test_extend_hnn_success(capsys, tmp_path, free_a_file):
    out_path = str(tmp_path / "ext.tower")
    code, out, _ = run(capsys, "extend-hnn", "-t", free_a_file,
                       "--name", "z", "--source", "a", "--target", "a",
                       "-o", out_path)
    assert code == 0
    t = towerfile.load_tower(out_path)
    assert "z" in t.letters


def test_check_axioms(capsys, t1_file):
    code, out, _ = run(capsys, "check-axioms", "-t", t1_file,
                       "--samples", "100", "--seed", "7")
    assert code == 0 and "L1..L6 OK" in out


def test_verify_pregroup(capsys, t1_file):
    code, out, _ = run(capsys, "verify-pregroup", "-t", t1_file,
                       "a", "b", "z", "--samples", "30")
    assert code == 0 and "pregroup OK" in out


def test_verify_pregroup_rejects_unreduced(capsys, t1_file):
    code, out, _ = run(capsys, "verify-pregroup", "-t", t1_file,
                       "a", "z", "--samples", "10")
    assert code == 1
    assert "generating-set-not-reduced" in out


def test_factories(capsys, tmp_path):
    for argv in (["surface", "-n", "2"], ["nonorientable", "-n", "3"],
                 ["abelian", "-n", "3"]):
        code, out, _ = run(capsys, *argv)
        assert code == 0 and '"znfree-tower-v1"' in out


def test_factory_domain_rejection(capsys):
    code, _, err = run(capsys, "nonorientable", "-n", "2")
    assert code == 1


def test_free_product(capsys, tmp_path, t1_file, free_a_file):
    out_path = str(tmp_path / "prod.tower")
    code, out, _ = run(capsys, "free-product", t1_file, free_a_file,
                       "-o", out_path)
    assert code == 0
    t = towerfile.load_tower(out_path)
    assert "a'" in t.symbols


def test_check_basis(capsys, t1_file):
    code, out, _ = run(capsys, "check-basis", "-t", t1_file, "a", "b")
    assert code == 0 and "regular basis" in out


def test_parse_error_exit_2(capsys, t1_file):
    code, _, err = run(capsys, "eval", "-t", t1_file, "a*(")
    assert code == 2


def test_missing_tower_exit_2(capsys):
    code, _, err = run(capsys, "eval", "-t", "/nonexistent.tower", "a")
    assert code == 2


def test_bad_subcommand_exit_2(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_seed_reproducible(capsys, t1_file):
    a = run(capsys, "check-axioms", "-t", t1_file, "--samples", "50",
            "--seed", "3")
    b = run(capsys, "check-axioms", "-t", t1_file, "--samples", "50",
            "--seed", "3")
    assert a == b
