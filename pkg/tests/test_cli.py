import subprocess
import sys

import pytest

from ordauto.automaton import single_word
from ordauto.cli import main
from ordauto.formats import (
    read_automaton,
    read_eventnfa,
    read_presentation,
    read_word,
    write_automaton,
    write_eventnfa,
    write_presentation,
    write_word,
)
from ordauto.generators import countability_suite
from ordauto.words import FiniteOrdinalWord, empty_word


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    (tmp_path / "A.aut").write_text(write_automaton(single_word(empty_word(1), {"a"})))
    (tmp_path / "w.word").write_text(write_word(empty_word(1), {"a"}))
    (tmp_path / "x.word").write_text(write_word(FiniteOrdinalWord(1, {(2,): "a"}), {"a"}))
    return tmp_path


def test_ord_cmp(capsys):
    assert run(capsys, "ord", "cmp", "w^(1)*1", "2")[:2] == (0, "GT\n")
    assert run(capsys, "ord", "add", "1", "w^(1)*1")[1] == "w^(1)*1\n"
    assert run(capsys, "ord", "sub", "5", "w^(1)*1")[1] == "w^(1)*1\n"


def test_run_empty_word(capsys, files):
    assert run(capsys, "run", files / "A.aut", files / "w.word")[:2] == (0, "ACCEPT\n")
    assert run(capsys, "run", files / "A.aut", files / "x.word")[:2] == (1, "REJECT\n")


def test_query_linearity(capsys, tmp_path):
    pres = tmp_path / "om2.pres"
    assert run(capsys, "present", "--n", 1, "--bound", "w^(2)*1", "-o", pres)[0] == 0
    code, out, _ = run(capsys, "query", pres, "A x . A y . (lt(x,y) | eq(x,y) | lt(y,x))")
    assert (code, out) == (0, "TRUE\n")
    code, out, _ = run(capsys, "query", pres, "E x . A y . (y < x | y = x)")
    assert (code, out) == (1, "FALSE\n")
    code, out, _ = run(capsys, "query", pres, "E x . A y . ~(y < x)", "--oracle", 3)
    assert (code, out) == (0, "TRUE\n")


def test_exit_codes(capsys, files):
    code, _, err = run(capsys, "ord", "cmp", "w^(", "1")
    assert code == 3 and err.startswith("error: format:")
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "run", files / "missing.aut", files / "w.word")[0] == 2
    (files / "bad.aut").write_text("level 1\nalphabet a\nstates p\ninitial q\nfinal\n")
    code, _, err = run(capsys, "run", files / "bad.aut", files / "w.word")
    assert code == 3 and "bad.aut:4:" in err
    assert run(capsys, "present", "--n", 1, "--bound", "w^(1,0)*1")[0] == 2


def test_emitted_files_reparse_exactly(capsys, files):
    out = files / "out"
    run(capsys, "encode", "w^(2)*1 + 3", "--n", 1, "-o", out)
    assert write_word(read_word(out.read_text()), {"m0", "m1", "m2", "m0+1", "m0+2", "m1+2", "m0+1+2"}) \
        == out.read_text()
    run(capsys, "compile", files / "A.aut", "--canonical", "-o", out)
    assert write_eventnfa(read_eventnfa(out.read_text())) == out.read_text()
    run(capsys, "bool", "or", files / "A.aut", files / "A.aut", "-o", out)
    assert write_automaton(read_automaton(out.read_text())) == out.read_text()
    run(capsys, "present", "--n", 2, "--bound", "w^(1,0)*1", "--constant", "c=w^(0,1)*1", "-o", out)
    assert write_presentation(read_presentation(out.read_text())) == out.read_text()


def test_decode_round_trip(capsys, tmp_path):
    word = tmp_path / "e.word"
    run(capsys, "encode", "w^(1,1)*2 + w^(0,0)*1", "--n", 2, "-o", word)
    assert run(capsys, "decode", word)[1] == "w^(1,1)*2 + w^(0,0)*1\n"


def test_countable(capsys, tmp_path):
    for case in countability_suite():
        p = tmp_path / "c.aut"
        p.write_text(write_automaton(case.automaton))
        code, out, _ = run(capsys, "countable", p)
        assert out.split()[0] == ("COUNTABLE" if case.countable else "UNCOUNTABLE")
        assert code == (0 if case.countable else 1)


def test_substitute_writes_level_two(capsys, tmp_path):
    case = countability_suite()[1]
    outer, block, out = tmp_path / "r.aut", tmp_path / "b.aut", tmp_path / "s.aut"
    outer.write_text(write_automaton(case.automaton))
    block.write_text(write_automaton(single_word(empty_word(1), {"x"})))
    assert run(capsys, "substitute", outer, "--sub", f"a={block}", "-o", out)[0] == 0
    assert read_automaton(out.read_text()).level == 2


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--quick", "--only", 6)
    assert code == 0 and "SELFTEST PASS" in out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ordauto", "ord", "cmp", "2", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "EQ\n"
