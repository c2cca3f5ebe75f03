import csv
import io
import json
import subprocess
import sys

import pytest

from contact_spectra.catalog import Generator
from contact_spectra.cli import main
from contact_spectra.surgery import Certificate, verify_certificate


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "contact_spectra", *args],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_spectrum_json_round_trip():
    code, out, _ = run("spectrum", "--family", "ustilovsky-perturbed", "--p", "7", "--n", "5",
                       "--lmax", "14")
    assert code == 0
    gens = [Generator.from_dict(r) for r in json.loads(out)]
    plus0 = next(g for g in gens if g.L == 2 and g.stratum.branch == "+" and g.morse_cell == 0)
    assert plus0.degree == 4


def test_spectrum_csv_header_and_empty_window():
    code, out, _ = run("spectrum", "--family", "ustilovsky", "--p", "7", "--n", "5",
                       "--lmax", "2", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0][:4] == ["L", "stratum", "cell", "degree"]
    assert [r[3] for r in rows[1:]] == ["4", "7", "8", "11"]
    code, out, _ = run("spectrum", "--family", "ustilovsky", "--p", "7", "--n", "5", "--lmax", "1")
    assert code == 0 and json.loads(out) == []


def test_distinguish_certificate_and_verify():
    code, out, _ = run("distinguish", "--n", "5", "--left", "1x7", "--right", "1x23", "--verify")
    assert code == 0
    record = json.loads(out)
    assert record.pop("verification")["ok"] is True
    cert = Certificate.from_dict(record)
    assert cert.degree == 47 and verify_certificate(cert).ok


def test_distinguish_exit_codes():
    assert run("distinguish", "--n", "5", "--left", "1x7", "--right", "1x7")[0] == 1
    assert run("distinguish", "--n", "5", "--left", "1x11", "--right", "1x7")[0] == 2
    assert run("distinguish", "--n", "4", "--left", "1x7", "--right", "1x23")[0] == 2


def test_window_exit_code():
    code, _, err = run("afg", "--family", "sigma-plus", "--n", "5", "--tail", "11,13,17",
                       "--k", "20")
    assert code == 3 and err


def test_markdown_rendering():
    code, out, _ = run("sh-ranks", "--family", "ustilovsky", "--p", "7", "--n", "5",
                       "--kmin", "22", "--kmax", "24", "--format", "markdown")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "| degree | rank | justification |"
    assert "| 23 | Unknown{0,1} | bound |" in lines


def test_euler_outputs_exact_rationals():
    code, out, _ = run("euler", "--n", "5", "--p", "3", "--copies", "2")
    assert code == 0 and "15/22" in out
    code, out, _ = run("euler-match", "--n", "5", "--primes", "7,23,31", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["copies"]) for r in rows] == [253, 213, 209]
    assert {r["chi_m"] for r in rows} == {"67/2"}


def test_handle_and_separating_sequence():
    code, out, _ = run("handle-spectrum", "--n", "5", "--k", "4", "--count", "3")
    assert code == 0 and json.loads(out) == [1, 2, 3, 4, 5, 6]
    code, out, _ = run("thm13", "--b-xi", "0", "--b-xik", "0", "--n0", "1", "--steps", "3")
    assert [r["N_l"] for r in json.loads(out)] == [1, 2, 4, 8]
    assert run("handle-spectrum", "--n", "5", "--k", "5", "--count", "3")[0] == 2


def test_main_in_process(capsys):
    assert main(["afg", "--family", "ustilovsky-perturbed", "--p", "7", "--n", "5",
                 "--k", "47"]) == 0
    assert json.loads(capsys.readouterr().out)[0]["bound"] == 0


def test_unknown_subcommand():
    with pytest.raises(SystemExit):
        main(["nonsense"])
