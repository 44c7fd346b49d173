import json

import pytest

from modlab.cli import main
from modlab.errors import JobParseError, SizeCapExceeded
from modlab.jobs import (parse_job, render_structured, render_text, run_job)

DEMO = """
# a small job over the integers mod 4
[ring]
cyclic(4)

[modules]
M = regular
S = sub(M, S1)
Q = quotient(M, S1)
D = direct_sum(M, S)
C = cyclic(M, 2)

[preradicals]
t = trad(I1)
s = comp(soc, t)
a = alpha(S1@M)
w = omega(S1@M)
j = join(a, zero)

[checks]
bjkn_prime M
prime M
rpid_first M
diuniform M
a_first M a
a_fully_first D a
classes M s
evaluate s M
flags a
compare a w
classify
lep
verify T15

[universe]
depth = 2

[output]
format = text
"""


def test_parse_job_resolves_everything():
    spec = parse_job(DEMO)
    assert spec.ring.order == 4
    assert set(spec.modules) == {"M", "S", "Q", "D", "C"}
    assert spec.modules["S"].order == 2
    assert spec.modules["D"].order == 8
    assert len(spec.preradicals) == 5
    assert len(spec.checks) == 13
    assert spec.output_format == "text"


def test_parse_preradical_depth_two_tree():
    # a depth-two expression written inline pretty-prints to canonical form;
    # names of earlier declarations are kept as names
    doc = ("[ring]\ncyclic(4)\n\n[preradicals]\n"
           "s = comp( soc , trad( I1 ) )\n")
    spec = parse_job(doc)
    assert ("s", "comp(soc,trad(I1))") in spec.preradical_texts
    spec2 = parse_job(DEMO)
    assert ("s", "comp(soc,t)") in spec2.preradical_texts


def test_round_trip_canonical_document():
    spec = parse_job(DEMO)
    canon = spec.canonical_document()
    spec2 = parse_job(canon)
    assert spec == spec2
    assert spec2.canonical_document() == canon


def test_unresolved_module_reference():
    doc = "[ring]\ncyclic(4)\n\n[checks]\nbjkn_prime Nope\n"
    with pytest.raises(JobParseError) as exc:
        parse_job(doc)
    assert exc.value.line == 5


def test_unresolved_submodule_index():
    doc = "[ring]\ncyclic(4)\n\n[modules]\nM = regular\nX = sub(M, S9)\n"
    with pytest.raises(JobParseError):
        parse_job(doc)


def test_syntax_error_has_position():
    doc = "[ring]\ncyclic(4\n"
    with pytest.raises(JobParseError) as exc:
        parse_job(doc)
    assert exc.value.line == 2


def test_unknown_and_duplicate_sections():
    with pytest.raises(JobParseError):
        parse_job("[nonsense]\nx\n")
    with pytest.raises(JobParseError):
        parse_job("[ring]\ncyclic(4)\n[ring]\ncyclic(2)\n")
    with pytest.raises(JobParseError):
        parse_job("cyclic(4)\n")  # content before any header


def test_repo_demo_job_parses_and_verifies():
    import pathlib
    doc = (pathlib.Path(__file__).resolve().parent.parent
           / "demo.job").read_text()
    spec = parse_job(doc)
    report, code = run_job(spec)
    assert code == 0
    verified = [e for e in report["checks"] if e["kind"] == "verify"]
    assert len(verified) == 7
    assert all(e["consistent"] for e in verified)


def test_cap_violation_surfaces():
    doc = "[ring]\nmatrix(cyclic(4),2)\n"
    with pytest.raises(SizeCapExceeded):
        parse_job(doc)


def test_raw_ring_section():
    doc = ("[ring]\nraw\nadd = 0 1 / 1 0\nmul = 0 0 / 0 1\n\n"
           "[modules]\nM = regular\n\n[checks]\nbjkn_prime M\n")
    spec = parse_job(doc)
    assert spec.ring.order == 2
    report, code = run_job(spec)
    assert code == 0
    assert report["checks"][0]["verdict"] is True


def test_raw_module_definition():
    doc = ("[ring]\ncyclic(2)\n\n[modules]\n"
           "X = raw(add = 0 1 / 1 0 ; act = 0 0 / 0 1)\n\n"
           "[checks]\nbjkn_prime X\n")
    spec = parse_job(doc)
    assert spec.modules["X"].order == 2


def test_run_job_report_shape_and_negatives_are_ok():
    spec = parse_job(DEMO)
    report, code = run_job(spec)
    assert code == 0  # negative verdicts are successful runs
    by_check = {e["check"]: e for e in report["checks"]}
    assert by_check["bjkn_prime M"]["verdict"] is False
    assert by_check["bjkn_prime M"]["witness"]["x"] == "2"
    assert by_check["rpid_first M"]["verdict"] is True
    assert by_check["lep"]["count"] == 3
    assert by_check["verify T15"]["consistent"] is True
    assert by_check["evaluate s M"]["carrier"] == ["0", "2"]


def test_run_job_kind_filter():
    spec = parse_job(DEMO)
    report, _ = run_job(spec, kinds=("verify",))
    assert [e["kind"] for e in report["checks"]] == ["verify"]


def test_structured_reports_are_byte_identical():
    spec1 = parse_job(DEMO)
    out1 = render_structured(run_job(spec1)[0])
    spec2 = parse_job(DEMO)
    out2 = render_structured(run_job(spec2)[0])
    assert out1 == out2
    parsed = json.loads(out1)
    assert parsed["schema_version"] == "1"
    assert parsed["engine"]["name"] == "modlab"


def test_render_text_mentions_witnesses():
    spec = parse_job(DEMO)
    text = render_text(run_job(spec)[0], runtime=0.5)
    assert "bjkn_prime M" in text
    assert "runtime:" in text


def test_empty_checks_is_empty_report():
    doc = "[ring]\ncyclic(4)\n"
    spec = parse_job(doc)
    report, code = run_job(spec)
    assert code == 0
    assert report["checks"] == []


# --- the executable front end ------------------------------------------------

def _write(tmp_path, text):
    path = tmp_path / "job.txt"
    path.write_text(text)
    return str(path)


def test_cli_define_ok(tmp_path, capsys):
    assert main(["define", _write(tmp_path, DEMO)]) == 0
    assert "ok:" in capsys.readouterr().out


def test_cli_check_exit_zero_and_output(tmp_path, capsys):
    assert main(["check", _write(tmp_path, DEMO)]) == 0
    out = capsys.readouterr().out
    assert "bjkn_prime M" in out
    assert "verify" not in out  # check skips verification entries


def test_cli_verify_runs_only_theorems(tmp_path, capsys):
    assert main(["verify", _write(tmp_path, DEMO), "--format",
                 "structured"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert [e["kind"] for e in data["checks"]] == ["verify"]


def test_cli_parse_error_exit_one(tmp_path, capsys):
    assert main(["define", _write(tmp_path, "[ring]\ncyclic(\n")]) == 1
    assert "parse error" in capsys.readouterr().err


def test_cli_cap_error_exit_two(tmp_path, capsys):
    bad = "[ring]\nmatrix(cyclic(3),2)\n"
    assert main(["define", _write(tmp_path, bad)]) == 2


def test_cli_missing_file_exit_engine(tmp_path, capsys):
    assert main(["define", str(tmp_path / "absent.job")]) == 3


def test_cli_corpus_smoke(capsys):
    assert main(["corpus", "--actions", "5", "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "corpus sweep" in out
    assert "all consistent" in out
    assert "failures: 0" in out


def test_cli_corpus_structured(capsys):
    assert main(["corpus", "--format", "structured"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["rings"]) == 6
    assert data["inconsistencies"] == []


def test_cli_corpus_reports_converse_gaps(capsys):
    # a finite diuniform-but-not-BJKN witness exists in the corpus; a
    # prime-but-not-BJKN one does not at these caps and must say so
    assert main(["corpus", "--format", "structured"]) == 0
    data = json.loads(capsys.readouterr().out)
    gaps = data["gap_witnesses"]
    assert "cyclic(4)" in gaps["diuniform_not_bjkn_prime"]
    assert gaps["prime_not_bjkn_prime"] == "not witnessed at these caps"
