import json
import os
import pathlib

import pytest

from cilines.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def write_problem(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


QUADRIC_F3 = """
field: F:3
N: 3
degrees: 2
form: S*Z1 + T*Z2
line: 0, 0 | 0, 0
"""

QUINTIC_F7 = """
field: F:7
N: 3
degrees: 5
form: S^5 + T^5 + Z1^5 + Z2^5
curve: s ; -1*s ; t ; -1*t
"""


def check_golden(name: str, got: str):
    path = GOLDEN / name
    if os.environ.get("UPDATE_GOLDEN"):
        path.parent.mkdir(exist_ok=True)
        path.write_text(got, encoding="utf-8")
        pytest.skip(f"golden file {name} rewritten")
    assert path.exists(), f"golden file {name} missing; rerun with UPDATE_GOLDEN=1"
    assert got == path.read_text(encoding="utf-8"), f"byte mismatch against golden {name}"


def test_verify_example_hyp_4_6_golden(capsys):
    code, out = run(capsys, "verify-example", "hyp-4-6", "--char", "0")
    assert code == 0
    check_golden("verify_hyp-4-6_char0.json", out)


def test_verify_example_quadrics_p7_golden_flags_rank_discrepancy(capsys):
    code, out = run(capsys, "verify-example", "quadrics-general:N=7,r=2", "--char", "0")
    assert code == 0
    report = json.loads(out)
    assert report["jacobian_rank"] == 9 and report["required_rank"] == 9
    assert any("rank 8" in note for note in report["notes"])
    check_golden("verify_quadrics_N7_r2_char0.json", out)


def test_verify_example_ci_4_3_p9_golden(capsys):
    code, out = run(capsys, "verify-example", "ci-4-3-P9", "--char", "0")
    assert code == 0
    report = json.loads(out)
    assert report["jacobian_rank"] == 11 and report["local_dimension"] == 5
    check_golden("verify_ci-4-3-P9_char0.json", out)


def test_gates_golden(capsys):
    code, out = run(capsys, "gates", "--N", "6", "--degrees", "4")
    assert code == 0
    assert json.loads(out)["case"] == "NonFreeLineViaJ"
    check_golden("gates_N6_d4.json", out)


def test_byte_determinism(capsys):
    _, first = run(capsys, "verify-example", "hyp-4-6", "--char", "3")
    _, second = run(capsys, "verify-example", "hyp-4-6", "--char", "3")
    assert first == second
    _, sampled1 = run(capsys, "verify-example", "hyp-4-6:c=sampled", "--seed", "9")
    _, sampled2 = run(capsys, "verify-example", "hyp-4-6:c=sampled", "--seed", "9")
    assert sampled1 == sampled2


def test_classify_line_quadric(capsys, tmp_path):
    path = write_problem(tmp_path, "quadric.ci", QUADRIC_F3)
    code, out = run(capsys, "classify-line", path)
    assert code == 0
    report = json.loads(out)
    assert report["free"] is True
    assert report["verdict"] == "NotInJ"
    assert report["normal_splitting"] == [0]
    assert report["tangent_splitting"] == [2, 0]
    assert report["routes_agree"] is True


def test_classify_line_not_contained_exits_2(capsys, tmp_path):
    text = QUADRIC_F3.replace("line: 0, 0 | 0, 0", "line: 1, 0 | 0, 0")
    path = write_problem(tmp_path, "off.ci", text)
    code, out = run(capsys, "classify-line", path)
    assert code == 2
    assert json.loads(out)["error"] == "LineNotContained"


def test_enumerate_lines_counts(capsys, tmp_path):
    path = write_problem(tmp_path, "quadric.ci", QUADRIC_F3)
    code, out = run(capsys, "enumerate-lines", path)
    assert code == 0
    report = json.loads(out)
    assert report["count"] == 8 and len(report["lines"]) == 8


def test_enumerate_lines_classified(capsys, tmp_path):
    path = write_problem(tmp_path, "quadric.ci", QUADRIC_F3)
    code, out = run(capsys, "enumerate-lines", path, "--classify")
    assert code == 0
    report = json.loads(out)
    assert all(d["free"] and d["normal_splitting"] == [0] for d in report["classified"])


def test_enumerate_lines_over_q_exits_2(capsys, tmp_path):
    path = write_problem(tmp_path, "q.ci", QUADRIC_F3.replace("field: F:3", "field: Q"))
    code, out = run(capsys, "enumerate-lines", path)
    assert code == 2
    assert json.loads(out)["error"] == "InfiniteField"


def test_curve_check_quintic(capsys, tmp_path):
    path = write_problem(tmp_path, "quintic.ci", QUINTIC_F7)
    code, out = run(capsys, "curve-check", path, "--twist", "-1")
    assert code == 0
    report = json.loads(out)
    assert (report["h0"], report["h1"]) == (2, 3)
    assert report["free"] is False
    assert report["degree_gate"] == "AllImmersionsNonFree"

    code, out = run(capsys, "curve-check", path, "--twist", "0", "--cover", "2")
    assert code == 0
    report = json.loads(out)
    assert report["h1"] == 5 and report["curve_degree"] == 2


def test_verify_example_char2_forbidden_exits_2(capsys):
    code, out = run(capsys, "verify-example", "hyp-char-not-2:N=6,d=4", "--char", "2")
    assert code == 2
    assert json.loads(out)["error"] == "CharTwoForbidden"


def test_parse_errors_exit_1(capsys, tmp_path):
    code, out = run(capsys, "verify-example", "no-such-family")
    assert code == 1
    bad = write_problem(tmp_path, "bad.ci", "field: Q\nN: 3\n")
    code, out = run(capsys, "classify-line", bad)
    assert code == 1
    code, out = run(capsys, "nonsense-command")
    assert code == 1


def test_report_echo_refeeds_to_same_verdict(capsys, tmp_path):
    path = write_problem(tmp_path, "quadric.ci", QUADRIC_F3)
    _, out = run(capsys, "classify-line", path)
    echo = json.loads(out)["problem"]
    rebuilt = "\n".join(
        [
            f"field: {echo['field']}",
            f"N: {echo['N']}",
            "degrees: " + ",".join(str(d) for d in echo["degrees"]),
        ]
        + [f"form: {f}" for f in echo["forms"]]
        + [
            "line: "
            + ", ".join(echo["line"]["a"])
            + " | "
            + ", ".join(echo["line"]["b"])
        ]
    )
    path2 = write_problem(tmp_path, "rebuilt.ci", rebuilt)
    _, out2 = run(capsys, "classify-line", path2)
    a, b = json.loads(out), json.loads(out2)
    assert a["verdict"] == b["verdict"] and a["free"] == b["free"]
