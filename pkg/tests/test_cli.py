import json

import pytest

from fullwit.cli import main, parse_q, ring_from_selector
from fullwit.rings import CyclotomicRing, PrimeFieldRing, RationalRing


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _report(out):
    lines = [line for line in out.splitlines() if line.strip()]
    assert len(lines) == 1
    return json.loads(lines[0])


def test_parse_q():
    assert parse_q("2") == (2, 1)
    assert parse_q("7") == (7, 1)
    assert parse_q("2^2") == (2, 2)
    assert parse_q("4=2^2") == (2, 2)
    with pytest.raises(ValueError):
        parse_q("4")  # prime powers need explicit syntax
    with pytest.raises(ValueError):
        parse_q("5=2^2")
    with pytest.raises(ValueError):
        parse_q("6=6^1")
    with pytest.raises(ValueError):
        parse_q("banana")


def test_ring_from_selector():
    assert isinstance(ring_from_selector("cyclotomic", 3), CyclotomicRing)
    assert isinstance(ring_from_selector("rational", 2), RationalRing)
    ring = ring_from_selector("fp:5:2", 2)
    assert isinstance(ring, PrimeFieldRing)
    assert ring.field.q == 25
    with pytest.raises(ValueError):
        ring_from_selector("galois", 2)


def test_build_then_verify(tmp_path, capsys):
    path = tmp_path / "cert.json"
    code, out, _ = _run(capsys, "build", "-n", "3", "-q", "2", "-o", str(path))
    assert code == 0
    report = _report(out)
    assert report["terms_per_level"] == {"2": 1, "3": 16}
    assert path.exists()

    code, out, err = _run(capsys, "verify", str(path), "--ring", "cyclotomic")
    assert code == 0
    report = _report(out)
    assert report["ok"] is True
    assert report["residual_support"] == 0
    assert "elapsed" not in report
    assert err.startswith("elapsed:")


def test_build_is_byte_deterministic(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert _run(capsys, "build", "-n", "3", "-q", "3", "-o", str(a))[0] == 0
    assert _run(capsys, "build", "-n", "3", "-q", "3", "-o", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_verify_report_is_byte_deterministic(tmp_path, capsys):
    path = tmp_path / "cert.json"
    _run(capsys, "build", "-n", "3", "-q", "2", "-o", str(path))
    _, out1, _ = _run(capsys, "verify", str(path))
    _, out2, _ = _run(capsys, "verify", str(path))
    assert out1 == out2


def test_verify_defaults_to_certificate_kind(tmp_path, capsys):
    path = tmp_path / "cert.json"
    _run(capsys, "build", "-n", "3", "-q", "3", "-o", str(path), "--rationalize")
    code, out, _ = _run(capsys, "verify", str(path))
    assert code == 0
    assert _report(out)["ring"] == "rational"


def test_verify_rejects_defining_characteristic(tmp_path, capsys):
    path = tmp_path / "cert.json"
    _run(capsys, "build", "-n", "3", "-q", "2", "-o", str(path))
    code, _, err = _run(capsys, "verify", str(path), "--ring", "fp:2")
    assert code == 2
    assert "error" in err


def test_verify_tampered_certificate_exits_one(tmp_path, capsys):
    path = tmp_path / "cert.json"
    _run(capsys, "build", "-n", "3", "-q", "3", "-o", str(path))
    doc = json.loads(path.read_text())
    doc["terms"][0]["r"]["num"] = [str(-int(x)) for x in doc["terms"][0]["r"]["num"]]
    path.write_text(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")
    code, out, _ = _run(capsys, "verify", str(path))
    assert code == 1
    report = _report(out)
    assert report["ok"] is False
    assert report["residual_support"] > 0


def test_verify_corrupt_file_exits_two(tmp_path, capsys):
    path = tmp_path / "cert.json"
    path.write_text("{broken")
    code, out, err = _run(capsys, "verify", str(path))
    assert code == 2
    assert out == ""
    assert "error" in err
    code, _, _ = _run(capsys, "verify", str(tmp_path / "missing.json"))
    assert code == 2


def test_verify_gl_ambient(tmp_path, capsys):
    path = tmp_path / "cert.json"
    _run(capsys, "build", "-n", "3", "-q", "3", "-o", str(path))
    code, out, _ = _run(capsys, "verify", str(path), "--group", "gl")
    assert code == 0
    assert _report(out)["group"] == "gl"


def test_rationalized_verifies_over_prime_fields(tmp_path, capsys):
    path = tmp_path / "cert.json"
    _run(capsys, "build", "-n", "3", "-q", "3", "-o", str(path), "--rationalize")
    for selector in ("fp:2", "fp:7", "rational", "cyclotomic"):
        code, out, _ = _run(capsys, "verify", str(path), "--ring", selector)
        assert code == 0, selector
        assert _report(out)["ok"] is True


def test_info(capsys):
    code, out, _ = _run(capsys, "info", "-n", "4", "-q", "2")
    assert code == 0
    report = _report(out)
    assert report["N"] == 3
    assert report["orders"]["DU"] == 8
    assert report["orders"]["SL"] == 20160
    assert report["orders"]["U"] == 64


def test_rank_one_build(tmp_path, capsys):
    path = tmp_path / "c.json"
    code, out, _ = _run(capsys, "build", "-n", "1", "-q", "7", "-o", str(path))
    assert code == 0
    assert _report(out)["terms_per_level"] == {"1": 1}
    code, out, _ = _run(capsys, "verify", str(path))
    assert code == 0
    assert _report(out)["ok"] is True


def test_info_extension_field(capsys):
    code, out, _ = _run(capsys, "info", "-n", "3", "-q", "4=2^2")
    assert code == 0
    report = _report(out)
    assert report["q"] == 4
    assert report["orders"]["V"] == 16


def test_oracle_command(capsys):
    code, out, err = _run(capsys, "oracle", "-n", "3", "-q", "2", "--ring", "fp:5")
    assert code == 0
    report = _report(out)
    assert report["full"] is True
    assert report["ideal_dim"] == 168
    assert report["order"] == 168
    assert "elapsed" not in report
    assert err.startswith("elapsed:")

    code, out, _ = _run(
        capsys, "oracle", "-n", "3", "-q", "2", "--ring", "fp:5", "--idempotent", "u-avg"
    )
    assert code == 0
    report = _report(out)
    assert report["full"] is False
    assert report["ideal_dim"] < 168


def test_oracle_report_is_byte_deterministic(capsys):
    _, out1, _ = _run(capsys, "oracle", "-n", "3", "-q", "2", "--ring", "fp:5")
    _, out2, _ = _run(capsys, "oracle", "-n", "3", "-q", "2", "--ring", "fp:5")
    assert out1 == out2


def test_oracle_gl_group(capsys):
    code, out, _ = _run(capsys, "oracle", "-n", "2", "-q", "3", "--ring", "fp:5", "--group", "gl")
    assert code == 0
    report = _report(out)
    assert report["group"] == "GL2(F_3)"
    assert report["order"] == 48
    assert report["full"] is True  # the level-2 averaged subgroup is trivial


def test_oracle_requires_field_ring(capsys):
    code, _, err = _run(capsys, "oracle", "-n", "3", "-q", "2", "--ring", "cyclotomic")
    assert code == 2
    assert "error" in err


def test_oracle_size_guard_exits_two(capsys, monkeypatch):
    monkeypatch.setenv("FULLWIT_CAP", "10")
    code, _, err = _run(capsys, "oracle", "-n", "3", "-q", "2", "--ring", "fp:5")
    assert code == 2
    assert "error" in err


def test_bad_q_exits_two(tmp_path, capsys):
    code, _, err = _run(capsys, "build", "-n", "3", "-q", "4", "-o", str(tmp_path / "c.json"))
    assert code == 2
    assert "error" in err


def test_bad_chi0_exits_two(tmp_path, capsys):
    code, _, _ = _run(capsys, "build", "-n", "3", "-q", "3", "-o", str(tmp_path / "c.json"), "--chi0", "0")
    assert code == 2


def test_usage_errors_exit_two(capsys):
    assert main([]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["verify"]) == 2


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert main(["build", "--help"]) == 0
