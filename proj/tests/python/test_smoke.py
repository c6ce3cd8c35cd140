import json
import pathlib

import pytest

import fncalc

MODELS = pathlib.Path(__file__).resolve().parent.parent / "models"


def test_poly_roundtrip():
    p = fncalc.Poly("x^2*y", 2)
    assert str(p.diff(0)) == str(fncalc.Poly("2*x*y", 2))
    assert p.eval(["2", "3"]) == "12"
    assert (fncalc.Poly("x+y", 2) * fncalc.Poly("x-y", 2)) == fncalc.Poly("x^2-y^2", 2)
    assert (p - p).is_zero()


def test_bad_poly_raises():
    with pytest.raises(fncalc.FncalcError):
        fncalc.Poly("x1 +", 4)


def test_generate_is_deterministic():
    assert fncalc.generate("random", 1, 2, 7) == fncalc.generate("random", 1, 2, 7)
    assert fncalc.generate("r2", 2, 1, 42)["id"] == "r2-n2-d1-s42"


def test_flat_model_passes():
    report = fncalc.verify(MODELS / "flat.json")
    assert fncalc.exit_code(report) == 0
    assert {r["verdict"] for r in report["rows"]} <= {"PASS", "SKIPPED"}
    assert len(report["rows"]) == len(fncalc.catalog())


def test_backends_agree_on_q1():
    model = fncalc.generate("q1")
    exact = fncalc.verify(model)
    points = fncalc.verify(model, backend="points", samples=100, seed=1)
    assert [r["verdict"] for r in exact["rows"]] == [r["verdict"] for r in points["rows"]]
    assert all(r["residual_norm"] is not None for r in points["rows"] if r["verdict"] == "PASS")


def test_corrupted_model_fails():
    report = fncalc.verify(fncalc.generate("corrupted"))
    assert fncalc.exit_code(report) == 1
    row = next(r for r in report["rows"] if r["id"] == "structure.connection_axioms")
    assert row["verdict"] == "FAIL" and row["witness"]


def test_schema_error():
    with pytest.raises(fncalc.SchemaError, match="spray"):
        fncalc.verify(MODELS / "bad.json")
    with pytest.raises(fncalc.SchemaError):
        fncalc.verify(json.dumps({"n": 1}))


def test_text_report():
    text = fncalc.verify_text(fncalc.generate("flat"), suites=["structure"])
    assert "structure.l_rank" in text
