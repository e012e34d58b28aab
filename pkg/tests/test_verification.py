import math

import pytest

from hilbert_et.errors import InvalidArgument
from hilbert_et.verification import (
    CRITERIA,
    PUBLISHED_DECIMALS,
    Check,
    RunConfig,
    VerificationSuiteResult,
    run_verify_paper,
)


def test_run_config_validation():
    RunConfig()
    for bad in (dict(tolerance=0.0), dict(grid=32), dict(series_K=10), dict(output_format="xml")):
        with pytest.raises(InvalidArgument):
            RunConfig(**bad)


def test_overall_is_conjunction():
    ok = Check("a", 1.0, 1.0, 0.1, True)
    bad = Check("b", 1.0, 2.0, 0.1, False)
    assert VerificationSuiteResult([ok, ok]).overall
    assert not VerificationSuiteResult([ok, bad]).overall
    doc = VerificationSuiteResult([ok, bad]).as_dict()
    assert doc["overall"] is False and len(doc["checks"]) == 2
    assert "FAIL" in VerificationSuiteResult([bad]).table()


def test_criteria_names_are_unique():
    names = [n for n, _ in CRITERIA]
    assert len(names) == 11 == len(set(names))


def test_published_decimals_are_four_places():
    for v in PUBLISHED_DECIMALS.values():
        assert round(v, 5) == v


def test_unattainable_tolerance_fails_gracefully():
    res = run_verify_paper(RunConfig(tolerance=1e-30), only=["triangle", "power_of_linear"])
    assert not res.overall
    failed = [c for c in res.checks if not c.passed]
    assert failed
    for c in failed:
        assert c.detail or math.isfinite(c.computed)


def test_seed_change_keeps_properties():
    for seed in (1, 2024):
        res = run_verify_paper(RunConfig(seed=seed), only=["properties", "sandwich"])
        assert res.overall, [c for c in res.checks if not c.passed]


def test_failures_are_recorded_not_raised(monkeypatch):
    import hilbert_et.verification as v

    def boom(cfg, rng):
        raise RuntimeError("kaput")

    monkeypatch.setattr(v, "CRITERIA", (("boom", boom),) + v.CRITERIA[1:2])
    res = v.run_verify_paper(only=["boom", "triangle"])
    assert not res.overall
    assert res.checks[0].name == "boom" and "kaput" in res.checks[0].detail
    assert all(c.passed for c in res.checks[1:])


def test_unknown_criterion_rejected():
    with pytest.raises(InvalidArgument):
        run_verify_paper(only=["nope"])
