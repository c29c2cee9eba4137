import pytest

from ncinv import campaigns, nc2x2
from ncinv.algebra import QUATERNIONS, SCALARS, parse_ring
from ncinv.campaigns import CAMPAIGNS, CampaignSpec, run_campaign
from ncinv.errors import BadInput, SamplingExhausted


def spec(name, ring="quaternion", trials=10, **kw):
    return CampaignSpec(name, parse_ring(ring), trials, seed=5, **kw)


def strip(report):
    doc = report.to_json()
    doc.pop("duration_seconds")
    return doc


@pytest.mark.parametrize("name", sorted(CAMPAIGNS))
def test_every_campaign_runs_clean(name):
    ring = {"perturb": "series:1:matrix:2", "block": "scalar"}.get(name, "quaternion")
    report = run_campaign(spec(name, ring, trials=5))
    assert report.ok, report.to_json()["failures"]


def test_reports_are_deterministic():
    assert strip(run_campaign(spec("two-sided"))) == strip(run_campaign(spec("two-sided")))


def test_fixed_clock_gives_identical_json():
    clock = iter([0.0, 1.5, 0.0, 1.5]).__next__
    a = run_campaign(spec("five-way"), clock=clock).to_json()
    b = run_campaign(spec("five-way"), clock=clock).to_json()
    assert a == b and a["duration_seconds"] == 1.5


def test_failures_carry_the_counterexample(monkeypatch):
    real = nc2x2.inverse

    def broken(A, method=nc2x2.Method.GELFAND):
        X = real(A, method)
        if nc2x2.Method(method) is nc2x2.Method.RIGHT:
            return nc2x2.Inverse2(X.m + nc2x2.Matrix2.identity(A.ring), X.method)
        return X

    monkeypatch.setattr(campaigns.nc2x2, "inverse", broken)
    report = run_campaign(spec("five-way", trials=4))
    assert not report.ok
    assert {f.trial for f in report.failures} == {0, 1, 2, 3}
    first = report.failures[0].to_json()
    assert first["input"]["ring"] == "quaternion"
    assert "right" in first["methods"]

    report = run_campaign(spec("five-way", trials=4, fail_fast=True))
    assert report.trials_run == 1 and {f.trial for f in report.failures} == {0}


def test_sampling_exhausted_propagates():
    with pytest.raises(SamplingExhausted):
        run_campaign(spec("five-way", "scalar", trials=1, bound=1, retry_budget=1))


@pytest.mark.parametrize(
    "kw",
    [dict(trials=0), dict(bound=0), dict(identity_set="nope")],
)
def test_spec_validation(kw):
    args = dict(identity_set="five-way", ring=QUATERNIONS, trials=1, seed=0) | kw
    with pytest.raises(BadInput):
        CampaignSpec(**args)


def test_ring_must_suit_campaign():
    with pytest.raises(BadInput):
        CampaignSpec("perturb", SCALARS, 1, 0)
    with pytest.raises(BadInput):
        CampaignSpec("five-way", parse_ring("series:1"), 1, 0)
