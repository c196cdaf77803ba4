import math
import sys
from pathlib import Path

import numpy as np
import pytest

from cha2.errors import EmptyConfig, ProtocolError, ScorerUnavailable
from cha2.molgraph import descriptors, parse_smiles
from cha2.scoring import (
    DesirabilityCurve,
    ExternalScorer,
    ProxyScoreConfig,
    ads,
    load_proxy_config,
    proxy_score,
)
from cha2.molgraph.descriptors import DescriptorVector

FAKE = [sys.executable, str(Path(__file__).parent / "fake_scorer.py")]


def flat_curve(descriptor: str, value: float = 1.0) -> DesirabilityCurve:
    """Constant-desirability stand-in for analytic tests."""
    return DesirabilityCurve(descriptor, a=value, b=0.0, c=0.0, d=0.0,
                             e=1.0, f=1.0, lo=0.0, hi=1.0,
                             normalization=1.0)


DV = DescriptorVector(mw=46.069, heavy_atoms=3, hbd=1, hba=1, rotb=0,
                      rings=0, heteroatom_fraction=1 / 3)


class TestAds:
    def test_matches_spreadsheet_evaluation(self):
        # independent evaluation of the double-sigmoid formula
        a, b, c, d, e, f = 0.5, 100.0, 10.0, 4.0, 1.5, 2.5
        for x in (0.0, 8.0, 10.0, 12.0, 30.0):
            rise = b / (1 + math.exp(-(x - c + d / 2) / e))
            fall = 1 - 1 / (1 + math.exp(-(x - c - d / 2) / f))
            assert ads(x, a, b, c, d, e, f) == pytest.approx(
                a + rise * fall, rel=1e-15
            )

    def test_normalization_peaks_at_one(self):
        curve = DesirabilityCurve.create(
            "mw", a=0.0, b=10.0, c=5.0, d=2.0, e=0.5, f=0.5,
            lo=0.0, hi=10.0,
        )
        xs = np.linspace(0, 10, 5001)
        values = [curve(x) for x in xs]
        assert max(values) == pytest.approx(1.0, abs=1e-6)
        assert all(0.0 <= v <= 1.0 for v in values)


class TestProxyScore:
    def test_all_curves_at_one_gives_one(self):
        cfg = ProxyScoreConfig(
            tuple((flat_curve(k), 1.0)
                  for k in ("mw", "hbd", "hba")),
        )
        assert proxy_score(DV, cfg) == pytest.approx(1.0)

    def test_floor_dominates_analytically(self):
        floor = 1e-6
        cfg = ProxyScoreConfig(
            ((flat_curve("mw", 0.0), 3.0), (flat_curve("hbd", 1.0), 1.0)),
            floor=floor,
        )
        # exp((3 ln floor + 1 ln 1)/4) = floor^(3/4)
        assert proxy_score(DV, cfg) == pytest.approx(floor ** 0.75, rel=1e-9)

    def test_ethanol_against_hand_evaluation(self):
        cfg = load_proxy_config()
        dv = descriptors(parse_smiles("CCO"))
        log_sum = w_sum = 0.0
        for curve, weight in cfg.curves:
            x = getattr(dv, curve.descriptor)
            raw = ads(x, curve.a, curve.b, curve.c, curve.d,
                      curve.e, curve.f)
            norm = min(max(raw / curve.normalization, 0.0), 1.0)
            log_sum += weight * math.log(max(cfg.floor, norm))
            w_sum += weight
        assert proxy_score(dv, cfg) == pytest.approx(
            math.exp(log_sum / w_sum), rel=1e-12
        )

    def test_empty_config_rejected(self):
        with pytest.raises(EmptyConfig):
            ProxyScoreConfig(((flat_curve("mw"), 0.0),))

    def test_monotone_in_each_desirability(self):
        # each descriptor feeds exactly one curve in the default config,
        # so raising that curve's desirability must never lower the score
        cfg = load_proxy_config()
        rng = np.random.default_rng(17)
        for _ in range(200):
            values = dict(
                mw=float(rng.uniform(10, 500)),
                heavy_atoms=int(rng.integers(1, 30)),
                hbd=float(rng.uniform(0, 6)),
                hba=float(rng.uniform(0, 10)),
                rotb=float(rng.uniform(0, 10)),
                rings=float(rng.uniform(0, 5)),
                heteroatom_fraction=float(rng.random()),
            )
            base = proxy_score(DescriptorVector(**values), cfg)
            for curve, weight in cfg.curves:
                if weight <= 0:
                    continue
                key = curve.descriptor
                xs = np.linspace(curve.lo, curve.hi, 2001)
                best_x = float(xs[int(np.argmax([curve(x) for x in xs]))])
                bumped = dict(values)
                bumped[key] = values[key] + 0.5 * (best_x - values[key])
                if curve(bumped[key]) >= curve(values[key]):
                    assert proxy_score(DescriptorVector(**bumped), cfg) \
                        >= base - 1e-12

    def test_geometric_mean_bounds_with_equal_weights(self):
        cfg = load_proxy_config()
        rng = np.random.default_rng(18)
        for _ in range(100):
            dv = DescriptorVector(
                mw=float(rng.uniform(10, 600)),
                heavy_atoms=int(rng.integers(1, 30)),
                hbd=int(rng.integers(0, 6)),
                hba=int(rng.integers(0, 10)),
                rotb=int(rng.integers(0, 12)),
                rings=int(rng.integers(0, 6)),
                heteroatom_fraction=float(rng.random()),
            )
            desirabilities = [
                max(cfg.floor, curve(getattr(dv, curve.descriptor)))
                for curve, _ in cfg.curves
            ]
            s = proxy_score(dv, cfg)
            assert min(desirabilities) - 1e-12 <= s \
                <= max(desirabilities) + 1e-12


class TestExternalScorer:
    def test_handshake_and_batch(self):
        with ExternalScorer(FAKE + ["ok"]) as client:
            scores = client.score_batch(["CCO", "CC", "C1CC1"])
        assert len(scores) == 3
        assert all(0.0 <= s <= 1.0 for s in scores)

    def test_deterministic_within_and_across_sessions(self):
        with ExternalScorer(FAKE + ["ok"]) as client:
            first = client.score_batch(["CCO"])
            second = client.score_batch(["CCO"])
        with ExternalScorer(FAKE + ["ok"]) as client:
            third = client.score_batch(["CCO"])
        assert first == second == third

    def test_nan_sentinel_propagates(self):
        with ExternalScorer(FAKE + ["ok"]) as client:
            scores = client.score_batch(["CCO", "XXX", "CC"])
        assert not math.isnan(scores[0])
        assert math.isnan(scores[1])
        assert not math.isnan(scores[2])

    def test_order_preserved(self):
        batch = [f"{'C' * (i % 7 + 1)}" for i in range(25)]
        with ExternalScorer(FAKE + ["ok"]) as client:
            together = client.score_batch(batch)
            one_by_one = [client.score_batch([s])[0] for s in batch]
        assert together == one_by_one

    def test_bad_handshake(self):
        with pytest.raises(ProtocolError):
            ExternalScorer(FAKE + ["bad-hello"]).start()

    def test_garbage_response(self):
        client = ExternalScorer(FAKE + ["garbage"])
        client.start()
        try:
            with pytest.raises(ProtocolError):
                client.score_batch(["CCO"])
        finally:
            client.close()

    def test_dead_scorer(self):
        client = ExternalScorer(FAKE + ["die"])
        client.start()
        try:
            with pytest.raises(ScorerUnavailable):
                client.score_batch(["CCO"])
        finally:
            client.close()

    def test_timeout(self):
        client = ExternalScorer(FAKE + ["silent"], timeout=0.5)
        client.start()
        try:
            with pytest.raises(ScorerUnavailable):
                client.score_batch(["CCO"])
        finally:
            client.close()

    def test_missing_binary(self):
        with pytest.raises(ScorerUnavailable):
            ExternalScorer(["/nonexistent/scorer"]).start()
