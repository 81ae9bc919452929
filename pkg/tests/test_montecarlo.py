######################
# Test the Monte Carlo estimates
######################
import map_ties as mt
from map_ties.montecarlo.montecarlo import block_rng, make_estimate, sample_block
import numpy as np
import pytest


def ten_bit_code():
    return mt.build_instance(["0000000000", "1111100000", "0000011111", "1010101010"], p="1/5")


class Test_make_estimate:
    def test_one(self):
        est = make_estimate("b", 25, 100, 0)
        assert est.point == 0.25 and est.stderr == pytest.approx(0.0433, abs=1e-4)
        assert est.ci_low < 0.25 < est.ci_high

    def test_two(self):
        est = make_estimate("delta", 0, 50, 0)
        assert est.point == 0 and est.stderr == 0 and est.ci_low == 0


class Test_sample_block:
    def test_one(self):
        inst = mt.example_one()
        sent, y = sample_block(inst, 1000, block_rng(0, 0))
        assert sent.shape == y.shape == (1000,) and y.dtype == np.uint64
        assert sent.min() >= 0 and sent.max() < 4 and y.max() < 16

    def test_two(self):
        inst = mt.build_instance(["0" * 40, "1" * 40], p="1/10")
        sent, y = sample_block(inst, 10, block_rng(0, 0))
        assert y.dtype == np.uint64


class Test_estimate_metrics:
    def test_one(self):
        inst = ten_bit_code()
        assert mt.check_agreement(inst, mt.estimate_metrics(inst, samples=10**5, seed=0)).passed

    def test_two(self):
        inst = mt.example_one()
        assert mt.check_agreement(inst, mt.estimate_metrics(inst, samples=10**5, seed=1)).passed

    def test_three(self):
        inst = mt.example_one()
        first = mt.estimate_metrics(inst, samples=40000, seed=5)
        assert first == mt.estimate_metrics(inst, samples=40000, seed=5)
        assert first == mt.estimate_metrics(inst, samples=40000, seed=5, workers=3)

    def test_four(self):
        est = mt.estimate_metrics(mt.repetition_two(), samples=1, seed=3)
        assert all(e.point in (0.0, 1.0) and e.samples == 1 for e in est)

    def test_five(self):
        est = mt.estimate_metrics(mt.build_instance(["000", "111"], p="1/5"), samples=5000)
        assert est.delta.point == 0 and est.a.point == est.b.point

    def test_six(self):
        with pytest.raises(mt.MapTiesError):
            mt.estimate_metrics(mt.example_one(), samples=0)

    def test_seven(self):
        with pytest.raises(mt.MapTiesError):
            mt.estimate_metrics(mt.example_one(), samples=10, seed=-1)

    def test_eight(self):
        #beyond the enumeration limit only sampling is available
        inst = mt.build_instance(["0" * 40, "1" * 40], p="1/10")
        est = mt.estimate_metrics(inst, samples=2000)
        assert est.delta.point == 0 and est.b.point < 0.01


class Test_check_labels:
    def test_one(self):
        assert mt.check_labels(mt.example_one(), samples=2000).passed

    def test_two(self):
        report = mt.check_labels(ten_bit_code(), samples=500, seed=9)
        assert report.passed and report.checked == 500


class Test_check_agreement:
    def test_one(self):
        inst = mt.example_one()
        est = mt.estimate_metrics(inst, samples=20000, seed=2)
        wrong = (0.9, 0.9, 0.9)
        report = mt.check_agreement(inst, est, exact=wrong)
        assert not report.passed and len(report.violations) == 3
