######################
# Test the property harness
######################
import map_ties as mt
from map_ties.harness.harness import Oracle, check_oracle
from fractions import Fraction
import json
import pytest


class Test_fuzz_config:
    def test_one(self):
        cfg = mt.FuzzConfig()
        assert (cfg.seed, cfg.trials, cfg.max_n, cfg.max_m) == (0, 1000, 8, 6)
        assert cfg.uniform_share == Fraction(1, 4)

    def test_two(self):
        with pytest.raises(mt.MapTiesError):
            mt.FuzzConfig(max_n=13)

    def test_three(self):
        with pytest.raises(mt.MapTiesError):
            mt.FuzzConfig(p_pool=(Fraction(1, 2),))

    def test_four(self):
        with pytest.raises(mt.MapTiesError):
            mt.FuzzConfig(weight_style="float")


class Test_random_instance:
    def test_one(self):
        cfg = mt.FuzzConfig(seed=7)
        assert mt.random_instance(cfg, 0) == mt.random_instance(cfg, 0)

    def test_two(self):
        cfg = mt.FuzzConfig(seed=3, trials=50, max_n=2, max_m=2)
        for trial in range(50):
            inst = mt.random_instance(cfg, trial)
            assert inst.n == 2 and inst.M == 2

    def test_three(self):
        cfg = mt.FuzzConfig(seed=11, trials=200)
        for trial in range(200):
            inst = mt.random_instance(cfg, trial)
            again = mt.instance_from_json(mt.instance_to_json(inst))
            assert again == inst and 2 <= inst.n <= 8 and 2 <= inst.M <= min(6, 2**inst.n)
            assert inst.p in cfg.p_pool

    def test_four(self):
        with pytest.raises(IndexError):
            mt.random_instance(mt.FuzzConfig(trials=5), 5)

    def test_five(self):
        cfg = mt.FuzzConfig(seed=5, trials=400, weight_style="laurent", uniform_share=Fraction(0))
        instances = [mt.random_instance(cfg, t) for t in range(400)]
        assert all(w.is_monomial() for inst in instances for w in inst.weights)
        assert not all(inst.is_uniform for inst in instances)

    def test_six(self):
        cfg = mt.FuzzConfig(seed=5, trials=20, uniform_share=Fraction(1))
        assert all(mt.random_instance(cfg, t).is_uniform for t in range(20))


class Test_oracle:
    def test_one(self):
        oracle = Oracle(mt.example_one())
        assert oracle.tie_indices(1, 0b0111) == [2, 3]
        tie, remainder, error = oracle.families(1)
        assert remainder[3] == [0b0110, 0b1110]

    def test_two(self):
        assert Oracle(mt.example_one()).metrics() == (Fraction(9, 25), Fraction(49, 225), Fraction(176, 675))

    def test_three(self):
        oracle = Oracle(mt.refinement_example())
        assert [mt.mask_to_indices(c, 5) for c in oracle.cells(1, 3)] == [[4], [], [3], [2, 5]]

    def test_four(self):
        inst = mt.example_one()
        families = mt.tie_partitions(inst)
        report = check_oracle(inst, mt.classify(inst), families, mt.partition_reports(inst, families))
        assert report.passed


class Test_run_suite:
    def test_one(self):
        report = mt.run_suite(mt.example_one())
        assert report.passed, [v.to_json() for v in report.violations]
        assert report.reproducers() == []

    def test_two(self):
        report = mt.run_suite(mt.build_instance(["000", "111"]))
        assert report.passed and report.bounds.tie_free and report.chain.vacuous
        assert {c.property: c.vacuous for c in report.checks}["partitions.prop2"]

    def test_three(self):
        for inst in (mt.refinement_example(), mt.repetition_two()):
            assert mt.run_suite(inst).passed

    def test_four(self):
        names = [c.property for c in mt.run_suite(mt.example_one()).checks]
        for name in ("classify.bounds", "classify.regions", "classify.reciprocity", "model.probability_laws",
                     "partitions.prop1", "partitions.prop2", "partitions.prop9", "partitions.appendixB",
                     "partitions.bound_chain", "harness.oracle"):
            assert name in names

    def test_five(self):
        assert "harness.oracle" not in [c.property for c in mt.run_suite(mt.example_one(), oracle=False).checks]

    def test_six(self):
        data = json.loads(json.dumps(mt.run_suite(mt.repetition_two()).to_json()))
        assert mt.instance_from_json(data["instance"]) == mt.repetition_two()


class Test_run_fuzz:
    def test_one(self, tmp_path):
        report = mt.run_fuzz(mt.FuzzConfig(seed=7, trials=30), dump=str(tmp_path))
        assert report.passed and report.trials == 30
        assert list(tmp_path.iterdir()) == []

    def test_two(self):
        cfg = mt.FuzzConfig(seed=1, trials=12)
        assert mt.run_fuzz(cfg).to_json() == mt.run_fuzz(cfg, workers=3).to_json()

    def test_corpus(self):
        #acceptance corpus: n <= 8, M <= 6, mixed rational and Laurent priors
        report = mt.run_fuzz(mt.FuzzConfig(seed=0, trials=1000))
        assert report.passed, report.failures[:5]
        assert report.trials == 1000 and report.uniform_trials > 0
        assert report.checked["partitions.appendixB"] > 0 and report.checked["harness.oracle"] > 0
