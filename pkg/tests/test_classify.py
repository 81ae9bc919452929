######################
# Test output classification
######################
import map_ties as mt
from fractions import Fraction
import pytest
from map_ties.classify.classify import _metrics_from, scan


def as_strings(words, n=4):
    return {mt.word_to_str(y, n) for y in words}


class Test_tie_set:
    def test_one(self):
        assert as_strings(mt.tie_set(mt.example_one(), 1)) == {"0101", "0110", "0111", "1101", "1110", "1111"}

    def test_two(self):
        assert mt.tie_set(mt.example_one(), 4) == []

    def test_three(self):
        for p in ("1/3", "1/4", "1/10"):
            assert as_strings(mt.tie_set(mt.repetition_two(p=p), 1), 2) == {"01", "10"}

    def test_four(self):
        with pytest.raises(IndexError):
            mt.tie_set(mt.example_one(), 0)


class Test_error_set:
    def test_one(self):
        assert mt.error_set(mt.example_one(), 1) == []

    def test_two(self):
        assert mt.error_set(mt.example_one(), 4) == list(range(16))

    def test_three(self):
        assert as_strings(mt.error_set(mt.repetition_two(), 1), 2) == {"11"}


class Test_tie_indices:
    def test_one(self):
        assert mt.tie_indices(mt.example_one(), 1, "0111") == [2, 3]

    def test_two(self):
        assert mt.tie_indices(mt.example_one(), 4, "0111") == []

    def test_three(self):
        assert mt.tie_indices(mt.example_one(), 2, "0101") == [1]


class Test_map_decode:
    def test_one(self):
        assert mt.map_decode(mt.example_one(), "0000") == 1

    def test_two(self):
        assert mt.map_decode(mt.example_one(), "0111") == 1

    def test_three(self):
        assert mt.map_decode(mt.repetition_two(), "01") == 1


class Test_metrics:
    def test_one(self):
        assert mt.metrics(mt.repetition_two()) == (Fraction(1, 4), Fraction(1, 16), Fraction(3, 8))

    def test_two(self):
        assert mt.metrics(mt.example_one()) == (Fraction(9, 25), Fraction(49, 225), Fraction(176, 675))

    def test_three(self):
        #odd n with antipodal codewords leaves no equidistant output
        a, b, delta = mt.metrics(mt.build_instance(["000", "111"], p="1/5"))
        assert delta == 0 and a == b

    def test_four(self):
        inst = mt.example_one()
        assert mt.metrics(inst, workers=4) == mt.metrics(inst)

    def test_five(self):
        inst = mt.build_instance(["0000000000", "1111100000", "0000011111", "1010101010"], p="1/5")
        assert _metrics_from(inst, scan(inst, chunk=100, workers=3)) == mt.metrics(inst)


class Test_classify:
    def test_one(self):
        c = mt.classify(mt.example_one())
        assert c.tie_mass[3] == 0 and c.error_mass[0] == 0
        assert sum(c.tie_mass) == c.metrics.delta and sum(c.error_mass) == c.metrics.b

    def test_two(self):
        c = mt.classify(mt.example_one())
        for i in range(1, 5):
            regions = set(c.tie_set(i)) | set(c.error_set(i)) | set(c.correct_set(i))
            assert regions == set(range(16))
            assert not set(c.tie_set(i)) & set(c.error_set(i))

    def test_three(self):
        c = mt.classify(mt.example_one())
        assert as_strings(c.correct_set(1)) == {"0000", "0001", "0010", "0011", "0100", "1000",
                                                 "1001", "1010", "1011", "1100"}

    def test_four(self):
        assert mt.classify(mt.build_instance(["000", "111"])).tie_free


class Test_verify_theorem:
    def test_one(self):
        report = mt.verify_theorem(mt.example_one())
        assert report.passed and all(report.bound_ok)
        assert report.ratio_delta_b == Fraction(176, 147)
        assert report.ratio_a_b == Fraction(81, 49)

    def test_two(self):
        report = mt.verify_theorem(mt.repetition_two())
        assert report.passed and report.uniform and report.uniform_ok
        assert report.ratio_delta_b == 6 == report.q * report.n

    def test_three(self):
        report = mt.verify_theorem(mt.build_instance(["000", "111"]))
        assert report.tie_free and report.passed and report.to_json()["tie_free"]

    def test_four(self):
        data = mt.verify_theorem(mt.example_one()).to_json()
        assert data["a"] == "9/25" and data["b"] == "49/225" and data["delta"] == "176/675"
        assert data["bound_ok"] is True


class Test_classification_table:
    #rows of the membership matrix for the four codeword example
    TABLE = {
        "0000": ([-2, 2, 2, 5], [[], [], [], []]),
        "0101": ([0, 0, 2, 3], [[2], [1], [], []]),
        "0110": ([0, 2, 0, 3], [[3], [], [1], []]),
        "0111": ([1, 1, 1, 2], [[2, 3], [1, 3], [1, 2], []]),
        "1111": ([2, 2, 2, 3], [[2, 3], [1, 3], [1, 2], []]),
    }

    def test_one(self):
        headers, rows = mt.classification_rows(mt.example_one())
        assert headers[:5] == ["y", "d(0000,y)-2", "d(0101,y)", "d(0110,y)", "d(0111,y)+2"]
        by_word = {row[0]: row for row in rows}
        for word, (dist, ties) in self.TABLE.items():
            assert by_word[word][1:5] == dist
            assert by_word[word][9:13] == ties

    def test_two(self):
        for p in (Fraction(1, 3), Fraction(1, 4), Fraction(2, 5)):
            headers, rows = mt.classification_rows(mt.example_one(p=p))
            assert {row[0]: row[9:13] for row in rows}["0111"] == [[2, 3], [1, 3], [1, 2], []]

    def test_three(self):
        headers, rows = mt.classification_rows(mt.example_one(), i=1)
        assert headers == ["y", "d(0000,y)-2", "d(0101,y)", "d(0110,y)", "d(0111,y)+2", "tag_1", "I_1(y)"]
        assert rows[7] == ["0111", 1, 1, 1, 2, "TIE", [2, 3]]
        assert rows[0][5] == "OK"

    def test_four(self):
        text = mt.classification_table(mt.example_one(), i=4, fmt="csv")
        assert text.splitlines()[1] == "0000,-2,2,2,5,ERR,"

    def test_five(self):
        headers, rows = mt.classification_rows(mt.build_instance(["00", "11"], ["1", "2"], p="1/3"))
        assert headers[1:3] == ["d(00,y)", "d(11,y)"]
