######################
# Test tie partitions, levels and atoms
######################
import map_ties as mt
from map_ties.partitions.partitions import atom_rows, cell_rows, family_rows, level_rows
from fractions import Fraction
import pytest


def as_strings(words, n=4):
    return {mt.word_to_str(y, n) for y in words}


def family_sums(inst):
    families = mt.tie_partitions(inst)
    tie = sum((f.mass(f.tie, j) for f in families for j in f.tie), Fraction(0))
    remainder = sum((f.mass(f.remainder, j) for f in families for j in f.remainder), Fraction(0))
    return tie, remainder


class Test_differ_set:
    def test_one(self):
        s = mt.differ_set(mt.refinement_example(), 1, 3)
        assert s.indices == [2, 3, 4, 5] and s.size == 4

    def test_two(self):
        assert mt.differ_set(mt.example_one(), 1, 2).indices == [2, 4]

    def test_three(self):
        inst = mt.example_one()
        assert mt.differ_set(inst, 3, 4).indices == [4]
        assert mt.differ_set(inst, 3, 4).mask == mt.differ_set(inst, 4, 3).mask

    def test_four(self):
        with pytest.raises(mt.MapTiesError):
            mt.differ_set(mt.example_one(), 2, 2)


class Test_refine:
    def test_one(self):
        part = mt.refine(mt.refinement_example(), 1, 3)
        assert [mt.mask_to_indices(part.cell(m), 5) for m in range(1, 5)] == [[4], [], [3], [2, 5]]

    def test_two(self):
        inst = mt.refinement_example()
        part = mt.refine(inst, 1, 3)
        assert mt.restricted_distance(inst.codeword(1), inst.codeword(2), part.cell(4)) == 2
        assert mt.restricted_distance(inst.codeword(1), inst.codeword(2), part.cell(3)) == 0

    def test_three(self):
        part = mt.refine(mt.repetition_two(), 1, 2)
        assert part.cell_count == 1 and part.cell(1) == 0b11

    def test_four(self):
        part = mt.refine(mt.example_one(), 2, 1)
        assert [mt.mask_to_indices(part.cell(m), 4) for m in range(1, 5)] == [[2], [4], [], []]
        assert part.etas == (2, 2)
        assert [part.cumulative_size(m) for m in range(5)] == [0, 1, 2, 2, 2]

    def test_five(self):
        inst = mt.refinement_example()
        for i in range(1, 5):
            for j in range(1, 5):
                if i != j:
                    assert mt.check_refinement(inst, mt.refine(inst, i, j)).passed

    def test_six(self):
        with pytest.raises(IndexError):
            mt.refine(mt.refinement_example(), 1, 3).cell(5)


class Test_tie_partition:
    def test_one(self):
        fam = mt.tie_partition(mt.example_one(), 1)
        assert all(fam.tie_family(j) == [] for j in (2, 3, 4))
        assert as_strings(fam.remainder_family(2)) == {"0101", "0111", "1101", "1111"}
        assert as_strings(fam.remainder_family(3)) == {"0110", "1110"}
        assert fam.remainder_family(4) == []

    def test_two(self):
        fam = mt.tie_partition(mt.example_one(), 2)
        assert as_strings(fam.tie_family(1)) == {"0101", "0111", "1101", "1111"}
        assert all(fam.remainder_family(j) == [] for j in (1, 3, 4))
        assert as_strings(fam.error_family(1)) == {"0001", "0100", "0011", "0110",
                                                   "1001", "1100", "1011", "1110"}
        assert as_strings(fam.error_family(3)) == {"0010", "1010"}
        assert fam.error_family(4) == []

    def test_three(self):
        fam = mt.tie_partition(mt.example_one(), 3)
        assert as_strings(fam.error_family(1)) == {"0010", "0100", "0011", "0101",
                                                   "1010", "1100", "1011", "1101"}
        assert as_strings(fam.error_family(2)) == {"0001", "1001"}

    def test_four(self):
        inst = mt.build_instance(["000", "111"])
        assert all(not len(words) for f in mt.tie_partitions(inst)
                   for family in (f.tie, f.remainder) for words in family.values())

    def test_five(self):
        families = mt.tie_partitions(mt.example_one())
        assert 0b0111 in families[1].tie_family(1) and 0b0111 in families[2].tie_family(1)
        assert 0b0111 in families[0].remainder_family(2)


class Test_level_partition:
    def test_one(self):
        levels = mt.level_partition(mt.example_one(), 2, 1)
        assert as_strings(levels.tie_level(0)) == {"0101", "0111", "1101", "1111"}
        assert levels.tie_level(1) == []
        assert as_strings(levels.error_level(0)) == {"0001", "0011", "1001", "1011"}

    def test_two(self):
        levels = mt.level_partition(mt.example_one(), 1, 2)
        assert all(not len(level) for level in levels.tie_levels)
        assert len(levels.windows) == 2

    def test_three(self):
        inst = mt.example_one()
        fam = mt.tie_partition(inst, 2)
        assert mt.check_prop3(inst, mt.level_partition(inst, 2, 1, family=fam), fam).passed


class Test_atom_partition:
    def test_one(self):
        atoms = mt.atom_partition(mt.example_one(), 2, 1, 0)
        assert [mt.word_to_str(u, 4) for u in atoms.representatives] == ["0101", "0111", "1101", "1111"]
        assert all(len(a.tie_words) == 1 and len(a.error_words) == 1 for a in atoms.atoms)
        assert all(a.ratio == 2 for a in atoms.atoms)

    def test_two(self):
        atom = mt.atom_partition(mt.example_one(), 2, 1, 0).atoms[0]
        assert atom.tie_words == (0b0101,) and atom.error_words == (0b0001,)

    def test_three(self):
        with pytest.raises(IndexError):
            mt.atom_partition(mt.example_one(), 2, 1, 2)

    def test_four(self):
        inst = mt.example_one()
        levels = mt.level_partition(inst, 2, 1)
        prop4, sizes = mt.check_prop4(inst, levels, [mt.atom_partition(inst, 2, 1, 0, levels=levels)])
        assert prop4.passed and sizes.passed and sizes.checked == 4


class Test_check_appendixB:
    def test_one(self):
        inst = mt.example_one()
        for u in ("0101", "0111", "1101", "1111"):
            report = mt.check_appendixB(inst, 2, 1, 0, u)
            assert report.passed and report.checked == 2

    def test_two(self):
        report = mt.check_appendixB(mt.example_one(), 2, 1, 0, "0000")
        assert not report.passed


class Test_check_prop1:
    def test_one(self):
        assert mt.check_prop1(mt.example_one()).passed

    def test_two(self):
        assert mt.check_prop1(mt.refinement_example()).checked == 4


class Test_check_prop2:
    def test_one(self):
        report = mt.check_prop2(mt.example_one())
        assert report.passed and report.checked == 6

    def test_two(self):
        report = mt.check_prop2(mt.repetition_two())
        assert report.passed and report.vacuous

    def test_three(self):
        tie, remainder = family_sums(mt.example_one())
        assert tie == Fraction(32, 225) and remainder == Fraction(16, 135)

    def test_four(self):
        for p in (Fraction(1, 3), Fraction(1, 4), Fraction(2, 5)):
            q = (1 - p) / p
            tie, remainder = family_sums(mt.example_one(p=p))
            assert tie - remainder == p**4 * q**2 * (q + 1) / (2 + q**2 + q**-2)


class Test_check_prop9:
    def test_one(self):
        report = mt.check_prop9(mt.example_one())
        assert report.passed and report.checked >= 4

    def test_two(self):
        assert mt.check_prop9(mt.build_instance(["000", "111"])).vacuous


class Test_check_uniform:
    def test_one(self):
        report = mt.check_uniform(mt.repetition_two())
        assert report.passed and report.checked == 2

    def test_two(self):
        assert mt.check_uniform(mt.example_one()).vacuous

    def test_three(self):
        assert mt.check_uniform(mt.refinement_example()).passed


class Test_partition_report:
    def test_one(self):
        report = mt.partition_report(mt.example_one(), 2, 1)
        assert report.passed and report.differ.indices == [2, 4]
        assert [c.property for c in report.checks] == ["partitions.refinement", "partitions.prop3",
            "partitions.prop4", "partitions.n_atom_size", "partitions.prop9", "partitions.appendixB"]

    def test_two(self):
        for inst in (mt.example_one(), mt.refinement_example(), mt.repetition_two()):
            assert all(r.passed for r in mt.partition_reports(inst))

    def test_three(self):
        report = mt.partition_report(mt.example_one(), 2, 1, run_checks=False)
        assert report.checks == ()


class Test_bound_chain:
    def test_one(self):
        chain = mt.bound_chain(mt.example_one())
        assert chain.passed and not chain.vacuous
        assert chain.links[0] == ("delta/b", Fraction(176, 147))
        assert chain.links[-1] == ("2qn", 16)
        values = [value for _, value in chain.links]
        assert values == sorted(values)

    def test_two(self):
        assert mt.bound_chain(mt.build_instance(["000", "111"])).vacuous

    def test_three(self):
        chain = mt.bound_chain(mt.repetition_two())
        assert chain.passed and chain.links[0][1] == 6

    def test_four(self):
        data = mt.bound_chain(mt.example_one()).to_json()
        assert data["links"][-1] == {"link": "2qn", "value": "16"}


class Test_rows:
    def test_one(self):
        inst = mt.example_one()
        headers, rows = family_rows(inst, mt.tie_partitions(inst, [1]), j=2)
        assert headers == ["i", "j", "T_{j|i}", "T~_{j|i}", "N_{j|i}"]
        assert rows == [[1, 2, [], ["0101", "0111", "1101", "1111"], []]]

    def test_two(self):
        headers, rows = cell_rows(mt.partition_report(mt.refinement_example(), 1, 3))
        assert rows == [[1, "00", [4], 1], [2, "01", [], 1], [3, "10", [3], 2], [4, "11", [2, 5], 4]]

    def test_three(self):
        report = mt.partition_report(mt.example_one(), 2, 1)
        headers, rows = level_rows(report)
        assert rows[0][:3] == [0, 2, [2, 4]] and rows[1][3] == []
        headers, rows = atom_rows(report)
        assert rows[0] == [0, "0101", ["0101"], ["0001"], Fraction(2)]

    def test_four(self):
        text = mt.render_table(*family_rows(mt.example_one(), mt.tie_partitions(mt.example_one(), [1]), j=3))
        assert "| 1 | 3 | ∅ | {0110,1110} | ∅ |" in text
