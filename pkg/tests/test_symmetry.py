from itertools import product

import pytest

from models.distribution import Distribution
from services.symmetry import (
    Transformation,
    canonical,
    class_count,
    complexity_classes,
    count_orbits,
    fixed_points,
    orbit,
    reduce_distribution,
    transform_distribution,
)


class TestOrbits:
    def test_full_orbit(self):
        assert orbit("0001") == {"0001", "1000", "1110", "0111"}

    def test_orbit_collapses_on_symmetric_strings(self):
        assert orbit("0101") == {"0101", "1010"}
        assert orbit("0110") == {"0110", "1001"}

    def test_canonical_is_smallest_member(self):
        assert canonical("1110") == "0001"
        assert canonical("1111") == "0000"

    def test_empty_string(self):
        with pytest.raises(ValueError):
            orbit("")

    def test_classes_of_length_four(self):
        keys = [c.canonical for c in complexity_classes(4)]
        assert keys == ["0000", "0001", "0010", "0011", "0101", "0110"]

    def test_classes_carry_reduced_weights(self):
        d = Distribution(n=2, entries={"00": 0.5, "11": 0.25, "01": 0.25})
        classes = complexity_classes(2, d)
        assert [(c.canonical, c.members, c.weight) for c in classes] == [
            ("00", ["00", "11"], 0.375),
            ("01", ["01", "10"], 0.125),
        ]

    def test_unobserved_class_has_zero_weight(self):
        classes = complexity_classes(2, Distribution(n=2, entries={"11": 1.0}))
        assert [c.weight for c in classes] == [0.5, 0.0]

    def test_classes_length_mismatch(self):
        with pytest.raises(ValueError):
            complexity_classes(3, Distribution(n=2, entries={"00": 1.0}))


def strings(n):
    return ["".join(bits) for bits in product("01", repeat=n)]


class TestKleinGroup:
    @pytest.mark.parametrize("n", range(1, 13))
    def test_every_element_is_an_involution(self, n):
        for s in strings(n):
            for t in Transformation:
                assert t.apply(t.apply(s)) == s

    @pytest.mark.parametrize("n", range(1, 13))
    def test_reverse_and_complement_commute(self, n):
        sy, co, syco = Transformation.SY, Transformation.CO, Transformation.SYCO
        for s in strings(n):
            assert sy.apply(co.apply(s)) == co.apply(sy.apply(s)) == syco.apply(s)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_orbit_sizes_divide_four(self, n):
        for s in strings(n):
            assert len(orbit(s)) in (2, 4)


class TestBurnside:
    @pytest.mark.parametrize("n", range(1, 17))
    def test_closed_formula_matches_brute_force(self, n):
        assert class_count(n) == count_orbits(n)

    def test_small_counts(self):
        assert [class_count(n) for n in (1, 2, 3, 4)] == [1, 2, 3, 6]

    def test_fixed_points(self):
        assert fixed_points(Transformation.SY, 5) == 8
        assert fixed_points(Transformation.SYCO, 4) == 4
        assert fixed_points(Transformation.SYCO, 5) == 0
        assert fixed_points(Transformation.CO, 6) == 0

    def test_invalid_length(self):
        with pytest.raises(ValueError):
            class_count(0)


class TestReduction:
    def test_divide_by_orbit_size(self):
        d = Distribution(n=2, entries={"00": 0.5, "11": 0.25, "01": 0.25})
        r = reduce_distribution(d)
        assert r.reduced
        assert r.weights == {"00": 0.375, "01": 0.125}
        assert r.entries == {"00": 0.75, "01": 0.25}

    def test_orbit_size_varies_within_length(self):
        # 0101 tiene órbita de 2, 0001 de 4
        d = Distribution(n=4, entries={"0101": 0.5, "0001": 0.5})
        r = reduce_distribution(d)
        assert r.weights == {"0001": 0.125, "0101": 0.25}

    def test_idempotent(self):
        d = Distribution(n=3, entries={"000": 0.2, "010": 0.3, "110": 0.5})
        once = reduce_distribution(d)
        assert reduce_distribution(once) == once

    @pytest.mark.parametrize("transformation", list(Transformation))
    def test_invariant_under_group(self, transformation, tm22_n3):
        moved = transform_distribution(tm22_n3, transformation)
        assert reduce_distribution(moved).entries == reduce_distribution(tm22_n3).entries

    def test_unobserved_classes_omitted(self):
        r = reduce_distribution(Distribution(n=3, entries={"000": 1.0}))
        assert list(r.entries) == ["000"]
