import pytest

from errors import ConfigError, IncomparableError, MissingEstimateError
from models.distribution import Distribution
from models.experiment import ModelKind, SampleSchedule
from models.report import DistributionSequence, NaturalnessLabel
from models.run import RunConfig
from services.analysis import (
    build_sequence,
    compare_models,
    concordant_fraction,
    convergence_check,
    estimate_k,
    experiment_spec,
    k_table,
    natural_distribution,
    naturalness_test,
    order_preserving,
    project,
    rank_frequency,
)
from services.symmetry import class_count
from tests.conftest import ECA, REFERENCE_N4, make_distribution, make_sequence


def reversed_entries(entries: dict[str, float]) -> dict[str, float]:
    """Mismas claves con las probabilidades en orden inverso"""
    keys = sorted(entries, key=entries.get)
    values = sorted(entries.values(), reverse=True)
    return dict(zip(keys, values))


class TestEstimate:
    @pytest.mark.parametrize("p, bits", [(0.25, 2.0), (1.0, 0.0), (0.5, 1.0)])
    def test_minus_log2(self, p, bits):
        d = make_distribution({"01": p, "00": 1 - p} if p < 1 else {"01": 1.0})
        assert estimate_k(d, "01") == bits

    def test_unobserved_string(self):
        with pytest.raises(MissingEstimateError):
            estimate_k(make_distribution({"00": 1.0}), "01")

    def test_reduced_lookup_uses_class(self):
        d = make_distribution({"00": 0.75, "01": 0.25}, reduced=True)
        assert estimate_k(d, "11") == estimate_k(d, "00")
        assert estimate_k(d, "10") == 2.0

    def test_k_order_is_rank_order(self):
        d = make_distribution(REFERENCE_N4, reduced=True)
        table = k_table(d)
        assert [row["string"] for row in table] == d.sorted_keys()
        ks = [row["k_estimate"] for row in table]
        assert ks == sorted(ks)


class TestCompare:
    def test_self_comparison(self, reference_sequence):
        report = compare_models(reference_sequence, reference_sequence)
        assert [row.n for row in report.rows] == [2, 3, 4]
        assert [row.elements for row in report.rows] == [2, 3, 6]
        for row in report.rows:
            assert row.spearman == pytest.approx(1.0)
            assert row.pearson == pytest.approx(1.0)

    def test_element_count_is_support_intersection(self, reference_sequence):
        other = make_sequence({4: {"0000": 0.5, "0011": 0.3, "0111": 0.2}}, model=ECA)
        report = compare_models(reference_sequence, other)
        assert len(report.rows) == 1
        assert report.rows[0].elements == 2

    def test_incomparable_row(self, reference_sequence):
        other = make_sequence({2: {"00": 1.0}}, model=ECA)
        row = compare_models(reference_sequence, other).rows[0]
        assert not row.comparable
        assert row.elements == 1
        assert "incomparable" in row.note

    def test_no_common_lengths(self, reference_sequence):
        with pytest.raises(ConfigError):
            compare_models(reference_sequence, make_sequence({5: {"00000": 1.0}}))

    def test_rows_independent_of_entry_order(self, reference_sequence):
        shuffled = make_sequence({
            n: dict(reversed(list(d.entries.items()))) for n, d in reference_sequence.per_n.items()
        })
        a = compare_models(reference_sequence, reference_sequence, seed=4)
        b = compare_models(shuffled, reference_sequence, seed=4)
        assert [r.spearman for r in a.rows] == [r.spearman for r in b.rows]
        assert [r.significance.p_value for r in a.rows] == [r.significance.p_value for r in b.rows]


class TestOrderPreserving:
    def test_identical(self):
        d = make_distribution(REFERENCE_N4, reduced=True)
        verdict = order_preserving(d, d, c=0.01)
        assert verdict.spearman == 1.0
        assert verdict.p_value == pytest.approx(1 / 720)
        assert verdict.preserved_fraction == 1.0
        assert verdict.verdict

    def test_reversed(self):
        d1 = make_distribution(REFERENCE_N4, reduced=True)
        d2 = make_distribution(reversed_entries(REFERENCE_N4), reduced=True)
        verdict = order_preserving(d1, d2)
        assert verdict.spearman == -1.0
        assert verdict.preserved_fraction == 0.0
        assert not verdict.verdict

    def test_min_frequency_filters_shared_support(self):
        d = make_distribution(REFERENCE_N4, reduced=True)
        with pytest.raises(IncomparableError):
            order_preserving(d, d, min_frequency=0.26)

    def test_concordant_fraction(self):
        d1 = make_distribution({"000": 0.5, "001": 0.3, "010": 0.2})
        d2 = make_distribution({"000": 0.3, "001": 0.5, "010": 0.2})
        assert concordant_fraction(d1, d2, ["000", "001", "010"]) == pytest.approx(2 / 3)


class TestNaturalness:
    def test_reference_against_itself(self, reference_sequence):
        verdict = naturalness_test(reference_sequence, reference_sequence)
        assert verdict.label == NaturalnessLabel.NATURAL
        # Con 2 y 3 clases el p mínimo (1/2, 1/6) no alcanza c
        assert [e.informative for e in verdict.evidence] == [False, False, True]
        assert verdict.degree_spearman == pytest.approx(1.0)
        assert verdict.flagged == []

    def test_reversed_candidate(self, reference_sequence):
        candidate = make_sequence({n: reversed_entries(d.entries) for n, d in reference_sequence.per_n.items()})
        verdict = naturalness_test(candidate, reference_sequence)
        assert verdict.label == NaturalnessLabel.NOT_NATURAL

    def test_quasi(self, reference_sequence):
        # Dos transposiciones adyacentes disjuntas: rho = 0.886, p = 12/720
        swapped = dict(REFERENCE_N4)
        swapped["0000"], swapped["0001"] = REFERENCE_N4["0001"], REFERENCE_N4["0000"]
        swapped["0010"], swapped["0011"] = REFERENCE_N4["0011"], REFERENCE_N4["0010"]
        candidate = make_sequence({2: {"00": 0.7, "01": 0.3}, 4: swapped})

        verdict = naturalness_test(candidate, reference_sequence, c=0.01)
        assert verdict.label == NaturalnessLabel.QUASI
        assert [e.n for e in verdict.flagged] == [4]
        assert verdict.flagged[0].p_value == pytest.approx(12 / 720)

    def test_no_informative_rows(self, reference_sequence):
        small = make_sequence({2: {"00": 0.7, "01": 0.3}})
        verdict = naturalness_test(small, reference_sequence)
        assert verdict.label == NaturalnessLabel.NOT_NATURAL
        assert verdict.degree_spearman is None


class TestConvergence:
    def test_projection_of_consistent_lengths(self):
        seq = DistributionSequence(per_n={
            2: make_distribution({"00": 0.5, "01": 0.25, "11": 0.25}),
            3: make_distribution({"000": 0.5, "011": 0.5}),
        })
        (step,) = convergence_check(seq)
        assert step.n == 3
        assert step.elements == 3
        assert step.order_distance == pytest.approx(0.0, abs=1e-12)
        assert step.value_distance == pytest.approx(0.0, abs=1e-12)

    def test_mode_selects_distance(self):
        seq = DistributionSequence(per_n={
            2: make_distribution({"00": 0.6, "01": 0.4}, reduced=True),
            3: make_distribution({"000": 0.5, "001": 0.5}, reduced=True),
        })
        (step,) = convergence_check(seq, mode="values")
        assert step.order_distance is None
        assert step.value_distance is not None

    def test_gap_when_supports_disjoint(self):
        seq = DistributionSequence(per_n={
            2: make_distribution({"00": 1.0}),
            3: make_distribution({"010": 1.0}),
        })
        (step,) = convergence_check(seq)
        assert step.order_distance is None
        assert step.value_distance is None

    def test_single_length(self, reference_sequence):
        with pytest.raises(ConfigError):
            convergence_check(DistributionSequence(per_n={2: reference_sequence.per_n[2]}))

    def test_project_reduced_stays_normalized(self):
        d = make_distribution(REFERENCE_N4, reduced=True)
        projected = project(d, 2)
        assert projected.reduced
        assert set(projected.entries) <= {"00", "01"}
        assert sum(projected.entries.values()) == pytest.approx(1.0)


class TestRankFrequency:
    def test_power_law_exponent(self):
        keys = [format(i, "03b") for i in range(8)]
        raw = {k: 1 / (r + 1) for r, k in enumerate(keys)}
        total = sum(raw.values())
        d = make_distribution({k: v / total for k, v in raw.items()})
        rows, exponent = rank_frequency(d)
        assert [r["rank"] for r in rows] == list(range(1, 9))
        assert exponent == pytest.approx(-1.0)

    def test_single_entry_has_no_fit(self):
        rows, exponent = rank_frequency(make_distribution({"00": 1.0}))
        assert len(rows) == 1
        assert exponent is None


class TestNaturalDistribution:
    def test_mean_over_union(self):
        a = make_sequence({2: {"00": 0.6, "01": 0.4}})
        b = make_sequence({2: {"00": 0.2, "01": 0.8}, 3: {"000": 1.0}}, model=ECA)
        natural = natural_distribution([a, b])
        assert natural.lengths == [2]
        assert natural.per_n[2].entries == pytest.approx({"00": 0.4, "01": 0.6})
        assert natural.per_n[2].meta.sources == ["tm(2,2)", "eca"]

    def test_missing_key_counts_as_zero(self):
        a = make_sequence({2: {"00": 1.0}})
        b = make_sequence({2: {"01": 1.0}})
        assert natural_distribution([a, b]).per_n[2].entries == {"00": 0.5, "01": 0.5}


class TestBuildSequence:
    def test_rejects_length_one(self):
        with pytest.raises(ConfigError):
            build_sequence(RunConfig(n_min=1, n_max=3, registry_url=""))

    def test_experiment_spec_from_config(self):
        config = RunConfig(model=ModelKind.ECA, schedule=SampleSchedule.PROGRESSIVE, seed=9)
        spec = experiment_spec(config, 3)
        assert spec.sample_size == 63
        assert spec.steps == 30
        assert spec.seed == 9

    def test_small_tm_sequence(self):
        raw = {}
        seq = build_sequence(RunConfig(n_min=2, n_max=3, registry_url=""), raw=raw)
        assert seq.lengths == [2, 3]
        assert sorted(raw) == [2, 3]
        for n in (2, 3):
            assert seq.per_n[n].reduced
            assert len(seq.per_n[n].entries) <= class_count(n)
            assert raw[n].meta.config["seed"] == 0
