"""Test the relation checks and the concurrent check suite."""

import random
from fractions import Fraction

import pytest

from twisted_wick.checks import (
    SYMBOLIC_NOTE,
    CheckReport,
    CheckType,
    Verdict,
    check_bk_condition2,
    check_ideal_preserved,
    check_pi_star_invariance,
    check_relation_dd,
    check_relation_dplus,
    check_relation_jsw,
    check_t43_condition2,
    check_wz,
    check_ybe,
    implication_reports,
    overall_verdict,
    run_all,
    run_all_async,
)
from twisted_wick.config import WickConfig, use_config
from twisted_wick.scalar import Scalar
from twisted_wick.twist import builtin_preset

SUITE_ORDER = [check_type.value for check_type in CheckType]

RATIOS = [Fraction(n, m) for n in (1, 2, 3) for m in (1, 2, 3)] + [Fraction(-1)]


def _by_name(reports: list[CheckReport]) -> dict[str, CheckReport]:
    return {r.name: r for r in reports}


class TestRelations:
    """교환 관계."""

    def test_jsw_holds_for_random_systems(self, random_twist):
        """d = 1, 2, 3 의 무작위 시스템 21 개, degree 5 까지."""
        rng = random.Random(37)
        for index in range(21):
            d = 1 + index % 3
            ts = random_twist(rng, d, density=0.15 if d == 3 else 0.4)
            report = check_relation_jsw(ts, 5)
            assert report.verdict is Verdict.PASS, report.witness

    def test_jsw_qdeform_symbolic(self):
        report = check_relation_jsw(builtin_preset("qdeform", 2), 2)
        assert report.passed
        assert SYMBOLIC_NOTE in report.notes

    @pytest.mark.parametrize("name", ["boson", "fermion", "mixed"])
    def test_quotient_relations_presets(self, name):
        ts = builtin_preset(name, 2)
        assert check_relation_dd(ts, 3).passed
        assert check_relation_dplus(ts, 3).passed

    def test_relations_need_degree_two(self):
        ts = builtin_preset("boson", 2)
        assert check_relation_dd(ts, 1).verdict is Verdict.SKIPPED
        assert check_relation_dplus(ts, 1).verdict is Verdict.SKIPPED

    def test_unmet_prerequisite_skips(self):
        ts = builtin_preset("boson", 2)
        failed = CheckReport(CheckType.IDEAL_PRESERVED.value, Verdict.FAIL)
        report = check_relation_dd(ts, 2, {failed.name: failed})
        assert report.verdict is Verdict.SKIPPED
        assert report.details["unmet"] == ["check_ideal_preserved: fail"]


class TestImplicationReports:
    """unsound 판정."""

    def test_violation_is_unsound(self):
        reports = {
            CheckType.WZ.value: CheckReport(CheckType.WZ.value, Verdict.PASS),
            CheckType.BK_CONDITION2.value: CheckReport(
                CheckType.BK_CONDITION2.value, Verdict.PASS
            ),
            CheckType.IDEAL_PRESERVED.value: CheckReport(
                CheckType.IDEAL_PRESERVED.value,
                Verdict.FAIL,
                witness={"degree": 2},
            ),
        }
        (unsound,) = implication_reports(reports)
        assert unsound.verdict is Verdict.UNSOUND
        assert unsound.name == "implication:check_wz+check_bk_condition2"
        assert unsound.witness["conclusion"] == "check_ideal_preserved"
        assert unsound.witness["conclusion_witness"] == {"degree": 2}
        assert unsound.failed

    def test_skipped_hypothesis_is_not_unsound(self):
        reports = {
            CheckType.YBE.value: CheckReport(CheckType.YBE.value, Verdict.PASS),
            CheckType.DOUBLE_CONTRACTION.value: CheckReport(
                CheckType.DOUBLE_CONTRACTION.value, Verdict.SKIPPED_RESOURCE
            ),
            CheckType.PI_STAR.value: CheckReport(
                CheckType.PI_STAR.value, Verdict.FAIL
            ),
        }
        assert implication_reports(reports) == []



def _wz_flips(rng, scaled_flip_twist, count):
    """Scaled flips with c_kj = b_jk, c_jk b_jk = 1 and (1 + c_ii)(1 − b_ii) = 0."""
    for _ in range(count):
        value = Scalar(rng.choice(RATIOS))
        b = {(1, 2): value, (2, 1): value.inverse()}
        c = {(1, 2): b[(2, 1)], (2, 1): b[(1, 2)]}
        for i in (1, 2):
            if rng.random() < 0.5:
                b[(i, i)], c[(i, i)] = Scalar(rng.choice(RATIOS)), Scalar(-1)
            else:
                c[(i, i)] = Scalar(rng.choice(RATIOS))
        yield scaled_flip_twist(2, b, {}, c)


def _braided_flips(rng, scaled_flip_twist, count):
    """Scaled flips with b̃_ij = c_ji, b̃_ij c_ij = 1 and (c_ii + 1)(1 − b̃_ii) = 0."""
    for _ in range(count):
        value = Scalar(rng.choice(RATIOS))
        c = {(1, 2): value, (2, 1): value.inverse()}
        btilde = {(1, 2): c[(2, 1)], (2, 1): c[(1, 2)]}
        for i in (1, 2):
            if rng.random() < 0.5:
                btilde[(i, i)], c[(i, i)] = Scalar(-1), Scalar(-1)
            else:
                c[(i, i)] = Scalar(rng.choice(RATIOS))
        yield scaled_flip_twist(2, {}, btilde, c)


class TestImplicationHarness:
    """무작위 d=2 시스템 50 개에서 unsound 판정이 없어야 한다."""

    def test_wz_and_bk2_imply_ideal_preserved(self, random_twist, scaled_flip_twist):
        rng = random.Random(79)
        systems = [random_twist(rng, 2) for _ in range(25)]
        systems += list(_wz_flips(rng, scaled_flip_twist, 25))
        hits = 0
        for ts in systems:
            reports = _by_name(
                [check_wz(ts), check_bk_condition2(ts), check_ideal_preserved(ts, 4)]
            )
            if reports["check_wz"].passed and reports["check_bk_condition2"].passed:
                hits += 1
                assert reports["check_ideal_preserved"].passed
            assert implication_reports(reports) == []
        assert len(systems) == 50
        assert hits >= 10

    def test_ybe_and_double_contraction_imply_pi_star(
        self, random_twist, scaled_flip_twist
    ):
        rng = random.Random(83)
        systems = [random_twist(rng, 2) for _ in range(25)]
        systems += list(_braided_flips(rng, scaled_flip_twist, 25))
        hits = 0
        for ts in systems:
            reports = _by_name(
                [
                    check_ybe(ts),
                    check_t43_condition2(ts, 4),
                    check_pi_star_invariance(ts, 4),
                ]
            )
            if reports["check_ybe"].passed and reports["check_t43_condition2"].passed:
                hits += 1
                assert reports["check_pi_star_invariance"].passed
            assert implication_reports(reports) == []
        assert len(systems) == 50
        assert hits >= 1

class TestOverallVerdict:
    """fail > skipped-resource > pass."""

    @pytest.mark.parametrize(
        "verdicts,expected",
        [
            ([Verdict.PASS, Verdict.SKIPPED], Verdict.PASS),
            ([Verdict.PASS, Verdict.SKIPPED_RESOURCE], Verdict.SKIPPED_RESOURCE),
            ([Verdict.SKIPPED_RESOURCE, Verdict.FAIL], Verdict.FAIL),
            ([Verdict.PASS, Verdict.UNSOUND], Verdict.FAIL),
            ([], Verdict.PASS),
        ],
    )
    def test_precedence(self, verdicts, expected):
        reports = [CheckReport(f"c{i}", v) for i, v in enumerate(verdicts)]
        assert overall_verdict(reports) is expected


class TestRunAll:
    """전체 suite."""

    @pytest.mark.parametrize("d", [1, 2, 3])
    @pytest.mark.parametrize("name", ["boson", "fermion", "mixed"])
    def test_presets_pass(self, name, d):
        reports = run_all(builtin_preset(name, d), 5)
        assert [r.name for r in reports] == SUITE_ORDER
        failing = {r.name: r.verdict for r in reports if not r.passed}
        assert failing == {}
        assert overall_verdict(reports) is Verdict.PASS

    @pytest.mark.parametrize("d", [2, 3])
    @pytest.mark.parametrize("value", [1, -1])
    def test_qdeform_specialisations_pass(self, value, d):
        ts = builtin_preset("qdeform", d).specialize(value)
        reports = run_all(ts, 5, {"q": str(value)})
        assert overall_verdict(reports) is Verdict.PASS
        assert all(r.parameters["q"] == str(value) for r in reports)
        assert all(SYMBOLIC_NOTE not in r.notes for r in reports)

    def test_qdeform_symbolic(self):
        reports = _by_name(run_all(builtin_preset("qdeform", 2), 3))
        for name in ("check_wz", "check_bk_condition2", "check_ybe"):
            assert reports[name].passed
            assert SYMBOLIC_NOTE in reports[name].notes
        assert reports["check_relation_dd"].verdict is not Verdict.FAIL
        assert reports["check_relation_dplus"].verdict is not Verdict.FAIL

    def test_qdeform_alt_fails(self):
        reports = run_all(builtin_preset("qdeform-alt", 2), 2)
        by_name = _by_name(reports)
        assert by_name["check_wz"].verdict is Verdict.FAIL
        assert by_name["check_wz"].witness["indices"] == [1, 2]
        assert overall_verdict(reports) is Verdict.FAIL

    def test_resource_cap_skips(self):
        with use_config(WickConfig(dimension_cap=4)):
            reports = _by_name(run_all(builtin_preset("boson", 2), 2))
        assert reports["check_wz"].passed
        assert reports["check_ideal_preserved"].passed
        for name in (
            "check_bk_condition2",
            "check_ybe",
            "check_t43_condition2",
            "check_pi_star_invariance",
            "check_relation_jsw",
        ):
            assert reports[name].verdict is Verdict.SKIPPED_RESOURCE, name
        assert reports["check_relation_dd"].verdict is Verdict.SKIPPED
        assert reports["check_relation_dplus"].verdict is Verdict.SKIPPED
        assert overall_verdict(list(reports.values())) is Verdict.SKIPPED_RESOURCE

    def test_reports_are_deterministic(self):
        ts = builtin_preset("fermion", 2)
        first = [r.to_dict(include_timing=False) for r in run_all(ts, 3)]
        second = [r.to_dict(include_timing=False) for r in run_all(ts, 3)]
        assert first == second

    @pytest.mark.asyncio
    async def test_run_all_async(self):
        reports = await run_all_async(builtin_preset("boson", 2), 3, {"n_max": 3})
        assert [r.name for r in reports] == SUITE_ORDER
        assert all(r.passed for r in reports)
        assert all(r.parameters["d"] == 2 for r in reports)
        assert all("seconds" in r.timing for r in reports)
