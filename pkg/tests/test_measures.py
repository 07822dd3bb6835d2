"""
Tests for tail-invariant vectors, measure extensions and Markov measures.
"""

from fractions import Fraction
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hsbratteli.analysis.measures import (
    ConstantVec,
    FiniteVec,
    TailRelation,
    dominating_offsets,
    ecs_column_sum,
    ecs_subdiagram_extension,
    extension_report,
    fourier_check,
    is_dominating,
    markov_cylinder,
    markov_tail_invariance_check,
    odometer_cylinder,
    pull_back,
    pull_back_family,
    tail_parallel,
    uniform_family,
    verify_tail_invariant,
)
from hsbratteli.analysis import selfcheck
from hsbratteli.analysis.selfcheck import run_checks
from hsbratteli.analysis.series import Verdict
from hsbratteli.core.errors import InvalidArgument, MissingEdge, MixedKinds, NotECS
from hsbratteli.models import (
    Band,
    Constant,
    Edge,
    ExplicitLevels,
    FinitePath,
    Geometric,
    MarkovKernel,
    OdometerSpec,
    OffsetSchedule,
    RuleDiagram,
    TriadicLevels,
    WindowFamily,
    class_c,
)
from tests.strategies import bands, explicit_diagrams

VERTICAL = OdometerSpec(OffsetSchedule.constant(0))
PAIR = WindowFamily(0, OffsetSchedule.constant(0), Constant(2))


class TestLevelVectors:
    """Test pull-backs and the tail-invariance check."""

    def test_pull_back_constant(self):
        """Test a constant vector scales by the row sum."""
        assert pull_back(Band.of(-1, [1, 2, 1]), ConstantVec(Fraction(1, 4))) == ConstantVec(1)

    def test_pull_back_finite(self):
        """Test a point mass pulls back to the band itself."""
        band = Band.of(-1, [1, 2])
        assert pull_back(band, FiniteVec.of(0, [1])) == FiniteVec(band)

    def test_negative_constant_rejected(self):
        """Test measure values must be non-negative."""
        with pytest.raises(InvalidArgument):
            ConstantVec(Fraction(-1, 2))

    def test_uniform_family_passes(self, geometric_diagram):
        """Test 1 / H(n) is tail invariant over fifteen levels."""
        family = uniform_family(geometric_diagram, 15)
        assert family[3] == ConstantVec(Fraction(1, 240))
        check = verify_tail_invariant(geometric_diagram, family, 15)
        assert check.passed
        assert check.checked == 15

    def test_tampered_family_fails(self, geometric_diagram):
        """Test a changed vector is caught at its level."""
        family = pull_back_family(geometric_diagram, FiniteVec.of(0, [1]), 4)
        assert isinstance(family[0], FiniteVec)
        family[0] = FiniteVec(family[0].profile.scaled(2))
        check = verify_tail_invariant(geometric_diagram, family, 4)
        assert not check.passed
        assert check.failing_level == 0
        assert check.actual == family[0]

    def test_mixed_kinds(self, unit_diagram):
        """Test adjacent constant and finite vectors are rejected."""
        with pytest.raises(MixedKinds):
            verify_tail_invariant(unit_diagram, [ConstantVec(1), FiniteVec.of(0, [1])], 1)

    def test_too_few_vectors(self, unit_diagram):
        """Test the family must cover the horizon."""
        with pytest.raises(InvalidArgument):
            verify_tail_invariant(unit_diagram, [ConstantVec(1)], 1)

    def test_fourier_accepts_pull_backs(self, geometric_diagram):
        """Test the Laurent check accepts a pulled-back family."""
        family = pull_back_family(geometric_diagram, FiniteVec.of(0, [1]), 3)
        for n in range(3):
            assert fourier_check(geometric_diagram, family[n + 1], family[n], n)

    def test_fourier_rejects_perturbation(self, geometric_diagram):
        """Test a single changed coefficient is rejected."""
        family = pull_back_family(geometric_diagram, FiniteVec.of(0, [1]), 1)
        perturbed = FiniteVec(Band.of(family[0].profile.lo, [2, 2, 1]))
        assert family[0] == FiniteVec.of(-1, [1, 2, 1])
        assert not fourier_check(geometric_diagram, family[1], perturbed, 0)

    @pytest.mark.property_based
    @settings(max_examples=100, deadline=None)
    @given(bands(), bands(), st.integers(min_value=-3, max_value=3))
    def test_fourier_agrees_with_convolution(self, band, top, bump):
        """Test the Laurent check agrees with convolution and catches perturbations."""
        diagram = ExplicitLevels((band,))
        p_next = FiniteVec(top)
        p_prev = pull_back(band, p_next)
        assert isinstance(p_prev, FiniteVec)
        assert fourier_check(diagram, p_next, p_prev, 0)
        entries = dict(p_prev.profile.items())
        entries[bump] = entries.get(bump, Fraction(0)) + 1
        assert not fourier_check(diagram, p_next, FiniteVec(Band.from_mapping(entries)), 0)


class TestOdometerExtension:
    """Test extensions of odometer measures."""

    def test_geometric_vertical_trace(self, geometric_diagram):
        """Test the alpha trace and verdict for a_n = 2**(n + 1)."""
        report = extension_report(geometric_diagram, VERTICAL, 4)
        assert report.alphas == [2, 3, Fraction(15, 4), Fraction(135, 32)]
        assert report.sigmas == [2, 2, 2, 2]
        assert report.coefficients == [2, 4, 8, 16]
        assert report.partial_value == report.direct_value == Fraction(135, 32)
        assert report.verdict is Verdict.FINITE
        assert report.dominating

    def test_constant_diagonal_infinite(self):
        """Test a constant diagonal gives an infinite extension."""
        report = extension_report(class_c(Constant(5)), VERTICAL, 6)
        assert report.verdict is Verdict.INFINITE

    def test_off_diagonal_odometer_infinite(self, geometric_diagram):
        """Test the offset-one odometer gives an infinite extension."""
        odo = OdometerSpec(OffsetSchedule.constant(1))
        report = extension_report(geometric_diagram, odo, 5)
        assert report.verdict is Verdict.INFINITE
        assert not report.dominating
        assert report.vertices == [0, -1, -2, -3, -4, -5]

    def test_alternating_odometer_infinite(self, geometric_diagram):
        """Test an odometer leaving the diagonal every other level."""
        odo = OdometerSpec(OffsetSchedule((), (0, 1)))
        assert extension_report(geometric_diagram, odo, 6).verdict is Verdict.INFINITE

    def test_missing_edge(self, geometric_diagram):
        """Test an odometer outside the support raises MissingEdge."""
        with pytest.raises(MissingEdge):
            extension_report(geometric_diagram, OdometerSpec(OffsetSchedule.constant(2)), 3)

    def test_explicit_without_tail_undecided(self):
        """Test explicit data alone leaves the verdict open."""
        diagram = ExplicitLevels((Band.of(-1, [1, 2, 1]),) * 3)
        assert extension_report(diagram, VERTICAL, 3).verdict is Verdict.UNDECIDED

    def test_explicit_with_tail(self):
        """Test the rule tail decides explicit diagrams."""
        diagram = ExplicitLevels((Band.of(-1, [1, 1, 1]),), class_c(Geometric(2, 2)))
        assert extension_report(diagram, VERTICAL, 4).verdict is Verdict.FINITE

    def test_triadic_vertical(self):
        """Test the triadic vertical odometer."""
        report = extension_report(TriadicLevels(), VERTICAL, 4)
        assert report.alphas == [3, 9, 27, 81]
        assert report.verdict is Verdict.INFINITE

    def test_cylinder(self, geometric_diagram):
        """Test odometer cylinder masses."""
        assert odometer_cylinder(geometric_diagram, VERTICAL, 3) == Fraction(1, 64)

    @pytest.mark.property_based
    @settings(max_examples=50, deadline=None)
    @given(st.data())
    def test_telescoping_identity(self, data):
        """Test the direct partial sum equals the last alpha."""
        horizon = data.draw(st.integers(min_value=1, max_value=20))
        diagram = data.draw(explicit_diagrams(horizon))
        offsets = tuple(
            data.draw(st.sampled_from([k for k, _ in band.items()])) for band in diagram.levels
        )
        report = extension_report(diagram, OdometerSpec(OffsetSchedule(offsets, (0,))), horizon)
        assert report.direct_value == report.alphas[-1]

    @pytest.mark.property_based
    @settings(max_examples=50, deadline=None)
    @given(st.data())
    def test_start_vertex_shift(self, data):
        """Test moving the odometer sideways only moves its vertices."""
        horizon = data.draw(st.integers(min_value=1, max_value=10))
        diagram = data.draw(explicit_diagrams(horizon))
        offsets = tuple(
            data.draw(st.sampled_from([k for k, _ in band.items()])) for band in diagram.levels
        )
        odo = OdometerSpec(OffsetSchedule(offsets, (0,)))
        k = data.draw(st.integers(min_value=-50, max_value=50))
        base = extension_report(diagram, odo, horizon)
        moved = extension_report(diagram, odo.shifted(k), horizon)
        assert moved.vertices == [v + k for v in base.vertices]
        assert (moved.alphas, moved.verdict, moved.dominating) == (
            base.alphas,
            base.verdict,
            base.dominating,
        )

    @pytest.mark.property_based
    @settings(max_examples=30, deadline=None)
    @given(
        st.one_of(
            st.integers(min_value=1, max_value=5).map(Constant),
            st.integers(min_value=1, max_value=3).map(lambda base: Geometric(base, 2)),
        ),
        st.lists(st.sampled_from([-1, 0, 1]), min_size=1, max_size=3),
        st.integers(min_value=-50, max_value=50),
    )
    def test_class_c_verdict_shift(self, rule, cycle, k):
        """Test class-C extension verdicts do not depend on the start vertex."""
        diagram = class_c(rule)
        odo = OdometerSpec(OffsetSchedule((), tuple(cycle)))
        base = extension_report(diagram, odo, 6)
        moved = extension_report(diagram, odo.shifted(k), 6)
        assert moved.verdict == base.verdict
        assert moved.alphas == base.alphas


class TestTailParallelAndDominating:
    """Test tail-parallel odometers and dominating offsets."""

    def test_equal(self):
        """Test an odometer is equal to itself."""
        assert tail_parallel(VERTICAL, VERTICAL).relation is TailRelation.EQUAL

    def test_shifted_base(self):
        """Test a shifted base vertex is parallel with that shift."""
        result = tail_parallel(VERTICAL, VERTICAL.shifted(3))
        assert result.relation is TailRelation.PARALLEL
        assert result.shift == 3

    def test_eventually_parallel(self):
        """Test odometers that agree after a prefix."""
        first = OdometerSpec(OffsetSchedule((1,), (0,)))
        result = tail_parallel(first, VERTICAL)
        assert result.relation is TailRelation.PARALLEL
        assert result.shift == 1

    def test_not_parallel(self):
        """Test different eventual offsets give two witness levels."""
        result = tail_parallel(VERTICAL, OdometerSpec(OffsetSchedule.constant(1)))
        assert result.relation is TailRelation.NOT_PARALLEL
        assert result.witnesses == (0, 1)

    def test_dominating_offsets(self, unit_diagram):
        """Test dominating offsets of flat and peaked bands."""
        assert dominating_offsets(unit_diagram, 0) == frozenset({-1, 0, 1})
        assert dominating_offsets(class_c(Constant(2)), 0) == frozenset({0})
        assert is_dominating(class_c(Constant(2)), VERTICAL, 5)


class TestWindowExtension:
    """Test extensions from equal-column-sum windows."""

    def test_pair_window_values(self, geometric_diagram):
        """Test the window {0, 1} over three levels."""
        report = ecs_subdiagram_extension(geometric_diagram, PAIR, 3)
        assert report.column_sums == [3, 5, 9]
        assert report.alphas == [Fraction(8, 3), Fraction(16, 5), Fraction(32, 9)]
        assert report.partial_value == report.direct_value == Fraction(23, 9)
        assert report.normalized_value == Fraction(16, 9)
        assert report.component_products == [
            Fraction(2, 3),
            Fraction(8, 15),
            Fraction(64, 135),
        ]
        assert report.verdict is Verdict.FINITE

    def test_components_match_product(self, geometric_diagram):
        """Test component products over twelve levels."""
        report = ecs_subdiagram_extension(geometric_diagram, PAIR, 12)
        a = [2 ** (i + 1) for i in range(12)]
        assert report.component_products[-1] == prod(Fraction(x, x + 1) for x in a)

    def test_constant_diagonal_infinite(self):
        """Test the pair window over a constant diagonal."""
        report = ecs_subdiagram_extension(class_c(Constant(2)), PAIR, 6)
        assert report.verdict is Verdict.INFINITE

    def test_not_ecs(self):
        """Test unequal column sums name the offending columns."""
        diagram = RuleDiagram(-1, (Constant(1), Constant(2), Constant(3)))
        with pytest.raises(NotECS) as exc:
            ecs_column_sum(diagram, PAIR, 0)
        assert exc.value.witness == (0, 0, 1)

    def test_odometer_window_matches_odometer(self, geometric_diagram):
        """Test a width-one window reproduces the odometer alphas."""
        report = ecs_subdiagram_extension(
            geometric_diagram, WindowFamily.from_odometer(VERTICAL), 4
        )
        assert report.alphas == extension_report(geometric_diagram, VERTICAL, 4).alphas


class TestMarkov:
    """Test horizontally invariant Markov measures."""

    def test_uniform_passes(self, unit_diagram):
        """Test the uniform kernel is tail invariant."""
        check = markov_tail_invariance_check(unit_diagram, MarkovKernel.uniform(), 3)
        assert check.passed
        assert check.paths_checked == [3, 9, 27]

    def test_skewed_fails_with_witness(self, unit_diagram):
        """Test a non-uniform kernel fails at depth one with two paths."""
        kernel = MarkovKernel(1, ((Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)),))
        check = markov_tail_invariance_check(unit_diagram, kernel, 3)
        assert not check.passed
        assert check.depth == 1
        first, second = check.witness
        assert first.terminal == second.terminal == 0
        assert check.values[0] != check.values[1]
        assert set(check.values) <= {Fraction(1, 2), Fraction(1, 4)}

    def test_cylinder(self, unit_diagram):
        """Test a cylinder multiplies the initial mass by edge probabilities."""
        path = FinitePath(1, (Edge(0, 1, 0), Edge(1, 0, 0)))
        assert markov_cylinder(unit_diagram, MarkovKernel.uniform(), path) == Fraction(1, 9)

    @pytest.mark.property_based
    @settings(max_examples=20, deadline=None)
    @given(explicit_diagrams(3, max_row_sum=5))
    def test_uniform_passes_random(self, diagram):
        """Test the uniform kernel passes on random small diagrams."""
        assert markov_tail_invariance_check(diagram, MarkovKernel.uniform(), 3).passed


class TestSelfCheck:
    """Test the seeded randomised checks."""

    def test_all_checks_pass(self):
        """Test every check passes on a few seeded trials."""
        results = run_checks(3, seed=7)
        assert all(result.passed for result in results), [r.counterexample for r in results]

    def test_selected_check(self):
        """Test running a single named check."""
        (result,) = run_checks(5, seed=1, names=["oracle"])
        assert result.name == "oracle"
        assert result.passed

    def test_algebra_catches_broken_cocycle(self, monkeypatch):
        """Test the algebra check fails when spans stop composing."""
        real = selfcheck.path_count_band

        def drifting(spec, n, m):
            return real(spec, n, m).shifted(1 if n else 0)

        monkeypatch.setattr(selfcheck, "path_count_band", drifting)
        (result,) = run_checks(5, seed=2, names=["algebra"])
        assert not result.passed
        assert result.counterexample is not None
        assert result.counterexample.startswith("cocycle law fails")
