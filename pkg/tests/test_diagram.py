"""
Tests for sequence rules, diagrams, telescoping and path counting.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hsbratteli.core.errors import (
    FiniteHorizon,
    Intractable,
    InvalidArgument,
    InvalidBand,
    InvalidKernel,
    InvalidOrder,
    InvalidPath,
    MissingEdge,
    RuleOverflow,
)
from hsbratteli.models import (
    Affine,
    Band,
    Constant,
    Edge,
    ExplicitLevels,
    ExplicitThenPeriodic,
    FinitePath,
    Geometric,
    MarkovKernel,
    OdometerSpec,
    OffsetSchedule,
    OrderSpec,
    RuleDiagram,
    Slot,
    TriadicLevels,
    WindowFamily,
    class_c,
)
from hsbratteli.models.band import convolve, convolve_all, row_sum, stochasticize
from hsbratteli.models.diagram import (
    bounded_size_params,
    class_c_rule,
    height,
    heights,
    path_count_band,
    path_count_bruteforce,
    path_count_bruteforce_profile,
    stochastic_path_band,
    telescope,
    telescope_every,
)
from hsbratteli.models.order import reverse_order
from hsbratteli.models.path import paths_into, slots
from tests.strategies import class_c_rules, explicit_diagrams


class TestSequenceRules:
    """Test sequence rule evaluation and validation."""

    def test_geometric(self):
        """Test geometric values and text form."""
        rule = Geometric(2, 2)
        assert rule.values(0, 4) == [2, 4, 8, 16]
        assert rule.to_text() == "geometric(2,2)"

    def test_affine(self):
        """Test affine values."""
        assert Affine(1, 1).values(0, 3) == [1, 2, 3]

    def test_explicit_then_periodic(self):
        """Test prefix followed by a repeating cycle."""
        rule = ExplicitThenPeriodic((4, 5), (1, 2))
        assert rule.values(0, 6) == [4, 5, 1, 2, 1, 2]
        assert rule.settles_at == 2
        assert rule.period == 2
        assert rule.to_text() == "explicit(4,5 | 1,2)"

    def test_negative_rejected(self):
        """Test negative parameters raise RuleOverflow."""
        with pytest.raises(RuleOverflow, match="coefficient must be non-negative"):
            Constant(-1)
        with pytest.raises(RuleOverflow):
            ExplicitThenPeriodic((), (1, -2))

    def test_integer_value_rejects_fractions(self):
        """Test a fractional value cannot be used as an edge count."""
        with pytest.raises(RuleOverflow):
            Geometric(1, Fraction(1, 2)).integer_value(1)

    def test_reciprocal_series(self):
        """Test the regime of sum 1 / a_n."""
        assert Geometric(2, 2).reciprocal_series_converges()
        assert not Constant(3).reciprocal_series_converges()
        assert not Affine(1, 1).reciprocal_series_converges()

    def test_boundedness(self):
        """Test bounded and unbounded rules."""
        assert Constant(2).is_bounded()
        assert not Affine(1, 0).is_bounded()
        assert not Geometric(1, 2).is_bounded()

    def test_offset_schedule(self):
        """Test an eventually constant offset schedule."""
        schedule = OffsetSchedule((1, -1), (0,))
        assert schedule.values(4) == [1, -1, 0, 0]
        assert schedule.to_text() == "1, -1 | 0"
        assert OffsetSchedule.constant(0).to_text() == "0"


class TestDiagrams:
    """Test the diagram variants."""

    def test_class_c_band(self, geometric_diagram):
        """Test the class-C band at level 2 for a_n = 2**(n + 1)."""
        assert geometric_diagram.band_at(2) == Band.of(-1, [1, 8, 1])

    def test_class_c_rule_recovered(self, geometric_diagram):
        """Test the diagonal rule is read back from a class-C diagram."""
        assert class_c_rule(geometric_diagram) == Geometric(2, 2)
        assert class_c_rule(TriadicLevels()) is None

    def test_rule_diagram_needs_two_offsets(self):
        """Test a one-offset support is rejected."""
        with pytest.raises(InvalidBand):
            RuleDiagram(0, (Constant(1),))

    def test_zero_endpoint(self):
        """Test a rule evaluating to zero at an end of the support."""
        diagram = RuleDiagram(-1, (ExplicitThenPeriodic((1,), (0,)), Constant(1), Constant(1)))
        assert diagram.band_at(0) == Band.of(-1, [1, 1, 1])
        with pytest.raises(RuleOverflow):
            diagram.band_at(1)

    def test_level_independence(self, unit_diagram, geometric_diagram):
        """Test only all-constant rule diagrams are level independent."""
        assert unit_diagram.is_level_independent()
        assert not geometric_diagram.is_level_independent()
        assert not TriadicLevels().is_level_independent()

    def test_explicit_levels_horizon(self):
        """Test levels beyond explicit data raise FiniteHorizon."""
        diagram = ExplicitLevels((Band.of(0, [1, 1]),))
        assert diagram.explicit_levels == 1
        with pytest.raises(FiniteHorizon):
            diagram.band_at(1)

    def test_explicit_levels_tail_absolute(self, unit_diagram):
        """Test the rule tail is indexed by absolute level."""
        tail = class_c(Affine(1, 1))
        diagram = ExplicitLevels((Band.of(0, [1, 1]),), tail)
        assert diagram.band_at(0) == Band.of(0, [1, 1])
        assert diagram.band_at(3) == Band.of(-1, [1, 4, 1])
        assert diagram.explicit_levels is None

    def test_explicit_levels_integral(self):
        """Test explicit levels need integer coefficients."""
        with pytest.raises(InvalidBand):
            ExplicitLevels((Band.of(0, [Fraction(1, 2), 1]),))

    def test_triadic(self):
        """Test triadic bands spread out by powers of three."""
        band = TriadicLevels().band_at(1)
        assert [k for k, _ in band.items()] == [-6, -3, 0]
        assert TriadicLevels().row_sum_at(5) == 3

    def test_negative_level(self, unit_diagram):
        """Test negative levels are rejected."""
        with pytest.raises(InvalidArgument):
            unit_diagram.band_at(-1)


class TestHeightsAndTelescoping:
    """Test heights, telescoping and bounded-size parameters."""

    def test_heights(self, geometric_diagram):
        """Test heights are products of row sums a_n + 2."""
        assert heights(geometric_diagram, 4) == [1, 4, 24, 240]
        assert height(geometric_diagram, 3) == 240

    def test_telescope_two_levels(self, geometric_diagram):
        """Test a two-level cut composes the bands."""
        collapsed = telescope(geometric_diagram, [0, 2])
        expected = convolve(geometric_diagram.band_at(1), geometric_diagram.band_at(0))
        assert collapsed.levels == (expected,)

    def test_telescope_bad_cuts(self, geometric_diagram):
        """Test cuts must start at zero and increase."""
        with pytest.raises(InvalidArgument):
            telescope(geometric_diagram, [1, 3])
        with pytest.raises(InvalidArgument):
            telescope(geometric_diagram, [0, 2, 2])

    def test_telescope_every_heights(self, geometric_diagram):
        """Test telescoped heights sample the original heights."""
        collapsed = telescope_every(geometric_diagram, 2, 3)
        assert len(collapsed.levels) == 3
        for k in range(4):
            assert height(collapsed, k) == height(geometric_diagram, 2 * k)

    @pytest.mark.property_based
    @settings(max_examples=50, deadline=None)
    @given(st.data())
    def test_telescope_preserves_path_counts(self, data):
        """Test path counts between surviving levels are unchanged by telescoping."""
        depth = data.draw(st.integers(min_value=1, max_value=5))
        diagram = data.draw(explicit_diagrams(depth))
        inner = data.draw(
            st.lists(st.integers(min_value=1, max_value=depth), min_size=1, unique=True)
        )
        cuts = [0, *sorted(inner)]
        collapsed = telescope(diagram, cuts)
        for a in range(len(cuts)):
            assert height(collapsed, a) == height(diagram, cuts[a])
            for b in range(a + 1, len(cuts)):
                expected = path_count_band(diagram, cuts[a], cuts[b] - cuts[a])
                assert path_count_band(collapsed, a, b - a) == expected

    def test_bounded_size(self):
        """Test bounded-size parameters of symmetric bands."""
        full = bounded_size_params(class_c(Constant(2)), 0)
        assert (full.t, full.L, full.symmetric, full.full) == (1, 4, True, True)
        gap = bounded_size_params(RuleDiagram(-1, (Constant(1), Constant(0), Constant(1))), 0)
        assert (gap.symmetric, gap.full) == (True, False)
        skew = bounded_size_params(RuleDiagram(0, (Constant(1), Constant(1))), 0)
        assert (skew.t, skew.symmetric) == (1, False)


class TestPathCounting:
    """Test path-count bands and the enumeration oracle."""

    def test_unit_class_c(self, unit_diagram):
        """Test path counts over two unit class-C levels."""
        assert path_count_band(unit_diagram, 0, 1) == Band.of(-1, [1, 1, 1])
        assert path_count_band(unit_diagram, 0, 2) == Band.of(-2, [1, 2, 3, 2, 1])

    def test_three_levels(self, geometric_diagram):
        """Test the three-level band for a_n = 2**(n + 1)."""
        band = path_count_band(geometric_diagram, 0, 3)
        assert band == Band.of(-3, [1, 14, 59, 92, 59, 14, 1])
        assert row_sum(band) == height(geometric_diagram, 3)

    def test_bruteforce_single_offset(self, geometric_diagram):
        """Test one offset of the oracle."""
        assert path_count_bruteforce(geometric_diagram, 0, 3, 0) == 92
        assert path_count_bruteforce(geometric_diagram, 0, 3, 4) == 0

    def test_skewed_diagram(self):
        """Test path counts on a skewed two-level diagram."""
        diagram = ExplicitLevels((Band.of(0, [1, 2]), Band.of(0, [3, 1])))
        assert path_count_band(diagram, 0, 2) == Band.of(0, [3, 7, 2])
        assert path_count_bruteforce_profile(diagram, 0, 2) == Band.of(0, [3, 7, 2])

    def test_stochastic_band(self, unit_diagram):
        """Test the stochastic profile has equal thirds."""
        third = Fraction(1, 3)
        assert stochastic_path_band(unit_diagram, 0, 1) == Band.of(-1, [third, third, third])

    def test_stochastic_band_two_levels(self, unit_diagram):
        """Test the two-level stochastic profile divides by nine."""
        band = stochastic_path_band(unit_diagram, 0, 2)
        assert band == Band.of(-2, [Fraction(c, 9) for c in (1, 2, 3, 2, 1)])

    @pytest.mark.property_based
    @settings(max_examples=50, deadline=None)
    @given(st.data())
    def test_stochastic_band_composes(self, data):
        """Test the stochastic profile is the product of the stochastic level bands."""
        m = data.draw(st.integers(min_value=2, max_value=4))
        diagram = data.draw(explicit_diagrams(m))
        band = stochastic_path_band(diagram, 0, m)
        expected = convolve_all(stochasticize(diagram.band_at(n)) for n in reversed(range(m)))
        assert band == expected
        assert row_sum(band) == 1

    @pytest.mark.property_based
    @settings(max_examples=50, deadline=None)
    @given(st.data())
    def test_cocycle(self, data):
        """Test a span splits into the product of its two parts."""
        m = data.draw(st.integers(min_value=2, max_value=5))
        j = data.draw(st.integers(min_value=1, max_value=m - 1))
        diagram = data.draw(explicit_diagrams(m))
        parts = convolve(path_count_band(diagram, j, m - j), path_count_band(diagram, 0, j))
        assert path_count_band(diagram, 0, m) == parts

    @pytest.mark.property_based
    @settings(max_examples=50, deadline=None)
    @given(st.data())
    def test_row_sum_is_height_ratio(self, data):
        """Test the row sum of a span is the ratio of the heights at its ends."""
        n = data.draw(st.integers(min_value=0, max_value=3))
        m = data.draw(st.integers(min_value=1, max_value=3))
        diagram = data.draw(explicit_diagrams(n + m))
        ratio = Fraction(height(diagram, n + m), height(diagram, n))
        assert row_sum(path_count_band(diagram, n, m)) == ratio

    @pytest.mark.property_based
    @settings(max_examples=50, deadline=None)
    @given(
        class_c_rules,
        st.integers(min_value=0, max_value=4),
        st.integers(min_value=1, max_value=6),
    )
    def test_class_c_support(self, rule, n, m):
        """Test class-C spans are supported exactly on -m .. m with no gaps."""
        band = path_count_band(class_c(rule), n, m)
        assert (band.lo, band.hi) == (-m, m)
        assert all(c > 0 for c in band.coefficients)

    def test_span_must_be_positive(self, unit_diagram):
        """Test a zero span is rejected."""
        with pytest.raises(InvalidArgument):
            path_count_band(unit_diagram, 0, 0)

    def test_enumeration_guard(self, unit_diagram, override_settings):
        """Test the oracle refuses enumerations above the guard."""
        override_settings(MAX_ENUMERATION=10)
        with pytest.raises(Intractable) as exc:
            path_count_bruteforce_profile(unit_diagram, 0, 3)
        assert exc.value.exit_code == 3

    @pytest.mark.property_based
    @settings(max_examples=200, deadline=None)
    @given(st.integers(min_value=1, max_value=4).flatmap(lambda m: st.tuples(st.just(m), explicit_diagrams(m))))
    def test_oracle_equivalence(self, case):
        """Test enumeration agrees with convolution at every offset."""
        m, diagram = case
        assert path_count_bruteforce_profile(diagram, 0, m) == path_count_band(diagram, 0, m)


class TestSubdiagrams:
    """Test odometers and window families."""

    def test_odometer_vertices(self):
        """Test vertices move against the offsets."""
        odo = OdometerSpec(OffsetSchedule((1, -1), (0,)), base_vertex=2)
        assert odo.vertices(4) == [2, 1, 2, 2]
        assert odo.vertex(3) == 2
        assert odo.shifted(3).vertex(0) == 5

    def test_odometer_coefficient(self, geometric_diagram):
        """Test edge counts along vertical and missing offsets."""
        assert OdometerSpec(OffsetSchedule.constant(0)).coefficient(geometric_diagram, 3) == 16
        with pytest.raises(MissingEdge):
            OdometerSpec(OffsetSchedule.constant(2)).coefficient(geometric_diagram, 0)

    def test_window_intervals(self):
        """Test window intervals follow shifts and widths."""
        windows = WindowFamily(0, OffsetSchedule.constant(-1), Affine(1, 1))
        assert windows.interval(0) == range(0, 1)
        assert windows.interval(2) == range(2, 5)
        assert windows.chosen_offsets(0) == frozenset({-1, -2})

    def test_window_from_odometer(self):
        """Test an odometer is a width-one window family."""
        odo = OdometerSpec(OffsetSchedule.constant(1), 4)
        windows = WindowFamily.from_odometer(odo)
        assert windows.interval(2) == range(2, 3)
        assert windows.chosen_offsets(0) == frozenset({1})

    def test_zero_width_rejected(self):
        """Test a zero width raises RuleOverflow."""
        windows = WindowFamily(0, OffsetSchedule.constant(0), ExplicitThenPeriodic((1,), (0,)))
        with pytest.raises(RuleOverflow):
            windows.width_at(1)


class TestPathsAndOrders:
    """Test finite paths, orders and kernels."""

    def test_slots(self):
        """Test slots list copies of multiple edges."""
        assert slots(Band.of(-1, [1, 2])) == (Slot(-1, 0), Slot(0, 0), Slot(0, 1))

    def test_path_vertices(self):
        """Test path vertices and terminal."""
        path = FinitePath(-1, (Edge(0, -1, 0), Edge(1, 0, 0)))
        assert path.vertices() == [-1, 0, 0]
        assert path.terminal == 0
        assert str(path) == "-1[-1:0 0:0]"

    def test_path_levels_chain(self):
        """Test edges must sit on consecutive levels."""
        with pytest.raises(InvalidPath):
            FinitePath(0, (Edge(1, 0, 0),))

    def test_path_validate(self, unit_diagram):
        """Test a copy index beyond the band is a missing edge."""
        with pytest.raises(MissingEdge):
            FinitePath(0, (Edge(0, 0, 1),)).validate(unit_diagram)

    def test_paths_into_count(self, geometric_diagram):
        """Test all paths into a vertex number the height."""
        paths = list(paths_into(geometric_diagram, 0, 2))
        assert len(paths) == height(geometric_diagram, 2)
        assert all(p.terminal == 0 for p in paths)

    def test_orders(self, unit_diagram):
        """Test built-in rankings and their reversal."""
        ranked = OrderSpec.left_to_right().ranked(unit_diagram, 0)
        assert ranked == (Slot(-1), Slot(0), Slot(1))
        assert reverse_order(OrderSpec.left_to_right()).ranked(unit_diagram, 0) == ranked[::-1]

    def test_explicit_order(self, unit_diagram):
        """Test explicit rankings must permute the slots."""
        order = OrderSpec.explicit((Slot(0), Slot(-1), Slot(1)))
        assert order.ranked(unit_diagram, 4) == (Slot(0), Slot(-1), Slot(1))
        assert order.reversed_order().ranked(unit_diagram, 0) == (Slot(1), Slot(-1), Slot(0))
        with pytest.raises(InvalidOrder):
            OrderSpec.explicit((Slot(0), Slot(1))).ranked(unit_diagram, 0)
        with pytest.raises(InvalidOrder):
            OrderSpec.explicit((Slot(0), Slot(0)))

    def test_kernel_validation(self, unit_diagram):
        """Test kernel probabilities must be positive and sum to one."""
        with pytest.raises(InvalidKernel):
            MarkovKernel(1, ((Fraction(1, 2), Fraction(1, 4)),))
        with pytest.raises(InvalidKernel):
            MarkovKernel(0)
        kernel = MarkovKernel(1, ((Fraction(1, 2), Fraction(1, 2)),))
        with pytest.raises(InvalidKernel):
            kernel.level_probabilities(unit_diagram, 0)

    def test_uniform_kernel(self, unit_diagram):
        """Test the uniform kernel gives 1 / r_n per slot."""
        kernel = MarkovKernel.uniform()
        assert kernel.is_uniform
        assert kernel.probability(unit_diagram, 0, Slot(1)) == Fraction(1, 3)
