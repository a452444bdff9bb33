import warnings

import pytest

from tanglevol import (
    DiagramError,
    InadequateDiagramWarning,
    conway_sum,
    horizontal_twist,
    is_adequate,
    mirror,
    parse_pd,
    rational_tangle,
    reduced_edge_count,
    resolve_state,
    state_graph,
    state_summary,
    stoimenow_quantity,
    vertical_twist,
)
from tanglevol.diagram import tangle_sum
from tanglevol.generate import alternating_rational, make_rng, strongly_alternating_tangle
from tanglevol.states import Choice, bridges, losses
from tanglevol.twist import twist_partition


class TestResolutions:
    def test_trefoil_circle_counts(self, trefoil):
        # 2 circles on one side, 3 on the other; which is which is the chirality choice
        counts = {resolve_state(trefoil, ch).n_circles for ch in "AB"}
        assert counts == {2, 3}

    def test_crossingless_unknot(self):
        d = parse_pd("O")
        assert resolve_state(d, "A").n_circles == resolve_state(d, "B").n_circles == 1

    def test_kink(self, kink):
        assert sorted(resolve_state(kink, ch).n_circles for ch in "AB") == [1, 2]

    def test_bad_choice(self, trefoil):
        with pytest.raises(DiagramError):
            resolve_state(trefoil, "C")

    def test_tangle_exterior(self):
        res = resolve_state(rational_tangle([2, 1]), "A")
        assert len(res.exterior) in (1, 2)


class TestStateGraphs:
    def test_trefoil_graphs(self, trefoil):
        g2 = state_graph(trefoil, "B")  # two circles joined three times
        g3 = state_graph(trefoil, "A")
        assert (g2.n_vertices, g2.n_edges, reduced_edge_count(g2)) == (2, 3, 1)
        assert (g3.n_vertices, g3.n_edges, reduced_edge_count(g3)) == (3, 3, 3)

    def test_kink_has_loop(self, kink):
        assert state_graph(kink, "A").has_loop() or state_graph(kink, "B").has_loop()

    def test_mirror_swaps_graphs(self, figure_eight, trefoil):
        for d in (trefoil, figure_eight):
            a, b = state_summary(d), state_summary(mirror(d))
            assert (a.v_A, a.e_prime_A) == (b.v_B, b.e_prime_B)
            assert (a.v_B, a.e_prime_B) == (b.v_A, b.e_prime_A)


class TestAdequacy:
    def test_reduced_alternating_are_adequate(self):
        rng = make_rng(4)
        for _ in range(30):
            assert is_adequate(alternating_rational(rng, int(rng.integers(3, 12))))

    def test_kink_is_not(self, kink):
        assert not is_adequate(kink)

    def test_strongly_alternating_sum_is_adequate(self):
        rng = make_rng(9)
        tp = strongly_alternating_tangle(rng, 1)
        tm = strongly_alternating_tangle(rng, -1)
        assert is_adequate(conway_sum([tp, tm]))


class TestStoimenow:
    def test_trefoil(self, trefoil):
        assert stoimenow_quantity(trefoil) == (1, True)

    def test_figure_eight(self, figure_eight):
        assert stoimenow_quantity(figure_eight).value == 2

    def test_inadequate_warns(self, kink):
        with pytest.warns(InadequateDiagramWarning):
            out = stoimenow_quantity(kink)
        assert out.adequate is False

    def test_crossingless_out_of_domain(self):
        with pytest.raises(DiagramError):
            stoimenow_quantity(parse_pd("O"))

    def test_euler_identity_for_alternating(self):
        rng = make_rng(12)
        for _ in range(30):
            d = alternating_rational(rng, int(rng.integers(2, 15)))
            s = state_summary(d)
            assert s.v_A + s.v_B == d.n_crossings + 2


class TestBridges:
    def test_vertical_two_twist(self):
        t = vertical_twist(2)
        found = bridges(t, Choice.A) + bridges(t, Choice.B)
        assert len(found) == 1 and found[0].kind == "II"

    def test_trivial_tangle(self):
        assert bridges(horizontal_twist(0), "A") == bridges(horizontal_twist(0), "B") == []

    def test_rational_bridge_bound(self):
        for coeffs in ([2, 2], [1, 3], [3, 2], [2, 1, 2]):
            t = rational_tangle(coeffs)
            tw = len(twist_partition(t).classes)
            assert len(bridges(t, "A")) + len(bridges(t, "B")) <= tw / 2 + 2

    def test_needs_alternating(self):
        t = tangle_sum([rational_tangle([2]), rational_tangle([-1, -2])])
        with pytest.raises(DiagramError):
            bridges(t, "A")


class TestLosses:
    def test_needs_decomposition(self, trefoil):
        with pytest.raises(DiagramError):
            losses(trefoil)

    def test_single_tangle_has_no_external_loss(self):
        # needs a reduced closure: nugatory crossings split twist regions apart
        d = conway_sum([rational_tangle([2, 1, 2])])
        assert losses(d).ell_ext == 0
        rng = make_rng(1)
        for _ in range(5):
            assert losses(conway_sum([strongly_alternating_tangle(rng)])).ell_ext == 0

    def test_positive_sum_has_no_external_loss(self):
        ts = [rational_tangle([2, 1]), rational_tangle([3]), rational_tangle([1, 2])]
        rep = losses(conway_sum(ts))
        assert rep.ell_ext == 0
        assert rep.ell_in + rep.ell_ext == state_summary(conway_sum(ts)).reduction_loss

    def test_vertical_twists_forming_a_knot(self):
        d = conway_sum([vertical_twist(2), vertical_twist(-3)])
        rep = losses(d)
        assert rep.ell_ext <= rep.tw / 2 + 4

    def test_alternating_tangle_loses_within_regions(self):
        # in an alternating tangle each region with c_R crossings loses c_R - 1 edges
        for coeffs in ([3], [2, 2], [1, 3, 2], [4, 1]):
            t = rational_tangle(coeffs)
            d = conway_sum([t])
            part = twist_partition(t)
            expected = sum(len(c) - 1 for c in part.classes)
            ga, gb = state_graph(t, "A"), state_graph(t, "B")
            lost = ga.n_edges - reduced_edge_count(ga) + gb.n_edges - reduced_edge_count(gb)
            assert lost == expected
            assert d.n_crossings == t.n_crossings

    def test_report_serialises(self):
        rng = make_rng(2)
        tp, tm = strongly_alternating_tangle(rng, 1), strongly_alternating_tangle(rng, -1)
        d = conway_sum([tp, tm])
        out = losses(d, [tp, tm]).as_dict()
        assert set(out) >= {"ell_in", "ell_ext", "bridges", "inadmissible"}
        assert len(out["bridges"]) == 2
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            stoimenow_quantity(d)
