"""Property-based checks over randomly built diagrams."""

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from tanglevol import (
    TangleSign,
    add_belt,
    bracket,
    bracket_statesum,
    bracket_transfer,
    component_count,
    conway_sum,
    emit_pd,
    is_alternating,
    is_prime,
    isomorphic,
    jones,
    mirror,
    numerator_closure,
    parse_pd,
    rational_tangle,
    state_summary,
    tangle_sign,
    twist_fill,
    twist_number,
    twist_number_tangle,
)
from tanglevol.diagram import is_connected
from tanglevol.states import losses

coefficient = st.integers(1, 3)
same_sign_coeffs = st.tuples(
    st.lists(coefficient, min_size=1, max_size=3), st.sampled_from([1, -1])
).map(lambda x: [x[1] * a for a in x[0]])
tangle = same_sign_coeffs.map(rational_tangle)
tangle_lists = st.lists(tangle, min_size=1, max_size=4)

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@SETTINGS
@given(tangle_lists)
def test_emit_parse_round_trip(ts):
    d = conway_sum(ts)
    assert isomorphic(parse_pd(emit_pd(d)), d)


@SETTINGS
@given(tangle)
def test_single_sum_components(t):
    assert component_count(conway_sum([t])) == component_count(numerator_closure(t))


@SETTINGS
@given(tangle_lists, st.sampled_from([TangleSign.POSITIVE, TangleSign.NEGATIVE]))
def test_same_sign_sum_alternates(ts, sign):
    signed = [t if tangle_sign(t) is sign else mirror(t) for t in ts]
    assert is_alternating(conway_sum(signed))


@SETTINGS
@given(tangle)
def test_belt_zero_filling(t):
    assert isomorphic(twist_fill(add_belt(t), 0), numerator_closure(t))


@SETTINGS
@given(tangle_lists)
def test_transfer_matches_oracle(ts):
    d = conway_sum(ts)
    assert bracket_transfer(ts) == bracket_statesum(d) == bracket(d)


@SETTINGS
@given(tangle_lists)
def test_mirror_inverts_jones(ts):
    d = conway_sum(ts)
    j, jm = jones(d), jones(mirror(d))
    assert {(-e, c) for e, c in j.terms()} == set(jm.terms())


@SETTINGS
@given(tangle_lists)
def test_twist_merge_bound(ts):
    # nugatory crossings make both witness faces coincide, so only prime sums qualify
    d = conway_sum(ts)
    assume(not d.free_loops and is_connected(d) and is_prime(d))
    assert twist_number(d) <= sum(twist_number_tangle(t) for t in ts)


@SETTINGS
@given(tangle_lists)
def test_loss_bookkeeping(ts):
    d = conway_sum(ts)
    if d.n_crossings and not d.free_loops and is_connected(d):
        rep = losses(d)
        assert rep.ell_in + rep.ell_ext == state_summary(d).reduction_loss
        s = state_summary(d)
        assert s.e_prime_A <= s.e_A and s.e_prime_B <= s.e_B
