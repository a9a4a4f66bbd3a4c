import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swarmrl.env import (
    TaskConfig,
    WorldConfig,
    apply_boundary,
    build_adjacency,
    distance,
    pair_features,
    step_kinematics,
    wall_features,
    wrap_angle,
)

CLOSED = WorldConfig(100.0, 100.0, "closed")
TORUS = WorldConfig(100.0, 100.0, "toroidal")


# ------------------------------------------------------------- apply_boundary


def test_toroidal_wrap():
    np.testing.assert_allclose(apply_boundary([101.0, 5.0], TORUS), [1.0, 5.0])


def test_closed_clamp():
    np.testing.assert_allclose(apply_boundary([50.0, -5.0], CLOSED), [50.0, 0.0])


def test_interior_point_unchanged():
    for world in (CLOSED, TORUS):
        np.testing.assert_array_equal(apply_boundary([12.5, 99.0], world), [12.5, 99.0])


# ------------------------------------------------------------ step_kinematics


def single_task(**kw):
    return TaskConfig(task="rendezvous", n_agents=2, dynamics="single", **kw)


def double_task(**kw):
    return TaskConfig(task="rendezvous", n_agents=2, dynamics="double", **kw)


def test_axis_aligned_motion():
    s = np.array([10.0, 10.0, 0.0, 0.0, 0.0])
    out = step_kinematics(s, np.array([0.5, 0.0]), CLOSED, single_task())
    np.testing.assert_allclose(out[:3], [10.5, 10.0, 0.0])


def test_pure_rotation():
    s = np.array([10.0, 10.0, 0.0, 0.0, 0.0])
    out = step_kinematics(s, np.array([0.0, np.pi / 4]), CLOSED, single_task())
    np.testing.assert_allclose(out[:3], [10.0, 10.0, np.pi / 4])


def test_double_integrator_two_step_euler():
    # hand rollout: v updates first, position advances with the new velocity
    task = double_task(a_v_max=0.2)
    s = np.array([10.0, 10.0, 0.0, 0.0, 0.0])
    s = step_kinematics(s, np.array([0.1, 0.0]), CLOSED, task)
    s = step_kinematics(s, np.array([0.1, 0.0]), CLOSED, task)
    assert s[3] == pytest.approx(0.2)
    assert s[0] == pytest.approx(10.0 + 0.1 + 0.2)


def test_double_integrator_velocity_clamped():
    task = double_task()
    s = np.array([10.0, 10.0, 0.0, 0.49, 0.0])
    s = step_kinematics(s, np.array([0.05, 0.0]), CLOSED, task)
    assert s[3] == pytest.approx(task.v_max)


def test_heading_stays_wrapped():
    task = single_task()
    s = np.array([50.0, 50.0, 6.0, 0.0, 0.0])
    for _ in range(10):
        s = step_kinematics(s, np.array([0.1, np.pi / 4]), CLOSED, task)
        assert 0.0 <= s[2] < 2.0 * np.pi


# ---------------------------------------------------------- pairwise geometry


def test_pair_axis_geometry():
    si = np.array([0.0, 0.0, 0.0, 0.0, 0.0])
    sj = np.array([0.0, 10.0, 0.0, 0.0, 0.0])
    f = pair_features(si, sj, CLOSED)
    assert f.dist == pytest.approx(10.0)
    assert f.bearing == pytest.approx(np.pi / 2)


def test_pair_minimal_image():
    si = np.array([1.0, 0.0, 0.0, 0.0, 0.0])
    sj = np.array([99.0, 0.0, 0.0, 0.0, 0.0])
    f = pair_features(si, sj, TORUS)
    assert f.dist == pytest.approx(2.0)
    assert f.bearing == pytest.approx(np.pi)  # j sits at -x from i, wrapped to pi


def test_pair_relative_orientation_formula():
    # direct evaluation of the reciprocal-ray formula
    si = np.array([0.0, 0.0, np.pi / 2, 0.0, 0.0])
    sj = np.array([10.0, 0.0, 0.0, 0.0, 0.0])
    f = pair_features(si, sj, CLOSED)
    assert f.orient == pytest.approx(np.pi)


def test_pair_coincident_convention():
    si = np.array([5.0, 5.0, 1.0, 0.0, 0.0])
    sj = np.array([5.0, 5.0, 2.0, 0.0, 0.0])
    f = pair_features(si, sj, CLOSED)
    assert f.dist == 0.0
    assert f.bearing == 0.0
    assert f.orient == 0.0


def test_pair_relative_velocity():
    si = np.array([0.0, 0.0, 0.0, 1.0, 0.0])
    sj = np.array([5.0, 0.0, np.pi / 2, 2.0, 0.0])
    f = pair_features(si, sj, CLOSED)
    np.testing.assert_allclose(f.dvel, [1.0, -2.0], atol=1e-12)


@given(st.integers(0, 2**31 - 1))
@settings(max_examples=50, deadline=None)
def test_toroidal_distance_never_exceeds_euclidean(seed):
    rng = np.random.default_rng(seed)
    a, b = rng.uniform(0, 100, (2, 2))
    dt = distance(a, b, TORUS)
    de = np.linalg.norm(b - a)
    assert dt <= de + 1e-12
    if np.all(np.abs(b - a) <= 50.0):
        assert dt == pytest.approx(de)


# ------------------------------------------------------------------ adjacency


def test_global_graph_all_neighbors():
    pos = np.array([[0.0, 0.0], [50.0, 50.0], [99.0, 99.0]])
    adj = build_adjacency(pos, CLOSED, "global", d_c=1.0)
    assert adj.sum() == 6
    assert not adj.diagonal().any()


def test_cutoff_is_inclusive():
    pos = np.array([[0.0, 0.0], [40.0, 0.0]])
    adj = build_adjacency(pos, CLOSED, "local", d_c=40.0)
    assert adj[0, 1] and adj[1, 0]


def test_far_agents_have_empty_neighborhoods():
    pos = np.array([[0.0, 0.0], [90.0, 90.0]])
    adj = build_adjacency(pos, CLOSED, "local", d_c=40.0)
    assert not adj.any()


@given(st.integers(0, 2**31 - 1), st.integers(3, 12))
@settings(max_examples=50, deadline=None)
def test_graph_symmetry(seed, n):
    rng = np.random.default_rng(seed)
    pos = rng.uniform(0, 100, (n, 2))
    for world in (CLOSED, TORUS):
        adj = build_adjacency(pos, world, "local", d_c=30.0)
        assert (adj == adj.T).all()
        assert not adj.diagonal().any()


# -------------------------------------------------------------- wall features


def test_wall_distance_south_wall():
    d, _ = wall_features(50.0, 10.0, 0.0, CLOSED)
    assert d == pytest.approx(10.0)


def test_wall_tie_break_at_center():
    d, phi_wall = wall_features(50.0, 50.0, 0.0, CLOSED)
    assert d == pytest.approx(50.0)
    # first minimum wins: x-min wall, absolute direction pi
    assert phi_wall == pytest.approx(np.pi)


def test_wall_facing_head_on_gives_zero():
    _, phi_wall = wall_features(10.0, 50.0, np.pi, CLOSED)
    assert phi_wall == pytest.approx(0.0)


def test_wall_features_undefined_on_torus():
    with pytest.raises(ValueError):
        wall_features(10.0, 10.0, 0.0, TORUS)


def test_wrap_angle_range():
    a = np.linspace(-10, 10, 1001)
    w = wrap_angle(a)
    assert (w > -np.pi).all() and (w <= np.pi).all()
    assert wrap_angle(np.pi) == pytest.approx(np.pi)
