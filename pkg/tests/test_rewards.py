import numpy as np
import pytest

from swarmrl.env import (
    TaskConfig,
    WorldConfig,
    distance,
    pursuit_task,
    rendezvous_task,
    reward_multi_evader,
    reward_pursuit,
    reward_rendezvous,
)

CLOSED = WorldConfig(100.0, 100.0, "closed")
TORUS = WorldConfig(100.0, 100.0, "toroidal")


def place(positions):
    out = np.zeros((len(positions), 5))
    out[:, :2] = positions
    return out


# --------------------------------------------------------- brute-force oracles


def oracle_rendezvous(positions, actions, d_c, beta):
    n = len(positions)
    total = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            total += min(np.linalg.norm(positions[j] - positions[i]), d_c)
    alpha = -1.0 / (n * (n - 1) / 2.0 * d_c)
    return alpha * total + beta * np.linalg.norm(np.asarray(actions))


def oracle_pursuit(positions, evader, d_o, world):
    d_min = min(float(distance(p, evader, world)) for p in positions)
    return -min(d_min, d_o) / d_o


def oracle_multi(positions, evaders, d_t, world):
    count = 0
    for e in evaders:
        d_min = min(float(distance(p, e, world)) for p in positions)
        if d_min <= d_t:
            count += 1
    return float(count)


# ------------------------------------------------------------------ rendezvous


def test_rendezvous_coincident_zero():
    task = rendezvous_task(n_agents=4, observability="global")
    states = place([[50, 50]] * 4)
    assert reward_rendezvous(states, np.zeros((4, 2)), task, CLOSED) == 0.0


def test_rendezvous_saturated_is_minus_one():
    task = rendezvous_task(n_agents=2, observability="local", d_c=10.0)
    states = place([[0, 0], [90, 0]])
    assert reward_rendezvous(states, np.zeros((2, 2)), task, CLOSED) == pytest.approx(-1.0)


def test_rendezvous_three_agent_hand_value():
    # distances {10, 20, 30}, cut-off 100 -> -(10+20+30)/(3*100)
    task = rendezvous_task(n_agents=3, observability="global")
    states = place([[0, 0], [10, 0], [30, 0]])
    got = reward_rendezvous(states, np.zeros((3, 2)), task, CLOSED)
    assert got == pytest.approx(-60.0 / 300.0)


def test_rendezvous_action_penalty():
    task = rendezvous_task(n_agents=2, observability="global")
    states = place([[50, 50], [50, 50]])
    actions = np.array([[0.3, 0.0], [0.0, 0.4]])
    assert reward_rendezvous(states, actions, task, CLOSED) == pytest.approx(-1e-3 * 0.5)


@pytest.mark.parametrize("seed", range(20))
def test_rendezvous_matches_oracle(seed):
    rng = np.random.default_rng(seed)
    n = rng.integers(2, 12)
    task = rendezvous_task(
        n_agents=int(n),
        observability=rng.choice(["global", "local"]),
        d_c=float(rng.uniform(5, 80)),
    )
    positions = rng.uniform(0, 100, (n, 2))
    actions = rng.uniform(-0.5, 0.5, (n, 2))
    d_c = max(CLOSED.x_max, CLOSED.y_max) if task.observability == "global" else task.d_c
    got = reward_rendezvous(place(positions), actions, task, CLOSED)
    want = oracle_rendezvous(positions, actions, d_c, task.action_penalty)
    assert got == pytest.approx(want, abs=1e-12)


# --------------------------------------------------------------------- pursuit


def test_pursuit_capture_zero():
    task = pursuit_task(n_agents=2, observability="local")
    states = place([[40, 40], [10, 10]])
    assert reward_pursuit(states, np.array([40.0, 40.0]), task, TORUS) == 0.0


def test_pursuit_saturates_at_minus_one():
    task = pursuit_task(n_agents=2, observability="local", d_o=20.0)
    states = place([[0, 0], [10, 0]])
    assert reward_pursuit(states, np.array([50.0, 50.0]), task, TORUS) == pytest.approx(-1.0)


def test_pursuit_linear_midpoint():
    task = pursuit_task(n_agents=2, observability="local", d_o=20.0)
    states = place([[0, 0], [0, 50]])
    assert reward_pursuit(states, np.array([10.0, 0.0]), task, TORUS) == pytest.approx(-0.5)


@pytest.mark.parametrize("seed", range(20))
def test_pursuit_matches_oracle(seed):
    rng = np.random.default_rng(100 + seed)
    n = int(rng.integers(2, 10))
    world = TORUS if seed % 2 else CLOSED
    task = pursuit_task(n_agents=n, observability=rng.choice(["global", "local"]))
    positions = rng.uniform(0, 100, (n, 2))
    evader = rng.uniform(0, 100, 2)
    from swarmrl.env import pursuit_radius

    d_o = pursuit_radius(task, world)
    got = reward_pursuit(place(positions), evader, task, world)
    assert got == pytest.approx(oracle_pursuit(positions, evader, d_o, world), abs=1e-12)


# ----------------------------------------------------------------- multi-evader


def test_multi_none_caught():
    task = TaskConfig(task="multi-pursuit", n_agents=2, n_evaders=3)
    states = place([[0, 0], [50, 50]])
    evaders = np.array([[25.0, 25.0], [75.0, 75.0], [10.0, 90.0]])
    assert reward_multi_evader(states, evaders, task, TORUS) == 0.0


def test_multi_all_caught():
    task = TaskConfig(task="multi-pursuit", n_agents=5, n_evaders=5)
    positions = np.array([[10.0 * k, 10.0] for k in range(5)])
    evaders = positions + np.array([1.0, 1.0])
    assert reward_multi_evader(place(positions), evaders, task, TORUS) == 5.0


def test_multi_two_of_five():
    task = TaskConfig(task="multi-pursuit", n_agents=2, n_evaders=5, d_t=3.0)
    states = place([[10, 10], [90, 90]])
    evaders = np.array(
        [[11.0, 10.0], [90.0, 88.0], [50.0, 50.0], [30.0, 30.0], [70.0, 10.0]]
    )
    assert reward_multi_evader(states, evaders, task, TORUS) == 2.0


@pytest.mark.parametrize("seed", range(20))
def test_multi_matches_oracle(seed):
    rng = np.random.default_rng(200 + seed)
    n, e = int(rng.integers(2, 8)), int(rng.integers(1, 6))
    task = TaskConfig(task="multi-pursuit", n_agents=n, n_evaders=e, d_t=3.0)
    positions = rng.uniform(0, 100, (n, 2))
    evaders = rng.uniform(0, 100, (e, 2))
    got = reward_multi_evader(place(positions), evaders, task, TORUS)
    assert got == oracle_multi(positions, evaders, task.d_t, TORUS)


# ------------------------------------------------------------------ bounds


@pytest.mark.parametrize("seed", range(10))
def test_reward_bounds(seed):
    rng = np.random.default_rng(300 + seed)
    n = 6
    positions = rng.uniform(0, 100, (n, 2))
    task_r = rendezvous_task(n_agents=n, observability="global")
    r = reward_rendezvous(place(positions), np.zeros((n, 2)), task_r, CLOSED)
    assert -1.0 <= r <= 0.0
    task_p = pursuit_task(n_agents=n)
    rp = reward_pursuit(place(positions), rng.uniform(0, 100, 2), task_p, TORUS)
    assert -1.0 <= rp <= 0.0
