import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from airwrite.errors import (
    DegenerateTrajectoryError,
    NonMonotonicTimeError,
    TooShortError,
)
from airwrite.trajectory import (
    SmoothingConfig,
    TerminationConfig,
    Trajectory,
    check_termination,
    rasterize,
    smooth,
    trajectory_entropy,
    velocity,
)


def _traj(points, state="terminated"):
    return Trajectory(points=points, state=state)


class TestVelocity:
    def test_three_px_in_50ms(self):
        t = _traj([(0, 0, 0), (3, 0, 50)])
        assert velocity(t, 1) == pytest.approx(60.0)

    def test_one_px_in_50ms(self):
        t = _traj([(0, 0, 0), (1, 0, 50)])
        assert velocity(t, 1) == pytest.approx(20.0)

    def test_repeated_point_zero(self):
        t = _traj([(5, 5, 0), (5, 5, 33)])
        assert velocity(t, 1) == 0.0

    def test_non_monotonic_time_rejected_on_append(self):
        t = Trajectory()
        t.append(0, 0, 10)
        with pytest.raises(NonMonotonicTimeError):
            t.append(1, 1, 10)


def _steady(n, step, dt=50.0):
    """n points advancing `step` px every dt ms -> v = step * 1000/dt."""
    return [(i * step, 0.0, i * dt) for i in range(n)]


class TestCheckTermination:
    def test_slow_tail_fires(self):
        # 12 points, last 5 steps at 20 px/s (1 px / 50 ms) < 40
        pts = _steady(7, 5.0) + [(30 + i, 0.0, 350 + 50 * i) for i in range(1, 6)]
        t = Trajectory(points=pts)
        assert check_termination(t, TerminationConfig()) is True

    def test_fast_tail_does_not(self):
        pts = _steady(12, 3.0)  # every step 60 px/s
        t = Trajectory(points=pts)
        assert check_termination(t, TerminationConfig()) is False

    def test_min_points_debounce(self):
        pts = _steady(6, 0.0)  # stationary but only 6 points
        t = Trajectory(points=pts)
        assert check_termination(t, TerminationConfig()) is False

    def test_one_fast_step_inside_window_blocks(self):
        pts = _steady(9, 1.0) + [(8 + 5, 0.0, 9 * 50.0), (13.5, 0.0, 10 * 50.0)]
        t = Trajectory(points=pts)  # a 100 px/s spike two steps back
        assert check_termination(t, TerminationConfig()) is False

    @settings(max_examples=40, deadline=None)
    @given(
        tau=st.floats(5.0, 200.0),
        bump=st.floats(1.0, 100.0),
        seed=st.integers(0, 999),
    )
    def test_monotone_in_tau(self, tau, bump, seed):
        rng = np.random.default_rng(seed)
        pts = []
        t_ms = 0.0
        x = 0.0
        for _ in range(14):
            pts.append((x, 0.0, t_ms))
            x += rng.uniform(0, 4)
            t_ms += rng.uniform(20, 60)
        traj = Trajectory(points=pts)
        if check_termination(traj, TerminationConfig(tau=tau)):
            assert check_termination(traj, TerminationConfig(tau=tau + bump))


class TestTrajectoryEntropy:
    def test_collinear_zero(self):
        assert trajectory_entropy(_traj(_steady(6, 2.0))) == 0.0

    def test_zigzag_half(self):
        pts = []
        for i in range(10):
            x, y = divmod(i, 2)
            pts.append((i, float(y), i * 33.0))
        # right-angle turns at every interior vertex
        xy = np.array([[0, 0], [1, 0], [1, 1], [2, 1], [2, 2], [3, 2]], float)
        assert trajectory_entropy(xy) == pytest.approx(0.5)

    def test_three_points_single_term(self):
        xy = np.array([[0, 0], [1, 0], [1, 1]], float)
        assert trajectory_entropy(xy) == pytest.approx(0.5)

    def test_too_short(self):
        with pytest.raises(TooShortError):
            trajectory_entropy(np.array([[0, 0], [1, 1]], float))


class TestSmooth:
    def test_hand_simulated_first_iteration(self):
        t = _traj([(0, 0, 0), (1, 0, 50), (10, 0, 100), (12, 0, 150)])
        out = smooth(t, SmoothingConfig())
        assert out.points[2][0] == pytest.approx(6.5)
        assert out.points[2][1] == pytest.approx(0.0)

    def test_already_smooth_unchanged(self):
        pts = [(i * 2.0, 0.0, i * 50.0) for i in range(8)]
        out = smooth(_traj(pts), SmoothingConfig())
        assert out.points == pts

    def test_spike_reduced(self):
        pts = [(float(i * 10), 0.0, i * 50.0) for i in range(9)]
        pts[4] = (40.0, 30.0, 200.0)  # 30 px orthogonal spike
        out = smooth(_traj(pts), SmoothingConfig())
        assert abs(out.points[4][1]) <= 15.0

    def test_endpoints_and_count_preserved(self):
        rng = np.random.default_rng(3)
        for _ in range(30):
            n = int(rng.integers(3, 40))
            pts = [
                (float(x), float(y), i * 40.0)
                for i, (x, y) in enumerate(rng.uniform(0, 200, (n, 2)))
            ]
            out = smooth(_traj(pts), SmoothingConfig())
            assert len(out.points) == n
            assert out.points[0] == pts[0]
            assert out.points[-1] == pts[-1]
            assert [p[2] for p in out.points] == [p[2] for p in pts]

    def test_converges_within_cap(self):
        cfg = SmoothingConfig()
        rng = np.random.default_rng(9)
        for _ in range(200):
            n = int(rng.integers(3, 60))
            pts = [
                (float(x), float(y), i * 30.0)
                for i, (x, y) in enumerate(rng.uniform(0, 300, (n, 2)))
            ]
            smooth(_traj(pts), cfg)  # hard cap guarantees return

    def test_entropy_settles_after_convergence(self):
        cfg = SmoothingConfig()
        rng = np.random.default_rng(4)
        pts = [
            (float(x), float(y), i * 30.0)
            for i, (x, y) in enumerate(rng.uniform(0, 100, (20, 2)))
        ]
        once = smooth(_traj(pts), cfg)
        again = smooth(once, cfg)
        u1 = trajectory_entropy(once)
        u2 = trajectory_entropy(again)
        assert abs(u2 - u1) < cfg.epsilon

    def test_open_trajectory_rejected(self):
        t = Trajectory(points=_steady(5, 1.0), state="open")
        with pytest.raises(ValueError):
            smooth(t)


class TestRasterize:
    def test_horizontal_line_centered(self):
        t = _traj([(0, 0, 0), (50, 0, 100)])
        img = rasterize(t)
        ys, xs = np.nonzero(img >= 200)  # bright stroke core
        assert set(ys) == {13, 14}
        assert xs.min() >= 3 and xs.max() <= 24
        faint_ys = set(np.nonzero(img)[0])  # soft edge stays adjacent
        assert faint_ys <= {12, 13, 14, 15}

    def test_scale_invariance(self):
        pts = [(0, 0, 0), (7, 3, 40), (12, 9, 80), (20, 4, 120)]
        t1 = _traj(pts)
        t3 = _traj([(3 * x, 3 * y, tt) for x, y, tt in pts])
        assert np.array_equal(rasterize(t1), rasterize(t3))

    def test_translation_invariance(self):
        pts = [(0, 0, 0), (7, 3, 40), (12, 9, 80), (20, 4, 120)]
        t1 = _traj(pts)
        t2 = _traj([(x + 100, y + 55, tt) for x, y, tt in pts])
        assert np.array_equal(rasterize(t1), rasterize(t2))

    def test_repeated_point_degenerate(self):
        with pytest.raises(DegenerateTrajectoryError):
            rasterize(_traj([(5, 5, 0), (5, 5, 10), (5, 5, 20)]))

    def test_canvas_shape_and_values(self):
        t = _traj([(0, 0, 0), (10, 10, 50), (20, 0, 100)])
        img = rasterize(t)
        assert img.shape == (28, 28)
        assert img.dtype == np.uint8
        assert img.max() == 255  # stroke core saturates
        assert img.min() == 0

    @settings(max_examples=40, deadline=None)
    @given(
        seed=st.integers(0, 10_000),
        scale=st.integers(1, 9),
        tx=st.integers(-300, 300),
        ty=st.integers(-300, 300),
    )
    def test_similarity_invariance_property(self, seed, scale, tx, ty):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 25))
        xy = rng.integers(0, 100, (n, 2))
        if (xy == xy[0]).all():
            return
        pts = [(float(x), float(y), i * 25.0) for i, (x, y) in enumerate(xy)]
        moved = [(float(x * scale + tx), float(y * scale + ty), i * 25.0) for i, (x, y) in enumerate(xy)]
        assert np.array_equal(rasterize(_traj(pts)), rasterize(_traj(moved)))
