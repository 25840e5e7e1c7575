import numpy as np
import pytest

from ransomgame._contour import zero_contours


class TestZeroContours:
    def test_linear_field_located_exactly(self):
        # f(x, y) = x + y - 1 is linear on every cell edge, so interpolated
        # crossings sit exactly on the line x + y = 1.
        xs = np.linspace(0.0, 1.0, 21)
        ys = np.linspace(0.0, 1.0, 21)
        values = xs[:, None] + ys[None, :] - 1.0
        lines = zero_contours(xs, ys, values)
        assert lines
        points = np.vstack(lines)
        assert np.max(np.abs(points[:, 0] + points[:, 1] - 1.0)) < 1e-12

    def test_circle_yields_closed_loop(self):
        xs = np.linspace(-2.0, 2.0, 81)
        ys = np.linspace(-2.0, 2.0, 81)
        values = xs[:, None] ** 2 + ys[None, :] ** 2 - 1.0
        lines = zero_contours(xs, ys, values)
        assert len(lines) == 1
        loop = lines[0]
        assert np.allclose(loop[0], loop[-1])
        radii = np.hypot(loop[:, 0], loop[:, 1])
        cell = xs[1] - xs[0]
        assert np.max(np.abs(radii - 1.0)) < cell

    def test_no_crossings_no_lines(self):
        xs = ys = np.linspace(0.0, 1.0, 5)
        assert zero_contours(xs, ys, np.ones((5, 5))) == []
        assert zero_contours(xs, ys, -np.ones((5, 5))) == []

    def test_two_separate_bands(self):
        # f(x, y) = sin-free two-stripe field: zero lines at x = 0.25, 0.75.
        xs = np.linspace(0.0, 1.0, 101)
        ys = np.linspace(0.0, 1.0, 11)
        values = -(xs[:, None] - 0.25) * (xs[:, None] - 0.75) + 0.0 * ys[None, :]
        lines = zero_contours(xs, ys, values)
        assert len(lines) == 2
        centers = sorted(float(np.mean(line[:, 0])) for line in lines)
        assert centers[0] == pytest.approx(0.25, abs=1e-6)
        assert centers[1] == pytest.approx(0.75, abs=1e-6)

    def test_determinism(self):
        rng = np.random.default_rng(0)
        xs = np.linspace(0.0, 1.0, 30)
        ys = np.linspace(0.0, 1.0, 30)
        values = rng.normal(size=(30, 30))
        a = zero_contours(xs, ys, values)
        b = zero_contours(xs, ys, values)
        assert len(a) == len(b)
        for la, lb in zip(a, b):
            assert np.array_equal(la, lb)

    def test_saddle_cells_handled(self):
        # A checkerboard sign pattern forces the ambiguous marching case.
        xs = ys = np.linspace(0.0, 1.0, 4)
        values = np.array([[1.0, -1.0, 1.0, -1.0],
                           [-1.0, 1.0, -1.0, 1.0],
                           [1.0, -1.0, 1.0, -1.0],
                           [-1.0, 1.0, -1.0, 1.0]])
        lines = zero_contours(xs, ys, values)
        assert lines
        points = np.vstack(lines)
        assert np.all((points >= 0.0) & (points <= 1.0))

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            zero_contours(np.arange(3.0), np.arange(4.0), np.zeros((3, 3)))
