"""
Tests for Background Subtraction Module

Mixture model, frame difference and 1-D closing.
"""

import numpy as np
import pytest

from src.bgsub import (
    FrameDifferenceSubtractor,
    LineModel,
    close_gaps,
    create_subtractor,
    update_and_classify,
)
from src.models.settings import BgSubConfig, BgSubKind


def _line(values):
    return np.array(values, dtype=np.uint8)


class TestLineModel:
    """Tests for the mixture-of-Gaussians line model."""

    def test_first_frame_is_background(self):
        """Test the first observation yields an all-zero mask."""
        model = LineModel(8)
        assert update_and_classify(model, _line([200] * 8)).tolist() == [0] * 8

    def test_stationary_line(self):
        """Test a constant line stays background for 10 frames."""
        model = LineModel(10)
        masks = [update_and_classify(model, _line([100] * 10)) for _ in range(10)]
        assert all(m.sum() == 0 for m in masks)

    def test_jump_and_return_with_history_one(self):
        """Test a jump at 3..6 is foreground, the return is seen once, then re-learned."""
        model = LineModel(10, history=1)
        base = [100] * 10
        jump = [100, 100, 100, 200, 200, 200, 200, 100, 100, 100]

        masks = [update_and_classify(model, _line(v)) for v in (base, jump, base, base)]

        expected = [0, 0, 0, 1, 1, 1, 1, 0, 0, 0]
        assert masks[0].tolist() == [0] * 10
        assert masks[1].tolist() == expected
        assert masks[2].tolist() == expected
        assert masks[3].tolist() == [0] * 10

    def test_converges_within_two_frames(self):
        """Test any start settles to zero foreground two frames into a static scene."""
        rng = np.random.default_rng(0)
        model = LineModel(64, history=1)
        for _ in range(5):
            update_and_classify(model, rng.integers(0, 256, 64).astype(np.uint8))
        static = rng.integers(0, 256, 64).astype(np.uint8)
        masks = [update_and_classify(model, static) for _ in range(3)]
        assert masks[1].sum() == 0
        assert masks[2].sum() == 0

    def test_weights_and_variances_invariants(self):
        """Test weights sum to <= 1, are sorted and variances respect the floor."""
        rng = np.random.default_rng(1)
        model = LineModel(32, history=5, var_min=15.0)
        for _ in range(40):
            update_and_classify(model, rng.integers(0, 256, 32).astype(np.uint8))
            totals = model.weights.sum(axis=0)
            assert (totals <= 1.0 + 1e-5).all()
            assert (np.diff(model.weights, axis=0) <= 1e-6).all()
            assert (model.variances >= 15.0 - 1e-6).all()

    def test_deterministic(self):
        """Test identical inputs give identical masks."""
        rng = np.random.default_rng(2)
        lines = [rng.integers(0, 256, 16).astype(np.uint8) for _ in range(20)]
        a, b = LineModel(16, history=3), LineModel(16, history=3)
        for line in lines:
            assert np.array_equal(update_and_classify(a, line), update_and_classify(b, line))

    def test_width_mismatch(self):
        """Test a line of the wrong width raises ValueError."""
        model = LineModel(8)
        with pytest.raises(ValueError):
            update_and_classify(model, _line([1] * 9))

    def test_two_dimensional_shape(self):
        """Test the model also classifies whole frames."""
        model = LineModel((4, 5))
        model.apply(np.full((4, 5), 50, dtype=np.uint8))
        changed = np.full((4, 5), 50, dtype=np.uint8)
        changed[2, 3] = 250
        assert model.apply(changed).sum() == 1


class TestFrameDifference:
    """Tests for the frame-difference baseline."""

    def test_threshold(self):
        """Test only changes above the threshold are foreground."""
        model = FrameDifferenceSubtractor(4, threshold=25)
        model.apply(_line([100, 100, 100, 100]))
        assert model.apply(_line([100, 125, 126, 0])).tolist() == [0, 0, 1, 1]

    def test_factory(self):
        """Test create_subtractor honours the configured kind."""
        assert isinstance(create_subtractor(BgSubConfig(kind=BgSubKind.DIFF), 8), FrameDifferenceSubtractor)
        model = create_subtractor(BgSubConfig(history=4, components=2), 8)
        assert isinstance(model, LineModel)
        assert model.alpha == pytest.approx(0.25)
        assert model.components == 2


class TestCloseGaps:
    """Tests for close_gaps."""

    def test_gap_of_one_bridged(self):
        """Test [1,1,0,1,1] closes with radius 1."""
        assert close_gaps(_line([1, 1, 0, 1, 1]), 1).tolist() == [1, 1, 1, 1, 1]

    def test_gap_too_wide(self):
        """Test a gap of 3 survives radius 1."""
        assert close_gaps(_line([1, 0, 0, 0, 1]), 1).tolist() == [1, 0, 0, 0, 1]

    def test_radius_zero_identity(self):
        """Test radius 0 returns the mask unchanged."""
        mask = _line([0, 1, 0, 0, 1, 1])
        assert close_gaps(mask, 0).tolist() == mask.tolist()

    def test_runs_do_not_grow_at_borders(self):
        """Test a run touching the border keeps its extent."""
        assert close_gaps(_line([1, 0, 0, 0, 0, 0]), 2).tolist() == [1, 0, 0, 0, 0, 0]
        assert close_gaps(_line([0, 0, 0, 0, 1, 1]), 2).tolist() == [0, 0, 0, 0, 1, 1]

    def test_idempotent(self):
        """Test closing twice equals closing once."""
        rng = np.random.default_rng(3)
        for _ in range(20):
            mask = (rng.random(50) < 0.4).astype(np.uint8)
            once = close_gaps(mask, 2)
            assert np.array_equal(close_gaps(once, 2), once)

    def test_rows_closed_independently(self):
        """Test a 2-D mask is closed along its rows only."""
        mask = np.array([[1, 0, 1], [0, 0, 0], [1, 0, 1]], dtype=np.uint8)
        assert close_gaps(mask, 1).tolist() == [[1, 1, 1], [0, 0, 0], [1, 1, 1]]

    def test_negative_radius(self):
        """Test a negative radius is rejected."""
        with pytest.raises(ValueError):
            close_gaps(_line([1]), -1)
