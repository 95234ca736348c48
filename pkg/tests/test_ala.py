"""
Tests for Accumulative Line Analysis

Cluster extraction, the per-frame step and the streaming runner.
"""

import numpy as np
import pytest

from src.ala import AlaState, get_clusters, run, step
from src.ala.algorithm import Cluster
from src.frames.synthetic import generate_synthetic, ground_truth
from src.models.scenario import MovingObjectSpec, NoiseSpec
from src.models.schemas import EventSource


def _fg(values):
    return np.array(values, dtype=np.uint8)


class TestGetClusters:
    """Tests for get_clusters."""

    def test_empty(self):
        """Test an all-zero line has no clusters."""
        assert get_clusters(_fg([0, 0, 0])) == []

    def test_maximal_runs(self):
        """Test [1,1,0,1] gives (0,2) and (3,4)."""
        assert get_clusters(_fg([1, 1, 0, 1])) == [Cluster(0, 2), Cluster(3, 4)]

    def test_all_ones(self):
        """Test a full line is one cluster."""
        assert get_clusters(_fg([1] * 7)) == [Cluster(0, 7)]


class TestStep:
    """Tests for one accumulator step."""

    def test_worked_example(self):
        """Test the three-frame trace emits one event at frame 3 over [1,4)."""
        state = AlaState(width=6, gamma=2, frame_index=1)
        frames = [[0, 1, 1, 0, 0, 0], [0, 1, 1, 1, 0, 0], [0, 0, 0, 0, 0, 0]]

        emitted = [step(state, _fg(f)) for f in frames]

        assert emitted[0] == [] and emitted[1] == []
        (event,) = emitted[2]
        assert (event.frame, event.x0, event.x1, event.source) == (3, 1, 4, EventSource.ALA)
        assert state.line_or.sum() == 0

    def test_sub_gamma_noise_cleared(self):
        """Test a one-pixel cluster with gamma 2 is wiped and never emitted."""
        state = AlaState(width=6, gamma=2)
        assert step(state, _fg([0, 1, 0, 0, 0, 0])) == []
        assert state.line_or.sum() == 0
        assert state.last_step.noise_cleared == 1
        assert step(state, _fg([0] * 6)) == []

    def test_all_zero_forever(self):
        """Test an empty line never emits and keeps the accumulator empty."""
        state = AlaState(width=5, gamma=1)
        for _ in range(10):
            assert step(state, _fg([0] * 5)) == []
        assert state.line_or.sum() == 0
        assert state.frame_index == 10

    def test_xor_equals_all_zero_test(self):
        """Test the XOR criterion agrees with 'no foreground in the cluster' on random masks."""
        rng = np.random.default_rng(0)
        for _ in range(200):
            line_or = (rng.random(30) < 0.6).astype(np.uint8)
            fg = (rng.random(30) < 0.3).astype(np.uint8) & line_or
            for cluster in get_clusters(line_or):
                l, r = cluster.l, cluster.r
                xor_full = int(np.bitwise_xor(fg[l:r], line_or[l:r]).sum()) == r - l
                assert xor_full == (fg[l:r].sum() == 0)

    def test_every_cluster_accounted_for(self):
        """Test emitted + alive + noise-cleared covers every cluster each step."""
        rng = np.random.default_rng(1)
        state = AlaState(width=40, gamma=4)
        for _ in range(100):
            fg = (rng.random(40) < 0.2).astype(np.uint8)
            step(state, fg)
            s = state.last_step
            assert s.emitted + s.alive + s.noise_cleared == s.clusters

    def test_accumulator_monotone_between_clears(self):
        """Test line_or only loses bits on emission or noise clearing."""
        rng = np.random.default_rng(2)
        state = AlaState(width=40, gamma=3)
        before = state.line_or.copy()
        for _ in range(100):
            fg = (rng.random(40) < 0.3).astype(np.uint8)
            step(state, fg)
            lost = (before == 1) & (state.line_or == 0)
            if state.last_step.emitted == 0 and state.last_step.noise_cleared == 0:
                assert not lost.any()
            before = state.line_or.copy()

    def test_adjacent_entry_merges_with_stale_cluster(self):
        """Test a vehicle entering next to an unfinished one joins its cluster."""
        state = AlaState(width=10, gamma=2)
        step(state, _fg([1, 1, 1, 0, 0, 0, 0, 0, 0, 0]))
        step(state, _fg([0, 0, 0, 1, 1, 1, 0, 0, 0, 0]))
        events = step(state, _fg([0] * 10))
        assert [(e.x0, e.x1) for e in events] == [(0, 6)]

    def test_width_mismatch(self):
        """Test a foreground line of the wrong width raises ValueError."""
        with pytest.raises(ValueError):
            step(AlaState(width=4, gamma=1), _fg([0, 0, 0]))

    def test_gamma_must_be_positive(self):
        """Test gamma 0 is rejected."""
        with pytest.raises(ValueError):
            AlaState(width=4, gamma=0)


class TestRun:
    """Tests for the streaming runner."""

    def test_single_vehicle(self, single_vehicle_scenario):
        """Test one event within two frames of the crossing, covering the vehicle."""
        frames, (record,) = generate_synthetic(single_vehicle_scenario, seed=0)
        events = list(run(frames, line_row=60, gamma=100))
        (event,) = events
        assert abs(event.frame - record.frame) <= 2
        assert (event.x0, event.x1) == (record.x_left, record.x_right)

    def test_two_vehicles_in_frame_order(self, two_lane_scenario):
        """Test k x-disjoint vehicles give k events in frame order."""
        frames, records = generate_synthetic(two_lane_scenario, seed=1)
        events = list(run(frames, line_row=60, gamma=100))
        assert len(events) == len(records) == 2
        assert [e.frame for e in events] == sorted(e.frame for e in events)
        for event, record in zip(events, records):
            assert abs(event.frame - record.frame) <= 2

    def test_sub_gamma_objects_ignored(self, single_vehicle_scenario):
        """Test narrow distractors add no events."""
        noise = NoiseSpec(objects=[
            MovingObjectSpec(x=230, width=40, height=20, velocity=3.0),
            MovingObjectSpec(x=280, width=30, height=30, velocity=5.0, entry_frame=12),
        ])
        scenario = single_vehicle_scenario.model_copy(update={"noise": noise})
        frames, records = generate_synthetic(scenario, seed=0)
        events = list(run(frames, line_row=60, gamma=100))
        assert len(events) == len(records) == 1

    def test_empty_video(self):
        """Test no frames give no events."""
        assert list(run(iter([]), line_row=0, gamma=100)) == []

    def test_line_outside_frame(self, single_vehicle_scenario):
        """Test lambda beyond the frame height raises ValueError."""
        frames, _ = generate_synthetic(single_vehicle_scenario, seed=0)
        with pytest.raises(ValueError):
            list(run(frames, line_row=500, gamma=100))

    def test_ground_truth_is_not_consumed(self, single_vehicle_scenario):
        """Test ground_truth stays available after a run."""
        frames, _ = generate_synthetic(single_vehicle_scenario, seed=0)
        list(run(frames, line_row=60, gamma=100))
        assert len(ground_truth(single_vehicle_scenario)) == 1
