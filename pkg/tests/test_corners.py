import numpy as np
import pytest
from hypothesis import given, settings

import spatialproc as sp
from spatialproc.geometry import harris

from conftest import gray_arrays


class TestHarris:
    def test_constant_image_empty(self):
        assert harris(sp.gray_image(np.full((32, 32), 50, np.uint8))).points == ()

    def test_square_corners_found(self):
        img = np.zeros((80, 80), np.uint8)
        img[30:50, 30:50] = 200
        corners = harris(sp.gray_image(img), 0.04, 0.01, 5)
        for tx, ty in [(30, 30), (49, 30), (30, 49), (49, 49)]:
            assert any(max(abs(px - tx), abs(py - ty)) <= 2 for px, py in corners.points)

    def test_step_edge_yields_nothing(self):
        # a pure edge has a rank-1 structure tensor: det = 0, response <= 0
        img = np.zeros((32, 32), np.uint8)
        img[:, 16:] = 255
        corners = harris(sp.gray_image(img), 0.04, 0.01, 1)
        assert corners.points == ()
        assert corners.response_max <= 0.0

    @given(gray_arrays(min_side=8, max_side=20))
    @settings(max_examples=30)
    def test_responses_respect_threshold(self, arr):
        corners = harris(sp.gray_image(arr), 0.04, 0.01, 1)
        for response in corners.responses:
            assert response >= 0.01 * corners.response_max

    def test_points_sorted_by_response(self):
        img = np.zeros((64, 64), np.uint8)
        img[10:30, 10:30] = 250
        img[40:50, 40:50] = 60
        corners = harris(sp.gray_image(img), 0.04, 0.01, 1)
        responses = list(corners.responses)
        assert responses == sorted(responses, reverse=True)

    def test_parameter_validation(self):
        img = sp.gray_image(np.zeros((16, 16), np.uint8))
        with pytest.raises(ValueError):
            harris(img, k=0.0)
        with pytest.raises(ValueError):
            harris(img, rel_thresh=1.0)
        with pytest.raises(TypeError):
            harris(sp.color_image(np.zeros((8, 8, 3), np.uint8)))

    def test_to_dicts(self):
        img = np.zeros((40, 40), np.uint8)
        img[10:30, 10:30] = 200
        corners = harris(sp.gray_image(img))
        entries = corners.to_dicts()
        assert len(entries) == len(corners.points)
        assert set(entries[0]) == {"x", "y", "response"}
