import numpy as np
import pytest

import spatialproc as sp
from spatialproc.geometry import WindowConfig, localize_windows

from synth import FACADE_DOOR, FACADE_WINDOWS, facade_scene


class TestLocalizeWindows:
    def test_blank_image_empty_mask(self):
        img = sp.color_image(np.full((64, 64, 3), 180, np.uint8), sp.ColorSpace.BGR)
        mask, overlay = localize_windows(img)
        assert mask.data.sum() == 0
        assert (overlay.data == img.data).all()

    def test_windows_found_door_excluded(self):
        mask, overlay = localize_windows(facade_scene())
        m = mask.data > 0
        for x0, y0, x1, y1 in FACADE_WINDOWS:
            assert m[y0 : y1 + 1, x0 : x1 + 1].mean() > 0.95
        dx0, dy0, dx1, dy1 = FACADE_DOOR
        assert m[dy0 : dy1 + 1, dx0 : dx1 + 1].mean() < 0.05
        # overlay paints the mask pure red (BGR byte order)
        assert (overlay.data[m] == (0, 0, 255)).all()
        assert (overlay.data[~m] == 200).all()

    def test_mask_is_binary_with_input_dims(self):
        scene = facade_scene(h=280, w=320)
        mask, overlay = localize_windows(scene)
        assert mask.space is sp.ColorSpace.BINARY
        assert mask.data.shape == (280, 320)
        assert overlay.data.shape == (280, 320, 3)

    def test_requires_bgr(self):
        rgb = sp.color_image(np.zeros((32, 32, 3), np.uint8))
        with pytest.raises(TypeError):
            localize_windows(rgb)

    def test_door_ratio_config(self):
        # with a permissive cutoff the door region is kept too
        mask_strict, _ = localize_windows(facade_scene(), WindowConfig(door_ratio=1.8))
        mask_loose, _ = localize_windows(facade_scene(), WindowConfig(door_ratio=10.0))
        dx0, dy0, dx1, dy1 = FACADE_DOOR
        assert mask_strict.data[dy0 : dy1 + 1, dx0 : dx1 + 1].sum() == 0
        assert mask_loose.data[dy0 : dy1 + 1, dx0 : dx1 + 1].mean() > 0
