import numpy as np
import pytest

import spatialproc as sp
from spatialproc.errors import NoFeatureError
from spatialproc.geometry import CueConfig, estimate_cue_angle, isolate_cue, rotate, rotate_point

from synth import CUE_BALLS, cue_scene

CFG = CueConfig(line_votes=45)


class TestEstimateCueAngle:
    def test_horizontal_bar_is_zero(self):
        scene, _ = cue_scene(elev_deg=0.0)
        assert abs(estimate_cue_angle(scene, votes=CFG.line_votes)) <= 1.0

    def test_slanted_bar_recovered(self):
        scene, _ = cue_scene(elev_deg=51.5)
        angle = estimate_cue_angle(scene, votes=CFG.line_votes)
        assert abs(angle - 51.5) <= 1.0

    def test_mean_theta_conversion(self):
        # a detected normal angle of 38.5 degrees converts to 51.5
        scene, _ = cue_scene(elev_deg=51.5)
        angle = estimate_cue_angle(scene, votes=CFG.line_votes)
        assert angle == pytest.approx(90.0 - 38.5, abs=1.0)

    def test_blank_scene_raises_named_stage(self):
        cloth = sp.color_image(np.full((128, 128, 3), 60, np.uint8))
        with pytest.raises(NoFeatureError, match="cue-line detection"):
            estimate_cue_angle(cloth, votes=CFG.line_votes)

    def test_threshold_order(self):
        scene, _ = cue_scene()
        with pytest.raises(ValueError):
            estimate_cue_angle(scene, canny_lo=200, canny_hi=100)

    def test_requires_rgb(self):
        with pytest.raises(TypeError):
            estimate_cue_angle(sp.gray_image(np.zeros((32, 32), np.uint8)))


class TestIsolateCue:
    def test_full_scene(self):
        scene, bar_mask = cue_scene()
        angle = estimate_cue_angle(scene, CFG.canny_lo, CFG.canny_hi, CFG.line_votes)
        out = isolate_cue(scene, CFG)
        assert out.space is sp.ColorSpace.GRAY

        # every ball center must be zeroed, tracked through the rotation
        for bx, by in CUE_BALLS:
            px, py = rotate_point((bx, by), (scene.width, scene.height), -angle)
            assert out.data[int(round(py)), int(round(px))] == 0

        # bar pixels survive: compare against the bar mask pushed through
        # the same rotation
        ref = rotate(sp.gray_image((bar_mask * 255).astype(np.uint8)), -angle)
        ref_mask = ref.data > 127
        retained = ((out.data > 0) & ref_mask).sum() / ref_mask.sum()
        assert retained >= 0.95

    def test_output_below_cloth_peak_only_in_strip(self):
        scene, bar_mask = cue_scene()
        out = isolate_cue(scene, CFG)
        # suppressed pixels are exactly 0; everything else >= the threshold
        # except rotation boundary blending
        nonzero = out.data[out.data > 0]
        assert (nonzero >= 1).all()
        assert out.data.max() >= 200  # the bar survives bright

    def test_cloth_only_scene_fails_at_strip_stage(self):
        cloth = sp.color_image(np.full((256, 256, 3), 60, np.uint8))
        with pytest.raises(NoFeatureError):
            isolate_cue(cloth, CFG)

    def test_aligned_output_is_level(self):
        scene, _ = cue_scene()
        out = isolate_cue(scene, CFG)
        rgb = sp.convert_color(out, sp.ColorSpace.RGB)
        assert abs(estimate_cue_angle(rgb, votes=CFG.line_votes)) <= 1.5

    def test_requires_rgb(self):
        with pytest.raises(TypeError):
            isolate_cue(sp.gray_image(np.zeros((32, 32), np.uint8)), CFG)


class TestCueConfigDefaults:
    def test_reference_values(self):
        cfg = CueConfig()
        assert (cfg.canny_lo, cfg.canny_hi) == (100.0, 200.0)
        assert cfg.line_votes == 200
        assert (cfg.r_min, cfg.r_max) == (25, 33)
        assert cfg.cloth_peak == 49
