import json
import math

import pytest
from skyshot.errors import InsufficientDataError, InvalidArgumentError
from skyshot.geometry import DEFAULT_CAMERA, EnuPoint, GeoOrigin, Pose, ground_footprint
from skyshot.scanplan import (
    CapturePoint,
    GridPass,
    ScanArea,
    ScanConfig,
    ScanLayer,
    ScanLeg,
    ScanPlan,
    estimate_image_count,
    generate_grid,
    layer_heights,
    plan_scan,
    recommended_base_height,
    spacing_from_overlap,
    verify_overlap,
    write_capture_manifest,
)
from skyshot.project import scan_bundle_from_dict, scan_bundle_to_dict


def make_config(**kwargs) -> ScanConfig:
    defaults = dict(avg_building_height_m=10.0, max_building_height_m=30.0)
    defaults.update(kwargs)
    return ScanConfig(**defaults)


class TestLayerHeights:
    def test_example_heights(self):
        config = make_config()
        assert layer_heights(config) == [20.0, 30.0, 50.0]

    def test_flat_scene_degenerate(self):
        config = ScanConfig()
        assert layer_heights(config) == [20.0, 20.0, 20.0]

    def test_random_configs_exact(self, rng):
        for _ in range(100):
            avg = rng.uniform(0, 60)
            maxi = avg + rng.uniform(0, 80)
            base = rng.uniform(5, 120)
            config = ScanConfig(base_height_m=base, avg_building_height_m=avg, max_building_height_m=maxi)
            assert layer_heights(config) == [base, base + avg, base + maxi]

    def test_rescaled_base_for_70mm_lens(self):
        from skyshot.geometry import CameraIntrinsics

        camera = CameraIntrinsics(sensor_width_mm=23.66, sensor_height_mm=13.3, focal_length_mm=70.0)
        base = recommended_base_height(camera)
        assert base == pytest.approx(40.0)
        config = ScanConfig(base_height_m=base)
        assert layer_heights(config)[0] == pytest.approx(40.0)

    def test_non_decreasing(self, rng):
        for _ in range(100):
            avg = rng.uniform(0, 50)
            config = ScanConfig(
                base_height_m=rng.uniform(5, 50),
                avg_building_height_m=avg,
                max_building_height_m=avg + rng.uniform(0, 50),
            )
            heights = layer_heights(config)
            assert heights == sorted(heights)

    def test_avg_above_max_rejected(self):
        with pytest.raises(InvalidArgumentError):
            ScanConfig(avg_building_height_m=30.0, max_building_height_m=10.0)


class TestSpacingFromOverlap:
    def test_example_cross_track(self):
        assert spacing_from_overlap(13.52, 0.7) == pytest.approx(4.056, abs=1e-12)

    def test_example_in_track(self):
        assert spacing_from_overlap(7.60, 0.8) == pytest.approx(1.52, abs=1e-12)

    def test_zero_overlap_keeps_extent(self):
        assert spacing_from_overlap(9.5, 0.0) == 9.5

    def test_rejects_full_overlap(self):
        with pytest.raises(InvalidArgumentError):
            spacing_from_overlap(10.0, 1.0)
        with pytest.raises(InvalidArgumentError):
            spacing_from_overlap(-1.0, 0.5)


class TestGenerateGrid:
    def test_three_legs_at_even_spacing(self):
        area = ScanArea(EnuPoint(0, 0, 0), 50.0, 50.0)
        legs = generate_grid(area, 25.0, "x")
        assert len(legs) == 3
        offsets = sorted({leg.start.north for leg in legs})
        assert offsets == [0.0, 25.0, 50.0]

    def test_oversized_spacing_gives_boundary_legs(self):
        area = ScanArea(EnuPoint(0, 0, 0), 50.0, 50.0)
        legs = generate_grid(area, 80.0, "x")
        assert len(legs) == 2
        assert {legs[0].start.north, legs[1].start.north} == {0.0, 50.0}

    def test_survey_spacing_gives_14_legs(self):
        area = ScanArea(EnuPoint(0, 0, 0), 50.0, 50.0)
        legs = generate_grid(area, 4.056, "x")
        assert len(legs) == 14

    def test_serpentine_alternation(self):
        area = ScanArea(EnuPoint(0, 0, 0), 40.0, 60.0)
        legs = generate_grid(area, 10.0, "y")
        for a, b in zip(legs, legs[1:]):
            assert a.heading_deg == pytest.approx((b.heading_deg + 180.0) % 360.0)
        # uniform spacing
        gaps = [abs(b.start.east - a.start.east) for a, b in zip(legs, legs[1:])]
        assert all(g == pytest.approx(gaps[0]) for g in gaps)


class TestPlanScan:
    def test_single_pass_counts_reference_survey(self):
        area = ScanArea(EnuPoint(0, 0, 0), 50.0, 50.0)
        config = ScanConfig(both_directions=False)
        plan = plan_scan(area, config)
        base = plan.layers[0]
        assert len(base.passes) == 1
        legs = base.passes[0].legs
        assert len(legs) == 14
        assert all(len(leg.captures) == 34 for leg in legs)
        assert base.capture_count() == 476

    def test_flat_scene_keeps_three_distinct_pitches(self):
        plan = plan_scan(ScanArea(EnuPoint(0, 0, 0), 50.0, 50.0), ScanConfig())
        assert [layer.height_m for layer in plan.layers] == [20.0, 20.0, 20.0]
        assert [layer.gimbal_pitch_deg for layer in plan.layers] == [35.0, 60.0, 85.0]

    def test_default_gimbal_assignment_lowest_to_highest(self):
        plan = plan_scan(ScanArea(EnuPoint(0, 0, 0), 30.0, 30.0), make_config())
        # ascending heights get 35/60/85
        assert [(layer.height_m, layer.gimbal_pitch_deg) for layer in plan.layers] == [
            (20.0, 35.0),
            (30.0, 60.0),
            (50.0, 85.0),
        ]

    def test_capture_poses_carry_pitch_and_leg_heading(self):
        plan = plan_scan(ScanArea(EnuPoint(0, 0, 0), 30.0, 30.0), make_config(both_directions=False))
        for layer in plan.layers:
            for leg in layer.legs:
                for capture in leg.captures:
                    assert capture.pose.gimbal_pitch_deg == layer.gimbal_pitch_deg
                    assert capture.pose.yaw_deg == leg.heading_deg

    def test_closed_form_image_count(self, rng):
        for _ in range(50):
            lx = rng.uniform(20, 200)
            ly = rng.uniform(20, 200)
            config = ScanConfig(
                base_height_m=rng.uniform(10, 60),
                avg_building_height_m=rng.uniform(0, 20),
                max_building_height_m=rng.uniform(20, 50),
                in_track_overlap=rng.uniform(0.0, 0.9),
                cross_track_overlap=rng.uniform(0.0, 0.9),
            )
            area = ScanArea(EnuPoint(0, 0, 0), lx, ly)
            plan = plan_scan(area, config)
            expected = 0
            for height in layer_heights(config):
                fp = ground_footprint(config.camera, height)
                din = fp.in_track_m * (1 - config.in_track_overlap)
                w1 = fp.cross_track_m * (1 - config.cross_track_overlap)
                # x pass then y pass
                expected += (math.ceil(lx / din) + 1) * (math.ceil(ly / w1) + 1)
                expected += (math.ceil(ly / din) + 1) * (math.ceil(lx / w1) + 1)
            assert plan.total_image_count == expected
            assert estimate_image_count(plan) == expected

    def test_all_captures_inside_area(self, rng):
        for _ in range(100):
            area = ScanArea(
                EnuPoint(rng.uniform(-200, 200), rng.uniform(-200, 200), 0.0),
                rng.uniform(15, 120),
                rng.uniform(15, 120),
                rotation_deg=rng.uniform(-180, 180),
            )
            config = ScanConfig(
                base_height_m=rng.uniform(10, 50),
                in_track_overlap=rng.uniform(0.3, 0.9),
                cross_track_overlap=rng.uniform(0.3, 0.9),
                both_directions=rng.random() < 0.5,
            )
            plan = plan_scan(area, config)
            for capture in plan.iter_captures():
                assert area.contains(capture.position, tol=1e-6)

    def test_deterministic_serialization(self):
        area = ScanArea(EnuPoint(3.0, -2.0, 0.0), 42.0, 77.0, rotation_deg=15.0)
        config = make_config()
        one = json.dumps(scan_bundle_to_dict(area, config, plan_scan(area, config)), sort_keys=True)
        two = json.dumps(scan_bundle_to_dict(area, config, plan_scan(area, config)), sort_keys=True)
        assert one == two

    def test_bundle_round_trip(self):
        area = ScanArea(EnuPoint(0, 0, 0), 25.0, 35.0, rotation_deg=-30.0)
        config = make_config()
        plan = plan_scan(area, config)
        data = json.loads(json.dumps(scan_bundle_to_dict(area, config, plan)))
        area2, config2, plan2 = scan_bundle_from_dict(data)
        assert area2 == area
        assert config2 == config
        assert plan2 == plan


class TestVerifyOverlap:
    def test_achieved_meets_requested(self, rng):
        for _ in range(40):
            area = ScanArea(EnuPoint(0, 0, 0), rng.uniform(20, 120), rng.uniform(20, 120))
            config = ScanConfig(
                in_track_overlap=rng.uniform(0.0, 0.9),
                cross_track_overlap=rng.uniform(0.0, 0.9),
                base_height_m=rng.uniform(10, 60),
            )
            plan = plan_scan(area, config)
            report = verify_overlap(plan, config.camera)
            for layer in report.layers:
                assert layer.min_in_track >= config.in_track_overlap - 1e-6
                assert layer.min_cross_track >= config.cross_track_overlap - 1e-6
                assert layer.min_in_track < 1.0
                assert layer.min_cross_track < 1.0

    def test_identical_points_full_overlap(self):
        position = EnuPoint(5.0, 5.0, 20.0)
        pose = Pose(position=position, yaw_deg=0.0, gimbal_pitch_deg=35.0)
        leg = ScanLeg(
            start=position,
            end=EnuPoint(5.0, 6.0, 20.0),
            heading_deg=0.0,
            captures=(CapturePoint(position, pose), CapturePoint(position, pose)),
        )
        layer = ScanLayer(
            height_m=20.0,
            gimbal_pitch_deg=35.0,
            cross_track_spacing_m=4.0,
            in_track_spacing_m=1.5,
            passes=(GridPass(direction="x", cross_spacing_m=4.0, in_spacing_m=1.5, legs=(leg,)),),
        )
        plan = ScanPlan(layers=(layer,), total_image_count=2)
        report = verify_overlap(plan, DEFAULT_CAMERA)
        assert report.layers[0].min_in_track == 1.0

    def test_low_overlap_warns_in_detail_mode(self):
        area = ScanArea(EnuPoint(0, 0, 0), 50.0, 50.0)
        config = ScanConfig(in_track_overlap=0.6)
        plan = plan_scan(area, config)
        detail = verify_overlap(plan, config.camera, "detail")
        assert detail.warnings
        assert not detail.ok
        landscape = verify_overlap(plan, config.camera, "landscape")
        assert landscape.warnings  # 0.6 is also below the 0.70 landscape bar

    def test_thresholds_fire_exactly_on_achieved_minimum(self):
        area = ScanArea(EnuPoint(0, 0, 0), 50.0, 50.0)
        fired = {"landscape": [], "detail": []}
        for requested in (0.3, 0.5, 0.65, 0.69, 0.72, 0.78, 0.82, 0.9):
            plan = plan_scan(area, ScanConfig(in_track_overlap=requested))
            for mode in ("landscape", "detail"):
                report = verify_overlap(plan, DEFAULT_CAMERA, mode)
                min_in = min(layer.min_in_track for layer in report.layers)
                assert bool(report.warnings) == (min_in < report.threshold)
                fired[mode].append(bool(report.warnings))
        # both modes must exercise the warning and the clean outcome
        assert True in fired["landscape"] and False in fired["landscape"]
        assert True in fired["detail"] and False in fired["detail"]

    def test_single_capture_leg_rejected(self):
        position = EnuPoint(0.0, 0.0, 20.0)
        pose = Pose(position=position, yaw_deg=0.0, gimbal_pitch_deg=35.0)
        leg = ScanLeg(start=position, end=EnuPoint(1, 0, 20), heading_deg=90.0, captures=(CapturePoint(position, pose),))
        layer = ScanLayer(
            height_m=20.0,
            gimbal_pitch_deg=35.0,
            cross_track_spacing_m=4.0,
            in_track_spacing_m=1.5,
            passes=(GridPass(direction="x", cross_spacing_m=4.0, in_spacing_m=1.5, legs=(leg,)),),
        )
        plan = ScanPlan(layers=(layer,), total_image_count=1)
        with pytest.raises(InsufficientDataError):
            verify_overlap(plan, DEFAULT_CAMERA)

    def test_rotated_area_keeps_guarantee(self, rng):
        for _ in range(10):
            area = ScanArea(EnuPoint(0, 0, 0), 60.0, 45.0, rotation_deg=rng.uniform(-90, 90))
            config = ScanConfig()
            report = verify_overlap(plan_scan(area, config), config.camera)
            for layer in report.layers:
                assert layer.min_in_track >= config.in_track_overlap - 1e-6
                assert layer.min_cross_track >= config.cross_track_overlap - 1e-6


class TestManifest:
    def test_columns_and_rows(self):
        area = ScanArea(EnuPoint(0, 0, 0), 20.0, 20.0)
        config = ScanConfig(both_directions=False)
        plan = plan_scan(area, config)
        text = write_capture_manifest(plan, GeoOrigin(latitude=45.0, longitude=7.0, altitude=10.0))
        lines = text.splitlines()
        assert lines[0] == "index,latitude,longitude,altitude_m,heading_deg,gimbal_pitch_deg"
        assert len(lines) == 1 + plan.total_image_count
        first = lines[1].split(",")
        assert first[0] == "0"
        assert float(first[3]) == pytest.approx(10.0 + 20.0, abs=1e-3)
