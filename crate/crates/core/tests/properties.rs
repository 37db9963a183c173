use std::f64::consts::{FRAC_PI_2, PI};

use foa360::cleaning::{
    alignment_filter, run_pipeline, silence_verdict, speech_filter, ClipManifestEntry, ClipProbe,
    FilterThresholds, Verdict,
};
use foa360::conditioning::{pool_global, upsample_features};
use foa360::flow::{make_mask, masked_runs, MaskSpec, SpanCount};
use foa360::foa::{estimate_doa, spatialize_mono, Direction, MonoSignal};
use foa360::metrics::{
    frechet_distance, kl_divergence, spatial_angle_error, theta_error, FeatureSet, LabelDist,
};
use foa360::pano::{erp_to_perspective, frame_mse, CameraSpec, Frame};
use foa360::Matrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn direction() -> impl Strategy<Value = (f64, f64)> {
    (-PI + 1e-9..=PI, -FRAC_PI_2 + 1e-3..=FRAC_PI_2 - 1e-3)
}

fn signal() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 16..128)
        .prop_filter("needs energy", |v| v.iter().any(|x| x.abs() > 1e-3))
}

// great-circle angle from the cross and dot products
fn oracle_angle(a: Direction, b: Direction) -> f64 {
    let (u, v) = (a.unit_vector(), b.unit_vector());
    let cross = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    let dot: f64 = u.iter().zip(&v).map(|(x, y)| x * y).sum();
    cross.iter().map(|c| c * c).sum::<f64>().sqrt().atan2(dot)
}

proptest! {
    #[test]
    fn doa_inverts_encoding((az, el) in direction(), s in signal(), gain in 1e-3f64..1e3) {
        let dir = Direction::new(az, el).unwrap();
        let mono = MonoSignal::new(s.iter().map(|v| v * gain).collect(), 16_000).unwrap();
        let est = estimate_doa(&spatialize_mono(&mono, dir)).unwrap();
        prop_assert!(theta_error(az, est.azimuth()) < 1e-9);
        prop_assert!((el - est.elevation()).abs() < 1e-9);
    }

    #[test]
    fn encoding_is_linear(s in signal(), (az, el) in direction(), k in -4.0f64..4.0) {
        let dir = Direction::new(az, el).unwrap();
        let a = spatialize_mono(&MonoSignal::new(s.clone(), 8_000).unwrap(), dir);
        let b = spatialize_mono(&MonoSignal::new(s.iter().map(|v| k * v).collect(), 8_000).unwrap(), dir);
        for (ca, cb) in a.channels().iter().zip(b.channels()) {
            for (x, y) in ca.iter().zip(cb) {
                prop_assert!((k * x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn theta_error_is_a_circular_distance(a in -10.0f64..10.0, b in -10.0f64..10.0) {
        let d = theta_error(a, b);
        prop_assert!((0.0..=PI).contains(&d));
        prop_assert_eq!(d, theta_error(b, a));
    }

    #[test]
    fn spatial_angle_matches_vector_oracle((a1, e1) in direction(), (a2, e2) in direction()) {
        let (a, b) = (Direction::new(a1, e1).unwrap(), Direction::new(a2, e2).unwrap());
        let d = spatial_angle_error(a, b);
        prop_assert!((d - oracle_angle(a, b)).abs() < 1e-9);
        prop_assert!((d - spatial_angle_error(b, a)).abs() < 1e-15);
    }

    #[test]
    fn frechet_is_symmetric_and_non_negative(seed in any::<u64>(), shift in -3.0f64..3.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |offset: f64| {
            use rand_distr::{Distribution, StandardNormal};
            let data: Vec<f64> = (0..60).map(|i| { let z: f64 = StandardNormal.sample(&mut rng); z * (1.0 + (i % 3) as f64 * 0.1) + offset }).collect();
            FeatureSet::new(Matrix::new(20, 3, data).unwrap()).unwrap()
        };
        let (a, b) = (draw(0.0), draw(shift));
        let ab = frechet_distance(&a, &b).unwrap();
        let ba = frechet_distance(&b, &a).unwrap();
        prop_assert!(ab >= -1e-9);
        prop_assert!((ab - ba).abs() < 1e-8 * (1.0 + ab));
        prop_assert!(frechet_distance(&a, &a).unwrap().abs() < 1e-8);
    }

    #[test]
    fn kl_is_non_negative(p in prop::collection::vec(0.01f64..1.0, 2..8), q in prop::collection::vec(0.01f64..1.0, 8)) {
        let norm = |v: &[f64]| { let s: f64 = v.iter().sum(); LabelDist::new(v.iter().map(|x| x / s).collect()).unwrap() };
        let (p, q) = (norm(&p), norm(&q[..p.len()]));
        prop_assert!(kl_divergence(&p, &q).unwrap() >= -1e-12);
        prop_assert!(kl_divergence(&p, &p).unwrap().abs() < 1e-12);
    }

    #[test]
    fn upsampling_keeps_pooled_features(rows in 1usize..12, extra in 0usize..40, seed in any::<u64>()) {
        let f = foa360::conditioning::synth_features(seed, rows, 3, (seed % 5) as u32).unwrap();
        let up = upsample_features(&f, rows + extra).unwrap();
        prop_assert_eq!(up.rows(), rows + extra);
        prop_assert_eq!(pool_global(&up), pool_global(&f));
    }

    #[test]
    fn partial_masks_are_legal(frames in 8usize..80, n in 1usize..4, l in 1usize..4, seed in any::<u64>()) {
        let spec = MaskSpec { p_cond: 1.0, n_mask: SpanCount::Fixed(n), l_mask: l };
        prop_assume!(spec.check_fits(frames).is_ok());
        let d = make_mask(frames, &spec, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let runs = masked_runs(&d.mask);
        prop_assert!(!d.full);
        prop_assert_eq!(runs.len(), n);
        prop_assert!(runs.iter().all(|r| r.len() >= l));
        prop_assert_eq!(runs, d.spans);
    }

    #[test]
    fn constant_panorama_gives_constant_view(yaw in -7.0f64..7.0, pitch in -1.6f64..1.6, hfov in 0.1f64..3.0, value in 0.0f32..1.0) {
        let erp = Frame::filled(16, 32, 3, value).unwrap();
        let out = erp_to_perspective(&erp, &CameraSpec::new(yaw, pitch, hfov, 9, 7).unwrap()).unwrap();
        prop_assert!(out.data().iter().all(|&v| v == value));
    }

    #[test]
    fn yaw_wraps_pixel_exact(yaw in 0.0f64..0.5, pitch in -1.0f64..1.0) {
        let erp = Frame::from_fn(20, 40, 1, |r, c, _| ((r * 13 + c * 7) % 11) as f32 / 10.0).unwrap();
        let beyond = PI + yaw;
        let wrapped = beyond - 2.0 * PI;
        let a = erp_to_perspective(&erp, &CameraSpec::new(beyond, pitch, 1.2, 11, 9).unwrap()).unwrap();
        let b = erp_to_perspective(&erp, &CameraSpec::new(wrapped, pitch, 1.2, 11, 9).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn mirrored_panorama_mirrors_the_view(yaw in -3.0f64..3.0, pitch in -1.2f64..1.2) {
        let erp = Frame::from_fn(24, 48, 3, |r, c, ch| ((r * 5 + c * 3 + ch * 7) % 19) as f32 / 18.0).unwrap();
        let cam = CameraSpec::new(yaw, pitch, 1.7, 12, 10).unwrap();
        let a = erp_to_perspective(&erp, &cam).unwrap();
        let b = erp_to_perspective(&erp.mirrored(), &CameraSpec { yaw: -yaw, ..cam }).unwrap().mirrored();
        for (x, y) in a.data().iter().zip(b.data()) {
            prop_assert!((x - y).abs() < 1e-6);
        }
    }

    #[test]
    fn mse_is_a_squared_metric(seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut frame = || Frame::from_fn(3, 4, 1, |_, _, _| rng.random::<f32>()).unwrap();
        let (a, b) = (frame(), frame());
        prop_assert!(frame_mse(&a, &b).unwrap() > 0.0);
        prop_assert_eq!(frame_mse(&a, &b).unwrap(), frame_mse(&b, &a).unwrap());
        prop_assert_eq!(frame_mse(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn silence_is_monotone_in_threshold(levels in prop::collection::vec(0.0f64..1.0, 5..30), lo in -80.0f64..0.0, step in 0.0f64..40.0) {
        let signal: Vec<f64> = levels.iter().flat_map(|&l| std::iter::repeat_n(l * l * l, 160)).collect();
        let th = |db| FilterThresholds { silence_dbfs: db, ..FilterThresholds::default() };
        let a = silence_verdict(&[&signal], 8_000, &th(lo)).unwrap();
        let b = silence_verdict(&[&signal], 8_000, &th(lo + step)).unwrap();
        prop_assert!(b.ratio >= a.ratio);
    }

    #[test]
    fn filters_compose_by_intersection(words in prop::collection::vec(prop::option::of(0u32..10), 1..30), scores in prop::collection::vec(prop::option::of(0.0f64..3.0), 30)) {
        struct Blank;
        impl ClipProbe for Blank {
            fn audio(&self, _: &ClipManifestEntry) -> foa360::Result<Option<Vec<Vec<f64>>>> { Ok(None) }
            fn frames(&self, _: &ClipManifestEntry) -> foa360::Result<Option<Vec<Frame>>> { Ok(None) }
        }
        let entries: Vec<ClipManifestEntry> = words.iter().zip(&scores).enumerate().map(|(i, (w, s))| {
            let mut e = ClipManifestEntry::new(format!("c{i:03}"), "x.wav", 10.0, 8_000);
            e.word_count = *w;
            e.alignment_score = *s;
            e
        }).collect();
        let th = FilterThresholds::default();
        let report = run_pipeline(&entries, &Blank, &th).unwrap();
        let expected: Vec<String> = entries.iter().filter(|e| {
            !matches!(speech_filter(e, th.max_words), Ok(Verdict::Remove))
                && !matches!(alignment_filter(e, th.min_alignment), Ok(Verdict::Remove))
        }).map(|e| e.id.clone()).collect();
        prop_assert_eq!(&report.kept, &expected);
        prop_assert_eq!(report.total(), entries.len());
    }

    #[test]
    fn segments_tile_the_clip(duration in 0.01f64..200.0, rate in prop::sample::select(vec![16_000u32, 44_100, 48_000])) {
        let e = ClipManifestEntry::new("s", "s.wav", duration, rate);
        let spans = foa360::cleaning::segment_clips(&e).unwrap();
        prop_assert_eq!(spans.len(), (duration / 10.0).floor() as usize);
        for (k, s) in spans.iter().enumerate() {
            prop_assert_eq!(s.start_s, 10.0 * k as f64);
            prop_assert_eq!(s.end_sample - s.start_sample, 10 * u64::from(rate));
            if k > 0 {
                prop_assert_eq!(s.start_sample, spans[k - 1].end_sample);
            }
        }
    }
}
