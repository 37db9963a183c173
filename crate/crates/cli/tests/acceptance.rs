//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use foa360::cleaning::{
    run_pipeline, silence_verdict, speech_filter, ClipManifestEntry, ClipProbe, FilterThresholds,
    Verdict,
};
use foa360::conditioning::GlobalCond;
use foa360::flow::{
    cfg_velocity, cfm_loss, cfm_loss_value, leading_trailing_means, make_mask, masked_runs,
    sample_noise, train, CfgSpec, Condition, ConditionLayout, LossRegion, MaskSpec, MaskedLatent,
    SpanCount, TwoClassMixture, VelocityModel, DEFAULT_CFG_SCALE,
};
use foa360::foa::{estimate_doa, spatialize_mono, Direction, FoaSignal, MonoSignal};
use foa360::io::{
    decode_matrix, encode_matrix, format_manifest, parse_manifest, read_wav, write_wav,
    AudioSignal, Encoding, WavSpec,
};
use foa360::metrics::{frechet_distance, spatial_angle_error, theta_error, FeatureSet};
use foa360::pano::{
    erp_to_perspective, make_fov_cuts, stationarity_verdict, CameraSpec, CutPreset, Frame,
};
use foa360::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'a str, Box<dyn Fn() -> Outcome + 'a>);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    check(
        elapsed < limit,
        format!("{what} took {elapsed:?}, limit {limit:?}"),
    )
}

fn doa_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let (mut worst_theta, mut worst_phi) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let az = rng.random_range(-PI..PI);
        let el = rng.random_range(-(FRAC_PI_2 - 1e-3)..=(FRAC_PI_2 - 1e-3));
        let samples: Vec<f64> = (0..256).map(|_| rng.random_range(-1.0..1.0)).collect();
        let dir = Direction::new(az, el).map_err(|e| e.to_string())?;
        let mono = MonoSignal::new(samples, 16_000).map_err(|e| e.to_string())?;
        let est = estimate_doa(&spatialize_mono(&mono, dir)).map_err(|e| e.to_string())?;
        worst_theta = worst_theta.max(theta_error(az, est.azimuth()));
        worst_phi = worst_phi.max((el - est.elevation()).abs());
    }
    let elapsed = start.elapsed();
    check(worst_theta < 1e-9, format!("theta error {worst_theta:e}"))?;
    check(worst_phi < 1e-9, format!("phi error {worst_phi:e}"))?;
    within(elapsed, Duration::from_secs(1), "1000 round trips")?;
    Ok(format!(
        "max dtheta {worst_theta:.1e}, max dphi {worst_phi:.1e}, {elapsed:.2?}"
    ))
}

fn metric_identities() -> Outcome {
    let wrap = theta_error(0.0, 3.0 * PI / 2.0);
    check(
        wrap == FRAC_PI_2,
        format!("theta_error(0, 3pi/2) = {wrap:?}"),
    )?;
    let dir = |a, e| Direction::new(a, e).map_err(|e| e.to_string());
    let anti = spatial_angle_error(dir(0.0, 0.0)?, dir(PI, 0.0)?);
    check(
        (anti - PI).abs() < 1e-12,
        format!("antipodal angle {anti:?}"),
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let a = dir(
            rng.random_range(-PI..PI),
            rng.random_range(-FRAC_PI_2..FRAC_PI_2),
        )?;
        let b = dir(
            rng.random_range(-PI..PI),
            rng.random_range(-FRAC_PI_2..FRAC_PI_2),
        )?;
        let (u, v) = (a.unit_vector(), b.unit_vector());
        let dot: f64 = u.iter().zip(&v).map(|(x, y)| x * y).sum();
        worst = worst.max((spatial_angle_error(a, b) - dot.clamp(-1.0, 1.0).acos()).abs());
    }
    check(worst < 1e-9, format!("oracle disagreement {worst:e}"))?;
    Ok(format!(
        "wrap exact, antipode {:.1e} off, oracle max {worst:.1e}",
        (anti - PI).abs()
    ))
}

fn frechet_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let start = Instant::now();
    let a = sample_noise(50_000, 1, &mut rng);
    let b = sample_noise(50_000, 1, &mut rng).map(|v| v + 1.0);
    let fa = FeatureSet::new(a).map_err(|e| e.to_string())?;
    let fb = FeatureSet::new(b).map_err(|e| e.to_string())?;
    let fd = frechet_distance(&fa, &fb).map_err(|e| e.to_string())?;
    let same = frechet_distance(&fa, &fa).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check((fd - 1.0).abs() <= 0.05, format!("FD = {fd}"))?;
    check(same.abs() < 1e-8, format!("FD(a, a) = {same:e}"))?;
    within(elapsed, Duration::from_secs(5), "FD on 50k draws")?;
    Ok(format!("FD {fd:.4}, FD(a,a) {same:.1e}, {elapsed:.2?}"))
}

fn gradient_check() -> Outcome {
    const H: f64 = 1e-5;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    let mut checked = 0;
    for net in 0..20 {
        let dim = rng.random_range(1..=3);
        let frames = rng.random_range(3..=6);
        let layout = ConditionLayout {
            context: net % 2 == 0,
            global_dim: rng.random_range(0..=2),
        };
        let hidden: Vec<usize> = (0..rng.random_range(1..=2))
            .map(|_| rng.random_range(2..=6))
            .collect();
        let model =
            VelocityModel::new(dim, layout, &hidden, &mut rng).map_err(|e| e.to_string())?;
        let x0 = sample_noise(frames, dim, &mut rng);
        let x1 = sample_noise(frames, dim, &mut rng);
        let spec = MaskSpec {
            p_cond: 1.0,
            n_mask: SpanCount::Fixed(1),
            l_mask: 1,
        };
        let mask = make_mask(frames, &spec, &mut rng)
            .map_err(|e| e.to_string())?
            .mask;
        let cond = Condition {
            context: layout
                .context
                .then(|| MaskedLatent::new(x1.clone(), mask.clone()))
                .transpose()
                .map_err(|e| e.to_string())?,
            local: None,
            global: (layout.global_dim > 0).then(|| {
                GlobalCond(
                    (0..layout.global_dim)
                        .map(|_| rng.random_range(-1.0..1.0))
                        .collect(),
                )
            }),
        };
        let t = rng.random_range(0.05..0.95);
        let region = if layout.context {
            LossRegion::Masked(&mask)
        } else {
            LossRegion::All
        };
        let analytic = cfm_loss(&model, &x0, &x1, t, &cond, region)
            .map_err(|e| e.to_string())?
            .grads;
        let mut probe = model.clone();
        for (i, g) in analytic.iter().enumerate() {
            let p = probe.params()[i];
            probe.params_mut()[i] = p + H;
            let up =
                cfm_loss_value(&probe, &x0, &x1, t, &cond, region).map_err(|e| e.to_string())?;
            probe.params_mut()[i] = p - H;
            let down =
                cfm_loss_value(&probe, &x0, &x1, t, &cond, region).map_err(|e| e.to_string())?;
            probe.params_mut()[i] = p;
            let numeric = (up - down) / (2.0 * H);
            let rel = (g - numeric).abs() / g.abs().max(numeric.abs()).max(1e-6);
            worst = worst.max(rel);
            checked += 1;
        }
    }
    check(worst < 1e-4, format!("max relative error {worst:e}"))?;
    Ok(format!(
        "20 nets, {checked} parameters, max rel err {worst:.1e}"
    ))
}

fn flow_transport() -> Outcome {
    let fixture = TwoClassMixture::default();
    let start = Instant::now();
    let data = fixture.dataset(11).map_err(|e| e.to_string())?;
    let model = fixture.init_model(12).map_err(|e| e.to_string())?;
    let out = train(model, &data, &fixture.train_config()).map_err(|e| e.to_string())?;
    let (lead, trail) = leading_trailing_means(&out.losses, 100);
    let mut report = format!("loss {lead:.3} -> {trail:.3} (ratio {:.3})", trail / lead);
    let mut worst = 0.0f64;
    for class in 0..2 {
        let mean = fixture
            .sample_mean(&out.model, class, 1000, 50, 13 + class as u64)
            .map_err(|e| e.to_string())?;
        let target = fixture.means[class];
        let err = (mean[0] - target[0]).abs().max((mean[1] - target[1]).abs());
        worst = worst.max(err);
        report += &format!(", class {class} mean [{:.3}, {:.3}]", mean[0], mean[1]);
    }
    let elapsed = start.elapsed();
    check(
        trail < 0.1 * lead,
        format!("{report}: trailing loss not below 10% of leading"),
    )?;
    check(
        worst <= 0.2,
        format!("{report}: sample mean off by {worst:.3}"),
    )?;
    within(elapsed, Duration::from_secs(60), "training and sampling")?;
    Ok(format!("{report}, {elapsed:.2?}"))
}

fn cfg_contract(bin: &Path, dir: &Path) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let c = sample_noise(4, 3, &mut rng).map(|v| v * 1e3);
        let u = sample_noise(4, 3, &mut rng);
        let one = cfg_velocity(&c, &u, CfgSpec::new(1.0).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let zero = cfg_velocity(&c, &u, CfgSpec::new(0.0).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let bits = |m: &Matrix| m.as_slice().iter().map(|v| v.to_bits()).collect::<Vec<_>>();
        check(
            bits(&one) == bits(&c),
            "scale 1 differs from the conditional field",
        )?;
        check(
            bits(&zero) == bits(&u),
            "scale 0 differs from the unconditional field",
        )?;
    }
    check(
        DEFAULT_CFG_SCALE == 5.0 && CfgSpec::default().scale == 5.0,
        "library default scale is not 5",
    )?;

    let ckpt = dir.join("tiny.ckpt");
    run_cli(
        bin,
        &[
            "fm-train",
            "--steps",
            "3",
            "--seed",
            "1",
            "--out",
            ckpt.to_str().unwrap(),
        ],
    )?;
    let out = run_cli(
        bin,
        &["fm-sample", "--model", ckpt.to_str().unwrap(), "-n", "2"],
    )?;
    check(
        out.lines().any(|l| l == "cfg=5.0"),
        format!("fm-sample output lacks cfg=5.0:\n{out}"),
    )?;
    Ok("scale 1 and 0 bit-exact, fm-sample default cfg=5.0".into())
}

fn mask_statistics() -> Outcome {
    let spec = MaskSpec {
        p_cond: 0.1,
        n_mask: SpanCount::Fixed(3),
        l_mask: 2,
    };
    let frames = 48;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut partial = 0;
    for _ in 0..10_000 {
        let d = make_mask(frames, &spec, &mut rng).map_err(|e| e.to_string())?;
        if d.full {
            check(d.mask.iter().all(|&m| m), "full mask with visible frames")?;
            continue;
        }
        partial += 1;
        let runs = masked_runs(&d.mask);
        check(
            runs.len() == 3,
            format!("partial mask has {} spans", runs.len()),
        )?;
        check(
            runs.iter().all(|r| r.len() >= 2),
            format!("span shorter than l_mask: {runs:?}"),
        )?;
    }
    let frac = partial as f64 / 10_000.0;
    check(
        (frac - 0.1).abs() <= 0.01,
        format!("partial fraction {frac}"),
    )?;
    Ok(format!(
        "partial fraction {frac:.4}, all {partial} partial masks legal"
    ))
}

/// Synthetic clip behind a manifest entry: silent window count out of 50
/// and moving comparisons out of 10.
#[derive(Clone, Copy)]
struct ClipTruth {
    silent_windows: Option<usize>,
    moving: Option<usize>,
}

struct SyntheticProbe(std::collections::HashMap<String, ClipTruth>);

const SR: u32 = 8_000;
const WIN: usize = 160;

impl ClipProbe for SyntheticProbe {
    fn audio(&self, e: &ClipManifestEntry) -> foa360::Result<Option<Vec<Vec<f64>>>> {
        let Some(silent) = self.0[&e.id].silent_windows else {
            return Ok(None);
        };
        // quiet windows peak at -40 dBFS, loud ones at -6 dBFS
        let mut ch = Vec::with_capacity(50 * WIN);
        for w in 0..50 {
            let amp = if w < silent { 0.01 } else { 0.5 };
            ch.extend((0..WIN).map(|i| if i % 2 == 0 { amp } else { -amp }));
        }
        Ok(Some(vec![ch.clone(), ch.iter().map(|v| v * 0.5).collect()]))
    }

    fn frames(&self, e: &ClipManifestEntry) -> foa360::Result<Option<Vec<Frame>>> {
        let Some(moving) = self.0[&e.id].moving else {
            return Ok(None);
        };
        // 81 frames at 8 fps: 10 one-second comparisons, the first `moving` of them change
        let mut frames = Vec::new();
        for i in 0..81 {
            let level = ((i / 8).min(moving) % 2) as f32;
            frames.push(Frame::filled(2, 4, 1, level)?);
        }
        Ok(Some(frames))
    }
}

fn cleaning_thresholds() -> Outcome {
    let th = FilterThresholds::default();

    // 95 quiet windows, 5 full scale
    let mut sig = vec![0.0; 100 * 882];
    for (w, chunk) in sig.chunks_mut(882).enumerate() {
        let amp = if w < 95 { 0.01 } else { 1.0 };
        chunk.iter_mut().for_each(|v| *v = amp);
    }
    let v = silence_verdict(&[&sig], 44_100, &th).map_err(|e| e.to_string())?;
    check(
        v.silent && (v.ratio - 0.95).abs() < 1e-12,
        format!("silence ratio {} silent={}", v.ratio, v.silent),
    )?;

    // 81 frames at 8 fps: 10 comparisons, the last one moving
    let mut frames = vec![Frame::filled(2, 4, 3, 0.5).map_err(|e| e.to_string())?; 81];
    frames[80] = Frame::filled(2, 4, 3, 0.0).map_err(|e| e.to_string())?;
    let s = stationarity_verdict(&frames, &th.stationarity(8.0)).map_err(|e| e.to_string())?;
    check(
        s.comparisons == 10 && (s.ratio - 0.9).abs() < 1e-12 && s.stationary,
        format!("stationarity {s:?}"),
    )?;

    let mut e = ClipManifestEntry::new("w", "w.wav", 10.0, SR);
    e.word_count = Some(6);
    check(
        matches!(speech_filter(&e, th.max_words), Ok(Verdict::Remove)),
        "6 words not removed",
    )?;
    e.word_count = Some(5);
    check(
        matches!(speech_filter(&e, th.max_words), Ok(Verdict::Keep)),
        "5 words removed",
    )?;

    // 100 entries with known ground truth
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut entries = Vec::new();
    let mut truth = std::collections::HashMap::new();
    for i in 0..100 {
        let mut e =
            ClipManifestEntry::new(format!("clip{i:03}"), format!("clip{i:03}.wav"), 10.0, SR);
        e.word_count = rng.random_bool(0.8).then(|| rng.random_range(0..=9));
        e.alignment_score = rng
            .random_bool(0.8)
            .then(|| f64::from(rng.random_range(0..=12u32)) * 0.25);
        let t = ClipTruth {
            silent_windows: rng.random_bool(0.9).then(|| rng.random_range(40..=50)),
            moving: rng.random_bool(0.7).then(|| rng.random_range(0..=3)),
        };
        truth.insert(e.id.clone(), t);
        entries.push(e);
    }
    let entries = parse_manifest(&format_manifest(&entries)).map_err(|e| e.to_string())?;

    // oracle: integer comparisons on the generating labels
    let mut expected_kept = Vec::new();
    let mut expected_removed = 0;
    for e in &entries {
        let t = truth[&e.id];
        let silent = t.silent_windows.is_some_and(|s| s * 10 > 50 * 9);
        let stationary = t.moving.is_some_and(|m| (10 - m) * 100 > 10 * 85);
        let wordy = e.word_count.is_some_and(|w| w > 5);
        let misaligned = e.alignment_score.is_some_and(|s| s < 1.0);
        if silent || stationary || wordy || misaligned {
            expected_removed += 1;
        } else {
            expected_kept.push(e.id.clone());
        }
    }
    let report = run_pipeline(&entries, &SyntheticProbe(truth), &th).map_err(|e| e.to_string())?;
    check(
        report.kept == expected_kept,
        format!("kept {:?}\nexpected {expected_kept:?}", report.kept),
    )?;
    check(
        report.removed.len() == expected_removed,
        "removed count differs",
    )?;
    Ok(format!(
        "silence 0.95 flagged, stationary 0.9 flagged, words 6/5 remove/keep, manifest {} kept / {} removed match oracle",
        report.kept.len(),
        report.removed.len()
    ))
}

fn erp_geometry() -> Outcome {
    let constant = Frame::filled(64, 128, 3, 0.6).map_err(|e| e.to_string())?;
    for (yaw, pitch, hfov) in [
        (0.0, 0.0, 2.0),
        (1.3, -0.4, 1.0),
        (-2.9, 1.5, 2.9),
        (PI, -FRAC_PI_2, 0.5),
    ] {
        let cam = CameraSpec::new(yaw, pitch, hfov, 31, 17).map_err(|e| e.to_string())?;
        let out = erp_to_perspective(&constant, &cam).map_err(|e| e.to_string())?;
        check(
            out.data().iter().all(|&v| v == 0.6),
            format!("constant frame changed at yaw {yaw}"),
        )?;
    }

    let (w, h) = (1024, 512);
    let front =
        CameraSpec::new(0.0, 0.0, 120f64.to_radians(), 33, 21).map_err(|e| e.to_string())?;
    let (u, v) = front.erp_coords(10, 16, w, h);
    let (du, dv) = ((u - w as f64 / 2.0).abs(), (v - h as f64 / 2.0).abs());
    check(
        du <= 0.5 && dv <= 0.5,
        format!("front centre maps to ({u}, {v})"),
    )?;

    let back = CameraSpec { yaw: PI, ..front };
    let (u, v) = back.erp_coords(10, 16, w, h);
    let seam = u.min((w as f64 - u).abs());
    check(
        seam < 1e-9 && (v - h as f64 / 2.0).abs() < 1e-9,
        format!("rear centre maps to ({u}, {v})"),
    )?;
    // the two columns either side of the seam are blended
    let erp = Frame::from_fn(8, 16, 1, |_, c, _| match c {
        0 => 1.0,
        15 => 0.0,
        _ => 0.5,
    })
    .map_err(|e| e.to_string())?;
    let one = erp_to_perspective(
        &erp,
        &CameraSpec::new(PI, 0.0, 0.2, 1, 1).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    check(
        (one.data()[0] - 0.5).abs() < 1e-6,
        format!("seam sample {}", one.data()[0]),
    )?;

    let cuts = make_fov_cuts(&constant, CutPreset::SixCuts, 120f64.to_radians(), 16, 16)
        .map_err(|e| e.to_string())?;
    check(cuts.len() == 6, format!("6cuts gave {} frames", cuts.len()))?;
    Ok(format!(
        "constant exact, centre ({du:.2}, {dv:.2}) px off, seam {seam:.1e}, 6 cuts"
    ))
}

fn run_cli(bin: &Path, args: &[&str]) -> Result<String, String> {
    let out = Command::new(bin)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout).into_owned();
    if !out.status.success() {
        return Err(format!("{args:?} exited {:?}: {stdout}", out.status.code()));
    }
    Ok(stdout)
}

fn io_round_trips(bin: &Path, dir: &Path) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let grid = |rng: &mut ChaCha8Rng| -> Vec<f64> {
        (0..1000)
            .map(|_| f64::from(rng.random_range(-1.0f32..1.0)))
            .collect()
    };
    let foa = FoaSignal::new(
        grid(&mut rng),
        grid(&mut rng),
        grid(&mut rng),
        grid(&mut rng),
        48_000,
    )
    .map_err(|e| e.to_string())?;
    let path = dir.join("foa32.wav");
    let sig = AudioSignal::Foa(foa);
    let spec = WavSpec {
        channels: 4,
        sample_rate: 48_000,
        encoding: Encoding::Float32,
    };
    write_wav(&sig, &path, spec).map_err(|e| e.to_string())?;
    let back = read_wav(&path).map_err(|e| e.to_string())?;
    let bits = |s: &AudioSignal| {
        s.channels()
            .iter()
            .flat_map(|c| c.iter().map(|v| v.to_bits()))
            .collect::<Vec<_>>()
    };
    check(
        bits(&back) == bits(&sig),
        "float32 WAV round trip not bit-exact",
    )?;

    let m = Matrix::new(
        7,
        5,
        (0..35).map(|_| rng.random::<f64>() * 1e6 - 5e5).collect(),
    )
    .map_err(|e| e.to_string())?;
    let mb = decode_matrix(&encode_matrix(&m)).map_err(|e| e.to_string())?;
    check(
        mb.shape() == m.shape()
            && mb
                .as_slice()
                .iter()
                .zip(m.as_slice())
                .all(|(a, b)| a.to_bits() == b.to_bits()),
        "matrix container round trip not bit-exact",
    )?;

    let mono_path = dir.join("mono.wav");
    let mono = MonoSignal::new(
        (0..4800).map(|i| 0.5 * (i as f64 * 0.05).sin()).collect(),
        48_000,
    )
    .map_err(|e| e.to_string())?;
    let mono_spec = WavSpec {
        channels: 1,
        sample_rate: 48_000,
        encoding: Encoding::Float32,
    };
    write_wav(&AudioSignal::Mono(mono), &mono_path, mono_spec).map_err(|e| e.to_string())?;
    let out_path = dir.join("spatial.wav");
    run_cli(
        bin,
        &[
            "spatialize",
            "--theta",
            "90",
            "--degrees",
            "--encoding",
            "pcm16",
            mono_path.to_str().unwrap(),
            out_path.to_str().unwrap(),
        ],
    )?;
    let doa = run_cli(bin, &["doa", out_path.to_str().unwrap()])?;
    check(
        doa.lines().any(|l| l == "theta=90.000 phi=0.000"),
        format!("doa printed:\n{doa}"),
    )?;
    let value = |key: &str| -> Result<f64, String> {
        doa.lines()
            .find_map(|l| l.strip_prefix(key))
            .ok_or(format!("no {key} in output"))?
            .parse::<f64>()
            .map_err(|e| e.to_string())
    };
    let (theta, phi) = (value("theta_rad=")?, value("phi_rad=")?);
    check(
        (theta - FRAC_PI_2).abs() < 1e-6 && phi.abs() < 1e-6,
        format!("recovered theta {theta}, phi {phi}"),
    )?;
    Ok(format!(
        "WAV and matrix bit-exact, CLI pcm16 round trip off by {:.1e} rad",
        (theta - FRAC_PI_2).abs().max(phi.abs())
    ))
}

fn main() {
    let bin = Path::new(env!("CARGO_BIN_EXE_foa360"));
    let tmp = tempfile::tempdir().expect("temp dir");
    let criteria: Vec<Criterion> = vec![
        ("1 doa round trip", Box::new(doa_round_trip)),
        ("2 metric identities", Box::new(metric_identities)),
        ("3 frechet oracle", Box::new(frechet_oracle)),
        ("4 gradient correctness", Box::new(gradient_check)),
        ("5 flow-matching transport", Box::new(flow_transport)),
        ("6 cfg contract", Box::new(|| cfg_contract(bin, tmp.path()))),
        ("7 mask statistics", Box::new(mask_statistics)),
        ("8 cleaning thresholds", Box::new(cleaning_thresholds)),
        ("9 erp geometry", Box::new(erp_geometry)),
        (
            "10 io round trips",
            Box::new(|| io_round_trips(bin, tmp.path())),
        ),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
