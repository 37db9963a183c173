//! `foa360` command-line tool.
//!
//! Results go to stdout as `key=value` lines. The resolved configuration and
//! any human-readable tables go to stderr. Failures print one
//! `error=<Name> message="..."` line and exit with status 1; malformed
//! invocations exit with status 2.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use foa360::cleaning::{run_pipeline, segment_clips, FilterThresholds, FsProbe, ALIGNMENT_STRICT};
use foa360::flow::{
    make_mask, write_loss_trace, CfgSpec, MaskSpec, SpanCount, TimeSampler, TrainConfig,
    TwoClassMixture, VelocityModel, DEFAULT_CFG_SCALE,
};
use foa360::foa::{estimate_doa, intensity_vector, spatialize_mono, stereo_to_foa, Direction};
use foa360::io::{
    read_frame, read_manifest, read_matrix, read_wav_with, write_frame, write_matrix_text,
    AudioSignal, BitDepth, Encoding, FoaOrder, WavSpec,
};
use foa360::metrics::{
    eval_doa_batch, frechet_distance, kl_divergence, multires_stft_distance, FeatureSet, LabelDist,
    StftConfig,
};
use foa360::pano::{make_fov_cuts, pad_to_square, CameraSpec, CutPreset, DEFAULT_HFOV_DEG};
use foa360::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "foa360",
    version,
    about = "Spatial audio and 360-degree frame toolkit"
)]
struct Cli {
    /// Worker threads for batch commands (0 = all cores)
    #[arg(long, global = true, env = "FOA360_JOBS", default_value_t = 0)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Encode a mono WAV into four-channel FOA at a fixed direction
    Spatialize(SpatializeArgs),
    /// Convert a stereo WAV to FOA (W = L + R, X = L - R)
    Stereo2foa(ConvertArgs),
    /// Estimate the direction of arrival of an FOA WAV
    Doa(DoaArgs),
    /// Mean direction errors over a list of (ground truth, estimate) WAV pairs
    EvalDoa(EvalDoaArgs),
    /// Frechet distance between two embedding matrices (one vector per row)
    EvalFd(PairArgs),
    /// Mean KL divergence between label distributions (one per row)
    EvalKl(PairArgs),
    /// Multi-resolution STFT distance between two FOA WAVs
    EvalStft(StftArgs),
    /// Perspective views cut from equirectangular frames
    CutFov(CutFovArgs),
    /// Pad a 2:1 equirectangular frame to a square
    PadErp(PadArgs),
    /// Run the cleaning filters over a clip manifest
    Clean(CleanArgs),
    /// Split manifest entries into 10 s clips
    Segment(SegmentArgs),
    /// Statistics of the span-mask sampler
    MaskStats(MaskStatsArgs),
    /// Train the flow-matching velocity model
    FmTrain(FmTrainArgs),
    /// Sample from a trained flow-matching model
    FmSample(FmSampleArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EncodingArg {
    Pcm16,
    Float32,
}

impl From<EncodingArg> for Encoding {
    fn from(e: EncodingArg) -> Self {
        match e {
            EncodingArg::Pcm16 => Encoding::Pcm16,
            EncodingArg::Float32 => Encoding::Float32,
        }
    }
}

#[derive(Debug, Args)]
struct OutputAudio {
    /// Sample encoding of the written file
    #[arg(long, value_enum, default_value_t = EncodingArg::Float32)]
    encoding: EncodingArg,
    /// Use AmbiX channel order (W, Y, Z, X) and SN3D scaling on disk
    #[arg(long)]
    ambix: bool,
}

#[derive(Debug, Args)]
struct SpatializeArgs {
    /// Azimuth, counter-clockwise from front (left positive)
    #[arg(long, allow_hyphen_values = true)]
    theta: f64,
    /// Elevation, up positive
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    phi: f64,
    /// Read --theta and --phi as degrees instead of radians
    #[arg(long)]
    degrees: bool,
    #[command(flatten)]
    output: OutputAudio,
    input: PathBuf,
    output_path: PathBuf,
}

#[derive(Debug, Args)]
struct ConvertArgs {
    #[command(flatten)]
    output: OutputAudio,
    input: PathBuf,
    output_path: PathBuf,
}

#[derive(Debug, Args)]
struct DoaArgs {
    /// Input file uses AmbiX order and scaling
    #[arg(long)]
    ambix: bool,
    input: PathBuf,
}

#[derive(Debug, Args)]
struct EvalDoaArgs {
    /// Input files use AmbiX order and scaling
    #[arg(long)]
    ambix: bool,
    /// Text file with one `ground_truth.wav estimate.wav` pair per line,
    /// paths relative to the list file
    pairs: PathBuf,
}

#[derive(Debug, Args)]
struct PairArgs {
    a: PathBuf,
    b: PathBuf,
}

#[derive(Debug, Args)]
struct StftArgs {
    /// Window sizes in samples
    #[arg(long, value_delimiter = ',', default_values_t = [512usize, 1024, 2048])]
    windows: Vec<usize>,
    /// Hop as a fraction of the window
    #[arg(long, default_value_t = 0.25)]
    hop: f64,
    #[arg(long)]
    ambix: bool,
    a: PathBuf,
    b: PathBuf,
}

#[derive(Debug, Args)]
struct CutFovArgs {
    /// View set: front, 2cuts, 4cuts or 6cuts
    #[arg(long, default_value = "front")]
    preset: String,
    /// Horizontal field of view in degrees
    #[arg(long, default_value_t = DEFAULT_HFOV_DEG)]
    hfov: f64,
    #[arg(long, default_value_t = 512)]
    width: usize,
    #[arg(long, default_value_t = 512)]
    height: usize,
    /// Write 16-bit PNGs
    #[arg(long)]
    sixteen_bit: bool,
    /// Output directory; files are named <stem>_<view>.png
    #[arg(long, short)]
    out_dir: PathBuf,
    /// Equirectangular frames (PNG or raw)
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct PadArgs {
    #[arg(long)]
    sixteen_bit: bool,
    input: PathBuf,
    output_path: PathBuf,
}

#[derive(Debug, Args)]
struct CleanArgs {
    /// Windows quieter than this peak level count as silent (dBFS)
    #[arg(long, default_value_t = -35.0, allow_hyphen_values = true)]
    silence_dbfs: f64,
    /// Clips with more silent windows than this fraction are removed
    #[arg(long, default_value_t = 0.90)]
    silence_ratio: f64,
    /// Clips with more stationary comparisons than this fraction are removed
    #[arg(long, default_value_t = 0.85)]
    stationary_ratio: f64,
    /// Clips with more detected words than this are removed
    #[arg(long, default_value_t = 5)]
    max_words: u32,
    /// Clips with an alignment score below this are removed
    #[arg(long, default_value_t = 1.0)]
    min_alignment: f64,
    /// Use the stricter alignment threshold of 2
    #[arg(long, conflicts_with = "min_alignment")]
    strict_alignment: bool,
    /// Silence analysis window in milliseconds
    #[arg(long, default_value_t = 20.0)]
    window_ms: f64,
    /// Seconds between compared frames
    #[arg(long, default_value_t = 1.0)]
    interval_s: f64,
    /// Frame pairs with MSE below this are stationary
    #[arg(long, default_value_t = 1e-3)]
    stationary_mse: f64,
    /// Base directory for relative paths in the manifest (default: its directory)
    #[arg(long)]
    root: Option<PathBuf>,
    /// Write per-entry results as JSON lines
    #[arg(long)]
    report: Option<PathBuf>,
    manifest: PathBuf,
}

#[derive(Debug, Args)]
struct SegmentArgs {
    manifest: PathBuf,
}

#[derive(Debug, Args)]
struct MaskStatsArgs {
    /// Latent frames per sequence
    #[arg(long, default_value_t = 64)]
    frames: usize,
    #[arg(long, default_value_t = 10_000)]
    draws: usize,
    /// Probability of a partial mask
    #[arg(long, default_value_t = 0.1)]
    p_cond: f64,
    /// Span count: a number, or MIN..MAX for a uniform draw
    #[arg(long, default_value = "1..3")]
    n_mask: String,
    /// Minimum span length in frames
    #[arg(long, default_value_t = 1)]
    l_mask: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Fixture {
    /// Two 2-D Gaussians selected by class
    Gmm2,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TimeArg {
    LogitNormal,
    Uniform,
}

#[derive(Debug, Args)]
struct FmTrainArgs {
    #[arg(long, value_enum, default_value_t = Fixture::Gmm2)]
    fixture: Fixture,
    #[arg(long, default_value_t = 6_000)]
    steps: usize,
    #[arg(long, default_value_t = 0.01)]
    lr: f64,
    #[arg(long, default_value_t = 64)]
    batch: usize,
    /// Hidden layer widths
    #[arg(long, value_delimiter = ',', default_values_t = [32usize, 32])]
    hidden: Vec<usize>,
    /// Probability of training on the null condition
    #[arg(long, default_value_t = 0.1)]
    cond_dropout: f64,
    /// Flow time distribution
    #[arg(long, value_enum, default_value_t = TimeArg::LogitNormal)]
    time: TimeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Checkpoint to write
    #[arg(long, short)]
    out: PathBuf,
    /// Write the per-step loss as CSV
    #[arg(long)]
    loss_trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FmSampleArgs {
    #[arg(long, value_enum, default_value_t = Fixture::Gmm2)]
    fixture: Fixture,
    /// Checkpoint written by fm-train
    #[arg(long)]
    model: PathBuf,
    /// Class to condition on
    #[arg(long, default_value_t = 0)]
    class: usize,
    #[arg(long, short, default_value_t = 1000)]
    n: usize,
    /// Euler steps
    #[arg(long, default_value_t = 50)]
    steps: usize,
    /// Classifier-free guidance scale
    #[arg(long, default_value_t = DEFAULT_CFG_SCALE)]
    cfg: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the samples as text, one per line
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    eprintln!("config: {cli:?}");
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
        {
            eprintln!("warning: could not size thread pool: {e}");
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            println!("error={} message={:?}", e.name(), e.to_string());
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Spatialize(a) => spatialize(a),
        Command::Stereo2foa(a) => stereo2foa(a),
        Command::Doa(a) => doa(a),
        Command::EvalDoa(a) => eval_doa(a),
        Command::EvalFd(a) => eval_fd(a),
        Command::EvalKl(a) => eval_kl(a),
        Command::EvalStft(a) => eval_stft(a),
        Command::CutFov(a) => cut_fov(a),
        Command::PadErp(a) => pad_erp(a),
        Command::Clean(a) => clean(a),
        Command::Segment(a) => segment(a),
        Command::MaskStats(a) => mask_stats(a),
        Command::FmTrain(a) => fm_train(a),
        Command::FmSample(a) => fm_sample(a),
    }
}

fn order(ambix: bool) -> FoaOrder {
    if ambix {
        FoaOrder::AmbiX
    } else {
        FoaOrder::Native
    }
}

fn write_audio(sig: &AudioSignal, path: &Path, out: &OutputAudio) -> Result<()> {
    let spec = WavSpec {
        channels: sig.channel_count(),
        sample_rate: sig.sample_rate(),
        encoding: out.encoding.into(),
    };
    foa360::io::write_wav_with(sig, path, spec, order(out.ambix))
}

fn read_foa(path: &Path, ambix: bool) -> Result<foa360::foa::FoaSignal> {
    match read_wav_with(path, order(ambix))? {
        AudioSignal::Foa(f) => Ok(f),
        other => Err(Error::InvalidArgument(format!(
            "{} has {} channels, expected 4",
            path.display(),
            other.channel_count()
        ))),
    }
}

fn spatialize(a: SpatializeArgs) -> Result<()> {
    let dir = if a.degrees {
        Direction::from_degrees(a.theta, a.phi)?
    } else {
        Direction::new(a.theta, a.phi)?
    };
    let AudioSignal::Mono(mono) = read_wav_with(&a.input, FoaOrder::Native)? else {
        return Err(Error::InvalidArgument(format!(
            "{} is not mono",
            a.input.display()
        )));
    };
    let foa = spatialize_mono(&mono, dir);
    write_audio(&foa.into(), &a.output_path, &a.output)?;
    println!("theta_rad={:?}", dir.azimuth());
    println!("phi_rad={:?}", dir.elevation());
    println!("samples={}", mono.len());
    Ok(())
}

fn stereo2foa(a: ConvertArgs) -> Result<()> {
    let AudioSignal::Stereo(st) = read_wav_with(&a.input, FoaOrder::Native)? else {
        return Err(Error::InvalidArgument(format!(
            "{} is not stereo",
            a.input.display()
        )));
    };
    let foa = stereo_to_foa(&st);
    write_audio(&foa.into(), &a.output_path, &a.output)?;
    println!("samples={}", st.len());
    Ok(())
}

fn doa(a: DoaArgs) -> Result<()> {
    let foa = read_foa(&a.input, a.ambix)?;
    let d = estimate_doa(&foa)?;
    println!(
        "theta={:.3} phi={:.3}",
        d.azimuth().to_degrees(),
        d.elevation().to_degrees()
    );
    println!("theta_rad={:?}", d.azimuth());
    println!("phi_rad={:?}", d.elevation());
    println!("intensity={:e}", intensity_vector(&foa).magnitude());
    Ok(())
}

fn eval_doa(a: EvalDoaArgs) -> Result<()> {
    let text = fs::read_to_string(&a.pairs).map_err(|e| Error::Io {
        path: a.pairs.clone(),
        source: e,
    })?;
    let base = a.pairs.parent().unwrap_or(Path::new("."));
    let mut paths = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [gt, est] = parts[..] else {
            return Err(Error::Parse {
                location: format!("{}:{}", a.pairs.display(), i + 1),
                message: "expected two paths".into(),
            });
        };
        paths.push((base.join(gt), base.join(est)));
    }
    let pairs = paths
        .par_iter()
        .map(|(g, e)| Ok((read_foa(g, a.ambix)?, read_foa(e, a.ambix)?)))
        .collect::<Result<Vec<_>>>()?;
    let report = eval_doa_batch(&pairs)?;
    let m = report.mean;
    println!("d_theta={:.3}", m.d_theta.to_degrees());
    println!("d_phi={:.3}", m.d_phi.to_degrees());
    println!("d_angular={:.3}", m.d_angular.to_degrees());
    println!("d_angular_rad={:?}", m.d_angular);
    println!("evaluated={}", report.evaluated);
    println!("excluded={}", report.excluded);
    Ok(())
}

fn eval_fd(a: PairArgs) -> Result<()> {
    let fa = FeatureSet::new(read_matrix(&a.a)?)?;
    let fb = FeatureSet::new(read_matrix(&a.b)?)?;
    println!("fd={:?}", frechet_distance(&fa, &fb)?);
    Ok(())
}

fn eval_kl(a: PairArgs) -> Result<()> {
    let p = read_matrix(&a.a)?;
    let q = read_matrix(&a.b)?;
    if p.rows() != q.rows() {
        return Err(Error::LengthMismatch(p.rows(), q.rows()));
    }
    let mut total = 0.0;
    for (pr, qr) in p.iter_rows().zip(q.iter_rows()) {
        total += kl_divergence(&LabelDist::new(pr.to_vec())?, &LabelDist::new(qr.to_vec())?)?;
    }
    println!("kl={:?}", total / p.rows() as f64);
    println!("rows={}", p.rows());
    Ok(())
}

fn eval_stft(a: StftArgs) -> Result<()> {
    let cfg = StftConfig {
        window_sizes: a.windows,
        hop_fraction: a.hop,
        ..StftConfig::default()
    };
    let d = multires_stft_distance(&read_foa(&a.a, a.ambix)?, &read_foa(&a.b, a.ambix)?, &cfg)?;
    println!("stft={d:?}");
    Ok(())
}

fn cut_fov(a: CutFovArgs) -> Result<()> {
    let preset: CutPreset = a.preset.parse()?;
    CameraSpec::new(0.0, 0.0, a.hfov.to_radians(), a.width, a.height)?;
    fs::create_dir_all(&a.out_dir).map_err(|e| Error::Io {
        path: a.out_dir.clone(),
        source: e,
    })?;
    let depth = if a.sixteen_bit {
        BitDepth::Sixteen
    } else {
        BitDepth::Eight
    };
    let written = a
        .inputs
        .par_iter()
        .map(|input| {
            let erp = read_frame(input)?;
            let views = make_fov_cuts(&erp, preset, a.hfov.to_radians(), a.width, a.height)?;
            let stem = input
                .file_stem()
                .map_or_else(|| "frame".into(), |s| s.to_string_lossy().into_owned());
            for (k, v) in views.iter().enumerate() {
                write_frame(
                    v,
                    a.out_dir.join(format!("{stem}_{}{k}.png", preset.name())),
                    depth,
                )?;
            }
            Ok(views.len())
        })
        .collect::<Result<Vec<_>>>()?;
    println!("frames={}", a.inputs.len());
    println!("views={}", written.iter().sum::<usize>());
    println!("preset={}", preset.name());
    Ok(())
}

fn pad_erp(a: PadArgs) -> Result<()> {
    let sq = pad_to_square(&read_frame(&a.input)?)?;
    let depth = if a.sixteen_bit {
        BitDepth::Sixteen
    } else {
        BitDepth::Eight
    };
    write_frame(&sq, &a.output_path, depth)?;
    println!("height={}", sq.height());
    println!("width={}", sq.width());
    Ok(())
}

fn clean(a: CleanArgs) -> Result<()> {
    let th = FilterThresholds {
        silence_dbfs: a.silence_dbfs,
        silence_ratio: a.silence_ratio,
        stationary_ratio: a.stationary_ratio,
        max_words: a.max_words,
        min_alignment: if a.strict_alignment {
            ALIGNMENT_STRICT
        } else {
            a.min_alignment
        },
        window_ms: a.window_ms,
        stationary_interval_s: a.interval_s,
        stationary_mse: a.stationary_mse,
    };
    eprintln!("thresholds: {th:?}");
    let entries = read_manifest(&a.manifest)?;
    let root = a
        .root
        .or_else(|| a.manifest.parent().map(Path::to_path_buf));
    let report = run_pipeline(&entries, &FsProbe { root }, &th)?;
    if let Some(path) = &a.report {
        fs::write(path, report.to_jsonl()).map_err(|e| Error::Io {
            path: path.clone(),
            source: e,
        })?;
    }
    eprintln!("{report}");
    println!("entries={}", report.total());
    println!("kept={}", report.kept.len());
    println!("removed={}", report.removed.len());
    for f in foa360::cleaning::Filter::ORDER {
        println!(
            "removed_{}={}",
            f.name(),
            report.counts.get(&f).unwrap_or(&0)
        );
    }
    Ok(())
}

fn segment(a: SegmentArgs) -> Result<()> {
    let entries = read_manifest(&a.manifest)?;
    let mut total = 0;
    for e in &entries {
        for s in segment_clips(e)? {
            println!(
                "clip={}:{} start_s={} end_s={} start_sample={} end_sample={}",
                e.id, s.index, s.start_s, s.end_s, s.start_sample, s.end_sample
            );
            total += 1;
        }
    }
    println!("clips={total}");
    Ok(())
}

fn parse_span_count(s: &str) -> Result<SpanCount> {
    let bad = || Error::InvalidArgument(format!("span count {s:?} is not N or MIN..MAX"));
    match s.split_once("..") {
        Some((lo, hi)) => Ok(SpanCount::Uniform {
            min: lo.trim().parse().map_err(|_| bad())?,
            max: hi.trim().parse().map_err(|_| bad())?,
        }),
        None => Ok(SpanCount::Fixed(s.trim().parse().map_err(|_| bad())?)),
    }
}

fn mask_stats(a: MaskStatsArgs) -> Result<()> {
    use rand::SeedableRng;
    let spec = MaskSpec {
        p_cond: a.p_cond,
        n_mask: parse_span_count(&a.n_mask)?,
        l_mask: a.l_mask,
    };
    spec.check_fits(a.frames)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(a.seed);
    let (mut partial, mut spans, mut hidden) = (0usize, 0usize, 0usize);
    for _ in 0..a.draws {
        let d = make_mask(a.frames, &spec, &mut rng)?;
        if !d.full {
            partial += 1;
            spans += d.spans.len();
            hidden += d.mask.iter().filter(|&&m| m).count();
        }
    }
    let per_partial = |v: usize| {
        if partial == 0 {
            0.0
        } else {
            v as f64 / partial as f64
        }
    };
    println!("draws={}", a.draws);
    println!(
        "partial_fraction={:?}",
        partial as f64 / a.draws.max(1) as f64
    );
    println!("mean_spans={:?}", per_partial(spans));
    println!("mean_hidden_frames={:?}", per_partial(hidden));
    Ok(())
}

fn fm_train(a: FmTrainArgs) -> Result<()> {
    let Fixture::Gmm2 = a.fixture;
    let fixture = TwoClassMixture {
        hidden: a.hidden.clone(),
        ..TwoClassMixture::default()
    };
    let data = fixture.dataset(a.seed)?;
    let model = fixture.init_model(a.seed)?;
    let cfg = TrainConfig {
        learning_rate: a.lr,
        batch_size: a.batch,
        steps: a.steps,
        seed: a.seed,
        time_sampler: match a.time {
            TimeArg::LogitNormal => TimeSampler::default(),
            TimeArg::Uniform => TimeSampler::Uniform,
        },
        cond_dropout: a.cond_dropout,
        ..fixture.train_config()
    };
    eprintln!("train config: {cfg:?}");
    let out = foa360::flow::train(model, &data, &cfg)?;
    out.model.save(&a.out)?;
    if let Some(path) = &a.loss_trace {
        let file = fs::File::create(path).map_err(|e| Error::Io {
            path: path.clone(),
            source: e,
        })?;
        write_loss_trace(&out.losses, std::io::BufWriter::new(file)).map_err(|e| Error::Io {
            path: path.clone(),
            source: e,
        })?;
    }
    let (lead, trail) = foa360::flow::leading_trailing_means(&out.losses, 100);
    println!("steps={}", out.losses.len());
    println!("params={}", out.model.param_count());
    println!(
        "final_loss={:?}",
        out.losses.last().copied().unwrap_or(f64::NAN)
    );
    println!("leading_loss={lead:?}");
    println!("trailing_loss={trail:?}");
    println!("checkpoint={}", a.out.display());
    Ok(())
}

fn fm_sample(a: FmSampleArgs) -> Result<()> {
    let Fixture::Gmm2 = a.fixture;
    let fixture = TwoClassMixture::default();
    if a.class > 1 {
        return Err(Error::OutOfRange(format!(
            "class {} (fixture has classes 0 and 1)",
            a.class
        )));
    }
    let model = VelocityModel::load(&a.model)?;
    if model.layout() != fixture.layout() || model.latent_dim() != 2 {
        return Err(Error::SpecMismatch(
            "checkpoint does not match the fixture layout".into(),
        ));
    }
    let samples = fixture.sample(&model, a.class, a.n, a.steps, CfgSpec::new(a.cfg)?, a.seed)?;
    if let Some(path) = &a.out {
        write_matrix_text(&samples, path)?;
    }
    let mean = samples.column_means();
    println!("n={}", a.n);
    println!("cfg={:?}", a.cfg);
    println!("mean_0={:?}", mean[0]);
    println!("mean_1={:?}", mean[1]);
    Ok(())
}
