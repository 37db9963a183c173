//! Dataset cleaning filters over clip manifests: silence, stationary video,
//! speech word counts and audio-visual alignment scores, plus fixed-length
//! clip segmentation.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pano::{stationarity_verdict, Frame, StationarityParams};

/// One source clip as listed in a manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClipManifestEntry {
    pub id: String,
    pub audio_path: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frames_pattern: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fps: Option<f64>,
    pub duration: f64,
    pub sample_rate: u32,
    #[serde(default)]
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word_count: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alignment_score: Option<f64>,
}

impl ClipManifestEntry {
    pub fn new(
        id: impl Into<String>,
        audio_path: impl Into<String>,
        duration: f64,
        sample_rate: u32,
    ) -> Self {
        Self {
            id: id.into(),
            audio_path: audio_path.into(),
            frames_pattern: None,
            fps: None,
            duration,
            sample_rate,
            labels: Vec::new(),
            word_count: None,
            alignment_score: None,
        }
    }
}

pub const ALIGNMENT_DEFAULT: f64 = 1.0;
pub const ALIGNMENT_STRICT: f64 = 2.0;
pub const DEFAULT_FPS: f64 = 8.0;
pub const CLIP_SECONDS: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilterThresholds {
    pub silence_dbfs: f64,
    pub silence_ratio: f64,
    pub stationary_ratio: f64,
    pub max_words: u32,
    pub min_alignment: f64,
    pub window_ms: f64,
    /// Gap between compared frames.
    pub stationary_interval_s: f64,
    pub stationary_mse: f64,
}

impl Default for FilterThresholds {
    fn default() -> Self {
        Self {
            silence_dbfs: -35.0,
            silence_ratio: 0.90,
            stationary_ratio: 0.85,
            max_words: 5,
            min_alignment: ALIGNMENT_DEFAULT,
            window_ms: 20.0,
            stationary_interval_s: 1.0,
            stationary_mse: 1e-3,
        }
    }
}

impl FilterThresholds {
    /// Keeps only clips whose alignment score is at least 2.
    pub fn strict_alignment() -> Self {
        Self {
            min_alignment: ALIGNMENT_STRICT,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, r) in [
            ("silence_ratio", self.silence_ratio),
            ("stationary_ratio", self.stationary_ratio),
        ] {
            if !(0.0..=1.0).contains(&r) {
                return Err(Error::OutOfRange(format!("{name} {r} outside [0, 1]")));
            }
        }
        if !(self.window_ms > 0.0 && self.window_ms.is_finite()) {
            return Err(Error::OutOfRange("window_ms must be positive".into()));
        }
        if self.stationary_interval_s.is_nan()
            || self.stationary_interval_s <= 0.0
            || self.stationary_mse.is_nan()
            || self.stationary_mse < 0.0
        {
            return Err(Error::OutOfRange(
                "stationarity interval and threshold must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn stationarity(&self, fps: f64) -> StationarityParams {
        StationarityParams {
            interval: ((self.stationary_interval_s * fps).round() as usize).max(1),
            mse_threshold: self.stationary_mse,
            ratio_threshold: self.stationary_ratio,
        }
    }
}

/// Peak level of each non-overlapping window across all channels, in dBFS.
/// Silent windows report `-inf`; a trailing partial window is ignored.
pub fn window_dbfs(channels: &[&[f64]], window_ms: f64, sample_rate: u32) -> Result<Vec<f64>> {
    if window_ms * f64::from(sample_rate) < 1000.0 {
        return Err(Error::OutOfRange(format!(
            "{window_ms} ms at {sample_rate} Hz is shorter than one sample"
        )));
    }
    let win = (window_ms * f64::from(sample_rate) / 1000.0).round() as usize;
    let len = channels.first().map_or(0, |c| c.len());
    if let Some(bad) = channels.iter().find(|c| c.len() != len) {
        return Err(Error::LengthMismatch(len, bad.len()));
    }
    let n = len / win;
    if n == 0 {
        return Err(Error::EmptySignal);
    }
    Ok((0..n)
        .map(|k| {
            let peak = channels
                .iter()
                .flat_map(|c| &c[k * win..(k + 1) * win])
                .fold(0.0f64, |m, v| m.max(v.abs()));
            if peak == 0.0 {
                f64::NEG_INFINITY
            } else {
                20.0 * peak.log10()
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SilenceVerdict {
    pub silent: bool,
    pub ratio: f64,
    pub windows: usize,
}

pub fn silence_verdict(
    channels: &[&[f64]],
    sample_rate: u32,
    th: &FilterThresholds,
) -> Result<SilenceVerdict> {
    let levels = window_dbfs(channels, th.window_ms, sample_rate)?;
    let quiet = levels.iter().filter(|&&l| l < th.silence_dbfs).count();
    let ratio = quiet as f64 / levels.len() as f64;
    Ok(SilenceVerdict {
        silent: ratio > th.silence_ratio,
        ratio,
        windows: levels.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Keep,
    Remove,
}

pub fn speech_filter(entry: &ClipManifestEntry, max_words: u32) -> Result<Verdict> {
    let words = entry.word_count.ok_or_else(|| Error::MissingScore {
        id: entry.id.clone(),
        field: "word_count",
    })?;
    Ok(if words > max_words {
        Verdict::Remove
    } else {
        Verdict::Keep
    })
}

pub fn alignment_filter(entry: &ClipManifestEntry, min_alignment: f64) -> Result<Verdict> {
    let score = entry.alignment_score.ok_or_else(|| Error::MissingScore {
        id: entry.id.clone(),
        field: "alignment_score",
    })?;
    Ok(if score < min_alignment {
        Verdict::Remove
    } else {
        Verdict::Keep
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClipSpan {
    pub index: usize,
    pub start_s: f64,
    pub end_s: f64,
    pub start_sample: u64,
    pub end_sample: u64,
}

/// Consecutive 10 s spans; the remainder is dropped.
pub fn segment_clips(entry: &ClipManifestEntry) -> Result<Vec<ClipSpan>> {
    if !(entry.duration > 0.0 && entry.duration.is_finite()) {
        return Err(Error::OutOfRange(format!(
            "duration {} of {}",
            entry.duration, entry.id
        )));
    }
    let n = (entry.duration / CLIP_SECONDS).floor() as usize;
    let per_clip = (CLIP_SECONDS * f64::from(entry.sample_rate)).round() as u64;
    Ok((0..n)
        .map(|k| ClipSpan {
            index: k,
            start_s: k as f64 * CLIP_SECONDS,
            end_s: (k + 1) as f64 * CLIP_SECONDS,
            start_sample: k as u64 * per_clip,
            end_sample: (k as u64 + 1) * per_clip,
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Filter {
    Stationary,
    Silent,
    Speech,
    Alignment,
}

impl Filter {
    pub const ORDER: [Filter; 4] = [
        Filter::Stationary,
        Filter::Silent,
        Filter::Speech,
        Filter::Alignment,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Filter::Stationary => "stationary",
            Filter::Silent => "silent",
            Filter::Speech => "speech",
            Filter::Alignment => "alignment",
        }
    }
}

/// Source of the signals behind a manifest entry.
pub trait ClipProbe: Sync {
    /// Audio channels, or `None` when unavailable.
    fn audio(&self, entry: &ClipManifestEntry) -> Result<Option<Vec<Vec<f64>>>>;
    /// Video frames, or `None` when the entry has none.
    fn frames(&self, entry: &ClipManifestEntry) -> Result<Option<Vec<Frame>>>;
}

/// Reads `audio_path` as WAV and `frames_pattern` as a glob of frame files.
#[derive(Debug, Clone, Default)]
pub struct FsProbe {
    /// Prefix for relative paths.
    pub root: Option<std::path::PathBuf>,
}

impl FsProbe {
    fn resolve(&self, p: &str) -> String {
        match &self.root {
            Some(root) if !std::path::Path::new(p).is_absolute() => {
                root.join(p).display().to_string()
            }
            _ => p.to_string(),
        }
    }
}

impl ClipProbe for FsProbe {
    fn audio(&self, entry: &ClipManifestEntry) -> Result<Option<Vec<Vec<f64>>>> {
        let sig = crate::io::read_wav(self.resolve(&entry.audio_path))?;
        Ok(Some(
            sig.channels().into_iter().map(<[f64]>::to_vec).collect(),
        ))
    }

    fn frames(&self, entry: &ClipManifestEntry) -> Result<Option<Vec<Frame>>> {
        entry
            .frames_pattern
            .as_ref()
            .map(|p| crate::io::read_frame_sequence(&self.resolve(p)))
            .transpose()
    }
}

/// Outcome for a single entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntryOutcome {
    pub id: String,
    pub kept: bool,
    pub reasons: Vec<Filter>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct FilterReport {
    pub kept: Vec<String>,
    pub removed: BTreeMap<String, Vec<Filter>>,
    pub notes: BTreeMap<String, Vec<String>>,
    pub counts: BTreeMap<Filter, usize>,
    pub skipped: BTreeMap<Filter, usize>,
}

impl FilterReport {
    pub fn total(&self) -> usize {
        self.kept.len() + self.removed.len()
    }

    pub fn outcomes(&self) -> Vec<EntryOutcome> {
        let mut ids: Vec<&String> = self.kept.iter().chain(self.removed.keys()).collect();
        ids.sort();
        ids.into_iter()
            .map(|id| EntryOutcome {
                id: id.clone(),
                kept: !self.removed.contains_key(id),
                reasons: self.removed.get(id).cloned().unwrap_or_default(),
                notes: self.notes.get(id).cloned().unwrap_or_default(),
            })
            .collect()
    }

    /// One JSON record per entry.
    pub fn to_jsonl(&self) -> String {
        self.outcomes()
            .iter()
            .map(|o| serde_json::to_string(o).expect("plain data serializes") + "\n")
            .collect()
    }
}

impl fmt::Display for FilterReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<12} {:>8} {:>8}", "filter", "removed", "skipped")?;
        for filt in Filter::ORDER {
            writeln!(
                f,
                "{:<12} {:>8} {:>8}",
                filt.name(),
                self.counts.get(&filt).unwrap_or(&0),
                self.skipped.get(&filt).unwrap_or(&0)
            )?;
        }
        write!(f, "kept {} of {}", self.kept.len(), self.total())
    }
}

pub fn evaluate_entry(
    entry: &ClipManifestEntry,
    probe: &dyn ClipProbe,
    th: &FilterThresholds,
) -> Result<EntryOutcome> {
    let mut reasons = Vec::new();
    let mut notes = Vec::new();

    match probe.frames(entry)? {
        Some(frames) => {
            let params = th.stationarity(entry.fps.unwrap_or(DEFAULT_FPS));
            match stationarity_verdict(&frames, &params) {
                Ok(v) if v.stationary => reasons.push(Filter::Stationary),
                Ok(_) => {}
                Err(Error::TooFewFrames(n)) => {
                    notes.push(format!("stationary:skipped ({n} comparisons)"))
                }
                Err(e) => return Err(e),
            }
        }
        None => notes.push("stationary:skipped".into()),
    }

    match probe.audio(entry)? {
        Some(chans) => {
            let refs: Vec<&[f64]> = chans.iter().map(Vec::as_slice).collect();
            match silence_verdict(&refs, entry.sample_rate, th) {
                Ok(v) if v.silent => reasons.push(Filter::Silent),
                Ok(_) => {}
                Err(Error::EmptySignal) => notes.push("silent:skipped (no full window)".into()),
                Err(e) => return Err(e),
            }
        }
        None => notes.push("silent:skipped".into()),
    }

    for (filter, res) in [
        (Filter::Speech, speech_filter(entry, th.max_words)),
        (Filter::Alignment, alignment_filter(entry, th.min_alignment)),
    ] {
        match res {
            Ok(Verdict::Remove) => reasons.push(filter),
            Ok(Verdict::Keep) => {}
            Err(Error::MissingScore { .. }) => notes.push(format!("{}:unscored", filter.name())),
            Err(e) => return Err(e),
        }
    }

    Ok(EntryOutcome {
        id: entry.id.clone(),
        kept: reasons.is_empty(),
        reasons,
        notes,
    })
}

/// Evaluates every entry against every filter. Results are ordered by id.
pub fn run_pipeline(
    entries: &[ClipManifestEntry],
    probe: &dyn ClipProbe,
    th: &FilterThresholds,
) -> Result<FilterReport> {
    th.validate()?;
    let mut outcomes = entries
        .par_iter()
        .map(|e| evaluate_entry(e, probe, th))
        .collect::<Result<Vec<_>>>()?;
    outcomes.sort_by(|a, b| a.id.cmp(&b.id));

    let mut report = FilterReport::default();
    for o in outcomes {
        for r in &o.reasons {
            *report.counts.entry(*r).or_default() += 1;
        }
        for n in &o.notes {
            let name = n.split(':').next().unwrap_or_default();
            if let Some(f) = Filter::ORDER.iter().find(|f| f.name() == name) {
                *report.skipped.entry(*f).or_default() += 1;
            }
        }
        if !o.notes.is_empty() {
            report.notes.insert(o.id.clone(), o.notes);
        }
        if o.kept {
            report.kept.push(o.id);
        } else {
            report.removed.insert(o.id, o.reasons);
        }
    }
    Ok(report)
}
