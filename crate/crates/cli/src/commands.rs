use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use gaborfeat::io::{
    format_csv_matrix, read_csv_matrix, read_htk, read_labels, read_phone_list, read_wav,
};
use gaborfeat::{
    class_centroids, combine_features, extract_features, log_mel_spectrogram, normalize_features,
    rcm_order, similarity_matrix, threshold_matrix, CombinationPart, CombinationSpec,
    FeatureMatrix, FilterbankSpec, LabelSegment, LabelTrack, Subgroup,
};
use ndarray::{concatenate, Axis};
use rayon::prelude::*;

use crate::args::{Cli, Command, ExtractArgs, SimilarityArgs, SubgroupArg};
use crate::config::{ConfigFile, FeatureKind, OutputFormat, PipelineConfig};
use crate::output::{encode_features, write_atomic};
use crate::UsageError;

const DEFAULT_THRESHOLD_DEG: f64 = 45.0;

pub fn dispatch(cli: Cli) -> Result<()> {
    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    match cli.command {
        Command::Melspec(common) => extract(&file, common, |_| Ok(FeatureKind::Mfsc)),
        Command::Gbfb { common, subgroup } => extract(&file, common, |_| {
            Ok(FeatureKind::Gabor(resolve_subgroup(&file, subgroup)?))
        }),
        Command::Combine {
            common,
            parts,
            seed,
        } => extract(&file, common, |cfg_seed| {
            let text = file.resolve(parts, "parts")?.ok_or_else(|| {
                UsageError("combine needs --parts (e.g. htm,zeros:202 or zhtm)".into())
            })?;
            let seed = file.resolve(seed, "seed")?.unwrap_or(cfg_seed);
            let spec = CombinationSpec::preset(&text, seed)
                .map_or_else(|| CombinationSpec::parse(&text, seed), Ok)
                .map_err(|e| UsageError(e.to_string()))?;
            Ok(FeatureKind::Combination(spec))
        }),
        Command::Similarity(args) => similarity(&file, args),
        Command::FilterDump { out_dir, subgroup } => filter_dump(&file, &out_dir, subgroup),
        Command::Info => info(&file),
    }
}

fn resolve_subgroup(file: &ConfigFile, flag: Option<SubgroupArg>) -> Result<Subgroup, UsageError> {
    if let Some(g) = flag {
        return Ok(g.into());
    }
    file.resolve::<String>(None, "subgroup")?
        .map_or(Ok(Subgroup::Full), |s| {
            s.parse()
                .map_err(|e: gaborfeat::Error| UsageError(e.to_string()))
        })
}

fn pipeline_config(
    file: &ConfigFile,
    common: &ExtractArgs,
    features: impl FnOnce(u64) -> Result<FeatureKind, UsageError>,
) -> Result<PipelineConfig, UsageError> {
    let seed = file.resolve::<u64>(None, "seed")?.unwrap_or(0);
    let mut cfg = PipelineConfig::new(features(seed)?);
    cfg.seed = seed;
    let flag_format = common.format.map(|f| match f {
        crate::args::FormatArg::Htk => OutputFormat::Htk,
        crate::args::FormatArg::Csv => OutputFormat::Csv,
    });
    cfg.format = match file.resolve(flag_format, "format")? {
        Some(f) => f,
        None if has_extension(&common.output, "csv") => OutputFormat::Csv,
        None => OutputFormat::Htk,
    };
    if let Some(j) = file.resolve(common.jobs, "jobs")? {
        cfg.jobs = j;
    }
    if let Some(floor) = file.resolve(common.energy_floor, "energy_floor")? {
        cfg.mel.energy_floor = floor;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn has_extension(path: &Path, ext: &str) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case(ext))
}

/// Filterbanks needed by the configuration, keyed by subgroup.
fn filterbanks(cfg: &PipelineConfig) -> Result<HashMap<Subgroup, FilterbankSpec>, UsageError> {
    let groups = match &cfg.features {
        FeatureKind::Mfsc => vec![],
        FeatureKind::Gabor(g) => vec![*g],
        FeatureKind::Combination(spec) => spec.subgroups(),
    };
    groups
        .into_iter()
        .map(|g| {
            FilterbankSpec::build(&cfg.gfb, g)
                .map(|fb| (g, fb))
                .map_err(|e| UsageError(e.to_string()))
        })
        .collect()
}

/// Output path for each input: the `-o` path itself for a single input file,
/// otherwise `<dir>/<stem>.<ext>`.
fn output_paths(
    inputs: &[PathBuf],
    output: &Path,
    format: OutputFormat,
) -> Result<Vec<PathBuf>, UsageError> {
    if inputs.len() == 1 && !output.is_dir() {
        return Ok(vec![output.to_path_buf()]);
    }
    if output.exists() && !output.is_dir() {
        return Err(UsageError(format!(
            "{} inputs need an output directory, but {} is a file",
            inputs.len(),
            output.display()
        )));
    }
    let mut seen = HashSet::new();
    inputs
        .iter()
        .map(|input| {
            let stem = input
                .file_stem()
                .ok_or_else(|| UsageError(format!("input {} has no file name", input.display())))?;
            let path = output.join(stem).with_extension(format.extension());
            if !seen.insert(path.clone()) {
                return Err(UsageError(format!(
                    "two inputs would both write {}; rename one of them",
                    path.display()
                )));
            }
            Ok(path)
        })
        .collect()
}

fn compute_features(
    wav: &Path,
    cfg: &PipelineConfig,
    banks: &HashMap<Subgroup, FilterbankSpec>,
) -> Result<FeatureMatrix> {
    let signal = read_wav(wav)?;
    if signal.sample_rate_hz() != cfg.mel.sample_rate_hz {
        bail!(
            "sample rate is {} Hz; resample to {} Hz first",
            signal.sample_rate_hz(),
            cfg.mel.sample_rate_hz
        );
    }
    let spec = log_mel_spectrogram(&signal, &cfg.mel)?;
    Ok(match &cfg.features {
        FeatureKind::Mfsc => gaborfeat::extract::mfsc_features(&spec)?,
        FeatureKind::Gabor(g) => extract_features(&spec, &banks[g])?,
        FeatureKind::Combination(combo) => {
            let parts = banks
                .iter()
                .map(|(&g, fb)| Ok((g, extract_features(&spec, fb)?)))
                .collect::<gaborfeat::Result<HashMap<_, _>>>()?;
            combine_features(spec.frames(), combo, &parts)?
        }
    })
}

fn extract(
    file: &ConfigFile,
    common: ExtractArgs,
    features: impl FnOnce(u64) -> Result<FeatureKind, UsageError>,
) -> Result<()> {
    let cfg = pipeline_config(file, &common, features)?;
    let banks = filterbanks(&cfg)?;
    let outputs = output_paths(&common.inputs, &common.output, cfg.format)?;
    if common.inputs.len() > 1 {
        std::fs::create_dir_all(&common.output).with_context(|| {
            format!("cannot create output directory {}", common.output.display())
        })?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .context("cannot start worker threads")?;
    let results: Vec<Result<()>> = pool.install(|| {
        common
            .inputs
            .par_iter()
            .zip(outputs.par_iter())
            .map(|(input, out)| {
                let m = compute_features(input, &cfg, &banks)?;
                write_atomic(out, &encode_features(&m, cfg.format)?)
            })
            .collect()
    });
    let mut failed = 0;
    for (input, result) in common.inputs.iter().zip(results) {
        if let Err(e) = result {
            failed += 1;
            let msg = crate::describe(&e);
            let name = input.display().to_string();
            if msg.starts_with(&name) {
                eprintln!("error: {msg}");
            } else {
                eprintln!("error: {name}: {msg}");
            }
        }
    }
    if failed > 0 {
        bail!("{failed} of {} input files failed", common.inputs.len());
    }
    Ok(())
}

fn read_feature_file(path: &Path) -> Result<FeatureMatrix> {
    if has_extension(path, "csv") {
        let csv = read_csv_matrix(path)?;
        Ok(FeatureMatrix::from_values(csv.values, 0.01)?)
    } else {
        Ok(read_htk(path)?)
    }
}

fn similarity(file: &ConfigFile, args: SimilarityArgs) -> Result<()> {
    if args.features.len() != args.labels.len() {
        return Err(UsageError(format!(
            "got {} --features files but {} --labels files; pass one label file per feature file",
            args.features.len(),
            args.labels.len()
        ))
        .into());
    }
    let angle = file
        .resolve(args.threshold_deg, "threshold_deg")?
        .unwrap_or(DEFAULT_THRESHOLD_DEG);
    if !(angle > 0.0 && angle < 180.0) {
        return Err(
            UsageError(format!("--threshold-deg must lie in (0, 180), got {angle}")).into(),
        );
    }
    let normalize = !args.no_normalize && file.resolve::<bool>(None, "normalize")?.unwrap_or(true);

    let phones = read_phone_list(&args.phones)?;
    let mut blocks = Vec::with_capacity(args.features.len());
    let mut segments = Vec::new();
    let mut offset = 0;
    for (fpath, lpath) in args.features.iter().zip(&args.labels) {
        let m = read_feature_file(fpath).with_context(|| format!("reading {}", fpath.display()))?;
        let labels = read_labels(lpath).with_context(|| format!("reading {}", lpath.display()))?;
        if labels.end_frame() > m.frames() {
            bail!(
                "{} labels frames up to {}, but {} has only {} frames",
                lpath.display(),
                labels.end_frame(),
                fpath.display(),
                m.frames()
            );
        }
        if let Some(first) = blocks.first() {
            let first: &FeatureMatrix = first;
            if first.dim() != m.dim() {
                bail!(
                    "{} has {} dimensions, {} has {}",
                    args.features[0].display(),
                    first.dim(),
                    fpath.display(),
                    m.dim()
                );
            }
        }
        segments.extend(labels.segments().iter().map(|s| LabelSegment {
            start: s.start + offset,
            end: s.end + offset,
            phoneme: s.phoneme.clone(),
        }));
        offset += m.frames();
        blocks.push(m);
    }
    let views: Vec<_> = blocks.iter().map(|m| m.values().view()).collect();
    let pooled =
        FeatureMatrix::from_values(concatenate(Axis(0), &views)?, blocks[0].frame_shift_s())?;
    let pooled = if normalize {
        normalize_features(&pooled)?
    } else {
        pooled
    };
    let labels = LabelTrack::new(segments)?;

    let centroids = class_centroids(&pooled, &labels, &phones)?;
    if !centroids.dropped.is_empty() {
        eprintln!(
            "warning: no frames for {} phoneme(s): {}",
            centroids.dropped.len(),
            centroids.dropped.join(" ")
        );
    }
    let sm = similarity_matrix(&centroids)?;
    let order = rcm_order(&sm, angle)?;
    let mut thresholded = threshold_matrix(&sm, angle)?;
    thresholded.ordering = order;
    let (names, mut values) = thresholded.reordered();
    values.mapv_inplace(|v| v.max(0.0));

    let csv = format_csv_matrix(&values, Some(&names), Some(&names))?;
    write_atomic(&args.out, csv.as_bytes())?;
    if let Some(path) = &args.order_out {
        let mut text = String::new();
        for &i in &thresholded.ordering {
            writeln!(text, "{i} {}", thresholded.phonemes[i])?;
        }
        write_atomic(path, text.as_bytes())?;
    }
    Ok(())
}

fn filter_dump(file: &ConfigFile, out_dir: &Path, subgroup: Option<SubgroupArg>) -> Result<()> {
    let subgroup = resolve_subgroup(file, subgroup)?;
    let cfg = PipelineConfig::new(FeatureKind::Gabor(subgroup));
    cfg.validate()?;
    let fb = FilterbankSpec::build(&cfg.gfb, subgroup).map_err(|e| UsageError(e.to_string()))?;
    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("cannot create output directory {}", out_dir.display()))?;

    let mut table =
        String::from("filter,f_n_hz,f_k_cpc,orientation,w_n,w_k,channels,kernel_file\n");
    for ((id, filter), channels) in fb.filter_ids().iter().zip(fb.filters()).zip(fb.sampling()) {
        let p = filter.params();
        let name = format!("kernel_{id:02}.csv");
        let chans: Vec<String> = channels.iter().map(ToString::to_string).collect();
        writeln!(
            table,
            "{id},{},{},{:?},{},{},{},{name}",
            p.f_n_hz,
            p.f_k_cpc,
            p.orientation,
            p.w_n,
            p.w_k,
            chans.join(" ")
        )?;
        let kernel = format_csv_matrix(filter.kernel(), None, None)?;
        write_atomic(&out_dir.join(name), kernel.as_bytes())?;
    }
    write_atomic(&out_dir.join("filters.csv"), table.as_bytes())
}

fn combination_dim(spec: &CombinationSpec, dims: &HashMap<Subgroup, usize>) -> usize {
    spec.parts()
        .iter()
        .map(|p| match *p {
            CombinationPart::Features(g) => dims[&g],
            CombinationPart::Zeros(d) => d,
            CombinationPart::UniformRandom { dim, .. } => dim,
        })
        .sum()
}

fn format_list(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| {
            format!("{v:.4}")
                .trim_end_matches('0')
                .trim_end_matches('.')
                .to_string()
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn info(file: &ConfigFile) -> Result<()> {
    let mut cfg = PipelineConfig::new(FeatureKind::Gabor(resolve_subgroup(file, None)?));
    if let Some(floor) = file.resolve::<f64>(None, "energy_floor")? {
        cfg.mel.energy_floor = floor;
    }
    if let Some(seed) = file.resolve::<u64>(None, "seed")? {
        cfg.seed = seed;
    }
    cfg.validate()?;
    let banks = Subgroup::ALL
        .into_iter()
        .map(|g| FilterbankSpec::build(&cfg.gfb, g).map(|fb| (g, fb)))
        .collect::<gaborfeat::Result<Vec<_>>>()
        .map_err(|e| UsageError(e.to_string()))?;
    let dims: HashMap<Subgroup, usize> = banks.iter().map(|(g, fb)| (*g, fb.dim())).collect();
    let filters = |g: Subgroup| {
        banks
            .iter()
            .find(|(h, _)| *h == g)
            .map_or(0, |(_, fb)| fb.filters().len())
    };

    let mut out = String::new();
    writeln!(out, "filters: {}", filters(Subgroup::Full))?;
    for g in Subgroup::ALL {
        writeln!(
            out,
            "subgroup {g}: {} filters, {} dims",
            filters(g),
            dims[&g]
        )?;
    }
    for name in ["dchtm", "lhtm", "mhtm", "rhtm", "zhtm"] {
        let spec = CombinationSpec::preset(name, cfg.seed)
            .ok_or_else(|| anyhow!("missing preset {name}"))?;
        writeln!(
            out,
            "combination {name} ({spec}): {} dims",
            combination_dim(&spec, &dims)
        )?;
    }
    writeln!(out, "mfsc dims: {}", cfg.mel.n_channels)?;
    writeln!(
        out,
        "temporal modulations (Hz): {}",
        format_list(&cfg.gfb.temporal_mods_hz)
    )?;
    writeln!(
        out,
        "spectral modulations (cycles/channel): {}",
        format_list(&cfg.gfb.spectral_mods_cpc)
    )?;
    writeln!(out, "center channel: {}", cfg.gfb.center_channel)?;
    writeln!(out, "config digest: sha256:{}", cfg.digest())?;
    print!("{out}");
    Ok(())
}
