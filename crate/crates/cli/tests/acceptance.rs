//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use gaborfeat::io::{
    decode_htk, encode_htk, encode_wav_pcm16, format_csv_matrix, parse_csv_matrix,
};
use gaborfeat::similarity::{bandwidth, reverse_cuthill_mckee};
use gaborfeat::{
    center_channel_1khz, combine_features, convolve2d, correlate_padded, cosine_similarity,
    extract_features, log_mel_spectrogram, mel_scale, modulation_grid, rcm_order, select_subgroup,
    similarity_matrix, threshold_matrix, AudioSignal, CentroidSet, CombinationSpec, DimSource,
    FilterParams, FilterbankSpec, GaborFilter, GfbConfig, LogMelSpectrogram, MelConfig,
    Orientation, Subgroup,
};
use ndarray::{Array1, Array2};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sine(freq_hz: f64, amplitude: f64, seconds: f64) -> AudioSignal {
    let n = (16_000.0 * seconds) as usize;
    let samples = (0..n)
        .map(|i| amplitude * (2.0 * PI * freq_hz * i as f64 / 16_000.0).sin())
        .collect();
    AudioSignal::new(samples, 16_000).unwrap()
}

fn noise(seed: u64, seconds: f64) -> AudioSignal {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = (16_000.0 * seconds) as usize;
    AudioSignal::new((0..n).map(|_| rng.gen_range(-0.3..0.3)).collect(), 16_000).unwrap()
}

fn filterbank_structure() -> Outcome {
    let cfg = GfbConfig::default();
    let start = Instant::now();
    let full = FilterbankSpec::build(&cfg, Subgroup::Full).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed().as_secs_f64();
    let grid = modulation_grid(&cfg).map_err(|e| e.to_string())?;
    let count = |g| select_subgroup(&grid, g).map(|v| v.len()).unwrap_or(0);
    let counts = [
        full.filters().len(),
        count(Subgroup::Ltm),
        count(Subgroup::Mtm),
        count(Subgroup::Htm),
        count(Subgroup::Dc),
    ];
    ensure(counts == [59, 18, 18, 18, 5], || {
        format!("filter counts {counts:?}")
    })?;
    let oversized = full
        .filters()
        .iter()
        .filter(|f| f.kernel().nrows() > 69 || f.kernel().ncols() > 99)
        .count();
    ensure(oversized == 0, || {
        format!("{oversized} kernels exceed 69x99")
    })?;
    ensure(elapsed < 1.0, || format!("build took {elapsed:.3} s"))?;
    Ok(format!(
        "59 filters, ltm/mtm/htm 18, dc 5, all within 69x99, built in {elapsed:.3} s"
    ))
}

fn dimensionality() -> Outcome {
    let cfg = GfbConfig::default();
    let spec =
        log_mel_spectrogram(&noise(1, 0.5), &MelConfig::default()).map_err(|e| e.to_string())?;
    let mut feats = HashMap::new();
    let mut dims = Vec::new();
    for g in Subgroup::ALL {
        let fb = FilterbankSpec::build(&cfg, g).map_err(|e| e.to_string())?;
        let m = extract_features(&spec, &fb).map_err(|e| e.to_string())?;
        ensure(m.dim() == fb.dim(), || {
            format!("{g}: matrix {} vs bank {}", m.dim(), fb.dim())
        })?;
        dims.push((g, m.dim()));
        feats.insert(g, m);
    }
    let expected = [657, 202, 202, 202, 51];
    let got: Vec<usize> = dims.iter().map(|d| d.1).collect();
    ensure(got == expected, || format!("subgroup dims {dims:?}"))?;
    for (name, want) in [
        ("dchtm", 253),
        ("zhtm", 404),
        ("rhtm", 404),
        ("lhtm", 404),
        ("mhtm", 404),
    ] {
        let combo = CombinationSpec::preset(name, 7).unwrap();
        let m = combine_features(spec.frames(), &combo, &feats).map_err(|e| e.to_string())?;
        ensure(m.dim() == want, || {
            format!("{name}: {} dims, expected {want}", m.dim())
        })?;
    }
    Ok("full 657, ltm/mtm/htm 202, dc 51, dchtm 253, zhtm/rhtm/lhtm/mhtm 404".into())
}

fn zero_dc() -> Outcome {
    let cfg = GfbConfig::default();
    let fb = FilterbankSpec::build(&cfg, Subgroup::Full).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for c in [1.0, -7.25, 23.0, 1e-3] {
        let spec = LogMelSpectrogram::from_values(Array2::from_elem((60, 31), c), 0.01)
            .map_err(|e| e.to_string())?;
        for f in fb.filters().iter().filter(|f| !f.is_dc()) {
            let l1: f64 = f.kernel().iter().map(|v| v.abs()).sum();
            let out = convolve2d(&spec, f);
            let max = out.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let rel = max / (l1 * c.abs());
            worst = worst.max(rel);
            ensure(rel <= 1e-9, || {
                format!(
                    "filter {:?} at c={c}: |out| {max:e} > 1e-9 * L1 * |c|",
                    f.params()
                )
            })?;
        }
    }
    Ok(format!(
        "54 non-DC filters, worst |out|/(L1 |c|) = {worst:.2e}"
    ))
}

/// Plain triple loop: channels outside the spectrogram read as zero, frames
/// outside it repeat the first or last frame.
fn naive_correlation(input: &Array2<f64>, kernel: &Array2<f64>) -> Array2<f64> {
    let (frames, channels) = input.dim();
    let (wk, wn) = kernel.dim();
    let (hk, hn) = ((wk / 2) as isize, (wn / 2) as isize);
    let mut out = Array2::zeros((frames, channels));
    for t in 0..frames as isize {
        for c in 0..channels as isize {
            let mut acc = 0.0;
            for k in 0..wk as isize {
                let ch = c + k - hk;
                if ch < 0 || ch >= channels as isize {
                    continue;
                }
                for n in 0..wn as isize {
                    let fr = (t + n - hn).clamp(0, frames as isize - 1);
                    acc += kernel[[k as usize, n as usize]] * input[[fr as usize, ch as usize]];
                }
            }
            out[[t as usize, c as usize]] = acc;
        }
    }
    out
}

/// Naive reference for a filter output including the edge mean correction.
fn naive_filter_output(input: &Array2<f64>, filter: &GaborFilter) -> Array2<f64> {
    let raw = naive_correlation(input, filter.kernel());
    let env = filter.envelope();
    let local = naive_correlation(input, &env);
    let (frames, channels) = input.dim();
    let wk = filter.kernel().nrows();
    let hk = (wk / 2) as isize;
    let mut out = raw.clone();
    for c in 0..channels as isize {
        let (mut kmass, mut emass) = (0.0, 0.0);
        for k in 0..wk as isize {
            let ch = c + k - hk;
            if ch >= 0 && ch < channels as isize {
                kmass += filter.kernel().row(k as usize).sum();
                emass += env.row(k as usize).sum();
            }
        }
        for t in 0..frames {
            out[[t, c as usize]] = raw[[t, c as usize]] - kmass / emass * local[[t, c as usize]];
        }
    }
    out
}

fn convolution_oracle() -> Outcome {
    let cfg = GfbConfig::default();
    let params = FilterParams::new(6.2, 0.25, Orientation::Up, &cfg).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let frames = rng.gen_range(1..=80);
        let channels = rng.gen_range(1..=31);
        let wk = 2 * rng.gen_range(0..=10) + 1;
        let wn = 2 * rng.gen_range(0..=15) + 1;
        let input = Array2::from_shape_simple_fn((frames, channels), || rng.gen_range(-10.0..10.0));
        let kernel = Array2::from_shape_simple_fn((wk, wn), || rng.gen_range(-1.0..1.0));
        let env_k: Vec<f64> = (0..wk).map(|_| rng.gen_range(0.1..1.0)).collect();
        let env_n: Vec<f64> = (0..wn).map(|_| rng.gen_range(0.1..1.0)).collect();

        let plain = correlate_padded(&input, &kernel);
        let expected = naive_correlation(&input, &kernel);
        let filter = GaborFilter::from_parts(params.clone(), kernel, env_k, env_n)
            .map_err(|e| e.to_string())?;
        let spec =
            LogMelSpectrogram::from_values(input.clone(), 0.01).map_err(|e| e.to_string())?;
        let full = convolve2d(&spec, &filter);
        let expected_full = naive_filter_output(&input, &filter);
        for (a, b) in plain
            .iter()
            .zip(&expected)
            .chain(full.iter().zip(&expected_full))
        {
            worst = worst.max((a - b).abs());
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    ensure(worst <= 1e-9, || format!("max abs deviation {worst:e}"))?;
    ensure(elapsed < 10.0, || format!("took {elapsed:.2} s"))?;
    Ok(format!(
        "100 random pairs, max abs deviation {worst:.2e}, {elapsed:.3} s"
    ))
}

fn am_spectrogram(mod_hz: f64) -> LogMelSpectrogram {
    let values = Array2::from_shape_fn((400, 31), |(t, _)| {
        1.0 + 0.5 * (2.0 * PI * mod_hz * t as f64 * 0.01).cos()
    });
    LogMelSpectrogram::from_values(values, 0.01).unwrap()
}

/// Mean square output of the purely temporal filter at `f_n_hz`.
fn temporal_energy(
    spec: &LogMelSpectrogram,
    fb: &FilterbankSpec,
    grid: &[FilterParams],
    f_n_hz: f64,
) -> f64 {
    let m = extract_features(spec, fb).unwrap();
    let cols: Vec<usize> = m
        .provenance()
        .iter()
        .enumerate()
        .filter(|(_, p)| match p {
            DimSource::Gabor { filter, .. } => {
                (grid[*filter].f_n_hz - f_n_hz).abs() < 1e-9 && grid[*filter].f_k_cpc == 0.0
            }
            _ => false,
        })
        .map(|(i, _)| i)
        .collect();
    assert!(!cols.is_empty());
    let sum: f64 = cols
        .iter()
        .map(|&c| m.values().column(c).mapv(|v| v * v).sum())
        .sum();
    sum / (cols.len() * m.frames()) as f64
}

fn modulation_selectivity() -> Outcome {
    let cfg = GfbConfig::default();
    let grid = modulation_grid(&cfg).map_err(|e| e.to_string())?;
    let htm = FilterbankSpec::build(&cfg, Subgroup::Htm).map_err(|e| e.to_string())?;
    let ltm = FilterbankSpec::build(&cfg, Subgroup::Ltm).map_err(|e| e.to_string())?;
    let fast = am_spectrogram(25.0);
    let slow = am_spectrogram(2.4);
    let db_fast = 10.0
        * (temporal_energy(&fast, &htm, &grid, 25.0) / temporal_energy(&fast, &ltm, &grid, 2.4))
            .log10();
    let db_slow = 10.0
        * (temporal_energy(&slow, &ltm, &grid, 2.4) / temporal_energy(&slow, &htm, &grid, 25.0))
            .log10();
    ensure(db_fast >= 10.0 && db_slow >= 10.0, || {
        format!("25 Hz AM: {db_fast:.1} dB, 2.4 Hz AM: {db_slow:.1} dB")
    })?;
    Ok(format!("25 Hz AM favors 25 Hz filter by {db_fast:.1} dB; 2.4 Hz AM favors 2.4 Hz filter by {db_slow:.1} dB"))
}

fn mel_frontend() -> Outcome {
    let mel = MelConfig::default();
    let spec = log_mel_spectrogram(&sine(440.0, 0.5, 1.0), &mel).map_err(|e| e.to_string())?;
    ensure(spec.frames() == 98 && spec.n_channels() == 31, || {
        format!("1 s gave {}x{}", spec.frames(), spec.n_channels())
    })?;
    let m0 = mel_scale(0.0).map_err(|e| e.to_string())?;
    let m1k = mel_scale(1000.0).map_err(|e| e.to_string())?;
    ensure(m0 == 0.0, || format!("mel(0) = {m0}"))?;
    ensure((m1k - 999.99).abs() <= 0.01, || {
        format!("mel(1000) = {m1k}")
    })?;
    let tone = log_mel_spectrogram(&sine(1000.0, 0.5, 1.0), &mel).map_err(|e| e.to_string())?;
    let centers = tone.channel_center_hz();
    let nearest = (0..centers.len())
        .min_by(|&a, &b| {
            (centers[a] - 1000.0)
                .abs()
                .total_cmp(&(centers[b] - 1000.0).abs())
        })
        .unwrap();
    ensure(nearest == center_channel_1khz(&mel), || {
        "1 kHz channel disagrees with nearest center".into()
    })?;
    for t in 0..tone.frames() {
        let row = tone.values().row(t);
        let arg = (0..row.len())
            .max_by(|&a, &b| row[a].total_cmp(&row[b]))
            .unwrap();
        ensure(arg == nearest, || {
            format!("frame {t}: argmax channel {arg}, expected {nearest}")
        })?;
    }
    Ok(format!("98 frames, mel(0)=0, mel(1000)={m1k:.4}, 1 kHz tone peaks in channel {nearest} every frame"))
}

fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> Array2<f64> {
    let mut q = Array2::<f64>::zeros((n, n));
    for i in 0..n {
        let mut v: Array1<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for j in 0..i {
            let proj = v.dot(&q.row(j));
            v = &v - &(&q.row(j) * proj);
        }
        let norm = v.dot(&v).sqrt();
        q.row_mut(i).assign(&(v / norm));
    }
    q
}

#[allow(clippy::approx_constant)]
fn cosine_and_threshold() -> Outcome {
    let cs = |a: &Array1<f64>, b: &Array1<f64>| cosine_similarity(a.view(), b.view()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.gen_range(2..=24);
        let a: Array1<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let b: Array1<f64> = (0..n).map(|_| rng.gen_range(-5.0..5.0)).collect();
        ensure((cs(&a, &a) - 1.0).abs() <= 1e-12, || {
            "cos(v, v) != 1".into()
        })?;
        ensure((cs(&a, &-&a) + 1.0).abs() <= 1e-12, || {
            "cos(v, -v) != -1".into()
        })?;
        ensure((cs(&a, &b) - cs(&b, &a)).abs() <= 1e-15, || {
            "not symmetric".into()
        })?;
        ensure((cs(&(&a * 3.7), &b) - cs(&a, &b)).abs() <= 1e-12, || {
            "not scale invariant".into()
        })?;
        let q = random_orthogonal(n, &mut rng);
        worst = worst.max((cs(&q.dot(&a), &q.dot(&b)) - cs(&a, &b)).abs());
    }
    ensure(worst <= 1e-9, || {
        format!("rotation changed cosine by {worst:e}")
    })?;
    let e0 = Array1::from(vec![1.0, 0.0]);
    let e1 = Array1::from(vec![0.0, 1.0]);
    ensure(cs(&e0, &e1).abs() <= 1e-15, || {
        "orthogonal vectors not 0".into()
    })?;

    let cut45 = 45f64.to_radians().cos();
    let cut60 = 60f64.to_radians().cos();
    ensure(
        (cut45 - 0.70711).abs() <= 1e-5 && (cut60 - 0.5).abs() <= 1e-12,
        || format!("cutoffs {cut45} {cut60}"),
    )?;
    let angles = [0.0f64, 30.0, 50.0, 70.0];
    let mut centroids = Array2::zeros((4, 2));
    for (i, a) in angles.iter().enumerate() {
        centroids[[i, 0]] = a.to_radians().cos();
        centroids[[i, 1]] = a.to_radians().sin();
    }
    let set = CentroidSet {
        phonemes: ["a", "b", "c", "d"].map(String::from).to_vec(),
        centroids,
        counts: vec![1; 4],
        dropped: vec![],
    };
    let sm = similarity_matrix(&set).map_err(|e| e.to_string())?;
    for (deg, cut) in [(45.0, cut45), (60.0, cut60)] {
        let th = threshold_matrix(&sm, deg).map_err(|e| e.to_string())?;
        for i in 0..4 {
            for j in 0..4 {
                let orig = sm.values[[i, j]];
                let want = if i == j || orig >= cut { orig } else { 0.0 };
                ensure(th.values[[i, j]] == want, || {
                    format!("{deg} deg mask wrong at ({i},{j})")
                })?;
            }
        }
    }
    Ok(format!("identities hold, rotation deviation {worst:.1e}, cos45={cut45:.5}, cos60={cut60} masks verified"))
}

fn rcm_bandwidth() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut summary = (0usize, 0usize);
    for trial in 0..50 {
        let n = rng.gen_range(20..=80);
        let band = rng.gen_range(1..=4);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..(i + band + 1).min(n) {
                if j == i + 1 || rng.gen_bool(0.6) {
                    edges.push((i, j));
                }
            }
        }
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in &edges {
            adj[perm[i]].push(perm[j]);
            adj[perm[j]].push(perm[i]);
        }
        let identity: Vec<usize> = (0..n).collect();
        let before = bandwidth(&adj, &identity);
        let order = reverse_cuthill_mckee(&adj);
        let mut sorted = order.clone();
        sorted.sort_unstable();
        ensure(sorted == identity, || {
            format!("trial {trial}: not a permutation")
        })?;
        let after = bandwidth(&adj, &order);
        ensure(after <= before, || {
            format!("trial {trial}: bandwidth {before} -> {after}")
        })?;
        summary.0 += before;
        summary.1 += after;
    }
    let empty = vec![Vec::new(); 12];
    ensure(
        reverse_cuthill_mckee(&empty) == (0..12).collect::<Vec<_>>(),
        || "edgeless graph not identity".into(),
    )?;
    let mut centroids = Array2::zeros((5, 5));
    for i in 0..5 {
        centroids[[i, i]] = 1.0;
    }
    let set = CentroidSet {
        phonemes: (0..5).map(|i| format!("p{i}")).collect(),
        centroids,
        counts: vec![1; 5],
        dropped: vec![],
    };
    let sm = similarity_matrix(&set).map_err(|e| e.to_string())?;
    let order = rcm_order(&sm, 45.0).map_err(|e| e.to_string())?;
    ensure(order == vec![0, 1, 2, 3, 4], || {
        format!("orthogonal classes ordered {order:?}")
    })?;
    Ok(format!(
        "50 permuted banded graphs, mean bandwidth {:.1} -> {:.1}; edgeless graph keeps identity",
        summary.0 as f64 / 50.0,
        summary.1 as f64 / 50.0
    ))
}

fn run_cli(args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_gaborfeat"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!(
            "gaborfeat {} exited with {}: {}",
            args.join(" "),
            out.status,
            String::from_utf8_lossy(&out.stderr).trim()
        )
    })
}

fn read(path: &Path) -> Result<Vec<u8>, String> {
    std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn round_trips() -> Outcome {
    let spec =
        log_mel_spectrogram(&noise(5, 1.0), &MelConfig::default()).map_err(|e| e.to_string())?;
    let fb =
        FilterbankSpec::build(&GfbConfig::default(), Subgroup::Full).map_err(|e| e.to_string())?;
    let m = extract_features(&spec, &fb).map_err(|e| e.to_string())?;
    ensure(m.values().dim() == (98, 657), || {
        format!("features {:?}", m.values().dim())
    })?;
    let bytes = encode_htk(&m).map_err(|e| e.to_string())?;
    let back = decode_htk(&bytes).map_err(|e| e.to_string())?;
    let exact = back
        .values()
        .iter()
        .zip(m.values())
        .all(|(b, a)| b.to_bits() == ((*a as f32) as f64).to_bits());
    ensure(exact, || "HTK values differ from their f32 rounding".into())?;
    ensure(
        encode_htk(&back).map_err(|e| e.to_string())? == bytes,
        || "HTK re-encode differs".into(),
    )?;

    let text = format_csv_matrix(m.values(), None, None).map_err(|e| e.to_string())?;
    let csv = parse_csv_matrix(&text).map_err(|e| e.to_string())?;
    ensure(
        csv.values
            .iter()
            .zip(m.values())
            .all(|(a, b)| a.to_bits() == b.to_bits()),
        || "CSV values not bit-identical".into(),
    )?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    let wav = d.join("u.wav");
    let samples: Vec<f64> = noise(11, 1.2).samples().to_vec();
    std::fs::write(&wav, encode_wav_pcm16(&samples, 16_000)).map_err(|e| e.to_string())?;
    let w = wav.to_str().unwrap();
    let p = |name: &str| d.join(name).to_str().unwrap().to_string();
    run_cli(&["gbfb", w, "-o", &p("a.htk"), "-j", "1"])?;
    run_cli(&["gbfb", w, "-o", &p("b.htk"), "-j", "4"])?;
    run_cli(&[
        "combine",
        "--parts",
        "rhtm",
        "--seed",
        "5",
        w,
        "-o",
        &p("a.csv"),
    ])?;
    run_cli(&[
        "combine",
        "--parts",
        "rhtm",
        "--seed",
        "5",
        w,
        "-o",
        &p("b.csv"),
    ])?;
    ensure(read(&d.join("a.htk"))? == read(&d.join("b.htk"))?, || {
        "gbfb reruns differ".into()
    })?;
    ensure(read(&d.join("a.csv"))? == read(&d.join("b.csv"))?, || {
        "combine reruns differ".into()
    })?;
    std::fs::write(d.join("u.lab"), "0 40 aa\n40 80 iy\n80 118 s\n").map_err(|e| e.to_string())?;
    std::fs::write(d.join("phones.txt"), "aa\niy\ns\nsh\n").map_err(|e| e.to_string())?;
    for out in ["s1.csv", "s2.csv"] {
        run_cli(&[
            "similarity",
            "--features",
            &p("a.htk"),
            "--labels",
            &p("u.lab"),
            "--phones",
            &p("phones.txt"),
            "--out",
            &p(out),
        ])?;
    }
    ensure(read(&d.join("s1.csv"))? == read(&d.join("s2.csv"))?, || {
        "similarity reruns differ".into()
    })?;
    Ok("HTK 98x657 bit-exact at f32, CSV bit-exact, CLI reruns byte-identical".into())
}

fn constant_q() -> Outcome {
    let cfg = GfbConfig::default();
    let grid = modulation_grid(&cfg).map_err(|e| e.to_string())?;
    let mut checked = (0, 0);
    for p in &grid {
        for (f, w, cap) in [
            (p.f_n_hz * cfg.frame_shift_s, p.w_n, cfg.max_time_frames),
            (p.f_k_cpc, p.w_k, cfg.max_freq_channels),
        ] {
            if f == 0.0 || cfg.nu / f >= cap as f64 {
                ensure(w == cap, || format!("{p:?}: capped support {w} != {cap}"))?;
                checked.1 += 1;
            } else {
                let dev = (w as f64 * f - cfg.nu).abs();
                ensure(dev <= f, || format!("{p:?}: |W f - nu| = {dev} > {f}"))?;
                checked.0 += 1;
            }
        }
    }
    Ok(format!(
        "{} uncapped axes within |W f - 3.5| <= f, {} capped axes at 99/69",
        checked.0, checked.1
    ))
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("filterbank structure", filterbank_structure),
        ("dimensionality", dimensionality),
        ("zero-DC invariant", zero_dc),
        ("convolution oracle", convolution_oracle),
        ("modulation selectivity", modulation_selectivity),
        ("mel front-end", mel_frontend),
        ("cosine similarity and thresholds", cosine_and_threshold),
        ("RCM bandwidth", rcm_bandwidth),
        ("round trips and determinism", round_trips),
        ("constant-Q supports", constant_q),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
