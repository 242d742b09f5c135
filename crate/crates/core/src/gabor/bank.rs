use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::config::GfbConfig;
use super::filter::{build_gabor_filter, FilterParams, GaborFilter, Orientation};
use crate::error::{Error, Result};

/// Filter subsets selected by temporal modulation frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subgroup {
    Full,
    /// Low temporal modulations: 2.4 and 3.9 Hz.
    Ltm,
    /// Medium: 6.2 and 9.9 Hz.
    Mtm,
    /// High: 15.7 and 25 Hz.
    Htm,
    /// Purely spectral filters (0 Hz).
    Dc,
}

impl Subgroup {
    pub const ALL: [Subgroup; 5] = [
        Subgroup::Full,
        Subgroup::Ltm,
        Subgroup::Mtm,
        Subgroup::Htm,
        Subgroup::Dc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subgroup::Full => "full",
            Subgroup::Ltm => "ltm",
            Subgroup::Mtm => "mtm",
            Subgroup::Htm => "htm",
            Subgroup::Dc => "dc",
        }
    }

    /// Temporal modulations kept, or `None` for the full set.
    pub fn temporal_mods_hz(self) -> Option<&'static [f64]> {
        match self {
            Subgroup::Full => None,
            Subgroup::Ltm => Some(&[2.4, 3.9]),
            Subgroup::Mtm => Some(&[6.2, 9.9]),
            Subgroup::Htm => Some(&[15.7, 25.0]),
            Subgroup::Dc => Some(&[0.0]),
        }
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Subgroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Subgroup::ALL
            .into_iter()
            .find(|g| g.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown subgroup {s:?}; expected one of full, ltm, mtm, htm, dc"
                ))
            })
    }
}

/// All filter parameter sets, ordered by spectral modulation, then temporal
/// modulation, then orientation (up before down).
pub fn modulation_grid(cfg: &GfbConfig) -> Result<Vec<FilterParams>> {
    cfg.validate()?;
    let mut grid = Vec::new();
    for &f_k in &cfg.spectral_mods_cpc {
        for &f_n in &cfg.temporal_mods_hz {
            grid.push(FilterParams::new(f_n, f_k, Orientation::Up, cfg)?);
            if f_n > 0.0 && f_k > 0.0 {
                grid.push(FilterParams::new(f_n, f_k, Orientation::Down, cfg)?);
            }
        }
    }
    Ok(grid)
}

fn same_freq(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

pub fn select_subgroup(grid: &[FilterParams], subgroup: Subgroup) -> Result<Vec<FilterParams>> {
    Ok(select_indices(grid, subgroup)?
        .into_iter()
        .map(|i| grid[i].clone())
        .collect())
}

fn select_indices(grid: &[FilterParams], subgroup: Subgroup) -> Result<Vec<usize>> {
    let Some(wanted) = subgroup.temporal_mods_hz() else {
        return Ok((0..grid.len()).collect());
    };
    for &f in wanted {
        if !grid.iter().any(|p| same_freq(p.f_n_hz, f)) {
            return Err(Error::Config(format!(
                "subgroup {subgroup} needs a {f} Hz temporal modulation, which the grid lacks"
            )));
        }
    }
    Ok(grid
        .iter()
        .enumerate()
        .filter(|(_, p)| wanted.iter().any(|&f| same_freq(p.f_n_hz, f)))
        .map(|(i, _)| i)
        .collect())
}

/// Mel channels kept from one filter's output.
///
/// Purely temporal filters span the whole spectrogram and keep only the
/// anchor channel. Filters with the smallest spectral extent in the bank keep
/// every channel. All others keep the anchor channel plus shifts by a quarter
/// of their spectral support.
pub fn critical_channels(p: &FilterParams, cfg: &GfbConfig) -> Vec<usize> {
    let n = cfg.n_mel_channels;
    let c = cfg.center_channel.min(n.saturating_sub(1));
    if p.f_k_cpc == 0.0 {
        return vec![c];
    }
    let smallest_support = cfg
        .spectral_mods_cpc
        .iter()
        .filter(|&&f| f > 0.0)
        .filter_map(|&f| FilterParams::new(0.0, f, Orientation::Up, cfg).ok())
        .map(|q| q.w_k)
        .min()
        .unwrap_or(p.w_k);
    if p.w_k <= smallest_support {
        return (0..n).collect();
    }
    let step = ((p.w_k as f64 / 4.0).round() as usize).max(1);
    let below = (1..=c / step).rev().map(|j| c - j * step);
    let above = (0..).map(|j| c + j * step).take_while(|&ch| ch < n);
    below.chain(above).collect()
}

/// A built filterbank: kernels plus the channels kept from each one.
#[derive(Debug, Clone)]
pub struct FilterbankSpec {
    config: GfbConfig,
    subgroup: Subgroup,
    filter_ids: Vec<usize>,
    filters: Vec<GaborFilter>,
    sampling: Vec<Vec<usize>>,
}

impl FilterbankSpec {
    pub fn build(config: &GfbConfig, subgroup: Subgroup) -> Result<Self> {
        let grid = modulation_grid(config)?;
        let filter_ids = select_indices(&grid, subgroup)?;
        let filters = filter_ids
            .par_iter()
            .map(|&i| build_gabor_filter(&grid[i], config))
            .collect::<Result<Vec<_>>>()?;
        let sampling = filters
            .iter()
            .map(|f| critical_channels(f.params(), config))
            .collect();
        Ok(Self {
            config: config.clone(),
            subgroup,
            filter_ids,
            filters,
            sampling,
        })
    }

    pub fn config(&self) -> &GfbConfig {
        &self.config
    }

    pub fn subgroup(&self) -> Subgroup {
        self.subgroup
    }

    pub fn filters(&self) -> &[GaborFilter] {
        &self.filters
    }

    /// Index of each filter within the full modulation grid.
    pub fn filter_ids(&self) -> &[usize] {
        &self.filter_ids
    }

    pub fn sampling(&self) -> &[Vec<usize>] {
        &self.sampling
    }

    /// Feature dimension after critical sampling.
    pub fn dim(&self) -> usize {
        self.sampling.iter().map(Vec::len).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_has_59_entries() {
        let grid = modulation_grid(&GfbConfig::default()).unwrap();
        assert_eq!(grid.len(), 35 + 6 * 4);
        assert_eq!(
            grid.iter()
                .filter(|p| p.orientation == Orientation::Down)
                .count(),
            24
        );
        // spectral-major ordering
        assert!(grid.windows(2).all(|w| w[0].f_k_cpc <= w[1].f_k_cpc));
    }

    #[test]
    fn dc_only_grid() {
        let cfg = GfbConfig {
            temporal_mods_hz: vec![0.0],
            spectral_mods_cpc: vec![0.0],
            ..GfbConfig::default()
        };
        assert_eq!(modulation_grid(&cfg).unwrap().len(), 1);
    }

    #[test]
    fn subgroup_sizes() {
        let grid = modulation_grid(&GfbConfig::default()).unwrap();
        let count = |g| select_subgroup(&grid, g).unwrap().len();
        assert_eq!(count(Subgroup::Full), 59);
        assert_eq!(count(Subgroup::Ltm), 18);
        assert_eq!(count(Subgroup::Mtm), 18);
        assert_eq!(count(Subgroup::Htm), 18);
        assert_eq!(count(Subgroup::Dc), 5);
    }

    #[test]
    fn subgroup_missing_from_grid() {
        let cfg = GfbConfig {
            temporal_mods_hz: vec![0.0, 6.2, 9.9],
            ..GfbConfig::default()
        };
        let grid = modulation_grid(&cfg).unwrap();
        assert!(select_subgroup(&grid, Subgroup::Htm).is_err());
        assert!(select_subgroup(&grid, Subgroup::Mtm).is_ok());
    }

    #[test]
    fn subgroup_names_parse() {
        for g in Subgroup::ALL {
            assert_eq!(g.name().parse::<Subgroup>().unwrap(), g);
        }
        assert!("bogus".parse::<Subgroup>().is_err());
    }

    #[test]
    fn channel_selection_per_spectral_modulation() {
        let cfg = GfbConfig::default();
        let sel = |f_k| {
            let p = FilterParams::new(6.2, f_k, Orientation::Up, &cfg).unwrap();
            critical_channels(&p, &cfg)
        };
        assert_eq!(sel(0.0), vec![10]);
        assert_eq!(sel(0.25), (0..31).collect::<Vec<_>>());
        assert_eq!(sel(0.2), vec![2, 6, 10, 14, 18, 22, 26, 30]);
        assert_eq!(sel(0.16), vec![0, 5, 10, 15, 20, 25, 30]);
        assert_eq!(sel(0.128), vec![3, 10, 17, 24]);
    }

    #[test]
    fn selected_channels_sorted_unique_in_range() {
        let cfg = GfbConfig::default();
        for p in modulation_grid(&cfg).unwrap() {
            let ch = critical_channels(&p, &cfg);
            assert!(!ch.is_empty());
            assert!(ch.windows(2).all(|w| w[0] < w[1]));
            assert!(ch.iter().all(|&c| c < cfg.n_mel_channels));
            assert!(ch.contains(&cfg.center_channel));
        }
    }
}
