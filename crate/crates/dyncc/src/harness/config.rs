use std::path::{Path, PathBuf};

use super::HarnessError;
use crate::sdd::SddMode;
use crate::streams::{SbmSpec, StreamMode};

#[derive(Debug, Clone, PartialEq)]
pub enum InputSpec {
    /// The graph seed is derived from each run seed; `seed` here is ignored.
    Sbm(SbmSpec),
    Snap(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EpsSpec {
    Fixed(f64),
    Sweep { lo: f64, hi: f64, step: f64 },
}

impl EpsSpec {
    /// `lo, lo+step, …, hi`; a fixed value yields itself.
    pub fn grid(&self) -> Vec<f64> {
        match *self {
            EpsSpec::Fixed(e) => vec![e],
            EpsSpec::Sweep { lo, hi, step } => {
                let count = ((hi - lo) / step).round() as usize;
                (0..=count).map(|i| lo + i as f64 * step).collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub input: InputSpec,
    pub mode: StreamMode,
    pub p_del: f64,
    /// `None` picks the desk-scale default from the input's edge count.
    pub total_updates: Option<usize>,
    pub eps: EpsSpec,
    pub checkpoint_every: usize,
    pub seeds: Vec<u64>,
    pub output_dir: PathBuf,
    /// Updates per run during an ε sweep.
    pub sweep_horizon: usize,
    pub sdd_mode: SddMode,
    /// Lowest adjacency fraction the merge test accepts.
    pub merge_floor: f64,
    /// Record wall-clock time in the CSV. Off by default so that output is
    /// byte-identical across runs.
    pub wall_time: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            input: InputSpec::Sbm(SbmSpec { n: 250, k: 4, p: 0.95, q: 0.05, seed: 0 }),
            mode: StreamMode::Random,
            p_del: 0.2,
            total_updates: None,
            eps: EpsSpec::Fixed(0.45),
            checkpoint_every: 100,
            seeds: vec![1],
            output_dir: PathBuf::from("results"),
            sweep_horizon: 2000,
            sdd_mode: SddMode::Exact,
            merge_floor: 0.5,
            wall_time: false,
        }
    }
}

fn bad(key: &str, value: &str) -> HarnessError {
    HarnessError::Config(format!("invalid value '{value}' for {key}"))
}

fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, HarnessError> {
    value.trim().parse().map_err(|_| bad(key, value))
}

impl ExperimentConfig {
    /// Sets one field from its textual form. Keys match the config-file and
    /// command-line names (dashes and underscores are interchangeable).
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), HarnessError> {
        let key = key.trim().replace('-', "_");
        let v = value.trim();
        let sbm = |cfg: &mut Self| -> SbmSpec {
            match cfg.input {
                InputSpec::Sbm(s) => s,
                InputSpec::Snap(_) => {
                    let s = SbmSpec { n: 250, k: 4, p: 0.95, q: 0.05, seed: 0 };
                    cfg.input = InputSpec::Sbm(s);
                    s
                }
            }
        };
        match key.as_str() {
            "input" => match v {
                "sbm" => {
                    sbm(self);
                }
                "snap" => {
                    if !matches!(self.input, InputSpec::Snap(_)) {
                        self.input = InputSpec::Snap(PathBuf::new());
                    }
                }
                _ => return Err(bad(&key, v)),
            },
            "snap_path" => self.input = InputSpec::Snap(PathBuf::from(v)),
            "sbm_n" => self.input = InputSpec::Sbm(SbmSpec { n: num(&key, v)?, ..sbm(self) }),
            "sbm_k" => self.input = InputSpec::Sbm(SbmSpec { k: num(&key, v)?, ..sbm(self) }),
            "sbm_p" => self.input = InputSpec::Sbm(SbmSpec { p: num(&key, v)?, ..sbm(self) }),
            "sbm_q" => self.input = InputSpec::Sbm(SbmSpec { q: num(&key, v)?, ..sbm(self) }),
            "mode" => self.mode = v.parse().map_err(|_| bad(&key, v))?,
            "p_del" => self.p_del = num(&key, v)?,
            "total_updates" => {
                self.total_updates = if v == "auto" { None } else { Some(num(&key, v)?) }
            }
            "eps" => self.eps = EpsSpec::Fixed(num(&key, v)?),
            "eps_lo" | "eps_hi" | "eps_step" => {
                let (mut lo, mut hi, mut step) = match self.eps {
                    EpsSpec::Sweep { lo, hi, step } => (lo, hi, step),
                    EpsSpec::Fixed(_) => (0.3, 0.6, 0.025),
                };
                let x: f64 = num(&key, v)?;
                match key.as_str() {
                    "eps_lo" => lo = x,
                    "eps_hi" => hi = x,
                    _ => step = x,
                }
                self.eps = EpsSpec::Sweep { lo, hi, step };
            }
            "checkpoint_every" => self.checkpoint_every = num(&key, v)?,
            "seeds" => {
                self.seeds = v
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| num(&key, s))
                    .collect::<Result<_, _>>()?
            }
            "output_dir" => self.output_dir = PathBuf::from(v),
            "sweep_horizon" => self.sweep_horizon = num(&key, v)?,
            "sdd_mode" => {
                self.sdd_mode = match v {
                    "exact" => SddMode::Exact,
                    "sampled" => SddMode::Sampled,
                    _ => return Err(bad(&key, v)),
                }
            }
            "merge_floor" => self.merge_floor = num(&key, v)?,
            "wall_time" => self.wall_time = num(&key, v)?,
            _ => return Err(HarnessError::Config(format!("unknown key '{key}'"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), HarnessError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| HarnessError::Config(format!("line {}: expected key = value", i + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self, HarnessError> {
        let mut cfg = Self::default();
        cfg.apply_text(&std::fs::read_to_string(path)?)?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let err = |m: &str| Err(HarnessError::Config(m.to_string()));
        if self.checkpoint_every == 0 {
            return err("checkpoint_every must be at least 1");
        }
        if self.seeds.is_empty() {
            return err("at least one seed is required");
        }
        if self.sweep_horizon == 0 {
            return err("sweep_horizon must be at least 1");
        }
        if !(0.0..=1.0).contains(&self.p_del) {
            return err("p_del must lie in [0, 1]");
        }
        if !(0.0..=1.0).contains(&self.merge_floor) {
            return err("merge_floor must lie in [0, 1]");
        }
        if self.total_updates == Some(0) {
            return err("total_updates must be at least 1");
        }
        if let InputSpec::Snap(p) = &self.input {
            if p.as_os_str().is_empty() {
                return err("snap input needs snap_path");
            }
        }
        match self.eps {
            EpsSpec::Fixed(e) if !(e > 0.0 && e < 1.0) => err("eps must lie in (0, 1)"),
            EpsSpec::Sweep { lo, hi, step } => {
                if !(step > 0.0) {
                    err("sweep step must be positive")
                } else if !(lo > 0.0 && lo <= hi && hi < 1.0) {
                    err("sweep range must satisfy 0 < lo <= hi < 1")
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_grid() {
        let g = EpsSpec::Sweep { lo: 0.3, hi: 0.6, step: 0.025 }.grid();
        assert_eq!(g.len(), 13);
        assert!((g[12] - 0.6).abs() < 1e-9);
        assert_eq!(EpsSpec::Sweep { lo: 0.4, hi: 0.4, step: 0.1 }.grid(), vec![0.4]);
        assert_eq!(EpsSpec::Fixed(0.45).grid(), vec![0.45]);
    }

    #[test]
    fn parse_config_text() {
        let mut c = ExperimentConfig::default();
        c.apply_text(
            "# demo\ninput = sbm\nsbm_n = 100\nsbm-k = 10 # trailing\nmode = targeted\n\
             seeds = 1,2,3\neps_lo = 0.35\ntotal_updates = 500\nsdd_mode = sampled\n",
        )
        .unwrap();
        assert_eq!(c.input, InputSpec::Sbm(SbmSpec { n: 100, k: 10, p: 0.95, q: 0.05, seed: 0 }));
        assert_eq!(c.mode, StreamMode::Targeted);
        assert_eq!(c.seeds, vec![1, 2, 3]);
        assert_eq!(c.eps, EpsSpec::Sweep { lo: 0.35, hi: 0.6, step: 0.025 });
        assert_eq!(c.total_updates, Some(500));
        assert_eq!(c.sdd_mode, SddMode::Sampled);
        c.validate().unwrap();
    }

    #[test]
    fn config_errors() {
        let mut c = ExperimentConfig::default();
        assert!(c.set("bogus", "1").is_err());
        assert!(c.set("sbm_n", "x").is_err());
        assert!(c.apply_text("no equals sign").is_err());
        c.set("input", "snap").unwrap();
        assert!(c.validate().is_err());
        c.set("snap_path", "graph.txt").unwrap();
        c.validate().unwrap();
        c.checkpoint_every = 0;
        assert!(c.validate().is_err());
        c.checkpoint_every = 1;
        c.eps = EpsSpec::Sweep { lo: 0.3, hi: 0.6, step: 0.0 };
        assert!(c.validate().is_err());
    }
}
