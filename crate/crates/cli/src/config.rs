use std::path::PathBuf;

use clap::Args;
use serde::Deserialize;

/// Job parameters. Every field can come from a JSON config file or a flag;
/// flags win.
#[derive(Args, Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobConfig {
    /// JSON config file with any of the fields below.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    /// Subcommand this config is meant for (checked when set in a file).
    #[arg(skip)]
    pub subcommand: Option<String>,

    /// Factor dimensions a_1,...,a_n.
    #[arg(long, value_delimiter = ',')]
    pub space: Option<Vec<usize>>,
    /// Weights of the line bundle L; defaults to (1,...,1).
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<i64>>,
    /// Ample polarization for degrees and slopes; defaults to (1,...,1).
    #[arg(long, value_delimiter = ',')]
    pub polarization: Option<Vec<i64>>,
    /// Projective space P^N (same as `--space N`; for `exists`, the Segre dimension).
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub n_top: Option<usize>,

    #[arg(long)]
    pub alpha: Option<usize>,
    #[arg(long)]
    pub beta: Option<usize>,
    #[arg(long)]
    pub gamma: Option<usize>,

    /// type-i, type-ii, p1power or floystad.
    #[arg(long)]
    pub flavor: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,

    /// Monad JSON produced by `build`.
    #[arg(long = "in")]
    #[serde(rename = "in")]
    pub input: Option<PathBuf>,

    /// Exhaustive rank check over these prime fields.
    #[arg(long, value_delimiter = ',')]
    pub exhaustive: Option<Vec<u64>>,
    /// Sampled rank check with this many points.
    #[arg(long)]
    pub samples: Option<u64>,
    /// Prime field for sampled points (default 2^31 - 1).
    #[arg(long)]
    pub modulus: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,

    /// Maximum number of points for an exhaustive sweep.
    #[arg(long)]
    pub point_cap: Option<u128>,
    /// Maximum section-space dimension for a stability cell.
    #[arg(long)]
    pub cell_cap: Option<u64>,

    /// Twist for `cohom`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub twist: Option<Vec<i64>>,
    /// `line` (O(twist)) or `kernel-dual` (T*(twist)).
    #[arg(long)]
    pub bundle: Option<String>,

    /// Run the stability certificate first and feed it to `simplicity`.
    #[arg(long)]
    #[serde(default)]
    pub with_stability: bool,

    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

macro_rules! overlay {
    ($flags:expr, $file:expr, $($f:ident),*) => {
        JobConfig {
            config: $flags.config,
            subcommand: $file.subcommand,
            with_stability: $flags.with_stability || $file.with_stability,
            $($f: $flags.$f.or($file.$f),)*
        }
    };
}

impl JobConfig {
    /// Fill every unset flag from `file`.
    pub fn overlay(self, file: JobConfig) -> JobConfig {
        overlay!(
            self, file, space, weights, polarization, n_top, alpha, beta, gamma, flavor, n, m, k, input,
            exhaustive, samples, modulus, seed, point_cap, cell_cap, twist, bundle, out
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file: JobConfig = serde_json::from_str(r#"{"alpha": 2, "beta": 9, "space": [1, 1], "seed": 7}"#).unwrap();
        let flags = JobConfig { alpha: Some(1), ..Default::default() };
        let c = flags.overlay(file);
        assert_eq!(c.alpha, Some(1));
        assert_eq!(c.beta, Some(9));
        assert_eq!(c.space, Some(vec![1, 1]));
        assert_eq!(c.seed, Some(7));
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(serde_json::from_str::<JobConfig>(r#"{"alpah": 1}"#).is_err());
    }
}
