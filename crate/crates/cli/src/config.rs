//! Session configuration, input digests and the Gröbner basis cache.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use hyperdelta::groebner::{groebner_basis, GroebnerBasis, MonomialOrder};
use hyperdelta::poly::{parse_poly, PolyJson};
use hyperdelta::position::{HypersurfaceFamily, Variety, DEFAULT_SUBSET_CAP};
use hyperdelta::weights::DEFAULT_ORACLE_CAP;
use hyperdelta::HomoPoly;
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::CliError;

pub const CACHE_ENV: &str = "HYPERDELTA_CACHE_DIR";

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum PolyInput {
    Text(String),
    Json(PolyJson),
}

impl PolyInput {
    fn to_poly(&self, num_vars: usize) -> Result<HomoPoly, CliError> {
        let p = match self {
            PolyInput::Text(s) => parse_poly(s, num_vars)?,
            PolyInput::Json(j) => {
                if j.vars != num_vars {
                    return Err(hyperdelta::poly::PolyError::DimensionMismatch { expected: num_vars, found: j.vars }.into());
                }
                HomoPoly::try_from(j)?
            }
        };
        Ok(p)
    }
}

/// `{"ambient": N, "variety": [...], "family": [...], ...}`; coordinates are
/// `x0, ..., xN`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionConfig {
    pub ambient: usize,
    #[serde(default)]
    pub variety: Vec<PolyInput>,
    #[serde(default)]
    pub family: Vec<PolyInput>,
    pub seed: Option<u64>,
    pub subset_cap: Option<usize>,
    pub oracle_cap: Option<usize>,
    pub precision: Option<u32>,
    /// 1-based member ordering for `profile` and `replace`.
    pub ordering: Option<Vec<usize>>,
}

impl SessionConfig {
    pub fn num_vars(&self) -> usize {
        self.ambient + 1
    }

    pub fn subset_cap(&self) -> usize {
        self.subset_cap.unwrap_or(DEFAULT_SUBSET_CAP)
    }

    pub fn oracle_cap(&self) -> usize {
        self.oracle_cap.unwrap_or(DEFAULT_ORACLE_CAP)
    }

    pub fn precision(&self) -> u32 {
        self.precision.unwrap_or(hyperdelta::heights::DISPLAY_DIGITS)
    }

    fn validate(&self) -> Result<(), CliError> {
        let zero = |v: Option<usize>| v == Some(0);
        if self.ambient == 0 || zero(self.subset_cap) || zero(self.oracle_cap) || self.precision == Some(0) {
            return Err(CliError::Usage("ambient, caps and precision must be positive".into()));
        }
        Ok(())
    }

    pub fn variety_polys(&self) -> Result<Vec<HomoPoly>, CliError> {
        self.variety.iter().map(|p| p.to_poly(self.num_vars())).collect()
    }

    pub fn family_polys(&self) -> Result<Vec<HomoPoly>, CliError> {
        self.family.iter().map(|p| p.to_poly(self.num_vars())).collect()
    }
}

/// Per-invocation state: the running input digest and cache settings.
pub struct Ctx {
    hasher: Sha256,
    pub use_cache: bool,
}

impl Ctx {
    pub fn new(args: &[String], use_cache: bool) -> Self {
        let mut hasher = Sha256::new();
        for a in args {
            hasher.update(a.as_bytes());
            hasher.update([0]);
        }
        Ctx { hasher, use_cache }
    }

    /// Reads a file and folds its bytes into the digest.
    pub fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        self.hasher.update(text.as_bytes());
        self.hasher.update([0]);
        Ok(text)
    }

    pub fn digest(&self) -> String {
        hex::encode(self.hasher.clone().finalize())
    }

    pub fn load_config(&mut self, path: &Path) -> Result<SessionConfig, CliError> {
        let text = self.read(path)?;
        let cfg: SessionConfig =
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn variety(&self, cfg: &SessionConfig) -> Result<Variety, CliError> {
        let gens = cfg.variety_polys()?;
        let gb = self.basis(cfg.num_vars(), &gens)?;
        Ok(Variety::with_basis(gens, gb)?)
    }

    pub fn family(&self, cfg: &SessionConfig, v: &Variety) -> Result<HypersurfaceFamily, CliError> {
        Ok(HypersurfaceFamily::new(v, cfg.family_polys()?)?)
    }

    /// Reduced grevlex basis, served from the cache when possible.
    pub fn basis(&self, num_vars: usize, gens: &[HomoPoly]) -> Result<GroebnerBasis, CliError> {
        let dir = self.use_cache.then(cache_dir);
        let key = cache_key(num_vars, gens);
        if let Some(gb) = dir.as_ref().and_then(|d| load_cached(d, &key, num_vars)) {
            return Ok(gb);
        }
        let gb = groebner_basis(num_vars, gens, &MonomialOrder::Grevlex)?;
        if let Some(d) = dir {
            store_cached(&d, &key, gb.generators());
        }
        Ok(gb)
    }
}

pub fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("hyperdelta-gb-cache"))
}

fn cache_key(num_vars: usize, gens: &[HomoPoly]) -> String {
    let mut h = Sha256::new();
    h.update(format!("grevlex/{num_vars}"));
    for g in gens {
        h.update([0]);
        h.update(serde_json::to_string(g).expect("serializable").as_bytes());
    }
    hex::encode(h.finalize())
}

fn load_cached(dir: &Path, key: &str, num_vars: usize) -> Option<GroebnerBasis> {
    let text = fs::read_to_string(dir.join(format!("{key}.json"))).ok()?;
    let gens: Vec<HomoPoly> = serde_json::from_str(&text).ok()?;
    GroebnerBasis::from_reduced_generators(num_vars, MonomialOrder::Grevlex, gens).ok()
}

/// Write-once: an existing entry is never replaced. Failures are ignored,
/// the cache is only an accelerator.
fn store_cached(dir: &Path, key: &str, gens: &[HomoPoly]) {
    let target = dir.join(format!("{key}.json"));
    if target.exists() || fs::create_dir_all(dir).is_err() {
        return;
    }
    let tmp = dir.join(format!("{key}.{}.tmp", std::process::id()));
    let ok = fs::File::create(&tmp)
        .and_then(|mut f| f.write_all(serde_json::to_string(gens).expect("serializable").as_bytes()))
        .is_ok();
    if ok && !target.exists() {
        let _ = fs::rename(&tmp, &target);
    }
    let _ = fs::remove_file(&tmp);
}
