//! Run configuration and group declarations.

use std::path::{Path, PathBuf};

use rdconj_core::bounds::PresentationConstants;
use rdconj_core::group::{FiniteModel, GroupModel, NilpotentModel, DEFAULT_BALL_CAP};
use rdconj_core::homology::DEFAULT_BASIS_CAP;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

/// Environment variable that overrides the configured cache directory.
pub const CACHE_DIR_ENV: &str = "RDCONJ_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    pub ball_size: usize,
    pub basis_size: usize,
    pub radius: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { ball_size: DEFAULT_BALL_CAP, basis_size: DEFAULT_BASIS_CAP, radius: 64 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum NumericMode {
    /// Rationals where the value is exact.
    #[default]
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// A builtin name, a path to a group file, or an inline declaration.
    pub group: Option<Value>,
    pub constants: PresentationConstants,
    pub caps: Caps,
    pub numeric: NumericMode,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
    /// Worker threads; all available cores when absent.
    pub threads: Option<usize>,
    pub seed: u64,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("config file {}: {e}", path.display())))?;
        let cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("config file {}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let positive = |name: &str, v: usize| {
            if v == 0 {
                Err(CliError::Config(format!("caps.{name}: must be positive")))
            } else {
                Ok(())
            }
        };
        positive("ball_size", self.caps.ball_size)?;
        positive("basis_size", self.caps.basis_size)?;
        positive("radius", self.caps.radius as usize)?;
        if self.threads == Some(0) {
            return Err(CliError::Config("threads: must be positive".into()));
        }
        self.constants.validate().map_err(|e| CliError::Config(format!("constants: {e}")))
    }

    /// The cache directory, with the environment taking precedence.
    pub fn resolved_cache_dir(&self) -> Option<PathBuf> {
        std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from).or_else(|| self.cache_dir.clone())
    }
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum ModelSpec {
    Free {
        rank: usize,
    },
    FreeAbelian {
        rank: usize,
    },
    TwoStepNilpotent {
        m: usize,
        n: usize,
        #[serde(rename = "C")]
        c: Vec<Vec<Vec<i64>>>,
        #[serde(default)]
        central_generators: bool,
    },
    Finite {
        builtin: Option<String>,
        table: Option<Vec<Vec<u32>>>,
        names: Option<Vec<String>>,
        generators: Option<Vec<u32>>,
    },
    FreeProduct {
        factors: Vec<Value>,
    },
}

fn at(path: &str, field: &str) -> String {
    if path.is_empty() {
        field.to_string()
    } else {
        format!("{path}.{field}")
    }
}

/// Builds a model from a declaration; errors name the offending field.
pub fn group_from_value(value: &Value, path: &str) -> Result<GroupModel, CliError> {
    if let Value::String(name) = value {
        return builtin(name).ok_or_else(|| CliError::Config(format!("{}: unknown builtin group {name:?}", at(path, "group"))));
    }
    let spec: ModelSpec = serde_json::from_value(value.clone())
        .map_err(|e| CliError::Config(format!("{}: {e}", if path.is_empty() { "group" } else { path })))?;
    let invalid = |e: rdconj_core::group::GroupError| CliError::Config(format!("{}: {e}", if path.is_empty() { "group" } else { path }));
    match spec {
        ModelSpec::Free { rank } => GroupModel::free(rank).map_err(invalid),
        ModelSpec::FreeAbelian { rank } => GroupModel::free_abelian(rank).map_err(invalid),
        ModelSpec::TwoStepNilpotent { m, n, c, central_generators } => NilpotentModel::new(m, n, c, central_generators)
            .map(GroupModel::TwoStepNilpotent)
            .map_err(invalid),
        ModelSpec::Finite { builtin: Some(name), table: None, .. } => builtin(&name)
            .filter(|g| g.as_finite().is_some())
            .ok_or_else(|| CliError::Config(format!("{}: unknown finite builtin {name:?}", at(path, "builtin")))),
        ModelSpec::Finite { builtin: None, table: Some(table), names, generators } => {
            FiniteModel::new(table, names, generators).map(GroupModel::Finite).map_err(invalid)
        }
        ModelSpec::Finite { .. } => {
            Err(CliError::Config(format!("{}: give exactly one of builtin or table", at(path, "table"))))
        }
        ModelSpec::FreeProduct { factors } => {
            let factors = factors
                .iter()
                .enumerate()
                .map(|(i, f)| group_from_value(f, &at(path, &format!("factors[{i}]"))))
                .collect::<Result<Vec<_>, _>>()?;
            GroupModel::free_product(factors).map_err(invalid)
        }
    }
}

/// Builtin names, with `A*B` for free products of builtins.
pub fn builtin(name: &str) -> Option<GroupModel> {
    if name.contains('*') {
        let factors = name.split('*').map(|f| GroupModel::builtin(f.trim())).collect::<Option<Vec<_>>>()?;
        return GroupModel::free_product(factors).ok();
    }
    GroupModel::builtin(name)
}

/// Resolves `--group`: inline JSON, a group file, or a builtin name.
pub fn parse_group(arg: &str) -> Result<GroupModel, CliError> {
    let t = arg.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| CliError::Config(format!("group: {e}")))?;
        return group_from_value(&v, "");
    }
    let path = Path::new(t);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("group file {}: {e}", path.display())))?;
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("group file {}: {e}", path.display())))?;
        return group_from_value(&v, "").map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("group file {}: {m}", path.display())),
            other => other,
        });
    }
    builtin(t).ok_or_else(|| CliError::Config(format!("group: {t:?} is neither a builtin nor a readable file")))
}
