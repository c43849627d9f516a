use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::dgmanifold::QuasiSmoothSpace;
use crate::exactpoly::{parse_polynomial, parse_rational, vars_from, QMatrix, Rational};
use crate::liealg::{GroupTag, LieAlgebraData};
use crate::reduction::{Classification, HamiltonianSpace};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{origin}: {source}")]
    Toml { origin: String, source: toml::de::Error },
    #[error("{origin}: field `{field}`: {message}")]
    Field { origin: String, field: String, message: String },
    #[error("unknown example `{name}`; built-in examples are: {}", BUILTIN_NAMES.join(", "))]
    UnknownBuiltin { name: String },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// A rational entry: a TOML integer or a string such as `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalValue {
    Int(i64),
    Text(String),
}

impl RationalValue {
    fn parse(&self) -> Result<Rational, String> {
        match self {
            RationalValue::Int(v) => Ok(Rational::from_integer((*v).into())),
            RationalValue::Text(s) => parse_rational(s).map_err(|e| e.to_string()),
        }
    }
}

impl From<&Rational> for RationalValue {
    fn from(r: &Rational) -> Self {
        if r.is_integer() {
            if let Ok(v) = r.to_integer().try_into() {
                return RationalValue::Int(v);
            }
        }
        RationalValue::Text(r.to_string())
    }
}

impl fmt::Display for RationalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalValue::Int(v) => write!(f, "{v}"),
            RationalValue::Text(s) => write!(f, "{s:?}"),
        }
    }
}

pub type RationalMatrix = Vec<Vec<RationalValue>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieConfig {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_tag: Option<GroupTag>,
    /// `[k, i, j, c]` for `c^k_{ij} = c`, 1-based.
    #[serde(default)]
    pub structure_constants: Vec<(usize, usize, usize, RationalValue)>,
    pub rep: Vec<RationalMatrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointConfig {
    pub label: String,
    pub coords: Vec<RationalValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Classification>,
}

/// The on-disk description of a Hamiltonian space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceConfig {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub variables: Vec<String>,
    pub omega: RationalMatrix,
    pub mu: Vec<String>,
    pub lie: LieConfig,
    #[serde(default)]
    pub points: Vec<PointConfig>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointSpec {
    pub label: String,
    pub coords: Vec<Rational>,
    pub expect: Option<Classification>,
}

/// A validated space together with its configured points and source hash.
#[derive(Clone, Debug)]
pub struct LoadedSpace {
    pub config: SpaceConfig,
    pub hamiltonian: HamiltonianSpace,
    pub points: Vec<PointSpec>,
    /// Hex SHA-256 of the config text.
    pub config_hash: String,
}

pub const BUILTINS: [(&str, &str); 5] = [
    ("s1_r2", include_str!("../../spaces/s1_r2.toml")),
    ("s1_r2_shifted", include_str!("../../spaces/s1_r2_shifted.toml")),
    ("so3_cotangent_r3", include_str!("../../spaces/so3_cotangent_r3.toml")),
    ("t2_c2", include_str!("../../spaces/t2_c2.toml")),
    ("trivial_group", include_str!("../../spaces/trivial_group.toml")),
];

pub const BUILTIN_NAMES: [&str; 5] = ["s1_r2", "s1_r2_shifted", "so3_cotangent_r3", "t2_c2", "trivial_group"];

pub fn builtin_source(name: &str) -> Option<&'static str> {
    BUILTINS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

fn field_err(origin: &str, field: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Field { origin: origin.to_string(), field: field.into(), message: message.into() }
}

fn parse_matrix(origin: &str, field: &str, m: &RationalMatrix, n: usize) -> Result<QMatrix, ConfigError> {
    if m.len() != n {
        return Err(field_err(origin, field, format!("has {} rows, expected {n}", m.len())));
    }
    let mut rows = Vec::with_capacity(n);
    for (r, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(field_err(origin, field, format!("row {} has {} entries, expected {n}", r + 1, row.len())));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(c, v)| v.parse().map_err(|e| field_err(origin, format!("{field}[{}][{}]", r + 1, c + 1), e)))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(parsed);
    }
    Ok(QMatrix::from_rows(rows).expect("rows checked square"))
}

impl SpaceConfig {
    pub fn from_toml(text: &str, origin: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|source| ConfigError::Toml { origin: origin.to_string(), source })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Structural validation into a [`HamiltonianSpace`] plus points.
    pub fn build(&self, origin: &str) -> Result<(HamiltonianSpace, Vec<PointSpec>), ConfigError> {
        let n = self.variables.len();
        if let Some(declared) = self.n {
            if declared != n {
                return Err(field_err(origin, "n", format!("is {declared} but {n} variables are listed")));
            }
        }
        let mut seen = BTreeSet::new();
        for v in &self.variables {
            if !seen.insert(v) {
                return Err(field_err(origin, "variables", format!("`{v}` is listed twice")));
            }
        }
        let vars = vars_from(&self.variables);
        let omega = parse_matrix(origin, "omega", &self.omega, n)?;

        let d = self.lie.dim;
        let mut entries = Vec::new();
        let mut given = BTreeSet::new();
        for (t, (k, i, j, c)) in self.lie.structure_constants.iter().enumerate() {
            let field = format!("lie.structure_constants[{}]", t + 1);
            if [k, i, j].iter().any(|&&x| x == 0 || x > d) {
                return Err(field_err(origin, field, format!("indices ({k}, {i}, {j}) must lie in 1..={d}")));
            }
            let c = c.parse().map_err(|e| field_err(origin, &field, e))?;
            if !given.insert((k - 1, i - 1, j - 1)) {
                return Err(field_err(origin, field, format!("c^{k}_{{{i}{j}}} is given twice")));
            }
            entries.push((k - 1, i - 1, j - 1, c));
        }
        let partners: Vec<_> = entries
            .iter()
            .filter(|(k, i, j, _)| i != j && !given.contains(&(*k, *j, *i)))
            .map(|(k, i, j, c)| (*k, *j, *i, -c.clone()))
            .collect();
        entries.extend(partners);
        let mut lie = LieAlgebraData::from_sparse(d, entries).map_err(|e| field_err(origin, "lie.structure_constants", e.to_string()))?;

        if self.lie.rep.len() != d {
            return Err(field_err(origin, "lie.rep", format!("has {} matrices, expected lie.dim = {d}", self.lie.rep.len())));
        }
        let rep = self
            .lie
            .rep
            .iter()
            .enumerate()
            .map(|(i, m)| parse_matrix(origin, &format!("lie.rep[{}]", i + 1), m, n))
            .collect::<Result<Vec<_>, _>>()?;
        lie = lie.with_rep(rep).map_err(|e| field_err(origin, "lie.rep", e.to_string()))?;
        if let Some(tag) = self.lie.group_tag {
            lie = lie.with_group_tag(tag);
        }

        if self.mu.len() != d {
            return Err(field_err(origin, "mu", format!("has {} components, expected lie.dim = {d}", self.mu.len())));
        }
        let mu = self
            .mu
            .iter()
            .enumerate()
            .map(|(j, s)| parse_polynomial(s, &vars).map_err(|e| field_err(origin, format!("mu[{}]", j + 1), e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let space = QuasiSmoothSpace::new(&vars, lie, mu).map_err(|e| field_err(origin, "lie", e.to_string()))?;
        let h = HamiltonianSpace::new(&self.name, space, omega).map_err(|e| field_err(origin, "mu", e.to_string()))?;

        let mut labels = BTreeSet::new();
        let mut points = Vec::new();
        for (t, p) in self.points.iter().enumerate() {
            let field = format!("points[{}]", t + 1);
            if !labels.insert(&p.label) {
                return Err(field_err(origin, field, format!("label `{}` is used twice", p.label)));
            }
            if p.coords.len() != n {
                return Err(field_err(origin, field, format!("has {} coordinates, expected {n}", p.coords.len())));
            }
            let coords = p.coords.iter().map(|v| v.parse().map_err(|e| field_err(origin, &field, e))).collect::<Result<_, _>>()?;
            points.push(PointSpec { label: p.label.clone(), coords, expect: p.expect });
        }
        Ok((h, points))
    }

    pub fn load(self, origin: &str, text: &str) -> Result<LoadedSpace, ConfigError> {
        let (hamiltonian, points) = self.build(origin)?;
        Ok(LoadedSpace { config: self, hamiltonian, points, config_hash: sha256_hex(text.as_bytes()) })
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Parses and validates config text; `origin` names it in errors.
pub fn parse_space(text: &str, origin: &str) -> Result<LoadedSpace, ConfigError> {
    SpaceConfig::from_toml(text, origin)?.load(origin, text)
}

/// Rebuilds a space from an edited config, hashing its serialized form.
pub fn load_config(config: SpaceConfig) -> Result<LoadedSpace, ConfigError> {
    let text = config.to_toml();
    let origin = config.name.clone();
    config.load(&origin, &text)
}

/// A built-in name, or a path to a TOML file.
pub fn load_space(name_or_path: &str) -> Result<LoadedSpace, ConfigError> {
    if let Some(text) = builtin_source(name_or_path) {
        return parse_space(text, name_or_path);
    }
    let path = Path::new(name_or_path);
    if path.extension().is_none() && !path.exists() {
        return Err(ConfigError::UnknownBuiltin { name: name_or_path.to_string() });
    }
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: name_or_path.to_string(), source })?;
    parse_space(&text, name_or_path)
}
