//! Flat key-value experiment configuration with typed parameter schemas.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use qscissors::C64;

use crate::error::{CliError, CliResult};

/// Declared type of a preset parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kind {
    Real,
    /// Real and `>= 0`: rates, times, occupations.
    NonNeg,
    Int,
    Complex,
    ComplexList,
    IntList,
    Choice(&'static [&'static str]),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Real(f64),
    Int(usize),
    Complex(C64),
    ComplexList(Vec<C64>),
    IntList(Vec<usize>),
    Text(String),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cx = |z: &C64| format!("({},{})", z.re, z.im);
        match self {
            Value::Real(x) => write!(f, "{x}"),
            Value::Int(n) => write!(f, "{n}"),
            Value::Complex(z) => f.write_str(&cx(z)),
            Value::ComplexList(v) => f.write_str(&v.iter().map(cx).collect::<Vec<_>>().join(";")),
            Value::IntList(v) => f.write_str(&v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(";")),
            Value::Text(s) => f.write_str(s),
        }
    }
}

/// One declared parameter with its default in command-line syntax.
#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub key: &'static str,
    pub kind: Kind,
    pub default: &'static str,
    pub help: &'static str,
}

pub const fn param(key: &'static str, kind: Kind, default: &'static str, help: &'static str) -> ParamSpec {
    ParamSpec {
        key,
        kind,
        default,
        help,
    }
}

fn bad(key: &str, raw: &str, what: &str) -> CliError {
    CliError::config(format!("parameter `{key}`: cannot read `{raw}` as {what}"))
}

fn parse_real(key: &str, s: &str) -> CliResult<f64> {
    let x: f64 = s.trim().parse().map_err(|_| bad(key, s, "a real number"))?;
    if !x.is_finite() {
        return Err(bad(key, s, "a finite number"));
    }
    Ok(x)
}

fn parse_complex(key: &str, s: &str) -> CliResult<C64> {
    let t = s.trim();
    let inner = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(t);
    match inner.split(',').collect::<Vec<_>>().as_slice() {
        [re] => Ok(C64::new(parse_real(key, re)?, 0.0)),
        [re, im] => Ok(C64::new(parse_real(key, re)?, parse_real(key, im)?)),
        _ => Err(bad(key, s, "a complex pair (re,im)")),
    }
}

fn list_items(s: &str) -> impl Iterator<Item = &str> {
    s.split(';').map(str::trim).filter(|p| !p.is_empty())
}

/// Parses a command-line value against its declared kind.
pub fn parse_value(spec: &ParamSpec, raw: &str) -> CliResult<Value> {
    let key = spec.key;
    match spec.kind {
        Kind::Real => Ok(Value::Real(parse_real(key, raw)?)),
        Kind::NonNeg => {
            let x = parse_real(key, raw)?;
            if x < 0.0 {
                return Err(CliError::config(format!("parameter `{key}` must be >= 0, got {x}")));
            }
            Ok(Value::Real(x))
        }
        Kind::Int => raw.trim().parse().map(Value::Int).map_err(|_| bad(key, raw, "a nonnegative integer")),
        Kind::Complex => Ok(Value::Complex(parse_complex(key, raw)?)),
        Kind::ComplexList => list_items(raw)
            .map(|p| parse_complex(key, p))
            .collect::<CliResult<_>>()
            .map(Value::ComplexList),
        Kind::IntList => list_items(raw)
            .map(|p| p.parse().map_err(|_| bad(key, raw, "a list of integers")))
            .collect::<CliResult<_>>()
            .map(Value::IntList),
        Kind::Choice(options) => {
            let t = raw.trim();
            if options.contains(&t) {
                Ok(Value::Text(t.to_string()))
            } else {
                Err(CliError::config(format!("parameter `{key}` must be one of {options:?}, got `{t}`")))
            }
        }
    }
}

/// Converts a TOML value to command-line syntax so both sources share one parser.
fn toml_to_raw(key: &str, v: &toml::Value) -> CliResult<String> {
    let num = |v: &toml::Value| match v {
        toml::Value::Integer(i) => Ok(i.to_string()),
        toml::Value::Float(x) => Ok(x.to_string()),
        _ => Err(CliError::config(format!("parameter `{key}`: expected a number, got {v}"))),
    };
    match v {
        toml::Value::Integer(_) | toml::Value::Float(_) => num(v),
        toml::Value::String(s) => Ok(s.clone()),
        toml::Value::Array(items) => {
            let pair = |a: &toml::Value| -> CliResult<String> {
                match a {
                    toml::Value::Array(p) if p.len() == 2 => Ok(format!("({},{})", num(&p[0])?, num(&p[1])?)),
                    other => num(other),
                }
            };
            let nested = items.iter().any(|a| matches!(a, toml::Value::Array(_)));
            if !nested && items.len() == 2 && items.iter().all(|a| a.is_float()) {
                pair(v)
            } else {
                Ok(items.iter().map(pair).collect::<CliResult<Vec<_>>>()?.join(";"))
            }
        }
        other => Err(CliError::config(format!("parameter `{key}`: unsupported value {other}"))),
    }
}

/// Raw settings from a config file and command-line overrides, before
/// validation against a preset schema.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentConfig {
    pub preset: Option<String>,
    pub output: Option<PathBuf>,
    pub params: BTreeMap<String, String>,
}

impl ExperimentConfig {
    /// Reads a flat TOML table. `preset` and `output` are reserved keys.
    pub fn from_toml_str(text: &str) -> CliResult<Self> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| CliError::config(e.message().to_string()))?;
        let mut cfg = Self::default();
        for (k, v) in &table {
            let key = normalize_key(k);
            match key.as_str() {
                "preset" => cfg.preset = Some(v.as_str().ok_or_else(|| CliError::config("`preset` must be a string"))?.into()),
                "output" => cfg.output = Some(v.as_str().ok_or_else(|| CliError::config("`output` must be a string"))?.into()),
                _ => {
                    if v.is_table() {
                        return Err(CliError::config(format!("`{k}`: nested tables are not supported")));
                    }
                    cfg.params.insert(key.clone(), toml_to_raw(&key, v)?);
                }
            }
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::config(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// Applies `--key value` or `--key=value` pairs; later values win.
    pub fn apply_overrides(&mut self, args: &[String]) -> CliResult<()> {
        let mut it = args.iter();
        while let Some(a) = it.next() {
            let flag = a
                .strip_prefix("--")
                .ok_or_else(|| CliError::config(format!("expected `--key value`, got `{a}`")))?;
            let (k, v) = match flag.split_once('=') {
                Some((k, v)) => (k.to_string(), v.to_string()),
                None => {
                    let v = it.next().ok_or_else(|| CliError::config(format!("missing value for `--{flag}`")))?;
                    (flag.to_string(), v.clone())
                }
            };
            self.params.insert(normalize_key(&k), v);
        }
        Ok(())
    }

    /// Validates against `schema`; unknown keys are rejected.
    pub fn resolve(&self, schema: &[ParamSpec]) -> CliResult<Params> {
        if let Some(k) = self.params.keys().find(|k| !schema.iter().any(|s| s.key == k.as_str())) {
            let known: Vec<_> = schema.iter().map(|s| s.key).collect();
            return Err(CliError::config(format!("unknown parameter `{k}` (known: {})", known.join(", "))));
        }
        let values = schema
            .iter()
            .map(|s| {
                let raw = self.params.get(s.key).map(String::as_str).unwrap_or(s.default);
                Ok((s.key.to_string(), parse_value(s, raw)?))
            })
            .collect::<CliResult<_>>()?;
        Ok(Params { values })
    }
}

pub fn normalize_key(k: &str) -> String {
    k.trim().replace('-', "_")
}

/// Validated parameters with typed accessors.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    values: BTreeMap<String, Value>,
}

impl Params {
    fn get(&self, key: &str) -> &Value {
        self.values
            .get(key)
            .unwrap_or_else(|| panic!("parameter `{key}` is not declared by this preset"))
    }

    pub fn real(&self, key: &str) -> f64 {
        match self.get(key) {
            Value::Real(x) => *x,
            v => panic!("parameter `{key}` is {v:?}, not real"),
        }
    }

    pub fn int(&self, key: &str) -> usize {
        match self.get(key) {
            Value::Int(n) => *n,
            v => panic!("parameter `{key}` is {v:?}, not an integer"),
        }
    }

    pub fn complex(&self, key: &str) -> C64 {
        match self.get(key) {
            Value::Complex(z) => *z,
            v => panic!("parameter `{key}` is {v:?}, not complex"),
        }
    }

    pub fn complex_list(&self, key: &str) -> &[C64] {
        match self.get(key) {
            Value::ComplexList(z) => z,
            v => panic!("parameter `{key}` is {v:?}, not a complex list"),
        }
    }

    pub fn int_list(&self, key: &str) -> &[usize] {
        match self.get(key) {
            Value::IntList(z) => z,
            v => panic!("parameter `{key}` is {v:?}, not an integer list"),
        }
    }

    pub fn text(&self, key: &str) -> &str {
        match self.get(key) {
            Value::Text(s) => s,
            v => panic!("parameter `{key}` is {v:?}, not text"),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Value)> {
        self.values.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SCHEMA: &[ParamSpec] = &[
        param("alpha", Kind::Complex, "(0.5,0)", ""),
        param("gamma", Kind::NonNeg, "0", ""),
        param("cutoff", Kind::Int, "4", ""),
        param("start", Kind::Choice(&["a", "b"]), "a", ""),
        param("alphas", Kind::ComplexList, "(1,0);(0,1)", ""),
        param("holes", Kind::IntList, "", ""),
    ];

    #[test]
    fn defaults_resolve() {
        let p = ExperimentConfig::default().resolve(SCHEMA).unwrap();
        assert_eq!(p.complex("alpha"), C64::new(0.5, 0.0));
        assert_eq!(p.int("cutoff"), 4);
        assert_eq!(p.complex_list("alphas").len(), 2);
        assert!(p.int_list("holes").is_empty());
    }

    #[test]
    fn overrides_win_over_file() {
        let mut cfg = ExperimentConfig::from_toml_str("alpha = [0.1, 0.2]\ncutoff = 6\n").unwrap();
        cfg.apply_overrides(&["--cutoff".into(), "8".into(), "--start=b".into()]).unwrap();
        let p = cfg.resolve(SCHEMA).unwrap();
        assert_eq!(p.complex("alpha"), C64::new(0.1, 0.2));
        assert_eq!(p.int("cutoff"), 8);
        assert_eq!(p.text("start"), "b");
    }

    #[test]
    fn toml_lists_of_pairs() {
        let cfg = ExperimentConfig::from_toml_str("alphas = [[1.0, 0.0], [0.5, -0.5]]\nholes = [1, 3]").unwrap();
        let p = cfg.resolve(SCHEMA).unwrap();
        assert_eq!(p.complex_list("alphas")[1], C64::new(0.5, -0.5));
        assert_eq!(p.int_list("holes"), &[1, 3]);
    }

    #[test]
    fn rejects_unknown_and_invalid() {
        let mut cfg = ExperimentConfig::default();
        cfg.apply_overrides(&["--bogus".into(), "1".into()]).unwrap();
        let e = cfg.resolve(SCHEMA).unwrap_err().to_string();
        assert!(e.contains("bogus"), "{e}");

        for (k, v) in [("gamma", "-1"), ("cutoff", "2.5"), ("start", "c"), ("alpha", "(1,2,3)")] {
            let mut cfg = ExperimentConfig::default();
            cfg.apply_overrides(&[format!("--{k}"), v.into()]).unwrap();
            let e = cfg.resolve(SCHEMA).unwrap_err();
            assert_eq!(e.exit_code(), 2);
            assert!(e.to_string().contains(k));
        }
        assert!(ExperimentConfig::default().apply_overrides(&["cutoff".into()]).is_err());
        assert!(ExperimentConfig::default().apply_overrides(&["--cutoff".into()]).is_err());
    }

    #[test]
    fn hyphenated_keys_normalize() {
        let mut cfg = ExperimentConfig::default();
        cfg.apply_overrides(&["--gamma".into(), "0.5".into()]).unwrap();
        assert_eq!(normalize_key("alpha-over-chi"), "alpha_over_chi");
    }

    #[test]
    fn value_display_round_trips() {
        for spec in SCHEMA {
            let v = parse_value(spec, spec.default).unwrap();
            assert_eq!(parse_value(spec, &v.to_string()).unwrap(), v);
        }
    }
}
