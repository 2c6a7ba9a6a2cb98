//! Flat `key = value` configuration with `[section]` headers.

use std::fmt;

use algred::golden_code::Alphabet;
use algred::sim_engine::{Scheme, SimConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    /// 1-based line, or 0 when the problem is not tied to a line.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError { line, message: message.into() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Ini {
    pub sections: Vec<(String, Vec<Entry>)>,
}

impl Ini {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut ini = Ini::default();
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let s = raw.split(['#', ';']).next().unwrap_or("").trim();
            if s.is_empty() {
                continue;
            }
            if let Some(rest) = s.strip_prefix('[') {
                let Some(name) = rest.strip_suffix(']') else {
                    return err(line, format!("unterminated section header '{s}'"));
                };
                let name = name.trim();
                if name.is_empty() {
                    return err(line, "empty section name");
                }
                if ini.sections.iter().any(|(n, _)| n == name) {
                    return err(line, format!("section [{name}] appears twice"));
                }
                ini.sections.push((name.to_string(), Vec::new()));
                continue;
            }
            let Some((key, value)) = s.split_once('=') else {
                return err(line, format!("expected 'key = value', found '{s}'"));
            };
            let key = key.trim();
            if key.is_empty() {
                return err(line, "missing key before '='");
            }
            let Some((_, entries)) = ini.sections.last_mut() else {
                return err(line, format!("key '{key}' appears before any [section] header"));
            };
            if let Some(prev) = entries.iter().find(|e| e.key == key) {
                return err(line, format!("duplicate key '{key}' (first set on line {})", prev.line));
            }
            entries.push(Entry { key: key.to_string(), value: value.trim().to_string(), line });
        }
        Ok(ini)
    }

    pub fn section(&self, name: &str) -> Option<&[Entry]> {
        self.sections.iter().find(|(n, _)| n == name).map(|(_, e)| e.as_slice())
    }
}

const SIM_KEYS: [&str; 6] = ["alphabet", "schemes", "snr_db", "frames_per_point", "min_errors", "seed"];

fn parse_num<T: std::str::FromStr>(e: &Entry) -> Result<T, ConfigError> {
    e.value.parse().or_else(|_| err(e.line, format!("'{}' is not a valid value for {}", e.value, e.key)))
}

/// `a, b, c` or the inclusive range `start:stop:step`.
fn parse_grid(e: &Entry) -> Result<Vec<f64>, ConfigError> {
    let v = e.value.trim();
    if v.is_empty() {
        return err(e.line, "snr_db is empty");
    }
    if v.contains(':') {
        let parts: Vec<&str> = v.split(':').map(str::trim).collect();
        let nums: Vec<f64> = match parts.iter().map(|p| p.parse::<f64>()).collect::<Result<_, _>>() {
            Ok(n) if parts.len() == 3 => n,
            _ => return err(e.line, format!("expected start:stop:step, found '{v}'")),
        };
        let (start, stop, step) = (nums[0], nums[1], nums[2]);
        if !(step > 0.0) || stop < start {
            return err(e.line, format!("range '{v}' needs step > 0 and stop >= start"));
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        return Ok((0..=n).map(|k| start + step * k as f64).collect());
    }
    v.split(',')
        .map(|x| x.trim().parse::<f64>().or_else(|_| err(e.line, format!("'{}' is not a number", x.trim()))))
        .collect()
}

/// Reads the `[simulate]` section.
pub fn sim_config(ini: &Ini) -> Result<SimConfig, ConfigError> {
    let Some(entries) = ini.section("simulate") else {
        return err(0, "missing [simulate] section");
    };
    if let Some((name, entries)) = ini.sections.iter().find(|(n, _)| n != "simulate") {
        let line = entries.first().map_or(0, |e| e.line.saturating_sub(1));
        return err(line, format!("unknown section [{name}]"));
    }
    let mut cfg = SimConfig::default();
    let mut saw_grid = false;
    let mut saw_schemes = false;
    for e in entries {
        match e.key.as_str() {
            "alphabet" => {
                cfg.alphabet = Alphabet::from_order(parse_num(e)?).or_else(|x| err(e.line, x.to_string()))?;
            }
            "schemes" => {
                let list: Vec<Scheme> = e
                    .value
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| s.parse().or_else(|x: algred::Error| err(e.line, x.to_string())))
                    .collect::<Result<_, _>>()?;
                if list.is_empty() {
                    return err(e.line, "schemes is empty");
                }
                cfg.schemes = list;
                saw_schemes = true;
            }
            "snr_db" => {
                cfg.snr_grid_db = parse_grid(e)?;
                saw_grid = true;
            }
            "frames_per_point" => cfg.frames_per_point = parse_num(e)?,
            "min_errors" => cfg.min_errors = parse_num(e)?,
            "seed" => cfg.seed = parse_num(e)?,
            other => {
                return err(e.line, format!("unknown key '{other}' (expected one of {})", SIM_KEYS.join(", ")));
            }
        }
        if let Err(x) = cfg.validate() {
            let structural = matches!(e.key.as_str(), "snr_db" | "frames_per_point");
            if structural {
                return err(e.line, x.to_string());
            }
        }
    }
    if !saw_grid {
        return err(0, "missing key snr_db in [simulate]");
    }
    if !saw_schemes {
        return err(0, "missing key schemes in [simulate]");
    }
    cfg.validate().or_else(|x| err(0, x.to_string()))?;
    Ok(cfg)
}
