//! Session configuration: an optional JSON file supplies defaults which
//! command-line flags override field by field.

use std::fs;
use std::path::Path;

use num::BigRational;
use serde::Deserialize;

use cherednik::params::Params;
use cherednik::scalar::Kappa;
use cherednik::{Caps, Charge, Error, Result};

/// Shape of the `--config` file:
/// `{"l":2,"n":2,"kappa":"symbolic","s":[-1,0],"m":[0,0]}`.
/// All fields are optional; unknown fields are rejected.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub l: Option<usize>,
    pub n: Option<u64>,
    pub kappa: Option<String>,
    pub s: Option<Vec<i64>>,
    pub m: Option<Vec<i64>>,
    pub max_enumeration: Option<usize>,
    pub max_matrix_cells: Option<usize>,
}

pub fn load(path: &Path) -> Result<FileConfig> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("bad config {}: {e}", path.display())))
}

/// Everything a subcommand might need, after merging file and flags.
#[derive(Debug, Clone)]
pub struct Session {
    pub l: Option<usize>,
    pub n: Option<u64>,
    pub kappa: Option<Kappa>,
    pub s: Option<Charge>,
    pub m: Option<Vec<i64>>,
    pub caps: Caps,
}

/// Parse a kappa value: `symbolic`, an integer, or a fraction `a/b`.
pub fn parse_kappa(text: &str) -> Result<Kappa> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("symbolic") {
        return Ok(Kappa::Symbolic);
    }
    let value: BigRational = t
        .parse()
        .map_err(|_| Error::Parse(format!("kappa must be `symbolic` or a rational, got `{t}`")))?;
    Ok(Kappa::Rational(value))
}

/// Parse a bare comma-separated integer list such as `-1,0`.
pub fn parse_int_list(text: &str, what: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad {what} entry `{p}`")))
        })
        .collect()
}

impl Session {
    /// Merge: flag values win over file values.
    #[allow(clippy::too_many_arguments)]
    pub fn merge(
        file: FileConfig,
        l: Option<usize>,
        n: Option<u64>,
        kappa: Option<&str>,
        s: Option<&str>,
        m: Option<&str>,
        max_enumeration: Option<usize>,
        max_matrix_cells: Option<usize>,
    ) -> Result<Session> {
        let kappa = match (kappa, file.kappa) {
            (Some(text), _) => Some(parse_kappa(text)?),
            (None, Some(text)) => Some(parse_kappa(&text)?),
            (None, None) => None,
        };
        let s = match (s, file.s) {
            (Some(text), _) => Some(Charge::new(parse_int_list(text, "charge")?)?),
            (None, Some(list)) => Some(Charge::new(list)?),
            (None, None) => None,
        };
        let m = match (m, file.m) {
            (Some(text), _) => Some(parse_int_list(text, "weighting")?),
            (None, Some(list)) => Some(list),
            (None, None) => None,
        };
        let mut caps = Caps::default();
        if let Some(v) = max_enumeration.or(file.max_enumeration) {
            caps.max_enumeration = v;
        }
        if let Some(v) = max_matrix_cells.or(file.max_matrix_cells) {
            caps.max_matrix_cells = v;
        }
        Ok(Session {
            l: l.or(file.l),
            n: n.or(file.n),
            kappa,
            s,
            m,
            caps,
        })
    }

    /// The level: explicit `-l`, or inferred from the charge length.
    pub fn level(&self) -> Result<usize> {
        if let Some(l) = self.l {
            if let Some(s) = &self.s {
                if s.level() != l {
                    return Err(Error::Parse(format!(
                        "-l {} contradicts the {}-entry charge",
                        l,
                        s.level()
                    )));
                }
            }
            return Ok(l);
        }
        if let Some(s) = &self.s {
            return Ok(s.level());
        }
        Err(Error::Parse(
            "the level is required: pass -l or a charge -s".into(),
        ))
    }

    pub fn size(&self) -> Result<u64> {
        self.n
            .ok_or_else(|| Error::Parse("the size is required: pass -n".into()))
    }

    pub fn charge(&self) -> Result<&Charge> {
        let s = self
            .s
            .as_ref()
            .ok_or_else(|| Error::Parse("a charge is required: pass -s".into()))?;
        if let Some(l) = self.l {
            if s.level() != l {
                return Err(Error::Parse(format!(
                    "-l {} contradicts the {}-entry charge",
                    l,
                    s.level()
                )));
            }
        }
        Ok(s)
    }

    pub fn kappa(&self) -> Result<&Kappa> {
        self.kappa
            .as_ref()
            .ok_or_else(|| Error::Parse("kappa is required: pass --kappa".into()))
    }

    /// A full parameter; `n` falls back to the supplied default when the
    /// session does not fix it.
    pub fn params_with_size(&self, default_n: Option<u64>) -> Result<Params> {
        let n = match (self.n, default_n) {
            (Some(n), _) => n,
            (None, Some(n)) => n,
            (None, None) => return Err(Error::Parse("the size is required: pass -n".into())),
        };
        Params::new(
            n,
            self.kappa()?.clone(),
            self.charge()?.clone(),
            self.m.clone(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_values_parse() {
        assert_eq!(parse_kappa("symbolic").unwrap(), Kappa::Symbolic);
        assert_eq!(parse_kappa("1/2").unwrap(), Kappa::rational(1, 2));
        assert_eq!(parse_kappa("-3").unwrap(), Kappa::rational(-3, 1));
        assert!(parse_kappa("q").is_err());
    }

    #[test]
    fn flags_win_over_file() {
        let file = FileConfig {
            l: Some(2),
            n: Some(2),
            kappa: Some("symbolic".into()),
            s: Some(vec![-1, 0]),
            m: None,
            max_enumeration: None,
            max_matrix_cells: None,
        };
        let session =
            Session::merge(file, None, Some(3), None, Some("4,1"), None, None, None).unwrap();
        assert_eq!(session.n, Some(3));
        assert_eq!(session.charge().unwrap().as_slice(), &[4, 1]);
        assert_eq!(session.level().unwrap(), 2);
        assert!(session.kappa().unwrap().is_symbolic());
    }

    #[test]
    fn level_conflicts_are_caught() {
        let session = Session::merge(
            FileConfig::default(),
            Some(3),
            None,
            None,
            Some("1,0"),
            None,
            None,
            None,
        )
        .unwrap();
        assert!(session.level().is_err());
    }
}
