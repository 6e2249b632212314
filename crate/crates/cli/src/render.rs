//! Output helpers shared by the subcommands: compact JSON, CSV with
//! deterministic quoting, and small text formatters.

use num::BigRational;
use serde::Serialize;

use cherednik::{Error, LaurentPoly, Result};

/// Compact JSON plus a trailing newline; key order follows the struct.
pub fn json_line<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::Internal(format!("serialization failed: {e}")))
}

/// Write records as CSV (quoted as needed) and return the full text.
pub fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)
        .map_err(|e| Error::Internal(format!("csv write failed: {e}")))?;
    for row in rows {
        w.write_record(row)
            .map_err(|e| Error::Internal(format!("csv write failed: {e}")))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Internal(format!("csv write failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(format!("csv is not utf-8: {e}")))
}

/// A rational as `p/q` (or a plain integer when q = 1).
pub fn rat(value: &BigRational) -> String {
    value.to_string()
}

/// Laurent polynomial in the quantum variable `v`.
pub fn vpoly(p: &LaurentPoly) -> String {
    p.to_string_var('v')
}

/// Laurent polynomial in the grading variable `q`.
pub fn qpoly(p: &LaurentPoly) -> String {
    p.to_string_var('q')
}

/// Join integers with commas: `8,6,5`.
pub fn int_list(xs: &[i64]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_embedded_commas() {
        let text = csv_text(
            &["label", "value"],
            &[vec!["[[1],[1]]".into(), "1".into()]],
        )
        .unwrap();
        assert_eq!(text, "label,value\n\"[[1],[1]]\",1\n");
    }

    #[test]
    fn json_is_compact() {
        #[derive(Serialize)]
        struct T {
            a: u32,
        }
        assert_eq!(json_line(&T { a: 1 }).unwrap(), "{\"a\":1}\n");
    }
}
