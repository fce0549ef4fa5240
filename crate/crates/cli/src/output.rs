//! CSV/JSON rendering and the final write. Output is assembled in memory and
//! written only after every computation has succeeded.

use std::fmt::Write as _;
use std::path::Path;

use spin_wigner::HalfInt;

use crate::commands::Failure;

/// Float with 17 significant digits.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Half-integer as a plain decimal: `2`, `-0.5`, `1.5`.
pub fn half(x: HalfInt) -> String {
    format!("{}", x.to_f64())
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    writeln!(out, "{}", header.join(",")).expect("string write");
    for row in rows {
        writeln!(out, "{}", row.join(",")).expect("string write");
    }
    out
}

pub fn json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::internal(format!("JSON encoding: {e}")))?;
    text.push('\n');
    Ok(text)
}

pub fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::validation(format!("cannot write {}: {e}", p.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::validation(format!("cannot write to stdout: {e}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(float(0.5), "5.0000000000000000e-1");
        assert_eq!(half(HalfInt::from_twice(-1)), "-0.5");
        assert_eq!(half(HalfInt::from_int(3)), "3");
        assert_eq!(csv(&["a", "b"], &[vec!["1".into(), "2".into()]]), "a,b\n1,2\n");
    }
}
