//! Reading value lists from inline arguments and files.

use std::path::Path;

use antibidiag::Scalar;
use serde_json::Value;

use crate::error::CliError;

/// Which list a command expects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Spectrum,
    A,
    Mus,
}

impl Field {
    pub fn key(self) -> &'static str {
        match self {
            Field::Spectrum => "spectrum",
            Field::A => "a",
            Field::Mus => "mus",
        }
    }

    pub fn flag(self) -> &'static str {
        match self {
            Field::Spectrum => "--spectrum",
            Field::A => "--a",
            Field::Mus => "--mus",
        }
    }
}

/// Split `3,-2,1` (optionally wrapped in parentheses or brackets) into values.
/// An empty list is returned as such so validation can reject it.
pub fn parse_inline<S: Scalar>(text: &str) -> Result<Vec<S>, CliError> {
    let t = text
        .trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']'])
        .trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split([',', ';'])
        .map(|tok| S::parse_literal(tok).map_err(CliError::from))
        .collect()
}

/// One value per line (blank lines and `#` comments skipped); commas within a
/// line are also accepted.
pub fn parse_csv<S: Scalar>(text: &str) -> Result<Vec<S>, CliError> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        for tok in line.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            out.push(S::parse_literal(tok)?);
        }
    }
    Ok(out)
}

fn value_literal(v: &Value) -> Result<String, CliError> {
    match v {
        Value::Number(n) => Ok(n.to_string()),
        Value::String(s) => Ok(s.clone()),
        other => Err(CliError::Document(format!("expected a number, got {other}"))),
    }
}

/// `{"spectrum": [...]}`, `{"a": [...]}` or `{"mus": [...]}`; a bare array is
/// also accepted.
pub fn parse_json<S: Scalar>(text: &str, field: Field) -> Result<Vec<S>, CliError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| CliError::Document(e.to_string()))?;
    let list = match &doc {
        Value::Array(items) => items,
        Value::Object(map) => match map.get(field.key()) {
            Some(Value::Array(items)) => items,
            Some(_) => return Err(CliError::Document(format!("`{}` must be an array", field.key()))),
            None => {
                return Err(CliError::Document(format!(
                    "missing key `{}` for this command",
                    field.key()
                )))
            }
        },
        _ => return Err(CliError::Document("expected an object or an array".into())),
    };
    list.iter()
        .map(|v| S::parse_literal(&value_literal(v)?).map_err(CliError::from))
        .collect()
}

pub fn load_file<S: Scalar>(path: &Path, field: Field) -> Result<Vec<S>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        parse_json(&text, field)
    } else {
        parse_csv(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use antibidiag::scalar::ratio;
    use antibidiag::Rational;

    #[test]
    fn inline_lists() {
        assert_eq!(parse_inline::<f64>("3,-2,1").unwrap(), vec![3.0, -2.0, 1.0]);
        assert_eq!(parse_inline::<f64>("(1, 2)").unwrap(), vec![1.0, 2.0]);
        assert!(parse_inline::<f64>("()").unwrap().is_empty());
        assert!(parse_inline::<f64>("").unwrap().is_empty());
        assert_eq!(
            parse_inline::<Rational>("1/2,-1/3").unwrap(),
            vec![ratio(1, 2), ratio(-1, 3)]
        );
        assert!(parse_inline::<f64>("1,x").is_err());
    }

    #[test]
    fn csv_lines() {
        let v: Vec<f64> = parse_csv("# header\n3\n-2\n\n1\n").unwrap();
        assert_eq!(v, vec![3.0, -2.0, 1.0]);
    }

    #[test]
    fn json_documents() {
        let v: Vec<Rational> = parse_json(r#"{"spectrum": [3, "-2", 0.5]}"#, Field::Spectrum).unwrap();
        assert_eq!(v, vec![ratio(3, 1), ratio(-2, 1), ratio(1, 2)]);
        assert!(parse_json::<f64>(r#"{"mus": [1]}"#, Field::Spectrum).is_err());
        assert_eq!(parse_json::<f64>("[1, 2]", Field::A).unwrap(), vec![1.0, 2.0]);
    }
}
