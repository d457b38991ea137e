//! Input parsing: map and element files, inline matrix literals, points.

use std::fmt;
use std::fs;
use std::path::Path;

use pwgl::circle::{CircleJson, CirclePoint, PWMoebius};
use pwgl::pwgl::{MapJson, PWMap};
use pwgl::ratgeom::rat::parse_rat;
use pwgl::ratgeom::{IntMatrix, Rat};
use pwgl::torusmap::{ElementJson, ToralAffine};
use serde::de::DeserializeOwned;
use serde_json::Value;

/// Usage or structural problem; exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<pwgl::Error> for InputError {
    fn from(e: pwgl::Error) -> Self {
        InputError(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, InputError>;

fn read_json<T: DeserializeOwned>(path: &str) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))?;
    serde_json::from_str(&text)
        .map_err(|e| InputError(format!("{path}: invalid JSON: {e}")))
}

pub fn load_map(path: &str) -> Result<PWMap> {
    let j: MapJson = read_json(path)?;
    PWMap::from_json(&j).map_err(|e| InputError(format!("{path}: {e}")))
}

pub fn load_circle(path: &str) -> Result<PWMoebius> {
    let j: CircleJson = read_json(path)?;
    PWMoebius::from_json(&j).map_err(|e| InputError(format!("{path}: {e}")))
}

fn is_literal(arg: &str) -> bool {
    arg.trim_start().starts_with('[')
}

/// `[[1,1],[0,1]]`; entries may be integers or quoted integers.
pub fn parse_matrix(s: &str) -> Result<IntMatrix> {
    let v: Value = serde_json::from_str(s).map_err(|e| InputError(format!("bad matrix literal {s:?}: {e}")))?;
    let rows = v.as_array().ok_or_else(|| InputError(format!("bad matrix literal {s:?}")))?;
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        let r = r.as_array().ok_or_else(|| InputError(format!("bad matrix literal {s:?}")))?;
        let row = r
            .iter()
            .map(|x| match x {
                Value::Number(n) => Ok(n.to_string()),
                Value::String(t) => Ok(t.clone()),
                _ => Err(InputError(format!("bad matrix entry {x}"))),
            })
            .collect::<Result<Vec<String>>>()?;
        out.push(row);
    }
    Ok(IntMatrix::from_strings(&out)?)
}

/// A toral affine element: an inline matrix literal or an element file.
pub fn load_element(arg: &str) -> Result<ToralAffine> {
    if is_literal(arg) {
        return Ok(ToralAffine::linear(parse_matrix(arg)?)?);
    }
    let j: ElementJson = read_json(arg)?;
    ToralAffine::from_json(&j).map_err(|e| InputError(format!("{arg}: {e}")))
}

/// A piecewise generator: a map file, an element file or a matrix literal.
pub fn load_generator(arg: &str) -> Result<PWMap> {
    if is_literal(arg) {
        return Ok(PWMap::global(load_element(arg)?));
    }
    let v: Value = read_json(arg)?;
    if v.get("pieces").is_some() {
        load_map(arg)
    } else {
        Ok(PWMap::global(load_element(arg)?))
    }
}

/// Display name for a generator argument.
pub fn generator_name(arg: &str, index: usize) -> String {
    if is_literal(arg) {
        return format!("g{}", index + 1);
    }
    Path::new(arg).file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| format!("g{}", index + 1))
}

/// `1/2,0` or `[1/2, 0]`.
pub fn parse_point(s: &str) -> Result<Vec<Rat>> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    inner
        .split(',')
        .map(|t| parse_rat(t.trim().trim_matches('"')).map_err(InputError::from))
        .collect()
}

pub fn parse_circle_point(s: &str) -> Result<CirclePoint> {
    Ok(CirclePoint::parse(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pwgl::ratgeom::{int, rat};

    #[test]
    fn literals() {
        assert_eq!(parse_matrix("[[1,1],[0,1]]").unwrap(), IntMatrix::from_rows(&[[1, 1], [0, 1]]));
        assert_eq!(parse_matrix(r#"[["2","1"],["1","1"]]"#).unwrap(), IntMatrix::from_rows(&[[2, 1], [1, 1]]));
        assert!(parse_matrix("[[1,1],[0").is_err());
        assert!(load_element("[[2,0],[0,1]]").is_err());
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("1/2,0").unwrap(), vec![rat(1, 2), int(0)]);
        assert_eq!(parse_point("[3/4, 1]").unwrap(), vec![rat(3, 4), int(1)]);
        assert!(parse_point("x,1").is_err());
        assert_eq!(parse_circle_point("inf").unwrap(), CirclePoint::Infinity);
    }
}
