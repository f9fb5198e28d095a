//! JSON semiring files.
//!
//! ```json
//! {
//!   "name": "D2",
//!   "elements": ["0", "1"],
//!   "zero": "0",
//!   "add": [
//!     ["0", "1"],
//!     ["1", "1"]
//!   ],
//!   "mul": [
//!     ["0", "0"],
//!     ["0", "1"]
//!   ]
//! }
//! ```
//!
//! [`to_json`] writes exactly this layout (two-space indent, one table row
//! per line, trailing newline), which is the canonical form: parsing a
//! canonical file and writing it back reproduces it byte for byte.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semiring::{builtin, FiniteSemiring};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemiringFile {
    pub name: String,
    pub elements: Vec<String>,
    pub zero: String,
    pub add: Vec<Vec<String>>,
    pub mul: Vec<Vec<String>>,
}

impl SemiringFile {
    pub fn from_semiring(s: &FiniteSemiring) -> Self {
        let n = s.len();
        let table = |op: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<String>> {
            (0..n)
                .map(|i| (0..n).map(|j| s.element_name(op(i, j)).to_string()).collect())
                .collect()
        };
        SemiringFile {
            name: s.name().to_string(),
            elements: s.names().to_vec(),
            zero: s.element_name(s.zero()).to_string(),
            add: table(&|i, j| s.add(i, j)),
            mul: table(&|i, j| s.mul(i, j)),
        }
    }

    pub fn into_semiring(self) -> Result<FiniteSemiring> {
        FiniteSemiring::from_tables(self.name, &self.elements, &self.add, &self.mul, &self.zero)
    }
}

pub fn parse_json(text: &str) -> Result<FiniteSemiring> {
    serde_json::from_str::<SemiringFile>(text)?.into_semiring()
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn list(items: &[String]) -> String {
    let quoted: Vec<String> = items.iter().map(|s| quote(s)).collect();
    format!("[{}]", quoted.join(", "))
}

/// Canonical JSON text for `s`.
pub fn to_json(s: &FiniteSemiring) -> String {
    let file = SemiringFile::from_semiring(s);
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"name\": {},", quote(&file.name));
    let _ = writeln!(out, "  \"elements\": {},", list(&file.elements));
    let _ = writeln!(out, "  \"zero\": {},", quote(&file.zero));
    for (key, rows, last) in [("add", &file.add, false), ("mul", &file.mul, true)] {
        let _ = writeln!(out, "  \"{key}\": [");
        for (i, row) in rows.iter().enumerate() {
            let sep = if i + 1 < rows.len() { "," } else { "" };
            let _ = writeln!(out, "    {}{sep}", list(row));
        }
        out.push_str(if last { "  ]\n" } else { "  ],\n" });
    }
    out.push_str("}\n");
    out
}

/// Resolves `builtin:NAME` or reads a JSON file.
pub fn load_algebra(spec: &str) -> Result<FiniteSemiring> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return builtin(name);
    }
    let text = std::fs::read_to_string(spec).map_err(|source| Error::Io {
        path: spec.to_string(),
        source,
    })?;
    parse_json(&text)
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::BUILTINS;

    const D2_JSON: &str = r#"{
  "name": "D2",
  "elements": ["0", "1"],
  "zero": "0",
  "add": [
    ["0", "1"],
    ["1", "1"]
  ],
  "mul": [
    ["0", "0"],
    ["0", "1"]
  ]
}
"#;

    #[test]
    fn canonical_d2_round_trips() {
        let s = parse_json(D2_JSON).unwrap();
        assert_eq!(s, builtin("D2").unwrap());
        assert_eq!(to_json(&s), D2_JSON);
    }

    #[test]
    fn builtins_round_trip() {
        for name in BUILTINS {
            let s = builtin(name).unwrap();
            let text = to_json(&s);
            assert_eq!(parse_json(&text).unwrap(), s);
            assert_eq!(to_json(&parse_json(&text).unwrap()), text);
        }
    }

    #[test]
    fn builtin_prefix_and_errors() {
        assert_eq!(load_algebra("builtin:R2").unwrap().name(), "R2");
        assert!(matches!(load_algebra("builtin:nope"), Err(Error::UnknownBuiltin(_))));
        assert!(matches!(
            load_algebra("/definitely/not/here.json"),
            Err(Error::Io { .. })
        ));
        assert!(matches!(parse_json("{\"name\": 1}"), Err(Error::Json(_))));
        // 1 * 0 = 1 breaks annihilation and commutativity.
        let bad = D2_JSON.replace("[\"0\", \"1\"]\n  ]\n}", "[\"1\", \"1\"]\n  ]\n}");
        assert_ne!(bad, D2_JSON);
        assert!(matches!(parse_json(&bad), Err(Error::Axioms(_))));
    }
}
