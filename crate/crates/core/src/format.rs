//! The JSON interchange format for structures.
//!
//! ```json
//! {"labels": ["e", "a"], "name": "Z2", "ops": [{"arity": 2, "name": "mul", "table": [0, 1, 1, 0]}],
//!  "rels": [], "size": 2}
//! ```
//!
//! Tables are flat and row-major over argument tuples in lexicographic order.
//! The canonical rendering has sorted object keys and sorted relation tuples,
//! so equal structures serialize to identical bytes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::{Signature, Structure, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpEntry {
    pub name: String,
    pub arity: usize,
    pub table: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelEntry {
    pub name: String,
    pub arity: usize,
    pub tuples: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    #[serde(default)]
    pub name: String,
    pub size: usize,
    #[serde(default)]
    pub ops: Vec<OpEntry>,
    #[serde(default)]
    pub rels: Vec<RelEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl From<&Structure> for StructureFile {
    fn from(s: &Structure) -> Self {
        let sig = s.signature();
        StructureFile {
            name: s.name().to_string(),
            size: s.size(),
            ops: sig
                .ops()
                .iter()
                .enumerate()
                .map(|(i, sym)| OpEntry { name: sym.name.clone(), arity: sym.arity, table: s.op_table(i).to_vec() })
                .collect(),
            rels: sig
                .rels()
                .iter()
                .enumerate()
                .map(|(i, sym)| RelEntry {
                    name: sym.name.clone(),
                    arity: sym.arity,
                    tuples: s.relation(i).iter().cloned().collect(),
                })
                .collect(),
            labels: s.labels().map(<[String]>::to_vec),
        }
    }
}

impl TryFrom<StructureFile> for Structure {
    type Error = Error;

    fn try_from(file: StructureFile) -> Result<Structure> {
        let sig = Signature::new(
            file.ops.iter().map(|o| Symbol::new(&o.name, o.arity)).collect(),
            file.rels.iter().map(|r| Symbol::new(&r.name, r.arity)).collect(),
        )?;
        let ops = file.ops.into_iter().map(|o| o.table).collect();
        let rels = file.rels.into_iter().map(|r| r.tuples).collect();
        let s = Structure::new(sig, file.size, ops, rels)?.with_name(file.name);
        match file.labels {
            Some(labels) => s.with_labels(labels),
            None => Ok(s),
        }
    }
}

/// Canonical pretty-printed JSON, ending in a newline.
pub fn to_json(s: &Structure) -> String {
    // Going through `Value` sorts the object keys.
    let value = serde_json::to_value(StructureFile::from(s)).expect("plain data serializes");
    let mut out = serde_json::to_string_pretty(&value).expect("plain data serializes");
    out.push('\n');
    out
}

/// Parses and validates a structure. Syntax errors carry a line and column;
/// invariant violations name the offending symbol.
pub fn from_json(text: &str) -> Result<Structure> {
    let file: StructureFile = serde_json::from_str(text).map_err(|e| Error::Format(format!("structure file: {e}")))?;
    Structure::try_from(file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{build, graph, Family};

    #[test]
    fn round_trip_group() {
        let (s3, _) = build(&Family::SymmetricGroup(3)).unwrap();
        let text = to_json(&s3);
        let back = from_json(&text).unwrap();
        assert_eq!(back, s3);
        assert_eq!(back.labels(), s3.labels());
        assert_eq!(to_json(&back), text);
    }

    #[test]
    fn keys_are_sorted() {
        let g = graph(2, &[(0, 1)]).unwrap();
        let text = to_json(&g);
        let keys: Vec<usize> = ["\"name\"", "\"ops\"", "\"rels\"", "\"size\""].iter().map(|k| text.find(k).unwrap()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "{text}");
    }

    #[test]
    fn reports_line_of_syntax_error() {
        let err = from_json("{\n\"size\": 2,\n\"ops\": [\n}").unwrap_err().to_string();
        assert!(err.contains("line 4"), "{err}");
    }

    #[test]
    fn reports_bad_table() {
        let text = r#"{"size": 2, "ops": [{"name": "f", "arity": 1, "table": [0]}]}"#;
        let err = from_json(text).unwrap_err().to_string();
        assert!(err.contains("non-total table for `f`"), "{err}");
        let text = r#"{"size": 2, "ops": [{"name": "f", "arity": 1, "table": [0, 2]}]}"#;
        assert!(from_json(text).unwrap_err().to_string().contains("out-of-range entry"));
        let text = r#"{"size": 2, "extra": 1}"#;
        assert!(from_json(text).unwrap_err().to_string().contains("extra"));
    }
}
