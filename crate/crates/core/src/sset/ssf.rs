//! The SSF text format, and an equivalent structured document for JSON
//! interchange.
//!
//! ```text
//! ssf 1
//! set D1
//! aug *
//! gen 0 0
//! face 0 0 = - *
//! gen 0 1
//! face 1 0 = - *
//! gen 1 0.1
//! face 0.1 0 = - 1
//! face 0.1 1 = - 0
//! ```
//!
//! A face line names the collapsed positions of its operator
//! (comma-separated, ascending) or `-` for the identity, then the target
//! generator. Blank lines and lines starting with `#` are ignored.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{valid_name, AugSimplicialSet, Gen, GenSpec, SimplexRef, SsetError};
use crate::ordinal::{DegeneracyOp, Ordinal};

/// Canonical SSF text: generators in `(dim, index)` order, each followed by
/// its faces.
pub fn to_ssf(x: &AugSimplicialSet) -> String {
    let mut out = String::new();
    out.push_str("ssf 1\n");
    let _ = writeln!(out, "set {}", x.name());
    out.push_str("aug");
    for g in x.gens(-1) {
        let _ = write!(out, " {}", x.gen_name(g));
    }
    out.push('\n');
    for dim in 0..=x.topdim() {
        for g in x.gens(dim) {
            let name = x.gen_name(g);
            let _ = writeln!(out, "gen {dim} {name}");
            for (i, f) in x.faces(g).iter().enumerate() {
                let _ = writeln!(
                    out,
                    "face {name} {i} = {} {}",
                    positions(&f.op),
                    x.gen_name(f.gen)
                );
            }
        }
    }
    out
}

fn positions(op: &DegeneracyOp) -> String {
    if op.is_identity() {
        "-".to_string()
    } else {
        op.collapsed()
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Incremental assembly shared by the text and document readers. `line` is
/// whatever position the caller wants reported in errors.
struct Builder {
    name: Option<String>,
    saw_aug: bool,
    layers: Vec<Vec<GenSpec>>,
    pending: Vec<Vec<Vec<Option<SimplexRef>>>>,
    lines: Vec<Vec<usize>>,
    names: HashMap<String, Gen>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            name: None,
            saw_aug: false,
            layers: vec![Vec::new()],
            pending: vec![Vec::new()],
            lines: vec![Vec::new()],
            names: HashMap::new(),
        }
    }

    fn err(line: usize, msg: impl Into<String>) -> SsetError {
        SsetError::Parse {
            line,
            msg: msg.into(),
        }
    }

    fn set_name(&mut self, line: usize, name: &str) -> Result<(), SsetError> {
        if self.name.is_some() {
            return Err(Self::err(line, "duplicate set line"));
        }
        if name.is_empty() {
            return Err(Self::err(line, "empty set name"));
        }
        self.name = Some(name.to_string());
        Ok(())
    }

    fn declare(&mut self, line: usize, dim: i32, name: &str) -> Result<(), SsetError> {
        if !valid_name(name) {
            return Err(Self::err(line, format!("invalid generator name {name:?}")));
        }
        if self.names.contains_key(name) {
            return Err(Self::err(
                line,
                format!("generator {name:?} declared twice"),
            ));
        }
        let slot = (dim + 1) as usize;
        if slot + 1 < self.layers.len() {
            return Err(Self::err(
                line,
                "generators must be declared in ascending dimension",
            ));
        }
        while self.layers.len() <= slot {
            self.layers.push(Vec::new());
            self.pending.push(Vec::new());
            self.lines.push(Vec::new());
        }
        let faces = if dim < 0 { 0 } else { dim as usize + 1 };
        self.names
            .insert(name.to_string(), Gen::new(dim, self.layers[slot].len()));
        self.layers[slot].push(GenSpec::new(name, Vec::new()));
        self.pending[slot].push(vec![None; faces]);
        self.lines[slot].push(line);
        Ok(())
    }

    fn aug(&mut self, line: usize, names: &[&str]) -> Result<(), SsetError> {
        if self.saw_aug {
            return Err(Self::err(line, "duplicate aug line"));
        }
        if self.layers.len() > 1 {
            return Err(Self::err(line, "aug line must precede generators"));
        }
        self.saw_aug = true;
        names.iter().try_for_each(|n| self.declare(line, -1, n))
    }

    fn gen(&mut self, line: usize, dim: i32, name: &str) -> Result<(), SsetError> {
        if !self.saw_aug {
            return Err(Self::err(line, "aug line must precede generators"));
        }
        if dim < 0 {
            return Err(Self::err(line, "generator dimension must be >= 0"));
        }
        self.declare(line, dim, name)
    }

    fn face(
        &mut self,
        line: usize,
        owner: &str,
        i: usize,
        collapsed: Option<Vec<usize>>,
        target: &str,
    ) -> Result<(), SsetError> {
        let g = *self
            .names
            .get(owner)
            .ok_or_else(|| Self::err(line, format!("unknown generator {owner:?}")))?;
        let t = *self
            .names
            .get(target)
            .ok_or_else(|| Self::err(line, format!("unknown generator {target:?}")))?;
        if g.dim < 0 {
            return Err(Self::err(line, "augmentation elements have no faces"));
        }
        if i > g.dim as usize {
            return Err(Self::err(
                line,
                format!("face index {i} out of range for dimension {}", g.dim),
            ));
        }
        let src = Ordinal::new(g.dim - 1).expect("g.dim >= 0");
        let op = DegeneracyOp::new(src, collapsed.unwrap_or_default())
            .map_err(|e| Self::err(line, format!("bad operator: {e}")))?;
        if op.dst().n() != t.dim {
            return Err(Self::err(
                line,
                format!(
                    "operator lands in dimension {} but {target:?} has dimension {}",
                    op.dst().n(),
                    t.dim
                ),
            ));
        }
        let cell = &mut self.pending[(g.dim + 1) as usize][g.index][i];
        if cell.is_some() {
            return Err(Self::err(
                line,
                format!("face {i} of {owner:?} given twice"),
            ));
        }
        *cell = Some(SimplexRef { op, gen: t });
        Ok(())
    }

    fn finish(mut self, eof_line: usize) -> Result<AugSimplicialSet, SsetError> {
        let name = self
            .name
            .take()
            .ok_or_else(|| Self::err(eof_line, "missing set line"))?;
        if !self.saw_aug {
            return Err(Self::err(eof_line, "missing aug line"));
        }
        for (slot, layer) in self.layers.iter_mut().enumerate() {
            for (idx, spec) in layer.iter_mut().enumerate() {
                let faces = std::mem::take(&mut self.pending[slot][idx]);
                if let Some(i) = faces.iter().position(Option::is_none) {
                    return Err(Self::err(
                        self.lines[slot][idx],
                        format!("generator {:?} is missing face {i}", spec.name),
                    ));
                }
                spec.faces = faces.into_iter().flatten().collect();
            }
        }
        AugSimplicialSet::from_layers(name, self.layers)
            .map_err(|e| Self::err(eof_line, e.to_string()))
    }
}

/// Parses SSF text.
pub fn parse_ssf(text: &str) -> Result<AugSimplicialSet, SsetError> {
    let mut builder = Builder::new();
    let mut saw_header = false;
    let mut last = 0;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        last = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if !saw_header {
            if tokens != ["ssf", "1"] {
                return Err(Builder::err(line, "expected header `ssf 1`"));
            }
            saw_header = true;
            continue;
        }
        match tokens[0] {
            "set" => builder.set_name(line, trimmed["set".len()..].trim())?,
            "aug" => builder.aug(line, &tokens[1..])?,
            "gen" => {
                let [_, dim, name] = tokens[..] else {
                    return Err(Builder::err(line, "expected `gen <dim> <name>`"));
                };
                let dim = dim
                    .parse()
                    .map_err(|_| Builder::err(line, format!("bad dimension {dim:?}")))?;
                builder.gen(line, dim, name)?;
            }
            "face" => {
                let [_, owner, i, "=", ops, target] = tokens[..] else {
                    return Err(Builder::err(
                        line,
                        "expected `face <gen> <i> = <positions|-> <target>`",
                    ));
                };
                let i = i
                    .parse()
                    .map_err(|_| Builder::err(line, format!("bad face index {i:?}")))?;
                let collapsed = if ops == "-" {
                    None
                } else {
                    let parsed: Result<Vec<usize>, _> = ops.split(',').map(str::parse).collect();
                    Some(parsed.map_err(|_| Builder::err(line, format!("bad positions {ops:?}")))?)
                };
                builder.face(line, owner, i, collapsed, target)?;
            }
            other => return Err(Builder::err(line, format!("unknown directive {other:?}"))),
        }
    }
    if !saw_header {
        return Err(Builder::err(last.max(1), "expected header `ssf 1`"));
    }
    builder.finish(last + 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SsfDocument {
    pub name: String,
    pub aug: Vec<String>,
    pub generators: Vec<DocGenerator>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocGenerator {
    pub dim: i32,
    pub name: String,
    pub faces: Vec<DocFace>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocFace {
    pub collapsed: Vec<usize>,
    pub target: String,
}

pub fn to_document(x: &AugSimplicialSet) -> SsfDocument {
    SsfDocument {
        name: x.name().to_string(),
        aug: x.gens(-1).map(|g| x.gen_name(g).to_string()).collect(),
        generators: x
            .all_gens()
            .filter(|g| g.dim >= 0)
            .map(|g| DocGenerator {
                dim: g.dim,
                name: x.gen_name(g).to_string(),
                faces: x
                    .faces(g)
                    .iter()
                    .map(|f| DocFace {
                        collapsed: f.op.collapsed().to_vec(),
                        target: x.gen_name(f.gen).to_string(),
                    })
                    .collect(),
            })
            .collect(),
    }
}

/// Reads a document. Error positions count records: 1 for the header, then
/// one per generator.
pub fn from_document(doc: &SsfDocument) -> Result<AugSimplicialSet, SsetError> {
    let mut builder = Builder::new();
    builder.set_name(1, &doc.name)?;
    let aug: Vec<&str> = doc.aug.iter().map(String::as_str).collect();
    builder.aug(1, &aug)?;
    for (k, g) in doc.generators.iter().enumerate() {
        let record = k + 2;
        builder.gen(record, g.dim, &g.name)?;
        let expected = g.dim.max(-1) as usize + 1;
        if g.faces.len() != expected {
            return Err(Builder::err(
                record,
                format!(
                    "generator {:?} has {} faces, expected {expected}",
                    g.name,
                    g.faces.len()
                ),
            ));
        }
        for (i, f) in g.faces.iter().enumerate() {
            builder.face(record, &g.name, i, Some(f.collapsed.clone()), &f.target)?;
        }
    }
    builder.finish(doc.generators.len() + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{dec, disjoint_union, s0, sigma, standard_simplex};

    #[test]
    fn prints_the_interval() {
        let text = to_ssf(&standard_simplex(1));
        let expected = "ssf 1\nset D1\naug *\ngen 0 0\nface 0 0 = - *\ngen 0 1\nface 1 0 = - *\n\
                        gen 1 0.1\nface 0.1 0 = - 1\nface 0.1 1 = - 0\n";
        assert_eq!(text, expected);
    }

    #[test]
    fn degenerate_faces_print_positions() {
        let text = to_ssf(&sigma(3).unwrap());
        assert!(text.contains("face 0.1.2.3 0 = 0,1 pt"), "{text}");
    }

    #[test]
    fn round_trips() {
        let objects = [
            standard_simplex(3),
            sigma(2).unwrap(),
            s0(),
            dec(&standard_simplex(2)).unwrap(),
            disjoint_union(&standard_simplex(0), &standard_simplex(1)).unwrap(),
            standard_simplex(-1),
        ];
        for x in objects {
            let text = to_ssf(&x);
            let back = parse_ssf(&text).unwrap();
            assert_eq!(back, x);
            assert_eq!(to_ssf(&back), text);
            assert_eq!(from_document(&to_document(&x)).unwrap(), x);
        }
    }

    fn parse_err(text: &str) -> (usize, String) {
        match parse_ssf(text) {
            Err(SsetError::Parse { line, msg }) => (line, msg),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_names() {
        let (line, msg) = parse_err("ssf 1\nset x\naug *\ngen 0 a\nface a 0 = - q\n");
        assert_eq!(line, 5);
        assert!(msg.contains("unknown"));
    }

    #[test]
    fn rejects_non_monotone_operators() {
        let text = "ssf 1\nset x\naug *\ngen 0 a\nface a 0 = - *\ngen 2 t\n\
                    face t 0 = 1,0 a\nface t 1 = 0 a\nface t 2 = 0 a\n";
        let (line, msg) = parse_err(text);
        assert_eq!(line, 7);
        assert!(msg.contains("operator"));
    }

    #[test]
    fn rejects_missing_faces() {
        let (line, msg) =
            parse_err("ssf 1\nset x\naug *\ngen 0 a\nface a 0 = - *\ngen 1 e\nface e 0 = - a\n");
        assert_eq!(line, 6);
        assert!(msg.contains("missing face 1"));
    }

    #[test]
    fn rejects_structural_problems() {
        assert_eq!(parse_err("set x\n").0, 1);
        assert!(parse_err("ssf 1\nset x\ngen 0 a\n").1.contains("aug"));
        assert!(parse_err("ssf 1\nset x\naug *\ngen 1 e\ngen 0 a\n")
            .1
            .contains("ascending"));
        assert!(parse_err("ssf 1\nset x\naug * *\n").1.contains("twice"));
        assert!(
            parse_err("ssf 1\nset x\naug *\ngen 0 a\nface a 0 = - *\nface a 0 = - *\n")
                .1
                .contains("twice")
        );
        assert!(parse_err("ssf 1\nset x\naug *\nbogus\n")
            .1
            .contains("unknown directive"));
    }

    #[test]
    fn ignores_comments_and_blank_lines() {
        let text = "# a point\nssf 1\n\nset P\naug *\ngen 0 v\nface v 0 = - *\n";
        let x = parse_ssf(text).unwrap();
        assert_eq!(x.f_vector(true, None), vec![1, 1]);
    }
}
