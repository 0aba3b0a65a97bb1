//! Problem files: a graph plus a coefficient system, in text or JSON form.
//!
//! Text form, one section per header line; `#` starts a comment:
//!
//! ```text
//! VERTICES
//! I II III
//! EDGES
//! I II
//! II III
//! I III
//! SYSTEM
//! rank 2
//! unipotent2 1 2 4
//! ```
//!
//! The `SYSTEM` section holds an optional `rank N` line, then exactly one base line
//! (`trivial N` or `unipotent2 g_0 … g_{m−1}`), then any number of `extend` lines. Each
//! `extend` line adds one trivial quotient; it lists the cochain per edge, edges separated by
//! `;` and the `r` components of one edge by `,`:
//!
//! ```text
//! extend 1,0 ; 2,1 ; 0,1/3
//! ```
//!
//! JSON form carries the same data:
//!
//! ```json
//! {"vertices": ["I", "II", "III"],
//!  "edges": [{"from": "I", "to": "II"}, {"from": "II", "to": "III"}, {"from": "I", "to": "III"}],
//!  "system": {"rank": 2, "kind": "unipotent2", "params": ["1", "2", "4"]}}
//! ```
//!
//! `kind: "extension"` takes `params: {"base": <system>, "cochain": [["1"], ["2"], ["4"]]}`.
//! Rationals are integers or `"p/q"` strings; decimals are refused everywhere.

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};

use crate::graph::{DualGraph, GraphError};
use crate::linalg::{format_rational, parse_rational, Rational, RationalParseError};
use crate::local_system::{EdgeCochain, LocalSystem, LocalSystemError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSpec {
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemSpec {
    Trivial { rank: usize },
    Unipotent2 { g: Vec<Rational> },
    Extension {
        base: Box<SystemSpec>,
        cochain: Vec<Vec<Rational>>,
    },
}

impl SystemSpec {
    pub fn rank(&self) -> usize {
        match self {
            SystemSpec::Trivial { rank } => *rank,
            SystemSpec::Unipotent2 { .. } => 2,
            SystemSpec::Extension { base, .. } => base.rank() + 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SystemSpec::Trivial { .. } => "trivial",
            SystemSpec::Unipotent2 { .. } => "unipotent2",
            SystemSpec::Extension { .. } => "extension",
        }
    }

    fn layers(&self) -> (&SystemSpec, Vec<&Vec<Vec<Rational>>>) {
        match self {
            SystemSpec::Extension { base, cochain } => {
                let (root, mut layers) = base.layers();
                layers.push(cochain);
                (root, layers)
            }
            other => (other, Vec::new()),
        }
    }

    pub fn build(&self, graph: &DualGraph) -> Result<LocalSystem, LocalSystemError> {
        match self {
            SystemSpec::Trivial { rank } => LocalSystem::trivial(graph.clone(), *rank),
            SystemSpec::Unipotent2 { g } => LocalSystem::unipotent_rank2(graph.clone(), g),
            SystemSpec::Extension { base, cochain } => {
                let e = base.build(graph)?;
                let c = EdgeCochain::new(&e, cochain.clone())?;
                e.extend_by_trivial(&c)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
    pub system: SystemSpec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Location {
    Line { line: usize, column: usize },
    Path(String),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Line { line, column } => write!(f, "line {line}, column {column}"),
            Location::Path(p) => write!(f, "at {p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex name `{0}`")]
    DuplicateName(String),
    #[error(transparent)]
    BadRational(#[from] RationalParseError),
    #[error("wrong parameter count: expected {expected}, found {found}")]
    WrongParamCount { expected: usize, found: usize },
    #[error("declared rank {declared} but the system has rank {actual}")]
    RankMismatch { declared: usize, actual: usize },
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{location}: {kind}")]
pub struct ParseError {
    pub location: Location,
    pub kind: ParseErrorKind,
}

impl ProblemSpec {
    pub fn graph(&self) -> Result<DualGraph, GraphError> {
        let index: HashMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| (index[e.from.as_str()], index[e.to.as_str()]))
            .collect();
        DualGraph::new(self.vertices.len(), edges)?.with_labels(self.vertices.clone())
    }

    pub fn local_system(&self) -> Result<LocalSystem, LocalSystemError> {
        self.system.build(&self.graph()?)
    }

    /// Text rendering accepted back by [`parse_spec`].
    pub fn render(&self) -> String {
        let mut out = String::from("VERTICES\n");
        out.push_str(&self.vertices.join(" "));
        out.push_str("\nEDGES\n");
        for e in &self.edges {
            out.push_str(&format!("{} {}\n", e.from, e.to));
        }
        out.push_str("SYSTEM\n");
        out.push_str(&format!("rank {}\n", self.system.rank()));
        let (root, layers) = self.system.layers();
        match root {
            SystemSpec::Trivial { rank } => out.push_str(&format!("trivial {rank}\n")),
            SystemSpec::Unipotent2 { g } => {
                let vals: Vec<String> = g.iter().map(format_rational).collect();
                out.push_str(&format!("unipotent2 {}\n", vals.join(" ")));
            }
            SystemSpec::Extension { .. } => unreachable!("layers() strips extensions"),
        }
        for cochain in layers {
            let per_edge: Vec<String> = cochain
                .iter()
                .map(|v| v.iter().map(format_rational).collect::<Vec<_>>().join(","))
                .collect();
            out.push_str(&format!("extend {}\n", per_edge.join(" ; ")));
        }
        out
    }

    /// Structured form, keys sorted.
    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self.vertices,
            "edges": self.edges.iter().map(|e| json!({"from": e.from, "to": e.to})).collect::<Vec<_>>(),
            "system": system_to_json(&self.system),
        })
    }
}

fn rationals_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|q| Value::String(format_rational(q))).collect())
}

fn system_to_json(s: &SystemSpec) -> Value {
    let params = match s {
        SystemSpec::Trivial { .. } => json!([]),
        SystemSpec::Unipotent2 { g } => rationals_to_json(g),
        SystemSpec::Extension { base, cochain } => json!({
            "base": system_to_json(base),
            "cochain": cochain.iter().map(|c| rationals_to_json(c)).collect::<Vec<_>>(),
        }),
    };
    json!({"rank": s.rank(), "kind": s.kind(), "params": params})
}

/// Parses either format; text starting with `{` is read as JSON.
pub fn parse_spec(text: &str) -> Result<ProblemSpec, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Vertices,
    Edges,
    System,
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokens(line: &str, line_no: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    line: line_no,
                    column: s + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            line: line_no,
            column: s + 1,
        });
    }
    out
}

fn at(line: usize, column: usize, kind: impl Into<ParseErrorKind>) -> ParseError {
    ParseError {
        location: Location::Line { line, column },
        kind: kind.into(),
    }
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> ParseError {
    at(line, column, ParseErrorKind::Syntax(msg.into()))
}

fn parse_text(text: &str) -> Result<ProblemSpec, ParseError> {
    let mut section = Section::None;
    let mut seen = Vec::new();
    let mut vertices: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut declared_rank: Option<(usize, usize, usize)> = None;
    let mut base: Option<(SystemSpec, usize)> = None;
    let mut layers: Vec<(Vec<Vec<Rational>>, usize, usize)> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content, line_no);
        let Some(first) = toks.first() else { continue };

        let header = match first.text {
            "VERTICES" => Some(Section::Vertices),
            "EDGES" => Some(Section::Edges),
            "SYSTEM" => Some(Section::System),
            _ => None,
        };
        if let Some(h) = header {
            if toks.len() > 1 {
                return Err(syntax(line_no, toks[1].column, "unexpected text after section header"));
            }
            if seen.contains(&(h as u8)) {
                return Err(syntax(line_no, first.column, format!("repeated section {}", first.text)));
            }
            seen.push(h as u8);
            section = h;
            continue;
        }

        match section {
            Section::None => {
                return Err(syntax(line_no, first.column, "expected VERTICES, EDGES or SYSTEM"));
            }
            Section::Vertices => {
                for t in &toks {
                    if vertices.iter().any(|v| v == t.text) {
                        return Err(at(
                            t.line,
                            t.column,
                            ParseErrorKind::DuplicateName(t.text.to_string()),
                        ));
                    }
                    vertices.push(t.text.to_string());
                }
            }
            Section::Edges => {
                if toks.len() != 2 {
                    return Err(syntax(line_no, first.column, "an edge line is `FROM TO`"));
                }
                for t in &toks {
                    if !vertices.iter().any(|v| v == t.text) {
                        return Err(at(
                            t.line,
                            t.column,
                            ParseErrorKind::UnknownVertex(t.text.to_string()),
                        ));
                    }
                }
                edges.push((
                    EdgeSpec {
                        from: toks[0].text.to_string(),
                        to: toks[1].text.to_string(),
                    },
                    line_no,
                ));
            }
            Section::System => match first.text {
                "rank" => {
                    if toks.len() != 2 || declared_rank.is_some() {
                        return Err(syntax(line_no, first.column, "expected a single `rank N` line"));
                    }
                    let r = parse_count(&toks[1])?;
                    declared_rank = Some((r, line_no, first.column));
                }
                "trivial" | "unipotent2" => {
                    if base.is_some() {
                        return Err(syntax(line_no, first.column, "the base system is already set"));
                    }
                    if !layers.is_empty() {
                        return Err(syntax(line_no, first.column, "base system must precede `extend`"));
                    }
                    let spec = if first.text == "trivial" {
                        if toks.len() != 2 {
                            return Err(syntax(line_no, first.column, "expected `trivial N`"));
                        }
                        let rank = parse_count(&toks[1])?;
                        if rank == 0 {
                            return Err(syntax(line_no, toks[1].column, "rank must be at least 1"));
                        }
                        SystemSpec::Trivial { rank }
                    } else {
                        let g = toks[1..]
                            .iter()
                            .map(|t| parse_rational(t.text).map_err(|e| at(t.line, t.column, e)))
                            .collect::<Result<Vec<_>, _>>()?;
                        SystemSpec::Unipotent2 { g }
                    };
                    base = Some((spec, line_no));
                }
                "extend" => {
                    if base.is_none() {
                        return Err(syntax(line_no, first.column, "`extend` needs a base system first"));
                    }
                    let body_start = first.column - 1 + "extend".len();
                    let cochain = parse_cochain(&content[body_start..], line_no, body_start)?;
                    layers.push((cochain, line_no, first.column));
                }
                other => {
                    return Err(syntax(
                        line_no,
                        first.column,
                        format!("unknown SYSTEM directive `{other}`"),
                    ));
                }
            },
        }
    }

    if vertices.is_empty() {
        return Err(syntax(last_line.max(1), 1, "no vertices declared"));
    }
    let Some((base, base_line)) = base else {
        return Err(syntax(last_line.max(1), 1, "missing SYSTEM base line"));
    };
    let m = edges.len();
    if let SystemSpec::Unipotent2 { g } = &base {
        if g.len() != m {
            return Err(at(
                base_line,
                1,
                ParseErrorKind::WrongParamCount {
                    expected: m,
                    found: g.len(),
                },
            ));
        }
    }
    let mut system = base;
    for (cochain, line, col) in layers {
        let r = system.rank();
        if cochain.len() != m {
            return Err(at(
                line,
                col,
                ParseErrorKind::WrongParamCount {
                    expected: m,
                    found: cochain.len(),
                },
            ));
        }
        if let Some(bad) = cochain.iter().find(|c| c.len() != r) {
            return Err(at(
                line,
                col,
                ParseErrorKind::WrongParamCount {
                    expected: r,
                    found: bad.len(),
                },
            ));
        }
        system = SystemSpec::Extension {
            base: Box::new(system),
            cochain,
        };
    }
    if let Some((declared, line, col)) = declared_rank {
        if declared != system.rank() {
            return Err(at(
                line,
                col,
                ParseErrorKind::RankMismatch {
                    declared,
                    actual: system.rank(),
                },
            ));
        }
    }
    let first_edge_line = edges.first().map_or(1, |e| e.1);
    let spec = ProblemSpec {
        vertices,
        edges: edges.into_iter().map(|(e, _)| e).collect(),
        system,
    };
    spec.graph().map_err(|g| at(first_edge_line, 1, g))?;
    Ok(spec)
}

fn parse_count(t: &Token<'_>) -> Result<usize, ParseError> {
    t.text
        .parse()
        .map_err(|_| syntax(t.line, t.column, format!("`{}` is not a count", t.text)))
}

fn parse_cochain(body: &str, line: usize, offset: usize) -> Result<Vec<Vec<Rational>>, ParseError> {
    let mut out = Vec::new();
    let mut pos = offset;
    for chunk in body.split(';') {
        let mut comp = Vec::new();
        let mut inner = pos;
        for piece in chunk.split(',') {
            let lead = piece.len() - piece.trim_start().len();
            let lit = piece.trim();
            if lit.is_empty() {
                return Err(syntax(line, inner + lead + 1, "empty cochain component"));
            }
            comp.push(parse_rational(lit).map_err(|e| at(line, inner + lead + 1, e))?);
            inner += piece.len() + 1;
        }
        out.push(comp);
        pos += chunk.len() + 1;
    }
    Ok(out)
}

fn is_valid_name(s: &str) -> bool {
    !s.is_empty()
        && !s.contains(char::is_whitespace)
        && !s.contains('#')
        && !matches!(s, "VERTICES" | "EDGES" | "SYSTEM")
}

fn path_err(path: &str, kind: impl Into<ParseErrorKind>) -> ParseError {
    ParseError {
        location: Location::Path(path.to_string()),
        kind: kind.into(),
    }
}

fn json_syntax(path: &str, msg: impl Into<String>) -> ParseError {
    path_err(path, ParseErrorKind::Syntax(msg.into()))
}

fn parse_json(text: &str) -> Result<ProblemSpec, ParseError> {
    let v: Value = serde_json::from_str(text).map_err(|e| ParseError {
        location: Location::Line {
            line: e.line(),
            column: e.column(),
        },
        kind: ParseErrorKind::Syntax(e.to_string()),
    })?;
    let obj = v.as_object().ok_or_else(|| json_syntax("$", "expected an object"))?;

    let raw_vertices = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| json_syntax("$.vertices", "expected an array of names"))?;
    let mut vertices: Vec<String> = Vec::new();
    for (i, name) in raw_vertices.iter().enumerate() {
        let path = format!("$.vertices[{i}]");
        let name = name
            .as_str()
            .filter(|s| is_valid_name(s))
            .ok_or_else(|| json_syntax(&path, "expected a nonempty name without whitespace"))?;
        if vertices.iter().any(|v| v == name) {
            return Err(path_err(&path, ParseErrorKind::DuplicateName(name.to_string())));
        }
        vertices.push(name.to_string());
    }
    if vertices.is_empty() {
        return Err(json_syntax("$.vertices", "no vertices declared"));
    }

    let raw_edges = obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| json_syntax("$.edges", "expected an array"))?;
    let mut edges = Vec::new();
    for (i, e) in raw_edges.iter().enumerate() {
        let mut ends = Vec::new();
        for key in ["from", "to"] {
            let path = format!("$.edges[{i}].{key}");
            let name = e
                .get(key)
                .and_then(Value::as_str)
                .ok_or_else(|| json_syntax(&path, "expected a vertex name"))?;
            if !vertices.iter().any(|v| v == name) {
                return Err(path_err(&path, ParseErrorKind::UnknownVertex(name.to_string())));
            }
            ends.push(name.to_string());
        }
        let to = ends.pop().unwrap();
        let from = ends.pop().unwrap();
        edges.push(EdgeSpec { from, to });
    }

    let system_value = obj
        .get("system")
        .ok_or_else(|| json_syntax("$.system", "missing system"))?;
    let system = parse_json_system(system_value, "$.system", edges.len())?;
    let spec = ProblemSpec {
        vertices,
        edges,
        system,
    };
    spec.graph().map_err(|g| path_err("$.edges", g))?;
    Ok(spec)
}

fn json_rational(v: &Value, path: &str) -> Result<Rational, ParseError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| path_err(path, e)),
        Value::Number(n) if n.is_i64() || n.is_u64() => {
            parse_rational(&n.to_string()).map_err(|e| path_err(path, e))
        }
        Value::Number(n) => Err(path_err(
            path,
            RationalParseError {
                literal: n.to_string(),
                reason: "decimal literals are not accepted; write p/q",
            },
        )),
        _ => Err(json_syntax(path, "expected an integer or a \"p/q\" string")),
    }
}

fn json_rationals(v: &Value, path: &str) -> Result<Vec<Rational>, ParseError> {
    v.as_array()
        .ok_or_else(|| json_syntax(path, "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, x)| json_rational(x, &format!("{path}[{i}]")))
        .collect()
}

fn parse_json_system(v: &Value, path: &str, m: usize) -> Result<SystemSpec, ParseError> {
    let rank = v
        .get("rank")
        .and_then(Value::as_u64)
        .ok_or_else(|| json_syntax(&format!("{path}.rank"), "expected a count"))? as usize;
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| json_syntax(&format!("{path}.kind"), "expected a string"))?;
    let params_path = format!("{path}.params");
    let params = v.get("params");
    let spec = match kind {
        "trivial" => {
            if let Some(p) = params {
                if p.as_array().is_none_or(|a| !a.is_empty()) {
                    return Err(json_syntax(&params_path, "trivial systems take no params"));
                }
            }
            if rank == 0 {
                return Err(json_syntax(&format!("{path}.rank"), "rank must be at least 1"));
            }
            SystemSpec::Trivial { rank }
        }
        "unipotent2" => {
            let p = params.ok_or_else(|| json_syntax(&params_path, "missing cocycle values"))?;
            let g = json_rationals(p, &params_path)?;
            if g.len() != m {
                return Err(path_err(
                    &params_path,
                    ParseErrorKind::WrongParamCount {
                        expected: m,
                        found: g.len(),
                    },
                ));
            }
            SystemSpec::Unipotent2 { g }
        }
        "extension" => {
            let p = params.ok_or_else(|| json_syntax(&params_path, "missing base and cochain"))?;
            let base_value = p
                .get("base")
                .ok_or_else(|| json_syntax(&format!("{params_path}.base"), "missing base"))?;
            let base = parse_json_system(base_value, &format!("{params_path}.base"), m)?;
            let cpath = format!("{params_path}.cochain");
            let rows = p
                .get("cochain")
                .and_then(Value::as_array)
                .ok_or_else(|| json_syntax(&cpath, "expected an array per edge"))?;
            if rows.len() != m {
                return Err(path_err(
                    &cpath,
                    ParseErrorKind::WrongParamCount {
                        expected: m,
                        found: rows.len(),
                    },
                ));
            }
            let mut cochain = Vec::new();
            for (i, row) in rows.iter().enumerate() {
                let rpath = format!("{cpath}[{i}]");
                let vals = json_rationals(row, &rpath)?;
                if vals.len() != base.rank() {
                    return Err(path_err(
                        &rpath,
                        ParseErrorKind::WrongParamCount {
                            expected: base.rank(),
                            found: vals.len(),
                        },
                    ));
                }
                cochain.push(vals);
            }
            SystemSpec::Extension {
                base: Box::new(base),
                cochain,
            }
        }
        other => {
            return Err(json_syntax(
                &format!("{path}.kind"),
                format!("unknown kind `{other}`"),
            ))
        }
    };
    if spec.rank() != rank {
        return Err(path_err(
            &format!("{path}.rank"),
            ParseErrorKind::RankMismatch {
                declared: rank,
                actual: spec.rank(),
            },
        ));
    }
    Ok(spec)
}
