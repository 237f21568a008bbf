//! Line-oriented `.wpc` input: `dim D`, `vertex <id> <f>`,
//! `simplex <v0> <v1> ... [w=<x>]` and `#` comments.

use std::fmt::Write as _;

use lzcycles::complex::{ComplexError, SimplicialComplex};
use lzcycles::fixtures::Fixture;
use lzcycles::levelset::{LevelsetContext, LevelsetError, PlFunction};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum WpcError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `dim` line")]
    MissingDim,
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Levelset(#[from] LevelsetError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct WpcFile {
    pub dim: usize,
    pub vertices: Vec<(u32, f64)>,
    pub simplices: Vec<(Vec<u32>, Option<f64>)>,
}

fn syntax<T>(line: usize, msg: impl Into<String>) -> Result<T, WpcError> {
    Err(WpcError::Syntax {
        line,
        msg: msg.into(),
    })
}

/// Parses `text`. With `p` given, weights are accepted only on p-simplices.
pub fn parse(text: &str, p: Option<usize>) -> Result<WpcFile, WpcError> {
    let mut dim = None;
    let mut vertices: Vec<(u32, f64)> = Vec::new();
    let mut simplices = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        let mut words = content.split_whitespace();
        let Some(head) = words.next() else { continue };
        let rest: Vec<&str> = words.collect();
        match head {
            "dim" => {
                if dim.is_some() {
                    return syntax(line, "repeated `dim`");
                }
                match rest.as_slice() {
                    [d] => {
                        dim = Some(
                            d.parse()
                                .or_else(|_| syntax(line, format!("bad dimension `{d}`")))?,
                        )
                    }
                    _ => return syntax(line, "expected `dim <D>`"),
                }
            }
            "vertex" => {
                let [id, f] = rest.as_slice() else {
                    return syntax(line, "expected `vertex <id> <f>`");
                };
                let id: u32 = id
                    .parse()
                    .or_else(|_| syntax(line, format!("bad vertex id `{id}`")))?;
                let f: f64 = f
                    .parse()
                    .or_else(|_| syntax(line, format!("bad value `{f}`")))?;
                if !f.is_finite() {
                    return syntax(line, format!("value of vertex {id} is not finite"));
                }
                if vertices.iter().any(|&(v, _)| v == id) {
                    return syntax(line, format!("vertex {id} declared twice"));
                }
                vertices.push((id, f));
            }
            "simplex" => {
                let Some(d) = dim else {
                    return syntax(line, "`simplex` before `dim`");
                };
                let mut vs = Vec::new();
                let mut w = None;
                for tok in &rest {
                    if let Some(x) = tok.strip_prefix("w=") {
                        if w.is_some() {
                            return syntax(line, "repeated weight");
                        }
                        w = Some(
                            x.parse::<f64>()
                                .or_else(|_| syntax(line, format!("bad weight `{x}`")))?,
                        );
                    } else {
                        let v: u32 = tok
                            .parse()
                            .or_else(|_| syntax(line, format!("bad vertex id `{tok}`")))?;
                        if !vertices.iter().any(|&(u, _)| u == v) {
                            return syntax(line, format!("undeclared vertex {v}"));
                        }
                        vs.push(v);
                    }
                }
                if vs.is_empty() {
                    return syntax(line, "simplex without vertices");
                }
                if vs.len() > d + 1 {
                    return syntax(line, format!("{}-simplex exceeds dim {d}", vs.len() - 1));
                }
                if let (Some(_), Some(p)) = (w, p) {
                    if vs.len() != p + 1 {
                        return syntax(
                            line,
                            format!(
                                "weight on a {}-simplex; only {p}-simplices carry weights",
                                vs.len() - 1
                            ),
                        );
                    }
                }
                simplices.push((vs, w));
            }
            other => return syntax(line, format!("unknown keyword `{other}`")),
        }
    }
    Ok(WpcFile {
        dim: dim.ok_or(WpcError::MissingDim)?,
        vertices,
        simplices,
    })
}

/// Canonical text: vertices, then simplices, in stored order.
pub fn serialize(file: &WpcFile) -> String {
    let mut out = format!("dim {}\n", file.dim);
    for &(id, f) in &file.vertices {
        writeln!(out, "vertex {id} {f:?}").unwrap();
    }
    for (vs, w) in &file.simplices {
        let vs: Vec<String> = vs.iter().map(u32::to_string).collect();
        match w {
            Some(w) => writeln!(out, "simplex {} w={w:?}", vs.join(" ")).unwrap(),
            None => writeln!(out, "simplex {}", vs.join(" ")).unwrap(),
        }
    }
    out
}

impl WpcFile {
    /// Vertices in the file; simplices are the top simplices of `fx` plus its
    /// p-simplices of non-unit weight.
    pub fn from_fixture(fx: &Fixture) -> Self {
        let cx = &fx.cx;
        let top = cx.dim().unwrap_or(0);
        let vertices = (0..cx.num_vertices())
            .map(|v| (cx.vertex_label(v), fx.f.value(v)))
            .collect();
        let mut simplices: Vec<(Vec<u32>, Option<f64>)> = cx
            .ids_of_dim(top)
            .map(|s| (cx.simplex(s).vertices().to_vec(), None))
            .collect();
        for s in cx.ids_of_dim(fx.p) {
            let w = cx.weight(s);
            if w != 1.0 {
                simplices.push((cx.simplex(s).vertices().to_vec(), Some(w)));
            }
        }
        WpcFile {
            dim: top,
            vertices,
            simplices,
        }
    }

    pub fn complex(&self) -> Result<SimplicialComplex, WpcError> {
        let tops: Vec<Vec<u32>> = self.simplices.iter().map(|(vs, _)| vs.clone()).collect();
        let weights: Vec<(Vec<u32>, f64)> = self
            .simplices
            .iter()
            .filter_map(|(vs, w)| w.map(|w| (vs.clone(), w)))
            .collect();
        Ok(SimplicialComplex::build(&tops, &weights)?)
    }

    /// Complex and function for dimension `p` (default `dim - 1`).
    pub fn context(&self, p: Option<usize>) -> Result<LevelsetContext, WpcError> {
        let cx = self.complex()?;
        let f = PlFunction::from_labels(&cx, &self.vertices)?;
        let p = p.unwrap_or(self.dim.saturating_sub(1));
        Ok(LevelsetContext::new(cx, f, p))
    }
}
