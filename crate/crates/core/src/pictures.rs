//! The (extended) moonshine pictures, their roots-of-unity tables and
//! local structure, and DOT/JSON export.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::lcm;
use crate::groups::Catalog;
use crate::lattice::{center_of, hyper_distance, LatticeClass};
use crate::rational::Rational;
use crate::structures::{build_graph, serpent, snake, Edge, Picture};

#[derive(Debug, thiserror::Error)]
pub enum PictureError {
    #[error("NotInPicture: {0}")]
    NotInPicture(LatticeClass),
    #[error("ExportError: {0}")]
    Io(#[from] std::io::Error),
    #[error("ImportError: {0}")]
    Import(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Serpent,
    Snake,
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "serpent" => Ok(Mode::Serpent),
            "snake" => Ok(Mode::Snake),
            _ => Err(format!("unknown mode {s:?} (expected serpent or snake)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Serpent => "serpent",
            Mode::Snake => "snake",
        })
    }
}

/// Classes of the `(n|h)`-serpent, or of the `(hn|1)`-snake.
pub fn classes_for(n: u64, h: u64, mode: Mode) -> BTreeSet<LatticeClass> {
    match mode {
        Mode::Serpent => serpent(n, h).expect("catalog symbols define serpents").classes,
        Mode::Snake => snake(h * n).classes,
    }
}

pub fn picture_classes(catalog: &Catalog, mode: Mode) -> BTreeSet<LatticeClass> {
    catalog
        .entries
        .iter()
        .flat_map(|e| classes_for(e.symbol.n, e.symbol.h, mode))
        .collect()
}

pub fn build_picture(catalog: &Catalog, mode: Mode) -> Picture {
    build_graph(&picture_classes(catalog, mode))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PictureStats {
    pub vertices: usize,
    pub number_classes: usize,
    pub edges: usize,
    pub per_h: BTreeMap<u64, usize>,
}

pub fn stats(p: &Picture) -> PictureStats {
    let mut per_h = BTreeMap::new();
    for v in &p.vertices {
        *per_h.entry(v.h()).or_insert(0) += 1;
    }
    PictureStats {
        vertices: p.vertices.len(),
        number_classes: p.number_classes().count(),
        edges: p.edges.len(),
        per_h,
    }
}

/// Center `C` ↦ orders `h` of the primitive roots of unity centered at `C`.
pub type Roots = BTreeMap<u64, BTreeSet<u64>>;

pub fn roots_of(p: &Picture) -> Roots {
    let mut out: Roots = BTreeMap::new();
    for v in &p.vertices {
        if let Ok(c) = center_of(v) {
            out.entry(c.m_int().unwrap()).or_default().insert(v.h());
        }
    }
    out
}

/// Roots of the extended picture, with the orders absent from the plain
/// picture flagged.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RootsTable {
    pub rows: BTreeMap<u64, BTreeMap<u64, bool>>,
}

impl RootsTable {
    pub fn roots_at(&self, c: u64) -> BTreeSet<u64> {
        self.rows
            .get(&c)
            .map(|r| r.keys().copied().collect())
            .unwrap_or_default()
    }

    pub fn extended_only(&self) -> BTreeMap<u64, BTreeSet<u64>> {
        self.rows
            .iter()
            .filter_map(|(&c, r)| {
                let s: BTreeSet<u64> = r.iter().filter(|(_, &x)| x).map(|(&h, _)| h).collect();
                (!s.is_empty()).then_some((c, s))
            })
            .collect()
    }
}

impl fmt::Display for RootsTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, r) in &self.rows {
            let items: Vec<String> = r
                .iter()
                .map(|(h, &ext)| if ext { format!("({h})") } else { h.to_string() })
                .collect();
            writeln!(f, "{c}\t{}", items.join(","))?;
        }
        Ok(())
    }
}

pub fn roots_table(plain: &Picture, extended: &Picture) -> RootsTable {
    let base = roots_of(plain);
    let mut rows = BTreeMap::new();
    for (c, hs) in roots_of(extended).into_iter().chain(base.clone()) {
        let row: &mut BTreeMap<u64, bool> = rows.entry(c).or_default();
        for h in hs {
            let ext = !base.get(&c).is_some_and(|b| b.contains(&h));
            row.insert(h, ext);
        }
    }
    RootsTable { rows }
}

/// The local structure types that occur, by root set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Template {
    Trivial,
    Two,
    Three,
    TwoThree,
    TwoFour,
    Six,
    Eight,
    Twelve,
    Other,
}

impl Template {
    pub fn of(roots: &BTreeSet<u64>) -> Template {
        let v: Vec<u64> = roots.iter().copied().collect();
        match v.as_slice() {
            [1] => Template::Trivial,
            [1, 2] => Template::Two,
            [1, 3] => Template::Three,
            [1, 2, 3] => Template::TwoThree,
            [1, 2, 4] => Template::TwoFour,
            [1, 2, 3, 6] => Template::Six,
            [1, 2, 4, 8] => Template::Eight,
            [1, 2, 3, 4, 6, 12] => Template::Twelve,
            _ => Template::Other,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalType {
    pub center: u64,
    pub roots: BTreeSet<u64>,
    pub template: Template,
}

fn require_number_vertex(c: u64, p: &Picture) -> Result<LatticeClass, PictureError> {
    let x = LatticeClass::number(c);
    if p.contains(&x) {
        Ok(x)
    } else {
        Err(PictureError::NotInPicture(x))
    }
}

pub fn classify_local(c: u64, p: &Picture) -> Result<LocalType, PictureError> {
    require_number_vertex(c, p)?;
    let roots = roots_of(p).remove(&c).unwrap_or_default();
    let template = Template::of(&roots);
    Ok(LocalType {
        center: c,
        roots,
        template,
    })
}

/// Induced subgraph on the vertices within hyper-distance dividing
/// `lcm(roots at C)` of `C`.
pub fn local_neighborhood(c: u64, p: &Picture) -> Result<Picture, PictureError> {
    let center = require_number_vertex(c, p)?;
    let t = classify_local(c, p)?;
    let l = t.roots.iter().fold(1, |a, &h| lcm(a, h));
    let keep: BTreeSet<LatticeClass> = p
        .vertices
        .iter()
        .filter(|x| l % hyper_distance(&center, x) == 0)
        .copied()
        .collect();
    Ok(p.induced(&keep))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl FromStr for ExportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            _ => Err(format!("unknown format {s:?} (expected dot or json)")),
        }
    }
}

fn edge_style(p: u64) -> String {
    match p {
        2 => "color=black".into(),
        3 => "color=red".into(),
        5 => "color=green".into(),
        _ => format!("label=\"{p}\""),
    }
}

pub fn to_dot(p: &Picture) -> String {
    let mut s = String::from("graph picture {\n");
    for v in &p.vertices {
        writeln!(s, "  \"{v}\";").unwrap();
    }
    for e in &p.edges {
        writeln!(s, "  \"{}\" -- \"{}\" [{}];", e.a, e.b, edge_style(e.p)).unwrap();
    }
    s.push_str("}\n");
    s
}

#[derive(Serialize, Deserialize)]
struct JsonVertex {
    m_num: u64,
    m_den: u64,
    g: u64,
    h: u64,
}

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    a: String,
    b: String,
    p: u64,
}

#[derive(Serialize, Deserialize)]
struct JsonPicture {
    vertices: Vec<JsonVertex>,
    edges: Vec<JsonEdge>,
}

pub fn to_json(p: &Picture) -> String {
    let doc = JsonPicture {
        vertices: p
            .vertices
            .iter()
            .map(|v| JsonVertex {
                m_num: v.m().numer() as u64,
                m_den: v.m().denom() as u64,
                g: v.g(),
                h: v.h(),
            })
            .collect(),
        edges: p
            .edges
            .iter()
            .map(|e| JsonEdge {
                a: e.a.to_string(),
                b: e.b.to_string(),
                p: e.p,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<Picture, PictureError> {
    let err = |e: &dyn fmt::Display| PictureError::Import(e.to_string());
    let doc: JsonPicture = serde_json::from_str(text).map_err(|e| err(&e))?;
    let mut out = Picture::default();
    for v in doc.vertices {
        let m = Rational::new(v.m_num as i128, v.m_den as i128);
        out.vertices
            .insert(LatticeClass::new(m, v.g, v.h).map_err(|e| err(&e))?);
    }
    for e in doc.edges {
        let a: LatticeClass = e.a.parse().map_err(|x| err(&x))?;
        let b: LatticeClass = e.b.parse().map_err(|x| err(&x))?;
        out.edges.insert(Edge::new(a, b, e.p));
    }
    Ok(out)
}

pub fn render(p: &Picture, format: ExportFormat) -> String {
    match format {
        ExportFormat::Dot => to_dot(p),
        ExportFormat::Json => to_json(p),
    }
}

pub fn export(p: &Picture, format: ExportFormat, path: &Path) -> Result<(), PictureError> {
    std::fs::write(path, render(p, format))?;
    Ok(())
}

/// Every center is a multiple of the lcm of the root orders there.
pub fn centers_respect_lcm(roots: &Roots) -> bool {
    roots
        .iter()
        .all(|(&c, hs)| c % hs.iter().fold(1, |a, &h| lcm(a, h)) == 0)
}
