//! Embedded catalogs of moonshine groups and the reference tables that are
//! compared against, never used for construction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use super::symbol::{parse_symbol, MoonshineSymbol};
use super::GroupError;

/// Environment variable naming a directory whose TSV files replace the
/// embedded ones.
pub const CATALOG_DIR_ENV: &str = "BIGPIC_CATALOG_DIR";

const MONSTER: &str = include_str!("../../data/monster.tsv");
const M24: &str = include_str!("../../data/m24.tsv");
const MONSTER_THREADS: &str = include_str!("../../data/monster_threads.tsv");
const M24_THREADS: &str = include_str!("../../data/m24_threads.tsv");
const MONSTER_ROOTS: &str = include_str!("../../data/monster_roots.tsv");
const M24_ROOTS: &str = include_str!("../../data/m24_roots.tsv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CatalogId {
    Monster,
    M24,
}

impl CatalogId {
    pub fn name(self) -> &'static str {
        match self {
            CatalogId::Monster => "monster",
            CatalogId::M24 => "m24",
        }
    }

    fn files(self) -> [(&'static str, &'static str); 3] {
        match self {
            CatalogId::Monster => [
                ("monster.tsv", MONSTER),
                ("monster_threads.tsv", MONSTER_THREADS),
                ("monster_roots.tsv", MONSTER_ROOTS),
            ],
            CatalogId::M24 => [
                ("m24.tsv", M24),
                ("m24_threads.tsv", M24_THREADS),
                ("m24_roots.tsv", M24_ROOTS),
            ],
        }
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CatalogId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "monster" => Ok(CatalogId::Monster),
            "m24" => Ok(CatalogId::M24),
            _ => Err(format!("unknown catalog {s:?} (expected monster or m24)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub class_name: String,
    pub symbol: MoonshineSymbol,
    pub metadata: Option<String>,
}

impl CatalogEntry {
    /// Element order, read from the leading digits of the class name.
    pub fn order(&self) -> u64 {
        let digits: String = self.class_name.chars().take_while(char::is_ascii_digit).collect();
        digits.parse().expect("class names start with the element order")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub id: CatalogId,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn get(&self, class_name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.class_name == class_name)
    }

    /// Entries carrying exactly this symbol.
    pub fn with_symbol(&self, s: &MoonshineSymbol) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| &e.symbol == s).collect()
    }
}

fn rows(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|(i, l)| (i + 1, l.split('\t').collect()))
}

fn bad_row(file: &str, line: usize, msg: impl fmt::Display) -> GroupError {
    GroupError::Catalog(format!("{file}:{line}: {msg}"))
}

pub fn parse_catalog(id: CatalogId, text: &str) -> Result<Catalog, GroupError> {
    let file = id.files()[0].0;
    let mut entries = Vec::new();
    let mut seen = BTreeSet::new();
    for (line, cols) in rows(text) {
        if cols.len() < 2 {
            return Err(bad_row(file, line, "expected class<TAB>symbol"));
        }
        let name = cols[0].trim().to_string();
        if !name.starts_with(|c: char| c.is_ascii_digit()) {
            return Err(bad_row(
                file,
                line,
                format!("class name {name:?} must start with its order"),
            ));
        }
        if !seen.insert(name.clone()) {
            return Err(bad_row(file, line, format!("duplicate class {name}")));
        }
        let symbol = parse_symbol(cols[1]).map_err(|e| bad_row(file, line, e))?;
        let metadata = cols
            .get(2)
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty());
        entries.push(CatalogEntry {
            class_name: name,
            symbol,
            metadata,
        });
    }
    Ok(Catalog { id, entries })
}

fn source(id: CatalogId, idx: usize) -> Result<String, GroupError> {
    let (file, embedded) = id.files()[idx];
    if let Ok(dir) = std::env::var(CATALOG_DIR_ENV) {
        let path = Path::new(&dir).join(file);
        if path.exists() {
            return std::fs::read_to_string(&path)
                .map_err(|e| GroupError::Catalog(format!("{}: {e}", path.display())));
        }
    }
    Ok(embedded.to_string())
}

/// Load a catalog, honouring [`CATALOG_DIR_ENV`].
pub fn load_catalog(id: CatalogId) -> Result<Catalog, GroupError> {
    parse_catalog(id, &source(id, 0)?)
}

/// The embedded catalog, ignoring the environment.
pub fn embedded_catalog(id: CatalogId) -> Catalog {
    parse_catalog(id, id.files()[0].1).expect("embedded catalog parses")
}

/// Reference thread value per class: the procedure's value and, where it
/// was wrong, the actual one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThreadRow {
    pub procedure: u64,
    pub corrected: Option<u64>,
}

impl ThreadRow {
    pub fn actual(&self) -> u64 {
        self.corrected.unwrap_or(self.procedure)
    }
}

pub fn parse_thread_table(text: &str) -> Result<BTreeMap<String, ThreadRow>, GroupError> {
    let mut out = BTreeMap::new();
    for (line, cols) in rows(text) {
        let num = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| bad_row("threads", line, format!("bad value {s:?}")))
        };
        if cols.len() < 2 {
            return Err(bad_row("threads", line, "expected class<TAB>value"));
        }
        let row = ThreadRow {
            procedure: num(cols[1])?,
            corrected: cols.get(2).map(|s| num(s)).transpose()?,
        };
        out.insert(cols[0].trim().to_string(), row);
    }
    Ok(out)
}

pub fn expected_threads(id: CatalogId) -> Result<BTreeMap<String, ThreadRow>, GroupError> {
    parse_thread_table(&source(id, 1)?)
}

/// Reference roots table: center `C` ↦ (`h` ↦ extended-only flag).
pub type RootsReference = BTreeMap<u64, BTreeMap<u64, bool>>;

pub fn parse_roots_table(text: &str) -> Result<RootsReference, GroupError> {
    let mut out = BTreeMap::new();
    for (line, cols) in rows(text) {
        if cols.len() < 2 {
            return Err(bad_row("roots", line, "expected center<TAB>list"));
        }
        let c: u64 = cols[0]
            .trim()
            .parse()
            .map_err(|_| bad_row("roots", line, "bad center"))?;
        let mut hs = BTreeMap::new();
        for item in cols[1].split(',') {
            let item = item.trim();
            let ext = item.starts_with('(');
            let h = item
                .trim_matches(|ch| ch == '(' || ch == ')')
                .parse()
                .map_err(|_| bad_row("roots", line, format!("bad entry {item:?}")))?;
            hs.insert(h, ext);
        }
        out.insert(c, hs);
    }
    Ok(out)
}

pub fn expected_roots(id: CatalogId) -> Result<RootsReference, GroupError> {
    parse_roots_table(&source(id, 2)?)
}
