//! Thread parameters predicted from the powers of a few anchor classes,
//! audited against the reference tables, and the pictures they rebuild.

use std::collections::{BTreeMap, BTreeSet};

use crate::arith::divisors;
use crate::groups::{
    expected_threads, power_symbol, Catalog, CatalogEntry, CatalogId, GroupError, MoonshineSymbol, ThreadRow,
};
use crate::lattice::LatticeClass;
use crate::pictures::{classes_for, Mode};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarmonicsError {
    #[error("AmbiguousAnchor: symbol {symbol} of {class} is shared by {others:?}")]
    AmbiguousAnchor {
        class: String,
        symbol: String,
        others: Vec<String>,
    },
    #[error("NotAHarmonic: {d} does not divide h = {h}")]
    NotAHarmonic { d: u64, h: u64 },
    #[error("UnknownClass: {0}")]
    UnknownClass(String),
    #[error("{0}")]
    Group(#[from] GroupError),
}

/// Powers of 24J and 8C in the monster; powers of 12B in M24.
pub fn anchor_names(id: CatalogId) -> &'static [&'static str] {
    match id {
        CatalogId::Monster => &["24J", "12J", "8F", "6F", "4D", "3C", "2B", "1A", "8C", "4B", "2A"],
        CatalogId::M24 => &["12B", "6B", "4C", "3B", "2B", "1A"],
    }
}

/// The anchor entries, each checked to carry a symbol unique in its catalog.
pub fn anchors(catalog: &Catalog) -> Result<Vec<&CatalogEntry>, HarmonicsError> {
    anchor_names(catalog.id)
        .iter()
        .map(|&name| {
            let e = catalog
                .get(name)
                .ok_or_else(|| HarmonicsError::UnknownClass(name.to_string()))?;
            let same = catalog.with_symbol(&e.symbol);
            if same.len() > 1 {
                return Err(HarmonicsError::AmbiguousAnchor {
                    class: name.to_string(),
                    symbol: e.symbol.to_string(),
                    others: same.iter().map(|o| o.class_name.clone()).collect(),
                });
            }
            Ok(e)
        })
        .collect()
}

/// Some power `X^d`, `d | n`, carries the symbol of `Y`.
pub fn power_up_test(x: &CatalogEntry, y: &CatalogEntry) -> Result<bool, HarmonicsError> {
    for d in divisors(x.symbol.n) {
        if power_symbol(&x.symbol, d)? == y.symbol {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The anchor of maximal order that `x` powers up to.
pub fn maximal_anchor<'a>(
    catalog: &'a Catalog,
    x: &CatalogEntry,
) -> Result<&'a CatalogEntry, HarmonicsError> {
    let mut hits = Vec::new();
    for y in anchors(catalog)? {
        if power_up_test(x, y)? {
            hits.push(y);
        }
    }
    let top = hits
        .iter()
        .map(|y| y.order())
        .max()
        .expect("1A is a power of every class");
    let best: Vec<_> = hits.into_iter().filter(|y| y.order() == top).collect();
    assert_eq!(best.len(), 1, "two anchors of order {top} for {}", x.class_name);
    Ok(best[0])
}

/// `(n, k/2)` for an anchor of even order `k`, `(n, 3)` for 3C and
/// `(n, 1)` for 1A.
pub fn predict_thread_monster(catalog: &Catalog, x: &CatalogEntry) -> Result<(u64, u64), HarmonicsError> {
    let y = maximal_anchor(catalog, x)?;
    let k = y.order();
    let h = match k {
        1 => 1,
        3 => 3,
        k if k % 2 == 0 => k / 2,
        _ => unreachable!("anchor orders are 1, 3 or even"),
    };
    Ok((x.symbol.n, h))
}

/// `(2n, k)` with `n` the order of `x` and `k` that of its maximal anchor.
pub fn predict_thread_m24(catalog: &Catalog, x: &CatalogEntry) -> Result<(u64, u64), HarmonicsError> {
    let y = maximal_anchor(catalog, x)?;
    Ok((2 * x.order(), y.order()))
}

pub fn predict_thread(catalog: &Catalog, x: &CatalogEntry) -> Result<(u64, u64), HarmonicsError> {
    match catalog.id {
        CatalogId::Monster => predict_thread_monster(catalog, x),
        CatalogId::M24 => predict_thread_m24(catalog, x),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreadPrediction {
    pub class_name: String,
    pub symbol: MoonshineSymbol,
    pub anchor: String,
    pub predicted: (u64, u64),
    /// Value printed in the reference table for the procedure.
    pub procedure: u64,
    /// Reference value after its corrections.
    pub expected: u64,
    pub mismatch: bool,
}

impl ThreadPrediction {
    /// The prediction reproduces the reference table's procedure column.
    pub fn agrees_with_table(&self) -> bool {
        self.predicted.1 == self.procedure
    }
}

pub fn audit_against(
    catalog: &Catalog,
    table: &BTreeMap<String, ThreadRow>,
) -> Result<Vec<ThreadPrediction>, HarmonicsError> {
    catalog
        .entries
        .iter()
        .map(|x| {
            let row = table
                .get(&x.class_name)
                .ok_or_else(|| HarmonicsError::UnknownClass(x.class_name.clone()))?;
            let predicted = predict_thread(catalog, x)?;
            Ok(ThreadPrediction {
                class_name: x.class_name.clone(),
                symbol: x.symbol.clone(),
                anchor: maximal_anchor(catalog, x)?.class_name.clone(),
                predicted,
                procedure: row.procedure,
                expected: row.actual(),
                mismatch: predicted.1 != row.actual(),
            })
        })
        .collect()
}

pub fn audit(catalog: &Catalog) -> Result<Vec<ThreadPrediction>, HarmonicsError> {
    audit_against(catalog, &expected_threads(catalog.id)?)
}

pub fn mismatch_set(rows: &[ThreadPrediction]) -> BTreeSet<String> {
    rows.iter()
        .filter(|r| r.mismatch)
        .map(|r| r.class_name.clone())
        .collect()
}

/// The counterexamples the procedure is known to have.
pub fn known_counterexamples(id: CatalogId) -> BTreeSet<String> {
    let names: &[&str] = match id {
        CatalogId::Monster => &[
            "8B", "8D", "16A", "24A", "24D", "24E", "24H", "32B", "40B", "40CD", "48A", "88AB",
        ],
        CatalogId::M24 => &["4A", "12A"],
    };
    names.iter().map(|s| s.to_string()).collect()
}

/// Which thread heights feed the reconstruction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Heights {
    /// The procedure's predictions.
    Predicted,
    /// The reference table after corrections.
    Corrected,
}

pub fn reconstruct_classes(
    catalog: &Catalog,
    mode: Mode,
    heights: Heights,
) -> Result<BTreeSet<LatticeClass>, HarmonicsError> {
    let mut out = BTreeSet::new();
    for row in audit(catalog)? {
        let (n, k) = row.predicted;
        let k = match heights {
            Heights::Predicted => k,
            Heights::Corrected => row.expected,
        };
        out.extend(classes_for(n, k, mode));
    }
    Ok(out)
}

/// The symbol of `g^d`, of which `g` is the `d`-th harmonic.
pub fn harmonic_of(x: &CatalogEntry, d: u64) -> Result<MoonshineSymbol, HarmonicsError> {
    if d == 0 || !x.symbol.h.is_multiple_of(d) {
        return Err(HarmonicsError::NotAHarmonic { d, h: x.symbol.h });
    }
    Ok(power_symbol(&x.symbol, d)?)
}

pub fn is_fundamental(x: &CatalogEntry) -> bool {
    x.symbol.h == 1
}

/// Anchors having some harmonic relation to `x`: `x = y^d` with `d | h_y`.
pub fn harmonics_among_anchors(catalog: &Catalog, x: &CatalogEntry) -> Result<Vec<String>, HarmonicsError> {
    let mut out = Vec::new();
    for y in anchors(catalog)? {
        for d in divisors(y.symbol.h) {
            if harmonic_of(y, d)? == x.symbol {
                out.push(y.class_name.clone());
                break;
            }
        }
    }
    Ok(out)
}
