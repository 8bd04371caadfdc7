//! Finite class sets inside the big picture: threads, snakes, serpents,
//! spines, their Atkin–Lehner symmetries, and prime-edge graphs.

use std::collections::BTreeSet;

use crate::arith::{divisors, gcd, is_exact_divisor, is_prime, part_of};
use crate::lattice::{act_right, hyper_distance, LatticeClass, Matrix};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("InvalidThread: {h} does not divide {n}")]
    InvalidThread { n: u64, h: u64 },
    #[error("InvalidSerpent: ({n}|{h}) needs h | 24 and h | n")]
    InvalidSerpent { n: u64, h: u64 },
    #[error("NotExactDivisor: {e} is not an exact divisor of {m}")]
    NotExactDivisor { e: u64, m: u64 },
    #[error("NotInThread: {0} is not on the thread")]
    NotInThread(LatticeClass),
    #[error("NoRepresentativeFound: no w_{e} representative for ({n}|{h}) within the search bound")]
    NoRepresentativeFound { e: u64, n: u64, h: u64 },
}

/// Edge between two classes at prime hyper-distance `p`, with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub a: LatticeClass,
    pub b: LatticeClass,
    pub p: u64,
}

impl Edge {
    pub fn new(x: LatticeClass, y: LatticeClass, p: u64) -> Self {
        let (a, b) = if x <= y { (x, y) } else { (y, x) };
        Edge { a, b, p }
    }
}

/// A finite labelled subgraph of the big picture.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Picture {
    pub vertices: BTreeSet<LatticeClass>,
    pub edges: BTreeSet<Edge>,
}

impl Picture {
    pub fn number_classes(&self) -> impl Iterator<Item = &LatticeClass> {
        self.vertices.iter().filter(|x| x.is_number())
    }

    pub fn contains(&self, x: &LatticeClass) -> bool {
        self.vertices.contains(x)
    }

    /// Induced subgraph on `keep`.
    pub fn induced(&self, keep: &BTreeSet<LatticeClass>) -> Picture {
        Picture {
            vertices: self.vertices.intersection(keep).copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|e| keep.contains(&e.a) && keep.contains(&e.b))
                .copied()
                .collect(),
        }
    }
}

/// All-pairs hyper-distance; an edge wherever the distance is prime.
pub fn build_graph<'a>(classes: impl IntoIterator<Item = &'a LatticeClass>) -> Picture {
    let vertices: BTreeSet<LatticeClass> = classes.into_iter().copied().collect();
    let vs: Vec<&LatticeClass> = vertices.iter().collect();
    let mut edges = BTreeSet::new();
    for (i, x) in vs.iter().enumerate() {
        for y in &vs[i + 1..] {
            let d = hyper_distance(x, y);
            if is_prime(d) {
                edges.insert(Edge::new(**x, **y, d));
            }
        }
    }
    Picture { vertices, edges }
}

/// The `(n|h)`-thread: number classes `e` with `h | e | n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thread {
    pub n: u64,
    pub h: u64,
    pub classes: BTreeSet<LatticeClass>,
}

impl Thread {
    pub fn graph(&self) -> Picture {
        build_graph(&self.classes)
    }
}

pub fn thread(n: u64, h: u64) -> Result<Thread, StructureError> {
    if n == 0 || h == 0 || !n.is_multiple_of(h) {
        return Err(StructureError::InvalidThread { n, h });
    }
    let classes = divisors(n / h)
        .into_iter()
        .map(|d| LatticeClass::number(h * d))
        .collect();
    Ok(Thread { n, h, classes })
}

fn roots_over(total: u64, ks: impl IntoIterator<Item = u64>) -> BTreeSet<LatticeClass> {
    let mut out = BTreeSet::new();
    for k in ks {
        if !total.is_multiple_of(k * k) {
            continue;
        }
        for m in divisors(total / (k * k)) {
            for g in (0..k).filter(|&g| gcd(g, k) == 1) {
                out.insert(LatticeClass::number_like(m, g, k));
            }
        }
    }
    out
}

/// The `(N|1)`-snake.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snake {
    pub big_n: u64,
    pub classes: BTreeSet<LatticeClass>,
}

impl Snake {
    pub fn graph(&self) -> Picture {
        build_graph(&self.classes)
    }
}

pub fn snake(big_n: u64) -> Snake {
    assert!(big_n >= 1, "snake needs N >= 1");
    Snake {
        big_n,
        classes: roots_over(big_n, divisors(24)),
    }
}

/// The `(n|h)`-serpent inside the `(hn|1)`-snake.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Serpent {
    pub n: u64,
    pub h: u64,
    pub classes: BTreeSet<LatticeClass>,
}

impl Serpent {
    pub fn big_n(&self) -> u64 {
        self.n * self.h
    }

    pub fn graph(&self) -> Picture {
        build_graph(&self.classes)
    }
}

pub fn serpent(n: u64, h: u64) -> Result<Serpent, StructureError> {
    if n == 0 || h == 0 || 24 % h != 0 || !n.is_multiple_of(h) {
        return Err(StructureError::InvalidSerpent { n, h });
    }
    Ok(Serpent {
        n,
        h,
        classes: roots_over(h * n, divisors(h)),
    })
}

/// The largest `h | 24` with `h² | N`.
pub fn spine_height(big_n: u64) -> u64 {
    divisors(24)
        .into_iter()
        .filter(|h| big_n.is_multiple_of(h * h))
        .max()
        .unwrap_or(1)
}

pub fn spine(big_n: u64) -> Thread {
    let h = spine_height(big_n);
    thread(big_n / h, h).expect("h divides N/h")
}

/// `w_e` on the `(n|h)`-thread, for `e` an exact divisor of `n/h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AtkinLehner {
    pub e: u64,
    pub n: u64,
    pub h: u64,
}

impl AtkinLehner {
    pub fn new(e: u64, n: u64, h: u64) -> Result<Self, StructureError> {
        if h == 0 || !n.is_multiple_of(h) {
            return Err(StructureError::InvalidThread { n, h });
        }
        let m = n / h;
        if !is_exact_divisor(e, m) {
            return Err(StructureError::NotExactDivisor { e, m });
        }
        Ok(AtkinLehner { e, n, h })
    }

    pub fn fricke(n: u64, h: u64) -> Result<Self, StructureError> {
        AtkinLehner::new(n / h.max(1), n, h)
    }
}

/// `h·x·y ↦ h·(e/x)·y` with `x | e` and `y | (n/h)/e`.
pub fn al_apply(w: &AtkinLehner, k: &LatticeClass) -> Result<LatticeClass, StructureError> {
    let m = w.n / w.h;
    let j = k
        .m_int()
        .filter(|&v| k.is_number() && v % w.h == 0 && m.is_multiple_of(v / w.h))
        .map(|v| v / w.h)
        .ok_or(StructureError::NotInThread(*k))?;
    let x = gcd(j, w.e);
    Ok(LatticeClass::number(w.h * (w.e / x) * (j / x)))
}

/// `w_e w_f = w_g` with `g = ef/(e,f)²`.
pub fn al_compose(e: u64, f: u64, m: u64) -> Result<u64, StructureError> {
    for v in [e, f] {
        if v != 1 && !is_exact_divisor(v, m) {
            return Err(StructureError::NotExactDivisor { e: v, m });
        }
    }
    let g = gcd(e, f);
    Ok((e / g) * (f / g))
}

/// Closure of `set ∪ {1}` under [`al_compose`] inside `m`.
pub fn al_closure(set: &BTreeSet<u64>, m: u64) -> BTreeSet<u64> {
    let mut out: BTreeSet<u64> = BTreeSet::from([1]);
    out.extend(set.iter().copied());
    loop {
        let mut next = out.clone();
        for &a in &out {
            for &b in &out {
                next.insert(al_compose(a, b, m).expect("closure stays exact"));
            }
        }
        if next.len() == out.len() {
            return out;
        }
        out = next;
    }
}

/// `λ·m = [[a e, b/h], [c n, d e]]` with integers `a,b,c,d` and determinant `e`,
/// for the unique positive `λ` making the determinant `e`.
pub fn in_al_coset(m: &Matrix, e: u64, n: u64, h: u64) -> bool {
    let det = m.det();
    if !det.is_positive() {
        return false;
    }
    let ratio = Rational::from(e) / det;
    let (sn, sd) = match (isqrt(ratio.numer()), isqrt(ratio.denom())) {
        (Some(a), Some(b)) => (a, b),
        _ => return false,
    };
    let m = m.scale(Rational::new(sn, sd));
    let (e, n, h) = (Rational::from(e), Rational::from(n), Rational::from(h));
    (m.a / e).is_integer() && (m.b * h).is_integer() && (m.c / n).is_integer() && (m.d / e).is_integer()
}

fn isqrt(v: i128) -> Option<i128> {
    if v < 0 {
        return None;
    }
    let r = (v as f64).sqrt() as i128;
    (r.saturating_sub(2)..=r + 2).find(|&s| s >= 0 && s * s == v)
}

const AL_SEARCH_BOUND: i128 = 64;

/// Up to `limit` representatives of `w_e`, taken from the `Γ₀(hn)`
/// Atkin–Lehner matrices `[[a e', b], [c hn, d e']]/h_e`, where `e'` and
/// `h_e` are the `e`-parts of `hn` and `h`.
pub fn al_representatives(w: &AtkinLehner, limit: usize) -> Vec<Matrix> {
    let big_n = (w.h * w.n) as i128;
    let ep = part_of(big_n as u64, w.e) as i128;
    let fp = big_n / ep;
    let he = Rational::from(part_of(w.h, w.e)).recip();
    let order: Vec<i128> = std::iter::once(0)
        .chain((1..=AL_SEARCH_BOUND).flat_map(|v| [v, -v]))
        .collect();
    let mut out = Vec::new();
    let emit = |a: i128, b: i128, c: i128, d: i128, out: &mut Vec<Matrix>| {
        let m = Matrix::from_ints(a * ep, b, c * big_n, d * ep).scale(he);
        debug_assert!(in_al_coset(&m, w.e, w.n, w.h));
        out.push(m);
        out.len() >= limit
    };
    for &a in &order {
        for &d in &order {
            let rhs = ep * a * d - 1;
            for &b in &order {
                if b == 0 {
                    if rhs == 0 {
                        for &c in &order {
                            if emit(a, 0, c, d, &mut out) {
                                return out;
                            }
                        }
                    }
                    continue;
                }
                let bf = b * fp;
                if rhs % bf == 0 && (rhs / bf).abs() <= AL_SEARCH_BOUND && emit(a, b, rhs / bf, d, &mut out) {
                    return out;
                }
            }
        }
    }
    out
}

pub fn al_representative(w: &AtkinLehner) -> Result<Matrix, StructureError> {
    al_representatives(w, 1)
        .pop()
        .ok_or(StructureError::NoRepresentativeFound {
            e: w.e,
            n: w.n,
            h: w.h,
        })
}

pub fn al_matrix_action(w: &AtkinLehner, x: &LatticeClass) -> Result<LatticeClass, StructureError> {
    let m = al_representative(w)?;
    Ok(act_right(x, &m).expect("representatives have positive determinant"))
}
