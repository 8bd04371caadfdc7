//! Words in the prime operators `P_k = [[1/p, k/p], [0, 1]]` and
//! `P_p = [[p, 0], [0, 1]]`, meta-commutation across distinct primes and
//! the resulting normal form of paths from the class `1`.
//!
//! A word `[w₁, w₂, …]` applies `w₁` first: its matrix is `… · w₂ · w₁`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::arith::{factorize, is_prime, lcm, mod_inverse, valuation};
use crate::lattice::{canonicalize, LatticeClass, Matrix};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("SamePrime: cannot meta-commute two operators of prime {0}")]
    SamePrime(u64),
    #[error("InvalidOperator: {0}")]
    InvalidOperator(String),
}

/// `p_i`: a descent for `i < p`, the ascent for `i = p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeOperator {
    pub p: u64,
    pub index: u64,
}

impl PrimeOperator {
    pub fn new(p: u64, index: u64) -> Result<Self, WordError> {
        if !is_prime(p) {
            return Err(WordError::InvalidOperator(format!("{p} is not prime")));
        }
        if index > p {
            return Err(WordError::InvalidOperator(format!("index {index} exceeds {p}")));
        }
        Ok(PrimeOperator { p, index })
    }

    pub fn up(p: u64) -> Self {
        PrimeOperator { p, index: p }
    }

    pub fn down(p: u64, i: u64) -> Self {
        debug_assert!(i < p);
        PrimeOperator { p, index: i }
    }

    pub fn is_up(&self) -> bool {
        self.index == self.p
    }

    pub fn matrix(&self) -> Matrix {
        operator_matrix(*self)
    }
}

impl fmt::Display for PrimeOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.p, self.index)
    }
}

impl fmt::Debug for PrimeOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PrimeOperator {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WordError::InvalidOperator(format!("token {s:?}: expected p_i"));
        let (p, i) = s.trim().split_once('_').ok_or_else(bad)?;
        let p = p.parse().map_err(|_| bad())?;
        let i = i.parse().map_err(|_| bad())?;
        PrimeOperator::new(p, i)
    }
}

pub fn operator_matrix(op: PrimeOperator) -> Matrix {
    let p = Rational::from(op.p);
    if op.is_up() {
        Matrix::new(p, Rational::ZERO, Rational::ZERO, Rational::ONE)
    } else {
        Matrix::new(
            p.recip(),
            Rational::new(op.index as i128, op.p as i128),
            Rational::ZERO,
            Rational::ONE,
        )
    }
}

/// `[[1, s], [0, 1]]`.
pub fn translation(s: i128) -> Matrix {
    Matrix::new(Rational::ONE, s.into(), Rational::ZERO, Rational::ONE)
}

/// Result of swapping `left · right` into `T^shift · left' · right'`
/// with `left'.p = right.p` and `right'.p = left.p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Commuted {
    pub left: PrimeOperator,
    pub right: PrimeOperator,
    pub shift: i128,
}

/// `M = T^s` for some integer `s`.
fn translation_exponent(m: &Matrix) -> Option<i128> {
    let unit = m.a == Rational::ONE && m.c.is_zero() && m.d == Rational::ONE;
    (unit && m.b.is_integer()).then(|| m.b.numer())
}

/// Swap two operators of distinct primes.
///
/// Descent pairs are solved from `iq + j = lp + k` and the products agree
/// exactly. Pairs involving an ascent only agree up to a translation in
/// `Γ` on the left, so the partner index is found by matrix comparison.
pub fn meta_commute(left: PrimeOperator, right: PrimeOperator) -> Result<Commuted, WordError> {
    let (p, q) = (left.p, right.p);
    if p == q {
        return Err(WordError::SamePrime(p));
    }
    if !left.is_up() && !right.is_up() {
        let v = left.index * q + right.index;
        return Ok(Commuted {
            left: PrimeOperator::down(q, v / p),
            right: PrimeOperator::down(p, v % p),
            shift: 0,
        });
    }
    if left.is_up() && right.is_up() {
        return Ok(Commuted {
            left: right,
            right: left,
            shift: 0,
        });
    }
    let target = left.matrix() * right.matrix();
    let (lefts, rights): (Vec<_>, Vec<_>) = if left.is_up() {
        ((0..q).map(|a| PrimeOperator::down(q, a)).collect(), vec![left])
    } else {
        (vec![right], (0..p).map(|k| PrimeOperator::down(p, k)).collect())
    };
    let mut found = None;
    for &l in &lefts {
        for &r in &rights {
            let cand = l.matrix() * r.matrix();
            if let Some(s) = translation_exponent(&(target * cand.inverse())) {
                assert!(
                    found.is_none(),
                    "meta-commutation of {left}·{right} is not unique"
                );
                found = Some(Commuted {
                    left: l,
                    right: r,
                    shift: s,
                });
            }
        }
    }
    Ok(found.expect("meta-commutation always has a solution"))
}

/// `op · T^c = T^{c'} · op'` for a descent `op`.
fn push_translation(op: PrimeOperator, c: i128) -> (PrimeOperator, i128) {
    let v = op.index as i128 + c;
    let p = op.p as i128;
    (PrimeOperator::down(op.p, v.rem_euclid(p) as u64), v.div_euclid(p))
}

/// Canonical path from `1`: all ascents first, then descents grouped by
/// ascending prime, in application order.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct NormalForm {
    ups: BTreeMap<u64, u32>,
    descents: Vec<PrimeOperator>,
}

impl NormalForm {
    pub fn ascent(&self, p: u64) -> u32 {
        self.ups.get(&p).copied().unwrap_or(0)
    }

    /// Descent indices of prime `p`, in application order.
    pub fn descents_of(&self, p: u64) -> Vec<u64> {
        self.descents
            .iter()
            .filter(|o| o.p == p)
            .map(|o| o.index)
            .collect()
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.ups.keys().copied().collect();
        ps.extend(self.descents.iter().map(|o| o.p));
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// The number class `K = ∏ p^a` reached by the ascents.
    pub fn k(&self) -> u64 {
        self.ups.iter().map(|(&p, &a)| p.pow(a)).product()
    }

    /// Total hyper-distance from `1`.
    pub fn n(&self) -> u64 {
        self.k() * self.descents.iter().map(|o| o.p).product::<u64>()
    }

    pub fn to_word(&self) -> Vec<PrimeOperator> {
        let mut w = Vec::new();
        for (&p, &a) in &self.ups {
            w.extend(std::iter::repeat_n(PrimeOperator::up(p), a as usize));
        }
        w.extend(self.descents.iter().copied());
        w
    }

    pub fn to_class(&self) -> LatticeClass {
        word_to_class(&self.to_word())
    }

    fn is_grouped(&self) -> bool {
        self.descents.windows(2).all(|w| w[0].p <= w[1].p)
    }

    /// Push `T^c` from position `from` to the far left; returns the
    /// exponent that emerges.
    fn push_outward(&mut self, from: usize, mut c: i128) -> i128 {
        for op in &mut self.descents[from..] {
            if c == 0 {
                break;
            }
            let (o, nc) = push_translation(*op, c);
            *op = o;
            c = nc;
        }
        c
    }

    fn append_up(&mut self, p: u64) -> i128 {
        let mut emitted = 0;
        let mut i = self.descents.len();
        while i > 0 {
            i -= 1;
            let d = self.descents[i];
            if d.p == p {
                // P_p · P_k = T^k
                self.descents.remove(i);
                return emitted + self.push_outward(i, d.index as i128);
            }
            let sw = meta_commute(PrimeOperator::up(p), d).expect("distinct primes");
            self.descents[i] = sw.left;
            emitted += self.push_outward(i + 1, sw.shift);
        }
        *self.ups.entry(p).or_insert(0) += 1;
        emitted
    }

    fn bubble_in(
        descents: &mut Vec<PrimeOperator>,
        op: PrimeOperator,
        stop: impl Fn(&PrimeOperator) -> bool,
    ) -> usize {
        descents.push(op);
        let mut i = descents.len() - 1;
        while i > 0 && !stop(&descents[i - 1]) {
            let sw = meta_commute(descents[i], descents[i - 1]).expect("distinct primes");
            debug_assert_eq!(sw.shift, 0);
            descents[i - 1] = sw.right;
            descents[i] = sw.left;
            i -= 1;
        }
        i
    }

    fn append_down(&mut self, op: PrimeOperator) {
        let q = op.p;
        if self.ascent(q) > 0 && !self.descents.iter().any(|o| o.p == q) {
            let mut trial = self.descents.clone();
            let pos = Self::bubble_in(&mut trial, op, |_| false);
            debug_assert_eq!(pos, 0);
            if trial[0].index == 0 {
                // P_0 · P_up = 1
                trial.remove(0);
                self.descents = trial;
                let a = self.ups.get_mut(&q).expect("ascent present");
                *a -= 1;
                if *a == 0 {
                    self.ups.remove(&q);
                }
                return;
            }
        }
        Self::bubble_in(&mut self.descents, op, |o| o.p <= q);
    }

    /// Apply `op` after the current path. The new path equals
    /// `T^c · op · old` for the returned `c`.
    pub fn push(&mut self, op: PrimeOperator) -> i128 {
        let c = if op.is_up() {
            self.append_up(op.p)
        } else {
            self.append_down(op);
            0
        };
        debug_assert!(self.is_grouped());
        c
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.to_word();
        if w.is_empty() {
            return write!(f, "1");
        }
        let toks: Vec<String> = w.iter().map(|o| o.to_string()).collect();
        write!(f, "{}", toks.join(" "))
    }
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalForm({self})")
    }
}

/// Rewrite a word into normal form by meta-commutation and cancellation.
pub fn normalize(word: &[PrimeOperator]) -> NormalForm {
    let mut nf = NormalForm::default();
    // pending translation on the left; it must pass through later operators
    let mut t = 0i128;
    for &op in word {
        let (op, c) = if op.is_up() {
            (op, t * op.p as i128)
        } else {
            push_translation(op, t)
        };
        t = c + nf.push(op);
    }
    nf
}

pub fn word_matrix(word: &[PrimeOperator]) -> Matrix {
    word.iter().fold(Matrix::IDENTITY, |acc, op| op.matrix() * acc)
}

pub fn word_to_class(word: &[PrimeOperator]) -> LatticeClass {
    canonicalize(&word_matrix(word)).expect("operator products have positive determinant")
}

/// The normal form of the unique minimal path from `1` to `x`.
pub fn class_to_word(x: &LatticeClass) -> NormalForm {
    let (u, v) = (x.m().numer() as u64, x.m().denom() as u64);
    let d = lcm(v, x.h());
    let k = u * (d / v);
    let mut t = x.g() * (d / x.h());
    let ups = factorize(k).into_iter().collect();
    let mut descents = Vec::new();
    for (p, _) in factorize(d) {
        for _ in 0..valuation(d, p) {
            descents.push(PrimeOperator::down(p, t % p));
            t /= p;
        }
    }
    debug_assert_eq!(t, 0);
    NormalForm { ups, descents }
}

pub fn parse_word(text: &str) -> Result<Vec<PrimeOperator>, WordError> {
    text.split_whitespace().map(str::parse).collect()
}

/// `i ↦ i · q⁻¹ mod p`, the index formula for `p_i · q_up`.
pub fn descent_up_index(i: u64, p: u64, q: u64) -> u64 {
    i * mod_inverse(q % p, p).expect("distinct primes") % p
}
