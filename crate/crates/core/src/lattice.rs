//! Projective classes of rank-2 lattices commensurable with `Z²`.
//!
//! A class is stored in standard form `(M, g/h)`, the row space of
//! `α = [[M, g/h], [0, 1]]` up to scalars. Every other representation
//! (arbitrary rational matrices, the reverse form) reduces to it via
//! [`canonicalize`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::arith::{gcd, gcd_i128, is_prime, mod_inverse};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("InvalidMatrix: determinant {0} is not positive")]
    InvalidMatrix(Rational),
    #[error("InvalidPrime: {0} is not prime")]
    InvalidPrime(u64),
    #[error("NotNumberLike: {0} has non-integral M")]
    NotNumberLike(LatticeClass),
    #[error("InvalidClass: {0}")]
    InvalidClass(String),
    #[error("ParseError: {0}")]
    Parse(String),
}

/// 2×2 matrix over `Q`, row-major `[[a, b], [c, d]]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl Matrix {
    pub const IDENTITY: Matrix = Matrix {
        a: Rational::ONE,
        b: Rational::ZERO,
        c: Rational::ZERO,
        d: Rational::ONE,
    };

    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Matrix { a, b, c, d }
    }

    pub fn from_ints(a: i128, b: i128, c: i128, d: i128) -> Self {
        Matrix::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn det(&self) -> Rational {
        self.a * self.d - self.b * self.c
    }

    pub fn scale(&self, s: Rational) -> Self {
        Matrix::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    /// Panics on a singular matrix.
    pub fn inverse(&self) -> Self {
        let det = self.det();
        assert!(!det.is_zero(), "inverse of singular matrix");
        Matrix::new(self.d, -self.b, -self.c, self.a).scale(det.recip())
    }

    pub fn entries(&self) -> [Rational; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// The unique positive scalar `s` with `s·self` integral and primitive.
    pub fn primitive_scalar(&self) -> Rational {
        let mut den = 1i128;
        for e in self.entries() {
            let g = gcd_i128(den, e.denom());
            den = den / g * e.denom();
        }
        let mut num = 0i128;
        for e in self.entries() {
            num = gcd_i128(num, (e * Rational::from_int(den)).numer());
        }
        assert!(num != 0, "zero matrix has no primitive scaling");
        Rational::new(den, num)
    }

    /// Integer entries of the primitive rescaling.
    pub fn primitive(&self) -> [i128; 4] {
        let s = self.primitive_scalar();
        self.entries().map(|e| {
            let v = e * s;
            debug_assert!(v.is_integer());
            v.numer()
        })
    }

    /// Projective equality: one matrix is a nonzero scalar multiple of the other.
    pub fn projectively_eq(&self, other: &Matrix) -> bool {
        let s = self.primitive();
        let t = other.primitive();
        s == t || s.map(|x| -x) == t
    }
}

impl std::ops::Mul for Matrix {
    type Output = Matrix;
    fn mul(self, r: Matrix) -> Matrix {
        Matrix::new(
            self.a * r.a + self.b * r.c,
            self.a * r.b + self.b * r.d,
            self.c * r.a + self.d * r.c,
            self.c * r.b + self.d * r.d,
        )
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for Matrix {
    type Err = LatticeError;

    /// `a/b,c/d;e/f,g/h`, row-major.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LatticeError::Parse(format!("matrix {s:?}: expected `a,b;c,d`"));
        let (r0, r1) = s.split_once(';').ok_or_else(bad)?;
        let mut vals = Vec::with_capacity(4);
        for row in [r0, r1] {
            let (x, y) = row.split_once(',').ok_or_else(bad)?;
            for t in [x, y] {
                vals.push(
                    t.parse::<Rational>()
                        .map_err(|e| LatticeError::Parse(e.to_string()))?,
                );
            }
        }
        Ok(Matrix::new(vals[0], vals[1], vals[2], vals[3]))
    }
}

/// A lattice class `M g/h` in standard form.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeClass {
    m: Rational,
    g: u64,
    h: u64,
}

impl LatticeClass {
    pub fn new(m: Rational, g: u64, h: u64) -> Result<Self, LatticeError> {
        if !m.is_positive() {
            return Err(LatticeError::InvalidClass(format!("M = {m} must be positive")));
        }
        if h == 0 || g >= h || gcd(g, h) != 1 || (g == 0 && h != 1) {
            return Err(LatticeError::InvalidClass(format!(
                "g/h = {g}/{h} is not a reduced fraction in [0, 1)"
            )));
        }
        Ok(LatticeClass { m, g, h })
    }

    /// The number class `n`.
    pub fn number(n: u64) -> Self {
        assert!(n > 0, "number class must be positive");
        LatticeClass {
            m: Rational::from(n),
            g: 0,
            h: 1,
        }
    }

    /// The number-like class `M g/h`; panics on invalid input.
    pub fn number_like(m: u64, g: u64, h: u64) -> Self {
        LatticeClass::new(Rational::from(m), g, h).expect("invalid number-like class")
    }

    pub fn m(&self) -> Rational {
        self.m
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    pub fn h(&self) -> u64 {
        self.h
    }

    pub fn is_number_like(&self) -> bool {
        self.m.is_integer()
    }

    pub fn is_number(&self) -> bool {
        self.is_number_like() && self.g == 0
    }

    /// `M` as an integer, for number-like classes.
    pub fn m_int(&self) -> Option<u64> {
        self.is_number_like().then(|| self.m.numer() as u64)
    }

    pub fn alpha(&self) -> Matrix {
        Matrix::new(
            self.m,
            Rational::new(self.g as i128, self.h as i128),
            Rational::ZERO,
            Rational::ONE,
        )
    }

    /// `β = [[1, 0], [g'/h, 1/(M h²)]]`, the same class read from the other side.
    pub fn beta(&self) -> Matrix {
        let r = self.reverse_form();
        Matrix::new(
            Rational::ONE,
            Rational::ZERO,
            Rational::new(r.gprime as i128, r.h as i128),
            r.m,
        )
    }

    pub fn reverse_form(&self) -> ReverseForm {
        let h2 = Rational::from(self.h * self.h);
        ReverseForm {
            m: (h2 * self.m).recip(),
            gprime: mod_inverse(self.g, self.h).expect("g is a unit mod h"),
            h: self.h,
        }
    }

    fn sort_key(&self) -> (u64, i128, i128, u64) {
        (self.h, self.m.numer(), self.m.denom(), self.g)
    }
}

impl Ord for LatticeClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for LatticeClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.is_number_like(), self.g) {
            (true, 0) => write!(f, "{}", self.m),
            (true, g) => write!(f, "{}+{}/{}", self.m, g, self.h),
            (false, 0) => write!(f, "{},0", self.m),
            (false, g) => write!(f, "{},{}/{}", self.m, g, self.h),
        }
    }
}

impl fmt::Debug for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for LatticeClass {
    type Err = LatticeError;

    /// Accepts `M`, `M+g/h` and `a/b,g/h` (also `a/b` and `a/b,0`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let perr = |what: &str| LatticeError::Parse(format!("class {s:?}: {what}"));
        let rat = |t: &str| t.parse::<Rational>().map_err(|e| perr(&e.to_string()));
        let frac = |t: &str| -> Result<(u64, u64), LatticeError> {
            let t = t.trim();
            if t == "0" {
                return Ok((0, 1));
            }
            let (g, h) = t.split_once('/').ok_or_else(|| perr("expected g/h"))?;
            let g = g.trim().parse::<u64>().map_err(|_| perr("bad g"))?;
            let h = h.trim().parse::<u64>().map_err(|_| perr("bad h"))?;
            Ok((g, h))
        };
        let (m, (g, h)) = if let Some((m, f)) = s.split_once(',') {
            (rat(m)?, frac(f)?)
        } else if let Some((m, f)) = s.split_once('+') {
            let m = m.trim().parse::<u64>().map_err(|_| perr("bad integer M"))?;
            (Rational::from(m), frac(f)?)
        } else {
            (rat(s)?, (0, 1))
        };
        LatticeClass::new(m, g, h)
    }
}

/// The reverse canonical form `(1/(h² M), g'/h)` with `g g' ≡ 1 (mod h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ReverseForm {
    pub m: Rational,
    pub gprime: u64,
    pub h: u64,
}

impl ReverseForm {
    pub fn to_class(&self) -> LatticeClass {
        let h2 = Rational::from(self.h * self.h);
        let g = mod_inverse(self.gprime, self.h).expect("g' is a unit mod h");
        LatticeClass::new((h2 * self.m).recip(), g, self.h).expect("valid reverse form")
    }
}

/// Reduce a matrix to the standard form of its left `GL₂(Z)` coset.
pub fn canonicalize(m: &Matrix) -> Result<LatticeClass, LatticeError> {
    let det = m.det();
    if !det.is_positive() {
        return Err(LatticeError::InvalidMatrix(det));
    }
    let [mut a, mut b, mut c, mut d] = m.primitive();
    // Euclid on the first column using unimodular row operations.
    while c != 0 {
        let q = a.div_euclid(c);
        a -= q * c;
        b -= q * d;
        std::mem::swap(&mut a, &mut c);
        std::mem::swap(&mut b, &mut d);
    }
    if a < 0 {
        a = -a;
        b = -b;
    }
    if d < 0 {
        d = -d;
    }
    b = b.rem_euclid(d);
    let gb = gcd_i128(b, d);
    let (g, h) = if b == 0 { (0, 1) } else { (b / gb, d / gb) };
    Ok(LatticeClass {
        m: Rational::new(a, d),
        g: g as u64,
        h: h as u64,
    })
}

/// Determinant of the primitive integral rescaling of `α_X α_Y⁻¹`.
pub fn hyper_distance(x: &LatticeClass, y: &LatticeClass) -> u64 {
    let p = (x.alpha() * y.alpha().inverse()).primitive();
    let det = p[0] * p[3] - p[1] * p[2];
    det.unsigned_abs() as u64
}

/// The `p + 1` classes at hyper-distance `p` from `x`: `P_k α_X` for
/// `0 ≤ k < p`, then `P_p α_X`.
pub fn p_neighbors(x: &LatticeClass, p: u64) -> Result<Vec<LatticeClass>, LatticeError> {
    if !is_prime(p) {
        return Err(LatticeError::InvalidPrime(p));
    }
    let alpha = x.alpha();
    let pr = Rational::from(p);
    let mut out = Vec::with_capacity(p as usize + 1);
    for k in 0..p {
        let op = Matrix::new(
            pr.recip(),
            Rational::new(k as i128, p as i128),
            Rational::ZERO,
            Rational::ONE,
        );
        out.push(canonicalize(&(op * alpha))?);
    }
    let up = Matrix::new(pr, Rational::ZERO, Rational::ZERO, Rational::ONE);
    out.push(canonicalize(&(up * alpha))?);
    Ok(out)
}

pub fn act_right(x: &LatticeClass, m: &Matrix) -> Result<LatticeClass, LatticeError> {
    canonicalize(&(x.alpha() * *m))
}

/// Same action computed from the reverse form.
pub fn act_right_beta(x: &LatticeClass, m: &Matrix) -> Result<LatticeClass, LatticeError> {
    canonicalize(&(x.beta() * *m))
}

/// The number class `h·M` at which a number-like class is centered.
pub fn center_of(x: &LatticeClass) -> Result<LatticeClass, LatticeError> {
    let m = x.m_int().ok_or(LatticeError::NotNumberLike(*x))?;
    Ok(LatticeClass::number(m * x.h))
}
