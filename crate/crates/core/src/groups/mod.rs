//! Moonshine groups: Conway–Norton symbols, the catalogs, and the finite
//! quotient `Γ₀(n|h)/Γ₀(hn)` acting on the `(n|h)`-serpent together with
//! the character `λ`.

pub mod catalog;
pub mod perm;
pub mod symbol;

use std::collections::BTreeMap;

pub use catalog::{
    embedded_catalog, expected_roots, expected_threads, load_catalog, Catalog, CatalogEntry, CatalogId,
    RootsReference, ThreadRow,
};
pub use perm::{Perm, PermutationGroup};
pub use symbol::{parse_symbol, power_symbol, MoonshineSymbol};

use crate::lattice::{act_right, act_right_beta, LatticeClass, Matrix};
use crate::rational::Rational;
use crate::structures::{al_closure, al_representative, in_al_coset, serpent, AtkinLehner};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("ParseError: at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("HarmonicsInconsistency: {0}")]
    HarmonicsInconsistency(String),
    #[error("ClosureOverflow: more than {0} elements")]
    ClosureOverflow(usize),
    #[error("CharacterNotWellDefined: {0}")]
    CharacterNotWellDefined(String),
    #[error("NotInvariant: {0}")]
    NotInvariant(String),
    #[error("CatalogError: {0}")]
    Catalog(String),
}

pub const DEFAULT_CLOSURE_BOUND: usize = 1_000_000;

/// `x = [[1, 1/h], [0, 1]]`.
pub fn x_matrix(h: u64) -> Matrix {
    Matrix::new(
        Rational::ONE,
        Rational::new(1, h as i128),
        Rational::ZERO,
        Rational::ONE,
    )
}

/// `y = [[1, 0], [n, 1]]`.
pub fn y_matrix(n: u64) -> Matrix {
    Matrix::from_ints(1, 0, n as i128, 1)
}

/// `Γ₀(n|h)*` as a permutation group on the serpent, with the Atkin–Lehner
/// permutations recorded alongside.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    pub symbol: MoonshineSymbol,
    pub group: PermutationGroup,
    /// `λ` exponents mod `h`, one per element of `group`.
    labels: Option<BTreeMap<Perm, i64>>,
    pub atkin_lehner: Vec<(u64, Perm)>,
}

impl QuotientGroup {
    pub fn label(&self, p: &Perm) -> Option<i64> {
        self.labels.as_ref()?.get(p).copied()
    }
}

fn permutation_of(
    ground: &[LatticeClass],
    what: &str,
    f: impl Fn(&LatticeClass) -> LatticeClass,
) -> Result<Perm, GroupError> {
    ground
        .iter()
        .map(|x| {
            let y = f(x);
            ground
                .binary_search(&y)
                .map(|i| i as u32)
                .map_err(|_| GroupError::NotInvariant(format!("{what} sends {x} to {y} outside the serpent")))
        })
        .collect()
}

/// Serpent classes in order, `x`, `y`, and `(e, w_e)` for each listed `e`.
pub type Generators = (Vec<LatticeClass>, Perm, Perm, Vec<(u64, Perm)>);

/// Ground set and the permutations induced by `x`, `y` and every `w_e`.
/// `x` and `y` are computed along both the α and β routes, which must agree.
pub fn generator_permutations(s: &MoonshineSymbol) -> Result<Generators, GroupError> {
    let ground: Vec<LatticeClass> = serpent(s.n, s.h)
        .map_err(|e| GroupError::Parse {
            pos: 0,
            msg: e.to_string(),
        })?
        .classes
        .into_iter()
        .collect();
    let mut gens = Vec::new();
    for (name, m) in [("x", x_matrix(s.h)), ("y", y_matrix(s.n))] {
        let a = permutation_of(&ground, name, |c| act_right(c, &m).expect("det 1"))?;
        let b = permutation_of(&ground, name, |c| act_right_beta(c, &m).expect("det 1"))?;
        assert_eq!(a, b, "α and β routes disagree for {name} on {s}");
        gens.push(a);
    }
    let mut al = Vec::new();
    for &e in &s.divisors {
        let w = AtkinLehner::new(e, s.n, s.h).expect("symbol divisors are exact");
        let m = al_representative(&w).map_err(|err| GroupError::NotInvariant(err.to_string()))?;
        let p = permutation_of(&ground, &format!("w_{e}"), |c| act_right(c, &m).expect("det e"))?;
        al.push((e, p));
    }
    let y = gens.pop().unwrap();
    let x = gens.pop().unwrap();
    Ok((ground, x, y, al))
}

fn close(s: &MoonshineSymbol, bound: usize, with_lambda: bool) -> Result<QuotientGroup, GroupError> {
    let (ground, x, y, al) = generator_permutations(s)?;
    let h = s.h as i64;
    let (lx, ly) = if with_lambda {
        (-1, if fricke_test(s) { 1 } else { -1 })
    } else {
        (0, 0)
    };
    let seen =
        perm::closure(ground.len(), &[(x.clone(), lx), (y.clone(), ly)], h, bound).map_err(|e| match e {
            perm::ClosureError::Overflow(b) => GroupError::ClosureOverflow(b),
            perm::ClosureError::Inconsistent { first, second } => GroupError::CharacterNotWellDefined(
                format!("{s}: one permutation carries λ exponents {first} and {second} mod {h}"),
            ),
        })?;
    let labels: BTreeMap<Perm, i64> = seen.into_iter().collect();
    let group = PermutationGroup {
        ground,
        elements: labels.keys().cloned().collect(),
        generators: vec![("x".into(), x), ("y".into(), y)],
    };
    Ok(QuotientGroup {
        symbol: s.clone(),
        group,
        labels: with_lambda.then_some(labels),
        atkin_lehner: al,
    })
}

pub fn quotient_group(s: &MoonshineSymbol) -> Result<QuotientGroup, GroupError> {
    quotient_group_bounded(s, DEFAULT_CLOSURE_BOUND)
}

pub fn quotient_group_bounded(s: &MoonshineSymbol, bound: usize) -> Result<QuotientGroup, GroupError> {
    close(s, bound, false)
}

/// Kernel of `λ` on `Γ₀(n|h)*` and its index.
#[derive(Debug, Clone)]
pub struct LambdaKernel {
    pub quotient: QuotientGroup,
    pub kernel: PermutationGroup,
    pub index: usize,
}

/// `λ(x) = ζ_h^{-1}`, `λ(y) = ζ_h^{±1}` (sign from [`fricke_test`]),
/// extended along every product; an inconsistency is reported, not patched.
pub fn lambda_kernel(s: &MoonshineSymbol) -> Result<LambdaKernel, GroupError> {
    let q = close(s, DEFAULT_CLOSURE_BOUND, true)?;
    let labels = q.labels.as_ref().expect("labels requested");
    let elements: Vec<Perm> = labels
        .iter()
        .filter(|(_, &l)| l == 0)
        .map(|(p, _)| p.clone())
        .collect();
    let index = q.group.order() / elements.len();
    let kernel = PermutationGroup {
        ground: q.group.ground.clone(),
        elements,
        generators: Vec::new(),
    };
    Ok(LambdaKernel {
        quotient: q,
        kernel,
        index,
    })
}

/// Whether `[[0, -1], [N, 0]]` lies in `Γ₀(n|h)+e,f,…`.
///
/// The matrix is first checked, exactly, to lie in the `w_{n/h}` coset; the
/// answer is then whether `w_{n/h}` is generated by the listed involutions.
pub fn fricke_test(s: &MoonshineSymbol) -> bool {
    let m = s.m();
    let f = Matrix::from_ints(0, -1, s.big_n() as i128, 0).scale(Rational::new(1, s.h as i128));
    assert!(
        in_al_coset(&f, m, s.n, s.h),
        "[[0,-1],[N,0]] is not a w_(n/h) representative for {s}"
    );
    m == 1 || al_closure(&s.divisors, m).contains(&m)
}
