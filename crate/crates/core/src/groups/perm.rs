use std::collections::{HashMap, VecDeque};

use crate::lattice::LatticeClass;

/// Permutation of `0..n`, `p[i]` the image of `i`.
pub type Perm = Vec<u32>;

pub fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

/// `a` first, then `b`.
pub fn compose(a: &Perm, b: &Perm) -> Perm {
    a.iter().map(|&i| b[i as usize]).collect()
}

pub fn inverse(a: &Perm) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j as usize] = i as u32;
    }
    out
}

pub fn is_identity(a: &Perm) -> bool {
    a.iter().enumerate().all(|(i, &j)| i as u32 == j)
}

pub fn order(a: &Perm) -> u64 {
    let mut k = 1;
    let mut p = a.clone();
    while !is_identity(&p) {
        p = compose(&p, a);
        k += 1;
    }
    k
}

/// A finite permutation group on an ordered set of classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGroup {
    pub ground: Vec<LatticeClass>,
    /// Sorted, duplicate free.
    pub elements: Vec<Perm>,
    pub generators: Vec<(String, Perm)>,
}

impl PermutationGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn generator(&self, name: &str) -> Option<&Perm> {
        self.generators.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }

    /// Product of named generators, applied left to right.
    pub fn word(&self, names: &[&str]) -> Option<Perm> {
        let mut p = identity(self.ground.len());
        for n in names {
            p = compose(&p, self.generator(n)?);
        }
        Some(p)
    }

    /// Orbit of `ground[i]`.
    pub fn orbit(&self, i: usize) -> Vec<LatticeClass> {
        let mut idx: Vec<u32> = self.elements.iter().map(|p| p[i]).collect();
        idx.sort_unstable();
        idx.dedup();
        idx.into_iter().map(|j| self.ground[j as usize]).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureError {
    Overflow(usize),
    /// Two words reach the same permutation with different labels.
    Inconsistent {
        first: i64,
        second: i64,
    },
}

/// Breadth-first closure of the generators. Each generator carries a label
/// in `Z/modulus`; labels add along products and every Cayley edge is
/// checked for consistency.
pub fn closure(
    n: usize,
    gens: &[(Perm, i64)],
    modulus: i64,
    bound: usize,
) -> Result<HashMap<Perm, i64>, ClosureError> {
    let m = modulus.max(1);
    let mut seen: HashMap<Perm, i64> = HashMap::from([(identity(n), 0)]);
    let mut queue = VecDeque::from([identity(n)]);
    while let Some(p) = queue.pop_front() {
        let lp = seen[&p];
        for (g, lg) in gens {
            let q = compose(&p, g);
            let lq = (lp + lg).rem_euclid(m);
            match seen.get(&q) {
                Some(&old) if old != lq => {
                    return Err(ClosureError::Inconsistent {
                        first: old,
                        second: lq,
                    })
                }
                Some(_) => {}
                None => {
                    if seen.len() >= bound {
                        return Err(ClosureError::Overflow(bound));
                    }
                    seen.insert(q.clone(), lq);
                    queue.push_back(q);
                }
            }
        }
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_group_orders() {
        let swap = vec![1, 0, 2, 3];
        let cycle = vec![1, 2, 3, 0];
        let g = closure(4, &[(swap.clone(), 0), (cycle.clone(), 0)], 1, 1000).unwrap();
        assert_eq!(g.len(), 24);
        assert_eq!(order(&cycle), 4);
        assert_eq!(compose(&cycle, &inverse(&cycle)), identity(4));
    }

    #[test]
    fn inconsistent_labels_detected() {
        // a transposition cannot carry an odd label mod 3
        let swap = vec![1, 0];
        assert!(matches!(
            closure(2, &[(swap, 1)], 3, 100),
            Err(ClosureError::Inconsistent { .. })
        ));
    }

    #[test]
    fn bound_enforced() {
        let cycle: Perm = (1..50).chain([0]).collect();
        assert_eq!(closure(50, &[(cycle, 0)], 1, 10), Err(ClosureError::Overflow(10)));
    }
}
