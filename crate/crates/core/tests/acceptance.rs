//! One test per acceptance criterion. Each prints a single
//! `ACCEPTANCE <n> PASS|FAIL <detail>` line before asserting.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use bigpic::arith::{dedekind_psi, divisors, exact_divisors};
use bigpic::groups::perm::{compose, order};
use bigpic::groups::{embedded_catalog, lambda_kernel, parse_symbol, quotient_group, CatalogId};
use bigpic::harmonics::{audit, known_counterexamples, mismatch_set, reconstruct_classes, Heights};
use bigpic::lattice::{canonicalize, hyper_distance, p_neighbors, LatticeClass, Matrix};
use bigpic::pictures::{build_picture, picture_classes, roots_table, Mode};
use bigpic::rational::Rational;
use bigpic::structures::{al_apply, al_compose, serpent, snake, spine, thread, AtkinLehner};
use bigpic::words::{class_to_word, meta_commute, normalize, translation, word_to_class, PrimeOperator};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

const MONSTER_SERPENT_VERTICES: usize = 207;
const MONSTER_SNAKE_VERTICES: usize = 218;
const MONSTER_NUMBER_CLASSES: usize = 97;
const M24_SERPENT_VERTICES: usize = 93;
const M24_SNAKE_VERTICES: usize = 94;
const M24_NUMBER_CLASSES: usize = 35;
const PICTURE_TIME_LIMIT: Duration = Duration::from_secs(5);
const GROUP_TIME_LIMIT: Duration = Duration::from_secs(1);
const PROPERTY_CASES: u32 = 500;

fn report(n: u32, ok: bool, detail: impl AsRef<str>) {
    println!(
        "ACCEPTANCE {n} {} {}",
        if ok { "PASS" } else { "FAIL" },
        detail.as_ref()
    );
}

fn show(set: &BTreeSet<LatticeClass>) -> String {
    let v: Vec<String> = set.iter().map(|c| c.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

#[test]
fn criterion_01_monster_counts() {
    let cat = embedded_catalog(CatalogId::Monster);
    let start = Instant::now();
    let serp = build_picture(&cat, Mode::Serpent);
    let snak = build_picture(&cat, Mode::Snake);
    let took = start.elapsed();
    let numbers = serp.number_classes().count();
    let snake_numbers = snak.number_classes().count();
    let ok = serp.vertices.len() == MONSTER_SERPENT_VERTICES
        && snak.vertices.len() == MONSTER_SNAKE_VERTICES
        && numbers == MONSTER_NUMBER_CLASSES
        && took < PICTURE_TIME_LIMIT;
    report(
        1,
        ok,
        format!(
            "serpent vertices {} (want {MONSTER_SERPENT_VERTICES}), snake vertices {} (want {MONSTER_SNAKE_VERTICES}), \
             number classes {numbers}/{snake_numbers} (want {MONSTER_NUMBER_CLASSES}), {took:?}",
            serp.vertices.len(),
            snak.vertices.len()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_02_m24_counts() {
    let cat = embedded_catalog(CatalogId::M24);
    let serp = build_picture(&cat, Mode::Serpent);
    let snak = build_picture(&cat, Mode::Snake);
    let numbers = serp.number_classes().count();
    let ok = serp.vertices.len() == M24_SERPENT_VERTICES
        && snak.vertices.len() == M24_SNAKE_VERTICES
        && numbers == M24_NUMBER_CLASSES
        && snak.number_classes().count() == M24_NUMBER_CLASSES;
    report(
        2,
        ok,
        format!(
            "serpent {} snake {} number classes {numbers}",
            serp.vertices.len(),
            snak.vertices.len()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_03_anaconda() {
    let s = serpent(24, 12).unwrap();
    let mut per_h: BTreeMap<u64, usize> = BTreeMap::new();
    for c in &s.classes {
        *per_h.entry(c.h()).or_default() += 1;
    }
    let want = BTreeMap::from([(1, 18), (2, 12), (3, 12), (4, 12), (6, 8), (12, 8)]);
    let ok = s.classes.len() == 70 && per_h == want && s.classes == snake(288).classes;
    report(3, ok, format!("{} classes, per h {per_h:?}", s.classes.len()));
    assert!(ok);
}

#[test]
fn criterion_04_roots_tables() {
    let mut ok = true;
    let mut details = Vec::new();
    for id in [CatalogId::Monster, CatalogId::M24] {
        let cat = embedded_catalog(id);
        let table = roots_table(
            &build_picture(&cat, Mode::Serpent),
            &build_picture(&cat, Mode::Snake),
        );
        let reference = bigpic::groups::expected_roots(id).unwrap();
        let centers: BTreeSet<u64> = table.rows.keys().chain(reference.keys()).copied().collect();
        let diffs: Vec<String> = centers
            .into_iter()
            .filter(|c| table.rows.get(c) != reference.get(c))
            .map(|c| {
                format!(
                    "{c}: computed {:?} reference {:?}",
                    table.rows.get(&c).cloned().unwrap_or_default(),
                    reference.get(&c).cloned().unwrap_or_default()
                )
            })
            .collect();
        ok &= diffs.is_empty();
        details.push(format!(
            "{id}: {} rows, {} differing {diffs:?}",
            table.rows.len(),
            diffs.len()
        ));
    }
    report(4, ok, details.join("; "));
    assert!(ok);
}

#[test]
fn criterion_05_example_8c() {
    let s = serpent(8, 4).unwrap().classes;
    let ok = s == snake(32).classes && s.len() == 14 && spine(32) == thread(8, 4).unwrap();
    report(5, ok, format!("|serpent(8,4)| = {}", s.len()));
    assert!(ok);
}

#[test]
fn criterion_06_quotient_groups() {
    let start = Instant::now();
    let k33 = lambda_kernel(&parse_symbol("3|3").unwrap()).unwrap();
    let t33 = start.elapsed();
    let g = &k33.quotient.group;
    let (x, y) = (g.generator("x").unwrap(), g.generator("y").unwrap());
    let xy = compose(x, y);
    let yx = compose(y, x);
    let a4 = g.order() == 12
        && order(x) == 3
        && order(y) == 3
        && order(&xy) == 2
        && k33.index == 3
        && k33.kernel.contains(&xy)
        && k33.kernel.contains(&yx)
        && t33 < GROUP_TIME_LIMIT;

    let start = Instant::now();
    let k42 = lambda_kernel(&parse_symbol("4|2").unwrap()).unwrap();
    let t42 = start.elapsed();
    let g = &k42.quotient.group;
    let xy = g.word(&["x", "y"]).unwrap();
    let mut generated = vec![bigpic::groups::perm::identity(xy.len()), xy.clone()];
    generated.sort();
    let klein = g.order() == 4
        && g.elements.iter().all(|p| order(p) <= 2)
        && k42.index == 2
        && k42.kernel.elements == generated
        && t42 < GROUP_TIME_LIMIT;
    let ok = a4 && klein;
    report(
        6,
        ok,
        format!(
            "3|3: order {} index {} ({t33:?}); 4|2: order {} index {} ({t42:?})",
            k33.quotient.group.order(),
            k33.index,
            k42.quotient.group.order(),
            k42.index
        ),
    );
    assert!(
        quotient_group(&parse_symbol("3|3").unwrap())
            .unwrap()
            .group
            .order()
            == 12
    );
    assert!(ok);
}

#[test]
fn criterion_07_harmonics_audit() {
    let mut ok = true;
    let mut details = Vec::new();
    for id in [CatalogId::Monster, CatalogId::M24] {
        let rows = audit(&embedded_catalog(id)).unwrap();
        let got = mismatch_set(&rows);
        let want = known_counterexamples(id);
        let off_table: Vec<String> = rows
            .iter()
            .filter(|r| !want.contains(&r.class_name) && !r.agrees_with_table())
            .map(|r| {
                format!(
                    "{} predicted {} table {}",
                    r.class_name, r.predicted.1, r.procedure
                )
            })
            .collect();
        let vs_groups: BTreeSet<String> = rows
            .iter()
            .filter(|r| r.predicted.1 != r.symbol.h)
            .map(|r| r.class_name.clone())
            .collect();
        ok &= got == want && off_table.is_empty();
        details.push(format!(
            "{id}: mismatches {got:?}; extra {:?}; missing {:?}; rows off the table {off_table:?}; \
             mismatches against the groups' own h {vs_groups:?}",
            got.difference(&want).collect::<Vec<_>>(),
            want.difference(&got).collect::<Vec<_>>(),
        ));
    }
    report(7, ok, details.join("; "));
    assert!(ok);
}

#[test]
fn criterion_08_reconstruction() {
    let cat = embedded_catalog(CatalogId::Monster);
    let serp = picture_classes(&cat, Mode::Serpent);
    let snak = picture_classes(&cat, Mode::Snake);
    let rs = reconstruct_classes(&cat, Mode::Serpent, Heights::Predicted).unwrap();
    let rn = reconstruct_classes(&cat, Mode::Snake, Heights::Predicted).unwrap();
    let serp_missing: BTreeSet<_> = serp.difference(&rs).copied().collect();
    let serp_extra: BTreeSet<_> = rs.difference(&serp).copied().collect();
    let snake_missing: BTreeSet<_> = snak.difference(&rn).copied().collect();
    let snake_extra: BTreeSet<_> = rn.difference(&snak).copied().collect();
    let allowed: BTreeSet<LatticeClass> = [1, 3, 5, 7]
        .into_iter()
        .map(|g| LatticeClass::number_like(1, g, 8))
        .chain([1, 3].into_iter().map(|g| LatticeClass::number_like(11, g, 4)))
        .collect();
    let corrected_serp = reconstruct_classes(&cat, Mode::Serpent, Heights::Corrected).unwrap() == serp;
    let corrected_snake = reconstruct_classes(&cat, Mode::Snake, Heights::Corrected).unwrap() == snak;
    let ok = serp_missing.is_empty()
        && serp_extra.is_empty()
        && snake_missing == allowed
        && snake_extra.is_empty();
    report(
        8,
        ok,
        format!(
            "serpent: missing {} extra {}; snake: missing {} (allowed {}) extra {}; \
             corrected heights rebuild serpent {corrected_serp} snake {corrected_snake}",
            show(&serp_missing),
            show(&serp_extra),
            show(&snake_missing),
            show(&allowed),
            show(&snake_extra)
        ),
    );
    assert!(ok);
}

fn class_strategy() -> impl Strategy<Value = LatticeClass> {
    (1u64..=60, 1u64..=12, 1u64..=24, 0u64..24).prop_filter_map("reduced g/h", |(a, b, h, g)| {
        let g = g % h;
        let h = if g == 0 { 1 } else { h };
        LatticeClass::new(Rational::new(a as i128, b as i128), g, h).ok()
    })
}

/// Random elements of `SL₂(Z)` as products of elementary matrices.
fn unimodular() -> impl Strategy<Value = Matrix> {
    prop::collection::vec((0usize..3, -3i128..=3), 1..6).prop_map(|steps| {
        steps.into_iter().fold(Matrix::IDENTITY, |m, (kind, k)| {
            let e = match kind {
                0 => Matrix::from_ints(1, k, 0, 1),
                1 => Matrix::from_ints(1, 0, k, 1),
                _ => Matrix::from_ints(0, -1, 1, 0),
            };
            e * m
        })
    })
}

fn operator(primes: &'static [u64]) -> impl Strategy<Value = PrimeOperator> {
    prop::sample::select(primes)
        .prop_flat_map(|p| (0..=p).prop_map(move |i| PrimeOperator::new(p, i).unwrap()))
}

fn run<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
    results: &mut Vec<(String, bool)>,
) {
    let mut runner = TestRunner::new(Config {
        cases: PROPERTY_CASES,
        ..Config::default()
    });
    let r = runner.run(&strategy, test);
    if let Err(e) = &r {
        println!("  property {name} failed: {e}");
    }
    results.push((name.to_string(), r.is_ok()));
}

/// Classes at hyper-distance exactly `d` from `1`, by breadth-first search
/// over prime neighbours.
fn sphere(d: u64) -> BTreeSet<LatticeClass> {
    let one = LatticeClass::number(1);
    let mut frontier: BTreeSet<LatticeClass> = BTreeSet::from([one]);
    let mut found = frontier.clone();
    let primes: Vec<u64> = bigpic::arith::prime_divisors(d);
    let steps: u32 = bigpic::arith::factorize(d).iter().map(|&(_, e)| e).sum();
    for _ in 0..steps {
        let mut next = BTreeSet::new();
        for x in &frontier {
            for &p in &primes {
                for y in p_neighbors(x, p).unwrap() {
                    if d.is_multiple_of(hyper_distance(&one, &y)) {
                        next.insert(y);
                    }
                }
            }
        }
        found.extend(next.iter().copied());
        frontier = next;
    }
    found
        .into_iter()
        .filter(|y| hyper_distance(&one, y) == d)
        .collect()
}

#[test]
fn criterion_09_property_suites() {
    let mut results = Vec::new();
    run(
        "distance symmetry",
        (class_strategy(), class_strategy()),
        |(x, y)| {
            prop_assert_eq!(hyper_distance(&x, &y), hyper_distance(&y, &x));
            Ok(())
        },
        &mut results,
    );
    run(
        "canonicalize coset invariance",
        (class_strategy(), unimodular()),
        |(x, g)| {
            let m = x.alpha();
            prop_assert_eq!(canonicalize(&(g * m)).unwrap(), canonicalize(&m).unwrap());
            prop_assert_eq!(canonicalize(&m).unwrap(), x);
            Ok(())
        },
        &mut results,
    );
    run(
        "p+1 neighbours",
        (class_strategy(), prop::sample::select(vec![2u64, 3, 5, 7])),
        |(x, p)| {
            let ns: BTreeSet<_> = p_neighbors(&x, p).unwrap().into_iter().collect();
            prop_assert_eq!(ns.len() as u64, p + 1);
            for y in &ns {
                prop_assert_eq!(hyper_distance(&x, y), p);
            }
            Ok(())
        },
        &mut results,
    );
    let spheres: BTreeMap<u64, usize> = (1..=12).map(|d| (d, sphere(d).len())).collect();
    run(
        "psi counts",
        1u64..=12,
        |d| {
            prop_assert_eq!(spheres[&d] as u64, dedekind_psi(d));
            Ok(())
        },
        &mut results,
    );
    run(
        "meta-commutation products",
        (operator(&[2, 3, 5, 7]), operator(&[2, 3, 5, 7])),
        |(a, b)| {
            if a.p == b.p {
                return Ok(());
            }
            let s = meta_commute(a, b).unwrap();
            prop_assert_eq!(
                a.matrix() * b.matrix(),
                translation(s.shift) * s.left.matrix() * s.right.matrix()
            );
            Ok(())
        },
        &mut results,
    );
    run(
        "normalize round trip",
        prop::collection::vec(operator(&[2, 3, 5, 7]), 0..=10),
        |w| {
            let nf = normalize(&w);
            prop_assert_eq!(word_to_class(&nf.to_word()), word_to_class(&w));
            prop_assert_eq!(&nf, &class_to_word(&word_to_class(&w)));
            Ok(())
        },
        &mut results,
    );
    run(
        "Atkin-Lehner laws",
        (
            prop::sample::select(vec![6u64, 30, 210]),
            any::<prop::sample::Index>(),
            any::<prop::sample::Index>(),
        ),
        |(n, i, j)| {
            let ex: Vec<u64> = std::iter::once(1).chain(exact_divisors(n)).collect();
            let (e, f) = (ex[i.index(ex.len())], ex[j.index(ex.len())]);
            let we = AtkinLehner::new(e, n, 1).unwrap();
            let wf = AtkinLehner::new(f, n, 1).unwrap();
            let wg = AtkinLehner::new(al_compose(e, f, n).unwrap(), n, 1).unwrap();
            for k in divisors(n) {
                let x = LatticeClass::number(k);
                let ex_ = al_apply(&we, &x).unwrap();
                prop_assert_eq!(al_apply(&we, &ex_).unwrap(), x);
                let ef = al_apply(&wf, &ex_).unwrap();
                let fe = al_apply(&we, &al_apply(&wf, &x).unwrap()).unwrap();
                prop_assert_eq!(ef, fe);
                prop_assert_eq!(ef, al_apply(&wg, &x).unwrap());
            }
            Ok(())
        },
        &mut results,
    );
    let failed: Vec<&String> = results.iter().filter(|(_, ok)| !ok).map(|(n, _)| n).collect();
    let ok = failed.is_empty();
    report(
        9,
        ok,
        format!(
            "{} suites x {PROPERTY_CASES} cases, failed {failed:?}",
            results.len()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_10_relation_list() {
    let op = |p, i| PrimeOperator::new(p, i).unwrap();
    let relations = [
        ((0, 0), (0, 0)),
        ((0, 1), (0, 1)),
        ((0, 2), (1, 0)),
        ((1, 0), (1, 1)),
        ((1, 1), (2, 0)),
        ((1, 2), (2, 1)),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    for ((i, j), (l, k)) in relations {
        let s = meta_commute(op(2, i), op(3, j)).unwrap();
        let good = s.left == op(3, l) && s.right == op(2, k) && s.shift == 0;
        ok &= good;
        lines.push(format!("{}.{}={}.{}", op(2, i), op(3, j), s.left, s.right));
    }
    report(10, ok, lines.join(" "));
    assert!(ok);
}
