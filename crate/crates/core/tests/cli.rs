use std::process::Command;

use bigpic::cli::run_with;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("bigpic").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?} failed: {err}");
    out
}

#[test]
fn distance_from_one() {
    assert_eq!(ok(&["dist", "1", "1+1/2"]), "4\n");
    assert_eq!(ok(&["dist", "8", "1/2,0"]), "16\n");
}

#[test]
fn tetrahedral_serpent() {
    assert_eq!(ok(&["serpent", "3", "3"]), "1\n3\n9\n1+1/3\n1+2/3\n");
}

#[test]
fn structures_listings() {
    assert_eq!(ok(&["thread", "4", "2"]), "2\n4\n");
    assert_eq!(ok(&["snake", "4"]), "1\n2\n4\n1+1/2\n");
    assert_eq!(ok(&["spine", "32"]), ok(&["thread", "8", "4"]));
    assert_eq!(ok(&["neighbors", "1", "2"]).lines().count(), 3);
}

#[test]
fn class_normalize() {
    assert_eq!(ok(&["class", "normalize", "2,0;0,1"]), "2\n");
    assert_eq!(ok(&["class", "normalize", "1,1/2;0,1"]), "1+1/2\n");
    assert_eq!(ok(&["class", "normalize", "-1,0;0,-4"]), "1/4,0\n");
}

#[test]
fn word_normalize() {
    let out = ok(&["word", "normalize", "3_3", "2_1"]);
    let (nf, class) = out.split_once('\n').unwrap();
    assert_eq!(ok(&["word", "normalize", nf]).split_once('\n').unwrap().0, nf);
    assert!(class.starts_with("class: "));
}

#[test]
fn symbol_and_groups() {
    let out = ok(&["symbol", "parse", "8|4+"]);
    assert!(out.starts_with("symbol: 8|4+\n"));
    assert!(out.contains("N: 32\n"));
    let g = ok(&["group", "3|3"]);
    assert!(g.contains("order: 12\n") && g.contains("serpent: 5\n"));
    let k = ok(&["kernel", "4|2"]);
    assert!(k.contains("order: 4\n") && k.contains("index: 2\n"));
}

#[test]
fn monster_picture_stats() {
    let out = ok(&["picture", "--catalog", "monster", "--mode", "serpent", "--stats"]);
    assert!(out.contains("number_classes: 97\n"), "{out}");
    assert!(out.starts_with("vertices: "));
}

#[test]
fn m24_pictures() {
    let out = ok(&["picture", "--catalog", "m24", "--mode", "serpent", "--stats"]);
    assert!(out.starts_with("vertices: 93\nnumber_classes: 35\n"), "{out}");
    let roots = ok(&["picture", "--catalog", "m24", "--roots"]);
    assert!(roots.starts_with("1\t1\n"));
    let local = ok(&["picture", "--catalog", "m24", "--local", "12"]);
    assert!(local.contains("template: Twelve\n"));
}

#[test]
fn export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m24.json");
    let p = path.to_str().unwrap();
    assert_eq!(
        ok(&["picture", "--catalog", "m24", "--export", "json", "--out", p]),
        ""
    );
    let back = bigpic::pictures::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let cat = bigpic::groups::embedded_catalog(bigpic::groups::CatalogId::M24);
    assert_eq!(
        back,
        bigpic::pictures::build_picture(&cat, bigpic::pictures::Mode::Serpent)
    );
    let dot = ok(&["picture", "--catalog", "m24", "--export", "dot"]);
    assert!(dot.starts_with("graph "));
}

#[test]
fn deterministic_output() {
    let args = [
        "picture",
        "--catalog",
        "m24",
        "--mode",
        "snake",
        "--export",
        "dot",
    ];
    assert_eq!(ok(&args), ok(&args));
}

#[test]
fn harmonics_audit_exit_codes() {
    let (code, out, _) = run(&["harmonics", "--catalog", "m24", "--audit"]);
    assert_eq!(code, 0);
    assert!(out.contains("mismatches: 12A,4A\n"));
    let (code, out, _) = run(&["harmonics", "--catalog", "monster", "--audit"]);
    assert_eq!(code, 1);
    assert!(out.contains("unexpected: 60E\n"));
}

#[test]
fn reconstruct_diff() {
    let out = ok(&[
        "harmonics",
        "--catalog",
        "m24",
        "--reconstruct",
        "--mode",
        "snake",
        "--diff",
    ]);
    assert!(out.ends_with("missing: -\nextra: -\n"));
    let (code, out, _) = run(&[
        "harmonics",
        "--reconstruct",
        "--mode",
        "serpent",
        "--diff",
        "--corrected",
    ]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn domain_errors_exit_one() {
    for (args, name) in [
        (&["class", "normalize", "1,2;2,4"][..], "InvalidMatrix"),
        (&["neighbors", "1", "4"], "InvalidPrime"),
        (&["thread", "5", "3"], "InvalidThread"),
        (&["serpent", "10", "5"], "InvalidSerpent"),
        (&["picture", "--catalog", "m24", "--local", "13"], "NotInPicture"),
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, 1, "{args:?}");
        assert!(err.starts_with(name), "{args:?}: {err}");
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["bogus"][..],
        &["dist", "1"],
        &["dist", "1", "x"],
        &["class", "normalize", "1,2,3"],
        &["word", "normalize", "4_1"],
        &["symbol", "parse", "8|x"],
        &["picture", "--catalog", "leech"],
        &["harmonics"],
    ] {
        let (code, out, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty() && !err.is_empty(), "{args:?}");
    }
}

#[test]
fn binary_exit_status_and_catalog_override() {
    let bin = env!("CARGO_BIN_EXE_bigpic");
    let o = Command::new(bin).args(["dist", "1", "1+1/2"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(o.stdout, b"4\n");
    assert_eq!(
        Command::new(bin).arg("bogus").output().unwrap().status.code(),
        Some(2)
    );

    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("m24.tsv"), "1A\t2-\n3A\t3|3\n").unwrap();
    let o = Command::new(bin)
        .env("BIGPIC_CATALOG_DIR", dir.path())
        .args(["picture", "--catalog", "m24", "--stats"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.starts_with("vertices: 6\n"), "{out}");

    std::fs::write(dir.path().join("m24.tsv"), "1A\tnot a symbol\n").unwrap();
    let o = Command::new(bin)
        .env("BIGPIC_CATALOG_DIR", dir.path())
        .args(["picture", "--catalog", "m24", "--stats"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("CatalogError"));
}
