use cosetcx::catalog::{build, parse_coset_file, report, verify, Check, ExampleSpec, Outcome, VerifyOptions};
use cosetcx::Status;

#[test]
fn names_parse() {
    for s in ["alt5_oliver", "s3_bipartite", "simplex_boundary(2)", "building_A(3,2)", "opp_A(3,2)", "file:x.txt", "cosets:y.txt"] {
        let spec: ExampleSpec = s.parse().unwrap();
        assert_eq!(spec.to_string(), s);
    }
    assert!("building_A(3)".parse::<ExampleSpec>().is_err());
    assert!("nothing".parse::<ExampleSpec>().is_err());
}

#[test]
fn alt5_report_matches_expectations() {
    let ex = build("alt5_oliver").unwrap();
    let r = report(&ex, &VerifyOptions::default()).unwrap();
    assert_eq!(r.exit_code(), 0);
    let status = |name: &str| r.checks.iter().find(|c| c.check == name).unwrap().verdict.status();
    assert_eq!(status("cm"), Status::Verified);
    assert_eq!(status("homotopy-cm"), Status::Refuted);
    assert_eq!(status("thm2.11"), Status::Verified);
    assert!(r.checks.iter().all(|c| c.outcome == Outcome::AsExpected));
    let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(json["f_vector"], serde_json::json!([21, 80, 60]));
}

#[test]
fn generation_degree_is_respected() {
    let ex = build("s3_bipartite").unwrap();
    let one = verify(&ex, Check::Generation, &VerifyOptions { m: Some(1), ..Default::default() }).unwrap();
    assert_eq!(one.verdict.status(), Status::Verified);
    let two = verify(&ex, Check::Generation, &VerifyOptions { m: Some(2), ..Default::default() }).unwrap();
    assert_eq!(two.verdict.status(), Status::Refuted);
    assert_eq!(two.outcome, Outcome::AsExpected);
}

#[test]
fn coset_files() {
    let text = "group\n(0 1)\n(0 1 2)\nsubgroup\n(0 1)\nsubgroup\n(0 1 2)\n";
    let fam = parse_coset_file(text, 1000).unwrap();
    assert_eq!(fam.parent().order(), 6);
    assert_eq!(fam.members().iter().map(|h| h.order()).collect::<Vec<_>>(), vec![2, 3]);
    assert!(parse_coset_file("subgroup\n(0 1)\n", 1000).is_err());
    assert!(parse_coset_file("group\n(0 1)\nsubgroup\n(0 1 2)\n", 1000).is_err());
}

#[test]
fn facet_files() {
    let dir = std::env::temp_dir().join(format!("cosetcx-catalog-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("square.txt");
    std::fs::write(&path, "a b\nb c\nc d\nd a\n").unwrap();
    let ex = build(&format!("file:{}", path.display())).unwrap();
    let r = report(&ex, &VerifyOptions::default()).unwrap();
    assert!(r.checks.iter().all(|c| c.expected.is_none()));
    assert_eq!(r.homology.unwrap().betti(1), 1);
    std::fs::remove_dir_all(&dir).unwrap();
}
