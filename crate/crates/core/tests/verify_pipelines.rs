use spheract_core::verify::{emit_report, verify, ReportFormat, VerificationCase, VerifyOptions};

fn optimum(r: &spheract_core::verify::VerificationReport) -> u64 {
    r.stage("product_obstruction").unwrap().artifacts["certificate"]["optimum"].as_u64().unwrap()
}

#[test]
fn theorem_case_passes() {
    let case = VerificationCase::Theorem { a: 3, b: 5, c: 1, n: 7 };
    let r = verify(&case, &VerifyOptions::default()).unwrap();
    assert!(r.overall, "{}", emit_report(&r, ReportFormat::Markdown));
    assert_eq!(r.stages.len(), 6);
    assert!(r.failed_stage.is_none());
    let cert = &r.stage("product_obstruction").unwrap().artifacts["certificate"];
    assert!(optimum(&r) > 10);
    assert_eq!(cert["exhausted"], true);
    assert_eq!(cert["no_faithful_cover_within_m"], true);
    let md = emit_report(&r, ReportFormat::Markdown);
    assert_eq!(md.lines().filter(|l| l.starts_with("| ") && !l.starts_with("| #")).count(), 6);
    let gap = &r.stage("dimension_gap").unwrap().artifacts;
    assert_eq!(gap["gap"][0][1], 6);
}

#[test]
fn lowdim_cases_are_obstructed() {
    for d in 6..=8 {
        let case = VerificationCase::Lowdim { d, a: 3, b: 5, c: 1 };
        let r = verify(&case, &VerifyOptions::default()).unwrap();
        assert!(r.overall, "d = {d}");
        assert!(optimum(&r) > d + 1);
    }
}

#[test]
fn reports_are_deterministic() {
    let case = VerificationCase::Lowdim { d: 6, a: 3, b: 5, c: 1 };
    let a = emit_report(&verify(&case, &VerifyOptions::default()).unwrap(), ReportFormat::Json);
    let b = emit_report(&verify(&case, &VerifyOptions::default()).unwrap(), ReportFormat::Json);
    assert_eq!(a, b);
    assert!(!a.contains("elapsed_ms"));
    let timed = VerifyOptions { timings: true, ..VerifyOptions::default() };
    let c = emit_report(&verify(&case, &timed).unwrap(), ReportFormat::Json);
    assert!(c.contains("elapsed_ms"));
}

#[test]
fn fixed_set_case() {
    let r = verify(&VerificationCase::FixedSet { a: 3, b: 5, c: 1 }, &VerifyOptions::default()).unwrap();
    assert!(r.overall, "{}", emit_report(&r, ReportFormat::Markdown));
    assert_eq!(r.stages.len(), 5);
}

#[test]
fn family_prerequisite_fails() {
    // Milnor(3,5,1) has a faithful real representation of dimension 6
    let r = verify(&VerificationCase::Family { a: 3, b: 5, c: 1, k: 1 }, &VerifyOptions::default()).unwrap();
    assert!(!r.overall);
    let pre = r.stage("milnor_prerequisite").unwrap();
    assert_eq!(pre.verdict, Some(false));
    assert_eq!(pre.artifacts["certificate"]["optimum"], 6);
}

#[test]
fn join_check_case() {
    let case = VerificationCase::JoinCheck { left: "m3".parse().unwrap(), right: "polygon(3)".parse().unwrap() };
    let r = verify(&case, &VerifyOptions::default()).unwrap();
    assert!(r.overall);
    let json = emit_report(&r, ReportFormat::Json);
    let back: spheract_core::verify::VerificationReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);
}
