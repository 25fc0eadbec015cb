use ideal24::assembly::preset;
use ideal24::construction::parse_construction;
use ideal24::pipeline::*;

fn report(name: &str, options: VerifyOptions) -> ReportDocument {
    run_verify(&preset(name).unwrap(), options)
}

#[test]
fn preset_statuses() {
    for (name, status) in [("A", Status::Pass), ("G", Status::Pass), ("D", Status::Pass), ("H", Status::Pass)] {
        assert_eq!(report(name, VerifyOptions::default()).status, status, "{name}");
    }
    for name in ["C_mod_antipodal", "S"] {
        let doc = report(name, VerifyOptions::default());
        assert_eq!(doc.status, Status::Fail, "{name}");
        assert!(doc.checks.iter().any(|c| c.name == "ridge cycles" && !c.passed), "{name}");
    }
}

#[test]
fn g_json_report() {
    let json = emit_report(&report("G", VerifyOptions::default()), ReportFormat::Json);
    assert!(!json.contains('\n'));
    assert!(json.contains("\"volume_multiple\": 1"), "{json}");
    assert!(json.contains("\"cusps\": 2"), "{json}");
    assert!(json.contains("\"schema_version\": 1"), "{json}");
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["status"], "PASS");
    assert_eq!(value["cusp_sections"][0]["classification"], "B4");
}

#[test]
fn d_human_report_lists_twelve_txi_cusps() {
    let text = emit_report(&report("D", VerifyOptions::default()), ReportFormat::Human);
    let cusp_lines: Vec<&str> = text.lines().filter(|l| l.trim_start().starts_with('[') && l.contains("cubes")).collect();
    assert_eq!(cusp_lines.len(), 12, "{text}");
    assert!(cusp_lines.iter().all(|l| l.contains("T×I")), "{text}");
}

#[test]
fn failing_script_reports_fail() {
    let script = parse_construction("copies 1\npaircolor scope=all color=green map=x,y,z,w\n").unwrap();
    let doc = run_verify(&script, VerifyOptions::default());
    assert_eq!(doc.status, Status::Fail);
    let json = emit_report(&doc, ReportFormat::Json);
    assert!(json.contains("\"status\": \"FAIL\""), "{json}");
    assert!(doc.error.is_some());
}

#[test]
fn double_cover_section() {
    let doc = report("G", VerifyOptions { double_cover: true, boundary_auts: false });
    let Some(Ok(dc)) = &doc.double_cover else { panic!("{:?}", doc.double_cover) };
    assert_eq!((dc.copies, dc.volume_multiple, dc.cusps), (2, 2, 2));
    assert!(dc.cusp_sections.iter().all(|c| c.classification.as_deref() == Some("G2")));
    let a = report("A", VerifyOptions { double_cover: true, boundary_auts: false });
    assert!(matches!(a.double_cover, Some(Err(_))));
    assert_eq!(a.status, Status::Pass);
}

#[test]
fn boundary_automorphisms_in_reports() {
    for (name, n) in [("A", 2), ("D", 4)] {
        let doc = report(name, VerifyOptions { double_cover: false, boundary_auts: true });
        assert_eq!(doc.boundary_components.len(), n);
        for b in &doc.boundary_components {
            assert_eq!((b.octahedra, b.cusps, b.automorphism_order), (4, 6, Some(192)), "{name}");
            assert!(b.exact_sequence.as_ref().is_some_and(|r| r.ok()), "{name}");
        }
    }
}

#[test]
fn signatures_of_g_and_h() {
    let g = report("G", VerifyOptions::default()).signature.unwrap();
    assert_eq!((g.volume_multiple, g.orientable, g.cusps), (1, false, 2));
    assert_eq!(g.cusp_types, vec!["B4", "B4"]);
    let h = report("H", VerifyOptions::default()).signature.unwrap();
    assert_eq!((h.volume_multiple, h.orientable, h.cusps), (2, false, 1));
    assert_eq!(h.cusp_types, vec!["G1"]);
    assert!(report("A", VerifyOptions::default()).signature.is_none());
}
