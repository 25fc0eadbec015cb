//! End-to-end verification of a construction and its report document.

use std::fmt::Write as _;

use serde::Serialize;

use crate::assembly::{
    boundary_strata, build_quotient, compile_script, cusp_classes, orientability, orientation_double_cover,
    quotient_homology, ridge_check, ridge_summary, volume_multiple, ConstructionScript, Orientability,
    QuotientComplex, RidgeSummary,
};
use crate::boundary::{
    automorphism_group, boundary_complex, cusp_count3, induced_automorphism_with_copies, verify_exact_sequence,
    verify_octahedral, Automorphism3, ExactSequenceReport,
};
use crate::cusp::{
    boundary_surfaces, classify_closed, classify_compact, cusp_complex, cusp_orientability, first_homology,
    verify_flat_structure, SurfaceType,
};
use crate::homology::AbelianGroup;
use crate::isometry::Isometry;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    pub double_cover: bool,
    pub boundary_auts: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub kind: SurfaceType,
    pub squares: usize,
    pub orientable: bool,
    pub facets: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspReport {
    pub id: usize,
    pub labels: Vec<String>,
    pub cubes: usize,
    pub closed: bool,
    pub orientable: Orientability,
    pub h1: AbelianGroup,
    pub boundary_surfaces: Vec<SurfaceReport>,
    /// `G1`..`B4` for closed sections, `T×I`, `K×~I` or `M×S1` otherwise;
    /// absent when unclassified.
    pub classification: Option<String>,
    pub flat_structure_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryReport {
    pub id: usize,
    pub octahedra: usize,
    pub cusps: usize,
    pub edge_classes: usize,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub automorphism_order: Option<usize>,
    /// Names of the induced maps `W`, `V` generating the kernel.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reflections: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_sequence: Option<ExactSequenceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Maps of the whole construction that may induce the reflections `W`, `V`
/// of a boundary component: the antipodal map, `H`, and with two copies
/// their compositions with the copy swap.
fn mirror_candidates(copies: usize) -> Vec<(&'static str, Isometry, Vec<usize>)> {
    let same: Vec<usize> = (0..copies).collect();
    let mut out = vec![
        ("antipodal", Isometry::antipodal(), same.clone()),
        ("H", Isometry::flip_xy(), same),
    ];
    if copies == 2 {
        out.push(("swap", Isometry::identity(), vec![1, 0]));
        out.push(("swap+antipodal", Isometry::antipodal(), vec![1, 0]));
        out.push(("swap+H", Isometry::flip_xy(), vec![1, 0]));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub groups: Vec<AbelianGroup>,
    pub euler_characteristic: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCoverReport {
    pub copies: usize,
    pub volume_multiple: usize,
    pub orientable: Orientability,
    pub cusps: usize,
    pub cusp_sections: Vec<CuspReport>,
}

/// Census deduplication key. Equal signatures do not prove isometry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Signature {
    pub volume_multiple: usize,
    pub orientable: bool,
    pub cusps: usize,
    pub cusp_types: Vec<String>,
    pub cusp_h1: Vec<AbelianGroup>,
    pub h1: AbelianGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub name: Option<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub copies: usize,
    pub checks: Vec<Check>,
    pub volume_multiple: Option<usize>,
    pub orientable: Option<Orientability>,
    pub has_boundary: Option<bool>,
    pub cusps: usize,
    pub cusp_sections: Vec<CuspReport>,
    pub ridges: Option<RidgeSummary>,
    pub boundary_components: Vec<BoundaryReport>,
    pub homology: Option<HomologyReport>,
    /// Serialized as the cover's report, or `{"error": ...}` when it
    /// cannot be built.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "cover_or_error")]
    pub double_cover: Option<Result<DoubleCoverReport, String>>,
    pub signature: Option<Signature>,
}

fn cover_or_error<S: serde::Serializer>(
    cover: &Option<Result<DoubleCoverReport, String>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Failure<'a> {
        error: &'a str,
    }
    match cover {
        Some(Ok(r)) => r.serialize(s),
        Some(Err(e)) => Failure { error: e }.serialize(s),
        None => s.serialize_none(),
    }
}

impl ReportDocument {
    fn empty(script: &ConstructionScript) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            name: script.name.clone(),
            status: Status::Fail,
            error: None,
            copies: script.copies,
            checks: Vec::new(),
            volume_multiple: None,
            orientable: None,
            has_boundary: None,
            cusps: 0,
            cusp_sections: Vec::new(),
            ridges: None,
            boundary_components: Vec::new(),
            homology: None,
            double_cover: None,
            signature: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn check(&mut self, name: &str, passed: bool, detail: Option<String>) {
        self.checks.push(Check { name: name.to_string(), passed, detail });
    }
}

pub fn cusp_reports(qc: &QuotientComplex) -> Vec<CuspReport> {
    cusp_classes(qc)
        .iter()
        .map(|class| {
            let labels = class.distinct_labels().iter().map(ToString::to_string).collect();
            let cc = cusp_complex(qc, class.id).expect("cusp id comes from cusp_classes");
            let flat = verify_flat_structure(&cc);
            let surfaces = boundary_surfaces(&cc);
            let classification = if cc.is_closed() {
                classify_closed(&cc).ok().map(|t| t.to_string())
            } else {
                classify_compact(&cc).ok().map(|t| t.to_string())
            };
            CuspReport {
                id: class.id,
                labels,
                cubes: cc.len(),
                closed: cc.is_closed(),
                orientable: cusp_orientability(&cc),
                h1: first_homology(&cc),
                boundary_surfaces: surfaces
                    .as_deref()
                    .unwrap_or_default()
                    .iter()
                    .map(|s| SurfaceReport {
                        kind: s.kind,
                        squares: s.squares.len(),
                        orientable: s.orientable,
                        facets: s.facets.iter().map(ToString::to_string).collect(),
                    })
                    .collect(),
                classification,
                flat_structure_ok: flat.ok() && surfaces.is_ok(),
            }
        })
        .collect()
}

fn boundary_report(qc: &QuotientComplex, id: usize, auts: bool) -> BoundaryReport {
    let oc = match boundary_complex(qc, id) {
        Ok(oc) => oc,
        Err(e) => {
            let r = BoundaryReport {
                id,
                octahedra: 0,
                cusps: 0,
                edge_classes: 0,
                ok: false,
                automorphism_order: None,
                reflections: None,
                exact_sequence: None,
                error: Some(e.to_string()),
            };
            return r;
        }
    };
    let octahedral = verify_octahedral(&oc);
    let mut report = BoundaryReport {
        id,
        octahedra: octahedral.octahedra,
        cusps: cusp_count3(&oc),
        edge_classes: octahedral.edge_classes,
        ok: octahedral.ok(),
        automorphism_order: None,
        reflections: None,
        exact_sequence: None,
        error: None,
    };
    if auts {
        report.automorphism_order = Some(automorphism_group(&oc).len());
        let induced: Vec<(&str, Automorphism3)> = mirror_candidates(qc.copies())
            .into_iter()
            .filter_map(|(name, m, copies)| {
                induced_automorphism_with_copies(qc, &m, &copies, id).ok().filter(|f| !f.is_identity()).map(|f| (name, f))
            })
            .collect();
        'search: for (i, (wn, w)) in induced.iter().enumerate() {
            for (vn, v) in &induced[i + 1..] {
                let seq = verify_exact_sequence(&oc, w, v);
                if seq.ok() {
                    report.reflections = Some([wn.to_string(), vn.to_string()]);
                    report.exact_sequence = Some(seq);
                    break 'search;
                }
            }
        }
    }
    report
}

pub fn signature_of(qc: &QuotientComplex, cusps: &[CuspReport], h1: AbelianGroup) -> Option<Signature> {
    let mut cusp_types: Vec<String> = cusps.iter().map(|c| c.classification.clone()).collect::<Option<_>>()?;
    cusp_types.sort();
    let mut cusp_h1: Vec<AbelianGroup> = cusps.iter().map(|c| c.h1.clone()).collect();
    cusp_h1.sort();
    Some(Signature {
        volume_multiple: volume_multiple(qc).ok()?,
        orientable: orientability(qc).is_orientable(),
        cusps: cusps.len(),
        cusp_types,
        cusp_h1,
        h1,
    })
}

pub fn run_verify(script: &ConstructionScript, options: VerifyOptions) -> ReportDocument {
    let mut doc = ReportDocument::empty(script);
    let table = match compile_script(script) {
        Ok(t) => t,
        Err(e) => {
            doc.check("compile", false, Some(e.to_string()));
            doc.error = Some(e.to_string());
            return doc;
        }
    };
    doc.check("compile", true, None);
    let validation = table.validate();
    let detail = (!validation.is_valid())
        .then(|| validation.violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "));
    doc.check("pairing table", validation.is_valid(), detail);

    let qc = build_quotient(&table);
    let ridges = ridge_summary(&ridge_check(&qc));
    doc.check(
        "ridge cycles",
        ridges.ok(),
        (!ridges.ok()).then(|| format!("{} bad ridge classes", ridges.failures)),
    );
    doc.ridges = Some(ridges);

    doc.cusp_sections = cusp_reports(&qc);
    doc.cusps = doc.cusp_sections.len();
    let bad: Vec<String> =
        doc.cusp_sections.iter().filter(|c| !c.flat_structure_ok).map(|c| c.id.to_string()).collect();
    doc.check("cusp flat structure", bad.is_empty(), (!bad.is_empty()).then(|| format!("cusps {}", bad.join(","))));
    let unknown: Vec<String> =
        doc.cusp_sections.iter().filter(|c| c.classification.is_none()).map(|c| c.id.to_string()).collect();
    doc.check(
        "cusp classification",
        unknown.is_empty(),
        (!unknown.is_empty()).then(|| format!("cusps {}", unknown.join(","))),
    );

    let strata = boundary_strata(&qc);
    doc.has_boundary = Some(!strata.is_empty());
    for s in &strata {
        doc.boundary_components.push(boundary_report(&qc, s.id, options.boundary_auts));
    }
    if !strata.is_empty() {
        let bad: Vec<String> =
            doc.boundary_components.iter().filter(|b| !b.ok).map(|b| b.id.to_string()).collect();
        let detail = (!bad.is_empty()).then(|| format!("components {}", bad.join(",")));
        doc.check("boundary octahedral structure", bad.is_empty(), detail);
    }

    doc.orientable = Some(orientability(&qc));
    doc.volume_multiple = volume_multiple(&qc).ok();
    let (groups, euler_characteristic) = quotient_homology(&qc);
    let h1 = groups.get(1).cloned().unwrap_or_else(AbelianGroup::trivial);
    doc.homology = Some(HomologyReport { groups, euler_characteristic });
    doc.signature = signature_of(&qc, &doc.cusp_sections, h1);

    if options.double_cover {
        doc.double_cover = Some(double_cover_report(&qc));
        if let Some(Ok(dc)) = &doc.double_cover {
            let ok = dc.orientable.is_orientable() && dc.cusp_sections.iter().all(|c| c.flat_structure_ok);
            doc.check("double cover", ok, None);
        }
    }

    doc.status = if doc.checks.iter().all(|c| c.passed) { Status::Pass } else { Status::Fail };
    doc
}

fn double_cover_report(qc: &QuotientComplex) -> Result<DoubleCoverReport, String> {
    let dc = orientation_double_cover(qc).map_err(|e| e.to_string())?;
    let cusp_sections = cusp_reports(&dc);
    Ok(DoubleCoverReport {
        copies: dc.copies(),
        volume_multiple: volume_multiple(&dc).map_err(|e| e.to_string())?,
        orientable: orientability(&dc),
        cusps: cusp_sections.len(),
        cusp_sections,
    })
}

/// A failing report for input that never reached the pipeline.
pub fn error_report(name: Option<String>, error: String) -> ReportDocument {
    let mut doc = ReportDocument::empty(&ConstructionScript::new(0));
    doc.name = name;
    doc.error = Some(error);
    doc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Human,
    Json,
}

/// JSON output is a single line.
pub fn emit_report(doc: &ReportDocument, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => to_json_line(doc),
        ReportFormat::Human => human(doc),
    }
}

/// Single-line JSON with a space after each key.
struct KeySpacing;

impl serde_json::ser::Formatter for KeySpacing {
    fn begin_object_value<W: ?Sized + std::io::Write>(&mut self, writer: &mut W) -> std::io::Result<()> {
        writer.write_all(b": ")
    }
}

pub fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    value.serialize(&mut serde_json::Serializer::with_formatter(&mut out, KeySpacing)).expect("reports serialize");
    String::from_utf8(out).expect("JSON is UTF-8")
}

fn human(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let status = match doc.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
    };
    let _ = writeln!(out, "{}: {status}", doc.name.as_deref().unwrap_or("<unnamed>"));
    if let Some(e) = &doc.error {
        let _ = writeln!(out, "error: {e}");
    }
    let _ = writeln!(out, "copies: {}", doc.copies);
    if let Some(v) = doc.volume_multiple {
        let _ = writeln!(out, "volume: {v} v_m");
    }
    if let Some(o) = doc.orientable {
        let _ = writeln!(out, "orientable: {o}");
    }
    if let Some(r) = &doc.ridges {
        let _ = writeln!(
            out,
            "ridges: {} classes, {} interior cycles, {} boundary chains, {} failures",
            r.classes, r.interior_cycles, r.boundary_chains, r.failures
        );
    }
    let _ = writeln!(out, "cusps: {}", doc.cusps);
    for c in &doc.cusp_sections {
        write_cusp(&mut out, c, "  ");
    }
    if !doc.boundary_components.is_empty() {
        let _ = writeln!(out, "boundary components: {}", doc.boundary_components.len());
        for b in &doc.boundary_components {
            let _ = write!(out, "  [{}] {} octahedra, {} cusps, {} edge classes", b.id, b.octahedra, b.cusps, b.edge_classes);
            if let Some(n) = b.automorphism_order {
                let _ = write!(out, ", |Aut| = {n}");
            }
            if let Some([w, v]) = &b.reflections {
                let _ = write!(out, ", W = {w}, V = {v}");
            }
            let _ = writeln!(out, "{}", if b.ok { "" } else { " (bad)" });
        }
    }
    if let Some(h) = &doc.homology {
        let groups: Vec<String> = h.groups.iter().enumerate().map(|(i, g)| format!("H{i} = {g}")).collect();
        let _ = writeln!(out, "homology: {}; chi = {}", groups.join(", "), h.euler_characteristic);
    }
    match &doc.double_cover {
        Some(Ok(dc)) => {
            let _ = writeln!(
                out,
                "double cover: {} copies, volume {} v_m, {}, {} cusps",
                dc.copies, dc.volume_multiple, dc.orientable, dc.cusps
            );
            for c in &dc.cusp_sections {
                write_cusp(&mut out, c, "  ");
            }
        }
        Some(Err(e)) => {
            let _ = writeln!(out, "double cover: {e}");
        }
        None => {}
    }
    for c in &doc.checks {
        let _ = write!(out, "check {}: {}", c.name, if c.passed { "ok" } else { "FAILED" });
        if let Some(d) = &c.detail {
            let _ = write!(out, " ({d})");
        }
        out.push('\n');
    }
    out
}

fn write_cusp(out: &mut String, c: &CuspReport, indent: &str) {
    let _ = write!(
        out,
        "{indent}[{}] {} cubes, {}, {}, H1 = {}, {}",
        c.id,
        c.cubes,
        if c.closed { "closed" } else { "with boundary" },
        c.orientable,
        c.h1,
        c.classification.as_deref().unwrap_or("unclassified")
    );
    if !c.boundary_surfaces.is_empty() {
        let kinds: Vec<String> = c.boundary_surfaces.iter().map(|s| format!("{:?}", s.kind)).collect();
        let _ = write!(out, ", boundary {}", kinds.join("+"));
    }
    let _ = writeln!(out, ", labels {}", c.labels.join(" "));
}
