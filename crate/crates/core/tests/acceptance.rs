use std::time::{Duration, Instant};

use ideal24::assembly::*;
use ideal24::boundary::*;
use ideal24::census::{census_enumerate, parse_scheme};
use ideal24::cusp::*;
use ideal24::homology::*;
use ideal24::pipeline::*;
use ideal24::{cell24, Color, CuspLabel, Isometry};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

/// Name, time budget in seconds, check.
type Criterion = (&'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn quotient(name: &str) -> QuotientComplex {
    build_quotient(&compile_script(&preset(name).unwrap()).unwrap())
}

fn verify(name: &str, double_cover: bool) -> ReportDocument {
    run_verify(&preset(name).unwrap(), VerifyOptions { double_cover, boundary_auts: false })
}

fn group(rank: usize, torsion: &[u64]) -> AbelianGroup {
    AbelianGroup::new(rank, torsion)
}

fn sections(qc: &QuotientComplex) -> Vec<CubeComplex> {
    (0..cusp_classes(qc).len()).map(|i| cusp_complex(qc, i).unwrap()).collect()
}

/// Index of the cusp class containing ideal vertices with `label`.
fn cusp_with_label(qc: &QuotientComplex, label: &str) -> usize {
    let l: CuspLabel = label.parse().unwrap();
    cusp_classes(qc).iter().position(|c| c.distinct_labels().contains(&l)).unwrap()
}

/// Boundary component containing the blue facet `label` of copy 0.
fn component_of(qc: &QuotientComplex, label: &str) -> usize {
    let f = FacetRef::new(0, label.parse().unwrap());
    boundary_strata(qc).iter().position(|s| s.facets.contains(&f)).unwrap()
}

fn c1_model() -> Outcome {
    let m = cell24();
    let counts: Vec<usize> = (0..4).map(|d| m.cell_count(d)).collect();
    ensure!(counts == [24, 96, 96, 24], "cell counts {counts:?}");
    for color in [Color::Green, Color::Red, Color::Blue] {
        let n = (0..24).filter(|&f| m.facet_color(f) == color).count();
        ensure!(n == 8, "{n} {color:?} facets");
    }
    for t in 0..m.triangles().len() {
        let [a, b] = m.triangle_facets(t);
        ensure!(m.facet_color(a) != m.facet_color(b), "facets {a} and {b} share a color and triangle {t}");
    }
    for v in 0..24 {
        let facets = m.vertex_facets(v);
        ensure!(facets.len() == 6, "vertex {v} meets {} facets", facets.len());
        for color in [Color::Green, Color::Red, Color::Blue] {
            let n = facets.iter().filter(|&&f| m.facet_color(f) == color).count();
            ensure!(n == 2, "vertex {v} meets {n} {color:?} facets");
        }
    }
    Ok(())
}

fn c2_g() -> Outcome {
    let doc = verify("G", false);
    ensure!(doc.status == Status::Pass, "status {:?}", doc.status);
    ensure!(doc.cusps == 2, "{} cusps", doc.cusps);
    ensure!(doc.volume_multiple == Some(1), "volume {:?}", doc.volume_multiple);
    ensure!(doc.orientable == Some(Orientability::NonOrientable), "orientability {:?}", doc.orientable);
    let qc = quotient("G");
    for r in ridge_check(&qc) {
        match r.kind {
            RidgeKind::Cycle { return_map } => {
                ensure!(r.length() == 4 && return_map.is_identity(), "ridge class {} fails", r.orbit)
            }
            RidgeKind::Chain { .. } => return Err(format!("ridge class {} is a boundary chain", r.orbit)),
        }
    }
    for (i, cc) in sections(&qc).iter().enumerate() {
        ensure!(cc.is_closed(), "cusp {i} has boundary");
        ensure!(!cusp_orientability(cc).is_orientable(), "cusp {i} orientable");
        let h1 = first_homology(cc);
        ensure!(h1 == group(1, &[4]), "cusp {i} H1 = {h1}");
        ensure!(classify_closed(cc) == Ok(FlatClosedType::B4), "cusp {i} is {:?}", classify_closed(cc));
    }
    Ok(())
}

fn c3_double_cover() -> Outcome {
    let dc = orientation_double_cover(&quotient("G")).map_err(|e| e.to_string())?;
    ensure!(orientability(&dc) == Orientability::Orientable, "cover not orientable");
    ensure!(volume_multiple(&dc) == Ok(2), "volume {:?}", volume_multiple(&dc));
    let cusps = sections(&dc);
    ensure!(cusps.len() == 2, "{} cusps", cusps.len());
    for (i, cc) in cusps.iter().enumerate() {
        let h1 = first_homology(cc);
        ensure!(h1 == group(1, &[2, 2]), "cusp {i} H1 = {h1}");
        ensure!(classify_closed(cc) == Ok(FlatClosedType::G2), "cusp {i} is {:?}", classify_closed(cc));
    }
    let doc = verify("G", true);
    match &doc.double_cover {
        Some(Ok(r)) => ensure!(
            r.orientable == Orientability::Orientable && r.volume_multiple == 2 && r.cusps == 2,
            "report disagrees: {r:?}"
        ),
        other => return Err(format!("report has no double cover: {other:?}")),
    }
    Ok(())
}

fn c4_a() -> Outcome {
    let qc = quotient("A");
    let cusps = sections(&qc);
    let mut cubes: Vec<usize> = cusps.iter().map(CubeComplex::len).collect();
    cubes.sort_unstable();
    ensure!(cubes == [2, 2, 2, 2, 4, 4, 4, 4], "cube counts {cubes:?}");
    let kinds: Vec<(FlatCompactType, bool)> = cusps
        .iter()
        .map(|cc| (classify_compact(cc).unwrap_or(FlatCompactType::Other), cusp_orientability(cc).is_orientable()))
        .collect();
    let count = |k: FlatCompactType, o: bool| kinds.iter().filter(|&&x| x == (k, o)).count();
    ensure!(count(FlatCompactType::TwistedIBundleOverKlein, true) == 2, "kinds {kinds:?}");
    ensure!(count(FlatCompactType::MoebiusTimesCircle, false) == 2, "kinds {kinds:?}");
    ensure!(kinds.iter().filter(|k| k.0 == FlatCompactType::TxI).count() == 4, "kinds {kinds:?}");
    for r in ridge_check(&qc) {
        if !r.is_cycle() {
            ensure!(r.length() == 2, "boundary chain {} has length {}", r.orbit, r.length());
        }
    }
    let strata = boundary_strata(&qc);
    ensure!(strata.len() == 2, "{} boundary components", strata.len());
    for i in 0..2 {
        let oc = boundary_complex(&qc, i).map_err(|e| e.to_string())?;
        ensure!(oc.len() == 4 && cusp_count3(&oc) == 6, "component {i}: {} octahedra, {} cusps", oc.len(), cusp_count3(&oc));
    }
    let side = |cusp: usize| -> Result<Vec<usize>, String> {
        let surfaces = boundary_surfaces(&cusps[cusp]).map_err(|e| e.to_string())?;
        Ok(surfaces
            .iter()
            .map(|s| strata.iter().position(|b| s.facets.iter().all(|f| b.facets.contains(f))).unwrap_or(usize::MAX))
            .collect())
    };
    let (x, y) = (component_of(&qc, "(+,+,+,-)"), component_of(&qc, "(+,-,+,+)"));
    ensure!(x != y, "seed octahedra lie on one component");
    for (name, label) in [("m1", "(+,+,0,0)"), ("m2", "(0,0,+,-)")] {
        let s = side(cusp_with_label(&qc, label))?;
        ensure!(s == [x], "{name} surfaces on {s:?}, X = {x}");
    }
    for (name, label) in [("n1", "(+,-,0,0)"), ("n2", "(0,0,+,+)")] {
        let s = side(cusp_with_label(&qc, label))?;
        ensure!(s == [y], "{name} surfaces on {s:?}, Y = {y}");
    }
    for label in ["(+,0,+,0)", "(+,0,0,+)", "(0,+,+,0)", "(0,+,0,+)"] {
        let mut s = side(cusp_with_label(&qc, label))?;
        s.sort_unstable();
        ensure!(s == [0, 1], "non-mute cusp {label} surfaces on {s:?}");
    }
    Ok(())
}

fn c5_d() -> Outcome {
    let qc = quotient("D");
    let cusps = sections(&qc);
    ensure!(cusps.len() == 12, "{} cusps", cusps.len());
    for (i, cc) in cusps.iter().enumerate() {
        ensure!(cc.len() == 4, "cusp {i} has {} cubes", cc.len());
        ensure!(classify_compact(cc) == Ok(FlatCompactType::TxI), "cusp {i} is {:?}", classify_compact(cc));
    }
    let n = boundary_strata(&qc).len();
    ensure!(n == 4, "{n} boundary components");
    for i in 0..n {
        let oc = boundary_complex(&qc, i).map_err(|e| e.to_string())?;
        let r = verify_octahedral(&oc);
        ensure!(r.octahedra == 4 && cusp_count3(&oc) == 6, "component {i}: {r:?}");
        ensure!(r.bad_edge_classes == 0 && 4 * r.edge_classes == 12 * r.octahedra, "component {i} edge cycles: {r:?}");
    }
    Ok(())
}

fn c6_h() -> Outcome {
    let doc = verify("H", false);
    ensure!(doc.status == Status::Pass, "status {:?}", doc.status);
    ensure!(doc.volume_multiple == Some(2), "volume {:?}", doc.volume_multiple);
    ensure!(doc.orientable == Some(Orientability::NonOrientable), "orientability {:?}", doc.orientable);
    let qc = quotient("H");
    let cusps = sections(&qc);
    ensure!(cusps.len() == 1, "{} cusps", cusps.len());
    let cc = &cusps[0];
    ensure!(cc.len() == 48 && cc.is_closed(), "{} cubes, closed {}", cc.len(), cc.is_closed());
    ensure!(cusp_orientability(cc).is_orientable(), "section non-orientable");
    let h1 = first_homology(cc);
    ensure!(h1 == group(3, &[]), "H1 = {h1}");
    ensure!(classify_closed(cc) == Ok(FlatClosedType::G1), "section is {:?}", classify_closed(cc));
    Ok(())
}

fn exact_sequence(qc: &QuotientComplex, component: usize, w: (&Isometry, &[usize]), v: (&Isometry, &[usize])) -> Outcome {
    let oc = boundary_complex(qc, component).map_err(|e| e.to_string())?;
    let order = automorphism_group(&oc).len();
    ensure!(order == 192, "|Aut| = {order}");
    let w = induced_automorphism_with_copies(qc, w.0, w.1, component).map_err(|e| e.to_string())?;
    let v = induced_automorphism_with_copies(qc, v.0, v.1, component).map_err(|e| e.to_string())?;
    let r = verify_exact_sequence(&oc, &w, &v);
    ensure!(r.ok(), "{r:?}");
    Ok(())
}

fn c7_automorphisms() -> Outcome {
    let a = quotient("A");
    let x = component_of(&a, "(+,+,+,-)");
    exact_sequence(&a, x, (&Isometry::antipodal(), &[0]), (&Isometry::flip_xy(), &[0])).map_err(|e| format!("A/X: {e}"))?;
    // In D the green mirroring swaps the copies and the red one is antipodal.
    let d = quotient("D");
    let b1 = component_of(&d, "(-,+,+,+)");
    exact_sequence(&d, b1, (&Isometry::identity(), &[1, 0]), (&Isometry::antipodal(), &[0, 1]))
        .map_err(|e| format!("D/B1: {e}"))
}

/// Extends the seed of every boundary gluing of `name` and checks that
/// exactly one isomorphism agrees with it.
fn seeds_extend_uniquely(name: &str) -> Outcome {
    let script = preset(name).unwrap();
    let mut base = script.clone();
    base.stages.retain(|s| !matches!(s, Stage::BoundaryGlue(_)));
    let qc = build_quotient(&compile_script(&base).unwrap());
    for stage in &script.stages {
        let Stage::BoundaryGlue(g) = stage else { continue };
        let x = boundary_complex(&qc, g.src).map_err(|e| e.to_string())?;
        let y = boundary_complex(&qc, g.dst).map_err(|e| e.to_string())?;
        let source = x.octahedron_index(g.seed_src).ok_or("seed source missing")?;
        let target = y.octahedron_index(g.seed_dst).ok_or("seed target missing")?;
        let vertices = seed_vertex_table(&script, g).map_err(|e| e.to_string())?;
        let seed = SeedMap { source, target, vertices };
        let phi = extend_isometry(&x, &y, &seed).map_err(|e| format!("{name} {}->{}: {e}", g.src, g.dst))?;
        ensure!(is_isomorphism(&x, &y, &phi), "{name} {}->{}: extension is not an isomorphism", g.src, g.dst);
        let agreeing = automorphism_group(&y)
            .iter()
            .map(|a| a.compose(&phi))
            .filter(|f| f.targets[source] == target && f.maps[source] == vertices)
            .count();
        ensure!(agreeing == 1, "{name} {}->{}: {agreeing} isomorphisms extend the seed", g.src, g.dst);

        let mut broken = vertices;
        let k = (1..6).find(|&k| x.octahedra()[source].opposite[0] != k as u8).unwrap();
        broken.swap(0, k);
        let bad = SeedMap { vertices: broken, ..seed };
        ensure!(extend_isometry(&x, &y, &bad).is_err(), "{name}: adjacency-breaking seed extended");
    }
    Ok(())
}

fn c8_seeds() -> Outcome {
    seeds_extend_uniquely("G")?;
    seeds_extend_uniquely("H")
}

fn c9_homology() -> Outcome {
    for name in preset_names() {
        let qc = quotient(name);
        quotient_model(&qc).chain.verify_boundary_square().map_err(|e| format!("{name}: {e}"))?;
        for (i, cc) in sections(&qc).iter().enumerate() {
            cusp_model(cc).chain.verify_boundary_square().map_err(|e| format!("{name} cusp {i}: {e}"))?;
        }
    }
    let oracle = smith_normal_form(&IntMatrix::<i64>::from_rows(&[vec![2, 4], vec![6, 8]]));
    ensure!(oracle.factors == [2, 4], "[[2,4],[6,8]] gives {:?}", oracle.factors);

    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for trial in 0..20 {
        let rows: Vec<Vec<i64>> = (0..6).map(|_| (0..6).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let m = IntMatrix::<BigInt>::from_rows(&rows);
        let r = smith_normal_form(&m);
        ensure!(r.divisibility_holds(), "trial {trial}: divisibility fails");
        let expected = r.factors;
        let mut scrambled = m.clone();
        for _ in 0..1000 {
            let (a, b) = (rng.gen_range(0..6), rng.gen_range(0..6));
            let k = BigInt::from(rng.gen_range(-3..=3));
            match rng.gen_range(0..4) {
                0 if a != b => scrambled.add_row_multiple(a, b, &k),
                1 if a != b => scrambled.add_col_multiple(a, b, &k),
                2 => scrambled.swap_rows(a, b),
                3 => scrambled.swap_cols(a, b),
                _ => scrambled.negate_row(a),
            }
        }
        let r2 = smith_normal_form(&scrambled);
        let got = r2.factors;
        ensure!(got == expected, "trial {trial}: {got:?} != {expected:?}");
    }
    Ok(())
}

fn c10_flat_table() -> Outcome {
    let table = build_flat_type_table();
    ensure!(table.len() == 10, "{} entries", table.len());
    ensure!(ideal24::cusp::flat::table_is_injective(&table), "table is not injective");
    let row = |k: FlatClosedType| table.iter().find(|e| e.kind == k).cloned().unwrap();
    let g2 = row(FlatClosedType::G2);
    ensure!(g2.orientable && g2.h1 == group(1, &[2, 2]), "G2 row {g2:?}");
    let b4 = row(FlatClosedType::B4);
    ensure!(!b4.orientable && b4.h1 == group(1, &[4]), "B4 row {b4:?}");
    Ok(())
}

fn c11_census() -> Outcome {
    let target = |name: &str| verify(name, false).signature.unwrap();
    let one = parse_scheme("copies 1\ngreen identity antipodal H\nred identity antipodal H\nglue\n").unwrap();
    let two = parse_scheme("copies 2\nmirrored\ngreen identity antipodal H\nred identity antipodal H\nglue\n").unwrap();
    for (scheme, name, cap) in [(one, "G", 500), (two, "H", 1000)] {
        let first = census_enumerate(&scheme, Some(cap));
        let found = first.entries.iter().any(|e| e.signature == target(name));
        ensure!(found, "{name} not found in {} assignments", first.enumerated);
        let again = census_enumerate(&scheme, Some(cap));
        ensure!(first == again, "{name} census is not deterministic");
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("24-cell model", 1, c1_model),
        ("preset G", 10, c2_g),
        ("double cover of G", 30, c3_double_cover),
        ("preset A", 10, c4_a),
        ("preset D", 10, c5_d),
        ("preset H", 20, c6_h),
        ("boundary automorphisms", 30, c7_automorphisms),
        ("seeded extension", 5, c8_seeds),
        ("homology engine", 30, c9_homology),
        ("flat-type oracle", 5, c10_flat_table),
        ("census smoke", 300, c11_census),
    ];
    let mut failures = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > Duration::from_secs(budget) {
            outcome = Err(format!("took {elapsed:?}, budget {budget} s"));
        }
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS {name} ({elapsed:.2?})", i + 1),
            Err(e) => {
                failures += 1;
                println!("criterion {:>2} FAIL {name}: {e}", i + 1);
            }
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
