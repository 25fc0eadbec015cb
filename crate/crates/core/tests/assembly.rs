use ideal24::assembly::*;
use ideal24::boundary::*;
use ideal24::census::manifold_signature;
use ideal24::cusp::*;
use ideal24::homology::AbelianGroup;
use ideal24::polytope::canonical_cusp_label;
use ideal24::{cell24, Isometry};

fn quotient(name: &str) -> QuotientComplex {
    build_quotient(&compile_script(&preset(name).unwrap()).unwrap())
}

fn signature(table: &PairingTable) -> ideal24::pipeline::Signature {
    manifold_signature(&build_quotient(table)).expect("closed manifold with classified cusps")
}

#[test]
fn preset_tables_are_valid() {
    for name in preset_names() {
        let table = compile_script(&preset(name).unwrap()).unwrap();
        assert!(table.validate().is_valid(), "{name}");
    }
}

#[test]
fn ridge_summaries() {
    let summary = |name| ridge_summary(&ridge_check(&quotient(name)));
    let g = summary("G");
    assert_eq!((g.classes, g.interior_cycles, g.boundary_chains, g.failures), (24, 24, 0, 0));
    let h = summary("H");
    assert_eq!((h.classes, h.interior_cycles, h.failures), (48, 48, 0));
    let a = summary("A");
    assert_eq!((a.interior_cycles, a.boundary_chains, a.failures), (8, 32, 0));
    assert!(summary("C_mod_antipodal").failures > 0);
    assert!(summary("S").failures > 0);
}

#[test]
fn g_uses_a_map_outside_the_signed_permutations() {
    let qc = quotient("G");
    assert!(qc.table().pairings().iter().any(|p| !p.map.is_signed_permutation()));
}

#[test]
fn volumes_and_orientability() {
    for (name, copies, orientable) in [("G", 1, false), ("H", 2, false), ("D", 2, false), ("S", 2, true)] {
        let qc = quotient(name);
        assert_eq!(volume_multiple(&qc).ok(), (qc.is_closed()).then_some(copies), "{name}");
        assert_eq!(orientability(&qc).is_orientable(), orientable, "{name}");
    }
}

#[test]
fn manifold_homology() {
    let h = |name| {
        let (groups, chi) = quotient_homology(&quotient(name));
        (groups.iter().map(ToString::to_string).collect::<Vec<_>>(), chi)
    };
    assert_eq!(h("G"), (vec!["Z".into(), "Z + Z/2 + Z/2".into(), "Z^2 + Z/2".into(), "Z".into()], 1));
    assert_eq!(h("H"), (vec!["Z".into(), "Z^2 + Z/2".into(), "Z^5 + Z/2".into(), "Z^2".into()], 2));
    assert_eq!(h("A").1, 1);
    assert_eq!(h("D").1, 2);
}

#[test]
fn dual_first_homology_matches_the_flag_model() {
    for name in preset_names() {
        let qc = quotient(name);
        assert_eq!(quotient_first_homology(&qc), quotient_flag_first_homology(&qc), "{name}");
        for c in cusp_classes(&qc) {
            let cc = cusp_complex(&qc, c.id).unwrap();
            assert_eq!(first_homology(&cc), flag_first_homology(&cc), "{name} cusp {}", c.id);
        }
    }
}

#[test]
fn double_cover_of_g_has_g2_cusps() {
    let dc = orientation_double_cover(&quotient("G")).unwrap();
    assert_eq!(dc.copies(), 2);
    assert!(orientability(&dc).is_orientable());
    let cusps = cusp_classes(&dc);
    assert_eq!(cusps.len(), 2);
    for c in cusps {
        let cc = cusp_complex(&dc, c.id).unwrap();
        assert_eq!(cc.len(), 24);
        assert_eq!(classify_closed(&cc), Ok(FlatClosedType::G2));
    }
    assert!(matches!(orientation_double_cover(&quotient("S")), Err(AssemblyError::AlreadyOrientable)));
}

#[test]
fn boundary_components_are_octahedral() {
    for (name, n) in [("A", 2), ("D", 4), ("S", 1), ("C_mod_antipodal", 1)] {
        let qc = quotient(name);
        assert_eq!(boundary_strata(&qc).len(), n, "{name}");
        for i in 0..n {
            assert!(verify_octahedral(&boundary_complex(&qc, i).unwrap()).ok(), "{name} component {i}");
        }
    }
}

#[test]
fn folded_edges_are_reported() {
    let facet = FacetRef::new(0, "(+,+,+,+)".parse().unwrap());
    let bare = OctComplex::from_gluings(&[facet], &[]);
    let r = verify_octahedral(&bare);
    assert_eq!((r.unglued_triangles, r.edge_classes, r.bad_edge_classes), (8, 12, 12));
    assert!(!r.ok());

    // Fold two triangles across their shared edge: that edge closes after
    // one corner instead of four.
    let oct = &bare.octahedra()[0];
    let t = oct.triangles[0];
    let u = (0..8).find(|&j| oct.triangles[j].iter().filter(|v| t.contains(v)).count() == 2).unwrap();
    let apex_t = *t.iter().find(|v| !oct.triangles[u].contains(v)).unwrap();
    let apex_u = *oct.triangles[u].iter().find(|v| !t.contains(v)).unwrap();
    let mut fold: VertexBijection = std::array::from_fn(|k| k as u8);
    fold.swap(apex_t as usize, apex_u as usize);
    let folded = OctComplex::from_gluings(&[facet], &[(0, 0, 0, fold)]);
    assert!(verify_octahedral(&folded).bad_edge_classes > 0);
}

#[test]
fn a_boundary_has_192_automorphisms() {
    let qc = quotient("A");
    for i in 0..2 {
        let oc = boundary_complex(&qc, i).unwrap();
        assert_eq!(automorphism_group(&oc).len(), 192);
        let w = induced_boundary_automorphism(&qc, &Isometry::antipodal(), i).unwrap();
        let v = induced_boundary_automorphism(&qc, &Isometry::flip_xy(), i).unwrap();
        assert!(verify_exact_sequence(&oc, &w, &v).ok());
    }
    let d = quotient("D");
    assert!(induced_boundary_automorphism(&d, &Isometry::flip_xy(), 0).is_err());
}

fn base_of(name: &str) -> (ConstructionScript, ConstructionScript, QuotientComplex) {
    let script = preset(name).unwrap();
    let mut base = script.clone();
    base.stages.retain(|s| !matches!(s, Stage::BoundaryGlue(_)));
    let qc = build_quotient(&compile_script(&base).unwrap());
    (script, base, qc)
}

fn glues(script: &ConstructionScript) -> Vec<BoundaryGlue> {
    script
        .stages
        .iter()
        .filter_map(|s| match s {
            Stage::BoundaryGlue(g) => Some(g.clone()),
            _ => None,
        })
        .collect()
}

/// `phi` expressed as a seed on octahedron `source` of `x`.
fn seed_on(x: &OctComplex, y: &OctComplex, src: usize, dst: usize, phi: &OctMap, source: usize) -> BoundaryGlue {
    let label = |v: usize| CuspRef::Label(canonical_cusp_label(cell24().vertex(v)));
    let (ox, oy) = (&x.octahedra()[source], &y.octahedra()[phi.targets[source]]);
    let vertices = (0..6).map(|k| (label(ox.vertices[k]), label(oy.vertices[phi.maps[source][k] as usize]))).collect();
    BoundaryGlue { src, dst, seed_src: ox.facet, seed_dst: oy.facet, vertices }
}

#[test]
fn seeds_extend_and_bad_seeds_fail() {
    let (script, _, qc) = base_of("H");
    for g in glues(&script) {
        let x = boundary_complex(&qc, g.src).unwrap();
        let y = boundary_complex(&qc, g.dst).unwrap();
        let source = x.octahedron_index(g.seed_src).unwrap();
        let target = y.octahedron_index(g.seed_dst).unwrap();
        let vertices = seed_vertex_table(&script, &g).unwrap();
        let phi = extend_isometry(&x, &y, &SeedMap { source, target, vertices }).unwrap();
        assert!(is_isomorphism(&x, &y, &phi));
        let mut broken = vertices;
        let k = (1..6).find(|&k| x.octahedra()[source].opposite[0] != k as u8).unwrap();
        broken.swap(0, k);
        assert!(matches!(
            extend_isometry(&x, &y, &SeedMap { source, target, vertices: broken }),
            Err(BoundaryError::SeedDoesNotExtend(_))
        ));
    }
    let mut bad = script.clone();
    if let Some(Stage::BoundaryGlue(g)) = bad.stages.last_mut() {
        g.vertices.swap(0, 1);
        g.vertices[0].1 = g.vertices[1].1.clone();
    }
    assert!(compile_script(&bad).is_err());
}

#[test]
fn signatures_are_stable_under_reseeding() {
    for name in ["G", "H"] {
        let (script, base, qc) = base_of(name);
        let all = glues(&script);
        let reference = signature(&compile_script(&script).unwrap());
        let g = &all[0];
        let x = boundary_complex(&qc, g.src).unwrap();
        let y = boundary_complex(&qc, g.dst).unwrap();
        let seed = SeedMap {
            source: x.octahedron_index(g.seed_src).unwrap(),
            target: y.octahedron_index(g.seed_dst).unwrap(),
            vertices: seed_vertex_table(&script, g).unwrap(),
        };
        let phi = extend_isometry(&x, &y, &seed).unwrap();
        let rebuild = |phi: &OctMap, source: usize| {
            let mut s = base.clone();
            s.stages.push(Stage::BoundaryGlue(seed_on(&x, &y, g.src, g.dst, phi, source)));
            s.stages.extend(all[1..].iter().cloned().map(Stage::BoundaryGlue));
            compile_script(&s).unwrap()
        };
        let original = compile_script(&script).unwrap();
        for source in 0..x.len() {
            assert_eq!(rebuild(&phi, source), original, "{name}: seed on octahedron {source}");
        }
        // Conjugating by a symmetry of the base that preserves both
        // components gives an isometric manifold.
        let copies: Vec<usize> = (0..qc.copies()).collect();
        for m in [Isometry::antipodal(), Isometry::flip_xy()] {
            let (Ok(mx), Ok(my)) = (
                induced_automorphism_with_copies(&qc, &m, &copies, g.src),
                induced_automorphism_with_copies(&qc, &m, &copies, g.dst),
            ) else {
                continue;
            };
            let conjugate = my.compose(&phi).compose(&mx.inverse());
            assert_eq!(signature(&rebuild(&conjugate, 0)), reference, "{name}: conjugated by {m}");
        }
    }
}

#[test]
fn signatures_are_stable_under_copy_permutation() {
    let table = compile_script(&preset("H").unwrap()).unwrap();
    let swap = |f: FacetRef| FacetRef { copy: 1 - f.copy, ..f };
    let mut swapped = PairingTable::new(2);
    for p in table.pairings() {
        swapped.insert(Pairing::new(swap(p.source), swap(p.target), p.map)).unwrap();
    }
    assert_ne!(swapped, table);
    assert_eq!(signature(&swapped), signature(&table));
}

#[test]
fn cusp_sections_of_presets() {
    let classes = |name| {
        let qc = quotient(name);
        cusp_classes(&qc)
            .iter()
            .map(|c| {
                let cc = cusp_complex(&qc, c.id).unwrap();
                assert!(verify_flat_structure(&cc).ok(), "{name} cusp {}", c.id);
                (cc.len(), first_homology(&cc))
            })
            .collect::<Vec<_>>()
    };
    assert_eq!(classes("G"), vec![(12, AbelianGroup::new(1, &[4])); 2]);
    assert_eq!(classes("H"), vec![(48, AbelianGroup::free(3))]);
    assert_eq!(classes("D"), vec![(4, AbelianGroup::free(2)); 12]);
}
