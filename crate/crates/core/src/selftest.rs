//! Quick internal consistency suite behind `ideal24 selftest`.

use crate::assembly::{build_quotient, compile_script, preset, preset_names, quotient_first_homology, quotient_flag_first_homology, quotient_model};
use crate::construction::{parse_construction, print_construction};
use crate::cusp::flat::table_is_injective;
use crate::cusp::{build_flat_type_table, FlatClosedType};
use crate::homology::{smith_normal_form, AbelianGroup, IntMatrix};
use crate::isometry::{signed_perm_group, symmetry_group};
use crate::pipeline::{run_verify, Check, Status, VerifyOptions};
use crate::polytope::{build_24cell, Color};

fn check(name: &str, result: Result<(), String>) -> Check {
    Check { name: name.to_string(), passed: result.is_ok(), detail: result.err() }
}

fn model() -> Result<(), String> {
    let m = build_24cell();
    let counts: Vec<usize> = (0..4).map(|d| m.cell_count(d)).collect();
    if counts != [24, 96, 96, 24] {
        return Err(format!("cell counts {counts:?}"));
    }
    for v in 0..24 {
        for color in [Color::Green, Color::Red, Color::Blue] {
            let n = m.vertex_facets(v).iter().filter(|&&f| m.facet_color(f) == color).count();
            if n != 2 {
                return Err(format!("vertex {v} meets {n} {color} facets"));
            }
        }
    }
    Ok(())
}

fn groups() -> Result<(), String> {
    match (symmetry_group().len(), signed_perm_group().len()) {
        (1152, 384) => Ok(()),
        (a, b) => Err(format!("group orders {a} and {b}")),
    }
}

fn flat_table() -> Result<(), String> {
    let table = build_flat_type_table();
    if table.len() != 10 || !table_is_injective(&table) {
        return Err("table is not an injective ten-entry table".into());
    }
    let h1 = |k| table.iter().find(|e| e.kind == k).map(|e| e.h1.clone());
    if h1(FlatClosedType::G2) != Some(AbelianGroup::new(1, &[2, 2])) || h1(FlatClosedType::B4) != Some(AbelianGroup::new(1, &[4])) {
        return Err("G2 or B4 row disagrees".into());
    }
    Ok(())
}

fn snf() -> Result<(), String> {
    let f = smith_normal_form(&IntMatrix::<i64>::from_rows(&[vec![2, 4], vec![6, 8]])).factors;
    if f == [2, 4] {
        Ok(())
    } else {
        Err(format!("[[2,4],[6,8]] gives {f:?}"))
    }
}

fn presets() -> Result<(), String> {
    for name in preset_names() {
        let script = preset(name).expect("listed preset");
        if parse_construction(&print_construction(&script)).as_ref() != Ok(&script) {
            return Err(format!("{name} does not round-trip"));
        }
        let table = compile_script(&script).map_err(|e| format!("{name}: {e}"))?;
        let qc = build_quotient(&table);
        quotient_model(&qc).chain.verify_boundary_square().map_err(|e| format!("{name}: {e}"))?;
        if quotient_first_homology(&qc) != quotient_flag_first_homology(&qc) {
            return Err(format!("{name}: H1 models disagree"));
        }
        let expected = if matches!(*name, "C_mod_antipodal" | "S") { Status::Fail } else { Status::Pass };
        let status = run_verify(&script, VerifyOptions::default()).status;
        if status != expected {
            return Err(format!("{name} verifies as {status:?}"));
        }
    }
    Ok(())
}

/// Runs every check; all pass on a healthy build.
pub fn selftest() -> Vec<Check> {
    vec![
        check("24-cell model", model()),
        check("symmetry groups", groups()),
        check("flat-type table", flat_table()),
        check("Smith normal form", snf()),
        check("presets", presets()),
    ]
}
