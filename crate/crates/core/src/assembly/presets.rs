use crate::isometry::Isometry;
use crate::polytope::{Color, FacetLabel};

use super::script::{BoundaryGlue, ConstructionScript, CuspRef, Scope, Stage};
use super::table::FacetRef;

const NAMES: [&str; 6] = ["C_mod_antipodal", "A", "G", "S", "D", "H"];

pub fn preset_names() -> &'static [&'static str] {
    &NAMES
}

pub fn preset(name: &str) -> Option<ConstructionScript> {
    Some(match name {
        "C_mod_antipodal" => c_mod_antipodal(),
        "A" => a(),
        "G" => g(),
        "S" => s(),
        "D" => d(),
        "H" => h(),
        _ => return None,
    })
}

fn facet(copy: usize, label: &str) -> FacetRef {
    FacetRef::new(copy, label.parse::<FacetLabel>().expect("valid facet label"))
}

fn glue(src: usize, dst: usize, seed_src: FacetRef, seed_dst: FacetRef, table: &str) -> Stage {
    let vertices = table
        .split(';')
        .map(|pair| {
            let (a, b) = pair.split_once("->").expect("a->b");
            (CuspRef::Name(a.to_string()), CuspRef::Name(b.to_string()))
        })
        .collect();
    Stage::BoundaryGlue(BoundaryGlue { src, dst, seed_src, seed_dst, vertices })
}

fn c_mod_antipodal() -> ConstructionScript {
    ConstructionScript::new(1)
        .named("C_mod_antipodal")
        .pair_color(Scope::All, None, Color::Green, Isometry::antipodal())
}

fn with_a_cusps(s: ConstructionScript) -> ConstructionScript {
    s.cusp("m1", &["(+,+,0,0)"])
        .cusp("n1", &["(+,-,0,0)"])
        .cusp("m2", &["(0,0,+,-)"])
        .cusp("n2", &["(0,0,+,+)"])
        .cusp("a", &["(+,0,+,0)", "(+,0,-,0)"])
        .cusp("b", &["(+,0,0,+)", "(+,0,0,-)"])
        .cusp("c", &["(0,+,+,0)", "(0,+,-,0)"])
        .cusp("d", &["(0,+,0,+)", "(0,+,0,-)"])
}

fn a() -> ConstructionScript {
    with_a_cusps(ConstructionScript::new(1).named("A"))
        .pair_color(Scope::All, None, Color::Green, Isometry::antipodal())
        .pair_color(Scope::All, None, Color::Red, Isometry::flip_xy())
}

fn g() -> ConstructionScript {
    let mut s = a();
    s.name = Some("G".into());
    s.stage(glue(
        0,
        1,
        facet(0, "(+,+,+,-)"),
        facet(0, "(+,-,+,+)"),
        "m1->b;m2->c;b->d;c->a;a->n1;d->n2",
    ))
}

fn s() -> ConstructionScript {
    ConstructionScript::new(2)
        .named("S")
        .pair_color(Scope::Copy(0), Some(1), Color::Green, Isometry::identity())
}

fn with_d_cusps(s: ConstructionScript) -> ConstructionScript {
    s.cusp("a1", &["(+,+,0,0)"])
        .cusp("a2", &["(+,-,0,0)"])
        .cusp("d1", &["(0,0,+,+)"])
        .cusp("d2", &["(0,0,+,-)"])
        .cusp("b1", &["(+,0,+,0)"])
        .cusp("b2", &["(+,0,-,0)"])
        .cusp("e1", &["(0,+,0,+)"])
        .cusp("e2", &["(0,+,0,-)"])
        .cusp("c1", &["(+,0,0,+)"])
        .cusp("c2", &["(+,0,0,-)"])
        .cusp("f1", &["(0,+,+,0)"])
        .cusp("f2", &["(0,+,-,0)"])
}

fn d() -> ConstructionScript {
    let mut s = s().pair_color(Scope::All, None, Color::Red, Isometry::antipodal());
    s.name = Some("D".into());
    with_d_cusps(s)
}

fn h() -> ConstructionScript {
    let mut s = d();
    s.name = Some("H".into());
    s.stage(glue(
        1,
        3,
        facet(0, "(+,+,-,+)"),
        facet(0, "(-,+,+,+)"),
        "a1->b2;d2->e1;b2->f1;e1->c2;f2->a2;c1->d1",
    ))
    .stage(glue(
        0,
        2,
        facet(0, "(+,+,+,-)"),
        facet(0, "(+,-,+,+)"),
        "a1->c1;d2->f2;c2->e2;f1->b1;b1->a2;e2->d1",
    ))
}
