//! Restricted census: uniform per-color pairings followed by a seed search
//! over gluings of the leftover boundary components.
//!
//! Scheme files:
//!
//! ```text
//! copies 2
//! mirrored            # green facets of copy 0 pair with copy 1
//! green identity
//! red antipodal H     # one candidate per listed map
//! glue                # pair leftover boundary components by seed search
//! ```
//!
//! Map candidates are `identity`, `antipodal`, `H` or any map spec.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::assembly::{
    boundary_strata, build_quotient, compile_script, insert_boundary_isomorphism, quotient_first_homology,
    ridge_check, ridge_summary, BoundaryGlue, ConstructionScript, CuspRef, FacetRef, Pairing, PairingTable,
    QuotientComplex, Scope, Stage,
};
use crate::boundary::{boundary_complex, extend_isometry, octahedron_bijections, OctComplex, OctMap, SeedMap};
use crate::isometry::{symmetry_group, Isometry};
use crate::pipeline::{cusp_reports, signature_of, Signature};
use crate::polytope::{canonical_cusp_label, cell24, CellRef, Color};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct SchemeError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusScheme {
    pub copies: usize,
    pub mirrored: bool,
    /// Candidate maps for green, red and blue; a color with no candidates
    /// is left unpaired.
    pub candidates: [Vec<Isometry>; 3],
    pub glue: bool,
}

const COLORS: [Color; 3] = [Color::Green, Color::Red, Color::Blue];

pub fn named_map(name: &str) -> Result<Isometry, String> {
    match name {
        "identity" => Ok(Isometry::identity()),
        "antipodal" => Ok(Isometry::antipodal()),
        "H" => Ok(Isometry::flip_xy()),
        spec => Isometry::from_mapspec(spec).map_err(|e| e.to_string()),
    }
}

pub fn parse_scheme(text: &str) -> Result<CensusScheme, SchemeError> {
    let mut scheme = CensusScheme { copies: 0, mirrored: false, candidates: Default::default(), glue: false };
    for (ln, raw) in text.lines().enumerate() {
        let err = |message: String| SchemeError { line: ln + 1, message };
        let mut words = raw.split('#').next().unwrap_or("").split_whitespace();
        let Some(head) = words.next() else { continue };
        let rest: Vec<&str> = words.collect();
        match head {
            "copies" => {
                scheme.copies = match rest[..] {
                    [n] => n.parse().map_err(|_| err(format!("invalid copy count `{n}`")))?,
                    _ => return Err(err("expected `copies N`".into())),
                };
                if !(1..=2).contains(&scheme.copies) {
                    return Err(err("census schemes use 1 or 2 copies".into()));
                }
            }
            "mirrored" | "glue" if !rest.is_empty() => return Err(err(format!("`{head}` takes no arguments"))),
            "mirrored" => scheme.mirrored = true,
            "glue" => scheme.glue = true,
            color => {
                let c: Color = color.parse().map_err(|_| err(format!("unknown directive `{color}`")))?;
                let slot = COLORS.iter().position(|&k| k == c).expect("three colors");
                for name in rest {
                    scheme.candidates[slot].push(named_map(name).map_err(&err)?);
                }
            }
        }
    }
    if scheme.copies == 0 {
        return Err(SchemeError { line: 1, message: "missing `copies` line".into() });
    }
    if scheme.mirrored && scheme.copies != 2 {
        return Err(SchemeError { line: 1, message: "`mirrored` needs 2 copies".into() });
    }
    Ok(scheme)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    /// Position in the enumeration order of the first assignment with this
    /// signature.
    pub index: usize,
    #[serde(skip)]
    pub script: ConstructionScript,
    #[serde(skip)]
    pub table: PairingTable,
    pub signature: Signature,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusResult {
    /// Complete assignments enumerated, after the cap.
    pub enumerated: usize,
    pub capped: bool,
    /// Assignments giving closed manifolds with classified cusps.
    pub manifolds: usize,
    pub entries: Vec<CensusEntry>,
}

/// Color stages with their pairing table and leftover boundary.
struct Base {
    script: ConstructionScript,
    table: PairingTable,
    components: Vec<OctComplex>,
}

/// One complete assignment: a base and, per matched pair of boundary
/// components `(x, y)`, the isomorphism `x → y` glued along.
struct Assignment {
    base: usize,
    glues: Vec<(usize, usize, OctMap)>,
}

fn color_scripts(scheme: &CensusScheme) -> Vec<ConstructionScript> {
    let listed: Vec<usize> = (0..3).filter(|&i| !scheme.candidates[i].is_empty()).collect();
    let mut out = vec![ConstructionScript::new(scheme.copies)];
    for &slot in &listed {
        out = out
            .into_iter()
            .flat_map(|s| {
                scheme.candidates[slot].iter().map(move |m| {
                    let (scope, to) = if slot == 0 && scheme.mirrored { (Scope::Copy(0), Some(1)) } else { (Scope::All, None) };
                    s.clone().pair_color(scope, to, COLORS[slot], *m)
                })
            })
            .collect();
    }
    out
}

fn perfect_matchings(items: &[usize]) -> Vec<Vec<(usize, usize)>> {
    match items {
        [] => vec![Vec::new()],
        [first, rest @ ..] => (0..rest.len())
            .flat_map(|i| {
                let mut others = rest.to_vec();
                let partner = others.remove(i);
                perfect_matchings(&others).into_iter().map(move |mut m| {
                    m.insert(0, (*first, partner));
                    m
                })
            })
            .collect(),
    }
}

/// Every isomorphism `x → y`, one per seed on octahedron 0 of `x`, in seed
/// order.
fn isomorphisms(x: &OctComplex, y: &OctComplex) -> Vec<OctMap> {
    (0..y.len())
        .flat_map(|t| {
            octahedron_bijections(&x.octahedra()[0], &y.octahedra()[t])
                .into_iter()
                .filter_map(move |vertices| extend_isometry(x, y, &SeedMap { source: 0, target: t, vertices }).ok())
        })
        .collect()
}

/// A symmetry of a base, acting on its boundary components: component `k`
/// goes to `image[k]` by `maps[k]`.
struct ComponentAction {
    image: Vec<usize>,
    maps: Vec<OctMap>,
}

/// Actions of the isometries `(g, copy permutation)` that carry the base
/// pairing table onto itself. Gluings related by such a symmetry give
/// isometric manifolds.
fn base_symmetries(base: &Base) -> Vec<ComponentAction> {
    let copy_perms: Vec<Vec<usize>> = match base.table.copies() {
        2 => vec![vec![0, 1], vec![1, 0]],
        n => vec![(0..n).collect()],
    };
    let mut locate = HashMap::new();
    for (k, oc) in base.components.iter().enumerate() {
        for (i, oct) in oc.octahedra().iter().enumerate() {
            locate.insert(oct.facet, (k, i));
        }
    }
    let facet_image = |g: &Isometry, pi: &[usize], f: FacetRef| FacetRef {
        copy: pi[f.copy],
        facet: g.cell_image(CellRef::facet(f.facet)).index,
    };
    let mut actions = Vec::new();
    for g in symmetry_group() {
        let g_inv = g.inverse();
        for pi in &copy_perms {
            let preserved = base.table.pairings().iter().all(|p| {
                let source = facet_image(&g, pi, p.source);
                let image = Pairing::new(source, facet_image(&g, pi, p.target), g.compose(&p.map).compose(&g_inv));
                base.table.partner(source) == Some(&image)
            });
            if !preserved {
                continue;
            }
            let mut image = Vec::new();
            let mut maps = Vec::new();
            for oc in &base.components {
                let mut targets = Vec::new();
                let mut local = Vec::new();
                let mut component = None;
                for oct in oc.octahedra() {
                    let (k, i) = locate[&facet_image(&g, pi, oct.facet)];
                    component = Some(k);
                    let target = &base.components[k].octahedra()[i];
                    targets.push(i);
                    local.push(std::array::from_fn(|v| {
                        target.local_vertex(g.vertex_image(oct.vertices[v])).expect("symmetry maps octahedra onto octahedra")
                    }));
                }
                image.push(component.expect("components are nonempty"));
                maps.push(OctMap { targets, maps: local });
            }
            actions.push(ComponentAction { image, maps });
        }
    }
    actions
}

/// A gluing as `(matching index, isomorphism index per matched pair)`.
type GluingKey = (usize, Vec<usize>);

struct GluingSpace {
    matchings: Vec<Vec<(usize, usize)>>,
    /// Isomorphisms for each ordered pair `(x, y)` with `x < y`.
    isos: HashMap<(usize, usize), Vec<OctMap>>,
}

impl GluingSpace {
    fn new(components: &[OctComplex]) -> Self {
        let ids: Vec<usize> = (0..components.len()).collect();
        let matchings = perfect_matchings(&ids);
        let mut isos = HashMap::new();
        for x in 0..components.len() {
            for y in x + 1..components.len() {
                isos.insert((x, y), isomorphisms(&components[x], &components[y]));
            }
        }
        GluingSpace { matchings, isos }
    }

    /// The key of the gluing transported by `action`.
    fn transport(&self, key: &GluingKey, action: &ComponentAction) -> GluingKey {
        let mut glues: Vec<(usize, usize, OctMap)> = self.matchings[key.0]
            .iter()
            .zip(&key.1)
            .map(|(&(x, y), &i)| {
                let phi = &self.isos[&(x, y)][i];
                let moved = action.maps[y].compose(&phi.compose(&action.maps[x].inverse()));
                let (x2, y2) = (action.image[x], action.image[y]);
                if x2 < y2 {
                    (x2, y2, moved)
                } else {
                    (y2, x2, moved.inverse())
                }
            })
            .collect();
        glues.sort_by_key(|g| g.0);
        let pairs: Vec<(usize, usize)> = glues.iter().map(|g| (g.0, g.1)).collect();
        let m = self.matchings.iter().position(|m| *m == pairs).expect("matchings are closed under symmetries");
        let idx = glues
            .iter()
            .map(|(x, y, phi)| self.isos[&(*x, *y)].iter().position(|p| p == phi).expect("isomorphism lists are complete"))
            .collect();
        (m, idx)
    }
}

/// Enumerates assignments in a fixed order, one per orbit of the base's
/// symmetries, verifies them in parallel and keeps the first table of each
/// signature. At most `cap` assignments are enumerated.
pub fn census_enumerate(scheme: &CensusScheme, cap: Option<usize>) -> CensusResult {
    if scheme.candidates.iter().all(Vec::is_empty) {
        return CensusResult { enumerated: 0, capped: false, manifolds: 0, entries: Vec::new() };
    }
    let bases: Vec<Base> = color_scripts(scheme)
        .into_iter()
        .filter_map(|script| {
            let table = compile_script(&script).ok()?;
            let qc = build_quotient(&table);
            if !ridge_summary(&ridge_check(&qc)).ok() {
                return None;
            }
            let components = (0..boundary_strata(&qc).len())
                .map(|c| boundary_complex(&qc, c))
                .collect::<Result<Vec<_>, _>>()
                .ok()?;
            Some(Base { script, table, components })
        })
        .collect();

    let cap = cap.unwrap_or(usize::MAX);
    let mut assignments = Vec::new();
    let mut capped = false;
    'bases: for (b, base) in bases.iter().enumerate() {
        if base.components.is_empty() {
            if assignments.len() == cap {
                capped = true;
                break;
            }
            assignments.push(Assignment { base: b, glues: Vec::new() });
            continue;
        }
        if !scheme.glue || base.components.len() % 2 == 1 {
            continue;
        }
        let space = GluingSpace::new(&base.components);
        let actions = base_symmetries(base);
        let mut seen: HashSet<GluingKey> = HashSet::new();
        for (m, matching) in space.matchings.iter().enumerate() {
            let sizes: Vec<usize> = matching.iter().map(|xy| space.isos[xy].len()).collect();
            if sizes.contains(&0) {
                continue;
            }
            let mut odometer = vec![0usize; matching.len()];
            loop {
                let key = (m, odometer.clone());
                if !seen.contains(&key) {
                    if assignments.len() == cap {
                        capped = true;
                        break 'bases;
                    }
                    for action in &actions {
                        seen.insert(space.transport(&key, action));
                    }
                    seen.insert(key);
                    let glues =
                        matching.iter().zip(&odometer).map(|(&(x, y), &i)| (x, y, space.isos[&(x, y)][i].clone())).collect();
                    assignments.push(Assignment { base: b, glues });
                }
                let mut g = matching.len();
                let exhausted = loop {
                    if g == 0 {
                        break true;
                    }
                    g -= 1;
                    odometer[g] += 1;
                    if odometer[g] < sizes[g] {
                        break false;
                    }
                    odometer[g] = 0;
                };
                if exhausted {
                    break;
                }
            }
        }
    }

    let verified: Vec<Option<(ConstructionScript, PairingTable, Signature)>> =
        assignments.par_iter().map(|a| verify_assignment(&bases[a.base], a)).collect();
    let manifolds = verified.iter().flatten().count();
    let mut entries: Vec<CensusEntry> = Vec::new();
    for (index, v) in verified.into_iter().enumerate() {
        if let Some((script, table, signature)) = v {
            if entries.iter().all(|e| e.signature != signature) {
                entries.push(CensusEntry { index, script, table, signature });
            }
        }
    }
    CensusResult { enumerated: assignments.len(), capped, manifolds, entries }
}

fn verify_assignment(base: &Base, a: &Assignment) -> Option<(ConstructionScript, PairingTable, Signature)> {
    let mut table = base.table.clone();
    let mut script = base.script.clone();
    for (x, y, iso) in &a.glues {
        let (ox, oy) = (&base.components[*x], &base.components[*y]);
        insert_boundary_isomorphism(&mut table, ox, oy, iso).ok()?;
        script.stages.push(Stage::BoundaryGlue(seed_stage(ox, oy, *x, *y, iso)));
    }
    let qc = build_quotient(&table);
    if !qc.is_closed() || !ridge_summary(&ridge_check(&qc)).ok() {
        return None;
    }
    let signature = manifold_signature(&qc)?;
    Some((script, table, signature))
}

/// The signature of a closed construction whose cusps all classify.
pub fn manifold_signature(qc: &QuotientComplex) -> Option<Signature> {
    let cusps = cusp_reports(qc);
    if cusps.iter().any(|c| !c.flat_structure_ok) {
        return None;
    }
    signature_of(qc, &cusps, quotient_first_homology(qc))
}

fn seed_stage(x: &OctComplex, y: &OctComplex, src: usize, dst: usize, iso: &OctMap) -> BoundaryGlue {
    let model = cell24();
    let (ox, oy) = (&x.octahedra()[0], &y.octahedra()[iso.targets[0]]);
    let map = &iso.maps[0];
    let label = |v: usize| CuspRef::Label(canonical_cusp_label(model.vertex(v)));
    BoundaryGlue {
        src,
        dst,
        seed_src: ox.facet,
        seed_dst: oy.facet,
        vertices: (0..6).map(|k| (label(ox.vertices[k]), label(oy.vertices[map[k] as usize]))).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_gluings_share_signatures() {
        let scheme = parse_scheme("copies 1\ngreen identity antipodal H\nred identity antipodal H\nglue\n").unwrap();
        let base = color_scripts(&scheme)
            .into_iter()
            .find_map(|script| {
                let table = compile_script(&script).ok()?;
                let qc = build_quotient(&table);
                let components: Vec<OctComplex> =
                    (0..boundary_strata(&qc).len()).map(|c| boundary_complex(&qc, c).unwrap()).collect();
                (components.len() == 2).then_some(Base { script, table, components })
            })
            .expect("a base with two boundary components");
        let space = GluingSpace::new(&base.components);
        let actions = base_symmetries(&base);
        assert!(actions.len() > 1);
        let n = space.isos[&(0, 1)].len();
        let signatures: Vec<Option<Signature>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let a = Assignment { base: 0, glues: vec![(0, 1, space.isos[&(0, 1)][i].clone())] };
                verify_assignment(&base, &a).map(|v| v.2)
            })
            .collect();
        let mut orbits = HashSet::new();
        for i in 0..n {
            let mut orbit = Vec::new();
            for action in &actions {
                let (m, idx) = space.transport(&(0, vec![i]), action);
                assert_eq!(m, 0);
                assert_eq!(signatures[idx[0]], signatures[i]);
                orbit.push(idx[0]);
            }
            orbit.sort_unstable();
            orbit.dedup();
            orbits.insert(orbit);
        }
        assert!(orbits.len() < n);
    }
}
