//! Boundary 3-strata as complexes of ideal octahedra glued along triangles.

use std::collections::{BTreeSet, VecDeque};

use petgraph::unionfind::UnionFind;
use serde::Serialize;
use thiserror::Error;

use crate::assembly::{boundary_strata, FacetRef, QuotientComplex};
use crate::isometry::Isometry;
use crate::polytope::{cell24, CellRef, Color};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundaryError {
    #[error("the construction has no boundary")]
    NoBoundary,
    #[error("boundary component {0} does not exist")]
    InvalidComponent(usize),
    #[error("seed does not extend: {0}")]
    SeedDoesNotExtend(String),
    #[error("map does not preserve the boundary component: {0}")]
    NotBoundaryPreserving(String),
}

/// Local vertex correspondence between two octahedra: vertex `k` of the
/// source goes to vertex `map[k]` of the target.
pub type VertexBijection = [u8; 6];

const IDENTITY6: VertexBijection = [0, 1, 2, 3, 4, 5];

fn compose6(outer: &VertexBijection, inner: &VertexBijection) -> VertexBijection {
    std::array::from_fn(|k| outer[inner[k] as usize])
}

fn invert6(m: &VertexBijection) -> VertexBijection {
    let mut inv = [0u8; 6];
    for (k, &v) in m.iter().enumerate() {
        inv[v as usize] = k as u8;
    }
    inv
}

/// One blue facet viewed as an ideal octahedron. Local vertex `k` is
/// `vertices[k]` in the 24-cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Octahedron {
    pub facet: FacetRef,
    pub vertices: [usize; 6],
    pub opposite: [u8; 6],
    /// Local vertex triples, sorted.
    pub triangles: [[u8; 3]; 8],
    /// Checkerboard color of each triangle: the color of the facet across it.
    pub triangle_colors: [Color; 8],
}

impl Octahedron {
    pub fn new(facet: FacetRef) -> Self {
        let model = cell24();
        let vertices = model.facet(facet.facet).vertices;
        let local = |v: usize| vertices.iter().position(|&w| w == v).expect("vertex of facet") as u8;
        let opposite = std::array::from_fn(|k| local(model.opposite_in_facet(facet.facet, vertices[k])));
        let tris = model.facet_triangles(facet.facet);
        let triangles = std::array::from_fn(|i| {
            let mut t = model.triangles()[tris[i]].map(local);
            t.sort_unstable();
            t
        });
        let triangle_colors = std::array::from_fn(|i| model.triangle_color_in(tris[i], facet.facet));
        Octahedron { facet, vertices, opposite, triangles, triangle_colors }
    }

    pub fn local_vertex(&self, v: usize) -> Option<u8> {
        self.vertices.iter().position(|&w| w == v).map(|k| k as u8)
    }

    pub fn triangle_index(&self, verts: [u8; 3]) -> Option<usize> {
        let mut t = verts;
        t.sort_unstable();
        self.triangles.iter().position(|&s| s == t)
    }

    /// The two local triangles containing edge `{a, b}`.
    fn edge_triangles(&self, a: u8, b: u8) -> Vec<usize> {
        (0..8).filter(|&i| self.triangles[i].contains(&a) && self.triangles[i].contains(&b)).collect()
    }

    /// Whether `m` carries this octahedron's opposite pairs onto those of
    /// `target`.
    pub fn preserves_structure(&self, target: &Octahedron, m: &VertexBijection) -> bool {
        let mut seen = [false; 6];
        m.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true))
            && (0..6).all(|k| target.opposite[m[k] as usize] == m[self.opposite[k] as usize])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OctGlue {
    pub target: usize,
    pub target_triangle: usize,
    pub map: VertexBijection,
}

#[derive(Clone, Debug)]
pub struct OctComplex {
    octahedra: Vec<Octahedron>,
    glue: Vec<[Option<OctGlue>; 8]>,
}

pub fn boundary_complex(qc: &QuotientComplex, component: usize) -> Result<OctComplex, BoundaryError> {
    let strata = boundary_strata(qc);
    if strata.is_empty() {
        return Err(BoundaryError::NoBoundary);
    }
    let comp = strata.get(component).ok_or(BoundaryError::InvalidComponent(component))?;
    let octahedra: Vec<Octahedron> = comp.facets.iter().map(|&f| Octahedron::new(f)).collect();
    let mut oc = OctComplex { glue: vec![[None; 8]; octahedra.len()], octahedra };
    let model = cell24();
    for g in &comp.gluings {
        let o = oc.octahedron_index(g.from).expect("gluing inside component");
        let p = oc.octahedron_index(g.to).expect("gluing inside component");
        let (src, dst) = (&oc.octahedra[o], &oc.octahedra[p]);
        // The chain map is only guaranteed to carry the triangle across; the
        // rest of the bijection follows from opposite vertices.
        let mut map = [u8::MAX; 6];
        for &v in &model.triangles()[g.from_triangle] {
            let a = src.local_vertex(v).unwrap();
            let b = dst.local_vertex(g.map.vertex_image(v)).expect("chain map carries triangle to triangle");
            map[a as usize] = b;
            map[src.opposite[a as usize] as usize] = dst.opposite[b as usize];
        }
        let k = src.triangle_index(model.triangles()[g.from_triangle].map(|v| src.local_vertex(v).unwrap())).unwrap();
        let kt = dst.triangle_index(model.triangles()[g.to_triangle].map(|v| dst.local_vertex(v).unwrap())).unwrap();
        oc.glue[o][k] = Some(OctGlue { target: p, target_triangle: kt, map });
    }
    Ok(oc)
}

impl OctComplex {
    /// A complex from explicit gluings `(octahedron, local triangle,
    /// target octahedron, vertex bijection)`; each is added with its inverse.
    pub fn from_gluings(facets: &[FacetRef], gluings: &[(usize, usize, usize, VertexBijection)]) -> Self {
        let octahedra: Vec<Octahedron> = facets.iter().map(|&f| Octahedron::new(f)).collect();
        let mut oc = OctComplex { glue: vec![[None; 8]; octahedra.len()], octahedra };
        for &(o, k, p, map) in gluings {
            let image = oc.octahedra[o].triangles[k].map(|v| map[v as usize]);
            let kt = oc.octahedra[p].triangle_index(image).expect("map sends triangles to triangles");
            oc.glue[o][k] = Some(OctGlue { target: p, target_triangle: kt, map });
            oc.glue[p][kt] = Some(OctGlue { target: o, target_triangle: k, map: invert6(&map) });
        }
        oc
    }

    pub fn octahedra(&self) -> &[Octahedron] {
        &self.octahedra
    }

    pub fn len(&self) -> usize {
        self.octahedra.len()
    }

    pub fn is_empty(&self) -> bool {
        self.octahedra.is_empty()
    }

    pub fn glue(&self, oct: usize, triangle: usize) -> Option<&OctGlue> {
        self.glue[oct][triangle].as_ref()
    }

    pub fn octahedron_index(&self, facet: FacetRef) -> Option<usize> {
        self.octahedra.iter().position(|o| o.facet == facet)
    }

    /// Ideal-vertex classes as lists of `(octahedron, local vertex)`.
    pub fn vertex_classes(&self) -> Vec<Vec<(usize, u8)>> {
        let n = self.len();
        let mut uf = UnionFind::new(6 * n);
        for o in 0..n {
            for k in 0..8 {
                if let Some(g) = &self.glue[o][k] {
                    for &v in &self.octahedra[o].triangles[k] {
                        uf.union(6 * o + v as usize, 6 * g.target + g.map[v as usize] as usize);
                    }
                }
            }
        }
        let (ids, count) = crate::assembly::number_classes(&uf, 6 * n);
        let mut classes = vec![Vec::new(); count];
        for (i, id) in ids.into_iter().enumerate() {
            classes[id].push((i / 6, (i % 6) as u8));
        }
        classes
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CuspLink {
    pub squares: usize,
    pub euler_characteristic: i64,
    pub closed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OctahedralReport {
    pub octahedra: usize,
    pub unglued_triangles: usize,
    pub involutive: bool,
    pub checkerboard: bool,
    pub edge_classes: usize,
    /// Edge classes without exactly four corners and trivial holonomy.
    pub bad_edge_classes: usize,
    pub cusps: Vec<CuspLink>,
}

impl OctahedralReport {
    pub fn ok(&self) -> bool {
        self.unglued_triangles == 0
            && self.involutive
            && self.checkerboard
            && self.bad_edge_classes == 0
            && self.cusps.iter().all(|c| c.closed && c.euler_characteristic == 0)
    }
}

pub fn verify_octahedral(oc: &OctComplex) -> OctahedralReport {
    let n = oc.len();
    let mut unglued = 0;
    let mut involutive = true;
    for o in 0..n {
        for k in 0..8 {
            match &oc.glue[o][k] {
                None => unglued += 1,
                Some(g) => {
                    let back = oc.glue[g.target][g.target_triangle];
                    involutive &= back
                        == Some(OctGlue { target: o, target_triangle: k, map: invert6(&g.map) });
                }
            }
        }
    }
    let checkerboard = oc.octahedra.iter().all(|oct| {
        (0..8).all(|i| {
            (0..8).all(|j| {
                let shared = oct.triangles[i].iter().filter(|v| oct.triangles[j].contains(v)).count();
                shared != 2 || oct.triangle_colors[i] != oct.triangle_colors[j]
            })
        })
    });

    let (edge_classes, bad_edge_classes) = edge_cycles(oc);
    OctahedralReport {
        octahedra: n,
        unglued_triangles: unglued,
        involutive,
        checkerboard,
        edge_classes,
        bad_edge_classes,
        cusps: cusp_links(oc),
    }
}

fn edge_cycles(oc: &OctComplex) -> (usize, usize) {
    let n = oc.len();
    let limit = 12 * n + 1;
    let mut seen = BTreeSet::new();
    let (mut classes, mut bad) = (0, 0);
    for o in 0..n {
        let oct = &oc.octahedra[o];
        for a in 0..6u8 {
            for b in a + 1..6u8 {
                if oct.opposite[a as usize] == b || seen.contains(&(o, a, b)) {
                    continue;
                }
                classes += 1;
                let start = (o, a, b, oct.edge_triangles(a, b)[0]);
                let mut state = start;
                let mut composite = IDENTITY6;
                let mut length = 0;
                let closed = loop {
                    seen.insert((state.0, state.1, state.2));
                    length += 1;
                    let Some(g) = oc.glue[state.0][state.3] else { break false };
                    let (x, y) = (g.map[state.1 as usize], g.map[state.2 as usize]);
                    let (x, y) = (x.min(y), x.max(y));
                    let tris = oc.octahedra[g.target].edge_triangles(x, y);
                    let exit = if tris[0] == g.target_triangle { tris[1] } else { tris[0] };
                    composite = compose6(&g.map, &composite);
                    state = (g.target, x, y, exit);
                    if state == start {
                        break true;
                    }
                    if length > limit {
                        break false;
                    }
                };
                if !(closed && length == 4 && composite == IDENTITY6) {
                    bad += 1;
                }
            }
        }
    }
    (classes, bad)
}

fn cusp_links(oc: &OctComplex) -> Vec<CuspLink> {
    let n = oc.len();
    let classes = oc.vertex_classes();
    let mut class_of = vec![0; 6 * n];
    for (c, members) in classes.iter().enumerate() {
        for &(o, v) in members {
            class_of[6 * o + v as usize] = c;
        }
    }
    // Link vertices are (octahedron, vertex, neighbor) corners.
    let idx = |o: usize, v: u8, w: u8| (6 * o + v as usize) * 6 + w as usize;
    let mut uf = UnionFind::new(36 * n);
    let mut links: Vec<CuspLink> =
        classes.iter().map(|m| CuspLink { squares: m.len(), euler_characteristic: 0, closed: true }).collect();
    let mut half_edges = vec![0i64; classes.len()];
    let mut free_edges = vec![0i64; classes.len()];
    for o in 0..n {
        let oct = &oc.octahedra[o];
        for k in 0..8 {
            let t = oct.triangles[k];
            for &v in &t {
                let c = class_of[6 * o + v as usize];
                match &oc.glue[o][k] {
                    Some(g) => {
                        half_edges[c] += 1;
                        for &w in t.iter().filter(|&&w| w != v) {
                            uf.union(idx(o, v, w), idx(g.target, g.map[v as usize], g.map[w as usize]));
                        }
                    }
                    None => {
                        free_edges[c] += 1;
                        links[c].closed = false;
                    }
                }
            }
        }
    }
    let mut link_vertices = vec![BTreeSet::new(); classes.len()];
    for o in 0..n {
        let oct = &oc.octahedra[o];
        for v in 0..6u8 {
            for w in 0..6u8 {
                if w != v && oct.opposite[v as usize] != w {
                    link_vertices[class_of[6 * o + v as usize]].insert(uf.find(idx(o, v, w)));
                }
            }
        }
    }
    for (c, link) in links.iter_mut().enumerate() {
        let edges = half_edges[c] / 2 + free_edges[c];
        link.euler_characteristic = link_vertices[c].len() as i64 - edges + link.squares as i64;
    }
    links
}

pub fn cusp_count3(oc: &OctComplex) -> usize {
    oc.vertex_classes().len()
}

/// A map of octahedral complexes: octahedron `i` goes to `targets[i]` by
/// the local bijection `maps[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OctMap {
    pub targets: Vec<usize>,
    pub maps: Vec<VertexBijection>,
}

/// Combinatorial automorphism of an octahedral complex.
pub type Automorphism3 = OctMap;

impl OctMap {
    pub fn identity(n: usize) -> Self {
        OctMap { targets: (0..n).collect(), maps: vec![IDENTITY6; n] }
    }

    pub fn is_identity(&self) -> bool {
        self.targets.iter().enumerate().all(|(i, &t)| i == t) && self.maps.iter().all(|m| *m == IDENTITY6)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &OctMap) -> OctMap {
        OctMap {
            targets: inner.targets.iter().map(|&t| self.targets[t]).collect(),
            maps: (0..inner.targets.len())
                .map(|i| compose6(&self.maps[inner.targets[i]], &inner.maps[i]))
                .collect(),
        }
    }

    pub fn inverse(&self) -> OctMap {
        let n = self.targets.len();
        let mut targets = vec![0; n];
        let mut maps = vec![IDENTITY6; n];
        for i in 0..n {
            targets[self.targets[i]] = i;
            maps[self.targets[i]] = invert6(&self.maps[i]);
        }
        OctMap { targets, maps }
    }
}

/// Whether `f` is an isomorphism `x → y` commuting with every gluing.
pub fn is_isomorphism(x: &OctComplex, y: &OctComplex, f: &OctMap) -> bool {
    if x.len() != y.len() || f.targets.len() != x.len() {
        return false;
    }
    let distinct: BTreeSet<_> = f.targets.iter().collect();
    if distinct.len() != x.len() {
        return false;
    }
    (0..x.len()).all(|o| {
        let p = f.targets[o];
        let beta = &f.maps[o];
        x.octahedra[o].preserves_structure(&y.octahedra[p], beta)
            && (0..8).all(|k| {
                let kp = y.octahedra[p].triangle_index(x.octahedra[o].triangles[k].map(|v| beta[v as usize]));
                match (x.glue[o][k], kp.and_then(|kp| y.glue[p][kp])) {
                    (None, None) => kp.is_some(),
                    (Some(g), Some(h)) => {
                        f.targets[g.target] == h.target
                            && f.maps[g.target] == compose6(&compose6(&h.map, beta), &invert6(&g.map))
                    }
                    _ => false,
                }
            })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeedMap {
    pub source: usize,
    pub target: usize,
    pub vertices: VertexBijection,
}

/// Propagates a seed across triangle gluings. The result, if any, is the
/// unique isomorphism extending the seed.
pub fn extend_isometry(x: &OctComplex, y: &OctComplex, seed: &SeedMap) -> Result<OctMap, BoundaryError> {
    let fail = |msg: String| Err(BoundaryError::SeedDoesNotExtend(msg));
    if seed.source >= x.len() || seed.target >= y.len() {
        return fail("seed octahedron out of range".into());
    }
    if !x.octahedra[seed.source].preserves_structure(&y.octahedra[seed.target], &seed.vertices) {
        return fail("vertex table does not preserve octahedron adjacency".into());
    }
    if x.len() != y.len() {
        return fail(format!("{} octahedra cannot map onto {}", x.len(), y.len()));
    }
    let mut assigned: Vec<Option<(usize, VertexBijection)>> = vec![None; x.len()];
    assigned[seed.source] = Some((seed.target, seed.vertices));
    let mut queue = VecDeque::from([seed.source]);
    while let Some(o) = queue.pop_front() {
        let (p, beta) = assigned[o].unwrap();
        for k in 0..8 {
            let kp = y.octahedra[p]
                .triangle_index(x.octahedra[o].triangles[k].map(|v| beta[v as usize]))
                .expect("structure-preserving maps send triangles to triangles");
            let (g, h) = match (x.glue[o][k], y.glue[p][kp]) {
                (Some(g), Some(h)) => (g, h),
                (None, None) => continue,
                _ => return fail(format!("triangle {k} of octahedron {o} is glued on one side only")),
            };
            let candidate = (h.target, compose6(&compose6(&h.map, &beta), &invert6(&g.map)));
            match assigned[g.target] {
                None => {
                    assigned[g.target] = Some(candidate);
                    queue.push_back(g.target);
                }
                Some(existing) if existing == candidate => {}
                Some(_) => return fail(format!("contradiction at octahedron {}", g.target)),
            }
        }
    }
    if assigned.iter().any(Option::is_none) {
        return fail("the source complex is disconnected".into());
    }
    let f = OctMap {
        targets: assigned.iter().map(|a| a.unwrap().0).collect(),
        maps: assigned.iter().map(|a| a.unwrap().1).collect(),
    };
    if !is_isomorphism(x, y, &f) {
        return fail("propagated map is not a bijection commuting with gluings".into());
    }
    Ok(f)
}

/// All structure-preserving bijections between two octahedra.
pub fn octahedron_bijections(from: &Octahedron, to: &Octahedron) -> Vec<VertexBijection> {
    let mut out = Vec::new();
    let mut perm = IDENTITY6;
    permute(&mut perm, 0, &mut |p| {
        if from.preserves_structure(to, p) {
            out.push(*p);
        }
    });
    out
}

fn permute(p: &mut VertexBijection, i: usize, f: &mut impl FnMut(&VertexBijection)) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, f);
        p.swap(i, j);
    }
}

/// Every automorphism, found by extending each seed from octahedron 0.
pub fn automorphism_group(oc: &OctComplex) -> Vec<Automorphism3> {
    if oc.is_empty() {
        return vec![OctMap::identity(0)];
    }
    let mut group: Vec<OctMap> = (0..oc.len())
        .flat_map(|t| {
            octahedron_bijections(&oc.octahedra[0], &oc.octahedra[t])
                .into_iter()
                .filter_map(move |vertices| extend_isometry(oc, oc, &SeedMap { source: 0, target: t, vertices }).ok())
        })
        .collect();
    group.sort();
    group.dedup();
    group
}

/// The automorphism of boundary component `component` induced by applying
/// `m` to every copy.
pub fn induced_boundary_automorphism(
    qc: &QuotientComplex,
    m: &Isometry,
    component: usize,
) -> Result<Automorphism3, BoundaryError> {
    let copies: Vec<usize> = (0..qc.copies()).collect();
    induced_automorphism_with_copies(qc, m, &copies, component)
}

/// As [`induced_boundary_automorphism`], but copy `c` is sent to copy
/// `copy_map[c]`.
pub fn induced_automorphism_with_copies(
    qc: &QuotientComplex,
    m: &Isometry,
    copy_map: &[usize],
    component: usize,
) -> Result<Automorphism3, BoundaryError> {
    let oc = boundary_complex(qc, component)?;
    let mut targets = Vec::new();
    let mut maps = Vec::new();
    for oct in oc.octahedra() {
        let image = FacetRef { copy: copy_map[oct.facet.copy], facet: m.cell_image(CellRef::facet(oct.facet.facet)).index };
        let t = oc
            .octahedron_index(image)
            .ok_or_else(|| BoundaryError::NotBoundaryPreserving(format!("{} leaves the component", oct.facet)))?;
        let target = &oc.octahedra()[t];
        targets.push(t);
        maps.push(std::array::from_fn(|k| target.local_vertex(m.vertex_image(oct.vertices[k])).unwrap()));
    }
    let f = OctMap { targets, maps };
    if !is_isomorphism(&oc, &oc, &f) {
        return Err(BoundaryError::NotBoundaryPreserving("map does not commute with the gluings".into()));
    }
    Ok(f)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactSequenceReport {
    pub group_order: usize,
    pub w_involution: bool,
    pub v_involution: bool,
    pub commute: bool,
    pub subgroup_order: usize,
    pub normal: bool,
    pub stabilizer_order: usize,
    /// Distinct maps induced on octahedron 0 by its stabilizer.
    pub stabilizer_image_order: usize,
    pub trivial_intersection: bool,
    pub closed_under_composition: bool,
}

impl ExactSequenceReport {
    pub fn ok(&self) -> bool {
        self.w_involution
            && self.v_involution
            && self.commute
            && self.subgroup_order == 4
            && self.normal
            && self.stabilizer_order == 48
            && self.stabilizer_image_order == 48
            && self.trivial_intersection
            && self.closed_under_composition
            && self.group_order == self.subgroup_order * self.stabilizer_order
    }
}

pub fn verify_exact_sequence(oc: &OctComplex, w: &Automorphism3, v: &Automorphism3) -> ExactSequenceReport {
    let group = automorphism_group(oc);
    let members: BTreeSet<&OctMap> = group.iter().collect();
    let closed_under_composition = group
        .iter()
        .all(|a| members.contains(&a.inverse()) && group.iter().all(|b| members.contains(&a.compose(b))));
    let id = OctMap::identity(oc.len());
    let mut sub: BTreeSet<OctMap> = BTreeSet::from([id.clone()]);
    loop {
        let next: BTreeSet<OctMap> =
            sub.iter().flat_map(|a| [a.clone(), w.compose(a), v.compose(a)]).collect();
        if next.len() == sub.len() {
            break;
        }
        sub = next;
    }
    let normal = group.iter().all(|g| {
        let gi = g.inverse();
        [w, v].iter().all(|x| sub.contains(&g.compose(x).compose(&gi)))
    });
    let stabilizer: Vec<&OctMap> = group.iter().filter(|a| a.targets.first() == Some(&0)).collect();
    let images: BTreeSet<VertexBijection> = stabilizer.iter().map(|a| a.maps[0]).collect();
    let trivial_intersection = stabilizer.iter().all(|a| a.is_identity() || !sub.contains(a));
    ExactSequenceReport {
        group_order: group.len(),
        w_involution: w.compose(w) == id,
        v_involution: v.compose(v) == id,
        commute: w.compose(v) == v.compose(w),
        subgroup_order: sub.len(),
        normal,
        stabilizer_order: stabilizer.len(),
        stabilizer_image_order: images.len(),
        trivial_intersection,
        closed_under_composition,
    }
}
