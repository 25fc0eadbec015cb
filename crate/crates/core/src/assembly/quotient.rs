use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use petgraph::unionfind::UnionFind;
use once_cell::sync::Lazy;
use serde::Serialize;

use crate::homology::{homology_groups, homology_up_to, order_complex_model, presented_first_homology, AbelianGroup, FlagModel, GluedComplex, Gluing, PosetTemplate};

use crate::isometry::Isometry;
use crate::polytope::{canonical_cusp_label, cell24, CellRef, CuspLabel};

use super::table::{FacetRef, Pairing, PairingTable};
use super::AssemblyError;

/// Copies of the 24-cell with the identifications of a pairing table.
///
/// Cells of dimension `d` in copy `c` are addressed by the flat index
/// `c * count(d) + index`; `orbit(d, copy, index)` gives the orbit id, with
/// orbits numbered in order of first appearance.
#[derive(Clone, Debug)]
pub struct QuotientComplex {
    table: PairingTable,
    orbits: [Vec<usize>; 4],
    orbit_counts: [usize; 4],
}

pub fn build_quotient(table: &PairingTable) -> QuotientComplex {
    let model = cell24();
    let copies = table.copies();
    let counts: [usize; 4] = std::array::from_fn(|d| model.cell_count(d as u8));
    let mut finds: [UnionFind<usize>; 4] = std::array::from_fn(|d| UnionFind::new(copies * counts[d]));
    for p in table.pairings() {
        for cell in model.closure(CellRef::facet(p.source.facet)) {
            let d = cell.dim as usize;
            let image = p.map.cell_image(cell);
            finds[d].union(p.source.copy * counts[d] + cell.index, p.target.copy * counts[d] + image.index);
        }
    }
    let mut orbit_counts = [0; 4];
    let orbits = std::array::from_fn(|d| {
        let (ids, n) = number_classes(&finds[d], copies * counts[d]);
        orbit_counts[d] = n;
        ids
    });
    QuotientComplex { table: table.clone(), orbits, orbit_counts }
}

/// Class ids in order of first appearance.
pub(crate) fn number_classes(uf: &UnionFind<usize>, n: usize) -> (Vec<usize>, usize) {
    let mut by_root = BTreeMap::new();
    let ids = (0..n)
        .map(|i| {
            let next = by_root.len();
            *by_root.entry(uf.find(i)).or_insert(next)
        })
        .collect();
    (ids, by_root.len())
}

impl QuotientComplex {
    pub fn table(&self) -> &PairingTable {
        &self.table
    }

    pub fn copies(&self) -> usize {
        self.table.copies()
    }

    /// Number of orbits of `dim`-cells; 4-cells are never identified.
    pub fn orbit_count(&self, dim: usize) -> usize {
        if dim == 4 {
            self.copies()
        } else {
            self.orbit_counts[dim]
        }
    }

    pub fn orbit(&self, dim: usize, copy: usize, index: usize) -> usize {
        if dim == 4 {
            return copy;
        }
        self.orbits[dim][copy * cell24().cell_count(dim as u8) + index]
    }

    /// `(copy, index)` members of an orbit, in increasing order.
    pub fn members(&self, dim: usize, orbit: usize) -> Vec<(usize, usize)> {
        let n = cell24().cell_count(dim as u8);
        self.orbits[dim]
            .iter()
            .enumerate()
            .filter(|(_, &o)| o == orbit)
            .map(|(i, _)| (i / n, i % n))
            .collect()
    }

    pub fn unpaired(&self) -> Vec<FacetRef> {
        self.table.unpaired()
    }

    pub fn is_closed(&self) -> bool {
        self.unpaired().is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RidgeKind {
    /// The class closes up; `return_map` is the composite around the cycle.
    Cycle { return_map: Isometry },
    /// The class runs between two unpaired facets; `map` carries the first
    /// end triangle onto the last one.
    Chain { ends: [FacetRef; 2], triangles: [usize; 2], map: Isometry },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RidgeClassReport {
    pub orbit: usize,
    pub kind: RidgeKind,
    /// Polytope corners `(copy, triangle)` visited, in walk order.
    pub corners: Vec<(usize, usize)>,
    /// Facets crossed, in walk order.
    pub crossings: Vec<FacetRef>,
}

impl RidgeClassReport {
    pub fn length(&self) -> usize {
        self.corners.len()
    }

    pub fn is_cycle(&self) -> bool {
        matches!(self.kind, RidgeKind::Cycle { .. })
    }

    /// Interior cycles need four right angles and trivial holonomy; boundary
    /// chains need total angle π.
    pub fn ok(&self) -> bool {
        match &self.kind {
            RidgeKind::Cycle { return_map } => self.length() == 4 && return_map.is_identity(),
            RidgeKind::Chain { .. } => self.length() == 2,
        }
    }
}

struct Walk {
    corners: Vec<(usize, usize)>,
    crossings: Vec<FacetRef>,
    closed: bool,
    last: (usize, usize, usize),
    map: Isometry,
}

fn walk(table: &PairingTable, copy: usize, tri: usize, exit: usize, limit: usize) -> Walk {
    let model = cell24();
    let start = (copy, tri, exit);
    let mut state = start;
    let mut corners = vec![(copy, tri)];
    let mut crossings = Vec::new();
    let mut map = Isometry::identity();
    while let Some(p) = table.partner(FacetRef { copy: state.0, facet: state.2 }) {
        crossings.push(p.source);
        let t = p.map.cell_image(CellRef::new(2, state.1)).index;
        let next = (p.target.copy, t, model.other_facet(t, p.target.facet));
        map = p.map.compose(&map);
        if next == start {
            return Walk { corners, crossings, closed: true, last: state, map };
        }
        corners.push((next.0, next.1));
        state = next;
        if corners.len() > limit {
            break;
        }
    }
    Walk { corners, crossings, closed: false, last: state, map }
}

/// Classifies every triangle orbit as an interior cycle or a boundary chain.
pub fn ridge_check(qc: &QuotientComplex) -> Vec<RidgeClassReport> {
    let model = cell24();
    let table = qc.table();
    let n_tri = model.triangles().len();
    let limit = qc.copies() * n_tri + 1;
    let mut seen = vec![false; qc.copies() * n_tri];
    let mut reports = Vec::new();
    for copy in 0..qc.copies() {
        for tri in 0..n_tri {
            if seen[copy * n_tri + tri] {
                continue;
            }
            let [f0, _] = model.triangle_facets(tri);
            let first = walk(table, copy, tri, f0, limit);
            let report = if first.closed {
                RidgeClassReport {
                    orbit: qc.orbit(2, copy, tri),
                    kind: RidgeKind::Cycle { return_map: first.map },
                    corners: first.corners,
                    crossings: first.crossings,
                }
            } else {
                let (c, t, end_facet) = first.last;
                let full = walk(table, c, t, model.other_facet(t, end_facet), limit);
                let (c2, t2, f2) = full.last;
                RidgeClassReport {
                    orbit: qc.orbit(2, copy, tri),
                    kind: RidgeKind::Chain {
                        ends: [FacetRef { copy: c, facet: end_facet }, FacetRef { copy: c2, facet: f2 }],
                        triangles: [t, t2],
                        map: full.map,
                    },
                    corners: full.corners,
                    crossings: full.crossings,
                }
            };
            for &(c, t) in &report.corners {
                seen[c * n_tri + t] = true;
            }
            reports.push(report);
        }
    }
    reports
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RidgeSummary {
    pub classes: usize,
    pub interior_cycles: usize,
    pub boundary_chains: usize,
    pub corners: usize,
    pub failures: usize,
}

impl RidgeSummary {
    pub fn ok(&self) -> bool {
        self.failures == 0
    }
}

pub fn ridge_summary(reports: &[RidgeClassReport]) -> RidgeSummary {
    let mut s = RidgeSummary { classes: reports.len(), ..Default::default() };
    for r in reports {
        if r.is_cycle() {
            s.interior_cycles += 1;
        } else {
            s.boundary_chains += 1;
        }
        s.corners += r.length();
        if !r.ok() {
            s.failures += 1;
        }
    }
    s
}

/// Identification of a triangle of one unpaired facet with a triangle of
/// another, realized by `map`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangleGluing {
    pub from: FacetRef,
    pub from_triangle: usize,
    pub to: FacetRef,
    pub to_triangle: usize,
    pub map: Isometry,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryComponent {
    pub id: usize,
    pub facets: Vec<FacetRef>,
    /// Both directions of every identification.
    pub gluings: Vec<TriangleGluing>,
}

/// Components of the union of unpaired facets, glued along boundary chains;
/// ordered by smallest facet.
pub fn boundary_strata(qc: &QuotientComplex) -> Vec<BoundaryComponent> {
    let unpaired = qc.unpaired();
    if unpaired.is_empty() {
        return Vec::new();
    }
    let index: BTreeMap<FacetRef, usize> = unpaired.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut uf = UnionFind::new(unpaired.len());
    let mut gluings = Vec::new();
    for r in ridge_check(qc) {
        if let RidgeKind::Chain { ends, triangles, map } = r.kind {
            uf.union(index[&ends[0]], index[&ends[1]]);
            let g = TriangleGluing {
                from: ends[0],
                from_triangle: triangles[0],
                to: ends[1],
                to_triangle: triangles[1],
                map,
            };
            gluings.push(g);
            gluings.push(TriangleGluing {
                from: g.to,
                from_triangle: g.to_triangle,
                to: g.from,
                to_triangle: g.from_triangle,
                map: g.map.inverse(),
            });
        }
    }
    let (ids, n) = number_classes(&uf, unpaired.len());
    let mut comps: Vec<BoundaryComponent> =
        (0..n).map(|id| BoundaryComponent { id, facets: Vec::new(), gluings: Vec::new() }).collect();
    for (i, f) in unpaired.iter().enumerate() {
        comps[ids[i]].facets.push(*f);
    }
    for g in gluings {
        comps[ids[index[&g.from]]].gluings.push(g);
    }
    for c in &mut comps {
        c.gluings.sort_by_key(|g| (g.from, g.from_triangle));
    }
    comps
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Orientability {
    Orientable,
    NonOrientable,
}

impl Orientability {
    pub fn from_bool(orientable: bool) -> Self {
        if orientable {
            Orientability::Orientable
        } else {
            Orientability::NonOrientable
        }
    }

    pub fn is_orientable(self) -> bool {
        self == Orientability::Orientable
    }
}

impl fmt::Display for Orientability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientability::Orientable => "orientable",
            Orientability::NonOrientable => "non-orientable",
        })
    }
}

/// A consistent choice of copy orientations with
/// `ε_target = -det(map) · ε_source` across every pairing, if one exists.
pub fn orientation_signs(qc: &QuotientComplex) -> Option<Vec<i8>> {
    let n = qc.copies();
    let mut adj: Vec<Vec<&Pairing>> = vec![Vec::new(); n];
    for p in qc.table().pairings() {
        adj[p.source.copy].push(p);
    }
    let mut sign = vec![0i8; n];
    for root in 0..n {
        if sign[root] != 0 {
            continue;
        }
        sign[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(c) = queue.pop_front() {
            for p in &adj[c] {
                let want = -(p.map.det() as i8) * sign[c];
                let t = p.target.copy;
                if sign[t] == 0 {
                    sign[t] = want;
                    queue.push_back(t);
                } else if sign[t] != want {
                    return None;
                }
            }
        }
    }
    Some(sign)
}

pub fn orientability(qc: &QuotientComplex) -> Orientability {
    Orientability::from_bool(orientation_signs(qc).is_some())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspClass {
    pub id: usize,
    pub members: Vec<(usize, usize)>,
    /// Canonical labels of the members, sorted.
    pub labels: Vec<CuspLabel>,
}

impl CuspClass {
    /// Distinct canonical labels.
    pub fn distinct_labels(&self) -> Vec<CuspLabel> {
        let mut l = self.labels.clone();
        l.dedup();
        l
    }
}

pub fn cusp_classes(qc: &QuotientComplex) -> Vec<CuspClass> {
    let model = cell24();
    let mut classes: Vec<CuspClass> = (0..qc.orbit_count(0))
        .map(|id| CuspClass { id, members: Vec::new(), labels: Vec::new() })
        .collect();
    for copy in 0..qc.copies() {
        for v in 0..model.vertices().len() {
            let c = &mut classes[qc.orbit(0, copy, v)];
            c.members.push((copy, v));
            c.labels.push(canonical_cusp_label(model.vertex(v)));
        }
    }
    for c in &mut classes {
        c.labels.sort();
    }
    classes
}

/// Volume in units of the ideal 24-cell's volume.
pub fn volume_multiple(qc: &QuotientComplex) -> Result<usize, AssemblyError> {
    if qc.is_closed() {
        Ok(qc.copies())
    } else {
        Err(AssemblyError::HasBoundary)
    }
}

/// Two signed copies `2c` (positive) and `2c + 1` (negative) of each copy;
/// a pairing lifts to `(a, σ) → (b, -det(M)·σ)`.
pub fn orientation_double_cover(qc: &QuotientComplex) -> Result<QuotientComplex, AssemblyError> {
    if orientability(qc).is_orientable() {
        return Err(AssemblyError::AlreadyOrientable);
    }
    let lift = |copy: usize, sign: i64| 2 * copy + usize::from(sign < 0);
    let mut table = PairingTable::new(2 * qc.copies());
    for p in qc.table().pairings() {
        for sign in [1, -1] {
            let target_sign = -p.map.det() * sign;
            let lifted = Pairing::new(
                FacetRef { copy: lift(p.source.copy, sign), facet: p.source.facet },
                FacetRef { copy: lift(p.target.copy, target_sign), facet: p.target.facet },
                p.map,
            );
            table.insert(lifted)?;
        }
    }
    Ok(build_quotient(&table))
}

static CELL_TEMPLATE: Lazy<PosetTemplate> = Lazy::new(|| {
    let model = cell24();
    let mut cells: Vec<(u8, Vec<u16>)> = Vec::new();
    for d in 0..4u8 {
        for i in 0..model.cell_count(d) {
            cells.push((d, model.cell_vertices(CellRef::new(d, i)).iter().map(|&v| v as u16).collect()));
        }
    }
    cells.push((4, (0..model.vertices().len() as u16).collect()));
    PosetTemplate::from_vertex_sets(cells, 1)
});

/// Simplicial model of the quotient with the ideal vertices cut off.
pub fn quotient_model(qc: &QuotientComplex) -> FlagModel {
    let model = cell24();
    let gluings = qc
        .table()
        .pairings()
        .iter()
        .map(|p| {
            let verts = &model.facet(p.source.facet).vertices;
            Gluing {
                from_piece: p.source.copy,
                from_cell: verts.iter().map(|&v| v as u16).collect(),
                to_piece: p.target.copy,
                vertex_map: verts.iter().map(|&v| (v as u16, p.map.vertex_image(v) as u16)).collect(),
            }
        })
        .collect();
    order_complex_model(&GluedComplex { templates: vec![&*CELL_TEMPLATE], pieces: vec![0; qc.copies()], gluings })
}

/// `H_0 … H_3` and the Euler characteristic of the quotient. `H_4`
/// vanishes: the model is 3-dimensional.
pub fn quotient_homology(qc: &QuotientComplex) -> (Vec<AbelianGroup>, i64) {
    let m = quotient_model(qc);
    let h = homology_groups(&m.chain).expect("valid chain complex");
    (h, m.euler_characteristic())
}

/// `H_1` of the quotient from its dual 2-complex: copies joined across
/// facet pairings, with a 2-cell per interior ridge cycle. Self-paired
/// facets have no dual edge, so those tables use the flag model.
pub fn quotient_first_homology(qc: &QuotientComplex) -> AbelianGroup {
    let pairings = qc.table().pairings();
    if pairings.iter().any(Pairing::is_self_pairing) {
        return quotient_flag_first_homology(qc);
    }
    let mut edge_of: BTreeMap<FacetRef, (usize, i64)> = BTreeMap::new();
    let mut edges = Vec::new();
    for p in pairings.iter().filter(|p| p.source < p.target) {
        edge_of.insert(p.source, (edges.len(), 1));
        edge_of.insert(p.target, (edges.len(), -1));
        edges.push((p.source.copy, p.target.copy));
    }
    let loops: Vec<Vec<(usize, i64)>> = ridge_check(qc)
        .into_iter()
        .filter(RidgeClassReport::is_cycle)
        .map(|r| r.crossings.iter().map(|f| edge_of[f]).collect())
        .collect();
    presented_first_homology(qc.copies(), &edges, &loops)
}

/// `H_1` of the quotient from the flag model.
pub fn quotient_flag_first_homology(qc: &QuotientComplex) -> AbelianGroup {
    let m = quotient_model(qc);
    homology_up_to(&m.chain, 1).expect("valid chain complex").swap_remove(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table_has_no_identifications() {
        let qc = build_quotient(&PairingTable::new(1));
        assert_eq!(qc.orbit_count(0), 24);
        assert_eq!(qc.orbit_count(2), 96);
        let ridges = ridge_check(&qc);
        assert_eq!(ridges.len(), 96);
        assert!(ridges.iter().all(|r| !r.is_cycle() && r.length() == 1 && !r.ok()));
        assert_eq!(boundary_strata(&qc).len(), 1);
        assert_eq!(volume_multiple(&qc), Err(AssemblyError::HasBoundary));
    }
}
