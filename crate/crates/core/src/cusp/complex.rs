use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::assembly::{cusp_classes, number_classes, FacetRef, Orientability, QuotientComplex};
use crate::homology::{homology_up_to, order_complex_model, presented_first_homology, AbelianGroup, FlagModel, GluedComplex, Gluing, PosetTemplate};
use crate::polytope::{cell24, Color};

use super::cube::{corner_coords, face_axis, face_corners, face_slot, CubeSym};
use super::CuspError;

/// Where a cube sits in the 24-cell: the vertex figure at `vertex` in `copy`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CubeOrigin {
    pub copy: usize,
    pub vertex: usize,
    /// The facet behind each face slot.
    pub facets: [usize; 6],
    /// The neighbor of `vertex` at each corner.
    pub corners: [usize; 8],
}

impl CubeOrigin {
    /// Axis 0 pairs the green facets at the vertex, axis 1 the red and
    /// axis 2 the blue; the facet with the smaller index is the `+` face.
    pub fn new(copy: usize, vertex: usize) -> Self {
        let model = cell24();
        let mut facets = [usize::MAX; 6];
        for (axis, color) in [Color::Green, Color::Red, Color::Blue].into_iter().enumerate() {
            let mut pair: Vec<usize> =
                model.vertex_facets(vertex).iter().copied().filter(|&f| model.facet_color(f) == color).collect();
            pair.sort_unstable();
            assert_eq!(pair.len(), 2, "two facets of each color at a vertex");
            facets[2 * axis] = pair[0];
            facets[2 * axis + 1] = pair[1];
        }
        let mut corners = [usize::MAX; 8];
        for w in model.neighbors(vertex) {
            let x: [i8; 3] = std::array::from_fn(|k| {
                let plus = model.facet(facets[2 * k]).vertices.contains(&w);
                let minus = model.facet(facets[2 * k + 1]).vertices.contains(&w);
                assert!(plus != minus, "each neighbor lies on one face of each opposite pair");
                if plus {
                    1
                } else {
                    -1
                }
            });
            corners[super::cube::corner_from_coords(x) as usize] = w;
        }
        assert!(corners.iter().all(|&w| w != usize::MAX));
        CubeOrigin { copy, vertex, facets, corners }
    }

    pub fn face_of(&self, facet: usize) -> Option<usize> {
        self.facets.iter().position(|&f| f == facet)
    }

    pub fn corner_of(&self, w: usize) -> Option<u8> {
        self.corners.iter().position(|&c| c == w).map(|c| c as u8)
    }

    pub fn face_color(&self, face: usize) -> Color {
        cell24().facet_color(self.facets[face])
    }
}

/// Gluing of a cube face onto a face of another cube; `sym` extends the
/// face map to the whole cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FaceGlue {
    pub target: usize,
    pub target_face: usize,
    pub sym: CubeSym,
}

/// A cusp section as cubes glued along faces.
#[derive(Clone, Debug)]
pub struct CubeComplex {
    origins: Vec<CubeOrigin>,
    glue: Vec<[Option<FaceGlue>; 6]>,
}

pub fn cusp_complex(qc: &QuotientComplex, cusp: usize) -> Result<CubeComplex, CuspError> {
    let classes = cusp_classes(qc);
    let class = classes.get(cusp).ok_or(CuspError::InvalidCusp(cusp))?;
    let origins: Vec<CubeOrigin> = class.members.iter().map(|&(c, v)| CubeOrigin::new(c, v)).collect();
    let index: HashMap<(usize, usize), usize> =
        origins.iter().enumerate().map(|(i, o)| ((o.copy, o.vertex), i)).collect();
    let mut glue = vec![[None; 6]; origins.len()];
    for (i, o) in origins.iter().enumerate() {
        for face in 0..6 {
            let Some(p) = qc.table().partner(FacetRef { copy: o.copy, facet: o.facets[face] }) else { continue };
            let target = index[&(p.target.copy, p.map.vertex_image(o.vertex))];
            let t = &origins[target];
            let corner_map: [u8; 8] =
                std::array::from_fn(|c| t.corner_of(p.map.vertex_image(o.corners[c])).expect("neighbors go to neighbors"));
            let sym = CubeSym::from_corner_map(&corner_map).expect("a symmetry induces a cube symmetry");
            let target_face = t.face_of(p.target.facet).expect("target facet contains the image vertex");
            debug_assert_eq!(sym.face(face), target_face);
            glue[i][face] = Some(FaceGlue { target, target_face, sym });
        }
    }
    Ok(CubeComplex { origins, glue })
}

impl CubeComplex {
    /// A complex of `cubes` abstract cubes from gluings `(cube, face,
    /// target cube, symmetry)`; each is added with its inverse.
    pub fn from_gluings(cubes: usize, gluings: &[(usize, usize, usize, CubeSym)]) -> Self {
        let mut glue = vec![[None; 6]; cubes];
        for &(i, face, target, sym) in gluings {
            let target_face = sym.face(face);
            glue[i][face] = Some(FaceGlue { target, target_face, sym });
            glue[target][target_face] = Some(FaceGlue { target: i, target_face: face, sym: sym.inverse() });
        }
        CubeComplex { origins: Vec::new(), glue }
    }

    pub fn len(&self) -> usize {
        self.glue.len()
    }

    pub fn is_empty(&self) -> bool {
        self.glue.is_empty()
    }

    /// Empty for abstract complexes.
    pub fn origins(&self) -> &[CubeOrigin] {
        &self.origins
    }

    pub fn glue(&self, cube: usize, face: usize) -> Option<&FaceGlue> {
        self.glue[cube][face].as_ref()
    }

    pub fn free_faces(&self) -> Vec<(usize, usize)> {
        (0..self.len()).flat_map(|i| (0..6).map(move |f| (i, f))).filter(|&(i, f)| self.glue[i][f].is_none()).collect()
    }

    pub fn is_closed(&self) -> bool {
        self.glue.iter().all(|faces| faces.iter().all(Option::is_some))
    }

    /// The facet of the 24-cell behind a free face.
    pub fn facet_behind(&self, cube: usize, face: usize) -> Option<FacetRef> {
        self.origins.get(cube).map(|o| FacetRef { copy: o.copy, facet: o.facets[face] })
    }

    fn glued_complex<'t>(&self, template: &'t PosetTemplate) -> GluedComplex<'t> {
        let mut gluings = Vec::new();
        for i in 0..self.len() {
            for face in 0..6 {
                if let Some(g) = &self.glue[i][face] {
                    let corners = face_corners(face);
                    gluings.push(Gluing {
                        from_piece: i,
                        from_cell: corners.iter().map(|&c| c as u16).collect(),
                        to_piece: g.target,
                        vertex_map: corners.iter().map(|&c| (c as u16, g.sym.corner(c) as u16)).collect(),
                    });
                }
            }
        }
        GluedComplex { templates: vec![template], pieces: vec![0; self.len()], gluings }
    }
}

/// An edge chain: a class of cube edges around a shared edge of the section.
struct EdgeChain {
    length: usize,
    closed: bool,
    holonomy: CubeSym,
    /// For chains: `(cube, face, corners)` at both free ends; the corners of
    /// the second end are the images of the first's under `holonomy`.
    ends: Option<[(usize, usize, [u8; 2]); 2]>,
    members: Vec<(usize, [u8; 2])>,
    /// `(cube, face)` exited at each step.
    crossings: Vec<(usize, usize)>,
}

fn edge_faces(edge: [u8; 2]) -> [usize; 2] {
    let axis = (edge[0] ^ edge[1]).trailing_zeros() as usize;
    let x = corner_coords(edge[0]);
    let others: Vec<usize> = (0..3).filter(|&k| k != axis).collect();
    [face_slot(others[0], x[others[0]]), face_slot(others[1], x[others[1]])]
}

fn sorted(e: [u8; 2]) -> [u8; 2] {
    [e[0].min(e[1]), e[0].max(e[1])]
}

fn walk_edge(cc: &CubeComplex, cube: usize, edge: [u8; 2], exit: usize, limit: usize) -> (EdgeChain, (usize, [u8; 2], usize)) {
    let start = (cube, edge, exit);
    let mut state = start;
    let mut members = vec![(cube, edge)];
    let mut holonomy = CubeSym::identity();
    let mut crossings = Vec::new();
    while let Some(g) = cc.glue[state.0][state.2] {
        crossings.push((state.0, state.2));
        let e = sorted(state.1.map(|c| g.sym.corner(c)));
        let faces = edge_faces(e);
        let exit = if faces[0] == g.target_face { faces[1] } else { faces[0] };
        holonomy = g.sym.compose(&holonomy);
        let next = (g.target, e, exit);
        if next == start {
            return (EdgeChain { length: members.len(), closed: true, holonomy, ends: None, members, crossings }, state);
        }
        members.push((next.0, next.1));
        state = next;
        if members.len() > limit {
            break;
        }
    }
    (EdgeChain { length: members.len(), closed: false, holonomy, ends: None, members, crossings }, state)
}

fn edge_chains(cc: &CubeComplex) -> Vec<EdgeChain> {
    let limit = 12 * cc.len() + 1;
    let mut seen = BTreeSet::new();
    let mut chains = Vec::new();
    for cube in 0..cc.len() {
        for c in 0..8u8 {
            for k in 0..3 {
                let edge = [c, c | 1 << k];
                if c >> k & 1 == 1 || seen.contains(&(cube, edge)) {
                    continue;
                }
                let (first, last) = walk_edge(cc, cube, edge, edge_faces(edge)[0], limit);
                let chain = if first.closed {
                    first
                } else {
                    let (c0, e0, free0) = last;
                    let faces = edge_faces(e0);
                    let other = if faces[0] == free0 { faces[1] } else { faces[0] };
                    let (mut full, end) = walk_edge(cc, c0, e0, other, limit);
                    full.ends = Some([(c0, free0, e0), (end.0, end.2, e0.map(|x| full.holonomy.corner(x)))]);
                    full
                };
                for m in &chain.members {
                    seen.insert(*m);
                }
                chains.push(chain);
            }
        }
    }
    chains
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatStructureReport {
    pub cubes: usize,
    pub free_faces: usize,
    pub closed: bool,
    pub involutive: bool,
    pub opposite_faces_match: bool,
    pub edge_classes: usize,
    pub bad_edge_classes: usize,
    pub vertex_classes: usize,
    pub bad_vertex_links: usize,
}

impl FlatStructureReport {
    pub fn ok(&self) -> bool {
        self.involutive && self.opposite_faces_match && self.bad_edge_classes == 0 && self.bad_vertex_links == 0
    }
}

pub fn verify_flat_structure(cc: &CubeComplex) -> FlatStructureReport {
    let n = cc.len();
    let mut involutive = true;
    for i in 0..n {
        for f in 0..6 {
            if let Some(g) = cc.glue[i][f] {
                involutive &= g.sym.face(f) == g.target_face
                    && cc.glue[g.target][g.target_face]
                        == Some(FaceGlue { target: i, target_face: f, sym: g.sym.inverse() });
            }
        }
    }
    let opposite_faces_match = cc
        .origins
        .iter()
        .all(|o| (0..3).all(|k| o.face_color(2 * k) == o.face_color(2 * k + 1)));

    let chains = edge_chains(cc);
    let bad_edge_classes = chains
        .iter()
        .filter(|c| if c.closed { c.length != 4 || !c.holonomy.is_identity() } else { c.length != 2 })
        .count();

    // Vertex links: triangles are cube corners, their sides the faces at
    // the corner, their vertices the edges at the corner.
    let mut corner_uf = UnionFind::new(8 * n);
    let mut edge_uf = UnionFind::new(24 * n);
    let edge_id = |cube: usize, c: u8, axis: usize| (8 * cube + c as usize) * 3 + axis;
    for i in 0..n {
        for f in 0..6 {
            let Some(g) = cc.glue[i][f] else { continue };
            for c in face_corners(f) {
                let image = g.sym.corner(c);
                corner_uf.union(8 * i + c as usize, 8 * g.target + image as usize);
                for axis in (0..3).filter(|&k| k != face_axis(f)) {
                    let other = g.sym.corner(c ^ 1 << axis);
                    let image_axis = (image ^ other).trailing_zeros() as usize;
                    edge_uf.union(edge_id(i, c, axis), edge_id(g.target, image, image_axis));
                }
            }
        }
    }
    let (class_of, vertex_classes) = number_classes(&corner_uf, 8 * n);
    let mut triangles = vec![0i64; vertex_classes];
    let mut half_sides = vec![0i64; vertex_classes];
    let mut free_sides = vec![0i64; vertex_classes];
    let mut link_vertices = vec![BTreeSet::new(); vertex_classes];
    for i in 0..n {
        for c in 0..8u8 {
            let v = class_of[8 * i + c as usize];
            triangles[v] += 1;
            let x = corner_coords(c);
            for k in 0..3 {
                link_vertices[v].insert(edge_uf.find(edge_id(i, c, k)));
                if cc.glue[i][face_slot(k, x[k])].is_some() {
                    half_sides[v] += 1;
                } else {
                    free_sides[v] += 1;
                }
            }
        }
    }
    let bad_vertex_links = (0..vertex_classes)
        .filter(|&v| {
            let chi = link_vertices[v].len() as i64 - (half_sides[v] / 2 + free_sides[v]) + triangles[v];
            if free_sides[v] == 0 {
                !(triangles[v] == 8 && chi == 2)
            } else {
                chi != 1
            }
        })
        .count();

    FlatStructureReport {
        cubes: n,
        free_faces: cc.free_faces().len(),
        closed: cc.is_closed(),
        involutive,
        opposite_faces_match,
        edge_classes: chains.len(),
        bad_edge_classes,
        vertex_classes,
        bad_vertex_links,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SurfaceType {
    Torus,
    KleinBottle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundarySurface {
    pub squares: Vec<(usize, usize)>,
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub kind: SurfaceType,
    /// Facets of the 24-cell carrying the squares; empty for abstract
    /// complexes.
    pub facets: Vec<FacetRef>,
}

/// Components of the square complex formed by the free faces.
pub fn boundary_surfaces(cc: &CubeComplex) -> Result<Vec<BoundarySurface>, CuspError> {
    let free = cc.free_faces();
    if free.is_empty() {
        return Ok(Vec::new());
    }
    let index: HashMap<(usize, usize), usize> = free.iter().enumerate().map(|(i, &sq)| (sq, i)).collect();
    let local = |face: usize, c: u8| face_corners(face).iter().position(|&x| x == c).unwrap() as u16;
    let mut uf = UnionFind::new(free.len());
    let mut edge_gluings = Vec::new();
    for chain in edge_chains(cc) {
        let Some([(ca, fa, ea), (cb, fb, eb)]) = chain.ends else { continue };
        let (a, b) = (index[&(ca, fa)], index[&(cb, fb)]);
        uf.union(a, b);
        edge_gluings.push(Gluing {
            from_piece: a,
            from_cell: ea.iter().map(|&c| local(fa, c)).collect(),
            to_piece: b,
            vertex_map: (0..2).map(|i| (local(fa, ea[i]), local(fb, eb[i]))).collect(),
        });
    }
    let (comp, count) = number_classes(&uf, free.len());
    let square = PosetTemplate::square();
    let mut surfaces = Vec::new();
    for s in 0..count {
        let members: Vec<usize> = (0..free.len()).filter(|&i| comp[i] == s).collect();
        let renumber: HashMap<usize, usize> = members.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let gluings = edge_gluings
            .iter()
            .filter(|g| comp[g.from_piece] == s)
            .map(|g| Gluing {
                from_piece: renumber[&g.from_piece],
                from_cell: g.from_cell.clone(),
                to_piece: renumber[&g.to_piece],
                vertex_map: g.vertex_map.clone(),
            })
            .collect();
        let model = order_complex_model(&GluedComplex {
            templates: vec![&square],
            pieces: vec![0; members.len()],
            gluings,
        });
        let chi = model.euler_characteristic();
        if chi != 0 {
            return Err(CuspError::NonFlatBoundary(chi));
        }
        let h = homology_up_to(&model.chain, 2).expect("valid chain complex");
        let orientable = h.get(2).is_some_and(|g| g.rank == 1);
        let squares: Vec<(usize, usize)> = members.iter().map(|&i| free[i]).collect();
        surfaces.push(BoundarySurface {
            facets: squares.iter().filter_map(|&(c, f)| cc.facet_behind(c, f)).collect(),
            squares,
            euler_characteristic: chi,
            orientable,
            kind: if orientable { SurfaceType::Torus } else { SurfaceType::KleinBottle },
        });
    }
    Ok(surfaces)
}

/// Sign propagation with `ε_target = -det(σ) · ε_source` across each face.
pub fn cusp_orientability(cc: &CubeComplex) -> Orientability {
    let n = cc.len();
    let mut sign = vec![0i8; n];
    for root in 0..n {
        if sign[root] != 0 {
            continue;
        }
        sign[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            for g in cc.glue[i].iter().flatten() {
                let want = -g.sym.det() * sign[i];
                if sign[g.target] == 0 {
                    sign[g.target] = want;
                    queue.push_back(g.target);
                } else if sign[g.target] != want {
                    return Orientability::NonOrientable;
                }
            }
        }
    }
    Orientability::Orientable
}

/// Simplicial model of the section.
pub fn cusp_model(cc: &CubeComplex) -> FlagModel {
    let cube = PosetTemplate::cube();
    order_complex_model(&cc.glued_complex(&cube))
}

/// `H_0 … H_3` and the Euler characteristic of the section.
pub fn cube_complex_homology(cc: &CubeComplex) -> (Vec<AbelianGroup>, i64) {
    let model = cusp_model(cc);
    let h = homology_up_to(&model.chain, 3).expect("valid chain complex");
    (h, model.euler_characteristic())
}

/// `H_1` from the dual 2-complex: cubes joined across glued faces, with a
/// 2-cell per closed edge cycle. A face glued to itself has no dual edge,
/// so such complexes use the flag model.
pub fn first_homology(cc: &CubeComplex) -> AbelianGroup {
    let self_glued = (0..cc.len()).any(|i| (0..6).any(|f| cc.glue[i][f].is_some_and(|g| (g.target, g.target_face) == (i, f))));
    if self_glued {
        return flag_first_homology(cc);
    }
    let mut edge_of: BTreeMap<(usize, usize), (usize, i64)> = BTreeMap::new();
    let mut edges = Vec::new();
    for i in 0..cc.len() {
        for f in 0..6 {
            if let Some(g) = cc.glue[i][f].filter(|g| (i, f) < (g.target, g.target_face)) {
                edge_of.insert((i, f), (edges.len(), 1));
                edge_of.insert((g.target, g.target_face), (edges.len(), -1));
                edges.push((i, g.target));
            }
        }
    }
    let loops: Vec<Vec<(usize, i64)>> = edge_chains(cc)
        .into_iter()
        .filter(|c| c.closed)
        .map(|c| c.crossings.iter().map(|x| edge_of[x]).collect())
        .collect();
    presented_first_homology(cc.len(), &edges, &loops)
}

/// `H_1` from the flag model.
pub fn flag_first_homology(cc: &CubeComplex) -> AbelianGroup {
    let cube = PosetTemplate::cube();
    let model = order_complex_model(&cc.glued_complex(&cube));
    homology_up_to(&model.chain, 1).expect("valid chain complex").swap_remove(1)
}

/// Color of the facet behind a face; `None` for abstract complexes.
pub fn face_color(cc: &CubeComplex, cube: usize, face: usize) -> Option<Color> {
    cc.origins.get(cube).map(|o| o.face_color(face))
}
