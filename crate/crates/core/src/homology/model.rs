//! Simplicial models of glued cell complexes.
//!
//! Each piece (a polytope, cube, square, ...) is described by its face
//! poset, cells named by their vertex sets. The model's `k`-simplices are
//! orbits of `(k+1)`-element flags `c_0 < c_1 < … < c_k` of faces of one
//! piece under the gluing maps: the barycentric subdivision of every piece,
//! glued. This is a valid Δ-complex for the quotient even when gluings fold
//! a cell onto itself, because a cellular isometry fixing a flag fixes its
//! simplex pointwise.
//!
//! Cells below `min_dim` are left out of the flags. With `min_dim = 1` this
//! removes ideal vertices: the result is the complement of their open stars,
//! a deformation retract of the cusped quotient.

use std::collections::HashMap;

use num_bigint::BigInt;
use petgraph::unionfind::UnionFind;

use super::chain::ChainComplex;
use super::snf::SparseMatrix;

#[derive(Clone, Debug)]
pub struct PosetTemplate {
    cells: Vec<Vec<u16>>,
    dims: Vec<u8>,
    lookup: HashMap<Vec<u16>, u32>,
    cells_below: Vec<Vec<u32>>,
    flags: Vec<Vec<u32>>,
    flag_lookup: HashMap<Vec<u32>, u32>,
    flags_below: Vec<Vec<u32>>,
}

impl PosetTemplate {
    /// Builds the face poset from `(dimension, vertex set)` pairs; the order
    /// is strict inclusion of vertex sets. Flags only use cells of dimension
    /// at least `min_dim`.
    pub fn from_vertex_sets(cells: Vec<(u8, Vec<u16>)>, min_dim: u8) -> Self {
        let (dims, mut sets): (Vec<u8>, Vec<Vec<u16>>) = cells.into_iter().unzip();
        for s in &mut sets {
            s.sort_unstable();
        }
        let lookup: HashMap<Vec<u16>, u32> = sets.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        assert_eq!(lookup.len(), sets.len(), "duplicate cell vertex sets");
        let n = sets.len();
        let subset = |a: &[u16], b: &[u16]| a.iter().all(|x| b.binary_search(x).is_ok());
        let cells_below: Vec<Vec<u32>> = (0..n)
            .map(|c| (0..n).filter(|&d| subset(&sets[d], &sets[c])).map(|d| d as u32).collect())
            .collect();
        let above: Vec<Vec<u32>> = (0..n)
            .map(|c| {
                (0..n)
                    .filter(|&d| dims[d] > dims[c] && dims[d] >= min_dim && subset(&sets[c], &sets[d]))
                    .map(|d| d as u32)
                    .collect()
            })
            .collect();

        let mut flags = Vec::new();
        let mut stack: Vec<Vec<u32>> = (0..n as u32).filter(|&c| dims[c as usize] >= min_dim).map(|c| vec![c]).collect();
        stack.reverse();
        while let Some(chain) = stack.pop() {
            let top = *chain.last().unwrap() as usize;
            for &next in above[top].iter().rev() {
                let mut longer = chain.clone();
                longer.push(next);
                stack.push(longer);
            }
            flags.push(chain);
        }
        flags.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let flag_lookup = flags.iter().enumerate().map(|(i, f)| (f.clone(), i as u32)).collect();
        let mut flags_below = vec![Vec::new(); n];
        for (fi, f) in flags.iter().enumerate() {
            let top = *f.last().unwrap() as usize;
            for c in 0..n {
                if cells_below[c].binary_search(&(top as u32)).is_ok() {
                    flags_below[c].push(fi as u32);
                }
            }
        }
        PosetTemplate { cells: sets, dims, lookup, cells_below, flags, flag_lookup, flags_below }
    }

    /// The 3-cube on corners `0..8`, corner bit `k` set meaning coordinate
    /// `k` is `-1`.
    pub fn cube() -> Self {
        Self::from_vertex_sets(box_cells(3), 0)
    }

    /// The square on corners `0..4`, same corner encoding as [`cube`](Self::cube).
    pub fn square() -> Self {
        Self::from_vertex_sets(box_cells(2), 0)
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn flag_count(&self) -> usize {
        self.flags.len()
    }

    pub fn cell_index(&self, vertices: &[u16]) -> Option<usize> {
        let mut key = vertices.to_vec();
        key.sort_unstable();
        self.lookup.get(&key).map(|&i| i as usize)
    }

    pub fn cell_vertices(&self, c: usize) -> &[u16] {
        &self.cells[c]
    }

    pub fn cell_dim(&self, c: usize) -> u8 {
        self.dims[c]
    }
}

/// Faces of `[-1,1]^n` as corner sets.
fn box_cells(n: usize) -> Vec<(u8, Vec<u16>)> {
    let corners = 1u16 << n;
    let mut out = Vec::new();
    // each axis is fixed to +1, fixed to -1, or free
    for pattern in 0..3usize.pow(n as u32) {
        let mut p = pattern;
        let mut spec = Vec::with_capacity(n);
        for _ in 0..n {
            spec.push(p % 3);
            p /= 3;
        }
        let members: Vec<u16> = (0..corners)
            .filter(|&c| {
                spec.iter().enumerate().all(|(k, &s)| match s {
                    0 => c >> k & 1 == 0,
                    1 => c >> k & 1 == 1,
                    _ => true,
                })
            })
            .collect();
        let dim = spec.iter().filter(|&&s| s == 2).count() as u8;
        out.push((dim, members));
    }
    out
}

/// Identification of one cell of a piece with a cell of another piece,
/// given by where its vertices go.
#[derive(Clone, Debug)]
pub struct Gluing {
    pub from_piece: usize,
    pub from_cell: Vec<u16>,
    pub to_piece: usize,
    pub vertex_map: Vec<(u16, u16)>,
}

/// Pieces (each an instance of a template) plus gluings.
#[derive(Clone, Debug)]
pub struct GluedComplex<'t> {
    pub templates: Vec<&'t PosetTemplate>,
    pub pieces: Vec<usize>,
    pub gluings: Vec<Gluing>,
}

/// The simplicial model of a [`GluedComplex`]: simplex counts per dimension
/// and the simplicial chain complex.
#[derive(Clone, Debug)]
pub struct FlagModel {
    pub simplex_counts: Vec<usize>,
    pub chain: ChainComplex<BigInt>,
    /// Connected components of the model, by union-find over simplices.
    pub components: usize,
}

impl FlagModel {
    pub fn euler_characteristic(&self) -> i64 {
        self.chain.euler_characteristic()
    }
}

pub fn order_complex_model(complex: &GluedComplex<'_>) -> FlagModel {
    let templates = &complex.templates;
    let mut offsets = Vec::with_capacity(complex.pieces.len() + 1);
    let mut total = 0usize;
    for &t in &complex.pieces {
        offsets.push(total);
        total += templates[t].flag_count();
    }
    let mut uf = UnionFind::<usize>::new(total);

    for g in &complex.gluings {
        let src = templates[complex.pieces[g.from_piece]];
        let dst = templates[complex.pieces[g.to_piece]];
        let top = src.cell_index(&g.from_cell).expect("glued cell exists in its piece");
        let vmap: HashMap<u16, u16> = g.vertex_map.iter().copied().collect();
        let mut cell_map: HashMap<u32, u32> = HashMap::new();
        for &c in &src.cells_below[top] {
            let image: Vec<u16> = src.cells[c as usize].iter().map(|v| vmap[v]).collect();
            let d = dst.cell_index(&image).expect("gluing maps cells to cells");
            cell_map.insert(c, d as u32);
        }
        for &f in &src.flags_below[top] {
            let image: Vec<u32> = src.flags[f as usize].iter().map(|c| cell_map[c]).collect();
            let fi = dst.flag_lookup[&image];
            uf.union(offsets[g.from_piece] + f as usize, offsets[g.to_piece] + fi as usize);
        }
    }

    // number orbits per simplex dimension in order of first appearance
    let labels = uf.into_labeling();
    let mut orbit_of = vec![usize::MAX; total];
    let mut reps: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut root_to_orbit: HashMap<usize, usize> = HashMap::new();
    for (p, &t) in complex.pieces.iter().enumerate() {
        let tpl = templates[t];
        for (f, flag) in tpl.flags.iter().enumerate() {
            let gid = offsets[p] + f;
            let dim = flag.len() - 1;
            if reps.len() <= dim {
                reps.resize(dim + 1, Vec::new());
            }
            let root = labels[gid];
            let id = *root_to_orbit.entry(root).or_insert_with(|| {
                reps[dim].push((p, f));
                reps[dim].len() - 1
            });
            orbit_of[gid] = id;
        }
    }
    let counts: Vec<usize> = reps.iter().map(Vec::len).collect();
    let mut boundaries = Vec::new();
    for d in 1..counts.len() {
        let mut m = SparseMatrix::new(counts[d - 1], counts[d]);
        for (col, &(p, f)) in reps[d].iter().enumerate() {
            let tpl = templates[complex.pieces[p]];
            let flag = &tpl.flags[f];
            for i in 0..flag.len() {
                let mut face = flag.clone();
                face.remove(i);
                let fi = tpl.flag_lookup[&face] as usize;
                let row = orbit_of[offsets[p] + fi];
                let sign = if i % 2 == 0 { 1 } else { -1 };
                m.add(row, col, BigInt::from(sign));
            }
        }
        boundaries.push(m);
    }

    let mut cc = UnionFind::<usize>::new(counts.first().copied().unwrap_or(0));
    if let Some(d1) = boundaries.first() {
        let mut ends: Vec<Vec<usize>> = vec![Vec::new(); d1.cols()];
        for i in 0..d1.rows() {
            for (j, _) in d1.row(i) {
                ends[j].push(i);
            }
        }
        for e in ends {
            for w in e.windows(2) {
                cc.union(w[0], w[1]);
            }
        }
    }
    let components = {
        let mut roots: Vec<usize> = cc.into_labeling();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    };

    FlagModel {
        chain: ChainComplex::new(if counts.is_empty() { vec![0] } else { counts.clone() }, boundaries),
        simplex_counts: counts,
        components,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::chain::homology_groups;
    use crate::homology::group::AbelianGroup;

    #[test]
    fn cube_template_counts() {
        let cube = PosetTemplate::cube();
        assert_eq!(cube.cell_count(), 27);
        // 27 singletons + 98 pairs + 120 triples + 48 full flags
        assert_eq!(cube.flag_count(), 27 + 98 + 120 + 48);
        let sq = PosetTemplate::square();
        assert_eq!(sq.cell_count(), 9);
    }

    #[test]
    fn single_cube_is_contractible() {
        let cube = PosetTemplate::cube();
        let c = GluedComplex { templates: vec![&cube], pieces: vec![0], gluings: vec![] };
        let model = order_complex_model(&c);
        assert_eq!(model.euler_characteristic(), 1);
        let h = homology_groups(&model.chain).unwrap();
        assert_eq!(h[0], AbelianGroup::free(1));
        assert!(h[1..].iter().all(AbelianGroup::is_trivial));
    }

    /// One square with a single edge glued to itself reversed and the
    /// opposite edges glued by translation is a Möbius band; gluing both
    /// pairs of opposite edges by translation gives the torus.
    #[test]
    fn square_identifications() {
        let sq = PosetTemplate::square();
        // corner bit 0: x = -1, bit 1: y = -1
        let x_minus = vec![1u16, 3];
        let y_minus = vec![2u16, 3];
        let translate_x = Gluing { from_piece: 0, from_cell: x_minus.clone(), to_piece: 0, vertex_map: vec![(1, 0), (3, 2)] };
        let translate_y = Gluing { from_piece: 0, from_cell: y_minus.clone(), to_piece: 0, vertex_map: vec![(2, 0), (3, 1)] };
        let torus = GluedComplex { templates: vec![&sq], pieces: vec![0], gluings: vec![translate_x.clone(), translate_y] };
        let h = homology_groups(&order_complex_model(&torus).chain).unwrap();
        assert_eq!(h, vec![AbelianGroup::free(1), AbelianGroup::free(2), AbelianGroup::free(1)]);

        let flip_y = Gluing { from_piece: 0, from_cell: y_minus, to_piece: 0, vertex_map: vec![(2, 1), (3, 0)] };
        let klein = GluedComplex { templates: vec![&sq], pieces: vec![0], gluings: vec![translate_x, flip_y] };
        let model = order_complex_model(&klein);
        assert_eq!(model.euler_characteristic(), 0);
        let h = homology_groups(&model.chain).unwrap();
        assert_eq!(h[1], AbelianGroup::new(1, &[2]));
        assert!(h[2].is_trivial());
    }
}
