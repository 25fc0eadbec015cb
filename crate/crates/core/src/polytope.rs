//! Exact incidence model of the 24-cell and its red/green/blue facet coloring.
//!
//! Vertices are the 24 coordinate permutations of `(±1, ±1, 0, 0)`. Facets
//! lie in the hyperplanes `x_i = ±1` (green) and `Σ s_i x_i = 2` for
//! `s ∈ {±1}^4` (red for an even number of minus signs, blue for odd).
//! Every cell table is sorted lexicographically so indices are stable.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::linalg::Vec4;

pub type Vector4 = Vec4<i64>;

pub const VERTEX_COUNT: usize = 24;
pub const EDGE_COUNT: usize = 96;
pub const TRIANGLE_COUNT: usize = 96;
pub const FACET_COUNT: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of(x: i64) -> Sign {
        if x < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Red,
    Green,
    Blue,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Green, Color::Red, Color::Blue];

    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Green => "green",
            Color::Blue => "blue",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Color {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "red" => Ok(Color::Red),
            "green" => Ok(Color::Green),
            "blue" => Ok(Color::Blue),
            other => Err(format!("unknown color `{other}`")),
        }
    }
}

/// Names a facet by its supporting hyperplane.
///
/// `Green { axis, sign }` is `x_{axis+1} = sign·1` (axis is 0-based);
/// `Signed(s)` is `Σ s_i x_i = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FacetLabel {
    Green { axis: u8, sign: Sign },
    Signed([Sign; 4]),
}

impl FacetLabel {
    pub fn green(axis: usize, sign: Sign) -> Self {
        assert!(axis < 4, "axis out of range");
        FacetLabel::Green { axis: axis as u8, sign }
    }

    /// Sign-vector label from a slice of `±1` entries.
    pub fn signed(signs: [i64; 4]) -> Self {
        FacetLabel::Signed(signs.map(Sign::of))
    }

    pub fn color(&self) -> Color {
        facet_color(*self)
    }

    /// Outward normal `n` and level `c` of the support hyperplane `n·x = c`.
    pub fn hyperplane(&self) -> (Vector4, i64) {
        match *self {
            FacetLabel::Green { axis, sign } => {
                let mut n = [0; 4];
                n[axis as usize] = sign.value();
                (Vec4(n), 1)
            }
            FacetLabel::Signed(s) => (Vec4(s.map(Sign::value)), 2),
        }
    }

    pub fn contains(&self, v: &Vector4) -> bool {
        let (n, level) = self.hyperplane();
        n.dot(v) == level
    }

    /// All 24 labels in canonical order: green by axis then sign, followed by
    /// sign vectors in lexicographic order with `+` before `-`.
    pub fn all() -> Vec<FacetLabel> {
        let mut labels = Vec::with_capacity(FACET_COUNT);
        for axis in 0..4 {
            for sign in [Sign::Plus, Sign::Minus] {
                labels.push(FacetLabel::green(axis, sign));
            }
        }
        for bits in 0..16u32 {
            let s = std::array::from_fn(|i| {
                if bits >> (3 - i) & 1 == 1 {
                    Sign::Minus
                } else {
                    Sign::Plus
                }
            });
            labels.push(FacetLabel::Signed(s));
        }
        labels
    }
}

impl fmt::Display for FacetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FacetLabel::Green { axis, sign } => write!(f, "{}x{}", sign.symbol(), axis + 1),
            FacetLabel::Signed(s) => {
                write!(f, "({},{},{},{})", s[0].symbol(), s[1].symbol(), s[2].symbol(), s[3].symbol())
            }
        }
    }
}

impl FromStr for FacetLabel {
    type Err = String;

    /// Accepts `+x1`/`-x3` for green facets and `(+,+,-,-)` or `++--` for
    /// sign-vector facets.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("+x").or_else(|| s.strip_prefix("-x")) {
            let sign = if s.starts_with('-') { Sign::Minus } else { Sign::Plus };
            return match rest {
                "1" | "2" | "3" | "4" => Ok(FacetLabel::green(rest.parse::<usize>().unwrap() - 1, sign)),
                _ => Err(format!("invalid green facet `{s}`")),
            };
        }
        let symbols = parse_symbol_tuple(s).ok_or_else(|| format!("invalid facet label `{s}`"))?;
        let mut signs = [Sign::Plus; 4];
        for (slot, c) in signs.iter_mut().zip(symbols) {
            *slot = match c {
                '+' => Sign::Plus,
                '-' => Sign::Minus,
                _ => return Err(format!("invalid facet label `{s}`: entries must be + or -")),
            };
        }
        Ok(FacetLabel::Signed(signs))
    }
}

/// Splits `(a,b,c,d)` or `abcd` into four symbol characters.
fn parse_symbol_tuple(s: &str) -> Option<[char; 4]> {
    let inner = match s.strip_prefix('(') {
        Some(rest) => rest.strip_suffix(')')?.split(',').map(str::trim).collect::<Vec<_>>(),
        None => s.split("").filter(|p| !p.is_empty()).collect(),
    };
    if inner.len() != 4 {
        return None;
    }
    let mut out = ['0'; 4];
    for (slot, part) in out.iter_mut().zip(&inner) {
        let mut chars = part.chars();
        let c = chars.next()?;
        if chars.next().is_some() {
            return None;
        }
        *slot = c;
    }
    Some(out)
}

pub fn facet_color(label: FacetLabel) -> Color {
    match label {
        FacetLabel::Green { .. } => Color::Green,
        FacetLabel::Signed(s) => {
            let minus = s.iter().filter(|&&x| x == Sign::Minus).count();
            if minus % 2 == 0 {
                Color::Red
            } else {
                Color::Blue
            }
        }
    }
}

/// A vertex's `±` pattern up to global sign, normalized so the first nonzero
/// entry is `+`. Opposite vertices share a label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CuspLabel(pub [i8; 4]);

pub fn canonical_cusp_label(v: &Vector4) -> CuspLabel {
    let first = v.0.iter().copied().find(|&x| x != 0).unwrap_or(1);
    let flip = if first < 0 { -1 } else { 1 };
    CuspLabel(v.0.map(|x| (x.signum() * flip) as i8))
}

impl fmt::Display for CuspLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = |x: i8| match x {
            1 => '+',
            -1 => '-',
            _ => '0',
        };
        let s = self.0;
        write!(f, "({},{},{},{})", sym(s[0]), sym(s[1]), sym(s[2]), sym(s[3]))
    }
}

impl FromStr for CuspLabel {
    type Err = String;

    /// Parses `(+,0,-,0)` (or `+0-0`), canonicalizing the sign. Numerals
    /// `1`/`-1` are accepted in the parenthesized form.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let entries: Vec<i64> = if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            inner
                .split(',')
                .map(|p| match p.trim() {
                    "+" | "1" | "+1" => Ok(1),
                    "-" | "-1" => Ok(-1),
                    "0" => Ok(0),
                    other => Err(format!("invalid cusp label entry `{other}`")),
                })
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| match c {
                    '+' => Ok(1),
                    '-' => Ok(-1),
                    '0' => Ok(0),
                    other => Err(format!("invalid cusp label entry `{other}`")),
                })
                .collect::<Result<_, _>>()?
        };
        let v: [i64; 4] = entries
            .try_into()
            .map_err(|_| format!("cusp label `{s}` must have four entries"))?;
        if v.iter().filter(|&&x| x != 0).count() != 2 {
            return Err(format!("cusp label `{s}` must have exactly two nonzero entries"));
        }
        Ok(canonical_cusp_label(&Vec4(v)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellRef {
    pub dim: u8,
    pub index: usize,
}

impl CellRef {
    pub fn new(dim: u8, index: usize) -> Self {
        assert!(dim <= 3, "cell dimension out of range");
        let bound = [VERTEX_COUNT, EDGE_COUNT, TRIANGLE_COUNT, FACET_COUNT][dim as usize];
        assert!(index < bound, "cell index out of range");
        CellRef { dim, index }
    }

    pub fn vertex(i: usize) -> Self {
        Self::new(0, i)
    }

    pub fn facet(i: usize) -> Self {
        Self::new(3, i)
    }
}

#[derive(Clone, Debug)]
pub struct Facet {
    pub label: FacetLabel,
    pub vertices: [usize; 6],
}

/// The 24-cell as vertex/edge/triangle/facet tables with incidences between
/// consecutive dimensions.
#[derive(Clone, Debug)]
pub struct Cell24 {
    vertices: Vec<Vector4>,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
    facets: Vec<Facet>,
    singletons: Vec<[usize; 1]>,
    vertex_lookup: HashMap<Vector4, usize>,
    edge_lookup: HashMap<[usize; 2], usize>,
    triangle_lookup: HashMap<[usize; 3], usize>,
    facet_lookup: HashMap<FacetLabel, usize>,
    vertex_edges: Vec<Vec<usize>>,
    vertex_facets: Vec<Vec<usize>>,
    edge_triangles: Vec<Vec<usize>>,
    triangle_edges: Vec<[usize; 3]>,
    triangle_facets: Vec<[usize; 2]>,
    facet_edges: Vec<Vec<usize>>,
    facet_triangles: Vec<Vec<usize>>,
}

static MODEL: Lazy<Cell24> = Lazy::new(build_24cell);

/// Shared immutable instance of [`build_24cell`].
pub fn cell24() -> &'static Cell24 {
    &MODEL
}

pub fn build_24cell() -> Cell24 {
    let mut vertices = Vec::with_capacity(VERTEX_COUNT);
    for i in 0..4 {
        for j in i + 1..4 {
            for si in [-1, 1] {
                for sj in [-1, 1] {
                    let mut v = [0i64; 4];
                    v[i] = si;
                    v[j] = sj;
                    vertices.push(Vec4(v));
                }
            }
        }
    }
    vertices.sort();

    let n = vertices.len();
    let adjacent = |a: usize, b: usize| vertices[a].dot(&vertices[b]) == 1;
    let mut edges = Vec::new();
    let mut triangles = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !adjacent(a, b) {
                continue;
            }
            edges.push([a, b]);
            for c in b + 1..n {
                if adjacent(a, c) && adjacent(b, c) {
                    triangles.push([a, b, c]);
                }
            }
        }
    }

    let facets: Vec<Facet> = FacetLabel::all()
        .into_iter()
        .map(|label| {
            let vs: Vec<usize> = (0..n).filter(|&v| label.contains(&vertices[v])).collect();
            Facet {
                label,
                vertices: vs.try_into().expect("every facet is an octahedron"),
            }
        })
        .collect();

    let vertex_lookup = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let edge_lookup = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let triangle_lookup = triangles.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let facet_lookup = facets.iter().enumerate().map(|(i, f)| (f.label, i)).collect();

    let mut vertex_edges = vec![Vec::new(); n];
    for (i, e) in edges.iter().enumerate() {
        for &v in e {
            vertex_edges[v].push(i);
        }
    }
    let mut vertex_facets = vec![Vec::new(); n];
    for (i, f) in facets.iter().enumerate() {
        for &v in &f.vertices {
            vertex_facets[v].push(i);
        }
    }
    let edge_index = |a: usize, b: usize| -> usize {
        let key = if a < b { [a, b] } else { [b, a] };
        edges.binary_search(&key).expect("triangle side is an edge")
    };
    let triangle_edges: Vec<[usize; 3]> = triangles
        .iter()
        .map(|&[a, b, c]| [edge_index(a, b), edge_index(a, c), edge_index(b, c)])
        .collect();
    let mut edge_triangles = vec![Vec::new(); edges.len()];
    for (t, es) in triangle_edges.iter().enumerate() {
        for &e in es {
            edge_triangles[e].push(t);
        }
    }
    let in_facet = |f: &Facet, vs: &[usize]| vs.iter().all(|v| f.vertices.contains(v));
    let triangle_facets: Vec<[usize; 2]> = triangles
        .iter()
        .map(|t| {
            let fs: Vec<usize> = (0..facets.len()).filter(|&f| in_facet(&facets[f], t)).collect();
            fs.try_into().expect("every triangle lies in exactly two facets")
        })
        .collect();
    let facet_edges = facets
        .iter()
        .map(|f| (0..edges.len()).filter(|&e| in_facet(f, &edges[e])).collect())
        .collect();
    let facet_triangles = facets
        .iter()
        .map(|f| (0..triangles.len()).filter(|&t| in_facet(f, &triangles[t])).collect())
        .collect();

    Cell24 {
        vertices,
        edges,
        triangles,
        facets,
        singletons: (0..n).map(|v| [v]).collect(),
        vertex_lookup,
        edge_lookup,
        triangle_lookup,
        facet_lookup,
        vertex_edges,
        vertex_facets,
        edge_triangles,
        triangle_edges,
        triangle_facets,
        facet_edges,
        facet_triangles,
    }
}

impl Cell24 {
    pub fn vertices(&self) -> &[Vector4] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn vertex(&self, i: usize) -> &Vector4 {
        &self.vertices[i]
    }

    pub fn facet(&self, i: usize) -> &Facet {
        &self.facets[i]
    }

    pub fn cell_count(&self, dim: u8) -> usize {
        match dim {
            0 => self.vertices.len(),
            1 => self.edges.len(),
            2 => self.triangles.len(),
            3 => self.facets.len(),
            _ => 0,
        }
    }

    pub fn vertex_index(&self, v: &Vector4) -> Option<usize> {
        self.vertex_lookup.get(v).copied()
    }

    pub fn facet_index(&self, label: FacetLabel) -> usize {
        self.facet_lookup[&label]
    }

    pub fn facet_color(&self, f: usize) -> Color {
        self.facets[f].label.color()
    }

    /// Vertex indices of a cell, sorted.
    pub fn cell_vertices(&self, c: CellRef) -> &[usize] {
        match c.dim {
            0 => &self.singletons[c.index],
            1 => &self.edges[c.index],
            2 => &self.triangles[c.index],
            _ => &self.facets[c.index].vertices,
        }
    }

    /// The cell of the given dimension with exactly this vertex set.
    pub fn cell_from_vertices(&self, dim: u8, vertices: &[usize]) -> Option<CellRef> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        let index = match dim {
            0 => (vs.len() == 1).then(|| vs[0]),
            1 => <[usize; 2]>::try_from(vs.as_slice()).ok().and_then(|k| self.edge_lookup.get(&k).copied()),
            2 => <[usize; 3]>::try_from(vs.as_slice())
                .ok()
                .and_then(|k| self.triangle_lookup.get(&k).copied()),
            3 => self.facets.iter().position(|f| f.vertices.as_slice() == vs.as_slice()),
            _ => None,
        }?;
        Some(CellRef { dim, index })
    }

    pub fn vertex_edges(&self, v: usize) -> &[usize] {
        &self.vertex_edges[v]
    }

    /// The six facets through a vertex: two of each color.
    pub fn vertex_facets(&self, v: usize) -> &[usize] {
        &self.vertex_facets[v]
    }

    /// The eight vertices adjacent to `v`.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.vertex_edges[v].iter().map(move |&e| {
            let [a, b] = self.edges[e];
            if a == v {
                b
            } else {
                a
            }
        })
    }

    pub fn edge_triangles(&self, e: usize) -> &[usize] {
        &self.edge_triangles[e]
    }

    pub fn triangle_edges(&self, t: usize) -> &[usize; 3] {
        &self.triangle_edges[t]
    }

    /// The two facets sharing a triangle.
    pub fn triangle_facets(&self, t: usize) -> [usize; 2] {
        self.triangle_facets[t]
    }

    /// The facet on the other side of triangle `t` from facet `f`.
    pub fn other_facet(&self, t: usize, f: usize) -> usize {
        let [a, b] = self.triangle_facets[t];
        debug_assert!(a == f || b == f, "facet does not contain triangle");
        if a == f {
            b
        } else {
            a
        }
    }

    pub fn facet_edges(&self, f: usize) -> &[usize] {
        &self.facet_edges[f]
    }

    pub fn facet_triangles(&self, f: usize) -> &[usize] {
        &self.facet_triangles[f]
    }

    /// Checkerboard color of triangle `t` seen from facet `f`: the color of
    /// the neighbouring facet across `t`.
    pub fn triangle_color_in(&self, t: usize, f: usize) -> Color {
        self.facet_color(self.other_facet(t, f))
    }

    /// The vertex of facet `f` opposite to `v` in the octahedron.
    pub fn opposite_in_facet(&self, f: usize, v: usize) -> usize {
        let p = &self.vertices[v];
        *self.facets[f]
            .vertices
            .iter()
            .find(|&&w| w != v && self.vertices[w].dot(p) == 0)
            .expect("octahedron vertices have an opposite")
    }

    /// All faces of a cell (including itself), grouped by dimension.
    pub fn closure(&self, c: CellRef) -> Vec<CellRef> {
        let vs = self.cell_vertices(c);
        let mut out: Vec<CellRef> = vs.iter().map(|&v| CellRef { dim: 0, index: v }).collect();
        if c.dim >= 1 {
            let edges: Vec<usize> = match c.dim {
                1 => vec![c.index],
                2 => self.triangle_edges[c.index].to_vec(),
                _ => self.facet_edges[c.index].clone(),
            };
            out.extend(edges.into_iter().map(|e| CellRef { dim: 1, index: e }));
        }
        if c.dim >= 2 {
            let tris: Vec<usize> = match c.dim {
                2 => vec![c.index],
                _ => self.facet_triangles[c.index].clone(),
            };
            out.extend(tris.into_iter().map(|t| CellRef { dim: 2, index: t }));
        }
        if c.dim == 3 {
            out.push(c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_the_24_cell() {
        let m = build_24cell();
        assert_eq!(m.vertices().len(), 24);
        assert_eq!(m.edges().len(), 96);
        assert_eq!(m.triangles().len(), 96);
        assert_eq!(m.facets().len(), 24);
    }

    #[test]
    fn green_x1_plus_is_the_x1_equals_one_slice() {
        let m = cell24();
        let f = m.facet(m.facet_index(FacetLabel::green(0, Sign::Plus)));
        // brute-force scan instead of the stored incidence
        let expected: Vec<usize> = (0..24).filter(|&v| m.vertex(v)[0] == 1).collect();
        assert_eq!(expected.len(), 6);
        assert_eq!(f.vertices.to_vec(), expected);
    }

    #[test]
    fn facets_through_1100() {
        let m = cell24();
        let v = m.vertex_index(&Vec4([1, 1, 0, 0])).unwrap();
        let mut got: Vec<FacetLabel> = m.vertex_facets(v).iter().map(|&f| m.facet(f).label).collect();
        got.sort();
        let mut want = vec![
            FacetLabel::green(0, Sign::Plus),
            FacetLabel::green(1, Sign::Plus),
            FacetLabel::signed([1, 1, 1, 1]),
            FacetLabel::signed([1, 1, -1, -1]),
            FacetLabel::signed([1, 1, 1, -1]),
            FacetLabel::signed([1, 1, -1, 1]),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn colors_follow_minus_sign_parity() {
        assert_eq!(facet_color(FacetLabel::green(0, Sign::Plus)), Color::Green);
        assert_eq!(facet_color(FacetLabel::signed([1, 1, -1, -1])), Color::Red);
        assert_eq!(facet_color(FacetLabel::signed([1, 1, 1, -1])), Color::Blue);
        let m = cell24();
        for color in Color::ALL {
            assert_eq!(m.facets().iter().filter(|f| f.label.color() == color).count(), 8);
        }
    }

    #[test]
    fn adjacent_facets_never_share_a_color() {
        let m = cell24();
        for t in 0..TRIANGLE_COUNT {
            let [a, b] = m.triangle_facets(t);
            assert_ne!(m.facet_color(a), m.facet_color(b));
        }
    }

    #[test]
    fn each_vertex_meets_two_facets_of_each_color() {
        let m = cell24();
        for v in 0..VERTEX_COUNT {
            assert_eq!(m.vertex_facets(v).len(), 6);
            for color in Color::ALL {
                let k = m.vertex_facets(v).iter().filter(|&&f| m.facet_color(f) == color).count();
                assert_eq!(k, 2);
            }
        }
    }

    #[test]
    fn edges_join_unit_inner_products() {
        let m = cell24();
        for &[a, b] in m.edges() {
            assert_eq!(m.vertex(a).dot(m.vertex(b)), 1);
        }
        for v in 0..VERTEX_COUNT {
            assert_eq!(m.neighbors(v).count(), 8);
        }
    }

    #[test]
    fn cusp_labels_are_sign_normalized() {
        let l = |v: [i64; 4]| canonical_cusp_label(&Vec4(v)).to_string();
        assert_eq!(l([-1, -1, 0, 0]), "(+,+,0,0)");
        assert_eq!(l([0, -1, 0, 1]), "(0,+,0,-)");
        assert_eq!(l([1, 0, -1, 0]), "(+,0,-,0)");
        for v in cell24().vertices() {
            let neg = v.map(|x| -x);
            assert_eq!(canonical_cusp_label(v), canonical_cusp_label(&neg));
        }
    }

    #[test]
    fn labels_parse_and_print() {
        for label in FacetLabel::all() {
            assert_eq!(label.to_string().parse::<FacetLabel>().unwrap(), label);
        }
        assert_eq!("++--".parse::<FacetLabel>().unwrap(), FacetLabel::signed([1, 1, -1, -1]));
        assert!("(+,+,0,-)".parse::<FacetLabel>().is_err());
        assert!("+x5".parse::<FacetLabel>().is_err());
        assert_eq!("(0,1,-1,0)".parse::<CuspLabel>().unwrap().to_string(), "(0,+,-,0)");
        assert_eq!("-0+0".parse::<CuspLabel>().unwrap().to_string(), "(+,0,-,0)");
        assert!("(+,+,+,0)".parse::<CuspLabel>().is_err());
    }

    #[test]
    fn opposite_vertices_in_octahedra() {
        let m = cell24();
        for (fi, f) in m.facets().iter().enumerate() {
            for &v in &f.vertices {
                let o = m.opposite_in_facet(fi, v);
                assert_eq!(m.opposite_in_facet(fi, o), v);
                assert_ne!(o, v);
            }
        }
    }

    #[test]
    fn closure_counts() {
        let m = cell24();
        let closure = m.closure(CellRef::facet(0));
        let by_dim = |d| closure.iter().filter(|c| c.dim == d).count();
        assert_eq!([by_dim(0), by_dim(1), by_dim(2), by_dim(3)], [6, 12, 8, 1]);
    }
}
