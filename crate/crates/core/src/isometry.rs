//! Linear symmetries of the 24-cell.
//!
//! An [`Isometry`] is an orthogonal map of `R^4` preserving the vertex set. It
//! is stored as an exact rational matrix together with its action on the 24
//! vertices; equality, hashing and composition go through the vertex
//! permutation, which determines the map.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{Mat4, Vec4};
use crate::polytope::{cell24, CellRef, FacetLabel, Vector4, VERTEX_COUNT};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsometryError {
    #[error("matrix is not orthogonal")]
    NotOrthogonal,
    #[error("matrix does not preserve the 24-cell vertex set")]
    NotASymmetry,
    #[error("image of facet {0} is not a facet")]
    NonFacetImage(FacetLabel),
    #[error("vertex assignment is not induced by a linear symmetry")]
    InconsistentVertexMap,
    #[error("map spec: {0}")]
    MapSpec(String),
}

#[derive(Clone, Copy, Debug)]
pub struct Isometry {
    matrix: Mat4<Rational>,
    perm: [u8; VERTEX_COUNT],
    det: i8,
}

impl PartialEq for Isometry {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm
    }
}

impl Eq for Isometry {}

impl Hash for Isometry {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.perm.hash(state);
    }
}

impl PartialOrd for Isometry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Isometry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.perm.cmp(&other.perm)
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn to_rational(v: &Vector4) -> Vec4<Rational> {
    v.map(|&x| q(x))
}

impl Isometry {
    pub fn from_matrix(matrix: Mat4<Rational>) -> Result<Self, IsometryError> {
        if !matrix.is_orthogonal() {
            return Err(IsometryError::NotOrthogonal);
        }
        let model = cell24();
        let mut perm = [0u8; VERTEX_COUNT];
        for (i, v) in model.vertices().iter().enumerate() {
            let image = matrix.mul_vec(&to_rational(v));
            if image.0.iter().any(|c| !c.is_integer()) {
                return Err(IsometryError::NotASymmetry);
            }
            let image = image.map(|c| c.to_integer());
            perm[i] = model.vertex_index(&image).ok_or(IsometryError::NotASymmetry)? as u8;
        }
        let det = if matrix.det() == Rational::one() { 1 } else { -1 };
        Ok(Isometry { matrix, perm, det })
    }

    pub fn from_integer_matrix(m: [[i64; 4]; 4]) -> Result<Self, IsometryError> {
        Self::from_matrix(Mat4(m).map(|&x| q(x)))
    }

    /// `y_i = signs[i] · x_{perm[i]}`.
    pub fn signed_permutation(perm: [usize; 4], signs: [i64; 4]) -> Self {
        let m = Mat4::from_fn(|i, j| if perm[i] == j { q(signs[i]) } else { q(0) });
        Self::from_matrix(m).expect("signed permutations are symmetries")
    }

    pub fn identity() -> Self {
        Self::signed_permutation([0, 1, 2, 3], [1, 1, 1, 1])
    }

    /// `v ↦ -v`.
    pub fn antipodal() -> Self {
        Self::signed_permutation([0, 1, 2, 3], [-1, -1, -1, -1])
    }

    /// `(x, y, z, w) ↦ (-x, -y, z, w)`.
    pub fn flip_xy() -> Self {
        Self::signed_permutation([0, 1, 2, 3], [-1, -1, 1, 1])
    }

    /// The unique symmetry sending each listed vertex (by index) to its
    /// assigned image. The sources must span `R^4`.
    pub fn from_vertex_map(pairs: &[(usize, usize)]) -> Result<Self, IsometryError> {
        let model = cell24();
        let sources: Vec<_> = pairs.iter().map(|&(s, _)| to_rational(model.vertex(s))).collect();
        let images: Vec<_> = pairs.iter().map(|&(_, t)| to_rational(model.vertex(t))).collect();
        let m = Mat4::solve_linear_map(&sources, &images).ok_or(IsometryError::InconsistentVertexMap)?;
        Self::from_matrix(m).map_err(|_| IsometryError::InconsistentVertexMap)
    }

    pub fn matrix(&self) -> &Mat4<Rational> {
        &self.matrix
    }

    pub fn det(&self) -> i64 {
        self.det as i64
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    pub fn is_signed_permutation(&self) -> bool {
        self.matrix.0.iter().flatten().all(|c| c.is_integer())
    }

    pub fn vertex_image(&self, v: usize) -> usize {
        self.perm[v] as usize
    }

    pub fn apply(&self, v: &Vector4) -> Vec4<Rational> {
        self.matrix.mul_vec(&to_rational(v))
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &Isometry) -> Isometry {
        Isometry {
            matrix: self.matrix.mul_mat(&inner.matrix),
            perm: inner.perm.map(|p| self.perm[p as usize]),
            det: self.det * inner.det,
        }
    }

    pub fn inverse(&self) -> Isometry {
        let mut perm = [0u8; VERTEX_COUNT];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p as usize] = i as u8;
        }
        Isometry { matrix: self.matrix.transpose(), perm, det: self.det }
    }

    pub fn order(&self) -> usize {
        let mut power = *self;
        let mut k = 1;
        while !power.is_identity() {
            power = self.compose(&power);
            k += 1;
        }
        k
    }

    pub fn cell_image(&self, c: CellRef) -> CellRef {
        apply_isometry(self, c)
    }

    pub fn facet_image(&self, f: FacetLabel) -> Result<FacetLabel, IsometryError> {
        facet_image(self, f)
    }

    /// Parses a coordinate-image spec such as `-x,-y,z,w` or
    /// `(x+y+z+w)/2,(x+y-z-w)/2,(x-y+z-w)/2,(x-y-z+w)/2`.
    pub fn from_mapspec(spec: &str) -> Result<Self, IsometryError> {
        let rows = split_top_level(spec);
        if rows.len() != 4 {
            return Err(IsometryError::MapSpec(format!(
                "expected 4 coordinate images, found {}",
                rows.len()
            )));
        }
        let mut m = Mat4::<Rational>::identity();
        for (i, row) in rows.iter().enumerate() {
            m.0[i] = parse_linear_form(row).map_err(IsometryError::MapSpec)?;
        }
        Self::from_matrix(m)
    }

    pub fn mapspec(&self) -> String {
        self.matrix.0.iter().map(format_linear_form).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.mapspec())
    }
}

const VARS: [char; 4] = ['x', 'y', 'z', 'w'];

fn split_top_level(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    parts.push(cur);
    parts
}

fn parse_linear_form(text: &str) -> Result<[Rational; 4], String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty coordinate image".into());
    }
    let (body, denom) = match s.strip_prefix('(') {
        Some(rest) => {
            let close = rest.rfind(')').ok_or_else(|| format!("unbalanced parentheses in `{text}`"))?;
            let tail = &rest[close + 1..];
            let denom = match tail.strip_prefix('/') {
                Some(d) => d.parse::<i64>().map_err(|_| format!("bad denominator in `{text}`"))?,
                None if tail.is_empty() => 1,
                None => return Err(format!("unexpected `{tail}` in `{text}`")),
            };
            if denom == 0 {
                return Err(format!("zero denominator in `{text}`"));
            }
            (rest[..close].to_string(), denom)
        }
        None => (s.clone(), 1),
    };
    let mut coeffs = [Rational::zero(); 4];
    let mut chars = body.chars().peekable();
    let mut seen_term = false;
    while chars.peek().is_some() {
        let mut sign = 1;
        while let Some(&c) = chars.peek() {
            match c {
                '+' => {}
                '-' => sign = -sign,
                _ => break,
            }
            chars.next();
        }
        let mut digits = String::new();
        while let Some(&c) = chars.peek().filter(|c| c.is_ascii_digit()) {
            digits.push(c);
            chars.next();
        }
        let var = chars.next().ok_or_else(|| format!("dangling sign in `{text}`"))?;
        let axis = VARS
            .iter()
            .position(|&v| v == var)
            .ok_or_else(|| format!("unknown coordinate `{var}` in `{text}`"))?;
        let k: i64 = if digits.is_empty() {
            1
        } else {
            digits.parse().map_err(|_| format!("bad coefficient in `{text}`"))?
        };
        coeffs[axis] += Rational::new(sign * k, denom);
        seen_term = true;
    }
    if !seen_term {
        return Err(format!("no coordinates in `{text}`"));
    }
    Ok(coeffs)
}

fn format_linear_form(row: &[Rational; 4]) -> String {
    let denom = row.iter().fold(1i64, |acc, c| acc.lcm(c.denom()));
    let mut body = String::new();
    for (i, c) in row.iter().enumerate() {
        let k = (c * Rational::from_integer(denom)).to_integer();
        if k == 0 {
            continue;
        }
        if k < 0 {
            body.push('-');
        } else if !body.is_empty() {
            body.push('+');
        }
        if k.abs() != 1 {
            body.push_str(&k.abs().to_string());
        }
        body.push(VARS[i]);
    }
    if denom == 1 {
        body
    } else {
        format!("({body})/{denom}")
    }
}

/// Image of a cell under an isometry, located by its vertex set.
pub fn apply_isometry(m: &Isometry, c: CellRef) -> CellRef {
    let model = cell24();
    let image: Vec<usize> = model.cell_vertices(c).iter().map(|&v| m.vertex_image(v)).collect();
    model
        .cell_from_vertices(c.dim, &image)
        .expect("symmetries map cells to cells")
}

pub fn facet_image(m: &Isometry, f: FacetLabel) -> Result<FacetLabel, IsometryError> {
    let model = cell24();
    let source = model.facet(model.facet_index(f));
    let image: Vec<usize> = source.vertices.iter().map(|&v| m.vertex_image(v)).collect();
    model
        .cell_from_vertices(3, &image)
        .map(|c| model.facet(c.index).label)
        .ok_or(IsometryError::NonFacetImage(f))
}

/// Closure of a generating set under composition.
pub fn generate_group(generators: &[Isometry]) -> Vec<Isometry> {
    let mut seen: HashMap<Isometry, ()> = HashMap::new();
    let mut queue = VecDeque::from([Isometry::identity()]);
    seen.insert(Isometry::identity(), ());
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = s.compose(&g);
            if seen.insert(h, ()).is_none() {
                queue.push_back(h);
            }
        }
    }
    let mut out: Vec<Isometry> = seen.into_keys().collect();
    out.sort();
    out
}

/// All 384 signed permutations of the coordinate axes.
pub fn signed_perm_group() -> Vec<Isometry> {
    let mut out = Vec::with_capacity(384);
    for perm in permutations4() {
        for bits in 0..16 {
            let signs = std::array::from_fn(|i| if bits >> i & 1 == 1 { -1 } else { 1 });
            out.push(Isometry::signed_permutation(perm, signs));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The full symmetry group of the 24-cell (order 1152): the signed
/// permutations together with the half-integer maps that permute the three
/// facet colors.
pub fn symmetry_group() -> Vec<Isometry> {
    let mut gens = vec![
        Isometry::signed_permutation([1, 0, 2, 3], [1, 1, 1, 1]),
        Isometry::signed_permutation([1, 2, 3, 0], [1, 1, 1, 1]),
        Isometry::signed_permutation([0, 1, 2, 3], [-1, 1, 1, 1]),
    ];
    gens.push(hadamard());
    generate_group(&gens)
}

/// `(1/2)·[[1,1,1,1],[1,1,-1,-1],[1,-1,1,-1],[1,-1,-1,1]]`.
pub fn hadamard() -> Isometry {
    let signs = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];
    Isometry::from_matrix(Mat4::from_fn(|i, j| Rational::new(signs[i][j], 2)))
        .expect("hadamard map is a 24-cell symmetry")
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    if p.iter().all(|&x| !std::mem::replace(&mut seen[x], true)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}
