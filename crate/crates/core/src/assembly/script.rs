use std::collections::BTreeSet;
use std::fmt;

use crate::boundary::{boundary_complex, extend_isometry, OctComplex, OctMap, SeedMap};
use crate::isometry::Isometry;
use crate::polytope::{canonical_cusp_label, cell24, Color, CuspLabel};

use super::quotient::{boundary_strata, build_quotient};
use super::table::{FacetRef, Pairing, PairingTable};
use super::AssemblyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    All,
    Copy(usize),
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::All => f.write_str("all"),
            Scope::Copy(c) => write!(f, "{c}"),
        }
    }
}

/// A vertex named either by an alias from the script's cusp table or by a
/// canonical label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CuspRef {
    Name(String),
    Label(CuspLabel),
}

impl fmt::Display for CuspRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CuspRef::Name(n) => f.write_str(n),
            CuspRef::Label(l) => write!(f, "{l}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspAlias {
    pub name: String,
    pub labels: Vec<CuspLabel>,
}

/// Glues boundary component `src` onto `dst` by the isomorphism extending
/// the seed: octahedron `seed_src` goes to `seed_dst` with the listed
/// vertex correspondence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryGlue {
    pub src: usize,
    pub dst: usize,
    pub seed_src: FacetRef,
    pub seed_dst: FacetRef,
    pub vertices: Vec<(CuspRef, CuspRef)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stage {
    /// Pairs every facet of `color` in the scoped copies with its image
    /// under `map`, in copy `to` when given and in the same copy otherwise.
    PairColor { scope: Scope, to: Option<usize>, color: Color, map: Isometry },
    PairExplicit(Vec<Pairing>),
    BoundaryGlue(BoundaryGlue),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionScript {
    pub name: Option<String>,
    pub copies: usize,
    pub cusps: Vec<CuspAlias>,
    pub stages: Vec<Stage>,
}

impl ConstructionScript {
    pub fn new(copies: usize) -> Self {
        ConstructionScript { name: None, copies, cusps: Vec::new(), stages: Vec::new() }
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn cusp(mut self, name: &str, labels: &[&str]) -> Self {
        let labels = labels.iter().map(|l| l.parse().expect("valid cusp label")).collect();
        self.cusps.push(CuspAlias { name: name.to_string(), labels });
        self
    }

    pub fn pair_color(mut self, scope: Scope, to: Option<usize>, color: Color, map: Isometry) -> Self {
        self.stages.push(Stage::PairColor { scope, to, color, map });
        self
    }

    pub fn stage(mut self, stage: Stage) -> Self {
        self.stages.push(stage);
        self
    }

    fn resolve(&self, r: &CuspRef) -> Result<Vec<CuspLabel>, AssemblyError> {
        match r {
            CuspRef::Label(l) => Ok(vec![*l]),
            CuspRef::Name(n) => self
                .cusps
                .iter()
                .find(|a| a.name == *n)
                .map(|a| a.labels.clone())
                .ok_or_else(|| AssemblyError::UnknownCusp(n.clone())),
        }
    }
}

/// Runs the pairing stages in order, then every boundary gluing against the
/// boundary components they leave behind.
pub fn compile_script(script: &ConstructionScript) -> Result<PairingTable, AssemblyError> {
    let mut table = PairingTable::new(script.copies);
    let mut glues = Vec::new();
    for stage in &script.stages {
        match stage {
            Stage::PairColor { scope, to, color, map } => pair_color(&mut table, *scope, *to, *color, map)?,
            Stage::PairExplicit(pairings) => {
                for p in pairings {
                    table.insert(*p)?;
                }
            }
            Stage::BoundaryGlue(g) => glues.push(g),
        }
    }
    if glues.is_empty() {
        return Ok(table);
    }
    let qc = build_quotient(&table);
    let strata = boundary_strata(&qc);
    let mut used = BTreeSet::new();
    for g in glues {
        for c in [g.src, g.dst] {
            if c >= strata.len() {
                return Err(AssemblyError::InvalidComponent(c));
            }
            if !used.insert(c) {
                return Err(AssemblyError::ComponentReused(c));
            }
        }
        let ocx = boundary_complex(&qc, g.src)?;
        let ocy = boundary_complex(&qc, g.dst)?;
        let source = ocx.octahedron_index(g.seed_src).ok_or(AssemblyError::SeedNotInComponent(g.seed_src))?;
        let target = ocy.octahedron_index(g.seed_dst).ok_or(AssemblyError::SeedNotInComponent(g.seed_dst))?;
        let vertices = seed_vertex_table(script, g)?;
        let iso = extend_isometry(&ocx, &ocy, &SeedMap { source, target, vertices })?;
        insert_boundary_isomorphism(&mut table, &ocx, &ocy, &iso)?;
    }
    Ok(table)
}

/// Pairs every octahedron of `x` with its image in `y` under `iso`.
pub(crate) fn insert_boundary_isomorphism(
    table: &mut PairingTable,
    x: &OctComplex,
    y: &OctComplex,
    iso: &OctMap,
) -> Result<(), AssemblyError> {
    for (i, oct) in x.octahedra().iter().enumerate() {
        let image = &y.octahedra()[iso.targets[i]];
        let pairs: Vec<(usize, usize)> =
            (0..6).map(|k| (oct.vertices[k], image.vertices[iso.maps[i][k] as usize])).collect();
        let map = Isometry::from_vertex_map(&pairs).map_err(|_| {
            AssemblyError::SeedDoesNotExtend(format!("octahedron map {} -> {} is not a symmetry", oct.facet, image.facet))
        })?;
        table.insert(Pairing::new(oct.facet, image.facet, map))?;
    }
    Ok(())
}

fn pair_color(
    table: &mut PairingTable,
    scope: Scope,
    to: Option<usize>,
    color: Color,
    map: &Isometry,
) -> Result<(), AssemblyError> {
    let model = cell24();
    let copies: Vec<usize> = match scope {
        Scope::All => (0..table.copies()).collect(),
        Scope::Copy(c) if c < table.copies() => vec![c],
        Scope::Copy(c) => return Err(AssemblyError::InvalidCopy(c)),
    };
    if let Some(t) = to.filter(|&t| t >= table.copies()) {
        return Err(AssemblyError::InvalidCopy(t));
    }
    let sources: Vec<FacetRef> = copies
        .iter()
        .flat_map(|&copy| {
            (0..model.facets().len())
                .filter(|&f| model.facet_color(f) == color)
                .map(move |facet| FacetRef { copy, facet })
        })
        .filter(|f| !table.is_paired(*f))
        .collect();
    if sources.is_empty() {
        return Err(AssemblyError::ColorScopeEmpty { color, scope: scope.to_string() });
    }
    for source in sources {
        let image = map.cell_image(crate::polytope::CellRef::facet(source.facet)).index;
        let target = FacetRef { copy: to.unwrap_or(source.copy), facet: image };
        table.insert(Pairing::new(source, target, *map))?;
    }
    Ok(())
}

/// Local vertex correspondence between the two seed octahedra of `g`.
pub fn seed_vertex_table(script: &ConstructionScript, g: &BoundaryGlue) -> Result<[u8; 6], AssemblyError> {
    let model = cell24();
    let src = &model.facet(g.seed_src.facet).vertices;
    let dst = &model.facet(g.seed_dst.facet).vertices;
    let locate = |verts: &[usize; 6], r: &CuspRef| -> Result<usize, AssemblyError> {
        let labels = script.resolve(r)?;
        let hits: Vec<usize> = (0..6)
            .filter(|&k| labels.contains(&canonical_cusp_label(model.vertex(verts[k]))))
            .collect();
        match hits[..] {
            [k] => Ok(k),
            _ => Err(AssemblyError::InvalidVertexTable(format!(
                "{r} matches {} vertices of the seed octahedron",
                hits.len()
            ))),
        }
    };
    let mut table = [u8::MAX; 6];
    let mut hit = [false; 6];
    for (a, b) in &g.vertices {
        let i = locate(src, a)?;
        let j = locate(dst, b)?;
        if table[i] != u8::MAX || hit[j] {
            return Err(AssemblyError::InvalidVertexTable(format!("{a} -> {b} repeats a vertex")));
        }
        table[i] = j as u8;
        hit[j] = true;
    }
    if table.contains(&u8::MAX) {
        return Err(AssemblyError::InvalidVertexTable(format!("{} pairs given, 6 needed", g.vertices.len())));
    }
    Ok(table)
}
