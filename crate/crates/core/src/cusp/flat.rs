//! The ten closed flat 3-manifolds and the compact flat pieces that occur as
//! cusp sections with geodesic boundary.
//!
//! The lookup table is computed rather than transcribed: every closed type
//! is a mapping torus, of the torus or (for `B3`, `B4`) of the Klein bottle,
//! so `H_1 = Z ⊕ coker(f_* - 1)` on the fiber's first homology. `G6` is
//! read off the abelianized Hantzsche–Wendt presentation
//! `⟨a, b | a b² a⁻¹ b², b a² b⁻¹ a²⟩`.

use std::fmt;

use num_bigint::BigUint;
use once_cell::sync::Lazy;
use serde::Serialize;

use crate::homology::{smith_normal_form, AbelianGroup, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FlatClosedType {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    B1,
    B2,
    B3,
    B4,
}

impl FlatClosedType {
    pub const ALL: [FlatClosedType; 10] = [
        FlatClosedType::G1,
        FlatClosedType::G2,
        FlatClosedType::G3,
        FlatClosedType::G4,
        FlatClosedType::G5,
        FlatClosedType::G6,
        FlatClosedType::B1,
        FlatClosedType::B2,
        FlatClosedType::B3,
        FlatClosedType::B4,
    ];

    pub fn is_orientable(self) -> bool {
        matches!(
            self,
            FlatClosedType::G1
                | FlatClosedType::G2
                | FlatClosedType::G3
                | FlatClosedType::G4
                | FlatClosedType::G5
                | FlatClosedType::G6
        )
    }
}

impl fmt::Display for FlatClosedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FlatCompactType {
    TxI,
    TwistedIBundleOverKlein,
    MoebiusTimesCircle,
    Other,
}

impl fmt::Display for FlatCompactType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FlatCompactType::TxI => "T×I",
            FlatCompactType::TwistedIBundleOverKlein => "K×~I",
            FlatCompactType::MoebiusTimesCircle => "M×S1",
            FlatCompactType::Other => "other",
        })
    }
}

/// Monodromy data from which a closed type's homology is computed.
#[derive(Clone, Debug)]
pub enum Monodromy {
    /// Mapping torus of `T²` with the given action on `H_1(T²) = Z²`.
    Torus([[i64; 2]; 2]),
    /// Mapping torus of the Klein bottle; `H_1(K) = Z⟨x⟩ ⊕ Z/2⟨y⟩` and the
    /// columns give `f(x)`, `f(y)` in the basis `(x, y)`.
    Klein([[i64; 2]; 2]),
    /// Abelian group given by relation rows.
    Relations(Vec<Vec<i64>>),
}

impl Monodromy {
    fn orientable(&self) -> bool {
        match self {
            Monodromy::Torus(a) => a[0][0] * a[1][1] - a[0][1] * a[1][0] == 1,
            Monodromy::Klein(_) => false,
            Monodromy::Relations(_) => true,
        }
    }

    fn first_homology(&self) -> AbelianGroup {
        let (circle, relations, generators) = match self {
            Monodromy::Torus(a) => (1, (0..2).map(|j| vec![a[0][j] - i64::from(j == 0), a[1][j] - i64::from(j == 1)]).collect(), 2),
            Monodromy::Klein(a) => {
                let mut rows = vec![vec![0, 2]];
                rows.extend((0..2).map(|j| vec![a[0][j] - i64::from(j == 0), a[1][j] - i64::from(j == 1)]));
                (1, rows, 2)
            }
            Monodromy::Relations(rows) => (0, rows.clone(), rows.first().map_or(0, Vec::len)),
        };
        let group = presented_group(&relations, generators);
        AbelianGroup::from_factors(group.rank + circle, group.torsion)
    }
}

/// `Z^generators / ⟨relations⟩`.
fn presented_group(relations: &[Vec<i64>], generators: usize) -> AbelianGroup {
    if relations.is_empty() {
        return AbelianGroup::free(generators);
    }
    let m: IntMatrix<i64> = IntMatrix::from_rows(relations);
    let snf = smith_normal_form(&m);
    let torsion = snf.factors.iter().filter(|&&f| f.abs() > 1).map(|f| BigUint::from(f.unsigned_abs()));
    AbelianGroup::from_factors(generators - snf.rank(), torsion)
}

pub fn standard_monodromy(t: FlatClosedType) -> Monodromy {
    use FlatClosedType::*;
    match t {
        G1 => Monodromy::Torus([[1, 0], [0, 1]]),
        G2 => Monodromy::Torus([[-1, 0], [0, -1]]),
        G3 => Monodromy::Torus([[0, -1], [1, -1]]),
        G4 => Monodromy::Torus([[0, -1], [1, 0]]),
        G5 => Monodromy::Torus([[1, -1], [1, 0]]),
        G6 => Monodromy::Relations(vec![vec![0, 4], vec![4, 0]]),
        B1 => Monodromy::Torus([[1, 0], [0, -1]]),
        B2 => Monodromy::Torus([[0, 1], [1, 0]]),
        B3 => Monodromy::Klein([[-1, 0], [0, 1]]),
        B4 => Monodromy::Klein([[-1, 0], [1, 1]]),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatTypeEntry {
    pub kind: FlatClosedType,
    pub orientable: bool,
    pub h1: AbelianGroup,
}

/// `(orientability, H_1)` for each closed type, from its monodromy.
pub fn build_flat_type_table() -> Vec<FlatTypeEntry> {
    FlatClosedType::ALL
        .iter()
        .map(|&kind| {
            let m = standard_monodromy(kind);
            FlatTypeEntry { kind, orientable: m.orientable(), h1: m.first_homology() }
        })
        .collect()
}

static TABLE: Lazy<Vec<FlatTypeEntry>> = Lazy::new(build_flat_type_table);

pub fn flat_type_table() -> &'static [FlatTypeEntry] {
    &TABLE
}

/// Whether no two table entries share `(orientability, H_1)`.
pub fn table_is_injective(table: &[FlatTypeEntry]) -> bool {
    table.iter().enumerate().all(|(i, a)| {
        table[i + 1..].iter().all(|b| (a.orientable, &a.h1) != (b.orientable, &b.h1))
    })
}

pub fn lookup_closed(orientable: bool, h1: &AbelianGroup) -> Option<FlatClosedType> {
    let hits: Vec<_> = flat_type_table().iter().filter(|e| e.orientable == orientable && e.h1 == *h1).collect();
    match hits[..] {
        [e] => Some(e.kind),
        _ => None,
    }
}

pub fn lookup_compact(orientable: bool, boundary_components: usize, h1: &AbelianGroup) -> FlatCompactType {
    match (orientable, boundary_components, h1.rank, h1.torsion_u64().as_slice()) {
        (true, 2, 2, []) => FlatCompactType::TxI,
        (true, 1, 1, [2]) => FlatCompactType::TwistedIBundleOverKlein,
        (false, 1, 2, []) => FlatCompactType::MoebiusTimesCircle,
        _ => FlatCompactType::Other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_matches_known_groups() {
        let t = build_flat_type_table();
        let h = |k: FlatClosedType| t.iter().find(|e| e.kind == k).unwrap().h1.to_string();
        assert_eq!(h(FlatClosedType::G1), "Z^3");
        assert_eq!(h(FlatClosedType::G2), "Z + Z/2 + Z/2");
        assert_eq!(h(FlatClosedType::G3), "Z + Z/3");
        assert_eq!(h(FlatClosedType::G4), "Z + Z/2");
        assert_eq!(h(FlatClosedType::G5), "Z");
        assert_eq!(h(FlatClosedType::G6), "Z/4 + Z/4");
        assert_eq!(h(FlatClosedType::B1), "Z^2 + Z/2");
        assert_eq!(h(FlatClosedType::B2), "Z^2");
        assert_eq!(h(FlatClosedType::B3), "Z + Z/2 + Z/2");
        assert_eq!(h(FlatClosedType::B4), "Z + Z/4");
        assert!(table_is_injective(&t));
        assert!(t.iter().all(|e| e.orientable == e.kind.is_orientable()));
    }
}
