use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::isometry::Isometry;
use crate::polytope::{cell24, FacetLabel};

use super::AssemblyError;

/// A facet of one copy of the 24-cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacetRef {
    pub copy: usize,
    pub facet: usize,
}

impl FacetRef {
    pub fn new(copy: usize, label: FacetLabel) -> Self {
        FacetRef { copy, facet: cell24().facet_index(label) }
    }

    pub fn label(&self) -> FacetLabel {
        cell24().facet(self.facet).label
    }
}

impl Serialize for FacetRef {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for FacetRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.copy, self.label())
    }
}

/// Identifies `source` with `target` through `map`, which sends the source
/// facet of its copy onto the target facet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pairing {
    pub source: FacetRef,
    pub target: FacetRef,
    pub map: Isometry,
}

impl Pairing {
    pub fn new(source: FacetRef, target: FacetRef, map: Isometry) -> Self {
        Pairing { source, target, map }
    }

    pub fn inverse(&self) -> Pairing {
        Pairing { source: self.target, target: self.source, map: self.map.inverse() }
    }

    pub fn is_self_pairing(&self) -> bool {
        self.source == self.target
    }

    /// Whether `map` really carries the source facet to the target facet.
    pub fn is_consistent(&self) -> bool {
        self.map
            .facet_image(self.source.label())
            .map(|img| img == self.target.label())
            .unwrap_or(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    CopyOutOfRange(FacetRef),
    MapMismatch(FacetRef),
    DoublePairing(FacetRef),
    MissingInverse(FacetRef),
    SelfPairingNotInvolution(FacetRef),
    FixedPointOnFacet(FacetRef),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CopyOutOfRange(r) => write!(f, "copy out of range at {r}"),
            Violation::MapMismatch(r) => write!(f, "map does not send {r} to its partner"),
            Violation::DoublePairing(r) => write!(f, "{r} is the source of two pairings"),
            Violation::MissingInverse(r) => write!(f, "pairing from {r} has no inverse"),
            Violation::SelfPairingNotInvolution(r) => write!(f, "self-pairing of {r} is not an involution"),
            Violation::FixedPointOnFacet(r) => write!(f, "self-pairing of {r} fixes a vertex"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Facet pairings over a fixed number of copies.
///
/// Tables built through [`insert`](PairingTable::insert) are kept closed
/// under inverses; [`from_pairings`](PairingTable::from_pairings) accepts
/// arbitrary input so that [`validate`](PairingTable::validate) can report
/// on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingTable {
    copies: usize,
    entries: Vec<Pairing>,
    by_source: BTreeMap<FacetRef, usize>,
}

impl PairingTable {
    pub fn new(copies: usize) -> Self {
        PairingTable { copies, entries: Vec::new(), by_source: BTreeMap::new() }
    }

    pub fn from_pairings(copies: usize, pairings: Vec<Pairing>) -> Self {
        let mut by_source = BTreeMap::new();
        for (i, p) in pairings.iter().enumerate() {
            by_source.entry(p.source).or_insert(i);
        }
        PairingTable { copies, entries: pairings, by_source }
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    /// All pairings, each unordered pair present in both directions.
    pub fn pairings(&self) -> &[Pairing] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn partner(&self, facet: FacetRef) -> Option<&Pairing> {
        self.by_source.get(&facet).map(|&i| &self.entries[i])
    }

    pub fn is_paired(&self, facet: FacetRef) -> bool {
        self.by_source.contains_key(&facet)
    }

    pub fn unpaired(&self) -> Vec<FacetRef> {
        (0..self.copies)
            .flat_map(|copy| (0..cell24().facets().len()).map(move |facet| FacetRef { copy, facet }))
            .filter(|f| !self.is_paired(*f))
            .collect()
    }

    /// Adds a pairing and its inverse. Re-inserting an identical pairing is a
    /// no-op; pairing an already paired facet differently is an error.
    pub fn insert(&mut self, p: Pairing) -> Result<(), AssemblyError> {
        for r in [p.source, p.target] {
            if r.copy >= self.copies {
                return Err(AssemblyError::InvalidCopy(r.copy));
            }
        }
        if !p.is_consistent() {
            return Err(AssemblyError::MapMismatch(p.source));
        }
        if let Some(existing) = self.partner(p.source) {
            return if *existing == p {
                Ok(())
            } else {
                Err(AssemblyError::DoublePairing(p.source))
            };
        }
        if p.is_self_pairing() {
            if !p.map.compose(&p.map).is_identity() {
                return Err(AssemblyError::InvalidSelfPairing(p.source));
            }
            if fixes_a_vertex(&p) {
                return Err(AssemblyError::InvalidSelfPairing(p.source));
            }
            self.push(p);
            return Ok(());
        }
        if self.is_paired(p.target) {
            return Err(AssemblyError::DoublePairing(p.target));
        }
        self.push(p);
        self.push(p.inverse());
        Ok(())
    }

    fn push(&mut self, p: Pairing) {
        self.by_source.insert(p.source, self.entries.len());
        self.entries.push(p);
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut seen: BTreeMap<FacetRef, usize> = BTreeMap::new();
        for p in &self.entries {
            if p.source.copy >= self.copies || p.target.copy >= self.copies {
                violations.push(Violation::CopyOutOfRange(p.source));
                continue;
            }
            if !p.is_consistent() {
                violations.push(Violation::MapMismatch(p.source));
            }
            let count = seen.entry(p.source).or_default();
            *count += 1;
            if *count == 2 {
                violations.push(Violation::DoublePairing(p.source));
            }
            if p.is_self_pairing() {
                if !p.map.compose(&p.map).is_identity() {
                    violations.push(Violation::SelfPairingNotInvolution(p.source));
                }
                if fixes_a_vertex(p) {
                    violations.push(Violation::FixedPointOnFacet(p.source));
                }
            } else if !self.entries.iter().any(|q| *q == p.inverse()) {
                violations.push(Violation::MissingInverse(p.source));
            }
        }
        ValidationReport { violations }
    }
}

fn fixes_a_vertex(p: &Pairing) -> bool {
    let facet = cell24().facet(p.source.facet);
    facet.vertices.iter().any(|&v| p.map.vertex_image(v) == v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::Sign;

    fn green(axis: usize, sign: Sign) -> FacetRef {
        FacetRef::new(0, FacetLabel::green(axis, sign))
    }

    #[test]
    fn insert_adds_inverse() {
        let mut t = PairingTable::new(1);
        t.insert(Pairing::new(green(0, Sign::Plus), green(0, Sign::Minus), Isometry::antipodal())).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.validate().is_valid());
        assert_eq!(t.partner(green(0, Sign::Minus)).unwrap().target, green(0, Sign::Plus));
    }

    #[test]
    fn double_pairing_is_rejected_and_reported() {
        let mut t = PairingTable::new(1);
        t.insert(Pairing::new(green(0, Sign::Plus), green(0, Sign::Minus), Isometry::antipodal())).unwrap();
        let swap = Isometry::signed_permutation([1, 0, 2, 3], [1, 1, 1, 1]);
        let clash = Pairing::new(green(0, Sign::Plus), green(1, Sign::Plus), swap);
        assert_eq!(t.insert(clash), Err(AssemblyError::DoublePairing(green(0, Sign::Plus))));

        let raw = PairingTable::from_pairings(
            1,
            vec![
                Pairing::new(green(0, Sign::Plus), green(0, Sign::Minus), Isometry::antipodal()),
                Pairing::new(green(0, Sign::Minus), green(0, Sign::Plus), Isometry::antipodal()),
                clash,
                clash.inverse(),
            ],
        );
        let report = raw.validate();
        assert!(report.violations.contains(&Violation::DoublePairing(green(0, Sign::Plus))));
    }

    #[test]
    fn identity_self_pairing_fixes_points() {
        let f = green(0, Sign::Plus);
        let raw = PairingTable::from_pairings(1, vec![Pairing::new(f, f, Isometry::identity())]);
        assert_eq!(raw.validate().violations, vec![Violation::FixedPointOnFacet(f)]);
        let mut t = PairingTable::new(1);
        assert_eq!(t.insert(Pairing::new(f, f, Isometry::identity())), Err(AssemblyError::InvalidSelfPairing(f)));
    }

    #[test]
    fn mismatched_map_is_reported() {
        let raw = PairingTable::from_pairings(
            1,
            vec![Pairing::new(green(0, Sign::Plus), green(1, Sign::Plus), Isometry::antipodal())],
        );
        let v = raw.validate().violations;
        assert!(v.contains(&Violation::MapMismatch(green(0, Sign::Plus))));
        assert!(v.contains(&Violation::MissingInverse(green(0, Sign::Plus))));
    }
}
