use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Serialize, Serializer};

/// A finitely generated abelian group `Z^rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k` with
/// `t_1 | t_2 | … | t_k` and every `t_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigUint>,
}

impl AbelianGroup {
    /// Normalizes the torsion list: drops units and re-derives the
    /// divisibility chain.
    pub fn new(rank: usize, torsion: &[u64]) -> Self {
        Self::from_factors(rank, torsion.iter().map(|&t| BigUint::from(t)))
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn from_factors(rank: usize, factors: impl IntoIterator<Item = BigUint>) -> Self {
        AbelianGroup { rank, torsion: normalize_torsion(factors.into_iter().collect()) }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|t| t.to_u64().expect("torsion fits in u64")).collect()
    }
}

/// Invariant-factor form of an arbitrary list of cyclic orders.
fn normalize_torsion(factors: Vec<BigUint>) -> Vec<BigUint> {
    use num_integer::Integer;
    // Collapse into prime-power-free invariant factors by pairwise gcd/lcm
    // sweeps; the lists here are tiny.
    let mut fs: Vec<BigUint> = factors.into_iter().filter(|f| !f.is_one() && *f != BigUint::ZERO).collect();
    let n = fs.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = fs[i].gcd(&fs[j]);
            let l = fs[i].lcm(&fs[j]);
            fs[i] = g;
            fs[j] = l;
        }
    }
    fs.retain(|f| !f.is_one());
    fs
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("AbelianGroup", 3)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("torsion", &self.torsion_u64())?;
        st.serialize_field("display", &self.to_string())?;
        st.end()
    }
}
