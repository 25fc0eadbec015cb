use std::fmt;

/// Symmetry of the cube `[-1,1]^3`: `y_i = signs[i] · x_{perm[i]}`.
///
/// Corners are numbered `0..8` with bit `k` set when coordinate `k` is
/// `-1`; face slot `2k` is `x_k = +1` and `2k + 1` is `x_k = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeSym {
    perm: [u8; 3],
    signs: [i8; 3],
}

pub fn corner_coords(corner: u8) -> [i8; 3] {
    std::array::from_fn(|k| if corner >> k & 1 == 1 { -1 } else { 1 })
}

pub fn corner_from_coords(x: [i8; 3]) -> u8 {
    (0..3).filter(|&k| x[k] < 0).map(|k| 1u8 << k).sum()
}

pub fn face_axis(face: usize) -> usize {
    face / 2
}

pub fn face_sign(face: usize) -> i8 {
    if face.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn face_slot(axis: usize, sign: i8) -> usize {
    2 * axis + usize::from(sign < 0)
}

/// Corners on a face, in square-local order: square corner bit 0 (resp. 1)
/// is the lower (resp. higher) of the two free axes being `-1`.
pub fn face_corners(face: usize) -> [u8; 4] {
    let a = face_axis(face);
    let free: Vec<usize> = (0..3).filter(|&k| k != a).collect();
    std::array::from_fn(|q| {
        let mut x = [0i8; 3];
        x[a] = face_sign(face);
        x[free[0]] = if q & 1 == 1 { -1 } else { 1 };
        x[free[1]] = if q & 2 == 2 { -1 } else { 1 };
        corner_from_coords(x)
    })
}

impl CubeSym {
    pub fn new(perm: [u8; 3], signs: [i8; 3]) -> Self {
        let mut seen = [false; 3];
        for &p in &perm {
            assert!(!std::mem::replace(&mut seen[p as usize], true), "not a permutation");
        }
        assert!(signs.iter().all(|s| s.abs() == 1));
        CubeSym { perm, signs }
    }

    pub fn identity() -> Self {
        CubeSym { perm: [0, 1, 2], signs: [1, 1, 1] }
    }

    /// Reflection in the plane `x_axis = 0`.
    pub fn reflection(axis: usize) -> Self {
        let mut signs = [1; 3];
        signs[axis] = -1;
        CubeSym { perm: [0, 1, 2], signs }
    }

    /// All 48 symmetries.
    pub fn all() -> Vec<CubeSym> {
        const PERMS: [[u8; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        PERMS
            .iter()
            .flat_map(|&perm| (0..8u8).map(move |c| CubeSym { perm, signs: corner_coords(c) }))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn det(&self) -> i8 {
        let p = self.perm;
        let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let parity = if inversions % 2 == 0 { 1 } else { -1 };
        parity * self.signs.iter().product::<i8>()
    }

    pub fn apply(&self, x: [i8; 3]) -> [i8; 3] {
        std::array::from_fn(|i| self.signs[i] * x[self.perm[i] as usize])
    }

    pub fn corner(&self, c: u8) -> u8 {
        corner_from_coords(self.apply(corner_coords(c)))
    }

    pub fn face(&self, face: usize) -> usize {
        let a = face_axis(face) as u8;
        let i = self.perm.iter().position(|&p| p == a).unwrap();
        face_slot(i, self.signs[i] * face_sign(face))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &CubeSym) -> CubeSym {
        CubeSym {
            perm: std::array::from_fn(|i| inner.perm[self.perm[i] as usize]),
            signs: std::array::from_fn(|i| self.signs[i] * inner.signs[self.perm[i] as usize]),
        }
    }

    pub fn inverse(&self) -> CubeSym {
        let mut perm = [0; 3];
        let mut signs = [1; 3];
        for i in 0..3 {
            perm[self.perm[i] as usize] = i as u8;
            signs[self.perm[i] as usize] = self.signs[i];
        }
        CubeSym { perm, signs }
    }

    /// The symmetry with the given action on corners, if there is one.
    pub fn from_corner_map(map: &[u8; 8]) -> Option<CubeSym> {
        Self::all().into_iter().find(|s| (0..8).all(|c| s.corner(c) == map[c as usize]))
    }
}

impl fmt::Display for CubeSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const VARS: [char; 3] = ['x', 'y', 'z'];
        let parts: Vec<String> = (0..3)
            .map(|i| format!("{}{}", if self.signs[i] < 0 { "-" } else { "" }, VARS[self.perm[i] as usize]))
            .collect();
        f.write_str(&parts.join(","))
    }
}
