use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A permutation of the tetrahedron vertex labels `{0, 1, 2, 3}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// Returns `None` unless `images` is a bijection of `{0,1,2,3}`.
    pub fn new(images: [u8; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &i in &images {
            if i > 3 || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(Perm4(images))
    }

    /// Builds the permutation sending `from[i]` to `to[i]` for `i < 3`; the
    /// fourth label goes to the remaining fourth label.
    pub fn from_three(from: [usize; 3], to: [usize; 3]) -> Option<Self> {
        let mut images = [4u8; 4];
        for i in 0..3 {
            images[from[i]] = to[i] as u8;
        }
        let src = (0..4).find(|v| !from.contains(v))?;
        let dst = (0..4).find(|v| !to.contains(v))?;
        images[src] = dst as u8;
        Self::new(images)
    }

    #[inline]
    pub fn apply(self, v: usize) -> usize {
        self.0[v] as usize
    }

    pub fn images(self) -> [u8; 4] {
        self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Perm4) -> Perm4 {
        Perm4(other.0.map(|i| self.0[i as usize]))
    }

    pub fn inverse(self) -> Perm4 {
        let mut inv = [0u8; 4];
        for (i, &p) in self.0.iter().enumerate() {
            inv[p as usize] = i as u8;
        }
        Perm4(inv)
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(self) -> i8 {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All 24 permutations in lexicographic order of their image arrays.
    pub fn all() -> impl Iterator<Item = Perm4> {
        (0..256u32).filter_map(|code| {
            let images = [0, 2, 4, 6].map(|s| ((code >> s) & 3) as u8);
            Perm4::new([images[3], images[2], images[1], images[0]])
        })
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl Serialize for Perm4 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Perm4 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let images = <[u8; 4]>::deserialize(deserializer)?;
        Perm4::new(images)
            .ok_or_else(|| serde::de::Error::custom(format!("{images:?} is not a permutation of 0..4")))
    }
}
