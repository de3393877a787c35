use std::fmt;

use super::perm::all_permutations;

/// A signed permutation of `{±1, …, ±n}`. Only `w(1), …, w(n)` are stored;
/// `w(−i) = −w(i)` is applied on demand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    images: Box<[i32]>,
}

/// A cycle of a signed permutation, as the cycle notation groups them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignedCycle {
    /// `((a_1, …, a_k))`: the cycle and its negative are disjoint.
    Paired(Vec<i32>),
    /// `[a_1, …, a_k]`: the cycle `(a_1 … a_k −a_1 … −a_k)`.
    Balanced(Vec<i32>),
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm {
            images: (1..=n as i32).collect(),
        }
    }

    /// `images[i−1] = w(i)`. Panics unless the absolute values form a permutation of `1..=n`.
    pub fn from_images(images: Vec<i32>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let a = x.unsigned_abs() as usize;
            assert!(
                x != 0 && a <= n && !std::mem::replace(&mut seen[a - 1], true),
                "not a signed permutation: {images:?}"
            );
        }
        SignedPerm {
            images: images.into_boxed_slice(),
        }
    }

    pub(crate) fn sign_flip(n: usize, i: u32) -> Self {
        let mut images: Vec<i32> = (1..=n as i32).collect();
        images[i as usize - 1] = -(i as i32);
        SignedPerm {
            images: images.into_boxed_slice(),
        }
    }

    pub(crate) fn signed_swap(n: usize, i: u32, j: u32, negative: bool) -> Self {
        let s = if negative { -1 } else { 1 };
        let mut images: Vec<i32> = (1..=n as i32).collect();
        images[i as usize - 1] = s * j as i32;
        images[j as usize - 1] = s * i as i32;
        SignedPerm {
            images: images.into_boxed_slice(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `w(x)` for `x ∈ {±1, …, ±n}`.
    pub fn apply(&self, x: i32) -> i32 {
        debug_assert!(x != 0 && x.unsigned_abs() as usize <= self.n());
        if x > 0 {
            self.images[x as usize - 1]
        } else {
            -self.images[(-x) as usize - 1]
        }
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        SignedPerm {
            images: other.images.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut inv = vec![0i32; self.n()];
        for (i, &y) in self.images.iter().enumerate() {
            let i = i as i32 + 1;
            if y > 0 {
                inv[y as usize - 1] = i;
            } else {
                inv[(-y) as usize - 1] = -i;
            }
        }
        SignedPerm {
            images: inv.into_boxed_slice(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| x == i as i32 + 1)
    }

    /// Cycle decomposition on `{±1, …, ±n}`, one entry per paired cycle pair or
    /// balanced cycle, ordered by smallest absolute value. Fixed points appear
    /// as paired cycles of length 1.
    pub fn cycles(&self) -> Vec<SignedCycle> {
        let n = self.n();
        let slot = |x: i32| 2 * (x.unsigned_abs() as usize - 1) + usize::from(x < 0);
        let mut seen = vec![false; 2 * n];
        let mut out = Vec::new();
        for a in 1..=n as i32 {
            if seen[slot(a)] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = a;
            while !seen[slot(x)] {
                seen[slot(x)] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.contains(&-a) {
                let half = cycle.len() / 2;
                cycle.truncate(half);
                out.push(SignedCycle::Balanced(cycle));
            } else {
                for &y in &cycle {
                    seen[slot(-y)] = true;
                }
                out.push(SignedCycle::Paired(cycle));
            }
        }
        out
    }

    pub fn paired_cycle_count(&self) -> usize {
        self.cycles()
            .iter()
            .filter(|c| matches!(c, SignedCycle::Paired(_)))
            .count()
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("e");
        }
        let join = |xs: &[i32]| {
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        for cycle in self.cycles() {
            match cycle {
                SignedCycle::Paired(c) if c.len() == 1 => {}
                SignedCycle::Paired(c) => write!(f, "(({}))", join(&c))?,
                SignedCycle::Balanced(c) => write!(f, "[{}]", join(&c))?,
            }
        }
        Ok(())
    }
}

pub(crate) fn all_signed_permutations(n: usize) -> Vec<SignedPerm> {
    let perms = all_permutations(n);
    let mut out = Vec::with_capacity(perms.len() << n);
    for p in perms {
        for mask in 0u32..(1 << n) {
            let images = p
                .iter()
                .enumerate()
                .map(|(i, &x)| {
                    let v = x as i32 + 1;
                    if mask >> i & 1 == 1 {
                        -v
                    } else {
                        v
                    }
                })
                .collect();
            out.push(SignedPerm { images });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_forms() {
        // 1 -> 2 -> -1: a balanced cycle [1,2].
        let w = SignedPerm::from_images(vec![2, -1]);
        assert_eq!(w.cycles(), vec![SignedCycle::Balanced(vec![1, 2])]);
        assert_eq!(w.to_string(), "[1,2]");
        assert_eq!(w.paired_cycle_count(), 0);

        let w = SignedPerm::from_images(vec![-2, -1, 3]);
        assert_eq!(w.to_string(), "((1,-2))");
        assert_eq!(w.paired_cycle_count(), 2);
    }

    #[test]
    fn enumeration_size() {
        assert_eq!(all_signed_permutations(3).len(), 48);
        assert_eq!(all_signed_permutations(1).len(), 2);
    }

    #[test]
    fn inverse_round_trip() {
        for w in all_signed_permutations(3) {
            assert!(w.compose(&w.inverse()).is_identity());
        }
    }
}
