use std::fmt;

/// A permutation of `{0, …, degree−1}` stored by images; printed 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Box<[u32]>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Panics unless `images` is a bijection of `0..images.len()`.
    pub fn from_zero_based(images: Vec<u32>) -> Self {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            assert!(
                (x as usize) < images.len() && !std::mem::replace(&mut seen[x as usize], true),
                "not a permutation: {images:?}"
            );
        }
        Perm {
            images: images.into_boxed_slice(),
        }
    }

    pub(crate) fn transposition(degree: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        images.swap(i, j);
        Perm {
            images: images.into_boxed_slice(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Zero-based image of zero-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        Perm {
            images: other
                .images
                .iter()
                .map(|&x| self.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm {
            images: inv.into_boxed_slice(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &x)| i == x as usize)
    }

    /// Cycles, fixed points included, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles().len()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("e");
        }
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            f.write_str("(")?;
            for (pos, x) in cycle.iter().enumerate() {
                if pos > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// All permutations of `0..degree` in lexicographic order.
pub(crate) fn all_permutations(degree: usize) -> Vec<Vec<u32>> {
    let mut current: Vec<u32> = (0..degree as u32).collect();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    out
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_factorial_many() {
        assert_eq!(all_permutations(1).len(), 1);
        assert_eq!(all_permutations(4).len(), 24);
        let mut all = all_permutations(5);
        all.dedup();
        assert_eq!(all.len(), 120);
    }

    #[test]
    fn cycle_text() {
        let p = Perm::from_zero_based(vec![2, 0, 1, 4, 3]);
        assert_eq!(p.to_string(), "(1 3 2)(4 5)");
        assert_eq!(p.cycle_count(), 2);
        assert_eq!(Perm::identity(3).to_string(), "e");
    }

    #[test]
    #[should_panic]
    fn rejects_non_bijection() {
        Perm::from_zero_based(vec![0, 0, 1]);
    }
}
