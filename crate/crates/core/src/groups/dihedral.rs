use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DihedralKind {
    Rotation,
    Mirror,
}

/// An element of `I_2(m)`: the rotation `r^k` or the mirror `s_k = r^k s_0`.
///
/// Products follow `r^a r^b = r^{a+b}`, `r^a s_b = s_{a+b}`, `s_a r^b = s_{a−b}`
/// and `s_a s_b = r^{a−b}`, all indices mod `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dihedral {
    m: u32,
    kind: DihedralKind,
    index: u32,
}

impl Dihedral {
    pub fn rotation(m: u32, index: u32) -> Self {
        Dihedral {
            m,
            kind: DihedralKind::Rotation,
            index: index % m,
        }
    }

    pub fn mirror(m: u32, index: u32) -> Self {
        Dihedral {
            m,
            kind: DihedralKind::Mirror,
            index: index % m,
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn kind(&self) -> DihedralKind {
        self.kind
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn is_identity(&self) -> bool {
        self.kind == DihedralKind::Rotation && self.index == 0
    }

    pub fn compose(&self, other: &Dihedral) -> Dihedral {
        let m = self.m;
        let (a, b) = (self.index, other.index);
        match (self.kind, other.kind) {
            (DihedralKind::Rotation, DihedralKind::Rotation) => Dihedral::rotation(m, a + b),
            (DihedralKind::Rotation, DihedralKind::Mirror) => Dihedral::mirror(m, a + b),
            (DihedralKind::Mirror, DihedralKind::Rotation) => Dihedral::mirror(m, a + m - b),
            (DihedralKind::Mirror, DihedralKind::Mirror) => Dihedral::rotation(m, a + m - b),
        }
    }

    pub fn inverse(&self) -> Dihedral {
        match self.kind {
            DihedralKind::Rotation => Dihedral::rotation(self.m, self.m - self.index),
            DihedralKind::Mirror => *self,
        }
    }
}

impl fmt::Display for Dihedral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            _ if self.is_identity() => f.write_str("e"),
            DihedralKind::Rotation => write!(f, "r{}", self.index),
            DihedralKind::Mirror => write!(f, "s{}", self.index),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(m: u32) -> Vec<Dihedral> {
        (0..m)
            .map(|i| Dihedral::rotation(m, i))
            .chain((0..m).map(|i| Dihedral::mirror(m, i)))
            .collect()
    }

    #[test]
    fn group_axioms() {
        for m in [3, 4, 7] {
            let elems = all(m);
            let e = Dihedral::rotation(m, 0);
            for x in &elems {
                assert_eq!(x.compose(&x.inverse()), e);
                for y in &elems {
                    for z in &elems {
                        assert_eq!(x.compose(y).compose(z), x.compose(&y.compose(z)));
                    }
                }
            }
        }
    }

    #[test]
    fn mirrors_are_involutions() {
        for x in all(6)
            .into_iter()
            .filter(|d| d.kind() == DihedralKind::Mirror)
        {
            assert!(x.compose(&x).is_identity());
        }
    }
}
