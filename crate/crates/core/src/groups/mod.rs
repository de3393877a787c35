//! Exact arithmetic in the Coxeter groups `A_n` (as `S_{n+1}`), `B_n` (as
//! signed permutations of `{±1, …, ±n}`) and the dihedral groups `I_2(m)`.
//!
//! Composition uses the left-action convention throughout: `u.compose(&v)` is
//! the map `x ↦ u(v(x))`, so the right factor acts first. Text I/O is 1-based
//! cycle notation, see [`Element::parse`].

mod dihedral;
mod parse;
mod perm;
mod signed;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use dihedral::{Dihedral, DihedralKind};
pub use parse::ParseError;
pub use perm::Perm;
pub use signed::SignedPerm;

/// Largest group that the enumerating operations will touch unless told otherwise.
pub const DEFAULT_MAX_GROUP_ORDER: u64 = 50_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid group {0}")]
    InvalidGroup(String),
    #[error("elements of {left} and {right} cannot be combined")]
    Mismatch { left: GroupId, right: GroupId },
    #[error("{group} has {order} elements, above the limit of {limit}")]
    TooLarge {
        group: GroupId,
        order: String,
        limit: u64,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    I2,
}

/// One of `A_n`, `B_n` (`n ≥ 1`) or `I_2(m)` (`m ≥ 3`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupId {
    family: Family,
    parameter: u32,
}

impl GroupId {
    pub fn new(family: Family, parameter: u32) -> Result<Self, GroupError> {
        let ok = match family {
            Family::A | Family::B => parameter >= 1,
            Family::I2 => parameter >= 3,
        };
        if ok {
            Ok(GroupId { family, parameter })
        } else {
            Err(GroupError::InvalidGroup(format!(
                "{:?} with parameter {parameter}",
                family
            )))
        }
    }

    /// `A_n`. Panics if `n == 0`.
    pub fn a(n: u32) -> Self {
        Self::new(Family::A, n).expect("A_n needs n >= 1")
    }

    /// `B_n`. Panics if `n == 0`.
    pub fn b(n: u32) -> Self {
        Self::new(Family::B, n).expect("B_n needs n >= 1")
    }

    /// `I_2(m)`. Panics if `m < 3`.
    pub fn i2(m: u32) -> Self {
        Self::new(Family::I2, m).expect("I_2(m) needs m >= 3")
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn parameter(&self) -> u32 {
        self.parameter
    }

    /// Coxeter rank: `n` for `A_n` and `B_n`, 2 for dihedral groups.
    pub fn rank(&self) -> usize {
        match self.family {
            Family::A | Family::B => self.parameter as usize,
            Family::I2 => 2,
        }
    }

    /// The degree sequence `(d_1, …, d_n)`.
    pub fn degrees(&self) -> Vec<u32> {
        let n = self.parameter;
        match self.family {
            Family::A => (1..=n).map(|i| i + 1).collect(),
            Family::B => (1..=n).map(|i| 2 * i).collect(),
            Family::I2 => vec![2, n],
        }
    }

    /// Group order, or `None` if it does not fit in a `u64`.
    pub fn order(&self) -> Option<u64> {
        let n = self.parameter as u64;
        match self.family {
            Family::A => (1..=n + 1).try_fold(1u64, |acc, i| acc.checked_mul(i)),
            Family::B => (1..=n).try_fold(1u64, |acc, i| acc.checked_mul(2 * i)),
            Family::I2 => Some(2 * n),
        }
    }

    /// Errors unless the group has at most `limit` elements.
    pub fn check_order(&self, limit: u64) -> Result<u64, GroupError> {
        match self.order() {
            Some(order) if order <= limit => Ok(order),
            order => Err(GroupError::TooLarge {
                group: *self,
                order: order.map_or_else(|| "more than 2^64".to_string(), |o| o.to_string()),
                limit,
            }),
        }
    }

    pub fn identity(&self) -> Element {
        match self.family {
            Family::A => Element::A(Perm::identity(self.parameter as usize + 1)),
            Family::B => Element::B(SignedPerm::identity(self.parameter as usize)),
            Family::I2 => Element::I2(Dihedral::rotation(self.parameter, 0)),
        }
    }

    /// All reflections, in a fixed order (lexicographic in the 1-based indices).
    pub fn reflections(&self) -> Vec<Reflection> {
        let n = self.parameter;
        match self.family {
            Family::A => {
                let mut out = Vec::new();
                for i in 1..=n + 1 {
                    for j in i + 1..=n + 1 {
                        out.push(Reflection::Transposition(i, j));
                    }
                }
                out
            }
            Family::B => {
                let mut out: Vec<_> = (1..=n).map(Reflection::SignFlip).collect();
                for i in 1..=n {
                    for j in i + 1..=n {
                        out.push(Reflection::SignedSwap {
                            i,
                            j,
                            negative: false,
                        });
                        out.push(Reflection::SignedSwap {
                            i,
                            j,
                            negative: true,
                        });
                    }
                }
                out
            }
            Family::I2 => (0..n)
                .map(|index| Reflection::DihedralMirror { m: n, index })
                .collect(),
        }
    }

    /// Every element of the group, refusing groups larger than `limit`.
    pub fn elements(&self, limit: u64) -> Result<Vec<Element>, GroupError> {
        self.check_order(limit)?;
        let n = self.parameter as usize;
        Ok(match self.family {
            Family::A => perm::all_permutations(n + 1)
                .into_iter()
                .map(|p| Element::A(Perm::from_zero_based(p)))
                .collect(),
            Family::B => signed::all_signed_permutations(n)
                .into_iter()
                .map(Element::B)
                .collect(),
            Family::I2 => {
                let m = self.parameter;
                (0..m)
                    .map(|i| Element::I2(Dihedral::rotation(m, i)))
                    .chain((0..m).map(|i| Element::I2(Dihedral::mirror(m, i))))
                    .collect()
            }
        })
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A => write!(f, "a{}", self.parameter),
            Family::B => write!(f, "b{}", self.parameter),
            Family::I2 => write!(f, "i2:{}", self.parameter),
        }
    }
}

impl FromStr for GroupId {
    type Err = GroupError;

    /// Accepts `a<n>`, `b<n>` and `i2:<m>`, case-insensitively.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        let bad = || GroupError::InvalidGroup(format!("{s:?} (expected a<n>, b<n> or i2:<m>)"));
        let (family, digits) = if let Some(rest) = lower.strip_prefix("i2:") {
            (Family::I2, rest)
        } else if let Some(rest) = lower.strip_prefix('a') {
            (Family::A, rest)
        } else if let Some(rest) = lower.strip_prefix('b') {
            (Family::B, rest)
        } else {
            return Err(bad());
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let parameter: u32 = digits.parse().map_err(|_| bad())?;
        GroupId::new(family, parameter)
    }
}

/// An element of one of the supported groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    A(Perm),
    B(SignedPerm),
    I2(Dihedral),
}

impl Element {
    pub fn group(&self) -> GroupId {
        match self {
            Element::A(p) => GroupId::a(p.degree() as u32 - 1),
            Element::B(p) => GroupId::b(p.n() as u32),
            Element::I2(d) => GroupId::i2(d.m()),
        }
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &Element) -> Result<Element, GroupError> {
        let mismatch = || GroupError::Mismatch {
            left: self.group(),
            right: other.group(),
        };
        match (self, other) {
            (Element::A(u), Element::A(v)) if u.degree() == v.degree() => {
                Ok(Element::A(u.compose(v)))
            }
            (Element::B(u), Element::B(v)) if u.n() == v.n() => Ok(Element::B(u.compose(v))),
            (Element::I2(u), Element::I2(v)) if u.m() == v.m() => Ok(Element::I2(u.compose(v))),
            _ => Err(mismatch()),
        }
    }

    pub fn inverse(&self) -> Element {
        match self {
            Element::A(p) => Element::A(p.inverse()),
            Element::B(p) => Element::B(p.inverse()),
            Element::I2(d) => Element::I2(d.inverse()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Element::A(p) => p.is_identity(),
            Element::B(p) => p.is_identity(),
            Element::I2(d) => d.is_identity(),
        }
    }

    /// Reflection length, by the cycle-type closed forms: `(n+1) − #cycles` in
    /// `A_n`, `n − #paired cycles` in `B_n`, and 0/1/2 in `I_2(m)`.
    pub fn absolute_length(&self) -> usize {
        match self {
            Element::A(p) => p.degree() - p.cycle_count(),
            Element::B(p) => p.n() - p.paired_cycle_count(),
            Element::I2(d) => match d.kind() {
                DihedralKind::Mirror => 1,
                DihedralKind::Rotation if d.is_identity() => 0,
                DihedralKind::Rotation => 2,
            },
        }
    }

    /// Parses cycle notation in the group `g`, e.g. `"(1 3 2)"`, `"[1]((1,-2))"`,
    /// `"r2s1"`. Juxtaposed factors are composed with the rightmost acting first.
    pub fn parse(text: &str, g: GroupId) -> Result<Element, ParseError> {
        parse::parse_element(text, g)
    }

    /// The reflection this element is, if any.
    pub fn as_reflection(&self) -> Option<Reflection> {
        if self.absolute_length() != 1 {
            return None;
        }
        match self {
            Element::A(p) => {
                let moved: Vec<u32> = (0..p.degree())
                    .filter(|&i| p.image(i) != i)
                    .map(|i| i as u32 + 1)
                    .collect();
                Some(Reflection::Transposition(moved[0], moved[1]))
            }
            Element::B(p) => {
                let n = p.n() as i32;
                let moved: Vec<i32> = (1..=n).filter(|&i| p.apply(i) != i).collect();
                match moved.as_slice() {
                    [i] => Some(Reflection::SignFlip(*i as u32)),
                    [i, j] => Some(Reflection::SignedSwap {
                        i: *i as u32,
                        j: *j as u32,
                        negative: p.apply(*i) < 0,
                    }),
                    _ => None,
                }
            }
            Element::I2(d) => Some(Reflection::DihedralMirror {
                m: d.m(),
                index: d.index(),
            }),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::A(p) => p.fmt(f),
            Element::B(p) => p.fmt(f),
            Element::I2(d) => d.fmt(f),
        }
    }
}

/// Left-action composition `u ∘ v`.
pub fn compose(u: &Element, v: &Element) -> Result<Element, GroupError> {
    u.compose(v)
}

pub fn parse_element(text: &str, g: GroupId) -> Result<Element, ParseError> {
    Element::parse(text, g)
}

pub fn format_element(w: &Element) -> String {
    w.to_string()
}

/// A reflection, with 1-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reflection {
    /// `(i j)` in `A_n`, `i < j`.
    Transposition(u32, u32),
    /// `[i]` in `B_n`.
    SignFlip(u32),
    /// `((i,j))` or, when `negative`, `((i,-j))` in `B_n`; `i < j`.
    SignedSwap { i: u32, j: u32, negative: bool },
    /// The mirror `s<index>` of `I_2(m)`.
    DihedralMirror { m: u32, index: u32 },
}

impl Reflection {
    /// The reflection as an element of `g`; `None` if it does not live there.
    pub fn element(&self, g: GroupId) -> Option<Element> {
        let n = g.parameter();
        match (*self, g.family()) {
            (Reflection::Transposition(i, j), Family::A) if 1 <= i && i < j && j <= n + 1 => {
                Some(Element::A(Perm::transposition(
                    n as usize + 1,
                    i as usize - 1,
                    j as usize - 1,
                )))
            }
            (Reflection::SignFlip(i), Family::B) if 1 <= i && i <= n => {
                Some(Element::B(SignedPerm::sign_flip(n as usize, i)))
            }
            (Reflection::SignedSwap { i, j, negative }, Family::B) if 1 <= i && i < j && j <= n => {
                Some(Element::B(SignedPerm::signed_swap(
                    n as usize, i, j, negative,
                )))
            }
            (Reflection::DihedralMirror { m, index }, Family::I2) if m == n && index < m => {
                Some(Element::I2(Dihedral::mirror(m, index)))
            }
            _ => None,
        }
    }

    /// Image of the 1-based (signed, for type B) point `x`.
    pub fn apply(&self, x: i32) -> i32 {
        match *self {
            Reflection::Transposition(i, j) => {
                let (i, j) = (i as i32, j as i32);
                if x == i {
                    j
                } else if x == j {
                    i
                } else {
                    x
                }
            }
            Reflection::SignFlip(i) => {
                if x.unsigned_abs() == i {
                    -x
                } else {
                    x
                }
            }
            Reflection::SignedSwap { i, j, negative } => {
                let s = if negative { -1 } else { 1 };
                let sign = x.signum();
                match x.unsigned_abs() {
                    a if a == i => sign * s * j as i32,
                    a if a == j => sign * s * i as i32,
                    _ => x,
                }
            }
            Reflection::DihedralMirror { .. } => x,
        }
    }
}

impl fmt::Display for Reflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Reflection::Transposition(i, j) => write!(f, "({i} {j})"),
            Reflection::SignFlip(i) => write!(f, "[{i}]"),
            Reflection::SignedSwap {
                i,
                j,
                negative: false,
            } => write!(f, "(({i},{j}))"),
            Reflection::SignedSwap {
                i,
                j,
                negative: true,
            } => write!(f, "(({i},-{j}))"),
            Reflection::DihedralMirror { index, .. } => write!(f, "s{index}"),
        }
    }
}

/// Breadth-first distances from the identity in the Cayley graph generated by
/// the reflections of `g`.
pub fn cayley_distances(g: GroupId, limit: u64) -> Result<HashMap<Element, usize>, GroupError> {
    let order = g.check_order(limit)?;
    let gens: Vec<Element> = g
        .reflections()
        .iter()
        .map(|t| t.element(g).expect("reflection of its own group"))
        .collect();
    let mut dist = HashMap::with_capacity(order as usize);
    let mut queue = VecDeque::new();
    let e = g.identity();
    dist.insert(e.clone(), 0);
    queue.push_back(e);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        for t in &gens {
            let next = t.compose(&w)?;
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    Ok(dist)
}

/// Reference absolute length: BFS distance from `e`, for groups of at most
/// [`DEFAULT_MAX_GROUP_ORDER`] elements.
pub fn absolute_length_bfs(w: &Element) -> Result<usize, GroupError> {
    let dist = cayley_distances(w.group(), DEFAULT_MAX_GROUP_ORDER)?;
    Ok(dist[w])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(text: &str, n: u32) -> Element {
        Element::parse(text, GroupId::a(n)).unwrap()
    }

    fn b(text: &str, n: u32) -> Element {
        Element::parse(text, GroupId::b(n)).unwrap()
    }

    #[test]
    fn group_ids_parse_and_print() {
        assert_eq!("a3".parse::<GroupId>().unwrap(), GroupId::a(3));
        assert_eq!("B2".parse::<GroupId>().unwrap(), GroupId::b(2));
        assert_eq!("i2:7".parse::<GroupId>().unwrap(), GroupId::i2(7));
        for bad in ["", "a", "a0", "c3", "i2:2", "i27", "a-1", "b 2"] {
            assert!(bad.parse::<GroupId>().is_err(), "{bad}");
        }
        assert_eq!(GroupId::i2(7).to_string(), "i2:7");
    }

    #[test]
    fn orders_and_degrees() {
        assert_eq!(GroupId::a(6).order(), Some(5040));
        assert_eq!(GroupId::b(5).order(), Some(3840));
        assert_eq!(GroupId::i2(12).order(), Some(24));
        assert_eq!(GroupId::b(3).degrees(), vec![2, 4, 6]);
        assert_eq!(GroupId::i2(5).degrees(), vec![2, 5]);
        assert!(GroupId::a(8).check_order(DEFAULT_MAX_GROUP_ORDER).is_err());
    }

    #[test]
    fn compose_left_action() {
        let e = GroupId::a(2).identity();
        let w = a("(1 2 3)", 2);
        assert_eq!(e.compose(&w).unwrap(), w);
        assert_eq!(
            a("(2 3)", 2).compose(&a("(1 2)", 2)).unwrap(),
            a("(1 3 2)", 2)
        );
        let flip = b("[1]", 2);
        assert!(flip.compose(&flip).unwrap().is_identity());
    }

    #[test]
    fn compose_rejects_mixed_groups() {
        let err = a("(1 2)", 2).compose(&a("(1 2)", 3)).unwrap_err();
        assert!(matches!(err, GroupError::Mismatch { .. }));
        assert!(a("e", 2).compose(&b("e", 2)).is_err());
    }

    #[test]
    fn inverses() {
        assert!(GroupId::b(3).identity().inverse().is_identity());
        assert_eq!(a("(1 2 3)", 2).inverse(), a("(1 3 2)", 2));
        assert_eq!(b("[1]", 2).inverse(), b("[1]", 2));
    }

    #[test]
    fn reflection_sets() {
        let names: Vec<String> = GroupId::a(2)
            .reflections()
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(names, ["(1 2)", "(1 3)", "(2 3)"]);
        let names: Vec<String> = GroupId::b(2)
            .reflections()
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(names, ["[1]", "[2]", "((1,2))", "((1,-2))"]);
        assert_eq!(GroupId::i2(5).reflections().len(), 5);
        for n in 1..=6 {
            let expected: u32 = GroupId::a(n).degrees().iter().map(|d| d - 1).sum();
            assert_eq!(GroupId::a(n).reflections().len() as u32, expected);
            assert_eq!(expected, n * (n + 1) / 2);
            let expected: u32 = GroupId::b(n).degrees().iter().map(|d| d - 1).sum();
            assert_eq!(GroupId::b(n).reflections().len() as u32, expected);
            assert_eq!(expected, n * n);
        }
    }

    #[test]
    fn reflections_are_involutions_of_length_one() {
        for g in [GroupId::a(4), GroupId::b(4), GroupId::i2(7)] {
            for t in g.reflections() {
                let w = t.element(g).unwrap();
                assert!(w.compose(&w).unwrap().is_identity());
                assert_eq!(w.absolute_length(), 1);
                assert_eq!(w.as_reflection(), Some(t));
                assert_eq!(w.to_string(), t.to_string());
            }
        }
    }

    #[test]
    fn reflection_apply_matches_element() {
        let g = GroupId::b(3);
        for t in g.reflections() {
            let Element::B(w) = t.element(g).unwrap() else {
                unreachable!()
            };
            for x in [-3, -2, -1, 1, 2, 3] {
                assert_eq!(t.apply(x), w.apply(x));
            }
        }
    }

    #[test]
    fn closed_form_lengths() {
        assert_eq!(GroupId::a(2).identity().absolute_length(), 0);
        assert_eq!(a("(1 2 3)", 2).absolute_length(), 2);
        assert_eq!(b("[1,2]", 2).absolute_length(), 2);
        assert_eq!(b("((1,2))[1]", 2).absolute_length(), 2);
    }

    #[test]
    fn bfs_lengths() {
        let g = GroupId::b(2);
        assert_eq!(absolute_length_bfs(&g.identity()).unwrap(), 0);
        for t in g.reflections() {
            assert_eq!(absolute_length_bfs(&t.element(g).unwrap()).unwrap(), 1);
        }
        assert_eq!(absolute_length_bfs(&b("((1,2))[1]", 2)).unwrap(), 2);
        assert_eq!(absolute_length_bfs(&b("[1,2]", 2)).unwrap(), 2);
        assert!(matches!(
            absolute_length_bfs(&GroupId::a(8).identity()),
            Err(GroupError::TooLarge { .. })
        ));
    }

    #[test]
    fn closed_forms_agree_with_bfs() {
        for g in [
            GroupId::a(1),
            GroupId::a(3),
            GroupId::a(4),
            GroupId::b(1),
            GroupId::b(3),
            GroupId::i2(3),
            GroupId::i2(8),
        ] {
            let dist = cayley_distances(g, DEFAULT_MAX_GROUP_ORDER).unwrap();
            assert_eq!(dist.len() as u64, g.order().unwrap());
            for (w, d) in &dist {
                assert_eq!(w.absolute_length(), *d, "{g} {w}");
            }
        }
    }

    #[test]
    fn signed_swap_example() {
        let Element::B(w) = b("((1,-2))", 2) else {
            unreachable!()
        };
        assert_eq!(w.apply(1), -2);
        assert_eq!(w.apply(-2), 1);
        assert_eq!(w.apply(2), -1);
    }

    #[test]
    fn product_text_composes_left_action() {
        assert_eq!(a("(1 2)(2 3)", 2), a("(1 2 3)", 2));
        let pointwise = a("(1 2)", 2).compose(&a("(2 3)", 2)).unwrap();
        assert_eq!(pointwise, a("(1 2 3)", 2));
    }
}
