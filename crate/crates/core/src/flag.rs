//! Reflection tiers of the standard flag and the unique factorization
//! `w = r_n ⋯ r_1` with each `r_i` in tier `i` or the identity.
//!
//! The standard flag is fixed per family. In `A_n` tier `i` is
//! `{(j i+1) : j ≤ i}`; in `B_n` it is `{[i]} ∪ {((j,i)), ((−j,i)) : j < i}`;
//! in `I_2(m)` tier 1 is the mirror `s0` and tier 2 holds the other mirrors.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::absolute_order::{claw_product, AbsoluteOrder};
use crate::groups::{Element, Family, GroupError, GroupId, Reflection};
use crate::poset::{is_spanning_subposet, GradedPoset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlagError {
    #[error("{group} has {expected} tiers, factorization has {found} factors")]
    WrongArity {
        group: GroupId,
        expected: usize,
        found: usize,
    },
    #[error("{reflection} is not in tier {tier} of {group}")]
    NotInTier {
        group: GroupId,
        tier: usize,
        reflection: Reflection,
    },
}

/// `tiers()[i − 1] = T_i − T_{i−1}` for `i = 1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionTiers {
    group: GroupId,
    tiers: Vec<Vec<Reflection>>,
}

impl ReflectionTiers {
    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn tiers(&self) -> &[Vec<Reflection>] {
        &self.tiers
    }

    /// Tier `i`, 1-based.
    pub fn tier(&self, i: usize) -> &[Reflection] {
        &self.tiers[i - 1]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.tiers.iter().map(Vec::len).collect()
    }
}

pub fn reflection_tiers(g: GroupId) -> ReflectionTiers {
    let n = g.parameter();
    let tiers = match g.family() {
        Family::A => (1..=n)
            .map(|i| {
                (1..=i)
                    .map(|j| Reflection::Transposition(j, i + 1))
                    .collect()
            })
            .collect(),
        Family::B => (1..=n)
            .map(|i| {
                let mut tier = vec![Reflection::SignFlip(i)];
                for j in 1..i {
                    tier.push(Reflection::SignedSwap {
                        i: j,
                        j: i,
                        negative: false,
                    });
                    tier.push(Reflection::SignedSwap {
                        i: j,
                        j: i,
                        negative: true,
                    });
                }
                tier
            })
            .collect(),
        Family::I2 => vec![
            vec![Reflection::DihedralMirror { m: n, index: 0 }],
            (1..n)
                .map(|index| Reflection::DihedralMirror { m: n, index })
                .collect(),
        ],
    };
    ReflectionTiers { group: g, tiers }
}

/// A tier tuple `(r_n, …, r_1)`; `None` is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    group: GroupId,
    factors: Vec<Option<Reflection>>,
}

impl Factorization {
    /// `factors[0]` is `r_n`, the last entry is `r_1`. Tier membership is checked by [`phi`].
    pub fn new(group: GroupId, factors: Vec<Option<Reflection>>) -> Self {
        Factorization { group, factors }
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn factors(&self) -> &[Option<Reflection>] {
        &self.factors
    }

    /// `r_i`, 1-based.
    pub fn factor(&self, i: usize) -> Option<Reflection> {
        self.factors[self.factors.len() - i]
    }

    /// Number of non-identity factors.
    pub fn length(&self) -> usize {
        self.factors.iter().filter(|r| r.is_some()).count()
    }
}

impl fmt::Display for Factorization {
    /// Factors left to right as `r_n … r_1`, identities as `e`: `(2 3)(1 2)`, `e(1 2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.factors {
            match r {
                Some(t) => write!(f, "{t}")?,
                None => f.write_str("e")?,
            }
        }
        Ok(())
    }
}

/// The tier factorization of `w`, found by peeling `r_n` (the unique tier-`n`
/// reflection that moves the top facet back into place) and recursing on `r_n w`.
pub fn factorize(w: &Element) -> Factorization {
    let g = w.group();
    let n = g.rank();
    let mut factors = vec![None; n];
    let mut rest = w.clone();
    for i in (1..=n).rev() {
        let r = match &rest {
            Element::A(p) => {
                let x = p.image(i) as u32 + 1;
                (x != i as u32 + 1).then_some(Reflection::Transposition(x, i as u32 + 1))
            }
            Element::B(p) => {
                let i = i as i32;
                match p.apply(i) {
                    x if x == i => None,
                    x if x == -i => Some(Reflection::SignFlip(i as u32)),
                    x => Some(Reflection::SignedSwap {
                        i: x.unsigned_abs(),
                        j: i as u32,
                        negative: x < 0,
                    }),
                }
            }
            Element::I2(d) => {
                let m = d.m();
                if i == 2 {
                    (d.index() != 0).then_some(Reflection::DihedralMirror {
                        m,
                        index: d.index(),
                    })
                } else {
                    (!d.is_identity()).then_some(Reflection::DihedralMirror { m, index: 0 })
                }
            }
        };
        if let Some(t) = r {
            let t = t.element(g).expect("tier reflection lives in the group");
            rest = t.compose(&rest).expect("same group");
        }
        factors[n - i] = r;
    }
    debug_assert!(rest.is_identity());
    Factorization { group: g, factors }
}

/// `φ(r_n, …, r_1) = r_n ⋯ r_1`, with `r_1` acting first.
pub fn phi(f: &Factorization) -> Result<Element, FlagError> {
    let g = f.group;
    let tiers = reflection_tiers(g);
    if f.factors.len() != tiers.tiers.len() {
        return Err(FlagError::WrongArity {
            group: g,
            expected: tiers.tiers.len(),
            found: f.factors.len(),
        });
    }
    let n = f.factors.len();
    let mut acc = g.identity();
    for (pos, r) in f.factors.iter().enumerate() {
        let tier = n - pos;
        if let Some(t) = r {
            if !tiers.tier(tier).contains(t) {
                return Err(FlagError::NotInTier {
                    group: g,
                    tier,
                    reflection: *t,
                });
            }
            acc = acc
                .compose(&t.element(g).expect("tier reflection"))
                .expect("same group");
        }
    }
    Ok(acc)
}

/// Checks that the absolute length of every element equals the number of
/// non-identity factors in its tier factorization.
pub fn verify_length_formula(g: GroupId, limit: u64) -> Result<bool, GroupError> {
    Ok(g.elements(limit)?
        .iter()
        .all(|w| factorize(w).length() == w.absolute_length()))
}

/// Outcome of embedding the claw product into the absolute order via `φ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct EmbeddingCheck {
    pub bijective: bool,
    pub rank_preserving: bool,
    pub covers_transported: bool,
    pub spanning_subposet: bool,
}

impl EmbeddingCheck {
    pub fn all_hold(&self) -> bool {
        self.bijective && self.rank_preserving && self.covers_transported && self.spanning_subposet
    }
}

#[derive(Debug, Clone)]
pub struct Embedding {
    /// The claw product with tier-tuple labels.
    pub product: GradedPoset<Factorization>,
    /// The same poset relabelled by `φ`.
    pub image: GradedPoset<Element>,
    pub check: EmbeddingCheck,
}

impl Embedding {
    /// `φ` of product vertex `v`.
    pub fn map(&self, v: usize) -> &Element {
        self.image.label(v)
    }
}

/// Relabels the claw product by `φ` and checks it against `order`.
pub fn embed_into(order: &AbsoluteOrder) -> Embedding {
    let g = order.group();
    let product = claw_product(g);
    let image = product.map_labels(|f| phi(f).expect("claw product tuples respect tiers"));
    let abs = order.poset();

    let targets: Vec<Option<usize>> = image.labels().iter().map(|w| order.index_of(w)).collect();
    let distinct: HashSet<usize> = targets.iter().flatten().copied().collect();
    let bijective = targets.iter().all(Option::is_some)
        && distinct.len() == abs.len()
        && image.len() == abs.len();

    let rank_preserving =
        (0..image.len()).all(|v| image.label(v).absolute_length() == image.rank(v));

    let abs_covers: HashSet<(usize, usize)> = abs.covers().iter().copied().collect();
    let covers_transported = bijective
        && image
            .covers()
            .iter()
            .all(|&(x, y)| abs_covers.contains(&(targets[x].unwrap(), targets[y].unwrap())));

    let spanning_subposet = is_spanning_subposet(&image, abs);
    Embedding {
        product,
        image,
        check: EmbeddingCheck {
            bijective,
            rank_preserving,
            covers_transported,
            spanning_subposet,
        },
    }
}

pub fn embed_claw_product(g: GroupId, limit: u64) -> Result<Embedding, GroupError> {
    Ok(embed_into(&AbsoluteOrder::build(g, limit)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::DEFAULT_MAX_GROUP_ORDER;

    fn el(text: &str, g: GroupId) -> Element {
        Element::parse(text, g).unwrap()
    }

    /// Every tier tuple of `g`, in no particular order.
    fn all_tuples(g: GroupId) -> Vec<Factorization> {
        let tiers = reflection_tiers(g);
        let mut tuples: Vec<Vec<Option<Reflection>>> = vec![vec![]];
        for tier in tiers.tiers().iter().rev() {
            let choices: Vec<Option<Reflection>> = std::iter::once(None)
                .chain(tier.iter().copied().map(Some))
                .collect();
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    choices.iter().map(move |c| {
                        let mut t = t.clone();
                        t.push(*c);
                        t
                    })
                })
                .collect();
        }
        tuples
            .into_iter()
            .map(|f| Factorization::new(g, f))
            .collect()
    }

    /// Oracle: all tier tuples whose product is `w`, by exhaustive search.
    fn exhaustive_factorizations(w: &Element) -> Vec<Factorization> {
        all_tuples(w.group())
            .into_iter()
            .filter(|f| phi(f).unwrap() == *w)
            .collect()
    }

    #[test]
    fn tiers_match_the_standard_flag() {
        let show = |g: GroupId| -> Vec<Vec<String>> {
            reflection_tiers(g)
                .tiers()
                .iter()
                .map(|t| t.iter().map(|r| r.to_string()).collect())
                .collect()
        };
        assert_eq!(
            show(GroupId::a(2)),
            vec![vec!["(1 2)"], vec!["(1 3)", "(2 3)"]]
        );
        assert_eq!(
            show(GroupId::b(2)),
            vec![vec!["[1]"], vec!["[2]", "((1,2))", "((1,-2))"]]
        );
        assert_eq!(reflection_tiers(GroupId::b(3)).sizes(), vec![1, 3, 5]);
        assert_eq!(reflection_tiers(GroupId::i2(6)).sizes(), vec![1, 5]);
    }

    #[test]
    fn tier_sizes_follow_degrees() {
        for g in [GroupId::a(5), GroupId::b(5), GroupId::i2(9)] {
            let tiers = reflection_tiers(g);
            let expected: Vec<usize> = g.degrees().iter().map(|&d| d as usize - 1).collect();
            assert_eq!(tiers.sizes(), expected);
            let mut all: Vec<Reflection> = tiers.tiers().concat();
            all.sort();
            let mut refl = g.reflections();
            refl.sort();
            assert_eq!(all, refl);
        }
    }

    #[test]
    fn factorization_examples() {
        let g = GroupId::a(2);
        assert_eq!(factorize(&g.identity()).to_string(), "ee");
        let f = factorize(&el("(1 3 2)", g));
        assert_eq!(f.to_string(), "(2 3)(1 2)");
        assert_eq!(f.factor(2), Some(Reflection::Transposition(2, 3)));
        assert_eq!(f.factor(1), Some(Reflection::Transposition(1, 2)));
        assert_eq!(
            exhaustive_factorizations(&el("(1 3 2)", g)),
            vec![f.clone()]
        );
        assert_eq!(phi(&f).unwrap(), el("(1 3 2)", g));

        let g = GroupId::b(2);
        assert_eq!(factorize(&el("[2]", g)).to_string(), "[2]e");
    }

    #[test]
    fn greedy_peel_agrees_with_exhaustive_search() {
        for g in [
            GroupId::a(1),
            GroupId::a(2),
            GroupId::a(3),
            GroupId::b(1),
            GroupId::b(2),
            GroupId::b(3),
            GroupId::i2(5),
        ] {
            for w in g.elements(DEFAULT_MAX_GROUP_ORDER).unwrap() {
                assert_eq!(
                    exhaustive_factorizations(&w),
                    vec![factorize(&w)],
                    "{g} {w}"
                );
            }
        }
    }

    #[test]
    fn phi_rejects_out_of_tier_factors() {
        let g = GroupId::a(2);
        let bad = Factorization::new(g, vec![Some(Reflection::Transposition(1, 2)), None]);
        assert!(matches!(
            phi(&bad),
            Err(FlagError::NotInTier { tier: 2, .. })
        ));
        let short = Factorization::new(g, vec![None]);
        assert!(matches!(phi(&short), Err(FlagError::WrongArity { .. })));
        assert!(phi(&Factorization::new(g, vec![None, None]))
            .unwrap()
            .is_identity());
        let top_only = Factorization::new(g, vec![Some(Reflection::Transposition(1, 3)), None]);
        assert_eq!(phi(&top_only).unwrap(), el("(1 3)", g));
    }

    #[test]
    fn length_formula() {
        for g in [GroupId::a(1), GroupId::a(3), GroupId::b(3), GroupId::i2(7)] {
            assert!(verify_length_formula(g, DEFAULT_MAX_GROUP_ORDER).unwrap());
        }
    }

    #[test]
    fn round_trips_over_tuples() {
        for g in [GroupId::a(3), GroupId::b(3)] {
            for f in all_tuples(g) {
                assert_eq!(factorize(&phi(&f).unwrap()), f);
            }
        }
    }

    #[test]
    fn unique_facet_moving_reflection() {
        for n in 1..=5u32 {
            let g = GroupId::a(n);
            let top = reflection_tiers(g);
            for j in 1..=n as i32 {
                let hits = top
                    .tier(n as usize)
                    .iter()
                    .filter(|t| t.apply(j) == n as i32 + 1)
                    .count();
                assert_eq!(hits, 1);
            }
            let g = GroupId::b(n);
            let top = reflection_tiers(g);
            let n = n as i32;
            for v in (-n..=n).filter(|&v| v != 0 && v != n) {
                let hits = top
                    .tier(n as usize)
                    .iter()
                    .filter(|t| t.apply(v) == n)
                    .count();
                assert_eq!(hits, 1, "B{n} value {v}");
            }
        }
    }

    #[test]
    fn embeddings() {
        let emb = embed_claw_product(GroupId::a(2), DEFAULT_MAX_GROUP_ORDER).unwrap();
        assert!(emb.check.all_hold());
        let v = emb
            .product
            .labels()
            .iter()
            .position(|f| f.to_string() == "(2 3)(1 2)")
            .unwrap();
        assert_eq!(emb.map(v).to_string(), "(1 3 2)");
        let below = emb.product.lower_covers(v);
        assert!(below.iter().any(|&u| emb.map(u).to_string() == "(1 2)"));

        let emb = embed_claw_product(GroupId::a(1), DEFAULT_MAX_GROUP_ORDER).unwrap();
        assert!(emb.check.all_hold());
        let order = AbsoluteOrder::build(GroupId::a(1), 10).unwrap();
        assert!(is_spanning_subposet(order.poset(), &emb.image));

        let emb = embed_claw_product(GroupId::b(2), DEFAULT_MAX_GROUP_ORDER).unwrap();
        assert!(emb.check.all_hold());
        assert_eq!(emb.image.len(), 8);
        // C_4 × C_2: 3 claw edges per C_2 vertex plus 1 per C_4 vertex.
        assert_eq!(emb.image.covers().len(), 3 * 2 + 4);
    }
}
