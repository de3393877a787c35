//! The absolute order on a group, claws, and the product of claws indexed by
//! the reflection tiers of the standard flag.

use std::collections::HashMap;

use thiserror::Error;

use crate::flag::{reflection_tiers, Factorization};
use crate::groups::{Element, GroupError, GroupId, Reflection};
use crate::poset::{product_with, GradedPoset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("a claw needs k >= 2, got {0}")]
pub struct ClawSizeError(pub usize);

/// A group's absolute order together with its element index.
#[derive(Debug, Clone)]
pub struct AbsoluteOrder {
    group: GroupId,
    poset: GradedPoset<Element>,
    index: HashMap<Element, usize>,
}

impl AbsoluteOrder {
    /// Vertices are the group elements ranked by absolute length; `w` is
    /// covered by `tw` whenever `t` is a reflection and `l(tw) = l(w) + 1`.
    pub fn build(g: GroupId, limit: u64) -> Result<Self, GroupError> {
        let elements = g.elements(limit)?;
        let ranks: Vec<usize> = elements.iter().map(Element::absolute_length).collect();
        let index: HashMap<Element, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let reflections: Vec<Element> = g
            .reflections()
            .iter()
            .map(|t| t.element(g).expect("reflection of its own group"))
            .collect();
        let mut covers = Vec::new();
        for (v, w) in elements.iter().enumerate() {
            for t in &reflections {
                let u = index[&t.compose(w)?];
                if ranks[u] == ranks[v] + 1 {
                    covers.push((v, u));
                }
            }
        }
        let poset = GradedPoset::new(elements, ranks, covers)
            .expect("absolute order covers raise length by one");
        Ok(AbsoluteOrder {
            group: g,
            poset,
            index,
        })
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn poset(&self) -> &GradedPoset<Element> {
        &self.poset
    }

    pub fn index_of(&self, w: &Element) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn element(&self, v: usize) -> &Element {
        self.poset.label(v)
    }

    /// `π ≤ μ` by the length-additivity definition `l(μ) = l(π) + l(π⁻¹μ)`,
    /// evaluated directly rather than through the covers.
    pub fn leq_by_length(pi: &Element, mu: &Element) -> Result<bool, GroupError> {
        let step = pi.inverse().compose(mu)?;
        Ok(mu.absolute_length() == pi.absolute_length() + step.absolute_length())
    }
}

pub fn build_absolute_order(g: GroupId) -> Result<AbsoluteOrder, GroupError> {
    AbsoluteOrder::build(g, crate::groups::DEFAULT_MAX_GROUP_ORDER)
}

/// Coefficients of `∏ (1 + (d_i − 1) q)` over the degrees of `g`.
pub fn expected_rank_polynomial(g: GroupId) -> Vec<u64> {
    let mut coeffs = vec![1u64];
    for d in g.degrees() {
        let mut next = vec![0u64; coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i] += c;
            next[i + 1] += c * (d as u64 - 1);
        }
        coeffs = next;
    }
    coeffs
}

/// The `k`-claw: one bottom vertex (label 0) covered by `k − 1` tops (labels `1..k`).
pub fn claw(k: usize) -> Result<GradedPoset<usize>, ClawSizeError> {
    if k < 2 {
        return Err(ClawSizeError(k));
    }
    let ranks = std::iter::once(0)
        .chain(std::iter::repeat_n(1, k - 1))
        .collect();
    let covers = (1..k).map(|top| (0, top)).collect();
    Ok(GradedPoset::new((0..k).collect(), ranks, covers).expect("claw is a valid poset"))
}

/// A claw whose bottom is labelled `None` (the identity) and whose tops are the
/// given reflections.
fn tier_claw(tier: &[Reflection]) -> GradedPoset<Option<Reflection>> {
    let shape = claw(tier.len() + 1).expect("tiers are nonempty");
    shape.map_labels(|&v| if v == 0 { None } else { Some(tier[v - 1]) })
}

/// `C_{d_n} × ⋯ × C_{d_1}`, each vertex labelled by its tier tuple `(r_n, …, r_1)`.
pub fn claw_product(g: GroupId) -> GradedPoset<Factorization> {
    let tiers = reflection_tiers(g);
    let mut levels = tiers.tiers().iter().rev();
    let first = levels.next().expect("rank is at least one");
    let mut acc: GradedPoset<Vec<Option<Reflection>>> = tier_claw(first).map_labels(|r| vec![*r]);
    for tier in levels {
        acc = product_with(&acc, &tier_claw(tier), |prefix, r| {
            let mut v = prefix.clone();
            v.push(*r);
            v
        });
    }
    acc.map_labels(|factors| Factorization::new(g, factors.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::RankSequence;

    #[test]
    fn small_absolute_orders() {
        let a2 = build_absolute_order(GroupId::a(2)).unwrap();
        assert_eq!(a2.poset().len(), 6);
        assert_eq!(a2.poset().rank_sequence().0, vec![1, 3, 2]);
        assert_eq!(a2.poset().covers().len(), 9);

        let a1 = build_absolute_order(GroupId::a(1)).unwrap();
        assert_eq!((a1.poset().len(), a1.poset().covers().len()), (2, 1));

        let b2 = build_absolute_order(GroupId::b(2)).unwrap();
        assert_eq!(b2.poset().len(), 8);
        assert_eq!(b2.poset().rank_sequence().0, vec![1, 4, 3]);

        let i5 = build_absolute_order(GroupId::i2(5)).unwrap();
        assert_eq!(i5.poset().rank_sequence().0, vec![1, 5, 4]);
    }

    #[test]
    fn identity_is_the_minimum() {
        let order = build_absolute_order(GroupId::b(3)).unwrap();
        let e = order.index_of(&GroupId::b(3).identity()).unwrap();
        assert_eq!(order.poset().rank(e), 0);
        for v in 0..order.poset().len() {
            assert!(v == e || order.poset().less_than(e, v));
        }
    }

    #[test]
    fn guard_refuses_large_groups() {
        assert!(matches!(
            build_absolute_order(GroupId::a(8)),
            Err(GroupError::TooLarge { .. })
        ));
        assert!(AbsoluteOrder::build(GroupId::a(3), 10).is_err());
    }

    #[test]
    fn rank_polynomials() {
        assert_eq!(expected_rank_polynomial(GroupId::a(2)), vec![1, 3, 2]);
        assert_eq!(expected_rank_polynomial(GroupId::b(3)), vec![1, 9, 23, 15]);
        assert_eq!(
            expected_rank_polynomial(GroupId::a(4)),
            vec![1, 10, 35, 50, 24]
        );
        assert_eq!(
            expected_rank_polynomial(GroupId::b(4)),
            vec![1, 16, 86, 176, 105]
        );
        assert_eq!(expected_rank_polynomial(GroupId::i2(7)), vec![1, 7, 6]);
        for g in [GroupId::a(5), GroupId::b(4), GroupId::i2(9)] {
            let total: u64 = expected_rank_polynomial(g).iter().sum();
            assert_eq!(Some(total), g.order());
        }
    }

    #[test]
    fn claws() {
        let c2 = claw(2).unwrap();
        assert_eq!(c2.rank_sequence().0, vec![1, 1]);
        assert_eq!(claw(3).unwrap().rank_sequence().0, vec![1, 2]);
        assert_eq!(claw(6).unwrap().covers().len(), 5);
        assert_eq!(claw(1).unwrap_err(), ClawSizeError(1));
    }

    #[test]
    fn claw_products() {
        assert_eq!(claw_product(GroupId::a(2)).rank_sequence().0, vec![1, 3, 2]);
        assert_eq!(claw_product(GroupId::b(2)).rank_sequence().0, vec![1, 4, 3]);
        let a1 = claw_product(GroupId::a(1));
        assert_eq!(a1.len(), 2);
        assert_eq!(a1.covers().len(), 1);
        let a2 = claw_product(GroupId::a(2));
        assert_eq!(a2.covers().len(), 7);
        let bottom = a2.labels().iter().find(|f| f.length() == 0).unwrap();
        assert_eq!(bottom.to_string(), "ee");
    }

    #[test]
    fn claw_product_matches_polynomial() {
        for g in [GroupId::a(4), GroupId::b(3), GroupId::i2(6)] {
            let expected = RankSequence(expected_rank_polynomial(g));
            assert_eq!(claw_product(g).rank_sequence(), expected);
        }
    }

    #[test]
    fn covers_agree_with_length_definition() {
        let order = build_absolute_order(GroupId::a(3)).unwrap();
        let p = order.poset();
        for &(x, y) in p.covers() {
            let step = order
                .element(x)
                .inverse()
                .compose(order.element(y))
                .unwrap();
            assert_eq!(step.absolute_length(), 1);
        }
        for x in 0..p.len() {
            for y in 0..p.len() {
                let by_length =
                    AbsoluteOrder::leq_by_length(order.element(x), order.element(y)).unwrap();
                assert_eq!(by_length, x == y || p.less_than(x, y));
            }
        }
    }
}
