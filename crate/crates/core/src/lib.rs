//! Absolute orders on the Coxeter groups `A_n`, `B_n` and `I_2(m)`, the
//! factorization of group elements along the standard flag, and exact
//! certification of the strong Sperner property.

pub mod absolute_order;
pub mod cli;
pub mod flag;
pub mod groups;
pub mod poset;
pub mod sperner;

pub use absolute_order::{
    build_absolute_order, claw, claw_product, expected_rank_polynomial, AbsoluteOrder,
};
pub use flag::{
    embed_claw_product, factorize, phi, reflection_tiers, Factorization, ReflectionTiers,
};
pub use groups::{Element, Family, GroupError, GroupId, Reflection, DEFAULT_MAX_GROUP_ORDER};
pub use poset::{GradedPoset, RankSequence};
pub use sperner::{max_k_family, validate_certificate, KFamilyCertificate};
