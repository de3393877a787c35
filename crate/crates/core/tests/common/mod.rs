#![allow(dead_code)]

use absorder::poset::product;
use absorder::{claw, GradedPoset};
use rand::Rng;

/// A random graded poset with at most `max_vertices` vertices: random level
/// sizes, and each pair in consecutive levels joined with a per-poset probability.
pub fn random_graded_poset(rng: &mut impl Rng, max_vertices: usize) -> GradedPoset<usize> {
    let levels = rng.gen_range(1..=5usize);
    let mut sizes = Vec::new();
    let mut total = 0;
    for _ in 0..levels {
        let room = max_vertices - total;
        if room == 0 {
            break;
        }
        let size = rng.gen_range(1..=room.min(7));
        sizes.push(size);
        total += size;
    }
    let density: f64 = rng.gen_range(0.15..0.85);
    let mut ranks = Vec::with_capacity(total);
    let mut starts = Vec::new();
    for (r, &size) in sizes.iter().enumerate() {
        starts.push(ranks.len());
        ranks.extend(std::iter::repeat_n(r, size));
    }
    let mut covers = Vec::new();
    for r in 1..sizes.len() {
        for x in starts[r - 1]..starts[r - 1] + sizes[r - 1] {
            for y in starts[r]..starts[r] + sizes[r] {
                if rng.gen_bool(density) {
                    covers.push((x, y));
                }
            }
        }
    }
    GradedPoset::new((0..total).collect(), ranks, covers).expect("generated poset is graded")
}

/// `C_{k_1} × ⋯ × C_{k_m}` with unit labels.
pub fn claw_product_of(ks: &[usize]) -> GradedPoset<()> {
    let mut acc = claw(ks[0]).unwrap().map_labels(|_| ());
    for &k in &ks[1..] {
        acc = product(&acc, &claw(k).unwrap()).map_labels(|_| ());
    }
    acc
}
