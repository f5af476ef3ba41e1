//! Chamfer distance and F-Score between point clouds.
//!
//! Chamfer is the symmetrized mean of squared nearest-neighbor distances:
//! `mean_a min_b d^2 + mean_b min_a d^2`. F-Score is the harmonic mean of
//! precision/recall at a distance threshold. Both use the exact k-d tree,
//! which is bit-identical to an exhaustive scan.

use nalgebra::Vector3;

use super::kdtree::{brute_force_nearest_sq, dist_sq, KdTree};
use crate::real::Real;

/// Mean squared nearest-neighbor distance from each point of `from` to the
/// cloud `to`, accumulated in point order.
fn directed_mean_sq<T: Real>(from: &[Vector3<T>], to_tree: &KdTree<T>) -> T {
    let mut sum = T::zero();
    for p in from {
        sum += to_tree.nearest_sq(p);
    }
    sum / T::from_usize_(from.len())
}

/// Symmetric Chamfer distance; `None` when either cloud is empty.
pub fn chamfer<T: Real>(a: &[Vector3<T>], b: &[Vector3<T>]) -> Option<T> {
    if a.is_empty() || b.is_empty() {
        return None;
    }
    let tree_a = KdTree::build(a);
    let tree_b = KdTree::build(b);
    Some(directed_mean_sq(a, &tree_b) + directed_mean_sq(b, &tree_a))
}

/// Exhaustive O(N^2) Chamfer oracle, independent of the k-d tree path.
pub fn chamfer_brute_force<T: Real>(a: &[Vector3<T>], b: &[Vector3<T>]) -> Option<T> {
    if a.is_empty() || b.is_empty() {
        return None;
    }
    let directed = |from: &[Vector3<T>], to: &[Vector3<T>]| {
        let mut sum = T::zero();
        for p in from {
            sum += brute_force_nearest_sq(p, to);
        }
        sum / T::from_usize_(from.len())
    };
    Some(directed(a, b) + directed(b, a))
}

/// F-Score at threshold `tau`; `None` when either cloud is empty.
pub fn fscore<T: Real>(a: &[Vector3<T>], b: &[Vector3<T>], tau: T) -> Option<T> {
    if a.is_empty() || b.is_empty() || !(tau > T::zero()) {
        return None;
    }
    let tau_sq = tau * tau;
    let tree_a = KdTree::build(a);
    let tree_b = KdTree::build(b);
    let within = |from: &[Vector3<T>], to_tree: &KdTree<T>| {
        let hits = from
            .iter()
            .filter(|p| to_tree.nearest_sq(p) <= tau_sq)
            .count();
        T::from_usize_(hits) / T::from_usize_(from.len())
    };
    let precision = within(a, &tree_b);
    let recall = within(b, &tree_a);
    if precision + recall <= T::zero() {
        return Some(T::zero());
    }
    Some(T::of(2.0) * precision * recall / (precision + recall))
}

/// Exhaustive F-Score oracle.
pub fn fscore_brute_force<T: Real>(a: &[Vector3<T>], b: &[Vector3<T>], tau: T) -> Option<T> {
    if a.is_empty() || b.is_empty() || !(tau > T::zero()) {
        return None;
    }
    let tau_sq = tau * tau;
    let within = |from: &[Vector3<T>], to: &[Vector3<T>]| {
        let hits = from
            .iter()
            .filter(|p| {
                to.iter()
                    .any(|q| dist_sq(p, q) <= tau_sq)
                    // `any` short-circuits; the count is what matters, and the
                    // threshold test is exact either way.
            })
            .count();
        T::from_usize_(hits) / T::from_usize_(from.len())
    };
    let precision = within(a, b);
    let recall = within(b, a);
    if precision + recall <= T::zero() {
        return Some(T::zero());
    }
    Some(T::of(2.0) * precision * recall / (precision + recall))
}
