//! Exact 3D k-d tree for nearest-neighbor queries.
//!
//! Distances are squared Euclidean computed as `dx*dx + dy*dy + dz*dz` in
//! axis order, exactly the arithmetic an exhaustive scan performs, so tree
//! results are bit-identical to brute force.

use nalgebra::Vector3;

use crate::real::Real;

const LEAF_SIZE: usize = 16;

pub fn dist_sq<T: Real>(a: &Vector3<T>, b: &Vector3<T>) -> T {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    let dz = a.z - b.z;
    dx * dx + dy * dy + dz * dz
}

enum Node<T: Real> {
    Leaf {
        start: usize,
        len: usize,
    },
    Split {
        axis: usize,
        value: T,
        left: usize,
        right: usize,
    },
}

pub struct KdTree<'a, T: Real> {
    points: &'a [Vector3<T>],
    order: Vec<usize>,
    nodes: Vec<Node<T>>,
    root: usize,
}

impl<'a, T: Real> KdTree<'a, T> {
    pub fn build(points: &'a [Vector3<T>]) -> Self {
        assert!(!points.is_empty(), "kd-tree needs at least one point");
        let mut order: Vec<usize> = (0..points.len()).collect();
        let mut nodes = Vec::new();
        let root = Self::build_node(points, &mut order, 0, points.len(), &mut nodes);
        Self {
            points,
            order,
            nodes,
            root,
        }
    }

    fn build_node(
        points: &[Vector3<T>],
        order: &mut [usize],
        start: usize,
        len: usize,
        nodes: &mut Vec<Node<T>>,
    ) -> usize {
        if len <= LEAF_SIZE {
            nodes.push(Node::Leaf { start, len });
            return nodes.len() - 1;
        }
        let slice = &mut order[start..start + len];

        // split on the widest axis at the median
        let mut min = points[slice[0]];
        let mut max = points[slice[0]];
        for &i in slice.iter() {
            let p = &points[i];
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            min.z = min.z.min(p.z);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
            max.z = max.z.max(p.z);
        }
        let ext = max - min;
        let axis = if ext.x >= ext.y && ext.x >= ext.z {
            0
        } else if ext.y >= ext.z {
            1
        } else {
            2
        };
        let mid = len / 2;
        slice.select_nth_unstable_by(mid, |&a, &b| {
            points[a][axis]
                .partial_cmp(&points[b][axis])
                .expect("cloud coordinates are finite")
        });
        let value = points[slice[mid]][axis];

        let left = Self::build_node(points, order, start, mid, nodes);
        let right = Self::build_node(points, order, start + mid, len - mid, nodes);
        nodes.push(Node::Split {
            axis,
            value,
            left,
            right,
        });
        nodes.len() - 1
    }

    /// Squared distance to the nearest point.
    pub fn nearest_sq(&self, query: &Vector3<T>) -> T {
        let mut best = T::max_value().expect("float has a max");
        self.search(self.root, query, &mut best);
        best
    }

    fn search(&self, node: usize, query: &Vector3<T>, best: &mut T) {
        match &self.nodes[node] {
            Node::Leaf { start, len } => {
                for &i in &self.order[*start..*start + *len] {
                    let d = dist_sq(query, &self.points[i]);
                    if d < *best {
                        *best = d;
                    }
                }
            }
            Node::Split {
                axis,
                value,
                left,
                right,
            } => {
                let delta = query[*axis] - *value;
                let (near, far) = if delta < T::zero() {
                    (*left, *right)
                } else {
                    (*right, *left)
                };
                self.search(near, query, best);
                if delta * delta <= *best {
                    self.search(far, query, best);
                }
            }
        }
    }
}

/// Exhaustive nearest-neighbor scan; the oracle the tree is checked against.
pub fn brute_force_nearest_sq<T: Real>(query: &Vector3<T>, points: &[Vector3<T>]) -> T {
    let mut best = T::max_value().expect("float has a max");
    for p in points {
        let d = dist_sq(query, p);
        if d < best {
            best = d;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_points(n: usize, seed: u64) -> Vec<Vector3<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                Vector3::new(
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                    rng.random_range(-1.0..1.0),
                )
            })
            .collect()
    }

    #[test]
    fn tree_matches_brute_force_bit_exactly() {
        for seed in 0..5 {
            let data = random_points(257, seed);
            let queries = random_points(101, seed + 100);
            let tree = KdTree::build(&data);
            for q in &queries {
                let a = tree.nearest_sq(q);
                let b = brute_force_nearest_sq(q, &data);
                assert_eq!(a, b, "tree and brute force disagree");
            }
        }
    }

    #[test]
    fn nearest_of_member_point_is_zero() {
        let data = random_points(64, 9);
        let tree = KdTree::build(&data);
        for q in &data {
            assert_eq!(tree.nearest_sq(q), 0.0);
        }
    }

    #[test]
    fn duplicate_points_are_handled() {
        let mut data = random_points(32, 1);
        let dup = data[0];
        data.extend(std::iter::repeat_n(dup, 40));
        let tree = KdTree::build(&data);
        assert_eq!(tree.nearest_sq(&dup), 0.0);
    }
}
