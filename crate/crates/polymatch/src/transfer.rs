//! 9x9 transfer matrices and the counting formulas built from them.
//!
//! The state space is the nine-component vector of [`crate::oracle::mm_vector`]:
//! attaching one face to a graph `G` with marked edge `(d, c)` produces a
//! graph `G'` whose vector at the face's far edge `(a, b)` is `T * vec(G)`,
//! where `T` depends only on the face's size and offset. Folding a chain
//! face by face against the base vector `Y` (the vector of a single edge)
//! and reading off the first component with the row `X` counts the chain's
//! maximal matchings; the trace of the cyclic matrix product counts a
//! ring's.
//!
//! The three hexagon matrices are hard-coded below; every other shape is
//! generated on demand by [`crate::matgen`] and memoised in a
//! [`MatrixCache`].

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::matgen::transition_matrix;
use crate::notation::{ChainSpec, FaceSpec, RingSpec};
use crate::oracle::MMVector;
use crate::Count;

/// `L` in the usual naming: hexagon, offset 1.
const L_TABLE: [[u32; 9]; 9] = [
    [1, 1, 1, 1, 1, 1, 1, 0, 0],
    [1, 0, 1, 0, 0, 0, 0, 0, 1],
    [0, 1, 0, 1, 0, 0, 1, 1, 0],
    [1, 0, 1, 0, 0, 0, 0, 0, 0],
    [1, 0, 1, 1, 0, 1, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 1],
    [0, 1, 0, 1, 0, 0, 0, 0, 0],
    [1, 1, 1, 1, 0, 1, 0, 0, 0],
    [1, 0, 1, 1, 1, 1, 1, 0, 0],
];

/// `S`: hexagon, offset 2 (the straight, "para" fusion).
const S_TABLE: [[u32; 9]; 9] = [
    [1, 1, 1, 1, 1, 1, 1, 0, 0],
    [0, 1, 0, 1, 0, 0, 1, 1, 0],
    [0, 0, 1, 1, 0, 1, 0, 0, 1],
    [0, 0, 0, 1, 1, 1, 1, 0, 0],
    [1, 0, 0, 1, 1, 1, 1, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 1, 0],
    [0, 0, 1, 0, 0, 0, 0, 0, 1],
    [1, 0, 1, 1, 1, 1, 1, 0, 0],
    [1, 1, 0, 1, 1, 1, 1, 0, 0],
];

/// `R`: hexagon, offset 3, the mirror image of `L`.
const R_TABLE: [[u32; 9]; 9] = [
    [1, 1, 1, 1, 1, 1, 1, 0, 0],
    [0, 0, 1, 1, 0, 1, 0, 0, 1],
    [1, 1, 0, 0, 0, 0, 0, 1, 0],
    [1, 1, 0, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 1, 0, 0, 1, 0, 0],
    [0, 0, 1, 1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 1, 0],
    [1, 1, 0, 1, 1, 1, 1, 0, 0],
    [1, 1, 1, 1, 0, 0, 1, 0, 0],
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    rows: [[Count; 9]; 9],
}

impl TransferMatrix {
    pub fn from_rows(rows: [[Count; 9]; 9]) -> Self {
        TransferMatrix { rows }
    }

    pub fn from_table(table: &[[u32; 9]; 9]) -> Self {
        TransferMatrix {
            rows: core::array::from_fn(|i| core::array::from_fn(|j| Count::from(table[i][j]))),
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> &Count {
        &self.rows[row][col]
    }

    pub fn mul(&self, rhs: &TransferMatrix) -> TransferMatrix {
        let rows = core::array::from_fn(|i| {
            core::array::from_fn(|j| {
                let mut acc = Count::from(0u32);
                for k in 0..9 {
                    acc += &self.rows[i][k] * &rhs.rows[k][j];
                }
                acc
            })
        });
        TransferMatrix { rows }
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &MMVector) -> MMVector {
        MMVector(core::array::from_fn(|i| {
            let mut acc = Count::from(0u32);
            for k in 0..9 {
                acc += &self.rows[i][k] * &v.0[k];
            }
            acc
        }))
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, row: &MMVector) -> MMVector {
        MMVector(core::array::from_fn(|j| {
            let mut acc = Count::from(0u32);
            for k in 0..9 {
                acc += &row.0[k] * &self.rows[k][j];
            }
            acc
        }))
    }

    pub fn trace(&self) -> Count {
        let mut acc = Count::from(0u32);
        for i in 0..9 {
            acc += &self.rows[i][i];
        }
        acc
    }
}

impl core::ops::Mul for &TransferMatrix {
    type Output = TransferMatrix;
    fn mul(self, rhs: &TransferMatrix) -> TransferMatrix {
        TransferMatrix::mul(self, rhs)
    }
}

/// Nine space-separated entries per line.
impl fmt::Display for TransferMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", e)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn matrix_l() -> TransferMatrix {
    TransferMatrix::from_table(&L_TABLE)
}

pub fn matrix_s() -> TransferMatrix {
    TransferMatrix::from_table(&S_TABLE)
}

pub fn matrix_r() -> TransferMatrix {
    TransferMatrix::from_table(&R_TABLE)
}

/// The row that reads off the unconditioned count.
pub fn x_row() -> MMVector {
    let mut v = MMVector::zero();
    v.0[0] = Count::from(1u32);
    v
}

/// The base column: the vector of a single marked edge.
pub fn y_vector() -> MMVector {
    MMVector([1u32, 1, 1, 1, 1, 0, 0, 1, 1].map(Count::from))
}

pub fn dot(a: &MMVector, b: &MMVector) -> Count {
    let mut acc = Count::from(0u32);
    for k in 0..9 {
        acc += &a.0[k] * &b.0[k];
    }
    acc
}

/// Memoised transfer matrices keyed by `(size, offset)`. Hexagon matrices
/// come from the hard-coded tables; everything else is generated.
#[derive(Default)]
pub struct MatrixCache {
    map: BTreeMap<(u32, u32), TransferMatrix>,
}

impl MatrixCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Panics if `offset` is out of range for `size`; face specs validated
    /// by [`crate::notation`] never are.
    pub fn get(&mut self, size: u32, offset: u32) -> &TransferMatrix {
        self.map.entry((size, offset)).or_insert_with(|| match (size, offset) {
            (6, 1) => matrix_l(),
            (6, 2) => matrix_s(),
            (6, 3) => matrix_r(),
            _ => match transition_matrix(size, offset) {
                Ok(t) => t,
                Err(e) => panic!("{}", e),
            },
        })
    }
}

/// The matrix of one face spec.
///
/// Panics on a wildcard offset: terminal faces of a chain do not determine
/// an offset and are resolved inside [`count_chain`] instead.
pub fn matrix_for<'c>(face: &FaceSpec, cache: &'c mut MatrixCache) -> &'c TransferMatrix {
    let offset = face
        .offset
        .expect("wildcard face offsets are only resolved while folding a chain");
    cache.get(face.size, offset)
}

/// Count the maximal matchings of a polygon chain.
pub fn count_chain(spec: &ChainSpec, cache: &mut MatrixCache) -> Count {
    dot(&fold_chain(spec, cache), &y_vector())
}

/// The nine-component vector of a polygon chain at its free terminal edge.
pub fn chain_vector(spec: &ChainSpec, cache: &mut MatrixCache) -> MMVector {
    let mut v = y_vector();
    for face in spec.faces().iter().rev() {
        v = cache.get(face.size, face.offset.unwrap_or(1)).apply(&v);
    }
    v
}

fn fold_chain(spec: &ChainSpec, cache: &mut MatrixCache) -> MMVector {
    let mut row = x_row();
    // Terminal faces carry wildcard offsets; their free marked edge is
    // placed one edge past the shared edge, matching the offset-1 matrix.
    for face in spec.faces() {
        row = cache.get(face.size, face.offset.unwrap_or(1)).apply_row(&row);
    }
    row
}

/// Count the maximal matchings of a polygon ring: the trace of the cyclic
/// product of the face matrices, multiplied as a balanced tree so that
/// rings with many faces stay cheap.
pub fn count_ring(spec: &RingSpec, cache: &mut MatrixCache) -> Count {
    let mats: Vec<TransferMatrix> = spec
        .faces()
        .iter()
        .map(|f| cache.get(f.size, f.offset.expect("ring offsets are integers")).clone())
        .collect();
    product_tree(&mats).trace()
}

fn product_tree(mats: &[TransferMatrix]) -> TransferMatrix {
    match mats.len() {
        1 => mats[0].clone(),
        2 => mats[0].mul(&mats[1]),
        n => product_tree(&mats[..n / 2]).mul(&product_tree(&mats[n / 2..])),
    }
}

/// Count the maximal matchings of a bare `m`-cycle (`m >= 4`) through the
/// same machinery: one face closed off by the base edge.
pub fn count_cycle(m: u32, cache: &mut MatrixCache) -> Count {
    let row = cache.get(m, 1).apply_row(&x_row());
    dot(&row, &y_vector())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::{parse_chain, parse_ring};
    use crate::oracle::mm_vector;
    use crate::polygraph::Graph;
    use alloc::string::ToString;
    use alloc::vec;

    fn vec9(v: [u32; 9]) -> MMVector {
        MMVector(v.map(Count::from))
    }

    #[test]
    fn base_vector_is_the_single_edge_vector() {
        let k2 = Graph::from_edges(2, &[(0, 1)]);
        assert_eq!(mm_vector(&k2, 0, 1), y_vector());
    }

    #[test]
    fn known_boundary_products() {
        assert_eq!(matrix_s().apply_row(&x_row()), vec9([1, 1, 1, 1, 1, 1, 1, 0, 0]));
        assert_eq!(matrix_s().apply(&y_vector()), vec9([5, 3, 3, 2, 3, 2, 2, 4, 4]));
    }

    #[test]
    fn hexagon_matrix_traces() {
        assert_eq!(matrix_s().trace(), Count::from(5u32));
        assert_eq!(matrix_l().trace(), Count::from(1u32));
        assert_eq!(matrix_r().trace(), Count::from(1u32));
    }

    #[test]
    fn eleven_hexagon_ring_by_explicit_product() {
        let (l, s, r) = (matrix_l(), matrix_s(), matrix_r());
        let seq = [&s, &r, &r, &l, &r, &r, &r, &s, &s, &r, &r];
        let mut prod = seq[0].clone();
        for m in &seq[1..] {
            prod = prod.mul(m);
        }
        assert_eq!(prod.trace(), Count::from(2804280u32));
    }

    #[test]
    fn eleven_hexagon_ring_by_count_ring() {
        let spec = parse_ring("t(2)t(3)t(3)t(1)t(3)t(3)t(3)t(2)t(2)t(3)t(3)").unwrap();
        let mut cache = MatrixCache::new();
        assert_eq!(count_ring(&spec, &mut cache), Count::from(2804280u32));
    }

    #[test]
    fn mixed_polygon_ring() {
        let spec =
            parse_ring("t(7,3)t(5,2)t(8,4)t(6,3)t(5,2)t(6,2)t(8,3)t(6,3)t(6,3)").unwrap();
        let mut cache = MatrixCache::new();
        assert_eq!(count_ring(&spec, &mut cache), Count::from(481614u32));
    }

    #[test]
    fn two_hexagon_chain() {
        let spec = parse_chain("t(6,*)t(6,*)").unwrap();
        let mut cache = MatrixCache::new();
        assert_eq!(count_chain(&spec, &mut cache), Count::from(20u32));
    }

    #[test]
    fn cycles_through_the_face_machinery() {
        let mut cache = MatrixCache::new();
        let want = [2u32, 5, 5, 7, 10];
        for (i, &w) in want.iter().enumerate() {
            assert_eq!(count_cycle(i as u32 + 4, &mut cache), Count::from(w));
        }
    }

    #[test]
    fn chain_vector_head_is_the_count() {
        let mut cache = MatrixCache::new();
        for text in ["t(6,*)t(6,2)t(6,1)t(6,*)", "t(5,*)t(7,3)t(4,*)", "t(4,*)t(4,*)"] {
            let spec = parse_chain(text).unwrap();
            let v = chain_vector(&spec, &mut cache);
            assert_eq!(dot(&x_row(), &v), count_chain(&spec, &mut cache));
        }
    }

    #[test]
    fn product_tree_matches_sequential_product() {
        let mats = vec![matrix_s(), matrix_r(), matrix_l(), matrix_r(), matrix_s()];
        let mut seq = mats[0].clone();
        for m in &mats[1..] {
            seq = seq.mul(m);
        }
        assert_eq!(product_tree(&mats), seq);
    }

    #[test]
    fn display_matches_the_table() {
        let text = matrix_s().to_string();
        let first = text.lines().next().unwrap();
        assert_eq!(first, "1 1 1 1 1 1 1 0 0");
        assert_eq!(text.lines().count(), 9);
    }

    #[test]
    #[should_panic(expected = "wildcard")]
    fn matrix_for_rejects_wildcards() {
        let mut cache = MatrixCache::new();
        matrix_for(&crate::notation::FaceSpec::terminal(6), &mut cache);
    }

    #[test]
    fn matrix_for_maps_offsets() {
        let mut cache = MatrixCache::new();
        let face = crate::notation::FaceSpec::interior(6, 3);
        assert_eq!(matrix_for(&face, &mut cache), &matrix_r());
    }
}
