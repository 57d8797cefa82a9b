//! Generation of transfer matrices from first principles.
//!
//! The matrix entry `T[x][y]` counts the face-local configurations that
//! expose interface class `y` to the part of the graph behind the exiting
//! edge `(d, c)` while satisfying boundary condition `x` at the entering
//! edge `(a, b)`. Both are read off maximal matchings of the pendant gadget
//! of [`crate::polygraph::build_gadget`]: the deleted edge `dc` and the two
//! pendants stand in for the rest of the graph, with a pendant edge in the
//! matching meaning "covered from the other side".
//!
//! Row conditions on `(a, b)` follow the nine-component vector order. The
//! column class is the coverage pattern of `(k1, e, k2, f)`, where a removed
//! vertex counts as covered; gadget maximality makes exactly nine patterns
//! possible (an uncovered pendant forces its anchor to be covered by the
//! face, which covers `e` resp. `f`), and they are mutually exclusive.

use crate::oracle::{enumerate_maximal, ConstraintSet, Matching};
use crate::polygraph::{build_gadget, GadgetMarks, OffsetRangeError};
use crate::transfer::TransferMatrix;
use crate::Count;

pub fn row_conditions(a: usize, b: usize) -> [ConstraintSet; 9] {
    [
        ConstraintSet::new(),
        ConstraintSet::new().remove(a),
        ConstraintSet::new().remove(b),
        ConstraintSet::new().remove(a).remove(b),
        ConstraintSet::new().cover(a).cover(b),
        ConstraintSet::new().remove(a).cover(b),
        ConstraintSet::new().remove(b).cover(a),
        ConstraintSet::new().cover(a),
        ConstraintSet::new().cover(b),
    ]
}

fn classify(m: &Matching<'_>, cs: &ConstraintSet, marks: &GadgetMarks) -> usize {
    let covered = |v: usize| m.covers(v) || cs.is_removed(v);
    let bits = (covered(marks.k1), covered(marks.e), covered(marks.k2), covered(marks.f));
    match bits {
        (true, true, true, true) => 0,
        (false, true, true, true) => 1,
        (true, true, false, true) => 2,
        (false, true, false, true) => 3,
        (true, false, true, false) => 4,
        (false, true, true, false) => 5,
        (true, false, false, true) => 6,
        (true, false, true, true) => 7,
        (true, true, true, false) => 8,
        _ => unreachable!("infeasible interface pattern {:?}", bits),
    }
}

/// Generate the transfer matrix for a face of size `size` with offset
/// `offset`.
pub fn transition_matrix(size: u32, offset: u32) -> Result<TransferMatrix, OffsetRangeError> {
    let gadget = build_gadget(size, offset)?;
    let marks = gadget.gadget().expect("gadget graphs carry gadget marks").clone();
    let mut rows: [[Count; 9]; 9] =
        core::array::from_fn(|_| core::array::from_fn(|_| Count::from(0u32)));
    for (x, cs) in row_conditions(marks.ab.0, marks.ab.1).iter().enumerate() {
        enumerate_maximal(gadget.graph(), cs, |m| {
            rows[x][classify(m, cs, &marks)] += 1u32;
        });
    }
    Ok(TransferMatrix::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::count_maximal;
    use crate::transfer::{matrix_l, matrix_r, matrix_s};

    #[test]
    fn regenerates_the_printed_hexagon_matrices() {
        assert_eq!(transition_matrix(6, 1).unwrap(), matrix_l());
        assert_eq!(transition_matrix(6, 2).unwrap(), matrix_s());
        assert_eq!(transition_matrix(6, 3).unwrap(), matrix_r());
    }

    #[test]
    fn row_sums_are_the_unclassified_counts() {
        for (m, i) in [(4, 1), (5, 1), (5, 2), (6, 2), (7, 3), (8, 5), (9, 4)] {
            let t = transition_matrix(m, i).unwrap();
            let gadget = build_gadget(m, i).unwrap();
            let marks = gadget.gadget().unwrap();
            for (x, cs) in row_conditions(marks.ab.0, marks.ab.1).iter().enumerate() {
                let mut sum = Count::from(0u32);
                for y in 0..9 {
                    sum += t.entry(x, y);
                }
                assert_eq!(sum, count_maximal(gadget.graph(), cs), "t({},{}) row {}", m, i, x + 1);
            }
        }
    }

    #[test]
    fn mirror_offsets_give_conjugate_matrices() {
        // Reflecting a face swaps a with b and d with c, which permutes the
        // vector components: rows/columns 2<->3, 6<->7, 8<->9.
        let p = [0usize, 2, 1, 3, 4, 6, 5, 8, 7];
        for (m, i) in [(5u32, 1u32), (6, 1), (6, 2), (7, 2), (8, 1), (8, 2)] {
            let t = transition_matrix(m, i).unwrap();
            let mirrored = transition_matrix(m, m - 2 - i).unwrap();
            for x in 0..9 {
                for y in 0..9 {
                    assert_eq!(
                        mirrored.entry(x, y),
                        t.entry(p[x], p[y]),
                        "t({},{}) vs t({},{}) at ({},{})",
                        m,
                        i,
                        m,
                        m - 2 - i,
                        x,
                        y
                    );
                }
            }
        }
    }

    #[test]
    fn offset_range_is_enforced() {
        assert!(transition_matrix(6, 0).is_err());
        assert!(transition_matrix(6, 4).is_err());
        assert!(transition_matrix(3, 1).is_err());
        assert!(transition_matrix(4, 1).is_ok());
    }

    #[test]
    fn quadrilateral_matrix_is_fully_degenerate_but_consistent() {
        // size 4, offset 1: e coincides with a and f with b, so row
        // conditions interact with the class bits; the row sums must still
        // add up and the matrix must be mirror-symmetric.
        let t = transition_matrix(4, 1).unwrap();
        let p = [0usize, 2, 1, 3, 4, 6, 5, 8, 7];
        for x in 0..9 {
            for y in 0..9 {
                assert_eq!(t.entry(x, y), t.entry(p[x], p[y]));
            }
        }
    }
}
