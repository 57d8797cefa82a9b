//! The transfer-matrix formulas against the enumeration oracle, plus the
//! structural identities that pin the orientation conventions.

use polymatch::notation::{ChainSpec, FaceSpec, RingSpec};
use polymatch::transfer::{dot, x_row, y_vector};
use polymatch::{
    build_chain, build_ring, count_chain, count_maximal, count_ring, mm_vector, parse_chain,
    parse_ring, ConstraintSet, Count, Graph, MatrixCache, MMVector,
};
use rand::{Rng, SeedableRng};

fn oracle_count(g: &Graph) -> Count {
    count_maximal(g, &ConstraintSet::new())
}

fn chain_spec(sizes: &[u32], offsets: &[u32]) -> ChainSpec {
    let n = sizes.len();
    let faces: Vec<FaceSpec> = sizes
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            if i == 0 || i == n - 1 {
                FaceSpec::terminal(s)
            } else {
                FaceSpec::interior(s, offsets[i - 1])
            }
        })
        .collect();
    ChainSpec::new(faces).unwrap()
}

fn ring_spec(faces: &[(u32, u32)]) -> RingSpec {
    RingSpec::new(faces.iter().map(|&(s, k)| FaceSpec::interior(s, k)).collect()).unwrap()
}

#[test]
fn chain_formula_matches_oracle_for_two_faces() {
    let mut cache = MatrixCache::new();
    for s1 in 4..=7 {
        for s2 in 4..=7 {
            let spec = chain_spec(&[s1, s2], &[]);
            let g = build_chain(&spec);
            assert_eq!(
                count_chain(&spec, &mut cache),
                oracle_count(g.graph()),
                "sizes ({}, {})",
                s1,
                s2
            );
        }
    }
}

#[test]
fn chain_formula_matches_oracle_for_three_faces() {
    let mut cache = MatrixCache::new();
    for s1 in [4, 6] {
        for mid in 4..=7 {
            for k in 1..=mid - 3 {
                for s3 in [5, 7] {
                    let spec = chain_spec(&[s1, mid, s3], &[k]);
                    let g = build_chain(&spec);
                    assert_eq!(
                        count_chain(&spec, &mut cache),
                        oracle_count(g.graph()),
                        "t({},*) t({},{}) t({},*)",
                        s1,
                        mid,
                        k,
                        s3
                    );
                }
            }
        }
    }
}

#[test]
fn chain_vector_matches_oracle_vector() {
    let mut cache = MatrixCache::new();
    for text in ["t(6,*)t(6,*)", "t(4,*)t(5,1)t(6,*)", "t(5,*)t(7,3)t(6,2)t(4,*)"] {
        let spec = parse_chain(text).unwrap();
        let g = build_chain(&spec);
        let (a, b) = g.terminal_ab().unwrap();
        assert_eq!(
            polymatch::chain_vector(&spec, &mut cache),
            mm_vector(g.graph(), a, b),
            "{}",
            text
        );
    }
}

#[test]
fn ring_formula_matches_oracle_for_all_three_hexagon_rings() {
    let mut cache = MatrixCache::new();
    for k1 in 1..=3 {
        for k2 in 1..=3 {
            for k3 in 1..=3 {
                let spec = ring_spec(&[(6, k1), (6, k2), (6, k3)]);
                let g = build_ring(&spec);
                assert_eq!(
                    count_ring(&spec, &mut cache),
                    oracle_count(g.graph()),
                    "offsets ({}, {}, {})",
                    k1,
                    k2,
                    k3
                );
            }
        }
    }
}

#[test]
fn ring_formula_matches_oracle_on_random_polygon_rings() {
    let mut cache = MatrixCache::new();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
    for _ in 0..60 {
        let n = rng.gen_range(3..=4);
        let faces: Vec<(u32, u32)> = (0..n)
            .map(|_| {
                let s = rng.gen_range(4..=7u32);
                (s, rng.gen_range(1..=s - 3))
            })
            .collect();
        let spec = ring_spec(&faces);
        let g = build_ring(&spec);
        assert_eq!(count_ring(&spec, &mut cache), oracle_count(g.graph()), "{:?}", faces);
    }
}

/// Gluing an arbitrary marked graph onto a chain's terminal edge is the
/// chain's matrix product applied to the graph's own vector.
#[test]
fn gluing_identity() {
    let mut cache = MatrixCache::new();
    let attachments: Vec<(Graph, (usize, usize))> = vec![
        (Graph::from_edges(2, &[(0, 1)]), (0, 1)),
        (Graph::path(3), (0, 1)),
        (Graph::path(3), (1, 2)),
        (Graph::cycle(4), (0, 1)),
        (Graph::cycle(5), (2, 3)),
    ];
    for text in ["t(6,*)t(6,*)", "t(4,*)t(4,*)", "t(5,*)t(6,2)t(5,*)", "t(6,*)t(6,1)t(6,3)t(6,*)"] {
        let spec = parse_chain(text).unwrap();
        let chain = build_chain(&spec);
        let (a, b) = chain.terminal_ab().unwrap();
        let dc = chain.terminal_dc().unwrap();
        for (k, edge) in &attachments {
            let glued = chain.graph().glued(dc, k, *edge);
            let direct = mm_vector(&glued, a, b);

            let mut v = mm_vector(k, edge.0, edge.1);
            for face in spec.faces().iter().rev() {
                v = cache.get(face.size, face.offset.unwrap_or(1)).apply(&v);
            }
            assert_eq!(direct, v, "{} with {:?}", text, k);
        }
    }
}

/// Each diagonal entry of the cyclic matrix product counts one of the nine
/// seam configurations of the ring's maximal matchings.
#[test]
fn nine_case_trace_decomposition() {
    let mut cache = MatrixCache::new();
    let rings: Vec<Vec<(u32, u32)>> = vec![
        vec![(6, 2), (6, 2), (6, 2)],
        vec![(6, 1), (6, 2), (6, 3)],
        vec![(6, 3), (6, 3), (6, 3)],
        vec![(6, 1), (6, 1), (6, 1)],
        vec![(6, 2), (6, 3), (6, 1), (6, 2)],
        vec![(6, 2), (6, 2), (6, 2), (6, 2)],
        vec![(5, 2), (6, 3), (7, 2)],
    ];
    for faces in rings {
        let spec = ring_spec(&faces);
        let marked = build_ring(&spec);
        let h = marked.graph();
        let seam = marked.seam().unwrap();
        let (d, c) = seam.edge;
        let (e, f) = (seam.e, seam.f);

        let mut prod = cache.get(faces[0].0, faces[0].1).clone();
        for &(s, k) in &faces[1..] {
            prod = prod.mul(cache.get(s, k));
        }

        let cases: [ConstraintSet; 9] = [
            ConstraintSet::new().forbid_edge(f, c).forbid_edge(e, d).cover(e).cover(f),
            ConstraintSet::new().require_edge(e, d).forbid_edge(f, c).cover(f),
            ConstraintSet::new().require_edge(f, c).forbid_edge(e, d).cover(e),
            ConstraintSet::new().require_edge(e, d).require_edge(f, c),
            ConstraintSet::new().forbid_edge(f, c).forbid_edge(e, d).uncover(e).uncover(f),
            ConstraintSet::new().require_edge(e, d).forbid_edge(f, c).uncover(f),
            ConstraintSet::new().require_edge(f, c).forbid_edge(e, d).uncover(e),
            ConstraintSet::new().forbid_edge(f, c).forbid_edge(e, d).uncover(e).cover(f),
            ConstraintSet::new().forbid_edge(f, c).forbid_edge(e, d).cover(e).uncover(f),
        ];
        let mut total = Count::from(0u32);
        for (x, cs) in cases.iter().enumerate() {
            let want = count_maximal(h, cs);
            assert_eq!(prod.entry(x, x), &want, "{:?} diagonal {}", faces, x + 1);
            total += want;
        }
        assert_eq!(total, count_ring(&spec, &mut cache), "{:?}", faces);
    }
}

/// Rotating a ring spec relabels the same graph, and the trace of a cyclic
/// product does not move.
#[test]
fn ring_count_is_rotation_invariant() {
    let mut cache = MatrixCache::new();
    let spec = parse_ring("t(7,3)t(5,2)t(8,4)t(6,3)t(5,2)t(6,2)t(8,3)t(6,3)t(6,3)").unwrap();
    let want = count_ring(&spec, &mut cache);
    for by in 1..spec.len() {
        assert_eq!(count_ring(&spec.rotate(by), &mut cache), want, "rotation {}", by);
    }
}

/// A terminal face's matrix may be taken at any offset: the free marked
/// edge's position around the face does not change the graph.
#[test]
fn terminal_offset_does_not_matter() {
    let mut cache = MatrixCache::new();
    let want = {
        let spec = parse_chain("t(6,*)t(6,2)t(6,*)").unwrap();
        count_chain(&spec, &mut cache)
    };
    for k1 in 1..=3u32 {
        for k3 in 1..=3u32 {
            let mut row = x_row();
            for (s, k) in [(6, k1), (6, 2), (6, k3)] {
                row = cache.get(s, k).apply_row(&row);
            }
            assert_eq!(dot(&row, &y_vector()), want, "terminals ({}, {})", k1, k3);
        }
    }
}

/// One face closed by the base edge is a bare cycle, whatever the offset.
#[test]
fn single_face_against_cycle_oracle() {
    let mut cache = MatrixCache::new();
    for m in 4..=8u32 {
        let want = oracle_count(&Graph::cycle(m as usize));
        assert_eq!(polymatch::count_cycle(m, &mut cache), want, "cycle {}", m);
        for k in 1..=m - 3 {
            let row = cache.get(m, k).apply_row(&x_row());
            assert_eq!(dot(&row, &y_vector()), want, "t({},{}) closed by an edge", m, k);
        }
    }
}

/// The first transfer-product row reproduces the chain vector identity
/// psi(chain) = X * T... * Y even when every face is a wildcard-equivalent
/// hexagon: a quick end-to-end pin of the published two-face value.
#[test]
fn published_small_values() {
    let mut cache = MatrixCache::new();
    assert_eq!(
        count_chain(&parse_chain("t(6,*)t(6,*)").unwrap(), &mut cache),
        Count::from(20u32)
    );
    assert_eq!(
        count_ring(&parse_ring("t(2)t(3)t(3)t(1)t(3)t(3)t(3)t(2)t(2)t(3)t(3)").unwrap(), &mut cache),
        Count::from(2804280u32)
    );
    let v = MMVector([1u32, 1, 1, 1, 1, 0, 0, 1, 1].map(Count::from));
    assert_eq!(y_vector(), v);
}
