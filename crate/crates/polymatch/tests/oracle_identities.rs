//! Identities the enumeration oracle must satisfy on arbitrary graphs.

use polymatch::oracle::naive_count_maximal;
use polymatch::{count_maximal, mm_vector, ConstraintSet, Graph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..=8).prop_flat_map(|n| {
        let slots = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), slots).prop_map(move |mask| {
            let mut g = Graph::new(n);
            let mut idx = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if mask[idx] {
                        g.add_edge(u, v);
                    }
                    idx += 1;
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// The backtracking enumerator agrees with the brute-force subset filter,
    /// including under constraints.
    #[test]
    fn production_oracle_matches_naive(g in arb_graph(), picks in any::<[u8; 4]>()) {
        prop_assume!(g.edge_count() <= 16);
        let n = g.vertex_count();
        let r = picks[0] as usize % n;
        let c = picks[1] as usize % n;
        let u = picks[2] as usize % n;
        let mut cs = ConstraintSet::new().remove(r);
        if c != r {
            cs = cs.cover(c);
        }
        if u != r && u != c {
            cs = cs.uncover(u);
        }
        if let Some(&(a, b)) = g
            .edges()
            .collect::<Vec<_>>()
            .get(picks[3] as usize % (g.edge_count() + 1))
        {
            cs = cs.forbid_edge(a, b);
        }
        prop_assert_eq!(count_maximal(&g, &cs), naive_count_maximal(&g, &cs));
    }

    /// Local counting identities at every vertex and edge:
    /// covered/uncovered split the total, covering a vertex expands over its
    /// neighbours, and requiring an edge contracts it.
    #[test]
    fn local_identities(g in arb_graph()) {
        let total = count_maximal(&g, &ConstraintSet::new());
        for v in 0..g.vertex_count() {
            let on = count_maximal(&g, &ConstraintSet::new().cover(v));
            let off = count_maximal(&g, &ConstraintSet::new().uncover(v));
            prop_assert_eq!(&on + &off, total.clone());

            let mut expansion = polymatch::Count::from(0u32);
            for &u in g.neighbors(v) {
                expansion += count_maximal(&g, &ConstraintSet::new().remove(v).remove(u));
            }
            prop_assert_eq!(on, expansion);
        }
        for (u, v) in g.edges().collect::<Vec<_>>() {
            let required = count_maximal(&g, &ConstraintSet::new().require_edge(u, v));
            let contracted = count_maximal(&g, &ConstraintSet::new().remove(u).remove(v));
            prop_assert_eq!(required, contracted);
        }
    }
}

#[test]
fn disjoint_union_multiplies() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let mut parts = Vec::new();
        for _ in 0..2 {
            let n = rng.gen_range(1..=6);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.add_edge(u, v);
                    }
                }
            }
            parts.push(g);
        }
        let union = parts[0].disjoint_union(&parts[1]);
        let product = count_maximal(&parts[0], &ConstraintSet::new())
            * count_maximal(&parts[1], &ConstraintSet::new());
        assert_eq!(count_maximal(&union, &ConstraintSet::new()), product);
    }
}

#[test]
fn vector_components_are_individual_counts() {
    let g = Graph::cycle(6);
    let v = mm_vector(&g, 0, 1);
    assert_eq!(v.psi(), &count_maximal(&g, &ConstraintSet::new()));
    assert_eq!(v.0[1], count_maximal(&g, &ConstraintSet::new().remove(0)));
    assert_eq!(v.0[4], count_maximal(&g, &ConstraintSet::new().cover(0).cover(1)));
    assert_eq!(v.0[5], count_maximal(&g, &ConstraintSet::new().remove(0).cover(1)));
}
