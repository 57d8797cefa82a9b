//! Self-check suites: the transfer formulas replayed against the
//! enumeration oracle on small instances, plus the structural identities
//! that pin the conventions. Every suite is deterministic for a given seed,
//! and a failure message carries the smallest spec that reproduces it.

use polymatch::matgen::transition_matrix;
use polymatch::notation::{ChainSpec, FaceSpec, RingSpec};
use polymatch::transfer::{dot, matrix_l, matrix_r, matrix_s, x_row, y_vector};
use polymatch::{
    build_chain, build_ring, count_chain, count_maximal, count_ring, mm_vector, parse_chain,
    ConstraintSet, Count, Graph, MatrixCache, TransferMatrix,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Options {
    pub max_faces: usize,
    pub size_lo: u32,
    pub size_hi: u32,
    pub seed: u64,
}

pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failure: Option<String>,
}

impl SuiteResult {
    fn pass(name: &'static str, cases: usize) -> Self {
        SuiteResult { name, cases, failure: None }
    }
}

pub fn run_all(opts: &Options) -> Vec<SuiteResult> {
    let mut suites = vec![
        boundary_vectors(),
        chain_oracle(opts),
        gluing(),
        matrix_regeneration(),
        ring_oracle(opts),
        rotation(opts),
        terminal_independence(),
        trace_decomposition(),
    ];
    suites.sort_by_key(|s| s.name);
    suites
}

fn first_mismatch(a: &TransferMatrix, b: &TransferMatrix) -> Option<(usize, usize)> {
    (0..9)
        .flat_map(|r| (0..9).map(move |c| (r, c)))
        .find(|&(r, c)| a.entry(r, c) != b.entry(r, c))
}

fn oracle(g: &Graph) -> Count {
    count_maximal(g, &ConstraintSet::new())
}

fn random_chain(rng: &mut ChaCha8Rng, n: usize, lo: u32, hi: u32) -> ChainSpec {
    let faces = (0..n)
        .map(|i| {
            let s = rng.gen_range(lo..=hi);
            if i == 0 || i == n - 1 {
                FaceSpec::terminal(s)
            } else {
                FaceSpec::interior(s, rng.gen_range(1..=s - 3))
            }
        })
        .collect();
    ChainSpec::new(faces).expect("generated spec is valid")
}

fn random_ring(rng: &mut ChaCha8Rng, n: usize, lo: u32, hi: u32) -> RingSpec {
    let faces = (0..n)
        .map(|_| {
            let s = rng.gen_range(lo..=hi);
            FaceSpec::interior(s, rng.gen_range(1..=s - 3))
        })
        .collect();
    RingSpec::new(faces).expect("generated spec is valid")
}

fn matrix_regeneration() -> SuiteResult {
    let name = "matrix-regeneration";
    let want = [(1u32, matrix_l()), (2, matrix_s()), (3, matrix_r())];
    let mut cases = 0;
    for (offset, table) in &want {
        cases += 1;
        let got = match transition_matrix(6, *offset) {
            Ok(t) => t,
            Err(e) => {
                return SuiteResult { name, cases, failure: Some(format!("t(6,{}): {}", offset, e)) }
            }
        };
        if let Some((r, c)) = first_mismatch(&got, table) {
            return SuiteResult {
                name,
                cases,
                failure: Some(format!(
                    "t(6,{}) entry ({},{}): generated {} vs published {}",
                    offset,
                    r + 1,
                    c + 1,
                    got.entry(r, c),
                    table.entry(r, c)
                )),
            };
        }
    }
    SuiteResult::pass(name, cases)
}

fn boundary_vectors() -> SuiteResult {
    let name = "boundary-vectors";
    let k2 = Graph::from_edges(2, &[(0, 1)]);
    let checks = [
        ("Y is the single-edge vector", mm_vector(&k2, 0, 1) == y_vector()),
        (
            "X*S is the first row of S",
            matrix_s().apply_row(&x_row()).0.map(|c| c.to_string())
                == ["1", "1", "1", "1", "1", "1", "1", "0", "0"].map(String::from),
        ),
        (
            "S*Y",
            matrix_s().apply(&y_vector()).0.map(|c| c.to_string())
                == ["5", "3", "3", "2", "3", "2", "2", "4", "4"].map(String::from),
        ),
        ("trace S = 5", matrix_s().trace() == Count::from(5u32)),
        ("trace L = 1", matrix_l().trace() == Count::from(1u32)),
    ];
    let cases = checks.len();
    let failure = checks.iter().find(|(_, ok)| !ok).map(|(label, _)| label.to_string());
    SuiteResult { name, cases, failure }
}

fn chain_oracle(opts: &Options) -> SuiteResult {
    let name = "chain-oracle";
    let mut cache = MatrixCache::new();
    let mut cases = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);

    let mut specs: Vec<ChainSpec> = Vec::new();
    for s1 in opts.size_lo..=opts.size_hi {
        for s2 in opts.size_lo..=opts.size_hi {
            specs.push(
                ChainSpec::new(vec![FaceSpec::terminal(s1), FaceSpec::terminal(s2)]).unwrap(),
            );
        }
    }
    for n in 3..=opts.max_faces.max(3) {
        for _ in 0..12 {
            specs.push(random_chain(&mut rng, n, opts.size_lo, opts.size_hi));
        }
    }

    for spec in &specs {
        cases += 1;
        let transfer = count_chain(spec, &mut cache);
        let direct = oracle(build_chain(spec).graph());
        if transfer != direct {
            return SuiteResult {
                name,
                cases,
                failure: Some(format!("{}: transfer={} oracle={}", spec, transfer, direct)),
            };
        }
    }
    SuiteResult::pass(name, cases)
}

fn ring_oracle(opts: &Options) -> SuiteResult {
    let name = "ring-oracle";
    let mut cache = MatrixCache::new();
    let mut cases = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5EED);

    let mut specs: Vec<RingSpec> = Vec::new();
    for k1 in 1..=3 {
        for k2 in 1..=3 {
            for k3 in 1..=3 {
                specs.push(
                    RingSpec::new(vec![
                        FaceSpec::interior(6, k1),
                        FaceSpec::interior(6, k2),
                        FaceSpec::interior(6, k3),
                    ])
                    .unwrap(),
                );
            }
        }
    }
    for n in 3..=opts.max_faces.max(3) {
        for _ in 0..12 {
            specs.push(random_ring(&mut rng, n, opts.size_lo, opts.size_hi));
        }
    }

    for spec in &specs {
        cases += 1;
        let transfer = count_ring(spec, &mut cache);
        let direct = oracle(build_ring(spec).graph());
        if transfer != direct {
            return SuiteResult {
                name,
                cases,
                failure: Some(format!("{}: transfer={} oracle={}", spec, transfer, direct)),
            };
        }
    }
    SuiteResult::pass(name, cases)
}

fn gluing() -> SuiteResult {
    let name = "gluing";
    let mut cache = MatrixCache::new();
    let mut cases = 0;
    let attachments: Vec<(&str, Graph, (usize, usize))> = vec![
        ("K2", Graph::from_edges(2, &[(0, 1)]), (0, 1)),
        ("P3", Graph::path(3), (0, 1)),
        ("C5", Graph::cycle(5), (0, 1)),
    ];
    for text in ["t(6,*)t(6,*)", "t(5,*)t(6,2)t(4,*)"] {
        let spec = parse_chain(text).unwrap();
        let chain = build_chain(&spec);
        let (a, b) = chain.terminal_ab().unwrap();
        let dc = chain.terminal_dc().unwrap();
        for (label, k, edge) in &attachments {
            cases += 1;
            let glued = chain.graph().glued(dc, k, *edge);
            let direct = mm_vector(&glued, a, b);
            let mut v = mm_vector(k, edge.0, edge.1);
            for face in spec.faces().iter().rev() {
                v = cache.get(face.size, face.offset.unwrap_or(1)).apply(&v);
            }
            if direct != v {
                return SuiteResult {
                    name,
                    cases,
                    failure: Some(format!(
                        "{} glued with {}: graph vector {} vs product {}",
                        text, label, direct, v
                    )),
                };
            }
        }
    }
    SuiteResult::pass(name, cases)
}

fn rotation(opts: &Options) -> SuiteResult {
    let name = "rotation";
    let mut cache = MatrixCache::new();
    let mut cases = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x0707);
    for n in 3..=opts.max_faces.max(3) {
        for _ in 0..4 {
            let spec = random_ring(&mut rng, n, opts.size_lo, opts.size_hi);
            let want = count_ring(&spec, &mut cache);
            for by in 1..spec.len() {
                cases += 1;
                let got = count_ring(&spec.rotate(by), &mut cache);
                if got != want {
                    return SuiteResult {
                        name,
                        cases,
                        failure: Some(format!(
                            "{} rotated by {}: {} vs {}",
                            spec, by, got, want
                        )),
                    };
                }
            }
        }
    }
    SuiteResult::pass(name, cases)
}

fn terminal_independence() -> SuiteResult {
    let name = "terminal-independence";
    let mut cache = MatrixCache::new();
    let mut cases = 0;
    for (s1, mid, s3) in [(6u32, (6u32, 2u32), 6u32), (7, (5, 2), 6), (8, (6, 1), 5)] {
        let spec = ChainSpec::new(vec![
            FaceSpec::terminal(s1),
            FaceSpec::interior(mid.0, mid.1),
            FaceSpec::terminal(s3),
        ])
        .unwrap();
        let want = count_chain(&spec, &mut cache);
        for k1 in 1..=s1 - 3 {
            for k3 in 1..=s3 - 3 {
                cases += 1;
                let mut row = x_row();
                for (s, k) in [(s1, k1), mid, (s3, k3)] {
                    row = cache.get(s, k).apply_row(&row);
                }
                let got = dot(&row, &y_vector());
                if got != want {
                    return SuiteResult {
                        name,
                        cases,
                        failure: Some(format!(
                            "{} with terminal offsets ({}, {}): {} vs {}",
                            spec, k1, k3, got, want
                        )),
                    };
                }
            }
        }
    }
    SuiteResult::pass(name, cases)
}

fn trace_decomposition() -> SuiteResult {
    let name = "trace-decomposition";
    let mut cache = MatrixCache::new();
    let mut cases = 0;
    let rings: [&[(u32, u32)]; 3] =
        [&[(6, 1), (6, 2), (6, 3)], &[(6, 2), (6, 2), (6, 2)], &[(5, 2), (6, 3), (7, 2)]];
    for faces in rings {
        let spec =
            RingSpec::new(faces.iter().map(|&(s, k)| FaceSpec::interior(s, k)).collect()).unwrap();
        let marked = build_ring(&spec);
        let seam = marked.seam().unwrap();
        let (d, c) = seam.edge;
        let (e, f) = (seam.e, seam.f);

        let mut prod = cache.get(faces[0].0, faces[0].1).clone();
        for &(s, k) in &faces[1..] {
            prod = prod.mul(cache.get(s, k));
        }

        let seam_cases: [ConstraintSet; 9] = [
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
        for (x, cs) in seam_cases.iter().enumerate() {
            cases += 1;
            let want = count_maximal(marked.graph(), cs);
            if prod.entry(x, x) != &want {
                return SuiteResult {
                    name,
                    cases,
                    failure: Some(format!(
                        "{} diagonal {}: matrix {} vs oracle {}",
                        spec,
                        x + 1,
                        prod.entry(x, x),
                        want
                    )),
                };
            }
        }
    }
    SuiteResult::pass(name, cases)
}

#[cfg(test)]
mod tests {
    use super::*;
    use polymatch::Count;

    /// The comparator must actually see differences, or the regeneration
    /// suite could pass vacuously.
    #[test]
    fn mismatch_detector_detects_injected_fault() {
        let a = matrix_s();
        assert_eq!(first_mismatch(&a, &matrix_s()), None);

        let mut rows: [[Count; 9]; 9] =
            core::array::from_fn(|r| core::array::from_fn(|c| a.entry(r, c).clone()));
        rows[4][7] += 1u32;
        let b = TransferMatrix::from_rows(rows);
        assert_eq!(first_mismatch(&a, &b), Some((4, 7)));
        assert_eq!(first_mismatch(&b, &a), Some((4, 7)));
    }

    #[test]
    fn default_suites_all_pass() {
        let opts = Options { max_faces: 3, size_lo: 4, size_hi: 6, seed: 1 };
        let results = run_all(&opts);
        assert_eq!(results.len(), 8);
        for r in &results {
            assert!(r.failure.is_none(), "{}: {:?}", r.name, r.failure);
            assert!(r.cases > 0);
        }
        let names: Vec<_> = results.iter().map(|r| r.name).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }
}
