//! Randomized invariants, each runnable with a chosen number of cases.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use magspec::cheeger::{
    check_cheeger_inequalities, check_cheeger_monotonicity, cheeger_constant, classical_cut_ratio,
    frustration_index, PotentialRange,
};
use magspec::graph::{EdgeId, EdgeSpec, MWGraph, VertexId, VertexPartition, WeightKind};
use magspec::hom::{search_hom, SearchLimits};
use magspec::linalg::CMatrix;
use magspec::preorder::{homomorphism_relations, spanning_subgraph_monotone};
use magspec::spectra::{minimal_shift, min_max_check, shift_less, spectrum, HermitianOperator, Spectrum, SHIFT_TOL};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use super::{all_kinds, connected_graph, gauge, gauge_map, raw_graph, Potentials, RawGraph};

pub struct Suite {
    pub name: &'static str,
    pub run: fn(&mut TestRunner) -> Result<(), String>,
}

pub fn runner(cases: u32, deterministic: bool) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    if deterministic {
        TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
    } else {
        TestRunner::new(config)
    }
}

fn run<S: Strategy>(
    runner: &mut TestRunner,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn close(a: &Spectrum, b: &Spectrum, tol: f64) -> bool {
    a.len() == b.len() && a.values().iter().zip(b.values()).all(|(x, y)| (x - y).abs() <= tol)
}

fn spec(g: &MWGraph) -> Result<Spectrum, TestCaseError> {
    spectrum(g).map_err(|e| TestCaseError::fail(e.to_string()))
}

fn ok<T>(r: magspec::Result<T>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

pub fn gauge_invariance(r: &mut TestRunner) -> Result<(), String> {
    let s = raw_graph(1, 10, all_kinds(), Potentials::Circle, true).prop_flat_map(|g| {
        let n = g.n;
        (Just(g), gauge(n))
    });
    run(r, s, |(raw, xi)| {
        let g = raw.build();
        let map = gauge_map(&g, &xi);
        let h = g.gauge_transform(|v| map[&v]);
        let tol = 1e-9 * g.rho_max().max(1.0);
        prop_assert!(close(&spec(&g)?, &spec(&h)?, tol));
        Ok(())
    })
}

pub fn kernel_iff_trivial(r: &mut TestRunner) -> Result<(), String> {
    let s = connected_graph(1, 10, all_kinds(), Potentials::Eighths, true);
    run(r, s, |raw| {
        let g = raw.build();
        let l1 = spec(&g)?.values()[0];
        prop_assert_eq!(l1 <= 1e-9, g.is_trivial_potential(), "λ₁ = {}", l1);
        Ok(())
    })
}

pub fn trace_identity(r: &mut TestRunner) -> Result<(), String> {
    let s = raw_graph(1, 10, vec![WeightKind::Combinatorial], Potentials::Circle, true);
    run(r, s, |raw| {
        let g = raw.build();
        let expected: f64 =
            g.edges().iter().map(|e| if e.is_loop() { 2.0 - 2.0 * e.alpha.cos() } else { 2.0 }).sum();
        let got = spec(&g)?.sum();
        prop_assert!((got - expected).abs() <= 1e-9 * expected.max(1.0), "{} vs {}", got, expected);
        Ok(())
    })
}

pub fn standard_below_combinatorial(r: &mut TestRunner) -> Result<(), String> {
    let s = raw_graph(1, 10, vec![WeightKind::Standard], Potentials::Circle, true);
    run(r, s, |raw| {
        let std = raw.build();
        let com = std.with_kind(WeightKind::Combinatorial);
        prop_assert!(shift_less(&spec(&std)?, &spec(&com)?, 0, SHIFT_TOL).holds);
        Ok(())
    })
}

/// A graph together with a quotient of it that has extra edges, so a
/// homomorphism from the first to the second is known to exist.
#[derive(Debug, Clone)]
pub struct HomPair {
    pub source: MWGraph,
    pub target: MWGraph,
}

fn hom_pair(max_n: usize, potentials: Potentials) -> impl Strategy<Value = HomPair> {
    let kinds = vec![WeightKind::Combinatorial, WeightKind::Standard];
    connected_graph(2, max_n, kinds, potentials, false).prop_flat_map(move |raw| {
        let n = raw.n;
        let alpha = match potentials {
            Potentials::Zero => Just(0.0).boxed(),
            _ => prop_oneof![Just(0.0), Just(PI)].boxed(),
        };
        (
            Just(raw),
            proptest::collection::vec((0..n, 0..n), 0..=2),
            proptest::collection::vec((0..n, 0..n, alpha), 0..=3),
        )
            .prop_map(|(raw, merges, extra)| build_pair(&raw, &merges, &extra))
    })
}

fn build_pair(raw: &RawGraph, merges: &[(usize, usize)], extra: &[(usize, usize, f64)]) -> HomPair {
    let source = raw.build();
    let kind = source.kind();
    let mut root: Vec<usize> = (0..raw.n).collect();
    fn find(root: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while root[x] != x {
            x = root[x];
        }
        x
    }
    for &(a, b) in merges {
        let (ra, rb) = (find(&mut root, a), find(&mut root, b));
        if ra != rb {
            root[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut classes: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for v in 0..raw.n {
        let r = find(&mut root, v);
        classes.entry(r).or_default().push(VertexId(v as u32));
    }
    let blocks: Vec<Vec<VertexId>> = classes.into_values().filter(|b| b.len() > 1).collect();
    let mut target = if blocks.is_empty() {
        source.clone()
    } else {
        source.contract_vertices(&VertexPartition::new(blocks).unwrap(), kind).unwrap()
    };
    // Extra edges raise standard vertex weights, which would break the
    // homomorphism, so they are only added for combinatorial weights.
    if kind == WeightKind::Combinatorial {
        for &(a, b, alpha) in extra {
            let (a, b) = (find(&mut root, a), find(&mut root, b));
            let id = EdgeId(target.edge_count() as u32 + 100);
            let spec = EdgeSpec { id, src: VertexId(a as u32), dst: VertexId(b as u32), weight: None, alpha };
            target = target.add_edge(spec, kind).unwrap();
        }
    }
    HomPair { source, target }
}

pub fn homomorphism_implication(r: &mut TestRunner) -> Result<(), String> {
    run(r, hom_pair(8, Potentials::Signed), |pair| {
        let limits = SearchLimits::default();
        let hit = ok(search_hom(&pair.source, &pair.target, limits))?;
        prop_assert!(hit.is_some(), "a homomorphism exists but none was found");
        let hom = hit.unwrap();
        prop_assert!(hom.is_mw_hom());
        let rels = ok(homomorphism_relations(&pair.source, &pair.target, &hom))?;
        prop_assert!(rels.iter().all(|r| r.numerically_verified));
        let s = spec(&pair.source)?;
        let t = spec(&pair.target)?;
        prop_assert!(shift_less(&s, &t, 0, SHIFT_TOL).holds);
        if hom.is_measure_preserving() {
            let d = s.len() - t.len();
            prop_assert!(shift_less(&t, &s, d, SHIFT_TOL).holds);
        }
        if let Some(back) = ok(search_hom(&pair.target, &pair.source, limits))? {
            prop_assert!(shift_less(&t, &s, 0, SHIFT_TOL).holds);
            prop_assert!(back.is_mw_hom());
        }
        Ok(())
    })
}

fn sorted_values() -> impl Strategy<Value = Spectrum> {
    proptest::collection::vec((0u32..9).prop_map(|k| k as f64 / 2.0), 0..=10).prop_map(Spectrum::new)
}

pub fn shift_algebra(r: &mut TestRunner) -> Result<(), String> {
    run(r, (sorted_values(), sorted_values(), sorted_values()), |(a, b, c)| {
        let tol = SHIFT_TOL;
        prop_assert!(shift_less(&a, &a, 0, tol).holds);
        let rab = minimal_shift(&a, &b, tol);
        prop_assert!(shift_less(&a, &b, rab, tol).holds);
        prop_assert!(shift_less(&a, &b, rab + 1, tol).holds);
        if rab > 0 {
            prop_assert!(!shift_less(&a, &b, rab - 1, tol).holds);
        }
        let rbc = minimal_shift(&b, &c, tol);
        prop_assert!(shift_less(&a, &c, rab + rbc, tol).holds, "transitivity");
        if a.len() == b.len() && rab == 0 && minimal_shift(&b, &a, tol) == 0 {
            prop_assert_eq!(a.values(), b.values());
        }
        Ok(())
    })
}

pub fn spanning_subgraph(r: &mut TestRunner) -> Result<(), String> {
    let s = raw_graph(1, 10, vec![WeightKind::Combinatorial], Potentials::Circle, true).prop_flat_map(|g| {
        let m = g.edges.len();
        (Just(g), proptest::collection::vec(any::<bool>(), m))
    });
    run(r, s, |(raw, drop)| {
        let g = raw.build();
        let removed: Vec<EdgeId> = g.edge_ids().zip(&drop).filter(|(_, d)| **d).map(|(e, _)| e).collect();
        let (sub, cert) = ok(spanning_subgraph_monotone(&g, &removed))?;
        prop_assert!(cert.relations.iter().all(|r| r.numerically_verified));
        prop_assert!(shift_less(&spec(&sub)?, &spec(&g)?, 0, SHIFT_TOL).holds);
        Ok(())
    })
}

pub fn cheeger_monotone(r: &mut TestRunner) -> Result<(), String> {
    run(r, hom_pair(8, Potentials::Signed), |pair| {
        let hom = ok(search_hom(&pair.source, &pair.target, SearchLimits::default()))?;
        prop_assert!(hom.is_some());
        prop_assert!(ok(check_cheeger_monotonicity(&hom.unwrap(), &pair.source, &pair.target, 3))?);
        Ok(())
    })
}

pub fn cheeger_inequality_k1(r: &mut TestRunner) -> Result<(), String> {
    let s = raw_graph(1, 8, all_kinds(), Potentials::Signed, true);
    run(r, s, |raw| {
        let c = ok(check_cheeger_inequalities(&raw.build(), 1))?;
        prop_assert!(c.holds(), "{:?}", c);
        Ok(())
    })
}

/// Graphs with zero potential moved by a random gauge, so `α ~ 0` but `α ≠ 0`.
fn gauged_trivial(min_n: usize, max_n: usize) -> impl Strategy<Value = MWGraph> {
    raw_graph(min_n, max_n, all_kinds(), Potentials::Zero, true)
        .prop_flat_map(|g| {
            let n = g.n;
            (Just(g), gauge(n))
        })
        .prop_map(|(raw, xi)| {
            let g = raw.build();
            let map = gauge_map(&g, &xi);
            g.gauge_transform(|v| map[&v])
        })
}

pub fn cheeger_inequality_k2(r: &mut TestRunner) -> Result<(), String> {
    run(r, gauged_trivial(2, 8), |g| {
        let c = ok(check_cheeger_inequalities(&g, 2))?;
        prop_assert!(c.holds(), "{:?}", c);
        Ok(())
    })
}

pub fn frustration_zero_iff_trivial(r: &mut TestRunner) -> Result<(), String> {
    let s = raw_graph(1, 10, all_kinds(), Potentials::Signed, true);
    run(r, s, |raw| {
        let g = raw.build();
        let iota = ok(frustration_index(&g, Some(PotentialRange::Signed)))?;
        prop_assert!(iota.certified_exact);
        prop_assert_eq!(iota.value <= 1e-9, g.is_trivial_potential(), "ι = {}", iota.value);
        Ok(())
    })
}

pub fn classical_h2(r: &mut TestRunner) -> Result<(), String> {
    run(r, gauged_trivial(2, 8), |g| {
        let h2 = ok(cheeger_constant(&g, 2, None))?.value;
        let classical = ok(classical_cut_ratio(&g))?;
        prop_assert!((h2 - classical).abs() <= 1e-9 * classical.max(1.0), "h₂ = {}, cut ratio = {}", h2, classical);
        Ok(())
    })
}

fn hermitian(n: usize) -> impl Strategy<Value = CMatrix> {
    proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n * n).prop_map(move |raw| {
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                let (re, im) = raw[i * n + j];
                if i == j {
                    data[i * n + i] = Complex64::new(re, 0.0);
                } else if i < j {
                    data[i * n + j] = Complex64::new(re, im);
                    data[j * n + i] = Complex64::new(re, -im);
                }
            }
        }
        CMatrix::from_rows(n, data)
    })
}

pub fn min_max(r: &mut TestRunner) -> Result<(), String> {
    let s = (1usize..=10).prop_flat_map(|n| {
        (hermitian(n), proptest::collection::vec(0.25f64..4.0, n), 1..=n, any::<u64>())
    });
    run(r, s, |(m, w, k, seed)| {
        let labels = (0..m.dim() as u32).map(VertexId).collect();
        let op = HermitianOperator::new(m, labels, &w);
        prop_assert!(ok(min_max_check(&op, k, 16, seed))?);
        Ok(())
    })
}

pub const SUITES: [Suite; 13] = [
    Suite { name: "gauge invariance of spectra", run: gauge_invariance },
    Suite { name: "kernel iff trivial potential", run: kernel_iff_trivial },
    Suite { name: "trace identity", run: trace_identity },
    Suite { name: "standard below combinatorial", run: standard_below_combinatorial },
    Suite { name: "homomorphism implication", run: homomorphism_implication },
    Suite { name: "shift relation algebra", run: shift_algebra },
    Suite { name: "spanning-subgraph monotonicity", run: spanning_subgraph },
    Suite { name: "Cheeger monotonicity", run: cheeger_monotone },
    Suite { name: "Cheeger inequality k=1", run: cheeger_inequality_k1 },
    Suite { name: "Cheeger inequality k=2", run: cheeger_inequality_k2 },
    Suite { name: "frustration zero iff trivial", run: frustration_zero_iff_trivial },
    Suite { name: "classical h2", run: classical_h2 },
    Suite { name: "min-max characterisation", run: min_max },
];
