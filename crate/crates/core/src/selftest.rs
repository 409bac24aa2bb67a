//! Cross-module oracle suites with order-stable pass/fail reporting.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::caps::Caps;
use crate::classify::{is_confluent, is_ums};
use crate::dfa::determinize;
use crate::error::Result;
use crate::hardness::{build_aknn, dag_gadget, w_word, w_word_len, Dag};
use crate::nfa::Letter;
use crate::random::{random_complete_rpo, random_dag};
use crate::universality::universal;

/// Failure descriptions kept per suite.
const KEPT_FAILURES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub passed: u64,
    pub failed: u64,
    /// The first few failures.
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport {
            name,
            passed: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(describe());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestReport {
    pub suites: Vec<SuiteReport>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.failed == 0)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            writeln!(
                f,
                "suite {}: {} passed, {} failed",
                s.name, s.passed, s.failed
            )?;
            for msg in &s.failures {
                writeln!(f, "  failure: {msg}")?;
            }
        }
        let failed: u64 = self.suites.iter().map(|s| s.failed).sum();
        writeln!(f, "selftest: {}", if failed == 0 { "pass" } else { "fail" })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelftestConfig {
    pub seed: u64,
    /// Samples for the randomized suites.
    pub samples: usize,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            seed: 0,
            samples: 1000,
        }
    }
}

/// Confluence against UMS on random complete self-loop deterministic poNFAs
/// with at most 8 states and 3 letters.
pub fn confluence_ums_suite<R: Rng + ?Sized>(rng: &mut R, samples: usize) -> SuiteReport {
    let mut report = SuiteReport::new("confluence-vs-ums");
    for _ in 0..samples {
        let (n, letters) = (rng.gen_range(1..=8), rng.gen_range(1..=3));
        let a = random_complete_rpo(rng, n, letters);
        let confluent = is_confluent(&a)
            .expect("generated automata are partially ordered")
            .holds();
        let ums = is_ums(&a).holds();
        report.record(confluent == ums, || {
            format!("confluent = {confluent}, ums = {ums} on\n{a}")
        });
    }
    report
}

/// The complement of `A(k,n)` is exactly `{W(k,n)}`, of length `C(k+n,n) - 1`,
/// for all `k, n <= max`.
pub fn aknn_law_suite(max: usize, caps: &Caps) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("aknn-exact-language");
    for k in 1..=max {
        for n in 1..=max {
            let co = determinize(&build_aknn(k, n, caps)?, caps)?.complement()?;
            let w = w_word(k, n, caps)?;
            let size = co.language_size();
            let ok = size == Some(BigUint::from(1u32))
                && co.accepts(&w)?
                && BigUint::from(w.len()) == w_word_len(k as u64, n as u64);
            report.record(ok, || format!("k = {k}, n = {n}: complement size {size:?}"));
        }
    }
    Ok(report)
}

/// Plain BFS over the DAG edges.
pub fn reachable(g: &Dag, from: usize, to: usize) -> bool {
    let mut seen = vec![false; g.nodes()];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(u) = queue.pop_front() {
        if u == to {
            return true;
        }
        for &(_, v) in g.edges().iter().filter(|e| e.0 == u) {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    false
}

/// Gadget universality against reachability on random DAGs with at most 12
/// nodes; non-universal gadgets must reject `a^(n-1)`.
pub fn dag_suite<R: Rng + ?Sized>(rng: &mut R, samples: usize, caps: &Caps) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("dag-gadget");
    for _ in 0..samples {
        let nodes = rng.gen_range(2..=12);
        let density = rng.gen_range(0.05..0.5);
        let g = random_dag(rng, nodes, density);
        let a = dag_gadget(&g)?;
        let verdict = universal(&a, caps)?;
        let reach = reachable(&g, g.source(), g.target());
        let ok =
            verdict.universal == reach && (reach || !a.accepts(&vec![Letter(0); nodes - 1])?);
        report.record(ok, || {
            format!(
                "universal = {}, reachable = {reach} on\n{}",
                verdict.universal,
                g.render()
            )
        });
    }
    Ok(report)
}

/// Runs every suite, each on its own seeded stream, in parallel.
pub fn run_selftest(config: &SelftestConfig, caps: &Caps) -> Result<SelftestReport> {
    let stream = |i: u64| ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(i));
    let (confluence, law, dag) = std::thread::scope(|s| {
        let confluence = s.spawn(|| confluence_ums_suite(&mut stream(0), config.samples));
        let law = s.spawn(|| aknn_law_suite(3, caps));
        let dag = s.spawn(|| dag_suite(&mut stream(1), config.samples, caps));
        (
            confluence.join().expect("suite thread"),
            law.join().expect("suite thread"),
            dag.join().expect("suite thread"),
        )
    });
    Ok(SelftestReport {
        suites: vec![confluence, law?, dag?],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_selftest_passes() {
        let report = run_selftest(
            &SelftestConfig {
                seed: 1,
                samples: 50,
            },
            &Caps::default(),
        )
        .unwrap();
        assert!(report.all_passed(), "{report}");
        assert_eq!(report.suites[1].passed, 9);
    }
}
