//! Seeded generators for the automaton families the oracle suites sample.
//!
//! Partially ordered families use the state index as a topological order:
//! every non-loop edge goes from a lower to a higher index.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::hardness::Dag;
use crate::nfa::{Alphabet, Letter, Nfa, StateId};

fn states(n: usize) -> impl Iterator<Item = StateId> {
    (0..n).map(|q| StateId(q as u32))
}

fn skeleton(n: usize, letters: usize) -> (crate::nfa::NfaBuilder, Vec<StateId>) {
    let mut b = Nfa::builder(Alphabet::indexed(letters));
    let qs = (0..n).map(|q| b.add_state(format!("q{q}"))).collect();
    (b, qs)
}

fn mark<R: Rng + ?Sized>(rng: &mut R, b: &mut crate::nfa::NfaBuilder, n: usize, p_accept: f64) {
    for q in states(n) {
        if rng.gen_bool(p_accept) {
            b.accepting(q);
        }
    }
}

/// Arbitrary NFA: each triple `(p, a, q)` is present with probability
/// `density`; at least one initial state.
pub fn random_nfa<R: Rng + ?Sized>(rng: &mut R, n: usize, letters: usize, density: f64) -> Nfa {
    assert!(n > 0 && letters > 0);
    let (mut b, qs) = skeleton(n, letters);
    for &p in &qs {
        for a in 0..letters {
            for &q in &qs {
                if rng.gen_bool(density) {
                    b.transition(p, Letter(a as u32), q);
                }
            }
        }
    }
    b.initial(qs[0]);
    for &q in &qs[1..] {
        if rng.gen_bool(0.2) {
            b.initial(q);
        }
    }
    mark(rng, &mut b, n, 0.5);
    b.build().expect("generated names are valid")
}

/// Complete, partially ordered, self-loop deterministic NFA. Per state and
/// letter: a self-loop alone, or one or two forward successors. The last
/// state is a sink.
pub fn random_complete_rpo<R: Rng + ?Sized>(rng: &mut R, n: usize, letters: usize) -> Nfa {
    assert!(n > 0 && letters > 0);
    let (mut b, qs) = skeleton(n, letters);
    for (i, &p) in qs.iter().enumerate() {
        for a in (0..letters).map(|a| Letter(a as u32)) {
            if i + 1 == n || rng.gen_bool(0.5) {
                b.transition(p, a, p);
                continue;
            }
            let first = rng.gen_range(i + 1..n);
            b.transition(p, a, qs[first]);
            if rng.gen_bool(0.3) {
                b.transition(p, a, qs[rng.gen_range(i + 1..n)]);
            }
        }
    }
    b.initial(qs[0]);
    mark(rng, &mut b, n, 0.5);
    b.build().expect("generated names are valid")
}

/// Saturated poNFA: self-loops everywhere plus random forward edges.
pub fn random_saturated_po<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    letters: usize,
    density: f64,
) -> Nfa {
    assert!(n > 0 && letters > 0);
    let (mut b, qs) = skeleton(n, letters);
    for (i, &p) in qs.iter().enumerate() {
        for a in (0..letters).map(|a| Letter(a as u32)) {
            b.transition(p, a, p);
            for &q in &qs[i + 1..] {
                if rng.gen_bool(density) {
                    b.transition(p, a, q);
                }
            }
        }
    }
    let mut initial: Vec<StateId> = qs.iter().copied().filter(|_| rng.gen_bool(0.3)).collect();
    if initial.is_empty() {
        initial.push(*qs.choose(rng).expect("n > 0"));
    }
    for q in initial {
        b.initial(q);
    }
    mark(rng, &mut b, n, 0.3);
    b.build().expect("generated names are valid")
}

/// poNFA over the single letter `a`, with self-loops and forward edges each
/// present with probability `density`.
pub fn random_unary_po<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Nfa {
    assert!(n > 0);
    let mut b = Nfa::builder(Alphabet::new(["a"]).expect("valid name"));
    let qs: Vec<StateId> = (0..n).map(|q| b.add_state(format!("q{q}"))).collect();
    let a = Letter(0);
    for (i, &p) in qs.iter().enumerate() {
        for &q in &qs[i..] {
            if rng.gen_bool(density) {
                b.transition(p, a, q);
            }
        }
    }
    b.initial(qs[0]);
    if n > 1 && rng.gen_bool(0.2) {
        b.initial(qs[rng.gen_range(1..n)]);
    }
    mark(rng, &mut b, n, 0.6);
    b.build().expect("generated names are valid")
}

/// DAG on `nodes` nodes with forward edges of probability `density` under a
/// random relabeling; source and target are distinct when `nodes > 1`.
pub fn random_dag<R: Rng + ?Sized>(rng: &mut R, nodes: usize, density: f64) -> Dag {
    assert!(nodes > 0);
    let mut label: Vec<usize> = (0..nodes).collect();
    label.shuffle(rng);
    let mut edges = Vec::new();
    for u in 0..nodes {
        for v in u + 1..nodes {
            if rng.gen_bool(density) {
                edges.push((label[u], label[v]));
            }
        }
    }
    let source = rng.gen_range(0..nodes);
    let target = if nodes > 1 {
        let t = rng.gen_range(0..nodes - 1);
        if t >= source {
            t + 1
        } else {
            t
        }
    } else {
        source
    };
    Dag::new(nodes, edges, source, target).expect("forward edges under a relabeling are acyclic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{
        is_complete, is_partially_ordered, is_saturated, is_self_loop_deterministic,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn families_have_their_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = random_complete_rpo(&mut rng, 6, 3);
            assert!(is_complete(&a).holds());
            assert!(is_partially_ordered(&a).holds());
            assert!(is_self_loop_deterministic(&a).holds());
            let s = random_saturated_po(&mut rng, 5, 2, 0.3);
            assert!(is_saturated(&s).holds() && is_partially_ordered(&s).holds());
            let u = random_unary_po(&mut rng, 7, 0.4);
            assert!(is_partially_ordered(&u).holds() && u.num_letters() == 1);
            let g = random_dag(&mut rng, 9, 0.3);
            assert_ne!(g.source(), g.target());
        }
    }

    #[test]
    fn seeds_reproduce() {
        let a = random_nfa(&mut ChaCha8Rng::seed_from_u64(3), 5, 2, 0.3);
        let b = random_nfa(&mut ChaCha8Rng::seed_from_u64(3), 5, 2, 0.3);
        assert_eq!(a, b);
    }
}
