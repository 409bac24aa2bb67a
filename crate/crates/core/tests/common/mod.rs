//! Oracles for the integration tests. They only read an `Nfa` through its
//! transition table and never call the deciders they check.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use poset_automata::{Letter, Nfa, StateId};

pub type Set = BTreeSet<u32>;

pub fn initial(a: &Nfa) -> Set {
    a.initial().iter().map(|q| q.0).collect()
}

pub fn step(a: &Nfa, s: &Set, x: Letter) -> Set {
    s.iter()
        .flat_map(|&q| a.successors(StateId(q), x).iter().map(|r| r.0))
        .collect()
}

pub fn run(a: &Nfa, from: &Set, w: &[Letter]) -> Set {
    w.iter().fold(from.clone(), |s, &x| step(a, &s, x))
}

pub fn accepting(a: &Nfa, s: &Set) -> bool {
    s.iter().any(|&q| a.is_accepting(StateId(q)))
}

pub fn accepts(a: &Nfa, w: &[Letter]) -> bool {
    accepting(a, &run(a, &initial(a), w))
}

pub fn letters(a: &Nfa) -> Vec<Letter> {
    (0..a.num_letters() as u32).map(Letter).collect()
}

/// Every word of length at most `max_len`, length-lex.
pub fn all_words(num_letters: usize, max_len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for x in 0..num_letters as u32 {
                let mut v: Vec<Letter> = w.clone();
                v.push(Letter(x));
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Largest `L` with at most `budget` words of length `<= L`, never above `cap`.
pub fn feasible_len(num_letters: usize, budget: u64, cap: usize) -> usize {
    let mut total = 1u64;
    let mut layer = 1u64;
    let mut len = 0;
    while len < cap {
        layer = layer.saturating_mul(num_letters as u64);
        if total.saturating_add(layer) > budget {
            break;
        }
        total += layer;
        len += 1;
    }
    len
}

/// First rejected word of length at most `max_len` in length-lex order, by
/// walking the word tree.
pub fn brute_first_rejected(a: &Nfa, max_len: usize) -> Option<Vec<Letter>> {
    let mut layer: Vec<(Vec<Letter>, Set)> = vec![(vec![], initial(a))];
    for len in 0..=max_len {
        if let Some((w, _)) = layer.iter().find(|(_, s)| !accepting(a, s)) {
            return Some(w.clone());
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::with_capacity(layer.len() * a.num_letters());
        for (w, s) in &layer {
            for x in letters(a) {
                let mut v = w.clone();
                v.push(x);
                next.push((v, step(a, s, x)));
            }
        }
        layer = next;
    }
    None
}

/// Length of the shortest rejected word by breadth-first search over all
/// reachable subsets; exact, since every reachable subset is visited.
pub fn shortest_rejected_len(a: &Nfa) -> Option<usize> {
    let start = initial(a);
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((s, d)) = queue.pop_front() {
        if !accepting(a, &s) {
            return Some(d);
        }
        for x in letters(a) {
            let t = step(a, &s, x);
            if seen.insert(t.clone()) {
                queue.push_back((t, d + 1));
            }
        }
    }
    None
}

/// Whether `a` and `b` agree on every word of length at most `max_len`, by
/// breadth-first search over pairs of reached subsets.
pub fn agree_up_to(a: &Nfa, b: &Nfa, max_len: usize) -> bool {
    let start = (initial(a), initial(b));
    let mut seen = HashSet::from([start.clone()]);
    let mut layer = vec![start];
    for len in 0..=max_len {
        if layer
            .iter()
            .any(|(s, t)| accepting(a, s) != accepting(b, t))
        {
            return false;
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for (s, t) in &layer {
            for x in letters(a) {
                let p = (step(a, s, x), step(b, t, x));
                if seen.insert(p.clone()) {
                    next.push(p);
                }
            }
        }
        layer = next;
    }
    true
}

pub fn binom(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `W(k,n)` as 0-based letter ids, straight from the recursion.
pub fn w_oracle(k: usize, n: usize) -> Vec<u32> {
    if k == 0 || n == 0 {
        return vec![];
    }
    if n == 1 {
        return vec![0; k];
    }
    if k == 1 {
        return (0..n as u32).collect();
    }
    let mut w = w_oracle(k, n - 1);
    w.push(n as u32 - 1);
    w.extend(w_oracle(k - 1, n));
    w
}

/// Reachability order with self-loops ignored is acyclic.
pub fn partially_ordered(a: &Nfa) -> bool {
    let n = a.num_states();
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![vec![]; n];
    for (p, _, q) in a.transitions() {
        if p != q && !out[p.index()].contains(&q.index()) {
            out[p.index()].push(q.index());
            indeg[q.index()] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&q| indeg[q] == 0).collect();
    let mut done = 0;
    while let Some(p) = queue.pop_front() {
        done += 1;
        for &q in &out[p] {
            indeg[q] -= 1;
            if indeg[q] == 0 {
                queue.push_back(q);
            }
        }
    }
    done == n
}

pub fn complete(a: &Nfa) -> bool {
    a.states()
        .all(|q| letters(a).iter().all(|&x| !a.successors(q, x).is_empty()))
}

/// Every state `q` is the only state without a `Σ(q)`-exit in the weakly
/// connected component of `q` in the graph of `Σ(q)`-labeled transitions.
pub fn ums(a: &Nfa) -> bool {
    let mut by_alphabet: HashMap<Vec<Letter>, Vec<StateId>> = HashMap::new();
    for q in a.states() {
        let sigma: Vec<Letter> = letters(a)
            .into_iter()
            .filter(|&x| a.has_transition(q, x, q))
            .collect();
        if !sigma.is_empty() {
            by_alphabet.entry(sigma).or_default().push(q);
        }
    }
    let n = a.num_states();
    for (sigma, owners) in by_alphabet {
        let mut adj: Vec<Vec<usize>> = vec![vec![]; n];
        let mut exits = vec![false; n];
        for p in a.states() {
            for &x in &sigma {
                for &q in a.successors(p, x) {
                    if q != p {
                        adj[p.index()].push(q.index());
                        adj[q.index()].push(p.index());
                        exits[p.index()] = true;
                    }
                }
            }
        }
        let mut comp = vec![usize::MAX; n];
        let mut c = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = c;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &v in &adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = c;
                        stack.push(v);
                    }
                }
            }
            c += 1;
        }
        let mut maximal_count = vec![0usize; c];
        for s in 0..n {
            if !exits[s] {
                maximal_count[comp[s]] += 1;
            }
        }
        for q in owners {
            if exits[q.index()] || maximal_count[comp[q.index()]] != 1 {
                return false;
            }
        }
    }
    true
}

pub fn ptnfa(a: &Nfa) -> bool {
    complete(a) && partially_ordered(a) && ums(a)
}

/// Arbitrary NFA with at most `max_states` states and `max_letters` letters.
pub fn arb_nfa(
    max_states: usize,
    max_letters: usize,
) -> impl proptest::strategy::Strategy<Value = Nfa> {
    use proptest::prelude::*;
    (1..=max_states, 1..=max_letters).prop_flat_map(|(n, l)| {
        (
            proptest::collection::vec(proptest::bool::weighted(0.25), n * l * n),
            proptest::collection::vec(proptest::bool::weighted(0.3), n),
            proptest::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(cells, init, acc)| build(n, l, &cells, &init, &acc))
    })
}

/// Forward-only transitions over the index order, optionally saturated.
pub fn arb_po_nfa(
    max_states: usize,
    max_letters: usize,
) -> impl proptest::strategy::Strategy<Value = Nfa> {
    use proptest::prelude::*;
    (1..=max_states, 1..=max_letters).prop_flat_map(|(n, l)| {
        (
            proptest::collection::vec(proptest::bool::weighted(0.3), n * l * n),
            proptest::collection::vec(proptest::bool::weighted(0.3), n),
            proptest::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(cells, init, acc)| {
                let cells: Vec<bool> = cells
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| c && (i % n) >= (i / (l * n)))
                    .collect();
                build(n, l, &cells, &init, &acc)
            })
    })
}

/// `cells[(p * l + a) * n + q]` says whether `p -a-> q` exists; state 0 is
/// always initial.
pub fn build(n: usize, l: usize, cells: &[bool], init: &[bool], acc: &[bool]) -> Nfa {
    let mut b = Nfa::builder(poset_automata::Alphabet::indexed(l));
    for q in 0..n {
        b.add_state(format!("q{q}"));
    }
    for p in 0..n {
        for a in 0..l {
            for q in 0..n {
                if cells[(p * l + a) * n + q] {
                    b.transition(StateId(p as u32), Letter(a as u32), StateId(q as u32));
                }
            }
        }
        if p == 0 || init[p] {
            b.initial(StateId(p as u32));
        }
        if acc[p] {
            b.accepting(StateId(p as u32));
        }
    }
    b.build().expect("generated names are valid")
}
