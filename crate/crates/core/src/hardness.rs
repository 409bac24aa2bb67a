//! The explicit hard instances: the words `W(k,n)`, the ptNFAs `A(k,n)` that
//! reject exactly `W(k,n)`, their trimmed rpoNFA variant, and the unary
//! DAG-reachability gadget.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::nfa::{Alphabet, Letter, Nfa, StateId, StateSet, Word};
use crate::text::directive;

/// `C(k+n, n) - 1`, the length of `W(k,n)`.
pub fn w_word_len(k: u64, n: u64) -> BigUint {
    let mut c = BigUint::from(1u32);
    // C(k+n, n) = prod_{i=1..n} (k+i)/i, exact at every step
    for i in 1..=n {
        c = c * BigUint::from(k + i) / BigUint::from(i);
    }
    c - 1u32
}

fn push_w(k: usize, n: usize, out: &mut Word) {
    if k == 0 || n == 0 {
        return;
    }
    if n == 1 {
        out.extend(std::iter::repeat_n(Letter(0), k));
    } else if k == 1 {
        out.extend((0..n as u32).map(Letter));
    } else {
        push_w(k, n - 1, out);
        out.push(Letter(n as u32 - 1));
        push_w(k - 1, n, out);
    }
}

/// `W(k,n)` over `a1..an` (letter ids `0..n`).
pub fn w_word(k: usize, n: usize, caps: &Caps) -> Result<Word> {
    let len = w_word_len(k as u64, n as u64);
    if len > BigUint::from(caps.word_len) {
        return Err(Error::resource("W(k,n) length", caps.word_len));
    }
    let len: usize = len.try_into().expect("bounded by the word_len cap");
    let mut out = Vec::with_capacity(len);
    push_w(k, n, &mut out);
    debug_assert_eq!(out.len(), len);
    Ok(out)
}

/// Named states of `A(k,n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AknnState {
    /// `(i;m)` with `0 <= i <= 2k`, `1 <= m <= n`.
    Pair {
        i: usize,
        m: usize,
    },
    Max,
}

/// State numbering of `A(k,n)`: `(i;m)` is `(m-1)(2k+1) + i`, `max` comes last.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AknnLayout {
    pub k: usize,
    pub n: usize,
}

impl AknnLayout {
    pub fn new(k: usize, n: usize) -> Self {
        AknnLayout { k, n }
    }

    pub fn num_states(&self) -> usize {
        self.n * (2 * self.k + 1) + 1
    }

    pub fn pair(&self, i: usize, m: usize) -> StateId {
        debug_assert!(i <= 2 * self.k && (1..=self.n).contains(&m));
        StateId::from((m - 1) * (2 * self.k + 1) + i)
    }

    pub fn max(&self) -> StateId {
        StateId::from(self.n * (2 * self.k + 1))
    }

    pub fn id(&self, s: AknnState) -> StateId {
        match s {
            AknnState::Pair { i, m } => self.pair(i, m),
            AknnState::Max => self.max(),
        }
    }

    pub fn decode(&self, q: StateId) -> AknnState {
        let width = 2 * self.k + 1;
        if q == self.max() {
            AknnState::Max
        } else {
            AknnState::Pair {
                i: q.index() % width,
                m: q.index() / width + 1,
            }
        }
    }

    pub fn is_accepting(&self, s: AknnState) -> bool {
        match s {
            AknnState::Pair { i, .. } => i < self.k,
            AknnState::Max => true,
        }
    }

    pub fn name(&self, s: AknnState) -> String {
        s.to_string()
    }
}

impl fmt::Display for AknnState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AknnState::Pair { i, m } => write!(f, "({i};{m})"),
            AknnState::Max => f.write_str("max"),
        }
    }
}

/// Transitions of `A(k,n)` in construction order, as `(src, letter, dst)`.
pub(crate) fn aknn_transitions(layout: AknnLayout) -> Vec<(StateId, Letter, StateId)> {
    let AknnLayout { k, n } = layout;
    let max = layout.max();
    let mut t = Vec::new();
    for m in 1..=n {
        let am = Letter(m as u32 - 1);
        for i in 0..=2 * k {
            for j in 0..m - 1 {
                t.push((layout.pair(i, m), Letter(j as u32), layout.pair(i, m)));
            }
        }
        for i in (0..2 * k).filter(|&i| i != k) {
            t.push((layout.pair(i, m), am, layout.pair(i + 1, m)));
        }
        t.push((layout.pair(k, m), am, max));
        t.push((layout.pair(2 * k, m), am, max));
        t.push((max, am, max));
        for i in 0..k {
            for lower in 1..m {
                t.push((layout.pair(i, m), am, layout.pair(i + 1, lower)));
            }
        }
        for lower in 1..m {
            for i in 0..=2 * k {
                let target = if i < k { max } else { layout.pair(k + 1, m) };
                t.push((layout.pair(i, lower), am, target));
            }
        }
    }
    // every undefined transition goes to max
    let mut defined = vec![false; layout.num_states() * n];
    for &(p, a, _) in &t {
        defined[p.index() * n + a.index()] = true;
    }
    for q in 0..layout.num_states() {
        for a in 0..n {
            if !defined[q * n + a] {
                t.push((StateId::from(q), Letter(a as u32), max));
            }
        }
    }
    t
}

fn check_aknn_args(k: usize, n: usize, caps: &Caps) -> Result<()> {
    if k == 0 || n == 0 {
        return Err(Error::input("A(k,n) needs k >= 1 and n >= 1"));
    }
    if k as u64 > caps.aknn || n as u64 > caps.aknn {
        return Err(Error::resource("A(k,n) parameter", caps.aknn));
    }
    Ok(())
}

/// The ptNFA `A(k,n)` over `a1..an` accepting everything except `W(k,n)`.
pub fn build_aknn(k: usize, n: usize, caps: &Caps) -> Result<Nfa> {
    check_aknn_args(k, n, caps)?;
    let layout = AknnLayout::new(k, n);
    let mut b = Nfa::builder(Alphabet::indexed(n));
    for q in 0..layout.num_states() {
        let s = layout.decode(StateId::from(q));
        b.add_state(s.to_string());
        if layout.is_accepting(s) {
            b.accepting(StateId::from(q));
        }
    }
    for m in 1..=n {
        b.initial(layout.pair(0, m));
    }
    for (p, a, q) in aknn_transitions(layout) {
        b.transition(p, a, q);
    }
    b.build()
}

/// Removes `(k+1;i) .. (2k;i)` for every level. The input must be exactly
/// `build_aknn(k, n)`.
pub fn trim_aknn(a: &Nfa, k: usize, n: usize) -> Result<Nfa> {
    let fresh = build_aknn(k, n, &Caps::default())?;
    if *a != fresh {
        return Err(Error::input(format!(
            "automaton is not an unmodified A({k},{n})"
        )));
    }
    let layout = AknnLayout::new(k, n);
    let keep = |q: StateId| !matches!(layout.decode(q), AknnState::Pair { i, .. } if i > k);
    let mut renumber = vec![None; a.num_states()];
    let mut b = Nfa::builder(a.alphabet().clone());
    for q in a.states().filter(|&q| keep(q)) {
        let id = b.add_state(a.state_name(q));
        renumber[q.index()] = Some(id);
        if a.is_accepting(q) {
            b.accepting(id);
        }
        if a.is_initial(q) {
            b.initial(id);
        }
    }
    for (p, x, q) in a.transitions() {
        if let (Some(p), Some(q)) = (renumber[p.index()], renumber[q.index()]) {
            b.transition(p, x, q);
        }
    }
    b.build()
}

/// For every suffix `a_i w` of `W(k,n)`, checks that `w` is rejected from
/// `(k+1;i)` in `A(k,n)`.
pub fn check_suffix_rejection(k: usize, n: usize, caps: &Caps) -> Result<bool> {
    let a = build_aknn(k, n, caps)?;
    let w = w_word(k, n, caps)?;
    let layout = AknnLayout::new(k, n);
    for (pos, &x) in w.iter().enumerate() {
        let start = StateSet::singleton(layout.pair(k + 1, x.index() + 1));
        let reached = a.run_from(&start, &w[pos + 1..])?;
        if a.contains_accepting(&reached) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A directed acyclic graph with a distinguished source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    nodes: usize,
    edges: Vec<(usize, usize)>,
    source: usize,
    target: usize,
}

impl Dag {
    pub fn new(
        nodes: usize,
        mut edges: Vec<(usize, usize)>,
        source: usize,
        target: usize,
    ) -> Result<Dag> {
        if nodes == 0 {
            return Err(Error::input("a DAG needs at least one node"));
        }
        if source >= nodes || target >= nodes {
            return Err(Error::input("source or target out of range"));
        }
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= nodes || v >= nodes) {
            return Err(Error::input(format!("edge {u} -> {v} out of range")));
        }
        edges.sort_unstable();
        edges.dedup();
        let dag = Dag {
            nodes,
            edges,
            source,
            target,
        };
        if dag.topological_order().is_none() {
            return Err(Error::input("graph has a cycle"));
        }
        Ok(dag)
    }

    /// Reads `nodes: n`, `edge: u v`, `source: s`, `target: t` lines.
    pub fn parse(text: &str) -> Result<Dag> {
        let (mut nodes, mut source, mut target) = (None, None, None);
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let Some((key, rest)) = directive(raw) else {
                continue;
            };
            let nums: Vec<usize> = rest
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::parse(line, format!("`{t}` is not a node index")))
                })
                .collect::<Result<_>>()?;
            let single = |slot: &mut Option<usize>| -> Result<()> {
                match (nums.as_slice(), slot.is_some()) {
                    (_, true) => Err(Error::parse(line, format!("duplicate `{key}:`"))),
                    ([v], false) => {
                        *slot = Some(*v);
                        Ok(())
                    }
                    _ => Err(Error::parse(line, format!("`{key}:` takes one number"))),
                }
            };
            match key {
                "nodes" => single(&mut nodes)?,
                "source" => single(&mut source)?,
                "target" => single(&mut target)?,
                "edge" => match nums.as_slice() {
                    [u, v] => edges.push((*u, *v)),
                    _ => return Err(Error::parse(line, "`edge:` takes <u> <v>")),
                },
                other => return Err(Error::parse(line, format!("unknown directive `{other}`"))),
            }
        }
        let missing = |what: &str| Error::parse(0, format!("missing `{what}:`"));
        Dag::new(
            nodes.ok_or_else(|| missing("nodes"))?,
            edges,
            source.ok_or_else(|| missing("source"))?,
            target.ok_or_else(|| missing("target"))?,
        )
    }

    pub fn render(&self) -> String {
        let mut out = format!("nodes: {}\n", self.nodes);
        for (u, v) in &self.edges {
            out.push_str(&format!("edge: {u} {v}\n"));
        }
        out.push_str(&format!(
            "source: {}\ntarget: {}\n",
            self.source, self.target
        ));
        out
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indegree = vec![0usize; self.nodes];
        for &(_, v) in &self.edges {
            indegree[v] += 1;
        }
        let mut queue: VecDeque<usize> = (0..self.nodes).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(self.nodes);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &(_, v) in self.edges.iter().filter(|e| e.0 == u) {
                indegree[v] -= 1;
                if indegree[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
        (order.len() == self.nodes).then_some(order)
    }
}

/// Unary ptNFA that is universal iff the target is reachable from the source.
///
/// Node `v` becomes accepting state `v{v}`; `f1 .. f{n-1}` form a rejecting
/// chain entered from every node except the target and leaving into the
/// target, which carries the only self-loop. Edges out of the target are not
/// copied: the target is already an accepting sink, and an exit would make it
/// non-maximal in its own self-loop component.
pub fn dag_gadget(g: &Dag) -> Result<Nfa> {
    let n = g.nodes;
    let a = Letter(0);
    let mut b = Nfa::builder(Alphabet::new(["a"])?);
    let nodes: Vec<StateId> = (0..n).map(|v| b.add_state(format!("v{v}"))).collect();
    let f: Vec<StateId> = (1..n).map(|i| b.add_state(format!("f{i}"))).collect();
    let t = nodes[g.target];
    for &(u, v) in &g.edges {
        if u != g.target {
            b.transition(nodes[u], a, nodes[v]);
        }
    }
    if let (Some(&first), Some(&last)) = (f.first(), f.last()) {
        for &q in nodes.iter().filter(|&&q| q != t) {
            b.transition(q, a, first);
        }
        for w in f.windows(2) {
            b.transition(w[0], a, w[1]);
        }
        b.transition(last, a, t);
    }
    b.transition(t, a, t);
    for &q in &nodes {
        b.accepting(q);
    }
    b.initial(nodes[g.source]);
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, ClassLabel};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn w_words_match_their_definition() {
        let c = caps();
        assert_eq!(
            w_word(1, 3, &c).unwrap(),
            vec![Letter(0), Letter(1), Letter(2)]
        );
        assert!(w_word(0, 5, &c).unwrap().is_empty());
        assert!(w_word(3, 0, &c).unwrap().is_empty());
        let w22: Vec<u32> = w_word(2, 2, &c).unwrap().iter().map(|l| l.0).collect();
        assert_eq!(w22, [0, 0, 1, 0, 1]);
        assert_eq!(w_word_len(3, 3), BigUint::from(19u32));
        assert_eq!(w_word(3, 3, &c).unwrap().len(), 19);
    }

    #[test]
    fn w_word_respects_length_cap() {
        let tight = Caps {
            word_len: 10,
            ..caps()
        };
        assert!(matches!(w_word(3, 3, &tight), Err(Error::Resource { .. })));
    }

    #[test]
    fn a11_is_the_four_state_dfa() {
        let a = build_aknn(1, 1, &caps()).unwrap();
        assert_eq!(a.num_states(), 4);
        assert!(a.accepts(&[]).unwrap());
        assert!(!a.accepts(&[Letter(0)]).unwrap());
        assert!(a.accepts(&[Letter(0), Letter(0)]).unwrap());
        assert_eq!(
            a.step(&StateSet::singleton(StateId(0)), Letter(0)).unwrap(),
            StateSet::singleton(StateId(1))
        );
    }

    #[test]
    fn a23_has_sixteen_states_and_pair_names() {
        let a = build_aknn(2, 3, &caps()).unwrap();
        assert_eq!(a.num_states(), 16);
        assert_eq!(a.state_name(StateId(0)), "(0;1)");
        assert_eq!(a.state_name(StateId(15)), "max");
        assert!(a.state_by_name("(4;3)").is_some());
    }

    #[test]
    fn a22_rejects_exactly_w22_and_is_a_ptnfa() {
        let a = build_aknn(2, 2, &caps()).unwrap();
        assert_eq!(classify(&a).label, ClassLabel::PtNfa);
        assert!(!a
            .accepts(&[Letter(0), Letter(0), Letter(1), Letter(0), Letter(1)])
            .unwrap());
        assert!(a.accepts(&[Letter(0), Letter(1)]).unwrap());
    }

    #[test]
    fn trimming_keeps_language_and_drops_completeness() {
        let c = caps();
        let a = build_aknn(1, 1, &c).unwrap();
        let t = trim_aknn(&a, 1, 1).unwrap();
        assert_eq!(t.num_states(), 3);
        let a = build_aknn(2, 2, &c).unwrap();
        let t = trim_aknn(&a, 2, 2).unwrap();
        let r = classify(&t);
        assert!(!r.complete);
        assert_eq!(r.label, ClassLabel::RpoNfa);
        assert!(trim_aknn(&t, 2, 2).is_err());
    }

    #[test]
    fn suffixes_are_rejected_from_the_reentry_states() {
        for (k, n) in [(1, 2), (2, 2), (3, 3)] {
            assert!(check_suffix_rejection(k, n, &caps()).unwrap());
        }
    }

    #[test]
    fn dag_text_round_trips_and_rejects_cycles() {
        let g = Dag::parse("nodes: 3\nedge: 0 1\nsource: 0\ntarget: 2\n").unwrap();
        assert_eq!(Dag::parse(&g.render()).unwrap(), g);
        assert!(Dag::parse("nodes: 2\nedge: 0 1\nedge: 1 0\nsource: 0\ntarget: 1\n").is_err());
        assert!(Dag::parse("nodes: 2\nsource: 0\n").is_err());
    }

    #[test]
    fn gadget_is_a_ptnfa_with_2n_minus_1_states() {
        let g = Dag::new(3, vec![(0, 1), (2, 1)], 0, 2).unwrap();
        let a = dag_gadget(&g).unwrap();
        assert_eq!(a.num_states(), 5);
        assert!(classify(&a).is_ptnfa());
        assert!(!a.accepts(&[Letter(0), Letter(0)]).unwrap());
        let single = dag_gadget(&Dag::new(1, vec![], 0, 0).unwrap()).unwrap();
        assert!(classify(&single).is_ptnfa());
    }
}
