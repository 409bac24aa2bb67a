//! Structural classes of partially ordered automata.
//!
//! Every predicate returns a [`Verdict`]; a failing verdict carries a
//! [`Witness`] that can be replayed against the automaton with
//! [`Witness::replay`]. Witnesses are the first violation in canonical
//! `(state, letter)` order.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::nfa::{Letter, Nfa, StateId, StateSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `q·a = ∅`.
    MissingTransition { state: StateId, letter: Letter },
    /// `q ∉ q·a`, found while checking saturation.
    MissingSelfLoop { state: StateId, letter: Letter },
    /// `p < q` and `q < p`.
    Cycle { p: StateId, q: StateId },
    /// `q ∈ q·a` and `other ∈ q·a` with `other ≠ q`.
    SelfLoopBranch {
        state: StateId,
        letter: Letter,
        other: StateId,
    },
    /// `s ∈ q·a`, `t ∈ q·b` and no `w ∈ {a,b}*` with `sw ∩ tw ≠ ∅`.
    NonConfluent {
        state: StateId,
        a: Letter,
        b: Letter,
        s: StateId,
        t: StateId,
    },
    /// The component of `state` in `G(A, Σ(state))` does not have `state` as
    /// its unique maximal state.
    NotUniqueMaximal {
        state: StateId,
        component: Vec<StateId>,
        maximal: Vec<StateId>,
    },
}

/// Outcome of a predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Witness),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

pub fn is_complete(a: &Nfa) -> Verdict {
    for q in a.states() {
        for x in a.alphabet().letters() {
            if a.successors(q, x).is_empty() {
                return Verdict::Fails(Witness::MissingTransition {
                    state: q,
                    letter: x,
                });
            }
        }
    }
    Verdict::Holds
}

pub fn is_saturated(a: &Nfa) -> Verdict {
    for q in a.states() {
        for x in a.alphabet().letters() {
            if !a.has_self_loop(q, x) {
                return Verdict::Fails(Witness::MissingSelfLoop {
                    state: q,
                    letter: x,
                });
            }
        }
    }
    Verdict::Holds
}

/// `|I| = 1` and `|q·a| <= 1` everywhere: a possibly partial DFA.
pub fn is_deterministic(a: &Nfa) -> bool {
    a.initial().len() == 1
        && a.states().all(|q| {
            a.alphabet()
                .letters()
                .all(|x| a.successors(q, x).len() <= 1)
        })
}

/// Acyclicity of the transition graph with self-loops removed.
pub fn is_partially_ordered(a: &Nfa) -> Verdict {
    let n = a.num_states();
    let mut indegree = vec![0usize; n];
    for (p, _, q) in a.transitions() {
        if p != q {
            indegree[q.index()] += 1;
        }
    }
    // parallel edges under different letters are counted once per letter, both
    // in the in-degree and in the decrements below
    let mut queue: Vec<StateId> = a.states().filter(|q| indegree[q.index()] == 0).collect();
    let mut removed = vec![false; n];
    while let Some(p) = queue.pop() {
        removed[p.index()] = true;
        for &q in a.all_successors(p) {
            if q != p {
                indegree[q.index()] -= 1;
                if indegree[q.index()] == 0 {
                    queue.push(q);
                }
            }
        }
    }
    let Some(start) = a.states().find(|q| !removed[q.index()]) else {
        return Verdict::Holds;
    };
    // every remaining state has a remaining predecessor; walking backwards
    // from `start` must revisit a state, closing a cycle
    let mut preds: HashMap<StateId, StateId> = HashMap::new();
    for (p, _, q) in a.transitions() {
        if p != q && !removed[p.index()] && !removed[q.index()] {
            preds.entry(q).or_insert(p);
        }
    }
    let mut seen = HashSet::new();
    let mut cur = start;
    while seen.insert(cur) {
        cur = preds[&cur];
    }
    let p = cur;
    let q = preds[&p];
    let (p, q) = if p < q { (p, q) } else { (q, p) };
    Verdict::Fails(Witness::Cycle { p, q })
}

pub fn is_self_loop_deterministic(a: &Nfa) -> Verdict {
    for q in a.states() {
        for x in a.alphabet().letters() {
            let succ = a.successors(q, x);
            if succ.len() > 1 && succ.binary_search(&q).is_ok() {
                let other = *succ.iter().find(|&&r| r != q).expect("len > 1");
                return Verdict::Fails(Witness::SelfLoopBranch {
                    state: q,
                    letter: x,
                    other,
                });
            }
        }
    }
    Verdict::Holds
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n as u32).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] as usize != root {
            root = self.0[root] as usize;
        }
        let mut cur = x;
        while self.0[cur] as usize != root {
            let next = self.0[cur] as usize;
            self.0[cur] = root as u32;
            cur = next;
        }
        root
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            self.0[hi] = lo as u32;
        }
    }
}

/// Components of `G(A, Γ)` (weakly connected) and, per state, whether it has a
/// `Γ`-edge to a different state.
fn components(a: &Nfa, gamma: &[bool]) -> (UnionFind, Vec<bool>) {
    let mut uf = UnionFind::new(a.num_states());
    let mut has_exit = vec![false; a.num_states()];
    for q in a.states() {
        for x in a.alphabet().letters().filter(|x| gamma[x.index()]) {
            for &r in a.successors(q, x) {
                if r != q {
                    uf.union(q.index(), r.index());
                    has_exit[q.index()] = true;
                }
            }
        }
    }
    (uf, has_exit)
}

/// Unique maximal state property: every `q` is the unique maximal state of its
/// weakly connected component of `G(A, Σ(q))`. A state is maximal in the
/// component when it has no `Σ(q)`-labeled edge to another state, which is the
/// reachability-maximum notion for partially ordered inputs.
pub fn is_ums(a: &Nfa) -> Verdict {
    let mut groups: HashMap<Vec<bool>, Vec<StateId>> = HashMap::new();
    for q in a.states() {
        let gamma: Vec<bool> = a
            .alphabet()
            .letters()
            .map(|x| a.has_self_loop(q, x))
            .collect();
        groups.entry(gamma).or_default().push(q);
    }
    let mut first_failure: Option<(StateId, Vec<bool>)> = None;
    for (gamma, members) in &groups {
        // a state without self-loops sits alone in G(A, ∅)
        if gamma.iter().all(|&g| !g) {
            continue;
        }
        let (mut uf, has_exit) = components(a, gamma);
        let mut maximal_count: HashMap<usize, (usize, StateId)> = HashMap::new();
        for p in a.states().filter(|p| !has_exit[p.index()]) {
            let root = uf.find(p.index());
            let entry = maximal_count.entry(root).or_insert((0, p));
            entry.0 += 1;
        }
        for &q in members {
            let root = uf.find(q.index());
            let ok = matches!(maximal_count.get(&root), Some(&(1, m)) if m == q);
            if !ok && first_failure.as_ref().is_none_or(|(f, _)| q < *f) {
                first_failure = Some((q, gamma.clone()));
            }
        }
    }
    let Some((q, gamma)) = first_failure else {
        return Verdict::Holds;
    };
    let (mut uf, has_exit) = components(a, &gamma);
    let root = uf.find(q.index());
    let component: Vec<StateId> = a.states().filter(|p| uf.find(p.index()) == root).collect();
    let maximal = component
        .iter()
        .copied()
        .filter(|p| !has_exit[p.index()])
        .collect();
    Verdict::Fails(Witness::NotUniqueMaximal {
        state: q,
        component,
        maximal,
    })
}

/// Explores pairs of state sets reachable from `({s}, {t})` under `{a, b}`;
/// true iff some pair intersects.
fn pair_meets(a: &Nfa, x: Letter, y: Letter, s: StateId, t: StateId) -> bool {
    if s == t {
        return true;
    }
    let letters: &[Letter] = if x == y { &[x] } else { &[x, y] };
    let norm = |p: StateSet, q: StateSet| if p <= q { (p, q) } else { (q, p) };
    let start = norm(StateSet::singleton(s), StateSet::singleton(t));
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some((p, q)) = queue.pop_front() {
        if p.intersects(&q) {
            return true;
        }
        for &c in letters {
            let (p2, q2) = (a.step_unchecked(&p, c), a.step_unchecked(&q, c));
            if p2.is_empty() || q2.is_empty() {
                continue;
            }
            let pair = norm(p2, q2);
            if seen.insert(pair.clone()) {
                queue.push_back(pair);
            }
        }
    }
    false
}

fn confluence(a: &Nfa) -> Verdict {
    let mut memo: HashMap<(Letter, Letter, StateId, StateId), bool> = HashMap::new();
    for q in a.states() {
        for x in a.alphabet().letters() {
            for y in a.alphabet().letters().filter(|&y| y >= x) {
                for &s in a.successors(q, x) {
                    for &t in a.successors(q, y) {
                        let key = (x, y, s.min(t), s.max(t));
                        let ok = *memo.entry(key).or_insert_with(|| pair_meets(a, x, y, s, t));
                        if !ok {
                            return Verdict::Fails(Witness::NonConfluent {
                                state: q,
                                a: x,
                                b: y,
                                s,
                                t,
                            });
                        }
                    }
                }
            }
        }
    }
    Verdict::Holds
}

/// NFA confluence; defined here for partially ordered automata only.
pub fn is_confluent(a: &Nfa) -> Result<Verdict> {
    if !is_partially_ordered(a).holds() {
        return Err(Error::Precondition(
            "confluence is checked on partially ordered automata only".into(),
        ));
    }
    Ok(confluence(a))
}

/// Complete, partially ordered and UMS, without running the other predicates.
pub fn is_ptnfa(a: &Nfa) -> bool {
    is_complete(a).holds() && is_partially_ordered(a).holds() && is_ums(a).holds()
}

impl Witness {
    /// Re-derives the violation from the automaton alone.
    pub fn replay(&self, a: &Nfa) -> bool {
        match self {
            Witness::MissingTransition { state, letter } => {
                a.successors(*state, *letter).is_empty()
            }
            Witness::MissingSelfLoop { state, letter } => !a.has_self_loop(*state, *letter),
            Witness::Cycle { p, q } => {
                let order = a.reach_order();
                p != q && order.le(*p, *q) && order.le(*q, *p)
            }
            Witness::SelfLoopBranch {
                state,
                letter,
                other,
            } => {
                state != other
                    && a.has_self_loop(*state, *letter)
                    && a.has_transition(*state, *letter, *other)
            }
            Witness::NonConfluent {
                state,
                a: x,
                b: y,
                s,
                t,
            } => {
                a.has_transition(*state, *x, *s)
                    && a.has_transition(*state, *y, *t)
                    && !pair_meets(a, *x, *y, *s, *t)
            }
            Witness::NotUniqueMaximal {
                state,
                component,
                maximal,
            } => {
                let gamma: Vec<bool> = a
                    .alphabet()
                    .letters()
                    .map(|x| a.has_self_loop(*state, x))
                    .collect();
                let (mut uf, has_exit) = components(a, &gamma);
                let root = uf.find(state.index());
                let recomputed: Vec<StateId> =
                    a.states().filter(|p| uf.find(p.index()) == root).collect();
                recomputed == *component
                    && maximal
                        .iter()
                        .all(|p| component.contains(p) && !has_exit[p.index()])
                    && maximal.len() == component.iter().filter(|p| !has_exit[p.index()]).count()
                    && maximal.as_slice() != [*state]
            }
        }
    }

    pub fn render(&self, a: &Nfa) -> String {
        let s = |q: &StateId| a.state_name(*q).to_string();
        let l = |x: &Letter| a.alphabet().name(*x).to_string();
        let list = |v: &[StateId]| v.iter().map(s).collect::<Vec<_>>().join(",");
        match self {
            Witness::MissingTransition { state, letter } => {
                format!("missing-transition state={} letter={}", s(state), l(letter))
            }
            Witness::MissingSelfLoop { state, letter } => {
                format!("missing-self-loop state={} letter={}", s(state), l(letter))
            }
            Witness::Cycle { p, q } => format!("cycle p={} q={}", s(p), s(q)),
            Witness::SelfLoopBranch {
                state,
                letter,
                other,
            } => format!(
                "self-loop-branch state={} letter={} loop={} other={}",
                s(state),
                l(letter),
                s(state),
                s(other)
            ),
            Witness::NonConfluent {
                state,
                a: x,
                b: y,
                s: p,
                t,
            } => format!(
                "non-confluent state={} a={} b={} s={} t={}",
                s(state),
                l(x),
                l(y),
                s(p),
                s(t)
            ),
            Witness::NotUniqueMaximal {
                state,
                component,
                maximal,
            } => format!(
                "not-unique-maximal state={} component-size={} maximal={}",
                s(state),
                component.len(),
                list(maximal)
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassLabel {
    Nfa,
    PoNfa,
    RpoNfa,
    SpoNfa,
    PtNfa,
    Dfa,
    PoDfa,
    ConfluentPoDfa,
}

impl ClassLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassLabel::Nfa => "NFA",
            ClassLabel::PoNfa => "poNFA",
            ClassLabel::RpoNfa => "rpoNFA",
            ClassLabel::SpoNfa => "spoNFA",
            ClassLabel::PtNfa => "ptNFA",
            ClassLabel::Dfa => "DFA",
            ClassLabel::PoDfa => "poDFA",
            ClassLabel::ConfluentPoDfa => "confluent-poDFA",
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            ClassLabel::Nfa,
            ClassLabel::PoNfa,
            ClassLabel::RpoNfa,
            ClassLabel::SpoNfa,
            ClassLabel::PtNfa,
            ClassLabel::Dfa,
            ClassLabel::PoDfa,
            ClassLabel::ConfluentPoDfa,
        ]
        .into_iter()
        .find(|l| l.as_str() == s)
        .ok_or_else(|| Error::input(format!("unknown class label `{s}`")))
    }
}

/// Every predicate at once, plus the derived label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub complete: bool,
    pub partially_ordered: bool,
    pub self_loop_deterministic: bool,
    pub saturated: bool,
    pub confluent: bool,
    pub ums: bool,
    pub deterministic: bool,
    pub label: ClassLabel,
    witnesses: Vec<(&'static str, Witness)>,
}

pub fn classify(a: &Nfa) -> ClassReport {
    let checks = [
        ("complete", is_complete(a)),
        ("partially_ordered", is_partially_ordered(a)),
        ("self_loop_deterministic", is_self_loop_deterministic(a)),
        ("saturated", is_saturated(a)),
        // the pair search terminates on any finite automaton, so the flag is
        // reported even when `is_confluent` would refuse the input
        ("confluent", confluence(a)),
        ("ums", is_ums(a)),
    ];
    let flag = |i: usize| checks[i].1.holds();
    let (complete, po, sld, saturated, confluent, ums) =
        (flag(0), flag(1), flag(2), flag(3), flag(4), flag(5));
    let deterministic = is_deterministic(a);
    // ptNFA comes from complete ∧ po ∧ UMS only, never from confluence; the
    // poNFA subclasses outrank the DFA labels
    let label = match (deterministic, po) {
        (_, true) if saturated => ClassLabel::SpoNfa,
        (_, true) if complete && ums => ClassLabel::PtNfa,
        (true, true) if confluent => ClassLabel::ConfluentPoDfa,
        (true, true) => ClassLabel::PoDfa,
        (true, false) => ClassLabel::Dfa,
        (false, true) if sld => ClassLabel::RpoNfa,
        (false, true) => ClassLabel::PoNfa,
        (false, false) => ClassLabel::Nfa,
    };
    let witnesses = checks
        .into_iter()
        .filter_map(|(name, v)| match v {
            Verdict::Fails(w) => Some((name, w)),
            Verdict::Holds => None,
        })
        .collect();
    ClassReport {
        complete,
        partially_ordered: po,
        self_loop_deterministic: sld,
        saturated,
        confluent,
        ums,
        deterministic,
        label,
        witnesses,
    }
}

impl ClassReport {
    pub fn is_ptnfa(&self) -> bool {
        self.complete && self.partially_ordered && self.ums
    }

    pub fn is_rponfa(&self) -> bool {
        self.partially_ordered && self.self_loop_deterministic
    }

    pub fn is_sponfa(&self) -> bool {
        self.partially_ordered && self.saturated
    }

    /// Witness for a failed flag, by flag name.
    pub fn witness(&self, flag: &str) -> Option<&Witness> {
        self.witnesses
            .iter()
            .find(|(n, _)| *n == flag)
            .map(|(_, w)| w)
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().map(|(_, w)| w)
    }

    /// One `flag: true/false [witness]` line per predicate, then `class:`.
    pub fn render(&self, a: &Nfa) -> String {
        let mut out = String::new();
        let flags = [
            ("complete", self.complete),
            ("partially_ordered", self.partially_ordered),
            ("self_loop_deterministic", self.self_loop_deterministic),
            ("saturated", self.saturated),
            ("confluent", self.confluent),
            ("ums", self.ums),
        ];
        for (name, value) in flags {
            out.push_str(&format!("{name}: {value}"));
            if let Some(w) = self.witness(name) {
                out.push_str(&format!(" [{}]", w.render(a)));
            }
            out.push('\n');
        }
        out.push_str(&format!("class: {}\n", self.label));
        out
    }
}
