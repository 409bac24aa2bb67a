//! Nondeterministic finite automata and their basic semantics.
//!
//! An [`Nfa`] is immutable once built. Transitions are kept in a compressed
//! table indexed by `(state, letter)` so that successor lookups are slices and
//! iteration order is always ascending by state, then letter, then target.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Index of a letter in the alphabet of its automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u32);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Index of a state of its automaton.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u32);

impl StateId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for StateId {
    fn from(value: usize) -> Self {
        StateId(value as u32)
    }
}

/// A word is a sequence of letter ids.
pub type Word = Vec<Letter>;

/// Rendering of the empty word in reports.
pub const EMPTY_WORD: &str = "ε";

pub(crate) fn validate_name(name: &str, what: &str) -> Result<()> {
    if name.is_empty() {
        return Err(Error::input(format!("{what} name is empty")));
    }
    if name.chars().any(|c| c.is_whitespace() || c == '#') {
        return Err(Error::input(format!(
            "{what} name `{name}` contains whitespace or `#`"
        )));
    }
    Ok(())
}

/// Ordered table of letter display names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    lookup: HashMap<String, Letter>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet {
            names: Vec::new(),
            lookup: HashMap::new(),
        };
        for name in names {
            let name = name.into();
            validate_name(&name, "letter")?;
            if name == EMPTY_WORD {
                return Err(Error::input("`ε` is reserved for the empty word"));
            }
            let letter = Letter(alphabet.names.len() as u32);
            if alphabet.lookup.insert(name.clone(), letter).is_some() {
                return Err(Error::input(format!("duplicate letter `{name}`")));
            }
            alphabet.names.push(name);
        }
        Ok(alphabet)
    }

    /// The alphabet `a1, ..., an`.
    pub fn indexed(n: usize) -> Self {
        Alphabet::new((1..=n).map(|i| format!("a{i}"))).expect("indexed names are valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.lookup.get(name).copied()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        (0..self.names.len() as u32).map(Letter)
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.index() < self.names.len()
    }

    /// Parses whitespace-separated letter names; empty text or `ε` is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == EMPTY_WORD {
            return Ok(Vec::new());
        }
        text.split_whitespace()
            .map(|tok| {
                self.letter(tok)
                    .ok_or_else(|| Error::input(format!("unknown letter `{tok}`")))
            })
            .collect()
    }

    pub fn render(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return EMPTY_WORD.to_string();
        }
        word.iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Canonically ordered, duplicate-free set of states.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateSet(Vec<StateId>);

impl StateSet {
    pub fn new<I: IntoIterator<Item = StateId>>(states: I) -> Self {
        let mut v: Vec<StateId> = states.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        StateSet(v)
    }

    pub fn empty() -> Self {
        StateSet(Vec::new())
    }

    pub fn singleton(q: StateId) -> Self {
        StateSet(vec![q])
    }

    /// Wraps a vector that is already sorted and duplicate-free.
    pub(crate) fn from_sorted(v: Vec<StateId>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        StateSet(v)
    }

    pub fn as_slice(&self) -> &[StateId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, q: StateId) -> bool {
        self.0.binary_search(&q).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = StateId> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut rest = other.0.iter();
        'outer: for q in &self.0 {
            for r in rest.by_ref() {
                if r == q {
                    continue 'outer;
                }
                if r > q {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        StateSet::new(self.iter().chain(other.iter()))
    }
}

impl FromIterator<StateId> for StateSet {
    fn from_iter<T: IntoIterator<Item = StateId>>(iter: T) -> Self {
        StateSet::new(iter)
    }
}

/// `A = (Q, Σ, ·, I, F)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    state_names: Vec<String>,
    name_index: HashMap<String, StateId>,
    // successors of (q, a) are targets[offsets[q*|Σ|+a]..offsets[q*|Σ|+a+1]]
    offsets: Vec<usize>,
    targets: Vec<StateId>,
    initial: StateSet,
    accepting: Vec<bool>,
}

impl Nfa {
    pub fn builder(alphabet: Alphabet) -> NfaBuilder {
        NfaBuilder::new(alphabet)
    }

    /// A builder pre-populated with this automaton.
    pub fn to_builder(&self) -> NfaBuilder {
        let mut b = NfaBuilder::new(self.alphabet.clone());
        for name in &self.state_names {
            b.add_state(name.clone());
        }
        b.transitions = self.transitions().collect();
        b.initial = self.initial.as_slice().to_vec();
        b.accepting = self.accepting_states().as_slice().to_vec();
        b
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn num_letters(&self) -> usize {
        self.alphabet.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> + Clone {
        (0..self.num_states() as u32).map(StateId)
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.state_names[q.index()]
    }

    pub fn state_by_name(&self, name: &str) -> Option<StateId> {
        self.name_index.get(name).copied()
    }

    pub fn initial(&self) -> &StateSet {
        &self.initial
    }

    pub fn is_initial(&self, q: StateId) -> bool {
        self.initial.contains(q)
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q.index()]
    }

    pub fn accepting_states(&self) -> StateSet {
        StateSet::from_sorted(self.states().filter(|&q| self.is_accepting(q)).collect())
    }

    /// `q·a`, sorted.
    pub fn successors(&self, q: StateId, a: Letter) -> &[StateId] {
        let slot = q.index() * self.num_letters() + a.index();
        &self.targets[self.offsets[slot]..self.offsets[slot + 1]]
    }

    pub fn has_transition(&self, p: StateId, a: Letter, q: StateId) -> bool {
        self.successors(p, a).binary_search(&q).is_ok()
    }

    pub fn has_self_loop(&self, q: StateId, a: Letter) -> bool {
        self.has_transition(q, a, q)
    }

    /// `Σ(q)`: the letters labeling self-loops in `q`.
    pub fn self_loop_alphabet(&self, q: StateId) -> Vec<Letter> {
        self.alphabet
            .letters()
            .filter(|&a| self.has_self_loop(q, a))
            .collect()
    }

    pub fn num_transitions(&self) -> usize {
        self.targets.len()
    }

    /// All transitions in ascending `(src, letter, dst)` order.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Letter, StateId)> + '_ {
        self.states().flat_map(move |q| {
            self.alphabet
                .letters()
                .flat_map(move |a| self.successors(q, a).iter().map(move |&r| (q, a, r)))
        })
    }

    /// Successors of `q` under any letter, with duplicates.
    pub fn all_successors(&self, q: StateId) -> &[StateId] {
        let base = q.index() * self.num_letters();
        &self.targets[self.offsets[base]..self.offsets[base + self.num_letters()]]
    }

    fn check_letter(&self, x: Letter) -> Result<()> {
        if self.alphabet.contains(x) {
            Ok(())
        } else {
            Err(Error::input(format!(
                "letter id {} is outside an alphabet of size {}",
                x.0,
                self.num_letters()
            )))
        }
    }

    fn check_states(&self, s: &StateSet) -> Result<()> {
        match s.iter().find(|q| q.index() >= self.num_states()) {
            Some(q) => Err(Error::input(format!(
                "state id {} is outside an automaton with {} states",
                q.0,
                self.num_states()
            ))),
            None => Ok(()),
        }
    }

    /// `⋃_{q ∈ s} q·x`.
    pub fn step(&self, s: &StateSet, x: Letter) -> Result<StateSet> {
        self.check_letter(x)?;
        self.check_states(s)?;
        Ok(self.step_unchecked(s, x))
    }

    pub(crate) fn step_unchecked(&self, s: &StateSet, x: Letter) -> StateSet {
        match s.as_slice() {
            [] => StateSet::empty(),
            [q] => StateSet::from_sorted(self.successors(*q, x).to_vec()),
            states => StateSet::new(
                states
                    .iter()
                    .flat_map(|&q| self.successors(q, x).iter().copied()),
            ),
        }
    }

    /// `s·w`.
    pub fn run_from(&self, s: &StateSet, w: &[Letter]) -> Result<StateSet> {
        self.check_states(s)?;
        for &x in w {
            self.check_letter(x)?;
        }
        Ok(w.iter()
            .fold(s.clone(), |acc, &x| self.step_unchecked(&acc, x)))
    }

    /// `I·w`.
    pub fn run(&self, w: &[Letter]) -> Result<StateSet> {
        self.run_from(&self.initial, w)
    }

    /// `I·w ∩ F ≠ ∅`.
    pub fn accepts(&self, w: &[Letter]) -> Result<bool> {
        Ok(self.contains_accepting(&self.run(w)?))
    }

    pub fn contains_accepting(&self, s: &StateSet) -> bool {
        s.iter().any(|q| self.is_accepting(q))
    }

    /// Reflexive-transitive closure of the one-step successor relation.
    pub fn reach_order(&self) -> ReachOrder {
        let n = self.num_states();
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![vec![0u64; words]; n];
        let mut stack = Vec::new();
        for p in self.states() {
            let row = &mut rows[p.index()];
            row[p.index() / 64] |= 1 << (p.index() % 64);
            stack.push(p);
            while let Some(q) = stack.pop() {
                for &r in self.all_successors(q) {
                    let (w, b) = (r.index() / 64, r.index() % 64);
                    if row[w] & (1 << b) == 0 {
                        row[w] |= 1 << b;
                        stack.push(r);
                    }
                }
            }
        }
        let mut order = ReachOrder {
            rows,
            partial_order: true,
        };
        order.partial_order = (0..n).all(|p| {
            (p + 1..n).all(|q| {
                !(order.le(StateId::from(p), StateId::from(q))
                    && order.le(StateId::from(q), StateId::from(p)))
            })
        });
        order
    }
}

/// The reachability relation `p ≤ q` of an automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachOrder {
    rows: Vec<Vec<u64>>,
    partial_order: bool,
}

impl ReachOrder {
    pub fn num_states(&self) -> usize {
        self.rows.len()
    }

    pub fn le(&self, p: StateId, q: StateId) -> bool {
        self.rows[p.index()][q.index() / 64] & (1 << (q.index() % 64)) != 0
    }

    pub fn lt(&self, p: StateId, q: StateId) -> bool {
        p != q && self.le(p, q)
    }

    /// True iff `≤` is antisymmetric.
    pub fn is_partial_order(&self) -> bool {
        self.partial_order
    }

    /// True iff the matrix is closed under composition.
    pub fn is_transitively_closed(&self) -> bool {
        let n = self.num_states();
        (0..n).all(|p| {
            (0..n).filter(|&q| self.le(p.into(), q.into())).all(|q| {
                self.rows[q]
                    .iter()
                    .zip(&self.rows[p])
                    .all(|(rq, rp)| rq & !rp == 0)
            })
        })
    }
}

/// Mutable staging area for an [`Nfa`].
#[derive(Debug, Clone)]
pub struct NfaBuilder {
    alphabet: Alphabet,
    names: Vec<String>,
    transitions: Vec<(StateId, Letter, StateId)>,
    initial: Vec<StateId>,
    accepting: Vec<StateId>,
}

impl NfaBuilder {
    pub fn new(alphabet: Alphabet) -> Self {
        NfaBuilder {
            alphabet,
            names: Vec::new(),
            transitions: Vec::new(),
            initial: Vec::new(),
            accepting: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn add_state(&mut self, name: impl Into<String>) -> StateId {
        self.names.push(name.into());
        StateId(self.names.len() as u32 - 1)
    }

    pub fn transition(&mut self, p: StateId, a: Letter, q: StateId) -> &mut Self {
        self.transitions.push((p, a, q));
        self
    }

    pub fn initial(&mut self, q: StateId) -> &mut Self {
        self.initial.push(q);
        self
    }

    pub fn accepting(&mut self, q: StateId) -> &mut Self {
        self.accepting.push(q);
        self
    }

    /// True iff some transition `(q, a, _)` was added.
    pub fn has_successor(&self, q: StateId, a: Letter) -> bool {
        self.transitions.iter().any(|&(p, b, _)| p == q && b == a)
    }

    pub fn build(self) -> Result<Nfa> {
        let n = self.names.len();
        if n == 0 {
            return Err(Error::input("an automaton needs at least one state"));
        }
        let mut name_index = HashMap::with_capacity(n);
        for (i, name) in self.names.iter().enumerate() {
            validate_name(name, "state")?;
            if name_index.insert(name.clone(), StateId(i as u32)).is_some() {
                return Err(Error::input(format!("duplicate state `{name}`")));
            }
        }
        let letters = self.alphabet.len();
        let check = |q: StateId| -> Result<()> {
            if q.index() < n {
                Ok(())
            } else {
                Err(Error::input(format!("state id {} out of range", q.0)))
            }
        };
        let mut transitions = self.transitions;
        for &(p, a, q) in &transitions {
            check(p)?;
            check(q)?;
            if a.index() >= letters {
                return Err(Error::input(format!("letter id {} out of range", a.0)));
            }
        }
        transitions.sort_unstable();
        transitions.dedup();
        let mut offsets = vec![0usize; n * letters + 1];
        for &(p, a, _) in &transitions {
            offsets[p.index() * letters + a.index() + 1] += 1;
        }
        for i in 1..offsets.len() {
            offsets[i] += offsets[i - 1];
        }
        let targets = transitions.iter().map(|&(_, _, q)| q).collect();
        let mut accepting = vec![false; n];
        for &q in &self.accepting {
            check(q)?;
            accepting[q.index()] = true;
        }
        for &q in &self.initial {
            check(q)?;
        }
        Ok(Nfa {
            alphabet: self.alphabet,
            state_names: self.names,
            name_index,
            offsets,
            targets,
            initial: StateSet::new(self.initial),
            accepting,
        })
    }
}

impl fmt::Display for Nfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::print_nfa(self))
    }
}
