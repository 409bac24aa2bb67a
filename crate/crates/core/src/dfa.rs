//! Deterministic automata, the subset construction, complement and completion.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::collections::VecDeque;

use num_bigint::BigUint;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::nfa::{Alphabet, Letter, Nfa, StateId, StateSet};

/// A DFA with exactly one initial state and at most one successor per
/// `(state, letter)`. Missing successors are only allowed when `partial`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    state_names: Vec<String>,
    delta: Vec<Option<StateId>>,
    initial: StateId,
    accepting: Vec<bool>,
    partial: bool,
}

impl Dfa {
    /// Assembles a DFA from raw parts; `partial` is derived from `delta`.
    pub fn new(
        alphabet: Alphabet,
        state_names: Vec<String>,
        delta: Vec<Option<StateId>>,
        initial: StateId,
        accepting: Vec<bool>,
    ) -> Result<Dfa> {
        let n = state_names.len();
        if n == 0 || initial.index() >= n {
            return Err(Error::input("DFA initial state out of range"));
        }
        if delta.len() != n * alphabet.len() || accepting.len() != n {
            return Err(Error::input("DFA tables have inconsistent sizes"));
        }
        if delta.iter().flatten().any(|q| q.index() >= n) {
            return Err(Error::input("DFA transition target out of range"));
        }
        let partial = delta.iter().any(Option::is_none);
        Ok(Dfa {
            alphabet,
            state_names,
            delta,
            initial,
            accepting,
            partial,
        })
    }

    /// Reads an NFA that is already deterministic (possibly partial).
    pub fn from_nfa(a: &Nfa) -> Result<Dfa> {
        let [initial] = a.initial().as_slice() else {
            return Err(Error::input("a DFA needs exactly one initial state"));
        };
        let mut delta = Vec::with_capacity(a.num_states() * a.num_letters());
        for q in a.states() {
            for x in a.alphabet().letters() {
                match a.successors(q, x) {
                    [] => delta.push(None),
                    [r] => delta.push(Some(*r)),
                    _ => {
                        return Err(Error::input(format!(
                            "state `{}` is nondeterministic under `{}`",
                            a.state_name(q),
                            a.alphabet().name(x)
                        )))
                    }
                }
            }
        }
        Dfa::new(
            a.alphabet().clone(),
            a.states().map(|q| a.state_name(q).to_string()).collect(),
            delta,
            *initial,
            a.states().map(|q| a.is_accepting(q)).collect(),
        )
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.state_names.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_partial(&self) -> bool {
        self.partial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q.index()]
    }

    pub fn state_name(&self, q: StateId) -> &str {
        &self.state_names[q.index()]
    }

    pub fn next(&self, q: StateId, a: Letter) -> Option<StateId> {
        self.delta[q.index() * self.alphabet.len() + a.index()]
    }

    pub fn accepts(&self, w: &[Letter]) -> Result<bool> {
        let mut q = self.initial;
        for &a in w {
            if !self.alphabet.contains(a) {
                return Err(Error::input(format!("letter id {} out of range", a.0)));
            }
            match self.next(q, a) {
                Some(r) => q = r,
                None => return Ok(false),
            }
        }
        Ok(self.is_accepting(q))
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut b = Nfa::builder(self.alphabet.clone());
        for name in &self.state_names {
            b.add_state(name.clone());
        }
        for q in 0..self.num_states() {
            let q = StateId::from(q);
            for a in self.alphabet.letters() {
                if let Some(r) = self.next(q, a) {
                    b.transition(q, a, r);
                }
            }
            if self.is_accepting(q) {
                b.accepting(q);
            }
        }
        b.initial(self.initial);
        b.build().expect("a valid DFA converts to a valid NFA")
    }

    /// Explicit completion: missing transitions go to a fresh rejecting sink.
    /// A total DFA is returned unchanged.
    pub fn complete(&self) -> Dfa {
        if !self.partial {
            return self.clone();
        }
        let sink = StateId::from(self.num_states());
        let mut names = self.state_names.clone();
        let mut sink_name = "sink".to_string();
        while names.contains(&sink_name) {
            sink_name.push('\'');
        }
        names.push(sink_name);
        let mut delta: Vec<_> = self.delta.iter().map(|d| Some(d.unwrap_or(sink))).collect();
        delta.extend(std::iter::repeat_n(Some(sink), self.alphabet.len()));
        let mut accepting = self.accepting.clone();
        accepting.push(false);
        Dfa::new(self.alphabet.clone(), names, delta, self.initial, accepting)
            .expect("completion preserves validity")
    }

    /// Language complement; requires a total DFA.
    pub fn complement(&self) -> Result<Dfa> {
        if self.partial {
            return Err(Error::Precondition(
                "complement requires a total DFA; complete it first".into(),
            ));
        }
        let mut d = self.clone();
        d.accepting.iter_mut().for_each(|f| *f = !*f);
        Ok(d)
    }

    /// Renumbers the accessible part in BFS order (letters ascending).
    fn canonical(&self) -> (Vec<Option<usize>>, Vec<bool>) {
        let mut number = HashMap::new();
        let mut order = vec![self.initial];
        number.insert(self.initial, 0usize);
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for a in self.alphabet.letters() {
                if let Some(r) = self.next(q, a) {
                    if let Entry::Vacant(e) = number.entry(r) {
                        e.insert(order.len());
                        order.push(r);
                    }
                }
            }
            i += 1;
        }
        let delta = order
            .iter()
            .flat_map(|&q| self.alphabet.letters().map(move |a| (q, a)))
            .map(|(q, a)| self.next(q, a).map(|r| number[&r]))
            .collect();
        let accepting = order.iter().map(|&q| self.is_accepting(q)).collect();
        (delta, accepting)
    }

    /// Number of accepted words, or `None` when the language is infinite.
    pub fn language_size(&self) -> Option<BigUint> {
        let n = self.num_states();
        let letters = self.alphabet.len();
        let succ = |q: usize| (0..letters).filter_map(move |a| self.delta[q * letters + a]);
        let mut live: Vec<bool> = self.accepting.clone();
        loop {
            let mut changed = false;
            for q in 0..n {
                if !live[q] && succ(q).any(|r| live[r.index()]) {
                    live[q] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        // 0 unvisited, 1 on the DFS stack, 2 done; counts[q] = words from q.
        let mut mark = vec![0u8; n];
        let mut counts: Vec<BigUint> = vec![BigUint::ZERO; n];
        let mut stack = vec![(self.initial.index(), 0usize)];
        if !live[self.initial.index()] {
            return Some(BigUint::ZERO);
        }
        mark[self.initial.index()] = 1;
        while let Some(top) = stack.last_mut() {
            let (q, a) = *top;
            if a < letters {
                top.1 += 1;
                if let Some(r) = self.delta[q * letters + a].map(StateId::index) {
                    if !live[r] {
                        continue;
                    }
                    match mark[r] {
                        0 => {
                            mark[r] = 1;
                            stack.push((r, 0));
                        }
                        1 => return None,
                        _ => {}
                    }
                }
                continue;
            }
            let mut total = BigUint::from(self.accepting[q] as u32);
            for r in succ(q).map(StateId::index).filter(|&r| live[r]) {
                total += &counts[r];
            }
            counts[q] = total;
            mark[q] = 2;
            stack.pop();
        }
        Some(counts[self.initial.index()].clone())
    }

    /// Isomorphism of the accessible parts, modulo state renaming.
    pub fn is_isomorphic(&self, other: &Dfa) -> bool {
        self.alphabet.len() == other.alphabet.len() && self.canonical() == other.canonical()
    }
}

fn subset_name(a: &Nfa, s: &StateSet) -> String {
    let names: Vec<&str> = s.iter().map(|q| a.state_name(q)).collect();
    format!("{{{}}}", names.join(","))
}

/// Accessible subset construction. The empty subset is materialized as a
/// dead state whenever it is reachable, so the result is total.
pub fn determinize(a: &Nfa, caps: &Caps) -> Result<Dfa> {
    let letters = a.num_letters();
    let mut index: HashMap<StateSet, StateId> = HashMap::new();
    let mut subsets: Vec<StateSet> = Vec::new();
    let mut delta: Vec<Option<StateId>> = Vec::new();
    let mut queue = VecDeque::new();

    let mut intern = |s: StateSet,
                      subsets: &mut Vec<StateSet>,
                      queue: &mut VecDeque<StateId>|
     -> Result<StateId> {
        if let Some(&id) = index.get(&s) {
            return Ok(id);
        }
        if subsets.len() as u64 >= caps.determinize {
            return Err(Error::resource(
                "determinization subset states",
                caps.determinize,
            ));
        }
        let id = StateId::from(subsets.len());
        index.insert(s.clone(), id);
        subsets.push(s);
        queue.push_back(id);
        Ok(id)
    };

    let initial = intern(a.initial().clone(), &mut subsets, &mut queue)?;
    while let Some(id) = queue.pop_front() {
        let s = subsets[id.index()].clone();
        let base = id.index() * letters;
        if delta.len() < base + letters {
            delta.resize(base + letters, None);
        }
        for x in a.alphabet().letters() {
            let t = a.step_unchecked(&s, x);
            let target = intern(t, &mut subsets, &mut queue)?;
            delta[base + x.index()] = Some(target);
        }
    }
    delta.resize(subsets.len() * letters, None);
    let accepting = subsets.iter().map(|s| a.contains_accepting(s)).collect();
    let names = subsets.iter().map(|s| subset_name(a, s)).collect();
    Dfa::new(a.alphabet().clone(), names, delta, initial, accepting)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_language;
    use crate::hardness::build_aknn;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn determinizing_a_dfa_is_a_fixpoint() {
        let mut b = Nfa::builder(Alphabet::indexed(2));
        let p = b.add_state("p");
        let q = b.add_state("q");
        b.transition(p, Letter(0), q)
            .transition(p, Letter(1), p)
            .transition(q, Letter(0), q)
            .transition(q, Letter(1), p);
        b.initial(p).accepting(q);
        let d = Dfa::from_nfa(&b.build().unwrap()).unwrap();
        let again = determinize(&d.to_nfa(), &caps()).unwrap();
        assert!(d.is_isomorphic(&again));
    }

    #[test]
    fn complement_of_a12_determinization_is_the_single_word() {
        let a = build_aknn(1, 2, &caps()).unwrap();
        let d = determinize(&a, &caps()).unwrap().complement().unwrap();
        let words = enumerate_language(&d.to_nfa(), 4, &caps()).unwrap();
        assert_eq!(words, vec![vec![Letter(0), Letter(1)]]);
        assert_eq!(d.language_size(), Some(BigUint::from(1u32)));
        assert_eq!(determinize(&a, &caps()).unwrap().language_size(), None);
    }

    #[test]
    fn no_accepting_states_gives_empty_dfa() {
        let mut b = Nfa::builder(Alphabet::indexed(2));
        let p = b.add_state("p");
        b.transition(p, Letter(0), p).initial(p);
        let d = determinize(&b.build().unwrap(), &caps()).unwrap();
        assert!(!d.is_partial());
        assert!((0..d.num_states()).all(|q| !d.is_accepting(q.into())));
    }

    #[test]
    fn determinize_respects_cap() {
        let a = build_aknn(3, 3, &caps()).unwrap();
        let tight = Caps {
            determinize: 4,
            ..Caps::default()
        };
        assert!(matches!(
            determinize(&a, &tight),
            Err(Error::Resource { cap: 4, .. })
        ));
    }

    #[test]
    fn complement_requires_total_dfa() {
        let mut b = Nfa::builder(Alphabet::indexed(1));
        let p = b.add_state("p");
        b.initial(p);
        let d = Dfa::from_nfa(&b.build().unwrap()).unwrap();
        assert!(d.is_partial());
        assert!(d.complement().is_err());
        let total = d.complete();
        assert!(!total.is_partial());
        let co = total.complement().unwrap();
        assert!(co.accepts(&[Letter(0), Letter(0)]).unwrap());
        assert!(co.accepts(&[]).unwrap());
        assert!(!total.accepts(&[Letter(0)]).unwrap());
    }
}
