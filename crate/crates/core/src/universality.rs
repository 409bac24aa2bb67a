//! Universality deciders, from the constant-time saturated case to the
//! general antichain search, and a bounded brute-force reference.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::caps::Caps;
use crate::classify::{is_partially_ordered, is_saturated};
use crate::enumerate::for_each_word;
use crate::error::{Error, Result};
use crate::nfa::{Alphabet, Letter, Nfa, StateId, StateSet, Word, EMPTY_WORD};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    SpoNfaConstant,
    UnaryPumping,
    Antichain,
    Subset,
    BruteForce,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::SpoNfaConstant => "spoNFA-constant",
            Method::UnaryPumping => "unary-pumping",
            Method::Antichain => "antichain",
            Method::Subset => "subset",
            Method::BruteForce => "brute-force",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Method selection as written on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Auto,
    Fixed(Method),
}

impl FromStr for MethodChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => MethodChoice::Auto,
            "sponfa" => MethodChoice::Fixed(Method::SpoNfaConstant),
            "unary" => MethodChoice::Fixed(Method::UnaryPumping),
            "antichain" => MethodChoice::Fixed(Method::Antichain),
            "subset" => MethodChoice::Fixed(Method::Subset),
            "brute" => MethodChoice::Fixed(Method::BruteForce),
            other => return Err(Error::input(format!("unknown method `{other}`"))),
        })
    }
}

/// `counterexample` is present iff `universal` is false. A brute-force
/// `universal: true` only covers words up to the requested length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalityResult {
    pub universal: bool,
    pub counterexample: Option<Word>,
    pub method: Method,
    pub explored: u64,
    pub max_frontier: u64,
}

impl UniversalityResult {
    fn yes(method: Method, explored: u64, max_frontier: u64) -> Self {
        UniversalityResult {
            universal: true,
            counterexample: None,
            method,
            explored,
            max_frontier,
        }
    }

    fn no(method: Method, w: Word, explored: u64, max_frontier: u64) -> Self {
        UniversalityResult {
            universal: false,
            counterexample: Some(w),
            method,
            explored,
            max_frontier,
        }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut out = format!("universal: {}\n", if self.universal { "yes" } else { "no" });
        if let Some(w) = &self.counterexample {
            let text = if w.is_empty() {
                EMPTY_WORD.to_string()
            } else {
                alphabet.render(w)
            };
            out.push_str(&format!("counterexample: {text}\n"));
        }
        out.push_str(&format!(
            "method: {}\nexplored: {}\n",
            self.method, self.explored
        ));
        out
    }
}

/// Saturated automata: universal iff some initial state is accepting.
pub fn universal_sponfa(a: &Nfa) -> Result<UniversalityResult> {
    if !is_saturated(a).holds() {
        return Err(Error::input(
            "the spoNFA decider needs a saturated automaton",
        ));
    }
    let hit = a.initial().iter().any(|q| a.is_accepting(q));
    Ok(if hit {
        UniversalityResult::yes(Method::SpoNfaConstant, 1, 1)
    } else {
        UniversalityResult::no(Method::SpoNfaConstant, Vec::new(), 1, 1)
    })
}

/// Unary partially ordered automata: universal iff `a^m` is accepted for every
/// `m <= |Q|`. An accepting run on `a^|Q|` repeats a state, which in a
/// partially ordered automaton is a self-loop that pumps every longer length.
pub fn universal_unary_po(a: &Nfa) -> Result<UniversalityResult> {
    if a.num_letters() != 1 {
        return Err(Error::input(
            "the unary decider needs a one-letter alphabet",
        ));
    }
    if !is_partially_ordered(a).holds() {
        return Err(Error::input(
            "the unary decider needs a partially ordered automaton",
        ));
    }
    let x = Letter(0);
    let mut set = a.initial().clone();
    for m in 0..=a.num_states() {
        if !a.contains_accepting(&set) {
            return Ok(UniversalityResult::no(
                Method::UnaryPumping,
                vec![x; m],
                m as u64 + 1,
                1,
            ));
        }
        set = a.step_unchecked(&set, x);
    }
    Ok(UniversalityResult::yes(
        Method::UnaryPumping,
        a.num_states() as u64 + 1,
        1,
    ))
}

struct Node {
    set: StateSet,
    parent: Option<(usize, Letter)>,
}

fn trace(nodes: &[Node], mut i: usize, last: Option<Letter>) -> Word {
    let mut w: Word = last.into_iter().collect();
    while let Some((p, x)) = nodes[i].parent {
        w.push(x);
        i = p;
    }
    w.reverse();
    w
}

/// Sets kept by the antichain search, bucketed by their least element so that
/// a subset query only visits buckets of members of the queried set.
#[derive(Default)]
struct Antichain {
    buckets: HashMap<StateId, Vec<usize>>,
}

impl Antichain {
    fn has_subset_of(&self, nodes: &[Node], t: &StateSet) -> bool {
        t.iter().any(|q| {
            self.buckets
                .get(&q)
                .is_some_and(|ids| ids.iter().any(|&i| nodes[i].set.is_subset(t)))
        })
    }

    fn insert(&mut self, nodes: &[Node], i: usize) {
        // the empty set is never kept: it is rejecting and ends the search
        let least = nodes[i].set.as_slice()[0];
        self.buckets.entry(least).or_default().push(i);
    }
}

/// Breadth-first search over reachable subsets keeping only ⊆-minimal ones.
/// A set containing an accepting state that loops on every letter can never
/// become rejecting and is dropped. The counterexample is a shortest rejected
/// word; letters are tried in ascending id order.
pub fn universal_antichain(a: &Nfa, caps: &Caps) -> Result<UniversalityResult> {
    let universal_state: Vec<bool> = a
        .states()
        .map(|q| a.is_accepting(q) && a.alphabet().letters().all(|x| a.has_self_loop(q, x)))
        .collect();
    let hopeless = |s: &StateSet| s.iter().any(|q| universal_state[q.index()]);
    let method = Method::Antichain;
    let start = a.initial().clone();
    if !a.contains_accepting(&start) {
        return Ok(UniversalityResult::no(method, Vec::new(), 1, 1));
    }
    if hopeless(&start) {
        return Ok(UniversalityResult::yes(method, 1, 1));
    }
    let mut nodes = vec![Node {
        set: start,
        parent: None,
    }];
    let mut antichain = Antichain::default();
    antichain.insert(&nodes, 0);
    let mut queue = VecDeque::from([0usize]);
    let mut max_frontier = 1u64;
    while let Some(i) = queue.pop_front() {
        for x in a.alphabet().letters() {
            let t = a.step_unchecked(&nodes[i].set, x);
            if !a.contains_accepting(&t) {
                let w = trace(&nodes, i, Some(x));
                return Ok(UniversalityResult::no(
                    method,
                    w,
                    nodes.len() as u64,
                    max_frontier,
                ));
            }
            if hopeless(&t) || antichain.has_subset_of(&nodes, &t) {
                continue;
            }
            if nodes.len() as u64 >= caps.antichain {
                return Err(Error::resource("antichain nodes", caps.antichain));
            }
            nodes.push(Node {
                set: t,
                parent: Some((i, x)),
            });
            antichain.insert(&nodes, nodes.len() - 1);
            queue.push_back(nodes.len() - 1);
            max_frontier = max_frontier.max(queue.len() as u64);
        }
    }
    Ok(UniversalityResult::yes(
        method,
        nodes.len() as u64,
        max_frontier,
    ))
}

/// Plain breadth-first subset construction, no subsumption.
pub fn universal_subset(a: &Nfa, caps: &Caps) -> Result<UniversalityResult> {
    let method = Method::Subset;
    let start = a.initial().clone();
    if !a.contains_accepting(&start) {
        return Ok(UniversalityResult::no(method, Vec::new(), 1, 1));
    }
    let mut index: HashMap<StateSet, usize> = HashMap::from([(start.clone(), 0)]);
    let mut nodes = vec![Node {
        set: start,
        parent: None,
    }];
    let mut queue = VecDeque::from([0usize]);
    let mut max_frontier = 1u64;
    while let Some(i) = queue.pop_front() {
        for x in a.alphabet().letters() {
            let t = a.step_unchecked(&nodes[i].set, x);
            if !a.contains_accepting(&t) {
                let w = trace(&nodes, i, Some(x));
                return Ok(UniversalityResult::no(
                    method,
                    w,
                    nodes.len() as u64,
                    max_frontier,
                ));
            }
            if index.contains_key(&t) {
                continue;
            }
            if nodes.len() as u64 >= caps.determinize {
                return Err(Error::resource("subset states", caps.determinize));
            }
            index.insert(t.clone(), nodes.len());
            nodes.push(Node {
                set: t,
                parent: Some((i, x)),
            });
            queue.push_back(nodes.len() - 1);
            max_frontier = max_frontier.max(queue.len() as u64);
        }
    }
    Ok(UniversalityResult::yes(
        method,
        nodes.len() as u64,
        max_frontier,
    ))
}

/// Tries every word up to `max_len` in length-lex order.
pub fn universal_brute(a: &Nfa, max_len: usize, caps: &Caps) -> Result<UniversalityResult> {
    let mut found = None;
    let mut explored = 0u64;
    for_each_word(a, max_len, caps, |w, set| {
        explored += 1;
        if a.contains_accepting(set) {
            true
        } else {
            found = Some(w.to_vec());
            false
        }
    })?;
    Ok(match found {
        Some(w) => UniversalityResult::no(Method::BruteForce, w, explored, 0),
        None => UniversalityResult::yes(Method::BruteForce, explored, 0),
    })
}

/// Picks the cheapest applicable decider: saturated, then unary partially
/// ordered, otherwise antichain.
pub fn universal(a: &Nfa, caps: &Caps) -> Result<UniversalityResult> {
    if is_saturated(a).holds() {
        universal_sponfa(a)
    } else if a.num_letters() == 1 && is_partially_ordered(a).holds() {
        universal_unary_po(a)
    } else {
        universal_antichain(a, caps)
    }
}

/// Runs a named method; `max_len` only applies to brute force and defaults
/// to `min(2^|Q|, enumerate_len)`.
pub fn universal_with(
    a: &Nfa,
    choice: MethodChoice,
    max_len: Option<usize>,
    caps: &Caps,
) -> Result<UniversalityResult> {
    match choice {
        MethodChoice::Auto => universal(a, caps),
        MethodChoice::Fixed(Method::SpoNfaConstant) => universal_sponfa(a),
        MethodChoice::Fixed(Method::UnaryPumping) => universal_unary_po(a),
        MethodChoice::Fixed(Method::Antichain) => universal_antichain(a, caps),
        MethodChoice::Fixed(Method::Subset) => universal_subset(a, caps),
        MethodChoice::Fixed(Method::BruteForce) => {
            let bound = max_len.unwrap_or_else(|| {
                let full = 1u64.checked_shl(a.num_states() as u32).unwrap_or(u64::MAX);
                full.min(caps.enumerate_len) as usize
            });
            universal_brute(a, bound, caps)
        }
    }
}
