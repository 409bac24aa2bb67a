//! Bounded language enumeration, the ground-truth oracle used across the crate.

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::nfa::{Letter, Nfa, StateSet, Word};

/// `can_finish[r][q]`: some path of exactly `r` letters leads from `q` into `F`.
fn exact_distance_table(a: &Nfa, max_len: usize) -> Vec<Vec<bool>> {
    let mut table = Vec::with_capacity(max_len + 1);
    table.push(a.states().map(|q| a.is_accepting(q)).collect::<Vec<_>>());
    for r in 1..=max_len {
        let prev = &table[r - 1];
        let row = a
            .states()
            .map(|q| a.all_successors(q).iter().any(|s| prev[s.index()]))
            .collect();
        table.push(row);
    }
    table
}

fn check_len(max_len: usize, caps: &Caps) -> Result<()> {
    if max_len as u64 > caps.enumerate_len {
        return Err(Error::resource("enumeration length", caps.enumerate_len));
    }
    Ok(())
}

/// All accepted words of length at most `max_len`, in length-then-lexicographic
/// order by letter id.
pub fn enumerate_language(a: &Nfa, max_len: usize, caps: &Caps) -> Result<Vec<Word>> {
    check_len(max_len, caps)?;
    let table = exact_distance_table(a, max_len);
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    for len in 0..=max_len {
        collect(a, &table, a.initial(), len, &mut prefix, &mut out, caps)?;
    }
    Ok(out)
}

fn collect(
    a: &Nfa,
    table: &[Vec<bool>],
    set: &StateSet,
    remaining: usize,
    prefix: &mut Word,
    out: &mut Vec<Word>,
    caps: &Caps,
) -> Result<()> {
    if !set.iter().any(|q| table[remaining][q.index()]) {
        return Ok(());
    }
    if remaining == 0 {
        if out.len() as u64 >= caps.enumerate_words {
            return Err(Error::resource("enumerated words", caps.enumerate_words));
        }
        out.push(prefix.clone());
        return Ok(());
    }
    for x in a.alphabet().letters() {
        let next = a.step_unchecked(set, x);
        prefix.push(x);
        collect(a, table, &next, remaining - 1, prefix, out, caps)?;
        prefix.pop();
    }
    Ok(())
}

/// Iterates over every word of length at most `max_len` in length-lex order,
/// calling `visit` with the word and the reached state set. Stops early when
/// `visit` returns `false`. Visits are counted against `enumerate_words`.
pub fn for_each_word<F>(a: &Nfa, max_len: usize, caps: &Caps, mut visit: F) -> Result<()>
where
    F: FnMut(&[Letter], &StateSet) -> bool,
{
    check_len(max_len, caps)?;
    let mut budget = caps.enumerate_words;
    let mut prefix = Vec::new();
    for len in 0..=max_len {
        match walk(a, a.initial(), len, &mut prefix, &mut budget, &mut visit) {
            Walk::Continue => {}
            Walk::Stop => return Ok(()),
            Walk::Exhausted => {
                return Err(Error::resource("enumerated words", caps.enumerate_words))
            }
        }
    }
    Ok(())
}

enum Walk {
    Continue,
    Stop,
    Exhausted,
}

fn walk<F>(
    a: &Nfa,
    set: &StateSet,
    remaining: usize,
    prefix: &mut Word,
    budget: &mut u64,
    visit: &mut F,
) -> Walk
where
    F: FnMut(&[Letter], &StateSet) -> bool,
{
    if remaining == 0 {
        if *budget == 0 {
            return Walk::Exhausted;
        }
        *budget -= 1;
        return if visit(prefix, set) {
            Walk::Continue
        } else {
            Walk::Stop
        };
    }
    for x in a.alphabet().letters() {
        let next = a.step_unchecked(set, x);
        prefix.push(x);
        let r = walk(a, &next, remaining - 1, prefix, budget, visit);
        prefix.pop();
        if !matches!(r, Walk::Continue) {
            return r;
        }
    }
    Walk::Continue
}
