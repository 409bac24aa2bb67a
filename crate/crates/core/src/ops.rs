//! Products, disjoint unions and NFA completion.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::nfa::{Nfa, StateId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductMode {
    Intersect,
    Union,
}

fn same_alphabet(a: &Nfa, b: &Nfa) -> Result<()> {
    if a.alphabet().names() == b.alphabet().names() {
        Ok(())
    } else {
        Err(Error::input("operands have different alphabets"))
    }
}

/// Adds a rejecting sink absorbing every missing transition, if any is missing.
pub fn complete_nfa(a: &Nfa) -> Nfa {
    let missing = a.states().any(|q| {
        a.alphabet()
            .letters()
            .any(|x| a.successors(q, x).is_empty())
    });
    if !missing {
        return a.clone();
    }
    let mut b = a.to_builder();
    let mut name = "sink".to_string();
    while a.state_by_name(&name).is_some() {
        name.push('\'');
    }
    let sink = b.add_state(name);
    for q in a.states() {
        for x in a.alphabet().letters() {
            if a.successors(q, x).is_empty() {
                b.transition(q, x, sink);
            }
        }
    }
    for x in a.alphabet().letters() {
        b.transition(sink, x, sink);
    }
    b.build().expect("completion of a valid automaton is valid")
}

/// Synchronous product restricted to pairs reachable from `I_a × I_b`.
///
/// In union mode both operands are completed first so that a run dying in one
/// operand does not kill the pair.
pub fn product(a: &Nfa, b: &Nfa, mode: ProductMode) -> Result<Nfa> {
    same_alphabet(a, b)?;
    let (a, b) = match mode {
        ProductMode::Intersect => (a.clone(), b.clone()),
        ProductMode::Union => (complete_nfa(a), complete_nfa(b)),
    };
    let mut builder = Nfa::builder(a.alphabet().clone());
    let mut index: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut order = Vec::new();
    let mut intern =
        |p: StateId, q: StateId, builder: &mut crate::nfa::NfaBuilder, order: &mut Vec<_>| {
            *index.entry((p, q)).or_insert_with(|| {
                order.push((p, q));
                builder.add_state(format!("<{},{}>", a.state_name(p), b.state_name(q)))
            })
        };
    let mut initial = Vec::new();
    for p in a.initial().iter() {
        for q in b.initial().iter() {
            initial.push(intern(p, q, &mut builder, &mut order));
        }
    }
    let mut i = 0;
    while i < order.len() {
        let (p, q) = order[i];
        let id = StateId::from(i);
        for x in a.alphabet().letters() {
            for &p2 in a.successors(p, x) {
                for &q2 in b.successors(q, x) {
                    let t = intern(p2, q2, &mut builder, &mut order);
                    builder.transition(id, x, t);
                }
            }
        }
        i += 1;
    }
    if order.is_empty() {
        // no initial pair: a single rejecting state keeps the result well formed
        builder.add_state("<>");
    }
    for (i, &(p, q)) in order.iter().enumerate() {
        let accept = match mode {
            ProductMode::Intersect => a.is_accepting(p) && b.is_accepting(q),
            ProductMode::Union => a.is_accepting(p) || b.is_accepting(q),
        };
        if accept {
            builder.accepting(StateId::from(i));
        }
    }
    for q in initial {
        builder.initial(q);
    }
    builder.build()
}

/// Disjoint union preserving each operand's structure. State names are kept
/// when they are globally unique; otherwise every state is prefixed by its
/// operand index (`0.`, `1.`, ...).
pub fn union_disjoint(parts: &[Nfa]) -> Result<Nfa> {
    let first = parts
        .first()
        .ok_or_else(|| Error::input("union of an empty list"))?;
    for p in &parts[1..] {
        same_alphabet(first, p)?;
    }
    let mut seen = HashSet::new();
    let collide = parts
        .iter()
        .flat_map(|p| p.states().map(move |q| p.state_name(q)))
        .any(|name| !seen.insert(name));
    let mut b = Nfa::builder(first.alphabet().clone());
    for (i, part) in parts.iter().enumerate() {
        let base = b.num_states() as u32;
        for q in part.states() {
            let name = part.state_name(q);
            b.add_state(if collide {
                format!("{i}.{name}")
            } else {
                name.to_string()
            });
        }
        let shift = |q: StateId| StateId(q.0 + base);
        for (p, x, q) in part.transitions() {
            b.transition(shift(p), x, shift(q));
        }
        for q in part.initial().iter() {
            b.initial(shift(q));
        }
        for q in part.accepting_states().iter() {
            b.accepting(shift(q));
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::classify::classify;
    use crate::dfa::determinize;
    use crate::enumerate::enumerate_language;
    use crate::hardness::build_aknn;
    use crate::nfa::{Alphabet, Letter};

    #[test]
    fn union_of_ptnfas_is_a_ptnfa() {
        let caps = Caps::default();
        let a = build_aknn(2, 2, &caps).unwrap();
        let b = build_aknn(1, 2, &caps).unwrap();
        let u = union_disjoint(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(u.num_states(), a.num_states() + b.num_states());
        assert!(classify(&u).is_ptnfa());
        // every word except W(2,2) and W(1,2) is accepted by at least one
        let words = enumerate_language(&u, 5, &caps).unwrap();
        let total: usize = (0..=5).map(|l| 2usize.pow(l)).sum();
        assert_eq!(words.len(), total);
    }

    #[test]
    fn intersect_with_own_complement_is_empty() {
        let caps = Caps::default();
        let a = build_aknn(2, 2, &caps).unwrap();
        let co = determinize(&a, &caps)
            .unwrap()
            .complement()
            .unwrap()
            .to_nfa();
        let meet = product(&a, &co, ProductMode::Intersect).unwrap();
        assert!(enumerate_language(&meet, 7, &caps).unwrap().is_empty());
        let join = product(&a, &co, ProductMode::Union).unwrap();
        assert_eq!(enumerate_language(&join, 3, &caps).unwrap().len(), 15);
    }

    #[test]
    fn alphabet_mismatch_is_an_input_error() {
        let mut b1 = Nfa::builder(Alphabet::indexed(1));
        b1.add_state("p");
        let mut b2 = Nfa::builder(Alphabet::indexed(2));
        b2.add_state("p");
        let (x, y) = (b1.build().unwrap(), b2.build().unwrap());
        assert!(matches!(
            product(&x, &y, ProductMode::Union),
            Err(Error::Input(_))
        ));
        assert!(matches!(union_disjoint(&[x, y]), Err(Error::Input(_))));
    }

    #[test]
    fn completion_adds_a_single_sink() {
        let mut b = Nfa::builder(Alphabet::indexed(2));
        let p = b.add_state("p");
        b.transition(p, Letter(0), p).initial(p).accepting(p);
        let c = complete_nfa(&b.build().unwrap());
        assert_eq!(c.num_states(), 2);
        assert!(classify(&c).complete);
    }
}
