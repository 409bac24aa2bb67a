//! Line-oriented automaton text format.
//!
//! ```text
//! alphabet: a1 a2
//! states: p q
//! initial: p
//! accepting: q
//! trans: p a1 q
//! ```
//!
//! `#` starts a comment. The printer emits directives in the order above,
//! names in declaration order and transitions sorted by `(src, letter, dst)`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::nfa::{Alphabet, Nfa};

/// Splits a line into its directive keyword and the remaining tokens.
/// Returns `None` for blank and comment-only lines.
pub(crate) fn directive(line: &str) -> Option<(&str, &str)> {
    let line = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let line = line.trim();
    if line.is_empty() {
        return None;
    }
    match line.split_once(':') {
        Some((key, rest)) => Some((key.trim(), rest.trim())),
        None => Some((line, "")),
    }
}

pub fn parse_nfa(text: &str) -> Result<Nfa> {
    let mut alphabet: Option<(usize, Vec<String>)> = None;
    let mut states: Option<(usize, Vec<String>)> = None;
    let mut initial: Option<(usize, Vec<String>)> = None;
    let mut accepting: Option<(usize, Vec<String>)> = None;
    let mut trans: Vec<(usize, Vec<String>)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let Some((key, rest)) = directive(raw) else {
            continue;
        };
        let tokens: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
        let slot = match key {
            "alphabet" => &mut alphabet,
            "states" => &mut states,
            "initial" => &mut initial,
            "accepting" => &mut accepting,
            "trans" => {
                if tokens.len() != 3 {
                    return Err(Error::parse(
                        lineno,
                        "`trans:` takes exactly <src> <letter> <dst>",
                    ));
                }
                trans.push((lineno, tokens));
                continue;
            }
            other => return Err(Error::parse(lineno, format!("unknown directive `{other}`"))),
        };
        if slot.is_some() {
            return Err(Error::parse(
                lineno,
                format!("duplicate `{key}:` directive"),
            ));
        }
        *slot = Some((lineno, tokens));
    }

    let (aline, letters) = alphabet.ok_or_else(|| Error::parse(0, "missing `alphabet:`"))?;
    let (sline, names) = states.ok_or_else(|| Error::parse(0, "missing `states:`"))?;
    if names.is_empty() {
        return Err(Error::parse(sline, "`states:` needs at least one state"));
    }
    let sigma = Alphabet::new(letters).map_err(|e| Error::parse(aline, e.to_string()))?;
    let mut b = Nfa::builder(sigma.clone());
    let mut lookup = std::collections::HashMap::new();
    for name in names {
        if lookup.contains_key(&name) {
            return Err(Error::parse(sline, format!("duplicate state `{name}`")));
        }
        let id = b.add_state(name.clone());
        lookup.insert(name, id);
    }
    let state = |line: usize, name: &str| {
        lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::parse(line, format!("unknown state `{name}`")))
    };
    let (iline, init) = initial.ok_or_else(|| Error::parse(0, "missing `initial:`"))?;
    for name in &init {
        b.initial(state(iline, name)?);
    }
    if let Some((fline, acc)) = accepting {
        for name in &acc {
            b.accepting(state(fline, name)?);
        }
    }
    for (line, t) in &trans {
        let p = state(*line, &t[0])?;
        let x = sigma
            .letter(&t[1])
            .ok_or_else(|| Error::parse(*line, format!("unknown letter `{}`", t[1])))?;
        let q = state(*line, &t[2])?;
        b.transition(p, x, q);
    }
    b.build().map_err(|e| Error::parse(sline, e.to_string()))
}

pub fn print_nfa(a: &Nfa) -> String {
    let mut out = String::new();
    let join = |it: &mut dyn Iterator<Item = &str>| it.collect::<Vec<_>>().join(" ");
    let line = |out: &mut String, key: &str, body: String| {
        if body.is_empty() {
            writeln!(out, "{key}:").unwrap();
        } else {
            writeln!(out, "{key}: {body}").unwrap();
        }
    };
    line(
        &mut out,
        "alphabet",
        join(&mut a.alphabet().names().iter().map(String::as_str)),
    );
    line(
        &mut out,
        "states",
        join(&mut a.states().map(|q| a.state_name(q))),
    );
    line(
        &mut out,
        "initial",
        join(&mut a.initial().iter().map(|q| a.state_name(q))),
    );
    line(
        &mut out,
        "accepting",
        join(&mut a.accepting_states().iter().map(|q| a.state_name(q))),
    );
    for (p, x, q) in a.transitions() {
        writeln!(
            out,
            "trans: {} {} {}",
            a.state_name(p),
            a.alphabet().name(x),
            a.state_name(q)
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# fig 1, right
alphabet: a
states: q q'   # two states
initial: q
accepting: q'
trans: q a q'
trans: q a q
";

    #[test]
    fn parses_and_prints_canonically() {
        let a = parse_nfa(SAMPLE).unwrap();
        assert_eq!(a.num_states(), 2);
        let printed = print_nfa(&a);
        assert_eq!(
            printed,
            "alphabet: a\nstates: q q'\ninitial: q\naccepting: q'\ntrans: q a q\ntrans: q a q'\n"
        );
        assert_eq!(parse_nfa(&printed).unwrap(), a);
    }

    #[test]
    fn empty_accepting_set_is_allowed() {
        let a = parse_nfa("alphabet: a\nstates: p\ninitial: p\naccepting:\n").unwrap();
        assert!(a.accepting_states().is_empty());
        assert!(print_nfa(&a).contains("accepting:\n"));
        let a = parse_nfa("alphabet: a\nstates: p\ninitial: p\n").unwrap();
        assert!(a.accepting_states().is_empty());
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_nfa("alphabet: a\nstates: p\ninitial: p\ntrans: p b p\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 4,
                message: "unknown letter `b`".into()
            }
        );
        assert!(matches!(
            parse_nfa("alphabet: a\nstates: p\nfoo: bar\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(parse_nfa("states: p\ninitial: p\n").is_err());
        assert!(parse_nfa("alphabet: a\nstates: p p\ninitial: p\n").is_err());
        assert!(parse_nfa("alphabet: a\nstates: p\ninitial: p\ninitial: p\n").is_err());
    }
}
