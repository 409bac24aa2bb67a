//! Deterministic Turing machines on a bounded tape.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::text::directive;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    L,
    R,
    S,
}

impl Move {
    fn parse(s: &str) -> Option<Move> {
        match s {
            "L" => Some(Move::L),
            "R" => Some(Move::R),
            "S" => Some(Move::S),
            _ => None,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Move::L => "L",
            Move::R => "R",
            Move::S => "S",
        }
    }
}

/// A symbol of `Δ_{#$}`: separator, tape cell (optionally carrying the head
/// and state), or padding. Indices refer to the owning machine's tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    Sep,
    Cell { tape: usize, state: Option<usize> },
    Pad,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dtm {
    states: Vec<String>,
    tape: Vec<String>,
    input: Vec<usize>,
    blank: usize,
    initial: usize,
    accepting: usize,
    /// Indexed by `state * |T| + symbol`.
    delta: Vec<Option<(usize, usize, Move)>>,
}

fn check_symbol_name(name: &str, what: &str) -> Result<()> {
    if name.is_empty()
        || name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '#' | ':' | '@' | '$' | '<' | '>' | ','))
    {
        return Err(Error::input(format!(
            "{what} name `{name}` is empty or uses a reserved character"
        )));
    }
    if matches!(name, "sep" | "pad" | "->") {
        return Err(Error::input(format!("{what} name `{name}` is reserved")));
    }
    Ok(())
}

fn index_of(names: &[String], name: &str, what: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::input(format!("unknown {what} `{name}`")))
}

impl Dtm {
    /// Reads `states:`, `initial:`, `accepting:`, `tape:`, `input:`, `blank:`
    /// and repeatable `delta: q a -> q' b D` lines.
    pub fn parse(text: &str) -> Result<Dtm> {
        let mut fields: HashMap<&str, (usize, Vec<String>)> = HashMap::new();
        let mut rules = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let Some((key, rest)) = directive(raw) else {
                continue;
            };
            let tokens: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            match key {
                "delta" => {
                    if tokens.len() != 6 || tokens[2] != "->" {
                        return Err(Error::parse(
                            line,
                            "`delta:` takes <q> <a> -> <q'> <b> <L|R|S>",
                        ));
                    }
                    rules.push((line, tokens));
                }
                "states" | "initial" | "accepting" | "tape" | "input" | "blank" => {
                    if fields.insert(key, (line, tokens)).is_some() {
                        return Err(Error::parse(line, format!("duplicate `{key}:` directive")));
                    }
                }
                other => return Err(Error::parse(line, format!("unknown directive `{other}`"))),
            }
        }
        let take = |key: &str| {
            fields
                .get(key)
                .cloned()
                .ok_or_else(|| Error::parse(0, format!("missing `{key}:`")))
        };
        let (sline, states) = take("states")?;
        let (tline, tape) = take("tape")?;
        let (iline, input) = take("input")?;
        let one = |key: &str| -> Result<(usize, String)> {
            let (line, v) = take(key)?;
            match v.as_slice() {
                [x] => Ok((line, x.clone())),
                _ => Err(Error::parse(
                    line,
                    format!("`{key}:` takes exactly one name"),
                )),
            }
        };
        let (_, blank) = one("blank")?;
        let (_, initial) = one("initial")?;
        let (_, accepting) = one("accepting")?;
        for s in &states {
            check_symbol_name(s, "state").map_err(|e| Error::parse(sline, e.to_string()))?;
        }
        for s in &tape {
            check_symbol_name(s, "tape symbol").map_err(|e| Error::parse(tline, e.to_string()))?;
        }
        let dup = |v: &[String]| {
            let mut seen = HashSet::new();
            v.iter().find(|x| !seen.insert(x.as_str())).cloned()
        };
        if let Some(d) = dup(&states) {
            return Err(Error::parse(sline, format!("duplicate state `{d}`")));
        }
        if let Some(d) = dup(&tape) {
            return Err(Error::parse(tline, format!("duplicate tape symbol `{d}`")));
        }
        let input = input
            .iter()
            .map(|s| index_of(&tape, s, "input symbol"))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::parse(iline, e.to_string()))?;
        let blank = index_of(&tape, &blank, "blank symbol")?;
        if input.contains(&blank) {
            return Err(Error::input("the blank must not be an input symbol"));
        }
        let initial = index_of(&states, &initial, "state")?;
        let accepting = index_of(&states, &accepting, "state")?;
        if initial == accepting {
            return Err(Error::input("the initial and accepting states must differ"));
        }
        let mut delta = vec![None; states.len() * tape.len()];
        for (line, t) in rules {
            let at = |e: Error| Error::parse(line, e.to_string());
            let q = index_of(&states, &t[0], "state").map_err(at)?;
            let a = index_of(&tape, &t[1], "tape symbol").map_err(at)?;
            let q2 = index_of(&states, &t[3], "state").map_err(at)?;
            let b = index_of(&tape, &t[4], "tape symbol").map_err(at)?;
            let mv = Move::parse(&t[5])
                .ok_or_else(|| Error::parse(line, format!("bad move `{}`", t[5])))?;
            let slot = &mut delta[q * tape.len() + a];
            if slot.is_some() {
                return Err(Error::parse(
                    line,
                    format!("second rule for ({}, {})", t[0], t[1]),
                ));
            }
            *slot = Some((q2, b, mv));
        }
        let m = Dtm {
            states,
            tape,
            input,
            blank,
            initial,
            accepting,
            delta,
        };
        for q in (0..m.num_states()).filter(|&q| q != m.accepting) {
            for a in 0..m.num_tape() {
                if m.rule(q, a).is_none() {
                    return Err(Error::input(format!(
                        "delta undefined on non-accepting ({}, {})",
                        m.states[q], m.tape[a]
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "states: {}\ninitial: {}\naccepting: {}\ntape: {}\ninput: {}\nblank: {}\n",
            self.states.join(" "),
            self.states[self.initial],
            self.states[self.accepting],
            self.tape.join(" "),
            self.input
                .iter()
                .map(|&i| self.tape[i].as_str())
                .collect::<Vec<_>>()
                .join(" "),
            self.tape[self.blank]
        );
        for q in 0..self.num_states() {
            for a in 0..self.num_tape() {
                if let Some((q2, b, mv)) = self.rule(q, a) {
                    out.push_str(&format!(
                        "delta: {} {} -> {} {} {}\n",
                        self.states[q],
                        self.tape[a],
                        self.states[q2],
                        self.tape[b],
                        mv.as_str()
                    ));
                }
            }
        }
        out
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn num_tape(&self) -> usize {
        self.tape.len()
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.states[q]
    }

    pub fn tape_name(&self, a: usize) -> &str {
        &self.tape[a]
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn accepting(&self) -> usize {
        self.accepting
    }

    pub fn blank(&self) -> usize {
        self.blank
    }

    pub fn input_symbols(&self) -> &[usize] {
        &self.input
    }

    /// `δ(q, a)`; rules stored for the accepting state are kept but never run.
    pub fn rule(&self, q: usize, a: usize) -> Option<(usize, usize, Move)> {
        self.delta[q * self.tape.len() + a]
    }

    /// Parses an input word: whitespace-separated symbols, or a run of
    /// single-character symbols written together. `ε` and the empty string
    /// are the empty input.
    pub fn parse_input(&self, text: &str) -> Result<Vec<usize>> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Vec::new());
        }
        let tokens: Vec<String> =
            if text.contains(char::is_whitespace) || self.tape.iter().any(|t| t == text) {
                text.split_whitespace().map(str::to_string).collect()
            } else {
                text.chars().map(String::from).collect()
            };
        tokens
            .iter()
            .map(|t| {
                let i = index_of(&self.tape, t, "input symbol")?;
                if self.input.contains(&i) {
                    Ok(i)
                } else {
                    Err(Error::input(format!("`{t}` is not an input symbol")))
                }
            })
            .collect()
    }

    pub fn render_sym(&self, s: Sym) -> String {
        match s {
            Sym::Sep => "#".into(),
            Sym::Pad => "$".into(),
            Sym::Cell { tape, state: None } => format!("<{}>", self.tape[tape]),
            Sym::Cell {
                tape,
                state: Some(q),
            } => format!("<{},{}>", self.tape[tape], self.states[q]),
        }
    }
}

/// A configuration on a `pval`-cell tape; `head` is 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Config {
    pub state: usize,
    pub head: usize,
    pub tape: Vec<usize>,
}

impl Config {
    /// The cell symbols `<θ1,ε> .. <θℓ,q> .. <θp,ε>`.
    pub fn symbols(&self) -> Vec<Sym> {
        self.tape
            .iter()
            .enumerate()
            .map(|(i, &t)| Sym::Cell {
                tape: t,
                state: (i == self.head).then_some(self.state),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunVerdict {
    Accepted,
    /// A configuration repeated, so the machine never accepts.
    Rejected,
    StepCap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DtmRun {
    pub verdict: RunVerdict,
    /// Configurations from the initial one up to the accepting one, the first
    /// repeated one, or the last one before the cap.
    pub configs: Vec<Config>,
}

impl fmt::Display for RunVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RunVerdict::Accepted => "accept",
            RunVerdict::Rejected => "reject",
            RunVerdict::StepCap => "cap",
        })
    }
}

pub fn initial_config(m: &Dtm, x: &[usize], pval: usize) -> Result<Config> {
    if pval == 0 {
        return Err(Error::input("the space bound must be at least 1"));
    }
    if x.len() > pval {
        return Err(Error::input(format!(
            "input of length {} exceeds space bound {pval}",
            x.len()
        )));
    }
    let mut tape = x.to_vec();
    tape.resize(pval, m.blank());
    Ok(Config {
        state: m.initial(),
        head: 0,
        tape,
    })
}

/// Runs `m` on `x` with `pval` cells for at most `step_cap` steps.
pub fn simulate_dtm(m: &Dtm, x: &[usize], pval: usize, step_cap: u64) -> Result<DtmRun> {
    let mut config = initial_config(m, x, pval)?;
    let mut configs = vec![config.clone()];
    let mut seen = HashSet::from([config.clone()]);
    let mut steps = 0u64;
    loop {
        if config.state == m.accepting() {
            return Ok(DtmRun {
                verdict: RunVerdict::Accepted,
                configs,
            });
        }
        if steps == step_cap {
            return Ok(DtmRun {
                verdict: RunVerdict::StepCap,
                configs,
            });
        }
        let (q, b, mv) = m
            .rule(config.state, config.tape[config.head])
            .expect("delta is total on non-accepting states");
        config.tape[config.head] = b;
        config.state = q;
        config.head = match mv {
            Move::S => config.head,
            Move::L if config.head == 0 => {
                return Err(Error::Simulation("head moved left of cell 1".into()));
            }
            Move::L => config.head - 1,
            Move::R if config.head + 1 == pval => {
                return Err(Error::Simulation(format!(
                    "head moved right of cell {pval}"
                )));
            }
            Move::R => config.head + 1,
        };
        steps += 1;
        let fresh = seen.insert(config.clone());
        configs.push(config.clone());
        if !fresh {
            return Ok(DtmRun {
                verdict: RunVerdict::Rejected,
                configs,
            });
        }
    }
}
