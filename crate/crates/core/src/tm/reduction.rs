//! From a space-bounded DTM and an input to a ptNFA over `Π = Σn × Δ_{#$}`
//! that is universal iff the machine does not accept.
//!
//! Every component is a union member of the final automaton:
//!
//! - `short-word`, `initial[j]`: words too short to hold a run, or not
//!   starting with the initial configuration;
//! - `transition`: words with a wrong transition somewhere;
//! - `short-config`, `rejecting-end`, `long-padding`, `pad-then-symbol`:
//!   words that end badly or misuse the padding symbol.
//!
//! Except for `short-word` and `pad-then-symbol`, each component carries its
//! own copy of `enc(A(n,n))`, the backbone. Gadget states missing a
//! transition under a letter with first component `a_i` fall back into the
//! backbone state `(n+1;i)`, from which the rest of `W(n,n)` is rejected.

use std::fmt;
use std::ops::Range;

use num_bigint::BigUint;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::hardness::{build_aknn, w_word, w_word_len, AknnLayout};
use crate::nfa::{Alphabet, Letter, Nfa, NfaBuilder, StateId, Word};
use crate::ops::union_disjoint;
use crate::tm::dtm::{initial_config, simulate_dtm, Dtm, Move, RunVerdict, Sym};

/// A letter of `Π`, split into its components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairLetter {
    /// Letter of `Σn`, id `0..n`.
    pub first: Letter,
    pub second: Sym,
}

/// Numbering of `Π`. `Δ_{#$}` is ordered `#`, then cells tape-major with the
/// headless cell before the machine states, then `$`; the letter
/// `(a_i, δ)` has id `i·|Δ_{#$}| + index(δ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairAlphabet {
    n: usize,
    tape: usize,
    states: usize,
}

impl PairAlphabet {
    pub fn new(m: &Dtm, n: usize) -> Self {
        PairAlphabet {
            n,
            tape: m.num_tape(),
            states: m.num_states(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `|Δ_{#$}| = |T|(|Q|+1) + 2`.
    pub fn delta_size(&self) -> usize {
        self.tape * (self.states + 1) + 2
    }

    pub fn len(&self) -> usize {
        self.n * self.delta_size()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn sym_index(&self, s: Sym) -> usize {
        match s {
            Sym::Sep => 0,
            Sym::Cell { tape, state } => 1 + tape * (self.states + 1) + state.map_or(0, |q| q + 1),
            Sym::Pad => self.delta_size() - 1,
        }
    }

    pub fn sym(&self, index: usize) -> Sym {
        let d = self.delta_size();
        debug_assert!(index < d);
        if index == 0 {
            Sym::Sep
        } else if index == d - 1 {
            Sym::Pad
        } else {
            let c = index - 1;
            let w = self.states + 1;
            Sym::Cell {
                tape: c / w,
                state: (c % w).checked_sub(1),
            }
        }
    }

    pub fn syms(&self) -> impl Iterator<Item = Sym> + '_ {
        (0..self.delta_size()).map(|i| self.sym(i))
    }

    pub fn letter(&self, first: usize, s: Sym) -> Letter {
        Letter((first * self.delta_size() + self.sym_index(s)) as u32)
    }

    pub fn split(&self, x: Letter) -> PairLetter {
        let d = self.delta_size();
        PairLetter {
            first: Letter((x.index() / d) as u32),
            second: self.sym(x.index() % d),
        }
    }

    /// Display names `a{i}:sep`, `a{i}:pad`, `a{i}:{θ}` and `a{i}:{θ}@{q}`.
    pub fn alphabet(&self, m: &Dtm) -> Alphabet {
        let mut names = Vec::with_capacity(self.len());
        for i in 0..self.n {
            for s in self.syms() {
                let second = match s {
                    Sym::Sep => "sep".to_string(),
                    Sym::Pad => "pad".to_string(),
                    Sym::Cell { tape, state: None } => m.tape_name(tape).to_string(),
                    Sym::Cell {
                        tape,
                        state: Some(q),
                    } => format!("{}@{}", m.tape_name(tape), m.state_name(q)),
                };
                names.push(format!("a{}:{second}", i + 1));
            }
        }
        Alphabet::new(names).expect("machine names are validated to keep letter names distinct")
    }
}

/// `1 + C(x)(p+1)` with `C(x) = (|T|(|Q|+1))^p`: the longest encoding of a
/// run without repeated configurations.
pub fn required_length(m: &Dtm, pval: usize) -> BigUint {
    let cells = BigUint::from(m.num_tape() * (m.num_states() + 1));
    BigUint::from(1u32) + cells.pow(pval as u32) * BigUint::from(pval + 1)
}

/// Least `n` with `|W(n,n)| >= required_length`.
pub fn choose_n(m: &Dtm, pval: usize, caps: &Caps) -> Result<usize> {
    let need = required_length(m, pval);
    let mut n = 1usize;
    while w_word_len(n as u64, n as u64) < need {
        n += 1;
    }
    if n as u64 > caps.reduce_n {
        return Err(Error::resource(
            format!("reduction parameter n = {n}"),
            caps.reduce_n,
        ));
    }
    Ok(n)
}

/// Symbol required at a cell whose previous-configuration neighborhood is
/// `(l, c, r)`, or `None` when the window holds `$` and nothing is required.
/// The accepting state behaves as if it looped without changing anything.
pub fn successor_symbol(m: &Dtm, l: Sym, c: Sym, r: Sym) -> Option<Sym> {
    if [l, c, r].contains(&Sym::Pad) {
        return None;
    }
    let (theta, state) = match c {
        Sym::Sep => return Some(Sym::Sep),
        Sym::Cell { tape, state } => (tape, state),
        Sym::Pad => unreachable!(),
    };
    let live = |s: Sym| match s {
        Sym::Cell {
            tape,
            state: Some(q),
        } if q != m.accepting() => m.rule(q, tape),
        _ => None,
    };
    if let Some(q) = state {
        if q == m.accepting() {
            return Some(c);
        }
        let (q2, written, mv) = m
            .rule(q, theta)
            .expect("delta is total on non-accepting states");
        return Some(Sym::Cell {
            tape: written,
            state: (mv == Move::S).then_some(q2),
        });
    }
    let arriving = match (live(l), live(r)) {
        (Some((q2, _, Move::R)), _) => Some(q2),
        (_, Some((q2, _, Move::L))) => Some(q2),
        _ => None,
    };
    Some(Sym::Cell {
        tape: theta,
        state: arriving,
    })
}

/// `x_0 .. x_{p+1}`: the initial configuration with its surrounding `#`.
pub fn initial_symbols(m: &Dtm, x: &[usize], pval: usize) -> Result<Vec<Sym>> {
    let config = initial_config(m, x, pval)?;
    let mut out = vec![Sym::Sep];
    out.extend(config.symbols());
    out.push(Sym::Sep);
    Ok(out)
}

/// The canonical word encoding the accepting run of `m` on `x`: first
/// components spell `W(n,n)`, second components `#c1#..#ci#`, the accepting
/// configuration repeated while at least `p+1` positions remain, then `$`.
pub fn encode_run(m: &Dtm, x: &[usize], pval: usize, n: usize, caps: &Caps) -> Result<Word> {
    let run = simulate_dtm(m, x, pval, caps.word_len)?;
    if run.verdict != RunVerdict::Accepted {
        return Err(Error::Precondition(format!(
            "the machine does not accept (verdict: {})",
            run.verdict
        )));
    }
    let w1 = w_word(n, n, caps)?;
    let mut w2 = vec![Sym::Sep];
    for c in &run.configs {
        w2.extend(c.symbols());
        w2.push(Sym::Sep);
    }
    if w2.len() > w1.len() {
        return Err(Error::Internal(format!(
            "run encoding of length {} exceeds |W(n,n)| = {} for n = {n}",
            w2.len(),
            w1.len()
        )));
    }
    let last = run
        .configs
        .last()
        .expect("a run has an initial configuration")
        .symbols();
    while w1.len() - w2.len() > pval {
        w2.extend(&last);
        w2.push(Sym::Sep);
    }
    w2.resize(w1.len(), Sym::Pad);
    let pa = PairAlphabet::new(m, n);
    Ok(w1
        .iter()
        .zip(&w2)
        .map(|(a, &s)| pa.letter(a.index(), s))
        .collect())
}

/// True iff every proper prefix of `W(n,n)` reaches an accepting non-`max`
/// state of `A(n,n)` without a self-loop under the next letter, so a gadget
/// rooted there can start reading at that position.
pub fn prefix_attachable(n: usize, caps: &Caps) -> Result<bool> {
    let a = build_aknn(n, n, caps)?;
    let w = w_word(n, n, caps)?;
    let max = AknnLayout::new(n, n).max();
    let mut set = a.initial().clone();
    for &x in &w {
        let ok = set
            .iter()
            .any(|q| q != max && a.is_accepting(q) && !a.has_self_loop(q, x));
        if !ok {
            return Ok(false);
        }
        set = a.run_from(&set, &[x])?;
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReductionOptions {
    /// One copy of each host-rooted gadget shared by all hosts instead of one
    /// copy per host. The language is unchanged.
    pub share_gadgets: bool,
}

struct Ctx<'a> {
    m: &'a Dtm,
    x: Vec<usize>,
    pval: usize,
    pa: PairAlphabet,
    alphabet: Alphabet,
    layout: AknnLayout,
    aknn: Nfa,
    options: ReductionOptions,
}

impl<'a> Ctx<'a> {
    fn new(
        m: &'a Dtm,
        x: &[usize],
        pval: usize,
        n: usize,
        options: ReductionOptions,
    ) -> Result<Self> {
        initial_config(m, x, pval)?;
        if n == 0 {
            return Err(Error::input("the reduction needs n >= 1"));
        }
        let pa = PairAlphabet::new(m, n);
        Ok(Ctx {
            m,
            x: x.to_vec(),
            pval,
            pa,
            alphabet: pa.alphabet(m),
            layout: AknnLayout::new(n, n),
            aknn: build_aknn(n, n, &Caps::default())?,
            options,
        })
    }

    /// Accepting backbone states other than `max`.
    fn hosts(&self) -> Vec<StateId> {
        (1..=self.layout.n)
            .flat_map(|m| (0..self.layout.k).map(move |i| (i, m)))
            .map(|(i, m)| self.layout.pair(i, m))
            .collect()
    }

    fn host_groups(&self) -> Vec<Vec<StateId>> {
        let hosts = self.hosts();
        if self.options.share_gadgets {
            vec![hosts]
        } else {
            hosts.into_iter().map(|h| vec![h]).collect()
        }
    }
}

struct Part<'c, 'a> {
    ctx: &'c Ctx<'a>,
    b: NfaBuilder,
    hosts: Vec<StateId>,
    backbone: bool,
}

impl<'c, 'a> Part<'c, 'a> {
    fn bare(ctx: &'c Ctx<'a>) -> Self {
        Part {
            ctx,
            b: Nfa::builder(ctx.alphabet.clone()),
            hosts: Vec::new(),
            backbone: false,
        }
    }

    /// Starts with `enc(A(n,n))` at ids `0..n(2n+1)+1`.
    fn with_backbone(ctx: &'c Ctx<'a>) -> Self {
        let mut part = Part::bare(ctx);
        let a = &ctx.aknn;
        for q in a.states() {
            part.b.add_state(a.state_name(q));
            if a.is_accepting(q) {
                part.b.accepting(q);
            }
        }
        for q in a.initial().iter() {
            part.b.initial(q);
        }
        for (p, x, q) in a.transitions() {
            for s in ctx.pa.syms() {
                part.b.transition(p, ctx.pa.letter(x.index(), s), q);
            }
        }
        part.backbone = true;
        part
    }

    fn state(&mut self, name: String) -> StateId {
        self.b.add_state(name)
    }

    fn max(&self) -> StateId {
        self.ctx.layout.max()
    }

    fn reentry(&self, first: Letter) -> StateId {
        self.ctx
            .layout
            .pair(self.ctx.layout.k + 1, first.index() + 1)
    }

    /// Gives gadget state `p` the transitions `arms` returns per letter; a
    /// letter with no arm goes to the backbone reentry state.
    fn gadget(&mut self, p: StateId, arms: impl Fn(PairLetter) -> Vec<StateId>) {
        debug_assert!(self.backbone);
        for x in self.ctx.alphabet.letters() {
            let pl = self.ctx.pa.split(x);
            let targets = arms(pl);
            if targets.is_empty() {
                let r = self.reentry(pl.first);
                self.b.transition(p, x, r);
            } else {
                for t in targets {
                    self.b.transition(p, x, t);
                }
            }
        }
    }

    /// Roots a gadget at each host, under the letters chosen by `root` whose
    /// first component has no self-loop at that host.
    fn attach(&mut self, hosts: &[StateId], root: impl Fn(PairLetter) -> Option<StateId>) {
        for &h in hosts {
            for x in self.ctx.alphabet.letters() {
                let pl = self.ctx.pa.split(x);
                if self.ctx.aknn.has_self_loop(h, pl.first) {
                    continue;
                }
                if let Some(t) = root(pl) {
                    self.b.transition(h, x, t);
                }
            }
            if !self.hosts.contains(&h) {
                self.hosts.push(h);
            }
        }
    }

    fn finish(self, name: String) -> Result<Built> {
        let hosts = self.hosts;
        let backbone = self.backbone.then(|| 0..self.ctx.layout.num_states());
        Ok(Built {
            name,
            nfa: self.b.build()?,
            hosts,
            backbone,
        })
    }
}

struct Built {
    name: String,
    nfa: Nfa,
    hosts: Vec<StateId>,
    backbone: Option<Range<usize>>,
}

fn part_a1(ctx: &Ctx) -> Result<Built> {
    let mut p = Part::bare(ctx);
    let p1 = ctx.pval + 1;
    let chain: Vec<StateId> = (0..=p1).map(|i| p.state(format!("short.{i}"))).collect();
    let sink = p.state("short.sink".into());
    for x in ctx.alphabet.letters() {
        for w in chain.windows(2) {
            p.b.transition(w[0], x, w[1]);
        }
        p.b.transition(chain[p1], x, sink);
        p.b.transition(sink, x, sink);
    }
    for &q in &chain {
        p.b.accepting(q);
    }
    p.b.initial(chain[0]);
    p.finish("short-word".into())
}

fn part_a2(ctx: &Ctx, j: usize, expected: Sym) -> Result<Built> {
    let mut p = Part::with_backbone(ctx);
    let chain: Vec<StateId> = (0..=j).map(|i| p.state(format!("init.{j}.{i}"))).collect();
    for w in chain.windows(2) {
        let next = w[1];
        p.gadget(w[0], |_| vec![next]);
    }
    let max = p.max();
    p.gadget(chain[j], |pl| {
        if pl.second == expected {
            vec![]
        } else {
            vec![max]
        }
    });
    p.b.initial(chain[0]);
    p.finish(format!("initial[{j}]"))
}

fn part_b(ctx: &Ctx) -> Result<Built> {
    let mut p = Part::with_backbone(ctx);
    let pa = ctx.pa;
    let d = pa.delta_size();
    let max = p.max();
    for (c, hosts) in ctx.host_groups().into_iter().enumerate() {
        let node1: Vec<StateId> = (0..d).map(|i| p.state(format!("tr{c}[{i}]"))).collect();
        p.attach(&hosts, |pl| Some(node1[pa.sym_index(pl.second)]));
        for i in 0..d {
            let node2: Vec<StateId> = (0..d).map(|j| p.state(format!("tr{c}[{i}.{j}]"))).collect();
            p.gadget(node1[i], |pl| vec![node2[pa.sym_index(pl.second)]]);
            for j in 0..d {
                let leaves: Vec<StateId> = (0..d)
                    .map(|k| p.state(format!("tr{c}[{i}.{j}.{k}]")))
                    .collect();
                p.gadget(node2[j], |pl| vec![leaves[pa.sym_index(pl.second)]]);
                for (k, &leaf) in leaves.iter().enumerate() {
                    let mut cur = leaf;
                    for step in 1..ctx.pval {
                        let next = p.state(format!("tr{c}[{i}.{j}.{k}]/{step}"));
                        p.gadget(cur, |_| vec![next]);
                        cur = next;
                    }
                    let expected = successor_symbol(ctx.m, pa.sym(i), pa.sym(j), pa.sym(k));
                    p.gadget(cur, |pl| match expected {
                        None => vec![],
                        Some(f) if pl.second == f || pl.second == Sym::Pad => vec![],
                        Some(_) => vec![max],
                    });
                }
            }
        }
    }
    p.finish("transition".into())
}

fn part_c1(ctx: &Ctx) -> Result<Built> {
    let mut p = Part::with_backbone(ctx);
    let pv = ctx.pval;
    for (c, hosts) in ctx.host_groups().into_iter().enumerate() {
        let s: Vec<StateId> = (0..=pv).map(|l| p.state(format!("sc.{c}.s{l}"))).collect();
        let t: Vec<StateId> = (1..=pv).map(|j| p.state(format!("sc.{c}.t{j}"))).collect();
        p.attach(&hosts, |pl| (pl.second == Sym::Sep).then_some(s[0]));
        for l in 0..=pv {
            p.gadget(s[l], |pl| match pl.second {
                Sym::Cell { .. } if l < pv => vec![s[l + 1]],
                Sym::Pad if l >= 1 => vec![t[0]],
                _ => vec![],
            });
        }
        for j in 0..pv {
            p.gadget(t[j], |pl| match pl.second {
                Sym::Pad if j + 1 < pv => vec![t[j + 1]],
                _ => vec![],
            });
        }
        for &q in s[1..].iter().chain(&t) {
            p.b.accepting(q);
        }
    }
    p.finish("short-config".into())
}

fn part_c2(ctx: &Ctx) -> Result<Built> {
    let mut p = Part::with_backbone(ctx);
    let pv = ctx.pval;
    let qf = ctx.m.accepting();
    for (c, hosts) in ctx.host_groups().into_iter().enumerate() {
        let g: Vec<StateId> = (0..pv).map(|l| p.state(format!("re.{c}.g{l}"))).collect();
        let h: Vec<StateId> = (0..=pv).map(|j| p.state(format!("re.{c}.h{j}"))).collect();
        p.attach(&hosts, |pl| match pl.second {
            Sym::Cell { state: Some(q), .. } if q != qf => Some(g[0]),
            _ => None,
        });
        for l in 0..pv {
            p.gadget(g[l], |pl| {
                let mut out = Vec::new();
                if l + 1 < pv {
                    out.push(g[l + 1]);
                }
                if pl.second == Sym::Sep {
                    out.push(h[0]);
                }
                out
            });
        }
        for j in 0..=pv {
            p.gadget(h[j], |pl| match pl.second {
                Sym::Pad if j < pv => vec![h[j + 1]],
                _ => vec![],
            });
            p.b.accepting(h[j]);
        }
    }
    p.finish("rejecting-end".into())
}

fn part_c3(ctx: &Ctx) -> Result<Built> {
    let mut p = Part::with_backbone(ctx);
    let pv = ctx.pval;
    for (c, hosts) in ctx.host_groups().into_iter().enumerate() {
        let d: Vec<StateId> = (1..=pv + 1)
            .map(|i| p.state(format!("lp.{c}.{i}")))
            .collect();
        p.attach(&hosts, |pl| (pl.second == Sym::Pad).then_some(d[0]));
        for i in 0..=pv {
            p.gadget(d[i], |pl| match pl.second {
                Sym::Pad if i < pv => vec![d[i + 1]],
                _ => vec![],
            });
        }
        p.b.accepting(d[pv]);
    }
    p.finish("long-padding".into())
}

fn part_c4(ctx: &Ctx) -> Result<Built> {
    let mut p = Part::bare(ctx);
    let s: Vec<StateId> = (0..3).map(|i| p.state(format!("ps.{i}"))).collect();
    for x in ctx.alphabet.letters() {
        if ctx.pa.split(x).second == Sym::Pad {
            p.b.transition(s[0], x, s[1]).transition(s[1], x, s[1]);
        } else {
            p.b.transition(s[0], x, s[0]).transition(s[1], x, s[2]);
        }
        p.b.transition(s[2], x, s[2]);
    }
    p.b.initial(s[0]).accepting(s[2]);
    p.finish("pad-then-symbol".into())
}

fn parts_a(ctx: &Ctx) -> Result<Vec<Built>> {
    let expected = initial_symbols(ctx.m, &ctx.x, ctx.pval)?;
    let mut out = vec![part_a1(ctx)?];
    for (j, &s) in expected.iter().enumerate() {
        out.push(part_a2(ctx, j, s)?);
    }
    Ok(out)
}

fn parts_c(ctx: &Ctx) -> Result<Vec<Built>> {
    Ok(vec![
        part_c1(ctx)?,
        part_c2(ctx)?,
        part_c3(ctx)?,
        part_c4(ctx)?,
    ])
}

fn union_of(parts: Vec<Built>) -> Result<Nfa> {
    union_disjoint(&parts.into_iter().map(|p| p.nfa).collect::<Vec<_>>())
}

/// Words that do not start with the initial configuration, plus every word
/// whose first components are not `W(n,n)`.
pub fn build_part_a(m: &Dtm, x: &[usize], pval: usize, n: usize) -> Result<Nfa> {
    let ctx = Ctx::new(m, x, pval, n, ReductionOptions::default())?;
    union_of(parts_a(&ctx)?)
}

/// Words containing a wrong transition, plus every word whose first
/// components are not `W(n,n)`.
pub fn build_part_b(m: &Dtm, x: &[usize], pval: usize, n: usize) -> Result<Nfa> {
    let ctx = Ctx::new(m, x, pval, n, ReductionOptions::default())?;
    Ok(part_b(&ctx)?.nfa)
}

/// Words ending in a short or non-accepting configuration, with too much
/// padding, or with padding followed by another symbol.
pub fn build_part_c(m: &Dtm, x: &[usize], pval: usize, n: usize) -> Result<Nfa> {
    let ctx = Ctx::new(m, x, pval, n, ReductionOptions::default())?;
    union_of(parts_c(&ctx)?)
}

/// Where a component sits inside the final automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub name: String,
    pub states: Range<usize>,
    /// Ids of this component's backbone copy, if it has one.
    pub backbone: Option<Range<usize>>,
    /// Backbone states that root a gadget.
    pub hosts: Vec<StateId>,
}

#[derive(Debug, Clone)]
pub struct ReductionArtifact {
    pub output: Nfa,
    pub n: usize,
    pub pval: usize,
    pub pairs: PairAlphabet,
    pub components: Vec<Component>,
    /// `1 + C(x)(p+1)`.
    pub required_len: BigUint,
}

impl ReductionArtifact {
    /// `w[1]`.
    pub fn project_first(&self, w: &[Letter]) -> Word {
        w.iter().map(|&x| self.pairs.split(x).first).collect()
    }

    /// `w[2]`.
    pub fn project_second(&self, w: &[Letter]) -> Vec<Sym> {
        w.iter().map(|&x| self.pairs.split(x).second).collect()
    }

    pub fn component(&self, name: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.name == name)
    }

    /// `#`-comment lines describing the build.
    pub fn provenance(&self) -> String {
        let mut out = format!(
            "# reduction: n = {}, |Pi| = {}, p = {}, |W(n,n)| = {}, required = {}\n",
            self.n,
            self.pairs.len(),
            self.pval,
            w_word_len(self.n as u64, self.n as u64),
            self.required_len
        );
        for c in &self.components {
            out.push_str(&format!(
                "# component {}: {} states, {} hosts\n",
                c.name,
                c.states.len(),
                c.hosts.len()
            ));
        }
        out.push_str(&format!(
            "# total: {} states, {} transitions\n",
            self.output.num_states(),
            self.output.num_transitions()
        ));
        out
    }
}

impl fmt::Display for ReductionArtifact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.provenance(), self.output)
    }
}

pub fn reduce(m: &Dtm, x: &[usize], pval: usize, caps: &Caps) -> Result<ReductionArtifact> {
    reduce_with(m, x, pval, caps, ReductionOptions::default())
}

pub fn reduce_with(
    m: &Dtm,
    x: &[usize],
    pval: usize,
    caps: &Caps,
    options: ReductionOptions,
) -> Result<ReductionArtifact> {
    initial_config(m, x, pval)?;
    let n = choose_n(m, pval, caps)?;
    let ctx = Ctx::new(m, x, pval, n, options)?;
    let mut parts = parts_a(&ctx)?;
    parts.push(part_b(&ctx)?);
    parts.extend(parts_c(&ctx)?);
    let mut components = Vec::with_capacity(parts.len());
    let mut offset = 0usize;
    for p in &parts {
        let shift = |r: &Range<usize>| r.start + offset..r.end + offset;
        components.push(Component {
            name: p.name.clone(),
            states: offset..offset + p.nfa.num_states(),
            backbone: p.backbone.as_ref().map(shift),
            hosts: p
                .hosts
                .iter()
                .map(|h| StateId((h.index() + offset) as u32))
                .collect(),
        });
        offset += p.nfa.num_states();
    }
    Ok(ReductionArtifact {
        output: union_of(parts)?,
        n,
        pval,
        pairs: ctx.pa,
        components,
        required_len: required_length(m, pval),
    })
}

/// How `verify_reduction` established its verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerificationMode {
    /// Antichain universality within the node cap.
    Full,
    /// Witness rejection, `w[2]` corruptions and random sampling.
    Proxy,
}

impl fmt::Display for VerificationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerificationMode::Full => "full",
            VerificationMode::Proxy => "proxy",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub mode: VerificationMode,
    pub machine_accepts: bool,
    /// Decided universality of the output; `None` in proxy mode.
    pub universal: Option<bool>,
    /// Whether the canonical run encoding is rejected; `None` when the
    /// machine does not accept.
    pub witness_rejected: Option<bool>,
    pub corruptions_checked: u64,
    /// Corruptions of `w[2]` that the output rejects; should be 0.
    pub corruptions_rejected: u64,
    pub samples_checked: u64,
    /// Sampled words other than the witness that the output rejects; should be 0.
    pub samples_rejected: u64,
}

impl Verification {
    /// Every check agrees with the machine's verdict.
    pub fn consistent(&self) -> bool {
        self.universal.is_none_or(|u| u != self.machine_accepts)
            && self.witness_rejected.unwrap_or(true)
            && self.corruptions_rejected == 0
            && self.samples_rejected == 0
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "verification: {}\nmachine accepts: {}\n",
            self.mode,
            if self.machine_accepts { "yes" } else { "no" }
        );
        if let Some(u) = self.universal {
            out.push_str(&format!("universal: {}\n", if u { "yes" } else { "no" }));
        }
        if let Some(r) = self.witness_rejected {
            out.push_str(&format!(
                "witness rejected: {}\n",
                if r { "yes" } else { "no" }
            ));
            out.push_str(&format!(
                "corruptions accepted: {}/{}\n",
                self.corruptions_checked - self.corruptions_rejected,
                self.corruptions_checked
            ));
        }
        if self.samples_checked > 0 {
            out.push_str(&format!(
                "samples accepted: {}/{}\n",
                self.samples_checked - self.samples_rejected,
                self.samples_checked
            ));
        }
        out.push_str(&format!(
            "consistent: {}\n",
            if self.consistent() { "yes" } else { "no" }
        ));
        out
    }
}

/// Every single-position change of the `w[2]` component of `w`.
pub fn second_corruptions<'a>(
    pairs: &'a PairAlphabet,
    w: &'a [Letter],
) -> impl Iterator<Item = Word> + 'a {
    (0..w.len()).flat_map(move |i| {
        let pl = pairs.split(w[i]);
        pairs.syms().filter(move |&s| s != pl.second).map(move |s| {
            let mut v = w.to_vec();
            v[i] = pairs.letter(pl.first.index(), s);
            v
        })
    })
}

/// Checks `reduce` output against a direct simulation. Tries full antichain
/// universality first and falls back to the proxy checks when a cap is hit;
/// `samples` random words of length at most `|W(n,n)|` are drawn in proxy
/// mode.
pub fn verify_reduction(
    art: &ReductionArtifact,
    m: &Dtm,
    x: &[usize],
    samples: usize,
    seed: u64,
    caps: &Caps,
) -> Result<Verification> {
    use rand::{Rng, SeedableRng};

    let machine_accepts =
        simulate_dtm(m, x, art.pval, caps.word_len)?.verdict == RunVerdict::Accepted;
    let witness = if machine_accepts {
        Some(encode_run(m, x, art.pval, art.n, caps)?)
    } else {
        None
    };
    let mut v = Verification {
        mode: VerificationMode::Full,
        machine_accepts,
        universal: None,
        witness_rejected: None,
        corruptions_checked: 0,
        corruptions_rejected: 0,
        samples_checked: 0,
        samples_rejected: 0,
    };
    if let Some(w) = &witness {
        v.witness_rejected = Some(!art.output.accepts(w)?);
        for c in second_corruptions(&art.pairs, w) {
            v.corruptions_checked += 1;
            if !art.output.accepts(&c)? {
                v.corruptions_rejected += 1;
            }
        }
    }
    match crate::universality::universal_antichain(&art.output, caps) {
        Ok(r) => v.universal = Some(r.universal),
        Err(Error::Resource { .. }) => {
            v.mode = VerificationMode::Proxy;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let max_len = w_word_len(art.n as u64, art.n as u64);
            let max_len = usize::try_from(max_len)
                .unwrap_or(usize::MAX)
                .min(caps.word_len as usize);
            let letters = art.pairs.len() as u32;
            for _ in 0..samples {
                let len = rng.gen_range(0..=max_len);
                let w: Word = (0..len)
                    .map(|_| Letter(rng.gen_range(0..letters)))
                    .collect();
                v.samples_checked += 1;
                if Some(&w) != witness.as_ref() && !art.output.accepts(&w)? {
                    v.samples_rejected += 1;
                }
            }
        }
        Err(e) => return Err(e),
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE_STEP: &str = "\
states: q0 qf
initial: q0
accepting: qf
tape: 1 _
input: 1
blank: _
delta: q0 1 -> qf 1 S
delta: q0 _ -> q0 _ S
";

    fn machine() -> Dtm {
        Dtm::parse(ONE_STEP).unwrap()
    }

    #[test]
    fn pair_alphabet_numbering_round_trips() {
        let m = machine();
        let pa = PairAlphabet::new(&m, 3);
        assert_eq!(pa.delta_size(), 8);
        assert_eq!(pa.len(), 24);
        for i in 0..pa.delta_size() {
            assert_eq!(pa.sym_index(pa.sym(i)), i);
        }
        let x = pa.letter(
            2,
            Sym::Cell {
                tape: 1,
                state: Some(0),
            },
        );
        assert_eq!(pa.split(x).first, Letter(2));
        let names = pa.alphabet(&m);
        assert_eq!(names.name(x), "a3:_@q0");
        assert_eq!(names.name(Letter(0)), "a1:sep");
        assert_eq!(names.name(Letter(7)), "a1:pad");
    }

    #[test]
    fn n_is_minimal() {
        let m = machine();
        assert_eq!(required_length(&m, 1), BigUint::from(13u32));
        assert_eq!(choose_n(&m, 1, &Caps::default()).unwrap(), 3);
        assert_eq!(choose_n(&m, 2, &Caps::default()).unwrap(), 5);
        let tight = Caps {
            reduce_n: 2,
            ..Caps::default()
        };
        let err = choose_n(&m, 1, &tight).unwrap_err();
        assert!(err.to_string().contains("n = 3"));
    }

    #[test]
    fn successor_follows_head_moves() {
        let m = Dtm::parse(
            "states: q0 qf\ninitial: q0\naccepting: qf\ntape: 1 _\ninput: 1\nblank: _\n\
             delta: q0 1 -> q0 1 R\ndelta: q0 _ -> qf 1 S\n",
        )
        .unwrap();
        let head = |t, q| Sym::Cell {
            tape: t,
            state: Some(q),
        };
        let cell = |t| Sym::Cell {
            tape: t,
            state: None,
        };
        assert_eq!(
            successor_symbol(&m, Sym::Sep, head(0, 0), cell(1)),
            Some(cell(0))
        );
        assert_eq!(
            successor_symbol(&m, head(0, 0), cell(1), Sym::Sep),
            Some(head(1, 0))
        );
        assert_eq!(
            successor_symbol(&m, cell(0), head(1, 0), Sym::Sep),
            Some(head(0, 1))
        );
        assert_eq!(
            successor_symbol(&m, cell(0), head(0, 1), Sym::Sep),
            Some(head(0, 1))
        );
        assert_eq!(
            successor_symbol(&m, cell(0), Sym::Sep, head(0, 0)),
            Some(Sym::Sep)
        );
        assert_eq!(successor_symbol(&m, cell(0), cell(0), Sym::Pad), None);
    }

    #[test]
    fn one_step_run_encoding() {
        let m = machine();
        let caps = Caps::default();
        let w = encode_run(&m, &[0], 1, 3, &caps).unwrap();
        let pa = PairAlphabet::new(&m, 3);
        let second: Vec<String> = w
            .iter()
            .map(|&x| m.render_sym(pa.split(x).second))
            .collect();
        assert_eq!(&second[..3], ["#", "<1,q0>", "#"]);
        assert_eq!(w.len(), 19);
        assert!(second.iter().rev().take_while(|s| *s == "$").count() <= 1);
        let first: Word = w.iter().map(|&x| pa.split(x).first).collect();
        assert_eq!(first, w_word(3, 3, &caps).unwrap());
    }

    #[test]
    fn small_prefixes_are_attachable() {
        for n in 1..=3 {
            assert!(prefix_attachable(n, &Caps::default()).unwrap(), "n = {n}");
        }
    }
}
