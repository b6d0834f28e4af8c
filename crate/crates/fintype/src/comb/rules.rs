//! Rewrite rules as pairs of symbol templates. A template is matched by
//! collecting candidate values for its variables from the concrete symbols,
//! then instantiating and comparing, so every rule runs in both directions
//! from one table entry.

use std::sync::OnceLock;

use super::{strand_counts, validate_comb, validate_twisted, CombSymbol, CombWord, TwistedLoom};
use crate::looms::ThreadKind;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

// integer variables
const I: u8 = 0;
const J: u8 = 1;
const T: u8 = 2;
const S: u8 = 3;
const H: u8 = 4;
const W: u8 = 5;
const NVARS: usize = 6;

/// An index expression: `var + c`, or `var + c + 2` when `var >= other`.
#[derive(Clone, Copy, Debug)]
enum Ix {
    V(u8, i64),
    Cond(u8, u8),
}

#[derive(Clone, Copy, Debug)]
enum Kind {
    Fixed(ThreadKind),
    Var(u8),
}

#[derive(Clone, Copy, Debug)]
enum Inv {
    Fixed(bool),
    Var(u8),
}

#[derive(Clone, Copy, Debug)]
enum Pat {
    Cup(Ix),
    Cap(Ix),
    Bar(Ix),
    X(Inv, Ix),
    Th(Kind, Ix, u8, (u8, i64)),
}

#[derive(Clone, Copy, Debug, Default)]
struct Bind {
    v: [Option<i64>; NVARS],
    kind: [Option<ThreadKind>; 2],
    inv: [Option<bool>; 2],
}

impl Bind {
    fn get(&self, x: u8) -> i64 {
        self.v[x as usize].expect("bound")
    }
}

type Cond = fn(&Bind) -> bool;

/// One rewrite rule. Rules whose right side only holds up to a height shift
/// carry `shift`: threads outside the match at heights `>= var + c` move up
/// by `by` going forward, and back down going backward.
pub struct Rule {
    pub name: &'static str,
    lhs: Vec<Pat>,
    rhs: Vec<Pat>,
    cond: Option<(Cond, &'static str)>,
    shift: Option<(u8, i64, i64)>,
}

impl std::fmt::Debug for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Rule").field("name", &self.name).finish()
    }
}

impl Rule {
    pub fn len(&self, dir: Direction) -> usize {
        self.side(dir).0.len()
    }

    pub fn is_empty(&self, dir: Direction) -> bool {
        self.len(dir) == 0
    }

    /// True when the rule changes heights of the surrounding threads.
    pub fn is_padded(&self) -> bool {
        self.shift.is_some()
    }

    /// Output length minus input length.
    pub fn growth(&self, dir: Direction) -> isize {
        let (l, r) = self.side(dir);
        r.len() as isize - l.len() as isize
    }

    fn side(&self, dir: Direction) -> (&[Pat], &[Pat]) {
        match dir {
            Direction::Forward => (&self.lhs, &self.rhs),
            Direction::Backward => (&self.rhs, &self.lhs),
        }
    }
}

fn ix_val(ix: Ix, b: &Bind) -> Option<i64> {
    match ix {
        Ix::V(x, c) => b.v[x as usize].map(|v| v + c),
        Ix::Cond(x, o) => {
            let (v, o) = (b.v[x as usize]?, b.v[o as usize]?);
            Some(if v >= o { v + 2 } else { v })
        }
    }
}

fn pos(v: Option<i64>) -> Option<usize> {
    v.filter(|&v| v >= 1).map(|v| v as usize)
}

fn inst(p: &Pat, b: &Bind) -> Option<CombSymbol> {
    Some(match *p {
        Pat::Cup(i) => CombSymbol::Cup(pos(ix_val(i, b))?),
        Pat::Cap(i) => CombSymbol::Cap(pos(ix_val(i, b))?),
        Pat::Bar(i) => CombSymbol::Bar(pos(ix_val(i, b))?),
        Pat::X(inv, i) => {
            let inv = match inv {
                Inv::Fixed(x) => x,
                Inv::Var(v) => b.inv[v as usize]?,
            };
            let i = pos(ix_val(i, b))?;
            if inv {
                CombSymbol::XInv(i)
            } else {
                CombSymbol::X(i)
            }
        }
        Pat::Th(kind, i, t, (h, c)) => CombSymbol::Thread {
            kind: match kind {
                Kind::Fixed(k) => k,
                Kind::Var(v) => b.kind[v as usize]?,
            },
            strand: pos(ix_val(i, b))?,
            target: pos(b.v[t as usize])?,
            height: pos(b.v[h as usize].map(|h| h + c))?,
        },
    })
}

#[derive(Default)]
struct Candidates {
    v: [Vec<i64>; NVARS],
    kind: [Vec<ThreadKind>; 2],
    inv: [Vec<bool>; 2],
}

fn push<T: PartialEq>(v: &mut Vec<T>, x: T) {
    if !v.contains(&x) {
        v.push(x);
    }
}

fn ix_candidates(ix: Ix, val: usize, c: &mut Candidates) {
    let val = val as i64;
    match ix {
        Ix::V(x, k) => push(&mut c.v[x as usize], val - k),
        Ix::Cond(x, _) => {
            push(&mut c.v[x as usize], val);
            push(&mut c.v[x as usize], val - 2);
        }
    }
}

/// Collects candidate bindings, or `None` if the symbol shapes differ.
fn candidates(pats: &[Pat], syms: &[CombSymbol]) -> Option<Candidates> {
    let mut c = Candidates::default();
    for (p, s) in pats.iter().zip(syms) {
        match (*p, *s) {
            (Pat::Cup(i), CombSymbol::Cup(v)) | (Pat::Cap(i), CombSymbol::Cap(v)) | (Pat::Bar(i), CombSymbol::Bar(v)) => {
                ix_candidates(i, v, &mut c)
            }
            (Pat::X(inv, i), CombSymbol::X(v) | CombSymbol::XInv(v)) => {
                let actual = matches!(s, CombSymbol::XInv(_));
                match inv {
                    Inv::Fixed(x) if x != actual => return None,
                    Inv::Fixed(_) => {}
                    Inv::Var(u) => push(&mut c.inv[u as usize], actual),
                }
                ix_candidates(i, v, &mut c);
            }
            (Pat::Th(kind, i, t, (h, hc)), CombSymbol::Thread { kind: k, strand, target, height }) => {
                match kind {
                    Kind::Fixed(x) if x != k => return None,
                    Kind::Fixed(_) => {}
                    Kind::Var(u) => push(&mut c.kind[u as usize], k),
                }
                ix_candidates(i, strand, &mut c);
                push(&mut c.v[t as usize], target as i64);
                push(&mut c.v[h as usize], height as i64 - hc);
            }
            _ => return None,
        }
    }
    Some(c)
}

/// Every binding extending `base` that reproduces `syms` exactly.
fn bindings(pats: &[Pat], syms: &[CombSymbol], base: Bind) -> Vec<Bind> {
    let Some(c) = candidates(pats, syms) else { return Vec::new() };
    let mut out = Vec::new();
    let mut b = base;
    fn rec(slot: usize, c: &Candidates, b: &mut Bind, pats: &[Pat], syms: &[CombSymbol], out: &mut Vec<Bind>) {
        match slot {
            0..NVARS => {
                if b.v[slot].is_some() || c.v[slot].is_empty() {
                    return rec(slot + 1, c, b, pats, syms, out);
                }
                for &x in &c.v[slot] {
                    b.v[slot] = Some(x);
                    rec(slot + 1, c, b, pats, syms, out);
                }
                b.v[slot] = None;
            }
            6 | 7 => {
                let u = slot - 6;
                if c.kind[u].is_empty() {
                    return rec(slot + 1, c, b, pats, syms, out);
                }
                for &k in &c.kind[u] {
                    b.kind[u] = Some(k);
                    rec(slot + 1, c, b, pats, syms, out);
                }
                b.kind[u] = None;
            }
            8 | 9 => {
                let u = slot - 8;
                if c.inv[u].is_empty() {
                    return rec(slot + 1, c, b, pats, syms, out);
                }
                for &x in &c.inv[u] {
                    b.inv[u] = Some(x);
                    rec(slot + 1, c, b, pats, syms, out);
                }
                b.inv[u] = None;
            }
            _ => {
                if pats.iter().zip(syms).all(|(p, s)| inst(p, b) == Some(*s)) {
                    out.push(*b);
                }
            }
        }
    }
    rec(0, &c, &mut b, pats, syms, &mut out);
    out
}

/// The result of one rule application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Applied {
    pub symbols: Vec<CombSymbol>,
    /// Length of the replacement, which starts at the application position.
    pub replaced: usize,
    /// The value of the rule's first index variable, when bound. Feeding it
    /// back as `free` makes an insertion invert a deletion.
    pub index: Option<usize>,
}

/// Applies `rule` at `position` of a raw symbol sequence. `free` supplies
/// the first index variable for rules that insert from nothing. Validity of
/// the output is left to the caller.
pub fn apply_rule(
    symbols: &[CombSymbol],
    rule: &Rule,
    dir: Direction,
    position: usize,
    free: Option<usize>,
) -> Result<Applied> {
    let (lhs, rhs) = rule.side(dir);
    let no_match = || Error::NoMatch { rule: format!("{} {dir:?}", rule.name), position };
    if position + lhs.len() > symbols.len() {
        return Err(no_match());
    }
    let span = &symbols[position..position + lhs.len()];
    let mut base = Bind::default();
    if let Some(i) = free {
        base.v[I as usize] = Some(i as i64);
    }
    let found = bindings(lhs, span, base);
    if found.is_empty() {
        return Err(no_match());
    }
    let mut failed = None;
    for b in found {
        if let Some((cond, why)) = rule.cond {
            if !cond(&b) {
                failed = Some(why);
                continue;
            }
        }
        let Some(mut replacement) = rhs.iter().map(|p| inst(p, &b)).collect::<Option<Vec<_>>>() else {
            failed = Some("the replacement needs an index that is unbound or below 1");
            continue;
        };
        let mut out: Vec<CombSymbol> = symbols[..position].to_vec();
        let replaced = replacement.len();
        out.append(&mut replacement);
        out.extend_from_slice(&symbols[position + lhs.len()..]);
        if let Some((hv, c, by)) = rule.shift {
            let (from, by) = match dir {
                Direction::Forward => (b.get(hv) + c, by),
                Direction::Backward => (b.get(hv) + c + by, -by),
            };
            for (k, s) in out.iter_mut().enumerate() {
                if (position..position + replaced).contains(&k) {
                    continue;
                }
                if let CombSymbol::Thread { height, .. } = s {
                    if *height as i64 >= from {
                        *height = (*height as i64 + by) as usize;
                    }
                }
            }
        }
        let index = b.v[I as usize].filter(|&v| v >= 1).map(|v| v as usize);
        return Ok(Applied { symbols: out, replaced, index });
    }
    Err(Error::SideCondition {
        rule: format!("{} {dir:?}", rule.name),
        reason: failed.unwrap_or("no binding").to_string(),
    })
}

/// Applies a comb move and validates the result.
pub fn comb_move(w: &CombWord, rule: &Rule, dir: Direction, position: usize, free: Option<usize>) -> Result<CombWord> {
    let a = apply_rule(w.symbols(), rule, dir, position, free)?;
    validate_comb(a.symbols)
}

/// Applies a twisted-loom rule and validates the result.
pub fn twisted_rewrite(
    l: &TwistedLoom,
    rule: &Rule,
    dir: Direction,
    position: usize,
) -> Result<TwistedLoom> {
    let a = apply_rule(l.symbols(), rule, dir, position, None)?;
    strand_counts(&a.symbols)?;
    validate_twisted(a.symbols)
}

/// Looks a rule up by name in either table.
pub fn rule(name: &str) -> Option<&'static Rule> {
    comb_rules().iter().chain(twisted_rules()).find(|r| r.name == name)
}

use Ix::{Cond as C, V};
use Pat::{Bar, Cap, Cup, Th, X};

const SIG: Kind = Kind::Var(0);
const TAU: Kind = Kind::Var(1);
const PLUS: Kind = Kind::Fixed(ThreadKind::Plus);
const MINUS: Kind = Kind::Fixed(ThreadKind::Minus);
const ZERO: Kind = Kind::Fixed(ThreadKind::Zero);
const POS: Inv = Inv::Fixed(false);
const NEG: Inv = Inv::Fixed(true);
const E1: Inv = Inv::Var(0);
const E2: Inv = Inv::Var(1);

fn i(c: i64) -> Ix {
    V(I, c)
}

fn j(c: i64) -> Ix {
    V(J, c)
}

fn r(name: &'static str, lhs: Vec<Pat>, rhs: Vec<Pat>) -> Rule {
    Rule { name, lhs, rhs, cond: None, shift: None }
}

fn rc(name: &'static str, lhs: Vec<Pat>, rhs: Vec<Pat>, cond: Cond, why: &'static str) -> Rule {
    Rule { name, lhs, rhs, cond: Some((cond, why)), shift: None }
}

/// The comb diagram moves `F1`..`F21`. The S-bend chain is split into
/// `F20a` and `F20b`. Commutations accept both crossing signs.
pub fn comb_rules() -> &'static [Rule] {
    static RULES: OnceLock<Vec<Rule>> = OnceLock::new();
    RULES.get_or_init(|| {
        vec![
            r("F1", vec![X(POS, i(0)), Cap(i(0))], vec![Cap(i(0))]),
            r("F2", vec![Cup(i(0)), X(POS, i(0))], vec![Cup(i(0))]),
            r("F3", vec![Cup(i(0)), Cap(i(1))], vec![]),
            r("F4", vec![Cup(i(1)), Cap(i(0))], vec![]),
            r("F5", vec![X(POS, i(0)), X(POS, i(1)), X(POS, i(0))], vec![X(POS, i(1)), X(POS, i(0)), X(POS, i(1))]),
            r("F6", vec![X(POS, i(0)), X(NEG, i(0))], vec![]),
            r("F7", vec![X(NEG, i(0)), X(POS, i(0))], vec![]),
            r("F8", vec![Bar(i(1)), X(POS, i(0))], vec![X(POS, i(0)), Bar(i(0))]),
            r("F9", vec![Bar(i(0)), X(NEG, i(0))], vec![X(NEG, i(0)), Bar(i(1))]),
            r("F10", vec![X(POS, i(0)), Cap(i(1))], vec![X(NEG, i(1)), Cap(i(0))]),
            r("F11", vec![X(NEG, i(0)), Cap(i(1))], vec![X(POS, i(1)), Cap(i(0))]),
            r("F12", vec![Cup(i(1)), X(POS, i(0))], vec![Cup(i(0)), X(NEG, i(1))]),
            r("F13", vec![Cup(i(1)), X(NEG, i(0))], vec![Cup(i(0)), X(POS, i(1))]),
            rc(
                "F14",
                vec![X(E1, i(0)), X(E2, j(0))],
                vec![X(E2, j(0)), X(E1, i(0))],
                |b| (b.get(J) - b.get(I)).abs() > 1,
                "the crossings share a strand",
            ),
            rc(
                "F15",
                vec![X(E1, i(0)), Bar(j(0))],
                vec![Bar(j(0)), X(E1, i(0))],
                |b| b.get(J) != b.get(I) && b.get(J) != b.get(I) + 1,
                "the bar is on a crossing strand",
            ),
            rc(
                "F16",
                vec![X(E1, i(0)), Cup(j(0))],
                vec![Cup(j(0)), X(E1, C(I, J))],
                |b| b.get(J) != b.get(I) + 1,
                "the cup opens between the crossing strands",
            ),
            rc(
                "F17",
                vec![Cap(j(0)), X(E1, i(0))],
                vec![X(E1, C(I, J)), Cap(j(0))],
                |b| b.get(J) != b.get(I) + 1,
                "the cap closes between the crossing strands",
            ),
            r("F18", vec![Bar(i(0)), Cup(j(0))], vec![Cup(j(0)), Bar(C(I, J))]),
            r("F19", vec![Cap(j(0)), Bar(i(0))], vec![Bar(C(I, J)), Cap(j(0))]),
            r("F20a", vec![Cup(i(2)), Cap(i(0))], vec![Cap(i(0)), Cup(i(0))]),
            r("F20b", vec![Cap(i(0)), Cup(i(0))], vec![Cup(i(0)), Cap(i(2))]),
            rc(
                "F21",
                vec![Cap(i(0)), Cup(j(0))],
                vec![Cup(C(J, I)), Cap(C(I, J))],
                |b| b.get(I) != b.get(J),
                "equal indices form an S-bend",
            ),
        ]
    })
}

fn th(kind: Kind, strand: Ix, target: u8, h: i64) -> Pat {
    Th(kind, strand, target, (H, h))
}

fn padded(name: &'static str, lhs: Vec<Pat>, rhs: Vec<Pat>, from: (u8, i64), by: i64) -> Rule {
    Rule { name, lhs, rhs, cond: None, shift: Some((from.0, from.1, by)) }
}

/// Thread moves: `L3*` reorder threads, `L4*` pass a thread through a comb
/// symbol unchanged, `L5*` across a cup or cap and `L6*` across a crossing.
/// Padded variants add zero-kind threads and shift the heights above them.
pub fn twisted_rules() -> &'static [Rule] {
    static RULES: OnceLock<Vec<Rule>> = OnceLock::new();
    RULES.get_or_init(|| {
        let sig = Th(SIG, i(0), T, (H, 0));
        let tau = Th(TAU, j(0), S, (W, 0));
        vec![
            rc(
                "L3a",
                vec![sig, tau],
                vec![tau, sig],
                |b| {
                    let (i, j, h, w) = (b.get(I), b.get(J), b.get(H), b.get(W));
                    (i < j && w < h) || (j < i && h < w)
                },
                "the threads would pass through each other",
            ),
            Rule {
                name: "L3b",
                lhs: vec![sig, tau],
                rhs: vec![
                    Th(TAU, j(0), S, (W, 2)),
                    Th(ZERO, i(0), S, (W, 3)),
                    Th(MINUS, i(0), S, (W, 1)),
                    sig,
                    Th(ZERO, i(0), S, (W, 0)),
                    Th(PLUS, i(0), S, (W, 4)),
                ],
                cond: Some((|b| b.get(I) < b.get(J) && b.get(H) < b.get(W), "needs i < j and h < w")),
                shift: Some((W, 1, 4)),
            },
            Rule {
                name: "L3c",
                lhs: vec![sig, tau],
                rhs: vec![
                    Th(MINUS, j(0), T, (H, 4)),
                    Th(ZERO, j(0), T, (H, 0)),
                    tau,
                    Th(PLUS, j(0), T, (H, 1)),
                    Th(ZERO, j(0), T, (H, 3)),
                    Th(SIG, i(0), T, (H, 2)),
                ],
                cond: Some((|b| b.get(J) < b.get(I) && b.get(W) < b.get(H), "needs j < i and w < h")),
                shift: Some((H, 1, 4)),
            },
            rc(
                "L4a",
                vec![Bar(i(0)), th(SIG, j(0), T, 0)],
                vec![th(SIG, j(0), T, 0), Bar(i(0))],
                |b| b.get(I) != b.get(J),
                "the thread is on the bar's strand",
            ),
            rc(
                "L4b",
                vec![X(E1, i(0)), th(SIG, j(0), T, 0)],
                vec![th(SIG, j(0), T, 0), X(E1, i(0))],
                |b| b.get(J) != b.get(I) && b.get(J) != b.get(I) + 1,
                "the thread is on a crossing strand",
            ),
            r("L4c", vec![Cap(i(0)), th(SIG, j(0), T, 0)], vec![th(SIG, C(J, I), T, 0), Cap(i(0))]),
            r("L4d", vec![Cup(i(0)), th(SIG, C(J, I), T, 0)], vec![th(SIG, j(0), T, 0), Cup(i(0))]),
            r("L5a", vec![th(MINUS, i(0), T, 0), Cap(i(0))], vec![th(ZERO, i(1), T, 0), Cap(i(0))]),
            r("L5b", vec![th(ZERO, i(0), T, 0), Cap(i(0))], vec![th(PLUS, i(1), T, 0), Cap(i(0))]),
            r("L5c", vec![Cup(i(0)), th(PLUS, i(0), T, 0)], vec![Cup(i(0)), th(ZERO, i(1), T, 0)]),
            r("L5d", vec![Cup(i(0)), th(ZERO, i(0), T, 0)], vec![Cup(i(0)), th(MINUS, i(1), T, 0)]),
            padded(
                "L5e",
                vec![th(PLUS, i(0), T, 0), Cap(i(0))],
                vec![th(PLUS, i(1), T, 0), th(ZERO, i(1), T, 2), th(ZERO, i(1), T, 1), Cap(i(0))],
                (H, 1),
                2,
            ),
            padded(
                "L5f",
                vec![Cup(i(0)), th(MINUS, i(0), T, 0)],
                vec![Cup(i(0)), th(ZERO, i(1), T, 1), th(ZERO, i(1), T, 2), th(MINUS, i(1), T, 0)],
                (H, 1),
                2,
            ),
            padded(
                "L5g",
                vec![th(MINUS, i(1), T, 0), Cap(i(0))],
                vec![th(ZERO, i(0), T, 1), th(ZERO, i(0), T, 2), th(MINUS, i(0), T, 0), Cap(i(0))],
                (H, 1),
                2,
            ),
            padded(
                "L5h",
                vec![Cup(i(0)), th(PLUS, i(1), T, 0)],
                vec![Cup(i(0)), th(PLUS, i(0), T, 0), th(ZERO, i(0), T, 2), th(ZERO, i(0), T, 1)],
                (H, 1),
                2,
            ),
            r("L6a", vec![th(SIG, i(0), T, 0), X(POS, i(0))], vec![X(POS, i(0)), th(SIG, i(1), T, 0)]),
            r("L6b", vec![th(SIG, i(1), T, 0), X(NEG, i(0))], vec![X(NEG, i(0)), th(SIG, i(0), T, 0)]),
            padded(
                "L6c",
                vec![th(SIG, i(1), T, 0), X(POS, i(0))],
                vec![X(POS, i(0)), th(SIG, i(0), T, 1), th(ZERO, i(1), T, 0), th(PLUS, i(1), T, 2)],
                (H, 1),
                2,
            ),
            padded(
                "L6d",
                vec![X(POS, i(0)), th(SIG, i(0), T, 0)],
                vec![th(SIG, i(1), T, 1), th(ZERO, i(0), T, 2), th(MINUS, i(0), T, 0), X(POS, i(0))],
                (H, 1),
                2,
            ),
            padded(
                "L6e",
                vec![X(NEG, i(0)), th(SIG, i(1), T, 0)],
                vec![th(MINUS, i(1), T, 2), th(ZERO, i(1), T, 0), th(SIG, i(0), T, 1), X(NEG, i(0))],
                (H, 1),
                2,
            ),
            padded(
                "L6f",
                vec![th(SIG, i(0), T, 0), X(NEG, i(0))],
                vec![X(NEG, i(0)), th(PLUS, i(0), T, 0), th(ZERO, i(0), T, 2), th(SIG, i(1), T, 1)],
                (H, 1),
                2,
            ),
        ]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> CombWord {
        CombWord::parse(s).unwrap()
    }

    #[test]
    fn single_moves() {
        let f3 = rule("F3").unwrap();
        assert_eq!(comb_move(&w("⊂_1 ⊃_2 |_1"), f3, Direction::Forward, 0, None).unwrap(), w("|_1"));
        let back = comb_move(&w("|_1"), f3, Direction::Backward, 0, Some(1)).unwrap();
        assert_eq!(back, w("⊂_1 ⊃_2 |_1"));
        assert!(comb_move(&w("|_1"), f3, Direction::Backward, 0, None).is_err());
        let f8 = rule("F8").unwrap();
        let fig = w("⊂_2 x_1^{-1} x_2^{-1} |_3 x_2 |_1 ⊃_2");
        assert_eq!(
            comb_move(&fig, f8, Direction::Forward, 3, None).unwrap(),
            w("⊂_2 x_1^{-1} x_2^{-1} x_2 |_2 |_1 ⊃_2")
        );
        assert!(matches!(comb_move(&fig, f8, Direction::Forward, 2, None), Err(Error::NoMatch { .. })));
    }

    #[test]
    fn conditional_indices() {
        let f21 = rule("F21").unwrap();
        // ⊃_1 ⊂_3 against ⊂_3 ⊃_1 shifted appropriately
        let a = [CombSymbol::Cap(1), CombSymbol::Cup(3)];
        let out = apply_rule(&a, f21, Direction::Forward, 0, None).unwrap();
        assert_eq!(out.symbols, vec![CombSymbol::Cup(5), CombSymbol::Cap(1)]);
        let back = apply_rule(&out.symbols, f21, Direction::Backward, 0, None).unwrap();
        assert_eq!(back.symbols, a);
        let s = [CombSymbol::Cap(2), CombSymbol::Cup(2)];
        assert!(matches!(apply_rule(&s, f21, Direction::Forward, 0, None), Err(Error::SideCondition { .. })));
    }

    #[test]
    fn padded_shift_inverts() {
        let l = TwistedLoom::parse("|_1 |_1 +_{1,1}^1 −_{1,2}^2").unwrap();
        let l3b = rule("L3b").unwrap();
        // same strand, so no plain or padded reorder applies
        assert!(twisted_rewrite(&l, l3b, Direction::Forward, 2).is_err());
        let t = TwistedLoom::parse("⊂_2 |_2 +_{1,1}^1 0_{2,1}^3 x_1 −_{1,1}^2 ⊃_2").unwrap();
        let out = twisted_rewrite(&t, rule("L6a").unwrap(), Direction::Forward, 2);
        assert!(out.is_err());
        let out = twisted_rewrite(&t, rule("L6c").unwrap(), Direction::Forward, 3).unwrap();
        assert_eq!(out.threads(), 5);
        assert_eq!(twisted_rewrite(&out, rule("L6c").unwrap(), Direction::Backward, 3).unwrap(), t);
    }
}
