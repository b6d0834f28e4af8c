//! Looms: words of signed bars and targeted, height-ordered threads that
//! encode knots for the delta-move theory.

mod gauss;

use std::fmt;
use std::str::FromStr;

use crate::algebra::{FormalSum, Key};
use crate::diagrams::{goussarov_s, DiagramKind};
use crate::{Error, Result};

pub use gauss::{loom_to_gauss_code, simplify, GaussCode, GaussEntry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '−',
        }
    }
}

/// The twist of a thread's loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ThreadKind {
    Plus,
    Minus,
    Zero,
}

impl ThreadKind {
    pub const ALL: [ThreadKind; 3] = [ThreadKind::Plus, ThreadKind::Minus, ThreadKind::Zero];

    fn symbol(self) -> char {
        match self {
            ThreadKind::Plus => '+',
            ThreadKind::Minus => '−',
            ThreadKind::Zero => '0',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Bar(Sign),
    /// `target` is the 1-based index of a bar, `height` the 1-based rank
    /// among threads.
    Thread { kind: ThreadKind, target: usize, height: usize },
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Bar(s) => write!(f, "|_{}", s.symbol()),
            Symbol::Thread { kind, target, height } => write!(f, "{}_{target}^{height}", kind.symbol()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A valid loom word.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Loom {
    symbols: Vec<Symbol>,
}

/// Checks that every target names an existing bar and that the heights are
/// exactly `1..=m` for `m` threads.
pub fn validate_loom(symbols: Vec<Symbol>) -> Result<Loom> {
    let bars = symbols.iter().filter(|s| matches!(s, Symbol::Bar(_))).count();
    let threads = symbols.len() - bars;
    let mut seen = vec![false; threads];
    for s in &symbols {
        if let Symbol::Thread { target, height, .. } = *s {
            if target == 0 || target > bars {
                return Err(Error::invalid("loom", format!("{s} targets bar {target} but there are {bars} bars")));
            }
            if height == 0 || height > threads {
                return Err(Error::invalid("loom", format!("{s} has height {height} with {threads} threads")));
            }
            if std::mem::replace(&mut seen[height - 1], true) {
                return Err(Error::invalid("loom", format!("height {height} used twice")));
            }
        }
    }
    Ok(Loom { symbols })
}

impl Loom {
    pub fn empty() -> Loom {
        Loom::default()
    }

    pub fn parse(text: &str) -> Result<Loom> {
        validate_loom(parse_symbols(text)?)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn bars(&self) -> usize {
        self.symbols.iter().filter(|s| matches!(s, Symbol::Bar(_))).count()
    }

    pub fn threads(&self) -> usize {
        self.symbols.len() - self.bars()
    }

    /// Positions of the thread symbols, in word order.
    pub fn thread_positions(&self) -> Vec<usize> {
        (0..self.symbols.len()).filter(|&i| matches!(self.symbols[i], Symbol::Thread { .. })).collect()
    }

    fn targeted(&self, bar: usize) -> bool {
        self.symbols.iter().any(|s| matches!(s, Symbol::Thread { target, .. } if *target == bar))
    }

    fn shift_targets(&mut self, by: isize) {
        for s in &mut self.symbols {
            if let Symbol::Thread { target, .. } = s {
                *target = target.checked_add_signed(by).expect("target stays positive");
            }
        }
    }

    /// Removes the threads at the given word positions and closes up the
    /// heights.
    pub fn delete_threads(&self, positions: &[usize]) -> Result<Loom> {
        let mut gone = Vec::new();
        for &p in positions {
            match self.symbols.get(p) {
                Some(Symbol::Thread { height, .. }) => gone.push(*height),
                Some(Symbol::Bar(_)) => {
                    return Err(Error::invalid("thread deletion", format!("position {p} is a bar")));
                }
                None => return Err(Error::invalid("thread deletion", format!("position {p} out of range"))),
            }
        }
        let symbols = self
            .symbols
            .iter()
            .enumerate()
            .filter(|(i, _)| !positions.contains(i))
            .map(|(_, s)| match *s {
                Symbol::Thread { kind, target, height } => {
                    Symbol::Thread { kind, target, height: height - gone.iter().filter(|&&g| g < height).count() }
                }
                bar => bar,
            })
            .collect();
        Ok(Loom { symbols })
    }

    /// Adds a bar on one side; on the left every target moves up by one.
    pub fn stabilize(&self, side: Side, sign: Sign) -> Loom {
        let mut out = self.clone();
        match side {
            Side::Right => out.symbols.push(Symbol::Bar(sign)),
            Side::Left => {
                out.shift_targets(1);
                out.symbols.insert(0, Symbol::Bar(sign));
            }
        }
        out
    }

    /// Whether the outermost symbol on `side` is a bar no thread targets.
    pub fn can_destabilize(&self, side: Side) -> bool {
        match side {
            Side::Left => matches!(self.symbols.first(), Some(Symbol::Bar(_))) && !self.targeted(1),
            Side::Right => matches!(self.symbols.last(), Some(Symbol::Bar(_))) && !self.targeted(self.bars()),
        }
    }

    pub fn destabilize(&self, side: Side) -> Result<Loom> {
        if !self.can_destabilize(side) {
            return Err(Error::invalid("destabilization", format!("no free bar on the {side:?} of {self}")));
        }
        let mut out = self.clone();
        match side {
            Side::Right => {
                out.symbols.pop();
            }
            Side::Left => {
                out.symbols.remove(0);
                out.shift_targets(-1);
            }
        }
        Ok(out)
    }

    /// Strips free boundary bars until none is left. This picks one
    /// representative per stabilization class.
    pub fn canonical_form(&self) -> Loom {
        let mut out = self.clone();
        loop {
            if out.can_destabilize(Side::Right) {
                out.symbols.pop();
            } else if out.can_destabilize(Side::Left) {
                out.symbols.remove(0);
                out.shift_targets(-1);
            } else {
                return out;
            }
        }
    }

    pub fn key(&self) -> Key {
        Key::from(self.to_string())
    }

    /// The usual rendering with ASCII `-` for minus signs.
    pub fn to_ascii(&self) -> String {
        self.to_string().replace('−', "-")
    }
}

impl fmt::Display for Loom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Loom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Loom> {
        Loom::parse(s)
    }
}

fn parse_symbols(text: &str) -> Result<Vec<Symbol>> {
    let bad = |reason: String| Error::Parse(format!("loom {text:?}: {reason}"));
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let number = |i: &mut usize| -> Result<usize> {
        let braced = chars.get(*i) == Some(&'{');
        if braced {
            *i += 1;
        }
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        let digits: String = chars[start..*i].iter().collect();
        let n = digits.parse().map_err(|_| bad(format!("expected a number at {start}")))?;
        if braced {
            if chars.get(*i) != Some(&'}') {
                return Err(bad("unclosed brace".into()));
            }
            *i += 1;
        }
        Ok(n)
    };
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        i += 1;
        match c {
            c if c.is_whitespace() => {}
            '|' => {
                if chars.get(i) == Some(&'_') {
                    i += 1;
                }
                let sign = match chars.get(i) {
                    Some('+') => Sign::Plus,
                    Some('-' | '−') => Sign::Minus,
                    _ => return Err(bad(format!("bar at {} without a sign", i - 1))),
                };
                i += 1;
                out.push(Symbol::Bar(sign));
            }
            '+' | '-' | '−' | '0' => {
                let kind = match c {
                    '+' => ThreadKind::Plus,
                    '0' => ThreadKind::Zero,
                    _ => ThreadKind::Minus,
                };
                if chars.get(i) != Some(&'_') {
                    return Err(bad(format!("expected '_' after {c:?}")));
                }
                i += 1;
                let target = number(&mut i)?;
                if chars.get(i) != Some(&'^') {
                    return Err(bad(format!("expected '^' at {i}")));
                }
                i += 1;
                let height = number(&mut i)?;
                out.push(Symbol::Thread { kind, target, height });
            }
            _ => return Err(bad(format!("unexpected {c:?}"))),
        }
    }
    Ok(out)
}

/// Most loom words `enumerate_looms` will materialize.
pub const ENUMERATION_CAP: u128 = 5_000_000;

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of loom words with exactly `t` threads and `b` bars:
/// placements of the threads, then `3b` kind-and-target choices per
/// thread, the height order, and the bar signs.
pub fn count_looms(t: usize, b: usize) -> u128 {
    let (t, b) = (t as u128, b as u128);
    let factorial: u128 = (1..=t).product();
    binomial(t + b, t) * (3 * b).pow(t as u32) * factorial * 2u128.pow(b as u32)
}

/// Every loom word with exactly `t` threads and `b` bars. Ordered by
/// thread placement, then bar signs, then kinds, targets and heights.
pub fn enumerate_looms(t: usize, b: usize) -> Result<Vec<Loom>> {
    let total = count_looms(t, b);
    if total > ENUMERATION_CAP {
        return Err(Error::Cap { what: format!("{total} looms with {t} threads and {b} bars"), cap: ENUMERATION_CAP });
    }
    let mut out = Vec::with_capacity(total as usize);
    let len = t + b;
    let mut heights: Vec<Vec<usize>> = Vec::new();
    permutations(&mut (1..=t).collect(), 0, &mut heights);
    crate::diagrams::for_each_subset(len, t, |places| {
        if places.len() != t {
            return;
        }
        for signs in 0..1usize << b {
            for choice in 0..(3 * b).pow(t as u32) {
                for hs in &heights {
                    let mut symbols = Vec::with_capacity(len);
                    let (mut bar, mut thread, mut c) = (0, 0, choice);
                    for pos in 0..len {
                        if places.contains(&pos) {
                            let (kind, target) = (ThreadKind::ALL[c % 3], (c / 3) % b + 1);
                            c /= 3 * b;
                            symbols.push(Symbol::Thread { kind, target, height: hs[thread] });
                            thread += 1;
                        } else {
                            let sign = if signs >> bar & 1 == 0 { Sign::Plus } else { Sign::Minus };
                            symbols.push(Symbol::Bar(sign));
                            bar += 1;
                        }
                    }
                    out.push(Loom { symbols });
                }
            }
        }
    });
    Ok(out)
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Canonical looms with at most `n` threads and at most `n` bars. These
/// generate the rank-`n` delta-move group. Deterministic order.
#[allow(non_snake_case)]
pub fn generators_Un_KDelta(n: usize) -> Result<Vec<Loom>> {
    let mut total = 0u128;
    for t in 0..=n {
        for b in 0..=n {
            total += count_looms(t, b);
        }
    }
    if total > ENUMERATION_CAP {
        return Err(Error::Cap { what: format!("{total} looms of rank {n}"), cap: ENUMERATION_CAP });
    }
    let mut set = std::collections::BTreeSet::new();
    for t in 0..=n {
        for b in 0..=n {
            for l in enumerate_looms(t, b)? {
                set.insert(l.canonical_form());
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// Looms up to stabilization as a diagram category; the threads are the
/// underlying set, in word order.
#[derive(Clone, Copy, Debug, Default)]
pub struct LoomKind;

impl DiagramKind for LoomKind {
    type Diagram = Loom;

    fn order(&self, d: &Loom) -> usize {
        d.threads()
    }

    fn subdiagram(&self, d: &Loom, keep: &[usize]) -> Loom {
        let positions = d.thread_positions();
        let drop: Vec<usize> =
            positions.iter().enumerate().filter(|(i, _)| !keep.contains(i)).map(|(_, &p)| p).collect();
        d.delete_threads(&drop).expect("positions are threads").canonical_form()
    }

    fn canonical(&self, d: &Loom) -> Key {
        d.canonical_form().key()
    }

    fn from_canonical(&self, key: &Key) -> Result<Loom> {
        let text = std::str::from_utf8(key.as_bytes()).map_err(|_| Error::Parse(format!("loom key {key}")))?;
        Loom::parse(text)
    }
}

/// Sum of the canonical subdiagrams of `l` with at most `n` threads.
pub fn loom_subdiagram_sum(l: &Loom, n: usize) -> FormalSum {
    goussarov_s(&LoomKind, l, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "−_2^1 +_2^4 |_+ 0_2^3 −_1^2 |_− 0_1^5";

    #[test]
    fn parse_and_print() {
        let l = Loom::parse(SAMPLE).unwrap();
        assert_eq!(l.to_string(), SAMPLE);
        assert_eq!(Loom::parse("-_2^1 +_2^4 |+ 0_2^3 -_1^2 |- 0_1^5").unwrap(), l);
        assert_eq!(l.to_ascii(), "-_2^1 +_2^4 |_+ 0_2^3 -_1^2 |_- 0_1^5");
        assert_eq!((l.bars(), l.threads()), (2, 5));
        assert_eq!(Loom::parse("").unwrap(), Loom::empty());
    }

    #[test]
    fn invalid_looms() {
        assert!(Loom::parse("0_3^1 |_+").is_err());
        assert!(Loom::parse("0_1^1 0_1^1 |_+").is_err());
        assert!(Loom::parse("0_1^2 |_+").is_err());
        assert!(Loom::parse("0_1 |_+").is_err());
        assert!(Loom::parse("|").is_err());
    }

    #[test]
    fn deletion() {
        let l = Loom::parse(SAMPLE).unwrap();
        assert_eq!(l.delete_threads(&[3]).unwrap().to_string(), "−_2^1 +_2^3 |_+ −_1^2 |_− 0_1^4");
        assert_eq!(l.delete_threads(&[]).unwrap(), l);
        assert_eq!(l.delete_threads(&l.thread_positions()).unwrap().to_string(), "|_+ |_−");
        assert!(l.delete_threads(&[2]).is_err());
    }

    #[test]
    fn stabilization() {
        let l = Loom::parse("0_1^1 |_− 0_1^2").unwrap();
        let r = l.stabilize(Side::Right, Sign::Plus);
        assert_eq!(r.to_string(), "0_1^1 |_− 0_1^2 |_+");
        assert_eq!(r.destabilize(Side::Right).unwrap(), l);
        assert_eq!(r.canonical_form(), l);
        let m = Loom::parse("0_1^1 |_+").unwrap().stabilize(Side::Left, Sign::Minus);
        assert_eq!(m.to_string(), "|_− 0_2^1 |_+");
        assert!(l.destabilize(Side::Left).is_err());
        assert!(Loom::parse("|_+ 0_1^1").unwrap().destabilize(Side::Left).is_err());
        assert_eq!(Loom::parse("|_+ |_−").unwrap().canonical_form(), Loom::empty());
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_looms(2, 2), 1728);
        assert_eq!(count_looms(0, 1), 2);
        assert_eq!(count_looms(1, 1), 12);
        assert_eq!(count_looms(0, 0), 1);
        assert_eq!(count_looms(1, 0), 0);
        assert_eq!(enumerate_looms(1, 1).unwrap().len(), 12);
    }

    #[test]
    fn low_rank_generators() {
        assert_eq!(generators_Un_KDelta(0).unwrap(), vec![Loom::empty()]);
        let g1: Vec<String> = generators_Un_KDelta(1).unwrap().iter().map(|l| l.to_string()).collect();
        assert!(g1.contains(&String::new()));
        assert!(g1.contains(&"0_1^1 |_+".to_string()));
        assert!(!g1.contains(&"|_+".to_string()));
    }
}
