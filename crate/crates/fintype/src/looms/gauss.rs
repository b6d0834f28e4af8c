//! Planar diagrams of loom knots as Gauss codes.
//!
//! The knot is drawn as an integer polyline and crossings are found by
//! segment intersection, so every emitted code is realizable. Symbol `k`
//! owns the columns `100k..100k+99`. The base circle runs left to right
//! along `y = 0`, up the right side, and back along `y = top`.
//!
//! - A bar is a finger from the bottom through the top arc, up at `+40`
//!   and down at `+60`; it clasps the top arc with its sign.
//! - A thread leaves the bottom at `+40`, runs to its target finger at
//!   level `1000h ± 100`, turns just past it, and comes back down at `+60`.
//!   Kinked threads swap the two verticals near the bottom with one
//!   crossing.

use std::fmt;

use super::{Loom, Sign, Symbol, ThreadKind};
use crate::{Error, Result};

/// One visit to a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussEntry {
    pub label: u32,
    pub over: bool,
    pub sign: i8,
}

/// A cyclic sequence of crossing visits. Each label appears twice, once
/// over and once under, with the same sign.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussCode {
    entries: Vec<GaussEntry>,
}

impl GaussCode {
    pub fn new(entries: Vec<GaussEntry>) -> Result<GaussCode> {
        let mut seen: std::collections::HashMap<u32, (bool, i8)> = Default::default();
        let mut done = std::collections::HashSet::new();
        for e in &entries {
            if e.sign.abs() != 1 {
                return Err(Error::invalid("Gauss code", format!("crossing {} has sign {}", e.label, e.sign)));
            }
            match seen.remove(&e.label) {
                None if !done.contains(&e.label) => {
                    seen.insert(e.label, (e.over, e.sign));
                }
                None => return Err(Error::invalid("Gauss code", format!("crossing {} visited 3 times", e.label))),
                Some((over, sign)) => {
                    if over == e.over || sign != e.sign {
                        return Err(Error::invalid("Gauss code", format!("crossing {} is inconsistent", e.label)));
                    }
                    done.insert(e.label);
                }
            }
        }
        if let Some(l) = seen.keys().min() {
            return Err(Error::invalid("Gauss code", format!("crossing {l} visited once")));
        }
        Ok(GaussCode { entries })
    }

    pub fn entries(&self) -> &[GaussEntry] {
        &self.entries
    }

    pub fn crossings(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of the crossing signs.
    pub fn writhe(&self) -> i64 {
        self.entries.iter().filter(|e| e.over).map(|e| e.sign as i64).sum()
    }

    /// Labels renumbered from 1 in visiting order, starting at the least
    /// rotation.
    pub fn canonical(&self) -> GaussCode {
        let len = self.entries.len();
        let mut best: Option<Vec<GaussEntry>> = None;
        for r in 0..len {
            let mut map = std::collections::HashMap::new();
            let rotated: Vec<GaussEntry> = (0..len)
                .map(|i| {
                    let e = self.entries[(r + i) % len];
                    let next = map.len() as u32 + 1;
                    GaussEntry { label: *map.entry(e.label).or_insert(next), ..e }
                })
                .collect();
            if best.as_ref().is_none_or(|b| rotated < *b) {
                best = Some(rotated);
            }
        }
        GaussCode { entries: best.unwrap_or_default() }
    }

    pub fn parse(text: &str) -> Result<GaussCode> {
        let entries = text
            .split_whitespace()
            .map(|tok| {
                let bad = || Error::Parse(format!("Gauss code entry {tok:?}"));
                let over = match tok.chars().next() {
                    Some('O') => true,
                    Some('U') => false,
                    _ => return Err(bad()),
                };
                let sign = match tok.chars().last() {
                    Some('+') => 1,
                    Some('-') => -1,
                    _ => return Err(bad()),
                };
                let label = tok.get(1..tok.len() - 1).and_then(|s| s.parse().ok()).ok_or_else(bad)?;
                Ok(GaussEntry { label, over, sign })
            })
            .collect::<Result<_>>()?;
        GaussCode::new(entries)
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let s = if e.sign > 0 { '+' } else { '-' };
            write!(f, "{}{}{s}", if e.over { 'O' } else { 'U' }, e.label)?;
        }
        Ok(())
    }
}

/// Greedy Reidemeister simplification. Removes a label whose two visits
/// are cyclically adjacent (a kink), or two labels visited consecutively
/// twice, over both times on one strand, with opposite signs (a bigon).
/// Kinks go first. The result is canonical.
pub fn simplify(code: &GaussCode) -> GaussCode {
    let mut entries = code.canonical().entries;
    'outer: loop {
        let len = entries.len();
        for i in 0..len {
            let j = (i + 1) % len;
            if len >= 2 && entries[i].label == entries[j].label {
                let label = entries[i].label;
                entries.retain(|e| e.label != label);
                continue 'outer;
            }
        }
        for i in 0..len {
            let (a, b) = (entries[i], entries[(i + 1) % len]);
            if a.label == b.label || a.over != b.over || a.sign == b.sign {
                continue;
            }
            let pair = |x: GaussEntry, y: GaussEntry| {
                (x.label == a.label && y.label == b.label) || (x.label == b.label && y.label == a.label)
            };
            let other = (0..len).find(|&k| {
                let (x, y) = (entries[k], entries[(k + 1) % len]);
                k != i && pair(x, y) && x.over != a.over
            });
            if other.is_some() {
                entries.retain(|e| e.label != a.label && e.label != b.label);
                continue 'outer;
            }
        }
        break;
    }
    GaussCode { entries }.canonical()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    Circle,
    FingerUp(usize),
    FingerDown(usize),
    Tip,
    /// Vertical of the thread at word position `k`.
    Leg(usize),
    Out(usize),
    Return(usize),
    Turn,
    Kink(usize),
}

struct Seg {
    a: (i64, i64),
    b: (i64, i64),
    part: Part,
}

impl Seg {
    fn dir(&self) -> (i64, i64) {
        ((self.b.0 - self.a.0).signum(), (self.b.1 - self.a.1).signum())
    }

    fn vertical(&self) -> bool {
        self.a.0 == self.b.0
    }
}

/// Proper crossing of an axis-parallel pair, with the distance along each.
fn cross(s: &Seg, t: &Seg) -> Option<(i64, i64)> {
    let (v, h) = match (s.vertical(), t.vertical()) {
        (true, false) => (s, t),
        (false, true) => (t, s),
        _ => return None,
    };
    let (x, y) = (v.a.0, h.a.1);
    let inside = |p: i64, q: i64, z: i64| p.min(q) < z && z < p.max(q);
    if !(inside(h.a.0, h.b.0, x) && inside(v.a.1, v.b.1, y)) {
        return None;
    }
    let along = |seg: &Seg| (seg.a.0 - x).abs() + (seg.a.1 - y).abs();
    Some((along(s), along(t)))
}

fn polyline(l: &Loom) -> Vec<Seg> {
    let syms = l.symbols();
    let m = l.threads() as i64;
    let top = 1000 * (m + 2);
    let bar_col: Vec<i64> =
        (0..syms.len()).filter(|&k| matches!(syms[k], Symbol::Bar(_))).map(|k| k as i64).collect();
    let mut pts: Vec<((i64, i64), Part)> = vec![((-50, 0), Part::Circle)];
    for (k, s) in syms.iter().enumerate() {
        let x = 100 * k as i64;
        match *s {
            Symbol::Bar(_) => pts.extend([
                ((x + 40, 0), Part::FingerUp(k)),
                ((x + 40, top + 500), Part::Tip),
                ((x + 60, top + 500), Part::FingerDown(k)),
                ((x + 60, 0), Part::Circle),
            ]),
            Symbol::Thread { kind, target, height } => {
                let c = 100 * bar_col[target - 1];
                let turn = if c > x { c + 80 } else { c + 20 };
                let kinked = kind != ThreadKind::Zero;
                let (up, down) = if kinked { (x + 70, x + 30) } else { (x + 40, x + 60) };
                let h = 1000 * height as i64;
                let (out, ret) = if (up - turn).abs() > (down - turn).abs() { (h + 100, h - 100) } else { (h - 100, h + 100) };
                if kinked {
                    pts.extend([((x + 40, 0), Part::Kink(k)), ((x + 40, 10), Part::Kink(k))]);
                }
                pts.extend([
                    ((up, if kinked { 10 } else { 0 }), Part::Leg(k)),
                    ((up, out), Part::Out(k)),
                    ((turn, out), Part::Turn),
                    ((turn, ret), Part::Return(k)),
                    ((down, ret), Part::Leg(k)),
                ]);
                if kinked {
                    pts.extend([((x + 30, 20), Part::Kink(k)), ((x + 60, 20), Part::Kink(k))]);
                }
                pts.push(((x + 60, 0), Part::Circle));
            }
        }
    }
    let right = 100 * syms.len() as i64;
    pts.extend([((right, 0), Part::Circle), ((right, top), Part::Circle), ((-50, top), Part::Circle)]);
    let n = pts.len();
    (0..n).map(|i| Seg { a: pts[i].0, b: pts[(i + 1) % n].0, part: pts[i].1 }).collect()
}

fn thread_height(l: &Loom, k: usize) -> usize {
    match l.symbols()[k] {
        Symbol::Thread { height, .. } => height,
        Symbol::Bar(_) => unreachable!("legs belong to threads"),
    }
}

/// Which of two crossing segments passes over.
fn first_is_over(l: &Loom, s: &Seg, t: &Seg) -> bool {
    use Part::*;
    let target_of = |k: usize| match l.symbols()[k] {
        Symbol::Thread { target, .. } => target,
        Symbol::Bar(_) => unreachable!(),
    };
    let bar_index = |k: usize| l.symbols()[..=k].iter().filter(|s| matches!(s, Symbol::Bar(_))).count();
    match (s.part, t.part) {
        (FingerUp(k), Circle) => l.symbols()[k] == Symbol::Bar(Sign::Plus),
        (FingerDown(k), Circle) => l.symbols()[k] == Symbol::Bar(Sign::Minus),
        (Circle, FingerUp(_) | FingerDown(_)) => !first_is_over(l, t, s),
        (Out(k) | Return(k), FingerUp(b) | FingerDown(b)) => {
            !(bar_index(b) == target_of(k) && matches!(s.part, Return(_)))
        }
        (FingerUp(_) | FingerDown(_), Out(_) | Return(_)) => !first_is_over(l, t, s),
        (Out(k) | Return(k), Leg(j)) => thread_height(l, k) > thread_height(l, j),
        (Leg(_), Out(_) | Return(_)) => !first_is_over(l, t, s),
        (Kink(k), _) | (_, Kink(k)) => {
            // choose the over strand so the crossing sign is the twist
            let want = match l.symbols()[k] {
                Symbol::Thread { kind: ThreadKind::Plus, .. } => 1,
                _ => -1,
            };
            sign_if_over(s, t) == want
        }
        (a, b) => unreachable!("unexpected crossing {a:?} / {b:?}"),
    }
}

fn sign_if_over(over: &Seg, under: &Seg) -> i8 {
    let (o, u) = (over.dir(), under.dir());
    (o.0 * u.1 - o.1 * u.0).signum() as i8
}

/// The Gauss code of the knot drawn from `l`, read from the left end of
/// the base circle.
pub fn loom_to_gauss_code(l: &Loom) -> GaussCode {
    let segs = polyline(l);
    let mut visits: Vec<((usize, i64), GaussEntry)> = Vec::new();
    let mut label = 0;
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let Some((di, dj)) = cross(&segs[i], &segs[j]) else { continue };
            let over_i = first_is_over(l, &segs[i], &segs[j]);
            let sign = if over_i { sign_if_over(&segs[i], &segs[j]) } else { sign_if_over(&segs[j], &segs[i]) };
            label += 1;
            visits.push(((i, di), GaussEntry { label, over: over_i, sign }));
            visits.push(((j, dj), GaussEntry { label, over: !over_i, sign }));
        }
    }
    visits.sort_by_key(|v| v.0);
    let code = GaussCode { entries: visits.into_iter().map(|v| v.1).collect() };
    debug_assert!(GaussCode::new(code.entries.clone()).is_ok());
    code.canonical_from_start()
}

impl GaussCode {
    /// Relabels in visiting order without rotating.
    fn canonical_from_start(&self) -> GaussCode {
        let mut map = std::collections::HashMap::new();
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let next = map.len() as u32 + 1;
                GaussEntry { label: *map.entry(e.label).or_insert(next), ..*e }
            })
            .collect();
        GaussCode { entries }
    }
}
