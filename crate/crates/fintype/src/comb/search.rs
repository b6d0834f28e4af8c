use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet, VecDeque};

use super::rules::{apply_rule, comb_rules, rule, twisted_rules, Direction};
use super::{validate_comb, validate_twisted, CombSymbol, CombWord, TwistedLoom};
use crate::{Error, Result};

pub const DEFAULT_DEPTH: usize = 25;

/// Searches give up after this many distinct words.
const STATE_CAP: usize = 400_000;
/// Expansion budget for moving threads out of one comb move.
const SHUTTLE_CAP: usize = 20_000;

/// One comb move: a rule from [`comb_rules`] applied at a symbol position.
/// `free` fixes the index of a rule that inserts from nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombMove {
    pub rule: &'static str,
    pub dir: Direction,
    pub position: usize,
    pub free: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A path of moves ending in the trivial word.
    Found(Vec<CombMove>),
    /// Neither found nor ruled out within the bounds.
    Inconclusive { explored: usize },
}

/// Breadth-first search for a shortest path to the trivial word using only
/// moves that do not lengthen the word. Such paths need not exist for every
/// reducible word, so a miss is reported as inconclusive.
pub fn comb_reduce_search(w: &CombWord, max_depth: usize) -> SearchOutcome {
    if w.is_trivial() {
        return SearchOutcome::Found(Vec::new());
    }
    let mut parent: HashMap<CombWord, Option<(CombWord, CombMove)>> = HashMap::new();
    parent.insert(w.clone(), None);
    let mut queue = VecDeque::from([(w.clone(), 0usize)]);
    while let Some((cur, depth)) = queue.pop_front() {
        if depth == max_depth {
            continue;
        }
        for r in comb_rules() {
            for dir in [Direction::Forward, Direction::Backward] {
                if r.growth(dir) > 0 || r.is_empty(dir) {
                    continue;
                }
                for position in 0..cur.symbols().len() {
                    let Ok(a) = apply_rule(cur.symbols(), r, dir, position, None) else { continue };
                    let Ok(next) = validate_comb(a.symbols) else { continue };
                    if parent.contains_key(&next) {
                        continue;
                    }
                    let mv = CombMove { rule: r.name, dir, position, free: None };
                    parent.insert(next.clone(), Some((cur.clone(), mv)));
                    if next.is_trivial() {
                        let mut path = Vec::new();
                        let mut at = next;
                        while let Some(Some((prev, mv))) = parent.get(&at) {
                            path.push(mv.clone());
                            at = prev.clone();
                        }
                        path.reverse();
                        return SearchOutcome::Found(path);
                    }
                    if parent.len() >= STATE_CAP {
                        return SearchOutcome::Inconclusive { explored: parent.len() };
                    }
                    queue.push_back((next, depth + 1));
                }
            }
        }
    }
    SearchOutcome::Inconclusive { explored: parent.len() }
}

fn comb_positions(symbols: &[CombSymbol]) -> Vec<usize> {
    (0..symbols.len()).filter(|&k| !symbols[k].is_thread()).collect()
}

/// Sum over threads strictly inside the comb span `[first, first + len)` of
/// the number of span symbols separating the thread from the nearer end.
fn trapped(symbols: &[CombSymbol], first: usize, len: usize) -> usize {
    let mut comb = 0usize;
    let mut cost = 0;
    for s in symbols {
        if s.is_thread() {
            if comb > first && comb < first + len {
                let left = comb - first;
                cost += left.min(first + len - comb);
            }
        } else {
            comb += 1;
        }
    }
    cost
}

/// Moves every thread out of the comb span with twisted rewrites only.
fn shuttle(symbols: Vec<CombSymbol>, first: usize, len: usize) -> Option<Vec<CombSymbol>> {
    let mut seen = HashSet::new();
    let mut heap = BinaryHeap::new();
    let mut store = Vec::new();
    let push = |s: Vec<CombSymbol>, heap: &mut BinaryHeap<_>, store: &mut Vec<Vec<CombSymbol>>| {
        let key = (trapped(&s, first, len), s.len(), store.len());
        store.push(s);
        heap.push(Reverse(key));
    };
    seen.insert(symbols.clone());
    push(symbols, &mut heap, &mut store);
    let mut expansions = 0;
    while let Some(Reverse((cost, _, id))) = heap.pop() {
        let cur = std::mem::take(&mut store[id]);
        if cost == 0 {
            return Some(cur);
        }
        expansions += 1;
        if expansions > SHUTTLE_CAP {
            return None;
        }
        let comb = comb_positions(&cur);
        let lo = comb[first].saturating_sub(1);
        let hi = comb[first + len - 1] + 1;
        for r in twisted_rules() {
            for dir in [Direction::Forward, Direction::Backward] {
                let l = r.len(dir);
                for position in lo.saturating_sub(l - 1)..=hi.min(cur.len().saturating_sub(l)) {
                    let Ok(a) = apply_rule(&cur, r, dir, position, None) else { continue };
                    if validate_twisted(a.symbols.clone()).is_err() || !seen.insert(a.symbols.clone()) {
                        continue;
                    }
                    push(a.symbols, &mut heap, &mut store);
                }
            }
        }
    }
    None
}

/// Replays a comb reduction path on a twisted loom. Before each move the
/// threads inside the move's span are pushed out with twisted rewrites, so
/// the move applies to contiguous comb symbols.
pub fn localize_and_reduce(l: &TwistedLoom, path: &[CombMove]) -> Result<TwistedLoom> {
    let mut cur = l.symbols().to_vec();
    for (step, mv) in path.iter().enumerate() {
        let r = rule(mv.rule).ok_or_else(|| Error::UnknownKey(mv.rule.to_string()))?;
        let len = r.len(mv.dir);
        let comb = comb_positions(&cur);
        let at = if len == 0 {
            if mv.position > comb.len() {
                return Err(Error::NoMatch { rule: mv.rule.to_string(), position: mv.position });
            }
            if mv.position == 0 { 0 } else { comb[mv.position - 1] + 1 }
        } else {
            if mv.position + len > comb.len() {
                return Err(Error::NoMatch { rule: mv.rule.to_string(), position: mv.position });
            }
            cur = shuttle(cur, mv.position, len).ok_or_else(|| {
                Error::invalid("localization", format!("threads stuck inside step {} ({})", step + 1, mv.rule))
            })?;
            comb_positions(&cur)[mv.position]
        };
        cur = apply_rule(&cur, r, mv.dir, at, mv.free)?.symbols;
        validate_twisted(cur.clone())?;
    }
    validate_twisted(cur)
}
