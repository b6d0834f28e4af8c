use serde::{Deserialize, Serialize};

use crate::algebra::Key;
use crate::{Error, Result};

/// One end of a directed chord. Ordered by chord index, tail before head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Endpoint {
    pub chord: u8,
    pub head: bool,
}

impl Endpoint {
    pub const fn tail(chord: u8) -> Endpoint {
        Endpoint { chord, head: false }
    }

    pub const fn head(chord: u8) -> Endpoint {
        Endpoint { chord, head: true }
    }

    fn byte(self) -> u8 {
        self.chord * 2 + self.head as u8
    }
}

pub(crate) const MAX_CHORDS: usize = 100;

/// Canonical rotation of a decorated boundary word. Chords are renumbered
/// in first-visit order from each candidate start, and the least
/// `(boundary, numbers, signs)` triple wins. `signs` is indexed by the
/// original chord labels and may be empty.
pub(crate) fn canonical_rotation(
    boundary: &[Endpoint],
    numbers: &[u32],
    signs: &[(u8, i8)],
) -> (Vec<Endpoint>, Vec<u32>, Vec<i8>) {
    let len = boundary.len();
    let mut best: Option<(Vec<Endpoint>, Vec<u32>, Vec<i8>)> = None;
    let mut relabel = [u8::MAX; 256];
    for r in 0..len.max(1) {
        relabel.iter_mut().for_each(|x| *x = u8::MAX);
        let mut next = 0u8;
        let mut word = Vec::with_capacity(len);
        for i in 0..len {
            let e = boundary[(r + i) % len];
            let slot = &mut relabel[e.chord as usize];
            if *slot == u8::MAX {
                *slot = next;
                next += 1;
            }
            word.push(Endpoint { chord: *slot, head: e.head });
        }
        if let Some(b) = &best {
            if word > b.0 {
                continue;
            }
        }
        let nums: Vec<u32> = (0..numbers.len()).map(|i| numbers[(r + i) % numbers.len()]).collect();
        let mut sg = vec![0i8; signs.len()];
        for &(c, s) in signs {
            sg[relabel[c as usize] as usize] = s;
        }
        let cand = (word, nums, sg);
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.unwrap_or_default()
}

fn check_boundary(boundary: &[Endpoint]) -> Result<usize> {
    if boundary.len() % 2 == 1 {
        return Err(Error::invalid("chord diagram", "odd number of endpoints"));
    }
    let k = boundary.len() / 2;
    if k > MAX_CHORDS {
        return Err(Error::Cap { what: format!("{k} chords"), cap: MAX_CHORDS as u128 });
    }
    let mut seen = vec![[false; 2]; k];
    for e in boundary {
        let c = e.chord as usize;
        if c >= k {
            return Err(Error::invalid("chord diagram", format!("chord label {c} with only {k} chords")));
        }
        if std::mem::replace(&mut seen[c][e.head as usize], true) {
            return Err(Error::invalid("chord diagram", format!("chord {c} has two {}s", if e.head { "head" } else { "tail" })));
        }
    }
    Ok(k)
}

/// Directed chords on an oriented circle, up to rotation. Always stored in
/// canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChordDiagram {
    boundary: Vec<Endpoint>,
}

impl ChordDiagram {
    pub fn new(boundary: &[Endpoint]) -> Result<ChordDiagram> {
        check_boundary(boundary)?;
        Ok(ChordDiagram::canonical_unchecked(boundary))
    }

    pub(crate) fn canonical_unchecked(boundary: &[Endpoint]) -> ChordDiagram {
        ChordDiagram { boundary: canonical_rotation(boundary, &[], &[]).0 }
    }

    pub fn empty() -> ChordDiagram {
        ChordDiagram { boundary: Vec::new() }
    }

    pub fn chords(&self) -> usize {
        self.boundary.len() / 2
    }

    pub fn boundary(&self) -> &[Endpoint] {
        &self.boundary
    }

    /// `k` followed by one byte per endpoint.
    pub fn key(&self) -> Key {
        let mut b = Vec::with_capacity(1 + self.boundary.len());
        b.push(self.chords() as u8);
        b.extend(self.boundary.iter().map(|e| e.byte()));
        Key::from(b)
    }

    pub fn from_key(key: &Key) -> Result<ChordDiagram> {
        let b = key.as_bytes();
        let bad = || Error::Parse(format!("not a chord diagram key: {key}"));
        let (&k, rest) = b.split_first().ok_or_else(bad)?;
        if rest.len() != 2 * k as usize {
            return Err(bad());
        }
        let boundary: Vec<Endpoint> = rest.iter().map(|&x| Endpoint { chord: x / 2, head: x % 2 == 1 }).collect();
        ChordDiagram::new(&boundary)
    }
}

/// A chord diagram with a nonnegative integer on each boundary section.
/// `numbers[i]` sits on the arc after boundary position `i`; the empty
/// diagram has a single section.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NumberedChordDiagram {
    boundary: Vec<Endpoint>,
    numbers: Vec<u32>,
}

impl NumberedChordDiagram {
    pub fn new(boundary: &[Endpoint], numbers: &[u32]) -> Result<NumberedChordDiagram> {
        let k = check_boundary(boundary)?;
        let sections = if k == 0 { 1 } else { 2 * k };
        if numbers.len() != sections {
            return Err(Error::invalid(
                "numbered chord diagram",
                format!("{} numbers for {sections} sections", numbers.len()),
            ));
        }
        Ok(NumberedChordDiagram::canonical_unchecked(boundary, numbers))
    }

    pub(crate) fn canonical_unchecked(boundary: &[Endpoint], numbers: &[u32]) -> NumberedChordDiagram {
        if boundary.is_empty() {
            return NumberedChordDiagram { boundary: Vec::new(), numbers: numbers.to_vec() };
        }
        let (boundary, numbers, _) = canonical_rotation(boundary, numbers, &[]);
        NumberedChordDiagram { boundary, numbers }
    }

    pub fn chords(&self) -> usize {
        self.boundary.len() / 2
    }

    pub fn boundary(&self) -> &[Endpoint] {
        &self.boundary
    }

    pub fn numbers(&self) -> &[u32] {
        &self.numbers
    }

    pub fn braid_index(&self) -> u32 {
        self.numbers.iter().sum()
    }

    pub fn diagram(&self) -> ChordDiagram {
        ChordDiagram { boundary: self.boundary.clone() }
    }

    pub fn key(&self) -> Key {
        let mut b = self.diagram().key().as_bytes().to_vec();
        for x in &self.numbers {
            b.extend(x.to_be_bytes());
        }
        Key::from(b)
    }
}

/// JSON shape shared by the three diagram types; endpoints are boundary
/// positions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub chords: Vec<ChordJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub numbers: Vec<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub signs: Vec<i8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordJson {
    pub tail: usize,
    pub head: usize,
}

impl DiagramJson {
    pub(crate) fn from_boundary(boundary: &[Endpoint], numbers: &[u32], signs: &[i8]) -> DiagramJson {
        let k = boundary.len() / 2;
        let mut chords = vec![ChordJson { tail: 0, head: 0 }; k];
        for (i, e) in boundary.iter().enumerate() {
            if e.head {
                chords[e.chord as usize].head = i;
            } else {
                chords[e.chord as usize].tail = i;
            }
        }
        DiagramJson { chords, numbers: numbers.to_vec(), signs: signs.to_vec() }
    }

    pub(crate) fn boundary(&self) -> Result<Vec<Endpoint>> {
        let len = 2 * self.chords.len();
        let mut slots: Vec<Option<Endpoint>> = vec![None; len];
        for (c, ch) in self.chords.iter().enumerate() {
            for (pos, e) in [(ch.tail, Endpoint::tail(c as u8)), (ch.head, Endpoint::head(c as u8))] {
                let slot = slots
                    .get_mut(pos)
                    .ok_or_else(|| Error::invalid("diagram json", format!("position {pos} out of range")))?;
                if slot.replace(e).is_some() {
                    return Err(Error::invalid("diagram json", format!("position {pos} used twice")));
                }
            }
        }
        Ok(slots.into_iter().map(|e| e.expect("every slot filled")).collect())
    }
}

impl ChordDiagram {
    pub fn to_json(&self) -> DiagramJson {
        DiagramJson::from_boundary(&self.boundary, &[], &[])
    }

    pub fn from_json(j: &DiagramJson) -> Result<ChordDiagram> {
        ChordDiagram::new(&j.boundary()?)
    }
}

impl NumberedChordDiagram {
    pub fn to_json(&self) -> DiagramJson {
        DiagramJson::from_boundary(&self.boundary, &self.numbers, &[])
    }

    pub fn from_json(j: &DiagramJson) -> Result<NumberedChordDiagram> {
        NumberedChordDiagram::new(&j.boundary()?, &j.numbers)
    }
}

/// All chord diagrams with at most `n` chords, ordered by chord count and
/// then canonical key. Includes the empty diagram.
pub fn enumerate_cds(n: usize) -> Vec<ChordDiagram> {
    let mut out = vec![ChordDiagram::empty()];
    for k in 1..=n {
        let mut level = std::collections::BTreeSet::new();
        let mut pairs = Vec::new();
        for_each_pairing(&mut (0..2 * k).collect::<Vec<_>>(), &mut pairs, &mut |pairs| {
            for dirs in 0..1u32 << k {
                let mut b = vec![Endpoint::tail(0); 2 * k];
                for (c, &(x, y)) in pairs.iter().enumerate() {
                    let flip = dirs >> c & 1 == 1;
                    b[x] = Endpoint { chord: c as u8, head: flip };
                    b[y] = Endpoint { chord: c as u8, head: !flip };
                }
                level.insert(ChordDiagram::canonical_unchecked(&b));
            }
        });
        out.extend(level);
    }
    out
}

type PairingFn<'a> = dyn FnMut(&[(usize, usize)]) + 'a;

fn for_each_pairing(
    rest: &mut Vec<usize>,
    pairs: &mut Vec<(usize, usize)>,
    f: &mut PairingFn,
) {
    if rest.is_empty() {
        f(pairs);
        return;
    }
    let a = rest.remove(0);
    for j in 0..rest.len() {
        let b = rest.remove(j);
        pairs.push((a, b));
        for_each_pairing(rest, pairs, f);
        pairs.pop();
        rest.insert(j, b);
    }
    rest.insert(0, a);
}
