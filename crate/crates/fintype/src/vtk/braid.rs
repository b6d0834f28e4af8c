use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::chord::{canonical_rotation, DiagramJson, Endpoint, NumberedChordDiagram, MAX_CHORDS};
use super::expand::{collect, v_expand_into};
use crate::algebra::{FormalSum, Key};
use crate::diagrams::{for_each_subset, DiagramKind};
use crate::{Error, Result};

/// A letter of a virtual braid word. Indices are 1-based: the letter acts
/// on strand positions `i` and `i + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Sigma(usize),
    SigmaInv(usize),
    Virtual(usize),
}

impl Letter {
    pub fn index(self) -> usize {
        match self {
            Letter::Sigma(i) | Letter::SigmaInv(i) | Letter::Virtual(i) => i,
        }
    }

    /// True for `σ` and `σ⁻¹`.
    pub fn is_classical(self) -> bool {
        !matches!(self, Letter::Virtual(_))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Sigma(i) => write!(f, "σ_{i}"),
            Letter::SigmaInv(i) => write!(f, "σ_{i}^{{-1}}"),
            Letter::Virtual(i) => write!(f, "v_{i}"),
        }
    }
}

/// A word in `σ_i`, `σ_i⁻¹`, `v_i` on a fixed number of strands.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VirtualBraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl VirtualBraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<VirtualBraidWord> {
        if strands == 0 {
            return Err(Error::invalid("braid word", "no strands"));
        }
        if let Some(l) = letters.iter().find(|l| l.index() == 0 || l.index() >= strands) {
            return Err(Error::invalid("braid word", format!("{l} out of range on {strands} strands")));
        }
        Ok(VirtualBraidWord { strands, letters })
    }

    /// Parses a word, taking the fewest strands its letters allow.
    ///
    /// Accepted spellings: `σ_1`, `σ1`, `s1` for the positive generator;
    /// `σ_1^{-1}`, `σ1^-1`, `σ1⁻¹`, `S1` for its inverse; `v_1`, `v1` for the
    /// virtual crossing. Letters may be separated by spaces.
    pub fn parse(text: &str) -> Result<VirtualBraidWord> {
        let letters = parse_letters(text)?;
        let strands = letters.iter().map(|l| l.index() + 1).max().unwrap_or(1);
        VirtualBraidWord::new(strands, letters)
    }

    pub fn parse_with_strands(strands: usize, text: &str) -> Result<VirtualBraidWord> {
        VirtualBraidWord::new(strands, parse_letters(text)?)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn classical_count(&self) -> usize {
        self.letters.iter().filter(|l| l.is_classical()).count()
    }

    pub fn is_positive(&self) -> bool {
        !self.letters.iter().any(|l| matches!(l, Letter::SigmaInv(_)))
    }

    /// `perm[q]` is the strand (named by its starting position) that ends
    /// at position `q`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut pos: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            pos.swap(l.index() - 1, l.index());
        }
        pos
    }

    /// Number of components of the closure.
    pub fn components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut count = 0;
        for s in 0..self.strands {
            if !seen[s] {
                count += 1;
                let mut t = s;
                while !seen[t] {
                    seen[t] = true;
                    t = perm[t];
                }
            }
        }
        count
    }

    pub fn is_knot(&self) -> bool {
        self.components() == 1
    }

    /// Cyclic rotation by `k` letters; the closure is unchanged.
    pub fn rotated(&self, k: usize) -> VirtualBraidWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            let k = k % letters.len();
            letters.rotate_left(k);
        }
        VirtualBraidWord { strands: self.strands, letters }
    }

    /// Positive stabilization: one more strand and `σ_m` appended, where
    /// `m` is the old strand count.
    pub fn stabilized(&self) -> VirtualBraidWord {
        let mut letters = self.letters.clone();
        letters.push(Letter::Sigma(self.strands));
        VirtualBraidWord { strands: self.strands + 1, letters }
    }

    fn with_letters(&self, letters: Vec<Letter>) -> VirtualBraidWord {
        VirtualBraidWord { strands: self.strands, letters }
    }
}

impl fmt::Display for VirtualBraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for VirtualBraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<VirtualBraidWord> {
        VirtualBraidWord::parse(s)
    }
}

fn parse_letters(text: &str) -> Result<Vec<Letter>> {
    let bad = |reason: String| Error::Parse(format!("braid word {text:?}: {reason}"));
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    let eat = |i: &mut usize, s: &str| {
        let s: Vec<char> = s.chars().collect();
        if chars[*i..].starts_with(&s) {
            *i += s.len();
            true
        } else {
            false
        }
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == '·' || c == '*' || c == ',' {
            i += 1;
            continue;
        }
        i += 1;
        let (mut inverse, virt) = match c {
            'σ' | 's' => (false, false),
            'S' => (true, false),
            'v' => (false, true),
            _ => return Err(bad(format!("unexpected {c:?}"))),
        };
        eat(&mut i, "_");
        let braced = eat(&mut i, "{");
        let start = i;
        while i < chars.len() && chars[i].is_ascii_digit() {
            i += 1;
        }
        if start == i {
            return Err(bad(format!("letter {c:?} without an index")));
        }
        let digits: String = chars[start..i].iter().collect();
        let index: usize = digits.parse().map_err(|_| bad(format!("index {digits} too large")))?;
        if braced && !eat(&mut i, "}") {
            return Err(bad("unclosed brace".into()));
        }
        if eat(&mut i, "^{-1}") || eat(&mut i, "^-1") || eat(&mut i, "⁻¹") {
            if inverse {
                return Err(bad("inverse written twice".into()));
            }
            inverse = true;
        }
        out.push(match (virt, inverse) {
            // v_i is an involution
            (true, _) => Letter::Virtual(index),
            (false, false) => Letter::Sigma(index),
            (false, true) => Letter::SigmaInv(index),
        });
    }
    Ok(out)
}

/// A numbered chord diagram whose chords carry crossing signs. The section
/// numbers count strand boundary points of the closed braid, so their sum
/// is the braid index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BraidedGaussDiagram {
    boundary: Vec<Endpoint>,
    numbers: Vec<u32>,
    signs: Vec<i8>,
}

impl BraidedGaussDiagram {
    pub fn new(boundary: &[Endpoint], numbers: &[u32], signs: &[i8]) -> Result<BraidedGaussDiagram> {
        let ncd = NumberedChordDiagram::new(boundary, numbers)?;
        if signs.len() != ncd.chords() || signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::invalid("braided Gauss diagram", "need one ±1 sign per chord"));
        }
        if ncd.braid_index() == 0 {
            return Err(Error::invalid("braided Gauss diagram", "braid index must be positive"));
        }
        Ok(BraidedGaussDiagram::canonical_unchecked(boundary, numbers, signs))
    }

    fn canonical_unchecked(boundary: &[Endpoint], numbers: &[u32], signs: &[i8]) -> BraidedGaussDiagram {
        if boundary.is_empty() {
            return BraidedGaussDiagram { boundary: Vec::new(), numbers: numbers.to_vec(), signs: Vec::new() };
        }
        let labelled: Vec<(u8, i8)> = signs.iter().enumerate().map(|(c, &s)| (c as u8, s)).collect();
        let (boundary, numbers, signs) = canonical_rotation(boundary, numbers, &labelled);
        BraidedGaussDiagram { boundary, numbers, signs }
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

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn braid_index(&self) -> u32 {
        self.numbers.iter().sum()
    }

    /// Forgets the signs.
    pub fn numbered(&self) -> NumberedChordDiagram {
        NumberedChordDiagram::canonical_unchecked(&self.boundary, &self.numbers)
    }

    /// Keeps the chords in `keep`; each deleted endpoint's two flanking
    /// sections merge by adding their counts.
    pub fn subdiagram(&self, keep: &[usize]) -> BraidedGaussDiagram {
        let len = self.boundary.len();
        let kept = |e: &Endpoint| keep.contains(&(e.chord as usize));
        let Some(first) = self.boundary.iter().position(kept) else {
            return BraidedGaussDiagram { boundary: Vec::new(), numbers: vec![self.braid_index()], signs: Vec::new() };
        };
        let mut boundary = Vec::new();
        let mut numbers: Vec<u32> = Vec::new();
        for step in 0..len {
            let i = (first + step) % len;
            let e = self.boundary[i];
            if kept(&e) {
                boundary.push(e);
                numbers.push(0);
            }
            *numbers.last_mut().expect("first endpoint is kept") += self.numbers[i];
        }
        let signs: Vec<(u8, i8)> = keep.iter().map(|&c| (c as u8, self.signs[c])).collect();
        let (boundary, numbers, signs) = canonical_rotation(&boundary, &numbers, &signs);
        BraidedGaussDiagram { boundary, numbers, signs }
    }

    pub fn key(&self) -> Key {
        let mut b = self.numbered().key().as_bytes().to_vec();
        b.extend(self.signs.iter().map(|&s| s as u8));
        Key::from(b)
    }

    pub fn from_key(key: &Key) -> Result<BraidedGaussDiagram> {
        let bad = || Error::Parse(format!("not a braided Gauss diagram key: {key}"));
        let b = key.as_bytes();
        let k = *b.first().ok_or_else(bad)? as usize;
        if k > MAX_CHORDS {
            return Err(bad());
        }
        let sections = if k == 0 { 1 } else { 2 * k };
        if b.len() != 1 + 2 * k + 4 * sections + k {
            return Err(bad());
        }
        let boundary: Vec<Endpoint> =
            b[1..1 + 2 * k].iter().map(|&x| Endpoint { chord: x / 2, head: x % 2 == 1 }).collect();
        let nums = &b[1 + 2 * k..1 + 2 * k + 4 * sections];
        let numbers: Vec<u32> = nums.chunks(4).map(|c| u32::from_be_bytes([c[0], c[1], c[2], c[3]])).collect();
        let signs: Vec<i8> = b[b.len() - k..].iter().map(|&s| s as i8).collect();
        let d = BraidedGaussDiagram::new(&boundary, &numbers, &signs)?;
        if d.key() != *key {
            return Err(bad());
        }
        Ok(d)
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson::from_boundary(&self.boundary, &self.numbers, &self.signs)
    }

    pub fn from_json(j: &DiagramJson) -> Result<BraidedGaussDiagram> {
        BraidedGaussDiagram::new(&j.boundary()?, &j.numbers, &j.signs)
    }
}

/// Braided Gauss diagrams as a diagram category: subdiagrams keep a subset
/// of chords.
#[derive(Clone, Copy, Debug, Default)]
pub struct BgdKind;

impl DiagramKind for BgdKind {
    type Diagram = BraidedGaussDiagram;

    fn order(&self, d: &BraidedGaussDiagram) -> usize {
        d.chords()
    }

    fn subdiagram(&self, d: &BraidedGaussDiagram, keep: &[usize]) -> BraidedGaussDiagram {
        d.subdiagram(keep)
    }

    fn canonical(&self, d: &BraidedGaussDiagram) -> Key {
        d.key()
    }

    fn from_canonical(&self, key: &Key) -> Result<BraidedGaussDiagram> {
        BraidedGaussDiagram::from_key(key)
    }
}

/// The Gauss diagram of the closure of `w`, read from the start of the
/// first strand. Each crossing gives a chord from the over strand to the
/// under strand; virtual crossings give nothing.
pub fn braid_word_to_bgd(w: &VirtualBraidWord) -> Result<BraidedGaussDiagram> {
    let m = w.strands();
    if !w.is_knot() {
        return Err(Error::NotAKnot(w.components()));
    }
    if w.classical_count() > MAX_CHORDS {
        return Err(Error::Cap { what: format!("{} crossings", w.classical_count()), cap: MAX_CHORDS as u128 });
    }
    let mut pos: Vec<usize> = (0..m).collect();
    let mut events: Vec<Vec<Endpoint>> = vec![Vec::new(); m];
    let mut signs = Vec::new();
    for l in w.letters() {
        let i = l.index() - 1;
        let (a, b) = (pos[i], pos[i + 1]);
        let c = signs.len() as u8;
        match l {
            Letter::Sigma(_) => {
                events[a].push(Endpoint::tail(c));
                events[b].push(Endpoint::head(c));
                signs.push(1);
            }
            Letter::SigmaInv(_) => {
                events[b].push(Endpoint::tail(c));
                events[a].push(Endpoint::head(c));
                signs.push(-1);
            }
            Letter::Virtual(_) => {}
        }
        pos.swap(i, i + 1);
    }
    let mut end = vec![0; m];
    for (q, &s) in pos.iter().enumerate() {
        end[s] = q;
    }
    // Walk the closure; every strand start is one boundary point.
    let mut boundary = Vec::new();
    let mut numbers: Vec<u32> = Vec::new();
    let mut lead = 0;
    let mut s = 0;
    loop {
        match numbers.last_mut() {
            Some(x) => *x += 1,
            None => lead += 1,
        }
        for &e in &events[s] {
            boundary.push(e);
            numbers.push(0);
        }
        s = end[s];
        if s == 0 {
            break;
        }
    }
    match numbers.last_mut() {
        Some(x) => *x += lead,
        None => numbers.push(lead),
    }
    Ok(BraidedGaussDiagram::canonical_unchecked(&boundary, &numbers, &signs))
}

/// Rewrites negative crossings away: the leftmost `σ_i⁻¹` in `w σ_i⁻¹ w'`
/// becomes `Σ_{k=1}^{n} (-1)^k w (v_i σ_i)^k v_i w'`, repeated until every
/// word is positive. Words with more than `n` crossings are dropped since
/// they vanish in rank `n`.
pub fn positive_resolution(w: &VirtualBraidWord, n: usize) -> Vec<(VirtualBraidWord, BigInt)> {
    let mut done: BTreeMap<VirtualBraidWord, BigInt> = BTreeMap::new();
    let mut todo = vec![(w.clone(), BigInt::from(1))];
    while let Some((word, coeff)) = todo.pop() {
        if word.classical_count() > n {
            continue;
        }
        let Some(at) = word.letters().iter().position(|l| matches!(l, Letter::SigmaInv(_))) else {
            *done.entry(word).or_default() += coeff;
            continue;
        };
        let i = word.letters()[at].index();
        for k in 1..=n {
            let mut letters = word.letters()[..at].to_vec();
            for _ in 0..k {
                letters.push(Letter::Virtual(i));
                letters.push(Letter::Sigma(i));
            }
            letters.push(Letter::Virtual(i));
            letters.extend_from_slice(&word.letters()[at + 1..]);
            let sign = if k % 2 == 1 { -1 } else { 1 };
            todo.push((word.with_letters(letters), &coeff * sign));
        }
    }
    done.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// The image of a positive word, read as a generator, in chord diagrams:
/// its full braided Gauss diagram pushed through `v`.
fn generator_image(w: &VirtualBraidWord, n: usize, coeff: &BigInt, acc: &mut HashMap<super::ChordDiagram, BigInt>) -> Result<()> {
    debug_assert!(w.is_positive());
    if w.classical_count() > n {
        return Ok(());
    }
    let d = braid_word_to_bgd(w)?;
    v_expand_into(&d.numbered(), n, coeff, acc);
    Ok(())
}

/// The rank-`n` invariant of the closure of `w` as a combination of chord
/// diagrams, before reduction by the relations.
///
/// Each set `S` of at most `n` crossings gives the word with every other
/// crossing made virtual. Negative crossings of `S` are then resolved into
/// positive words, and each positive word goes through its Gauss diagram
/// and `v`.
pub fn invariant_sum(w: &VirtualBraidWord, n: usize) -> Result<FormalSum> {
    if !w.is_knot() {
        return Err(Error::NotAKnot(w.components()));
    }
    let classical: Vec<usize> = (0..w.letters().len()).filter(|&i| w.letters()[i].is_classical()).collect();
    let mut acc = HashMap::new();
    let mut err = None;
    for_each_subset(classical.len(), n, |subset| {
        if err.is_some() {
            return;
        }
        let mut letters = w.letters().to_vec();
        for (j, &at) in classical.iter().enumerate() {
            if !subset.contains(&j) {
                letters[at] = Letter::Virtual(letters[at].index());
            }
        }
        for (word, coeff) in positive_resolution(&w.with_letters(letters), n) {
            if let Err(e) = generator_image(&word, n, &coeff, &mut acc) {
                err = Some(e);
                return;
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(collect(acc)),
    }
}

/// `v` of the generator `[w]` for a positive word `w`.
pub fn generator_sum(w: &VirtualBraidWord, n: usize) -> Result<FormalSum> {
    if !w.is_positive() {
        return Err(Error::invalid("braid word", format!("{w} is not positive")));
    }
    let mut acc = HashMap::new();
    generator_image(w, n, &BigInt::from(1), &mut acc)?;
    Ok(collect(acc))
}
