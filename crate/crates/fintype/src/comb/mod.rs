//! Comb diagrams and twisted looms as a string-rewriting system.

mod rules;
mod search;

use std::fmt;
use std::str::FromStr;

use crate::looms::{validate_loom, Loom, Sign, Symbol, ThreadKind};
use crate::{Error, Result};

pub use rules::{
    apply_rule, comb_move, comb_rules, rule, twisted_rewrite, twisted_rules, Applied, Direction, Rule,
};
pub use search::{comb_reduce_search, localize_and_reduce, CombMove, SearchOutcome, DEFAULT_DEPTH};

/// A symbol of a comb diagram or twisted loom. Strand indices are 1-based
/// positions counted from the bottom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CombSymbol {
    /// `⊂_i`: creates strands `i` and `i + 1`.
    Cup(usize),
    /// `⊃_i`: joins strands `i` and `i + 1`.
    Cap(usize),
    /// `x_i`: strand `i` crosses up over strand `i + 1`.
    X(usize),
    XInv(usize),
    /// `|_i`: a band on strand `i`.
    Bar(usize),
    Thread { kind: ThreadKind, strand: usize, target: usize, height: usize },
}

impl CombSymbol {
    pub fn is_thread(&self) -> bool {
        matches!(self, CombSymbol::Thread { .. })
    }
}

fn kind_char(k: ThreadKind) -> char {
    match k {
        ThreadKind::Plus => '+',
        ThreadKind::Minus => '−',
        ThreadKind::Zero => '0',
    }
}

impl fmt::Display for CombSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CombSymbol::Cup(i) => write!(f, "⊂_{i}"),
            CombSymbol::Cap(i) => write!(f, "⊃_{i}"),
            CombSymbol::X(i) => write!(f, "x_{i}"),
            CombSymbol::XInv(i) => write!(f, "x_{i}^{{-1}}"),
            CombSymbol::Bar(i) => write!(f, "|_{i}"),
            CombSymbol::Thread { kind, strand, target, height } => {
                write!(f, "{}_{{{strand},{target}}}^{height}", kind_char(kind))
            }
        }
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, symbols: &[CombSymbol]) -> fmt::Result {
    for (k, s) in symbols.iter().enumerate() {
        if k > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{s}")?;
    }
    Ok(())
}

/// Parses the unicode notation or its ASCII spelling: `C_i`/`⊂_i`,
/// `D_i`/`⊃_i`, `x_i`, `xinv_i`/`x_i^{-1}`/`x^{-1}_i`, `B_i`/`|_i`, and
/// threads `+_{i,t}^h`, `-_{i,t}^h`, `0_{i,t}^h`.
pub fn parse_symbols(text: &str) -> Result<Vec<CombSymbol>> {
    let chars: Vec<char> = text.chars().collect();
    let bad = |at: usize, what: &str| Error::Parse(format!("comb word {text:?} at {at}: {what}"));
    let mut i = 0;
    let eat = |i: &mut usize, s: &str| {
        let s: Vec<char> = s.chars().collect();
        let hit = chars[*i..].starts_with(&s);
        if hit {
            *i += s.len();
        }
        hit
    };
    let number = |i: &mut usize| -> Result<usize> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>().parse().map_err(|_| bad(start, "expected a number"))
    };
    // `_3`, `_{3}`
    let index = |i: &mut usize| -> Result<usize> {
        if !eat(i, "_") {
            return Err(bad(*i, "expected '_'"));
        }
        if eat(i, "{") {
            let n = number(i)?;
            if !eat(i, "}") {
                return Err(bad(*i, "expected '}'"));
            }
            Ok(n)
        } else {
            number(i)
        }
    };
    let inverse = |i: &mut usize| eat(i, "^{-1}") || eat(i, "^-1") || eat(i, "⁻¹");
    let mut out = Vec::new();
    while i < chars.len() {
        let at = i;
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        let sym = if eat(&mut i, "xinv") {
            CombSymbol::XInv(index(&mut i)?)
        } else if eat(&mut i, "x") {
            let pre = inverse(&mut i);
            let k = index(&mut i)?;
            let post = inverse(&mut i);
            if pre && post {
                return Err(bad(at, "inverse written twice"));
            }
            if pre || post {
                CombSymbol::XInv(k)
            } else {
                CombSymbol::X(k)
            }
        } else if eat(&mut i, "⊂") || eat(&mut i, "C") {
            CombSymbol::Cup(index(&mut i)?)
        } else if eat(&mut i, "⊃") || eat(&mut i, "D") {
            CombSymbol::Cap(index(&mut i)?)
        } else if eat(&mut i, "|") || eat(&mut i, "B") {
            CombSymbol::Bar(index(&mut i)?)
        } else if let Some(kind) = ['+', '-', '−', '0'].iter().position(|&c| chars[i] == c) {
            i += 1;
            let kind = [ThreadKind::Plus, ThreadKind::Minus, ThreadKind::Minus, ThreadKind::Zero][kind];
            if !(eat(&mut i, "_{")) {
                return Err(bad(i, "expected '_{'"));
            }
            let strand = number(&mut i)?;
            if !eat(&mut i, ",") {
                return Err(bad(i, "expected ','"));
            }
            let target = number(&mut i)?;
            if !eat(&mut i, "}^") {
                return Err(bad(i, "expected '}^'"));
            }
            let height = if eat(&mut i, "{") {
                let h = number(&mut i)?;
                if !eat(&mut i, "}") {
                    return Err(bad(i, "expected '}'"));
                }
                h
            } else {
                number(&mut i)?
            };
            CombSymbol::Thread { kind, strand, target, height }
        } else {
            return Err(bad(at, &format!("unexpected {:?}", chars[at])));
        };
        out.push(sym);
    }
    Ok(out)
}

/// Strand bookkeeping of a comb word read left to right: the strand count
/// before each symbol, or an error naming the first bad symbol.
pub(crate) fn strand_counts(symbols: &[CombSymbol]) -> Result<Vec<usize>> {
    let mut s = 1usize;
    let mut counts = Vec::with_capacity(symbols.len());
    for (k, sym) in symbols.iter().enumerate() {
        counts.push(s);
        let fail = |why: &str| Err(Error::invalid("comb word", format!("{sym} at {k}: {why} ({s} strands)")));
        match *sym {
            CombSymbol::Cup(i) => {
                if i == 0 || i > s + 1 {
                    return fail("no such gap");
                }
                s += 2;
            }
            CombSymbol::Cap(i) | CombSymbol::X(i) | CombSymbol::XInv(i) => {
                if i == 0 || i + 1 > s {
                    return fail("no such strand pair");
                }
                if matches!(sym, CombSymbol::Cap(_)) {
                    s -= 2;
                }
            }
            CombSymbol::Bar(i) | CombSymbol::Thread { strand: i, .. } => {
                if i == 0 || i > s {
                    return fail("no such strand");
                }
            }
        }
    }
    if s != 1 {
        return Err(Error::invalid("comb word", format!("ends with {s} strands")));
    }
    Ok(counts)
}

/// Checks that the comb part is one arc from the left end to the right end
/// and that every bar sits on a part of it running left to right.
fn check_arc(symbols: &[CombSymbol]) -> Result<()> {
    // Edges are strand pieces; vertices are the two ends, cups and caps.
    // Edge e runs from `start[e]` to `end[e]`.
    const LEFT: usize = 0;
    const RIGHT: usize = 1;
    let mut start = vec![LEFT];
    let mut end = vec![usize::MAX];
    let mut pos = vec![0usize];
    let mut bars = Vec::new();
    let mut vertex = 2;
    for sym in symbols {
        match *sym {
            CombSymbol::Cup(i) => {
                let (a, b) = (start.len(), start.len() + 1);
                start.extend([vertex, vertex]);
                end.extend([usize::MAX, usize::MAX]);
                vertex += 1;
                pos.splice(i - 1..i - 1, [a, b]);
            }
            CombSymbol::Cap(i) => {
                end[pos[i - 1]] = vertex;
                end[pos[i]] = vertex;
                vertex += 1;
                pos.drain(i - 1..=i);
            }
            CombSymbol::X(i) | CombSymbol::XInv(i) => pos.swap(i - 1, i),
            CombSymbol::Bar(i) => bars.push(pos[i - 1]),
            CombSymbol::Thread { .. } => {}
        }
    }
    end[pos[0]] = RIGHT;
    // walk from the left end
    let mut forward = vec![None; start.len()];
    let (mut e, mut fwd) = (0usize, true);
    loop {
        if forward[e].is_some() {
            return Err(Error::invalid("comb word", "closed loop"));
        }
        forward[e] = Some(fwd);
        let v = if fwd { end[e] } else { start[e] };
        if v == RIGHT {
            break;
        }
        let next = (0..start.len())
            .find(|&f| f != e && (if fwd { end[f] == v } else { start[f] == v }))
            .expect("every cup and cap joins two edges");
        e = next;
        fwd = !fwd;
    }
    if forward.iter().any(|f| f.is_none()) {
        return Err(Error::invalid("comb word", "more than one component"));
    }
    if let Some(k) = bars.iter().position(|&b| forward[b] == Some(false)) {
        return Err(Error::invalid("comb word", format!("bar {} sits on a backward strand", k + 1)));
    }
    Ok(())
}

/// A valid comb diagram word. Reducibility to the trivial word is not
/// checked here; see [`comb_reduce_search`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CombWord {
    symbols: Vec<CombSymbol>,
}

pub fn validate_comb(symbols: Vec<CombSymbol>) -> Result<CombWord> {
    if let Some(t) = symbols.iter().find(|s| s.is_thread()) {
        return Err(Error::invalid("comb word", format!("thread symbol {t}")));
    }
    strand_counts(&symbols)?;
    check_arc(&symbols)?;
    Ok(CombWord { symbols })
}

impl CombWord {
    pub fn parse(text: &str) -> Result<CombWord> {
        validate_comb(parse_symbols(text)?)
    }

    /// `E_n`: `n` bars on the single strand.
    pub fn trivial(n: usize) -> CombWord {
        CombWord { symbols: vec![CombSymbol::Bar(1); n] }
    }

    pub fn symbols(&self) -> &[CombSymbol] {
        &self.symbols
    }

    pub fn rank(&self) -> usize {
        self.symbols.iter().filter(|s| matches!(s, CombSymbol::Bar(_))).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.symbols.iter().all(|s| *s == CombSymbol::Bar(1))
    }

    pub fn to_ascii(&self) -> String {
        ascii(&self.symbols)
    }
}

fn ascii(symbols: &[CombSymbol]) -> String {
    symbols
        .iter()
        .map(|s| match *s {
            CombSymbol::Cup(i) => format!("C_{i}"),
            CombSymbol::Cap(i) => format!("D_{i}"),
            CombSymbol::X(i) => format!("x_{i}"),
            CombSymbol::XInv(i) => format!("xinv_{i}"),
            CombSymbol::Bar(i) => format!("B_{i}"),
            CombSymbol::Thread { kind, strand, target, height } => {
                format!("{}_{{{strand},{target}}}^{height}", kind_char(kind).to_string().replace('−', "-"))
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for CombWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.symbols)
    }
}

impl FromStr for CombWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<CombWord> {
        CombWord::parse(s)
    }
}

/// A comb word with thread symbols interleaved.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwistedLoom {
    symbols: Vec<CombSymbol>,
}

/// Checks that the comb part is valid, every thread sits on an existing
/// strand and targets an existing bar, and the heights are `1..=m`.
pub fn validate_twisted(symbols: Vec<CombSymbol>) -> Result<TwistedLoom> {
    let comb: Vec<CombSymbol> = symbols.iter().filter(|s| !s.is_thread()).copied().collect();
    let w = validate_comb(comb)?;
    strand_counts(&symbols)?;
    let n = w.rank();
    let m = symbols.len() - w.symbols.len();
    let mut seen = vec![false; m];
    for s in &symbols {
        if let CombSymbol::Thread { target, height, .. } = *s {
            if target == 0 || target > n {
                return Err(Error::invalid("twisted loom", format!("{s} targets bar {target} of {n}")));
            }
            if height == 0 || height > m || std::mem::replace(&mut seen[height - 1], true) {
                return Err(Error::invalid("twisted loom", format!("{s}: heights must be 1..={m}, each once")));
            }
        }
    }
    Ok(TwistedLoom { symbols })
}

impl TwistedLoom {
    pub fn parse(text: &str) -> Result<TwistedLoom> {
        validate_twisted(parse_symbols(text)?)
    }

    pub fn symbols(&self) -> &[CombSymbol] {
        &self.symbols
    }

    /// The word with the threads deleted.
    pub fn comb(&self) -> CombWord {
        CombWord { symbols: self.symbols.iter().filter(|s| !s.is_thread()).copied().collect() }
    }

    pub fn threads(&self) -> usize {
        self.symbols.iter().filter(|s| s.is_thread()).count()
    }

    pub fn to_ascii(&self) -> String {
        ascii(&self.symbols)
    }
}

impl fmt::Display for TwistedLoom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.symbols)
    }
}

impl From<CombWord> for TwistedLoom {
    fn from(w: CombWord) -> TwistedLoom {
        TwistedLoom { symbols: w.symbols }
    }
}

/// Clasp surgery on a twisted loom over the trivial comb diagram: bar `k`
/// becomes a clasp of sign `signs[k]` and each thread keeps its kind,
/// target and height.
pub fn clasp_surgery_to_loom(l: &TwistedLoom, signs: &[Sign]) -> Result<Loom> {
    let comb = l.comb();
    if !comb.is_trivial() {
        return Err(Error::invalid("clasp surgery", format!("comb part {comb} is not trivial")));
    }
    if signs.len() != comb.rank() {
        return Err(Error::invalid("clasp surgery", format!("{} signs for {} bars", signs.len(), comb.rank())));
    }
    let mut bar = 0;
    let symbols = l
        .symbols
        .iter()
        .map(|s| match *s {
            CombSymbol::Thread { kind, target, height, .. } => Symbol::Thread { kind, target, height },
            _ => {
                bar += 1;
                Symbol::Bar(signs[bar - 1])
            }
        })
        .collect();
    validate_loom(symbols)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const SAMPLE_COMB: &str = "⊂_2 x_1^{-1} x_2^{-1} |_3 x_2 |_1 ⊃_2";
    pub(crate) const SAMPLE_TWISTED: &str = "⊂_2 0_{2,2}^1 x_1^{-1} x_2^{-1} |_3 +_{2,1}^2 x_2 |_1 ⊃_2";

    #[test]
    fn sample_words() {
        let w = CombWord::parse(SAMPLE_COMB).unwrap();
        assert_eq!(w.rank(), 2);
        assert_eq!(w.to_string(), SAMPLE_COMB);
        assert_eq!(CombWord::parse("⊂_2x^{-1}_1x^{-1}_2|_3x_2|_1⊃_2").unwrap(), w);
        assert_eq!(CombWord::parse("C_2 xinv_1 xinv_2 B_3 x_2 B_1 D_2").unwrap(), w);
        assert_eq!(CombWord::parse(&w.to_ascii()).unwrap(), w);
        let t = TwistedLoom::parse(SAMPLE_TWISTED).unwrap();
        assert_eq!(t.comb(), w);
        assert_eq!(t.threads(), 2);
        assert_eq!(TwistedLoom::parse(&t.to_ascii()).unwrap(), t);
    }

    #[test]
    fn trivial_words() {
        let e2 = CombWord::parse("|_1 |_1").unwrap();
        assert_eq!(e2, CombWord::trivial(2));
        assert!(e2.is_trivial());
        assert_eq!(e2.rank(), 2);
        assert!(CombWord::parse("").unwrap().is_trivial());
    }

    #[test]
    fn invalid_words() {
        assert!(CombWord::parse("⊂_1").is_err());
        assert!(CombWord::parse("⊃_1").is_err());
        assert!(CombWord::parse("x_1").is_err());
        // a detached circle
        assert!(CombWord::parse("⊂_1 ⊃_1").is_err());
        // the bar sits on the returning middle strand
        assert!(CombWord::parse("⊂_2 |_2 ⊃_1").is_err());
        assert!(CombWord::parse("⊂_2 |_3 ⊃_1").is_ok());
        assert!(TwistedLoom::parse("|_1 0_{1,2}^1").is_err());
        assert!(TwistedLoom::parse("|_1 0_{1,1}^1 0_{1,1}^1").is_err());
        assert!(TwistedLoom::parse("|_1 0_{2,1}^1").is_err());
    }

    #[test]
    fn surgery() {
        let t = TwistedLoom::parse("|_1 0_{1,1}^1").unwrap();
        assert_eq!(clasp_surgery_to_loom(&t, &[Sign::Plus]).unwrap().to_string(), "|_+ 0_1^1");
        let t = TwistedLoom::parse("0_{1,1}^1 |_1").unwrap();
        assert_eq!(clasp_surgery_to_loom(&t, &[Sign::Plus]).unwrap().to_string(), "0_1^1 |_+");
        let e = TwistedLoom::from(CombWord::trivial(2));
        let l = clasp_surgery_to_loom(&e, &[Sign::Minus, Sign::Minus]).unwrap();
        assert_eq!(l.canonical_form(), Loom::empty());
        assert!(clasp_surgery_to_loom(&TwistedLoom::parse(SAMPLE_TWISTED).unwrap(), &[Sign::Plus; 2]).is_err());
    }
}
