use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::braid::{generator_sum, invariant_sum, Letter, VirtualBraidWord};
use crate::algebra::{is_prime, FormalSum};
use crate::cubes::dedup_rows;
use crate::{Error, Result};

/// Which braid-level relation a crosscheck row instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationFamily {
    /// `σ_i σ_{i+1} σ_i w = σ_{i+1} σ_i σ_{i+1} w` on knots.
    BraidMove,
    /// The eight-term generator relation of the positive theory.
    GeneratorBraidMove,
    /// `σ_m w` on `m + 1` strands against `w` on `m`.
    Stabilization,
    /// `[σ_m w] + [v_m w] - [w]` on generators.
    GeneratorStabilization,
    /// A word against its rotation.
    Conjugation,
}

impl RelationFamily {
    pub const ALL: [RelationFamily; 5] = [
        RelationFamily::BraidMove,
        RelationFamily::GeneratorBraidMove,
        RelationFamily::Stabilization,
        RelationFamily::GeneratorStabilization,
        RelationFamily::Conjugation,
    ];
}

#[derive(Clone, Copy, Debug)]
pub struct CrosscheckConfig {
    pub max_strands: usize,
    pub max_length: usize,
    /// Attempts per family; words whose closure is not a knot are skipped.
    pub samples: usize,
    pub seed: u64,
}

impl CrosscheckConfig {
    pub fn new(max_strands: usize, max_length: usize) -> CrosscheckConfig {
        CrosscheckConfig { max_strands, max_length, samples: 400, seed: 0x5eed }
    }
}

#[derive(Clone, Debug)]
pub struct CrosscheckRow {
    pub family: RelationFamily,
    pub word: VirtualBraidWord,
    pub row: FormalSum,
}

fn random_positive(rng: &mut ChaCha8Rng, strands: usize, len: usize) -> Vec<Letter> {
    if strands < 2 {
        return Vec::new();
    }
    (0..len)
        .map(|_| {
            let i = rng.random_range(1..strands);
            if rng.random_bool(0.5) {
                Letter::Sigma(i)
            } else {
                Letter::Virtual(i)
            }
        })
        .collect()
}

fn concat(strands: usize, a: &[Letter], b: &[Letter]) -> Result<VirtualBraidWord> {
    VirtualBraidWord::new(strands, a.iter().chain(b).copied().collect())
}

/// Samples braid-level relations on positive words and pushes both sides
/// through the invariant pipeline. Every row should lie in the span of the
/// finite relation set.
pub fn crosscheck_rows(cfg: &CrosscheckConfig, n: usize) -> Result<Vec<CrosscheckRow>> {
    let mut out = Vec::new();
    if cfg.max_strands == 0 {
        return Ok(out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for family in RelationFamily::ALL {
        for _ in 0..cfg.samples {
            if let Some((word, row)) = sample(family, cfg, n, &mut rng)? {
                if !row.is_zero() {
                    out.push(CrosscheckRow { family, word, row });
                }
            }
        }
    }
    Ok(out)
}

fn sample(
    family: RelationFamily,
    cfg: &CrosscheckConfig,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Option<(VirtualBraidWord, FormalSum)>> {
    use Letter::{Sigma as S, Virtual as V};
    let len = rng.random_range(0..=cfg.max_length);
    match family {
        RelationFamily::BraidMove | RelationFamily::GeneratorBraidMove => {
            if cfg.max_strands < 3 || cfg.max_length < 3 {
                return Ok(None);
            }
            let m = rng.random_range(3..=cfg.max_strands);
            let w = random_positive(rng, m, len.saturating_sub(3));
            let i = rng.random_range(1..=m - 2);
            let j = i + 1;
            let lhs = concat(m, &[S(i), S(j), S(i)], &w)?;
            if !lhs.is_knot() {
                return Ok(None);
            }
            let row = if family == RelationFamily::BraidMove {
                invariant_sum(&lhs, n)? - invariant_sum(&concat(m, &[S(j), S(i), S(j)], &w)?, n)?
            } else {
                let plus = [[S(i), S(j), V(i)], [V(i), S(j), S(i)], [S(i), V(j), S(i)], [S(i), S(j), S(i)]];
                let minus = [[S(j), S(i), V(j)], [V(j), S(i), S(j)], [S(j), V(i), S(j)], [S(j), S(i), S(j)]];
                let mut row = FormalSum::new();
                for t in &plus {
                    row += &generator_sum(&concat(m, t, &w)?, n)?;
                }
                for t in &minus {
                    row -= &generator_sum(&concat(m, t, &w)?, n)?;
                }
                row
            };
            Ok(Some((lhs, row)))
        }
        RelationFamily::Stabilization | RelationFamily::GeneratorStabilization => {
            if cfg.max_strands < 2 {
                return Ok(None);
            }
            let m = rng.random_range(1..cfg.max_strands);
            let w = VirtualBraidWord::new(m, random_positive(rng, m, len.saturating_sub(1)))?;
            if !w.is_knot() {
                return Ok(None);
            }
            let sw = concat(m + 1, &[S(m)], w.letters())?;
            let row = if family == RelationFamily::Stabilization {
                invariant_sum(&sw, n)? - invariant_sum(&w, n)?
            } else {
                let vw = concat(m + 1, &[V(m)], w.letters())?;
                generator_sum(&sw, n)? + generator_sum(&vw, n)? - generator_sum(&w, n)?
            };
            Ok(Some((w, row)))
        }
        RelationFamily::Conjugation => {
            if cfg.max_strands < 2 || len == 0 {
                return Ok(None);
            }
            let m = rng.random_range(2..=cfg.max_strands);
            let w = VirtualBraidWord::new(m, random_positive(rng, m, len))?;
            if !w.is_knot() {
                return Ok(None);
            }
            let k = rng.random_range(1..=len);
            Ok(Some((w.clone(), invariant_sum(&w.rotated(k), n)? - invariant_sum(&w, n)?)))
        }
    }
}

/// Crosscheck rows for words on at most `max_strands` strands and of length
/// at most `max_length`, deduplicated, keeping only rows nonzero mod `p`.
pub fn braid_relation_crosscheck(max_strands: usize, max_length: usize, n: usize, p: u64) -> Result<Vec<FormalSum>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let rows = crosscheck_rows(&CrosscheckConfig::new(max_strands, max_length), n)?;
    let p = num_bigint::BigInt::from(p);
    Ok(dedup_rows(
        rows.into_iter().map(|r| r.row).filter(|r| r.iter().any(|(_, c)| c % &p != 0.into())),
    ))
}
