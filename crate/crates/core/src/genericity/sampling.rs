//! Uniform random reduced words and homomorphisms.
//!
//! Every draw is a pure function of `(seed, stream)`: the generator is a
//! ChaCha8 stream keyed by the seed and positioned by the stream id, so any
//! trial can be regenerated on its own, on any thread.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{ball_size, sphere_size};
use crate::hom::Homomorphism;
use crate::word::{Alphabet, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleMode {
    /// Uniform over reduced words of length exactly `p`.
    #[default]
    Sphere,
    /// Uniform over reduced words of length at most `p`.
    Ball,
}

impl std::fmt::Display for SampleMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SampleMode::Sphere => "sphere",
            SampleMode::Ball => "ball",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomModel {
    pub rank_g: usize,
    pub rank_h: usize,
    pub length: usize,
    pub mode: SampleMode,
    pub seed: u64,
}

impl RandomModel {
    pub fn codomain(&self) -> Arc<Alphabet> {
        Arc::new(Alphabet::standard(self.rank_h).expect("rank_h ≥ 1"))
    }

    pub fn domain(&self) -> Arc<Alphabet> {
        Arc::new(Alphabet::standard(self.rank_g).expect("rank_g ≥ 1"))
    }
}

/// splitmix64 finalizer.
pub fn mix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Folds a path of counters (length index, trial, role, …) into one stream id.
pub fn derive_stream(path: &[u64]) -> u64 {
    path.iter().fold(0x6a09_e667_f3bc_c908, |acc, &k| mix64(acc ^ mix64(k)))
}

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// First letter uniform over `2n`, each later letter uniform over the
/// `2n − 1` letters that do not cancel its predecessor.
pub fn sphere_word<R: Rng + ?Sized>(rng: &mut R, alphabet: &Arc<Alphabet>, length: usize) -> Word {
    let two_n = 2 * alphabet.rank();
    let mut letters: Vec<Letter> = Vec::with_capacity(length);
    for _ in 0..length {
        let letter = match letters.last() {
            None => code_to_letter(rng.random_range(0..two_n)),
            Some(&prev) => {
                // skip over the one forbidden code
                let forbidden = letter_to_code(prev.inverse());
                let mut c = rng.random_range(0..two_n - 1);
                if c >= forbidden {
                    c += 1;
                }
                code_to_letter(c)
            }
        };
        letters.push(letter);
    }
    Word::from_reduced(alphabet, letters)
}

/// Length `k` drawn with weight `|S_k|`, then a sphere draw at `k`.
pub fn ball_word<R: Rng + ?Sized>(rng: &mut R, alphabet: &Arc<Alphabet>, radius: usize) -> Word {
    let n = alphabet.rank();
    let mut target = uniform_below(rng, &ball_size(n, radius));
    let mut length = 0;
    for k in 0..=radius {
        let size = sphere_size(n, k);
        if target < size {
            length = k;
            break;
        }
        target -= size;
    }
    sphere_word(rng, alphabet, length)
}

fn code_to_letter(code: usize) -> Letter {
    Letter::new(code / 2, code % 2 == 1)
}

fn letter_to_code(letter: Letter) -> usize {
    2 * letter.index() + usize::from(letter.is_inverse())
}

/// Uniform on `[0, bound)` by rejection on `bits(bound)` random bits.
fn uniform_below<R: Rng + ?Sized>(rng: &mut R, bound: &BigUint) -> BigUint {
    assert!(!bound.is_zero());
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    let top_bits = bits - 32 * (words as u64 - 1);
    let mask = if top_bits == 32 {
        u32::MAX
    } else {
        (1u32 << top_bits) - 1
    };
    loop {
        let mut digits: Vec<u32> = (0..words).map(|_| rng.random()).collect();
        *digits.last_mut().expect("bound is nonzero") &= mask;
        let candidate = BigUint::from_slice(&digits);
        if &candidate < bound {
            return candidate;
        }
    }
}

pub fn sample_word_with<R: Rng + ?Sized>(rng: &mut R, alphabet: &Arc<Alphabet>, model: &RandomModel) -> Word {
    match model.mode {
        SampleMode::Sphere => sphere_word(rng, alphabet, model.length),
        SampleMode::Ball => ball_word(rng, alphabet, model.length),
    }
}

/// A word of `H` determined by `(model.seed, stream)`.
pub fn sample_word(model: &RandomModel, stream: u64) -> Word {
    sample_word_over(model, &model.codomain(), stream)
}

pub(crate) fn sample_word_over(model: &RandomModel, codomain: &Arc<Alphabet>, stream: u64) -> Word {
    let mut rng = rng_for(model.seed, stream);
    sample_word_with(&mut rng, codomain, model)
}

/// A homomorphism `F_{rank_g} → F_{rank_h}`; image `i` is drawn from the
/// sub-stream `derive_stream([stream, i])`.
pub fn sample_hom(model: &RandomModel, stream: u64) -> Homomorphism {
    sample_hom_over(model, &model.domain(), &model.codomain(), stream)
}

pub(crate) fn sample_hom_over(
    model: &RandomModel,
    domain: &Arc<Alphabet>,
    codomain: &Arc<Alphabet>,
    stream: u64,
) -> Homomorphism {
    let images = (0..model.rank_g as u64)
        .map(|i| sample_word_over(model, codomain, derive_stream(&[stream, i])))
        .collect();
    Homomorphism::new(Arc::clone(domain), Arc::clone(codomain), images).expect("images match the domain rank")
}
