//! Test-only oracles and random instance builders.
//!
//! The oracles here deliberately avoid the library's cancellation and
//! remnant code paths: reduction is done on a tagged stack and remnants are
//! found by testing every subword against every product.

#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use twistclass::genericity::sampling::sphere_word;
use twistclass::{Alphabet, Homomorphism, Letter, Word};

pub fn alphabet(rank: usize) -> Arc<Alphabet> {
    Arc::new(Alphabet::standard(rank).unwrap())
}

/// Reduced word with length uniform in `0..=max_len`.
pub fn random_word<R: Rng>(rng: &mut R, alphabet: &Arc<Alphabet>, max_len: usize) -> Word {
    let len = rng.random_range(0..=max_len);
    sphere_word(rng, alphabet, len)
}

pub fn random_word_between<R: Rng>(rng: &mut R, alphabet: &Arc<Alphabet>, min_len: usize, max_len: usize) -> Word {
    let len = rng.random_range(min_len..=max_len);
    sphere_word(rng, alphabet, len)
}

pub fn random_hom<R: Rng>(
    rng: &mut R,
    domain: &Arc<Alphabet>,
    codomain: &Arc<Alphabet>,
    min_len: usize,
    max_len: usize,
) -> Homomorphism {
    let images = (0..domain.rank())
        .map(|_| random_word_between(rng, codomain, min_len, max_len))
        .collect();
    Homomorphism::new(Arc::clone(domain), Arc::clone(codomain), images).unwrap()
}

/// Which letters of each factor survive free reduction of `left · right`,
/// computed on a stack of tagged letters.
pub fn survivors(left: &[Letter], right: &[Letter]) -> (Vec<bool>, Vec<bool>) {
    let mut stack: Vec<(Letter, usize, usize)> = Vec::new();
    for (part, word) in [left, right].into_iter().enumerate() {
        for (pos, &letter) in word.iter().enumerate() {
            match stack.last() {
                Some(&(top, _, _)) if top.index() == letter.index() && top.sign() == -letter.sign() => {
                    stack.pop();
                }
                _ => stack.push((letter, part, pos)),
            }
        }
    }
    let mut keep = (vec![false; left.len()], vec![false; right.len()]);
    for (_, part, pos) in stack {
        if part == 0 {
            keep.0[pos] = true;
        } else {
            keep.1[pos] = true;
        }
    }
    keep
}

fn inverse_letters(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// For each generator, the `[start, end)` of the longest subword of its
/// image that loses no letter in any admissible product, or `None`.
pub fn remnant_oracle(h: &Homomorphism) -> Vec<Option<(usize, usize)>> {
    let images: Vec<Vec<Letter>> = h.images().iter().map(|w| w.letters().to_vec()).collect();
    (0..images.len())
        .map(|i| {
            let image = &images[i];
            // survival mask of image i in each admissible product
            let mut masks: Vec<Vec<bool>> = Vec::new();
            for (j, other) in images.iter().enumerate() {
                for inverted in [false, true] {
                    if j == i && inverted {
                        continue;
                    }
                    let factor = if inverted {
                        inverse_letters(other)
                    } else {
                        other.clone()
                    };
                    masks.push(survivors(&factor, image).1);
                    masks.push(survivors(image, &factor).0);
                }
            }
            let len = image.len();
            for width in (1..=len).rev() {
                for start in 0..=len - width {
                    if masks.iter().all(|m| m[start..start + width].iter().all(|&s| s)) {
                        return Some((start, start + width));
                    }
                }
            }
            None
        })
        .collect()
}

/// Every reduced word of length exactly `len`, by filtering all letter
/// sequences.
pub fn brute_force_sphere(rank: usize, len: usize) -> Vec<Vec<Letter>> {
    let letters: Vec<Letter> = (0..rank)
        .flat_map(|i| [Letter::new(i, false), Letter::new(i, true)])
        .collect();
    let mut all: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..len {
        all = all
            .into_iter()
            .flat_map(|prefix| {
                letters.iter().map(move |&l| {
                    let mut w = prefix.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
    }
    all.into_iter()
        .filter(|w| {
            w.windows(2)
                .all(|p| !(p[0].index() == p[1].index() && p[0].sign() != p[1].sign()))
        })
        .collect()
}
