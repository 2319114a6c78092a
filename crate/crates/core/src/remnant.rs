//! Remnant subwords of a homomorphism.
//!
//! For a generator `gᵢ` the remnant is the longest subword of `φ(gᵢ)` that
//! survives every product `φ(gⱼ)^±1 · φ(gᵢ)` and `φ(gᵢ) · φ(gⱼ)^±1`, skipping
//! only the two self-annihilating products `φ(gᵢ)⁻¹φ(gᵢ)` and `φ(gᵢ)φ(gᵢ)⁻¹`.
//! Cancellation in a product of two reduced words happens only at the
//! junction, so the remnant is the image minus its longest cancelled prefix
//! and longest cancelled suffix.

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::hom::Homomorphism;
use crate::word::{junction_cancellation, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorRemnant {
    pub generator_index: usize,
    pub image_length: usize,
    /// Most letters cancelled from the front of the image by a left factor.
    pub left_cancel: usize,
    /// Most letters cancelled from the back of the image by a right factor.
    pub right_cancel: usize,
    pub remnant: Word,
}

impl GeneratorRemnant {
    /// Position of the remnant inside the image, as `[start, end)`; empty
    /// when the cancelled ends overlap.
    pub fn span(&self) -> (usize, usize) {
        if self.left_cancel + self.right_cancel < self.image_length {
            (self.left_cancel, self.image_length - self.right_cancel)
        } else {
            (0, 0)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemnantReport {
    pub generator_names: Vec<String>,
    pub images: Vec<Word>,
    pub per_generator: Vec<GeneratorRemnant>,
    pub has_remnant: bool,
    pub min_remnant_length: usize,
    pub min_remnant_ratio: Ratio<usize>,
}

impl RemnantReport {
    /// True when every remnant has at least `l` letters.
    pub fn has_remnant_length(&self, l: usize) -> bool {
        self.min_remnant_length >= l
    }

    /// True when `|Rem(gᵢ)| ≥ r·|φ(gᵢ)|` for every generator (non-strict).
    pub fn has_remnant_ratio(&self, r: Ratio<usize>) -> bool {
        self.min_remnant_ratio >= r
    }

    pub fn to_json(&self) -> RemnantReportJson {
        RemnantReportJson {
            has_remnant: self.has_remnant,
            min_length: self.min_remnant_length,
            min_ratio: format_ratio(&self.min_remnant_ratio),
            generators: self
                .per_generator
                .iter()
                .map(|g| GeneratorJson {
                    name: self.generator_names[g.generator_index].clone(),
                    image: self.images[g.generator_index].to_string(),
                    left: g.left_cancel,
                    right: g.right_cancel,
                    remnant: if g.remnant.is_empty() {
                        String::new()
                    } else {
                        g.remnant.to_string()
                    },
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemnantReportJson {
    pub has_remnant: bool,
    pub min_length: usize,
    pub min_ratio: String,
    pub generators: Vec<GeneratorJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub name: String,
    pub image: String,
    pub left: usize,
    pub right: usize,
    /// Empty string when the generator has no remnant.
    pub remnant: String,
}

/// Always `p/q`, including integers (`1/1`, `0/1`).
pub fn format_ratio(r: &Ratio<usize>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn compute_remnant(h: &Homomorphism) -> RemnantReport {
    let images: Vec<&[Letter]> = h.images().iter().map(|w| w.letters()).collect();
    let inverses: Vec<Vec<Letter>> = images
        .iter()
        .map(|w| w.iter().rev().map(|l| l.inverse()).collect())
        .collect();

    let per_generator: Vec<GeneratorRemnant> = (0..images.len())
        .map(|i| {
            let image = images[i];
            let mut left = 0;
            let mut right = 0;
            for j in 0..images.len() {
                // (j, +1) on both sides
                left = left.max(junction_cancellation(images[j], image));
                right = right.max(junction_cancellation(image, images[j]));
                if j != i {
                    left = left.max(junction_cancellation(&inverses[j], image));
                    right = right.max(junction_cancellation(image, &inverses[j]));
                }
            }
            let len = image.len();
            let remnant = if left + right < len {
                h.image(i).subword(left, len - right)
            } else {
                Word::identity(h.codomain())
            };
            GeneratorRemnant {
                generator_index: i,
                image_length: len,
                left_cancel: left,
                right_cancel: right,
                remnant,
            }
        })
        .collect();

    let has_remnant = per_generator.iter().all(|g| !g.remnant.is_empty());
    let min_remnant_length = per_generator.iter().map(|g| g.remnant.len()).min().unwrap_or(0);
    let min_remnant_ratio = per_generator
        .iter()
        .map(|g| {
            if g.image_length == 0 {
                Ratio::zero()
            } else {
                Ratio::new(g.remnant.len(), g.image_length)
            }
        })
        .min()
        .unwrap_or_else(Ratio::zero);

    RemnantReport {
        generator_names: h.domain().names().to_vec(),
        images: h.images().to_vec(),
        per_generator,
        has_remnant,
        min_remnant_length,
        min_remnant_ratio,
    }
}

pub fn has_remnant(h: &Homomorphism) -> bool {
    compute_remnant(h).has_remnant
}

pub fn remnant_length(h: &Homomorphism) -> usize {
    compute_remnant(h).min_remnant_length
}

pub fn remnant_ratio(h: &Homomorphism) -> Ratio<usize> {
    compute_remnant(h).min_remnant_ratio
}
