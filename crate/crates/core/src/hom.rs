//! Homomorphisms between free groups, stored as generator-image tables.
//!
//! Besides evaluation this module provides the constructions used to build
//! class certificates: free products `φ * ψ`, conjugation `φ^v`, the
//! `z`-extensions `φ̂_u` and `ψ̂`, adjoining an extra generator mapped to a
//! fixed word, and the combined table `η = φ̂_u^v * ψ̂`.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{check_same, push_reduced, Alphabet, Letter, Word};

/// Name given to the letter adjoined by the `z`-extensions.
pub const EXTENSION_NAME: &str = "z";

#[derive(Clone, PartialEq, Eq)]
pub struct Homomorphism {
    domain: Arc<Alphabet>,
    codomain: Arc<Alphabet>,
    images: Vec<Word>,
}

impl Homomorphism {
    pub fn new(domain: Arc<Alphabet>, codomain: Arc<Alphabet>, images: Vec<Word>) -> Result<Self> {
        if images.len() != domain.rank() {
            return Err(Error::InvalidHomomorphism(format!(
                "{} images given for a domain of rank {}",
                images.len(),
                domain.rank()
            )));
        }
        for image in &images {
            check_same(image.alphabet(), &codomain)?;
        }
        Ok(Homomorphism {
            domain,
            codomain,
            images,
        })
    }

    pub fn identity(alphabet: &Arc<Alphabet>) -> Self {
        let images = (0..alphabet.rank())
            .map(|i| Word::from_reduced(alphabet, vec![Letter::generator(i)]))
            .collect();
        Homomorphism {
            domain: Arc::clone(alphabet),
            codomain: Arc::clone(alphabet),
            images,
        }
    }

    pub fn domain(&self) -> &Arc<Alphabet> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Alphabet> {
        &self.codomain
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &Word {
        &self.images[generator]
    }

    /// Rank of the domain.
    pub fn rank(&self) -> usize {
        self.domain.rank()
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        check_same(w.alphabet(), &self.domain)?;
        let mut buf = Vec::new();
        for &letter in w.letters() {
            let image = self.images[letter.index()].letters();
            if letter.is_inverse() {
                for &l in image.iter().rev() {
                    push_reduced(&mut buf, l.inverse());
                }
            } else {
                for &l in image {
                    push_reduced(&mut buf, l);
                }
            }
        }
        Ok(Word::from_reduced(&self.codomain, buf))
    }

    /// `self * other : G₁ * G₂ → H`. Second-factor generator names are primed.
    pub fn free_product(&self, other: &Homomorphism) -> Result<Homomorphism> {
        check_same(&self.codomain, &other.codomain)?;
        let mut used: HashSet<String> = self.domain.names().iter().cloned().collect();
        let mut names = self.domain.names().to_vec();
        for name in other.domain.names() {
            let mut primed = format!("{name}'");
            while used.contains(&primed) {
                primed.push('\'');
            }
            used.insert(primed.clone());
            names.push(primed);
        }
        let domain = Arc::new(Alphabet::new(names)?);
        let images = self
            .images
            .iter()
            .chain(&other.images)
            .map(|w| Word::from_reduced(&self.codomain, w.letters().to_vec()))
            .collect();
        Ok(Homomorphism {
            domain,
            codomain: Arc::clone(&self.codomain),
            images,
        })
    }

    /// `φ^v : g ↦ v⁻¹ φ(g) v`.
    pub fn conjugate(&self, v: &Word) -> Result<Homomorphism> {
        check_same(v.alphabet(), &self.codomain)?;
        let images = self
            .images
            .iter()
            .map(|image| image.conjugate_by(v))
            .collect::<Result<_>>()?;
        Ok(Homomorphism {
            domain: Arc::clone(&self.domain),
            codomain: Arc::clone(&self.codomain),
            images,
        })
    }

    /// `φ̂_u : G * ⟨z⟩ → H * ⟨z⟩` with `z ↦ u z u⁻¹`.
    pub fn extend_phi_u(&self, u: &Word) -> Result<Homomorphism> {
        check_same(u.alphabet(), &self.codomain)?;
        let (domain, codomain) = self.extended_alphabets();
        let z = Word::from_reduced(&codomain, vec![Letter::generator(self.codomain.rank())]);
        let u = u.embed(&codomain)?;
        let z_image = u.mul_unchecked(&z).mul_unchecked(&u.inverse());
        self.extend_with(domain, codomain, z_image)
    }

    /// `ψ̂ : G * ⟨z⟩ → H * ⟨z⟩` with `z ↦ z`.
    pub fn extend_psi(&self) -> Homomorphism {
        let (domain, codomain) = self.extended_alphabets();
        let z = Word::from_reduced(&codomain, vec![Letter::generator(self.codomain.rank())]);
        self.extend_with(domain, codomain, z)
            .expect("extension of a valid table is valid")
    }

    /// `φ * w : G * ⟨x⟩ → H` with the new generator mapped to `w`.
    pub fn adjoin_word(&self, w: &Word) -> Result<Homomorphism> {
        self.adjoin_named(w, "x")
    }

    /// Like [`adjoin_word`](Self::adjoin_word) with a preferred name for the
    /// new generator (primed until it is fresh).
    pub fn adjoin_named(&self, w: &Word, preferred: &str) -> Result<Homomorphism> {
        check_same(w.alphabet(), &self.codomain)?;
        let domain = Arc::new(self.domain.extended(preferred));
        let mut images = self.images.clone();
        images.push(w.clone());
        Ok(Homomorphism {
            domain,
            codomain: Arc::clone(&self.codomain),
            images,
        })
    }

    fn extended_alphabets(&self) -> (Arc<Alphabet>, Arc<Alphabet>) {
        (
            Arc::new(self.domain.extended(EXTENSION_NAME)),
            Arc::new(self.codomain.extended(EXTENSION_NAME)),
        )
    }

    fn extend_with(&self, domain: Arc<Alphabet>, codomain: Arc<Alphabet>, last: Word) -> Result<Homomorphism> {
        let mut images = self
            .images
            .iter()
            .map(|w| w.embed(&codomain))
            .collect::<Result<Vec<_>>>()?;
        images.push(last);
        Ok(Homomorphism {
            domain,
            codomain,
            images,
        })
    }

    /// The table `η = φ̂_u^v * ψ̂` on generators `g₁…gₙ, z, g₁'…gₙ', z'`:
    ///
    /// ```text
    /// gᵢ  ↦ v⁻¹ φ(gᵢ) v      gᵢ' ↦ ψ(gᵢ)
    /// z   ↦ v⁻¹ u z u⁻¹ v    z'  ↦ z
    /// ```
    ///
    /// If `η` has remnant then `[u] ≠ [v]`.
    pub fn build_eta(phi: &Homomorphism, psi: &Homomorphism, u: &Word, v: &Word) -> Result<Homomorphism> {
        check_same(&phi.domain, &psi.domain)?;
        check_same(&phi.codomain, &psi.codomain)?;
        check_same(u.alphabet(), &phi.codomain)?;
        check_same(v.alphabet(), &phi.codomain)?;
        let phi_hat = phi.extend_phi_u(u)?;
        let v_hat = v.embed(phi_hat.codomain())?;
        phi_hat.conjugate(&v_hat)?.free_product(&psi.extend_psi())
    }

    /// Parses `"a=aba, b=B a"`. Every domain generator must be assigned once.
    pub fn parse(text: &str, domain: &Arc<Alphabet>, codomain: &Arc<Alphabet>) -> Result<Homomorphism> {
        let assignments = parse_assignments(text, codomain)?;
        let mut images: Vec<Option<Word>> = vec![None; domain.rank()];
        for (name, position, word) in assignments {
            let i = domain
                .index_of(&name)
                .ok_or_else(|| Error::parse(position, format!("`{name}` is not a generator of {domain}")))?;
            if images[i].replace(word).is_some() {
                return Err(Error::parse(position, format!("`{name}` assigned twice")));
            }
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                w.ok_or_else(|| {
                    Error::InvalidHomomorphism(format!("no image given for generator `{}`", domain.name(i)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Homomorphism::new(Arc::clone(domain), Arc::clone(codomain), images)
    }

    /// Parses `"a=aba, b=Ba"` taking the domain generators from the left-hand
    /// sides in the order written.
    pub fn parse_with_codomain(text: &str, codomain: &Arc<Alphabet>) -> Result<Homomorphism> {
        let assignments = parse_assignments(text, codomain)?;
        let mut names = Vec::with_capacity(assignments.len());
        let mut images = Vec::with_capacity(assignments.len());
        for (name, position, word) in assignments {
            if names.contains(&name) {
                return Err(Error::parse(position, format!("`{name}` assigned twice")));
            }
            names.push(name);
            images.push(word);
        }
        let domain = Arc::new(Alphabet::new(names)?);
        Homomorphism::new(domain, Arc::clone(codomain), images)
    }

    pub fn to_json(&self) -> HomomorphismJson {
        HomomorphismJson {
            domain: self.domain.names().to_vec(),
            codomain: self.codomain.names().to_vec(),
            images: self
                .domain
                .names()
                .iter()
                .zip(&self.images)
                .map(|(name, image)| (name.clone(), image.to_string()))
                .collect(),
        }
    }

    pub fn from_json(json: &HomomorphismJson) -> Result<Homomorphism> {
        let domain = Arc::new(Alphabet::new(json.domain.iter().cloned())?);
        let codomain = Arc::new(Alphabet::new(json.codomain.iter().cloned())?);
        for key in json.images.keys() {
            if domain.index_of(key).is_none() {
                return Err(Error::InvalidHomomorphism(format!(
                    "image given for unknown generator `{key}`"
                )));
            }
        }
        let images = domain
            .names()
            .iter()
            .map(|name| {
                let text = json
                    .images
                    .get(name)
                    .ok_or_else(|| Error::InvalidHomomorphism(format!("no image given for generator `{name}`")))?;
                Word::parse(text, &codomain)
            })
            .collect::<Result<Vec<_>>>()?;
        Homomorphism::new(domain, codomain, images)
    }
}

/// Serialized form: `{"domain": [...], "codomain": [...], "images": {"a": "aba", ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomomorphismJson {
    pub domain: Vec<String>,
    pub codomain: Vec<String>,
    pub images: IndexMap<String, String>,
}

impl fmt::Display for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, image)) in self.domain.names().iter().zip(&self.images).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{name}={image}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Homomorphism({self})")
    }
}

/// Splits `name=word` assignments, returning each name with its character
/// offset and the parsed image.
fn parse_assignments(text: &str, codomain: &Arc<Alphabet>) -> Result<Vec<(String, usize, Word)>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for segment in text.split(',') {
        let seg_len = segment.chars().count();
        let (lhs, rhs) = segment
            .split_once('=')
            .ok_or_else(|| Error::parse(offset, "expected an assignment `name=word`"))?;
        let lhs_trimmed = lhs.trim();
        let lead = lhs.chars().take_while(|c| c.is_whitespace()).count();
        if lhs_trimmed.is_empty() {
            return Err(Error::parse(offset, "missing generator name before `=`"));
        }
        let rhs_offset = offset + lhs.chars().count() + 1;
        let word = Word::parse(rhs, codomain).map_err(|e| match e {
            Error::Parse { position, message } => Error::Parse {
                position: position + rhs_offset,
                message,
            },
            other => other,
        })?;
        out.push((lhs_trimmed.to_string(), offset + lead, word));
        offset += seg_len + 1;
    }
    Ok(out)
}
