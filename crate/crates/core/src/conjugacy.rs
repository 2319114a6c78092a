//! Deciding doubly-twisted conjugacy, one-sidedly.
//!
//! `u` and `v` in `H` are in the same class for `φ, ψ : G → H` when
//! `u = φ(g) v ψ(g)⁻¹` for some `g ∈ G`. Distinctness is certified by a
//! remnant on the table `η = φ̂_u^v * ψ̂`: remnant forces the equalizer
//! `Eq(φ̂_u^v, ψ̂)` to be trivial, and a trivial equalizer rules out any
//! `g` with `g z g⁻¹` in it. Equality is certified by an explicit witness
//! found by bounded enumeration. Anything else is reported as unknown.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hom::Homomorphism;
use crate::remnant::{compute_remnant, RemnantReport, RemnantReportJson};
use crate::word::{check_same, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Distinct,
    Same,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Distinct => "distinct",
            Verdict::Same => "same",
            Verdict::Unknown => "unknown",
        })
    }
}

/// Which pair the successful `η` table was built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    UV,
    VU,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::UV => "(u,v)",
            Orientation::VU => "(v,u)",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    TrivialEquality,
    EtaRemnant(Orientation),
    Witness,
    None,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::TrivialEquality => f.write_str("trivial-equality"),
            Method::EtaRemnant(o) => write!(f, "eta-remnant{o}"),
            Method::Witness => f.write_str("witness"),
            Method::None => f.write_str("none"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinguishResult {
    pub verdict: Verdict,
    pub method: Method,
    pub witness: Option<Word>,
    pub eta_report: Option<RemnantReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistinguishJson {
    pub verdict: Verdict,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<RemnantReportJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<String>,
}

impl DistinguishResult {
    pub fn to_json(&self) -> DistinguishJson {
        DistinguishJson {
            verdict: self.verdict,
            method: self.method.to_string(),
            witness: self.witness.as_ref().map(ToString::to_string),
            eta: self.eta_report.as_ref().map(RemnantReport::to_json),
            orientation: match self.method {
                Method::EtaRemnant(o) => Some(o.to_string()),
                _ => None,
            },
        }
    }
}

fn check_pair(phi: &Homomorphism, psi: &Homomorphism) -> Result<()> {
    check_same(phi.domain(), psi.domain())?;
    check_same(phi.codomain(), psi.codomain())
}

fn check_tuple(phi: &Homomorphism, psi: &Homomorphism, u: &Word, v: &Word) -> Result<()> {
    check_pair(phi, psi)?;
    check_same(u.alphabet(), phi.codomain())?;
    check_same(v.alphabet(), phi.codomain())
}

/// Shortest `g` with `|g| ≤ depth` and `u = φ(g) v ψ(g)⁻¹`, least in the
/// order `a < A < b < B < …` among words of that length. `None` does not
/// prove the classes differ.
pub fn conjugacy_witness(
    phi: &Homomorphism,
    psi: &Homomorphism,
    u: &Word,
    v: &Word,
    depth: usize,
) -> Result<Option<Word>> {
    check_tuple(phi, psi, u, v)?;
    let mut search = WitnessSearch {
        phi,
        psi,
        u,
        v,
        letters: Letter::all(phi.rank()).collect(),
        prefix: Vec::with_capacity(depth),
    };
    for length in 0..=depth {
        let phi_g = Word::identity(phi.codomain());
        let psi_g = Word::identity(phi.codomain());
        if let Some(found) = search.descend(length, &phi_g, &psi_g) {
            return Ok(Some(Word::new(phi.domain(), found)?));
        }
    }
    Ok(None)
}

struct WitnessSearch<'a> {
    phi: &'a Homomorphism,
    psi: &'a Homomorphism,
    u: &'a Word,
    v: &'a Word,
    letters: Vec<Letter>,
    prefix: Vec<Letter>,
}

impl WitnessSearch<'_> {
    /// Depth-first over reduced extensions of `prefix` in letter order, so
    /// leaves come out lexicographically.
    fn descend(&mut self, remaining: usize, phi_g: &Word, psi_g: &Word) -> Option<Vec<Letter>> {
        if remaining == 0 {
            let lhs = phi_g.mul_unchecked(self.v);
            let rhs = self.u.mul_unchecked(psi_g);
            return (lhs == rhs).then(|| self.prefix.clone());
        }
        for k in 0..self.letters.len() {
            let letter = self.letters[k];
            if self.prefix.last().is_some_and(|last| last.cancels(letter)) {
                continue;
            }
            let phi_next = phi_g.mul_unchecked(&letter_image(self.phi, letter));
            let psi_next = psi_g.mul_unchecked(&letter_image(self.psi, letter));
            self.prefix.push(letter);
            let found = self.descend(remaining - 1, &phi_next, &psi_next);
            self.prefix.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

fn letter_image(h: &Homomorphism, letter: Letter) -> Word {
    let image = h.image(letter.index());
    if letter.is_inverse() {
        image.inverse()
    } else {
        image.clone()
    }
}

/// Builds `η` for `(u, v)` and reports whether it has remnant; `true`
/// certifies `[u] ≠ [v]`.
pub fn eta_has_remnant(phi: &Homomorphism, psi: &Homomorphism, u: &Word, v: &Word) -> Result<(bool, RemnantReport)> {
    let eta = Homomorphism::build_eta(phi, psi, u, v)?;
    let report = compute_remnant(&eta);
    Ok((report.has_remnant, report))
}

/// The noncancellation test stated directly on `φ^v * ψ`: it must have
/// remnant, and some letter of every remnant must also survive the products
/// `ρ(g) · v⁻¹u` and `u⁻¹v · ρ(g)`. Requires `u ≠ v`.
pub fn classdist_check(phi: &Homomorphism, psi: &Homomorphism, u: &Word, v: &Word) -> Result<bool> {
    check_tuple(phi, psi, u, v)?;
    if u == v {
        return Err(Error::Precondition(
            "the remnant class test needs distinct words u and v".into(),
        ));
    }
    let rho = phi.conjugate(v)?.free_product(psi)?;
    let report = compute_remnant(&rho);
    if !report.has_remnant {
        return Ok(false);
    }
    let right_factor = v.inverse().mul_unchecked(u);
    let left_factor = right_factor.inverse();
    Ok(report.per_generator.iter().all(|g| {
        let image = rho.image(g.generator_index);
        let (start, end) = g.span();
        let eaten_back = image.cancellation_length(&right_factor).expect("same alphabet");
        let eaten_front = left_factor.cancellation_length(image).expect("same alphabet");
        start.max(eaten_front) < end.min(image.len() - eaten_back)
    }))
}

/// Remnant of `φ * ψ * u * v` (the two words adjoined as images of extra
/// generators). `true` certifies `[u] ≠ [v]`; it is always `false` when
/// `u = 1`, `v = 1` or `u = v`.
pub fn quick_distinguish(phi: &Homomorphism, psi: &Homomorphism, u: &Word, v: &Word) -> Result<bool> {
    check_tuple(phi, psi, u, v)?;
    let table = phi.free_product(psi)?.adjoin_named(u, "u")?.adjoin_named(v, "v")?;
    Ok(compute_remnant(&table).has_remnant)
}

/// Equality check, then `η` in both orientations, then a witness search up
/// to `oracle_depth`.
pub fn distinguish(
    phi: &Homomorphism,
    psi: &Homomorphism,
    u: &Word,
    v: &Word,
    oracle_depth: usize,
) -> Result<DistinguishResult> {
    check_tuple(phi, psi, u, v)?;
    if u == v {
        return Ok(DistinguishResult {
            verdict: Verdict::Same,
            method: Method::TrivialEquality,
            witness: Some(Word::identity(phi.domain())),
            eta_report: None,
        });
    }
    for (orientation, (x, y)) in [(Orientation::UV, (u, v)), (Orientation::VU, (v, u))] {
        let (ok, report) = eta_has_remnant(phi, psi, x, y)?;
        if ok {
            return Ok(DistinguishResult {
                verdict: Verdict::Distinct,
                method: Method::EtaRemnant(orientation),
                witness: None,
                eta_report: Some(report),
            });
        }
    }
    if let Some(g) = conjugacy_witness(phi, psi, u, v, oracle_depth)? {
        return Ok(DistinguishResult {
            verdict: Verdict::Same,
            method: Method::Witness,
            witness: Some(g),
            eta_report: None,
        });
    }
    Ok(DistinguishResult {
        verdict: Verdict::Unknown,
        method: Method::None,
        witness: None,
        eta_report: None,
    })
}

/// `true` certifies `φ(G) ∩ ψ(G) = {1}`, hence `Eq(φ, ψ) = {1}`. `false`
/// is inconclusive.
pub fn equalizer_trivial_by_remnant(phi: &Homomorphism, psi: &Homomorphism) -> Result<bool> {
    Ok(compute_remnant(&phi.free_product(psi)?).has_remnant)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::word::Alphabet;

    fn f2() -> Arc<Alphabet> {
        Arc::new(Alphabet::standard(2).unwrap())
    }

    fn w(text: &str) -> Word {
        Word::parse(text, &f2()).unwrap()
    }

    fn phi_ex() -> Homomorphism {
        Homomorphism::parse("a=aba, b=Ba", &f2(), &f2()).unwrap()
    }

    fn psi_ex() -> Homomorphism {
        Homomorphism::parse("a=bbA, b=aaa", &f2(), &f2()).unwrap()
    }

    #[test]
    fn witness_examples() {
        let found = conjugacy_witness(&phi_ex(), &psi_ex(), &w("ab"), &w("ab"), 0).unwrap();
        assert!(found.unwrap().is_identity());
        let found = conjugacy_witness(&phi_ex(), &psi_ex(), &w("abaaBB"), &w("1"), 1).unwrap();
        assert_eq!(found.unwrap().to_string(), "a");
        assert_eq!(
            conjugacy_witness(&phi_ex(), &psi_ex(), &w("1"), &w("b"), 4).unwrap(),
            None
        );
    }

    #[test]
    fn witness_is_shortest_then_least() {
        // identity: u = g v g⁻¹ is ordinary conjugacy; for u = v = a both
        // 1 and a work, the identity comes first
        let id = Homomorphism::identity(&f2());
        let g = conjugacy_witness(&id, &id, &w("a"), &w("a"), 3).unwrap().unwrap();
        assert!(g.is_identity());
        // b a B = g a g⁻¹ with g = b (also g = ba, bA, … which are longer)
        let g = conjugacy_witness(&id, &id, &w("baB"), &w("a"), 3).unwrap().unwrap();
        assert_eq!(g.to_string(), "b");
    }

    #[test]
    fn eta_examples() {
        let (ok, report) = eta_has_remnant(&phi_ex(), &psi_ex(), &w("1"), &w("b")).unwrap();
        assert!(ok);
        assert_eq!(report.per_generator.len(), 6);
        let id = Homomorphism::identity(&f2());
        assert!(!eta_has_remnant(&phi_ex(), &id, &w("ab"), &w("b")).unwrap().0);
    }

    #[test]
    fn classdist_examples() {
        assert!(classdist_check(&phi_ex(), &psi_ex(), &w("1"), &w("b")).unwrap());
        assert!(matches!(
            classdist_check(&phi_ex(), &psi_ex(), &w("a"), &w("a")),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn quick_examples() {
        assert!(!quick_distinguish(&phi_ex(), &psi_ex(), &w("1"), &w("b")).unwrap());
        assert!(!quick_distinguish(&phi_ex(), &psi_ex(), &w("ab"), &w("ab")).unwrap());
    }

    #[test]
    fn worked_example_inequalities() {
        for (u, v) in [("1", "b"), ("a", "1"), ("a", "b"), ("A", "1"), ("A", "b")] {
            let result = distinguish(&phi_ex(), &psi_ex(), &w(u), &w(v), 0).unwrap();
            assert_eq!(result.verdict, Verdict::Distinct, "[{u}] vs [{v}]");
            assert!(result.eta_report.unwrap().has_remnant);
        }
    }

    #[test]
    fn distinguish_finds_witness() {
        let result = distinguish(&phi_ex(), &psi_ex(), &w("abaaBB"), &w("1"), 2).unwrap();
        assert_eq!(result.verdict, Verdict::Same);
        assert_eq!(result.method, Method::Witness);
        assert_eq!(result.witness.unwrap().to_string(), "a");

        let same = distinguish(&phi_ex(), &psi_ex(), &w("ab"), &w("ab"), 0).unwrap();
        assert_eq!(same.verdict, Verdict::Same);
        assert_eq!(same.method, Method::TrivialEquality);
    }

    #[test]
    fn equalizer_examples() {
        assert!(equalizer_trivial_by_remnant(&phi_ex(), &psi_ex()).unwrap());
        assert!(!equalizer_trivial_by_remnant(&phi_ex(), &phi_ex()).unwrap());
        let id = Homomorphism::identity(&f2());
        assert!(!equalizer_trivial_by_remnant(&id, &id).unwrap());
    }

    #[test]
    fn json_output() {
        let result = distinguish(&phi_ex(), &psi_ex(), &w("1"), &w("b"), 0).unwrap();
        let json = serde_json::to_value(result.to_json()).unwrap();
        assert_eq!(json["verdict"], "distinct");
        assert_eq!(json["method"], "eta-remnant(u,v)");
        assert_eq!(json["orientation"], "(u,v)");
        assert_eq!(json["eta"]["has_remnant"], true);
        assert!(json.get("witness").is_none());
    }
}
