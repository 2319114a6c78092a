mod common;

use std::sync::Arc;

use proptest::prelude::*;
use twistclass::conjugacy::{
    classdist_check, conjugacy_witness, distinguish, eta_has_remnant, quick_distinguish, Verdict,
};
use twistclass::{compute_remnant, has_remnant, Alphabet, Homomorphism, Letter, Word};

use common::{alphabet, remnant_oracle};

fn word_in(alpha: Arc<Alphabet>, max_len: usize) -> impl Strategy<Value = Word> {
    let rank = alpha.rank();
    prop::collection::vec((0..rank, any::<bool>()), 0..=max_len)
        .prop_map(move |raw| Word::new(&alpha, raw.into_iter().map(|(i, inv)| Letter::new(i, inv))).unwrap())
}

fn hom_in(domain: Arc<Alphabet>, codomain: Arc<Alphabet>, max_len: usize) -> impl Strategy<Value = Homomorphism> {
    prop::collection::vec(word_in(Arc::clone(&codomain), max_len), domain.rank())
        .prop_map(move |images| Homomorphism::new(Arc::clone(&domain), Arc::clone(&codomain), images).unwrap())
}

/// `(φ, ψ)` on `F_n → F_m` with `n, m ≤ 3`.
fn pair(max_len: usize) -> impl Strategy<Value = (Homomorphism, Homomorphism)> {
    (1usize..=3, 1usize..=3).prop_flat_map(move |(n, m)| {
        let (g, h) = (alphabet(n), alphabet(m));
        (hom_in(Arc::clone(&g), Arc::clone(&h), max_len), hom_in(g, h, max_len))
    })
}

fn f2_word(max_len: usize) -> impl Strategy<Value = Word> {
    word_in(alphabet(2), max_len)
}

proptest! {
    #[test]
    fn multiplication_is_associative(x in f2_word(8), y in f2_word(8), z in f2_word(8)) {
        let left = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let right = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_is_an_involution(w in f2_word(10)) {
        prop_assert_eq!(w.inverse().inverse(), w.clone());
        prop_assert!(w.multiply(&w.inverse()).unwrap().is_identity());
        prop_assert!(w.inverse().multiply(&w).unwrap().is_identity());
    }

    #[test]
    fn length_accounts_for_cancellation(x in f2_word(10), y in f2_word(10)) {
        let k = x.cancellation_length(&y).unwrap();
        prop_assert!(k <= x.len().min(y.len()));
        prop_assert_eq!(x.multiply(&y).unwrap().len(), x.len() + y.len() - 2 * k);
    }

    #[test]
    fn parse_inverts_format(w in word_in(alphabet(4), 12)) {
        prop_assert_eq!(Word::parse(&w.to_string(), w.alphabet()).unwrap(), w);
    }

    #[test]
    fn format_parse_is_idempotent(
        terms in prop::collection::vec((0usize..3, any::<bool>(), -3i32..=3, any::<bool>()), 1..8)
    ) {
        let alpha = alphabet(3);
        let mut text = String::new();
        for (i, upper, exp, space) in terms {
            let c = (b'a' + i as u8) as char;
            text.push(if upper { c.to_ascii_uppercase() } else { c });
            if exp != 1 {
                text.push_str(&format!("^{exp}"));
            }
            if space {
                text.push(' ');
            }
        }
        let once = Word::parse(&text, &alpha).unwrap().to_string();
        let twice = Word::parse(&once, &alpha).unwrap().to_string();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn apply_is_a_homomorphism(
        h in hom_in(alphabet(2), alphabet(3), 5), x in f2_word(6), y in f2_word(6)
    ) {
        let xy = x.multiply(&y).unwrap();
        let expected = h.apply(&x).unwrap().multiply(&h.apply(&y).unwrap()).unwrap();
        prop_assert_eq!(h.apply(&xy).unwrap(), expected);
    }

    #[test]
    fn identity_hom_fixes_words(w in f2_word(10)) {
        prop_assert_eq!(Homomorphism::identity(&alphabet(2)).apply(&w).unwrap(), w);
    }

    #[test]
    fn conjugation_undoes(h in hom_in(alphabet(2), alphabet(2), 6), v in f2_word(5)) {
        let back = h.conjugate(&v).unwrap().conjugate(&v.inverse()).unwrap();
        prop_assert_eq!(back, h);
    }

    #[test]
    fn eta_restricts_to_its_factors((phi, psi) in pair(5), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let u = common::random_word(&mut rng, phi.codomain(), 4);
        let v = common::random_word(&mut rng, phi.codomain(), 4);
        let eta = Homomorphism::build_eta(&phi, &psi, &u, &v).unwrap();
        let n = phi.rank();
        prop_assert_eq!(eta.rank(), 2 * n + 2);
        let conj = phi.conjugate(&v).unwrap();
        for i in 0..n {
            prop_assert_eq!(eta.image(i).letters(), conj.image(i).letters());
            prop_assert_eq!(eta.image(n + 1 + i).letters(), psi.image(i).letters());
        }
        prop_assert_eq!(eta.image(2 * n + 1).to_string(), "z");
    }

    /// If `v = φ(g) u ψ(g)⁻¹` then `η(g z g⁻¹) = ψ̂(g z g⁻¹)`, i.e. `η` agrees
    /// on `g z g⁻¹` and its primed copy.
    #[test]
    fn twisted_relation_puts_gzg_in_equalizer(
        (phi, psi) in pair(4), seed in any::<u64>()
    ) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_word(&mut rng, phi.domain(), 4);
        let u = common::random_word(&mut rng, phi.codomain(), 4);
        let v = phi.apply(&g).unwrap().multiply(&u).unwrap().multiply(&psi.apply(&g).unwrap().inverse()).unwrap();
        let eta = Homomorphism::build_eta(&phi, &psi, &u, &v).unwrap();
        let n = phi.rank();
        let lift = |offset: usize| {
            let z = Letter::generator(offset + n);
            let shifted: Vec<Letter> = g.letters().iter().map(|l| Letter::new(l.index() + offset, l.is_inverse())).collect();
            let letters = shifted.iter().copied()
                .chain(std::iter::once(z))
                .chain(shifted.iter().rev().map(|l| l.inverse()));
            Word::new(eta.domain(), letters).unwrap()
        };
        prop_assert_eq!(eta.apply(&lift(0)).unwrap(), eta.apply(&lift(n + 1)).unwrap());
    }

    #[test]
    fn remnant_matches_subword_oracle(h in (1usize..=3, 1usize..=3).prop_flat_map(|(n, m)| hom_in(alphabet(n), alphabet(m), 6))) {
        let report = compute_remnant(&h);
        let oracle = remnant_oracle(&h);
        for (g, expected) in report.per_generator.iter().zip(oracle) {
            match expected {
                Some(span) => prop_assert_eq!(g.span(), span),
                None => prop_assert!(g.remnant.is_empty()),
            }
        }
    }

    #[test]
    fn has_remnant_needs_nonempty_images(h in hom_in(alphabet(2), alphabet(2), 3)) {
        if has_remnant(&h) {
            prop_assert!(h.images().iter().all(|w| !w.is_empty()));
        }
    }

    /// Appending a letter the images never use cannot shrink a remnant.
    #[test]
    fn appending_fresh_letter_keeps_remnants(h in (1usize..=3, 1usize..=3).prop_flat_map(|(n, m)| hom_in(alphabet(n), alphabet(m), 6))) {
        let wider = Arc::new(h.codomain().extended("z"));
        let fresh = Word::generator(&wider, h.codomain().rank()).unwrap();
        let images = h.images().iter().map(|w| w.embed(&wider).unwrap().multiply(&fresh).unwrap()).collect();
        let grown = Homomorphism::new(Arc::clone(h.domain()), wider, images).unwrap();
        let before = compute_remnant(&h);
        let after = compute_remnant(&grown);
        for (b, a) in before.per_generator.iter().zip(&after.per_generator) {
            prop_assert!(a.remnant.len() >= b.remnant.len());
        }
    }

    #[test]
    fn remnant_follows_generator_order(h in hom_in(alphabet(3), alphabet(2), 6), rotate in 0usize..3) {
        let perm: Vec<usize> = (0..3).map(|k| (k + rotate) % 3).collect();
        let images = perm.iter().map(|&k| h.image(k).clone()).collect();
        let permuted = Homomorphism::new(Arc::clone(h.domain()), Arc::clone(h.codomain()), images).unwrap();
        let original = compute_remnant(&h);
        let moved = compute_remnant(&permuted);
        for (k, &src) in perm.iter().enumerate() {
            let (a, b) = (&moved.per_generator[k], &original.per_generator[src]);
            prop_assert_eq!((a.left_cancel, a.right_cancel, &a.remnant), (b.left_cancel, b.right_cancel, &b.remnant));
        }
        prop_assert_eq!(original.has_remnant, moved.has_remnant);
    }

    #[test]
    fn conjugated_map_with_identity_has_no_remnant(phi in hom_in(alphabet(2), alphabet(2), 8), v in f2_word(5)) {
        let id = Homomorphism::identity(&alphabet(2));
        prop_assert!(!has_remnant(&phi.conjugate(&v).unwrap().free_product(&id).unwrap()));
    }

    #[test]
    fn certificates_are_ordered(
        phi in hom_in(alphabet(2), alphabet(2), 9),
        psi in hom_in(alphabet(2), alphabet(2), 9),
        u in f2_word(6),
        v in f2_word(6),
    ) {
        let quick = quick_distinguish(&phi, &psi, &u, &v).unwrap();
        if u == v {
            prop_assert!(!quick);
            return Ok(());
        }
        let classdist = classdist_check(&phi, &psi, &u, &v).unwrap();
        let (eta, _) = eta_has_remnant(&phi, &psi, &u, &v).unwrap();
        prop_assert!(!quick || classdist);
        // both routes test the same junctions once u ≠ v
        prop_assert_eq!(classdist, eta);
        if eta {
            prop_assert_eq!(distinguish(&phi, &psi, &u, &v, 0).unwrap().verdict, Verdict::Distinct);
        }
    }

    #[test]
    fn verdict_is_symmetric(
        phi in hom_in(alphabet(2), alphabet(2), 5),
        psi in hom_in(alphabet(2), alphabet(2), 5),
        u in f2_word(4),
        v in f2_word(4),
    ) {
        let forward = distinguish(&phi, &psi, &u, &v, 0).unwrap().verdict == Verdict::Distinct;
        let backward = distinguish(&phi, &psi, &v, &u, 0).unwrap().verdict == Verdict::Distinct;
        prop_assert_eq!(forward, backward);
    }

    #[test]
    fn equal_words_are_same(phi in hom_in(alphabet(2), alphabet(2), 5), psi in hom_in(alphabet(2), alphabet(2), 5), u in f2_word(6)) {
        let result = distinguish(&phi, &psi, &u, &u, 0).unwrap();
        prop_assert_eq!(result.verdict, Verdict::Same);
        prop_assert!(result.witness.unwrap().is_identity());
    }

    #[test]
    fn identity_psi_never_certifies(phi in hom_in(alphabet(2), alphabet(2), 6), u in f2_word(5), v in f2_word(5)) {
        let id = Homomorphism::identity(&alphabet(2));
        prop_assert_ne!(distinguish(&phi, &id, &u, &v, 0).unwrap().verdict, Verdict::Distinct);
    }

    #[test]
    fn constructed_equal_classes_are_never_distinct(
        (phi, psi) in pair(4), seed in any::<u64>()
    ) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_word(&mut rng, phi.domain(), 3);
        let v = common::random_word(&mut rng, phi.codomain(), 4);
        let u = phi.apply(&g).unwrap().multiply(&v).unwrap().multiply(&psi.apply(&g).unwrap().inverse()).unwrap();
        let result = distinguish(&phi, &psi, &u, &v, 3).unwrap();
        prop_assert_eq!(result.verdict, Verdict::Same);
        let witness = result.witness.unwrap();
        let check = phi.apply(&witness).unwrap().multiply(&v).unwrap().multiply(&psi.apply(&witness).unwrap().inverse()).unwrap();
        prop_assert_eq!(check, u.clone());
        prop_assert!(conjugacy_witness(&phi, &psi, &u, &v, g.len()).unwrap().is_some());
    }
}
