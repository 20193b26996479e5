//! Property-based invariants for the coding primitives.

use manyletter::classical::{huffman_build, ClassicalEnsemble};
use manyletter::{
    translate::BlockTranslator, BasisString, LengthMode, ManyLetterVector, MessageMatrix,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn distribution(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(1.0e-6..1.0f64, 2..=max_len).prop_map(|raw| {
        let total: f64 = raw.iter().sum();
        raw.into_iter().map(|w| w / total).collect()
    })
}

proptest! {
    #[test]
    fn huffman_is_prefix_free_with_kraft_equality(probs in distribution(64)) {
        let code = huffman_build(&ClassicalEnsemble::from_probs(&probs).unwrap());
        prop_assert!(code.is_prefix_free());
        prop_assert!(code.kraft_ok());
        // A Huffman tree is full, so Kraft holds with equality.
        prop_assert!((code.kraft_sum() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn huffman_satisfies_entropy_sandwich(probs in distribution(64)) {
        let ensemble = ClassicalEnsemble::from_probs(&probs).unwrap();
        let code = huffman_build(&ensemble);
        let h = ensemble.shannon_entropy();
        let lbar = code.expected_length(&probs);
        prop_assert!(lbar >= h - 1e-9, "mean length {lbar} below entropy {h}");
        prop_assert!(lbar < h + 1.0, "mean length {lbar} not below {h}+1");
    }

    #[test]
    fn huffman_round_trips_random_messages(
        probs in distribution(16),
        indices in prop::collection::vec(0usize..16, 0..40),
    ) {
        let code = huffman_build(&ClassicalEnsemble::from_probs(&probs).unwrap());
        let message: Vec<usize> = indices.into_iter().map(|i| i % probs.len()).collect();
        let bits = code.encode(&message).unwrap();
        prop_assert_eq!(code.decode(&bits).unwrap(), message);
    }

    #[test]
    fn ideal_code_mean_length_is_entropy(probs in distribution(32)) {
        let ensemble = ClassicalEnsemble::from_probs(&probs).unwrap();
        let code = manyletter::PrefixCode::ideal(&ensemble);
        let h = ensemble.shannon_entropy();
        prop_assert!((code.expected_length(&probs) - h).abs() < 1e-9);
        prop_assert!(code.kraft_ok());
    }

    #[test]
    fn translation_preserves_norms_and_overlaps(
        seed_amps in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 2..8),
        source_dim in 2usize..4,
        code_dim in 2usize..4,
        n in 1usize..3,
    ) {
        let t = BlockTranslator::new(source_dim, code_dim, n).unwrap();
        let channel = t.message_translator(2 * n).unwrap();

        // Random vector over aligned strings of lengths 0, n, 2n.
        let mut comps = Vec::new();
        for (i, (re, im)) in seed_amps.iter().enumerate() {
            let len = n * (i % 3);
            let space = source_dim.pow(len as u32);
            let s = BasisString::from_index(source_dim, len, i % space);
            comps.push((s, Complex64::new(*re, *im)));
        }
        let raw = ManyLetterVector::from_components(source_dim, comps).unwrap();
        prop_assume!(raw.norm() > 1e-6);
        let phi = raw.normalized().unwrap();

        let images = channel.apply_to_vector(&phi).unwrap();
        prop_assert_eq!(images.len(), 1);
        prop_assert!((images[0].norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn symbol_code_channel_is_isometric_on_random_vectors(
        probs in distribution(3),
        seed_amps in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 2..8),
    ) {
        let code = manyletter::lossless::build_symbol_code(&probs, LengthMode::Integer).unwrap();
        let dim = probs.len();
        let channel = code.channel(3).unwrap();

        let mut comps = Vec::new();
        for (i, (re, im)) in seed_amps.iter().enumerate() {
            let len = i % 4;
            let space = dim.pow(len as u32);
            let s = BasisString::from_index(dim, len, i % space);
            comps.push((s, Complex64::new(*re, *im)));
        }
        let raw = ManyLetterVector::from_components(dim, comps).unwrap();
        prop_assume!(raw.norm() > 1e-6);
        let phi = raw.normalized().unwrap();

        let images = channel.apply_to_vector(&phi).unwrap();
        prop_assert!((images[0].norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn general_code_round_trip_on_random_vectors(
        probs in distribution(4),
        seed_amps in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 2..6),
    ) {
        // Source matrix on single letters; messages roam lengths 0..3,
        // so components outside the coded subspace are exercised.
        let rho = manyletter::matrix::diagonal_letter_matrix(&probs);
        let sigma = MessageMatrix::canonical(&rho, 1).unwrap();
        let code = manyletter::lossless::build_general_code(&sigma, LengthMode::Integer).unwrap();

        let dim = probs.len();
        let mut comps = Vec::new();
        for (i, (re, im)) in seed_amps.iter().enumerate() {
            let len = i % 3;
            let space = dim.pow(len as u32);
            let s = BasisString::from_index(dim, len, i % space);
            comps.push((s, Complex64::new(*re, *im)));
        }
        let raw = ManyLetterVector::from_components(dim, comps).unwrap();
        prop_assume!(raw.norm() > 1e-6);
        let phi = raw.normalized().unwrap();

        let psi = code.encode(&phi).unwrap();
        prop_assert!((psi.norm() - 1.0).abs() < 1e-10);
        let (back, residual) = code.decode(&psi).unwrap();
        prop_assert!(residual < 1e-10);
        let overlap = phi.inner_product(&back).unwrap();
        prop_assert!((overlap.re - 1.0).abs() < 1e-10 && overlap.im.abs() < 1e-10);
    }

    #[test]
    fn grand_canonical_matrix_is_well_formed(
        probs in distribution(2),
        raw_lambdas in prop::collection::vec(0.01..1.0f64, 1..5),
    ) {
        let total: f64 = raw_lambdas.iter().sum();
        let lambdas: Vec<f64> = raw_lambdas.iter().map(|w| w / total).collect();
        let rho = manyletter::matrix::diagonal_letter_matrix(&probs);
        let sigma = MessageMatrix::grand_canonical(&lambdas, &rho, lambdas.len()).unwrap();
        prop_assert!((sigma.trace() - 1.0).abs() < 1e-10);
        // Entropy decomposition over orthogonal length sectors.
        let s_rho = manyletter::matrix::entropy_of_spectrum(&probs);
        let h_lambda = manyletter::matrix::shannon_entropy_of(&lambdas);
        let mean_n: f64 = lambdas.iter().enumerate().map(|(n, &l)| l * n as f64).sum();
        let expect = h_lambda + mean_n * s_rho;
        prop_assert!((sigma.von_neumann_entropy() - expect).abs() < 1e-8);
    }
}
