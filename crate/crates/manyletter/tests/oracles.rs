//! Cross-checks against independent brute-force implementations.

use manyletter::classical::{huffman_build, typical_set, ClassicalEnsemble};
use manyletter::schumacher::quantum_typical_subspace;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Independent typical-set oracle: recomputes membership string by
/// string with log-domain arithmetic instead of probability products.
fn typical_members_log_domain(probs: &[f64], n: usize, delta: f64) -> Vec<Vec<u8>> {
    let h: f64 = probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum();
    let a = probs.len();
    let mut out = Vec::new();
    let total = (a as u64).pow(n as u32);
    for code in 0..total {
        let mut string = Vec::with_capacity(n);
        let mut rem = code;
        for _ in 0..n {
            string.push((rem % a as u64) as u8);
            rem /= a as u64;
        }
        string.reverse();
        let log_p: f64 = string.iter().map(|&x| probs[x as usize].log2()).sum();
        let per_letter = -log_p / n as f64;
        if per_letter > h - delta && per_letter < h + delta {
            out.push(string);
        }
    }
    out.sort();
    out
}

#[test]
fn typical_set_matches_log_domain_oracle() {
    let cases = [
        (vec![0.9, 0.1], 10, 0.3),
        (vec![0.9, 0.1], 12, 0.15),
        (vec![0.7, 0.2, 0.1], 8, 0.25),
        (vec![0.5, 0.5], 6, 0.05),
    ];
    for (probs, n, delta) in cases {
        let set = typical_set(&probs, n, delta).unwrap();
        let got: Vec<Vec<u8>> = set.members.iter().map(|s| s.letters().to_vec()).collect();
        let want = typical_members_log_domain(&probs, n, delta);
        assert_eq!(got, want, "probs={probs:?} n={n} delta={delta}");
    }
}

#[test]
fn quantum_typical_subspace_equals_classical_set() {
    let probs = [0.8, 0.15, 0.05];
    for n in 1..=7 {
        for delta in [0.1, 0.3, 0.5] {
            let q = quantum_typical_subspace(&probs, n, delta).unwrap();
            let c = typical_set(&probs, n, delta).unwrap();
            assert_eq!(q.members, c.members);
            assert!((q.total_prob - c.total_prob).abs() < 1e-12);
        }
    }
}

/// All prefix-code length assignments for `n` symbols with lengths at
/// most `l_max`, admissible by the Kraft inequality.
fn kraft_admissible_lengths(n: usize, l_max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![1usize; n];
    loop {
        let kraft: f64 = current.iter().map(|&l| 0.5f64.powi(l as i32)).sum();
        if kraft <= 1.0 + 1e-12 {
            out.push(current.clone());
        }
        // Advance the mixed-radix counter.
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            current[k] += 1;
            if current[k] <= l_max {
                break;
            }
            current[k] = 1;
        }
    }
}

#[test]
fn huffman_is_exhaustively_optimal_for_small_alphabets() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=4usize {
        for _ in 0..50 {
            let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..1.0)).collect();
            let total: f64 = raw.iter().sum();
            let probs: Vec<f64> = raw.iter().map(|w| w / total).collect();

            let code = huffman_build(&ClassicalEnsemble::from_probs(&probs).unwrap());
            let huff = code.expected_length(&probs);

            // An optimal prefix code for n symbols never needs lengths
            // beyond n − 1.
            let best = kraft_admissible_lengths(n, n.max(2) - 1)
                .into_iter()
                .map(|ls| {
                    ls.iter()
                        .zip(&probs)
                        .map(|(&l, &p)| p * l as f64)
                        .sum::<f64>()
                })
                .fold(f64::INFINITY, f64::min);
            assert!(
                (huff - best).abs() < 1e-9,
                "n={n} probs={probs:?}: huffman {huff} vs optimum {best}"
            );
        }
    }
}

#[test]
fn schumacher_fidelity_agrees_with_dense_matrix_oracle() {
    // Dense-matrix check of F̄ = Σ p(x)|⟨x|D E|x⟩|² for a small code,
    // against the library's sparse Kraus evaluation.
    use manyletter::schumacher::{build_schumacher, JunkTarget, LetterEnsemble};

    let eigs = [0.85, 0.15];
    let code = build_schumacher(&eigs, 3, 0.35, 2, JunkTarget::EmptyMessage).unwrap();
    let ensemble = LetterEnsemble::eigenbasis(&eigs);
    let blocks = ensemble.block_ensemble(3).unwrap();

    let (fbar_lib, perr) = code.pair.confidence(&blocks).unwrap();

    // Oracle: fidelity of each member by explicit double sum with naive
    // re-application of each operator pair.
    let mut fbar = 0.0;
    for (p, phi) in blocks.members() {
        let mut f = 0.0;
        for enc in code.pair.encoder.apply_to_vector(phi).unwrap() {
            for dec in code.pair.decoder.apply_to_vector(&enc).unwrap() {
                f += phi.inner_product(&dec).unwrap().norm_sqr();
            }
        }
        fbar += p * f;
    }
    assert!((fbar - fbar_lib).abs() < 1e-12);
    assert!((perr - (1.0 - fbar_lib)).abs() < 1e-12);
}

#[test]
fn entropy_matches_direct_log_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let raw: Vec<f64> = (0..4).map(|_| rng.gen_range(0.05..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let probs: Vec<f64> = raw.iter().map(|w| w / total).collect();
        let rho = manyletter::matrix::diagonal_letter_matrix(&probs);
        let sigma = manyletter::MessageMatrix::canonical(&rho, 1).unwrap();
        let direct: f64 = probs.iter().map(|&p| -p * p.log2()).sum();
        assert!((sigma.von_neumann_entropy() - direct).abs() < 1e-10);
    }
}
