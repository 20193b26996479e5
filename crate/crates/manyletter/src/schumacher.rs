//! Lossy typical-subspace compression.
//!
//! The whole module works in the eigenbasis of the letter matrix ρ:
//! source basis strings are strings of eigenvector indices, so the
//! typical subspace is spanned by basis strings and every encoder
//! column is sparse. Callers with a non-diagonal ρ first rotate their
//! ensemble into the eigenbasis (see [`eigenbasis_ensemble`]).

use std::collections::HashSet;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::alphabet::BasisString;
use crate::channel::{CodePair, KrausChannel, SparseOperator, OP_TOL};
use crate::classical::{self, TypicalSet};
use crate::error::{Error, Result};
use crate::matrix::{diagonalize_letter_matrix, MessageEnsemble, MessageMatrix};
use crate::vector::ManyLetterVector;

/// Typical subspace of `ρ^⊗N` in the ρ-eigenbasis. For `N = 0` the
/// subspace is the span of the empty message with `P_T = 1`.
#[derive(Clone, Debug)]
pub struct QuantumTypicalSubspace {
    pub n: usize,
    pub delta: f64,
    /// Typical eigen-index strings, sorted lexicographically.
    pub members: Vec<BasisString>,
    /// `P_T = Tr{ρ^⊗N Π_T}`.
    pub total_prob: f64,
    /// Von Neumann entropy of ρ (= Shannon entropy of its spectrum).
    pub entropy: f64,
}

impl QuantumTypicalSubspace {
    pub fn dim(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, s: &BasisString) -> bool {
        self.members.binary_search(s).is_ok()
    }

    /// `‖Π_T φ‖²` for a sector-`N` vector in eigen coordinates.
    pub fn projection_weight(&self, phi: &ManyLetterVector) -> f64 {
        phi.components()
            .filter(|(s, _)| self.contains(s))
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }
}

/// Enumerates the typical subspace of `ρ^⊗N` from ρ's spectrum.
pub fn quantum_typical_subspace(
    eigs: &[f64],
    n: usize,
    delta: f64,
) -> Result<QuantumTypicalSubspace> {
    if n == 0 {
        return Ok(QuantumTypicalSubspace {
            n: 0,
            delta,
            members: vec![BasisString::empty()],
            total_prob: 1.0,
            entropy: classical::shannon_entropy_unchecked(eigs),
        });
    }
    let set: TypicalSet = classical::typical_set(eigs, n, delta)?;
    Ok(QuantumTypicalSubspace {
        n,
        delta,
        members: set.members,
        total_prob: set.total_prob,
        entropy: set.entropy,
    })
}

/// Decoder target for code strings outside the codeword span.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum JunkTarget {
    /// Decode junk to the empty message, orthogonal to every source
    /// block. Round-trip fidelity then equals the closed form
    /// `Σ p ‖Π_T φ‖⁴` exactly.
    #[default]
    EmptyMessage,
    /// Decode junk to the lexicographically first non-typical source
    /// string (the full typical set falls back to the empty message).
    FirstNonTypical,
}

/// One sector of a Schumacher code: codeword table and junk strings.
#[derive(Clone, Debug)]
pub struct SectorCode {
    pub typical: QuantumTypicalSubspace,
    /// Code block length for this sector.
    pub rate: usize,
    /// `log₂(dim V) / log₂(code_dim)`, the real-valued rate floor.
    pub ideal_rate: f64,
    /// Typical string → code string, in lexicographic source order.
    pub codewords: Vec<(BasisString, BasisString)>,
    /// Codeword absorbing all non-typical source components, when the
    /// complement is nonempty.
    pub junk_codeword: Option<BasisString>,
}

/// A typical-subspace compression code with explicit Kraus channels.
#[derive(Clone, Debug)]
pub struct SchumacherCode {
    pub source_dim: usize,
    pub code_dim: usize,
    pub sectors: Vec<SectorCode>,
    pub junk_target: JunkTarget,
    pub pair: CodePair,
}

impl SchumacherCode {
    /// The single sector of a standard (fixed block length) code.
    pub fn sector(&self) -> &SectorCode {
        &self.sectors[0]
    }
}

fn pow_guarded(base: usize, exp: usize) -> Result<u128> {
    (base as u128)
        .checked_pow(exp as u32)
        .filter(|&c| c <= classical::ENUMERATION_GUARD)
        .ok_or(Error::EnumerationGuard {
            count: u128::MAX,
            guard: classical::ENUMERATION_GUARD,
        })
}

/// Picks a code block length and codewords for one sector, skipping
/// strings already used by other sectors. Returns the sector table and
/// records the new assignments in `used`.
fn assign_sector(
    typical: QuantumTypicalSubspace,
    code_dim: usize,
    needs_junk: bool,
    used: &mut HashSet<BasisString>,
) -> Result<SectorCode> {
    let t = typical.dim();
    let need = t + usize::from(needs_junk);
    let ideal_rate = if t > 0 {
        (t as f64).log2() / (code_dim as f64).log2()
    } else {
        0.0
    };

    let mut rate = 0usize;
    loop {
        let cap = pow_guarded(code_dim, rate)?;
        let used_here = used.iter().filter(|s| s.len() == rate).count() as u128;
        if cap - used_here >= need as u128 {
            break;
        }
        rate += 1;
    }

    let mut free: Vec<BasisString> = (0..pow_guarded(code_dim, rate)? as usize)
        .map(|i| BasisString::from_index(code_dim, rate, i))
        .filter(|s| !used.contains(s))
        .take(need)
        .collect();
    free.reverse();
    let codewords: Vec<(BasisString, BasisString)> = typical
        .members
        .iter()
        .map(|a| {
            let c = free.pop().expect("capacity checked above");
            used.insert(c.clone());
            (a.clone(), c)
        })
        .collect();
    let junk_codeword = if needs_junk {
        let c = free.pop().expect("capacity checked above");
        used.insert(c.clone());
        Some(c)
    } else {
        None
    };

    Ok(SectorCode {
        typical,
        rate,
        ideal_rate,
        codewords,
        junk_codeword,
    })
}

/// Builds encoder and decoder channels from sector tables.
fn build_channels(
    source_dim: usize,
    code_dim: usize,
    sectors: &[SectorCode],
    junk_target: JunkTarget,
) -> Result<CodePair> {
    let mut enc_ops: Vec<SparseOperator> = Vec::new();
    let mut dec_ops: Vec<SparseOperator> = Vec::new();
    let mut enc_typ = SparseOperator::new();
    let mut dec_typ = SparseOperator::new();
    let mut source_domain: Vec<BasisString> = Vec::new();
    let mut code_domain: Vec<BasisString> = Vec::new();

    for sector in sectors {
        let n = sector.typical.n;
        let assigned: HashSet<&BasisString> =
            sector.codewords.iter().map(|(_, c)| c).collect();

        for (a, c) in &sector.codewords {
            enc_typ.set_column(a.clone(), ManyLetterVector::basis(code_dim, c.clone())?);
            dec_typ.set_column(c.clone(), ManyLetterVector::basis(source_dim, a.clone())?);
        }

        // Non-typical source strings each get their own Kraus operator
        // mapping them to the sector junk codeword; a single coherent
        // sum would violate completeness.
        let count = pow_guarded(source_dim, n)? as usize;
        let junk_source: ManyLetterVector = match junk_target {
            JunkTarget::EmptyMessage => ManyLetterVector::empty_message(source_dim),
            JunkTarget::FirstNonTypical => (0..count)
                .map(|i| BasisString::from_index(source_dim, n, i))
                .find(|s| !sector.typical.contains(s))
                .map(|s| ManyLetterVector::basis(source_dim, s))
                .transpose()?
                .unwrap_or_else(|| ManyLetterVector::empty_message(source_dim)),
        };
        for i in 0..count {
            let a = BasisString::from_index(source_dim, n, i);
            source_domain.push(a.clone());
            if !sector.typical.contains(&a) {
                let junk = sector
                    .junk_codeword
                    .as_ref()
                    .expect("complement is nonempty, so a junk codeword was assigned");
                enc_ops.push(SparseOperator::dyad(
                    a,
                    ManyLetterVector::basis(code_dim, junk.clone())?,
                ));
            }
        }

        // Decoder junk: every unassigned code string of this sector's
        // block length (including the junk codeword) maps to the junk
        // source target. Lengths shared between sectors are deduplicated
        // by the channel's domain handling; skip strings already claimed
        // as codewords by any sector.
        let code_count = pow_guarded(code_dim, sector.rate)? as usize;
        for i in 0..code_count {
            let k = BasisString::from_index(code_dim, sector.rate, i);
            code_domain.push(k.clone());
            if !assigned.contains(&k) {
                if dec_typ.column(&k).is_some() {
                    // Claimed as a codeword by another sector of the
                    // same block length.
                    continue;
                }
                dec_ops.push(SparseOperator::dyad(k, junk_source.clone()));
            }
        }
    }

    // Dedup junk decoder operators across sectors that share a block
    // length: keep the first operator for each code string.
    let mut seen: HashSet<BasisString> = HashSet::new();
    let mut late_claimed: Vec<SparseOperator> = Vec::new();
    for op in dec_ops {
        let key = op.columns().next().expect("dyad has one column").0.clone();
        if dec_typ.column(&key).is_some() || !seen.insert(key) {
            continue;
        }
        late_claimed.push(op);
    }
    let dec_ops = late_claimed;

    let mut encoder_ops = vec![enc_typ];
    encoder_ops.extend(enc_ops);
    let mut decoder_ops = vec![dec_typ];
    decoder_ops.extend(dec_ops);

    let encoder = KrausChannel::new(
        source_dim,
        code_dim,
        encoder_ops,
        source_domain.clone(),
        code_domain.clone(),
    );
    let decoder = KrausChannel::new(code_dim, source_dim, decoder_ops, code_domain, source_domain);
    Ok(CodePair { encoder, decoder })
}

/// Standard Schumacher code on `ρ^⊗N`, given ρ's spectrum.
pub fn build_schumacher(
    eigs: &[f64],
    n: usize,
    delta: f64,
    code_dim: usize,
    junk_target: JunkTarget,
) -> Result<SchumacherCode> {
    if code_dim < 2 {
        return Err(Error::Invalid("code alphabet needs at least two letters".into()));
    }
    let source_dim = eigs.len();
    let typical = quantum_typical_subspace(eigs, n, delta)?;
    let needs_junk = (typical.dim() as u128) < pow_guarded(source_dim, n)?;
    let mut used = HashSet::new();
    let sector = assign_sector(typical, code_dim, needs_junk, &mut used)?;
    let sectors = vec![sector];
    let pair = build_channels(source_dim, code_dim, &sectors, junk_target)?;
    Ok(SchumacherCode {
        source_dim,
        code_dim,
        sectors,
        junk_target,
        pair,
    })
}

/// Confidence report for a Schumacher code.
#[derive(Clone, Copy, Debug)]
pub struct ConfidenceReport {
    /// Exact average fidelity `F̄ = Σ p(x^N) ‖Π_T x^N‖⁴`.
    pub fbar: f64,
    /// The guarantee `2 P_T − 1`.
    pub bound: f64,
    /// `P_T = Tr{ρ^⊗N Π_T}`.
    pub p_t: f64,
}

/// A letter ensemble in ρ-eigenbasis coordinates: probabilities and
/// single-letter state vectors.
#[derive(Clone, Debug)]
pub struct LetterEnsemble {
    pub probs: Vec<f64>,
    /// Letter coordinates in the eigenbasis; each of length `dim`.
    pub letters: Vec<Vec<Complex64>>,
}

impl LetterEnsemble {
    /// The eigenbasis ensemble of a diagonal ρ: letters are the
    /// eigenvectors themselves.
    pub fn eigenbasis(eigs: &[f64]) -> Self {
        let d = eigs.len();
        let letters = (0..d)
            .map(|i| {
                let mut v = vec![Complex64::new(0.0, 0.0); d];
                v[i] = Complex64::new(1.0, 0.0);
                v
            })
            .collect();
        LetterEnsemble {
            probs: eigs.to_vec(),
            letters,
        }
    }

    pub fn dim(&self) -> usize {
        self.letters.first().map_or(0, |l| l.len())
    }

    /// `Σ p |x⟩⟨x|` in eigen coordinates.
    pub fn density(&self) -> DMatrix<Complex64> {
        let d = self.dim();
        let mut rho = DMatrix::zeros(d, d);
        for (p, l) in self.probs.iter().zip(&self.letters) {
            for i in 0..d {
                for j in 0..d {
                    rho[(i, j)] += Complex64::from(*p) * l[i] * l[j].conj();
                }
            }
        }
        rho
    }

    /// Checks that the ensemble averages to `diag(eigs)` within `tol`.
    pub fn check_matches_spectrum(&self, eigs: &[f64], tol: f64) -> Result<()> {
        let rho = self.density();
        let d = self.dim();
        if eigs.len() != d {
            return Err(Error::AlphabetMismatch {
                expected: eigs.len(),
                found: d,
            });
        }
        let mut dev = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let target = if i == j {
                    Complex64::from(eigs[i])
                } else {
                    Complex64::new(0.0, 0.0)
                };
                dev = dev.max((rho[(i, j)] - target).norm());
            }
        }
        if dev > tol {
            return Err(Error::Invalid(format!(
                "letter ensemble deviates from the given spectrum by {dev:.3e}"
            )));
        }
        Ok(())
    }

    /// One letter as a sector-1 many-letter vector.
    pub fn letter_vector(&self, x: usize) -> Result<ManyLetterVector> {
        let d = self.dim();
        ManyLetterVector::from_components(
            d,
            self.letters[x]
                .iter()
                .enumerate()
                .filter(|(_, a)| a.norm() > 0.0)
                .map(|(i, a)| (BasisString::new(vec![i as u8]), *a)),
        )
    }

    /// The full product ensemble `{p(x^N), |x^N⟩}` over blocks of `N`
    /// letters (guarded enumeration).
    pub fn block_ensemble(&self, n: usize) -> Result<MessageEnsemble> {
        let a = self.probs.len();
        pow_guarded(a, n)?;
        let singles: Vec<ManyLetterVector> = (0..a)
            .map(|x| self.letter_vector(x))
            .collect::<Result<_>>()?;
        let mut members: Vec<(f64, ManyLetterVector)> =
            vec![(1.0, ManyLetterVector::empty_message(self.dim()))];
        for _ in 0..n {
            let mut next = Vec::with_capacity(members.len() * a);
            for (p, v) in &members {
                for (single, &prob) in singles.iter().zip(&self.probs) {
                    if prob == 0.0 {
                        continue;
                    }
                    next.push((p * prob, v.tensor_concat(single, usize::MAX)?));
                }
            }
            members = next;
        }
        MessageEnsemble::new(members)
    }
}

/// Exact confidence of a standard Schumacher code for a letter
/// ensemble averaging to the code's source spectrum.
pub fn schumacher_confidence(
    code: &SchumacherCode,
    eigs: &[f64],
    ensemble: &LetterEnsemble,
) -> Result<ConfidenceReport> {
    ensemble.check_matches_spectrum(eigs, OP_TOL)?;
    let sector = code.sector();
    let blocks = ensemble.block_ensemble(sector.typical.n)?;
    let mut fbar = 0.0;
    for (p, phi) in blocks.members() {
        let w = sector.typical.projection_weight(phi);
        fbar += p * w * w;
    }
    let p_t = sector.typical.total_prob;
    Ok(ConfidenceReport {
        fbar,
        bound: 2.0 * p_t - 1.0,
        p_t,
    })
}

/// Generalized (grand canonical) Schumacher code: one typical sector
/// per message length up to `l_max`, codewords chosen collision-free
/// across sectors, junk decoded to the empty message.
pub fn generalized_schumacher(
    lambdas: &[f64],
    eigs: &[f64],
    delta: f64,
    code_dim: usize,
    l_max: usize,
) -> Result<SchumacherCode> {
    if code_dim < 2 {
        return Err(Error::Invalid("code alphabet needs at least two letters".into()));
    }
    if lambdas.len() > l_max + 1 && lambdas[l_max + 1..].iter().any(|&l| l > 0.0) {
        return Err(Error::TruncationOverflow {
            length: lambdas.len() - 1,
            l_max,
        });
    }
    // Zero sector weights are allowed (unlike letter distributions).
    for &lam in lambdas {
        if !(0.0..=1.0).contains(&lam) {
            return Err(Error::NonPositiveProbability { value: lam });
        }
    }
    let sum: f64 = lambdas.iter().sum();
    if (sum - 1.0).abs() > classical::PROB_TOL {
        return Err(Error::ProbabilitiesDoNotSum { sum });
    }
    let source_dim = eigs.len();
    let mut used: HashSet<BasisString> = HashSet::new();
    let mut sectors = Vec::new();
    // Only sectors the source can occupy are encoded; codewords are
    // assigned in increasing length order and never reused, so sectors
    // sharing a block length stay mutually orthogonal (at the cost of a
    // rate bump when a length fills up).
    for (n, &lam) in lambdas.iter().enumerate().take(l_max + 1) {
        if lam == 0.0 {
            continue;
        }
        let typical = quantum_typical_subspace(eigs, n, delta)?;
        let needs_junk = (typical.dim() as u128) < pow_guarded(source_dim, n)?;
        sectors.push(assign_sector(typical, code_dim, needs_junk, &mut used)?);
    }
    let pair = build_channels(source_dim, code_dim, &sectors, JunkTarget::EmptyMessage)?;
    Ok(SchumacherCode {
        source_dim,
        code_dim,
        sectors,
        junk_target: JunkTarget::EmptyMessage,
        pair,
    })
}

/// Information audit of a Schumacher code on a grand-canonical source
/// `σ = Σ λ_n ρ^⊗n` (a standard code is the special case of λ
/// concentrated at one n).
#[derive(Clone, Copy, Debug)]
pub struct SchumacherAudit {
    /// Source raw information `I(σ)` in qbits.
    pub raw: f64,
    /// Encoded information with physical codeword lengths, including
    /// the junk codeword.
    pub encoded_physical: f64,
    /// Encoded information with junk codewords assigned length zero:
    /// `Σ λ_n r(n) log₂(dim C) P_{T^n}`.
    pub encoded_discarded: f64,
    /// Overall confidence `P_T = Σ λ_n P_{T^n}`.
    pub p_t: f64,
}

/// Closed-form audit from the sector tables.
pub fn schumacher_audit(code: &SchumacherCode, lambdas: &[f64]) -> Result<SchumacherAudit> {
    let log_q = (code.source_dim as f64).log2();
    let log_c = (code.code_dim as f64).log2();
    let mut raw = 0.0;
    let mut physical = 0.0;
    let mut discarded = 0.0;
    let mut p_t = 0.0;
    for (n, &lam) in lambdas.iter().enumerate() {
        if lam == 0.0 {
            continue;
        }
        let sector = code
            .sectors
            .iter()
            .find(|s| s.typical.n == n)
            .ok_or_else(|| Error::Invalid(format!("no code sector for length {n}")))?;
        let pt = sector.typical.total_prob;
        raw += lam * (n as f64) * log_q;
        physical += lam * (sector.rate as f64) * log_c;
        discarded += lam * (sector.rate as f64) * log_c * pt;
        p_t += lam * pt;
    }
    Ok(SchumacherAudit {
        raw,
        encoded_physical: physical,
        encoded_discarded: discarded,
        p_t,
    })
}

/// Direct measurement of the discarded-junk encoded information:
/// applies the encoder to σ and sums `length × log₂(dim C)` over the
/// diagonal, skipping junk codewords.
pub fn measured_encoded_information(
    code: &SchumacherCode,
    sigma: &MessageMatrix,
) -> Result<(f64, f64)> {
    let out = code.pair.encoder.apply(sigma)?;
    let junk: HashSet<&BasisString> = code
        .sectors
        .iter()
        .filter_map(|s| s.junk_codeword.as_ref())
        .collect();
    let log_c = (code.code_dim as f64).log2();
    let mut physical = 0.0;
    let mut discarded = 0.0;
    for (i, s) in out.basis().iter().enumerate() {
        let w = out.dense()[(i, i)].re * s.len() as f64 * log_c;
        physical += w;
        if !junk.contains(s) {
            discarded += w;
        }
    }
    Ok((physical, discarded))
}

/// Convenience: eigen-decomposes a letter matrix and rotates a letter
/// ensemble into the eigenbasis, returning the spectrum and ensemble.
pub fn eigenbasis_ensemble(
    rho: &DMatrix<Complex64>,
    probs: &[f64],
    letters: &[Vec<Complex64>],
) -> Result<(Vec<f64>, LetterEnsemble)> {
    let pairs = diagonalize_letter_matrix(rho)?;
    let eigs: Vec<f64> = pairs.iter().map(|(q, _)| *q).collect();
    let d = rho.nrows();
    let rotated: Vec<Vec<Complex64>> = letters
        .iter()
        .map(|l| {
            if l.len() != d {
                return Err(Error::AlphabetMismatch {
                    expected: d,
                    found: l.len(),
                });
            }
            Ok(pairs
                .iter()
                .map(|(_, u)| (0..d).map(|i| u[i].conj() * l[i]).sum())
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok((
        eigs,
        LetterEnsemble {
            probs: probs.to_vec(),
            letters: rotated,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &[u8]) -> BasisString {
        BasisString::new(s.to_vec())
    }

    #[test]
    fn maximally_mixed_qubit_is_all_typical() {
        let t = quantum_typical_subspace(&[0.5, 0.5], 4, 0.1).unwrap();
        assert_eq!(t.dim(), 16);
        assert!((t.total_prob - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pure_state_has_single_typical_string() {
        let t = quantum_typical_subspace(&[1.0, 0.0], 5, 0.1).unwrap();
        assert_eq!(t.members, vec![b(&[0, 0, 0, 0, 0])]);
        assert!((t.total_prob - 1.0).abs() < 1e-12);
    }

    #[test]
    fn matches_classical_oracle() {
        let probs = [0.9, 0.1];
        let q = quantum_typical_subspace(&probs, 10, 0.3).unwrap();
        let c = classical::typical_set(&probs, 10, 0.3).unwrap();
        assert_eq!(q.members, c.members);
        assert_eq!(q.dim(), 10);
        assert!((q.total_prob - 0.3874).abs() < 1e-4);
    }

    #[test]
    fn standard_code_rates_and_kraus() {
        let code =
            build_schumacher(&[0.9, 0.1], 10, 0.3, 2, JunkTarget::EmptyMessage).unwrap();
        let sector = code.sector();
        assert_eq!(sector.typical.dim(), 10);
        assert_eq!(sector.rate, 4); // ceil(log2 10), with room for junk
        assert!(code.pair.encoder.check_kraus().passes());
        assert!(code.pair.decoder.check_kraus().passes());
    }

    #[test]
    fn typical_round_trip_is_identity() {
        let code =
            build_schumacher(&[0.9, 0.1], 6, 0.3, 2, JunkTarget::EmptyMessage).unwrap();
        for (a, _) in &code.sector().codewords {
            let phi = ManyLetterVector::basis(2, a.clone()).unwrap();
            assert!((code.pair.fidelity(&phi).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn orthogonal_ensemble_confidence_equals_p_t() {
        let eigs = [0.9, 0.1];
        let code = build_schumacher(&eigs, 8, 0.25, 2, JunkTarget::EmptyMessage).unwrap();
        let ensemble = LetterEnsemble::eigenbasis(&eigs);
        let report = schumacher_confidence(&code, &eigs, &ensemble).unwrap();
        assert!((report.fbar - report.p_t).abs() < 1e-12);
        assert!(report.fbar >= report.bound - 1e-10);
    }

    #[test]
    fn closed_form_matches_brute_force_kraus_sum() {
        // Non-orthogonal letters |0⟩ and |+⟩ with probabilities (0.5,0.5):
        // ρ = [[0.75,0.25],[0.25,0.25]].
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let rho = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::from(0.75),
                Complex64::from(0.25),
                Complex64::from(0.25),
                Complex64::from(0.25),
            ],
        );
        let letters = vec![
            vec![Complex64::from(1.0), Complex64::from(0.0)],
            vec![Complex64::from(s), Complex64::from(s)],
        ];
        let (eigs, ensemble) = eigenbasis_ensemble(&rho, &[0.5, 0.5], &letters).unwrap();
        let code = build_schumacher(&eigs, 4, 0.25, 2, JunkTarget::EmptyMessage).unwrap();
        let report = schumacher_confidence(&code, &eigs, &ensemble).unwrap();

        let blocks = ensemble.block_ensemble(4).unwrap();
        let (brute, _) = code.pair.confidence(&blocks).unwrap();
        assert!(
            (report.fbar - brute).abs() < 1e-10,
            "closed form {} vs brute force {}",
            report.fbar,
            brute
        );
        assert!(report.fbar >= report.bound - 1e-10);
        assert!(report.fbar <= 1.0 + 1e-12);
    }

    #[test]
    fn first_nontypical_junk_changes_brute_force_only() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let rho = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::from(0.75),
                Complex64::from(0.25),
                Complex64::from(0.25),
                Complex64::from(0.25),
            ],
        );
        let letters = vec![
            vec![Complex64::from(1.0), Complex64::from(0.0)],
            vec![Complex64::from(s), Complex64::from(s)],
        ];
        let (eigs, ensemble) = eigenbasis_ensemble(&rho, &[0.5, 0.5], &letters).unwrap();
        let code = build_schumacher(&eigs, 4, 0.25, 2, JunkTarget::FirstNonTypical).unwrap();
        assert!(code.pair.encoder.check_kraus().passes());
        assert!(code.pair.decoder.check_kraus().passes());
        let report = schumacher_confidence(&code, &eigs, &ensemble).unwrap();
        let blocks = ensemble.block_ensemble(4).unwrap();
        let (brute, _) = code.pair.confidence(&blocks).unwrap();
        // Decoding junk onto a real source string can only help.
        assert!(brute >= report.fbar - 1e-12);
    }

    #[test]
    fn generalized_reduces_to_standard_at_concentrated_lambda() {
        let eigs = [0.9, 0.1];
        let mut lambdas = vec![0.0; 11];
        lambdas[10] = 1.0;
        let gen = generalized_schumacher(&lambdas, &eigs, 0.3, 2, 10).unwrap();
        let audit = schumacher_audit(&gen, &lambdas).unwrap();
        assert_eq!(gen.sectors.len(), 1);
        assert_eq!(gen.sectors[0].typical.n, 10);
        assert_eq!(gen.sectors[0].rate, 4);
        assert!((audit.encoded_discarded - 4.0 * 0.3874).abs() < 4e-4);
        assert!((audit.p_t - 0.3874).abs() < 1e-4);
    }

    #[test]
    fn generalized_kraus_and_measured_audit_agree() {
        let eigs = [0.9, 0.1];
        let lambdas = [0.2, 0.3, 0.0, 0.5];
        let gen = generalized_schumacher(&lambdas, &eigs, 0.4, 2, 3).unwrap();
        assert!(gen.pair.encoder.check_kraus().passes());
        assert!(gen.pair.decoder.check_kraus().passes());

        let rho = crate::matrix::diagonal_letter_matrix(&eigs);
        let sigma = MessageMatrix::grand_canonical(&lambdas, &rho, 3).unwrap();
        let audit = schumacher_audit(&gen, &lambdas).unwrap();
        let (physical, discarded) = measured_encoded_information(&gen, &sigma).unwrap();
        assert!((audit.encoded_physical - physical).abs() < 1e-10);
        assert!((audit.encoded_discarded - discarded).abs() < 1e-10);
        assert!((audit.raw - sigma.raw_information()).abs() < 1e-10);
    }

    #[test]
    fn maximally_mixed_generalized_is_not_compressive() {
        let eigs = [0.5, 0.5];
        let lambdas = [0.0, 0.5, 0.5];
        let gen = generalized_schumacher(&lambdas, &eigs, 0.1, 2, 2).unwrap();
        let audit = schumacher_audit(&gen, &lambdas).unwrap();
        // S = log dim: no compression beyond identity.
        assert!((audit.encoded_discarded - audit.raw).abs() < 1e-10);
        assert!((audit.p_t - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lambda_beyond_l_max_rejected() {
        let r = generalized_schumacher(&[0.0, 0.5, 0.5], &[0.9, 0.1], 0.3, 2, 1);
        assert!(matches!(r, Err(Error::TruncationOverflow { .. })));
    }
}
