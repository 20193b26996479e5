//! Lossless quantum coding: the symbol code for grand-canonical
//! sources, the general eigenbasis code for arbitrary message matrices,
//! and the core-information observable.
//!
//! All codes here are single-Kraus-operator isometries into the binary
//! many-letter space; decoding is adjoint application with fidelity 1.
//! (Block-space Huffman schemes are out of scope: restricted to a fixed
//! block length they cannot be lossless on variable-length sources.)
//!
//! Integer mode materializes binary codewords; ideal mode carries the
//! real lengths `−log₂ q` for exact entropy identities and is
//! analysis-only, since no physical string has fractional length.

use std::collections::HashSet;

use num_complex::Complex64;

use crate::alphabet::BasisString;
use crate::channel::{KrausChannel, SparseOperator};
use crate::classical::{self, huffman_build, ClassicalEnsemble, LengthMode};
use crate::error::{Error, Result};
use crate::matrix::{self, MessageMatrix};
use crate::translate::BlockTranslator;
use crate::vector::ManyLetterVector;

/// Spectrum cutoff defining the coded subspace.
pub const SPECTRUM_CUTOFF: f64 = 1e-12;

fn codeword_to_string(bits: &[bool]) -> BasisString {
    BasisString::new(bits.iter().map(|&b| u8::from(b)).collect::<Vec<u8>>())
}

/// Huffman code on the letter spectrum, extended multiplicatively to
/// the whole many-letter space: each letter string maps to the
/// concatenation of its letter codewords.
#[derive(Clone, Debug)]
pub struct QuantumSymbolCode {
    /// Letter-space dimension; strings are in the ρ-eigenbasis.
    pub source_dim: usize,
    pub mode: LengthMode,
    /// Letter spectrum the code was built for.
    pub eigs: Vec<f64>,
    /// Codeword length per eigen-letter (integer or `−log₂ q`).
    pub lengths: Vec<f64>,
    /// Binary codewords in integer mode.
    pub codewords: Option<Vec<BasisString>>,
}

/// Builds the symbol code from a letter spectrum.
pub fn build_symbol_code(eigs: &[f64], mode: LengthMode) -> Result<QuantumSymbolCode> {
    if eigs.iter().all(|&q| q <= SPECTRUM_CUTOFF) {
        return Err(Error::Invalid("letter spectrum has rank zero".into()));
    }
    classical::check_distribution(eigs)?;
    match mode {
        LengthMode::Ideal => Ok(QuantumSymbolCode {
            source_dim: eigs.len(),
            mode,
            eigs: eigs.to_vec(),
            lengths: eigs.iter().map(|&q| -q.log2()).collect(),
            codewords: None,
        }),
        LengthMode::Integer => {
            let code = huffman_build(&ClassicalEnsemble::from_probs(eigs)?);
            Ok(QuantumSymbolCode {
                source_dim: eigs.len(),
                mode,
                eigs: eigs.to_vec(),
                lengths: code.lengths().to_vec(),
                codewords: Some(
                    code.codewords().iter().map(|w| codeword_to_string(w)).collect(),
                ),
            })
        }
    }
}

impl QuantumSymbolCode {
    /// Expected codeword length per letter, `Σ q(a) L_c(a)`.
    pub fn expected_length(&self) -> f64 {
        self.eigs
            .iter()
            .zip(&self.lengths)
            .map(|(&q, &l)| q * l)
            .sum()
    }

    /// Concatenated codeword of a letter string (integer mode).
    pub fn encode_string(&self, s: &BasisString) -> Result<BasisString> {
        let codewords = self
            .codewords
            .as_ref()
            .ok_or_else(|| Error::Invalid("ideal mode has no physical codewords".into()))?;
        s.check_range(self.source_dim)?;
        let mut out = BasisString::empty();
        for &a in s.letters() {
            out = out.concat(&codewords[a as usize]);
        }
        Ok(out)
    }

    /// The total encoder `C = Σ_n C_Q^⊗n` on all strings of length at
    /// most `l_max` (integer mode only).
    pub fn channel(&self, l_max: usize) -> Result<KrausChannel> {
        let mut op = SparseOperator::new();
        let mut source_domain = Vec::new();
        let mut code_domain = Vec::new();
        for n in 0..=l_max {
            let count = (self.source_dim as u128)
                .checked_pow(n as u32)
                .filter(|&c| c <= classical::ENUMERATION_GUARD)
                .ok_or(Error::EnumerationGuard {
                    count: u128::MAX,
                    guard: classical::ENUMERATION_GUARD,
                })?;
            for i in 0..count as usize {
                let s = BasisString::from_index(self.source_dim, n, i);
                let c = self.encode_string(&s)?;
                code_domain.push(c.clone());
                op.set_column(s.clone(), ManyLetterVector::basis(2, c)?);
                source_domain.push(s);
            }
        }
        Ok(KrausChannel::new(
            self.source_dim,
            2,
            vec![op],
            source_domain,
            code_domain,
        ))
    }
}

/// Compression report for a grand-canonical source.
#[derive(Clone, Copy, Debug)]
pub struct GrandReport {
    /// Source raw information `I(σ)` in qbits.
    pub raw: f64,
    /// Encoded information `I_c(σ) = Σ λ_n n L̄` in qbits.
    pub encoded: f64,
    /// Letter-entropy part `Σ λ_n n S(ρ)` — the encoded information in
    /// ideal mode.
    pub sector_weighted_entropy: f64,
    /// Full von Neumann entropy `S(σ) = H(λ) + Σ λ_n n S(ρ)`. Note the
    /// `H(λ)` gap: `I_c` matches the letter part only, not `S(σ)`,
    /// unless the length distribution is deterministic.
    pub entropy: f64,
    /// Shannon entropy of the length distribution `H(λ)`.
    pub length_entropy: f64,
}

/// Closed-form audit of a symbol code on `σ = Σ λ_n ρ^⊗n`.
pub fn compress_grand_canonical(code: &QuantumSymbolCode, lambdas: &[f64]) -> Result<GrandReport> {
    for &lam in lambdas {
        if !(0.0..=1.0).contains(&lam) {
            return Err(Error::NonPositiveProbability { value: lam });
        }
    }
    let sum: f64 = lambdas.iter().sum();
    if (sum - 1.0).abs() > classical::PROB_TOL {
        return Err(Error::ProbabilitiesDoNotSum { sum });
    }
    let mean_n: f64 = lambdas
        .iter()
        .enumerate()
        .map(|(n, &lam)| lam * n as f64)
        .sum();
    let s_rho = matrix::entropy_of_spectrum(&code.eigs);
    let h_lambda = classical::shannon_entropy_unchecked(lambdas);
    Ok(GrandReport {
        raw: mean_n * (code.source_dim as f64).log2(),
        encoded: mean_n * code.expected_length(),
        sector_weighted_entropy: mean_n * s_rho,
        entropy: h_lambda + mean_n * s_rho,
        length_entropy: h_lambda,
    })
}

/// Lossless code for an arbitrary message matrix: Huffman codewords on
/// the σ-eigenbasis plus a block translator for the orthocomplement,
/// kept orthogonal by a one-bit discriminator prefix ('0' codebook,
/// '1' translated complement).
#[derive(Clone, Debug)]
pub struct GeneralLosslessCode {
    pub source_dim: usize,
    pub mode: LengthMode,
    /// Eigen-codebook entries `(qᵢ, |eᵢ⟩, lᵢ)`; codewords in integer
    /// mode exclude the discriminator prefix.
    pub spectrum: Vec<f64>,
    pub eigenvectors: Vec<ManyLetterVector>,
    pub lengths: Vec<f64>,
    pub codewords: Option<Vec<BasisString>>,
    /// Per-letter translator for components outside the coded subspace;
    /// its rate satisfies `R ≥ log₂(dim H_Q)`.
    pub translator: BlockTranslator,
}

/// Builds the general code from a message matrix.
pub fn build_general_code(sigma: &MessageMatrix, mode: LengthMode) -> Result<GeneralLosslessCode> {
    let pairs = sigma.diagonalize(SPECTRUM_CUTOFF)?;
    if pairs.is_empty() {
        return Err(Error::Invalid(
            "spectrum cutoff leaves an empty codebook".into(),
        ));
    }
    let spectrum: Vec<f64> = pairs.iter().map(|(q, _)| *q).collect();
    let eigenvectors: Vec<ManyLetterVector> = pairs.into_iter().map(|(_, v)| v).collect();
    // Renormalize against cutoff losses before building the code.
    let total: f64 = spectrum.iter().sum();
    let q_norm: Vec<f64> = spectrum.iter().map(|&q| q / total).collect();
    let (lengths, codewords) = match mode {
        LengthMode::Ideal => (q_norm.iter().map(|&q| -q.log2()).collect(), None),
        LengthMode::Integer => {
            let code = huffman_build(&ClassicalEnsemble::from_probs(&q_norm)?);
            (
                code.lengths().to_vec(),
                Some(code.codewords().iter().map(|w| codeword_to_string(w)).collect::<Vec<_>>()),
            )
        }
    };
    Ok(GeneralLosslessCode {
        source_dim: sigma.dim(),
        mode,
        spectrum,
        eigenvectors,
        lengths,
        codewords,
        translator: BlockTranslator::new(sigma.dim(), 2, 1)?,
    })
}

impl GeneralLosslessCode {
    fn prefixed(&self, first: u8, rest: &BasisString) -> BasisString {
        BasisString::new(vec![first]).concat(rest)
    }

    /// Projection coefficients `⟨eᵢ|φ⟩` and the orthocomplement part.
    fn split(&self, phi: &ManyLetterVector) -> Result<(Vec<Complex64>, ManyLetterVector)> {
        let mut coefs = Vec::with_capacity(self.eigenvectors.len());
        let mut perp = phi.clone();
        for e in &self.eigenvectors {
            let c = e.inner_product(phi)?;
            coefs.push(c);
            perp.add_scaled(e, -c);
        }
        Ok((coefs, perp))
    }

    /// `C φ = Σᵢ ⟨eᵢ|φ⟩ |0 c(eᵢ)⟩ + |1⟩∘T(1−Π_Γ)φ` (integer mode).
    pub fn encode(&self, phi: &ManyLetterVector) -> Result<ManyLetterVector> {
        let codewords = self
            .codewords
            .as_ref()
            .ok_or_else(|| Error::Invalid("ideal mode is analysis-only".into()))?;
        let (coefs, perp) = self.split(phi)?;
        let mut out = ManyLetterVector::zero(2);
        for (c, w) in coefs.iter().zip(codewords) {
            if c.norm() == 0.0 {
                continue;
            }
            out.add_scaled(
                &ManyLetterVector::basis(2, self.prefixed(0, w))?,
                *c,
            );
        }
        for (s, a) in perp.components() {
            let t = self.translator.translate_string(s)?;
            out.add_scaled(&ManyLetterVector::basis(2, self.prefixed(1, &t))?, *a);
        }
        Ok(out)
    }

    /// Adjoint application `C† ψ`; the residual is the squared norm of
    /// the component outside the encoder image (nonzero input
    /// corruption).
    pub fn decode(&self, psi: &ManyLetterVector) -> Result<(ManyLetterVector, f64)> {
        let codewords = self
            .codewords
            .as_ref()
            .ok_or_else(|| Error::Invalid("ideal mode is analysis-only".into()))?;
        let mut out = ManyLetterVector::zero(self.source_dim);
        // Spectral part: ⟨0c(eᵢ)|ψ⟩ eᵢ.
        for (e, w) in self.eigenvectors.iter().zip(codewords) {
            let c = psi.amplitude(&self.prefixed(0, w));
            if c.norm() > 0.0 {
                out.add_scaled(e, c);
            }
        }
        // Complement part: (1−Π_Γ) T† ψ|₁.
        let m = self.translator.m;
        let mut back = ManyLetterVector::zero(self.source_dim);
        for (k, a) in psi.components() {
            let letters = k.letters();
            if letters.first() != Some(&1) {
                continue;
            }
            let body = &letters[1..];
            if body.len() % m != 0 {
                continue;
            }
            let mut src = Vec::with_capacity(body.len() / m);
            let mut ok = true;
            for chunk in body.chunks(m) {
                let idx = BasisString::new(chunk.to_vec()).to_index(2);
                if idx >= self.source_dim {
                    ok = false;
                    break;
                }
                src.push(idx as u8);
            }
            if ok {
                back.add_scaled(
                    &ManyLetterVector::basis(self.source_dim, BasisString::new(src))?,
                    *a,
                );
            }
        }
        let (_, back_perp) = self.split(&back)?;
        out.add_scaled(&back_perp, Complex64::from(1.0));
        let residual = psi.norm_sq() - out.norm_sq();
        Ok((out, residual.max(0.0)))
    }

    /// The encoder as a single-operator channel on all source strings
    /// of length at most `l_max` (integer mode only).
    pub fn channel(&self, l_max: usize) -> Result<KrausChannel> {
        let mut op = SparseOperator::new();
        let mut source_domain = Vec::new();
        let mut code_domain: HashSet<BasisString> = HashSet::new();
        for n in 0..=l_max {
            let count = (self.source_dim as u128)
                .checked_pow(n as u32)
                .filter(|&c| c <= classical::ENUMERATION_GUARD)
                .ok_or(Error::EnumerationGuard {
                    count: u128::MAX,
                    guard: classical::ENUMERATION_GUARD,
                })?;
            for i in 0..count as usize {
                let s = BasisString::from_index(self.source_dim, n, i);
                let col = self.encode(&ManyLetterVector::basis(self.source_dim, s.clone())?)?;
                for (k, _) in col.components() {
                    code_domain.insert(k.clone());
                }
                op.set_column(s.clone(), col);
                source_domain.push(s);
            }
        }
        Ok(KrausChannel::new(
            self.source_dim,
            2,
            vec![op],
            source_domain,
            code_domain.into_iter().collect(),
        ))
    }
}

/// Encoded-information report for the general code.
#[derive(Clone, Copy, Debug)]
pub struct GeneralReport {
    /// `I_c(σ) = Σ qᵢ lᵢ` over the codebook (discriminator bit
    /// excluded); equals `S(σ)` in ideal mode.
    pub encoded: f64,
    /// Encoded information including the physical discriminator bit,
    /// `Σ qᵢ (lᵢ + 1)` in integer mode.
    pub encoded_physical: f64,
    /// `S(σ)` from the code's spectrum.
    pub entropy: f64,
}

/// `I_c(σ)` of the source the code was built for.
pub fn encoded_information_general(code: &GeneralLosslessCode) -> GeneralReport {
    let encoded: f64 = code
        .spectrum
        .iter()
        .zip(&code.lengths)
        .map(|(&q, &l)| q * l)
        .sum();
    let physical_extra = match code.mode {
        LengthMode::Integer => code.spectrum.iter().sum::<f64>(),
        LengthMode::Ideal => 0.0,
    };
    GeneralReport {
        encoded,
        encoded_physical: encoded + physical_extra,
        entropy: matrix::entropy_of_spectrum(&code.spectrum),
    }
}

/// The core-information observable `Î₀ = −log₂ σ + Î_¬Γ`: the spectral
/// part acts on the coded subspace `M_Γ`, and the raw-information
/// observable on its orthocomplement.
#[derive(Clone, Debug)]
pub struct CoreInformationObservable {
    pub dim: usize,
    pub spectrum: Vec<f64>,
    pub eigenvectors: Vec<ManyLetterVector>,
}

impl CoreInformationObservable {
    pub fn from_matrix(sigma: &MessageMatrix) -> Result<Self> {
        let pairs = sigma.diagonalize(SPECTRUM_CUTOFF)?;
        Ok(CoreInformationObservable {
            dim: sigma.dim(),
            spectrum: pairs.iter().map(|(q, _)| *q).collect(),
            eigenvectors: pairs.into_iter().map(|(_, v)| v).collect(),
        })
    }

    /// Quadratic form `⟨φ|Î₀|φ⟩` (φ need not be normalized; the form is
    /// linear in |φ⟩⟨φ|).
    pub fn form(&self, phi: &ManyLetterVector) -> Result<f64> {
        let mut spectral = 0.0;
        let mut perp = phi.clone();
        for (q, e) in self.spectrum.iter().zip(&self.eigenvectors) {
            let c = e.inner_product(phi)?;
            spectral += c.norm_sqr() * (-q.log2());
            perp.add_scaled(e, -c);
        }
        let log_dim = (self.dim as f64).log2();
        let complement: f64 = perp
            .components()
            .map(|(s, a)| a.norm_sqr() * s.len() as f64 * log_dim)
            .sum();
        Ok(spectral + complement)
    }

    /// `I₀(ρ) = Tr{ρ Î₀}` for any message matrix on the same space.
    pub fn expectation(&self, rho: &MessageMatrix) -> Result<f64> {
        if rho.dim() != self.dim {
            return Err(Error::AlphabetMismatch {
                expected: self.dim,
                found: rho.dim(),
            });
        }
        let mut acc = 0.0;
        for (w, v) in rho.diagonalize(SPECTRUM_CUTOFF)? {
            acc += w * self.form(&v)?;
        }
        Ok(acc)
    }
}
