//! Quantum alphabets, basis strings and the truncation configuration.
//!
//! A quantum alphabet is a set of normalized letter states over some
//! reference orthonormal basis. The letters need not be orthogonal or
//! linearly independent; an orthonormal basis-letter set spanning the
//! letter space is computed once at construction and all many-letter
//! vectors are stored in those coordinates.

use std::cmp::Ordering;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Rank cutoff used when orthonormalizing a non-orthogonal alphabet.
pub const RANK_CUTOFF: f64 = 1e-10;
/// Tolerance for letter normalization.
pub const NORM_TOL: f64 = 1e-12;

/// A finite sequence of basis-letter indices. The empty string is the
/// empty message.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BasisString(Vec<u8>);

impl BasisString {
    pub fn new(indices: impl Into<Vec<u8>>) -> Self {
        BasisString(indices.into())
    }

    pub fn empty() -> Self {
        BasisString(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn concat(&self, other: &BasisString) -> BasisString {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BasisString(v)
    }

    /// The `idx`-th string of length `len` over a `dim`-letter basis,
    /// in lexicographic order.
    pub fn from_index(dim: usize, len: usize, idx: usize) -> Self {
        let mut v = vec![0u8; len];
        let mut rem = idx;
        for slot in v.iter_mut().rev() {
            *slot = (rem % dim) as u8;
            rem /= dim;
        }
        BasisString(v)
    }

    /// Lexicographic rank of this string among strings of its length.
    pub fn to_index(&self, dim: usize) -> usize {
        self.0
            .iter()
            .fold(0usize, |acc, &a| acc * dim + a as usize)
    }

    pub fn check_range(&self, dim: usize) -> Result<()> {
        for &a in &self.0 {
            if a as usize >= dim {
                return Err(Error::LetterOutOfRange {
                    index: a as usize,
                    dim,
                });
            }
        }
        Ok(())
    }
}

// Sector-major order: shorter strings first, lexicographic within a sector.
impl Ord for BasisString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for BasisString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BasisString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "|·⟩")
        } else {
            write!(f, "|")?;
            for &a in &self.0 {
                write!(f, "{a}")?;
            }
            write!(f, "⟩")
        }
    }
}

impl fmt::Display for BasisString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Global maximum string length for operator checks and truncated sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationConfig {
    pub l_max: usize,
}

impl TruncationConfig {
    pub fn new(l_max: usize) -> Self {
        TruncationConfig { l_max }
    }

    pub fn check(&self, length: usize) -> Result<()> {
        if length > self.l_max {
            Err(Error::TruncationOverflow {
                length,
                l_max: self.l_max,
            })
        } else {
            Ok(())
        }
    }
}

/// A set of normalized letter states together with the derived
/// orthonormal basis-letter set spanning the letter space.
#[derive(Clone, Debug)]
pub struct QuantumAlphabet {
    /// Raw letters in reference-basis coordinates.
    letters: Vec<DVector<Complex64>>,
    /// Dimension of the letter space (rank of the Gram matrix).
    basis_dim: usize,
    /// Each letter expressed in basis-letter coordinates; length `basis_dim`.
    letter_coords: Vec<DVector<Complex64>>,
}

impl QuantumAlphabet {
    /// Builds an alphabet from letters given as coordinate lists over an
    /// orthonormal reference basis.
    pub fn new(letters: Vec<Vec<Complex64>>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Invalid("alphabet has no letters".into()));
        }
        let ref_dim = letters[0].len();
        let letters: Vec<DVector<Complex64>> = letters
            .into_iter()
            .map(DVector::from_vec)
            .collect();
        for (i, l) in letters.iter().enumerate() {
            if l.len() != ref_dim {
                return Err(Error::Invalid(format!(
                    "letter {i} has {} coordinates, expected {ref_dim}",
                    l.len()
                )));
            }
            let norm = l.norm();
            if (norm - 1.0).abs() > NORM_TOL {
                return Err(Error::LetterNotNormalized { index: i, norm });
            }
        }

        // Gram matrix and its eigendecomposition give the orthonormal
        // basis letters and each letter's coordinates in them.
        let m = letters.len();
        let gram = DMatrix::from_fn(m, m, |i, j| letters[i].dotc(&letters[j]));
        let eig = gram.symmetric_eigen();
        let mut kept: Vec<usize> = (0..m)
            .filter(|&k| eig.eigenvalues[k] > RANK_CUTOFF)
            .collect();
        // Deterministic order: descending eigenvalue, then index.
        kept.sort_by(|&a, &b| {
            eig.eigenvalues[b]
                .partial_cmp(&eig.eigenvalues[a])
                .unwrap()
                .then(a.cmp(&b))
        });
        let basis_dim = kept.len();
        if basis_dim == 0 {
            return Err(Error::Invalid("alphabet spans a zero-dimensional space".into()));
        }

        // Basis letter b_k = (1/sqrt(lam_k)) sum_i U[i][k] |x_i>, so the
        // coordinate of letter j on b_k is sqrt(lam_k) * conj(U[j][k]).
        let letter_coords = (0..m)
            .map(|j| {
                DVector::from_iterator(
                    basis_dim,
                    kept.iter().map(|&k| {
                        eig.eigenvectors[(j, k)].conj() * eig.eigenvalues[k].sqrt()
                    }),
                )
            })
            .collect();

        Ok(QuantumAlphabet {
            letters,
            basis_dim,
            letter_coords,
        })
    }

    /// The computational alphabet: `dim` mutually orthogonal letters.
    pub fn computational(dim: usize) -> Self {
        let letters = (0..dim)
            .map(|i| {
                let mut v = vec![Complex64::new(0.0, 0.0); dim];
                v[i] = Complex64::new(1.0, 0.0);
                v
            })
            .collect();
        Self::new(letters).expect("computational alphabet is always valid")
    }

    pub fn num_letters(&self) -> usize {
        self.letters.len()
    }

    /// Dimension of the letter space, `K_Q`.
    pub fn basis_dim(&self) -> usize {
        self.basis_dim
    }

    /// Coordinates of letter `x` in the orthonormal basis-letter set.
    pub fn letter_coords(&self, x: usize) -> &DVector<Complex64> {
        &self.letter_coords[x]
    }

    /// The letter matrix `rho = sum_x p(x) |x><x|` in basis-letter
    /// coordinates.
    pub fn letter_matrix(&self, probs: &[f64]) -> Result<DMatrix<Complex64>> {
        if probs.len() != self.letters.len() {
            return Err(Error::Invalid(format!(
                "{} probabilities for {} letters",
                probs.len(),
                self.letters.len()
            )));
        }
        crate::classical::check_distribution(probs)?;
        let d = self.basis_dim;
        let mut rho = DMatrix::zeros(d, d);
        for (x, &p) in probs.iter().enumerate() {
            let v = &self.letter_coords[x];
            for i in 0..d {
                for j in 0..d {
                    rho[(i, j)] += Complex64::from(p) * v[i] * v[j].conj();
                }
            }
        }
        Ok(rho)
    }
}
