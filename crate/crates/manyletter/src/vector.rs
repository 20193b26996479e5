//! Sparse vectors in the truncated many-letter space.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::alphabet::BasisString;
use crate::error::{Error, Result};

/// Amplitudes below this are dropped from the sparse representation.
const AMP_EPS: f64 = 0.0;
/// Tolerance for normalization checks.
pub const NORM_TOL: f64 = 1e-12;

/// A sparse superposition of basis strings over a `dim`-dimensional
/// letter space. Basis strings of different lengths are orthogonal.
#[derive(Clone, Debug, PartialEq)]
pub struct ManyLetterVector {
    dim: usize,
    amps: BTreeMap<BasisString, Complex64>,
}

impl ManyLetterVector {
    pub fn zero(dim: usize) -> Self {
        ManyLetterVector {
            dim,
            amps: BTreeMap::new(),
        }
    }

    /// The empty message `|·⟩`.
    pub fn empty_message(dim: usize) -> Self {
        Self::basis(dim, BasisString::empty()).unwrap()
    }

    /// A single basis string with unit amplitude.
    pub fn basis(dim: usize, s: BasisString) -> Result<Self> {
        s.check_range(dim)?;
        let mut amps = BTreeMap::new();
        amps.insert(s, Complex64::new(1.0, 0.0));
        Ok(ManyLetterVector { dim, amps })
    }

    pub fn from_components(
        dim: usize,
        components: impl IntoIterator<Item = (BasisString, Complex64)>,
    ) -> Result<Self> {
        let mut amps = BTreeMap::new();
        for (s, a) in components {
            s.check_range(dim)?;
            if a.norm() > AMP_EPS {
                *amps.entry(s).or_insert(Complex64::new(0.0, 0.0)) += a;
            }
        }
        amps.retain(|_, a| a.norm() > AMP_EPS);
        Ok(ManyLetterVector { dim, amps })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> impl Iterator<Item = (&BasisString, &Complex64)> {
        self.amps.iter()
    }

    pub fn amplitude(&self, s: &BasisString) -> Complex64 {
        self.amps.get(s).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn support_len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    /// Longest basis string in the support, 0 for the zero vector.
    pub fn max_length(&self) -> usize {
        self.amps.keys().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn check_normalized(&self) -> Result<()> {
        let norm = self.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            Err(Error::NotNormalized { norm })
        } else {
            Ok(())
        }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let amps = self
            .amps
            .iter()
            .map(|(s, a)| (s.clone(), a * c))
            .collect();
        ManyLetterVector {
            dim: self.dim,
            amps,
        }
    }

    pub fn add_scaled(&mut self, other: &ManyLetterVector, c: Complex64) {
        debug_assert_eq!(self.dim, other.dim);
        for (s, a) in &other.amps {
            let e = self
                .amps
                .entry(s.clone())
                .or_insert(Complex64::new(0.0, 0.0));
            *e += a * c;
        }
        self.amps.retain(|_, a| a.norm() > AMP_EPS);
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::NotNormalized { norm: 0.0 });
        }
        Ok(self.scaled(Complex64::from(1.0 / n)))
    }

    fn check_dim(&self, other: &ManyLetterVector) -> Result<()> {
        if self.dim != other.dim {
            Err(Error::AlphabetMismatch {
                expected: self.dim,
                found: other.dim,
            })
        } else {
            Ok(())
        }
    }

    /// `⟨self|other⟩` over the shared sparse support.
    pub fn inner_product(&self, other: &ManyLetterVector) -> Result<Complex64> {
        self.check_dim(other)?;
        // Iterate the smaller support.
        let (small, big) = if self.amps.len() <= other.amps.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for (s, a) in &small.amps {
            if let Some(b) = big.amps.get(s) {
                if std::ptr::eq(small, self) {
                    acc += a.conj() * b;
                } else {
                    acc += b.conj() * a;
                }
            }
        }
        Ok(acc)
    }

    /// Bilinear extension of string concatenation, `u ⊗ v`.
    pub fn tensor_concat(&self, other: &ManyLetterVector, l_max: usize) -> Result<Self> {
        self.check_dim(other)?;
        let mut amps = BTreeMap::new();
        for (s, a) in &self.amps {
            for (t, b) in &other.amps {
                let key = s.concat(t);
                if key.len() > l_max {
                    return Err(Error::TruncationOverflow {
                        length: key.len(),
                        l_max,
                    });
                }
                *amps.entry(key).or_insert(Complex64::new(0.0, 0.0)) += a * b;
            }
        }
        Ok(ManyLetterVector {
            dim: self.dim,
            amps,
        })
    }

    /// Squared norms per length sector.
    pub fn sector_norms_sq(&self) -> BTreeMap<usize, f64> {
        let mut m = BTreeMap::new();
        for (s, a) in &self.amps {
            *m.entry(s.len()).or_insert(0.0) += a.norm_sqr();
        }
        m
    }

    /// Expectation of the length operator, `⟨v|L̂|v⟩`. Requires a
    /// normalized vector.
    pub fn length_expectation(&self) -> Result<f64> {
        self.check_normalized()?;
        Ok(self
            .amps
            .iter()
            .map(|(s, a)| s.len() as f64 * a.norm_sqr())
            .sum())
    }

    /// Raw quantum information content in qbits,
    /// `⟨v|Î|v⟩ = log₂(dim) · ⟨v|L̂|v⟩`.
    pub fn raw_information(&self) -> Result<f64> {
        Ok((self.dim as f64).log2() * self.length_expectation()?)
    }

    /// Component with basis strings of length `n` only.
    pub fn sector(&self, n: usize) -> ManyLetterVector {
        let amps = self
            .amps
            .iter()
            .filter(|(s, _)| s.len() == n)
            .map(|(s, a)| (s.clone(), *a))
            .collect();
        ManyLetterVector {
            dim: self.dim,
            amps,
        }
    }
}
