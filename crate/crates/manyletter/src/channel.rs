//! Completely positive maps between truncated many-letter spaces,
//! given by column-sparse Kraus operators.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::alphabet::BasisString;
use crate::error::{Error, Result};
use crate::matrix::MessageMatrix;
use crate::vector::ManyLetterVector;

/// Operator-level tolerance for completeness and isometry audits.
pub const OP_TOL: f64 = 1e-10;

/// A sparse linear map defined columnwise on source basis strings.
/// Basis strings absent from the map are annihilated.
#[derive(Clone, Debug, Default)]
pub struct SparseOperator {
    columns: HashMap<BasisString, ManyLetterVector>,
}

impl SparseOperator {
    pub fn new() -> Self {
        SparseOperator {
            columns: HashMap::new(),
        }
    }

    pub fn from_columns(columns: impl IntoIterator<Item = (BasisString, ManyLetterVector)>) -> Self {
        SparseOperator {
            columns: columns.into_iter().collect(),
        }
    }

    /// The single-column operator `|target⟩⟨source|`.
    pub fn dyad(source: BasisString, target: ManyLetterVector) -> Self {
        Self::from_columns([(source, target)])
    }

    pub fn set_column(&mut self, source: BasisString, target: ManyLetterVector) {
        self.columns.insert(source, target);
    }

    pub fn column(&self, source: &BasisString) -> Option<&ManyLetterVector> {
        self.columns.get(source)
    }

    pub fn columns(&self) -> impl Iterator<Item = (&BasisString, &ManyLetterVector)> {
        self.columns.iter()
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    /// Linear extension to an arbitrary sparse vector.
    pub fn apply(&self, v: &ManyLetterVector, code_dim: usize) -> ManyLetterVector {
        let mut out = ManyLetterVector::zero(code_dim);
        for (s, a) in v.components() {
            if let Some(col) = self.columns.get(s) {
                out.add_scaled(col, *a);
            }
        }
        out
    }

    /// The adjoint, with columns defined on the given code-space basis.
    pub fn adjoint(&self, source_dim: usize, code_basis: impl IntoIterator<Item = BasisString>) -> Self {
        // (E†)|k⟩ = Σ_a conj(⟨k|E a⟩) |a⟩
        let mut cols: HashMap<BasisString, Vec<(BasisString, Complex64)>> = HashMap::new();
        for (a, col) in &self.columns {
            for (k, amp) in col.components() {
                cols.entry(k.clone())
                    .or_default()
                    .push((a.clone(), amp.conj()));
            }
        }
        let mut out = SparseOperator::new();
        let wanted: std::collections::HashSet<BasisString> = code_basis.into_iter().collect();
        for (k, comps) in cols {
            if wanted.is_empty() || wanted.contains(&k) {
                let v = ManyLetterVector::from_components(source_dim, comps)
                    .expect("adjoint components are in range");
                out.set_column(k, v);
            }
        }
        out
    }
}

/// Report of a completeness or unitality audit.
#[derive(Clone, Copy, Debug)]
pub struct DeviationReport {
    /// Frobenius norm of `Σ Eᵢ†Eᵢ − 1` (or the unital counterpart) on
    /// the truncated domain.
    pub frobenius: f64,
    /// Largest single matrix-element deviation.
    pub max_abs: f64,
}

impl DeviationReport {
    pub fn passes(&self) -> bool {
        self.frobenius <= OP_TOL
    }
}

/// A CPM between truncated many-letter spaces. Completeness is checked
/// on the declared source domain only.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    source_dim: usize,
    code_dim: usize,
    operators: Vec<SparseOperator>,
    /// Truncated source-space basis used for completeness audits.
    source_domain: Vec<BasisString>,
    /// Truncated code-space basis used for unitality audits.
    code_domain: Vec<BasisString>,
}

impl KrausChannel {
    pub fn new(
        source_dim: usize,
        code_dim: usize,
        operators: Vec<SparseOperator>,
        source_domain: Vec<BasisString>,
        code_domain: Vec<BasisString>,
    ) -> Self {
        let mut source_domain = source_domain;
        let mut code_domain = code_domain;
        source_domain.sort();
        source_domain.dedup();
        code_domain.sort();
        code_domain.dedup();
        KrausChannel {
            source_dim,
            code_dim,
            operators,
            source_domain,
            code_domain,
        }
    }

    /// The identity channel on a given truncated basis.
    pub fn identity(dim: usize, domain: Vec<BasisString>) -> Self {
        let mut op = SparseOperator::new();
        for s in &domain {
            op.set_column(
                s.clone(),
                ManyLetterVector::basis(dim, s.clone()).expect("domain strings are in range"),
            );
        }
        KrausChannel::new(dim, dim, vec![op], domain.clone(), domain)
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn code_dim(&self) -> usize {
        self.code_dim
    }

    pub fn operators(&self) -> &[SparseOperator] {
        &self.operators
    }

    pub fn source_domain(&self) -> &[BasisString] {
        &self.source_domain
    }

    pub fn code_domain(&self) -> &[BasisString] {
        &self.code_domain
    }

    /// Applies every Kraus operator to a pure vector.
    pub fn apply_to_vector(&self, v: &ManyLetterVector) -> Result<Vec<ManyLetterVector>> {
        if v.dim() != self.source_dim {
            return Err(Error::AlphabetMismatch {
                expected: self.source_dim,
                found: v.dim(),
            });
        }
        Ok(self
            .operators
            .iter()
            .map(|op| op.apply(v, self.code_dim))
            .collect())
    }

    /// `σ_C = Σ Eᵢ σ Eᵢ†`.
    pub fn apply(&self, sigma: &MessageMatrix) -> Result<MessageMatrix> {
        if sigma.dim() != self.source_dim {
            return Err(Error::AlphabetMismatch {
                expected: self.source_dim,
                found: sigma.dim(),
            });
        }
        // Images of the support basis under each operator.
        let src = sigma.basis();
        let n = src.len();
        let mut out_basis: Vec<BasisString> = Vec::new();
        let mut images: Vec<Vec<ManyLetterVector>> = Vec::new();
        for op in &self.operators {
            let cols: Vec<ManyLetterVector> = src
                .iter()
                .map(|s| {
                    op.column(s)
                        .cloned()
                        .unwrap_or_else(|| ManyLetterVector::zero(self.code_dim))
                })
                .collect();
            for c in &cols {
                for (k, _) in c.components() {
                    out_basis.push(k.clone());
                }
            }
            images.push(cols);
        }
        out_basis.sort();
        out_basis.dedup();
        let index: HashMap<&BasisString, usize> = out_basis
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();

        let m = out_basis.len();
        let mut mat = DMatrix::zeros(m, m);
        for cols in &images {
            for a in 0..n {
                let ca: Vec<(usize, Complex64)> = cols[a]
                    .components()
                    .map(|(k, amp)| (index[k], *amp))
                    .collect();
                for (b, col_b) in cols.iter().enumerate() {
                    let sab = sigma.dense()[(a, b)];
                    if sab.norm() == 0.0 {
                        continue;
                    }
                    for &(i, ai) in &ca {
                        for (k, bj) in col_b.components() {
                            let j = index[k];
                            mat[(i, j)] += ai * sab * bj.conj();
                        }
                    }
                }
            }
        }
        MessageMatrix::from_parts(self.code_dim, out_basis, mat)
    }

    /// Deviation of `Σ Eᵢ†Eᵢ` from the identity on the source domain.
    pub fn check_kraus(&self) -> DeviationReport {
        let index: HashMap<&BasisString, usize> = self
            .source_domain
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let mut gram: HashMap<(usize, usize), Complex64> = HashMap::new();
        for op in &self.operators {
            // Invert columns: code key -> contributing (domain col, amp).
            let mut by_key: HashMap<&BasisString, Vec<(usize, Complex64)>> = HashMap::new();
            for (a, col) in op.columns() {
                if let Some(&j) = index.get(a) {
                    for (k, amp) in col.components() {
                        by_key.entry(k).or_default().push((j, *amp));
                    }
                }
            }
            for contribs in by_key.values() {
                for &(j1, a1) in contribs {
                    for &(j2, a2) in contribs {
                        *gram
                            .entry((j1, j2))
                            .or_insert(Complex64::new(0.0, 0.0)) += a1.conj() * a2;
                    }
                }
            }
        }
        deviation_from_identity(&gram, self.source_domain.len())
    }

    /// Deviation of `Σ EᵢEᵢ†` from the identity on the code domain.
    pub fn check_unital(&self) -> DeviationReport {
        let index: HashMap<&BasisString, usize> = self
            .code_domain
            .iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let mut gram: HashMap<(usize, usize), Complex64> = HashMap::new();
        for op in &self.operators {
            for (_, col) in op.columns() {
                let comps: Vec<(usize, Complex64)> = col
                    .components()
                    .filter_map(|(k, amp)| index.get(k).map(|&i| (i, *amp)))
                    .collect();
                for &(i1, a1) in &comps {
                    for &(i2, a2) in &comps {
                        *gram
                            .entry((i1, i2))
                            .or_insert(Complex64::new(0.0, 0.0)) += a1 * a2.conj();
                    }
                }
            }
        }
        deviation_from_identity(&gram, self.code_domain.len())
    }

    /// `I_c(σ) = Tr{σ Î_c}` with the pulled-back observable
    /// `Î_c = log₂(dim H_C) Σ Eᵢ† L̂_C Eᵢ`, in qbits. Code lengths are
    /// the physical code-string lengths.
    pub fn encoded_information(&self, sigma: &MessageMatrix) -> Result<f64> {
        if sigma.dim() != self.source_dim {
            return Err(Error::AlphabetMismatch {
                expected: self.source_dim,
                found: sigma.dim(),
            });
        }
        let src = sigma.basis();
        let n = src.len();
        let log_dim = (self.code_dim as f64).log2();
        let mut acc = Complex64::new(0.0, 0.0);
        for op in &self.operators {
            let cols: Vec<Option<&ManyLetterVector>> =
                src.iter().map(|s| op.column(s)).collect();
            for a in 0..n {
                let Some(ca) = cols[a] else { continue };
                for (b, col_b) in cols.iter().enumerate() {
                    let Some(cb) = col_b else { continue };
                    let sba = sigma.dense()[(b, a)];
                    if sba.norm() == 0.0 {
                        continue;
                    }
                    // <E a | L_C | E b>
                    let mut elem = Complex64::new(0.0, 0.0);
                    for (k, amp_a) in ca.components() {
                        let amp_b = cb.amplitude(k);
                        elem += amp_a.conj() * amp_b * Complex64::from(k.len() as f64);
                    }
                    acc += sba * elem;
                }
            }
        }
        Ok(log_dim * acc.re)
    }

    /// `I_c(σ) ≤ I(σ)` up to the operator tolerance.
    pub fn is_compressive(&self, sigma: &MessageMatrix) -> Result<bool> {
        Ok(self.encoded_information(sigma)? <= sigma.raw_information() + OP_TOL)
    }
}

fn deviation_from_identity(
    gram: &HashMap<(usize, usize), Complex64>,
    dim: usize,
) -> DeviationReport {
    let mut frob_sq = 0.0;
    let mut max_abs = 0.0f64;
    for (&(i, j), &g) in gram {
        let target = if i == j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        let d = (g - target).norm();
        frob_sq += d * d;
        max_abs = max_abs.max(d);
    }
    // Diagonal entries never touched by any operator deviate by 1.
    for i in 0..dim {
        if !gram.contains_key(&(i, i)) {
            frob_sq += 1.0;
            max_abs = max_abs.max(1.0);
        }
    }
    DeviationReport {
        frobenius: frob_sq.sqrt(),
        max_abs,
    }
}

/// Encoder/decoder channel pair.
#[derive(Clone, Debug)]
pub struct CodePair {
    pub encoder: KrausChannel,
    pub decoder: KrausChannel,
}

impl CodePair {
    /// Round-trip fidelity `F(φ) = Σᵢⱼ |⟨φ|Dⱼ Eᵢ|φ⟩|²`.
    pub fn fidelity(&self, phi: &ManyLetterVector) -> Result<f64> {
        phi.check_normalized()?;
        let mut f = 0.0;
        for encoded in self.encoder.apply_to_vector(phi)? {
            if encoded.is_zero() {
                continue;
            }
            for decoded in self.decoder.apply_to_vector(&encoded)? {
                let amp = phi.inner_product(&decoded)?;
                f += amp.norm_sqr();
            }
        }
        Ok(f)
    }

    /// Average fidelity `F̄ = Σ p(φ) F(φ)` and the probability of error.
    pub fn confidence(&self, ensemble: &crate::matrix::MessageEnsemble) -> Result<(f64, f64)> {
        let mut fbar = 0.0;
        for (p, phi) in ensemble.members() {
            fbar += p * self.fidelity(phi)?;
        }
        Ok((fbar, 1.0 - fbar))
    }
}
