//! Lossless block translation between alphabets of different dimension.
//!
//! A block translator maps each block of `N` source basis letters to a
//! distinct block of `M` code basis letters, with `M` the smallest
//! integer satisfying `dim_C^M ≥ dim_Q^N`. The message translator is the
//! single isometry acting blockwise on every `N`-aligned string, with
//! the empty message mapped to itself.

use crate::alphabet::BasisString;
use crate::channel::{KrausChannel, SparseOperator};
use crate::error::{Error, Result};
use crate::matrix::MessageMatrix;
use crate::vector::ManyLetterVector;

/// Blockwise relabeling of `N` source letters as `M` code letters.
#[derive(Clone, Debug)]
pub struct BlockTranslator {
    source_dim: usize,
    code_dim: usize,
    /// Source block length.
    pub n: usize,
    /// Code block length.
    pub m: usize,
}

impl BlockTranslator {
    /// Chooses the minimal code block length `M` with
    /// `code_dim^M ≥ source_dim^N`.
    pub fn new(source_dim: usize, code_dim: usize, n: usize) -> Result<Self> {
        if source_dim < 1 || code_dim < 2 {
            return Err(Error::Invalid(
                "translation needs a nonempty source alphabet and at least two code letters"
                    .into(),
            ));
        }
        if n == 0 {
            return Err(Error::Invalid("block length must be positive".into()));
        }
        let needed = (source_dim as u128)
            .checked_pow(n as u32)
            .ok_or_else(|| Error::Invalid("source block space too large".into()))?;
        let mut m = 0usize;
        let mut cap: u128 = 1;
        while cap < needed {
            m += 1;
            cap = cap
                .checked_mul(code_dim as u128)
                .ok_or_else(|| Error::Invalid("code block space too large".into()))?;
        }
        Ok(BlockTranslator {
            source_dim,
            code_dim,
            n,
            m: m.max(1),
        })
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn code_dim(&self) -> usize {
        self.code_dim
    }

    /// Code letters per source letter.
    pub fn rate(&self) -> f64 {
        self.m as f64 / self.n as f64
    }

    /// Whether the rate condition holds with equality:
    /// `code_dim^M = source_dim^N`.
    pub fn is_tight(&self) -> bool {
        (self.code_dim as u128).pow(self.m as u32) == (self.source_dim as u128).pow(self.n as u32)
    }

    /// Translates one source block (length exactly `N`) to its code
    /// block, pairing blocks in lexicographic order.
    pub fn translate_block(&self, block: &BasisString) -> Result<BasisString> {
        if block.len() != self.n {
            return Err(Error::BlockAlignment {
                length: block.len(),
                block: self.n,
            });
        }
        block.check_range(self.source_dim)?;
        let idx = block.to_index(self.source_dim);
        Ok(BasisString::from_index(self.code_dim, self.m, idx))
    }

    /// Translates an `N`-aligned basis string blockwise.
    pub fn translate_string(&self, s: &BasisString) -> Result<BasisString> {
        if !s.len().is_multiple_of(self.n) {
            return Err(Error::BlockAlignment {
                length: s.len(),
                block: self.n,
            });
        }
        let mut out = BasisString::empty();
        for chunk in s.letters().chunks(self.n) {
            let block = BasisString::new(chunk.to_vec());
            out = out.concat(&self.translate_block(&block)?);
        }
        Ok(out)
    }

    /// Human-readable block table `source block → code block`.
    pub fn table(&self) -> Vec<(BasisString, BasisString)> {
        let count = (self.source_dim as u128).pow(self.n as u32) as usize;
        (0..count)
            .map(|idx| {
                let src = BasisString::from_index(self.source_dim, self.n, idx);
                let code = BasisString::from_index(self.code_dim, self.m, idx);
                (src, code)
            })
            .collect()
    }

    /// The message translator as a single-operator channel covering all
    /// `N`-aligned source strings of length at most `l_max`. The empty
    /// message maps to itself.
    pub fn message_translator(&self, l_max: usize) -> Result<KrausChannel> {
        let mut op = SparseOperator::new();
        let mut source_domain = Vec::new();
        let mut code_domain = Vec::new();
        let mut blocks = 0usize;
        while blocks * self.n <= l_max {
            let len = blocks * self.n;
            let count = (self.source_dim as u128)
                .checked_pow(len as u32)
                .ok_or(Error::EnumerationGuard {
                    count: u128::MAX,
                    guard: crate::classical::ENUMERATION_GUARD,
                })?;
            if count > crate::classical::ENUMERATION_GUARD {
                return Err(Error::EnumerationGuard {
                    count,
                    guard: crate::classical::ENUMERATION_GUARD,
                });
            }
            for idx in 0..count as usize {
                let src = BasisString::from_index(self.source_dim, len, idx);
                let code = self.translate_string(&src)?;
                op.set_column(
                    src.clone(),
                    ManyLetterVector::basis(self.code_dim, code)?,
                );
                source_domain.push(src);
            }
            // Unitality is judged against every full code block of the
            // matching length, not just the image strings.
            let code_len = blocks * self.m;
            let code_count = (self.code_dim as u128)
                .checked_pow(code_len as u32)
                .filter(|&c| c <= crate::classical::ENUMERATION_GUARD)
                .ok_or(Error::EnumerationGuard {
                    count: u128::MAX,
                    guard: crate::classical::ENUMERATION_GUARD,
                })?;
            for idx in 0..code_count as usize {
                code_domain.push(BasisString::from_index(self.code_dim, code_len, idx));
            }
            blocks += 1;
        }
        Ok(KrausChannel::new(
            self.source_dim,
            self.code_dim,
            vec![op],
            source_domain,
            code_domain,
        ))
    }
}

/// Raw and encoded information of `σ` under a block translator.
#[derive(Clone, Copy, Debug)]
pub struct TranslationAudit {
    /// Source raw information `I(σ)` in qbits.
    pub raw: f64,
    /// Encoded raw information `I_c(σ)` in qbits.
    pub encoded: f64,
    /// `I_c / I`; 1.0 when both vanish.
    pub ratio: f64,
}

/// Evaluates `I(σ)` and `I_c(σ)` for σ supported on `N`-aligned strings.
pub fn translation_information_audit(
    t: &BlockTranslator,
    sigma: &MessageMatrix,
    l_max: usize,
) -> Result<TranslationAudit> {
    for s in sigma.basis() {
        if s.len() % t.n != 0 {
            return Err(Error::BlockAlignment {
                length: s.len(),
                block: t.n,
            });
        }
    }
    let channel = t.message_translator(l_max)?;
    let raw = sigma.raw_information();
    let encoded = channel.encoded_information(sigma)?;
    let ratio = if raw.abs() < f64::EPSILON && encoded.abs() < f64::EPSILON {
        1.0
    } else {
        encoded / raw
    };
    Ok(TranslationAudit {
        raw,
        encoded,
        ratio,
    })
}
