//! Classical information theory layer: raw and core information,
//! Kraft inequality, Huffman prefix codes, typical sets and block
//! compression. The quantum codes reuse this machinery on eigenvalue
//! distributions.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::alphabet::BasisString;
use crate::error::{Error, Result};

/// Tolerance for probability sums.
pub const PROB_TOL: f64 = 1e-12;
/// Slack allowed on the Kraft sum.
pub const KRAFT_TOL: f64 = 1e-12;
/// Largest enumeration `|A|^N` attempted for typical sets.
pub const ENUMERATION_GUARD: u128 = 10_000_000;

pub fn check_distribution(probs: &[f64]) -> Result<()> {
    let mut sum = 0.0;
    for &p in probs {
        if p <= 0.0 {
            return Err(Error::NonPositiveProbability { value: p });
        }
        sum += p;
    }
    if (sum - 1.0).abs() > PROB_TOL {
        return Err(Error::ProbabilitiesDoNotSum { sum });
    }
    Ok(())
}

/// Shannon entropy in bits. Zero entries are skipped (0·log 0 = 0).
pub fn shannon_entropy(probs: &[f64]) -> Result<f64> {
    check_distribution(probs)?;
    Ok(shannon_entropy_unchecked(probs))
}

pub(crate) fn shannon_entropy_unchecked(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

/// A finite source: symbols with strictly positive probabilities.
#[derive(Clone, Debug)]
pub struct ClassicalEnsemble {
    symbols: Vec<String>,
    probs: Vec<f64>,
    /// `|A|` used for raw-information scaling; defaults to the symbol
    /// count but may be larger when the source uses a sub-alphabet.
    alphabet_size: usize,
}

impl ClassicalEnsemble {
    pub fn new(symbols: Vec<String>, probs: Vec<f64>) -> Result<Self> {
        let size = symbols.len();
        Self::with_alphabet_size(symbols, probs, size)
    }

    pub fn with_alphabet_size(
        symbols: Vec<String>,
        probs: Vec<f64>,
        alphabet_size: usize,
    ) -> Result<Self> {
        if symbols.len() != probs.len() {
            return Err(Error::Invalid(format!(
                "{} symbols but {} probabilities",
                symbols.len(),
                probs.len()
            )));
        }
        if symbols.is_empty() {
            return Err(Error::Invalid("ensemble has no symbols".into()));
        }
        check_distribution(&probs)?;
        Ok(ClassicalEnsemble {
            symbols,
            probs,
            alphabet_size,
        })
    }

    pub fn from_probs(probs: &[f64]) -> Result<Self> {
        let symbols = (0..probs.len()).map(|i| i.to_string()).collect();
        Self::new(symbols, probs.to_vec())
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn index_of(&self, symbol: &str) -> Result<usize> {
        self.symbols
            .iter()
            .position(|s| s == symbol)
            .ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))
    }

    pub fn shannon_entropy(&self) -> f64 {
        shannon_entropy_unchecked(&self.probs)
    }

    /// Raw information content of a message, `log₂|A| · L(x)` bits.
    pub fn raw_information(&self, message: &[&str]) -> Result<f64> {
        for s in message {
            self.index_of(s)?;
        }
        Ok((self.alphabet_size as f64).log2() * message.len() as f64)
    }

    /// Core information content of a single symbol, `−log₂ p(x)` bits.
    pub fn core_information(&self, symbol: &str) -> Result<f64> {
        let i = self.index_of(symbol)?;
        Ok(-self.probs[i].log2())
    }

    /// Ensemble average of the core information = Shannon entropy.
    pub fn ensemble_core_information(&self) -> f64 {
        self.shannon_entropy()
    }
}

/// Codeword-length mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LengthMode {
    /// Materialized binary codewords with integer lengths.
    Integer,
    /// Ideal real-valued lengths `−log₂ p(x)`; no codewords.
    Ideal,
}

/// A binary symbol code: either realizable prefix codewords or
/// ideal-length bookkeeping.
#[derive(Clone, Debug)]
pub struct PrefixCode {
    symbols: Vec<String>,
    mode: LengthMode,
    codewords: Vec<Vec<bool>>,
    ideal_lengths: Vec<f64>,
}

impl PrefixCode {
    pub fn from_codewords(symbols: Vec<String>, codewords: Vec<Vec<bool>>) -> Result<Self> {
        if symbols.len() != codewords.len() {
            return Err(Error::Invalid("symbol/codeword count mismatch".into()));
        }
        let ideal_lengths = codewords.iter().map(|w| w.len() as f64).collect();
        Ok(PrefixCode {
            symbols,
            mode: LengthMode::Integer,
            codewords,
            ideal_lengths,
        })
    }

    /// Ideal-length code for a distribution: lengths `−log₂ p(x)`.
    pub fn ideal(ensemble: &ClassicalEnsemble) -> Self {
        PrefixCode {
            symbols: ensemble.symbols.clone(),
            mode: LengthMode::Ideal,
            codewords: Vec::new(),
            ideal_lengths: ensemble.probs.iter().map(|p| -p.log2()).collect(),
        }
    }

    pub fn mode(&self) -> LengthMode {
        self.mode
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn codeword(&self, i: usize) -> &[bool] {
        &self.codewords[i]
    }

    pub fn codewords(&self) -> &[Vec<bool>] {
        &self.codewords
    }

    pub fn length(&self, i: usize) -> f64 {
        self.ideal_lengths[i]
    }

    pub fn lengths(&self) -> &[f64] {
        &self.ideal_lengths
    }

    pub fn expected_length(&self, probs: &[f64]) -> f64 {
        probs
            .iter()
            .zip(&self.ideal_lengths)
            .map(|(p, l)| p * l)
            .sum()
    }

    /// `Σ 2^{−L_c(x)}` and the Kraft predicate.
    pub fn kraft_sum(&self) -> f64 {
        self.ideal_lengths.iter().map(|l| 2f64.powf(-l)).sum()
    }

    pub fn kraft_ok(&self) -> bool {
        self.kraft_sum() <= 1.0 + KRAFT_TOL
    }

    /// No codeword is a prefix of another. Vacuously true in ideal mode.
    pub fn is_prefix_free(&self) -> bool {
        for (i, a) in self.codewords.iter().enumerate() {
            for (j, b) in self.codewords.iter().enumerate() {
                if i != j && b.len() >= a.len() && &b[..a.len()] == a.as_slice() {
                    return false;
                }
            }
        }
        true
    }

    /// Encodes a symbol-index message by codeword concatenation.
    pub fn encode(&self, message: &[usize]) -> Result<Vec<bool>> {
        if self.mode == LengthMode::Ideal {
            return Err(Error::Invalid("ideal-mode code has no codewords".into()));
        }
        let mut out = Vec::new();
        for &i in message {
            let w = self
                .codewords
                .get(i)
                .ok_or_else(|| Error::UnknownSymbol(i.to_string()))?;
            out.extend_from_slice(w);
        }
        Ok(out)
    }

    /// Single-pass left-to-right prefix decoding.
    pub fn decode(&self, bits: &[bool]) -> Result<Vec<usize>> {
        if self.mode == LengthMode::Ideal {
            return Err(Error::Invalid("ideal-mode code has no codewords".into()));
        }
        let mut out = Vec::new();
        let mut pos = 0;
        'outer: while pos < bits.len() {
            for (i, w) in self.codewords.iter().enumerate() {
                if !w.is_empty() && bits[pos..].len() >= w.len() && &bits[pos..pos + w.len()] == w.as_slice()
                {
                    out.push(i);
                    pos += w.len();
                    continue 'outer;
                }
            }
            return Err(Error::MalformedCode { position: pos });
        }
        Ok(out)
    }
}

struct HuffmanNode {
    prob: f64,
    /// Smallest symbol index contained; the deterministic tie-break.
    min_sym: usize,
    tree: HuffmanTree,
}

enum HuffmanTree {
    Leaf(usize),
    Node(Box<HuffmanTree>, Box<HuffmanTree>),
}

impl PartialEq for HuffmanNode {
    fn eq(&self, other: &Self) -> bool {
        self.prob == other.prob && self.min_sym == other.min_sym
    }
}
impl Eq for HuffmanNode {}

impl Ord for HuffmanNode {
    // Reversed so BinaryHeap pops the smallest (prob, min_sym) first.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .prob
            .total_cmp(&self.prob)
            .then(other.min_sym.cmp(&self.min_sym))
    }
}
impl PartialOrd for HuffmanNode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Builds the optimal binary prefix code for an ensemble.
///
/// Ties are broken by (probability, smallest contained symbol index);
/// the smaller-ordered node of each merge gets branch bit 0. A single
/// symbol gets the codeword "0".
pub fn huffman_build(ensemble: &ClassicalEnsemble) -> PrefixCode {
    let n = ensemble.probs.len();
    if n == 1 {
        return PrefixCode::from_codewords(ensemble.symbols.clone(), vec![vec![false]]).unwrap();
    }
    let mut heap: BinaryHeap<HuffmanNode> = (0..n)
        .map(|i| HuffmanNode {
            prob: ensemble.probs[i],
            min_sym: i,
            tree: HuffmanTree::Leaf(i),
        })
        .collect();
    while heap.len() > 1 {
        let a = heap.pop().unwrap();
        let b = heap.pop().unwrap();
        heap.push(HuffmanNode {
            prob: a.prob + b.prob,
            min_sym: a.min_sym.min(b.min_sym),
            tree: HuffmanTree::Node(Box::new(a.tree), Box::new(b.tree)),
        });
    }
    let root = heap.pop().unwrap().tree;
    let mut codewords = vec![Vec::new(); n];
    assign(&root, &mut Vec::new(), &mut codewords);
    PrefixCode::from_codewords(ensemble.symbols.clone(), codewords).unwrap()
}

fn assign(tree: &HuffmanTree, prefix: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
    match tree {
        HuffmanTree::Leaf(i) => out[*i] = prefix.clone(),
        HuffmanTree::Node(zero, one) => {
            prefix.push(false);
            assign(zero, prefix, out);
            prefix.pop();
            prefix.push(true);
            assign(one, prefix, out);
            prefix.pop();
        }
    }
}

/// The typical set `T_δ^N` of an i.i.d. source, by exact enumeration.
#[derive(Clone, Debug)]
pub struct TypicalSet {
    pub n: usize,
    pub delta: f64,
    /// Members as index strings, sorted lexicographically.
    pub members: Vec<BasisString>,
    pub total_prob: f64,
    pub entropy: f64,
}

impl TypicalSet {
    pub fn contains(&self, s: &BasisString) -> bool {
        self.members.binary_search(s).is_ok()
    }
}

/// Enumerates all `|A|^N` strings and keeps those with
/// `2^{−N(H+δ)} < p(x^N) < 2^{−N(H−δ)}` (strict bounds).
pub fn typical_set(probs: &[f64], n: usize, delta: f64) -> Result<TypicalSet> {
    let a = probs.len();
    let count = (a as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > ENUMERATION_GUARD {
        return Err(Error::EnumerationGuard {
            count,
            guard: ENUMERATION_GUARD,
        });
    }
    for &p in probs {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::NonPositiveProbability { value: p });
        }
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > PROB_TOL {
        return Err(Error::ProbabilitiesDoNotSum { sum });
    }
    let h = shannon_entropy_unchecked(probs);
    let lo = 2f64.powf(-(n as f64) * (h + delta));
    let hi = 2f64.powf(-(n as f64) * (h - delta));

    let mut members = Vec::new();
    let mut total_prob = 0.0;
    let mut string = vec![0u8; n];
    loop {
        let p: f64 = string.iter().map(|&x| probs[x as usize]).product();
        if p > lo && p < hi {
            members.push(BasisString::new(string.clone()));
            total_prob += p;
        }
        // Advance lexicographically.
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(TypicalSet {
                    n,
                    delta,
                    members,
                    total_prob,
                    entropy: h,
                });
            }
            k -= 1;
            string[k] += 1;
            if (string[k] as usize) < a {
                break;
            }
            string[k] = 0;
        }
    }
}

/// Lossy fixed-length block code over a typical set: typical strings
/// get distinct binary indices, everything else maps to a junk index.
#[derive(Clone, Debug)]
pub struct BlockCode {
    typical: TypicalSet,
    /// Bits per block; large enough for all typical indices plus junk.
    pub bits: usize,
    pub junk_index: usize,
}

impl BlockCode {
    pub fn new(typical: TypicalSet) -> Self {
        let t = typical.members.len();
        // Smallest width that also leaves a distinct junk index.
        let mut bits = usize::BITS as usize - t.leading_zeros() as usize; // ceil(log2(t+1))
        bits = bits.max(1);
        BlockCode {
            typical,
            bits,
            junk_index: t,
        }
    }

    pub fn typical(&self) -> &TypicalSet {
        &self.typical
    }

    /// Encodes a block; returns the index bits and whether the input
    /// was typical.
    pub fn encode(&self, block: &BasisString) -> (Vec<bool>, bool) {
        let (idx, ok) = match self.typical.members.binary_search(block) {
            Ok(i) => (i, true),
            Err(_) => (self.junk_index, false),
        };
        let bits = (0..self.bits)
            .rev()
            .map(|b| (idx >> b) & 1 == 1)
            .collect();
        (bits, ok)
    }

    /// Decodes index bits; `None` marks the junk index.
    pub fn decode(&self, bits: &[bool]) -> Result<Option<&BasisString>> {
        if bits.len() != self.bits {
            return Err(Error::MalformedCode { position: bits.len() });
        }
        let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        if idx < self.typical.members.len() {
            Ok(Some(&self.typical.members[idx]))
        } else {
            Ok(None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ens(probs: &[f64]) -> ClassicalEnsemble {
        ClassicalEnsemble::from_probs(probs).unwrap()
    }

    #[test]
    fn raw_information_examples() {
        let e = ens(&[0.5, 0.5]);
        let msg: Vec<&str> = vec!["0", "1", "0", "1", "0"];
        assert!((e.raw_information(&msg).unwrap() - 5.0).abs() < 1e-12);
        assert_eq!(e.raw_information(&[]).unwrap(), 0.0);

        let e4 = ens(&[0.25; 4]);
        assert!((e4.raw_information(&["0", "1", "2"]).unwrap() - 6.0).abs() < 1e-12);

        assert!(matches!(
            e.raw_information(&["2"]),
            Err(Error::UnknownSymbol(_))
        ));
    }

    #[test]
    fn shannon_entropy_examples() {
        assert_eq!(shannon_entropy(&[1.0]).unwrap(), 0.0);
        assert!((shannon_entropy(&[0.5, 0.5]).unwrap() - 1.0).abs() < 1e-12);
        assert!((shannon_entropy(&[0.9, 0.1]).unwrap() - 0.468996).abs() < 1e-5);
    }

    #[test]
    fn kraft_examples() {
        let complete = PrefixCode::from_codewords(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![false], vec![true, false], vec![true, true]],
        )
        .unwrap();
        assert!((complete.kraft_sum() - 1.0).abs() < 1e-12);
        assert!(complete.kraft_ok());
        assert!(complete.is_prefix_free());

        let bad = PrefixCode::from_codewords(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![false], vec![true], vec![false, false]],
        )
        .unwrap();
        assert!((bad.kraft_sum() - 1.25).abs() < 1e-12);
        assert!(!bad.kraft_ok());
        assert!(!bad.is_prefix_free());

        let ideal = PrefixCode::ideal(&ens(&[0.9, 0.1]));
        assert!((ideal.kraft_sum() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn huffman_examples() {
        let code = huffman_build(&ens(&[0.5, 0.25, 0.25]));
        let mut lens: Vec<usize> = code.codewords().iter().map(|w| w.len()).collect();
        assert_eq!(lens.remove(0), 1);
        assert_eq!(lens, vec![2, 2]);
        assert!((code.expected_length(&[0.5, 0.25, 0.25]) - 1.5).abs() < 1e-12);

        let single = huffman_build(&ens(&[1.0]));
        assert_eq!(single.codeword(0), &[false]);

        let quad = huffman_build(&ens(&[0.25; 4]));
        assert!(quad.codewords().iter().all(|w| w.len() == 2));
    }

    #[test]
    fn huffman_is_deterministic() {
        let e = ens(&[0.25, 0.25, 0.25, 0.25]);
        let a = huffman_build(&e);
        let b = huffman_build(&e);
        assert_eq!(a.codewords(), b.codewords());
    }

    #[test]
    fn symbol_round_trip() {
        let code = huffman_build(&ens(&[0.5, 0.25, 0.25]));
        // {a: 0, b: 10, c: 11}: "abc" -> "01011"
        let bits = code.encode(&[0, 1, 2]).unwrap();
        assert_eq!(bits, vec![false, true, false, true, true]);
        assert_eq!(code.decode(&bits).unwrap(), vec![0, 1, 2]);

        assert_eq!(code.encode(&[]).unwrap(), Vec::<bool>::new());

        // Trailing partial codeword is malformed.
        let r = code.decode(&[true]);
        assert!(matches!(r, Err(Error::MalformedCode { .. })));
    }

    #[test]
    fn typical_set_uniform_source() {
        for n in [1, 4, 8] {
            let t = typical_set(&[0.5, 0.5], n, 0.1).unwrap();
            assert_eq!(t.members.len(), 1 << n);
            assert!((t.total_prob - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn typical_set_skewed_source() {
        // p = (0.9, 0.1), N = 10, delta = 0.3: exactly the strings with
        // one '1'.
        let t = typical_set(&[0.9, 0.1], 10, 0.3).unwrap();
        assert_eq!(t.members.len(), 10);
        for m in &t.members {
            assert_eq!(m.letters().iter().filter(|&&x| x == 1).count(), 1);
        }
        let expect = 10.0 * 0.9f64.powi(9) * 0.1;
        assert!((t.total_prob - expect).abs() < 1e-12);
        assert!((t.total_prob - 0.3874).abs() < 1e-4);
    }

    #[test]
    fn typical_set_wide_tolerance_covers_everything() {
        let t = typical_set(&[0.9, 0.1], 4, 10.0).unwrap();
        assert_eq!(t.members.len(), 16);
        assert!((t.total_prob - 1.0).abs() < 1e-12);
    }

    #[test]
    fn typical_set_member_count_bound() {
        for delta in [0.1, 0.2, 0.3] {
            for n in [4, 8, 10] {
                let t = typical_set(&[0.9, 0.1], n, delta).unwrap();
                let bound = 2f64.powf(n as f64 * (t.entropy + delta));
                assert!(t.members.len() as f64 <= bound);
            }
        }
    }

    #[test]
    fn typical_set_guard() {
        let r = typical_set(&[0.25; 4], 14, 0.1);
        assert!(matches!(r, Err(Error::EnumerationGuard { .. })));
    }

    #[test]
    fn block_code_round_trip() {
        let t = typical_set(&[0.9, 0.1], 10, 0.3).unwrap();
        let p_t = t.total_prob;
        let code = BlockCode::new(t);
        assert_eq!(code.bits, 4);

        let typical_member = code.typical().members[3].clone();
        let (bits, ok) = code.encode(&typical_member);
        assert!(ok);
        assert_eq!(code.decode(&bits).unwrap(), Some(&typical_member));

        let junk = BasisString::new(vec![1; 10]);
        let (bits, ok) = code.encode(&junk);
        assert!(!ok);
        assert_eq!(code.decode(&bits).unwrap(), None);

        // Empirical success probability equals P_T.
        let mut success = 0.0;
        for idx in 0..1u32 << 10 {
            let s = BasisString::from_index(2, 10, idx as usize);
            let p: f64 = s
                .letters()
                .iter()
                .map(|&x| [0.9, 0.1][x as usize])
                .product();
            let (bits, _) = code.encode(&s);
            if code.decode(&bits).unwrap() == Some(&s) {
                success += p;
            }
        }
        assert!((success - p_t).abs() < 1e-12);
    }

    #[test]
    fn all_typical_block_code_is_lossless() {
        let t = typical_set(&[0.5, 0.5], 3, 0.5).unwrap();
        let code = BlockCode::new(t);
        for idx in 0..8 {
            let s = BasisString::from_index(2, 3, idx);
            let (bits, ok) = code.encode(&s);
            assert!(ok);
            assert_eq!(code.decode(&bits).unwrap(), Some(&s));
        }
    }

    #[test]
    fn core_information_examples() {
        let e = ens(&[1.0]);
        assert_eq!(e.core_information("0").unwrap(), 0.0);

        let e = ens(&[0.25, 0.75]);
        assert!((e.core_information("0").unwrap() - 2.0).abs() < 1e-12);

        let e = ens(&[0.9, 0.1]);
        let avg: f64 = e
            .probs()
            .iter()
            .zip(e.symbols())
            .map(|(p, s)| p * e.core_information(s).unwrap())
            .sum();
        assert!((avg - 0.468996).abs() < 1e-5);
        assert!((avg - e.shannon_entropy()).abs() < 1e-10);
    }
}
