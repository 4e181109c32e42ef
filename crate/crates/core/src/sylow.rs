//! Generator families and Sylow 2-subgroup constructions for `S_n` and `A_n`.
//!
//! Tree-side families (`alpha`, `tau`, `s_beta`, the `B`/`W` bases) live on
//! the `2^k` leaves of a depth-`k` tree. Composite degrees are handled by
//! splitting `n` into its binary parts and laying the corresponding trees
//! on consecutive blocks of points, largest block first.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::EnumeratedGroup;
use crate::perm::{legendre_nu2, LeafPermutation, Parity};
use crate::tree::{Portrait, VertexAddress};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub perm: LeafPermutation,
    pub portrait: Option<Portrait>,
}

/// Named, ordered list of generators sharing one degree; labels are unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    name: String,
    degree: usize,
    elements: Vec<Generator>,
}

impl GeneratorSet {
    pub fn new(name: &str, degree: usize) -> Self {
        GeneratorSet {
            name: name.to_string(),
            degree,
            elements: Vec::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.elements.iter()
    }

    pub fn perms(&self) -> impl Iterator<Item = &LeafPermutation> {
        self.elements.iter().map(|g| &g.perm)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.elements.iter().map(|g| g.label.as_str()).collect()
    }

    pub fn get(&self, label: &str) -> Option<&Generator> {
        self.elements.iter().find(|g| g.label == label)
    }

    fn insert(&mut self, gen: Generator) -> Result<()> {
        if gen.perm.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: gen.perm.degree(),
            });
        }
        if self.get(&gen.label).is_some() {
            return Err(Error::Precondition(format!("unique label, {:?} repeated", gen.label)));
        }
        self.elements.push(gen);
        Ok(())
    }

    pub fn push(&mut self, label: &str, perm: LeafPermutation) -> Result<()> {
        self.insert(Generator {
            label: label.to_string(),
            perm,
            portrait: None,
        })
    }

    pub fn push_portrait(&mut self, label: &str, portrait: Portrait) -> Result<()> {
        self.insert(Generator {
            label: label.to_string(),
            perm: portrait.to_permutation(),
            portrait: Some(portrait),
        })
    }

    /// The generators at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> GeneratorSet {
        GeneratorSet {
            name: format!("{}{:?}", self.name, indices),
            degree: self.degree,
            elements: indices.iter().map(|&i| self.elements[i].clone()).collect(),
        }
    }

    pub fn to_json(&self) -> GeneratorSetJson {
        GeneratorSetJson {
            name: self.name.clone(),
            degree: self.degree,
            generators: self
                .elements
                .iter()
                .map(|g| GeneratorJson {
                    label: g.label.clone(),
                    cycles: g.perm.to_string(),
                    portrait: g.portrait.as_ref().map(ToString::to_string),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct GeneratorJson {
    pub label: String,
    pub cycles: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub portrait: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct GeneratorSetJson {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<GeneratorJson>,
}

fn vertex(level: usize, position: usize) -> Result<VertexAddress> {
    VertexAddress::new(level, position)
}

/// Single active state at `v_{i,1}`.
pub fn alpha(i: usize, k: usize) -> Result<Portrait> {
    if i >= k {
        return Err(Error::LevelOutOfRange { level: i, depth: k });
    }
    Portrait::from_active(k, &[vertex(i, 1)?])
}

/// Active states exactly at the given level-`(k−1)` positions.
pub fn tau_set(positions: &[usize], k: usize) -> Result<Portrait> {
    if k == 0 {
        return Err(Error::InvalidDepth { depth: 0, max: crate::tree::MAX_DEPTH });
    }
    let mut seen = HashSet::new();
    let mut active = Vec::with_capacity(positions.len());
    for &p in positions {
        if !seen.insert(p) {
            return Err(Error::DuplicatePosition(p));
        }
        active.push(vertex(k - 1, p)?);
    }
    Portrait::from_active(k, &active)
}

/// States at the first and last vertices of level `k−1`.
pub fn tau(k: usize) -> Result<Portrait> {
    if k < 2 {
        return Err(Error::Precondition("k >= 2 for tau".into()));
    }
    tau_set(&[1, 1 << (k - 1)], k)
}

fn alpha_label(i: usize) -> String {
    format!("alpha_{i}")
}

/// `{α₀, …, α_{k−2}}`.
pub fn s_alpha(k: usize) -> Result<GeneratorSet> {
    if k < 2 {
        return Err(Error::Precondition("k >= 2".into()));
    }
    let mut gs = GeneratorSet::new("S_alpha", 1 << k);
    for i in 0..k - 1 {
        gs.push_portrait(&alpha_label(i), alpha(i, k)?)?;
    }
    Ok(gs)
}

/// `{α₀, …, α_{k−2}, τ}`, a generating set of size `k`.
pub fn s_beta(k: usize) -> Result<GeneratorSet> {
    let mut gs = s_alpha(k)?;
    gs.name = "S_beta".into();
    gs.push_portrait("tau", tau(k)?)?;
    Ok(gs)
}

/// Generators of the complement `B_{k−1}` (states above level `k−1`).
pub fn b_subgroup_generators(k: usize) -> Result<GeneratorSet> {
    let mut gs = s_alpha(k)?;
    gs.name = "B".into();
    Ok(gs)
}

/// Adjacent-pair basis `τ_{i,i+1}` of the even-weight level-`(k−1)` states.
pub fn w_subgroup_generators(k: usize) -> Result<GeneratorSet> {
    if k < 2 {
        return Err(Error::Precondition("k >= 2".into()));
    }
    let mut gs = GeneratorSet::new("W", 1 << k);
    for i in 1..1usize << (k - 1) {
        gs.push_portrait(&format!("tau_{}_{}", i, i + 1), tau_set(&[i, i + 1], k)?)?;
    }
    Ok(gs)
}

/// Product of the labelled generators in written order (the leftmost
/// letter is applied last).
pub fn evaluate_word(word: &[String], gens: &GeneratorSet) -> Result<Portrait> {
    let depth = gens.degree().trailing_zeros() as usize;
    let mut acc = Portrait::identity(depth)?;
    for letter in word {
        let g = gens
            .get(letter)
            .ok_or_else(|| Error::UnknownLabel(letter.clone()))?;
        let p = g
            .portrait
            .as_ref()
            .ok_or_else(|| Error::Precondition(format!("{letter} has no portrait")))?;
        acc = acc.compose(p)?;
    }
    Ok(acc)
}

fn free_reduce(word: Vec<String>) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(word.len());
    for letter in word {
        if out.last() == Some(&letter) {
            out.pop();
        } else {
            out.push(letter);
        }
    }
    out
}

/// Word for `τ_{p, 2^{k−1}}`, `p` in the first half: conjugate `τ` by the
/// α's addressed by the binary digits of `p − 1`.
fn first_half_word(p: usize, k: usize) -> Vec<String> {
    let digits = p - 1;
    let prefix: Vec<String> = (1..k - 1)
        .filter(|&m| (digits >> (k - 2 - m)) & 1 == 1)
        .map(alpha_label)
        .collect();
    let mut word = prefix.clone();
    word.push("tau".into());
    word.extend(prefix.into_iter().rev());
    word
}

/// Same element moved to the second half by the root swap: `τ_{p+H, H}`.
fn second_half_word(p: usize, k: usize) -> Vec<String> {
    let mut word = vec![alpha_label(0)];
    word.extend(first_half_word(p, k));
    word.push(alpha_label(0));
    word
}

/// A word over `s_beta(k)` evaluating to `tau_set([i, j], k)`.
pub fn tau_ij_word(i: usize, j: usize, k: usize) -> Result<Vec<String>> {
    if k < 2 {
        return Err(Error::Precondition("k >= 2".into()));
    }
    let n = 1usize << (k - 1);
    let h = n / 2;
    if i == 0 || i >= j || j > n {
        return Err(Error::InvalidPair(i, j));
    }
    let word = if j <= h {
        [first_half_word(i, k), first_half_word(j, k)].concat()
    } else if i <= h && j == n {
        first_half_word(i, k)
    } else if i <= h {
        [
            first_half_word(i, k),
            second_half_word(j - h, k),
            second_half_word(h, k),
        ]
        .concat()
    } else {
        [second_half_word(i - h, k), second_half_word(j - h, k)].concat()
    };
    let word = free_reduce(word);
    let target = tau_set(&[i, j], k)?;
    if evaluate_word(&word, &s_beta(k)?)? != target {
        return Err(Error::Precondition(format!(
            "word for tau_{i}_{j} evaluates correctly (got {word:?})"
        )));
    }
    Ok(word)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    S,
    A,
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S" | "s" => Ok(Kind::S),
            "A" | "a" => Ok(Kind::A),
            _ => Err(Error::Parse(format!("kind must be S or A, got {s:?}"))),
        }
    }
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kind::S => "S",
            Kind::A => "A",
        })
    }
}

/// Exponent `e` with `|Syl₂| = 2^e` for `S_n` or `A_n`.
pub fn syl2_order(n: u64, kind: Kind) -> u64 {
    let nu = legendre_nu2(n);
    match kind {
        Kind::S => nu,
        Kind::A => nu.saturating_sub(1),
    }
}

/// Binary parts of `n`: exponents `k₁ > k₂ > … ≥ 0` with `Σ 2^{kᵢ} = n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub n: u64,
    pub parts: Vec<u32>,
}

impl Decomposition {
    pub fn block_sizes(&self) -> Vec<u64> {
        self.parts.iter().map(|&e| 1u64 << e).collect()
    }

    /// `|Syl₂(S_{2^e})| = 2^{2^e − 1}` for each part.
    pub fn part_exponents(&self) -> Vec<u64> {
        self.parts.iter().map(|&e| (1u64 << e) - 1).collect()
    }
}

pub fn decompose(n: u64) -> Decomposition {
    let parts = (0..u64::BITS).rev().filter(|&b| (n >> b) & 1 == 1).collect();
    Decomposition { n, parts }
}

/// Generators of `Syl₂(S_n)`: the α's of each block's tree, blocks laid out
/// largest first on consecutive points.
pub fn syl2_s_generators(n: usize) -> Result<GeneratorSet> {
    if n < 2 {
        return Err(Error::Precondition("n >= 2".into()));
    }
    let mut gs = GeneratorSet::new(&format!("Syl2_S_{n}"), n);
    let mut offset = 0;
    for e in decompose(n as u64).parts {
        let e = e as usize;
        let size = 1usize << e;
        for i in 0..e {
            let perm = alpha(i, e)?.to_permutation().embed(offset, n)?;
            gs.push(&format!("alpha_{i}@{}-{}", offset + 1, offset + size), perm)?;
        }
        offset += size;
    }
    Ok(gs)
}

/// Transposition of the last two points of the last block of size ≥ 2.
fn parity_corrector(n: usize) -> Result<LeafPermutation> {
    let mut offset = 0;
    let mut last = None;
    for e in decompose(n as u64).parts {
        let size = 1usize << e;
        if size >= 2 {
            last = Some(offset + size);
        }
        offset += size;
    }
    let end = last.ok_or_else(|| Error::Precondition("n >= 2".into()))?;
    LeafPermutation::transposition(n, end - 1, end)
}

/// Generators of `Syl₂(A_n)`: each odd generator of `syl2_s_generators(n)`
/// is multiplied by a fixed transposition; generators that become the
/// identity are dropped.
pub fn syl2_a_generators(n: usize) -> Result<GeneratorSet> {
    let base = syl2_s_generators(n)?;
    let h = parity_corrector(n)?;
    let mut gs = GeneratorSet::new(&format!("Syl2_A_{n}"), n);
    for g in base.iter() {
        if g.perm.parity() == Parity::Even {
            gs.push(&g.label, g.perm.clone())?;
        } else {
            let fixed = g.perm.mul(&h);
            if !fixed.is_identity() {
                gs.push(&format!("{}*h", g.label), fixed)?;
            }
        }
    }
    Ok(gs)
}

/// Both constructions of `Par(Syl₂(S_n))`: the even elements of the full
/// Sylow subgroup, and the closure of the parity-corrected generators.
pub fn boxtimes_routes(n: usize, cap: usize) -> Result<(EnumeratedGroup, EnumeratedGroup)> {
    let exponent = syl2_order(n as u64, Kind::A);
    if exponent >= usize::BITS as u64 || (1usize << exponent) > cap {
        return Err(Error::CapExceeded { cap, partial: 0 });
    }
    let full = EnumeratedGroup::generate(&syl2_s_generators(n)?, cap.saturating_mul(2))?;
    let even: Vec<LeafPermutation> = full.iter().filter(|x| x.is_even()).cloned().collect();
    let filtered = EnumeratedGroup::from_trusted(&format!("Par(Syl2_S_{n})"), n, even);
    let generated = EnumeratedGroup::generate(&syl2_a_generators(n)?, cap)?;
    Ok((filtered, generated))
}

/// `Syl₂(S_{2^{k₁}}) ⊠ … ⊠ Syl₂(S_{2^{k_m}})`, the even part of the block
/// product. Both routes must agree.
pub fn boxtimes_group(n: usize, cap: usize) -> Result<EnumeratedGroup> {
    let (filtered, generated) = boxtimes_routes(n, cap)?;
    if filtered.elements() != generated.elements() {
        return Err(Error::Precondition(format!(
            "parity filter ({}) and corrected generators ({}) agree for n = {n}",
            filtered.order(),
            generated.order()
        )));
    }
    Ok(generated)
}

/// `σ ↦ σ·(m+1, m+2)^{χ(σ)}` on `n ≥ m + 2` points; the result is even.
pub fn parity_extension(sigma: &LeafPermutation, n: usize) -> Result<LeafPermutation> {
    let m = sigma.degree();
    if n < m + 2 {
        return Err(Error::Precondition(format!("target degree {n} >= {}", m + 2)));
    }
    let extended = sigma.extend(n)?;
    Ok(match sigma.parity() {
        Parity::Even => extended,
        Parity::Odd => extended.mul(&LeafPermutation::transposition(n, m + 1, m + 2)?),
    })
}

/// Order relations between neighbouring alternating and symmetric degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioCheck {
    pub k: u64,
    /// `e(A_{4k+3}) − e(A_{4k+1})`; expected 1.
    pub gap_4k3_over_4k1: i64,
    /// `e(A_{2k+1}) = e(A_{2k})`.
    pub odd_even_equal_a: bool,
    /// `e(S_{2k+1}) = e(S_{2k})`.
    pub odd_even_equal_s: bool,
    /// `e(A_{4k}) − e(A_{4k−2})`.
    pub gap_4k_over_4km2: i64,
    /// `ν₂(4k) + ν₂(4k−1)`, the valuation of `(4k)!/(4k−2)!`.
    pub expected_gap: i64,
    /// Whether `A_{4k}` has the larger Sylow subgroup.
    pub larger_at_4k: bool,
}

impl RatioCheck {
    pub fn holds(&self) -> bool {
        self.gap_4k3_over_4k1 == 1
            && self.odd_even_equal_a
            && self.odd_even_equal_s
            && self.gap_4k_over_4km2 == self.expected_gap
    }
}

pub fn order_ratio_checks(k_max: u64) -> Vec<RatioCheck> {
    let e = |n: u64, kind| syl2_order(n, kind) as i64;
    let v2 = |n: u64| n.trailing_zeros() as i64;
    (1..=k_max)
        .map(|k| {
            let gap = e(4 * k, Kind::A) - e(4 * k - 2, Kind::A);
            RatioCheck {
                k,
                gap_4k3_over_4k1: e(4 * k + 3, Kind::A) - e(4 * k + 1, Kind::A),
                odd_even_equal_a: e(2 * k + 1, Kind::A) == e(2 * k, Kind::A),
                odd_even_equal_s: e(2 * k + 1, Kind::S) == e(2 * k, Kind::S),
                gap_4k_over_4km2: gap,
                expected_gap: v2(4 * k) + v2(4 * k - 1),
                larger_at_4k: gap > 0,
            }
        })
        .collect()
}
