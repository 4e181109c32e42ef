//! Permutations of `{1, …, n}` with parity, cycle type and the 2-adic
//! Legendre valuation that every Sylow order formula goes through.
//!
//! Points are 1-based at the public surface. Internally images are stored
//! 0-based as `u16`, which caps the degree at 65536 (the leaf count of a
//! depth-16 tree).

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// The parity bit (0 for even, 1 for odd).
    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A bijection of `{1, …, degree}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeafPermutation {
    images: Box<[u16]>,
}

impl LeafPermutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        LeafPermutation {
            images: (0..degree).map(|i| i as u16).collect(),
        }
    }

    /// Builds a permutation from 1-based images: `images[i - 1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(Error::NotAPermutation(format!("degree {n} exceeds {MAX_DEGREE}")));
        }
        let mut seen = vec![false; n];
        let mut packed = Vec::with_capacity(n);
        for (i, &img) in images.iter().enumerate() {
            if img == 0 || img > n {
                return Err(Error::NotAPermutation(format!(
                    "image {img} of point {} outside 1..={n}",
                    i + 1
                )));
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(Error::NotAPermutation(format!("image {img} repeated")));
            }
            packed.push((img - 1) as u16);
        }
        Ok(LeafPermutation {
            images: packed.into_boxed_slice(),
        })
    }

    /// Caller guarantees `images` is a 0-based bijection.
    pub(crate) fn from_zero_based(images: Vec<u16>) -> Self {
        debug_assert!(is_bijection(&images));
        LeafPermutation {
            images: images.into_boxed_slice(),
        }
    }

    pub(crate) fn zero_based(&self) -> &[u16] {
        &self.images
    }

    /// The transposition `(a b)` on `degree` points.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self> {
        Self::from_cycles(degree, &[&[a, b]])
    }

    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::NotAPermutation(format!("degree {degree} exceeds {MAX_DEGREE}")));
        }
        let mut images: Vec<u16> = (0..degree).map(|i| i as u16).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &p in cycle.iter() {
                if p == 0 || p > degree {
                    return Err(Error::NotAPermutation(format!("point {p} outside 1..={degree}")));
                }
                if std::mem::replace(&mut used[p - 1], true) {
                    return Err(Error::NotAPermutation(format!("point {p} appears twice")));
                }
            }
            for (idx, &p) in cycle.iter().enumerate() {
                let next = cycle[(idx + 1) % cycle.len()];
                images[p - 1] = (next - 1) as u16;
            }
        }
        Ok(LeafPermutation::from_zero_based(images))
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `point`.
    pub fn image(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img as usize)
    }

    /// `self ∘ rhs`: apply `rhs` first, then `self`.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.degree() != rhs.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: rhs.degree(),
            });
        }
        Ok(self.mul(rhs))
    }

    pub(crate) fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.degree(), rhs.degree());
        LeafPermutation {
            images: rhs.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            inv[img as usize] = i as u16;
        }
        LeafPermutation::from_zero_based(inv)
    }

    /// `self ∘ rhs ∘ self⁻¹`.
    pub fn conjugate(&self, rhs: &Self) -> Self {
        self.mul(rhs).mul(&self.inverse())
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).mul(&self.inverse()).mul(&rhs.inverse())
    }

    /// Cycles of length ≥ 2, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.images[p] as usize;
            }
            lengths.push(len);
        }
        lengths
    }

    /// Sign via `n − #cycles (mod 2)`.
    pub fn parity(&self) -> Parity {
        let cycles = self.cycle_lengths().len();
        if (self.degree() - cycles).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_lengths(self.cycle_lengths())
    }

    /// Element order: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |acc, len| lcm(acc, len as u64))
    }

    /// Extends to `degree` points, fixing every new point.
    pub fn extend(&self, degree: usize) -> Result<Self> {
        if degree < self.degree() || degree > MAX_DEGREE {
            return Err(Error::Precondition(format!(
                "cannot extend degree {} to {degree}",
                self.degree()
            )));
        }
        let mut images = self.images.to_vec();
        images.extend((self.degree()..degree).map(|i| i as u16));
        Ok(LeafPermutation::from_zero_based(images))
    }

    /// Copies this permutation onto the block `offset+1 ..= offset+degree` of a
    /// permutation on `total` points.
    pub fn embed(&self, offset: usize, total: usize) -> Result<Self> {
        if offset + self.degree() > total || total > MAX_DEGREE {
            return Err(Error::Precondition(format!(
                "block {}..{} does not fit in {total} points",
                offset + 1,
                offset + self.degree()
            )));
        }
        let mut images: Vec<u16> = (0..total).map(|i| i as u16).collect();
        for (i, &img) in self.images.iter().enumerate() {
            images[offset + i] = (offset + img as usize) as u16;
        }
        Ok(LeafPermutation::from_zero_based(images))
    }

    /// Packed image sequence: one byte per 0-based image when the degree is
    /// at most 256, otherwise two bytes big-endian.
    pub fn to_packed_bytes(&self) -> Vec<u8> {
        if self.degree() <= 256 {
            self.images.iter().map(|&i| i as u8).collect()
        } else {
            self.images.iter().flat_map(|&i| i.to_be_bytes()).collect()
        }
    }

    pub fn from_packed_bytes(degree: usize, bytes: &[u8]) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::NotAPermutation(format!("degree {degree} exceeds {MAX_DEGREE}")));
        }
        let images: Vec<u16> = if degree <= 256 {
            if bytes.len() != degree {
                return Err(Error::Parse(format!(
                    "expected {degree} bytes, got {}",
                    bytes.len()
                )));
            }
            bytes.iter().map(|&b| b as u16).collect()
        } else {
            if bytes.len() != 2 * degree {
                return Err(Error::Parse(format!(
                    "expected {} bytes, got {}",
                    2 * degree,
                    bytes.len()
                )));
            }
            bytes
                .chunks_exact(2)
                .map(|c| u16::from_be_bytes([c[0], c[1]]))
                .collect()
        };
        if !is_bijection(&images) {
            return Err(Error::NotAPermutation("packed images are not a bijection".into()));
        }
        Ok(LeafPermutation::from_zero_based(images))
    }

    /// Parses one-line cycle notation such as `(1 2)(7 8)`; `()` is the identity.
    /// Commas are accepted as separators inside a cycle.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let cycles = parse_cycle_list(text)?;
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Self::from_cycles(degree, &refs).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<usize>>> {
    let text = text.trim();
    let mut cycles = Vec::new();
    let mut rest = text;
    if rest.is_empty() {
        return Err(Error::Parse("empty cycle notation".into()));
    }
    while !rest.is_empty() {
        rest = rest.trim_start();
        let Some(body) = rest.strip_prefix('(') else {
            return Err(Error::Parse(format!("expected '(' at {rest:?}")));
        };
        let Some(close) = body.find(')') else {
            return Err(Error::Parse("unterminated cycle".into()));
        };
        let inner = &body[..close];
        if inner.contains('(') {
            return Err(Error::Parse("nested '('".into()));
        }
        let points = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad point {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = &body[close + 1..];
    }
    Ok(cycles)
}

fn is_bijection(images: &[u16]) -> bool {
    let mut seen = vec![false; images.len()];
    images.iter().all(|&i| {
        let i = i as usize;
        i < seen.len() && !std::mem::replace(&mut seen[i], true)
    })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for LeafPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LeafPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LeafPermutation[{}]{}", self.degree(), self)
    }
}

/// Multiset of cycle lengths (fixed points included), stored in decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleType {
    lengths: Vec<usize>,
}

impl CycleType {
    pub fn from_lengths(mut lengths: Vec<usize>) -> Self {
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { lengths }
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    /// Number of cycles of exactly this length.
    pub fn count(&self, len: usize) -> usize {
        self.lengths.iter().filter(|&&l| l == len).count()
    }

    pub fn degree(&self) -> usize {
        self.lengths.iter().sum()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut lengths = self.lengths.clone();
        lengths.dedup();
        let parts: Vec<String> = lengths
            .iter()
            .rev()
            .map(|&l| format!("{l}^{}", self.count(l)))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Exponent of 2 in `n!`: `Σ_{i≥1} ⌊n / 2^i⌋`.
pub fn legendre_nu2(n: u64) -> u64 {
    let mut total = 0;
    let mut q = n / 2;
    while q > 0 {
        total += q;
        q /= 2;
    }
    total
}
