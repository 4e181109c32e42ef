//! Automorphisms of the truncated binary rooted tree of depth `k`, stored as
//! portraits: one state bit per internal vertex.
//!
//! Vertices are addressed as `(level, position)` with the root at level 0
//! and positions 1-based within a level. Internally the bits are kept in heap
//! order (root at index 1, children of `v` at `2v` and `2v + 1`), packed into
//! `u64` words. An active state at a vertex swaps its two subtrees.
//!
//! Composition is right-to-left: `a.compose(&b)` applies `b` first. At the
//! portrait level this is `s_ab(v) = s_a(b(v)) XOR s_b(v)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::LeafPermutation;

pub const MAX_DEPTH: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexAddress {
    level: usize,
    position: usize,
}

impl VertexAddress {
    pub fn new(level: usize, position: usize) -> Result<Self> {
        if level > MAX_DEPTH {
            return Err(Error::LevelOutOfRange { level, depth: MAX_DEPTH });
        }
        if position == 0 || position > 1 << level {
            return Err(Error::PositionOutOfRange { level, position });
        }
        Ok(VertexAddress { level, position })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn position(&self) -> usize {
        self.position
    }

    fn heap_index(&self) -> usize {
        (1 << self.level) + self.position - 1
    }

    /// Graph distance in the tree.
    pub fn distance(&self, other: &VertexAddress) -> usize {
        let (mut a, mut b) = (self.heap_index(), other.heap_index());
        let mut d = 0;
        while a != b {
            if a > b {
                a /= 2;
            } else {
                b /= 2;
            }
            d += 1;
        }
        d
    }
}

/// T/C classification of an automorphism by its deepest level of states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementClass {
    /// States only on level `k−1`, odd count in each half of that level.
    TypeT { first_half: usize, second_half: usize },
    /// Odd count in each half of level `k−1`, with states above allowed.
    TypeC { first_half: usize, second_half: usize },
    Neither,
}

impl ElementClass {
    pub fn is_type_t(&self) -> bool {
        matches!(self, ElementClass::TypeT { .. })
    }

    /// True for `TypeC` and for `TypeT`, which is the special case.
    pub fn is_type_c(&self) -> bool {
        !matches!(self, ElementClass::Neither)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Portrait {
    depth: u8,
    // bit h is the state of the vertex with heap index h; bit 0 unused
    words: Vec<u64>,
}

impl Portrait {
    pub fn identity(depth: usize) -> Result<Self> {
        if depth == 0 || depth > MAX_DEPTH {
            return Err(Error::InvalidDepth { depth, max: MAX_DEPTH });
        }
        Ok(Portrait {
            depth: depth as u8,
            words: vec![0; (1usize << depth).div_ceil(64)],
        })
    }

    /// Portrait with exactly the listed vertices active.
    pub fn from_active(depth: usize, active: &[VertexAddress]) -> Result<Self> {
        let mut p = Portrait::identity(depth)?;
        for v in active {
            if v.level >= depth {
                return Err(Error::LevelOutOfRange { level: v.level, depth });
            }
            p.set(v.heap_index(), true);
        }
        Ok(p)
    }

    /// Builds a portrait from a raw bit mask (depth ≤ 6): bit `h − 1` of
    /// `mask` is the state of heap vertex `h`. Used to walk every portrait of
    /// a small tree.
    pub fn from_mask(depth: usize, mask: u64) -> Result<Self> {
        if depth == 0 || depth > 6 {
            return Err(Error::InvalidDepth { depth, max: 6 });
        }
        let nbits = (1u64 << depth) - 1;
        if nbits < 64 && mask >> nbits != 0 {
            return Err(Error::Precondition(format!("mask has bits beyond {nbits}")));
        }
        let mut p = Portrait::identity(depth)?;
        p.words[0] = mask << 1;
        Ok(p)
    }

    /// Inverse of [`Portrait::from_mask`].
    pub fn mask(&self) -> Option<u64> {
        (self.depth <= 6).then(|| self.words[0] >> 1)
    }

    pub fn depth(&self) -> usize {
        self.depth as usize
    }

    #[inline]
    fn get(&self, h: usize) -> bool {
        (self.words[h >> 6] >> (h & 63)) & 1 == 1
    }

    #[inline]
    fn set(&mut self, h: usize, on: bool) {
        let mask = 1u64 << (h & 63);
        if on {
            self.words[h >> 6] |= mask;
        } else {
            self.words[h >> 6] &= !mask;
        }
    }

    pub fn state(&self, v: VertexAddress) -> Result<bool> {
        if v.level >= self.depth() {
            return Err(Error::LevelOutOfRange {
                level: v.level,
                depth: self.depth(),
            });
        }
        Ok(self.get(v.heap_index()))
    }

    pub fn active_states(&self) -> Vec<VertexAddress> {
        let mut out = Vec::new();
        for level in 0..self.depth() {
            for pos in 0..1usize << level {
                if self.get((1 << level) + pos) {
                    out.push(VertexAddress { level, position: pos + 1 });
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn check_depth(&self, other: &Portrait) -> Result<()> {
        if self.depth != other.depth {
            return Err(Error::DepthMismatch {
                left: self.depth(),
                right: other.depth(),
            });
        }
        Ok(())
    }

    /// Heap index of the image of every internal vertex.
    fn vertex_images(&self) -> Vec<u32> {
        let internal = 1usize << self.depth();
        let mut img = vec![0u32; internal];
        img[1] = 1;
        for v in 1..internal / 2 {
            let s = self.get(v) as u32;
            let w = img[v] * 2;
            img[2 * v] = w + s;
            img[2 * v + 1] = w + (1 ^ s);
        }
        img
    }

    /// `self ∘ rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &Portrait) -> Result<Portrait> {
        self.check_depth(rhs)?;
        let img = rhs.vertex_images();
        let mut out = rhs.clone();
        for (v, &w) in img.iter().enumerate().skip(1) {
            if self.get(w as usize) {
                out.set(v, !out.get(v));
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Portrait {
        let img = self.vertex_images();
        let mut out = Portrait {
            depth: self.depth,
            words: vec![0; self.words.len()],
        };
        for (v, &w) in img.iter().enumerate().skip(1) {
            if self.get(v) {
                out.set(w as usize, true);
            }
        }
        out
    }

    /// Action on the `2^k` leaves, numbered 1..=2^k left to right.
    pub fn to_permutation(&self) -> LeafPermutation {
        let k = self.depth();
        let n = 1usize << k;
        let mut images = Vec::with_capacity(n);
        for x in 0..n {
            let mut v = 1usize;
            let mut out = 0usize;
            for level in 0..k {
                let b = (x >> (k - 1 - level)) & 1;
                out = (out << 1) | (b ^ self.get(v) as usize);
                v = 2 * v + b;
            }
            images.push(out as u16);
        }
        LeafPermutation::from_zero_based(images)
    }

    /// Recovers the portrait of a leaf permutation, failing if the
    /// permutation is not induced by a tree automorphism.
    pub fn from_permutation(p: &LeafPermutation) -> Result<Portrait> {
        let n = p.degree();
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::NotTreeAutomorphism(n));
        }
        let k = n.trailing_zeros() as usize;
        if k > MAX_DEPTH {
            return Err(Error::NotTreeAutomorphism(n));
        }
        let images = p.zero_based();
        let mut out = Portrait::identity(k)?;
        for level in 0..k {
            let shift = k - 1 - level;
            for pos in 0..1usize << level {
                let leaf = pos << (k - level);
                let s = ((images[leaf] as usize >> shift) ^ (leaf >> shift)) & 1;
                if s == 1 {
                    out.set((1 << level) + pos, true);
                }
            }
        }
        if &out.to_permutation() != p {
            return Err(Error::NotTreeAutomorphism(n));
        }
        Ok(out)
    }

    /// Number of active states on `level`.
    pub fn level_index(&self, level: usize) -> Result<usize> {
        if level >= self.depth() {
            return Err(Error::LevelOutOfRange {
                level,
                depth: self.depth(),
            });
        }
        Ok(self.count_range(1 << level, 2 << level))
    }

    fn count_range(&self, from: usize, to: usize) -> usize {
        (from..to).filter(|&h| self.get(h)).count()
    }

    /// Maximal tree distance between two active vertices on level `k−1`;
    /// 0 when fewer than two are active.
    pub fn vp_distance(&self) -> usize {
        let k = self.depth();
        let base = 1usize << (k - 1);
        let mut anchor = None;
        let mut spread = 0usize;
        for pos in 0..base {
            if self.get(base + pos) {
                match anchor {
                    None => anchor = Some(pos),
                    Some(a) => spread |= a ^ pos,
                }
            }
        }
        2 * (usize::BITS - spread.leading_zeros()) as usize
    }

    pub fn classify(&self) -> Result<ElementClass> {
        let k = self.depth();
        if k < 2 {
            return Err(Error::Precondition("depth >= 2 for T/C classification".into()));
        }
        let base = 1usize << (k - 1);
        let half = base / 2;
        let first_half = self.count_range(base, base + half);
        let second_half = self.count_range(base + half, 2 * base);
        if first_half.is_multiple_of(2) || second_half.is_multiple_of(2) {
            return Ok(ElementClass::Neither);
        }
        if self.count_range(1, base) == 0 {
            Ok(ElementClass::TypeT { first_half, second_half })
        } else {
            Ok(ElementClass::TypeC { first_half, second_half })
        }
    }

    /// Levels as bit strings, position 1 first.
    pub fn level_strings(&self) -> Vec<String> {
        (0..self.depth())
            .map(|l| {
                (0..1usize << l)
                    .map(|p| if self.get((1 << l) + p) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={}", self.depth)?;
        for (l, bits) in self.level_strings().iter().enumerate() {
            write!(f, ";L{l}={bits}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Portrait({self})")
    }
}

impl FromStr for Portrait {
    type Err = Error;

    /// Parses `k=3;L0=1;L1=00;L2=1001`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.trim().split(';');
        let head = parts.next().unwrap_or_default();
        let depth: usize = head
            .strip_prefix("k=")
            .and_then(|d| if d.starts_with('+') { None } else { d.parse().ok() })
            .ok_or_else(|| Error::Parse(format!("expected k=<depth>, got {head:?}")))?;
        let mut out = Portrait::identity(depth).map_err(|e| Error::Parse(e.to_string()))?;
        for level in 0..depth {
            let part = parts
                .next()
                .ok_or_else(|| Error::Parse(format!("missing level L{level}")))?;
            let prefix = format!("L{level}=");
            let bits = part
                .strip_prefix(prefix.as_str())
                .ok_or_else(|| Error::Parse(format!("expected {prefix}, got {part:?}")))?;
            if bits.len() != 1 << level {
                return Err(Error::Parse(format!(
                    "level {level} needs {} bits, got {}",
                    1 << level,
                    bits.len()
                )));
            }
            for (pos, c) in bits.bytes().enumerate() {
                match c {
                    b'0' => {}
                    b'1' => out.set((1 << level) + pos, true),
                    _ => return Err(Error::Parse(format!("bad bit {:?}", c as char))),
                }
            }
        }
        if parts.next().is_some() {
            return Err(Error::Parse("trailing fields after last level".into()));
        }
        Ok(out)
    }
}
