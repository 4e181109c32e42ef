//! Reference implementations used as test oracles. Deliberately naive and
//! independent of the library's own permutation and portrait code.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use sylow2::{LeafPermutation, Portrait};

/// 0-based image vector.
pub type Perm = Vec<usize>;

pub fn identity(n: usize) -> Perm {
    (0..n).collect()
}

/// `a ∘ b`: apply `b` first.
pub fn mul(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&x| a[x]).collect()
}

pub fn inverse(a: &Perm) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

pub fn from_lib(p: &LeafPermutation) -> Perm {
    p.images().into_iter().map(|x| x - 1).collect()
}

/// Parity by counting inversions.
pub fn is_even(a: &Perm) -> bool {
    let mut inversions = 0usize;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if a[i] > a[j] {
                inversions += 1;
            }
        }
    }
    inversions.is_multiple_of(2)
}

/// Naive breadth-first closure under right multiplication by generators.
pub fn closure(n: usize, gens: &[Perm]) -> HashSet<Perm> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity(n));
    queue.push_back(identity(n));
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mul(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Reads the level bit strings out of the portrait text form.
pub fn levels(text: &str) -> Vec<Vec<bool>> {
    text.split(';')
        .skip(1)
        .map(|part| {
            let bits = part.split('=').nth(1).expect("level has '='");
            bits.chars().map(|c| c == '1').collect()
        })
        .collect()
}

/// Leaf action computed recursively: a state at a vertex swaps its two
/// subtrees after the subtrees have been acted on.
pub fn leaf_action(p: &Portrait) -> Perm {
    let levels = levels(&p.to_string());
    let k = levels.len();
    fn act(levels: &[Vec<bool>], level: usize, pos: usize, leaf: usize, k: usize) -> usize {
        if level == k {
            return 0;
        }
        let half = 1usize << (k - level - 1);
        let (side, rest) = if leaf < half { (0, leaf) } else { (1, leaf - half) };
        let below = act(levels, level + 1, 2 * pos + side, rest, k);
        let flipped = side ^ usize::from(levels[level][pos]);
        flipped * half + below
    }
    (0..1usize << k).map(|x| act(&levels, 0, 0, x, k)).collect()
}

/// Counts 2-power factors of `n!` by multiplying out with big integers.
pub fn factorial_nu2(n: u64) -> u64 {
    use num_bigint::BigUint;
    let mut f = BigUint::from(1u32);
    for i in 2..=n {
        f *= i;
    }
    f.trailing_zeros().unwrap_or(0)
}
