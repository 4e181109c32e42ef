//! Exhaustive finite-group machinery over permutation groups small enough to
//! list element by element.
//!
//! Every group is stored as its full, sorted element list together with a
//! hash index. Subgroups built from arbitrary element sets pick a small
//! generating subset greedily, so closures stay cheap even when the input
//! set (all squares, all commutators) is large.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::LeafPermutation;
use crate::sylow::GeneratorSet;

/// Default enumeration cap (2^20 elements).
pub const DEFAULT_CAP: usize = 1 << 20;

#[derive(Debug, Clone)]
pub struct EnumeratedGroup {
    label: String,
    degree: usize,
    generators: GeneratorSet,
    elements: Vec<LeafPermutation>,
    lookup: HashSet<LeafPermutation>,
}

fn closure(
    start: impl IntoIterator<Item = LeafPermutation>,
    gens: &[LeafPermutation],
    cap: usize,
) -> Result<HashSet<LeafPermutation>> {
    let mut seen: HashSet<LeafPermutation> = HashSet::new();
    let mut queue = Vec::new();
    for x in start {
        if seen.insert(x.clone()) {
            queue.push(x);
        }
    }
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = g.mul(&x);
            if !seen.contains(&y) {
                seen.insert(y.clone());
                if seen.len() > cap {
                    return Err(Error::CapExceeded {
                        cap,
                        partial: seen.len(),
                    });
                }
                queue.push(y);
            }
        }
    }
    Ok(seen)
}

impl EnumeratedGroup {
    /// Closure of `gens` under composition. The element set does not depend
    /// on generator order or traversal order.
    pub fn generate(gens: &GeneratorSet, cap: usize) -> Result<Self> {
        let perms: Vec<LeafPermutation> = gens.perms().cloned().collect();
        let set = closure([LeafPermutation::identity(gens.degree())], &perms, cap)?;
        Ok(Self::from_set(gens.name().to_string(), gens.degree(), gens.clone(), set))
    }

    /// `⟨candidates⟩`, choosing generators greedily from the candidates in
    /// the order given.
    pub fn generated_by<I>(label: &str, degree: usize, candidates: I, cap: usize) -> Result<Self>
    where
        I: IntoIterator<Item = LeafPermutation>,
    {
        let mut gens = GeneratorSet::new(label, degree);
        let mut chosen: Vec<LeafPermutation> = Vec::new();
        let mut set: HashSet<LeafPermutation> = [LeafPermutation::identity(degree)].into();
        for c in candidates {
            if c.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: c.degree(),
                });
            }
            if set.contains(&c) {
                continue;
            }
            gens.push(&format!("g{}", chosen.len()), c.clone())?;
            chosen.push(c);
            set = closure(set, &chosen, cap)?;
        }
        Ok(Self::from_set(label.to_string(), degree, gens, set))
    }

    fn from_set(
        label: String,
        degree: usize,
        generators: GeneratorSet,
        lookup: HashSet<LeafPermutation>,
    ) -> Self {
        let mut elements: Vec<LeafPermutation> = lookup.iter().cloned().collect();
        elements.sort_unstable();
        EnumeratedGroup {
            label,
            degree,
            generators,
            elements,
            lookup,
        }
    }

    /// Wraps an element list already known to be a group (no check).
    pub(crate) fn from_trusted(label: &str, degree: usize, elements: Vec<LeafPermutation>) -> Self {
        let lookup: HashSet<LeafPermutation> = elements.into_iter().collect();
        Self::from_set(label.to_string(), degree, GeneratorSet::new(label, degree), lookup)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_trusted("trivial", degree, vec![LeafPermutation::identity(degree)])
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    /// Elements in canonical (sorted image sequence) order.
    pub fn elements(&self) -> &[LeafPermutation] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = &LeafPermutation> {
        self.elements.iter()
    }

    pub(crate) fn has(&self, x: &LeafPermutation) -> bool {
        self.lookup.contains(x)
    }

    pub fn contains(&self, x: &LeafPermutation) -> Result<bool> {
        self.check_degree(x.degree())?;
        Ok(self.has(x))
    }

    fn check_degree(&self, degree: usize) -> Result<()> {
        if degree != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: degree,
            });
        }
        Ok(())
    }

    /// Generators for conjugation tests: the recorded generators, or every
    /// element when none were recorded.
    fn acting_set(&self) -> Vec<&LeafPermutation> {
        if self.generators.is_empty() && self.order() > 1 {
            self.elements.iter().collect()
        } else {
            self.generators.perms().collect()
        }
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.acting_set();
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.elements
            .iter()
            .map(LeafPermutation::order)
            .fold(1, |acc, o| acc / gcd(acc, o) * o)
    }

    pub fn center(&self) -> EnumeratedGroup {
        let gens = self.acting_set();
        let elements: Vec<LeafPermutation> = self
            .elements
            .iter()
            .filter(|x| gens.iter().all(|g| g.mul(x) == x.mul(g)))
            .cloned()
            .collect();
        Self::from_trusted(&format!("Z({})", self.label), self.degree, elements)
    }

    /// True iff `candidates` generates exactly this group.
    pub fn is_generated_by<'a, I>(&self, candidates: I) -> Result<bool>
    where
        I: IntoIterator<Item = &'a LeafPermutation>,
    {
        let gens: Vec<LeafPermutation> = candidates.into_iter().cloned().collect();
        for g in &gens {
            self.check_degree(g.degree())?;
            if !self.has(g) {
                return Ok(false);
            }
        }
        match closure([LeafPermutation::identity(self.degree)], &gens, self.order()) {
            Ok(set) => Ok(set.len() == self.order()),
            Err(Error::CapExceeded { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }

    pub fn fingerprint(&self) -> Result<Fingerprint> {
        let series = derived_series(self)?;
        Ok(Fingerprint {
            order: self.order(),
            abelian: self.is_abelian(),
            exponent: self.exponent(),
            derived_length: derived_length(&series),
            center_size: self.center().order(),
        })
    }
}

/// Isomorphism invariants used to compare small groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub abelian: bool,
    pub exponent: u64,
    /// `None` when the derived series stalls above the trivial group.
    pub derived_length: Option<usize>,
    pub center_size: usize,
}

pub fn is_subgroup(h: &EnumeratedGroup, g: &EnumeratedGroup) -> Result<bool> {
    g.check_degree(h.degree)?;
    Ok(h.order() <= g.order() && h.iter().all(|x| g.has(x)))
}

/// `H ⊴ G`: `H ≤ G` and `g h g⁻¹ ∈ H` for every generator `g` of `G`, `h ∈ H`.
pub fn is_normal(h: &EnumeratedGroup, g: &EnumeratedGroup) -> Result<bool> {
    Ok(normality_witness(h, g)?.is_none())
}

/// A conjugate `g h g⁻¹` falling outside `H`, or an element of `H` outside `G`.
fn normality_witness(
    h: &EnumeratedGroup,
    g: &EnumeratedGroup,
) -> Result<Option<(LeafPermutation, LeafPermutation)>> {
    if !is_subgroup(h, g)? {
        let outside = h.iter().find(|x| !g.has(x)).cloned();
        return Ok(outside.map(|x| (LeafPermutation::identity(g.degree), x)));
    }
    for gen in g.acting_set() {
        let inv = gen.inverse();
        for x in h.iter() {
            let c = gen.mul(x).mul(&inv);
            if !h.has(&c) {
                return Ok(Some((gen.clone(), x.clone())));
            }
        }
    }
    Ok(None)
}

/// Outcome of checking `G = B ⋉ W`, with witnesses for each failed condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupRelation {
    pub b_order: usize,
    pub w_order: usize,
    pub g_order: usize,
    pub b_in_g: bool,
    pub w_normal: bool,
    pub trivial_intersection: bool,
    pub orders_multiply: bool,
    pub witnesses: Vec<String>,
}

impl SubgroupRelation {
    pub fn holds(&self) -> bool {
        self.b_in_g && self.w_normal && self.trivial_intersection && self.orders_multiply
    }

    /// Recomputes the relation from the groups and compares with the record.
    pub fn reverify(
        &self,
        b: &EnumeratedGroup,
        w: &EnumeratedGroup,
        g: &EnumeratedGroup,
    ) -> Result<bool> {
        Ok(verify_semidirect(b, w, g)? == *self)
    }
}

pub fn verify_semidirect(
    b: &EnumeratedGroup,
    w: &EnumeratedGroup,
    g: &EnumeratedGroup,
) -> Result<SubgroupRelation> {
    g.check_degree(b.degree)?;
    g.check_degree(w.degree)?;
    let mut witnesses = Vec::new();
    let b_in_g = is_subgroup(b, g)?;
    if !b_in_g {
        if let Some(x) = b.iter().find(|x| !g.has(x)) {
            witnesses.push(format!("B element {x} not in G"));
        }
    }
    let w_normal = match normality_witness(w, g)? {
        None => true,
        Some((gen, x)) => {
            witnesses.push(format!("conjugate of {x} by {gen} leaves W"));
            false
        }
    };
    let shared: Vec<&LeafPermutation> = b.iter().filter(|x| w.has(x) && !x.is_identity()).collect();
    let trivial_intersection = shared.is_empty();
    if let Some(x) = shared.first() {
        witnesses.push(format!("{x} lies in B and W"));
    }
    let orders_multiply = b.order() * w.order() == g.order();
    if !orders_multiply {
        witnesses.push(format!("|B||W| = {} != |G| = {}", b.order() * w.order(), g.order()));
    }
    Ok(SubgroupRelation {
        b_order: b.order(),
        w_order: w.order(),
        g_order: g.order(),
        b_in_g,
        w_normal,
        trivial_intersection,
        orders_multiply,
        witnesses,
    })
}

/// Normal closure in `g` of `seed`.
fn normal_closure(
    label: &str,
    g: &EnumeratedGroup,
    seed: Vec<LeafPermutation>,
) -> Result<EnumeratedGroup> {
    let mut n = EnumeratedGroup::generated_by(label, g.degree, seed, g.order())?;
    let acting: Vec<LeafPermutation> = g.acting_set().into_iter().cloned().collect();
    loop {
        let mut extra = Vec::new();
        for a in &acting {
            let inv = a.inverse();
            for x in n.generators.perms() {
                let c = a.mul(x).mul(&inv);
                if !n.has(&c) {
                    extra.push(c);
                }
            }
        }
        if extra.is_empty() {
            return Ok(n);
        }
        let candidates: Vec<LeafPermutation> =
            n.generators.perms().cloned().chain(extra).collect();
        n = EnumeratedGroup::generated_by(label, g.degree, candidates, g.order())?;
    }
}

/// `[G, G]`, as the normal closure of the generator commutators.
pub fn commutator_subgroup(g: &EnumeratedGroup) -> Result<EnumeratedGroup> {
    let gens = g.acting_set();
    let mut seed = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.commutator(b);
            if !c.is_identity() {
                seed.push(c);
            }
        }
    }
    normal_closure(&format!("[{0},{0}]", g.label), g, seed)
}

/// `⟨x² : x ∈ G⟩`.
pub fn squares_subgroup(g: &EnumeratedGroup) -> Result<EnumeratedGroup> {
    let squares = g.iter().map(|x| x.mul(x));
    EnumeratedGroup::generated_by(&format!("{}^2", g.label), g.degree, squares, g.order())
}

fn require_two_group(g: &EnumeratedGroup) -> Result<()> {
    if g.order().is_power_of_two() {
        Ok(())
    } else {
        Err(Error::NotTwoGroup(g.order()))
    }
}

/// Both routes to the Frattini subgroup of a 2-group.
#[derive(Debug, Clone)]
pub struct FrattiniAnalysis {
    pub squares: EnumeratedGroup,
    pub commutators: EnumeratedGroup,
    pub frattini: EnumeratedGroup,
    /// Whether `[G,G] ⊆ ⟨squares⟩`, i.e. the commutators added nothing.
    pub squares_absorb_commutators: bool,
}

pub fn frattini_analysis(g: &EnumeratedGroup) -> Result<FrattiniAnalysis> {
    require_two_group(g)?;
    let squares = squares_subgroup(g)?;
    let commutators = commutator_subgroup(g)?;
    let squares_absorb_commutators = is_subgroup(&commutators, &squares)?;
    let frattini = if squares_absorb_commutators {
        squares.clone()
    } else {
        let union = squares
            .generators
            .perms()
            .chain(commutators.generators.perms())
            .cloned();
        EnumeratedGroup::generated_by("Phi", g.degree, union, g.order())?
    }
    .with_label(&format!("Phi({})", g.label));
    Ok(FrattiniAnalysis {
        squares,
        commutators,
        frattini,
        squares_absorb_commutators,
    })
}

/// `Φ(G) = G²·[G,G]` for a 2-group.
pub fn frattini_subgroup(g: &EnumeratedGroup) -> Result<EnumeratedGroup> {
    Ok(frattini_analysis(g)?.frattini)
}

/// `log₂ |G / Φ(G)|`.
pub fn quotient_rank(g: &EnumeratedGroup) -> Result<u32> {
    let phi = frattini_subgroup(g)?;
    Ok((g.order() / phi.order()).trailing_zeros())
}

/// Minimal number of generators of a 2-group (Burnside basis theorem:
/// equals the quotient rank).
pub fn minimal_rank(g: &EnumeratedGroup) -> Result<u32> {
    quotient_rank(g)
}

/// `G ⊇ G' ⊇ G'' ⊇ …`, stopping once a term repeats.
pub fn derived_series(g: &EnumeratedGroup) -> Result<Vec<EnumeratedGroup>> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().expect("series is non-empty");
        let next = commutator_subgroup(last)?;
        if next.order() == last.order() {
            return Ok(series);
        }
        series.push(next);
    }
}

/// Number of strict steps down to the trivial group.
pub fn derived_length(series: &[EnumeratedGroup]) -> Option<usize> {
    let last = series.last()?;
    (last.order() == 1).then(|| series.len() - 1)
}

/// Pairs tested above the exhaustive threshold, on top of generator pairs.
const RANDOM_PAIRS: usize = 4096;

/// Checks `map(xy) = map(x)·map(y)`, exhaustively when `|G| ≤ 2^7`,
/// otherwise over generator/element pairs plus seeded random pairs.
/// `map` returning `None` anywhere on `G` is an error.
pub fn homomorphism_check<T, F, Op>(g: &EnumeratedGroup, map: F, target_op: Op, seed: u64) -> Result<bool>
where
    T: PartialEq,
    F: Fn(&LeafPermutation) -> Option<T>,
    Op: Fn(&T, &T) -> T,
{
    let mut images: HashMap<&LeafPermutation, T> = HashMap::with_capacity(g.order());
    for x in g.iter() {
        images.insert(x, map(x).ok_or(Error::PartialMap)?);
    }
    let check = |x: &LeafPermutation, y: &LeafPermutation| -> bool {
        let xy = x.mul(y);
        match images.get(&xy) {
            Some(img) => *img == target_op(&images[x], &images[y]),
            None => false,
        }
    };
    if g.order() <= 1 << 7 {
        return Ok(g.iter().all(|x| g.iter().all(|y| check(x, y))));
    }
    for gen in g.acting_set() {
        for x in g.iter() {
            if !check(gen, x) || !check(x, gen) {
                return Ok(false);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elements = g.elements();
    for _ in 0..RANDOM_PAIRS {
        let x = &elements[rng.gen_range(0..elements.len())];
        let y = &elements[rng.gen_range(0..elements.len())];
        if !check(x, y) {
            return Ok(false);
        }
    }
    Ok(true)
}
