//! Claim registry and JSON verification reports.
//!
//! Each claim checker runs over its whole parameter range and produces one
//! record. Records are ordered by claim id regardless of the order in which
//! the (parallel) checkers finish.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cache;
use crate::error::{Error, Result};
use crate::group::{self, EnumeratedGroup, DEFAULT_CAP};
use crate::perm::{legendre_nu2, LeafPermutation};
use crate::sylow::{self, Kind};
use crate::tree::{ElementClass, Portrait, VertexAddress};

pub const REPORT_TOOL: &str = "sylow2";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedCap,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub claim_id: String,
    pub anchor: String,
    pub parameters: Value,
    pub status: Status,
    pub witnesses: Value,
    pub runtime_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub tool: String,
    pub tool_version: String,
    pub timestamp: String,
    pub config: Value,
    pub claims: Vec<ClaimRecord>,
}

impl VerificationReport {
    pub fn all_passed(&self, strict: bool) -> bool {
        self.claims.iter().all(|c| match c.status {
            Status::Pass => true,
            Status::Fail => false,
            Status::SkippedCap => !strict,
        })
    }

    /// `(claim_id, status)` pairs, for comparing runs.
    pub fn status_vector(&self) -> Vec<(String, Status)> {
        self.claims
            .iter()
            .map(|c| (c.claim_id.clone(), c.status))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Config {
    /// Single depth to check; overrides `max_k` for depth-ranged claims.
    pub k: Option<usize>,
    /// Single degree to check; overrides the default degree list.
    pub n: Option<usize>,
    pub max_k: usize,
    pub max_n: usize,
    pub cap: usize,
    pub seed: u64,
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,
    #[serde(skip)]
    pub trust_cache: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            k: None,
            n: None,
            max_k: 4,
            max_n: 12,
            cap: DEFAULT_CAP,
            seed: 0,
            cache_dir: None,
            trust_cache: false,
        }
    }
}

impl Config {
    fn depths(&self) -> Result<Vec<usize>> {
        match self.k {
            Some(k) if k < 2 => Err(Error::Precondition(format!("k >= 2, got {k}"))),
            Some(k) if k > crate::tree::MAX_DEPTH => {
                Err(Error::Precondition(format!("k <= {}, got {k}", crate::tree::MAX_DEPTH)))
            }
            Some(k) => Ok(vec![k]),
            None if self.max_k < 2 => Err(Error::Precondition("max-k >= 2".into())),
            None => Ok((2..=self.max_k.min(crate::tree::MAX_DEPTH)).collect()),
        }
    }

    fn degrees(&self, defaults: &[usize]) -> Result<Vec<usize>> {
        match self.n {
            Some(n) if n < 2 => Err(Error::Precondition(format!("n >= 2, got {n}"))),
            Some(n) => Ok(vec![n]),
            None => Ok(defaults.iter().copied().filter(|&n| n <= self.max_n).collect()),
        }
    }
}

enum Check {
    Pass(Value),
    Fail(Value),
    Skipped(Value),
}

impl Check {
    fn from_bool(ok: bool, witness: Value) -> Check {
        if ok {
            Check::Pass(witness)
        } else {
            Check::Fail(witness)
        }
    }

    fn from_result(r: Result<Check>) -> Check {
        match r {
            Ok(c) => c,
            Err(Error::CapExceeded { cap, partial }) => {
                Check::Skipped(json!({"cap": cap, "partial": partial}))
            }
            Err(e) => Check::Fail(json!({"error": e.to_string()})),
        }
    }
}

struct Context {
    config: Config,
    groups: Mutex<HashMap<usize, Arc<EnumeratedGroup>>>,
}

impl Context {
    /// `G_k = ⟨S_β(k)⟩`, memoised and optionally disk-cached.
    fn g(&self, k: usize) -> Result<Arc<EnumeratedGroup>> {
        if let Some(g) = self.groups.lock().expect("group memo").get(&k) {
            return Ok(g.clone());
        }
        let exponent = (1u64 << k) - 2;
        if exponent >= 63 || (1u64 << exponent) > self.config.cap as u64 {
            return Err(Error::CapExceeded {
                cap: self.config.cap,
                partial: 0,
            });
        }
        let build = || {
            Ok(EnumeratedGroup::generate(&sylow::s_beta(k)?, self.config.cap)?
                .with_label(&format!("G_{k}")))
        };
        let g = match &self.config.cache_dir {
            Some(dir) => cache::load_or_build(dir, &format!("G_{k}"), self.config.trust_cache, build)?,
            None => build()?,
        };
        let g = Arc::new(g);
        self.groups.lock().expect("group memo").insert(k, g.clone());
        Ok(g)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.config.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

type Checker = fn(&Context) -> Result<Vec<(String, Check)>>;

struct ClaimSpec {
    id: &'static str,
    anchor: &'static str,
    run: Checker,
}

const REGISTRY: &[ClaimSpec] = &[
    ClaimSpec { id: "boxtimes", anchor: "even part of the block product of Sylow 2-subgroups: filtered and generated constructions agree, orders 2^{e(A_n)}", run: check_boxtimes },
    ClaimSpec { id: "derived-series", anchor: "derived length of G_k (Klein group at k = 2 has length 1)", run: check_derived_series },
    ClaimSpec { id: "distance-invariance", anchor: "conjugation preserves vertex-permutation distance; within-half pairs never generate a type-T element", run: check_distance },
    ClaimSpec { id: "evenness", anchor: "every element of G_k is an even permutation of the 2^k leaves", run: check_evenness },
    ClaimSpec { id: "faithfulness", anchor: "portraits act faithfully on leaves; portrait recovery inverts the leaf action", run: check_faithfulness },
    ClaimSpec { id: "frattini-levels", anchor: "Frattini subgroup elements have even index on levels 0..k-2 and are never type T", run: check_frattini_levels },
    ClaimSpec { id: "legendre", anchor: "2-adic valuation of n! via Legendre's sum equals n - popcount(n)", run: check_legendre },
    ClaimSpec { id: "level-homomorphisms", anchor: "level-index parity maps and the half-parity map are homomorphisms G_k -> C_2 killing all squares", run: check_level_homomorphisms },
    ClaimSpec { id: "minimality", anchor: "G_k / Phi(G_k) has rank k; no (k-1)-subset of S_beta generates G_k; Phi = <squares> = <squares, commutators>", run: check_minimality },
    ClaimSpec { id: "odd-factor-parity", anchor: "a word evaluating to a type-T element uses an odd number of type-C letters", run: check_odd_factor },
    ClaimSpec { id: "order-Gk", anchor: "|<S_beta(k)>| = 2^(2^k - 2)", run: check_order_gk },
    ClaimSpec { id: "order-ratios", anchor: "e(A_{4k+3}) - e(A_{4k+1}) = 1, e(X_{2k+1}) = e(X_{2k}), gap between A_{4k-2} and A_{4k}", run: check_order_ratios },
    ClaimSpec { id: "parity-extension", anchor: "sigma -> sigma (m+1 m+2)^chi(sigma) embeds Syl_2(S_m) into A_{m+2} onto the boxtimes group", run: check_parity_extension },
    ClaimSpec { id: "portrait-oracle", anchor: "portrait composition and inversion agree with leaf-permutation composition", run: check_portrait_oracle },
    ClaimSpec { id: "semidirect", anchor: "G_k = B_{k-1} x| W_{k-1}: W normal, trivial intersection, |B||W| = |G|", run: check_semidirect },
    ClaimSpec { id: "single-state-parity", anchor: "a single state on level l is an involution with 2^(k-l-1) transpositions, even iff l < k-1", run: check_single_state },
    ClaimSpec { id: "small-fingerprints", anchor: "G_2 is the Klein group; e(A_7) = e(A_6) = 3", run: check_small_fingerprints },
    ClaimSpec { id: "t-nonclosure", anchor: "products and squares of type-T (and type-C) elements are not type T (C)", run: check_t_nonclosure },
    ClaimSpec { id: "tau-ij", anchor: "every tau_ij is a word in alpha_0..alpha_{k-2} and tau", run: check_tau_ij },
    ClaimSpec { id: "w-structure", anchor: "W_{k-1} is elementary abelian of order 2^(2^(k-1) - 1)", run: check_w_structure },
];

pub fn claim_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|c| c.id).collect()
}

pub fn tool_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

/// Runs the named claims (all claims when `ids` is empty).
pub fn run(ids: &[String], config: Config) -> Result<VerificationReport> {
    let selected: Vec<&ClaimSpec> = if ids.is_empty() {
        REGISTRY.iter().collect()
    } else {
        ids.iter()
            .map(|id| {
                REGISTRY
                    .iter()
                    .find(|c| c.id == id)
                    .ok_or_else(|| Error::UnknownLabel(id.clone()))
            })
            .collect::<Result<_>>()?
    };
    // parameter errors are usage errors, not claim failures
    config.depths()?;
    config.degrees(&[])?;

    let ctx = Context {
        config,
        groups: Mutex::new(HashMap::new()),
    };
    let mut claims: Vec<ClaimRecord> = selected
        .par_iter()
        .map(|spec| run_one(spec, &ctx))
        .collect();
    claims.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
    claims.dedup_by(|a, b| a.claim_id == b.claim_id);

    Ok(VerificationReport {
        tool: REPORT_TOOL.into(),
        tool_version: tool_version().into(),
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        config: serde_json::to_value(&ctx.config).expect("config serializes"),
        claims,
    })
}

fn run_one(spec: &ClaimSpec, ctx: &Context) -> ClaimRecord {
    let start = Instant::now();
    let checks = match (spec.run)(ctx) {
        Ok(checks) => checks,
        Err(e) => vec![("all".to_string(), Check::from_result(Err(e)))],
    };
    let mut status = Status::Pass;
    let mut witnesses = BTreeMap::new();
    let mut keys = Vec::new();
    for (key, check) in checks {
        let (s, w) = match check {
            Check::Pass(w) => (Status::Pass, w),
            Check::Fail(w) => (Status::Fail, json!({"counterexample": w})),
            Check::Skipped(w) => (Status::SkippedCap, json!({"skipped": w})),
        };
        status = match (status, s) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::SkippedCap, _) | (_, Status::SkippedCap) => Status::SkippedCap,
            _ => Status::Pass,
        };
        keys.push(key.clone());
        witnesses.insert(key, w);
    }
    ClaimRecord {
        claim_id: spec.id.into(),
        anchor: spec.anchor.into(),
        parameters: json!({ "cases": keys }),
        status,
        witnesses: serde_json::to_value(witnesses).expect("witnesses serialize"),
        runtime_ms: start.elapsed().as_millis() as u64,
    }
}

fn per_depth<F>(ctx: &Context, f: F) -> Result<Vec<(String, Check)>>
where
    F: Fn(usize) -> Result<Check> + Sync,
{
    Ok(ctx
        .config
        .depths()?
        .into_iter()
        .map(|k| (format!("k={k}"), Check::from_result(f(k))))
        .collect())
}

fn portrait_of(x: &LeafPermutation) -> Result<Portrait> {
    Portrait::from_permutation(x)
}

fn check_order_gk(ctx: &Context) -> Result<Vec<(String, Check)>> {
    per_depth(ctx, |k| {
        let g = ctx.g(k)?;
        let expected = 1usize << ((1 << k) - 2);
        Ok(Check::from_bool(
            g.order() == expected,
            json!({"order": g.order(), "expected": expected, "log2_order": g.order().trailing_zeros()}),
        ))
    })
}

fn check_evenness(ctx: &Context) -> Result<Vec<(String, Check)>> {
    per_depth(ctx, |k| {
        let g = ctx.g(k)?;
        let odd = g.iter().find(|x| !x.is_even()).map(ToString::to_string);
        Ok(match odd {
            None => Check::Pass(json!({"checked": g.order()})),
            Some(x) => Check::Fail(json!({"odd_element": x})),
        })
    })
}

fn check_semidirect(ctx: &Context) -> Result<Vec<(String, Check)>> {
    per_depth(ctx, |k| {
        let g = ctx.g(k)?;
        let b = EnumeratedGroup::generate(&sylow::b_subgroup_generators(k)?, ctx.config.cap)?;
        let w = EnumeratedGroup::generate(&sylow::w_subgroup_generators(k)?, ctx.config.cap)?;
        let rel = group::verify_semidirect(&b, &w, &g)?;
        let expected_half = (1usize << (k - 1)) - 1;
        let ok = rel.holds()
            && b.order() == 1 << expected_half
            && w.order() == 1 << expected_half;
        Ok(Check::from_bool(
            ok,
            json!({
                "relation": rel,
                "log2": format!("2^{} * 2^{} = 2^{}", b.order().trailing_zeros(), w.order().trailing_zeros(), g.order().trailing_zeros()),
            }),
        ))
    })
}

fn check_w_structure(ctx: &Context) -> Result<Vec<(String, Check)>> {
    per_depth(ctx, |k| {
        let w = EnumeratedGroup::generate(&sylow::w_subgroup_generators(k)?, ctx.config.cap)?;
        let expected = 1usize << ((1 << (k - 1)) - 1);
        let abelian = w.is_abelian();
        let exponent = w.exponent();
        let level_only = w.iter().all(|x| {
            portrait_of(x)
                .map(|p| (0..k - 1).all(|l| p.level_index(l) == Ok(0)))
                .unwrap_or(false)
        });
        Ok(Check::from_bool(
            w.order() == expected && abelian && exponent == 2 && level_only,
            json!({"order": w.order(), "expected": expected, "abelian": abelian, "exponent": exponent, "states_only_on_last_level": level_only}),
        ))
    })
}

/// All index subsets of size `size` of `0..n`, in lexicographic order.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

const POOL_SIZE: usize = 200;

fn check_minimality(ctx: &Context) -> Result<Vec<(String, Check)>> {
    per_depth(ctx, |k| {
        let g = ctx.g(k)?;
        let analysis = group::frattini_analysis(&g)?;
        let phi = &analysis.frattini;
        let rank = (g.order() / phi.order()).trailing_zeros() as usize;
        let phi_is_squares = phi.elements() == analysis.squares.elements();
        let phi_normal = group::is_normal(phi, &g)?;
        let quotient_exponent_two = g.iter().all(|x| phi.has(&x.mul(x)));

        let s_beta = sylow::s_beta(k)?;
        let mut generating_subsets = Vec::new();
        for idx in subsets(s_beta.len(), k - 1) {
            let sub = s_beta.subset(&idx);
            if g.is_generated_by(sub.perms())? {
                generating_subsets.push(sub.labels().join(","));
            }
        }
        let full_generates = g.is_generated_by(s_beta.perms())?;

        let mut pool_report = Value::Null;
        let mut pool_ok = true;
        if k <= 3 {
            let mut rng = ctx.rng(0x6d696e + k as u64);
            let pool: Vec<&LeafPermutation> = (0..POOL_SIZE)
                .map(|_| &g.elements()[rng.gen_range(0..g.order())])
                .collect();
            let mut tested = 0usize;
            let mut found = None;
            for idx in subsets(pool.len(), k - 1) {
                tested += 1;
                if g.is_generated_by(idx.iter().map(|&i| pool[i]))? {
                    found = Some(idx.iter().map(|&i| pool[i].to_string()).collect::<Vec<_>>());
                    break;
                }
            }
            pool_ok = found.is_none();
            pool_report = json!({"pool": POOL_SIZE, "subsets_tested": tested, "generating_subset": found});
        }

        let ok = rank == k
            && analysis.squares_absorb_commutators
            && phi_is_squares
            && phi_normal
            && quotient_exponent_two
            && generating_subsets.is_empty()
            && full_generates
            && pool_ok;
        Ok(Check::from_bool(
            ok,
            json!({
                "order": g.order(),
                "frattini_order": phi.order(),
                "squares_order": analysis.squares.order(),
                "commutator_order": analysis.commutators.order(),
                "quotient_rank": rank,
                "quotient_factors": rank,
                "squares_absorb_commutators": analysis.squares_absorb_commutators,
                "frattini_equals_squares": phi_is_squares,
                "quotient_exponent_two": quotient_exponent_two,
                "s_beta_generates": full_generates,
                "generating_proper_subsets": generating_subsets,
                "random_pool": pool_report,
            }),
        ))
    })
}

const SAMPLE_THRESHOLD: usize = 100_000;
const SAMPLES: usize = 10_000;

fn check_frattini_levels(ctx: &Context) -> Result<Vec<(String, Check)>> {
    per_depth(ctx, |k| {
        let g = ctx.g(k)?;
        let phi = group::frattini_subgroup(&g)?;
        let elements: Vec<&LeafPermutation> = if phi.order() <= SAMPLE_THRESHOLD {
            phi.iter().collect()
        } else {
            let mut rng = ctx.rng(0x7068 + k as u64);
            (0..SAMPLES)
                .map(|_| &phi.elements()[rng.gen_range(0..phi.order())])
                .collect()
        };
        let mut violations = Vec::new();
        for x in &elements {
            let p = portrait_of(x)?;
            let odd_level = (0..k - 1).find(|&l| p.level_index(l).map_or(true, |c| c % 2 == 1));
            if odd_level.is_some() || p.classify()?.is_type_t() {
                violations.push(p.to_string());
                if violations.len() >= 5 {
                    break;
                }
            }
        }
        Ok(Check::from_bool(
            violations.is_empty(),
            json!({"frattini_order": phi.order(), "checked": elements.len(), "exhaustive": elements.len() == phi.order(), "violations": violations}),
        ))
    })
}

/// Every type-T portrait of depth `k` (states only on level `k−1`, odd/odd halves).
fn type_t_elements(k: usize) -> Result<Vec<Portrait>> {
    let width = 1usize << (k - 1);
    if width > 16 {
        return Err(Error::CapExceeded {
            cap: 1 << 16,
            partial: 0,
        });
    }
    let mut out = Vec::new();
    for mask in 0u32..1 << width {
        let positions: Vec<usize> = (0..width).filter(|&i| (mask >> i) & 1 == 1).map(|i| i + 1).collect();
        let p = sylow::tau_set(&positions, k)?;
        if p.classify()?.is_type_t() {
            out.push(p);
        }
    }
    Ok(out)
}

fn check_t_nonclosure(ctx: &Context) -> Result<Vec<(String, Check)>> {
    per_depth(ctx, |k| {
        let t = type_t_elements(k)?;
        if t.len() * t.len() > 1 << 22 {
            return Err(Error::CapExceeded {
                cap: 1 << 22,
                partial: t.len() * t.len(),
            });
        }
        let mut pairs = 0usize;
        let mut violations = Vec::new();
        for x in &t {
            if x.compose(x)?.classify()?.is_type_t() {
                violations.push(format!("square of {x}"));
            }
            for y in &t {
                pairs += 1;
                if x.compose(y)?.classify()?.is_type_t() {
                    violations.push(format!("{x} * {y}"));
                }
            }
        }

        // type-C elements of G_k, exhaustive when small, else sampled
        let g = ctx.g(k)?;
        let c: Vec<Portrait> = g
            .iter()
            .map(portrait_of)
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|p| p.classify().map(|c| c.is_type_c()).unwrap_or(false))
            .collect();
        let mut c_pairs = 0usize;
        let mut rng = ctx.rng(0x74 + k as u64);
        let pair_iter: Vec<(usize, usize)> = if c.len() * c.len() <= 1 << 20 {
            (0..c.len()).flat_map(|i| (0..c.len()).map(move |j| (i, j))).collect()
        } else {
            (0..SAMPLES).map(|_| (rng.gen_range(0..c.len()), rng.gen_range(0..c.len()))).collect()
        };
        for (i, j) in pair_iter {
            c_pairs += 1;
            if c[i].compose(&c[j])?.classify()?.is_type_c() {
                violations.push(format!("C product {} * {}", c[i], c[j]));
            }
        }
        for x in &c {
            if x.compose(x)?.classify()?.is_type_c() {
                violations.push(format!("C square {x}"));
            }
        }
        violations.truncate(5);
        Ok(Check::from_bool(
            violations.is_empty(),
            json!({"type_t_count": t.len(), "t_pairs": pairs, "type_c_in_g": c.len(), "c_pairs": c_pairs, "violations": violations}),
        ))
    })
}

fn check_tau_ij(ctx: &Context) -> Result<Vec<(String, Check)>> {
    per_depth(ctx, |k| {
        let gens = sylow::s_beta(k)?;
        let n = 1usize << (k - 1);
        if n * n > 1 << 16 {
            return Err(Error::CapExceeded { cap: 1 << 15, partial: 0 });
        }
        let mut checked = 0;
        let mut longest = 0;
        let mut failures = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                checked += 1;
                match sylow::tau_ij_word(i, j, k) {
                    Ok(word) => {
                        longest = longest.max(word.len());
                        if sylow::evaluate_word(&word, &gens)? != sylow::tau_set(&[i, j], k)? {
                            failures.push(format!("tau_{i}_{j}"));
                        }
                    }
                    Err(e) => failures.push(format!("tau_{i}_{j}: {e}")),
                }
            }
        }
        Ok(Check::from_bool(
            failures.is_empty(),
            json!({"pairs": checked, "longest_word": longest, "failures": failures}),
        ))
    })
}

const LEGENDRE_LIMIT: u64 = 1_000_000;

fn check_legendre(_ctx: &Context) -> Result<Vec<(String, Check)>> {
    let fixed = [(8u64, 7u64), (22, 19), (24, 22)];
    let mut out: Vec<(String, Check)> = fixed
        .iter()
        .map(|&(n, e)| {
            let got = legendre_nu2(n);
            (format!("n={n}"), Check::from_bool(got == e, json!({"nu2": got, "expected": e})))
        })
        .collect();
    let bad = (0..=LEGENDRE_LIMIT).find(|&n| legendre_nu2(n) != n - n.count_ones() as u64);
    out.push((
        "popcount-identity".into(),
        match bad {
            None => Check::Pass(json!({"checked_up_to": LEGENDRE_LIMIT})),
            Some(n) => Check::Fail(json!({"n": n, "nu2": legendre_nu2(n)})),
        },
    ));
    Ok(out)
}

const BOXTIMES_DEGREES: &[usize] = &[4, 6, 7, 8, 12];

fn check_boxtimes(ctx: &Context) -> Result<Vec<(String, Check)>> {
    Ok(ctx
        .config
        .degrees(BOXTIMES_DEGREES)?
        .into_iter()
        .map(|n| {
            let check = (|| {
                let (filtered, generated) = sylow::boxtimes_routes(n, ctx.config.cap)?;
                let expected = 1usize << sylow::syl2_order(n as u64, Kind::A);
                let same = filtered.elements() == generated.elements();
                Ok(Check::from_bool(
                    same && generated.order() == expected,
                    json!({
                        "filtered_order": filtered.order(),
                        "generated_order": generated.order(),
                        "expected": expected,
                        "routes_agree": same,
                        "generators": sylow::syl2_a_generators(n)?.to_json(),
                    }),
                ))
            })();
            (format!("n={n}"), Check::from_result(check))
        })
        .collect())
}

fn check_parity_extension(ctx: &Context) -> Result<Vec<(String, Check)>> {
    let sources: Vec<usize> = [4usize, 8]
        .into_iter()
        .filter(|&m| m + 2 <= ctx.config.max_n.max(6))
        .collect();
    Ok(sources
        .into_iter()
        .map(|m| {
            let check = (|| {
                let n = m + 2;
                let syl_s = EnumeratedGroup::generate(&sylow::syl2_s_generators(m)?, ctx.config.cap)?;
                let image: Vec<LeafPermutation> = syl_s
                    .iter()
                    .map(|s| sylow::parity_extension(s, n))
                    .collect::<Result<_>>()?;
                let image_set: HashSet<&LeafPermutation> = image.iter().collect();
                let injective = image_set.len() == syl_s.order();
                let all_even = image.iter().all(LeafPermutation::is_even);
                let hom = group::homomorphism_check(
                    &syl_s,
                    |s| sylow::parity_extension(s, n).ok(),
                    |a, b| a.mul(b),
                    ctx.config.seed,
                )?;
                let target = sylow::boxtimes_group(n, ctx.config.cap)?;
                let mut sorted = image.clone();
                sorted.sort_unstable();
                let equals_boxtimes = sorted.as_slice() == target.elements();
                let fp = target.fingerprint()?;
                let source_fp = syl_s.fingerprint()?;
                let mut ok = injective && all_even && hom && equals_boxtimes && fp == source_fp;
                if m == 4 {
                    // dihedral of order 8
                    ok &= fp.order == 8 && !fp.abelian && fp.exponent == 4;
                }
                Ok(Check::from_bool(
                    ok,
                    json!({
                        "source_order": syl_s.order(),
                        "injective": injective,
                        "image_even": all_even,
                        "homomorphism": hom,
                        "image_equals_boxtimes": equals_boxtimes,
                        "fingerprint": fp,
                    }),
                ))
            })();
            (format!("m={m}"), Check::from_result(check))
        })
        .collect())
}

fn check_small_fingerprints(ctx: &Context) -> Result<Vec<(String, Check)>> {
    let klein = Check::from_result((|| {
        let fp = ctx.g(2)?.fingerprint()?;
        Ok(Check::from_bool(
            fp.order == 4 && fp.abelian && fp.exponent == 2 && fp.derived_length == Some(1),
            json!({"fingerprint": fp}),
        ))
    })());
    let e7 = sylow::syl2_order(7, Kind::A);
    let e6 = sylow::syl2_order(6, Kind::A);
    Ok(vec![
        ("G_2".into(), klein),
        ("A7-vs-A6".into(), Check::from_bool(e7 == 3 && e6 == 3, json!({"e7": e7, "e6": e6}))),
    ])
}

const RATIO_K_MAX: u64 = 25;

fn check_order_ratios(_ctx: &Context) -> Result<Vec<(String, Check)>> {
    let checks = sylow::order_ratio_checks(RATIO_K_MAX);
    let failures: Vec<&sylow::RatioCheck> = checks.iter().filter(|c| !c.holds()).collect();
    let larger_at_4k = checks.iter().all(|c| c.larger_at_4k);
    let gaps: Vec<i64> = checks.iter().map(|c| c.gap_4k_over_4km2).collect();
    Ok(vec![(
        format!("k<={RATIO_K_MAX}"),
        Check::from_bool(
            failures.is_empty(),
            json!({
                "failures": failures,
                "gaps_4k_over_4k_minus_2": gaps,
                "larger_sylow_at_4k": larger_at_4k,
            }),
        ),
    )])
}

fn check_portrait_oracle(ctx: &Context) -> Result<Vec<(String, Check)>> {
    per_depth(ctx, |k| {
        if k > 3 {
            // 2^15 x 2^15 pairs at k = 4; sample instead
            return sampled_oracle(ctx, k);
        }
        let all: Vec<Portrait> = (0..1u64 << ((1 << k) - 1))
            .map(|m| Portrait::from_mask(k, m))
            .collect::<Result<_>>()?;
        let perms: Vec<LeafPermutation> = all.iter().map(Portrait::to_permutation).collect();
        let id = Portrait::identity(k)?;
        let mut mismatches = Vec::new();
        let mut pairs = 0usize;
        for (a, pa) in all.iter().zip(&perms) {
            if a.compose(&a.inverse())? != id {
                mismatches.push(format!("inverse of {a}"));
            }
            for (b, pb) in all.iter().zip(&perms) {
                pairs += 1;
                if a.compose(b)?.to_permutation() != pa.mul(pb) {
                    mismatches.push(format!("{a} * {b}"));
                }
            }
        }
        mismatches.truncate(5);
        Ok(Check::from_bool(
            mismatches.is_empty(),
            json!({"pairs": pairs, "exhaustive": true, "mismatches": mismatches}),
        ))
    })
}

fn random_portrait(rng: &mut ChaCha8Rng, k: usize) -> Result<Portrait> {
    let active: Vec<VertexAddress> = (0..k)
        .flat_map(|l| (1..=1usize << l).map(move |p| (l, p)))
        .filter(|_| rng.gen_bool(0.5))
        .map(|(l, p)| VertexAddress::new(l, p))
        .collect::<Result<_>>()?;
    Portrait::from_active(k, &active)
}

fn sampled_oracle(ctx: &Context, k: usize) -> Result<Check> {
    let mut rng = ctx.rng(0x6f72 + k as u64);
    let mut mismatches = Vec::new();
    for _ in 0..SAMPLES {
        let a = random_portrait(&mut rng, k)?;
        let b = random_portrait(&mut rng, k)?;
        if a.compose(&b)?.to_permutation() != a.to_permutation().mul(&b.to_permutation()) {
            mismatches.push(format!("{a} * {b}"));
        }
    }
    mismatches.truncate(5);
    Ok(Check::from_bool(
        mismatches.is_empty(),
        json!({"pairs": SAMPLES, "exhaustive": false, "mismatches": mismatches}),
    ))
}

fn check_faithfulness(ctx: &Context) -> Result<Vec<(String, Check)>> {
    per_depth(ctx, |k| {
        if k > 4 {
            return Err(Error::CapExceeded { cap: 1 << 15, partial: 0 });
        }
        let count = 1u64 << ((1 << k) - 1);
        let mut seen = HashSet::with_capacity(count as usize);
        let mut bad = Vec::new();
        for m in 0..count {
            let p = Portrait::from_mask(k, m)?;
            let perm = p.to_permutation();
            if Portrait::from_permutation(&perm)? != p {
                bad.push(format!("recovery of {p}"));
            }
            if !seen.insert(perm) {
                bad.push(format!("collision at {p}"));
            }
        }
        bad.truncate(5);
        Ok(Check::from_bool(bad.is_empty(), json!({"portraits": count, "failures": bad})))
    })
}

fn check_single_state(ctx: &Context) -> Result<Vec<(String, Check)>> {
    per_depth(ctx, |k| {
        if k > 10 {
            return Err(Error::CapExceeded { cap: 1 << 10, partial: 0 });
        }
        let mut bad = Vec::new();
        let mut checked = 0;
        for l in 0..k {
            for pos in 1..=1usize << l {
                checked += 1;
                let p = Portrait::from_active(k, &[VertexAddress::new(l, pos)?])?;
                let perm = p.to_permutation();
                let ct = perm.cycle_type();
                let twos = 1usize << (k - l - 1);
                let ok = perm.order() == 2
                    && ct.count(2) == twos
                    && ct.count(1) == (1 << k) - 2 * twos
                    && perm.is_even() == (l < k - 1);
                if !ok {
                    bad.push(format!("{p}: {ct}"));
                }
            }
        }
        bad.truncate(5);
        Ok(Check::from_bool(bad.is_empty(), json!({"single_states": checked, "failures": bad})))
    })
}

fn check_distance(ctx: &Context) -> Result<Vec<(String, Check)>> {
    per_depth(ctx, |k| {
        if k > 4 {
            return Err(Error::CapExceeded { cap: 1 << 15, partial: 0 });
        }
        let width = 1usize << (k - 1);
        let level_only: Vec<Portrait> = (0u32..1 << width)
            .map(|mask| {
                let pos: Vec<usize> = (0..width).filter(|&i| (mask >> i) & 1 == 1).map(|i| i + 1).collect();
                sylow::tau_set(&pos, k)
            })
            .collect::<Result<_>>()?;
        let mut rng = ctx.rng(0x6469 + k as u64);
        let subjects: Vec<&Portrait> = if k <= 3 {
            level_only.iter().collect()
        } else {
            level_only.choose_multiple(&mut rng, 32).collect()
        };
        let conjugators = 1u64 << ((1 << k) - 1);
        let mut violations = Vec::new();
        for a in &subjects {
            let d = a.vp_distance();
            for m in 0..conjugators {
                let g = Portrait::from_mask(k, m)?;
                let c = g.compose(a)?.compose(&g.inverse())?;
                if c.vp_distance() != d {
                    violations.push(format!("{g} conjugating {a}"));
                }
            }
        }

        // within-half pairs have distance < 2(k-1) and cannot produce type T
        let half = width / 2;
        let mut gens = crate::sylow::GeneratorSet::new("within-half", 1 << k);
        for i in 1..=width {
            for j in i + 1..=width {
                if (i <= half) == (j <= half) {
                    gens.push_portrait(&format!("tau_{i}_{j}"), sylow::tau_set(&[i, j], k)?)?;
                }
            }
        }
        let h = EnumeratedGroup::generate(&gens, ctx.config.cap)?;
        let mut type_t = 0;
        let mut max_distance = 0;
        for x in h.iter() {
            let p = portrait_of(x)?;
            max_distance = max_distance.max(p.vp_distance());
            if p.classify()?.is_type_t() {
                type_t += 1;
            }
        }
        violations.truncate(5);
        Ok(Check::from_bool(
            violations.is_empty() && type_t == 0,
            json!({
                "subjects": subjects.len(),
                "conjugators": conjugators,
                "violations": violations,
                "within_half_group_order": h.order(),
                "within_half_type_t": type_t,
                "within_half_max_distance": max_distance,
            }),
        ))
    })
}

const WORD_TRIALS: usize = 10_000;
const MAX_WORD_LEN: usize = 12;

fn check_odd_factor(ctx: &Context) -> Result<Vec<(String, Check)>> {
    per_depth(ctx, |k| {
        let g = ctx.g(k)?;
        let mut rng = ctx.rng(0x6f64 + k as u64);
        let mut letters: Vec<Portrait> = sylow::s_beta(k)?
            .iter()
            .map(|x| x.portrait.clone().expect("tree generators carry portraits"))
            .collect();
        for _ in 0..8 {
            letters.push(portrait_of(&g.elements()[rng.gen_range(0..g.order())])?);
        }
        let is_c: Vec<bool> = letters
            .iter()
            .map(|p| p.classify().map(|c| c.is_type_c()))
            .collect::<Result<_>>()?;
        let mut t_results = 0;
        let mut violations = Vec::new();
        for _ in 0..WORD_TRIALS {
            let len = rng.gen_range(1..=MAX_WORD_LEN);
            let mut acc = Portrait::identity(k)?;
            let mut c_letters = 0;
            for _ in 0..len {
                let i = rng.gen_range(0..letters.len());
                acc = acc.compose(&letters[i])?;
                c_letters += usize::from(is_c[i]);
            }
            if let ElementClass::TypeT { .. } = acc.classify()? {
                t_results += 1;
                if c_letters % 2 == 0 {
                    violations.push(format!("{acc} from {c_letters} C letters"));
                }
            }
        }
        violations.truncate(5);
        Ok(Check::from_bool(
            violations.is_empty(),
            json!({"trials": WORD_TRIALS, "type_t_results": t_results, "violations": violations}),
        ))
    })
}

fn check_level_homomorphisms(ctx: &Context) -> Result<Vec<(String, Check)>> {
    per_depth(ctx, |k| {
        let g = ctx.g(k)?;
        let xor = |a: &u8, b: &u8| a ^ b;
        let mut results = BTreeMap::new();
        let mut ok = true;
        for l in 0..k {
            let map = |x: &LeafPermutation| {
                portrait_of(x).ok().and_then(|p| p.level_index(l).ok()).map(|c| (c % 2) as u8)
            };
            let hom = group::homomorphism_check(&g, map, xor, ctx.config.seed)?;
            let kills_squares = g.iter().all(|x| map(&x.mul(x)) == Some(0));
            ok &= hom && kills_squares;
            results.insert(format!("level_{l}"), json!({"homomorphism": hom, "squares_in_kernel": kills_squares}));
        }
        let half = |x: &LeafPermutation| {
            portrait_of(x).ok().and_then(|p| match p.classify().ok()? {
                ElementClass::Neither => Some(0u8),
                _ => Some(1u8),
            })
        };
        let hom = group::homomorphism_check(&g, half, xor, ctx.config.seed)?;
        let kills_squares = g.iter().all(|x| half(&x.mul(x)) == Some(0));
        ok &= hom && kills_squares;
        results.insert("half_parity".into(), json!({"homomorphism": hom, "squares_in_kernel": kills_squares}));
        Ok(Check::from_bool(ok, serde_json::to_value(results).expect("map serializes")))
    })
}

fn check_derived_series(ctx: &Context) -> Result<Vec<(String, Check)>> {
    per_depth(ctx, |k| {
        let g = ctx.g(k)?;
        let series = group::derived_series(&g)?;
        let length = group::derived_length(&series);
        let orders: Vec<usize> = series.iter().map(EnumeratedGroup::order).collect();
        let ok = match k {
            2 => length == Some(1),
            _ => length.is_some_and(|d| d >= 2),
        };
        Ok(Check::from_bool(ok, json!({"derived_length": length, "orders": orders})))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_ids_are_unique_and_sorted() {
        let ids = claim_ids();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn unknown_claim_is_an_error() {
        let err = run(&["no-such-claim".into()], Config::default()).unwrap_err();
        assert_eq!(err, Error::UnknownLabel("no-such-claim".into()));
    }

    #[test]
    fn depth_zero_is_a_parameter_error() {
        let cfg = Config { k: Some(0), ..Config::default() };
        assert!(matches!(run(&["semidirect".into()], cfg), Err(Error::Precondition(_))));
    }

    #[test]
    fn cap_turns_into_skip() {
        let cfg = Config { k: Some(4), cap: 1000, ..Config::default() };
        let report = run(&["order-Gk".into()], cfg).unwrap();
        assert_eq!(report.claims[0].status, Status::SkippedCap);
        assert!(report.all_passed(false));
        assert!(!report.all_passed(true));
    }

    #[test]
    fn subsets_enumerate_combinations() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
    }
}
