//! Acceptance suite: one line per criterion, each checked both through the
//! claim registry and against the naive oracles in `common`.

mod common;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use common::{closure, factorial_nu2, from_lib, identity, inverse, is_even, leaf_action, levels, mul, Perm};
use sylow2::group::{self, EnumeratedGroup};
use sylow2::sylow::{self, Kind};
use sylow2::verify::{self, Config, Status};
use sylow2::{legendre_nu2, Portrait, DEFAULT_CAP};

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn claim_passes(id: &str, k: Option<usize>) -> std::result::Result<(), String> {
    let cfg = Config { k, ..Config::default() };
    let report = verify::run(&[id.to_string()], cfg).map_err(|e| e.to_string())?;
    let rec = &report.claims[0];
    ensure(rec.status == Status::Pass, format!("claim {id} status {:?}: {}", rec.status, rec.witnesses))
}

fn within(limit: Duration, start: Instant) -> std::result::Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, format!("took {took:?}, limit {limit:?}"))
}

fn s_beta_perms(k: usize) -> Vec<Perm> {
    sylow::s_beta(k).unwrap().perms().map(from_lib).collect()
}

fn g(k: usize) -> EnumeratedGroup {
    EnumeratedGroup::generate(&sylow::s_beta(k).unwrap(), DEFAULT_CAP).unwrap()
}

fn oracle_type_t(p: &Portrait) -> bool {
    let lv = levels(&p.to_string());
    let k = lv.len();
    let upper_clear = lv[..k - 1].iter().all(|l| l.iter().all(|&b| !b));
    let half = lv[k - 1].len() / 2;
    let first = lv[k - 1][..half].iter().filter(|&&b| b).count();
    let second = lv[k - 1][half..].iter().filter(|&&b| b).count();
    upper_clear && first % 2 == 1 && second % 2 == 1
}

fn ac01_order() -> Outcome {
    let start = Instant::now();
    let mut orders = Vec::new();
    for (k, expected) in [(2usize, 4usize), (3, 64), (4, 16384)] {
        let lib = g(k).order();
        let oracle = closure(1 << k, &s_beta_perms(k)).len();
        ensure(lib == expected && oracle == expected, format!("k={k}: lib {lib}, oracle {oracle}, expected {expected}"))?;
        orders.push(lib);
    }
    within(Duration::from_secs(10), start)?;
    claim_passes("order-Gk", None)?;
    Ok(format!("orders {orders:?} in {:?}", start.elapsed()))
}

fn ac02_evenness() -> Outcome {
    let mut checked = 0;
    for k in 2..=4 {
        let odd = g(k).iter().map(from_lib).filter(|x| !is_even(x)).count();
        ensure(odd == 0, format!("k={k}: {odd} odd elements"))?;
        checked += g(k).order();
    }
    claim_passes("evenness", None)?;
    Ok(format!("{checked} elements, all even"))
}

fn ac03_semidirect() -> Outcome {
    let mut arithmetic = Vec::new();
    for k in 2..=4 {
        let n = 1 << k;
        let gg: HashSet<Perm> = closure(n, &s_beta_perms(k));
        let b_gens: Vec<Perm> = sylow::b_subgroup_generators(k).unwrap().perms().map(from_lib).collect();
        let w_gens: Vec<Perm> = sylow::w_subgroup_generators(k).unwrap().perms().map(from_lib).collect();
        let b = closure(n, &b_gens);
        let w = closure(n, &w_gens);
        let meet = b.intersection(&w).count();
        ensure(meet == 1, format!("k={k}: |B ∩ W| = {meet}"))?;
        ensure(b.len() * w.len() == gg.len(), format!("k={k}: {}*{} != {}", b.len(), w.len(), gg.len()))?;
        ensure(b.is_subset(&gg) && w.is_subset(&gg), format!("k={k}: B or W escapes G"))?;
        for x in s_beta_perms(k) {
            for y in &w_gens {
                let c = mul(&mul(&x, y), &inverse(&x));
                ensure(w.contains(&c), format!("k={k}: W not normal"))?;
            }
        }
        arithmetic.push(format!(
            "2^{} 2^{} = 2^{}",
            b.len().trailing_zeros(),
            w.len().trailing_zeros(),
            gg.len().trailing_zeros()
        ));
    }
    ensure(arithmetic[2] == "2^7 2^7 = 2^14", format!("k=4 arithmetic {}", arithmetic[2]))?;
    claim_passes("semidirect", None)?;
    Ok(arithmetic.join(", "))
}

fn ac04_w_structure() -> Outcome {
    let mut orders = Vec::new();
    for k in 2..=4usize {
        let gens: Vec<Perm> = sylow::w_subgroup_generators(k).unwrap().perms().map(from_lib).collect();
        let w = closure(1 << k, &gens);
        let expected = 1usize << ((1 << (k - 1)) - 1);
        ensure(w.len() == expected, format!("k={k}: |W| = {}, expected {expected}", w.len()))?;
        let id = identity(1 << k);
        ensure(w.iter().all(|x| mul(x, x) == id), format!("k={k}: exponent > 2"))?;
        for a in &gens {
            for b in &gens {
                ensure(mul(a, b) == mul(b, a), format!("k={k}: generators do not commute"))?;
            }
        }
        orders.push(w.len());
    }
    claim_passes("w-structure", None)?;
    Ok(format!("orders {orders:?}, elementary abelian"))
}

fn ac05_minimality() -> Outcome {
    let start = Instant::now();
    let mut ranks = Vec::new();
    for k in 2..=4usize {
        let lib = g(k);
        let rank = group::quotient_rank(&lib).map_err(|e| e.to_string())?;
        ensure(rank as usize == k, format!("k={k}: rank {rank}"))?;
        let analysis = group::frattini_analysis(&lib).map_err(|e| e.to_string())?;
        ensure(analysis.squares_absorb_commutators, format!("k={k}: commutators outside squares"))?;
        ensure(analysis.frattini.elements() == analysis.squares.elements(), format!("k={k}: Φ != squares"))?;

        // oracle: <squares> has index 2^k, and no (k-1)-subset of S_β generates
        let n = 1 << k;
        let all = closure(n, &s_beta_perms(k));
        let squares: Vec<Perm> = all.iter().map(|x| mul(x, x)).collect::<HashSet<_>>().into_iter().collect();
        let sq = closure(n, &squares);
        ensure(all.len() / sq.len() == 1 << k, format!("k={k}: |G/<squares>| = {}", all.len() / sq.len()))?;
        let gens = s_beta_perms(k);
        for skip in 0..gens.len() {
            let subset: Vec<Perm> = gens.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, x)| x.clone()).collect();
            let h = closure(n, &subset).len();
            ensure(h < all.len(), format!("k={k}: subset without generator {skip} generates"))?;
        }
        ranks.push(rank);
    }
    within(Duration::from_secs(60), start)?;
    claim_passes("minimality", None)?;
    Ok(format!("ranks {ranks:?} in {:?}", start.elapsed()))
}

fn ac06_frattini_levels() -> Outcome {
    let mut checked = Vec::new();
    for k in 3..=4usize {
        let phi = group::frattini_subgroup(&g(k)).map_err(|e| e.to_string())?;
        for x in phi.iter() {
            let p = Portrait::from_permutation(x).map_err(|e| e.to_string())?;
            ensure(leaf_action(&p) == from_lib(x), "portrait recovery mismatch")?;
            let lv = levels(&p.to_string());
            for (l, bits) in lv.iter().enumerate().take(k - 1) {
                let c = bits.iter().filter(|&&b| b).count();
                ensure(c % 2 == 0, format!("k={k}: odd level {l} index in {p}"))?;
            }
            ensure(!oracle_type_t(&p), format!("k={k}: {p} is type T"))?;
        }
        checked.push(phi.order());
    }
    claim_passes("frattini-levels", Some(3))?;
    claim_passes("frattini-levels", Some(4))?;
    Ok(format!("{checked:?} Frattini elements checked exhaustively, 0 violations"))
}

fn ac07_t_nonclosure() -> Outcome {
    let k = 3;
    let t: Vec<Portrait> = (0u64..1 << 7)
        .map(|m| Portrait::from_mask(k, m).unwrap())
        .filter(oracle_type_t)
        .collect();
    ensure(t.len() == 4, format!("|T| = {}", t.len()))?;
    let mut pairs = 0;
    for x in &t {
        ensure(!oracle_type_t(&x.compose(x).unwrap()), format!("square of {x} in T"))?;
        for y in &t {
            pairs += 1;
            ensure(!oracle_type_t(&x.compose(y).unwrap()), format!("{x} * {y} in T"))?;
        }
    }
    claim_passes("t-nonclosure", Some(3))?;
    Ok(format!("{pairs} pairs, 0 violations"))
}

fn ac08_tau_ij() -> Outcome {
    let k = 3;
    let gens = sylow::s_beta(k).unwrap();
    let mut count = 0;
    for i in 1..=4 {
        for j in i + 1..=4 {
            let word = sylow::tau_ij_word(i, j, k).map_err(|e| e.to_string())?;
            let mut acc = identity(8);
            for letter in &word {
                let gen = gens.get(letter).ok_or(format!("unknown letter {letter}"))?;
                acc = mul(&acc, &from_lib(&gen.perm));
            }
            let target = leaf_action(&sylow::tau_set(&[i, j], k).unwrap());
            ensure(acc == target, format!("tau_{i}_{j}: word {word:?} wrong"))?;
            count += 1;
        }
    }
    claim_passes("tau-ij", Some(3))?;
    Ok(format!("{count} of 6 pairs"))
}

fn ac09_legendre() -> Outcome {
    for (n, e) in [(22u64, 19u64), (24, 22), (8, 7)] {
        ensure(legendre_nu2(n) == e && factorial_nu2(n) == e, format!("nu2({n}!)"))?;
    }
    for n in 0..=300 {
        ensure(legendre_nu2(n) == factorial_nu2(n), format!("nu2({n}!) vs factorial"))?;
    }
    for n in 0..=1_000_000u64 {
        ensure(legendre_nu2(n) == n - u64::from(n.count_ones()), format!("popcount identity at {n}"))?;
    }
    claim_passes("legendre", None)?;
    Ok("19, 22, 7; identity holds for n <= 10^6".into())
}

fn ac10_boxtimes() -> Outcome {
    let start = Instant::now();
    let mut orders = Vec::new();
    for n in [4usize, 6, 7, 8, 12] {
        let gens: Vec<Perm> = sylow::syl2_s_generators(n).unwrap().perms().map(from_lib).collect();
        let even: HashSet<Perm> = closure(n, &gens).into_iter().filter(is_even).collect();
        let lib = sylow::boxtimes_group(n, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let lib_set: HashSet<Perm> = lib.iter().map(from_lib).collect();
        ensure(lib_set == even, format!("n={n}: generated set differs from filtered oracle"))?;
        let (filtered, generated) = sylow::boxtimes_routes(n, DEFAULT_CAP).map_err(|e| e.to_string())?;
        ensure(filtered.elements() == generated.elements(), format!("n={n}: routes differ"))?;
        orders.push((n, lib.order()));
    }
    ensure(orders.contains(&(12, 512)) && orders.contains(&(6, 8)), format!("orders {orders:?}"))?;
    within(Duration::from_secs(10), start)?;
    claim_passes("boxtimes", None)?;
    Ok(format!("orders {orders:?}"))
}

fn ac11_parity_extension() -> Outcome {
    let gens: Vec<Perm> = sylow::syl2_s_generators(4).unwrap().perms().map(from_lib).collect();
    let source: Vec<Perm> = closure(4, &gens).into_iter().collect();
    let phi = |s: &Perm| -> Perm {
        let mut out: Perm = s.iter().copied().chain([4, 5]).collect();
        if !is_even(s) {
            out.swap(4, 5);
        }
        out
    };
    let image: HashSet<Perm> = source.iter().map(phi).collect();
    ensure(image.len() == source.len(), "not injective")?;
    for a in &source {
        for b in &source {
            ensure(phi(&mul(a, b)) == mul(&phi(a), &phi(b)), "not a homomorphism")?;
        }
    }
    for s in &source {
        let lib = sylow::parity_extension(&sylow2::LeafPermutation::from_images(&s.iter().map(|x| x + 1).collect::<Vec<_>>()).unwrap(), 6)
            .map_err(|e| e.to_string())?;
        ensure(from_lib(&lib) == phi(s), "library map differs from oracle")?;
    }
    let target: HashSet<Perm> = sylow::boxtimes_group(6, DEFAULT_CAP).unwrap().iter().map(from_lib).collect();
    ensure(image == target, "image differs from boxtimes_group(6)")?;

    let abelian = image.iter().all(|a| image.iter().all(|b| mul(a, b) == mul(b, a)));
    let id = identity(6);
    let order_of = |x: &Perm| {
        let mut y = x.clone();
        let mut o = 1;
        while y != id {
            y = mul(&y, x);
            o += 1;
        }
        o
    };
    let exponent = image.iter().map(order_of).max().unwrap();
    ensure(image.len() == 8 && !abelian && exponent == 4, format!("fingerprint {} {abelian} {exponent}", image.len()))?;
    claim_passes("parity-extension", None)?;
    Ok("injective homomorphism onto boxtimes(6); order 8, non-abelian, exponent 4".into())
}

fn ac12_small_fingerprints() -> Outcome {
    let g2: Vec<Perm> = closure(4, &s_beta_perms(2)).into_iter().collect();
    let id = identity(4);
    ensure(g2.len() == 4, "|G_2| != 4")?;
    ensure(g2.iter().all(|x| mul(x, x) == id), "exponent != 2")?;
    ensure(g2.iter().all(|a| g2.iter().all(|b| mul(a, b) == mul(b, a))), "not abelian")?;
    let fp = g(2).fingerprint().map_err(|e| e.to_string())?;
    ensure(fp.derived_length == Some(1), format!("derived length {:?}", fp.derived_length))?;
    let (e7, e6) = (sylow::syl2_order(7, Kind::A), sylow::syl2_order(6, Kind::A));
    ensure(e7 == 3 && e6 == 3, format!("e(A7) = {e7}, e(A6) = {e6}"))?;
    ensure(factorial_nu2(7) - 1 == 3 && factorial_nu2(6) - 1 == 3, "oracle A exponents")?;
    claim_passes("small-fingerprints", None)?;
    Ok("G_2 Klein; e(A7) = e(A6) = 3".into())
}

fn ac13_order_ratios() -> Outcome {
    let e_a = |n: u64| factorial_nu2(n).saturating_sub(1);
    for k in 1..=25u64 {
        let lib_gap = sylow::syl2_order(4 * k + 3, Kind::A) as i64 - sylow::syl2_order(4 * k + 1, Kind::A) as i64;
        ensure(lib_gap == 1 && e_a(4 * k + 3) - e_a(4 * k + 1) == 1, format!("k={k}: gap {lib_gap}"))?;
        for kind in [Kind::S, Kind::A] {
            ensure(sylow::syl2_order(2 * k + 1, kind) == sylow::syl2_order(2 * k, kind), format!("k={k}: odd/even {kind}"))?;
        }
        ensure(factorial_nu2(2 * k + 1) == factorial_nu2(2 * k), format!("k={k}: oracle odd/even"))?;
    }
    claim_passes("order-ratios", None)?;
    Ok("k = 1..25".into())
}

fn ac14_portrait_oracle() -> Outcome {
    let start = Instant::now();
    let all: Vec<Portrait> = (0u64..1 << 7).map(|m| Portrait::from_mask(3, m).unwrap()).collect();
    let actions: Vec<Perm> = all.iter().map(leaf_action).collect();
    for (p, a) in all.iter().zip(&actions) {
        ensure(from_lib(&p.to_permutation()) == *a, format!("leaf action of {p}"))?;
    }
    let mut pairs = 0;
    for (p, a) in all.iter().zip(&actions) {
        for (q, b) in all.iter().zip(&actions) {
            pairs += 1;
            ensure(from_lib(&p.compose(q).unwrap().to_permutation()) == mul(a, b), format!("{p} * {q}"))?;
        }
    }
    within(Duration::from_secs(5), start)?;
    claim_passes("portrait-oracle", Some(3))?;
    Ok(format!("{pairs} pairs in {:?}", start.elapsed()))
}

fn report(name: &str, outcome: Outcome) {
    match outcome {
        Ok(detail) => println!("PASS {name}: {detail}"),
        Err(why) => {
            println!("FAIL {name}: {why}");
            panic!("{name} failed: {why}");
        }
    }
}

macro_rules! criteria {
    ($($test:ident => $name:literal, $check:ident;)*) => {
        $(
            #[test]
            fn $test() {
                report($name, $check());
            }
        )*
    };
}

criteria! {
    criterion_01_order_of_g_k => "AC01 order of G_k", ac01_order;
    criterion_02_evenness => "AC02 evenness", ac02_evenness;
    criterion_03_semidirect_structure => "AC03 semidirect structure", ac03_semidirect;
    criterion_04_w_structure => "AC04 W structure", ac04_w_structure;
    criterion_05_minimality => "AC05 minimality", ac05_minimality;
    criterion_06_frattini_levels => "AC06 Frattini levels", ac06_frattini_levels;
    criterion_07_t_nonclosure => "AC07 T non-closure", ac07_t_nonclosure;
    criterion_08_tau_ij_generation => "AC08 tau_ij generation", ac08_tau_ij;
    criterion_09_legendre_values => "AC09 Legendre values", ac09_legendre;
    criterion_10_composite_constructions => "AC10 composite constructions", ac10_boxtimes;
    criterion_11_parity_extension => "AC11 parity extension", ac11_parity_extension;
    criterion_12_small_fingerprints => "AC12 small-case fingerprints", ac12_small_fingerprints;
    criterion_13_order_ratios => "AC13 order ratios", ac13_order_ratios;
    criterion_14_portrait_oracle => "AC14 portrait algebra oracle", ac14_portrait_oracle;
}
