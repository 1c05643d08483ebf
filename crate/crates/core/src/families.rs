//! Benchmark ideals and seeded random stable ideals.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::invariants::binom;
use crate::monoid::{monomials_of_degree, Monomial};

/// `𝔪^d`: every monomial of degree `d`.
pub fn power_of_maximal_ideal(n: usize, d: i64) -> Result<MonomialIdeal> {
    if n == 0 || d < 1 {
        return Err(Error::Config("power of the maximal ideal needs n, d ≥ 1".into()));
    }
    MonomialIdeal::minimalize(n, monomials_of_degree(n, d))
}

/// `S_n`: generated by the monomials `w` with `deg(w) = max(w)`.
pub fn s_n_ideal(n: usize) -> Result<MonomialIdeal> {
    if n == 0 {
        return Err(Error::Config("S_n needs n ≥ 1".into()));
    }
    let raw = (1..=n as i64).flat_map(|d| {
        monomials_of_degree(n, d)
            .into_iter()
            .filter(move |w| w.max_index().ok() == Some(d as usize))
    });
    MonomialIdeal::minimalize(n, raw)
}

/// Stable closure of `gen_count` random monomials, drawn from a ChaCha8
/// stream seeded with `seed`. Degrees are uniform in the upper half of
/// `1..=deg_cap`; a low-degree draw would otherwise swallow most of the
/// others under the closure.
pub fn random_stable_ideal(n: usize, seed: u64, gen_count: usize, deg_cap: i64) -> Result<MonomialIdeal> {
    if n == 0 || gen_count == 0 || deg_cap < 1 {
        return Err(Error::Config("random ideal needs positive bounds".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<Monomial> = (0..gen_count)
        .map(|_| {
            let d = rng.gen_range((deg_cap + 1) / 2..=deg_cap);
            let mut e = vec![0i64; n];
            for _ in 0..d {
                e[rng.gen_range(0..n)] += 1;
            }
            Monomial::new(e)
        })
        .collect();
    MonomialIdeal::stable_closure(n, raw)
}

/// `binom(d+n−1, d+q) · binom(d+q−1, q)`.
pub fn power_betti(n: usize, d: i64, q: usize) -> u64 {
    let (n, q) = (n as i64, q as i64);
    binom(d + n - 1, d + q) * binom(d + q - 1, q)
}

/// `Catalan(m − 1) = binom(2m − 2, m − 1) / m`.
pub fn catalan(m: i64) -> u64 {
    binom(2 * m - 2, m - 1) / m as u64
}

/// `Σ_{m=1}^{n} Catalan(m−1) · binom(m − 1, q)`.
pub fn s_n_betti(n: usize, q: usize) -> u64 {
    (1..=n as i64).map(|m| catalan(m) * binom(m - 1, q as i64)).sum()
}

/// A named family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    PowerOfM { n: usize, d: i64 },
    SN { n: usize },
    RandomStable { n: usize, seed: u64, gen_count: usize, deg_cap: i64 },
}

impl FamilySpec {
    pub fn build(&self) -> Result<MonomialIdeal> {
        match *self {
            FamilySpec::PowerOfM { n, d } => power_of_maximal_ideal(n, d),
            FamilySpec::SN { n } => s_n_ideal(n),
            FamilySpec::RandomStable {
                n,
                seed,
                gen_count,
                deg_cap,
            } => random_stable_ideal(n, seed, gen_count, deg_cap),
        }
    }

    pub fn label(&self) -> String {
        match self {
            FamilySpec::PowerOfM { n, d } => format!("m^{d} (n={n})"),
            FamilySpec::SN { n } => format!("S_{n}"),
            FamilySpec::RandomStable {
                n,
                seed,
                gen_count,
                deg_cap,
            } => format!("random(n={n}, seed={seed}, gens={gen_count}, deg≤{deg_cap})"),
        }
    }
}

/// The verification corpus: `count` random stable ideals with `n ≤ 5`,
/// at most 20 generators and degree at most 6, followed by `𝔪^d`
/// (`n, d ≤ 4`) and `S_n` (`n ≤ 5`). Draws whose closure exceeds the
/// generator bound are skipped; the seeds that were kept are recorded in
/// the specs.
pub fn corpus(count: usize, seed: u64) -> Vec<(FamilySpec, MonomialIdeal)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let spec = FamilySpec::RandomStable {
            // n = 1 only gives principal ideals; keep a few of them
            n: if rng.gen_bool(0.05) { 1 } else { rng.gen_range(2..=5) },
            seed: rng.gen(),
            gen_count: rng.gen_range(1..=8),
            deg_cap: rng.gen_range(1..=6),
        };
        let ideal = spec.build().expect("valid parameters");
        if ideal.generators().len() <= 20 {
            out.push((spec, ideal));
        }
    }
    for n in 1..=4 {
        for d in 1..=4 {
            let spec = FamilySpec::PowerOfM { n, d };
            out.push((spec.clone(), spec.build().expect("valid parameters")));
        }
    }
    for n in 1..=5 {
        let spec = FamilySpec::SN { n };
        out.push((spec.clone(), spec.build().expect("valid parameters")));
    }
    out
}
