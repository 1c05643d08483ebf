//! Betti numbers, projective dimension, regularity and the monomial-count
//! series, each by closed formula and (where it makes sense) from the
//! constructed resolution.

use std::collections::BTreeMap;

use serde_json::json;

use crate::error::{Error, Result};
use crate::ideal::{MonomialIdeal, StableIdeal};
use crate::resolution::admissible_basis;

/// `binom(m, k)`, zero outside `0 ≤ k ≤ m`.
pub fn binom(m: i64, k: i64) -> u64 {
    if k < 0 || m < 0 || k > m {
        return 0;
    }
    let k = k.min(m - k) as u64;
    let m = m as u64;
    (0..k).fold(1u64, |acc, i| acc * (m - i) / (i + 1))
}

fn max_indices(ideal: &MonomialIdeal) -> impl Iterator<Item = usize> + '_ {
    ideal
        .generators()
        .iter()
        .map(|u| u.max_index().expect("generators are nonunit"))
}

/// `β_q(I) = Σ_{u ∈ G(I)} binom(max(u) − 1, q)`.
pub fn betti_formula(ideal: &StableIdeal, q: usize) -> u64 {
    max_indices(ideal).map(|m| binom(m as i64 - 1, q as i64)).sum()
}

/// Rank of `L_q(I)`.
pub fn betti_from_resolution(ideal: &StableIdeal, q: usize) -> u64 {
    admissible_basis(ideal, q).len() as u64
}

/// All Betti numbers `β_0 .. β_{n-1}`, trailing zeros trimmed.
pub fn betti_vector(ideal: &StableIdeal) -> Vec<u64> {
    let mut v: Vec<u64> = (0..ideal.n()).map(|q| betti_formula(ideal, q)).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// `β_{i,j}`: admissible symbols with `|σ| = i` and internal degree `j`.
pub type GradedBettiTable = BTreeMap<(usize, i64), u64>;

pub fn graded_betti(ideal: &StableIdeal) -> GradedBettiTable {
    let mut table = GradedBettiTable::new();
    for q in 0..ideal.n() {
        for s in admissible_basis(ideal, q) {
            *table.entry((q, s.internal_degree())).or_insert(0) += 1;
        }
    }
    table
}

pub fn projective_dimension(ideal: &StableIdeal) -> Result<usize> {
    max_indices(ideal)
        .map(|m| m - 1)
        .max()
        .ok_or(Error::ZeroIdeal("projective dimension"))
}

/// Largest generator degree.
pub fn tor_regularity(ideal: &StableIdeal) -> Result<i64> {
    ideal
        .max_generator_degree()
        .ok_or(Error::ZeroIdeal("regularity"))
}

/// Castelnuovo–Mumford regularity, which coincides with the Tor-regularity
/// for these ideals.
pub fn cm_regularity(ideal: &StableIdeal) -> Result<i64> {
    tor_regularity(ideal)
}

/// `max{j − i : β_{i,j} ≠ 0}`.
pub fn regularity_from_table(table: &GradedBettiTable) -> Option<i64> {
    table.keys().map(|&(i, j)| j - i as i64).max()
}

/// `Σ t^{deg u} / (1 − t)^{n − max(u) + 1}`, one summand per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    n: usize,
    /// `(numerator degree, denominator exponent)`.
    summands: Vec<(i64, usize)>,
}

pub fn poincare_series(ideal: &StableIdeal) -> RationalSeries {
    let n = ideal.n();
    let summands = ideal
        .generators()
        .iter()
        .map(|u| (u.degree(), n - u.max_index().expect("nonunit") + 1))
        .collect();
    RationalSeries { n, summands }
}

impl RationalSeries {
    pub fn summands(&self) -> &[(i64, usize)] {
        &self.summands
    }

    /// Numerator over the common denominator `(1 − t)^n`, as coefficients
    /// of `t^0, t^1, ...`.
    pub fn numerator(&self) -> Vec<i64> {
        let mut out: Vec<i64> = Vec::new();
        for &(d, e) in &self.summands {
            // t^d (1 - t)^{n - e}
            let extra = self.n - e;
            for k in 0..=extra {
                let idx = d as usize + k;
                if out.len() <= idx {
                    out.resize(idx + 1, 0);
                }
                let c = binom(extra as i64, k as i64) as i64;
                out[idx] += if k % 2 == 0 { c } else { -c };
            }
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    /// Coefficients of `t^0 .. t^max_degree`.
    pub fn expand(&self, max_degree: usize) -> Vec<u64> {
        let mut out = vec![0u64; max_degree + 1];
        for &(d, e) in &self.summands {
            for (k, slot) in out.iter_mut().enumerate() {
                let k = k as i64;
                if k >= d {
                    *slot += binom(k - d + e as i64 - 1, e as i64 - 1);
                }
            }
        }
        out
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|&(d, e)| format!("t^{d}/(1-t)^{e}"))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Number of members of each degree `0..=max_degree`, by enumeration.
pub fn count_members(ideal: &MonomialIdeal, max_degree: i64) -> Vec<u64> {
    let mut out = vec![0u64; max_degree as usize + 1];
    for w in ideal.monomials_up_to_degree(max_degree) {
        out[w.degree() as usize] += 1;
    }
    out
}

/// The `invariants` report.
pub fn invariants_json(ideal: &StableIdeal, expand_to: usize) -> Result<serde_json::Value> {
    let graded: serde_json::Map<String, serde_json::Value> = graded_betti(ideal)
        .into_iter()
        .map(|((i, j), c)| (format!("{i},{j}"), c.into()))
        .collect();
    let series = poincare_series(ideal);
    let summands: Vec<serde_json::Value> = series
        .summands()
        .iter()
        .map(|&(d, e)| json!({"degree": d, "denominator_exponent": e}))
        .collect();
    Ok(json!({
        "schema": 1,
        "ideal": ideal.to_json(),
        "betti": betti_vector(ideal),
        "graded_betti": graded,
        "pd": projective_dimension(ideal)?,
        "reg": tor_regularity(ideal)?,
        "cm_reg": cm_regularity(ideal)?,
        "poincare": {
            "summands": summands,
            "numerator": series.numerator(),
            "denominator_exponent": series.n,
            "expansion": series.expand(expand_to),
        },
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{monomials_of_degree, Monomial};

    fn stable(n: usize, gens: &[&[i64]]) -> StableIdeal {
        let raw = gens.iter().map(|g| Monomial::new(g.to_vec()));
        StableIdeal::new(MonomialIdeal::minimalize(n, raw).unwrap()).unwrap()
    }

    fn power(n: usize, d: i64) -> StableIdeal {
        StableIdeal::new(MonomialIdeal::minimalize(n, monomials_of_degree(n, d)).unwrap()).unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(4, 2), 6);
        assert_eq!(binom(0, 0), 1);
        assert_eq!(binom(2, 3), 0);
        assert_eq!(binom(-1, 0), 0);
    }

    #[test]
    fn betti_examples() {
        let ex = power(2, 2);
        assert_eq!(betti_vector(&ex), vec![3, 2]);
        assert_eq!(betti_from_resolution(&ex, 1), 2);
        let m3 = power(3, 3);
        let from_res: Vec<u64> = (0..3).map(|q| betti_from_resolution(&m3, q)).collect();
        assert_eq!(from_res, vec![10, 15, 6]);
        let x = stable(1, &[&[1]]);
        assert_eq!(betti_vector(&x), vec![1]);
        assert_eq!(betti_formula(&x, 1), 0);
        let z = StableIdeal::new(MonomialIdeal::zero(2)).unwrap();
        assert_eq!(betti_from_resolution(&z, 0), 0);
        assert!(projective_dimension(&z).is_err());
        assert!(tor_regularity(&z).is_err());
    }

    #[test]
    fn graded_examples() {
        let ex = power(2, 2);
        let t = graded_betti(&ex);
        assert_eq!(t, BTreeMap::from([((0, 2), 3), ((1, 3), 2)]));
        let i = stable(2, &[&[3, 0], &[2, 1]]);
        assert_eq!(graded_betti(&i), BTreeMap::from([((0, 3), 2), ((1, 4), 1)]));
        assert_eq!(tor_regularity(&i).unwrap(), 3);
        assert_eq!(regularity_from_table(&graded_betti(&i)), Some(3));
        assert_eq!(projective_dimension(&ex).unwrap(), 1);
        assert_eq!(projective_dimension(&power(4, 2)).unwrap(), 3);
        assert_eq!(tor_regularity(&stable(2, &[&[1, 0]])).unwrap(), 1);
    }

    #[test]
    fn series_examples() {
        let x = stable(1, &[&[1]]);
        assert_eq!(poincare_series(&x).expand(3), vec![0, 1, 1, 1]);
        let ex = power(2, 2);
        let s = poincare_series(&ex);
        assert_eq!(s.expand(3), vec![0, 0, 3, 4]);
        assert_eq!(s.expand(6)[6], 7);
        assert_eq!(count_members(&ex, 6), s.expand(6));
        assert_eq!(s.render(), "t^2/(1-t)^2 + t^2/(1-t)^1 + t^2/(1-t)^1");
        // t^2 + 2 t^2 (1 - t) = 3t^2 - 2t^3
        assert_eq!(s.numerator(), vec![0, 0, 3, -2]);
    }

    #[test]
    fn report_shape() {
        let v = invariants_json(&power(2, 2), 4).unwrap();
        assert_eq!(v["betti"], json!([3, 2]));
        assert_eq!(v["graded_betti"]["1,3"], json!(2));
        assert_eq!(v["pd"], json!(1));
        assert_eq!(v["reg"], json!(2));
        assert_eq!(v["poincare"]["expansion"], json!([0, 0, 3, 4, 5]));
    }
}
