//! Exactness of `L(I) → I`, one multidegree at a time.
//!
//! Every map in the complex preserves multidegree, so over a field
//! specialization the component `(L_q)_a` is finite-dimensional with basis
//! `e(σ;u)·x^m`, `x_σ * u * m = a`. Exactness is certified by exact ranks of
//! the restricted maps for every `a` in a box.

use std::collections::HashMap;

use rayon::prelude::*;
use serde_json::json;

use crate::commutation::{bichar_c, CommutationMatrix, Field, FieldSpecialization, FieldValue, Scalar};
use crate::error::{Error, Result};
use crate::ideal::{MonomialIdeal, StableIdeal};
use crate::linalg::rank;
use crate::monoid::Monomial;
use crate::resolution::{admissible_basis, build_resolution, FreeComplex, Symbol, Term};

/// Field basis of `(L_q)_a`: terms `e(σ;u)·x^m` with unit coefficient.
pub fn component_basis(ideal: &StableIdeal, q: usize, a: &Monomial) -> Vec<Term> {
    component_of(&admissible_basis(ideal, q), a)
        .into_iter()
        .map(|(s, m)| Term {
            coef: Scalar::one(),
            mono: m,
            sym: s.clone(),
        })
        .collect()
}

fn component_of<'a>(basis: &'a [Symbol], a: &Monomial) -> Vec<(&'a Symbol, Monomial)> {
    basis
        .iter()
        .filter_map(|s| {
            let m = a.quotient(&s.multidegree()).ok()?;
            m.is_effective().then_some((s, m))
        })
        .collect()
}

/// All effective multidegrees `≤ bound`, in lexicographic order.
pub fn box_multidegrees(bound: &Monomial) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for &b in bound.exponents() {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                (0..=b.max(-1)).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial::new).collect()
}

/// Componentwise maximum of the generators plus 2 in every coordinate.
pub fn default_bound(ideal: &MonomialIdeal) -> Monomial {
    let mut e = vec![2; ideal.n()];
    for g in ideal.generators() {
        for (slot, &x) in e.iter_mut().zip(g.exponents()) {
            *slot = (*slot).max(x + 2);
        }
    }
    Monomial::new(e)
}

/// Findings at one multidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultidegreeRecord {
    pub multidegree: Monomial,
    /// `dim (L_q)_a` for each `q`.
    pub dims: Vec<usize>,
    /// `rank (d_q)_a` for `q = 1 ..`.
    pub ranks: Vec<usize>,
    pub augmentation_rank: usize,
    /// Homology dimension at each spot; entry 0 is `dim ker(ε) − rank d_1`.
    pub homology: Vec<usize>,
    pub in_ideal: bool,
    pub problems: Vec<String>,
}

impl MultidegreeRecord {
    pub fn is_ok(&self) -> bool {
        self.problems.is_empty()
    }

    fn to_json(&self) -> serde_json::Value {
        json!({
            "multidegree": self.multidegree,
            "dims": self.dims,
            "ranks": self.ranks,
            "augmentation_rank": self.augmentation_rank,
            "homology": self.homology,
            "in_ideal": self.in_ideal,
            "problems": self.problems,
        })
    }
}

#[derive(Debug, Clone)]
pub struct ExactnessReport {
    pub specialization: FieldSpecialization,
    pub bound: Monomial,
    pub records: Vec<MultidegreeRecord>,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.records.iter().all(MultidegreeRecord::is_ok)
    }

    pub fn first_failure(&self) -> Option<&MultidegreeRecord> {
        self.records.iter().find(|r| !r.is_ok())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema": 1,
            "specialization": CommutationMatrix::Numeric(self.specialization.clone()).to_json(),
            "bound": self.bound,
            "note": "multidegrees outside the box are not examined",
            "exact": self.is_exact(),
            "checked": self.records.len(),
            "records": self.records.iter().map(MultidegreeRecord::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Build the resolution and check it.
pub fn check_exactness(
    ideal: &MonomialIdeal,
    phi: &FieldSpecialization,
    bound: Option<&Monomial>,
) -> Result<ExactnessReport> {
    let complex = build_resolution(ideal)?;
    let bound = bound.cloned().unwrap_or_else(|| default_bound(ideal));
    check_complex_exactness(&complex, phi, &bound)
}

/// Check a given complex (possibly a mutated fixture) against the ideal it
/// claims to resolve.
pub fn check_complex_exactness(
    complex: &FreeComplex,
    phi: &FieldSpecialization,
    bound: &Monomial,
) -> Result<ExactnessReport> {
    let n = complex.n();
    if phi.n() != n {
        return Err(Error::Config(format!("specialization is for n = {}, ideal has n = {n}", phi.n())));
    }
    if bound.n() != n || !bound.is_effective() {
        return Err(Error::Config(format!("bound {bound} must be an effective vector of length {n}")));
    }
    // every parameter that can occur must be assigned
    for i in 1..=n {
        for j in i + 1..=n {
            phi.specialize(&Scalar::param(i, j))?;
        }
    }
    let records = box_multidegrees(bound)
        .into_par_iter()
        .map(|a| examine(complex, phi, a))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExactnessReport {
        specialization: phi.clone(),
        bound: bound.clone(),
        records,
    })
}

type Matrix = Vec<Vec<FieldValue>>;

fn scalar_value(phi: &FieldSpecialization, q: &crate::commutation::QMonomial, k: i64, extra: &Scalar) -> Result<FieldValue> {
    let field = phi.field();
    let s = &Scalar::from_parts(1, q.clone()) * extra;
    let v = phi.specialize(&s)?;
    Ok(field.mul(&v, &crate::element::int_in(field, k)))
}

fn mat_mul(field: &Field, a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    (0..inner).fold(field.zero(), |acc, k| field.add(&acc, &field.mul(&row[k], &b[k][c])))
                })
                .collect()
        })
        .collect()
}

fn examine(complex: &FreeComplex, phi: &FieldSpecialization, a: Monomial) -> Result<MultidegreeRecord> {
    let field = phi.field();
    let len = complex.len();
    let comps: Vec<Vec<(&Symbol, Monomial)>> = (0..len).map(|q| component_of(complex.basis(q), &a)).collect();
    let index: Vec<HashMap<(&Symbol, &Monomial), usize>> = comps
        .iter()
        .map(|c| c.iter().enumerate().map(|(k, (s, m))| ((*s, m), k)).collect())
        .collect();
    let mut problems = Vec::new();

    // restricted differentials, rows indexed by comps[q-1]
    let mut mats: Vec<Matrix> = Vec::new();
    for q in 1..len {
        let d = complex.matrix(q).expect("matrix for every positive degree");
        let rows = comps[q - 1].len();
        let mut mat = vec![vec![field.zero(); comps[q].len()]; rows];
        for (col, (s, m)) in comps[q].iter().enumerate() {
            let s_idx = complex.basis(q).binary_search(s).expect("basis symbol");
            for (row, entry) in d.column(s_idx) {
                let target = &complex.basis(q - 1)[*row];
                for (me, qm, k) in entry.iter() {
                    let mono = me.star(m)?;
                    let Some(&r) = index[q - 1].get(&(target, &mono)) else {
                        problems.push(format!(
                            "d_{q} sends {}·{} outside multidegree {a}",
                            s.render(),
                            m.render()
                        ));
                        continue;
                    };
                    let v = scalar_value(phi, qm, k, &bichar_c(me, m)?)?;
                    mat[r][col] = field.add(&mat[r][col], &v);
                }
            }
        }
        mats.push(mat);
    }
    let aug: Matrix = vec![comps
        .first()
        .map(|c| {
            c.iter()
                .map(|(s, m)| phi.specialize(&bichar_c(s.u(), m).expect("same n")))
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?
        .unwrap_or_default()];

    let is_zero = |m: &Matrix| m.iter().flatten().all(FieldValue::is_zero);
    if let Some(d1) = mats.first() {
        if !is_zero(&mat_mul(field, &aug, d1)) {
            problems.push("augmentation ∘ d_1 ≠ 0".into());
        }
    }
    for q in 1..mats.len() {
        if !is_zero(&mat_mul(field, &mats[q - 1], &mats[q])) {
            problems.push(format!("d_{q} ∘ d_{} ≠ 0", q + 1));
        }
    }

    let dims: Vec<usize> = comps.iter().map(Vec::len).collect();
    let in_ideal = complex.ideal().contains(&a);
    let euler: i64 = dims
        .iter()
        .enumerate()
        .map(|(q, &d)| if q % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum();
    if euler != in_ideal as i64 {
        problems.push(format!("Euler characteristic {euler} ≠ {}", in_ideal as i64));
    }

    let ranks: Vec<usize> = mats.iter().map(|m| rank(field, m.clone())).collect();
    let augmentation_rank = if dims.first().copied().unwrap_or(0) == 0 {
        0
    } else {
        rank(field, aug)
    };
    if augmentation_rank != in_ideal as usize {
        problems.push(format!(
            "augmentation has rank {augmentation_rank} but x^a {} I",
            if in_ideal { "∈" } else { "∉" }
        ));
    }
    let rank_of = |q: usize| if q == 0 { augmentation_rank } else { ranks.get(q - 1).copied().unwrap_or(0) };
    let homology: Vec<usize> = (0..len)
        .map(|q| {
            let h = dims[q] as i64 - rank_of(q) as i64 - rank_of(q + 1) as i64;
            h.max(0) as usize
        })
        .collect();
    for (q, &h) in homology.iter().enumerate() {
        if h != 0 {
            problems.push(format!("H_{q} has dimension {h}"));
        }
    }
    Ok(MultidegreeRecord {
        multidegree: a,
        dims,
        ranks,
        augmentation_rank,
        homology,
        in_ideal,
        problems,
    })
}
