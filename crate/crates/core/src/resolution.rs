//! The skew Eliahou–Kervaire complex `L(I) = K(I) / J(I)`.
//!
//! `K_q` is free on all symbols `e(σ;u)` with `σ` strictly increasing in
//! `1..=n` and `u ∈ G(I)`; `J_q` is spanned by the symbols with
//! `last(σ) ≥ max(u)`, and `L_q` by the admissible ones. Module elements are
//! written basis-element-times-coefficient, so a differential matrix acts on
//! coordinate columns and its entries multiply in the usual order.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde_json::json;

use crate::commutation::{bichar_c, FieldSpecialization, Scalar};
use crate::element::{Element, RingElement};
use crate::error::{Error, Result};
use crate::ideal::{MonomialIdeal, StableIdeal};
use crate::monoid::Monomial;

/// A symbol `e(σ;u)`; `σ` holds 1-based variable indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Symbol {
    sigma: Vec<usize>,
    u: Monomial,
}

impl Symbol {
    pub fn new(sigma: Vec<usize>, u: Monomial) -> Result<Self> {
        let n = u.n();
        if sigma.iter().any(|&i| i == 0 || i > n) {
            return Err(Error::InvalidSigma(format!("{sigma:?} has indices outside 1..={n}")));
        }
        if sigma.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSigma(format!("{sigma:?} is not strictly increasing")));
        }
        Ok(Symbol { sigma, u })
    }

    pub(crate) fn new_unchecked(sigma: Vec<usize>, u: Monomial) -> Self {
        Symbol { sigma, u }
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn u(&self) -> &Monomial {
        &self.u
    }

    /// Homological degree `|σ|`.
    pub fn degree(&self) -> usize {
        self.sigma.len()
    }

    /// `σ` empty, or `last(σ) < max(u)`.
    pub fn is_admissible(&self) -> bool {
        match self.sigma.last() {
            None => true,
            Some(&last) => self.u.max_index().is_ok_and(|top| last < top),
        }
    }

    /// Multidegree (and `G`-degree) `x_σ * u`.
    pub fn multidegree(&self) -> Monomial {
        Monomial::indicator(self.u.n(), &self.sigma)
            .star(&self.u)
            .expect("same n")
    }

    /// Internal degree `|σ| + deg(u)`.
    pub fn internal_degree(&self) -> i64 {
        self.sigma.len() as i64 + self.u.degree()
    }

    pub fn render(&self) -> String {
        let sigma = if self.sigma.is_empty() {
            "∅".to_string()
        } else {
            self.sigma.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
        };
        format!("e({sigma};{})", self.u.render())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({"sigma": self.sigma, "u": self.u})
    }
}

impl Ord for Symbol {
    /// Graded lexicographic on `u`, then lexicographic on `σ`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.u
            .graded_lex_cmp(&other.u)
            .then_with(|| self.sigma.cmp(&other.sigma))
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// One summand `e(σ;u) · coef · x^mono`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coef: Scalar,
    pub mono: Monomial,
    pub sym: Symbol,
}

impl Term {
    pub fn render(&self, n: usize) -> String {
        Element::from_terms([self]).render(n)
    }
}

/// Strictly increasing sequences of length `q` with entries in `1..=max`.
fn increasing_sequences(q: usize, max: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, q: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..=max {
            if max - i + 1 < q - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, q, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, q, max, &mut Vec::new(), &mut out);
    out
}

/// Admissible symbols with `|σ| = q`, in canonical order.
pub fn admissible_basis(ideal: &StableIdeal, q: usize) -> Vec<Symbol> {
    let mut out = Vec::new();
    for u in ideal.generators() {
        let top = u.max_index().expect("generators are nonunit");
        for sigma in increasing_sequences(q, top - 1) {
            out.push(Symbol::new_unchecked(sigma, u.clone()));
        }
    }
    out.sort();
    out
}

/// All symbols of `K_q` (admissibility dropped), in canonical order.
pub fn ambient_basis(ideal: &StableIdeal, q: usize) -> Vec<Symbol> {
    let mut out = Vec::new();
    for u in ideal.generators() {
        for sigma in increasing_sequences(q, ideal.n()) {
            out.push(Symbol::new_unchecked(sigma, u.clone()));
        }
    }
    out.sort();
    out
}

fn check_symbol(ideal: &StableIdeal, s: &Symbol) -> Result<()> {
    if s.u.n() != ideal.n() {
        return Err(Error::Dimension {
            left: ideal.n(),
            right: s.u.n(),
        });
    }
    if !ideal.generators().contains(&s.u) {
        return Err(Error::InvalidSigma(format!("{} is not a generator of the ideal", s.u.render())));
    }
    Ok(())
}

/// `D = D₁ − D₂` on `K`, both sums over every position `r`.
pub(crate) fn ambient_element(ideal: &StableIdeal, s: &Symbol) -> Result<Element> {
    check_symbol(ideal, s)?;
    let n = ideal.n();
    let mut out = Element::zero();
    for r in 1..=s.sigma.len() {
        let sign = Scalar::sign_pow(r);
        let i_r = s.sigma[r - 1];
        let mut sigma_r = s.sigma.clone();
        sigma_r.remove(r - 1);
        let x_sigma_r = Monomial::indicator(n, &sigma_r);
        let x_ir = Monomial::var(n, i_r);

        let c1 = bichar_c(&x_sigma_r.star(&s.u)?, &x_ir)?.inverse();
        out.add(1, &(&sign * &c1), x_ir.clone(), Symbol::new_unchecked(sigma_r.clone(), s.u.clone()));

        let dec = ideal.decompose(&x_ir.star(&s.u)?)?;
        let c2 = bichar_c(&x_sigma_r, &dec.y)?.inverse();
        out.add(-1, &(&sign * &c2), dec.y, Symbol::new_unchecked(sigma_r, dec.u));
    }
    Ok(out)
}

/// The differential `d` of `L(I)` on an admissible symbol.
pub fn differential(ideal: &StableIdeal, s: &Symbol) -> Result<Vec<Term>> {
    Ok(differential_element(ideal, s)?.to_terms())
}

pub(crate) fn differential_element(ideal: &StableIdeal, s: &Symbol) -> Result<Element> {
    if !s.is_admissible() {
        return Err(Error::NotAdmissible(s.render()));
    }
    let mut e = ambient_element(ideal, s)?;
    e.retain_symbols(Symbol::is_admissible);
    Ok(e)
}

/// The ambient differential `D` on `K(I)`; the output may contain symbols
/// of `J(I)`.
pub fn ambient_differential(ideal: &StableIdeal, s: &Symbol) -> Result<Vec<Term>> {
    Ok(ambient_element(ideal, s)?.to_terms())
}

/// Apply `d` (or `D` when `ambient`) to a whole element.
pub(crate) fn apply(ideal: &StableIdeal, x: &Element, ambient: bool) -> Result<Element> {
    let mut out = Element::zero();
    for (s, m, q, k) in x.iter() {
        let ds = if ambient {
            ambient_element(ideal, s)?
        } else {
            differential_element(ideal, s)?
        };
        out.add_assign(&ds.mul_right(&Scalar::from_parts(1, q.clone()), m)?, k);
    }
    Ok(out)
}

/// Sparse matrix of `d_q : L_q → L_{q-1}`, stored by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, RingElement)>>,
}

impl DiffMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, col: usize) -> &[(usize, RingElement)] {
        &self.columns[col]
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<&RingElement> {
        self.columns[col].iter().find(|(r, _)| *r == row).map(|(_, e)| e)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &RingElement)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, e)| (*r, c, e)))
    }
}

/// The resolution: bases of `L_0, L_1, ...`, the matrices of `d_q` for
/// `q ≥ 1`, and the augmentation `e(∅;u) ↦ u`.
#[derive(Debug, Clone)]
pub struct FreeComplex {
    ideal: StableIdeal,
    bases: Vec<Vec<Symbol>>,
    matrices: Vec<DiffMatrix>,
}

/// Build `L(I)`. Non-stable input is rejected with its witness; the zero
/// ideal gives the empty complex.
pub fn build_resolution(ideal: &MonomialIdeal) -> Result<FreeComplex> {
    let ideal = StableIdeal::new(ideal.clone())?;
    let top = ideal
        .generators()
        .iter()
        .map(|u| u.max_index().expect("nonunit"))
        .max();
    let mut bases = Vec::new();
    if let Some(top) = top {
        for q in 0..top {
            bases.push(admissible_basis(&ideal, q));
        }
    }
    let mut matrices = Vec::new();
    for q in 1..bases.len() {
        let rows = &bases[q - 1];
        let mut columns = Vec::with_capacity(bases[q].len());
        for s in &bases[q] {
            let mut col: Vec<(usize, RingElement)> = Vec::new();
            for (t, m, qm, k) in differential_element(&ideal, s)?.iter() {
                let row = rows.binary_search(t).expect("differential lands in the basis");
                let coef = Scalar::from_parts(1, qm.clone());
                match col.iter_mut().find(|(r, _)| *r == row) {
                    Some((_, e)) => e.add_term(k, &coef, m.clone()),
                    None => {
                        let mut e = RingElement::zero();
                        e.add_term(k, &coef, m.clone());
                        col.push((row, e));
                    }
                }
            }
            col.retain(|(_, e)| !e.is_zero());
            col.sort_by_key(|(r, _)| *r);
            columns.push(col);
        }
        matrices.push(DiffMatrix {
            rows: rows.len(),
            columns,
        });
    }
    Ok(FreeComplex {
        ideal,
        bases,
        matrices,
    })
}

impl FreeComplex {
    pub fn ideal(&self) -> &StableIdeal {
        &self.ideal
    }

    pub fn n(&self) -> usize {
        self.ideal.n()
    }

    /// Number of nonzero modules `L_0 .. L_len-1`.
    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn basis(&self, q: usize) -> &[Symbol] {
        self.bases.get(q).map_or(&[], Vec::as_slice)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    /// Matrix of `d_q`, `q ≥ 1`.
    pub fn matrix(&self, q: usize) -> Option<&DiffMatrix> {
        q.checked_sub(1).and_then(|k| self.matrices.get(k))
    }

    /// `e(∅;u) ↦ u` on the basis of `L_0`.
    pub fn augmentation(&self) -> Vec<Monomial> {
        self.basis(0).iter().map(|s| s.u.clone()).collect()
    }

    /// Copy with one entry of `d_q` replaced (or removed with `None`).
    /// Used to build negative-control fixtures.
    pub fn with_entry(&self, q: usize, row: usize, col: usize, entry: Option<RingElement>) -> FreeComplex {
        let mut out = self.clone();
        let column = &mut out.matrices[q - 1].columns[col];
        column.retain(|(r, _)| *r != row);
        if let Some(e) = entry {
            column.push((row, e));
            column.sort_by_key(|(r, _)| *r);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let bases: Vec<serde_json::Value> = self
            .bases
            .iter()
            .map(|b| b.iter().map(Symbol::to_json).collect())
            .collect();
        let matrices: Vec<serde_json::Value> = self
            .matrices
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let entries: Vec<serde_json::Value> = m
                    .entries()
                    .map(|(r, c, e)| json!({"row": r, "col": c, "terms": e.to_json()}))
                    .collect();
                json!({"q": k + 1, "rows": m.rows, "cols": m.cols(), "entries": entries})
            })
            .collect();
        json!({
            "schema": 1,
            "ideal": self.ideal.to_json(),
            "ranks": self.ranks(),
            "bases": bases,
            "matrices": matrices,
            "augmentation": self.augmentation(),
        })
    }

    /// Plain-text matrices for diffing by eye, e.g. `-q*x`. With a
    /// specialization the coefficients are evaluated.
    pub fn render_text(&self, phi: Option<&FieldSpecialization>) -> Result<String> {
        let n = self.n();
        let mut out = String::new();
        out.push_str(&format!("ideal {}\n", self.ideal.render()));
        out.push_str(&format!("ranks {:?}\n", self.ranks()));
        for (q, b) in self.bases.iter().enumerate() {
            let names: Vec<String> = b.iter().map(Symbol::render).collect();
            out.push_str(&format!("L_{q}: {}\n", names.join(" ")));
        }
        for (k, m) in self.matrices.iter().enumerate() {
            out.push_str(&format!("d_{}:\n", k + 1));
            let mut cells = vec![vec!["0".to_string(); m.cols()]; m.rows];
            for (r, c, e) in m.entries() {
                cells[r][c] = match phi {
                    Some(phi) => e.render_numeric(phi)?,
                    None => e.render(n),
                };
            }
            let width = cells.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
            for row in cells {
                let padded: Vec<String> = row
                    .iter()
                    .map(|s| format!("{s:>width$}"))
                    .collect();
                out.push_str(&format!("  [ {} ]\n", padded.join("  ")));
            }
        }
        Ok(out)
    }
}

/// First nonzero entry of a composite `d_q ∘ d_{q+1}` (`q = 0` is the
/// augmentation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeFailure {
    pub q: usize,
    pub row: usize,
    pub col: usize,
    pub surviving: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexCheck {
    pub failure: Option<CompositeFailure>,
}

impl ComplexCheck {
    pub fn is_ok(&self) -> bool {
        self.failure.is_none()
    }
}

/// Check every composite `d_q ∘ d_{q+1}` (including augmentation ∘ `d_1`)
/// is zero under exact symbolic arithmetic.
pub fn verify_complex(c: &FreeComplex) -> ComplexCheck {
    let n = c.n();
    if let Some(d1) = c.matrix(1) {
        let aug: Vec<RingElement> = c
            .augmentation()
            .into_iter()
            .map(|u| RingElement::term(&Scalar::one(), u))
            .collect();
        for col in 0..d1.cols() {
            let mut acc = RingElement::zero();
            for (mid, e) in d1.column(col) {
                acc.add_assign(&aug[*mid].mul(e).expect("same n"));
            }
            if !acc.is_zero() {
                return ComplexCheck {
                    failure: Some(CompositeFailure {
                        q: 0,
                        row: 0,
                        col,
                        surviving: acc.render(n),
                    }),
                };
            }
        }
    }
    for q in 1..c.len() {
        let (Some(left), Some(right)) = (c.matrix(q), c.matrix(q + 1)) else {
            continue;
        };
        let failure = (0..right.cols()).into_par_iter().find_map_first(|col| {
            let mut acc: Vec<RingElement> = vec![RingElement::zero(); left.rows()];
            for (mid, e2) in right.column(col) {
                for (row, e1) in left.column(*mid) {
                    acc[*row].add_assign(&e1.mul(e2).expect("same n"));
                }
            }
            acc.iter().enumerate().find(|(_, e)| !e.is_zero()).map(|(row, e)| CompositeFailure {
                q,
                row,
                col,
                surviving: e.render(n),
            })
        });
        if failure.is_some() {
            return ComplexCheck { failure };
        }
    }
    ComplexCheck { failure: None }
}

/// No matrix entry has a summand with the unit monomial.
pub fn is_minimal(c: &FreeComplex) -> bool {
    c.matrices
        .iter()
        .all(|m| m.entries().all(|(_, _, e)| !e.has_unit_monomial()))
}

/// `d` is `D` with the `J` part deleted, and `D` maps `J` into `J`.
pub fn check_quotient_relation(ideal: &StableIdeal) -> Result<()> {
    for q in 0..=ideal.n() {
        for s in ambient_basis(ideal, q) {
            let full = ambient_element(ideal, &s)?;
            if s.is_admissible() {
                let mut kept = full.clone();
                kept.retain_symbols(Symbol::is_admissible);
                if kept != differential_element(ideal, &s)? {
                    return Err(Error::NotAdmissible(format!("quotient relation fails at {s}")));
                }
            } else if full.iter().any(|(t, ..)| t.is_admissible()) {
                return Err(Error::NotAdmissible(format!("D({s}) leaves J: {}", full.render(ideal.n()))));
            }
        }
    }
    Ok(())
}

/// `D ∘ D = 0` on every symbol of `K(I)`; returns the first failure.
pub fn verify_ambient_complex(ideal: &StableIdeal) -> Result<Option<Symbol>> {
    for q in 2..=ideal.n() {
        for s in ambient_basis(ideal, q) {
            let once = ambient_element(ideal, &s)?;
            if !apply(ideal, &once, true)?.is_zero() {
                return Ok(Some(s));
            }
        }
    }
    Ok(None)
}
