//! Exact linear combinations over `ℤ[q_{ij}^{±1}]`.
//!
//! Coefficients are kept as integer multiples of distinct `q`-monomials, so
//! two elements are equal exactly when they agree for generic parameters.

use std::collections::BTreeMap;

use crate::commutation::{bichar_c, FieldSpecialization, FieldValue, QMonomial, Scalar};
use crate::error::Result;
use crate::monoid::Monomial;
use crate::resolution::{Symbol, Term};

fn bump<K: Ord>(map: &mut BTreeMap<K, i64>, key: K, k: i64) {
    if k == 0 {
        return;
    }
    *map.entry(key).or_insert(0) += k;
}

fn prune<K: Ord + Clone>(map: &mut BTreeMap<K, i64>) {
    map.retain(|_, v| *v != 0);
}

/// `k · c` with `k` an integer and `c` a signed `q`-monomial.
fn signed(k: i64, c: &Scalar) -> (QMonomial, i64) {
    (c.q().clone(), k * c.sign() as i64)
}

/// Element of the ring `R` with coefficients in `ℤ[q^{±1}]`: a finite sum of
/// `k · q^e · x^m`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RingElement(BTreeMap<(Monomial, QMonomial), i64>);

impl RingElement {
    pub fn zero() -> Self {
        RingElement(BTreeMap::new())
    }

    pub fn term(coef: &Scalar, mono: Monomial) -> Self {
        let mut r = RingElement::zero();
        r.add_term(1, coef, mono);
        r
    }

    pub fn add_term(&mut self, k: i64, coef: &Scalar, mono: Monomial) {
        let (q, k) = signed(k, coef);
        bump(&mut self.0, (mono, q), k);
        prune(&mut self.0);
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(monomial, q-part, integer multiplicity)`.
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &QMonomial, i64)> {
        self.0.iter().map(|((m, q), &k)| (m, q, k))
    }

    pub fn add_assign(&mut self, other: &RingElement) {
        for ((m, q), &k) in &other.0 {
            bump(&mut self.0, (m.clone(), q.clone()), k);
        }
        prune(&mut self.0);
    }

    /// Product in `R`: `x^a · x^b = C(a, b) x^{a+b}`.
    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        let mut out = BTreeMap::new();
        for ((m1, q1), k1) in &self.0 {
            for ((m2, q2), k2) in &other.0 {
                let c = bichar_c(m1, m2)?;
                let q = &(q1 * q2) * c.q();
                bump(&mut out, (m1.star(m2)?, q), k1 * k2);
            }
        }
        prune(&mut out);
        Ok(RingElement(out))
    }

    /// Whether some summand has the unit monomial.
    pub fn has_unit_monomial(&self) -> bool {
        self.0.keys().any(|(m, _)| m.is_unit())
    }

    /// Evaluate the coefficients and merge equal monomials.
    pub fn specialize(&self, phi: &FieldSpecialization) -> Result<BTreeMap<Monomial, FieldValue>> {
        let field = phi.field();
        let mut out: BTreeMap<Monomial, FieldValue> = BTreeMap::new();
        for ((m, q), &k) in &self.0 {
            let v = phi.specialize(&Scalar::from_parts(1, q.clone()))?;
            let v = field.mul(&v, &int_in(field, k));
            let slot = out.entry(m.clone()).or_insert_with(|| field.zero());
            *slot = field.add(slot, &v);
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// Text form like `-q^2*x`; `0` for the zero element.
    pub fn render(&self, n: usize) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, ((m, q), &k)) in self.0.iter().enumerate() {
            let mut parts = Vec::new();
            if k.abs() != 1 {
                parts.push(k.abs().to_string());
            }
            if !q.is_one() {
                parts.push(q.render(n));
            }
            if !m.is_unit() {
                parts.push(m.render());
            }
            let body = if parts.is_empty() { "1".into() } else { parts.join("*") };
            match (idx, k < 0) {
                (0, false) => out.push_str(&body),
                (0, true) => out.push_str(&format!("-{body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
                (_, true) => out.push_str(&format!(" - {body}")),
            }
        }
        out
    }

    /// Text form after specializing the parameters.
    pub fn render_numeric(&self, phi: &FieldSpecialization) -> Result<String> {
        let vals = self.specialize(phi)?;
        if vals.is_empty() {
            return Ok("0".into());
        }
        let parts: Vec<String> = vals
            .iter()
            .map(|(m, v)| {
                let c = v.to_string();
                match (m.is_unit(), c.as_str()) {
                    (true, _) => c,
                    (false, "1") => m.render(),
                    (false, "-1") => format!("-{}", m.render()),
                    (false, _) => format!("{c}*{}", m.render()),
                }
            })
            .collect();
        Ok(parts.join(" + "))
    }

    /// `[{sign, q, monomial}]`, where `sign` carries the integer multiplicity.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.0
                .iter()
                .map(|((m, q), &k)| {
                    let qmap: serde_json::Map<String, serde_json::Value> =
                        q.iter().map(|((i, j), e)| (format!("{i},{j}"), e.into())).collect();
                    serde_json::json!({"sign": k, "q": qmap, "monomial": m})
                })
                .collect(),
        )
    }
}

pub(crate) fn int_in(field: &crate::commutation::Field, k: i64) -> FieldValue {
    use crate::commutation::Field;
    match field {
        Field::Rationals => FieldValue::Rational(num_rational::BigRational::from_integer(k.into())),
        Field::Prime(p) => FieldValue::Modular(k.rem_euclid(*p as i64) as u64),
    }
}

/// Element of a free module on symbols: a finite sum of
/// `k · e(σ;u) · q^e · x^m` (basis element on the left, ring coefficient on
/// the right).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Element(BTreeMap<(Symbol, Monomial, QMonomial), i64>);

impl Element {
    pub fn zero() -> Self {
        Element(BTreeMap::new())
    }

    pub fn from_terms<'a>(terms: impl IntoIterator<Item = &'a Term>) -> Self {
        let mut e = Element::zero();
        for t in terms {
            e.add_term(1, t);
        }
        e
    }

    pub fn add_term(&mut self, k: i64, t: &Term) {
        self.add(k, &t.coef, t.mono.clone(), t.sym.clone());
    }

    pub fn add(&mut self, k: i64, coef: &Scalar, mono: Monomial, sym: Symbol) {
        let (q, k) = signed(k, coef);
        bump(&mut self.0, (sym, mono, q), k);
        prune(&mut self.0);
    }

    pub fn add_assign(&mut self, other: &Element, k: i64) {
        for ((s, m, q), &v) in &other.0 {
            bump(&mut self.0, (s.clone(), m.clone(), q.clone()), v * k);
        }
        prune(&mut self.0);
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(symbol, monomial, q-part, integer multiplicity)`.
    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Monomial, &QMonomial, i64)> {
        self.0.iter().map(|((s, m, q), &k)| (s, m, q, k))
    }

    /// The summands as unit-coefficient terms; a multiplicity `k` yields `|k|`
    /// copies.
    pub fn to_terms(&self) -> Vec<Term> {
        let mut out = Vec::new();
        for ((s, m, q), &k) in &self.0 {
            let sign = if k < 0 { -1 } else { 1 };
            for _ in 0..k.unsigned_abs() {
                out.push(Term {
                    coef: Scalar::from_parts(sign, q.clone()),
                    mono: m.clone(),
                    sym: s.clone(),
                });
            }
        }
        out
    }

    /// Keep only the summands whose symbol satisfies `keep`.
    pub fn retain_symbols(&mut self, mut keep: impl FnMut(&Symbol) -> bool) {
        self.0.retain(|(s, _, _), _| keep(s));
    }

    /// Right multiplication by the ring element `c · x^m`.
    pub fn mul_right(&self, coef: &Scalar, mono: &Monomial) -> Result<Element> {
        let mut out = BTreeMap::new();
        for ((s, m, q), &k) in &self.0 {
            let c = bichar_c(m, mono)?;
            let q = &(q * coef.q()) * c.q();
            bump(&mut out, (s.clone(), m.star(mono)?, q), k * coef.sign() as i64);
        }
        prune(&mut out);
        Ok(Element(out))
    }

    pub fn render(&self, n: usize) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, ((s, m, q), &k)) in self.0.iter().enumerate() {
            let mut parts = vec![s.render()];
            if k.abs() != 1 {
                parts.push(k.abs().to_string());
            }
            if !q.is_one() {
                parts.push(q.render(n));
            }
            if !m.is_unit() {
                parts.push(m.render());
            }
            let body = parts.join("*");
            match (idx, k < 0) {
                (0, false) => out.push_str(&body),
                (0, true) => out.push_str(&format!("-{body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
                (_, true) => out.push_str(&format!(" - {body}")),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[i64]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn ring_product_uses_reordering_cost() {
        // y · x = q21 x y = q^-1 xy
        let y = RingElement::term(&Scalar::one(), m(&[0, 1]));
        let x = RingElement::term(&Scalar::one(), m(&[1, 0]));
        let yx = y.mul(&x).unwrap();
        assert_eq!(yx, RingElement::term(&Scalar::param(2, 1), m(&[1, 1])));
        assert_eq!(yx.render(2), "q^-1*x*y");
        let xy = x.mul(&y).unwrap();
        assert_eq!(xy.render(2), "x*y");
    }

    #[test]
    fn cancellation_is_exact() {
        let mut r = RingElement::term(&Scalar::param(1, 2), m(&[1, 0]));
        r.add_term(1, &-Scalar::param(1, 2), m(&[1, 0]));
        assert!(r.is_zero());
        let mut r = RingElement::term(&Scalar::param(1, 2), m(&[1, 0]));
        r.add_term(1, &-Scalar::one(), m(&[1, 0]));
        assert_eq!(r.len(), 2);
        assert_eq!(r.render(2), "-x + q*x");
    }
}
