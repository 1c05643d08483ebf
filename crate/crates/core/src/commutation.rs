//! Commutation data `x_i x_j = q_{ij} x_j x_i`, the unit group the
//! coefficients live in, and the bicharacters `C` and `χ`.
//!
//! A [`Scalar`] is `±∏ q_{ij}^{e_{ij}}` over the formal parameters with
//! `i < j`; `q_{ji}` is stored as `q_{ij}^{-1}`. This is the symbolic mode.
//! A [`FieldSpecialization`] evaluates scalars at nonzero elements of `ℚ`
//! or `F_p`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monoid::Monomial;

/// Laurent monomial in the parameters `q_{ij}`, `i < j` (1-based).
/// Zero exponents are never stored, so equality is structural.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QMonomial(BTreeMap<(usize, usize), i64>);

impl QMonomial {
    pub fn one() -> Self {
        QMonomial(BTreeMap::new())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// `q_{ij}^e` for any `i != j`, normalised to the `i < j` parameter.
    pub fn param(i: usize, j: usize, e: i64) -> Self {
        let mut q = QMonomial::one();
        q.add_exponent(i, j, e);
        q
    }

    fn add_exponent(&mut self, i: usize, j: usize, e: i64) {
        assert!(i != j, "q_ii is identically 1");
        let (key, e) = if i < j { ((i, j), e) } else { ((j, i), -e) };
        if e == 0 {
            return;
        }
        let slot = self.0.entry(key).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.0.remove(&key);
        }
    }

    pub fn exponent(&self, i: usize, j: usize) -> i64 {
        if i < j {
            self.0.get(&(i, j)).copied().unwrap_or(0)
        } else {
            -self.0.get(&(j, i)).copied().unwrap_or(0)
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.0.iter().map(|(&k, &e)| (k, e))
    }

    pub fn inverse(&self) -> Self {
        QMonomial(self.0.iter().map(|(&k, &e)| (k, -e)).collect())
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return QMonomial::one();
        }
        QMonomial(self.0.iter().map(|(&key, &e)| (key, e * k)).collect())
    }

    /// `q^-2`, `q_1_2*q_2_3^-1`; parameters collapse to `q` when `n = 2`.
    pub fn render(&self, n: usize) -> String {
        self.0
            .iter()
            .map(|(&(i, j), &e)| {
                let name = if n == 2 {
                    "q".to_string()
                } else {
                    format!("q_{i}_{j}")
                };
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Mul for &QMonomial {
    type Output = QMonomial;

    fn mul(self, rhs: &QMonomial) -> QMonomial {
        let mut out = self.clone();
        for (&(i, j), &e) in &rhs.0 {
            out.add_exponent(i, j, e);
        }
        out
    }
}

/// A unit coefficient `±q^e`. Never zero; closed under multiplication and
/// inversion.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "ScalarJson", try_from = "ScalarJson")]
pub struct Scalar {
    negative: bool,
    q: QMonomial,
}

impl Scalar {
    pub fn one() -> Self {
        Scalar {
            negative: false,
            q: QMonomial::one(),
        }
    }

    pub fn minus_one() -> Self {
        -Scalar::one()
    }

    /// `(-1)^k`.
    pub fn sign_pow(k: usize) -> Self {
        if k % 2 == 0 {
            Scalar::one()
        } else {
            Scalar::minus_one()
        }
    }

    /// `q_{ij}` for any `i != j`.
    pub fn param(i: usize, j: usize) -> Self {
        Scalar::from_parts(1, QMonomial::param(i, j, 1))
    }

    pub fn from_parts(sign: i8, q: QMonomial) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be ±1");
        Scalar {
            negative: sign < 0,
            q,
        }
    }

    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn q(&self) -> &QMonomial {
        &self.q
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.q.is_one()
    }

    pub fn inverse(&self) -> Self {
        Scalar {
            negative: self.negative,
            q: self.q.inverse(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        Scalar {
            negative: self.negative && k % 2 != 0,
            q: self.q.pow(k),
        }
    }

    pub fn render(&self, n: usize) -> String {
        let body = self.q.render(n);
        match (self.negative, body.is_empty()) {
            (false, true) => "1".into(),
            (true, true) => "-1".into(),
            (false, false) => body,
            (true, false) => format!("-{body}"),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar {
            negative: self.negative != rhs.negative,
            q: &self.q * &rhs.q,
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;

    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar {
            negative: !self.negative,
            q: self.q,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(0))
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarJson {
    sign: i8,
    q: BTreeMap<String, i64>,
}

impl From<Scalar> for ScalarJson {
    fn from(s: Scalar) -> Self {
        ScalarJson {
            sign: s.sign(),
            q: s.q.iter().map(|((i, j), e)| (format!("{i},{j}"), e)).collect(),
        }
    }
}

impl TryFrom<ScalarJson> for Scalar {
    type Error = Error;

    fn try_from(js: ScalarJson) -> Result<Self> {
        if js.sign != 1 && js.sign != -1 {
            return Err(Error::Parse(format!("scalar sign must be ±1, got {}", js.sign)));
        }
        let mut q = QMonomial::one();
        for (key, e) in js.q {
            let (i, j) = parse_pair(&key)?;
            q.add_exponent(i, j, e);
        }
        Ok(Scalar::from_parts(js.sign, q))
    }
}

pub(crate) fn parse_pair(key: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("expected a pair \"i,j\" with 1 <= i < j, got {key:?}"));
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    let i: usize = a.trim().parse().map_err(|_| bad())?;
    let j: usize = b.trim().parse().map_err(|_| bad())?;
    if i == 0 || i >= j {
        return Err(bad());
    }
    Ok((i, j))
}

fn check_dims(a: &Monomial, b: &Monomial) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::Dimension {
            left: a.n(),
            right: b.n(),
        });
    }
    Ok(())
}

/// `C(x^a, x^b)`, defined by `x^a x^b = C(x^a, x^b) x^{a+b}`:
/// `∏_{i>j} q_{ij}^{a_i b_j}`. Extends bimultiplicatively to Laurent input.
pub fn bichar_c(a: &Monomial, b: &Monomial) -> Result<Scalar> {
    check_dims(a, b)?;
    let n = a.n();
    let mut q = QMonomial::one();
    for i in 1..=n {
        let ai = a.exponent(i);
        if ai == 0 {
            continue;
        }
        for j in 1..i {
            q.add_exponent(i, j, ai * b.exponent(j));
        }
    }
    Ok(Scalar { negative: false, q })
}

/// `χ(x^a, x^b) = ∏_{i>j} q_{ij}^{a_i b_j - a_j b_i}`, the alternating
/// bicharacter with `x^a x^b = χ(x^a, x^b) x^b x^a`.
pub fn chi(a: &Monomial, b: &Monomial) -> Result<Scalar> {
    check_dims(a, b)?;
    let n = a.n();
    let mut q = QMonomial::one();
    for i in 1..=n {
        for j in 1..i {
            q.add_exponent(i, j, a.exponent(i) * b.exponent(j) - a.exponent(j) * b.exponent(i));
        }
    }
    Ok(Scalar { negative: false, q })
}

/// Brute-force `C(x^a, x^b)`: write `x^a x^b` as a word in the variables and
/// bubble-sort it, picking up `q_{ij}` for every swap `x_i x_j -> x_j x_i`.
pub fn reorder_oracle(a: &Monomial, b: &Monomial) -> Result<Scalar> {
    check_dims(a, b)?;
    for m in [a, b] {
        if !m.is_effective() {
            return Err(Error::Laurent(m.clone()));
        }
    }
    let mut word: Vec<usize> = Vec::new();
    for m in [a, b] {
        for i in 1..=m.n() {
            word.extend(std::iter::repeat_n(i, m.exponent(i) as usize));
        }
    }
    let mut acc = QMonomial::one();
    let len = word.len();
    for pass in 0..len {
        for k in 0..len.saturating_sub(pass + 1) {
            if word[k] > word[k + 1] {
                // x_i x_j = q_{ij} x_j x_i
                acc.add_exponent(word[k], word[k + 1], 1);
                word.swap(k, k + 1);
            }
        }
    }
    Ok(Scalar {
        negative: false,
        q: acc,
    })
}

/// Target field of a specialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 62 {
            return Err(Error::Config(format!("{p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn one(&self) -> FieldValue {
        match self {
            Field::Rationals => FieldValue::Rational(BigRational::one()),
            Field::Prime(_) => FieldValue::Modular(1),
        }
    }

    pub fn zero(&self) -> FieldValue {
        match self {
            Field::Rationals => FieldValue::Rational(BigRational::zero()),
            Field::Prime(_) => FieldValue::Modular(0),
        }
    }

    pub fn mul(&self, a: &FieldValue, b: &FieldValue) -> FieldValue {
        match (self, a, b) {
            (Field::Rationals, FieldValue::Rational(x), FieldValue::Rational(y)) => {
                FieldValue::Rational(x * y)
            }
            (Field::Prime(p), FieldValue::Modular(x), FieldValue::Modular(y)) => {
                FieldValue::Modular(mul_mod(*x, *y, *p))
            }
            _ => panic!("field value does not belong to {self:?}"),
        }
    }

    pub fn add(&self, a: &FieldValue, b: &FieldValue) -> FieldValue {
        match (self, a, b) {
            (Field::Rationals, FieldValue::Rational(x), FieldValue::Rational(y)) => {
                FieldValue::Rational(x + y)
            }
            (Field::Prime(p), FieldValue::Modular(x), FieldValue::Modular(y)) => {
                FieldValue::Modular(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            _ => panic!("field value does not belong to {self:?}"),
        }
    }

    pub fn neg(&self, a: &FieldValue) -> FieldValue {
        match (self, a) {
            (Field::Rationals, FieldValue::Rational(x)) => FieldValue::Rational(-x),
            (Field::Prime(p), FieldValue::Modular(x)) => FieldValue::Modular((p - x) % p),
            _ => panic!("field value does not belong to {self:?}"),
        }
    }

    pub fn pow(&self, a: &FieldValue, e: i64) -> FieldValue {
        match (self, a) {
            (Field::Rationals, FieldValue::Rational(x)) => {
                let base = if e < 0 { x.recip() } else { x.clone() };
                let mut out = BigRational::one();
                for _ in 0..e.unsigned_abs() {
                    out *= &base;
                }
                FieldValue::Rational(out)
            }
            (Field::Prime(p), FieldValue::Modular(x)) => {
                let base = if e < 0 { pow_mod(*x, p - 2, *p) } else { *x };
                FieldValue::Modular(pow_mod(base, e.unsigned_abs(), *p))
            }
            _ => panic!("field value does not belong to {self:?}"),
        }
    }

    /// Parse `"3"`, `"-1"` or `"3/2"` into this field.
    pub fn parse(&self, text: &str) -> Result<FieldValue> {
        let bad = || Error::Parse(format!("invalid field element {text:?}"));
        let (num, den) = match text.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (text.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        match self {
            Field::Rationals => Ok(FieldValue::Rational(BigRational::new(num, den))),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let reduce = |x: &BigInt| -> u64 {
                    let r = ((x % &pb) + &pb) % &pb;
                    r.to_string().parse().expect("residue fits in u64")
                };
                let d = reduce(&den);
                if d == 0 {
                    return Err(Error::Config(format!("{text} has a denominator divisible by {p}")));
                }
                Ok(FieldValue::Modular(mul_mod(reduce(&num), pow_mod(d, p - 2, *p), *p)))
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Field::Rationals => "Q".into(),
            Field::Prime(p) => format!("F_{p}"),
        }
    }
}

/// An element of `ℚ` or of `F_p` (stored reduced in `0..p`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldValue {
    Rational(BigRational),
    Modular(u64),
}

impl FieldValue {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldValue::Rational(x) => x.is_zero(),
            FieldValue::Modular(x) => *x == 0,
        }
    }
}

impl fmt::Display for FieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldValue::Rational(x) if x.is_integer() => write!(f, "{}", x.numer()),
            FieldValue::Rational(x) => write!(f, "{}/{}", x.numer(), x.denom()),
            FieldValue::Modular(x) => write!(f, "{x}"),
        }
    }
}

impl FieldValue {
    /// Whether the value is `±1`.
    pub fn is_plus_minus_one(&self, field: &Field) -> bool {
        match (self, field) {
            (FieldValue::Rational(x), _) => x.abs().is_one(),
            (FieldValue::Modular(x), Field::Prime(p)) => *x == 1 || *x == p - 1,
            (FieldValue::Modular(_), Field::Rationals) => false,
        }
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut out = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            out = mul_mod(out, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    out
}

/// Deterministic Miller–Rabin for `u64`.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for b in BASES {
        if p % b == 0 {
            return p == b;
        }
    }
    let mut d = p - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for b in BASES {
        let mut x = pow_mod(b, d, p);
        if x == 1 || x == p - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, p);
            if x == p - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Evaluation homomorphism `q_{ij} ↦ value` into `ℚ` or `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpecialization {
    field: Field,
    n: usize,
    values: BTreeMap<(usize, usize), FieldValue>,
}

impl FieldSpecialization {
    /// Assignment for every pair `i < j`; zero values are rejected.
    pub fn new(
        field: Field,
        n: usize,
        values: BTreeMap<(usize, usize), FieldValue>,
    ) -> Result<Self> {
        for (&(i, j), v) in &values {
            if i == 0 || i >= j || j > n {
                return Err(Error::Config(format!("parameter q_{i}_{j} out of range for n = {n}")));
            }
            if v.is_zero() {
                return Err(Error::Config(format!("q_{i}_{j} specialized to zero")));
            }
            let ok = matches!(
                (&field, v),
                (Field::Rationals, FieldValue::Rational(_)) | (Field::Prime(_), FieldValue::Modular(_))
            );
            if !ok {
                return Err(Error::Config(format!("value for q_{i}_{j} is not in {}", field.label())));
            }
        }
        Ok(FieldSpecialization { field, n, values })
    }

    /// Every `q_{ij} ↦ 1`: the commutative polynomial ring.
    pub fn all_ones(field: Field, n: usize) -> Self {
        let values = pairs(n).map(|k| (k, field.one())).collect();
        FieldSpecialization { field, n, values }
    }

    /// Uniform nonzero values in `F_p` drawn from a seeded ChaCha8 stream.
    pub fn random_prime(p: u64, n: usize, seed: u64) -> Result<Self> {
        let field = Field::prime(p)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = pairs(n)
            .map(|k| (k, FieldValue::Modular(rng.gen_range(1..p))))
            .collect();
        Ok(FieldSpecialization { field, n, values })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &BTreeMap<(usize, usize), FieldValue> {
        &self.values
    }

    /// Evaluate a symbolic scalar.
    pub fn specialize(&self, s: &Scalar) -> Result<FieldValue> {
        let mut out = if s.negative {
            self.field.neg(&self.field.one())
        } else {
            self.field.one()
        };
        for ((i, j), e) in s.q.iter() {
            let v = self
                .values
                .get(&(i, j))
                .ok_or_else(|| Error::Config(format!("no value assigned to q_{i}_{j}")))?;
            out = self.field.mul(&out, &self.field.pow(v, e));
        }
        Ok(out)
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

/// The commutation system of a ring: symbolic parameters, or a numeric
/// assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommutationMatrix {
    Symbolic { n: usize },
    Numeric(FieldSpecialization),
}

impl CommutationMatrix {
    pub fn n(&self) -> usize {
        match self {
            CommutationMatrix::Symbolic { n } => *n,
            CommutationMatrix::Numeric(s) => s.n(),
        }
    }

    /// Parse `{"n":2,"mode":"symbolic"}` or
    /// `{"n":2,"mode":"numeric","field":"Q","q":{"1,2":"3/2"}}`; a prime
    /// field is `"field":"Fp","prime":101`. Numeric mode needs every pair.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("commutation matrix must be a JSON object".into()))?;
        check_schema(obj)?;
        let n = obj
            .get("n")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Parse("missing \"n\"".into()))? as usize;
        match obj.get("mode").and_then(|v| v.as_str()).unwrap_or("symbolic") {
            "symbolic" => Ok(CommutationMatrix::Symbolic { n }),
            "numeric" => {
                let field = match obj.get("field").and_then(|v| v.as_str()) {
                    Some("Q") | None => Field::Rationals,
                    Some("Fp") => {
                        let p = obj
                            .get("prime")
                            .and_then(|v| v.as_u64())
                            .ok_or_else(|| Error::Parse("field Fp needs \"prime\"".into()))?;
                        Field::prime(p)?
                    }
                    Some(other) => return Err(Error::Parse(format!("unknown field {other:?}"))),
                };
                let mut values = BTreeMap::new();
                if let Some(q) = obj.get("q") {
                    let q = q
                        .as_object()
                        .ok_or_else(|| Error::Parse("\"q\" must be an object".into()))?;
                    for (key, v) in q {
                        let pair = parse_pair(key)?;
                        let text = match v {
                            serde_json::Value::String(s) => s.clone(),
                            serde_json::Value::Number(x) => x.to_string(),
                            _ => return Err(Error::Parse(format!("bad value for q {key}"))),
                        };
                        values.insert(pair, field.parse(&text)?);
                    }
                }
                for pair in pairs(n) {
                    if !values.contains_key(&pair) {
                        return Err(Error::Config(format!(
                            "numeric mode needs a value for q {},{}",
                            pair.0, pair.1
                        )));
                    }
                }
                Ok(CommutationMatrix::Numeric(FieldSpecialization::new(field, n, values)?))
            }
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            CommutationMatrix::Symbolic { n } => {
                serde_json::json!({"schema": 1, "n": n, "mode": "symbolic"})
            }
            CommutationMatrix::Numeric(s) => {
                let q: serde_json::Map<String, serde_json::Value> = s
                    .values
                    .iter()
                    .map(|(&(i, j), v)| (format!("{i},{j}"), serde_json::Value::String(v.to_string())))
                    .collect();
                let mut out = serde_json::json!({
                    "schema": 1, "n": s.n, "mode": "numeric", "q": q,
                });
                match s.field {
                    Field::Rationals => out["field"] = "Q".into(),
                    Field::Prime(p) => {
                        out["field"] = "Fp".into();
                        out["prime"] = p.into();
                    }
                }
                out
            }
        }
    }
}

pub(crate) fn check_schema(obj: &serde_json::Map<String, serde_json::Value>) -> Result<()> {
    match obj.get("schema") {
        None => Ok(()),
        Some(v) if v.as_u64() == Some(1) => Ok(()),
        Some(v) => Err(Error::Parse(format!("unsupported schema version {v}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[i64]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    /// `q_{12}^e` in two variables.
    fn q(e: i64) -> Scalar {
        Scalar::from_parts(1, QMonomial::param(1, 2, e))
    }

    #[test]
    fn oracle_examples() {
        // one swap x2 x1 = q21 x1 x2
        assert_eq!(reorder_oracle(&m(&[0, 1]), &m(&[1, 0])).unwrap(), Scalar::param(2, 1));
        assert_eq!(reorder_oracle(&m(&[0, 1]), &m(&[1, 0])).unwrap(), q(-1));
        assert_eq!(reorder_oracle(&m(&[3, 2]), &m(&[0, 0])).unwrap(), Scalar::one());
        assert_eq!(reorder_oracle(&m(&[1, 1]), &m(&[1, 0])).unwrap(), q(-1));
        assert!(matches!(reorder_oracle(&m(&[0, -1]), &m(&[1, 0])), Err(Error::Laurent(_))));
    }

    #[test]
    fn c_examples() {
        for a in [m(&[2, 1]), m(&[0, 3])] {
            assert!(bichar_c(&a, &m(&[0, 0])).unwrap().is_one());
            assert!(bichar_c(&m(&[0, 0]), &a).unwrap().is_one());
        }
        assert_eq!(bichar_c(&m(&[1, 1]), &m(&[1, 0])).unwrap(), q(-1));
        assert_eq!(bichar_c(&m(&[0, 2]), &m(&[1, 1])).unwrap(), q(-2));
        assert!(bichar_c(&m(&[1]), &m(&[1, 0])).is_err());
    }

    #[test]
    fn chi_examples() {
        assert!(chi(&m(&[3, 1, 2]), &m(&[3, 1, 2])).unwrap().is_one());
        assert_eq!(chi(&m(&[1, 1]), &m(&[1, 0])).unwrap(), q(-1));
        assert_eq!(chi(&m(&[0, 2]), &m(&[1, 0])).unwrap(), q(-2));
    }

    #[test]
    fn c_on_unit_vectors() {
        let n = 4;
        for i in 1..=n {
            for j in 1..=n {
                let c = bichar_c(&Monomial::var(n, i), &Monomial::var(n, j)).unwrap();
                if i > j {
                    assert_eq!(c, Scalar::param(i, j));
                } else {
                    assert!(c.is_one());
                }
            }
        }
    }

    #[test]
    fn specialize_examples() {
        let f = Field::prime(101).unwrap();
        let mut vals = BTreeMap::new();
        vals.insert((1, 2), FieldValue::Modular(3));
        let phi = FieldSpecialization::new(f, 2, vals).unwrap();
        assert_eq!(phi.specialize(&Scalar::one()).unwrap(), FieldValue::Modular(1));
        assert_eq!(phi.specialize(&Scalar::minus_one()).unwrap(), FieldValue::Modular(100));
        // 3^-2 = 9^-1 = 45 mod 101
        assert_eq!(phi.specialize(&q(-2)).unwrap(), FieldValue::Modular(45));

        let empty = FieldSpecialization::new(Field::Rationals, 2, BTreeMap::new()).unwrap();
        assert!(matches!(empty.specialize(&q(1)), Err(Error::Config(_))));
        assert_eq!(
            empty.specialize(&Scalar::minus_one()).unwrap(),
            FieldValue::Rational(BigRational::from_integer((-1).into()))
        );
    }

    #[test]
    fn zero_specialization_rejected() {
        let mut vals = BTreeMap::new();
        vals.insert((1, 2), FieldValue::Modular(0));
        assert!(FieldSpecialization::new(Field::prime(7).unwrap(), 2, vals).is_err());
        let js = serde_json::json!({"n":2,"mode":"numeric","field":"Q","q":{"1,2":"0"}});
        assert!(CommutationMatrix::from_json(&js).is_err());
    }

    #[test]
    fn primes() {
        assert!(is_prime(101));
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1_000_001));
        assert!(is_prime(2_305_843_009_213_693_951));
        assert!(Field::prime(100).is_err());
    }

    #[test]
    fn scalar_json() {
        let s = -q(-2);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"sign":-1,"q":{"1,2":-2}}"#);
        let back: Scalar = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(s.render(2), "-q^-2");
        assert_eq!(Scalar::param(3, 1).render(3), "q_1_3^-1");
    }

    #[test]
    fn commutation_json() {
        let js = serde_json::json!({"n":2,"mode":"numeric","field":"Q","q":{"1,2":"3/2"}});
        let cm = CommutationMatrix::from_json(&js).unwrap();
        let CommutationMatrix::Numeric(phi) = &cm else { panic!() };
        assert_eq!(
            phi.specialize(&q(-1)).unwrap(),
            FieldValue::Rational(BigRational::new(2.into(), 3.into()))
        );
        assert_eq!(CommutationMatrix::from_json(&cm.to_json()).unwrap(), cm);
        let sym = CommutationMatrix::from_json(&serde_json::json!({"n": 3, "mode": "symbolic"})).unwrap();
        assert_eq!(sym, CommutationMatrix::Symbolic { n: 3 });
        let missing = serde_json::json!({"n":3,"mode":"numeric","field":"Q","q":{"1,2":"2"}});
        assert!(matches!(CommutationMatrix::from_json(&missing), Err(Error::Config(_))));
        let fp = serde_json::json!({"n":2,"mode":"numeric","field":"Fp","prime":7,"q":{"1,2":"1/2"}});
        let CommutationMatrix::Numeric(phi) = CommutationMatrix::from_json(&fp).unwrap() else { panic!() };
        assert_eq!(phi.values()[&(1, 2)], FieldValue::Modular(4));
    }

    /// Exhaustive comparison with the reordering oracle, `n ≤ 3`, total degree ≤ 6.
    /// The acceptance suite covers the full `n ≤ 4`, degree ≤ 8 range.
    #[test]
    fn c_matches_oracle_small() {
        for n in 1..=3 {
            let mut monos = Vec::new();
            for d in 0..=6 {
                monos.extend(crate::monoid::monomials_of_degree(n, d));
            }
            for a in &monos {
                for b in &monos {
                    if a.degree() + b.degree() > 6 {
                        continue;
                    }
                    assert_eq!(bichar_c(a, b).unwrap(), reorder_oracle(a, b).unwrap(), "{a} {b}");
                }
            }
        }
    }

    fn lvec(n: usize) -> impl Strategy<Value = Monomial> {
        prop::collection::vec(-4i64..5, n).prop_map(Monomial::new)
    }

    proptest! {
        #[test]
        fn bicharacter_laws(a in lvec(4), a2 in lvec(4), b in lvec(4), b2 in lvec(4)) {
            let aa = a.star(&a2).unwrap();
            let bb = b.star(&b2).unwrap();
            for f in [bichar_c, chi] {
                prop_assert_eq!(f(&aa, &b).unwrap(), f(&a, &b).unwrap() * f(&a2, &b).unwrap());
                prop_assert_eq!(f(&a, &bb).unwrap(), f(&a, &b).unwrap() * f(&a, &b2).unwrap());
            }
        }

        #[test]
        fn chi_alternating(a in lvec(4), b in lvec(4)) {
            prop_assert!((chi(&a, &b).unwrap() * chi(&b, &a).unwrap()).is_one());
            prop_assert!(chi(&a, &a).unwrap().is_one());
            let ratio = bichar_c(&a, &b).unwrap() * bichar_c(&b, &a).unwrap().inverse();
            prop_assert_eq!(ratio, chi(&a, &b).unwrap());
        }

        #[test]
        fn all_ones_gives_sign(sign in prop::bool::ANY, e12 in -5i64..5, e23 in -5i64..5) {
            let mut qm = QMonomial::param(1, 2, e12);
            qm = &qm * &QMonomial::param(2, 3, e23);
            let s = Scalar::from_parts(if sign { 1 } else { -1 }, qm);
            let f = Field::prime(1_000_003).unwrap();
            let phi = FieldSpecialization::all_ones(f.clone(), 3);
            prop_assert!(phi.specialize(&s).unwrap().is_plus_minus_one(&f));
        }
    }
}
