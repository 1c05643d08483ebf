//! Monomial ideals: canonical generator system `G(I)`, membership, the
//! stability test and the canonical decomposition `w = g(w) * y`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use serde_json::json;

use crate::commutation::check_schema;
use crate::error::{Error, Result};
use crate::monoid::{monomials_of_degree, Monomial};

/// A monomial ideal given by its canonical generator system, kept in
/// graded lexicographic order. The unit ideal is not representable; the
/// zero ideal has no generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Monomial>,
}

/// Failure of the exchange property: `x_index * generator / x_max(generator)`
/// is not in the ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityWitness {
    pub generator: Monomial,
    /// 1-based.
    pub index: usize,
    pub missing: Monomial,
}

impl StabilityWitness {
    pub fn into_error(self) -> Error {
        Error::NotStable {
            generator: self.generator,
            index: self.index,
            missing: self.missing,
        }
    }
}

impl fmt::Display for StabilityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}): {} ∉ I",
            self.generator.render(),
            self.index,
            self.missing.render()
        )
    }
}

impl MonomialIdeal {
    pub fn zero(n: usize) -> Self {
        MonomialIdeal {
            n,
            generators: Vec::new(),
        }
    }

    /// Drop every monomial divisible by another one in the set.
    pub fn minimalize(n: usize, raw: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        Self::minimalize_reporting(n, raw).map(|(ideal, _)| ideal)
    }

    /// Like [`MonomialIdeal::minimalize`], also returning the redundant
    /// input monomials that were removed.
    pub fn minimalize_reporting(
        n: usize,
        raw: impl IntoIterator<Item = Monomial>,
    ) -> Result<(Self, Vec<Monomial>)> {
        let mut set = BTreeSet::new();
        let mut removed = Vec::new();
        for m in raw {
            if m.n() != n {
                return Err(Error::Dimension {
                    left: n,
                    right: m.n(),
                });
            }
            if !m.is_effective() {
                return Err(Error::Laurent(m));
            }
            if m.is_unit() {
                return Err(Error::UnitIdeal);
            }
            if !set.insert(m.clone()) {
                removed.push(m);
            }
        }
        let all: Vec<Monomial> = set.into_iter().collect();
        let mut generators = Vec::new();
        for m in &all {
            let redundant = all
                .iter()
                .any(|other| other != m && other.divides(m).expect("effective, same n"));
            if redundant {
                removed.push(m.clone());
            } else {
                generators.push(m.clone());
            }
        }
        generators.sort_by(|a, b| a.graded_lex_cmp(b));
        Ok((MonomialIdeal { n, generators }, removed))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Membership of an effective monomial.
    pub fn contains(&self, w: &Monomial) -> bool {
        w.is_effective()
            && w.n() == self.n
            && self
                .generators
                .iter()
                .any(|u| u.exponents().iter().zip(w.exponents()).all(|(b, a)| b <= a))
    }

    /// The exchange property checked on `G(I)`; returns the first failure.
    pub fn stability_witness(&self) -> Option<StabilityWitness> {
        for u in &self.generators {
            let top = u.max_index().expect("generators are nonunit");
            let base = u.quotient(&Monomial::var(self.n, top)).expect("same n");
            for i in 1..top {
                let moved = base.star(&Monomial::var(self.n, i)).expect("same n");
                if !self.contains(&moved) {
                    return Some(StabilityWitness {
                        generator: u.clone(),
                        index: i,
                        missing: moved,
                    });
                }
            }
        }
        None
    }

    pub fn is_stable(&self) -> bool {
        self.stability_witness().is_none()
    }

    /// Definition-level stability check over every `w ∈ M(I)` of degree at
    /// most `max_degree`.
    pub fn stability_oracle(&self, max_degree: i64) -> bool {
        self.monomials_up_to_degree(max_degree).iter().all(|w| {
            let top = w.max_index().expect("ideal members are nonunit");
            let base = w.quotient(&Monomial::var(self.n, top)).unwrap();
            (1..top).all(|i| self.contains(&base.star(&Monomial::var(self.n, i)).unwrap()))
        })
    }

    /// All members of degree at most `max_degree`, in graded lexicographic
    /// order.
    pub fn monomials_up_to_degree(&self, max_degree: i64) -> Vec<Monomial> {
        (0..=max_degree)
            .flat_map(|d| monomials_of_degree(self.n, d))
            .filter(|w| self.contains(w))
            .collect()
    }

    pub fn max_generator_degree(&self) -> Option<i64> {
        self.generators.iter().map(Monomial::degree).max()
    }

    /// Smallest stable ideal containing `raw`: adjoin `x_i * w / x_max(w)`
    /// for every generator `w` and `i < max(w)` until nothing changes.
    pub fn stable_closure(n: usize, raw: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut ideal = Self::minimalize(n, raw)?;
        loop {
            let mut added = Vec::new();
            for u in &ideal.generators {
                let top = u.max_index()?;
                let base = u.quotient(&Monomial::var(n, top))?;
                for i in 1..top {
                    let moved = base.star(&Monomial::var(n, i))?;
                    if !ideal.contains(&moved) && !added.contains(&moved) {
                        added.push(moved);
                    }
                }
            }
            if added.is_empty() {
                return Ok(ideal);
            }
            ideal = Self::minimalize(n, ideal.generators.into_iter().chain(added))?;
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({"schema": 1, "n": self.n, "generators": self.generators})
    }

    /// Parse `{"n": 2, "generators": [[2,0],[1,1],[0,2]]}`. Generators are
    /// minimalized; the removed ones are returned for reporting.
    pub fn from_json(value: &serde_json::Value) -> Result<(Self, Vec<Monomial>)> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("ideal must be a JSON object".into()))?;
        check_schema(obj)?;
        let n = obj
            .get("n")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Parse("ideal needs an integer \"n\"".into()))?
            as usize;
        let gens: Vec<Monomial> = serde_json::from_value(
            obj.get("generators")
                .cloned()
                .ok_or_else(|| Error::Parse("ideal needs \"generators\"".into()))?,
        )
        .map_err(|e| Error::Parse(format!("generators: {e}")))?;
        Self::minimalize_reporting(n, gens)
    }

    pub fn render(&self) -> String {
        let gens: Vec<String> = self.generators.iter().map(Monomial::render).collect();
        format!("({})", gens.join(", "))
    }
}

/// The canonical decomposition `w = u * y` with `u = g(w) ∈ G(I)` and
/// `max(u) ≤ min(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub u: Monomial,
    pub y: Monomial,
}

/// A monomial ideal known to be stable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StableIdeal(MonomialIdeal);

impl StableIdeal {
    pub fn new(ideal: MonomialIdeal) -> Result<Self> {
        match ideal.stability_witness() {
            Some(w) => Err(w.into_error()),
            None => Ok(StableIdeal(ideal)),
        }
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.0
    }

    /// Canonical decomposition of a member `w`, found by scanning `G(I)`.
    /// A second candidate is reported as an invariant violation.
    pub fn decompose(&self, w: &Monomial) -> Result<Decomposition> {
        let mut found: Option<Decomposition> = None;
        let mut count = 0;
        for u in &self.0.generators {
            if !self.0.contains_divisor(u, w) {
                continue;
            }
            let y = w.quotient(u)?;
            let ok = y.is_unit() || u.max_index()? <= y.min_index()?;
            if ok {
                count += 1;
                if found.is_none() {
                    found = Some(Decomposition { u: u.clone(), y });
                }
            }
        }
        match (found, count) {
            (Some(d), 1) => Ok(d),
            (None, _) => Err(Error::NotInIdeal(w.clone())),
            (Some(_), count) => Err(Error::AmbiguousDecomposition {
                monomial: w.clone(),
                count,
            }),
        }
    }

    /// The decomposition function `g`.
    pub fn g(&self, w: &Monomial) -> Result<Monomial> {
        self.decompose(w).map(|d| d.u)
    }
}

impl MonomialIdeal {
    fn contains_divisor(&self, u: &Monomial, w: &Monomial) -> bool {
        w.is_effective() && u.exponents().iter().zip(w.exponents()).all(|(b, a)| b <= a)
    }
}

impl Deref for StableIdeal {
    type Target = MonomialIdeal;

    fn deref(&self) -> &MonomialIdeal {
        &self.0
    }
}
