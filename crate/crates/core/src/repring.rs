//! Formal integer combinations of labeled module classes [M^lambda] and
//! [Y^mu], and the symmetric-power and Young-expansion formulas expressed
//! in them.
//!
//! The two bases coexist inside one element with explicit tags; nothing is
//! converted implicitly. An equation in these classes encodes a direct-sum
//! decomposition, so the dimension homomorphism (defined on the M basis)
//! gives an integer sanity check on every produced identity.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::combinatorics::{m_module_dimension, p_contained, partitions_of, y_coefficient, Partition};
use crate::error::Error;
use crate::gf::PrimeField;
use crate::Result;

/// Which family a class label refers to: Young permutation modules M or
/// indecomposable Young modules Y.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BasisTag {
    M,
    Y,
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisTag::M => write!(f, "M"),
            BasisTag::Y => write!(f, "Y"),
        }
    }
}

/// An integer-linear combination of labeled classes. Zero coefficients are
/// never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RepRingElement {
    terms: BTreeMap<(BasisTag, Partition), i64>,
}

impl RepRingElement {
    pub fn zero() -> Self {
        RepRingElement::default()
    }

    pub fn term(tag: BasisTag, lambda: Partition, coeff: i64) -> Self {
        let mut e = RepRingElement::zero();
        e.add_term(tag, lambda, coeff);
        e
    }

    pub fn add_term(&mut self, tag: BasisTag, lambda: Partition, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let key = (tag, lambda);
        let slot = self.terms.entry(key.clone()).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &RepRingElement) -> RepRingElement {
        let mut out = self.clone();
        for ((tag, lambda), &c) in &other.terms {
            out.add_term(*tag, lambda.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &RepRingElement) -> RepRingElement {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> RepRingElement {
        if c == 0 {
            return RepRingElement::zero();
        }
        RepRingElement {
            terms: self
                .terms
                .iter()
                .map(|(k, &v)| (k.clone(), v * c))
                .collect(),
        }
    }

    pub fn coeff(&self, tag: BasisTag, lambda: &Partition) -> i64 {
        self.terms
            .get(&(tag, lambda.clone()))
            .copied()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (BasisTag, &Partition, i64)> {
        self.terms.iter().map(|((t, l), &c)| (*t, l, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff every stored coefficient is non-negative.
    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    /// Value under the dimension homomorphism, defined when no Y classes are
    /// present (dim Y^mu is not computed in general).
    pub fn dimension(&self) -> Option<i128> {
        let mut total: i128 = 0;
        for ((tag, lambda), &c) in &self.terms {
            if *tag != BasisTag::M {
                return None;
            }
            total += c as i128 * m_module_dimension(lambda) as i128;
        }
        Some(total)
    }

    /// Display/iteration order: positive terms before negative ones, M
    /// before Y, then by partition, largest first.
    fn display_order(&self) -> Vec<(BasisTag, &Partition, i64)> {
        let mut terms: Vec<_> = self.iter().collect();
        terms.sort_by(|a, b| {
            (a.2 < 0)
                .cmp(&(b.2 < 0))
                .then(a.0.cmp(&b.0))
                .then(b.1.cmp(a.1))
        });
        terms
    }
}

impl fmt::Display for RepRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (tag, lambda, coeff)) in self.display_order().into_iter().enumerate() {
            if i == 0 {
                if coeff < 0 {
                    write!(f, "-")?;
                }
            } else if coeff < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{}[{} {}]", coeff.abs(), tag, lambda)?;
        }
        Ok(())
    }
}

impl Serialize for RepRingElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m_part: BTreeMap<String, i64> = BTreeMap::new();
        let mut y_part: BTreeMap<String, i64> = BTreeMap::new();
        for ((tag, lambda), &c) in &self.terms {
            match tag {
                BasisTag::M => m_part.insert(lambda.to_string(), c),
                BasisTag::Y => y_part.insert(lambda.to_string(), c),
            };
        }
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("M", &m_part)?;
        map.serialize_entry("Y", &y_part)?;
        map.end()
    }
}

fn two_row(n: u32, second: u32) -> Partition {
    if second == 0 {
        Partition::new(vec![n]).expect("one-row partition")
    } else {
        Partition::new(vec![n - second, second]).expect("two-row partition")
    }
}

/// [Sym^r M^(n-1,1)] = sum_lambda y_r^lambda [M^lambda] over partitions of n.
pub fn sym_m_formula(n: u32, r: u32) -> RepRingElement {
    let mut out = RepRingElement::zero();
    for lambda in partitions_of(n) {
        let y = y_coefficient(&lambda, r) as i64;
        out.add_term(BasisTag::M, lambda, y);
    }
    out
}

/// [Sym^r S^(n-1,1)] = sum_lambda (y_r^lambda - y_{r-1}^lambda) [M^lambda],
/// valid for 2 <= r <= p-1.
pub fn sym_s_formula(n: u32, p: u64, r: u32) -> Result<RepRingElement> {
    PrimeField::new(p)?;
    if n < 2 {
        return Err(Error::Precondition("needs n >= 2".into()));
    }
    if r < 2 || r as u64 > p - 1 {
        return Err(Error::Precondition(format!(
            "formula for Sym^r S needs 2 <= r <= p-1, got r = {r}, p = {p}"
        )));
    }
    let mut out = RepRingElement::zero();
    for lambda in partitions_of(n) {
        let c = y_coefficient(&lambda, r) as i64 - y_coefficient(&lambda, r - 1) as i64;
        out.add_term(BasisTag::M, lambda, c);
    }
    Ok(out)
}

/// [Sym^r D^(n-1,1)] = sum_lambda (y_r + y_{r-2} - 2 y_{r-1}) [M^lambda],
/// valid for p | n and 3 <= r <= p-1.
pub fn sym_d_formula(n: u32, p: u64, r: u32) -> Result<RepRingElement> {
    PrimeField::new(p)?;
    if n as u64 % p != 0 {
        return Err(Error::Precondition(format!(
            "formula for Sym^r D needs p | n, got n = {n}, p = {p}"
        )));
    }
    if r < 3 || r as u64 > p - 1 {
        return Err(Error::Precondition(format!(
            "formula for Sym^r D needs 3 <= r <= p-1, got r = {r}, p = {p}"
        )));
    }
    let mut out = RepRingElement::zero();
    for lambda in partitions_of(n) {
        let c = y_coefficient(&lambda, r) as i64 + y_coefficient(&lambda, r - 2) as i64
            - 2 * y_coefficient(&lambda, r - 1) as i64;
        out.add_term(BasisTag::M, lambda, c);
    }
    Ok(out)
}

/// Young expansion of a one- or two-row M class:
/// [M^(n-s,s)] = sum over r <= s with s-r p-contained in n-2r of [Y^(n-r,r)].
pub fn young_expansion_two_row(lambda: &Partition, p: u64) -> Result<RepRingElement> {
    PrimeField::new(p)?;
    if lambda.len() > 2 || lambda.is_empty() {
        return Err(Error::Precondition(format!(
            "two-row expansion needs at most two rows, got {lambda}"
        )));
    }
    let n = lambda.size() as u32;
    let s = lambda.part(1);
    let mut out = RepRingElement::zero();
    for r in 0..=s {
        if p_contained((s - r) as u64, (n - 2 * r) as u64, p) {
            out.add_term(BasisTag::Y, two_row(n, r), 1);
        }
    }
    Ok(out)
}

/// Young expansion of M^(n-2,1,1) for p | n:
/// [Y^(n-1,1)] + [Y^(n-2,2)] + [Y^(n-2,1^2)].
pub fn young_expansion_hook2(n: u32, p: u64) -> Result<RepRingElement> {
    PrimeField::new(p)?;
    if n as u64 % p != 0 {
        return Err(Error::Precondition(format!(
            "hook expansion needs p | n, got n = {n}, p = {p}"
        )));
    }
    if n < 4 {
        return Err(Error::Precondition("hook expansion needs n >= 4".into()));
    }
    let mut out = RepRingElement::zero();
    out.add_term(BasisTag::Y, two_row(n, 1), 1);
    out.add_term(BasisTag::Y, two_row(n, 2), 1);
    out.add_term(BasisTag::Y, Partition::new(vec![n - 2, 1, 1]).expect("hook"), 1);
    Ok(out)
}

/// Rewrites every convertible [M^lambda] term in the Young basis: lambda
/// with at most two rows always, and lambda = (n-2,1,1) when p divides
/// n = |lambda|. Returns the converted part and the untouched M-basis
/// remainder. Y terms of the input pass through to the converted part.
pub fn to_young_basis(e: &RepRingElement, p: u64) -> Result<(RepRingElement, RepRingElement)> {
    PrimeField::new(p)?;
    let mut young = RepRingElement::zero();
    let mut remainder = RepRingElement::zero();
    for (tag, lambda, coeff) in e.iter() {
        match tag {
            BasisTag::Y => young.add_term(BasisTag::Y, lambda.clone(), coeff),
            BasisTag::M => {
                let n = lambda.size() as u32;
                if lambda.len() <= 2 {
                    young = young.add(&young_expansion_two_row(lambda, p)?.scale(coeff));
                } else if n >= 4 && n as u64 % p == 0 && lambda.parts() == [n - 2, 1, 1] {
                    young = young.add(&young_expansion_hook2(n, p)?.scale(coeff));
                } else {
                    remainder.add_term(BasisTag::M, lambda.clone(), coeff);
                }
            }
        }
    }
    Ok((young, remainder))
}

/// A certified-positive p-Kostka number [M^lambda : Y^mu] >= lower_bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KostkaCertificate {
    pub lambda: Partition,
    pub mu: Partition,
    pub lower_bound: i64,
}

/// The mixed-basis expression of [Sym^4 D^(n-1,1)] with only [M^(n-3,2,1)]
/// left unconverted, and the positivity certificates it implies.
#[derive(Debug, Clone, Serialize)]
pub struct KostkaReport {
    pub n: u32,
    pub p: u64,
    pub mixed: RepRingElement,
    pub certificates: Vec<KostkaCertificate>,
}

/// Reproduces the fourth-power derivation: converts every term of
/// [Sym^4 D^(n-1,1)] except [M^(n-3,2,1)] to the Young basis. Every Y class
/// left with a negative coefficient must be cancelled by the expansion of
/// M^(n-3,2,1), certifying that its p-Kostka multiplicity is positive.
pub fn kostka_positivity_report(n: u32, p: u64) -> Result<KostkaReport> {
    PrimeField::new(p)?;
    if p <= 3 {
        return Err(Error::Precondition(format!("Kostka derivation needs p > 3, got p = {p}")));
    }
    if n as u64 % p != 0 {
        return Err(Error::Precondition(format!("Kostka derivation needs p | n, got n = {n}")));
    }
    if n < 8 {
        return Err(Error::Precondition(
            "Kostka derivation needs n >= 8 so all fourth-power shapes exist".into(),
        ));
    }
    let keystone = Partition::new(vec![n - 3, 2, 1]).expect("three-row shape");
    let d4 = sym_d_formula(n, p, 4)?;
    let keystone_coeff = d4.coeff(BasisTag::M, &keystone);
    if keystone_coeff != 1 {
        return Err(Error::VerificationFailed(format!(
            "[M^(n-3,2,1)] should appear with coefficient 1, got {keystone_coeff}"
        )));
    }
    let rest = d4.sub(&RepRingElement::term(BasisTag::M, keystone.clone(), keystone_coeff));
    let (young, remainder) = to_young_basis(&rest, p)?;
    if !remainder.is_zero() {
        return Err(Error::VerificationFailed(format!(
            "unexpected unconvertible terms: {remainder}"
        )));
    }
    let mixed = young.add(&RepRingElement::term(BasisTag::M, keystone.clone(), 1));

    let mut certificates = Vec::new();
    for (tag, mu, coeff) in mixed.display_order() {
        if tag == BasisTag::Y && coeff < 0 {
            certificates.push(KostkaCertificate {
                lambda: keystone.clone(),
                mu: mu.clone(),
                lower_bound: -coeff,
            });
        }
    }
    Ok(KostkaReport {
        n,
        p,
        mixed,
        certificates,
    })
}
