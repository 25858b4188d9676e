//! Vertex classification of Young-module summands of the symmetric powers.
//!
//! The vertex of Y^mu is a Sylow p-subgroup of the Young subgroup S_rho,
//! where rho is read off the p-adic expansion of mu. In the window
//! n - p < mu_1 < n with p | n there are only two possibilities, a Sylow
//! p-subgroup of S_{n-p} or of S_{n-2p}, decided by a single inequality;
//! both routes are computed and cross-checked against each other.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::combinatorics::{
    binomial, p_adic_expansion_int, p_adic_expansion_partition, partitions_of, y_coefficient, Partition,
};
use crate::error::Error;
use crate::gf::PrimeField;
use crate::repring::{sym_d_formula, sym_s_formula, to_young_basis, BasisTag};
use crate::Result;

/// The vertex shape of Y^mu: a partition rho with |mu(j)| parts of size p^j
/// for every layer mu(j) of the p-adic expansion of mu. Parts of size 1 are
/// retained (the Sylow subgroup they contribute is trivial).
pub fn vertex_partition(mu: &Partition, p: u64) -> Partition {
    let layers = p_adic_expansion_partition(mu, p);
    let mut parts: Vec<u32> = Vec::new();
    let mut power = 1u64;
    for layer in &layers {
        // |mu(j)| parts of size p^j, where |mu(j)| is the size of the layer.
        for _ in 0..layer.size() {
            parts.push(power as u32);
        }
        power *= p;
    }
    Partition::from_unsorted(parts).expect("positive part sizes")
}

/// Which of the two admissible Sylow classes a window partition lands in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VertexCase {
    #[serde(rename = "n-p")]
    NMinusP,
    #[serde(rename = "n-2p")]
    NMinus2P,
}

impl fmt::Display for VertexCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexCase::NMinusP => write!(f, "n-p"),
            VertexCase::NMinus2P => write!(f, "n-2p"),
        }
    }
}

/// For p | n and n - p < mu_1 < n: the vertex of Y^mu is a Sylow p-subgroup
/// of S_{n-p} when mu_2 + n - p <= mu_1, and of S_{n-2p} otherwise. The
/// result is cross-validated against the vertex shape from the p-adic
/// expansion; returns (case, m) with m in {n-p, n-2p}.
pub fn vertex_case(mu: &Partition, n: u32, p: u64) -> Result<(VertexCase, u32)> {
    PrimeField::new(p)?;
    if n as u64 % p != 0 {
        return Err(Error::Precondition(format!("vertex case needs p | n, got n = {n}, p = {p}")));
    }
    if mu.size() != n as u64 {
        return Err(Error::SizeMismatch(mu.size(), n as u64));
    }
    let mu1 = mu.first() as u64;
    let window_low = n as u64 - p;
    if mu1 <= window_low || mu1 >= n as u64 {
        return Err(Error::Precondition(format!(
            "vertex case needs n - p < mu_1 < n, got mu_1 = {mu1}"
        )));
    }
    let (case, m) = if mu.part(1) as u64 + n as u64 - p <= mu1 {
        (VertexCase::NMinusP, n as u64 - p)
    } else {
        let m = (n as u64).checked_sub(2 * p).ok_or_else(|| {
            Error::VerificationFailed("second vertex case selected with n < 2p".into())
        })?;
        (VertexCase::NMinus2P, m)
    };

    // Cross-check: the vertex shape must consist of the p-adic digits of m
    // in its parts of size >= p, plus exactly n - m parts of size 1.
    let rho = vertex_partition(mu, p);
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &part in rho.parts() {
        *counts.entry(part as u64).or_insert(0) += 1;
    }
    let digits = p_adic_expansion_int(m, p);
    let mut expected: BTreeMap<u64, u64> = BTreeMap::new();
    let mut power = 1u64;
    for &digit in &digits {
        if digit > 0 && power > 1 {
            expected.insert(power, digit);
        }
        power *= p;
    }
    let ones = n as u64 - m;
    if ones > 0 {
        expected.insert(1, ones);
    }
    if counts != expected {
        return Err(Error::VerificationFailed(format!(
            "vertex shape {rho} of {mu} disagrees with Sylow class S_{m}"
        )));
    }
    Ok((case, m as u32))
}

/// Coefficient families whose support window is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoeffMode {
    /// y_r^lambda itself.
    Y,
    /// y_r - y_{r-1} (the Sym^r S coefficients).
    SDiff,
    /// y_r + y_{r-2} - 2 y_{r-1} (the Sym^r D coefficients).
    DDiff,
}

/// Exhaustively verifies that every partition of n with a non-zero
/// coefficient of the given kind satisfies n - r <= lambda_1 < n.
pub fn coefficient_support_check(n: u32, r: u32, mode: CoeffMode) -> Result<bool> {
    if r >= n {
        return Err(Error::Precondition(format!("support check needs r < n, got r = {r}, n = {n}")));
    }
    let min_r = match mode {
        CoeffMode::Y => 1,
        CoeffMode::SDiff => 2,
        CoeffMode::DDiff => 3,
    };
    if r < min_r {
        return Err(Error::Precondition(format!(
            "support check for {mode:?} needs r >= {min_r}, got r = {r}"
        )));
    }
    for lambda in partitions_of(n) {
        let coeff = match mode {
            CoeffMode::Y => y_coefficient(&lambda, r) as i64,
            CoeffMode::SDiff => y_coefficient(&lambda, r) as i64 - y_coefficient(&lambda, r - 1) as i64,
            CoeffMode::DDiff => {
                y_coefficient(&lambda, r) as i64 + y_coefficient(&lambda, r - 2) as i64
                    - 2 * y_coefficient(&lambda, r - 1) as i64
            }
        };
        if coeff != 0 {
            let l1 = lambda.first() as u64;
            if l1 < (n - r) as u64 || l1 >= n as u64 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Which symmetric-power family a vertex report covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SDKind {
    S,
    D,
}

impl fmt::Display for SDKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SDKind::S => write!(f, "S"),
            SDKind::D => write!(f, "D"),
        }
    }
}

/// One classified label of the report. `certified` marks Young classes with
/// positive coefficient in the converted formula (true summands); entries
/// coming from an unconverted M class, or appearing with a negative
/// coefficient, are candidates only.
#[derive(Debug, Clone, Serialize)]
pub struct VertexEntry {
    pub mu: Partition,
    pub vertex_m: u32,
    pub case: VertexCase,
    pub certified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexReport {
    pub n: u32,
    pub p: u64,
    pub kind: SDKind,
    pub r: u32,
    pub entries: Vec<VertexEntry>,
}

/// Classifies every Young class of the (partially) converted formula for
/// Sym^r S^(n-1,1) or Sym^r D^(n-1,1), plus every dominance candidate of
/// each unconverted M class, into the two Sylow classes.
pub fn sd_vertex_report(n: u32, p: u64, kind: SDKind, r: u32) -> Result<VertexReport> {
    PrimeField::new(p)?;
    if n < 3 || n as u64 % p != 0 {
        return Err(Error::Precondition(format!(
            "vertex report needs p | n and n >= 3, got n = {n}, p = {p}"
        )));
    }
    let formula = match kind {
        SDKind::S => sym_s_formula(n, p, r)?,
        SDKind::D => sym_d_formula(n, p, r)?,
    };
    let (young, remainder) = to_young_basis(&formula, p)?;

    // certified = Some(true) for positive Young coefficients; merge so a
    // certified summand never degrades to a candidate.
    let mut labels: BTreeMap<Partition, bool> = BTreeMap::new();
    for (tag, mu, coeff) in young.iter() {
        debug_assert_eq!(tag, BasisTag::Y);
        let flag = labels.entry(mu.clone()).or_insert(false);
        *flag = *flag || coeff > 0;
    }
    for (_, lambda, _) in remainder.iter() {
        for mu in partitions_of(n) {
            let mu1 = mu.first() as u64;
            if mu1 <= n as u64 - p || mu1 >= n as u64 {
                continue;
            }
            if mu.dominates(lambda)? {
                labels.entry(mu).or_insert(false);
            }
        }
    }

    let mut entries: Vec<VertexEntry> = Vec::with_capacity(labels.len());
    for (mu, certified) in labels {
        let (case, vertex_m) = vertex_case(&mu, n, p)?;
        entries.push(VertexEntry {
            mu,
            vertex_m,
            case,
            certified,
        });
    }
    entries.sort_by(|a, b| b.mu.cmp(&a.mu));
    Ok(VertexReport { n, p, kind, r, entries })
}

/// Dimension arithmetic behind the small-degree negative control: for
/// p | n, the dimensions of Sym^r S with r in {0, 1} and Sym^r D with r in
/// {0, 1, 2} are all prime to p, so those powers cannot be relatively
/// projective to a proper subgroup of a Sylow p-subgroup.
pub fn small_power_dims_prime_to_p(n: u32, p: u64) -> Result<bool> {
    PrimeField::new(p)?;
    if n as u64 % p != 0 {
        return Err(Error::Precondition(format!("needs p | n, got n = {n}, p = {p}")));
    }
    let dims: [u128; 5] = [
        1,                              // Sym^0 S
        (n - 1) as u128,                // Sym^1 S
        1,                              // Sym^0 D
        (n - 2) as u128,                // Sym^1 D
        binomial((n - 1) as u64, 2),    // Sym^2 D
    ];
    Ok(dims.iter().all(|&d| d % p as u128 != 0))
}
