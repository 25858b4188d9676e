//! Partitions, compositions, dominance, p-adic structure and the
//! combinatorial coefficients that drive the symmetric-power formulas.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::Result;

/// A partition: weakly decreasing sequence of positive integers.
/// The empty partition (size 0) is allowed. Parts beyond the length are
/// read as 0.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&x| x == 0) {
            return Err(Error::InvalidPartition("zero part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Sorts the given positive entries into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&x| x as u64).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The i-th part, 0-indexed, with the convention that parts beyond the
    /// length are 0.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn first(&self) -> u32 {
        self.part(0)
    }

    /// True iff the partial sums of `self` dominate those of `other`.
    /// Both partitions must have the same size.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        let len = self.len().max(other.len());
        let mut a = 0u64;
        let mut b = 0u64;
        for i in 0..len {
            a += self.part(i) as u64;
            b += other.part(i) as u64;
            if a < b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff every consecutive difference (including the last part minus
    /// zero) is at most p-1.
    pub fn is_p_restricted(&self, p: u64) -> bool {
        for i in 0..self.len() {
            if (self.part(i) - self.part(i + 1)) as u64 > p - 1 {
                return false;
            }
        }
        true
    }

    /// True iff no part value occurs p or more times.
    pub fn is_p_regular(&self, p: u64) -> bool {
        let mut run = 1u64;
        for w in self.parts.windows(2) {
            if w[0] == w[1] {
                run += 1;
                if run >= p {
                    return false;
                }
            } else {
                run = 1;
            }
        }
        true
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for part in &self.parts {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{part}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {tok:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// A composition: a fixed-length list of non-negative integers, used to
/// index monomials.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    entries: Vec<u32>,
}

impl Composition {
    pub fn new(entries: Vec<u32>) -> Self {
        Composition { entries }
    }

    pub fn zero(len: usize) -> Self {
        Composition { entries: vec![0; len] }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.entries[i]
    }

    pub fn degree(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn add(&self, other: &Composition) -> Composition {
        debug_assert_eq!(self.len(), other.len());
        Composition {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Component-wise difference, `None` when some entry would go negative.
    /// `beta.checked_sub(alpha).is_some()` is the componentwise test
    /// alpha <= beta.
    pub fn checked_sub(&self, other: &Composition) -> Option<Composition> {
        debug_assert_eq!(self.len(), other.len());
        let mut entries = Vec::with_capacity(self.len());
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if a < b {
                return None;
            }
            entries.push(a - b);
        }
        Some(Composition { entries })
    }
}

/// All length-t compositions of d in ascending lexicographic order.
pub fn compositions(t: usize, d: u32) -> Vec<Composition> {
    assert!(t >= 1, "compositions need t >= 1");
    let mut out = Vec::new();
    let mut cur = vec![0u32; t];
    fill_compositions(&mut out, &mut cur, 0, d);
    out
}

fn fill_compositions(out: &mut Vec<Composition>, cur: &mut Vec<u32>, slot: usize, rest: u32) {
    if slot == cur.len() - 1 {
        cur[slot] = rest;
        out.push(Composition::new(cur.clone()));
        return;
    }
    for v in 0..=rest {
        cur[slot] = v;
        fill_compositions(out, cur, slot + 1, rest - v);
    }
    cur[slot] = 0;
}

/// Base-p digits, least significant first. Zero has no digits.
pub fn p_adic_expansion_int(mut n: u64, p: u64) -> Vec<u64> {
    let mut digits = Vec::new();
    while n > 0 {
        digits.push(n % p);
        n /= p;
    }
    digits
}

/// True iff every base-p digit of m is at most the corresponding digit of n.
pub fn p_contained(mut m: u64, mut n: u64, p: u64) -> bool {
    while m > 0 {
        if m % p > n % p {
            return false;
        }
        m /= p;
        n /= p;
    }
    true
}

/// The unique sequence of p-restricted partitions (lambda(0), lambda(1), ...)
/// with lambda_i = sum_j lambda(j)_i p^j. Trailing empty layers are trimmed;
/// interior empty layers are kept.
pub fn p_adic_expansion_partition(lambda: &Partition, p: u64) -> Vec<Partition> {
    let mut layers = Vec::new();
    let mut current = lambda.clone();
    while !current.is_empty() {
        // layer_i = sum_{j >= i} ((lambda_j - lambda_{j+1}) mod p), the unique
        // p-restricted partition whose removal leaves every part divisible by p.
        let len = current.len();
        let mut layer = vec![0u32; len];
        let mut acc = 0u32;
        for i in (0..len).rev() {
            let diff = current.part(i) - current.part(i + 1);
            acc += (diff as u64 % p) as u32;
            layer[i] = acc;
        }
        let layer_parts: Vec<u32> = layer.into_iter().filter(|&x| x > 0).collect();
        let layer_partition = Partition::new(layer_parts).expect("layer is weakly decreasing");
        let mut next_parts = Vec::new();
        for i in 0..len {
            let rest = current.part(i) - layer_partition.part(i);
            debug_assert_eq!(rest as u64 % p, 0);
            let q = (rest as u64 / p) as u32;
            if q > 0 {
                next_parts.push(q);
            }
        }
        layers.push(layer_partition);
        current = Partition::new(next_parts).expect("quotient is weakly decreasing");
    }
    while layers.last().is_some_and(|l| l.is_empty()) {
        layers.pop();
    }
    layers
}

/// Number of sequences d = (d_0, d_1, ...) of non-negative integers whose
/// non-zero entries are exactly the parts of lambda (as a multiset) and with
/// weighted sum `sum_i i*d_i = r`. Computed by exhaustive placement of the
/// part multiset into the positions 0..=r.
pub fn y_coefficient(lambda: &Partition, r: u32) -> u64 {
    // Group equal parts so placements of identical values are not
    // distinguished.
    let mut groups: Vec<(u32, usize)> = Vec::new();
    for &part in lambda.parts() {
        match groups.last_mut() {
            Some((v, mult)) if *v == part => *mult += 1,
            _ => groups.push((part, 1)),
        }
    }
    let slots = (r + 1) as usize;
    if lambda.len() > slots {
        return 0;
    }
    let mut used = vec![false; slots];
    place_group(&groups, 0, &mut used, r as u64)
}

fn place_group(groups: &[(u32, usize)], g: usize, used: &mut Vec<bool>, remaining: u64) -> u64 {
    if g == groups.len() {
        return u64::from(remaining == 0);
    }
    let (value, mult) = groups[g];
    count_choices(value as u64, mult, 0, used, remaining, groups, g)
}

/// Choose `left` further positions (in increasing order, so equal parts are
/// not distinguished) for the current part value.
fn count_choices(
    value: u64,
    left: usize,
    from: usize,
    used: &mut Vec<bool>,
    remaining: u64,
    groups: &[(u32, usize)],
    g: usize,
) -> u64 {
    if left == 0 {
        return place_group(groups, g + 1, used, remaining);
    }
    let mut total = 0;
    for pos in from..used.len() {
        if used[pos] {
            continue;
        }
        let cost = value * pos as u64;
        if cost > remaining {
            break;
        }
        used[pos] = true;
        total += count_choices(value, left - 1, pos + 1, used, remaining - cost, groups, g);
        used[pos] = false;
    }
    total
}

/// All partitions of n, in descending lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill_partitions(&mut out, &mut cur, n, n);
    out
}

fn fill_partitions(out: &mut Vec<Partition>, cur: &mut Vec<u32>, rest: u32, max_part: u32) {
    if rest == 0 {
        out.push(Partition::new(cur.clone()).expect("descending by construction"));
        return;
    }
    let top = rest.min(max_part);
    for part in (1..=top).rev() {
        cur.push(part);
        fill_partitions(out, cur, rest - part, part);
        cur.pop();
    }
}

/// Exact binomial coefficient, as an arbitrary integer (desk scale: fits in
/// u128 for everything this crate touches).
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (n - k + i) as u128 / i as u128;
    }
    acc
}

/// Dimension of the Young permutation module M^lambda: the multinomial
/// coefficient n! / (lambda_1! lambda_2! ...).
pub fn m_module_dimension(lambda: &Partition) -> u128 {
    let mut remaining = lambda.size();
    let mut acc: u128 = 1;
    for &part in lambda.parts() {
        acc *= binomial(remaining, part as u64);
        remaining -= part as u64;
    }
    acc
}
