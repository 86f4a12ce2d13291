//! Integer partitions, cells, the Young lattice and tableau statistics.

mod tableaux;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::ring::{Mono, Poly};
use crate::{Error, Result};

pub use tableaux::{cocharge, cocharge_polynomial, standard_tableaux, StandardTableau};

/// A weakly decreasing sequence of positive parts, stored without zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

/// A cell `(a, b)` of a Ferrers diagram: column `a`, row `b`, both from 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub a: u32,
    pub b: u32,
}

impl Partition {
    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    /// Validates and strips trailing zeros.
    pub fn new(parts: Vec<u32>) -> Result<Partition> {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::InvalidPartition(parts.iter().map(|&x| x as i64).collect()));
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_parts_unsorted(mut parts: Vec<u32>) -> Partition {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Single row `(n)`; the empty partition for `n = 0`.
    pub fn row(n: u32) -> Partition {
        if n == 0 {
            Partition::empty()
        } else {
            Partition(vec![n])
        }
    }

    /// Single column `(1^n)`.
    pub fn column(n: u32) -> Partition {
        Partition(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0) as usize;
        let mut out = vec![0u32; first];
        for &p in &self.0 {
            for c in out.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        Partition(out)
    }

    /// `n(mu) = sum (i - 1) mu_i`.
    pub fn nstat(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &p)| i as u32 * p).sum()
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(b, &len)| (0..len).map(move |a| Cell { a, b: b as u32 }))
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.a < self.part(cell.b as usize)
    }

    /// `B_mu = sum over cells of q^a t^b`.
    pub fn b_mu(&self) -> Poly {
        Poly::from_terms(self.cells().map(|c| (Mono::new(c.a, c.b, 0), BigInt::one())))
    }

    /// Partitions covered by `self` in the Young lattice, with the removed cell.
    pub fn covers_down(&self) -> Vec<(Partition, Cell)> {
        let mut out = Vec::new();
        for i in 0..self.0.len() {
            if self.part(i) > self.part(i + 1) {
                let mut parts = self.0.clone();
                parts[i] -= 1;
                let cell = Cell { a: parts[i], b: i as u32 };
                out.push((Partition::new(parts).expect("removing a corner"), cell));
            }
        }
        out
    }

    /// Partitions covering `self`, with the added cell.
    pub fn covers_up(&self) -> Vec<(Partition, Cell)> {
        let mut out = Vec::new();
        for i in 0..=self.0.len() {
            if i == 0 || self.part(i - 1) > self.part(i) {
                let mut parts = self.0.clone();
                if i == parts.len() {
                    parts.push(0);
                }
                let cell = Cell { a: parts[i], b: i as u32 };
                parts[i] += 1;
                out.push((Partition(parts), cell));
            }
        }
        out
    }

    /// Multiplicities `m_i` of each part size `i >= 1`.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut m = vec![0u32; self.part(0) as usize + 1];
        for &p in &self.0 {
            m[p as usize] += 1;
        }
        m
    }

    /// `z_lambda = prod i^{m_i} m_i!`.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        for (i, &m) in self.multiplicities().iter().enumerate().skip(1) {
            for j in 1..=m {
                z *= BigInt::from(i) * BigInt::from(j);
            }
        }
        z
    }

    /// `(-1)^{n - l(lambda)}`, the sign of a permutation of cycle type `lambda`.
    pub fn sign(&self) -> i64 {
        if (self.size() as usize - self.len()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Union of parts, as for products of power sums.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::from_parts_unsorted(parts)
    }

    /// Removes one part equal to `k`, if present.
    pub fn remove_part(&self, k: u32) -> Option<Partition> {
        let i = self.0.iter().position(|&p| p == k)?;
        let mut parts = self.0.clone();
        parts.remove(i);
        Some(Partition(parts))
    }

    /// Multiplies every part by `k`.
    pub fn scale_parts(&self, k: u32) -> Partition {
        Partition(self.0.iter().map(|&p| p * k).collect())
    }

    /// Hook length of the cell in row `i`, column `j`.
    pub fn hook(&self, i: usize, j: usize) -> u32 {
        let conj = self.conjugate();
        self.part(i) - j as u32 + conj.part(j) - i as u32 - 1
    }

    /// Sign `(-1)^{m(lambda)}` predicted for row `lambda` of the nabla
    /// matrix, with `m(lambda) = C(k, 2) + sum_{i <= k, lambda'_i < i - 1} (i - 1 - lambda'_i)`
    /// and `k = lambda_1`.
    pub fn predicted_sign(&self) -> i64 {
        let k = self.part(0) as i64;
        let conj = self.conjugate();
        let mut m = k * (k - 1) / 2;
        for i in 1..=k {
            let c = conj.part(i as usize - 1) as i64;
            if c < i - 1 {
                m += i - 1 - c;
            }
        }
        if m % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Canonical text form, e.g. `[3,1,1]`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

/// All partitions of `n` in decreasing lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    out
}

fn fill(rest: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for p in (1..=max.min(rest)).rev() {
        current.push(p);
        fill(rest - p, p, current, out);
        current.pop();
    }
}

/// `lambda <= mu` in dominance order; both must have the same size.
pub fn dominance_leq(lambda: &Partition, mu: &Partition) -> Result<bool> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(lambda.size() as usize, mu.size() as usize));
    }
    let (mut sl, mut sm) = (0u32, 0u32);
    for i in 0..lambda.len().max(mu.len()) {
        sl += lambda.part(i);
        sm += mu.part(i);
        if sl > sm {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Size ascending, then lexicographically decreasing within a size.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Partition> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("partition `{s}` must be bracketed")))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad part `{p}` in `{s}`"))))
            .collect::<Result<Vec<u32>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<&[i64]> for Partition {
    type Error = Error;

    fn try_from(parts: &[i64]) -> Result<Partition> {
        if parts.iter().any(|&p| p <= 0 || p > u32::MAX as i64) {
            return Err(Error::InvalidPartition(parts.to_vec()));
        }
        Partition::new(parts.iter().map(|&p| p as u32).collect())
            .map_err(|_| Error::InvalidPartition(parts.to_vec()))
    }
}

/// `Partition` literal from a slice of parts; panics if not decreasing.
pub fn part(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).expect("valid partition literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_order() {
        let three: Vec<String> = partitions_of(3).iter().map(Partition::to_text).collect();
        assert_eq!(three, ["[3]", "[2,1]", "[1,1,1]"]);
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        let four: Vec<String> = partitions_of(4).iter().map(Partition::to_text).collect();
        assert_eq!(four, ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]);
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn conjugation() {
        assert_eq!(part(&[3, 1]).conjugate(), part(&[2, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(part(&[2, 2]).conjugate(), part(&[2, 2]));
        for n in 0..=12 {
            for p in partitions_of(n) {
                assert_eq!(p.conjugate().conjugate(), p);
            }
        }
    }

    #[test]
    fn dominance() {
        assert!(dominance_leq(&part(&[2, 2]), &part(&[3, 1])).unwrap());
        assert!(!dominance_leq(&part(&[3, 1]), &part(&[2, 2])).unwrap());
        assert!(dominance_leq(&part(&[2, 1, 1]), &part(&[2, 2])).unwrap());
        assert!(dominance_leq(&part(&[2]), &part(&[2, 1])).is_err());
    }

    #[test]
    fn statistics() {
        assert_eq!(part(&[2, 1]).nstat(), 1);
        assert_eq!(part(&[5]).nstat(), 0);
        assert_eq!(part(&[1, 1, 1]).nstat(), 3);
        assert_eq!(part(&[2, 2]).b_mu(), Poly::parse("1 + q + t + q*t", "x").unwrap());
        assert_eq!(part(&[3, 1]).b_mu(), Poly::parse("1 + q + q^2 + t", "x").unwrap());
        assert_eq!(part(&[1]).b_mu(), Poly::one());
        assert_eq!(part(&[2, 1, 1]).z(), BigInt::from(4));
        assert_eq!(part(&[2, 2]).z(), BigInt::from(8));
    }

    #[test]
    fn covers() {
        let down = |p: &[u32]| -> Vec<Partition> { part(p).covers_down().into_iter().map(|x| x.0).collect() };
        assert_eq!(down(&[2, 1]), vec![part(&[1, 1]), part(&[2])]);
        assert_eq!(down(&[1]), vec![Partition::empty()]);
        assert_eq!(down(&[3, 3, 1]), vec![part(&[3, 2, 1]), part(&[3, 3])]);
        let up: Vec<Partition> = part(&[1]).covers_up().into_iter().map(|x| x.0).collect();
        assert_eq!(up, vec![part(&[2]), part(&[1, 1])]);
    }

    #[test]
    fn predicted_signs_on_small_rows() {
        assert_eq!(part(&[2]).predicted_sign(), -1);
        assert_eq!(part(&[1, 1]).predicted_sign(), 1);
        assert_eq!(part(&[1, 1, 1]).predicted_sign(), 1);
        assert_eq!(part(&[3]).predicted_sign(), 1);
    }

    #[test]
    fn text_round_trip() {
        for p in partitions_of(6) {
            assert_eq!(p.to_text().parse::<Partition>().unwrap(), p);
        }
        assert!("[2,3]".parse::<Partition>().is_err());
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
    }
}
