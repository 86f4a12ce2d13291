//! Per-degree transition matrices, shared behind a process-wide cache.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::Basis;
use crate::linalg::{invert_rational, mat_mul, RatMatrix};
use crate::partitions::{partitions_of, Partition};

/// Partitions of one degree with their position in decreasing lex order.
pub struct DegreeIndex {
    pub parts: Vec<Partition>,
    pub index: HashMap<Partition, usize>,
}

impl DegreeIndex {
    fn new(n: u32) -> DegreeIndex {
        let parts = partitions_of(n);
        let index = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        DegreeIndex { parts, index }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn position(&self, p: &Partition) -> usize {
        self.index[p]
    }
}

/// Tables for a single degree `n`. Matrix rows are indexed by the source
/// basis element: `B1_lambda = sum_mu M[lambda][mu] B2_mu`.
pub struct DegreeTables {
    pub n: u32,
    pub index: DegreeIndex,
    /// `chi[lambda][rho]`, irreducible character values.
    pub characters: Vec<Vec<BigInt>>,
    /// `kostka[lambda][mu]`, semistandard tableaux of shape lambda and content mu.
    pub kostka: Vec<Vec<BigInt>>,
    to_p: [RatMatrix; 5],
    from_p: [RatMatrix; 5],
    direct: Mutex<HashMap<(Basis, Basis), Arc<RatMatrix>>>,
}

impl DegreeTables {
    fn build(n: u32) -> DegreeTables {
        let index = DegreeIndex::new(n);
        let k = index.len();
        let characters: Vec<Vec<BigInt>> = index
            .parts
            .iter()
            .map(|l| index.parts.iter().map(|r| BigInt::from(character(l, r))).collect())
            .collect();
        let mut memo = HashMap::new();
        let kostka: Vec<Vec<BigInt>> = index
            .parts
            .iter()
            .map(|l| index.parts.iter().map(|m| BigInt::from(kostka_number(l, m.parts(), &mut memo))).collect())
            .collect();
        let rat = |x: &BigInt| BigRational::from_integer(x.clone());
        let s_to_p: RatMatrix = (0..k)
            .map(|l| {
                (0..k)
                    .map(|r| rat(&characters[l][r]) / rat(&index.parts[r].z()))
                    .collect()
            })
            .collect();
        let h_to_s: RatMatrix = (0..k).map(|m| (0..k).map(|l| rat(&kostka[l][m])).collect()).collect();
        let conj: Vec<usize> = index.parts.iter().map(|p| index.position(&p.conjugate())).collect();
        let e_to_s: RatMatrix = (0..k).map(|m| (0..k).map(|l| rat(&kostka[conj[l]][m])).collect()).collect();
        let k_rat: RatMatrix = kostka.iter().map(|r| r.iter().map(rat).collect()).collect();
        let m_to_s = invert_rational(&k_rat).expect("Kostka matrix is unitriangular");
        let p_to_p = crate::linalg::identity(k);
        let h_to_p = mat_mul(&h_to_s, &s_to_p);
        let e_to_p = mat_mul(&e_to_s, &s_to_p);
        let m_to_p = mat_mul(&m_to_s, &s_to_p);
        let to_p = [p_to_p, e_to_p, h_to_p, m_to_p, s_to_p];
        let from_p = to_p
            .clone()
            .map(|m| invert_rational(&m).expect("transition matrices are invertible"));
        DegreeTables { n, index, characters, kostka, to_p, from_p, direct: Mutex::new(HashMap::new()) }
    }

    pub fn to_p(&self, b: Basis) -> &RatMatrix {
        &self.to_p[b as usize]
    }

    pub fn from_p(&self, b: Basis) -> &RatMatrix {
        &self.from_p[b as usize]
    }

    /// Transition matrix from `src` to `dst`.
    pub fn transition(&self, src: Basis, dst: Basis) -> Arc<RatMatrix> {
        if let Some(m) = self.direct.lock().expect("poisoned").get(&(src, dst)) {
            return m.clone();
        }
        let m = Arc::new(match (src, dst) {
            (a, b) if a == b => crate::linalg::identity(self.index.len()),
            (Basis::P, b) => self.from_p(b).clone(),
            (a, Basis::P) => self.to_p(a).clone(),
            (a, b) => mat_mul(self.to_p(a), self.from_p(b)),
        });
        self.direct.lock().expect("poisoned").insert((src, dst), m.clone());
        m
    }
}

/// Shared tables for degree `n`, built on first use.
pub fn tables(n: u32) -> Arc<DegreeTables> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<DegreeTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("poisoned").get(&n) {
        return t.clone();
    }
    let built = Arc::new(DegreeTables::build(n));
    cache.lock().expect("poisoned").entry(n).or_insert(built).clone()
}

/// Murnaghan-Nakayama rule on beta-sets.
pub fn character(lambda: &Partition, rho: &Partition) -> i64 {
    if lambda.size() != rho.size() {
        return 0;
    }
    let l = lambda.len();
    let beta: Vec<i64> = (0..l).map(|i| lambda.part(i) as i64 + (l - 1 - i) as i64).collect();
    mn(&beta, rho.parts())
}

fn mn(beta: &[i64], rho: &[u32]) -> i64 {
    let Some((&k, rest)) = rho.split_first() else {
        return 1;
    };
    let k = k as i64;
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        let target = b - k;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.to_vec();
        next[i] = target;
        let value = mn(&next, rest);
        total += if between % 2 == 0 { value } else { -value };
    }
    total
}

/// Number of semistandard tableaux of shape `lambda` and content `mu`.
pub fn kostka_number(lambda: &Partition, mu: &[u32], memo: &mut HashMap<(Partition, Vec<u32>), u64>) -> u64 {
    let content: u32 = mu.iter().sum();
    if lambda.size() != content {
        return 0;
    }
    let Some((&last, init)) = mu.split_last() else {
        return 1;
    };
    let key = (lambda.clone(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    for nu in horizontal_strips_removed(lambda, last) {
        total += kostka_number(&nu, init, memo);
    }
    memo.insert(key, total);
    total
}

/// All `nu` with `lambda / nu` a horizontal strip of size `k`.
fn horizontal_strips_removed(lambda: &Partition, k: u32) -> Vec<Partition> {
    let parts = lambda.parts();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(parts.len());
    strips(parts, 0, k, &mut current, &mut out);
    out
}

fn strips(parts: &[u32], i: usize, rest: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if i == parts.len() {
        if rest == 0 {
            out.push(Partition::from_parts_unsorted(current.clone()));
        }
        return;
    }
    let lower = parts.get(i + 1).copied().unwrap_or(0);
    let max_remove = (parts[i] - lower).min(rest);
    for r in 0..=max_remove {
        current.push(parts[i] - r);
        strips(parts, i + 1, rest - r, current, out);
        current.pop();
    }
}
