//! Arithmetic modulo word-sized primes, for reconstructing integer
//! polynomials from evaluations by Chinese remaindering.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ring::{Mono, Poly};

/// `Z / p` for a prime `p < 2^62`.
#[derive(Clone, Copy, Debug)]
pub struct Field {
    pub p: u64,
}

impl Field {
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    pub fn reduce(self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits")
    }

    /// Deterministic pseudo-random element for node number `i` of stream `s`.
    pub fn node(self, s: u64, i: usize) -> u64 {
        let mut z = s.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64 + 1);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        z % self.p
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn invert(self, m: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
        let n = m.len();
        let mut a: Vec<Vec<u64>> = m
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..n).map(|j| u64::from(i == j)));
                r
            })
            .collect();
        for c in 0..n {
            let pivot = (c..n).find(|&r| a[r][c] != 0)?;
            a.swap(c, pivot);
            let inv = self.inv(a[c][c]);
            for x in a[c].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for r in 0..n {
                if r != c && a[r][c] != 0 {
                    let f = a[r][c];
                    for j in 0..2 * n {
                        let v = self.mul(f, a[c][j]);
                        a[r][j] = self.sub(a[r][j], v);
                    }
                }
            }
        }
        Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    /// `c[a][b]`, the coefficient of `q^a t^b` of the interpolant through
    /// `values[i][j]` at `(qs[i], ts[j])`.
    pub fn interpolate_grid(self, qs: &Interpolator, ts: &Interpolator, values: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let in_q: Vec<Vec<u64>> =
            (0..ts.len()).map(|j| qs.apply(self, &values.iter().map(|r| r[j]).collect::<Vec<_>>())).collect();
        (0..qs.len()).map(|a| ts.apply(self, &in_q.iter().map(|c| c[a]).collect::<Vec<_>>())).collect()
    }
}

/// Newton interpolation on fixed nodes, with the inverse node differences
/// precomputed.
#[derive(Clone, Debug)]
pub struct Interpolator {
    xs: Vec<u64>,
    inv_diff: Vec<Vec<u64>>,
}

impl Interpolator {
    pub fn new(f: Field, xs: Vec<u64>) -> Interpolator {
        let n = xs.len();
        let inv_diff = (1..n)
            .map(|level| (level..n).map(|i| f.inv(f.sub(xs[i], xs[i - level]))).collect())
            .collect();
        Interpolator { xs, inv_diff }
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Monomial coefficients of the interpolant through `(xs[i], ys[i])`.
    pub fn apply(&self, f: Field, ys: &[u64]) -> Vec<u64> {
        let n = self.xs.len();
        let mut dd = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = f.mul(f.sub(dd[i], dd[i - 1]), self.inv_diff[level - 1][i - level]);
            }
        }
        // Horner on the Newton form
        let mut coeffs = vec![0u64; n];
        for i in (0..n).rev() {
            for d in (0..n).rev() {
                let shifted = if d > 0 { coeffs[d - 1] } else { 0 };
                coeffs[d] = f.sub(shifted, f.mul(coeffs[d], self.xs[i]));
            }
            coeffs[0] = f.add(coeffs[0], dd[i]);
        }
        coeffs
    }
}

/// A polynomial in `q, t` reduced modulo one prime.
#[derive(Clone, Debug)]
pub struct ModPoly {
    terms: Vec<(u32, u32, u64)>,
}

impl ModPoly {
    pub fn new(f: Field, p: &Poly) -> ModPoly {
        ModPoly { terms: p.terms().iter().map(|(m, c)| (m.q(), m.t(), f.reduce(c))).collect() }
    }

    /// Evaluation given tables of powers of `q` and `t`.
    pub fn eval(&self, f: Field, qpow: &[u64], tpow: &[u64]) -> u64 {
        self.terms.iter().fold(0, |acc, &(a, b, c)| f.add(acc, f.mul(c, f.mul(qpow[a as usize], tpow[b as usize]))))
    }
}

pub fn powers(f: Field, x: u64, n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 1;
    for _ in 0..=n {
        out.push(acc);
        acc = f.mul(acc, x);
    }
    out
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let f = Field { p: n };
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // these witnesses are deterministic for all 64-bit inputs
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The largest primes below `2^62`, in decreasing order.
pub fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::new();
        let mut n = (1u64 << 62) - 1;
        while out.len() < 64 {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

/// Incremental Chinese remaindering of one integer.
#[derive(Clone, Debug)]
pub struct Crt {
    value: BigInt,
    modulus: BigInt,
}

impl Default for Crt {
    fn default() -> Self {
        Crt { value: BigInt::zero(), modulus: BigInt::one() }
    }
}

impl Crt {
    pub fn push(&mut self, f: Field, r: u64) {
        let m = f.reduce(&self.modulus);
        let x = f.reduce(&self.value);
        let k = f.mul(f.sub(r, x), f.inv(m));
        self.value += &self.modulus * BigInt::from(k);
        self.modulus *= BigInt::from(f.p);
    }

    /// The representative of least absolute value.
    pub fn symmetric(&self) -> BigInt {
        let half: BigInt = &self.modulus >> 1;
        if self.value > half {
            &self.value - &self.modulus
        } else {
            self.value.clone()
        }
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }
}

/// Rebuilds an integer polynomial from CRT accumulators `c[a][b]`.
pub fn poly_from_crt(coeffs: &[Vec<Crt>]) -> Poly {
    Poly::from_terms(coeffs.iter().enumerate().flat_map(|(a, row)| {
        row.iter().enumerate().filter_map(move |(b, c)| {
            let v = c.symmetric();
            (!v.is_zero()).then(|| (Mono::new(a as u32, b as u32, 0), v))
        })
    }))
}

/// Sum of absolute values of the coefficients.
pub fn l1_norm(p: &Poly) -> BigInt {
    p.terms().iter().map(|(_, c)| c.abs()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime() {
        let ps = primes();
        assert_eq!(ps[0], 4611686018427387847);
        assert!(is_prime(2305843009213693951));
        assert!(!is_prime(2305843009213693953));
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn crt_recovers_negatives() {
        let n = BigInt::parse_bytes(b"-123456789012345678901234567890", 10).unwrap();
        let mut c = Crt::default();
        for &p in &primes()[..2] {
            let f = Field { p };
            c.push(f, f.reduce(&n));
        }
        assert_eq!(c.symmetric(), n);
    }

    #[test]
    fn grid_interpolation() {
        let f = Field { p: primes()[0] };
        let poly = Poly::parse("3*q^2*t - 7*t^2 + q + 5", "x").unwrap();
        let m = ModPoly::new(f, &poly);
        let qs: Vec<u64> = (0..3).map(|i| f.node(1, i)).collect();
        let ts: Vec<u64> = (0..3).map(|i| f.node(2, i)).collect();
        let vals: Vec<Vec<u64>> = qs
            .iter()
            .map(|&q| ts.iter().map(|&t| m.eval(f, &powers(f, q, 2), &powers(f, t, 2))).collect())
            .collect();
        let c = f.interpolate_grid(&Interpolator::new(f, qs), &Interpolator::new(f, ts), &vals);
        assert_eq!(c[2][1], 3);
        assert_eq!(c[0][2], f.p - 7);
        assert_eq!(c[1][0], 1);
        assert_eq!(c[0][0], 5);
        let inv = f.invert(&[vec![2, 1], vec![1, 1]]).unwrap();
        assert_eq!(inv, vec![vec![1, f.p - 1], vec![f.p - 1, 2]]);
    }
}
