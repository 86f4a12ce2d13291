//! Exact linear algebra over `Z`/`Q` and dense polynomial interpolation.
//!
//! Everything symbolic over `Q(q, t)` is reduced to these: the systems are
//! evaluated at integer points, solved with fraction-free elimination, and
//! the polynomial answers are interpolated back and then verified exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ring::{Mono, Poly, RF};

pub type IntMatrix = Vec<Vec<BigInt>>;
pub type RatMatrix = Vec<Vec<BigRational>>;

/// Outcome of solving `A x = b` for a unique `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Solve {
    Unique(Vec<BigRational>),
    /// Column rank below the number of unknowns.
    Singular,
    Inconsistent,
}

/// Solves `A x = b` over the rationals for integer `A` (possibly
/// overdetermined). The solution must be unique.
pub fn solve_integer_system(a: &IntMatrix, b: &[BigInt]) -> Solve {
    let p = a.first().map_or(0, Vec::len);
    let aug: IntMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let Some(ech) = bareiss_full(aug, p) else {
        return Solve::Singular;
    };
    for row in ech.iter().skip(p) {
        if !row[p].is_zero() {
            return Solve::Inconsistent;
        }
    }
    Solve::Unique(back_substitute(&ech, p, p))
}

/// Bareiss that keeps every row updated at every step so the final rows
/// below the pivots hold exact residuals.
fn bareiss_full(mut a: IntMatrix, p: usize) -> Option<IntMatrix> {
    let m = a.len();
    let width = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    for col in 0..p {
        let pivot = (col..m).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, pivot);
        let prow = a[col].clone();
        for row in a.iter_mut().skip(col + 1) {
            let factor = row[col].clone();
            for j in col + 1..width {
                let v = &prow[col] * &row[j] - &factor * &prow[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = prow[col].clone();
    }
    Some(a)
}

fn back_substitute(ech: &IntMatrix, p: usize, column: usize) -> Vec<BigRational> {
    let mut x = vec![BigRational::zero(); p];
    for j in (0..p).rev() {
        let mut acc = BigRational::from_integer(ech[j][column].clone());
        for k in j + 1..p {
            if !ech[j][k].is_zero() {
                acc -= BigRational::from_integer(ech[j][k].clone()) * &x[k];
            }
        }
        x[j] = acc / BigRational::from_integer(ech[j][j].clone());
    }
    x
}

/// Inverse of a square integer matrix, or `None` if singular.
pub fn invert_integer(a: &IntMatrix) -> Option<RatMatrix> {
    let p = a.len();
    let aug: IntMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..p).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let ech = bareiss_full(aug, p)?;
    let cols: Vec<Vec<BigRational>> = (0..p).map(|c| back_substitute(&ech, p, p + c)).collect();
    Some((0..p).map(|i| (0..p).map(|j| cols[j][i].clone()).collect()).collect())
}

/// Determinant of a square integer matrix.
pub fn det_integer(a: &IntMatrix) -> BigInt {
    let p = a.len();
    if p == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for col in 0..p {
        let Some(pivot) = (col..p).find(|&i| !m[i][col].is_zero()) else {
            return BigInt::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            sign = -sign;
        }
        let prow = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            let factor = row[col].clone();
            for j in col + 1..p {
                row[j] = (&prow[col] * &row[j] - &factor * &prow[j]) / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = prow[col].clone();
    }
    sign * &m[p - 1][p - 1]
}

/// Gauss-Jordan inverse over the rationals.
pub fn invert_rational(a: &RatMatrix) -> Option<RatMatrix> {
    let p = a.len();
    let mut m: RatMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..p).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..p {
        let pivot = (col..p).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut() {
            *v *= &inv;
        }
        let prow = m[col].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[p..].to_vec()).collect())
}

pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![BigRational::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

pub fn identity(n: usize) -> RatMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect()
}

/// Monomial-basis coefficients of the polynomial of degree `< xs.len()`
/// through the points `(xs[i], ys[i])`.
pub fn interpolate_univariate(xs: &[BigInt], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    assert_eq!(n, ys.len());
    let xr: Vec<BigRational> = xs.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    // Newton divided differences
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xr[i] - &xr[i - level]);
        }
    }
    // Horner expansion of the Newton form into monomial coefficients
    let mut coeffs = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        // coeffs = coeffs * (x - xr[i]) + dd[i]
        let mut next = vec![BigRational::zero(); n];
        for k in 0..n {
            if coeffs[k].is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += &coeffs[k];
            }
            next[k] -= &coeffs[k] * &xr[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}

/// Bivariate interpolation on the grid `qs x ts`; `values[i][j]` is the
/// value at `(qs[i], ts[j])`. Returns the polynomial in `q, t` with degrees
/// `< qs.len()` and `< ts.len()` as a rational function with constant
/// denominator.
pub fn interpolate_grid(qs: &[BigInt], ts: &[BigInt], values: &[Vec<BigRational>]) -> RF {
    let nq = qs.len();
    let nt = ts.len();
    // for each t-node, coefficients in q
    let per_t: Vec<Vec<BigRational>> = (0..nt)
        .map(|j| {
            let col: Vec<BigRational> = (0..nq).map(|i| values[i][j].clone()).collect();
            interpolate_univariate(qs, &col)
        })
        .collect();
    let mut terms: Vec<(Mono, BigRational)> = Vec::new();
    for a in 0..nq {
        let vals: Vec<BigRational> = (0..nt).map(|j| per_t[j][a].clone()).collect();
        if vals.iter().all(Zero::is_zero) {
            continue;
        }
        let tc = interpolate_univariate(ts, &vals);
        for (b, c) in tc.into_iter().enumerate() {
            if !c.is_zero() {
                terms.push((Mono::new(a as u32, b as u32, 0), c));
            }
        }
    }
    rational_terms_to_rf(terms)
}

/// Polynomial with rational coefficients as a rational function.
pub fn rational_terms_to_rf(terms: Vec<(Mono, BigRational)>) -> RF {
    let mut den = BigInt::one();
    for (_, c) in &terms {
        den = den.lcm(c.denom());
    }
    let poly = Poly::from_terms(terms.into_iter().map(|(m, c)| {
        let scaled = c * BigRational::from_integer(den.clone());
        (m, scaled.to_integer())
    }));
    RF::normalize(poly, Poly::constant(den), crate::ring::Aux::None).expect("nonzero denominator")
}

/// Solves the square system `A x = b` over `Q(q, t)` for polynomial `A`
/// with fraction-free elimination. `None` if `A` is singular.
pub fn solve_poly_system(a: &[Vec<Poly>], b: &[RF]) -> Option<Vec<RF>> {
    let p = a.len();
    let mut m: Vec<Vec<RF>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r: Vec<RF> = row.iter().cloned().map(RF::from_poly).collect();
            r.push(bi.clone());
            r
        })
        .collect();
    // polynomial part handled fraction-free; the right-hand column rides along
    let mut prev = Poly::one();
    let mut polys: Vec<Vec<Poly>> = a.to_vec();
    for col in 0..p {
        let pivot = (col..p).find(|&i| !polys[i][col].is_zero())?;
        polys.swap(col, pivot);
        m.swap(col, pivot);
        let prow = polys[col].clone();
        let prhs = m[col][p].clone();
        for i in col + 1..p {
            let factor = polys[i][col].clone();
            for j in col + 1..p {
                let v = prow[col].mul(&polys[i][j]).sub(&factor.mul(&prow[j]));
                polys[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            polys[i][col] = Poly::zero();
            let rhs = &(&RF::from_poly(prow[col].clone()) * &m[i][p]) - &(&RF::from_poly(factor) * &prhs);
            m[i][p] = rhs.checked_div(&RF::from_poly(prev.clone())).expect("nonzero pivot");
        }
        prev = prow[col].clone();
    }
    let mut x = vec![RF::zero(); p];
    for j in (0..p).rev() {
        let mut acc = m[j][p].clone();
        for k in j + 1..p {
            if !polys[j][k].is_zero() {
                acc -= &(&RF::from_poly(polys[j][k].clone()) * &x[k]);
            }
        }
        x[j] = acc.checked_div(&RF::from_poly(polys[j][j].clone())).expect("nonzero pivot");
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn overdetermined_solve() {
        let a = vec![ints(&[1, 1]), ints(&[1, -1]), ints(&[2, 0])];
        let b = ints(&[3, 1, 4]);
        assert_eq!(solve_integer_system(&a, &b), Solve::Unique(vec![rat(2), rat(1)]));
        let b = ints(&[3, 1, 5]);
        assert_eq!(solve_integer_system(&a, &b), Solve::Inconsistent);
        let a = vec![ints(&[1, 2]), ints(&[2, 4])];
        assert_eq!(solve_integer_system(&a, &ints(&[1, 2])), Solve::Singular);
    }

    #[test]
    fn inverse_and_det() {
        let a = vec![ints(&[2, 1, 0]), ints(&[1, 3, 1]), ints(&[0, 1, 4])];
        let inv = invert_integer(&a).unwrap();
        let ar: RatMatrix = a.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
        assert_eq!(mat_mul(&ar, &inv), identity(3));
        assert_eq!(invert_rational(&ar).unwrap(), inv);
        assert_eq!(det_integer(&a), BigInt::from(18));
        assert_eq!(det_integer(&vec![ints(&[0, 1]), ints(&[1, 0])]), BigInt::from(-1));
    }

    #[test]
    fn grid_interpolation_recovers_polynomial() {
        let f = Poly::parse("3*q^2*t - q*t^2 + 7*t - 2", "x").unwrap();
        let qs = ints(&[2, 3, 4]);
        let ts = ints(&[5, 7, 11]);
        let values: Vec<Vec<BigRational>> = qs
            .iter()
            .map(|a| ts.iter().map(|b| BigRational::from_integer(f.eval_int(a, b))).collect())
            .collect();
        assert_eq!(interpolate_grid(&qs, &ts, &values), RF::from_poly(f));
    }

    #[test]
    fn polynomial_system() {
        let p = |s: &str| Poly::parse(s, "x").unwrap();
        let a = vec![vec![p("q"), p("1")], vec![p("1"), p("t")]];
        let x = vec![RF::from_poly(p("1")), RF::from_poly(p("q - t"))];
        let b: Vec<RF> = a
            .iter()
            .map(|row| row.iter().zip(&x).fold(RF::zero(), |acc, (c, xi)| &acc + &(&RF::from_poly(c.clone()) * xi)))
            .collect();
        assert_eq!(solve_poly_system(&a, &b).unwrap(), x);
        let singular = vec![vec![p("q"), p("t")], vec![p("q^2"), p("q*t")]];
        assert!(solve_poly_system(&singular, &b).is_none());
    }
}
