//! q-analogues used throughout: `[a]_{q,t}`, `(q;q)_i` and Gaussian binomials.

use num_bigint::BigInt;

use super::poly::Poly;

/// `[a]_{q,t} = (q^a - t^a)/(q - t) = q^{a-1} + q^{a-2} t + ... + t^{a-1}`.
pub fn qt_bracket(a: u32) -> Poly {
    Poly::from_terms((0..a).map(|j| (super::Mono::new(a - 1 - j, j, 0), BigInt::from(1))))
}

/// `[a]_q = 1 + q + ... + q^{a-1}`.
pub fn q_integer(a: u32) -> Poly {
    Poly::from_terms((0..a).map(|j| (super::Mono::new(j, 0, 0), BigInt::from(1))))
}

/// `[a]_t = 1 + t + ... + t^{a-1}`.
pub fn t_integer(a: u32) -> Poly {
    q_integer(a).swap_qt()
}

/// `(q;q)_i = (1-q)(1-q^2)...(1-q^i)`.
pub fn q_pochhammer(i: u32) -> Poly {
    (1..=i).fold(Poly::one(), |acc, j| acc.mul(&Poly::one().sub(&Poly::qt(j, 0))))
}

/// Gaussian binomial `[k choose i]_q`; zero outside `0 <= i <= k`.
pub fn q_binomial(k: i64, i: i64) -> Poly {
    if i < 0 || k < 0 || i > k {
        return Poly::zero();
    }
    // Pascal recurrence [k,i] = [k-1,i-1] + q^i [k-1,i]
    let (k, i) = (k as usize, i as usize);
    let mut row = vec![Poly::one()];
    for n in 1..=k {
        let mut next = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let left = if j >= 1 { row[j - 1].clone() } else { Poly::zero() };
            let right = if j < n { row[j].mul(&Poly::qt(j as u32, 0)) } else { Poly::zero() };
            next.push(left.add(&right));
        }
        row = next;
    }
    row.swap_remove(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn p(s: &str) -> Poly {
        Poly::parse(s, "x").unwrap()
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(qt_bracket(2), p("q + t"));
        assert_eq!(qt_bracket(0), Poly::zero());
        assert_eq!(qt_bracket(1), Poly::one());
        assert_eq!(qt_bracket(3), p("q^2 + q*t + t^2"));
    }

    #[test]
    fn bracket_times_difference() {
        for a in 0..=20u32 {
            let lhs = qt_bracket(a).mul(&p("q - t"));
            let rhs = Poly::qt(a, 0).sub(&Poly::qt(0, a));
            assert_eq!(lhs, rhs, "a = {a}");
        }
    }

    #[test]
    fn pochhammer_and_binomial() {
        assert_eq!(q_pochhammer(0), Poly::one());
        assert_eq!(q_binomial(2, 1), p("1 + q"));
        assert_eq!(q_binomial(4, 2), p("1 + q^2").mul(&p("1 + q + q^2")));
        assert_eq!(q_binomial(2, 3), Poly::zero());
    }

    #[test]
    fn binomial_quotient_oracle() {
        // [k,i] (q;q)_i (q;q)_{k-i} = (q;q)_k, degree i(k-i)
        for k in 0..=9i64 {
            for i in 0..=k {
                let b = q_binomial(k, i);
                let lhs = b.mul(&q_pochhammer(i as u32)).mul(&q_pochhammer((k - i) as u32));
                assert_eq!(lhs, q_pochhammer(k as u32));
                assert_eq!(b.degree(crate::ring::Var::Q) as i64, i * (k - i));
            }
        }
    }

    #[test]
    fn binomial_at_one() {
        let one = BigRational::one();
        let zero = BigRational::zero();
        for k in 0..=12i64 {
            let mut expected = BigInt::one();
            for i in 0..=k {
                let v = q_binomial(k, i).eval(&one, &zero, &zero);
                assert_eq!(v, BigRational::from_integer(expected.clone()));
                expected = expected * (k - i) / (i + 1);
            }
        }
    }
}
