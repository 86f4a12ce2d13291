//! Property checks shared by the `properties` suite and the acceptance run.
//! Every runner is seeded, so failures reproduce exactly.

#![allow(dead_code)]

use std::fs;

use nabla_kit::identities::{qt_schur, qt_schur_expand};
use nabla_kit::macdonald::{basis, cache_load, cache_path, cache_store};
use nabla_kit::partitions::{partitions_of, Partition};
use nabla_kit::plethysm::plethysm;
use nabla_kit::ring::{Mono, Poly, RF};
use nabla_kit::symfunc::{same_element, Basis, SymFunc};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub const BASES: [Basis; 5] = [Basis::S, Basis::E, Basis::H, Basis::P, Basis::M];

pub fn runner(cases: u32, seed: u8) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn check<S: Strategy>(cases: u32, seed: u8, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    runner(cases, seed).run(&strategy, test).map_err(|e| e.to_string())
}

pub fn partition_of(n: u32) -> impl Strategy<Value = Partition> {
    prop::sample::select(partitions_of(n))
}

fn coefficient() -> impl Strategy<Value = RF> {
    prop_oneof![
        (-4i64..=4).prop_map(RF::from_int),
        Just(RF::q()),
        Just(RF::t()),
        Just(RF::q() - RF::t()),
        Just(RF::one().checked_div(&(RF::one() - RF::q())).unwrap()),
    ]
}

/// A homogeneous element of degree `n`.
pub fn element(n: u32) -> impl Strategy<Value = SymFunc> {
    (prop::sample::select(BASES.to_vec()), prop::collection::vec((partition_of(n), coefficient()), 1..5))
        .prop_map(|(b, terms)| {
            let mut f = SymFunc::zero(b);
            for (lambda, c) in terms {
                f.add_term(lambda, &c);
            }
            f
        })
}

fn sized(lo: u32, hi: u32) -> impl Strategy<Value = SymFunc> {
    (lo..=hi).prop_flat_map(element)
}

pub fn basis_round_trips(cases: u32) -> Result<(), String> {
    check(cases, 1, sized(0, 7), |f| {
        for b in BASES {
            let there = f.to_basis(b);
            prop_assert_eq!(there.basis(), b);
            prop_assert_eq!(&there.to_basis(f.basis()), &f, "via {:?}", b);
        }
        Ok(())
    })
}

pub fn hall_gram(cases: u32) -> Result<(), String> {
    let pairs = (1u32..=6).prop_flat_map(|n| (partition_of(n), partition_of(n)));
    check(cases, 2, pairs, |(lambda, mu)| {
        let delta = RF::from_int((lambda == mu) as i64);
        let at = |b: Basis, l: &Partition| SymFunc::basis_element(b, l.clone());
        prop_assert_eq!(at(Basis::S, &lambda).hall_scalar(&at(Basis::S, &mu)), delta.clone());
        prop_assert_eq!(at(Basis::H, &lambda).hall_scalar(&at(Basis::M, &mu)), delta.clone());
        let z = if lambda == mu { RF::from_bigint(lambda.z()) } else { RF::zero() };
        prop_assert_eq!(at(Basis::P, &lambda).hall_scalar(&at(Basis::P, &mu)), z);
        Ok(())
    })?;
    let pairs = (1u32..=6).prop_flat_map(|n| (element(n), element(n)));
    check(cases, 3, pairs, |(f, g)| {
        let fs = f.to_basis(Basis::S);
        let gs = g.to_basis(Basis::S);
        let mut dot = RF::zero();
        for (lambda, c) in fs.terms() {
            dot += &(c.clone() * gs.coeff(lambda));
        }
        prop_assert_eq!(f.hall_scalar(&g), dot.clone());
        prop_assert_eq!(g.hall_scalar(&f), dot.clone());
        prop_assert_eq!(f.omega().hall_scalar(&g.omega()), dot);
        Ok(())
    })
}

/// Inner functions the plethysm accepts: `c p_1 + d`, or a single term `c p_k`.
fn alphabet() -> impl Strategy<Value = (SymFunc, u32)> {
    let linear = (coefficient(), coefficient()).prop_map(|(c, d)| {
        let f = SymFunc::term(Basis::P, Partition::row(1), c).add(&SymFunc::scalar(Basis::P, d));
        (f, 1)
    });
    let power = (coefficient(), 1u32..=3).prop_map(|(c, k)| (SymFunc::term(Basis::P, Partition::row(k), c), k));
    prop_oneof![linear, power]
}

pub fn plethysm_multiplicative(cases: u32) -> Result<(), String> {
    // the outer degrees are bounded so that every result has degree <= 6
    let inputs = alphabet().prop_flat_map(|(h, k)| {
        let top = 6 / k;
        (Just(h), (0..=top).prop_flat_map(move |a| (element(a), element(top - a))))
    });
    check(cases, 4, inputs, |(h, (f, g))| {
        let at = |x: &SymFunc| plethysm(x, &h).map_err(|e| TestCaseError::fail(e.to_string()));
        let product = at(&f.mul(&g))?;
        prop_assert!(same_element(&product, &at(&f)?.mul(&at(&g)?)), "({})({}) at {}", f.to_text(), g.to_text(), h.to_text());
        prop_assert!(same_element(&at(&f.add(&g))?, &at(&f)?.add(&at(&g)?)));
        Ok(())
    })
}

pub fn perp_adjoint(cases: u32) -> Result<(), String> {
    let triples = (1u32..=6)
        .prop_flat_map(|n| (1..=n).prop_map(move |a| (a, n - a)))
        .prop_flat_map(|(a, b)| (element(a), element(b), element(a + b)));
    check(cases, 5, triples, |(f, h, g)| {
        let lhs = g.perp(&f).hall_scalar(&h);
        let rhs = g.hall_scalar(&f.mul(&h));
        prop_assert_eq!(lhs, rhs, "f={} g={} h={}", f.to_text(), g.to_text(), h.to_text());
        Ok(())
    })
}

pub fn cache_round_trip(cases: u32) -> Result<(), String> {
    let inputs = (1u32..=5).prop_flat_map(|n| (Just(n), any::<prop::sample::Index>(), 33u8..127));
    check(cases, 6, inputs, |(n, at, byte)| {
        let first = tempfile::tempdir().unwrap();
        let second = tempfile::tempdir().unwrap();
        let b = basis(n).unwrap();
        let path = cache_store(first.path(), &b).unwrap();
        let bytes = fs::read(&path).unwrap();
        let loaded = cache_load(first.path(), n).ok_or_else(|| TestCaseError::fail("stored file did not load"))?;
        let again = cache_store(second.path(), &loaded).unwrap();
        prop_assert_eq!(&fs::read(again).unwrap(), &bytes);

        let mut tampered = bytes.clone();
        let i = at.index(tampered.len());
        prop_assume!(tampered[i] != byte && tampered[i] != b'\n');
        tampered[i] = byte;
        fs::write(cache_path(first.path(), n), &tampered).unwrap();
        prop_assert!(cache_load(first.path(), n).is_none(), "byte {} -> {:?} accepted", i, byte as char);
        Ok(())
    })
}

pub fn qt_schur_reconstruct(cases: u32) -> Result<(), String> {
    let terms = prop::collection::btree_map((0u32..=20, 0u32..=10).prop_filter_map("a+b<=20, a>=b", |(a, b)| (a >= b && a + b <= 20).then_some((a, b))), (-5i64..=5).prop_filter("nonzero", |c| *c != 0), 0..8);
    check(cases, 7, terms, |coeffs| {
        let p = coeffs.iter().fold(Poly::zero(), |acc, (&(a, b), &c)| acc.add(&qt_schur(a, b).scale(&BigInt::from(c))));
        let x = qt_schur_expand(&p).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let expected: Vec<((u32, u32), BigInt)> = coeffs.iter().map(|(k, &c)| (*k, BigInt::from(c))).collect();
        let got: Vec<((u32, u32), BigInt)> = x.coeffs.into_iter().collect();
        prop_assert_eq!(got, expected);
        Ok(())
    })?;
    let lopsided = (0u32..20, 0u32..20).prop_filter("a != b", |(a, b)| a != b);
    check(cases, 8, lopsided, |(a, b)| {
        prop_assert!(qt_schur_expand(&Poly::monomial(Mono::new(a, b, 0), BigInt::from(1))).is_err());
        Ok(())
    })
}
