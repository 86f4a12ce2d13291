//! One line per acceptance criterion; exits non-zero if any is red.
//!
//! Run with `cargo test -p nabla-kit --test acceptance`.

mod common;

use std::fmt::Display;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nabla_kit::identities::{
    check_sign_conjecture, nabla_matrix, scan_positivity, verify, IdentityId, ScanTarget, Status, VerdictReport,
};
use nabla_kit::macdonald::{basis, hall_littlewood_hn};
use nabla_kit::operators::nabla;
use nabla_kit::partitions::{cocharge_polynomial, partitions_of, Partition};
use nabla_kit::ring::{Rational, RF};
use nabla_kit::specials::epsilon_family;
use nabla_kit::symfunc::{same_element, Basis, SymFunc};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Display) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn within(limit: Duration, started: Instant) -> Result<(), String> {
    let took = started.elapsed();
    ensure(took <= limit, format!("took {took:.1?}, limit {limit:?}"))
}

fn passed(r: &VerdictReport) -> Result<(), String> {
    match &r.witness {
        None if r.status == Status::Pass => Ok(()),
        Some(w) => Err(format!("{} {:?} at {}: {} vs {}", r.id, r.status, w.input, w.lhs, w.rhs)),
        None => Err(format!("{} {:?}", r.id, r.status)),
    }
}

fn golden_matrices() -> Outcome {
    let started = Instant::now();
    for n in [2, 3] {
        let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", &format!("nabla{n}.txt")].iter().collect();
        let want = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        let got = nabla_matrix(n).map_err(|e| e.to_string())?.to_text();
        ensure(got == want, format!("n={n}:\n{got}"))?;
    }
    within(Duration::from_secs(5), started)?;
    Ok("matrices n=2,3 equal the published displays".into())
}

fn hall_littlewood() -> Outcome {
    let started = Instant::now();
    let displays: [&[(&[u32], &str)]; 4] = [
        &[(&[1], "1")],
        &[(&[2], "1"), (&[1, 1], "q")],
        &[(&[3], "1"), (&[2, 1], "q^2 + q"), (&[1, 1, 1], "q^3")],
        &[(&[4], "1"), (&[3, 1], "q^3 + q^2 + q"), (&[2, 2], "q^4 + q^2"), (&[2, 1, 1], "q^5 + q^4 + q^3"), (&[1, 1, 1, 1], "q^6")],
    ];
    for (i, rows) in displays.iter().enumerate() {
        let n = i as u32 + 1;
        let hn = hall_littlewood_hn(n);
        for (parts, coeff) in rows.iter() {
            let got = hn.coeff(&Partition::new(parts.to_vec()).unwrap());
            ensure(got.to_text() == *coeff, format!("H_{n} at s{parts:?}: {got}"))?;
        }
        ensure(hn.len() == rows.len(), format!("H_{n} has extra terms: {hn}"))?;
    }
    for n in 1..=6 {
        let hn = hall_littlewood_hn(n);
        for lambda in partitions_of(n) {
            let want = RF::from_poly(cocharge_polynomial(&lambda));
            ensure(hn.coeff(&lambda) == want, format!("n={n}, lambda={lambda}"))?;
        }
    }
    passed(&verify(IdentityId::M, 6).map_err(|e| e.to_string())?)?;
    within(Duration::from_secs(30), started)?;
    Ok("H_1..H_4 displays; cocharge generating functions for n<=6".into())
}

fn macdonald_invariants() -> Outcome {
    for n in 1..=6 {
        let b = basis(n).map_err(|e| e.to_string())?;
        let parts = b.partitions();
        for mu in parts {
            let one = b.kostka(&Partition::row(n), mu).unwrap();
            ensure(one.is_one(), format!("K_(n),{mu} = {one}"))?;
            let mu_conj = mu.conjugate();
            for lambda in parts {
                let k = b.kostka(lambda, mu).unwrap();
                ensure(k.terms().iter().all(|(_, c)| c.sign() != num_bigint::Sign::Minus), format!("K_{lambda},{mu} = {k}"))?;
                let swapped = b.kostka(lambda, &mu_conj).unwrap().swap_qt();
                ensure(*k == swapped, format!("K_{lambda},{mu} vs K_{lambda},{mu_conj}(t,q)"))?;
            }
        }
    }
    Ok("K in N[q,t], K_(n),mu = 1, K_lambda,mu(q,t) = K_lambda,mu'(t,q) for n<=6".into())
}

fn catalog() -> Outcome {
    use IdentityId::*;
    let started = Instant::now();
    let mut slowest = (String::new(), 0u64);
    for id in IdentityId::ALL {
        let n_max = if matches!(id, A | B | D | E | J | N) { 6 } else { 5 };
        let r = verify(id, n_max).map_err(|e| format!("{}: {e}", id.code()))?;
        passed(&r)?;
        if r.ms > slowest.1 {
            slowest = (r.id.clone(), r.ms);
        }
    }
    within(Duration::from_secs(600), started)?;
    Ok(format!("ID-A..ID-O in {:.1?}, slowest {} {} ms", started.elapsed(), slowest.0, slowest.1))
}

fn index_range_variant() -> Outcome {
    let r = verify(IdentityId::B, 6).map_err(|e| e.to_string())?;
    passed(&r)?;
    let v = r.variants.iter().find(|v| v.label.contains("k=1..n")).ok_or("no printed-range variant")?;
    ensure(v.status == Status::Fail, "printed range did not fail")?;
    let w = v.witness.as_ref().ok_or("variant has no witness")?;
    ensure(w.input == "n=1", format!("printed range first fails at {}", w.input))?;
    Ok(format!("k=0..n passes; k=1..n fails at n=1 ({} vs {})", w.lhs, w.rhs))
}

fn epsilon() -> Outcome {
    for n in 1..=6u32 {
        let fam = epsilon_family(n);
        let sum = fam.members.iter().fold(SymFunc::zero(Basis::S), |acc, f| acc.add(f));
        ensure(same_element(&sum, &SymFunc::single(Basis::E, n)), format!("sum of eps_{n},j"))?;
        let minus_q = RF::from_int(-1) * RF::q();
        let first = fam.members[0].scale(&minus_q.pow(n as i32 - 1).unwrap());
        ensure(same_element(&first, &SymFunc::single(Basis::S, n)), format!("eps_{n},1"))?;
        let last = fam.members[n as usize - 1].scale(&RF::qt(n * (n - 1) / 2, 0));
        ensure(same_element(&last, &hall_littlewood_hn(n)), format!("eps_{n},{n}"))?;
    }
    Ok("sum_j eps_n,j = e_n, (-q)^(n-1) eps_n,1 = s_n, q^C(n,2) eps_n,n = H_n for n<=6".into())
}

fn sign_scan() -> Outcome {
    for n in 1..=5 {
        passed(&check_sign_conjecture(n).map_err(|e| e.to_string())?)?;
    }
    Ok("predicted signs hold for every entry, n<=5".into())
}

fn positivity_scans() -> Outcome {
    let started = Instant::now();
    for target in ScanTarget::ALL {
        for n in 1..=4 {
            passed(&scan_positivity(target, n).map_err(|e| e.to_string())?)?;
        }
    }
    within(Duration::from_secs(1800), started)?;
    Ok(format!("haiman, bght, haglund-eps, gh-eps for n<=4 in {:.1?}", started.elapsed()))
}

fn dimensions() -> Outcome {
    let mut seen = Vec::new();
    for (n, want) in [(2u32, 3i64), (3, 16), (4, 125), (5, 1296)] {
        let ne = nabla(&SymFunc::single(Basis::E, n)).map_err(|e| e.to_string())?;
        let p1n = SymFunc::basis_element(Basis::P, Partition::column(n));
        let at_one = ne.hall_scalar(&p1n).eval_qt(1, 1).ok_or("pole at q=t=1")?;
        ensure(at_one == Rational::from_integer(want.into()), format!("n={n}: {at_one}"))?;
        seen.push(at_one.to_string());
    }
    Ok(format!("<nabla e_n, p_1^n> at q=t=1: {}", seen.join(", ")))
}

fn property_suites() -> Outcome {
    let suites: [(&str, fn(u32) -> Result<(), String>); 6] = [
        ("basis round trips", common::basis_round_trips),
        ("Hall Gram", common::hall_gram),
        ("plethysm multiplicativity", common::plethysm_multiplicative),
        ("perp adjointness", common::perp_adjoint),
        ("cache round trip", common::cache_round_trip),
        ("q,t-Schur reconstruction", common::qt_schur_reconstruct),
    ];
    for (name, suite) in suites {
        suite(128).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok("6 seeded suites x 128 cases".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("golden nabla matrices", golden_matrices),
        ("Hall-Littlewood goldens", hall_littlewood),
        ("Macdonald invariants", macdonald_invariants),
        ("identity catalog", catalog),
        ("index-range correction", index_range_variant),
        ("epsilon family", epsilon),
        ("sign conjecture scan", sign_scan),
        ("positivity scans", positivity_scans),
        ("dimension check", dimensions),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let (word, detail) = match check() {
            Ok(d) => ("PASS", d),
            Err(e) => {
                failed += 1;
                ("FAIL", e)
            }
        };
        println!("criterion {:>2} {word} {name} [{:.2?}]: {detail}", i + 1, started.elapsed());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
