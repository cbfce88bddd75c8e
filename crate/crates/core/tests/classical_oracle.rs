//! Library matrices at q = 1 against the classical formulas.

mod common;

use num_rational::Rational64;
use soq::compactrep::{build_class1, build_so3};
use soq::degenrep::{build_degenerate, RepSpec};
use soq::gtbasis::{enumerate_chain, HalfInt};
use soq::qarith::{QParam, SpectralParam};

#[test]
fn chain_enumeration_matches() {
    for n in 3..=6 {
        for m in 0..=4 {
            let lib: Vec<Vec<i64>> = enumerate_chain(n, HalfInt::int(m))
                .unwrap()
                .iter()
                .map(|c| c.entries.iter().map(|e| e.twice() / 2).collect())
                .collect();
            let mut ours = common::chains(n, m);
            let mut sorted = lib.clone();
            sorted.sort();
            ours.sort();
            assert_eq!(sorted, ours, "n={n} m={m}");
            assert_eq!(lib.len(), common::class1_dim(n, m as usize));
        }
    }
}

#[test]
fn compact_matches_classical() {
    let p = QParam::classical();
    for n in 3..=6 {
        for m in 0..=4 {
            let rep = build_class1(n, m, &p).unwrap();
            let gap = common::compact_gap(&rep);
            assert!(gap < 1e-12, "n={n} m={m} gap={gap}");
        }
    }
}

#[test]
fn so3_half_integer_at_q1() {
    // I_21 = i·m, and I_32 lowers with −½√((l+m)(l−m+1))
    let rep = build_so3(HalfInt::from_twice(3), &QParam::classical()).unwrap();
    let i21 = &rep.generator(2).matrix;
    for (i, c) in rep.basis.iter().enumerate() {
        assert!((i21.get(i, i).im - c.label(2).value()).abs() < 1e-14);
    }
    let i32 = &rep.generator(3).matrix;
    // l = 3/2, from m = 1/2 down to m = −1/2: −½√(2·2)
    assert!((i32.get(1, 2).re + 1.0).abs() < 1e-14);
    // and from m = −1/2 up to m = 1/2: ½√(2·2)
    assert!((i32.get(2, 1).re - 1.0).abs() < 1e-14);
}

#[test]
fn degenerate_matches_classical() {
    let p = QParam::classical();
    for (r, s) in [(3, 3), (3, 4), (4, 4), (5, 3)] {
        for eps in 0..2u8 {
            for (num, den) in [(37, 100), (-2, 1), (5, 2)] {
                let lam = Rational64::new(num, den);
                let spec = RepSpec::new(r, s, eps, SpectralParam::real(lam), p, 6).unwrap();
                let rep = build_degenerate(&spec).unwrap();
                let gap = common::degenerate_gap(&rep, num as f64 / den as f64);
                assert!(gap < 1e-12, "r={r} s={s} ε={eps} λ={lam} gap={gap}");
            }
        }
    }
}
