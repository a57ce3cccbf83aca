//! Seeded structural invariants on the catalog algebras.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use nilorbit::catalog;
use nilorbit::harmonic::{pfaffian, pfaffian_of};
use nilorbit::orbits::{flow, orbit_chart, section_point};
use nilorbit::polarization::{crosscheck_polarizations, stabilizer};
use nilorbit::sampling;
use nilorbit::scalar::int;
use nilorbit::stratification::{enumerate_layers, index_of, layer_polynomial, lex_compare};
use nilorbit::{Covector, NilpotentLieAlgebra, RatMatrix, Rational, Vector};

fn algebras() -> Vec<NilpotentLieAlgebra> {
    catalog::ACCEPTANCE.iter().map(|n| catalog::algebra(n).unwrap()).collect()
}

#[test]
fn group_law() {
    for alg in algebras() {
        let n = alg.dim();
        let mut rng = sampling::rng(21);
        for _ in 0..40 {
            let x = sampling::vector(&mut rng, n);
            let y = sampling::vector(&mut rng, n);
            let z = sampling::vector(&mut rng, n);
            let l = sampling::covector(&mut rng, n);
            let xy = alg.bch(&x, &y).unwrap();
            assert_eq!(alg.bch(&xy, &z).unwrap(), alg.bch(&x, &alg.bch(&y, &z).unwrap()).unwrap());
            assert_eq!(alg.ad_exp(&xy).unwrap(), alg.ad_exp(&x).unwrap().mul(&alg.ad_exp(&y).unwrap()));
            let once = alg.coadjoint(&xy, &l).unwrap();
            let twice = alg.coadjoint(&x, &alg.coadjoint(&y, &l).unwrap()).unwrap();
            assert_eq!(once, twice, "{}", alg.name());
            assert_eq!(alg.bch(&x, &x.neg()).unwrap(), Vector::zero(n));
        }
    }
}

#[test]
fn orbit_invariance_and_round_trip() {
    for alg in algebras() {
        let n = alg.dim();
        let mut rng = sampling::rng(22);
        for _ in 0..25 {
            let l = sampling::covector(&mut rng, n);
            let s = section_point(&alg, &l).unwrap();
            assert_eq!(flow(&alg, &l, &s.schedule).unwrap(), s.l_section);
            assert_eq!(flow(&alg, &s.l_section, &s.schedule.inverse()).unwrap(), l);
            for &label in &s.index_set.flattened() {
                assert!(s.l_section.at(label).is_zero());
            }
            for _ in 0..4 {
                let x = sampling::vector(&mut rng, n);
                let m = alg.coadjoint(&x, &l).unwrap();
                assert_eq!(index_of(&alg, &m).unwrap(), s.index_set);
                assert_eq!(section_point(&alg, &m).unwrap().l_section, s.l_section, "{}", alg.name());
                assert!(crosscheck_polarizations(&alg, &m).unwrap().agree);
            }
        }
    }
}

#[test]
fn dimension_laws() {
    for alg in algebras() {
        let n = alg.dim();
        for l in sampling::covectors(23, n, 30) {
            let i = index_of(&alg, &l).unwrap();
            let stab = stabilizer(&alg, &l).unwrap();
            assert_eq!(i.size(), n - stab.dim());
            let p = crosscheck_polarizations(&alg, &l).unwrap();
            assert_eq!(p.vergne.dim(), n - i.size() / 2);
        }
    }
}

#[test]
fn chart_consistency() {
    for alg in algebras() {
        let n = alg.dim();
        let mut rng = sampling::rng(24);
        for l in sampling::covectors(24, n, 8) {
            let chart = orbit_chart(&alg, &l).unwrap();
            let base = section_point(&alg, &l).unwrap();
            assert_eq!(chart.dim(), base.index_set.size());
            assert!(chart.is_polynomial_in_z());
            assert!(chart.shape_holds(), "{} {l:?}", alg.name());
            for _ in 0..5 {
                let z: Vec<Rational> = (0..chart.dim()).map(|_| sampling::fraction(&mut rng)).collect();
                let p = chart.evaluate(&z).unwrap();
                for (u, &label) in z.iter().zip(&chart.z_labels) {
                    assert_eq!(p.at(label), u);
                }
                assert_eq!(index_of(&alg, &p).unwrap(), base.index_set);
                assert_eq!(section_point(&alg, &p).unwrap().l_section, base.l_section);
            }
        }
    }
}

#[test]
fn layer_degeneration() {
    for alg in algebras() {
        let e = enumerate_layers(&alg, 120, 25).unwrap();
        for (a, b) in e.layers.iter().zip(e.layers.iter().skip(1)) {
            assert_eq!(lex_compare(&a.index_set, &b.index_set), Ordering::Greater);
        }
        for layer in &e.layers {
            let d = layer_polynomial(&alg, &layer.index_set).unwrap();
            assert!(!d.eval(&layer.witness).unwrap().is_zero());
            for var in 0..alg.dim() {
                if !d.polynomial.depends_on(var) {
                    continue;
                }
                let mut w = layer.witness.clone();
                w.0[var] = int(0);
                assert!(d.eval(&w).unwrap().is_zero());
                let lower = index_of(&alg, &w).unwrap();
                assert_eq!(lex_compare(&lower, &layer.index_set), Ordering::Less, "{} {w:?}", alg.name());
            }
        }
    }
}

#[test]
fn pfaffian_invariance_on_h3() {
    let h3 = catalog::h3();
    let mut rng = sampling::rng(26);
    for _ in 0..50 {
        let l = sampling::covector(&mut rng, 3);
        let x = sampling::vector(&mut rng, 3);
        let m = h3.coadjoint(&x, &l).unwrap();
        let a = pfaffian(&h3, &l, &[1, 2]).unwrap();
        let b = pfaffian(&h3, &m, &[1, 2]).unwrap();
        assert_eq!(a.abs(), b.abs());
        assert_eq!(a, l.at(3).clone());
    }
    let l = Covector(vec![int(4), int(-2), int(7)]);
    assert_eq!(pfaffian(&h3, &l, &[1, 2]).unwrap(), int(7));
}

fn skew(entries: &[i64], size: usize) -> RatMatrix {
    let mut rows = vec![vec![int(0); size]; size];
    let mut it = entries.iter();
    for i in 0..size {
        for j in i + 1..size {
            let v = *it.next().unwrap();
            rows[i][j] = int(v);
            rows[j][i] = int(-v);
        }
    }
    RatMatrix::from_rows(rows)
}

proptest! {
    #![proptest_config(Config { cases: 64, rng_seed: RngSeed::Fixed(27), ..Config::default() })]

    #[test]
    fn pfaffian_squares_to_determinant(half in 1usize..4, entries in proptest::collection::vec(-9i64..10, 15)) {
        let m = skew(&entries, 2 * half);
        let pf = pfaffian_of(&m).unwrap();
        prop_assert_eq!(pf.clone() * pf, m.determinant());
    }

    #[test]
    fn h3_bch_is_closed_form(a in proptest::collection::vec(-20i64..21, 6)) {
        let h3 = catalog::h3();
        let x = Vector(a[..3].iter().map(|&v| int(v)).collect());
        let y = Vector(a[3..].iter().map(|&v| int(v)).collect());
        let z = h3.bch(&x, &y).unwrap();
        let third = int(a[2] + a[5]) + Rational::new((a[0] * a[4] - a[1] * a[3]).into(), 2.into());
        prop_assert_eq!(z.0, vec![int(a[0] + a[3]), int(a[1] + a[4]), third]);
    }
}
