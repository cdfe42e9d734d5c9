//! Worked examples across the public API.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use rbn_core::chern::{
    bogomolov_nonempty, euler_pairing, hirzebruch_normalize, twisted_chi, ChernCharacter,
};
use rbn_core::cohomology::{
    blowup_cohomology_oracle, hirzebruch_cohomology, interpolation_h0, vanishing_by_rules,
    OracleConfig, Vanishing,
};
use rbn_core::decide::{
    blowup_hirzebruch_wbn, decide_wbn, obstruction_certificate, rank_one_wbn, Status, Witness,
};
use rbn_core::goodsums::{
    delpezzo_decompose, is_good_sum, prioritary_sum_check, two_point_summand, upshift_lift, GoodSum,
};
use rbn_core::lattice::{
    canonical, chi_line_bundle, intersect, is_effective_hirzebruch, is_nef, neg_one_curves,
    weyl_move_curve_to_last, weyl_reflect,
};
use rbn_core::resolutions::{
    blowup_hirzebruch_resolution, blowup_resolution, builtin_collection, hirzebruch_resolution,
    prioritary_hypotheses_check, solve_exponents,
};
use rbn_core::{DivisorClass, Surface};

fn s(text: &str) -> Surface {
    text.parse().unwrap()
}

fn d(surface: &Surface, text: &str) -> DivisorClass {
    DivisorClass::parse(surface, text).unwrap()
}

fn v(surface: &Surface, text: &str) -> ChernCharacter {
    ChernCharacter::parse(surface, text).unwrap()
}

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn triple(x: &rbn_core::cohomology::CohomologyVector) -> (i64, i64, i64) {
    x.as_i64_triple()
}

#[test]
fn lattice() {
    let bl2 = s("blp2:k=2");
    assert_eq!(
        intersect(&d(&bl2, "2L-E1"), &d(&bl2, "L-E1-E2")).unwrap(),
        BigInt::from(1)
    );
    let f0 = s("F0");
    assert_eq!(
        intersect(&d(&f0, "E"), &d(&f0, "E")).unwrap(),
        BigInt::zero()
    );
    assert_eq!(canonical(&s("F1")).to_string(), "-2E-3F");
    assert_eq!(canonical(&bl2).to_string(), "-3L+E1+E2");
    let k7 = canonical(&s("dp7"));
    assert_eq!(k7.square(), BigInt::from(7));
    assert_eq!(chi_line_bundle(&d(&s("F2"), "2E+F")), BigInt::zero());
    assert_eq!(chi_line_bundle(&d(&bl2, "2L-E1-E2")), BigInt::from(4));

    let dp7 = s("dp7");
    let mut curves: Vec<String> = neg_one_curves(&dp7)
        .unwrap()
        .iter()
        .map(|c| c.to_string())
        .collect();
    curves.sort();
    assert_eq!(curves, ["E1", "E2", "L-E1-E2"]);
    let dp4 = s("dp4");
    let k4 = canonical(&dp4);
    let curves = neg_one_curves(&dp4).unwrap();
    assert_eq!(curves.len(), 16);
    assert!(curves
        .iter()
        .all(|c| c.dot(&k4).unwrap() == BigInt::from(-1)));

    assert!(is_nef(&d(&s("F2"), "E+2F")).unwrap());
    assert!(is_nef(&d(&s("dp5"), "2L-E1-E2-E3-E4")).unwrap());
    assert!(!is_nef(&d(&s("dp5"), "L-E1-E2-E3")).unwrap());
    assert!(is_effective_hirzebruch(&d(&s("F3"), "2E+F")).unwrap());
    assert!(!is_effective_hirzebruch(&d(&f0, "-E+5F")).unwrap());
}

#[test]
fn weyl_group() {
    let bl3 = s("blp2:k=3");
    let root = d(&bl3, "L-E1-E2-E3");
    let image = weyl_reflect(&d(&bl3, "L"), &root).unwrap();
    assert_eq!(image.to_string(), "2L-E1-E2-E3");
    assert_eq!(weyl_reflect(&image, &root).unwrap(), d(&bl3, "L"));
    let k = canonical(&bl3);
    assert_eq!(weyl_reflect(&k, &root).unwrap(), k);

    let dp6 = s("dp6");
    let w = weyl_move_curve_to_last(&d(&dp6, "L-E1-E2")).unwrap();
    assert_eq!(w.apply(&d(&dp6, "L-E1-E2")), d(&dp6, "E3"));
    let dp4 = s("dp4");
    let conic = d(&dp4, "2L-E1-E2-E3-E4-E5");
    let w = weyl_move_curve_to_last(&conic).unwrap();
    assert_eq!(w.apply(&conic), d(&dp4, "E5"));
    assert_eq!(w.apply_inverse(&d(&dp4, "E5")), conic);
}

#[test]
fn cohomology() {
    for e in 0..=3 {
        let f = Surface::hirzebruch(e);
        assert_eq!(
            triple(&hirzebruch_cohomology(&d(&f, "-E+7F")).unwrap()),
            (0, 0, 0)
        );
        assert_eq!(
            triple(&hirzebruch_cohomology(&d(&f, "4F")).unwrap()),
            (5, 0, 0)
        );
    }
    assert_eq!(
        triple(&hirzebruch_cohomology(&d(&s("F1"), "E+F")).unwrap()),
        (3, 0, 0)
    );
    assert_eq!(
        triple(&hirzebruch_cohomology(&d(&s("F2"), "2E+F")).unwrap()),
        (2, 2, 0)
    );

    let bl3 = s("blp2:k=3");
    assert_eq!(
        vanishing_by_rules(&d(&bl3, "-L+E1+E2"))
            .unwrap()
            .all_cohomology,
        Vanishing::Zero
    );
    let bl2 = s("blp2:k=2");
    assert_eq!(
        vanishing_by_rules(&d(&bl2, "2L-E1-E2"))
            .unwrap()
            .higher_cohomology,
        Vanishing::Zero
    );
    let blf = s("blF2:k=1");
    assert_eq!(
        vanishing_by_rules(&d(&blf, "-E+5F+E1"))
            .unwrap()
            .all_cohomology,
        Vanishing::Zero
    );

    let cfg = OracleConfig::default();
    assert_eq!(
        interpolation_h0(&d(&bl2, "2L-E1-E2"), &cfg).unwrap(),
        BigInt::from(4)
    );
    // h0(K+3L) = h0(E1+E2) = 1 and χ(-3L) = 1, so h1 = 0
    assert_eq!(
        triple(&blowup_cohomology_oracle(&d(&bl2, "-3L"), &cfg).unwrap()),
        (0, 0, 1)
    );
    let bl5 = s("blp2:k=5");
    let conic = d(&bl5, "4L-2E1-2E2-2E3-2E4-2E5");
    assert_eq!(
        triple(&blowup_cohomology_oracle(&conic, &cfg).unwrap()),
        (1, 1, 0)
    );
}

#[test]
fn characters() {
    let f0 = s("F0");
    let c = ChernCharacter::new(
        BigInt::from(2),
        DivisorClass::zero(&f0),
        BigRational::from_integer((-1).into()),
    )
    .unwrap();
    assert_eq!(c.chi(), BigRational::from_integer(1.into()));
    let f1 = s("F1");
    let minus_e = d(&f1, "-E");
    assert_eq!(
        twisted_chi(&v(&f1, "r=2;c1=2E-F;chi=0"), &minus_e).unwrap(),
        BigInt::from(1)
    );
    assert_eq!(
        twisted_chi(&v(&f1, "r=2;c1=0;chi=0"), &minus_e).unwrap(),
        BigInt::from(-2)
    );

    let (w, dualized) = hirzebruch_normalize(&v(&f0, "r=2;c1=-2E-3F;chi=0")).unwrap();
    assert!(dualized);
    assert_eq!(w.c1().to_string(), "-2E-F");
    let (_, dualized) = hirzebruch_normalize(&v(&s("F2"), "r=2;c1=-2E-6F;chi=0")).unwrap();
    assert!(dualized);
    assert!(!bogomolov_nonempty(&v(&f0, "r=2;c1=-E-3F;chi=0")));
    assert!(bogomolov_nonempty(&v(&f1, "r=2;c1=2E-F;chi=0")));
    assert_eq!(
        *v(&f1, "r=2;c1=0;chi=0").ch2(),
        BigRational::from_integer((-2).into())
    );
    assert_eq!(
        *v(&s("blp2:k=2"), "r=3;c1=2L;chi=0").ch2(),
        BigRational::from_integer((-6).into())
    );

    // χ(O(L-E1-E2), v) = r(-δ + α1 + α2 - 1) when χ(v) = 0
    let bl2 = s("blp2:k=2");
    let line = ChernCharacter::line_bundle(&d(&bl2, "L-E1-E2"));
    for (r, deg, m1, m2) in [(2, 2, 1, 1), (3, 4, 2, 0), (2, 1, 3, 3)] {
        let c1 = DivisorClass::from_ints(&bl2, &[deg, -m1, -m2]).unwrap();
        let w = ChernCharacter::from_chi(r.into(), c1, BigInt::zero()).unwrap();
        let want = BigRational::from_integer((-deg + m1 + m2 - r).into());
        assert_eq!(euler_pairing(&line, &w).unwrap(), want);
    }
}

#[test]
fn resolutions() {
    assert_eq!(builtin_collection(&s("F2")).unwrap().bundles().len(), 4);
    assert_eq!(
        builtin_collection(&s("blp2:k=3")).unwrap().bundles().len(),
        6
    );
    assert_eq!(
        builtin_collection(&s("blF2:k=1")).unwrap().bundles().len(),
        5
    );

    let bl2 = s("blp2:k=2");
    let w = v(&bl2, "r=2;c1=2L-E1-E2;chi=0");
    let closed = blowup_resolution(&w).unwrap();
    assert_eq!(closed.exponents, ints(&[2, 2, 1, 1]));
    assert_eq!(closed.collection.split(), 1);
    let solved = solve_exponents(&w, &builtin_collection(&bl2).unwrap()).unwrap();
    assert_eq!(solved.exponents, closed.exponents);
    let second = blowup_resolution(&v(&bl2, "r=2;c1=2L-2E1-2E2;chi=0")).unwrap();
    assert_eq!(second.collection.split(), 2);
    assert!(second.is_feasible() && second.bookkeeping_exact());

    let f1 = hirzebruch_resolution(&v(&s("F1"), "r=2;c1=0;chi=0")).unwrap();
    assert_eq!(f1.exponents, ints(&[2, 2, 2]));
    assert!(f1.bookkeeping_exact());
    let f2 = hirzebruch_resolution(&v(&s("F2"), "r=2;c1=2E+5F;chi=0")).unwrap();
    assert!(f2.is_feasible() && f2.bookkeeping_exact());

    let blf = s("blF2:k=1");
    let rep = blowup_hirzebruch_resolution(&v(&blf, "r=2;c1=2F;chi=0")).unwrap();
    assert_eq!(rep.exponents, ints(&[4, 4, 2, 0]));
    assert!(rep.bookkeeping_exact());

    let fiber = d(&s("F1"), "F");
    assert!(prioritary_hypotheses_check(
        &builtin_collection(&s("F1")).unwrap(),
        &fiber
    ));
    let coll = builtin_collection(&bl2).unwrap();
    let pencil = d(&bl2, "L-E1");
    assert!(prioritary_hypotheses_check(&coll, &pencil));
    assert!(!prioritary_hypotheses_check(
        &coll.with_split(0).unwrap(),
        &pencil
    ));
}

#[test]
fn good_sums() {
    let dp7 = s("dp7");
    let n = GoodSum::default_reference(&dp7);
    let known = GoodSum::new(
        n.clone(),
        vec![d(&dp7, "L-E1"), d(&dp7, "L-E2"), d(&dp7, "E1+E2")],
    )
    .unwrap();
    assert!(is_good_sum(&known).unwrap().passes());
    let lopsided = GoodSum::new(n.clone(), vec![d(&dp7, "2L"), DivisorClass::zero(&dp7)]).unwrap();
    let report = is_good_sum(&lopsided).unwrap();
    assert!(!report.degrees_balanced);
    let f = d(&dp7, "L-E1");
    assert!(prioritary_sum_check(&known, &f));
    assert!(!prioritary_sum_check(&lopsided, &f));

    let same = GoodSum::new(n.clone(), vec![d(&dp7, "L-E1"), d(&dp7, "L-E1")]).unwrap();
    let lifted = upshift_lift(&same, 1, 2).unwrap();
    let mut parts: Vec<String> = lifted.summands().iter().map(|x| x.to_string()).collect();
    parts.sort();
    assert_eq!(parts, ["L-E1", "L-E2"]);

    assert_eq!(
        two_point_summand(&d(&dp7, "3L-E1"), 2).unwrap(),
        d(&dp7, "L+E1")
    );
    let sum = delpezzo_decompose(&d(&dp7, "3L-E1"), 2).unwrap();
    let mut parts: Vec<String> = sum.summands().iter().map(|x| x.to_string()).collect();
    parts.sort();
    assert_eq!(parts, ["2L-2E1", "L+E1"]);
    let sum = delpezzo_decompose(&d(&dp7, "2L"), 3).unwrap();
    assert!(is_good_sum(&sum).unwrap().passes());
    assert_eq!(sum.chi(), BigInt::from(5));
}

#[test]
fn verdicts() {
    for e in 0..=3 {
        let f = Surface::hirzebruch(e);
        let verdict = rank_one_wbn(&f, &d(&f, "F")).unwrap();
        assert_eq!(verdict.status, Status::Holds);
        assert_eq!(
            verdict.witness,
            Some(Witness::LineBundle {
                class: d(&f, "F"),
                points: BigInt::from(2)
            })
        );
    }
    let bl2 = s("blp2:k=2");
    assert_eq!(
        rank_one_wbn(&bl2, &d(&bl2, "-3L")).unwrap().status,
        Status::Fails
    );

    let f0 = s("F0");
    assert_eq!(
        decide_wbn(&v(&f0, "r=2;c1=-2E-2F;chi=0")).unwrap().status,
        Status::Holds
    );
    assert_eq!(
        decide_wbn(&v(&f0, "r=2;c1=-E-3F;chi=0")).unwrap().status,
        Status::EmptyModuli
    );
    let fails = decide_wbn(&v(&s("F1"), "r=2;c1=2E-F;chi=0")).unwrap();
    assert_eq!(fails.status, Status::Fails);
    assert_eq!(fails.obstruction.unwrap().h0_lower_bound, BigInt::from(1));

    let holds = decide_wbn(&v(&bl2, "r=2;c1=2L-E1-E2;chi=0")).unwrap();
    assert!(matches!(holds.witness, Some(Witness::Resolution(_))));
    let collinear = s("blp2:k=4:collinear=1,2,3,4");
    let verdict = decide_wbn(&v(&collinear, "r=2;c1=2L-2E1-2E2-2E3-2E4;chi=0")).unwrap();
    assert_eq!(verdict.status, Status::Fails);
    assert_eq!(
        verdict.obstruction.unwrap().chi_pairing,
        Some(BigInt::from(4))
    );

    // on the boundary β - Σα + 1 = eα the exponent b vanishes
    let blf = s("blF2:k=1");
    let verdict = blowup_hirzebruch_wbn(&v(&blf, "r=2;c1=2E+2F;chi=0")).unwrap();
    assert_eq!(verdict.status, Status::Holds);
    match verdict.witness {
        Some(Witness::Resolution(rep)) => assert!(rep.exponents.iter().any(Zero::is_zero)),
        other => panic!("unexpected witness {other:?}"),
    }

    let dp7 = s("dp7");
    let verdict = decide_wbn(&v(&dp7, "r=3;c1=2L;chi=0")).unwrap();
    match verdict.witness {
        Some(Witness::GoodSum(w)) => assert_eq!(w.modifications, BigInt::from(5)),
        other => panic!("unexpected witness {other:?}"),
    }
    let dp5 = s("dp5");
    assert_eq!(
        decide_wbn(&v(&dp5, "r=2;c1=3L-E1-E2-E3-E4;chi=0"))
            .unwrap()
            .status,
        Status::Holds
    );
    assert_eq!(
        decide_wbn(&v(&s("dp6"), "r=2;c1=E1;chi=0")).unwrap().status,
        Status::Unknown
    );

    // the pairing with O(E) is χ(E(-E))
    let f1 = s("F1");
    let w = v(&f1, "r=2;c1=2E-F;chi=0");
    let h = d(&f1, "E+3F");
    let ob = obstruction_certificate(&w, &d(&f1, "E"), &h).unwrap();
    assert_eq!(
        ob.chi_pairing,
        Some(twisted_chi(&w, &d(&f1, "-E")).unwrap())
    );
}
