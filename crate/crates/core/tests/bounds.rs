mod common;

use common::*;
use numrad::bounds::{
    check_equality_half, check_equality_quarter, check_mixed_schwarz, check_power_lemma, check_sum_norm_lemma,
    eval_bound_named, power_lemma_sides,
};
use numrad::generators::SplitMix64;
use numrad::linalg::operator_norm;
use numrad::{eval_all, eval_bound, BoundId, ComplexMatrix, Ensemble, Error, OperatorPair};

const TOL: f64 = 1e-9;

fn pair(a: ComplexMatrix, b: ComplexMatrix) -> OperatorPair {
    OperatorPair::new(a, b).unwrap()
}

fn nn() -> OperatorPair {
    pair(nilpotent(), nilpotent())
}

fn dd() -> OperatorPair {
    pair(diag01(), diag01())
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-8
}

#[test]
fn classic_norm_nn() {
    let r = eval_bound(BoundId::ClassicNorm, &nn(), TOL).unwrap();
    assert!(r.holds);
    assert!(close(r.lower_terms[0].value, 0.5) && close(r.center, 0.5) && close(r.upper_terms[0].value, 1.0));
    assert!(r.lower_slack().unwrap().abs() < 1e-8);
}

#[test]
fn dist_refined_nn() {
    let r = eval_bound(BoundId::DistRefined, &nn(), TOL).unwrap();
    assert!(r.holds);
    assert!(close(r.term("dist_refined").unwrap(), 0.5) && close(r.center, 0.5));
    assert!(close(r.term("double_radius_product").unwrap(), 0.5));
    assert!(close(r.term("d_a").unwrap(), 0.5) && close(r.term("d_b").unwrap(), 0.5));
}

#[test]
fn abs_upper_nn() {
    let r = eval_bound(BoundId::AbsUpper, &nn(), TOL).unwrap();
    assert!(r.holds);
    assert!(close(r.center, 0.25));
    assert!(close(r.term("abs_term").unwrap(), 0.25));
    assert!(close(r.term("power_term").unwrap(), 0.25));
    assert!(close(r.term("norm_product_squared").unwrap(), 1.0));
}

#[test]
fn sq_normdiff_nn() {
    let r = eval_bound(BoundId::SqNormdiffLower, &nn(), TOL).unwrap();
    assert!(r.holds && close(r.center, 0.25) && close(r.lower_terms.last().unwrap().value, 0.25));
    assert!(r.lower_slack().unwrap().abs() < 1e-8);
    let r = eval_bound(BoundId::NormdiffLower, &nn(), TOL).unwrap();
    assert!(close(r.lower_terms.last().unwrap().value, 0.5) && r.lower_slack().unwrap().abs() < 1e-8);
}

#[test]
fn radius_product_dd() {
    let r = eval_bound(BoundId::RadiusProduct, &dd(), TOL).unwrap();
    assert!(r.holds);
    assert!(close(r.lower_terms[0].value, 1.0) && close(r.center, 1.0) && close(r.upper_terms[0].value, 1.0));
}

#[test]
fn crawford_gap_dd() {
    let r = eval_bound(BoundId::CrawfordGap, &dd(), TOL).unwrap();
    assert!(r.holds);
    assert!(r.center.abs() < 1e-8);
    // the infimum of h over λ for D⊗D is ¼, attained on the line Re λ = ½
    let best = r.upper_terms[0].value;
    assert!((0.25 - 1e-8..0.25 + 1e-6).contains(&best), "best {best}");
    assert!(close(r.term("lambda_star_re").unwrap(), 0.5));
}

#[test]
fn eval_all_examples() {
    let set = eval_all(&nn(), TOL).unwrap();
    assert_eq!(set.reports.len(), 11);
    assert!(set.all_hold());
    let ids: Vec<BoundId> = set.reports.iter().map(|r| r.id).collect();
    assert_eq!(ids, BoundId::ALL.to_vec());

    let set = eval_all(&dd(), TOL).unwrap();
    assert!(set.all_hold());
    assert!(set.tightest_upper.contains(&BoundId::RadiusProduct), "{:?}", set.tightest_upper);

    let z = ComplexMatrix::zeros(2);
    let set = eval_all(&pair(z, ginibre(3, 3)), TOL).unwrap();
    assert!(set.all_hold());
    for r in &set.reports {
        assert!(r.center.abs() < 1e-12);
        assert!(r.lower_terms.iter().chain(&r.upper_terms).all(|t| t.value.abs() < 1e-12), "{}", r.id);
    }
}

#[test]
fn unknown_bound() {
    assert!(matches!(eval_bound_named("NOPE", &nn(), TOL), Err(Error::UnknownBound(_))));
    assert_eq!(eval_bound_named("CLASSIC_NORM", &nn(), TOL).unwrap().id, BoundId::ClassicNorm);
    assert!(matches!(eval_bound(BoundId::ClassicNorm, &nn(), 0.0), Err(Error::InvalidTol(_))));
}

#[test]
fn size_cap() {
    let big = ComplexMatrix::zeros(65);
    assert!(matches!(OperatorPair::new(big.clone(), big), Err(Error::SizeCap { .. })));
}

#[test]
fn json_and_csv() {
    let set = eval_all(&nn(), TOL).unwrap();
    let v = set.to_json_value();
    for id in BoundId::ALL {
        assert!(v.get(id.as_str()).is_some(), "{id}");
    }
    let mut buf = Vec::new();
    set.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().next().unwrap(), "id,center,terms,holds,min_slack");
    assert_eq!(text.lines().count(), 12);
}

#[test]
fn equality_examples() {
    let r = check_equality_half(&nn(), 360, TOL).unwrap();
    assert!(r.consistent && r.max_deviation_plus < 1e-9 && r.max_deviation_minus < 1e-9);
    let r = check_equality_half(&dd(), 360, TOL).unwrap();
    assert!(!r.consistent && close(r.max_deviation_plus, 1.0));
    let one = ComplexMatrix::identity(1);
    assert!(!check_equality_half(&pair(one.clone(), one), 360, TOL).unwrap().consistent);
    let r = check_equality_quarter(&nn(), 360, TOL).unwrap();
    assert!(r.consistent && close(r.target, 1.0));
    assert!(!check_equality_quarter(&dd(), 360, TOL).unwrap().consistent);
    let z = ComplexMatrix::zeros(2);
    assert!(check_equality_quarter(&pair(z.clone(), z), 360, TOL).unwrap().consistent);
    assert!(check_equality_half(&nn(), 3, TOL).is_err());
}

fn random_pair(rng: &mut SplitMix64, k: u64) -> OperatorPair {
    let set = Ensemble::standard_set();
    let ea = &set[(rng.next_u64() % set.len() as u64) as usize];
    let eb = &set[(rng.next_u64() % set.len() as u64) as usize];
    let da = (2 + rng.next_u64() % 4) as usize;
    let db = (2 + rng.next_u64() % 4) as usize;
    pair(draw(ea, k, da.max(ea.min_dim())), draw(eb, k + 1_000_000, db.max(eb.min_dim())))
}

#[test]
fn soundness_and_chain_order() {
    let mut rng = SplitMix64::new(5);
    for k in 0..30 {
        let p = random_pair(&mut rng, k);
        let tol = p.default_tol().unwrap();
        let set = eval_all(&p, tol).unwrap();
        assert!(set.all_hold(), "pair {k}: {:?}", set.reports.iter().filter(|r| !r.holds).map(|r| r.id).collect::<Vec<_>>());
        let abs = set.get(BoundId::AbsUpper).unwrap();
        let t: Vec<f64> = abs.upper_terms.iter().map(|t| t.value).collect();
        assert!(t[0] <= t[1] + tol && t[1] <= t[2] + tol);
        let dist = set.get(BoundId::DistRefined).unwrap();
        assert!(dist.term("dist_refined").unwrap() <= dist.term("double_radius_product").unwrap() + tol);
        let nd = set.get(BoundId::NormdiffLower).unwrap();
        let s = operator_norm(&p.a).unwrap() * operator_norm(&p.b).unwrap();
        assert!(nd.lower_terms.last().unwrap().value >= s / 2.0 - tol);
    }
}

#[test]
fn corollary_consistency() {
    for seed in 0..20 {
        let a = draw(&Ensemble::SquareZero, seed, 2 + seed as usize % 4);
        let b = draw(&Ensemble::Normal, seed + 1, 2 + seed as usize % 3);
        let p = pair(a, b);
        let tol = p.default_tol().unwrap();
        let r = eval_bound(BoundId::NormdiffLower, &p, tol).unwrap();
        let s = operator_norm(&p.a).unwrap() * operator_norm(&p.b).unwrap();
        if (r.center - s / 2.0).abs() <= tol {
            assert!((r.term("norm_plus").unwrap() - s).abs() <= 10.0 * tol);
            assert!((r.term("norm_minus").unwrap() - s).abs() <= 10.0 * tol);
        }
    }
}

#[test]
fn swap_preserves_center() {
    for seed in 0..10 {
        let p = pair(ginibre(seed, 2), ginibre(seed + 3, 3));
        let (r1, r2) = (eval_bound(BoundId::ClassicNorm, &p, TOL).unwrap(), eval_bound(BoundId::ClassicNorm, &p.swapped(), TOL).unwrap());
        assert!(rel_close(r1.center, r2.center, 1e-8));
    }
}

#[test]
fn power_lemma_fuzz() {
    let mut rng = SplitMix64::new(11);
    for k in 0..200 {
        let n = 1 + k % 5;
        let a = random_psd(k as u64, n);
        let x = unit_vector(&mut rng, n);
        for r in [1.0, 1.5, 2.0, 3.0] {
            assert!(check_power_lemma(&a, &x, r).unwrap(), "k {k} r {r}: {:?}", power_lemma_sides(&a, &x, r));
        }
    }
}

#[test]
fn mixed_schwarz_fuzz() {
    let mut rng = SplitMix64::new(12);
    let a = ginibre(4, 4);
    for _ in 0..100 {
        assert!(check_mixed_schwarz(&a, &unit_vector(&mut rng, 4)).unwrap());
    }
    let p = random_psd(9, 3);
    for _ in 0..50 {
        assert!(check_mixed_schwarz(&p, &unit_vector(&mut rng, 3)).unwrap());
    }
}

#[test]
fn sum_norm_fuzz() {
    for k in 0..100u64 {
        let n = 1 + k as usize % 5;
        assert!(check_sum_norm_lemma(&random_psd(k, n), &random_psd(k + 500, n)).unwrap());
    }
    let unit = vec![c(1.0, 0.0), c(0.0, 0.0)];
    assert!(matches!(check_power_lemma(&ComplexMatrix::diag_real(&[1.0, -1.0]), &unit, 2.0), Err(Error::NotPsd { .. })));
}
