use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use two_transit::group::groups;
use two_transit::oracle;
use two_transit::search::DEFAULT_BUDGET;
use two_transit::transition1::{classify1, Transition1};
use two_transit::transition2::*;
use two_transit::{CoverShape, CrossedModule, FinMap, NerveMap, SimplicialComplex};

fn complex(k: SimplicialComplex) -> Arc<CoverShape> {
    Arc::new(CoverShape::complex(&k))
}

fn triangle() -> Arc<CoverShape> {
    complex(SimplicialComplex::hollow_triangle())
}

fn sphere() -> Arc<CoverShape> {
    complex(SimplicialComplex::boundary_of_simplex(3))
}

fn disc() -> Arc<CoverShape> {
    complex(SimplicialComplex::simplex(2))
}

fn cech(u: &[usize], b: usize) -> Arc<CoverShape> {
    Arc::new(CoverShape::cech(&FinMap::new(b, u.to_vec()).unwrap()).unwrap())
}

fn aut_z3() -> Arc<CrossedModule> {
    Arc::new(CrossedModule::automorphism(&groups::cyclic(3)).unwrap())
}

fn aut_s3() -> Arc<CrossedModule> {
    Arc::new(CrossedModule::automorphism(&groups::symmetric(3)).unwrap())
}

fn shifted(n: usize) -> Arc<CrossedModule> {
    Arc::new(CrossedModule::shifted(&groups::cyclic(n)).unwrap())
}

fn random_gauge(c: &Cocycle2, rng: &mut StdRng, semistrict: bool) -> (Vec<usize>, Vec<usize>) {
    let s = c.shape();
    let xm = c.crossed_module();
    let (nh, nd) = (xm.h().order(), xm.d_group().order());
    let mu: Vec<usize> = (0..s.size(1)).map(|_| rng.gen_range(0..nd)).collect();
    let mut delta: Vec<usize> = (0..s.size(2)).map(|_| rng.gen_range(0..nh)).collect();
    if semistrict {
        for x in 0..s.size(1) {
            delta[s.apply(NerveMap::S0C1, x)] = xm.h().identity();
        }
    }
    (mu, delta)
}

fn random_morphism(c: &Cocycle2, rng: &mut StdRng) -> Morphism2 {
    let (mu, delta) = random_gauge(c, rng, c.is_semistrict());
    Morphism2::from_gauge(c, mu, delta).unwrap()
}

#[test]
fn trivial_cocycle_validates_everywhere() {
    for s in [triangle(), sphere(), disc(), cech(&[0, 0, 1], 2)] {
        for xm in [aut_z3(), aut_s3(), shifted(4)] {
            Cocycle2::trivial(s.clone(), xm).validate().unwrap();
        }
    }
}

#[test]
fn nontrivial_sphere_class_validates() {
    let xm = shifted(2);
    let classes = classify2_abelian(&sphere(), &xm, DEFAULT_BUDGET).unwrap().unwrap();
    assert_eq!(classes.classes.len(), 2);
    let nontrivial = classes.classes.iter().find(|c| c.g.iter().any(|&v| v != 0)).unwrap();
    nontrivial.cocycle(&sphere(), &xm).validate().unwrap();
}

#[test]
fn boundary_violation_on_triangle() {
    let c = Cocycle2::trivial(triangle(), aut_z3());
    let s = c.shape().clone();
    let mut lambda = c.lambda().to_vec();
    lambda[s.find(&[1, 2]).unwrap()] = 1;
    let bad = Cocycle2::new(s, aut_z3(), lambda, c.g().to_vec(), None).unwrap();
    assert!(matches!(bad.validate(), Err(Transition2Error::BoundaryViolation(_))));
}

#[test]
fn unit_and_tetrahedron_violations() {
    let xm = shifted(2);
    let c = Cocycle2::trivial(sphere(), xm.clone());
    let s = c.shape().clone();
    let mut g = c.g().to_vec();
    g[s.find(&[0, 0, 1]).unwrap()] = 1;
    let bad = Cocycle2::new(s.clone(), xm.clone(), c.lambda().to_vec(), g, None).unwrap();
    assert_eq!(bad.validate().unwrap_err().kind(), "UnitViolation");
    let mut g = c.g().to_vec();
    g[s.find(&[0, 1, 2]).unwrap()] = 1;
    let bad = Cocycle2::new(s.clone(), xm.clone(), c.lambda().to_vec(), g, None).unwrap();
    assert_eq!(bad.validate().unwrap_err().kind(), "TetrahedronViolation");
    let bad = Cocycle2::new(s.clone(), xm, c.lambda().to_vec(), c.g().to_vec(), Some(vec![1, 0, 0, 0])).unwrap();
    assert_eq!(bad.validate().unwrap_err().kind(), "UnitViolation");
}

#[test]
fn eta_boundary_violation() {
    // in Aut(S3) the boundary is injective, so a nontrivial eta needs a
    // matching lambda on the diagonal
    let xm = aut_s3();
    let c = Cocycle2::trivial(triangle(), xm.clone());
    let bad = Cocycle2::new(triangle(), xm, c.lambda().to_vec(), c.g().to_vec(), Some(vec![1, 0, 0])).unwrap();
    assert!(matches!(bad.validate(), Err(Transition2Error::EtaBoundaryViolation(0))));
}

#[test]
fn identity_morphism_validates() {
    let mut rng = StdRng::seed_from_u64(11);
    let c = Cocycle2::random(triangle(), aut_s3(), &mut rng).unwrap();
    Morphism2::identity(&c).validate().unwrap();
}

#[test]
fn pure_coboundary_validates() {
    let mut rng = StdRng::seed_from_u64(12);
    for xm in [aut_z3(), aut_s3()] {
        for _ in 0..20 {
            let c = Cocycle2::random(triangle(), xm.clone(), &mut rng).unwrap();
            let m = random_morphism(&c, &mut rng);
            m.validate().unwrap();
            m.target().validate().unwrap();
            assert!(m.target().is_semistrict());
        }
    }
}

#[test]
fn delta_broken_at_one_pair() {
    let xm = aut_z3();
    let c = Cocycle2::trivial(triangle(), xm.clone());
    let s = c.shape();
    let mut delta = vec![0; s.size(2)];
    delta[s.find(&[0, 1]).unwrap()] = 1;
    let m = Morphism2::new(c.clone(), c.clone(), vec![0; s.size(1)], delta).unwrap();
    assert!(matches!(m.validate(), Err(Transition2Error::ArrowLawViolation(_))));

    let mut delta = vec![0; s.size(2)];
    delta[s.find(&[1, 1]).unwrap()] = 2;
    let m = Morphism2::new(c.clone(), c.clone(), vec![0; s.size(1)], delta).unwrap();
    assert!(matches!(m.validate(), Err(Transition2Error::DegenerateDeltaViolation(1))));
}

#[test]
fn object_law_violation() {
    let xm = aut_s3();
    let c = Cocycle2::trivial(triangle(), xm.clone());
    let s = c.shape();
    let mut mu = vec![0; s.size(1)];
    mu[2] = 1;
    let m = Morphism2::new(c.clone(), c.clone(), mu, vec![0; s.size(2)]).unwrap();
    assert!(matches!(m.validate(), Err(Transition2Error::ObjectLawViolation(_))));
}

#[test]
fn composition_with_identity() {
    let mut rng = StdRng::seed_from_u64(13);
    let c = Cocycle2::random(triangle(), aut_s3(), &mut rng).unwrap();
    let m = random_morphism(&c, &mut rng);
    assert_eq!(Morphism2::identity(&c).compose(&m).unwrap(), m);
    assert_eq!(m.compose(&Morphism2::identity(m.target())).unwrap(), m);
    let elsewhere = Morphism2::identity(&Cocycle2::trivial(triangle(), aut_s3()));
    if m.target() != elsewhere.source() {
        assert_eq!(m.compose(&elsewhere), Err(Transition2Error::NotComposable));
    }
}

#[test]
fn composites_validate_and_associate() {
    let mut rng = StdRng::seed_from_u64(14);
    for xm in [aut_z3(), aut_s3()] {
        for _ in 0..30 {
            let c = Cocycle2::random(triangle(), xm.clone(), &mut rng).unwrap();
            let a = random_morphism(&c, &mut rng);
            let b = random_morphism(a.target(), &mut rng);
            let d = random_morphism(b.target(), &mut rng);
            let ab = a.compose(&b).unwrap();
            ab.validate().unwrap();
            assert_eq!(ab.compose(&d).unwrap(), a.compose(&b.compose(&d).unwrap()).unwrap());
        }
    }
}

#[test]
fn inverse_gauge_cancels() {
    let mut rng = StdRng::seed_from_u64(15);
    for xm in [aut_z3(), aut_s3(), shifted(4)] {
        for _ in 0..20 {
            let c = Cocycle2::random_general(triangle(), xm.clone(), &mut rng).unwrap();
            let m = random_morphism(&c, &mut rng);
            let inv = m.inverse();
            inv.validate().unwrap();
            let there_and_back = m.compose(&inv).unwrap();
            let w = TwoMorphism2::new(there_and_back, Morphism2::identity(&c), vec![xm.h().identity(); 3]).unwrap();
            w.validate().unwrap();
            assert_eq!(inv.compose(&m).unwrap(), Morphism2::identity(m.target()));
        }
    }
}

#[test]
fn two_morphism_laws() {
    let mut rng = StdRng::seed_from_u64(16);
    let xm = aut_s3();
    let c = Cocycle2::random(triangle(), xm.clone(), &mut rng).unwrap();
    let m = random_morphism(&c, &mut rng);
    TwoMorphism2::identity(&m).validate().unwrap();

    let theta: Vec<usize> = (0..3).map(|_| rng.gen_range(0..6)).collect();
    let w = TwoMorphism2::from_theta(&m, theta.clone()).unwrap();
    w.validate().unwrap();
    w.target().validate().unwrap();

    let mut broken = theta.clone();
    broken[1] = xm.h().mul(broken[1], 1);
    let bad = TwoMorphism2::new(w.source().clone(), w.target().clone(), broken).unwrap();
    assert!(matches!(bad.validate(), Err(Transition2Error::MuLawViolation(1))));
}

#[test]
fn delta_law_violation() {
    // with d trivial, changing theta leaves the mu law intact
    let xm = aut_z3();
    let c = Cocycle2::trivial(triangle(), xm.clone());
    let m = Morphism2::identity(&c);
    let bad = TwoMorphism2::new(m.clone(), m, vec![1, 0, 0]).unwrap();
    assert!(matches!(bad.validate(), Err(Transition2Error::DeltaLawViolation(_))));
}

#[test]
fn vertical_composition() {
    let mut rng = StdRng::seed_from_u64(17);
    for xm in [aut_z3(), aut_s3()] {
        let n = xm.h().order();
        let c = Cocycle2::random(triangle(), xm.clone(), &mut rng).unwrap();
        let m = random_morphism(&c, &mut rng);
        let mut theta = || (0..3).map(|_| rng.gen_range(0..n)).collect::<Vec<_>>();
        let w1 = TwoMorphism2::from_theta(&m, theta()).unwrap();
        let w2 = TwoMorphism2::from_theta(w1.target(), theta()).unwrap();
        let w3 = TwoMorphism2::from_theta(w2.target(), theta()).unwrap();
        assert_eq!(TwoMorphism2::identity(&m).vcompose(&w1).unwrap(), w1);
        assert_eq!(w1.vcompose(&w1.inverse()).unwrap(), TwoMorphism2::identity(&m));
        assert_eq!(
            w1.vcompose(&w2).unwrap().vcompose(&w3).unwrap(),
            w1.vcompose(&w2.vcompose(&w3).unwrap()).unwrap()
        );
        assert_eq!(w2.vcompose(&w1), Err(Transition2Error::NotComposable));
    }
}

#[test]
fn whiskering() {
    let mut rng = StdRng::seed_from_u64(18);
    let xm = aut_z3();
    let c = Cocycle2::random(triangle(), xm.clone(), &mut rng).unwrap();
    let m = random_morphism(&c, &mut rng);
    let w = TwoMorphism2::from_theta(&m, vec![1, 2, 0]).unwrap();

    let before = random_morphism(&c, &mut rng).inverse();
    let left = w.whisker(Side::Left, &before).unwrap();
    assert_eq!(left.theta(), w.theta());

    let id = Morphism2::identity(m.target());
    assert_eq!(w.whisker(Side::Right, &id).unwrap().theta(), w.theta());

    // neg acts on Z/3 by negation
    let neg = 1;
    let after = Morphism2::from_gauge(m.target(), vec![neg; 3], vec![0; m.target().shape().size(2)]).unwrap();
    let right = w.whisker(Side::Right, &after).unwrap();
    let negated: Vec<usize> = w.theta().iter().map(|&t| (3 - t) % 3).collect();
    assert_eq!(right.theta(), negated.as_slice());

    if after.target() != &c {
        assert_eq!(w.whisker(Side::Left, &after), Err(Transition2Error::NotComposable));
    }
}

#[test]
fn semistrict_input_is_unchanged() {
    let mut rng = StdRng::seed_from_u64(19);
    for xm in [aut_z3(), aut_s3()] {
        for _ in 0..10 {
            let c = Cocycle2::random(triangle(), xm.clone(), &mut rng).unwrap();
            let out = semistrictify(&c).unwrap();
            assert_eq!(out.cocycle.lambda(), c.lambda());
            out.forward.validate().unwrap();
            out.unit.validate().unwrap();
        }
    }
}

#[test]
fn general_input_becomes_semistrict() {
    let mut rng = StdRng::seed_from_u64(20);
    for xm in [aut_z3(), shifted(4), aut_s3()] {
        for s in [triangle(), disc(), cech(&[0, 1, 0], 2)] {
            for _ in 0..10 {
                let c = Cocycle2::random_general(s.clone(), xm.clone(), &mut rng).unwrap();
                c.validate().unwrap();
                let out = semistrictify(&c).unwrap();
                let c2 = &out.cocycle;
                assert!(c2.is_semistrict());
                c2.validate().unwrap();
                for x in 0..s.size(1) {
                    assert_eq!(c2.lambda()[s.apply(NerveMap::S0C1, x)], xm.d_group().identity());
                }
                out.forward.validate().unwrap();
                out.backward.validate().unwrap();
                out.unit.validate().unwrap();
                out.counit.validate().unwrap();
            }
        }
    }
}

#[test]
fn general_eta_inputs_actually_occur() {
    let mut rng = StdRng::seed_from_u64(21);
    let hits = (0..20)
        .filter(|_| !Cocycle2::random_general(triangle(), aut_z3(), &mut rng).unwrap().is_semistrict())
        .count();
    assert!(hits > 10);
}

#[test]
fn classify_discrete_s3_on_triangle() {
    let s3 = groups::symmetric(3);
    let xm = Arc::new(CrossedModule::discrete(&s3).unwrap());
    let two = classify2(&triangle(), &xm, DEFAULT_BUDGET).unwrap();
    let one = classify1(&triangle(), &s3, DEFAULT_BUDGET).unwrap();
    assert_eq!(two.classes.len(), 3);
    assert_eq!(two.classes.len(), one.classes.len());
}

#[test]
fn classify_sphere_and_disc() {
    let xm = shifted(2);
    let sphere_classes = classify2(&sphere(), &xm, DEFAULT_BUDGET).unwrap();
    let k = SimplicialComplex::boundary_of_simplex(3);
    assert_eq!(sphere_classes.classes.len(), 1 << oracle::h2_dimension(&k, 2));
    assert_eq!(sphere_classes.classes.len(), 2);
    let disc_classes = classify2(&disc(), &xm, DEFAULT_BUDGET).unwrap();
    assert_eq!(disc_classes.classes.len(), 1);
    assert_eq!(oracle::h2_dimension(&SimplicialComplex::simplex(2), 2), 0);
}

#[test]
fn abelian_fallback_when_budget_is_small() {
    let xm = shifted(2);
    let c = classify2(&sphere(), &xm, 100).unwrap();
    assert_eq!(c.method, Method::Abelian);
    assert_eq!(c.classes.len(), 2);
    assert_eq!(
        classify2_generic(&sphere(), &xm, 100),
        Err(Transition2Error::BudgetExceeded(100))
    );
    assert_eq!(classify2(&sphere(), &aut_z3(), 100).unwrap_err().kind(), "BudgetExceeded");
}

#[test]
fn discrete_cocycles_from_transitions() {
    let s3 = Arc::new(groups::symmetric(3));
    let xm = Arc::new(CrossedModule::discrete(&s3).unwrap());
    let mut rng = StdRng::seed_from_u64(22);
    for _ in 0..10 {
        let t = Transition1::random(triangle(), s3.clone(), &mut rng).unwrap();
        Cocycle2::from_transition(&t, xm.clone()).unwrap().validate().unwrap();
    }
}
