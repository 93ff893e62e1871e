use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use two_transit::group::groups;
use two_transit::oracle;
use two_transit::search::DEFAULT_BUDGET;
use two_transit::transition1::{classify1, Transition1};
use two_transit::transition2::*;
use two_transit::{CoverShape, CrossedModule, FinMap, FiniteGroup, NerveMap, SimplicialComplex};

fn shapes() -> Vec<Arc<CoverShape>> {
    let mut out: Vec<Arc<CoverShape>> = [
        SimplicialComplex::hollow_triangle(),
        SimplicialComplex::simplex(2),
        SimplicialComplex::point(),
        SimplicialComplex::from_maximal(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap(),
        SimplicialComplex::from_maximal(4, &[vec![0, 1, 2], vec![1, 3], vec![2, 3]]).unwrap(),
    ]
    .iter()
    .map(|k| Arc::new(CoverShape::complex(k)))
    .collect();
    for (u, b) in [(vec![0, 0, 1], 2), (vec![0, 1, 0, 1], 2), (vec![0, 0, 0], 1)] {
        out.push(Arc::new(CoverShape::cech(&FinMap::new(b, u).unwrap()).unwrap()));
    }
    out
}

fn small_crossed_modules() -> Vec<Arc<CrossedModule>> {
    vec![
        Arc::new(CrossedModule::automorphism(&groups::cyclic(3)).unwrap()),
        Arc::new(CrossedModule::automorphism(&groups::symmetric(3)).unwrap()),
        Arc::new(CrossedModule::shifted(&groups::cyclic(4)).unwrap()),
        Arc::new(CrossedModule::discrete(&groups::symmetric(3)).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cocycle_law_forces_units(seed in any::<u64>(), shape in 0usize..8, group in 0usize..8) {
        let mut rng = StdRng::seed_from_u64(seed);
        let s = shapes()[shape].clone();
        let g = Arc::new(groups::small_groups()[group].1.clone());
        let t = Transition1::random(s, g, &mut rng).unwrap();
        t.check_gamma().unwrap();
        prop_assert!(t.check_eta().is_ok());
    }

    #[test]
    fn skipping_degenerate_tetrahedra_changes_nothing(
        seed in any::<u64>(),
        shape in 0usize..8,
        xm in 0usize..4,
        general in any::<bool>(),
        mutate in any::<bool>(),
    ) {
        let mut rng = StdRng::seed_from_u64(seed);
        let s = shapes()[shape].clone();
        let xm = small_crossed_modules()[xm].clone();
        let c = if general {
            Cocycle2::random_general(s.clone(), xm.clone(), &mut rng).unwrap()
        } else {
            Cocycle2::random(s.clone(), xm.clone(), &mut rng).unwrap()
        };
        let c = if mutate {
            let mut g = c.g().to_vec();
            let t = rng.gen_range(0..g.len());
            g[t] = rng.gen_range(0..xm.h().order());
            let mut lambda = c.lambda().to_vec();
            if rng.gen_bool(0.3) {
                let p = rng.gen_range(0..lambda.len());
                lambda[p] = rng.gen_range(0..xm.d_group().order());
            }
            Cocycle2::new(s, xm, lambda, g, c.eta().map(<[usize]>::to_vec)).unwrap()
        } else {
            c
        };
        let all = c.validate_with(TetrahedronMode::All).map_err(|e| e.kind());
        let skipped = c.validate_with(TetrahedronMode::NonDegenerate).map_err(|e| e.kind());
        prop_assert_eq!(all, skipped);
    }

    #[test]
    fn semistrictify_is_idempotent(seed in any::<u64>(), shape in 0usize..8, xm in 0usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let c = Cocycle2::random_general(shapes()[shape].clone(), small_crossed_modules()[xm].clone(), &mut rng).unwrap();
        let once = semistrictify(&c).unwrap();
        let twice = semistrictify(&once.cocycle).unwrap();
        twice.forward.validate().unwrap();
        twice.unit.validate().unwrap();
        twice.counit.validate().unwrap();
        prop_assert_eq!(twice.forward.source(), &once.cocycle);
        prop_assert_eq!(&twice.cocycle, &once.cocycle);
    }

    #[test]
    fn inverse_gauges(seed in any::<u64>(), shape in 0usize..8, xm in 0usize..4) {
        let mut rng = StdRng::seed_from_u64(seed);
        let xm = small_crossed_modules()[xm].clone();
        let s = shapes()[shape].clone();
        let c = Cocycle2::random(s.clone(), xm.clone(), &mut rng).unwrap();
        let mu: Vec<usize> = (0..s.size(1)).map(|_| rng.gen_range(0..xm.d_group().order())).collect();
        let mut delta: Vec<usize> = (0..s.size(2)).map(|_| rng.gen_range(0..xm.h().order())).collect();
        for x in 0..s.size(1) {
            delta[s.apply(NerveMap::S0C1, x)] = xm.h().identity();
        }
        let m = Morphism2::from_gauge(&c, mu, delta).unwrap();
        m.validate().unwrap();
        let inv = m.inverse();
        inv.validate().unwrap();
        let id = m.compose(&inv).unwrap();
        let w = TwoMorphism2::new(id, Morphism2::identity(&c), vec![xm.h().identity(); s.size(1)]).unwrap();
        prop_assert!(w.validate().is_ok());
    }
}

#[test]
fn classify1_is_invariant_under_relabelling() {
    let s3 = groups::symmetric(3);
    let triangle = CoverShape::complex(&SimplicialComplex::hollow_triangle());
    let base = classify1(&triangle, &s3, DEFAULT_BUDGET).unwrap();
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..5 {
        let mut perm: Vec<usize> = (0..6).collect();
        use rand::seq::SliceRandom;
        perm.shuffle(&mut rng);
        let relabelled = s3.relabel(&perm).unwrap();
        let other = classify1(&triangle, &relabelled, DEFAULT_BUDGET).unwrap();
        assert_eq!(other.classes.len(), base.classes.len());
        let sizes = |c: &two_transit::transition1::Classification1| {
            let mut v: Vec<usize> = c.classes.iter().map(|k| k.size).collect();
            v.sort();
            v
        };
        assert_eq!(sizes(&other), sizes(&base));
        // the relabelled representatives are members of the original classes
        for class in &other.classes {
            let back: Vec<usize> = class.representative.iter().map(|&v| perm.iter().position(|&p| p == v).unwrap()).collect();
            let t = Transition1::new(triangle.clone(), s3.clone(), back).unwrap();
            t.validate().unwrap();
        }
    }
    // a rotated labelling of the triangle's vertices
    let rotated = CoverShape::complex(
        &SimplicialComplex::from_maximal(3, &[vec![1, 2], vec![0, 2], vec![0, 1]]).unwrap(),
    );
    assert_eq!(classify1(&rotated, &s3, DEFAULT_BUDGET).unwrap().classes.len(), 3);
}

fn holonomy_classes(g: &FiniteGroup, shape: &CoverShape, values: &[&[usize]], cycle: &[usize]) -> BTreeSet<usize> {
    values
        .iter()
        .map(|v| {
            let mut acc = g.identity();
            for i in 0..cycle.len() {
                let p = shape.find(&[cycle[i], cycle[(i + 1) % cycle.len()]]).unwrap();
                acc = g.mul(acc, v[p]);
            }
            g.class_representative(acc)
        })
        .collect()
}

#[test]
fn discrete_classification_matches_first_level() {
    for (name, g) in groups::small_groups() {
        let xm = Arc::new(CrossedModule::discrete(&g).unwrap());
        for s in shapes() {
            let one = classify1(&s, &g, DEFAULT_BUDGET).unwrap();
            let two = classify2(&s, &xm, DEFAULT_BUDGET).unwrap();
            assert_eq!(one.classes.len(), two.classes.len(), "{name}");
            let reps1: BTreeSet<&Vec<usize>> = one.classes.iter().map(|c| &c.representative).collect();
            let reps2: BTreeSet<&Vec<usize>> = two.classes.iter().map(|c| &c.lambda).collect();
            assert_eq!(reps1, reps2, "{name}");
            if s.find(&[0, 1]).is_some() && s.find(&[1, 2]).is_some() && s.find(&[2, 0]).is_some() {
                let v1: Vec<&[usize]> = one.classes.iter().map(|c| c.representative.as_slice()).collect();
                let v2: Vec<&[usize]> = two.classes.iter().map(|c| c.lambda.as_slice()).collect();
                assert_eq!(holonomy_classes(&g, &s, &v1, &[0, 1, 2]), holonomy_classes(&g, &s, &v2, &[0, 1, 2]));
            }
        }
    }
}

#[test]
fn triangle_classes_match_burnside_count() {
    let k = SimplicialComplex::hollow_triangle();
    let s = CoverShape::complex(&k);
    for (name, g) in groups::small_groups() {
        let c = classify1(&s, &g, DEFAULT_BUDGET).unwrap();
        assert_eq!(Some(c.classes.len()), oracle::graph_transition_classes(&k, &g), "{name}");
    }
}

#[test]
fn abelian_path_agrees_with_enumeration() {
    let complexes = [
        SimplicialComplex::hollow_triangle(),
        SimplicialComplex::simplex(2),
        SimplicialComplex::simplex(3),
        SimplicialComplex::boundary_of_simplex(3),
        SimplicialComplex::from_maximal(4, &[vec![0, 1, 2], vec![1, 3], vec![2, 3]]).unwrap(),
    ];
    let coefficients = [
        groups::cyclic(2),
        groups::cyclic(3),
        groups::direct_product(&groups::cyclic(2), &groups::cyclic(2)),
    ];
    let mut checked = 0;
    for k in &complexes {
        let s = Arc::new(CoverShape::complex(k));
        for a in &coefficients {
            let xm = Arc::new(CrossedModule::shifted(a).unwrap());
            let abelian = classify2_abelian(&s, &xm, DEFAULT_BUDGET).unwrap().unwrap();
            let ea = two_transit::linalg::ElementaryAbelian::recognise(a).unwrap();
            let expected = (ea.p as usize).pow((ea.rank() * oracle::h2_dimension(k, ea.p)) as u32);
            assert_eq!(abelian.classes.len(), expected);
            for c in &abelian.classes {
                c.cocycle(&s, &xm).validate().unwrap();
            }
            match classify2_generic(&s, &xm, 1 << 20) {
                Ok(generic) => {
                    assert_eq!(generic.classes.len(), expected);
                    let both = classify2(&s, &xm, 1 << 20).unwrap();
                    assert_eq!(both.method, Method::CrossChecked);
                    checked += 1;
                }
                Err(e) => {
                    assert_eq!(e.kind(), "BudgetExceeded");
                    assert_eq!(classify2(&s, &xm, 1 << 20).unwrap().method, Method::Abelian);
                }
            }
        }
    }
    assert!(checked >= 9);
}
