use proptest::prelude::*;
use twarrow::fibration::{inner_fibration, solve_lift, trivial_fibration, tw_cartesian, LiftingProblem};
use twarrow::io;
use twarrow::scaled::ScaledSet;
use twarrow::sset::{
    hom_enum, isomorphic, join, nerve, product, simplex_family, standard, FinitePoset, SimplexKind, SimplicialMap,
    SimplicialSet,
};

/// Posets on `0..n` whose relations respect the index order.
fn poset(max: usize) -> impl Strategy<Value = FinitePoset> {
    (1..=max).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let lt: Vec<(usize, usize)> = pairs.iter().zip(&keep).filter(|(_, k)| **k).map(|(p, _)| *p).collect();
            FinitePoset::from_relations((0..n).map(|i| i.to_string()).collect(), &lt).unwrap()
        })
    })
}

fn to_point(x: &SimplicialSet) -> SimplicialMap {
    SimplicialMap::from_vertex_map(x, &standard(0), &vec![0; x.count(0)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lifting_agrees_with_enumeration(
        p in poset(3),
        q in poset(2),
        n in 1usize..=3,
        i_seed in any::<usize>(),
        horn in any::<bool>(),
        pick in any::<usize>(),
    ) {
        let pr = product(&nerve(&p), &nerve(&q));
        let (x, y, proj) = (pr.set.clone(), nerve(&p), pr.pr1.clone());
        let k = if horn {
            simplex_family(SimplexKind::Horn, n, Some(i_seed % (n + 1))).unwrap()
        } else {
            simplex_family(SimplexKind::Boundary, n, None).unwrap()
        };
        let d = standard(n);
        let incl = SimplicialMap::from_vertex_map(&k, &d, &(0..=n).collect::<Vec<_>>()).unwrap();
        let tops = hom_enum(&k, &x);
        prop_assume!(!tops.is_empty());
        let top = &tops[pick % tops.len()];
        let down = top.then(&proj).unwrap();
        let bottoms: Vec<SimplicialMap> =
            hom_enum(&d, &y).into_iter().filter(|b| incl.then(b).unwrap().same_as(&down)).collect();
        prop_assume!(!bottoms.is_empty());
        let bottom = &bottoms[pick / tops.len() % bottoms.len()];
        let prob = LiftingProblem::new(incl.clone(), proj.clone(), top.clone(), bottom.clone()).unwrap();
        let brute = hom_enum(&d, &x)
            .into_iter()
            .any(|f| incl.then(&f).unwrap().same_as(top) && f.then(&proj).unwrap().same_as(bottom));
        let lift = solve_lift(&prob);
        prop_assert_eq!(lift.is_some(), brute);
        if let Some(f) = lift {
            prop_assert!(incl.then(&f).unwrap().same_as(top));
            prop_assert!(f.then(&proj).unwrap().same_as(bottom));
        }
    }

    #[test]
    fn poset_nerves_are_inner_fibrant(p in poset(4)) {
        prop_assert!(inner_fibration(&to_point(&nerve(&p)), 3).unwrap().passed());
    }

    #[test]
    fn product_projections_are_inner_fibrations(p in poset(3), q in poset(2)) {
        let pr = product(&nerve(&p), &nerve(&q));
        prop_assert!(inner_fibration(&pr.pr1, 3).unwrap().passed());
    }

    #[test]
    fn trivial_fibrations_are_surjective_on_vertices(p in poset(3)) {
        let x = nerve(&p);
        let r = trivial_fibration(&to_point(&x), 2).unwrap();
        // over a point, a trivial fibration is a contractible Kan complex;
        // a poset nerve is one only when the poset has one element
        prop_assert_eq!(r.passed(), p.len() == 1);
        if let Some(c) = r.counterexample {
            prop_assert!(solve_lift(&c.problem).is_none());
        }
    }

    #[test]
    fn tw_of_small_posets_is_cartesian(p in poset(3)) {
        prop_assert!(tw_cartesian(&ScaledSet::sharp(&nerve(&p)), 2).unwrap().passed());
    }

    #[test]
    fn json_round_trip_is_stable(p in poset(3), q in poset(2), use_join in any::<bool>()) {
        let x = if use_join { join(&nerve(&p), &nerve(&q)).set } else { product(&nerve(&p), &nerve(&q)).set };
        let text = io::to_text(&io::complex_to_json(&x));
        let back = io::complex_from_json(&io::parse(&text).unwrap()).unwrap();
        prop_assert!(isomorphic(&x, &back).is_some());
        prop_assert_eq!(io::to_text(&io::complex_to_json(&back)), text);
    }

    #[test]
    fn canonical_numbering_is_an_isomorphism(p in poset(4)) {
        let x = nerve(&p);
        let (c, iso) = io::canonical(&x).unwrap();
        prop_assert!(iso.is_isomorphism());
        prop_assert_eq!(io::canonical(&c).unwrap().0, c);
    }
}
