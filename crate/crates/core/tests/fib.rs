use std::sync::Arc;

use cylkit::category::{nerve, nerve_of_functor};
use cylkit::fib::*;
use cylkit::lifting::{solve_lift, Status, Witness};
use cylkit::ops::{isomorphic, opposite_map};
use cylkit::standard::*;
use cylkit::{FiniteCategory, Functor, SimplicialMap, SimplicialSet};

fn to_pt(x: &SimplicialSet) -> SimplicialMap {
    SimplicialMap::to_point(x, &point())
}

fn span() -> FiniteCategory {
    FiniteCategory::from_relations("Span", &["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap()
}

#[test]
fn classify_examples() {
    let c = FiniteCategory::ordinal(2);
    let d = FiniteCategory::ordinal(1);
    // the functor [2] -> [1] collapsing 0 and 1
    let f = Functor::new(Arc::new(c.clone()), Arc::new(d.clone()), vec![0, 0, 1], {
        let mut m = vec![0; c.morphism_count()];
        for g in 0..c.morphism_count() {
            let (s, t) = (c.source(g), c.target(g));
            let (fs, ft) = ([0, 0, 1][s], [0, 0, 1][t]);
            m[g] = d.hom(fs, ft)[0];
        }
        m
    })
    .unwrap();
    let nf = nerve_of_functor(&f, &nerve(&c, None).unwrap(), &nerve(&d, None).unwrap()).unwrap();
    assert_eq!(classify_fibration(&nf, FibrationKind::Inner, 3).status, Status::YesCertified);

    let v = classify_fibration(&to_pt(&simplex(1)), FibrationKind::Trivial, 2);
    assert_eq!(v.status, Status::No);
    let Some(Witness::Counterexample(sq)) = v.witness else { panic!() };
    assert_eq!(solve_lift(&sq, 1000).status, Status::No);
}

#[test]
fn left_right_duality() {
    let maps = vec![
        to_pt(&simplex(1)),
        to_pt(&horn(2, 0).unwrap()),
        horn_inclusion(2, 1).unwrap(),
        vertex_inclusion(1, 0),
        vertex_inclusion(2, 2),
        to_pt(&j_truncated(2)),
    ];
    for p in maps {
        for d in 1..=3 {
            let l = classify_fibration(&p, FibrationKind::Left, d).status;
            let r = classify_fibration(&opposite_map(&p), FibrationKind::Right, d).status;
            assert_eq!(l, r, "{:?} at {d}", p.source().name());
        }
    }
}

#[test]
fn quasicategories() {
    assert_eq!(is_quasicategory(&nerve(&span(), None).unwrap(), 4).status, Status::YesCertified);
    assert_eq!(is_quasicategory(&horn(2, 1).unwrap(), 3).status, Status::No);
    assert_eq!(is_quasicategory(&simplex(3), 4).status, Status::YesCertified);
}

#[test]
fn homotopy_category_of_nerves() {
    let cats = [
        FiniteCategory::ordinal(0),
        FiniteCategory::ordinal(3),
        FiniteCategory::parallel_pair(),
        span(),
        FiniteCategory::discrete(&["a", "b"]),
    ];
    for c in cats {
        let n = nerve(&c, None).unwrap();
        let ho = homotopy_category(&n, 3).unwrap();
        assert!(ho.composition_well_defined());
        assert_eq!(ho.category.morphism_count(), c.morphism_count());
        assert!(isomorphic(&nerve(&ho.category, None).unwrap(), &n), "{}", c.name());
    }
    let ho = homotopy_category(&simplex(3), 3).unwrap();
    assert!(isomorphic(&nerve(&ho.category, None).unwrap(), &simplex(3)));
}

#[test]
fn homotopy_category_of_truncated_iso() {
    let ho = homotopy_category(&j_truncated(3), 3).unwrap();
    let c = &ho.category;
    assert_eq!(c.object_count(), 2);
    assert_eq!(c.morphism_count(), 4);
    for a in 0..2 {
        for b in 0..2 {
            assert_eq!(c.hom(a, b).len(), 1);
        }
    }
    assert!((0..4).all(|f| c.is_isomorphism(f)));
}

#[test]
fn isofibrations() {
    let id = SimplicialMap::identity(&nerve(&span(), None).unwrap());
    let r = is_isofibration(&id, 3).unwrap();
    assert!(r.verdict.status.is_yes());
    assert_eq!(r.discrete, Some(true));

    let j = j_truncated(3);
    let end = SimplicialMap::constant(&point(), &j, j.find("0").unwrap());
    let r = is_isofibration(&end, 3).unwrap();
    assert_eq!(r.inner.status, Status::YesBounded);
    assert_eq!(r.verdict.status, Status::No);
    assert!(r.missing_lift.is_some());

    // the fibrewise check over a point is the plain check
    let pt = point();
    let v = fibrewise_isofibration(&end, &to_pt(&pt), &to_pt(&j), 3).unwrap();
    assert_eq!(v.status, Status::No);
    let v = fibrewise_isofibration(&id, &to_pt(id.source()), &to_pt(id.source()), 3).unwrap();
    assert!(v.status.is_yes());
}

#[test]
fn discrete_isofibration_of_a_projection() {
    let c = FiniteCategory::free_isomorphism();
    let i = FiniteCategory::free_isomorphism();
    let p = c.product(&i);
    let objects = (0..p.object_count()).map(|o| o % i.object_count()).collect();
    let mut morphisms = vec![0; p.morphism_count()];
    for f in 0..c.morphism_count() {
        for g in 0..i.morphism_count() {
            let name = format!("({},{})", c.morphism_name(f), i.morphism_name(g));
            morphisms[p.find_morphism(&name).unwrap()] = g;
        }
    }
    let proj = Functor::new(Arc::new(p), Arc::new(i), objects, morphisms).unwrap();
    assert!(is_isofibration_functor(&proj));
    assert!(!is_discrete_isofibration(&proj));
    // lifts of each iso: one per iso of C at the given object, counted directly
    for l in iso_lifts(&proj) {
        assert_eq!(l.lifts.len(), 2);
    }
}

#[test]
fn hom_spaces() {
    let c = FiniteCategory::parallel_pair();
    let n = nerve(&c, None).unwrap();
    let (a, b) = (n.find("a").unwrap(), n.find("b").unwrap());
    let h = hom_space(&n, a, b, 3).unwrap();
    assert_eq!(h.generator_counts(), vec![2]);

    let h = hom_space(&simplex(2), 0, 2, 3).unwrap();
    assert!(isomorphic(&h, &point()));
    let h = hom_space(&boundary(1), 0, 1, 3).unwrap();
    assert!(h.is_empty());

    // Δ[2] -> Δ[1] collapsing 0 and 1; over the edge 01 the hom-space from
    // 1 to 2 is a point
    let d1 = simplex(1);
    let e = d1.gen_simplex(d1.find("01").unwrap());
    let collapse = cylkit::colimits::classifying_map(&d1, d1.degeneracy(e, 0));
    let h = hom_space_over_edge(&collapse, 1, 2, e, 3).unwrap();
    assert!(isomorphic(&h, &point()));
    assert!(hom_space_over_edge(&collapse, 2, 1, e, 3).is_err());
}

#[test]
fn contractible_kan() {
    assert!(is_contractible_kan(&point(), 3).status.is_yes());
    let v = is_contractible_kan(&boundary(1), 3);
    assert_eq!(v.status, Status::No);
    let Some(Witness::Counterexample(sq)) = v.witness else { panic!() };
    // the square fills the missing edge of ∂Δ[1]
    assert_eq!(sq.left.target().dimension(), Some(1));
}

#[test]
fn equivalences_of_quasicategories() {
    let j = j_truncated(3);
    let v = qcat_equivalence(&to_pt(&j), 3).unwrap();
    assert_eq!(v.status, Status::YesBounded, "{:?}", v.notes);

    let v = qcat_equivalence(&vertex_inclusion(1, 0), 3).unwrap();
    assert_eq!(v.status, Status::No);
    let n = nerve(&span(), None).unwrap();
    assert_eq!(qcat_equivalence(&SimplicialMap::identity(&n), 3).unwrap().status, Status::YesCertified);
    assert!(qcat_equivalence(&to_pt(&horn(2, 1).unwrap()), 3).is_err());
}

#[test]
fn inn2triv_examples() {
    let r = check_inn2triv(&SimplicialMap::identity(&simplex(2)), 3).unwrap();
    assert!(r.trivial.status.is_yes() && r.edges.status.is_yes() && r.homs.status.is_yes());
    assert!(r.agree);

    let r = check_inn2triv(&boundary_inclusion(1), 3).unwrap();
    assert_eq!(r.trivial.status, Status::No);
    assert_eq!(r.edges.status, Status::No);
    assert_eq!(r.homs.status, Status::No);
    assert!(r.agree);

    let r = check_inn2triv(&to_pt(&j_truncated(3)), 3).unwrap();
    assert!(r.trivial.status.is_yes(), "{:?}", r.trivial.status);
    assert!(r.edges.status.is_yes(), "{:?}", r.edges.status);
    assert!(r.homs.status.is_yes(), "{:?}", r.homs.status);
}

#[test]
fn paraequiv_examples() {
    let x = simplex(1);
    let id = SimplicialMap::identity(&x);
    let r = check_paraequiv(&id, &id, &id, 3).unwrap();
    assert!(r.fibres.status.is_yes() && r.sections.status.is_yes() && r.pointwise.status.is_yes());
    assert!(r.agree);

    // Δ[1] into Δ[1] ⊔ {e} with e over 1
    let mut b = x.to_builder();
    b.add("e", 0);
    let y = b.build().unwrap();
    let u = SimplicialMap::by_names(&x, &y).unwrap();
    let images = y
        .all_generators()
        .map(|g| if y.gen_name(g.generator()) == "e" { x.gen_simplex(x.find("1").unwrap()) } else { g_to(&x, &y, g) })
        .collect();
    let q = SimplicialMap::new(y.clone(), x.clone(), images).unwrap();
    let r = check_paraequiv(&u, &id, &q, 3).unwrap();
    assert_eq!(r.fibres.status, Status::No);
    assert_eq!(r.pointwise.status, Status::No);
}

fn g_to(x: &SimplicialSet, y: &SimplicialSet, g: cylkit::Simplex) -> cylkit::Simplex {
    x.gen_simplex(x.find(y.gen_name(g.generator())).unwrap())
}

#[test]
fn function_spaces() {
    let pt = point();
    let x = simplex(2);
    let f = fun_over(&SimplicialMap::identity(&pt), &to_pt(&x), 2).unwrap();
    assert!(isomorphic(&f.set, &x));

    let d1 = simplex(1);
    let id = SimplicialMap::identity(&d1);
    let f = fun_over(&id, &id, 2).unwrap();
    assert!(isomorphic(&f.set, &pt));

    let f = fun_over(&to_pt(&d1), &to_pt(&d1), 2).unwrap();
    assert_eq!(f.set.generator_range(0).len(), 3);
}
