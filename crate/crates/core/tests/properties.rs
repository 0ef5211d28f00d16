use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cylkit::cylinders::corpus::{random_subcylinder, small_ends};
use cylkit::cylinders::presheaf::{from_presheaf, iso_by_names, to_presheaf};
use cylkit::cylinders::{dual_cylinder, pushforward, same_cylinder};
use cylkit::join::Join;
use cylkit::lifting::soa::{soa_factor, SoaOptions};
use cylkit::lifting::Family;
use cylkit::ops::{face_closure, opposite, subcomplex};
use cylkit::standard::*;
use cylkit::{MonotoneMap, SimplicialMap, SimplicialSet};

fn monotone(source: usize, target: usize) -> impl Strategy<Value = MonotoneMap> {
    prop::collection::vec(0..=target, source + 1).prop_map(move |mut v| {
        v.sort();
        MonotoneMap::new(target, v).unwrap()
    })
}

fn composable_triple() -> impl Strategy<Value = (MonotoneMap, MonotoneMap, MonotoneMap)> {
    (0..=6usize, 0..=6usize, 0..=6usize, 0..=6usize)
        .prop_flat_map(|(a, b, c, d)| (monotone(a, b), monotone(b, c), monotone(c, d)))
}

/// A face-closed subcomplex of `Δ[3]` grown from random seeds.
fn sub_simplex() -> impl Strategy<Value = SimplicialSet> {
    prop::collection::vec(any::<bool>(), 15).prop_map(|picks| {
        let d = simplex(3);
        let seeds: Vec<usize> = (0..d.generator_count()).filter(|&g| picks[g]).collect();
        let keep = face_closure(&d, &seeds);
        subcomplex(&d, &keep, "K").unwrap().0
    })
}

proptest! {
    #[test]
    fn composition_associates((f, g, h) in composable_triple()) {
        let lhs = f.then(&g).unwrap().then(&h).unwrap();
        let rhs = f.then(&g.then(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn factorization_recomposes(f in (0..=6usize, 0..=6usize).prop_flat_map(|(a, b)| monotone(a, b))) {
        let em = f.epi_mono_factor();
        prop_assert!(em.epi.is_surjective());
        prop_assert!(em.mono.is_injective());
        prop_assert_eq!(MonotoneMap::compose(&em.mono, &em.epi).unwrap(), f);
    }

    #[test]
    fn act_is_functorial(x in sub_simplex(), n in 0..=3usize, pick in any::<prop::sample::Index>(),
                         k in 0..=4usize, j in 0..=4usize, seed in any::<u64>()) {
        let level = x.simplices_at(n);
        prop_assume!(!level.is_empty());
        let s = *pick.get(&level);
        let thetas = MonotoneMap::all(k, n);
        let phis = MonotoneMap::all(j, k);
        let theta = &thetas[(seed as usize) % thetas.len()];
        let phi = &phis[(seed as usize / 7) % phis.len()];
        let lhs = x.act(x.act(s, theta).unwrap(), phi).unwrap();
        let rhs = x.act(s, &phi.then(theta).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn opposite_is_an_involution(x in sub_simplex()) {
        prop_assert_eq!(opposite(&opposite(&x)), x);
    }

    #[test]
    fn join_counts(a in sub_simplex(), b in sub_simplex()) {
        let j = Join::new(&a, &b).object;
        for n in 0..=4 {
            let mixed: u128 = (0..n).map(|i| a.count_at(i) * b.count_at(n - 1 - i)).sum();
            prop_assert_eq!(j.count_at(n), a.count_at(n) + b.count_at(n) + mixed);
        }
    }

    #[test]
    fn inner_horn_factorizations_recompose(x in sub_simplex()) {
        let u = inclusion(&x, &simplex(3));
        prop_assume!(u.is_mono());
        let mut opts = SoaOptions::new(Family::InnerHorns, 3);
        opts.stage_budget = 2;
        let f = soa_factor(&u, &opts).unwrap();
        prop_assert!(f.replay());
        prop_assert_eq!(f.left.then(&f.right).unwrap(), u);
    }

    #[test]
    fn cylinder_round_trips(seed in any::<u64>(), ia in 0..3usize, ib in 0..3usize) {
        let ends = small_ends();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_subcylinder(&mut rng, &ends[ia], &ends[ib]);
        let dd = dual_cylinder(&dual_cylinder(&x).unwrap()).unwrap();
        prop_assert!(same_cylinder(&dd, &x));
        let p = to_presheaf(&x, x.total.dim_or_zero().max(1));
        let y = from_presheaf(&p, "Y").unwrap();
        prop_assert!(iso_by_names(&x, &y).is_some());
    }

    #[test]
    fn pushforward_preserves_monos(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (simplex(1), point());
        let small = random_subcylinder(&mut rng, &a, &b);
        let big = cylkit::cylinders::terminal(&a, &b);
        let phi = SimplicialMap::by_names(&small.total, &big.total).unwrap();
        let u = SimplicialMap::to_point(&a, &point());
        let v = SimplicialMap::identity(&b);
        let ps = pushforward(&u, &v, &small).unwrap();
        let pb = pushforward(&u, &v, &big).unwrap();
        prop_assert!(ps.map_to(&phi, &pb).unwrap().is_mono());
    }
}
