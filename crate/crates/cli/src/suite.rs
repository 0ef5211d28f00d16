//! The acceptance battery as a subcommand.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cylkit::category::{nerve, nerve_of_functor};
use cylkit::cylinders::collage::collage_nerve;
use cylkit::cylinders::corpus::*;
use cylkit::cylinders::division::{check_leibniz_lifts, verify_division_adjunction};
use cylkit::cylinders::presheaf::{from_presheaf, iso_by_names, to_presheaf};
use cylkit::cylinders::reedy::{is_ambifibrant, verify_tfae};
use cylkit::cylinders::*;
use cylkit::fib::*;
use cylkit::join::simplex_join_iso;
use cylkit::lifting::anodyne::*;
use cylkit::lifting::{solve_lift, Status, Witness, DEFAULT_NODE_LIMIT};
use cylkit::ops::{isomorphic, opposite_map};
use cylkit::standard::*;
use cylkit::{FiniteCategory, Functor, MonotoneMap, SimplicialMap, SimplicialSet};

use crate::report::{Entry, RunConfig};
use crate::{Failure, Outcome as CmdOutcome, Output};

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn to_pt(x: &SimplicialSet) -> SimplicialMap {
    SimplicialMap::to_point(x, &point())
}

fn binomial(n: usize, k: usize) -> u128 {
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Every function `[n] -> [m]`, kept when monotone.
fn brute_monotone(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = (m + 1).pow((n + 1) as u32);
    for code in 0..total {
        let mut c = code;
        let v: Vec<usize> = (0..=n)
            .map(|_| {
                let d = c % (m + 1);
                c /= m + 1;
                d
            })
            .collect();
        if v.windows(2).all(|w| w[0] <= w[1]) {
            out.push(v);
        }
    }
    out
}

fn c01_join_laws(_seed: u64) -> Outcome {
    for m in 0..=3 {
        for n in 0..=3 {
            let iso = simplex_join_iso(m, n);
            ensure!(iso.is_iso(), "Δ[{m}]⋆Δ[{n}] -> Δ[{}] is not an iso", m + n + 1);
            let d = simplex(m + 1 + n);
            ensure!(isomorphic(iso.target(), &d), "wrong target");
            let j = iso.source();
            for k in 0..=m + 1 + n {
                ensure!(
                    j.generator_counts().get(k).copied().unwrap_or(0) as u128 == binomial(m + n + 2, k + 1),
                    "Δ[{m}]⋆Δ[{n}] has the wrong number of {k}-simplices"
                );
            }
            // vertices of the left factor go first, in order
            let jn = cylkit::join::Join::new(&simplex(m), &simplex(n));
            ensure!(&jn.object == j, "source is not the join");
            let name = |g: usize| iso.target().gen_name(iso.image_of_gen(g).generator()).to_string();
            for i in 0..=m {
                ensure!(name(jn.left_generator(i)) == i.to_string(), "left vertex {i} goes to {}", name(jn.left_generator(i)));
            }
            for i in 0..=n {
                ensure!(name(jn.right_generator(i)) == (m + 1 + i).to_string(), "right vertex {i} goes to {}", name(jn.right_generator(i)));
            }
        }
    }
    Ok(())
}

fn c02_level_counts(_seed: u64) -> Outcome {
    for m in 0..=5 {
        let d = simplex(m);
        for n in 0..=5 {
            let expected = binomial(m + n + 1, m);
            let brute = brute_monotone(n, m).len() as u128;
            ensure!(brute == expected, "brute force disagrees with C({},{m})", m + n + 1);
            ensure!(d.count_at(n) == expected, "|Δ[{m}]_{n}| = {}", d.count_at(n));
            ensure!(d.simplices_at(n).len() as u128 == expected, "enumeration of Δ[{m}]_{n}");
            ensure!(MonotoneMap::all(n, m).len() as u128 == expected, "Δ([{n}],[{m}])");
        }
    }
    Ok(())
}

fn ez_pool() -> Vec<SimplicialSet> {
    let span = FiniteCategory::from_relations("Span", &["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
    vec![
        simplex(3),
        boundary(3),
        horn(3, 1).unwrap(),
        j_truncated(3),
        nerve(&span, None).unwrap(),
        nerve(&FiniteCategory::parallel_pair(), Some(4)).unwrap(),
        cylkit::join::Join::new(&boundary(1), &spine(2)).object,
    ]
}

fn c03_ez_discipline(seed: u64) -> Outcome {
    let pool = ez_pool();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for sample in 0..1000 {
        let x = &pool[rng.gen_range(0..pool.len())];
        let n = rng.gen_range(0..=4);
        let level = x.simplices_at(n);
        if level.is_empty() {
            continue;
        }
        let s = level[rng.gen_range(0..level.len())];
        // exactly one (nondegenerate x, surjection σ) with σ*x = s
        let mut decompositions = 0;
        for g in x.all_generators() {
            for sigma in MonotoneMap::all(n, g.dim()).into_iter().filter(|f| f.is_surjective()) {
                if x.act(g, &sigma).unwrap() == s {
                    decompositions += 1;
                }
            }
        }
        ensure!(decompositions == 1, "sample {sample}: {} has {decompositions} normal forms", x.show(s));
        // (s θ) φ = s (θ φ)
        let k = rng.gen_range(0..=4);
        let j = rng.gen_range(0..=4);
        let thetas = MonotoneMap::all(k, n);
        let phis = MonotoneMap::all(j, k);
        let theta = &thetas[rng.gen_range(0..thetas.len())];
        let phi = &phis[rng.gen_range(0..phis.len())];
        let lhs = x.act(x.act(s, theta).unwrap(), phi).unwrap();
        let rhs = x.act(s, &phi.then(theta).unwrap()).unwrap();
        ensure!(lhs == rhs, "sample {sample}: act is not functorial on {}", x.show(s));
        // vertices of the result are read off directly
        let vs = x.vertices(s);
        let expected: Vec<usize> = phi.values().iter().map(|&i| vs[theta.apply(i)]).collect();
        ensure!(x.vertices(lhs) == expected, "sample {sample}: vertices");
    }
    Ok(())
}

fn c04_quasicategories(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..10 {
        let c = FiniteCategory::random(&mut rng, 4, &format!("C{i}"));
        let n = nerve(&c, None).unwrap();
        let v = is_quasicategory(&n, 4);
        ensure!(v.status == Status::YesCertified, "N({}) is {}", c.name(), v.status);
    }
    let v = is_quasicategory(&horn(2, 1).unwrap(), 4);
    ensure!(v.status == Status::No, "Λ¹[2] is {}", v.status);
    match v.witness {
        Some(Witness::Counterexample(sq)) => {
            ensure!(sq.left.source().generator_counts() == vec![3, 2], "witness is not a Λ¹[2] horn");
            ensure!(solve_lift(&sq, DEFAULT_NODE_LIMIT).status == Status::No, "witness horn fills");
        }
        other => return Err(format!("no horn witness: {other:?}")),
    }
    Ok(())
}

fn c05_spines(_seed: u64) -> Outcome {
    for n in 2..=4 {
        let u = spine_inclusion(n);
        let r = certify_inner_anodyne(&u, &AnodyneOptions::default()).map_err(|e| e.to_string())?;
        ensure!(r.verdict.status == Status::YesCertified, "I[{n}] -> Δ[{n}] is {}", r.verdict.status);
        match &r.verdict.witness {
            Some(Witness::Certificate(c)) => ensure!(c.replay(&u), "certificate for n = {n} does not replay"),
            other => return Err(format!("no certificate for n = {n}: {other:?}")),
        }
    }
    Ok(())
}

fn c06_absolute_wce(_seed: u64) -> Outcome {
    let opts = AnodyneOptions::default();
    for n in 2..=3 {
        for k in 1..n {
            let v = is_absolute_wce(&horn_inclusion(n, k).unwrap(), &opts).map_err(|e| e.to_string())?.verdict;
            ensure!(v.status.is_yes(), "Λ^{k}[{n}] -> Δ[{n}] is {}", v.status);
        }
    }
    let u = boundary_inclusion(1);
    let v = is_absolute_wce(&u, &opts).map_err(|e| e.to_string())?.verdict;
    ensure!(v.status == Status::No, "∂Δ[1] -> Δ[1] is {}", v.status);
    match v.witness {
        Some(Witness::Refutation { fibration, square, .. }) => {
            ensure!(classify_fibration(&fibration, FibrationKind::Inner, 4).status.is_yes(), "refuting map is not an inner fibration");
            ensure!(square.left == u && square.right == fibration, "square is not against the refuting map");
            ensure!(solve_lift(&square, DEFAULT_NODE_LIMIT).status == Status::No, "refuting square has a lift");
        }
        other => return Err(format!("no refutation: {other:?}")),
    }
    Ok(())
}

fn c07_right_cancellation(_seed: u64) -> Outcome {
    let opts = AnodyneOptions::default();
    let (mut checked, mut seed) = (0, 0u64);
    while checked < 20 && seed < 500 {
        let n = 2 + (seed % 3) as usize;
        seed += 1;
        let Some((u, v)) = seeded_inner_pair(n, seed) else { continue };
        let rc = right_cancellation_check(&u, &v, &opts).map_err(|e| e.to_string())?;
        ensure!(!rc.contradiction(), "seed {seed}: v refuted");
        if rc.u.status == Status::YesCertified && rc.vu.status == Status::YesCertified {
            ensure!(rc.v.status == Status::YesCertified, "seed {seed}: v is {}", rc.v.status);
            checked += 1;
        }
    }
    ensure!(checked == 20, "only {checked} pairs with u and vu certified");
    Ok(())
}

fn c08_tfae(_seed: u64) -> Outcome {
    for (name, a, b) in soa_pairs() {
        let x = soa_cylinder(&a, &b, 3, 4).map_err(|e| e.to_string())?;
        let r = verify_tfae(&x, 4);
        ensure!(!r.contradiction, "{name}: inner {} reedy {} local {}", r.inner.status, r.reedy.status, r.local.status);
    }
    Ok(())
}

/// Projection `C × E -> C` as a functor.
fn projection(c: &FiniteCategory, e: &FiniteCategory) -> Functor {
    let p = c.product(e);
    let objects = (0..p.object_count())
        .map(|o| (0..c.object_count()).find(|&a| (0..e.object_count()).any(|x| p.find_object(&format!("({},{})", c.object_name(a), e.object_name(x))) == Some(o))).unwrap())
        .collect();
    let mut morphisms = vec![0; p.morphism_count()];
    for f in 0..c.morphism_count() {
        for g in 0..e.morphism_count() {
            let m = p.find_morphism(&format!("({},{})", c.morphism_name(f), e.morphism_name(g))).unwrap();
            morphisms[m] = f;
        }
    }
    Functor::new(Arc::new(p), Arc::new(c.clone()), objects, morphisms).unwrap()
}

fn c09_inn2triv(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trivial = 0;
    for i in 0..10 {
        let c = FiniteCategory::random(&mut rng, 2, &format!("C{i}"));
        let e = FiniteCategory::random(&mut rng, 2, &format!("E{i}"));
        let f = projection(&c, &e);
        let p = nerve_of_functor(&f, &nerve(&f.source, None).unwrap(), &nerve(&c, None).unwrap()).map_err(|e| e.to_string())?;
        let r = check_inn2triv(&p, 3).map_err(|e| e.to_string())?;
        ensure!(r.agree, "{}: {} {} {}", p.source().name(), r.trivial.status, r.edges.status, r.homs.status);
        let expect = e.object_count() == 1;
        ensure!(r.trivial.status.is_yes() == expect, "{}: trivial is {}", p.source().name(), r.trivial.status);
        trivial += expect as usize;
    }
    ensure!(trivial > 0 && trivial < 10, "corpus is one-sided");
    let r = check_inn2triv(&boundary_inclusion(1), 3).map_err(|e| e.to_string())?;
    for (what, v) in [("trivial", &r.trivial), ("edges", &r.edges), ("homs", &r.homs)] {
        ensure!(v.status == Status::No, "∂Δ[1] -> Δ[1]: {what} is {}", v.status);
        ensure!(v.witness.is_some(), "∂Δ[1] -> Δ[1]: {what} has no witness");
        if let Some(Witness::Counterexample(sq)) = &v.witness {
            ensure!(solve_lift(sq, DEFAULT_NODE_LIMIT).status == Status::No, "{what}: witness square has a lift");
        }
    }
    Ok(())
}

fn c10_adjunctions(seed: u64) -> Outcome {
    for (name, m, s, x) in tiny_triples(10) {
        let r = verify_division_adjunction(&m, &s, &x).map_err(|e| e.to_string())?;
        ensure!(r.bijective && r.left == r.middle && r.right == r.middle, "{name}: {r:?}");
    }
    for (name, f, n, g, t, x) in tiny_lifting_data(10) {
        let r = check_leibniz_lifts(&f, &n, &g, &t, &x).map_err(|e| e.to_string())?;
        ensure!(r.agree(), "{name}: {r:?}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for x in random_cylinders(&mut rng, 10) {
        let p = to_presheaf(&x, x.total.dim_or_zero().max(1));
        let y = from_presheaf(&p, x.total.name()).map_err(|e| e.to_string())?;
        ensure!(iso_by_names(&x, &y).is_some(), "round trip changed {}", x.total.name());
    }
    for (a, b) in [(simplex(1), spine(2)), (boundary(1), simplex(0))] {
        ensure!(to_presheaf(&terminal(&a, &b), 3).is_constant(1), "terminal is not constant singleton");
        ensure!(to_presheaf(&initial(&a, &b), 3).is_constant(0), "initial is not constant empty");
    }
    Ok(())
}

fn c11_duality(seed: u64) -> Outcome {
    let mut corpus = vec![
        to_pt(&simplex(1)),
        to_pt(&horn(2, 0).unwrap()),
        to_pt(&horn(2, 2).unwrap()),
        horn_inclusion(2, 1).unwrap(),
        vertex_inclusion(1, 0),
        vertex_inclusion(2, 2),
        boundary_inclusion(1),
        to_pt(&j_truncated(2)),
    ];
    for (_, x) in tiny_cylinders() {
        corpus.push(x.structure.clone());
        corpus.push(x.canonical(&x.join()));
    }
    for p in &corpus {
        let l = classify_fibration(p, FibrationKind::Left, 3).status;
        let r = classify_fibration(&opposite_map(p), FibrationKind::Right, 3).status;
        ensure!(l == r, "{} -> {}: left {l}, right of opposite {r}", p.source().name(), p.target().name());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for x in random_cylinders(&mut rng, 10).into_iter().chain(tiny_cylinders().into_iter().map(|p| p.1)) {
        let d = dual_cylinder(&x).map_err(|e| e.to_string())?;
        let dd = dual_cylinder(&d).map_err(|e| e.to_string())?;
        ensure!(same_cylinder(&dd, &x), "dual is not an involution on {}", x.total.name());
    }
    Ok(())
}

fn c12_collages(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (m, x) in collage_corpus(&mut rng, 10, 3) {
        let name = m.collage().map_err(|e| e.to_string())?.name().to_string();
        let v = is_ambifibrant(&x, 4);
        ensure!(v.status.is_yes(), "{name}: ambifibrant is {}", v.status);
        let ho = ho_functor(&x.structure, 4).map_err(|e| e.to_string())?;
        ensure!(is_discrete_isofibration(&ho.functor), "{name}: ho is not a discrete isofibration");
        let again = collage_nerve(&m, None).map_err(|e| e.to_string())?;
        ensure!(same_cylinder(&again, &x), "{name}: collage nerve is not deterministic");
    }
    Ok(())
}

fn c13_pushforward_pullback(seed: u64) -> Outcome {
    use cylkit::standard::point as pt;
    let (a, b) = (simplex(1), pt());
    let (a2, b2) = (pt(), boundary(1));
    let u = SimplicialMap::to_point(&a, &a2);
    let v = SimplicialMap::constant(&b, &b2, 1);
    let p = pushforward(&u, &v, &initial(&a, &b)).map_err(|e| e.to_string())?;
    ensure!(isomorphic(&p.cylinder.total, &initial(&a2, &b2).total), "pushforward of initial");
    let q = pullback_cyl(&u, &v, &terminal(&a2, &b2)).map_err(|e| e.to_string())?;
    ensure!(isomorphic(&q.cylinder.total, &terminal(&a, &b).total), "pullback of terminal");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..5 {
        let x = random_subcylinder(&mut rng, &a, &b);
        let y = random_subcylinder(&mut rng, &a2, &b2);
        ensure!(check_triangle_identities(&u, &v, &x, &y).map_err(|e| e.to_string())?, "instance {i}: triangle identities fail");
    }
    Ok(())
}

fn c14_truncated_iso(_seed: u64) -> Outcome {
    let j = j_truncated(3);
    let end = SimplicialMap::constant(&point(), &j, j.find("0").ok_or("no vertex 0")?);
    let r = is_isofibration(&end, 3).map_err(|e| e.to_string())?;
    ensure!(r.inner.status == Status::YesBounded, "inner is {}", r.inner.status);
    ensure!(r.verdict.status == Status::No, "isofibration is {}", r.verdict.status);
    Ok(())
}

type Check = fn(u64) -> Outcome;

const CRITERIA: [(&str, &str, Check); 14] = [
    ("join", "join of simplices is a simplex", c01_join_laws),
    ("levels", "level counts of Δ[m]", c02_level_counts),
    ("ez", "Eilenberg-Zilber normal forms", c03_ez_discipline),
    ("quasicategory", "quasi-category detection", c04_quasicategories),
    ("spine", "spine inclusions are inner anodyne", c05_spines),
    ("wce", "absolute weak categorical equivalences", c06_absolute_wce),
    ("cancellation", "right cancellation", c07_right_cancellation),
    ("tfae", "ambifibrant, Reedy and local agree", c08_tfae),
    ("inn2triv", "trivial fibrations among inner fibrations", c09_inn2triv),
    ("adjunction", "division and Leibniz adjunctions", c10_adjunctions),
    ("duality", "duality", c11_duality),
    ("collage", "collage ambifibrancy", c12_collages),
    ("pushforward", "pushforward and pullback", c13_pushforward_pullback),
    ("j", "truncated free isomorphism", c14_truncated_iso),
];

fn selected(only: Option<&str>, i: usize, tag: &str) -> bool {
    match only {
        None => true,
        Some(s) => s.split(',').any(|t| {
            let t = t.trim();
            t == tag || t.parse::<usize>().ok() == Some(i + 1)
        }),
    }
}

pub fn run(only: Option<&str>, config: &RunConfig) -> CmdOutcome {
    let mut entries = Vec::new();
    for (i, (tag, name, check)) in CRITERIA.iter().enumerate() {
        if !selected(only, i, tag) {
            continue;
        }
        let seed = config.seed;
        let outcome = catch_unwind(AssertUnwindSafe(|| check(seed))).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let label = format!("criterion {} ({tag}): {name}", i + 1);
        entries.push(match outcome {
            Ok(()) => Entry::fact(label, true),
            Err(why) => Entry::fact(label, false).with_note(why),
        });
    }
    if entries.is_empty() {
        return Err(Failure::Usage(format!("no criterion matches `{}`", only.unwrap_or(""))));
    }
    Ok(Output::entries(entries))
}
