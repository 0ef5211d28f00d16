use cylkit::category::nerve;
use cylkit::colimits::{pullback, pushout};
use cylkit::fib::{classify_fibration, FibrationKind};
use cylkit::join::{leibniz_join, Join};
use cylkit::lifting::{all_maps, solve_lift, LiftingProblem, Status, Witness, DEFAULT_NODE_LIMIT};
use cylkit::ops::isomorphic;
use cylkit::standard::*;
use cylkit::{FiniteCategory, MonotoneMap, SimplicialMap, SimplicialSet};

const LIMIT: u64 = DEFAULT_NODE_LIMIT;

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |r, i| r * (n - i) / (i + 1))
}

#[test]
fn composition_is_associative() {
    for a in 0..=3 {
        for b in 0..=3 {
            for c in 0..=3 {
                for d in 0..=3 {
                    let fs = MonotoneMap::all(a, b);
                    let gs = MonotoneMap::all(b, c);
                    let hs = MonotoneMap::all(c, d);
                    for f in &fs {
                        for g in &gs {
                            let gf = f.then(g).unwrap();
                            for h in &hs {
                                let lhs = gf.then(h).unwrap();
                                let rhs = f.then(&g.then(h).unwrap()).unwrap();
                                assert_eq!(lhs, rhs);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn epi_mono_round_trip() {
    for n in 0..=5 {
        for k in 0..=n {
            for p in k..=5 {
                let epis: Vec<_> = MonotoneMap::all(n, k).into_iter().filter(|e| e.is_surjective()).collect();
                let monos: Vec<_> = MonotoneMap::all(k, p).into_iter().filter(|m| m.is_injective()).collect();
                assert_eq!(epis.len(), binomial(n, k));
                assert_eq!(monos.len(), binomial(p + 1, k + 1));
                for e in &epis {
                    for m in &monos {
                        let f = MonotoneMap::compose(m, e).unwrap();
                        let em = f.epi_mono_factor();
                        assert_eq!((&em.epi, &em.mono), (e, m));
                    }
                }
            }
        }
    }
}

#[test]
fn cosimplicial_identities() {
    let d = |n, i| MonotoneMap::face(n, i).unwrap();
    let s = |n, i| MonotoneMap::degeneracy(n, i).unwrap();
    let c = |outer: &MonotoneMap, inner: &MonotoneMap| MonotoneMap::compose(outer, inner).unwrap();
    // δ: [n-1] -> [n], σ: [n+1] -> [n]
    for n in 1..=6 {
        for j in 0..=n + 1 {
            for i in 0..j {
                assert_eq!(c(&d(n + 1, j), &d(n, i)), c(&d(n + 1, i), &d(n, j - 1)));
            }
        }
        for j in 0..n {
            for i in 0..=j {
                assert_eq!(c(&s(n - 1, j), &s(n, i)), c(&s(n - 1, i), &s(n, j + 1)));
            }
        }
        for j in 0..n {
            for i in 0..=n + 1 {
                let lhs = c(&s(n, j), &d(n + 1, i));
                let expected = if i < j {
                    c(&d(n, i), &s(n - 1, j - 1))
                } else if i == j || i == j + 1 {
                    MonotoneMap::identity(n)
                } else {
                    c(&d(n, i - 1), &s(n - 1, j))
                };
                assert_eq!(lhs, expected, "σ_{j} δ_{i} at {n}");
            }
        }
    }
}

fn pool() -> Vec<SimplicialSet> {
    let span = FiniteCategory::from_relations("Span", &["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
    vec![
        simplex(4),
        boundary(3),
        horn(4, 2).unwrap(),
        j_truncated(2),
        nerve(&span, None).unwrap(),
        Join::new(&boundary(1), &spine(2)).object,
    ]
}

#[test]
fn eilenberg_zilber_uniqueness() {
    for x in pool() {
        for n in 0..=6 {
            let level = x.simplices_at(n);
            let expected: usize = x.all_generators().map(|g| if g.dim() <= n { binomial(n, g.dim()) } else { 0 }).sum();
            assert_eq!(level.len(), expected, "{} at {n}", x.name());
            let mut seen = std::collections::HashSet::new();
            for s in &level {
                assert!(seen.insert(*s));
                let g = x.gen_simplex(s.generator());
                assert_eq!(x.act(g, &s.degeneracy_operator()).unwrap(), *s);
                let w = s.degeneracy_word();
                assert!(w.windows(2).all(|p| p[0] > p[1]));
            }
        }
    }
}

fn level_injective(f: &SimplicialMap, n: usize) -> bool {
    let mut seen = std::collections::HashSet::new();
    f.source().simplices_at(n).into_iter().all(|s| seen.insert(f.apply(s)))
}

#[test]
fn monos_are_levelwise_injective() {
    let mut maps = vec![
        boundary_inclusion(2),
        horn_inclusion(3, 1).unwrap(),
        spine_inclusion(3),
        SimplicialMap::to_point(&simplex(1), &point()),
        SimplicialMap::to_point(&boundary(1), &point()),
    ];
    let x = simplex(2);
    maps.extend(all_maps(&boundary(1), &x, LIMIT).unwrap());
    maps.extend(all_maps(&spine(2), &x, LIMIT).unwrap());
    for f in maps {
        let brute = (0..=f.source().dim_or_zero() + 1).all(|n| level_injective(&f, n));
        assert_eq!(f.is_mono(), brute, "{} -> {}", f.source().name(), f.target().name());
    }
}

#[test]
fn join_associativity_and_levels() {
    let sets = [empty(), point(), simplex(1), boundary(1)];
    for a in &sets {
        for b in &sets {
            let ab = Join::new(a, b).object;
            for n in 0..=5 {
                let mut expected = a.count_at(n) + b.count_at(n);
                for i in 0..n {
                    expected += a.count_at(i) * b.count_at(n - 1 - i);
                }
                assert_eq!(ab.count_at(n), expected, "({} ⋆ {})_{n}", a.name(), b.name());
            }
            for c in &sets {
                let left = Join::new(&ab, c).object;
                let right = Join::new(a, &Join::new(b, c).object).object;
                assert!(isomorphic(&left, &right));
            }
        }
    }
}

#[test]
fn leibniz_joins_of_monos() {
    let monos = [
        SimplicialMap::from_empty(&empty(), &point()),
        boundary_inclusion(1),
        vertex_inclusion(1, 1),
        horn_inclusion(2, 1).unwrap(),
    ];
    for f in &monos {
        for g in &monos {
            let l = leibniz_join(f, g).unwrap();
            assert!(l.map.is_mono());
            assert_eq!(l.map.target(), &Join::new(f.target(), g.target()).object);
        }
    }
}

#[test]
fn pushout_universal_property() {
    let spans = [
        (boundary_inclusion(1), boundary_inclusion(1)),
        (vertex_inclusion(1, 1), vertex_inclusion(1, 0)),
        (horn_inclusion(2, 1).unwrap(), SimplicialMap::to_point(&horn(2, 1).unwrap(), &point())),
    ];
    let targets = [simplex(1), simplex(2), boundary(2)];
    for (f, g) in &spans {
        let p = pushout(f, g).unwrap();
        for z in &targets {
            let hb = all_maps(f.target(), z, LIMIT).unwrap();
            let hc = all_maps(g.target(), z, LIMIT).unwrap();
            let mut cocones = 0;
            for x in &hb {
                for y in &hc {
                    if f.then(x).unwrap() == g.then(y).unwrap() {
                        cocones += 1;
                        let m = p.mediate(x, y).unwrap();
                        assert_eq!(&p.inj_b.then(&m).unwrap(), x);
                        assert_eq!(&p.inj_c.then(&m).unwrap(), y);
                    }
                }
            }
            assert_eq!(all_maps(&p.object, z, LIMIT).unwrap().len(), cocones);
        }
    }
}

#[test]
fn pullback_universal_property() {
    let d1 = simplex(1);
    let cospans = [
        (vertex_inclusion(1, 0), SimplicialMap::identity(&d1)),
        (SimplicialMap::to_point(&d1, &point()), SimplicialMap::to_point(&boundary(1), &point())),
        (boundary_inclusion(1), vertex_inclusion(1, 1)),
    ];
    let sources = [point(), simplex(1), boundary(1), spine(2)];
    for (f, g) in &cospans {
        let p = pullback(f, g).unwrap();
        for w in &sources {
            let hx = all_maps(w, f.source(), LIMIT).unwrap();
            let hy = all_maps(w, g.source(), LIMIT).unwrap();
            let mut cones = 0;
            for x in &hx {
                for y in &hy {
                    if x.then(f).unwrap() == y.then(g).unwrap() {
                        cones += 1;
                        let m = p.mediate(x, y).unwrap();
                        assert_eq!(&m.then(&p.proj_x).unwrap(), x);
                        assert_eq!(&m.then(&p.proj_y).unwrap(), y);
                    }
                }
            }
            assert_eq!(all_maps(w, &p.object, LIMIT).unwrap().len(), cones);
        }
    }
}

/// Every extension of `top` along `left`, found by trying all images for the
/// generators outside the image of `left`.
fn brute_lifts(p: &LiftingProblem) -> usize {
    let b = p.left.target();
    let x = p.top.target();
    let pre = p.left.preimage_table();
    let free: Vec<usize> = (0..b.generator_count()).filter(|&g| pre[g].is_none()).collect();
    let choices: Vec<Vec<cylkit::Simplex>> = free.iter().map(|&g| x.simplices_at(b.gen_dim(g))).collect();
    let mut count = 0;
    let mut idx = vec![0; free.len()];
    loop {
        if choices.iter().all(|c| !c.is_empty()) {
            let mut images = Vec::with_capacity(b.generator_count());
            for g in 0..b.generator_count() {
                images.push(match pre[g] {
                    Some(a) => p.top.image_of_gen(a),
                    None => {
                        let k = free.iter().position(|&h| h == g).unwrap();
                        choices[k][idx[k]]
                    }
                });
            }
            if let Ok(d) = SimplicialMap::new(b.clone(), x.clone(), images) {
                if d.then(&p.right).unwrap() == p.bottom {
                    count += 1;
                }
            }
        } else {
            return 0;
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return count;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[test]
fn solve_lift_matches_brute_force() {
    let lefts = [
        horn_inclusion(2, 0).unwrap(),
        horn_inclusion(2, 1).unwrap(),
        horn_inclusion(2, 2).unwrap(),
        boundary_inclusion(1),
        boundary_inclusion(2),
    ];
    let xs = [horn(2, 1).unwrap(), simplex(2), boundary(2), j_truncated(2), spine(3)];
    for left in &lefts {
        for x in &xs {
            let right = SimplicialMap::to_point(x, &point());
            let bottom = SimplicialMap::to_point(left.target(), &point());
            for top in all_maps(left.source(), x, LIMIT).unwrap() {
                let p = LiftingProblem::new(left.clone(), right.clone(), top, bottom.clone()).unwrap();
                let brute = brute_lifts(&p);
                let v = solve_lift(&p, LIMIT);
                assert_eq!(v.status.is_yes(), brute > 0, "{} into {}", left.source().name(), x.name());
                if let Some(Witness::Diagonal(d)) = &v.witness {
                    assert!(p.check_diagonal(d));
                }
            }
        }
    }
}

#[test]
fn verdicts_are_monotone_in_dimension() {
    let maps = [
        SimplicialMap::to_point(&horn(2, 1).unwrap(), &point()),
        SimplicialMap::to_point(&simplex(2), &point()),
        SimplicialMap::to_point(&j_truncated(2), &point()),
        boundary_inclusion(1),
        vertex_inclusion(2, 0),
        spine_inclusion(3),
    ];
    let kinds = [FibrationKind::Inner, FibrationKind::Left, FibrationKind::Right, FibrationKind::Kan, FibrationKind::Trivial];
    for p in &maps {
        for kind in kinds {
            let mut prev = classify_fibration(p, kind, 1).status;
            for d in 2..=4 {
                let next = classify_fibration(p, kind, d).status;
                if prev == Status::No || prev == Status::YesCertified {
                    assert_eq!(next, prev, "{kind:?} on {} at {d}", p.source().name());
                }
                prev = next;
            }
        }
    }
}
