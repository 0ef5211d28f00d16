//! Deterministic families of cylinders used by the checks and the suite.

use rand::Rng;

use super::collage::{collage_nerve, Profunctor};
use super::{exterior_product, initial, terminal, Cylinder};
use crate::colimits::{classifying_map, coproduct};
use crate::error::Error;
use crate::join::Join;
use crate::lifting::soa::{soa_factor, SoaOptions};
use crate::lifting::Family;
use crate::map::SimplicialMap;
use crate::ops::{face_closure, factor_through_mono, subcomplex};
use crate::sset::SimplicialSet;
use crate::standard::{boundary, boundary_inclusion, empty, horn, point, simplex, spine, vertex_inclusion};

/// `A + B -> X -> A ⋆ B` from the small object argument over inner horns;
/// only unsolved squares get cells, so the fibres stay `A` and `B`.
pub fn soa_cylinder(a: &SimplicialSet, b: &SimplicialSet, stage_budget: usize, dim_budget: usize) -> Result<Cylinder, Error> {
    let ab = coproduct(a, b);
    let j = Join::new(a, b);
    let u = ab.mediate(&j.incl_left, &j.incl_right)?;
    let mut options = SoaOptions::new(Family::InnerHorns, dim_budget);
    options.stage_budget = stage_budget;
    let f = soa_factor(&u, &options)?;
    let structure = f.right.then(&j.structure)?;
    let incl_a = ab.inj_b.then(&f.left)?;
    let incl_b = ab.inj_c.then(&f.left)?;
    Cylinder::new(structure, incl_a, incl_b)
}

/// The end pairs whose SOA cylinders are compared against the three
/// fibrancy conditions.
pub fn soa_pairs() -> Vec<(&'static str, SimplicialSet, SimplicialSet)> {
    vec![
        ("(Δ[1],Δ[0])", simplex(1), simplex(0)),
        ("(Λ¹[2],Δ[1])", horn(2, 1).expect("inner horn"), simplex(1)),
        ("(I[2],I[2])", spine(2), spine(2)),
    ]
}

/// Seeded collage nerves of random profunctors with at most `max_objects`
/// objects on each side.
pub fn collage_corpus<R: Rng>(rng: &mut R, count: usize, max_objects: usize) -> Vec<(Profunctor, Cylinder)> {
    (0..count)
        .map(|_| {
            let m = Profunctor::random(rng, max_objects);
            let c = collage_nerve(&m, None).expect("collage of loop-free categories");
            (m, c)
        })
        .collect()
}

/// A few exterior products of simplices over small ends.
pub fn exterior_corpus() -> Vec<(String, Cylinder)> {
    let mut out = Vec::new();
    let ends = [simplex(0), simplex(1), boundary(1)];
    for a in &ends {
        for b in &ends {
            let ma = classifying_map(a, a.gen_simplex(0));
            let sb = classifying_map(b, b.gen_simplex(b.generator_count() - 1));
            let r = exterior_product(&ma, &sb).expect("exterior product");
            out.push((format!("{}⊠{}", a.name(), b.name()), r.cylinder));
        }
    }
    out
}

/// A random subcylinder of `A ⋆ B`: both ends and a face-closed random set of
/// mixed simplices.
pub fn random_subcylinder<R: Rng>(rng: &mut R, a: &SimplicialSet, b: &SimplicialSet) -> Cylinder {
    let j = Join::new(a, b);
    let mut seeds: Vec<usize> = j.incl_left.images().iter().chain(j.incl_right.images()).map(|s| s.generator()).collect();
    for g in 0..j.object.generator_count() {
        if matches!(j.part(g), crate::join::JoinPart::Mixed(..)) && rng.gen_bool(0.4) {
            seeds.push(g);
        }
    }
    let keep = face_closure(&j.object, &seeds);
    let (sub, incl) = subcomplex(&j.object, &keep, format!("sub({})", j.object.name())).expect("closed");
    let structure = incl.then(&j.structure).expect("composable");
    let ia = factor_through_mono(&j.incl_left, &incl).expect("contains A");
    let ib = factor_through_mono(&j.incl_right, &incl).expect("contains B");
    let _ = sub;
    Cylinder::new(structure, ia, ib).expect("subcylinder")
}

/// Small ends for random cylinders.
pub fn small_ends() -> Vec<SimplicialSet> {
    vec![simplex(0), simplex(1), boundary(1)]
}

pub fn random_cylinders<R: Rng>(rng: &mut R, count: usize) -> Vec<Cylinder> {
    let ends = small_ends();
    (0..count)
        .map(|_| {
            let a = &ends[rng.gen_range(0..ends.len())];
            let b = &ends[rng.gen_range(0..ends.len())];
            random_subcylinder(rng, a, b)
        })
        .collect()
}

/// Objects over a fixed end: `∅`, the vertices, the boundary and the
/// identity for `Δ[1]`; `∅`, the point and two points for `Δ[0]`.
pub fn small_objects_over(base: &SimplicialSet) -> Vec<SimplicialMap> {
    let mut out = vec![SimplicialMap::from_empty(&empty(), base)];
    if base == &simplex(0) {
        out.push(SimplicialMap::identity(base));
        out.push(SimplicialMap::to_point(&boundary(1), base));
    } else if base == &simplex(1) {
        out.push(vertex_inclusion(1, 0));
        out.push(vertex_inclusion(1, 1));
        out.push(boundary_inclusion(1));
        out.push(SimplicialMap::identity(base));
    } else {
        for v in 0..base.vertex_count() {
            out.push(classifying_map(base, base.gen_simplex(v)));
        }
    }
    out
}

/// Monos `f : M -> N` together with `n : N -> base`.
pub fn small_monos_over(base: &SimplicialSet) -> Vec<(SimplicialMap, SimplicialMap)> {
    let mut out = Vec::new();
    let objs = small_objects_over(base);
    for n in &objs {
        out.push((SimplicialMap::from_empty(&empty(), n.source()), n.clone()));
        if n.source() == &simplex(1) {
            out.push((boundary_inclusion(1), n.clone()));
        }
        if n.source() == &boundary(1) {
            out.push((SimplicialMap::constant(&point(), &boundary(1), 0), n.clone()));
        }
    }
    out
}

/// Small cylinders: initial and terminal ones, the inner horn `Λ¹[2]` over
/// `(Δ[1], Δ[0])`, and `Δ[2]` over the same ends.
pub fn tiny_cylinders() -> Vec<(String, Cylinder)> {
    let p = simplex(0);
    let d1 = simplex(1);
    let mut out = vec![
        ("initial(Δ0,Δ0)".to_string(), initial(&p, &p)),
        ("terminal(Δ0,Δ0)".to_string(), terminal(&p, &p)),
        ("initial(Δ1,Δ0)".to_string(), initial(&d1, &p)),
        ("terminal(Δ1,Δ0)".to_string(), terminal(&d1, &p)),
        ("terminal(Δ0,Δ1)".to_string(), terminal(&p, &d1)),
    ];
    // Δ0 ⊠ ∂Δ[1] over (Δ0, Δ0): two parallel edges
    let two = exterior_product(&SimplicialMap::identity(&p), &SimplicialMap::to_point(&boundary(1), &p)).expect("exterior");
    out.push(("parallel(Δ0,Δ0)".to_string(), two.cylinder));
    // the inner horn with its vertex 2 over 1: not ambifibrant
    let j = Join::new(&d1, &p);
    let t = j.object.find("0*0'").expect("edge 0→0'");
    let keep: Vec<bool> = (0..j.object.generator_count()).map(|g| g != t && j.object.gen_dim(g) < 2).collect();
    let (_, incl) = subcomplex(&j.object, &keep, "Λ¹[2]").expect("closed");
    let structure = incl.then(&j.structure).expect("composable");
    let ia = factor_through_mono(&j.incl_left, &incl).expect("contains A");
    let ib = factor_through_mono(&j.incl_right, &incl).expect("contains B");
    out.push(("horn(Δ1,Δ0)".to_string(), Cylinder::new(structure, ia, ib).expect("horn cylinder")));
    out
}

/// Every `(M -> A, S -> B, X)` over the tiny cylinders with at most
/// `limit` nondegenerate simplices in total.
pub fn tiny_triples(limit: usize) -> Vec<(String, SimplicialMap, SimplicialMap, Cylinder)> {
    let mut out = Vec::new();
    for (name, x) in tiny_cylinders() {
        for m in small_objects_over(&x.a) {
            for s in small_objects_over(&x.b) {
                let size = m.source().generator_count() + s.source().generator_count() + x.size();
                if size <= limit {
                    out.push((name.clone(), m.clone(), s.clone(), x.clone()));
                }
            }
        }
    }
    out
}

/// Every `(f, n, g, t, X)` over the tiny cylinders with `|N| + |T| + |X|` at
/// most `limit`.
#[allow(clippy::type_complexity)]
pub fn tiny_lifting_data(
    limit: usize,
) -> Vec<(String, SimplicialMap, SimplicialMap, SimplicialMap, SimplicialMap, Cylinder)> {
    let mut out = Vec::new();
    for (name, x) in tiny_cylinders() {
        for (f, n) in small_monos_over(&x.a) {
            for (g, t) in small_monos_over(&x.b) {
                let size = n.source().generator_count() + t.source().generator_count() + x.size();
                if size <= limit {
                    out.push((name.clone(), f.clone(), n.clone(), g.clone(), t.clone(), x.clone()));
                }
            }
        }
    }
    out
}
