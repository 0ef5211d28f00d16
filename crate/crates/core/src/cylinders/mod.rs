//! Cylinders: simplicial sets over `Δ[1]` with prescribed fibres `A` over 0
//! and `B` over 1.

pub mod collage;
pub mod corpus;
pub mod division;
pub mod presheaf;
pub mod reedy;

use crate::colimits::{coproduct, coproduct_map, pullback, pushout, Pullback, Pushout};
use crate::delta::Mask;
use crate::error::Error;
use crate::join::{join_map, Join};
use crate::map::SimplicialMap;
use crate::ops::{fibre_over_vertex, opposite, opposite_map_between, subcomplex};
use crate::sset::{Simplex, SimplicialSet};
use crate::standard;

/// Vertex generators of `Δ[1]` and its edge.
const V0: usize = 0;
const V1: usize = 1;
const EDGE: usize = 2;

/// The simplex of `Δ[1]` of dimension `d` whose first `k + 1` vertices are 0
/// (`k = d` for the constant one).
pub(crate) fn interval_simplex(d: usize, k: Option<usize>) -> Simplex {
    let all: Mask = if d == 0 { 0 } else { ((1u64 << d) - 1) as Mask };
    match k {
        None => Simplex::new(d, V1, all),
        Some(k) if k == d => Simplex::new(d, V0, all),
        Some(k) => Simplex::new(d, EDGE, all & !(1 << k)),
    }
}

#[derive(Clone, Debug)]
pub struct Cylinder {
    pub total: SimplicialSet,
    /// `total -> Δ[1]`
    pub structure: SimplicialMap,
    pub a: SimplicialSet,
    pub incl_a: SimplicialMap,
    pub b: SimplicialSet,
    pub incl_b: SimplicialMap,
}

/// Last position over 0 of a simplex of `Δ[1]`, or `None` if it lies over 1.
fn split_point(s: Simplex) -> Option<usize> {
    let d = s.dim();
    match s.generator() {
        V0 => Some(d),
        V1 => None,
        _ => {
            let vals = crate::delta::surjection_values(d, s.mask());
            Some(vals.iter().filter(|&&v| v == 0).count() - 1)
        }
    }
}

impl Cylinder {
    /// Checks that `incl_a`, `incl_b` are monos onto the fibres of
    /// `structure` over 0 and 1.
    pub fn new(structure: SimplicialMap, incl_a: SimplicialMap, incl_b: SimplicialMap) -> Result<Cylinder, Error> {
        let total = structure.source().clone();
        if *structure.target() != standard::simplex(1) {
            return Err(Error::Precondition("structure map must land in Δ[1]".into()));
        }
        if incl_a.target() != &total || incl_b.target() != &total {
            return Err(Error::Precondition("fibre inclusions must land in the total object".into()));
        }
        for (incl, v) in [(&incl_a, V0), (&incl_b, V1)] {
            if !incl.is_mono() {
                return Err(Error::NotMono);
            }
            let pre = incl.preimage_table();
            for g in total.all_generators() {
                let over = structure.image_of_gen(g.generator()).generator() == v;
                if over != pre[g.generator()].is_some() {
                    return Err(Error::Precondition(format!(
                        "fibre over {v} is not the image of the given inclusion at {}",
                        total.gen_name(g.generator())
                    )));
                }
            }
        }
        Ok(Cylinder {
            a: incl_a.source().clone(),
            b: incl_b.source().clone(),
            total,
            structure,
            incl_a,
            incl_b,
        })
    }

    pub fn join(&self) -> Join {
        Join::new(&self.a, &self.b)
    }

    /// The canonical map `total -> A ⋆ B` into the given join of the fibres.
    pub fn canonical(&self, join: &Join) -> SimplicialMap {
        let x = &self.total;
        let pre_a = self.incl_a.preimage_table();
        let pre_b = self.incl_b.preimage_table();
        let into_a = |s: Simplex| Simplex::new(s.dim(), pre_a[s.generator()].expect("fibre over 0"), s.mask());
        let into_b = |s: Simplex| Simplex::new(s.dim(), pre_b[s.generator()].expect("fibre over 1"), s.mask());
        let images = x
            .all_generators()
            .map(|s| {
                let d = s.dim();
                match split_point(self.structure.apply(s)) {
                    Some(k) if k == d => join.simplex(Some(into_a(s)), None),
                    None => join.simplex(None, Some(into_b(s))),
                    Some(k) => {
                        let low: Mask = ((1u64 << (k + 1)) - 1) as Mask;
                        let high: Mask = (((1u64 << (d + 1)) - 1) as Mask) & !low;
                        let alpha = into_a(x.restrict(s, low));
                        let beta = into_b(x.restrict(s, high));
                        join.simplex(Some(alpha), Some(beta))
                    }
                }
            })
            .collect();
        SimplicialMap::new(x.clone(), join.object.clone(), images).expect("canonical map to the join")
    }

    /// The inclusion `A + B -> total` from the given coproduct.
    pub fn boundary_map(&self, ab: &Pushout) -> SimplicialMap {
        ab.mediate(&self.incl_a, &self.incl_b).expect("fibres")
    }

    /// Maps `self -> other` of cylinders: over `Δ[1]` and the identity on
    /// both fibres.
    pub fn is_morphism_to(&self, f: &SimplicialMap, other: &Cylinder) -> bool {
        f.source() == &self.total
            && f.target() == &other.total
            && self.a == other.a
            && self.b == other.b
            && other.structure.after(f).map(|m| m == self.structure).unwrap_or(false)
            && f.after(&self.incl_a).map(|m| m == other.incl_a).unwrap_or(false)
            && f.after(&self.incl_b).map(|m| m == other.incl_b).unwrap_or(false)
    }

    /// Total number of nondegenerate simplices.
    pub fn size(&self) -> usize {
        self.total.generator_count()
    }
}

/// The cylinder `(X, p)` with its fibres cut out as sub-simplicial sets.
pub fn make_cylinder(p: &SimplicialMap) -> Result<Cylinder, Error> {
    if *p.target() != standard::simplex(1) {
        return Err(Error::Precondition("structure map must land in Δ[1]".into()));
    }
    let (_, ia) = fibre_over_vertex(p, V0);
    let (_, ib) = fibre_over_vertex(p, V1);
    Cylinder::new(p.clone(), ia, ib)
}

fn constant_map(x: &SimplicialSet, v: usize) -> SimplicialMap {
    SimplicialMap::constant(x, &standard::simplex(1), v)
}

/// `A + B` over `Δ[1]`.
pub fn initial(a: &SimplicialSet, b: &SimplicialSet) -> Cylinder {
    let ab = coproduct(a, b);
    let structure = ab.mediate(&constant_map(a, V0), &constant_map(b, V1)).expect("coproduct");
    Cylinder::new(structure, ab.inj_b, ab.inj_c).expect("initial cylinder")
}

/// `A ⋆ B` over `Δ[1]`.
pub fn terminal(a: &SimplicialSet, b: &SimplicialSet) -> Cylinder {
    let j = Join::new(a, b);
    Cylinder::new(j.structure, j.incl_left, j.incl_right).expect("terminal cylinder")
}

/// `L(M)` for `m : M -> A ⋆ B`, with the unit `M -> L(M)`.
#[derive(Clone, Debug)]
pub struct Reflection {
    pub cylinder: Cylinder,
    pub unit: SimplicialMap,
    /// `A + B` and its map into `L(M)`
    pub boundary: Pushout,
    pushout: Pushout,
}

impl Reflection {
    /// `L(φ) : L(M) -> L(N)` for `φ : M -> N` over `A ⋆ B`.
    pub fn map_to(&self, phi: &SimplicialMap, other: &Reflection) -> Result<SimplicialMap, Error> {
        let hb = phi.then(&other.unit)?;
        let hc = other.boundary_in_total();
        self.pushout.mediate(&hb, &hc)
    }

    fn boundary_in_total(&self) -> SimplicialMap {
        self.cylinder.boundary_map(&self.boundary)
    }
}

/// The reflection of `M -> A ⋆ B` into cylinders: `M` with its parts over
/// `A` and `B` collapsed onto `A` and `B`.
pub fn reflect_l(m: &SimplicialMap, join: &Join) -> Result<Reflection, Error> {
    if m.target() != &join.object {
        return Err(Error::Precondition("map must land in the given join".into()));
    }
    let src = m.source();
    let side = |g: usize| join.structure.apply(m.image_of_gen(g)).generator();
    let keep_a: Vec<bool> = (0..src.generator_count()).map(|g| side(g) == V0).collect();
    let keep_b: Vec<bool> = (0..src.generator_count()).map(|g| side(g) == V1).collect();
    let (ma, ia) = subcomplex(src, &keep_a, format!("{}|A", src.name()))?;
    let (mb, ib) = subcomplex(src, &keep_b, format!("{}|B", src.name()))?;
    let to_a = crate::ops::factor_through_mono(&ia.then(m)?, &join.incl_left).expect("over A");
    let to_b = crate::ops::factor_through_mono(&ib.then(m)?, &join.incl_right).expect("over B");
    let parts = coproduct(&ma, &mb);
    let ab = coproduct(&join.left, &join.right);
    let e = parts.mediate(&ia, &ib)?;
    let h = coproduct_map(&to_a, &to_b, &parts, &ab)?;
    let po = pushout(&e, &h)?;
    let structure = po.mediate(&m.then(&join.structure)?, &ab.mediate(&constant_map(&join.left, V0), &constant_map(&join.right, V1))?)?;
    let incl_a = ab.inj_b.then(&po.inj_c)?;
    let incl_b = ab.inj_c.then(&po.inj_c)?;
    let cylinder = Cylinder::new(structure, incl_a, incl_b)?;
    Ok(Reflection {
        cylinder,
        unit: po.inj_b.clone(),
        boundary: ab,
        pushout: po,
    })
}

/// `(M, a) ⊠ (S, b) = L(M ⋆ S -> A ⋆ B)`.
pub fn exterior_product(ma: &SimplicialMap, sb: &SimplicialMap) -> Result<Reflection, Error> {
    let ms = Join::new(ma.source(), sb.source());
    let ab = Join::new(ma.target(), sb.target());
    let m = join_map(ma, sb, &ms, &ab)?;
    reflect_l(&m, &ab)
}

/// `f ⊠̂ g`: the map `L(corner) -> L(M' ⋆ S')` for `f : M -> M'` over `A`
/// via `a'` and `g : S -> S'` over `B` via `b'`.
#[derive(Clone, Debug)]
pub struct LeibnizExterior {
    pub source: Reflection,
    pub target: Reflection,
    pub map: SimplicialMap,
}

pub fn leibniz_exterior(
    f: &SimplicialMap,
    a2: &SimplicialMap,
    g: &SimplicialMap,
    b2: &SimplicialMap,
) -> Result<LeibnizExterior, Error> {
    let lj = crate::join::leibniz_join(f, g)?;
    let ab = Join::new(a2.target(), b2.target());
    let bottom = join_map(a2, b2, &lj.target_join, &ab)?;
    let corner_to_ab = lj.map.then(&bottom)?;
    let source = reflect_l(&corner_to_ab, &ab)?;
    let target = reflect_l(&bottom, &ab)?;
    let map = source.map_to(&lj.map, &target)?;
    Ok(LeibnizExterior { source, target, map })
}

/// `(u, v)_! X`: pushout of `X <- A + B -> A' + B'`.
#[derive(Clone, Debug)]
pub struct Pushforward {
    pub cylinder: Cylinder,
    /// `X -> (u, v)_! X`
    pub from_total: SimplicialMap,
    pushout: Pushout,
    boundary: Pushout,
}

pub fn pushforward(u: &SimplicialMap, v: &SimplicialMap, x: &Cylinder) -> Result<Pushforward, Error> {
    if u.source() != &x.a || v.source() != &x.b {
        return Err(Error::Precondition("maps must start at the fibres".into()));
    }
    let ab = coproduct(&x.a, &x.b);
    let ab2 = coproduct(u.target(), v.target());
    let e = x.boundary_map(&ab);
    let h = coproduct_map(u, v, &ab, &ab2)?;
    let po = pushout(&e, &h)?;
    let structure = po.mediate(
        &x.structure,
        &ab2.mediate(&constant_map(u.target(), V0), &constant_map(v.target(), V1))?,
    )?;
    let incl_a = ab2.inj_b.then(&po.inj_c)?;
    let incl_b = ab2.inj_c.then(&po.inj_c)?;
    Ok(Pushforward {
        cylinder: Cylinder::new(structure, incl_a, incl_b)?,
        from_total: po.inj_b.clone(),
        pushout: po,
        boundary: ab2,
    })
}

impl Pushforward {
    /// `(u, v)_! f` for a cylinder map `f : X -> Y`, given `(u, v)_! Y`.
    pub fn map_to(&self, f: &SimplicialMap, other: &Pushforward) -> Result<SimplicialMap, Error> {
        let hb = f.then(&other.from_total)?;
        let hc = other.cylinder.boundary_map(&other.boundary);
        self.pushout.mediate(&hb, &hc)
    }

    /// Induced map out of `(u, v)_! X` from a map out of `X` and one out of
    /// `A' + B'` agreeing on `A + B`.
    pub fn mediate(&self, hx: &SimplicialMap, hab: &SimplicialMap) -> Result<SimplicialMap, Error> {
        self.pushout.mediate(hx, hab)
    }

    pub fn boundary(&self) -> &Pushout {
        &self.boundary
    }
}

/// `(u, v)^* Y`: pullback of `Y -> A' ⋆ B'` along `u ⋆ v`.
#[derive(Clone, Debug)]
pub struct PullbackCyl {
    pub cylinder: Cylinder,
    /// `(u, v)^* Y -> Y`
    pub to_total: SimplicialMap,
    pullback: Pullback,
    /// `(u, v)^* Y -> A ⋆ B`
    pub to_join: SimplicialMap,
}

pub fn pullback_cyl(u: &SimplicialMap, v: &SimplicialMap, y: &Cylinder) -> Result<PullbackCyl, Error> {
    if u.target() != &y.a || v.target() != &y.b {
        return Err(Error::Precondition("maps must end at the fibres".into()));
    }
    let j2 = y.join();
    let j = Join::new(u.source(), v.source());
    let uv = join_map(u, v, &j, &j2)?;
    let pb = pullback(&y.canonical(&j2), &uv)?;
    let structure = pb.proj_y.then(&j.structure)?;
    let incl_a = pb.mediate(&u.then(&y.incl_a)?, &j.incl_left)?;
    let incl_b = pb.mediate(&v.then(&y.incl_b)?, &j.incl_right)?;
    Ok(PullbackCyl {
        cylinder: Cylinder::new(structure, incl_a, incl_b)?,
        to_total: pb.proj_x.clone(),
        to_join: pb.proj_y.clone(),
        pullback: pb,
    })
}

impl PullbackCyl {
    /// `(u, v)^* g` for a cylinder map `g : Y -> Z`, given `(u, v)^* Z`.
    pub fn map_to(&self, g: &SimplicialMap, other: &PullbackCyl) -> Result<SimplicialMap, Error> {
        other.pullback.mediate(&self.to_total.then(g)?, &self.to_join)
    }

    pub fn mediate(&self, hy: &SimplicialMap, hj: &SimplicialMap) -> Result<SimplicialMap, Error> {
        self.pullback.mediate(hy, hj)
    }
}

/// Unit `X -> (u,v)^* (u,v)_! X` and counit `(u,v)_! (u,v)^* Y -> Y`, and
/// both triangle identities.
pub fn check_triangle_identities(
    u: &SimplicialMap,
    v: &SimplicialMap,
    x: &Cylinder,
    y: &Cylinder,
) -> Result<bool, Error> {
    let j = x.join();
    // first: ε_{u!X} ∘ u!(η_X) = id
    let push_x = pushforward(u, v, x)?;
    let pull_push_x = pullback_cyl(u, v, &push_x.cylinder)?;
    let eta_x = pull_push_x.mediate(&push_x.from_total, &x.canonical(&j))?;
    let push_pull_push_x = pushforward(u, v, &pull_push_x.cylinder)?;
    let push_eta = push_x.map_to(&eta_x, &push_pull_push_x)?;
    let eps = push_pull_push_x.mediate(
        &pull_push_x.to_total,
        &push_x.cylinder.boundary_map(push_pull_push_x.boundary()),
    )?;
    let first = push_eta.then(&eps)?.is_identity();

    // second: v^*(ε_Y) ∘ η_{v^*Y} = id
    let pull_y = pullback_cyl(u, v, y)?;
    let push_pull_y = pushforward(u, v, &pull_y.cylinder)?;
    let eps_y = push_pull_y.mediate(&pull_y.to_total, &y.boundary_map(push_pull_y.boundary()))?;
    let pull_push_pull_y = pullback_cyl(u, v, &push_pull_y.cylinder)?;
    let eta = pull_push_pull_y.mediate(&push_pull_y.from_total, &pull_y.to_join)?;
    let pull_eps = pull_push_pull_y.map_to(&eps_y, &pull_y)?;
    let second = eta.then(&pull_eps)?.is_identity();
    Ok(first && second)
}

/// Pushout of `Δ[0] ⋆ M <- M -> B`.
pub fn left_cone(mb: &SimplicialMap) -> Result<SimplicialSet, Error> {
    let j = Join::new(&standard::point(), mb.source());
    Ok(pushout(&j.incl_right, mb)?.object)
}

/// `X^op` over `Δ[1]` with the ends swapped; fibres `B^op` over 0 and `A^op`
/// over 1.
pub fn dual_cylinder(x: &Cylinder) -> Result<Cylinder, Error> {
    let total = opposite(&x.total);
    let d1 = standard::simplex(1);
    let d1op = opposite(&d1);
    let flip = SimplicialMap::new(
        d1op.clone(),
        d1.clone(),
        vec![d1.gen_simplex(V1), d1.gen_simplex(V0), d1.gen_simplex(EDGE)],
    )?;
    let structure = opposite_map_between(&x.structure, &total, &d1op).then(&flip)?;
    let incl_a = opposite_map_between(&x.incl_b, &opposite(&x.b), &total);
    let incl_b = opposite_map_between(&x.incl_a, &opposite(&x.a), &total);
    Cylinder::new(structure, incl_a, incl_b)
}

/// Equal as cylinders: same total object, structure map and fibre
/// inclusions.
pub fn same_cylinder(x: &Cylinder, y: &Cylinder) -> bool {
    x.total == y.total
        && x.structure.images() == y.structure.images()
        && x.incl_a.images() == y.incl_a.images()
        && x.incl_b.images() == y.incl_b.images()
        && x.a == y.a
        && x.b == y.b
}
