//! Pushouts, coproducts, pullbacks, products and fibres.

use std::collections::{HashMap, HashSet};

use crate::delta::{compose_surjection_masks, subsets_of_size, Mask};
use crate::error::{Error, MapError};
use crate::map::SimplicialMap;
use crate::sset::{SSetBuilder, Simplex, SimplicialSet};
use crate::standard;

/// Appends primes to `base` until it is unused, then records it.
pub(crate) fn fresh_name(base: &str, used: &mut HashSet<String>) -> String {
    let mut name = base.to_string();
    while used.contains(&name) {
        name.push('\'');
    }
    used.insert(name.clone());
    name
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    B,
    C,
}

/// The pushout `B ⊔_A C` of `f : A -> B` and `g : A -> C`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: SimplicialSet,
    pub inj_b: SimplicialMap,
    pub inj_c: SimplicialMap,
    /// for each generator of the pushout, a generator of `B` or `C` it comes
    /// from
    origin: Vec<(Side, usize)>,
    f: SimplicialMap,
    g: SimplicialMap,
}

impl Pushout {
    pub fn origin(&self, p: usize) -> (Side, usize) {
        self.origin[p]
    }

    /// The map out of the pushout induced by a cocone `(hb, hc)`.
    pub fn mediate(&self, hb: &SimplicialMap, hc: &SimplicialMap) -> Result<SimplicialMap, Error> {
        if hb.target() != hc.target() {
            return Err(MapError::Mismatch("target").into());
        }
        if hb.after(&self.f)? != hc.after(&self.g)?.retarget(hb.target())? {
            return Err(Error::Precondition("cocone does not commute".into()));
        }
        let images = self
            .origin
            .iter()
            .map(|&(side, g)| match side {
                Side::B => hb.image_of_gen(g),
                Side::C => hc.image_of_gen(g),
            })
            .collect();
        Ok(SimplicialMap::new(self.object.clone(), hb.target().clone(), images)?)
    }
}

pub fn pushout(f: &SimplicialMap, g: &SimplicialMap) -> Result<Pushout, Error> {
    pushout_named(f, g, None)
}

/// Pushout with optional names for the generators of `B` that become new.
pub fn pushout_named(
    f: &SimplicialMap,
    g: &SimplicialMap,
    names: Option<&dyn Fn(usize) -> String>,
) -> Result<Pushout, Error> {
    if f.source() != g.source() {
        return Err(MapError::Mismatch("source").into());
    }
    if f.is_mono() {
        return Ok(pushout_along_mono(f, g, names));
    }
    if g.is_mono() && names.is_none() {
        let p = pushout_along_mono(g, f, None);
        let origin = p
            .origin
            .iter()
            .map(|&(s, x)| (if s == Side::B { Side::C } else { Side::B }, x))
            .collect();
        return Ok(Pushout {
            object: p.object,
            inj_b: p.inj_c,
            inj_c: p.inj_b,
            origin,
            f: f.clone(),
            g: g.clone(),
        });
    }
    Ok(pushout_general(f, g, names))
}

/// `f` mono: the pushout is `C` with the generators of `B` outside the image
/// of `f` adjoined.
fn pushout_along_mono(
    f: &SimplicialMap,
    g: &SimplicialMap,
    names: Option<&dyn Fn(usize) -> String>,
) -> Pushout {
    let b = f.target();
    let c = g.target();
    let pre = f.preimage_table();
    let mut builder = SSetBuilder::new(format!("{}⊔{}", b.name(), c.name()));
    let mut used: HashSet<String> = HashSet::new();
    for x in 0..c.generator_count() {
        used.insert(c.gen_name(x).to_string());
        builder.add(c.gen_name(x), c.gen_dim(x));
    }
    let mut new_id = vec![usize::MAX; b.generator_count()];
    for y in 0..b.generator_count() {
        if pre[y].is_none() {
            let base = match names {
                Some(nf) => nf(y),
                None => b.gen_name(y).to_string(),
            };
            new_id[y] = builder.add(fresh_name(&base, &mut used), b.gen_dim(y));
        }
    }
    // C generators keep their faces
    for x in 0..c.generator_count() {
        let row = c.faces_of(x).iter().map(|s| (s.generator(), s.mask())).collect();
        builder.set_faces_raw(x, row);
    }
    let translate = |s: Simplex| -> (usize, Mask) {
        match pre[s.generator()] {
            Some(ag) => {
                let img = g.apply(Simplex::new(s.dim(), ag, s.mask()));
                (img.generator(), img.mask())
            }
            None => (new_id[s.generator()], s.mask()),
        }
    };
    for y in 0..b.generator_count() {
        if pre[y].is_none() {
            let row = b.faces_of(y).iter().map(|&s| translate(s)).collect();
            builder.set_faces_raw(new_id[y], row);
        }
    }
    let (object, pos) = builder.build_with_order().expect("pushout along a mono");
    let inj_c_images = (0..c.generator_count())
        .map(|x| Simplex::new(c.gen_dim(x), pos[x], 0))
        .collect();
    let inj_b_images = (0..b.generator_count())
        .map(|y| {
            let (gen, mask) = translate(b.gen_simplex(y));
            Simplex::new(b.gen_dim(y), pos[gen], mask)
        })
        .collect();
    let mut origin = vec![(Side::C, 0); object.generator_count()];
    for x in 0..c.generator_count() {
        origin[pos[x]] = (Side::C, x);
    }
    for y in 0..b.generator_count() {
        if pre[y].is_none() {
            origin[pos[new_id[y]]] = (Side::B, y);
        }
    }
    Pushout {
        inj_b: SimplicialMap::new_unchecked(b.clone(), object.clone(), inj_b_images),
        inj_c: SimplicialMap::new_unchecked(c.clone(), object.clone(), inj_c_images),
        object,
        origin,
        f: f.clone(),
        g: g.clone(),
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Levelwise quotient of `B ⊔ C`. A class is nondegenerate exactly when all
/// of its members are.
fn pushout_general(
    f: &SimplicialMap,
    g: &SimplicialMap,
    names: Option<&dyn Fn(usize) -> String>,
) -> Pushout {
    let a = f.source();
    let b = f.target();
    let c = g.target();
    let top = b.dim_or_zero().max(c.dim_or_zero());
    let mut builder = SSetBuilder::new(format!("{}⊔{}", b.name(), c.name()));
    let mut used: HashSet<String> = HashSet::new();
    // normal form of each element, per level: (builder id, mask)
    let mut nf_b: Vec<HashMap<Simplex, (usize, Mask)>> = Vec::new();
    let mut nf_c: Vec<HashMap<Simplex, (usize, Mask)>> = Vec::new();
    let mut origin_raw: Vec<(Side, usize)> = Vec::new();
    let mut pending_faces: Vec<(usize, Side, Simplex)> = Vec::new();
    for n in 0..=top {
        let bs = b.simplices_at(n);
        let cs = c.simplices_at(n);
        let nb = bs.len();
        let mut uf = UnionFind::new(nb + cs.len());
        let bidx: HashMap<Simplex, usize> = bs.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let cidx: HashMap<Simplex, usize> = cs.iter().enumerate().map(|(i, &s)| (s, nb + i)).collect();
        for s in a.simplices_at(n) {
            uf.union(bidx[&f.apply(s)], cidx[&g.apply(s)]);
        }
        let all: Vec<(Side, Simplex)> = bs
            .iter()
            .map(|&s| (Side::B, s))
            .chain(cs.iter().map(|&s| (Side::C, s)))
            .collect();
        let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..all.len() {
            classes.entry(uf.find(i)).or_default().push(i);
        }
        let mut roots: Vec<usize> = classes.keys().copied().collect();
        roots.sort_unstable();
        let mut level_b = HashMap::new();
        let mut level_c = HashMap::new();
        for root in roots {
            let members = &classes[&root];
            let degenerate = members.iter().find(|&&i| all[i].1.is_degenerate());
            let nf = match degenerate {
                Some(&i) => {
                    let (side, s) = all[i];
                    let base = Simplex::new(s.generator_dim(), s.generator(), 0);
                    let (gen, mask) = match side {
                        Side::B => nf_b[base.dim()][&base],
                        Side::C => nf_c[base.dim()][&base],
                    };
                    (gen, compose_surjection_masks(n, s.mask(), mask))
                }
                None => {
                    let (side, s) = all[members[0]];
                    let base = match (side, names) {
                        (Side::B, Some(nf)) => nf(s.generator()),
                        (Side::B, None) => b.gen_name(s.generator()).to_string(),
                        (Side::C, _) => c.gen_name(s.generator()).to_string(),
                    };
                    let id = builder.add(fresh_name(&base, &mut used), n);
                    origin_raw.push((side, s.generator()));
                    pending_faces.push((id, side, s));
                    (id, 0)
                }
            };
            for &i in members {
                match all[i].0 {
                    Side::B => level_b.insert(all[i].1, nf),
                    Side::C => level_c.insert(all[i].1, nf),
                };
            }
        }
        nf_b.push(level_b);
        nf_c.push(level_c);
    }
    for (id, side, s) in pending_faces {
        if s.dim() == 0 {
            continue;
        }
        let (x, table) = match side {
            Side::B => (b, &nf_b),
            Side::C => (c, &nf_c),
        };
        let row = (0..=s.dim())
            .map(|i| table[s.dim() - 1][&x.face(s, i)])
            .collect();
        builder.set_faces_raw(id, row);
    }
    let (object, pos) = builder.build_with_order().expect("pushout");
    let mut origin = vec![(Side::B, 0); object.generator_count()];
    for (raw, o) in origin_raw.into_iter().enumerate() {
        origin[pos[raw]] = o;
    }
    let inj = |x: &SimplicialSet, table: &Vec<HashMap<Simplex, (usize, Mask)>>| {
        let images = x
            .all_generators()
            .map(|s| {
                let (gen, mask) = table[s.dim()][&s];
                Simplex::new(s.dim(), pos[gen], mask)
            })
            .collect();
        SimplicialMap::new_unchecked(x.clone(), object.clone(), images)
    };
    let inj_b = inj(b, &nf_b);
    let inj_c = inj(c, &nf_c);
    Pushout {
        object: object.clone(),
        inj_b,
        inj_c,
        origin,
        f: f.clone(),
        g: g.clone(),
    }
}

/// Coproduct `X + Y` with its two inclusions.
pub fn coproduct(x: &SimplicialSet, y: &SimplicialSet) -> Pushout {
    let empty = standard::empty();
    let f = SimplicialMap::from_empty(&empty, x);
    let g = SimplicialMap::from_empty(&empty, y);
    let mut p = pushout_along_mono(&g, &f, None);
    // present as (x side, y side)
    std::mem::swap(&mut p.inj_b, &mut p.inj_c);
    for o in p.origin.iter_mut() {
        o.0 = if o.0 == Side::B { Side::C } else { Side::B };
    }
    std::mem::swap(&mut p.f, &mut p.g);
    p
}

/// Coproduct map `f + g : X + Y -> X' + Y'`.
pub fn coproduct_map(
    f: &SimplicialMap,
    g: &SimplicialMap,
    src: &Pushout,
    tgt: &Pushout,
) -> Result<SimplicialMap, Error> {
    let hb = f.then(&tgt.inj_b)?;
    let hc = g.then(&tgt.inj_c)?;
    src.mediate(&hb, &hc)
}

/// The pullback `X ×_B Y`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub object: SimplicialSet,
    pub proj_x: SimplicialMap,
    pub proj_y: SimplicialMap,
    /// generator of each nondegenerate pair
    index: HashMap<(Simplex, Simplex), usize>,
}

impl Pullback {
    /// The map into the pullback induced by a cone `(hx, hy)`.
    pub fn mediate(&self, hx: &SimplicialMap, hy: &SimplicialMap) -> Result<SimplicialMap, Error> {
        if hx.source() != hy.source() {
            return Err(MapError::Mismatch("source").into());
        }
        let w = hx.source();
        let images = w
            .all_generators()
            .map(|s| {
                let (sx, sy) = (hx.apply(s), hy.apply(s));
                self.pair_simplex(sx, sy)
                    .ok_or_else(|| Error::Precondition("cone does not commute".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SimplicialMap::new(w.clone(), self.object.clone(), images)?)
    }

    /// The simplex `(sx, sy)` of the pullback, if it lies in it.
    pub fn pair_simplex(&self, sx: Simplex, sy: Simplex) -> Option<Simplex> {
        let common = sx.mask() & sy.mask();
        let n = sx.dim();
        let (px, py) = (
            Simplex::new(n - common.count_ones() as usize, sx.generator(), crate::delta::compress_mask(sx.mask(), common)),
            Simplex::new(n - common.count_ones() as usize, sy.generator(), crate::delta::compress_mask(sy.mask(), common)),
        );
        self.index.get(&(px, py)).map(|&g| Simplex::new(n, g, common))
    }
}

fn pair_name(x: &SimplicialSet, y: &SimplicialSet, sx: Simplex, sy: Simplex) -> String {
    format!("({},{})", x.show(sx), y.show(sy))
}

/// Pullback of `f : X -> B` and `g : Y -> B`. Nondegenerate simplices are
/// pairs of simplices without a common degeneracy.
pub fn pullback(f: &SimplicialMap, g: &SimplicialMap) -> Result<Pullback, Error> {
    if f.target() != g.target() {
        return Err(MapError::Mismatch("target").into());
    }
    let x = f.source();
    let y = g.source();
    let mut builder = SSetBuilder::new(format!("{}×{}", x.name(), y.name()));
    let mut ids: HashMap<(Simplex, Simplex), usize> = HashMap::new();
    let mut pairs: Vec<(Simplex, Simplex)> = Vec::new();
    let top = x.dim_or_zero() + y.dim_or_zero();
    for n in 0..=top {
        for p in 0..=n.min(x.dim_or_zero()) {
            for q in 0..=n.min(y.dim_or_zero()) {
                if p + q < n {
                    continue;
                }
                let m1s = subsets_of_size(n, n - p);
                for xg in x.generator_range(p) {
                    for &m1 in &m1s {
                        let sx = Simplex::new(n, xg, m1);
                        let fx = f.apply(sx);
                        let free = !m1 & (((1u64 << n) - 1) as Mask);
                        for m2 in subsets_of_size(n, n - q) {
                            if m2 & !free != 0 {
                                continue;
                            }
                            for yg in y.generator_range(q) {
                                let sy = Simplex::new(n, yg, m2);
                                if g.apply(sy) == fx {
                                    let id = builder.add(pair_name(x, y, sx, sy), n);
                                    ids.insert((sx, sy), id);
                                    pairs.push((sx, sy));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let lookup = |sx: Simplex, sy: Simplex| -> (usize, Mask) {
        let common = sx.mask() & sy.mask();
        let k = sx.dim() - common.count_ones() as usize;
        let px = Simplex::new(k, sx.generator(), crate::delta::compress_mask(sx.mask(), common));
        let py = Simplex::new(k, sy.generator(), crate::delta::compress_mask(sy.mask(), common));
        (ids[&(px, py)], common)
    };
    for (id, &(sx, sy)) in pairs.iter().enumerate() {
        let n = sx.dim();
        if n == 0 {
            continue;
        }
        let row = (0..=n).map(|i| lookup(x.face(sx, i), y.face(sy, i))).collect();
        builder.set_faces_raw(id, row);
    }
    let (object, pos) = builder.build_with_order().expect("pullback");
    let mut px_images = vec![Simplex::new(0, 0, 0); object.generator_count()];
    let mut py_images = px_images.clone();
    let mut index = HashMap::new();
    for (id, &(sx, sy)) in pairs.iter().enumerate() {
        px_images[pos[id]] = sx;
        py_images[pos[id]] = sy;
        index.insert((sx, sy), pos[id]);
    }
    Ok(Pullback {
        index,
        proj_x: SimplicialMap::new_unchecked(object.clone(), x.clone(), px_images),
        proj_y: SimplicialMap::new_unchecked(object.clone(), y.clone(), py_images),
        object,
    })
}

pub fn product(x: &SimplicialSet, y: &SimplicialSet) -> Pullback {
    let pt = standard::point();
    pullback(&SimplicialMap::to_point(x, &pt), &SimplicialMap::to_point(y, &pt)).expect("product")
}

/// The classifying map `Δ[n] -> X` of an `n`-simplex.
pub fn classifying_map(x: &SimplicialSet, s: Simplex) -> SimplicialMap {
    let n = s.dim();
    let d = standard::simplex(n);
    let images = d
        .all_generators()
        .map(|gsim| {
            let mut mask: Mask = 0;
            for v in d.vertices(gsim) {
                let vname = d.gen_name(v);
                let j: usize = vname.parse().expect("vertex names are numbers");
                mask |= 1 << j;
            }
            x.restrict(s, mask)
        })
        .collect();
    SimplicialMap::new(d, x.clone(), images).expect("classifying map")
}

/// Fibre of `p : X -> B` over a simplex `b`: the pullback along the
/// classifying map of `b`. Over a vertex, the fibre is returned as the
/// sub-simplicial set of `X` it is, with its inclusion.
pub fn fibre(p: &SimplicialMap, b: Simplex) -> (SimplicialSet, SimplicialMap) {
    if b.dim() == 0 {
        return crate::ops::fibre_over_vertex(p, b.generator());
    }
    let chi = classifying_map(p.target(), b);
    let pb = pullback(p, &chi).expect("pullback along a simplex");
    (pb.object, pb.proj_x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::isomorphic;
    use crate::standard::*;

    #[test]
    fn two_points() {
        let e = empty();
        let pt = point();
        let f = SimplicialMap::from_empty(&e, &pt);
        let p = pushout(&f, &f).unwrap();
        assert_eq!(p.object.generator_counts(), vec![2]);
    }

    #[test]
    fn glue_two_triangles_along_horn() {
        let i = horn_inclusion(2, 1).unwrap();
        let p = pushout(&i, &i).unwrap();
        assert_eq!(p.object.generator_count(), 9);
        // general path agrees
        let q = pushout_general(&i, &i, None);
        assert!(isomorphic(&p.object, &q.object));
    }

    #[test]
    fn pushout_along_identity() {
        let d2 = simplex(2);
        let id = SimplicialMap::identity(&d2);
        let i = horn_inclusion(2, 1).unwrap();
        let p = pushout(&id.clone(), &SimplicialMap::identity(&d2)).unwrap();
        assert!(isomorphic(&p.object, &d2));
        let q = pushout(&i, &i.clone()).unwrap();
        assert!(q.inj_b.is_mono());
    }

    #[test]
    fn collapse_pushout() {
        // collapse the edge of Δ[1] to a point: Δ[0] ← Δ[1] → Δ[1]... as
        // the quotient Δ[1]/∂Δ[1], a circle with one vertex
        let b = boundary_inclusion(1);
        let pt = point();
        let c = SimplicialMap::to_point(b.source(), &pt);
        let p = pushout(&b, &c).unwrap();
        assert_eq!(p.object.generator_counts(), vec![1, 1]);
        let q = pushout_general(&b, &c, None);
        assert_eq!(q.object.generator_counts(), vec![1, 1]);
    }

    /// Strictly increasing chains in the poset `[p] × [q]`, by length.
    fn strict_chain_counts(p: usize, q: usize) -> Vec<usize> {
        let elems: Vec<(usize, usize)> =
            (0..=p).flat_map(|i| (0..=q).map(move |j| (i, j))).collect();
        let lt = |a: (usize, usize), b: (usize, usize)| a != b && a.0 <= b.0 && a.1 <= b.1;
        let mut counts = Vec::new();
        let mut chains: Vec<Vec<(usize, usize)>> = elems.iter().map(|&e| vec![e]).collect();
        while !chains.is_empty() {
            counts.push(chains.len());
            chains = chains
                .iter()
                .flat_map(|c| {
                    let last = *c.last().unwrap();
                    elems.iter().filter(move |&&e| lt(last, e)).map(move |&e| {
                        let mut d = c.clone();
                        d.push(e);
                        d
                    })
                })
                .collect();
        }
        counts
    }

    #[test]
    fn products() {
        let d1 = simplex(1);
        let p = product(&d1, &d1);
        assert_eq!(p.object.generator_counts(), vec![4, 5, 2]);
        let d2 = simplex(2);
        let q = product(&d2, &d1);
        assert_eq!(q.object.generator_counts(), strict_chain_counts(2, 1));
        assert_eq!(product(&simplex(2), &simplex(2)).object.generator_counts(), strict_chain_counts(2, 2));
        let id = SimplicialMap::identity(&d2);
        let r = pullback(&id, &id).unwrap();
        assert!(isomorphic(&r.object, &d2));
    }

    #[test]
    fn fibre_over_edge() {
        let d1 = simplex(1);
        let p = product(&d1, &d1);
        let e = d1.generators(1).next().unwrap();
        let (f, _) = fibre(&p.proj_x, e);
        assert_eq!(f.generator_counts(), vec![4, 5, 2]);
    }
}
