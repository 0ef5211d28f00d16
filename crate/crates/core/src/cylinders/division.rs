//! Left and right division `M\X` over `B` and `X/S` over `A`.
//!
//! Level `n` of `M\X` over `β` is the set of maps `M ⋆ Δ[n] -> X` over
//! `M ⋆ Δ[n] -> A ⋆ B`, i.e. cylinder maps `M ⊠ (Δ[n], β) -> X`. When the
//! weight is a simplex the maps are read off directly as simplices of `X`.

use std::collections::HashMap;

use super::{exterior_product, Cylinder};
use crate::colimits::classifying_map;
use crate::delta::compose_surjection_masks;
use crate::error::Error;
use crate::join::{join_map, leibniz_join, simplex_join_iso, Join};
use crate::levelwise::build_levelwise;
use crate::lifting::{all_maps_over, solve_lift, LiftingProblem, Status, DEFAULT_NODE_LIMIT};
use crate::map::SimplicialMap;
use crate::sset::{Simplex, SimplicialSet};
use crate::standard;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `M\X`, weight over `A`, result over `B`
    Left,
    /// `X/S`, weight over `B`, result over `A`
    Right,
}

type Key = (Simplex, Vec<Simplex>);

#[derive(Clone, Debug)]
pub struct Division {
    pub side: Side,
    pub set: SimplicialSet,
    /// to `B` for a left division, to `A` for a right one
    pub to_base: SimplicialMap,
    pub weight: SimplicialMap,
    /// truncation level
    pub max_dim: usize,
    /// `M ⋆ Δ[n]` (left) or `Δ[n] ⋆ S` (right) for each level
    joins: Vec<Join>,
    /// index simplex and generator images of every generator
    keys: Vec<Key>,
    table: HashMap<Key, Simplex>,
}

impl Division {
    pub fn key(&self, g: usize) -> (&Simplex, &[Simplex]) {
        let (s, imgs) = &self.keys[g];
        (s, imgs)
    }

    pub fn lookup(&self, index: Simplex, images: &[Simplex]) -> Option<Simplex> {
        self.table.get(&(index, images.to_vec())).copied()
    }
}

fn apply_images(images: &[Simplex], s: Simplex) -> Simplex {
    let a = images[s.generator()];
    Simplex::new(s.dim(), a.generator(), compose_surjection_masks(s.dim(), s.mask(), a.mask()))
}

fn join_for(side: Side, w: &SimplicialSet, n: usize) -> Join {
    match side {
        Side::Left => Join::new(w, &standard::simplex(n)),
        Side::Right => Join::new(&standard::simplex(n), w),
    }
}

/// `j -> j'` induced by a map `Δ[n] -> Δ[n']` on the simplex side.
fn along_delta(side: Side, op: &SimplicialMap, from: &Join, to: &Join) -> SimplicialMap {
    let r = match side {
        Side::Left => join_map(&SimplicialMap::identity(&from.left), op, from, to),
        Side::Right => join_map(op, &SimplicialMap::identity(&from.right), from, to),
    };
    r.expect("join of a simplicial operator")
}

/// `M\X` (side `Left`, `w : M -> A`) or `X/S` (side `Right`, `w : S -> B`),
/// through level `max_dim`.
pub fn divide(side: Side, w: &SimplicialMap, x: &Cylinder, max_dim: usize) -> Result<Division, Error> {
    let (weight_base, index_base) = match side {
        Side::Left => (&x.a, &x.b),
        Side::Right => (&x.b, &x.a),
    };
    if w.target() != weight_base {
        return Err(Error::Precondition("weight lives over the wrong end".into()));
    }
    let ab = x.join();
    let canonical = x.canonical(&ab);
    let joins: Vec<Join> = (0..=max_dim).map(|n| join_for(side, w.source(), n)).collect();
    let fast = representable(w);
    let mut by_image: HashMap<Simplex, Vec<Simplex>> = HashMap::new();
    if fast.is_some() {
        let m = w.source().dim_or_zero();
        for d in m + 1..=m + 1 + max_dim {
            for s in x.total.simplices_at(d) {
                by_image.entry(canonical.apply(s)).or_default().push(s);
            }
        }
    }
    let mut levels: Vec<Vec<Key>> = Vec::with_capacity(max_dim + 1);
    for (n, j) in joins.iter().enumerate() {
        let mut level = Vec::new();
        for idx in index_base.simplices_at(n) {
            let chi = classifying_map(index_base, idx);
            if let Some(top) = fast {
                let m = w.source().dim_or_zero();
                let over = match side {
                    Side::Left => ab.simplex(Some(top), Some(idx)),
                    Side::Right => ab.simplex(Some(idx), Some(top)),
                };
                let iso = match side {
                    Side::Left => simplex_join_iso(m, n),
                    Side::Right => simplex_join_iso(n, m),
                };
                debug_assert_eq!(iso.source(), &j.object);
                for &s in by_image.get(&over).map(|v| v.as_slice()).unwrap_or(&[]) {
                    let imgs = iso.images().iter().map(|&t| x.total.act_values(s, &vertex_values(t, iso.target()))).collect();
                    level.push((idx, imgs));
                }
                continue;
            }
            let over = match side {
                Side::Left => join_map(w, &chi, j, &ab)?,
                Side::Right => join_map(&chi, w, j, &ab)?,
            };
            let maps = all_maps_over(&j.object, &canonical, &over, DEFAULT_NODE_LIMIT)
                .ok_or_else(|| Error::SizeLimit(format!("maps {} -> {}", j.object.name(), x.total.name())))?;
            level.extend(maps.into_iter().map(|f| (idx, f.images().to_vec())));
        }
        levels.push(level);
    }
    let d_top = |n: usize| {
        let d = standard::simplex(n);
        d.gen_simplex(d.generator_count() - 1)
    };
    let cofaces: Vec<Vec<SimplicialMap>> = (0..=max_dim)
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            let d = standard::simplex(n);
            (0..=n)
                .map(|i| along_delta(side, &classifying_map(&d, d.face(d_top(n), i)), &joins[n - 1], &joins[n]))
                .collect()
        })
        .collect();
    let codegeneracies: Vec<Vec<SimplicialMap>> = (0..=max_dim)
        .map(|n| {
            if n == max_dim {
                return Vec::new();
            }
            let d = standard::simplex(n);
            (0..=n)
                .map(|i| along_delta(side, &classifying_map(&d, d.degeneracy(d_top(n), i)), &joins[n + 1], &joins[n]))
                .collect()
        })
        .collect();
    let face = |k: &Key, i: usize| -> Key {
        let n = k.0.dim();
        let imgs = cofaces[n][i].images().iter().map(|&s| apply_images(&k.1, s)).collect();
        (index_base.face(k.0, i), imgs)
    };
    let degeneracy = |k: &Key, i: usize| -> Key {
        let n = k.0.dim();
        let imgs = codegeneracies[n][i].images().iter().map(|&s| apply_images(&k.1, s)).collect();
        (index_base.degeneracy(k.0, i), imgs)
    };
    let label = |k: &Key| -> String {
        let parts: Vec<String> = k.1.iter().map(|&s| x.total.show(s)).collect();
        format!("{}[{}]", index_base.show(k.0), parts.join(","))
    };
    let name = match side {
        Side::Left => format!("{}\\{}", w.source().name(), x.total.name()),
        Side::Right => format!("{}/{}", x.total.name(), w.source().name()),
    };
    let (set, table) = build_levelwise(name, &levels, face, degeneracy, label)?;
    let mut keys = vec![(Simplex::new(0, 0, 0), Vec::new()); set.generator_count()];
    for (k, s) in &table {
        if !s.is_degenerate() {
            keys[s.generator()] = k.clone();
        }
    }
    let base_images = keys.iter().map(|k| k.0).collect();
    let to_base = SimplicialMap::new(set.clone(), index_base.clone(), base_images)?;
    Ok(Division {
        side,
        set,
        to_base,
        weight: w.clone(),
        max_dim,
        joins,
        keys,
        table,
    })
}

/// Vertex values of a face of a standard simplex, as an operator.
fn vertex_values(t: Simplex, d: &SimplicialSet) -> Vec<u8> {
    d.vertices(t)
        .into_iter()
        .map(|v| d.gen_name(v).parse::<u8>().expect("standard simplex vertex"))
        .collect()
}

/// The top simplex `α` when the weight is `(Δ[m], α)` on the nose.
fn representable(w: &SimplicialMap) -> Option<Simplex> {
    let src = w.source();
    let m = src.dimension()?;
    if *src != standard::simplex(m) {
        return None;
    }
    Some(w.image_of_gen(src.generator_count() - 1))
}

pub fn left_divide(ma: &SimplicialMap, x: &Cylinder, max_dim: usize) -> Result<Division, Error> {
    divide(Side::Left, ma, x, max_dim)
}

pub fn right_divide(x: &Cylinder, sb: &SimplicialMap, max_dim: usize) -> Result<Division, Error> {
    divide(Side::Right, sb, x, max_dim)
}

/// `f\X : N\X -> M\X` (or `X/f`) for `f : M -> N` over the base, given both
/// divisions of the same cylinder.
pub fn weight_map(f: &SimplicialMap, from: &Division, to: &Division) -> Result<SimplicialMap, Error> {
    if from.side != to.side || from.max_dim != to.max_dim {
        return Err(Error::Precondition("divisions do not match".into()));
    }
    if f.source() != to.weight.source() || f.target() != from.weight.source() {
        return Err(Error::Precondition("weight map does not match the divisions".into()));
    }
    let pre: Vec<SimplicialMap> = (0..=from.max_dim)
        .map(|n| match from.side {
            Side::Left => join_map(f, &SimplicialMap::identity(&to.joins[n].right), &to.joins[n], &from.joins[n]),
            Side::Right => join_map(&SimplicialMap::identity(&to.joins[n].left), f, &to.joins[n], &from.joins[n]),
        })
        .collect::<Result<_, _>>()?;
    let images = (0..from.set.generator_count())
        .map(|g| {
            let (idx, imgs) = &from.keys[g];
            let pulled: Vec<Simplex> = pre[idx.dim()].images().iter().map(|&s| apply_images(imgs, s)).collect();
            to.lookup(*idx, &pulled)
                .ok_or_else(|| Error::Precondition("restricted map is missing from the division".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SimplicialMap::new(from.set.clone(), to.set.clone(), images)?)
}

/// `M\h : M\X -> M\Y` for a cylinder map `h : X -> Y`.
pub fn cylinder_map(h: &SimplicialMap, from: &Division, to: &Division) -> Result<SimplicialMap, Error> {
    let images = (0..from.set.generator_count())
        .map(|g| {
            let (idx, imgs) = &from.keys[g];
            let pushed: Vec<Simplex> = imgs.iter().map(|&s| h.apply(s)).collect();
            to.lookup(*idx, &pushed)
                .ok_or_else(|| Error::Precondition("composite is not over the join".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SimplicialMap::new(from.set.clone(), to.set.clone(), images)?)
}

/// Cylinder maps `Y -> X`: maps of total objects over `A ⋆ B`.
pub fn cylinder_homs(y: &Cylinder, x: &Cylinder) -> Result<Vec<SimplicialMap>, Error> {
    let ab = x.join();
    all_maps_over(&y.total, &x.canonical(&ab), &y.canonical(&ab), DEFAULT_NODE_LIMIT)
        .ok_or_else(|| Error::SizeLimit("cylinder maps".into()))
}

/// The three hom-sets of the two-variable adjunction and the bijections
/// between them.
#[derive(Clone, Debug)]
pub struct AdjunctionCheck {
    /// maps `S -> M\X` over `B`
    pub left: usize,
    /// cylinder maps `M ⊠ S -> X`
    pub middle: usize,
    /// maps `M -> X/S` over `A`
    pub right: usize,
    pub bijective: bool,
}

/// Enumerates `hom(S, M\X)`, `hom(M ⊠ S, X)` and `hom(M, X/S)` and checks
/// that transposition is a bijection on both sides.
pub fn verify_division_adjunction(
    ma: &SimplicialMap,
    sb: &SimplicialMap,
    x: &Cylinder,
) -> Result<AdjunctionCheck, Error> {
    let (m, s) = (ma.source(), sb.source());
    let refl = exterior_product(ma, sb)?;
    let middle = cylinder_homs(&refl.cylinder, x)?;
    let left_div = left_divide(ma, x, s.dim_or_zero())?;
    let right_div = right_divide(x, sb, m.dim_or_zero())?;
    let left = all_maps_over(s, &left_div.to_base, sb, DEFAULT_NODE_LIMIT)
        .ok_or_else(|| Error::SizeLimit("maps into M\\X".into()))?;
    let right = all_maps_over(m, &right_div.to_base, ma, DEFAULT_NODE_LIMIT)
        .ok_or_else(|| Error::SizeLimit("maps into X/S".into()))?;

    let ms = Join::new(m, s);
    let mut to_left = Vec::with_capacity(middle.len());
    let mut to_right = Vec::with_capacity(middle.len());
    for phi in &middle {
        let on_join = refl.unit.then(phi)?;
        to_left.push(transpose(Side::Left, &on_join, &ms, sb, &left_div)?);
        to_right.push(transpose(Side::Right, &on_join, &ms, ma, &right_div)?);
    }
    let bijects = |images: &[SimplicialMap], homs: &[SimplicialMap]| {
        let mut seen: Vec<&[Simplex]> = images.iter().map(|f| f.images()).collect();
        seen.sort();
        let before = seen.len();
        seen.dedup();
        let mut all: Vec<&[Simplex]> = homs.iter().map(|f| f.images()).collect();
        all.sort();
        before == seen.len() && seen == all
    };
    Ok(AdjunctionCheck {
        left: left.len(),
        middle: middle.len(),
        right: right.len(),
        bijective: bijects(&to_left, &left) && bijects(&to_right, &right),
    })
}

/// The transpose `S -> M\X` (or `M -> X/S`) of a map `M ⋆ S -> X`; `over`
/// is the structure map of the transposed variable.
fn transpose(
    side: Side,
    phi: &SimplicialMap,
    ms: &Join,
    over: &SimplicialMap,
    div: &Division,
) -> Result<SimplicialMap, Error> {
    let src = over.source();
    let images = src
        .all_generators()
        .map(|t| {
            let chi = classifying_map(src, t);
            let j = &div.joins[t.dim()];
            let incl = match side {
                Side::Left => join_map(&SimplicialMap::identity(&ms.left), &chi, j, ms)?,
                Side::Right => join_map(&chi, &SimplicialMap::identity(&ms.right), j, ms)?,
            };
            let imgs: Vec<Simplex> = incl.images().iter().map(|&g| phi.apply(g)).collect();
            div.lookup(over.apply(t), &imgs)
                .ok_or_else(|| Error::Precondition("transpose is missing from the division".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SimplicialMap::new(src.clone(), div.set.clone(), images)?)
}

/// The four equivalent lifting conditions for `f : M -> N` over `A`,
/// `g : S -> T` over `B` and a cylinder `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibLiftCheck {
    /// `X -> A ⋆ B` lifts against `f ⋆̂ g` over `n ⋆ t`
    pub join_form: bool,
    /// `X` lifts against `f ⊠̂ g` in cylinders
    pub cylinder_form: bool,
    /// `f\X` lifts against `g` over `B`
    pub left_division: bool,
    /// `X/g` lifts against `f` over `A`
    pub right_division: bool,
}

impl LeibLiftCheck {
    pub fn agree(&self) -> bool {
        let v = self.join_form;
        self.cylinder_form == v && self.left_division == v && self.right_division == v
    }
}

fn enumerate(a: &SimplicialSet, p: &SimplicialMap, over: &SimplicialMap) -> Result<Vec<SimplicialMap>, Error> {
    all_maps_over(a, p, over, DEFAULT_NODE_LIMIT).ok_or_else(|| Error::SizeLimit(format!("maps out of {}", a.name())))
}

/// Every square `g -> q` over the base whose bottom lies over `over` has a
/// diagonal.
fn lifts_against(g: &SimplicialMap, q: &SimplicialMap, src_base: &SimplicialMap, tgt_base: &SimplicialMap, over: &SimplicialMap) -> Result<bool, Error> {
    let bottoms = enumerate(g.target(), tgt_base, over)?;
    let tops = enumerate(g.source(), src_base, &g.then(over)?)?;
    for bottom in &bottoms {
        let lower = g.then(bottom)?;
        for top in &tops {
            if top.then(q)? != lower {
                continue;
            }
            let sq = LiftingProblem::new(g.clone(), q.clone(), top.clone(), bottom.clone())?;
            match solve_lift(&sq, DEFAULT_NODE_LIMIT).status {
                Status::YesCertified | Status::YesBounded => {}
                Status::No => return Ok(false),
                Status::Exhausted => return Err(Error::SizeLimit("lifting search".into())),
            }
        }
    }
    Ok(true)
}

pub fn check_leibniz_lifts(
    f: &SimplicialMap,
    n: &SimplicialMap,
    g: &SimplicialMap,
    t: &SimplicialMap,
    x: &Cylinder,
) -> Result<LeibLiftCheck, Error> {
    if !f.is_mono() || !g.is_mono() {
        return Err(Error::NotMono);
    }
    let ab = x.join();
    let canonical = x.canonical(&ab);

    let lj = leibniz_join(f, g)?;
    let bottom = join_map(n, t, &lj.target_join, &ab)?;
    let corner_over = lj.map.then(&bottom)?;
    let mut join_form = true;
    for top in enumerate(&lj.corner.object, &canonical, &corner_over)? {
        let sq = LiftingProblem::new(lj.map.clone(), canonical.clone(), top, bottom.clone())?;
        if solve_lift(&sq, DEFAULT_NODE_LIMIT).status != Status::YesCertified {
            join_form = false;
            break;
        }
    }

    let lex = super::leibniz_exterior(f, n, g, t)?;
    let from_target: Vec<Vec<Simplex>> = cylinder_homs(&lex.target.cylinder, x)?
        .iter()
        .map(|h| lex.map.then(h).map(|m| m.images().to_vec()))
        .collect::<Result<_, _>>()?;
    let cylinder_form = cylinder_homs(&lex.source.cylinder, x)?
        .iter()
        .all(|h| from_target.iter().any(|r| r.as_slice() == h.images()));

    let nf = f.then(n)?;
    let tg = g.then(t)?;
    let dim_t = g.target().dim_or_zero();
    let dim_n = f.target().dim_or_zero();
    let n_x = left_divide(n, x, dim_t)?;
    let m_x = left_divide(&nf, x, dim_t)?;
    let fx = weight_map(f, &n_x, &m_x)?;
    let left_division = lifts_against(g, &fx, &n_x.to_base, &m_x.to_base, t)?;

    let x_t = right_divide(x, t, dim_n)?;
    let x_s = right_divide(x, &tg, dim_n)?;
    let xg = weight_map(g, &x_t, &x_s)?;
    let right_division = lifts_against(f, &xg, &x_t.to_base, &x_s.to_base, n)?;

    Ok(LeibLiftCheck {
        join_form,
        cylinder_form,
        left_division,
        right_division,
    })
}
