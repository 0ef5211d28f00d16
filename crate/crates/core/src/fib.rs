//! Fibration classes, homotopy categories, hom-spaces and the equivalence
//! checks built from them.

use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{recognize_nerve, CategoryBuilder, FiniteCategory, Functor};
use crate::colimits::{classifying_map, pullback, product, Pullback};
use crate::error::Error;
use crate::levelwise::build_levelwise;
use crate::lifting::anodyne::{is_absolute_wce, AnodyneOptions};
use crate::lifting::{
    all_maps_over, has_rlp, Certificate, Family, LiftingProblem, Status, Verdict, Witness,
};
use crate::map::SimplicialMap;
use crate::ops::{factor_through_mono, fibre_over_vertex};
use crate::sset::{Simplex, SimplicialSet};
use crate::standard;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FibrationKind {
    Inner,
    Left,
    Right,
    Kan,
    Trivial,
}

impl FibrationKind {
    pub fn parse(s: &str) -> Option<FibrationKind> {
        Some(match s {
            "inner" => FibrationKind::Inner,
            "left" => FibrationKind::Left,
            "right" => FibrationKind::Right,
            "kan" => FibrationKind::Kan,
            "trivial" => FibrationKind::Trivial,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            FibrationKind::Inner => "inner",
            FibrationKind::Left => "left",
            FibrationKind::Right => "right",
            FibrationKind::Kan => "kan",
            FibrationKind::Trivial => "trivial",
        }
    }

    pub fn family(self) -> Family {
        match self {
            FibrationKind::Inner => Family::InnerHorns,
            FibrationKind::Left => Family::LeftHorns,
            FibrationKind::Right => Family::RightHorns,
            FibrationKind::Kan => Family::AllHorns,
            FibrationKind::Trivial => Family::Boundaries,
        }
    }
}

/// Node limit used by the checks in this module.
pub const NODE_LIMIT: u64 = crate::lifting::DEFAULT_NODE_LIMIT;

pub fn classify_fibration(p: &SimplicialMap, kind: FibrationKind, max_dim: usize) -> Verdict {
    has_rlp(p, &kind.family(), max_dim, NODE_LIMIT)
}

fn to_point(x: &SimplicialSet) -> SimplicialMap {
    SimplicialMap::to_point(x, &standard::point())
}

pub fn is_quasicategory(x: &SimplicialSet, max_dim: usize) -> Verdict {
    classify_fibration(&to_point(x), FibrationKind::Inner, max_dim)
}

fn require_qcat(x: &SimplicialSet, max_dim: usize) -> Result<Verdict, Error> {
    let v = is_quasicategory(x, max_dim);
    if v.status == Status::No {
        return Err(Error::Precondition(format!("{} is not a quasi-category", x.name())));
    }
    Ok(v)
}

fn require_inner(p: &SimplicialMap, max_dim: usize) -> Result<Verdict, Error> {
    let v = classify_fibration(p, FibrationKind::Inner, max_dim);
    if v.status == Status::No {
        return Err(Error::Precondition(format!(
            "{} -> {} is not an inner fibration",
            p.source().name(),
            p.target().name()
        )));
    }
    Ok(v)
}

/// The homotopy category of a quasi-category: vertices, and edges up to the
/// relation generated by 2-simplices with a degenerate outer face.
#[derive(Clone, Debug)]
pub struct HomotopyCategory {
    pub set: SimplicialSet,
    pub category: Arc<FiniteCategory>,
    /// class of every 1-simplex, degenerate ones included
    edge_class: HashMap<Simplex, usize>,
    /// chosen representative of each class
    representative: Vec<Simplex>,
}

impl HomotopyCategory {
    /// Object for a vertex generator.
    pub fn object(&self, v: usize) -> usize {
        v
    }

    pub fn class_of(&self, edge: Simplex) -> usize {
        self.edge_class[&edge]
    }

    pub fn representative(&self, morphism: usize) -> Simplex {
        self.representative[morphism]
    }

    /// Every 2-simplex `σ` satisfies `[d1 σ] = [d0 σ] ∘ [d2 σ]`; in particular
    /// any two fillers of the same composable pair give the same class.
    pub fn composition_well_defined(&self) -> bool {
        let x = &self.set;
        x.simplices_at(2).into_iter().all(|s| {
            let f = self.class_of(x.face(s, 2));
            let g = self.class_of(x.face(s, 0));
            self.category.compose(g, f) == Some(self.class_of(x.face(s, 1)))
        })
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

pub fn homotopy_category(x: &SimplicialSet, max_dim: usize) -> Result<HomotopyCategory, Error> {
    require_qcat(x, max_dim)?;
    let edges = x.simplices_at(1);
    let pos: HashMap<Simplex, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    let triangles = x.simplices_at(2);
    for &t in &triangles {
        let (d0, d1, d2) = (x.face(t, 0), x.face(t, 1), x.face(t, 2));
        let pairs = [(d0.is_degenerate(), d2, d1), (d2.is_degenerate(), d0, d1)];
        for (ok, a, b) in pairs {
            if ok {
                let (ra, rb) = (find(&mut parent, pos[&a]), find(&mut parent, pos[&b]));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    // identity classes take the ids of their vertices, as in the builder
    let mut class_ids: HashMap<usize, usize> = HashMap::new();
    let mut representative = Vec::new();
    for v in x.generator_range(0) {
        let r = find(&mut parent, pos[&x.constant(v, 1)]);
        class_ids.insert(r, v);
        representative.push(x.constant(v, 1));
    }
    for (i, &e) in edges.iter().enumerate() {
        let r = find(&mut parent, i);
        class_ids.entry(r).or_insert_with(|| {
            representative.push(e);
            representative.len() - 1
        });
    }
    let edge_class: HashMap<Simplex, usize> = edges
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, class_ids[&find(&mut parent, i)]))
        .collect();

    let clean = |s: &str| s.replace(';', ",");
    let mut b = CategoryBuilder::new(format!("ho({})", x.name()));
    let mut names = Vec::with_capacity(representative.len());
    for v in x.generator_range(0) {
        let id = format!("id_{}", clean(x.gen_name(v)));
        b.object_with_identity(clean(x.gen_name(v)), id.clone());
        names.push(id);
    }
    for &r in &representative[names.len()..] {
        let name = clean(&x.show(r));
        b.morphism(
            name.clone(),
            clean(x.gen_name(x.face(r, 1).generator())),
            clean(x.gen_name(x.face(r, 0).generator())),
        );
        names.push(name);
    }
    // first filler in canonical order for each (d2, d0)
    let mut fillers: HashMap<(Simplex, Simplex), Simplex> = HashMap::new();
    for &t in &triangles {
        fillers.entry((x.face(t, 2), x.face(t, 0))).or_insert(t);
    }
    for (f, &rf) in representative.iter().enumerate() {
        for (g, &rg) in representative.iter().enumerate() {
            if x.face(rf, 0) != x.face(rg, 1) {
                continue;
            }
            let t = fillers.get(&(rf, rg)).ok_or_else(|| {
                Error::Precondition(format!("no composite of {} and {}", x.show(rf), x.show(rg)))
            })?;
            let h = edge_class[&x.face(*t, 1)];
            b.composite(names[f].clone(), names[g].clone(), names[h].clone());
        }
    }
    let category = b.build()?;
    let ho = HomotopyCategory {
        set: x.clone(),
        category: Arc::new(category),
        edge_class,
        representative,
    };
    if !ho.composition_well_defined() {
        return Err(Error::Precondition(format!(
            "composition in ho({}) depends on the filler",
            x.name()
        )));
    }
    Ok(ho)
}

/// The functor induced on homotopy categories.
#[derive(Clone, Debug)]
pub struct HoFunctor {
    pub source: HomotopyCategory,
    pub target: HomotopyCategory,
    pub functor: Functor,
}

pub fn ho_functor(p: &SimplicialMap, max_dim: usize) -> Result<HoFunctor, Error> {
    let source = homotopy_category(p.source(), max_dim)?;
    let target = homotopy_category(p.target(), max_dim)?;
    ho_functor_between(p, source, target)
}

fn ho_functor_between(
    p: &SimplicialMap,
    source: HomotopyCategory,
    target: HomotopyCategory,
) -> Result<HoFunctor, Error> {
    let objects = p.source().generator_range(0).map(|v| p.image_of_gen(v).generator()).collect();
    let morphisms = source
        .representative
        .iter()
        .map(|&r| target.class_of(p.apply(r)))
        .collect();
    let functor = Functor::new(source.category.clone(), target.category.clone(), objects, morphisms)?;
    Ok(HoFunctor {
        source,
        target,
        functor,
    })
}

/// The functor between recognized nerves that `p` is the nerve of.
pub fn nerve_functor(p: &SimplicialMap) -> Option<Functor> {
    let s = recognize_nerve(p.source())?;
    let t = recognize_nerve(p.target())?;
    let x = p.source();
    let objects: Vec<usize> = x.generator_range(0).map(|v| p.image_of_gen(v).generator()).collect();
    let mut morphisms = vec![0; s.category.morphism_count()];
    for v in x.generator_range(0) {
        morphisms[s.category.identity(v)] = t.category.identity(objects[v]);
    }
    for e in x.generator_range(1) {
        let img = p.image_of_gen(e);
        morphisms[s.edge_morphism[&e]] = if img.is_degenerate() {
            t.category.identity(img.generator())
        } else {
            t.edge_morphism[&img.generator()]
        };
    }
    Functor::new(Arc::new(s.category.clone()), Arc::new(t.category.clone()), objects, morphisms).ok()
}

/// A target isomorphism out of the image of a source object, with the
/// isomorphisms of the source over it.
#[derive(Clone, Debug)]
pub struct IsoLift {
    pub object: usize,
    pub iso: usize,
    pub lifts: Vec<usize>,
}

/// Isomorphism lifting data of `f` for every object and every isomorphism
/// out of its image.
pub fn iso_lifts(f: &Functor) -> Vec<IsoLift> {
    let (s, t) = (&f.source, &f.target);
    let mut out = Vec::new();
    for x in 0..s.object_count() {
        let fx = f.on_object(x);
        for g in 0..t.morphism_count() {
            if t.source(g) != fx || !t.is_isomorphism(g) {
                continue;
            }
            let lifts = (0..s.morphism_count())
                .filter(|&h| s.source(h) == x && s.is_isomorphism(h) && f.on_morphism(h) == g)
                .collect();
            out.push(IsoLift { object: x, iso: g, lifts });
        }
    }
    out
}

pub fn is_isofibration_functor(f: &Functor) -> bool {
    iso_lifts(f).iter().all(|l| !l.lifts.is_empty())
}

/// Every isomorphism out of `F x` has exactly one lift out of `x`.
pub fn is_discrete_isofibration(f: &Functor) -> bool {
    iso_lifts(f).iter().all(|l| l.lifts.len() == 1)
}

#[derive(Clone, Debug)]
pub struct IsofibrationReport {
    /// inner-fibration verdict combined with the quasi-category checks
    pub inner: Verdict,
    /// first isomorphism without a lift, described
    pub missing_lift: Option<String>,
    pub discrete: Option<bool>,
    pub verdict: Verdict,
}

pub fn is_isofibration(p: &SimplicialMap, max_dim: usize) -> Result<IsofibrationReport, Error> {
    let qx = require_qcat(p.source(), max_dim)?;
    let qy = require_qcat(p.target(), max_dim)?;
    let inner = classify_fibration(p, FibrationKind::Inner, max_dim).and(qx).and(qy);
    if inner.status == Status::No {
        return Ok(IsofibrationReport {
            verdict: inner.clone(),
            inner,
            missing_lift: None,
            discrete: None,
        });
    }
    let ho = ho_functor(p, max_dim)?;
    let lifts = iso_lifts(&ho.functor);
    let discrete = Some(lifts.iter().all(|l| l.lifts.len() == 1));
    let missing = lifts.iter().find(|l| l.lifts.is_empty()).map(|l| {
        let (s, t) = (&ho.functor.source, &ho.functor.target);
        format!("the isomorphism {} has no lift at {}", t.morphism_name(l.iso), s.object_name(l.object))
    });
    let verdict = match &missing {
        Some(m) => Verdict::no(Witness::Note(m.clone())),
        None => inner.clone(),
    };
    Ok(IsofibrationReport {
        inner,
        missing_lift: missing,
        discrete,
        verdict,
    })
}

/// Map between the fibres over the vertex `b` induced by `f` over `B`.
pub fn fibre_map(f: &SimplicialMap, p: &SimplicialMap, q: &SimplicialMap, b: usize) -> Result<SimplicialMap, Error> {
    let (_, ix) = fibre_over_vertex(p, b);
    let (_, iy) = fibre_over_vertex(q, b);
    let fx = ix.then(f)?;
    factor_through_mono(&fx, &iy).ok_or_else(|| Error::Precondition("map is not over the base".into()))
}

fn require_over(f: &SimplicialMap, p: &SimplicialMap, q: &SimplicialMap) -> Result<(), Error> {
    if f.source() != p.source() || f.target() != q.source() || p.target() != q.target() {
        return Err(Error::Precondition("objects do not match".into()));
    }
    if q.after(f)? != *p {
        return Err(Error::Precondition("map is not over the base".into()));
    }
    Ok(())
}

/// Inner-fibration verdict for `f : X -> Y` over `B`, together with the
/// isofibration check of every fibre map over a vertex.
pub fn fibrewise_isofibration(
    f: &SimplicialMap,
    p: &SimplicialMap,
    q: &SimplicialMap,
    max_dim: usize,
) -> Result<Verdict, Error> {
    require_over(f, p, q)?;
    require_inner(p, max_dim)?;
    require_inner(q, max_dim)?;
    let mut v = classify_fibration(f, FibrationKind::Inner, max_dim);
    for b in p.target().generator_range(0) {
        if v.status == Status::No {
            break;
        }
        let fb = fibre_map(f, p, q, b)?;
        let r = is_isofibration(&fb, max_dim)?;
        let part = r.verdict.with_note(format!("fibre over {}", p.target().gen_name(b)));
        v = v.and(part);
    }
    Ok(v)
}

/// The right hom-space: `n`-simplices are `(n+1)`-simplices of `X` whose
/// first `n+1` vertices are `x` and whose last vertex is `y`. Levels up to
/// `max_dim`.
pub fn hom_space(x: &SimplicialSet, a: usize, b: usize, max_dim: usize) -> Result<SimplicialSet, Error> {
    Ok(hom_space_table(x, a, b, max_dim)?.0)
}

fn hom_space_table(
    x: &SimplicialSet,
    a: usize,
    b: usize,
    max_dim: usize,
) -> Result<(SimplicialSet, HashMap<Simplex, Simplex>), Error> {
    if x.gen_dim(a) != 0 || x.gen_dim(b) != 0 {
        return Err(Error::Precondition("hom-space endpoints must be vertices".into()));
    }
    let levels: Vec<Vec<Simplex>> = (0..=max_dim)
        .map(|n| {
            x.simplices_at(n + 1)
                .into_iter()
                .filter(|&s| {
                    let v = x.vertices(s);
                    v[n + 1] == b && v[..=n].iter().all(|&u| u == a)
                })
                .collect()
        })
        .collect();
    let name = format!("Hom({},{})", x.gen_name(a), x.gen_name(b));
    let (set, table) = build_levelwise(name, &levels, |&s, i| x.face(s, i), |&s, i| x.degeneracy(s, i), |&s| x.show(s))?;
    Ok((set, table))
}

/// Hom-space inside the fibre `X_f` of `p` over a 1-simplex `f` of the base.
pub fn hom_space_over_edge(
    p: &SimplicialMap,
    a: usize,
    b: usize,
    f: Simplex,
    max_dim: usize,
) -> Result<SimplicialSet, Error> {
    let e = EdgeFibre::new(p, f)?;
    let (a, b) = e.endpoints(a, b)?;
    hom_space(&e.pullback.object, a, b, max_dim)
}

/// The pullback `X_f -> Δ[1]` of `p` along a 1-simplex `f`.
struct EdgeFibre {
    pullback: Pullback,
    base: SimplicialSet,
    edge: Simplex,
}

impl EdgeFibre {
    fn new(p: &SimplicialMap, f: Simplex) -> Result<EdgeFibre, Error> {
        if f.dim() != 1 {
            return Err(Error::Precondition("expected a 1-simplex".into()));
        }
        let chi = classifying_map(p.target(), f);
        Ok(EdgeFibre {
            pullback: pullback(p, &chi)?,
            base: p.target().clone(),
            edge: f,
        })
    }

    /// Vertices of `X_f` over the two ends of `Δ[1]`.
    fn endpoints(&self, a: usize, b: usize) -> Result<(usize, usize), Error> {
        let px = &self.pullback.proj_x;
        let over = |v: usize, end: usize| -> Result<usize, Error> {
            let base_v = self.base.vertex(self.edge, end);
            let x = px.target();
            let pv = self.pullback.pair_simplex(x.gen_simplex(v), Simplex::new(0, end, 0));
            match pv {
                Some(s) => Ok(s.generator()),
                None => Err(Error::Precondition(format!(
                    "{} does not lie over {}",
                    x.gen_name(v),
                    self.base.show(base_v)
                ))),
            }
        };
        Ok((over(a, 0)?, over(b, 1)?))
    }
}

/// Right lifting against every boundary inclusion, i.e. `K -> Δ[0]` is a
/// trivial fibration.
pub fn is_contractible_kan(k: &SimplicialSet, max_dim: usize) -> Verdict {
    classify_fibration(&to_point(k), FibrationKind::Trivial, max_dim)
}

fn hom_dim(max_dim: usize) -> usize {
    max_dim.saturating_sub(1).max(1)
}

/// Map of hom-spaces `Hom_X(a,b) -> Hom_Y(fa,fb)`.
fn hom_map(f: &SimplicialMap, a: usize, b: usize, dim: usize) -> Result<SimplicialMap, Error> {
    let (hx, tx) = hom_space_table(f.source(), a, b, dim)?;
    let fa = f.image_of_gen(a).generator();
    let fb = f.image_of_gen(b).generator();
    let (hy, ty) = hom_space_table(f.target(), fa, fb, dim)?;
    let back: HashMap<Simplex, Simplex> = tx.into_iter().map(|(k, v)| (v, k)).collect();
    let images = hx
        .all_generators()
        .map(|g| ty[&f.apply(back[&g])])
        .collect();
    Ok(SimplicialMap::new(hx, hy, images)?)
}

fn hom_equivalence(h: &SimplicialMap) -> Result<Verdict, Error> {
    Ok(is_absolute_wce(h, &AnodyneOptions::default())?.verdict)
}

/// Essentially surjective on homotopy categories and an equivalence on every
/// hom-space.
pub fn qcat_equivalence(f: &SimplicialMap, max_dim: usize) -> Result<Verdict, Error> {
    let qx = require_qcat(f.source(), max_dim)?;
    let qy = require_qcat(f.target(), max_dim)?;
    if f.is_iso() {
        return Ok(Verdict::certified(Certificate::Isomorphism));
    }
    if let Some(functor) = nerve_functor(f) {
        return Ok(if !functor.is_essentially_surjective() {
            Verdict::no(Witness::Note("not essentially surjective".into()))
        } else if !functor.is_fully_faithful() {
            Verdict::no(Witness::Note("not fully faithful".into()))
        } else {
            Verdict::certified(Certificate::CategoryEquivalence)
        });
    }
    let ho = ho_functor(f, max_dim)?;
    if !ho.functor.is_essentially_surjective() {
        return Ok(Verdict::no(Witness::Note("not essentially surjective on homotopy categories".into())));
    }
    let mut v = qx.and(qy);
    let x = f.source();
    for a in x.generator_range(0) {
        for b in x.generator_range(0) {
            let h = hom_map(f, a, b, hom_dim(max_dim))?;
            let part = hom_equivalence(&h)?;
            if part.status == Status::No {
                let note = format!("Hom({},{}) is not mapped by an equivalence", x.gen_name(a), x.gen_name(b));
                return Ok(part.with_note(note));
            }
            v = v.and(part);
        }
    }
    if v.status == Status::YesCertified {
        v.status = Status::YesBounded;
    }
    if v.status == Status::YesBounded {
        v.cutoff = Some(max_dim);
    }
    Ok(v)
}

/// Verdicts for the three equivalent characterisations of trivial
/// fibrations among inner fibrations.
#[derive(Clone, Debug)]
pub struct Inn2TrivReport {
    /// `p` is a trivial fibration
    pub trivial: Verdict,
    /// every pullback `X_f -> Δ[1]` along a 1-simplex is a trivial fibration
    pub edges: Verdict,
    /// fibres are nonempty and every hom-space `Hom_{X_f}(x,y)` is a
    /// contractible Kan complex
    pub homs: Verdict,
    pub agree: bool,
}

fn empty_fibre_square(p: &SimplicialMap, b: usize) -> Result<LiftingProblem, Error> {
    let e = standard::empty();
    let base = p.target();
    LiftingProblem::new(
        standard::boundary_inclusion(0),
        p.clone(),
        SimplicialMap::from_empty(&e, p.source()),
        classifying_map(base, base.gen_simplex(b)),
    )
}

pub fn check_inn2triv(p: &SimplicialMap, max_dim: usize) -> Result<Inn2TrivReport, Error> {
    require_inner(p, max_dim)?;
    let base = p.target();
    let trivial = classify_fibration(p, FibrationKind::Trivial, max_dim);

    let mut edges = Verdict::certified(Certificate::Isomorphism);
    let mut homs = Verdict::certified(Certificate::Isomorphism);
    for b in base.generator_range(0) {
        if p.images().iter().all(|s| s.generator() != b || s.dim() != 0) {
            let sq = empty_fibre_square(p, b)?;
            homs = homs.and(Verdict::no(Witness::Counterexample(Box::new(sq))));
            break;
        }
    }
    for f in base.simplices_at(1) {
        let e = EdgeFibre::new(p, f)?;
        let pf = &e.pullback.proj_y;
        let part = classify_fibration(pf, FibrationKind::Trivial, max_dim)
            .with_note(format!("over {}", base.show(f)));
        edges = edges.and(part);
        if homs.status == Status::No {
            continue;
        }
        let x = p.source();
        let (s, t) = (base.vertex(f, 0).generator(), base.vertex(f, 1).generator());
        for a in x.generator_range(0).filter(|&a| p.image_of_gen(a).generator() == s) {
            for b in x.generator_range(0).filter(|&b| p.image_of_gen(b).generator() == t) {
                let (a2, b2) = e.endpoints(a, b)?;
                let h = hom_space(&e.pullback.object, a2, b2, hom_dim(max_dim))?;
                let part = is_contractible_kan(&h, hom_dim(max_dim)).with_note(format!(
                    "Hom({},{}) over {}",
                    x.gen_name(a),
                    x.gen_name(b),
                    base.show(f)
                ));
                homs = homs.and(part);
                if homs.status == Status::No {
                    break;
                }
            }
            if homs.status == Status::No {
                break;
            }
        }
    }
    let agree = crate::lifting::agree(&[trivial.status, edges.status, homs.status]);
    Ok(Inn2TrivReport {
        trivial,
        edges,
        homs,
        agree,
    })
}

/// `Fun_B((A,a),(X,p))`: level `n` is the set of maps `Δ[n] × A -> X` over
/// `B`, computed up to `max_dim`.
#[derive(Clone, Debug)]
pub struct FunSpace {
    pub set: SimplicialSet,
    /// images of the generators of `Δ[n] × A`, for every generator
    pub keys: Vec<Vec<Simplex>>,
    table: HashMap<(usize, Vec<Simplex>), Simplex>,
}

impl FunSpace {
    /// The simplex given by a map `Δ[n] × A -> X`, by its generator images.
    pub fn lookup(&self, n: usize, images: &[Simplex]) -> Option<Simplex> {
        self.table.get(&(n, images.to_vec())).copied()
    }
}

fn apply_images(images: &[Simplex], s: Simplex) -> Simplex {
    let a = images[s.generator()];
    Simplex::new(s.dim(), a.generator(), crate::delta::compose_surjection_masks(s.dim(), s.mask(), a.mask()))
}

pub fn fun_over(a: &SimplicialMap, p: &SimplicialMap, max_dim: usize) -> Result<FunSpace, Error> {
    if a.target() != p.target() {
        return Err(Error::Precondition("maps have different bases".into()));
    }
    let products: Vec<Pullback> = (0..=max_dim).map(|n| product(&standard::simplex(n), a.source())).collect();
    let top = |n: usize| {
        let d = &products[n].proj_x;
        let d = d.target();
        d.gen_simplex(d.generator_count() - 1)
    };
    let induced = |from: usize, to: usize, s: Simplex| -> Result<SimplicialMap, Error> {
        let delta = classifying_map(products[to].proj_x.target(), s);
        let hx = products[from].proj_x.then(&delta)?;
        products[to].mediate(&hx, &products[from].proj_y)
    };
    // cofaces[n][i] : P_{n-1} -> P_n and codegeneracies[n][i] : P_{n+1} -> P_n
    let mut cofaces: Vec<Vec<SimplicialMap>> = vec![Vec::new()];
    let mut codegeneracies: Vec<Vec<SimplicialMap>> = Vec::new();
    for n in 0..=max_dim {
        if n > 0 {
            let d = products[n].proj_x.target();
            let row = (0..=n).map(|i| induced(n - 1, n, d.face(top(n), i))).collect::<Result<_, _>>()?;
            cofaces.push(row);
        }
        if n < max_dim {
            let d = products[n].proj_x.target();
            let row = (0..=n).map(|i| induced(n + 1, n, d.degeneracy(top(n), i))).collect::<Result<_, _>>()?;
            codegeneracies.push(row);
        } else {
            codegeneracies.push(Vec::new());
        }
    }
    let mut levels: Vec<Vec<(usize, Vec<Simplex>)>> = Vec::new();
    for (n, pb) in products.iter().enumerate() {
        let over = pb.proj_y.then(a)?;
        let maps = all_maps_over(&pb.object, p, &over, NODE_LIMIT)
            .ok_or_else(|| Error::SizeLimit(format!("maps Δ[{n}]×{} -> {}", a.source().name(), p.source().name())))?;
        levels.push(maps.into_iter().map(|m| (n, m.images().to_vec())).collect());
    }
    let face = |k: &(usize, Vec<Simplex>), i: usize| -> (usize, Vec<Simplex>) {
        let (n, images) = k;
        let d = &cofaces[*n][i];
        (n - 1, d.images().iter().map(|&s| apply_images(images, s)).collect())
    };
    let degeneracy = |k: &(usize, Vec<Simplex>), i: usize| -> (usize, Vec<Simplex>) {
        let (n, images) = k;
        let s = &codegeneracies[*n][i];
        (n + 1, s.images().iter().map(|&t| apply_images(images, t)).collect())
    };
    let label = |k: &(usize, Vec<Simplex>)| -> String {
        let x = p.source();
        let parts: Vec<String> = k.1.iter().map(|&s| x.show(s)).collect();
        format!("[{}]", parts.join(","))
    };
    // the builder only asks for degeneracies of elements below the top level
    let name = format!("Fun_{}({},{})", p.target().name(), a.source().name(), p.source().name());
    let (set, table) = build_levelwise(name, &levels, face, degeneracy, label)?;
    let mut keys = vec![Vec::new(); set.generator_count()];
    for (k, s) in &table {
        if !s.is_degenerate() {
            keys[s.generator()] = k.1.clone();
        }
    }
    Ok(FunSpace { set, keys, table })
}

/// Post-composition `Fun_B(A, X) -> Fun_B(A, Y)` with `u` over `B`.
pub fn fun_over_map(source: &FunSpace, target: &FunSpace, u: &SimplicialMap) -> Result<SimplicialMap, Error> {
    let images = source
        .set
        .all_generators()
        .map(|g| {
            let imgs: Vec<Simplex> = source.keys[g.generator()].iter().map(|&s| u.apply(s)).collect();
            target
                .lookup(g.dim(), &imgs)
                .ok_or_else(|| Error::Precondition("composite is not over the base".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SimplicialMap::new(source.set.clone(), target.set.clone(), images)?)
}

/// Verdicts for the computable conditions characterising fibrewise
/// equivalences between inner fibrations over `B`.
#[derive(Clone, Debug)]
pub struct ParaequivReport {
    /// every fibre map `X_f -> Y_f` over a 1-simplex is an equivalence
    pub fibres: Verdict,
    /// every `Fun_B((Δ[1],f), X) -> Fun_B((Δ[1],f), Y)` is an equivalence
    pub sections: Verdict,
    /// fibrewise essentially surjective and parametrised fully faithful
    pub pointwise: Verdict,
    pub agree: bool,
    pub notes: Vec<String>,
}

pub fn check_paraequiv(
    u: &SimplicialMap,
    p: &SimplicialMap,
    q: &SimplicialMap,
    max_dim: usize,
) -> Result<ParaequivReport, Error> {
    require_over(u, p, q)?;
    require_inner(p, max_dim)?;
    require_inner(q, max_dim)?;
    let base = p.target();
    let mut fibres = Verdict::certified(Certificate::Isomorphism);
    let mut sections = Verdict::certified(Certificate::Isomorphism);
    let mut pointwise = Verdict::certified(Certificate::Isomorphism);

    for f in base.simplices_at(1) {
        let ex = EdgeFibre::new(p, f)?;
        let ey = EdgeFibre::new(q, f)?;
        let uf = ey
            .pullback
            .mediate(&ex.pullback.proj_x.then(u)?, &ex.pullback.proj_y)?;
        let over = format!("over {}", base.show(f));
        if fibres.status != Status::No {
            fibres = fibres.and(qcat_equivalence(&uf, max_dim)?.with_note(over.clone()));
        }
        if sections.status != Status::No {
            let chi = classifying_map(base, f);
            let fx = fun_over(&chi, p, max_dim)?;
            let fy = fun_over(&chi, q, max_dim)?;
            let m = fun_over_map(&fx, &fy, u)?;
            sections = sections.and(qcat_equivalence(&m, max_dim)?.with_note(over.clone()));
        }
        if pointwise.status == Status::No {
            continue;
        }
        let x = p.source();
        let (s, t) = (base.vertex(f, 0).generator(), base.vertex(f, 1).generator());
        'pairs: for a in x.generator_range(0).filter(|&a| p.image_of_gen(a).generator() == s) {
            for b in x.generator_range(0).filter(|&b| p.image_of_gen(b).generator() == t) {
                let (a2, b2) = ex.endpoints(a, b)?;
                let h = hom_map(&uf, a2, b2, hom_dim(max_dim))?;
                let part = hom_equivalence(&h)?.with_note(format!(
                    "Hom({},{}) {over}",
                    x.gen_name(a),
                    x.gen_name(b)
                ));
                pointwise = pointwise.and(part);
                if pointwise.status == Status::No {
                    break 'pairs;
                }
            }
        }
    }
    for b in base.generator_range(0) {
        if pointwise.status == Status::No {
            break;
        }
        let ub = fibre_map(u, p, q, b)?;
        let ho = ho_functor(&ub, max_dim)?;
        if !ho.functor.is_essentially_surjective() {
            let note = format!("fibre over {} is not essentially surjective", base.gen_name(b));
            pointwise = pointwise.and(Verdict::no(Witness::Note(note)));
        }
    }
    if pointwise.status == Status::YesCertified {
        pointwise.status = Status::YesBounded;
        pointwise.cutoff = Some(max_dim);
    }
    let agree = crate::lifting::agree(&[fibres.status, sections.status, pointwise.status]);
    Ok(ParaequivReport {
        fibres,
        sections,
        pointwise,
        agree,
        notes: vec!["weak equivalence in the model structure itself is not decided".into()],
    })
}
