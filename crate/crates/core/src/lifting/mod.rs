//! Lifting problems: single squares, right lifting properties against
//! families of monos, factorizations and anodyne certification.

pub mod anodyne;
pub mod search;
pub mod soa;
pub mod verdict;

use std::fmt;

use crate::category::recognize_nerve;
use crate::delta::{compress_mask, Mask};
use crate::error::Error;
use crate::map::SimplicialMap;
use crate::sset::{Simplex, SimplicialSet};
use crate::standard;

pub use search::TargetIndex;
use search::Extension;
pub use search::Flow;
pub use verdict::*;

/// Default bound on backtracking nodes per query.
pub const DEFAULT_NODE_LIMIT: u64 = 50_000_000;

#[derive(Clone, Debug)]
pub enum Family {
    InnerHorns,
    LeftHorns,
    RightHorns,
    AllHorns,
    Boundaries,
    Explicit(Vec<SimplicialMap>),
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        Some(match s {
            "inner" | "inner-horns" => Family::InnerHorns,
            "left" | "left-horns" => Family::LeftHorns,
            "right" | "right-horns" => Family::RightHorns,
            "horns" | "all-horns" => Family::AllHorns,
            "boundaries" => Family::Boundaries,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::InnerHorns => "inner-horns",
            Family::LeftHorns => "left-horns",
            Family::RightHorns => "right-horns",
            Family::AllHorns => "all-horns",
            Family::Boundaries => "boundaries",
            Family::Explicit(_) => "explicit",
        }
    }

    /// Members in canonical order: by dimension, then horn index.
    pub fn members(&self, max_dim: usize) -> Vec<Member> {
        let horns = |keep: &dyn Fn(usize, usize) -> bool| {
            let mut out = Vec::new();
            for n in 1..=max_dim {
                for k in 0..=n {
                    if keep(n, k) {
                        out.push(Member::Horn(n, k));
                    }
                }
            }
            out
        };
        match self {
            Family::InnerHorns => horns(&|n, k| 0 < k && k < n),
            Family::LeftHorns => horns(&|n, k| k < n),
            Family::RightHorns => horns(&|_, k| 0 < k),
            Family::AllHorns => horns(&|_, _| true),
            Family::Boundaries => (0..=max_dim).map(Member::Boundary).collect(),
            Family::Explicit(maps) => (0..maps.len()).map(Member::Explicit).collect(),
        }
    }

    fn explicit(&self, i: usize) -> &SimplicialMap {
        match self {
            Family::Explicit(maps) => &maps[i],
            _ => panic!("not an explicit family"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Member {
    Boundary(usize),
    Horn(usize, usize),
    Explicit(usize),
}

impl Member {
    pub fn dim(&self, family: &Family) -> usize {
        match *self {
            Member::Boundary(n) | Member::Horn(n, _) => n,
            Member::Explicit(i) => family.explicit(i).target().dim_or_zero(),
        }
    }

    pub fn inclusion(&self, family: &Family) -> SimplicialMap {
        match *self {
            Member::Boundary(n) => standard::boundary_inclusion(n),
            Member::Horn(n, k) => standard::horn_inclusion(n, k).expect("valid horn"),
            Member::Explicit(i) => family.explicit(i).clone(),
        }
    }
}

impl fmt::Display for Member {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Member::Boundary(n) => write!(f, "∂Δ[{n}]"),
            Member::Horn(n, k) => write!(f, "Λ^{k}[{n}]"),
            Member::Explicit(i) => write!(f, "explicit#{i}"),
        }
    }
}

/// An unsolved square in raw form: images of the generators of the
/// member's source and target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawSquare {
    pub member: Member,
    pub top: Vec<Simplex>,
    pub bottom: Vec<Simplex>,
}

impl RawSquare {
    pub fn to_problem(&self, family: &Family, p: &SimplicialMap) -> LiftingProblem {
        let i = self.member.inclusion(family);
        let top = SimplicialMap::new(i.source().clone(), p.source().clone(), self.top.clone()).expect("top map");
        let bottom =
            SimplicialMap::new(i.target().clone(), p.target().clone(), self.bottom.clone()).expect("bottom map");
        LiftingProblem::new(i, p.clone(), top, bottom).expect("square commutes")
    }
}

/// Enumerates squares from family members into `p` and reports those
/// without a diagonal.
pub struct RlpScan<'a> {
    index: &'a TargetIndex,
    family: &'a Family,
    limit: u64,
    pub budget: BudgetReport,
    pub exhausted: bool,
    target_index: Option<TargetIndex>,
}

impl<'a> RlpScan<'a> {
    pub fn new(index: &'a TargetIndex, family: &'a Family, limit: u64) -> RlpScan<'a> {
        RlpScan {
            index,
            family,
            limit,
            budget: BudgetReport::default(),
            exhausted: false,
            target_index: None,
        }
    }

    fn tick(&mut self) -> bool {
        self.budget.nodes += 1;
        if self.budget.nodes > self.limit {
            self.exhausted = true;
        }
        !self.exhausted
    }

    /// Visits unsolved squares for `member` in canonical order.
    pub fn scan_member(&mut self, member: Member, visit: &mut dyn FnMut(RawSquare) -> Flow) -> Flow {
        self.budget.max_dim = self.budget.max_dim.max(member.dim(self.family));
        match member {
            Member::Boundary(n) => self.scan_simplex(member, n, None, visit),
            Member::Horn(n, k) => self.scan_simplex(member, n, Some(k), visit),
            Member::Explicit(_) => self.scan_explicit(member, visit),
        }
    }

    pub fn first_unsolved(&mut self, member: Member) -> Option<RawSquare> {
        let mut found = None;
        self.scan_member(member, &mut |sq| {
            found = Some(sq);
            Flow::Stop
        });
        found
    }

    fn scan_simplex(
        &mut self,
        member: Member,
        n: usize,
        skip: Option<usize>,
        visit: &mut dyn FnMut(RawSquare) -> Flow,
    ) -> Flow {
        let y_set = self.index.map().target().clone();
        for y in y_set.simplices_at(n) {
            let y_faces: Vec<Simplex> = if n == 0 { Vec::new() } else { (0..=n).map(|j| y_set.face(y, j)).collect() };
            let mut faces = vec![None; n + 1];
            if self.tuples(member, n, skip, y, &y_faces, 0, &mut faces, visit) == Flow::Stop {
                return Flow::Stop;
            }
        }
        Flow::Continue
    }

    #[allow(clippy::too_many_arguments)]
    fn tuples(
        &mut self,
        member: Member,
        n: usize,
        skip: Option<usize>,
        y: Simplex,
        y_faces: &[Simplex],
        j: usize,
        faces: &mut Vec<Option<Simplex>>,
        visit: &mut dyn FnMut(RawSquare) -> Flow,
    ) -> Flow {
        let x = self.index.map().source().clone();
        if j > n || n == 0 {
            self.budget.squares += 1;
            if self.has_filler(n, skip, y, y_faces, faces) {
                return Flow::Continue;
            }
            if self.exhausted {
                return Flow::Stop;
            }
            return visit(self.raw_square(member, n, skip, y, faces));
        }
        if Some(j) == skip {
            faces[j] = None;
            return self.tuples(member, n, skip, y, y_faces, j + 1, faces, visit);
        }
        let level = self.index.level(n - 1);
        let Some(cands) = level.by_image.get(&y_faces[j]) else {
            return Flow::Continue;
        };
        for &c in cands {
            if !self.tick() {
                return Flow::Stop;
            }
            if !compatible(&x, n, j, c, faces) {
                continue;
            }
            faces[j] = Some(c);
            if self.tuples(member, n, skip, y, y_faces, j + 1, faces, visit) == Flow::Stop {
                faces[j] = None;
                return Flow::Stop;
            }
        }
        faces[j] = None;
        Flow::Continue
    }

    fn has_filler(
        &mut self,
        n: usize,
        skip: Option<usize>,
        y: Simplex,
        y_faces: &[Simplex],
        faces: &[Option<Simplex>],
    ) -> bool {
        if n == 0 {
            return !self.index.over(y).is_empty();
        }
        let x = self.index.map().source().clone();
        match skip {
            None => {
                let key: Vec<Simplex> = faces.iter().map(|f| f.unwrap()).collect();
                !self.index.with_faces(&key, y).is_empty()
            }
            Some(k) => {
                let level = self.index.level(n - 1);
                let Some(cands) = level.by_image.get(&y_faces[k]) else { return false };
                let mut key: Vec<Simplex> = faces.iter().map(|f| f.unwrap_or(y)).collect();
                for &c in cands {
                    if !self.tick() {
                        return false;
                    }
                    if !compatible_all(&x, n, k, c, faces) {
                        continue;
                    }
                    key[k] = c;
                    if !self.index.with_faces(&key, y).is_empty() {
                        return true;
                    }
                }
                false
            }
        }
    }

    fn raw_square(&self, member: Member, n: usize, skip: Option<usize>, y: Simplex, faces: &[Option<Simplex>]) -> RawSquare {
        let i = member.inclusion(self.family);
        let p = self.index.map();
        let a_masks = standard::vertex_masks(i.source());
        let b_masks = standard::vertex_masks(i.target());
        let x = p.source();
        let top = a_masks
            .iter()
            .map(|&s| {
                let j = (0..=n)
                    .find(|&j| s & (1 << j) == 0 && Some(j) != skip)
                    .expect("simplex of the source misses a face");
                x.restrict(faces[j].unwrap(), compress_mask(s, 1 << j))
            })
            .collect();
        let bottom = b_masks.iter().map(|&m: &Mask| p.target().restrict(y, m)).collect();
        RawSquare { member, top, bottom }
    }

    fn scan_explicit(&mut self, member: Member, visit: &mut dyn FnMut(RawSquare) -> Flow) -> Flow {
        let i = member.inclusion(self.family);
        let (a, b) = (i.source().clone(), i.target().clone());
        let y = self.index.map().target().clone();
        if self.target_index.is_none() {
            let pt = standard::point();
            self.target_index = Some(TargetIndex::new(&SimplicialMap::to_point(&y, &pt)));
        }
        let pt_images: Vec<Simplex> = b.all_generators().map(|s| Simplex::new(s.dim(), 0, full_mask(s.dim()))).collect();
        let remaining = self.limit.saturating_sub(self.budget.nodes);
        let mut bottoms = Vec::new();
        let mut ext = Extension::new(&b, self.target_index.as_ref().unwrap(), &pt_images, vec![None; b.generator_count()], remaining);
        ext.run(&mut |asg| {
            bottoms.push(asg.iter().map(|s| s.unwrap()).collect::<Vec<_>>());
            Flow::Continue
        });
        self.budget.nodes += ext.nodes;
        if ext.exhausted {
            self.exhausted = true;
            return Flow::Stop;
        }
        for bottom in bottoms {
            let bottom_a: Vec<Simplex> = i.images().iter().map(|s| bottom[s.generator()]).collect();
            let mut tops = Vec::new();
            let remaining = self.limit.saturating_sub(self.budget.nodes);
            let mut ext = Extension::new(&a, self.index, &bottom_a, vec![None; a.generator_count()], remaining);
            ext.run(&mut |asg| {
                tops.push(asg.iter().map(|s| s.unwrap()).collect::<Vec<_>>());
                Flow::Continue
            });
            self.budget.nodes += ext.nodes;
            if ext.exhausted {
                self.exhausted = true;
                return Flow::Stop;
            }
            for top in tops {
                self.budget.squares += 1;
                let mut fixed = vec![None; b.generator_count()];
                for (g, s) in i.images().iter().enumerate() {
                    fixed[s.generator()] = Some(top[g]);
                }
                let remaining = self.limit.saturating_sub(self.budget.nodes);
                let mut ext = Extension::new(&b, self.index, &bottom, fixed, remaining);
                let lift = ext.first();
                self.budget.nodes += ext.nodes;
                if ext.exhausted {
                    self.exhausted = true;
                    return Flow::Stop;
                }
                if lift.is_none()
                    && visit(RawSquare {
                        member,
                        top,
                        bottom: bottom.clone(),
                    }) == Flow::Stop
                {
                    return Flow::Stop;
                }
            }
        }
        Flow::Continue
    }
}

pub(crate) fn full_mask(n: usize) -> Mask {
    ((1u64 << n) - 1) as Mask
}

/// `c` as face `j` agrees with the faces already chosen below `j`.
fn compatible(x: &SimplicialSet, n: usize, j: usize, c: Simplex, faces: &[Option<Simplex>]) -> bool {
    if n < 2 {
        return true;
    }
    (0..j).all(|i| match faces[i] {
        Some(xi) => x.face(c, i) == x.face(xi, j - 1),
        None => true,
    })
}

/// `c` as face `k` agrees with every other chosen face.
fn compatible_all(x: &SimplicialSet, n: usize, k: usize, c: Simplex, faces: &[Option<Simplex>]) -> bool {
    if n < 2 {
        return true;
    }
    (0..=n).all(|j| {
        if j == k {
            return true;
        }
        match faces[j] {
            None => true,
            Some(xj) if j < k => x.face(c, j) == x.face(xj, k - 1),
            Some(xj) => x.face(xj, k) == x.face(c, j - 1),
        }
    })
}

fn structural_certificate(p: &SimplicialMap, family: &Family) -> Option<Certificate> {
    if p.is_iso() {
        return Some(Certificate::Isomorphism);
    }
    if matches!(family, Family::InnerHorns) {
        if is_vertex_full_mono(p) {
            return Some(Certificate::VertexFullMono);
        }
        if is_componentwise_full_mono(p) {
            return Some(Certificate::ComponentwiseFullMono);
        }
        if let (Some(s), Some(t)) = (recognize_nerve(p.source()), recognize_nerve(p.target())) {
            return Some(Certificate::NerveOfFunctor {
                source: s.category.clone(),
                target: t.category.clone(),
            });
        }
    }
    None
}

/// Does `p` have the right lifting property against the family, up to
/// dimension `max_dim`?
pub fn has_rlp(p: &SimplicialMap, family: &Family, max_dim: usize, node_limit: u64) -> Verdict {
    if let Some(cert) = structural_certificate(p, family) {
        return Verdict::certified(cert);
    }
    let index = TargetIndex::new(p);
    has_rlp_indexed(&index, family, max_dim, node_limit)
}

/// As [`has_rlp`] without structural certificates, reusing an index.
pub fn has_rlp_indexed(index: &TargetIndex, family: &Family, max_dim: usize, node_limit: u64) -> Verdict {
    let mut scan = RlpScan::new(index, family, node_limit);
    for m in family.members(max_dim) {
        if let Some(sq) = scan.first_unsolved(m) {
            let problem = sq.to_problem(family, index.map());
            return Verdict::no(Witness::Counterexample(Box::new(problem))).with_budget(scan.budget);
        }
        if scan.exhausted {
            return Verdict::exhausted(format!("node limit reached while checking {m}")).with_budget(scan.budget);
        }
    }
    let cutoff = match family {
        Family::Explicit(maps) => maps.iter().map(|m| m.target().dim_or_zero()).max().unwrap_or(0),
        _ => max_dim,
    };
    let mut v = Verdict::bounded(cutoff).with_budget(scan.budget);
    if matches!(family, Family::Explicit(_)) {
        v = v.with_note("every square against the finite family was checked");
    }
    v
}

/// Looks for a diagonal filler of a single square.
pub fn solve_lift(problem: &LiftingProblem, node_limit: u64) -> Verdict {
    let index = TargetIndex::new(&problem.right);
    let b = problem.left.target();
    let mut fixed = vec![None; b.generator_count()];
    for (g, s) in problem.left.images().iter().enumerate() {
        fixed[s.generator()] = Some(problem.top.image_of_gen(g));
    }
    let mut ext = Extension::new(b, &index, problem.bottom.images(), fixed, node_limit);
    let found = ext.first();
    let budget = BudgetReport {
        squares: 1,
        nodes: ext.nodes,
        max_dim: b.dim_or_zero(),
        ..Default::default()
    };
    match found {
        Some(images) => {
            let d = SimplicialMap::new(b.clone(), problem.right.source().clone(), images).expect("diagonal");
            Verdict::new(Status::YesCertified).with_witness(Witness::Diagonal(d)).with_budget(budget)
        }
        None if ext.exhausted => Verdict::exhausted("node limit reached").with_budget(budget),
        None => Verdict::no(Witness::Counterexample(Box::new(problem.clone()))).with_budget(budget),
    }
}

/// Every diagonal filler of the square, or `None` past the node limit.
pub fn all_lifts(problem: &LiftingProblem, node_limit: u64) -> Option<Vec<SimplicialMap>> {
    let index = TargetIndex::new(&problem.right);
    let b = problem.left.target();
    let mut fixed = vec![None; b.generator_count()];
    for (g, s) in problem.left.images().iter().enumerate() {
        fixed[s.generator()] = Some(problem.top.image_of_gen(g));
    }
    let mut ext = Extension::new(b, &index, problem.bottom.images(), fixed, node_limit);
    let mut out = Vec::new();
    ext.run(&mut |asg| {
        let images = asg.iter().map(|s| s.unwrap()).collect();
        out.push(SimplicialMap::new_unchecked(b.clone(), problem.right.source().clone(), images));
        Flow::Continue
    });
    (!ext.exhausted).then_some(out)
}

/// All maps `a -> x`, or `None` past the node limit.
pub fn all_maps(a: &SimplicialSet, x: &SimplicialSet, node_limit: u64) -> Option<Vec<SimplicialMap>> {
    let pt = standard::point();
    all_maps_over(a, &SimplicialMap::to_point(x, &pt), &SimplicialMap::to_point(a, &pt), node_limit)
}

/// All maps `a -> X` whose composite with `p : X -> Y` is `over : a -> Y`.
pub fn all_maps_over(
    a: &SimplicialSet,
    p: &SimplicialMap,
    over: &SimplicialMap,
    node_limit: u64,
) -> Option<Vec<SimplicialMap>> {
    if over.source() != a || over.target() != p.target() {
        return None;
    }
    let index = TargetIndex::new(p);
    let mut ext = Extension::new(a, &index, over.images(), vec![None; a.generator_count()], node_limit);
    let mut out = Vec::new();
    ext.run(&mut |asg| {
        let images = asg.iter().map(|s| s.unwrap()).collect();
        out.push(SimplicialMap::new_unchecked(a.clone(), p.source().clone(), images));
        Flow::Continue
    });
    (!ext.exhausted).then_some(out)
}

/// Checks the preconditions shared by the lifting entry points.
pub fn require_mono(f: &SimplicialMap) -> Result<(), Error> {
    if f.is_mono() {
        Ok(())
    } else {
        Err(Error::NotMono)
    }
}
