//! Joins `A ⋆ B`, join maps, Leibniz joins and cell presentations of monos.

use std::collections::{HashMap, HashSet};

use crate::colimits::{fresh_name, pushout, pushout_named, Pushout};
use crate::delta::Mask;
use crate::error::Error;
use crate::map::SimplicialMap;
use crate::sset::{SSetBuilder, Simplex, SimplicialSet};
use crate::standard;

/// Where a generator of `A ⋆ B` comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JoinPart {
    Left(usize),
    Right(usize),
    Mixed(usize, usize),
}

/// The join `A ⋆ B` with its structure map to `Δ[1]` and lookup tables.
#[derive(Clone, Debug)]
pub struct Join {
    pub left: SimplicialSet,
    pub right: SimplicialSet,
    pub object: SimplicialSet,
    /// `A ⋆ B -> Δ[1]`
    pub structure: SimplicialMap,
    pub incl_left: SimplicialMap,
    pub incl_right: SimplicialMap,
    parts: Vec<JoinPart>,
    left_gen: Vec<usize>,
    right_gen: Vec<usize>,
    mixed_gen: HashMap<(usize, usize), usize>,
}

/// Repeat mask of `(η1^* a) ⋆ (η2^* b)` where `α` has dimension `p`.
fn join_mask(alpha: Simplex, beta: Simplex) -> Mask {
    alpha.mask() | (beta.mask() << (alpha.dim() + 1))
}

impl Join {
    pub fn new(a: &SimplicialSet, b: &SimplicialSet) -> Join {
        let mut builder = SSetBuilder::new(format!("{}⋆{}", a.name(), b.name()));
        let mut used = HashSet::new();
        let mut raw_parts = Vec::new();
        let mut left_raw = Vec::with_capacity(a.generator_count());
        for x in 0..a.generator_count() {
            left_raw.push(builder.add(fresh_name(a.gen_name(x), &mut used), a.gen_dim(x)));
            raw_parts.push(JoinPart::Left(x));
        }
        let mut right_raw = Vec::with_capacity(b.generator_count());
        for y in 0..b.generator_count() {
            let name = format!("{}'", b.gen_name(y));
            right_raw.push(builder.add(fresh_name(&name, &mut used), b.gen_dim(y)));
            raw_parts.push(JoinPart::Right(y));
        }
        let mut mixed_raw = HashMap::new();
        for x in 0..a.generator_count() {
            for y in 0..b.generator_count() {
                let name = format!("{}*{}'", a.gen_name(x), b.gen_name(y));
                let id = builder.add(fresh_name(&name, &mut used), a.gen_dim(x) + b.gen_dim(y) + 1);
                mixed_raw.insert((x, y), id);
                raw_parts.push(JoinPart::Mixed(x, y));
            }
        }
        for x in 0..a.generator_count() {
            let row = a.faces_of(x).iter().map(|s| (left_raw[s.generator()], s.mask())).collect();
            builder.set_faces_raw(left_raw[x], row);
        }
        for y in 0..b.generator_count() {
            let row = b.faces_of(y).iter().map(|s| (right_raw[s.generator()], s.mask())).collect();
            builder.set_faces_raw(right_raw[y], row);
        }
        for x in 0..a.generator_count() {
            let p = a.gen_dim(x);
            for y in 0..b.generator_count() {
                let q = b.gen_dim(y);
                let mut row = Vec::with_capacity(p + q + 2);
                for i in 0..=p {
                    if p == 0 {
                        row.push((right_raw[y], 0));
                    } else {
                        let fa = a.faces_of(x)[i];
                        row.push((mixed_raw[&(fa.generator(), y)], fa.mask()));
                    }
                }
                for j in 0..=q {
                    if q == 0 {
                        row.push((left_raw[x], 0));
                    } else {
                        let fb = b.faces_of(y)[j];
                        row.push((mixed_raw[&(x, fb.generator())], fb.mask() << (p + 1)));
                    }
                }
                builder.set_faces_raw(mixed_raw[&(x, y)], row);
            }
        }
        let (object, pos) = builder.build_with_order().expect("join");
        let mut parts = vec![JoinPart::Left(0); object.generator_count()];
        for (raw, part) in raw_parts.into_iter().enumerate() {
            parts[pos[raw]] = part;
        }
        let left_gen: Vec<usize> = left_raw.iter().map(|&r| pos[r]).collect();
        let right_gen: Vec<usize> = right_raw.iter().map(|&r| pos[r]).collect();
        let mixed_gen: HashMap<(usize, usize), usize> =
            mixed_raw.into_iter().map(|(k, r)| (k, pos[r])).collect();
        let d1 = standard::simplex(1);
        let structure_images = (0..object.generator_count())
            .map(|g| {
                let d = object.gen_dim(g);
                match parts[g] {
                    JoinPart::Left(_) => d1.constant(0, d),
                    JoinPart::Right(_) => d1.constant(1, d),
                    JoinPart::Mixed(x, _) => {
                        let p = a.gen_dim(x);
                        let all: Mask = ((1u64 << d) - 1) as Mask;
                        Simplex::new(d, 2, all & !(1 << p))
                    }
                }
            })
            .collect();
        let structure = SimplicialMap::new_unchecked(object.clone(), d1, structure_images);
        let incl_left = SimplicialMap::new_unchecked(
            a.clone(),
            object.clone(),
            (0..a.generator_count())
                .map(|x| Simplex::new(a.gen_dim(x), left_gen[x], 0))
                .collect(),
        );
        let incl_right = SimplicialMap::new_unchecked(
            b.clone(),
            object.clone(),
            (0..b.generator_count())
                .map(|y| Simplex::new(b.gen_dim(y), right_gen[y], 0))
                .collect(),
        );
        Join {
            left: a.clone(),
            right: b.clone(),
            object,
            structure,
            incl_left,
            incl_right,
            parts,
            left_gen,
            right_gen,
            mixed_gen,
        }
    }

    pub fn part(&self, g: usize) -> JoinPart {
        self.parts[g]
    }

    pub fn left_generator(&self, x: usize) -> usize {
        self.left_gen[x]
    }

    pub fn right_generator(&self, y: usize) -> usize {
        self.right_gen[y]
    }

    pub fn mixed_generator(&self, x: usize, y: usize) -> usize {
        self.mixed_gen[&(x, y)]
    }

    /// The simplex `α ⋆ β`; either side may be absent.
    pub fn simplex(&self, alpha: Option<Simplex>, beta: Option<Simplex>) -> Simplex {
        match (alpha, beta) {
            (Some(a), None) => Simplex::new(a.dim(), self.left_gen[a.generator()], a.mask()),
            (None, Some(b)) => Simplex::new(b.dim(), self.right_gen[b.generator()], b.mask()),
            (Some(a), Some(b)) => Simplex::new(
                a.dim() + b.dim() + 1,
                self.mixed_gen[&(a.generator(), b.generator())],
                join_mask(a, b),
            ),
            (None, None) => panic!("the empty simplex is not a simplex"),
        }
    }

    /// Decomposes a simplex of `A ⋆ B` as `α ⋆ β`.
    pub fn split(&self, s: Simplex) -> (Option<Simplex>, Option<Simplex>) {
        match self.parts[s.generator()] {
            JoinPart::Left(x) => (Some(Simplex::new(s.dim(), x, s.mask())), None),
            JoinPart::Right(y) => (None, Some(Simplex::new(s.dim(), y, s.mask()))),
            JoinPart::Mixed(x, y) => {
                let p = self.left.gen_dim(x);
                // number of vertices of s landing in the left part, minus one
                let vals = crate::delta::surjection_values(s.dim(), s.mask());
                let k = vals.iter().filter(|&&v| v <= p).count() - 1;
                let low: Mask = ((1u64 << k) - 1) as Mask;
                let alpha = Simplex::new(k, x, s.mask() & low);
                let beta = Simplex::new(s.dim() - k - 1, y, s.mask() >> (k + 1));
                (Some(alpha), Some(beta))
            }
        }
    }
}

/// `f ⋆ g : A ⋆ B -> A' ⋆ B'` between precomputed joins.
pub fn join_map(
    f: &SimplicialMap,
    g: &SimplicialMap,
    source: &Join,
    target: &Join,
) -> Result<SimplicialMap, Error> {
    if f.source() != &source.left || g.source() != &source.right {
        return Err(Error::Precondition("join_map: sources do not match".into()));
    }
    if f.target() != &target.left || g.target() != &target.right {
        return Err(Error::Precondition("join_map: targets do not match".into()));
    }
    let images = (0..source.object.generator_count())
        .map(|gen| {
            let s = source.object.gen_simplex(gen);
            let (a, b) = source.split(s);
            target.simplex(a.map(|x| f.apply(x)), b.map(|y| g.apply(y)))
        })
        .collect();
    Ok(SimplicialMap::new(
        source.object.clone(),
        target.object.clone(),
        images,
    )?)
}

/// The canonical isomorphism `Δ[m] ⋆ Δ[n] -> Δ[m + 1 + n]` on vertex sets.
pub fn simplex_join_iso(m: usize, n: usize) -> SimplicialMap {
    let j = Join::new(&standard::simplex(m), &standard::simplex(n));
    let total = m + 1 + n;
    let target = standard::simplex(total);
    let vertex_mask = |x: &SimplicialSet, g: usize, shift: usize| -> Mask {
        x.vertices(x.gen_simplex(g))
            .iter()
            .map(|&v| 1 << (x.gen_name(v).parse::<usize>().unwrap() + shift))
            .fold(0, |acc, b| acc | b)
    };
    let images = (0..j.object.generator_count())
        .map(|g| {
            let mask = match j.part(g) {
                JoinPart::Left(x) => vertex_mask(&j.left, x, 0),
                JoinPart::Right(y) => vertex_mask(&j.right, y, m + 1),
                JoinPart::Mixed(x, y) => vertex_mask(&j.left, x, 0) | vertex_mask(&j.right, y, m + 1),
            };
            let t = target.find(&standard::subset_name(total, mask)).unwrap();
            target.gen_simplex(t)
        })
        .collect();
    SimplicialMap::new(j.object.clone(), target, images).expect("join of simplices")
}

/// The Leibniz join `f ⋆̂ g : (M ⋆ T) ⊔_{M ⋆ S} (N ⋆ S) -> N ⋆ T`.
#[derive(Clone, Debug)]
pub struct LeibnizJoin {
    pub corner: Pushout,
    pub map: SimplicialMap,
    pub target_join: Join,
}

pub fn leibniz_join(f: &SimplicialMap, g: &SimplicialMap) -> Result<LeibnizJoin, Error> {
    let (m, n) = (f.source(), f.target());
    let (s, t) = (g.source(), g.target());
    let ms = Join::new(m, s);
    let mt = Join::new(m, t);
    let ns = Join::new(n, s);
    let nt = Join::new(n, t);
    let id_m = SimplicialMap::identity(m);
    let id_n = SimplicialMap::identity(n);
    let id_s = SimplicialMap::identity(s);
    let id_t = SimplicialMap::identity(t);
    let to_mt = join_map(&id_m, g, &ms, &mt)?;
    let to_ns = join_map(f, &id_s, &ms, &ns)?;
    let corner = pushout(&to_mt, &to_ns)?;
    let h_mt = join_map(f, &id_t, &mt, &nt)?;
    let h_ns = join_map(&id_n, g, &ns, &nt)?;
    let map = corner.mediate(&h_mt, &h_ns)?;
    Ok(LeibnizJoin {
        corner,
        map,
        target_join: nt,
    })
}

/// One boundary-cell attachment.
#[derive(Clone, Debug)]
pub struct CellStep {
    pub dim: usize,
    /// name of the attached generator in `result`
    pub cell: String,
    /// generator of the presented codomain this cell corresponds to
    pub source_generator: usize,
    /// `∂Δ[dim] -> previous object`
    pub attaching: SimplicialMap,
    pub result: SimplicialSet,
}

/// Skeletal presentation of a mono `A -> B` as iterated boundary-cell
/// attachments.
#[derive(Clone, Debug)]
pub struct CellPresentation {
    pub base: SimplicialSet,
    pub steps: Vec<CellStep>,
    pub mono: SimplicialMap,
}

pub fn cell_presentation_mono(i: &SimplicialMap) -> Result<CellPresentation, Error> {
    if !i.is_mono() {
        return Err(Error::NotMono);
    }
    let a = i.source();
    let b = i.target();
    let pre = i.preimage_table();
    // name of each generator of B in the object under construction
    let mut current_name: Vec<Option<String>> = pre
        .iter()
        .map(|p| p.map(|x| a.gen_name(x).to_string()))
        .collect();
    let mut current = a.clone();
    let mut steps = Vec::new();
    for y in 0..b.generator_count() {
        if pre[y].is_some() {
            continue;
        }
        let d = b.gen_dim(y);
        let cell = standard::simplex(d);
        let bd = standard::boundary(d);
        let sigma = b.gen_simplex(y);
        let images = bd
            .all_generators()
            .map(|s| {
                let mask = vertex_subset(&bd, s);
                let face = b.restrict(sigma, mask);
                let name = current_name[face.generator()].as_ref().expect("faces attached earlier");
                let g = current.find(name).unwrap();
                Simplex::new(face.dim(), g, face.mask())
            })
            .collect();
        let attaching = SimplicialMap::new(bd.clone(), current.clone(), images)?;
        let incl = standard::inclusion(&bd, &cell);
        let top = cell.generators(d).next().unwrap().generator();
        let wanted = b.gen_name(y).to_string();
        let namer = move |g: usize| if g == top { wanted.clone() } else { format!("#{g}") };
        let po = pushout_named(&incl, &attaching, Some(&namer))?;
        let new_gen = po.inj_b.image_of_gen(top).generator();
        let assigned = po.object.gen_name(new_gen).to_string();
        current_name[y] = Some(assigned.clone());
        current = po.object.clone();
        steps.push(CellStep {
            dim: d,
            cell: assigned,
            source_generator: y,
            attaching,
            result: po.object,
        });
    }
    Ok(CellPresentation {
        base: a.clone(),
        steps,
        mono: i.clone(),
    })
}

/// Vertex subset of a simplex of a subcomplex of `Δ[n]` named by vertices.
fn vertex_subset(x: &SimplicialSet, s: Simplex) -> Mask {
    x.vertices(s)
        .iter()
        .map(|&v| 1 << x.gen_name(v).parse::<usize>().unwrap())
        .fold(0, |acc, b| acc | b)
}

impl CellPresentation {
    pub fn final_object(&self) -> &SimplicialSet {
        self.steps.last().map(|s| &s.result).unwrap_or(&self.base)
    }

    /// Replays every pushout and returns the comparison isomorphism from the
    /// final object to the codomain of the mono; its restriction to the base
    /// is the mono itself.
    pub fn replay(&self) -> Result<SimplicialMap, Error> {
        let mut current = self.base.clone();
        for step in &self.steps {
            if step.attaching.target() != &current {
                return Err(Error::Precondition("attaching map has the wrong target".into()));
            }
            let cell = standard::simplex(step.dim);
            let bd = standard::boundary(step.dim);
            let incl = standard::inclusion(&bd, &cell);
            let top = cell.generators(step.dim).next().unwrap().generator();
            let wanted = step.cell.clone();
            let namer = move |g: usize| if g == top { wanted.clone() } else { format!("#{g}") };
            let po = pushout_named(&incl, &step.attaching, Some(&namer))?;
            if po.object != step.result {
                return Err(Error::Precondition(format!("replay differs at cell {}", step.cell)));
            }
            current = po.object;
        }
        let b = self.mono.target();
        let pre = self.mono.preimage_table();
        let mut by_name: HashMap<String, usize> = HashMap::new();
        for y in 0..b.generator_count() {
            if let Some(x) = pre[y] {
                by_name.insert(self.base.gen_name(x).to_string(), y);
            }
        }
        for step in &self.steps {
            by_name.insert(step.cell.clone(), step.source_generator);
        }
        let images = (0..current.generator_count())
            .map(|g| {
                by_name
                    .get(current.gen_name(g))
                    .map(|&y| b.gen_simplex(y))
                    .ok_or_else(|| Error::Precondition("unknown generator after replay".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let cmp = SimplicialMap::new(current.clone(), b.clone(), images)?;
        if !cmp.is_iso() {
            return Err(Error::Precondition("replayed object is not the codomain".into()));
        }
        let base_incl = crate::map::SimplicialMap::by_names(&self.base, &current)?;
        if cmp.after(&base_incl)? != self.mono {
            return Err(Error::Precondition("comparison is not the identity on the base".into()));
        }
        Ok(cmp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::isomorphic;
    use crate::standard::*;

    #[test]
    fn join_of_simplices() {
        for m in 0..=2 {
            for n in 0..=2 {
                let iso = simplex_join_iso(m, n);
                assert!(iso.is_iso());
            }
        }
    }

    #[test]
    fn join_examples() {
        let j = Join::new(&empty(), &simplex(1));
        assert!(isomorphic(&j.object, &simplex(1)));
        let j = Join::new(&boundary(1), &point());
        assert_eq!(j.object.generator_counts(), vec![3, 2]);
        let j = Join::new(&simplex(1), &point());
        let (f0, _) = crate::colimits::fibre(&j.structure, standard::simplex(1).gen_simplex(0));
        let (f1, _) = crate::colimits::fibre(&j.structure, standard::simplex(1).gen_simplex(1));
        assert!(isomorphic(&f0, &simplex(1)));
        assert!(isomorphic(&f1, &point()));
    }

    #[test]
    fn joins_with_degenerate_faces() {
        let j3 = j_truncated(3);
        for (a, b) in [(point(), j3.clone()), (j3.clone(), simplex(1)), (j3.clone(), j3.clone())] {
            let j = Join::new(&a, &b);
            for n in 0..=3 {
                for s in j.object.simplices_at(n) {
                    let (x, y) = j.split(s);
                    assert_eq!(j.simplex(x, y), s);
                }
            }
        }
    }

    #[test]
    fn split_roundtrip() {
        let j = Join::new(&horn(2, 1).unwrap(), &simplex(1));
        for n in 0..=4 {
            for s in j.object.simplices_at(n) {
                let (a, b) = j.split(s);
                assert_eq!(j.simplex(a, b), s);
            }
        }
    }

    #[test]
    fn leibniz_examples() {
        let e = empty();
        let pt = point();
        let u = SimplicialMap::from_empty(&e, &pt);
        let lj = leibniz_join(&u, &u).unwrap();
        assert!(isomorphic(lj.map.source(), &boundary(1)));
        assert!(isomorphic(lj.map.target(), &simplex(1)));
        assert!(lj.map.is_mono());

        let h = horn_inclusion(2, 1).unwrap();
        let lj = leibniz_join(&h, &u).unwrap();
        assert!(isomorphic(lj.map.source(), &horn(3, 1).unwrap()));
        assert!(isomorphic(lj.map.target(), &simplex(3)));
    }

    #[test]
    fn cell_presentations() {
        let e = empty();
        let d1 = simplex(1);
        let p = cell_presentation_mono(&SimplicialMap::from_empty(&e, &d1)).unwrap();
        let dims: Vec<usize> = p.steps.iter().map(|s| s.dim).collect();
        assert_eq!(dims, vec![0, 0, 1]);
        p.replay().unwrap();

        let h = horn_inclusion(2, 1).unwrap();
        let p = cell_presentation_mono(&h).unwrap();
        let dims: Vec<usize> = p.steps.iter().map(|s| s.dim).collect();
        assert_eq!(dims, vec![1, 2]);
        assert!(p.replay().unwrap().is_iso());

        let id = SimplicialMap::identity(&d1);
        assert!(cell_presentation_mono(&id).unwrap().steps.is_empty());
    }
}
