//! Opposites, sub-simplicial sets, images and isomorphism search.

use std::collections::{HashMap, HashSet};

use crate::delta::Mask;
use crate::error::BuildError;
use crate::map::SimplicialMap;
use crate::sset::{SSetBuilder, Simplex, SimplicialSet};

fn reverse_mask(mask: Mask, n: usize) -> Mask {
    let mut out = 0;
    for j in 0..n {
        if mask & (1 << j) != 0 {
            out |= 1 << (n - 1 - j);
        }
    }
    out
}

/// The simplex `s` of `X` viewed in `X^op` (same generator, reversed
/// degeneracy).
pub fn op_simplex(s: Simplex) -> Simplex {
    Simplex::new(s.dim(), s.generator(), reverse_mask(s.mask(), s.dim()))
}

/// `X^op`: same generators, faces reindexed by `i ↦ d - i`. Generator
/// names are kept, so indices agree with those of `X`.
pub fn opposite(x: &SimplicialSet) -> SimplicialSet {
    let mut b = SSetBuilder::new(format!("{}^op", x.name()));
    for g in 0..x.generator_count() {
        b.add(x.gen_name(g), x.gen_dim(g));
    }
    for g in 0..x.generator_count() {
        let d = x.gen_dim(g);
        if d == 0 {
            continue;
        }
        let faces = x.faces_of(g);
        let row = (0..=d)
            .map(|i| {
                let f = op_simplex(faces[d - i]);
                (f.generator(), f.mask())
            })
            .collect();
        b.set_faces_raw(g, row);
    }
    b.build().expect("opposite of a simplicial set")
}

/// `f^op : X^op -> Y^op`, with `X^op`, `Y^op` as given.
pub fn opposite_map_between(
    f: &SimplicialMap,
    source_op: &SimplicialSet,
    target_op: &SimplicialSet,
) -> SimplicialMap {
    let images = f.images().iter().map(|&s| op_simplex(s)).collect();
    SimplicialMap::new(source_op.clone(), target_op.clone(), images).expect("opposite map")
}

pub fn opposite_map(f: &SimplicialMap) -> SimplicialMap {
    opposite_map_between(f, &opposite(f.source()), &opposite(f.target()))
}

/// The sub-simplicial set on the generators with `keep[g]`, which must be
/// closed under faces, and its inclusion.
pub fn subcomplex(
    x: &SimplicialSet,
    keep: &[bool],
    name: impl Into<String>,
) -> Result<(SimplicialSet, SimplicialMap), BuildError> {
    let mut b = SSetBuilder::new(name);
    let mut new_id = vec![usize::MAX; x.generator_count()];
    for g in 0..x.generator_count() {
        if keep[g] {
            new_id[g] = b.add(x.gen_name(g), x.gen_dim(g));
        }
    }
    for g in 0..x.generator_count() {
        if !keep[g] {
            continue;
        }
        let mut row = Vec::new();
        for f in x.faces_of(g) {
            if !keep[f.generator()] {
                return Err(BuildError::NotClosed(x.gen_name(g).to_string()));
            }
            row.push((new_id[f.generator()], f.mask()));
        }
        b.set_faces_raw(new_id[g], row);
    }
    let (sub, pos) = b.build_with_order()?;
    let mut images = vec![Simplex::new(0, 0, 0); sub.generator_count()];
    for g in 0..x.generator_count() {
        if keep[g] {
            images[pos[new_id[g]]] = x.gen_simplex(g);
        }
    }
    let incl = SimplicialMap::new(sub.clone(), x.clone(), images).expect("inclusion");
    Ok((sub, incl))
}

/// Closes a set of generators under faces.
pub fn face_closure(x: &SimplicialSet, seeds: &[usize]) -> Vec<bool> {
    let mut keep = vec![false; x.generator_count()];
    let mut stack: Vec<usize> = seeds.to_vec();
    while let Some(g) = stack.pop() {
        if keep[g] {
            continue;
        }
        keep[g] = true;
        for f in x.faces_of(g) {
            stack.push(f.generator());
        }
    }
    keep
}

/// Image of a map as a sub-simplicial set of its target, with the inclusion.
pub fn image(f: &SimplicialMap) -> (SimplicialSet, SimplicialMap) {
    let seeds: Vec<usize> = f.images().iter().map(|s| s.generator()).collect();
    let keep = face_closure(f.target(), &seeds);
    subcomplex(f.target(), &keep, format!("im({})", f.source().name())).expect("closed image")
}

/// The sub-simplicial set of simplices lying over the vertex `v` of the
/// target, with its inclusion.
pub fn fibre_over_vertex(p: &SimplicialMap, v: usize) -> (SimplicialSet, SimplicialMap) {
    let keep: Vec<bool> = p.images().iter().map(|s| s.generator() == v && s.generator_dim() == 0).collect();
    let name = format!("{}_{}", p.source().name(), p.target().gen_name(v));
    subcomplex(p.source(), &keep, name).expect("fibres are closed under faces")
}

/// Corestriction of `f` through a mono `m` whose image contains that of `f`.
pub fn factor_through_mono(f: &SimplicialMap, m: &SimplicialMap) -> Option<SimplicialMap> {
    let pre = m.preimage_table();
    let images = f
        .images()
        .iter()
        .map(|&s| pre[s.generator()].map(|g| Simplex::new(s.dim(), g, s.mask())))
        .collect::<Option<Vec<_>>>()?;
    SimplicialMap::new(f.source().clone(), m.source().clone(), images).ok()
}

/// Searches for an isomorphism `x -> y`, vertices first, each higher
/// generator decided as soon as its vertices are placed.
pub fn find_isomorphism(x: &SimplicialSet, y: &SimplicialSet) -> Option<SimplicialMap> {
    if x.generator_counts() != y.generator_counts() {
        return None;
    }
    let verts_x: Vec<Vec<usize>> = (0..x.generator_count())
        .map(|g| x.vertices(x.gen_simplex(g)))
        .collect();
    // signature of a vertex: number of generators in each dimension
    // containing it, used to prune candidates
    let signature = |s: &SimplicialSet, verts: &[Vec<usize>], v: usize| -> Vec<usize> {
        let mut sig = vec![0usize; s.dim_or_zero() + 1];
        for (g, vs) in verts.iter().enumerate() {
            if vs.contains(&v) {
                sig[s.gen_dim(g)] += 1;
            }
        }
        sig
    };
    let verts_y: Vec<Vec<usize>> = (0..y.generator_count())
        .map(|g| y.vertices(y.gen_simplex(g)))
        .collect();
    let sig_x: Vec<Vec<usize>> = x.generator_range(0).map(|v| signature(x, &verts_x, v)).collect();
    let sig_y: Vec<Vec<usize>> = y.generator_range(0).map(|v| signature(y, &verts_y, v)).collect();

    // decision order: vertices; after vertex k, every generator whose
    // vertices are all among the first k + 1
    let nv = x.vertex_count();
    let mut after_vertex: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for g in x.generator_range(0).end..x.generator_count() {
        let last = *verts_x[g].iter().max().unwrap();
        after_vertex[last].push(g);
    }
    // index of y generators by (dim, faces)
    let mut by_faces: HashMap<Vec<Simplex>, Vec<usize>> = HashMap::new();
    for g in y.generator_range(0).end..y.generator_count() {
        by_faces.entry(y.faces_of(g).to_vec()).or_default().push(g);
    }

    struct Search<'a> {
        x: &'a SimplicialSet,
        image: Vec<Option<usize>>,
        used: HashSet<usize>,
        after_vertex: &'a [Vec<usize>],
        by_faces: &'a HashMap<Vec<Simplex>, Vec<usize>>,
        sig_x: &'a [Vec<usize>],
        sig_y: &'a [Vec<usize>],
        ny: usize,
    }

    impl Search<'_> {
        fn map_simplex(&self, s: Simplex) -> Simplex {
            Simplex::new(s.dim(), self.image[s.generator()].unwrap(), s.mask())
        }

        fn place_higher(&mut self, list: &[usize], idx: usize, k: usize) -> bool {
            if idx == list.len() {
                return self.place_vertex(k + 1);
            }
            let g = list[idx];
            let faces: Vec<Simplex> = self.x.faces_of(g).iter().map(|&f| self.map_simplex(f)).collect();
            let Some(cands) = self.by_faces.get(&faces) else { return false };
            for &c in cands.clone().iter() {
                if self.used.contains(&c) {
                    continue;
                }
                self.used.insert(c);
                self.image[g] = Some(c);
                if self.place_higher(list, idx + 1, k) {
                    return true;
                }
                self.image[g] = None;
                self.used.remove(&c);
            }
            false
        }

        fn place_vertex(&mut self, k: usize) -> bool {
            if k == self.sig_x.len() {
                return true;
            }
            for c in 0..self.ny {
                if self.used.contains(&c) || self.sig_x[k] != self.sig_y[c] {
                    continue;
                }
                self.used.insert(c);
                self.image[k] = Some(c);
                let list = self.after_vertex[k].clone();
                // processing in generator order keeps faces placed first
                if self.place_higher(&list, 0, k) {
                    return true;
                }
                self.image[k] = None;
                self.used.remove(&c);
            }
            false
        }
    }

    let mut search = Search {
        x,
        image: vec![None; x.generator_count()],
        used: HashSet::new(),
        after_vertex: &after_vertex,
        by_faces: &by_faces,
        sig_x: &sig_x,
        sig_y: &sig_y,
        ny: y.vertex_count(),
    };
    if !search.place_vertex(0) {
        return None;
    }
    let images = (0..x.generator_count())
        .map(|g| y.gen_simplex(search.image[g].unwrap()))
        .collect();
    let m = SimplicialMap::new(x.clone(), y.clone(), images).ok()?;
    m.is_iso().then_some(m)
}

pub fn isomorphic(x: &SimplicialSet, y: &SimplicialSet) -> bool {
    find_isomorphism(x, y).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{nerve, FiniteCategory};
    use crate::standard::*;

    #[test]
    fn opposite_examples() {
        for n in 0..=4 {
            assert!(isomorphic(&opposite(&simplex(n)), &simplex(n)));
        }
        assert!(isomorphic(&opposite(&horn(2, 1).unwrap()), &horn(2, 1).unwrap()));
        assert!(isomorphic(&opposite(&horn(2, 0).unwrap()), &horn(2, 2).unwrap()));
        assert!(!isomorphic(&horn(2, 0).unwrap(), &horn(2, 2).unwrap()));
        let x = j_truncated(3);
        assert_eq!(opposite(&opposite(&x)), x.renamed(format!("{}^op^op", x.name())));
    }

    #[test]
    fn opposite_of_nerve() {
        let c = FiniteCategory::from_relations("P", &["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
        let n = nerve(&c, None).unwrap();
        let nop = nerve(&c.opposite(), None).unwrap();
        assert!(isomorphic(&opposite(&n), &nop));
        assert!(!isomorphic(&n, &nop));
    }

    #[test]
    fn fibre_and_image() {
        let d2 = simplex(2);
        let d1 = simplex(1);
        // (0,0,1) collapse
        let images = vec![
            d1.gen_simplex(0),
            d1.gen_simplex(0),
            d1.gen_simplex(1),
            d1.constant(0, 1),
            d1.gen_simplex(2),
            d1.gen_simplex(2),
            Simplex::new(2, 2, 0b01),
        ];
        let p = SimplicialMap::new(d2.clone(), d1.clone(), images).unwrap();
        let (f0, _) = fibre_over_vertex(&p, 0);
        let (f1, _) = fibre_over_vertex(&p, 1);
        assert!(isomorphic(&f0, &simplex(1)));
        assert!(isomorphic(&f1, &simplex(0)));
        let (im, _) = image(&p);
        assert_eq!(im.generator_count(), 3);
    }
}
