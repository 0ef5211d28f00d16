//! Finite simplicial sets in Eilenberg–Zilber generator form.
//!
//! A simplicial set is stored as its nondegenerate simplices (generators)
//! together with a face table. Every simplex is a pair `(generator, η)` with
//! `η` a surjection, encoded as the bit set of its repeat positions. For each
//! generator we precompute the face on every vertex subset, which turns the
//! presheaf action into a table lookup followed by a mask composition.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::delta::{
    binomial, compose_surjection_masks, mask_to_word, subsets_of_size, word_to_mask, Mask,
    MonotoneMap,
};
use crate::error::{BuildError, DeltaError};

/// Largest dimension of a generator. Subface tables grow like `2^(d+1)`.
pub const MAX_GENERATOR_DIM: usize = 16;

/// Largest dimension of a simplex that can be represented.
pub const MAX_SIMPLEX_DIM: usize = 30;

/// A simplex in Eilenberg–Zilber normal form.
///
/// Ordering is by dimension, then generator index, then repeat mask, which is
/// the canonical enumeration order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Simplex {
    dim: u8,
    gen: u32,
    degen: Mask,
}

impl Simplex {
    pub(crate) fn new(dim: usize, gen: usize, degen: Mask) -> Simplex {
        Simplex {
            dim: dim as u8,
            gen: gen as u32,
            degen,
        }
    }

    pub fn dim(self) -> usize {
        self.dim as usize
    }

    /// Index of the underlying generator in its simplicial set.
    pub fn generator(self) -> usize {
        self.gen as usize
    }

    pub fn is_degenerate(self) -> bool {
        self.degen != 0
    }

    /// Dimension of the underlying generator.
    pub fn generator_dim(self) -> usize {
        self.dim as usize - self.degen.count_ones() as usize
    }

    /// Strictly decreasing degeneracy indices.
    pub fn degeneracy_word(self) -> Vec<usize> {
        mask_to_word(self.degen)
    }

    pub(crate) fn mask(self) -> Mask {
        self.degen
    }

    /// The surjection `[dim] -> [generator_dim]`.
    pub fn degeneracy_operator(self) -> MonotoneMap {
        crate::delta::surjection_from_mask(self.dim(), self.degen)
    }
}

struct Data {
    name: String,
    names: Vec<String>,
    dims: Vec<u8>,
    /// generators of dimension `d` occupy `level_start[d]..level_start[d + 1]`
    level_start: Vec<u32>,
    faces: Vec<Box<[Simplex]>>,
    sub_offset: Vec<usize>,
    subfaces: Vec<Simplex>,
    lookup: HashMap<String, u32>,
    nerve_cache: OnceLock<Option<Arc<crate::category::NerveRecognition>>>,
}

/// An immutable, validated finite simplicial set. Cloning is cheap.
#[derive(Clone)]
pub struct SimplicialSet(Arc<Data>);

impl PartialEq for SimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.names == other.0.names
                && self.0.dims == other.0.dims
                && self.0.faces == other.0.faces)
    }
}

impl Eq for SimplicialSet {}

impl fmt::Debug for SimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialSet({}, counts {:?})", self.0.name, self.generator_counts())
    }
}

impl SimplicialSet {
    pub fn name(&self) -> &str {
        &self.0.name
    }

    /// Same object with a different display name.
    pub fn renamed(&self, name: impl Into<String>) -> SimplicialSet {
        let d = &self.0;
        SimplicialSet(Arc::new(Data {
            name: name.into(),
            names: d.names.clone(),
            dims: d.dims.clone(),
            level_start: d.level_start.clone(),
            faces: d.faces.clone(),
            sub_offset: d.sub_offset.clone(),
            subfaces: d.subfaces.clone(),
            lookup: d.lookup.clone(),
            nerve_cache: OnceLock::new(),
        }))
    }

    pub fn ptr_eq(&self, other: &SimplicialSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    /// Top dimension carrying a generator, `None` for the empty set.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_empty() {
            None
        } else {
            Some(self.0.level_start.len() - 2)
        }
    }

    /// `dimension()` with the empty set counted as dimension 0.
    pub fn dim_or_zero(&self) -> usize {
        self.dimension().unwrap_or(0)
    }

    pub fn generator_count(&self) -> usize {
        self.0.names.len()
    }

    /// Number of generators in each dimension `0..=dimension`.
    pub fn generator_counts(&self) -> Vec<usize> {
        let ls = &self.0.level_start;
        ls.windows(2).map(|w| (w[1] - w[0]) as usize).collect()
    }

    pub fn generator_range(&self, d: usize) -> std::ops::Range<usize> {
        let ls = &self.0.level_start;
        if d + 1 >= ls.len() {
            let end = *ls.last().unwrap() as usize;
            return end..end;
        }
        ls[d] as usize..ls[d + 1] as usize
    }

    /// Nondegenerate simplices of dimension `d`, in canonical order.
    pub fn generators(&self, d: usize) -> impl Iterator<Item = Simplex> + '_ {
        self.generator_range(d).map(move |g| Simplex::new(d, g, 0))
    }

    /// All nondegenerate simplices, dimension-major.
    pub fn all_generators(&self) -> impl Iterator<Item = Simplex> + '_ {
        (0..self.0.names.len()).map(move |g| self.gen_simplex(g))
    }

    pub fn gen_dim(&self, g: usize) -> usize {
        self.0.dims[g] as usize
    }

    pub fn gen_name(&self, g: usize) -> &str {
        &self.0.names[g]
    }

    pub fn gen_simplex(&self, g: usize) -> Simplex {
        Simplex::new(self.0.dims[g] as usize, g, 0)
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.0.lookup.get(name).map(|&g| g as usize)
    }

    /// The simplex `word · name`.
    pub fn simplex(&self, name: &str, word: &[usize]) -> Result<Simplex, BuildError> {
        let g = self.find(name).ok_or_else(|| BuildError::MissingFaceTarget {
            generator: name.to_string(),
            index: 0,
            target: name.to_string(),
        })?;
        let d = self.gen_dim(g);
        let n = d + word.len();
        let mask = word_to_mask(n, word).map_err(|reason| BuildError::BadWord {
            generator: name.to_string(),
            index: 0,
            reason,
        })?;
        Ok(Simplex::new(n, g, mask))
    }

    /// Recorded faces of generator `g`.
    pub fn faces_of(&self, g: usize) -> &[Simplex] {
        &self.0.faces[g]
    }

    /// Human-readable form, e.g. `s1s0(ab)`.
    pub fn show(&self, s: Simplex) -> String {
        let name = &self.0.names[s.generator()];
        if s.degen == 0 {
            return name.clone();
        }
        let word: String = s.degeneracy_word().iter().map(|i| format!("s{i}")).collect();
        format!("{word}({name})")
    }

    pub fn vertex_count(&self) -> usize {
        self.generator_range(0).len()
    }

    /// All `n`-simplices in canonical order, degenerate ones included.
    pub fn simplices_at(&self, n: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        if n > MAX_SIMPLEX_DIM {
            return out;
        }
        for d in 0..=n.min(self.dim_or_zero()) {
            let masks = subsets_of_size(n, n - d);
            for g in self.generator_range(d) {
                for &m in &masks {
                    out.push(Simplex::new(n, g, m));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `|X_n|` without enumerating.
    pub fn count_at(&self, n: usize) -> u128 {
        (0..=n.min(self.dim_or_zero()))
            .map(|d| self.generator_range(d).len() as u128 * binomial(n, n - d))
            .sum()
    }

    /// Face of generator `g` on the vertex subset `mask` (nonzero).
    pub(crate) fn subface(&self, g: usize, mask: Mask) -> Simplex {
        self.0.subfaces[self.0.sub_offset[g] + mask as usize]
    }

    /// The action of the monotone map with values `op : [m] -> [s.dim]`.
    pub(crate) fn act_values(&self, s: Simplex, op: &[u8]) -> Simplex {
        let m = op.len() - 1;
        // values of the degeneracy part
        let mut eta = [0u8; MAX_SIMPLEX_DIM + 2];
        let mut v = 0u8;
        for j in 0..s.dim() {
            eta[j] = v;
            if s.degen & (1 << j) == 0 {
                v += 1;
            }
        }
        eta[s.dim()] = v;
        let mut image: Mask = 0;
        let mut epi: Mask = 0;
        let mut prev = u8::MAX;
        for (i, &o) in op.iter().enumerate() {
            let c = eta[o as usize];
            image |= 1 << c;
            if c == prev {
                epi |= 1 << (i - 1);
            }
            prev = c;
        }
        let face = self.subface(s.generator(), image);
        Simplex::new(m, face.generator(), compose_surjection_masks(m, epi, face.degen))
    }

    pub fn act(&self, s: Simplex, op: &MonotoneMap) -> Result<Simplex, DeltaError> {
        if op.target_rank() != s.dim() {
            return Err(DeltaError::RankMismatch {
                expected: s.dim(),
                found: op.target_rank(),
            });
        }
        if op.source_rank() > MAX_SIMPLEX_DIM {
            return Err(DeltaError::BadOperatorIndex {
                rank: op.source_rank(),
                index: 0,
            });
        }
        let vals: Vec<u8> = op.values().iter().map(|&v| v as u8).collect();
        Ok(self.act_values(s, &vals))
    }

    /// `d_i s`.
    pub fn face(&self, s: Simplex, i: usize) -> Simplex {
        debug_assert!(s.dim() > 0 && i <= s.dim());
        let mut vals = [0u8; MAX_SIMPLEX_DIM + 1];
        let n = s.dim();
        for (j, slot) in vals.iter_mut().enumerate().take(n) {
            *slot = if j < i { j as u8 } else { j as u8 + 1 };
        }
        self.act_values(s, &vals[..n])
    }

    /// `s_i s`.
    pub fn degeneracy(&self, s: Simplex, i: usize) -> Simplex {
        debug_assert!(i <= s.dim());
        let n = s.dim() + 1;
        Simplex::new(n, s.generator(), compose_surjection_masks(n, 1 << i, s.degen))
    }

    /// Vertex `j` of `s`.
    pub fn vertex(&self, s: Simplex, j: usize) -> Simplex {
        self.act_values(s, &[j as u8])
    }

    /// Vertex generator indices of `s`, in order.
    pub fn vertices(&self, s: Simplex) -> Vec<usize> {
        (0..=s.dim()).map(|j| self.vertex(s, j).generator()).collect()
    }

    /// Face on the vertex subset `mask` of `s` (positions in `[s.dim]`).
    pub(crate) fn restrict(&self, s: Simplex, mask: Mask) -> Simplex {
        let mut vals = [0u8; MAX_SIMPLEX_DIM + 1];
        let mut k = 0;
        for j in 0..=s.dim() {
            if mask & (1 << j) != 0 {
                vals[k] = j as u8;
                k += 1;
            }
        }
        self.act_values(s, &vals[..k])
    }

    /// Edge from vertex `a` to vertex `b` of `s` (`a <= b`).
    pub fn edge(&self, s: Simplex, a: usize, b: usize) -> Simplex {
        self.act_values(s, &[a as u8, b as u8])
    }

    /// Degenerate 0-simplex `x` pushed up to dimension `n`.
    pub fn constant(&self, vertex: usize, n: usize) -> Simplex {
        let mask = if n == 0 { 0 } else { ((1u64 << n) - 1) as Mask };
        Simplex::new(n, vertex, mask)
    }

    pub(crate) fn nerve_cache(&self) -> &OnceLock<Option<Arc<crate::category::NerveRecognition>>> {
        &self.0.nerve_cache
    }

    /// Builder reconstructing this object, used to extend it.
    pub fn to_builder(&self) -> SSetBuilder {
        let mut b = SSetBuilder::new(self.name());
        for g in 0..self.generator_count() {
            b.add(self.gen_name(g), self.gen_dim(g));
        }
        for g in 0..self.generator_count() {
            let faces = self.faces_of(g).iter().map(|f| (f.generator(), f.degen)).collect();
            b.set_faces_raw(g, faces);
        }
        b
    }
}

/// A face entry as given to the builder.
#[derive(Clone, Debug)]
enum RawFace {
    Index { gen: usize, mask: Mask },
    Named { target: String, word: Vec<usize> },
}

#[derive(Clone, Debug)]
struct RawGen {
    name: String,
    dim: usize,
    faces: Vec<RawFace>,
}

/// Incremental description of a simplicial set; [`SSetBuilder::build`] sorts,
/// resolves and validates it.
#[derive(Clone, Debug, Default)]
pub struct SSetBuilder {
    name: String,
    gens: Vec<RawGen>,
}

impl SSetBuilder {
    pub fn new(name: impl Into<String>) -> SSetBuilder {
        SSetBuilder {
            name: name.into(),
            gens: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    /// Adds a generator and returns its builder index.
    pub fn add(&mut self, name: impl Into<String>, dim: usize) -> usize {
        self.gens.push(RawGen {
            name: name.into(),
            dim,
            faces: Vec::new(),
        });
        self.gens.len() - 1
    }

    /// Adds a generator with faces given by (degeneracy word, target name).
    pub fn generator(
        &mut self,
        name: impl Into<String>,
        dim: usize,
        faces: Vec<(Vec<usize>, String)>,
    ) -> usize {
        let id = self.add(name, dim);
        self.gens[id].faces = faces
            .into_iter()
            .map(|(word, target)| RawFace::Named { target, word })
            .collect();
        id
    }

    /// Sets faces as (builder index, repeat mask) pairs.
    pub(crate) fn set_faces_raw(&mut self, id: usize, faces: Vec<(usize, Mask)>) {
        self.gens[id].faces = faces
            .into_iter()
            .map(|(gen, mask)| RawFace::Index { gen, mask })
            .collect();
    }

    /// Validates and produces the simplicial set, along with the position of
    /// each builder index in the canonical order.
    pub fn build_with_order(self) -> Result<(SimplicialSet, Vec<usize>), BuildError> {
        let SSetBuilder { name, gens } = self;
        let mut lookup_raw: HashMap<&str, usize> = HashMap::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            if g.dim > MAX_GENERATOR_DIM {
                return Err(BuildError::DimensionTooLarge(g.dim));
            }
            if lookup_raw.insert(g.name.as_str(), i).is_some() {
                return Err(BuildError::DuplicateName(g.name.clone()));
            }
        }
        let mut order: Vec<usize> = (0..gens.len()).collect();
        order.sort_by(|&a, &b| {
            (gens[a].dim, &gens[a].name).cmp(&(gens[b].dim, &gens[b].name))
        });
        let mut position = vec![0usize; gens.len()];
        for (pos, &raw) in order.iter().enumerate() {
            position[raw] = pos;
        }
        let top = order.last().map(|&r| gens[r].dim);
        let mut level_start = vec![0u32];
        if let Some(top) = top {
            let mut idx = 0;
            for d in 0..=top {
                while idx < order.len() && gens[order[idx]].dim == d {
                    idx += 1;
                }
                level_start.push(idx as u32);
            }
        }

        // resolve faces
        let mut faces: Vec<Box<[Simplex]>> = Vec::with_capacity(gens.len());
        for &raw in &order {
            let g = &gens[raw];
            let expected = if g.dim == 0 { 0 } else { g.dim + 1 };
            if g.faces.len() != expected {
                return Err(BuildError::FaceCount {
                    generator: g.name.clone(),
                    expected,
                    found: g.faces.len(),
                });
            }
            let mut row = Vec::with_capacity(expected);
            for (i, f) in g.faces.iter().enumerate() {
                let (target, mask, word_len) = match f {
                    RawFace::Index { gen, mask } => (*gen, *mask, mask.count_ones() as usize),
                    RawFace::Named { target, word } => {
                        let t = *lookup_raw.get(target.as_str()).ok_or_else(|| {
                            BuildError::MissingFaceTarget {
                                generator: g.name.clone(),
                                index: i,
                                target: target.clone(),
                            }
                        })?;
                        let mask = word_to_mask(g.dim - 1, word).map_err(|reason| {
                            BuildError::BadWord {
                                generator: g.name.clone(),
                                index: i,
                                reason,
                            }
                        })?;
                        (t, mask, word.len())
                    }
                };
                if target >= gens.len() {
                    return Err(BuildError::MissingFaceTarget {
                        generator: g.name.clone(),
                        index: i,
                        target: format!("#{target}"),
                    });
                }
                let found = gens[target].dim + word_len;
                if found != g.dim - 1 {
                    return Err(BuildError::FaceDimension {
                        generator: g.name.clone(),
                        index: i,
                        expected: g.dim - 1,
                        found,
                    });
                }
                if g.dim >= 2 && mask >> (g.dim - 1) != 0 {
                    return Err(BuildError::BadWord {
                        generator: g.name.clone(),
                        index: i,
                        reason: DeltaError::BadOperatorIndex {
                            rank: g.dim - 1,
                            index: 31 - mask.leading_zeros() as usize,
                        },
                    });
                }
                row.push(Simplex::new(g.dim - 1, position[target], mask));
            }
            faces.push(row.into_boxed_slice());
        }

        let mut names = Vec::with_capacity(gens.len());
        let mut dims = Vec::with_capacity(gens.len());
        let mut lookup = HashMap::with_capacity(gens.len());
        for (pos, &raw) in order.iter().enumerate() {
            names.push(gens[raw].name.clone());
            dims.push(gens[raw].dim as u8);
            lookup.insert(gens[raw].name.clone(), pos as u32);
        }
        let mut sub_offset = Vec::with_capacity(gens.len());
        let mut total = 0usize;
        for &d in &dims {
            sub_offset.push(total);
            total += 1usize << (d as usize + 1);
        }
        let data = Data {
            name,
            names,
            dims,
            level_start,
            faces,
            sub_offset,
            subfaces: vec![Simplex::new(0, 0, 0); total],
            lookup,
            nerve_cache: OnceLock::new(),
        };
        let mut set = SimplicialSet(Arc::new(data));
        fill_subfaces(&mut set)?;
        Ok((set, position))
    }

    pub fn build(self) -> Result<SimplicialSet, BuildError> {
        self.build_with_order().map(|(s, _)| s)
    }
}

/// Checks the simplicial identities and fills the subface tables, one
/// generator at a time in dimension order.
fn fill_subfaces(set: &mut SimplicialSet) -> Result<(), BuildError> {
    let n_gens = set.generator_count();
    for g in 0..n_gens {
        let d = set.gen_dim(g);
        if d >= 2 {
            let faces = set.faces_of(g).to_vec();
            for j in 1..=d {
                for i in 0..j {
                    let lhs = set.face(faces[j], i);
                    let rhs = set.face(faces[i], j - 1);
                    if lhs != rhs {
                        return Err(BuildError::SimplicialIdentity {
                            generator: set.gen_name(g).to_string(),
                            i,
                            j,
                        });
                    }
                }
            }
        }
        let full: Mask = ((1u64 << (d + 1)) - 1) as Mask;
        let mut table = vec![Simplex::new(0, 0, 0); 1 << (d + 1)];
        table[full as usize] = Simplex::new(d, g, 0);
        for mask in 1..full {
            // drop the highest missing vertex through the recorded face
            let i = (0..=d).rev().find(|&i| mask & (1 << i) == 0).unwrap();
            let f = set.faces_of(g)[i];
            let below = mask & ((1 << i) - 1);
            let above = (mask >> (i + 1)) << i;
            let inner = below | above;
            table[mask as usize] = set.restrict(f, inner);
        }
        let data = Arc::get_mut(&mut set.0).expect("fresh simplicial set is uniquely owned");
        let off = data.sub_offset[g];
        data.subfaces[off..off + table.len()].copy_from_slice(&table);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta2() -> SimplicialSet {
        let mut b = SSetBuilder::new("Δ[2]");
        for v in ["0", "1", "2"] {
            b.generator(v, 0, vec![]);
        }
        let e = |t: &str| (vec![], t.to_string());
        b.generator("01", 1, vec![e("1"), e("0")]);
        b.generator("02", 1, vec![e("2"), e("0")]);
        b.generator("12", 1, vec![e("2"), e("1")]);
        b.generator("012", 2, vec![e("12"), e("02"), e("01")]);
        b.build().unwrap()
    }

    #[test]
    fn build_delta2() {
        let x = delta2();
        assert_eq!(x.generator_count(), 7);
        assert_eq!(x.generator_counts(), vec![3, 3, 1]);
        let top = x.generators(2).next().unwrap();
        let d1 = x.face(top, 1);
        assert_eq!(x.gen_name(d1.generator()), "02");
        assert_eq!(x.simplices_at(3).len(), 15);
        assert_eq!(x.count_at(3), 15);
    }

    #[test]
    fn identity_violation_is_reported() {
        let mut b = SSetBuilder::new("bad");
        for v in ["0", "1", "2"] {
            b.generator(v, 0, vec![]);
        }
        let e = |t: &str| (vec![], t.to_string());
        b.generator("01", 1, vec![e("1"), e("0")]);
        b.generator("02", 1, vec![e("2"), e("0")]);
        b.generator("12", 1, vec![e("2"), e("1")]);
        // d_0 and d_1 swapped
        b.generator("t", 2, vec![e("02"), e("12"), e("01")]);
        match b.build() {
            Err(BuildError::SimplicialIdentity { generator, .. }) => assert_eq!(generator, "t"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_target() {
        let mut b = SSetBuilder::new("bad");
        b.generator("0", 0, vec![]);
        b.generator("e", 1, vec![(vec![], "0".into()), (vec![], "x".into())]);
        assert!(matches!(b.build(), Err(BuildError::MissingFaceTarget { .. })));
    }

    #[test]
    fn degeneracy_face_cancellation() {
        let x = delta2();
        let v = x.generators(0).next().unwrap();
        let sv = x.degeneracy(v, 0);
        assert!(sv.is_degenerate());
        assert_eq!(x.face(sv, 0), v);
        assert_eq!(x.face(sv, 1), v);
        let top = x.generators(2).next().unwrap();
        let id = MonotoneMap::identity(2);
        assert_eq!(x.act(top, &id).unwrap(), top);
    }

    #[test]
    fn degenerate_faces_resolve() {
        // a 2-simplex with a degenerate face: the cone collapsing edge 12
        let mut b = SSetBuilder::new("c");
        b.generator("a", 0, vec![]);
        b.generator("b", 0, vec![]);
        let e = |t: &str| (vec![], t.to_string());
        b.generator("f", 1, vec![e("b"), e("a")]);
        b.generator("t", 2, vec![(vec![0], "b".into()), e("f"), e("f")]);
        let x = b.build().unwrap();
        let t = x.generators(2).next().unwrap();
        let e12 = x.edge(t, 1, 2);
        assert!(e12.is_degenerate());
        assert_eq!(x.show(e12), "s0(b)");
        assert_eq!(x.vertices(t), vec![0, 1, 1]);
    }
}
