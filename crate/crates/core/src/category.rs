//! Finite categories, functors and their nerves.

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;

use crate::error::CategoryError;
use crate::sset::{SSetBuilder, Simplex, SimplicialSet};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Morphism {
    name: String,
    source: usize,
    target: usize,
}

/// A finite category with explicitly named objects and morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<usize>,
    /// `comp[f * m + g] = g ∘ f`, `NONE` when not composable
    comp: Vec<u32>,
    obj_lookup: HashMap<String, usize>,
    mor_lookup: HashMap<String, usize>,
}

/// Accumulates objects, morphisms and composites before validation.
#[derive(Clone, Debug, Default)]
pub struct CategoryBuilder {
    name: String,
    objects: Vec<String>,
    identities: Vec<String>,
    morphisms: Vec<(String, String, String)>,
    composites: Vec<(String, String, String)>,
}

impl CategoryBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        CategoryBuilder {
            name: name.into(),
            ..Default::default()
        }
    }

    /// Adds an object whose identity is called `id_<name>`.
    pub fn object(&mut self, name: impl Into<String>) -> &mut Self {
        let name = name.into();
        let id = format!("id_{name}");
        self.object_with_identity(name, id)
    }

    pub fn object_with_identity(
        &mut self,
        name: impl Into<String>,
        identity: impl Into<String>,
    ) -> &mut Self {
        self.objects.push(name.into());
        self.identities.push(identity.into());
        self
    }

    pub fn morphism(
        &mut self,
        name: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> &mut Self {
        self.morphisms.push((name.into(), source.into(), target.into()));
        self
    }

    /// Records `g ∘ f = h`. Composites with identities are filled in.
    pub fn composite(
        &mut self,
        f: impl Into<String>,
        g: impl Into<String>,
        h: impl Into<String>,
    ) -> &mut Self {
        self.composites.push((f.into(), g.into(), h.into()));
        self
    }

    pub fn build(&self) -> Result<FiniteCategory, CategoryError> {
        let mut obj_lookup = HashMap::new();
        for (i, o) in self.objects.iter().enumerate() {
            if obj_lookup.insert(o.clone(), i).is_some() {
                return Err(CategoryError::Duplicate(o.clone()));
            }
        }
        let mut morphisms = Vec::new();
        let mut mor_lookup = HashMap::new();
        let mut identity = Vec::new();
        for (i, id) in self.identities.iter().enumerate() {
            if mor_lookup.insert(id.clone(), morphisms.len()).is_some() {
                return Err(CategoryError::Duplicate(id.clone()));
            }
            identity.push(morphisms.len());
            morphisms.push(Morphism {
                name: id.clone(),
                source: i,
                target: i,
            });
        }
        for (name, s, t) in &self.morphisms {
            let source = *obj_lookup
                .get(s)
                .ok_or_else(|| CategoryError::UnknownObject(s.clone()))?;
            let target = *obj_lookup
                .get(t)
                .ok_or_else(|| CategoryError::UnknownObject(t.clone()))?;
            if mor_lookup.insert(name.clone(), morphisms.len()).is_some() {
                return Err(CategoryError::Duplicate(name.clone()));
            }
            morphisms.push(Morphism {
                name: name.clone(),
                source,
                target,
            });
        }
        for (name, _) in &mor_lookup {
            if obj_lookup.contains_key(name) {
                return Err(CategoryError::Duplicate(name.clone()));
            }
        }
        let m = morphisms.len();
        let mut comp = vec![NONE; m * m];
        for (f, mf) in morphisms.iter().enumerate() {
            comp[f * m + identity[mf.target]] = f as u32;
            comp[identity[mf.source] * m + f] = f as u32;
        }
        for (f, g, h) in &self.composites {
            let look = |x: &String| {
                mor_lookup
                    .get(x)
                    .copied()
                    .ok_or_else(|| CategoryError::UnknownMorphism(x.clone()))
            };
            let (fi, gi, hi) = (look(f)?, look(g)?, look(h)?);
            let (mf, mg, mh) = (&morphisms[fi], &morphisms[gi], &morphisms[hi]);
            if mf.target != mg.source || mh.source != mf.source || mh.target != mg.target {
                return Err(CategoryError::BadComposite {
                    f: f.clone(),
                    g: g.clone(),
                });
            }
            let slot = &mut comp[fi * m + gi];
            if *slot != NONE && *slot != hi as u32 {
                return Err(CategoryError::IdentityLaw(format!("{g} ∘ {f}")));
            }
            *slot = hi as u32;
        }
        let cat = FiniteCategory {
            name: self.name.clone(),
            objects: self.objects.clone(),
            morphisms,
            identity,
            comp,
            obj_lookup,
            mor_lookup,
        };
        cat.validate()?;
        Ok(cat)
    }
}

impl FiniteCategory {
    fn validate(&self) -> Result<(), CategoryError> {
        let m = self.morphisms.len();
        for f in 0..m {
            for g in 0..m {
                let composable = self.morphisms[f].target == self.morphisms[g].source;
                let c = self.comp[f * m + g];
                if composable && c == NONE {
                    return Err(CategoryError::MissingComposite {
                        f: self.morphisms[f].name.clone(),
                        g: self.morphisms[g].name.clone(),
                    });
                }
            }
        }
        for f in 0..m {
            for g in 0..m {
                let gf = self.comp[f * m + g];
                if gf == NONE {
                    continue;
                }
                for h in 0..m {
                    let hg = self.comp[g * m + h];
                    if hg == NONE {
                        continue;
                    }
                    let left = self.comp[gf as usize * m + h];
                    let right = self.comp[f * m + hg as usize];
                    if left != right {
                        return Err(CategoryError::Associativity {
                            f: self.morphisms[f].name.clone(),
                            g: self.morphisms[g].name.clone(),
                            h: self.morphisms[h].name.clone(),
                        });
                    }
                }
            }
        }
        for name in self.morphisms.iter().map(|m| &m.name).chain(self.objects.iter()) {
            if name.contains(';') {
                return Err(CategoryError::BadFunctor(format!(
                    "name `{name}` may not contain `;`"
                )));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_name(&self, o: usize) -> &str {
        &self.objects[o]
    }

    pub fn morphism_name(&self, f: usize) -> &str {
        &self.morphisms[f].name
    }

    pub fn find_object(&self, name: &str) -> Option<usize> {
        self.obj_lookup.get(name).copied()
    }

    pub fn find_morphism(&self, name: &str) -> Option<usize> {
        self.mor_lookup.get(name).copied()
    }

    pub fn source(&self, f: usize) -> usize {
        self.morphisms[f].source
    }

    pub fn target(&self, f: usize) -> usize {
        self.morphisms[f].target
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identity[o]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.morphisms[f].source] == f
    }

    /// `g ∘ f`, when `target(f) = source(g)`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        let c = self.comp[f * self.morphisms.len() + g];
        (c != NONE).then_some(c as usize)
    }

    /// Morphisms `a -> b` in index order.
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&f| self.morphisms[f].source == a && self.morphisms[f].target == b)
            .collect()
    }

    pub fn is_isomorphism(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (a, b) = (self.source(f), self.target(f));
        self.hom(b, a).into_iter().find(|&g| {
            self.compose(g, f) == Some(self.identity[a]) && self.compose(f, g) == Some(self.identity[b])
        })
    }

    /// True when the only cycles in the underlying graph are identities, so
    /// the nerve is finite.
    pub fn is_loop_free(&self) -> bool {
        let n = self.objects.len();
        let mut adj = vec![Vec::new(); n];
        for (f, mf) in self.morphisms.iter().enumerate() {
            if self.is_identity(f) {
                continue;
            }
            if mf.source == mf.target {
                return false;
            }
            adj[mf.source].push(mf.target);
        }
        // Kahn
        let mut indeg = vec![0usize; n];
        for a in &adj {
            for &b in a {
                indeg[b] += 1;
            }
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &w in &adj[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        seen == n
    }

    pub fn opposite(&self) -> FiniteCategory {
        let m = self.morphisms.len();
        let morphisms: Vec<Morphism> = self
            .morphisms
            .iter()
            .map(|mf| Morphism {
                name: mf.name.clone(),
                source: mf.target,
                target: mf.source,
            })
            .collect();
        let mut comp = vec![NONE; m * m];
        for f in 0..m {
            for g in 0..m {
                // in the opposite, g ∘op f = f ∘ g
                comp[f * m + g] = self.comp[g * m + f];
            }
        }
        FiniteCategory {
            name: format!("{}^op", self.name),
            objects: self.objects.clone(),
            morphisms,
            identity: self.identity.clone(),
            comp,
            obj_lookup: self.obj_lookup.clone(),
            mor_lookup: self.mor_lookup.clone(),
        }
    }

    /// Builder that reproduces this category, for extension.
    pub fn to_builder(&self) -> CategoryBuilder {
        let mut b = CategoryBuilder::new(self.name.clone());
        for (o, name) in self.objects.iter().enumerate() {
            b.object_with_identity(name.clone(), self.morphisms[self.identity[o]].name.clone());
        }
        for (f, mf) in self.morphisms.iter().enumerate() {
            if self.is_identity(f) {
                continue;
            }
            b.morphism(
                mf.name.clone(),
                self.objects[mf.source].clone(),
                self.objects[mf.target].clone(),
            );
        }
        let m = self.morphisms.len();
        for f in 0..m {
            for g in 0..m {
                if self.is_identity(f) || self.is_identity(g) {
                    continue;
                }
                if let Some(h) = self.compose(g, f) {
                    b.composite(
                        self.morphisms[f].name.clone(),
                        self.morphisms[g].name.clone(),
                        self.morphisms[h].name.clone(),
                    );
                }
            }
        }
        b
    }

    pub fn renamed(&self, name: impl Into<String>) -> FiniteCategory {
        let mut c = self.clone();
        c.name = name.into();
        c
    }

    /// The ordinal `[n]` as a category; the morphism `i -> j` is named `ij`
    /// (with a comma separator once `n > 9`).
    pub fn ordinal(n: usize) -> FiniteCategory {
        let sep = if n > 9 { "," } else { "" };
        let mut b = CategoryBuilder::new(format!("[{n}]"));
        for i in 0..=n {
            b.object_with_identity(i.to_string(), format!("{i}{sep}{i}"));
        }
        for i in 0..=n {
            for j in i + 1..=n {
                b.morphism(format!("{i}{sep}{j}"), i.to_string(), j.to_string());
            }
        }
        for i in 0..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    b.composite(format!("{i}{sep}{j}"), format!("{j}{sep}{k}"), format!("{i}{sep}{k}"));
                }
            }
        }
        b.build().expect("ordinal is a category")
    }

    /// Thin category on a preorder given by generating relations `a <= b`.
    pub fn from_relations(
        name: &str,
        objects: &[&str],
        relations: &[(&str, &str)],
    ) -> Result<FiniteCategory, CategoryError> {
        let n = objects.len();
        let idx: HashMap<&str, usize> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in relations {
            let ia = *idx.get(a).ok_or_else(|| CategoryError::UnknownObject(a.to_string()))?;
            let ib = *idx.get(b).ok_or_else(|| CategoryError::UnknownObject(b.to_string()))?;
            le[ia][ib] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        let mname = |i: usize, j: usize| format!("{}<{}", objects[i], objects[j]);
        let mut b = CategoryBuilder::new(name);
        for &o in objects {
            b.object(o);
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && le[i][j] {
                    b.morphism(mname(i, j), objects[i], objects[j]);
                }
            }
        }
        let ident = |i: usize| format!("id_{}", objects[i]);
        let name_of = |i: usize, j: usize| if i == j { ident(i) } else { mname(i, j) };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i != j && j != k && le[i][j] && le[j][k] {
                        b.composite(mname(i, j), mname(j, k), name_of(i, k));
                    }
                }
            }
        }
        b.build()
    }

    pub fn discrete(names: &[&str]) -> FiniteCategory {
        let mut b = CategoryBuilder::new(format!("disc{}", names.len()));
        for &o in names {
            b.object(o);
        }
        b.build().expect("discrete category")
    }

    /// Two objects `0, 1` with inverse isomorphisms `f : 0 -> 1`, `g : 1 -> 0`.
    pub fn free_isomorphism() -> FiniteCategory {
        let mut b = CategoryBuilder::new("Iso");
        b.object("0").object("1");
        b.morphism("f", "0", "1").morphism("g", "1", "0");
        b.composite("f", "g", "id_0").composite("g", "f", "id_1");
        b.build().expect("free isomorphism")
    }

    /// The cyclic group of order `n` as a one-object category.
    pub fn cyclic_group(n: usize) -> FiniteCategory {
        let mut b = CategoryBuilder::new(format!("Z{n}"));
        b.object_with_identity("*", "t0");
        for k in 1..n {
            b.morphism(format!("t{k}"), "*", "*");
        }
        for a in 0..n {
            for c in 0..n {
                if a == 0 || c == 0 {
                    continue;
                }
                b.composite(format!("t{a}"), format!("t{c}"), format!("t{}", (a + c) % n));
            }
        }
        b.build().expect("cyclic group")
    }

    pub fn parallel_pair() -> FiniteCategory {
        let mut b = CategoryBuilder::new("Par");
        b.object("a").object("b");
        b.morphism("u", "a", "b").morphism("v", "a", "b");
        b.build().expect("parallel pair")
    }

    /// Free category on a finite acyclic multigraph: morphisms are paths.
    pub fn free_on_graph(
        name: &str,
        objects: &[String],
        edges: &[(String, usize, usize)],
    ) -> Result<FiniteCategory, CategoryError> {
        let n = objects.len();
        // enumerate paths by DFS from every object
        let mut paths: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        fn extend(
            start: usize,
            at: usize,
            path: &mut Vec<usize>,
            edges: &[(String, usize, usize)],
            out: &mut Vec<(usize, usize, Vec<usize>)>,
            depth: usize,
        ) -> Result<(), CategoryError> {
            if depth > 64 {
                return Err(CategoryError::InfiniteNerve);
            }
            for (e, (_, s, t)) in edges.iter().enumerate() {
                if *s == at {
                    path.push(e);
                    out.push((start, *t, path.clone()));
                    extend(start, *t, path, edges, out, depth + 1)?;
                    path.pop();
                }
            }
            Ok(())
        }
        for o in 0..n {
            extend(o, o, &mut Vec::new(), edges, &mut paths, 0)?;
        }
        let pname = |p: &[usize]| -> String {
            p.iter().map(|&e| edges[e].0.as_str()).collect::<Vec<_>>().join(".")
        };
        let mut b = CategoryBuilder::new(name);
        for o in objects {
            b.object(o.clone());
        }
        for (s, t, p) in &paths {
            b.morphism(pname(p), objects[*s].clone(), objects[*t].clone());
        }
        for (s1, t1, p1) in &paths {
            for (s2, _, p2) in &paths {
                if t1 == s2 {
                    let mut joined = p1.clone();
                    joined.extend_from_slice(p2);
                    b.composite(pname(p1), pname(p2), pname(&joined));
                }
            }
            let _ = s1;
        }
        b.build()
    }

    pub fn product(&self, other: &FiniteCategory) -> FiniteCategory {
        let mut b = CategoryBuilder::new(format!("{}x{}", self.name, other.name));
        let oname = |a: usize, c: usize| format!("({},{})", self.objects[a], other.objects[c]);
        let mname = |f: usize, g: usize| {
            format!("({},{})", self.morphisms[f].name, other.morphisms[g].name)
        };
        for a in 0..self.objects.len() {
            for c in 0..other.objects.len() {
                b.object_with_identity(oname(a, c), mname(self.identity[a], other.identity[c]));
            }
        }
        for f in 0..self.morphisms.len() {
            for g in 0..other.morphisms.len() {
                if self.is_identity(f) && other.is_identity(g) {
                    continue;
                }
                b.morphism(
                    mname(f, g),
                    oname(self.source(f), other.source(g)),
                    oname(self.target(f), other.target(g)),
                );
            }
        }
        for f1 in 0..self.morphisms.len() {
            for f2 in 0..self.morphisms.len() {
                let Some(f) = self.compose(f2, f1) else { continue };
                for g1 in 0..other.morphisms.len() {
                    for g2 in 0..other.morphisms.len() {
                        let Some(g) = other.compose(g2, g1) else { continue };
                        b.composite(mname(f1, g1), mname(f2, g2), mname(f, g));
                    }
                }
            }
        }
        b.build().expect("product of categories")
    }

    /// A seeded random small category: either a random poset or the free
    /// category on a random acyclic multigraph.
    pub fn random<R: Rng>(rng: &mut R, max_objects: usize, name: &str) -> FiniteCategory {
        let n = rng.gen_range(1..=max_objects.max(1));
        let objects: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
        if rng.gen_bool(0.5) {
            let refs: Vec<&str> = objects.iter().map(|s| s.as_str()).collect();
            let mut rel = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.5) {
                        rel.push((refs[i], refs[j]));
                    }
                }
            }
            FiniteCategory::from_relations(name, &refs, &rel).expect("poset")
        } else {
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let k = rng.gen_range(0..=2usize.min(if j == i + 1 { 2 } else { 1 }));
                    for t in 0..k {
                        edges.push((format!("e{i}{j}{}", ["", "'"][t]), i, j));
                    }
                }
            }
            FiniteCategory::free_on_graph(name, &objects, &edges).expect("free category")
        }
    }
}

/// A functor between finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functor {
    pub source: Arc<FiniteCategory>,
    pub target: Arc<FiniteCategory>,
    objects: Vec<usize>,
    morphisms: Vec<usize>,
}

impl Functor {
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        objects: Vec<usize>,
        morphisms: Vec<usize>,
    ) -> Result<Functor, CategoryError> {
        if objects.len() != source.object_count() || morphisms.len() != source.morphism_count() {
            return Err(CategoryError::BadFunctor("assignment has the wrong size".into()));
        }
        for (f, &ff) in morphisms.iter().enumerate() {
            if ff >= target.morphism_count()
                || target.source(ff) != objects[source.source(f)]
                || target.target(ff) != objects[source.target(f)]
            {
                return Err(CategoryError::BadFunctor(format!(
                    "endpoints of `{}`",
                    source.morphism_name(f)
                )));
            }
        }
        for (o, &fo) in objects.iter().enumerate() {
            if morphisms[source.identity(o)] != target.identity(fo) {
                return Err(CategoryError::BadFunctor(format!(
                    "identity of `{}`",
                    source.object_name(o)
                )));
            }
        }
        for f in 0..source.morphism_count() {
            for g in 0..source.morphism_count() {
                if let Some(h) = source.compose(g, f) {
                    if target.compose(morphisms[g], morphisms[f]) != Some(morphisms[h]) {
                        return Err(CategoryError::BadFunctor(format!(
                            "composite of `{}` and `{}`",
                            source.morphism_name(f),
                            source.morphism_name(g)
                        )));
                    }
                }
            }
        }
        Ok(Functor {
            source,
            target,
            objects,
            morphisms,
        })
    }

    pub fn identity(c: Arc<FiniteCategory>) -> Functor {
        let objects = (0..c.object_count()).collect();
        let morphisms = (0..c.morphism_count()).collect();
        Functor {
            source: c.clone(),
            target: c,
            objects,
            morphisms,
        }
    }

    pub fn on_object(&self, o: usize) -> usize {
        self.objects[o]
    }

    pub fn on_morphism(&self, f: usize) -> usize {
        self.morphisms[f]
    }

    pub fn is_surjective_on_objects(&self) -> bool {
        let mut hit = vec![false; self.target.object_count()];
        for &o in &self.objects {
            hit[o] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_fully_faithful(&self) -> bool {
        let s = &self.source;
        for a in 0..s.object_count() {
            for b in 0..s.object_count() {
                let mut images: Vec<usize> =
                    s.hom(a, b).into_iter().map(|f| self.morphisms[f]).collect();
                images.sort_unstable();
                let before = images.len();
                images.dedup();
                if images.len() != before
                    || images.len() != self.target.hom(self.objects[a], self.objects[b]).len()
                {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_essentially_surjective(&self) -> bool {
        let t = &self.target;
        (0..t.object_count()).all(|y| {
            self.objects.iter().any(|&x| {
                x == y || t.hom(x, y).into_iter().any(|f| t.is_isomorphism(f))
            })
        })
    }
}

/// Name of an `n`-chain of morphisms in a nerve.
fn chain_name(c: &FiniteCategory, chain: &[usize]) -> String {
    chain
        .iter()
        .map(|&f| c.morphism_name(f))
        .collect::<Vec<_>>()
        .join(";")
}

/// Normal form of a chain that may contain identities: the chain of
/// non-identity morphisms together with the repeat mask. A chain of only
/// identities reduces to its object, reported as `Err(object)`.
pub(crate) fn normalize_chain(c: &FiniteCategory, chain: &[usize]) -> (Result<Vec<usize>, usize>, u32) {
    let mut mask = 0u32;
    let mut kept = Vec::new();
    for (j, &f) in chain.iter().enumerate() {
        if c.is_identity(f) {
            mask |= 1 << j;
        } else {
            kept.push(f);
        }
    }
    if kept.is_empty() {
        (Err(c.source(chain[0])), mask)
    } else {
        (Ok(kept), mask)
    }
}

/// Nerve of `c` containing all chains of length `<= truncation`. With
/// `truncation = None` the category must be loop-free and the full nerve is
/// produced.
pub fn nerve(c: &FiniteCategory, truncation: Option<usize>) -> Result<SimplicialSet, CategoryError> {
    let limit = match truncation {
        Some(t) => t,
        None => {
            if !c.is_loop_free() {
                return Err(CategoryError::InfiniteNerve);
            }
            usize::MAX
        }
    };
    let name = match truncation {
        Some(t) => format!("N({})≤{t}", c.name()),
        None => format!("N({})", c.name()),
    };
    let mut b = SSetBuilder::new(name);
    let mut chain_id: HashMap<Vec<usize>, usize> = HashMap::new();
    for o in 0..c.object_count() {
        b.add(c.object_name(o), 0);
    }
    // chains by increasing length
    let non_id: Vec<usize> = (0..c.morphism_count()).filter(|&f| !c.is_identity(f)).collect();
    let mut frontier: Vec<Vec<usize>> = Vec::new();
    if limit >= 1 {
        for &f in &non_id {
            frontier.push(vec![f]);
        }
    }
    let mut len = 1;
    while !frontier.is_empty() && len <= limit {
        let mut next = Vec::new();
        for chain in &frontier {
            let id = b.add(chain_name(c, chain), len);
            chain_id.insert(chain.clone(), id);
            if len < limit {
                let last = *chain.last().unwrap();
                for &g in &non_id {
                    if c.source(g) == c.target(last) {
                        let mut ext = chain.clone();
                        ext.push(g);
                        next.push(ext);
                    }
                }
            }
        }
        frontier = next;
        len += 1;
    }
    let lookup = |chain: &[usize]| -> (usize, u32) {
        match normalize_chain(c, chain) {
            (Ok(kept), mask) => (chain_id[&kept], mask),
            (Err(o), mask) => (o, mask),
        }
    };
    let entries: Vec<(Vec<usize>, usize)> = chain_id.iter().map(|(k, &v)| (k.clone(), v)).collect();
    for (chain, id) in entries {
        let n = chain.len();
        let faces = if n == 1 {
            vec![(c.target(chain[0]), 0), (c.source(chain[0]), 0)]
        } else {
            (0..=n)
                .map(|i| {
                    let face: Vec<usize> = if i == 0 {
                        chain[1..].to_vec()
                    } else if i == n {
                        chain[..n - 1].to_vec()
                    } else {
                        let mut f = chain[..i - 1].to_vec();
                        f.push(c.compose(chain[i], chain[i - 1]).expect("composable chain"));
                        f.extend_from_slice(&chain[i + 1..]);
                        f
                    };
                    lookup(&face)
                })
                .collect()
        };
        b.set_faces_raw(id, faces);
    }
    Ok(b.build().expect("nerve satisfies the simplicial identities"))
}

/// Nerve of a functor between nerves built with the same truncation.
pub fn nerve_of_functor(
    f: &Functor,
    source: &SimplicialSet,
    target: &SimplicialSet,
) -> Result<crate::map::SimplicialMap, crate::error::Error> {
    let mut images = Vec::with_capacity(source.generator_count());
    for g in 0..source.generator_count() {
        let d = source.gen_dim(g);
        let img = if d == 0 {
            let o = f.source.find_object(source.gen_name(g)).ok_or_else(|| {
                CategoryError::UnknownObject(source.gen_name(g).to_string())
            })?;
            Simplex::new(0, target_object(target, &f.target, f.on_object(o))?, 0)
        } else {
            let chain: Vec<usize> = source
                .gen_name(g)
                .split(';')
                .map(|m| {
                    f.source
                        .find_morphism(m)
                        .map(|x| f.on_morphism(x))
                        .ok_or_else(|| CategoryError::UnknownMorphism(m.to_string()))
                })
                .collect::<Result<_, _>>()?;
            match normalize_chain(&f.target, &chain) {
                (Ok(kept), mask) => {
                    let name = chain_name(&f.target, &kept);
                    let t = target
                        .find(&name)
                        .ok_or_else(|| CategoryError::UnknownMorphism(name.clone()))?;
                    Simplex::new(d, t, mask)
                }
                (Err(o), mask) => Simplex::new(d, target_object(target, &f.target, o)?, mask),
            }
        };
        images.push(img);
    }
    crate::map::SimplicialMap::new(source.clone(), target.clone(), images).map_err(Into::into)
}

fn target_object(
    nerve: &SimplicialSet,
    c: &FiniteCategory,
    o: usize,
) -> Result<usize, CategoryError> {
    nerve
        .find(c.object_name(o))
        .ok_or_else(|| CategoryError::UnknownObject(c.object_name(o).to_string()))
}

/// Evidence that a simplicial set is isomorphic to the full nerve of a
/// loop-free finite category, read off from its 2-skeleton.
#[derive(Clone, Debug)]
pub struct NerveRecognition {
    pub category: FiniteCategory,
    /// morphism of `category` for each 1-simplex generator, indexed by
    /// generator
    pub edge_morphism: HashMap<usize, usize>,
}

/// Decides whether `x` is (isomorphic to) the nerve of a finite category.
/// The answer is cached on the object.
pub fn recognize_nerve(x: &SimplicialSet) -> Option<Arc<NerveRecognition>> {
    x.nerve_cache().get_or_init(|| recognize_uncached(x).map(Arc::new)).clone()
}

fn recognize_uncached(x: &SimplicialSet) -> Option<NerveRecognition> {
    let mut b = CategoryBuilder::new(format!("ho({})", x.name()));
    let vname = |v: usize| format!("v{v}");
    let ename = |e: usize| format!("e{e}");
    let idname = |v: usize| format!("i{v}");
    for v in x.generator_range(0) {
        b.object_with_identity(vname(v), idname(v));
    }
    for e in x.generator_range(1) {
        let f = x.faces_of(e);
        b.morphism(ename(e), vname(f[1].generator()), vname(f[0].generator()));
    }
    let edge_label = |s: Simplex| -> String {
        if s.is_degenerate() {
            idname(s.generator())
        } else {
            ename(s.generator())
        }
    };
    let mut fillers: HashMap<(Simplex, Simplex), usize> = HashMap::new();
    for t in x.generator_range(2) {
        let f = x.faces_of(t);
        if f[0].is_degenerate() || f[2].is_degenerate() {
            return None;
        }
        if fillers.insert((f[2], f[0]), t).is_some() {
            return None;
        }
        b.composite(edge_label(f[2]), edge_label(f[0]), edge_label(f[1]));
    }
    let cat = b.build().ok()?;
    if !cat.is_loop_free() {
        return None;
    }
    // every composable pair of nondegenerate edges needs a filler
    for f in x.generator_range(1) {
        for g in x.generator_range(1) {
            let (sf, sg) = (x.gen_simplex(f), x.gen_simplex(g));
            if x.faces_of(f)[0] == x.faces_of(g)[1] && !fillers.contains_key(&(sf, sg)) {
                return None;
            }
        }
    }
    let full = nerve(&cat, None).ok()?;
    if full.generator_counts() != x.generator_counts() {
        return None;
    }
    // compare via spines: each generator of x must go to the chain of its
    // spine edges, bijectively and face-compatibly
    let mut images = Vec::with_capacity(x.generator_count());
    let mut hit = vec![false; full.generator_count()];
    for g in 0..x.generator_count() {
        let s = x.gen_simplex(g);
        let d = s.dim();
        let target = if d == 0 {
            full.find(&vname(g))?
        } else {
            let mut names = Vec::with_capacity(d);
            for j in 0..d {
                let e = x.edge(s, j, j + 1);
                if e.is_degenerate() {
                    return None;
                }
                names.push(ename(e.generator()));
            }
            full.find(&names.join(";"))?
        };
        if hit[target] {
            return None;
        }
        hit[target] = true;
        images.push(Simplex::new(d, target, 0));
    }
    crate::map::SimplicialMap::new(x.clone(), full, images).ok()?;
    let edge_morphism = x
        .generator_range(1)
        .map(|e| (e, cat.find_morphism(&ename(e)).unwrap()))
        .collect();
    Some(NerveRecognition {
        category: cat,
        edge_morphism,
    })
}
