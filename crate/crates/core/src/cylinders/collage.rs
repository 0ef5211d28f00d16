//! Profunctors `A^op × B -> Set` and the nerves of their collages.

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;

use super::{interval_simplex, Cylinder};
use crate::category::{nerve, CategoryBuilder, FiniteCategory};
use crate::error::{CategoryError, Error};
use crate::map::SimplicialMap;
use crate::sset::SimplicialSet;
use crate::standard;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProElement {
    pub name: String,
    pub a: usize,
    pub b: usize,
}

/// Elements of every `M(a, b)` with the actions `x · f` for `f : a' -> a`
/// in `A` and `g · x` for `g : b -> b'` in `B`.
#[derive(Clone, Debug)]
pub struct Profunctor {
    pub source: Arc<FiniteCategory>,
    pub target: Arc<FiniteCategory>,
    pub elements: Vec<ProElement>,
    act_a: HashMap<(usize, usize), usize>,
    act_b: HashMap<(usize, usize), usize>,
}

fn bad(msg: String) -> Error {
    CategoryError::BadProfunctor(msg).into()
}

impl Profunctor {
    /// Actions are given as `(morphism, element, result)` triples; those
    /// along identities may be omitted.
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        elements: Vec<ProElement>,
        act_a: &[(usize, usize, usize)],
        act_b: &[(usize, usize, usize)],
    ) -> Result<Profunctor, Error> {
        let (a, b) = (&source, &target);
        let mut seen = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if e.a >= a.object_count() || e.b >= b.object_count() {
                return Err(bad(format!("element `{}` has an unknown index", e.name)));
            }
            if seen.insert(e.name.clone(), i).is_some() {
                return Err(bad(format!("duplicate element `{}`", e.name)));
            }
        }
        let mut left = HashMap::new();
        for &(f, x, y) in act_a {
            let (ex, ey) = (&elements[x], &elements[y]);
            if a.target(f) != ex.a || a.source(f) != ey.a || ex.b != ey.b {
                return Err(bad(format!("{} · {} has the wrong index", ex.name, a.morphism_name(f))));
            }
            if left.insert((f, x), y).is_some_and(|old| old != y) {
                return Err(bad(format!("{} · {} given twice", ex.name, a.morphism_name(f))));
            }
        }
        let mut right = HashMap::new();
        for &(g, x, y) in act_b {
            let (ex, ey) = (&elements[x], &elements[y]);
            if b.source(g) != ex.b || b.target(g) != ey.b || ex.a != ey.a {
                return Err(bad(format!("{} · {} has the wrong index", b.morphism_name(g), ex.name)));
            }
            if right.insert((g, x), y).is_some_and(|old| old != y) {
                return Err(bad(format!("{} · {} given twice", b.morphism_name(g), ex.name)));
            }
        }
        for (x, e) in elements.iter().enumerate() {
            for id in [a.identity(e.a)] {
                if left.insert((id, x), x).is_some_and(|y| y != x) {
                    return Err(bad(format!("identity of A moves `{}`", e.name)));
                }
            }
            if right.insert((b.identity(e.b), x), x).is_some_and(|y| y != x) {
                return Err(bad(format!("identity of B moves `{}`", e.name)));
            }
        }
        let p = Profunctor {
            source,
            target,
            elements,
            act_a: left,
            act_b: right,
        };
        p.validate()?;
        Ok(p)
    }

    /// Builds a profunctor from names, e.g. for file input.
    pub fn from_names(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        elements: &[(String, String, String)],
        act_a: &[(String, String, String)],
        act_b: &[(String, String, String)],
    ) -> Result<Profunctor, Error> {
        let obj = |c: &FiniteCategory, n: &str| c.find_object(n).ok_or_else(|| Error::from(CategoryError::UnknownObject(n.into())));
        let mor = |c: &FiniteCategory, n: &str| c.find_morphism(n).ok_or_else(|| Error::from(CategoryError::UnknownMorphism(n.into())));
        let els = elements
            .iter()
            .map(|(n, a, b)| {
                Ok(ProElement {
                    name: n.clone(),
                    a: obj(&source, a)?,
                    b: obj(&target, b)?,
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let el = |n: &str| els.iter().position(|e| e.name == n).ok_or_else(|| bad(format!("unknown element `{n}`")));
        let left = act_a
            .iter()
            .map(|(f, x, y)| Ok((mor(&source, f)?, el(x)?, el(y)?)))
            .collect::<Result<Vec<_>, Error>>()?;
        let right = act_b
            .iter()
            .map(|(g, x, y)| Ok((mor(&target, g)?, el(x)?, el(y)?)))
            .collect::<Result<Vec<_>, Error>>()?;
        Profunctor::new(source.clone(), target.clone(), els.clone(), &left, &right)
    }

    pub fn act_a(&self, x: usize, f: usize) -> Option<usize> {
        self.act_a.get(&(f, x)).copied()
    }

    pub fn act_b(&self, g: usize, x: usize) -> Option<usize> {
        self.act_b.get(&(g, x)).copied()
    }

    /// Every action defined, both associative, and commuting with each other.
    fn validate(&self) -> Result<(), Error> {
        let (a, b) = (&*self.source, &*self.target);
        for (x, e) in self.elements.iter().enumerate() {
            for f in 0..a.morphism_count() {
                if a.target(f) == e.a && self.act_a(x, f).is_none() {
                    return Err(bad(format!("{} · {} is undefined", e.name, a.morphism_name(f))));
                }
            }
            for g in 0..b.morphism_count() {
                if b.source(g) == e.b && self.act_b(g, x).is_none() {
                    return Err(bad(format!("{} · {} is undefined", b.morphism_name(g), e.name)));
                }
            }
        }
        for x in 0..self.elements.len() {
            let e = &self.elements[x];
            for f in (0..a.morphism_count()).filter(|&f| a.target(f) == e.a) {
                let xf = self.act_a(x, f).unwrap();
                for f2 in (0..a.morphism_count()).filter(|&h| a.target(h) == a.source(f)) {
                    let lhs = self.act_a(xf, f2);
                    let rhs = self.act_a(x, a.compose(f, f2).unwrap());
                    if lhs != rhs {
                        return Err(bad(format!("(x · f) · f' ≠ x · (f f') at `{}`", e.name)));
                    }
                }
                for g in (0..b.morphism_count()).filter(|&g| b.source(g) == e.b) {
                    let lhs = self.act_b(g, xf);
                    let rhs = self.act_b(g, x).and_then(|gx| self.act_a(gx, f));
                    if lhs != rhs {
                        return Err(bad(format!("g · (x · f) ≠ (g · x) · f at `{}`", e.name)));
                    }
                }
            }
            for g in (0..b.morphism_count()).filter(|&g| b.source(g) == e.b) {
                let gx = self.act_b(g, x).unwrap();
                for g2 in (0..b.morphism_count()).filter(|&h| b.source(h) == b.target(g)) {
                    let lhs = self.act_b(g2, gx);
                    let rhs = self.act_b(b.compose(g2, g).unwrap(), x);
                    if lhs != rhs {
                        return Err(bad(format!("g' · (g · x) ≠ (g' g) · x at `{}`", e.name)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn empty(source: Arc<FiniteCategory>, target: Arc<FiniteCategory>) -> Profunctor {
        Profunctor::new(source, target, Vec::new(), &[], &[]).expect("empty profunctor")
    }

    /// `M(a, b)` a singleton exactly on an up-closed set of pairs.
    pub fn from_relation(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        seeds: &[(usize, usize)],
    ) -> Result<Profunctor, Error> {
        let (a, b) = (&*source, &*target);
        let mut rel = vec![vec![false; b.object_count()]; a.object_count()];
        let mut stack: Vec<(usize, usize)> = seeds.to_vec();
        while let Some((i, j)) = stack.pop() {
            if rel[i][j] {
                continue;
            }
            rel[i][j] = true;
            for f in 0..a.morphism_count() {
                if a.target(f) == i {
                    stack.push((a.source(f), j));
                }
            }
            for g in 0..b.morphism_count() {
                if b.source(g) == j {
                    stack.push((i, b.target(g)));
                }
            }
        }
        let mut elements = Vec::new();
        let mut id = HashMap::new();
        for (i, row) in rel.iter().enumerate() {
            for (j, &r) in row.iter().enumerate() {
                if r {
                    id.insert((i, j), elements.len());
                    elements.push(ProElement {
                        name: format!("m({},{})", a.object_name(i), b.object_name(j)),
                        a: i,
                        b: j,
                    });
                }
            }
        }
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (x, e) in elements.iter().enumerate() {
            for f in (0..a.morphism_count()).filter(|&f| a.target(f) == e.a) {
                left.push((f, x, id[&(a.source(f), e.b)]));
            }
            for g in (0..b.morphism_count()).filter(|&g| b.source(g) == e.b) {
                right.push((g, x, id[&(e.a, b.target(g))]));
            }
        }
        Profunctor::new(source, target, elements, &left, &right)
    }

    /// `M(a, b) = A(a, a0) × B(b0, b)`.
    pub fn representable_product(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        a0: usize,
        b0: usize,
    ) -> Result<Profunctor, Error> {
        let (a, b) = (&*source, &*target);
        let mut elements = Vec::new();
        let mut id = HashMap::new();
        for f in (0..a.morphism_count()).filter(|&f| a.target(f) == a0) {
            for g in (0..b.morphism_count()).filter(|&g| b.source(g) == b0) {
                id.insert((f, g), elements.len());
                elements.push(ProElement {
                    name: format!("<{}|{}>", a.morphism_name(f), b.morphism_name(g)),
                    a: a.source(f),
                    b: b.target(g),
                });
            }
        }
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (&(f, g), &x) in &id {
            for f2 in (0..a.morphism_count()).filter(|&h| a.target(h) == a.source(f)) {
                left.push((f2, x, id[&(a.compose(f, f2).unwrap(), g)]));
            }
            for g2 in (0..b.morphism_count()).filter(|&h| b.source(h) == b.target(g)) {
                right.push((g2, x, id[&(f, b.compose(g2, g).unwrap())]));
            }
        }
        left.sort();
        right.sort();
        Profunctor::new(source, target, elements, &left, &right)
    }

    /// A seeded random profunctor between random loop-free categories with at
    /// most `max_objects` objects each.
    pub fn random<R: Rng>(rng: &mut R, max_objects: usize) -> Profunctor {
        let a = Arc::new(FiniteCategory::random(rng, max_objects, "A"));
        let b = Arc::new(FiniteCategory::random(rng, max_objects, "B"));
        if rng.gen_bool(0.5) {
            let k = rng.gen_range(0..=2);
            let seeds: Vec<(usize, usize)> = (0..k)
                .map(|_| (rng.gen_range(0..a.object_count()), rng.gen_range(0..b.object_count())))
                .collect();
            Profunctor::from_relation(a, b, &seeds).expect("up-closed relation")
        } else {
            let a0 = rng.gen_range(0..a.object_count());
            let b0 = rng.gen_range(0..b.object_count());
            Profunctor::representable_product(a, b, a0, b0).expect("representable product")
        }
    }

    /// The collage: objects of `A`, then of `B` primed, with the elements
    /// of `M` as the morphisms from one side to the other.
    pub fn collage(&self) -> Result<FiniteCategory, Error> {
        let (a, b) = (&*self.source, &*self.target);
        let prime = |s: &str| format!("{s}'");
        let mut cb = CategoryBuilder::new(format!("coll({},{})", a.name(), b.name()));
        for o in 0..a.object_count() {
            cb.object_with_identity(a.object_name(o), a.morphism_name(a.identity(o)));
        }
        for o in 0..b.object_count() {
            cb.object_with_identity(prime(b.object_name(o)), prime(b.morphism_name(b.identity(o))));
        }
        for f in (0..a.morphism_count()).filter(|&f| !a.is_identity(f)) {
            cb.morphism(a.morphism_name(f), a.object_name(a.source(f)), a.object_name(a.target(f)));
        }
        for g in (0..b.morphism_count()).filter(|&g| !b.is_identity(g)) {
            cb.morphism(prime(b.morphism_name(g)), prime(b.object_name(b.source(g))), prime(b.object_name(b.target(g))));
        }
        for e in &self.elements {
            cb.morphism(e.name.clone(), a.object_name(e.a), prime(b.object_name(e.b)));
        }
        for f in (0..a.morphism_count()).filter(|&f| !a.is_identity(f)) {
            for g in (0..a.morphism_count()).filter(|&g| !a.is_identity(g)) {
                if let Some(h) = a.compose(g, f) {
                    cb.composite(a.morphism_name(f), a.morphism_name(g), a.morphism_name(h));
                }
            }
        }
        for f in (0..b.morphism_count()).filter(|&f| !b.is_identity(f)) {
            for g in (0..b.morphism_count()).filter(|&g| !b.is_identity(g)) {
                if let Some(h) = b.compose(g, f) {
                    cb.composite(prime(b.morphism_name(f)), prime(b.morphism_name(g)), prime(b.morphism_name(h)));
                }
            }
        }
        for (&(f, x), &y) in &self.act_a {
            if !a.is_identity(f) {
                cb.composite(a.morphism_name(f), self.elements[x].name.clone(), self.elements[y].name.clone());
            }
        }
        for (&(g, x), &y) in &self.act_b {
            if !b.is_identity(g) {
                cb.composite(self.elements[x].name.clone(), prime(b.morphism_name(g)), self.elements[y].name.clone());
            }
        }
        Ok(cb.build()?)
    }
}

/// The nerve of the collage over `Δ[1]`, with the nerves of `A` and `B` as
/// its fibres.
pub fn collage_nerve(m: &Profunctor, truncation: Option<usize>) -> Result<Cylinder, Error> {
    let c = m.collage()?;
    let total = nerve(&c, truncation)?;
    let na = nerve(&m.source, truncation)?;
    let nb = nerve(&m.target, truncation)?;
    let b_objects: Vec<String> = (0..m.target.object_count()).map(|o| m.target.object_name(o).to_string()).collect();
    let on_a = |v: usize| c.find_object(total.gen_name(v)).map(|o| o < m.source.object_count()).unwrap_or(false);
    let structure = total
        .all_generators()
        .map(|s| {
            let vs = total.vertices(s);
            let k = vs.iter().filter(|&&v| on_a(v)).count();
            if k == 0 {
                interval_simplex(s.dim(), None)
            } else {
                interval_simplex(s.dim(), Some(k - 1))
            }
        })
        .collect();
    let structure = SimplicialMap::new(total.clone(), standard::simplex(1), structure)?;
    let incl_a = SimplicialMap::by_names(&na, &total)?;
    let prime_chain = |x: &SimplicialSet, g: usize| -> String {
        let name = x.gen_name(g);
        if x.gen_dim(g) == 0 {
            debug_assert!(b_objects.iter().any(|o| o == name));
            format!("{name}'")
        } else {
            name.split(';').map(|f| format!("{f}'")).collect::<Vec<_>>().join(";")
        }
    };
    let images = (0..nb.generator_count())
        .map(|g| {
            let n = prime_chain(&nb, g);
            total
                .find(&n)
                .map(|t| total.gen_simplex(t))
                .ok_or_else(|| Error::Precondition(format!("collage nerve lacks `{n}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let incl_b = SimplicialMap::new(nb, total, images)?;
    Cylinder::new(structure, incl_a, incl_b)
}
