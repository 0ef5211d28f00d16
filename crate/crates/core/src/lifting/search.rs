//! Backtracking search for maps out of a finite simplicial set.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::delta::compose_surjection_masks;
use crate::map::SimplicialMap;
use crate::sset::{Simplex, SimplicialSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Stop,
}

/// All `n`-simplices of `X`, keyed by their faces and by their image in `Y`.
pub(crate) struct Level {
    pub by_faces: HashMap<Vec<Simplex>, Vec<Simplex>>,
    pub by_image: HashMap<Simplex, Vec<Simplex>>,
}

/// Lazily built per-level lookup tables for the simplices of the source of
/// `p : X -> Y`.
pub struct TargetIndex {
    p: SimplicialMap,
    levels: Mutex<HashMap<usize, Arc<Level>>>,
}

impl TargetIndex {
    pub fn new(p: &SimplicialMap) -> TargetIndex {
        TargetIndex {
            p: p.clone(),
            levels: Mutex::new(HashMap::new()),
        }
    }

    pub fn map(&self) -> &SimplicialMap {
        &self.p
    }

    pub(crate) fn level(&self, n: usize) -> Arc<Level> {
        if let Some(l) = self.levels.lock().unwrap().get(&n) {
            return l.clone();
        }
        let x = self.p.source();
        let mut by_faces: HashMap<Vec<Simplex>, Vec<Simplex>> = HashMap::new();
        let mut by_image: HashMap<Simplex, Vec<Simplex>> = HashMap::new();
        for s in x.simplices_at(n) {
            if n > 0 {
                let key = (0..=n).map(|i| x.face(s, i)).collect();
                by_faces.entry(key).or_default().push(s);
            }
            by_image.entry(self.p.apply(s)).or_default().push(s);
        }
        let level = Arc::new(Level { by_faces, by_image });
        self.levels.lock().unwrap().insert(n, level.clone());
        level
    }

    /// Simplices of `X` over `y`.
    pub(crate) fn over(&self, y: Simplex) -> Vec<Simplex> {
        self.level(y.dim()).by_image.get(&y).cloned().unwrap_or_default()
    }

    /// Simplices of `X` with the given faces lying over `y`.
    pub(crate) fn with_faces(&self, faces: &[Simplex], y: Simplex) -> Vec<Simplex> {
        let level = self.level(y.dim());
        match level.by_faces.get(faces) {
            Some(c) => c.iter().copied().filter(|&x| self.p.apply(x) == y).collect(),
            None => Vec::new(),
        }
    }
}

/// Image of `s` under a partial assignment of generators.
pub(crate) fn apply_partial(assigned: &[Option<Simplex>], s: Simplex) -> Option<Simplex> {
    let a = assigned[s.generator()]?;
    Some(Simplex::new(
        s.dim(),
        a.generator(),
        compose_surjection_masks(s.dim(), s.mask(), a.mask()),
    ))
}

/// Maps `B -> X` over a fixed `B -> Y` extending a fixed partial assignment.
/// Unassigned generators are decided vertex by vertex: each higher
/// generator right after the last of its vertices, so its faces are known.
pub(crate) struct Extension<'a> {
    b: &'a SimplicialSet,
    index: &'a TargetIndex,
    bottom: &'a [Simplex],
    assigned: Vec<Option<Simplex>>,
    order: Vec<usize>,
    pub nodes: u64,
    limit: u64,
    pub exhausted: bool,
}

impl<'a> Extension<'a> {
    pub fn new(
        b: &'a SimplicialSet,
        index: &'a TargetIndex,
        bottom: &'a [Simplex],
        fixed: Vec<Option<Simplex>>,
        limit: u64,
    ) -> Extension<'a> {
        let mut order: Vec<(usize, usize, usize)> = (0..b.generator_count())
            .filter(|&g| fixed[g].is_none())
            .map(|g| {
                let last = b.vertices(b.gen_simplex(g)).into_iter().max().unwrap_or(g);
                (last, b.gen_dim(g), g)
            })
            .collect();
        order.sort_unstable();
        Extension {
            b,
            index,
            bottom,
            assigned: fixed,
            order: order.into_iter().map(|t| t.2).collect(),
            nodes: 0,
            limit,
            exhausted: false,
        }
    }

    pub fn run(&mut self, visit: &mut dyn FnMut(&[Option<Simplex>]) -> Flow) -> Flow {
        self.step(0, visit)
    }

    /// The first extension, if any.
    pub fn first(&mut self) -> Option<Vec<Simplex>> {
        let mut found = None;
        self.run(&mut |a| {
            found = Some(a.iter().map(|s| s.unwrap()).collect());
            Flow::Stop
        });
        found
    }

    fn step(&mut self, pos: usize, visit: &mut dyn FnMut(&[Option<Simplex>]) -> Flow) -> Flow {
        if pos == self.order.len() {
            return visit(&self.assigned);
        }
        let g = self.order[pos];
        let y = self.bottom[g];
        let cands = if self.b.gen_dim(g) == 0 {
            self.index.over(y)
        } else {
            let faces: Vec<Simplex> = self
                .b
                .faces_of(g)
                .iter()
                .map(|&f| apply_partial(&self.assigned, f).expect("faces decided first"))
                .collect();
            self.index.with_faces(&faces, y)
        };
        for c in cands {
            self.nodes += 1;
            if self.nodes > self.limit {
                self.exhausted = true;
                return Flow::Stop;
            }
            self.assigned[g] = Some(c);
            if self.step(pos + 1, visit) == Flow::Stop {
                self.assigned[g] = None;
                return Flow::Stop;
            }
        }
        self.assigned[g] = None;
        Flow::Continue
    }
}
