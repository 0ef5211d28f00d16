//! Cylinders as presheaves on `Δ/A × Δ/B`: the value at `(α, β)` is the set
//! of simplices of the total object lying over `α ⋆ β`.

use std::collections::HashMap;

use super::{interval_simplex, split_point, Cylinder};
use crate::delta::MonotoneMap;
use crate::error::Error;
use crate::join::Join;
use crate::levelwise::build_levelwise;
use crate::map::SimplicialMap;
use crate::sset::{Simplex, SimplicialSet};

/// A face of a mixed element: it may fall into either end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    A(Simplex),
    B(Simplex),
    M(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub alpha: Simplex,
    pub beta: Simplex,
    pub label: String,
}

impl Element {
    pub fn dim(&self) -> usize {
        self.alpha.dim() + 1 + self.beta.dim()
    }
}

/// Values at every `(α, β)` with `dim α + 1 + dim β <= bound`, with the
/// restriction maps given by faces and degeneracies of the joined index.
#[derive(Clone, Debug)]
pub struct CylinderPresheaf {
    pub a: SimplicialSet,
    pub b: SimplicialSet,
    pub bound: usize,
    pub elements: Vec<Element>,
    faces: Vec<Vec<Cell>>,
    /// empty at the top level
    degeneracies: Vec<Vec<usize>>,
    index: HashMap<(Simplex, Simplex), Vec<usize>>,
    names_a: Vec<String>,
    names_b: Vec<String>,
}

impl CylinderPresheaf {
    /// Assembles a presheaf from explicit tables, checking the simplicial
    /// identities and that every face lies over the matching face of the
    /// index.
    #[allow(clippy::too_many_arguments)]
    pub fn from_tables(
        a: SimplicialSet,
        b: SimplicialSet,
        bound: usize,
        elements: Vec<Element>,
        faces: Vec<Vec<Cell>>,
        degeneracies: Vec<Vec<usize>>,
        names_a: Vec<String>,
        names_b: Vec<String>,
    ) -> Result<CylinderPresheaf, Error> {
        if faces.len() != elements.len() || degeneracies.len() != elements.len() {
            return Err(Error::Invalid("restriction tables do not match the elements".into()));
        }
        let mut index: HashMap<(Simplex, Simplex), Vec<usize>> = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if e.dim() > bound {
                return Err(Error::Invalid(format!("element `{}` above the bound", e.label)));
            }
            if faces[i].len() != e.dim() + 1 {
                return Err(Error::Invalid(format!("element `{}` has the wrong number of faces", e.label)));
            }
            let want = if e.dim() < bound { e.dim() + 1 } else { 0 };
            if degeneracies[i].len() != want {
                return Err(Error::Invalid(format!("element `{}` has the wrong number of degeneracies", e.label)));
            }
            index.entry((e.alpha, e.beta)).or_default().push(i);
        }
        let p = CylinderPresheaf {
            a,
            b,
            bound,
            elements,
            faces,
            degeneracies,
            index,
            names_a,
            names_b,
        };
        p.check_identities()?;
        Ok(p)
    }

    pub fn value(&self, alpha: Simplex, beta: Simplex) -> &[usize] {
        self.index.get(&(alpha, beta)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Every index pair within the bound.
    pub fn index_pairs(&self) -> Vec<(Simplex, Simplex)> {
        let mut out = Vec::new();
        for m in 0..self.bound {
            for n in 0..self.bound - m {
                for alpha in self.a.simplices_at(m) {
                    for beta in self.b.simplices_at(n) {
                        out.push((alpha, beta));
                    }
                }
            }
        }
        out
    }

    /// Every value has exactly `k` elements.
    pub fn is_constant(&self, k: usize) -> bool {
        self.index_pairs().into_iter().all(|(a, b)| self.value(a, b).len() == k)
    }

    pub fn face(&self, e: usize, i: usize) -> Cell {
        self.faces[e][i]
    }

    pub fn degeneracy(&self, e: usize, i: usize) -> Option<usize> {
        self.degeneracies[e].get(i).copied()
    }

    fn cell_face(&self, c: Cell, i: usize) -> Cell {
        match c {
            Cell::A(s) => Cell::A(self.a.face(s, i)),
            Cell::B(s) => Cell::B(self.b.face(s, i)),
            Cell::M(e) => self.faces[e][i],
        }
    }

    fn cell_degeneracy(&self, c: Cell, i: usize) -> Option<Cell> {
        Some(match c {
            Cell::A(s) => Cell::A(self.a.degeneracy(s, i)),
            Cell::B(s) => Cell::B(self.b.degeneracy(s, i)),
            Cell::M(e) => Cell::M(self.degeneracy(e, i)?),
        })
    }

    /// The action of `(θ, φ)` on an element over `(α, β)`.
    pub fn restrict(&self, e: usize, theta: &MonotoneMap, phi: &MonotoneMap) -> Result<usize, Error> {
        let el = &self.elements[e];
        let (m, n) = (el.alpha.dim(), el.beta.dim());
        if theta.target_rank() != m || phi.target_rank() != n {
            return Err(Error::Precondition("operator does not match the index".into()));
        }
        if theta.source_rank() + 1 + phi.source_rank() > self.bound {
            return Err(Error::Precondition("restriction leaves the bound".into()));
        }
        let mut values: Vec<usize> = theta.values().to_vec();
        values.extend(phi.values().iter().map(|&v| v + m + 1));
        let op = MonotoneMap::new(m + 1 + n, values)?;
        let pair = op.epi_mono_factor();
        let mut cell = Cell::M(e);
        for &i in op.face_word().iter().rev() {
            cell = self.cell_face(cell, i);
        }
        let epi = pair.epi.values();
        for j in 0..pair.epi.source_rank() {
            if epi[j] == epi[j + 1] {
                cell = self.cell_degeneracy(cell, j).expect("within the bound");
            }
        }
        match cell {
            Cell::M(r) => Ok(r),
            _ => unreachable!("restrictions of mixed elements stay mixed"),
        }
    }

    /// Simplicial identities among the face and degeneracy tables, and
    /// compatibility of every face with the index.
    pub fn check_identities(&self) -> Result<(), Error> {
        let join = Join::new(&self.a, &self.b);
        let bad = |e: &Element, what: &str| Error::Invalid(format!("{what} fails at `{}`", e.label));
        for (id, e) in self.elements.iter().enumerate() {
            let d = e.dim();
            let over = join.simplex(Some(e.alpha), Some(e.beta));
            for i in 0..=d {
                let expected = join.split(join.object.face(over, i));
                let got = match self.faces[id][i] {
                    Cell::A(s) => (Some(s), None),
                    Cell::B(s) => (None, Some(s)),
                    Cell::M(f) => (Some(self.elements[f].alpha), Some(self.elements[f].beta)),
                };
                if expected != got {
                    return Err(bad(e, "face over the index"));
                }
            }
            for j in 1..=d {
                for i in 0..j {
                    if d < 2 {
                        break;
                    }
                    let lhs = self.cell_face(self.faces[id][j], i);
                    let rhs = self.cell_face(self.faces[id][i], j - 1);
                    if lhs != rhs {
                        return Err(bad(e, "d_i d_j = d_{j-1} d_i"));
                    }
                }
            }
            if d < self.bound {
                for i in 0..=d {
                    let s = Cell::M(self.degeneracies[id][i]);
                    for j in 0..=d + 1 {
                        let got = self.cell_face(s, j);
                        let want = if j == i || j == i + 1 {
                            Some(Cell::M(id))
                        } else if j < i {
                            self.cell_degeneracy(self.faces[id][j], i - 1)
                        } else {
                            self.cell_degeneracy(self.faces[id][j - 1], i)
                        };
                        if want.is_some() && want != Some(got) {
                            return Err(bad(e, "face of a degeneracy"));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// The presheaf of a cylinder, up to total dimension `bound`.
pub fn to_presheaf(x: &Cylinder, bound: usize) -> CylinderPresheaf {
    let total = &x.total;
    let join = x.join();
    let canonical = x.canonical(&join);
    let pre_a = x.incl_a.preimage_table();
    let pre_b = x.incl_b.preimage_table();
    let mut elements = Vec::new();
    let mut simplices = Vec::new();
    let mut id: HashMap<Simplex, usize> = HashMap::new();
    for d in 1..=bound {
        for s in total.simplices_at(d) {
            let k = split_point(x.structure.apply(s));
            if k.is_none() || k == Some(d) {
                continue;
            }
            let (alpha, beta) = join.split(canonical.apply(s));
            id.insert(s, elements.len());
            elements.push(Element {
                alpha: alpha.unwrap(),
                beta: beta.unwrap(),
                label: total.show(s),
            });
            simplices.push(s);
        }
    }
    let cell = |s: Simplex| -> Cell {
        if let Some(&e) = id.get(&s) {
            return Cell::M(e);
        }
        match pre_a[s.generator()] {
            Some(g) => Cell::A(Simplex::new(s.dim(), g, s.mask())),
            None => Cell::B(Simplex::new(s.dim(), pre_b[s.generator()].expect("in a fibre"), s.mask())),
        }
    };
    let faces = simplices.iter().map(|&s| (0..=s.dim()).map(|i| cell(total.face(s, i))).collect()).collect();
    let degeneracies = simplices
        .iter()
        .map(|&s| {
            if s.dim() < bound {
                (0..=s.dim()).map(|i| id[&total.degeneracy(s, i)]).collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    let names_a = x.incl_a.images().iter().map(|s| total.gen_name(s.generator()).to_string()).collect();
    let names_b = x.incl_b.images().iter().map(|s| total.gen_name(s.generator()).to_string()).collect();
    CylinderPresheaf::from_tables(x.a.clone(), x.b.clone(), bound, elements, faces, degeneracies, names_a, names_b)
        .expect("presheaf of a cylinder")
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Key {
    A(Simplex),
    B(Simplex),
    M(usize),
}

/// The cylinder of a presheaf; simplices above the bound are degenerate.
pub fn from_presheaf(p: &CylinderPresheaf, name: &str) -> Result<Cylinder, Error> {
    let mut levels: Vec<Vec<Key>> = vec![Vec::new(); p.bound + 1];
    for (n, level) in levels.iter_mut().enumerate() {
        level.extend(p.a.simplices_at(n).into_iter().map(Key::A));
        level.extend(p.b.simplices_at(n).into_iter().map(Key::B));
    }
    for (i, e) in p.elements.iter().enumerate() {
        levels[e.dim()].push(Key::M(i));
    }
    let to_key = |c: Cell| match c {
        Cell::A(s) => Key::A(s),
        Cell::B(s) => Key::B(s),
        Cell::M(e) => Key::M(e),
    };
    let face = |k: &Key, i: usize| match *k {
        Key::A(s) => Key::A(p.a.face(s, i)),
        Key::B(s) => Key::B(p.b.face(s, i)),
        Key::M(e) => to_key(p.face(e, i)),
    };
    let degeneracy = |k: &Key, i: usize| match *k {
        Key::A(s) => Key::A(p.a.degeneracy(s, i)),
        Key::B(s) => Key::B(p.b.degeneracy(s, i)),
        Key::M(e) => Key::M(p.degeneracy(e, i).expect("below the bound")),
    };
    let label = |k: &Key| match *k {
        Key::A(s) => p.names_a[s.generator()].clone(),
        Key::B(s) => p.names_b[s.generator()].clone(),
        Key::M(e) => p.elements[e].label.clone(),
    };
    let (total, table) = build_levelwise(name, &levels, face, degeneracy, label)?;
    let d1 = crate::standard::simplex(1);
    let mut structure = vec![Simplex::new(0, 0, 0); total.generator_count()];
    for (k, s) in &table {
        if s.is_degenerate() {
            continue;
        }
        let d = s.dim();
        structure[s.generator()] = match *k {
            Key::A(_) => d1.constant(0, d),
            Key::B(_) => d1.constant(1, d),
            Key::M(e) => interval_simplex(d, Some(p.elements[e].alpha.dim())),
        };
    }
    let structure = SimplicialMap::new(total.clone(), d1, structure)?;
    let incl_a = SimplicialMap::new(
        p.a.clone(),
        total.clone(),
        (0..p.a.generator_count()).map(|g| table[&Key::A(p.a.gen_simplex(g))]).collect(),
    )?;
    let incl_b = SimplicialMap::new(
        p.b.clone(),
        total.clone(),
        (0..p.b.generator_count()).map(|g| table[&Key::B(p.b.gen_simplex(g))]).collect(),
    )?;
    Cylinder::new(structure, incl_a, incl_b)
}

/// An isomorphism of cylinders matching generators by name, if there is one.
pub fn iso_by_names(x: &Cylinder, y: &Cylinder) -> Option<SimplicialMap> {
    let f = SimplicialMap::by_names(&x.total, &y.total).ok()?;
    (f.is_iso() && x.is_morphism_to(&f, y)).then_some(f)
}
