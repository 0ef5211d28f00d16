//! Four-valued verdicts, lifting squares and the certificates behind them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::category::{recognize_nerve, FiniteCategory};
use crate::error::Error;
use crate::map::SimplicialMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    YesCertified,
    YesBounded,
    No,
    Exhausted,
}

impl Status {
    pub fn is_yes(self) -> bool {
        matches!(self, Status::YesCertified | Status::YesBounded)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::YesCertified => "YES_CERTIFIED",
            Status::YesBounded => "YES_BOUNDED",
            Status::No => "NO",
            Status::Exhausted => "EXHAUSTED",
        }
    }

    /// Conjunction: any NO wins, then any EXHAUSTED, and the result is
    /// certified only when every part is.
    pub fn and(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (No, _) | (_, No) => No,
            (Exhausted, _) | (_, Exhausted) => Exhausted,
            (YesCertified, YesCertified) => YesCertified,
            _ => YesBounded,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// True when the decided statuses do not contain both a YES and a NO.
pub fn agree(statuses: &[Status]) -> bool {
    let yes = statuses.iter().any(|s| s.is_yes());
    let no = statuses.iter().any(|&s| s == Status::No);
    !(yes && no)
}

/// A commutative square with a mono on the left:
///
/// ```text
///   A --top--> X
///   |          |
///  left      right
///   v          v
///   B -bottom-> Y
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingProblem {
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    pub top: SimplicialMap,
    pub bottom: SimplicialMap,
}

impl LiftingProblem {
    pub fn new(
        left: SimplicialMap,
        right: SimplicialMap,
        top: SimplicialMap,
        bottom: SimplicialMap,
    ) -> Result<LiftingProblem, Error> {
        if !left.is_mono() {
            return Err(Error::NotMono);
        }
        if top.source() != left.source()
            || bottom.source() != left.target()
            || top.target() != right.source()
            || bottom.target() != right.target()
        {
            return Err(Error::Precondition("square objects do not match".into()));
        }
        let a = left.source();
        for s in a.all_generators() {
            if right.apply(top.apply(s)) != bottom.apply(left.apply(s)) {
                return Err(Error::NonCommutingSquare(a.gen_name(s.generator()).to_string()));
            }
        }
        Ok(LiftingProblem {
            left,
            right,
            top,
            bottom,
        })
    }

    /// Both triangles commute for `diagonal : B -> X`.
    pub fn check_diagonal(&self, diagonal: &SimplicialMap) -> bool {
        diagonal.source() == self.left.target()
            && diagonal.target() == self.right.source()
            && diagonal.after(&self.left).map(|m| m == self.top).unwrap_or(false)
            && self.right.after(diagonal).map(|m| m == self.bottom).unwrap_or(false)
    }
}

/// `u` is a retract of `cell : A -> M` in the arrow category, via
/// `section : B -> M` and `retraction : M -> B`.
#[derive(Clone, Debug)]
pub struct RetractCertificate {
    pub map: SimplicialMap,
    pub cell: SimplicialMap,
    pub section: SimplicialMap,
    pub retraction: SimplicialMap,
}

impl RetractCertificate {
    /// Checks `retraction ∘ section = id`, `section ∘ u = cell` and
    /// `retraction ∘ cell = u` by composition.
    pub fn check(&self) -> bool {
        let b = self.map.target();
        let rs = match self.retraction.after(&self.section) {
            Ok(m) => m,
            Err(_) => return false,
        };
        rs.is_identity()
            && rs.source() == b
            && self.section.after(&self.map).map(|m| m == self.cell).unwrap_or(false)
            && self.retraction.after(&self.cell).map(|m| m == self.map).unwrap_or(false)
    }
}

/// Structural reasons for a YES that do not depend on a dimension bound.
#[derive(Clone, Debug)]
pub enum Certificate {
    /// The map is an isomorphism.
    Isomorphism,
    /// Source and target are nerves of finite categories; the map is the
    /// nerve of a functor and fills inner horns uniquely.
    NerveOfFunctor {
        source: FiniteCategory,
        target: FiniteCategory,
    },
    /// The map is a mono onto a sub-simplicial set containing every simplex
    /// whose vertices it contains; it lifts against monos that are
    /// bijective on vertices.
    VertexFullMono,
    /// The map is a retract of a relative cell complex over the family.
    Retract(Box<RetractCertificate>),
    /// Source and target are nerves and the map is the nerve of a fully
    /// faithful, essentially surjective functor.
    CategoryEquivalence,
    /// The map is a mono and every target simplex whose vertices lie in the
    /// image of one connected component lies in that image; inner horns are
    /// connected and contain every vertex, so they lift.
    ComponentwiseFullMono,
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::Isomorphism => "isomorphism",
            Certificate::NerveOfFunctor { .. } => "nerve_of_functor",
            Certificate::VertexFullMono => "vertex_full_mono",
            Certificate::Retract(_) => "retract",
            Certificate::CategoryEquivalence => "category_equivalence",
            Certificate::ComponentwiseFullMono => "componentwise_full_mono",
        }
    }

    /// Re-derives the certificate for `p` from scratch.
    pub fn replay(&self, p: &SimplicialMap) -> bool {
        match self {
            Certificate::Isomorphism => p.is_iso(),
            Certificate::NerveOfFunctor { .. } => {
                recognize_nerve(p.source()).is_some() && recognize_nerve(p.target()).is_some()
            }
            Certificate::VertexFullMono => is_vertex_full_mono(p),
            Certificate::Retract(r) => &r.map == p && r.check(),
            Certificate::CategoryEquivalence => crate::fib::nerve_functor(p)
                .map(|f| f.is_fully_faithful() && f.is_essentially_surjective())
                .unwrap_or(false),
            Certificate::ComponentwiseFullMono => is_componentwise_full_mono(p),
        }
    }
}

/// Mono whose image contains every target simplex with all vertices in it.
pub fn is_vertex_full_mono(p: &SimplicialMap) -> bool {
    if !p.is_mono() {
        return false;
    }
    let y = p.target();
    let mut in_image = vec![false; y.generator_count()];
    for s in p.images() {
        in_image[s.generator()] = true;
    }
    (0..y.generator_count()).all(|g| {
        in_image[g] || y.vertices(y.gen_simplex(g)).iter().any(|&v| !in_image[v])
    })
}

/// Mono such that every target simplex with all vertices in the image of a
/// single component of the source lies in the image.
pub fn is_componentwise_full_mono(p: &SimplicialMap) -> bool {
    if !p.is_mono() {
        return false;
    }
    let (x, y) = (p.source(), p.target());
    let mut parent: Vec<usize> = (0..x.generator_count()).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for g in x.all_generators() {
        let vs = x.vertices(g);
        for w in &vs[1..] {
            let (r1, r2) = (find(&mut parent, vs[0]), find(&mut parent, *w));
            parent[r1] = r2;
        }
    }
    // component of each target vertex in the image
    let mut comp = vec![None; y.generator_count()];
    let mut in_image = vec![false; y.generator_count()];
    for (g, s) in p.images().iter().enumerate() {
        in_image[s.generator()] = true;
        if x.gen_dim(g) == 0 {
            comp[s.generator()] = Some(find(&mut parent, g));
        }
    }
    (0..y.generator_count()).all(|g| {
        if in_image[g] {
            return true;
        }
        let cs: Vec<Option<usize>> = y.vertices(y.gen_simplex(g)).iter().map(|&v| comp[v]).collect();
        cs.iter().any(|c| c.is_none()) || cs.windows(2).any(|w| w[0] != w[1])
    })
}

#[derive(Clone, Debug)]
pub enum Witness {
    /// A diagonal filler.
    Diagonal(SimplicialMap),
    /// A square without a diagonal.
    Counterexample(Box<LiftingProblem>),
    /// An inner fibration together with a square against it that has no
    /// diagonal.
    Refutation {
        fibration: SimplicialMap,
        square: Box<LiftingProblem>,
        label: String,
    },
    Certificate(Certificate),
    /// Free-form evidence, e.g. a homotopy-category obstruction.
    Note(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetReport {
    pub squares: u64,
    pub nodes: u64,
    pub cells: u64,
    pub stages: u64,
    pub max_dim: usize,
}

impl BudgetReport {
    pub fn absorb(&mut self, other: &BudgetReport) {
        self.squares += other.squares;
        self.nodes += other.nodes;
        self.cells += other.cells;
        self.stages += other.stages;
        self.max_dim = self.max_dim.max(other.max_dim);
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub status: Status,
    pub cutoff: Option<usize>,
    pub witness: Option<Witness>,
    pub budget: BudgetReport,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn new(status: Status) -> Verdict {
        Verdict {
            status,
            cutoff: None,
            witness: None,
            budget: BudgetReport::default(),
            notes: Vec::new(),
        }
    }

    pub fn certified(cert: Certificate) -> Verdict {
        Verdict::new(Status::YesCertified).with_witness(Witness::Certificate(cert))
    }

    pub fn bounded(cutoff: usize) -> Verdict {
        let mut v = Verdict::new(Status::YesBounded);
        v.cutoff = Some(cutoff);
        v
    }

    pub fn no(witness: Witness) -> Verdict {
        Verdict::new(Status::No).with_witness(witness)
    }

    pub fn exhausted(note: impl Into<String>) -> Verdict {
        let mut v = Verdict::new(Status::Exhausted);
        v.notes.push(note.into());
        v
    }

    pub fn with_witness(mut self, w: Witness) -> Verdict {
        self.witness = Some(w);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Verdict {
        self.notes.push(note.into());
        self
    }

    pub fn with_budget(mut self, b: BudgetReport) -> Verdict {
        self.budget = b;
        self
    }

    /// Conjunction keeping the witness of the deciding part.
    pub fn and(self, other: Verdict) -> Verdict {
        let status = self.status.and(other.status);
        let mut budget = self.budget.clone();
        budget.absorb(&other.budget);
        let cutoff = match (self.cutoff, other.cutoff) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let pick_other = other.status == status && self.status != status;
        let (mut base, rest) = if pick_other { (other, self) } else { (self, other) };
        base.notes.extend(rest.notes);
        base.status = status;
        base.budget = budget;
        base.cutoff = if status == Status::YesBounded { cutoff } else { base.cutoff };
        if status == Status::YesBounded && base.cutoff.is_none() {
            base.cutoff = cutoff;
        }
        base
    }
}
