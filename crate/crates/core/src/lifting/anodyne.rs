//! Certifying inner anodyne maps and weak categorical equivalences, and
//! refuting them against nerves of small categories.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::category::{nerve, FiniteCategory};
use crate::delta::Mask;
use crate::error::Error;
use crate::map::SimplicialMap;
use crate::ops::{face_closure, subcomplex};
use crate::sset::SimplicialSet;
use crate::standard;

use super::soa::{soa_factor, Factorization, SoaOptions};
use super::{
    all_maps, has_rlp, solve_lift, Certificate, Family, LiftingProblem, RetractCertificate, Status, Verdict, Witness,
    DEFAULT_NODE_LIMIT,
};

#[derive(Clone, Debug)]
pub struct LibraryEntry {
    pub label: String,
    pub nerve: SimplicialSet,
    /// The category has no non-identity isomorphisms.
    pub iso_free: bool,
}

/// Nerves of small loop-free categories used to refute anodyne and
/// equivalence claims.
#[derive(Clone, Debug)]
pub struct NerveLibrary {
    pub entries: Vec<LibraryEntry>,
}

impl NerveLibrary {
    pub fn standard() -> NerveLibrary {
        let mut lib = NerveLibrary { entries: Vec::new() };
        let cats = [
            FiniteCategory::discrete(&["a"]).renamed("point"),
            FiniteCategory::discrete(&["a", "b"]).renamed("{a,b}"),
            FiniteCategory::ordinal(1).renamed("[1]"),
            FiniteCategory::ordinal(2).renamed("[2]"),
            FiniteCategory::parallel_pair(),
            FiniteCategory::from_relations("span", &["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap(),
            FiniteCategory::from_relations("cospan", &["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap(),
        ];
        for c in &cats {
            lib.register(c).expect("loop-free");
        }
        lib
    }

    /// Adds the nerve of a loop-free category.
    pub fn register(&mut self, c: &FiniteCategory) -> Result<(), Error> {
        let n = nerve(c, None)?;
        let iso_free = (0..c.morphism_count()).all(|f| c.is_identity(f) || !c.is_isomorphism(f));
        self.entries.push(LibraryEntry {
            label: c.name().to_string(),
            nerve: n,
            iso_free,
        });
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct AnodyneOptions {
    pub dim_budget: Option<usize>,
    pub cell_budget: usize,
    pub node_limit: u64,
    pub library: NerveLibrary,
}

impl Default for AnodyneOptions {
    fn default() -> Self {
        AnodyneOptions {
            dim_budget: None,
            cell_budget: 256,
            node_limit: DEFAULT_NODE_LIMIT,
            library: NerveLibrary::standard(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AnodyneReport {
    pub verdict: Verdict,
    pub factorization: Option<Factorization>,
}

/// For a mono `u : A -> B` missing vertices of `B`: the full sub-simplicial
/// set on the hit vertices is an inner fibration over `B` with no section.
fn vertex_refutation(u: &SimplicialMap) -> Option<Witness> {
    let b = u.target();
    let mut hit = vec![false; b.generator_count()];
    for s in u.images() {
        for v in u.target().vertices(*s) {
            hit[v] = true;
        }
    }
    if b.generator_range(0).all(|v| hit[v]) {
        return None;
    }
    let keep: Vec<bool> = (0..b.generator_count())
        .map(|g| b.vertices(b.gen_simplex(g)).iter().all(|&v| hit[v]))
        .collect();
    let (_, incl) = subcomplex(b, &keep, format!("{}|im", b.name())).ok()?;
    let top = crate::ops::factor_through_mono(u, &incl)?;
    let square = LiftingProblem::new(u.clone(), incl.clone(), top, SimplicialMap::identity(b)).ok()?;
    Some(Witness::Refutation {
        fibration: incl,
        square: Box::new(square),
        label: "full sub-simplicial set on the image vertices".into(),
    })
}

/// Searches the library for a map `A -> N(C)` with no extension along the
/// mono `u`.
pub fn refute_mono(u: &SimplicialMap, options: &AnodyneOptions) -> Option<Witness> {
    if let Some(w) = vertex_refutation(u) {
        return Some(w);
    }
    let pt = standard::point();
    let (a, b) = (u.source(), u.target());
    for entry in &options.library.entries {
        let to_pt = SimplicialMap::to_point(&entry.nerve, &pt);
        let Some(maps) = all_maps(a, &entry.nerve, options.node_limit) else { continue };
        let bottom = SimplicialMap::to_point(b, &pt);
        for t in maps {
            let problem = LiftingProblem::new(u.clone(), to_pt.clone(), t, bottom.clone()).expect("square over a point");
            if solve_lift(&problem, options.node_limit).status == Status::No {
                return Some(Witness::Refutation {
                    fibration: to_pt,
                    square: Box::new(problem),
                    label: format!("N({})", entry.label),
                });
            }
        }
    }
    None
}

/// For iso-free `C`, a weak categorical equivalence induces a bijection
/// `Hom(B, N(C)) -> Hom(A, N(C))`; looks for a library entry where it
/// fails.
pub fn refute_equivalence(u: &SimplicialMap, options: &AnodyneOptions) -> Option<Witness> {
    if u.is_mono() {
        if let Some(w) = vertex_refutation(u) {
            return Some(w);
        }
    }
    let (a, b) = (u.source(), u.target());
    for entry in options.library.entries.iter().filter(|e| e.iso_free) {
        let (Some(from_b), Some(from_a)) = (
            all_maps(b, &entry.nerve, options.node_limit),
            all_maps(a, &entry.nerve, options.node_limit),
        ) else {
            continue;
        };
        let mut hits: HashMap<Vec<crate::sset::Simplex>, usize> = HashMap::new();
        for m in &from_b {
            let r = m.after(u).expect("composable");
            *hits.entry(r.images().to_vec()).or_default() += 1;
        }
        if let Some(t) = from_a.iter().find(|t| !hits.contains_key(t.images())) {
            if u.is_mono() {
                let pt = standard::point();
                let to_pt = SimplicialMap::to_point(&entry.nerve, &pt);
                let problem =
                    LiftingProblem::new(u.clone(), to_pt.clone(), t.clone(), SimplicialMap::to_point(b, &pt)).ok()?;
                return Some(Witness::Refutation {
                    fibration: to_pt,
                    square: Box::new(problem),
                    label: format!("N({})", entry.label),
                });
            }
            return Some(Witness::Note(format!(
                "a map {} -> N({}) does not extend along the map",
                a.name(),
                entry.label
            )));
        }
        if hits.values().any(|&c| c > 1) {
            return Some(Witness::Note(format!(
                "two maps {} -> N({}) have the same restriction to {}",
                b.name(),
                entry.label,
                a.name()
            )));
        }
    }
    None
}

fn factor(u: &SimplicialMap, options: &AnodyneOptions) -> Result<Factorization, Error> {
    let dim_budget = options.dim_budget.unwrap_or_else(|| SoaOptions::default_dim_budget(u));
    let mut soa = SoaOptions::new(Family::InnerHorns, dim_budget).greedy();
    soa.cell_budget = options.cell_budget;
    soa.node_limit = options.node_limit;
    soa_factor(u, &soa)
}

/// `u` as a retract of the left part of its factorization, via a section
/// of the right part.
fn retract_from(u: &SimplicialMap, fact: &Factorization, options: &AnodyneOptions) -> Option<RetractCertificate> {
    let problem = LiftingProblem::new(
        u.clone(),
        fact.right.clone(),
        fact.left.clone(),
        SimplicialMap::identity(u.target()),
    )
    .ok()?;
    let v = solve_lift(&problem, options.node_limit);
    let Some(Witness::Diagonal(section)) = v.witness else { return None };
    let cert = RetractCertificate {
        map: u.clone(),
        cell: fact.left.clone(),
        section,
        retraction: fact.right.clone(),
    };
    cert.check().then_some(cert)
}

/// Decides whether a mono is inner anodyne: refutation against the nerve
/// library first, then a retract of a greedy inner-horn cell complex.
pub fn certify_inner_anodyne(u: &SimplicialMap, options: &AnodyneOptions) -> Result<AnodyneReport, Error> {
    if !u.is_mono() {
        return Err(Error::NotMono);
    }
    if let Some(w) = refute_mono(u, options) {
        return Ok(AnodyneReport {
            verdict: Verdict::no(w),
            factorization: None,
        });
    }
    let fact = factor(u, options)?;
    let mut verdict = match retract_from(u, &fact, options) {
        Some(cert) => Verdict::certified(Certificate::Retract(Box::new(cert))),
        None => Verdict::exhausted(format!(
            "no section of the right part after {} cells{}",
            fact.cells.len(),
            if fact.saturated { "" } else { " (not saturated)" }
        )),
    };
    verdict.budget = fact.budget.clone();
    Ok(AnodyneReport {
        verdict,
        factorization: Some(fact),
    })
}

/// Decides whether `u` is a weak categorical equivalence: refutation by
/// iso-free nerves, then a factorization whose right part is checked to be
/// a trivial fibration up to the dimension budget.
pub fn is_absolute_wce(u: &SimplicialMap, options: &AnodyneOptions) -> Result<AnodyneReport, Error> {
    if let Some(w) = refute_equivalence(u, options) {
        return Ok(AnodyneReport {
            verdict: Verdict::no(w),
            factorization: None,
        });
    }
    let fact = factor(u, options)?;
    if u.is_mono() {
        if let Some(cert) = retract_from(u, &fact, options) {
            let verdict = Verdict::certified(Certificate::Retract(Box::new(cert))).with_budget(fact.budget.clone());
            return Ok(AnodyneReport {
                verdict,
                factorization: Some(fact),
            });
        }
    }
    let dim_budget = fact.options.dim_budget;
    let triv = has_rlp(&fact.right, &Family::Boundaries, dim_budget, options.node_limit);
    let mut verdict = match triv.status {
        Status::YesCertified | Status::YesBounded => Verdict::bounded(dim_budget)
            .with_note("right part of the inner-horn factorization is a trivial fibration up to the bound"),
        _ => Verdict::exhausted("right part of the factorization is not a trivial fibration within budget"),
    };
    verdict.budget = fact.budget.clone();
    verdict.budget.absorb(&triv.budget);
    Ok(AnodyneReport {
        verdict,
        factorization: Some(fact),
    })
}

#[derive(Clone, Debug)]
pub struct RightCancellation {
    pub u: Verdict,
    pub vu: Verdict,
    pub v: Verdict,
}

impl RightCancellation {
    /// `u` and `vu` certified while `v` is refuted.
    pub fn contradiction(&self) -> bool {
        self.u.status == Status::YesCertified
            && self.vu.status == Status::YesCertified
            && self.v.status == Status::No
    }
}

/// Certifies `u`, `v ∘ u` and `v` for composable monos.
pub fn right_cancellation_check(
    u: &SimplicialMap,
    v: &SimplicialMap,
    options: &AnodyneOptions,
) -> Result<RightCancellation, Error> {
    let vu = u.then(v)?;
    Ok(RightCancellation {
        u: certify_inner_anodyne(u, options)?.verdict,
        vu: certify_inner_anodyne(&vu, options)?.verdict,
        v: certify_inner_anodyne(v, options)?.verdict,
    })
}

/// Sub-simplicial sets of `Δ[n]` grown from the spine by elementary inner
/// expansions (adding a simplex together with its one missing inner face),
/// chosen by a seeded generator. Returns the whole chain of vertex-subset
/// sets, spine first.
pub fn inner_expansion_chain(n: usize, seed: u64) -> Vec<HashSet<Mask>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full: Mask = ((1u64 << (n + 1)) - 1) as Mask;
    let mut k: HashSet<Mask> = (0..=n).map(|j| 1 << j).collect();
    for j in 0..n {
        k.insert((1 << j) | (1 << (j + 1)));
    }
    let mut chain = vec![k.clone()];
    loop {
        let mut moves = Vec::new();
        for sigma in 1..=full {
            if sigma.count_ones() < 3 || k.contains(&sigma) {
                continue;
            }
            let verts: Vec<usize> = (0..=n).filter(|&j| sigma & (1 << j) != 0).collect();
            let d = verts.len() - 1;
            for pos in 1..d {
                let tau = sigma & !(1 << verts[pos]);
                if k.contains(&tau) {
                    continue;
                }
                let others = (0..=d).filter(|&q| q != pos).all(|q| k.contains(&(sigma & !(1 << verts[q]))));
                if others {
                    moves.push((sigma, tau));
                }
            }
        }
        let Some(&(sigma, tau)) = moves.choose(&mut rng) else { break };
        k.insert(sigma);
        k.insert(tau);
        chain.push(k.clone());
    }
    chain
}

/// The sub-simplicial set of `Δ[n]` on a set of vertex subsets.
pub fn simplex_subcomplex(name: &str, n: usize, keep: &HashSet<Mask>) -> SimplicialSet {
    standard::subcomplex_of_simplex(name, n, |m| keep.contains(&m))
}

/// A seeded composable pair `A -> B -> C` of inner expansions inside `Δ[n]`.
pub fn seeded_inner_pair(n: usize, seed: u64) -> Option<(SimplicialMap, SimplicialMap)> {
    let chain = inner_expansion_chain(n, seed);
    if chain.len() < 3 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut cuts: Vec<usize> = (0..chain.len()).collect();
    cuts.shuffle(&mut rng);
    let mut picked = cuts[..3].to_vec();
    picked.sort_unstable();
    let a = simplex_subcomplex("A", n, &chain[picked[0]]);
    let b = simplex_subcomplex("B", n, &chain[picked[1]]);
    let c = simplex_subcomplex("C", n, &chain[picked[2]]);
    Some((standard::inclusion(&a, &b), standard::inclusion(&b, &c)))
}

/// Closure helper for callers building subcomplexes by generator seeds.
pub fn closed_subcomplex(x: &SimplicialSet, seeds: &[usize], name: &str) -> (SimplicialSet, SimplicialMap) {
    subcomplex(x, &face_closure(x, seeds), name).expect("closed under faces")
}
