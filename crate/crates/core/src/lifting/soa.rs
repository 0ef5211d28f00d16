//! Small-object factorizations `u = right ∘ left`, with `left` a relative
//! cell complex over a family of monos.

use serde::{Deserialize, Serialize};

use crate::colimits::pushout_named;
use crate::error::Error;
use crate::map::SimplicialMap;
use crate::sset::SimplicialSet;

use super::{BudgetReport, Family, Member, RawSquare, RlpScan, TargetIndex, DEFAULT_NODE_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SoaStrategy {
    /// Each stage attaches one cell for every unsolved square at once.
    StageCoproduct,
    /// One cell at a time, highest dimension first, re-scanning after each
    /// attachment.
    Greedy,
}

#[derive(Clone, Debug)]
pub struct SoaOptions {
    pub family: Family,
    pub stage_budget: usize,
    pub dim_budget: usize,
    pub strategy: SoaStrategy,
    /// Bound on attached cells for the greedy strategy.
    pub cell_budget: usize,
    pub node_limit: u64,
}

impl SoaOptions {
    pub fn new(family: Family, dim_budget: usize) -> SoaOptions {
        SoaOptions {
            family,
            stage_budget: 3,
            dim_budget,
            strategy: SoaStrategy::StageCoproduct,
            cell_budget: 256,
            node_limit: DEFAULT_NODE_LIMIT,
        }
    }

    pub fn greedy(mut self) -> SoaOptions {
        self.strategy = SoaStrategy::Greedy;
        self
    }

    /// Default dimension budget for factoring `u`.
    pub fn default_dim_budget(u: &SimplicialMap) -> usize {
        u.source().dim_or_zero().max(u.target().dim_or_zero()) + 2
    }
}

/// One attached cell: the family member, its attaching map into the middle
/// object before attachment, and its image in the target.
#[derive(Clone, Debug)]
pub struct AttachedCell {
    pub stage: usize,
    pub member: Member,
    pub attaching: SimplicialMap,
    pub bottom: SimplicialMap,
    pub new_generators: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Factorization {
    pub map: SimplicialMap,
    pub middle: SimplicialSet,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    pub cells: Vec<AttachedCell>,
    pub stages: usize,
    /// No unsolved square remained within the dimension budget.
    pub saturated: bool,
    pub budget: BudgetReport,
    pub options: SoaOptions,
}

struct State {
    middle: SimplicialSet,
    left: SimplicialMap,
    right: SimplicialMap,
}

fn attach(state: &State, family: &Family, sq: &RawSquare, cell_no: usize) -> Result<(State, AttachedCell), Error> {
    let i = sq.member.inclusion(family);
    let top = SimplicialMap::new(i.source().clone(), state.middle.clone(), sq.top.clone())?;
    let bottom = SimplicialMap::new(i.target().clone(), state.right.target().clone(), sq.bottom.clone())?;
    attach_maps(state, &i, &top, &bottom, sq.member, cell_no, 0)
}

fn attach_maps(
    state: &State,
    i: &SimplicialMap,
    top: &SimplicialMap,
    bottom: &SimplicialMap,
    member: Member,
    cell_no: usize,
    stage: usize,
) -> Result<(State, AttachedCell), Error> {
    let l = i.target().clone();
    let namer = |g: usize| format!("{}#{}", l.gen_name(g), cell_no);
    let po = pushout_named(i, top, Some(&namer))?;
    let right = po.mediate(bottom, &state.right)?;
    let left = state.left.then(&po.inj_c)?;
    let mut hit = vec![false; po.object.generator_count()];
    for s in po.inj_c.images() {
        hit[s.generator()] = true;
    }
    let new_generators = (0..po.object.generator_count())
        .filter(|&g| !hit[g])
        .map(|g| po.object.gen_name(g).to_string())
        .collect();
    let cell = AttachedCell {
        stage,
        member,
        attaching: top.clone(),
        bottom: bottom.clone(),
        new_generators,
    };
    Ok((
        State {
            middle: po.object,
            left,
            right,
        },
        cell,
    ))
}

/// Factors `u : A -> Y` as a relative cell complex over the family
/// followed by a map that lifts against the family up to the dimension
/// budget, if the stage or cell budget allows.
pub fn soa_factor(u: &SimplicialMap, options: &SoaOptions) -> Result<Factorization, Error> {
    if options.stage_budget == 0 && options.strategy == SoaStrategy::StageCoproduct {
        return Err(Error::BadBudget("stage budget must be positive"));
    }
    let a = u.source().clone();
    let mut state = State {
        middle: a.clone(),
        left: SimplicialMap::identity(&a),
        right: u.clone(),
    };
    let family = &options.family;
    let mut members = family.members(options.dim_budget);
    let mut cells = Vec::new();
    let mut budget = BudgetReport::default();
    let mut saturated = false;
    let mut stages = 0;
    match options.strategy {
        SoaStrategy::StageCoproduct => {
            for stage in 1..=options.stage_budget {
                let index = TargetIndex::new(&state.right);
                let mut scan = RlpScan::new(&index, family, options.node_limit.saturating_sub(budget.nodes));
                let mut found = Vec::new();
                for &m in &members {
                    scan.scan_member(m, &mut |sq| {
                        found.push(sq);
                        super::Flow::Continue
                    });
                    if scan.exhausted {
                        break;
                    }
                }
                budget.absorb(&scan.budget);
                if scan.exhausted {
                    break;
                }
                if found.is_empty() {
                    saturated = true;
                    break;
                }
                stages = stage;
                // every top lands in the middle object at the start of the
                // stage, which keeps embedding into the growing one
                let start = state.middle.clone();
                let mut into_current = SimplicialMap::identity(&start);
                for sq in &found {
                    let i = sq.member.inclusion(family);
                    let top0 = SimplicialMap::new(i.source().clone(), start.clone(), sq.top.clone())?;
                    let top = top0.then(&into_current)?;
                    let bottom = SimplicialMap::new(i.target().clone(), u.target().clone(), sq.bottom.clone())?;
                    let (next, mut cell) = attach_maps(&state, &i, &top, &bottom, sq.member, cells.len() + 1, stage)?;
                    cell.stage = stage;
                    into_current = extend_inclusion(&into_current, &state, &next)?;
                    state = next;
                    cells.push(cell);
                }
            }
        }
        SoaStrategy::Greedy => {
            members.sort_by_key(|m| std::cmp::Reverse(m.dim(family)));
            // stable sort keeps horn indices ascending within a dimension
            loop {
                let index = TargetIndex::new(&state.right);
                let mut scan = RlpScan::new(&index, family, options.node_limit.saturating_sub(budget.nodes));
                let mut found = None;
                for &m in &members {
                    found = scan.first_unsolved(m);
                    if found.is_some() || scan.exhausted {
                        break;
                    }
                }
                budget.absorb(&scan.budget);
                if scan.exhausted {
                    break;
                }
                let Some(sq) = found else {
                    saturated = true;
                    break;
                };
                if cells.len() >= options.cell_budget {
                    break;
                }
                let (next, mut cell) = attach(&state, family, &sq, cells.len() + 1)?;
                stages += 1;
                cell.stage = stages;
                state = next;
                cells.push(cell);
            }
        }
    }
    budget.cells = cells.len() as u64;
    budget.stages = stages as u64;
    Ok(Factorization {
        map: u.clone(),
        middle: state.middle,
        left: state.left,
        right: state.right,
        cells,
        stages,
        saturated,
        budget,
        options: options.clone(),
    })
}

/// Given `M_s -> M_prev` and the attachment `M_prev -> M_next` (as the
/// change of `left`), the composite `M_s -> M_next`.
fn extend_inclusion(into_prev: &SimplicialMap, prev: &State, next: &State) -> Result<SimplicialMap, Error> {
    // the pushout injection is determined by the left maps on generators of
    // the previous middle object; recover it by names, which it preserves
    let inj = SimplicialMap::by_names(&prev.middle, &next.middle)?;
    Ok(into_prev.then(&inj)?)
}

impl Factorization {
    /// Re-attaches every recorded cell from the source of `map` and checks
    /// that the same middle object, left and right maps come out, and that
    /// `right ∘ left = map`.
    pub fn replay(&self) -> bool {
        let a = self.map.source().clone();
        let mut state = State {
            middle: a.clone(),
            left: SimplicialMap::identity(&a),
            right: self.map.clone(),
        };
        for (n, cell) in self.cells.iter().enumerate() {
            if cell.attaching.target() != &state.middle {
                return false;
            }
            let i = cell.member.inclusion(&self.options.family);
            let next = match attach_maps(&state, &i, &cell.attaching, &cell.bottom, cell.member, n + 1, cell.stage) {
                Ok((next, _)) => next,
                Err(_) => return false,
            };
            state = next;
        }
        state.middle == self.middle
            && state.left == self.left
            && state.right == self.right
            && self.right.after(&self.left).map(|m| m == self.map).unwrap_or(false)
    }
}
