//! Fibrancy conditions on cylinders, checked through divisions by simplices
//! of the ends.

use super::division::{divide, weight_map, Side};
use super::Cylinder;
use crate::colimits::classifying_map;
use crate::error::Error;
use crate::fib::{classify_fibration, FibrationKind};
use crate::lifting::{agree, Status, Verdict};
use crate::map::SimplicialMap;
use crate::standard;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReedyCondition {
    /// `b_m\X` is a left fibration for every simplex `α` of `A`
    VertLeftFibrant,
    /// `X/b_n` is a right fibration for every simplex `β` of `B`
    HorizRightFibrant,
    /// `i_m\X` is a trivial fibration for every `m >= 1` and `α`
    VertRightLocal,
}

impl ReedyCondition {
    pub fn parse(s: &str) -> Option<ReedyCondition> {
        Some(match s {
            "vert-left-fibrant" | "vert_left_fibrant" => ReedyCondition::VertLeftFibrant,
            "horiz-right-fibrant" | "horiz_right_fibrant" => ReedyCondition::HorizRightFibrant,
            "vert-right-local" | "vert_right_local" => ReedyCondition::VertRightLocal,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            ReedyCondition::VertLeftFibrant => "vert_left_fibrant",
            ReedyCondition::HorizRightFibrant => "horiz_right_fibrant",
            ReedyCondition::VertRightLocal => "vert_right_local",
        }
    }
}

/// `u\X : (Δ[m], α)\X -> (K, α u)\X` (or the right-hand version) for a
/// mono `u : K -> Δ[m]`.
fn division_along(side: Side, u: &SimplicialMap, alpha: &SimplicialMap, x: &Cylinder, max_dim: usize) -> Result<SimplicialMap, Error> {
    let big = divide(side, alpha, x, max_dim)?;
    let small = divide(side, &u.then(alpha)?, x, max_dim)?;
    weight_map(u, &big, &small)
}

fn conjunction(parts: impl IntoIterator<Item = Result<Verdict, Error>>) -> Verdict {
    let mut acc = Verdict::new(Status::YesCertified);
    for v in parts {
        let v = match v {
            Ok(v) => v,
            Err(Error::SizeLimit(what)) => Verdict::exhausted(format!("size limit: {what}")),
            Err(e) => Verdict::exhausted(e.to_string()),
        };
        let stop = v.status == Status::No;
        acc = acc.and(v);
        if stop {
            break;
        }
    }
    acc
}

/// One fibrancy condition, over the nondegenerate simplices of the relevant
/// end, with divisions truncated at `max_dim`.
pub fn check_reedy_local(x: &Cylinder, which: ReedyCondition, max_dim: usize) -> Verdict {
    match which {
        ReedyCondition::VertLeftFibrant | ReedyCondition::HorizRightFibrant => {
            let (side, end, kind) = match which {
                ReedyCondition::VertLeftFibrant => (Side::Left, &x.a, FibrationKind::Left),
                _ => (Side::Right, &x.b, FibrationKind::Right),
            };
            conjunction(end.all_generators().map(|s| {
                let alpha = classifying_map(end, s);
                let u = standard::boundary_inclusion(s.dim());
                let map = division_along(side, &u, &alpha, x, max_dim)?;
                let v = classify_fibration(&map, kind, max_dim);
                Ok(tag(v, end.gen_name(s.generator()), which))
            }))
        }
        ReedyCondition::VertRightLocal => {
            let left = check_reedy_local(x, ReedyCondition::VertLeftFibrant, max_dim);
            if left.status == Status::No {
                return Verdict::exhausted("not vertically Reedy left fibrant; locality is only decided in trivial-fibration form");
            }
            conjunction(x.a.all_generators().filter(|s| s.dim() >= 1).map(|s| {
                let alpha = classifying_map(&x.a, s);
                let u = standard::vertex_inclusion(s.dim(), s.dim());
                let map = division_along(Side::Left, &u, &alpha, x, max_dim)?;
                let v = classify_fibration(&map, FibrationKind::Trivial, max_dim);
                Ok(tag(v, x.a.gen_name(s.generator()), which))
            }))
        }
    }
}

fn tag(v: Verdict, simplex: &str, which: ReedyCondition) -> Verdict {
    if v.status == Status::No {
        v.with_note(format!("{} fails at `{simplex}`", which.name()))
    } else {
        v
    }
}

/// Is `X -> A ⋆ B` an inner fibration?
pub fn is_ambifibrant(x: &Cylinder, max_dim: usize) -> Verdict {
    let ab = x.join();
    classify_fibration(&x.canonical(&ab), FibrationKind::Inner, max_dim)
}

#[derive(Clone, Debug)]
pub struct TfaeReport {
    /// ambifibrant
    pub inner: Verdict,
    pub vert_left: Verdict,
    pub horiz_right: Verdict,
    pub vert_local: Verdict,
    /// vertically left fibrant and horizontally right fibrant
    pub reedy: Verdict,
    /// vertically left fibrant and vertically right local
    pub local: Verdict,
    /// a YES and a NO among the three conditions
    pub contradiction: bool,
}

pub fn verify_tfae(x: &Cylinder, max_dim: usize) -> TfaeReport {
    let inner = is_ambifibrant(x, max_dim);
    let vert_left = check_reedy_local(x, ReedyCondition::VertLeftFibrant, max_dim);
    let horiz_right = check_reedy_local(x, ReedyCondition::HorizRightFibrant, max_dim);
    let vert_local = check_reedy_local(x, ReedyCondition::VertRightLocal, max_dim);
    let reedy = vert_left.clone().and(horiz_right.clone());
    let local = vert_left.clone().and(vert_local.clone());
    let contradiction = !agree(&[inner.status, reedy.status, local.status]);
    TfaeReport {
        inner,
        vert_left,
        horiz_right,
        vert_local,
        reedy,
        local,
        contradiction,
    }
}
