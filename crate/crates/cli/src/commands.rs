//! `gen`, `validate`, `map-check`, `classify`, `certify-anodyne`, `factor`.

use std::path::Path;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use cylkit::category::nerve;
use cylkit::colimits::product;
use cylkit::cylinders::collage::Profunctor;
use cylkit::cylinders::corpus::soa_cylinder;
use cylkit::cylinders::{initial, terminal};
use cylkit::fib::{classify_fibration, FibrationKind};
use cylkit::join::Join;
use cylkit::lifting::anodyne::{certify_inner_anodyne, is_absolute_wce, AnodyneOptions};
use cylkit::lifting::soa::{soa_factor, SoaOptions};
use cylkit::lifting::{Family, Status};
use cylkit::ops::opposite;
use cylkit::standard;
use cylkit::{FiniteCategory, SimplicialMap, SimplicialSet};

use crate::formats::*;
use crate::report::{Entry, RunConfig};
use crate::{Failure, Outcome, Output};

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn nat(params: &[String], i: usize, what: &str) -> Result<usize, Failure> {
    let p = params.get(i).ok_or_else(|| usage(format!("missing {what}")))?;
    p.parse().map_err(|_| usage(format!("{what} must be a natural number, got `{p}`")))
}

fn file<'a>(params: &'a [String], i: usize, what: &str) -> Result<&'a Path, Failure> {
    params.get(i).map(Path::new).ok_or_else(|| usage(format!("missing {what}")))
}

pub fn sset_summary(x: &SimplicialSet) -> Value {
    json!({
        "name": x.name(),
        "dimension": x.dimension(),
        "generators": x.generator_count(),
        "generators_per_dimension": x.generator_counts(),
    })
}

fn sset_out(check: &str, x: SimplicialSet) -> Outcome {
    Ok(Output::entries(vec![Entry::fact(check, true).with_data(sset_summary(&x))]).with_object(json!(sset_to_json(&x))))
}

fn map_out(check: &str, f: SimplicialMap) -> Outcome {
    let data = json!({"source": sset_summary(f.source()), "target": sset_summary(f.target())});
    Ok(Output::entries(vec![Entry::fact(check, true).with_data(data)]).with_object(json!(map_to_json(&f))))
}

pub fn gen(kind: &str, params: &[String], config: &RunConfig) -> Outcome {
    let check = format!("generated {kind}");
    match kind {
        "simplex" => sset_out(&check, standard::simplex(nat(params, 0, "dimension")?)),
        "boundary" => sset_out(&check, standard::boundary(nat(params, 0, "dimension")?)),
        "horn" => sset_out(&check, standard::horn(nat(params, 0, "dimension")?, nat(params, 1, "horn index")?)?),
        "spine" => sset_out(&check, standard::spine(nat(params, 0, "length")?)),
        "point" => sset_out(&check, standard::point()),
        "empty" => sset_out(&check, standard::empty()),
        "discrete" => sset_out(&check, standard::discrete(nat(params, 0, "number of points")?)),
        "j" => {
            let d = if params.is_empty() { config.truncation_j } else { nat(params, 0, "truncation")? };
            sset_out(&check, standard::j_truncated(d))
        }
        "nerve" => {
            let c = read_category(file(params, 0, "category file")?)?;
            let t = if params.len() > 1 { Some(nat(params, 1, "truncation")?) } else { None };
            sset_out(&check, nerve(&c, t).map_err(cylkit::Error::from)?)
        }
        "join" => {
            let a = read_sset(file(params, 0, "left file")?)?;
            let b = read_sset(file(params, 1, "right file")?)?;
            sset_out(&check, Join::new(&a, &b).object)
        }
        "product" => {
            let a = read_sset(file(params, 0, "left file")?)?;
            let b = read_sset(file(params, 1, "right file")?)?;
            sset_out(&check, product(&a, &b).object)
        }
        "opposite" => sset_out(&check, opposite(&read_sset(file(params, 0, "file")?)?)),
        "horn-inclusion" => map_out(&check, standard::horn_inclusion(nat(params, 0, "dimension")?, nat(params, 1, "horn index")?)?),
        "boundary-inclusion" => map_out(&check, standard::boundary_inclusion(nat(params, 0, "dimension")?)),
        "spine-inclusion" => map_out(&check, standard::spine_inclusion(nat(params, 0, "length")?)),
        "vertex-inclusion" => {
            let (n, v) = (nat(params, 0, "dimension")?, nat(params, 1, "vertex")?);
            if v > n {
                return Err(usage(format!("vertex {v} is not in Δ[{n}]")));
            }
            map_out(&check, standard::vertex_inclusion(n, v))
        }
        "to-point" => {
            let x = read_sset(file(params, 0, "file")?)?;
            map_out(&check, SimplicialMap::to_point(&x, &standard::point()))
        }
        "identity" => map_out(&check, SimplicialMap::identity(&read_sset(file(params, 0, "file")?)?)),
        "category" => {
            let c = match params.first().map(String::as_str) {
                Some("ordinal") => FiniteCategory::ordinal(nat(params, 1, "length")?),
                Some("iso") => FiniteCategory::free_isomorphism(),
                Some("parallel") => FiniteCategory::parallel_pair(),
                Some("random") => {
                    let max = if params.len() > 1 { nat(params, 1, "object bound")? } else { 3 };
                    FiniteCategory::random(&mut ChaCha8Rng::seed_from_u64(config.seed), max, "C")
                }
                _ => return Err(usage("category kinds: ordinal N, iso, parallel, random [N]")),
            };
            let data = json!({"name": c.name(), "objects": c.object_count(), "morphisms": c.morphism_count()});
            Ok(Output::entries(vec![Entry::fact(check, true).with_data(data)]).with_object(json!(category_to_json(&c))))
        }
        "profunctor" => {
            let m = match params.first().map(String::as_str) {
                Some("random") => {
                    let max = if params.len() > 1 { nat(params, 1, "object bound")? } else { 3 };
                    Profunctor::random(&mut ChaCha8Rng::seed_from_u64(config.seed), max)
                }
                Some("terminal") => {
                    let one = Arc::new(FiniteCategory::ordinal(0));
                    Profunctor::from_relation(one.clone(), one, &[(0, 0)])?
                }
                _ => return Err(usage("profunctor kinds: random [N], terminal")),
            };
            let data = json!({"elements": m.elements.len()});
            Ok(Output::entries(vec![Entry::fact(check, true).with_data(data)]).with_object(json!(profunctor_to_json(&m))))
        }
        "terminal" | "initial" | "soa" => {
            let a = read_sset(file(params, 0, "left end")?)?;
            let b = read_sset(file(params, 1, "right end")?)?;
            let x = match kind {
                "terminal" => terminal(&a, &b),
                "initial" => initial(&a, &b),
                _ => soa_cylinder(&a, &b, config.stage_budget, config.max_dim)?,
            };
            let data = json!({"total": sset_summary(&x.total)});
            Ok(Output::entries(vec![Entry::fact(check, true).with_data(data)]).with_object(json!(cylinder_to_json(&x))))
        }
        _ => Err(usage(format!("unknown kind `{kind}`"))),
    }
}

pub fn validate(path: &Path) -> Outcome {
    let doc = read_document(path)?;
    let data = match &doc {
        Document::SSet(x) => sset_summary(x),
        Document::Map(f) => json!({"source": sset_summary(f.source()), "target": sset_summary(f.target())}),
        Document::Category(c) => json!({"name": c.name(), "objects": c.object_count(), "morphisms": c.morphism_count()}),
        Document::Profunctor(m) => json!({"source": m.source.name(), "target": m.target.name(), "elements": m.elements.len()}),
        Document::Cylinder(x) => json!({"total": sset_summary(&x.total), "a": sset_summary(&x.a), "b": sset_summary(&x.b)}),
    };
    Ok(Output::entries(vec![Entry::fact(format!("valid {}", doc.kind()), true).with_data(data)]))
}

pub fn map_check(path: &Path) -> Outcome {
    let f = read_map(path)?;
    let p = f.properties();
    let data = json!({
        "source": sset_summary(f.source()),
        "target": sset_summary(f.target()),
        "properties": p,
    });
    Ok(Output::entries(vec![Entry::fact("valid map", true).with_data(data)]))
}

pub fn classify(path: &Path, kind: &str, config: &RunConfig) -> Outcome {
    let k = FibrationKind::parse(kind).ok_or_else(|| usage(format!("unknown fibration kind `{kind}`")))?;
    let f = read_map(path)?;
    let v = classify_fibration(&f, k, config.max_dim);
    Ok(Output::entries(vec![Entry::from_verdict(format!("{} fibration", k.name()), &v)]))
}

pub fn certify(path: &Path, wce: bool) -> Outcome {
    let f = read_map(path)?;
    let opts = AnodyneOptions::default();
    let (check, r) = if wce {
        ("absolute weak categorical equivalence", is_absolute_wce(&f, &opts)?)
    } else {
        ("inner anodyne", certify_inner_anodyne(&f, &opts)?)
    };
    let mut e = Entry::from_verdict(check, &r.verdict);
    if let Some(fact) = &r.factorization {
        e = e.with_data(json!({"cells": fact.cells.len(), "middle": sset_summary(&fact.middle), "replayed": fact.replay()}));
    }
    Ok(Output::entries(vec![e]))
}

pub fn factor(path: &Path, family: &str, dim_budget: Option<usize>, greedy: bool, config: &RunConfig) -> Outcome {
    let fam = Family::parse(family).ok_or_else(|| usage(format!("unknown family `{family}`")))?;
    let u = read_map(path)?;
    let mut opts = SoaOptions::new(fam, dim_budget.unwrap_or_else(|| SoaOptions::default_dim_budget(&u)));
    opts.stage_budget = config.stage_budget;
    if greedy {
        opts = opts.greedy();
    }
    let f = soa_factor(&u, &opts)?;
    let replayed = f.replay() && f.left.then(&f.right).map(|m| m == u).unwrap_or(false);
    let cells: Vec<Value> = f
        .cells
        .iter()
        .map(|c| json!({"stage": c.stage, "dimension": c.member.dim(&opts.family), "new_generators": c.new_generators}))
        .collect();
    let data = json!({
        "family": opts.family.name(),
        "strategy": opts.strategy,
        "stage_budget": opts.stage_budget,
        "dim_budget": opts.dim_budget,
        "stages": f.stages,
        "saturated": f.saturated,
        "middle": sset_summary(&f.middle),
        "cells": cells,
    });
    let mut out = vec![Entry::fact("factorization replays", replayed).with_data(data)];
    let right = Entry::plain("right part has the lifting property", if f.saturated { Status::YesBounded } else { Status::Exhausted });
    let right = Entry { cutoff: Some(opts.dim_budget), ..right };
    out.push(if f.saturated { right } else { right.with_note("budget ran out before every square was solved") });
    let object = json!({"left": map_to_json(&f.left), "right": map_to_json(&f.right)});
    Ok(Output::entries(out).with_object(object))
}
