//! `cyl` subcommands.

use std::path::PathBuf;

use clap::Subcommand;
use serde_json::json;

use cylkit::cylinders::collage::collage_nerve;
use cylkit::cylinders::division::{left_divide, right_divide};
use cylkit::cylinders::presheaf::to_presheaf;
use cylkit::cylinders::reedy::{is_ambifibrant, verify_tfae};
use cylkit::cylinders::{dual_cylinder, left_cone, make_cylinder, pushforward, same_cylinder, Cylinder};
use cylkit::fib::{ho_functor, is_discrete_isofibration};

use crate::commands::sset_summary;
use crate::formats::*;
use crate::report::{Entry, RunConfig};
use crate::{Failure, Outcome, Output};

#[derive(Subcommand, Debug)]
pub enum CylCommand {
    /// Cylinder from a map to Δ[1]
    Make { map: PathBuf },
    /// Ambifibrancy against the Reedy and local conditions
    Tfae { cylinder: PathBuf },
    /// Pushforward along maps of the ends
    Pushforward {
        cylinder: PathBuf,
        #[arg(long)]
        u: PathBuf,
        #[arg(long)]
        v: PathBuf,
    },
    /// Division by a weight over one of the ends
    Divide {
        cylinder: PathBuf,
        /// weight M -> A
        #[arg(long, conflicts_with = "right", required_unless_present = "right")]
        left: Option<PathBuf>,
        /// weight S -> B
        #[arg(long)]
        right: Option<PathBuf>,
    },
    /// Presheaf form over Δ/A × Δ/B
    Presheaf {
        cylinder: PathBuf,
        /// largest total dimension m + 1 + n tabulated
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Left cone of a map S -> B
    Cone { map: PathBuf },
    /// Collage nerve of a profunctor
    Collage {
        profunctor: PathBuf,
        #[arg(long)]
        truncation: Option<usize>,
    },
    /// Dual cylinder
    Dual { cylinder: PathBuf },
}

fn summary(x: &Cylinder) -> serde_json::Value {
    json!({"total": sset_summary(&x.total), "a": sset_summary(&x.a), "b": sset_summary(&x.b)})
}

fn cylinder_out(check: &str, x: &Cylinder) -> Output {
    Output::entries(vec![Entry::fact(check, true).with_data(summary(x))]).with_object(json!(cylinder_to_json(x)))
}

pub fn run(op: &CylCommand, config: &RunConfig) -> Outcome {
    match op {
        CylCommand::Make { map } => {
            let p = read_map(map)?;
            Ok(cylinder_out("cylinder", &make_cylinder(&p)?))
        }
        CylCommand::Tfae { cylinder } => {
            let x = read_cylinder(cylinder)?;
            let r = verify_tfae(&x, config.max_dim);
            Ok(Output::entries(vec![
                Entry::from_verdict("ambifibrant", &r.inner),
                Entry::from_verdict("vertically Reedy left fibrant", &r.vert_left),
                Entry::from_verdict("horizontally Reedy right fibrant", &r.horiz_right),
                Entry::from_verdict("vertically right local", &r.vert_local),
                Entry::from_verdict("Reedy fibrant", &r.reedy),
                Entry::from_verdict("left fibrant and right local", &r.local),
                Entry::fact("conditions agree", !r.contradiction),
            ]))
        }
        CylCommand::Pushforward { cylinder, u, v } => {
            let x = read_cylinder(cylinder)?;
            let (u, v) = (read_map(u)?, read_map(v)?);
            if u.source() != &x.a || v.source() != &x.b {
                return Err(Failure::Usage("u and v must start at the ends of the cylinder".into()));
            }
            let p = pushforward(&u, &v, &x)?;
            Ok(cylinder_out("pushforward", &p.cylinder))
        }
        CylCommand::Divide { cylinder, left, right } => {
            let x = read_cylinder(cylinder)?;
            let d = match (left, right) {
                (Some(w), None) => left_divide(&read_map(w)?, &x, config.max_dim)?,
                (None, Some(w)) => right_divide(&x, &read_map(w)?, config.max_dim)?,
                _ => return Err(Failure::Usage("give exactly one of --left and --right".into())),
            };
            let e = Entry::fact("division", true).with_data(json!({"division": sset_summary(&d.set), "base": sset_summary(d.to_base.target())}));
            let e = Entry { cutoff: Some(d.max_dim), ..e };
            Ok(Output::entries(vec![e]).with_object(json!(map_to_json(&d.to_base))))
        }
        CylCommand::Presheaf { cylinder, bound } => {
            let x = read_cylinder(cylinder)?;
            let bound = bound.unwrap_or(config.max_dim);
            let p = to_presheaf(&x, bound);
            let table: Vec<_> = p
                .index_pairs()
                .into_iter()
                .map(|(a, b)| {
                    let labels: Vec<&str> = p.value(a, b).iter().map(|&e| p.elements[e].label.as_str()).collect();
                    json!({"alpha": x.a.show(a), "beta": x.b.show(b), "value": labels})
                })
                .collect();
            let constant = (0..=2).find(|&k| p.is_constant(k));
            let e = Entry::fact("presheaf satisfies the simplicial identities", p.check_identities().is_ok())
                .with_data(json!({"bound": bound, "elements": p.elements.len(), "constant": constant, "table": table}));
            Ok(Output::entries(vec![Entry { cutoff: Some(bound), ..e }]))
        }
        CylCommand::Cone { map } => {
            let c = left_cone(&read_map(map)?)?;
            Ok(Output::entries(vec![Entry::fact("left cone", true).with_data(sset_summary(&c))]).with_object(json!(sset_to_json(&c))))
        }
        CylCommand::Collage { profunctor, truncation } => {
            let m = read_profunctor(profunctor)?;
            let x = collage_nerve(&m, *truncation)?;
            let amb = is_ambifibrant(&x, config.max_dim);
            let ho = ho_functor(&x.structure, config.max_dim)?;
            let mut out = cylinder_out("collage nerve", &x);
            out.entries.push(Entry::from_verdict("ambifibrant", &amb));
            out.entries.push(Entry::fact("ho of the structure map is a discrete isofibration", is_discrete_isofibration(&ho.functor)));
            Ok(out)
        }
        CylCommand::Dual { cylinder } => {
            let x = read_cylinder(cylinder)?;
            let d = dual_cylinder(&x)?;
            let back = dual_cylinder(&d)?;
            let mut out = cylinder_out("dual cylinder", &d);
            out.entries.push(Entry::fact("dual of the dual is the original", same_cylinder(&back, &x)));
            Ok(out)
        }
    }
}
