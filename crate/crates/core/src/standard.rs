//! Standard simplicial sets: simplices, boundaries, horns, spines, the
//! truncated nerve of the free-living isomorphism, and nerves.

use std::collections::HashMap;

use crate::category::{nerve as category_nerve, FiniteCategory};
use crate::delta::Mask;
use crate::error::{CategoryError, Error};
use crate::map::SimplicialMap;
use crate::sset::{SSetBuilder, SimplicialSet};

/// Name of a vertex subset of `[n]`.
pub fn subset_name(n: usize, mask: Mask) -> String {
    let verts: Vec<String> = (0..=n)
        .filter(|&j| mask & (1 << j) != 0)
        .map(|j| j.to_string())
        .collect();
    if n > 9 {
        verts.join(",")
    } else {
        verts.concat()
    }
}

/// Sub-simplicial set of `Δ[n]` spanned by the vertex subsets accepted by
/// `keep`, which must be closed under taking nonempty subsets.
pub fn subcomplex_of_simplex(
    name: impl Into<String>,
    n: usize,
    keep: impl Fn(Mask) -> bool,
) -> SimplicialSet {
    let mut b = SSetBuilder::new(name);
    let full: Mask = ((1u64 << (n + 1)) - 1) as Mask;
    let mut ids: HashMap<Mask, usize> = HashMap::new();
    let mut kept: Vec<Mask> = (1..=full).filter(|&m| keep(m)).collect();
    kept.sort_by_key(|m| m.count_ones());
    for &m in &kept {
        ids.insert(m, b.add(subset_name(n, m), m.count_ones() as usize - 1));
    }
    for &m in &kept {
        if m.count_ones() < 2 {
            continue;
        }
        let verts: Vec<usize> = (0..=n).filter(|&j| m & (1 << j) != 0).collect();
        let faces = verts
            .iter()
            .map(|&v| {
                let f = m & !(1 << v);
                (*ids.get(&f).expect("subcomplex closed under faces"), 0)
            })
            .collect();
        b.set_faces_raw(ids[&m], faces);
    }
    b.build().expect("subcomplex of a simplex")
}

pub fn simplex(n: usize) -> SimplicialSet {
    subcomplex_of_simplex(format!("Δ[{n}]"), n, |_| true)
}

pub fn boundary(n: usize) -> SimplicialSet {
    let full: Mask = ((1u64 << (n + 1)) - 1) as Mask;
    subcomplex_of_simplex(format!("∂Δ[{n}]"), n, move |m| m != full)
}

/// `Λ^k[n]`: all faces except the full simplex and the face opposite `k`.
pub fn horn(n: usize, k: usize) -> Result<SimplicialSet, Error> {
    if n < 1 || k > n {
        return Err(Error::InvalidHorn { n, k });
    }
    let full: Mask = ((1u64 << (n + 1)) - 1) as Mask;
    let opposite = full & !(1 << k);
    Ok(subcomplex_of_simplex(format!("Λ^{k}[{n}]"), n, move |m| {
        m != full && m != opposite
    }))
}

/// The spine `I[n]`: consecutive edges of `Δ[n]`.
pub fn spine(n: usize) -> SimplicialSet {
    subcomplex_of_simplex(format!("I[{n}]"), n, |m| {
        m.count_ones() == 1 || (m.count_ones() == 2 && (m & (m >> 1)) != 0)
    })
}

pub fn empty() -> SimplicialSet {
    SSetBuilder::new("∅").build().expect("empty")
}

pub fn point() -> SimplicialSet {
    simplex(0)
}

/// `k` disjoint points named `p0, p1, ...`.
pub fn discrete(k: usize) -> SimplicialSet {
    let mut b = SSetBuilder::new(format!("{k}pt"));
    for i in 0..k {
        b.add(format!("p{i}"), 0);
    }
    b.build().expect("discrete")
}

/// Truncation at dimension `d` of the nerve of the contractible groupoid on
/// the objects `0, 1`. Its nondegenerate simplices are the alternating
/// vertex sequences, named by their digits.
pub fn j_truncated(d: usize) -> SimplicialSet {
    let seq = |start: usize, len: usize| -> String {
        (0..len).map(|i| ((start + i) % 2).to_string()).collect()
    };
    let mut b = SSetBuilder::new(format!("J≤{d}"));
    let mut ids: HashMap<String, usize> = HashMap::new();
    for k in 0..=d {
        for start in 0..2 {
            let name = seq(start, k + 1);
            ids.insert(name.clone(), b.add(name, k));
        }
    }
    for k in 1..=d {
        for start in 0..2 {
            let name = seq(start, k + 1);
            let digits: Vec<char> = name.chars().collect();
            let faces = (0..=k)
                .map(|i| {
                    let mut rest = digits.clone();
                    rest.remove(i);
                    // collapse repeats into a degeneracy mask
                    let mut mask: Mask = 0;
                    let mut kept = String::new();
                    for (j, c) in rest.iter().enumerate() {
                        if j > 0 && rest[j - 1] == *c {
                            mask |= 1 << (j - 1);
                        } else {
                            kept.push(*c);
                        }
                    }
                    (ids[&kept], mask)
                })
                .collect();
            b.set_faces_raw(ids[&name], faces);
        }
    }
    b.build().expect("truncated J")
}

/// Nerve of a finite category; see [`crate::category::nerve`].
pub fn nerve(c: &FiniteCategory, truncation: Option<usize>) -> Result<SimplicialSet, CategoryError> {
    category_nerve(c, truncation)
}

/// For a sub-simplicial set of `Δ[n]` named as by [`subcomplex_of_simplex`],
/// the vertex subset of each generator.
pub(crate) fn vertex_masks(x: &SimplicialSet) -> Vec<Mask> {
    let vmask: Vec<Mask> = x
        .generator_range(0)
        .map(|v| 1 << x.gen_name(v).parse::<usize>().expect("vertex names are numbers"))
        .collect();
    (0..x.generator_count())
        .map(|g| x.vertices(x.gen_simplex(g)).iter().fold(0, |m, &v| m | vmask[v]))
        .collect()
}

/// The inclusion of a named sub-simplicial set, matched by generator names.
pub fn inclusion(sub: &SimplicialSet, whole: &SimplicialSet) -> SimplicialMap {
    SimplicialMap::by_names(sub, whole).expect("names match")
}

pub fn horn_inclusion(n: usize, k: usize) -> Result<SimplicialMap, Error> {
    Ok(inclusion(&horn(n, k)?, &simplex(n)))
}

pub fn boundary_inclusion(n: usize) -> SimplicialMap {
    inclusion(&boundary(n), &simplex(n))
}

pub fn spine_inclusion(n: usize) -> SimplicialMap {
    inclusion(&spine(n), &simplex(n))
}

/// The vertex `v` of `Δ[n]` as a map `Δ[0] -> Δ[n]`.
pub fn vertex_inclusion(n: usize, v: usize) -> SimplicialMap {
    let pt = point();
    let target = simplex(n);
    let g = target.find(&subset_name(n, 1 << v)).unwrap();
    SimplicialMap::new(pt, target.clone(), vec![target.gen_simplex(g)]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::{binomial, MonotoneMap};

    #[test]
    fn counts() {
        assert_eq!(simplex(2).generator_count(), 7);
        assert_eq!(boundary(2).generator_count(), 6);
        assert_eq!(horn(2, 1).unwrap().generator_count(), 5);
        assert_eq!(spine(3).generator_counts(), vec![4, 3]);
        assert!(horn(0, 0).is_err());
        assert!(horn(2, 3).is_err());
        assert_eq!(boundary(1).simplices_at(0).len(), 2);
        assert_eq!(simplex(0).simplices_at(5).len(), 1);
    }

    #[test]
    fn simplex_levels_match_monotone_maps() {
        for m in 0..=5 {
            let x = simplex(m);
            for n in 0..=5 {
                assert_eq!(x.simplices_at(n).len(), MonotoneMap::all(n, m).len());
                assert_eq!(x.count_at(n), binomial(m + n + 1, m));
            }
        }
    }

    #[test]
    fn j_counts() {
        assert_eq!(j_truncated(2).generator_counts(), vec![2, 2, 2]);
        let j3 = j_truncated(3);
        let t = j3.find("010").unwrap();
        let f = j3.face(j3.gen_simplex(t), 1);
        assert_eq!(j3.show(f), "s0(0)");
    }

    #[test]
    fn top_face() {
        let x = simplex(2);
        let top = x.generators(2).next().unwrap();
        assert_eq!(x.gen_name(x.face(top, 1).generator()), "02");
    }
}
