//! Simplicial sets given level by level as explicit finite sets with face
//! and degeneracy functions, converted to generator form.

use std::collections::HashMap;
use std::hash::Hash;

use crate::delta::compose_surjection_masks;
use crate::error::BuildError;
use crate::sset::{SSetBuilder, Simplex, SimplicialSet};

/// Builds the simplicial set whose `n`-simplices are `levels[n]`, truncated
/// above the last level: generators are the elements not of the form
/// `s_i d_i e`. Returns the set and the simplex of every element.
///
/// `face(e, i)` and `degeneracy(e, i)` must satisfy the simplicial
/// identities, and each level must contain the faces of the next and the
/// degeneracies of the previous.
pub fn build_levelwise<K, F, D, N>(
    name: impl Into<String>,
    levels: &[Vec<K>],
    face: F,
    degeneracy: D,
    label: N,
) -> Result<(SimplicialSet, HashMap<K, Simplex>), BuildError>
where
    K: Clone + Eq + Hash,
    F: Fn(&K, usize) -> K,
    D: Fn(&K, usize) -> K,
    N: Fn(&K) -> String,
{
    let mut builder = SSetBuilder::new(name);
    // (builder id, degeneracy mask) of every element
    let mut raw: HashMap<K, (usize, u32, usize)> = HashMap::new();
    for (n, level) in levels.iter().enumerate() {
        for e in level {
            if raw.contains_key(e) {
                continue;
            }
            let mut degenerate = None;
            for i in 0..n {
                let f = face(e, i);
                if degeneracy(&f, i) == *e {
                    degenerate = Some((i, f));
                    break;
                }
            }
            if let Some((i, f)) = degenerate {
                let &(id, mask, _) = raw.get(&f).ok_or_else(|| BuildError::NotClosed(label(e)))?;
                raw.insert(e.clone(), (id, compose_surjection_masks(n, 1 << i, mask), n));
                continue;
            }
            let id = builder.add(label(e), n);
            if n > 0 {
                let mut row = Vec::with_capacity(n + 1);
                for i in 0..=n {
                    let f = face(e, i);
                    let &(fid, fmask, _) = raw.get(&f).ok_or_else(|| BuildError::NotClosed(label(e)))?;
                    row.push((fid, fmask));
                }
                builder.set_faces_raw(id, row);
            }
            raw.insert(e.clone(), (id, 0, n));
        }
    }
    let (set, pos) = builder.build_with_order()?;
    let simplices = raw
        .into_iter()
        .map(|(k, (id, mask, n))| (k, Simplex::new(n, pos[id], mask)))
        .collect();
    Ok((set, simplices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::MonotoneMap;
    use crate::ops::isomorphic;
    use crate::standard::simplex;

    #[test]
    fn simplex_from_monotone_maps() {
        // Δ[2] as monotone maps [n] -> [2]
        let levels: Vec<Vec<Vec<usize>>> = (0..=4)
            .map(|n| MonotoneMap::all(n, 2).into_iter().map(|m| m.values().to_vec()).collect())
            .collect();
        let face = |v: &Vec<usize>, i: usize| {
            let mut w = v.clone();
            w.remove(i);
            w
        };
        let degen = |v: &Vec<usize>, i: usize| {
            let mut w = v.clone();
            w.insert(i, v[i]);
            w
        };
        let label = |v: &Vec<usize>| v.iter().map(|x| x.to_string()).collect::<String>();
        let (x, table) = build_levelwise("Δ[2]", &levels, face, degen, label).unwrap();
        assert!(isomorphic(&x, &simplex(2)));
        assert_eq!(table.len(), levels.iter().map(|l| l.len()).sum::<usize>());
        let s = table[&vec![0, 0, 1, 2]];
        assert!(s.is_degenerate());
        assert_eq!(s.degeneracy_word(), vec![0]);
    }
}
