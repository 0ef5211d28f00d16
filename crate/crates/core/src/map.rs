//! Simplicial maps, determined by their values on generators.

use std::collections::HashMap;
use std::fmt;

use crate::delta::compose_surjection_masks;
use crate::error::MapError;
use crate::sset::{Simplex, SimplicialSet};

#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialMap {
    source: SimplicialSet,
    target: SimplicialSet,
    images: Vec<Simplex>,
}

impl fmt::Debug for SimplicialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} [", self.source.name(), self.target.name())?;
        for (g, img) in self.images.iter().enumerate() {
            if g > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} ↦ {}", self.source.gen_name(g), self.target.show(*img))?;
        }
        write!(f, "]")
    }
}

/// Flags computed by [`SimplicialMap::properties`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct MapProperties {
    pub mono: bool,
    pub epi: bool,
    pub bijective_on_0: bool,
}

impl SimplicialMap {
    /// Checks dimensions and face compatibility.
    pub fn new(
        source: SimplicialSet,
        target: SimplicialSet,
        images: Vec<Simplex>,
    ) -> Result<SimplicialMap, MapError> {
        if images.len() != source.generator_count() {
            let g = images.len().min(source.generator_count().saturating_sub(1));
            return Err(MapError::MissingImage(
                source.all_generators().nth(g).map(|s| source.gen_name(s.generator()).to_string()).unwrap_or_default(),
            ));
        }
        let map = SimplicialMap {
            source,
            target,
            images,
        };
        map.check()?;
        Ok(map)
    }

    pub(crate) fn new_unchecked(
        source: SimplicialSet,
        target: SimplicialSet,
        images: Vec<Simplex>,
    ) -> SimplicialMap {
        let map = SimplicialMap {
            source,
            target,
            images,
        };
        debug_assert!(map.check().is_ok(), "{:?}", map.check());
        map
    }

    fn check(&self) -> Result<(), MapError> {
        for g in 0..self.source.generator_count() {
            let d = self.source.gen_dim(g);
            let img = self.images[g];
            if img.dim() != d || img.generator() >= self.target.generator_count() {
                return Err(MapError::DimensionMismatch {
                    generator: self.source.gen_name(g).to_string(),
                    expected: d,
                    found: img.dim(),
                });
            }
            if img.generator_dim() != self.target.gen_dim(img.generator()) {
                return Err(MapError::DimensionMismatch {
                    generator: self.source.gen_name(g).to_string(),
                    expected: d,
                    found: img.dim(),
                });
            }
            if d == 0 {
                continue;
            }
            for (i, &f) in self.source.faces_of(g).iter().enumerate() {
                if self.apply(f) != self.target.face(img, i) {
                    return Err(MapError::FaceIncompatible {
                        generator: self.source.gen_name(g).to_string(),
                        index: i,
                    });
                }
            }
        }
        Ok(())
    }

    /// Builds a map from (generator name, degeneracy word, target name)
    /// triples.
    pub fn from_named(
        source: SimplicialSet,
        target: SimplicialSet,
        assignment: &[(String, Vec<usize>, String)],
    ) -> Result<SimplicialMap, MapError> {
        let mut images: Vec<Option<Simplex>> = vec![None; source.generator_count()];
        for (of, word, to) in assignment {
            let g = source
                .find(of)
                .ok_or_else(|| MapError::UnknownGenerator(of.clone()))?;
            let t = target
                .find(to)
                .ok_or_else(|| MapError::UnknownGenerator(to.clone()))?;
            let n = target.gen_dim(t) + word.len();
            let mask = crate::delta::word_to_mask(n, word).map_err(|reason| MapError::BadWord {
                generator: of.clone(),
                reason,
            })?;
            images[g] = Some(Simplex::new(n, t, mask));
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(g, i)| i.ok_or_else(|| MapError::MissingImage(source.gen_name(g).to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        SimplicialMap::new(source, target, images)
    }

    /// Map into `target` sending each generator to the generator of the same
    /// name.
    pub fn by_names(source: &SimplicialSet, target: &SimplicialSet) -> Result<SimplicialMap, MapError> {
        let images = source
            .all_generators()
            .map(|s| {
                let name = source.gen_name(s.generator());
                target
                    .find(name)
                    .map(|t| Simplex::new(s.dim(), t, 0))
                    .ok_or_else(|| MapError::UnknownGenerator(name.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        SimplicialMap::new(source.clone(), target.clone(), images)
    }

    pub fn identity(x: &SimplicialSet) -> SimplicialMap {
        let images = x.all_generators().collect();
        SimplicialMap::new_unchecked(x.clone(), x.clone(), images)
    }

    /// The unique map out of the empty simplicial set.
    pub fn from_empty(empty: &SimplicialSet, target: &SimplicialSet) -> SimplicialMap {
        assert!(empty.is_empty());
        SimplicialMap::new_unchecked(empty.clone(), target.clone(), Vec::new())
    }

    /// The unique map to `Δ[0]`.
    pub fn to_point(x: &SimplicialSet, point: &SimplicialSet) -> SimplicialMap {
        assert_eq!(point.generator_counts(), vec![1]);
        let images = x
            .all_generators()
            .map(|s| point.constant(0, s.dim()))
            .collect();
        SimplicialMap::new_unchecked(x.clone(), point.clone(), images)
    }

    /// The constant map at vertex `v`.
    pub fn constant(x: &SimplicialSet, target: &SimplicialSet, v: usize) -> SimplicialMap {
        let images = x.all_generators().map(|s| target.constant(v, s.dim())).collect();
        SimplicialMap::new_unchecked(x.clone(), target.clone(), images)
    }

    pub fn source(&self) -> &SimplicialSet {
        &self.source
    }

    pub fn target(&self) -> &SimplicialSet {
        &self.target
    }

    pub fn images(&self) -> &[Simplex] {
        &self.images
    }

    pub fn image_of_gen(&self, g: usize) -> Simplex {
        self.images[g]
    }

    pub fn apply(&self, s: Simplex) -> Simplex {
        let img = self.images[s.generator()];
        Simplex::new(
            s.dim(),
            img.generator(),
            compose_surjection_masks(s.dim(), s.mask(), img.mask()),
        )
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &SimplicialMap) -> Result<SimplicialMap, MapError> {
        if inner.target != self.source {
            return Err(MapError::NotComposable);
        }
        let images = inner.images.iter().map(|&s| self.apply(s)).collect();
        Ok(SimplicialMap::new_unchecked(
            inner.source.clone(),
            self.target.clone(),
            images,
        ))
    }

    /// `outer ∘ self`.
    pub fn then(&self, outer: &SimplicialMap) -> Result<SimplicialMap, MapError> {
        outer.after(self)
    }

    /// Same assignment with source and target replaced by equal objects.
    pub fn retarget(&self, target: &SimplicialSet) -> Result<SimplicialMap, MapError> {
        if *target != self.target {
            return Err(MapError::Mismatch("target"));
        }
        Ok(SimplicialMap::new_unchecked(
            self.source.clone(),
            target.clone(),
            self.images.clone(),
        ))
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self
                .images
                .iter()
                .enumerate()
                .all(|(g, s)| !s.is_degenerate() && s.generator() == g)
    }

    /// Injective on every level. By Eilenberg–Zilber this happens exactly
    /// when generators go injectively to generators.
    pub fn is_mono(&self) -> bool {
        let mut seen = vec![false; self.target.generator_count()];
        for s in &self.images {
            if s.is_degenerate() || seen[s.generator()] {
                return false;
            }
            seen[s.generator()] = true;
        }
        true
    }

    /// Surjective on every level: every target generator is the
    /// nondegenerate part of some image.
    pub fn is_epi(&self) -> bool {
        let mut hit = vec![false; self.target.generator_count()];
        for s in &self.images {
            hit[s.generator()] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    pub fn is_bijective_on_vertices(&self) -> bool {
        let src = self.source.generator_range(0);
        let tgt = self.target.generator_range(0);
        if src.len() != tgt.len() {
            return false;
        }
        let mut hit = vec![false; tgt.len()];
        for g in src {
            let v = self.images[g].generator();
            if hit[v] {
                return false;
            }
            hit[v] = true;
        }
        true
    }

    pub fn properties(&self) -> MapProperties {
        MapProperties {
            mono: self.is_mono(),
            epi: self.is_epi(),
            bijective_on_0: self.is_bijective_on_vertices(),
        }
    }

    /// For a mono, the source generator over each target generator.
    pub fn preimage_table(&self) -> Vec<Option<usize>> {
        let mut pre = vec![None; self.target.generator_count()];
        for (g, s) in self.images.iter().enumerate() {
            if !s.is_degenerate() {
                pre[s.generator()] = Some(g);
            }
        }
        pre
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<SimplicialMap> {
        if !self.is_iso() {
            return None;
        }
        let pre = self.preimage_table();
        let images = self
            .target
            .all_generators()
            .map(|s| self.source.gen_simplex(pre[s.generator()].unwrap()))
            .collect();
        Some(SimplicialMap::new_unchecked(
            self.target.clone(),
            self.source.clone(),
            images,
        ))
    }

    /// Assignment as (generator, word, target generator) name triples.
    pub fn named_assignment(&self) -> Vec<(String, Vec<usize>, String)> {
        self.images
            .iter()
            .enumerate()
            .map(|(g, s)| {
                (
                    self.source.gen_name(g).to_string(),
                    s.degeneracy_word(),
                    self.target.gen_name(s.generator()).to_string(),
                )
            })
            .collect()
    }

    /// Fibres of the map over target generators: for each target generator,
    /// the source generators whose image is that generator, nondegenerately.
    pub fn generator_preimages(&self) -> HashMap<usize, Vec<usize>> {
        let mut out: HashMap<usize, Vec<usize>> = HashMap::new();
        for (g, s) in self.images.iter().enumerate() {
            if !s.is_degenerate() {
                out.entry(s.generator()).or_default().push(g);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::standard;

    #[test]
    fn horn_inclusion_flags() {
        let horn = standard::horn(2, 1).unwrap();
        let d2 = standard::simplex(2);
        let i = SimplicialMap::by_names(&horn, &d2).unwrap();
        let p = i.properties();
        assert!(p.mono && !p.epi && p.bijective_on_0);
    }

    #[test]
    fn collapse_flags() {
        let d1 = standard::simplex(1);
        let pt = standard::simplex(0);
        let c = SimplicialMap::to_point(&d1, &pt);
        let p = c.properties();
        assert!(p.epi && !p.mono && !p.bijective_on_0);
    }

    #[test]
    fn face_incompatibility_reported() {
        let d1 = standard::simplex(1);
        let d2 = standard::simplex(2);
        let e = d2.find("02").unwrap();
        // send the edge to 02 but its endpoints to 0 and 1
        let images = vec![
            d2.gen_simplex(d2.find("0").unwrap()),
            d2.gen_simplex(d2.find("1").unwrap()),
            d2.gen_simplex(e),
        ];
        let err = SimplicialMap::new(d1, d2, images).unwrap_err();
        assert!(matches!(err, MapError::FaceIncompatible { .. }));
    }
}
