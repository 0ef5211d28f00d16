//! JSON v1 file formats: simplicial sets, maps, categories, profunctors and
//! cylinders.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use cylkit::cylinders::collage::Profunctor;
use cylkit::cylinders::{make_cylinder, Cylinder};
use cylkit::{CategoryBuilder, FiniteCategory, SSetBuilder, SimplicialMap, SimplicialSet};

#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn err(path: &str, what: impl std::fmt::Display) -> InputError {
    InputError(format!("{path}: {what}"))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FaceJson {
    pub word: Vec<usize>,
    pub target: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SSetJson {
    pub name: String,
    pub generators: Vec<Vec<String>>,
    #[serde(default)]
    pub faces: BTreeMap<String, Vec<FaceJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AssignJson {
    pub of: String,
    pub word: Vec<usize>,
    pub target: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MapJson {
    pub source: SSetJson,
    pub target: SSetJson,
    pub assignment: Vec<AssignJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ObjectJson {
    pub name: String,
    pub identity: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MorphismJson {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// `second ∘ first = result`
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CompositeJson {
    pub first: String,
    pub second: String,
    pub result: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CategoryJson {
    pub name: String,
    pub objects: Vec<ObjectJson>,
    #[serde(default)]
    pub morphisms: Vec<MorphismJson>,
    #[serde(default)]
    pub composites: Vec<CompositeJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ElementJson {
    pub name: String,
    pub a: String,
    pub b: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ActionJson {
    pub morphism: String,
    pub element: String,
    pub result: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ProfunctorJson {
    pub source: CategoryJson,
    pub target: CategoryJson,
    pub elements: Vec<ElementJson>,
    /// `x · f` for `f` in the source
    #[serde(default)]
    pub act_a: Vec<ActionJson>,
    /// `g · x` for `g` in the target
    #[serde(default)]
    pub act_b: Vec<ActionJson>,
}

/// A cylinder is stored as its structure map to `Δ[1]`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CylinderJson {
    pub structure: MapJson,
}

pub fn sset_to_json(x: &SimplicialSet) -> SSetJson {
    let mut generators = Vec::new();
    for d in 0..=x.dim_or_zero() {
        if x.is_empty() {
            break;
        }
        generators.push(x.generators(d).map(|s| x.gen_name(s.generator()).to_string()).collect());
    }
    let mut faces = BTreeMap::new();
    for s in x.all_generators().filter(|s| s.dim() > 0) {
        let g = s.generator();
        let list = x
            .faces_of(g)
            .iter()
            .map(|f| FaceJson {
                word: f.degeneracy_word(),
                target: x.gen_name(f.generator()).to_string(),
            })
            .collect();
        faces.insert(x.gen_name(g).to_string(), list);
    }
    SSetJson {
        name: x.name().to_string(),
        generators,
        faces,
    }
}

pub fn sset_from_json(j: &SSetJson, path: &str) -> Result<SimplicialSet, InputError> {
    let mut b = SSetBuilder::new(j.name.clone());
    for (d, level) in j.generators.iter().enumerate() {
        for name in level {
            let faces = if d == 0 {
                Vec::new()
            } else {
                j.faces
                    .get(name)
                    .ok_or_else(|| err(path, format!("generator `{name}` has no faces")))?
                    .iter()
                    .map(|f| (f.word.clone(), f.target.clone()))
                    .collect()
            };
            b.generator(name.clone(), d, faces);
        }
    }
    for name in j.faces.keys() {
        if !j.generators.iter().flatten().any(|g| g == name) {
            return Err(err(path, format!("faces given for unlisted generator `{name}`")));
        }
    }
    b.build().map_err(|e| err(path, e))
}

pub fn map_to_json(f: &SimplicialMap) -> MapJson {
    MapJson {
        source: sset_to_json(f.source()),
        target: sset_to_json(f.target()),
        assignment: f
            .named_assignment()
            .into_iter()
            .map(|(of, word, target)| AssignJson { of, word, target })
            .collect(),
    }
}

pub fn map_from_json(j: &MapJson, path: &str) -> Result<SimplicialMap, InputError> {
    let source = sset_from_json(&j.source, &format!("{path}: source"))?;
    let target = sset_from_json(&j.target, &format!("{path}: target"))?;
    let assignment: Vec<_> = j.assignment.iter().map(|a| (a.of.clone(), a.word.clone(), a.target.clone())).collect();
    SimplicialMap::from_named(source, target, &assignment).map_err(|e| err(path, e))
}

pub fn category_to_json(c: &FiniteCategory) -> CategoryJson {
    let objects = (0..c.object_count())
        .map(|o| ObjectJson {
            name: c.object_name(o).to_string(),
            identity: c.morphism_name(c.identity(o)).to_string(),
        })
        .collect();
    let morphisms = (0..c.morphism_count())
        .filter(|&f| !c.is_identity(f))
        .map(|f| MorphismJson {
            name: c.morphism_name(f).to_string(),
            source: c.object_name(c.source(f)).to_string(),
            target: c.object_name(c.target(f)).to_string(),
        })
        .collect();
    let mut composites = Vec::new();
    for f in (0..c.morphism_count()).filter(|&f| !c.is_identity(f)) {
        for g in (0..c.morphism_count()).filter(|&g| !c.is_identity(g)) {
            if let Some(h) = c.compose(g, f) {
                composites.push(CompositeJson {
                    first: c.morphism_name(f).to_string(),
                    second: c.morphism_name(g).to_string(),
                    result: c.morphism_name(h).to_string(),
                });
            }
        }
    }
    CategoryJson {
        name: c.name().to_string(),
        objects,
        morphisms,
        composites,
    }
}

pub fn category_from_json(j: &CategoryJson, path: &str) -> Result<FiniteCategory, InputError> {
    let mut b = CategoryBuilder::new(j.name.clone());
    for o in &j.objects {
        b.object_with_identity(o.name.clone(), o.identity.clone());
    }
    for m in &j.morphisms {
        b.morphism(m.name.clone(), m.source.clone(), m.target.clone());
    }
    for c in &j.composites {
        b.composite(c.first.clone(), c.second.clone(), c.result.clone());
    }
    b.build().map_err(|e| err(path, e))
}

pub fn profunctor_to_json(m: &Profunctor) -> ProfunctorJson {
    let (a, b) = (&*m.source, &*m.target);
    let elements: Vec<ElementJson> = m
        .elements
        .iter()
        .map(|e| ElementJson {
            name: e.name.clone(),
            a: a.object_name(e.a).to_string(),
            b: b.object_name(e.b).to_string(),
        })
        .collect();
    let mut act_a = Vec::new();
    let mut act_b = Vec::new();
    for (x, e) in m.elements.iter().enumerate() {
        for f in (0..a.morphism_count()).filter(|&f| a.target(f) == e.a && !a.is_identity(f)) {
            if let Some(y) = m.act_a(x, f) {
                act_a.push(ActionJson {
                    morphism: a.morphism_name(f).to_string(),
                    element: e.name.clone(),
                    result: m.elements[y].name.clone(),
                });
            }
        }
        for g in (0..b.morphism_count()).filter(|&g| b.source(g) == e.b && !b.is_identity(g)) {
            if let Some(y) = m.act_b(g, x) {
                act_b.push(ActionJson {
                    morphism: b.morphism_name(g).to_string(),
                    element: e.name.clone(),
                    result: m.elements[y].name.clone(),
                });
            }
        }
    }
    ProfunctorJson {
        source: category_to_json(a),
        target: category_to_json(b),
        elements,
        act_a,
        act_b,
    }
}

pub fn profunctor_from_json(j: &ProfunctorJson, path: &str) -> Result<Profunctor, InputError> {
    let a = Arc::new(category_from_json(&j.source, &format!("{path}: source"))?);
    let b = Arc::new(category_from_json(&j.target, &format!("{path}: target"))?);
    let triple = |x: &ActionJson| (x.morphism.clone(), x.element.clone(), x.result.clone());
    let elements: Vec<_> = j.elements.iter().map(|e| (e.name.clone(), e.a.clone(), e.b.clone())).collect();
    let act_a: Vec<_> = j.act_a.iter().map(triple).collect();
    let act_b: Vec<_> = j.act_b.iter().map(triple).collect();
    Profunctor::from_names(a, b, &elements, &act_a, &act_b).map_err(|e| err(path, e))
}

pub fn cylinder_to_json(x: &Cylinder) -> CylinderJson {
    CylinderJson {
        structure: map_to_json(&x.structure),
    }
}

pub fn cylinder_from_json(j: &CylinderJson, path: &str) -> Result<Cylinder, InputError> {
    let p = map_from_json(&j.structure, path)?;
    make_cylinder(&p).map_err(|e| err(path, e))
}

/// Any of the file kinds, told apart by their keys.
pub enum Document {
    SSet(SimplicialSet),
    Map(SimplicialMap),
    Category(FiniteCategory),
    Profunctor(Profunctor),
    Cylinder(Cylinder),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::SSet(_) => "sset",
            Document::Map(_) => "map",
            Document::Category(_) => "category",
            Document::Profunctor(_) => "profunctor",
            Document::Cylinder(_) => "cylinder",
        }
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, path: &str) -> Result<T, InputError> {
    serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let msg = msg.rsplit_once(" at line ").map_or(msg.as_str(), |(m, _)| m).to_string();
        err(path, format!("line {}, column {}: {msg}", e.line(), e.column()))
    })
}

pub fn read_text(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| err(&path.display().to_string(), e))
}

pub fn read_document(path: &Path) -> Result<Document, InputError> {
    let p = path.display().to_string();
    let text = read_text(path)?;
    let v: Value = parse(&text, &p)?;
    let has = |k: &str| v.get(k).is_some();
    if has("structure") {
        Ok(Document::Cylinder(cylinder_from_json(&parse(&text, &p)?, &p)?))
    } else if has("assignment") {
        Ok(Document::Map(map_from_json(&parse(&text, &p)?, &p)?))
    } else if has("elements") {
        Ok(Document::Profunctor(profunctor_from_json(&parse(&text, &p)?, &p)?))
    } else if has("objects") {
        Ok(Document::Category(category_from_json(&parse(&text, &p)?, &p)?))
    } else if has("generators") {
        Ok(Document::SSet(sset_from_json(&parse(&text, &p)?, &p)?))
    } else {
        Err(err(&p, "not a simplicial set, map, category, profunctor or cylinder file"))
    }
}

pub fn read_sset(path: &Path) -> Result<SimplicialSet, InputError> {
    match read_document(path)? {
        Document::SSet(x) => Ok(x),
        d => Err(err(&path.display().to_string(), format!("expected a simplicial set, found a {}", d.kind()))),
    }
}

pub fn read_map(path: &Path) -> Result<SimplicialMap, InputError> {
    match read_document(path)? {
        Document::Map(f) => Ok(f),
        Document::Cylinder(x) => Ok(x.structure),
        d => Err(err(&path.display().to_string(), format!("expected a map, found a {}", d.kind()))),
    }
}

pub fn read_category(path: &Path) -> Result<FiniteCategory, InputError> {
    match read_document(path)? {
        Document::Category(c) => Ok(c),
        d => Err(err(&path.display().to_string(), format!("expected a category, found a {}", d.kind()))),
    }
}

pub fn read_profunctor(path: &Path) -> Result<Profunctor, InputError> {
    match read_document(path)? {
        Document::Profunctor(m) => Ok(m),
        d => Err(err(&path.display().to_string(), format!("expected a profunctor, found a {}", d.kind()))),
    }
}

/// A cylinder file, or a map to `Δ[1]`.
pub fn read_cylinder(path: &Path) -> Result<Cylinder, InputError> {
    let p = path.display().to_string();
    match read_document(path)? {
        Document::Cylinder(x) => Ok(x),
        Document::Map(f) => make_cylinder(&f).map_err(|e| err(&p, e)),
        d => Err(err(&p, format!("expected a cylinder, found a {}", d.kind()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cylkit::category::nerve;
    use cylkit::standard::*;

    #[test]
    fn sset_round_trip() {
        for x in [simplex(2), horn(3, 1).unwrap(), j_truncated(2), empty()] {
            let j = sset_to_json(&x);
            let y = sset_from_json(&j, "t").unwrap();
            assert_eq!(x, y);
            assert_eq!(sset_to_json(&y), j);
        }
    }

    #[test]
    fn map_round_trip() {
        let f = SimplicialMap::to_point(&simplex(2), &point());
        let j = map_to_json(&f);
        assert_eq!(map_from_json(&j, "t").unwrap(), f);
    }

    #[test]
    fn category_round_trip() {
        for c in [FiniteCategory::ordinal(2), FiniteCategory::free_isomorphism(), FiniteCategory::parallel_pair()] {
            let d = category_from_json(&category_to_json(&c), "t").unwrap();
            assert_eq!(nerve(&c, Some(3)).unwrap(), nerve(&d, Some(3)).unwrap());
        }
    }

    #[test]
    fn bad_face_is_located() {
        let mut j = sset_to_json(&simplex(1));
        j.faces.get_mut("01").unwrap()[0].target = "7".into();
        let e = sset_from_json(&j, "file.json").unwrap_err();
        assert!(e.0.starts_with("file.json:"), "{}", e.0);
        assert!(e.0.contains("01"), "{}", e.0);
    }
}
