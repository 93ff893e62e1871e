//! JSON encodings of every domain value, and manifest decoding.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use two_transit::transition1::Morphism1;
use two_transit::transition2::{Cocycle2, Morphism2, TwoMorphism2};
use two_transit::transition1::Transition1;
use two_transit::{CoverShape, CrossedModule, FinMap, FiniteGroup, NerveMap, RightAction, SimplicialComplex};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Group,
    Action,
    CrossedModule,
    Shape,
    Transition1,
    Cocycle2,
    Morphism1,
    Morphism2,
    TwoMorphism,
    Diagram,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Group => "group",
            Kind::Action => "action",
            Kind::CrossedModule => "crossed_module",
            Kind::Shape => "shape",
            Kind::Transition1 => "transition1",
            Kind::Cocycle2 => "cocycle2",
            Kind::Morphism1 => "morphism1",
            Kind::Morphism2 => "morphism2",
            Kind::TwoMorphism => "two_morphism",
            Kind::Diagram => "diagram",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub kind: Kind,
    pub payload: Value,
}

impl Manifest {
    pub fn new<T: Serialize>(kind: Kind, payload: &T) -> Self {
        Manifest {
            kind,
            payload: serde_json::to_value(payload).expect("wire types serialise"),
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::input(format!("not a manifest: {e}")))
    }

    /// The payload as `T`, after checking the declared kind.
    pub fn payload<T: for<'de> Deserialize<'de>>(&self, kind: Kind) -> Result<T, CliError> {
        if self.kind != kind {
            return Err(CliError::input(format!(
                "expected a {} manifest, found {}",
                kind.name(),
                self.kind.name()
            )));
        }
        serde_json::from_value(self.payload.clone())
            .map_err(|e| CliError::input(format!("bad {} payload: {e}", kind.name())))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionJson {
    pub group: GroupJson,
    pub set_size: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossedModuleJson {
    #[serde(rename = "H")]
    pub h: GroupJson,
    #[serde(rename = "D")]
    pub d_group: GroupJson,
    pub d: Vec<usize>,
    pub l: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CechJson {
    #[serde(rename = "U")]
    pub points: usize,
    #[serde(rename = "B")]
    pub base: usize,
    pub u: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub vertices: usize,
    pub faces: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeJson {
    Cech(CechJson),
    Complex(ComplexJson),
}

/// Values on `C2`, keyed by pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairValues {
    pub pairs: Vec<[usize; 2]>,
    pub values: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Transition1Json {
    pub shape: ShapeJson,
    pub group: GroupJson,
    pub g: PairValues,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cocycle2Json {
    pub shape: ShapeJson,
    pub xm: CrossedModuleJson,
    pub lambda: Vec<usize>,
    pub g: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Morphism1Json {
    pub source: Transition1Json,
    pub target: Transition1Json,
    pub beta: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Morphism2Json {
    pub source: Cocycle2Json,
    pub target: Cocycle2Json,
    pub mu: Vec<usize>,
    pub delta: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoMorphismJson {
    pub source: Morphism2Json,
    pub target: Morphism2Json,
    pub theta: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    pub xm: CrossedModuleJson,
    pub program: String,
    #[serde(default)]
    pub objects: BTreeMap<String, usize>,
    #[serde(default)]
    pub generators: BTreeMap<String, usize>,
}

impl GroupJson {
    pub fn decode(&self) -> Result<FiniteGroup, CliError> {
        if self.table.len() != self.order {
            return Err(CliError::input(format!(
                "group declares order {} but has {} rows",
                self.order,
                self.table.len()
            )));
        }
        Ok(FiniteGroup::from_table(&self.table)?)
    }
}

impl From<&FiniteGroup> for GroupJson {
    fn from(g: &FiniteGroup) -> Self {
        GroupJson {
            order: g.order(),
            table: g.table(),
        }
    }
}

impl ActionJson {
    pub fn decode(&self) -> Result<RightAction, CliError> {
        if self.table.len() != self.set_size {
            return Err(CliError::input(format!(
                "action declares {} points but has {} rows",
                self.set_size,
                self.table.len()
            )));
        }
        Ok(RightAction::new(self.group.decode()?, &self.table)?)
    }
}

impl From<&RightAction> for ActionJson {
    fn from(a: &RightAction) -> Self {
        ActionJson {
            group: a.group().into(),
            set_size: a.set_size(),
            table: a.table(),
        }
    }
}

impl CrossedModuleJson {
    /// Checks table shapes only.
    pub fn decode_unchecked(&self) -> Result<CrossedModule, CliError> {
        Ok(CrossedModule::new_unchecked(self.h.decode()?, self.d_group.decode()?, self.d.clone(), &self.l)?)
    }

    pub fn decode(&self) -> Result<CrossedModule, CliError> {
        let xm = self.decode_unchecked()?;
        xm.validate()?;
        Ok(xm)
    }
}

impl From<&CrossedModule> for CrossedModuleJson {
    fn from(xm: &CrossedModule) -> Self {
        CrossedModuleJson {
            h: xm.h().into(),
            d_group: xm.d_group().into(),
            d: xm.boundary().to_vec(),
            l: xm.action_table(),
        }
    }
}

impl ShapeJson {
    pub fn decode(&self) -> Result<CoverShape, CliError> {
        match self {
            ShapeJson::Cech(c) => {
                if c.u.len() != c.points {
                    return Err(CliError::input(format!(
                        "cover declares {} points but u has {} entries",
                        c.points,
                        c.u.len()
                    )));
                }
                Ok(CoverShape::cech(&FinMap::new(c.base, c.u.clone())?)?)
            }
            ShapeJson::Complex(k) => Ok(CoverShape::complex(&SimplicialComplex::new(k.vertices, &k.faces)?)),
        }
    }
}

impl From<&CoverShape> for ShapeJson {
    fn from(s: &CoverShape) -> Self {
        if let Some(u) = s.cover() {
            ShapeJson::Cech(CechJson {
                points: u.source_size(),
                base: u.target_size(),
                u: u.values().to_vec(),
            })
        } else {
            let k = s.simplicial_complex().expect("a shape comes from a cover or a complex");
            ShapeJson::Complex(ComplexJson {
                vertices: k.vertices(),
                faces: k.faces().cloned().collect(),
            })
        }
    }
}

impl PairValues {
    /// Values in the shape's enumeration order of `C2`.
    pub fn decode(&self, shape: &CoverShape) -> Result<Vec<usize>, CliError> {
        if self.pairs.len() != self.values.len() {
            return Err(CliError::input("pairs and values differ in length"));
        }
        let mut out = vec![usize::MAX; shape.size(2)];
        let mut seen = HashSet::new();
        for (pair, &v) in self.pairs.iter().zip(&self.values) {
            let p = shape
                .find(pair)
                .ok_or_else(|| CliError::input(format!("({}, {}) is not a pair of the shape", pair[0], pair[1])))?;
            if !seen.insert(p) {
                return Err(CliError::input(format!("pair ({}, {}) listed twice", pair[0], pair[1])));
            }
            out[p] = v;
        }
        if let Some(p) = out.iter().position(|&v| v == usize::MAX) {
            let t = shape.tuple(2, p);
            return Err(CliError::input(format!("no value for pair ({}, {})", t[0], t[1])));
        }
        Ok(out)
    }

    pub fn encode(shape: &CoverShape, values: &[usize]) -> Self {
        PairValues {
            pairs: (0..shape.size(2))
                .map(|p| [shape.apply(NerveMap::D0, p), shape.apply(NerveMap::D1, p)])
                .collect(),
            values: values.to_vec(),
        }
    }
}

impl Transition1Json {
    pub fn decode(&self) -> Result<Transition1, CliError> {
        let shape = Arc::new(self.shape.decode()?);
        let group = Arc::new(self.group.decode()?);
        let g = self.g.decode(&shape)?;
        Ok(Transition1::new(shape, group, g)?)
    }
}

impl From<&Transition1> for Transition1Json {
    fn from(t: &Transition1) -> Self {
        Transition1Json {
            shape: t.shape().as_ref().into(),
            group: t.group().as_ref().into(),
            g: PairValues::encode(t.shape(), t.values()),
        }
    }
}

impl Cocycle2Json {
    pub fn decode(&self) -> Result<Cocycle2, CliError> {
        let shape = Arc::new(self.shape.decode()?);
        let xm = Arc::new(self.xm.decode()?);
        Ok(Cocycle2::new(shape, xm, self.lambda.clone(), self.g.clone(), self.eta.clone())?)
    }
}

impl From<&Cocycle2> for Cocycle2Json {
    fn from(c: &Cocycle2) -> Self {
        Cocycle2Json {
            shape: c.shape().as_ref().into(),
            xm: c.crossed_module().as_ref().into(),
            lambda: c.lambda().to_vec(),
            g: c.g().to_vec(),
            eta: c.eta().map(<[usize]>::to_vec),
        }
    }
}

/// Decodes both endpoints once and shares their shape and crossed module.
fn decode_pair(a: &Cocycle2Json, b: &Cocycle2Json) -> Result<(Cocycle2, Cocycle2), CliError> {
    let source = a.decode()?;
    if a.shape != b.shape || a.xm != b.xm {
        return Err(CliError::input("endpoints live on different shapes or crossed modules"));
    }
    let target = Cocycle2::new(
        source.shape().clone(),
        source.crossed_module().clone(),
        b.lambda.clone(),
        b.g.clone(),
        b.eta.clone(),
    )?;
    Ok((source, target))
}

impl Morphism1Json {
    pub fn decode(&self) -> Result<Morphism1, CliError> {
        Ok(Morphism1::new(self.source.decode()?, self.target.decode()?, self.beta.clone())?)
    }
}

impl From<&Morphism1> for Morphism1Json {
    fn from(m: &Morphism1) -> Self {
        Morphism1Json {
            source: m.source().into(),
            target: m.target().into(),
            beta: m.beta().to_vec(),
        }
    }
}

impl Morphism2Json {
    pub fn decode(&self) -> Result<Morphism2, CliError> {
        let (source, target) = decode_pair(&self.source, &self.target)?;
        Ok(Morphism2::new(source, target, self.mu.clone(), self.delta.clone())?)
    }
}

impl From<&Morphism2> for Morphism2Json {
    fn from(m: &Morphism2) -> Self {
        Morphism2Json {
            source: m.source().into(),
            target: m.target().into(),
            mu: m.mu().to_vec(),
            delta: m.delta().to_vec(),
        }
    }
}

impl TwoMorphismJson {
    pub fn decode(&self) -> Result<TwoMorphism2, CliError> {
        Ok(TwoMorphism2::new(self.source.decode()?, self.target.decode()?, self.theta.clone())?)
    }
}

impl From<&TwoMorphism2> for TwoMorphismJson {
    fn from(w: &TwoMorphism2) -> Self {
        TwoMorphismJson {
            source: w.source().into(),
            target: w.target().into(),
            theta: w.theta().to_vec(),
        }
    }
}
