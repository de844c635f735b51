//! JSON document formats.
//!
//! Rationals are strings (`"p/q"` or an integer string) so nothing is ever
//! rounded. Unknown fields are rejected. Reports serialise with stable key
//! order, so identical inputs produce byte-identical output.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use flatalg::algebra::{Counterexample, ProductTensor, SideValue, SuperAlgebra};
use flatalg::bilinear::{build_form, BilinearForm};
use flatalg::error::Error;
use flatalg::extensions::CocycleTensor;
use flatalg::scalar::Scalar;
use flatalg::space::{LinearMap, Parity, SuperSpace, Vector};

/// A coefficient map `basis label -> rational string`.
pub type ValueMap = BTreeMap<String, String>;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub value: ValueMap,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FormEntry {
    pub a: String,
    pub b: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FormDoc {
    pub parity: String,
    pub entries: Vec<FormEntry>,
}

/// An algebra (and optionally a form) as a storable document. Products not
/// listed are zero; the form, when present, is completed by supersymmetry.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub name: String,
    #[serde(default)]
    pub even_basis: Vec<String>,
    #[serde(default)]
    pub odd_basis: Vec<String>,
    #[serde(default)]
    pub products: Vec<ProductEntry>,
    #[serde(default)]
    pub form: Option<FormDoc>,
    #[serde(default)]
    pub metadata: BTreeMap<String, serde_json::Value>,
}

fn parse_parity(s: &str) -> Result<Parity, Error> {
    match s {
        "even" => Ok(Parity::Even),
        "odd" => Ok(Parity::Odd),
        other => Err(Error::ParityViolation(format!(
            "parity must be \"even\" or \"odd\", got \"{other}\""
        ))),
    }
}

impl AlgebraDocument {
    pub fn to_algebra(&self) -> Result<(SuperAlgebra, Option<BilinearForm>), Error> {
        let space = SuperSpace::new(self.even_basis.clone(), self.odd_basis.clone())?;
        let mut tensor = ProductTensor::new();
        for entry in &self.products {
            let i = space.index_of(&entry.left)?;
            let j = space.index_of(&entry.right)?;
            for (label, value) in &entry.value {
                let k = space.index_of(label)?;
                tensor.add_to(i, j, k, &Scalar::parse(value)?);
            }
        }
        let algebra = SuperAlgebra::new(space.clone(), tensor)?;
        let form = match &self.form {
            None => None,
            Some(doc) => {
                let parity = parse_parity(&doc.parity)?;
                let entries: Result<Vec<(String, String, Scalar)>, Error> = doc
                    .entries
                    .iter()
                    .map(|e| Ok((e.a.clone(), e.b.clone(), Scalar::parse(&e.value)?)))
                    .collect();
                Some(build_form(&space, parity, &entries?)?)
            }
        };
        Ok((algebra, form))
    }

    pub fn from_algebra(name: &str, alg: &SuperAlgebra, form: Option<&BilinearForm>) -> Self {
        let space = alg.space();
        AlgebraDocument {
            name: name.to_string(),
            even_basis: space.labels()[..space.even_dim()].to_vec(),
            odd_basis: space.labels()[space.even_dim()..].to_vec(),
            products: tensor_to_entries(space, alg.product()),
            form: form.map(|f| FormDoc {
                parity: f.parity().to_string(),
                entries: {
                    let mut out = Vec::new();
                    for i in space.indices() {
                        for j in space.indices() {
                            let v = f.basis_value(i, j);
                            if !v.is_zero() {
                                out.push(FormEntry {
                                    a: space.label(i).to_string(),
                                    b: space.label(j).to_string(),
                                    value: v.to_string(),
                                });
                            }
                        }
                    }
                    out
                },
            }),
            metadata: BTreeMap::new(),
        }
    }
}

pub fn tensor_to_entries(space: &SuperSpace, tensor: &ProductTensor) -> Vec<ProductEntry> {
    let mut grouped: BTreeMap<(usize, usize), ValueMap> = BTreeMap::new();
    for (i, j, k, v) in tensor.iter() {
        grouped
            .entry((i, j))
            .or_default()
            .insert(space.label(k).to_string(), v.to_string());
    }
    grouped
        .into_iter()
        .map(|((i, j), value)| ProductEntry {
            left: space.label(i).to_string(),
            right: space.label(j).to_string(),
            value,
        })
        .collect()
}

pub fn entries_to_tensor(
    space: &SuperSpace,
    entries: &[ProductEntry],
) -> Result<ProductTensor, Error> {
    let mut tensor = ProductTensor::new();
    for entry in entries {
        let i = space.index_of(&entry.left)?;
        let j = space.index_of(&entry.right)?;
        for (label, value) in &entry.value {
            let k = space.index_of(label)?;
            tensor.add_to(i, j, k, &Scalar::parse(value)?);
        }
    }
    Ok(tensor)
}

pub fn vector_to_map(v: &Vector) -> ValueMap {
    v.iter()
        .map(|(i, c)| (v.space().label(i).to_string(), c.to_string()))
        .collect()
}

pub fn map_to_vector(space: &SuperSpace, m: &ValueMap) -> Result<Vector, Error> {
    let mut v = space.zero_vector();
    for (label, value) in m {
        let i = space.index_of(label)?;
        let cur = v.coord(i) + Scalar::parse(value)?;
        v.set(i, cur);
    }
    Ok(v)
}

/// A linear map given by the images of basis vectors; absent labels map to
/// zero.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    #[serde(default)]
    pub images: BTreeMap<String, ValueMap>,
}

impl MapDoc {
    pub fn to_map(&self, domain: &SuperSpace, codomain: &SuperSpace) -> Result<LinearMap, Error> {
        let mut images = vec![codomain.zero_vector(); domain.dim()];
        for (label, value) in &self.images {
            let i = domain.index_of(label)?;
            images[i] = map_to_vector(codomain, value)?;
        }
        Ok(LinearMap::from_images(domain, codomain, &images))
    }

    pub fn from_map(map: &LinearMap) -> Self {
        let mut images = BTreeMap::new();
        for j in map.domain.indices() {
            let img = map.image_of_basis(j);
            if !img.is_zero() {
                images.insert(map.domain.label(j).to_string(), vector_to_map(&img));
            }
        }
        MapDoc { images }
    }
}

/// Candidate `(star, circ)` tables for `verify-pair`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDocument {
    #[serde(default)]
    pub star: Vec<ProductEntry>,
    #[serde(default)]
    pub circ: Vec<ProductEntry>,
}

/// Data file for `extend central`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CentralDataDoc {
    pub line_parity: String,
    #[serde(default)]
    pub mu: Vec<FormEntry>,
    #[serde(default)]
    pub gamma: Vec<FormEntry>,
}

/// Data file for `extend semidirect`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemidirectDataDoc {
    pub line_parity: String,
    #[serde(default)]
    pub delta: MapDoc,
    #[serde(default)]
    pub d: MapDoc,
    #[serde(default)]
    pub xi: MapDoc,
    #[serde(default)]
    pub g: MapDoc,
    #[serde(default)]
    pub a0: ValueMap,
    #[serde(default)]
    pub b0: ValueMap,
    #[serde(default)]
    pub alpha: Option<String>,
    #[serde(default)]
    pub beta: Option<String>,
}

/// Data file for `extend t-star` / `extend pi-t-star`: the trilinear
/// entries of the cochain.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleDataDoc {
    #[serde(default)]
    pub omega: Vec<TriEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriEntry {
    pub u: String,
    pub v: String,
    pub w: String,
    pub value: String,
}

impl CocycleDataDoc {
    pub fn to_tensor(&self, space: &SuperSpace, parity: Parity) -> Result<CocycleTensor, Error> {
        let mut t = CocycleTensor::empty(space.clone(), parity);
        for e in &self.omega {
            let i = space.index_of(&e.u)?;
            let j = space.index_of(&e.v)?;
            let k = space.index_of(&e.w)?;
            t.set(i, j, k, Scalar::parse(&e.value)?)?;
        }
        Ok(t)
    }
}

/// Data file for `extend double-even` / `extend double-odd`.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleDataDoc {
    #[serde(default)]
    pub lie_mode: bool,
    #[serde(default)]
    pub delta: MapDoc,
    #[serde(default)]
    pub d: MapDoc,
    #[serde(default)]
    pub delta_star: MapDoc,
    #[serde(default)]
    pub g: MapDoc,
    #[serde(default)]
    pub a0: ValueMap,
    #[serde(default)]
    pub b0: ValueMap,
    #[serde(default)]
    pub c0: ValueMap,
    #[serde(default)]
    pub alpha: Option<String>,
    #[serde(default)]
    pub lambda: Option<String>,
}

/// Data file for `verify-iso`: the images of the first algebra's basis.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsoDataDoc {
    #[serde(default)]
    pub images: BTreeMap<String, ValueMap>,
}

/// A counterexample in report form.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CounterexampleDoc {
    pub tuple: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clause: Option<String>,
    pub lhs: String,
    pub rhs: String,
}

impl From<&Counterexample> for CounterexampleDoc {
    fn from(cx: &Counterexample) -> Self {
        let side = |s: &SideValue| match s {
            SideValue::Scalar(v) => v.to_string(),
            SideValue::Vector(v) => format!("{v:?}"),
            SideValue::Map(m) => format!("{:?}", m.matrix),
        };
        CounterexampleDoc {
            tuple: cx.tuple.clone(),
            clause: cx.clause.clone(),
            lhs: side(&cx.lhs),
            rhs: side(&cx.rhs),
        }
    }
}

/// Derived product tables attached to a report.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct DerivedTables {
    #[serde(default)]
    pub star: Vec<ProductEntry>,
    #[serde(default)]
    pub circ: Vec<ProductEntry>,
}

/// The machine-readable outcome of a command. Key order is stable and the
/// exit code mirrors the overall verdict.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ReportDocument {
    pub command: String,
    pub verdicts: BTreeMap<String, bool>,
    #[serde(default)]
    pub counterexamples: Vec<CounterexampleDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derived_tables: Option<DerivedTables>,
    #[serde(default)]
    pub discrepancy_log: Vec<String>,
}

impl ReportDocument {
    pub fn new(command: &str) -> Self {
        ReportDocument {
            command: command.to_string(),
            verdicts: BTreeMap::new(),
            counterexamples: Vec::new(),
            derived_tables: None,
            discrepancy_log: Vec::new(),
        }
    }
}
