//! JSON document schemas: groupoids (with the pair-groupoid convention
//! making composition tables optional), named algebra elements with
//! exact integer-pair rationals, directed graphs, and morphisms with
//! generator shorthands. Serialization is canonical: sorted keys,
//! reduced fractions, no floats anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use weylkit_core::algebra::AlgebraElement;
use weylkit_core::groupoid::{Arrow, FiniteGroupoid, GroupoidMap};
use weylkit_core::morphism::{MorphismSpec, PairMorphism};
use weylkit_core::pair::DiagonalPair;
use weylkit_core::scalar::GaussianRational;

use crate::CliError;

pub const GROUPOID_SCHEMA: &str = "weylkit-groupoid/1";
pub const GRAPH_SCHEMA: &str = "weylkit-graph/1";
pub const MORPHISM_SCHEMA: &str = "weylkit-morphism/1";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ArrowDocument {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// One coefficient of an element: exact rationals as `[num, den]`
/// integer pairs.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CoefficientDocument {
    pub arrow: String,
    pub re: [i64; 2],
    pub im: [i64; 2],
}

/// A finite groupoid document. When `compose`, `unit_arrows` or
/// `inverse` are omitted they are derived by the pair-groupoid
/// convention: at most one arrow per (target, source) pair, composition
/// by endpoint matching.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupoidDocument {
    pub schema: String,
    pub units: Vec<String>,
    pub arrows: Vec<ArrowDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compose: Option<Vec<[String; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_arrows: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub elements: BTreeMap<String, Vec<CoefficientDocument>>,
}

impl GroupoidDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: GroupoidDocument =
            serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
        if doc.schema != GROUPOID_SCHEMA {
            return Err(CliError::Input(format!(
                "expected schema {GROUPOID_SCHEMA:?}, found {:?}",
                doc.schema
            )));
        }
        Ok(doc)
    }

    /// Canonical serialization: pretty JSON with sorted keys.
    pub fn serialize(&self) -> String {
        let value = serde_json::to_value(self).expect("document serializes");
        format!(
            "{}\n",
            serde_json::to_string_pretty(&value).expect("value prints")
        )
    }

    /// Builds the groupoid, deriving missing structure by the pair
    /// convention, and keeps overrides literal so that broken
    /// structures can be expressed for validation.
    pub fn to_groupoid(&self) -> Result<Arc<FiniteGroupoid>, CliError> {
        let unit_index: BTreeMap<&str, usize> = self
            .units
            .iter()
            .enumerate()
            .map(|(i, u)| (u.as_str(), i))
            .collect();
        if unit_index.len() != self.units.len() {
            return Err(CliError::Input("duplicate unit ids".into()));
        }
        let mut arrows = Vec::with_capacity(self.arrows.len());
        let mut arrow_index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, a) in self.arrows.iter().enumerate() {
            let src = *unit_index
                .get(a.src.as_str())
                .ok_or_else(|| CliError::Input(format!("unknown unit {:?}", a.src)))?;
            let dst = *unit_index
                .get(a.dst.as_str())
                .ok_or_else(|| CliError::Input(format!("unknown unit {:?}", a.dst)))?;
            if arrow_index.insert(a.id.as_str(), i).is_some() {
                return Err(CliError::Input(format!("duplicate arrow id {:?}", a.id)));
            }
            arrows.push(Arrow {
                id: a.id.clone(),
                source: src,
                target: dst,
            });
        }
        let lookup_arrow = |id: &str| -> Result<usize, CliError> {
            arrow_index
                .get(id)
                .cloned()
                .ok_or_else(|| CliError::Input(format!("unknown arrow {id:?}")))
        };
        let n = arrows.len();

        // pair-groupoid convention needs at most one arrow per ordered
        // (target, source) pair
        let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, a) in arrows.iter().enumerate() {
            by_pair.entry((a.target, a.source)).or_default().push(i);
        }
        let unique_pair = |t: usize, s: usize| -> Result<usize, CliError> {
            match by_pair.get(&(t, s)).map(Vec::as_slice) {
                Some([one]) => Ok(*one),
                Some(_) => Err(CliError::Input(
                    "pair convention needs at most one arrow per (target, source) pair; \
                     provide an explicit composition table"
                        .into(),
                )),
                None => Err(CliError::Input(format!(
                    "pair convention misses an arrow {} -> {}",
                    s, t
                ))),
            }
        };

        let compose = match &self.compose {
            Some(entries) => {
                let mut table = vec![None; n * n];
                for [left, right, result] in entries {
                    let b = lookup_arrow(left)?;
                    let a = lookup_arrow(right)?;
                    let c = lookup_arrow(result)?;
                    table[b * n + a] = Some(c);
                }
                table
            }
            None => {
                let mut table = vec![None; n * n];
                for b in 0..n {
                    for a in 0..n {
                        if arrows[b].source == arrows[a].target {
                            table[b * n + a] =
                                Some(unique_pair(arrows[b].target, arrows[a].source)?);
                        }
                    }
                }
                table
            }
        };
        let unit_arrows = match &self.unit_arrows {
            Some(map) => {
                let mut out = Vec::with_capacity(self.units.len());
                for u in &self.units {
                    let id = map
                        .get(u)
                        .ok_or_else(|| CliError::Input(format!("unit {u:?} has no unit arrow")))?;
                    out.push(lookup_arrow(id)?);
                }
                out
            }
            None => {
                let mut out = Vec::with_capacity(self.units.len());
                for u in 0..self.units.len() {
                    out.push(unique_pair(u, u)?);
                }
                out
            }
        };
        let inverse = match &self.inverse {
            Some(map) => {
                let mut out = Vec::with_capacity(n);
                for a in &arrows {
                    let id = map.get(&a.id).ok_or_else(|| {
                        CliError::Input(format!("arrow {:?} has no inverse entry", a.id))
                    })?;
                    out.push(lookup_arrow(id)?);
                }
                out
            }
            None => {
                let mut out = Vec::with_capacity(n);
                for a in &arrows {
                    out.push(unique_pair(a.source, a.target)?);
                }
                out
            }
        };
        let g =
            FiniteGroupoid::from_parts(self.units.clone(), arrows, unit_arrows, compose, inverse)
                .map_err(|e| CliError::Input(e.to_string()))?;
        Ok(g.shared())
    }

    /// The canonical document of a groupoid: structure tables are
    /// emitted only when the pair convention cannot derive them.
    pub fn from_groupoid(g: &FiniteGroupoid) -> Self {
        let arrows: Vec<ArrowDocument> = g
            .arrows()
            .iter()
            .map(|a| ArrowDocument {
                id: a.id.clone(),
                src: g.unit_id(a.source).to_string(),
                dst: g.unit_id(a.target).to_string(),
            })
            .collect();
        let mut doc = GroupoidDocument {
            schema: GROUPOID_SCHEMA.to_string(),
            units: g.units().to_vec(),
            arrows,
            compose: None,
            unit_arrows: None,
            inverse: None,
            elements: BTreeMap::new(),
        };
        // keep the document minimal when the convention reproduces the
        // structure exactly
        let derivable = doc
            .to_groupoid()
            .map(|derived| *derived == *g)
            .unwrap_or(false);
        if !derivable {
            let mut compose = Vec::new();
            for b in 0..g.arrow_count() {
                for a in 0..g.arrow_count() {
                    if let Some(c) = g.compose(b, a) {
                        compose.push([
                            g.arrow(b).id.clone(),
                            g.arrow(a).id.clone(),
                            g.arrow(c).id.clone(),
                        ]);
                    }
                }
            }
            doc.compose = Some(compose);
            doc.unit_arrows = Some(
                (0..g.unit_count())
                    .map(|u| {
                        (
                            g.unit_id(u).to_string(),
                            g.arrow(g.unit_arrow(u)).id.clone(),
                        )
                    })
                    .collect(),
            );
            doc.inverse = Some(
                (0..g.arrow_count())
                    .map(|a| (g.arrow(a).id.clone(), g.arrow(g.inverse(a)).id.clone()))
                    .collect(),
            );
        }
        doc
    }

    /// Decodes a named element over the parsed groupoid.
    pub fn element(&self, g: &Arc<FiniteGroupoid>, name: &str) -> Result<AlgebraElement, CliError> {
        let coeffs = self
            .elements
            .get(name)
            .ok_or_else(|| CliError::Input(format!("no element named {name:?}")))?;
        decode_element(g, coeffs)
    }
}

pub fn decode_element(
    g: &Arc<FiniteGroupoid>,
    coeffs: &[CoefficientDocument],
) -> Result<AlgebraElement, CliError> {
    let mut el = AlgebraElement::zero(g);
    for c in coeffs {
        let arrow = g
            .arrow_index(&c.arrow)
            .ok_or_else(|| CliError::Input(format!("unknown arrow {:?}", c.arrow)))?;
        if c.re[1] == 0 || c.im[1] == 0 {
            return Err(CliError::Input("zero denominator".into()));
        }
        el.set_coeff(
            arrow,
            GaussianRational::from_parts(c.re[0], c.re[1], c.im[0], c.im[1]),
        );
    }
    Ok(el)
}

pub fn encode_element(el: &AlgebraElement) -> Result<Vec<CoefficientDocument>, CliError> {
    let g = el.groupoid();
    let to_pair = |r: &BigRational| -> Result<[i64; 2], CliError> {
        let int = |b: &BigInt| -> Result<i64, CliError> {
            i64::try_from(b.clone())
                .map_err(|_| CliError::Input("coefficient exceeds the document range".into()))
        };
        let (mut num, mut den) = (r.numer().clone(), r.denom().clone());
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Ok([int(&num)?, int(&den)?])
    };
    el.support()
        .into_iter()
        .map(|a| {
            let c = el.coeff(a);
            Ok(CoefficientDocument {
                arrow: g.arrow(a).id.clone(),
                re: to_pair(&c.re)?,
                im: to_pair(&c.im)?,
            })
        })
        .collect()
}

/// A finite directed graph document for the boundary-path generators.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphDocument {
    pub schema: String,
    pub vertices: Vec<String>,
    pub edges: Vec<ArrowDocument>,
}

impl GraphDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: GraphDocument =
            serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
        if doc.schema != GRAPH_SCHEMA {
            return Err(CliError::Input(format!(
                "expected schema {GRAPH_SCHEMA:?}, found {:?}",
                doc.schema
            )));
        }
        Ok(doc)
    }

    pub fn serialize(&self) -> String {
        let value = serde_json::to_value(self).expect("document serializes");
        format!(
            "{}\n",
            serde_json::to_string_pretty(&value).expect("value prints")
        )
    }
}

/// Morphism documents: explicit basis images, or one of the generator
/// shorthands (`embedding`, `iso`, `quotient`, `tensor`).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MorphismBody {
    Images {
        source: GroupoidDocument,
        target: GroupoidDocument,
        images: Vec<ImageDocument>,
    },
    Embedding {
        source: GroupoidDocument,
        target: GroupoidDocument,
    },
    Iso {
        source: GroupoidDocument,
        target: GroupoidDocument,
        unit_map: BTreeMap<String, String>,
    },
    Quotient {
        source: GroupoidDocument,
        set: Vec<String>,
    },
    Tensor {
        left: Box<MorphismDocument>,
        right: Box<MorphismDocument>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ImageDocument {
    pub arrow: String,
    pub element: Vec<CoefficientDocument>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismDocument {
    pub schema: String,
    #[serde(flatten)]
    pub body: MorphismBody,
}

impl MorphismDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: MorphismDocument =
            serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
        if doc.schema != MORPHISM_SCHEMA {
            return Err(CliError::Input(format!(
                "expected schema {MORPHISM_SCHEMA:?}, found {:?}",
                doc.schema
            )));
        }
        Ok(doc)
    }

    pub fn to_morphism(&self) -> Result<PairMorphism, CliError> {
        match &self.body {
            MorphismBody::Images {
                source,
                target,
                images,
            } => {
                let src = source.to_groupoid()?;
                let tgt = target.to_groupoid()?;
                let source_pair =
                    DiagonalPair::new(src.clone()).map_err(|e| CliError::Input(e.to_string()))?;
                let target_pair =
                    DiagonalPair::new(tgt.clone()).map_err(|e| CliError::Input(e.to_string()))?;
                let mut table: BTreeMap<usize, AlgebraElement> = BTreeMap::new();
                for img in images {
                    let arrow = src
                        .arrow_index(&img.arrow)
                        .ok_or_else(|| CliError::Input(format!("unknown arrow {:?}", img.arrow)))?;
                    table.insert(arrow, decode_element(&tgt, &img.element)?);
                }
                let basis = (0..src.arrow_count())
                    .map(|a| {
                        table
                            .get(&a)
                            .cloned()
                            .unwrap_or_else(|| AlgebraElement::zero(&tgt))
                    })
                    .collect();
                PairMorphism::new(source_pair, target_pair, basis)
                    .map_err(|e| CliError::Input(e.to_string()))
            }
            MorphismBody::Embedding { source, target } => {
                let spec = MorphismSpec::Embedding {
                    sub: source.to_groupoid()?,
                    ambient: target.to_groupoid()?,
                };
                weylkit_core::morphism::build_morphism(&spec)
                    .map_err(|e| CliError::Input(e.to_string()))
            }
            MorphismBody::Iso {
                source,
                target,
                unit_map,
            } => {
                let src = source.to_groupoid()?;
                let tgt = target.to_groupoid()?;
                let map = iso_from_unit_map(&src, &tgt, unit_map)?;
                weylkit_core::morphism::build_morphism(&MorphismSpec::Isomorphism { map })
                    .map_err(|e| CliError::Input(e.to_string()))
            }
            MorphismBody::Quotient { source, set } => {
                let src = source.to_groupoid()?;
                let killed = unit_set(&src, set)?;
                weylkit_core::morphism::build_morphism(&MorphismSpec::Quotient {
                    groupoid: src,
                    killed,
                })
                .map_err(|e| CliError::Input(e.to_string()))
            }
            MorphismBody::Tensor { left, right } => {
                let l = left.to_morphism()?;
                let r = right.to_morphism()?;
                weylkit_core::tensor::tensor_morphism(&l, &r)
                    .map_err(|e| CliError::Input(e.to_string()))
            }
        }
    }
}

/// Extends a unit bijection to a groupoid isomorphism of principal
/// groupoids: each arrow maps to the unique arrow between the mapped
/// endpoints.
pub fn iso_from_unit_map(
    src: &Arc<FiniteGroupoid>,
    tgt: &Arc<FiniteGroupoid>,
    unit_map: &BTreeMap<String, String>,
) -> Result<GroupoidMap, CliError> {
    let mut table = vec![usize::MAX; src.unit_count()];
    for (from, to) in unit_map {
        let u = src
            .unit_index(from)
            .ok_or_else(|| CliError::Input(format!("unknown unit {from:?}")))?;
        let v = tgt
            .unit_index(to)
            .ok_or_else(|| CliError::Input(format!("unknown unit {to:?}")))?;
        table[u] = v;
    }
    if table.contains(&usize::MAX) {
        return Err(CliError::Input("unit map must cover every unit".into()));
    }
    let arrow_map = (0..src.arrow_count())
        .map(|a| {
            tgt.arrow_between(table[src.source(a)], table[src.target(a)])
                .ok_or_else(|| {
                    CliError::Input(format!(
                        "no arrow matches the image of {:?}; unit maps extend only over \
                         principal groupoids",
                        src.arrow(a).id
                    ))
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let map = GroupoidMap {
        domain: src.clone(),
        codomain: tgt.clone(),
        unit_map: table,
        arrow_map,
    };
    if !map.is_isomorphism() {
        return Err(CliError::Input(
            "unit map does not extend to an isomorphism".into(),
        ));
    }
    Ok(map)
}

/// Parses a comma-separated unit list into an index set.
pub fn unit_set(g: &Arc<FiniteGroupoid>, names: &[String]) -> Result<BTreeSet<usize>, CliError> {
    names
        .iter()
        .map(|n| {
            g.unit_index(n)
                .ok_or_else(|| CliError::Input(format!("unknown unit {n:?}")))
        })
        .collect()
}
