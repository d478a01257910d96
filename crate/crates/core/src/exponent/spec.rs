//! JSON document format for exponent functions.
//!
//! ```json
//! {"dimension": 1,
//!  "domain": {"lo": ["-inf"], "hi": ["inf"]},
//!  "pieces": [{"box": {"lo": ["-inf"], "hi": ["inf"]}, "kind": "bumps",
//!              "base": 1.2, "height": 0.8,
//!              "plateau_halfwidth": 0.25, "support_halfwidth": 0.5,
//!              "centers": {"kind": "power", "rate": 2, "count": null, "offset": 0.5}}]}
//! ```
//!
//! `offset` and `transforms` are optional extensions; a negative `height`
//! makes the bumps dip below `base`.

use super::bump::{BumpSum, CenterKind, CenterSeq};
use super::value::{ExpValue, ExtNumber, PointwiseMap};
use super::{ExponentFunction, Piece, ValueSpec};
use crate::error::{Error, Result};
use crate::geometry::AxisBox;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoxDoc {
    pub lo: Vec<ExtNumber>,
    pub hi: Vec<ExtNumber>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CenterKindDoc {
    Exp,
    Power,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CentersDoc {
    pub kind: CenterKindDoc,
    pub rate: f64,
    #[serde(default)]
    pub count: Option<u64>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub offset: f64,
}

fn is_zero(v: &f64) -> bool {
    *v == 0.0
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PieceDoc {
    Constant {
        #[serde(rename = "box")]
        region: BoxDoc,
        value: ExtNumber,
    },
    Bumps {
        #[serde(rename = "box")]
        region: BoxDoc,
        base: f64,
        height: f64,
        plateau_halfwidth: f64,
        support_halfwidth: f64,
        centers: CentersDoc,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentDoc {
    pub dimension: usize,
    pub domain: BoxDoc,
    pub pieces: Vec<PieceDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub transforms: Vec<PointwiseMap>,
}

impl BoxDoc {
    fn to_box(&self) -> Result<AxisBox> {
        AxisBox::new(
            self.lo.iter().map(|v| v.0).collect(),
            self.hi.iter().map(|v| v.0).collect(),
        )
        .map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    fn from_box(b: &AxisBox) -> Self {
        BoxDoc {
            lo: b.lo.iter().map(|v| ExtNumber(*v)).collect(),
            hi: b.hi.iter().map(|v| ExtNumber(*v)).collect(),
        }
    }
}

impl ExponentDoc {
    pub fn build(&self) -> Result<ExponentFunction> {
        let domain = self.domain.to_box()?;
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for doc in &self.pieces {
            pieces.push(match doc {
                PieceDoc::Constant { region, value } => Piece {
                    region: region.to_box()?,
                    spec: ValueSpec::Constant(
                        ExpValue::new(value.0).map_err(|e| Error::InvalidSpec(e.to_string()))?,
                    ),
                },
                PieceDoc::Bumps {
                    region,
                    base,
                    height,
                    plateau_halfwidth,
                    support_halfwidth,
                    centers,
                } => Piece {
                    region: region.to_box()?,
                    spec: ValueSpec::Bumps(BumpSum::new(
                        *base,
                        *height,
                        *support_halfwidth,
                        *plateau_halfwidth,
                        CenterSeq {
                            kind: match centers.kind {
                                CenterKindDoc::Exp => CenterKind::Exp,
                                CenterKindDoc::Power => CenterKind::Power,
                            },
                            rate: centers.rate,
                            count: centers.count,
                            offset: centers.offset,
                        },
                    )?),
                },
            });
        }
        let mut p = ExponentFunction::new(self.dimension, domain, pieces)?;
        for m in &self.transforms {
            p = p.with_map(*m)?;
        }
        Ok(p)
    }

    pub fn from_function(p: &ExponentFunction) -> Self {
        ExponentDoc {
            dimension: p.dimension(),
            domain: BoxDoc::from_box(p.domain()),
            pieces: p
                .pieces()
                .iter()
                .map(|piece| match &piece.spec {
                    ValueSpec::Constant(v) => PieceDoc::Constant {
                        region: BoxDoc::from_box(&piece.region),
                        value: ExtNumber(v.to_f64()),
                    },
                    ValueSpec::Bumps(b) => PieceDoc::Bumps {
                        region: BoxDoc::from_box(&piece.region),
                        base: b.base,
                        height: b.amplitude,
                        plateau_halfwidth: b.shape.plateau_halfwidth,
                        support_halfwidth: b.shape.support_halfwidth,
                        centers: CentersDoc {
                            kind: match b.centers.kind {
                                CenterKind::Exp => CenterKindDoc::Exp,
                                CenterKind::Power => CenterKindDoc::Power,
                            },
                            rate: b.centers.rate,
                            count: b.centers.count,
                            offset: b.centers.offset,
                        },
                    },
                })
                .collect(),
            transforms: p.maps().to_vec(),
        }
    }
}

/// Parse an exponent spec from JSON text.
pub fn parse_exponent(text: &str) -> Result<ExponentFunction> {
    let doc: ExponentDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    doc.build()
}

/// Serialize an exponent to pretty JSON.
pub fn to_json(p: &ExponentFunction) -> String {
    serde_json::to_string_pretty(&ExponentDoc::from_function(p)).expect("exponent docs serialize")
}
