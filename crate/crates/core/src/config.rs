//! JSON configs and descriptor serialization. Integers are written as JSON
//! numbers and other rationals as `"p/q"` strings.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::ears::{construct, EarsDescriptor};
use crate::error::{Error, Result};
use crate::finite::RootType;
use crate::lattice::Lattice;
use crate::linalg::{format_rational, parse_rational, Rational, RationalVector};
use crate::semilattice::SemilatticeData;

pub fn rational_json(q: &Rational) -> Value {
    if q.is_integer() {
        if let Ok(n) = i64::try_from(q.numer()) {
            return Value::from(n);
        }
    }
    Value::from(format_rational(q))
}

pub fn vector_json(v: &RationalVector) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

pub fn parse_rational_json(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(crate::linalg::rat)
            .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
        Value::String(s) => parse_rational(s),
        other => Err(Error::Parse(format!("expected a number or \"p/q\", got {other}"))),
    }
}

pub fn parse_vector_json(v: &Value) -> Result<RationalVector> {
    match v {
        Value::Array(xs) => Ok(RationalVector::new(
            xs.iter().map(parse_rational_json).collect::<Result<_>>()?,
        )),
        other => Err(Error::Parse(format!("expected an array, got {other}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemilatticeConfig {
    /// Rows generating the lattice the cosets are taken in; `Z^nu` if absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<Vec<Value>>,
    pub cosets: Vec<Value>,
    #[serde(default)]
    pub translated: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EarsConfig {
    #[serde(rename = "type")]
    pub root_type: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    pub nullity: usize,
    #[serde(rename = "S")]
    pub s: SemilatticeConfig,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub l: Option<SemilatticeConfig>,
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub e: Option<SemilatticeConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra_roots: Vec<Value>,
}

pub fn semilattice_config(x: &SemilatticeData) -> SemilatticeConfig {
    SemilatticeConfig {
        lattice: Some(x.lattice().basis().iter().map(vector_json).collect()),
        cosets: x.cosets().iter().map(vector_json).collect(),
        translated: x.translated(),
    }
}

pub fn parse_config(text: &str) -> Result<EarsConfig> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn semilattice_from(cfg: &SemilatticeConfig, nullity: usize) -> Result<SemilatticeData> {
    let check = |v: RationalVector| {
        if v.dim() == nullity {
            Ok(v)
        } else {
            Err(Error::DimensionMismatch {
                expected: nullity,
                found: v.dim(),
            })
        }
    };
    let lattice = match &cfg.lattice {
        None => Lattice::standard(nullity),
        Some(rows) => {
            let rows: Vec<_> = rows
                .iter()
                .map(|r| parse_vector_json(r).and_then(check))
                .collect::<Result<_>>()?;
            Lattice::from_generators(nullity, &rows)
        }
    };
    let cosets: Vec<_> = cfg
        .cosets
        .iter()
        .map(|r| parse_vector_json(r).and_then(check))
        .collect::<Result<_>>()?;
    SemilatticeData::new(&lattice, &cosets, cfg.translated).map_err(|e| match e {
        Error::InvalidSemilattice(m) => Error::ConstraintViolation(m),
        other => other,
    })
}

impl EarsConfig {
    pub fn parsed_type(&self) -> Result<RootType> {
        let has_digits = self.root_type.chars().any(|c| c.is_ascii_digit());
        let symbol = match (has_digits, self.rank) {
            (true, _) => self.root_type.clone(),
            (false, Some(r)) => format!("{}{}", self.root_type, r),
            (false, None) => return Err(Error::Parse(format!("type `{}` needs a rank", self.root_type))),
        };
        let t: RootType = symbol.parse()?;
        if let Some(r) = self.rank {
            if r != t.rank {
                return Err(Error::RankMismatch(t.rank, r));
            }
        }
        Ok(t)
    }

    pub fn to_descriptor(&self) -> Result<EarsDescriptor> {
        let t = self.parsed_type()?;
        let nu = self.nullity;
        let s = semilattice_from(&self.s, nu)?;
        let l = self.l.as_ref().map(|c| semilattice_from(c, nu)).transpose()?;
        let e = self.e.as_ref().map(|c| semilattice_from(c, nu)).transpose()?;
        let r = construct(t, s, l, e)?;
        if self.extra_roots.is_empty() {
            return Ok(r);
        }
        let extra = self
            .extra_roots
            .iter()
            .map(parse_vector_json)
            .collect::<Result<Vec<_>>>()?;
        r.with_extra_roots(extra)
    }

    /// Canonical config of a descriptor.
    pub fn from_descriptor(r: &EarsDescriptor) -> Self {
        let t = r.root_type();
        let sl = semilattice_config;
        Self {
            root_type: t.to_string(),
            rank: Some(t.rank),
            nullity: r.nullity(),
            s: sl(r.s()),
            l: r.l().map(sl),
            e: r.e().map(sl),
            extra_roots: r.extra_roots().iter().map(vector_json).collect(),
        }
    }
}

/// Config JSON for a descriptor, pretty-printed.
pub fn descriptor_json(r: &EarsDescriptor) -> String {
    serde_json::to_string_pretty(&EarsConfig::from_descriptor(r)).expect("serializable")
}
