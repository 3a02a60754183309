//! JSON input formats for groups, modules and Burnside ring elements, and the
//! encoding of exact rationals in reports.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::burnside::{BurnsideElement, BurnsideRing};
use crate::corpus::{augmentation_kernel, builtin_group, induced_sign};
use crate::error::{Error, Result};
use crate::exactla::IntMatrix;
use crate::grp::{group_from_generators, FiniteGroup, DEFAULT_GENERATION_BOUND};
use crate::zgmod::{
    coset_lattice, cyclic_module, regular_lattice, sign_lattice, trivial_lattice, FpModule,
    ZGLattice,
};

/// An exact rational as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalJson {
    fn from(q: &BigRational) -> Self {
        RationalJson {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

impl std::fmt::Display for RationalJson {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == "1" {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

pub fn rationals(xs: &[BigRational]) -> Vec<RationalJson> {
    xs.iter().map(RationalJson::from).collect()
}

pub fn matrix_json(m: &IntMatrix) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| parse_err(format!("not an integer: {n}"))),
        Value::String(s) => s.trim().parse().map_err(|_| parse_err(format!("not an integer: {s:?}"))),
        other => Err(parse_err(format!("expected an integer, found {other}"))),
    }
}

fn parse_usize(v: &Value) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(format!("expected a non-negative integer, found {v}")))
}

fn parse_usize_list(v: &Value) -> Result<Vec<usize>> {
    v.as_array()
        .ok_or_else(|| parse_err("expected a list of integers"))?
        .iter()
        .map(parse_usize)
        .collect()
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field {key:?}")))
}

/// Rows of integers; `expected_cols` fixes the column count of an empty matrix.
pub fn parse_matrix(v: &Value, expected_cols: Option<usize>) -> Result<IntMatrix> {
    let rows = v.as_array().ok_or_else(|| parse_err("expected a matrix (list of rows)"))?;
    let rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| parse_err("matrix rows must be lists"))?
                .iter()
                .map(parse_int)
                .collect()
        })
        .collect::<Result<_>>()?;
    let cols = rows.first().map(Vec::len).or(expected_cols).unwrap_or(0);
    IntMatrix::from_big_rows(rows, cols)
}

/// `{"generators": [[perm], ...]}` or `{"cayley_table": [[...], ...]}`,
/// optionally with `"labels"`.
pub fn parse_group(v: &Value) -> Result<FiniteGroup> {
    let group = if let Some(gens) = v.get("generators") {
        let perms = gens
            .as_array()
            .ok_or_else(|| parse_err("\"generators\" must be a list of permutations"))?
            .iter()
            .map(parse_usize_list)
            .collect::<Result<Vec<_>>>()?;
        group_from_generators(&perms, DEFAULT_GENERATION_BOUND)?
    } else if let Some(table) = v.get("cayley_table") {
        let rows = table
            .as_array()
            .ok_or_else(|| parse_err("\"cayley_table\" must be a list of rows"))?
            .iter()
            .map(parse_usize_list)
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::from_cayley_table(&rows)?
    } else {
        return Err(parse_err("group needs \"generators\" or \"cayley_table\""));
    };
    match v.get("labels") {
        Some(labels) => {
            let labels = labels
                .as_array()
                .ok_or_else(|| parse_err("\"labels\" must be a list of strings"))?
                .iter()
                .map(|l| l.as_str().map(String::from).ok_or_else(|| parse_err("labels must be strings")))
                .collect::<Result<Vec<_>>>()?;
            group.with_labels(labels)
        }
        None => Ok(group),
    }
}

/// A group from JSON text, or a built-in group written `builtin:NAME`.
pub fn parse_group_source(text: &str) -> Result<FiniteGroup> {
    let trimmed = text.trim();
    if let Some(name) = trimmed.strip_prefix("builtin:") {
        return builtin_group(name).ok_or_else(|| Error::InvalidGroup(format!("unknown built-in group {name}")));
    }
    parse_group(&serde_json::from_str(trimmed)?)
}

#[derive(Clone, Debug)]
pub enum ModuleInput {
    Lattice(ZGLattice),
    Presented(FpModule),
}

impl ModuleInput {
    pub fn presented(&self) -> FpModule {
        match self {
            ModuleInput::Lattice(l) => FpModule::from_lattice(l),
            ModuleInput::Presented(m) => m.clone(),
        }
    }

    pub fn as_lattice(&self) -> Option<&ZGLattice> {
        match self {
            ModuleInput::Lattice(l) => Some(l),
            ModuleInput::Presented(_) => None,
        }
    }

    fn direct_sum(self, other: ModuleInput) -> ModuleInput {
        match (self, other) {
            (ModuleInput::Lattice(a), ModuleInput::Lattice(b)) => ModuleInput::Lattice(a.direct_sum(&b)),
            (a, b) => ModuleInput::Presented(a.presented().direct_sum(&b.presented())),
        }
    }
}

fn parse_action(v: &Value, rank: usize) -> Result<BTreeMap<usize, IntMatrix>> {
    let obj = v.as_object().ok_or_else(|| parse_err("\"action\" must map element indices to matrices"))?;
    obj.iter()
        .map(|(k, m)| {
            let g: usize = k.parse().map_err(|_| parse_err(format!("bad element index {k:?}")))?;
            Ok((g, parse_matrix(m, Some(rank))?))
        })
        .collect()
}

fn class_field(v: &Value, key: &str, ring: &BurnsideRing) -> Result<usize> {
    let c = parse_usize(field(v, key)?)?;
    if c >= ring.class_count() {
        return Err(parse_err(format!("subgroup class {c} out of range")));
    }
    Ok(c)
}

fn construct_block(ring: &BurnsideRing, v: &Value) -> Result<ModuleInput> {
    let g = ring.group();
    let kind = field(v, "kind")?
        .as_str()
        .ok_or_else(|| parse_err("\"kind\" must be a string"))?;
    let block = match kind {
        "trivial" => ModuleInput::Lattice(trivial_lattice(g)),
        "regular" => ModuleInput::Lattice(regular_lattice(g)),
        "coset" => ModuleInput::Lattice(coset_lattice(g, ring.representative(class_field(v, "class", ring)?))),
        "sign" => ModuleInput::Lattice(sign_lattice(g, ring.representative(class_field(v, "kernel_class", ring)?))?),
        "induced_sign" => {
            let d = ring.representative(class_field(v, "class", ring)?);
            if d.order() != 2 {
                return Err(Error::InvalidModule("induced sign needs a subgroup of order 2".into()));
            }
            ModuleInput::Lattice(induced_sign(g, d)?)
        }
        "augmentation" => ModuleInput::Lattice(augmentation_kernel(g, ring.representative(class_field(v, "class", ring)?))?),
        "cyclic" => {
            let q = field(v, "order")?
                .as_u64()
                .filter(|&q| q > 0)
                .ok_or_else(|| parse_err("\"order\" must be a positive integer"))?;
            let kernel = match v.get("sign_kernel_class") {
                Some(_) => Some(ring.representative(class_field(v, "sign_kernel_class", ring)?)),
                None => None,
            };
            ModuleInput::Presented(cyclic_module(g, q, kernel)?)
        }
        other => return Err(parse_err(format!("unknown module kind {other:?}"))),
    };
    let copies = v.get("copies").map(parse_usize).transpose()?.unwrap_or(1);
    Ok((0..copies).fold(ModuleInput::Lattice(ZGLattice::zero(g.clone())), |acc, _| {
        acc.direct_sum(block.clone())
    }))
}

/// One of
/// `{"rank": r, "action": {"<element>": matrix, ...}}`,
/// `{"presentation": {"gens": n, "relations": [vector, ...], "action": {...}}}`,
/// `{"construct": [{"kind": ..., ...}, ...]}`.
/// Actions may list every element or only a generating set.
pub fn parse_module(ring: &BurnsideRing, v: &Value) -> Result<ModuleInput> {
    let group: &Arc<FiniteGroup> = ring.group();
    if let Some(blocks) = v.get("construct") {
        let blocks = blocks.as_array().ok_or_else(|| parse_err("\"construct\" must be a list"))?;
        return blocks.iter().try_fold(ModuleInput::Lattice(ZGLattice::zero(group.clone())), |acc, b| {
            Ok(acc.direct_sum(construct_block(ring, b)?))
        });
    }
    if let Some(p) = v.get("presentation") {
        let n = parse_usize(field(p, "gens")?)?;
        let relations = match p.get("relations") {
            Some(r) => {
                let cols = r
                    .as_array()
                    .ok_or_else(|| parse_err("\"relations\" must be a list of vectors"))?
                    .iter()
                    .map(|c| {
                        let col = c
                            .as_array()
                            .ok_or_else(|| parse_err("each relation must be a vector"))?
                            .iter()
                            .map(parse_int)
                            .collect::<Result<Vec<_>>>()?;
                        if col.len() != n {
                            return Err(parse_err(format!("relation of length {} with {n} generators", col.len())));
                        }
                        Ok(col)
                    })
                    .collect::<Result<Vec<_>>>()?;
                IntMatrix::from_columns(n, &cols)
            }
            None => IntMatrix::zeros(n, 0),
        };
        let images = parse_action(field(p, "action")?, n)?;
        return Ok(ModuleInput::Presented(FpModule::from_generator_images(
            group.clone(),
            relations,
            &images,
        )?));
    }
    let rank = parse_usize(field(v, "rank")?)?;
    let images = parse_action(field(v, "action")?, rank)?;
    Ok(ModuleInput::Lattice(ZGLattice::from_generator_images(
        group.clone(),
        rank,
        &images,
    )?))
}

/// `{"coeffs": {"<class>": n, ...}}`, `{"coeffs": [n, ...]}` or a bare list.
pub fn parse_burnside(ring: &BurnsideRing, v: &Value) -> Result<BurnsideElement> {
    let coeffs = v.get("coeffs").unwrap_or(v);
    let k = ring.class_count();
    let as_i64 = |x: &Value| x.as_i64().ok_or_else(|| parse_err(format!("coefficient {x} is not an integer")));
    match coeffs {
        Value::Array(xs) => ring.element(xs.iter().map(as_i64).collect::<Result<_>>()?),
        Value::Object(obj) => {
            let mut out = vec![0; k];
            for (key, x) in obj {
                let c: usize = key.parse().map_err(|_| parse_err(format!("bad class id {key:?}")))?;
                if c >= k {
                    return Err(parse_err(format!("subgroup class {c} out of range")));
                }
                out[c] = as_i64(x)?;
            }
            ring.element(out)
        }
        _ => Err(parse_err("Burnside element must be a list or an object of coefficients")),
    }
}

/// A list of element lists, each generating one decomposition group.
pub fn parse_d_list(v: &Value) -> Result<Vec<Vec<usize>>> {
    v.as_array()
        .ok_or_else(|| parse_err("expected a list of element lists"))?
        .iter()
        .map(parse_usize_list)
        .collect()
}
