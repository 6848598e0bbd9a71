//! JSON file formats and the exact-float writer used for reports.
//!
//! An algebra element is a list with one entry per block; each entry is the
//! row-major list of `[re, im]` pairs of that block. Nested row lists and
//! bare real numbers are accepted on input. Operators are
//! `{"shape", "domain", "codomain", "entries"}` with `entries` a
//! `codomain × domain` array of elements, and submodule files are
//! `{"shape", "rank", "vectors"}` with each vector a list of `rank` elements.

use std::io;

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;

use crate::algebra::{AlgebraElement, AlgebraShape};
use crate::error::{Error, Result};
use crate::linalg::{CMat, C64};
use crate::linmap::AdjointableMap;
use crate::module::{ModuleAmbient, ModuleVector, Submodule};

struct BlockJson<'a>(&'a CMat);

impl Serialize for BlockJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m = self.0;
        let mut seq = s.serialize_seq(Some(m.len()))?;
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                let z = m[(r, c)];
                seq.serialize_element(&[z.re, z.im])?;
            }
        }
        seq.end()
    }
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.blocks().len()))?;
        for b in self.blocks() {
            seq.serialize_element(&BlockJson(b))?;
        }
        seq.end()
    }
}

impl Serialize for AdjointableMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AdjointableMap", 4)?;
        st.serialize_field("shape", self.shape())?;
        st.serialize_field("domain", &self.domain_rank())?;
        st.serialize_field("codomain", &self.codomain_rank())?;
        st.serialize_field("entries", &self.entries())?;
        st.end()
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn complex_from(v: &Value) -> Result<C64> {
    match v {
        Value::Number(x) => Ok(C64::new(x.as_f64().ok_or_else(|| invalid("bad number"))?, 0.0)),
        Value::Array(a) if a.len() == 2 => {
            let re = a[0].as_f64().ok_or_else(|| invalid("complex entry needs numbers"))?;
            let im = a[1].as_f64().ok_or_else(|| invalid("complex entry needs numbers"))?;
            Ok(C64::new(re, im))
        }
        _ => Err(invalid(format!("expected a number or [re, im], got {v}"))),
    }
}

fn is_scalar(v: &Value) -> bool {
    match v {
        Value::Number(_) => true,
        Value::Array(a) => a.len() == 2 && a.iter().all(Value::is_number),
        _ => false,
    }
}

fn block_from(v: &Value, n: usize) -> Result<CMat> {
    let items = v.as_array().ok_or_else(|| invalid("block must be an array"))?;
    let flat_layout = items.len() == n * n && (n != 1 || is_scalar(&items[0]));
    let flat: Vec<&Value> = if !flat_layout && items.len() == n {
        // nested rows
        let mut out = Vec::with_capacity(n * n);
        for row in items {
            let row = row.as_array().ok_or_else(|| invalid("block row must be an array"))?;
            if row.len() != n {
                return Err(invalid(format!("block row of length {}, expected {n}", row.len())));
            }
            out.extend(row.iter());
        }
        out
    } else {
        items.iter().collect()
    };
    if flat.len() != n * n {
        return Err(invalid(format!("block has {} entries, expected {}", flat.len(), n * n)));
    }
    let vals = flat.into_iter().map(complex_from).collect::<Result<Vec<_>>>()?;
    Ok(CMat::from_row_slice(n, n, &vals))
}

pub fn element_from_value(shape: &AlgebraShape, v: &Value) -> Result<AlgebraElement> {
    let blocks = v.as_array().ok_or_else(|| invalid("element must be an array of blocks"))?;
    if blocks.len() != shape.num_blocks() {
        return Err(invalid(format!(
            "element has {} blocks, shape {shape} needs {}",
            blocks.len(),
            shape.num_blocks()
        )));
    }
    let mats = blocks
        .iter()
        .enumerate()
        .map(|(b, v)| block_from(v, shape.block(b)))
        .collect::<Result<Vec<_>>>()?;
    AlgebraElement::from_blocks(shape, mats)
}

fn field<'a>(obj: &'a Value, name: &str) -> Result<&'a Value> {
    obj.get(name).ok_or_else(|| invalid(format!("missing field `{name}`")))
}

fn shape_from(obj: &Value) -> Result<AlgebraShape> {
    serde_json::from_value(field(obj, "shape")?.clone()).map_err(|e| invalid(format!("shape: {e}")))
}

fn usize_field(obj: &Value, name: &str) -> Result<usize> {
    field(obj, name)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| invalid(format!("`{name}` must be a nonnegative integer")))
}

pub fn operator_from_value(v: &Value) -> Result<AdjointableMap> {
    let shape = shape_from(v)?;
    let domain = usize_field(v, "domain")?;
    let codomain = usize_field(v, "codomain")?;
    let rows = field(v, "entries")?
        .as_array()
        .ok_or_else(|| invalid("`entries` must be an array of rows"))?;
    let entries = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| invalid("operator row must be an array"))?
                .iter()
                .map(|e| element_from_value(&shape, e))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    AdjointableMap::new(&shape, domain, codomain, &entries)
}

pub fn operator_from_str(s: &str) -> Result<AdjointableMap> {
    let v: Value = serde_json::from_str(s).map_err(|e| invalid(format!("operator JSON: {e}")))?;
    operator_from_value(&v)
}

/// Reads a spanning set and returns the submodule it generates.
pub fn submodule_from_value(v: &Value) -> Result<Submodule> {
    let shape = shape_from(v)?;
    let rank = usize_field(v, "rank")?;
    let amb = ModuleAmbient::new(&shape, rank);
    let vectors = field(v, "vectors")?
        .as_array()
        .ok_or_else(|| invalid("`vectors` must be an array"))?
        .iter()
        .map(|vec| {
            let entries = vec
                .as_array()
                .ok_or_else(|| invalid("module vector must be an array of elements"))?
                .iter()
                .map(|e| element_from_value(&shape, e))
                .collect::<Result<Vec<_>>>()?;
            if entries.len() != rank {
                return Err(invalid(format!(
                    "module vector has {} entries, rank is {rank}",
                    entries.len()
                )));
            }
            ModuleVector::new(&shape, entries)
        })
        .collect::<Result<Vec<_>>>()?;
    Submodule::span(&amb, &vectors)
}

pub fn submodule_from_str(s: &str) -> Result<Submodule> {
    let v: Value = serde_json::from_str(s).map_err(|e| invalid(format!("submodule JSON: {e}")))?;
    submodule_from_value(&v)
}

/// Writes a submodule as its orthonormal basis in the file format.
pub fn submodule_to_value(m: &Submodule) -> Value {
    let vectors: Vec<Vec<AlgebraElement>> = m
        .basis_vectors()
        .into_iter()
        .map(|v| v.entries().to_vec())
        .collect();
    serde_json::json!({
        "shape": m.ambient().shape,
        "rank": m.ambient().rank,
        "vectors": vectors,
    })
}

/// Pretty printer that writes every float with 17 significant digits.
struct ExactFormatter(PrettyFormatter<'static>);

impl Formatter for ExactFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }
    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        write!(w, "{:.16e}", value as f64)
    }
    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Pretty JSON with round-trippable floats; non-finite values become `null`.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, ExactFormatter(PrettyFormatter::new()));
    value
        .serialize(&mut ser)
        .map_err(|e| Error::InvalidInput(format!("serialization failed: {e}")))?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar;

    #[test]
    fn operator_round_trip() {
        let s = AlgebraShape::new(vec![2, 1]).unwrap();
        let a = AlgebraElement::from_blocks(
            &s,
            vec![
                CMat::from_row_slice(2, 2, &[scalar(1.0), C64::new(0.0, 2.0), scalar(3.0), scalar(-4.5)]),
                CMat::from_element(1, 1, C64::new(0.25, -1.0)),
            ],
        )
        .unwrap();
        let f = AdjointableMap::new(&s, 2, 1, &[vec![a.clone(), AlgebraElement::identity(&s)]]).unwrap();
        let text = to_json_string(&f).unwrap();
        let back = operator_from_str(&text).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn nested_rows_and_reals_are_accepted() {
        let s = AlgebraShape::matrix(2);
        let v: Value = serde_json::from_str("[[[1, 0], [[0, 1], 2]]]").unwrap();
        let e = element_from_value(&s, &v).unwrap();
        assert_eq!(e.block(0)[(1, 0)], C64::new(0.0, 1.0));
        assert_eq!(e.block(0)[(1, 1)], scalar(2.0));
        let bad: Value = serde_json::from_str("[[1, 2, 3]]").unwrap();
        assert!(element_from_value(&s, &bad).is_err());
    }

    #[test]
    fn submodule_file_round_trip() {
        let s = AlgebraShape::new(vec![2, 3]).unwrap();
        let amb = ModuleAmbient::new(&s, 2);
        let m = Submodule::coordinate(&amb, 1);
        let v = submodule_to_value(&m);
        let back = submodule_from_value(&v).unwrap();
        assert!(back.same_as(&m));
    }

    #[test]
    fn floats_are_written_exactly() {
        let text = to_json_string(&[0.1f64, f64::INFINITY]).unwrap();
        assert!(text.contains("1.0000000000000001e-1"));
        assert!(text.contains("null"));
        let back: Vec<Option<f64>> = serde_json::from_str(&text).unwrap();
        assert_eq!(back[0], Some(0.1));
    }
}
