//! JSON encoding of exact values.
//!
//! * rational: `"p/q"`
//! * Gaussian rational: `{"re": "p/q", "im": "p/q"}`
//! * polynomial: `{"vars": ["u"], "coeffs": [..]}` ascending in `u`, or
//!   `{"vars": ["u","v"], "coeffs": [[..], ..]}` with `coeffs[i][j]` the `u^i v^j` term
//! * matrix: `{"rows", "cols", "entries": [[i, j, value], ..]}` sorted by `(i, j)`;
//!   values are polynomials for polynomial matrices and Gaussian rationals for
//!   constant ones.

use serde::Serializer;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::{ConstMatrix, SparsePolyMatrix};
use crate::poly::SpectralPoly;
use crate::scalar::{parse_rational, rational_to_string, GaussianRational as GR, Rational};

pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_to_string(r))
}

pub fn rational(r: &Rational) -> Value {
    Value::String(rational_to_string(r))
}

pub fn gaussian(a: &GR) -> Value {
    json!({ "re": rational(&a.re()), "im": rational(&a.im()) })
}

pub fn poly(p: &SpectralPoly) -> Value {
    match p {
        SpectralPoly::U(q) => json!({ "vars": ["u"], "coeffs": q.coeffs().iter().map(gaussian).collect::<Vec<_>>() }),
        SpectralPoly::UV(_) => {
            let t: Vec<Vec<Value>> = p.table().iter().map(|r| r.iter().map(gaussian).collect()).collect();
            json!({ "vars": ["u", "v"], "coeffs": t })
        }
    }
}

pub fn poly_matrix(m: &SparsePolyMatrix) -> Value {
    let entries: Vec<Value> = m.iter().map(|(i, j, p)| json!([i, j, poly(p)])).collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

pub fn const_matrix(m: &ConstMatrix) -> Value {
    let entries: Vec<Value> = m.iter().map(|(i, j, a)| json!([i, j, gaussian(a)])).collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

fn bad(what: &str) -> Error {
    Error::Parse(format!("malformed {what}"))
}

pub fn parse_rational_value(v: &Value) -> Result<Rational> {
    parse_rational(v.as_str().ok_or_else(|| bad("rational"))?)
}

pub fn parse_gaussian(v: &Value) -> Result<GR> {
    match v {
        Value::String(_) => Ok(GR::from_rational(&parse_rational_value(v)?)),
        Value::Object(o) => {
            let re = o.get("re").map(parse_rational_value).transpose()?.unwrap_or_default();
            let im = o.get("im").map(parse_rational_value).transpose()?.unwrap_or_default();
            Ok(GR::new(re, im))
        }
        _ => Err(bad("gaussian rational")),
    }
}

pub fn parse_poly(v: &Value) -> Result<SpectralPoly> {
    let vars = v.get("vars").and_then(Value::as_array).ok_or_else(|| bad("polynomial"))?;
    let coeffs = v.get("coeffs").and_then(Value::as_array).ok_or_else(|| bad("polynomial"))?;
    match vars.len() {
        1 => {
            let c = coeffs.iter().map(parse_gaussian).collect::<Result<Vec<_>>>()?;
            Ok(SpectralPoly::from_table(c.into_iter().map(|a| vec![a]).collect()))
        }
        2 => {
            let t = coeffs
                .iter()
                .map(|r| r.as_array().ok_or_else(|| bad("polynomial row"))?.iter().map(parse_gaussian).collect())
                .collect::<Result<Vec<Vec<GR>>>>()?;
            Ok(SpectralPoly::from_table(t))
        }
        _ => Err(bad("polynomial variables")),
    }
}

fn parse_entries<T>(v: &Value, f: impl Fn(&Value) -> Result<T>) -> Result<(usize, usize, Vec<(usize, usize, T)>)> {
    let dim = |k: &str| v.get(k).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| bad("matrix"));
    let (rows, cols) = (dim("rows")?, dim("cols")?);
    let mut out = Vec::new();
    for e in v.get("entries").and_then(Value::as_array).ok_or_else(|| bad("matrix"))? {
        let e = e.as_array().filter(|e| e.len() == 3).ok_or_else(|| bad("matrix entry"))?;
        let i = e[0].as_u64().ok_or_else(|| bad("row index"))? as usize;
        let j = e[1].as_u64().ok_or_else(|| bad("column index"))? as usize;
        if i >= rows || j >= cols {
            return Err(bad("matrix index"));
        }
        out.push((i, j, f(&e[2])?));
    }
    Ok((rows, cols, out))
}

pub fn parse_poly_matrix(v: &Value) -> Result<SparsePolyMatrix> {
    let (r, c, e) = parse_entries(v, parse_poly)?;
    Ok(SparsePolyMatrix::from_triplets(r, c, e))
}

pub fn parse_const_matrix(v: &Value) -> Result<ConstMatrix> {
    let (r, c, e) = parse_entries(v, parse_gaussian)?;
    Ok(ConstMatrix::from_triplets(r, c, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::scalar::rat;

    #[test]
    fn roundtrip() {
        let p = SpectralPoly::U(Poly::from_coeffs(vec![GR::new(rat(1, 2), rat(-3, 4)), GR::from_int(2)]));
        assert_eq!(parse_poly(&poly(&p)).unwrap(), p);
        let q = SpectralPoly::u().mul(&SpectralPoly::v()).add(&SpectralPoly::one());
        assert_eq!(parse_poly(&poly(&q)).unwrap(), q);
        let m = SparsePolyMatrix::from_triplets(2, 3, [(1, 2, p.clone()), (0, 0, q.clone())]);
        let v = poly_matrix(&m);
        assert_eq!(v["entries"][0][0], 0);
        assert_eq!(parse_poly_matrix(&v).unwrap(), m);
        assert_eq!(gaussian(&GR::frac(3, 6))["re"], "1/2");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly(&json!({"coeffs": []})).is_err());
        assert!(parse_const_matrix(&json!({"rows": 1, "cols": 1, "entries": [[2, 0, "1/1"]]})).is_err());
    }
}
