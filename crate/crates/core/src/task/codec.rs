//! JSON encoding of every value that crosses the task boundary.
//!
//! Scalars are `"num/den"` strings over `Q` and `{"num": [..], "den": [..]}`
//! coefficient lists (constant term first) over `F_q(t)`. Valuations and
//! rationals are `"a/b"` strings (`"inf"` for `+∞`), residues are integers
//! in `[0, q)`, matrices are row-major arrays.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use serde_json::{json, Map, Value};

use crate::cheese::{Ball, BallKind, OneVarSet, SwissCheese};
use crate::coding::{
    BallPair, CodeEntry, DefTypePresentation, FiniteSetInjection, GeomCode, PluckerCode, StCode, StPath, SymCode, Tag,
};
use crate::error::{Error, Result};
use crate::field::{Backend, FieldDescriptor, ResidueElem, Scalar, Val};
use crate::lattice::Lattice;
use crate::matrix::{MatrixK, ResMatrix, Snf};
use crate::submodule::{CoordType, Cut, ModuleStandardForm, RnlElement, TnElement};
use crate::vvspace::{NormPresentation, OrbitDecomposition, SeparatingBasis};

fn bad(msg: impl Into<String>) -> Error {
    Error::MalformedInput(msg.into())
}

pub trait Codec: Sized {
    fn to_json(&self) -> Value;
    fn from_json(field: &FieldDescriptor, v: &Value) -> Result<Self>;
}

fn field_of<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn object<'a>(v: &'a Value, keys: &[&str]) -> Result<&'a Map<String, Value>> {
    let m = v.as_object().ok_or_else(|| bad(format!("expected an object, got {v}")))?;
    if let Some(k) = m.keys().find(|k| !keys.contains(&k.as_str())) {
        return Err(bad(format!("unknown field {k:?}")));
    }
    Ok(m)
}

fn array(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("expected an array, got {v}")))
}

pub fn get<T: Codec>(field: &FieldDescriptor, v: &Value, key: &str) -> Result<T> {
    T::from_json(field, field_of(v, key)?)
}

impl Codec for u64 {
    fn to_json(&self) -> Value {
        json!(self)
    }

    fn from_json(_: &FieldDescriptor, v: &Value) -> Result<Self> {
        v.as_u64().ok_or_else(|| bad(format!("expected a non-negative integer, got {v}")))
    }
}

impl Codec for usize {
    fn to_json(&self) -> Value {
        json!(self)
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        usize::try_from(u64::from_json(f, v)?).map_err(|_| bad("integer too large"))
    }
}

impl Codec for i64 {
    fn to_json(&self) -> Value {
        json!(self)
    }

    fn from_json(_: &FieldDescriptor, v: &Value) -> Result<Self> {
        v.as_i64().ok_or_else(|| bad(format!("expected an integer, got {v}")))
    }
}

impl Codec for bool {
    fn to_json(&self) -> Value {
        json!(self)
    }

    fn from_json(_: &FieldDescriptor, v: &Value) -> Result<Self> {
        v.as_bool().ok_or_else(|| bad(format!("expected a boolean, got {v}")))
    }
}

impl<T: Codec> Codec for Vec<T> {
    fn to_json(&self) -> Value {
        Value::Array(self.iter().map(T::to_json).collect())
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        array(v)?.iter().map(|x| T::from_json(f, x)).collect()
    }
}

fn parse_ratio<T>(s: &str) -> Result<(T, T)>
where
    T: std::str::FromStr + From<u8>,
{
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n = n.parse().map_err(|_| bad(format!("bad rational {s:?}")))?;
    let d = d.parse().map_err(|_| bad(format!("bad rational {s:?}")))?;
    Ok((n, d))
}

impl Codec for Rational64 {
    fn to_json(&self) -> Value {
        json!(self.to_string())
    }

    fn from_json(_: &FieldDescriptor, v: &Value) -> Result<Self> {
        if let Some(n) = v.as_i64() {
            return Ok(Rational64::from_integer(n));
        }
        let s = v.as_str().ok_or_else(|| bad(format!("expected a rational, got {v}")))?;
        let (n, d): (i64, i64) = parse_ratio(s)?;
        if d == 0 {
            return Err(bad(format!("zero denominator in {s:?}")));
        }
        Ok(Rational64::new(n, d))
    }
}

impl Codec for Val {
    fn to_json(&self) -> Value {
        match self.finite() {
            Some(r) => r.to_json(),
            None => json!("inf"),
        }
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        if v.as_str() == Some("inf") {
            return Ok(Val::Infinite);
        }
        Ok(Val::Finite(Rational64::from_json(f, v)?))
    }
}

fn poly_from_json(f: &FieldDescriptor, v: &Value) -> Result<Vec<u64>> {
    let c = Vec::<u64>::from_json(f, v)?;
    let q = f.residue_order();
    if c.iter().any(|&x| x >= q) {
        return Err(bad(format!("coefficient outside F_{q}")));
    }
    Ok(c)
}

impl Codec for Scalar {
    fn to_json(&self) -> Value {
        if let Some(r) = self.as_rational() {
            return json!(r.to_string());
        }
        let r = self.as_ratfunc().expect("laurent scalar");
        json!({ "num": r.num, "den": r.den })
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        match f.backend() {
            Backend::Padic { .. } => {
                if let Some(n) = v.as_i64() {
                    return Ok(Scalar::from_int(f, n));
                }
                let s = v.as_str().ok_or_else(|| bad(format!("expected a \"num/den\" string, got {v}")))?;
                let (n, d): (BigInt, BigInt) = parse_ratio(s)?;
                if d == BigInt::from(0) {
                    return Err(bad(format!("zero denominator in {s:?}")));
                }
                Scalar::from_rational(f, BigRational::new(n, d))
            }
            Backend::Laurent { .. } => {
                object(v, &["num", "den"])?;
                let num = poly_from_json(f, field_of(v, "num")?)?;
                let den = match v.get("den") {
                    Some(d) => poly_from_json(f, d)?,
                    None => vec![1],
                };
                Scalar::from_ratfunc(f, num, den).map_err(|_| bad("zero denominator"))
            }
        }
    }
}

impl Codec for ResidueElem {
    fn to_json(&self) -> Value {
        json!(self.value())
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        ResidueElem::new(f.residue_field().clone(), u64::from_json(f, v)?).map_err(|e| bad(e.to_string()))
    }
}

/// Row-major; an empty array is a matrix with no rows.
pub fn rows_from_json(f: &FieldDescriptor, v: &Value) -> Result<Vec<Vec<Scalar>>> {
    Vec::<Vec<Scalar>>::from_json(f, v)
}

impl Codec for MatrixK {
    fn to_json(&self) -> Value {
        self.to_rows().to_json()
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        let rows = rows_from_json(f, v)?;
        if rows.is_empty() {
            return Err(bad("matrix with no rows"));
        }
        MatrixK::from_rows(f, rows).map_err(|e| bad(e.to_string()))
    }
}

fn res_matrix_to_json(m: &ResMatrix) -> Value {
    m.to_rows().to_json()
}

fn res_matrix_from_json(f: &FieldDescriptor, v: &Value, cols: usize) -> Result<ResMatrix> {
    let rows = Vec::<Vec<u64>>::from_json(f, v)?;
    let k = f.residue_field();
    if rows.iter().flatten().any(|&x| !k.contains(x)) {
        return Err(bad("residue outside the field"));
    }
    if rows.is_empty() {
        return Ok(ResMatrix::zeros(k, 0, cols));
    }
    ResMatrix::from_rows(k, rows).map_err(|e| bad(e.to_string()))
}

impl Codec for Lattice {
    fn to_json(&self) -> Value {
        json!({ "basis": self.basis().to_json(), "canonical": self.is_canonical() })
    }

    /// A lattice marked canonical must be given by its canonical basis.
    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        object(v, &["basis", "canonical"])?;
        let l = Lattice::new(get(f, v, "basis")?)?;
        let canonical = match v.get("canonical") {
            Some(c) => bool::from_json(f, c)?,
            None => false,
        };
        if canonical {
            let c = l.canon();
            if c.basis() != l.basis() {
                return Err(bad("basis marked canonical is not in canonical form"));
            }
            return Ok(c);
        }
        Ok(l)
    }
}

impl Codec for RnlElement {
    fn to_json(&self) -> Value {
        json!({ "lattice": self.lattice().to_json(), "subspace": res_matrix_to_json(self.subspace()) })
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        object(v, &["lattice", "subspace"])?;
        let lattice: Lattice = get(f, v, "lattice")?;
        let sub = res_matrix_from_json(f, field_of(v, "subspace")?, lattice.dim())?;
        RnlElement::new(lattice, sub)
    }
}

impl Codec for TnElement {
    fn to_json(&self) -> Value {
        json!({ "lattice": self.lattice().to_json(), "xi": self.xi() })
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        object(v, &["lattice", "xi"])?;
        TnElement::new(get(f, v, "lattice")?, get(f, v, "xi")?)
    }
}

impl Codec for Ball {
    fn to_json(&self) -> Value {
        let kind = match self.kind() {
            BallKind::Full => "full",
            BallKind::Closed => "closed",
            BallKind::Open => "open",
            BallKind::Point => "point",
        };
        let mut m = Map::new();
        m.insert("kind".into(), json!(kind));
        if let Some(c) = self.center() {
            m.insert("center".into(), c.to_json());
        }
        if let Some(r) = self.radius() {
            m.insert("radius".into(), r.to_json());
        }
        Value::Object(m)
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        object(v, &["kind", "center", "radius"])?;
        let kind = field_of(v, "kind")?.as_str().ok_or_else(|| bad("ball kind must be a string"))?;
        match kind {
            "full" => Ok(Ball::full()),
            "point" => Ok(Ball::point(get(f, v, "center")?)),
            "closed" => Ok(Ball::closed(&get(f, v, "center")?, get(f, v, "radius")?)),
            "open" => Ok(Ball::open(&get(f, v, "center")?, get(f, v, "radius")?)),
            k => Err(bad(format!("unknown ball kind {k:?}"))),
        }
    }
}

impl Codec for SwissCheese {
    fn to_json(&self) -> Value {
        json!({ "outer": self.outer.to_json(), "holes": self.holes.to_json() })
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        object(v, &["outer", "holes"])?;
        let holes = match v.get("holes") {
            Some(h) => Vec::from_json(f, h)?,
            None => Vec::new(),
        };
        Ok(SwissCheese::new(get(f, v, "outer")?, holes))
    }
}

impl Codec for OneVarSet {
    fn to_json(&self) -> Value {
        json!({ "cheeses": self.cheeses().to_vec().to_json(), "canonical": self.is_canonical() })
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        object(v, &["cheeses", "canonical"])?;
        let cheeses: Vec<SwissCheese> = get(f, v, "cheeses")?;
        let canonical = match v.get("canonical") {
            Some(c) => bool::from_json(f, c)?,
            None => false,
        };
        let s = OneVarSet::new(cheeses.clone());
        if canonical {
            let c = s.canonicalize();
            if c.cheeses() != cheeses.as_slice() {
                return Err(bad("set marked canonical is not in canonical form"));
            }
            return Ok(c);
        }
        Ok(s)
    }
}

impl Codec for Cut {
    fn to_json(&self) -> Value {
        json!({ "gamma": self.gamma.to_json(), "strict": self.strict })
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        object(v, &["gamma", "strict"])?;
        Ok(Cut { gamma: get(f, v, "gamma")?, strict: get(f, v, "strict")? })
    }
}

impl Codec for CoordType {
    fn to_json(&self) -> Value {
        json!(match self {
            CoordType::K => "K",
            CoordType::O => "O",
            CoordType::M => "M",
        })
    }

    fn from_json(_: &FieldDescriptor, v: &Value) -> Result<Self> {
        match v.as_str() {
            Some("K") => Ok(CoordType::K),
            Some("O") => Ok(CoordType::O),
            Some("M") => Ok(CoordType::M),
            _ => Err(bad(format!("unknown coordinate type {v}"))),
        }
    }
}

impl Codec for ModuleStandardForm {
    fn to_json(&self) -> Value {
        let (a, b, c) = self.signature;
        json!({
            "g": self.g.to_json(),
            "signature": [a, b, c],
            "shifts": self.shifts,
            "types": self.types.to_json(),
        })
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        object(v, &["g", "signature", "shifts", "types"])?;
        let g: MatrixK = get(f, v, "g")?;
        let sig: Vec<usize> = get(f, v, "signature")?;
        let shifts: Vec<i64> = get(f, v, "shifts")?;
        let types: Vec<CoordType> = get(f, v, "types")?;
        if sig.len() != 3 || !g.is_square() {
            return Err(bad("signature must have three entries and g must be square"));
        }
        let bounded = sig[1] + sig[2];
        if sig[0] + bounded > g.cols() || shifts.len() != bounded || types.len() != sig[0] + bounded {
            return Err(bad("signature, shifts and types disagree"));
        }
        if g.det()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(ModuleStandardForm { g, signature: (sig[0], sig[1], sig[2]), shifts, types })
    }
}

impl Codec for NormPresentation {
    fn to_json(&self) -> Value {
        json!({ "A": self.a.to_json(), "shifts": self.shifts.to_json() })
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        object(v, &["A", "shifts"])?;
        NormPresentation::new(get(f, v, "A")?, get(f, v, "shifts")?)
    }
}

impl Codec for SeparatingBasis {
    fn to_json(&self) -> Value {
        json!({ "w": self.w.to_json(), "delta": self.delta.to_json() })
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        object(v, &["w", "delta"])?;
        Ok(SeparatingBasis { w: get(f, v, "w")?, delta: get(f, v, "delta")? })
    }
}

impl Codec for OrbitDecomposition {
    fn to_json(&self) -> Value {
        json!({
            "representatives": self.representatives.to_json(),
            "filtration": self.filtration.iter().map(|m| m.to_rows().to_json()).collect::<Vec<_>>(),
            "classes": self.classes,
        })
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        object(v, &["representatives", "filtration", "classes"])?;
        let filtration = array(field_of(v, "filtration")?)?
            .iter()
            .map(|m| {
                let rows = rows_from_json(f, m)?;
                let cols = rows.first().map_or(0, Vec::len);
                if rows.is_empty() {
                    Ok(MatrixK::zeros(f, 0, cols))
                } else {
                    MatrixK::from_rows(f, rows).map_err(|e| bad(e.to_string()))
                }
            })
            .collect::<Result<_>>()?;
        Ok(OrbitDecomposition {
            representatives: get(f, v, "representatives")?,
            filtration,
            classes: get(f, v, "classes")?,
        })
    }
}

impl Codec for Snf<FieldDescriptor> {
    fn to_json(&self) -> Value {
        json!({
            "U": self.u.to_json(),
            "D": self.d.to_json(),
            "V": self.v.to_json(),
            "exponents": self.exponents,
        })
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        object(v, &["U", "D", "V", "exponents"])?;
        Ok(Snf { u: get(f, v, "U")?, d: get(f, v, "D")?, v: get(f, v, "V")?, exponents: get(f, v, "exponents")? })
    }
}

fn tagged(tag: &str, value: Value) -> Value {
    json!({ "tag": tag, "value": value })
}

fn untag(v: &Value) -> Result<(&str, &Value)> {
    object(v, &["tag", "value"])?;
    let tag = field_of(v, "tag")?.as_str().ok_or_else(|| bad("tag must be a string"))?;
    Ok((tag, field_of(v, "value")?))
}

impl Codec for CodeEntry {
    fn to_json(&self) -> Value {
        match self {
            CodeEntry::KTuple(x) => tagged("KTuple", x.to_json()),
            CodeEntry::ResTuple(x) => tagged("ResTuple", x.to_json()),
            CodeEntry::LatticeEntry(l) => tagged("Lattice", l.to_json()),
            CodeEntry::RnlEntry(e) => tagged("Rnl", e.to_json()),
            CodeEntry::TnEntry(e) => tagged("Tn", e.to_json()),
        }
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        let (tag, value) = untag(v)?;
        Ok(match tag {
            "KTuple" => CodeEntry::KTuple(Vec::from_json(f, value)?),
            "ResTuple" => CodeEntry::ResTuple(Vec::from_json(f, value)?),
            "Lattice" => CodeEntry::LatticeEntry(Lattice::from_json(f, value)?),
            "Rnl" => CodeEntry::RnlEntry(RnlElement::from_json(f, value)?),
            "Tn" => CodeEntry::TnEntry(TnElement::from_json(f, value)?),
            t => return Err(bad(format!("unknown code entry tag {t:?}"))),
        })
    }
}

impl Codec for GeomCode {
    fn to_json(&self) -> Value {
        self.0.to_json()
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        Ok(GeomCode(Vec::from_json(f, v)?))
    }
}

impl Codec for SymCode {
    fn to_json(&self) -> Value {
        json!({ "n": self.n, "m": self.m, "coefficients": self.coefficients.to_json() })
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        object(v, &["n", "m", "coefficients"])?;
        Ok(SymCode { n: get(f, v, "n")?, m: get(f, v, "m")?, coefficients: get(f, v, "coefficients")? })
    }
}

impl Codec for PluckerCode {
    fn to_json(&self) -> Value {
        json!({ "lattice": self.lattice.to_json(), "ell": self.ell, "line": self.line.to_json() })
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        object(v, &["lattice", "ell", "line"])?;
        Ok(PluckerCode { lattice: get(f, v, "lattice")?, ell: get(f, v, "ell")?, line: get(f, v, "line")? })
    }
}

impl Codec for StCode {
    fn to_json(&self) -> Value {
        let path = match &self.path {
            StPath::Base(e) => tagged("Base", e.to_json()),
            StPath::Kernel(s) => tagged("Kernel", s.to_json()),
            StPath::Split(t) => tagged("Split", t.to_json()),
        };
        json!({ "lattice": self.lattice.to_json(), "path": path })
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        object(v, &["lattice", "path"])?;
        let (tag, value) = untag(field_of(v, "path")?)?;
        let path = match tag {
            "Base" => StPath::Base(RnlElement::from_json(f, value)?),
            "Kernel" => StPath::Kernel(Box::new(StCode::from_json(f, value)?)),
            "Split" => StPath::Split(TnElement::from_json(f, value)?),
            t => return Err(bad(format!("unknown path tag {t:?}"))),
        };
        Ok(StCode { lattice: get(f, v, "lattice")?, path })
    }
}

impl Codec for DefTypePresentation {
    fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "d": self.d,
            "ideal": self.ideal.to_rows().to_json(),
            "norm": self.norm.to_json(),
        })
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        object(v, &["n", "d", "ideal", "norm"])?;
        let n: usize = get(f, v, "n")?;
        let d: usize = get(f, v, "d")?;
        let width = crate::coding::monomials_up_to(n, d).len();
        let rows = rows_from_json(f, field_of(v, "ideal")?)?;
        let ideal = if rows.is_empty() {
            MatrixK::zeros(f, 0, width)
        } else {
            MatrixK::from_rows(f, rows).map_err(|e| bad(e.to_string()))?
        };
        Ok(DefTypePresentation { n, d, ideal, norm: get(f, v, "norm")? })
    }
}

impl Codec for Tag {
    fn to_json(&self) -> Value {
        match self {
            Tag::Outside => json!("outside"),
            Tag::Res(r) => json!(r),
        }
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        if v.as_str() == Some("outside") {
            return Ok(Tag::Outside);
        }
        Ok(Tag::Res(u64::from_json(f, v)?))
    }
}

impl Codec for BallPair {
    fn to_json(&self) -> Value {
        json!({ "ball": self.ball.to_json(), "x": self.x.to_json(), "y": self.y.to_json(), "generic": self.generic })
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        object(v, &["ball", "x", "y", "generic"])?;
        Ok(BallPair {
            ball: get(f, v, "ball")?,
            x: get(f, v, "x")?,
            y: get(f, v, "y")?,
            generic: get(f, v, "generic")?,
        })
    }
}

impl Codec for FiniteSetInjection {
    fn to_json(&self) -> Value {
        let table: Vec<Value> =
            self.table.iter().map(|(z, t)| json!({ "point": z.to_json(), "tags": t.to_json() })).collect();
        json!({ "pairs": self.pairs.to_json(), "table": table })
    }

    fn from_json(f: &FieldDescriptor, v: &Value) -> Result<Self> {
        object(v, &["pairs", "table"])?;
        let table = array(field_of(v, "table")?)?
            .iter()
            .map(|row| {
                object(row, &["point", "tags"])?;
                Ok((get(f, row, "point")?, get(f, row, "tags")?))
            })
            .collect::<Result<_>>()?;
        Ok(FiniteSetInjection { pairs: get(f, v, "pairs")?, table })
    }
}
