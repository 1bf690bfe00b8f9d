//! Task files: a JSON object naming a field, an operation and its operands,
//! run to a deterministic result document.
//!
//! ```json
//! {"field": "padic:3", "op": "val", "x": "9/2"}
//! ```
//!
//! Besides `field` and `op` a task may carry `seed` (default 0) and
//! `options` (`depth`, `retry_budget`, `degree`). Every other key is an
//! operand of the operation; unknown keys are rejected.

pub mod codec;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::cheese::{beta, Ball, OneVarSet};
use crate::coding::{
    finite_set_injection, lattice_generic_type, plucker_to_rnl, rn1_to_st, rnl_to_plucker, st_to_rn1, subspace_code,
    sym_code, sym_decode, type_code, DefTypePresentation, PluckerCode, StCode, SymCode,
};
use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, Scalar};
use crate::lattice::Lattice;
use crate::matrix::MatrixK;
use crate::submodule::{code_of_standard_form, Cut, ModulePresentation, RnlElement};
use crate::vvspace::NormPresentation;
use codec::Codec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub retry_budget: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
}

impl Options {
    pub fn depth(&self) -> usize {
        self.depth.unwrap_or(4)
    }

    pub fn retry_budget(&self) -> usize {
        self.retry_budget.unwrap_or(64)
    }

    pub fn degree(&self) -> usize {
        self.degree.unwrap_or(1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Task {
    pub field: FieldDescriptor,
    pub op: String,
    pub seed: u64,
    pub options: Options,
    pub operands: Map<String, Value>,
}

/// `(family, op, required operands, optional operands)`.
type OpSpec = (&'static str, &'static str, &'static [&'static str], &'static [&'static str]);

pub const OPS: &[OpSpec] = &[
    ("field", "val", &["x"], &[]),
    ("field", "residue", &["x"], &[]),
    ("field", "add", &["x", "y"], &[]),
    ("field", "sub", &["x", "y"], &[]),
    ("field", "mul", &["x", "y"], &[]),
    ("field", "div", &["x", "y"], &[]),
    ("field", "digits", &["x", "from", "to"], &[]),
    ("mat", "smith_normal_form", &["A"], &[]),
    ("mat", "det", &["A"], &[]),
    ("mat", "inverse", &["A"], &[]),
    ("mat", "rank", &["A"], &[]),
    ("mat", "kernel", &["A"], &[]),
    ("mat", "is_unit_matrix", &["A"], &[]),
    ("lattice", "lattice_canon", &["B"], &[]),
    ("lattice", "lattice_eq", &["B1", "B2"], &[]),
    ("lattice", "lattice_join", &["B1", "B2"], &[]),
    ("lattice", "lattice_meet", &["B1", "B2"], &[]),
    ("lattice", "lattice_dual", &["B"], &[]),
    ("lattice", "lattice_wedge", &["B", "l"], &[]),
    ("lattice", "lattice_member", &["B", "x"], &[]),
    ("lattice", "res_coords", &["B", "x"], &[]),
    ("lattice", "lattice_generic_sample", &["B", "m"], &[]),
    ("module", "module_classify", &["A", "cuts"], &["E"]),
    ("module", "module_member", &["A", "cuts", "x"], &["E"]),
    ("module", "module_code", &["A", "cuts"], &["E"]),
    ("module", "module_of_rnl", &["element"], &[]),
    ("vvs", "vvs_val", &["A", "x"], &["shifts"]),
    ("vvs", "vvs_ball", &["A", "c"], &["shifts"]),
    ("vvs", "orbit_reps", &["A"], &["shifts"]),
    ("vvs", "separating_basis", &["A"], &["shifts"]),
    ("vvs", "max_close", &["A", "a", "vsub"], &["shifts"]),
    ("vvs", "perp_check", &["A", "u", "w"], &["shifts"]),
    ("vvs", "vvs_code", &["A"], &["shifts"]),
    ("cheese", "beta", &["x", "y"], &[]),
    ("cheese", "ball_relation", &["b1", "b2"], &[]),
    ("cheese", "cheese_canon", &["X"], &[]),
    ("cheese", "cheese_union", &["X", "Y"], &[]),
    ("cheese", "cheese_intersect", &["X", "Y"], &[]),
    ("cheese", "cheese_difference", &["X", "Y"], &[]),
    ("cheese", "cheese_complement", &["X"], &[]),
    ("cheese", "cheese_contains", &["X", "x"], &[]),
    ("cheese", "cheese_witness", &["X"], &[]),
    ("cheese", "cheese_sample", &["X"], &[]),
    ("code", "subspace_code", &["n", "generators"], &[]),
    ("code", "sym_code", &["points"], &[]),
    ("code", "sym_decode", &["code"], &[]),
    ("code", "finite_set_injection", &["S"], &[]),
    ("code", "rnl_to_sn_rN1", &["element"], &[]),
    ("code", "sn_rN1_to_rnl", &["code"], &[]),
    ("code", "rn1_to_st", &["element"], &[]),
    ("code", "st_to_rn1", &["code"], &[]),
    ("code", "lattice_generic_type", &["B"], &[]),
    ("code", "type_code", &["presentation"], &[]),
];

pub fn op_spec(op: &str) -> Option<&'static OpSpec> {
    OPS.iter().find(|s| s.1 == op)
}

fn bad(msg: impl Into<String>) -> Error {
    Error::MalformedInput(msg.into())
}

impl Task {
    pub fn new(field: FieldDescriptor, op: &str, operands: Map<String, Value>) -> Self {
        Task { field, op: op.to_string(), seed: 0, options: Options::default(), operands }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let m = v.as_object().ok_or_else(|| bad("task must be a JSON object"))?;
        let field = m.get("field").and_then(Value::as_str).ok_or_else(|| bad("missing string \"field\""))?;
        let field = FieldDescriptor::parse(field).map_err(|e| bad(e.to_string()))?;
        let op = m.get("op").and_then(Value::as_str).ok_or_else(|| bad("missing string \"op\""))?;
        let (_, _, required, optional) = op_spec(op).ok_or_else(|| bad(format!("unknown op {op:?}")))?;
        let seed = match m.get("seed") {
            Some(s) => s.as_u64().ok_or_else(|| bad("seed must be a non-negative integer"))?,
            None => 0,
        };
        let options = match m.get("options") {
            Some(o) => Options::deserialize(o).map_err(|e| bad(format!("options: {e}")))?,
            None => Options::default(),
        };
        let mut operands = Map::new();
        for (k, v) in m {
            if ["field", "op", "seed", "options"].contains(&k.as_str()) {
                continue;
            }
            if !required.contains(&k.as_str()) && !optional.contains(&k.as_str()) {
                return Err(bad(format!("unknown operand {k:?} for {op}")));
            }
            operands.insert(k.clone(), v.clone());
        }
        if let Some(k) = required.iter().find(|k| !operands.contains_key(**k)) {
            return Err(bad(format!("missing operand {k:?} for {op}")));
        }
        Ok(Task { field, op: op.to_string(), seed, options, operands })
    }

    pub fn to_json(&self) -> Value {
        let mut m = self.operands.clone();
        m.insert("field".into(), json!(self.field.to_string()));
        m.insert("op".into(), json!(self.op));
        if self.seed != 0 {
            m.insert("seed".into(), json!(self.seed));
        }
        if self.options != Options::default() {
            m.insert("options".into(), serde_json::to_value(self.options).expect("plain struct"));
        }
        Value::Object(m)
    }

    fn arg<T: Codec>(&self, key: &str) -> Result<T> {
        let v = self.operands.get(key).ok_or_else(|| bad(format!("missing operand {key:?}")))?;
        T::from_json(&self.field, v)
    }

    fn opt_arg<T: Codec>(&self, key: &str) -> Result<Option<T>> {
        self.operands.get(key).map(|v| T::from_json(&self.field, v)).transpose()
    }

    fn norm(&self) -> Result<NormPresentation> {
        let a: MatrixK = self.arg("A")?;
        let shifts = match self.opt_arg("shifts")? {
            Some(s) => s,
            None => vec![num_rational::Rational64::from_integer(0); a.rows()],
        };
        NormPresentation::new(a, shifts)
    }

    fn module(&self) -> Result<ModulePresentation> {
        let a: MatrixK = self.arg("A")?;
        let cuts: Vec<Cut> = self.arg("cuts")?;
        let rows = match self.operands.get("E") {
            Some(v) => codec::rows_from_json(&self.field, v)?,
            None => Vec::new(),
        };
        if rows.is_empty() {
            ModulePresentation::from_constraints(a, cuts)
        } else {
            ModulePresentation::new(MatrixK::from_rows(&self.field, rows).map_err(|e| bad(e.to_string()))?, a, cuts)
        }
    }

    fn lattice(&self, key: &str) -> Result<Lattice> {
        Lattice::new(self.arg(key)?)
    }

    /// The operation result and an optional certificate.
    pub fn execute(&self) -> Result<(Value, Option<Value>)> {
        let f = &self.field;
        let scalar = |k: &str| self.arg::<Scalar>(k);
        let plain = |v: Value| Ok((v, None));
        match self.op.as_str() {
            "val" => plain(scalar("x")?.val().to_json()),
            "residue" => plain(json!(scalar("x")?.residue()?.value())),
            "add" => plain(scalar("x")?.checked_add(&scalar("y")?)?.to_json()),
            "sub" => plain(scalar("x")?.checked_sub(&scalar("y")?)?.to_json()),
            "mul" => plain(scalar("x")?.checked_mul(&scalar("y")?)?.to_json()),
            "div" => plain(scalar("x")?.checked_div(&scalar("y")?)?.to_json()),
            "digits" => plain(json!(scalar("x")?.digits(self.arg("from")?, self.arg("to")?))),
            "smith_normal_form" => {
                let a: MatrixK = self.arg("A")?;
                let s = a.smith_normal_form();
                let check = s.u.mul(&a)?.mul(&s.v)? == s.d;
                Ok((
                    json!({ "D": s.d.to_json(), "exponents": s.exponents }),
                    Some(json!({
                        "U": s.u.to_json(),
                        "V": s.v.to_json(),
                        "UAV_equals_D": check,
                        "U_unit": s.u.is_unit_matrix(),
                        "V_unit": s.v.is_unit_matrix(),
                    })),
                ))
            }
            "det" => plain(self.arg::<MatrixK>("A")?.det()?.to_json()),
            "inverse" => plain(self.arg::<MatrixK>("A")?.inv()?.to_json()),
            "rank" => plain(json!(self.arg::<MatrixK>("A")?.rank())),
            "kernel" => plain(self.arg::<MatrixK>("A")?.kernel().to_cols().to_json()),
            "is_unit_matrix" => plain(json!(self.arg::<MatrixK>("A")?.is_unit_matrix())),
            "lattice_canon" => plain(self.lattice("B")?.canon().to_json()),
            "lattice_eq" => plain(json!(self.lattice("B1")?.lattice_eq(&self.lattice("B2")?)?)),
            "lattice_join" => plain(self.lattice("B1")?.join(&self.lattice("B2")?)?.to_json()),
            "lattice_meet" => plain(self.lattice("B1")?.meet(&self.lattice("B2")?)?.to_json()),
            "lattice_dual" => plain(self.lattice("B")?.dual().to_json()),
            "lattice_wedge" => plain(self.lattice("B")?.wedge(self.arg("l")?)?.to_json()),
            "lattice_member" => plain(json!(self.lattice("B")?.member(&self.arg::<Vec<Scalar>>("x")?)?)),
            "res_coords" => plain(self.lattice("B")?.res_coords(&self.arg::<Vec<Scalar>>("x")?)?.to_json()),
            "lattice_generic_sample" => {
                let l = self.lattice("B")?;
                let m: usize = self.arg("m")?;
                let vs = l.generic_sample(m, self.seed, self.options.depth(), self.options.retry_budget())?;
                let res: Vec<Vec<u64>> = vs
                    .iter()
                    .map(|v| l.res_coords(v).map(|r| r.iter().map(|x| x.value()).collect()))
                    .collect::<Result<_>>()?;
                Ok((vs.to_json(), Some(json!({ "residue_coords": res }))))
            }
            "module_classify" => plain(self.module()?.classify()?.to_json()),
            "module_member" => plain(json!(self.module()?.member(&self.arg::<Vec<Scalar>>("x")?)?)),
            "module_code" => {
                let sf = self.module()?.classify()?;
                plain(code_of_standard_form(&sf)?.to_json())
            }
            "module_of_rnl" => plain(self.arg::<RnlElement>("element")?.to_module().to_json()),
            "vvs_val" => plain(self.norm()?.val(&self.arg::<Vec<Scalar>>("x")?)?.to_json()),
            "vvs_ball" => plain(self.norm()?.ball(self.arg("c")?).to_json()),
            "orbit_reps" => plain(self.norm()?.orbit_reps().to_json()),
            "separating_basis" => {
                let p = self.norm()?;
                let s = p.separating_basis();
                let ok = p.is_separating(&s.w, &s.delta)?;
                Ok((s.to_json(), Some(json!({ "separating": ok }))))
            }
            "max_close" => {
                let (v, value) =
                    self.norm()?.max_close(&self.arg::<Vec<Scalar>>("a")?, &self.arg::<Vec<Vec<Scalar>>>("vsub")?)?;
                plain(json!({ "v": v.to_json(), "value": value.to_json() }))
            }
            "perp_check" => {
                let p = self.norm()?;
                plain(json!(p.perp_check(&self.arg::<Vec<Vec<Scalar>>>("u")?, &self.arg::<Vec<Vec<Scalar>>>("w")?)?))
            }
            "vvs_code" => {
                let code: Vec<Value> = self.norm()?.vvs_code().iter().map(|m| m.to_json()).collect();
                plain(Value::Array(code))
            }
            "beta" => plain(beta(&scalar("x")?, &scalar("y")?)?.to_json()),
            "ball_relation" => {
                let r = self.arg::<Ball>("b1")?.relate(&self.arg::<Ball>("b2")?);
                plain(json!(format!("{r:?}")))
            }
            "cheese_canon" => plain(self.arg::<OneVarSet>("X")?.canonicalize().to_json()),
            "cheese_union" => plain(self.arg::<OneVarSet>("X")?.union(&self.arg("Y")?).to_json()),
            "cheese_intersect" => plain(self.arg::<OneVarSet>("X")?.intersect(&self.arg("Y")?).to_json()),
            "cheese_difference" => plain(self.arg::<OneVarSet>("X")?.difference(&self.arg("Y")?).to_json()),
            "cheese_complement" => plain(self.arg::<OneVarSet>("X")?.complement().to_json()),
            "cheese_contains" => plain(json!(self.arg::<OneVarSet>("X")?.contains_point(&scalar("x")?))),
            "cheese_witness" => {
                let (b, holes) = self.arg::<OneVarSet>("X")?.ei_witness()?;
                plain(json!({ "ball": b.to_json(), "holes": holes.to_json() }))
            }
            "cheese_sample" => {
                let x = self.arg::<OneVarSet>("X")?;
                let s = x.generic_sample(f, self.seed, self.options.depth())?;
                Ok((s.to_json(), Some(json!({ "member": x.contains_point(&s) }))))
            }
            "subspace_code" => {
                let n: usize = self.arg("n")?;
                let gens: Vec<Vec<Scalar>> = self.arg("generators")?;
                if gens.iter().any(|g| g.len() != n) {
                    return Err(Error::ShapeMismatch(format!("generators must have length {n}")));
                }
                let c = subspace_code(f, n, &gens);
                plain(json!({
                    "basis": c.basis.to_rows().to_json(),
                    "pivots": c.pivots,
                    "quotient_basis": c.quotient_basis,
                }))
            }
            "sym_code" => plain(sym_code(f, &self.arg::<Vec<Vec<Scalar>>>("points")?)?.to_json()),
            "sym_decode" => plain(sym_decode(f, &self.arg::<SymCode>("code")?)?.to_json()),
            "finite_set_injection" => {
                let inj = finite_set_injection(f, &self.arg::<Vec<Scalar>>("S")?, self.seed, self.options.depth())?;
                let rows: Vec<&Vec<_>> = inj.table.iter().map(|(_, t)| t).collect();
                let injective = rows.iter().enumerate().all(|(i, r)| rows[i + 1..].iter().all(|s| s != r));
                Ok((inj.to_json(), Some(json!({ "injective": injective }))))
            }
            "rnl_to_sn_rN1" => {
                let e: RnlElement = self.arg("element")?;
                let c = rnl_to_plucker(&e)?;
                let back = plucker_to_rnl(&c)? == e;
                Ok((c.to_json(), Some(json!({ "decodes": back }))))
            }
            "sn_rN1_to_rnl" => plain(plucker_to_rnl(&self.arg::<PluckerCode>("code")?)?.to_json()),
            "rn1_to_st" => {
                let e: RnlElement = self.arg("element")?;
                let c = rn1_to_st(&e)?;
                let back = st_to_rn1(&c)? == e;
                Ok((c.to_json(), Some(json!({ "decodes": back }))))
            }
            "st_to_rn1" => plain(st_to_rn1(&self.arg::<StCode>("code")?)?.to_json()),
            "lattice_generic_type" => {
                let b: MatrixK = self.arg("B")?;
                let p = lattice_generic_type(&b, self.options.degree())?;
                Ok((p.to_json(), Some(json!({ "code": type_code(&p)?.to_json() }))))
            }
            "type_code" => plain(type_code(&self.arg::<DefTypePresentation>("presentation")?)?.to_json()),
            op => Err(bad(format!("unknown op {op:?}"))),
        }
    }

    pub fn run(&self) -> (Value, i32) {
        let mut doc = Map::new();
        doc.insert("field".into(), json!(self.field.to_string()));
        doc.insert("op".into(), json!(self.op));
        doc.insert("seed".into(), json!(self.seed));
        match self.execute() {
            Ok((result, cert)) => {
                doc.insert("result".into(), result);
                if let Some(c) = cert {
                    doc.insert("certificate".into(), c);
                }
                (Value::Object(doc), 0)
            }
            Err(e) => {
                let code = exit_code(&e);
                doc.insert("error".into(), error_object(&e));
                (Value::Object(doc), code)
            }
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::MalformedInput(_) => 1,
        _ => 2,
    }
}

pub fn error_object(e: &Error) -> Value {
    json!({ "kind": e.kind(), "message": e.to_string() })
}

/// Run one task given as a JSON value. Malformed tasks produce a bare
/// error document.
pub fn run_value(v: &Value) -> (Value, i32) {
    match Task::from_json(v) {
        Ok(t) => t.run(),
        Err(e) => (json!({ "error": error_object(&e) }), exit_code(&e)),
    }
}

/// Run independent tasks concurrently; results keep the input order and
/// the exit code is the worst one (1 over 2 over 0).
pub fn run_batch(tasks: &[Value]) -> (Value, i32) {
    let out: Vec<(Value, i32)> = tasks.par_iter().map(run_value).collect();
    let code = out.iter().map(|(_, c)| *c).fold(0, |acc, c| match (acc, c) {
        (1, _) | (_, 1) => 1,
        (2, _) | (_, 2) => 2,
        _ => 0,
    });
    (Value::Array(out.into_iter().map(|(v, _)| v).collect()), code)
}

/// Parse and run a task document: a single task object or an array of
/// tasks (batch).
pub fn run_text(text: &str) -> (String, i32) {
    let (doc, code) = match serde_json::from_str::<Value>(text) {
        Ok(Value::Array(tasks)) => run_batch(&tasks),
        Ok(v) => run_value(&v),
        Err(e) => {
            let e = bad(format!("invalid JSON: {e}"));
            (json!({ "error": error_object(&e) }), 1)
        }
    };
    (render(&doc), code)
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}
