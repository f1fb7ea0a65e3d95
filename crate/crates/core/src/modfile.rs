//! Module-definition documents: JSON files describing a differential crossed
//! or 2-crossed module, with every numeric entry an exact rational written as
//! an integer or a string `"p/q"`.
//!
//! Layout (field shapes match the in-memory structure tensors):
//!
//! ```json
//! {
//!   "g": { "dim": 2, "struct": [[[0,0],[0,0]],[[0,0],[0,0]]] },
//!   "h": { "dim": 2, "struct": ... },
//!   "alpha":  [[0,0],["1/2",0]],
//!   "act_gh": [[[0,0],[0,0]],[[0,0],[0,0]]],
//!   "l":      { "dim": 1, "struct": ... },
//!   "beta":   [[0,0]],
//!   "act_gl": [[[0]],[[0]]],
//!   "peiffer":[[[0],[1]],[[0],[0]]],
//!   "pairing": { "pair_h": [[0,1],[-1,0]], "pair_gl": [[1],[0]] }
//! }
//! ```
//!
//! * `g.struct[i][j]` is the coefficient vector of the bracket of the i-th
//!   and j-th generators; `alpha[a]` the image of the a-th middle generator;
//!   `act_gh[i][a]` the action of the i-th base generator on the a-th middle
//!   generator; `peiffer[a][b]` the lifting of the (a, b) generator pair.
//! * The presence of `"l"` selects the 2-crossed layout, which then requires
//!   `beta` and `act_gl`; omitting `peiffer` in that layout is the dedicated
//!   [`Error::NoLifting`] condition.
//! * `"pairing"` is optional; built-in catalog modules carry their own.
//!
//! Parsing performs shape validation only; axiom checking is the validators'
//! job.  Every parse error carries the document path and the JSON path of the
//! offending entry.

use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::Value;

use crate::algebra::{Action, Bilinear, DCModule, D2CModule, LieAlgebra, LinMap};
use crate::catalog::{self, ModuleKind};
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::pairing::PairingData;
use crate::rat::Rat;

/// A module ready for the verification suites: the structural data, whatever
/// pairing came with it, and a label for reports.
#[derive(Debug, Clone)]
pub struct ModuleSource {
    pub label: String,
    pub kind: ModuleKind,
    pub pairing: PairingData,
}

/// Resolve a module argument: first as a built-in catalog name, then as a
/// document path.
pub fn resolve(source: &str) -> Result<ModuleSource> {
    if let Some(entry) = catalog::get(source) {
        return Ok(ModuleSource {
            label: entry.name.to_string(),
            kind: entry.kind.clone(),
            pairing: entry.pairing.clone(),
        });
    }
    let path = Path::new(source);
    if path.exists() {
        return load_module_file(path);
    }
    Err(Error::InvalidInput(format!(
        "unknown module '{source}': not a built-in name and no such file"
    )))
}

/// Load a module document from disk.
pub fn load_module_file(path: &Path) -> Result<ModuleSource> {
    let label = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ParseError { path: label.clone(), message: e.to_string() })?;
    parse_module_doc(&label, &text)
}

/// Parse a module document from text; `label` names the document in errors.
pub fn parse_module_doc(label: &str, text: &str) -> Result<ModuleSource> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::ParseError { path: label.to_string(), message: e.to_string() })?;
    let cx = Cx { label };
    cx.module(&value)
}

struct Cx<'a> {
    label: &'a str,
}

impl Cx<'_> {
    fn err(&self, jpath: &str, message: &str) -> Error {
        Error::ParseError {
            path: self.label.to_string(),
            message: format!("at {jpath}: {message}"),
        }
    }

    fn rational(&self, v: &Value, jpath: &str) -> Result<Rat> {
        match v {
            Value::Number(n) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| self.err(jpath, "numeric entries must be integers; write fractions as \"p/q\""))?;
                Ok(Rat::from(BigInt::from(i)))
            }
            Value::String(s) => {
                let (num, den) = match s.split_once('/') {
                    Some((p, q)) => (p.trim(), q.trim()),
                    None => (s.trim(), "1"),
                };
                let p = BigInt::from_str(num)
                    .map_err(|_| self.err(jpath, &format!("'{s}' is not a rational \"p/q\"")))?;
                let q = BigInt::from_str(den)
                    .map_err(|_| self.err(jpath, &format!("'{s}' is not a rational \"p/q\"")))?;
                if q == BigInt::from(0) {
                    return Err(self.err(jpath, "zero denominator"));
                }
                Ok(Rat::new(p, q))
            }
            _ => Err(self.err(jpath, "expected an integer or \"p/q\" string")),
        }
    }

    fn array<'v>(&self, v: &'v Value, len: usize, jpath: &str) -> Result<&'v [Value]> {
        let arr = v
            .as_array()
            .ok_or_else(|| self.err(jpath, "expected an array"))?;
        if arr.len() != len {
            return Err(self.err(jpath, &format!("expected {len} entries, found {}", arr.len())));
        }
        Ok(arr)
    }

    fn vector(&self, v: &Value, len: usize, jpath: &str) -> Result<Vec<Rat>> {
        self.array(v, len, jpath)?
            .iter()
            .enumerate()
            .map(|(k, e)| self.rational(e, &format!("{jpath}[{k}]")))
            .collect()
    }

    fn matrix(&self, v: &Value, rows: usize, cols: usize, jpath: &str) -> Result<Vec<Vec<Rat>>> {
        self.array(v, rows, jpath)?
            .iter()
            .enumerate()
            .map(|(r, e)| self.vector(e, cols, &format!("{jpath}[{r}]")))
            .collect()
    }

    fn rank3(&self, v: &Value, d0: usize, d1: usize, d2: usize, jpath: &str) -> Result<Vec<Vec<Vec<Rat>>>> {
        self.array(v, d0, jpath)?
            .iter()
            .enumerate()
            .map(|(i, e)| self.matrix(e, d1, d2, &format!("{jpath}[{i}]")))
            .collect()
    }

    fn object<'v>(&self, v: &'v Value, jpath: &str, allowed: &[&str]) -> Result<&'v serde_json::Map<String, Value>> {
        let obj = v
            .as_object()
            .ok_or_else(|| self.err(jpath, "expected an object"))?;
        for key in obj.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(self.err(jpath, &format!("unknown field '{key}'")));
            }
        }
        Ok(obj)
    }

    fn algebra(&self, v: &Value, jpath: &str) -> Result<LieAlgebra> {
        let obj = self.object(v, jpath, &["dim", "struct"])?;
        let dim_v = obj
            .get("dim")
            .ok_or_else(|| self.err(jpath, "missing field 'dim'"))?;
        let dim = dim_v
            .as_u64()
            .ok_or_else(|| self.err(&format!("{jpath}.dim"), "expected a non-negative integer"))?
            as usize;
        let bracket = match obj.get("struct") {
            Some(s) => self.rank3(s, dim, dim, dim, &format!("{jpath}.struct"))?,
            None => return Ok(LieAlgebra::abelian(dim)),
        };
        Ok(LieAlgebra::new(dim, bracket))
    }

    fn pairing(&self, v: &Value, gd: usize, hd: usize, ld: usize) -> Result<PairingData> {
        let obj = self.object(v, "pairing", &["pair_g", "pair_gh", "pair_h", "pair_gl"])?;
        let get = |key: &str, rows: usize, cols: usize| -> Result<Option<RatMatrix>> {
            match obj.get(key) {
                None => Ok(None),
                Some(m) => Ok(Some(RatMatrix::from_rows(self.matrix(
                    m,
                    rows,
                    cols,
                    &format!("pairing.{key}"),
                )?))),
            }
        };
        Ok(PairingData {
            pair_g: get("pair_g", gd, gd)?,
            pair_gh: get("pair_gh", gd, hd)?,
            pair_h: get("pair_h", hd, hd)?,
            pair_gl: get("pair_gl", gd, ld)?,
        })
    }

    fn module(&self, v: &Value) -> Result<ModuleSource> {
        let obj = self.object(
            v,
            "document",
            &["g", "h", "l", "alpha", "beta", "act_gh", "act_gl", "peiffer", "pairing"],
        )?;
        let g = self.algebra(
            obj.get("g").ok_or_else(|| self.err("document", "missing field 'g'"))?,
            "g",
        )?;
        let h = self.algebra(
            obj.get("h").ok_or_else(|| self.err("document", "missing field 'h'"))?,
            "h",
        )?;
        let alpha_rows = self.matrix(
            obj.get("alpha").ok_or_else(|| self.err("document", "missing field 'alpha'"))?,
            h.dim,
            g.dim,
            "alpha",
        )?;
        let alpha = LinMap::new(h.dim, g.dim, alpha_rows);
        let act_gh_ops = self.rank3(
            obj.get("act_gh").ok_or_else(|| self.err("document", "missing field 'act_gh'"))?,
            g.dim,
            h.dim,
            h.dim,
            "act_gh",
        )?;
        let act_gh = Action::new(g.dim, h.dim, act_gh_ops);

        let (g_dim, h_dim) = (g.dim, h.dim);
        let kind = match obj.get("l") {
            None => {
                for field in ["beta", "act_gl", "peiffer"] {
                    if obj.contains_key(field) {
                        return Err(self.err(
                            "document",
                            &format!("field '{field}' requires the 2-crossed layout (field 'l')"),
                        ));
                    }
                }
                ModuleKind::Crossed(DCModule { g, h, alpha, act: act_gh })
            }
            Some(lv) => {
                let l = self.algebra(lv, "l")?;
                let beta_rows = self.matrix(
                    obj.get("beta").ok_or_else(|| self.err("document", "missing field 'beta'"))?,
                    l.dim,
                    h.dim,
                    "beta",
                )?;
                let beta = LinMap::new(l.dim, h.dim, beta_rows);
                let act_gl_ops = self.rank3(
                    obj.get("act_gl")
                        .ok_or_else(|| self.err("document", "missing field 'act_gl'"))?,
                    g.dim,
                    l.dim,
                    l.dim,
                    "act_gl",
                )?;
                let act_gl = Action::new(g.dim, l.dim, act_gl_ops);
                let lift_table = match obj.get("peiffer") {
                    Some(p) => self.rank3(p, h.dim, h.dim, l.dim, "peiffer")?,
                    None => return Err(Error::NoLifting),
                };
                let lift = Bilinear::new(h.dim, l.dim, lift_table);
                ModuleKind::TwoCrossed(D2CModule {
                    g,
                    h,
                    l,
                    alpha,
                    beta,
                    act_h: act_gh,
                    act_l: act_gl,
                    lift,
                })
            }
        };
        let l_dim = match &kind {
            ModuleKind::Crossed(_) => 0,
            ModuleKind::TwoCrossed(m) => m.l.dim,
        };
        let pairing = match obj.get("pairing") {
            Some(p) => self.pairing(p, g_dim, h_dim, l_dim)?,
            None => PairingData::default(),
        };
        Ok(ModuleSource { label: self.label.to_string(), kind, pairing })
    }
}

fn rat_value(r: &Rat) -> Value {
    use num_traits::One;
    if r.denom().is_one() {
        if let Ok(i) = i64::try_from(r.numer().clone()) {
            return Value::from(i);
        }
    }
    Value::from(format!("{}/{}", r.numer(), r.denom()))
}

fn rank3_value(t: &[Vec<Vec<Rat>>]) -> Value {
    Value::from(
        t.iter()
            .map(|m| {
                Value::from(
                    m.iter()
                        .map(|row| Value::from(row.iter().map(rat_value).collect::<Vec<_>>()))
                        .collect::<Vec<_>>(),
                )
            })
            .collect::<Vec<_>>(),
    )
}

fn matrix_value(rows: &[Vec<Rat>]) -> Value {
    Value::from(
        rows.iter()
            .map(|row| Value::from(row.iter().map(rat_value).collect::<Vec<_>>()))
            .collect::<Vec<_>>(),
    )
}

fn algebra_value(a: &LieAlgebra) -> Value {
    serde_json::json!({ "dim": a.dim, "struct": rank3_value(&a.bracket) })
}

/// Render a module (and optional pairing matrices) as a document value; the
/// inverse of [`parse_module_doc`].
pub fn to_document(kind: &ModuleKind, pairing: &PairingData) -> Value {
    let mut doc = serde_json::Map::new();
    match kind {
        ModuleKind::Crossed(m) => {
            doc.insert("g".into(), algebra_value(&m.g));
            doc.insert("h".into(), algebra_value(&m.h));
            doc.insert("alpha".into(), matrix_value(&m.alpha.cols));
            doc.insert("act_gh".into(), rank3_value(&m.act.ops));
        }
        ModuleKind::TwoCrossed(m) => {
            doc.insert("g".into(), algebra_value(&m.g));
            doc.insert("h".into(), algebra_value(&m.h));
            doc.insert("l".into(), algebra_value(&m.l));
            doc.insert("alpha".into(), matrix_value(&m.alpha.cols));
            doc.insert("beta".into(), matrix_value(&m.beta.cols));
            doc.insert("act_gh".into(), rank3_value(&m.act_h.ops));
            doc.insert("act_gl".into(), rank3_value(&m.act_l.ops));
            doc.insert("peiffer".into(), rank3_value(&m.lift.table));
        }
    }
    let mut pd = serde_json::Map::new();
    let mut put = |key: &str, m: &Option<RatMatrix>| {
        if let Some(m) = m {
            pd.insert(key.into(), matrix_value(&m.data));
        }
    };
    put("pair_g", &pairing.pair_g);
    put("pair_gh", &pairing.pair_gh);
    put("pair_h", &pairing.pair_h);
    put("pair_gl", &pairing.pair_gl);
    if !pd.is_empty() {
        doc.insert("pairing".into(), Value::Object(pd));
    }
    Value::Object(doc)
}
