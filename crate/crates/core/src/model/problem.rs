use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::pmf::{Pmf, Role};
use crate::error::{Error, Result};

/// On-disk form of a problem: alphabets, a sparse pmf and a total function
/// table. Symbols may be JSON strings, numbers or booleans.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(rename = "X")]
    pub x: Vec<Value>,
    #[serde(rename = "Y")]
    pub y: Vec<Value>,
    #[serde(rename = "Z")]
    pub z: Vec<Value>,
    #[serde(rename = "F")]
    pub f_values: Vec<Value>,
    pub p: Vec<ProbEntry>,
    pub f: Vec<FnEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbEntry {
    pub x: Value,
    pub y: Value,
    pub z: Value,
    pub p: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FnEntry {
    pub x: Value,
    pub y: Value,
    pub z: Value,
    pub v: Value,
}

fn symbol_text(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Bool(b) => Ok(b.to_string()),
        other => Err(Error::Schema(format!("symbol must be a string or number, got {other}"))),
    }
}

fn symbol_value(s: &str) -> Value {
    match serde_json::from_str::<Value>(s) {
        Ok(v @ Value::Number(_)) if v.to_string() == s => v,
        _ => Value::String(s.to_string()),
    }
}

fn index_alphabet(name: &str, symbols: &[Value]) -> Result<(Vec<String>, HashMap<String, usize>)> {
    if symbols.is_empty() {
        return Err(Error::Schema(format!("alphabet {name} is empty")));
    }
    let mut labels = Vec::with_capacity(symbols.len());
    let mut index = HashMap::new();
    for s in symbols {
        let t = symbol_text(s)?;
        if index.insert(t.clone(), labels.len()).is_some() {
            return Err(Error::Schema(format!("alphabet {name} repeats symbol '{t}'")));
        }
        labels.push(t);
    }
    Ok((labels, index))
}

fn lookup(name: &str, index: &HashMap<String, usize>, v: &Value) -> Result<usize> {
    let t = symbol_text(v)?;
    index
        .get(&t)
        .copied()
        .ok_or_else(|| Error::Schema(format!("unknown {name} symbol '{t}'")))
}

/// A validated computation problem: finite alphabets for X, Y, Z and the
/// function values, a joint pmf p(x,y,z) and a total function f(x,y,z).
///
/// Symbols with zero marginal probability are pruned at construction; each
/// pruning is recorded in [`ProblemSpec::warnings`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    description: Option<String>,
    x: Vec<String>,
    y: Vec<String>,
    z: Vec<String>,
    f_labels: Vec<String>,
    p: Vec<f64>,
    f: Vec<usize>,
    warnings: Vec<String>,
}

impl ProblemSpec {
    /// Builds a problem from dense tables. `p` and `f` are indexed `[x][y][z]`
    /// in row-major order; `f` holds indices into `f_labels`.
    pub fn from_tables(
        x: Vec<String>,
        y: Vec<String>,
        z: Vec<String>,
        f_labels: Vec<String>,
        p: Vec<f64>,
        f: Vec<usize>,
    ) -> Result<Self> {
        for (name, a) in [("X", &x), ("Y", &y), ("Z", &z), ("F", &f_labels)] {
            if a.is_empty() {
                return Err(Error::Schema(format!("alphabet {name} is empty")));
            }
        }
        let size = x.len() * y.len() * z.len();
        if p.len() != size || f.len() != size {
            return Err(Error::Schema(format!("tables must have {size} entries")));
        }
        if let Some(bad) = p.iter().find(|q| !(**q >= 0.0) || !q.is_finite()) {
            return Err(Error::Schema(format!("invalid probability {bad}")));
        }
        if let Some(bad) = f.iter().find(|v| **v >= f_labels.len()) {
            return Err(Error::Schema(format!("function value index {bad} out of range")));
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Normalization { sum });
        }
        let spec = ProblemSpec {
            description: None,
            x,
            y,
            z,
            f_labels,
            p,
            f,
            warnings: Vec::new(),
        };
        Ok(spec.pruned())
    }

    /// Validates a parsed document.
    pub fn from_document(doc: &ProblemDocument) -> Result<Self> {
        let (x, xi) = index_alphabet("X", &doc.x)?;
        let (y, yi) = index_alphabet("Y", &doc.y)?;
        let (z, zi) = index_alphabet("Z", &doc.z)?;
        let (fl, fi) = index_alphabet("F", &doc.f_values)?;
        let (nx, ny, nz) = (x.len(), y.len(), z.len());
        let at = |a: usize, b: usize, c: usize| (a * ny + b) * nz + c;

        let mut p = vec![0.0; nx * ny * nz];
        let mut seen = vec![false; p.len()];
        for e in &doc.p {
            let k = at(lookup("X", &xi, &e.x)?, lookup("Y", &yi, &e.y)?, lookup("Z", &zi, &e.z)?);
            if seen[k] {
                return Err(Error::Schema(format!(
                    "duplicate probability entry for ({}, {}, {})",
                    e.x, e.y, e.z
                )));
            }
            if !(e.p >= 0.0) || !e.p.is_finite() {
                return Err(Error::Schema(format!("invalid probability {}", e.p)));
            }
            seen[k] = true;
            p[k] = e.p;
        }
        let sum: f64 = p.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Normalization { sum });
        }

        let mut f: Vec<Option<usize>> = vec![None; p.len()];
        for e in &doc.f {
            let k = at(lookup("X", &xi, &e.x)?, lookup("Y", &yi, &e.y)?, lookup("Z", &zi, &e.z)?);
            if f[k].is_some() {
                return Err(Error::Schema(format!(
                    "duplicate function entry for ({}, {}, {})",
                    e.x, e.y, e.z
                )));
            }
            f[k] = Some(lookup("F", &fi, &e.v)?);
        }
        let mut table = Vec::with_capacity(f.len());
        for (k, v) in f.into_iter().enumerate() {
            match v {
                Some(v) => table.push(v),
                None => {
                    let (a, b, c) = (k / (ny * nz), (k / nz) % ny, k % nz);
                    return Err(Error::PartialFunction {
                        x: x[a].clone(),
                        y: y[b].clone(),
                        z: z[c].clone(),
                    });
                }
            }
        }
        let mut spec = ProblemSpec::from_tables(x, y, z, fl, p, table)?;
        spec.description = doc.description.clone();
        Ok(spec)
    }

    /// Serializes back to the document form (only positive pmf entries are
    /// listed).
    pub fn to_document(&self) -> ProblemDocument {
        let sym = |s: &String| symbol_value(s);
        let mut p = Vec::new();
        let mut f = Vec::new();
        for a in 0..self.nx() {
            for b in 0..self.ny() {
                for c in 0..self.nz() {
                    let q = self.p(a, b, c);
                    if q > 0.0 {
                        p.push(ProbEntry {
                            x: sym(&self.x[a]),
                            y: sym(&self.y[b]),
                            z: sym(&self.z[c]),
                            p: q,
                        });
                    }
                    f.push(FnEntry {
                        x: sym(&self.x[a]),
                        y: sym(&self.y[b]),
                        z: sym(&self.z[c]),
                        v: sym(&self.f_labels[self.f(a, b, c)]),
                    });
                }
            }
        }
        ProblemDocument {
            description: self.description.clone(),
            x: self.x.iter().map(sym).collect(),
            y: self.y.iter().map(sym).collect(),
            z: self.z.iter().map(sym).collect(),
            f_values: self.f_labels.iter().map(sym).collect(),
            p,
            f,
        }
    }

    pub fn with_description(mut self, description: impl Into<String>) -> Self {
        self.description = Some(description.into());
        self
    }

    fn pruned(mut self) -> Self {
        let (nx, ny, nz) = (self.nx(), self.ny(), self.nz());
        let mut mx = vec![0.0; nx];
        let mut my = vec![0.0; ny];
        let mut mz = vec![0.0; nz];
        for a in 0..nx {
            for b in 0..ny {
                for c in 0..nz {
                    let q = self.p(a, b, c);
                    mx[a] += q;
                    my[b] += q;
                    mz[c] += q;
                }
            }
        }
        let keep = |m: &[f64]| -> Vec<usize> { (0..m.len()).filter(|i| m[*i] > 0.0).collect() };
        let (kx, ky, kz) = (keep(&mx), keep(&my), keep(&mz));
        if kx.len() == nx && ky.len() == ny && kz.len() == nz {
            return self;
        }
        for (name, labels, kept) in [("X", &self.x, &kx), ("Y", &self.y, &ky), ("Z", &self.z, &kz)] {
            for (i, l) in labels.iter().enumerate() {
                if !kept.contains(&i) {
                    self.warnings
                        .push(format!("pruned {name} symbol '{l}' with zero marginal probability"));
                }
            }
        }
        let mut p = Vec::with_capacity(kx.len() * ky.len() * kz.len());
        let mut f = Vec::with_capacity(p.capacity());
        for &a in &kx {
            for &b in &ky {
                for &c in &kz {
                    p.push(self.p(a, b, c));
                    f.push(self.f(a, b, c));
                }
            }
        }
        let pick = |labels: &[String], kept: &[usize]| kept.iter().map(|i| labels[*i].clone()).collect();
        self.x = pick(&self.x, &kx);
        self.y = pick(&self.y, &ky);
        self.z = pick(&self.z, &kz);
        self.p = p;
        self.f = f;
        self
    }

    pub fn description(&self) -> Option<&str> {
        self.description.as_deref()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn nx(&self) -> usize {
        self.x.len()
    }

    pub fn ny(&self) -> usize {
        self.y.len()
    }

    pub fn nz(&self) -> usize {
        self.z.len()
    }

    pub fn x_labels(&self) -> &[String] {
        &self.x
    }

    pub fn y_labels(&self) -> &[String] {
        &self.y
    }

    pub fn z_labels(&self) -> &[String] {
        &self.z
    }

    pub fn f_labels(&self) -> &[String] {
        &self.f_labels
    }

    /// Labels of the alphabet of `role` (X, Y or Z).
    pub fn labels(&self, role: Role) -> Result<&[String]> {
        match role {
            Role::X => Ok(&self.x),
            Role::Y => Ok(&self.y),
            Role::Z => Ok(&self.z),
            other => Err(Error::Role(format!("{other} is not a source role"))),
        }
    }

    pub fn size(&self, role: Role) -> Result<usize> {
        self.labels(role).map(|l| l.len())
    }

    #[inline]
    pub fn p(&self, x: usize, y: usize, z: usize) -> f64 {
        self.p[(x * self.y.len() + y) * self.z.len() + z]
    }

    #[inline]
    pub fn f(&self, x: usize, y: usize, z: usize) -> usize {
        self.f[(x * self.y.len() + y) * self.z.len() + z]
    }

    /// Joint pmf over (X, Y, Z).
    pub fn joint(&self) -> Pmf {
        Pmf::new(
            vec![Role::X, Role::Y, Role::Z],
            vec![self.nx(), self.ny(), self.nz()],
            self.p.clone(),
        )
        .expect("validated at construction")
    }

    pub fn marginal_x(&self) -> Vec<f64> {
        (0..self.nx())
            .map(|a| (0..self.ny()).flat_map(|b| (0..self.nz()).map(move |c| (b, c))).map(|(b, c)| self.p(a, b, c)).sum())
            .collect()
    }

    pub fn marginal_y(&self) -> Vec<f64> {
        (0..self.ny())
            .map(|b| (0..self.nx()).flat_map(|a| (0..self.nz()).map(move |c| (a, c))).map(|(a, c)| self.p(a, b, c)).sum())
            .collect()
    }

    pub fn marginal_z(&self) -> Vec<f64> {
        (0..self.nz())
            .map(|c| (0..self.nx()).flat_map(|a| (0..self.ny()).map(move |b| (a, b))).map(|(a, b)| self.p(a, b, c)).sum())
            .collect()
    }

    /// Exchanges the roles of X and Y (and transposes the tables).
    pub fn swapped(&self) -> ProblemSpec {
        let (nx, ny, nz) = (self.nx(), self.ny(), self.nz());
        let mut p = Vec::with_capacity(self.p.len());
        let mut f = Vec::with_capacity(self.f.len());
        for b in 0..ny {
            for a in 0..nx {
                for c in 0..nz {
                    p.push(self.p(a, b, c));
                    f.push(self.f(a, b, c));
                }
            }
        }
        ProblemSpec {
            description: self.description.clone(),
            x: self.y.clone(),
            y: self.x.clone(),
            z: self.z.clone(),
            f_labels: self.f_labels.clone(),
            p,
            f,
            warnings: self.warnings.clone(),
        }
    }
}

/// Parses and validates a problem document from JSON text.
pub fn load_problem(text: &str) -> Result<ProblemSpec> {
    let doc: ProblemDocument = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    ProblemSpec::from_document(&doc)
}

/// Reads and validates a problem file.
pub fn load_problem_file(path: impl AsRef<Path>) -> Result<ProblemSpec> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Schema(format!("cannot read {}: {e}", path.as_ref().display())))?;
    load_problem(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
        "X": [0, 1], "Y": ["a"], "Z": ["*"], "F": [0, 1],
        "p": [{"x": 0, "y": "a", "z": "*", "p": 0.5}, {"x": 1, "y": "a", "z": "*", "p": 0.5}],
        "f": [{"x": 0, "y": "a", "z": "*", "v": 0}, {"x": 1, "y": "a", "z": "*", "v": 1}]
    }"#;

    #[test]
    fn parses_mixed_symbols() {
        let s = load_problem(SMALL).unwrap();
        assert_eq!(s.x_labels(), &["0", "1"]);
        assert_eq!(s.y_labels(), &["a"]);
        assert_eq!(s.f(1, 0, 0), 1);
    }

    #[test]
    fn half_mass_is_a_normalization_error() {
        let text = SMALL.replace("0.5}, {\"x\": 1", "0.25}, {\"x\": 1").replace("\"p\": 0.5}]", "\"p\": 0.25}]");
        assert!(matches!(load_problem(&text), Err(Error::Normalization { .. })));
    }

    #[test]
    fn unknown_symbol_is_a_schema_error() {
        let text = SMALL.replace(r#"{"x": 1, "y": "a", "z": "*", "p""#, r#"{"x": 7, "y": "a", "z": "*", "p""#);
        assert!(matches!(load_problem(&text), Err(Error::Schema(_))));
    }

    #[test]
    fn missing_field_is_a_schema_error() {
        let text = SMALL.replace(r#""F": [0, 1],"#, "");
        assert!(matches!(load_problem(&text), Err(Error::Schema(_))));
    }

    #[test]
    fn missing_triple_is_a_partial_function() {
        let text = SMALL.replace(r#", {"x": 1, "y": "a", "z": "*", "v": 1}"#, "");
        assert!(matches!(load_problem(&text), Err(Error::PartialFunction { .. })));
    }

    #[test]
    fn zero_marginal_symbols_are_pruned() {
        let text = SMALL.replace(r#""X": [0, 1]"#, r#""X": [0, 1, 2]"#).replace(
            r#"{"x": 1, "y": "a", "z": "*", "v": 1}"#,
            r#"{"x": 1, "y": "a", "z": "*", "v": 1}, {"x": 2, "y": "a", "z": "*", "v": 0}"#,
        );
        let s = load_problem(&text).unwrap();
        assert_eq!(s.nx(), 2);
        assert_eq!(s.warnings().len(), 1);
        assert!(s.warnings()[0].contains("'2'"));
    }

    #[test]
    fn document_round_trip() {
        let s = load_problem(SMALL).unwrap();
        let back = ProblemSpec::from_document(&s.to_document()).unwrap();
        assert_eq!(s, back);
    }
}
