//! Bundled problem instances.

use crate::error::{Error, Result};
use crate::model::ProblemSpec;

/// Names accepted by [`fixture`]; `ex2` also takes a parameter as `ex2:p`.
pub const FIXTURE_NAMES: [&str; 6] = ["ex1", "ex2", "ex3", "ex4", "inv", "const"];

/// Default correlation parameter of `ex2`.
pub const EX2_DEFAULT_P: f64 = 0.75;

fn labels<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|s| s.to_string()).collect()
}

/// Looks up a bundled instance by name: `ex1`, `ex2` or `ex2:p`, `ex3`,
/// `ex4`, `inv`, `const`.
pub fn fixture(name: &str) -> Result<ProblemSpec> {
    let (base, arg) = match name.split_once(':') {
        Some((b, a)) => (b, Some(a)),
        None => (name, None),
    };
    match (base, arg) {
        ("ex1", None) => Ok(ex1()),
        ("ex2", None) => ex2(EX2_DEFAULT_P),
        ("ex2", Some(a)) => {
            let p: f64 = a
                .parse()
                .map_err(|_| Error::Schema(format!("ex2 parameter '{a}' is not a number")))?;
            ex2(p)
        }
        ("ex3", None) => Ok(ex3()),
        ("ex4", None) => Ok(ex4()),
        ("inv", None) => Ok(invertible()),
        ("const", None) => Ok(constant()),
        _ => Err(Error::Schema(format!(
            "unknown fixture '{name}' (expected one of {})",
            FIXTURE_NAMES.join(", ")
        ))),
    }
}

/// X, Y uniform over the ordered pairs of distinct symbols of {1,2,3,4};
/// the receiver learns whether x < y.
pub fn ex1() -> ProblemSpec {
    let n = 4;
    let mut p = Vec::new();
    let mut f = Vec::new();
    for x in 0..n {
        for y in 0..n {
            p.push(if x == y { 0.0 } else { 1.0 / 12.0 });
            f.push(usize::from(x > y));
        }
    }
    ProblemSpec::from_tables(labels(1..=4), labels(1..=4), labels(["*"]), labels([0, 1]), p, f)
        .expect("valid tables")
        .with_description("X,Y uniform on distinct pairs of {1,2,3,4}; f = 1 if x > y else 0")
}

/// Binary X, Y with p(x,y) = p/2 on the diagonal and (1−p)/2 off it;
/// f = x ⊕ y.
pub fn ex2(p: f64) -> Result<ProblemSpec> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Schema(format!("ex2 parameter must lie in [0, 1], got {p}")));
    }
    let table = vec![p / 2.0, (1.0 - p) / 2.0, (1.0 - p) / 2.0, p / 2.0];
    let f = vec![0, 1, 1, 0];
    Ok(
        ProblemSpec::from_tables(labels([0, 1]), labels([0, 1]), labels(["*"]), labels([0, 1]), table, f)?
            .with_description(format!("binary X,Y with p(x=y) = {p}; f = x xor y")),
    )
}

/// Z uniform on {1,2,3}; X = Z + U with U uniform on {−1,0,1}; Y = Z + V
/// with V uniform on {0,1,2}; f = 1 if x = y else 0.
///
/// The law of Z is an assumption: only its range is fixed by the model.
pub fn ex3() -> ProblemSpec {
    let xs: Vec<i32> = (0..=4).collect();
    let ys: Vec<i32> = (1..=5).collect();
    let zs: Vec<i32> = (1..=3).collect();
    let mut p = vec![0.0; xs.len() * ys.len() * zs.len()];
    let mut f = Vec::with_capacity(p.len());
    for &x in &xs {
        for &y in &ys {
            for _ in &zs {
                f.push(usize::from(x == y));
            }
        }
    }
    for (zi, &z) in zs.iter().enumerate() {
        for u in -1..=1 {
            for v in 0..=2 {
                let xi = (z + u) as usize;
                let yi = (z + v - 1) as usize;
                p[(xi * ys.len() + yi) * zs.len() + zi] += 1.0 / 27.0;
            }
        }
    }
    ProblemSpec::from_tables(labels(xs), labels(ys), labels(zs), labels([0, 1]), p, f)
        .expect("valid tables")
        .with_description(
            "Z in {1,2,3} (assumed uniform), X = Z+U, U uniform on {-1,0,1}, Y = Z+V, V uniform on {0,1,2}; f = 1 if x = y else 0",
        )
}

/// Ternary X (rows) and Y (columns) with a fixed table; f = (−1)^y · x.
pub fn ex4() -> ProblemSpec {
    let p = vec![0.21, 0.03, 0.12, 0.06, 0.15, 0.16, 0.03, 0.12, 0.12];
    let f_labels = labels(["-2", "-1", "0", "1", "2"]);
    let mut f = Vec::new();
    for x in 0..3i32 {
        for y in 0..3i32 {
            let v = if y % 2 == 0 { x } else { -x };
            f.push((v + 2) as usize);
        }
    }
    ProblemSpec::from_tables(labels(0..3), labels(0..3), labels(["*"]), f_labels, p, f)
        .expect("valid tables")
        .with_description("ternary X,Y with a fixed 3x3 table; f = (-1)^y * x")
}

/// Full-support 3×2 source with the identity function f = (x, y).
pub fn invertible() -> ProblemSpec {
    let p = vec![0.20, 0.10, 0.05, 0.25, 0.15, 0.25];
    let f_labels: Vec<String> = (0..3).flat_map(|x| (0..2).map(move |y| format!("{x}{y}"))).collect();
    let f = (0..6).collect();
    ProblemSpec::from_tables(labels(0..3), labels(0..2), labels(["*"]), f_labels, p, f)
        .expect("valid tables")
        .with_description("full-support 3x2 source; f = (x, y)")
}

/// Correlated binary sources with a constant function.
pub fn constant() -> ProblemSpec {
    let p = vec![0.4, 0.1, 0.2, 0.3];
    ProblemSpec::from_tables(labels([0, 1]), labels([0, 1]), labels(["*"]), labels([0]), p, vec![0; 4])
        .expect("valid tables")
        .with_description("binary X,Y; f constant")
}

/// File name under which a fixture ships.
pub fn fixture_file_name(name: &str) -> String {
    format!("{}.json", name.replace(':', "_"))
}
