use super::pmf::Role;
use super::problem::ProblemSpec;
use crate::error::{Error, Result};

/// True iff X and Y are independent given Z: |p(x,y|z) - p(x|z)p(y|z)| ≤ 1e-12
/// for every (x,y) and every z of positive probability.
pub fn check_conditional_independence(spec: &ProblemSpec) -> bool {
    let pz = spec.marginal_z();
    for c in 0..spec.nz() {
        if pz[c] <= 0.0 {
            continue;
        }
        let px: Vec<f64> = (0..spec.nx())
            .map(|a| (0..spec.ny()).map(|b| spec.p(a, b, c)).sum::<f64>() / pz[c])
            .collect();
        let py: Vec<f64> = (0..spec.ny())
            .map(|b| (0..spec.nx()).map(|a| spec.p(a, b, c)).sum::<f64>() / pz[c])
            .collect();
        for a in 0..spec.nx() {
            for b in 0..spec.ny() {
                if (spec.p(a, b, c) / pz[c] - px[a] * py[b]).abs() > 1e-12 {
                    return false;
                }
            }
        }
    }
    true
}

/// True iff the source `wrt` (X or Y) is a function of (f, Z) on the support:
/// no z and no two support points with different `wrt` symbols share an
/// f value.
pub fn check_partially_invertible(spec: &ProblemSpec, wrt: Role) -> Result<bool> {
    let spec = match wrt {
        Role::X => spec.clone(),
        Role::Y => spec.swapped(),
        other => return Err(Error::Role(format!("{other} is not a source role"))),
    };
    for c in 0..spec.nz() {
        // owner[v] = the x symbol that produced f value v under this z
        let mut owner: Vec<Option<usize>> = vec![None; spec.f_labels().len()];
        for a in 0..spec.nx() {
            for b in 0..spec.ny() {
                if spec.p(a, b, c) <= 0.0 {
                    continue;
                }
                let v = spec.f(a, b, c);
                match owner[v] {
                    Some(prev) if prev != a => return Ok(false),
                    _ => owner[v] = Some(a),
                }
            }
        }
    }
    Ok(true)
}
