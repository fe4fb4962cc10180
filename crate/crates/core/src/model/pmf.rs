use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The random variables that can appear as axes of a joint distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    X,
    Y,
    Z,
    V,
    W,
}

impl Role {
    pub const ALL: [Role; 5] = [Role::X, Role::Y, Role::Z, Role::V, Role::W];

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Role::X => "X",
            Role::Y => "Y",
            Role::Z => "Z",
            Role::V => "V",
            Role::W => "W",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "X" | "x" => Ok(Role::X),
            "Y" | "y" => Ok(Role::Y),
            "Z" | "z" => Ok(Role::Z),
            "V" | "v" => Ok(Role::V),
            "W" | "w" => Ok(Role::W),
            other => Err(Error::Role(format!("unknown role '{other}'"))),
        }
    }
}

/// A set of roles, stored as a bit mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RoleSet(u8);

impl RoleSet {
    pub const EMPTY: RoleSet = RoleSet(0);

    pub fn of(roles: &[Role]) -> Self {
        RoleSet(roles.iter().fold(0, |acc, r| acc | r.bit()))
    }

    pub fn contains(self, role: Role) -> bool {
        self.0 & role.bit() != 0
    }

    pub fn union(self, other: RoleSet) -> RoleSet {
        RoleSet(self.0 | other.0)
    }

    pub fn intersects(self, other: RoleSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: RoleSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Role> {
        Role::ALL.into_iter().filter(move |r| self.contains(*r))
    }

    /// Parses a comma separated list such as `"Y,Z"`; the empty string is the
    /// empty set.
    pub fn parse(s: &str) -> Result<Self> {
        let mut set = RoleSet::EMPTY;
        for part in s.split(',').filter(|p| !p.trim().is_empty()) {
            set = set.union(RoleSet::of(&[part.parse()?]));
        }
        Ok(set)
    }
}

impl fmt::Display for RoleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.iter().map(|r| r.to_string()).collect();
        f.write_str(&names.join(","))
    }
}

/// A dense joint probability tensor whose axes are labelled by roles.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf {
    roles: Vec<Role>,
    dims: Vec<usize>,
    data: Vec<f64>,
}

impl Pmf {
    /// Builds a validated joint: distinct roles, nonnegative entries summing to
    /// one within 1e-9.
    pub fn new(roles: Vec<Role>, dims: Vec<usize>, data: Vec<f64>) -> Result<Self> {
        if roles.len() != dims.len() {
            return Err(Error::Role("role and dimension lists differ in length".into()));
        }
        for (i, r) in roles.iter().enumerate() {
            if roles[..i].contains(r) {
                return Err(Error::Role(format!("role {r} appears twice")));
            }
        }
        let size: usize = dims.iter().product();
        if size != data.len() {
            return Err(Error::Schema(format!(
                "tensor has {} entries, dimensions require {size}",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|p| !(**p >= 0.0) || !p.is_finite()) {
            return Err(Error::Schema(format!("invalid probability {bad}")));
        }
        let sum: f64 = data.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::Normalization { sum });
        }
        Ok(Pmf { roles, dims, data })
    }

    /// Builds a joint by evaluating `f` on every multi-index.
    pub fn from_fn(roles: Vec<Role>, dims: Vec<usize>, mut f: impl FnMut(&[usize]) -> f64) -> Result<Self> {
        let size: usize = dims.iter().product();
        let mut data = Vec::with_capacity(size);
        let mut idx = vec![0usize; dims.len()];
        for _ in 0..size {
            data.push(f(&idx));
            advance(&mut idx, &dims);
        }
        Pmf::new(roles, dims, data)
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn role_set(&self) -> RoleSet {
        RoleSet::of(&self.roles)
    }

    pub fn dim_of(&self, role: Role) -> Option<usize> {
        self.axis(role).map(|a| self.dims[a])
    }

    fn axis(&self, role: Role) -> Option<usize> {
        self.roles.iter().position(|r| *r == role)
    }

    fn strides(&self) -> Vec<usize> {
        strides(&self.dims)
    }

    /// Probability at a multi-index given in axis order.
    pub fn get(&self, idx: &[usize]) -> f64 {
        let s = self.strides();
        self.data[idx.iter().zip(&s).map(|(i, s)| i * s).sum::<usize>()]
    }

    /// Marginal over `keep`, preserving this joint's axis order.
    pub fn marginal(&self, keep: RoleSet) -> Result<Pmf> {
        if !keep.is_subset(self.role_set()) {
            return Err(Error::Role(format!(
                "roles {keep} not all present in joint over {}",
                self.role_set()
            )));
        }
        let axes: Vec<usize> = (0..self.roles.len()).filter(|a| keep.contains(self.roles[*a])).collect();
        let roles: Vec<Role> = axes.iter().map(|a| self.roles[*a]).collect();
        let dims: Vec<usize> = axes.iter().map(|a| self.dims[*a]).collect();
        let sub_strides = strides(&dims);
        let mut data = vec![0.0; dims.iter().product()];
        let mut idx = vec![0usize; self.dims.len()];
        for &p in &self.data {
            if p > 0.0 {
                let j: usize = axes.iter().zip(&sub_strides).map(|(a, s)| idx[*a] * s).sum();
                data[j] += p;
            }
            advance(&mut idx, &self.dims);
        }
        Ok(Pmf { roles, dims, data })
    }

    /// Shannon entropy of the marginal over `set`, in bits.
    pub fn entropy(&self, set: RoleSet) -> Result<f64> {
        let m = self.marginal(set)?;
        Ok(m.data.iter().filter(|p| **p > 0.0).map(|p| -p * p.log2()).sum())
    }

    /// H(A | C) in bits.
    pub fn conditional_entropy(&self, a: RoleSet, c: RoleSet) -> Result<f64> {
        if a.intersects(c) {
            return Err(Error::Role(format!("overlapping role sets {a} and {c}")));
        }
        Ok((self.entropy(a.union(c))? - self.entropy(c)?).max(0.0))
    }

    /// Index into `sub` (a marginal of `self` or of one of its marginals) of
    /// the entry selected by `idx`, a multi-index in `self`'s axis order.
    fn project(&self, idx: &[usize], sub: &Pmf) -> usize {
        let s = sub.strides();
        sub.roles
            .iter()
            .zip(&s)
            .map(|(r, st)| idx[self.axis(*r).expect("sub roles are a subset")] * st)
            .sum()
    }
}

pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

/// Row-major increment of a multi-index.
pub(crate) fn advance(idx: &mut [usize], dims: &[usize]) {
    for k in (0..dims.len()).rev() {
        idx[k] += 1;
        if idx[k] < dims[k] {
            return;
        }
        idx[k] = 0;
    }
}

/// I(A;B|C) in bits, computed by direct summation over the support of the
/// (A,B,C) marginal.
pub fn conditional_mutual_information(joint: &Pmf, a: RoleSet, b: RoleSet, c: RoleSet) -> Result<f64> {
    if a.intersects(b) || a.intersects(c) || b.intersects(c) {
        return Err(Error::Role(format!("role sets {a}, {b}, {c} overlap")));
    }
    let all = a.union(b).union(c);
    if !all.is_subset(joint.role_set()) {
        return Err(Error::Role(format!(
            "roles {all} not all present in joint over {}",
            joint.role_set()
        )));
    }
    if a.is_empty() || b.is_empty() {
        return Ok(0.0);
    }
    let abc = joint.marginal(all)?;
    let ac = abc.marginal(a.union(c))?;
    let bc = abc.marginal(b.union(c))?;
    let cc = abc.marginal(c)?;
    let mut idx = vec![0usize; abc.dims.len()];
    let mut total = 0.0;
    for &p in &abc.data {
        if p > 0.0 {
            let p_ac = ac.data[abc.project(&idx, &ac)];
            let p_bc = bc.data[abc.project(&idx, &bc)];
            let p_c = cc.data[abc.project(&idx, &cc)];
            // separate logs: the products underflow for tiny channel entries
            total += p * (p.log2() + p_c.log2() - p_ac.log2() - p_bc.log2());
        }
        advance(&mut idx, &abc.dims);
    }
    Ok(total.max(0.0))
}

/// I(A;B) in bits.
pub fn mutual_information(joint: &Pmf, a: RoleSet, b: RoleSet) -> Result<f64> {
    conditional_mutual_information(joint, a, b, RoleSet::EMPTY)
}

/// Binary entropy function in bits.
pub fn binary_entropy(p: f64) -> f64 {
    [p, 1.0 - p].iter().filter(|q| **q > 0.0).map(|q| -q * q.log2()).sum()
}
