use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::entropy::{coupling, Channel};
use crate::error::{Error, Result};
use crate::graphs::{build_char_graph, generalized_graph_from_masks, VertexSet};
use crate::model::{conditional_mutual_information, Pmf, ProblemSpec, Role, RoleSet};
use crate::sets::independent_sets;

/// A Markov chain counts as holding when its conditional mutual
/// information is at most this many bits.
pub const CHAIN_TOL: f64 = 1e-12;

/// Largest |V|·|X|·|Y|·|W|·|Z| a witness may have.
pub const MAX_WITNESS_SIZE: usize = 1_000_000;

/// Floor applied to random channel entries before renormalization.
const WITNESS_FLOOR: f64 = 1e-3;

/// Which of the two chains V − X − (Y,W,Z) and (V,X,Z) − Y − W hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ChainFlags {
    pub v_chain: bool,
    pub w_chain: bool,
}

impl ChainFlags {
    pub fn both(&self) -> bool {
        self.v_chain && self.w_chain
    }

    /// Measures both chains on a (V,X,Y,W,Z) joint.
    pub fn measure(joint: &Pmf) -> Result<Self> {
        let r = |roles: &[Role]| RoleSet::of(roles);
        let v = conditional_mutual_information(joint, r(&[Role::V]), r(&[Role::Y, Role::W, Role::Z]), r(&[Role::X]))?;
        let w = conditional_mutual_information(joint, r(&[Role::V, Role::X, Role::Z]), r(&[Role::W]), r(&[Role::Y]))?;
        Ok(ChainFlags {
            v_chain: v <= CHAIN_TOL,
            w_chain: w <= CHAIN_TOL,
        })
    }
}

/// A joint over (V, X, Y, W, Z) whose (X, Y, Z) marginal is the problem's
/// source distribution.
#[derive(Debug, Clone)]
pub struct JointWitness {
    joint: Pmf,
    claimed: ChainFlags,
    chains: ChainFlags,
}

const AXES: [Role; 5] = [Role::V, Role::X, Role::Y, Role::W, Role::Z];

fn check_size(dims: &[usize]) -> Result<()> {
    let size = dims.iter().try_fold(1usize, |acc, d| acc.checked_mul(*d)).unwrap_or(usize::MAX);
    if size > MAX_WITNESS_SIZE {
        return Err(Error::Size {
            what: "witness joint".into(),
            size,
            limit: MAX_WITNESS_SIZE,
        });
    }
    Ok(())
}

impl JointWitness {
    /// p(x,y,z)·p(v|x)·p(w|y). Both chains are claimed and then verified.
    pub fn from_channels(spec: &ProblemSpec, v: &Channel, w: &Channel) -> Result<Self> {
        check_size(&[v.n_messages(), spec.nx(), spec.ny(), w.n_messages(), spec.nz()])?;
        let joint = coupling(spec, v, w)?;
        let chains = ChainFlags::measure(&joint)?;
        if !chains.both() {
            return Err(Error::EquivalenceViolation(format!(
                "a channel-built witness fails its Markov chains ({chains:?})"
            )));
        }
        Ok(JointWitness {
            joint,
            claimed: ChainFlags {
                v_chain: true,
                w_chain: true,
            },
            chains,
        })
    }

    /// An arbitrary joint with axes (V, X, Y, W, Z); nothing is claimed and
    /// the chains are measured.
    pub fn from_joint(spec: &ProblemSpec, joint: Pmf) -> Result<Self> {
        if joint.roles() != AXES {
            return Err(Error::Role(format!(
                "witness axes must be V,X,Y,W,Z, got {:?}",
                joint.roles()
            )));
        }
        let d = joint.dims();
        if d[1] != spec.nx() || d[2] != spec.ny() || d[4] != spec.nz() {
            return Err(Error::Schema("witness source alphabets differ from the problem's".into()));
        }
        check_size(d)?;
        let xyz = joint.marginal(RoleSet::of(&[Role::X, Role::Y, Role::Z]))?;
        let off = (0..spec.nx())
            .flat_map(|x| (0..spec.ny()).flat_map(move |y| (0..spec.nz()).map(move |z| (x, y, z))))
            .map(|(x, y, z)| (xyz.get(&[x, y, z]) - spec.p(x, y, z)).abs())
            .fold(0.0, f64::max);
        if off > 1e-9 {
            return Err(Error::Schema(format!(
                "witness (X,Y,Z) marginal differs from the source distribution by {off:e}"
            )));
        }
        let chains = ChainFlags::measure(&joint)?;
        Ok(JointWitness {
            joint,
            claimed: ChainFlags::default(),
            chains,
        })
    }

    pub fn joint(&self) -> &Pmf {
        &self.joint
    }

    pub fn claimed(&self) -> ChainFlags {
        self.claimed
    }

    /// Chains measured on the joint.
    pub fn chains(&self) -> ChainFlags {
        self.chains
    }

    pub fn nv(&self) -> usize {
        self.joint.dims()[0]
    }

    pub fn nw(&self) -> usize {
        self.joint.dims()[3]
    }
}

/// How random witnesses choose their message supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WitnessKind {
    /// V's supports independent in G_{X|Y,Z}, W's in the induced G_{Y|V,Z}.
    Admissible,
    /// Arbitrary covering supports; f need not be recoverable.
    Arbitrary,
}

/// Random subfamily of `sets` (each kept with probability 1/2), completed
/// with singletons so that every symbol is covered.
fn random_cover(rng: &mut ChaCha8Rng, sets: &[VertexSet], n: usize) -> Vec<VertexSet> {
    let mut picked: Vec<VertexSet> = sets.iter().filter(|_| rng.random_bool(0.5)).cloned().collect();
    let covered = picked.iter().fold(VertexSet::new(), |acc, s| acc.union(s));
    for s in VertexSet::full(n).difference(&covered).iter() {
        picked.push(VertexSet::singleton(s));
    }
    picked
}

fn random_subsets(rng: &mut ChaCha8Rng, n: usize) -> Vec<VertexSet> {
    let count = rng.random_range(1..=n + 1);
    let sets: Vec<VertexSet> = (0..count)
        .map(|_| loop {
            let s: VertexSet = (0..n).filter(|_| rng.random_bool(0.5)).collect();
            if !s.is_empty() {
                break s;
            }
        })
        .collect();
    let covered = sets.iter().fold(VertexSet::new(), |acc, s| acc.union(s));
    let mut out = sets;
    for s in VertexSet::full(n).difference(&covered).iter() {
        out.push(VertexSet::singleton(s));
    }
    out
}

/// A witness p(x,y,z)·p(v|x)·p(w|y) with random supports and Dirichlet
/// channel rows, reproducible from `seed`.
pub fn random_witness(spec: &ProblemSpec, kind: WitnessKind, seed: u64) -> Result<JointWitness> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (vmasks, wmasks) = match kind {
        WitnessKind::Admissible => {
            let gx = build_char_graph(spec, Role::X, RoleSet::of(&[Role::Y, Role::Z]))?;
            let vmasks = random_cover(&mut rng, independent_sets(&gx)?.sets(), spec.nx());
            let gv = generalized_graph_from_masks(spec, Role::X, &vmasks)?;
            let wmasks = random_cover(&mut rng, independent_sets(&gv)?.sets(), spec.ny());
            (vmasks, wmasks)
        }
        WitnessKind::Arbitrary => {
            let vmasks = random_subsets(&mut rng, spec.nx());
            let wmasks = random_subsets(&mut rng, spec.ny());
            (vmasks, wmasks)
        }
    };
    check_size(&[vmasks.len(), spec.nx(), spec.ny(), wmasks.len(), spec.nz()])?;
    let v = Channel::random(Role::X, spec.nx(), vmasks, WITNESS_FLOOR, &mut rng)?;
    let w = Channel::random(Role::Y, spec.ny(), wmasks, WITNESS_FLOOR, &mut rng)?;
    JointWitness::from_channels(spec, &v, &w)
}
