//! Linear combinations of joint entropies over the coupling
//! p(x,y,z)·q(v|x)·r(w|y), with values and gradients in nats.

use crate::graphs::VertexSet;

pub(crate) const AX_X: u8 = 1;
pub(crate) const AX_Y: u8 = 2;
pub(crate) const AX_Z: u8 = 4;
pub(crate) const AX_V: u8 = 8;
pub(crate) const AX_W: u8 = 16;

/// Accumulates Σ coef·H(axes) with like terms merged.
#[derive(Debug, Clone, Default)]
pub(crate) struct Terms(Vec<(u8, f64)>);

impl Terms {
    pub fn h(mut self, axes: u8, coef: f64) -> Self {
        if axes == 0 || coef == 0.0 {
            return self;
        }
        match self.0.iter_mut().find(|(a, _)| *a == axes) {
            Some((_, c)) => *c += coef,
            None => self.0.push((axes, coef)),
        }
        self
    }

    /// + coef·I(A;B|C) = coef·[H(AC) + H(BC) − H(ABC) − H(C)].
    pub fn mi(self, a: u8, b: u8, c: u8, coef: f64) -> Self {
        self.h(a | c, coef).h(b | c, coef).h(a | b | c, -coef).h(c, -coef)
    }
}

struct Term {
    coef: f64,
    strides: [usize; 5],
    size: usize,
}

/// Fixed data of one optimization problem. Axis order: x, y, z, v, w.
pub(crate) struct Objective {
    dims: [usize; 5],
    /// Positive entries of p(x,y,z).
    support: Vec<(usize, usize, usize, f64)>,
    /// Allowed message values per source symbol.
    allowed_v: Vec<Vec<usize>>,
    allowed_w: Vec<Vec<usize>>,
    px: Vec<f64>,
    py: Vec<f64>,
    terms: Vec<Term>,
    constant: f64,
}

fn entropy_nats(m: &[f64]) -> f64 {
    m.iter().filter(|p| **p > 0.0).map(|p| -p * p.ln()).sum()
}

/// Scratch marginals for one evaluation point.
pub(crate) struct Workspace {
    marg: Vec<Vec<f64>>,
}

impl Objective {
    /// `base` is indexed (x·ny + y)·nz + z; masks index the x and y axes.
    pub fn new(dims3: [usize; 3], base: &[f64], vmasks: &[VertexSet], wmasks: &[VertexSet], terms: Terms) -> Self {
        let [nx, ny, nz] = dims3;
        let dims = [nx, ny, nz, vmasks.len(), wmasks.len()];
        let mut support = Vec::new();
        let mut px = vec![0.0; nx];
        let mut py = vec![0.0; ny];
        for x in 0..nx {
            for y in 0..ny {
                for z in 0..nz {
                    let p = base[(x * ny + y) * nz + z];
                    if p > 0.0 {
                        support.push((x, y, z, p));
                        px[x] += p;
                        py[y] += p;
                    }
                }
            }
        }
        let allowed = |n: usize, masks: &[VertexSet]| -> Vec<Vec<usize>> {
            (0..n)
                .map(|s| (0..masks.len()).filter(|m| masks[*m].contains(s)).collect())
                .collect()
        };

        // terms over source axes only do not move; evaluate them once
        let mut constant = 0.0;
        let mut list = Vec::new();
        for (axes, coef) in terms.0 {
            if coef.abs() < 1e-15 {
                continue;
            }
            let mut strides = [0usize; 5];
            let mut size = 1;
            for k in (0..5).rev() {
                if axes & (1 << k) != 0 {
                    strides[k] = size;
                    size *= dims[k];
                }
            }
            if axes & (AX_V | AX_W) == 0 {
                let mut m = vec![0.0; size];
                for &(x, y, z, p) in &support {
                    m[x * strides[0] + y * strides[1] + z * strides[2]] += p;
                }
                constant += coef * entropy_nats(&m);
            } else {
                list.push(Term { coef, strides, size });
            }
        }
        Objective {
            dims,
            support,
            allowed_v: allowed(nx, vmasks),
            allowed_w: allowed(ny, wmasks),
            px,
            py,
            terms: list,
            constant,
        }
    }

    pub fn dims(&self) -> [usize; 5] {
        self.dims
    }

    pub fn px(&self) -> &[f64] {
        &self.px
    }

    pub fn py(&self) -> &[f64] {
        &self.py
    }

    pub fn allowed_v(&self) -> &[Vec<usize>] {
        &self.allowed_v
    }

    pub fn allowed_w(&self) -> &[Vec<usize>] {
        &self.allowed_w
    }

    pub fn workspace(&self) -> Workspace {
        Workspace {
            marg: self.terms.iter().map(|t| vec![0.0; t.size]).collect(),
        }
    }

    /// Objective value at (q, r), leaving the marginals in `ws`.
    pub fn eval(&self, q: &[f64], r: &[f64], ws: &mut Workspace) -> f64 {
        let nv = self.dims[3];
        let nw = self.dims[4];
        for m in &mut ws.marg {
            m.iter_mut().for_each(|e| *e = 0.0);
        }
        for &(x, y, z, p) in &self.support {
            for &v in &self.allowed_v[x] {
                let pv = p * q[x * nv + v];
                if pv == 0.0 {
                    continue;
                }
                for &w in &self.allowed_w[y] {
                    let pw = pv * r[y * nw + w];
                    let idx = [x, y, z, v, w];
                    for (t, m) in self.terms.iter().zip(ws.marg.iter_mut()) {
                        let k: usize = (0..5).map(|a| idx[a] * t.strides[a]).sum();
                        m[k] += pw;
                    }
                }
            }
        }
        self.constant
            + self
                .terms
                .iter()
                .zip(&ws.marg)
                .map(|(t, m)| t.coef * entropy_nats(m))
                .sum::<f64>()
    }

    /// Partial derivatives with respect to q(v|x) and r(w|y) at the point
    /// last passed to `eval` with this workspace. Row-constant parts are
    /// omitted: they vanish along the simplex.
    pub fn gradient(&self, q: &[f64], r: &[f64], ws: &mut Workspace, gq: &mut [f64], gr: &mut [f64]) {
        let nv = self.dims[3];
        let nw = self.dims[4];
        for m in &mut ws.marg {
            m.iter_mut().for_each(|e| *e = e.max(1e-300).ln());
        }
        gq.iter_mut().for_each(|g| *g = 0.0);
        gr.iter_mut().for_each(|g| *g = 0.0);
        for &(x, y, z, p) in &self.support {
            for &v in &self.allowed_v[x] {
                let qv = q[x * nv + v];
                for &w in &self.allowed_w[y] {
                    let rw = r[y * nw + w];
                    let idx = [x, y, z, v, w];
                    let mut l = 0.0;
                    for (t, m) in self.terms.iter().zip(&ws.marg) {
                        let k: usize = (0..5).map(|a| idx[a] * t.strides[a]).sum();
                        l += t.coef * m[k];
                    }
                    gq[x * nv + v] -= p * rw * l;
                    gr[y * nw + w] -= p * qv * l;
                }
            }
        }
    }
}
