use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

use super::{AlphaParams, Weighting};

/// A hypergraph polynomial flattened into monomials for fast evaluation.
#[derive(Clone, Debug)]
pub struct Polynomial {
    n: usize,
    coefs: Vec<f64>,
    offsets: Vec<usize>,
    vars: Vec<usize>,
}

impl Polynomial {
    pub fn new(h: &Hypergraph, alpha: &AlphaParams) -> Result<Self> {
        let mut coefs = Vec::with_capacity(h.edge_count());
        let mut offsets = vec![0];
        let mut vars = Vec::new();
        for (r, edges) in h.levels() {
            let a = alpha.coefficient(r).ok_or(Error::MissingAlpha(r))?;
            for e in edges {
                coefs.push(a);
                vars.extend(e.vertices().map(|v| v - 1));
                offsets.push(vars.len());
            }
        }
        Ok(Polynomial { n: h.n(), coefs, offsets, vars })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn terms(&self) -> impl Iterator<Item = (f64, &[usize])> + '_ {
        self.coefs
            .iter()
            .zip(self.offsets.windows(2))
            .map(|(&c, w)| (c, &self.vars[w[0]..w[1]]))
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        self.terms().map(|(c, vs)| c * vs.iter().map(|&v| x[v]).product::<f64>()).sum()
    }

    pub fn gradient_into(&self, x: &[f64], g: &mut [f64]) {
        g.iter_mut().for_each(|v| *v = 0.0);
        for (c, vs) in self.terms() {
            for (k, &v) in vs.iter().enumerate() {
                let mut p = c;
                for (l, &u) in vs.iter().enumerate() {
                    if l != k {
                        p *= x[u];
                    }
                }
                g[v] += p;
            }
        }
    }

    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.n];
        self.gradient_into(x, &mut g);
        g
    }

    /// Dense Hessian, row-major `n × n`.
    pub fn hessian(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut hm = vec![0.0; n * n];
        for (c, vs) in self.terms() {
            for a in 0..vs.len() {
                for b in a + 1..vs.len() {
                    let mut p = c;
                    for (l, &u) in vs.iter().enumerate() {
                        if l != a && l != b {
                            p *= x[u];
                        }
                    }
                    hm[vs[a] * n + vs[b]] += p;
                    hm[vs[b] * n + vs[a]] += p;
                }
            }
        }
        hm
    }

    /// Bit mask per vertex of the vertices sharing an edge with it.
    pub(crate) fn covered_pairs(&self) -> Vec<u64> {
        let mut cov = vec![0u64; self.n];
        for (_, vs) in self.terms() {
            let m: u64 = vs.iter().fold(0, |m, &v| m | 1 << v);
            for &v in vs {
                cov[v] |= m;
            }
        }
        cov
    }

    /// Bit mask of vertices lying in at least one edge.
    pub(crate) fn used_vertices(&self) -> u64 {
        self.vars.iter().fold(0, |m, &v| m | 1 << v)
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coefs.is_empty()
    }
}

fn check_dim(h: &Hypergraph, x: &Weighting) -> Result<()> {
    if x.len() != h.n() {
        return Err(Error::DimensionMismatch { expected: h.n(), got: x.len() });
    }
    Ok(())
}

/// `L_α(H, x)`.
pub fn evaluate(h: &Hypergraph, alpha: &AlphaParams, x: &Weighting) -> Result<f64> {
    check_dim(h, x)?;
    Ok(Polynomial::new(h, alpha)?.value(x.as_slice()))
}

/// `∂L/∂x_i = L(E_i, x)` for every vertex.
pub fn gradient(h: &Hypergraph, alpha: &AlphaParams, x: &Weighting) -> Result<Vec<f64>> {
    check_dim(h, x)?;
    Ok(Polynomial::new(h, alpha)?.gradient(x.as_slice()))
}

/// `∂²L/∂x_i∂x_j = L(E_{ij}, x)`, row-major.
pub fn hessian(h: &Hypergraph, alpha: &AlphaParams, x: &Weighting) -> Result<Vec<f64>> {
    check_dim(h, x)?;
    Ok(Polynomial::new(h, alpha)?.hessian(x.as_slice()))
}
