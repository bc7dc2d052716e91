//! The operator `R_Y` on `m` and transport for the complex-hat connection,
//! `X(t) = exp(-t R / 2) X(0)`.

use nalgebra::DMatrix;

use super::frame::{MVector, RealFormFrame};
use super::quadrature::GaussLegendre;

/// `X -> [Y, X]_m + J [J Y, X]_m` as a matrix on `m`.
pub fn r_operator(frame: &RealFormFrame, gdot: &MVector) -> DMatrix<f64> {
    let n = frame.m_dim();
    let ad_m = |y: &MVector| -> DMatrix<f64> {
        let full = frame.ad(&frame.embed_m(y));
        full.view((frame.k_dim(), frame.k_dim()), (n, n)).into_owned()
    };
    let jg = frame.j_apply(gdot);
    ad_m(gdot) + frame.j_matrix() * ad_m(&jg)
}

/// Transport along the geodesic with initial velocity `gdot`, in the parallel frame.
#[derive(Clone, Debug)]
pub struct HatTransport {
    r: DMatrix<f64>,
}

impl HatTransport {
    pub fn new(frame: &RealFormFrame, gdot: &MVector) -> Self {
        HatTransport {
            r: r_operator(frame, gdot),
        }
    }

    pub fn r_matrix(&self) -> &DMatrix<f64> {
        &self.r
    }

    /// `exp(-(t/2) R)`.
    pub fn at(&self, t: f64) -> DMatrix<f64> {
        (&self.r * (-0.5 * t)).exp()
    }

    pub fn apply(&self, t: f64, x: &MVector) -> MVector {
        self.at(t) * x
    }

    /// Transport matrices at every node of a rule.
    pub fn at_nodes(&self, quad: &GaussLegendre) -> Vec<DMatrix<f64>> {
        quad.nodes().iter().map(|&t| self.at(t)).collect()
    }
}

/// Truncated Taylor series of `exp(-(t/2) R)`, an independent check on the exponential.
pub fn taylor_transport(r: &DMatrix<f64>, t: f64, terms: usize) -> DMatrix<f64> {
    let n = r.nrows();
    let a = r * (-0.5 * t);
    let mut term = DMatrix::identity(n, n);
    let mut sum = term.clone();
    for k in 1..terms {
        term = &term * &a / k as f64;
        sum += &term;
    }
    sum
}
