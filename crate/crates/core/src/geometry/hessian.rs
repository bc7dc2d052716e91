//! The complex energy Hessian of a complex-hat parallel field and its
//! combinatorial sign criterion.

use nalgebra::DMatrix;
use serde::Serialize;

use super::frame::{MVector, RealFormFrame};
use super::quadrature::GaussLegendre;
use super::transport::HatTransport;
use crate::parabolic::ParabolicSplit;
use crate::rootsys::RootId;

/// Evaluates `-int_0^1 (1/2)|R X|^2 + |[X, g]_k|^2 + |[J X, g]_k|^2 dt` for
/// `X(t) = exp(-t R / 2) x0`, with the transport matrices cached at the nodes.
#[derive(Clone, Debug)]
pub struct HessianEvaluator<'a> {
    frame: &'a RealFormFrame,
    transport: HatTransport,
    /// `x -> [x, g]_k`.
    k_map: DMatrix<f64>,
    quad: GaussLegendre,
    at_nodes: Vec<DMatrix<f64>>,
}

impl<'a> HessianEvaluator<'a> {
    pub fn new(frame: &'a RealFormFrame, gdot: &MVector, quad: GaussLegendre) -> Self {
        let transport = HatTransport::new(frame, gdot);
        let ad = frame.ad(&frame.embed_m(gdot));
        let k_map = -ad.view((0, frame.k_dim()), (frame.k_dim(), frame.m_dim())).into_owned();
        let at_nodes = transport.at_nodes(&quad);
        HessianEvaluator {
            frame,
            transport,
            k_map,
            quad,
            at_nodes,
        }
    }

    pub fn transport(&self) -> &HatTransport {
        &self.transport
    }

    pub fn quadrature(&self) -> &GaussLegendre {
        &self.quad
    }

    /// `(1/2)|R x|^2 + |[x, g]_k|^2 + |[J x, g]_k|^2` at one time slice.
    pub fn integrand(&self, x: &MVector) -> f64 {
        let rx = self.transport.r_matrix() * x;
        let kx = &self.k_map * x;
        let kjx = &self.k_map * self.frame.j_apply(x);
        0.5 * self.frame.inner_m(&rx, &rx) + self.frame.norm2_k(&kx) + self.frame.norm2_k(&kjx)
    }

    pub fn value(&self, x0: &MVector) -> f64 {
        -self
            .at_nodes
            .iter()
            .zip(self.quad.weights())
            .map(|(m, &w)| w * self.integrand(&(m * x0)))
            .sum::<f64>()
    }

    /// Integrand of the transported field sampled at `samples` evenly spaced times.
    pub fn curve(&self, x0: &MVector, samples: usize) -> Vec<(f64, f64)> {
        let n = samples.max(2);
        (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                (t, self.integrand(&self.transport.apply(t, x0)))
            })
            .collect()
    }
}

/// One-shot evaluation of the Hessian.
pub fn complex_hessian(frame: &RealFormFrame, gdot: &MVector, x0: &MVector, quad: &GaussLegendre) -> f64 {
    HessianEvaluator::new(frame, gdot, quad.clone()).value(x0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BracketReason {
    /// `a = b`: the bracket has a Cartan component.
    Equal,
    /// `a - b` is a root of the Levi part.
    DifferenceInK,
    /// `a - b` lies in `m+`, giving a `(1,0)` component.
    DifferenceInMPos,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BracketWitness {
    pub alpha: RootId,
    pub beta: RootId,
    pub reason: BracketReason,
}

/// Sign of the Hessian for generic coefficients on the given supports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum HessianClass {
    /// `[x^{1,0}, g^{0,1}]` leaves `m^{0,1}`.
    Negative(BracketWitness),
    /// `[x^{1,0}, g^{0,1}]` stays in `m^{0,1}` and the Hessian vanishes.
    Zero,
}

/// `[E_a, E_-b]` for `a` in the field support and `b` in the velocity support
/// escapes `m^{0,1}` exactly when `a = b` or `a - b` is in `k` or in `m+`.
pub fn classify(split: &ParabolicSplit, field: &[RootId], gdot: &[RootId]) -> HessianClass {
    let sys = split.system();
    for &a in field {
        for &b in gdot {
            let reason = if a == b {
                Some(BracketReason::Equal)
            } else {
                sys.sub_ids(a, b).and_then(|d| {
                    if split.is_k(d) {
                        Some(BracketReason::DifferenceInK)
                    } else if split.is_m_pos(d) {
                        Some(BracketReason::DifferenceInMPos)
                    } else {
                        None
                    }
                })
            };
            if let Some(reason) = reason {
                return HessianClass::Negative(BracketWitness {
                    alpha: a,
                    beta: b,
                    reason,
                });
            }
        }
    }
    HessianClass::Zero
}
