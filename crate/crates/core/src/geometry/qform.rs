//! The quadratic form on the twisted variations and the search for the twist rate `k`.

use serde::Serialize;

use super::frame::{MVector, RealFormFrame};
use super::hessian::HessianEvaluator;
use super::map_i::{p_pairing, MapI};

/// `Q(k) = a + b k + c k^2` for one configuration.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QTerms {
    /// Hessian of `X + W` plus Hessian of `Y + I W`.
    pub a: f64,
    /// `int 2 P(X + W, Y + I W) dt`.
    pub b: f64,
    /// `int 2 (|X + W|^2 + |Y + I W|^2) dt`.
    pub c: f64,
}

impl QTerms {
    pub fn at(&self, k: f64) -> f64 {
        self.a + self.b * k + self.c * k * k
    }
}

/// Initial data: `x0`, `y0` in the T-part (transported), `w0` in the S-part (constant).
#[derive(Clone, Debug, PartialEq)]
pub struct QConfig {
    pub x0: MVector,
    pub y0: MVector,
    pub w0: MVector,
}

/// Coefficients of `Q` in `k` for `Z = cos(kt)(X+W) - sin(kt)(Y+IW)`.
pub fn q_terms(
    frame: &RealFormFrame,
    hess: &HessianEvaluator<'_>,
    gdot: &MVector,
    map_i: &MapI,
    cfg: &QConfig,
) -> QTerms {
    let iw = map_i.apply(&cfg.w0);
    let u0 = &cfg.x0 + &cfg.w0;
    let v0 = &cfg.y0 + &iw;
    let a = hess.value(&u0) + hess.value(&v0);
    let tr = hess.transport();
    let quad = hess.quadrature();
    let mut b = 0.0;
    let mut c = 0.0;
    for (&t, &w) in quad.nodes().iter().zip(quad.weights()) {
        let m = tr.at(t);
        // the S-part lies in the kernel of R and stays put
        let u = &m * &cfg.x0 + &cfg.w0;
        let v = &m * &cfg.y0 + &iw;
        b += w * 2.0 * p_pairing(frame, &u, &v, gdot);
        c += w * 2.0 * (frame.inner_m(&u, &u) + frame.inner_m(&v, &v));
    }
    QTerms { a, b, c }
}

/// `Q(Z)` at a single `k`.
pub fn q_form(
    frame: &RealFormFrame,
    hess: &HessianEvaluator<'_>,
    gdot: &MVector,
    map_i: &MapI,
    cfg: &QConfig,
    k: f64,
) -> f64 {
    q_terms(frame, hess, gdot, map_i, cfg).at(k)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KSearch {
    /// Chosen twist rate, half the located boundary.
    pub k: f64,
    /// Largest `k` in `(0, 1]` found with every `Q < 0`, to bisection accuracy.
    pub k_boundary: f64,
    /// `max Q` over the configurations at `k`; negative.
    pub margin: f64,
    pub configs: usize,
}

/// Halves `k` from 1 until every `Q(k) < 0`, then bisects towards the boundary.
pub fn k_search(terms: &[QTerms]) -> Option<KSearch> {
    let worst = |k: f64| terms.iter().map(|t| t.at(k)).fold(f64::NEG_INFINITY, f64::max);
    if terms.is_empty() {
        return None;
    }
    let mut k = 1.0;
    while worst(k) >= 0.0 {
        k /= 2.0;
        if k < 1e-12 {
            return None;
        }
    }
    let (mut lo, mut hi) = (k, (2.0 * k).min(1.0));
    if lo < hi {
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if worst(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    let k = 0.5 * lo;
    let margin = worst(k);
    (margin < 0.0).then_some(KSearch {
        k,
        k_boundary: lo,
        margin,
        configs: terms.len(),
    })
}
