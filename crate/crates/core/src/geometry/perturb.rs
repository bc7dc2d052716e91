//! Moving the velocity by the adjoint action of the Levi part.

use nalgebra::DMatrix;

use super::frame::{MVector, RealFormFrame};
use crate::error::GeometryError;
use crate::rootsys::RootId;

#[derive(Clone, Debug, PartialEq)]
pub struct Perturbed {
    pub gdot: MVector,
    pub support: Vec<RootId>,
}

/// `exp(t ad X_k) g` for a root `k` of the Levi part, with the support of the
/// result above `1e-9 |g|`.
pub fn adjoint_perturb(
    frame: &RealFormFrame,
    gdot: &MVector,
    root_k: RootId,
    t: f64,
) -> Result<Perturbed, GeometryError> {
    let split = frame.split();
    let sys = split.system();
    if !split.is_k(root_k) {
        return Err(GeometryError::NotInK(sys.vector(root_k).to_string()));
    }
    let kp = sys.abs(root_k);
    let idx = frame.full_index(kp).expect("positive Levi root has a slot");
    let mut xk = nalgebra::DVector::zeros(frame.dim());
    xk[idx] = 1.0;
    let ad = frame.ad(&xk);
    let n = frame.m_dim();
    let ad_m: DMatrix<f64> = ad.view((frame.k_dim(), frame.k_dim()), (n, n)).into_owned();
    let out = (ad_m * t).exp() * gdot;
    let tol = 1e-9 * frame.norm_m(gdot);
    let support = frame.support(&out, tol);
    Ok(Perturbed { gdot: out, support })
}
