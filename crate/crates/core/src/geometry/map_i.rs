//! The map `I` on the S-part and the pairing `P` that couples it to the velocity.

use nalgebra::DMatrix;

use super::frame::{MVector, RealFormFrame};
use crate::error::GeometryError;
use crate::index_comb::st_sets;
use crate::rootsys::RootId;

/// Unordered pairs `{a, d - a}` in `S`, each listed once with the smaller id first.
pub fn s_pairs(frame: &RealFormFrame, delta: RootId) -> Vec<(RootId, RootId)> {
    let split = frame.split();
    let sys = split.system();
    st_sets(split, delta)
        .s_set
        .iter()
        .filter_map(|&a| {
            let b = sys.sub_ids(delta, a)?;
            (a < b).then_some((a, b))
        })
        .collect()
}

/// `a X_d + b J X_d`.
pub fn x_tilde(frame: &RealFormFrame, delta: RootId, a: f64, b: f64) -> Result<MVector, GeometryError> {
    frame.root_m_vector(delta, a, b)
}

/// `I X = [X~_d, X]_{a,b} / (sqrt(a^2+b^2) |c_{a,b}|)` on `S_0 = sum V_a + V_b`.
#[derive(Clone, Debug)]
pub struct MapI {
    delta: RootId,
    coeffs: (f64, f64),
    pairs: Vec<(RootId, RootId)>,
    /// m-coordinates spanned by `S_0`.
    indices: Vec<usize>,
    /// Acts on the whole m-block, zero off `S_0`.
    matrix: DMatrix<f64>,
    n0: f64,
}

impl MapI {
    pub fn new(
        frame: &RealFormFrame,
        delta: RootId,
        a: f64,
        b: f64,
        pairs: &[(RootId, RootId)],
    ) -> Result<Self, GeometryError> {
        if a * a + b * b == 0.0 {
            return Err(GeometryError::DegenerateCoefficients);
        }
        let sys = frame.split().system();
        let norm = (a * a + b * b).sqrt();
        let xt = x_tilde(frame, delta, a, b)?;
        let n = frame.m_dim();
        let mut matrix = DMatrix::zeros(n, n);
        let mut indices = Vec::new();
        for &(p, q) in pairs {
            if sys.add_ids(p, q) != Some(delta) {
                return Err(GeometryError::NotInM(format!(
                    "{} + {} is not {}",
                    sys.vector(p),
                    sys.vector(q),
                    sys.vector(delta)
                )));
            }
            let ip = frame.m_index(p).ok_or_else(|| GeometryError::NotInM(sys.vector(p).to_string()))?;
            let iq = frame.m_index(q).ok_or_else(|| GeometryError::NotInM(sys.vector(q).to_string()))?;
            let block = [ip, ip + 1, iq, iq + 1];
            let c = frame.chevalley().c(p, q).to_f64().abs();
            for &col in &block {
                let mut e = MVector::zeros(n);
                e[col] = 1.0;
                let br = frame.bracket_m(&xt, &e);
                for &row in &block {
                    matrix[(row, col)] = br[row] / (norm * c);
                }
            }
            indices.extend(block);
        }
        let n0 = frame.chevalley().n0_constant(pairs).to_f64();
        Ok(MapI {
            delta,
            coeffs: (a, b),
            pairs: pairs.to_vec(),
            indices,
            matrix,
            n0,
        })
    }

    pub fn delta(&self) -> RootId {
        self.delta
    }

    pub fn coeffs(&self) -> (f64, f64) {
        self.coeffs
    }

    pub fn pairs(&self) -> &[(RootId, RootId)] {
        &self.pairs
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Smallest `|c_{a,b}|` over the pairs.
    pub fn n0(&self) -> f64 {
        self.n0
    }

    pub fn apply(&self, x: &MVector) -> MVector {
        &self.matrix * x
    }

    /// Orthogonal projection onto `S_0`.
    pub fn project(&self, x: &MVector) -> MVector {
        let mut out = MVector::zeros(x.len());
        for &i in &self.indices {
            out[i] = x[i];
        }
        out
    }

    /// Restriction of a matrix on `m` to the `S_0` coordinates.
    pub fn restrict(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        let k = self.indices.len();
        DMatrix::from_fn(k, k, |r, c| m[(self.indices[r], self.indices[c])])
    }
}

/// `P(x, y) = <[y, x]_m - [J y, J x]_m, g>`.
pub fn p_pairing(frame: &RealFormFrame, x: &MVector, y: &MVector, gdot: &MVector) -> f64 {
    let jx = frame.j_apply(x);
    let jy = frame.j_apply(y);
    let v = frame.bracket_m(y, x) - frame.bracket_m(&jy, &jx);
    frame.inner_m(&v, gdot)
}

/// Matrix `B` with `P(x, y) = y^T B x` in m-coordinates.
pub fn p_matrix(frame: &RealFormFrame, gdot: &MVector) -> DMatrix<f64> {
    // <[y, x], g> = -<y, [g, x]>, so the first term is -2 ad(g)
    let full = frame.ad(&frame.embed_m(gdot));
    let a = full
        .view((frame.k_dim(), frame.k_dim()), (frame.m_dim(), frame.m_dim()))
        .into_owned();
    let j = frame.j_matrix();
    (j.transpose() * &a * j - &a) * 2.0
}

/// Smallest `N` with `|P(x, y)| <= N |x| |y|`: the metric operator norm of `P`.
pub fn p_bound(frame: &RealFormFrame, gdot: &MVector) -> f64 {
    let b = p_matrix(frame, gdot);
    // |x| = sqrt(2) ||x|| in coordinates
    b.singular_values().max() / 2.0
}
