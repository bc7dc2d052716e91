//! The compact real form in the basis `i h_j`, `X_a`, `Y_a`, with the normal
//! metric `-kappa` and the complex structure on `m`.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::chevalley::{ChevalleyData, ComplexElement};
use crate::error::GeometryError;
use crate::parabolic::ParabolicSplit;
use crate::rootsys::{RootId, RootSystem};

/// Real coordinates over the `m`-block, `2 |m+|` entries.
pub type MVector = DVector<f64>;
/// Complexified `m`-block coordinates.
pub type CVector = DVector<Complex64>;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisLabel {
    /// `i t_a` for the `j`-th simple root.
    Cartan(usize),
    /// `E_a - E_-a`.
    X(RootId),
    /// `i E_a + i E_-a`.
    Y(RootId),
}

/// Structure constants and metric data over a fixed real basis of the compact form.
#[derive(Clone, Debug)]
pub struct RealFormFrame {
    split: Arc<ParabolicSplit>,
    chev: Arc<ChevalleyData>,
    labels: Vec<BasisLabel>,
    rank: usize,
    k_dim: usize,
    m_roots: Vec<RootId>,
    /// Full-basis index of `X_a` for each positive root id, `usize::MAX` otherwise.
    slot: Vec<usize>,
    /// `table[i]` lists `(j, k, c)` with `[b_i, b_j] = sum c b_k`.
    table: Vec<Vec<(usize, usize, f64)>>,
    gram: DMatrix<f64>,
    j: DMatrix<f64>,
}

impl RealFormFrame {
    pub fn build(split: Arc<ParabolicSplit>, chev: Arc<ChevalleyData>) -> Result<Self, GeometryError> {
        let sys = split.system();
        if chev.system().name() != sys.name() {
            return Err(GeometryError::DimensionMismatch {
                expected: sys.len(),
                got: chev.system().len(),
            });
        }
        let rank = sys.rank();
        let mut labels: Vec<BasisLabel> = (0..rank).map(BasisLabel::Cartan).collect();
        let mut slot = vec![usize::MAX; sys.len()];
        let k_pos: Vec<RootId> = split.delta_k_pos().collect();
        let m_roots = split.delta_m_pos().to_vec();
        for &a in k_pos.iter().chain(&m_roots) {
            slot[a.0] = labels.len();
            labels.push(BasisLabel::X(a));
            labels.push(BasisLabel::Y(a));
        }
        let k_dim = rank + 2 * k_pos.len();

        let amb = sys.ambient_dim();
        let simple_amb = DMatrix::from_fn(amb, rank, |r, c| {
            let v = sys.vector(sys.simples()[c]).unscaled()[r];
            *v.numer() as f64 / *v.denom() as f64
        });
        let gram = DMatrix::from_fn(rank, rank, |r, c| {
            let v = sys.inner_ids(sys.simples()[r], sys.simples()[c]);
            *v.numer() as f64 / *v.denom() as f64
        });
        // Least-squares inverse of the simple-root embedding, for reading back `i h`.
        let sts = simple_amb.transpose() * &simple_amb;
        let pinv = sts
            .try_inverse()
            .expect("simple roots are linearly independent")
            * simple_amb.transpose();

        let elements = basis_elements(sys, &labels);

        let dim = labels.len();
        let mut table = vec![Vec::new(); dim];
        for i in 0..dim {
            for jx in (i + 1)..dim {
                let br = chev.bracket(&elements[i], &elements[jx]);
                if br.is_zero() {
                    continue;
                }
                let mut coords = vec![0.0; dim];
                let im_h = DVector::from_iterator(amb, br.h.iter().map(|z| z.im));
                let c = &pinv * im_h;
                coords[..rank].copy_from_slice(c.as_slice());
                for (&r, z) in &br.e {
                    if !sys.is_positive(r) {
                        continue;
                    }
                    let zneg = br.e.get(&sys.neg(r)).copied().unwrap_or_default();
                    let s = slot[r.0];
                    coords[s] = (z - zneg).re / 2.0;
                    coords[s + 1] = (z + zneg).im / 2.0;
                }
                for (kx, &c) in coords.iter().enumerate() {
                    if c.abs() > 1e-14 {
                        table[i].push((jx, kx, c));
                        table[jx].push((i, kx, -c));
                    }
                }
            }
        }

        let m_dim = 2 * m_roots.len();
        let mut j = DMatrix::zeros(m_dim, m_dim);
        for b in 0..m_roots.len() {
            j[(2 * b + 1, 2 * b)] = 1.0;
            j[(2 * b, 2 * b + 1)] = -1.0;
        }

        Ok(RealFormFrame {
            split,
            chev,
            labels,
            rank,
            k_dim,
            m_roots,
            slot,
            table,
            gram,
            j,
        })
    }

    /// Frame for a split, building the structure constants on the way.
    pub fn from_split(split: Arc<ParabolicSplit>) -> Self {
        let chev = Arc::new(ChevalleyData::build(split.system_arc().clone()));
        Self::build(split, chev).expect("same root system")
    }

    pub fn split(&self) -> &ParabolicSplit {
        &self.split
    }

    pub fn chevalley(&self) -> &ChevalleyData {
        &self.chev
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn k_dim(&self) -> usize {
        self.k_dim
    }

    pub fn m_dim(&self) -> usize {
        2 * self.m_roots.len()
    }

    pub fn m_roots(&self) -> &[RootId] {
        &self.m_roots
    }

    /// Index of `X_a` inside the `m`-block (`Y_a` follows it).
    pub fn m_index(&self, a: RootId) -> Option<usize> {
        let s = *self.slot.get(a.0)?;
        (s != usize::MAX && s >= self.k_dim).then(|| s - self.k_dim)
    }

    /// Index of `X_a` in the full basis, for any positive root.
    pub fn full_index(&self, a: RootId) -> Option<usize> {
        let s = *self.slot.get(a.0)?;
        (s != usize::MAX).then_some(s)
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn j_matrix(&self) -> &DMatrix<f64> {
        &self.j
    }

    /// Number of stored nonzero structure constants.
    pub fn table_len(&self) -> usize {
        self.table.iter().map(Vec::len).sum()
    }

    /// Full metric matrix: the simple-root Gram block, then 2 on every root coordinate.
    pub fn metric(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut g = DMatrix::zeros(n, n);
        g.view_mut((0, 0), (self.rank, self.rank)).copy_from(&self.gram);
        for i in self.rank..n {
            g[(i, i)] = 2.0;
        }
        g
    }

    /// The basis as elements of the complexification.
    pub fn complex_basis(&self) -> Vec<ComplexElement<Complex64>> {
        basis_elements(self.split.system(), &self.labels)
    }

    pub fn bracket(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim());
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for &(j, k, c) in &self.table[i] {
                out[k] += xi * y[j] * c;
            }
        }
        out
    }

    /// Complex-bilinear extension of the bracket.
    pub fn bracket_c(&self, x: &DVector<Complex64>, y: &DVector<Complex64>) -> DVector<Complex64> {
        let mut out = DVector::zeros(self.dim());
        for (i, &xi) in x.iter().enumerate() {
            if xi == Complex64::default() {
                continue;
            }
            for &(j, k, c) in &self.table[i] {
                out[k] += xi * y[j] * c;
            }
        }
        out
    }

    /// Matrix of `ad(x)` on the full algebra.
    pub fn ad(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let n = self.dim();
        let mut out = DMatrix::zeros(n, n);
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for &(j, k, c) in &self.table[i] {
                out[(k, j)] += xi * c;
            }
        }
        out
    }

    pub fn embed_m<T: nalgebra::Scalar + num_traits::Zero>(&self, x: &DVector<T>) -> DVector<T> {
        assert_eq!(x.len(), self.m_dim(), "m-vector length");
        let mut out = DVector::zeros(self.dim());
        out.rows_mut(self.k_dim, self.m_dim()).copy_from(x);
        out
    }

    pub fn embed_k<T: nalgebra::Scalar + num_traits::Zero>(&self, x: &DVector<T>) -> DVector<T> {
        assert_eq!(x.len(), self.k_dim, "k-vector length");
        let mut out = DVector::zeros(self.dim());
        out.rows_mut(0, self.k_dim).copy_from(x);
        out
    }

    pub fn m_part<T: nalgebra::Scalar>(&self, x: &DVector<T>) -> DVector<T> {
        x.rows(self.k_dim, self.m_dim()).into_owned()
    }

    pub fn k_part<T: nalgebra::Scalar>(&self, x: &DVector<T>) -> DVector<T> {
        x.rows(0, self.k_dim).into_owned()
    }

    /// `[x, y]_m` for `x, y` in `m`.
    pub fn bracket_m(&self, x: &MVector, y: &MVector) -> MVector {
        self.m_part(&self.bracket(&self.embed_m(x), &self.embed_m(y)))
    }

    /// `[x, y]_k` for `x, y` in `m`.
    pub fn bracket_k(&self, x: &MVector, y: &MVector) -> DVector<f64> {
        self.k_part(&self.bracket(&self.embed_m(x), &self.embed_m(y)))
    }

    /// Complex `[x, y]` for `x, y` in the complexified `m`, split into `(k, m)` parts.
    pub fn bracket_c_parts(&self, x: &CVector, y: &CVector) -> (CVector, CVector) {
        let full = self.bracket_c(&self.embed_m(x), &self.embed_m(y));
        (self.k_part(&full), self.m_part(&full))
    }

    pub fn j_apply(&self, x: &MVector) -> MVector {
        &self.j * x
    }

    pub fn j_apply_c(&self, x: &CVector) -> CVector {
        self.j.map(|v| Complex64::new(v, 0.0)) * x
    }

    /// `x^{1,0} = (x - i J x) / 2`.
    pub fn pi10(&self, x: &CVector) -> CVector {
        (x - self.j_apply_c(x) * I) * Complex64::new(0.5, 0.0)
    }

    /// `x^{0,1} = (x + i J x) / 2`.
    pub fn pi01(&self, x: &CVector) -> CVector {
        (x + self.j_apply_c(x) * I) * Complex64::new(0.5, 0.0)
    }

    pub fn inner(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        let r = self.rank;
        let hx = x.rows(0, r);
        let hy = y.rows(0, r);
        (hx.transpose() * &self.gram * hy)[(0, 0)]
            + 2.0 * x.rows(r, self.dim() - r).dot(&y.rows(r, self.dim() - r))
    }

    pub fn inner_m(&self, x: &MVector, y: &MVector) -> f64 {
        2.0 * x.dot(y)
    }

    pub fn norm_m(&self, x: &MVector) -> f64 {
        self.inner_m(x, x).sqrt()
    }

    pub fn inner_k(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        self.inner(&self.embed_k(x), &self.embed_k(y))
    }

    pub fn norm2_k(&self, x: &DVector<f64>) -> f64 {
        self.inner_k(x, x)
    }

    /// Complex-bilinear extension of the metric to complexified `k`.
    pub fn inner_k_c(&self, x: &CVector, y: &CVector) -> Complex64 {
        let r = self.rank;
        let mut acc = Complex64::default();
        for a in 0..r {
            for b in 0..r {
                acc += x[a] * y[b] * self.gram[(a, b)];
            }
        }
        for a in r..self.k_dim {
            acc += x[a] * y[a] * 2.0;
        }
        acc
    }

    /// Complex-bilinear extension of the metric to complexified `m`.
    pub fn inner_m_c(&self, x: &CVector, y: &CVector) -> Complex64 {
        x.iter().zip(y.iter()).map(|(a, b)| a * b * 2.0).sum()
    }

    pub fn complexify(x: &MVector) -> CVector {
        x.map(|v| Complex64::new(v, 0.0))
    }

    /// Component of `x` in `V_a` as `(u, w)` with `x_a = u X_a + w Y_a`.
    pub fn component(&self, x: &MVector, a: RootId) -> Option<(f64, f64)> {
        self.m_index(a).map(|i| (x[i], x[i + 1]))
    }

    /// `u X_a + w Y_a` as an m-vector.
    pub fn root_m_vector(&self, a: RootId, u: f64, w: f64) -> Result<MVector, GeometryError> {
        let i = self
            .m_index(a)
            .ok_or_else(|| GeometryError::NotInM(self.split.system().vector(a).to_string()))?;
        let mut out = MVector::zeros(self.m_dim());
        out[i] = u;
        out[i + 1] = w;
        Ok(out)
    }

    /// Roots whose component in `x` exceeds `tol` in absolute value.
    pub fn support(&self, x: &MVector, tol: f64) -> Vec<RootId> {
        self.m_roots
            .iter()
            .enumerate()
            .filter(|(b, _)| x[2 * b].abs() > tol || x[2 * b + 1].abs() > tol)
            .map(|(_, &a)| a)
            .collect()
    }

    /// Gaussian m-vector of unit length.
    pub fn random_unit_m<R: Rng + ?Sized>(&self, rng: &mut R) -> MVector {
        let v = MVector::from_fn(self.m_dim(), |_, _| rng.sample(StandardNormal));
        let n = self.norm_m(&v);
        v / n
    }

    /// Gaussian unit m-vector supported on the given roots.
    pub fn random_unit_on<R: Rng + ?Sized>(&self, rng: &mut R, roots: &[RootId]) -> MVector {
        let mut v = MVector::zeros(self.m_dim());
        for &a in roots {
            if let Some(i) = self.m_index(a) {
                v[i] = rng.sample(StandardNormal);
                v[i + 1] = rng.sample(StandardNormal);
            }
        }
        let n = self.norm_m(&v);
        if n > 0.0 {
            v / n
        } else {
            v
        }
    }

    /// Gaussian vector on the full algebra.
    pub fn random_full<R: Rng + ?Sized>(&self, rng: &mut R) -> DVector<f64> {
        DVector::from_fn(self.dim(), |_, _| rng.sample(StandardNormal))
    }

    /// Label of the frame, e.g. `B3[oxo]`.
    pub fn name(&self) -> String {
        let sys = self.split.system();
        format!("{}[{}]", sys.name(), self.split.painted().render(sys.rank()))
    }
}

fn basis_elements(sys: &RootSystem, labels: &[BasisLabel]) -> Vec<ComplexElement<Complex64>> {
    let amb = sys.ambient_dim();
    labels
        .iter()
        .map(|&l| match l {
            BasisLabel::Cartan(j) => {
                let h = sys
                    .vector(sys.simples()[j])
                    .unscaled()
                    .iter()
                    .map(|v| I * (*v.numer() as f64 / *v.denom() as f64))
                    .collect();
                ComplexElement::from_h(h)
            }
            BasisLabel::X(a) => {
                let mut e = ComplexElement::root_vector(amb, a, Complex64::new(1.0, 0.0));
                e.add_e(sys.neg(a), Complex64::new(-1.0, 0.0));
                e
            }
            BasisLabel::Y(a) => {
                let mut e = ComplexElement::root_vector(amb, a, I);
                e.add_e(sys.neg(a), I);
                e
            }
        })
        .collect()
}
