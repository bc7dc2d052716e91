//! Structure constants of the complex simple Lie algebra attached to a root system.
//!
//! Two normalizations are kept side by side:
//!
//! * the integral Chevalley constants `N(a, b)` with `|N(a, b)| = p + 1`,
//!   built by the extraspecial-pair algorithm;
//! * the constants `c(a, b)` of the rescaled basis `E_a = lambda_a e_a`,
//!   `lambda_a^2 = (a, a) / 2`, for which the invariant pairing satisfies
//!   `kappa(E_a, E_-a) = 1`, `[E_a, E_-a] = t_a`, and the cyclic identity
//!   `c(a, b) = c(b, -a-b)` holds. These lie in `Q(sqrt 2)`.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::Zero;

use crate::rootsys::{Rational, RootId, RootSystem};
use crate::surd::Surd;

/// Coefficient field for Lie algebra elements.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_surd(s: Surd) -> Self;
}

impl Scalar for Surd {
    fn from_surd(s: Surd) -> Self {
        s
    }
}

impl Scalar for Complex64 {
    fn from_surd(s: Surd) -> Self {
        Complex64::new(s.to_f64(), 0.0)
    }
}

#[derive(Clone, Debug)]
pub struct ChevalleyData {
    sys: Arc<RootSystem>,
    integral: Vec<i32>,
    unit: Vec<Surd>,
}

impl ChevalleyData {
    pub fn build(sys: Arc<RootSystem>) -> ChevalleyData {
        let n = sys.len();
        let mut table = vec![0i32; n * n];
        for xi in sys.positive_ids() {
            let pairs: Vec<(RootId, RootId)> = sys
                .positive_ids()
                .filter_map(|r| {
                    let s = sys.sub_ids(xi, r)?;
                    (sys.is_positive(s) && r < s).then_some((r, s))
                })
                .collect();
            let Some(&(r1, s1)) = pairs.first() else {
                continue;
            };
            let p = sys.string_down(r1, s1);
            set_pair(&mut table, n, r1, s1, p + 1);
            let n1 = p + 1;
            for &(r, s) in &pairs[1..] {
                let mut acc = Rational::zero();
                if let Some(d) = sys.sub_ids(s, r1) {
                    let a = general(&sys, &table, s, sys.neg(r1))
                        * general(&sys, &table, r, sys.neg(s1));
                    acc += Rational::from_integer(a as i64) / sys.norm2(d);
                }
                if let Some(d) = sys.sub_ids(r, r1) {
                    let b = general(&sys, &table, sys.neg(r1), r)
                        * general(&sys, &table, s, sys.neg(s1));
                    acc += Rational::from_integer(b as i64) / sys.norm2(d);
                }
                let val = sys.norm2(xi) * acc / Rational::from_integer(n1 as i64);
                assert!(val.is_integer(), "non-integral structure constant");
                set_pair(&mut table, n, r, s, *val.numer() as i32);
            }
        }
        let mut integral = vec![0i32; n * n];
        for a in sys.ids() {
            for b in sys.ids() {
                if sys.add_ids(a, b).is_some() {
                    integral[a.0 * n + b.0] = general(&sys, &table, a, b);
                }
            }
        }
        let lambda: Vec<Surd> = sys
            .ids()
            .map(|a| {
                Surd::sqrt_of(sys.norm2(a) / Rational::from_integer(2))
                    .expect("root length outside Q(sqrt 2)")
            })
            .collect();
        let mut unit = vec![Surd::zero(); n * n];
        for a in sys.ids() {
            for b in sys.ids() {
                if let Some(s) = sys.add_ids(a, b) {
                    unit[a.0 * n + b.0] = Surd::from_int(integral[a.0 * n + b.0] as i64)
                        * lambda[a.0]
                        * lambda[b.0]
                        / lambda[s.0];
                }
            }
        }
        ChevalleyData {
            sys,
            integral,
            unit,
        }
    }

    pub fn system(&self) -> &RootSystem {
        &self.sys
    }

    pub fn system_arc(&self) -> &Arc<RootSystem> {
        &self.sys
    }

    /// Integral Chevalley constant `N(a, b)`; zero when `a + b` is not a root.
    pub fn integral(&self, a: RootId, b: RootId) -> i32 {
        self.integral[a.0 * self.sys.len() + b.0]
    }

    /// Constant `c(a, b)` of the unit-pairing basis; zero when `a + b` is not a root.
    pub fn c(&self, a: RootId, b: RootId) -> Surd {
        self.unit[a.0 * self.sys.len() + b.0]
    }

    /// Coroot `t_a` in ambient (unscaled) coordinates; it is the metric dual of `a`.
    pub fn coroot(&self, a: RootId) -> Vec<Rational> {
        self.sys.vector(a).unscaled()
    }

    /// Smallest `|c(a, b)|` over the given unordered pairs, or over every
    /// pair summing to a root when `pairs` is empty.
    pub fn n0_constant(&self, pairs: &[(RootId, RootId)]) -> Surd {
        let vals: Vec<Surd> = if pairs.is_empty() {
            self.unit.iter().filter(|c| !c.is_zero()).map(|c| c.abs()).collect()
        } else {
            pairs.iter().map(|&(a, b)| self.c(a, b).abs()).collect()
        };
        vals.into_iter().min().unwrap_or_else(|| Surd::from_int(1))
    }

    /// All ordered pairs whose sum is a root, with both constants.
    pub fn table(&self) -> Vec<StructureConstant> {
        let mut out = Vec::new();
        for a in self.sys.ids() {
            for b in self.sys.ids() {
                if self.sys.add_ids(a, b).is_some() {
                    out.push(StructureConstant {
                        alpha: a,
                        beta: b,
                        integral: self.integral(a, b),
                        unit: self.c(a, b),
                    });
                }
            }
        }
        out
    }

    /// CSV with columns `alpha,beta,c`; roots in simple-root coordinates.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("alpha,beta,c\n");
        for row in self.table() {
            s.push_str(&format!(
                "{},{},{}\n",
                self.sys.coeff_label(row.alpha),
                self.sys.coeff_label(row.beta),
                row.unit
            ));
        }
        s
    }

    /// `(b, h)` for an ambient vector `h`.
    pub fn root_on<S: Scalar>(&self, b: RootId, h: &[S]) -> S {
        let scale = Surd::from_rational(self.sys.norm_scale());
        let mut acc = S::zero();
        for (bi, hi) in self.sys.vector(b).unscaled().into_iter().zip(h) {
            if !bi.is_zero() {
                acc = acc + S::from_surd(Surd::from_rational(bi)) * hi.clone();
            }
        }
        acc * S::from_surd(scale)
    }

    /// Lie bracket of two elements.
    pub fn bracket<S: Scalar>(&self, x: &ComplexElement<S>, y: &ComplexElement<S>) -> ComplexElement<S> {
        let mut out = ComplexElement::zero(self.sys.ambient_dim());
        for (&b, yb) in &y.e {
            let w = self.root_on(b, &x.h);
            out.add_e(b, w * yb.clone());
        }
        for (&a, xa) in &x.e {
            let w = self.root_on(a, &y.h);
            out.add_e(a, -(w * xa.clone()));
        }
        for (&a, xa) in &x.e {
            for (&b, yb) in &y.e {
                let coeff = xa.clone() * yb.clone();
                if b == self.sys.neg(a) {
                    for (i, ti) in self.coroot(a).into_iter().enumerate() {
                        if !ti.is_zero() {
                            out.h[i] = out.h[i].clone()
                                + coeff.clone() * S::from_surd(Surd::from_rational(ti));
                        }
                    }
                } else if let Some(s) = self.sys.add_ids(a, b) {
                    out.add_e(s, coeff * S::from_surd(self.c(a, b)));
                }
            }
        }
        out.prune();
        out
    }

    /// Invariant pairing with `kappa(E_a, E_-a) = 1` and `kappa(t_u, t_v) = (u, v)`.
    pub fn pairing<S: Scalar>(&self, x: &ComplexElement<S>, y: &ComplexElement<S>) -> S {
        let scale = S::from_surd(Surd::from_rational(self.sys.norm_scale()));
        let mut acc = S::zero();
        for (a, b) in x.h.iter().zip(&y.h) {
            acc = acc + a.clone() * b.clone();
        }
        acc = acc * scale;
        for (&a, xa) in &x.e {
            if let Some(yb) = y.e.get(&self.sys.neg(a)) {
                acc = acc + xa.clone() * yb.clone();
            }
        }
        acc
    }
}

fn set_pair(table: &mut [i32], n: usize, r: RootId, s: RootId, v: i32) {
    table[r.0 * n + s.0] = v;
    table[s.0 * n + r.0] = -v;
}

/// `N(x, y)` for arbitrary roots, reduced to already-known positive pairs via
/// `N(-x, -y) = -N(x, y)` and `N(x, y) / (z, z) = N(y, -z) / (x, x)` for `x + y = z`.
fn general(sys: &RootSystem, table: &[i32], x: RootId, y: RootId) -> i32 {
    let n = sys.len();
    let Some(z) = sys.add_ids(x, y) else {
        return 0;
    };
    match (sys.is_positive(x), sys.is_positive(y)) {
        (true, true) => table[x.0 * n + y.0],
        (false, false) => -general(sys, table, sys.neg(x), sys.neg(y)),
        (false, true) => -general(sys, table, y, x),
        (true, false) => {
            if sys.is_positive(z) {
                let inner = general(sys, table, sys.neg(y), z);
                let v = -(sys.norm2(z) / sys.norm2(x)) * Rational::from_integer(inner as i64);
                debug_assert!(v.is_integer());
                *v.numer() as i32
            } else {
                -general(sys, table, sys.neg(x), sys.neg(y))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstant {
    pub alpha: RootId,
    pub beta: RootId,
    pub integral: i32,
    pub unit: Surd,
}

/// Element `h + sum_a z_a E_a` of the complexified algebra, with `h = t_v`
/// stored through the ambient vector `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexElement<S> {
    pub h: Vec<S>,
    pub e: BTreeMap<RootId, S>,
}

impl<S: Scalar> ComplexElement<S> {
    pub fn zero(ambient_dim: usize) -> Self {
        ComplexElement {
            h: vec![S::zero(); ambient_dim],
            e: BTreeMap::new(),
        }
    }

    pub fn root_vector(ambient_dim: usize, a: RootId, coeff: S) -> Self {
        let mut x = Self::zero(ambient_dim);
        x.add_e(a, coeff);
        x
    }

    pub fn from_h(h: Vec<S>) -> Self {
        ComplexElement {
            h,
            e: BTreeMap::new(),
        }
    }

    pub fn add_e(&mut self, a: RootId, coeff: S) {
        let slot = self.e.entry(a).or_insert_with(S::zero);
        *slot = slot.clone() + coeff;
    }

    pub fn coeff(&self, a: RootId) -> S {
        self.e.get(&a).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.h.iter().all(|x| x.is_zero()) && self.e.values().all(|x| x.is_zero())
    }

    fn prune(&mut self) {
        self.e.retain(|_, v| !v.is_zero());
    }

    pub fn plus(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (a, b) in out.h.iter_mut().zip(&o.h) {
            *a = a.clone() + b.clone();
        }
        for (&r, v) in &o.e {
            out.add_e(r, v.clone());
        }
        out.prune();
        out
    }

    pub fn scaled(&self, k: S) -> Self {
        let mut out = self.clone();
        for a in out.h.iter_mut() {
            *a = a.clone() * k.clone();
        }
        for v in out.e.values_mut() {
            *v = v.clone() * k.clone();
        }
        out.prune();
        out
    }

    pub fn minus(&self, o: &Self) -> Self {
        let mut neg = o.clone();
        for a in neg.h.iter_mut() {
            *a = -a.clone();
        }
        for v in neg.e.values_mut() {
            *v = -v.clone();
        }
        self.plus(&neg)
    }
}
