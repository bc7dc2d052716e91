//! Seeded sampling drivers: the Hessian sign dichotomy and the twist-rate search.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::frame::{MVector, RealFormFrame};
use super::hessian::{classify, HessianClass, HessianEvaluator};
use super::map_i::{s_pairs, x_tilde, MapI};
use super::qform::{k_search, q_terms, KSearch, QConfig, QTerms};
use super::quadrature::GaussLegendre;
use crate::index_comb::st_sets;
use crate::rootsys::RootId;

/// Sign threshold for unit-normalized inputs.
pub const SIGN_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DichotomyReport {
    pub frame: String,
    pub samples: usize,
    pub agree: usize,
    pub negative: usize,
    pub zero: usize,
    /// Largest Hessian among samples classified negative.
    pub worst_negative: f64,
    /// Largest `|Hessian|` among samples classified zero.
    pub worst_zero: f64,
}

impl DichotomyReport {
    pub fn pass(&self) -> bool {
        self.agree == self.samples
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn pick_roots(frame: &RealFormFrame, rng: &mut ChaCha8Rng) -> Vec<RootId> {
    let k = rng.random_range(1..=3.min(frame.m_roots().len()));
    frame.m_roots().choose_multiple(rng, k).copied().collect()
}

/// Compares the bracket classification with the sign of the Hessian on sparse
/// random velocities and fields.
pub fn dichotomy(frame: &RealFormFrame, samples: usize, seed: u64) -> DichotomyReport {
    let quad = GaussLegendre::default();
    let mut rep = DichotomyReport {
        frame: frame.name(),
        samples,
        agree: 0,
        negative: 0,
        zero: 0,
        worst_negative: f64::NEG_INFINITY,
        worst_zero: 0.0,
    };
    for s in 0..samples {
        let mut rng = rng_for(seed, s as u64);
        let gs = pick_roots(frame, &mut rng);
        let xs = pick_roots(frame, &mut rng);
        let g = frame.random_unit_on(&mut rng, &gs);
        let x = frame.random_unit_on(&mut rng, &xs);
        let value = HessianEvaluator::new(frame, &g, quad.clone()).value(&x);
        match classify(frame.split(), &xs, &gs) {
            HessianClass::Negative(_) => {
                rep.negative += 1;
                rep.worst_negative = rep.worst_negative.max(value);
                if value < -SIGN_TOL {
                    rep.agree += 1;
                }
            }
            HessianClass::Zero => {
                rep.zero += 1;
                rep.worst_zero = rep.worst_zero.max(value.abs());
                if value.abs() < SIGN_TOL {
                    rep.agree += 1;
                }
            }
        }
    }
    rep
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QSampleReport {
    pub frame: String,
    pub configs: usize,
    /// Configurations with a nonzero S-part.
    pub with_s_part: usize,
    /// Configurations with a nonzero T-part.
    pub with_t_part: usize,
    /// T-roots left out because `[E_b, E_-d] = 0` makes the Hessian vanish on `V_b`.
    pub degenerate_t_roots: usize,
    pub search: Option<KSearch>,
    #[serde(skip)]
    pub terms: Vec<QTerms>,
}

impl QSampleReport {
    pub fn pass(&self) -> bool {
        self.search.is_some_and(|s| s.k > 0.0 && s.margin < 0.0)
    }
}

/// One velocity `X~_d` with its sets, for sampling Q.
struct Velocity<'a> {
    gdot: MVector,
    map_i: MapI,
    t_roots: Vec<RootId>,
    degenerate: usize,
    hess: HessianEvaluator<'a>,
}

fn velocity<'a>(frame: &'a RealFormFrame, d: RootId, rng: &mut ChaCha8Rng) -> Velocity<'a> {
    let split = frame.split();
    let (a, b): (f64, f64) = (rng.sample(StandardNormal), rng.sample(StandardNormal));
    let n = (a * a + b * b).sqrt();
    let (a, b) = (a / n, b / n);
    let gdot = x_tilde(frame, d, a, b).expect("d in m+");
    let gdot = &gdot / frame.norm_m(&gdot);
    let map_i = MapI::new(frame, d, a, b, &s_pairs(frame, d)).expect("valid pairs");
    let all_t = st_sets(split, d).t_set;
    let t_roots: Vec<RootId> = all_t
        .iter()
        .copied()
        .filter(|&t| matches!(classify(split, &[t], &[d]), HessianClass::Negative(_)))
        .collect();
    let degenerate = all_t.len() - t_roots.len();
    let hess = HessianEvaluator::new(frame, &gdot, GaussLegendre::default());
    Velocity {
        gdot,
        map_i,
        t_roots,
        degenerate,
        hess,
    }
}

/// Samples configurations `(x0, y0, w0)` for velocities `X~_d` along long roots
/// of `m+`, and searches for a common twist rate `k` with every `Q < 0`.
pub fn q_sample(frame: &RealFormFrame, configs: usize, seed: u64) -> QSampleReport {
    let sys = frame.split().system();
    let long: Vec<RootId> = frame.m_roots().iter().copied().filter(|&d| sys.is_long(d)).collect();
    let mut rep = QSampleReport {
        frame: frame.name(),
        configs: 0,
        with_s_part: 0,
        with_t_part: 0,
        degenerate_t_roots: 0,
        search: None,
        terms: Vec::new(),
    };
    if long.is_empty() {
        return rep;
    }
    // a handful of velocities, each reused by several configurations
    let per_velocity = 10;
    let mut stream = 0u64;
    while rep.configs < configs {
        let mut rng = rng_for(seed, stream);
        stream += 1;
        let d = *long.choose(&mut rng).expect("nonempty");
        let v = velocity(frame, d, &mut rng);
        rep.degenerate_t_roots += v.degenerate;
        for _ in 0..per_velocity.min(configs - rep.configs) {
            let has_s = !v.map_i.indices().is_empty();
            // 0: S only, 1: T only, 2: both
            let kind = if has_s { rng.random_range(0..3) } else { 1 };
            let zero = MVector::zeros(frame.m_dim());
            let (x0, y0) = if kind == 0 {
                (zero.clone(), zero.clone())
            } else {
                let x = frame.random_unit_on(&mut rng, &v.t_roots);
                let y = frame.random_unit_on(&mut rng, &v.t_roots);
                // occasionally only one of the two T-fields is present
                match rng.random_range(0..4) {
                    0 => (x, zero.clone()),
                    1 => (zero.clone(), y),
                    _ => (x, y),
                }
            };
            let w0 = if kind == 1 {
                zero
            } else {
                let w = v.map_i.project(&frame.random_unit_m(&mut rng));
                &w / frame.norm_m(&w)
            };
            let cfg = QConfig { x0, y0, w0 };
            if cfg.w0.norm() > 0.0 {
                rep.with_s_part += 1;
            }
            if cfg.x0.norm() + cfg.y0.norm() > 0.0 {
                rep.with_t_part += 1;
            }
            rep.terms.push(q_terms(frame, &v.hess, &v.gdot, &v.map_i, &cfg));
            rep.configs += 1;
        }
    }
    rep.search = k_search(&rep.terms);
    rep
}
