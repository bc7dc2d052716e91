//! Randomized verification of the pointwise identities, with a JSON report.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::frame::{CVector, MVector, RealFormFrame};
use super::map_i::{p_bound, p_pairing, s_pairs, x_tilde, MapI};
use super::transport::{r_operator, taylor_transport, HatTransport};
use crate::error::GeometryError;
use crate::rootsys::RootId;

/// Residual threshold for the pointwise identities.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Residual threshold for the frame invariants.
pub const FRAME_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Integrability,
    Mel,
    Onemel,
    Twomel,
    Curvature,
    CehChain,
    Transport,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 8] = [
        "integrability",
        "mel",
        "onemel",
        "twomel",
        "curvature",
        "ceh-chain",
        "transport",
        "all",
    ];

    fn parts(self) -> Vec<Suite> {
        use Suite::*;
        match self {
            All => vec![Integrability, Mel, Onemel, Twomel, Curvature, CehChain, Transport],
            s => vec![s],
        }
    }
}

impl FromStr for Suite {
    type Err = GeometryError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use Suite::*;
        Ok(match s {
            "integrability" => Integrability,
            "mel" => Mel,
            "onemel" => Onemel,
            "twomel" => Twomel,
            "curvature" => Curvature,
            "ceh-chain" => CehChain,
            "transport" => Transport,
            "all" => All,
            other => return Err(GeometryError::UnknownSuite(other.to_string())),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = Suite::NAMES
            .iter()
            .position(|n| n.parse::<Suite>().ok() == Some(*self))
            .expect("every suite is named");
        f.write_str(Suite::NAMES[i])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub paper_ref: String,
    pub trials: usize,
    pub tolerance: f64,
    pub max_residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub frame: String,
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<CheckResult>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Check {
    name: &'static str,
    paper_ref: &'static str,
    tolerance: f64,
}

const fn check(name: &'static str, paper_ref: &'static str, tolerance: f64) -> Check {
    Check {
        name,
        paper_ref,
        tolerance,
    }
}

/// Runs `trials` seeded evaluations and keeps the largest residual per check.
/// NaN counts as an infinite residual.
fn run_trials<F>(trials: usize, seed: u64, n: usize, f: F) -> Vec<f64>
where
    F: Fn(&mut ChaCha8Rng) -> Vec<f64> + Sync,
{
    let one = |t: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(t as u64);
        let r = f(&mut rng);
        debug_assert_eq!(r.len(), n);
        r
    };
    let merge = |mut a: Vec<f64>, b: Vec<f64>| {
        for (x, y) in a.iter_mut().zip(b) {
            let y = if y.is_nan() { f64::INFINITY } else { y };
            *x = x.max(y);
        }
        a
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..trials)
            .into_par_iter()
            .map(one)
            .reduce(|| vec![0.0; n], merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..trials).map(one).fold(vec![0.0; n], merge)
    }
}

fn finish(checks: &[Check], trials: usize, maxes: Vec<f64>) -> Vec<CheckResult> {
    checks
        .iter()
        .zip(maxes)
        .map(|(c, m)| CheckResult {
            name: c.name.to_string(),
            paper_ref: c.paper_ref.to_string(),
            trials,
            tolerance: c.tolerance,
            max_residual: m,
            pass: m < c.tolerance,
        })
        .collect()
}

/// Runs one suite (or all of them) on a frame.
pub fn identity_suite(frame: &RealFormFrame, suite: Suite, trials: usize, seed: u64) -> Report {
    let start = Instant::now();
    let mut checks = Vec::new();
    for part in suite.parts() {
        checks.extend(match part {
            Suite::Integrability => integrability(frame, trials, seed),
            Suite::Mel => mel(frame, trials, seed),
            Suite::Onemel => onemel(frame, trials, seed),
            Suite::Twomel => twomel(frame, trials, seed),
            Suite::Curvature => curvature(frame, trials, seed),
            Suite::CehChain => ceh_chain(frame, trials, seed),
            Suite::Transport => transport(frame, trials, seed),
            Suite::All => unreachable!("expanded by parts"),
        });
    }
    Report {
        suite: suite.to_string(),
        frame: frame.name(),
        seed,
        trials,
        checks,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

fn unit_full(frame: &RealFormFrame, rng: &mut ChaCha8Rng) -> DVector<f64> {
    let v = frame.random_full(rng);
    let n = frame.inner(&v, &v).sqrt();
    v / n
}

/// Unit m-vector on one to three random roots of `m+`.
fn sparse_m(frame: &RealFormFrame, rng: &mut ChaCha8Rng) -> MVector {
    let k = rng.random_range(1..=3.min(frame.m_roots().len()));
    let roots: Vec<RootId> = frame.m_roots().choose_multiple(rng, k).copied().collect();
    frame.random_unit_on(rng, &roots)
}

fn c(x: &MVector) -> CVector {
    RealFormFrame::complexify(x)
}

fn cnorm(x: &CVector) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn frame_checks(frame: &RealFormFrame) -> Vec<CheckResult> {
    let basis = frame.complex_basis();
    let g = frame.metric();
    let mut metric_res: f64 = 0.0;
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate().skip(i) {
            let k = -frame.chevalley().pairing(x, y);
            metric_res = metric_res.max((k - Complex64::new(g[(i, j)], 0.0)).norm());
        }
    }
    let n = frame.m_dim();
    let j2 = (frame.j_matrix() * frame.j_matrix() + DMatrix::identity(n, n)).norm();
    let checks = [
        check("frame-metric", "<X_a, X_a> = <Y_a, Y_a> = 2, -kappa on the Cartan block", FRAME_TOL),
        check("frame-j-squared", "J^2 = -Id on m", FRAME_TOL),
    ];
    finish(&checks, 1, vec![metric_res, j2])
}

fn integrability(frame: &RealFormFrame, trials: usize, seed: u64) -> Vec<CheckResult> {
    let checks = [
        check("frame-associativity", "<x, [y, z]> = <[x, y], z>", FRAME_TOL),
        check("frame-jacobi", "[x, [y, z]] + [y, [z, x]] + [z, [x, y]] = 0", FRAME_TOL),
        check("frame-hermitian", "<Jx, Jy> = <x, y> on m", FRAME_TOL),
        check("integrability", "[X,Y]_m + J[JX,Y]_m + J[X,JY]_m - [JX,JY]_m = 0", IDENTITY_TOL),
    ];
    let maxes = run_trials(trials, seed, checks.len(), |rng| {
        let x = unit_full(frame, rng);
        let y = unit_full(frame, rng);
        let z = unit_full(frame, rng);
        let assoc = (frame.inner(&x, &frame.bracket(&y, &z)) - frame.inner(&frame.bracket(&x, &y), &z)).abs();
        let jac = (frame.bracket(&x, &frame.bracket(&y, &z))
            + frame.bracket(&y, &frame.bracket(&z, &x))
            + frame.bracket(&z, &frame.bracket(&x, &y)))
        .norm();
        let a = frame.random_unit_m(rng);
        let b = frame.random_unit_m(rng);
        let (ja, jb) = (frame.j_apply(&a), frame.j_apply(&b));
        let herm = (frame.inner_m(&ja, &jb) - frame.inner_m(&a, &b)).abs();
        let integ = frame.bracket_m(&a, &b)
            + frame.j_apply(&frame.bracket_m(&ja, &b))
            + frame.j_apply(&frame.bracket_m(&a, &jb))
            - frame.bracket_m(&ja, &jb);
        vec![assoc, jac, herm, frame.norm_m(&integ)]
    });
    let mut out = frame_checks(frame);
    out.extend(finish(&checks, trials, maxes));
    out
}

fn mel(frame: &RealFormFrame, trials: usize, seed: u64) -> Vec<CheckResult> {
    let checks = [
        check("mel-a", "[X^{1,0}, Y^{1,0}]_m lies in m^{1,0}", IDENTITY_TOL),
        check("mel-b", "R_Y X = -4 Re pi^{1,0} [X^{1,0}, Y^{0,1}]_m", IDENTITY_TOL),
        check("mel-b-kernel", "R_Y X = 0 iff [X^{1,0}, Y^{0,1}]_m lies in m^{0,1}", IDENTITY_TOL),
        check("mel-c", "[X^{1,0}, Y^{1,0}]_k = 0", IDENTITY_TOL),
        check(
            "mel-d",
            "|[X,Y]_k|^2 + |[JX,Y]_k|^2 = 4 <[X^{1,0},Y^{0,1}]_k, [X^{0,1},Y^{1,0}]_k>",
            IDENTITY_TOL,
        ),
        check("mel-d-equivalence", "[Y,X]_k = [Y,JX]_k = 0 iff [X^{1,0}, Y^{0,1}]_k = 0", 0.5),
    ];
    let maxes = run_trials(trials, seed, checks.len(), |rng| {
        let x = frame.random_unit_m(rng);
        let y = frame.random_unit_m(rng);
        let (x10, y10) = (frame.pi10(&c(&x)), frame.pi10(&c(&y)));
        let (x01, y01) = (frame.pi01(&c(&x)), frame.pi01(&c(&y)));
        let (k_hh, m_hh) = frame.bracket_c_parts(&x10, &y10);
        let a = cnorm(&frame.pi01(&m_hh));
        let (k_ha, m_ha) = frame.bracket_c_parts(&x10, &y01);
        let rx = r_operator(frame, &y) * &x;
        let b = frame.norm_m(&(&rx + frame.pi10(&m_ha).map(|z| 4.0 * z.re)));
        let cc = cnorm(&k_hh);
        let (k_ah, _) = frame.bracket_c_parts(&x01, &y10);
        let lhs = frame.norm2_k(&frame.bracket_k(&x, &y)) + frame.norm2_k(&frame.bracket_k(&frame.j_apply(&x), &y));
        let d = (Complex64::new(lhs, 0.0) - frame.inner_k_c(&k_ha, &k_ah) * 4.0).norm();

        // sparse inputs make the degenerate cases common
        let xs = sparse_m(frame, rng);
        let ys = sparse_m(frame, rng);
        let (xs10, ys01) = (frame.pi10(&c(&xs)), frame.pi01(&c(&ys)));
        let (ks, ms) = frame.bracket_c_parts(&xs10, &ys01);
        let rxs = frame.norm_m(&(r_operator(frame, &ys) * &xs));
        let escapes = cnorm(&frame.pi10(&ms)) > 1e-12;
        let kernel = if escapes == (rxs > 1e-12) { 0.0 } else { 1.0 };
        let real_zero = frame.norm2_k(&frame.bracket_k(&ys, &xs)).sqrt() < 1e-12
            && frame.norm2_k(&frame.bracket_k(&ys, &frame.j_apply(&xs))).sqrt() < 1e-12;
        let equiv = if real_zero == (cnorm(&ks) < 1e-12) { 0.0 } else { 1.0 };
        vec![a, b, kernel, cc, d, equiv]
    });
    finish(&checks, trials, maxes)
}

/// A random element of the kernel of `r`, or zero if the kernel is trivial.
fn kernel_vector(r: &DMatrix<f64>, rng: &mut ChaCha8Rng) -> MVector {
    let n = r.ncols();
    let svd = r.clone().svd(false, true);
    let vt = svd.v_t.expect("requested");
    let smax = svd.singular_values.max().max(1.0);
    let mut out = MVector::zeros(n);
    for (i, &s) in svd.singular_values.iter().enumerate() {
        if s < 1e-9 * smax {
            let w: f64 = rng.sample(StandardNormal);
            out += vt.row(i).transpose() * w;
        }
    }
    let nn = (2.0 * out.dot(&out)).sqrt();
    if nn > 0.0 {
        out / nn
    } else {
        out
    }
}

fn onemel(frame: &RealFormFrame, trials: usize, seed: u64) -> Vec<CheckResult> {
    let checks = [
        check("onemel-a", "R_Y X = 0 implies J[Y,X]_m = [JY,X]_m", IDENTITY_TOL),
        check(
            "onemel-b",
            "R_Y X = 0 implies J[Y,X]_m + [Y,JX]_m = 2i([Y^{1,0},X^{1,0}]_m - [Y^{0,1},X^{0,1}]_m)",
            IDENTITY_TOL,
        ),
    ];
    let maxes = run_trials(trials, seed, checks.len(), |rng| {
        let y = sparse_m(frame, rng);
        let x = kernel_vector(&r_operator(frame, &y), rng);
        let (jx, jy) = (frame.j_apply(&x), frame.j_apply(&y));
        let yx = frame.bracket_m(&y, &x);
        let a = frame.norm_m(&(frame.j_apply(&yx) - frame.bracket_m(&jy, &x)));
        let (_, hh) = frame.bracket_c_parts(&frame.pi10(&c(&y)), &frame.pi10(&c(&x)));
        // 2i(W - conj W) = -4 Im W
        let rhs = hh.map(|z| -4.0 * z.im);
        let b = frame.norm_m(&(frame.j_apply(&yx) + frame.bracket_m(&y, &jx) - rhs));
        vec![a, b]
    });
    finish(&checks, trials, maxes)
}

/// Roots of `m+` that are the sum of a pair in `S`.
fn deltas_with_pairs(frame: &RealFormFrame) -> Vec<(RootId, Vec<(RootId, RootId)>)> {
    frame
        .m_roots()
        .iter()
        .filter_map(|&d| {
            let p = s_pairs(frame, d);
            (!p.is_empty()).then_some((d, p))
        })
        .collect()
}

fn twomel(frame: &RealFormFrame, trials: usize, seed: u64) -> Vec<CheckResult> {
    let checks = [
        check("twomel", "[X~_d, [X~_d, X]_{a,b}]_{a,b} = -(a^2+b^2) c_{a,b}^2 X", IDENTITY_TOL),
        check("map-i-square", "I^2 = -Id on S_0", IDENTITY_TOL),
        check("map-i-anticommute", "IJ = -JI on S_0", IDENTITY_TOL),
        check("map-i-isometry", "|IX| = |X| on S_0", IDENTITY_TOL),
        check(
            "map-i-bracket",
            "<[IX,X], X~_d> = -sum (a^2+b^2)^{1/2} |c_{a,b}| |X_{a,b}|^2",
            IDENTITY_TOL,
        ),
        check("map-i-bound", "<[IX,X], X~_d> <= -N_0 (a^2+b^2)^{1/2} |X|^2", IDENTITY_TOL),
        check("p-pairing-s-part", "P(W, IW) <= -2 N_0 (a^2+b^2)^{1/2} |W|^2", IDENTITY_TOL),
        check("p-pairing-norm", "|P(X,Y)| <= N |X| |Y|", IDENTITY_TOL),
    ];
    let deltas = deltas_with_pairs(frame);
    if deltas.is_empty() {
        // no root of m+ splits inside m+; every check is vacuous
        return finish(&checks, 0, vec![0.0; checks.len()]);
    }
    let maxes = run_trials(trials, seed, checks.len(), |rng| {
        let (d, pairs) = deltas.choose(rng).expect("nonempty");
        let (a, b): (f64, f64) = (rng.sample(StandardNormal), rng.sample(StandardNormal));
        let norm = (a * a + b * b).sqrt();
        let xt = x_tilde(frame, *d, a, b).expect("d in m+");
        let i = MapI::new(frame, *d, a, b, pairs).expect("valid pairs");

        let &(p, q) = pairs.choose(rng).expect("nonempty");
        let x = frame.random_unit_on(rng, &[p, q]);
        let proj = |v: &MVector| {
            let mut o = MVector::zeros(v.len());
            for r in [p, q] {
                let k = frame.m_index(r).expect("in m");
                o[k] = v[k];
                o[k + 1] = v[k + 1];
            }
            o
        };
        let cpq = frame.chevalley().c(p, q).to_f64();
        let inner = proj(&frame.bracket_m(&xt, &x));
        let two = frame.norm_m(&(proj(&frame.bracket_m(&xt, &inner)) + &x * (norm * norm * cpq * cpq)));

        let im = i.restrict(i.matrix());
        let jm = i.restrict(frame.j_matrix());
        let id = DMatrix::identity(im.nrows(), im.ncols());
        let sq = (&im * &im + &id).norm();
        let anti = (&im * &jm + &jm * &im).norm();

        let w = i.project(&frame.random_unit_m(rng));
        let wn = frame.norm_m(&w);
        let w = if wn > 0.0 { w / wn } else { w };
        let iw = i.apply(&w);
        let iso = (frame.norm_m(&iw) - frame.norm_m(&w)).abs();
        let val = frame.inner_m(&frame.bracket_m(&iw, &w), &xt);
        let expected: f64 = pairs
            .iter()
            .map(|&(p, q)| {
                let c = frame.chevalley().c(p, q).to_f64().abs();
                let part: f64 = [p, q]
                    .iter()
                    .map(|&r| {
                        let (u, v) = frame.component(&w, r).expect("in m");
                        2.0 * (u * u + v * v)
                    })
                    .sum();
                norm * c * part
            })
            .sum();
        let bracket = (val + expected).abs();
        let bound = (val + i.n0() * norm * frame.inner_m(&w, &w)).max(0.0);
        let p_s = p_pairing(frame, &w, &iw, &xt);
        let p_bound_res = (p_s + 2.0 * i.n0() * norm * frame.inner_m(&w, &w)).max(0.0);

        let g = frame.random_unit_m(rng);
        let (u, v) = (frame.random_unit_m(rng), frame.random_unit_m(rng));
        let n = p_bound(frame, &g);
        let p_norm = (p_pairing(frame, &u, &v, &g).abs() - n * frame.norm_m(&u) * frame.norm_m(&v)).max(0.0);
        vec![two, sq, anti, iso, bracket, bound, p_bound_res, p_norm]
    });
    finish(&checks, trials, maxes)
}

/// `R(X, Y) Z` for the Levi-Civita connection of the normal metric, written
/// through the connection map `L(X) Y = [X, Y]_m / 2`.
pub fn curvature_tensor(frame: &RealFormFrame, x: &MVector, y: &MVector, z: &MVector) -> MVector {
    let l = |a: &MVector, b: &MVector| frame.bracket_m(a, b) * 0.5;
    let xy_m = frame.bracket_m(x, y);
    let xy_k = frame.bracket_k(x, y);
    let k_term = frame.m_part(&frame.bracket(&frame.embed_k(&xy_k), &frame.embed_m(z)));
    l(x, &l(y, z)) - l(y, &l(x, z)) - l(&xy_m, z) - k_term
}

fn curvature(frame: &RealFormFrame, trials: usize, seed: u64) -> Vec<CheckResult> {
    let checks = [
        check("curvature-formula", "<R(X,Y)Y, X> = |[X,Y]_m|^2 / 4 + |[X,Y]_k|^2", IDENTITY_TOL),
        check("curvature-bianchi", "R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0", IDENTITY_TOL),
        check("curvature-pair-symmetry", "<R(X,Y)Z, W> = <R(Z,W)X, Y>", IDENTITY_TOL),
        check("curvature-nonnegative", "|[X,Y]_m|^2 / 4 + |[X,Y]_k|^2 >= 0", IDENTITY_TOL),
    ];
    let maxes = run_trials(trials, seed, checks.len(), |rng| {
        let x = frame.random_unit_m(rng);
        let y = frame.random_unit_m(rng);
        let z = frame.random_unit_m(rng);
        let w = frame.random_unit_m(rng);
        let sec = frame.inner_m(&curvature_tensor(frame, &x, &y, &y), &x);
        let xy_m = frame.bracket_m(&x, &y);
        let q = 0.25 * frame.inner_m(&xy_m, &xy_m) + frame.norm2_k(&frame.bracket_k(&x, &y));
        let bianchi = curvature_tensor(frame, &x, &y, &z)
            + curvature_tensor(frame, &y, &z, &x)
            + curvature_tensor(frame, &z, &x, &y);
        let pair = frame.inner_m(&curvature_tensor(frame, &x, &y, &z), &w)
            - frame.inner_m(&curvature_tensor(frame, &z, &w, &x), &y);
        vec![(sec - q).abs(), frame.norm_m(&bianchi), pair.abs(), (-q).max(0.0)]
    });
    finish(&checks, trials, maxes)
}

/// `|[g, x]_m|^2 / 4 + |[g, x]_k|^2`.
fn rq(frame: &RealFormFrame, g: &MVector, x: &MVector) -> f64 {
    let m = frame.bracket_m(g, x);
    0.25 * frame.inner_m(&m, &m) + frame.norm2_k(&frame.bracket_k(g, x))
}

fn ceh_chain(frame: &RealFormFrame, trials: usize, seed: u64) -> Vec<CheckResult> {
    let checks = [
        check(
            "ceh-pointwise",
            "|A + [g,X]_m/2|^2 + |JA + [g,JX]_m/2|^2 - Rq(g,X) - Rq(g,JX) = 2|A|^2 + <A, [g,X]_m - J[g,JX]_m> - |[X,g]_k|^2 - |[JX,g]_k|^2",
            IDENTITY_TOL,
        ),
        check(
            "ceh-r-form",
            "[g,X]_m - J[g,JX]_m + [Jg,JX]_m + J[Jg,X]_m = 2 R_g X",
            IDENTITY_TOL,
        ),
        check(
            "ceh-boundary",
            "<J[A,JX]_m + J[X,JA]_m, g> = <A, [Jg,JX]_m + J[Jg,X]_m>",
            IDENTITY_TOL,
        ),
        check("r-commutes-j", "R_g J = J R_g", IDENTITY_TOL),
        check("r-orthogonal-velocity", "<R_g X, g> = 0", IDENTITY_TOL),
    ];
    let maxes = run_trials(trials, seed, checks.len(), |rng| {
        let g = frame.random_unit_m(rng);
        let x = frame.random_unit_m(rng);
        let a = frame.random_unit_m(rng);
        let (jg, jx, ja) = (frame.j_apply(&g), frame.j_apply(&x), frame.j_apply(&a));
        let gx = frame.bracket_m(&g, &x);
        let gjx = frame.bracket_m(&g, &jx);
        let u = &a + &gx * 0.5;
        let v = &ja + &gjx * 0.5;
        let lhs = frame.inner_m(&u, &u) + frame.inner_m(&v, &v) - rq(frame, &g, &x) - rq(frame, &g, &jx);
        let rhs = 2.0 * frame.inner_m(&a, &a) + frame.inner_m(&a, &(&gx - frame.j_apply(&gjx)))
            - frame.norm2_k(&frame.bracket_k(&x, &g))
            - frame.norm2_k(&frame.bracket_k(&jx, &g));
        let r = r_operator(frame, &g);
        let rx = &r * &x;
        let chain = &gx - frame.j_apply(&gjx) + frame.bracket_m(&jg, &jx) + frame.j_apply(&frame.bracket_m(&jg, &x))
            - &rx * 2.0;
        let bl = frame.inner_m(
            &(frame.j_apply(&frame.bracket_m(&a, &jx)) + frame.j_apply(&frame.bracket_m(&x, &ja))),
            &g,
        );
        let br = frame.inner_m(
            &a,
            &(frame.bracket_m(&jg, &jx) + frame.j_apply(&frame.bracket_m(&jg, &x))),
        );
        let comm = (&r * frame.j_matrix() - frame.j_matrix() * &r).norm();
        vec![
            (lhs - rhs).abs(),
            frame.norm_m(&chain),
            (bl - br).abs(),
            comm,
            frame.inner_m(&rx, &g).abs(),
        ]
    });
    finish(&checks, trials, maxes)
}

fn transport(frame: &RealFormFrame, trials: usize, seed: u64) -> Vec<CheckResult> {
    let checks = [
        check("transport-orthogonality", "<X(t), g> = <X(0), g>", IDENTITY_TOL),
        check("transport-j", "exp(-tR/2) J = J exp(-tR/2)", IDENTITY_TOL),
        check("transport-group", "exp(-sR/2) exp(-tR/2) = exp(-(s+t)R/2)", IDENTITY_TOL),
        check("transport-kernel", "R X = 0 implies X(t) = X", IDENTITY_TOL),
        check("transport-series", "exp(-tR/2) agrees with its Taylor series", IDENTITY_TOL),
    ];
    let maxes = run_trials(trials, seed, checks.len(), |rng| {
        let g = if rng.random_bool(0.5) {
            frame.random_unit_m(rng)
        } else {
            sparse_m(frame, rng)
        };
        let tr = HatTransport::new(frame, &g);
        let t: f64 = rng.random_range(0.0..=1.0);
        let s: f64 = rng.random_range(0.0..=1.0);
        let mt = tr.at(t);
        let x = frame.random_unit_m(rng);
        let orth = (frame.inner_m(&(&mt * &x), &g) - frame.inner_m(&x, &g)).abs();
        let jc = (&mt * frame.j_matrix() - frame.j_matrix() * &mt).norm();
        let group = (tr.at(s) * &mt - tr.at(s + t)).norm();
        let k = kernel_vector(tr.r_matrix(), rng);
        let fixed = frame.norm_m(&(&mt * &k - &k));
        let series = (&mt - taylor_transport(tr.r_matrix(), t, 60)).norm();
        vec![orth, jc, group, fixed, series]
    });
    finish(&checks, trials, maxes)
}
