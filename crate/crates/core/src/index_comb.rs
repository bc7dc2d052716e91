//! Root combinatorics behind the index bound: superminimal roots, the sets
//! `S` and `T`, the two admissibility conditions, and the invariant `ell`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{IndexError, RootSystemError};
use crate::parabolic::ParabolicSplit;
use crate::rootsys::{Family, RootId, RootSystem, RootVector};

/// Support of the initial velocity, with the coefficient pair `(a, b)` of
/// each root-space component `a X + b J X`.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaSet {
    support: Vec<RootId>,
    coeffs: BTreeMap<RootId, (f64, f64)>,
}

impl GammaSet {
    pub fn new(split: &ParabolicSplit, entries: &[(RootId, (f64, f64))]) -> Result<Self, IndexError> {
        if entries.is_empty() {
            return Err(IndexError::InvalidGamma);
        }
        let mut coeffs = BTreeMap::new();
        for &(r, (a, b)) in entries {
            if !split.is_m_pos(r) || a * a + b * b <= 0.0 || !(a.is_finite() && b.is_finite()) {
                return Err(IndexError::InvalidGamma);
            }
            coeffs.insert(r, (a, b));
        }
        Ok(GammaSet {
            support: coeffs.keys().copied().collect(),
            coeffs,
        })
    }

    /// Support only, every coefficient pair set to `(1, 0)`.
    pub fn from_support(split: &ParabolicSplit, roots: &[RootId]) -> Result<Self, IndexError> {
        let entries: Vec<_> = roots.iter().map(|&r| (r, (1.0, 0.0))).collect();
        Self::new(split, &entries)
    }

    /// Parses `root:a,b;root:a,b` with roots as simple-coordinate labels such as `0110`.
    /// A bare `root` means coefficients `(1, 0)`.
    pub fn parse(split: &ParabolicSplit, spec: &str) -> Result<Self, IndexError> {
        let sys = split.system();
        let mut entries = Vec::new();
        for item in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (root, ab) = match item.split_once(':') {
                Some((r, ab)) => (r, Some(ab)),
                None => (item, None),
            };
            let id = sys.parse_coeff_label(root)?;
            let pair = match ab {
                None => (1.0, 0.0),
                Some(ab) => {
                    let (a, b) = ab
                        .split_once(',')
                        .ok_or_else(|| RootSystemError::NotARoot(format!("bad coefficients {ab:?}")))?;
                    let parse = |s: &str| {
                        s.trim()
                            .parse::<f64>()
                            .map_err(|_| RootSystemError::NotARoot(format!("bad number {s:?}")))
                    };
                    (parse(a)?, parse(b)?)
                }
            };
            entries.push((id, pair));
        }
        Self::new(split, &entries)
    }

    pub fn support(&self) -> &[RootId] {
        &self.support
    }

    pub fn contains(&self, r: RootId) -> bool {
        self.coeffs.contains_key(&r)
    }

    pub fn coeffs(&self, r: RootId) -> Option<(f64, f64)> {
        self.coeffs.get(&r).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (RootId, (f64, f64))> + '_ {
        self.coeffs.iter().map(|(&r, &c)| (r, c))
    }
}

/// Every element of `gamma` that is superminimal: nothing in `gamma` precedes
/// it, and no `a` in `gamma` sits two steps below it (`a < b < delta`).
pub fn superminimal_candidates(split: &ParabolicSplit, gamma: &GammaSet) -> Vec<RootId> {
    let sys = split.system();
    gamma
        .support()
        .iter()
        .copied()
        .filter(|&d| {
            let minimal = gamma.support().iter().all(|&l| !sys.precedes(l, d));
            minimal
                && sys.positive_ids().all(|b| {
                    !sys.precedes(b, d)
                        || gamma.support().iter().all(|&a| !sys.precedes(a, b))
                })
        })
        .collect()
}

/// Picks a superminimal root, preferring long roots, then the
/// lexicographically smallest scaled coordinates.
pub fn superminimal(split: &ParabolicSplit, gamma: &GammaSet) -> Result<RootId, IndexError> {
    let sys = split.system();
    superminimal_candidates(split, gamma)
        .into_iter()
        .min_by(|&a, &b| {
            (!sys.is_long(a), sys.vector(a)).cmp(&(!sys.is_long(b), sys.vector(b)))
        })
        .ok_or(IndexError::NotFound)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StSets {
    pub delta: RootId,
    pub s_set: Vec<RootId>,
    pub t_set: Vec<RootId>,
    pub ell: usize,
    pub h: usize,
}

impl StSets {
    fn new(delta: RootId, mut s_set: Vec<RootId>, mut t_set: Vec<RootId>) -> Self {
        s_set.sort();
        s_set.dedup();
        t_set.sort();
        t_set.dedup();
        let h = s_set.len() / 2;
        StSets {
            delta,
            ell: h + t_set.len(),
            h,
            s_set,
            t_set,
        }
    }
}

/// `S = { a in m+ : a < delta, delta - a in m+ }` and
/// `T = { b in m+ : b >= delta } u { a in m+ : delta - a in k }`.
pub fn st_sets(split: &ParabolicSplit, delta: RootId) -> StSets {
    let sys = split.system();
    let m = split.delta_m_pos();
    let s_set = m
        .iter()
        .copied()
        .filter(|&a| {
            sys.precedes(a, delta) && sys.sub_ids(delta, a).is_some_and(|d| split.is_m_pos(d))
        })
        .collect();
    let t_set = m
        .iter()
        .copied()
        .filter(|&b| {
            b == delta
                || sys.precedes(delta, b)
                || sys.sub_ids(delta, b).is_some_and(|d| split.is_k(d))
        })
        .collect();
    StSets::new(delta, s_set, t_set)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Condition1Witness {
    pub beta0: RootId,
    pub beta1: RootId,
    pub lambda: RootId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Condition2Witness {
    pub alpha: RootId,
    pub beta: RootId,
}

/// For distinct `b0, b1` in `T \ {delta}` and `l` in `gamma`: `b0 - delta != b1 - l`.
pub fn condition1(
    split: &ParabolicSplit,
    gamma: &GammaSet,
    delta: RootId,
    t_set: &[RootId],
) -> Result<(), Condition1Witness> {
    let sys = split.system();
    let rest: Vec<RootId> = t_set.iter().copied().filter(|&b| b != delta).collect();
    let dv = sys.vector(delta);
    for &b0 in &rest {
        let lhs = sys.vector(b0).minus(dv);
        for &b1 in &rest {
            if b0 == b1 {
                continue;
            }
            for &l in gamma.support() {
                if lhs == sys.vector(b1).minus(sys.vector(l)) {
                    return Err(Condition1Witness {
                        beta0: b0,
                        beta1: b1,
                        lambda: l,
                    });
                }
            }
        }
    }
    Ok(())
}

/// For `a, b` in `S`: `a + b` lies in `gamma` exactly when it equals `delta`.
pub fn condition2(
    split: &ParabolicSplit,
    gamma: &GammaSet,
    delta: RootId,
    s_set: &[RootId],
) -> Result<(), Condition2Witness> {
    let sys = split.system();
    for &a in s_set {
        for &b in s_set {
            let sum = sys.add_ids(a, b);
            let in_gamma = sum.is_some_and(|s| gamma.contains(s));
            let is_delta = sum == Some(delta);
            if in_gamma != is_delta {
                return Err(Condition2Witness { alpha: a, beta: b });
            }
        }
    }
    Ok(())
}

/// `m + n - (v - ell) - v + 1`, unclamped.
pub fn index_lower_bound(m: i64, n: i64, v: i64, ell: i64) -> i64 {
    m + n - (v - ell) - v + 1
}

/// Minimal complex dimension `m + ell + h - v + n - v + 1` of the test space.
pub fn test_space_dimension(m: i64, n: i64, v: i64, ell: i64, h: i64) -> i64 {
    m + ell + h - v + n - v + 1
}

/// Number of unordered pairs `{a, b}` of roots with `a + b = delta`, plus one.
pub fn counting_identity_rhs(sys: &RootSystem, delta: RootId) -> usize {
    sys.w_pair_count(delta) + 1
}

/// The two documented situations in which `ell` improves to `2r - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EllImprovement {
    /// Type B with every long simple root painted.
    BAllLongPainted,
    /// Type C, maximal parabolic whose Levi factor contains `Sp(r-1)`; `G/P` is `CP^(2r-1)`.
    CSpecialMaximal,
}

impl EllImprovement {
    pub fn family(self) -> Family {
        match self {
            EllImprovement::BAllLongPainted => Family::B,
            EllImprovement::CSpecialMaximal => Family::C,
        }
    }

    /// Painted nodes (0-based) of the parabolic this improvement refers to.
    pub fn painted(self, rank: usize) -> Vec<usize> {
        match self {
            EllImprovement::BAllLongPainted => (0..rank - 1).collect(),
            EllImprovement::CSpecialMaximal => (1..rank).collect(),
        }
    }

    /// The improvement that applies to a split, if any.
    pub fn for_split(split: &ParabolicSplit) -> Option<Self> {
        let sys = split.system();
        [EllImprovement::BAllLongPainted, EllImprovement::CSpecialMaximal]
            .into_iter()
            .find(|imp| {
                imp.family() == sys.family()
                    && split.painted().indices() == imp.painted(sys.rank()).as_slice()
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EllRow {
    pub family: Family,
    pub rank: usize,
    pub ell: usize,
    pub improvement: Option<EllImprovement>,
}

/// Tabulated value of `ell`, optionally with one of the two improvements.
pub fn ell_table(
    family: Family,
    rank: usize,
    improvement: Option<EllImprovement>,
) -> Result<EllRow, IndexError> {
    family.check_rank(rank)?;
    let base = match family {
        Family::A => rank,
        Family::D => 2 * rank - 3,
        Family::B => 2 * rank - 2,
        Family::C => rank,
        Family::E => match rank {
            6 => 11,
            7 => 17,
            _ => 29,
        },
    };
    let ell = match improvement {
        None => base,
        Some(imp) if imp.family() == family => 2 * rank - 1,
        Some(imp) => {
            return Err(IndexError::Roots(RootSystemError::UnsupportedFamily(format!(
                "{imp:?} does not apply to {family}{rank}"
            ))))
        }
    };
    Ok(EllRow {
        family,
        rank,
        ell,
        improvement,
    })
}

/// Representative systems for the headline table: one row per family, and one per E rank.
pub fn headline_rows() -> Vec<(Family, &'static str)> {
    vec![
        (Family::A, "r"),
        (Family::D, "2r-3"),
        (Family::B, "2r-2"),
        (Family::C, "r"),
        (Family::E, "11, 17, 29"),
    ]
}

fn unit_vec(sys: &RootSystem, terms: &[(usize, i32)]) -> RootVector {
    let mut c = vec![0; sys.ambient_dim()];
    for &(i, k) in terms {
        c[i] += k;
    }
    RootVector::from_unscaled(&c)
}

fn root_of(sys: &RootSystem, terms: &[(usize, i32)]) -> Option<RootId> {
    sys.id_of(&unit_vec(sys, terms))
}

/// Index `i` (0-based) with `r = e_i`, for short roots of type B.
fn b_short_index(sys: &RootSystem, r: RootId) -> Option<usize> {
    let c = sys.vector(r).coords();
    let nz: Vec<usize> = (0..c.len()).filter(|&i| c[i] != 0).collect();
    (nz.len() == 1 && c[nz[0]] > 0).then(|| nz[0])
}

/// For type B: the short root `e_i` of `gamma` with largest `i`.
pub fn b_case_delta(split: &ParabolicSplit, gamma: &GammaSet) -> Option<RootId> {
    let sys = split.system();
    gamma
        .support()
        .iter()
        .copied()
        .filter_map(|r| b_short_index(sys, r).map(|i| (i, r)))
        .max()
        .map(|(_, r)| r)
}

/// Sets for type B with short `delta = e_i`: `T` is the union
/// `{e_a : a <= i} u {e_i + e_a : a < i} u {e_b : i < b, e_i - e_b in k+}`
/// restricted to the positive m-part, and `S` follows the general definition.
pub fn b_case_sets(split: &ParabolicSplit, delta: RootId) -> Result<StSets, IndexError> {
    let sys = split.system();
    let label = |r: RootId| sys.vector(r).to_string();
    if sys.family() != Family::B {
        return Err(IndexError::UnsupportedDelta(format!("{} is not of type B", sys.name())));
    }
    let i = b_short_index(sys, delta).ok_or_else(|| IndexError::UnsupportedDelta(label(delta)))?;
    let r = sys.rank();
    for k in (i + 1)..r {
        let ek = root_of(sys, &[(k, 1)]).expect("e_k is a root of B_r");
        if split.is_k(ek) {
            return Err(IndexError::HypothesisViolated(format!(
                "{} lies in the Levi part",
                label(ek)
            )));
        }
    }
    let mut t = Vec::new();
    for a in 0..=i {
        t.extend(root_of(sys, &[(a, 1)]));
    }
    for a in 0..i {
        t.extend(root_of(sys, &[(i, 1), (a, 1)]));
    }
    for b in (i + 1)..r {
        let diff = root_of(sys, &[(i, 1), (b, -1)]).expect("e_i - e_b is a root");
        if split.is_k(diff) {
            t.extend(root_of(sys, &[(b, 1)]));
        }
    }
    t.retain(|&x| split.is_m_pos(x));
    let general = st_sets(split, delta);
    Ok(StSets::new(delta, general.s_set, t))
}

/// Shape of a short positive root of type C.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CShape {
    Minus(usize, usize),
    Plus(usize, usize),
}

fn c_shape(sys: &RootSystem, r: RootId) -> Option<CShape> {
    let c = sys.vector(r).coords();
    let nz: Vec<usize> = (0..c.len()).filter(|&i| c[i] != 0).collect();
    match *nz.as_slice() {
        [i, j] if c[i] > 0 && c[j] < 0 => Some(CShape::Minus(i, j)),
        [i, j] if c[i] > 0 && c[j] > 0 => Some(CShape::Plus(i, j)),
        _ => None,
    }
}

/// For type C: a superminimal short root, preferring the shape `e_i - e_j`.
pub fn c_case_delta(split: &ParabolicSplit, gamma: &GammaSet) -> Option<RootId> {
    let sys = split.system();
    let cands = superminimal_candidates(split, gamma);
    let pick = |want_minus: bool| {
        cands
            .iter()
            .copied()
            .filter(|&r| matches!(c_shape(sys, r), Some(CShape::Minus(..))) == want_minus)
            .filter(|&r| c_shape(sys, r).is_some())
            .min_by(|&a, &b| sys.vector(a).cmp(sys.vector(b)))
    };
    pick(true).or_else(|| pick(false))
}

/// Starred sets for type C with short `delta`: `T* = T n (U u V)` and `S* = S n V`.
pub fn c_case_starred_sets(split: &ParabolicSplit, delta: RootId) -> Result<StSets, IndexError> {
    let sys = split.system();
    if sys.family() != Family::C {
        return Err(IndexError::UnsupportedDelta(format!("{} is not of type C", sys.name())));
    }
    let shape = c_shape(sys, delta)
        .ok_or_else(|| IndexError::UnsupportedDelta(sys.vector(delta).to_string()))?;
    let r = sys.rank();
    let mut u = vec![delta];
    let mut v = Vec::new();
    match shape {
        CShape::Minus(i, j) => {
            for k in 0..i {
                u.extend(root_of(sys, &[(k, 1), (j, -1)]));
            }
            for k in (j + 1)..r {
                u.extend(root_of(sys, &[(i, 1), (k, -1)]));
            }
            u.extend(root_of(sys, &[(i, 2)]));
            for l in (i + 1)..j {
                v.extend(root_of(sys, &[(l, 1), (j, -1)]));
                v.extend(root_of(sys, &[(i, 1), (l, -1)]));
            }
        }
        CShape::Plus(i, j) => {
            for k in 0..i {
                u.extend(root_of(sys, &[(k, 1), (j, 1)]));
            }
            u.extend(root_of(sys, &[(i, 2)]));
            for l in (i + 1)..r {
                if l != j {
                    v.extend(root_of(sys, &[(j, 1), (l, 1)]));
                    v.extend(root_of(sys, &[(i, 1), (l, -1)]));
                }
            }
        }
    }
    let general = st_sets(split, delta);
    let t = general
        .t_set
        .iter()
        .copied()
        .filter(|x| u.contains(x) || v.contains(x))
        .collect();
    let s = general.s_set.iter().copied().filter(|x| v.contains(x)).collect();
    Ok(StSets::new(delta, s, t))
}

/// Serializable summary of an `ell` computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EllReport {
    pub system: String,
    pub diagram: String,
    pub v: usize,
    pub gamma: Vec<String>,
    pub delta: String,
    pub delta_is_long: bool,
    pub s_set: Vec<String>,
    pub t_set: Vec<String>,
    pub ell: usize,
    pub h: usize,
    pub condition1: ConditionVerdict,
    pub condition2: ConditionVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionVerdict {
    pub pass: bool,
    pub witness: Vec<String>,
}

impl EllReport {
    pub fn build(split: &ParabolicSplit, gamma: &GammaSet, sets: &StSets) -> Self {
        let sys = split.system();
        let lbl = |r: &RootId| sys.coeff_label(*r);
        let c1 = condition1(split, gamma, sets.delta, &sets.t_set);
        let c2 = condition2(split, gamma, sets.delta, &sets.s_set);
        EllReport {
            system: sys.name(),
            diagram: split.painted().render(sys.rank()),
            v: split.v(),
            gamma: gamma.support().iter().map(lbl).collect(),
            delta: lbl(&sets.delta),
            delta_is_long: sys.is_long(sets.delta),
            s_set: sets.s_set.iter().map(lbl).collect(),
            t_set: sets.t_set.iter().map(lbl).collect(),
            ell: sets.ell,
            h: sets.h,
            condition1: ConditionVerdict {
                pass: c1.is_ok(),
                witness: c1
                    .err()
                    .map(|w| vec![lbl(&w.beta0), lbl(&w.beta1), lbl(&w.lambda)])
                    .unwrap_or_default(),
            },
            condition2: ConditionVerdict {
                pass: c2.is_ok(),
                witness: c2
                    .err()
                    .map(|w| vec![lbl(&w.alpha), lbl(&w.beta)])
                    .unwrap_or_default(),
            },
        }
    }
}
