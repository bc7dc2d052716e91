//! Exact root systems for the classical families and E6, E7, E8.
//!
//! Ambient coordinates are stored as integers multiplied by a global factor
//! of two, so the half-integer spinor roots of the E series stay exact.
//! Inner products are rationals normalized so that every long root has
//! squared length 2.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::RootSystemError;

pub type Rational = Ratio<i64>;

/// Global factor applied to every ambient coordinate.
pub const COORD_SCALE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
        }
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self, Family::A | Family::D | Family::E)
    }

    /// Checks that `(self, rank)` names a supported system.
    pub fn check_rank(self, rank: usize) -> Result<(), RootSystemError> {
        let ok = match self {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok && rank <= MAX_RANK {
            Ok(())
        } else {
            Err(RootSystemError::UnsupportedFamily(format!(
                "{}{rank}",
                self.letter()
            )))
        }
    }
}

/// Upper bound on the classical ranks we are willing to enumerate.
pub const MAX_RANK: usize = 24;

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Family {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            other => Err(RootSystemError::UnsupportedFamily(other.to_string())),
        }
    }
}

/// A vector in the ambient Euclidean space, coordinates scaled by [`COORD_SCALE`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootVector {
    coords: Vec<i32>,
}

impl RootVector {
    /// Builds a vector from already-scaled coordinates.
    pub fn from_scaled(coords: Vec<i32>) -> Self {
        RootVector { coords }
    }

    /// Builds a vector from integral (unscaled) ambient coordinates.
    pub fn from_unscaled(coords: &[i32]) -> Self {
        RootVector {
            coords: coords.iter().map(|c| c * COORD_SCALE).collect(),
        }
    }

    pub fn coords(&self) -> &[i32] {
        &self.coords
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn zip_with(&self, other: &RootVector, f: impl Fn(i32, i32) -> i32) -> RootVector {
        debug_assert_eq!(self.coords.len(), other.coords.len());
        RootVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn plus(&self, other: &RootVector) -> RootVector {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn minus(&self, other: &RootVector) -> RootVector {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> RootVector {
        RootVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scaled_by(&self, k: i32) -> RootVector {
        RootVector {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    /// Dot product of the scaled coordinates.
    pub fn scaled_dot(&self, other: &RootVector) -> i64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| a as i64 * b as i64)
            .sum()
    }

    /// Unscaled ambient coordinates as rationals.
    pub fn unscaled(&self) -> Vec<Rational> {
        self.coords
            .iter()
            .map(|&c| Rational::new(c as i64, COORD_SCALE as i64))
            .collect()
    }
}

impl fmt::Display for RootVector {
    /// Renders as a combination of the standard basis, e.g. `e1-e2`, `2e3`,
    /// or `1/2(+e1-e2+...)` for half-integral vectors.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let integral = self.coords.iter().all(|c| c % COORD_SCALE == 0);
        if integral {
            let mut first = true;
            for (i, &c) in self.coords.iter().enumerate() {
                let c = c / COORD_SCALE;
                if c == 0 {
                    continue;
                }
                let sign = if c < 0 { "-" } else if first { "" } else { "+" };
                let mag = c.abs();
                if mag == 1 {
                    write!(f, "{sign}e{}", i + 1)?;
                } else {
                    write!(f, "{sign}{mag}e{}", i + 1)?;
                }
                first = false;
            }
            Ok(())
        } else {
            write!(f, "1/2(")?;
            for (i, &c) in self.coords.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let sign = if c < 0 { "-" } else { "+" };
                if c.abs() == 1 {
                    write!(f, "{sign}e{}", i + 1)?;
                } else {
                    write!(f, "{sign}{}e{}", c.abs(), i + 1)?;
                }
            }
            write!(f, ")")
        }
    }
}

/// Index of a root inside its [`RootSystem`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootId(pub usize);

const NO_ROOT: u16 = u16::MAX;

/// A finite crystallographic root system with a chosen base.
///
/// Roots are indexed so that the positive roots come first, sorted by height
/// and then lexicographically, followed by their negatives in the same order.
#[derive(Clone, Debug)]
pub struct RootSystem {
    family: Family,
    rank: usize,
    ambient_dim: usize,
    norm_scale: Rational,
    roots: Vec<RootVector>,
    n_pos: usize,
    simples: Vec<RootId>,
    simple_coords: Vec<Vec<i32>>,
    index: HashMap<RootVector, RootId>,
    sums: Vec<u16>,
}

impl RootSystem {
    pub fn build(family: Family, rank: usize) -> Result<RootSystem, RootSystemError> {
        family.check_rank(rank)?;
        let (ambient_dim, raw_roots, raw_simples) = match family {
            Family::A => type_a(rank),
            Family::B => type_b(rank),
            Family::C => type_c(rank),
            Family::D => type_d(rank),
            Family::E => type_e(rank),
        };
        let norm_scale = if family == Family::C {
            Rational::new(1, 2)
        } else {
            Rational::one()
        };
        Ok(Self::assemble(
            family,
            rank,
            ambient_dim,
            norm_scale,
            raw_roots,
            raw_simples,
        ))
    }

    fn assemble(
        family: Family,
        rank: usize,
        ambient_dim: usize,
        norm_scale: Rational,
        raw_roots: Vec<RootVector>,
        raw_simples: Vec<RootVector>,
    ) -> RootSystem {
        let expander = SimpleExpander::new(&raw_simples);
        let mut pos: Vec<(i32, RootVector, Vec<i32>)> = raw_roots
            .into_iter()
            .filter_map(|r| {
                let c = expander.expand(&r);
                if c.iter().all(|&x| x >= 0) {
                    Some((c.iter().sum(), r, c))
                } else {
                    None
                }
            })
            .collect();
        pos.sort();
        let n_pos = pos.len();
        let mut roots = Vec::with_capacity(2 * n_pos);
        let mut simple_coords = Vec::with_capacity(2 * n_pos);
        for (_, r, c) in &pos {
            roots.push(r.clone());
            simple_coords.push(c.clone());
        }
        for (_, r, c) in &pos {
            roots.push(r.neg());
            simple_coords.push(c.iter().map(|x| -x).collect());
        }
        let index: HashMap<RootVector, RootId> = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), RootId(i)))
            .collect();
        let simples = raw_simples.iter().map(|s| index[s]).collect();
        let n = roots.len();
        let mut sums = vec![NO_ROOT; n * n];
        for i in 0..n {
            for j in 0..n {
                if let Some(k) = index.get(&roots[i].plus(&roots[j])) {
                    sums[i * n + j] = k.0 as u16;
                }
            }
        }
        RootSystem {
            family,
            rank,
            ambient_dim,
            norm_scale,
            roots,
            n_pos,
            simples,
            simple_coords,
            index,
            sums,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// The factor `s` with `(x, y) = s * (unscaled x . unscaled y)`.
    pub fn norm_scale(&self) -> Rational {
        self.norm_scale
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn ids(&self) -> impl Iterator<Item = RootId> + '_ {
        (0..self.roots.len()).map(RootId)
    }

    pub fn positive_ids(&self) -> impl Iterator<Item = RootId> + '_ {
        (0..self.n_pos).map(RootId)
    }

    pub fn simples(&self) -> &[RootId] {
        &self.simples
    }

    pub fn vector(&self, id: RootId) -> &RootVector {
        &self.roots[id.0]
    }

    pub fn vectors(&self) -> &[RootVector] {
        &self.roots
    }

    /// Coefficients of a root over the simple roots.
    pub fn simple_coords(&self, id: RootId) -> &[i32] {
        &self.simple_coords[id.0]
    }

    pub fn height(&self, id: RootId) -> i32 {
        self.simple_coords[id.0].iter().sum()
    }

    pub fn is_positive(&self, id: RootId) -> bool {
        id.0 < self.n_pos
    }

    pub fn neg(&self, id: RootId) -> RootId {
        if id.0 < self.n_pos {
            RootId(id.0 + self.n_pos)
        } else {
            RootId(id.0 - self.n_pos)
        }
    }

    /// Makes a root positive by negating it if necessary.
    pub fn abs(&self, id: RootId) -> RootId {
        if self.is_positive(id) {
            id
        } else {
            self.neg(id)
        }
    }

    pub fn id_of(&self, v: &RootVector) -> Option<RootId> {
        self.index.get(v).copied()
    }

    pub fn is_root(&self, v: &RootVector) -> bool {
        self.index.contains_key(v)
    }

    /// Looks a root up by its simple-root coefficients.
    pub fn id_from_simple_coords(&self, coeffs: &[i32]) -> Option<RootId> {
        if coeffs.len() != self.rank {
            return None;
        }
        self.simple_coords
            .iter()
            .position(|c| c.as_slice() == coeffs)
            .map(RootId)
    }

    /// Sum of two vectors if it is a root.
    pub fn add(&self, x: &RootVector, y: &RootVector) -> Option<RootVector> {
        if x.ambient_dim() != self.ambient_dim || y.ambient_dim() != self.ambient_dim {
            return None;
        }
        let s = x.plus(y);
        self.is_root(&s).then_some(s)
    }

    pub fn add_ids(&self, a: RootId, b: RootId) -> Option<RootId> {
        let k = self.sums[a.0 * self.roots.len() + b.0];
        (k != NO_ROOT).then_some(RootId(k as usize))
    }

    pub fn sub_ids(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.add_ids(a, self.neg(b))
    }

    pub fn inner(&self, x: &RootVector, y: &RootVector) -> Result<Rational, RootSystemError> {
        if x.ambient_dim() != self.ambient_dim || y.ambient_dim() != self.ambient_dim {
            return Err(RootSystemError::DimensionMismatch {
                expected: self.ambient_dim,
                got: x.ambient_dim().max(y.ambient_dim()),
            });
        }
        Ok(self.scaled_to_form(x.scaled_dot(y)))
    }

    fn scaled_to_form(&self, dot: i64) -> Rational {
        let s2 = (COORD_SCALE * COORD_SCALE) as i64;
        self.norm_scale * Rational::new(dot, s2)
    }

    pub fn inner_ids(&self, a: RootId, b: RootId) -> Rational {
        self.scaled_to_form(self.roots[a.0].scaled_dot(&self.roots[b.0]))
    }

    /// Normalized squared length `(a, a)`.
    pub fn norm2(&self, a: RootId) -> Rational {
        self.inner_ids(a, a)
    }

    pub fn is_long(&self, a: RootId) -> bool {
        self.norm2(a) == Rational::from_integer(2)
    }

    /// `a < d` in the (non-partial) order: `d - a` is a positive root.
    pub fn precedes(&self, a: RootId, d: RootId) -> bool {
        self.sub_ids(d, a).is_some_and(|x| self.is_positive(x))
    }

    /// Cartan integer `2 (b, a) / (a, a)`.
    pub fn cartan(&self, b: RootId, a: RootId) -> i64 {
        let num = 2 * self.roots[b.0].scaled_dot(&self.roots[a.0]);
        let den = self.roots[a.0].scaled_dot(&self.roots[a.0]);
        debug_assert_eq!(num % den, 0);
        num / den
    }

    /// Reflection of `b` through the hyperplane orthogonal to `a`.
    pub fn reflect(&self, b: RootId, a: RootId) -> RootId {
        let n = self.cartan(b, a) as i32;
        let v = self.roots[b.0].minus(&self.roots[a.0].scaled_by(n));
        self.index[&v]
    }

    /// Largest `p >= 0` with `b - p a` a root (the downward `a`-string length through `b`).
    pub fn string_down(&self, a: RootId, b: RootId) -> i32 {
        let step = &self.roots[a.0];
        let mut v = self.roots[b.0].clone();
        let mut p = 0;
        loop {
            v = v.minus(step);
            if self.is_root(&v) {
                p += 1;
            } else {
                return p;
            }
        }
    }

    /// Largest `q >= 0` with `b + q a` a root.
    pub fn string_up(&self, a: RootId, b: RootId) -> i32 {
        self.string_down(self.neg(a), b)
    }

    /// Checks that the reflection orbit of one long root is exactly the set of long roots.
    pub fn long_orbit_is_transitive(&self) -> bool {
        let long: HashSet<RootId> = self.ids().filter(|&a| self.is_long(a)).collect();
        let Some(&start) = long.iter().min() else {
            return false;
        };
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(r) = queue.pop_front() {
            for &s in &self.simples {
                let img = self.reflect(r, s);
                if seen.insert(img) {
                    queue.push_back(img);
                }
            }
        }
        seen == long
    }

    /// `W_d = { a in roots : d - a is a root }`.
    pub fn w_set(&self, d: RootId) -> Vec<RootId> {
        self.ids().filter(|&a| self.sub_ids(d, a).is_some()).collect()
    }

    /// Number of unordered pairs `{a, b}` of roots with `a + b = d`.
    pub fn w_pair_count(&self, d: RootId) -> usize {
        self.ids()
            .filter(|&a| self.sub_ids(d, a).is_some_and(|b| a < b))
            .count()
    }

    /// Renders a root as a string of simple-root coefficients, e.g. `0110`.
    pub fn coeff_label(&self, id: RootId) -> String {
        let c = self.simple_coords(id);
        if c.iter().all(|&x| (0..10).contains(&x)) {
            c.iter().map(|x| x.to_string()).collect()
        } else {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }

    /// Parses a positive root given as a digit string of simple-root coefficients.
    pub fn parse_coeff_label(&self, s: &str) -> Result<RootId, RootSystemError> {
        let s = s.trim();
        let coeffs: Option<Vec<i32>> = if s.starts_with('[') && s.ends_with(']') {
            s[1..s.len() - 1]
                .split(',')
                .map(|t| t.trim().parse().ok())
                .collect()
        } else {
            s.chars().map(|ch| ch.to_digit(10).map(|d| d as i32)).collect()
        };
        coeffs
            .and_then(|c| self.id_from_simple_coords(&c))
            .ok_or_else(|| RootSystemError::NotARoot(s.to_string()))
    }

    pub fn to_doc(&self) -> RootSystemDoc {
        RootSystemDoc {
            family: self.family.to_string(),
            rank: self.rank,
            scale: self.norm_scale.to_string(),
            simples: self
                .simples
                .iter()
                .map(|&s| self.roots[s.0].coords.clone())
                .collect(),
            positives: self.roots[..self.n_pos]
                .iter()
                .map(|r| r.coords.clone())
                .collect(),
        }
    }
}

/// Serialized form of a root system. Coordinates are scaled by [`COORD_SCALE`];
/// `scale` is the rational normalization factor of the inner product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemDoc {
    pub family: String,
    pub rank: usize,
    pub scale: String,
    pub simples: Vec<Vec<i32>>,
    pub positives: Vec<Vec<i32>>,
}

/// Exact left inverse of the simple-root matrix.
struct SimpleExpander {
    simples: Vec<RootVector>,
    gram_inv: Vec<Vec<Rational>>,
}

impl SimpleExpander {
    fn new(simples: &[RootVector]) -> Self {
        let n = simples.len();
        let gram: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Rational::from_integer(simples[i].scaled_dot(&simples[j])))
                    .collect()
            })
            .collect();
        SimpleExpander {
            simples: simples.to_vec(),
            gram_inv: invert(gram),
        }
    }

    fn expand(&self, v: &RootVector) -> Vec<i32> {
        let rhs: Vec<Rational> = self
            .simples
            .iter()
            .map(|s| Rational::from_integer(s.scaled_dot(v)))
            .collect();
        self.gram_inv
            .iter()
            .map(|row| {
                let c: Rational = row.iter().zip(&rhs).map(|(a, b)| a * b).sum();
                assert!(c.is_integer(), "root is not an integral combination of simples");
                *c.numer() as i32
            })
            .collect()
    }
}

/// Gauss-Jordan inverse over the rationals. Panics on a singular matrix.
pub(crate) fn invert(mut m: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("singular matrix");
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p = m[col][col];
        for j in 0..n {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for j in 0..n {
                    let a = m[col][j];
                    let b = inv[col][j];
                    m[r][j] -= f * a;
                    inv[r][j] -= f * b;
                }
            }
        }
    }
    inv
}

fn unit(dim: usize, i: usize, k: i32) -> Vec<i32> {
    let mut v = vec![0; dim];
    v[i] = k;
    v
}

fn combo(dim: usize, terms: &[(usize, i32)]) -> RootVector {
    let mut v = vec![0; dim];
    for &(i, k) in terms {
        v[i] += k;
    }
    RootVector::from_unscaled(&v)
}

type Raw = (usize, Vec<RootVector>, Vec<RootVector>);

fn pm_pairs(dim: usize, n: usize) -> Vec<RootVector> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for si in [1, -1] {
                for sj in [1, -1] {
                    out.push(combo(dim, &[(i, si), (j, sj)]));
                }
            }
        }
    }
    out
}

fn chain_simples(dim: usize, n: usize) -> Vec<RootVector> {
    (0..n).map(|i| combo(dim, &[(i, 1), (i + 1, -1)])).collect()
}

fn type_a(r: usize) -> Raw {
    let dim = r + 1;
    let mut roots = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                roots.push(combo(dim, &[(i, 1), (j, -1)]));
            }
        }
    }
    (dim, roots, chain_simples(dim, r))
}

fn type_b(r: usize) -> Raw {
    let mut roots = pm_pairs(r, r);
    for i in 0..r {
        roots.push(RootVector::from_unscaled(&unit(r, i, 1)));
        roots.push(RootVector::from_unscaled(&unit(r, i, -1)));
    }
    let mut simples = chain_simples(r, r - 1);
    simples.push(RootVector::from_unscaled(&unit(r, r - 1, 1)));
    (r, roots, simples)
}

fn type_c(r: usize) -> Raw {
    let mut roots = pm_pairs(r, r);
    for i in 0..r {
        roots.push(RootVector::from_unscaled(&unit(r, i, 2)));
        roots.push(RootVector::from_unscaled(&unit(r, i, -2)));
    }
    let mut simples = chain_simples(r, r - 1);
    simples.push(RootVector::from_unscaled(&unit(r, r - 1, 2)));
    (r, roots, simples)
}

fn type_d(r: usize) -> Raw {
    let roots = pm_pairs(r, r);
    let mut simples = chain_simples(r, r - 1);
    simples.push(combo(r, &[(r - 2, 1), (r - 1, 1)]));
    (r, roots, simples)
}

/// E8 roots in the even-coordinate model, with the standard simple roots.
fn e8_raw() -> (Vec<RootVector>, Vec<RootVector>) {
    let mut roots = pm_pairs(8, 8);
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            let coords = (0..8)
                .map(|i| if mask & (1 << i) != 0 { -1 } else { 1 })
                .collect();
            roots.push(RootVector::from_scaled(coords));
        }
    }
    let mut simples = vec![
        RootVector::from_scaled(vec![1, -1, -1, -1, -1, -1, -1, 1]),
        combo(8, &[(0, 1), (1, 1)]),
        combo(8, &[(0, -1), (1, 1)]),
    ];
    for i in 1..6 {
        simples.push(combo(8, &[(i, -1), (i + 1, 1)]));
    }
    (roots, simples)
}

/// E6 and E7 are the root subsystems of E8 spanned by the first 6 or 7 simple roots.
fn type_e(r: usize) -> Raw {
    let (roots, simples) = e8_raw();
    if r == 8 {
        return (8, roots, simples);
    }
    let expander = SimpleExpander::new(&simples);
    let roots = roots
        .into_iter()
        .filter(|v| expander.expand(v)[r..].iter().all(|&c| c == 0))
        .collect();
    (8, roots, simples[..r].to_vec())
}
