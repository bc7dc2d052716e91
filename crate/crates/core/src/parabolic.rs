//! Parabolic splits from painted Dynkin diagrams.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::RootSystemError;
use crate::rootsys::{RootId, RootSystem};

/// A subset of simple roots (0-based Bourbaki indices) spanning the Levi part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PaintedDiagram {
    painted: Vec<usize>,
}

impl PaintedDiagram {
    pub fn borel() -> Self {
        PaintedDiagram::default()
    }

    pub fn new(sys: &RootSystem, mut painted: Vec<usize>) -> Result<Self, RootSystemError> {
        painted.sort_unstable();
        painted.dedup();
        if let Some(&bad) = painted.iter().find(|&&i| i >= sys.rank()) {
            return Err(RootSystemError::BadSimpleIndex {
                index: bad + 1,
                rank: sys.rank(),
            });
        }
        Ok(PaintedDiagram { painted })
    }

    /// From a bitmask over the simple roots.
    pub fn from_mask(sys: &RootSystem, mask: u32) -> Self {
        PaintedDiagram {
            painted: (0..sys.rank()).filter(|i| mask & (1 << i) != 0).collect(),
        }
    }

    /// Parses a comma-separated list of 1-based node indices; the empty string is the Borel case.
    pub fn parse(sys: &RootSystem, s: &str) -> Result<Self, RootSystemError> {
        let mut out = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let i: usize = tok
                .parse()
                .map_err(|_| RootSystemError::NotARoot(format!("bad node index {tok:?}")))?;
            if i == 0 || i > sys.rank() {
                return Err(RootSystemError::BadSimpleIndex {
                    index: i,
                    rank: sys.rank(),
                });
            }
            out.push(i - 1);
        }
        Self::new(sys, out)
    }

    pub fn indices(&self) -> &[usize] {
        &self.painted
    }

    pub fn contains(&self, i: usize) -> bool {
        self.painted.binary_search(&i).is_ok()
    }

    /// `x` for painted nodes, `o` for the rest.
    pub fn render(&self, rank: usize) -> String {
        (0..rank)
            .map(|i| if self.contains(i) { 'x' } else { 'o' })
            .collect()
    }

    /// 1-based comma list, as accepted by [`PaintedDiagram::parse`].
    pub fn to_spec(&self) -> String {
        let parts: Vec<String> = self.painted.iter().map(|i| (i + 1).to_string()).collect();
        parts.join(",")
    }
}

/// The decomposition of the roots into the Levi part and its complement.
#[derive(Clone, Debug)]
pub struct ParabolicSplit {
    sys: Arc<RootSystem>,
    painted: PaintedDiagram,
    in_k: Vec<bool>,
    delta_k: Vec<RootId>,
    delta_m_pos: Vec<RootId>,
}

impl ParabolicSplit {
    /// A root lies in the Levi part iff its simple-root expansion is supported on the painted nodes.
    pub fn new(sys: Arc<RootSystem>, painted: PaintedDiagram) -> Self {
        let in_k: Vec<bool> = sys
            .ids()
            .map(|a| {
                sys.simple_coords(a)
                    .iter()
                    .enumerate()
                    .all(|(i, &c)| c == 0 || painted.contains(i))
            })
            .collect();
        let delta_k = sys.ids().filter(|a| in_k[a.0]).collect();
        let delta_m_pos = sys.positive_ids().filter(|a| !in_k[a.0]).collect();
        ParabolicSplit {
            sys,
            painted,
            in_k,
            delta_k,
            delta_m_pos,
        }
    }

    pub fn system(&self) -> &RootSystem {
        &self.sys
    }

    pub fn system_arc(&self) -> &Arc<RootSystem> {
        &self.sys
    }

    pub fn painted(&self) -> &PaintedDiagram {
        &self.painted
    }

    pub fn is_k(&self, a: RootId) -> bool {
        self.in_k[a.0]
    }

    pub fn is_m_pos(&self, a: RootId) -> bool {
        self.sys.is_positive(a) && !self.in_k[a.0]
    }

    pub fn delta_k(&self) -> &[RootId] {
        &self.delta_k
    }

    pub fn delta_k_pos(&self) -> impl Iterator<Item = RootId> + '_ {
        self.delta_k.iter().copied().filter(|&a| self.sys.is_positive(a))
    }

    pub fn delta_m_pos(&self) -> &[RootId] {
        &self.delta_m_pos
    }

    /// Complex dimension of `G/P`.
    pub fn v(&self) -> usize {
        self.delta_m_pos.len()
    }

    /// Pairs `a, b` in the positive m-part whose sum is a root of the Levi part.
    /// The list is empty for every valid split.
    pub fn verify_m_closure(&self) -> ClosureReport {
        let mut counterexamples = Vec::new();
        for &a in &self.delta_m_pos {
            for &b in &self.delta_m_pos {
                if let Some(s) = self.sys.add_ids(a, b) {
                    if self.in_k[s.0] {
                        counterexamples.push((a, b));
                    }
                }
            }
        }
        ClosureReport { counterexamples }
    }

    pub fn to_doc(&self) -> SplitDoc {
        let label = |a: &RootId| self.sys.coeff_label(*a);
        SplitDoc {
            family: self.sys.family().to_string(),
            rank: self.sys.rank(),
            painted: self.painted.indices().iter().map(|i| i + 1).collect(),
            diagram: self.painted.render(self.sys.rank()),
            v: self.v(),
            delta_k_pos: self.delta_k_pos().map(|a| label(&a)).collect(),
            delta_m_pos: self.delta_m_pos.iter().map(label).collect(),
        }
    }
}

impl fmt::Display for ParabolicSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] v={}",
            self.sys.name(),
            self.painted.render(self.sys.rank()),
            self.v()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub counterexamples: Vec<(RootId, RootId)>,
}

impl ClosureReport {
    pub fn pass(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitDoc {
    pub family: String,
    pub rank: usize,
    pub painted: Vec<usize>,
    pub diagram: String,
    pub v: usize,
    pub delta_k_pos: Vec<String>,
    pub delta_m_pos: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{Family, RootVector};

    fn sys(f: Family, r: usize) -> Arc<RootSystem> {
        Arc::new(RootSystem::build(f, r).unwrap())
    }

    #[test]
    fn borel_and_full() {
        let a3 = sys(Family::A, 3);
        let borel = ParabolicSplit::new(a3.clone(), PaintedDiagram::borel());
        assert_eq!(borel.v(), 6);
        let full = ParabolicSplit::new(a3.clone(), PaintedDiagram::from_mask(&a3, 0b111));
        assert_eq!(full.v(), 0);
    }

    #[test]
    fn projective_space() {
        let a3 = sys(Family::A, 3);
        let p = PaintedDiagram::parse(&a3, "2,3").unwrap();
        assert_eq!(p.render(3), "oxx");
        let split = ParabolicSplit::new(a3.clone(), p);
        let mut got: Vec<RootVector> = split
            .delta_m_pos()
            .iter()
            .map(|&a| a3.vector(a).clone())
            .collect();
        got.sort();
        let mut want: Vec<RootVector> = [[1, -1, 0, 0], [1, 0, -1, 0], [1, 0, 0, -1]]
            .iter()
            .map(|c| RootVector::from_unscaled(c))
            .collect();
        want.sort();
        assert_eq!(got, want);
        assert_eq!(split.v(), 3);
    }

    #[test]
    fn parse_errors() {
        let a3 = sys(Family::A, 3);
        assert!(PaintedDiagram::parse(&a3, "4").is_err());
        assert!(PaintedDiagram::parse(&a3, "0").is_err());
        assert!(PaintedDiagram::parse(&a3, "x").is_err());
        assert_eq!(PaintedDiagram::parse(&a3, "").unwrap(), PaintedDiagram::borel());
        assert_eq!(PaintedDiagram::parse(&a3, "3,1,3").unwrap().to_spec(), "1,3");
    }

    fn check_invariants(split: &ParabolicSplit) {
        let sys = split.system();
        for &a in split.delta_k() {
            for &b in split.delta_k() {
                if let Some(s) = sys.add_ids(a, b) {
                    assert!(split.is_k(s));
                }
            }
        }
        let k_pos = split.delta_k_pos().count();
        assert_eq!(k_pos + split.v(), sys.num_positive());
        assert!(split.delta_m_pos().iter().all(|&a| !split.is_k(a)));
        assert!(split.verify_m_closure().pass());
    }

    #[test]
    fn exhaustive_small_ranks() {
        let systems = [
            (Family::A, 1), (Family::A, 5), (Family::B, 3), (Family::B, 5),
            (Family::C, 3), (Family::C, 5), (Family::D, 4), (Family::D, 5),
        ];
        for (f, r) in systems {
            let s = sys(f, r);
            for mask in 0..(1u32 << r) {
                check_invariants(&ParabolicSplit::new(s.clone(), PaintedDiagram::from_mask(&s, mask)));
            }
        }
    }

    #[test]
    fn dimension_is_monotone_along_chains() {
        let e6 = sys(Family::E, 6);
        let mut prev = usize::MAX;
        let mut mask = 0u32;
        for i in [3, 0, 5, 1, 4, 2] {
            mask |= 1 << i;
            let split = ParabolicSplit::new(e6.clone(), PaintedDiagram::from_mask(&e6, mask));
            check_invariants(&split);
            assert!(split.v() <= prev);
            prev = split.v();
        }
        assert_eq!(prev, 0);
    }
}
