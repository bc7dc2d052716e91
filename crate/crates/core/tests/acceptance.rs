//! Acceptance run: one line per criterion, nonzero exit on any failure.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use flagmorse::geometry::{
    adjoint_perturb, dichotomy, identity_suite, q_sample, RealFormFrame, Suite,
};
use flagmorse::index_comb::{
    b_case_delta, b_case_sets, c_case_delta, c_case_starred_sets, condition1, condition2,
    ell_table, index_lower_bound, st_sets, superminimal, superminimal_candidates, GammaSet,
};
use flagmorse::{
    ChevalleyData, ComplexElement, Family, IndexError, PaintedDiagram, ParabolicSplit,
    RootId, RootSystem, Surd,
};
use num_traits::Zero;

struct Outcome {
    id: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
}

fn sys(f: Family, r: usize) -> Arc<RootSystem> {
    Arc::new(RootSystem::build(f, r).expect("supported"))
}

/// Every supported system of rank at most 8.
fn all_systems() -> Vec<(Family, usize)> {
    let mut out = Vec::new();
    for r in 1..=8 {
        out.push((Family::A, r));
    }
    for r in 2..=8 {
        out.push((Family::B, r));
    }
    for r in 3..=8 {
        out.push((Family::C, r));
    }
    for r in 4..=8 {
        out.push((Family::D, r));
    }
    for r in 6..=8 {
        out.push((Family::E, r));
    }
    out
}

fn long_roots(s: &RootSystem) -> Vec<RootId> {
    s.positive_ids().filter(|&d| s.is_long(d)).collect()
}

fn borel(s: &Arc<RootSystem>) -> ParabolicSplit {
    ParabolicSplit::new(s.clone(), PaintedDiagram::borel())
}

fn ac1() -> (bool, String) {
    let mut cases = Vec::new();
    for r in 1..=8 {
        cases.push((Family::A, r, r));
    }
    for r in 4..=8 {
        cases.push((Family::D, r, 2 * r - 3));
    }
    cases.extend([(Family::E, 6, 11), (Family::E, 7, 17), (Family::E, 8, 29)]);
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut deltas = 0;
    for (f, r, want) in cases {
        let s = sys(f, r);
        let split = borel(&s);
        let table = ell_table(f, r, None).expect("supported").ell;
        if table != want {
            bad.push(format!("{f}{r} table {table}"));
        }
        for d in long_roots(&s) {
            deltas += 1;
            let got = st_sets(&split, d).ell;
            if got != want {
                bad.push(format!("{f}{r} {} -> {got}", s.vector(d)));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    (
        bad.is_empty() && secs < 60.0,
        format!("{deltas} long roots, {} mismatches, {secs:.2}s (< 60s) {}", bad.len(), bad.join("; ")),
    )
}

fn ac2() -> (bool, String) {
    let mut cases = Vec::new();
    for r in 1..=8 {
        cases.push((Family::A, r, 2 * r - 2));
    }
    for r in 4..=8 {
        cases.push((Family::D, r, 4 * r - 8));
    }
    cases.push((Family::E, 8, 56));
    let mut bad = Vec::new();
    let mut n = 0;
    for (f, r, want) in cases {
        let s = sys(f, r);
        for d in long_roots(&s) {
            n += 1;
            let got = s.w_set(d).len();
            if got != want {
                bad.push(format!("{f}{r} {}: {got}", s.vector(d)));
            }
        }
    }
    (bad.is_empty(), format!("{n} long roots, {} mismatches {}", bad.len(), bad.join("; ")))
}

fn basis(d: &ChevalleyData) -> Vec<ComplexElement<Surd>> {
    let s = d.system();
    let amb = s.ambient_dim();
    let mut out = Vec::new();
    for i in 0..amb {
        let mut h = vec![Surd::zero(); amb];
        h[i] = Surd::from_int(1);
        out.push(ComplexElement::from_h(h));
    }
    for a in s.ids() {
        out.push(ComplexElement::root_vector(amb, a, Surd::from_int(1)));
    }
    out
}

fn ac3() -> (bool, String) {
    let mut bad = Vec::new();
    let mut constants = 0usize;
    for (f, r) in all_systems() {
        let s = sys(f, r);
        let d = ChevalleyData::build(s.clone());
        for a in s.ids() {
            for b in s.ids() {
                let Some(sum) = s.add_ids(a, b) else { continue };
                constants += 1;
                let n = d.integral(a, b);
                let c = d.c(a, b);
                let (na, nb) = (s.neg(a), s.neg(b));
                let ok_a = n == -d.integral(b, a) && c == -d.c(b, a);
                let ok_b = n == -d.integral(na, nb) && c == -d.c(na, nb);
                let nd = s.neg(sum);
                let ok_d = c == d.c(b, nd) && c == d.c(nd, a);
                let ok_mag = n.abs() == s.string_down(a, b) + 1;
                if !(ok_a && ok_b && ok_d && ok_mag) {
                    bad.push(format!("{f}{r} ({}, {})", s.vector(a), s.vector(b)));
                }
            }
        }
    }
    // exact Jacobi on every basis triple up to rank 4
    let mut triples = 0usize;
    let small = [
        (Family::A, 1), (Family::A, 2), (Family::A, 3), (Family::A, 4),
        (Family::B, 2), (Family::B, 3), (Family::B, 4),
        (Family::C, 3), (Family::C, 4), (Family::D, 4),
    ];
    for (f, r) in small {
        let d = ChevalleyData::build(sys(f, r));
        let b = basis(&d);
        let n = b.len();
        let br: Vec<Vec<ComplexElement<Surd>>> =
            (0..n).map(|i| (0..n).map(|j| d.bracket(&b[i], &b[j])).collect()).collect();
        for (i, row) in br.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if *x != br[j][i].scaled(Surd::from_int(-1)) {
                    bad.push(format!("{f}{r} antisymmetry {i} {j}"));
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    triples += 1;
                    let jac = d
                        .bracket(&b[i], &br[j][k])
                        .plus(&d.bracket(&b[j], &br[k][i]))
                        .plus(&d.bracket(&b[k], &br[i][j]));
                    if !jac.is_zero() {
                        bad.push(format!("{f}{r} jacobi {i} {j} {k}"));
                    }
                }
            }
        }
    }
    (
        bad.is_empty(),
        format!(
            "{constants} constants in {} systems, {triples} exact Jacobi triples, {} failures {}",
            all_systems().len(),
            bad.len(),
            bad.iter().take(5).cloned().collect::<Vec<_>>().join("; ")
        ),
    )
}

fn ac4() -> (bool, String) {
    let mut bad = 0usize;
    let mut pairs = 0usize;
    let mut inner_checks = 0usize;
    for (f, r) in all_systems() {
        let s = sys(f, r);
        for d in long_roots(&s).into_iter().chain(long_roots(&s).into_iter().map(|d| s.neg(d))) {
            // the inner-product bound used in the proof
            for a in s.ids() {
                let ip = s.inner_ids(a, d);
                if a != d && ip > 0.into() {
                    inner_checks += 1;
                    if ip != 1.into() {
                        bad += 1;
                    }
                }
            }
            let w = s.w_set(d);
            for &x in &w {
                for &y in &w {
                    pairs += 1;
                    let sum = s.add(s.vector(x), s.vector(y));
                    let is_root = sum.is_some();
                    let is_delta = sum.as_ref() == Some(s.vector(d));
                    if is_root != is_delta {
                        bad += 1;
                    }
                }
            }
        }
    }
    (
        bad == 0,
        format!("{pairs} pairs, {inner_checks} inner products, {bad} counterexamples"),
    )
}

fn check_painting(split: &ParabolicSplit) -> (usize, Vec<String>) {
    let s = split.system();
    let mut n = 0;
    let mut bad = Vec::new();
    for &d in split.delta_m_pos() {
        if !s.is_long(d) {
            continue;
        }
        n += 1;
        let gamma = GammaSet::from_support(split, &[d]).expect("d in m+");
        let sets = st_sets(split, d);
        if condition1(split, &gamma, d, &sets.t_set).is_err()
            || condition2(split, &gamma, d, &sets.s_set).is_err()
        {
            bad.push(format!("{split} {}", s.vector(d)));
        }
    }
    (n, bad)
}

fn ac5() -> (bool, String) {
    let mut configs = 0;
    let mut paintings = 0;
    let mut bad = Vec::new();
    for (f, r) in all_systems() {
        let s = sys(f, r);
        if r <= 4 {
            for mask in 0..(1u32 << r) {
                paintings += 1;
                let (n, b) = check_painting(&ParabolicSplit::new(s.clone(), PaintedDiagram::from_mask(&s, mask)));
                configs += n;
                bad.extend(b);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut sampled = 0;
    for rank in 5..=8 {
        let systems: Vec<(Family, usize)> = all_systems().into_iter().filter(|&(_, r)| r == rank).collect();
        for _ in 0..100 {
            let &(f, r) = systems.choose(&mut rng).expect("nonempty");
            let s = sys(f, r);
            let mask = rand::Rng::random_range(&mut rng, 0..(1u32 << r));
            sampled += 1;
            let (n, b) = check_painting(&ParabolicSplit::new(s.clone(), PaintedDiagram::from_mask(&s, mask)));
            configs += n;
            bad.extend(b);
        }
    }
    (
        bad.is_empty(),
        format!(
            "{paintings} exhaustive + {sampled} sampled paintings, {configs} long deltas, {} failures {}",
            bad.len(),
            bad.iter().take(5).cloned().collect::<Vec<_>>().join("; ")
        ),
    )
}

fn frame(f: Family, r: usize, painted: &str) -> RealFormFrame {
    let s = sys(f, r);
    let p = PaintedDiagram::parse(&s, painted).expect("valid painting");
    RealFormFrame::from_split(Arc::new(ParabolicSplit::new(s, p)))
}

/// The six frame types, Borel and one non-Borel painting each.
fn six_frames() -> Vec<RealFormFrame> {
    [
        (Family::A, 2, ""), (Family::A, 2, "1"),
        (Family::A, 3, ""), (Family::A, 3, "2"),
        (Family::B, 2, ""), (Family::B, 2, "2"),
        (Family::B, 3, ""), (Family::B, 3, "3"),
        (Family::C, 3, ""), (Family::C, 3, "1"),
        (Family::D, 4, ""), (Family::D, 4, "2"),
    ]
    .iter()
    .map(|&(f, r, p)| frame(f, r, p))
    .collect()
}

fn ac6() -> (bool, String) {
    let start = Instant::now();
    let mut fails = Vec::new();
    let mut worst: f64 = 0.0;
    let mut checks = 0;
    for (f, r) in [(Family::A, 3), (Family::B, 3), (Family::C, 3), (Family::D, 4)] {
        let fr = frame(f, r, "");
        let rep = identity_suite(&fr, Suite::All, 10_000, 1);
        for c in rep.checks.iter().filter(|c| !c.name.starts_with("transport")) {
            checks += 1;
            if c.tolerance <= 1e-10 {
                worst = worst.max(c.max_residual);
            }
            if !c.pass {
                fails.push(format!("{} {} {:.2e}", rep.frame, c.name, c.max_residual));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    (
        fails.is_empty() && secs < 120.0,
        format!(
            "4 frames x 10^4 trials, {checks} checks, worst residual {worst:.2e}, {secs:.1}s (< 120s) {}",
            fails.join("; ")
        ),
    )
}

fn ac7() -> (bool, String) {
    let mut fails = Vec::new();
    let mut worst: f64 = 0.0;
    let frames = six_frames();
    for fr in &frames {
        let rep = identity_suite(fr, Suite::Transport, 200, 7);
        for c in &rep.checks {
            worst = worst.max(c.max_residual);
            if !c.pass {
                fails.push(format!("{} {}", rep.frame, c.name));
            }
        }
    }
    (
        fails.is_empty(),
        format!("{} frames x 200 configurations, worst residual {worst:.2e} {}", frames.len(), fails.join("; ")),
    )
}

fn ac8() -> (bool, String) {
    let mut total = 0;
    let mut agree = 0;
    let mut neg = 0;
    let mut zero = 0;
    let mut worst_neg = f64::NEG_INFINITY;
    let mut worst_zero: f64 = 0.0;
    let frames = six_frames();
    for fr in &frames {
        let rep = dichotomy(fr, 500, 11);
        total += rep.samples;
        agree += rep.agree;
        neg += rep.negative;
        zero += rep.zero;
        worst_neg = worst_neg.max(rep.worst_negative);
        worst_zero = worst_zero.max(rep.worst_zero);
    }
    (
        agree == total,
        format!(
            "{agree}/{total} agree over {} frames ({neg} negative, max {worst_neg:.2e}; {zero} zero, max |.| {worst_zero:.2e})",
            frames.len()
        ),
    )
}

fn ac9() -> (bool, String) {
    let mut parts = Vec::new();
    let mut ok = true;
    for fr in six_frames() {
        let rep = q_sample(&fr, 100, 13);
        let all_negative = rep
            .search
            .is_some_and(|s| rep.terms.iter().all(|t| t.at(s.k) < 0.0));
        ok &= rep.pass() && all_negative && rep.configs >= 100;
        match rep.search {
            Some(s) => parts.push(format!("{} k={:.4} margin={:.3e}", rep.frame, s.k, s.margin)),
            None => parts.push(format!("{} no k", rep.frame)),
        }
    }
    (ok, parts.join(", "))
}

fn ac10() -> (bool, String) {
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut violated = 0;
    let mut perturbed_long = 0;
    for (f, r) in [(Family::B, 2), (Family::B, 3), (Family::C, 3)] {
        let s = sys(f, r);
        for mask in 0..(1u32 << r) {
            let split = Arc::new(ParabolicSplit::new(s.clone(), PaintedDiagram::from_mask(&s, mask)));
            let m = split.delta_m_pos().to_vec();
            if m.is_empty() {
                continue;
            }
            let fr = RealFormFrame::from_split(split.clone());
            for gm in 1..(1u32 << m.len()) {
                let supp: Vec<RootId> = (0..m.len()).filter(|i| gm & (1 << i) != 0).map(|i| m[i]).collect();
                let gamma = GammaSet::from_support(&split, &supp).expect("subset of m+");
                // only configurations without a long superminimal root
                match superminimal(&split, &gamma) {
                    Ok(d) if !s.is_long(d) => {}
                    _ => continue,
                }
                let delta = match f {
                    Family::B => b_case_delta(&split, &gamma),
                    _ => c_case_delta(&split, &gamma),
                };
                let Some(delta) = delta.filter(|d| superminimal_candidates(&split, &gamma).contains(d)) else {
                    failures.push(format!("{split} {gm}: no admissible delta"));
                    continue;
                };
                let sets = match f {
                    Family::B => b_case_sets(&split, delta),
                    _ => c_case_starred_sets(&split, delta),
                };
                match sets {
                    Ok(sets) => {
                        checked += 1;
                        if condition1(&split, &gamma, delta, &sets.t_set).is_err()
                            || condition2(&split, &gamma, delta, &sets.s_set).is_err()
                        {
                            failures.push(format!("{split} delta {}", s.vector(delta)));
                        }
                    }
                    Err(IndexError::HypothesisViolated(_)) => {
                        violated += 1;
                        let mut rng = ChaCha8Rng::seed_from_u64(u64::from(gm));
                        let g = fr.random_unit_on(&mut rng, &supp);
                        let gains_long = split.delta_k_pos().any(|k| {
                            adjoint_perturb(&fr, &g, k, 1e-3).is_ok_and(|p| {
                                p.support.iter().any(|&x| s.is_long(x) && !supp.contains(&x))
                            })
                        });
                        if gains_long {
                            perturbed_long += 1;
                        } else {
                            failures.push(format!("{split} {gm}: perturbation found no long root"));
                        }
                    }
                    Err(e) => failures.push(format!("{split}: {e}")),
                }
            }
        }
    }
    (
        failures.is_empty(),
        format!(
            "{checked} short-delta configurations verified, {perturbed_long}/{violated} hypothesis violations gain a long root, {} failures {}",
            failures.len(),
            failures.iter().take(5).cloned().collect::<Vec<_>>().join("; ")
        ),
    )
}

fn ac11() -> (bool, String) {
    // (m, n, v, ell, I) worked by hand from I = m + n - (v - ell) - v + 1
    let cases: [(i64, i64, i64, i64, i64); 20] = [
        (2, 2, 3, 3, 2),
        (0, 0, 5, 2, -7),
        (3, 3, 3, 3, 4),
        (4, 4, 6, 4, 1),
        (5, 4, 6, 4, 2),
        (10, 10, 15, 5, -4),
        (6, 6, 6, 3, 4),
        (7, 8, 9, 5, 3),
        (1, 1, 1, 1, 2),
        (2, 1, 3, 3, 1),
        (12, 12, 16, 11, 4),
        (20, 20, 27, 17, 4),
        (50, 50, 57, 29, 16),
        (4, 3, 5, 5, 3),
        (5, 5, 7, 7, 4),
        (6, 6, 9, 5, 0),
        (9, 9, 10, 9, 8),
        (3, 2, 6, 5, -1),
        (8, 8, 10, 7, 4),
        (15, 15, 21, 7, -4),
    ];
    let bad: Vec<String> = cases
        .iter()
        .filter(|&&(m, n, v, l, want)| index_lower_bound(m, n, v, l) != want)
        .map(|c| format!("{c:?}"))
        .collect();
    (bad.is_empty(), format!("{} cases, {} mismatches {}", cases.len(), bad.len(), bad.join("; ")))
}

type Criterion = (&'static str, &'static str, fn() -> (bool, String));

fn main() {
    let criteria: [Criterion; 11] = [
        ("AC1", "ell at the Borel split for A, D, E", ac1),
        ("AC2", "|W_delta| golden values", ac2),
        ("AC3", "structure constant identities and exact Jacobi", ac3),
        ("AC4", "sums inside W_delta", ac4),
        ("AC5", "conditions 1-2 for long delta over paintings", ac5),
        ("AC6", "numeric identity suites", ac6),
        ("AC7", "hat transport contract", ac7),
        ("AC8", "Hessian sign dichotomy", ac8),
        ("AC9", "twist rate with Q < 0", ac9),
        ("AC10", "B and C short-root case analyses", ac10),
        ("AC11", "index lower bound arithmetic", ac11),
    ];
    let mut outcomes = Vec::new();
    for (id, title, run) in criteria {
        let start = Instant::now();
        let (pass, detail) = run();
        let o = Outcome {
            id,
            pass,
            detail: format!("{title}: {detail}"),
            elapsed: start.elapsed(),
        };
        println!(
            "{:<5} {}  {} [{:.2}s]",
            o.id,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            o.elapsed.as_secs_f64()
        );
        outcomes.push(o);
    }
    let failed = outcomes.iter().filter(|o| !o.pass).count();
    println!("acceptance: {} passed, {failed} failed", outcomes.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
