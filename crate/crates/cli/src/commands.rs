use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use flagmorse::geometry::{
    classify, identity_suite, GaussLegendre, HessianClass, HessianEvaluator, MVector, RealFormFrame, Suite,
};
use flagmorse::index_comb::{
    b_case_sets, c_case_starred_sets, ell_table, index_lower_bound, st_sets, superminimal, EllImprovement,
    EllReport, GammaSet, StSets,
};
use flagmorse::{ChevalleyData, Family, IndexError, PaintedDiagram, ParabolicSplit, RootId, RootSystem};

use crate::args::{Command, SplitArgs, SystemArgs};
use crate::error::CliError;

/// Rendered output and exit status of one command.
pub struct Outcome {
    pub text: String,
    pub status: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, status: 0 }
    }

    fn json<T: Serialize>(value: &T, pass: bool) -> Self {
        Outcome {
            text: serde_json::to_string_pretty(value).expect("serializable") + "\n",
            status: if pass { 0 } else { 1 },
        }
    }
}

pub fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Roots { system, json } => roots(&system, json),
        Command::Chevalley { system, json, csv } => chevalley(&system, json, csv),
        Command::Parabolic { split, json } => parabolic(&split, json),
        Command::Ell { split, gamma, delta, json } => ell(&split, gamma.as_deref(), &delta, json),
        Command::EllTable { improved, json } => ell_rows(improved, json),
        Command::IndexBound { m, n, split, special, json } => index_bound(m, n, &split, special, json),
        Command::Check { suite, split, trials, seed, json, no_timing } => {
            check(&suite, &split, trials, seed, json, no_timing)
        }
        Command::Hessian { split, gamma, field, json } => hessian(&split, &gamma, &field, json),
    }
}

fn system(family: &str, rank: usize) -> Result<Arc<RootSystem>, CliError> {
    let f: Family = family.parse().map_err(|e| CliError::roots("family", e))?;
    let sys = RootSystem::build(f, rank).map_err(|e| CliError::roots("rank", e))?;
    Ok(Arc::new(sys))
}

fn split(args: &SplitArgs) -> Result<Arc<ParabolicSplit>, CliError> {
    let sys = system(&args.family, args.rank)?;
    let painted = PaintedDiagram::parse(&sys, &args.painted).map_err(|e| CliError::roots("painted", e))?;
    Ok(Arc::new(ParabolicSplit::new(sys, painted)))
}

fn labels(sys: &RootSystem, roots: &[RootId]) -> String {
    let parts: Vec<String> = roots.iter().map(|&r| sys.coeff_label(r)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn roots(args: &SystemArgs, json: bool) -> Result<Outcome, CliError> {
    let sys = system(&args.family, args.rank)?;
    if json {
        return Ok(Outcome::json(&sys.to_doc(), true));
    }
    let mut out = String::new();
    writeln!(out, "{}: {} roots, {} positive, scale {}", sys.name(), sys.len(), sys.num_positive(), sys.norm_scale()).ok();
    writeln!(out, "{:<12} {:>6} {:<6} coordinates", "root", "height", "length").ok();
    for a in sys.positive_ids() {
        let coords: Vec<String> = sys.vector(a).unscaled().iter().map(|c| c.to_string()).collect();
        let len = if sys.is_long(a) { "long" } else { "short" };
        writeln!(out, "{:<12} {:>6} {:<6} ({})", sys.coeff_label(a), sys.height(a), len, coords.join(", ")).ok();
    }
    Ok(Outcome::ok(out))
}

fn chevalley(args: &SystemArgs, json: bool, csv: bool) -> Result<Outcome, CliError> {
    let sys = system(&args.family, args.rank)?;
    let data = ChevalleyData::build(sys.clone());
    if csv {
        return Ok(Outcome::ok(data.to_csv()));
    }
    let rows: Vec<_> = data
        .table()
        .into_iter()
        .map(|r| {
            json!({
                "alpha": sys.coeff_label(r.alpha),
                "beta": sys.coeff_label(r.beta),
                "n": r.integral,
                "c": r.unit.to_string(),
            })
        })
        .collect();
    if json {
        return Ok(Outcome::json(&json!({ "system": sys.name(), "constants": rows }), true));
    }
    let mut out = String::new();
    writeln!(out, "{}: {} nonzero constants", sys.name(), rows.len()).ok();
    writeln!(out, "{:<12} {:<12} {:>4} c", "alpha", "beta", "N").ok();
    for r in &rows {
        writeln!(out, "{:<12} {:<12} {:>4} {}", r["alpha"].as_str().unwrap_or(""), r["beta"].as_str().unwrap_or(""), r["n"], r["c"].as_str().unwrap_or("")).ok();
    }
    Ok(Outcome::ok(out))
}

fn parabolic(args: &SplitArgs, json: bool) -> Result<Outcome, CliError> {
    let sp = split(args)?;
    let doc = sp.to_doc();
    let closed = sp.verify_m_closure().pass();
    if json {
        return Ok(Outcome::json(&json!({ "split": doc, "m_closure": closed }), closed));
    }
    let sys = sp.system();
    let k: Vec<RootId> = sp.delta_k_pos().collect();
    let mut out = String::new();
    writeln!(out, "{} [{}]", sys.name(), doc.diagram).ok();
    writeln!(out, "v = {}", sp.v()).ok();
    writeln!(out, "k+ = {}", labels(sys, &k)).ok();
    writeln!(out, "m+ = {}", labels(sys, sp.delta_m_pos())).ok();
    writeln!(out, "m closure: {}", if closed { "ok" } else { "FAILED" }).ok();
    Ok(Outcome { text: out, status: if closed { 0 } else { 1 } })
}

#[derive(Serialize)]
struct EllOutput {
    construction: &'static str,
    #[serde(flatten)]
    report: EllReport,
}

fn ell(args: &SplitArgs, gamma: Option<&str>, delta: &str, json: bool) -> Result<Outcome, CliError> {
    let sp = split(args)?;
    let sys = sp.system();
    let explicit = match delta {
        "auto" => None,
        label => Some(sys.parse_coeff_label(label).map_err(|e| CliError::roots("delta", e))?),
    };
    let gamma = match (gamma, explicit) {
        (Some(spec), _) => GammaSet::parse(&sp, spec).map_err(|e| CliError::usage("gamma", e))?,
        (None, Some(d)) => GammaSet::from_support(&sp, &[d]).map_err(|e| CliError::usage("delta", e))?,
        (None, None) => {
            let d = sp
                .delta_m_pos()
                .iter()
                .copied()
                .find(|&d| sys.is_long(d))
                .or_else(|| sp.delta_m_pos().first().copied())
                .ok_or_else(|| CliError::usage("painted", "every node is painted, so m is empty"))?;
            GammaSet::from_support(&sp, &[d])?
        }
    };
    let d = match explicit {
        Some(d) if gamma.contains(d) => d,
        Some(_) => return Err(CliError::usage("delta", "delta must lie in the support of gamma")),
        None => superminimal(&sp, &gamma)?,
    };
    let (construction, sets) = sets_for(&sp, d)?;
    let report = EllReport::build(&sp, &gamma, &sets);
    let pass = report.condition1.pass && report.condition2.pass;
    if json {
        return Ok(Outcome::json(&EllOutput { construction, report }, true));
    }
    let mut out = String::new();
    writeln!(out, "{} [{}] v={}", report.system, report.diagram, report.v).ok();
    writeln!(out, "gamma = {{{}}}", report.gamma.join(", ")).ok();
    let len = if report.delta_is_long { "long" } else { "short" };
    writeln!(out, "delta = {} ({len}, {construction} sets)", report.delta).ok();
    writeln!(out, "S = {{{}}}", report.s_set.join(", ")).ok();
    writeln!(out, "T = {{{}}}", report.t_set.join(", ")).ok();
    writeln!(out, "ell = {}, h = {}", report.ell, report.h).ok();
    for (name, c) in [("condition 1", &report.condition1), ("condition 2", &report.condition2)] {
        if c.pass {
            writeln!(out, "{name}: holds").ok();
        } else {
            writeln!(out, "{name}: fails, witness {}", c.witness.join(" ")).ok();
        }
    }
    if !pass {
        writeln!(out, "note: the conditions need not hold for this choice of gamma and delta").ok();
    }
    Ok(Outcome::ok(out))
}

/// General sets for long delta; the B and C case constructions for short delta.
fn sets_for(sp: &ParabolicSplit, d: RootId) -> Result<(&'static str, StSets), CliError> {
    let sys = sp.system();
    if sys.is_long(d) {
        return Ok(("general", st_sets(sp, d)));
    }
    let built = match sys.family() {
        Family::B => b_case_sets(sp, d).map(|s| ("type-B", s)),
        Family::C => c_case_starred_sets(sp, d).map(|s| ("type-C starred", s)),
        _ => Ok(("general", st_sets(sp, d))),
    };
    match built {
        Err(IndexError::UnsupportedDelta(_)) => Ok(("general", st_sets(sp, d))),
        other => Ok(other?),
    }
}

/// `ell` computed from S and T at every long root of `m+`; `None` if they disagree.
fn computed_ell(sp: &ParabolicSplit) -> Option<usize> {
    let sys = sp.system();
    let vals: Vec<usize> = sp
        .delta_m_pos()
        .iter()
        .filter(|&&d| sys.is_long(d))
        .map(|&d| st_sets(sp, d).ell)
        .collect();
    let first = *vals.first()?;
    vals.iter().all(|&v| v == first).then_some(first)
}

/// The improved cases are flag manifolds of another group: B_r with every long
/// node painted is the spinor variety of D_(r+1), and the special C_r parabolic
/// gives CP^(2r-1) = A_(2r-1) with all nodes but the first painted.
fn isomorphic_split(imp: EllImprovement, r: usize) -> Result<ParabolicSplit, CliError> {
    let (f, rank, painted): (Family, usize, Vec<usize>) = match imp {
        // D3 is A3 and its spinor variety is CP^3
        EllImprovement::BAllLongPainted if r == 2 => (Family::A, 3, vec![1, 2]),
        EllImprovement::BAllLongPainted => (Family::D, r + 1, (0..r).collect()),
        EllImprovement::CSpecialMaximal => (Family::A, 2 * r - 1, (1..2 * r - 1).collect()),
    };
    let sys = Arc::new(RootSystem::build(f, rank).map_err(IndexError::from)?);
    let painted = PaintedDiagram::new(&sys, painted).map_err(IndexError::from)?;
    Ok(ParabolicSplit::new(sys, painted))
}

#[derive(Serialize)]
struct TableRow {
    family: String,
    formula: &'static str,
    improvement: Option<EllImprovement>,
    ranks: Vec<usize>,
    lookup: Vec<usize>,
    computed: Vec<Option<usize>>,
    agree: bool,
}

fn ell_rows(improved: bool, json: bool) -> Result<Outcome, CliError> {
    let mut specs: Vec<(Family, &'static str, Vec<usize>, Option<EllImprovement>)> = vec![
        (Family::A, "r", (1..=8).collect(), None),
        (Family::D, "2r-3", (4..=8).collect(), None),
        (Family::B, "2r-2", (2..=8).collect(), None),
        (Family::C, "r", (3..=8).collect(), None),
        (Family::E, "11", vec![6], None),
        (Family::E, "17", vec![7], None),
        (Family::E, "29", vec![8], None),
    ];
    if improved {
        specs.push((Family::B, "2r-1", (2..=8).collect(), Some(EllImprovement::BAllLongPainted)));
        specs.push((Family::C, "2r-1", (3..=8).collect(), Some(EllImprovement::CSpecialMaximal)));
    }
    let mut rows = Vec::new();
    for (f, formula, ranks, imp) in specs {
        let mut lookup = Vec::new();
        let mut computed = Vec::new();
        for &r in &ranks {
            lookup.push(ell_table(f, r, imp)?.ell);
            let sp = match imp {
                Some(i) => isomorphic_split(i, r)?,
                None => ParabolicSplit::new(Arc::new(RootSystem::build(f, r).map_err(IndexError::from)?), PaintedDiagram::borel()),
            };
            computed.push(computed_ell(&sp));
        }
        let agree = lookup.iter().zip(&computed).all(|(l, c)| Some(*l) == *c);
        let family = if f == Family::E { format!("E{}", ranks[0]) } else { f.to_string() };
        rows.push(TableRow { family, formula, improvement: imp, ranks, lookup, computed, agree });
    }
    let pass = rows.iter().all(|r| r.agree);
    if json {
        return Ok(Outcome::json(&rows, pass));
    }
    let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    writeln!(out, "{:<4} {:<6} {:<15} {:<22} {:<22} agree", "type", "ell", "ranks", "lookup", "computed").ok();
    for r in &rows {
        let comp: Vec<String> = r.computed.iter().map(|c| c.map_or("?".into(), |x| x.to_string())).collect();
        let ranks = format!("{}..{}", r.ranks[0], r.ranks[r.ranks.len() - 1]);
        let family = match r.improvement {
            Some(_) => format!("{}*", r.family),
            None => r.family.clone(),
        };
        writeln!(out, "{:<4} {:<6} {:<15} {:<22} {:<22} {}", family, r.formula, ranks, list(&r.lookup), comp.join(" "), if r.agree { "yes" } else { "NO" }).ok();
    }
    if improved {
        writeln!(out, "* B with every long node painted, computed on the D(r+1) spinor variety;").ok();
        writeln!(out, "  C maximal parabolic with Levi factor containing Sp(r-1), computed on CP^(2r-1) as A(2r-1)").ok();
    }
    Ok(Outcome { text: out, status: if pass { 0 } else { 1 } })
}

fn index_bound(m: i64, n: i64, args: &SplitArgs, special: bool, json: bool) -> Result<Outcome, CliError> {
    if m < 0 || n < 0 {
        return Err(CliError::usage(if m < 0 { "m" } else { "n" }, "dimensions are nonnegative"));
    }
    let sp = split(args)?;
    let sys = sp.system();
    let improvement = match (special, EllImprovement::for_split(&sp)) {
        (false, _) => None,
        (true, Some(i)) => Some(i),
        (true, None) => return Err(CliError::usage("special", "this painting has no improved ell")),
    };
    let ell = ell_table(sys.family(), sys.rank(), improvement)?.ell as i64;
    let v = sp.v() as i64;
    let bound = index_lower_bound(m, n, v, ell);
    let computed = computed_ell(&sp);
    if json {
        let doc = json!({
            "system": sys.name(),
            "diagram": sp.painted().render(sys.rank()),
            "m": m, "n": n, "v": v, "ell": ell,
            "improvement": improvement,
            "computed_ell": computed,
            "lambda_0": bound - 1,
            "index_bound": bound,
        });
        return Ok(Outcome::json(&doc, true));
    }
    let mut out = String::new();
    writeln!(out, "{} [{}] v={} ell={}", sys.name(), sp.painted().render(sys.rank()), v, ell).ok();
    if let Some(c) = computed {
        writeln!(out, "ell from S and T at this painting: {c}").ok();
    }
    writeln!(out, "lambda_0 = {}", bound - 1).ok();
    writeln!(out, "I = {bound}").ok();
    if bound <= 0 {
        writeln!(out, "the bound is not informative here").ok();
    }
    Ok(Outcome::ok(out))
}

fn check(suite: &str, args: &SplitArgs, trials: usize, seed: u64, json: bool, no_timing: bool) -> Result<Outcome, CliError> {
    let suite: Suite = suite.parse().map_err(|e| CliError::usage("suite", e))?;
    if trials == 0 {
        return Err(CliError::usage("trials", "must be positive"));
    }
    let frame = RealFormFrame::from_split(split(args)?);
    let mut report = identity_suite(&frame, suite, trials, seed);
    if no_timing {
        report.elapsed_ms = 0;
    }
    let pass = report.pass();
    if json {
        return Ok(Outcome { text: report.to_json() + "\n", status: if pass { 0 } else { 1 } });
    }
    let mut out = String::new();
    writeln!(out, "suite {} on {}, {} trials, seed {}", report.suite, report.frame, report.trials, report.seed).ok();
    for c in &report.checks {
        writeln!(out, "{:<4} {:<26} {:>10.3e} (tol {:.0e})  {}", if c.pass { "ok" } else { "FAIL" }, c.name, c.max_residual, c.tolerance, c.paper_ref).ok();
    }
    let failed = report.checks.iter().filter(|c| !c.pass).count();
    writeln!(out, "{} checks, {failed} failed, {} ms", report.checks.len(), report.elapsed_ms).ok();
    Ok(Outcome { text: out, status: if pass { 0 } else { 1 } })
}

fn field_vector(frame: &RealFormFrame, g: &GammaSet) -> Result<MVector, CliError> {
    let mut v = MVector::zeros(frame.m_dim());
    for (r, (a, b)) in g.entries() {
        v += frame.root_m_vector(r, a, b)?;
    }
    Ok(v)
}

fn hessian(args: &SplitArgs, gamma: &str, field: &str, json: bool) -> Result<Outcome, CliError> {
    let sp = split(args)?;
    let g_set = GammaSet::parse(&sp, gamma).map_err(|e| CliError::usage("gamma", e))?;
    let x_set = GammaSet::parse(&sp, field).map_err(|e| CliError::usage("field", e))?;
    let frame = RealFormFrame::from_split(sp.clone());
    let g = field_vector(&frame, &g_set)?;
    let x = field_vector(&frame, &x_set)?;
    // adding zero turns -0.0 into 0.0
    let value = HessianEvaluator::new(&frame, &g, GaussLegendre::default()).value(&x) + 0.0;
    let class = classify(&sp, x_set.support(), g_set.support());
    let sys = sp.system();
    let (name, witness) = match class {
        HessianClass::Negative(w) => (
            "negative",
            Some(json!({
                "alpha": sys.coeff_label(w.alpha),
                "beta": sys.coeff_label(w.beta),
                "reason": w.reason,
            })),
        ),
        HessianClass::Zero => ("zero", None),
    };
    if json {
        let doc = json!({ "frame": frame.name(), "hessian": value, "class": name, "witness": witness });
        return Ok(Outcome::json(&doc, true));
    }
    let mut out = String::new();
    writeln!(out, "frame {}", frame.name()).ok();
    writeln!(out, "hessian = {value:.12e}").ok();
    match witness {
        Some(w) => writeln!(out, "class = negative (alpha {}, beta {}, {})", w["alpha"].as_str().unwrap_or(""), w["beta"].as_str().unwrap_or(""), w["reason"].as_str().unwrap_or("")).ok(),
        None => writeln!(out, "class = zero").ok(),
    };
    Ok(Outcome::ok(out))
}
