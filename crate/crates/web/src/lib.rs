//! Browser bindings: every entry point takes plain strings and numbers and
//! returns a JSON document, so the page needs no generated type glue.

use std::sync::Arc;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use flagmorse::geometry::{
    classify, k_search, q_terms, s_pairs, x_tilde, GaussLegendre, HessianClass, HessianEvaluator, MVector,
    MapI, QConfig, RealFormFrame,
};
use flagmorse::index_comb::{st_sets, superminimal, EllReport, GammaSet};
use flagmorse::{Family, PaintedDiagram, ParabolicSplit, RootSystem};

fn split(family: &str, rank: usize, painted: &str) -> Result<Arc<ParabolicSplit>, String> {
    let f: Family = family.parse().map_err(|e| format!("family: {e}"))?;
    let sys = Arc::new(RootSystem::build(f, rank).map_err(|e| format!("rank: {e}"))?);
    let p = PaintedDiagram::parse(&sys, painted).map_err(|e| format!("painted: {e}"))?;
    Ok(Arc::new(ParabolicSplit::new(sys, p)))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// The split and, for `gamma` (empty means every long root of `m+`, one at a
/// time), the S and T sets, `ell` and the two conditions.
pub fn ell_explorer_json(family: &str, rank: usize, painted: &str, gamma: &str) -> Result<String, String> {
    let sp = split(family, rank, painted)?;
    let sys = sp.system();
    let gammas: Vec<GammaSet> = if gamma.trim().is_empty() {
        sp.delta_m_pos()
            .iter()
            .filter(|&&d| sys.is_long(d))
            .map(|&d| GammaSet::from_support(&sp, &[d]).expect("root of m+"))
            .collect()
    } else {
        vec![GammaSet::parse(&sp, gamma).map_err(|e| format!("gamma: {e}"))?]
    };
    let mut reports = Vec::new();
    for g in &gammas {
        let d = superminimal(&sp, g).map_err(|e| e.to_string())?;
        reports.push(EllReport::build(&sp, g, &st_sets(&sp, d)));
    }
    Ok(to_json(&json!({ "split": sp.to_doc(), "reports": reports })))
}

fn field_vector(frame: &RealFormFrame, g: &GammaSet) -> MVector {
    let mut v = MVector::zeros(frame.m_dim());
    for (r, (a, b)) in g.entries() {
        v += frame.root_m_vector(r, a, b).expect("root of m+");
    }
    v
}

/// The Hessian integrand along `t in [0, 1]` for a hat-parallel field, its
/// integral and the bracket classification.
pub fn hessian_curve_json(
    family: &str,
    rank: usize,
    painted: &str,
    gamma: &str,
    field: &str,
    samples: usize,
) -> Result<String, String> {
    let sp = split(family, rank, painted)?;
    let g_set = GammaSet::parse(&sp, gamma).map_err(|e| format!("gamma: {e}"))?;
    let x_set = GammaSet::parse(&sp, field).map_err(|e| format!("field: {e}"))?;
    let frame = RealFormFrame::from_split(sp.clone());
    let g = field_vector(&frame, &g_set);
    let x = field_vector(&frame, &x_set);
    let eval = HessianEvaluator::new(&frame, &g, GaussLegendre::default());
    let sys = sp.system();
    let class = match classify(&sp, x_set.support(), g_set.support()) {
        HessianClass::Negative(w) => json!({
            "class": "negative",
            "alpha": sys.coeff_label(w.alpha),
            "beta": sys.coeff_label(w.beta),
            "reason": w.reason,
        }),
        HessianClass::Zero => json!({ "class": "zero" }),
    };
    Ok(to_json(&json!({
        "frame": frame.name(),
        "value": eval.value(&x) + 0.0,
        "classification": class,
        "curve": eval.curve(&x, samples.clamp(2, 2000)),
    })))
}

/// Q(k) = a + b k + c k^2 for seeded configurations along the velocity `X~_d`
/// of the first long root of `m+`, sampled on `[0, k_max]`, with the twist-rate search.
pub fn q_curve_json(family: &str, rank: usize, painted: &str, configs: usize, seed: u64) -> Result<String, String> {
    let sp = split(family, rank, painted)?;
    let sys = sp.system();
    let d = *sp
        .delta_m_pos()
        .iter()
        .find(|&&d| sys.is_long(d))
        .ok_or("this painting has no long root in m")?;
    let frame = RealFormFrame::from_split(sp.clone());
    let (a, b) = (0.8, 0.6);
    let g = x_tilde(&frame, d, a, b).map_err(|e| e.to_string())?;
    let g = &g / frame.norm_m(&g);
    let map_i = MapI::new(&frame, d, a, b, &s_pairs(&frame, d)).map_err(|e| e.to_string())?;
    let eval = HessianEvaluator::new(&frame, &g, GaussLegendre::default());
    let t_roots: Vec<_> = st_sets(&sp, d)
        .t_set
        .into_iter()
        .filter(|&t| matches!(classify(&sp, &[t], &[d]), HessianClass::Negative(_)))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::new();
    for i in 0..configs.clamp(1, 50) {
        let zero = MVector::zeros(frame.m_dim());
        let with_s = !map_i.indices().is_empty() && i % 2 == 0;
        let w0 = if with_s {
            let w = map_i.project(&frame.random_unit_m(&mut rng));
            &w / frame.norm_m(&w)
        } else {
            zero.clone()
        };
        let x0 = frame.random_unit_on(&mut rng, &t_roots);
        let y0 = frame.random_unit_on(&mut rng, &t_roots);
        terms.push(q_terms(&frame, &eval, &g, &map_i, &QConfig { x0, y0, w0 }));
    }
    let search = k_search(&terms);
    let k_max = search.map_or(1.0, |s| (2.0 * s.k_boundary).max(0.1));
    let grid: Vec<f64> = (0..=100).map(|i| k_max * i as f64 / 100.0).collect();
    let curves: Vec<Value> = terms
        .iter()
        .map(|t| json!({ "a": t.a, "b": t.b, "c": t.c, "q": grid.iter().map(|&k| t.at(k)).collect::<Vec<_>>() }))
        .collect();
    Ok(to_json(&json!({
        "frame": frame.name(),
        "delta": sys.coeff_label(d),
        "k": grid,
        "configs": curves,
        "search": search,
    })))
}

#[wasm_bindgen]
pub fn ell_explorer(family: &str, rank: usize, painted: &str, gamma: &str) -> Result<String, JsError> {
    ell_explorer_json(family, rank, painted, gamma).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn hessian_curve(
    family: &str,
    rank: usize,
    painted: &str,
    gamma: &str,
    field: &str,
    samples: usize,
) -> Result<String, JsError> {
    hessian_curve_json(family, rank, painted, gamma, field, samples).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn q_curve(family: &str, rank: usize, painted: &str, configs: usize, seed: u64) -> Result<String, JsError> {
    q_curve_json(family, rank, painted, configs, seed).map_err(|e| JsError::new(&e))
}
