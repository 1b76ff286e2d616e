//! wasm-bindgen entry points for the static demo page in `www/`.
//!
//! Every function takes a group spec (a builtin name, or the text of a
//! `perm`/`table` group file) and returns a JSON string.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use topoqd_core::fusion::loop_fusion_table;
use topoqd_core::group::{FiniteGroup, DEFAULT_ELEMENT_CAP};
use topoqd_core::pairing::{Manifold, PairingManifold};
use topoqd_core::sectors::{count_graph_sectors, enumerate_graph_sectors, tuple_count, EnumOptions};
use topoqd_core::QuantumDouble;

/// Enumeration cap for the page; keeps the tab responsive.
pub const WEB_ENUM_CAP: u128 = 2_000_000;

fn load(spec: &str) -> Result<QuantumDouble, String> {
    let text = spec.trim();
    let group = if text.starts_with("perm") || text.starts_with("table") || text.starts_with('#') {
        FiniteGroup::parse(text, DEFAULT_ELEMENT_CAP)
    } else {
        topoqd_core::builtin::builtin(text, DEFAULT_ELEMENT_CAP)
    };
    group.and_then(QuantumDouble::new).map_err(|e| e.to_string())
}

/// Order, classes, degrees and sector counts for genus 1..=max_genus.
pub fn summary_json(spec: &str, max_genus: usize) -> Result<Value, String> {
    let qd = load(spec)?;
    let g = qd.group();
    let classes = qd.classes();
    let counts: Vec<String> = (1..=max_genus)
        .map(|genus| count_graph_sectors(g, classes, genus).to_string())
        .collect();
    Ok(json!({
        "group": g.descriptor(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "classes": classes.iter().map(|c| json!({
            "label": qd.class_label(c.id),
            "size": c.size,
        })).collect::<Vec<_>>(),
        "irrep_degrees": qd.table().degrees(),
        "sector_counts": counts,
    }))
}

/// Enumerated genus-g sectors, refused above [`WEB_ENUM_CAP`] tuples.
pub fn sectors_json(spec: &str, genus: usize) -> Result<Value, String> {
    let qd = load(spec)?;
    let g = qd.group();
    if tuple_count(g.order(), genus) > WEB_ENUM_CAP {
        return Err(format!("|G|^{genus} is above the page limit of {WEB_ENUM_CAP} tuples"));
    }
    let opts = EnumOptions {
        cap: WEB_ENUM_CAP,
        ..EnumOptions::default()
    };
    let list = enumerate_graph_sectors(g, qd.classes(), genus, &opts).map_err(|e| e.to_string())?;
    Ok(json!(list
        .iter()
        .map(|s| json!({
            "representative": s.representative.iter().map(|&x| g.name(x)).collect::<Vec<_>>(),
            "d_squared": s.orbit_size,
            "lambda": s.lambda.map(|c| qd.class_label(c)),
            "rho": s.rho.map(|c| qd.class_label(c)),
        }))
        .collect::<Vec<_>>()))
}

/// Fusion table of the fluxes `mu`, `nu` (class index, element name or `C_name`).
pub fn flux_fusion_json(spec: &str, mu: &str, nu: &str) -> Result<Value, String> {
    let qd = load(spec)?;
    let (g, classes) = (qd.group(), qd.classes());
    let mu = classes.resolve(g, mu).map_err(|e| e.to_string())?;
    let nu = classes.resolve(g, nu).map_err(|e| e.to_string())?;
    let t = loop_fusion_table(g, classes, mu, nu);
    let dist = |v: Vec<(usize, topoqd_core::fusion::Probability)>| {
        v.into_iter()
            .map(|(c, p)| json!({ "class": qd.class_label(c), "p": p.to_string() }))
            .collect::<Vec<_>>()
    };
    Ok(json!({
        "mu": qd.class_label(mu),
        "nu": qd.class_label(nu),
        "channels": t.channels.iter().map(|c| json!({
            "representative": [g.name(c.representative.0), g.name(c.representative.1)],
            "lambda": qd.class_label(c.lambda),
            "k": c.k,
            "rho": qd.class_label(c.rho),
            "d_squared": c.d_squared,
            "p": c.p.to_string(),
        })).collect::<Vec<_>>(),
        "by_lambda": dist(t.by_lambda()),
        "by_rho": dist(t.by_rho()),
    }))
}

/// Pairing matrix on `s2xs1` or `t2`, entries as `[re, im]`.
pub fn s_matrix_json(spec: &str, manifold: &str) -> Result<Value, String> {
    let qd = load(spec)?;
    let manifold: Manifold = manifold.parse().map_err(|e: topoqd_core::Error| e.to_string())?;
    let m = manifold.pairing_matrix(&qd).map_err(|e| e.to_string())?;
    let entries: Vec<Vec<[f64; 2]>> = (0..m.entries.nrows())
        .map(|i| {
            (0..m.entries.ncols())
                .map(|j| [m.entries[(i, j)].re, m.entries[(i, j)].im])
                .collect()
        })
        .collect();
    Ok(json!({
        "manifold": manifold.name(),
        "rows": m.row_labels,
        "cols": m.col_labels,
        "entries": entries,
        "d_pair": m.d_pair,
        "unitarity_residual": m.unitarity_residual(),
    }))
}

fn to_js(v: Result<Value, String>) -> Result<String, JsValue> {
    v.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn group_summary(spec: &str, max_genus: usize) -> Result<String, JsValue> {
    to_js(summary_json(spec, max_genus))
}

#[wasm_bindgen]
pub fn graph_sectors(spec: &str, genus: usize) -> Result<String, JsValue> {
    to_js(sectors_json(spec, genus))
}

#[wasm_bindgen]
pub fn flux_fusion(spec: &str, mu: &str, nu: &str) -> Result<String, JsValue> {
    to_js(flux_fusion_json(spec, mu, nu))
}

#[wasm_bindgen]
pub fn s_matrix(spec: &str, manifold: &str) -> Result<String, JsValue> {
    to_js(s_matrix_json(spec, manifold))
}
