//! Document builders for each subcommand.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use topoqd_core::consistency::{verify_all, ConsistencyReport, Status};
use topoqd_core::fusion::{
    capacity, ln_big, loop_fusion_table, point_fusion_invariant_dim, point_fusion_nabc, ratio_f64, Probability, Region,
};
use topoqd_core::oracle::{abelian_fusion_oracle, orbit_count_direct, ORACLE_CAP};
use topoqd_core::pairing::{Manifold, PairingManifold, PairingMatrix};
use topoqd_core::sectors::{count_graph_sectors, enumerate_graph_sectors, loop_sectors, EnumOptions};
use topoqd_core::{Error, QuantumDouble, Result};

use crate::render::{complex_text, round12, Document, Table};

fn map(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("builders pass objects"),
    }
}

fn big(x: &BigUint) -> Value {
    match x.to_u64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn prob(p: Probability) -> Value {
    json!({ "p": format!("{}/{}", p.numer(), p.denom()), "decimal": round12(ratio_f64(p)) })
}

fn prob_text(p: Probability) -> String {
    if *p.denom() == 1 {
        p.numer().to_string()
    } else {
        format!("{}/{}", p.numer(), p.denom())
    }
}

fn irrep_label(i: usize) -> String {
    format!("chi{i}")
}

/// Accepts `chi<i>` or a bare index.
pub fn resolve_irrep(qd: &QuantumDouble, text: &str) -> Result<usize> {
    let t = text.trim();
    let digits = t.strip_prefix("chi").unwrap_or(t);
    digits
        .parse::<usize>()
        .ok()
        .filter(|&i| i < qd.table().len())
        .ok_or_else(|| Error::InvalidLabel(text.to_string()))
}

pub fn group_info(qd: &QuantumDouble) -> Result<Document> {
    let g = qd.group();
    let classes = qd.classes();
    let loops = loop_sectors(qd)?;
    let mut class_table = Table::new(
        "conjugacy classes",
        &["class", "representative", "size", "centralizer order"],
    );
    let class_json: Vec<Value> = classes
        .iter()
        .map(|c| {
            class_table.row(vec![
                qd.class_label(c.id),
                g.name(c.representative).to_string(),
                c.size.to_string(),
                c.centralizer_order().to_string(),
            ]);
            json!({
                "label": qd.class_label(c.id),
                "representative": g.name(c.representative),
                "size": c.size,
                "centralizer_order": c.centralizer_order(),
            })
        })
        .collect();
    let mut cap_table = Table::new("capacities", &["region", "Q", "ln Q"]);
    let regions = [
        Region::SphereShell,
        Region::SolidTorusFlux,
        Region::SolidTorusLoop,
        Region::Handlebody(2),
    ];
    let mut caps = Vec::new();
    for region in regions {
        let c = capacity(qd, region)?;
        let tee = round12(ln_big(&c.value));
        cap_table.row(vec![region.to_string(), c.value.to_string(), format!("{tee}")]);
        caps.push(json!({ "region": region.to_string(), "capacity": big(&c.value), "tee": tee }));
    }
    let mut summary = Table::new("group", &["order", "abelian", "exponent", "classes", "loop sectors"]);
    summary.row(vec![
        g.order().to_string(),
        g.is_abelian().to_string(),
        g.exponent().to_string(),
        classes.len().to_string(),
        loops.len().to_string(),
    ]);
    let body = json!({
        "order": g.order(),
        "abelian": g.is_abelian(),
        "exponent": g.exponent(),
        "classes": class_json,
        "irrep_degrees": qd.table().degrees(),
        "point_sectors": qd.table().len(),
        "flux_sectors": classes.len(),
        "loop_sectors": loops.iter().map(|l| json!({
            "class": qd.class_label(l.class),
            "irrep": l.irrep,
            "d": l.d,
        })).collect::<Vec<_>>(),
        "capacities": caps,
    });
    Ok(Document::new(
        "group-info",
        &g.descriptor(),
        map(body),
        vec![summary, class_table, cap_table],
    ))
}

pub fn sectors(
    qd: &QuantumDouble,
    genus: usize,
    enumerate: bool,
    opts: &EnumOptions,
    oracle: bool,
) -> Result<Document> {
    let g = qd.group();
    let classes = qd.classes();
    let count = count_graph_sectors(g, classes, genus);
    let mut body = Map::new();
    body.insert("genus".into(), json!(genus));
    body.insert("count".into(), big(&count));
    let mut summary = Table::new(format!("genus-{genus} graph sectors"), &["count"]);
    summary.row(vec![count.to_string()]);
    let mut tables = vec![summary];
    if oracle {
        let direct = orbit_count_direct(g, genus, ORACLE_CAP)?;
        body.insert("oracle_count".into(), json!(direct));
    }
    if enumerate {
        let list = enumerate_graph_sectors(g, classes, genus, opts)?;
        let mut t = Table::new("sectors", &["representative", "d^2", "cycle classes", "lambda", "rho"]);
        let items: Vec<Value> = list
            .iter()
            .map(|s| {
                let rep: Vec<&str> = s.representative.iter().map(|&x| g.name(x)).collect();
                let cycles: Vec<String> = s.cycle_classes.iter().map(|&c| qd.class_label(c)).collect();
                let lambda = s.lambda.map(|c| qd.class_label(c));
                let rho = s.rho.map(|c| qd.class_label(c));
                t.row(vec![
                    format!("({})", rep.join(",")),
                    s.orbit_size.to_string(),
                    cycles.join(","),
                    lambda.clone().unwrap_or_default(),
                    rho.clone().unwrap_or_default(),
                ]);
                let mut item = json!({
                    "representative": rep,
                    "orbit_size": s.orbit_size,
                    "d_squared": s.orbit_size,
                    "cycle_classes": cycles,
                });
                if let (Some(l), Some(r)) = (lambda, rho) {
                    item["lambda"] = json!(l);
                    item["rho"] = json!(r);
                }
                item
            })
            .collect();
        let mut dims: Vec<u64> = list.iter().map(|s| s.orbit_size).collect();
        dims.sort_unstable();
        body.insert("sectors".into(), json!(items));
        body.insert("d_squared_multiset".into(), json!(dims));
        tables.push(t);
    }
    Ok(Document::new("sectors", &g.descriptor(), body, tables))
}

pub fn fuse_points(qd: &QuantumDouble, a: &str, b: &str, c: Option<&str>, oracle: bool) -> Result<Document> {
    let table = qd.table();
    let (a, b) = (resolve_irrep(qd, a)?, resolve_irrep(qd, b)?);
    let outputs: Vec<usize> = match c {
        Some(c) => vec![resolve_irrep(qd, c)?],
        None => (0..table.len()).collect(),
    };
    let mut t = Table::new(
        format!("{} x {}", irrep_label(a), irrep_label(b)),
        &["a", "b", "c", "N_ab^c"],
    );
    let mut items = Vec::new();
    for c in outputs {
        let n = point_fusion_nabc(table, a, b, c)?;
        let mut item = json!({ "a": irrep_label(a), "b": irrep_label(b), "c": irrep_label(c), "n": n });
        if oracle && qd.group().is_abelian() {
            let cbar = table.conjugate(c)?;
            item["oracle_n"] = json!(abelian_fusion_oracle(qd.group(), table, &[a, b, cbar])?);
        }
        t.row(vec![irrep_label(a), irrep_label(b), irrep_label(c), n.to_string()]);
        items.push(item);
    }
    let degrees = table.degrees();
    let body = json!({
        "degrees": [degrees[a], degrees[b]],
        "invariant_dim": point_fusion_invariant_dim(table, &[a, b])?,
        "channels": items,
    });
    Ok(Document::new(
        "fuse-points",
        &qd.group().descriptor(),
        map(body),
        vec![t],
    ))
}

fn class_pair_label(qd: &QuantumDouble, mu: usize, nu: usize) -> String {
    format!("({}, {})", qd.class_label(mu), qd.class_label(nu))
}

pub fn fuse_loops(qd: &QuantumDouble, mu: &str, nu: &str, borromean: bool) -> Result<Document> {
    let g = qd.group();
    let classes = qd.classes();
    let mu = classes.resolve(g, mu)?;
    let nu = classes.resolve(g, nu)?;
    let table = loop_fusion_table(g, classes, mu, nu);
    let pair = class_pair_label(qd, mu, nu);
    let by_rho: Vec<Value> = table
        .by_rho()
        .into_iter()
        .map(|(c, p)| {
            let mut v = prob(p);
            v["rho"] = json!(qd.class_label(c));
            v
        })
        .collect();
    let mut body = Map::new();
    body.insert("mu".into(), json!(qd.class_label(mu)));
    body.insert("nu".into(), json!(qd.class_label(nu)));
    if borromean {
        let mut t = Table::new(format!("Borromean fusion {pair}"), &["(mu, nu)", "rho = C_[g,h]", "p"]);
        for (c, p) in table.by_rho() {
            t.row(vec![pair.clone(), qd.class_label(c), prob_text(p)]);
        }
        body.insert("borromean".into(), json!(by_rho));
        return Ok(Document::new("fuse-loops", &g.descriptor(), body, vec![t]));
    }
    let mut t = Table::new(
        format!("loop fusion {pair}"),
        &[
            "(mu, nu)",
            "C_(g,h)",
            "lambda = C_gh",
            "rho = C_[g,h]",
            "d^2_(g,h)",
            "p",
        ],
    );
    let channels: Vec<Value> = table
        .channels
        .iter()
        .map(|c| {
            let (x, y) = c.representative;
            t.row(vec![
                pair.clone(),
                format!("C_({},{})", g.name(x), g.name(y)),
                qd.class_label(c.lambda),
                qd.class_label(c.rho),
                c.d_squared.to_string(),
                prob_text(c.p),
            ]);
            let mut v = prob(c.p);
            v["representative"] = json!([g.name(x), g.name(y)]);
            v["lambda"] = json!(qd.class_label(c.lambda));
            v["k"] = json!(c.k);
            v["rho"] = json!(qd.class_label(c.rho));
            v["d_squared"] = json!(c.d_squared);
            v
        })
        .collect();
    let by_lambda: Vec<Value> = table
        .by_lambda()
        .into_iter()
        .map(|(c, p)| {
            let mut v = prob(p);
            v["lambda"] = json!(qd.class_label(c));
            v
        })
        .collect();
    body.insert("channels".into(), json!(channels));
    body.insert("by_lambda".into(), json!(by_lambda));
    body.insert("borromean".into(), json!(by_rho));
    Ok(Document::new("fuse-loops", &g.descriptor(), body, vec![t]))
}

pub fn pairing_json(m: &PairingMatrix) -> Value {
    let entries: Vec<Vec<[f64; 2]>> = (0..m.entries.nrows())
        .map(|i| {
            (0..m.entries.ncols())
                .map(|j| [round12(m.entries[(i, j)].re), round12(m.entries[(i, j)].im)])
                .collect()
        })
        .collect();
    json!({
        "manifold": m.manifold,
        "row_labels": m.row_labels,
        "col_labels": m.col_labels,
        "entries": entries,
        "d_pair": round12(m.d_pair),
        "unitarity_residual": m.unitarity_residual(),
        "vacuum_row_residual": m.vacuum_row_residual(),
        "vacuum_col_residual": m.vacuum_col_residual(),
    })
}

fn pairing_table(m: &PairingMatrix) -> Table {
    let mut headers = vec![String::new()];
    headers.extend(m.col_labels.iter().cloned());
    let mut t = Table {
        title: format!("pairing matrix on {} (D_pair = {})", m.manifold, round12(m.d_pair)),
        headers,
        rows: Vec::new(),
    };
    for (i, label) in m.row_labels.iter().enumerate() {
        let mut row = vec![label.clone()];
        row.extend((0..m.entries.ncols()).map(|j| complex_text(m.entries[(i, j)].re, m.entries[(i, j)].im)));
        t.row(row);
    }
    t
}

pub fn pairing(qd: &QuantumDouble, manifold: Manifold) -> Result<Document> {
    let m = manifold.pairing_matrix(qd)?;
    let body = pairing_json(&m);
    Ok(Document::new(
        "pairing",
        &qd.group().descriptor(),
        map(body),
        vec![pairing_table(&m)],
    ))
}

fn status_text(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn verify_table(rep: &ConsistencyReport) -> Table {
    let mut t = Table::new(
        format!("consistency relations up to genus {}", rep.max_genus),
        &["id", "relation", "lhs", "rhs", "status", "residual"],
    );
    for r in &rep.relations {
        t.row(vec![
            r.id.to_string(),
            r.anchor.to_string(),
            cell(&r.lhs),
            cell(&r.rhs),
            status_text(r.status).to_string(),
            format!("{:e}", r.residual),
        ]);
    }
    t
}

pub fn verify(qd: &QuantumDouble, max_genus: usize, opts: &EnumOptions) -> Result<(Document, bool)> {
    let rep = verify_all(qd, max_genus, opts)?;
    let body = serde_json::to_value(&rep).expect("reports serialize");
    let mut body = map(body);
    body.shift_remove("group");
    let table = verify_table(&rep);
    Ok((Document::new("verify", &rep.group, body, vec![table]), rep.all_pass))
}

pub fn dump_chartable(qd: &QuantumDouble) -> Result<Document> {
    let g = qd.group();
    let table = qd.table();
    let classes = qd.classes();
    let labels: Vec<String> = (0..classes.len()).map(|c| qd.class_label(c)).collect();
    let mut headers = vec!["irrep".to_string(), "degree".to_string()];
    headers.extend(labels.iter().cloned());
    let mut t = Table {
        title: "character table".into(),
        headers,
        rows: Vec::new(),
    };
    let mut sizes = vec![String::new(), "size".to_string()];
    sizes.extend(classes.iter().map(|c| c.size.to_string()));
    t.row(sizes);
    let irreps: Vec<Value> = table
        .irreps()
        .iter()
        .enumerate()
        .map(|(i, ir)| {
            let mut row = vec![irrep_label(i), ir.degree.to_string()];
            row.extend(ir.values.iter().map(|v| complex_text(v.re, v.im)));
            t.row(row);
            json!({
                "label": irrep_label(i),
                "degree": ir.degree,
                "real": ir.is_real(),
                "values": ir.values.iter().map(|v| [round12(v.re), round12(v.im)]).collect::<Vec<_>>(),
            })
        })
        .collect();
    let body = json!({
        "seed": qd.seed(),
        "classes": classes.iter().map(|c| json!({
            "label": qd.class_label(c.id),
            "representative": g.name(c.representative),
            "size": c.size,
        })).collect::<Vec<_>>(),
        "irreps": irreps,
    });
    Ok(Document::new("chartable", &g.descriptor(), map(body), vec![t]))
}

pub fn report(qd: &QuantumDouble, max_genus: usize, opts: &EnumOptions) -> Result<(Document, bool)> {
    let (verify_doc, pass) = verify(qd, max_genus, opts)?;
    let mut tables = verify_doc.tables;
    let mut sector_docs = Vec::new();
    for genus in 1..=max_genus {
        let enumerate = genus <= 2 && topoqd_core::sectors::tuple_count(qd.order(), genus) <= opts.cap;
        let doc = sectors(qd, genus, enumerate, opts, false)?;
        tables.extend(doc.tables);
        sector_docs.push(strip_header(doc.json));
    }
    let mut pairings = Vec::new();
    for m in [Manifold::S2xS1, Manifold::Torus] {
        let doc = pairing(qd, m)?;
        tables.extend(doc.tables);
        pairings.push(strip_header(doc.json));
    }
    let body = json!({
        "verify": strip_header(verify_doc.json),
        "sectors": sector_docs,
        "pairing": pairings,
    });
    Ok((
        Document::new("report", &qd.group().descriptor(), map(body), tables),
        pass,
    ))
}

fn strip_header(v: Value) -> Value {
    let mut m = map(v);
    m.shift_remove("schema_version");
    m.shift_remove("group");
    Value::Object(m)
}
