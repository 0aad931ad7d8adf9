use serde_json::{json, Value};

use rigidclass::algebra::rational_string;
use rigidclass::frame::{self, FrameError, FrameReport};
use rigidclass::pontrjagin::{enumerate_v, independence_certificate, ModelRing};
use rigidclass::selftest;
use rigidclass::weil::{self, Family, VeyIndex};

use crate::report::{pass_fail, yes_no, Report, Table};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Budget(String),
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Budget(m) | CliError::Invariant(m) => m,
        }
    }
}

/// A report plus the exit status it implies.
pub struct Outcome {
    pub report: Report,
    pub status: u8,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, status: 0 }
    }
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::A => "A",
        Family::B => "B",
    }
}

fn index_json(v: &VeyIndex) -> Value {
    json!({ "index": v.to_string(), "i": v.i, "j": v.j, "degree": v.degree() })
}

fn list(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

pub fn vey(
    q: u32,
    min_degree: Option<u32>,
    max_degree: Option<u32>,
    rigid_only: bool,
    max_dim: u64,
) -> Result<Outcome, CliError> {
    let (total, _) = weil::vey_class_counts(q);
    if total > u128::from(max_dim) {
        return Err(CliError::Budget(format!(
            "W_{q} has {total} Vey classes, above the budget of {max_dim}"
        )));
    }
    let window = match (min_degree, max_degree) {
        (None, None) => None,
        (a, b) => Some((a.unwrap_or(0), b.unwrap_or(u32::MAX))),
    };
    let classes: Vec<VeyIndex> = weil::vey_basis(q, window)
        .into_iter()
        .filter(|v| !rigid_only || v.is_rigid(q))
        .collect();
    let mut table = Table::new(format!("Vey basis of H*(W_{q})"), &["index", "I", "J", "degree", "rigid"]);
    let mut rows = Vec::new();
    for v in &classes {
        let rigid = v.is_rigid(q);
        table.row(vec![v.to_string(), list(&v.i), list(&v.j), v.degree().to_string(), yes_no(rigid)]);
        let mut entry = index_json(v);
        entry["rigid"] = json!(rigid);
        rows.push(entry);
    }
    let mut report = Report::new("vey")
        .param("q", q)
        .param("minDegree", min_degree)
        .param("maxDegree", max_degree)
        .param("rigidOnly", rigid_only);
    report.results = json!({
        "q": q,
        "count": classes.len(),
        "rigidCount": classes.iter().filter(|v| v.is_rigid(q)).count(),
        "classes": rows,
    });
    report.tables.push(table);
    report.notes.push(format!("{} classes", classes.len()));
    Ok(report.into())
}

pub fn cohomology(
    q: u32,
    framed: bool,
    max_degree: Option<u32>,
    representatives: bool,
    max_dim: u64,
) -> Result<Outcome, CliError> {
    let w = weil::build_wq(q, framed).map_err(|e| CliError::Usage(e.to_string()))?;
    let name = if framed { format!("W_{q}") } else { format!("WO_{q}") };
    let total = w.gens().total_dimension(max_dim).ok_or_else(|| {
        CliError::Budget(format!("{name} has more than {max_dim} monomials; raise --max-dim to compute it"))
    })?;
    let h = w
        .cohomology(max_degree)
        .map_err(|e| CliError::Invariant(e.to_string()))?;
    let vey = framed.then(|| weil::vey_counts(q));

    let mut headers = vec!["degree", "cochains", "cocycles", "coboundaries", "dim"];
    if vey.is_some() {
        headers.push("vey");
    }
    if representatives {
        headers.push("representatives");
    }
    let mut table = Table::new(format!("H*({name})"), &headers);
    let mut per_degree = Vec::new();
    let mut agree = true;
    for (n, d) in &h.per_degree {
        let vey_n = vey.as_ref().map(|v| if *n == 0 { 1 } else { v.get(n).copied().unwrap_or(0) });
        agree &= vey_n.map_or(true, |c| c == d.dimension);
        let reps: Vec<String> = d.representatives.iter().map(|r| r.to_string()).collect();
        let mut row = vec![
            n.to_string(),
            d.cochain_dim.to_string(),
            d.cocycle_dim.to_string(),
            d.coboundary_dim.to_string(),
            d.dimension.to_string(),
        ];
        if let Some(c) = vey_n {
            row.push(c.to_string());
        }
        if representatives {
            row.push(reps.join("; "));
        }
        table.row(row);
        let mut entry = json!({
            "degree": n,
            "cochains": d.cochain_dim,
            "cocycles": d.cocycle_dim,
            "coboundaries": d.coboundary_dim,
            "dimension": d.dimension,
        });
        if representatives {
            entry["representatives"] = json!(reps);
        }
        per_degree.push(entry);
    }
    let dims: serde_json::Map<String, Value> = h
        .dimensions()
        .into_iter()
        .map(|(n, d)| (n.to_string(), json!(d)))
        .collect();
    let mut report = Report::new("cohomology")
        .param("q", q)
        .param("framed", framed)
        .param("maxDegree", max_degree)
        .param("representatives", representatives);
    report.results = json!({
        "algebra": name,
        "totalDimension": total,
        "dimensions": dims,
        "eulerCharacteristic": h.euler_characteristic(),
        "perDegree": per_degree,
        "matchesVeyBasis": if framed { json!(agree) } else { Value::Null },
    });
    report.tables.push(table);
    report.notes.push(format!(
        "total dimension {total}; Euler characteristic {}",
        h.euler_characteristic()
    ));
    if framed {
        report.notes.push(format!("Vey basis agreement: {}", yes_no(agree)));
    }
    Ok(Outcome { report, status: if framed && !agree { 4 } else { 0 } })
}

pub fn pontrjagin(q: u32) -> Result<Outcome, CliError> {
    let cert = independence_certificate(q).map_err(|e| CliError::Usage(e.to_string()))?;
    let v = enumerate_v(q);
    let mut listing = Table::new(format!("Pontrjagin monomials V({q})"), &["class", "weight", "size", "degree", "test cycle"]);
    let mut classes = Vec::new();
    for m in &v {
        let cycle = ModelRing::product(m.test_cycle()).expect("valid test cycle").label();
        listing.row(vec![
            m.to_string(),
            m.weight().to_string(),
            m.size().to_string(),
            m.degree().to_string(),
            cycle.clone(),
        ]);
        classes.push(json!({
            "class": m.to_string(),
            "exponents": m.exponents(),
            "weight": m.weight(),
            "size": m.size(),
            "degree": m.degree(),
            "testCycle": cycle,
        }));
    }
    let mut report = Report::new("pontrjagin").param("q", q);
    report.tables.push(listing);
    let mut summary = Table::new("pairing blocks", &["degree", "size", "rank", "verdict"]);
    for b in &cert.blocks {
        let mut headers = vec!["class \\ cycle".to_string()];
        headers.extend(b.cycles.iter().cloned());
        let hdr: Vec<&str> = headers.iter().map(String::as_str).collect();
        let mut t = Table::new(format!("degree {} block", b.degree), &hdr);
        for (class, row) in b.classes.iter().zip(&b.matrix) {
            let mut cells = vec![class.clone()];
            cells.extend(row.iter().map(rational_string));
            t.row(cells);
        }
        report.tables.push(t);
        summary.row(vec![
            b.degree.to_string(),
            b.classes.len().to_string(),
            b.rank.to_string(),
            pass_fail(b.pass),
        ]);
    }
    report.tables.push(summary);
    report.notes.push(format!("normalization: {}", cert.normalization));
    report.notes.push(format!("certificate: {}", pass_fail(cert.pass)));
    report.results = json!({
        "q": q,
        "classes": classes,
        "blocks": serde_json::to_value(&cert.blocks).expect("serializable"),
        "pass": cert.pass,
        "normalization": cert.normalization,
    });
    Ok(Outcome { report, status: if cert.pass { 0 } else { 4 } })
}

fn frame_error(e: FrameError) -> CliError {
    match e {
        FrameError::Budget { .. } => CliError::Budget(e.to_string()),
        FrameError::InvalidParameter(_)
        | FrameError::IndexOutOfRange(_)
        | FrameError::NotIncreasing { .. }
        | FrameError::NotVey(_) => CliError::Usage(e.to_string()),
        other => CliError::Invariant(other.to_string()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FrameCase {
    /// Products of CP2 with q = 2k
    #[value(name = "2k")]
    Products,
    /// The sphere S^{4k} with q = 4k - 2
    #[value(name = "4k2")]
    Sphere,
}

pub fn frame(case: FrameCase, k: u32, max_dim: u64) -> Result<Outcome, CliError> {
    let rep: FrameReport = match case {
        FrameCase::Products => frame::verify_prop_2k(k, max_dim),
        FrameCase::Sphere => frame::verify_prop_4k2(k, max_dim),
    }
    .map_err(frame_error)?;
    let mut table = Table::new(
        format!("classes over {} (q = {})", rep.base, rep.q),
        &["class", "degree", "image", "cocycle", "nonzero", "rigid", "coboundary of"],
    );
    for c in &rep.classes {
        table.row(vec![
            c.index.to_string(),
            c.degree.to_string(),
            c.image.clone(),
            yes_no(c.cocycle),
            yes_no(c.nonzero),
            yes_no(c.rigid),
            c.witness.clone().unwrap_or_else(|| "-".into()),
        ]);
    }
    let mut report = Report::new("frame")
        .param("case", rep.case.clone())
        .param("k", k);
    report.tables.push(table);
    if !rep.vanishing.is_empty() {
        let mut t = Table::new("expected vanishing", &["class", "image", "zero"]);
        for v in &rep.vanishing {
            t.row(vec![v.index.to_string(), v.image.clone(), yes_no(v.zero)]);
        }
        report.tables.push(t);
    }
    report.notes.push(format!(
        "model dimension {}; rank {} of {}; independent: {}; certified: {}",
        rep.model_dimension,
        rep.rank,
        rep.classes.len(),
        yes_no(rep.independent),
        yes_no(rep.pass)
    ));
    let classes: Vec<Value> = rep
        .classes
        .iter()
        .map(|c| {
            let mut v = index_json(&c.index);
            v["image"] = json!(c.image);
            v["cocycle"] = json!(c.cocycle);
            v["nonzero"] = json!(c.nonzero);
            v["rigid"] = json!(c.rigid);
            v["witness"] = json!(c.witness);
            v
        })
        .collect();
    let vanishing: Vec<Value> = rep
        .vanishing
        .iter()
        .map(|c| {
            let mut v = index_json(&c.index);
            v["image"] = json!(c.image);
            v["zero"] = json!(c.zero);
            v
        })
        .collect();
    report.results = json!({
        "case": rep.case,
        "k": rep.k,
        "q": rep.q,
        "base": rep.base,
        "modelDimension": rep.model_dimension,
        "classes": classes,
        "rank": rep.rank,
        "independent": rep.independent,
        "vanishing": vanishing,
        "certified": rep.pass,
    });
    Ok(report.into())
}

pub fn permanence(q: u32, seed: &str, r_list: &[u32]) -> Result<Outcome, CliError> {
    let seed: VeyIndex = seed.parse().map_err(|e: weil::WeilError| CliError::Usage(e.to_string()))?;
    let rep = frame::permanence_family(&seed, q, r_list).map_err(frame_error)?;
    let mut table = Table::new(
        format!("twisted family of {} in codimension {q}", rep.seed),
        &["class", "degree", "image", "nonzero", "rigid"],
    );
    let mut classes = Vec::new();
    for c in &rep.classes {
        table.row(vec![
            c.index.to_string(),
            c.degree.to_string(),
            c.image.clone(),
            yes_no(c.nonzero),
            yes_no(c.rigid),
        ]);
        let mut v = index_json(&c.index);
        v["image"] = json!(c.image);
        v["nonzero"] = json!(c.nonzero);
        v["rigid"] = json!(c.rigid);
        classes.push(v);
    }
    let mut report = Report::new("permanence")
        .param("q", q)
        .param("seed", rep.seed.to_string())
        .param("r", r_list);
    report.tables.push(table);
    report.notes.push(format!("rank {} of {}", rep.rank, rep.classes.len()));
    report.results = json!({
        "q": q,
        "seed": index_json(&rep.seed),
        "classes": classes,
        "rank": rep.rank,
        "independent": rep.independent,
    });
    Ok(Outcome { status: if rep.independent { 0 } else { 4 }, report })
}

fn even_codimension(q: u32) -> Result<Vec<weil::RigidFamilyEntry>, CliError> {
    weil::enumerate_rqs(q).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn rqs(q: u32) -> Result<Outcome, CliError> {
    let entries = even_codimension(q)?;
    let mut table = Table::new(format!("spherical rigid classes, q = {q}"), &["class", "family", "degree"]);
    let mut rows = Vec::new();
    for e in &entries {
        table.row(vec![e.index.to_string(), family_name(e.family).into(), e.degree.to_string()]);
        let mut v = index_json(&e.index);
        v["family"] = json!(family_name(e.family));
        rows.push(v);
    }
    let mut report = Report::new("rqs").param("q", q);
    report.tables.push(table);
    report.results = json!({ "q": q, "count": entries.len(), "classes": rows });
    Ok(report.into())
}

pub fn rigid_table(q_max: u32) -> Result<Outcome, CliError> {
    let rows = weil::rigid_count_table(q_max);
    let mut table = Table::new(
        "rigid class counts",
        &["q", "vey", "rigid", "spherical", "family A", "spherical degrees"],
    );
    let dash = || "-".to_string();
    for r in &rows {
        table.row(vec![
            r.q.to_string(),
            r.vey.to_string(),
            r.rigid.to_string(),
            r.rqs.map_or_else(dash, |n| n.to_string()),
            r.family_a.map_or_else(dash, |n| n.to_string()),
            if r.rqs_degrees.is_empty() { dash() } else { list(&r.rqs_degrees) },
        ]);
    }
    let mut report = Report::new("rigid-table").param("qMax", q_max);
    report.tables.push(table);
    report.results = json!({
        "rows": rows.iter().map(|r| json!({
            "q": r.q,
            "vey": r.vey.to_string(),
            "rigid": r.rigid.to_string(),
            "spherical": r.rqs,
            "familyA": r.family_a,
            "sphericalDegrees": r.rqs_degrees,
        })).collect::<Vec<_>>(),
    });
    Ok(report.into())
}

/// Spherical rigid classes in degree `dim`: a family of maps indexed by
/// `Z^n`, one integer per class, whose pairings scale linearly.
pub fn catalog(q: u32, dim: u32) -> Result<Outcome, CliError> {
    let entries: Vec<_> = even_codimension(q)?
        .into_iter()
        .filter(|e| e.degree == dim)
        .collect();
    let n = entries.len();
    let lattice = match n {
        0 => String::new(),
        1 => "Z".into(),
        _ => format!("Z^{n}"),
    };
    let slot = |k: usize| if n == 1 { "l".to_string() } else { format!("l{}", k + 1) };
    let mut table = Table::new(
        format!("distinguishing classes, q = {q}, dim = {dim}"),
        &["parameter", "class", "family", "pairing", "statement"],
    );
    let statement = "pairing scales linearly in l; distinct l => distinct classes";
    let mut rows = Vec::new();
    for (k, e) in entries.iter().enumerate() {
        let pairing = format!("{} * <{}, h[f{}]>", slot(k), e.index, k + 1);
        table.row(vec![
            slot(k),
            e.index.to_string(),
            family_name(e.family).into(),
            pairing.clone(),
            statement.into(),
        ]);
        let mut v = index_json(&e.index);
        v["family"] = json!(family_name(e.family));
        v["parameter"] = json!(slot(k));
        v["pairing"] = json!(pairing);
        v["statement"] = json!(statement);
        rows.push(v);
    }
    let mut report = Report::new("catalog").param("q", q).param("dim", dim);
    report.tables.push(table);
    if n > 0 {
        report.notes.push(format!("{lattice}-family, one integer per class"));
    }
    report.results = json!({
        "q": q,
        "dim": dim,
        "lattice": lattice,
        "classes": rows,
    });
    Ok(report.into())
}

pub fn run_selftest(only: Option<u32>) -> Result<Outcome, CliError> {
    let results = match only {
        Some(id) => vec![selftest::run(id).ok_or_else(|| CliError::Usage(format!("no criterion {id}")))?],
        None => selftest::run_all(),
    };
    let mut table = Table::new("acceptance criteria", &["id", "name", "verdict", "budget", "detail"]);
    for r in &results {
        table.row(vec![
            r.id.to_string(),
            r.name.to_string(),
            pass_fail(r.pass),
            r.budget_ms.map_or_else(|| "-".into(), |b| format!("{}s", b / 1000)),
            r.detail.clone(),
        ]);
    }
    let failed: Vec<&str> = results.iter().filter(|r| !r.pass).map(|r| r.name).collect();
    let mut report = Report::new("selftest").param("only", only);
    report.tables.push(table);
    if !failed.is_empty() {
        report.notes.push(format!("failing: {}", failed.join(", ")));
    }
    report.results = json!({
        "criteria": results.iter().map(|r| json!({
            "id": r.id,
            "name": r.name,
            "pass": r.pass,
            "budgetMs": r.budget_ms.map(|b| b as u64),
            "detail": r.detail,
        })).collect::<Vec<_>>(),
        "pass": failed.is_empty(),
    });
    Ok(Outcome { status: if failed.is_empty() { 0 } else { 4 }, report })
}
