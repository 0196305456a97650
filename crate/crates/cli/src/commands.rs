use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use qproj_core::codes::LinearCode;
use qproj_core::io::{read_json, CodeFile, MapEntry, MatroidFile, QMatroidFile};
use qproj_core::lattice::gaussian_binomial;
use qproj_core::matroid::bits;
use qproj_core::qmaps::LOOP_LABEL;
use qproj_core::{limits, projectivize, CharPolyMethod, Metric, Polynomial, QMatroid};

use crate::args::{Cli, Command, Format, Input, Method, MetricArg};
use crate::{proj_failure, suites, Failure, Verdict};

/// One command result in all three renderings.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Output {
    pub fn print(&self, format: Format) -> Result<(), Failure> {
        match format {
            Format::Text => print!("{}", self.text),
            Format::Json => println!("{}", serde_json::to_string_pretty(&self.json).expect("JSON values serialize")),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(std::io::stdout());
                let csv_err = |e: csv::Error| Failure::Usage(e.to_string());
                w.write_record(&self.header).map_err(csv_err)?;
                for r in &self.rows {
                    w.write_record(r).map_err(csv_err)?;
                }
                w.flush().map_err(|e| Failure::Usage(e.to_string()))?;
            }
        }
        Ok(())
    }
}

pub fn load_code(path: &Path) -> Result<LinearCode, Failure> {
    let file: CodeFile = read_json(path).map_err(|e| with_path(path, e))?;
    file.build().map_err(|e| with_path(path, e))
}

pub fn load_qmatroid(path: &Path) -> Result<QMatroid, Failure> {
    let file: QMatroidFile = read_json(path).map_err(|e| with_path(path, e))?;
    file.build().map_err(|e| with_path(path, e))
}

fn with_path(path: &Path, e: qproj_core::io::IoError) -> Failure {
    match Failure::from(e) {
        Failure::Usage(m) if !m.starts_with(&path.display().to_string()) => {
            Failure::Usage(format!("{}: {m}", path.display()))
        }
        f => f,
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MapFile {
    One(MapEntry),
    Many(Vec<MapEntry>),
}

pub fn load_maps(path: &Path) -> Result<Vec<MapEntry>, Failure> {
    let file: MapFile = read_json(path).map_err(|e| with_path(path, e))?;
    Ok(match file {
        MapFile::One(e) => vec![e],
        MapFile::Many(v) => v,
    })
}

fn input_qmatroid(input: &Input) -> Result<QMatroid, Failure> {
    match (&input.code, &input.qmatroid) {
        (Some(c), _) => Ok(load_code(c)?.associated_qmatroid()),
        (_, Some(q)) => load_qmatroid(q),
        _ => Err(Failure::Usage("one of --code or --qmatroid is required".into())),
    }
}

pub fn run(cli: &Cli) -> Result<Verdict, Failure> {
    match &cli.command {
        Command::Charpoly { input, method, cross_check } => charpoly(cli, input, *method, *cross_check),
        Command::Projectivize { input } => projectivize_cmd(cli, input),
        Command::Weights { code, metric, hamming_code } => weights(cli, code, *metric, *hamming_code),
        Command::Verify { suite, code, qmatroid, maps, t, strong_characterization } => {
            let opts = suites::Options { seed: cli.seed, t: *t, strong_characterization: *strong_characterization };
            suites::run(cli.format, *suite, code, qmatroid, maps, &opts)
        }
        Command::Maps { maps } => maps_cmd(cli, maps),
        Command::Info { code, qmatroid } => info(cli, code.as_deref(), qmatroid.as_deref()),
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Definition => "definition",
        Method::Flats => "flats",
        Method::Recursive => "recursive",
    }
}

fn poly_json(p: &Polynomial) -> Value {
    json!({ "polynomial": p.to_string(), "coefficients": p.coeffs() })
}

fn charpoly(cli: &Cli, input: &Input, method: Method, cross_check: bool) -> Result<Verdict, Failure> {
    let qm = input_qmatroid(input)?;
    let main = qm.char_poly(method.into())?;
    let mut text = format!("{main}\n");
    let mut json =
        json!({ "method": method_name(method), "polynomial": main.to_string(), "coefficients": main.coeffs() });
    let mut rows = vec![vec![method_name(method).to_string(), main.to_string()]];
    let mut verdict = Verdict::Pass;
    if cross_check {
        let mut all = serde_json::Map::new();
        let mut agree = true;
        for m in [Method::Definition, Method::Flats, Method::Recursive] {
            let p = if m == method { main.clone() } else { qm.char_poly(m.into())? };
            agree &= p == main;
            text.push_str(&format!("{}: {p}\n", method_name(m)));
            all.insert(method_name(m).into(), poly_json(&p));
            if m != method {
                rows.push(vec![method_name(m).to_string(), p.to_string()]);
            }
        }
        text.push_str(if agree { "cross-check: agree\n" } else { "cross-check: DISAGREE\n" });
        all.insert("agree".into(), Value::Bool(agree));
        json["cross_check"] = Value::Object(all);
        if !agree {
            verdict = Verdict::Violation;
        }
    }
    Output { text, json, header: vec!["method", "polynomial"], rows }.print(cli.format)?;
    Ok(verdict)
}

fn projectivize_cmd(cli: &Cli, input: &Input) -> Result<Verdict, Failure> {
    let qm = input_qmatroid(input)?;
    let p = projectivize(&qm).map_err(proj_failure)?;
    let mat = p.matroid();
    let flats = mat.flats();
    let chi = mat.char_poly(CharPolyMethod::Flats)?;
    let labels: Vec<String> = mat.labels().to_vec();
    let flat_lists: Vec<Vec<usize>> = flats.elements().iter().map(|&f| bits(f).collect()).collect();
    let file = MatroidFile::Flats { labels: Some(labels.clone()), n: mat.size(), flats: flat_lists.clone() };

    let names = |f: &Vec<usize>| f.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join(" ");
    let mut text = format!(
        "points ({}): {}\nrank: {}\nloops: {}\nflats: {}\ncharacteristic polynomial: {chi}\n",
        labels.len(),
        labels.join(" "),
        mat.rank(mat.full_mask()),
        bits(mat.loops()).count(),
        flats.len()
    );
    for (i, f) in flat_lists.iter().enumerate() {
        text.push_str(&format!("  rank {}: {{{}}}\n", flats.height(i), names(f)));
    }
    let mut json = serde_json::to_value(&file).expect("matroid files serialize");
    json["characteristic_polynomial"] = Value::String(chi.to_string());
    let rows = flat_lists
        .iter()
        .enumerate()
        .map(|(i, f)| vec![i.to_string(), flats.height(i).to_string(), names(f)])
        .collect();
    Output { text, json, header: vec!["flat", "rank", "points"], rows }.print(cli.format)?;
    Ok(Verdict::Pass)
}

fn weights(cli: &Cli, path: &Path, metric: Option<MetricArg>, hamming_code: bool) -> Result<Verdict, Failure> {
    let mut code = load_code(path)?;
    if hamming_code {
        code = code.hamming_assoc_code(None)?;
    }
    let metric: Metric = metric.unwrap_or(if hamming_code { MetricArg::Hamming } else { MetricArg::Rank }).into();
    let dist = code.weight_distribution(metric)?;
    let rows = dist.counts.iter().enumerate().map(|(i, c)| vec![i.to_string(), c.to_string()]).collect();
    Output {
        text: format!("{dist}\n"),
        json: json!({ "metric": metric.to_string(), "n": code.n(), "k": code.k(), "counts": dist.counts }),
        header: vec!["weight", "count"],
        rows,
    }
    .print(cli.format)?;
    Ok(Verdict::Pass)
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn maps_cmd(cli: &Cli, path: &Path) -> Result<Verdict, Failure> {
    let entries = load_maps(path)?;
    let header = vec!["map", "q-weak", "q-strong", "weak", "strong", "flat-clauses", "continuous"];
    let mut rows = Vec::new();
    for (i, entry) in entries.iter().enumerate() {
        let (m, n, map) = entry.build()?;
        let name = entry.name.clone().unwrap_or_else(|| format!("map {i}"));
        let pm = projectivize(&m).map_err(proj_failure)?;
        let pn = projectivize(&n).map_err(proj_failure)?;
        let mo = pm.matroid().loop_extension(LOOP_LABEL)?;
        let no = pn.matroid().loop_extension(LOOP_LABEL)?;
        let sl = map.induced_proj_map();
        let cond = map.strong_conditions(&m, &n)?;
        rows.push(vec![
            name,
            yes(map.is_qweak(&m, &n)?),
            yes(map.is_qstrong(&m, &n)?),
            yes(sl.is_weak(&mo, &no)),
            yes(sl.is_strong(&mo, &no)),
            yes(cond.flat_clauses()),
            yes(cond.continuous()),
        ]);
    }
    let text = rows
        .iter()
        .map(|r| {
            let fields: Vec<String> = header[1..].iter().zip(&r[1..]).map(|(h, v)| format!("{h}={v}")).collect();
            format!("{}: {}\n", r[0], fields.join(" "))
        })
        .collect();
    let json = Value::Array(
        rows.iter()
            .map(|r| {
                Value::Object(header.iter().zip(r).map(|(h, v)| (h.to_string(), Value::String(v.clone()))).collect())
            })
            .collect(),
    );
    Output { text, json, header, rows }.print(cli.format)?;
    Ok(Verdict::Pass)
}

fn info(cli: &Cli, code: Option<&Path>, qmatroid: Option<&Path>) -> Result<Verdict, Failure> {
    let mut kv: Vec<(&str, String)> = Vec::new();
    let qm = match (code, qmatroid) {
        (Some(path), _) => {
            let c = load_code(path)?;
            let ext = c.ext();
            kv.push(("field", format!("GF({}^{})", ext.base().q(), ext.m())));
            kv.push(("modulus", format!("{:?}", ext.modulus())));
            kv.push(("length", c.n().to_string()));
            kv.push(("dimension", c.k().to_string()));
            Some(c.associated_qmatroid())
        }
        (_, Some(path)) => Some(load_qmatroid(path)?),
        _ => None,
    };
    match qm {
        Some(qm) => {
            let (q, n) = (qm.ambient().q(), qm.n());
            let subspaces: u64 = (0..=n).map(|k| gaussian_binomial(n, k, q)).sum();
            kv.push(("q", q.to_string()));
            kv.push(("n", n.to_string()));
            kv.push(("subspaces", subspaces.to_string()));
            kv.push(("points", gaussian_binomial(n, 1, q).to_string()));
            kv.push(("rank", qm.total_rank().to_string()));
            kv.push(("loops", format!("{}", qm.loops())));
            let coloops = qm.points().iter().filter(|p| qm.is_coloop(p)).count();
            kv.push(("coloops", coloops.to_string()));
            kv.push(("flats", qm.flats().len().to_string()));
        }
        None => {
            let l = limits::get();
            kv.push(("guard enumerate (log2)", l.enumerate_log2.to_string()));
            kv.push(("guard codewords (log2)", l.codewords_log2.to_string()));
            kv.push(("guard tuples (log2)", l.tuples_log2.to_string()));
            kv.push(("guard q-definition (log2)", l.qchar_definition_log2.to_string()));
            kv.push(("guard q-axioms (log2)", l.axioms_log2.to_string()));
            kv.push(("guard equivalence (log2)", l.equivalence_log2.to_string()));
            kv.push(("guard representative matrix (log2)", l.rep_matrix_log2.to_string()));
            kv.push(("guard matroid definition (elements)", l.matroid_definition_elems.to_string()));
            kv.push(("guard matroid axioms (elements)", l.matroid_axiom_elems.to_string()));
            kv.push(("guard subset scan (log2)", l.subset_scan_log2.to_string()));
        }
    }
    let text = kv.iter().map(|(k, v)| format!("{k}: {v}\n")).collect();
    let json = Value::Object(kv.iter().map(|(k, v)| (k.to_string(), Value::String(v.clone()))).collect());
    let rows = kv.iter().map(|(k, v)| vec![k.to_string(), v.clone()]).collect();
    Output { text, json, header: vec!["key", "value"], rows }.print(cli.format)?;
    Ok(Verdict::Pass)
}
