use std::path::PathBuf;

use rayon::prelude::*;
use serde_json::json;

use qproj_core::codes::{
    verify_critical, verify_critical_hamming, verify_hamming_matroid, verify_weight_enumerator, verify_weight_relation,
};
use qproj_core::corpus;
use qproj_core::qmaps::all_qmatroids;
use qproj_core::{projectivize, Ambient, CharPolyMethod, Field, LMap, LinearCode, Matrix, QMatroid, Report};

use crate::args::{Format, Suite};
use crate::commands::{load_code, load_maps, load_qmatroid, Output};
use crate::{proj_failure, Failure, Verdict};

pub struct Options {
    pub seed: u64,
    pub t: usize,
    pub strong_characterization: bool,
}

enum Subject {
    Code(LinearCode),
    QMatroid(QMatroid),
    Map(Box<(QMatroid, QMatroid, LMap)>),
}

struct Item {
    key: String,
    subject: Subject,
}

/// Splits below this many vectors are all checked for the minor
/// correspondence.
const SPLIT_LIMIT: u64 = 64;

pub fn run(
    format: Format,
    suite: Suite,
    codes: &[PathBuf],
    qmatroids: &[PathBuf],
    maps: &[PathBuf],
    opts: &Options,
) -> Result<Verdict, Failure> {
    let from_corpus = codes.is_empty() && qmatroids.is_empty() && maps.is_empty();
    let mut items = if from_corpus { corpus_items(suite, opts.seed)? } else { file_items(codes, qmatroids, maps)? };
    items.sort_by(|a, b| a.key.cmp(&b.key));

    let results: Vec<Result<Vec<Report>, Failure>> = items.par_iter().map(|it| run_item(suite, it, opts)).collect();
    let mut reports = Vec::new();
    let mut skipped = 0;
    for r in results {
        match r {
            Ok(rs) => reports.extend(rs),
            Err(Failure::Guard(_)) if from_corpus => skipped += 1,
            Err(f) => return Err(f),
        }
    }
    if reports.is_empty() && skipped == 0 {
        return Err(Failure::Usage(format!("no inputs applicable to the {} suite", suite_name(suite))));
    }

    let failed = reports.iter().filter(|r| !r.passed()).count();
    let passed = reports.len() - failed;
    let mut text: String = reports.iter().map(|r| format!("{r}\n")).collect();
    text.push_str(&format!("{passed} passed, {failed} failed, {skipped} skipped\n"));
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                r.theorem.clone(),
                r.instance.clone(),
                if r.passed() { "pass" } else { "fail" }.to_string(),
                r.checked.to_string(),
                r.witness.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let json = json!({
        "suite": suite_name(suite),
        "passed": passed,
        "failed": failed,
        "skipped": skipped,
        "reports": reports,
    });
    Output { text, json, header: vec!["theorem", "instance", "status", "checked", "witness"], rows }.print(format)?;
    if let Some(first) = reports.iter().find(|r| !r.passed()) {
        eprintln!("violation: {first}");
        return Ok(Verdict::Violation);
    }
    Ok(Verdict::Pass)
}

fn file_items(codes: &[PathBuf], qmatroids: &[PathBuf], maps: &[PathBuf]) -> Result<Vec<Item>, Failure> {
    let mut items = Vec::new();
    for p in codes {
        items.push(Item { key: p.display().to_string(), subject: Subject::Code(load_code(p)?) });
    }
    for p in qmatroids {
        items.push(Item { key: p.display().to_string(), subject: Subject::QMatroid(load_qmatroid(p)?) });
    }
    for p in maps {
        for (i, entry) in load_maps(p)?.into_iter().enumerate() {
            let (m, n, map) = entry.build()?;
            let name = entry.name.unwrap_or_else(|| format!("#{i:04}"));
            items.push(Item { key: format!("{} {name}", p.display()), subject: Subject::Map(Box::new((m, n, map))) });
        }
    }
    Ok(items)
}

fn corpus_items(suite: Suite, seed: u64) -> Result<Vec<Item>, Failure> {
    if suite == Suite::Maps {
        let f = Field::new(2).expect("2 is prime");
        let a = Ambient::new(f, 2);
        let plane = all_qmatroids(&a)?;
        let mut items = Vec::new();
        for (i, m) in plane.iter().enumerate() {
            for (j, n) in plane.iter().enumerate() {
                for code in 0..16u32 {
                    let data: Vec<u32> = (0..4).map(|b| code >> b & 1).collect();
                    let key = format!("M{i} -> M{j} [{} {}; {} {}]", data[0], data[1], data[2], data[3]);
                    let map = LMap::from_matrix(&a, &a, Matrix::new(2, 2, data))?;
                    items.push(Item { key, subject: Subject::Map(Box::new((m.clone(), n.clone(), map))) });
                }
            }
        }
        return Ok(items);
    }
    let code_suite = matches!(suite, Suite::Critical | Suite::Weights);
    Ok(corpus::standard(seed)
        .into_iter()
        .enumerate()
        .filter(|(_, inst)| !code_suite || inst.code.is_some())
        .map(|(i, inst)| {
            let key = format!("{i:03} {}", inst.name);
            let subject = match inst.code {
                Some(c) => Subject::Code(c),
                None => Subject::QMatroid(inst.qmatroid),
            };
            Item { key, subject }
        })
        .collect())
}

fn run_item(suite: Suite, item: &Item, opts: &Options) -> Result<Vec<Report>, Failure> {
    let key = item.key.as_str();
    let needs_code = || Failure::Usage(format!("{key}: the {} suite needs a code", suite_name(suite)));
    match (suite, &item.subject) {
        (Suite::Maps, Subject::Map(b)) => {
            let (m, n, map) = &**b;
            let mut out = vec![map.check_functor(m, n, key)?];
            if opts.strong_characterization {
                out.push(map.check_strong_characterization(m, n, key)?);
            }
            Ok(out)
        }
        (Suite::Maps, _) => Err(Failure::Usage(format!("{key}: the maps suite needs --maps"))),
        (_, Subject::Map(..)) => Err(Failure::Usage(format!("{key}: map entries only apply to the maps suite"))),
        (Suite::Critical, Subject::Code(c)) => {
            Ok(vec![verify_critical(c, opts.t, key)?, verify_critical_hamming(c, opts.t, key)?])
        }
        (Suite::Weights, Subject::Code(c)) => Ok(vec![
            verify_weight_enumerator(c, key)?,
            verify_weight_relation(c, key)?,
            verify_hamming_matroid(c, key)?,
        ]),
        (Suite::Critical | Suite::Weights, Subject::QMatroid(_)) => Err(needs_code()),
        (Suite::Charpoly, s) => charpoly_reports(&qmatroid_of(s), key, opts.seed),
        (Suite::Projectivization, s) => projectivization_reports(&qmatroid_of(s), key, opts.seed),
    }
}

fn qmatroid_of(s: &Subject) -> QMatroid {
    match s {
        Subject::Code(c) => c.associated_qmatroid(),
        Subject::QMatroid(q) => q.clone(),
        Subject::Map(b) => b.0.clone(),
    }
}

fn charpoly_reports(qm: &QMatroid, key: &str, seed: u64) -> Result<Vec<Report>, Failure> {
    let mut agree = Report::new("characteristic polynomial methods agree", key);
    let reference = qm.char_poly(CharPolyMethod::Definition)?;
    for method in [CharPolyMethod::Flats, CharPolyMethod::Recursive] {
        let p = qm.char_poly(method)?;
        agree.check(p == reference, || format!("{method:?} gives {p}, definition gives {reference}"));
    }
    let shuffled = qm.char_poly_recursive_shuffled(seed);
    agree.check(shuffled == reference, || format!("shuffled recursion gives {shuffled}, definition gives {reference}"));

    let mut loops = Report::new("loops force the zero polynomial", key);
    if qm.loops().dim() > 0 {
        loops.check(reference.is_zero(), || format!("loops {} but polynomial {reference}", qm.loops()));
    }
    Ok(vec![agree, loops])
}

fn projectivization_reports(qm: &QMatroid, key: &str, seed: u64) -> Result<Vec<Report>, Failure> {
    let p = projectivize(qm).map_err(proj_failure)?;
    let a = qm.ambient();
    let small = a.size() <= SPLIT_LIMIT;
    let mut out =
        vec![p.verify_char_poly(key, small).map_err(proj_failure)?, p.verify_flat_lattices(key).map_err(proj_failure)?];
    if small {
        let mut minors = Report::new("minor correspondence", key);
        for w in a.enumerate_subspaces(None)? {
            for v in a.enumerate_subspaces(Some(a.n() - w.dim()))? {
                if a.meet(&w, &v).dim() == 0 {
                    minors.absorb(&p.verify_minor_correspondence(&w, &v, key).map_err(proj_failure)?);
                }
            }
        }
        out.push(minors);
    }
    out.push(p.verify_telescoping(seed, key).map_err(proj_failure)?);
    Ok(out)
}

fn suite_name(suite: Suite) -> String {
    format!("{suite:?}").to_lowercase()
}
