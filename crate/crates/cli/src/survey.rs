use std::path::Path;

use rayon::prelude::*;
use solrep_core::analysis::{analyze, AnalysisReport, Status};
use solrep_core::{expand_specs, GroupSpec};

use crate::{emit, Failure, Settings, EXIT_INCONCLUSIVE};

pub const HEADER: &str =
    "name\torder\tsoluble\td\tm\tmobius1\tkgroup\treplacement\tstrong\tclassification\terror";

type Row = Result<AnalysisReport, (String, String)>;

fn cell<T: ToString>(value: Option<T>) -> String {
    value.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn bound(value: Option<usize>, status: Status) -> String {
    match (value, status) {
        (Some(v), Status::Inconclusive) => format!(">={v}"),
        (v, _) => cell(v),
    }
}

fn tsv_line(row: &Row) -> String {
    match row {
        Ok(r) => [
            r.name.clone(),
            r.order.to_string(),
            r.soluble.to_string(),
            bound(r.d, r.statuses.d),
            bound(r.m_bruteforce, r.statuses.m_bruteforce),
            r.mobius_1.to_string(),
            r.k_group.to_string(),
            cell(r.replacement),
            cell(r.strong_replacement),
            r.classification.clone(),
            "-".to_string(),
        ]
        .join("\t"),
        Err((name, error)) => {
            let mut cells = vec![name.clone()];
            cells.extend(std::iter::repeat_n("-".to_string(), 9));
            cells.push(error.replace(['\t', '\n'], " "));
            cells.join("\t")
        }
    }
}

pub fn run(
    specs: &[String],
    settings: &Settings,
    out: Option<&Path>,
    json: bool,
) -> Result<u8, Failure> {
    let mut all: Vec<GroupSpec> = Vec::new();
    for s in specs {
        all.extend(expand_specs(s)?);
    }
    let rows: Vec<Row> = settings.pool().install(|| {
        all.par_iter()
            .map(|spec| {
                spec.build(&settings.limits)
                    .and_then(|g| analyze(&g, &settings.analysis))
                    .map_err(|e| (spec.to_string(), e.to_string()))
            })
            .collect()
    });
    let text = if json {
        let values: Vec<serde_json::Value> = rows
            .iter()
            .map(|row| match row {
                Ok(r) => serde_json::to_value(r).expect("serializable"),
                Err((name, error)) => serde_json::json!({ "name": name, "error": error }),
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&values).expect("serializable");
        s.push('\n');
        s
    } else {
        let mut s = String::from(HEADER);
        s.push('\n');
        for row in &rows {
            s.push_str(&tsv_line(row));
            s.push('\n');
        }
        s
    };
    emit(out, &text)?;
    let inconclusive = rows
        .iter()
        .any(|r| r.as_ref().is_ok_and(|r| r.statuses.any_inconclusive()));
    Ok(if inconclusive { EXIT_INCONCLUSIVE } else { 0 })
}
