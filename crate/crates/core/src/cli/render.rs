use serde_json::{json, Map, Value};

use super::files::CoverFile;
use super::RunReport;
use crate::construct::{UnsplittabilityCertificate, UnsplittableCover};
use crate::cover::CoverSystem;
use crate::field::{NFElement, NFSpectrum, Theorem12Report, VanishingReport};
use crate::spectrum::{Corollary11Report, Corollary12Report, Remark13Report, SpectrumReport, Theorem11Report};

fn s<T: ToString>(v: T) -> Value {
    Value::String(v.to_string())
}

pub(super) fn element_value(e: &NFElement) -> Value {
    Value::Array(e.coords().iter().map(s).collect())
}

pub(super) fn system_value(sys: &CoverSystem) -> Value {
    serde_json::to_value(CoverFile::from_system(sys)).expect("cover file serializes")
}

fn counts_value(spectrum: &SpectrumReport) -> Value {
    spectrum
        .counts()
        .iter()
        .map(|(r, c)| json!({ "residue": s(r), "value": s(spectrum.value(*r)), "count": s(c) }))
        .collect()
}

pub(super) fn spectrum_details(spectrum: &SpectrumReport, brute_force: bool) -> Value {
    json!({
        "method": if brute_force { "brute-force" } else { "dp" },
        "modulus": s(spectrum.modulus()),
        "k": s(spectrum.k()),
        "support_size": s(spectrum.support_size()),
        "total": s(spectrum.total()),
        "counts": counts_value(spectrum),
    })
}

pub(super) fn theorem11_details(r: &Theorem11Report, spectrum: &SpectrumReport) -> Value {
    let mut v = json!({
        "multiplicity": s(r.multiplicity),
        "modulus": s(r.modulus),
        "k": s(r.k),
        "bound": s(&r.bound),
        "offending": r.offending.iter().map(s).collect::<Vec<_>>(),
        "counts": counts_value(spectrum),
    });
    if let Some((residue, count)) = &r.min_nonzero {
        v["min_nonzero_count"] = s(count);
        v["min_nonzero_residue"] = s(residue);
    }
    v
}

pub(super) fn corollary11_details(r: &Corollary11Report) -> Value {
    json!({
        "multiplicity": s(r.multiplicity),
        "k": s(r.k),
        "support_size": s(r.support_size),
        "bound": s(&r.bound),
    })
}

pub(super) fn corollary12_details(r: &Corollary12Report) -> Value {
    let mut v = json!({
        "bound": s(&r.bound),
        "rows": r.rows.iter().map(|row| json!({
            "r": s(row.residue),
            "count": s(&row.count),
            "integer_parts": row.integer_parts.iter().map(s).collect::<Vec<_>>(),
            "distinct_integer_parts": s(row.integer_parts.len()),
            "count_ok": row.count_ok,
            "diversity_ok": row.diversity_ok,
        })).collect::<Vec<_>>(),
    });
    if let Some(h) = &r.hypotheses {
        v["hypotheses"] = json!({
            "multiplicity": s(h.multiplicity),
            "truncated_multiplicity": s(h.truncated_multiplicity),
            "last_modulus": s(h.last_modulus),
            "periodic": h.periodic,
            "hold": h.hold(),
        });
    }
    v
}

pub(super) fn remark13_details(r: &Remark13Report) -> Value {
    let mut v = json!({
        "rows": r.rows.iter().map(|row| json!({
            "r": s(row.residue),
            "n": s(row.integer_part),
            "count": s(&row.count),
            "bound": s(&row.bound),
            "ok": row.ok(),
        })).collect::<Vec<_>>(),
    });
    if let Some(m) = r.exact_multiplicity {
        v["exact_multiplicity"] = s(m);
    }
    if let Some(n) = r.last_modulus {
        v["last_modulus"] = s(n);
    }
    v
}

pub(super) fn example11_details(out: &UnsplittableCover, certificate: Option<&UnsplittabilityCertificate>) -> Value {
    let indices = |v: &[usize]| -> Vec<Value> { v.iter().map(|i| s(i + 1)).collect() };
    let mut v = json!({
        "m": s(out.spec.m()),
        "primes": out.spec.primes().iter().map(s).collect::<Vec<_>>(),
        "product": s(out.spec.product()),
        "k": s(out.system.len()),
        "multiplicity": s(out.multiplicity),
        "star_covered": out.star_covered.iter().map(s).collect::<Vec<_>>(),
        "a_list_length": s(out.a_list.len()),
        "system": system_value(&out.system),
    });
    if let Some(c) = certificate {
        v["certificate"] = json!({
            "passed": c.passed(),
            "partitions": c.partitions.iter().map(|p| json!({
                "smaller": indices(&p.smaller),
                "larger": indices(&p.larger),
                "witness": s(p.witness),
                "avoids_a_list": p.avoids_a_list,
                "avoids_smaller_side": p.avoids_smaller_side,
            })).collect::<Vec<_>>(),
        });
    }
    v
}

fn nf_classes_value(spectrum: &NFSpectrum) -> Value {
    spectrum
        .counts
        .iter()
        .map(|(key, count)| json!({ "class": element_value(&spectrum.element_of(key)), "count": s(count) }))
        .collect()
}

pub(super) fn theorem12_details(r: &Theorem12Report, brute_force: bool) -> Value {
    json!({
        "method": if brute_force { "brute-force" } else { "dp" },
        "multiplicity": s(r.multiplicity),
        "bound": s(&r.bound),
        "mu": element_value(&r.mu),
        "count": s(&r.count),
        "denominator": s(r.spectrum.denominator),
        "total": s(r.spectrum.total()),
        "classes": nf_classes_value(&r.spectrum),
        "offending": r.offending.iter().map(|k| element_value(&r.spectrum.element_of(k))).collect::<Vec<_>>(),
    })
}

pub(super) fn vanishing_details(r: &VanishingReport) -> Value {
    let mut v = json!({
        "multiplicity": s(r.multiplicity),
        "representatives": s(r.representatives),
        "certified": s(r.certified),
    });
    if let Some(x) = &r.failing {
        v["failing"] = element_value(x);
    }
    v
}

pub(super) fn json_line(report: &RunReport) -> String {
    let mut text = serde_json::to_string(report).expect("report serializes");
    text.push('\n');
    text
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(t) => t.clone(),
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(scalar).collect();
            format!("[{}]", inner.join(", "))
        }
        Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

fn push_table(out: &mut String, name: &str, rows: &[Value]) {
    let Some(Value::Object(first)) = rows.first() else {
        out.push_str(&format!("{name}: (none)\n"));
        return;
    };
    let headers: Vec<&String> = first.keys().collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            headers
                .iter()
                .map(|h| row.get(h.as_str()).map(scalar).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = headers
        .iter()
        .enumerate()
        .map(|(i, h)| cells.iter().map(|r| r[i].len()).chain([h.len()]).max().unwrap_or(0))
        .collect();
    out.push_str(&format!("{name}:\n"));
    let line = |vals: Vec<&str>| -> String {
        let padded: Vec<String> = vals.iter().zip(&widths).map(|(v, w)| format!("{v:>w$}")).collect();
        format!("  {}\n", padded.join("  ").trim_end())
    };
    out.push_str(&line(headers.iter().map(|h| h.as_str()).collect()));
    for row in &cells {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
}

fn flatten<'a>(
    prefix: &str,
    map: &'a Map<String, Value>,
    scalars: &mut Vec<(String, String)>,
    tables: &mut Vec<(String, &'a [Value])>,
) {
    for (key, value) in map {
        let name = if prefix.is_empty() {
            key.clone()
        } else {
            format!("{prefix}.{key}")
        };
        match value {
            Value::Object(inner) if key != "system" => flatten(&name, inner, scalars, tables),
            Value::Array(items) if items.first().is_some_and(Value::is_object) => tables.push((name, items)),
            Value::Object(_) => scalars.push((
                name,
                format!("{} classes", value["classes"].as_array().map_or(0, Vec::len)),
            )),
            other => scalars.push((name, scalar(other))),
        }
    }
}

/// Human-readable rendering: aligned key/value lines, then one table per list.
pub(super) fn table(report: &RunReport) -> String {
    let mut out = format!("{}: {}\n", report.command, report.verdict);
    let mut scalars = Vec::new();
    let mut tables = Vec::new();
    if let Value::Object(map) = &report.details {
        flatten("", map, &mut scalars, &mut tables);
    }
    let width = scalars.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in &scalars {
        out.push_str(&format!("  {k:<width$}  {v}\n"));
    }
    for (name, rows) in tables {
        push_table(&mut out, &name, rows);
    }
    out
}
