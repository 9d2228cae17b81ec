//! Report model and its three renderings.
//!
//! Rationals are always `"num/den"` strings; integers are bare JSON numbers
//! of any size.

use icis_core::arith::format_rational;
use icis_core::{Integer, InvariantRecord, Rational, Verdict};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub command: String,
    pub params: Map<String, Value>,
    pub records: Vec<Value>,
    pub summary: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            params: Map::new(),
            records: Vec::new(),
            summary: Map::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn summarize(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Header plus rows, shared by the human and CSV renderings.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    pub fn to_aligned(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(&self.header);
        for row in &self.rows {
            out += &line(row);
        }
        out
    }
}

/// Human rendering: the table, then one `key: value` line per summary entry.
pub fn to_human(report: &Report, table: &Table) -> String {
    let mut out = String::new();
    if !table.rows.is_empty() {
        out += &table.to_aligned();
        out.push('\n');
    }
    for (k, v) in &report.summary {
        match v {
            Value::Array(items) if items.iter().all(Value::is_object) => {
                out += &format!("{k}:\n");
                for item in items {
                    out += &format!("  {}\n", human_value(item));
                }
            }
            other => out += &format!("{k}: {}\n", human_value(other)),
        }
    }
    out
}

/// Verdict objects as `[outcome] claim k=v: lhs rel rhs (gap g)`; other
/// values as compact JSON.
fn human_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(m) if m.contains_key("claim") && m.contains_key("outcome") => {
            let text = |key: &str| m.get(key).and_then(Value::as_str).unwrap_or_default().to_string();
            let mut line = format!("[{}] {}", text("outcome"), text("claim"));
            if let Some(Value::Object(params)) = m.get("params") {
                for (pk, pv) in params {
                    line += &format!(" {pk}={}", human_value(pv));
                }
            }
            if text("outcome") != "n/a" {
                line += &format!(
                    ": {} {} {} (gap {})",
                    text("lhs"),
                    text("relation"),
                    text("rhs"),
                    text("gap")
                );
            }
            if m.contains_key("note") {
                line += &format!(" -- {}", text("note"));
            }
            line
        }
        other => other.to_string(),
    }
}

pub fn int(v: &Integer) -> Value {
    Value::Number(
        v.to_string()
            .parse::<Number>()
            .expect("integers are valid JSON numbers"),
    )
}

pub fn rat(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn degrees_str(degrees: &[u64]) -> String {
    degrees.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

pub fn record_json(rec: &InvariantRecord) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("n".into(), rec.n.into());
    m.insert("r".into(), rec.r().into());
    m.insert("degrees".into(), rec.degrees.clone().into());
    m.insert("mu".into(), int(&rec.mu));
    m.insert("pg".into(), int(&rec.pg));
    m.insert("P".into(), int(&rec.multiplicity));
    m.insert("ratio".into(), rec.ratio.as_ref().map_or(Value::Null, rat));
    m
}

pub fn verdict_json(v: &Verdict) -> Value {
    let mut m = Map::new();
    m.insert("claim".into(), v.claim.id().into());
    let params: Map<String, Value> = v
        .params
        .iter()
        .map(|(k, x)| (k.clone(), Value::String(x.clone())))
        .collect();
    m.insert("params".into(), Value::Object(params));
    m.insert("outcome".into(), v.outcome.as_str().into());
    m.insert("relation".into(), v.relation.symbol().into());
    m.insert("lhs".into(), rat(&v.lhs));
    m.insert("rhs".into(), rat(&v.rhs));
    m.insert("gap".into(), rat(&v.gap));
    m.insert("informational".into(), v.claim.is_informational().into());
    if let Some(w) = &v.witness {
        m.insert("witness".into(), Value::Object(record_json(w)));
    }
    if let Some(note) = &v.note {
        m.insert("note".into(), note.clone().into());
    }
    Value::Object(m)
}

pub const INVARIANT_COLUMNS: [&str; 10] = [
    "n",
    "r",
    "degrees",
    "mu",
    "pg",
    "P",
    "ratio_num",
    "ratio_den",
    "claim",
    "holds",
];

/// One row in the invariant-sweep column layout.
pub fn invariant_row(rec: &InvariantRecord, claim: &str, holds: &str) -> Vec<String> {
    let (num, den) = rec.ratio.as_ref().map_or((String::new(), String::new()), |q| {
        (q.numer().to_string(), q.denom().to_string())
    });
    vec![
        rec.n.to_string(),
        rec.r().to_string(),
        degrees_str(&rec.degrees),
        rec.mu.to_string(),
        rec.pg.to_string(),
        rec.multiplicity.to_string(),
        num,
        den,
        claim.to_string(),
        holds.to_string(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use icis_core::arith::rational;

    #[test]
    fn big_integers_stay_bare() {
        let big: Integer = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(int(&big).to_string(), "123456789012345678901234567890");
        assert_eq!(rat(&rational(-6, 4)), Value::String("-3/2".into()));
        assert_eq!(rat(&rational(5, 1)), Value::String("5/1".into()));
    }

    #[test]
    fn csv_quotes_lists() {
        let mut t = Table::new(&["degrees", "mu"]);
        t.push(vec!["3,3".into(), "80".into()]);
        assert_eq!(t.to_csv(), "degrees,mu\n\"3,3\",80\n");
    }

    #[test]
    fn json_round_trip() {
        let mut r = Report::new("coeff");
        r.param("n", "2");
        r.records
            .push(serde_json::json!({"value": "36/7", "big": int(&Integer::from(10).pow(30))}));
        r.summarize("ok", true);
        let text = r.to_json();
        assert_eq!(Report::from_json(&text).unwrap().to_json(), text);
    }
}
