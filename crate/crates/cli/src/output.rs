use std::io::{self, Write};

use egyfrac::operators::{Operator, OperatorApplication};
use egyfrac::{Representation, RestrictionProfile, SearchBounds};
use serde_json::{json, Map, Value};

use crate::args::Format;

/// Writes result records to one stream in the chosen format.
///
/// * jsonl: one JSON object per line; metadata is wrapped as `{"config": …}`.
/// * csv: representations as `target,denoms` rows, other records as their
///   own header plus rows; metadata and summaries are `#` comment lines.
/// * human: representations as `(a,b,c)`, records as `key: value` pairs.
pub struct Emitter<W: Write> {
    out: W,
    format: Format,
    csv_header: Option<Vec<String>>,
}

impl<W: Write> Emitter<W> {
    pub fn new(out: W, format: Format) -> Self {
        Emitter {
            out,
            format,
            csv_header: None,
        }
    }

    pub fn config(&mut self, config: Value) -> io::Result<()> {
        match self.format {
            Format::Jsonl => writeln!(self.out, "{}", json!({ "config": config })),
            Format::Csv => writeln!(self.out, "# config {config}"),
            Format::Human => writeln!(self.out, "# {}", human_pairs(&config)),
        }
    }

    pub fn rep(&mut self, rep: &Representation) -> io::Result<()> {
        match self.format {
            Format::Jsonl => writeln!(self.out, "{}", rep.to_line()),
            Format::Csv => {
                self.csv_columns(&[Representation::CSV_HEADER.to_string()], false)?;
                writeln!(self.out, "{}", rep.to_csv_row())
            }
            Format::Human => writeln!(self.out, "{rep}"),
        }
    }

    /// A data record; `value` must be a JSON object.
    pub fn record(&mut self, value: Value) -> io::Result<()> {
        match self.format {
            Format::Jsonl => writeln!(self.out, "{value}"),
            Format::Csv => {
                let obj = value.as_object().expect("records are objects");
                let keys: Vec<String> = obj.keys().cloned().collect();
                self.csv_columns(&keys, true)?;
                let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
                w.write_record(obj.values().map(csv_cell)).map_err(io::Error::other)?;
                let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
                self.out.write_all(&bytes)
            }
            Format::Human => writeln!(self.out, "{}", human_pairs(&value)),
        }
    }

    /// A bare line, for human output of single values.
    pub fn text(&mut self, line: &str) -> io::Result<()> {
        writeln!(self.out, "{line}")
    }

    pub fn edge(&mut self, app: &OperatorApplication) -> io::Result<()> {
        if self.format == Format::Human {
            return writeln!(self.out, "{}: {} -> {}", op_label(&app.op), app.from, app.to);
        }
        self.record(edge_value(app))
    }

    /// Trailing record, e.g. `{"count":5,"complete":true,"nodes":9}`.
    pub fn summary(&mut self, value: Value) -> io::Result<()> {
        match self.format {
            Format::Jsonl => writeln!(self.out, "{value}"),
            Format::Csv => writeln!(self.out, "# summary {value}"),
            Format::Human => writeln!(self.out, "{}", human_pairs(&value)),
        }
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }

    fn csv_columns(&mut self, cols: &[String], split: bool) -> io::Result<()> {
        if self.csv_header.as_deref() == Some(cols) {
            return Ok(());
        }
        self.csv_header = Some(cols.to_vec());
        if split {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            w.write_record(cols).map_err(io::Error::other)?;
            let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
            self.out.write_all(&bytes)
        } else {
            writeln!(self.out, "{}", cols.join(","))
        }
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn human_pairs(v: &Value) -> String {
    match v.as_object() {
        Some(obj) => obj
            .iter()
            .map(|(k, v)| format!("{k}: {}", human_value(v)))
            .collect::<Vec<_>>()
            .join("  "),
        None => human_value(v),
    }
}

fn human_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(human_value).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => format!("{{{}}}", human_pairs(v)),
        other => other.to_string(),
    }
}

fn op_label(op: &Operator) -> String {
    match op {
        Operator::Gamma(c) => format!("gamma(part {}, d {})", c.part_index, c.d),
        Operator::O { params, pair_index } => format!("o(q {}, d {}, pair {pair_index})", params.q(), params.d()),
    }
}

pub fn rep_value(rep: &Representation) -> Value {
    serde_json::to_value(rep.to_record()).expect("record serializes")
}

pub fn edge_value(app: &OperatorApplication) -> Value {
    let (op, params) = match &app.op {
        Operator::Gamma(c) => ("gamma", json!({ "part_index": c.part_index, "d": c.d.to_string() })),
        Operator::O { params, pair_index } => (
            "o",
            json!({ "q": params.q().to_string(), "d": params.d().to_string(), "pair_index": pair_index }),
        ),
    };
    json!({ "op": op, "params": params, "from": rep_value(&app.from), "to": rep_value(&app.to) })
}

pub fn profile_value(p: &RestrictionProfile) -> Value {
    json!({
        "distinct": p.distinct,
        "odd_only": p.odd_only,
        "min_denominator": p.min_denominator.to_string(),
        "parts_parity": p.parts_parity.to_string(),
        "forbid_lcm_divisible_by": p.forbid_lcm_divisible_by.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
    })
}

pub fn bounds_value(b: &SearchBounds) -> Value {
    let mut m = Map::new();
    m.insert(
        "max_denominator".into(),
        b.max_denominator.as_ref().map_or(Value::Null, |d| d.to_string().into()),
    );
    m.insert("max_results".into(), b.max_results.map_or(Value::Null, Value::from));
    m.insert("node_budget".into(), b.node_budget.map_or(Value::Null, Value::from));
    Value::Object(m)
}
