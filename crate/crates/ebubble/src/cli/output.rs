//! Deterministic CSV and JSON rendering for command results.
//!
//! Floats are printed with 17 significant digits so runs are reproducible
//! byte for byte and values survive a parse round trip.

use serde_json::{Map, Value};

/// 17-significant-digit scientific notation, locale-independent.
pub fn fmt_float(value: f64) -> String {
    format!("{value:.16e}")
}

fn config_comment(config: &[(String, String)]) -> String {
    let body: Vec<String> = config.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("# config: {}", body.join(" "))
}

fn config_json(config: &[(String, String)]) -> Value {
    let mut map = Map::new();
    for (key, value) in config {
        map.insert(key.clone(), Value::String(value.clone()));
    }
    Value::Object(map)
}

fn finish_json(value: Value) -> String {
    let mut text = serde_json::to_string_pretty(&value).expect("JSON output is always valid");
    text.push('\n');
    text
}

/// A quantity/value report (radius, critical, estimate-gamma).
pub struct KeyValueReport {
    pub command: &'static str,
    pub config: Vec<(String, String)>,
    pub results: Vec<(String, f64)>,
    pub comparisons: Vec<String>,
}

impl KeyValueReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# ebubble {}\n", self.command));
        out.push_str(&config_comment(&self.config));
        out.push('\n');
        out.push_str("quantity,value\n");
        for (key, value) in &self.results {
            out.push_str(&format!("{key},{}\n", fmt_float(*value)));
        }
        for line in &self.comparisons {
            out.push_str(&format!("# comparison: {line}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut results = Map::new();
        for (key, value) in &self.results {
            results.insert(key.clone(), Value::from(*value));
        }
        let mut root = Map::new();
        root.insert("command".into(), Value::String(self.command.to_string()));
        root.insert("config".into(), config_json(&self.config));
        root.insert("results".into(), Value::Object(results));
        root.insert(
            "comparisons".into(),
            Value::Array(
                self.comparisons
                    .iter()
                    .map(|c| Value::String(c.clone()))
                    .collect(),
            ),
        );
        finish_json(Value::Object(root))
    }
}

/// One energy curve: a pressure plus parallel value columns.
pub struct CurveBlock {
    /// Pressure in the configured display unit.
    pub pressure: f64,
    /// Column values: radius, total, zero_point, surface, pressure_work.
    pub rows: Vec<[f64; 5]>,
}

/// Energy-curve family report.
pub struct CurveReport {
    pub config: Vec<(String, String)>,
    /// Header names for the five columns, units included.
    pub columns: [String; 5],
    pub pressure_key: String,
    pub blocks: Vec<CurveBlock>,
}

impl CurveReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("# ebubble curve\n");
        out.push_str(&config_comment(&self.config));
        out.push('\n');
        for block in &self.blocks {
            out.push_str(&format!(
                "# {} = {}\n",
                self.pressure_key,
                fmt_float(block.pressure)
            ));
            out.push_str(&self.columns.join(","));
            out.push('\n');
            for row in &block.rows {
                let cells: Vec<String> = row.iter().map(|v| fmt_float(*v)).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let curves: Vec<Value> = self
            .blocks
            .iter()
            .map(|block| {
                let mut map = Map::new();
                map.insert(self.pressure_key.clone(), Value::from(block.pressure));
                for (column_idx, name) in self.columns.iter().enumerate() {
                    let values: Vec<Value> = block
                        .rows
                        .iter()
                        .map(|row| Value::from(row[column_idx]))
                        .collect();
                    map.insert(name.clone(), Value::Array(values));
                }
                Value::Object(map)
            })
            .collect();
        let mut root = Map::new();
        root.insert("command".into(), Value::String("curve".into()));
        root.insert("config".into(), config_json(&self.config));
        root.insert("curves".into(), Value::Array(curves));
        finish_json(Value::Object(root))
    }
}

/// Surface-tension scan report with the fitted exponents.
pub struct SweepReport {
    pub config: Vec<(String, String)>,
    /// Header names for the six columns, units included.
    pub columns: [String; 6],
    pub rows: Vec<[f64; 6]>,
    pub exponent_closed: f64,
    pub exponent_numeric: f64,
}

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("# ebubble sweep\n");
        out.push_str(&config_comment(&self.config));
        out.push('\n');
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| fmt_float(*v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out.push_str(&format!(
            "# exponent_closed = {}\n",
            fmt_float(self.exponent_closed)
        ));
        out.push_str(&format!(
            "# exponent_numeric = {}\n",
            fmt_float(self.exponent_numeric)
        ));
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut map = Map::new();
                for (column_idx, name) in self.columns.iter().enumerate() {
                    map.insert(name.clone(), Value::from(row[column_idx]));
                }
                Value::Object(map)
            })
            .collect();
        let mut root = Map::new();
        root.insert("command".into(), Value::String("sweep".into()));
        root.insert("config".into(), config_json(&self.config));
        root.insert("rows".into(), Value::Array(rows));
        root.insert("exponent_closed".into(), Value::from(self.exponent_closed));
        root.insert(
            "exponent_numeric".into(),
            Value::from(self.exponent_numeric),
        );
        finish_json(Value::Object(root))
    }
}
