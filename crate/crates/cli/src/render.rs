//! A report is a JSON object whose `rows` array holds the table and whose
//! other fields form the summary. TSV output is derived from the same value.

use std::io::{self, Write};

use num_bigint::BigInt;
use serde_json::{Map, Value};

/// JSON number when it fits in 64 bits, decimal string otherwise.
pub fn big(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => Value::from(x),
        Err(_) => Value::from(v.to_string()),
    }
}

pub fn bigs(vs: &[BigInt]) -> Value {
    Value::Array(vs.iter().map(big).collect())
}

#[derive(Debug, Default)]
pub struct Report {
    pub rows: Vec<Map<String, Value>>,
    pub summary: Map<String, Value>,
}

impl Report {
    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("rows".into(), Value::Array(self.rows.iter().cloned().map(Value::Object).collect()));
        for (k, v) in &self.summary {
            doc.insert(k.clone(), v.clone());
        }
        Value::Object(doc)
    }

    pub fn write(&self, out: &mut dyn Write, json: bool) -> io::Result<()> {
        if json {
            serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
            return writeln!(out);
        }
        for row in &self.rows {
            let cells: Vec<String> = row.values().map(scalar).collect();
            writeln!(out, "{}", cells.join("\t"))?;
        }
        for (k, v) in &self.summary {
            write_summary(out, k, v)?;
        }
        Ok(())
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(","),
        other => other.to_string(),
    }
}

fn write_summary(out: &mut dyn Write, key: &str, v: &Value) -> io::Result<()> {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                write_summary(out, &format!("{key}.{k}"), inner)?;
            }
            Ok(())
        }
        Value::Array(items) if items.iter().any(Value::is_array) => {
            for (i, inner) in items.iter().enumerate() {
                write_summary(out, &format!("{key}[{i}]"), inner)?;
            }
            Ok(())
        }
        other => writeln!(out, "# {key}\t{}", scalar(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn tsv_layout() {
        let mut r = Report::default();
        let mut row = Map::new();
        row.insert("a".into(), json!(3));
        row.insert("b".into(), json!(1));
        row.insert("multiplicity".into(), big(&BigInt::from(2)));
        r.rows.push(row);
        r.set("total_dimension", 2);
        r.set("trace", json!({"n_j": [1, 1], "e": [[-21, -22], [5, 5]]}));
        let mut buf = Vec::new();
        r.write(&mut buf, false).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "3\t1\t2\n# total_dimension\t2\n# trace.n_j\t1,1\n# trace.e[0]\t-21,-22\n# trace.e[1]\t5,5\n"
        );
    }

    #[test]
    fn large_integers_become_strings() {
        let v = BigInt::from(i64::MAX) * 4;
        assert_eq!(big(&v), json!("36893488147419103228"));
        assert_eq!(big(&BigInt::from(-5)), json!(-5));
    }
}
