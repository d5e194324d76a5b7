use clap::ValueEnum;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Rounds to `digits` significant digits.
fn round_sig(x: f64, digits: u32) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits as usize - 1, x)
        .parse()
        .unwrap_or(x)
}

/// Applies the output precision to every floating-point number, so that all
/// formats print the same values.
fn round_floats(v: &Value, digits: u32) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| Number::from_f64(round_sig(x, digits)))
            .map_or(Value::Null, Value::Number),
        Value::Array(items) => {
            Value::Array(items.iter().map(|x| round_floats(x, digits)).collect())
        }
        Value::Object(map) => Value::Object(
            map.iter()
                .map(|(k, x)| (k.clone(), round_floats(x, digits)))
                .collect(),
        ),
        other => other.clone(),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn text_scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".to_string(),
        Value::Array(items) => format!(
            "[{}]",
            items.iter().map(scalar).collect::<Vec<_>>().join(", ")
        ),
        other => scalar(other),
    }
}

fn rows(v: &Value) -> Vec<&Map<String, Value>> {
    match v {
        Value::Object(map) => vec![map],
        Value::Array(items) => items.iter().filter_map(Value::as_object).collect(),
        _ => Vec::new(),
    }
}

fn header(rows: &[&Map<String, Value>]) -> Vec<String> {
    rows.first()
        .map(|r| r.keys().cloned().collect())
        .unwrap_or_default()
}

fn render_csv(v: &Value) -> String {
    let rows = rows(v);
    let header = header(&rows);
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut write = |record: Vec<String>| w.write_record(record).expect("in-memory write");
    write(header.clone());
    for row in &rows {
        write(
            header
                .iter()
                .map(|k| row.get(k).map(scalar).unwrap_or_default())
                .collect(),
        );
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
}

fn render_text(v: &Value) -> String {
    let rows = rows(v);
    let header = header(&rows);
    let mut out = String::new();
    if let Value::Object(map) = v {
        let width = header.iter().map(String::len).max().unwrap_or(0);
        for (k, x) in map {
            out.push_str(&format!("{k:<width$}  {}\n", text_scalar(x)));
        }
        return out;
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            header
                .iter()
                .map(|k| r.get(k).map(text_scalar).unwrap_or_default())
                .collect()
        })
        .collect();
    let widths: Vec<usize> = header
        .iter()
        .enumerate()
        .map(|(i, h)| {
            cells
                .iter()
                .map(|c| c[i].len())
                .chain([h.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |items: &[String]| {
        let padded: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    out.push_str(&line(&header));
    for c in &cells {
        out.push_str(&line(c));
    }
    out
}

pub fn render(v: &Value, format: Format, digits: u32) -> String {
    let v = round_floats(v, digits);
    match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&v).expect("values serialize")
        ),
        Format::Csv => render_csv(&v),
        Format::Text => render_text(&v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn rounding_keeps_significant_digits() {
        assert_eq!(round_sig(3f64.sqrt(), 10), 1.732050808);
        assert_eq!(round_sig(0.000123456789012, 3), 0.000123);
        assert_eq!(round_sig(0.0, 5), 0.0);
    }

    #[test]
    fn integers_are_untouched() {
        let v = round_floats(&json!({"n": 12345678901234u64, "x": 1.23456}), 2);
        assert_eq!(v, json!({"n": 12345678901234u64, "x": 1.2}));
    }

    #[test]
    fn csv_flattens_arrays_and_nulls() {
        let v = json!([{"kind": "periodic", "quotients": [1], "period": [2], "gcd": null}]);
        assert_eq!(
            render(&v, Format::Csv, 10),
            "kind,quotients,period,gcd\nperiodic,1,2,\n"
        );
    }

    #[test]
    fn text_lists_single_objects_as_fields() {
        let v = json!({"kind": "periodic", "period": [2, 2]});
        assert_eq!(
            render(&v, Format::Text, 10),
            "kind    periodic\nperiod  [2, 2]\n"
        );
    }

    #[test]
    fn text_tables_align_columns() {
        let v = json!([{"name": "cube", "n": 3}, {"name": "icosahedron", "n": 5}]);
        assert_eq!(
            render(&v, Format::Text, 10),
            "name         n\ncube         3\nicosahedron  5\n"
        );
    }
}
