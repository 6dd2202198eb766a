//! Text view of a JSON document: one `key: value` line per field, nested
//! objects indented, arrays without objects kept on one line.

use serde_json::Value;

pub fn human(value: &Value) -> String {
    let mut out = String::new();
    write(&mut out, value, 0);
    out
}

fn write(out: &mut String, value: &Value, depth: usize) {
    match value {
        Value::Object(map) => {
            for (key, x) in map {
                if is_flat(x) {
                    line(out, depth, &format!("{key}: {}", inline(x)));
                } else {
                    line(out, depth, &format!("{key}:"));
                    write(out, x, depth + 1);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_flat(x) {
                    line(out, depth, &format!("- {}", inline(x)));
                } else {
                    line(out, depth, "-");
                    write(out, x, depth + 1);
                }
            }
        }
        _ => line(out, depth, &inline(value)),
    }
}

fn line(out: &mut String, depth: usize, text: &str) {
    out.push_str(&"  ".repeat(depth));
    out.push_str(text);
    out.push('\n');
}

fn is_flat(value: &Value) -> bool {
    match value {
        Value::Object(map) => map.is_empty(),
        Value::Array(items) => items.iter().all(is_flat),
        _ => true,
    }
}

fn inline(value: &Value) -> String {
    match value {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => "{}".into(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested_document() {
        let v = json!({"value": "1/2", "partition": {"parts": [[1, 2], [3]], "value_vector": ["1/2", "1"]}, "w": null});
        assert_eq!(
            human(&v),
            "value: 1/2\npartition:\n  parts: [[1, 2], [3]]\n  value_vector: [1/2, 1]\nw: -\n"
        );
    }

    #[test]
    fn list_of_objects() {
        let v = json!([{"id": "a"}, {"id": "b"}]);
        assert_eq!(human(&v), "-\n  id: a\n-\n  id: b\n");
    }
}
