//! Plain-text views of the JSON documents. JSON is the only source; nothing
//! here reads the typed certificates.

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Theorem,
    Step,
    Sharpness,
    Scan,
    Other,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Theorem => "theorem",
            Kind::Step => "step",
            Kind::Sharpness => "sharpness",
            Kind::Scan => "scan",
            Kind::Other => "other",
        }
    }
}

/// Classify a document by the fields it carries.
pub fn kind(v: &Value) -> Kind {
    let has = |k: &str| v.get(k).is_some();
    if has("theta_max") && has("steps") {
        Kind::Theorem
    } else if has("parts") && has("own_status") {
        Kind::Step
    } else if has("h31") && has("caratheodory") {
        Kind::Sharpness
    } else if has("argmax") && has("max_mod_sq") {
        Kind::Scan
    } else {
        Kind::Other
    }
}

fn s(v: &Value) -> String {
    match v {
        Value::String(t) => t.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn field(v: &Value, k: &str) -> String {
    v.get(k).map(s).unwrap_or_default()
}

fn list(v: &Value, k: &str) -> Vec<Value> {
    v.get(k).and_then(Value::as_array).cloned().unwrap_or_default()
}

/// `c=0, x=1/4` from a serialized point (a list of `[name, value]` pairs).
fn point(p: &Value) -> String {
    p.as_array()
        .map(|pairs| {
            pairs
                .iter()
                .map(|nv| format!("{}={}", nv.get(0).map(s).unwrap_or_default(), nv.get(1).map(s).unwrap_or_default()))
                .collect::<Vec<_>>()
                .join(", ")
        })
        .unwrap_or_else(|| s(p))
}

fn step(v: &Value, out: &mut String) {
    out.push_str(&format!("step {}: {}\n", field(v, "id"), field(v, "status")));
    out.push_str(&format!("  method: {}\n", field(v, "method")));
    out.push_str(&format!("  claim: {}\n", field(v, "claim")));
    if v.get("region").is_some() {
        out.push_str(&format!("  region: {}\n", field(v, "region")));
    }
    let deps: Vec<String> = list(v, "depends_on").iter().map(s).collect();
    if !deps.is_empty() {
        out.push_str(&format!("  depends on: {}\n", deps.join(", ")));
    }
    out.push_str(&format!("  own evidence: {}\n", field(v, "own_status")));
    for p in list(v, "parts") {
        out.push_str(&format!("    [{}] {}: {}\n", field(&p, "role"), field(&p, "name"), field(&p, "status")));
    }
    for n in list(v, "notes") {
        out.push_str(&format!("  note: {}\n", s(&n)));
    }
    for w in list(v, "witnesses") {
        out.push_str(&format!("  witness: {}\n", point(&w)));
    }
}

fn theorem(v: &Value, out: &mut String) {
    out.push_str(&format!("claim: {}\n", field(v, "claim")));
    out.push_str(&format!("status: {}\n", field(v, "status")));
    out.push_str(&format!("bound: {} = theta_max {} / 5120\n", field(v, "bound"), field(v, "theta_max")));
    if let Some(cfg) = v.get("config") {
        out.push_str(&format!("depth budget: {}, seed: {}\n", field(cfg, "depth_budget"), field(cfg, "seed")));
        if let Some(p) = cfg.get("perturbation") {
            out.push_str(&format!("perturbation: {} term {} by {}\n", field(p, "step"), field(p, "term"), field(p, "delta")));
        }
        if cfg.get("invert").is_some() {
            out.push_str(&format!("inverted: {}\n", field(cfg, "invert")));
        }
    }
    for a in list(v, "attainment") {
        out.push_str(&format!(
            "attained: theta({}, {}, {}) = {}\n",
            field(&a, "c"),
            field(&a, "x"),
            field(&a, "y"),
            field(&a, "value")
        ));
    }
    let steps = list(v, "steps");
    let width = steps.iter().map(|st| field(st, "id").len()).max().unwrap_or(0);
    out.push_str(&format!("steps ({}):\n", steps.len()));
    for st in &steps {
        let mut line = format!("  {:width$}  {:16}  {}", field(st, "id"), field(st, "method"), field(st, "status"));
        if field(st, "own_status") != field(st, "status") {
            line.push_str(&format!(" (own {})", field(st, "own_status")));
        }
        out.push_str(line.trim_end());
        out.push('\n');
        for w in list(st, "witnesses") {
            out.push_str(&format!("  {:width$}  witness {}\n", "", point(&w)));
        }
    }
    if v.get("failed_at").is_some() {
        out.push_str(&format!("failed at: {}\n", field(v, "failed_at")));
    }
}

fn sharpness(v: &Value, out: &mut String) {
    let join = |k: &str| list(v, k).iter().map(s).collect::<Vec<_>>().join(", ");
    out.push_str(&format!("f0 = z / sqrt(1 - z^2): a2..a5 = {}\n", join("a")));
    out.push_str(&format!("inverse: t2..t5 = {}\n", join("t")));
    out.push_str(&format!("H = {}\n", field(v, "h31")));
    out.push_str(&format!("|H| = bound {}: {}\n", field(v, "bound"), field(v, "status")));
    out.push_str(&format!("Caratheodory data {} gives f0: {}\n", join("caratheodory"), field(v, "via_caratheodory")));
    out.push_str(&format!("1 + z f0''/f0' at 0 = {}\n", field(v, "center_value")));
}

fn scan(v: &Value, out: &mut String) {
    let count = field(v, "count");
    out.push_str(&format!("samples: {count} (seed {})\n", field(v, "seed")));
    out.push_str(&format!("max |H|^2: {} (bound {})\n", field(v, "max_mod_sq"), field(v, "bound_sq")));
    if let Some(a) = v.get("argmax") {
        let seq = a.get("c").cloned().unwrap_or_default();
        let c: Vec<String> = list(&seq, "c")
            .iter()
            .map(|z| match z.as_array() {
                Some(p) if p.len() == 2 && s(&p[1]) == "0" => s(&p[0]),
                Some(p) if p.len() == 2 => format!("{}+{}i", s(&p[0]), s(&p[1])),
                _ => s(z),
            })
            .collect();
        out.push_str(&format!("argmax: sample {} ({}), c = {}\n", field(a, "index"), field(a, "kind"), c.join(", ")));
    }
    out.push_str(&format!("within bound: {}/{count}\n", field(v, "within_bound")));
    out.push_str(&format!("pipeline identity: {}/{count}\n", field(v, "pipeline_ok")));
    out.push_str(&format!("majorant checks: {}/{}\n", field(v, "dominance_holds"), field(v, "dominance_checked")));
    out.push_str(&format!("status: {}\n", field(v, "status")));
}

fn generic(v: &Value, out: &mut String) {
    match v.as_object() {
        Some(map) => {
            for (k, val) in map {
                let shown = match val {
                    Value::Array(items) if items.iter().all(Value::is_string) => {
                        items.iter().map(s).collect::<Vec<_>>().join(", ")
                    }
                    other => s(other),
                };
                out.push_str(&format!("{k}: {shown}\n"));
            }
        }
        None => {
            out.push_str(&s(v));
            out.push('\n');
        }
    }
}

pub fn text(v: &Value) -> String {
    let mut out = String::new();
    match kind(v) {
        Kind::Theorem => theorem(v, &mut out),
        Kind::Step => step(v, &mut out),
        Kind::Sharpness => sharpness(v, &mut out),
        Kind::Scan => scan(v, &mut out),
        // Series and map results print the bare value so that they can be piped.
        Kind::Other if matches!(v.get("operation").and_then(Value::as_str), Some("revert" | "compose" | "hankel" | "c2f" | "lz")) => {
            out.push_str(&field(v, "result"));
            out.push('\n');
        }
        Kind::Other => generic(v, &mut out),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn classifies_by_fields() {
        assert_eq!(kind(&json!({"theta_max": "320", "steps": []})), Kind::Theorem);
        assert_eq!(kind(&json!({"parts": [], "own_status": "proved"})), Kind::Step);
        assert_eq!(kind(&json!({"result": "1"})), Kind::Other);
    }

    #[test]
    fn series_results_print_bare() {
        assert_eq!(text(&json!({"operation": "revert", "result": "1,0,-1/2,0,3/8"})), "1,0,-1/2,0,3/8\n");
        assert_eq!(point(&json!([["c", "0"], ["x", "1/4"]])), "c=0, x=1/4");
    }
}
