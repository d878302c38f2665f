//! Output shapes, printed by `--help-schema`. Loose JSON Schema: enough to
//! tell a consumer which keys to expect and their types.

use serde_json::{json, Value};

fn obj(props: Value, required: &[&str]) -> Value {
    json!({"type": "object", "properties": props, "required": required})
}

fn arr(items: Value) -> Value {
    json!({"type": "array", "items": items})
}

pub fn schemas() -> Value {
    let s = json!({"type": "string"});
    let n = json!({"type": "integer", "minimum": 0});
    let b = json!({"type": "boolean"});
    let budget = obj(json!({"L": n, "E": n}), &["L", "E"]);
    json!({
        "exit_codes": {"0": "all checks pass", "1": "an asserted inequality failed", "2": "usage, parse or budget error"},
        "reduce": obj(json!({"input": s, "normal_form": s, "length": n}), &["normal_form"]),
        "length": obj(json!({
            "element": s, "word_length": n, "syllable_length": n, "star_length": n,
            "factorization": obj(json!({"target": s, "factors": arr(arr(s.clone()))}), &["factors"]),
        }), &["word_length", "syllable_length", "star_length"]),
        "classify": obj(json!({
            "element": s,
            "kind": {"enum": ["identity", "elliptic", "loxodromic"]},
            "core": s, "conjugator": s, "pure": b,
            "witness": {"oneOf": [
                {"type": "null"},
                obj(json!({"join": arr(arr(s.clone()))}), &["join"]),
                obj(json!({"vertex_power": s}), &["vertex_power"]),
                obj(json!({"opposite_loop": arr(s.clone())}), &["opposite_loop"]),
            ]},
        }), &["kind", "witness"]),
        "growth": obj(json!({"element": s, "kind": s, "series": arr(arr(n.clone()))}), &["series"]),
        "freeness": obj(json!({"generators": arr(s.clone()), "N": n, "max_len": n, "relations": arr(arr(arr(n.clone()))), "pass": b}), &["relations", "pass"]),
        "snapshot": obj(json!({
            "graph": s, "budget": budget,
            "vertices": arr(obj(json!({"id": n, "base": s, "conjugator": s}), &["id", "base", "conjugator"])),
            "edges": arr(arr(n.clone())),
        }), &["budget", "vertices", "edges"]),
        "snapshot --girth": obj(json!({"budget": budget, "vertices": n, "girth": {"type": ["integer", "null"]}}), &["girth"]),
        "distance": obj(json!({
            "from": s, "to": s, "covering_distance": n, "core": s,
            "distance": n,
            "snapshot": obj(json!({"budget": budget, "distance": {"type": ["integer", "null"]}, "exact": {"type": ["boolean", "null"]}}), &[]),
        }), &["covering_distance"]),
        "project": obj(json!({"center": s, "target": s, "distance": n, "distance_exact": b, "points": arr(s.clone()), "link_diameter": n}), &["points", "link_diameter"]),
        "bgit-scan": obj(json!({
            "budget": budget, "snapshot_vertices": n, "is_tree": b,
            "bounds": arr(json!({"type": "object"})), "samples": arr(json!({"type": "object"})),
            "segments": arr(json!({"type": "object"})),
            "max_link_diameter": n, "max_segment_diameter": n, "violations": n, "note": s,
        }), &["violations"]),
        "distance-formula --tree": obj(json!({"syl": n, "sum": n, "sum_lo": n, "sum_hi": n, "K": n, "C": n, "pass": b}), &["pass"]),
        "distance-formula": obj(json!({
            "syl": n, "sum": n, "K": n, "C": n, "pass": b,
            "quasi_geodesic_pass": b, "sharp_pass": b, "marker_pass": b,
            "certificate": obj(json!({"path": arr(s.clone())}), &["path"]),
        }), &["pass", "certificate"]),
        "acyl-sample": obj(json!({
            "s": n, "t": n, "bound": n, "max_count": n, "witnesses": arr(s.clone()),
            "trials": arr(obj(json!({"x": s, "y": s, "truncated_count": n, "absorbed_count": n, "pass": b}), &["pass"])),
            "violations": n,
        }), &["bound", "max_count", "witnesses"]),
        "verify-all": obj(json!({
            "seed": n, "samples": n, "pass": b,
            "checks": arr(obj(json!({"tag": s, "pass": b, "cases": n, "detail": s}), &["tag", "pass"])),
        }), &["checks", "pass"]),
    })
}
