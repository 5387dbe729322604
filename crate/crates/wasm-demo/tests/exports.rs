use goldbach_wasm::{decompose, dense_approx, polygon_summands};
use serde_json::Value;

fn parsed(s: String) -> Value {
    serde_json::from_str(&s).expect("exports always return JSON")
}

#[test]
fn document_from_the_page_round_trips() {
    let v = parsed(decompose("2*x^2 + 3*y^2 - 7*z^2 + 5", "x,y,z", "QQ", "shortcut"));
    assert_eq!(v["ok"], true);
    let doc = &v["document"];
    let d = goldbach_core::engine::decomposition_from_json(doc).unwrap();
    assert!(goldbach_core::engine::certify(&d).ok);
    assert_eq!(doc["mode"], "shortcut");
}

#[test]
fn errors_are_reported_not_thrown() {
    for out in [
        decompose("x", "x", "QQ", "pyramid"),
        decompose("x*y", "", "F4", "pyramid"),
        decompose("x*y", "", "QQ", "sideways"),
        polygon_summands("0,0;1"),
        dense_approx("2", "1", "1"),
        dense_approx("", "0", "1"),
    ] {
        let v = parsed(out);
        assert_eq!(v["ok"], false, "{v}");
        assert!(v["error"].as_str().is_some_and(|e| !e.is_empty()));
    }
}

#[test]
fn negative_intervals() {
    let v = parsed(dense_approx("2,5", "-7/2", "-3"));
    assert_eq!(v["ok"], true);
    assert!(v["p"].as_str().unwrap().starts_with('-'));
}
