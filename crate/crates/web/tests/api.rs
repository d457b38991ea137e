use pwgl_web::{adams_json, circle_example_json, circle_map, classify_matrix, torus_map};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).expect("JSON response")
}

#[test]
fn adams_drawing() {
    let v = parse(&torus_map(&adams_json()));
    assert_eq!(v["valid"], Value::Bool(true));
    assert_eq!(v["homology"], "[[1,0],[1,1]]");
    assert_eq!(v["lipschitz"], "3");
    let svg = v["domain_svg"].as_str().unwrap();
    assert_eq!(svg.matches("<polygon").count(), 2);
    assert!(v["image_svg"].as_str().unwrap().matches("<polygon").count() >= 2);
    assert_eq!(v["legend"].as_array().unwrap().len(), 2);
}

#[test]
fn errors_are_reported() {
    assert!(parse(&torus_map("{")).get("error").is_some());
    assert!(parse(&classify_matrix("[[2,0],[0,1]]")).get("error").is_some());
    assert!(parse(&circle_map("[]")).get("error").is_some());
}

#[test]
fn cat_map() {
    let v = parse(&classify_matrix("[[2,1],[1,1]]"));
    assert_eq!(v["classification"]["hyperbolic"], Value::Bool(true));
    assert_eq!(v["fixed_set"]["component_count"], "1");
}

#[test]
fn circle_example() {
    let v = parse(&circle_map(&circle_example_json()));
    assert_eq!(v["valid"], Value::Bool(true));
    let orders: Vec<&Value> = v["smoothness"].as_array().unwrap().iter().map(|s| &s["order"]).collect();
    assert_eq!(orders.len(), 4);
    assert!(orders.iter().all(|o| **o == Value::from(1)));
    assert!(v["svg"].as_str().unwrap().contains("<polyline"));
}
