use gradedhom_wasm::{sym_power, tor_table, young};
use serde_json::{json, Value};

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

const NODE: &str = r#"{"generators": [{"name": "x"}, {"name": "y"}], "relations": ["x*y"]}"#;

#[test]
fn young_vanishes_on_the_critical_shape() {
    let v = parse(&young("1|1", "2x2"));
    assert_eq!(v["zero"], true);
    assert_eq!(v["hook_product"], 12);
    let v = parse(&young("1|1,Y:even", "2x2"));
    assert_eq!(v["zero"], false);
    // S∘S = (hook product)·S for a Young symmetrizer
    assert_eq!(v["scalar_c"], "12/1");
}

#[test]
fn symmetric_powers_of_types() {
    let v = parse(&sym_power("1,1,1", 3));
    assert_eq!(v["sym_type"], json!([{"degree": 3, "parity": "odd"}]));
    assert_eq!(parse(&sym_power("0,0", 2))["rank"], 3);
    assert_eq!(parse(&sym_power("1", 2))["rank"], 0);
}

#[test]
fn tor_table_of_the_node() {
    let v = parse(&tor_table(NODE, "(y)", "(y)", 3, 6));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["dims"], json!([1, 1, 1, 1, 1, 1, 1]));
    assert_eq!(rows[1]["start"], 1);
    assert_eq!(rows[1]["dims"][0], 1);
    assert!(rows[2]["dims"].as_array().unwrap().iter().all(|d| d == 0));
}

#[test]
fn errors_come_back_as_json() {
    assert!(parse(&young("1|", "2x2"))["error"].is_string());
    assert!(parse(&tor_table("{", "(y)", "(y)", 1, 4))["error"].as_str().unwrap().contains("line 1"));
    assert!(parse(&tor_table(NODE, "(y)", "(y)", 99, 4))["error"].is_string());
}
