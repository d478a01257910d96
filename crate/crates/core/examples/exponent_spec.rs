// Load an exponent from JSON, read off its strata constants and evaluate
// the conjugate pointwise.

use varlp::exponent::spec::{parse_exponent, to_json};
use varlp::exponent::ExpValue;

const SPEC: &str = r#"{
  "dimension": 1,
  "domain": {"lo": [0], "hi": [6]},
  "pieces": [
    {"kind": "constant", "box": {"lo": [0], "hi": [2]}, "value": 1},
    {"kind": "constant", "box": {"lo": [2], "hi": [4]}, "value": 3},
    {"kind": "constant", "box": {"lo": [4], "hi": [6]}, "value": "inf"}
  ]
}"#;

pub fn run_example() {
    let p = parse_exponent(SPEC).unwrap();
    let st = p.strata().unwrap();
    println!("p- = {}, p+ = {}", st.p_minus(), st.p_plus());
    // all three strata present: K = (1 - 0 + 1) + 1 + 1, k = 1/3
    println!("K_p = {}, k_p = {}", st.holder_constant(), st.duality_constant());
    assert_eq!(st.holder_constant(), 4.0);

    let conj = p.conjugate();
    // q = np/(n - αp) needs p+ < n/α, which p = ∞ breaks
    assert!(p.sobolev_dual(0.5).is_err());
    for x in [1.0, 3.0, 5.0] {
        println!(
            "x = {x}: p = {}, p' = {}",
            p.eval(&[x]).unwrap(),
            conj.eval(&[x]).unwrap()
        );
    }
    assert_eq!(conj.eval(&[1.0]).unwrap(), ExpValue::Infinite);

    // round trip through the JSON form
    let again = parse_exponent(&to_json(&p)).unwrap();
    assert_eq!(again.eval(&[3.0]).unwrap(), ExpValue::Finite(3.0));
}

#[allow(dead_code)]
fn main() {
    run_example();
}
