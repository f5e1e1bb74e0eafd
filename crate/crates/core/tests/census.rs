use picard_core::delsarte::*;
use std::time::Instant;

#[test]
fn quintic_census_attained_set() {
    let t = Instant::now();
    let c = census_quintics().unwrap();
    println!("candidates {} records {} in {:?}", c.candidates, c.records.len(), t.elapsed());
    println!("attained {:?}", c.attained);
    assert_eq!(c.attained, expected_census_set());
}
