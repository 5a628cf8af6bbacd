//! The lattice-point cohomology oracle, and the exceptionality of the
//! standard collection it certifies.

use lcy::fan::p2;
use lcy::model::ToricModel;
use lcy::picard::{
    collection_is_exceptional, euler_pairing_y, standard_collection, toric_cohomology,
};

fn main() {
    let fan = p2();
    for deg in 0..=3 {
        let (h0, h1, h2) = toric_cohomology(&fan, &[deg, 0, 0]).unwrap();
        println!("O_P2({deg}H): h = ({h0}, {h1}, {h2})");
    }
    let (h0, h1, h2) = toric_cohomology(&fan, &[-4, 0, 0]).unwrap();
    println!("O_P2(-4H): h = ({h0}, {h1}, {h2})   (duality)");

    let model = ToricModel::toric(fan);
    let coll = standard_collection(&model);
    println!("\nstandard collection on P2, Euler pairing matrix:");
    for x in &coll.classes {
        let row: Vec<i64> = coll
            .classes
            .iter()
            .map(|y| euler_pairing_y(x, y).unwrap())
            .collect();
        println!("  {row:?}");
    }
    assert!(collection_is_exceptional(&model, &coll).unwrap());
    println!("all Ext-degrees of E_j - E_i (i > j) vanish: full exceptional collection.");
}
