//! Mutations of an exceptional collection on the surface correspond to
//! Hurwitz moves of the mirror vanishing cycles under restriction.

use lcy::bridge::{build_fibration, restrict_class, verify_mutation_compat};
use lcy::model::ToricModel;
use lcy::picard::{standard_collection, Direction};

fn main() {
    let model = ToricModel::new(&[[1, 0], [0, 1], [-1, 1], [0, -1]], vec![1, 0, 0, 0]).unwrap();
    let coll = standard_collection(&model);

    println!("standard collection restricted to the boundary:");
    for x in &coll.classes {
        let c = restrict_class(x, &model).unwrap();
        println!("  ({}; {:?})", c.r, c.d);
    }
    let f = build_fibration(&model, &coll).unwrap();
    println!("is the cycle list of a fibration with k = {}", f.k);

    let script = [
        (0, Direction::Right),
        (1, Direction::Right),
        (1, Direction::Left),
        (0, Direction::Left),
    ];
    let cert = verify_mutation_compat(&model, &coll, &script).unwrap();
    assert!(cert.status.is_pass());
    println!("mutation script of length {} commutes with restriction.", script.len());
}
