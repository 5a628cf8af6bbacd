//! The dual cycles of a purely toric standard fibration satisfy the torus
//! class relation: the tail sums to the head up to sign.

use lcy::bridge::torus_class_check;
use lcy::fibration::{build_standard, dual_collection};
use lcy::model::ToricModel;

fn main() {
    let p2 = ToricModel::new(&[[1, 0], [0, 1], [-1, -1]], vec![0, 0, 0]).unwrap();
    let duals = dual_collection(&build_standard(&p2));
    println!("dual cycles of the P2 fibration (reversed order):");
    for (c, label) in duals.cycles.iter().zip(duals.labels.as_ref().unwrap()) {
        println!("  {label:>4}  ({}; {:?})", c.r, c.d);
    }

    let cert = torus_class_check(&p2).unwrap();
    assert!(cert.status.is_pass());
    println!(
        "tail sum ({}; {:?}) = -head: torus shadow holds.",
        cert.tail_sum.r, cert.tail_sum.d
    );
}
