//! Compile toric models into their mirror Lefschetz fibrations and print the
//! vanishing cycles.

use lcy::fibration::build_standard;
use lcy::model::ToricModel;

fn show(name: &str, model: &ToricModel) {
    let f = build_standard(model);
    println!("{name}: k = {}, {} vanishing cycles", f.k, f.cycles.len());
    let labels = f.labels.unwrap();
    for (c, label) in f.cycles.iter().zip(labels) {
        println!("  {label:>6}  ({}; {:?})", c.r, c.d);
    }
    println!();
}

fn main() {
    let p2 = ToricModel::new(&[[1, 0], [0, 1], [-1, -1]], vec![0, 0, 0]).unwrap();
    show("P2", &p2);

    for a in 0..=2 {
        let fa = ToricModel::new(&[[1, 0], [0, 1], [-1, a], [0, -1]], vec![0, 0, 0, 0]).unwrap();
        show(&format!("F{a}"), &fa);
    }

    // interior blow-ups contribute meridians around the punctures
    let p2_blown = ToricModel::new(&[[1, 0], [0, 1], [-1, -1]], vec![2, 1, 0]).unwrap();
    show("P2 with m = (2,1,0)", &p2_blown);
}
