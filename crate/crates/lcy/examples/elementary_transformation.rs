//! An elementary transformation moves one interior blow-up across the
//! surface; on the mirror it is realised by an explicit Hurwitz move script.

use lcy::fibration::{build_standard, elem_trans_script};
use lcy::model::{elementary_transformation, ToricModel};

fn main() {
    // F_2 with one interior blow-up on the fibre component
    let model = ToricModel::new(&[[1, 0], [0, 1], [-1, 2], [0, -1]], vec![0, 1, 0, 0]).unwrap();
    println!("before: n = {:?}, m = {:?}", model.n(), model.m());

    let (transformed, trace) = elementary_transformation(&model, 1).unwrap();
    println!(
        "after moving the blow-up from ray {:?} to ray {:?}: n = {:?}, m = {:?}",
        trace.ray,
        trace.opposite,
        transformed.n(),
        transformed.m()
    );

    let (f, script) = elem_trans_script(&build_standard(&model), &model, 1).unwrap();
    println!("mirror script ({} steps):", script.len());
    for step in &script {
        println!("  {step}");
    }
    println!("final cycles:");
    for c in &f.cycles {
        println!("  ({}; {:?})", c.r, c.d);
    }
}
