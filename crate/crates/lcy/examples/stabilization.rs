//! Stabilisation mirrors corner blow-up, destabilisation inverts it, and
//! capping a node kills a puncture.

use lcy::fibration::{
    build_standard, cap_puncture, destabilize, stabilize_corner, stabilize_naive, total_monodromy,
};
use lcy::model::{corner_blowup_model, ToricModel};

fn main() {
    let p2 = ToricModel::new(&[[1, 0], [0, 1], [-1, -1]], vec![0, 0, 0]).unwrap();
    let f = build_standard(&p2);

    let stabilized = stabilize_corner(&f, &p2, 2).unwrap();
    println!("stabilised at corner 2 (k = {}):", stabilized.k);
    for c in &stabilized.cycles {
        println!("  ({}; {:?})", c.r, c.d);
    }
    assert_eq!(stabilized, build_standard(&corner_blowup_model(&p2, 2)));

    // the naive stabilisation is Hurwitz-equivalent: same monodromy,
    // and destabilising it recovers the original cycles
    let naive = stabilize_naive(&f, 3).unwrap();
    assert_eq!(
        total_monodromy(&naive),
        total_monodromy(&build_standard(&corner_blowup_model(&p2, 2)))
    );
    assert_eq!(destabilize(&naive, 0, 3).unwrap().cycles, f.cycles);
    println!("naive stabilisation is monodromy-coherent and destabilises back.");

    let capped = cap_puncture(&f, 1).unwrap();
    println!("capping the (D2, D3) node:");
    for c in &capped.cycles {
        println!("  ({}; {:?})", c.r, c.d);
    }
}
