//! The total monodromy of a standard fibration is the commuting product of
//! meridian twists with powers -(n_i - m_i) - 2, and it is invariant under
//! Hurwitz moves.

use lcy::fibration::{
    build_standard, hurwitz_move, reference_monodromy, total_monodromy, HurwitzDirection,
};
use lcy::model::ToricModel;

fn main() {
    let model = ToricModel::new(&[[1, 0], [0, 1], [-1, 3], [0, -1]], vec![1, 0, 2, 0]).unwrap();
    let f = build_standard(&model);

    let computed = total_monodromy(&f);
    let reference = reference_monodromy(&model);
    println!("model: F3 with m = (1,0,2,0), boundary self-intersections {:?}", model.boundary_selfints());
    println!("total monodromy on (r, d_1, ..., d_k):");
    for row in &computed {
        println!("  {row:?}");
    }
    assert_eq!(computed, reference);
    println!("matches the meridian twist product. ");

    let mut g = f.clone();
    for (pos, dir) in [(0, HurwitzDirection::Left), (3, HurwitzDirection::Right), (1, HurwitzDirection::Left)] {
        g = hurwitz_move(&g, pos, dir).unwrap();
    }
    assert_eq!(total_monodromy(&g), computed);
    println!("and is unchanged by Hurwitz moves.");
}
