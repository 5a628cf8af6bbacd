//! Emit the almost-toric base diagram and the Weinstein handlebody datum of
//! a model, then render the base as SVG.

use lcy::doc::canonical_json;
use lcy::emit::{emit_almost_toric, emit_handlebody, emit_svg};
use lcy::model::ToricModel;

fn main() {
    let model = ToricModel::new(&[[1, 0], [0, 1], [-1, -1]], vec![1, 1, 1]).unwrap();

    let base = emit_almost_toric(&model);
    println!("almost-toric base ({} nodes):", base.nodes.len());
    println!("{}", canonical_json(&base));

    let handles = emit_handlebody(&model);
    println!("\nhandlebody datum ({} attaching curves):", handles.curves.len());
    println!("{}", canonical_json(&handles));

    println!("\nSVG:");
    print!("{}", emit_svg(&base));
}
