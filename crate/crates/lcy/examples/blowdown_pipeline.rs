//! Classify a model under non-toric blow-downs and run the destabilisation
//! pipeline that realises the blow-downs on the mirror fibration.

use lcy::fibration::nontoric_destab_pipeline;
use lcy::model::{classify_nontoric_blowdown, ToricModel};

fn main() {
    // F_3 with interior blow-ups on the two sections
    let model = ToricModel::new(&[[1, 0], [0, 1], [-1, 3], [0, -1]], vec![1, 0, 1, 0]).unwrap();
    let report = classify_nontoric_blowdown(&model).unwrap();
    println!("case {:?}, blow-down sequence {:?}", report.case, report.blowdown_seq);
    for option in &report.minimal_pairs {
        println!(
            "  minimal pair: {:?} with boundary degrees {:?}",
            option.surface, option.d_min
        );
    }

    let (f, trace) = nontoric_destab_pipeline(&model, &report).unwrap();
    println!("pipeline: {} Hurwitz/destabilisation steps", trace.script.len());
    for (label, cycles) in &trace.snapshots {
        println!("  snapshot `{label}`:");
        for c in cycles {
            println!("    ({}; {:?})", c.r, c.d);
        }
    }
    println!("final fibration on the {}-punctured fibre:", f.k);
    for c in &f.cycles {
        println!("  ({}; {:?})", c.r, c.d);
    }
}
