//! The K-level mirror functor: restriction of classes on the surface to the
//! boundary cycle, fibrations built from collections, and the cross-module
//! verification certificates.

use crate::fibration::{
    dual_collection, euler_pairing_d, hurwitz_move, total_monodromy, reference_monodromy,
    CurveClass, Fibration, FibrationError, HurwitzDirection,
};
use crate::model::ToricModel;
use crate::picard::{
    dtilde, euler_pairing_y, intersection_pairing, mutate_collection, Collection, Direction,
    KClassY, PicardError,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error("class does not live on the given model")]
    ModelMismatch,
    #[error("collection entry {0} is not a line bundle class")]
    NonLineBundleEntry(usize),
    #[error("pair ({0}, {1}) is not exceptional at chi level (chi = {2})")]
    NotExceptionalAtChiLevel(usize, usize, i64),
    #[error("check requires a purely toric model (m = 0)")]
    NotPurelyToric,
    #[error(transparent)]
    Picard(#[from] PicardError),
    #[error(transparent)]
    Fibration(#[from] FibrationError),
}

/// Restriction to the boundary: (r, (c1 . Dtilde_j)_j).
pub fn restrict_class(x: &KClassY, model: &ToricModel) -> Result<CurveClass, BridgeError> {
    if x.model() != model {
        return Err(BridgeError::ModelMismatch);
    }
    let d = (0..model.k())
        .map(|j| intersection_pairing(&x.c1, &dtilde(model, j)))
        .collect::<Result<Vec<i64>, _>>()?;
    Ok(CurveClass { r: x.r, d })
}

/// Restrict a collection of line bundle classes cycle by cycle.
pub fn build_fibration(
    model: &ToricModel,
    collection: &Collection,
) -> Result<Fibration, BridgeError> {
    let mut cycles = Vec::with_capacity(collection.classes.len());
    for (i, x) in collection.classes.iter().enumerate() {
        if x.model() != model {
            return Err(BridgeError::ModelMismatch);
        }
        if x.line_bundle_witness().is_none() {
            return Err(BridgeError::NonLineBundleEntry(i));
        }
        cycles.push(restrict_class(x, model)?);
    }
    Ok(Fibration::new(model.k(), cycles)?)
}

/// Standard fibration of the model (meridians grouped by ray, then the
/// longitudes V_0, ..., V_{k-1}).
pub fn build_standard(model: &ToricModel) -> Fibration {
    crate::fibration::build_standard(model)
}

/// A model, a collection on the surface, and its mirror fibration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MirrorPair {
    pub model: ToricModel,
    pub collection: Collection,
    pub fibration: Fibration,
}

impl MirrorPair {
    pub fn new(model: &ToricModel, collection: Collection) -> Result<MirrorPair, BridgeError> {
        let fibration = build_fibration(model, &collection)?;
        Ok(MirrorPair {
            model: model.clone(),
            collection,
            fibration,
        })
    }
}

/// Status of a verification certificate: either a pass or a reproducible
/// counterexample. Never a bare boolean.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertStatus {
    Pass,
    Counterexample(String),
}

impl CertStatus {
    pub fn is_pass(&self) -> bool {
        *self == CertStatus::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyCertificate {
    /// Monodromy of the standard fibration, acting on (r, d_1, ..., d_k).
    pub computed: Vec<Vec<i64>>,
    /// Commuting product of meridian twist powers -(n_i - m_i) - 2.
    pub reference: Vec<Vec<i64>>,
    pub status: CertStatus,
}

/// Certify that the total monodromy of the standard fibration equals the
/// product of boundary meridian twists.
pub fn verify_monodromy_theorem(model: &ToricModel) -> MonodromyCertificate {
    let computed = total_monodromy(&build_standard(model));
    let reference = reference_monodromy(model);
    let status = if computed == reference {
        CertStatus::Pass
    } else {
        CertStatus::Counterexample(format!(
            "profile n = {:?}, m = {:?}",
            model.n(),
            model.m()
        ))
    };
    MonodromyCertificate {
        computed,
        reference,
        status,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationCertificate {
    /// restrict applied after the collection mutations.
    pub mutate_then_restrict: Vec<CurveClass>,
    /// Hurwitz moves applied after restriction.
    pub restrict_then_move: Vec<CurveClass>,
    pub status: CertStatus,
}

/// Certify that mutating the collection and then restricting agrees, cycle
/// by cycle up to sign, with restricting and then performing the matching
/// Hurwitz moves.
pub fn verify_mutation_compat(
    model: &ToricModel,
    collection: &Collection,
    script: &[(usize, Direction)],
) -> Result<MutationCertificate, BridgeError> {
    let restrict_all = |c: &Collection| -> Result<Vec<CurveClass>, BridgeError> {
        c.classes.iter().map(|x| restrict_class(x, model)).collect()
    };
    let mut coll = collection.clone();
    let mut fib = Fibration::new(model.k(), restrict_all(&coll)?)?;
    for &(i, dir) in script {
        if i + 1 >= coll.classes.len() {
            return Err(BridgeError::Picard(PicardError::IndexOutOfRange));
        }
        // the pair under mutation must be exceptional at chi level
        let back = euler_pairing_y(&coll.classes[i + 1], &coll.classes[i])?;
        if back != 0 {
            return Err(BridgeError::NotExceptionalAtChiLevel(i + 1, i, back));
        }
        for t in [i, i + 1] {
            let diag = euler_pairing_y(&coll.classes[t], &coll.classes[t])?;
            if diag != 1 {
                return Err(BridgeError::NotExceptionalAtChiLevel(t, t, diag));
            }
        }
        coll = mutate_collection(&coll, i, dir)?;
        let hdir = match dir {
            Direction::Left => HurwitzDirection::Left,
            Direction::Right => HurwitzDirection::Right,
        };
        fib = hurwitz_move(&fib, i, hdir)?;
    }
    // mutated entries can leave the line-bundle locus; restrict directly
    let mutate_then_restrict = restrict_all(&coll)?;
    let restrict_then_move = fib.cycles;
    let agree = mutate_then_restrict.len() == restrict_then_move.len()
        && mutate_then_restrict
            .iter()
            .zip(&restrict_then_move)
            .all(|(a, b)| a.eq_up_to_sign(b));
    Ok(MutationCertificate {
        status: if agree {
            CertStatus::Pass
        } else {
            CertStatus::Counterexample(format!("script {script:?}"))
        },
        mutate_then_restrict,
        restrict_then_move,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusCertificate {
    /// The dual cycles V*_0, ..., V*_{k-1} (in that order).
    pub duals: Vec<CurveClass>,
    /// Sum of the dual classes with the head omitted.
    pub tail_sum: CurveClass,
    pub status: CertStatus,
}

/// Surgery-additivity shadow of the exact Lagrangian torus: on a purely
/// toric model the duals satisfy sum_{i>=1} [V*_i] = +-[V*_0].
pub fn torus_class_check(model: &ToricModel) -> Result<TorusCertificate, BridgeError> {
    if model.sum_m() != 0 {
        return Err(BridgeError::NotPurelyToric);
    }
    let mut duals = dual_collection(&build_standard(model)).cycles;
    duals.reverse(); // back to V*_0, ..., V*_{k-1}
    let k = model.k();
    let mut tail_sum = CurveClass { r: 0, d: vec![0; k] };
    for v in &duals[1..] {
        tail_sum.r += v.r;
        for (t, x) in tail_sum.d.iter_mut().zip(&v.d) {
            *t += x;
        }
    }
    let status = if tail_sum.eq_up_to_sign(&duals[0]) {
        CertStatus::Pass
    } else {
        CertStatus::Counterexample(format!("profile n = {:?}", model.n()))
    };
    Ok(TorusCertificate {
        duals,
        tail_sum,
        status,
    })
}

/// Restrict a collection to the boundary with the node between components
/// `node` and `node+1` smoothed: the two boundary divisors merge, so the
/// degrees against them add.
pub fn restrict_capped(
    model: &ToricModel,
    collection: &Collection,
    node: usize,
) -> Result<Fibration, BridgeError> {
    let k = model.k();
    let j = (node + 1) % k;
    let merged = dtilde(model, node).add(&dtilde(model, j))?;
    let mut cycles = Vec::with_capacity(collection.classes.len());
    for x in &collection.classes {
        if x.model() != model {
            return Err(BridgeError::ModelMismatch);
        }
        let mut d = Vec::with_capacity(k - 1);
        for t in 0..k {
            if t == j {
                continue;
            }
            let div = if t == node {
                merged.clone()
            } else {
                dtilde(model, t)
            };
            d.push(intersection_pairing(&x.c1, &div)?);
        }
        cycles.push(CurveClass { r: x.r, d });
    }
    Ok(Fibration::new(k - 1, cycles)?)
}

/// chi-level agreement of the two Euler pairings on a pair of classes.
pub fn euler_pairings_agree(
    model: &ToricModel,
    x: &KClassY,
    y: &KClassY,
) -> Result<bool, BridgeError> {
    let lhs = euler_pairing_y(x, y)?;
    let rhs = euler_pairing_d(&restrict_class(x, model)?, &restrict_class(y, model)?)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{hirzebruch, p2};
    use crate::picard::{gamma, line_bundle, pullback, standard_collection, tensor};

    fn l(d: &[i64]) -> CurveClass {
        CurveClass::longitude(d.to_vec())
    }

    #[test]
    fn restriction_examples() {
        let model = ToricModel::from_fan(p2(), vec![1, 0, 0]).unwrap();
        let o = KClassY::structure_sheaf(&model);
        assert_eq!(restrict_class(&o, &model).unwrap(), l(&[0, 0, 0]));
        let h = line_bundle(&pullback(&model, 0));
        assert_eq!(restrict_class(&h, &model).unwrap(), l(&[1, 1, 1]));
        let g = line_bundle(&gamma(&model, 0, 0));
        assert_eq!(restrict_class(&g, &model).unwrap(), l(&[1, 0, 0]));
        let other = ToricModel::toric(p2());
        assert_eq!(
            restrict_class(&o, &other),
            Err(BridgeError::ModelMismatch)
        );
    }

    #[test]
    fn p2_collection_restricts_to_standard_cycles() {
        let model = ToricModel::toric(p2());
        let h = pullback(&model, 0);
        let coll = Collection {
            classes: vec![
                KClassY::structure_sheaf(&model),
                line_bundle(&h),
                line_bundle(&h.scale(2)),
            ],
        };
        let f = build_fibration(&model, &coll).unwrap();
        assert_eq!(f.cycles, vec![l(&[0, 0, 0]), l(&[1, 1, 1]), l(&[2, 2, 2])]);
        let pair = MirrorPair::new(&model, coll).unwrap();
        assert_eq!(pair.fibration, f);
    }

    #[test]
    fn hirzebruch_meridian_free_tail() {
        for a in 0..4 {
            let model = ToricModel::toric(hirzebruch(a));
            let coll = standard_collection(&model);
            let f = build_fibration(&model, &coll).unwrap();
            // m = 0: the standard collection is O, pi*O(Dbar_1), ...
            assert_eq!(
                f.cycles,
                vec![
                    l(&[0, 0, 0, 0]),
                    l(&[0, 1, 0, 1]),
                    l(&[1, a + 1, 1, 1]),
                    l(&[1, a + 2, 1, 2]),
                ]
            );
        }
    }

    #[test]
    fn non_line_bundle_entries_are_rejected() {
        let model = ToricModel::toric(p2());
        let o = KClassY::structure_sheaf(&model);
        let coll = Collection {
            classes: vec![o.clone(), o.scale(2)],
        };
        assert_eq!(
            build_fibration(&model, &coll),
            Err(BridgeError::NonLineBundleEntry(1))
        );
    }

    #[test]
    fn monodromy_certificates_pass() {
        for model in [
            ToricModel::toric(p2()),
            ToricModel::from_fan(p2(), vec![2, 3, 0]).unwrap(),
            ToricModel::from_fan(hirzebruch(3), vec![1, 0, 1, 0]).unwrap(),
        ] {
            let cert = verify_monodromy_theorem(&model);
            assert!(cert.status.is_pass());
            assert_eq!(cert.computed, cert.reference);
        }
    }

    #[test]
    fn mutation_compat_on_the_meridian_pair() {
        // (O_E(-1), O): the right mutation corresponds to the Hurwitz move
        // taking (W_i, V_0) to (V_0, O(E)-image)
        let model = ToricModel::from_fan(p2(), vec![1, 0, 0]).unwrap();
        let g = gamma(&model, 0, 0);
        // rank 0, c1 = [E], chi = 0: the K-class of O_E(-1)
        let oe = KClassY { r: 0, c1: g, chi: 0 };
        assert_eq!(
            restrict_class(&oe, &model).unwrap(),
            CurveClass::meridian(3, 0)
        );
        let coll = Collection {
            classes: vec![oe, KClassY::structure_sheaf(&model)],
        };
        let cert =
            verify_mutation_compat(&model, &coll, &[(0, Direction::Right)]).unwrap();
        assert!(cert.status.is_pass(), "{cert:?}");
        assert_eq!(cert.restrict_then_move[0], l(&[0, 0, 0]));
        assert!(cert.restrict_then_move[1].eq_up_to_sign(&l(&[1, 0, 0])));
    }

    #[test]
    fn mutation_compat_along_a_script() {
        let model = ToricModel::from_fan(hirzebruch(1), vec![1, 0, 0, 0]).unwrap();
        let coll = standard_collection(&model);
        let script = [
            (0, Direction::Right),
            (1, Direction::Right),
            (1, Direction::Left),
            (0, Direction::Left),
        ];
        let cert = verify_mutation_compat(&model, &coll, &script).unwrap();
        assert!(cert.status.is_pass(), "{cert:?}");
        // empty script passes trivially
        let cert = verify_mutation_compat(&model, &coll, &[]).unwrap();
        assert!(cert.status.is_pass());
    }

    #[test]
    fn mutation_compat_rejects_non_exceptional_pairs() {
        let model = ToricModel::toric(p2());
        let o = KClassY::structure_sheaf(&model);
        let h = line_bundle(&pullback(&model, 0));
        // (O(1), O) has chi(O, O(1)) = 3 backwards
        let coll = Collection {
            classes: vec![h, o],
        };
        assert_eq!(
            verify_mutation_compat(&model, &coll, &[(0, Direction::Left)]),
            Err(BridgeError::NotExceptionalAtChiLevel(1, 0, 3))
        );
    }

    #[test]
    fn torus_class_checks() {
        let cert = torus_class_check(&ToricModel::toric(p2())).unwrap();
        assert!(cert.status.is_pass());
        assert_eq!(cert.duals[1], CurveClass { r: -2, d: vec![1, 1, 1] });
        assert_eq!(cert.duals[2], CurveClass { r: 1, d: vec![-1, -1, -1] });
        assert_eq!(cert.tail_sum, CurveClass { r: -1, d: vec![0, 0, 0] });
        for a in 0..4 {
            let cert = torus_class_check(&ToricModel::toric(hirzebruch(a))).unwrap();
            assert!(cert.status.is_pass(), "a = {a}");
        }
        assert_eq!(
            torus_class_check(&ToricModel::from_fan(p2(), vec![1, 0, 0]).unwrap()),
            Err(BridgeError::NotPurelyToric)
        );
    }

    #[test]
    fn tensor_restricts_to_meridional_word() {
        let model = ToricModel::from_fan(hirzebruch(2), vec![2, 0, 1, 0]).unwrap();
        let coll = standard_collection(&model);
        let lb = pullback(&model, 1).add(&gamma(&model, 0, 1)).unwrap();
        let word: Vec<i64> = (0..model.k())
            .map(|i| intersection_pairing(&lb, &dtilde(&model, i)).unwrap())
            .collect();
        for x in &coll.classes {
            let lhs = restrict_class(&tensor(x, &lb).unwrap(), &model).unwrap();
            let base = restrict_class(x, &model).unwrap();
            let rhs = CurveClass {
                r: base.r,
                d: base
                    .d
                    .iter()
                    .zip(&word)
                    .map(|(v, w)| v + base.r * w)
                    .collect(),
            };
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn euler_pairings_agree_on_standard_collections() {
        for model in [
            ToricModel::from_fan(p2(), vec![1, 1, 0]).unwrap(),
            ToricModel::from_fan(hirzebruch(2), vec![0, 1, 0, 2]).unwrap(),
        ] {
            let coll = standard_collection(&model);
            // chi_D is antisymmetric, so agreement is only claimed off the
            // diagonal of an exceptional collection
            for i in 0..coll.classes.len() {
                for j in i + 1..coll.classes.len() {
                    assert!(euler_pairings_agree(
                        &model,
                        &coll.classes[i],
                        &coll.classes[j]
                    )
                    .unwrap());
                }
            }
        }
    }

    #[test]
    fn standard_collection_mirrors_standard_fibration() {
        // mutating the meridian entries turns the restricted standard
        // collection into the standard fibration: check the class-level
        // content directly
        let model = ToricModel::from_fan(p2(), vec![1, 0, 0]).unwrap();
        let f = build_fibration(&model, &standard_collection(&model)).unwrap();
        // entries: O, O(Gamma_11), pi*O(D1), pi*O(D1+D2)
        assert_eq!(
            f.cycles,
            vec![l(&[0, 0, 0]), l(&[1, 0, 0]), l(&[1, 1, 1]), l(&[2, 2, 2])]
        );
        // tau_{V_0} of the Gamma-longitude is the meridian of build_standard
        let std = build_standard(&model);
        assert_eq!(std.cycles[0], CurveClass::meridian(3, 0));
        assert_eq!(
            crate::fibration::spherical_twist(&f.cycles[0], &f.cycles[1], 1).unwrap(),
            std.cycles[0]
        );
    }

    #[test]
    fn capping_matches_smoothed_restriction() {
        // capping the fibration commutes with restricting over the smoothed
        // boundary (the merged divisor computed in the Picard lattice)
        let model = ToricModel::from_fan(hirzebruch(1), vec![0, 2, 0, 0]).unwrap();
        let coll = standard_collection(&model);
        let f = build_fibration(&model, &coll).unwrap();
        for node in 0..model.k() {
            let capped = crate::fibration::cap_puncture(&f, node).unwrap();
            let smoothed = restrict_capped(&model, &coll, node).unwrap();
            assert_eq!(capped.cycles, smoothed.cycles, "node {node}");
        }
    }
}
