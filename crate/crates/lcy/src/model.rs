//! Toric models: a smooth complete fan decorated with interior blow-up
//! counts m_i, one per boundary component. The boundary self-intersections of
//! the blown-up surface are n_i - m_i.

use crate::fan::{self, neg, Fan, FanError, MinimalModel, Vec2};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error("m has length {0} but the fan has {1} rays")]
    LengthMismatch(usize, usize),
    #[error("interior blow-up count at ray {0} is negative")]
    NegativeCount(usize),
    #[error("ray {0} has no opposite ray in the fan")]
    NoOppositeRay(usize),
    #[error("ray {0} has no interior blow-ups")]
    NoInteriorBlowup(usize),
}

/// A fan together with interior blow-up counts, stored normalised (the fan
/// rotation and m are kept aligned).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricModel {
    fan: Fan,
    m: Vec<i64>,
}

impl ToricModel {
    pub fn new(rays: &[Vec2], m: Vec<i64>) -> Result<ToricModel, ModelError> {
        Self::new_with_offset(rays, m).map(|(model, _)| model)
    }

    /// Also returns the normalising rotation: input index t sits at output
    /// index (t - offset) mod k.
    pub fn new_with_offset(rays: &[Vec2], m: Vec<i64>) -> Result<(ToricModel, usize), ModelError> {
        if m.len() != rays.len() {
            return Err(ModelError::LengthMismatch(m.len(), rays.len()));
        }
        if let Some(i) = m.iter().position(|&mi| mi < 0) {
            return Err(ModelError::NegativeCount(i));
        }
        let (fan, offset) = Fan::new_with_offset(rays)?;
        let mut m = m;
        m.rotate_left(offset);
        Ok((ToricModel { fan, m }, offset))
    }

    pub fn from_fan(fan: Fan, m: Vec<i64>) -> Result<ToricModel, ModelError> {
        // the fan is already normalised, so no rotation happens
        Self::new(&fan.rays().to_vec(), m)
    }

    pub fn toric(fan: Fan) -> ToricModel {
        let m = vec![0; fan.k()];
        ToricModel { fan, m }
    }

    pub fn k(&self) -> usize {
        self.fan.k()
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn m(&self) -> &[i64] {
        &self.m
    }

    pub fn n(&self) -> Vec<i64> {
        fan::self_intersections(&self.fan)
    }

    /// Boundary self-intersections n_i - m_i.
    pub fn boundary_selfints(&self) -> Vec<i64> {
        self.n().iter().zip(&self.m).map(|(n, m)| n - m).collect()
    }

    pub fn sum_m(&self) -> i64 {
        self.m.iter().sum()
    }

    /// Equality of the abstract models: same (n, m) profiles up to a cyclic
    /// rotation. Two valid fans with matching cyclic profiles are related by
    /// SL2(Z), so this identifies presentations of the same model.
    pub fn profile_equivalent(&self, other: &ToricModel) -> bool {
        if self.k() != other.k() {
            return false;
        }
        let k = self.k();
        let (n, m) = (self.n(), self.m());
        let (on, om) = (other.n(), other.m());
        (0..k).any(|r| {
            (0..k).all(|t| n[(t + r) % k] == on[t] && m[(t + r) % k] == om[t])
        })
    }
}

/// Relabel cyclically so that component s becomes component 0. Realised by
/// the unique SL2(Z) map sending v_s, v_{s+1} to (1,0), (0,1); all
/// self-intersection data is preserved and the image of v_s, having angle
/// zero, is first after normalisation.
pub fn rotate_model(model: &ToricModel, s: usize) -> ToricModel {
    let k = model.k();
    let s = s % k;
    let vs = model.fan().ray(s);
    let vs1 = model.fan().ray((s + 1) % k);
    let (a, c, b, d) = (vs[0], vs[1], vs1[0], vs1[1]);
    // inverse of the det-1 matrix with columns vs, vs1
    let apply = |v: Vec2| [d * v[0] - b * v[1], -c * v[0] + a * v[1]];
    let rays: Vec<Vec2> = (0..k).map(|t| apply(model.fan().ray((s + t) % k))).collect();
    let m: Vec<i64> = (0..k).map(|t| model.m[(s + t) % k]).collect();
    let (out, offset) = ToricModel::new_with_offset(&rays, m).expect("SL2 image of a valid model");
    debug_assert_eq!(offset, 0, "(1,0) has the minimal angle");
    out
}

/// Reverse the cyclic labelling (the orientation-reversing relabeling),
/// realised by the reflection (x, y) -> (x, -y).
pub fn reverse_model(model: &ToricModel) -> ToricModel {
    let rays: Vec<Vec2> = model.fan().rays().iter().rev().map(|&[x, y]| [x, -y]).collect();
    let m: Vec<i64> = model.m.iter().rev().copied().collect();
    ToricModel::new(&rays, m).expect("reflection of a valid model")
}

/// Corner blow-up at the node between components i and i+1; the new
/// component carries no interior blow-ups.
pub fn corner_blowup_model(model: &ToricModel, i: usize) -> ToricModel {
    let k = model.k();
    let i = i % k;
    let new = fan::add(model.fan().ray(i), model.fan().ray((i + 1) % k));
    let mut rays = model.fan().rays().to_vec();
    let mut m = model.m.clone();
    rays.insert(i + 1, new);
    m.insert(i + 1, 0);
    ToricModel::new(&rays, m).expect("corner blow-up of a valid model")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElemTransTrace {
    /// Ray at which the transformation was performed (input model).
    pub ray: Vec2,
    /// The opposite ray picking up the transported blow-up.
    pub opposite: Vec2,
    /// The normalised output is rotated left by this much relative to the
    /// input labelling: input component t sits at (t - offset) mod k.
    pub offset: usize,
}

/// Slide one interior blow-up from component i to the opposite component:
/// n_i, m_i drop by one and n_j, m_j rise by one at the opposite ray j. The
/// fan is regenerated from the seed pair (v_i, v_{i+1}) by the recursion
/// w_{t+1} = -n'_t w_t - w_{t-1} with the transformed profile n'.
pub fn elementary_transformation(
    model: &ToricModel,
    i: usize,
) -> Result<(ToricModel, ElemTransTrace), ModelError> {
    let k = model.k();
    let i = i % k;
    let v = model.fan().ray(i);
    let j = model
        .fan()
        .position(neg(v))
        .ok_or(ModelError::NoOppositeRay(i))?;
    if model.m[i] == 0 {
        return Err(ModelError::NoInteriorBlowup(i));
    }
    let mut n = model.n();
    n[i] -= 1;
    n[j] += 1;
    let mut m = model.m.clone();
    m[i] -= 1;
    m[j] += 1;
    let mut rays = vec![[0i64, 0i64]; k];
    rays[i] = v;
    rays[(i + 1) % k] = model.fan().ray((i + 1) % k);
    for step in 1..k - 1 {
        let t = (i + step) % k;
        let prev = (i + step - 1) % k;
        let next = (t + 1) % k;
        rays[next] = [
            -n[t] * rays[t][0] - rays[prev][0],
            -n[t] * rays[t][1] - rays[prev][1],
        ];
    }
    let (out, offset) = ToricModel::new_with_offset(&rays, m)?;
    debug_assert_eq!(out.n(), {
        let mut rot = n.clone();
        rot.rotate_left(offset);
        rot
    });
    Ok((
        out,
        ElemTransTrace {
            ray: v,
            opposite: neg(v),
            offset,
        },
    ))
}

/// Deformation invariants of the log CY surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub k: usize,
    pub sum_m: i64,
    pub picard_rank: i64,
    pub euler: i64,
}

pub fn deformation_invariants(model: &ToricModel) -> Invariants {
    let k = model.k() as i64;
    let sum_m = model.sum_m();
    Invariants {
        k: model.k(),
        sum_m,
        picard_rank: k - 2 + sum_m,
        euler: k + sum_m,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Definiteness {
    NegativeDefinite,
    StrictlyNegativeSemidefinite,
    Other,
}

/// Boundary self-intersection profile and the definiteness of the cyclic
/// intersection matrix (diagonal n_i - m_i, adjacency 1).
pub fn boundary_profile(model: &ToricModel) -> (Vec<i64>, Definiteness) {
    let d = model.boundary_selfints();
    let k = model.k();
    let mut mat = vec![vec![0i64; k]; k];
    for i in 0..k {
        mat[i][i] = d[i];
        mat[i][(i + 1) % k] += 1;
        mat[i][(i + k - 1) % k] += 1;
    }
    let tag = if negated_is_positive_definite(&mat) {
        Definiteness::NegativeDefinite
    } else if d.iter().all(|&di| di == -2) && k <= 9 {
        Definiteness::StrictlyNegativeSemidefinite
    } else {
        Definiteness::Other
    };
    debug_assert!(tag != Definiteness::StrictlyNegativeSemidefinite || k <= 9);
    (d, tag)
}

// Sylvester criterion on -M with exact integer minors (Bareiss).
fn negated_is_positive_definite(mat: &[Vec<i64>]) -> bool {
    let k = mat.len();
    (1..=k).all(|r| {
        let minor: Vec<Vec<i128>> = (0..r)
            .map(|i| (0..r).map(|j| -(mat[i][j] as i128)).collect())
            .collect();
        bareiss_det(minor) > 0
    })
}

pub(crate) fn bareiss_det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for p in 0..n {
        if a[p][p] == 0 {
            match (p + 1..n).find(|&r| a[r][p] != 0) {
                Some(r) => {
                    a.swap(p, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in p + 1..n {
            for j in p + 1..n {
                a[i][j] = (a[p][p] * a[i][j] - a[i][p] * a[p][j]) / prev;
            }
            a[i][p] = 0;
        }
        prev = a[p][p];
    }
    sign * a[n - 1][n - 1]
}

// ---------------------------------------------------------------------------
// Classification of non-toric blow-downs
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseLabel {
    /// After elementary transformations the blow-down is realised torically.
    StaysToric,
    C1,
    C2ai,
    C2aii,
    C2bi,
    C2bii,
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseLabel::StaysToric => "none",
            CaseLabel::C1 => "(1)",
            CaseLabel::C2ai => "(2.a.i)",
            CaseLabel::C2aii => "(2.a.ii)",
            CaseLabel::C2bi => "(2.b.i)",
            CaseLabel::C2bii => "(2.b.ii)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalPairOption {
    pub surface: MinimalModel,
    pub d_min: Vec<i64>,
    /// Set on the (F_2, D_min) option of the "F_0 or F_2" rows.
    pub distinguished_complex_structure: bool,
}

fn pair(surface: MinimalModel, d_min: &[i64]) -> Vec<MinimalPairOption> {
    vec![MinimalPairOption {
        surface,
        d_min: d_min.to_vec(),
        distinguished_complex_structure: false,
    }]
}

fn f0_or_f2(d_min: &[i64]) -> Vec<MinimalPairOption> {
    vec![
        MinimalPairOption {
            surface: MinimalModel::Hirzebruch(0),
            d_min: d_min.to_vec(),
            distinguished_complex_structure: false,
        },
        MinimalPairOption {
            surface: MinimalModel::Hirzebruch(2),
            d_min: d_min.to_vec(),
            distinguished_complex_structure: true,
        },
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NormalisationStep {
    /// Relabel so the stated component (0-based index in the model at that
    /// point) becomes component 1.
    RotateToFront(usize),
    /// Orientation-reversing relabeling.
    Reverse,
    /// Elementary transformation at the stated canonical component label
    /// (1-based).
    ElemTrans(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowdownReport {
    pub case: CaseLabel,
    /// Canonical 1-based component labels, in blow-down order.
    pub blowdown_seq: Vec<usize>,
    pub minimal_pairs: Vec<MinimalPairOption>,
    /// The table's star: further (-1)-curve blow-downs are needed after the
    /// listed ones to reach the minimal model.
    pub needs_further_blowdowns: bool,
    pub trace: Vec<NormalisationStep>,
    /// The model in its normalised labelling (component 1 first).
    pub normalised: ToricModel,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("no boundary component with self-intersection -1 and an interior blow-up")]
    NotBlowdownEligible,
    #[error("model does not match a classified blow-down pattern: {0}")]
    UnsupportedPattern(String),
}

struct Worker {
    model: ToricModel,
    trace: Vec<NormalisationStep>,
}

impl Worker {
    // elementary transformation at canonical component `comp` (1-based);
    // re-rotates so component 1 stays first.
    fn trans(&mut self, comp: usize) {
        let idx = comp - 1;
        let (out, tr) = elementary_transformation(&self.model, idx)
            .expect("classifier only slides where legal");
        let k = out.k();
        // component 1 (input index 0) now sits at (0 - offset) mod k
        let lead = (k - tr.offset % k) % k;
        self.model = rotate_model(&out, lead);
        self.trace.push(NormalisationStep::ElemTrans(comp));
    }

    fn reverse(&mut self) {
        // reflect, then bring the image of component 1 back to the front;
        // afterwards the old component k is component 2 and so on
        let v0 = self.model.fan().ray(0);
        let rev = reverse_model(&self.model);
        let lead = rev.fan().position([v0[0], -v0[1]]).unwrap();
        self.model = rotate_model(&rev, lead);
        self.trace.push(NormalisationStep::Reverse);
    }

    fn n(&self) -> Vec<i64> {
        self.model.n()
    }

    fn m(&self, comp: usize) -> i64 {
        self.model.m()[comp - 1]
    }
}

/// Classify the first non-toric blow-down of the model, following the
/// case analysis for blow-downs leaving the toric-model class, and read the
/// minimal pair off the classification table.
pub fn classify_nontoric_blowdown(model: &ToricModel) -> Result<BlowdownReport, ClassifyError> {
    let k = model.k();
    let n = model.n();
    let lead = (0..k)
        .find(|&i| n[i] - model.m()[i] == -1 && model.m()[i] > 0)
        .ok_or(ClassifyError::NotBlowdownEligible)?;
    let mut w = Worker {
        model: rotate_model(model, lead),
        trace: vec![NormalisationStep::RotateToFront(lead)],
    };

    // Component 1 has an opposite ray: slide its blow-ups across, after
    // which n_1 = -1, m_1 = 0 and the blow-down is toric.
    if w.model.fan().position(neg(w.model.fan().ray(0))).is_some() {
        return Ok(stays_toric(w));
    }

    if k == 3 {
        // The fan is the P^2 fan; n = (1,1,1) forces m_1 = 2.
        debug_assert_eq!(w.n(), vec![1, 1, 1]);
        debug_assert_eq!(w.m(1), 2);
        if w.m(3) == 3 && w.m(2) != 3 {
            w.reverse();
        }
        return Ok(if w.m(2) == 3 {
            report(w, CaseLabel::C1, &[1, 2], pair(MinimalModel::P2, &[9]), true)
        } else {
            report(w, CaseLabel::C1, &[1], f0_or_f2(&[2, 2]), false)
        });
    }

    // Case (2): component 1 is a self-intersection-zero component with a
    // single interior blow-up.
    if w.n()[0] != 0 || w.m(1) != 1 {
        return Err(ClassifyError::UnsupportedPattern(format!(
            "component with (n, m) = ({}, {}) and no opposite ray",
            w.n()[0],
            w.m(1)
        )));
    }

    match k {
        4 => classify_k4(w),
        5 => classify_k5(w),
        _ => Err(ClassifyError::UnsupportedPattern(format!(
            "k = {k} fan in case (2)"
        ))),
    }
}

fn stays_toric(mut w: Worker) -> BlowdownReport {
    while w.m(1) > 0 {
        w.trans(1);
    }
    debug_assert_eq!(w.n()[0], -1);
    report(w, CaseLabel::StaysToric, &[1], Vec::new(), false)
}

fn report(
    w: Worker,
    case: CaseLabel,
    seq: &[usize],
    minimal_pairs: Vec<MinimalPairOption>,
    star: bool,
) -> BlowdownReport {
    BlowdownReport {
        case,
        blowdown_seq: seq.to_vec(),
        minimal_pairs,
        needs_further_blowdowns: star,
        trace: w.trace,
        normalised: w.model,
    }
}

// Underlying surface F_a: components 2 and 4 are the fibre sections, with
// invariant boundary self-intersections D2 = n_2 - m_2, D4 = n_4 - m_4.
// Elementary transformations slide blow-ups between them, changing a; the
// normal forms put all their blow-ups on one side.
fn classify_k4(mut w: Worker) -> Result<BlowdownReport, ClassifyError> {
    let (n, m) = (w.n(), w.model.m().to_vec());
    let (d2, d4) = (n[1] - m[1], n[3] - m[3]);
    if d2 > d4 {
        w.reverse();
    }
    let (d2, d4) = (d2.min(d4), d2.max(d4));
    if d4 <= 0 {
        // Every normal form has a <= 0: slide until the opposite ray of
        // component 1 appears (a = 0, a blow-up of P^1 x P^1), after which
        // the blow-down is toric.
        while w.model.fan().position(neg(w.model.fan().ray(0))).is_none() {
            let comp = if w.n()[3] > 0 { 4 } else { 2 };
            debug_assert!(w.m(comp) > 0);
            w.trans(comp);
        }
        return Ok(stays_toric(w));
    }
    let a = d4;
    let t = m[1] + m[3]; // invariant total on the section components
    if w.m(3) == 1 {
        if a == 3 {
            if t == 0 {
                return Ok(report(
                    w,
                    CaseLabel::C2bi,
                    &[1, 3, 2],
                    pair(MinimalModel::P2, &[9]),
                    false,
                ));
            }
            return Err(ClassifyError::UnsupportedPattern(
                "a = 3 with blow-ups on the section components".into(),
            ));
        }
        while w.m(4) > 0 {
            w.trans(4);
        }
        debug_assert_eq!(w.n()[3], a);
        return Ok(if a == 1 {
            report(w, CaseLabel::C2bii, &[1, 3], pair(MinimalModel::P2, &[1, 4]), true)
        } else {
            report(
                w,
                CaseLabel::C2bii,
                &[1, 3],
                pair(MinimalModel::Hirzebruch(a - 2), &[2 - a, 2 + a]),
                false,
            )
        });
    }
    if a == 3 && t == 0 {
        return Ok(report(
            w,
            CaseLabel::C2bi,
            &[1],
            pair(MinimalModel::Hirzebruch(2), &[-2, 4, 0]),
            false,
        ));
    }
    if d2 == -2 {
        while w.m(2) > 0 {
            w.trans(2);
        }
        debug_assert_eq!(w.n()[1], -2);
        return Ok(if w.m(3) == 2 {
            report(w, CaseLabel::C2aii, &[1, 2, 3], f0_or_f2(&[8]), false)
        } else {
            report(w, CaseLabel::C2aii, &[1, 2], pair(MinimalModel::P2, &[1, 4]), false)
        });
    }
    if a != 3 {
        while w.m(4) > 0 {
            w.trans(4);
        }
        return Ok(report(
            w,
            CaseLabel::C2bii,
            &[1],
            pair(MinimalModel::Hirzebruch(a - 1), &[1 - a, 1 + a, 0]),
            false,
        ));
    }
    Err(ClassifyError::UnsupportedPattern(
        "a = 3 with blow-ups on the section components".into(),
    ))
}

// Underlying surface a blow-up of F_1 or F_2; normal form profile
// (0, -2, -1, -1, 1) with m = (1, 0, m_3, m_4, m_5).
fn classify_k5(mut w: Worker) -> Result<BlowdownReport, ClassifyError> {
    let (n, m) = (w.n(), w.model.m().to_vec());
    if n[1] - m[1] != -2 && n[4] - m[4] == -2 {
        w.reverse();
    }
    if w.n()[1] - w.m(2) != -2 {
        return Err(ClassifyError::UnsupportedPattern(
            "no adjacent component of boundary self-intersection -2".into(),
        ));
    }
    while w.m(2) > 0 {
        if w.model.fan().position(neg(w.model.fan().ray(1))).is_none() {
            return Err(ClassifyError::UnsupportedPattern(
                "component 2 carries blow-ups but has no opposite ray".into(),
            ));
        }
        w.trans(2);
    }
    if w.n() != vec![0, -2, -1, -1, 1] {
        return Err(ClassifyError::UnsupportedPattern(format!(
            "k = 5 profile {:?}",
            w.n()
        )));
    }
    Ok(if w.m(3) == 1 && w.m(4) == 1 {
        report(w, CaseLabel::C2ai, &[1, 2, 3, 4], f0_or_f2(&[8]), false)
    } else if w.m(3) == 1 {
        report(w, CaseLabel::C2ai, &[1, 2, 3], pair(MinimalModel::P2, &[1, 4]), false)
    } else {
        report(w, CaseLabel::C2ai, &[1, 2], pair(MinimalModel::P2, &[1, 4]), true)
    })
}
