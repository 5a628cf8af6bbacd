//! The A-side calculus on the K-theory shadow of curve classes on the
//! k-punctured elliptic fibre: twists, Hurwitz moves, monodromy,
//! (de)stabilisation, capping, dual collections, and the destabilisation
//! pipeline for non-toric blow-downs.

use crate::model::{rotate_model, reverse_model, BlowdownReport, CaseLabel, ToricModel};
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FibrationError {
    #[error("curve classes live on fibres with different puncture counts")]
    KMismatch,
    #[error("index out of range")]
    IndexOutOfRange,
    #[error("fibration is not the standard fibration of the model")]
    NotStandardFibration,
    #[error("cycle {0} is not a stabilising class for slot {1}")]
    NotStabilizingClass(usize, usize),
    #[error("cannot cap a fibre with fewer than two punctures")]
    KTooSmall,
    #[error("ray has no opposite ray in the fan")]
    NoOppositeRay,
    #[error("ray carries no interior blow-up")]
    NoInteriorBlowup,
    #[error("script precondition failed: {0}")]
    ScriptPreconditionFailed(String),
}

/// A curve class on the k-punctured elliptic fibre: longitudes are (1, d),
/// meridians around the i-th puncture are (0, e_i).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveClass {
    pub r: i64,
    pub d: Vec<i64>,
}

impl CurveClass {
    pub fn longitude(d: Vec<i64>) -> CurveClass {
        CurveClass { r: 1, d }
    }

    pub fn meridian(k: usize, i: usize) -> CurveClass {
        let mut d = vec![0; k];
        d[i] = 1;
        CurveClass { r: 0, d }
    }

    pub fn k(&self) -> usize {
        self.d.len()
    }

    pub fn sum_d(&self) -> i64 {
        self.d.iter().sum()
    }

    pub fn neg(&self) -> CurveClass {
        CurveClass {
            r: -self.r,
            d: self.d.iter().map(|x| -x).collect(),
        }
    }

    pub fn eq_up_to_sign(&self, other: &CurveClass) -> bool {
        self == other || *self == other.neg()
    }
}

/// Antisymmetric pairing chi_D(x, y) = r_x sum(d_y) - r_y sum(d_x).
pub fn euler_pairing_d(x: &CurveClass, y: &CurveClass) -> Result<i64, FibrationError> {
    if x.k() != y.k() {
        return Err(FibrationError::KMismatch);
    }
    Ok(x.r * y.sum_d() - y.r * x.sum_d())
}

/// The power of the spherical twist in c: tau_c^n(x) = x - n chi(c,x) c
/// (closed form, valid since chi(c,c) = 0).
pub fn spherical_twist(
    c: &CurveClass,
    x: &CurveClass,
    power: i64,
) -> Result<CurveClass, FibrationError> {
    let chi = euler_pairing_d(c, x)?;
    Ok(CurveClass {
        r: x.r - power * chi * c.r,
        d: x.d
            .iter()
            .zip(&c.d)
            .map(|(xd, cd)| xd - power * chi * cd)
            .collect(),
    })
}

/// An abstract Weinstein Lefschetz fibration shadow on the k-punctured fibre.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fibration {
    pub k: usize,
    pub cycles: Vec<CurveClass>,
    pub labels: Option<Vec<String>>,
}

impl Fibration {
    pub fn new(k: usize, cycles: Vec<CurveClass>) -> Result<Fibration, FibrationError> {
        if cycles.iter().any(|c| c.k() != k) {
            return Err(FibrationError::KMismatch);
        }
        Ok(Fibration {
            k,
            cycles,
            labels: None,
        })
    }

    /// Per-cycle equality up to a global sign on each cycle.
    pub fn eq_up_to_sign(&self, other: &Fibration) -> bool {
        self.k == other.k
            && self.cycles.len() == other.cycles.len()
            && self
                .cycles
                .iter()
                .zip(&other.cycles)
                .all(|(a, b)| a.eq_up_to_sign(b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HurwitzDirection {
    Left,
    Right,
}

/// One Hurwitz move at position i: left replaces (L_i, L_{i+1}) with
/// (tau_{L_i} L_{i+1}, L_i); right replaces it with
/// (L_{i+1}, tau^{-1}_{L_{i+1}} L_i). Left and right at the same position are
/// mutually inverse.
pub fn hurwitz_move(
    f: &Fibration,
    i: usize,
    direction: HurwitzDirection,
) -> Result<Fibration, FibrationError> {
    if i + 1 >= f.cycles.len() {
        return Err(FibrationError::IndexOutOfRange);
    }
    let mut out = f.clone();
    out.labels = None;
    let a = f.cycles[i].clone();
    let b = f.cycles[i + 1].clone();
    match direction {
        HurwitzDirection::Left => {
            out.cycles[i] = spherical_twist(&a, &b, 1)?;
            out.cycles[i + 1] = a;
        }
        HurwitzDirection::Right => {
            out.cycles[i] = b.clone();
            out.cycles[i + 1] = spherical_twist(&b, &a, -1)?;
        }
    }
    Ok(out)
}

/// The operator tau_{L_0} o ... o tau_{L_n} on Z^{1+k} (tau_{L_n} applied
/// first), as an integer matrix in the basis (r, d_1, ..., d_k).
pub fn total_monodromy(f: &Fibration) -> Vec<Vec<i64>> {
    let n = 1 + f.k;
    let mut mat = vec![vec![0i64; n]; n];
    for col in 0..n {
        let mut x = CurveClass {
            r: if col == 0 { 1 } else { 0 },
            d: (0..f.k).map(|j| if col == j + 1 { 1 } else { 0 }).collect(),
        };
        for c in f.cycles.iter().rev() {
            x = spherical_twist(c, &x, 1).unwrap();
        }
        mat[0][col] = x.r;
        for j in 0..f.k {
            mat[j + 1][col] = x.d[j];
        }
    }
    mat
}

/// The reference monodromy Prod_i tau_{W_i}^{-(n_i - m_i) - 2} as a matrix
/// (meridian twists commute; boundary-parallel classes act trivially).
pub fn reference_monodromy(model: &ToricModel) -> Vec<Vec<i64>> {
    let k = model.k();
    let n = model.n();
    let m = model.m();
    let mut mat = vec![vec![0i64; 1 + k]; 1 + k];
    for i in 0..1 + k {
        mat[i][i] = 1;
    }
    for i in 0..k {
        mat[i + 1][0] = -(n[i] - m[i]) - 2;
    }
    mat
}

// ---------------------------------------------------------------------------
// Standard fibrations
// ---------------------------------------------------------------------------

fn profile_matrix(n: &[i64]) -> Vec<Vec<i64>> {
    let k = n.len();
    let mut mat = vec![vec![0i64; k]; k];
    for i in 0..k {
        mat[i][i] = n[i];
        mat[i][(i + 1) % k] += 1;
        mat[i][(i + k - 1) % k] += 1;
    }
    mat
}

/// Standard fibration of a boundary profile: m_i meridians per component
/// (grouped by i, ascending), then longitudes V_0, ..., V_{k-1} with
/// V_t = l(d), d_j = sum_{u=1..t} Dbar_j . Dbar_u.
pub fn build_standard_from_profile(n: &[i64], m: &[i64]) -> Fibration {
    let k = n.len();
    let mat = profile_matrix(n);
    let mut cycles = Vec::new();
    let mut labels = Vec::new();
    for i in 0..k {
        for j in 0..m[i] as usize {
            cycles.push(CurveClass::meridian(k, i));
            labels.push(format!("W{},{}", i + 1, j + 1));
        }
    }
    let mut d = vec![0i64; k];
    cycles.push(CurveClass::longitude(d.clone()));
    labels.push("V0".into());
    for t in 1..k {
        for j in 0..k {
            d[j] += mat[j][t - 1];
        }
        cycles.push(CurveClass::longitude(d.clone()));
        labels.push(format!("V{t}"));
    }
    Fibration {
        k,
        cycles,
        labels: Some(labels),
    }
}

/// Standard fibration of a toric model.
pub fn build_standard(model: &ToricModel) -> Fibration {
    build_standard_from_profile(&model.n(), model.m())
}

fn is_standard(f: &Fibration, model: &ToricModel) -> bool {
    let std = build_standard(model);
    f.k == std.k && f.cycles == std.cycles
}

/// Stabilisation mirror to the corner blow-up between rays i and i+1: the
/// result is the standard fibration of the blown-up model.
pub fn stabilize_corner(
    f: &Fibration,
    model: &ToricModel,
    i: usize,
) -> Result<Fibration, FibrationError> {
    if !is_standard(f, model) {
        return Err(FibrationError::NotStandardFibration);
    }
    let blown = crate::model::corner_blowup_model(model, i);
    Ok(build_standard(&blown))
}

fn stabilizing_pattern(k: usize, slot: usize) -> CurveClass {
    let mut d = vec![0i64; k];
    d[slot] -= 1;
    d[(slot + 1) % k] += 1;
    d[(slot + k - 1) % k] += 1;
    CurveClass { r: 0, d }
}

/// The raw inverse of [`destabilize`]: insert a zero coordinate at `slot` in
/// every cycle and prepend the stabilising cycle for that slot. Unlike
/// [`stabilize_corner`] this makes no claim of being standard; it is
/// Hurwitz-equivalent to the standard fibration of the blown-up model, which
/// the coherence checks witness at the monodromy level.
pub fn stabilize_naive(f: &Fibration, slot: usize) -> Result<Fibration, FibrationError> {
    if slot > f.k {
        return Err(FibrationError::IndexOutOfRange);
    }
    let mut cycles: Vec<CurveClass> = f
        .cycles
        .iter()
        .map(|c| {
            let mut d = c.d.clone();
            d.insert(slot, 0);
            CurveClass { r: c.r, d }
        })
        .collect();
    cycles.insert(0, stabilizing_pattern(f.k + 1, slot));
    Fibration::new(f.k + 1, cycles)
}

/// Remove a stabilising cycle and delete its slot's coordinate everywhere.
pub fn destabilize(f: &Fibration, s: usize, slot: usize) -> Result<Fibration, FibrationError> {
    if s >= f.cycles.len() || slot >= f.k {
        return Err(FibrationError::IndexOutOfRange);
    }
    let pattern = stabilizing_pattern(f.k, slot);
    if !f.cycles[s].eq_up_to_sign(&pattern) {
        return Err(FibrationError::NotStabilizingClass(s, slot));
    }
    let cycles = f
        .cycles
        .iter()
        .enumerate()
        .filter(|(idx, _)| *idx != s)
        .map(|(_, c)| CurveClass {
            r: c.r,
            d: c
                .d
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != slot)
                .map(|(_, x)| *x)
                .collect(),
        })
        .collect();
    Fibration::new(f.k - 1, cycles)
}

/// Cap the puncture node between coordinates i and i+1 (cyclically): the two
/// degrees merge.
pub fn cap_puncture(f: &Fibration, i: usize) -> Result<Fibration, FibrationError> {
    if f.k < 2 {
        return Err(FibrationError::KTooSmall);
    }
    if i >= f.k {
        return Err(FibrationError::IndexOutOfRange);
    }
    let j = (i + 1) % f.k;
    let cycles = f
        .cycles
        .iter()
        .map(|c| {
            let mut d = Vec::with_capacity(f.k - 1);
            for t in 0..f.k {
                if t == j {
                    continue;
                }
                let mut v = c.d[t];
                if t == i {
                    v += c.d[j];
                }
                d.push(v);
            }
            CurveClass { r: c.r, d }
        })
        .collect();
    Fibration::new(f.k - 1, cycles)
}

/// Dual collection V*_i = tau_{V_0} ... tau_{V_{i-1}} V_i, in reversed order.
pub fn dual_collection(f: &Fibration) -> Fibration {
    let mut duals = Vec::with_capacity(f.cycles.len());
    for (i, c) in f.cycles.iter().enumerate() {
        let mut x = c.clone();
        for prev in f.cycles[..i].iter().rev() {
            x = spherical_twist(prev, &x, 1).unwrap();
        }
        duals.push(x);
    }
    duals.reverse();
    let labels = f.labels.as_ref().map(|ls| {
        let mut out: Vec<String> = ls.iter().map(|l| format!("{l}*")).collect();
        out.reverse();
        out
    });
    Fibration {
        k: f.k,
        cycles: duals,
        labels,
    }
}

/// Negate every degree vector and reverse the cycle order.
pub fn dualize_fibration(f: &Fibration) -> Fibration {
    let mut cycles: Vec<CurveClass> = f
        .cycles
        .iter()
        .map(|c| CurveClass {
            r: c.r,
            d: c.d.iter().map(|x| -x).collect(),
        })
        .collect();
    cycles.reverse();
    Fibration {
        k: f.k,
        cycles,
        labels: None,
    }
}

// ---------------------------------------------------------------------------
// Relabelings
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RelabelOp {
    CyclicShift,
    Reverse,
}

/// Global meridional twist word Prod tau_{W_i}^{a_i} applied to one class.
fn apply_meridional_word(c: &CurveClass, a: &[i64]) -> CurveClass {
    CurveClass {
        r: c.r,
        d: c.d.iter().zip(a).map(|(x, ai)| x + c.r * ai).collect(),
    }
}

/// Relabeling of the standard fibration: cyclic_shift realises the label
/// rotation by a global meridional word plus Hurwitz moves; reverse returns
/// the standard fibration of the reversed-label model.
pub fn relabel_ops(
    f: &Fibration,
    model: &ToricModel,
    op: RelabelOp,
) -> Result<(Fibration, Vec<String>), FibrationError> {
    if !is_standard(f, model) {
        return Err(FibrationError::NotStandardFibration);
    }
    match op {
        RelabelOp::Reverse => Ok((build_standard(&reverse_model(model)), Vec::new())),
        RelabelOp::CyclicShift => {
            let k = model.k();
            let mat = profile_matrix(&model.n());
            let word: Vec<i64> = (0..k).map(|i| -mat[0][i]).collect();
            let mut script = vec![format!("meridional word {word:?}")];
            let mut cycles: Vec<CurveClass> = f
                .cycles
                .iter()
                .map(|c| apply_meridional_word(c, &word))
                .collect();
            // relabel punctures: coordinate t of the rotated model is old t+1
            for c in cycles.iter_mut() {
                c.d.rotate_left(1);
            }
            script.push("rotate puncture labels left by 1".into());
            // regroup meridians: the block of old component 1 (now labeled k)
            // commutes past the other meridian blocks to the end of the
            // meridian section
            let sum_m = model.sum_m() as usize;
            let m1 = model.m()[0] as usize;
            let block: Vec<CurveClass> = cycles.drain(0..m1).collect();
            for (off, b) in block.into_iter().enumerate() {
                cycles.insert(sum_m - m1 + off, b);
            }
            if m1 > 0 {
                script.push("commute old W1 block to the end of the meridians".into());
            }
            // mutate the image of V_0 past the trailing longitudes
            let mut g = Fibration::new(k, cycles)?;
            for p in sum_m..g.cycles.len() - 1 {
                g = hurwitz_move(&g, p, HurwitzDirection::Right)?;
                script.push(format!("right Hurwitz move at {p}"));
            }
            Ok((g, script))
        }
    }
}

// ---------------------------------------------------------------------------
// Elementary transformation script
// ---------------------------------------------------------------------------

/// The mutation script realising an elementary transformation at ray i:
/// carries the last meridian of component i around and returns the standard
/// fibration of the transformed model (in the rotated labels that place the
/// opposite ray last), up to per-cycle sign.
pub fn elem_trans_script(
    f: &Fibration,
    model: &ToricModel,
    i: usize,
) -> Result<(Fibration, Vec<String>), FibrationError> {
    if !is_standard(f, model) {
        return Err(FibrationError::NotStandardFibration);
    }
    let k = model.k();
    if i >= k {
        return Err(FibrationError::IndexOutOfRange);
    }
    if model.m()[i] == 0 {
        return Err(FibrationError::NoInteriorBlowup);
    }
    let vi = model.fan().ray(i);
    let j = model
        .fan()
        .position([-vi[0], -vi[1]])
        .ok_or(FibrationError::NoOppositeRay)?;
    // pre-rotate so the opposite ray is the last index
    let s = (j + 1) % k;
    let work = rotate_model(model, s);
    let ii = (i + k - s) % k;
    let mut script = vec![format!("rotate labels by {s} so the opposite ray is last")];
    let mut g = build_standard(&work);
    let sum_m = work.sum_m() as usize;
    let m = work.m().to_vec();
    let widx = m[..ii].iter().sum::<i64>() as usize + m[ii] as usize - 1;
    let w = g.cycles[widx].clone();

    // 1. move W_{ii, m_ii} right to the end; the full pass leaves it fixed
    for p in widx..g.cycles.len() - 1 {
        g = hurwitz_move(&g, p, HurwitzDirection::Right)?;
        script.push(format!("right Hurwitz move at {p}"));
    }
    let end = g.cycles.len() - 1;
    if g.cycles[end] != w {
        return Err(FibrationError::ScriptPreconditionFailed(
            "meridian not fixed by the full monodromy pass".into(),
        ));
    }
    // after the move the longitudes sit at base..base+k-1, meridian at end
    let base = sum_m - 1;
    // 2. mutate V_{k-1}, ..., V_{ii+1} over the meridian: each picks up
    // tau^{-1}_W
    for t in (ii + 1..k).rev() {
        g = hurwitz_move(&g, base + t, HurwitzDirection::Right)?;
        script.push(format!("right Hurwitz move at {}", base + t));
    }
    // 3. carry the meridian left over V_ii, ..., V_0
    for p in (base..=base + ii).rev() {
        g = hurwitz_move(&g, p, HurwitzDirection::Left)?;
        script.push(format!("left Hurwitz move at {p}"));
    }
    let carried = &g.cycles[base];
    let wk = CurveClass::meridian(k, k - 1);
    if !carried.eq_up_to_sign(&wk) {
        return Err(FibrationError::ScriptPreconditionFailed(format!(
            "carried meridian is {carried:?}, expected +-W_k"
        )));
    }
    // compare against the transformed profile
    let mut n2 = work.n();
    let mut m2 = m;
    n2[ii] -= 1;
    n2[k - 1] += 1;
    m2[ii] -= 1;
    m2[k - 1] += 1;
    let expected = build_standard_from_profile(&n2, &m2);
    if !g.eq_up_to_sign(&expected) {
        return Err(FibrationError::ScriptPreconditionFailed(
            "script output does not match the transformed standard fibration".into(),
        ));
    }
    Ok((g, script))
}

// ---------------------------------------------------------------------------
// Non-toric destabilisation pipeline
// ---------------------------------------------------------------------------

/// Trace of the pipeline: human-readable script plus labelled snapshots of
/// the cycle list (in particular the state just before each destabilisation).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineTrace {
    pub script: Vec<String>,
    pub snapshots: Vec<(String, Vec<CurveClass>)>,
}

struct Pipeline {
    f: Fibration,
    trace: PipelineTrace,
    junk: usize, // cycles accumulated before V_0
}

impl Pipeline {
    fn mv(&mut self, p: usize, dir: HurwitzDirection) -> Result<(), FibrationError> {
        self.f = hurwitz_move(&self.f, p, dir)?;
        self.trace.script.push(format!(
            "{} Hurwitz move at {p}",
            if dir == HurwitzDirection::Left { "left" } else { "right" }
        ));
        Ok(())
    }

    fn snapshot(&mut self, label: &str) {
        self.trace
            .snapshots
            .push((label.to_string(), self.f.cycles.clone()));
    }

    fn expect(&self, idx: usize, pattern: &CurveClass, what: &str) -> Result<(), FibrationError> {
        if !self.f.cycles[idx].eq_up_to_sign(pattern) {
            return Err(FibrationError::ScriptPreconditionFailed(format!(
                "{what}: found {:?}, expected +-{pattern:?}",
                self.f.cycles[idx]
            )));
        }
        Ok(())
    }

    fn destab(&mut self, s: usize, slot: usize) -> Result<(), FibrationError> {
        self.f = destabilize(&self.f, s, slot)?;
        self.trace
            .script
            .push(format!("destabilise cycle {s}, slot {slot}"));
        Ok(())
    }
}

/// Appendix destabilisation pipeline: runs the move lists for the blow-down
/// sequence recorded in the report, destabilising once per blown-down
/// component.
pub fn nontoric_destab_pipeline(
    model: &ToricModel,
    report: &BlowdownReport,
) -> Result<(Fibration, PipelineTrace), FibrationError> {
    let _ = model;
    let norm = &report.normalised;
    let mut p = Pipeline {
        f: build_standard(norm),
        trace: PipelineTrace {
            script: Vec::new(),
            snapshots: Vec::new(),
        },
        junk: 0,
    };
    let mut rest: VecDeque<(i64, i64)> = norm
        .n()
        .iter()
        .zip(norm.m())
        .map(|(n, m)| (*n, *m))
        .collect();
    if report.blowdown_seq.first() != Some(&1) {
        return Err(FibrationError::ScriptPreconditionFailed(
            "blow-down sequence must start with component 1".into(),
        ));
    }
    let mut prev_copies = pipeline_first(&mut p, &mut rest)?;
    let mut chain_round = 2usize;
    let mut idx = 1usize;
    while idx < report.blowdown_seq.len() {
        let target = report.blowdown_seq[idx];
        match report.case {
            CaseLabel::C2bi | CaseLabel::C2bii if target == 3 => {
                pipeline_nonchain(&mut p, prev_copies, &mut rest)?;
                prev_copies = 0;
            }
            CaseLabel::C2bi if target == 2 => {
                pipeline_nonchain_final(&mut p)?;
            }
            _ => {
                if target != chain_round {
                    return Err(FibrationError::ScriptPreconditionFailed(format!(
                        "unexpected blow-down target {target} in chain case"
                    )));
                }
                prev_copies = pipeline_chain(&mut p, prev_copies, &mut rest)?;
                chain_round += 1;
            }
        }
        idx += 1;
    }
    Ok((p.f, p.trace))
}

// "Destabilising D~_1": returns the number of l(1,0,...,0,1) copies left
// after the destabilisation (= m_1).
fn pipeline_first(
    p: &mut Pipeline,
    rest: &mut VecDeque<(i64, i64)>,
) -> Result<usize, FibrationError> {
    let k = p.f.k;
    let (n1, m1) = rest.pop_front().unwrap();
    if n1 - m1 != -1 {
        return Err(FibrationError::ScriptPreconditionFailed(format!(
            "component 1 has n - m = {}, expected -1",
            n1 - m1
        )));
    }
    let m1 = m1 as usize;
    let sum_m: usize = m1 + rest.iter().map(|(_, m)| *m).sum::<i64>() as usize;
    // 1. move every meridian to the end, working from the one adjacent to
    // V_0; each travels past all k longitudes and the full monodromy pass
    // leaves it fixed
    for round in 0..sum_m {
        let pos = sum_m - 1 - round;
        let w = p.f.cycles[pos].clone();
        for q in pos..pos + k {
            p.mv(q, HurwitzDirection::Right)?;
        }
        if p.f.cycles[pos + k] != w {
            return Err(FibrationError::ScriptPreconditionFailed(
                "meridian not fixed by monodromy pass".into(),
            ));
        }
    }
    // layout: V_0..V_{k-1}, W_1 block (m1), W_{>=2}
    // 2. mutate V_{k-1}, ..., V_1 over the W_1 block
    for t in (1..k).rev() {
        for step in 0..m1 {
            p.mv(t + step, HurwitzDirection::Right)?;
        }
    }
    // layout: V_0, W_1 block, V_1', ..., V_{k-1}', W_{>=2}
    // 3. mutate the W_1 copies over V_1' (the copy adjacent to V_1' first)
    for pos in (1..=m1).rev() {
        p.mv(pos, HurwitzDirection::Right)?;
    }
    // layout: V_0, V_1', Q x m1, V_2', ..., V_{k-1}', W_{>=2}
    let mut ve = vec![0i64; k];
    ve[0] = -1;
    ve[1] = 1;
    ve[k - 1] += 1;
    p.expect(1, &CurveClass::longitude(ve), "V_E after meridian passes")?;
    // 4. S_E = tau_{V_0} V_E
    p.mv(0, HurwitzDirection::Left)?;
    p.expect(0, &stabilizing_pattern(k, 0), "S_E")?;
    p.snapshot("pre-destabilisation");
    p.destab(0, 0)?;
    p.junk = 0;
    Ok(m1)
}

// one chain iteration: blow down the current leading component, which must
// have n - m = -2
fn pipeline_chain(
    p: &mut Pipeline,
    prev_copies: usize,
    rest: &mut VecDeque<(i64, i64)>,
) -> Result<usize, FibrationError> {
    let k = p.f.k;
    let (nc, mc) = rest.pop_front().unwrap();
    if nc - mc != -2 {
        return Err(FibrationError::ScriptPreconditionFailed(format!(
            "chain component has n - m = {}, expected -2",
            nc - mc
        )));
    }
    let mc = mc as usize;
    // layout: junk, V_0, P x prev_copies, X block, W blocks; a left move at
    // the position of V_0 deposits tau_{V_0} P before it and walks V_0 right
    // a. mutate each P over V_0; they join the junk
    for _ in 0..prev_copies {
        p.mv(p.junk, HurwitzDirection::Left)?;
        p.junk += 1;
    }
    let nx = k - 1; // surviving longitudes besides V_0
    let xs = p.junk + 1;
    // b. mutate the X's (innermost first) over the W block of the leading
    // component
    for x in (0..nx).rev() {
        for step in 0..mc {
            p.mv(xs + x + step, HurwitzDirection::Right)?;
        }
    }
    // layout: junk, V_0, W block (mc), X_2', ...
    // c. mutate the W copies over X_2' (the copy adjacent to it first)
    for pos in (xs..xs + mc).rev() {
        p.mv(pos, HurwitzDirection::Right)?;
    }
    // layout: junk, V_0, X_2', Q x mc, ...
    let mut ve = vec![0i64; k];
    ve[0] = -1;
    ve[1] = 1;
    ve[k - 1] += 1;
    p.expect(xs, &CurveClass::longitude(ve), "X_2 image")?;
    // d. S = tau_{V_0} X_2'
    p.mv(p.junk, HurwitzDirection::Left)?;
    p.expect(p.junk, &stabilizing_pattern(k, 0), "S_E (chain)")?;
    // e. mutate every junk cycle over S (right moves bring S to the front)
    for q in (0..p.junk).rev() {
        p.mv(q, HurwitzDirection::Right)?;
    }
    p.snapshot("pre-destabilisation");
    p.destab(0, 0)?;
    Ok(mc)
}

// non-chain second blow-down, case (2.b): current state must be the k = 3
// list (V_0, P, X_2, X_3, W_2 block, W_3)
fn pipeline_nonchain(
    p: &mut Pipeline,
    prev_copies: usize,
    rest: &mut VecDeque<(i64, i64)>,
) -> Result<(), FibrationError> {
    if p.f.k != 3 || prev_copies != 1 || p.junk != 0 {
        return Err(FibrationError::ScriptPreconditionFailed(
            "non-chain script expects the k = 3 state with one P copy".into(),
        ));
    }
    let (_n2, m2) = rest.pop_front().unwrap();
    let (n3, m3) = rest.pop_front().unwrap();
    if m3 != 1 || n3 - m3 != -1 {
        return Err(FibrationError::ScriptPreconditionFailed(
            "non-chain blow-down needs (n_3, m_3) = (0, 1)".into(),
        ));
    }
    let m2 = m2 as usize;
    // layout: V_0, P, X_2, X_3, W_2 x m2, W_3
    // commute W_3 left past the W_2 block (trivial moves)
    for q in (4..4 + m2).rev() {
        p.mv(q, HurwitzDirection::Right)?;
    }
    // mutate X_3, X_2, P over W_3
    p.mv(3, HurwitzDirection::Right)?;
    p.mv(2, HurwitzDirection::Right)?;
    p.mv(1, HurwitzDirection::Right)?;
    // mutate W_3 back over l(1,-1,1)
    p.expect(2, &CurveClass::longitude(vec![1, -1, 1]), "l(1,-1,1)")?;
    p.mv(1, HurwitzDirection::Right)?;
    // S_{E_3} = tau_{V_0} l(1,-1,1)
    p.mv(0, HurwitzDirection::Left)?;
    p.expect(0, &stabilizing_pattern(3, 1), "S_E (non-chain)")?;
    p.snapshot("pre-destabilisation");
    p.destab(0, 1)?;
    Ok(())
}

// final blow-down of case (2.b.i): state must be l(0,0), l(1,1), l(-2,1),
// l(-1,2)
fn pipeline_nonchain_final(p: &mut Pipeline) -> Result<(), FibrationError> {
    if p.f.k != 2 || p.f.cycles.len() != 4 {
        return Err(FibrationError::ScriptPreconditionFailed(
            "final (2.b.i) script expects four cycles on two punctures".into(),
        ));
    }
    p.expect(2, &CurveClass::longitude(vec![-2, 1]), "l(-2,1)")?;
    p.expect(3, &CurveClass::longitude(vec![-1, 2]), "l(-1,2)")?;
    p.mv(2, HurwitzDirection::Right)?; // l(-2,1) over l(-1,2): +-l(0,3)
    p.mv(0, HurwitzDirection::Left)?; // tau_{V_0} l(1,1) = +-l(-1,-1)
    p.mv(1, HurwitzDirection::Left)?; // tau_{V_0} l(-1,2) = S_{E_2}
    p.mv(0, HurwitzDirection::Right)?; // l(-1,-1) over S_{E_2}
    p.expect(0, &stabilizing_pattern(2, 0), "S_E (2.b.i final)")?;
    p.snapshot("pre-destabilisation");
    p.destab(0, 0)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Bounded Hurwitz-equivalence search
// ---------------------------------------------------------------------------

fn sign_normalise(c: &CurveClass) -> CurveClass {
    let lead = std::iter::once(c.r).chain(c.d.iter().copied()).find(|&x| x != 0);
    match lead {
        Some(x) if x < 0 => c.neg(),
        _ => c.clone(),
    }
}

fn search_key(f: &Fibration) -> Vec<(i64, Vec<i64>)> {
    f.cycles
        .iter()
        .map(|c| {
            let n = sign_normalise(c);
            (n.r, n.d)
        })
        .collect()
}

// does a global meridional word with entries in [-bound, bound] carry `a`
// onto `b` up to per-cycle sign?
fn meridional_match(a: &Fibration, b: &Fibration, bound: i64) -> Option<Vec<i64>> {
    let k = a.k;
    let mut word: Option<Vec<i64>> = None;
    // derive the word from the first cycle of nonzero rank
    for (x, y) in a.cycles.iter().zip(&b.cycles) {
        if x.r == 0 {
            continue;
        }
        for cand in [y.clone(), y.neg()] {
            if cand.r != x.r {
                continue;
            }
            let mut w = vec![0i64; k];
            let mut ok = true;
            for t in 0..k {
                let diff = cand.d[t] - x.d[t];
                if diff % x.r != 0 {
                    ok = false;
                    break;
                }
                w[t] = diff / x.r;
                if w[t].abs() > bound {
                    ok = false;
                    break;
                }
            }
            if ok {
                word = Some(w);
                break;
            }
        }
        break;
    }
    let word = word.unwrap_or_else(|| vec![0; k]);
    let shifted: Vec<CurveClass> = a
        .cycles
        .iter()
        .map(|c| apply_meridional_word(c, &word))
        .collect();
    if shifted
        .iter()
        .zip(&b.cycles)
        .all(|(x, y)| x.eq_up_to_sign(y))
    {
        Some(word)
    } else {
        None
    }
}

/// Breadth-first search over Hurwitz moves (with a global meridional word,
/// entries bounded by 2, allowed at the point of comparison). Returns a
/// script if found within the depth bound; exhaustion is a normal outcome.
pub fn hurwitz_equiv_search(a: &Fibration, b: &Fibration, depth: usize) -> Option<Vec<String>> {
    if a.k != b.k || a.cycles.len() != b.cycles.len() || a.cycles.len() < 2 {
        return if a.cycles.len() < 2 && a.k == b.k && a.cycles.len() == b.cycles.len() {
            meridional_match(a, b, 2).map(|_| Vec::new())
        } else {
            None
        };
    }
    // necessary-condition pre-filter: monodromy trace is invariant
    let trace = |m: Vec<Vec<i64>>| -> i64 { (0..m.len()).map(|i| m[i][i]).sum() };
    if trace(total_monodromy(a)) != trace(total_monodromy(b)) {
        return None;
    }
    let mut frontier = vec![(a.clone(), Vec::<String>::new())];
    let mut seen: HashSet<Vec<(i64, Vec<i64>)>> = HashSet::new();
    seen.insert(search_key(a));
    for _ in 0..=depth {
        let mut next = Vec::new();
        for (f, script) in &frontier {
            if let Some(word) = meridional_match(f, b, 2) {
                let mut out = script.clone();
                if word.iter().any(|&w| w != 0) {
                    out.push(format!("meridional word {word:?}"));
                }
                return Some(out);
            }
            for p in 0..f.cycles.len() - 1 {
                for dir in [HurwitzDirection::Left, HurwitzDirection::Right] {
                    let g = hurwitz_move(f, p, dir).unwrap();
                    let key = search_key(&g);
                    if seen.insert(key) {
                        let mut s = script.clone();
                        s.push(format!(
                            "{} Hurwitz move at {p}",
                            if dir == HurwitzDirection::Left { "left" } else { "right" }
                        ));
                        next.push((g, s));
                    }
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    None
}
