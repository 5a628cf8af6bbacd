//! Picard lattice and K-theory of the blown-up surface.
//!
//! Divisor classes live in Z^k (+) Z^{sum m}: coefficients of the pullbacks
//! pi* Dbar_i and of the total-transform exceptional classes Gamma_{ij},
//! modulo the rank-2 relation sublattice {(<u, v_i>)_i (+) 0}. Classes are
//! stored in a Hermite-reduced canonical form so equality is literal.

use crate::fan::{Fan, Vec2};
use crate::model::ToricModel;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PicardError {
    #[error("classes belong to different models")]
    ModelMismatch,
    #[error("coefficient vector has the wrong length")]
    LengthMismatch,
    #[error("index out of range")]
    IndexOutOfRange,
    #[error("entry {0} is not a line bundle class")]
    NonLineBundleEntry(usize),
    #[error("cohomology oracle produced a negative h1 — internal inconsistency")]
    NegativeH1,
    #[error("entry {0} has an exceptional component in its first Chern class")]
    NotToricClass(usize),
}

/// Intersection matrix of the pullback classes pi* Dbar_i.
pub fn toric_matrix(fan: &Fan) -> Vec<Vec<i64>> {
    let k = fan.k();
    let n = crate::fan::self_intersections(fan);
    let mut mat = vec![vec![0i64; k]; k];
    for i in 0..k {
        mat[i][i] = n[i];
        mat[i][(i + 1) % k] += 1;
        mat[i][(i + k - 1) % k] += 1;
    }
    mat
}

// Hermite form of the 2 x k relation matrix with rows (v_i[0])_i, (v_i[1])_i.
// Returns rows with positive pivots, each pivot column cleared below, and the
// entry above the second pivot reduced.
fn relation_hnf(fan: &Fan) -> Vec<Vec<i64>> {
    let k = fan.k();
    let mut rows = vec![
        (0..k).map(|i| fan.ray(i)[0]).collect::<Vec<i64>>(),
        (0..k).map(|i| fan.ray(i)[1]).collect::<Vec<i64>>(),
    ];
    let mut pivot_row = 0;
    for col in 0..k {
        if pivot_row == 2 {
            break;
        }
        // gcd-eliminate this column below pivot_row
        for r in pivot_row + 1..2 {
            while rows[r][col] != 0 {
                if rows[pivot_row][col].abs() > rows[r][col].abs()
                    || rows[pivot_row][col] == 0
                {
                    rows.swap(pivot_row, r);
                }
                if rows[r][col] != 0 {
                    let q = rows[r][col] / rows[pivot_row][col];
                    for c in 0..k {
                        rows[r][c] -= q * rows[pivot_row][c];
                    }
                }
            }
        }
        if rows[pivot_row][col] != 0 {
            if rows[pivot_row][col] < 0 {
                for c in 0..k {
                    rows[pivot_row][c] = -rows[pivot_row][c];
                }
            }
            pivot_row += 1;
        }
    }
    // reduce the first row above the second pivot
    if let Some(p2) = (0..k).find(|&c| rows[1][c] != 0) {
        let q = rows[0][p2].div_euclid(rows[1][p2]);
        for c in 0..k {
            rows[0][c] -= q * rows[1][c];
        }
    }
    rows
}

fn reduce_toric(fan: &Fan, toric: &mut [i64]) {
    for row in relation_hnf(fan) {
        if let Some(c) = row.iter().position(|&x| x != 0) {
            let q = toric[c].div_euclid(row[c]);
            for (t, r) in toric.iter_mut().zip(&row) {
                *t -= q * r;
            }
        }
    }
}

/// A divisor class on the blown-up surface, in canonical reduced form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivClass {
    model: ToricModel,
    toric: Vec<i64>,
    exc: Vec<i64>,
}

impl DivClass {
    pub fn new(model: &ToricModel, toric: &[i64], exc: &[i64]) -> Result<DivClass, PicardError> {
        if toric.len() != model.k() || exc.len() != model.sum_m() as usize {
            return Err(PicardError::LengthMismatch);
        }
        let mut toric = toric.to_vec();
        reduce_toric(model.fan(), &mut toric);
        Ok(DivClass {
            model: model.clone(),
            toric,
            exc: exc.to_vec(),
        })
    }

    pub fn zero(model: &ToricModel) -> DivClass {
        DivClass::new(model, &vec![0; model.k()], &vec![0; model.sum_m() as usize]).unwrap()
    }

    pub fn model(&self) -> &ToricModel {
        &self.model
    }

    pub fn toric_part(&self) -> &[i64] {
        &self.toric
    }

    pub fn exc_part(&self) -> &[i64] {
        &self.exc
    }

    pub fn is_zero(&self) -> bool {
        self.toric.iter().all(|&x| x == 0) && self.exc.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &DivClass) -> Result<DivClass, PicardError> {
        if self.model != other.model {
            return Err(PicardError::ModelMismatch);
        }
        let toric: Vec<i64> = self.toric.iter().zip(&other.toric).map(|(a, b)| a + b).collect();
        let exc: Vec<i64> = self.exc.iter().zip(&other.exc).map(|(a, b)| a + b).collect();
        DivClass::new(&self.model, &toric, &exc)
    }

    pub fn scale(&self, s: i64) -> DivClass {
        let toric: Vec<i64> = self.toric.iter().map(|a| s * a).collect();
        let exc: Vec<i64> = self.exc.iter().map(|a| s * a).collect();
        DivClass::new(&self.model, &toric, &exc).unwrap()
    }

    pub fn sub(&self, other: &DivClass) -> Result<DivClass, PicardError> {
        self.add(&other.scale(-1))
    }
}

/// Pullback class pi* Dbar_i.
pub fn pullback(model: &ToricModel, i: usize) -> DivClass {
    let mut toric = vec![0; model.k()];
    toric[i % model.k()] = 1;
    DivClass::new(model, &toric, &vec![0; model.sum_m() as usize]).unwrap()
}

fn exc_offset(model: &ToricModel, i: usize) -> usize {
    model.m()[..i].iter().sum::<i64>() as usize
}

/// Total transform Gamma_{ij} of the j-th exceptional curve over component i
/// (0 <= j < m_i).
pub fn gamma(model: &ToricModel, i: usize, j: usize) -> DivClass {
    assert!((j as i64) < model.m()[i], "gamma index out of range");
    let mut exc = vec![0; model.sum_m() as usize];
    exc[exc_offset(model, i) + j] = 1;
    DivClass::new(model, &vec![0; model.k()], &exc).unwrap()
}

/// Strict transform class of boundary component i:
/// D~_i = pi* Dbar_i - sum_j Gamma_{ij}.
pub fn dtilde(model: &ToricModel, i: usize) -> DivClass {
    let mut toric = vec![0; model.k()];
    toric[i] = 1;
    let mut exc = vec![0; model.sum_m() as usize];
    let off = exc_offset(model, i);
    for j in 0..model.m()[i] as usize {
        exc[off + j] = -1;
    }
    DivClass::new(model, &toric, &exc).unwrap()
}

/// Canonical class K = -sum_i D~_i.
pub fn canonical_class(model: &ToricModel) -> DivClass {
    let toric = vec![-1; model.k()];
    let exc = vec![1; model.sum_m() as usize];
    DivClass::new(model, &toric, &exc).unwrap()
}

/// Symmetric intersection pairing; well-defined on the quotient because the
/// relation vectors pair to zero with everything.
pub fn intersection_pairing(a: &DivClass, b: &DivClass) -> Result<i64, PicardError> {
    if a.model != b.model {
        return Err(PicardError::ModelMismatch);
    }
    let mat = toric_matrix(a.model.fan());
    let k = a.model.k();
    let mut val = 0;
    for i in 0..k {
        for j in 0..k {
            val += a.toric[i] * mat[i][j] * b.toric[j];
        }
    }
    for (x, y) in a.exc.iter().zip(&b.exc) {
        val -= x * y;
    }
    Ok(val)
}

/// A K-theory class: rank, first Chern class, holomorphic Euler
/// characteristic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KClassY {
    pub r: i64,
    pub c1: DivClass,
    pub chi: i64,
}

fn rr_chi(d: &DivClass) -> i64 {
    let k = canonical_class(d.model());
    let dd = intersection_pairing(d, d).unwrap();
    let dk = intersection_pairing(d, &k).unwrap();
    assert_eq!((dd - dk) % 2, 0, "Riemann-Roch parity");
    1 + (dd - dk) / 2
}

/// The class of the line bundle O(D).
pub fn line_bundle(d: &DivClass) -> KClassY {
    KClassY {
        r: 1,
        chi: rr_chi(d),
        c1: d.clone(),
    }
}

impl KClassY {
    pub fn structure_sheaf(model: &ToricModel) -> KClassY {
        line_bundle(&DivClass::zero(model))
    }

    pub fn model(&self) -> &ToricModel {
        self.c1.model()
    }

    pub fn add(&self, other: &KClassY) -> Result<KClassY, PicardError> {
        Ok(KClassY {
            r: self.r + other.r,
            c1: self.c1.add(&other.c1)?,
            chi: self.chi + other.chi,
        })
    }

    pub fn scale(&self, s: i64) -> KClassY {
        KClassY {
            r: s * self.r,
            c1: self.c1.scale(s),
            chi: s * self.chi,
        }
    }

    pub fn sub(&self, other: &KClassY) -> Result<KClassY, PicardError> {
        self.add(&other.scale(-1))
    }

    /// The divisor witnessing this class as a line bundle class, when the
    /// class is recognisably one (r = 1 and chi consistent with
    /// Riemann-Roch).
    pub fn line_bundle_witness(&self) -> Option<DivClass> {
        if self.r == 1 && self.chi == rr_chi(&self.c1) {
            Some(self.c1.clone())
        } else {
            None
        }
    }
}

/// Euler pairing chi(x, y), the Hirzebruch-Riemann-Roch closed form.
pub fn euler_pairing_y(x: &KClassY, y: &KClassY) -> Result<i64, PicardError> {
    if x.model() != y.model() {
        return Err(PicardError::ModelMismatch);
    }
    let k = canonical_class(x.model());
    let cc = intersection_pairing(&x.c1, &y.c1)?;
    let kcx = intersection_pairing(&k, &x.c1)?;
    Ok(x.r * y.chi + y.r * x.chi - x.r * y.r - cc + kcx * y.r)
}

/// Tensor by the line bundle O(L), exactly on (r, c1, chi).
pub fn tensor(x: &KClassY, l: &DivClass) -> Result<KClassY, PicardError> {
    if x.model() != l.model() {
        return Err(PicardError::ModelMismatch);
    }
    let k = canonical_class(x.model());
    let ll = intersection_pairing(l, l)?;
    let lk = intersection_pairing(l, &k)?;
    let cl = intersection_pairing(&x.c1, l)?;
    assert_eq!((ll - lk) % 2, 0);
    Ok(KClassY {
        r: x.r,
        c1: x.c1.add(&l.scale(x.r))?,
        chi: x.chi + cl + x.r * (ll - lk) / 2,
    })
}

// ---------------------------------------------------------------------------
// Toric cohomology oracle
// ---------------------------------------------------------------------------

/// Cohomology of the torus-invariant divisor sum a_i Dbar_i on the toric
/// surface of the fan: h0 by lattice-point count of the section polytope, h2
/// by Serre duality, h1 from Riemann-Roch.
pub fn toric_cohomology(fan: &Fan, a: &[i64]) -> Result<(i64, i64, i64), PicardError> {
    if a.len() != fan.k() {
        return Err(PicardError::LengthMismatch);
    }
    let h0 = lattice_points(fan, a);
    let ka: Vec<i64> = a.iter().map(|ai| -1 - ai).collect();
    let h2 = lattice_points(fan, &ka);
    let chi = toric_chi(fan, a);
    let h1 = h0 + h2 - chi;
    if h1 < 0 {
        return Err(PicardError::NegativeH1);
    }
    Ok((h0, h1, h2))
}

fn toric_chi(fan: &Fan, a: &[i64]) -> i64 {
    let mat = toric_matrix(fan);
    let k = fan.k();
    let dd: i64 = (0..k)
        .map(|i| (0..k).map(|j| a[i] * mat[i][j] * a[j]).sum::<i64>())
        .sum();
    // K = -sum Dbar_j on the toric surface
    let dk: i64 = -(0..k)
        .map(|i| (0..k).map(|j| a[i] * mat[i][j]).sum::<i64>())
        .sum::<i64>();
    assert_eq!((dd - dk) % 2, 0);
    1 + (dd - dk) / 2
}

// #{u in Z^2 : <u, v_i> >= -a_i for all i}, by scanning the bounding box of
// the pairwise constraint-line intersections (the polytope is bounded since
// the rays span all directions).
fn lattice_points(fan: &Fan, a: &[i64]) -> i64 {
    let k = fan.k();
    let (mut lo_x, mut hi_x) = (i64::MAX, i64::MIN);
    let (mut lo_y, mut hi_y) = (i64::MAX, i64::MIN);
    let mut any = false;
    for i in 0..k {
        for j in i + 1..k {
            let (vi, vj) = (fan.ray(i), fan.ray(j));
            let d = vi[0] * vj[1] - vi[1] * vj[0];
            if d == 0 {
                continue;
            }
            // solve <u, vi> = -a_i, <u, vj> = -a_j over Q
            let xn = -a[i] * vj[1] + a[j] * vi[1];
            let yn = -a[j] * vi[0] + a[i] * vj[0];
            any = true;
            lo_x = lo_x.min(floor_div(xn, d));
            hi_x = hi_x.max(ceil_div(xn, d));
            lo_y = lo_y.min(floor_div(yn, d));
            hi_y = hi_y.max(ceil_div(yn, d));
        }
    }
    if !any || lo_x > hi_x || lo_y > hi_y {
        return 0;
    }
    let mut count = 0;
    for x in lo_x..=hi_x {
        for y in lo_y..=hi_y {
            if (0..k).all(|i| {
                let v = fan.ray(i);
                x * v[0] + y * v[1] >= -a[i]
            }) {
                count += 1;
            }
        }
    }
    count
}

fn floor_div(n: i64, d: i64) -> i64 {
    let q = n / d;
    if (n % d != 0) && ((n < 0) != (d < 0)) {
        q - 1
    } else {
        q
    }
}

fn ceil_div(n: i64, d: i64) -> i64 {
    -floor_div(-n, d)
}

// ---------------------------------------------------------------------------
// Exceptional collections
// ---------------------------------------------------------------------------

/// An ordered list of K-classes; line-bundle witnesses are recognised from
/// the classes themselves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collection {
    pub classes: Vec<KClassY>,
}

/// The standard full exceptional collection of line bundles:
/// O, O(Gamma_{k,m_k}), ..., O(Gamma_{1,1}),
/// pi* O(Dbar_1), ..., pi* O(Dbar_1 + ... + Dbar_{k-1}).
pub fn standard_collection(model: &ToricModel) -> Collection {
    let mut classes = vec![KClassY::structure_sheaf(model)];
    for i in (0..model.k()).rev() {
        for j in (0..model.m()[i] as usize).rev() {
            classes.push(line_bundle(&gamma(model, i, j)));
        }
    }
    let mut partial = DivClass::zero(model);
    for i in 0..model.k() - 1 {
        partial = partial.add(&pullback(model, i)).unwrap();
        classes.push(line_bundle(&partial));
    }
    Collection { classes }
}

/// Full cohomology-vanishing exceptionality oracle for collections of line
/// bundles with purely toric first Chern classes (so on m = 0 models):
/// Ext^*(E_i, E_j) = H^*(E_j - E_i) must vanish in every degree for i > j,
/// and each entry must be exceptional, H^*(O) = (1, 0, 0). Everything is
/// decided by the lattice-point oracle.
pub fn collection_is_exceptional(model: &ToricModel, c: &Collection) -> Result<bool, PicardError> {
    let mut witnesses = Vec::with_capacity(c.classes.len());
    for (i, x) in c.classes.iter().enumerate() {
        if x.model() != model {
            return Err(PicardError::ModelMismatch);
        }
        let w = x
            .line_bundle_witness()
            .ok_or(PicardError::NonLineBundleEntry(i))?;
        if w.exc_part().iter().any(|&e| e != 0) {
            return Err(PicardError::NotToricClass(i));
        }
        witnesses.push(w);
    }
    let fan = model.fan();
    if toric_cohomology(fan, &vec![0; model.k()])? != (1, 0, 0) {
        return Ok(false);
    }
    for i in 0..witnesses.len() {
        for j in 0..i {
            let diff = witnesses[j].sub(&witnesses[i])?;
            if toric_cohomology(fan, diff.toric_part())? != (0, 0, 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Left,
    Right,
}

/// Adjacent mutation at position i (acting on the pair (E_i, E_{i+1})).
pub fn mutate_collection(
    c: &Collection,
    i: usize,
    direction: Direction,
) -> Result<Collection, PicardError> {
    if i + 1 >= c.classes.len() {
        return Err(PicardError::IndexOutOfRange);
    }
    let e = &c.classes[i];
    let f = &c.classes[i + 1];
    let mut classes = c.classes.clone();
    match direction {
        Direction::Left => {
            let chi = euler_pairing_y(e, f)?;
            classes[i] = f.sub(&e.scale(chi))?;
            classes[i + 1] = e.clone();
        }
        Direction::Right => {
            let chi = euler_pairing_y(e, f)?;
            classes[i] = f.clone();
            classes[i + 1] = e.sub(&f.scale(chi))?;
        }
    }
    Ok(Collection { classes })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CollectionOp {
    Tensor(DivClass),
    SerreCycle,
    Dualize,
}

pub fn transform_collection(c: &Collection, op: &CollectionOp) -> Result<Collection, PicardError> {
    match op {
        CollectionOp::Tensor(l) => {
            let classes = c
                .classes
                .iter()
                .map(|x| tensor(x, l))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Collection { classes })
        }
        CollectionOp::SerreCycle => {
            if c.classes.is_empty() {
                return Ok(c.clone());
            }
            let model = c.classes[0].model().clone();
            let mk = canonical_class(&model).scale(-1);
            let mut classes: Vec<KClassY> = c.classes[1..].to_vec();
            classes.push(tensor(&c.classes[0], &mk)?);
            Ok(Collection { classes })
        }
        CollectionOp::Dualize => {
            let mut classes = Vec::with_capacity(c.classes.len());
            for (idx, x) in c.classes.iter().enumerate() {
                let d = x
                    .line_bundle_witness()
                    .ok_or(PicardError::NonLineBundleEntry(idx))?;
                classes.push(line_bundle(&d.scale(-1)));
            }
            classes.reverse();
            Ok(Collection { classes })
        }
    }
}

/// Gram matrix of the Euler pairing of a collection.
pub fn gram_matrix(c: &Collection) -> Result<Vec<Vec<i64>>, PicardError> {
    let n = c.classes.len();
    let mut g = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            g[i][j] = euler_pairing_y(&c.classes[i], &c.classes[j])?;
        }
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// Support functions
// ---------------------------------------------------------------------------

/// Per-cone linear functionals of the support function of sum a_i Dbar_i: for
/// sigma_i = cone(v_i, v_{i+1}), the unique m with <m, v_i> = -a_i,
/// <m, v_{i+1}> = -a_{i+1} (integral by unimodularity).
pub fn support_function(fan: &Fan, a: &[i64]) -> Result<Vec<Vec2>, PicardError> {
    if a.len() != fan.k() {
        return Err(PicardError::LengthMismatch);
    }
    let k = fan.k();
    Ok((0..k)
        .map(|i| {
            let [p, q] = fan.ray(i);
            let [r, s] = fan.ray((i + 1) % k);
            let ai = a[i];
            let aj = a[(i + 1) % k];
            [-ai * s + aj * q, ai * r - aj * p]
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{hirzebruch, p2};

    fn p2_toric() -> ToricModel {
        ToricModel::toric(p2())
    }

    fn p2_m100() -> ToricModel {
        ToricModel::from_fan(p2(), vec![1, 0, 0]).unwrap()
    }

    fn gram_det(c: &Collection) -> i128 {
        let g = gram_matrix(c).unwrap();
        let m: Vec<Vec<i128>> = g
            .into_iter()
            .map(|r| r.into_iter().map(|x| x as i128).collect())
            .collect();
        crate::model::bareiss_det(m)
    }

    #[test]
    fn relation_vectors_reduce_to_zero() {
        let model = p2_toric();
        for u in [[1i64, 0], [0, 1], [3, -2]] {
            let toric: Vec<i64> = (0..3)
                .map(|i| {
                    let v = model.fan().ray(i);
                    u[0] * v[0] + u[1] * v[1]
                })
                .collect();
            let d = DivClass::new(&model, &toric, &[]).unwrap();
            assert!(d.is_zero(), "relation vector for u = {u:?}");
        }
    }

    #[test]
    fn p2_hyperplane_classes_agree() {
        let model = p2_toric();
        assert_eq!(pullback(&model, 0), pullback(&model, 1));
        assert_eq!(pullback(&model, 1), pullback(&model, 2));
    }

    #[test]
    fn intersection_examples() {
        let model = p2_toric();
        let h = pullback(&model, 0);
        assert_eq!(intersection_pairing(&h, &h), Ok(1));

        let blown = p2_m100();
        let g = gamma(&blown, 0, 0);
        let d1 = dtilde(&blown, 0);
        assert_eq!(intersection_pairing(&g, &d1), Ok(1));
        assert_eq!(intersection_pairing(&pullback(&blown, 0), &g), Ok(0));
        assert_eq!(
            intersection_pairing(&d1, &d1),
            Ok(blown.n()[0] - blown.m()[0])
        );
    }

    #[test]
    fn model_mismatch_detected() {
        let a = pullback(&p2_toric(), 0);
        let b = pullback(&ToricModel::toric(hirzebruch(1)), 0);
        assert_eq!(
            intersection_pairing(&a, &b),
            Err(PicardError::ModelMismatch)
        );
    }

    #[test]
    fn euler_pairing_examples() {
        let model = p2_toric();
        let o = KClassY::structure_sheaf(&model);
        assert_eq!(euler_pairing_y(&o, &o), Ok(1));
        let o1 = line_bundle(&pullback(&model, 0));
        assert_eq!(euler_pairing_y(&o, &o1), Ok(3));
        assert_eq!(euler_pairing_y(&o1, &o), Ok(0));
    }

    #[test]
    fn cohomology_oracle_examples() {
        let fan = p2();
        assert_eq!(toric_cohomology(&fan, &[2, 0, 0]), Ok((6, 0, 0)));
        assert_eq!(toric_cohomology(&fan, &[-1, -1, -1]), Ok((0, 0, 1)));
        assert_eq!(toric_cohomology(&fan, &[0, 0, 0]), Ok((1, 0, 0)));
        assert_eq!(toric_cohomology(&hirzebruch(3), &[0, 0, 0, 0]), Ok((1, 0, 0)));
    }

    #[test]
    fn oracle_matches_riemann_roch() {
        for fan in [p2(), hirzebruch(0), hirzebruch(2)] {
            let k = fan.k();
            for trial in 0..40u64 {
                let a: Vec<i64> = (0..k)
                    .map(|i| ((trial.wrapping_mul(2654435761).wrapping_add(i as u64 * 97)) % 7) as i64 - 2)
                    .collect();
                let (h0, h1, h2) = toric_cohomology(&fan, &a).unwrap();
                assert_eq!(h0 - h1 + h2, toric_chi(&fan, &a), "a = {a:?}");
            }
        }
    }

    #[test]
    fn euler_pairing_matches_oracle_on_toric_line_bundles() {
        let model = p2_toric();
        let o = KClassY::structure_sheaf(&model);
        for a in [[1, 0, 0], [2, 0, 0], [-1, 0, 0], [1, 1, -1]] {
            let d = DivClass::new(&model, &a, &[]).unwrap();
            let (h0, h1, h2) = toric_cohomology(model.fan(), &a).unwrap();
            assert_eq!(
                euler_pairing_y(&o, &line_bundle(&d)).unwrap(),
                h0 - h1 + h2
            );
        }
    }

    #[test]
    fn standard_collection_shapes() {
        let c = standard_collection(&p2_toric());
        assert_eq!(c.classes.len(), 3);
        let c = standard_collection(&p2_m100());
        assert_eq!(c.classes.len(), 4);
        // O, O(Gamma_11), O(Dbar_1), O(Dbar_1 + Dbar_2)
        assert_eq!(c.classes[1].c1, gamma(&p2_m100(), 0, 0));
        let model = ToricModel::from_fan(hirzebruch(2), vec![2, 1, 0, 3]).unwrap();
        let c = standard_collection(&model);
        assert_eq!(c.classes.len(), 1 + 6 + 3);
    }

    #[test]
    fn exceptionality_oracle_on_toric_collections() {
        for model in [
            p2_toric(),
            ToricModel::toric(hirzebruch(0)),
            ToricModel::toric(hirzebruch(3)),
        ] {
            let c = standard_collection(&model);
            assert_eq!(collection_is_exceptional(&model, &c), Ok(true));
            // wrong order: a Hom between swapped neighbours survives
            let mut swapped = c.clone();
            swapped.classes.swap(0, 1);
            assert_eq!(collection_is_exceptional(&model, &swapped), Ok(false));
        }
        // interior classes are outside the toric oracle's reach
        let model = p2_m100();
        let c = standard_collection(&model);
        assert_eq!(
            collection_is_exceptional(&model, &c),
            Err(PicardError::NotToricClass(1))
        );
    }

    #[test]
    fn mutation_exceptional_pair_example() {
        // right mutation of (O_E(-1), O) gives (O, O(E)) at class level
        let model = p2_m100();
        let o = KClassY::structure_sheaf(&model);
        let oe = KClassY {
            r: 0,
            c1: gamma(&model, 0, 0),
            chi: 0,
        };
        let c = Collection {
            classes: vec![oe.clone(), o.clone()],
        };
        let out = mutate_collection(&c, 0, Direction::Right).unwrap();
        assert_eq!(out.classes[0], o);
        assert_eq!(
            out.classes[1],
            KClassY {
                r: 1,
                c1: gamma(&model, 0, 0),
                chi: 1
            }
        );
    }

    #[test]
    fn mutations_mutually_inverse_on_exceptional_collections() {
        let c = standard_collection(&p2_m100());
        for i in 0..c.classes.len() - 1 {
            let lr = mutate_collection(&mutate_collection(&c, i, Direction::Left).unwrap(), i, Direction::Right)
                .unwrap();
            assert_eq!(lr, c);
            let rl = mutate_collection(&mutate_collection(&c, i, Direction::Right).unwrap(), i, Direction::Left)
                .unwrap();
            assert_eq!(rl, c);
        }
    }

    #[test]
    fn mutation_is_unimodular_on_gram() {
        // the change of basis has determinant +-1: check the Gram
        // determinant of the standard collection is preserved up to sign
        let c = standard_collection(&p2_m100());
        let g0 = gram_det(&c);
        let mutated = mutate_collection(&c, 1, Direction::Left).unwrap();
        let g1 = gram_det(&mutated);
        assert_eq!(g0.abs(), g1.abs());
        assert_eq!(g0.abs(), 1);
    }

    #[test]
    fn tensor_example() {
        // tensoring the P^2 standard collection by O(-Dbar_1)
        let model = p2_toric();
        let c = standard_collection(&model);
        let l = pullback(&model, 0).scale(-1);
        let out = transform_collection(&c, &CollectionOp::Tensor(l)).unwrap();
        let h = pullback(&model, 0);
        assert_eq!(out.classes[0], line_bundle(&h.scale(-1)));
        assert_eq!(out.classes[1], KClassY::structure_sheaf(&model));
        assert_eq!(out.classes[2], line_bundle(&h));
    }

    #[test]
    fn dualize_example() {
        let model = p2_toric();
        let c = standard_collection(&model); // O, O(1), O(2)
        let out = transform_collection(&c, &CollectionOp::Dualize).unwrap();
        let h = pullback(&model, 0);
        assert_eq!(out.classes[0], line_bundle(&h.scale(-2)));
        assert_eq!(out.classes[1], line_bundle(&h.scale(-1)));
        assert_eq!(out.classes[2], KClassY::structure_sheaf(&model));
    }

    #[test]
    fn serre_cycle_preserves_gram_determinant() {
        let c = standard_collection(&p2_m100());
        let out = transform_collection(&c, &CollectionOp::SerreCycle).unwrap();
        assert_eq!(gram_det(&c).abs(), 1);
        assert_eq!(gram_det(&out).abs(), 1);
    }

    #[test]
    fn serre_symmetry() {
        // chi(y, x tensor K) = chi(x, y) for line bundle classes
        let model = p2_m100();
        let k = canonical_class(&model);
        let xs = [
            KClassY::structure_sheaf(&model),
            line_bundle(&pullback(&model, 1)),
            line_bundle(&gamma(&model, 0, 0)),
        ];
        for x in &xs {
            for y in &xs {
                let xk = tensor(x, &k).unwrap();
                assert_eq!(
                    euler_pairing_y(y, &xk).unwrap(),
                    euler_pairing_y(x, y).unwrap()
                );
            }
        }
    }

    #[test]
    fn support_function_examples() {
        let fan = p2();
        assert_eq!(
            support_function(&fan, &[1, 0, 0]).unwrap(),
            vec![[-1, 0], [0, 0], [-1, 1]]
        );
        assert_eq!(
            support_function(&fan, &[0, 0, 0]).unwrap(),
            vec![[0, 0], [0, 0], [0, 0]]
        );
    }

    #[test]
    fn support_function_slope_change() {
        // m_{sigma_i} - m_{sigma_{i-1}} = (D . Dbar_i) u_i with
        // <u_i, v_i> = 0, <u_i, v_{i+1}> = -1
        for (fan, a) in [
            (p2(), vec![1, 0, 0]),
            (hirzebruch(2), vec![0, 1, -1, 2]),
        ] {
            let k = fan.k();
            let ms = support_function(&fan, &a).unwrap();
            let mat = toric_matrix(&fan);
            for i in 0..k {
                let prev = ms[(i + k - 1) % k];
                let cur = ms[i];
                let diff = [cur[0] - prev[0], cur[1] - prev[1]];
                let ddi: i64 = (0..k).map(|j| a[j] * mat[j][i]).sum();
                let [p, q] = fan.ray(i);
                let u = [q, -p];
                assert_eq!(diff, [ddi * u[0], ddi * u[1]]);
            }
        }
    }
}
