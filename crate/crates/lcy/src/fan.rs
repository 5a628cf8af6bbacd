//! Smooth complete fans in Z^2.
//!
//! A fan is an ordered list of primitive rays, counterclockwise, with every
//! consecutive pair a positively oriented basis of Z^2 (det = +1) and total
//! winding one. Fans are stored normalised: the ray with the smallest angle
//! from the positive x-axis comes first, so equal fans compare equal.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A lattice vector in Z^2.
pub type Vec2 = [i64; 2];

/// det(a b) = a_x b_y - a_y b_x.
pub fn det(a: Vec2, b: Vec2) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

pub fn add(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] + b[0], a[1] + b[1]]
}

pub fn neg(a: Vec2) -> Vec2 {
    [-a[0], -a[1]]
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn is_primitive(v: Vec2) -> bool {
    gcd(v[0], v[1]) == 1
}

// Quadrant class for the exact angle order: 0 on the positive x-axis, then
// counterclockwise (upper half plane, negative x-axis, lower half plane).
fn angle_class(v: Vec2) -> u8 {
    match v {
        [x, 0] if x > 0 => 0,
        [_, y] if y > 0 => 1,
        [x, 0] if x < 0 => 2,
        _ => 3,
    }
}

/// Exact "angle from the positive x-axis" order on nonzero vectors.
pub fn angle_cmp(a: Vec2, b: Vec2) -> std::cmp::Ordering {
    angle_class(a)
        .cmp(&angle_class(b))
        .then_with(|| 0.cmp(&det(a, b)))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("a complete fan needs at least three rays")]
    TooFewRays,
    #[error("ray {0} is not a primitive lattice vector")]
    NonPrimitiveRay(usize),
    #[error("consecutive rays {0} and {0}+1 do not span Z^2 with det +1")]
    NotUnimodular(usize),
    #[error("rays are ordered clockwise")]
    NotCounterclockwise,
    #[error("rays do not sweep out the plane exactly once")]
    NotComplete,
    #[error("ray {0} does not have self-intersection -1")]
    NotMinusOneRay(usize),
}

/// A validated smooth complete fan, stored in normalised rotation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    rays: Vec<Vec2>,
}

/// Terminal fan of the minimal model program.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinimalModel {
    P2,
    /// Hirzebruch surface F_a.
    Hirzebruch(i64),
}

impl std::fmt::Display for MinimalModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MinimalModel::P2 => write!(f, "P2"),
            MinimalModel::Hirzebruch(a) => write!(f, "F{a}"),
        }
    }
}

/// Validate a ray list and return the normalised fan.
pub fn validate_fan(rays: &[Vec2]) -> Result<Fan, FanError> {
    Fan::new_with_offset(rays).map(|(fan, _)| fan)
}

impl Fan {
    /// Validate and normalise; also returns how far the input was rotated
    /// left, so per-ray data attached to the input can be rotated alongside.
    pub fn new_with_offset(rays: &[Vec2]) -> Result<(Fan, usize), FanError> {
        if rays.is_empty() {
            return Err(FanError::TooFewRays);
        }
        for (i, &v) in rays.iter().enumerate() {
            if !is_primitive(v) {
                return Err(FanError::NonPrimitiveRay(i));
            }
        }
        let k = rays.len();
        if k < 3 {
            return Err(FanError::TooFewRays);
        }
        let dets: Vec<i64> = (0..k).map(|i| det(rays[i], rays[(i + 1) % k])).collect();
        if dets.iter().all(|&d| d < 0) {
            return Err(FanError::NotCounterclockwise);
        }
        if let Some(i) = dets.iter().position(|&d| d != 1) {
            return Err(FanError::NotUnimodular(i));
        }
        // Winding number: with all consecutive dets +1 the rays advance by
        // less than pi per step, so the winding equals the number of
        // half-open cones [v_i, v_{i+1}) containing u = (1,0).
        let u = [1, 0];
        let hits = (0..k)
            .filter(|&i| det(rays[i], u) >= 0 && det(u, rays[(i + 1) % k]) > 0)
            .count();
        if hits != 1 {
            return Err(FanError::NotComplete);
        }
        let first = (0..k)
            .min_by(|&i, &j| angle_cmp(rays[i], rays[j]))
            .unwrap();
        let mut normalised = rays.to_vec();
        normalised.rotate_left(first);
        Ok((Fan { rays: normalised }, first))
    }

    pub fn k(&self) -> usize {
        self.rays.len()
    }

    pub fn rays(&self) -> &[Vec2] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> Vec2 {
        self.rays[i % self.rays.len()]
    }

    /// Index of a ray vector, if present.
    pub fn position(&self, v: Vec2) -> Option<usize> {
        self.rays.iter().position(|&r| r == v)
    }
}

/// Self-intersection numbers n_i, from v_{i-1} + v_{i+1} + n_i v_i = 0.
pub fn self_intersections(fan: &Fan) -> Vec<i64> {
    let k = fan.k();
    (0..k)
        .map(|i| {
            let s = add(fan.ray((i + k - 1) % k), fan.ray((i + 1) % k));
            let v = fan.ray(i);
            let n = if v[0] != 0 { -s[0] / v[0] } else { -s[1] / v[1] };
            debug_assert_eq!(add(s, [n * v[0], n * v[1]]), [0, 0]);
            n
        })
        .collect()
}

/// Insert the ray v_i + v_{i+1} between positions i and i+1 (cyclic).
pub fn corner_blowup(fan: &Fan, i: usize) -> Fan {
    let k = fan.k();
    let i = i % k;
    let new = add(fan.ray(i), fan.ray((i + 1) % k));
    let mut rays = fan.rays().to_vec();
    rays.insert(i + 1, new);
    validate_fan(&rays).expect("corner blow-up of a valid fan is valid")
}

/// Remove ray i; requires n_i = -1.
pub fn corner_blowdown(fan: &Fan, i: usize) -> Result<Fan, FanError> {
    let i = i % fan.k();
    if self_intersections(fan)[i] != -1 {
        return Err(FanError::NotMinusOneRay(i));
    }
    let mut rays = fan.rays().to_vec();
    rays.remove(i);
    Ok(validate_fan(&rays).expect("blow-down at a -1 ray of a valid fan is valid"))
}

/// Repeatedly blow down the lowest-index (-1)-ray; returns the terminal fan,
/// which one of P^2 / F_a it is, and the blown-down ray vectors in order.
pub fn mmp_reduce(fan: &Fan) -> (Fan, MinimalModel, Vec<Vec2>) {
    let mut fan = fan.clone();
    let mut trace = Vec::new();
    loop {
        let n = self_intersections(&fan);
        match n.iter().position(|&ni| ni == -1) {
            Some(i) => {
                trace.push(fan.ray(i));
                fan = corner_blowdown(&fan, i).unwrap();
            }
            None => break,
        }
    }
    let n = self_intersections(&fan);
    let minimal = match fan.k() {
        3 => MinimalModel::P2,
        4 => MinimalModel::Hirzebruch(*n.iter().max().unwrap()),
        k => unreachable!("minimal smooth complete fan with k = {k}"),
    };
    (fan, minimal, trace)
}

/// The P^2 fan (1,0), (0,1), (-1,-1).
pub fn p2() -> Fan {
    validate_fan(&[[1, 0], [0, 1], [-1, -1]]).unwrap()
}

/// The F_a fan (1,0), (0,1), (-1,-a), (0,-1); self-intersections (0,a,0,-a).
pub fn hirzebruch(a: i64) -> Fan {
    validate_fan(&[[1, 0], [0, 1], [-1, -a], [0, -1]]).unwrap()
}
