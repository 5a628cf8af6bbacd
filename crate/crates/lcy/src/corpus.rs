//! Seeded random toric models for the property suites.
//!
//! Models are produced by a corner-blow-up history: start from P^2 or a
//! Hirzebruch surface and blow up random corners until the fan has the
//! requested number of rays, then pick interior blow-up counts. Everything
//! is driven by a ChaCha stream cipher RNG so corpora are reproducible; the
//! seed can be pinned with the `LCY_SEED` environment variable.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fan::{corner_blowup, hirzebruch, neg, p2};
use crate::model::ToricModel;

/// Default corpus seed, used when `LCY_SEED` is unset.
pub const DEFAULT_SEED: u64 = 0x6c63795f32303236; // "lcy_2026"

/// Seed from the `LCY_SEED` environment variable, or [`DEFAULT_SEED`].
pub fn env_seed() -> u64 {
    std::env::var("LCY_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// A fresh deterministic RNG for the given seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One random model: a corner-blow-up history from P^2 or F_a (a <= 4) up to
/// a fan with at most `max_k` rays, with interior counts in `0..=max_m`.
pub fn random_model(rng: &mut ChaCha8Rng, max_k: usize, max_m: i64) -> ToricModel {
    let mut f = if rng.gen_bool(0.25) {
        p2()
    } else {
        hirzebruch(rng.gen_range(0..=4))
    };
    let target = rng.gen_range(f.k()..=max_k.max(f.k()));
    while f.k() < target {
        let i = rng.gen_range(0..f.k());
        f = corner_blowup(&f, i);
    }
    let m = (0..f.k())
        .map(|_| {
            // bias towards small counts; half the rays stay untouched
            if rng.gen_bool(0.5) {
                0
            } else {
                rng.gen_range(1..=max_m.max(1))
            }
        })
        .collect();
    ToricModel::from_fan(f, m).expect("blow-up history yields a valid model")
}

/// The same fan with all interior counts dropped.
pub fn toric_part(model: &ToricModel) -> ToricModel {
    ToricModel::toric(model.fan().clone())
}

/// A reproducible corpus of `count` models.
pub fn random_models(seed: u64, count: usize, max_k: usize, max_m: i64) -> Vec<ToricModel> {
    let mut r = rng(seed);
    (0..count).map(|_| random_model(&mut r, max_k, max_m)).collect()
}

/// A random model together with a ray index eligible for an elementary
/// transformation: `m_i > 0` and `-v_i` is also a ray.
///
/// Histories are seeded from Hirzebruch fans, whose opposite pair of rays
/// survives every corner blow-up, so eligibility can always be forced.
pub fn random_eligible(rng: &mut ChaCha8Rng, max_k: usize, max_m: i64) -> (ToricModel, usize) {
    let mut f = hirzebruch(rng.gen_range(0..=4));
    let target = rng.gen_range(f.k()..=max_k.max(f.k()));
    while f.k() < target {
        let i = rng.gen_range(0..f.k());
        f = corner_blowup(&f, i);
    }
    let mut m: Vec<i64> = (0..f.k())
        .map(|_| if rng.gen_bool(0.5) { 0 } else { rng.gen_range(1..=max_m.max(1)) })
        .collect();
    let candidates: Vec<usize> = (0..f.k())
        .filter(|&i| f.position(neg(f.ray(i))).is_some())
        .collect();
    assert!(!candidates.is_empty());
    let i = candidates[rng.gen_range(0..candidates.len())];
    if m[i] == 0 {
        m[i] = rng.gen_range(1..=max_m.max(1));
    }
    let (model, offset) = ToricModel::new_with_offset(f.rays(), m)
        .expect("blow-up history yields a valid model");
    let k = model.k();
    (model, (i + k - offset) % k)
}

/// A random model with a random valid corner index, for stabilisation checks.
pub fn random_corner(rng: &mut ChaCha8Rng, model: &ToricModel) -> usize {
    rng.gen_range(0..model.k())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::validate_fan;

    #[test]
    fn corpora_are_reproducible() {
        let a = random_models(7, 20, 12, 3);
        let b = random_models(7, 20, 12, 3);
        assert_eq!(a.len(), 20);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.fan().rays(), y.fan().rays());
            assert_eq!(x.m(), y.m());
        }
        let c = random_models(8, 20, 12, 3);
        assert!(a.iter().zip(&c).any(|(x, y)| x.fan().rays() != y.fan().rays() || x.m() != y.m()));
    }

    #[test]
    fn models_are_valid_and_bounded() {
        for model in random_models(DEFAULT_SEED, 50, 12, 4) {
            assert!(model.k() <= 12);
            assert!(validate_fan(model.fan().rays()).is_ok());
            assert!(model.m().iter().all(|&mi| (0..=4).contains(&mi)));
        }
    }

    #[test]
    fn eligible_models_admit_the_transformation() {
        let mut r = rng(3);
        for _ in 0..30 {
            let (model, i) = random_eligible(&mut r, 10, 3);
            assert!(model.m()[i] > 0);
            let v = model.fan().ray(i);
            assert!(model.fan().position(neg(v)).is_some());
        }
    }
}
