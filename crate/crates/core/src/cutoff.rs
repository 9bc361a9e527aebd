//! Cut-off functions.
//!
//! `psi(a, b, s)` transitions from 0 near `a` to 1 near `b` through the
//! middle third of the interval. The underlying profile is the quintic
//! `1/2 + (15s - 10s^3 + 3s^5)/16`, clamped outside `[-1, 1]`: it is C²,
//! nondecreasing, and odd about its midpoint, which is all the construction
//! needs for a second-order operator and discrete norms up to order 2.

use crate::{Error, Result};

/// The profile on `[-1, 1]`, extended by its limit values.
pub fn profile(s: f64) -> f64 {
    if s <= -1.0 {
        0.0
    } else if s >= 1.0 {
        1.0
    } else {
        0.5 + (15.0 * s - 10.0 * s * s * s + 3.0 * s * s * s * s * s) / 16.0
    }
}

pub fn profile_d1(s: f64) -> f64 {
    if !(-1.0..=1.0).contains(&s) {
        0.0
    } else {
        let t = 1.0 - s * s;
        15.0 * t * t / 16.0
    }
}

pub fn profile_d2(s: f64) -> f64 {
    if !(-1.0..=1.0).contains(&s) {
        0.0
    } else {
        15.0 * s * (s * s - 1.0) / 4.0
    }
}

pub fn profile_d3(s: f64) -> f64 {
    if !(-1.0..=1.0).contains(&s) {
        0.0
    } else {
        15.0 * (3.0 * s * s - 1.0) / 4.0
    }
}

/// The linear reparametrization sending `a -> -3` and `b -> 3`.
fn lin(a: f64, b: f64, s: f64) -> f64 {
    (6.0 * s - 3.0 * (a + b)) / (b - a)
}

/// Cut-off equal to 0 near `a` and 1 near `b`: identically 0 on the third
/// of the interval adjacent to `a` and identically 1 on the third adjacent
/// to `b`.
pub fn psi(a: f64, b: f64, s: f64) -> Result<f64> {
    if a == b {
        return Err(Error::Argument("cut-off endpoints must differ".into()));
    }
    Ok(profile(lin(a, b, s)))
}

/// Value and first two derivatives of `psi(a, b, .)` at `s`.
pub fn psi_jet(a: f64, b: f64, s: f64) -> Result<[f64; 3]> {
    if a == b {
        return Err(Error::Argument("cut-off endpoints must differ".into()));
    }
    let u = lin(a, b, s);
    let du = 6.0 / (b - a);
    Ok([
        profile(u),
        profile_d1(u) * du,
        profile_d2(u) * du * du,
    ])
}

/// Third derivative as well, for jet evaluation of glued profiles.
pub fn psi_jet3(a: f64, b: f64, s: f64) -> Result<[f64; 4]> {
    if a == b {
        return Err(Error::Argument("cut-off endpoints must differ".into()));
    }
    let u = lin(a, b, s);
    let du = 6.0 / (b - a);
    Ok([
        profile(u),
        profile_d1(u) * du,
        profile_d2(u) * du * du,
        profile_d3(u) * du * du * du,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn endpoint_values() {
        assert_eq!(psi(0.0, 1.0, 0.0).unwrap(), 0.0);
        assert_eq!(psi(0.0, 1.0, 1.0).unwrap(), 1.0);
        // identically 0/1 on the outer thirds
        assert_eq!(psi(0.0, 1.0, 1.0 / 3.0).unwrap(), 0.0);
        assert_eq!(psi(0.0, 1.0, 2.0 / 3.0).unwrap(), 1.0);
        assert_eq!(psi(0.0, 1.0, -5.0).unwrap(), 0.0);
        assert_eq!(psi(0.0, 1.0, 7.0).unwrap(), 1.0);
    }

    #[test]
    fn midpoint_is_half() {
        assert!((psi(0.0, 1.0, 0.5).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_equal_endpoints() {
        assert!(psi(1.0, 1.0, 0.3).is_err());
    }

    #[test]
    fn derivative_consistency() {
        let h = 1e-6;
        for i in 0..100 {
            let s = -0.2 + 1.4 * (i as f64) / 99.0;
            let j = psi_jet(0.0, 1.0, s).unwrap();
            let num1 = (psi(0.0, 1.0, s + h).unwrap() - psi(0.0, 1.0, s - h).unwrap()) / (2.0 * h);
            assert!((j[1] - num1).abs() < 1e-8);
            let num2 = (psi(0.0, 1.0, s + h).unwrap() - 2.0 * psi(0.0, 1.0, s).unwrap()
                + psi(0.0, 1.0, s - h).unwrap())
                / (h * h);
            assert!((j[2] - num2).abs() < 1e-3);
        }
    }

    proptest! {
        #[test]
        fn partition_of_unity(s in -10.0f64..10.0, a in -3.0f64..3.0, w in 0.1f64..3.0) {
            let b = a + w;
            let sum = psi(a, b, s).unwrap() + psi(b, a, s).unwrap();
            prop_assert!((sum - 1.0).abs() < 1e-14);
        }

        #[test]
        fn weakly_monotone(s in -2.0f64..2.0, h in 0.0f64..0.5) {
            prop_assert!(psi(0.0, 1.0, s + h).unwrap() + 1e-15 >= psi(0.0, 1.0, s).unwrap());
        }
    }
}
