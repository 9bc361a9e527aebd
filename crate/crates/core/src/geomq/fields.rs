//! Closed-form scalar fields on the surface, invariant under the full
//! symmetry group, evaluable in jet arithmetic through any chart.
//!
//! The fields are functions of the ambient coordinates only, so they are
//! automatically smooth across charts:
//!
//! * `sin 2z = |z2|^2 - |z1|^2` is a polynomial in the ambient coordinates;
//! * the lattice harmonics `cos(sqrt2 m x)`, `cos(sqrt2 m y)` are
//!   `Re(z2^m)/|z2|^m` and `Re(z1^m)/|z1|^m`, regular wherever the surface
//!   stays away from the two coordinate circles.
//!
//! A configurable power of `(sin 2z / sin 2 tau a)^2` damps the bridge
//! neighborhood: at desk scale a field of unit weighted norm may otherwise
//! displace the waist by many multiples of its radius, leaving the
//! perturbative regime the ladders are probing.

use crate::ambient::Vec4;
use crate::jet::{Jet, Jet4};
use rand::Rng;

/// `c0 + c1 G1 + c2 G2 + c3 G3`, all multiplied by `G1^damping`, where
/// `G1 = (sin 2z / s_ref)^2`, `G2 = cos(sqrt2 m x) + cos(sqrt2 m y)`,
/// `G3 = (sin 2z / s_ref) (cos(sqrt2 m x) - cos(sqrt2 m y))`.
#[derive(Clone, Debug)]
pub struct SymField {
    pub m: u32,
    pub coeffs: [f64; 4],
    pub damping: u32,
    /// Reference value of `sin 2z`, normally `sin(2 tau a)` so the damping
    /// factor is 1 on the torus sheets.
    pub s_ref: f64,
}

impl SymField {
    pub fn random(m: u32, s_ref: f64, damping: u32, rng: &mut impl Rng) -> Self {
        let mut coeffs = [0.0; 4];
        for c in &mut coeffs {
            *c = rng.gen_range(-1.0..1.0);
        }
        SymField {
            m,
            coeffs,
            damping,
            s_ref,
        }
    }

    /// The plain lattice harmonic `cos(sqrt2 m x) + cos(sqrt2 m y)`, an
    /// eigenmode of the linearized operator on the Clifford torus.
    pub fn lattice_harmonic(m: u32) -> Self {
        SymField {
            m,
            coeffs: [0.0, 0.0, 1.0, 0.0],
            damping: 0,
            s_ref: 1.0,
        }
    }

    pub fn eval_jet(&self, x: &Jet4) -> Jet {
        let z1_sq = x[0] * x[0] + x[1] * x[1];
        let z2_sq = x[2] * x[2] + x[3] * x[3];
        let sin2z = z2_sq - z1_sq;
        let g1 = (sin2z * (1.0 / self.s_ref)) * (sin2z * (1.0 / self.s_ref));
        let cosx = cos_m_angle(x[2], x[3], z2_sq, self.m);
        let cosy = cos_m_angle(x[0], x[1], z1_sq, self.m);
        let g2 = cosx + cosy;
        let g3 = (sin2z * (1.0 / self.s_ref)) * (cosx - cosy);
        let mut f = Jet::constant(self.coeffs[0]);
        f = f + g1 * self.coeffs[1];
        f = f + g2 * self.coeffs[2];
        f = f + g3 * self.coeffs[3];
        for _ in 0..self.damping {
            f = f * g1;
        }
        f
    }

    pub fn eval(&self, v: Vec4) -> f64 {
        let x = crate::jet::jet4_constant(v.0);
        self.eval_jet(&x).val()
    }
}

/// `Re((re + i im)^m) / |.|^m` via iterated complex multiplication.
fn cos_m_angle(re: Jet, im: Jet, norm_sq: Jet, m: u32) -> Jet {
    let mut pr = Jet::constant(1.0);
    let mut pi = Jet::constant(0.0);
    for _ in 0..m {
        let nr = pr * re - pi * im;
        let ni = pr * im + pi * re;
        pr = nr;
        pi = ni;
    }
    let scale = if m % 2 == 0 {
        norm_sq.powi((m / 2) as usize)
    } else {
        norm_sq.sqrt().powi(m as usize)
    };
    pr / scale
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::{phi_map, DomainPoint, SymmetryElement, SQRT2};
    use crate::jet::jet4_constant;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn matches_coordinate_expression() {
        let m = 6u32;
        let field = SymField {
            m,
            coeffs: [0.3, -0.2, 0.7, 0.4],
            damping: 1,
            s_ref: 0.05,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let p = DomainPoint {
                x: rng.gen_range(-2.0..2.0),
                y: rng.gen_range(-2.0..2.0),
                z: rng.gen_range(-0.7..0.7),
            };
            let v = phi_map(p).0;
            let got = field.eval(v);
            let s2z = (2.0 * p.z).sin() / field.s_ref;
            let g1 = s2z * s2z;
            let cx = (SQRT2 * m as f64 * p.x).cos();
            let cy = (SQRT2 * m as f64 * p.y).cos();
            let want = (0.3 - 0.2 * g1 + 0.7 * (cx + cy) + 0.4 * s2z * (cx - cy)) * g1;
            assert!(
                (got - want).abs() < 1e-10 * (1.0 + want.abs()),
                "{got} vs {want}"
            );
        }
    }

    #[test]
    fn invariant_under_the_symmetry_group() {
        let m = 6u32;
        let d = PI / (SQRT2 * m as f64);
        let field = SymField {
            m,
            coeffs: [0.1, 0.5, -0.8, 0.6],
            damping: 2,
            s_ref: 0.03,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let syms = [
            SymmetryElement::ReflectX(0.0),
            SymmetryElement::ReflectY(0.0),
            SymmetryElement::ReflectZ,
            SymmetryElement::ReflectX(d),
            SymmetryElement::ReflectY(d),
            SymmetryElement::TranslateX(2.0 * d),
            SymmetryElement::TranslateY(2.0 * d),
        ];
        for _ in 0..100 {
            let p = phi_map(DomainPoint {
                x: rng.gen_range(-2.0..2.0),
                y: rng.gen_range(-2.0..2.0),
                z: rng.gen_range(-0.7..0.7),
            });
            let f0 = field.eval(p.0);
            for s in syms {
                let f1 = field.eval(s.apply_ambient(p).0);
                assert!(
                    (f0 - f1).abs() < 1e-10 * (1.0 + f0.abs()),
                    "not invariant under {s:?}"
                );
            }
        }
    }

    #[test]
    fn jet_derivatives_match_finite_differences() {
        let m = 4u32;
        let field = SymField {
            m,
            coeffs: [0.0, 0.2, 1.0, -0.5],
            damping: 1,
            s_ref: 0.1,
        };
        // evaluate along a 2-parameter family through Phi
        let eval = |u: f64, v: f64| {
            let p = phi_map(DomainPoint {
                x: 0.3 + u,
                y: -0.2 + v,
                z: 0.04 + 0.3 * u - 0.2 * v,
            });
            field.eval(p.0)
        };
        // jets through the same family
        let uj = Jet::var(0.0, 0);
        let vj = Jet::var(0.0, 1);
        let xj = uj + 0.3;
        let yj = vj + (-0.2);
        let zj = uj * 0.3 - vj * 0.2 + 0.04;
        let amb = {
            let zc = (zj + std::f64::consts::FRAC_PI_4).cos();
            let zs = (zj + std::f64::consts::FRAC_PI_4).sin();
            [
                zc * (yj * SQRT2).cos(),
                zc * (yj * SQRT2).sin(),
                zs * (xj * SQRT2).cos(),
                zs * (xj * SQRT2).sin(),
            ]
        };
        let f = field.eval_jet(&amb);
        let h = 1e-5;
        let du = (eval(h, 0.0) - eval(-h, 0.0)) / (2.0 * h);
        let dv = (eval(0.0, h) - eval(0.0, -h)) / (2.0 * h);
        let duu = (eval(h, 0.0) - 2.0 * eval(0.0, 0.0) + eval(-h, 0.0)) / (h * h);
        assert!((f.d1()[0] - du).abs() < 1e-6 * (1.0 + du.abs()));
        assert!((f.d1()[1] - dv).abs() < 1e-6 * (1.0 + dv.abs()));
        assert!((f.d2()[0] - duu).abs() < 1e-3 * (1.0 + duu.abs()));
        let _ = jet4_constant([0.0; 4]);
    }
}
