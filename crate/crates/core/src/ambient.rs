//! The coordinate system on S³(1) adapted to the Clifford torus.
//!
//! Everything here is a closed formula: the parametrization of the sphere
//! minus two orthogonal circles, its pulled-back metric and Christoffel
//! symbols, the reflection/rotation group of the construction, the Killing
//! field generating rotations in the plane of the two real axes, and
//! great-circle geodesics.
//!
//! R^4 is identified with C^2 with the component layout
//! `(Re z1, Im z1, Re z2, Im z2)`; this layout is fixed here once and used by
//! every other module.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_4, PI};
use std::ops::{Add, Mul, Neg, Sub};

pub const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Period of the chart in each of the two angular coordinates.
pub const PERIOD: f64 = SQRT2 * PI;

// ---------------------------------------------------------------------------
// small vector type
// ---------------------------------------------------------------------------

/// A point or vector in R^4.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vec4(pub [f64; 4]);

impl Vec4 {
    pub const ZERO: Vec4 = Vec4([0.0; 4]);

    pub fn dot(self, o: Vec4) -> f64 {
        self.0[0] * o.0[0] + self.0[1] * o.0[1] + self.0[2] * o.0[2] + self.0[3] * o.0[3]
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalize(self) -> Vec4 {
        self * (1.0 / self.norm())
    }

    /// Generalized cross product: orthogonal to all three arguments, with
    /// `det[a, b, c, out] >= 0`.
    pub fn cross(a: Vec4, b: Vec4, c: Vec4) -> Vec4 {
        let m = |i: usize, j: usize, k: usize| -> f64 {
            a.0[i] * (b.0[j] * c.0[k] - b.0[k] * c.0[j])
                - a.0[j] * (b.0[i] * c.0[k] - b.0[k] * c.0[i])
                + a.0[k] * (b.0[i] * c.0[j] - b.0[j] * c.0[i])
        };
        Vec4([-m(1, 2, 3), m(0, 2, 3), -m(0, 1, 3), m(0, 1, 2)])
    }

    /// Geodesic distance on the unit sphere.
    pub fn sphere_dist(self, o: Vec4) -> f64 {
        self.dot(o).clamp(-1.0, 1.0).acos()
    }
}

impl Add for Vec4 {
    type Output = Vec4;
    fn add(self, o: Vec4) -> Vec4 {
        Vec4([
            self.0[0] + o.0[0],
            self.0[1] + o.0[1],
            self.0[2] + o.0[2],
            self.0[3] + o.0[3],
        ])
    }
}

impl Sub for Vec4 {
    type Output = Vec4;
    fn sub(self, o: Vec4) -> Vec4 {
        Vec4([
            self.0[0] - o.0[0],
            self.0[1] - o.0[1],
            self.0[2] - o.0[2],
            self.0[3] - o.0[3],
        ])
    }
}

impl Mul<f64> for Vec4 {
    type Output = Vec4;
    fn mul(self, s: f64) -> Vec4 {
        Vec4([self.0[0] * s, self.0[1] * s, self.0[2] * s, self.0[3] * s])
    }
}

impl Neg for Vec4 {
    type Output = Vec4;
    fn neg(self) -> Vec4 {
        self * -1.0
    }
}

// ---------------------------------------------------------------------------
// domain types
// ---------------------------------------------------------------------------

/// A point of the chart domain R x R x (-pi/4, pi/4).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl DomainPoint {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if z.abs() >= FRAC_PI_4 {
            return Err(Error::Domain(format!(
                "|z| = {} must be strictly less than pi/4",
                z.abs()
            )));
        }
        Ok(DomainPoint { x, y, z })
    }
}

/// A point on the unit 3-sphere.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmbientPoint(pub Vec4);

impl AmbientPoint {
    /// Tolerance on the unit-norm invariant.
    pub const NORM_TOL: f64 = 1e-12;

    pub fn new(v: Vec4) -> Result<Self> {
        if (v.norm() - 1.0).abs() > Self::NORM_TOL {
            return Err(Error::Domain(format!(
                "point has norm {} but must lie on the unit sphere",
                v.norm()
            )));
        }
        Ok(AmbientPoint(v))
    }
}

/// A tangent vector of S³ at a base point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmbientTangent {
    pub base: AmbientPoint,
    pub vector: Vec4,
}

impl AmbientTangent {
    pub fn new(base: AmbientPoint, vector: Vec4) -> Result<Self> {
        if base.0.dot(vector).abs() > 1e-12 * (1.0 + vector.norm()) {
            return Err(Error::Domain(
                "vector is not tangent to the sphere at its base point".into(),
            ));
        }
        Ok(AmbientTangent { base, vector })
    }
}

// ---------------------------------------------------------------------------
// the parametrization and its frame
// ---------------------------------------------------------------------------

/// The chart map onto S³(1) minus the two orthogonal circles.
pub fn phi_map(p: DomainPoint) -> AmbientPoint {
    let c = (p.z + FRAC_PI_4).cos();
    let s = (p.z + FRAC_PI_4).sin();
    let (sy, cy) = (SQRT2 * p.y).sin_cos();
    let (sx, cx) = (SQRT2 * p.x).sin_cos();
    AmbientPoint(Vec4([c * cy, c * sy, s * cx, s * sx]))
}

/// The coordinate frame pushed to R^4: `(d_x, d_y, d_z)` at `p`.
pub fn frame(p: DomainPoint) -> [Vec4; 3] {
    let c = (p.z + FRAC_PI_4).cos();
    let s = (p.z + FRAC_PI_4).sin();
    let (sy, cy) = (SQRT2 * p.y).sin_cos();
    let (sx, cx) = (SQRT2 * p.x).sin_cos();
    let dx = Vec4([0.0, 0.0, -SQRT2 * s * sx, SQRT2 * s * cx]);
    let dy = Vec4([-SQRT2 * c * sy, SQRT2 * c * cy, 0.0, 0.0]);
    let dz = Vec4([-s * cy, -s * sy, c * cx, c * sx]);
    [dx, dy, dz]
}

/// Diagonal metric components, the four nonzero Christoffel symbols, and the
/// frame determinant at height `z`.
#[derive(Clone, Copy, Debug)]
pub struct MetricData {
    /// `(g_xx, g_yy, g_zz) = (1 + sin 2z, 1 - sin 2z, 1)`.
    pub g: [f64; 3],
    /// `Gamma^1_13`.
    pub g113: f64,
    /// `Gamma^2_23`.
    pub g223: f64,
    /// `Gamma^3_11`.
    pub g311: f64,
    /// `Gamma^3_22`.
    pub g322: f64,
    /// `det[Phi, Phi_x, Phi_y, Phi_z] = cos 2z`.
    pub det: f64,
}

pub fn ambient_metric(z: f64) -> Result<MetricData> {
    if z.abs() >= FRAC_PI_4 {
        return Err(Error::Domain(format!(
            "metric degenerates: |z| = {} >= pi/4",
            z.abs()
        )));
    }
    let s2 = (2.0 * z).sin();
    let c2 = (2.0 * z).cos();
    Ok(MetricData {
        g: [1.0 + s2, 1.0 - s2, 1.0],
        g113: c2 / (1.0 + s2),
        g223: -c2 / (1.0 - s2),
        g311: -c2,
        g322: c2,
        det: c2,
    })
}

// ---------------------------------------------------------------------------
// the Killing field
// ---------------------------------------------------------------------------

/// Ambient form of the Killing field: `-Re z2 e1 + Re z1 e2`, the generator
/// of rotations in the plane of the two real axes.
pub fn killing_field_ambient(p: AmbientPoint) -> AmbientTangent {
    let v = p.0 .0;
    AmbientTangent {
        base: p,
        vector: Vec4([-v[2], 0.0, v[0], 0.0]),
    }
}

/// Coordinate coefficients `(K^x, K^y, K^z)` of the same field.
pub fn killing_field_coeffs(p: DomainPoint) -> Result<[f64; 3]> {
    if p.z.abs() >= FRAC_PI_4 {
        return Err(Error::Domain("Killing coefficients undefined".into()));
    }
    let t = p.z + FRAC_PI_4;
    let (sx, cx) = (SQRT2 * p.x).sin_cos();
    let (sy, cy) = (SQRT2 * p.y).sin_cos();
    Ok([
        -(1.0 / SQRT2) * (t.cos() / t.sin()) * sx * cy,
        (1.0 / SQRT2) * (t.sin() / t.cos()) * cx * sy,
        cx * cy,
    ])
}

/// Coordinate form of the Killing field pushed to R^4.
pub fn killing_field_domain(p: DomainPoint) -> Result<AmbientTangent> {
    let k = killing_field_coeffs(p)?;
    let f = frame(p);
    let v = f[0] * k[0] + f[1] * k[1] + f[2] * k[2];
    Ok(AmbientTangent {
        base: phi_map(p),
        vector: v,
    })
}

/// Flow of the Killing field for time `s`: the rotation it generates, applied
/// exactly.
pub fn killing_flow(p: Vec4, s: f64) -> Vec4 {
    let (sn, cs) = s.sin_cos();
    let v = p.0;
    Vec4([
        cs * v[0] - sn * v[2],
        v[1],
        sn * v[0] + cs * v[2],
        v[3],
    ])
}

// ---------------------------------------------------------------------------
// symmetries
// ---------------------------------------------------------------------------

/// A generator of the symmetry group, acting on the chart domain and on the
/// sphere equivariantly.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SymmetryElement {
    /// `(x, y, z) -> (x + c, y, z)`; rotates the second complex coordinate.
    TranslateX(f64),
    /// `(x, y, z) -> (x, y + c, z)`; rotates the first complex coordinate.
    TranslateY(f64),
    /// Reflection about the plane `x = c`.
    ReflectX(f64),
    /// Reflection about the plane `y = c`.
    ReflectY(f64),
    /// `(x, y, z) -> (y, x, -z)`; swaps the two complex coordinates.
    ReflectZ,
}

impl SymmetryElement {
    pub fn apply_domain(self, p: DomainPoint) -> DomainPoint {
        match self {
            SymmetryElement::TranslateX(c) => DomainPoint {
                x: p.x + c,
                ..p
            },
            SymmetryElement::TranslateY(c) => DomainPoint {
                y: p.y + c,
                ..p
            },
            SymmetryElement::ReflectX(c) => DomainPoint {
                x: 2.0 * c - p.x,
                ..p
            },
            SymmetryElement::ReflectY(c) => DomainPoint {
                y: 2.0 * c - p.y,
                ..p
            },
            SymmetryElement::ReflectZ => DomainPoint {
                x: p.y,
                y: p.x,
                z: -p.z,
            },
        }
    }

    pub fn apply_ambient(self, p: AmbientPoint) -> AmbientPoint {
        let v = p.0 .0;
        let rot = |re: f64, im: f64, angle: f64| -> (f64, f64) {
            let (s, c) = angle.sin_cos();
            (c * re - s * im, s * re + c * im)
        };
        let w = match self {
            SymmetryElement::TranslateX(c) => {
                let (re, im) = rot(v[2], v[3], SQRT2 * c);
                [v[0], v[1], re, im]
            }
            SymmetryElement::TranslateY(c) => {
                let (re, im) = rot(v[0], v[1], SQRT2 * c);
                [re, im, v[2], v[3]]
            }
            SymmetryElement::ReflectX(c) => {
                let (re, im) = rot(v[2], -v[3], SQRT2 * 2.0 * c);
                [v[0], v[1], re, im]
            }
            SymmetryElement::ReflectY(c) => {
                let (re, im) = rot(v[0], -v[1], SQRT2 * 2.0 * c);
                [re, im, v[2], v[3]]
            }
            SymmetryElement::ReflectZ => [v[2], v[3], v[0], v[1]],
        };
        AmbientPoint(Vec4(w))
    }

    /// Push a tangent vector through the (linear, orthogonal) ambient action.
    pub fn apply_tangent(self, v: Vec4) -> Vec4 {
        // The ambient actions are linear, so acting on the vector components
        // directly is the differential.
        let p = self.apply_ambient(AmbientPoint(v));
        p.0
    }
}

/// Composition of symmetry elements, applied right to left.
#[derive(Clone, Debug, Default)]
pub struct SymmetryWord(pub Vec<SymmetryElement>);

impl SymmetryWord {
    pub fn apply_domain(&self, p: DomainPoint) -> DomainPoint {
        self.0.iter().rev().fold(p, |q, s| s.apply_domain(q))
    }

    pub fn apply_ambient(&self, p: AmbientPoint) -> AmbientPoint {
        self.0.iter().rev().fold(p, |q, s| s.apply_ambient(q))
    }
}

// ---------------------------------------------------------------------------
// geodesics
// ---------------------------------------------------------------------------

/// Great-circle exponential map: `cos(|v|) p + sin(|v|) v/|v|`.
pub fn geodesic_exp(p: AmbientPoint, v: &AmbientTangent) -> AmbientPoint {
    let n = v.vector.norm();
    if n == 0.0 {
        return p;
    }
    let (s, c) = n.sin_cos();
    AmbientPoint(p.0 * c + v.vector * (s / n))
}

/// Great-circle exponential from raw components; `dir` must be unit and
/// orthogonal to `p`.
pub fn geodesic_exp_raw(p: Vec4, dir: Vec4, dist: f64) -> Vec4 {
    let (s, c) = dist.sin_cos();
    p * c + dir * s
}
