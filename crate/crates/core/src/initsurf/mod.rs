//! Construction of the initial surfaces.
//!
//! Two parallel copies of the Clifford torus at heights `±tau*a` are joined
//! by a lattice of catenoidal bridges of waist radius `tau`. This module
//! derives the scales `(tau_bar, tau, a, a_bar)` from `(m, zeta)`, defines
//! the glued height profile, the conformal weight `rho`, the region
//! decomposition of the fundamental cell, and the norm weight `f_tilde`.

mod mesh;

pub use mesh::{
    build_mesh, triangle_area, BoundaryEdge, ChartPoint, FaceTag, GridKind, MeshSkeleton,
    SurfaceMesh, Vertex,
};

use crate::cutoff;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::ambient::SQRT2;

/// Which constant the conformal weight interpolates to away from the
/// bridges. `TwoM` (the value `2m`) keeps `rho` comparable over unit balls
/// and makes `2 rho^2 / (|A|^2 + m^2)` bounded above and below on the
/// substitute-kernel support; `TwoOverM` is kept for inspection only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum RhoBlend {
    #[default]
    TwoM,
    TwoOverM,
}

/// All scales and resolution knobs of one construction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstructionParams {
    /// Lattice size; the closed surface carries `m^2` bridges.
    pub m: u32,
    /// Displacement parameter; the waist scale is `tau = e^zeta * tau_bar`.
    pub zeta: f64,
    /// Region constant.
    pub b: f64,
    /// Decay exponent of the norm weight, in (0, 1).
    pub gamma: f64,
    /// Circumferential resolution (multiple of 8).
    pub n_theta: usize,
    /// Axial resolution of the bridge (even); 0 selects it from `n_theta`.
    pub n_axial: usize,
    /// Radial resolution knob of the torus charts: the gluing annulus gets
    /// `4 * n_square` log-spaced rings, the outer blend `n_square` rings.
    pub n_square: usize,
    /// Bound for the displacement parameter.
    pub c_bar: f64,
    pub rho_blend: RhoBlend,

    // derived scales
    pub tau_bar: f64,
    pub tau: f64,
    pub a: f64,
    pub a_bar: f64,
}

/// Resolution knobs for [`derive_params`].
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Resolutions {
    pub n_theta: usize,
    pub n_axial: usize,
    pub n_square: usize,
}

impl Default for Resolutions {
    fn default() -> Self {
        Resolutions {
            n_theta: 48,
            n_axial: 0,
            n_square: 12,
        }
    }
}

/// Reference waist scale `tau_bar = m^{-1} e^{-m^2/(4 pi)}`.
pub fn tau_bar_of(m: u32) -> f64 {
    (-(m as f64) * (m as f64) / (4.0 * PI)).exp() / m as f64
}

fn arccosh(x: f64) -> f64 {
    (x + (x * x - 1.0).sqrt()).ln()
}

/// Solve `tau cosh a = 1/m` for `a`.
fn solve_a(m: u32, tau: f64) -> Result<f64> {
    let mt = m as f64 * tau;
    if mt >= 1.0 {
        return Err(Error::Construction(format!(
            "m tau = {mt} >= 1: no catenoid of waist tau reaches radius 1/m"
        )));
    }
    let mut a = arccosh(1.0 / mt);
    // one Newton polish of tau cosh a - 1/m
    for _ in 0..2 {
        let f = tau * a.cosh() - 1.0 / m as f64;
        a -= f / (tau * a.sinh());
    }
    let resid = (tau * a.cosh() - 1.0 / m as f64).abs() * m as f64;
    if resid > 1e-13 {
        return Err(Error::Numerical(format!(
            "waist equation residual {resid} after root polish"
        )));
    }
    Ok(a)
}

/// Derive all construction scales.
///
/// `b = None` picks `min(2, a_bar/4)`, which keeps the region diagnostics
/// admissible at every lattice size; pass an explicit `b` (for example 5)
/// for large `m`.
pub fn derive_params(
    m: u32,
    zeta: f64,
    b: Option<f64>,
    gamma: f64,
    res: Resolutions,
) -> Result<ConstructionParams> {
    if m < 3 {
        return Err(Error::Construction(format!("m = {m} must be at least 3")));
    }
    if !(0.0..1.0).contains(&gamma) || gamma == 0.0 {
        return Err(Error::Config(format!("gamma = {gamma} must lie in (0, 1)")));
    }
    let c_bar = 10.0;
    if zeta.abs() > c_bar {
        return Err(Error::Construction(format!(
            "|zeta| = {} exceeds the displacement bound {c_bar}",
            zeta.abs()
        )));
    }
    if res.n_theta < 8 || res.n_theta % 8 != 0 {
        return Err(Error::Construction(
            "n_theta must be a positive multiple of 8".into(),
        ));
    }
    let tau_bar = tau_bar_of(m);
    let tau = zeta.exp() * tau_bar;
    let a = solve_a(m, tau)?;
    let a_bar = solve_a(m, tau_bar)?;
    let n_axial = if res.n_axial == 0 {
        let target = 2.0 * a_bar / (2.0 * PI / res.n_theta as f64);
        let n = target.ceil() as usize;
        (n + n % 2).max(8)
    } else {
        if res.n_axial % 2 != 0 || res.n_axial < 8 {
            return Err(Error::Construction("n_axial must be even and >= 8".into()));
        }
        res.n_axial
    };
    let b = b.unwrap_or_else(|| (a_bar / 4.0).min(2.0));
    if b <= 0.0 {
        return Err(Error::Config("b must be positive".into()));
    }
    Ok(ConstructionParams {
        m,
        zeta,
        b,
        gamma,
        n_theta: res.n_theta,
        n_axial,
        n_square: res.n_square,
        c_bar,
        rho_blend: RhoBlend::TwoM,
        tau_bar,
        tau,
        a,
        a_bar,
    })
}

impl ConstructionParams {
    /// Same construction at a different displacement, with the grid knobs
    /// unchanged so meshes stay vertex-compatible.
    pub fn with_zeta(&self, zeta: f64) -> Result<ConstructionParams> {
        if zeta.abs() > self.c_bar {
            return Err(Error::Diverged(format!(
                "|zeta| = {} escaped the bound {}",
                zeta.abs(),
                self.c_bar
            )));
        }
        let tau = zeta.exp() * self.tau_bar;
        let a = solve_a(self.m, tau)?;
        Ok(ConstructionParams {
            zeta,
            tau,
            a,
            ..self.clone()
        })
    }

    /// Half-width of the square fundamental cell, `d = pi / (sqrt 2 m)`.
    pub fn cell_half_width(&self) -> f64 {
        PI / (SQRT2 * self.m as f64)
    }

    /// Residual of the displacement-scale identity
    /// `|a + zeta - m^2/(4 pi) - log 2|` together with the bound `tau_bar`
    /// it is compared against.
    pub fn ea_residual(&self) -> (f64, f64) {
        let lhs =
            (self.a + self.zeta - (self.m as f64).powi(2) / (4.0 * PI) - 2f64.ln()).abs();
        (lhs, self.tau_bar)
    }

    /// Coordinate lengths of the transition cylinder for diagnostics offsets
    /// `(x, y)`: `(ell_under, ell)`.
    pub fn neck_lengths(&self, x: f64, y: f64) -> (f64, f64) {
        let lu = self.a_bar - 2.0 * self.b - x - y;
        let l = self.a - (2.0 * self.b + x + y) * self.a / self.a_bar;
        (lu, l)
    }

    /// Residual of the neck-length identity `|ell + 2b + zeta - m^2/(4 pi)|`
    /// and the bound 10 it is compared against.
    pub fn eellm_residual(&self, x: f64, y: f64) -> (f64, f64) {
        let (_, l) = self.neck_lengths(x, y);
        let lhs = (l + 2.0 * self.b + self.zeta - (self.m as f64).powi(2) / (4.0 * PI)).abs();
        (lhs, 10.0)
    }

    /// Largest admissible region offset: `b + max(x, y) < a_bar / 3`.
    pub fn region_offset_admissible(&self, x: f64, y: f64) -> bool {
        self.b + x.max(y) < self.a_bar / 3.0
    }

    /// The catenoid profile `tau * arccosh(r / tau)` for `r >= tau`.
    pub fn profile_cat(&self, r: f64) -> Result<f64> {
        if r < self.tau {
            return Err(Error::Domain(format!(
                "r = {r} below the catenoid waist tau = {}",
                self.tau
            )));
        }
        Ok(self.tau * arccosh(r / self.tau))
    }

    /// Glued profile: equals the catenoid profile near `r = 1/m` and the
    /// constant `tau * a` for `r >= 2/m`.
    pub fn profile_glued(&self, r: f64) -> Result<f64> {
        let m = self.m as f64;
        let pc = self.profile_cat(r)?;
        let cut = cutoff::psi(1.0 / m, 2.0 / m, r)?;
        Ok(pc + cut * (self.tau * self.a - pc))
    }

    /// Glued profile with three derivatives, for analytic charts.
    pub fn profile_glued_jet(&self, r: f64) -> Result<[f64; 4]> {
        let tau = self.tau;
        if r < tau {
            return Err(Error::Domain(format!("r = {r} below the waist")));
        }
        let m = self.m as f64;
        let s = (r * r - tau * tau).sqrt();
        let pc = tau * arccosh(r / tau);
        let pc1 = tau / s;
        let pc2 = -tau * r / (s * s * s);
        let pc3 = tau * (2.0 * r * r + tau * tau) / (s * s * s * s * s);
        let ps = cutoff::psi_jet3(1.0 / m, 2.0 / m, r)?;
        let q = tau * self.a - pc;
        Ok([
            pc + ps[0] * q,
            (1.0 - ps[0]) * pc1 + ps[1] * q,
            (1.0 - ps[0]) * pc2 - 2.0 * ps[1] * pc1 + ps[2] * q,
            (1.0 - ps[0]) * pc3 - 3.0 * ps[1] * pc2 - 3.0 * ps[2] * pc1 + ps[3] * q,
        ])
    }

    /// Conformal weight: `1/r` through the bridge, blending to a constant
    /// away from it.
    pub fn rho(&self, r: f64) -> f64 {
        let m = self.m as f64;
        let target = match self.rho_blend {
            RhoBlend::TwoM => 2.0 * m,
            RhoBlend::TwoOverM => 2.0 / m,
        };
        let cut = cutoff::psi(1.0 / m, 2.0 / m, r).expect("distinct endpoints");
        1.0 / r + cut * (target - 1.0 / r)
    }

    /// Substitute-kernel cut-off at radius `r`.
    pub fn w_of_r(&self, r: f64) -> f64 {
        let m = self.m as f64;
        cutoff::psi(1.0 / m, 2.0 / m, r).expect("distinct endpoints")
    }

    /// Norm weight as a function of `|t_under|`: 1 on the torus region,
    /// exponential through the neck, constant on the bridge core.
    pub fn f_tilde(&self, t_under_abs: f64) -> f64 {
        let g = self.gamma;
        let xbar_c0 = self.a_bar - 2.0 * self.b;
        if t_under_abs >= self.a_bar - self.b {
            1.0
        } else if t_under_abs >= self.b {
            (-g * (self.a_bar - self.b - t_under_abs)).exp()
        } else {
            (-g * xbar_c0).exp()
        }
    }

    /// Weight bounds: lower bound for `f_tilde` (asserted at construction)
    /// and upper bound for `rho * f_tilde` (asymptotic in `m`; reported).
    pub fn weight_bounds(&self) -> WeightBounds {
        let g = self.gamma;
        let f_min = (-g * (self.a_bar - 2.0 * self.b)).exp();
        let rho_f_max = f_min / self.tau; // rho peaks at the waist, where f_tilde is minimal
        WeightBounds {
            f_min,
            f_lower_bound: self.tau_bar.powf(8.0 * g / 9.0 + 1.0 / 9.0),
            rho_f_max,
            rho_f_upper_bound: self.tau_bar.powf(8.0 * g / 9.0 - 1.0),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct WeightBounds {
    pub f_min: f64,
    pub f_lower_bound: f64,
    pub rho_f_max: f64,
    pub rho_f_upper_bound: f64,
}

impl WeightBounds {
    pub fn lower_ok(&self) -> bool {
        self.f_min >= self.f_lower_bound
    }
    pub fn upper_ok(&self) -> bool {
        self.rho_f_max <= self.rho_f_upper_bound
    }
}

// ---------------------------------------------------------------------------
// regions
// ---------------------------------------------------------------------------

/// Which standard or transition region a point of the fundamental cell
/// belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    S0,
    S1Upper,
    S1Lower,
    LambdaUpper,
    LambdaLower,
}

/// Region membership with the neck coordinate offsets.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionLabel {
    pub region: Region,
    /// Distance from the inner circle: `|t_under| - b - x`.
    pub x_lower: f64,
    /// Distance from the outer circle: `a_bar - b - y - |t_under|`.
    pub x_upper: f64,
    /// Distance from the nearer circle.
    pub x_min: f64,
}

/// Classify a point by its `t_under` coordinate.
pub fn region_label(
    params: &ConstructionParams,
    t_under: f64,
    x: f64,
    y: f64,
) -> Result<RegionLabel> {
    if !params.region_offset_admissible(x, y) {
        return Err(Error::DiagnosticsUnavailable(format!(
            "b + max(x, y) = {} is not below a_bar/3 = {}",
            params.b + x.max(y),
            params.a_bar / 3.0
        )));
    }
    let t = t_under.abs();
    let b = params.b;
    let x_lower = t - b - x;
    let x_upper = params.a_bar - b - y - t;
    let region = if t <= b + x {
        Region::S0
    } else if t >= params.a_bar - b - y {
        if t_under >= 0.0 {
            Region::S1Upper
        } else {
            Region::S1Lower
        }
    } else if t_under >= 0.0 {
        Region::LambdaUpper
    } else {
        Region::LambdaLower
    };
    Ok(RegionLabel {
        region,
        x_lower,
        x_upper,
        x_min: x_lower.min(x_upper),
    })
}

// ---------------------------------------------------------------------------
// model maps
// ---------------------------------------------------------------------------

/// Images of the two model maps: the rescaled projection of torus-chart
/// points and the unit-sphere Gauss image of bridge points, plus the model
/// radii used to compare the metric `h` with its limits.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelMaps {
    /// `(m/sqrt2) (x, y)` per torus-chart vertex id.
    pub varpi: Vec<(u32, [f64; 2])>,
    /// Flat Gauss image per bridge vertex id.
    pub gauss: Vec<(u32, [f64; 3])>,
    /// `1 / cosh((b + x) a / a_bar)` at `x = 0`.
    pub r_check_0: f64,
    /// `(m/sqrt2) tau cosh(a - b a / a_bar)` at `x = 0`.
    pub r_tilde_0: f64,
}

/// Model radii for offset `x`.
pub fn model_radii(params: &ConstructionParams, x: f64) -> (f64, f64) {
    let arg = (params.b + x) * params.a / params.a_bar;
    let r_check = 1.0 / arg.cosh();
    let r_tilde =
        params.m as f64 / SQRT2 * params.tau * (params.a - arg).cosh();
    (r_check, r_tilde)
}

pub fn model_maps(params: &ConstructionParams, mesh: &SurfaceMesh) -> ModelMaps {
    let mf = params.m as f64 / SQRT2;
    let mut varpi = Vec::new();
    let mut gauss = Vec::new();
    for (id, v) in mesh.vertices.iter().enumerate() {
        match v.chart {
            ChartPoint::Sheet { x, y, .. } => varpi.push((id as u32, [mf * x, mf * y])),
            ChartPoint::Bridge { t, theta } => {
                let ch = t.cosh();
                gauss.push((
                    id as u32,
                    [-theta.cos() / ch, -theta.sin() / ch, t.sinh() / ch],
                ));
            }
        }
    }
    let (r_check_0, r_tilde_0) = model_radii(params, 0.0);
    ModelMaps {
        varpi,
        gauss,
        r_check_0,
        r_tilde_0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: u32, zeta: f64) -> ConstructionParams {
        derive_params(m, zeta, None, 0.5, Resolutions::default()).unwrap()
    }

    #[test]
    fn reference_scales() {
        // frozen against a 40-digit evaluation of m^{-1} exp(-m^2/(4 pi))
        let p = params(4, 0.0);
        assert!((p.tau_bar - 0.0699808318003).abs() < 1e-12);
        assert!((p.a - 1.94619542586).abs() < 1e-10);
        let (lhs, bound) = p.ea_residual();
        assert!((lhs - 0.020191299).abs() < 1e-8);
        assert!(lhs < bound);

        let p = params(10, 0.0);
        assert!((p.tau_bar - 3.49940592153e-5).abs() < 1e-15);
    }

    #[test]
    fn bisection_oracle_for_a() {
        // independent root bracketing of tau cosh a = 1/m
        for (m, zeta) in [(4u32, 0.0), (6, 0.5), (10, -1.0), (14, 0.0)] {
            let p = params(m, zeta);
            let f = |a: f64| p.tau * a.cosh() - 1.0 / m as f64;
            let (mut lo, mut hi) = (0.0, 60.0);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if f(mid) > 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            assert!(
                (p.a - 0.5 * (lo + hi)).abs() < 1e-12 * (1.0 + p.a),
                "closed form disagrees with bisection at m={m}"
            );
        }
    }

    #[test]
    fn rejects_infeasible_waist() {
        // m tau >= 1 has no admissible catenoid
        assert!(derive_params(3, 2.5, None, 0.5, Resolutions::default()).is_err());
        assert!(derive_params(2, 0.0, None, 0.5, Resolutions::default()).is_err());
    }

    #[test]
    fn profile_values() {
        let p = params(6, 0.0);
        let m = 6.0;
        assert!(p.profile_cat(p.tau).unwrap().abs() < 1e-14);
        // at the seam the glued profile equals the catenoid value tau * a
        let at_seam = p.profile_glued(1.0 / m).unwrap();
        assert!((at_seam - p.tau * p.a).abs() < 1e-15);
        // constant beyond 2/m
        for r in [2.0 / m, 2.5 / m, p.cell_half_width()] {
            assert!((p.profile_glued(r).unwrap() - p.tau * p.a).abs() < 1e-16);
        }
        assert!(p.profile_cat(0.5 * p.tau).is_err());
    }

    #[test]
    fn profile_shape() {
        // The profile rises monotonically through the catenoid and the
        // untouched first third of the gluing band, then returns to the
        // plateau tau * a: a bump of at most tau * log(2), never a fold.
        let p = params(6, 0.0);
        let m = 6.0;
        let d = p.cell_half_width();
        let plateau = p.tau * p.a;
        let mut prev = -1.0;
        for i in 0..10_000 {
            let r = p.tau + (4.0 / (3.0 * m) - p.tau) * i as f64 / 9_999.0;
            let v = p.profile_glued(r).unwrap();
            assert!(v + 1e-15 >= prev, "profile dips at r = {r}");
            prev = v;
        }
        for i in 0..10_000 {
            let r = 4.0 / (3.0 * m) + (d - 4.0 / (3.0 * m)) * i as f64 / 9_999.0;
            let v = p.profile_glued(r).unwrap();
            assert!(v >= plateau - 1e-15);
            assert!(v <= plateau + p.tau * 2f64.ln());
        }
        assert!((p.profile_glued(d).unwrap() - plateau).abs() < 1e-16);
    }

    #[test]
    fn profile_jet_consistency() {
        let p = params(6, 0.0);
        let h = 1e-6;
        for i in 1..60 {
            let r = 1.0 / 6.0 * (1.0 + i as f64 / 59.0); // spans the gluing band
            let j = p.profile_glued_jet(r).unwrap();
            let f = |r: f64| p.profile_glued(r).unwrap();
            assert!((j[0] - f(r)).abs() < 1e-15);
            assert!((j[1] - (f(r + h) - f(r - h)) / (2.0 * h)).abs() < 1e-6);
            assert!((j[2] - (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h)).abs() < 2e-2);
        }
    }

    #[test]
    fn rho_values() {
        let p = params(6, 0.0);
        let m = 6.0;
        // at the waist the cut-off vanishes and rho = 1/r
        assert!((p.rho(p.tau) - 1.0 / p.tau).abs() < 1e-9);
        assert!((p.rho(0.5 / m) - 2.0 * m).abs() < 1e-12);
        // away from the bridge rho is the constant 2m
        assert!((p.rho(2.0 / m) - 2.0 * m).abs() < 1e-12);
        assert!((p.rho(p.cell_half_width()) - 2.0 * m).abs() < 1e-12);
        // the alternative reading interpolates to 2/m instead
        let mut q = p.clone();
        q.rho_blend = RhoBlend::TwoOverM;
        assert!((q.rho(2.0 / m) - 2.0 / m).abs() < 1e-12);
    }

    #[test]
    fn region_examples() {
        let p = params(14, 0.0);
        assert_eq!(region_label(&p, 0.0, 0.0, 0.0).unwrap().region, Region::S0);
        assert_eq!(
            region_label(&p, p.a_bar, 0.0, 0.0).unwrap().region,
            Region::S1Upper
        );
        assert_eq!(
            region_label(&p, -p.a_bar, 0.0, 0.0).unwrap().region,
            Region::S1Lower
        );
        let mid = region_label(&p, p.a_bar / 2.0, 0.0, 0.0).unwrap();
        assert_eq!(mid.region, Region::LambdaUpper);
        assert!((mid.x_lower - (p.a_bar / 2.0 - p.b)).abs() < 1e-12);

        // out-of-range offsets degrade gracefully
        assert!(matches!(
            region_label(&p, 0.0, p.a_bar, 0.0),
            Err(Error::DiagnosticsUnavailable(_))
        ));
    }

    #[test]
    fn neck_length_example_m14() {
        let p = derive_params(14, 0.0, Some(2.0), 0.5, Resolutions::default()).unwrap();
        let (lu, _l) = p.neck_lengths(0.0, 0.0);
        assert!((lu - (p.a_bar - 4.0)).abs() < 1e-12);
        let (lhs, bound) = p.eellm_residual(0.0, 0.0);
        assert!(lhs < bound);
        // the residual is close to log 2
        assert!((lhs - 2f64.ln()).abs() < 0.05);
    }

    #[test]
    fn f_tilde_shape() {
        let p = params(10, 0.0);
        let g = p.gamma;
        assert_eq!(p.f_tilde(p.a_bar), 1.0);
        assert_eq!(p.f_tilde(p.a_bar - p.b), 1.0);
        // value at the inner circle matches the bridge plateau
        let at_c0 = p.f_tilde(p.b);
        assert!((at_c0 - (-g * (p.a_bar - 2.0 * p.b)).exp()).abs() < 1e-15);
        assert_eq!(p.f_tilde(0.0), at_c0);
        // continuity at both interfaces
        for t in [p.b, p.a_bar - p.b] {
            let lo = p.f_tilde(t - 1e-9);
            let hi = p.f_tilde(t + 1e-9);
            assert!((lo - hi).abs() < 1e-8);
        }
    }

    #[test]
    fn weight_lower_bound_holds_at_desk_scale() {
        for m in [6, 10, 14] {
            let p = params(m, 0.0);
            let wb = p.weight_bounds();
            assert!(wb.lower_ok(), "f_tilde lower bound fails at m = {m}");
        }
    }

    #[test]
    fn model_radii_limits() {
        let p = derive_params(10, 0.0, Some(2.0), 0.5, Resolutions::default()).unwrap();
        let (rc, rt) = model_radii(&p, 0.0);
        assert!((rc - 1.0 / ((p.b * p.a / p.a_bar).cosh())).abs() < 1e-15);
        // |R_tilde - 2^{-1/2} e^{-a b / a_bar}| <= tau
        let target = (2.0f64).powf(-0.5) * (-p.a * p.b / p.a_bar).exp();
        assert!((rt - target).abs() <= p.tau);
    }
}
