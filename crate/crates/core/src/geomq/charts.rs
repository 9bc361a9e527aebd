//! Analytic charts of the initial surface and their fundamental forms.
//!
//! Two independent computations are provided. The coordinate route works in
//! the `(x, y, z)` chart with the closed-form metric and Christoffel
//! symbols; the jet route works directly on the R^4 embedding with
//! truncated-Taylor arithmetic and needs no Christoffels. The two must agree
//! to roundoff, and only the jet route extends to normally perturbed
//! surfaces.

use crate::ambient::{self, DomainPoint, Vec4, SQRT2};
use crate::initsurf::{ChartPoint, ConstructionParams};
use crate::jet::{jet4_cross, jet4_diff, jet4_dot, jet4_scale, Jet, Jet4};
use crate::{Error, Result};
use std::f64::consts::FRAC_PI_4;

/// Which ambient metric the fundamental forms refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    Round,
    /// Euclidean metric on the chart domain; produces the hat quantities.
    Flat,
}

/// An analytic chart of a surface.
#[derive(Clone, Copy, Debug)]
pub enum Chart<'a> {
    /// Catenoid bridge, parameters `(t, theta)`.
    Catenoid(&'a ConstructionParams),
    /// Graph of the glued profile over the cell square, parameters `(x, y)`.
    Graph {
        params: &'a ConstructionParams,
        upper: bool,
    },
    /// Constant-height torus `z = c`, parameters `(x, y)`; `c = 0` is the
    /// Clifford torus. Oriented by `d_z`.
    Level(f64),
}

impl<'a> Chart<'a> {
    pub fn of_vertex(params: &'a ConstructionParams, cp: &ChartPoint) -> (Chart<'a>, f64, f64) {
        match *cp {
            ChartPoint::Bridge { t, theta } => (Chart::Catenoid(params), t, theta),
            ChartPoint::Sheet { upper, x, y } => (Chart::Graph { params, upper }, x, y),
        }
    }
}

/// First and second fundamental forms and derived scalars at a chart point.
#[derive(Clone, Copy, Debug)]
pub struct ShapeEntry {
    /// `(g_uu, g_uv, g_vv)`.
    pub g: [f64; 3],
    /// `(A_uu, A_uv, A_vv)`.
    pub a: [f64; 3],
    /// Unit normal in R^4 (round ambient) or in chart components (flat).
    pub normal: Vec4,
    pub h: f64,
    pub a2: f64,
    /// Area element `sqrt(det g)` in the chart.
    pub sqrt_det_g: f64,
}

/// Chart coordinates with first and second parameter derivatives.
struct DomainJet {
    /// `c[k]` is the coordinate (x, y, z) for k = 0, 1, 2.
    v: [f64; 3],
    du: [f64; 3],
    dv: [f64; 3],
    duu: [f64; 3],
    duv: [f64; 3],
    dvv: [f64; 3],
}

fn domain_jet(chart: &Chart, u: f64, v: f64) -> Result<DomainJet> {
    match chart {
        Chart::Catenoid(p) => {
            let (t, th) = (u, v);
            let tau = p.tau;
            let r = tau * t.cosh();
            let rt = tau * t.sinh();
            let rtt = r;
            let (st, ct) = th.sin_cos();
            Ok(DomainJet {
                v: [r * ct, r * st, tau * t],
                du: [rt * ct, rt * st, tau],
                dv: [-r * st, r * ct, 0.0],
                duu: [rtt * ct, rtt * st, 0.0],
                duv: [-rt * st, rt * ct, 0.0],
                dvv: [-r * ct, -r * st, 0.0],
            })
        }
        Chart::Graph { params: p, upper } => {
            let (x, y) = (u, v);
            let r = (x * x + y * y).sqrt();
            let pj = p.profile_glued_jet(r)?;
            let s = if *upper { 1.0 } else { -1.0 };
            let (xr, yr) = (x / r, y / r);
            Ok(DomainJet {
                v: [x, y, s * pj[0]],
                du: [1.0, 0.0, s * pj[1] * xr],
                dv: [0.0, 1.0, s * pj[1] * yr],
                duu: [0.0, 0.0, s * (pj[2] * xr * xr + pj[1] * yr * yr / r)],
                duv: [0.0, 0.0, s * (pj[2] * xr * yr - pj[1] * xr * yr / r)],
                dvv: [0.0, 0.0, s * (pj[2] * yr * yr + pj[1] * xr * xr / r)],
            })
        }
        Chart::Level(c) => Ok(DomainJet {
            v: [u, v, *c],
            du: [1.0, 0.0, 0.0],
            dv: [0.0, 1.0, 0.0],
            duu: [0.0; 3],
            duv: [0.0; 3],
            dvv: [0.0; 3],
        }),
    }
}

/// Reference direction (in chart components) on the side of the convention
/// normal; only its sign matters.
fn orient_ref(chart: &Chart, dj: &DomainJet) -> [f64; 3] {
    match chart {
        Chart::Catenoid(_) => {
            let r = (dj.v[0] * dj.v[0] + dj.v[1] * dj.v[1]).sqrt();
            // (-cos th, -sin th, sinh t); z_t = tau and |r_t| = tau |sinh t|
            let sinh_abs = dj.du[0].hypot(dj.du[1]) / dj.du[2];
            let sign_t = if dj.v[2] >= 0.0 { 1.0 } else { -1.0 };
            [-dj.v[0] / r, -dj.v[1] / r, sinh_abs * sign_t]
        }
        Chart::Graph { upper, .. } => {
            let s = if *upper { 1.0 } else { -1.0 };
            [-s * dj.du[2], -s * dj.dv[2], s]
        }
        Chart::Level(_) => [0.0, 0.0, 1.0],
    }
}

/// Fundamental forms by the coordinate route.
pub fn chart_shape(chart: &Chart, u: f64, v: f64, ambient: Ambient) -> Result<ShapeEntry> {
    let dj = domain_jet(chart, u, v)?;
    let z = dj.v[2];
    if z.abs() >= FRAC_PI_4 {
        return Err(Error::Domain("chart point outside the coordinate range".into()));
    }
    let (gm, chr) = match ambient {
        Ambient::Round => {
            let m = ambient::ambient_metric(z)?;
            (m.g, [m.g113, m.g223, m.g311, m.g322])
        }
        Ambient::Flat => ([1.0, 1.0, 1.0], [0.0; 4]),
    };

    let tang = [dj.du, dj.dv];
    let mut g = [0.0; 3];
    for (slot, (a, b)) in [(0usize, (0usize, 0usize)), (1, (0, 1)), (2, (1, 1))] {
        g[slot] = (0..3).map(|i| gm[i] * tang[a][i] * tang[b][i]).sum();
    }

    // covariant second derivatives
    let second = [dj.duu, dj.duv, dj.dvv];
    let pair = [(0usize, 0usize), (0, 1), (1, 1)];
    let mut cov = [[0.0; 3]; 3];
    for (slot, &(a, b)) in pair.iter().enumerate() {
        let (ta, tb) = (tang[a], tang[b]);
        cov[slot][0] = second[slot][0] + chr[0] * (ta[0] * tb[2] + ta[2] * tb[0]);
        cov[slot][1] = second[slot][1] + chr[1] * (ta[1] * tb[2] + ta[2] * tb[1]);
        cov[slot][2] = second[slot][2] + chr[2] * ta[0] * tb[0] + chr[3] * ta[1] * tb[1];
    }

    // normal: Euclidean cross of the tangents is the orthogonality covector
    let n_cov = [
        tang[0][1] * tang[1][2] - tang[0][2] * tang[1][1],
        tang[0][2] * tang[1][0] - tang[0][0] * tang[1][2],
        tang[0][0] * tang[1][1] - tang[0][1] * tang[1][0],
    ];
    let mut nu = [n_cov[0] / gm[0], n_cov[1] / gm[1], n_cov[2] / gm[2]];
    let norm = (0..3).map(|i| gm[i] * nu[i] * nu[i]).sum::<f64>().sqrt();
    for x in &mut nu {
        *x /= norm;
    }
    let r = orient_ref(chart, &dj);
    let orient: f64 = (0..3).map(|i| gm[i] * nu[i] * r[i]).sum();
    if orient < 0.0 {
        for x in &mut nu {
            *x = -*x;
        }
    }

    let mut a = [0.0; 3];
    for slot in 0..3 {
        a[slot] = (0..3).map(|i| gm[i] * cov[slot][i] * nu[i]).sum();
    }

    let det = g[0] * g[2] - g[1] * g[1];
    let gi = [g[2] / det, -g[1] / det, g[0] / det];
    let h = gi[0] * a[0] + 2.0 * gi[1] * a[1] + gi[2] * a[2];
    // |A|^2 = tr of the squared shape operator
    let s00 = gi[0] * a[0] + gi[1] * a[1];
    let s01 = gi[0] * a[1] + gi[1] * a[2];
    let s10 = gi[1] * a[0] + gi[2] * a[1];
    let s11 = gi[1] * a[1] + gi[2] * a[2];
    let a2 = s00 * s00 + 2.0 * s01 * s10 + s11 * s11;

    // normal pushed to R^4 for the round metric, left in chart components
    // for the flat one
    let normal = match ambient {
        Ambient::Round => {
            let dp = DomainPoint {
                x: dj.v[0],
                y: dj.v[1],
                z: dj.v[2],
            };
            let f = ambient::frame(dp);
            (f[0] * nu[0] + f[1] * nu[1] + f[2] * nu[2]).normalize()
        }
        Ambient::Flat => Vec4([nu[0], nu[1], nu[2], 0.0]),
    };

    Ok(ShapeEntry {
        g,
        a,
        normal,
        h,
        a2,
        sqrt_det_g: det.sqrt(),
    })
}

// ---------------------------------------------------------------------------
// jet route
// ---------------------------------------------------------------------------

fn cosh_jet(x: Jet) -> Jet {
    let (s, c) = (x.val().sinh(), x.val().cosh());
    x.compose([c, s, c, s])
}

/// Ambient image of the chart as order-3 jets.
pub fn chart_jet(chart: &Chart, u: f64, v: f64) -> Result<Jet4> {
    let (xj, yj, zj): (Jet, Jet, Jet) = match chart {
        Chart::Catenoid(p) => {
            let t = Jet::var(u, 0);
            let th = Jet::var(v, 1);
            let r = cosh_jet(t) * p.tau;
            (r * th.cos(), r * th.sin(), t * p.tau)
        }
        Chart::Graph { params: p, upper } => {
            let x = Jet::var(u, 0);
            let y = Jet::var(v, 1);
            let r = (x * x + y * y).sqrt();
            let pj = p.profile_glued_jet(r.val())?;
            let prof = r.compose(pj);
            let s = if *upper { 1.0 } else { -1.0 };
            (x, y, prof * s)
        }
        Chart::Level(c) => (Jet::var(u, 0), Jet::var(v, 1), Jet::constant(*c)),
    };
    if zj.val().abs() >= FRAC_PI_4 {
        return Err(Error::Domain("chart point outside the coordinate range".into()));
    }
    // Phi(x, y, z)
    let zc = (zj + FRAC_PI_4).cos();
    let zs = (zj + FRAC_PI_4).sin();
    let ys = (yj * SQRT2).sin();
    let yc = (yj * SQRT2).cos();
    let xs = (xj * SQRT2).sin();
    let xc = (xj * SQRT2).cos();
    Ok([zc * yc, zc * ys, zs * xc, zs * xs])
}

/// Everything the jet route produces at a base chart point.
pub struct JetShape {
    pub pos: Jet4,
    /// Unit normal, valid to order 2.
    pub nu: Jet4,
    pub g: [f64; 3],
    pub a: [f64; 3],
    pub h: f64,
    pub a2: f64,
    pub sqrt_det_g: f64,
}

/// Reference normal direction in R^4 used only to fix the sign of the jet
/// normal, from the coordinate route.
fn reference_normal(chart: &Chart, u: f64, v: f64) -> Result<Vec4> {
    Ok(chart_shape(chart, u, v, Ambient::Round)?.normal)
}

pub fn jet_shape(chart: &Chart, u: f64, v: f64) -> Result<JetShape> {
    let pos = chart_jet(chart, u, v)?;
    let refn = reference_normal(chart, u, v)?;
    jet_shape_from(pos, refn)
}

/// Fundamental forms from an order-3 ambient jet; `refn` fixes the sign of
/// the normal.
pub fn jet_shape_from(pos: Jet4, refn: Vec4) -> Result<JetShape> {
    let fu = jet4_diff(&pos, 0);
    let fv = jet4_diff(&pos, 1);
    let g = [
        jet4_dot(&fu, &fu).val(),
        jet4_dot(&fu, &fv).val(),
        jet4_dot(&fv, &fv).val(),
    ];
    let raw = jet4_cross(&pos, &fu, &fv);
    let nn = jet4_dot(&raw, &raw).sqrt();
    let mut nu = jet4_scale(&raw, nn.recip());
    let sign = nu[0].val() * refn.0[0]
        + nu[1].val() * refn.0[1]
        + nu[2].val() * refn.0[2]
        + nu[3].val() * refn.0[3];
    if sign < 0.0 {
        for c in &mut nu {
            *c = -*c;
        }
    }
    let fuu = jet4_diff(&fu, 0);
    let fuv = jet4_diff(&fu, 1);
    let fvv = jet4_diff(&fv, 1);
    let a = [
        jet4_dot(&fuu, &nu).val(),
        jet4_dot(&fuv, &nu).val(),
        jet4_dot(&fvv, &nu).val(),
    ];
    let det = g[0] * g[2] - g[1] * g[1];
    if det <= 0.0 {
        return Err(Error::Numerical("degenerate first fundamental form".into()));
    }
    let gi = [g[2] / det, -g[1] / det, g[0] / det];
    let h = gi[0] * a[0] + 2.0 * gi[1] * a[1] + gi[2] * a[2];
    let s00 = gi[0] * a[0] + gi[1] * a[1];
    let s01 = gi[0] * a[1] + gi[1] * a[2];
    let s10 = gi[1] * a[0] + gi[2] * a[1];
    let s11 = gi[1] * a[1] + gi[2] * a[2];
    Ok(JetShape {
        pos,
        nu,
        g,
        a,
        h,
        a2: s00 * s00 + 2.0 * s01 * s10 + s11 * s11,
        sqrt_det_g: det.sqrt(),
    })
}

/// Mean curvature of a normal perturbation `exp_X(phi nu)` where `phi` is an
/// order-2-valid jet at the same chart point.
pub fn perturbed_mean_curvature(base: &JetShape, phi: Jet) -> Result<f64> {
    let xp = {
        let c = phi.cos();
        let s = phi.sin();
        let a = jet4_scale(&base.pos, c);
        let b = jet4_scale(&base.nu, s);
        [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
    };
    let fu = jet4_diff(&xp, 0);
    let fv = jet4_diff(&xp, 1);
    let g = [
        jet4_dot(&fu, &fu).val(),
        jet4_dot(&fu, &fv).val(),
        jet4_dot(&fv, &fv).val(),
    ];
    let det = g[0] * g[2] - g[1] * g[1];
    if det <= 0.0 {
        return Err(Error::PerturbationTooLarge(
            "perturbed chart is no longer an immersion".into(),
        ));
    }
    let raw = jet4_cross(&xp, &fu, &fv);
    let nn = jet4_dot(&raw, &raw).val().sqrt();
    let mut nu = [
        raw[0].val() / nn,
        raw[1].val() / nn,
        raw[2].val() / nn,
        raw[3].val() / nn,
    ];
    // stay on the same side as the base normal
    let side: f64 = (0..4).map(|i| nu[i] * base.nu[i].val()).sum();
    if side < 0.0 {
        for c in &mut nu {
            *c = -*c;
        }
    }
    let fuu = jet4_diff(&fu, 0);
    let fuv = jet4_diff(&fu, 1);
    let fvv = jet4_diff(&fv, 1);
    let dotv = |f: &Jet4| -> f64 { (0..4).map(|i| f[i].val() * nu[i]).sum() };
    let a = [dotv(&fuu), dotv(&fuv), dotv(&fvv)];
    let gi = [g[2] / det, -g[1] / det, g[0] / det];
    Ok(gi[0] * a[0] + 2.0 * gi[1] * a[1] + gi[2] * a[2])
}

/// Value of `L phi = Delta_g phi + (|A|^2 + 2) phi` for an order-3-valid
/// scalar jet at the same chart point (round ambient).
pub fn linearized_operator(base: &JetShape, phi: Jet) -> f64 {
    let fu = jet4_diff(&base.pos, 0);
    let fv = jet4_diff(&base.pos, 1);
    let guu = jet4_dot(&fu, &fu);
    let guv = jet4_dot(&fu, &fv);
    let gvv = jet4_dot(&fv, &fv);
    let det = guu * gvv - guv * guv;
    let w = det.sqrt();
    let inv_det = det.recip();
    let phi_u = phi.diff(0);
    let phi_v = phi.diff(1);
    // contravariant gradient times the area element
    let pu = w * inv_det * (gvv * phi_u - guv * phi_v);
    let pv = w * inv_det * (guu * phi_v - guv * phi_u);
    let div = pu.diff(0).val() + pv.diff(1).val();
    let lap = div / w.val();
    lap + (base.a2 + 2.0) * phi.val()
}

/// First and second covariant-derivative magnitudes of a scalar jet in the
/// conformally rescaled chart metric `rho^2 g`.
pub fn chi_derivative_magnitudes(base: &JetShape, phi: Jet, rho: f64) -> (f64, f64) {
    let fu = jet4_diff(&base.pos, 0);
    let fv = jet4_diff(&base.pos, 1);
    let guu = jet4_dot(&fu, &fu);
    let guv = jet4_dot(&fu, &fv);
    let gvv = jet4_dot(&fv, &fv);
    let det = (guu * gvv - guv * guv).val();
    let g = [guu.val(), guv.val(), gvv.val()];
    let gi = [g[2] / det, -g[1] / det, g[0] / det];
    let phi_u = phi.diff(0);
    let phi_v = phi.diff(1);
    let grad2 =
        gi[0] * phi_u.val() * phi_u.val() + 2.0 * gi[1] * phi_u.val() * phi_v.val()
            + gi[2] * phi_v.val() * phi_v.val();

    // surface Christoffels from the metric jets
    let dg = |j: Jet, which: usize| j.diff(which).val();
    let d = [
        [dg(guu, 0), dg(guv, 0), dg(gvv, 0)],
        [dg(guu, 1), dg(guv, 1), dg(gvv, 1)],
    ];
    // Gamma^c_{ab} with a,b,c in {0,1}
    let mut gamma = [[[0.0; 2]; 2]; 2];
    for c in 0..2 {
        for a in 0..2 {
            for b in 0..2 {
                let mut s = 0.0;
                for e in 0..2 {
                    let g_ce = if c == 0 {
                        if e == 0 { gi[0] } else { gi[1] }
                    } else if e == 0 {
                        gi[1]
                    } else {
                        gi[2]
                    };
                    let slot = |i: usize, j: usize| i + j; // (0,0)->0 (0,1)/(1,0)->1 (1,1)->2
                    let term = d[a][slot(b, e)] + d[b][slot(a, e)] - d[e][slot(a, b)];
                    s += 0.5 * g_ce * term;
                }
                gamma[c][a][b] = s;
            }
        }
    }
    let p1 = [phi_u.val(), phi_v.val()];
    let hess = |a: usize, b: usize| -> f64 {
        let second = match (a, b) {
            (0, 0) => phi.d2()[0],
            (1, 1) => phi.d2()[2],
            _ => phi.d2()[1],
        };
        second - gamma[0][a][b] * p1[0] - gamma[1][a][b] * p1[1]
    };
    let hmat = [hess(0, 0), hess(0, 1), hess(1, 1)];
    // |H|^2 = g^{ac} g^{bd} H_ab H_cd
    let mut h2 = 0.0;
    let gidx = |i: usize, j: usize| gi[i + j];
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for e in 0..2 {
                    let hab = hmat[a + b];
                    let hce = hmat[c + e];
                    h2 += gidx(a, c) * gidx(b, e) * hab * hce;
                }
            }
        }
    }
    ((grad2.max(0.0)).sqrt() / rho, h2.max(0.0).sqrt() / (rho * rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::initsurf::{derive_params, Resolutions};

    fn params(m: u32) -> ConstructionParams {
        derive_params(m, 0.0, None, 0.5, Resolutions::default()).unwrap()
    }

    #[test]
    fn parallel_torus_mean_curvature() {
        // H = 2 tan 2c with the d_z orientation, |A|^2 = 2 at c = 0
        for c in [-0.3926990816987241, -0.19634954084936207, 0.0, 0.19634954084936207, 0.3926990816987241] {
            // +-pi/8, +-pi/16, 0
            let chart = Chart::Level(c);
            let s = chart_shape(&chart, 0.37, -0.81, Ambient::Round).unwrap();
            assert!(
                (s.h - 2.0 * (2.0 * c).tan()).abs() < 1e-10,
                "H mismatch at c = {c}: {} vs {}",
                s.h,
                2.0 * (2.0 * c).tan()
            );
        }
        let s = chart_shape(&Chart::Level(0.0), 0.1, 0.2, Ambient::Round).unwrap();
        assert!(s.h.abs() < 1e-14);
        assert!((s.a2 - 2.0).abs() < 1e-14);
    }

    #[test]
    fn flat_catenoid_is_minimal_with_exact_a2() {
        let p = params(6);
        let chart = Chart::Catenoid(&p);
        for t in [-2.0, -0.5, 0.0, 1.3, 2.5] {
            let s = chart_shape(&chart, t, 0.9, Ambient::Flat).unwrap();
            assert!(s.h.abs() < 1e-9 / p.tau, "flat catenoid H = {}", s.h);
            // |A_hat|^2 = 2 tau^2 rho^4 with rho = 1/r on the bridge
            let r = p.tau * t.cosh();
            let expect = 2.0 * p.tau * p.tau / (r * r * r * r);
            assert!(
                ((s.a2 - expect) / expect).abs() < 1e-10,
                "flat |A|^2 at t = {t}"
            );
        }
    }

    #[test]
    fn jet_route_matches_coordinate_route() {
        let p = params(6);
        let cases: Vec<(Chart, f64, f64)> = vec![
            (Chart::Catenoid(&p), 0.0, 0.3),
            (Chart::Catenoid(&p), 1.7, 2.0),
            (Chart::Catenoid(&p), -2.9, 5.1),
            (Chart::Graph { params: &p, upper: true }, 0.2, 0.1),
            (Chart::Graph { params: &p, upper: false }, -0.21, 0.13),
            (Chart::Graph { params: &p, upper: true }, 0.19, 0.12),
            (Chart::Level(0.1), 0.4, -0.2),
        ];
        for (chart, u, v) in cases {
            let a = chart_shape(&chart, u, v, Ambient::Round).unwrap();
            let b = jet_shape(&chart, u, v).unwrap();
            let scale = a.h.abs().max(1.0 / p.tau.sqrt());
            assert!(
                (a.h - b.h).abs() < 1e-9 * scale,
                "H: {} vs {} at {u},{v}",
                a.h,
                b.h
            );
            assert!((a.a2 - b.a2).abs() < 1e-8 * (1.0 + a.a2));
            // normals agree
            let mut dot = 0.0;
            for i in 0..4 {
                dot += a.normal.0[i] * b.nu[i].val();
            }
            assert!((dot - 1.0).abs() < 1e-10, "normal dot = {dot}");
        }
    }

    #[test]
    fn ambient_position_is_unit_in_jets() {
        let p = params(6);
        let chart = Chart::Catenoid(&p);
        let pos = chart_jet(&chart, 0.7, 1.1).unwrap();
        let n = jet4_dot(&pos, &pos);
        assert!((n.val() - 1.0).abs() < 1e-14);
        // derivative of |X|^2 vanishes identically
        for k in 1..10 {
            assert!(n.c[k].abs() < 1e-13);
        }
    }

    #[test]
    fn perturbation_by_constant_moves_level_tori() {
        // On the Clifford torus a constant normal perturbation c gives the
        // torus z = c, whose mean curvature is 2 tan 2c.
        let chart = Chart::Level(0.0);
        let base = jet_shape(&chart, 0.3, -0.5).unwrap();
        for c in [0.01, 0.1, 0.3] {
            let h = perturbed_mean_curvature(&base, Jet::constant(c)).unwrap();
            assert!(
                (h - 2.0 * (2.0 * c).tan()).abs() < 1e-11,
                "H({c}) = {h}"
            );
        }
    }

    #[test]
    fn linearized_operator_on_constants() {
        // L 1 = |A|^2 + 2 = 4 on the Clifford torus, matching d/dc of
        // 2 tan 2c at 0.
        let chart = Chart::Level(0.0);
        let base = jet_shape(&chart, 0.25, 0.6).unwrap();
        let l1 = linearized_operator(&base, Jet::constant(1.0));
        assert!((l1 - 4.0).abs() < 1e-12);
        let h = 1e-6;
        let dh = (perturbed_mean_curvature(&base, Jet::constant(h)).unwrap()
            - perturbed_mean_curvature(&base, Jet::constant(-h)).unwrap())
            / (2.0 * h);
        assert!((dh - 4.0).abs() < 1e-8);
    }

    #[test]
    fn laplacian_of_coordinate_mode() {
        // On the flat-in-chart Clifford torus, Delta cos(sqrt2 k x) =
        // -2 k^2 cos(sqrt2 k x) since g_xx = 1 at z = 0.
        let chart = Chart::Level(0.0);
        let (u0, v0) = (0.37, 0.11);
        let base = jet_shape(&chart, u0, v0).unwrap();
        let k = 3.0;
        let phi = (Jet::var(u0, 0) * (SQRT2 * k)).cos();
        let lphi = linearized_operator(&base, phi);
        let expect = (-2.0 * k * k + 4.0) * (SQRT2 * k * u0).cos();
        assert!((lphi - expect).abs() < 1e-10 * (1.0 + expect.abs()));
    }
}
