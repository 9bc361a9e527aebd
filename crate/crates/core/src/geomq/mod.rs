//! Fundamental forms, normals and mean curvature of the initial surface:
//! analytically per chart and discretely on the mesh, plus the normal
//! perturbation machinery and the weighted curvature-estimate checks.

pub mod charts;
pub mod discrete;
pub mod fields;
pub mod linearize;

pub use charts::{chart_shape, jet_shape, Ambient, Chart, ShapeEntry};
pub use discrete::{
    discrete_mean_curvature, interior_mask, mesh_l2_relative, perturb_normal, PerturbedMesh,
};

use crate::ambient::{frame, phi_map, DomainPoint, Vec4};
use crate::initsurf::{derive_params, ChartPoint, Region, Resolutions, SurfaceMesh};
use crate::Result;
use serde::{Deserialize, Serialize};

/// Per-vertex analytic curvature data of a mesh.
#[derive(Clone, Debug)]
pub struct ShapeData {
    pub entries: Vec<ShapeEntry>,
}

impl ShapeData {
    pub fn h(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.h).collect()
    }
    pub fn a2(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.a2).collect()
    }
}

/// Analytic fundamental forms at every mesh vertex.
pub fn shape_data(mesh: &SurfaceMesh) -> Result<ShapeData> {
    let p = &mesh.params;
    let mut entries = Vec::with_capacity(mesh.num_vertices());
    for v in &mesh.vertices {
        let (chart, u, w) = Chart::of_vertex(p, &v.chart);
        let e = chart_shape(&chart, u, w, Ambient::Round)?;
        entries.push(e);
    }
    Ok(ShapeData { entries })
}

/// A closed structured mesh of the torus `z = c` (the Clifford torus for
/// `c = 0`), `n x n` quads with center vertices, used as a curvature and
/// linearization test bed. Chart coordinates refer to [`Chart::Level`], not
/// to the glued graph chart.
pub fn level_torus_mesh(c: f64, n: usize) -> (SurfaceMesh, Vec<bool>) {
    use crate::initsurf::{BoundaryEdge, MeshSkeleton, RegionLabel, Vertex};
    let params = derive_params(4, 0.0, None, 0.5, Resolutions::default()).unwrap();
    let period = crate::ambient::PERIOD;
    let h = period / n as f64;
    let mut vertices = Vec::with_capacity(n * n);
    let mut make_vertex = |x: f64, y: f64| {
        let domain = DomainPoint { x, y, z: c };
        let ambient = phi_map(domain).0;
        let normal = frame(domain)[2];
        Vertex {
            chart: ChartPoint::Sheet { upper: true, x, y },
            domain,
            ambient,
            normal,
            r: 1.0,
            t_under: params.a_bar,
            rho: 1.0,
            f_tilde: 1.0,
            region: RegionLabel {
                region: Region::S1Upper,
                x_lower: 0.0,
                x_upper: 0.0,
                x_min: 0.0,
            },
        }
    };
    assert!(n % 2 == 0, "level torus grid must be even for the checkerboard");
    for i in 0..n {
        for j in 0..n {
            vertices.push(make_vertex(i as f64 * h, j as f64 * h));
        }
    }
    let grid = |i: usize, j: usize| ((i % n) * n + j % n) as u32;
    let mut triangles = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            let (c00, c01, c10, c11) = (grid(i, j), grid(i, j + 1), grid(i + 1, j), grid(i + 1, j + 1));
            if (i + j) % 2 == 0 {
                triangles.push([c00, c01, c11]);
                triangles.push([c00, c11, c10]);
            } else {
                triangles.push([c00, c01, c10]);
                triangles.push([c01, c11, c10]);
            }
        }
    }
    // orient against the stored normals
    for t in &mut triangles {
        let pa = vertices[t[0] as usize].ambient;
        let pb = vertices[t[1] as usize].ambient;
        let pc = vertices[t[2] as usize].ambient;
        let nt = Vec4::cross(pa, pb - pa, pc - pa);
        let refn = vertices[t[0] as usize].normal;
        if nt.dot(refn) < 0.0 {
            t.swap(1, 2);
        }
    }
    let nv = vertices.len();
    let id: Vec<u32> = (0..nv as u32).collect();
    let mesh = SurfaceMesh {
        id: u64::MAX,
        params,
        grid: crate::initsurf::GridKind::PeriodicTorus { n },
        skeleton: MeshSkeleton {
            n_theta: 0,
            n_axial: 0,
            n_ann: 0,
            n_blend: 0,
            upper_rings: 0,
            lower_rings: 0,
            num_vertices: nv,
        },
        vertices,
        triangles,
        boundary_edges: Vec::<BoundaryEdge>::new(),
        perm_reflect_x: id.clone(),
        perm_reflect_y: id.clone(),
        perm_reflect_z: id,
    };
    let mask = vec![true; nv];
    (mesh, mask)
}

// ---------------------------------------------------------------------------
// estimate verification
// ---------------------------------------------------------------------------

/// One weighted sup: the supremum of `|quantity| / weight` over a vertex
/// class, which is the empirical constant of the corresponding estimate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightedSup {
    pub name: String,
    pub sup: f64,
    /// Number of vertices that entered the sup.
    pub count: usize,
}

/// Curvature-estimate section of the diagnostics report: each entry is the
/// empirical constant of one weighted bound, to be compared across lattice
/// sizes for stability.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EstimateReport {
    pub m: u32,
    pub sups: Vec<WeightedSup>,
}

impl EstimateReport {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.sups.iter().find(|s| s.name == name).map(|s| s.sup)
    }
}

/// Evaluate the weighted curvature sups on the initial surface.
pub fn verify_estimates(mesh: &SurfaceMesh, shape: &ShapeData) -> EstimateReport {
    let p = &mesh.params;
    let tau = p.tau;
    let mut sups: Vec<WeightedSup> = Vec::new();
    let mut push = |name: &str, it: &mut dyn Iterator<Item = f64>| {
        let mut sup: f64 = 0.0;
        let mut count = 0;
        for v in it {
            sup = sup.max(v);
            count += 1;
        }
        sups.push(WeightedSup {
            name: name.to_string(),
            sup,
            count,
        });
    };

    // |rho^{-2} H| against (tau + rho^{-2}) (|z| + tau)
    push(
        "h_weighted",
        &mut mesh.vertices.iter().zip(&shape.entries).map(|(v, e)| {
            let ri2 = 1.0 / (v.rho * v.rho);
            (ri2 * e.h).abs() / ((tau + ri2) * (v.domain.z.abs() + tau))
        }),
    );

    // | |A|^2 - 2 tau^2 rho^4 | against 1 + tau rho^2
    push(
        "a2_weighted",
        &mut mesh.vertices.iter().zip(&shape.entries).map(|(v, e)| {
            let r4 = v.rho.powi(4);
            (e.a2 - 2.0 * tau * tau * r4).abs() / (1.0 + tau * v.rho * v.rho)
        }),
    );

    // f_tilde^{-1} |rho^{-2} H| / tau
    push(
        "h_norm_over_tau",
        &mut mesh.vertices.iter().zip(&shape.entries).map(|(v, e)| {
            (e.h / (v.rho * v.rho)).abs() / (v.f_tilde * tau)
        }),
    );

    // |z| against |z| + tau (bounded by 1)
    push(
        "z_weighted",
        &mut mesh
            .vertices
            .iter()
            .map(|v| v.domain.z.abs() / (v.domain.z.abs() + tau)),
    );

    // metric h against the Gauss-map pullback on the bridge core S_0[0]:
    // both tensors computed analytically in the (t, theta) chart, compared
    // relative to the Gauss scale sech^2 t, normalized by tau.
    push(
        "h_vs_gauss_on_s0",
        &mut mesh
            .vertices
            .iter()
            .zip(&shape.entries)
            .filter(|(v, _)| {
                matches!(v.region.region, Region::S0)
                    && matches!(v.chart, ChartPoint::Bridge { .. })
            })
            .map(|(v, e)| {
                let t = match v.chart {
                    ChartPoint::Bridge { t, .. } => t,
                    _ => unreachable!(),
                };
                let sech2 = 1.0 / (t.cosh() * t.cosh());
                let scale = (e.a2 + (p.m as f64).powi(2)) / 2.0;
                // h in the chart is scale * g_ab; the Gauss pullback is
                // sech^2 (dt^2 + dth^2)
                let d_tt = (scale * e.g[0] - sech2).abs();
                let d_tth = (scale * e.g[1]).abs();
                let d_thth = (scale * e.g[2] - sech2).abs();
                d_tt.max(d_tth).max(d_thth) / sech2 / tau
            }),
    );

    // metric h against the flat pullback (m^2/2)(dx^2 + dy^2) on S_0[1],
    // normalized by 1/m^2.
    let m2 = (p.m as f64).powi(2);
    push(
        "h_vs_flat_on_s1",
        &mut mesh
            .vertices
            .iter()
            .zip(&shape.entries)
            .filter(|(v, _)| {
                matches!(v.region.region, Region::S1Upper | Region::S1Lower)
                    && matches!(v.chart, ChartPoint::Sheet { .. })
            })
            .map(|(v, e)| {
                let _ = v;
                let scale = (e.a2 + m2) / 2.0;
                let flat = m2 / 2.0;
                let d_xx = (scale * e.g[0] - flat).abs();
                let d_xy = (scale * e.g[1]).abs();
                let d_yy = (scale * e.g[2] - flat).abs();
                d_xx.max(d_xy).max(d_yy) / flat * m2
            }),
    );

    // neck smallness: rho^{-2} |A|^2 and rho^{-2} m^2 against
    // e^{-3 x_min / 2}, normalized by e^{-3b/2}
    let eb = (-1.5 * p.b).exp();
    push(
        "neck_a2_smallness",
        &mut mesh
            .vertices
            .iter()
            .zip(&shape.entries)
            .filter(|(v, _)| {
                matches!(v.region.region, Region::LambdaUpper | Region::LambdaLower)
            })
            .map(|(v, e)| e.a2 / (v.rho * v.rho) * (1.5 * v.region.x_min).exp() / eb),
    );
    push(
        "neck_m2_smallness",
        &mut mesh
            .vertices
            .iter()
            .filter(|v| {
                matches!(v.region.region, Region::LambdaUpper | Region::LambdaLower)
            })
            .map(|v| m2 / (v.rho * v.rho) * (1.5 * v.region.x_min).exp() / eb),
    );

    EstimateReport { m: p.m, sups }
}
