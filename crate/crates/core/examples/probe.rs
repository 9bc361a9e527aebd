// temporary probe: global and per-zone H error across resolutions
use torus_doubling::geomq::{chart_shape, discrete_mean_curvature, interior_mask, Ambient, Chart, PerturbedMesh};
use torus_doubling::initsurf::{build_mesh, derive_params, ChartPoint, Resolutions};

fn main() {
    for (m, nt, ns) in [(6u32, 32usize, 12usize), (6, 48, 12), (6, 48, 16), (6, 64, 16), (10, 48, 16)] {
        let p = derive_params(m, 0.0, None, 0.5, Resolutions { n_theta: nt, n_axial: 0, n_square: ns }).unwrap();
        let mesh = build_mesh(&p).unwrap();
        let pm = PerturbedMesh::unperturbed(&mesh);
        let hd = discrete_mean_curvature(&pm).unwrap();
        let areas = mesh.lumped_areas();
        let mask = interior_mask(&mesh, 2);
        let mf = p.m as f64;
        let mut num = [0.0f64; 5];
        let mut den = 0.0;
        for (i, v) in mesh.vertices.iter().enumerate() {
            if !mask[i] { continue; }
            let (chart, u, w) = Chart::of_vertex(&p, &v.chart);
            let ha = chart_shape(&chart, u, w, Ambient::Round).unwrap().h;
            let zone = match v.chart {
                ChartPoint::Bridge { .. } => if (v.r - 1.0/mf).abs() < 1e-12 { 1 } else { 0 },
                ChartPoint::Sheet { .. } => {
                    if v.r < 4.0/(3.0*mf) { 1 } else if v.r < 5.0/(3.0*mf) { 2 } else if v.r < 1.8/mf { 3 } else { 4 }
                }
            };
            num[zone] += areas[i] * (hd[i] - ha).powi(2);
            den += areas[i] * ha * ha;
        }
        let tot: f64 = num.iter().sum();
        println!("m={m} nt={nt} ns={ns} nv={}: total={:.4}  bridge/seam/band/outer/blend = {:?}",
            mesh.num_vertices(), (tot/den).sqrt(),
            num.iter().map(|x| format!("{:.4}", (x/den).sqrt())).collect::<Vec<_>>());
    }
}
