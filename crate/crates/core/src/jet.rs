//! Bivariate truncated Taylor arithmetic (order 3).
//!
//! A [`Jet`] carries the value and all partial derivatives up to third order
//! of a function of two chart variables. Chart immersions evaluated in jets
//! yield exact-to-roundoff fundamental forms of perturbed surfaces without
//! any hand-derived normal formulas: the unit normal needs second chart
//! derivatives, so the perturbed immersion needs the base immersion to third
//! order.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Multi-index table for coefficients `(i, j)` with `i + j <= 3`, graded order.
const POWS: [(usize, usize); 10] = [
    (0, 0),
    (1, 0),
    (0, 1),
    (2, 0),
    (1, 1),
    (0, 2),
    (3, 0),
    (2, 1),
    (1, 2),
    (0, 3),
];

fn idx(i: usize, j: usize) -> usize {
    match (i, j) {
        (0, 0) => 0,
        (1, 0) => 1,
        (0, 1) => 2,
        (2, 0) => 3,
        (1, 1) => 4,
        (0, 2) => 5,
        (3, 0) => 6,
        (2, 1) => 7,
        (1, 2) => 8,
        (0, 3) => 9,
        _ => unreachable!("multi-index out of range"),
    }
}

/// Taylor coefficients `c[(i,j)] = (1/i!j!) d^{i+j} f / du^i dv^j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub c: [f64; 10],
}

impl Jet {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; 10];
        c[0] = v;
        Jet { c }
    }

    /// The chart variable `which` (0 or 1) with base value `v`.
    pub fn var(v: f64, which: usize) -> Self {
        let mut c = [0.0; 10];
        c[0] = v;
        c[if which == 0 { 1 } else { 2 }] = 1.0;
        Jet { c }
    }

    pub fn val(&self) -> f64 {
        self.c[0]
    }

    /// First derivatives `(f_u, f_v)`.
    pub fn d1(&self) -> [f64; 2] {
        [self.c[1], self.c[2]]
    }

    /// Second derivatives `(f_uu, f_uv, f_vv)`.
    pub fn d2(&self) -> [f64; 3] {
        [2.0 * self.c[3], self.c[4], 2.0 * self.c[5]]
    }

    /// Formal partial derivative; the result is only valid up to order 2.
    pub fn diff(&self, which: usize) -> Jet {
        let mut out = [0.0; 10];
        for (k, &(i, j)) in POWS.iter().enumerate() {
            let (si, sj) = if which == 0 { (i + 1, j) } else { (i, j + 1) };
            if si + sj <= 3 {
                let factor = if which == 0 { si } else { sj } as f64;
                out[k] = factor * self.c[idx(si, sj)];
            }
        }
        Jet { c: out }
    }

    /// Compose a univariate function with this jet, given the function value
    /// and first three derivatives at `self.val()`.
    pub fn compose(&self, f: [f64; 4]) -> Jet {
        let mut d = *self;
        d.c[0] = 0.0;
        let d2 = d * d;
        let d3 = d2 * d;
        let mut out = Jet::constant(f[0]);
        out = out + d * f[1];
        out = out + d2 * (f[2] / 2.0);
        out = out + d3 * (f[3] / 6.0);
        out
    }

    pub fn sin(&self) -> Jet {
        let (s, c) = self.c[0].sin_cos();
        self.compose([s, c, -s, -c])
    }

    pub fn cos(&self) -> Jet {
        let (s, c) = self.c[0].sin_cos();
        self.compose([c, -s, -c, s])
    }

    pub fn exp(&self) -> Jet {
        let e = self.c[0].exp();
        self.compose([e, e, e, e])
    }

    pub fn ln(&self) -> Jet {
        let x = self.c[0];
        self.compose([x.ln(), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x)])
    }

    pub fn sqrt(&self) -> Jet {
        let x = self.c[0];
        let r = x.sqrt();
        self.compose([r, 0.5 / r, -0.25 / (r * x), 0.375 / (r * x * x)])
    }

    pub fn recip(&self) -> Jet {
        let x = self.c[0];
        self.compose([
            1.0 / x,
            -1.0 / (x * x),
            2.0 / (x * x * x),
            -6.0 / (x * x * x * x),
        ])
    }

    pub fn powi(&self, n: usize) -> Jet {
        let mut acc = Jet::constant(1.0);
        for _ in 0..n {
            acc = acc * *self;
        }
        acc
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let mut c = self.c;
        for k in 0..10 {
            c[k] += rhs.c[k];
        }
        Jet { c }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        let mut c = self.c;
        for k in 0..10 {
            c[k] -= rhs.c[k];
        }
        Jet { c }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        let mut c = self.c;
        for v in &mut c {
            *v = -*v;
        }
        Jet { c }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut c = [0.0; 10];
        for (ka, &(ia, ja)) in POWS.iter().enumerate() {
            let a = self.c[ka];
            if a == 0.0 {
                continue;
            }
            for (kb, &(ib, jb)) in POWS.iter().enumerate() {
                let (i, j) = (ia + ib, ja + jb);
                if i + j <= 3 {
                    c[idx(i, j)] += a * rhs.c[kb];
                }
            }
        }
        Jet { c }
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        let mut c = self.c;
        for v in &mut c {
            *v *= rhs;
        }
        Jet { c }
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, rhs: f64) -> Jet {
        let mut c = self.c;
        c[0] += rhs;
        Jet { c }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        self * rhs.recip()
    }
}

/// A 4-vector of jets, the ambient-coordinate image of a chart patch.
pub type Jet4 = [Jet; 4];

pub fn jet4_constant(v: [f64; 4]) -> Jet4 {
    [
        Jet::constant(v[0]),
        Jet::constant(v[1]),
        Jet::constant(v[2]),
        Jet::constant(v[3]),
    ]
}

pub fn jet4_add(a: &Jet4, b: &Jet4) -> Jet4 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

pub fn jet4_scale(a: &Jet4, s: Jet) -> Jet4 {
    [a[0] * s, a[1] * s, a[2] * s, a[3] * s]
}

pub fn jet4_dot(a: &Jet4, b: &Jet4) -> Jet {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

pub fn jet4_diff(a: &Jet4, which: usize) -> Jet4 {
    [
        a[0].diff(which),
        a[1].diff(which),
        a[2].diff(which),
        a[3].diff(which),
    ]
}

/// Generalized cross product in R^4: the vector orthogonal to `a`, `b`, `c`
/// with `det[a, b, c, out] > 0` and length equal to the spanned volume.
pub fn jet4_cross(a: &Jet4, b: &Jet4, c: &Jet4) -> Jet4 {
    let minor = |i: usize, j: usize, k: usize| -> Jet {
        a[i] * (b[j] * c[k] - b[k] * c[j]) - a[j] * (b[i] * c[k] - b[k] * c[i])
            + a[k] * (b[i] * c[j] - b[j] * c[i])
    };
    // Cofactor expansion of det[a; b; c; e_l] along the last row.
    [
        -minor(1, 2, 3),
        minor(0, 2, 3),
        -minor(0, 1, 3),
        minor(0, 1, 2),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn derivatives_of_product_and_composition() {
        // f(u, v) = sin(u v) * exp(u) at (0.3, -0.7)
        let (u0, v0) = (0.3, -0.7);
        let u = Jet::var(u0, 0);
        let v = Jet::var(v0, 1);
        let f = (u * v).sin() * u.exp();

        let h = 1e-5;
        let fval = |u: f64, v: f64| (u * v).sin() * u.exp();
        let fu = (fval(u0 + h, v0) - fval(u0 - h, v0)) / (2.0 * h);
        let fv = (fval(u0, v0 + h) - fval(u0, v0 - h)) / (2.0 * h);
        let fuu = (fval(u0 + h, v0) - 2.0 * fval(u0, v0) + fval(u0 - h, v0)) / (h * h);
        let fuv = (fval(u0 + h, v0 + h) - fval(u0 + h, v0 - h) - fval(u0 - h, v0 + h)
            + fval(u0 - h, v0 - h))
            / (4.0 * h * h);

        assert!(close(f.val(), fval(u0, v0), 1e-14));
        assert!(close(f.d1()[0], fu, 1e-8));
        assert!(close(f.d1()[1], fv, 1e-8));
        assert!(close(f.d2()[0], fuu, 1e-5));
        assert!(close(f.d2()[1], fuv, 1e-5));
    }

    #[test]
    fn formal_derivative_matches_shifted_jet() {
        let (u0, v0) = (0.9, 0.2);
        let u = Jet::var(u0, 0);
        let v = Jet::var(v0, 1);
        let f = (u * u * v + v.sin()).sqrt();
        let g = f.diff(0);
        // d/du sqrt(u^2 v + sin v) = u v / sqrt(...)
        let denom = (u0 * u0 * v0 + v0.sin()).sqrt();
        assert!(close(g.val(), u0 * v0 / denom, 1e-13));
        // second derivatives of g are first-order-consistent pieces of f's third order
        let h = 1e-5;
        let fv = |u: f64, v: f64| (u * u * v + v.sin()).sqrt();
        let guu =
            ((fv(u0 + h, v0) - fv(u0 - h, v0)) / (2.0 * h) - 2.0 * g.val() + (fv(u0, v0))* 0.0)
                .abs(); // placeholder to silence unused warnings
        let _ = guu;
        let g_u = (fv(u0 + h, v0) - 2.0 * fv(u0, v0) + fv(u0 - h, v0)) / (h * h);
        assert!(close(g.d1()[0], g_u, 1e-4));
    }

    #[test]
    fn division_and_reciprocal() {
        let u = Jet::var(1.7, 0);
        let v = Jet::var(-0.4, 1);
        let lhs = (u + v * 2.0) / (u * u + 1.0);
        let rhs = (u + v * 2.0) * (u * u + 1.0).recip();
        for k in 0..10 {
            assert!(close(lhs.c[k], rhs.c[k], 1e-13));
        }
    }

    #[test]
    fn cross4_orthogonality_and_orientation() {
        let a = jet4_constant([1.0, 0.0, 0.0, 0.0]);
        let b = jet4_constant([0.0, 1.0, 0.0, 0.0]);
        let c = jet4_constant([0.0, 0.0, 1.0, 0.0]);
        let d = jet4_cross(&a, &b, &c);
        // det[a,b,c,d] > 0 means d = +e3 here.
        assert!((d[3].val() - 1.0).abs() < 1e-15);
        assert!(d[0].val().abs() + d[1].val().abs() + d[2].val().abs() < 1e-15);

        // Orthogonality for a random triple.
        let p = jet4_constant([0.3, -1.2, 0.5, 0.9]);
        let q = jet4_constant([-0.1, 0.4, 1.5, -0.2]);
        let r = jet4_constant([0.7, 0.2, -0.3, 1.1]);
        let n = jet4_cross(&p, &q, &r);
        assert!(jet4_dot(&n, &p).val().abs() < 1e-12);
        assert!(jet4_dot(&n, &q).val().abs() < 1e-12);
        assert!(jet4_dot(&n, &r).val().abs() < 1e-12);
    }
}
