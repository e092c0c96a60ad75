//! Quadrature helpers: adaptive Gauss-Kronrod, tanh-sinh and Gauss-Legendre/Jacobi rules.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;
use std::num::NonZeroUsize;

use gauss_quad::{GaussJacobi, GaussLegendre};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// One 15-point Kronrod panel with the embedded 7-point Gauss estimate as error.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut rk = fc * WGK[7];
    let mut rg = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        rk += WGK[j] * s;
        if j % 2 == 1 {
            rg += WG[j / 2] * s;
        }
    }
    (rk * h, ((rk - rg) * h).abs())
}

struct Panel {
    a: f64,
    b: f64,
    val: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err)
    }
}

/// Globally adaptive Gauss-Kronrod integration over `[pts[0], pts[last]]`,
/// with the interior points used as initial breakpoints.
pub fn adaptive<F: Fn(f64) -> f64>(f: F, pts: &[f64], abs_tol: f64, rel_tol: f64) -> f64 {
    assert!(pts.len() >= 2, "need at least two breakpoints");
    let mut heap = BinaryHeap::new();
    let (mut total, mut err) = (0.0, 0.0);
    for w in pts.windows(2) {
        if w[1] == w[0] {
            continue;
        }
        let (v, e) = gk15(&f, w[0], w[1]);
        total += v;
        err += e;
        heap.push(Panel { a: w[0], b: w[1], val: v, err: e });
    }
    let mut iters = 0;
    while err > abs_tol.max(rel_tol * total.abs()) && iters < 4000 {
        let Some(p) = heap.pop() else { break };
        let m = 0.5 * (p.a + p.b);
        if m <= p.a || m >= p.b {
            heap.push(p);
            break;
        }
        let (v1, e1) = gk15(&f, p.a, m);
        let (v2, e2) = gk15(&f, m, p.b);
        total += v1 + v2 - p.val;
        err += e1 + e2 - p.err;
        heap.push(Panel { a: p.a, b: m, val: v1, err: e1 });
        heap.push(Panel { a: m, b: p.b, val: v2, err: e2 });
        iters += 1;
    }
    heap.iter().map(|p| p.val).sum()
}

/// Adaptive integration on `[a, b]` with default tolerances.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    adaptive(f, &[a, b], 1e-13, 1e-12)
}

/// Breakpoints `a, a+step, ..., b` (inclusive), `b - a` a multiple of `step`.
pub fn uniform_breaks(a: f64, b: f64, pieces: usize) -> Vec<f64> {
    (0..=pieces).map(|i| a + (b - a) * i as f64 / pieces as f64).collect()
}

/// Tanh-sinh integration; tolerant of integrable endpoint singularities.
/// Nodes are placed by their distance to the nearer endpoint, so no precision is lost there.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> f64 {
    const T_MAX: f64 = 6.0;
    const MAX_LEVEL: usize = 9;
    if a == b {
        return 0.0;
    }
    let c = 0.5 * (b - a);
    let eval = |x: f64| {
        let v = f(x);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    // Contribution of the symmetric node pair at parameter t > 0 (or the centre at t = 0).
    let pair = |t: f64| -> f64 {
        let u = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u).exp();
        let dist = 2.0 * e / (1.0 + e);
        let cosh_u = u.cosh();
        let w = FRAC_PI_2 * t.cosh() / (cosh_u * cosh_u);
        if t == 0.0 {
            return w * eval(a + c);
        }
        let d = c * dist;
        if d == 0.0 || !w.is_finite() || w == 0.0 {
            return 0.0;
        }
        w * (eval(a + d) + eval(b - d))
    };
    let mut h = 1.0;
    let mut sum = pair(0.0);
    let mut k = 1;
    while (k as f64) * h <= T_MAX {
        sum += pair(k as f64 * h);
        k += 1;
    }
    let mut estimate = c * h * sum;
    for _ in 0..MAX_LEVEL {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= T_MAX {
            sum += pair(k as f64 * h);
            k += 2;
        }
        let next = c * h * sum;
        let delta = (next - estimate).abs();
        estimate = next;
        if delta <= abs_tol.max(1e-15 * next.abs()) {
            break;
        }
    }
    estimate
}

/// Nodes and weights with `sum w g(x) ~ int_0^c x^alpha g(x) dx` for smooth g.
pub fn jacobi_power_rule(alpha: f64, c: f64, degree: usize) -> Vec<(f64, f64)> {
    let deg = NonZeroUsize::new(degree).expect("degree must be positive");
    let beta = alpha.try_into().expect("alpha must exceed -1");
    let rule = GaussJacobi::new(deg, 0.0.try_into().expect("0 is admissible"), beta);
    let scale = (0.5 * c).powf(alpha + 1.0);
    rule.as_node_weight_pairs().iter().map(|&(t, w)| (0.5 * c * (1.0 + t), w * scale)).collect()
}

/// Fixed composite Gauss-Legendre rule; deterministic, so smooth in parameters of the integrand.
#[derive(Debug, Clone)]
pub struct CompositeGauss {
    nodes: Vec<(f64, f64)>,
}

impl CompositeGauss {
    pub fn new(order: usize) -> Self {
        let rule = GaussLegendre::new(NonZeroUsize::new(order).expect("order must be positive"));
        Self { nodes: rule.as_node_weight_pairs().to_vec() }
    }

    /// Sum of the rule over consecutive panels `[breaks[i], breaks[i+1]]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, breaks: &[f64]) -> f64 {
        breaks
            .windows(2)
            .map(|w| {
                let (c, h) = (0.5 * (w[0] + w[1]), 0.5 * (w[1] - w[0]));
                h * self.nodes.iter().map(|&(t, wt)| wt * f(c + h * t)).sum::<f64>()
            })
            .sum()
    }
}
