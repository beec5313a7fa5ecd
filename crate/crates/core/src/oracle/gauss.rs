//! Gauss–Legendre panel rules and the accumulation machinery built on them.

use std::ops::{Add, Mul, Sub};
use std::sync::OnceLock;

use num_complex::Complex64;

/// Base rule order; each panel is also integrated at twice this order and
/// the difference is taken as the panel's error estimate.
pub const BASE_ORDER: usize = 15;

const MAX_BISECTION_DEPTH: u32 = 30;

/// Nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Roots of `P_order` by Newton iteration from the Tricomi initial guess.
    pub fn new(order: usize) -> Self {
        assert!(order >= 1);
        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        let n = order as f64;
        for i in 0..order.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(order, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(order, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[order - 1 - i] = x;
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
        Self { nodes, weights }
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let dp = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn rules() -> &'static (GaussLegendre, GaussLegendre) {
    static RULES: OnceLock<(GaussLegendre, GaussLegendre)> = OnceLock::new();
    RULES.get_or_init(|| (GaussLegendre::new(BASE_ORDER), GaussLegendre::new(2 * BASE_ORDER)))
}

/// Values the panel integrator can accumulate.
pub trait Quantity: Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn magnitude(self) -> f64;
}

impl Quantity for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Quantity for Complex64 {
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

fn apply<T: Quantity>(rule: &GaussLegendre, f: &impl Fn(f64) -> T, a: f64, b: f64) -> T {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .fold(T::default(), |acc, (&x, &w)| acc + f(mid + half * x) * w)
        * half
}

/// Integral over `[a, b]` with its estimated error.
#[derive(Debug, Clone, Copy)]
pub struct PanelSum<T> {
    pub value: T,
    pub error: f64,
    pub panels: usize,
}

impl<T: Quantity> PanelSum<T> {
    pub fn zero() -> Self {
        Self { value: T::default(), error: 0.0, panels: 0 }
    }

    pub fn absorb(&mut self, other: PanelSum<T>) {
        self.value = self.value + other.value;
        self.error += other.error;
        self.panels += other.panels;
    }
}

/// One panel at orders 15 and 30, bisected until the two agree to `tol`.
pub fn panel<T: Quantity>(f: &impl Fn(f64) -> T, a: f64, b: f64, tol: f64) -> PanelSum<T> {
    panel_rec(f, a, b, tol, 0)
}

fn panel_rec<T: Quantity>(f: &impl Fn(f64) -> T, a: f64, b: f64, tol: f64, depth: u32) -> PanelSum<T> {
    let (low, high) = rules();
    let coarse = apply(low, f, a, b);
    let fine = apply(high, f, a, b);
    let error = (fine - coarse).magnitude();
    if error <= tol || depth >= MAX_BISECTION_DEPTH {
        return PanelSum { value: fine, error, panels: 1 };
    }
    let mid = 0.5 * (a + b);
    let mut left = panel_rec(f, a, mid, 0.5 * tol, depth + 1);
    left.absorb(panel_rec(f, mid, b, 0.5 * tol, depth + 1));
    left
}

/// `∫_a^b f` on panels of width at most `width`, with panels geometrically
/// refined towards `a` when `a` is small compared to `width`.
pub fn graded<T: Quantity>(f: &impl Fn(f64) -> T, a: f64, b: f64, width: f64, tol: f64) -> PanelSum<T> {
    let mut out = PanelSum::zero();
    if b <= a {
        return out;
    }
    let mut cuts = vec![a];
    if a > 0.0 {
        let mut x = 2.0 * a;
        while x < b.min(a + width) {
            cuts.push(x);
            x *= 2.0;
        }
    }
    let mut x = *cuts.last().expect("nonempty");
    while x + width < b {
        x += width;
        cuts.push(x);
    }
    cuts.push(b);
    cuts.dedup();
    let per_panel = tol / cuts.len() as f64;
    for w in cuts.windows(2) {
        out.absorb(panel(f, w[0], w[1], per_panel));
    }
    out
}

/// Result of summing an alternating series of panel integrals.
#[derive(Debug, Clone, Copy)]
pub struct AlternatingSum {
    pub value: f64,
    pub panel_error: f64,
    pub acceleration_error: f64,
    pub panels: usize,
    pub end: f64,
}

/// `∫_{start}^∞ f` for an `f` whose sign alternates between consecutive
/// zeros `first_zero + j · spacing` and whose magnitude decays slowly.
///
/// The stretch before `first_zero` is integrated directly; after it the
/// per-interval integrals form an alternating series whose partial sums are
/// repeatedly averaged (Euler transform). Stops once two consecutive
/// averaged estimates differ by less than `tol / 4`.
pub fn alternating_tail(
    f: &impl Fn(f64) -> f64,
    start: f64,
    first_zero: f64,
    spacing: f64,
    tol: f64,
    max_panels: usize,
) -> Option<AlternatingSum> {
    let head = graded(f, start, first_zero, spacing, tol / 8.0);
    let mut panel_error = head.error;
    let mut panels = head.panels;
    let mut partial = head.value;
    let mut sums: Vec<f64> = Vec::new();
    let mut previous: Option<f64> = None;
    let panel_tol = tol * 1e-3;
    for j in 0..max_panels {
        let a = first_zero + j as f64 * spacing;
        let p = panel(f, a, a + spacing, panel_tol);
        panel_error += p.error;
        panels += p.panels;
        partial += p.value;
        sums.push(partial);
        let estimate = euler_average(&sums);
        if let Some(prev) = previous {
            let change = (estimate - prev).abs();
            if sums.len() >= 8 && change < tol / 4.0 {
                return Some(AlternatingSum {
                    value: estimate,
                    panel_error,
                    acceleration_error: 2.0 * change,
                    panels,
                    end: a + spacing,
                });
            }
        }
        previous = Some(estimate);
    }
    None
}

/// Averages consecutive partial sums until one value is left, using at most
/// the last `MAX_DEPTH + 1` of them.
fn euler_average(sums: &[f64]) -> f64 {
    const MAX_DEPTH: usize = 40;
    let take = sums.len().min(MAX_DEPTH + 1);
    let mut level: Vec<f64> = sums[sums.len() - take..].to_vec();
    while level.len() > 1 {
        level = level.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    }
    level[0]
}
