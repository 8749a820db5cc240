//! Globally adaptive Gauss–Kronrod (7/15) integration.
//!
//! Infinite ranges are mapped onto finite ones with `x = a + t/(1-t)`
//! (or its mirror), which turns exponential and moderate polynomial tails
//! into integrands that vanish at the open end of `[0, 1)`.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};

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
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Integration tolerances and limits.
#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_intervals: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn adapt<F: Fn(f64) -> f64>(f: &F, edges: &[f64], opts: QuadOptions) -> Result<QuadResult> {
    let mut heap = BinaryHeap::new();
    let (mut total, mut err) = (0.0, 0.0);
    for w in edges.windows(2) {
        let (v, e) = kronrod(f, w[0], w[1]);
        total += v;
        err += e;
        heap.push(Segment {
            a: w[0],
            b: w[1],
            value: v,
            error: e,
        });
    }
    while err > opts.abs_tol.max(opts.rel_tol * total.abs()) {
        if !total.is_finite() {
            return Err(Error::NonConvergence(
                "integrand produced a non-finite value".into(),
            ));
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::NonConvergence(format!(
                "quadrature error estimate {err:e} after {} intervals",
                heap.len()
            )));
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval cannot be split further at double precision
            heap.push(worst);
            break;
        }
        let (v1, e1) = kronrod(f, worst.a, mid);
        let (v2, e2) = kronrod(f, mid, worst.b);
        total += v1 + v2 - worst.value;
        err += e1 + e2 - worst.error;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
    }
    // recompute from the pieces to shed accumulated update rounding
    let (mut value, mut error) = (0.0, 0.0);
    let intervals = heap.len();
    for s in heap {
        value += s.value;
        error += s.error;
    }
    if !value.is_finite() {
        return Err(Error::NonConvergence(
            "integrand produced a non-finite value".into(),
        ));
    }
    Ok(QuadResult {
        value,
        error,
        intervals,
    })
}

/// Integrates `f` over `[lo, hi]`, either endpoint possibly infinite.
///
/// `breaks` are interior points where `f` has kinks or is otherwise
/// non-smooth; points outside `(lo, hi)` are ignored.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    breaks: &[f64],
    opts: QuadOptions,
) -> Result<QuadResult> {
    if !(lo < hi) {
        return Err(Error::Precondition(format!(
            "integration bounds must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    let mut pts: Vec<f64> = breaks
        .iter()
        .copied()
        .filter(|b| b.is_finite() && *b > lo && *b < hi)
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();

    // finite anchors for the tail maps
    let left = if lo.is_finite() {
        lo
    } else {
        pts.first()
            .copied()
            .unwrap_or(if hi.is_finite() { hi } else { 0.0 })
    };
    let right = if hi.is_finite() {
        hi
    } else {
        pts.last().copied().unwrap_or(left)
    };

    let mut finite_edges = vec![left];
    finite_edges.extend(pts.iter().copied().filter(|p| *p > left && *p < right));
    if right > left {
        finite_edges.push(right);
    }

    let mut out = QuadResult {
        value: 0.0,
        error: 0.0,
        intervals: 0,
    };
    let mut add = |r: QuadResult| {
        out.value += r.value;
        out.error += r.error;
        out.intervals += r.intervals;
    };

    if finite_edges.len() >= 2 {
        add(adapt(&f, &finite_edges, opts)?);
    }
    if hi.is_infinite() {
        let g = |t: f64| {
            let u = 1.0 - t;
            let v = f(right + t / u) / (u * u);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        };
        add(adapt(&g, &[0.0, 0.5, 1.0], opts)?);
    }
    if lo.is_infinite() {
        let g = |t: f64| {
            let u = 1.0 - t;
            let v = f(left - t / u) / (u * u);
            if v.is_finite() {
                v
            } else {
                0.0
            }
        };
        add(adapt(&g, &[0.0, 0.5, 1.0], opts)?);
    }
    Ok(out)
}
