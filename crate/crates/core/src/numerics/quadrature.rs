//! Globally adaptive Gauss-Kronrod (10/21) quadrature and Gauss-Legendre
//! nodes.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Change of variables used for `[a, inf)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SemiInfiniteMap {
    /// `x = a + s t / (1 - t)`
    Rational,
    /// `x = a - s ln(1 - t)`
    Exponential,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub semi_infinite_map: SemiInfiniteMap,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
            semi_infinite_map: SemiInfiniteMap::Rational,
        }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Result<Self> {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
        .validated()
    }

    pub fn validated(self) -> Result<Self> {
        for (what, value) in [("absolute tolerance", self.abs_tol), ("relative tolerance", self.rel_tol)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::OutOfRange { what, value });
            }
        }
        if self.max_subdivisions == 0 {
            return Err(Error::OutOfRange {
                what: "max subdivisions",
                value: 0.0,
            });
        }
        Ok(self)
    }

    /// Same spec with both tolerances scaled by `factor`.
    pub fn tightened(&self, factor: f64) -> Self {
        Self {
            abs_tol: self.abs_tol * factor,
            rel_tol: self.rel_tol * factor,
            ..*self
        }
    }
}

/// Value and error estimate of a quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut err = err.abs();
    if resasc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / resasc).powf(1.5);
        err = resasc * scale.min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    err
}

type Integrand<'a> = dyn FnMut(f64) -> Result<f64> + 'a;

fn qk21(f: &mut Integrand, a: f64, b: f64) -> Result<Interval> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut gauss = 0.0;
    let mut kronrod = fc * WGK[10];
    let mut resabs = kronrod.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let x = half * XGK[j];
        let (f1, f2) = (f(center - x)?, f(center + x)?);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut resasc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let err = (kronrod - gauss) * half;
    let value = kronrod * half;
    if !value.is_finite() {
        return Err(Error::Domain(format!("non-finite integrand on [{a}, {b}]")));
    }
    Ok(Interval {
        a,
        b,
        value,
        error: rescale_error(err, resabs * half.abs(), resasc * half.abs()),
    })
}

#[derive(Debug, Clone, Copy)]
struct Interval {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Interval {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Interval {}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Adaptive quadrature of a fallible integrand over `[a, b]`. `b` may be
/// `f64::INFINITY`, in which case the map chosen in `spec` with unit length scale is
/// used.
pub fn try_integrate<F>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Integral>
where
    F: FnMut(f64) -> Result<f64>,
{
    if b == f64::INFINITY {
        return try_integrate_semi_infinite(f, a, 1.0, spec);
    }
    adaptive(&mut f, a, b, spec)
}

fn adaptive(f: &mut Integrand, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Integral> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("integration range [{a}, {b}]")));
    }
    if a == b {
        return Ok(Integral { value: 0.0, error: 0.0 });
    }
    let first = qk21(f, a, b)?;
    let mut total = first.value;
    let mut total_err = first.error;
    let mut heap = BinaryHeap::from([first]);
    let mut subdivisions = 1;
    loop {
        if total_err <= spec.abs_tol.max(spec.rel_tol * total.abs()) {
            return Ok(Integral {
                value: total,
                error: total_err,
            });
        }
        let worst = heap.pop().expect("non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        let splittable = mid > worst.a.min(worst.b) && mid < worst.a.max(worst.b);
        if subdivisions >= spec.max_subdivisions || !splittable {
            return Err(Error::MaxSubdivisions {
                subdivisions,
                value: total,
                error: total_err,
            });
        }
        let left = qk21(f, worst.a, mid)?;
        let right = qk21(f, mid, worst.b)?;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
        if subdivisions % 64 == 0 {
            // resum to shed accumulated cancellation
            total = heap.iter().map(|i| i.value).sum();
            total_err = heap.iter().map(|i| i.error).sum();
        }
    }
}

pub fn integrate<F>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Integral>
where
    F: FnMut(f64) -> f64,
{
    try_integrate(|x| Ok(f(x)), a, b, spec)
}

/// `int_a^inf f` with the map chosen in `spec` stretched to length scale `scale`.
pub fn try_integrate_semi_infinite<F>(mut f: F, a: f64, scale: f64, spec: &QuadratureSpec) -> Result<Integral>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(scale > 0.0 && scale.is_finite() && a.is_finite()) {
        return Err(Error::Domain(format!("semi-infinite range from {a} with scale {scale}")));
    }
    let map = spec.semi_infinite_map;
    adaptive(
        &mut |t| {
            let u = 1.0 - t;
            let (x, jac) = match map {
                SemiInfiniteMap::Rational => (a + scale * t / u, scale / (u * u)),
                SemiInfiniteMap::Exponential => (a - scale * u.ln(), scale / u),
            };
            if !x.is_finite() {
                return Ok(0.0);
            }
            let v = f(x)?;
            Ok(if v == 0.0 { 0.0 } else { v * jac })
        },
        0.0,
        1.0,
        spec,
    )
}

pub fn integrate_semi_infinite<F>(mut f: F, a: f64, scale: f64, spec: &QuadratureSpec) -> Result<Integral>
where
    F: FnMut(f64) -> f64,
{
    try_integrate_semi_infinite(|x| Ok(f(x)), a, scale, spec)
}

/// Tanh-sinh rule on `[a, b]` for integrands with algebraic endpoint
/// behaviour. The step is halved until two levels agree to `rel_tol`
/// (the error then is roughly the square of that difference).
///
/// Nodes are placed at `a + (b - a) u` with `u = 1 / (1 + exp(-pi sinh t))`,
/// so neither endpoint is ever evaluated.
pub fn tanh_sinh<F>(mut f: F, a: f64, b: f64, rel_tol: f64) -> Result<Integral>
where
    F: FnMut(f64) -> Result<f64>,
{
    match tanh_sinh_vec(|x| Ok([f(x)?]), a, b, rel_tol) {
        Ok(([value], [error])) => Ok(Integral { value, error }),
        Err(e) => Err(e),
    }
}

/// [`tanh_sinh`] for several integrands sharing the nodes. Every component
/// must meet the tolerance. Returns values and level differences.
pub fn tanh_sinh_vec<F, const N: usize>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<([f64; N], [f64; N])>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    let run = tanh_sinh_run(f, a, b, rel_tol)?;
    if run.converged {
        return Ok((run.value, run.diff));
    }
    let (value, diff) = (run.value, run.diff);
    let worst = (0..N)
        .max_by(|&i, &j| (diff[i] / value[i].abs()).total_cmp(&(diff[j] / value[j].abs())))
        .unwrap_or(0);
    Err(Error::MaxSubdivisions {
        subdivisions: 1 << TS_LEVELS,
        value: value.get(worst).copied().unwrap_or(0.0),
        error: diff.get(worst).copied().unwrap_or(0.0),
    })
}

const TS_LEVELS: u32 = 9;

pub(crate) struct TanhSinhRun<const N: usize> {
    pub value: [f64; N],
    pub diff: [f64; N],
    pub converged: bool,
}

pub(crate) fn tanh_sinh_run<F, const N: usize>(mut f: F, a: f64, b: f64, rel_tol: f64) -> Result<TanhSinhRun<N>>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    const T_MAX: f64 = 3.5;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("tanh-sinh needs a finite interval, got [{a}, {b}]")));
    }
    let width = b - a;
    if width == 0.0 {
        return Ok(TanhSinhRun {
            value: [0.0; N],
            diff: [0.0; N],
            converged: true,
        });
    }
    let mut sum = [0.0; N];
    let mut add = |t: f64, sum: &mut [f64; N]| -> Result<()> {
        let s = PI * t.sinh();
        // u and 1 - u without cancellation
        let (u, v) = if s >= 0.0 {
            let e = (-s).exp();
            (1.0 / (1.0 + e), e / (1.0 + e))
        } else {
            let e = s.exp();
            (e / (1.0 + e), 1.0 / (1.0 + e))
        };
        let w = PI * t.cosh() * u * v;
        if w == 0.0 {
            return Ok(());
        }
        let x = if u <= 0.5 { a + width * u } else { b - width * v };
        let y = f(x)?;
        for (acc, y) in sum.iter_mut().zip(y) {
            if !y.is_finite() {
                return Err(Error::Domain(format!("non-finite integrand at {x}")));
            }
            *acc += w * y;
        }
        Ok(())
    };
    let mut h = 0.5;
    add(0.0, &mut sum)?;
    let mut k = 1;
    while k as f64 * h <= T_MAX {
        add(k as f64 * h, &mut sum)?;
        add(-(k as f64) * h, &mut sum)?;
        k += 1;
    }
    let mut estimate = sum.map(|v| width * h * v);
    let mut diff = [f64::INFINITY; N];
    for _ in 0..TS_LEVELS {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= T_MAX {
            add(k as f64 * h, &mut sum)?;
            add(-(k as f64) * h, &mut sum)?;
            k += 2;
        }
        let next = sum.map(|v| width * h * v);
        diff = std::array::from_fn(|i| (next[i] - estimate[i]).abs());
        estimate = next;
        if (0..N).all(|i| diff[i] <= rel_tol * estimate[i].abs()) {
            return Ok(TanhSinhRun {
                value: estimate,
                diff,
                converged: true,
            });
        }
    }
    Ok(TanhSinhRun {
        value: estimate,
        diff,
        converged: false,
    })
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            dp = nf * (x * p - p0) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}
