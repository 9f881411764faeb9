//! Lyapunov exponents, entropy formulas and invariant measures.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coding::{decode, Box3, Interval};
use crate::dyck::{sample_nu_into, DyckWord, Estimate, Side, TwoSidedWindow};
use crate::error::{Error, Result};
use crate::maps::{classify3, f3_branch, phi_c, phi_u, Dims, Kind, Params, Point3, Symbol, TOL};
use crate::orbit::{stream_rng, Init, Orbit};

/// Where an [`ExponentReport`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExponentSource {
    Analytic,
    Birkhoff { n: u64, seed: u64 },
}

/// Lyapunov exponents in nats per step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentReport {
    pub chi_u: f64,
    pub chi_c: f64,
    /// Batch-means standard error of `chi_c` (Birkhoff runs only).
    pub chi_c_stderr: Option<f64>,
    pub source: ExponentSource,
}

/// `chi^c(g_a, Leb) = (1 - 2Ma) log M`.
pub fn chi_c_leb_analytic(p: &Params) -> f64 {
    (1.0 - 2.0 * p.ma()) * p.mf().ln()
}

/// `chi^u(g_a, Leb) = -Ma log a - (1 - Ma) log(1 - Ma)`.
pub fn chi_u_leb_analytic(p: &Params) -> f64 {
    let ma = p.ma();
    -ma * p.a().ln() - (1.0 - ma) * (1.0 - ma).ln()
}

pub fn exponents_leb_analytic(p: &Params) -> ExponentReport {
    ExponentReport {
        chi_u: chi_u_leb_analytic(p),
        chi_c: chi_c_leb_analytic(p),
        chi_c_stderr: None,
        source: ExponentSource::Analytic,
    }
}

/// `chi^c` of the measure of maximal entropy on `side`: `-(M-1)/(M+1) log M`
/// for alpha and its negative for beta.
pub fn chi_c_mme_analytic(m: u32, side: Side) -> f64 {
    let mf = m as f64;
    let v = (mf - 1.0) / (mf + 1.0) * mf.ln();
    match side {
        Side::Alpha => -v,
        Side::Beta => v,
    }
}

/// Entropy `log(M+1)` of either measure of maximal entropy.
pub fn entropy_mme(m: u32) -> f64 {
    (m as f64 + 1.0).ln()
}

const BATCHES: u64 = 64;

/// Time averages of `phi^u` and `phi^c` over `n` steps. `p` selects the map
/// (`Params::g` for `g_a`); with [`Init::Lebesgue`] the start is drawn from
/// `seed`.
pub fn birkhoff_exponents(p: &Params, dims: Dims, init: Init, n: u64, seed: u64) -> Result<ExponentReport> {
    if n == 0 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    if dims == Dims::Three && p.b().is_none() {
        return Err(Error::InvalidParams("3D orbits need b".into()));
    }
    let mut orbit = Orbit::new(p, dims, init, stream_rng(seed, 0));
    let (pa, pb) = (phi_u(p, Symbol::alpha(1)), phi_u(p, Symbol::beta(1)));
    let batch = (n / BATCHES).max(1);
    let mut alphas = 0u64;
    let mut batch_means = Vec::new();
    let mut in_batch = 0u64;
    let mut batch_alphas = 0u64;
    for _ in 0..n {
        if orbit.advance().is_alpha() {
            alphas += 1;
            batch_alphas += 1;
        }
        in_batch += 1;
        if in_batch == batch {
            batch_means.push(1.0 - 2.0 * batch_alphas as f64 / batch as f64);
            in_batch = 0;
            batch_alphas = 0;
        }
    }
    let logm = p.mf().ln();
    let betas = n - alphas;
    let nf = n as f64;
    let stderr = if batch_means.len() >= 2 {
        let k = batch_means.len() as f64;
        let mean = batch_means.iter().sum::<f64>() / k;
        let var = batch_means.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
        Some(logm * (var / k).sqrt())
    } else {
        None
    };
    Ok(ExponentReport {
        chi_u: (alphas as f64 * pa + betas as f64 * pb) / nf,
        chi_c: (betas as f64 - alphas as f64) / nf * logm,
        chi_c_stderr: stderr,
        source: ExponentSource::Birkhoff { n, seed },
    })
}

/// Isomorphism-type probability vector of a Bernoulli system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BernoulliVector {
    pub probabilities: Vec<f64>,
}

impl BernoulliVector {
    /// Shannon entropy in nats.
    pub fn entropy(&self) -> f64 {
        self.probabilities.iter().filter(|&&q| q > 0.0).map(|&q| -q * q.ln()).sum()
    }
}

fn check_not_neutral(p: &Params) -> Result<()> {
    if (p.ma() - 0.5).abs() <= TOL {
        return Err(Error::NeutralParameter);
    }
    Ok(())
}

/// Entropy of Lebesgue under `g_a`. Undefined by this formula at `a = 1/(2M)`.
pub fn entropy_leb(p: &Params) -> Result<f64> {
    check_not_neutral(p)?;
    let ma = p.ma();
    Ok(if ma < 0.5 {
        -(1.0 - ma) * ((1.0 - ma) / p.mf()).ln() - ma * ma.ln()
    } else {
        -ma * p.a().ln() - (1.0 - ma) * (1.0 - ma).ln()
    })
}

/// `((1-Ma)/M, .., (1-Ma)/M, Ma)` below `1/(2M)`, `(a, .., a, 1-Ma)` above.
pub fn bernoulli_vector_leb(p: &Params) -> Result<BernoulliVector> {
    check_not_neutral(p)?;
    let m = p.m() as usize;
    let ma = p.ma();
    let (each, last) = if ma < 0.5 { ((1.0 - ma) / p.mf(), ma) } else { (p.a(), 1.0 - ma) };
    let mut probabilities = vec![each; m];
    probabilities.push(last);
    Ok(BernoulliVector { probabilities })
}

/// `chi^u + max(chi^c, 0)`.
pub fn ruelle_bound(chi_u: f64, chi_c: f64) -> f64 {
    chi_u + chi_c.max(0.0)
}

/// `-log sqrt(a (1 - Ma))`.
pub fn zero_u_bound(p: &Params) -> f64 {
    -0.5 * (p.a() * (1.0 - p.ma())).ln()
}

/// The unique `(a, b)` at which Lebesgue is the measure of maximal entropy
/// on each side: `(1/(M+1), 1/(M(M+1)))` for alpha, swapped for beta.
pub fn mme_leb_params(m: u32) -> ((f64, f64), (f64, f64)) {
    let mf = m as f64;
    let (x, y) = (1.0 / (mf + 1.0), 1.0 / (mf * (mf + 1.0)));
    ((x, y), (y, x))
}

fn intersect(a: Interval, b: Interval) -> Option<Interval> {
    let lo = a.lo.max(b.lo);
    let hi = a.hi().min(b.hi());
    (hi > lo).then_some(Interval { lo, len: hi - lo })
}

/// Preimage of `i` under `x -> slope * x + off`.
fn pull(i: Interval, slope: f64, off: f64) -> Interval {
    Interval { lo: (i.lo - off) / slope, len: i.len / slope }
}

/// Lebesgue measure of `f^{-1}(box)`, summed branch by branch: the part of
/// the box inside each branch image is pulled back through the inverse
/// branch and its volume taken. In 2D the s-range of the box is ignored.
pub fn leb_preimage_measure(p: &Params, dims: Dims, bx: &Box3) -> Result<f64> {
    let three = dims == Dims::Three;
    if three && p.b().is_none() {
        return Err(Error::InvalidParams("3D needs b".into()));
    }
    let unit = |i: &Interval| i.lo >= -TOL && i.hi() <= 1.0 + TOL && i.len >= 0.0;
    if !unit(&bx.u) || !unit(&bx.c) || (three && !unit(&bx.s)) {
        return Err(Error::InvalidInput("box must lie in the unit cube".into()));
    }
    let mf = p.mf();
    let mut total = 0.0;
    for kind in [Kind::Alpha, Kind::Beta] {
        for k in 1..=p.m() as u8 {
            let sym = Symbol { kind, index: k };
            // Branch images and forward affine maps per coordinate.
            let (u_slope, u_off) = {
                let r = p.u_rate(kind);
                (1.0 / r, -p.u_offset(sym) / r)
            };
            let (c_img, c_slope, c_off) = match kind {
                Kind::Alpha => (Interval { lo: (k - 1) as f64 / mf, len: 1.0 / mf }, 1.0 / mf, (k - 1) as f64 / mf),
                Kind::Beta => (Interval::UNIT, mf, -((k - 1) as f64)),
            };
            let Some(u) = intersect(bx.u, Interval::UNIT) else { continue };
            let Some(c) = intersect(bx.c, c_img) else { continue };
            let mut vol = pull(u, u_slope, u_off).len * pull(c, c_slope, c_off).len;
            if three {
                let (s_slope, s_off) = p.s_affine(sym);
                let s_img = Interval { lo: s_off, len: s_slope };
                let Some(s) = intersect(bx.s, s_img) else { continue };
                vol *= pull(s, s_slope, s_off).len;
            }
            total += vol;
        }
    }
    Ok(total)
}

/// `f(Omega_{beta_1})`, whose preimage has volume `(1 - Ma)/M` while the box
/// itself has volume `b`.
pub fn beta1_image_box(p: &Params) -> Box3 {
    let (slope, off) = p.s_affine(Symbol::beta(1));
    Box3 { u: Interval::UNIT, c: Interval::UNIT, s: Interval { lo: off, len: slope } }
}

/// Letters drawn before an alpha-side window (after a beta-side one) so the
/// window sees the stationary bracket stack.
pub const MME_BURN_IN: usize = 256;

/// Reusable buffers for window sampling.
#[derive(Debug, Default)]
pub struct WindowSampler {
    buf: Vec<Symbol>,
    unmatched: Vec<usize>,
    /// Samples discarded because the fallback filled a window position.
    pub resampled: u64,
}

impl WindowSampler {
    /// A two-sided window `omega_{-h}..omega_{h-1}` from `nu_side`.
    pub fn window<R: Rng + ?Sized>(&mut self, side: Side, m: u32, half: usize, rng: &mut R) -> TwoSidedWindow {
        let len = 2 * half;
        loop {
            sample_nu_into(side, m, len + MME_BURN_IN, rng, &mut self.buf, &mut self.unmatched);
            let start = match side {
                Side::Alpha => MME_BURN_IN,
                Side::Beta => 0,
            };
            if self.unmatched.iter().any(|&i| i >= start && i < start + len) {
                self.resampled += 1;
                continue;
            }
            let w = &self.buf[start..start + len];
            return TwoSidedWindow::new(DyckWord(w[..half].to_vec()), DyckWord(w[half..].to_vec()));
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MmeSample {
    pub point: Point3,
    pub diameter: f64,
}

/// Points of `mu_side = nu_side o pi`: sampled windows decoded to the
/// centers of their cuboids.
pub fn sample_mme<R: Rng + ?Sized>(
    p: &Params,
    side: Side,
    n_points: usize,
    half_window: usize,
    rng: &mut R,
) -> Result<Vec<MmeSample>> {
    if half_window == 0 {
        return Err(Error::InvalidInput("half window must be at least 1".into()));
    }
    let mut sampler = WindowSampler::default();
    (0..n_points)
        .map(|_| {
            let w = sampler.window(side, p.m(), half_window, rng);
            let d = decode(p, &w)?;
            Ok(MmeSample { point: d.point, diameter: d.diameter })
        })
        .collect()
}

/// Fraction of points in each `Omega_sigma`, alpha_1..alpha_M then
/// beta_1..beta_M.
pub fn domain_masses(p: &Params, points: &[Point3]) -> Vec<Estimate> {
    let m = p.m() as usize;
    let mut hits = vec![0u64; 2 * m];
    for x in points {
        let s = classify3(p, *x);
        let i = (s.index - 1) as usize + if s.is_beta() { m } else { 0 };
        hits[i] += 1;
    }
    hits.iter().map(|&h| Estimate::from_hits(h, points.len() as u64)).collect()
}

/// Birkhoff averages of `phi^c` and `phi^u` over `steps` float iterates of
/// `f_{a,b}` from each start. The standard error is over starts.
pub fn birkhoff_from_points(p: &Params, points: &[Point3], steps: usize) -> (Estimate, Estimate) {
    let mut per_c = Vec::with_capacity(points.len());
    let mut per_u = Vec::with_capacity(points.len());
    for &x0 in points {
        let mut x = x0;
        let (mut sc, mut su) = (0.0, 0.0);
        for _ in 0..steps {
            let s = classify3(p, x);
            sc += phi_c(p, s);
            su += phi_u(p, s);
            x = f3_branch(p, s, x);
        }
        per_c.push(sc / steps as f64);
        per_u.push(su / steps as f64);
    }
    (mean_estimate(&per_c), mean_estimate(&per_u))
}

fn mean_estimate(v: &[f64]) -> Estimate {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    Estimate { value: mean, stderr: (var / n).sqrt(), samples: v.len() as u64 }
}

/// Pearson chi-square of points against the uniform law on a `k^3` grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiSquare {
    pub stat: f64,
    pub df: u32,
    /// `(stat - df) / sqrt(2 df)`.
    pub z: f64,
}

pub fn chi_square_uniform(points: &[Point3], k: usize) -> ChiSquare {
    let cell = |x: f64| ((x * k as f64) as usize).min(k - 1);
    let mut counts = vec![0u64; k * k * k];
    for x in points {
        counts[(cell(x.u) * k + cell(x.c)) * k + cell(x.s)] += 1;
    }
    let expect = points.len() as f64 / counts.len() as f64;
    let stat = counts.iter().map(|&c| (c as f64 - expect).powi(2) / expect).sum();
    let df = (counts.len() - 1) as u32;
    ChiSquare { stat, df, z: (stat - df as f64) / (2.0 * df as f64).sqrt() }
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub parameter: String,
    pub quantity: String,
    pub analytic: f64,
    pub empirical: f64,
    pub stderr: Option<f64>,
    pub pass: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::LN_2;

    fn close(x: f64, y: f64) -> bool {
        (x - y).abs() < 1e-12
    }

    #[test]
    fn chi_c_examples() {
        assert!(close(chi_c_leb_analytic(&Params::g(2, 1.0 / 3.0).unwrap()), -LN_2 / 3.0));
        assert!(close(chi_c_leb_analytic(&Params::g(2, 0.25).unwrap()), 0.0));
        assert!(close(chi_c_leb_analytic(&Params::g(2, 0.2).unwrap()), 0.2 * LN_2));
        assert!(close(chi_c_mme_analytic(2, Side::Alpha), -LN_2 / 3.0));
        assert!(close(chi_c_mme_analytic(2, Side::Beta), LN_2 / 3.0));
        assert!(close(chi_c_mme_analytic(3, Side::Alpha), -0.5 * 3f64.ln()));
    }

    #[test]
    fn entropy_examples() {
        let e = |a: f64| entropy_leb(&Params::g(2, a).unwrap()).unwrap();
        assert!(close(e(1.0 / 3.0), 3f64.ln()));
        assert!(close(e(1.0 / 6.0), 3f64.ln()));
        assert!(close(e(0.2), -0.6 * 0.3f64.ln() - 0.4 * 0.4f64.ln()));
        assert!(matches!(entropy_leb(&Params::g(2, 0.25).unwrap()), Err(Error::NeutralParameter)));
    }

    #[test]
    fn bernoulli_examples() {
        let v = bernoulli_vector_leb(&Params::g(2, 0.2).unwrap()).unwrap().probabilities;
        assert!(close(v[0], 0.3) && close(v[1], 0.3) && close(v[2], 0.4));
        let v = bernoulli_vector_leb(&Params::g(2, 1.0 / 3.0).unwrap()).unwrap().probabilities;
        assert!(v.iter().all(|&q| close(q, 1.0 / 3.0)));
        for a in [0.05, 0.1, 0.2, 0.3, 0.4, 0.45] {
            let p = Params::g(2, a).unwrap();
            let v = bernoulli_vector_leb(&p).unwrap();
            assert!(close(v.probabilities.iter().sum(), 1.0));
            assert!(close(v.entropy(), entropy_leb(&p).unwrap()));
        }
    }

    #[test]
    fn bounds() {
        assert!(close(ruelle_bound(3f64.ln(), -0.2), 3f64.ln()));
        assert_eq!(ruelle_bound(0.0, 0.0), 0.0);
        let z = zero_u_bound(&Params::g(2, 0.25).unwrap());
        assert!(close(z, 1.5 * LN_2));
        assert!(z < 3f64.ln());
    }

    #[test]
    fn leb_params() {
        let (al, be) = mme_leb_params(2);
        assert!(close(al.0, 1.0 / 3.0) && close(al.1, 1.0 / 6.0));
        assert!(close(be.0, 1.0 / 6.0) && close(be.1, 1.0 / 3.0));
        let (al, _) = mme_leb_params(3);
        assert!(close(al.0, 0.25) && close(al.1, 1.0 / 12.0));
    }

    #[test]
    fn preimage_measure() {
        let bx = Box3 {
            u: Interval { lo: 0.1, len: 0.5 },
            c: Interval { lo: 0.3, len: 0.4 },
            s: Interval { lo: 0.2, len: 0.7 },
        };
        let p = Params::new_2d(2, 0.37).unwrap();
        assert!((leb_preimage_measure(&p, Dims::Two, &bx).unwrap() - 0.2).abs() < 1e-12);
        let p = Params::new(2, 1.0 / 3.0, 1.0 / 6.0).unwrap();
        assert!((leb_preimage_measure(&p, Dims::Three, &bx).unwrap() - bx.volume()).abs() < 1e-12);
        let p = Params::new(2, 1.0 / 3.0, 0.2).unwrap();
        let w = beta1_image_box(&p);
        assert!((w.volume() - 0.2).abs() < 1e-12);
        assert!((leb_preimage_measure(&p, Dims::Three, &w).unwrap() - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn birkhoff_beta2_fixed_point() {
        // beta_2 fixes (1, 1, 1): u = 1 is the right end of the beta branch.
        let p = Params::new(2, 1.0 / 3.0, 1.0 / 6.0).unwrap();
        let x = Point3::new(1.0, 1.0, 1.0);
        let r = birkhoff_exponents(&p, Dims::Three, Init::Point(x), 1000, 0).unwrap();
        assert_eq!(r.chi_c, LN_2);
    }

    #[test]
    fn birkhoff_leb_short() {
        let p = Params::g(2, 1.0 / 3.0).unwrap();
        let r = birkhoff_exponents(&p, Dims::Three, Init::Lebesgue, 1_000_000, 3).unwrap();
        assert!((r.chi_c - chi_c_leb_analytic(&p)).abs() < 5.0 * r.chi_c_stderr.unwrap());
        assert!((r.chi_u - chi_u_leb_analytic(&p)).abs() < 0.01);
    }

    #[test]
    fn mme_marginals_small() {
        let p = Params::new(2, 1.0 / 3.0, 1.0 / 6.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let pts: Vec<Point3> = sample_mme(&p, Side::Alpha, 3000, 40, &mut rng).unwrap().iter().map(|s| s.point).collect();
        let m = domain_masses(&p, &pts);
        for e in &m[..2] {
            assert!((e.value - 1.0 / 3.0).abs() < 4.0 * e.stderr + 1e-3, "{m:?}");
        }
    }
}
