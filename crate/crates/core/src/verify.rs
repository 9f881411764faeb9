//! Desk-scale invariant suites behind the `verify` command.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coding::{decode, diameter_bounds, itinerary, verify_coding, Box3, Interval};
use crate::dyck::{
    enumerate_admissible, iota_dyck, nu_cylinder_estimates, nu_cylinder_exact, phi_alpha, phi_beta, psi,
    reduce, ReducedForm, Side,
};
use crate::error::{Error, Result};
use crate::maps::{Dims, Params, Point2, Point3, Symbol};
use crate::measures::{
    beta1_image_box, bernoulli_vector_leb, birkhoff_exponents, birkhoff_from_points, chi_c_leb_analytic,
    chi_c_mme_analytic, domain_masses, entropy_leb, leb_preimage_measure, ruelle_bound, sample_mme, zero_u_bound,
    VerificationRecord, WindowSampler,
};
use crate::orbit::Init;
use crate::periodic::{brute_force_fixed_points, enumerate_periodic, fixed_points};
use crate::stats::{autocorrelation, correlation_run, generate_series, noise_floor, CorrelationSpec, Observable, SeriesStats};

/// Reduction by repeatedly deleting an adjacent `alpha_i beta_i` pair; an
/// adjacent `alpha_i beta_j` with `i != j` gives zero. Quadratic, used as an
/// independent check of [`reduce`].
pub fn reduce_by_rewriting(word: &[Symbol]) -> ReducedForm {
    let mut w = word.to_vec();
    'outer: loop {
        for i in 0..w.len().saturating_sub(1) {
            if w[i].is_alpha() && w[i + 1].is_beta() {
                if w[i].index != w[i + 1].index {
                    return ReducedForm::Zero;
                }
                w.drain(i..i + 2);
                continue 'outer;
            }
        }
        break;
    }
    let split = w.iter().position(|s| s.is_alpha()).unwrap_or(w.len());
    ReducedForm::Word {
        betas: w[..split].iter().map(|s| s.index).collect(),
        alphas: w[split..].iter().map(|s| s.index).collect(),
    }
}

pub fn random_word<R: Rng + ?Sized>(m: u32, n: usize, rng: &mut R) -> Vec<Symbol> {
    (0..n)
        .map(|_| {
            let k = rng.random_range(1..=m) as u8;
            if rng.random_bool(0.5) {
                Symbol::alpha(k)
            } else {
                Symbol::beta(k)
            }
        })
        .collect()
}

/// A box inside the unit cube with random corners.
pub fn random_box<R: Rng + ?Sized>(rng: &mut R) -> Box3 {
    let mut side = || {
        let (x, y): (f64, f64) = (rng.random(), rng.random());
        Interval { lo: x.min(y), len: (x - y).abs() }
    };
    Box3 { u: side(), c: side(), s: side() }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub records: Vec<VerificationRecord>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &VerificationRecord> {
        self.records.iter().filter(|r| !r.pass)
    }
}

struct Sink {
    param: String,
    records: Vec<VerificationRecord>,
}

impl Sink {
    fn rec(&mut self, quantity: &str, analytic: f64, empirical: f64, stderr: Option<f64>, pass: bool) {
        self.records.push(VerificationRecord {
            parameter: self.param.clone(),
            quantity: quantity.into(),
            analytic,
            empirical,
            stderr,
            pass,
        });
    }
}

/// Runs every suite for `p` at desk scale. Suites that need `b` are
/// skipped for 2D parameters.
pub fn run_all(p: &Params, seed: u64, threads: usize) -> Result<VerifyReport> {
    let param = match p.b() {
        Some(b) => format!("M={},a={},b={}", p.m(), p.a(), b),
        None => format!("M={},a={}", p.m(), p.a()),
    };
    let mut s = Sink { param, records: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    leb_invariance(p, &mut s, &mut rng)?;
    exponents(p, &mut s, seed)?;
    entropy(p, &mut s)?;
    dyck(p, &mut s, &mut rng)?;
    periodic(p, &mut s)?;
    if p.b().is_some() {
        coding(p, &mut s, &mut rng)?;
        mme(p, &mut s, &mut rng)?;
    }
    statistics(p, &mut s, seed, threads)?;
    let pass = s.records.iter().all(|r| r.pass);
    Ok(VerifyReport { seed, records: s.records, pass })
}

fn leb_invariance<R: Rng>(p: &Params, s: &mut Sink, rng: &mut R) -> Result<()> {
    let p2 = p.to_2d();
    let worst = (0..200)
        .map(|_| {
            let b = random_box(rng);
            leb_preimage_measure(&p2, Dims::Two, &b).map(|v| (v - b.u.len * b.c.len).abs())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    s.rec("leb_invariance_2d_max_error", 0.0, worst, None, worst < 1e-12);
    if p.b().is_some() {
        // Both directions: the witness box is preserved iff a + b = 1/M.
        let w = beta1_image_box(p);
        let defect = (leb_preimage_measure(p, Dims::Three, &w)? - w.volume()).abs();
        let predicted = ((1.0 - p.ma()) / p.mf() - p.b3()).abs();
        let invariant = p.is_leb_invariant();
        s.rec(
            "leb_invariance_3d_witness_defect",
            predicted,
            defect,
            None,
            (defect - predicted).abs() < 1e-12 && (defect <= 1e-12) == invariant,
        );
        if invariant {
            let worst = (0..200)
                .map(|_| {
                    let b = random_box(rng);
                    leb_preimage_measure(p, Dims::Three, &b).map(|v| (v - b.volume()).abs())
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            s.rec("leb_invariance_3d_max_error", 0.0, worst, None, worst < 1e-12);
        }
    }
    Ok(())
}

fn exponents(p: &Params, s: &mut Sink, seed: u64) -> Result<()> {
    let g = Params::g(p.m(), p.a())?;
    let r = birkhoff_exponents(&g, Dims::Three, Init::Lebesgue, 1_000_000, seed)?;
    let want = chi_c_leb_analytic(&g);
    let se = r.chi_c_stderr.unwrap_or(0.0);
    s.rec("chi_c_leb_birkhoff", want, r.chi_c, Some(se), (r.chi_c - want).abs() < 5.0 * se + 1e-3);
    // beta_M fixes (1, 1, 1).
    let r = birkhoff_exponents(&g, Dims::Three, Init::Point(Point3::new(1.0, 1.0, 1.0)), 100, 0)?;
    let want = p.mf().ln();
    s.rec("chi_c_beta_fixed_point", want, r.chi_c, None, (r.chi_c - want).abs() < 1e-12);
    Ok(())
}

fn entropy(p: &Params, s: &mut Sink) -> Result<()> {
    let top = 1.0 / p.mf();
    let mut worst: f64 = 0.0;
    for i in 1..=20 {
        let t = i as f64 / 21.0;
        for a in [0.5 * top * t, 0.5 * top * (1.0 + t)] {
            let q = Params::g(p.m(), a)?;
            worst = worst.max((bernoulli_vector_leb(&q)?.entropy() - entropy_leb(&q)?).abs());
        }
    }
    s.rec("entropy_bernoulli_identity_max_error", 0.0, worst, None, worst < 1e-12);
    let e = entropy_leb(&Params::g(p.m(), 1.0 / (p.mf() + 1.0))?)?;
    let want = (p.mf() + 1.0).ln();
    s.rec("entropy_leb_at_mme_parameter", want, e, None, (e - want).abs() < 1e-12);
    let z = zero_u_bound(&Params::g(p.m(), 0.5 / p.mf())?);
    s.rec("zero_u_bound_below_log_m_plus_1", want, z, None, z < want);
    Ok(())
}

fn dyck<R: Rng>(p: &Params, s: &mut Sink, rng: &mut R) -> Result<()> {
    let m = p.m();
    let bad = (0..10_000)
        .filter(|_| {
            let n = rng.random_range(0..=16);
            let w = random_word(m, n, rng);
            reduce(&w) != reduce_by_rewriting(&w)
        })
        .count();
    s.rec("reduce_vs_rewriting_disagreements", 0.0, bad as f64, None, bad == 0);

    // psi o phi on words whose closing brackets are all matched inside.
    let mut bad = 0;
    let mut sampler = WindowSampler::default();
    for side in [Side::Alpha, Side::Beta] {
        for _ in 0..1000 {
            let w = sampler.window(side, m, 6, rng).joined();
            let open = match reduce(&w) {
                ReducedForm::Word { betas, alphas } => match side {
                    Side::Alpha => betas.len(),
                    Side::Beta => alphas.len(),
                },
                ReducedForm::Zero => usize::MAX,
            };
            if open != 0 {
                continue;
            }
            let phi = match side {
                Side::Alpha => phi_alpha(&w),
                Side::Beta => phi_beta(&w),
            };
            if psi(m, &phi, rng)?.word != w {
                bad += 1;
            }
        }
    }
    s.rec("psi_phi_identity_failures", 0.0, bad as f64, None, bad == 0);

    let mut bad = 0;
    for _ in 0..1000 {
        let w = sampler.window(Side::Alpha, m, 5, rng);
        let i = iota_dyck(&w)?;
        if iota_dyck(&i)? != w || i.is_admissible() != w.is_admissible() {
            bad += 1;
        }
    }
    s.rec("iota_involution_failures", 0.0, bad as f64, None, bad == 0);

    // Exact versus Monte Carlo cylinder weights, matched windows up to length 4.
    let mut words = Vec::new();
    for n in 1..=4 {
        words.extend(enumerate_admissible(m, n)?.into_iter().filter(|w| nu_cylinder_exact(Side::Alpha, m, w).is_ok()));
    }
    let est = nu_cylinder_estimates(Side::Alpha, m, &words, 200_000, crate::dyck::DEFAULT_BURN_IN, rng);
    let mut worst: f64 = 0.0;
    for (w, e) in words.iter().zip(&est) {
        let exact = nu_cylinder_exact(Side::Alpha, m, w)?;
        worst = worst.max((e.value - exact).abs() / e.stderr.max(1e-12));
    }
    s.rec("nu_cylinder_exact_vs_mc_max_z", 0.0, worst, None, worst < 4.5);
    Ok(())
}

fn periodic(p: &Params, s: &mut Sink) -> Result<()> {
    let p2 = p.to_2d();
    let mut worst: f64 = 0.0;
    let mut count_diff = 0usize;
    for n in 1..=4 {
        let cf = fixed_points(&p2, n, Dims::Two)?;
        let bf = brute_force_fixed_points(&p2, n, 64)?;
        count_diff += cf.len().abs_diff(bf.points.len());
        for (x, _) in &cf {
            let d = bf.points.iter().map(|q| q.dist(&Point2::new(x.u, x.c))).fold(f64::INFINITY, f64::min);
            worst = worst.max(d);
        }
    }
    s.rec("periodic_closed_form_vs_brute_force_max_dist", 0.0, worst, None, worst < 1e-6 && count_diff == 0);
    let mut bad = 0;
    for n in 1..=8 {
        let set = enumerate_periodic(&p2, n, Dims::Two)?;
        if set.count_dim(1) != set.count_dim(2) {
            bad += 1;
        }
    }
    s.rec("periodic_dim1_eq_dim2_violations", 0.0, bad as f64, None, bad == 0);
    Ok(())
}

fn coding<R: Rng>(p: &Params, s: &mut Sink, rng: &mut R) -> Result<()> {
    let rep = verify_coding(p, 6, 2000, rng)?;
    s.rec("coding_violations", 0.0, rep.violations() as f64, None, rep.violations() == 0);
    let mut bad = 0;
    let mut sampler = WindowSampler::default();
    for _ in 0..300 {
        let w = sampler.window(Side::Alpha, p.m(), 12, rng);
        let d = decode(p, &w)?;
        let b = diameter_bounds(p, &w, Side::Alpha);
        let c = d.cuboid;
        if c.u.len > b.u * (1.0 + 1e-12) || c.c.len > b.c * (1.0 + 1e-12) || c.s.len > b.s * (1.0 + 1e-12) {
            bad += 1;
        }
        match itinerary(p, d.point, w.future.len()) {
            Ok(it) if it == w.future => {}
            _ => bad += 1,
        }
    }
    s.rec("decode_bounds_and_round_trip_failures", 0.0, bad as f64, None, bad == 0);
    Ok(())
}

fn mme<R: Rng>(p: &Params, s: &mut Sink, rng: &mut R) -> Result<()> {
    let third = 1.0 / (p.mf() + 1.0);
    for side in [Side::Alpha, Side::Beta] {
        let name = match side {
            Side::Alpha => "alpha",
            Side::Beta => "beta",
        };
        let pts: Vec<Point3> = sample_mme(p, side, 20_000, 40, rng)?.into_iter().map(|x| x.point).collect();
        let masses = domain_masses(p, &pts);
        let m = p.m() as usize;
        let (indexed, bare) = match side {
            Side::Alpha => (&masses[..m], &masses[m..]),
            Side::Beta => (&masses[m..], &masses[..m]),
        };
        for (k, e) in indexed.iter().enumerate() {
            let z = (e.value - third).abs() / e.stderr;
            s.rec(&format!("mme_{name}_mass_{}{}", &name[..1], k + 1), third, e.value, Some(e.stderr), z < 4.0);
        }
        let union: f64 = bare.iter().map(|e| e.value).sum();
        let se = (third * (1.0 - third) / pts.len() as f64).sqrt();
        s.rec(&format!("mme_{name}_mass_other_union"), third, union, Some(se), (union - third).abs() < 4.0 * se);
        let (chi_c, chi_u) = birkhoff_from_points(p, &pts, 16);
        let want = chi_c_mme_analytic(p.m(), side);
        s.rec(&format!("mme_{name}_chi_c"), want, chi_c.value, Some(chi_c.stderr), (chi_c.value - want).abs() < 1e-2 + 4.0 * chi_c.stderr);
        let h = (p.mf() + 1.0).ln();
        let bound = ruelle_bound(chi_u.value, chi_c.value);
        s.rec(&format!("mme_{name}_ruelle"), h, bound, Some(chi_u.stderr), h <= bound + 4.0 * chi_u.stderr + 4.0 * chi_c.stderr + 1e-12);
    }
    Ok(())
}

fn statistics(p: &Params, s: &mut Sink, seed: u64, threads: usize) -> Result<()> {
    let dims = if p.b().is_some() { Dims::Three } else { Dims::Two };
    let delays: Vec<usize> = (1..=5).collect();
    // Estimator against the quadratic reference.
    let xs: Vec<f64> = generate_series(p, dims, Init::Lebesgue, 2000, Observable::Xc, 100, seed, 0)?.collect();
    let n = xs.len() - 5;
    let got = autocorrelation(xs.iter().copied(), &delays, n as u64)?;
    let mut worst: f64 = 0.0;
    for (k, &d) in delays.iter().enumerate() {
        let e = xs[..n].iter().sum::<f64>() / n as f64;
        let r = ((0..n).map(|i| (xs[i] - e) * (xs[i + d] - e)).sum::<f64>() / n as f64).abs();
        worst = worst.max((got[k] - r).abs());
    }
    s.rec("autocorrelation_vs_reference_max_error", 0.0, worst, None, worst < 1e-12);

    // Merge of two contiguous halves.
    let mut whole = SeriesStats::new(&delays, 0.5)?;
    whole.extend(xs.iter().copied());
    let mut left = SeriesStats::new(&delays, 0.5)?;
    let mut right = SeriesStats::new(&delays, 0.5)?;
    left.extend(xs[..777].iter().copied());
    right.extend(xs[777..].iter().copied());
    let (a, b) = (whole.finish()?, left.merge(right)?.finish()?);
    let worst = a.iter().zip(&b).map(|(x, y)| (x - y).abs() / x.abs().max(1e-300)).fold(0.0, f64::max);
    s.rec("series_merge_max_relative_error", 0.0, worst, None, worst < 1e-10);

    let spec = CorrelationSpec {
        dims,
        n: 1 << 20,
        delays: (100..=110).collect(),
        observable: Observable::Xc,
        burn_in: 10_000,
        seed,
        threads,
    };
    let r1 = correlation_run(p, &spec)?;
    let r2 = correlation_run(p, &spec)?;
    s.rec("correlation_seed_determinism", 0.0, if r1.cor == r2.cor { 0.0 } else { 1.0 }, None, r1.cor == r2.cor);
    if (p.ma() - 0.5).abs() > 0.05 {
        let worst = r1.cor.iter().copied().fold(0.0, f64::max);
        s.rec("correlation_large_delay_below_floor", noise_floor(r1.n), worst, None, worst < r1.floor);
    }
    Ok(())
}

/// Parses `"1/3"` or a decimal.
pub fn parse_real(s: &str) -> Result<f64> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.trim().parse().map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
            let d: f64 = d.trim().parse().map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
            n / d
        }
        None => s.parse().map_err(|_| Error::Parse(format!("bad number {s:?}")))?,
    };
    if !v.is_finite() {
        return Err(Error::Parse(format!("not a finite number: {s:?}")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck::DyckWord;

    #[test]
    fn rewriting_examples() {
        let w: DyckWord = "a1 a2 b2 b1".parse().unwrap();
        assert!(reduce_by_rewriting(&w).is_unit());
        let w: DyckWord = "b1 a1 b2".parse().unwrap();
        assert!(reduce_by_rewriting(&w).is_zero());
        let w: DyckWord = "b2 a1 b1 a2".parse().unwrap();
        assert_eq!(reduce_by_rewriting(&w), ReducedForm::Word { betas: vec![2], alphas: vec![2] });
    }

    #[test]
    fn parse_real_forms() {
        assert_eq!(parse_real("1/4").unwrap(), 0.25);
        assert_eq!(parse_real(" 0.5 ").unwrap(), 0.5);
        assert!(parse_real("x").is_err());
        assert!(parse_real("1/0").is_err());
    }
}
