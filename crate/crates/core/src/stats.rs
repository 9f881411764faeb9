//! Long orbits, autocorrelations and Li-Yorke diagnostics.
//!
//! For a series `X_0, X_1, ..` the estimator is
//!
//! ```text
//! Cor_{n,N}(X) = | 1/N sum_{i<N} (X_i - E_N)(X_{i+n} - E_N) |,   E_N = 1/N sum_{i<N} X_i
//! ```
//!
//! which reads `N + max(delays)` values.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::{phi_c, phi_u, Dims, Params, Point3};
use crate::orbit::{stream_rng, Init, Orbit};

/// Scalar observable along an orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    Xu,
    #[default]
    Xc,
    Xs,
    /// `phi^c` of the current domain.
    PhiC,
    /// `phi^u` of the current domain.
    PhiU,
}

impl std::str::FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "xu" | "x_u" => Ok(Observable::Xu),
            "xc" | "x_c" => Ok(Observable::Xc),
            "xs" | "x_s" => Ok(Observable::Xs),
            "phic" | "phi_c" => Ok(Observable::PhiC),
            "phiu" | "phi_u" => Ok(Observable::PhiU),
            _ => Err(Error::Parse(format!("unknown observable {s:?}"))),
        }
    }
}

impl Observable {
    /// Shift subtracted inside [`SeriesStats`] to keep sums small.
    pub fn center(self) -> f64 {
        match self {
            Observable::Xu | Observable::Xc | Observable::Xs => 0.5,
            Observable::PhiC | Observable::PhiU => 0.0,
        }
    }
}

/// Streaming values `X_i = phi(f^i(x0))`.
pub struct Series {
    orbit: Orbit,
    p: Params,
    observable: Observable,
    remaining: u64,
}

impl Iterator for Series {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let x = self.orbit.point();
        let v = match self.observable {
            Observable::Xu => x.u,
            Observable::Xc => x.c,
            Observable::Xs => x.s,
            Observable::PhiC => phi_c(&self.p, self.orbit.symbol()),
            Observable::PhiU => phi_u(&self.p, self.orbit.symbol()),
        };
        self.orbit.advance();
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.remaining as usize;
        (n, Some(n))
    }
}

/// Default number of steps discarded before recording.
pub const DEFAULT_BURN_IN: usize = 10_000;

/// `n` values of `observable` along the orbit of `init` after `burn_in`
/// steps. Stream `stream` of `seed` drives a Lebesgue start.
#[allow(clippy::too_many_arguments)]
pub fn generate_series(
    p: &Params,
    dims: Dims,
    init: Init,
    n: u64,
    observable: Observable,
    burn_in: usize,
    seed: u64,
    stream: u64,
) -> Result<Series> {
    if n == 0 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    if dims == Dims::Three && p.b().is_none() {
        return Err(Error::InvalidParams("3D orbits need b".into()));
    }
    if dims == Dims::Two && observable == Observable::Xs {
        return Err(Error::InvalidInput("x_s needs a 3D orbit".into()));
    }
    let mut orbit = Orbit::new(p, dims, init, stream_rng(seed, stream));
    orbit.skip(burn_in);
    Ok(Series { orbit, p: *p, observable, remaining: n })
}

const BLOCK: usize = 4096;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0f64; 8];
    let ca = a.chunks_exact(8);
    let cb = b.chunks_exact(8);
    let tail: f64 = ca.remainder().iter().zip(cb.remainder()).map(|(x, y)| x * y).sum();
    for (x, y) in ca.zip(cb) {
        for k in 0..8 {
            acc[k] += x[k] * y[k];
        }
    }
    acc.iter().sum::<f64>() + tail
}

/// Mergeable accumulator of lag products for a fixed set of delays.
///
/// Values are stored shifted by `center`. Besides the running sums it keeps
/// the first and the last `max_delay` values, which is what a merge of two
/// contiguous segments and the final `N = count - max_delay` correction need.
#[derive(Debug, Clone)]
pub struct SeriesStats {
    delays: Vec<usize>,
    maxd: usize,
    center: f64,
    count: u64,
    total: f64,
    /// Sum over all pairs `(i, i+d)` seen so far.
    prods: Vec<f64>,
    head: Vec<f64>,
    /// `maxd` slots of history followed by the current block.
    buf: Vec<f64>,
    fill: usize,
}

/// Per-segment sums behind [`SeriesStats::finish`].
#[derive(Debug, Clone)]
struct Sums {
    n: f64,
    a: f64,
    b: Vec<f64>,
    s: Vec<f64>,
}

impl SeriesStats {
    pub fn new(delays: &[usize], center: f64) -> Result<Self> {
        if delays.is_empty() || delays.contains(&0) {
            return Err(Error::InvalidInput("delays must be a nonempty list of positive integers".into()));
        }
        let maxd = *delays.iter().max().unwrap();
        Ok(SeriesStats {
            delays: delays.to_vec(),
            maxd,
            center,
            count: 0,
            total: 0.0,
            prods: vec![0.0; delays.len()],
            head: Vec::with_capacity(maxd),
            buf: vec![0.0; maxd + BLOCK],
            fill: 0,
        })
    }

    pub fn delays(&self) -> &[usize] {
        &self.delays
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn push(&mut self, x: f64) {
        let y = x - self.center;
        if self.head.len() < self.maxd {
            self.head.push(y);
        }
        self.total += y;
        self.count += 1;
        self.buf[self.maxd + self.fill] = y;
        self.fill += 1;
        if self.fill == BLOCK {
            self.flush();
        }
    }

    pub fn extend<I: IntoIterator<Item = f64>>(&mut self, xs: I) {
        for x in xs {
            self.push(x);
        }
    }

    fn flush(&mut self) {
        let (m, f) = (self.maxd, self.fill);
        if f == 0 {
            return;
        }
        // History slots before the first value hold zeros and add nothing.
        let cur = &self.buf[m..m + f];
        for (k, &d) in self.delays.iter().enumerate() {
            self.prods[k] += dot(cur, &self.buf[m - d..m - d + f]);
        }
        self.buf.copy_within(f..f + m, 0);
        self.fill = 0;
    }

    /// The last `min(count, maxd)` values, oldest first.
    fn tail(&self) -> Vec<f64> {
        let k = (self.count as usize).min(self.maxd);
        let end = self.maxd + self.fill;
        self.buf[end - k..end].to_vec()
    }

    /// Joins the accumulator of the segment that follows this one.
    pub fn merge(mut self, mut next: SeriesStats) -> Result<SeriesStats> {
        if self.delays != next.delays || self.center != next.center {
            return Err(Error::InvalidInput("merged accumulators must share delays and center".into()));
        }
        self.flush();
        next.flush();
        let lt = self.tail();
        let rh = &next.head;
        for (k, &d) in self.delays.iter().enumerate() {
            let mut cross = 0.0;
            // i = len(left) - d + q, j = q
            for q in d.saturating_sub(lt.len())..d.min(rh.len()) {
                cross += lt[lt.len() + q - d] * rh[q];
            }
            self.prods[k] += next.prods[k] + cross;
        }
        let mut head = self.head.clone();
        head.extend(next.head.iter().take(self.maxd - head.len()));
        let mut tail = lt;
        tail.extend(next.tail());
        let tail = &tail[tail.len().saturating_sub(self.maxd)..];
        let m = self.maxd;
        self.buf.iter_mut().for_each(|v| *v = 0.0);
        self.buf[m - tail.len()..m].copy_from_slice(tail);
        self.head = head;
        self.count += next.count;
        self.total += next.total;
        Ok(self)
    }

    fn sums(&self) -> Result<Sums> {
        let mut me = self.clone();
        me.flush();
        let m = me.maxd;
        if (me.count as usize) < 2 * m {
            return Err(Error::InvalidInput(format!(
                "series of length {} too short for delays up to {m}",
                me.count
            )));
        }
        let tail = me.tail();
        let n = me.count as usize - m;
        let a = me.total - tail.iter().sum::<f64>();
        let mut b = Vec::with_capacity(me.delays.len());
        let mut s = Vec::with_capacity(me.delays.len());
        for (k, &d) in me.delays.iter().enumerate() {
            b.push(me.total - me.head[..d].iter().sum::<f64>() - tail[d..].iter().sum::<f64>());
            let over: f64 = (0..m - d).map(|t| tail[t] * tail[t + d]).sum();
            s.push(me.prods[k] - over);
        }
        Ok(Sums { n: n as f64, a, b, s })
    }

    /// `Cor_{n,N}` for each delay with `N = count - max_delay`.
    pub fn finish(&self) -> Result<Vec<f64>> {
        Self::pooled(std::slice::from_ref(self))
    }

    /// Estimator over independent orbits: lag sums and means are pooled, no
    /// pairs straddle two orbits.
    pub fn pooled(parts: &[SeriesStats]) -> Result<Vec<f64>> {
        let sums = parts.iter().map(|p| p.sums()).collect::<Result<Vec<_>>>()?;
        let first = parts.first().ok_or_else(|| Error::InvalidInput("no series".into()))?;
        if parts.iter().any(|p| p.delays != first.delays) {
            return Err(Error::InvalidInput("pooled accumulators must share delays".into()));
        }
        let n: f64 = sums.iter().map(|s| s.n).sum();
        let e = sums.iter().map(|s| s.a).sum::<f64>() / n;
        Ok((0..first.delays.len())
            .map(|k| {
                let cov: f64 = sums.iter().map(|s| s.s[k] - e * (s.a + s.b[k]) + s.n * e * e).sum();
                (cov / n).abs()
            })
            .collect())
    }
}

/// `Cor_{n,N}` for each delay, reading `N + max(delays)` values of `stream`.
pub fn autocorrelation<I: IntoIterator<Item = f64>>(stream: I, delays: &[usize], n: u64) -> Result<Vec<f64>> {
    let mut acc = SeriesStats::new(delays, 0.0)?;
    let need = n + acc.maxd as u64;
    let mut it = stream.into_iter();
    let mut first = true;
    for _ in 0..need {
        let x = it.next().ok_or_else(|| Error::InvalidInput(format!("stream ended before {need} values")))?;
        if first {
            acc.center = x;
            first = false;
        }
        acc.push(x);
    }
    if n < acc.maxd as u64 {
        return Err(Error::InvalidInput("N must be at least the largest delay".into()));
    }
    acc.finish()
}

/// `5 / sqrt(N)`.
pub fn noise_floor(n: u64) -> f64 {
    5.0 / (n as f64).sqrt()
}

/// Settings of a correlation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationSpec {
    pub dims: Dims,
    pub n: u64,
    pub delays: Vec<usize>,
    pub observable: Observable,
    pub burn_in: usize,
    pub seed: u64,
    pub threads: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationResult {
    pub delays: Vec<usize>,
    pub cor: Vec<f64>,
    pub floor: f64,
    pub n: u64,
}

/// `Cor_{n,N}` from Lebesgue-random starts. With one thread this is a single
/// orbit of length `N`; with `t > 1` threads it pools `t` independent orbits
/// of length `N/t`, worker `w` using stream `w` of the seed.
pub fn correlation_run(p: &Params, spec: &CorrelationSpec) -> Result<CorrelationResult> {
    let t = spec.threads.max(1) as u64;
    let per = spec.n / t;
    if per == 0 {
        return Err(Error::InvalidInput("N must be at least the thread count".into()));
    }
    let maxd = *spec.delays.iter().max().ok_or_else(|| Error::InvalidInput("no delays".into()))? as u64;
    let work = |w: u64| -> Result<SeriesStats> {
        let mut acc = SeriesStats::new(&spec.delays, spec.observable.center())?;
        let series = generate_series(p, spec.dims, Init::Lebesgue, per + maxd, spec.observable, spec.burn_in, spec.seed, w)?;
        acc.extend(series);
        Ok(acc)
    };
    let parts: Vec<SeriesStats> = parallel_map(t as usize, spec.threads, |w| work(w as u64))?;
    let cor = SeriesStats::pooled(&parts)?;
    let n = per * t;
    Ok(CorrelationResult { delays: spec.delays.clone(), cor, floor: noise_floor(n), n })
}

/// Runs `f(0..jobs)` on up to `threads` scoped workers, results in job order.
pub fn parallel_map<T, F>(jobs: usize, threads: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync,
{
    let threads = threads.clamp(1, jobs.max(1));
    if threads == 1 {
        return (0..jobs).map(&f).collect();
    }
    let f = &f;
    let chunks: Vec<Vec<Result<T>>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|w| s.spawn(move || (w..jobs).step_by(threads).map(f).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut iters: Vec<_> = chunks.into_iter().map(|c| c.into_iter()).collect();
    (0..jobs).map(|j| iters[j % threads].next().expect("job result")).collect()
}

/// Fitted decay law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum DecayModel {
    /// `C lambda^n`
    Exponential { c: f64, lambda: f64 },
    /// `C n^exponent`
    PowerLaw { c: f64, exponent: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Exponential,
    PowerLaw,
}

impl std::str::FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exponential" | "exp" => Ok(ModelKind::Exponential),
            "powerlaw" | "power" | "power_law" => Ok(ModelKind::PowerLaw),
            _ => Err(Error::Parse(format!("unknown decay model {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub model: DecayModel,
    /// First and last delay used.
    pub range: (usize, usize),
    pub points: usize,
    /// Root mean square of the log residuals.
    pub residual: f64,
    /// Set for power-law fits, whose target rate is conjectural.
    pub conjecture_flag: bool,
}

/// Minimum number of points above the floor for a fit.
pub const MIN_FIT_POINTS: usize = 8;

/// Least squares of `log Cor` against `n` (exponential) or `log n` (power
/// law). The fit uses delays in increasing order up to the first value at or
/// below `floor`.
pub fn fit_decay(values: &[f64], delays: &[usize], model: ModelKind, floor: f64) -> Result<DecayFit> {
    if values.len() != delays.len() {
        return Err(Error::InvalidInput("values and delays differ in length".into()));
    }
    let mut pts: Vec<(usize, f64)> = delays.iter().copied().zip(values.iter().copied()).collect();
    pts.sort_by_key(|&(d, _)| d);
    let used: Vec<(usize, f64)> = pts.into_iter().take_while(|&(_, v)| v > floor && v > 0.0).collect();
    if used.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientSignal { found: used.len(), needed: MIN_FIT_POINTS });
    }
    let xs: Vec<f64> = used
        .iter()
        .map(|&(d, _)| match model {
            ModelKind::Exponential => d as f64,
            ModelKind::PowerLaw => (d as f64).ln(),
        })
        .collect();
    let ys: Vec<f64> = used.iter().map(|&(_, v)| v.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientSignal { found: 1, needed: MIN_FIT_POINTS });
    }
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    let residual = (xs.iter().zip(&ys).map(|(x, y)| (y - icpt - slope * x).powi(2)).sum::<f64>() / k).sqrt();
    if slope >= 0.0 {
        return Err(Error::InsufficientSignal { found: 0, needed: MIN_FIT_POINTS });
    }
    let model = match model {
        ModelKind::Exponential => DecayModel::Exponential { c: icpt.exp(), lambda: slope.exp() },
        ModelKind::PowerLaw => DecayModel::PowerLaw { c: icpt.exp(), exponent: slope },
    };
    Ok(DecayFit {
        model,
        range: (used[0].0, used[used.len() - 1].0),
        points: used.len(),
        residual,
        conjecture_flag: matches!(model, DecayModel::PowerLaw { .. }),
    })
}

fn dist(a: Point3, b: Point3, dims: Dims) -> f64 {
    match dims {
        Dims::Two => (a.u - b.u).hypot(a.c - b.c),
        Dims::Three => a.dist(&b),
    }
}

/// Smallest and largest orbit distance over `n = 0..=N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairStats {
    pub min: f64,
    pub max: f64,
}

fn track(mut x: Orbit, mut y: Orbit, dims: Dims, n: u64) -> PairStats {
    let d0 = dist(x.point(), y.point(), dims);
    let mut st = PairStats { min: d0, max: d0 };
    for _ in 0..n {
        x.advance();
        y.advance();
        let d = dist(x.point(), y.point(), dims);
        st.min = st.min.min(d);
        st.max = st.max.max(d);
    }
    st
}

/// Distance extremes for an explicit pair, iterated in double precision.
pub fn li_yorke_pair(p: &Params, dims: Dims, x: Point3, y: Point3, n: u64) -> Result<PairStats> {
    if dist(x, y, dims) == 0.0 {
        return Err(Error::InvalidInput("a Li-Yorke pair needs two distinct points".into()));
    }
    if dims == Dims::Three && p.b().is_none() {
        return Err(Error::InvalidParams("3D orbits need b".into()));
    }
    let o = |z| Orbit::new(p, dims, Init::Point(z), stream_rng(0, 0));
    Ok(track(o(x), o(y), dims, n))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiYorkeReport {
    pub pairs: usize,
    pub n: u64,
    pub delta: f64,
    /// `sqrt(d)`.
    pub diameter: f64,
    /// Pairs with `min < delta`.
    pub close: usize,
    /// Pairs with `max > sqrt(d) - delta`.
    pub far: usize,
    /// Pairs satisfying both.
    pub both: usize,
    pub fraction: f64,
}

/// Fraction of random pairs whose orbit distance comes within `delta` of 0
/// and of the diameter `sqrt(d)` within `N` steps. Pair `i` uses streams
/// `2i` and `2i + 1`, so the result does not depend on `threads`.
pub fn li_yorke_estimate(p: &Params, dims: Dims, n_pairs: usize, n: u64, delta: f64, seed: u64, threads: usize) -> Result<LiYorkeReport> {
    if dims == Dims::Three && p.b().is_none() {
        return Err(Error::InvalidParams("3D orbits need b".into()));
    }
    let diameter = (dims.count() as f64).sqrt();
    let stats = parallel_map(n_pairs, threads, |i| {
        let o = |s| Orbit::new(p, dims, Init::Lebesgue, stream_rng(seed, s));
        Ok(track(o(2 * i as u64), o(2 * i as u64 + 1), dims, n))
    })?;
    let close = stats.iter().filter(|s| s.min < delta).count();
    let far = stats.iter().filter(|s| s.max > diameter - delta).count();
    let both = stats.iter().filter(|s| s.min < delta && s.max > diameter - delta).count();
    Ok(LiYorkeReport {
        pairs: n_pairs,
        n,
        delta,
        diameter,
        close,
        far,
        both,
        fraction: if n_pairs == 0 { 0.0 } else { both as f64 / n_pairs as f64 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn reference(xs: &[f64], d: usize, n: usize) -> f64 {
        let e = xs[..n].iter().sum::<f64>() / n as f64;
        ((0..n).map(|i| (xs[i] - e) * (xs[i + d] - e)).sum::<f64>() / n as f64).abs()
    }

    #[test]
    fn matches_reference_across_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let xs: Vec<f64> = (0..3 * BLOCK + 77).map(|_| rng.random()).collect();
        let delays = [1, 2, 5, 40];
        let n = xs.len() - 40;
        let got = autocorrelation(xs.iter().copied(), &delays, n as u64).unwrap();
        for (k, &d) in delays.iter().enumerate() {
            assert!((got[k] - reference(&xs, d, n)).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_series() {
        let got = autocorrelation(std::iter::repeat(0.3), &[1, 2, 3], 1000).unwrap();
        assert!(got.iter().all(|&c| c < 1e-15));
    }

    #[test]
    fn merge_equals_single_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let xs: Vec<f64> = (0..10_000).map(|_| rng.random()).collect();
        let delays = [1, 3, 17];
        let mut whole = SeriesStats::new(&delays, 0.5).unwrap();
        whole.extend(xs.iter().copied());
        for cuts in [[5usize, 9], [100, 5000], [4096, 4100]] {
            let mut parts = Vec::new();
            let bounds = [0, cuts[0], cuts[1], xs.len()];
            for w in bounds.windows(2) {
                let mut s = SeriesStats::new(&delays, 0.5).unwrap();
                s.extend(xs[w[0]..w[1]].iter().copied());
                parts.push(s);
            }
            let merged = parts.into_iter().reduce(|a, b| a.merge(b).unwrap()).unwrap();
            let (x, y) = (whole.finish().unwrap(), merged.finish().unwrap());
            for k in 0..delays.len() {
                assert!((x[k] - y[k]).abs() <= 1e-10 * x[k].abs().max(1e-12));
            }
        }
    }

    #[test]
    fn fixed_point_series() {
        let p = Params::new(2, 1.0 / 3.0, 1.0 / 6.0).unwrap();
        let s = generate_series(&p, Dims::Three, Init::Point(Point3::default()), 100, Observable::Xc, 0, 0, 0).unwrap();
        assert!(s.into_iter().all(|v| v == 0.0));
    }

    #[test]
    fn fits_recover_models() {
        let delays: Vec<usize> = (1..=60).collect();
        let v: Vec<f64> = delays.iter().map(|&n| 0.01 * 0.92f64.powi(n as i32)).collect();
        let f = fit_decay(&v, &delays, ModelKind::Exponential, 0.0).unwrap();
        let DecayModel::Exponential { c, lambda } = f.model else { panic!() };
        assert!((lambda - 0.92).abs() < 1e-6 && (c - 0.01).abs() < 1e-6);
        let v: Vec<f64> = delays.iter().map(|&n| (n as f64).powf(-1.5)).collect();
        let f = fit_decay(&v, &delays, ModelKind::PowerLaw, 0.0).unwrap();
        let DecayModel::PowerLaw { exponent, .. } = f.model else { panic!() };
        assert!((exponent + 1.5).abs() < 1e-6);
        assert!(f.conjecture_flag);
        let r = fit_decay(&v, &delays, ModelKind::PowerLaw, 0.2);
        assert!(matches!(r, Err(Error::InsufficientSignal { .. })));
    }

    #[test]
    fn identical_pair_rejected() {
        let p = Params::new_2d(2, 1.0 / 3.0).unwrap();
        let x = Point3::new(0.2, 0.3, 0.0);
        assert!(li_yorke_pair(&p, Dims::Two, x, x, 10).is_err());
    }

    #[test]
    fn parallel_map_keeps_order() {
        let v = parallel_map(10, 3, |i| Ok(i * i)).unwrap();
        assert_eq!(v, (0..10).map(|i| i * i).collect::<Vec<_>>());
    }
}
