//! Periodic points from cyclic Dyck words, their unstable dimension, and a
//! brute-force fixed-point oracle working on the maps alone.
//!
//! Along a periodic word each coordinate follows an affine cycle. The
//! u-coordinate is solved through the contracting inverse branches, the
//! s-coordinate through the contracting forward branches. The c-coordinate
//! is read off exactly as an M-adic expansion: for alpha-excess words its
//! digits are the open alpha indices of the infinite past, for beta-excess
//! words the unmatched beta indices of the infinite future.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::dyck::{
    classify_periodic_word, cyclic_admissible_fast, for_each_admissible, reduce, DyckWord, PeriodicClass,
    ReducedForm, DEFAULT_MAX_LEN,
};
use crate::error::{Error, Result};
use crate::maps::{classify2, f2_apply, f2_branch, Dims, Kind, Params, Point2, Point3, Symbol};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodicOrbit {
    /// One period, starting at `point`.
    pub word: DyckWord,
    /// Fixed point of `f^n` on the cylinder of `word`; `s = 0` in 2D.
    pub point: Point3,
    pub dims: Dims,
    pub period: usize,
    /// `((n_beta - n_alpha) / n) log M`.
    pub chi_c: f64,
    pub unstable_dim: u8,
}

impl PeriodicOrbit {
    /// All points of the orbit, starting with `point`.
    pub fn orbit_points(&self, p: &Params) -> Vec<Point3> {
        (0..self.period).map(|i| cycle_point(p, &self.word.rotated(i), self.dims)).collect()
    }
}

/// Result of [`enumerate_periodic`] for one primitive period.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PeriodicSet {
    pub n: usize,
    pub orbits: Vec<PeriodicOrbit>,
    /// Balanced primitive cyclic words (Fix_0), counted but not solved.
    pub fix0: usize,
    /// Unbalanced primitive cyclic words whose fixed point sits on a
    /// discontinuity of `f^n` (or on the wrong side of a half-open domain).
    pub rejected_boundary: usize,
}

impl PeriodicSet {
    pub fn count_dim(&self, d: u8) -> usize {
        self.orbits.iter().filter(|o| o.unstable_dim == d).count()
    }
}

fn u_fixed(p: &Params, word: &[Symbol]) -> f64 {
    // x = off_0 + r_0 (off_1 + r_1 (... + r_{n-1} x))
    let (mut lo, mut prod) = (0.0, 1.0);
    for &s in word.iter().rev() {
        let r = p.u_rate(s.kind);
        lo = p.u_offset(s) + r * lo;
        prod *= r;
    }
    lo / (1.0 - prod)
}

fn s_fixed(p: &Params, word: &[Symbol]) -> f64 {
    let (mut slope, mut off) = (1.0, 0.0);
    for &s in word {
        let (k, d) = p.s_affine(s);
        slope *= k;
        off = k * off + d;
    }
    off / (1.0 - slope)
}

/// c-digits of the periodic point at time 0 as `prefix ++ block^inf`
/// (0-based digits). The word must be cyclically admissible and unbalanced.
fn c_digit_pattern(red: &ReducedForm) -> (Vec<u8>, Vec<u8>) {
    let ReducedForm::Word { betas, alphas } = red else { unreachable!("zero form") };
    let dec = |v: &[u8]| v.iter().map(|d| d - 1).collect::<Vec<u8>>();
    if alphas.len() > betas.len() {
        let mut prefix = dec(alphas);
        prefix.reverse();
        let mut block = dec(&alphas[..alphas.len() - betas.len()]);
        block.reverse();
        (prefix, block)
    } else {
        (dec(betas), dec(&betas[alphas.len()..]))
    }
}

fn digits_value(m: u32, prefix: &[u8], block: &[u8]) -> f64 {
    let mf = m as f64;
    let mut digits: Vec<u8> = prefix.to_vec();
    while (digits.len() as f64) * mf.log2() < 64.0 {
        digits.extend_from_slice(block);
    }
    digits.iter().rev().fold(0.0, |acc, &d| (acc + d as f64) / mf)
}

/// Whether the digits after the first are all equal to `d`.
fn tail_constant(prefix: &[u8], block: &[u8], d: u8) -> bool {
    prefix.iter().skip(1).all(|&x| x == d) && block.iter().all(|&x| x == d)
}

fn cycle_point(p: &Params, word: &[Symbol], dims: Dims) -> Point3 {
    let (prefix, block) = c_digit_pattern(&reduce(word));
    Point3 {
        u: u_fixed(p, word),
        c: digits_value(p.m(), &prefix, &block),
        s: match dims {
            Dims::Two => 0.0,
            Dims::Three => s_fixed(p, word),
        },
    }
}

/// Whether `f^n` is smooth at the periodic point and every orbit point lies
/// in its half-open domain. Only beta steps can fail: there the c-value must
/// avoid the internal lines `x_c = k/M`.
fn boundary_ok(m: u32, word: &[Symbol]) -> bool {
    let top = (m - 1) as u8;
    (0..word.len()).all(|i| {
        let s = word[i];
        if s.kind == Kind::Alpha {
            return true;
        }
        let mut rot = word.to_vec();
        rot.rotate_left(i);
        let (prefix, block) = c_digit_pattern(&reduce(&rot));
        let k = s.index;
        let left_edge = k >= 2 && tail_constant(&prefix, &block, 0);
        let right_edge = k < m as u8 && tail_constant(&prefix, &block, top);
        !(left_edge || right_edge)
    })
}

fn make_orbit(p: &Params, word: &[Symbol], dims: Dims) -> PeriodicOrbit {
    let n = word.len();
    let nb = word.iter().filter(|s| s.is_beta()).count();
    let na = n - nb;
    let chi_c = (nb as f64 - na as f64) / n as f64 * p.mf().ln();
    PeriodicOrbit {
        word: DyckWord(word.to_vec()),
        point: cycle_point(p, word, dims),
        dims,
        period: n,
        chi_c,
        unstable_dim: if nb > na { 2 } else { 1 },
    }
}

/// The periodic orbit with itinerary `word^inf`, or `None` when its point
/// lies on a discontinuity of `f^n` or outside the half-open domains.
pub fn solve_cycle(p: &Params, word: &[Symbol], dims: Dims) -> Result<Option<PeriodicOrbit>> {
    if word.is_empty() {
        return Err(Error::InvalidInput("periodic word must be nonempty".into()));
    }
    DyckWord(word.to_vec()).check(p.m())?;
    if dims == Dims::Three && p.b().is_none() {
        return Err(Error::InvalidParams("3D periodic points need b".into()));
    }
    match classify_periodic_word(word) {
        PeriodicClass::Inadmissible => Err(Error::Inadmissible),
        PeriodicClass::A0 => Err(Error::BalancedWord),
        _ if !boundary_ok(p.m(), word) => Ok(None),
        _ => Ok(Some(make_orbit(p, word, dims))),
    }
}

/// Strictly smaller than every nontrivial rotation: primitive and canonical.
fn is_lyndon(w: &[Symbol]) -> bool {
    let n = w.len();
    (1..n).all(|r| {
        for i in 0..n {
            let (x, y) = (w[i], w[(i + r) % n]);
            if x != y {
                return x < y;
            }
        }
        false
    })
}

/// Orbits of primitive period exactly `n`, one per cyclic class, each
/// represented by its lexicographically minimal rotation.
pub fn enumerate_periodic(p: &Params, n: usize, dims: Dims) -> Result<PeriodicSet> {
    enumerate_periodic_bounded(p, n, dims, DEFAULT_MAX_LEN)
}

pub fn enumerate_periodic_bounded(p: &Params, n: usize, dims: Dims, bound: usize) -> Result<PeriodicSet> {
    if n == 0 {
        return Err(Error::InvalidInput("period must be at least 1".into()));
    }
    if n > bound {
        return Err(Error::BoundExceeded { requested: n, bound });
    }
    if dims == Dims::Three && p.b().is_none() {
        return Err(Error::InvalidParams("3D periodic points need b".into()));
    }
    let mut set = PeriodicSet { n, ..Default::default() };
    for_each_admissible(p.m(), n, |w| {
        if !is_lyndon(w) {
            return;
        }
        let red = reduce(w);
        if !cyclic_admissible_fast(&red) {
            return;
        }
        let net: i64 = w.iter().map(|s| s.step()).sum();
        if net == 0 {
            set.fix0 += 1;
        } else if boundary_ok(p.m(), w) {
            set.orbits.push(make_orbit(p, w, dims));
        } else {
            set.rejected_boundary += 1;
        }
    });
    Ok(set)
}

/// All points of `Fix(f^n)` off Fix_0: orbits of every period dividing `n`.
pub fn fixed_points(p: &Params, n: usize, dims: Dims) -> Result<Vec<(Point3, u8)>> {
    let mut out = Vec::new();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        for o in enumerate_periodic(p, d, dims)?.orbits {
            out.extend(o.orbit_points(p).into_iter().map(|x| (x, o.unstable_dim)));
        }
    }
    Ok(out)
}

/// Largest distance from a point of a `grid x grid` lattice of cell centres
/// in the unit square to the nearest point of `points`.
pub fn covering_radius(points: &[Point2], grid: usize) -> f64 {
    if points.is_empty() {
        return f64::INFINITY;
    }
    let nb = ((points.len() as f64).sqrt() as usize).clamp(1, 512);
    let mut buckets: Vec<Vec<Point2>> = vec![Vec::new(); nb * nb];
    let cell = |x: f64| ((x * nb as f64) as usize).min(nb - 1);
    for q in points {
        buckets[cell(q.u) * nb + cell(q.c)].push(*q);
    }
    let mut worst: f64 = 0.0;
    for i in 0..grid {
        for j in 0..grid {
            let x = Point2::new((i as f64 + 0.5) / grid as f64, (j as f64 + 0.5) / grid as f64);
            let (bi, bj) = (cell(x.u) as i64, cell(x.c) as i64);
            let mut best = f64::INFINITY;
            let mut r: i64 = 0;
            loop {
                for di in -r..=r {
                    for dj in -r..=r {
                        if di.abs() != r && dj.abs() != r {
                            continue;
                        }
                        let (ii, jj) = (bi + di, bj + dj);
                        if ii < 0 || jj < 0 || ii >= nb as i64 || jj >= nb as i64 {
                            continue;
                        }
                        for q in &buckets[ii as usize * nb + jj as usize] {
                            best = best.min(x.dist(q));
                        }
                    }
                }
                // Points outside the ring are at least r / nb away.
                if best <= r as f64 / nb as f64 || r as usize > nb {
                    break;
                }
                r += 1;
            }
            worst = worst.max(best);
        }
    }
    worst
}

/// Output of [`brute_force_fixed_points`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BruteForce {
    pub points: Vec<Point2>,
    /// Distinct cylinders on which `f^n` fixes a whole vertical segment.
    pub fix0_segments: usize,
    /// Number of rectangles on which the itinerary was constant.
    pub cylinders: usize,
    /// Points where `f^n` is smooth (relative to the square) but some other
    /// point of their orbit is not; dropped from `points`.
    pub dropped_orbit_points: usize,
}

fn orbit_code(p: &Params, x: Point2, n: usize) -> (u64, Point2) {
    let mut y = x;
    let mut code = 0u64;
    let base = 2 * p.m() as u64;
    for _ in 0..n {
        let s = classify2(p, y);
        code = code * base + (s.index - 1) as u64 + if s.is_beta() { p.m() as u64 } else { 0 };
        y = f2_branch(p, s, y);
    }
    (code, y)
}

/// Sequence of u-branches (alpha index or beta) over `n` steps of `tau_a`.
fn u_code(p: &Params, u: f64, n: usize) -> u64 {
    let mut y = Point2::new(u, 0.5);
    let mut code = 0u64;
    for _ in 0..n {
        let s = classify2(p, y);
        code = code * (p.m() as u64 + 1) + if s.is_beta() { p.m() as u64 } else { (s.index - 1) as u64 };
        y = f2_branch(p, s, y);
    }
    code
}

/// Points of `[0,1]` where a code that is constant on intervals changes,
/// located by bisection to `1e-13`. Both ends of `[0,1]` are included.
fn breakpoints(code: impl Fn(f64) -> u64, res: usize) -> Vec<f64> {
    fn split(code: &dyn Fn(f64) -> u64, x0: f64, c0: u64, x1: f64, c1: u64, out: &mut Vec<f64>) {
        if c0 == c1 {
            return;
        }
        if x1 - x0 < 1e-13 {
            out.push(0.5 * (x0 + x1));
            return;
        }
        let xm = 0.5 * (x0 + x1);
        let cm = code(xm);
        split(code, x0, c0, xm, cm, out);
        split(code, xm, cm, x1, c1, out);
    }
    let mut out = vec![0.0];
    let mut prev = (0.0, code(0.0));
    for i in 1..=res {
        let x = i as f64 / res as f64;
        let cx = code(x);
        split(&code, prev.0, prev.1, x, cx, &mut out);
        prev = (x, cx);
    }
    out.push(1.0);
    out.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
    out
}

/// Fixed points of `f_a^n` found only by evaluating the map. Constant
/// itinerary pieces are rectangles: u-breakpoints come from bisection along
/// a horizontal line, c-breakpoints from bisection along a vertical line
/// through each u-piece. On each rectangle the return map is fitted from
/// interior evaluations and its fixed point validated: same itinerary,
/// `|f^n(x) - x|` below `1e-9` (or float error times the expansion), and the itinerary constant at `x +- h` in each
/// axis inside the square (differentiability), with `h` at most `1e-9` and
/// shrunk to `1e-7` of the rectangle side. Finally points are kept only
/// if their whole orbit was found, so the result is a union of orbits.
pub fn brute_force_fixed_points(p: &Params, n: usize, resolution: usize) -> Result<BruteForce> {
    if n == 0 {
        return Err(Error::InvalidInput("period must be at least 1".into()));
    }
    if n > 8 {
        return Err(Error::BoundExceeded { requested: n, bound: 8 });
    }
    if resolution == 0 || resolution > 2048 {
        return Err(Error::InvalidInput("grid resolution must be in 1..=2048".into()));
    }
    const H: f64 = 1e-9;
    let mut out = BruteForce::default();
    let mut segments: HashSet<u64> = HashSet::new();
    let inside = |x: Point2| (0.0..=1.0).contains(&x.u) && (0.0..=1.0).contains(&x.c);
    let ub = breakpoints(|u| u_code(p, u, n), resolution);
    for uw in ub.windows(2) {
        let (ua, ubb) = (uw[0] + 0.25 * (uw[1] - uw[0]), uw[0] + 0.75 * (uw[1] - uw[0]));
        let um = 0.5 * (uw[0] + uw[1]);
        let cb = breakpoints(|c| orbit_code(p, Point2::new(um, c), n).0, resolution);
        for cw in cb.windows(2) {
            let (ca, cbb) = (cw[0] + 0.25 * (cw[1] - cw[0]), cw[0] + 0.75 * (cw[1] - cw[0]));
            let e00 = orbit_code(p, Point2::new(ua, ca), n);
            let e10 = orbit_code(p, Point2::new(ubb, ca), n);
            let e01 = orbit_code(p, Point2::new(ua, cbb), n);
            if e10.0 != e00.0 || e01.0 != e00.0 {
                continue;
            }
            out.cylinders += 1;
            let code = e00.0;
            let su = (e10.1.u - e00.1.u) / (ubb - ua);
            let sc = (e01.1.c - e00.1.c) / (cbb - ca);
            let u = ua - (e00.1.u - ua) / (su - 1.0);
            if (sc - 1.0).abs() < 1e-9 {
                // Balanced return map: a segment of fixed points or none.
                if (e00.1.c - ca).abs() < 1e-9 {
                    let probe = Point2::new(u, 0.5 * (ca + cbb));
                    if inside(probe) && orbit_code(p, probe, n).0 == code {
                        segments.insert(code);
                    }
                }
                continue;
            }
            let c = ca - (e00.1.c - ca) / (sc - 1.0);
            let x = Point2::new(u.clamp(0.0, 1.0), c.clamp(0.0, 1.0));
            if x.dist(&Point2::new(u, c)) > 1e-12 {
                continue;
            }
            let (xc, fx) = orbit_code(p, x, n);
            let tol = (1e-16 * su.abs().max(sc.abs())).max(1e-9);
            if xc != code || fx.dist(&x) >= tol {
                continue;
            }
            let hu = (1e-7 * (uw[1] - uw[0])).clamp(1e-14, H);
            let hc = (1e-7 * (cw[1] - cw[0])).clamp(1e-14, H);
            let smooth = [(hu, 0.0), (-hu, 0.0), (0.0, hc), (0.0, -hc)].iter().all(|&(du, dc)| {
                let y = Point2::new(x.u + du, x.c + dc);
                !inside(y) || orbit_code(p, y, n).0 == code
            });
            if smooth && !out.points.iter().any(|q| q.dist(&x) < 1e-9) {
                out.points.push(x);
            }
        }
    }
    out.fix0_segments = segments.len();
    loop {
        let before = out.points.len();
        let all = out.points.clone();
        out.points.retain(|x| {
            let y = f2_apply(p, *x);
            all.iter().any(|q| q.dist(&y) < 1e-9)
        });
        if out.points.len() == before {
            break;
        }
        out.dropped_orbit_points += before - out.points.len();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> DyckWord {
        s.parse().unwrap()
    }

    fn third() -> Params {
        Params::new_2d(2, 1.0 / 3.0).unwrap()
    }

    #[test]
    fn fixed_point_examples() {
        let p = third();
        let o = solve_cycle(&p, &w("a1"), Dims::Two).unwrap().unwrap();
        assert_eq!((o.point.u, o.point.c), (0.0, 0.0));
        assert_eq!(o.unstable_dim, 1);
        assert!((o.chi_c + 2f64.ln()).abs() < 1e-15);
        let o = solve_cycle(&p, &w("b2"), Dims::Two).unwrap().unwrap();
        assert!((o.point.u - 1.0).abs() < 1e-15 && (o.point.c - 1.0).abs() < 1e-15);
        assert_eq!(o.unstable_dim, 2);
        assert_eq!(solve_cycle(&p, &w("a1 b1"), Dims::Two), Err(Error::BalancedWord));
        assert_eq!(solve_cycle(&p, &w("a1 b2"), Dims::Two), Err(Error::Inadmissible));
        assert!(solve_cycle(&p, &[], Dims::Two).is_err());
    }

    #[test]
    fn period_one() {
        let set = enumerate_periodic(&third(), 1, Dims::Two).unwrap();
        let mut pts: Vec<(f64, f64, u8)> =
            set.orbits.iter().map(|o| (o.point.u, o.point.c, o.unstable_dim)).collect();
        pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let want = [(0.0, 0.0, 1), (0.5, 1.0, 1), (1.0, 0.0, 2), (1.0, 1.0, 2)];
        assert_eq!(pts.len(), 4);
        for (x, y) in pts.iter().zip(want) {
            assert!((x.0 - y.0).abs() < 1e-15 && (x.1 - y.1).abs() < 1e-15 && x.2 == y.2, "{pts:?}");
        }
    }

    #[test]
    fn boundary_rejection() {
        // The beta_2 step of this cycle sits at x_c = 1/2.
        assert_eq!(solve_cycle(&third(), &w("a2 b2 a1"), Dims::Two).unwrap(), None);
        assert_eq!(solve_cycle(&third(), &w("b1 a2 b2"), Dims::Two).unwrap(), None);
    }

    #[test]
    fn orbit_is_periodic() {
        let p = Params::new(2, 1.0 / 3.0, 1.0 / 6.0).unwrap();
        let o = solve_cycle(&p, &w("a1 a2 b2 a2"), Dims::Three).unwrap().unwrap();
        let pts = o.orbit_points(&p);
        for i in 0..4 {
            let y = crate::maps::f3_apply(&p, pts[i]);
            assert!(y.dist(&pts[(i + 1) % 4]) < 1e-12);
            assert_eq!(crate::maps::classify3(&p, pts[i]), o.word[i]);
        }
    }

    #[test]
    fn lyndon() {
        assert!(is_lyndon(&w("a1 a2")));
        assert!(!is_lyndon(&w("a2 a1")));
        assert!(!is_lyndon(&w("a1 a1")));
        assert!(is_lyndon(&w("b1")));
    }

    #[test]
    fn brute_force_period_one() {
        let bf = brute_force_fixed_points(&third(), 1, 16).unwrap();
        assert_eq!(bf.points.len(), 4, "{bf:?}");
        assert!(brute_force_fixed_points(&third(), 0, 16).is_err());
        assert!(brute_force_fixed_points(&third(), 9, 16).is_err());
    }

    #[test]
    fn covering_radius_of_lattice() {
        let pts: Vec<Point2> = (0..=10)
            .flat_map(|i| (0..=10).map(move |j| Point2::new(i as f64 / 10.0, j as f64 / 10.0)))
            .collect();
        let r = covering_radius(&pts, 50);
        assert!(r <= 0.05 * 2f64.sqrt() + 1e-12 && r > 0.05, "{r}");
    }
}
