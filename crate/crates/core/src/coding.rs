//! Itineraries, cuboids of symbol windows, decoding with diameter
//! certificates, and a finite-length check of the coding theorem.
//!
//! A cuboid is a product of three intervals. The u-interval depends only on
//! the future, the s-interval only on the past. The c-interval is an M-adic
//! interval whose digits are the unmatched alpha indices of the past (most
//! recent first) or the unmatched beta indices of the future (in order);
//! the two digit strings must agree on their common prefix.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dyck::{for_each_admissible, is_admissible, DyckWord, TwoSidedWindow};
use crate::error::{Error, Result};
use crate::maps::{classify2_strict, classify3_strict, f2_branch, f3_branch, Kind, Params, Point2, Point3, Symbol};

/// Closed interval `[lo, lo + len]`. The length is tracked separately because
/// it can underflow the spacing of doubles near `lo`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub len: f64,
}

impl Interval {
    pub const UNIT: Interval = Interval { lo: 0.0, len: 1.0 };

    pub fn hi(&self) -> f64 {
        self.lo + self.len
    }

    pub fn mid(&self) -> f64 {
        self.lo + 0.5 * self.len
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        x >= self.lo - tol && x <= self.hi() + tol
    }

    /// `self` is contained in `other` up to `tol`.
    pub fn within(&self, other: &Interval, tol: f64) -> bool {
        self.lo >= other.lo - tol && self.hi() <= other.hi() + tol && self.len <= other.len + tol
    }
}

/// Product of u, c and s intervals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Box3 {
    pub u: Interval,
    pub c: Interval,
    pub s: Interval,
}

impl Box3 {
    pub const UNIT: Box3 = Box3 { u: Interval::UNIT, c: Interval::UNIT, s: Interval::UNIT };

    pub fn center(&self) -> Point3 {
        Point3::new(self.u.mid(), self.c.mid(), self.s.mid())
    }

    pub fn diameter(&self) -> f64 {
        (self.u.len.powi(2) + self.c.len.powi(2) + self.s.len.powi(2)).sqrt()
    }

    pub fn volume(&self) -> f64 {
        self.u.len * self.c.len * self.s.len
    }

    pub fn within(&self, other: &Box3, tol: f64) -> bool {
        self.u.within(&other.u, tol) && self.c.within(&other.c, tol) && self.s.within(&other.s, tol)
    }
}

/// u-interval of points whose future itinerary starts with `future`.
pub fn u_interval(p: &Params, future: &[Symbol]) -> Interval {
    let mut iv = Interval::UNIT;
    for &sym in future.iter().rev() {
        let r = p.u_rate(sym.kind);
        iv = Interval { lo: p.u_offset(sym) + r * iv.lo, len: r * iv.len };
    }
    iv
}

/// s-interval at time 0 of points whose past is `past`.
pub fn s_interval(p: &Params, past: &[Symbol]) -> Interval {
    let mut iv = Interval::UNIT;
    if p.b().is_none() {
        return iv;
    }
    for &sym in past {
        let (slope, off) = p.s_affine(sym);
        iv = Interval { lo: off + slope * iv.lo, len: slope * iv.len };
    }
    iv
}

/// M-adic digits (0-based, most significant first) forced on `x_c` at time
/// 0 by the future; `None` if the future is not admissible.
pub fn future_c_digits(future: &[Symbol]) -> Option<Vec<u8>> {
    // Processed backward; digits are stored reversed so the front is the back.
    let mut rev: Vec<u8> = Vec::new();
    for s in future.iter().rev() {
        match s.kind {
            Kind::Beta => rev.push(s.index - 1),
            Kind::Alpha => match rev.pop() {
                Some(d) if d != s.index - 1 => return None,
                _ => {}
            },
        }
    }
    rev.reverse();
    Some(rev)
}

/// Digits forced on `x_c` at time 0 by the past; `None` if inadmissible.
pub fn past_c_digits(past: &[Symbol]) -> Option<Vec<u8>> {
    let mut rev: Vec<u8> = Vec::new();
    for s in past {
        match s.kind {
            Kind::Alpha => rev.push(s.index - 1),
            Kind::Beta => match rev.pop() {
                Some(d) if d != s.index - 1 => return None,
                _ => {}
            },
        }
    }
    rev.reverse();
    Some(rev)
}

/// Combined c-digits of a window, or `None` when the window is not admissible.
pub fn c_digits(window: &TwoSidedWindow) -> Option<Vec<u8>> {
    let f = future_c_digits(&window.future)?;
    let p = past_c_digits(&window.past)?;
    let (short, long) = if f.len() <= p.len() { (f, p) } else { (p, f) };
    if long[..short.len()] != short[..] {
        return None;
    }
    Some(long)
}

pub fn digits_interval(m: u32, digits: &[u8]) -> Interval {
    let inv = 1.0 / m as f64;
    let mut lo = 0.0;
    let mut scale = 1.0;
    for &d in digits {
        scale *= inv;
        lo += d as f64 * scale;
    }
    Interval { lo, len: scale }
}

/// Closure of the set of points whose itinerary over the window's index
/// range matches the window. Fails with [`Error::EmptyCuboid`] when that set
/// has empty interior, which happens exactly for inadmissible windows.
pub fn cuboid(p: &Params, window: &TwoSidedWindow) -> Result<Box3> {
    window.past.check(p.m())?;
    window.future.check(p.m())?;
    let digits = c_digits(window).ok_or(Error::EmptyCuboid)?;
    Ok(Box3 {
        u: u_interval(p, &window.future),
        c: digits_interval(p.m(), &digits),
        s: s_interval(p, &window.past),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Decoded {
    pub point: Point3,
    pub diameter: f64,
    pub cuboid: Box3,
}

/// Center of the cuboid and its Euclidean diameter. For 2D parameters the
/// s-range is ignored in the diameter.
pub fn decode(p: &Params, window: &TwoSidedWindow) -> Result<Decoded> {
    let cuboid = cuboid(p, window)?;
    let mut diameter = cuboid.diameter();
    if p.b().is_none() {
        diameter = cuboid.u.len.hypot(cuboid.c.len);
    }
    Ok(Decoded { point: cuboid.center(), diameter, cuboid })
}

/// Forward itinerary of length `n` with strict interior classification at
/// every step. Uses `f_{a,b}` when `b` is present and `f_a` otherwise.
pub fn itinerary(p: &Params, x: Point3, n: usize) -> Result<DyckWord> {
    let mut out = Vec::with_capacity(n);
    let mut y = x;
    for i in 0..n {
        let sym = if p.b().is_some() {
            classify3_strict(p, y)
        } else {
            classify2_strict(p, Point2::new(y.u, y.c))
        }
        .map_err(|_| Error::BoundaryHit(i))?;
        out.push(sym);
        y = if p.b().is_some() {
            f3_branch(p, sym, y)
        } else {
            let q = f2_branch(p, sym, Point2::new(y.u, y.c));
            Point3::new(q.u, q.c, y.s)
        };
    }
    Ok(DyckWord(out))
}

/// Upper bounds on the cuboid side lengths for a window whose side-`gamma`
/// height excess is `m1`: alpha side uses the net alpha count of the past,
/// beta side the net beta count of the future.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiameterBounds {
    pub m1: u32,
    pub u: f64,
    /// `M^{-m1}`, which every cuboid obeys.
    pub c: f64,
    /// `(M+1)^{-m1}`, the sharper c-bound as printed; not valid in general.
    pub c_printed: f64,
    pub s: f64,
}

pub fn diameter_bounds(p: &Params, window: &TwoSidedWindow, side: crate::dyck::Side) -> DiameterBounds {
    let net = |w: &DyckWord, k: Kind| -> i64 { w.iter().map(|s| if s.kind == k { 1 } else { -1 }).sum() };
    let m1 = match side {
        crate::dyck::Side::Alpha => net(&window.past, Kind::Alpha),
        crate::dyck::Side::Beta => net(&window.future, Kind::Beta),
    }
    .max(0) as i32;
    let mf = p.mf();
    let b = p.b().unwrap_or(0.5 / mf);
    DiameterBounds {
        m1: m1 as u32,
        u: p.a().max(1.0 - p.ma()).powi(m1),
        c: mf.powi(-m1),
        c_printed: (mf + 1.0).powi(-m1),
        s: b.max(1.0 - mf * b).powi(m1),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CodingReport {
    pub n: usize,
    pub words_checked: usize,
    pub empty_cuboids: Vec<String>,
    /// Windows split into past and future at every position.
    pub split_windows_checked: usize,
    pub empty_split_cuboids: usize,
    /// Inadmissible words whose cuboid was (wrongly) nonempty.
    pub inadmissible_checked: usize,
    pub inadmissible_nonempty: usize,
    pub points_sampled: usize,
    pub points_on_boundary: usize,
    pub inadmissible_itineraries: Vec<String>,
}

impl CodingReport {
    pub fn violations(&self) -> usize {
        self.empty_cuboids.len()
            + self.empty_split_cuboids
            + self.inadmissible_nonempty
            + self.inadmissible_itineraries.len()
    }
}

/// Finite-length form of the coding theorem: every admissible word of length
/// `n` has a cuboid with nonempty interior (as a future and at every
/// past/future split), inadmissible words do not, and random interior points
/// produce admissible itineraries.
pub fn verify_coding<R: Rng + ?Sized>(p: &Params, n: usize, points: usize, rng: &mut R) -> Result<CodingReport> {
    if n > 12 {
        return Err(Error::BoundExceeded { requested: n, bound: 12 });
    }
    let mut rep = CodingReport { n, ..Default::default() };
    for_each_admissible(p.m(), n, |w| {
        rep.words_checked += 1;
        let word = DyckWord(w.to_vec());
        match cuboid(p, &TwoSidedWindow::future_only(word.clone())) {
            Ok(b) if b.volume() > 0.0 => {}
            _ => rep.empty_cuboids.push(word.to_string()),
        }
        for k in 0..=n {
            rep.split_windows_checked += 1;
            let win = TwoSidedWindow::new(DyckWord(w[..k].to_vec()), DyckWord(w[k..].to_vec()));
            if !matches!(cuboid(p, &win), Ok(b) if b.volume() > 0.0) {
                rep.empty_split_cuboids += 1;
            }
        }
    });
    // Converse over all words when the full set is small.
    let total = (2 * p.m() as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if total <= 1 << 20 {
        let m = p.m() as u64;
        for code in 0..total {
            let mut c = code;
            let w: Vec<Symbol> = (0..n)
                .map(|_| {
                    let d = c % (2 * m);
                    c /= 2 * m;
                    if d < m {
                        Symbol::alpha(d as u8 + 1)
                    } else {
                        Symbol::beta((d - m) as u8 + 1)
                    }
                })
                .collect();
            if !is_admissible(&w) {
                rep.inadmissible_checked += 1;
                if cuboid(p, &TwoSidedWindow::future_only(DyckWord(w))).is_ok() {
                    rep.inadmissible_nonempty += 1;
                }
            }
        }
    }
    for _ in 0..points {
        let x = Point3::new(rng.random(), rng.random(), rng.random());
        rep.points_sampled += 1;
        match itinerary(p, x, n) {
            Ok(w) if is_admissible(&w) => {}
            Ok(w) => rep.inadmissible_itineraries.push(w.to_string()),
            Err(_) => rep.points_on_boundary += 1,
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck::Side;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn classical() -> Params {
        Params::new(2, 1.0 / 3.0, 1.0 / 6.0).unwrap()
    }

    fn win(s: &str) -> TwoSidedWindow {
        s.parse().unwrap()
    }

    #[test]
    fn single_symbol_cuboid() {
        let b = cuboid(&classical(), &win("|a1")).unwrap();
        assert_eq!(b.u.lo, 0.0);
        assert!((b.u.hi() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(b.c, Interval::UNIT);
        assert_eq!(b.s, Interval::UNIT);
        let b = cuboid(&classical(), &win("|b2")).unwrap();
        assert!((b.u.lo - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(b.c.lo, 0.5);
    }

    #[test]
    fn inadmissible_window_is_empty() {
        assert_eq!(cuboid(&classical(), &win("|a1 b2")), Err(Error::EmptyCuboid));
        assert_eq!(cuboid(&classical(), &win("a1|b2")), Err(Error::EmptyCuboid));
        assert!(cuboid(&classical(), &win("a1|b1")).is_ok());
    }

    #[test]
    fn past_alpha_block_fixes_c() {
        // two past alpha_2 then alpha_1: x_c = 0.011.. in base 2 at time 0
        let b = cuboid(&classical(), &win("a2 a2 a1|")).unwrap();
        assert_eq!(b.c.lo, 0.375);
        assert_eq!(b.c.len, 0.125);
        let s = b.s;
        assert!((s.len - (2.0f64 / 3.0).powi(3)).abs() < 1e-15);
    }

    #[test]
    fn itinerary_examples() {
        let p = classical();
        let w = itinerary(&p, Point3::new(0.1, 0.3, 0.2), 1).unwrap();
        assert_eq!(w.to_string(), "a1");
        assert_eq!(itinerary(&p, Point3::new(1.0 / 3.0, 0.3, 0.2), 3), Err(Error::BoundaryHit(0)));
        let w = itinerary(&p, Point3::new(1e-3, 1e-3, 1e-3), 5).unwrap();
        assert_eq!(w.to_string(), "a1 a1 a1 a1 a1");
    }

    #[test]
    fn decode_origin_limit() {
        let p = classical();
        let a = DyckWord(vec![Symbol::alpha(1); 30]);
        let d = decode(&p, &TwoSidedWindow::new(a.clone(), a)).unwrap();
        assert!(d.point.u < 1e-12 && d.point.c < 1e-8 && d.point.s < 1e-5);
    }

    #[test]
    fn printed_c_bound_counterexample() {
        // Past alpha_1^m with an all-alpha future: c has width exactly M^{-m}.
        let p = classical();
        let m = 6;
        let w = TwoSidedWindow::new(DyckWord(vec![Symbol::alpha(1); m]), DyckWord(vec![Symbol::alpha(2); m]));
        let b = cuboid(&p, &w).unwrap();
        let bounds = diameter_bounds(&p, &w, Side::Alpha);
        assert_eq!(bounds.m1, m as u32);
        assert!(b.c.len <= bounds.c);
        assert!(b.c.len > bounds.c_printed);
    }

    #[test]
    fn small_coding_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let rep = verify_coding(&classical(), 5, 2000, &mut rng).unwrap();
        assert_eq!(rep.violations(), 0, "{rep:?}");
        assert!(rep.inadmissible_checked > 0);
        assert!(verify_coding(&classical(), 13, 0, &mut rng).is_err());
    }
}
