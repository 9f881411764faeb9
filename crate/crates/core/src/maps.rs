//! The interval map `tau_a`, the skew products `f_a` (2D) and `f_{a,b}` (3D),
//! the domain partition, the involution `iota` and the projection `p`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used for equality of reals (parameter identities, boundary tests).
pub const TOL: f64 = 1e-12;

/// Largest supported number of bracket types. Indices are stored as `u8`.
pub const MAX_M: u32 = 64;

/// Map parameters `(M, a, b)`. `b` is optional for 2D-only use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    m: u32,
    a: f64,
    b: Option<f64>,
}

impl Params {
    pub fn new(m: u32, a: f64, b: f64) -> Result<Self> {
        Self::build(m, a, Some(b))
    }

    /// Parameters for the 2D map `f_a`.
    pub fn new_2d(m: u32, a: f64) -> Result<Self> {
        Self::build(m, a, None)
    }

    /// Parameters of `g_a = f_{a, 1/M - a}`.
    pub fn g(m: u32, a: f64) -> Result<Self> {
        Self::check_m(m)?;
        Self::build(m, a, Some(1.0 / m as f64 - a))
    }

    fn check_m(m: u32) -> Result<()> {
        if !(2..=MAX_M).contains(&m) {
            return Err(Error::InvalidParams(format!(
                "M must be an integer in 2..={MAX_M}, got {m}"
            )));
        }
        Ok(())
    }

    fn build(m: u32, a: f64, b: Option<f64>) -> Result<Self> {
        Self::check_m(m)?;
        let top = 1.0 / m as f64;
        let inside = |x: f64| x.is_finite() && x > 0.0 && x < top;
        if !inside(a) {
            return Err(Error::InvalidParams(format!(
                "a must lie in (0, 1/M) = (0, {top}) for M = {m}, got {a}; (a,b) must be in Delta"
            )));
        }
        if let Some(b) = b {
            if !inside(b) {
                return Err(Error::InvalidParams(format!(
                    "b must lie in (0, 1/M) = (0, {top}) for M = {m}, got {b}; (a,b) must be in Delta"
                )));
            }
        }
        Ok(Params { m, a, b })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> Option<f64> {
        self.b
    }

    pub fn with_b(&self, b: f64) -> Result<Self> {
        Self::new(self.m, self.a, b)
    }

    /// Drops `b`.
    pub fn to_2d(&self) -> Self {
        Params { b: None, ..*self }
    }

    /// `b`, panicking when absent. Used by the 3D maps.
    pub fn b3(&self) -> f64 {
        self.b.expect("3D operation requires parameter b")
    }

    pub fn mf(&self) -> f64 {
        self.m as f64
    }

    /// `M a`, the left end of the beta region.
    pub fn ma(&self) -> f64 {
        self.m as f64 * self.a
    }

    /// The parameters with `a` and `b` swapped (requires `b`).
    pub fn swapped(&self) -> Self {
        Params { m: self.m, a: self.b3(), b: Some(self.a) }
    }

    /// Width of the u-branch of a symbol: `a` for alpha, `1 - Ma` for beta.
    pub fn u_rate(&self, kind: Kind) -> f64 {
        match kind {
            Kind::Alpha => self.a,
            Kind::Beta => 1.0 - self.ma(),
        }
    }

    /// Left end of the u-branch of a symbol.
    pub fn u_offset(&self, sym: Symbol) -> f64 {
        match sym.kind {
            Kind::Alpha => (sym.index - 1) as f64 * self.a,
            Kind::Beta => self.ma(),
        }
    }

    /// Forward s-map of a symbol as `(slope, offset)`.
    pub fn s_affine(&self, sym: Symbol) -> (f64, f64) {
        let b = self.b3();
        match sym.kind {
            Kind::Alpha => (1.0 - self.mf() * b, 0.0),
            Kind::Beta => (b, 1.0 + b * (sym.index as f64 - self.mf() - 1.0)),
        }
    }

    /// True iff `|a + b - 1/M| <= 1e-12`.
    pub fn is_leb_invariant(&self) -> bool {
        (self.a + self.b3() - 1.0 / self.mf()).abs() <= TOL
    }
}

/// Bracket type of a symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    Alpha,
    Beta,
}

impl Kind {
    pub fn flip(self) -> Kind {
        match self {
            Kind::Alpha => Kind::Beta,
            Kind::Beta => Kind::Alpha,
        }
    }
}

/// A symbol `alpha_k` or `beta_k` with `1 <= k <= M`.
///
/// Ordered with every alpha before every beta, then by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Symbol {
    pub kind: Kind,
    pub index: u8,
}

impl Symbol {
    pub fn alpha(k: u8) -> Symbol {
        Symbol { kind: Kind::Alpha, index: k }
    }

    pub fn beta(k: u8) -> Symbol {
        Symbol { kind: Kind::Beta, index: k }
    }

    pub fn is_alpha(self) -> bool {
        self.kind == Kind::Alpha
    }

    pub fn is_beta(self) -> bool {
        self.kind == Kind::Beta
    }

    /// The swap `rho`: `alpha_k <-> beta_k`.
    pub fn rho(self) -> Symbol {
        Symbol { kind: self.kind.flip(), index: self.index }
    }

    pub fn check(self, m: u32) -> Result<Symbol> {
        if self.index == 0 || self.index as u32 > m {
            return Err(Error::InvalidInput(format!("symbol {self} has index outside 1..={m}")));
        }
        Ok(self)
    }

    /// Height increment: +1 for alpha, -1 for beta.
    pub fn step(self) -> i64 {
        match self.kind {
            Kind::Alpha => 1,
            Kind::Beta => -1,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            Kind::Alpha => 'a',
            Kind::Beta => 'b',
        };
        write!(f, "{c}{}", self.index)
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Symbol> {
        let mut chars = s.chars();
        let kind = match chars.next() {
            Some('a') | Some('A') => Kind::Alpha,
            Some('b') | Some('B') => Kind::Beta,
            _ => return Err(Error::Parse(format!("bad symbol {s:?}"))),
        };
        let index: u8 = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad symbol index in {s:?}")))?;
        if index == 0 || index as u32 > MAX_M {
            return Err(Error::Parse(format!("symbol index out of range in {s:?}")));
        }
        Ok(Symbol { kind, index })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub u: f64,
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point3 {
    pub u: f64,
    pub c: f64,
    pub s: f64,
}

impl Point2 {
    pub fn new(u: f64, c: f64) -> Self {
        Point2 { u, c }
    }

    pub fn dist(&self, o: &Point2) -> f64 {
        (self.u - o.u).hypot(self.c - o.c)
    }
}

impl Point3 {
    pub fn new(u: f64, c: f64, s: f64) -> Self {
        Point3 { u, c, s }
    }

    pub fn dist(&self, o: &Point3) -> f64 {
        let (du, dc, ds) = (self.u - o.u, self.c - o.c, self.s - o.s);
        (du * du + dc * dc + ds * ds).sqrt()
    }

    pub fn in_unit_cube(&self) -> bool {
        [self.u, self.c, self.s].iter().all(|x| (0.0..=1.0).contains(x))
    }
}

/// Phase-space dimension: `f_a` on the square or `f_{a,b}` on the cube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dims {
    Two,
    Three,
}

impl Dims {
    pub fn count(self) -> usize {
        match self {
            Dims::Two => 2,
            Dims::Three => 3,
        }
    }

    pub fn from_count(d: usize) -> Result<Dims> {
        match d {
            2 => Ok(Dims::Two),
            3 => Ok(Dims::Three),
            _ => Err(Error::InvalidInput(format!("dims must be 2 or 3, got {d}"))),
        }
    }
}

/// u-branch of `x_u`: `Some(k)` for `[(k-1)a, ka)`, `None` for `[Ma, 1]`.
fn u_branch(p: &Params, u: f64) -> Option<u8> {
    let m = p.m as usize;
    if u >= p.ma() {
        return None;
    }
    let mut k = ((u / p.a) as usize).min(m - 1);
    while k > 0 && u < k as f64 * p.a {
        k -= 1;
    }
    while k + 1 < m && u >= (k + 1) as f64 * p.a {
        k += 1;
    }
    Some(k as u8 + 1)
}

/// beta index selected by `x_c`: `[(k-1)/M, k/M)`, last one closed.
fn c_branch(p: &Params, c: f64) -> u8 {
    let mf = p.mf();
    let k = ((c * mf) as u32).min(p.m - 1);
    k as u8 + 1
}

pub fn tau_apply(p: &Params, u: f64) -> f64 {
    match u_branch(p, u) {
        Some(k) => ((u - (k - 1) as f64 * p.a) / p.a).min(1.0),
        None => (u - p.ma()) / (1.0 - p.ma()),
    }
}

/// Domain symbol of a point of the square (`Omega^+` partition).
pub fn classify2(p: &Params, x: Point2) -> Symbol {
    match u_branch(p, x.u) {
        Some(k) => Symbol::alpha(k),
        None => Symbol::beta(c_branch(p, x.c)),
    }
}

/// Domain symbol of a point of the cube; the s-coordinate plays no role.
pub fn classify3(p: &Params, x: Point3) -> Symbol {
    classify2(p, Point2::new(x.u, x.c))
}

fn near(x: f64, y: f64) -> bool {
    (x - y).abs() <= TOL
}

/// Like [`classify2`] but fails with [`Error::Boundary`] unless the point is
/// in the interior of its domain.
pub fn classify2_strict(p: &Params, x: Point2) -> Result<Symbol> {
    if near(x.c, 0.0) || near(x.c, 1.0) || near(x.u, 0.0) || near(x.u, 1.0) {
        return Err(Error::Boundary);
    }
    for k in 1..=p.m {
        if near(x.u, k as f64 * p.a) {
            return Err(Error::Boundary);
        }
    }
    let sym = classify2(p, x);
    if sym.is_beta() {
        for k in 1..p.m {
            if near(x.c, k as f64 / p.mf()) {
                return Err(Error::Boundary);
            }
        }
    }
    Ok(sym)
}

pub fn classify3_strict(p: &Params, x: Point3) -> Result<Symbol> {
    if near(x.s, 0.0) || near(x.s, 1.0) {
        return Err(Error::Boundary);
    }
    classify2_strict(p, Point2::new(x.u, x.c))
}

/// Applies the branch of `f_a` for `sym`, whatever domain `x` lies in.
pub fn f2_branch(p: &Params, sym: Symbol, x: Point2) -> Point2 {
    let mf = p.mf();
    let k = sym.index as f64;
    match sym.kind {
        Kind::Alpha => Point2 {
            u: ((x.u - (k - 1.0) * p.a) / p.a).min(1.0),
            c: (x.c + k - 1.0) / mf,
        },
        Kind::Beta => Point2 {
            u: (x.u - p.ma()) / (1.0 - p.ma()),
            c: (mf * x.c - (k - 1.0)).clamp(0.0, 1.0),
        },
    }
}

pub fn f3_branch(p: &Params, sym: Symbol, x: Point3) -> Point3 {
    let q = f2_branch(p, sym, Point2::new(x.u, x.c));
    let b = p.b3();
    let s = match sym.kind {
        Kind::Alpha => (1.0 - p.mf() * b) * x.s,
        Kind::Beta => 1.0 - b * ((p.mf() - sym.index as f64) + (1.0 - x.s)),
    };
    Point3 { u: q.u, c: q.c, s }
}

pub fn f2_apply(p: &Params, x: Point2) -> Point2 {
    f2_branch(p, classify2(p, x), x)
}

/// `f_{a,b}`. Panics if `b` is absent.
pub fn f3_apply(p: &Params, x: Point3) -> Point3 {
    f3_branch(p, classify3(p, x), x)
}

/// `g_a = f_{a, 1/M - a}`; any `b` in `p` is ignored.
pub fn g_apply(p: &Params, x: Point3) -> Point3 {
    let g = Params { b: Some(1.0 / p.mf() - p.a), ..*p };
    f3_apply(&g, x)
}

pub fn iota(x: Point3) -> Point3 {
    Point3 { u: 1.0 - x.s, c: 1.0 - x.c, s: 1.0 - x.u }
}

pub fn project_p(x: Point3) -> Point2 {
    Point2 { u: x.u, c: x.c }
}

/// Central potential: `-log M` on alpha domains, `+log M` on beta domains.
pub fn phi_c(p: &Params, sym: Symbol) -> f64 {
    match sym.kind {
        Kind::Alpha => -p.mf().ln(),
        Kind::Beta => p.mf().ln(),
    }
}

/// Unstable potential: `-log a` on alpha, `-log(1 - Ma)` on beta.
pub fn phi_u(p: &Params, sym: Symbol) -> f64 {
    -p.u_rate(sym.kind).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(a: f64, b: f64) -> Params {
        Params::new(2, a, b).unwrap()
    }

    fn close(x: f64, y: f64) -> bool {
        (x - y).abs() < 1e-12
    }

    #[test]
    fn tau_examples() {
        let q = p(1.0 / 3.0, 1.0 / 6.0);
        assert_eq!(tau_apply(&q, 0.0), 0.0);
        assert!(close(tau_apply(&q, 0.5), 0.5));
        let r = Params::new_2d(2, 0.25).unwrap();
        assert!(close(tau_apply(&r, 0.9), 0.8));
        assert_eq!(tau_apply(&q, 1.0), 1.0);
    }

    #[test]
    fn classify_examples() {
        let q = p(1.0 / 3.0, 1.0 / 6.0);
        assert_eq!(classify2(&q, Point2::new(0.1, 0.5)), Symbol::alpha(1));
        assert_eq!(classify2(&q, Point2::new(0.9, 0.2)), Symbol::beta(1));
        assert_eq!(classify2(&q, Point2::new(1.0, 1.0)), Symbol::beta(2));
        assert_eq!(classify2(&q, Point2::new(1.0 / 3.0, 0.5)), Symbol::alpha(2));
        assert_eq!(classify2_strict(&q, Point2::new(1.0 / 3.0, 0.5)), Err(Error::Boundary));
        assert_eq!(classify2_strict(&q, Point2::new(0.9, 0.5)), Err(Error::Boundary));
        assert_eq!(classify2_strict(&q, Point2::new(0.5, 0.5)), Ok(Symbol::alpha(2)));
    }

    #[test]
    fn map_examples() {
        let q = p(1.0 / 3.0, 1.0 / 6.0);
        assert_eq!(f2_apply(&q, Point2::new(0.0, 0.0)), Point2::new(0.0, 0.0));
        let y = f2_apply(&q, Point2::new(0.5, 0.3));
        assert!(close(y.u, 0.5) && close(y.c, 0.65));
        let y = f2_apply(&q, Point2::new(0.9, 0.2));
        assert!(close(y.u, 0.7) && close(y.c, 0.4));
        assert_eq!(f3_apply(&q, Point3::default()), Point3::default());
        let y = f3_apply(&q, Point3::new(0.9, 0.2, 0.5));
        assert!(close(y.u, 0.7) && close(y.c, 0.4) && close(y.s, 0.75));
        let y = f3_apply(&q, Point3::new(0.1, 0.5, 0.6));
        assert!(close(y.u, 0.3) && close(y.c, 0.25) && close(y.s, 0.4));
    }

    #[test]
    fn g_and_iota() {
        let q = Params::new_2d(2, 1.0 / 3.0).unwrap();
        let x = Point3::new(0.9, 0.2, 0.5);
        assert_eq!(g_apply(&q, x), f3_apply(&p(1.0 / 3.0, 1.0 / 6.0), x));
        assert_eq!(g_apply(&q, Point3::default()), Point3::default());
        assert_eq!(iota(Point3::default()), Point3::new(1.0, 1.0, 1.0));
        assert_eq!(project_p(Point3::new(0.1, 0.5, 0.9)), Point2::new(0.1, 0.5));
        assert_eq!(Params::g(2, 0.25).unwrap().b(), Some(0.25));
    }

    #[test]
    fn leb_flag() {
        assert!(p(1.0 / 3.0, 1.0 / 6.0).is_leb_invariant());
        assert!(!p(1.0 / 3.0, 1.0 / 5.0).is_leb_invariant());
        assert!(Params::new(3, 1.0 / 6.0, 1.0 / 6.0).unwrap().is_leb_invariant());
    }

    #[test]
    fn validation() {
        assert!(Params::new_2d(2, 0.6).is_err());
        assert!(Params::new_2d(2, 0.5).is_err());
        assert!(Params::new_2d(1, 0.3).is_err());
        assert!(Params::new(2, 0.3, 0.0).is_err());
        assert!(Params::new_2d(2, f64::NAN).is_err());
    }

    #[test]
    fn symbol_text() {
        assert_eq!("a1".parse::<Symbol>().unwrap(), Symbol::alpha(1));
        assert_eq!("b12".parse::<Symbol>().unwrap(), Symbol::beta(12));
        assert_eq!(Symbol::beta(2).to_string(), "b2");
        assert!("c1".parse::<Symbol>().is_err());
        assert!("a0".parse::<Symbol>().is_err());
        assert!(Symbol::alpha(1) < Symbol::alpha(2));
        assert!(Symbol::alpha(2) < Symbol::beta(1));
    }
}
