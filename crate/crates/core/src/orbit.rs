//! Orbit generators.
//!
//! Plain double iteration collapses at parameters like `a = 1/4`, where every
//! branch is exact in binary: the c-coordinate loses a bit per beta step and
//! the orbit falls onto a fixed point within ~60 steps. A Lebesgue-random
//! initial point is therefore represented lazily and exactly:
//!
//! * `x_u` is the point of `[0,1]` whose tau-itinerary is a queue of
//!   branch symbols, drawn i.i.d. with probabilities `(a, .., a, 1 - Ma)`
//!   (the tau-image of Lebesgue) and extended on demand;
//! * `x_c` is a stack of base-M digits, top digit most significant, with
//!   fresh uniform digits appended at the bottom whenever it runs short.
//!
//! An alpha_k step pushes digit `k-1`; a beta step pops the top digit, which
//! selects the beta index. `x_s` contracts and stays a plain double.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::maps::{classify2, classify3, f2_branch, f3_branch, Dims, Kind, Params, Point2, Point3, Symbol};

/// Initial condition of an orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Init {
    /// A given point, iterated in double precision.
    Point(Point3),
    /// A Lebesgue-random point, represented exactly (see module docs).
    Lebesgue,
}

/// RNG for stream `stream` of a run with master `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Digits kept below the top of the c-stack; deeper digits are dropped.
/// Reaching them would need the height walk to fall this far.
const STACK_CAP: usize = 1 << 22;
const U_WIDTH: f64 = 1.0 / (1u64 << 62) as f64;
const REFRESH: f64 = (1u64 << 20) as f64;

#[derive(Debug, Clone)]
struct LazyOrbit {
    p: Params,
    three: bool,
    rng: ChaCha8Rng,
    /// u-branches: `0..M` for alpha_{k+1}, `M` for the beta region.
    uq: VecDeque<u8>,
    u_lo: f64,
    u_width: f64,
    u_growth: f64,
    /// Base-M digits, top at the back.
    cst: VecDeque<u8>,
    c_val: f64,
    c_growth: f64,
    c_prec: usize,
    s: f64,
}

impl LazyOrbit {
    fn new(p: Params, dims: Dims, mut rng: ChaCha8Rng) -> Self {
        let c_prec = (64.0 / (p.mf()).log2()).ceil() as usize + 1;
        let s = rng.random::<f64>();
        let mut o = LazyOrbit {
            p,
            three: dims == Dims::Three,
            rng,
            uq: VecDeque::new(),
            u_lo: 0.0,
            u_width: 1.0,
            u_growth: 1.0,
            cst: VecDeque::new(),
            c_val: 0.0,
            c_growth: 1.0,
            c_prec,
            s,
        };
        o.fill_u();
        o.fill_c();
        o.refresh_c();
        o
    }

    fn u_off(&self, d: u8) -> f64 {
        if (d as u32) < self.p.m() {
            d as f64 * self.p.a()
        } else {
            self.p.ma()
        }
    }

    fn u_rate(&self, d: u8) -> f64 {
        if (d as u32) < self.p.m() {
            self.p.a()
        } else {
            1.0 - self.p.ma()
        }
    }

    fn draw_u(&mut self) -> u8 {
        let r: f64 = self.rng.random();
        if r < self.p.ma() {
            ((r / self.p.a()) as u32).min(self.p.m() - 1) as u8
        } else {
            self.p.m() as u8
        }
    }

    fn fill_u(&mut self) {
        while self.u_width > U_WIDTH || self.uq.is_empty() {
            let d = self.draw_u();
            self.u_lo += self.u_width * self.u_off(d);
            self.u_width *= self.u_rate(d);
            self.uq.push_back(d);
        }
    }

    fn refresh_u(&mut self) {
        let mut lo = 0.0;
        for &d in self.uq.iter().rev() {
            lo = self.u_off(d) + self.u_rate(d) * lo;
        }
        self.u_lo = lo;
        self.u_growth = 1.0;
    }

    fn fill_c(&mut self) {
        let m = self.p.m();
        while self.cst.len() < self.c_prec {
            let d = self.rng.random_range(0..m) as u8;
            self.cst.push_front(d);
        }
    }

    fn refresh_c(&mut self) {
        let mf = self.p.mf();
        let n = self.cst.len();
        let mut v = 0.0;
        for &d in self.cst.range(n - self.c_prec..) {
            v = (v + d as f64) / mf;
        }
        self.c_val = v;
        self.c_growth = 1.0;
    }

    fn symbol(&self) -> Symbol {
        let d = self.uq[0];
        if (d as u32) < self.p.m() {
            Symbol::alpha(d + 1)
        } else {
            Symbol::beta(self.cst.back().copied().unwrap_or(0) + 1)
        }
    }

    fn point(&self) -> Point3 {
        Point3::new(self.u_lo + 0.5 * self.u_width, self.c_val, if self.three { self.s } else { 0.0 })
    }

    fn advance(&mut self) -> Symbol {
        let sym = self.symbol();
        let d = self.uq.pop_front().expect("u queue is never empty");
        let (off, rate) = (self.u_off(d), self.u_rate(d));
        self.u_lo = (self.u_lo - off) / rate;
        self.u_width /= rate;
        self.u_growth /= rate;
        if self.u_growth > REFRESH {
            self.refresh_u();
        }
        self.fill_u();

        let mf = self.p.mf();
        let k = sym.index - 1;
        match sym.kind {
            Kind::Alpha => {
                self.cst.push_back(k);
                self.c_val = (self.c_val + k as f64) / mf;
                if self.cst.len() > STACK_CAP {
                    self.cst.pop_front();
                }
            }
            Kind::Beta => {
                self.cst.pop_back();
                self.c_val = mf * self.c_val - k as f64;
                self.c_growth *= mf;
                self.fill_c();
                if self.c_growth > REFRESH {
                    self.refresh_c();
                }
            }
        }
        if self.three {
            let (slope, off) = self.p.s_affine(sym);
            self.s = slope * self.s + off;
        }
        sym
    }
}

#[derive(Debug, Clone)]
enum Engine {
    Float { p: Params, x: Point3, three: bool },
    Lazy(Box<LazyOrbit>),
}

/// An orbit of `f_a` (2D) or `f_{a,b}` (3D).
#[derive(Debug, Clone)]
pub struct Orbit {
    engine: Engine,
}

impl Orbit {
    /// `rng` is only used for [`Init::Lebesgue`]. 3D needs `b` in `p`.
    pub fn new(p: &Params, dims: Dims, init: Init, rng: ChaCha8Rng) -> Self {
        let three = dims == Dims::Three;
        if three {
            p.b3();
        }
        let engine = match init {
            Init::Point(x) => Engine::Float { p: *p, x: if three { x } else { Point3 { s: 0.0, ..x } }, three },
            Init::Lebesgue => Engine::Lazy(Box::new(LazyOrbit::new(*p, dims, rng))),
        };
        Orbit { engine }
    }

    pub fn point(&self) -> Point3 {
        match &self.engine {
            Engine::Float { x, .. } => *x,
            Engine::Lazy(o) => o.point(),
        }
    }

    /// Domain of the current point.
    pub fn symbol(&self) -> Symbol {
        match &self.engine {
            Engine::Float { p, x, three } => {
                if *three {
                    classify3(p, *x)
                } else {
                    classify2(p, Point2::new(x.u, x.c))
                }
            }
            Engine::Lazy(o) => o.symbol(),
        }
    }

    /// Applies the map once and returns the symbol of the point left behind.
    pub fn advance(&mut self) -> Symbol {
        match &mut self.engine {
            Engine::Float { p, x, three } => {
                if *three {
                    let s = classify3(p, *x);
                    *x = f3_branch(p, s, *x);
                    s
                } else {
                    let s = classify2(p, Point2::new(x.u, x.c));
                    let y = f2_branch(p, s, Point2::new(x.u, x.c));
                    *x = Point3::new(y.u, y.c, 0.0);
                    s
                }
            }
            Engine::Lazy(o) => o.advance(),
        }
    }

    pub fn skip(&mut self, n: usize) {
        for _ in 0..n {
            self.advance();
        }
    }
}
