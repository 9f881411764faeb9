//! Library results against slow, independently written references and a few
//! values worked out by hand.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use heterobaker::coding::{Box3, Interval};
use heterobaker::dyck::{enumerate_admissible, nu_cylinder_exact, reduce, ReducedForm, Side};
use heterobaker::maps::f3_apply;
use heterobaker::measures::{bernoulli_vector_leb, entropy_leb, leb_preimage_measure};
use heterobaker::periodic::{brute_force_fixed_points, enumerate_periodic, fixed_points};
use heterobaker::stats::{autocorrelation, correlation_run, noise_floor, CorrelationSpec, Observable};
use heterobaker::verify::reduce_by_rewriting;
use heterobaker::{Dims, Params, Point2, Point3, Symbol};

fn all_words(m: u32, n: usize) -> Vec<Vec<Symbol>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &out {
            for k in 1..=m as u8 {
                for s in [Symbol::alpha(k), Symbol::beta(k)] {
                    let mut v: Vec<Symbol> = w.clone();
                    v.push(s);
                    next.push(v);
                }
            }
        }
        out = next;
    }
    out
}

/// Hausdorff distance between closed-form and brute-force fixed point sets.
fn match_sets(p: &Params, n: usize) -> (usize, usize, f64) {
    let cf: Vec<Point2> = fixed_points(p, n, Dims::Two).unwrap().into_iter().map(|(x, _)| Point2::new(x.u, x.c)).collect();
    let bf = brute_force_fixed_points(p, n, 64).unwrap().points;
    let near = |x: &Point2, set: &[Point2]| set.iter().map(|q| q.dist(x)).fold(f64::INFINITY, f64::min);
    let d = cf.iter().map(|x| near(x, &bf)).chain(bf.iter().map(|x| near(x, &cf))).fold(0.0, f64::max);
    (cf.len(), bf.len(), d)
}

#[test]
fn periodic_points_match_brute_force() {
    for (a, top) in [(1.0 / 3.0, 6), (0.2, 6), (0.45, 6), (0.05, 5)] {
        let p = Params::new_2d(2, a).unwrap();
        for n in 1..=top {
            let (c, b, d) = match_sets(&p, n);
            assert_eq!(c, b, "a={a} n={n}");
            assert!(d < 1e-6, "a={a} n={n} distance {d}");
        }
    }
}

#[test]
fn admissible_counts_match_exhaustive_search() {
    for m in 1..=3u32 {
        for n in 0..=(if m == 3 { 5 } else { 7 }) {
            let brute = all_words(m, n).iter().filter(|w| reduce_by_rewriting(w) != ReducedForm::Zero).count();
            assert_eq!(enumerate_admissible(m, n).unwrap().len(), brute, "m={m} n={n}");
        }
    }
    let counts: Vec<usize> = (1..=5).map(|n| enumerate_admissible(2, n).unwrap().len()).collect();
    assert_eq!(counts, [4, 14, 48, 160, 528]);
}

#[test]
fn reduce_matches_rewriting_exhaustively() {
    for n in 0..=6 {
        for w in all_words(2, n) {
            assert_eq!(reduce(&w), reduce_by_rewriting(&w));
        }
    }
}

/// `nu_alpha([w])` by summing the uniform measure on the `(M+1)`-letter full
/// shift over every preimage, with `past` extra letters to the left. A bare
/// beta with no open alpha in view is matched further left, to an alpha of
/// uniform index, so it agrees with a given beta with probability `1/M`.
fn nu_alpha_by_enumeration(m: u32, w: &[Symbol], past: usize) -> f64 {
    let len = past + w.len();
    let letters = m as usize + 1;
    let total = letters.pow(len as u32);
    let mut sum = 0.0;
    for code in 0..total {
        let mut c = code;
        let mut stack: Vec<u8> = Vec::new();
        let mut weight = 1.0;
        for i in 0..len {
            let l = c % letters;
            c /= letters;
            let (sym, wild) = if l < m as usize {
                stack.push(l as u8 + 1);
                (Symbol::alpha(l as u8 + 1), false)
            } else {
                match stack.pop() {
                    Some(k) => (Symbol::beta(k), false),
                    None => (Symbol::beta(1), true),
                }
            };
            if i >= past {
                let t = w[i - past];
                if wild {
                    weight *= if t.is_beta() { 1.0 / m as f64 } else { 0.0 };
                } else if t != sym {
                    weight = 0.0;
                }
            }
            if weight == 0.0 {
                break;
            }
        }
        sum += weight;
    }
    sum / total as f64
}

#[test]
fn nu_weights_match_enumeration() {
    for m in [2u32, 3] {
        let top = if m == 2 { 5 } else { 4 };
        for n in 1..=top {
            for w in enumerate_admissible(m, n).unwrap() {
                let oracle = nu_alpha_by_enumeration(m, &w, 2);
                let unmatched = match reduce(&w) {
                    ReducedForm::Word { betas, .. } => betas.len(),
                    ReducedForm::Zero => unreachable!(),
                };
                let closed = (m as f64 + 1.0).powi(-(n as i32)) * (m as f64).powi(-(unmatched as i32));
                assert!((oracle - closed).abs() < 1e-15, "{w} {oracle} {closed}");
                match nu_cylinder_exact(Side::Alpha, m, &w) {
                    Ok(v) => assert!((v - oracle).abs() < 1e-15, "{w}"),
                    Err(_) => assert!(unmatched > 0),
                }
                // The beta side is the mirror image.
                let mirror = w.reverse_swap();
                if let Ok(v) = nu_cylinder_exact(Side::Beta, m, &mirror) {
                    assert!((v - oracle).abs() < 1e-15, "{mirror}");
                }
            }
        }
    }
}

fn direct_cor(xs: &[f64], delays: &[usize]) -> Vec<f64> {
    let maxd = *delays.iter().max().unwrap();
    let n = xs.len() - maxd;
    let e = xs[..n].iter().sum::<f64>() / n as f64;
    delays
        .iter()
        .map(|&d| ((0..n).map(|i| (xs[i] - e) * (xs[i + d] - e)).sum::<f64>() / n as f64).abs())
        .collect()
}

#[test]
fn autocorrelation_matches_quadratic_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for len in [30usize, 200, 5000, 20_000] {
        let mut x: f64 = rng.random();
        let xs: Vec<f64> = (0..len)
            .map(|_| {
                x = 0.7 * x + 0.3 * rng.random::<f64>();
                x
            })
            .collect();
        let delays = [1usize, 2, 3, 5, 8, 13];
        let got = autocorrelation(xs.iter().copied(), &delays, (len - 13) as u64).unwrap();
        for (g, w) in got.iter().zip(direct_cor(&xs, &delays)) {
            assert!((g - w).abs() < 1e-12, "len={len}: {g} vs {w}");
        }
    }
}

#[test]
fn independent_stream_stays_below_floor() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let n = 1_000_000u64;
    let delays: Vec<usize> = (1..=20).collect();
    let cor = autocorrelation((0..).map(|_| rng.random::<f64>()), &delays, n).unwrap();
    assert!(cor.iter().all(|&c| c < noise_floor(n)), "{cor:?}");
}

/// Under Lebesgue, `E[x_c * x_c(f)] = 7/24` for both parameters below, so the
/// lag-1 covariance is `7/24 - 1/4 = 1/24`.
#[test]
fn lag_one_covariance_by_hand() {
    for (a, b) in [(1.0 / 3.0, 1.0 / 6.0), (0.25, 0.25)] {
        let p = Params::new(2, a, b).unwrap();
        let spec = CorrelationSpec {
            dims: Dims::Three,
            n: 1 << 22,
            delays: vec![1],
            observable: Observable::Xc,
            burn_in: 1000,
            seed: 12,
            threads: 2,
        };
        let r = correlation_run(&p, &spec).unwrap();
        assert!((r.cor[0] - 1.0 / 24.0).abs() < 2e-3, "({a},{b}): {}", r.cor[0]);
    }
}

#[test]
fn preimage_measure_matches_monte_carlo() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let bx = Box3 {
        u: Interval { lo: 0.2, len: 0.5 },
        c: Interval { lo: 0.1, len: 0.6 },
        s: Interval { lo: 0.05, len: 0.3 },
    };
    for (a, b) in [(1.0 / 3.0, 0.2), (0.1, 0.3), (0.4, 0.05)] {
        let p = Params::new(2, a, b).unwrap();
        let exact = leb_preimage_measure(&p, Dims::Three, &bx).unwrap();
        let n = 400_000;
        let hits = (0..n)
            .filter(|_| {
                let y = f3_apply(&p, Point3::new(rng.random(), rng.random(), rng.random()));
                bx.u.contains(y.u, 0.0) && bx.c.contains(y.c, 0.0) && bx.s.contains(y.s, 0.0)
            })
            .count() as f64
            / n as f64;
        let se = (exact * (1.0 - exact) / n as f64).sqrt();
        assert!((hits - exact).abs() < 5.0 * se, "({a},{b}): {hits} vs {exact}");
    }
}

#[test]
fn frozen_values() {
    let p = Params::new_2d(2, 1.0 / 3.0).unwrap();
    let counts: Vec<(usize, usize)> = (1..=10)
        .map(|n| {
            let s = enumerate_periodic(&p, n, Dims::Two).unwrap();
            (s.count_dim(1), s.count_dim(2))
        })
        .collect();
    let dim1: Vec<usize> = counts.iter().map(|c| c.0).collect();
    assert_eq!(dim1, [2, 1, 4, 9, 24, 63, 168, 482, 1292, 3807]);
    assert!(counts.iter().all(|c| c.0 == c.1));

    let v = bernoulli_vector_leb(&Params::g(2, 0.2).unwrap()).unwrap().probabilities;
    for (x, y) in v.iter().zip([0.3, 0.3, 0.4]) {
        assert!((x - y).abs() < 1e-15);
    }
    assert!((entropy_leb(&Params::g(2, 1.0 / 3.0).unwrap()).unwrap() - 3f64.ln()).abs() < 1e-15);
    assert!((entropy_leb(&Params::g(3, 0.25).unwrap()).unwrap() - 4f64.ln()).abs() < 1e-15);
}
