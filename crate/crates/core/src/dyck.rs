//! The Dyck monoid, admissibility, heights, periodic classification, the
//! full-shift maps `phi`/`psi`, and the two measures of maximal entropy
//! `nu_alpha`, `nu_beta` on the Dyck shift.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::{Kind, Params, Symbol};

/// Default bound on enumerated word lengths.
pub const DEFAULT_MAX_LEN: usize = 14;

/// A finite word over `D = {alpha_1..alpha_M, beta_1..beta_M}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct DyckWord(pub Vec<Symbol>);

impl DyckWord {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        DyckWord(symbols)
    }

    pub fn empty() -> Self {
        DyckWord(Vec::new())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn check(&self, m: u32) -> Result<()> {
        self.0.iter().try_for_each(|s| s.check(m).map(|_| ()))
    }

    /// Number of alpha and beta symbols.
    pub fn counts(&self) -> (usize, usize) {
        let na = self.0.iter().filter(|s| s.is_alpha()).count();
        (na, self.0.len() - na)
    }

    pub fn concat(&self, other: &DyckWord) -> DyckWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        DyckWord(v)
    }

    pub fn rotated(&self, k: usize) -> DyckWord {
        let mut v = self.0.clone();
        v.rotate_left(k);
        DyckWord(v)
    }

    /// Reverse the word and swap `alpha_k <-> beta_k`.
    pub fn reverse_swap(&self) -> DyckWord {
        DyckWord(self.0.iter().rev().map(|s| s.rho()).collect())
    }
}

impl Deref for DyckWord {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for DyckWord {
    fn from(v: Vec<Symbol>) -> Self {
        DyckWord(v)
    }
}

impl fmt::Display for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for DyckWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<DyckWord> {
        s.split_whitespace().map(str::parse).collect::<Result<Vec<_>>>().map(DyckWord)
    }
}

/// Normal form in the Dyck monoid: `Zero`, or `beta_{i1}..beta_{ip} alpha_{j1}..alpha_{jq}`.
///
/// `alphas` is in word order, so its last entry is the innermost open bracket.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReducedForm {
    Zero,
    Word { betas: Vec<u8>, alphas: Vec<u8> },
}

impl ReducedForm {
    pub fn unit() -> Self {
        ReducedForm::Word { betas: Vec::new(), alphas: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ReducedForm::Zero)
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, ReducedForm::Word { betas, alphas } if betas.is_empty() && alphas.is_empty())
    }

    /// Right-multiply by one symbol.
    pub fn push(&mut self, sym: Symbol) {
        let ReducedForm::Word { betas, alphas } = self else { return };
        match sym.kind {
            Kind::Alpha => alphas.push(sym.index),
            Kind::Beta => match alphas.pop() {
                Some(top) if top == sym.index => {}
                Some(_) => *self = ReducedForm::Zero,
                None => betas.push(sym.index),
            },
        }
    }

    /// Monoid product `self * other`.
    pub fn mul(&self, other: &ReducedForm) -> ReducedForm {
        let (ReducedForm::Word { betas: b1, alphas: a1 }, ReducedForm::Word { betas: b2, alphas: a2 }) =
            (self, other)
        else {
            return ReducedForm::Zero;
        };
        let k = a1.len().min(b2.len());
        for i in 0..k {
            if a1[a1.len() - 1 - i] != b2[i] {
                return ReducedForm::Zero;
            }
        }
        let mut betas = b1.clone();
        betas.extend_from_slice(&b2[k..]);
        let mut alphas = a1[..a1.len() - k].to_vec();
        alphas.extend_from_slice(a2);
        ReducedForm::Word { betas, alphas }
    }

    pub fn to_word(&self) -> Option<DyckWord> {
        match self {
            ReducedForm::Zero => None,
            ReducedForm::Word { betas, alphas } => Some(DyckWord(
                betas
                    .iter()
                    .map(|&k| Symbol::beta(k))
                    .chain(alphas.iter().map(|&k| Symbol::alpha(k)))
                    .collect(),
            )),
        }
    }
}

pub fn reduce(word: &[Symbol]) -> ReducedForm {
    let mut r = ReducedForm::unit();
    for &s in word {
        r.push(s);
        if r.is_zero() {
            break;
        }
    }
    r
}

pub fn is_admissible(word: &[Symbol]) -> bool {
    let mut stack: Vec<u8> = Vec::with_capacity(word.len());
    for s in word {
        match s.kind {
            Kind::Alpha => stack.push(s.index),
            Kind::Beta => {
                if let Some(top) = stack.pop() {
                    if top != s.index {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `H_0..H_n` of a one-sided word: `H_i` is `#alpha - #beta` among the first `i` symbols.
pub fn height_profile(word: &[Symbol]) -> Vec<i64> {
    let mut h = Vec::with_capacity(word.len() + 1);
    h.push(0);
    let mut cur = 0;
    for s in word {
        cur += s.step();
        h.push(cur);
    }
    h
}

/// `H_{-m}..H_n` for a window with past `omega_{-m}..omega_{-1}` and future
/// `omega_0..omega_{n-1}`. Entry `i + m` holds `H_i`. For `i <= -1`,
/// `H_i = #beta - #alpha` among `omega_i..omega_{-1}`.
pub fn height_profile_two_sided(past: &[Symbol], future: &[Symbol]) -> Vec<i64> {
    let mut back = Vec::with_capacity(past.len());
    let mut cur = 0;
    for s in past.iter().rev() {
        cur -= s.step();
        back.push(cur);
    }
    back.reverse();
    back.extend(height_profile(future));
    back
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PeriodicClass {
    A0,
    AAlpha,
    ABeta,
    Inadmissible,
}

/// Classifies the periodic sequence `...www...` by checking `red(w^j) != 0`
/// for `j = 1..=n+1` and the sign of the net height per period.
pub fn classify_periodic_word(word: &[Symbol]) -> PeriodicClass {
    classify_periodic_word_depth(word, word.len() + 1)
}

pub fn classify_periodic_word_depth(word: &[Symbol], depth: usize) -> PeriodicClass {
    let r = reduce(word);
    let mut pow = r.clone();
    for _ in 1..depth.max(1) {
        if pow.is_zero() {
            break;
        }
        pow = pow.mul(&r);
    }
    if pow.is_zero() {
        return PeriodicClass::Inadmissible;
    }
    let net: i64 = word.iter().map(|s| s.step()).sum();
    match net.signum() {
        1 => PeriodicClass::AAlpha,
        -1 => PeriodicClass::ABeta,
        _ => PeriodicClass::A0,
    }
}

/// `red(w w) != 0`, which decides cyclic admissibility.
pub(crate) fn cyclic_admissible_fast(red: &ReducedForm) -> bool {
    match red {
        ReducedForm::Zero => false,
        ReducedForm::Word { betas, alphas } => {
            let k = betas.len().min(alphas.len());
            (0..k).all(|i| alphas[alphas.len() - 1 - i] == betas[i])
        }
    }
}

/// Side of the construction: which bracket type carries indices in the full shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Alpha,
    Beta,
}

impl Side {
    pub fn kind(self) -> Kind {
        match self {
            Side::Alpha => Kind::Alpha,
            Side::Beta => Kind::Beta,
        }
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Side> {
        match s.to_ascii_lowercase().as_str() {
            "alpha" | "a" => Ok(Side::Alpha),
            "beta" | "b" => Ok(Side::Beta),
            _ => Err(Error::Parse(format!("side must be alpha or beta, got {s:?}"))),
        }
    }
}

/// Symbol of the full shifts `Sigma_alpha` (`alpha_1..alpha_M, beta`) or
/// `Sigma_beta` (`alpha, beta_1..beta_M`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FullSymbol {
    Indexed(Symbol),
    Bare(Kind),
}

impl fmt::Display for FullSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FullSymbol::Indexed(s) => write!(f, "{s}"),
            FullSymbol::Bare(Kind::Alpha) => f.write_str("a"),
            FullSymbol::Bare(Kind::Beta) => f.write_str("b"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullShiftWord {
    pub side: Side,
    pub symbols: Vec<FullSymbol>,
}

impl FullShiftWord {
    pub fn new(side: Side, symbols: Vec<FullSymbol>) -> Result<Self> {
        let w = FullShiftWord { side, symbols };
        w.validate()?;
        Ok(w)
    }

    fn validate(&self) -> Result<()> {
        let indexed = self.side.kind();
        for s in &self.symbols {
            let ok = match s {
                FullSymbol::Indexed(x) => x.kind == indexed,
                FullSymbol::Bare(k) => *k != indexed,
            };
            if !ok {
                return Err(Error::InvalidInput(format!(
                    "symbol {s} does not belong to the {:?}-side full shift",
                    self.side
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for FullShiftWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

fn phi(word: &[Symbol], side: Side) -> FullShiftWord {
    let keep = side.kind();
    let symbols = word
        .iter()
        .map(|&s| if s.kind == keep { FullSymbol::Indexed(s) } else { FullSymbol::Bare(s.kind) })
        .collect();
    FullShiftWord { side, symbols }
}

/// Replaces every `beta_k` by `beta`.
pub fn phi_alpha(word: &[Symbol]) -> FullShiftWord {
    phi(word, Side::Alpha)
}

/// Replaces every `alpha_k` by `alpha`.
pub fn phi_beta(word: &[Symbol]) -> FullShiftWord {
    phi(word, Side::Beta)
}

/// Output of `psi`: the Dyck word and the positions whose index came from
/// the fallback RNG because no partner exists inside the word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiOutput {
    pub word: DyckWord,
    pub unmatched: Vec<usize>,
}

/// Restores indices of bare brackets by matching. For the alpha side each
/// `beta` takes the index of the innermost open alpha to its left; for the
/// beta side each `alpha` takes the index of the nearest unmatched beta to
/// its right. Unpartnered brackets get a uniform index from `rng`.
pub fn psi<R: Rng + ?Sized>(m: u32, word: &FullShiftWord, rng: &mut R) -> Result<PsiOutput> {
    word.validate()?;
    let mut out = Vec::with_capacity(word.symbols.len());
    let mut unmatched = Vec::new();
    let mut stack: Vec<u8> = Vec::new();
    let mut resolve = |stack: &mut Vec<u8>, pos: usize, rng: &mut R| -> u8 {
        stack.pop().unwrap_or_else(|| {
            unmatched.push(pos);
            rng.random_range(1..=m) as u8
        })
    };
    match word.side {
        Side::Alpha => {
            for (i, s) in word.symbols.iter().enumerate() {
                match *s {
                    FullSymbol::Indexed(x) => {
                        stack.push(x.index);
                        out.push(x);
                    }
                    FullSymbol::Bare(_) => out.push(Symbol::beta(resolve(&mut stack, i, rng))),
                }
            }
        }
        Side::Beta => {
            for (i, s) in word.symbols.iter().enumerate().rev() {
                match *s {
                    FullSymbol::Indexed(x) => {
                        stack.push(x.index);
                        out.push(x);
                    }
                    FullSymbol::Bare(_) => out.push(Symbol::alpha(resolve(&mut stack, i, rng))),
                }
            }
            out.reverse();
            unmatched.reverse();
        }
    }
    Ok(PsiOutput { word: DyckWord(out), unmatched })
}

pub fn psi_alpha<R: Rng + ?Sized>(m: u32, word: &FullShiftWord, rng: &mut R) -> Result<PsiOutput> {
    if word.side != Side::Alpha {
        return Err(Error::InvalidInput("psi_alpha needs an alpha-side word".into()));
    }
    psi(m, word, rng)
}

pub fn psi_beta<R: Rng + ?Sized>(m: u32, word: &FullShiftWord, rng: &mut R) -> Result<PsiOutput> {
    if word.side != Side::Beta {
        return Err(Error::InvalidInput("psi_beta needs a beta-side word".into()));
    }
    psi(m, word, rng)
}

/// `n` i.i.d. uniform symbols of the `(M+1)`-letter full shift of `side`.
pub fn sample_full_shift<R: Rng + ?Sized>(side: Side, m: u32, n: usize, rng: &mut R) -> FullShiftWord {
    let kind = side.kind();
    let symbols = (0..n)
        .map(|_| {
            let r = rng.random_range(0..=m);
            if r == m {
                FullSymbol::Bare(kind.flip())
            } else {
                FullSymbol::Indexed(Symbol { kind, index: r as u8 + 1 })
            }
        })
        .collect();
    FullShiftWord { side, symbols }
}

/// A word drawn from `nu_side`, with the positions filled by the fallback.
pub type NuSample = PsiOutput;

/// Draws `n` symbols of `lambda_side` and maps them through `psi`.
pub fn sample_nu<R: Rng + ?Sized>(side: Side, m: u32, n: usize, rng: &mut R) -> NuSample {
    let mut out = Vec::with_capacity(n);
    let mut unmatched = Vec::new();
    sample_nu_into(side, m, n, rng, &mut out, &mut unmatched);
    PsiOutput { word: DyckWord(out), unmatched }
}

/// Allocation-free variant of [`sample_nu`].
pub fn sample_nu_into<R: Rng + ?Sized>(
    side: Side,
    m: u32,
    n: usize,
    rng: &mut R,
    out: &mut Vec<Symbol>,
    unmatched: &mut Vec<usize>,
) {
    out.clear();
    unmatched.clear();
    let kind = side.kind();
    let mut stack: Vec<u8> = Vec::new();
    match side {
        Side::Alpha => {
            for i in 0..n {
                let r = rng.random_range(0..=m);
                if r < m {
                    stack.push(r as u8 + 1);
                    out.push(Symbol { kind, index: r as u8 + 1 });
                } else {
                    let k = stack.pop().unwrap_or_else(|| {
                        unmatched.push(i);
                        rng.random_range(1..=m) as u8
                    });
                    out.push(Symbol::beta(k));
                }
            }
        }
        Side::Beta => {
            // Letters are i.i.d., so they may be drawn in the matching order.
            out.resize(n, Symbol::alpha(1));
            for i in (0..n).rev() {
                let r = rng.random_range(0..=m);
                if r < m {
                    stack.push(r as u8 + 1);
                    out[i] = Symbol { kind, index: r as u8 + 1 };
                } else {
                    let k = stack.pop().unwrap_or_else(|| {
                        unmatched.push(i);
                        rng.random_range(1..=m) as u8
                    });
                    out[i] = Symbol::alpha(k);
                }
            }
            unmatched.reverse();
        }
    }
}

/// Monte Carlo estimate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
    pub samples: u64,
}

impl Estimate {
    pub fn from_hits(hits: u64, samples: u64) -> Self {
        let p = hits as f64 / samples as f64;
        Estimate { value: p, stderr: (p * (1.0 - p) / samples as f64).sqrt(), samples }
    }
}

/// How [`nu_cylinder_weight`] evaluates a cylinder.
pub enum WeightMode<'a, R: Rng + ?Sized> {
    Exact,
    MonteCarlo { rng: &'a mut R, samples: u64, burn_in: usize },
}

/// Default burn-in for Monte Carlo cylinder estimates.
pub const DEFAULT_BURN_IN: usize = 64;

/// `nu_side([word])`. Exact mode needs every closing bracket of the side
/// (beta for alpha, alpha for beta) to be matched inside the word.
pub fn nu_cylinder_weight<R: Rng + ?Sized>(
    side: Side,
    m: u32,
    word: &[Symbol],
    mode: WeightMode<'_, R>,
) -> Result<f64> {
    match mode {
        WeightMode::Exact => nu_cylinder_exact(side, m, word),
        WeightMode::MonteCarlo { rng, samples, burn_in } => {
            Ok(nu_cylinder_estimates(side, m, &[DyckWord(word.to_vec())], samples, burn_in, rng)[0].value)
        }
    }
}

pub fn nu_cylinder_exact(side: Side, m: u32, word: &[Symbol]) -> Result<f64> {
    let ReducedForm::Word { betas, alphas } = reduce(word) else {
        return Ok(0.0);
    };
    let open = match side {
        Side::Alpha => betas.len(),
        Side::Beta => alphas.len(),
    };
    if open > 0 {
        return Err(Error::UnmatchedWindow);
    }
    Ok((m as f64 + 1.0).powi(-(word.len() as i32)))
}

fn encode(m: u32, w: &[Symbol]) -> u64 {
    let base = 2 * m as u64;
    w.iter().fold(w.len() as u64, |acc, s| {
        let d = (s.index - 1) as u64 + if s.is_beta() { m as u64 } else { 0 };
        acc * base + d
    })
}

/// Estimates `nu_side` of many cylinders from one batch of windows. Each
/// sample draws `burn_in + L` letters (`L` the longest word) and reads the
/// window after the burn-in (alpha) or before it (beta).
pub fn nu_cylinder_estimates<R: Rng + ?Sized>(
    side: Side,
    m: u32,
    words: &[DyckWord],
    samples: u64,
    burn_in: usize,
    rng: &mut R,
) -> Vec<Estimate> {
    let l = words.iter().map(|w| w.len()).max().unwrap_or(0);
    let lengths: Vec<bool> = {
        let mut v = vec![false; l + 1];
        for w in words {
            v[w.len()] = true;
        }
        v
    };
    let mut counts: HashMap<u64, u64> = HashMap::new();
    let mut buf = Vec::new();
    let mut um = Vec::new();
    for _ in 0..samples {
        sample_nu_into(side, m, l + burn_in, rng, &mut buf, &mut um);
        let win = match side {
            Side::Alpha => &buf[burn_in..],
            Side::Beta => &buf[..l],
        };
        for (n, &wanted) in lengths.iter().enumerate() {
            if wanted {
                *counts.entry(encode(m, &win[..n])).or_default() += 1;
            }
        }
    }
    words
        .iter()
        .map(|w| Estimate::from_hits(counts.get(&encode(m, w)).copied().unwrap_or(0), samples))
        .collect()
}

/// `theta_beta([word])` for the `(Ma, (1-Ma)/M, ..)`-Bernoulli measure on the beta-side shift.
pub fn theta_beta_weight(p: &Params, word: &FullShiftWord) -> Result<f64> {
    if word.side != Side::Beta {
        return Err(Error::InvalidInput("theta_beta is defined on the beta-side shift".into()));
    }
    word.validate()?;
    let pa = p.ma();
    let pb = (1.0 - pa) / p.mf();
    Ok(word
        .symbols
        .iter()
        .map(|s| match s {
            FullSymbol::Bare(_) => pa,
            FullSymbol::Indexed(_) => pb,
        })
        .product())
}

/// A finite window `omega_{-m}..omega_{-1} | omega_0..omega_{n-1}` of a
/// two-sided sequence. Admissibility is a predicate, not enforced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct TwoSidedWindow {
    pub past: DyckWord,
    pub future: DyckWord,
}

impl TwoSidedWindow {
    pub fn new(past: DyckWord, future: DyckWord) -> Self {
        TwoSidedWindow { past, future }
    }

    pub fn future_only(future: DyckWord) -> Self {
        TwoSidedWindow { past: DyckWord::empty(), future }
    }

    pub fn joined(&self) -> DyckWord {
        self.past.concat(&self.future)
    }

    pub fn is_admissible(&self) -> bool {
        is_admissible(&self.joined())
    }

    pub fn len(&self) -> usize {
        self.past.len() + self.future.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for TwoSidedWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.past, self.future)
    }
}

impl FromStr for TwoSidedWindow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, f) = s
            .split_once('|')
            .ok_or_else(|| Error::Parse(format!("window needs the form past|future, got {s:?}")))?;
        Ok(TwoSidedWindow { past: p.parse()?, future: f.parse()? })
    }
}

/// `iota_D((omega_i)_i) = (rho(omega_{-i}))_i` restricted to a window.
/// Index 0 stays at index 0, so a window `m | n` becomes `n-1 | m+1`.
/// A window with a past but no future has no index 0 and is rejected.
pub fn iota_dyck(w: &TwoSidedWindow) -> Result<TwoSidedWindow> {
    if w.future.is_empty() {
        if w.past.is_empty() {
            return Ok(TwoSidedWindow::default());
        }
        return Err(Error::InvalidInput("iota_D needs a window containing index 0".into()));
    }
    let joined = w.joined().reverse_swap();
    let split = w.future.len() - 1;
    Ok(TwoSidedWindow {
        past: DyckWord(joined.0[..split].to_vec()),
        future: DyckWord(joined.0[split..].to_vec()),
    })
}

/// Visits every admissible word of length `n` in lexicographic order.
pub fn for_each_admissible<F: FnMut(&[Symbol])>(m: u32, n: usize, mut f: F) {
    let mut word = Vec::with_capacity(n);
    let mut stack = Vec::with_capacity(n);
    dfs(m as u8, n, &mut word, &mut stack, &mut f);
}

fn dfs<F: FnMut(&[Symbol])>(m: u8, n: usize, word: &mut Vec<Symbol>, stack: &mut Vec<u8>, f: &mut F) {
    if word.len() == n {
        f(word);
        return;
    }
    for k in 1..=m {
        word.push(Symbol::alpha(k));
        stack.push(k);
        dfs(m, n, word, stack, f);
        stack.pop();
        word.pop();
    }
    match stack.pop() {
        Some(top) => {
            word.push(Symbol::beta(top));
            dfs(m, n, word, stack, f);
            word.pop();
            stack.push(top);
        }
        None => {
            for k in 1..=m {
                word.push(Symbol::beta(k));
                dfs(m, n, word, stack, f);
                word.pop();
            }
        }
    }
}

pub fn enumerate_admissible(m: u32, n: usize) -> Result<Vec<DyckWord>> {
    enumerate_admissible_bounded(m, n, DEFAULT_MAX_LEN)
}

pub fn enumerate_admissible_bounded(m: u32, n: usize, bound: usize) -> Result<Vec<DyckWord>> {
    if n > bound {
        return Err(Error::BoundExceeded { requested: n, bound });
    }
    let mut out = Vec::new();
    for_each_admissible(m, n, |w| out.push(DyckWord(w.to_vec())));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> DyckWord {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(reduce(&w("a1 b1")).is_unit());
        assert!(reduce(&w("a1 b2")).is_zero());
        assert_eq!(reduce(&w("b1 a1")), ReducedForm::Word { betas: vec![1], alphas: vec![1] });
        assert_eq!(reduce(&w("b2 a1 a2 b2 a1")).to_word().unwrap(), w("b2 a1 a1"));
    }

    #[test]
    fn admissible_examples() {
        assert!(is_admissible(&w("a1 a2 b2 b1")));
        assert!(!is_admissible(&w("a1 b2")));
        assert!(is_admissible(&[]));
    }

    #[test]
    fn heights() {
        assert_eq!(height_profile(&w("a1 a2")), vec![0, 1, 2]);
        assert_eq!(height_profile(&w("b1")), vec![0, -1]);
        assert_eq!(height_profile(&[]), vec![0]);
        // past a1 b1 b2: H_{-1} = 1, H_{-2} = 2, H_{-3} = 1
        assert_eq!(height_profile_two_sided(&w("a1 b1 b2"), &w("a1")), vec![1, 2, 1, 0, 1]);
    }

    #[test]
    fn periodic_classes() {
        assert_eq!(classify_periodic_word(&w("a1 a1 b1")), PeriodicClass::AAlpha);
        assert_eq!(classify_periodic_word(&w("a1 b1")), PeriodicClass::A0);
        assert_eq!(classify_periodic_word(&w("a1 b2")), PeriodicClass::Inadmissible);
        assert_eq!(classify_periodic_word(&w("b1 a2")), PeriodicClass::Inadmissible);
        assert_eq!(classify_periodic_word(&w("b1 b1 a1")), PeriodicClass::ABeta);
    }

    #[test]
    fn phi_psi() {
        assert_eq!(phi_alpha(&w("a1 b2 b1")).to_string(), "a1 b b");
        assert_eq!(phi_beta(&w("a1 b2")).to_string(), "a b2");
        assert!(phi_alpha(&[]).symbols.is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let z = phi_alpha(&w("a1 a2 b1 b1"));
        let out = psi_alpha(2, &z, &mut rng).unwrap();
        assert_eq!(out.word, w("a1 a2 b2 b1"));
        assert!(out.unmatched.is_empty());
        let x = w("a1 b1 a2 b2");
        assert_eq!(psi_alpha(2, &phi_alpha(&x), &mut rng).unwrap().word, x);
        let y = w("b2 a1 b1 a2");
        assert_eq!(psi_beta(2, &phi_beta(&y), &mut rng).unwrap().word, y);
        let lone = FullShiftWord::new(Side::Alpha, vec![FullSymbol::Bare(Kind::Beta)]).unwrap();
        let out = psi_alpha(2, &lone, &mut rng).unwrap();
        assert_eq!(out.unmatched, vec![0]);
        assert!(out.word[0].is_beta());
        assert!(psi_beta(2, &lone, &mut rng).is_err());
    }

    #[test]
    fn exact_weights() {
        assert_eq!(nu_cylinder_exact(Side::Alpha, 2, &w("a2")).unwrap(), 1.0 / 3.0);
        assert!((nu_cylinder_exact(Side::Alpha, 2, &w("a1 b1")).unwrap() - 1.0 / 9.0).abs() < 1e-15);
        assert_eq!(nu_cylinder_exact(Side::Alpha, 2, &w("b1")), Err(Error::UnmatchedWindow));
        assert_eq!(nu_cylinder_exact(Side::Beta, 2, &w("a1")), Err(Error::UnmatchedWindow));
        assert_eq!(nu_cylinder_exact(Side::Alpha, 2, &w("a1 b2")).unwrap(), 0.0);
    }

    #[test]
    fn theta_weights() {
        let p = Params::new_2d(2, 0.2).unwrap();
        let a = FullShiftWord::new(Side::Beta, vec![FullSymbol::Bare(Kind::Alpha)]).unwrap();
        assert!((theta_beta_weight(&p, &a).unwrap() - 0.4).abs() < 1e-15);
        let b = FullShiftWord::new(Side::Beta, vec![FullSymbol::Indexed(Symbol::beta(1))]).unwrap();
        assert!((theta_beta_weight(&p, &b).unwrap() - 0.3).abs() < 1e-15);
        let e = FullShiftWord::new(Side::Beta, vec![]).unwrap();
        assert_eq!(theta_beta_weight(&p, &e).unwrap(), 1.0);
    }

    #[test]
    fn iota_windows() {
        let x = TwoSidedWindow::future_only(w("a1 b1"));
        let y = iota_dyck(&x).unwrap();
        assert_eq!(y.joined(), w("a1 b1"));
        assert_eq!(y.to_string(), "a1|b1");
        assert_eq!(iota_dyck(&y).unwrap(), x);
        let z: TwoSidedWindow = "a1 a2|b2 b1 a1".parse().unwrap();
        assert_eq!(iota_dyck(&iota_dyck(&z).unwrap()).unwrap(), z);
        assert!(iota_dyck(&"a1|".parse().unwrap()).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_admissible(2, 0).unwrap(), vec![DyckWord::empty()]);
        assert_eq!(enumerate_admissible(2, 1).unwrap().len(), 4);
        assert_eq!(enumerate_admissible(2, 2).unwrap().len(), 14);
        assert!(matches!(enumerate_admissible(2, 15), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn window_text() {
        let x: TwoSidedWindow = "|a1 b1".parse().unwrap();
        assert!(x.past.is_empty());
        assert_eq!(x.to_string(), "|a1 b1");
        assert!("a1 b1".parse::<TwoSidedWindow>().is_err());
    }
}
