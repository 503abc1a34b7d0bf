//! Root continuation for a one-parameter family of cubics around a closed
//! loop: the induced permutation of the roots and the braid word read off
//! from crossings of their real parts.
//!
//! Positions are the roots sorted by real part (ties — |ΔRe| below
//! 1e−12 of the root scale — broken by descending imaginary part). A letter
//! σ_i swaps positions i and i+1 (1-based); it is positive when the strand
//! moving right passes above the other one (larger imaginary part at the
//! middle of the step).

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::monodromy::UnimodularMatrix;
use crate::weierstrass::CubicPoly;

pub const MIN_SAMPLES: usize = 16;
/// Largest allowed step displacement as a fraction of the smallest root gap.
pub const MATCH_FRACTION: f64 = 1.0 / 3.0;
/// Relative gap below which a sample counts as a double root.
pub const DEGENERATE_GAP: f64 = 1e-9;
const TIE_TOL: f64 = 1e-12;
const CLOSURE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BraidError {
    #[error("loop needs at least {MIN_SAMPLES} samples, got {0}")]
    TooFewSamples(usize),
    #[error("{params} parameter values for {polys} polynomials")]
    LengthMismatch { params: usize, polys: usize },
    #[error("loop is not closed: first and last polynomials differ by {0:e}")]
    NotClosed(f64),
    #[error("sample {index} has a double root (gap {gap:e})")]
    DegenerateSample { index: usize, gap: f64 },
    #[error("step {index} -> {next} moves a root by {displacement:e}, more than 1/3 of the root gap {gap:e}; refine the loop")]
    RefinementNeeded {
        index: usize,
        next: usize,
        displacement: f64,
        gap: f64,
    },
}

/// A sampled closed loop of cubics; the last sample repeats the first.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopSamples {
    params: Vec<f64>,
    polys: Vec<CubicPoly>,
}

fn coeff_distance(p: &CubicPoly, q: &CubicPoly) -> (f64, f64) {
    let (a, b) = (p.coefficients(), q.coefficients());
    let dist = a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    let scale = a.iter().chain(b.iter()).map(|x| x.norm()).fold(0.0, f64::max);
    (dist, scale)
}

impl LoopSamples {
    /// Explicitly closed loop: `polys.last()` must match `polys[0]`.
    pub fn new(params: Vec<f64>, polys: Vec<CubicPoly>) -> Result<Self, BraidError> {
        if params.len() != polys.len() {
            return Err(BraidError::LengthMismatch {
                params: params.len(),
                polys: polys.len(),
            });
        }
        if polys.len() < MIN_SAMPLES {
            return Err(BraidError::TooFewSamples(polys.len()));
        }
        let (dist, scale) = coeff_distance(&polys[0], &polys[polys.len() - 1]);
        if dist > CLOSURE_TOL * scale.max(1.0) {
            return Err(BraidError::NotClosed(dist));
        }
        Ok(Self { params, polys })
    }

    /// Loop given without its closing sample; the first polynomial is
    /// appended at parameter 1.
    pub fn implied(polys: Vec<CubicPoly>) -> Result<Self, BraidError> {
        let n = polys.len();
        if n < MIN_SAMPLES {
            return Err(BraidError::TooFewSamples(n));
        }
        let mut params: Vec<f64> = (0..n).map(|k| k as f64 / n as f64).collect();
        params.push(1.0);
        let mut polys = polys;
        polys.push(polys[0]);
        Ok(Self { params, polys })
    }

    /// Samples f(k/n) for k = 0..n (n + 1 polynomials, closure checked).
    pub fn from_fn(n: usize, f: impl Fn(f64) -> CubicPoly) -> Result<Self, BraidError> {
        let params: Vec<f64> = (0..=n).map(|k| k as f64 / n as f64).collect();
        let polys = params.iter().map(|&s| f(s)).collect();
        Self::new(params, polys)
    }

    /// Number of steps (samples minus the closing repeat).
    pub fn steps(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn polys(&self) -> &[CubicPoly] {
        &self.polys
    }

    /// Inserts the coefficient-wise midpoint between every pair of samples.
    pub fn refined(&self) -> Self {
        let mut params = Vec::with_capacity(2 * self.params.len() - 1);
        let mut polys = Vec::with_capacity(params.capacity());
        for k in 0..self.steps() {
            let (p, q) = (&self.polys[k], &self.polys[k + 1]);
            let (a, b) = (p.coefficients(), q.coefficients());
            let mid = [0, 1, 2, 3].map(|i| 0.5 * (a[i] + b[i]));
            params.push(self.params[k]);
            params.push(0.5 * (self.params[k] + self.params[k + 1]));
            polys.push(*p);
            // Midpoints of cubics with nonzero leading terms can only lose
            // degree if the leading terms cancel; keep the left sample then.
            polys.push(CubicPoly::new(mid[0], mid[1], mid[2], mid[3]).unwrap_or(*p));
        }
        params.push(*self.params.last().unwrap());
        polys.push(*self.polys.last().unwrap());
        Self { params, polys }
    }

    /// The loop traversed `times` times in a row.
    pub fn repeated(&self, times: usize) -> Self {
        let mut params = vec![self.params[0]];
        let mut polys = vec![self.polys[0]];
        for rep in 0..times {
            for k in 1..self.polys.len() {
                params.push(rep as f64 + self.params[k]);
                polys.push(self.polys[k]);
            }
        }
        Self { params, polys }
    }

    /// The same loop run backwards.
    pub fn reversed(&self) -> Self {
        let last = *self.params.last().unwrap();
        Self {
            params: self.params.iter().rev().map(|p| last - p).collect(),
            polys: self.polys.iter().rev().copied().collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidLetter {
    /// 1 or 2.
    pub generator: u8,
    pub inverse: bool,
}

impl BraidLetter {
    pub const S1: Self = Self {
        generator: 1,
        inverse: false,
    };
    pub const S2: Self = Self {
        generator: 2,
        inverse: false,
    };
    pub const S1_INV: Self = Self {
        generator: 1,
        inverse: true,
    };
    pub const S2_INV: Self = Self {
        generator: 2,
        inverse: true,
    };

    pub fn inv(self) -> Self {
        Self {
            inverse: !self.inverse,
            ..self
        }
    }

    fn matrix(self) -> UnimodularMatrix {
        let m = if self.generator == 1 {
            UnimodularMatrix::B1
        } else {
            UnimodularMatrix::B2
        };
        if self.inverse {
            m.inverse()
        } else {
            m
        }
    }
}

impl fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.generator)?;
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

/// Freely reduced word in σ₁^{±1}, σ₂^{±1}.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(letters: impl IntoIterator<Item = BraidLetter>) -> Self {
        let mut w = Self::default();
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Appends a letter, cancelling it against an inverse at the end.
    pub fn push(&mut self, l: BraidLetter) {
        if self.letters.last() == Some(&l.inv()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::empty(), |acc, _| acc.concat(self))
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.letters.iter().rev().map(|l| l.inv()))
    }

    /// Image in S₃: σ_i acts as the transposition of positions i and i+1.
    pub fn permutation(&self) -> Permutation3 {
        let mut arr = [0usize, 1, 2];
        for l in &self.letters {
            let i = l.generator as usize - 1;
            arr.swap(i, i + 1);
        }
        Permutation3::from_arrangement(arr)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// σ₁ ↦ b₁, σ₂ ↦ b₂.
pub fn braid_to_matrix(word: &BraidWord) -> UnimodularMatrix {
    word.letters
        .iter()
        .fold(UnimodularMatrix::IDENTITY, |acc, l| acc * l.matrix())
}

/// π with π(p) = final position of the root that started at position p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation3([usize; 3]);

impl Permutation3 {
    pub const IDENTITY: Self = Self([0, 1, 2]);

    pub fn new(images: [usize; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for &i in &images {
            if i > 2 || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Self(images))
    }

    /// From the final arrangement (strand at each position, strands named
    /// by their starting position).
    fn from_arrangement(arr: [usize; 3]) -> Self {
        let mut images = [0; 3];
        for (pos, &strand) in arr.iter().enumerate() {
            images[strand] = pos;
        }
        Self(images)
    }

    pub fn images(&self) -> [usize; 3] {
        self.0
    }

    pub fn apply(&self, p: usize) -> usize {
        self.0[p]
    }

    /// (self ∘ other)(p) = self(other(p)).
    pub fn compose(&self, other: &Self) -> Self {
        Self(other.0.map(|p| self.0[p]))
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..3).filter(|&p| self.0[p] == p).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn is_transposition(&self) -> bool {
        self.fixed_points().len() == 1
    }
}

impl fmt::Display for Permutation3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.0[0], self.0[1], self.0[2])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BraidTrack {
    pub permutation: Permutation3,
    pub word: BraidWord,
    /// Roots at the first sample in position order.
    pub start_roots: [Complex64; 3],
    /// Worst displacement/gap ratio seen over all steps.
    pub max_step_ratio: f64,
}

fn root_scale(r: &[Complex64; 3]) -> f64 {
    r.iter().fold(1.0f64, |m, z| m.max(z.norm()))
}

/// Indices 0..3 sorted into position order.
fn position_order(r: &[Complex64; 3]) -> [usize; 3] {
    let tie = TIE_TOL * root_scale(r);
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&a, &b| {
        let (x, y) = (r[a], r[b]);
        if (x.re - y.re).abs() <= tie {
            y.im.total_cmp(&x.im)
        } else {
            x.re.total_cmp(&y.re)
        }
    });
    idx
}

/// For each root of `from`, the index of the matching root of `to`.
fn match_step(from: &[Complex64; 3], to: &[Complex64; 3], index: usize) -> Result<([usize; 3], f64), BraidError> {
    let gap = CubicPoly::min_root_gap(from).min(CubicPoly::min_root_gap(to));
    let mut assign = [0usize; 3];
    let mut used = [false; 3];
    let mut worst = 0.0f64;
    for (s, z) in from.iter().enumerate() {
        let (j, d) = to
            .iter()
            .enumerate()
            .map(|(j, w)| (j, (z - w).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        worst = worst.max(d);
        if used[j] || !(d < MATCH_FRACTION * gap) {
            return Err(BraidError::RefinementNeeded {
                index,
                next: index + 1,
                displacement: d,
                gap,
            });
        }
        used[j] = true;
        assign[s] = j;
    }
    Ok((assign, worst / gap))
}

pub fn track_roots(samples: &LoopSamples) -> Result<BraidTrack, BraidError> {
    let roots: Vec<[Complex64; 3]> = samples.polys.par_iter().map(|p| p.roots()).collect();
    for (index, r) in roots.iter().enumerate() {
        let gap = CubicPoly::min_root_gap(r);
        if gap <= DEGENERATE_GAP * root_scale(r) {
            return Err(BraidError::DegenerateSample { index, gap });
        }
    }
    let matches: Vec<([usize; 3], f64)> = (0..samples.steps())
        .into_par_iter()
        .map(|k| match_step(&roots[k], &roots[k + 1], k))
        .collect::<Result<_, _>>()?;

    // strand s currently sits at root index `at[s]` of the current sample;
    // strands are named by their starting position.
    let order0 = position_order(&roots[0]);
    let mut at = order0;
    let mut arr = [0usize, 1, 2];
    let mut word = BraidWord::empty();
    let mut max_ratio = 0.0f64;
    for (k, (assign, ratio)) in matches.iter().enumerate() {
        max_ratio = max_ratio.max(*ratio);
        let prev = &roots[k];
        let next = &roots[k + 1];
        let next_at = at.map(|i| assign[i]);
        // Target arrangement at k+1.
        let order = position_order(next);
        let target = order.map(|root| next_at.iter().position(|&i| i == root).unwrap());
        // Bubble the current arrangement into the target with adjacent swaps.
        let rank = |strand: usize| target.iter().position(|&s| s == strand).unwrap();
        loop {
            let mut swapped = false;
            for i in 0..2 {
                if rank(arr[i]) > rank(arr[i + 1]) {
                    let (right_mover, left_mover) = (arr[i], arr[i + 1]);
                    let mid_im = |s: usize| 0.5 * (prev[at[s]].im + next[next_at[s]].im);
                    let over = mid_im(right_mover) > mid_im(left_mover);
                    word.push(BraidLetter {
                        generator: (i + 1) as u8,
                        inverse: !over,
                    });
                    arr.swap(i, i + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        at = next_at;
    }
    Ok(BraidTrack {
        permutation: Permutation3::from_arrangement(arr),
        word,
        start_roots: order0.map(|i| roots[0][i]),
        max_step_ratio: max_ratio,
    })
}

/// x³ − 3x + c(s) with c(s) = center + radius·e^{2πi·turns·s}.
pub fn shifted_cubic(center: Complex64, radius: f64, turns: f64) -> impl Fn(f64) -> CubicPoly {
    move |s| {
        let c = center + Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * turns * s);
        CubicPoly::new(1.0.into(), 0.0.into(), (-3.0).into(), c).expect("leading coefficient is 1")
    }
}
