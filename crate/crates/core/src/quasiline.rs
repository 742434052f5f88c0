//! Quasiline charts: a quasimorphism `m` with cutoff `C` gives the generating
//! set `τ = {g : |m(g)| < C}` and `m` itself is the quasiline coordinate.

use std::collections::HashSet;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qm::{Quasimorphism, Rational};
use crate::raag::{GroupWord, Letter, Raag};

#[derive(Debug, Clone)]
pub struct QuasilineChart {
    m: Quasimorphism,
    cutoff: Rational,
    vertex: u32,
    m_z: Rational,
    cutoff_defaulted: bool,
}

/// Lower and upper bounds on the `τ`-word length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TauBounds {
    pub lower: u64,
    pub upper: u64,
}

fn ceil_div(a: Rational, b: Rational) -> u64 {
    (a / b).ceil().to_integer().max(0) as u64
}

impl QuasilineChart {
    /// `2D + 2|m(z)| + 1`: larger than `2D`, and `m(z^{±1})` lands in `(0, C/2)`.
    pub fn default_cutoff(m: &Quasimorphism, m_z: Rational) -> Rational {
        Rational::from_integer(2) * m.defect_bound() + Rational::from_integer(2) * m_z.abs() + Rational::from_integer(1)
    }

    /// Chart for the vertex `v`, whose generator is the central direction `z`.
    pub fn new(m: Quasimorphism, vertex: u32, cutoff: Option<Rational>) -> Result<Self> {
        let raag = m.raag().clone();
        let z = raag.letter(Letter::pos(vertex));
        if !m.in_domain(&z) {
            return Err(Error::ChartInvariant(format!(
                "{} lies outside the quasimorphism's domain",
                raag.gen_name(vertex)
            )));
        }
        let m_z = m.eval(&z)?;
        if m_z.is_zero() {
            return Err(Error::ChartInvariant(format!(
                "m({}) = 0, the central direction must be unbounded",
                raag.gen_name(vertex)
            )));
        }
        let cutoff_defaulted = cutoff.is_none();
        let cutoff = cutoff.unwrap_or_else(|| Self::default_cutoff(&m, m_z));
        let two = Rational::from_integer(2);
        if cutoff <= two * m.defect_bound() {
            return Err(Error::ChartInvariant(format!(
                "cutoff {cutoff} must exceed twice the defect bound {}",
                m.defect_bound()
            )));
        }
        let half = cutoff / two;
        let mut probes = vec![z.clone(), raag.inverse(&z)];
        for l in raag.letters() {
            probes.push(raag.letter(l));
        }
        let mut witnessed = false;
        for p in probes.iter().filter(|p| m.in_domain(p)) {
            let value = m.eval(p)?;
            if value > Rational::zero() && value < half {
                witnessed = true;
                break;
            }
        }
        if !witnessed {
            return Err(Error::ChartInvariant(format!(
                "no probed value of m lies in (0, {half})"
            )));
        }
        Ok(QuasilineChart {
            m,
            cutoff,
            vertex,
            m_z,
            cutoff_defaulted,
        })
    }

    pub fn quasimorphism(&self) -> &Quasimorphism {
        &self.m
    }

    pub fn raag(&self) -> &Raag {
        self.m.raag()
    }

    pub fn cutoff(&self) -> Rational {
        self.cutoff
    }

    pub fn cutoff_defaulted(&self) -> bool {
        self.cutoff_defaulted
    }

    pub fn vertex(&self) -> u32 {
        self.vertex
    }

    /// `m(z)` for the central generator `z`.
    pub fn central_value(&self) -> Rational {
        self.m_z
    }

    pub fn defect_bound(&self) -> Rational {
        self.m.defect_bound()
    }

    pub fn coord(&self, g: &GroupWord) -> Result<Rational> {
        self.m.eval(g)
    }

    pub fn in_tau(&self, g: &GroupWord) -> Result<bool> {
        Ok(self.coord(g)?.abs() < self.cutoff)
    }

    /// Largest value of `|m|` that an element of `τ` can have.
    fn tau_value_max(&self) -> Rational {
        let step = self.m.value_step();
        ((self.cutoff / step).ceil() - Rational::from_integer(1)) * step
    }

    /// Largest `s` with `z^s ∈ τ`.
    fn chunk(&self) -> Result<u64> {
        let s = ((self.cutoff / self.m_z.abs()).ceil().to_integer() - 1).max(0) as u64;
        let r = self.raag();
        let z = r.letter(Letter::pos(self.vertex));
        if s == 0 || !self.in_tau(&r.power(&z, s as i64))? {
            return Err(Error::ChartInvariant("no power of the central direction lies in τ".into()));
        }
        Ok(s)
    }

    /// `lower = ⌈(|m(g)| + D) / (M + D)⌉`, where `M < C` is the largest
    /// multiple of the value step below the cutoff, so `|m| ≤ M` on `τ`;
    /// `upper` from `g = (g z^{j-n}) · z^{n-j}`
    /// with `n = round(m(g)/m(z))`, the first factor certified in `τ` (or
    /// trivial) and the power of `z` cut into chunks `z^s ∈ τ`; the best `j`
    /// between `0` and one chunk towards `n` is kept.
    pub fn tau_distance_bounds(&self, g: &GroupWord) -> Result<TauBounds> {
        let r = self.raag();
        let g = r.nf(g);
        let value = self.coord(&g)?;
        if g.is_empty() {
            return Ok(TauBounds { lower: 0, upper: 0 });
        }
        let lower = ceil_div(value.abs() + self.defect_bound(), self.tau_value_max() + self.defect_bound()).max(1);
        let n = (value / self.m_z).round().to_integer();
        let z = r.letter(Letter::pos(self.vertex));
        let rest = r.mul(&g, &r.power(&z, -n));
        if !self.in_tau(&rest)? {
            return Err(Error::ChartInvariant(format!(
                "cannot certify {} in τ",
                r.format(&rest)
            )));
        }
        let s = self.chunk()?;
        let mut upper = u64::from(!rest.is_empty()) + n.unsigned_abs().div_ceil(s);
        let step = n.signum();
        for j in 1..=(s.min(n.unsigned_abs()) as i64) {
            let first = r.mul(&g, &r.power(&z, step * j - n));
            if self.in_tau(&first)? {
                let remaining = n.unsigned_abs() - j as u64;
                upper = upper.min(u64::from(!first.is_empty()) + remaining.div_ceil(s));
            }
        }
        if self.in_tau(&g)? {
            upper = upper.min(1);
        }
        Ok(TauBounds { lower, upper })
    }

    /// Exact word length of `g` over the finite alphabet `τ ∩ B_r`, searched
    /// up to `search_cap` letters; `None` when the cap is reached first.
    pub fn tau_distance_exact(&self, g: &GroupWord, letter_radius: usize, search_cap: usize) -> Result<Option<usize>> {
        let r = self.raag();
        let g = r.nf(g);
        if g.is_empty() {
            return Ok(Some(0));
        }
        let mut letters = Vec::new();
        for x in r.ball_enumerate(letter_radius)? {
            if !x.is_empty() && self.m.in_domain(&x) && self.in_tau(&x)? {
                letters.push(x);
            }
        }
        let alphabet: HashSet<Vec<Letter>> = letters.iter().map(|x| x.letters().to_vec()).collect();
        let inverses: Vec<GroupWord> = letters.iter().map(|x| r.inverse(x)).collect();
        let start = self.tau_distance_bounds(&g)?.lower as usize;
        let mut search = Search {
            chart: self,
            alphabet: &alphabet,
            inverses: &inverses,
            letter_radius,
            value_max: self.tau_value_max(),
            failed: HashSet::new(),
        };
        for k in start..=search_cap {
            if search.reachable(&g, k)? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

struct Search<'a> {
    chart: &'a QuasilineChart,
    alphabet: &'a HashSet<Vec<Letter>>,
    inverses: &'a [GroupWord],
    letter_radius: usize,
    value_max: Rational,
    failed: HashSet<(Vec<Letter>, usize)>,
}

impl Search<'_> {
    /// Whether `u` is a product of exactly `k` alphabet letters (`k ≥ 1`).
    fn reachable(&mut self, u: &GroupWord, k: usize) -> Result<bool> {
        if u.len() > self.letter_radius * k {
            return Ok(false);
        }
        // A product of k letters of τ has |m| ≤ kM + (k - 1)D.
        let k_rat = Rational::from_integer(k as i64);
        if self.chart.coord(u)?.abs() > k_rat * self.value_max + (k_rat - Rational::from_integer(1)) * self.chart.defect_bound() {
            return Ok(false);
        }
        if k == 1 {
            return Ok(self.alphabet.contains(u.letters()));
        }
        let key = (u.letters().to_vec(), k);
        if self.failed.contains(&key) {
            return Ok(false);
        }
        let r = self.chart.raag();
        for x_inv in self.inverses {
            let rest = r.mul(x_inv, u);
            if self.chart.m.in_domain(&rest) && self.reachable(&rest, k - 1)? {
                return Ok(true);
            }
        }
        self.failed.insert(key);
        Ok(false)
    }
}

impl QuasilineChart {
    /// Convenience: the exponent chart of a generator with the given cutoff.
    pub fn exponent(raag: &Raag, vertex: u32, cutoff: Option<Rational>) -> Result<Self> {
        Self::new(Quasimorphism::exponent_hom(raag, vertex), vertex, cutoff)
    }
}
