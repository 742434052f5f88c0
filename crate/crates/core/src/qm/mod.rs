//! Quasimorphisms seeding the quasilines: exponent homomorphisms, Brooks
//! counting quasimorphisms on free parabolics, finite-index averages and the
//! `φ^λ` family.

mod parse;
mod straighten;

use std::fmt;

use num_rational::Rational64;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::raag::{GroupWord, Letter, ParabolicSubset, Raag};

pub use parse::parse_quasimorphism;
pub use straighten::{straighten, verify_straightening, StraighteningInput, StraighteningRow};

pub type Rational = Rational64;

/// Defect bound assigned to Brooks counting quasimorphisms unless overridden.
pub const DEFAULT_BROOKS_DEFECT: i64 = 6;

/// Subgroup on which a quasimorphism is defined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QmDomain {
    Whole,
    Parabolic(ParabolicSubset),
}

impl QmDomain {
    pub fn contains(&self, raag: &Raag, g: &GroupWord) -> bool {
        match self {
            QmDomain::Whole => true,
            QmDomain::Parabolic(s) => raag.in_parabolic(g, s),
        }
    }

    pub fn intersect(&self, other: &QmDomain) -> QmDomain {
        match (self, other) {
            (QmDomain::Whole, d) | (d, QmDomain::Whole) => d.clone(),
            (QmDomain::Parabolic(a), QmDomain::Parabolic(b)) => {
                QmDomain::Parabolic(a.0.intersection(&b.0).copied().collect::<std::collections::BTreeSet<_>>().into())
            }
        }
    }

    fn describe(&self, raag: &Raag) -> String {
        match self {
            QmDomain::Whole => "G".to_string(),
            QmDomain::Parabolic(s) => {
                let names: Vec<&str> = s.iter().map(|g| raag.gen_name(g)).collect();
                format!("G_{{{}}}", names.join(","))
            }
        }
    }
}

/// A coset representative `g_i` of `E` in a finite-index overgroup, given by
/// its conjugation action on `E`: `h ↦ inner · σ(h) · inner⁻¹`, where `σ` is
/// the automorphism of `G_Λ` induced by a signed graph automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepAction {
    pub label: String,
    pub inner: GroupWord,
    /// Image of each generator under `σ`, indexed by generator.
    pub images: Vec<Letter>,
}

impl RepAction {
    pub fn identity(raag: &Raag) -> Self {
        RepAction {
            label: "1".to_string(),
            inner: raag.identity(),
            images: (0..raag.rank() as u32).map(Letter::pos).collect(),
        }
    }

    /// Pure inner conjugation by `x`.
    pub fn inner(raag: &Raag, x: GroupWord) -> Self {
        RepAction {
            label: raag.format(&x),
            inner: raag.nf(&x),
            images: (0..raag.rank() as u32).map(Letter::pos).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.inner.is_empty() && self.images.iter().enumerate().all(|(i, l)| *l == Letter::pos(i as u32))
    }

    fn check_automorphism(&self, raag: &Raag) -> Result<()> {
        let n = raag.rank();
        if self.images.len() != n {
            return Err(Error::Precondition(format!(
                "representative `{}` gives {} generator images, expected {n}",
                self.label,
                self.images.len()
            )));
        }
        let mut targets: Vec<u32> = self.images.iter().map(|l| l.gen).collect();
        targets.sort_unstable();
        targets.dedup();
        if targets.len() != n {
            return Err(Error::Precondition(format!(
                "representative `{}` does not permute the generators",
                self.label
            )));
        }
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                let (ia, ib) = (self.images[a as usize].gen, self.images[b as usize].gen);
                if raag.graph().adjacent(a, b) != raag.graph().adjacent(ia, ib) {
                    return Err(Error::Precondition(format!(
                        "representative `{}` is not a graph automorphism",
                        self.label
                    )));
                }
            }
        }
        Ok(())
    }

    /// `inner · σ(h) · inner⁻¹`.
    pub fn act(&self, raag: &Raag, h: &GroupWord) -> GroupWord {
        let image: Vec<Letter> = h
            .letters()
            .iter()
            .map(|l| {
                let t = self.images[l.gen as usize];
                if l.inverse {
                    t.inv()
                } else {
                    t
                }
            })
            .collect();
        let image = raag.word(&image);
        raag.conjugate(&self.inner, &image)
    }
}

/// Coset representatives `g_1 = 1, …, g_k` of `E` with their signs `ε(g_i)`,
/// read off from the action on the central generator `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionData {
    pub central: u32,
    reps: Vec<RepAction>,
    epsilon: Vec<i64>,
}

impl ExtensionData {
    /// Validates the representatives. The identity is prepended when the
    /// list does not already start with it.
    pub fn new(raag: &Raag, central: u32, reps: Vec<RepAction>) -> Result<Self> {
        let mut all = Vec::with_capacity(reps.len() + 1);
        if reps.first().is_none_or(|r| !r.is_identity()) {
            all.push(RepAction::identity(raag));
        }
        all.extend(reps);
        let z = raag.letter(Letter::pos(central));
        let z_inv = raag.letter(Letter::neg(central));
        let mut epsilon = Vec::with_capacity(all.len());
        for (i, rep) in all.iter().enumerate() {
            rep.check_automorphism(raag)?;
            if all[..i].iter().any(|r| r.inner == rep.inner && r.images == rep.images) {
                return Err(Error::Precondition(format!("duplicate representative `{}`", rep.label)));
            }
            let image = rep.act(raag, &z);
            epsilon.push(if image == z {
                1
            } else if image == z_inv {
                -1
            } else {
                return Err(Error::Precondition(format!(
                    "representative `{}` sends {} to {}, not to its inverse or itself",
                    rep.label,
                    raag.gen_name(central),
                    raag.format(&image)
                )));
            });
        }
        Ok(ExtensionData {
            central,
            reps: all,
            epsilon,
        })
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[RepAction] {
        &self.reps
    }

    pub fn epsilon(&self, i: usize) -> i64 {
        self.epsilon[i]
    }
}

#[derive(Debug, Clone)]
pub enum QmKind {
    Zero,
    ExponentSum {
        gen: u32,
    },
    Brooks {
        pattern: [Letter; 2],
        homogenized: bool,
    },
    Averaged {
        base: Box<Quasimorphism>,
        ext: ExtensionData,
    },
    PhiLambda {
        phi: Box<Quasimorphism>,
        psi: Box<Quasimorphism>,
        lambda: Rational,
        vertex: u32,
    },
}

/// A map to the rationals with a declared defect bound, defined on a
/// parabolic subgroup (or the whole group).
#[derive(Debug, Clone)]
pub struct Quasimorphism {
    raag: Raag,
    kind: QmKind,
    defect_bound: Rational,
    homogeneous: bool,
    domain: QmDomain,
}

impl Quasimorphism {
    pub fn zero(raag: &Raag) -> Self {
        Quasimorphism {
            raag: raag.clone(),
            kind: QmKind::Zero,
            defect_bound: Rational::zero(),
            homogeneous: true,
            domain: QmDomain::Whole,
        }
    }

    /// The exponent-sum homomorphism of a generator.
    pub fn exponent_hom(raag: &Raag, gen: u32) -> Self {
        Quasimorphism {
            raag: raag.clone(),
            kind: QmKind::ExponentSum { gen },
            defect_bound: Rational::zero(),
            homogeneous: true,
            domain: QmDomain::Whole,
        }
    }

    /// Homogenized Brooks counting quasimorphism of a two-letter pattern on
    /// the free parabolic `G_S`: cyclic occurrences of the pattern minus those
    /// of its inverse in the cyclic reduction.
    pub fn brooks_homogenized(raag: &Raag, pattern: &GroupWord, ambient: ParabolicSubset) -> Result<Self> {
        Self::brooks(raag, pattern, ambient, true)
    }

    /// The non-homogenized counting quasimorphism (linear occurrences in the reduced word).
    pub fn brooks_raw(raag: &Raag, pattern: &GroupWord, ambient: ParabolicSubset) -> Result<Self> {
        Self::brooks(raag, pattern, ambient, false)
    }

    fn brooks(raag: &Raag, pattern: &GroupWord, ambient: ParabolicSubset, homogenized: bool) -> Result<Self> {
        let letters = pattern.letters();
        if letters.len() != 2 {
            return Err(Error::Unsupported(format!(
                "Brooks patterns must have length 2, got `{}`",
                raag.format(pattern)
            )));
        }
        let (x, y) = (letters[0], letters[1]);
        if x.gen == y.gen {
            return Err(Error::Unsupported(format!(
                "Brooks pattern `{}` must use two distinct generators",
                raag.format(pattern)
            )));
        }
        for s in ambient.iter() {
            for t in ambient.iter() {
                if raag.commute(s, t) {
                    return Err(Error::Precondition(format!(
                        "ambient parabolic is not free: {} and {} commute",
                        raag.gen_name(s),
                        raag.gen_name(t)
                    )));
                }
            }
        }
        if !ambient.contains(x.gen) || !ambient.contains(y.gen) {
            return Err(Error::Precondition("pattern leaves the ambient free parabolic".into()));
        }
        Ok(Quasimorphism {
            raag: raag.clone(),
            kind: QmKind::Brooks {
                pattern: [x, y],
                homogenized,
            },
            defect_bound: Rational::from_integer(DEFAULT_BROOKS_DEFECT),
            homogeneous: homogenized,
            domain: QmDomain::Parabolic(ambient),
        })
    }

    /// `m^G(h) = (1/k) Σ ε(g_i) m(g_i h g_i⁻¹)`, normalized by the number of representatives.
    pub fn average(m: &Quasimorphism, ext: ExtensionData) -> Result<Self> {
        if !m.homogeneous {
            return Err(Error::Precondition("averaging requires a homogeneous quasimorphism".into()));
        }
        Ok(Quasimorphism {
            raag: m.raag.clone(),
            domain: m.domain.clone(),
            defect_bound: m.defect_bound,
            homogeneous: true,
            kind: QmKind::Averaged {
                base: Box::new(m.clone()),
                ext,
            },
        })
    }

    /// `φ^λ = φ + λ · ψ ∘ 𝔭_v` on `C(v)`, where `φ` is the exponent sum of `v`.
    pub fn phi_lambda(phi: &Quasimorphism, psi: &Quasimorphism, lambda: Rational) -> Result<Self> {
        match phi.kind {
            QmKind::ExponentSum { gen } => Self::phi_lambda_at(phi, psi, lambda, gen),
            _ => Err(Error::Unsupported(
                "phi_lambda needs an exponent homomorphism to locate the vertex; use phi_lambda_at".into(),
            )),
        }
    }

    /// `φ^λ_v = φ + λ · ψ ∘ 𝔭_v`, where `𝔭_v: C(v) → G_{Lk(v)}` kills `v`.
    pub fn phi_lambda_at(phi: &Quasimorphism, psi: &Quasimorphism, lambda: Rational, vertex: u32) -> Result<Self> {
        let raag = &phi.raag;
        let link = raag.link(vertex);
        if !link.iter().all(|g| psi.domain.contains(raag, &raag.letter(Letter::pos(g)))) {
            return Err(Error::Precondition(format!(
                "psi must be defined on G_Lk({})",
                raag.gen_name(vertex)
            )));
        }
        Ok(Quasimorphism {
            raag: raag.clone(),
            domain: phi.domain.intersect(&QmDomain::Parabolic(raag.centralizer(vertex))),
            defect_bound: phi.defect_bound + lambda.abs() * psi.defect_bound,
            homogeneous: phi.homogeneous && psi.homogeneous,
            kind: QmKind::PhiLambda {
                phi: Box::new(phi.clone()),
                psi: Box::new(psi.clone()),
                lambda,
                vertex,
            },
        })
    }

    pub fn with_defect_bound(mut self, bound: Rational) -> Self {
        self.defect_bound = bound;
        self
    }

    /// Restricts the domain further.
    pub fn restricted(mut self, domain: QmDomain) -> Self {
        self.domain = self.domain.intersect(&domain);
        self
    }

    pub fn raag(&self) -> &Raag {
        &self.raag
    }

    pub fn kind(&self) -> &QmKind {
        &self.kind
    }

    pub fn defect_bound(&self) -> Rational {
        self.defect_bound
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn domain(&self) -> &QmDomain {
        &self.domain
    }

    /// A positive `q` with every value of the map in `q·ℤ`.
    pub fn value_step(&self) -> Rational {
        match &self.kind {
            QmKind::Zero | QmKind::ExponentSum { .. } | QmKind::Brooks { .. } => Rational::from_integer(1),
            QmKind::Averaged { base, ext } => base.value_step() / Rational::from_integer(ext.index() as i64),
            QmKind::PhiLambda { phi, psi, lambda, .. } => {
                if lambda.is_zero() {
                    phi.value_step()
                } else {
                    rational_gcd(phi.value_step(), lambda.abs() * psi.value_step())
                }
            }
        }
    }

    pub fn in_domain(&self, g: &GroupWord) -> bool {
        self.domain.contains(&self.raag, g)
    }

    pub fn eval(&self, g: &GroupWord) -> Result<Rational> {
        let r = &self.raag;
        let g = r.nf(g);
        if !self.in_domain(&g) {
            return Err(Error::Domain {
                element: r.format(&g),
                domain: self.domain.describe(r),
            });
        }
        Ok(match &self.kind {
            QmKind::Zero => Rational::zero(),
            QmKind::ExponentSum { gen } => Rational::from_integer(g.exponent_sum(*gen)),
            QmKind::Brooks { pattern, homogenized } => {
                Rational::from_integer(brooks_count(g.letters(), *pattern, *homogenized))
            }
            QmKind::Averaged { base, ext } => {
                let mut total = Rational::zero();
                for (i, rep) in ext.reps().iter().enumerate() {
                    let moved = rep.act(r, &g);
                    total += Rational::from_integer(ext.epsilon(i)) * base.eval(&moved)?;
                }
                total / Rational::from_integer(ext.index() as i64)
            }
            QmKind::PhiLambda {
                phi,
                psi,
                lambda,
                vertex,
            } => phi.eval(&g)? + *lambda * psi.eval(&r.delete_generator(&g, *vertex))?,
        })
    }

    /// Configuration-string form, e.g. `lam:3:exp:b:brooks:a,c`.
    pub fn describe(&self) -> String {
        let r = &self.raag;
        let letter = |l: &Letter| {
            if l.inverse {
                format!("{}^-1", r.gen_name(l.gen))
            } else {
                r.gen_name(l.gen).to_string()
            }
        };
        match &self.kind {
            QmKind::Zero => "zero".to_string(),
            QmKind::ExponentSum { gen } => format!("exp:{}", r.gen_name(*gen)),
            QmKind::Brooks { pattern, homogenized } => format!(
                "{}:{},{}",
                if *homogenized { "brooks" } else { "brooksraw" },
                letter(&pattern[0]),
                letter(&pattern[1])
            ),
            QmKind::Averaged { base, ext } => {
                let mut parts = vec![base.describe(), r.gen_name(ext.central).to_string()];
                parts.extend(ext.reps().iter().skip(1).map(|rep| rep.label.clone()));
                format!("avg({})", parts.join(";"))
            }
            QmKind::PhiLambda { phi, psi, lambda, .. } => {
                format!("lam:{}:{}:{}", lambda, phi.describe(), psi.describe())
            }
        }
    }
}

impl fmt::Display for Quasimorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

fn cyclically_reduce(letters: &[Letter]) -> &[Letter] {
    let (mut i, mut j) = (0, letters.len());
    while j - i >= 2 && letters[i] == letters[j - 1].inv() {
        i += 1;
        j -= 1;
    }
    &letters[i..j]
}

fn brooks_count(letters: &[Letter], pattern: [Letter; 2], cyclic: bool) -> i64 {
    let inverse = [pattern[1].inv(), pattern[0].inv()];
    let score = |x: Letter, y: Letter| -> i64 {
        if [x, y] == pattern {
            1
        } else if [x, y] == inverse {
            -1
        } else {
            0
        }
    };
    if cyclic {
        let w = cyclically_reduce(letters);
        let n = w.len();
        (0..n).map(|i| score(w[i], w[(i + 1) % n])).sum()
    } else {
        letters.windows(2).map(|p| score(p[0], p[1])).sum()
    }
}

/// Generator of the subgroup `pℤ + qℤ` of the rationals, for positive `p`, `q`.
fn rational_gcd(p: Rational, q: Rational) -> Rational {
    let den = p.denom().lcm(q.denom());
    let (a, b) = (p.numer() * (den / p.denom()), q.numer() * (den / q.denom()));
    Rational::new(a.gcd(&b), den)
}

/// `m(g^N) / N`, within `defect_bound / N` of the homogenization at `g`.
pub fn homogenize_numeric(m: &Quasimorphism, g: &GroupWord, n: u32) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Precondition("N must be positive".into()));
    }
    let power = m.raag().power(g, n as i64);
    Ok(m.eval(&power)? / Rational::from_integer(n as i64))
}

/// `max |m(gh) − m(g) − m(h)|` over the sample: a certified lower bound on the defect.
pub fn defect_lower_bound(m: &Quasimorphism, samples: &[(GroupWord, GroupWord)]) -> Result<Rational> {
    let r = m.raag();
    let mut best = Rational::zero();
    for (g, h) in samples {
        let d = (m.eval(&r.mul(g, h))? - m.eval(g)? - m.eval(h)?).abs();
        if d > best {
            best = d;
        }
    }
    Ok(best)
}

/// Outcome of [`check_link_vanishing`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkVanishingReport {
    pub max: Rational,
    /// `(w, x, n)` attaining the maximum, when it is nonzero.
    pub witness: Option<(u32, GroupWord, i64)>,
    pub checked: usize,
    /// Elements `x w^n x⁻¹` outside the quasimorphism's domain.
    pub skipped: usize,
}

impl LinkVanishingReport {
    pub fn vanishes(&self) -> bool {
        self.max.is_zero()
    }
}

/// Largest `|m(x w^n x⁻¹)|` over `w ∈ Lk(v)`, the given conjugators and `1 ≤ n ≤ 10`.
pub fn check_link_vanishing(m: &Quasimorphism, v: u32, conjugators: &[GroupWord]) -> Result<LinkVanishingReport> {
    let r = m.raag();
    let mut report = LinkVanishingReport {
        max: Rational::zero(),
        witness: None,
        checked: 0,
        skipped: 0,
    };
    for w in r.link(v).iter() {
        for x in conjugators {
            for n in 1..=10i64 {
                let elem = r.conjugate(x, &r.power(&r.letter(Letter::pos(w)), n));
                if !m.in_domain(&elem) {
                    report.skipped += 1;
                    continue;
                }
                report.checked += 1;
                let value = m.eval(&elem)?.abs();
                if value > report.max {
                    report.max = value;
                    report.witness = Some((w, r.nf(x), n));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raag::DefiningGraph;

    fn path3() -> Raag {
        Raag::new(DefiningGraph::path(&["a", "b", "c"]).unwrap())
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn ac_free() -> ParabolicSubset {
        ParabolicSubset::new([0, 2])
    }

    #[test]
    fn exponent_examples() {
        let r = path3();
        let m = Quasimorphism::exponent_hom(&r, 1);
        assert_eq!(m.eval(&r.parse("a b^3 c b^-1").unwrap()).unwrap(), q(2));
        assert_eq!(m.eval(&r.identity()).unwrap(), q(0));
        let g = r.element("b a").unwrap();
        assert_eq!(m.eval(&r.power(&g, 5)).unwrap(), q(5));
    }

    #[test]
    fn brooks_examples() {
        let r = path3();
        let p = r.element("a c").unwrap();
        let m = Quasimorphism::brooks_homogenized(&r, &p, ac_free()).unwrap();
        assert_eq!(m.eval(&r.element("a c a c").unwrap()).unwrap(), q(2));
        assert_eq!(m.eval(&r.element("a").unwrap()).unwrap(), q(0));
        assert_eq!(m.eval(&r.element("c^-1 a^-1").unwrap()).unwrap(), q(-1));
        assert!(matches!(m.eval(&r.element("b").unwrap()), Err(Error::Domain { .. })));
    }

    #[test]
    fn brooks_rejects_bad_patterns() {
        let r = path3();
        let ac = ac_free();
        for bad in ["a", "a c a", "a a"] {
            let w = r.element(bad).unwrap();
            assert!(matches!(
                Quasimorphism::brooks_homogenized(&r, &w, ac.clone()),
                Err(Error::Unsupported(_))
            ));
        }
        let ab = r.element("a b").unwrap();
        assert!(Quasimorphism::brooks_homogenized(&r, &ab, ParabolicSubset::new([0, 1])).is_err());
    }

    #[test]
    fn numeric_homogenization() {
        let r = path3();
        let p = r.element("a c").unwrap();
        let raw = Quasimorphism::brooks_raw(&r, &p, ac_free()).unwrap();
        let g = r.element("a a c a^-1").unwrap();
        assert_eq!(homogenize_numeric(&raw, &g, 10).unwrap(), q(1));
        assert_eq!(homogenize_numeric(&raw, &r.identity(), 3).unwrap(), q(0));
        let hom = Quasimorphism::exponent_hom(&r, 0);
        assert_eq!(homogenize_numeric(&hom, &g, 7).unwrap(), hom.eval(&g).unwrap());
    }

    #[test]
    fn defect_lower_bounds() {
        let r = path3();
        let p = r.element("a c").unwrap();
        let m = Quasimorphism::brooks_homogenized(&r, &p, ac_free()).unwrap();
        let a = r.element("a").unwrap();
        let c = r.element("c").unwrap();
        assert!(defect_lower_bound(&m, &[(a.clone(), c.clone())]).unwrap() >= q(1));
        let e = Quasimorphism::exponent_hom(&r, 1);
        assert_eq!(defect_lower_bound(&e, &[(a, c)]).unwrap(), q(0));
        assert_eq!(defect_lower_bound(&m, &[(r.identity(), r.identity())]).unwrap(), q(0));
    }

    #[test]
    fn phi_lambda_examples() {
        let r = path3();
        let phi = Quasimorphism::exponent_hom(&r, 1);
        let psi = Quasimorphism::brooks_homogenized(&r, &r.element("a c").unwrap(), ac_free()).unwrap();
        let m = Quasimorphism::phi_lambda(&phi, &psi, q(3)).unwrap();
        assert_eq!(m.eval(&r.parse("b^2 (a c)^5").unwrap()).unwrap(), q(17));
        assert_eq!(m.eval(&r.element("a^7").unwrap()).unwrap(), q(0));
        assert_eq!(m.defect_bound(), q(18));
        let zero = Quasimorphism::phi_lambda(&phi, &psi, q(0)).unwrap();
        let g = r.element("b^3 a c a b").unwrap();
        assert_eq!(zero.eval(&g).unwrap(), phi.eval(&g).unwrap());
    }

    #[test]
    fn averaging_with_sign_flip() {
        let r = path3();
        let phi = Quasimorphism::exponent_hom(&r, 1);
        let psi = Quasimorphism::brooks_homogenized(&r, &r.element("a c").unwrap(), ac_free()).unwrap();
        let m = Quasimorphism::phi_lambda(&phi, &psi, q(1)).unwrap();
        let t = RepAction {
            label: "t".into(),
            inner: r.identity(),
            images: vec![Letter::pos(2), Letter::neg(1), Letter::pos(0)],
        };
        let ext = ExtensionData::new(&r, 1, vec![t]).unwrap();
        assert_eq!(ext.index(), 2);
        assert_eq!(ext.epsilon(1), -1);
        let mg = Quasimorphism::average(&m, ext.clone()).unwrap();
        let z = r.element("b").unwrap();
        assert_eq!(mg.eval(&z).unwrap(), q(1));
        let h = r.element("b^2 a c c").unwrap();
        let th = ext.reps()[1].act(&r, &h);
        assert_eq!(mg.eval(&th).unwrap(), -mg.eval(&h).unwrap());
        let single = ExtensionData::new(&r, 1, vec![]).unwrap();
        let same = Quasimorphism::average(&m, single).unwrap();
        assert_eq!(same.eval(&h).unwrap(), m.eval(&h).unwrap());
    }

    #[test]
    fn averaging_rejects_non_automorphisms() {
        let r = path3();
        let bad = RepAction {
            label: "bad".into(),
            inner: r.identity(),
            images: vec![Letter::pos(1), Letter::pos(0), Letter::pos(2)],
        };
        assert!(ExtensionData::new(&r, 1, vec![bad]).is_err());
    }

    #[test]
    fn link_vanishing_examples() {
        let r = path3();
        let sample = r.ball_enumerate(2).unwrap();
        let phi = Quasimorphism::exponent_hom(&r, 1);
        let psi = Quasimorphism::brooks_homogenized(&r, &r.element("a c").unwrap(), ac_free()).unwrap();
        let m = Quasimorphism::phi_lambda(&phi, &psi, q(5)).unwrap();
        let rep = check_link_vanishing(&m, 1, &sample).unwrap();
        assert!(rep.vanishes());
        assert!(rep.checked > 0);
        let bad = check_link_vanishing(&Quasimorphism::exponent_hom(&r, 0), 1, &sample).unwrap();
        assert!(bad.max > q(0));
        assert_eq!(bad.witness.as_ref().unwrap().0, 0);
        let single = Raag::new(DefiningGraph::new(&["v"], &[] as &[(&str, &str)]).unwrap());
        let rep = check_link_vanishing(&Quasimorphism::exponent_hom(&single, 0), 0, &[single.identity()]).unwrap();
        assert_eq!((rep.max, rep.checked), (q(0), 0));
    }

    #[test]
    fn descriptions() {
        let r = path3();
        let phi = Quasimorphism::exponent_hom(&r, 1);
        let psi = Quasimorphism::brooks_homogenized(&r, &r.element("a c").unwrap(), ac_free()).unwrap();
        let m = Quasimorphism::phi_lambda(&phi, &psi, Rational::new(-1, 2)).unwrap();
        assert_eq!(m.describe(), "lam:-1/2:exp:b:brooks:a,c");
    }
}
