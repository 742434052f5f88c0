//! Textual quasimorphism descriptions.
//!
//! ```text
//! qm   := "zero"
//!       | "exp:" name
//!       | ("brooks:" | "brooksraw:") letter ["," | " "] letter
//!       | "avg(" qm ";" name (";" rep)* ")"
//!       | "lam:" rational ":" qm ":" qm
//! rep  := word ["@" letter ("," letter)*]
//! ```
//!
//! A `rep` names a coset representative by its conjugation action
//! `h ↦ word · σ(h) · word⁻¹`, where `σ` sends the i-th generator to the i-th
//! listed letter (identity when omitted). The identity representative is
//! implicit in `avg`. In `lam:λ:exp:v:ψ` a Brooks `ψ` is taken on the free
//! parabolic `G_{Lk(v)}`.

use std::collections::BTreeSet;

use super::{ExtensionData, QmKind, Quasimorphism, Rational, RepAction};
use crate::error::{Error, Result};
use crate::raag::{Letter, ParabolicSubset, Raag};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn eat(&mut self, prefix: &str) -> bool {
        if self.rest().starts_with(prefix) {
            self.pos += prefix.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, prefix: &str) -> Result<()> {
        if self.eat(prefix) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{prefix}`")))
        }
    }

    /// Consumes up to (not including) the first char in `stops`.
    fn until(&mut self, stops: &[char]) -> &'a str {
        let rest = self.rest();
        let end = rest.find(|c| stops.contains(&c)).unwrap_or(rest.len());
        self.pos += end;
        &rest[..end]
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.text))
    }
}

const STOPS: &[char] = &[':', ';', ')'];

fn parse_letter(raag: &Raag, token: &str) -> Result<Letter> {
    let token = token.trim();
    let letters = raag.parse(token)?;
    match letters.letters() {
        [l] => Ok(*l),
        _ => Err(Error::Parse(format!("expected a single letter, got `{token}`"))),
    }
}

fn parse_pattern(raag: &Raag, text: &str) -> Result<Vec<Letter>> {
    let text = text.trim();
    let tokens: Vec<&str> = text.split([',', ' ']).filter(|t| !t.is_empty()).collect();
    if tokens.len() >= 2 {
        return tokens.iter().map(|t| parse_letter(raag, t)).collect();
    }
    // Concatenated single-character generator names, e.g. `ac`.
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let mut token = chars[i].to_string();
        i += 1;
        if chars[i..].starts_with(&['^', '-', '1']) {
            token.push_str("^-1");
            i += 3;
        }
        out.push(parse_letter(raag, &token)?);
    }
    Ok(out)
}

fn parse_rep(raag: &Raag, text: &str) -> Result<RepAction> {
    let (word, images) = match text.split_once('@') {
        Some((w, imgs)) => (w, Some(imgs)),
        None => (text, None),
    };
    let inner = raag.element(word)?;
    let images = match images {
        None => (0..raag.rank() as u32).map(Letter::pos).collect(),
        Some(list) => list
            .split(',')
            .map(|t| parse_letter(raag, t))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(RepAction {
        label: text.trim().to_string(),
        inner,
        images,
    })
}

fn parse_qm(raag: &Raag, cur: &mut Cursor<'_>) -> Result<Quasimorphism> {
    if cur.eat("zero") {
        return Ok(Quasimorphism::zero(raag));
    }
    if cur.eat("exp:") {
        let name = cur.until(STOPS);
        return Ok(Quasimorphism::exponent_hom(raag, raag.gen(name.trim())?));
    }
    for (prefix, homogenized) in [("brooksraw:", false), ("brooks:", true)] {
        if cur.eat(prefix) {
            let pattern = parse_pattern(raag, cur.until(STOPS))?;
            let word = raag.word(&pattern);
            if word.len() != pattern.len() {
                return Err(Error::Unsupported("Brooks pattern must be reduced".into()));
            }
            let ambient: ParabolicSubset = pattern.iter().map(|l| l.gen).collect::<BTreeSet<_>>().into();
            return if homogenized {
                Quasimorphism::brooks_homogenized(raag, &word, ambient)
            } else {
                Quasimorphism::brooks_raw(raag, &word, ambient)
            };
        }
    }
    if cur.eat("avg(") {
        let base = parse_qm(raag, cur)?;
        cur.expect(";")?;
        let central = raag.gen(cur.until(STOPS).trim())?;
        let mut reps = Vec::new();
        while cur.eat(";") {
            reps.push(parse_rep(raag, cur.until(STOPS))?);
        }
        cur.expect(")")?;
        let ext = ExtensionData::new(raag, central, reps)?;
        return Quasimorphism::average(&base, ext);
    }
    if cur.eat("lam:") {
        let text = cur.until(&[':']);
        let lambda: Rational = text
            .trim()
            .parse()
            .map_err(|_| cur.err(&format!("invalid rational `{text}`")))?;
        cur.expect(":")?;
        let phi = parse_qm(raag, cur)?;
        cur.expect(":")?;
        let mut psi = parse_qm(raag, cur)?;
        let QmKind::ExponentSum { gen: vertex } = *phi.kind() else {
            return Err(Error::Unsupported("`lam` needs `exp:<v>` as its first quasimorphism".into()));
        };
        if let QmKind::Brooks { pattern, homogenized } = *psi.kind() {
            let word = raag.word(&pattern);
            let mut ambient = raag.link(vertex);
            ambient.0.extend(pattern.iter().map(|l| l.gen));
            psi = if homogenized {
                Quasimorphism::brooks_homogenized(raag, &word, ambient)?
            } else {
                Quasimorphism::brooks_raw(raag, &word, ambient)?
            };
        }
        return Quasimorphism::phi_lambda_at(&phi, &psi, lambda, vertex);
    }
    Err(cur.err("unknown quasimorphism"))
}

/// Parses a quasimorphism description such as `lam:3:exp:b:brooks:ac`.
pub fn parse_quasimorphism(raag: &Raag, text: &str) -> Result<Quasimorphism> {
    let mut cur = Cursor {
        text: text.trim(),
        pos: 0,
    };
    let qm = parse_qm(raag, &mut cur)?;
    if !cur.rest().is_empty() {
        return Err(cur.err("trailing input"));
    }
    Ok(qm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raag::DefiningGraph;

    fn path3() -> Raag {
        Raag::new(DefiningGraph::path(&["a", "b", "c"]).unwrap())
    }

    #[test]
    fn parses_every_form() {
        let r = path3();
        let q = |s: &str| parse_quasimorphism(&r, s).unwrap();
        let g = r.element("b^2 (a c)^5").unwrap();
        assert_eq!(q("exp:b").eval(&g).unwrap(), Rational::from_integer(2));
        assert_eq!(q("lam:3:exp:b:brooks:ac").eval(&g).unwrap(), Rational::from_integer(17));
        assert_eq!(q("lam:3:exp:b:brooks:a,c").describe(), "lam:3:exp:b:brooks:a,c");
        assert_eq!(q("brooks:c^-1a^-1").describe(), "brooks:c^-1,a^-1");
        assert_eq!(q("zero").eval(&g).unwrap(), Rational::from_integer(0));
        let avg = q("avg(lam:1:exp:b:brooks:ac;b;1@c,b^-1,a)");
        assert_eq!(avg.eval(&r.element("b").unwrap()).unwrap(), Rational::from_integer(1));
        assert_eq!(avg.describe(), "avg(lam:1:exp:b:brooks:a,c;b;1@c,b^-1,a)");
        let half = q("lam:-1/2:exp:b:brooksraw:ac");
        assert_eq!(half.eval(&g).unwrap(), Rational::new(-1, 2) * Rational::from_integer(5) + Rational::from_integer(2));
    }

    #[test]
    fn rejects_malformed() {
        let r = path3();
        for bad in ["exp:z", "brooks:a", "lam:x:exp:b:brooks:ac", "lam:1:brooks:ac:exp:b", "avg(exp:b;b", "exp:b trailing", "nonsense"] {
            assert!(parse_quasimorphism(&r, bad).is_err(), "{bad}");
        }
    }
}
