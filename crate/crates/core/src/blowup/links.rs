//! Links, simplex classes, saturations and product-region membership in a
//! blowup ball, each computed generically and (where available) in closed form.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::{BlowupBall, BlowupVertex, Simplex};
use crate::error::{Error, Result};

/// The shapes of simplices in a blowup of a triangle-free graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SimplexClass {
    /// `Δ = ∅`, link the whole ball.
    Empty,
    /// `{(v,x)}`, link `p⁻¹(Lk(v))`.
    EdgeType,
    /// `{(v,x),(w)}`, link the points of `L_w`.
    TriangleType,
    /// `{(v,x),(w,y)}`, empty link.
    Maximal,
    /// Link a single vertex or a non-trivial join.
    BoundedOther,
}

type VertexSet = BTreeSet<BlowupVertex>;

impl BlowupBall {
    fn check(&self, s: &Simplex) -> Result<()> {
        self.simplex(s.vertices().iter().copied()).map(|_| ())
    }

    /// `Lk(K)` of a vertex set: vertices outside `K` adjacent to all of `K`.
    pub fn link_of_set(&self, set: &VertexSet) -> VertexSet {
        self.vertices()
            .into_iter()
            .filter(|u| !set.contains(u) && set.iter().all(|&w| self.adjacent(*u, w)))
            .collect()
    }

    /// The link computed from the definition.
    pub fn link_generic(&self, s: &Simplex) -> Result<VertexSet> {
        self.check(s)?;
        Ok(self.link_of_set(s.vertices()))
    }

    /// Support vertices outside `support` adjacent to all of it.
    fn support_link(&self, support: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.support.len())
            .filter(|i| !support.contains(i) && support.iter().all(|&j| self.support.adjacent(*i, j)))
            .collect()
    }

    /// `p⁻¹(Lk(p(Δ))) ⋆ ⋆_v Lk_{Squid(v)}(Δ_v)` with the three possible squid links.
    pub fn link_closed_form(&self, s: &Simplex) -> Result<VertexSet> {
        self.check(s)?;
        let support = s.support();
        let mut out: VertexSet = self
            .support_link(&support)
            .into_iter()
            .flat_map(|v| self.squid(v))
            .collect();
        for v in support {
            let part = s.part(v);
            let has_apex = part.contains(&BlowupVertex::Apex(v));
            match (has_apex, part.len()) {
                (true, 1) => out.extend(self.squid(v).into_iter().filter(|u| !u.is_apex())),
                (false, _) => {
                    out.insert(BlowupVertex::Apex(v));
                }
                _ => {}
            }
        }
        Ok(out)
    }

    pub fn classify(&self, s: &Simplex) -> Result<SimplexClass> {
        self.check(s)?;
        let support: Vec<usize> = s.support().into_iter().collect();
        let is_edge = |v: usize| s.part(v).len() == 2;
        let is_apex = |v: usize| s.part(v) == BTreeSet::from([BlowupVertex::Apex(v)]);
        Ok(match support.as_slice() {
            [] => SimplexClass::Empty,
            [v] if is_edge(*v) => SimplexClass::EdgeType,
            [v, w] if is_edge(*v) && is_edge(*w) => SimplexClass::Maximal,
            [v, w] if (is_edge(*v) && is_apex(*w)) || (is_apex(*v) && is_edge(*w)) => SimplexClass::TriangleType,
            _ => SimplexClass::BoundedOther,
        })
    }

    /// The class together with the closed-form link.
    pub fn link_and_classify(&self, s: &Simplex) -> Result<(SimplexClass, VertexSet)> {
        Ok((self.classify(s)?, self.link_closed_form(s)?))
    }

    /// Groups every simplex of the ball by its link.
    pub fn link_classes(&self) -> HashMap<VertexSet, Vec<Simplex>> {
        let mut classes: HashMap<VertexSet, Vec<Simplex>> = HashMap::new();
        for s in self.simplices() {
            let link = self.link_of_set(s.vertices());
            classes.entry(link).or_default().push(s);
        }
        classes
    }

    /// `Sat(Δ)`: the vertices of all simplices with the same link as `Δ`.
    pub fn saturation(&self, s: &Simplex) -> Result<VertexSet> {
        let link = self.link_generic(s)?;
        Ok(self.saturation_from_classes(&self.link_classes(), &link))
    }

    pub fn saturation_from_classes(&self, classes: &HashMap<VertexSet, Vec<Simplex>>, link: &VertexSet) -> VertexSet {
        classes
            .get(link)
            .into_iter()
            .flatten()
            .flat_map(|s| s.vertices().iter().copied())
            .collect()
    }

    /// Closed forms: `{w} ∪ ⋃_{u ∈ Lk(w)} Squid(u)` for `{(v,x),(w)}`, and the
    /// union of the squids over support vertices sharing `v`'s link for
    /// `{(v,x)}` (just `Squid(v)` at valence at least two). `None` for other
    /// classes, and for edge-type simplices over isolated support vertices.
    pub fn saturation_closed_form(&self, s: &Simplex) -> Result<Option<VertexSet>> {
        match self.classify(s)? {
            SimplexClass::TriangleType => {
                let w = s
                    .support()
                    .into_iter()
                    .find(|&v| s.part(v).len() == 1)
                    .expect("triangle-type simplex has an apex-only part");
                let mut out = BTreeSet::from([BlowupVertex::Apex(w)]);
                for &u in self.support.neighbours(w) {
                    out.extend(self.squid(u));
                }
                Ok(Some(out))
            }
            SimplexClass::EdgeType => {
                let v = *s.support().iter().next().expect("edge-type simplex has support");
                let link = self.support.link(v);
                if link.is_empty() {
                    return Ok(None);
                }
                Ok(Some(
                    (0..self.support.len())
                        .filter(|&u| self.support.link(u) == link)
                        .flat_map(|u| self.squid(u))
                        .collect(),
                ))
            }
            _ => Ok(None),
        }
    }

    /// Whether `sigma` (maximal) factors as `Π₁ ⋆ Π₂ ⋆ Π₃` with `Π₁` maximal in
    /// `Lk(Δ)`, `Π₂` maximal in `Lk(Lk(Δ))` and `Π₃` maximal in `Lk(Π₁ ⋆ Π₂)`.
    pub fn in_product_region(&self, delta: &Simplex, sigma: &Simplex) -> Result<bool> {
        self.check(delta)?;
        if !self.link_generic(sigma)?.is_empty() {
            return Err(Error::Precondition("product-region membership needs a maximal simplex".into()));
        }
        let lk = self.link_of_set(delta.vertices());
        let lk2 = self.link_of_set(&lk);
        let pi1: VertexSet = sigma.vertices().intersection(&lk).copied().collect();
        let pi2: VertexSet = sigma.vertices().intersection(&lk2).copied().collect();
        let pi12: VertexSet = pi1.union(&pi2).copied().collect();
        let pi3: VertexSet = sigma.vertices().difference(&pi12).copied().collect();
        let lk12 = self.link_of_set(&pi12);
        Ok(self.maximal_in(&pi1, &lk) && self.maximal_in(&pi2, &lk2) && self.maximal_in(&pi3, &lk12))
    }

    /// `face ⊆ within` is a simplex not extendable by any other vertex of `within`.
    fn maximal_in(&self, face: &VertexSet, within: &VertexSet) -> bool {
        face.is_subset(within)
            && !within
                .iter()
                .any(|u| !face.contains(u) && face.iter().all(|&w| self.adjacent(*u, w)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::ChartAtlas;
    use crate::qm::Rational;
    use crate::raag::{DefiningGraph, Raag};

    fn ball() -> BlowupBall {
        let r = Raag::new(DefiningGraph::path(&["a", "b", "c"]).unwrap());
        let support = r.extension_ball(&r.standard_vertex(1), 1).unwrap();
        BlowupBall::new(support, ChartAtlas::exponent(&r, None).unwrap(), Rational::from_integer(1)).unwrap()
    }

    fn index(b: &BlowupBall, name: &str) -> usize {
        let r = b.raag();
        b.support().index_of(&r.parse_vertex(name).unwrap()).unwrap()
    }

    #[test]
    fn worked_link_examples() {
        let b = ball();
        let (a, bb) = (index(&b, "a"), index(&b, "b"));
        let tri = b
            .simplex([BlowupVertex::Apex(a), BlowupVertex::Point(a, 0), BlowupVertex::Apex(bb)])
            .unwrap();
        let (class, link) = b.link_and_classify(&tri).unwrap();
        assert_eq!(class, SimplexClass::TriangleType);
        assert_eq!(link, b.squid(bb).into_iter().filter(|u| !u.is_apex()).collect());
        let edge = b.simplex([BlowupVertex::Apex(a), BlowupVertex::Point(a, 1)]).unwrap();
        let (class, link) = b.link_and_classify(&edge).unwrap();
        assert_eq!(class, SimplexClass::EdgeType);
        assert_eq!(link, b.squid(bb));
        let (class, link) = b.link_and_classify(&Simplex::empty()).unwrap();
        assert_eq!(class, SimplexClass::Empty);
        assert_eq!(link.len(), b.len());
        let bad = Simplex([BlowupVertex::Point(a, 0), BlowupVertex::Point(a, 1)].into());
        assert!(matches!(b.link_and_classify(&bad), Err(Error::NotASimplex)));
    }

    #[test]
    fn saturation_examples() {
        let b = ball();
        let (a, bb, c) = (index(&b, "a"), index(&b, "b"), index(&b, "c"));
        let t1 = b.simplex([BlowupVertex::Apex(a), BlowupVertex::Point(a, 0), BlowupVertex::Apex(bb)]).unwrap();
        let t2 = b.simplex([BlowupVertex::Apex(c), BlowupVertex::Point(c, 2), BlowupVertex::Apex(bb)]).unwrap();
        let s1 = b.saturation(&t1).unwrap();
        assert_eq!(s1, b.saturation(&t2).unwrap());
        assert_eq!(Some(s1), b.saturation_closed_form(&t1).unwrap());
        // b has valence six in the ball.
        let e = b.simplex([BlowupVertex::Apex(bb), BlowupVertex::Point(bb, 1)]).unwrap();
        assert_eq!(b.saturation(&e).unwrap(), b.squid(bb));
        assert_eq!(b.saturation_closed_form(&e).unwrap(), Some(b.squid(bb)));
    }

    #[test]
    fn product_region_membership() {
        let r = Raag::new(DefiningGraph::path(&["a", "b", "c", "d"]).unwrap());
        let support = r.extension_ball(&r.standard_vertex(1), 1).unwrap();
        let b = BlowupBall::new(support, ChartAtlas::exponent(&r, None).unwrap(), Rational::from_integer(1)).unwrap();
        let (a, bb, c, d) = (index(&b, "a"), index(&b, "b"), index(&b, "c"), index(&b, "d"));
        let max = |v: usize, w: usize| {
            b.simplex([
                BlowupVertex::Apex(v),
                BlowupVertex::Point(v, 0),
                BlowupVertex::Apex(w),
                BlowupVertex::Point(w, 2),
            ])
            .unwrap()
        };
        let tri = b.simplex([BlowupVertex::Apex(a), BlowupVertex::Point(a, 0), BlowupVertex::Apex(bb)]).unwrap();
        // The domain of `tri` only sees its L_b-point; the a-part is orthogonal.
        assert!(b.in_product_region(&tri, &max(a, bb)).unwrap());
        assert!(b.in_product_region(&tri, &max(c, bb)).unwrap());
        assert!(!b.in_product_region(&tri, &max(c, d)).unwrap());
        assert!(b.in_product_region(&Simplex::empty(), &max(c, d)).unwrap());
        assert!(b.in_product_region(&tri, &tri).is_err());
    }
}
