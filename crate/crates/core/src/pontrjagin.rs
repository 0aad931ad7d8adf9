//! Model cohomology rings of test spaces, Whitney sums of bundle data, and
//! pairing-matrix certificates for Pontrjagin monomials.

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{rat, AlgebraError, DegreeCap, Element, GenId, Generator, GeneratorSet, Monomial, Rational};
use crate::linalg::rational_rank;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PontrjaginError {
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("ring has no fundamental class")]
    NoFundamentalClass,
    #[error("{what} must have degree {expected}")]
    DegreeMismatch { what: String, expected: u32 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// An indecomposable test space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Space {
    /// `Q[a]/a^3`, `deg a = 2`.
    CP2,
    /// `Q[s]/s^2`, `deg s = n`.
    Sphere(u32),
    /// `H*(BSO(q))` truncated above degree `q + 2`.
    X(u32),
}

impl Space {
    /// Degree of the fundamental class, when the space is a closed manifold.
    pub fn dimension(&self) -> Option<u32> {
        match *self {
            Space::CP2 => Some(4),
            Space::Sphere(n) => Some(n),
            Space::X(_) => None,
        }
    }

    fn validate(&self) -> Result<(), PontrjaginError> {
        match *self {
            Space::Sphere(n) if n == 0 || n % 2 == 1 => {
                Err(PontrjaginError::InvalidSpace(format!("S^{n} has no even-degree generator")))
            }
            Space::X(q) if q < 2 => Err(PontrjaginError::InvalidSpace(format!("X({q})"))),
            _ => Ok(()),
        }
    }

    /// Indices `i` of the Pontrjagin generators `p_i` of `X(q)`.
    fn x_pontrjagin_indices(q: u32) -> Vec<u32> {
        (1..)
            .take_while(|i| 4 * i <= q + 2)
            .filter(|i| q % 2 == 1 || 2 * i < q)
            .collect()
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::CP2 => write!(f, "CP2"),
            Space::Sphere(n) => write!(f, "S{n}"),
            Space::X(q) => write!(f, "X({q})"),
        }
    }
}

/// Rational cohomology ring of a product of test spaces. All generators have
/// even degree, so the ring is commutative.
#[derive(Debug, Clone)]
pub struct ModelRing {
    factors: Vec<Space>,
    ranges: Vec<Range<usize>>,
    gens: Arc<GeneratorSet>,
}

impl ModelRing {
    /// Generators are named `a`, `s`, `p1`, `e` for a single factor and get
    /// the factor position appended otherwise (`a1`, `a2`, `s3`, `p1_4`).
    pub fn product(factors: Vec<Space>) -> Result<Self, PontrjaginError> {
        let single = factors.len() == 1;
        let mut poly = Vec::new();
        let mut caps = Vec::new();
        let mut ranges = Vec::new();
        for (pos, space) in factors.iter().enumerate() {
            space.validate()?;
            let tag = pos + 1;
            let name = |base: &str, sep: bool| match (single, sep) {
                (true, _) => base.to_string(),
                (false, false) => format!("{base}{tag}"),
                (false, true) => format!("{base}_{tag}"),
            };
            let start = poly.len();
            let cap = match *space {
                Space::CP2 => {
                    poly.push(Generator { name: name("a", false), degree: 2 });
                    4
                }
                Space::Sphere(n) => {
                    poly.push(Generator { name: name("s", false), degree: n });
                    n
                }
                Space::X(q) => {
                    for i in Space::x_pontrjagin_indices(q) {
                        poly.push(Generator { name: name(&format!("p{i}"), true), degree: 4 * i });
                    }
                    if q % 2 == 0 {
                        poly.push(Generator { name: name("e", true), degree: q });
                    }
                    q + 2
                }
            };
            caps.push(DegreeCap { gens: (start..poly.len()).collect(), max_degree: cap });
            ranges.push(start..poly.len());
        }
        let gens = Arc::new(GeneratorSet::with_caps(Vec::new(), poly, 0, caps)?);
        Ok(ModelRing { factors, ranges, gens })
    }

    pub fn single(space: Space) -> Result<Self, PontrjaginError> {
        Self::product(vec![space])
    }

    pub fn power(space: Space, n: usize) -> Result<Self, PontrjaginError> {
        Self::product(vec![space; n])
    }

    pub fn factors(&self) -> &[Space] {
        &self.factors
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    /// Generators belonging to factor `pos`.
    pub fn factor_generators(&self, pos: usize) -> Vec<Element> {
        self.ranges[pos]
            .clone()
            .map(|g| Element::generator(&self.gens, GenId::Poly(g)))
            .collect()
    }

    pub fn dimension(&self) -> Option<u32> {
        self.factors.iter().map(Space::dimension).sum()
    }

    /// The monomial dual to the fundamental class: `a^2` per CP2 factor and
    /// `s` per sphere.
    pub fn fundamental_monomial(&self) -> Option<Monomial> {
        let mut exps = vec![0u32; self.gens.poly().len()];
        for (space, range) in self.factors.iter().zip(&self.ranges) {
            match space {
                Space::CP2 => exps[range.start] = 2,
                Space::Sphere(_) => exps[range.start] = 1,
                Space::X(_) => return None,
            }
        }
        Monomial::from_parts(&[], exps)
    }

    /// Pairing with the fundamental class.
    pub fn evaluate(&self, x: &Element) -> Result<Rational, PontrjaginError> {
        let top = self.fundamental_monomial().ok_or(PontrjaginError::NoFundamentalClass)?;
        if !x.is_zero() && !x.same_algebra(&Element::zero(&self.gens)) {
            return Err(AlgebraError::GeneratorSetMismatch.into());
        }
        Ok(x.coefficient(&top))
    }

    pub fn label(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut k = 0;
        while k < self.factors.len() {
            let s = self.factors[k];
            let run = self.factors[k..].iter().take_while(|&&t| t == s).count();
            parts.push(if run == 1 { s.to_string() } else { format!("{s}^{run}") });
            k += run;
        }
        if parts.is_empty() {
            "pt".into()
        } else {
            parts.join(" x ")
        }
    }
}

/// Pontrjagin classes `p_1, p_2, ...` (and optionally the Euler class) of a
/// bundle over a model ring. Missing indices are zero.
#[derive(Debug, Clone)]
pub struct BundleMap {
    gens: Arc<GeneratorSet>,
    pontrjagin: Vec<Element>,
    euler: Option<(u32, Element)>,
}

impl BundleMap {
    /// `pontrjagin[i - 1]` is `p_i`; `euler` is `(rank, e)`.
    pub fn new(
        ring: &ModelRing,
        pontrjagin: Vec<Element>,
        euler: Option<(u32, Element)>,
    ) -> Result<Self, PontrjaginError> {
        for (k, p) in pontrjagin.iter().enumerate() {
            let i = k as u32 + 1;
            if p.degrees().iter().any(|&d| d != 4 * i) {
                return Err(PontrjaginError::DegreeMismatch { what: format!("p{i}"), expected: 4 * i });
            }
        }
        if let Some((rank, e)) = &euler {
            if e.degrees().iter().any(|d| d != rank) {
                return Err(PontrjaginError::DegreeMismatch { what: "e".into(), expected: *rank });
            }
        }
        let gens = Arc::clone(ring.gens());
        let mut bundle = BundleMap { gens, pontrjagin, euler };
        bundle.trim();
        Ok(bundle)
    }

    /// The trivial bundle: every class zero.
    pub fn zero(ring: &ModelRing) -> Self {
        BundleMap { gens: Arc::clone(ring.gens()), pontrjagin: Vec::new(), euler: None }
    }

    fn trim(&mut self) {
        while self.pontrjagin.last().is_some_and(Element::is_zero) {
            self.pontrjagin.pop();
        }
    }

    /// `p_i`, with `p_0 = 1`.
    pub fn p(&self, i: u32) -> Element {
        match i {
            0 => Element::one(&self.gens),
            _ => self
                .pontrjagin
                .get(i as usize - 1)
                .cloned()
                .unwrap_or_else(|| Element::zero(&self.gens)),
        }
    }

    pub fn max_index(&self) -> u32 {
        self.pontrjagin.len() as u32
    }

    pub fn euler(&self) -> Option<&Element> {
        self.euler.as_ref().map(|(_, e)| e)
    }

    /// Whitney sum: `p(ξ ⊕ η) = p(ξ) p(η)`, `e(ξ ⊕ η) = e(ξ) e(η)`.
    pub fn direct_sum(&self, other: &BundleMap) -> BundleMap {
        let top = self.max_index() + other.max_index();
        let pontrjagin = (1..=top)
            .map(|k| {
                (0..=k).fold(Element::zero(&self.gens), |acc, i| &acc + &(&self.p(i) * &other.p(k - i)))
            })
            .collect();
        let euler = match (&self.euler, &other.euler) {
            (Some((r, a)), Some((s, b))) => Some((r + s, a * b)),
            _ => None,
        };
        let mut out = BundleMap { gens: Arc::clone(&self.gens), pontrjagin, euler };
        out.trim();
        out
    }

    /// Sum of `bundles`; the empty sum is the zero bundle over `ring`.
    pub fn sum_all(ring: &ModelRing, bundles: &[BundleMap]) -> BundleMap {
        bundles
            .iter()
            .fold(BundleMap { euler: Some((0, Element::one(ring.gens()))), ..BundleMap::zero(ring) }, |acc, b| acc.direct_sum(b))
    }
}

/// Canonical bundle data of one factor: the tautological plane bundle on CP2
/// (`p1 = a^2`, `e = a`), the bundle on `S^{4i}` with `p_i = s` (the sphere
/// normalization `c_i = 1`), and the universal bundle on `X(q)`.
pub fn factor_bundle(ring: &ModelRing, pos: usize) -> BundleMap {
    let gens = ring.factor_generators(pos);
    let zero = Element::zero(ring.gens());
    match ring.factors()[pos] {
        Space::CP2 => BundleMap {
            gens: Arc::clone(ring.gens()),
            pontrjagin: vec![gens[0].pow(2)],
            euler: Some((2, gens[0].clone())),
        },
        Space::Sphere(n) => {
            let mut pontrjagin = Vec::new();
            if n % 4 == 0 {
                pontrjagin = vec![zero.clone(); n as usize / 4];
                pontrjagin[n as usize / 4 - 1] = gens[0].clone();
            }
            let mut b = BundleMap { gens: Arc::clone(ring.gens()), pontrjagin, euler: None };
            b.trim();
            b
        }
        Space::X(q) => {
            let indices = Space::x_pontrjagin_indices(q);
            let euler = (q % 2 == 0).then(|| gens[indices.len()].clone());
            let mut pontrjagin: Vec<Element> = gens[..indices.len()].to_vec();
            if let Some(e) = &euler {
                if 2 * (indices.len() as u32 + 1) == q {
                    pontrjagin.push(e.pow(2));
                }
            }
            let mut b = BundleMap {
                gens: Arc::clone(ring.gens()),
                pontrjagin,
                euler: euler.map(|e| (q, e)),
            };
            b.trim();
            b
        }
    }
}

/// Whitney sum of the canonical bundles of all factors.
pub fn canonical_bundle(ring: &ModelRing) -> BundleMap {
    let parts: Vec<BundleMap> = (0..ring.factors().len()).map(|f| factor_bundle(ring, f)).collect();
    BundleMap::sum_all(ring, &parts)
}

/// `p_1^{n_1} ... p_k^{n_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PontrjaginMonomial {
    n: Vec<u32>,
}

impl PontrjaginMonomial {
    pub fn new(mut n: Vec<u32>) -> Result<Self, PontrjaginError> {
        while n.last() == Some(&0) {
            n.pop();
        }
        if n.is_empty() {
            return Err(PontrjaginError::InvalidArgument("empty Pontrjagin monomial".into()));
        }
        Ok(PontrjaginMonomial { n })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.n
    }

    /// `q(n) = Σ (4i − 2) n_i`.
    pub fn weight(&self) -> u32 {
        self.n.iter().zip(1u32..).map(|(&e, i)| (4 * i - 2) * e).sum()
    }

    pub fn size(&self) -> u32 {
        self.n.iter().sum()
    }

    pub fn degree(&self) -> u32 {
        self.n.iter().zip(1u32..).map(|(&e, i)| 4 * i * e).sum()
    }

    pub fn product(&self, other: &Self) -> Self {
        let len = self.n.len().max(other.n.len());
        let n = (0..len)
            .map(|k| self.n.get(k).unwrap_or(&0) + other.n.get(k).unwrap_or(&0))
            .collect();
        PontrjaginMonomial { n }
    }

    /// The test space `(CP2)^{n_1} × Π_{i≥2} (S^{4i})^{n_i}`.
    pub fn test_cycle(&self) -> Vec<Space> {
        let mut spaces = Vec::new();
        for (&e, i) in self.n.iter().zip(1u32..) {
            let s = if i == 1 { Space::CP2 } else { Space::Sphere(4 * i) };
            spaces.extend(std::iter::repeat(s).take(e as usize));
        }
        spaces
    }
}

impl fmt::Display for PontrjaginMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&e, i) in self.n.iter().zip(1u32..) {
            match e {
                0 => {}
                1 => write!(f, "p{i}")?,
                _ => write!(f, "p{i}^{e}")?,
            }
        }
        Ok(())
    }
}

/// All `p(n)` with `q(n) ≤ q`, ordered by degree and, within a degree, by
/// exponent vectors compared from the highest index down.
pub fn enumerate_v(q: u32) -> Vec<PontrjaginMonomial> {
    fn rec(i: u32, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let w = 4 * i - 2;
        if w > budget {
            out.push(cur.clone());
            return;
        }
        for e in 0..=budget / w {
            cur.push(e);
            rec(i + 1, budget - e * w, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(1, q, &mut Vec::new(), &mut raw);
    let mut out: Vec<PontrjaginMonomial> = raw
        .into_iter()
        .filter_map(|n| PontrjaginMonomial::new(n).ok())
        .collect();
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.n.len().cmp(&b.n.len()))
            .then_with(|| a.n.iter().rev().cmp(b.n.iter().rev()))
    });
    for m in &out {
        assert!(m.weight() + 2 * m.size() <= 2 * q, "{m} exceeds the Bott range");
    }
    out
}

/// `p(n)` of the Whitney sum of `factors`.
pub fn whitney_pullback(mono: &PontrjaginMonomial, ring: &ModelRing, factors: &[BundleMap]) -> Element {
    let total = BundleMap::sum_all(ring, factors);
    pontrjagin_monomial(mono, &total)
}

/// `p(n)` of a single bundle.
pub fn pontrjagin_monomial(mono: &PontrjaginMonomial, bundle: &BundleMap) -> Element {
    mono.n
        .iter()
        .zip(1u32..)
        .fold(Element::one(&bundle.gens), |acc, (&e, i)| &acc * &bundle.p(i).pow(e))
}

/// One fixed-degree block of a pairing matrix.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeBlock {
    pub degree: u32,
    pub classes: Vec<String>,
    pub cycles: Vec<String>,
    /// `matrix[class][cycle]`.
    #[serde(serialize_with = "crate::serialize_rational_matrix")]
    pub matrix: Vec<Vec<Rational>>,
    pub rank: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IndependenceReport {
    pub q: u32,
    pub blocks: Vec<DegreeBlock>,
    pub pass: bool,
    pub normalization: String,
}

pub const SPHERE_NORMALIZATION: &str = "sphere pull-back p_i = 1 * s on S^{4i}; CP2 generator with <a^2, [CP2]> = 1";

/// Pairs every `p(m) ∈ V(q)` with the test cycle of every `p(n)` of the same
/// degree and checks each block has full rank.
pub fn independence_certificate(q: u32) -> Result<IndependenceReport, PontrjaginError> {
    if q < 2 {
        return Err(PontrjaginError::InvalidArgument(format!("q must be at least 2, got {q}")));
    }
    let v = enumerate_v(q);
    let mut degrees: Vec<u32> = v.iter().map(PontrjaginMonomial::degree).collect();
    degrees.dedup();
    let blocks: Vec<DegreeBlock> = degrees
        .par_iter()
        .map(|&d| {
            let members: Vec<&PontrjaginMonomial> = v.iter().filter(|m| m.degree() == d).collect();
            let columns: Vec<Vec<Rational>> = members
                .iter()
                .map(|cycle| {
                    let ring = ModelRing::product(cycle.test_cycle()).expect("test cycles are valid");
                    let bundle = canonical_bundle(&ring);
                    members
                        .iter()
                        .map(|class| {
                            ring.evaluate(&pontrjagin_monomial(class, &bundle))
                                .expect("test cycles are closed manifolds")
                        })
                        .collect()
                })
                .collect();
            let matrix: Vec<Vec<Rational>> = (0..members.len())
                .map(|r| columns.iter().map(|c| c[r].clone()).collect())
                .collect();
            let rank = rational_rank(&matrix);
            DegreeBlock {
                degree: d,
                classes: members.iter().map(|m| m.to_string()).collect(),
                cycles: members
                    .iter()
                    .map(|m| ModelRing::product(m.test_cycle()).expect("valid").label())
                    .collect(),
                pass: rank == members.len(),
                rank,
                matrix,
            }
        })
        .collect();
    Ok(IndependenceReport {
        q,
        pass: blocks.iter().all(|b| b.pass),
        blocks,
        normalization: SPHERE_NORMALIZATION.into(),
    })
}

/// For `Ξ_k` the sum of the canonical bundles over `(CP2)^k`, returns `r` with
/// `p_ℓ(Ξ_k) = r · p_1(Ξ_k)^ℓ` and whether that proportionality holds.
pub fn verify_symmetric_multiple(k: usize, l: u32) -> Result<(Rational, bool), PontrjaginError> {
    if l == 0 || l as usize > k {
        return Err(PontrjaginError::InvalidArgument(format!("need 1 <= l <= k, got k = {k}, l = {l}")));
    }
    let ring = ModelRing::power(Space::CP2, k)?;
    let xi = canonical_bundle(&ring);
    let pl = xi.p(l);
    let p1l = xi.p(1).pow(l);
    let Some((m, c)) = p1l.terms().iter().next() else {
        return Ok((Rational::zero(), pl.is_zero()));
    };
    let ratio = pl.coefficient(m) / c;
    let holds = pl == p1l.scale(&ratio);
    Ok((ratio, holds))
}

/// `1 / n!`.
pub fn inverse_factorial(n: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, i| acc / rat(i as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    fn pm(n: &[u32]) -> PontrjaginMonomial {
        PontrjaginMonomial::new(n.to_vec()).unwrap()
    }

    #[test]
    fn enumerate_small() {
        let show = |q| enumerate_v(q).iter().map(|m| (m.to_string(), m.degree())).collect::<Vec<_>>();
        assert_eq!(show(2), vec![("p1".into(), 4)]);
        assert_eq!(show(4), vec![("p1".into(), 4), ("p1^2".into(), 8)]);
        assert_eq!(
            show(6),
            vec![("p1".into(), 4), ("p1^2".into(), 8), ("p2".into(), 8), ("p1^3".into(), 12)]
        );
    }

    #[test]
    fn whitney_examples() {
        let r = ModelRing::power(Space::CP2, 2).unwrap();
        let parts = [factor_bundle(&r, 0), factor_bundle(&r, 1)];
        let p1 = whitney_pullback(&pm(&[1]), &r, &parts);
        assert_eq!(p1, Element::parse(r.gens(), "a1^2 + a2^2").unwrap());
        let p2 = whitney_pullback(&pm(&[0, 1]), &r, &parts);
        assert_eq!(p2, Element::parse(r.gens(), "a1^2*a2^2").unwrap());
        assert_eq!(r.evaluate(&p2).unwrap(), rat(1));
        assert_eq!(r.evaluate(&p1.pow(2)).unwrap(), rat(2));

        let s8 = ModelRing::single(Space::Sphere(8)).unwrap();
        let b = canonical_bundle(&s8);
        assert!(pontrjagin_monomial(&pm(&[1]), &b).is_zero());
        assert_eq!(s8.evaluate(&pontrjagin_monomial(&pm(&[0, 1]), &b)).unwrap(), rat(1));

        let cp2 = ModelRing::single(Space::CP2).unwrap();
        assert_eq!(cp2.evaluate(&Element::parse(cp2.gens(), "a^2").unwrap()).unwrap(), rat(1));
    }

    #[test]
    fn euler_of_sum() {
        let r = ModelRing::power(Space::CP2, 3).unwrap();
        let xi = canonical_bundle(&r);
        assert_eq!(xi.euler().unwrap(), &Element::parse(r.gens(), "a1*a2*a3").unwrap());
    }

    #[test]
    fn certificate_q6() {
        let rep = independence_certificate(6).unwrap();
        assert!(rep.pass);
        let b8 = rep.blocks.iter().find(|b| b.degree == 8).unwrap();
        assert_eq!(b8.classes, vec!["p1^2", "p2"]);
        assert_eq!(b8.cycles, vec!["CP2^2", "S8"]);
        assert_eq!(b8.matrix, vec![vec![rat(2), rat(0)], vec![rat(1), rat(1)]]);
        assert_eq!(b8.rank, 2);
    }

    #[test]
    fn certificate_small_q() {
        let r2 = independence_certificate(2).unwrap();
        assert_eq!(r2.blocks.len(), 1);
        assert_eq!(r2.blocks[0].matrix, vec![vec![rat(1)]]);
        let r4 = independence_certificate(4).unwrap();
        assert!(r4.blocks.iter().all(|b| b.matrix.len() == 1 && !b.matrix[0][0].is_zero()));
        for q in 2..=10 {
            assert!(independence_certificate(q).unwrap().pass, "q = {q}");
        }
        assert!(independence_certificate(1).is_err());
    }

    #[test]
    fn symmetric_multiples() {
        assert_eq!(verify_symmetric_multiple(2, 2).unwrap(), (ratio(1, 2), true));
        assert_eq!(verify_symmetric_multiple(3, 3).unwrap(), (ratio(1, 6), true));
        for k in 1..=4 {
            assert_eq!(verify_symmetric_multiple(k, 1).unwrap(), (rat(1), true));
        }
        assert!(verify_symmetric_multiple(2, 3).is_err());
    }

    #[test]
    fn whitney_naturality() {
        let v = enumerate_v(8);
        let r = ModelRing::product(vec![Space::CP2, Space::CP2, Space::Sphere(8), Space::X(6)]).unwrap();
        let b = canonical_bundle(&r);
        for a in &v {
            for c in &v {
                assert_eq!(
                    pontrjagin_monomial(&a.product(c), &b),
                    &pontrjagin_monomial(a, &b) * &pontrjagin_monomial(c, &b)
                );
            }
        }
    }

    #[test]
    fn x_rings_truncate() {
        for q in 2..=9 {
            let r = ModelRing::single(Space::X(q)).unwrap();
            let top = r.gens().top_degree().unwrap();
            assert!(top <= q + 2, "q = {q}");
            for n in q + 3..=2 * q + 6 {
                assert!(r.gens().basis_of_degree(n).is_empty());
            }
            assert!(r.evaluate(&Element::one(r.gens())).is_err());
        }
        // X(2) is CP2 with p1 = e^2
        let x2 = ModelRing::single(Space::X(2)).unwrap();
        assert_eq!(x2.gens().poly().len(), 1);
        let b = canonical_bundle(&x2);
        assert_eq!(b.p(1), Element::parse(x2.gens(), "e^2").unwrap());
        // X(6): p1, p2, e6, with p1*e6 of degree 10 > 8 vanishing
        let x6 = ModelRing::single(Space::X(6)).unwrap();
        let names: Vec<&str> = x6.gens().poly().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, vec!["p1", "p2", "e"]);
        assert!((&Element::named(x6.gens(), "p1") * &Element::named(x6.gens(), "e")).is_zero());
        assert!(!(&Element::named(x6.gens(), "p1") * &Element::named(x6.gens(), "p1")).is_zero());
    }

    #[test]
    fn inverse_factorials() {
        assert_eq!(inverse_factorial(0), rat(1));
        assert_eq!(inverse_factorial(4), ratio(1, 24));
    }
}
