//! Free graded-commutative algebras over the rationals.
//!
//! An algebra is described by a [`GeneratorSet`]: odd-degree exterior
//! generators, even-degree polynomial generators, and a monomial ideal given
//! by degree caps on the polynomial part. Elements are finite sparse linear
//! combinations of [`Monomial`]s with exact [`Rational`] coefficients.
//!
//! Sign convention: the canonical order of generators is the order in which
//! they were declared. The product of two monomials carries the sign of the
//! permutation that sorts the concatenated exterior index lists.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational coefficient, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Largest number of exterior generators a [`GeneratorSet`] may carry.
pub const MAX_EXTERIOR: usize = 64;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `num/den`, denominator always written.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("generator `{0}` declared twice")]
    DuplicateName(String),
    #[error("exterior generator `{name}` has even degree {degree}")]
    ExteriorDegreeNotOdd { name: String, degree: u32 },
    #[error("polynomial generator `{name}` has odd or zero degree {degree}")]
    PolyDegreeNotEven { name: String, degree: u32 },
    #[error("at most {MAX_EXTERIOR} exterior generators are supported, got {0}")]
    TooManyExterior(usize),
    #[error("degree cap refers to unknown polynomial generator index {0}")]
    BadCap(usize),
    #[error("operands live over different generator sets")]
    GeneratorSetMismatch,
    #[error("monomial does not fit the generator set")]
    MonomialMismatch,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

/// A graded generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// Bound on the degree of the part of a monomial supported on `gens`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeCap {
    pub gens: Vec<usize>,
    pub max_degree: u32,
}

/// Generators of a free graded-commutative algebra together with the monomial
/// ideal that is quotiented out.
///
/// `truncation` bounds the degree of the whole polynomial part (0 disables
/// it); `caps` bound the degree of sub-monomials and encode the relations of
/// model rings such as `a^3 = 0` or products of truncated rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    exterior: Vec<Generator>,
    poly: Vec<Generator>,
    truncation: u32,
    caps: Vec<DegreeCap>,
}

/// Index of a generator inside a [`GeneratorSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenId {
    Exterior(usize),
    Poly(usize),
}

impl GeneratorSet {
    pub fn new(
        exterior: Vec<Generator>,
        poly: Vec<Generator>,
        truncation: u32,
    ) -> Result<Self, AlgebraError> {
        Self::with_caps(exterior, poly, truncation, Vec::new())
    }

    pub fn with_caps(
        exterior: Vec<Generator>,
        poly: Vec<Generator>,
        truncation: u32,
        caps: Vec<DegreeCap>,
    ) -> Result<Self, AlgebraError> {
        if exterior.len() > MAX_EXTERIOR {
            return Err(AlgebraError::TooManyExterior(exterior.len()));
        }
        let mut seen = std::collections::HashSet::new();
        for g in exterior.iter().chain(poly.iter()) {
            if !seen.insert(g.name.as_str()) {
                return Err(AlgebraError::DuplicateName(g.name.clone()));
            }
        }
        for g in &exterior {
            if g.degree % 2 == 0 {
                return Err(AlgebraError::ExteriorDegreeNotOdd {
                    name: g.name.clone(),
                    degree: g.degree,
                });
            }
        }
        for g in &poly {
            if g.degree == 0 || g.degree % 2 == 1 {
                return Err(AlgebraError::PolyDegreeNotEven {
                    name: g.name.clone(),
                    degree: g.degree,
                });
            }
        }
        for cap in &caps {
            if let Some(&bad) = cap.gens.iter().find(|&&g| g >= poly.len()) {
                return Err(AlgebraError::BadCap(bad));
            }
        }
        Ok(GeneratorSet {
            exterior,
            poly,
            truncation,
            caps,
        })
    }

    pub fn exterior(&self) -> &[Generator] {
        &self.exterior
    }

    pub fn poly(&self) -> &[Generator] {
        &self.poly
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn caps(&self) -> &[DegreeCap] {
        &self.caps
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        match id {
            GenId::Exterior(i) => &self.exterior[i],
            GenId::Poly(i) => &self.poly[i],
        }
    }

    pub fn generator_ids(&self) -> impl Iterator<Item = GenId> + '_ {
        (0..self.exterior.len())
            .map(GenId::Exterior)
            .chain((0..self.poly.len()).map(GenId::Poly))
    }

    pub fn find(&self, name: &str) -> Option<GenId> {
        if let Some(i) = self.exterior.iter().position(|g| g.name == name) {
            return Some(GenId::Exterior(i));
        }
        self.poly
            .iter()
            .position(|g| g.name == name)
            .map(GenId::Poly)
    }

    pub fn one(&self) -> Monomial {
        Monomial {
            ext: 0,
            exps: vec![0; self.poly.len()],
        }
    }

    /// The monomial consisting of a single generator.
    pub fn gen_monomial(&self, id: GenId) -> Monomial {
        let mut m = self.one();
        match id {
            GenId::Exterior(i) => m.ext = 1u64 << i,
            GenId::Poly(i) => m.exps[i] = 1,
        }
        m
    }

    pub fn fits(&self, m: &Monomial) -> bool {
        m.exps.len() == self.poly.len()
            && (self.exterior.len() == 64 || m.ext >> self.exterior.len() == 0)
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        self.exterior_degree(m.ext) + self.poly_degree(&m.exps)
    }

    fn exterior_degree(&self, mask: u64) -> u32 {
        BitIter(mask).map(|i| self.exterior[i].degree).sum()
    }

    fn poly_degree(&self, exps: &[u32]) -> u32 {
        exps.iter()
            .zip(&self.poly)
            .map(|(&e, g)| e * g.degree)
            .sum()
    }

    /// Whether a polynomial exponent vector survives the truncation ideal.
    pub fn poly_allowed(&self, exps: &[u32]) -> bool {
        if self.truncation > 0 && self.poly_degree(exps) > self.truncation {
            return false;
        }
        self.caps.iter().all(|cap| {
            let d: u32 = cap
                .gens
                .iter()
                .map(|&g| exps[g] * self.poly[g].degree)
                .sum();
            d <= cap.max_degree
        })
    }

    /// Graded-commutative product of two monomials. `Ok(None)` means zero.
    pub fn mono_mul(
        &self,
        a: &Monomial,
        b: &Monomial,
    ) -> Result<Option<(bool, Monomial)>, AlgebraError> {
        if !self.fits(a) || !self.fits(b) {
            return Err(AlgebraError::MonomialMismatch);
        }
        Ok(self.mono_mul_unchecked(a, b))
    }

    /// Product of two monomials known to fit; the boolean is `true` for a
    /// negative sign.
    pub(crate) fn mono_mul_unchecked(&self, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
        if a.ext & b.ext != 0 {
            return None;
        }
        let exps: Vec<u32> = a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect();
        if !self.poly_allowed(&exps) {
            return None;
        }
        Some((
            koszul_sign(a.ext, b.ext),
            Monomial {
                ext: a.ext | b.ext,
                exps,
            },
        ))
    }

    /// Every polynomial exponent vector of exactly `degree` that survives
    /// truncation, in lexicographic order.
    pub fn poly_monomials_of_degree(&self, degree: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.poly.len()];
        self.poly_rec(0, degree, &mut cur, &mut out, usize::MAX);
        out.sort();
        out
    }

    fn poly_rec(
        &self,
        idx: usize,
        remaining: u32,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if idx == self.poly.len() {
            if remaining == 0 && self.poly_allowed(cur) {
                out.push(cur.clone());
            }
            return;
        }
        let deg = self.poly[idx].degree;
        let mut e = 0;
        while e * deg <= remaining {
            cur[idx] = e;
            self.poly_rec(idx + 1, remaining - e * deg, cur, out, limit);
            e += 1;
        }
        cur[idx] = 0;
    }

    /// Largest polynomial degree any surviving monomial can have, or `None`
    /// when the polynomial part is infinite-dimensional.
    pub fn max_poly_degree(&self) -> Option<u32> {
        let bound = self.poly_degree_bound()?;
        (0..=bound)
            .rev()
            .find(|&d| !self.poly_monomials_of_degree(d).is_empty())
    }

    fn poly_degree_bound(&self) -> Option<u32> {
        if self.truncation > 0 {
            return Some(self.truncation);
        }
        let mut bound = 0;
        for g in 0..self.poly.len() {
            let cap = self
                .caps
                .iter()
                .filter(|c| c.gens.contains(&g))
                .map(|c| c.max_degree)
                .min()?;
            bound += cap;
        }
        Some(bound)
    }

    /// Top degree of the finite algebra.
    pub fn top_degree(&self) -> Option<u32> {
        let ext: u32 = self.exterior.iter().map(|g| g.degree).sum();
        Some(ext + self.max_poly_degree()?)
    }

    /// All monomials of total degree `n`, sorted in canonical order.
    pub fn basis_of_degree(&self, n: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let count = self.exterior.len();
        let subsets: u64 = if count == 64 { u64::MAX } else { (1u64 << count) - 1 };
        let mut mask: u64 = 0;
        loop {
            let ed = self.exterior_degree(mask);
            if ed <= n {
                for exps in self.poly_monomials_of_degree(n - ed) {
                    out.push(Monomial { ext: mask, exps });
                }
            }
            if mask == subsets {
                break;
            }
            mask += 1;
        }
        out.sort();
        out
    }

    /// Number of monomials in the whole algebra, or `None` once it exceeds
    /// `limit` (or the algebra is infinite).
    pub fn total_dimension(&self, limit: u64) -> Option<u64> {
        let ext_count = self.exterior.len() as u32;
        if ext_count >= 63 || (1u64 << ext_count) > limit {
            return None;
        }
        let ext_subsets = 1u64 << ext_count;
        let poly_limit = (limit / ext_subsets) as usize + 1;
        let bound = self.poly_degree_bound()?;
        let mut poly_count = 0usize;
        let mut cur = vec![0u32; self.poly.len()];
        for d in 0..=bound {
            let mut out = Vec::new();
            self.poly_rec(0, d, &mut cur, &mut out, poly_limit - poly_count);
            poly_count += out.len();
            if poly_count >= poly_limit {
                return None;
            }
        }
        let total = ext_subsets * poly_count as u64;
        (total <= limit).then_some(total)
    }

    pub fn display_monomial(&self, m: &Monomial) -> String {
        let mut parts: Vec<String> = BitIter(m.ext)
            .map(|i| self.exterior[i].name.clone())
            .collect();
        for (g, &e) in self.poly.iter().zip(&m.exps) {
            match e {
                0 => {}
                1 => parts.push(g.name.clone()),
                _ => parts.push(format!("{}^{}", g.name, e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Parses `name`, `name^k` factors joined by `*`; exterior factors may
    /// appear in any order and contribute the corresponding sign.
    pub fn parse_monomial(&self, text: &str) -> Result<(bool, Option<Monomial>), AlgebraError> {
        let mut acc = self.one();
        let mut negative = false;
        let text = text.trim();
        if text == "1" {
            return Ok((false, Some(acc)));
        }
        for factor in text.split('*') {
            let (name, power) = match factor.split_once('^') {
                Some((n, p)) => (
                    n.trim(),
                    p.trim()
                        .parse::<u32>()
                        .map_err(|_| AlgebraError::UnknownGenerator(factor.to_string()))?,
                ),
                None => (factor.trim(), 1),
            };
            let id = self
                .find(name)
                .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))?;
            let g = self.gen_monomial(id);
            for _ in 0..power {
                match self.mono_mul_unchecked(&acc, &g) {
                    Some((s, m)) => {
                        negative ^= s;
                        acc = m;
                    }
                    None => return Ok((false, None)),
                }
            }
        }
        Ok((negative, Some(acc)))
    }
}

/// Sign of `a * b` where both are exterior monomials given as bitmasks:
/// counts pairs (i in a, j in b) with i > j.
fn koszul_sign(a: u64, b: u64) -> bool {
    let mut parity = 0u32;
    for j in BitIter(b) {
        let above = if j == 63 { 0 } else { a >> (j + 1) };
        parity ^= above.count_ones() & 1;
    }
    parity == 1
}

/// Iterates set bits from lowest to highest.
#[derive(Clone, Copy)]
pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// A monomial `y_I * c^E`: a set of exterior generators and an exponent
/// vector over the polynomial generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    ext: u64,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn from_parts(exterior: &[usize], exps: Vec<u32>) -> Option<Self> {
        let mut ext = 0u64;
        for &i in exterior {
            if i >= MAX_EXTERIOR || ext & (1 << i) != 0 {
                return None;
            }
            ext |= 1 << i;
        }
        Some(Monomial { ext, exps })
    }

    pub fn exterior_indices(&self) -> impl Iterator<Item = usize> {
        BitIter(self.ext)
    }

    pub fn exterior_mask(&self) -> u64 {
        self.ext
    }

    pub fn exterior_len(&self) -> usize {
        self.ext.count_ones() as usize
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.ext == 0 && self.exps.iter().all(|&e| e == 0)
    }

    pub(crate) fn with_exterior(&self, ext: u64) -> Monomial {
        Monomial {
            ext,
            exps: self.exps.clone(),
        }
    }

    pub(crate) fn from_raw(ext: u64, exps: Vec<u32>) -> Monomial {
        Monomial { ext, exps }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exterior_indices()
            .cmp(other.exterior_indices())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite rational linear combination of monomials over a fixed
/// [`GeneratorSet`]. Zero coefficients are never stored, so equality is
/// structural.
#[derive(Clone)]
pub struct Element {
    gens: Arc<GeneratorSet>,
    terms: BTreeMap<Monomial, Rational>,
}

impl Element {
    pub fn zero(gens: &Arc<GeneratorSet>) -> Self {
        Element {
            gens: Arc::clone(gens),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(gens: &Arc<GeneratorSet>) -> Self {
        Self::from_monomial(gens, gens.one(), Rational::one())
    }

    pub fn generator(gens: &Arc<GeneratorSet>, id: GenId) -> Self {
        Self::from_monomial(gens, gens.gen_monomial(id), Rational::one())
    }

    /// The generator called `name`.
    ///
    /// Panics if no such generator exists.
    pub fn named(gens: &Arc<GeneratorSet>, name: &str) -> Self {
        let id = gens
            .find(name)
            .unwrap_or_else(|| panic!("no generator named `{name}`"));
        Self::generator(gens, id)
    }

    /// `coeff * m`. Monomials killed by the truncation ideal give zero.
    pub fn from_monomial(gens: &Arc<GeneratorSet>, m: Monomial, coeff: Rational) -> Self {
        assert!(gens.fits(&m), "monomial does not fit the generator set");
        let mut e = Self::zero(gens);
        if !coeff.is_zero() && gens.poly_allowed(&m.exps) {
            e.terms.insert(m, coeff);
        }
        e
    }

    pub fn from_terms(
        gens: &Arc<GeneratorSet>,
        terms: impl IntoIterator<Item = (Monomial, Rational)>,
    ) -> Self {
        let mut e = Self::zero(gens);
        for (m, c) in terms {
            assert!(gens.fits(&m), "monomial does not fit the generator set");
            if gens.poly_allowed(&m.exps) {
                e.add_term(m, c);
            }
        }
        e
    }

    /// Parses a sum such as `2*y1*c1 - 1/2*c1^2 + y2`.
    pub fn parse(gens: &Arc<GeneratorSet>, text: &str) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(gens);
        let normalized = text.replace('-', "+-");
        for chunk in normalized.split('+') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let (neg, body) = match chunk.strip_prefix('-') {
                Some(rest) => (true, rest.trim()),
                None => (false, chunk),
            };
            let mut coeff = Rational::one();
            let mut factors: Vec<&str> = Vec::new();
            for f in body.split('*') {
                let f = f.trim();
                if f.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                    let value = match f.split_once('/') {
                        Some((n, d)) => n.trim().parse::<BigInt>().ok().zip(d.trim().parse::<BigInt>().ok())
                            .filter(|(_, d)| !d.is_zero())
                            .map(|(n, d)| Rational::new(n, d)),
                        None => f.parse::<BigInt>().ok().map(Rational::from_integer),
                    }
                    .ok_or_else(|| AlgebraError::UnknownGenerator(f.to_string()))?;
                    coeff *= value;
                } else {
                    factors.push(f);
                }
            }
            let (sign, mono) = if factors.is_empty() {
                (false, Some(gens.one()))
            } else {
                gens.parse_monomial(&factors.join("*"))?
            };
            if let Some(m) = mono {
                if neg ^ sign {
                    coeff = -coeff;
                }
                out.add_term(m, coeff);
            }
        }
        Ok(out)
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn same_algebra(&self, other: &Element) -> bool {
        Arc::ptr_eq(&self.gens, &other.gens) || *self.gens == *other.gens
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// The degrees in which this element has nonzero components.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms.keys().map(|m| self.gens.degree(m)).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Degree of a homogeneous nonzero element.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn component(&self, degree: u32) -> Element {
        Element {
            gens: Arc::clone(&self.gens),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.gens.degree(m) == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Element {
        if s.is_zero() {
            return Element::zero(&self.gens);
        }
        Element {
            gens: Arc::clone(&self.gens),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element, AlgebraError> {
        if !self.same_algebra(other) {
            return Err(AlgebraError::GeneratorSetMismatch);
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    /// Bilinear extension of the monomial product.
    pub fn try_mul(&self, other: &Element) -> Result<Element, AlgebraError> {
        if !self.same_algebra(other) {
            return Err(AlgebraError::GeneratorSetMismatch);
        }
        let mut out = Element::zero(&self.gens);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((neg, m)) = self.gens.mono_mul_unchecked(ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Element {
        let mut acc = Element::one(&self.gens);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Moves an element to another generator set with the same polynomial
    /// generators, mapping exterior generator `i` to `ext_map[i]`.
    pub fn transport(
        &self,
        target: &Arc<GeneratorSet>,
        ext_map: &[usize],
        poly_offset: usize,
    ) -> Result<Element, AlgebraError> {
        let mut out = Element::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.poly().len()];
            for (i, &e) in m.exps.iter().enumerate() {
                *exps
                    .get_mut(poly_offset + i)
                    .ok_or(AlgebraError::MonomialMismatch)? = e;
            }
            let mut acc = Monomial { ext: 0, exps };
            let mut neg = false;
            for i in m.exterior_indices() {
                let j = *ext_map.get(i).ok_or(AlgebraError::MonomialMismatch)?;
                let g = Monomial::from_raw(1u64 << j, vec![0; target.poly().len()]);
                match target.mono_mul_unchecked(&acc, &g) {
                    Some((s, next)) => {
                        neg ^= s;
                        acc = next;
                    }
                    None => {
                        acc.exps.clear();
                        break;
                    }
                }
            }
            if acc.exps.len() != target.poly().len() || !target.poly_allowed(&acc.exps) {
                continue;
            }
            out.add_term(acc, if neg { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = self.gens.display_monomial(m);
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).expect("adding elements of different algebras")
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_add(&-rhs).expect("subtracting elements of different algebras")
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            gens: Arc::clone(&self.gens),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs)
            .expect("multiplying elements of different algebras")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(name: &str, degree: u32) -> Generator {
        Generator {
            name: name.into(),
            degree,
        }
    }

    /// Λ(y1..yq) ⊗ Q[c1..cq] truncated above 2q.
    fn weil(q: u32) -> Arc<GeneratorSet> {
        Arc::new(
            GeneratorSet::new(
                (1..=q).map(|i| gen(&format!("y{i}"), 2 * i - 1)).collect(),
                (1..=q).map(|i| gen(&format!("c{i}"), 2 * i)).collect(),
                2 * q,
            )
            .unwrap(),
        )
    }

    fn e(g: &Arc<GeneratorSet>, s: &str) -> Element {
        Element::parse(g, s).unwrap()
    }

    #[test]
    fn exterior_sign_rules() {
        let g = weil(2);
        let y1 = g.gen_monomial(GenId::Exterior(0));
        let y2 = g.gen_monomial(GenId::Exterior(1));
        let (neg, m) = g.mono_mul(&y1, &y2).unwrap().unwrap();
        assert!(!neg);
        assert_eq!(g.display_monomial(&m), "y1*y2");
        let (neg, m2) = g.mono_mul(&y2, &y1).unwrap().unwrap();
        assert!(neg);
        assert_eq!(m, m2);
        assert_eq!(g.mono_mul(&y1, &y1).unwrap(), None);
    }

    #[test]
    fn truncation_kills_c1_squared_in_w1() {
        let g = weil(1);
        let c1 = g.gen_monomial(GenId::Poly(0));
        assert_eq!(g.mono_mul(&c1, &c1).unwrap(), None);
    }

    #[test]
    fn truncation_boundary_survives() {
        let g = weil(3);
        let c1 = e(&g, "c1");
        let prod = &c1 * &c1.pow(2);
        assert_eq!(prod, e(&g, "c1^3"));
        assert!(!prod.is_zero());
        assert!((&prod * &c1).is_zero());
    }

    #[test]
    fn element_products() {
        let g = weil(1);
        let x = e(&g, "y1 + c1");
        assert_eq!(&x * &e(&g, "y1"), e(&g, "c1*y1"));
        assert_eq!(&x * &Element::one(&g), x);
        assert_eq!(e(&g, "c1*y1"), e(&g, "y1*c1"));
        let g2 = weil(2);
        assert_eq!(e(&g2, "y2*y1"), e(&g2, "-y1*y2"));
    }

    #[test]
    fn mismatched_generator_sets() {
        let a = e(&weil(1), "y1");
        let b = e(&weil(2), "y1");
        assert_eq!(a.try_mul(&b), Err(AlgebraError::GeneratorSetMismatch));
        let g1 = weil(1);
        let foreign = weil(2).gen_monomial(GenId::Poly(1));
        assert_eq!(
            g1.mono_mul(&g1.one(), &foreign),
            Err(AlgebraError::MonomialMismatch)
        );
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            GeneratorSet::new(vec![gen("y", 2)], vec![], 0),
            Err(AlgebraError::ExteriorDegreeNotOdd { .. })
        ));
        assert!(matches!(
            GeneratorSet::new(vec![], vec![gen("c", 3)], 0),
            Err(AlgebraError::PolyDegreeNotEven { .. })
        ));
        assert!(matches!(
            GeneratorSet::new(vec![gen("x", 1)], vec![gen("x", 2)], 0),
            Err(AlgebraError::DuplicateName(_))
        ));
    }

    #[test]
    fn basis_of_w1() {
        let g = weil(1);
        let names = |n| {
            g.basis_of_degree(n)
                .iter()
                .map(|m| g.display_monomial(m))
                .collect::<Vec<_>>()
        };
        assert_eq!(names(0), vec!["1"]);
        assert_eq!(names(1), vec!["y1"]);
        assert_eq!(names(2), vec!["c1"]);
        assert_eq!(names(3), vec!["y1*c1"]);
        assert!(names(4).is_empty());
        assert_eq!(g.top_degree(), Some(3));
    }

    /// Independent enumeration: all subsets of exterior generators times all
    /// exponent vectors with bounded entries, filtered by degree.
    fn brute_force_basis(g: &GeneratorSet, n: u32) -> Vec<String> {
        let ext = g.exterior().len();
        let poly = g.poly().len();
        let max_e = 2 * n + 1;
        let mut out = Vec::new();
        for mask in 0u64..(1 << ext) {
            let mut exps = vec![0u32; poly];
            loop {
                let m = Monomial::from_raw(mask, exps.clone());
                let pd: u32 = exps.iter().zip(g.poly()).map(|(e, p)| e * p.degree).sum();
                if g.degree(&m) == n && (g.truncation() == 0 || pd <= g.truncation()) {
                    out.push(g.display_monomial(&m));
                }
                let mut i = 0;
                while i < poly {
                    exps[i] += 1;
                    if exps[i] <= max_e {
                        break;
                    }
                    exps[i] = 0;
                    i += 1;
                }
                if i == poly {
                    break;
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn basis_matches_brute_force() {
        for q in 1..=3 {
            let g = weil(q);
            for n in 0..=(q * q + 2 * q + 1) {
                let mut got: Vec<String> = g
                    .basis_of_degree(n)
                    .iter()
                    .map(|m| g.display_monomial(m))
                    .collect();
                got.sort();
                assert_eq!(got, brute_force_basis(&g, n), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn w2_degree_seven() {
        let g = weil(2);
        let names: Vec<String> = g
            .basis_of_degree(7)
            .iter()
            .map(|m| g.display_monomial(m))
            .collect();
        assert_eq!(names, vec!["y2*c2", "y2*c1^2"]);
    }

    #[test]
    fn dimension_product_formula() {
        // W3: 8 exterior subsets times 7 monomials 2a+4b+6c <= 6
        let g = weil(3);
        let total: usize = (0..=15).map(|n| g.basis_of_degree(n).len()).sum();
        assert_eq!(total, 56);
        assert_eq!(g.total_dimension(1_000_000), Some(56));
        assert_eq!(g.total_dimension(55), None);
    }

    #[test]
    fn caps_encode_model_relations() {
        let g = Arc::new(
            GeneratorSet::with_caps(
                vec![],
                vec![gen("a1", 2), gen("a2", 2)],
                0,
                vec![
                    DegreeCap { gens: vec![0], max_degree: 4 },
                    DegreeCap { gens: vec![1], max_degree: 4 },
                ],
            )
            .unwrap(),
        );
        assert!(e(&g, "a1").pow(3).is_zero());
        assert_eq!(e(&g, "a1 + a2").pow(4), e(&g, "6*a1^2*a2^2"));
        assert_eq!(g.top_degree(), Some(8));
        assert_eq!(g.total_dimension(100), Some(9));
    }

    #[test]
    fn display_and_parse() {
        let g = weil(2);
        let x = e(&g, "2*y1*c2 - 1/2*c1^2 + 3");
        assert_eq!(x.to_string(), "3 - 1/2*c1^2 + 2*y1*c2");
        assert_eq!(Element::parse(&g, &x.to_string()).unwrap(), x);
        assert_eq!(rational_string(&rat(2)), "2/1");
    }
}
