//! Differential graded algebras and their exact cohomology.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{AlgebraError, Element, GenId, GeneratorSet, Monomial, Rational};
use crate::linalg::{nullspace, Echelon, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DgaError {
    #[error("d({generator}) must have degree {expected}, got {found}")]
    DegreeMismatch {
        generator: String,
        expected: u32,
        found: u32,
    },
    #[error("expected {expected} generator images, got {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("d(d({0})) is not zero")]
    NotSquareZero(String),
    #[error("element is not a cocycle: d(x) = {0}")]
    NotACocycle(String),
    #[error("complex is infinite-dimensional")]
    Infinite,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Differential given on generators; images are listed exterior generators
/// first, then polynomial generators, each in declaration order.
#[derive(Debug, Clone)]
pub struct Differential {
    images: Vec<Element>,
}

impl Differential {
    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn image(&self, gens: &GeneratorSet, id: GenId) -> &Element {
        match id {
            GenId::Exterior(i) => &self.images[i],
            GenId::Poly(i) => &self.images[gens.exterior().len() + i],
        }
    }
}

/// A finite presentation of a commutative DGA: generators, truncation, and a
/// differential on generators extended by the graded Leibniz rule.
#[derive(Debug, Clone)]
pub struct Dga {
    gens: Arc<GeneratorSet>,
    d: Differential,
}

impl Dga {
    /// Checks degrees (`deg d(g) = deg g + 1`) and `d(d(g)) = 0` on every generator.
    pub fn new(gens: Arc<GeneratorSet>, images: Vec<Element>) -> Result<Self, DgaError> {
        let expected = gens.exterior().len() + gens.poly().len();
        if images.len() != expected {
            return Err(DgaError::WrongArity {
                expected,
                found: images.len(),
            });
        }
        for (id, img) in gens.generator_ids().zip(&images) {
            let g = gens.generator(id);
            if !img.is_zero() && !Arc::ptr_eq(img.gens(), &gens) && **img.gens() != *gens {
                return Err(AlgebraError::GeneratorSetMismatch.into());
            }
            if let Some(found) = img.degrees().into_iter().find(|&d| d != g.degree + 1) {
                return Err(DgaError::DegreeMismatch {
                    generator: g.name.clone(),
                    expected: g.degree + 1,
                    found,
                });
            }
        }
        let images = images
            .into_iter()
            .map(|img| if img.is_zero() { Element::zero(&gens) } else { img })
            .collect();
        let dga = Dga {
            gens,
            d: Differential { images },
        };
        if let Some(g) = dga.first_non_square_zero() {
            return Err(DgaError::NotSquareZero(g));
        }
        Ok(dga)
    }

    /// The same algebra with zero differential.
    pub fn trivial(gens: Arc<GeneratorSet>) -> Self {
        let n = gens.exterior().len() + gens.poly().len();
        let images = vec![Element::zero(&gens); n];
        Dga {
            gens,
            d: Differential { images },
        }
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn differential(&self) -> &Differential {
        &self.d
    }

    fn first_non_square_zero(&self) -> Option<String> {
        self.gens.generator_ids().find_map(|id| {
            let dd = self.apply_d(self.d.image(&self.gens, id));
            (!dd.is_zero()).then(|| self.gens.generator(id).name.clone())
        })
    }

    /// True iff `d(d(g)) = 0` for every generator.
    pub fn check_d_squared(&self) -> bool {
        self.first_non_square_zero().is_none()
    }

    /// Graded Leibniz extension of the differential, applied term by term.
    pub fn apply_d(&self, x: &Element) -> Element {
        let mut out = Element::zero(&self.gens);
        for (m, c) in x.terms() {
            for (dm, dc) in self.d_monomial(m).into_terms() {
                out.add_term(dm, dc * c);
            }
        }
        out
    }

    /// d(y_{i1} ... y_{is} c^E) = sum_a (-1)^a y.. d(y_ia) ..y * c^E
    ///                          + (-1)^s y_I * sum_g e_g c^(E - 1_g) d(c_g)
    pub(crate) fn d_monomial(&self, m: &Monomial) -> Element {
        let gens = &self.gens;
        let mut out = Element::zero(gens);
        let ext: Vec<usize> = m.exterior_indices().collect();
        let mut below = 0u64;
        for (pos, &i) in ext.iter().enumerate() {
            let image = self.d.image(gens, GenId::Exterior(i));
            let rest = m.with_exterior(m.exterior_mask() & !below & !(1 << i));
            let prefix = gens.one().with_exterior(below);
            below |= 1 << i;
            for (mi, ci) in image.terms() {
                let Some((s1, p1)) = gens.mono_mul_unchecked(&prefix, mi) else { continue };
                let Some((s2, p2)) = gens.mono_mul_unchecked(&p1, &rest) else { continue };
                let negative = s1 ^ s2 ^ (pos % 2 == 1);
                out.add_term(p2, if negative { -ci.clone() } else { ci.clone() });
            }
        }
        let odd = ext.len() % 2 == 1;
        for (g, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let image = self.d.image(gens, GenId::Poly(g));
            let mut exps = m.exponents().to_vec();
            exps[g] -= 1;
            let lowered = Monomial::from_raw(m.exterior_mask(), exps);
            for (mi, ci) in image.terms() {
                let Some((s, p)) = gens.mono_mul_unchecked(&lowered, mi) else { continue };
                let c = ci * Rational::from_integer(e.into());
                out.add_term(p, if s ^ odd { -c } else { c });
            }
        }
        out
    }

    pub fn top_degree(&self) -> Option<u32> {
        self.gens.top_degree()
    }

    /// Matrix of `d: C^n -> C^{n+1}` as columns indexed by `basis(n)`, rows by `basis(n+1)`.
    fn d_columns(&self, source: &[Monomial], target: &HashMap<Monomial, usize>) -> Vec<Vec<(usize, Rational)>> {
        source
            .iter()
            .map(|m| {
                self.d_monomial(m)
                    .into_terms()
                    .into_iter()
                    .map(|(t, c)| (target[&t], c))
                    .collect()
            })
            .collect()
    }

    /// Exact cohomology in degrees `0..=max_degree` (default: the top degree).
    pub fn cohomology(&self, max_degree: Option<u32>) -> Result<CohomologyReport, DgaError> {
        let top = self.top_degree().ok_or(DgaError::Infinite)?;
        let max_degree = max_degree.unwrap_or(top);
        let bases: Vec<Vec<Monomial>> = (0..=max_degree + 1)
            .into_par_iter()
            .map(|n| self.gens.basis_of_degree(n))
            .collect();
        let per_degree: Vec<DegreeCohomology> = (0..=max_degree)
            .into_par_iter()
            .map(|n| self.degree_cohomology(n, &bases))
            .collect();
        Ok(CohomologyReport {
            per_degree: per_degree.into_iter().map(|h| (h.degree, h)).collect(),
        })
    }

    fn degree_cohomology(&self, n: u32, bases: &[Vec<Monomial>]) -> DegreeCohomology {
        let here = &bases[n as usize];
        let index = |b: &[Monomial]| -> HashMap<Monomial, usize> {
            b.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
        };
        let here_index = index(here);
        let next_index = index(&bases[n as usize + 1]);

        // kernel of d_n: rows of the matrix, each scaled to integers
        let cols = self.d_columns(here, &next_index);
        let mut row_entries: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); bases[n as usize + 1].len()];
        for (c, col) in cols.into_iter().enumerate() {
            for (r, v) in col {
                row_entries[r].push((c, v));
            }
        }
        let rows: Vec<SparseVec> = row_entries
            .into_iter()
            .filter(|r| !r.is_empty())
            .map(SparseVec::primitive_from_rationals)
            .collect();
        let kernel = nullspace(&rows, here.len());

        let boundaries = self.boundary_echelon_with(bases.get(n.wrapping_sub(1) as usize).filter(|_| n > 0), &here_index);
        let coboundary_dim = boundaries.rank();
        let mut span = boundaries;
        let mut representatives = Vec::new();
        for z in &kernel {
            if span.insert(z) {
                representatives.push(self.vector_to_element(z, here));
            }
        }
        debug_assert_eq!(representatives.len() + coboundary_dim, kernel.len());
        DegreeCohomology {
            degree: n,
            cochain_dim: here.len(),
            cocycle_dim: kernel.len(),
            coboundary_dim,
            dimension: representatives.len(),
            representatives,
        }
    }

    fn boundary_echelon_with(
        &self,
        prev_basis: Option<&Vec<Monomial>>,
        here_index: &HashMap<Monomial, usize>,
    ) -> Echelon {
        let mut echelon = Echelon::new();
        if let Some(prev) = prev_basis {
            for col in self.d_columns(prev, here_index) {
                if !col.is_empty() {
                    echelon.insert(&SparseVec::primitive_from_rationals(col));
                }
            }
        }
        echelon
    }

    /// Echelon basis of the coboundaries `d(C^{n-1})` inside `C^n`, plus the
    /// index of the degree-`n` basis.
    fn boundaries(&self, n: u32) -> (Echelon, HashMap<Monomial, usize>) {
        let here = self.gens.basis_of_degree(n);
        let here_index: HashMap<Monomial, usize> =
            here.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let prev = (n > 0).then(|| self.gens.basis_of_degree(n - 1));
        let echelon = self.boundary_echelon_with(prev.as_ref(), &here_index);
        (echelon, here_index)
    }

    fn vector_to_element(&self, v: &SparseVec, basis: &[Monomial]) -> Element {
        Element::from_terms(
            &self.gens,
            v.entries()
                .iter()
                .map(|(i, c)| (basis[*i].clone(), Rational::from_integer(c.clone()))),
        )
    }

    fn element_to_vector(x: &Element, index: &HashMap<Monomial, usize>) -> SparseVec {
        SparseVec::primitive_from_rationals(
            x.terms()
                .iter()
                .map(|(m, c)| (index[m], c.clone()))
                .collect(),
        )
    }

    fn require_cocycle(&self, x: &Element) -> Result<(), DgaError> {
        if !x.same_algebra(&Element::zero(&self.gens)) {
            return Err(AlgebraError::GeneratorSetMismatch.into());
        }
        let dx = self.apply_d(x);
        if dx.is_zero() {
            Ok(())
        } else {
            Err(DgaError::NotACocycle(dx.to_string()))
        }
    }

    /// True iff the cocycle `x` is not a coboundary.
    pub fn class_nonzero(&self, x: &Element) -> Result<bool, DgaError> {
        self.require_cocycle(x)?;
        for n in x.degrees() {
            let (boundaries, index) = self.boundaries(n);
            if !boundaries.contains(&Self::element_to_vector(&x.component(n), &index)) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Some `w` with `d(w) = x` when the cocycle `x` is a coboundary.
    pub fn coboundary_witness(&self, x: &Element) -> Result<Option<Element>, DgaError> {
        self.require_cocycle(x)?;
        let mut witness = Element::zero(&self.gens);
        for n in x.degrees() {
            if n == 0 {
                return Ok(None);
            }
            let prev = self.gens.basis_of_degree(n - 1);
            let here = self.gens.basis_of_degree(n);
            let index: HashMap<Monomial, usize> =
                here.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let mut cols = self.d_columns(&prev, &index);
            cols.push(x.component(n).terms().iter().map(|(m, c)| (index[m], c.clone())).collect());
            let mut row_entries: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); here.len()];
            for (c, col) in cols.into_iter().enumerate() {
                for (r, v) in col {
                    row_entries[r].push((c, v));
                }
            }
            let rows: Vec<SparseVec> = row_entries
                .into_iter()
                .filter(|r| !r.is_empty())
                .map(SparseVec::primitive_from_rationals)
                .collect();
            let last = prev.len();
            let Some(v) = nullspace(&rows, last + 1).into_iter().find(|v| v.get(last).is_some()) else {
                return Ok(None);
            };
            let scale = -Rational::from_integer(v.get(last).expect("checked").clone());
            for (i, c) in v.entries() {
                if *i < last {
                    witness.add_term(prev[*i].clone(), Rational::from_integer(c.clone()) / &scale);
                }
            }
        }
        Ok(Some(witness))
    }

    /// Rank of the span of the classes of `xs` in cohomology, together with a
    /// per-class nonvanishing flag. Each `x` must be a homogeneous cocycle
    /// (zero is allowed).
    pub fn class_rank(&self, xs: &[Element]) -> Result<ClassRank, DgaError> {
        for x in xs {
            self.require_cocycle(x)?;
        }
        let mut by_degree: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, x) in xs.iter().enumerate() {
            for n in x.degrees() {
                by_degree.entry(n).or_default().push(i);
            }
        }
        let mut nonzero = vec![false; xs.len()];
        let mut rank = 0;
        for (n, members) in by_degree {
            let (boundaries, index) = self.boundaries(n);
            let mut span = boundaries.clone();
            for &i in &members {
                let v = Self::element_to_vector(&xs[i].component(n), &index);
                if !boundaries.contains(&v) {
                    nonzero[i] = true;
                }
                if span.insert(&v) {
                    rank += 1;
                }
            }
        }
        Ok(ClassRank { rank, nonzero })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRank {
    pub rank: usize,
    pub nonzero: Vec<bool>,
}

/// Cohomology in a single degree.
#[derive(Debug, Clone)]
pub struct DegreeCohomology {
    pub degree: u32,
    pub cochain_dim: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    pub dimension: usize,
    /// Cocycles whose classes form a basis of this degree.
    pub representatives: Vec<Element>,
}

#[derive(Debug, Clone)]
pub struct CohomologyReport {
    pub per_degree: BTreeMap<u32, DegreeCohomology>,
}

impl CohomologyReport {
    pub fn dimension(&self, n: u32) -> usize {
        self.per_degree.get(&n).map_or(0, |h| h.dimension)
    }

    /// Nonzero dimensions only.
    pub fn dimensions(&self) -> BTreeMap<u32, usize> {
        self.per_degree
            .iter()
            .filter(|(_, h)| h.dimension > 0)
            .map(|(&n, h)| (n, h.dimension))
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.per_degree
            .values()
            .map(|h| if h.degree % 2 == 0 { h.dimension as i64 } else { -(h.dimension as i64) })
            .sum()
    }

    pub fn cochain_euler_characteristic(&self) -> i64 {
        self.per_degree
            .values()
            .map(|h| if h.degree % 2 == 0 { h.cochain_dim as i64 } else { -(h.cochain_dim as i64) })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Generator;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gen(name: &str, degree: u32) -> Generator {
        Generator { name: name.into(), degree }
    }

    fn weil(q: u32) -> Dga {
        let gens = Arc::new(
            GeneratorSet::new(
                (1..=q).map(|i| gen(&format!("y{i}"), 2 * i - 1)).collect(),
                (1..=q).map(|i| gen(&format!("c{i}"), 2 * i)).collect(),
                2 * q,
            )
            .unwrap(),
        );
        let mut images: Vec<Element> = (0..q as usize)
            .map(|i| Element::generator(&gens, GenId::Poly(i)))
            .collect();
        images.extend((0..q).map(|_| Element::zero(&gens)));
        Dga::new(gens, images).unwrap()
    }

    fn e(d: &Dga, s: &str) -> Element {
        Element::parse(d.gens(), s).unwrap()
    }

    #[test]
    fn differential_on_generators() {
        let w1 = weil(1);
        assert_eq!(w1.apply_d(&e(&w1, "y1")), e(&w1, "c1"));
        assert!(w1.apply_d(&e(&w1, "c1")).is_zero());
        let w2 = weil(2);
        // d(y1 y2) = c1 y2 - y1 c2
        assert_eq!(w2.apply_d(&e(&w2, "y1*y2")), e(&w2, "c1*y2 - y1*c2"));
        assert!(w2.check_d_squared());
    }

    #[test]
    fn rejects_bad_assignments() {
        let gens = Arc::new(
            GeneratorSet::new(vec![gen("y1", 1), gen("y2", 3)], vec![], 0).unwrap(),
        );
        let y2 = Element::named(&gens, "y2");
        let err = Dga::new(Arc::clone(&gens), vec![y2, Element::zero(&gens)]).unwrap_err();
        assert!(matches!(err, DgaError::DegreeMismatch { .. }));

        // d(x) = y together with d(y) = x*y violates d^2 = 0
        let gens = Arc::new(
            GeneratorSet::new(vec![gen("x", 1), gen("w", 3)], vec![gen("y", 2)], 0).unwrap(),
        );
        let images = vec![
            Element::named(&gens, "y"),
            Element::zero(&gens),
            Element::parse(&gens, "x*y").unwrap(),
        ];
        assert!(matches!(
            Dga::new(Arc::clone(&gens), images),
            Err(DgaError::NotSquareZero(g)) if g == "x"
        ));
        let images = vec![Element::zero(&gens); 2];
        assert!(matches!(Dga::new(gens, images), Err(DgaError::WrongArity { .. })));
    }

    #[test]
    fn w1_cohomology() {
        let w1 = weil(1);
        let h = w1.cohomology(None).unwrap();
        assert_eq!(h.dimensions(), BTreeMap::from([(0, 1), (3, 1)]));
        assert_eq!(h.per_degree[&3].representatives, vec![e(&w1, "y1*c1")]);
        assert_eq!(h.per_degree[&0].representatives, vec![e(&w1, "1")]);
    }

    #[test]
    fn class_tests_in_w1() {
        let w1 = weil(1);
        assert!(w1.class_nonzero(&e(&w1, "y1*c1")).unwrap());
        assert!(!w1.class_nonzero(&e(&w1, "c1")).unwrap());
        assert_eq!(w1.coboundary_witness(&e(&w1, "3*c1")).unwrap(), Some(e(&w1, "3*y1")));
        assert_eq!(w1.coboundary_witness(&e(&w1, "y1*c1")).unwrap(), None);
        assert!(!w1.class_nonzero(&Element::zero(w1.gens())).unwrap());
        assert!(matches!(
            w1.class_nonzero(&e(&w1, "y1")),
            Err(DgaError::NotACocycle(_))
        ));
    }

    #[test]
    fn chern_weil_model_is_acyclic() {
        // Λ(p̂1) ⊗ Q[p1] with d(p̂1) = p1, truncated above degree 4
        let gens = Arc::new(
            GeneratorSet::new(vec![gen("ph1", 3)], vec![gen("p1", 4)], 4).unwrap(),
        );
        let dga = Dga::new(Arc::clone(&gens), vec![Element::named(&gens, "p1"), Element::zero(&gens)]).unwrap();
        let h = dga.cohomology(Some(4)).unwrap();
        assert_eq!(h.dimension(0), 1);
        for n in 1..=4 {
            assert_eq!(h.dimension(n), 0, "degree {n}");
        }
    }

    fn random_element(dga: &Dga, rng: &mut ChaCha8Rng, terms: usize) -> Element {
        let top = dga.top_degree().unwrap();
        let mut x = Element::zero(dga.gens());
        for _ in 0..terms {
            let n = rng.gen_range(0..=top);
            let basis = dga.gens().basis_of_degree(n);
            if basis.is_empty() {
                continue;
            }
            let m = basis[rng.gen_range(0..basis.len())].clone();
            let c = Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=3).into());
            x = &x + &Element::from_monomial(dga.gens(), m, c);
        }
        x
    }

    #[test]
    fn leibniz_and_square_zero_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in 2..=4 {
            let w = weil(q);
            for _ in 0..40 {
                let a = random_element(&w, &mut rng, 1);
                let b = random_element(&w, &mut rng, 3);
                let x = random_element(&w, &mut rng, 4);
                assert!(w.apply_d(&w.apply_d(&x)).is_zero());
                let Some(da) = a.homogeneous_degree() else { continue };
                let lhs = w.apply_d(&(&a * &b));
                let mut rhs_b = &a * &w.apply_d(&b);
                if da % 2 == 1 {
                    rhs_b = -&rhs_b;
                }
                assert_eq!(lhs, &(&w.apply_d(&a) * &b) + &rhs_b);
            }
        }
    }

    #[test]
    fn euler_characteristic_is_preserved() {
        for q in 1..=3 {
            let h = weil(q).cohomology(None).unwrap();
            assert_eq!(h.euler_characteristic(), h.cochain_euler_characteristic());
        }
    }

    #[test]
    fn representatives_are_independent_cocycles() {
        let w = weil(2);
        let h = w.cohomology(None).unwrap();
        for dh in h.per_degree.values() {
            let rank = w.class_rank(&dh.representatives).unwrap();
            assert_eq!(rank.rank, dh.dimension);
            assert!(rank.nonzero.iter().all(|&b| b));
        }
    }

    #[test]
    fn cohomology_is_deterministic() {
        let w = weil(3);
        let a = w.cohomology(None).unwrap();
        let b = w.cohomology(None).unwrap();
        for (n, h) in &a.per_degree {
            assert_eq!(h.representatives, b.per_degree[n].representatives);
        }
    }
}
