//! Koszul models of orthonormal frame bundles over model rings, the
//! characteristic map from `W_q`, and certificates for the secondary classes
//! it detects.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{rat, AlgebraError, Element, GenId, Generator, GeneratorSet};
use crate::dga::{Dga, DgaError};
use crate::pontrjagin::{canonical_bundle, BundleMap, ModelRing, PontrjaginError, Space};
use crate::weil::{build_wq, VeyIndex, WeilError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("model needs {needed} monomials, budget is {limit}")]
    Budget { needed: String, limit: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("y{0} is not a primitive generator index available in this codimension")]
    IndexOutOfRange(u32),
    #[error("index {index} must exceed the largest seed index {largest}")]
    NotIncreasing { index: u32, largest: u32 },
    #[error("{0} is not a Vey index for this codimension")]
    NotVey(String),
    #[error("bundle does not fit codimension {q}: {reason}")]
    DegreeMismatch { q: u32, reason: String },
    #[error("characteristic map does not commute with d on {0}")]
    NotAChainMap(String),
    #[error(transparent)]
    Dga(#[from] DgaError),
    #[error(transparent)]
    Pontrjagin(#[from] PontrjaginError),
    #[error(transparent)]
    Weil(#[from] WeilError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Number of degree-`(4i − 1)` primitive generators of `H*(SO(q))`.
pub fn u_max(q: u32) -> u32 {
    if q % 2 == 1 {
        (q - 1) / 2
    } else {
        (q / 2).saturating_sub(1)
    }
}

/// `H*(X) ⊗ Λ(u_1, ..., u_{u_max}[, v])` with `d(u_i) = p_i`, `d(v) = e`.
#[derive(Debug, Clone)]
pub struct KoszulModel {
    q: u32,
    base: ModelRing,
    bundle: BundleMap,
    dga: Dga,
}

impl KoszulModel {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn base(&self) -> &ModelRing {
        &self.base
    }

    pub fn bundle(&self) -> &BundleMap {
        &self.bundle
    }

    pub fn dga(&self) -> &Dga {
        &self.dga
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        self.dga.gens()
    }

    /// A base class seen inside the model.
    pub fn from_base(&self, x: &Element) -> Element {
        x.transport(self.gens(), &[], 0)
            .expect("model contains the base generators")
    }

    pub fn u(&self, i: u32) -> Element {
        Element::named(self.gens(), &format!("u{i}"))
    }

    pub fn v(&self) -> Option<Element> {
        (self.q % 2 == 0).then(|| Element::named(self.gens(), "v"))
    }

    pub fn total_dimension(&self, limit: u64) -> Option<u64> {
        self.gens().total_dimension(limit)
    }
}

/// Total dimension of the model that [`build_frame_model`] would produce.
pub fn frame_model_dimension(base: &ModelRing, q: u32, limit: u64) -> Option<u64> {
    let ext = u_max(q) + u32::from(q % 2 == 0);
    let base_dim = base.gens().total_dimension(limit)?;
    base_dim.checked_mul(1u64.checked_shl(ext)?).filter(|&d| d <= limit)
}

pub fn build_frame_model(base: &ModelRing, bundle: &BundleMap, q: u32) -> Result<KoszulModel, FrameError> {
    if q < 2 {
        return Err(FrameError::InvalidParameter(format!("codimension {q} has no frame model")));
    }
    if bundle.max_index() > q / 2 {
        return Err(FrameError::DegreeMismatch {
            q,
            reason: format!("p{} is nonzero for a rank-{q} bundle", bundle.max_index()),
        });
    }
    let euler = match (q % 2, bundle.euler()) {
        (0, Some(e)) => {
            if e.degrees().iter().any(|&d| d != q) {
                return Err(FrameError::DegreeMismatch { q, reason: "Euler class degree".into() });
            }
            Some(e.clone())
        }
        _ => None,
    };
    let mut exterior: Vec<Generator> = (1..=u_max(q))
        .map(|i| Generator { name: format!("u{i}"), degree: 4 * i - 1 })
        .collect();
    if q % 2 == 0 {
        exterior.push(Generator { name: "v".into(), degree: q - 1 });
    }
    let bg = base.gens();
    let gens = Arc::new(GeneratorSet::with_caps(
        exterior,
        bg.poly().to_vec(),
        bg.truncation(),
        bg.caps().to_vec(),
    )?);
    let lift = |x: &Element| x.transport(&gens, &[], 0).expect("same polynomial generators");
    let mut images: Vec<Element> = (1..=u_max(q)).map(|i| lift(&bundle.p(i))).collect();
    if q % 2 == 0 {
        images.push(euler.as_ref().map_or_else(|| Element::zero(&gens), lift));
    }
    images.extend((0..bg.poly().len()).map(|_| Element::zero(&gens)));
    let dga = Dga::new(gens, images)?;
    Ok(KoszulModel { q, base: base.clone(), bundle: bundle.clone(), dga })
}

/// The algebra map `Δ: W_q → model` on generators.
#[derive(Debug, Clone)]
pub struct CharacteristicAssignment {
    weil: Dga,
    /// Images of `y_1..y_q`, then `c_1..c_q`.
    images: Vec<Element>,
}

impl CharacteristicAssignment {
    /// `c_{2j} ↦ p_j`, `y_{2j} ↦ u_j`, `y_q ↦ e·v` for even `q`, odd-indexed
    /// generators to zero. Checks `Δ d = d Δ` on generators.
    pub fn new(model: &KoszulModel) -> Result<Self, FrameError> {
        let q = model.q;
        let weil = build_wq(q, true)?;
        let zero = Element::zero(model.gens());
        let lift = |x: &Element| model.from_base(x);
        let mut images = Vec::with_capacity(2 * q as usize);
        for i in 1..=q {
            let img = if i % 2 == 1 {
                zero.clone()
            } else if i / 2 <= u_max(q) {
                model.u(i / 2)
            } else {
                // i = q: the top Pontrjagin class is e^2 = d(e v)
                let e = model.bundle.euler().map_or_else(|| zero.clone(), lift);
                &e * &model.v().expect("q is even")
            };
            images.push(img);
        }
        for i in 1..=q {
            images.push(if i % 2 == 1 { zero.clone() } else { lift(&model.bundle.p(i / 2)) });
        }
        let delta = CharacteristicAssignment { weil, images };
        for id in delta.weil.gens().generator_ids() {
            let g = Element::generator(delta.weil.gens(), id);
            let lhs = delta.apply(&delta.weil.apply_d(&g), model);
            let rhs = model.dga.apply_d(&delta.apply(&g, model));
            if lhs != rhs {
                return Err(FrameError::NotAChainMap(delta.weil.gens().generator(id).name.clone()));
            }
        }
        Ok(delta)
    }

    pub fn weil(&self) -> &Dga {
        &self.weil
    }

    fn image(&self, id: GenId) -> &Element {
        match id {
            GenId::Exterior(i) => &self.images[i],
            GenId::Poly(i) => &self.images[self.weil.gens().exterior().len() + i],
        }
    }

    /// Multiplicative extension of `Δ`.
    pub fn apply(&self, x: &Element, model: &KoszulModel) -> Element {
        let mut out = Element::zero(model.gens());
        for (m, c) in x.terms() {
            let mut img = Element::one(model.gens());
            for i in m.exterior_indices() {
                img = &img * self.image(GenId::Exterior(i));
                if img.is_zero() {
                    break;
                }
            }
            for (g, &e) in m.exponents().iter().enumerate() {
                if e > 0 && !img.is_zero() {
                    img = &img * &self.image(GenId::Poly(g)).pow(e);
                }
            }
            out = &out + &img.scale(c);
        }
        out
    }
}

pub fn apply_characteristic(x: &Element, delta: &CharacteristicAssignment, model: &KoszulModel) -> Element {
    delta.apply(x, model)
}

/// One secondary class pushed into a frame model.
#[derive(Debug, Clone, Serialize)]
pub struct FrameClass {
    pub index: VeyIndex,
    pub degree: u32,
    pub image: String,
    pub cocycle: bool,
    pub nonzero: bool,
    pub rigid: bool,
    /// An explicit `w` with `d(w) = Δ(class)` when the image is exact.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VanishingCheck {
    pub index: VeyIndex,
    pub image: String,
    pub zero: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FrameReport {
    pub case: String,
    pub k: u32,
    pub q: u32,
    pub base: String,
    pub model_dimension: u64,
    pub classes: Vec<FrameClass>,
    pub rank: usize,
    pub independent: bool,
    pub vanishing: Vec<VanishingCheck>,
    pub pass: bool,
}

fn subsets(pool: &[u32]) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![Vec::new()];
    for &x in pool {
        let extended: Vec<Vec<u32>> = out
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s.push(x);
                s
            })
            .collect();
        out.extend(extended);
    }
    out.sort();
    out
}

fn guarded_model(base: &ModelRing, bundle: &BundleMap, q: u32, budget: u64) -> Result<(KoszulModel, u64), FrameError> {
    let dim = frame_model_dimension(base, q, budget).ok_or_else(|| FrameError::Budget {
        needed: format!("more than {budget}"),
        limit: budget,
    })?;
    Ok((build_frame_model(base, bundle, q)?, dim))
}

fn certify(
    case: &str,
    k: u32,
    model: &KoszulModel,
    model_dimension: u64,
    indices: Vec<VeyIndex>,
    vanishing: Vec<VeyIndex>,
) -> Result<FrameReport, FrameError> {
    let q = model.q;
    let delta = CharacteristicAssignment::new(model)?;
    let wg = delta.weil().gens();
    let mut images = Vec::new();
    let mut classes = Vec::new();
    for index in indices {
        if !index.is_vey(q) {
            return Err(FrameError::NotVey(index.to_string()));
        }
        let img = delta.apply(&index.element(wg)?, model);
        let cocycle = model.dga.apply_d(&img).is_zero();
        let (nonzero, witness) = if cocycle {
            let w = model.dga.coboundary_witness(&img)?;
            (w.is_none(), w.map(|w| w.to_string()))
        } else {
            (false, None)
        };
        classes.push(FrameClass {
            degree: index.degree(),
            rigid: index.is_rigid(q),
            image: img.to_string(),
            index,
            cocycle,
            nonzero,
            witness,
        });
        images.push(img);
    }
    let all_cocycles = classes.iter().all(|c| c.cocycle);
    let rank = if all_cocycles { model.dga.class_rank(&images)?.rank } else { 0 };
    let independent = all_cocycles && rank == classes.len();
    let vanishing: Vec<VanishingCheck> = vanishing
        .into_iter()
        .map(|index| {
            let img = delta.apply(&index.element(wg)?, model);
            Ok(VanishingCheck { zero: img.is_zero(), image: img.to_string(), index })
        })
        .collect::<Result<_, FrameError>>()?;
    let pass = independent
        && classes.iter().all(|c| c.nonzero && c.rigid)
        && vanishing.iter().all(|v| v.zero);
    Ok(FrameReport {
        case: case.into(),
        k,
        q,
        base: model.base.label(),
        model_dimension,
        classes,
        rank,
        independent,
        vanishing,
        pass,
    })
}

/// The classes `Δ(y_I ∧ c_2^k)`, `I = (2 < 2i_2 < ...)`, over `(CP2)^k` with
/// `q = 2k` and the Whitney sum of the canonical plane bundles.
pub fn verify_prop_2k(k: u32, budget: u64) -> Result<FrameReport, FrameError> {
    if k < 2 {
        return Err(FrameError::InvalidParameter(format!(
            "k = {k}: no class y_I c_2^k is rigid below k = 2"
        )));
    }
    let q = 2 * k;
    let base = ModelRing::power(Space::CP2, k as usize)?;
    let bundle = canonical_bundle(&base);
    let (model, dim) = guarded_model(&base, &bundle, q, budget)?;
    let pool: Vec<u32> = (2..=u_max(q)).map(|i| 2 * i).collect();
    let indices = subsets(&pool)
        .into_iter()
        .map(|tail| {
            let mut i = vec![2];
            i.extend(tail);
            VeyIndex::new(i, vec![2; k as usize])
        })
        .collect();
    certify("2k", k, &model, dim, indices, Vec::new())
}

/// The classes `Δ(y_I ∧ c_{2k})`, `I = (2k < 2i_2 < ...)`, over `S^{4k}` with
/// `q = 4k − 2` and `p_k = s`, plus the vanishing of `Δ(y_2 ∧ c_2^{2k−1})`.
pub fn verify_prop_4k2(k: u32, budget: u64) -> Result<FrameReport, FrameError> {
    if k < 2 {
        return Err(FrameError::InvalidParameter(format!("k = {k}: need q = 4k - 2 >= 6")));
    }
    let q = 4 * k - 2;
    let base = ModelRing::single(Space::Sphere(4 * k))?;
    let bundle = canonical_bundle(&base);
    let (model, dim) = guarded_model(&base, &bundle, q, budget)?;
    let pool: Vec<u32> = (k + 1..=u_max(q)).map(|i| 2 * i).collect();
    let indices = subsets(&pool)
        .into_iter()
        .map(|tail| {
            let mut i = vec![2 * k];
            i.extend(tail);
            VeyIndex::new(i, vec![2 * k])
        })
        .collect();
    let vanishing = vec![VeyIndex::new(vec![2], vec![2; 2 * k as usize - 1])];
    certify("4k2", k, &model, dim, indices, vanishing)
}

#[derive(Debug, Clone, Serialize)]
pub struct PermanenceClass {
    pub index: VeyIndex,
    pub degree: u32,
    /// `Tp_{r_1} ... Tp_{r_m} ⊗ χ`.
    pub image: String,
    pub nonzero: bool,
    pub rigid: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PermanenceReport {
    pub q: u32,
    pub seed: VeyIndex,
    pub r_list: Vec<u32>,
    pub classes: Vec<PermanenceClass>,
    pub rank: usize,
    pub independent: bool,
}

/// Twists a seed class with nonzero evaluation over `SO(q)`: in
/// `Λ(Tp_1, ..., [Te]) ⊗ H*(S^n)` the class `y_I ∧ y_{2r_1} ∧ ... ∧ c_J` maps
/// to `Tp_{r_1} ... ⊗ χ`. Every subset of `r_list` yields one class.
pub fn permanence_family(seed: &VeyIndex, q: u32, r_list: &[u32]) -> Result<PermanenceReport, FrameError> {
    if !seed.is_vey(q) || seed.is_unit() {
        return Err(FrameError::NotVey(seed.to_string()));
    }
    let largest = *seed.i.last().expect("Vey indices have nonempty I");
    for (pos, &r) in r_list.iter().enumerate() {
        if r == 0 || r > u_max(q) {
            return Err(FrameError::IndexOutOfRange(2 * r));
        }
        let floor = if pos == 0 { largest } else { 2 * r_list[pos - 1] };
        if 2 * r <= floor {
            return Err(FrameError::NotIncreasing { index: 2 * r, largest: floor });
        }
    }
    let n = seed.degree();
    let chi = Generator { name: "chi".into(), degree: n };
    let mut exterior: Vec<Generator> = (1..=u_max(q))
        .map(|r| Generator { name: format!("Tp{r}"), degree: 4 * r - 1 })
        .collect();
    if q % 2 == 0 {
        exterior.push(Generator { name: "Te".into(), degree: q - 1 });
    }
    let (poly, caps) = if n % 2 == 0 {
        (vec![chi], vec![crate::algebra::DegreeCap { gens: vec![0], max_degree: n }])
    } else {
        exterior.push(chi);
        (Vec::new(), Vec::new())
    };
    let gens = Arc::new(GeneratorSet::with_caps(exterior, poly, 0, caps)?);
    let model = Dga::trivial(Arc::clone(&gens));
    let chi = Element::named(&gens, "chi");

    let mut classes = Vec::new();
    let mut images = Vec::new();
    for subset in subsets(r_list) {
        let mut i = seed.i.clone();
        i.extend(subset.iter().map(|r| 2 * r));
        let index = VeyIndex::new(i, seed.j.clone());
        if !index.is_vey(q) {
            return Err(FrameError::NotVey(index.to_string()));
        }
        let image = subset
            .iter()
            .fold(Element::one(&gens), |acc, r| &acc * &Element::named(&gens, &format!("Tp{r}")));
        let image = &image * &chi;
        classes.push(PermanenceClass {
            degree: index.degree(),
            rigid: index.is_rigid(q),
            nonzero: model.class_nonzero(&image)?,
            image: image.to_string(),
            index,
        });
        images.push(image);
    }
    let rank = model.class_rank(&images)?.rank;
    Ok(PermanenceReport {
        q,
        seed: seed.clone(),
        r_list: r_list.to_vec(),
        independent: rank == classes.len(),
        rank,
        classes,
    })
}

/// `deg y_2 y_K c_2^{q/2} = 2q + 3 + Σ_{2r ∈ K} (4r − 1)`.
pub fn family_a_degree(q: u32, k: &[u32]) -> u32 {
    2 * q + 3 + k.iter().map(|&two_r| 2 * two_r - 1).sum::<u32>()
}

/// Checks `Δ d = d Δ` on `samples` pseudo-random elements of `W_q`.
pub fn chain_map_holds<R: rand::Rng>(
    delta: &CharacteristicAssignment,
    model: &KoszulModel,
    rng: &mut R,
    samples: usize,
) -> bool {
    let w = delta.weil();
    let top = w.top_degree().unwrap_or(0);
    let bases: Vec<_> = (0..=top).map(|n| w.gens().basis_of_degree(n)).collect();
    (0..samples).all(|_| {
        let mut x = Element::zero(w.gens());
        for _ in 0..3 {
            let b = &bases[rng.gen_range(0..bases.len())];
            if b.is_empty() {
                continue;
            }
            let m = b[rng.gen_range(0..b.len())].clone();
            x = &x + &Element::from_monomial(w.gens(), m, rat(rng.gen_range(-4..=4)));
        }
        delta.apply(&w.apply_d(&x), model) == model.dga.apply_d(&delta.apply(&x, model))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const BUDGET: u64 = 1_000_000;

    fn p(model: &KoszulModel, s: &str) -> Element {
        Element::parse(model.gens(), s).unwrap()
    }

    #[test]
    fn cp2_squared_model() {
        let base = ModelRing::power(Space::CP2, 2).unwrap();
        let m = build_frame_model(&base, &canonical_bundle(&base), 4).unwrap();
        assert_eq!(m.dga().apply_d(&m.u(1)), p(&m, "a1^2 + a2^2"));
        assert_eq!(m.dga().apply_d(&m.v().unwrap()), p(&m, "a1*a2"));
        assert_eq!(m.total_dimension(BUDGET), Some(36));
    }

    #[test]
    fn sphere_model() {
        let base = ModelRing::single(Space::Sphere(8)).unwrap();
        let m = build_frame_model(&base, &canonical_bundle(&base), 6).unwrap();
        assert_eq!(m.dga().apply_d(&m.u(2)), p(&m, "s"));
        assert!(m.dga().apply_d(&m.u(1)).is_zero());
        assert!(m.dga().apply_d(&m.v().unwrap()).is_zero());
    }

    #[test]
    fn zero_bundle_is_kunneth() {
        for (spaces, q) in [(vec![Space::CP2], 5u32), (vec![Space::CP2, Space::Sphere(4)], 4)] {
            let base = ModelRing::product(spaces).unwrap();
            let m = build_frame_model(&base, &BundleMap::zero(&base), q).unwrap();
            let h = m.dga().cohomology(None).unwrap();
            let base_gens = base.gens();
            let fiber: Vec<u32> = m.gens().exterior().iter().map(|g| g.degree).collect();
            for n in 0..=m.dga().top_degree().unwrap() {
                let mut expected = 0;
                for mask in 0u32..(1 << fiber.len()) {
                    let fd: u32 = (0..fiber.len()).filter(|b| mask >> b & 1 == 1).map(|b| fiber[b]).sum();
                    if fd <= n {
                        expected += base_gens.basis_of_degree(n - fd).len();
                    }
                }
                assert_eq!(h.dimension(n), expected, "degree {n}");
            }
        }
    }

    #[test]
    fn characteristic_map_images() {
        let base = ModelRing::power(Space::CP2, 2).unwrap();
        let m = build_frame_model(&base, &canonical_bundle(&base), 4).unwrap();
        let delta = CharacteristicAssignment::new(&m).unwrap();
        let x = Element::parse(delta.weil().gens(), "y2*c2^2").unwrap();
        assert_eq!(delta.apply(&x, &m), p(&m, "2*u1*a1^2*a2^2"));
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        assert!(chain_map_holds(&delta, &m, &mut rng, 100));

        let s = ModelRing::single(Space::Sphere(8)).unwrap();
        let ms = build_frame_model(&s, &canonical_bundle(&s), 6).unwrap();
        let ds = CharacteristicAssignment::new(&ms).unwrap();
        assert!(chain_map_holds(&ds, &ms, &mut rng, 100));
        let y2c2 = Element::parse(ds.weil().gens(), "y2*c2^3").unwrap();
        assert!(ds.apply(&y2c2, &ms).is_zero());
        let y4c4 = Element::parse(ds.weil().gens(), "y4*c4").unwrap();
        assert_eq!(ds.apply(&y4c4, &ms), p(&ms, "u2*s"));
    }

    #[test]
    fn euler_transgression_is_exact() {
        // in (CP2)^2 with q = 4, d(a1 a2 u1 v) = -(a1 a2)^2 u1, so the image
        // of y2 c2^2 is exact once v carries the Euler class
        let base = ModelRing::power(Space::CP2, 2).unwrap();
        let m = build_frame_model(&base, &canonical_bundle(&base), 4).unwrap();
        let w = p(&m, "a1*a2*u1*v");
        assert_eq!(m.dga().apply_d(&w), p(&m, "-a1^2*a2^2*u1"));
        let img = p(&m, "2*a1^2*a2^2*u1");
        assert!(!m.dga().class_nonzero(&img).unwrap());

        // without the Euler transgression the class survives
        let no_euler = BundleMap::new(&base, vec![canonical_bundle(&base).p(1), canonical_bundle(&base).p(2)], None).unwrap();
        let m0 = build_frame_model(&base, &no_euler, 4).unwrap();
        assert!(m0.dga().class_nonzero(&Element::parse(m0.gens(), "a1^2*a2^2*u1").unwrap()).unwrap());
    }

    #[test]
    fn prop_4k2() {
        let rep = verify_prop_4k2(2, BUDGET).unwrap();
        assert_eq!(rep.q, 6);
        assert_eq!(rep.classes.len(), 1);
        assert_eq!(rep.classes[0].index.to_string(), "y4c4");
        assert!(rep.classes[0].nonzero && rep.classes[0].rigid);
        assert!(rep.vanishing[0].zero);
        assert!(rep.pass);
        let rep3 = verify_prop_4k2(3, BUDGET).unwrap();
        assert_eq!(rep3.classes.len(), 2);
        assert!(rep3.pass);
        assert!(verify_prop_4k2(1, BUDGET).is_err());
    }

    #[test]
    fn prop_2k_images() {
        let rep = verify_prop_2k(2, BUDGET).unwrap();
        assert_eq!(rep.model_dimension, 36);
        assert_eq!(rep.classes.len(), 1);
        assert!(rep.classes[0].cocycle && rep.classes[0].rigid);
        assert_eq!(rep.classes[0].image, "2*u1*a1^2*a2^2");
        assert!(!rep.classes[0].nonzero && rep.classes[0].witness.is_some());
        let rep3 = verify_prop_2k(3, BUDGET).unwrap();
        assert_eq!(rep3.model_dimension, 216);
        let names: Vec<String> = rep3.classes.iter().map(|c| c.index.to_string()).collect();
        assert_eq!(names, vec!["y2c2^3", "y2y4c2^3"]);
        assert!(matches!(verify_prop_2k(1, BUDGET), Err(FrameError::InvalidParameter(_))));
        assert!(matches!(verify_prop_2k(3, 100), Err(FrameError::Budget { .. })));
    }

    #[test]
    fn permanence() {
        let seed4 = VeyIndex::new(vec![2], vec![2, 2]);
        let r = permanence_family(&seed4, 4, &[]).unwrap();
        assert_eq!(r.classes.len(), 1);
        assert_eq!(r.classes[0].degree, 11);

        let seed6 = VeyIndex::new(vec![2], vec![2, 2, 2]);
        let r = permanence_family(&seed6, 6, &[2]).unwrap();
        let got: Vec<(String, u32, bool)> =
            r.classes.iter().map(|c| (c.index.to_string(), c.degree, c.nonzero)).collect();
        assert_eq!(got, vec![("y2c2^3".into(), 15, true), ("y2y4c2^3".into(), 22, true)]);
        assert_eq!(r.classes[1].image, "Tp2*chi");
        assert!(r.independent);

        let seed_b = VeyIndex::new(vec![4], vec![4]);
        assert!(matches!(
            permanence_family(&seed_b, 6, &[2]),
            Err(FrameError::NotIncreasing { .. })
        ));
        assert!(matches!(permanence_family(&seed6, 6, &[3]), Err(FrameError::IndexOutOfRange(6))));
    }

    #[test]
    fn degree_identity() {
        assert_eq!(family_a_degree(4, &[]), 11);
        assert_eq!(family_a_degree(6, &[]), 15);
        assert_eq!(family_a_degree(6, &[4]), 22);
        for q in (4..=12).step_by(2) {
            for e in crate::weil::enumerate_rqs(q).unwrap() {
                if e.family == crate::weil::Family::A {
                    assert_eq!(family_a_degree(q, &e.index.i[1..]), e.degree);
                }
            }
        }
    }
}
