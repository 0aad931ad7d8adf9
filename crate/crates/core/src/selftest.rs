//! Executable acceptance criteria. Each check returns a named verdict with a
//! short detail line and is timed against its budget.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{rat, ratio, Element, GeneratorSet, Monomial};
use crate::dga::Dga;
use crate::frame::{verify_prop_2k, verify_prop_4k2, FrameReport};
use crate::pontrjagin::{independence_certificate, inverse_factorial, verify_symmetric_multiple};
use crate::weil::{build_wq, enumerate_rqs, family_a_bound, vey_counts, Family, VeyIndex};

/// Model-size guard for the frame certificates.
pub const FRAME_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub budget_ms: Option<u128>,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2} {:<24} {} ({} ms)",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed_ms
        )
    }
}

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub budget: Option<Duration>,
    check: fn() -> Result<String, String>,
}

impl Criterion {
    pub fn run(&self) -> CriterionResult {
        let start = Instant::now();
        let outcome = (self.check)();
        let elapsed = start.elapsed();
        let over = self.budget.is_some_and(|b| elapsed > b);
        let (pass, mut detail) = match outcome {
            Ok(d) => (!over, d),
            Err(d) => (false, d),
        };
        if over {
            detail = format!("time budget exceeded: {detail}");
        }
        CriterionResult {
            id: self.id,
            name: self.name,
            pass,
            detail,
            elapsed_ms: elapsed.as_millis(),
            budget_ms: self.budget.map(|b| b.as_millis()),
        }
    }
}

pub fn criteria() -> Vec<Criterion> {
    let secs = |s| Some(Duration::from_secs(s));
    vec![
        Criterion { id: 1, name: "algebra-laws", budget: secs(30), check: algebra_laws },
        Criterion { id: 2, name: "vey-oracle", budget: secs(120), check: vey_oracle },
        Criterion { id: 3, name: "godbillon-vey", budget: None, check: godbillon_vey },
        Criterion { id: 4, name: "pontrjagin-independence", budget: secs(60), check: pontrjagin_independence },
        Criterion { id: 5, name: "symmetric-multiple", budget: None, check: symmetric_multiple },
        Criterion { id: 6, name: "cp2-product-classes", budget: secs(120), check: cp2_product_classes },
        Criterion { id: 7, name: "sphere-classes", budget: None, check: sphere_classes },
        Criterion { id: 8, name: "rigid-families", budget: None, check: rigid_families },
        Criterion { id: 9, name: "growth-table", budget: None, check: growth_table },
        Criterion { id: 10, name: "cross-module", budget: None, check: cross_module },
    ]
}

pub fn run(id: u32) -> Option<CriterionResult> {
    criteria().into_iter().find(|c| c.id == id).map(|c| c.run())
}

pub fn run_all() -> Vec<CriterionResult> {
    criteria().iter().map(Criterion::run).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_monomials(gens: &GeneratorSet) -> Vec<Monomial> {
    let top = gens.top_degree().expect("finite");
    (0..=top).flat_map(|n| gens.basis_of_degree(n)).collect()
}

fn mono(gens: &Arc<GeneratorSet>, m: &Monomial) -> Element {
    Element::from_monomial(gens, m.clone(), rat(1))
}

fn commutator_ok(a: &Element, b: &Element) -> bool {
    let (Some(da), Some(db)) = (a.homogeneous_degree(), b.homogeneous_degree()) else {
        return true;
    };
    let ab = a * b;
    let ba = b * a;
    if da % 2 == 1 && db % 2 == 1 {
        ab == -&ba
    } else {
        ab == ba
    }
}

fn leibniz_ok(dga: &Dga, a: &Element, b: &Element) -> bool {
    let Some(da) = a.homogeneous_degree() else {
        return true;
    };
    let mut second = a * &dga.apply_d(b);
    if da % 2 == 1 {
        second = -&second;
    }
    dga.apply_d(&(a * b)) == &(&dga.apply_d(a) * b) + &second
}

fn random_homogeneous(gens: &Arc<GeneratorSet>, bases: &[Vec<Monomial>], rng: &mut ChaCha8Rng) -> Element {
    let nonempty: Vec<&Vec<Monomial>> = bases.iter().filter(|b| !b.is_empty()).collect();
    let basis = nonempty[rng.gen_range(0..nonempty.len())];
    let mut x = Element::zero(gens);
    for _ in 0..rng.gen_range(1..=3) {
        let m = basis[rng.gen_range(0..basis.len())].clone();
        let c = ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4));
        x = &x + &Element::from_monomial(gens, m, c);
    }
    x
}

/// Graded commutativity, associativity, Leibniz and `d^2 = 0`: exhaustive on
/// `W_1`, `W_2`, then 1000 seeded random checks over `W_3..W_6`.
fn algebra_laws() -> Result<String, String> {
    let mut checks = 0usize;
    for q in 1..=2 {
        let w = build_wq(q, true).expect("q >= 1");
        let gens = Arc::clone(w.gens());
        let all: Vec<Element> = all_monomials(&gens).iter().map(|m| mono(&gens, m)).collect();
        for a in &all {
            ensure(w.apply_d(&w.apply_d(a)).is_zero(), || format!("d^2 != 0 on {a} in W_{q}"))?;
            for b in &all {
                ensure(commutator_ok(a, b), || format!("graded-commutativity fails for {a}, {b} in W_{q}"))?;
                ensure(leibniz_ok(&w, a, b), || format!("Leibniz fails for {a}, {b} in W_{q}"))?;
                for c in &all {
                    ensure(&(a * b) * c == a * &(b * c), || format!("associativity fails in W_{q}"))?;
                    checks += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let models: Vec<(Dga, Vec<Vec<Monomial>>)> = (3..=6)
        .map(|q| {
            let w = build_wq(q, true).expect("q >= 1");
            let top = w.top_degree().expect("finite");
            let bases = (0..=top).map(|n| w.gens().basis_of_degree(n)).collect();
            (w, bases)
        })
        .collect();
    for trial in 0..1000 {
        let (w, bases) = &models[trial % models.len()];
        let gens = w.gens();
        let a = random_homogeneous(gens, bases, &mut rng);
        let b = random_homogeneous(gens, bases, &mut rng);
        let c = random_homogeneous(gens, bases, &mut rng);
        ensure(commutator_ok(&a, &b), || format!("graded-commutativity fails for {a}, {b}"))?;
        ensure(&(&a * &b) * &c == &a * &(&b * &c), || format!("associativity fails for {a}, {b}, {c}"))?;
        ensure(leibniz_ok(w, &a, &b), || format!("Leibniz fails for {a}, {b}"))?;
        ensure(w.apply_d(&w.apply_d(&(&a + &c))).is_zero(), || format!("d^2 != 0 on {a}"))?;
        checks += 1;
    }
    Ok(format!("{checks} exact checks"))
}

/// Per-degree Vey counts against exact cohomology of `W_1..W_3`.
fn vey_oracle() -> Result<String, String> {
    let mut summary = Vec::new();
    for q in 1..=3 {
        let h = build_wq(q, true)
            .expect("q >= 1")
            .cohomology(None)
            .map_err(|e| e.to_string())?;
        let mut dims = h.dimensions();
        ensure(dims.remove(&0) == Some(1), || format!("H^0(W_{q}) is not one-dimensional"))?;
        let vey = vey_counts(q);
        ensure(dims == vey, || format!("W_{q}: cohomology {dims:?} vs Vey {vey:?}"))?;
        summary.push(format!("W_{q}: {} classes", vey.values().sum::<usize>()));
    }
    Ok(summary.join(", "))
}

fn godbillon_vey() -> Result<String, String> {
    let w1 = build_wq(1, true).expect("q >= 1");
    let h = w1.cohomology(None).map_err(|e| e.to_string())?;
    let dims = h.dimensions();
    ensure(dims == BTreeMap::from([(0, 1), (3, 1)]), || format!("H*(W_1) = {dims:?}"))?;
    let gv = Element::parse(w1.gens(), "y1*c1").expect("valid");
    ensure(h.per_degree[&3].representatives == vec![gv], || "degree-3 representative is not y1*c1".into())?;
    for q in 1..=2 {
        let wo = build_wq(q, false).expect("q >= 1");
        let x = Element::parse(wo.gens(), &format!("y1*c1^{q}")).expect("valid");
        let nonzero = wo.class_nonzero(&x).map_err(|e| e.to_string())?;
        ensure(nonzero, || format!("y1*c1^{q} vanishes in H*(WO_{q})"))?;
    }
    Ok("H*(W_1) = {0:1, 3:1}; y1*c1^q nonzero in WO_1, WO_2".into())
}

fn pontrjagin_independence() -> Result<String, String> {
    for q in [2, 4, 6, 8, 10] {
        let rep = independence_certificate(q).map_err(|e| e.to_string())?;
        ensure(rep.pass, || {
            let bad: Vec<u32> = rep.blocks.iter().filter(|b| !b.pass).map(|b| b.degree).collect();
            format!("q = {q}: rank-deficient blocks in degrees {bad:?}")
        })?;
        if q == 6 {
            let b8 = rep.blocks.iter().find(|b| b.degree == 8).ok_or("q = 6 has no degree-8 block")?;
            let expected = vec![vec![rat(2), rat(0)], vec![rat(1), rat(1)]];
            ensure(b8.matrix == expected, || format!("q = 6 degree-8 block is {:?}", b8.matrix))?;
        }
    }
    Ok("full rank for q in {2,4,6,8,10}; q=6 degree 8 block [[2,0],[1,1]]".into())
}

fn symmetric_multiple() -> Result<String, String> {
    let mut n = 0;
    for k in 1..=5usize {
        for l in 1..=k as u32 {
            let (r, holds) = verify_symmetric_multiple(k, l).map_err(|e| e.to_string())?;
            ensure(holds && r == inverse_factorial(l), || format!("k = {k}, l = {l}: ratio {r}, proportional {holds}"))?;
            n += 1;
        }
    }
    Ok(format!("p_l = p_1^l / l! in all {n} cases with l <= k <= 5"))
}

fn frame_summary(rep: &FrameReport) -> String {
    rep.classes
        .iter()
        .map(|c| {
            let verdict = if c.nonzero {
                "nonzero".to_string()
            } else {
                match &c.witness {
                    Some(w) => format!("exact, d({w})"),
                    None => "not a cocycle".into(),
                }
            };
            format!("{} -> {} [{verdict}]", c.index, c.image)
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// `Δ(y_I ∧ c_2^k)` over `(CP2)^k` for `k = 2, 3`.
fn cp2_product_classes() -> Result<String, String> {
    let mut lines = Vec::new();
    let mut failures = Vec::new();
    for k in [2, 3] {
        let rep = verify_prop_2k(k, FRAME_BUDGET).map_err(|e| e.to_string())?;
        if k == 2 {
            let image = rep.classes.first().map(|c| c.image.as_str());
            ensure(image == Some("2*u1*a1^2*a2^2"), || format!("k = 2 image is {image:?}"))?;
        }
        if !(rep.independent && rep.classes.iter().all(|c| c.nonzero)) {
            failures.push(format!("k = {k}: {}", frame_summary(&rep)));
        }
        lines.push(format!("k = {k}: rank {} of {}", rep.rank, rep.classes.len()));
    }
    if failures.is_empty() {
        Ok(lines.join(", "))
    } else {
        Err(format!("classes are coboundaries once v transgresses to the Euler class: {}", failures.join(" | ")))
    }
}

fn sphere_classes() -> Result<String, String> {
    let rep = verify_prop_4k2(2, FRAME_BUDGET).map_err(|e| e.to_string())?;
    let y4c4 = rep
        .classes
        .iter()
        .find(|c| c.index == VeyIndex::new(vec![4], vec![4]))
        .ok_or("y4c4 missing")?;
    ensure(y4c4.image == "u2*s" && y4c4.nonzero, || format!("y4c4 -> {} nonzero {}", y4c4.image, y4c4.nonzero))?;
    ensure(rep.vanishing.iter().all(|v| v.zero), || "y2c2^3 has nonzero image".into())?;
    ensure(rep.pass, || frame_summary(&rep))?;
    Ok("y4c4 -> u2*s nonzero; y2c2^3 -> 0".into())
}

fn rigid_families() -> Result<String, String> {
    let show = |q| -> Result<Vec<(String, u32)>, String> {
        Ok(enumerate_rqs(q)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|e| (e.index.to_string(), e.degree))
            .collect())
    };
    let r4 = show(4)?;
    ensure(r4 == vec![("y2c2^2".to_string(), 11)], || format!("q = 4: {r4:?}"))?;
    let r6 = show(6)?;
    let mut degrees: Vec<u32> = r6.iter().map(|e| e.1).collect();
    degrees.sort_unstable();
    ensure(r6.len() == 3 && degrees == vec![15, 15, 22], || format!("q = 6: {r6:?}"))?;
    Ok("q=4: y2c2^2 (11); q=6: degrees 15, 15, 22".into())
}

/// `|A| = 2^{⌊(q+2)/4⌋ − 1}` for even `q ≤ 30`, monotone, and `|A| ≥ q²/32`
/// from `q = 8` on.
fn growth_table() -> Result<String, String> {
    let mut prev = 0usize;
    let mut below = Vec::new();
    for q in (4..=30).step_by(2) {
        let a = enumerate_rqs(q)
            .map_err(|e| e.to_string())?
            .iter()
            .filter(|e| e.family == Family::A)
            .count();
        let expected = 1usize << (family_a_bound(q) - 1);
        ensure(a == expected, || format!("q = {q}: |A| = {a}, expected {expected}"))?;
        ensure(a >= prev, || format!("not monotone at q = {q}"))?;
        prev = a;
        if q >= 8 && 32 * a < (q * q) as usize {
            below.push(format!("q = {q}: |A| = {a} < {}/32", q * q));
        }
    }
    ensure(below.is_empty(), || format!("lower bound q^2/32 fails: {}", below.join(", ")))?;
    Ok("closed form, monotone, above q^2/32 for 8 <= q <= 30".into())
}

fn cross_module() -> Result<String, String> {
    let mut n = 0;
    for q in (4..=30).step_by(2) {
        for e in enumerate_rqs(q).map_err(|e| e.to_string())? {
            ensure(e.index.is_vey(q) && e.index.is_rigid(q), || format!("{} for q = {q}", e.index))?;
            n += 1;
        }
    }
    let reports = [
        verify_prop_2k(2, FRAME_BUDGET),
        verify_prop_2k(3, FRAME_BUDGET),
        verify_prop_4k2(2, FRAME_BUDGET),
    ];
    for rep in reports {
        let rep = rep.map_err(|e| e.to_string())?;
        for c in &rep.classes {
            ensure(c.index.is_vey(rep.q) && c.rigid, || format!("{} is not a rigid Vey class for q = {}", c.index, rep.q))?;
            n += 1;
        }
    }
    Ok(format!("{n} classes checked"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criteria_are_numbered_in_order() {
        let ids: Vec<u32> = criteria().iter().map(|c| c.id).collect();
        assert_eq!(ids, (1..=10).collect::<Vec<_>>());
    }

    #[test]
    fn budget_overrun_is_named() {
        let c = Criterion {
            id: 0,
            name: "slow",
            budget: Some(Duration::ZERO),
            check: || {
                std::thread::sleep(Duration::from_millis(2));
                Ok("done".into())
            },
        };
        let r = c.run();
        assert!(!r.pass);
        assert!(r.detail.contains("budget"));
    }

    #[test]
    fn failure_detail_names_the_law() {
        let c = Criterion { id: 0, name: "x", budget: None, check: || Err("graded-commutativity fails".into()) };
        let r = c.run();
        assert!(r.line().starts_with("[FAIL]"));
        assert!(r.detail.contains("graded-commutativity"));
    }
}
