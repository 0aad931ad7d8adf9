//! Truncated Weil algebras, the Vey basis, rigid classes and the spherical
//! rigid families.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Element, GenId, Generator, GeneratorSet, Monomial};
use crate::dga::Dga;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeilError {
    #[error("codimension must be even and at least 4, got {0}")]
    OddCodimension(u32),
    #[error("codimension must be at least 1")]
    ZeroCodimension,
    #[error("index {0} is not an exterior generator of this algebra")]
    MissingGenerator(u32),
    #[error("cannot parse {0:?} as y_I c_J")]
    Parse(String),
}

/// Indices `i` whose `y_i` is present: all of `1..=q` when framed, odd ones otherwise.
pub fn exterior_indices(q: u32, framed: bool) -> Vec<u32> {
    (1..=q).filter(|i| framed || i % 2 == 1).collect()
}

/// `W_q` (framed) or `WO_q`: `Λ(y_i) ⊗ Q[c_1..c_q]` truncated above `2q`,
/// with `d(y_i) = c_i`.
pub fn build_wq(q: u32, framed: bool) -> Result<Dga, WeilError> {
    if q == 0 {
        return Err(WeilError::ZeroCodimension);
    }
    let ys = exterior_indices(q, framed);
    let gens = Arc::new(
        GeneratorSet::new(
            ys.iter()
                .map(|&i| Generator { name: format!("y{i}"), degree: 2 * i - 1 })
                .collect(),
            (1..=q)
                .map(|i| Generator { name: format!("c{i}"), degree: 2 * i })
                .collect(),
            2 * q,
        )
        .expect("Weil generators are well formed"),
    );
    let mut images: Vec<Element> = ys
        .iter()
        .map(|&i| Element::generator(&gens, GenId::Poly(i as usize - 1)))
        .collect();
    images.extend((0..q).map(|_| Element::zero(&gens)));
    Ok(Dga::new(gens, images).expect("d(y_i) = c_i is a valid differential"))
}

/// A monomial `y_I c_J` with `I` strictly increasing and `J` nondecreasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VeyIndex {
    pub i: Vec<u32>,
    pub j: Vec<u32>,
}

impl VeyIndex {
    pub fn new(mut i: Vec<u32>, mut j: Vec<u32>) -> Self {
        i.sort_unstable();
        i.dedup();
        j.sort_unstable();
        VeyIndex { i, j }
    }

    pub fn is_unit(&self) -> bool {
        self.i.is_empty() && self.j.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.i.iter().map(|&i| 2 * i - 1).sum::<u32>() + 2 * self.j.iter().sum::<u32>()
    }

    fn j_sum(&self) -> u32 {
        self.j.iter().sum()
    }

    /// `Σj ≤ q`, `i₁ + Σj ≥ q + 1`, `i₁ ≤ j₁`.
    pub fn is_vey(&self, q: u32) -> bool {
        if self.is_unit() {
            return true;
        }
        let (Some(&i1), Some(&j1)) = (self.i.first(), self.j.first()) else {
            return false;
        };
        self.i.iter().all(|&i| (1..=q).contains(&i))
            && self.i.windows(2).all(|w| w[0] < w[1])
            && self.j.windows(2).all(|w| w[0] <= w[1])
            && j1 >= 1
            && self.j_sum() <= q
            && i1 + self.j_sum() > q
            && i1 <= j1
    }

    /// `i₁ + Σj ≥ q + 2`.
    pub fn is_rigid(&self, q: u32) -> bool {
        self.i
            .first()
            .is_some_and(|&i1| i1 + self.j_sum() >= q + 2)
    }

    /// The monomial `y_I c_J` in `gens`, which must name `y_i` and `c_j` as
    /// `y{i}` and `c{j}`.
    pub fn monomial(&self, gens: &GeneratorSet) -> Result<Monomial, WeilError> {
        let mut ext = Vec::with_capacity(self.i.len());
        for &i in &self.i {
            match gens.find(&format!("y{i}")) {
                Some(GenId::Exterior(k)) => ext.push(k),
                _ => return Err(WeilError::MissingGenerator(i)),
            }
        }
        let mut exps = vec![0u32; gens.poly().len()];
        for &j in &self.j {
            match gens.find(&format!("c{j}")) {
                Some(GenId::Poly(k)) => exps[k] += 1,
                _ => return Err(WeilError::MissingGenerator(j)),
            }
        }
        Ok(Monomial::from_parts(&ext, exps).expect("indices are distinct"))
    }

    pub fn element(&self, gens: &Arc<GeneratorSet>) -> Result<Element, WeilError> {
        Ok(Element::from_monomial(gens, self.monomial(gens)?, crate::algebra::rat(1)))
    }
}

impl fmt::Display for VeyIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        for i in &self.i {
            write!(f, "y{i}")?;
        }
        let mut k = 0;
        while k < self.j.len() {
            let j = self.j[k];
            let run = self.j[k..].iter().take_while(|&&x| x == j).count();
            if run == 1 {
                write!(f, "c{j}")?;
            } else {
                write!(f, "c{j}^{run}")?;
            }
            k += run;
        }
        Ok(())
    }
}

impl std::str::FromStr for VeyIndex {
    type Err = WeilError;

    /// Accepts the display form, e.g. `y2y4c2^3` or `y1c1^2c2`, with optional
    /// `*` separators.
    fn from_str(text: &str) -> Result<Self, WeilError> {
        let err = || WeilError::Parse(text.to_string());
        let t: String = text.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if t == "1" {
            return Ok(VeyIndex::new(Vec::new(), Vec::new()));
        }
        let bytes = t.as_bytes();
        let (mut i, mut j) = (Vec::new(), Vec::new());
        let mut pos = 0;
        let number = |pos: &mut usize| -> Result<u32, WeilError> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            t[start..*pos].parse::<u32>().ok().filter(|&n| n > 0).ok_or_else(err)
        };
        while pos < bytes.len() {
            let kind = bytes[pos];
            pos += 1;
            let n = number(&mut pos)?;
            let mut e = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                e = number(&mut pos)?;
            }
            match kind {
                b'y' if e == 1 && !i.contains(&n) => i.push(n),
                b'c' => j.extend(std::iter::repeat(n).take(e as usize)),
                _ => return Err(err()),
            }
        }
        if i.is_empty() && j.is_empty() {
            return Err(err());
        }
        Ok(VeyIndex::new(i, j))
    }
}

/// Nondecreasing sequences of positive integers with sum at most `max_sum`
/// and every part at least `min_part`, in lexicographic order.
fn partitions_up_to(max_sum: u32, min_part: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, min_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        for p in min_part..=rest {
            cur.push(p);
            out.push(cur.clone());
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(max_sum, min_part.max(1), &mut Vec::new(), &mut out);
    out
}

/// All subsets of `pool` (sorted), each in increasing order, lexicographically.
fn subsets(pool: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for (k, &x) in pool.iter().enumerate() {
        for mut tail in subsets(&pool[k + 1..]) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out.sort();
    out
}

/// The Vey basis of `H^+(W_q)` (unit excluded), sorted by `I` then `J`, with
/// an optional inclusive degree window.
pub fn vey_basis(q: u32, degrees: Option<(u32, u32)>) -> Vec<VeyIndex> {
    let mut out = Vec::new();
    for j in partitions_up_to(q, 1) {
        let sj: u32 = j.iter().sum();
        let lo = (q + 1).saturating_sub(sj).max(1);
        for i1 in lo..=j[0].min(q) {
            let tail_pool: Vec<u32> = (i1 + 1..=q).collect();
            for tail in subsets(&tail_pool) {
                let mut i = vec![i1];
                i.extend(tail);
                let v = VeyIndex { i, j: j.clone() };
                if degrees.map_or(true, |(a, b)| (a..=b).contains(&v.degree())) {
                    out.push(v);
                }
            }
        }
    }
    out.sort();
    out
}

/// Number of Vey classes and of rigid ones, counted without enumerating `I`.
pub fn vey_class_counts(q: u32) -> (u128, u128) {
    let (mut total, mut rigid) = (0u128, 0u128);
    for j in partitions_up_to(q, 1) {
        let sj: u32 = j.iter().sum();
        let lo = (q + 1).saturating_sub(sj).max(1);
        for i1 in lo..=j[0].min(q) {
            let tails = 1u128 << (q - i1);
            total += tails;
            if i1 + sj >= q + 2 {
                rigid += tails;
            }
        }
    }
    (total, rigid)
}

/// Number of Vey classes per positive degree.
pub fn vey_counts(q: u32) -> BTreeMap<u32, usize> {
    let mut counts = BTreeMap::new();
    for v in vey_basis(q, None) {
        *counts.entry(v.degree()).or_insert(0) += 1;
    }
    counts
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    /// `y₂ ∧ y_K ∧ c₂^{q/2}`
    A,
    /// `y_{2k} ∧ c_{2k}` with `q = 4k − 2`
    B,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RigidFamilyEntry {
    pub index: VeyIndex,
    pub degree: u32,
    pub family: Family,
}

/// `⌊(q + 2) / 4⌋`, the largest admissible `k` in `y_{2k}` for family A.
pub fn family_a_bound(q: u32) -> u32 {
    (q + 2) / 4
}

/// The spherically supported rigid classes for even `q ≥ 4`.
pub fn enumerate_rqs(q: u32) -> Result<Vec<RigidFamilyEntry>, WeilError> {
    if q % 2 == 1 || q < 4 {
        return Err(WeilError::OddCodimension(q));
    }
    let m = q / 2;
    let pool: Vec<u32> = (2..=family_a_bound(q)).map(|k| 2 * k).collect();
    let mut out = Vec::new();
    for k in subsets(&pool) {
        let mut i = vec![2];
        i.extend(k);
        out.push(VeyIndex { i, j: vec![2; m as usize] });
    }
    let mut entries: Vec<RigidFamilyEntry> = out
        .into_iter()
        .map(|index| RigidFamilyEntry { degree: index.degree(), index, family: Family::A })
        .collect();
    if q % 4 == 2 {
        let k = (q + 2) / 4;
        let index = VeyIndex { i: vec![2 * k], j: vec![2 * k] };
        entries.push(RigidFamilyEntry { degree: index.degree(), index, family: Family::B });
    }
    for e in &entries {
        assert!(
            e.index.is_vey(q) && e.index.is_rigid(q),
            "{} is not a rigid Vey class for q = {q}",
            e.index
        );
    }
    entries.sort_by(|a, b| (a.degree, a.family, &a.index).cmp(&(b.degree, b.family, &b.index)));
    Ok(entries)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RigidCountRow {
    pub q: u32,
    pub vey: u128,
    pub rigid: u128,
    /// `None` when `q` is odd or below 4.
    pub rqs: Option<usize>,
    pub family_a: Option<usize>,
    pub rqs_degrees: Vec<u32>,
}

/// Exact counts of Vey classes, rigid classes and spherical rigid families.
pub fn rigid_count_table(q_max: u32) -> Vec<RigidCountRow> {
    (1..=q_max)
        .map(|q| {
            let (vey, rigid) = vey_class_counts(q);
            let rqs = enumerate_rqs(q).ok();
            RigidCountRow {
                q,
                vey,
                rigid,
                rqs: rqs.as_ref().map(Vec::len),
                family_a: rqs
                    .as_ref()
                    .map(|r| r.iter().filter(|e| e.family == Family::A).count()),
                rqs_degrees: rqs
                    .map(|r| r.iter().map(|e| e.degree).collect())
                    .unwrap_or_default(),
            }
        })
        .collect()
}
