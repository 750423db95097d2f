//! Wiring diagrams of square-free braids, good strands and Mikado braids in
//! types A and B.
//!
//! Strands are named by their starting slot. A positive crossing `σ_i`
//! carries the strand in slot `i+1` over the strand in slot `i`.

pub mod svg;

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;

use crate::coxeter::{type_b_embedding, CoxeterElement, CoxeterGroup, CoxeterType, Family};
use crate::error::{Error, Result};
use crate::garside::{BraidGroup, GarsideNormalForm, StrandSigns};

/// One crossing: the strands in the lower and upper slot just before it,
/// and which one passes over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub lower: usize,
    pub upper: usize,
    pub over: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WiringDiagram {
    /// Strand names present, in starting-slot order.
    strands: Vec<usize>,
    crossings: Vec<Crossing>,
}

impl WiringDiagram {
    /// Diagram of a signed word on `strand_count` strands.
    pub fn from_letters(strand_count: usize, letters: &[i32]) -> Result<Self> {
        let mut slots: Vec<usize> = (0..strand_count).collect();
        let mut crossings = Vec::with_capacity(letters.len());
        for &l in letters {
            let i = l.unsigned_abs() as usize - 1;
            if l == 0 || i + 1 >= strand_count {
                return Err(Error::Domain(format!("letter {l} on {strand_count} strands")));
            }
            let (lower, upper) = (slots[i], slots[i + 1]);
            crossings.push(Crossing { lower, upper, over: if l > 0 { upper } else { lower } });
            slots.swap(i, i + 1);
        }
        Ok(WiringDiagram { strands: (0..strand_count).collect(), crossings })
    }

    pub fn strand_count(&self) -> usize {
        self.strands.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Signed letters with slots recomputed over the remaining strands.
    pub fn letters(&self) -> Vec<i32> {
        let mut slots = self.strands.clone();
        self.crossings
            .iter()
            .map(|c| {
                let i = slots.iter().position(|&s| s == c.lower).expect("strand present");
                debug_assert_eq!(slots[i + 1], c.upper);
                slots.swap(i, i + 1);
                let sign = if c.over == c.upper { 1 } else { -1 };
                sign * (i as i32 + 1)
            })
            .collect()
    }

    /// Final slot order of the strands.
    pub fn end_order(&self) -> Vec<usize> {
        let mut slots = self.strands.clone();
        for c in &self.crossings {
            let i = slots.iter().position(|&s| s == c.lower).expect("strand present");
            slots.swap(i, i + 1);
        }
        slots
    }

    /// No pair of strands crosses twice.
    pub fn crosses_at_most_once(&self) -> bool {
        let mut seen = HashSet::new();
        self.crossings
            .iter()
            .all(|c| seen.insert((c.lower.min(c.upper), c.lower.max(c.upper))))
    }

    fn is_over_everywhere(&self, s: usize) -> bool {
        self.crossings
            .iter()
            .filter(|c| c.lower == s || c.upper == s)
            .all(|c| c.over == s)
    }

    fn is_under_everywhere(&self, s: usize) -> bool {
        self.crossings
            .iter()
            .filter(|c| c.lower == s || c.upper == s)
            .all(|c| c.over != s)
    }

    /// Strands lying over every strand they cross.
    pub fn good_strands(&self) -> BTreeSet<usize> {
        self.strands.iter().copied().filter(|&s| self.is_over_everywhere(s)).collect()
    }

    pub fn remove_strand(&self, s: usize) -> WiringDiagram {
        WiringDiagram {
            strands: self.strands.iter().copied().filter(|&x| x != s).collect(),
            crossings: self
                .crossings
                .iter()
                .copied()
                .filter(|c| c.lower != s && c.upper != s)
                .collect(),
        }
    }

    /// Repeatedly removes the good strand ending highest; succeeds when no
    /// strand is left.
    pub fn is_mikado(&self) -> bool {
        let mut d = self.clone();
        while !d.strands.is_empty() {
            let good = d.good_strands();
            let end = d.end_order();
            let Some(&pick) = end.iter().rev().find(|s| good.contains(s)) else {
                return false;
            };
            d = d.remove_strand(pick);
        }
        true
    }

    /// Type B removal: a good strand together with its mirror image, which
    /// must lie under every strand it crosses.
    pub fn is_mikado_symmetric(&self) -> bool {
        let mut d = self.clone();
        while !d.strands.is_empty() {
            let m = d.strands.len();
            let rank: HashMap<usize, usize> = d.strands.iter().enumerate().map(|(i, &s)| (s, i)).collect();
            let mirror = |s: usize| d.strands[m - 1 - rank[&s]];
            let end = d.end_order();
            let Some(&pick) = end
                .iter()
                .rev()
                .find(|&&s| d.is_over_everywhere(s) && d.is_under_everywhere(mirror(s)))
            else {
                return false;
            };
            let partner = mirror(pick);
            d = d.remove_strand(pick).remove_strand(partner);
        }
        true
    }
}

/// Mikado tests on the braid group of `A_{N−1}`.
pub struct MikadoA<'a> {
    braids: &'a BraidGroup,
}

impl<'a> MikadoA<'a> {
    pub fn new(braids: &'a BraidGroup) -> Result<Self> {
        if braids.coxeter_type().family != Family::A {
            return Err(Error::TypeMismatch(format!("{} is not of type A", braids.coxeter_type())));
        }
        Ok(MikadoA { braids })
    }

    fn strands(&self) -> usize {
        self.braids.rank() + 1
    }

    /// Diagram of some square-free lift.
    pub fn wiring(&self, nf: &GarsideNormalForm) -> Result<WiringDiagram> {
        let lift = self
            .braids
            .square_free_lift(nf)
            .ok_or_else(|| Error::Domain("braid is not square-free".into()))?;
        WiringDiagram::from_letters(self.strands(), &lift)
    }

    pub fn is_mikado(&self, nf: &GarsideNormalForm) -> bool {
        self.wiring(nf).is_ok_and(|d| d.is_mikado())
    }

    /// Type B membership through the fixed-point description.
    pub fn is_mikado_b(&self, nf: &GarsideNormalForm) -> Result<bool> {
        let letters = self.braids.to_letters(nf);
        Ok(self.braids.is_tau_fixed(&letters)? && self.is_mikado(nf))
    }

    /// Type B membership by symmetric strand-pair removal on a symmetric lift.
    pub fn is_mikado_b_by_pairs(&self, nf: &GarsideNormalForm) -> Result<bool> {
        let letters = self.braids.to_letters(nf);
        if !self.braids.is_tau_fixed(&letters)? {
            return Ok(false);
        }
        Ok(match self.symmetric_lift(nf) {
            Some(lift) => WiringDiagram::from_letters(self.strands(), &lift)?.is_mikado_symmetric(),
            None => false,
        })
    }

    /// A square-free lift built from `τ`-symmetric steps: the middle
    /// generator, or a commuting mirror pair with equal signs.
    pub fn symmetric_lift(&self, nf: &GarsideNormalForm) -> Option<Vec<i32>> {
        let g = self.braids.group();
        let mut dead = HashSet::new();
        let strands = self.braids.strand_signs(nf)?;
        self.symmetric_search(nf, self.braids.image(nf), g, &strands, &mut dead)
    }

    fn symmetric_search(
        &self,
        rem: &GarsideNormalForm,
        w: CoxeterElement,
        g: &CoxeterGroup,
        strands: &StrandSigns,
        dead: &mut HashSet<GarsideNormalForm>,
    ) -> Option<Vec<i32>> {
        let b = self.braids;
        let m = g.length(w) as i64;
        if m == 0 {
            return rem.is_identity().then(Vec::new);
        }
        if rem.inf < -m || rem.sup() > m || dead.contains(rem) {
            return None;
        }
        let n = self.strands() / 2;
        let desc = g.left_descents(w);
        for i in 0..n {
            let step: Vec<usize> = if i == 0 { vec![n - 1] } else { vec![n - 1 - i, n - 1 + i] };
            if !step.iter().all(|&s| desc.contains(s)) {
                continue;
            }
            let sign = strands.sign(step[0]);
            if sign.abs() != 1 || step.iter().any(|&s| strands.sign(s) != sign) {
                continue;
            }
            let next_strands = step.iter().fold(strands.clone(), |st, &s| st.cross(s));
            let letters: Vec<i32> = step.iter().map(|&s| sign * (s as i32 + 1)).collect();
            let mut peel = b.identity();
            for &l in letters.iter().rev() {
                b.push_letter(&mut peel, -l);
            }
            let next = b.mul(&peel, rem);
            let w2 = step.iter().fold(w, |acc, &s| g.mul_gen_left(s, acc));
            if let Some(tail) = self.symmetric_search(&next, w2, g, &next_strands, dead) {
                return Some(letters.into_iter().chain(tail).collect());
            }
        }
        dead.insert(rem.clone());
        None
    }
}

/// Image of a signed `B_n` word in `A_{2n−1}`: `t_0 ↦ σ_n`, `t_i ↦ σ_{n−i} σ_{n+i}`.
pub fn type_b_letters_to_a(n: usize, letters: &[i32]) -> Vec<i32> {
    let emb = type_b_embedding(n);
    letters
        .iter()
        .flat_map(|&l| {
            let sign = l.signum();
            emb[l.unsigned_abs() as usize - 1].iter().map(move |&a| sign * (a as i32 + 1))
        })
        .collect()
}

/// Number of pairs `(x, y)` with no common left descent, from the
/// histogram of left descent sets.
pub fn coprime_pair_count(g: &CoxeterGroup) -> u64 {
    let mut hist: HashMap<u32, u64> = HashMap::new();
    for w in g.elements() {
        *hist.entry(g.left_descents(w).0).or_default() += 1;
    }
    let mut total = 0;
    for (&a, &ha) in &hist {
        for (&b, &hb) in &hist {
            if a & b == 0 {
                total += ha * hb;
            }
        }
    }
    total
}

/// Mikado braids on `n` strands: coprime pairs in `S_n`.
pub fn count_mikado_a(n: usize) -> Result<u64> {
    match n {
        0 => Err(Error::InvalidType("Mikado count needs n ≥ 1".into())),
        1 => Ok(1),
        _ => Ok(coprime_pair_count(&CoxeterGroup::new(CoxeterType::a(n - 1)?)?)),
    }
}

/// Coprime pairs in `W(B_n)`; `B_1` has a single generator.
pub fn count_mikado_b(n: usize) -> Result<u64> {
    match n {
        0 => Err(Error::InvalidType("Mikado count needs n ≥ 1".into())),
        1 => Ok(coprime_pair_count(&CoxeterGroup::new(CoxeterType::a(1)?)?)),
        _ => Ok(coprime_pair_count(&CoxeterGroup::new(CoxeterType::b(n)?)?)),
    }
}

/// Distinct braids `b(x)⁻¹ b(y)` over all pairs, by normal form.
pub fn count_distinct_fractions(braids: &BraidGroup) -> usize {
    let g = braids.group();
    let inverses: Vec<GarsideNormalForm> = g.elements().map(|x| braids.inverse(&braids.simple(x))).collect();
    let forms: HashSet<GarsideNormalForm> = g
        .elements()
        .collect::<Vec<_>>()
        .par_iter()
        .flat_map_iter(|&x| {
            let inv = &inverses[x.index()];
            g.elements().map(move |y| braids.mul(inv, &braids.simple(y)))
        })
        .collect();
    forms.len()
}

/// Normal forms lying in `[Δ⁻¹, Δ]`, enumerated directly from the
/// normal-form conditions.
pub fn count_rational_normal_forms(g: &CoxeterGroup) -> usize {
    let w0 = g.longest_element();
    let e = g.identity();
    let middle: Vec<CoxeterElement> = g.elements().filter(|&w| w != e && w != w0).collect();
    // Δ, e, Δ⁻¹, then one or two proper factors
    let mut total = 3 + 2 * middle.len();
    for &u1 in &middle {
        total += g
            .elements()
            .filter(|&u2| u2 != e && g.left_descents(u2).is_subset(g.right_descents(u1)))
            .count();
    }
    total
}
