//! The classical Garside structure of a spherical Artin–Tits group.
//!
//! Braids are kept in left-greedy normal form `Δ^inf · b(w_1) ⋯ b(w_l)` with
//! `R(w_i) ⊇ L(w_{i+1})`, `w_1 ≠ w0` and `w_l ≠ e`. Equality of braids is
//! equality of normal forms.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterElement, CoxeterGroup, CoxeterType, Family};
use crate::error::{Error, Result};

/// A braid word over signed classical generators; `+i` is `σ_i`, `−i` its
/// inverse, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    pub group: CoxeterType,
    pub letters: Vec<i32>,
}

/// Canonical form `Δ^inf · b(w_1) ⋯ b(w_l)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GarsideNormalForm {
    pub inf: i64,
    pub factors: Vec<CoxeterElement>,
}

impl GarsideNormalForm {
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }
}

/// JSON shape of a normal form: factors as 1-based reduced words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormJson {
    pub inf: i64,
    pub factors: Vec<Vec<usize>>,
}

/// A Coxeter group viewed as the simples of its braid group.
#[derive(Clone, Debug)]
pub struct BraidGroup {
    group: Arc<CoxeterGroup>,
    /// `Δ σ_i Δ⁻¹ = σ_{twist[i]}` (0-based).
    twist: Vec<usize>,
    w0_word: Vec<usize>,
}

impl BraidGroup {
    pub fn new(ty: CoxeterType) -> Result<Self> {
        Ok(Self::from_group(Arc::new(CoxeterGroup::new(ty)?)))
    }

    pub fn from_group(group: Arc<CoxeterGroup>) -> Self {
        let twist = group.delta_twist_generators();
        let w0_word = group.reduced_word(group.longest_element());
        BraidGroup { group, twist, w0_word }
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<CoxeterGroup> {
        &self.group
    }

    pub fn coxeter_type(&self) -> CoxeterType {
        self.group.coxeter_type()
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn identity(&self) -> GarsideNormalForm {
        GarsideNormalForm::default()
    }

    pub fn delta(&self) -> GarsideNormalForm {
        self.delta_pow(1)
    }

    pub fn delta_pow(&self, k: i64) -> GarsideNormalForm {
        GarsideNormalForm { inf: k, factors: Vec::new() }
    }

    /// The positive lift `b(w)`.
    pub fn simple(&self, w: CoxeterElement) -> GarsideNormalForm {
        let g = &self.group;
        if w == g.longest_element() {
            self.delta()
        } else if w == g.identity() {
            self.identity()
        } else {
            GarsideNormalForm { inf: 0, factors: vec![w] }
        }
    }

    pub fn check_letters(&self, letters: &[i32]) -> Result<()> {
        let n = self.rank() as i32;
        match letters.iter().find(|&&l| l == 0 || l.abs() > n) {
            Some(l) => Err(Error::Domain(format!("letter {l} outside ±1..±{n}"))),
            None => Ok(()),
        }
    }

    pub fn check_word(&self, word: &BraidWord) -> Result<()> {
        if word.group != self.coxeter_type() {
            return Err(Error::TypeMismatch(format!(
                "word over {} given to the braid group of {}",
                word.group,
                self.coxeter_type()
            )));
        }
        self.check_letters(&word.letters)
    }

    pub fn word(&self, letters: Vec<i32>) -> BraidWord {
        BraidWord { group: self.coxeter_type(), letters }
    }

    /// `w ↦ w0 w w0`, the action of conjugation by `Δ` on simples.
    fn tau(&self, w: CoxeterElement) -> CoxeterElement {
        self.group.delta_twist(w)
    }

    fn tau_pow(&self, factors: &mut [CoxeterElement], k: i64) {
        if k.rem_euclid(2) == 1 {
            for f in factors.iter_mut() {
                *f = self.tau(*f);
            }
        }
    }

    /// Makes `(a, b)` left-weighted: moves every `s ∈ L(b) \ R(a)` across.
    /// Returns whether anything moved.
    fn normalize_pair(&self, a: &mut CoxeterElement, b: &mut CoxeterElement) -> bool {
        let g = &self.group;
        let mut moved = false;
        while let Some(s) = g.left_descents(*b).difference(g.right_descents(*a)).first() {
            *a = g.mul_gen_right(*a, s);
            *b = g.mul_gen_left(s, *b);
            moved = true;
        }
        moved
    }

    fn tidy(&self, nf: &mut GarsideNormalForm) {
        let w0 = self.group.longest_element();
        let e = self.group.identity();
        let lead = nf.factors.iter().take_while(|&&f| f == w0).count();
        nf.factors.drain(..lead);
        nf.inf += lead as i64;
        while nf.factors.last() == Some(&e) {
            nf.factors.pop();
        }
    }

    /// Right multiplication by a positive simple.
    pub fn push_simple(&self, nf: &mut GarsideNormalForm, w: CoxeterElement) {
        if w == self.group.identity() {
            return;
        }
        nf.factors.push(w);
        loop {
            let mut moved = false;
            for i in (0..nf.factors.len() - 1).rev() {
                let (left, right) = nf.factors.split_at_mut(i + 1);
                moved |= self.normalize_pair(&mut left[i], &mut right[0]);
            }
            if !moved {
                break;
            }
        }
        self.tidy(nf);
    }

    /// Right multiplication by `Δ^k`.
    pub fn push_delta_pow(&self, nf: &mut GarsideNormalForm, k: i64) {
        self.tau_pow(&mut nf.factors, k);
        nf.inf += k;
    }

    /// Right multiplication by a single letter.
    pub fn push_letter(&self, nf: &mut GarsideNormalForm, letter: i32) {
        let s = letter.unsigned_abs() as usize - 1;
        let g = &self.group;
        if letter > 0 {
            self.push_simple(nf, g.generator(s));
        } else {
            // σ_s⁻¹ = Δ⁻¹ · b(w0 s)
            self.push_delta_pow(nf, -1);
            self.push_simple(nf, g.mul_gen_right(g.longest_element(), s));
        }
    }

    pub fn normal_form(&self, letters: &[i32]) -> Result<GarsideNormalForm> {
        self.check_letters(letters)?;
        let mut nf = self.identity();
        for &l in letters {
            self.push_letter(&mut nf, l);
        }
        Ok(nf)
    }

    pub fn normal_form_of_word(&self, word: &BraidWord) -> Result<GarsideNormalForm> {
        self.check_word(word)?;
        self.normal_form(&word.letters)
    }

    /// Normal form of the positive word `σ_{s_1} ⋯ σ_{s_k}` (0-based).
    pub fn positive(&self, word: &[usize]) -> Result<GarsideNormalForm> {
        let letters: Vec<i32> = word.iter().map(|&s| s as i32 + 1).collect();
        self.normal_form(&letters)
    }

    pub fn mul(&self, a: &GarsideNormalForm, b: &GarsideNormalForm) -> GarsideNormalForm {
        // Δ^k A · Δ^m B = Δ^{k+m} τ^m(A) B
        let mut out = a.clone();
        self.push_delta_pow(&mut out, b.inf);
        for &f in &b.factors {
            self.push_simple(&mut out, f);
        }
        out
    }

    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a GarsideNormalForm>) -> GarsideNormalForm {
        items.into_iter().fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    pub fn inverse(&self, nf: &GarsideNormalForm) -> GarsideNormalForm {
        let g = &self.group;
        let w0 = g.longest_element();
        let mut out = self.identity();
        for &f in nf.factors.iter().rev() {
            // b(w)⁻¹ = Δ⁻¹ · b(w0 w⁻¹)
            self.push_delta_pow(&mut out, -1);
            self.push_simple(&mut out, g.mul(w0, g.inverse(f)));
        }
        self.push_delta_pow(&mut out, -nf.inf);
        out
    }

    /// Conjugation by `Δ`.
    pub fn delta_conjugate(&self, nf: &GarsideNormalForm) -> GarsideNormalForm {
        let mut out = nf.clone();
        self.tau_pow(&mut out.factors, 1);
        out
    }

    /// A word representing the normal form.
    pub fn to_letters(&self, nf: &GarsideNormalForm) -> Vec<i32> {
        let mut out = Vec::new();
        let delta: Vec<i32> = self.w0_word.iter().map(|&s| s as i32 + 1).collect();
        let delta_inv: Vec<i32> = delta.iter().rev().map(|&l| -l).collect();
        for _ in 0..nf.inf.unsigned_abs() {
            out.extend_from_slice(if nf.inf > 0 { &delta } else { &delta_inv });
        }
        for &f in &nf.factors {
            out.extend(self.group.reduced_word(f).into_iter().map(|s| s as i32 + 1));
        }
        out
    }

    /// Image in `W` under `σ_i ↦ s_i`.
    pub fn image(&self, nf: &GarsideNormalForm) -> CoxeterElement {
        let g = &self.group;
        let head = if nf.inf.rem_euclid(2) == 1 { g.longest_element() } else { g.identity() };
        nf.factors.iter().fold(head, |acc, &f| g.mul(acc, f))
    }

    pub fn image_of_letters(&self, letters: &[i32]) -> Result<CoxeterElement> {
        self.check_letters(letters)?;
        let word: Vec<usize> = letters.iter().map(|l| l.unsigned_abs() as usize - 1).collect();
        self.group.element_from_word(&word)
    }

    pub fn equal(&self, a: &[i32], b: &[i32]) -> Result<bool> {
        Ok(self.normal_form(a)? == self.normal_form(b)?)
    }

    /// Left-greedy factorization of a positive braid, `Δ` factors included.
    pub fn greedy_factors(&self, nf: &GarsideNormalForm) -> Result<Vec<CoxeterElement>> {
        if nf.inf < 0 {
            return Err(Error::Domain("braid is not positive".into()));
        }
        let w0 = self.group.longest_element();
        let mut out = vec![w0; nf.inf as usize];
        out.extend_from_slice(&nf.factors);
        Ok(out)
    }

    /// Membership in the interval `[Δ⁻¹, Δ]`.
    pub fn is_rational(&self, nf: &GarsideNormalForm) -> bool {
        nf.inf >= -1 && nf.sup() <= 1
    }

    /// The left-coprime pair `(x, y)` with `β = b(x)⁻¹ b(y)`.
    pub fn fraction_form(&self, nf: &GarsideNormalForm) -> Result<(CoxeterElement, CoxeterElement)> {
        if !self.is_rational(nf) {
            return Err(Error::Domain(format!(
                "braid with inf {} and sup {} is not a rational permutation braid",
                nf.inf,
                nf.sup()
            )));
        }
        let g = &self.group;
        let w0 = g.longest_element();
        let e = g.identity();
        let at = |i: usize| nf.factors.get(i).copied().unwrap_or(e);
        let (x, y) = match nf.inf {
            1 => (e, w0),
            0 => (e, at(0)),
            // Δ⁻¹ b(u1) = b(u1⁻¹ w0)⁻¹
            _ => (g.mul(g.inverse(at(0)), w0), at(1)),
        };
        let m = g.weak_meet_left(x, y);
        let mi = g.inverse(m);
        Ok((g.mul(mi, x), g.mul(mi, y)))
    }

    /// The pair `(x, y)` with `β = b(x) b(y)⁻¹` and `x, y` right-coprime.
    pub fn right_fraction_form(&self, nf: &GarsideNormalForm) -> Result<(CoxeterElement, CoxeterElement)> {
        let reversed: Vec<i32> = self.to_letters(nf).into_iter().rev().collect();
        let (big_x, big_y) = self.fraction_form(&self.normal_form(&reversed)?)?;
        let g = &self.group;
        Ok((g.inverse(big_y), g.inverse(big_x)))
    }

    /// `b(x)⁻¹ b(y)`.
    pub fn fraction(&self, x: CoxeterElement, y: CoxeterElement) -> GarsideNormalForm {
        self.mul(&self.inverse(&self.simple(x)), &self.simple(y))
    }

    /// Signs for a reduced word of `p(β)` making its signed lift equal to `β`.
    ///
    /// `ε_i = +1` iff `ℓ(s_i ⋯ s_k y) = ℓ(s_{i+1} ⋯ s_k y) + 1`, where
    /// `β = b(x) b(y)⁻¹`.
    pub fn signed_lift(&self, nf: &GarsideNormalForm, word: &[usize]) -> Result<Vec<i32>> {
        let g = &self.group;
        if !g.is_reduced_word(word) {
            return Err(Error::Precondition(format!("{word:?} is not a reduced word")));
        }
        if g.element_from_word(word)? != self.image(nf) {
            return Err(Error::Precondition("word does not represent the image of the braid".into()));
        }
        let (_, y) = self.right_fraction_form(nf)?;
        let mut suffix = y;
        let mut signs = vec![0i32; word.len()];
        for (i, &s) in word.iter().enumerate().rev() {
            let next = g.mul_gen_left(s, suffix);
            signs[i] = if g.length(next) == g.length(suffix) + 1 { 1 } else { -1 };
            suffix = next;
        }
        let letters: Vec<i32> = word.iter().zip(&signs).map(|(&s, &e)| e * (s as i32 + 1)).collect();
        if self.normal_form(&letters)? != *nf {
            return Err(Error::Integrity(format!("signed lift {letters:?} differs from the braid")));
        }
        Ok(letters)
    }

    /// A signed lift of some reduced word of `p(β)` equal to `β`, if one exists.
    pub fn square_free_lift(&self, nf: &GarsideNormalForm) -> Option<Vec<i32>> {
        let mut dead = HashSet::new();
        let strands = self.strand_signs(nf);
        self.lift_search(nf, self.image(nf), strands.as_ref(), &mut dead)
    }

    pub fn is_square_free(&self, nf: &GarsideNormalForm) -> bool {
        self.square_free_lift(nf).is_some()
    }

    /// Type A only: exponent sum of the crossings between each pair of
    /// strands (labelled by starting position), which is a braid invariant.
    /// A square-free lift crosses the strands at positions `i, i+1` with
    /// exactly this sign.
    pub(crate) fn pair_exponents(&self, letters: &[i32]) -> Option<Vec<Vec<i32>>> {
        if self.coxeter_type().family != Family::A {
            return None;
        }
        let n = self.rank() + 1;
        let mut at: Vec<usize> = (0..n).collect();
        let mut e = vec![vec![0i32; n]; n];
        for &l in letters {
            let p = l.unsigned_abs() as usize - 1;
            let (a, b) = (at[p], at[p + 1]);
            e[a][b] += l.signum();
            e[b][a] += l.signum();
            at.swap(p, p + 1);
        }
        Some(e)
    }

    pub(crate) fn strand_signs(&self, nf: &GarsideNormalForm) -> Option<StrandSigns> {
        let exponents = self.pair_exponents(&self.to_letters(nf))?;
        Some(StrandSigns { at: (0..exponents.len()).collect(), exponents })
    }

    fn lift_search(
        &self,
        rem: &GarsideNormalForm,
        w: CoxeterElement,
        strands: Option<&StrandSigns>,
        dead: &mut HashSet<GarsideNormalForm>,
    ) -> Option<Vec<i32>> {
        let g = &self.group;
        let m = g.length(w) as i64;
        if m == 0 {
            return rem.is_identity().then(Vec::new);
        }
        if rem.inf < -m || rem.sup() > m || dead.contains(rem) {
            return None;
        }
        for s in g.left_descents(w).iter() {
            let signs: &[i32] = match strands.map(|st| st.sign(s)) {
                Some(0) => &[],
                Some(1) => &[1],
                Some(-1) => &[-1],
                Some(_) => return None,
                None => &[1, -1],
            };
            let next_strands = strands.map(|st| st.cross(s));
            for &sign in signs {
                let letter = sign * (s as i32 + 1);
                let mut peel = self.identity();
                self.push_letter(&mut peel, -letter);
                let next = self.mul(&peel, rem);
                if let Some(mut tail) = self.lift_search(&next, g.mul_gen_left(s, w), next_strands.as_ref(), dead) {
                    tail.insert(0, letter);
                    return Some(tail);
                }
            }
        }
        dead.insert(rem.clone());
        None
    }

    /// Conjugation by `Δ` on letters.
    pub fn delta_twist_letters(&self, letters: &[i32]) -> Vec<i32> {
        letters
            .iter()
            .map(|&l| l.signum() * (self.twist[l.unsigned_abs() as usize - 1] as i32 + 1))
            .collect()
    }

    /// The diagram automorphism `σ_i ↦ σ_{N−i}` of `A_{N−1}`, defined for odd rank.
    pub fn tau_letters(&self, letters: &[i32]) -> Result<Vec<i32>> {
        let ty = self.coxeter_type();
        if ty.family != Family::A || ty.rank % 2 == 0 {
            return Err(Error::TypeMismatch(format!("τ is defined on A of odd rank, not {ty}")));
        }
        self.check_letters(letters)?;
        let n = ty.rank as i32 + 1;
        Ok(letters.iter().map(|&l| l.signum() * (n - l.abs())).collect())
    }

    pub fn is_tau_fixed(&self, letters: &[i32]) -> Result<bool> {
        let twisted = self.tau_letters(letters)?;
        self.equal(letters, &twisted)
    }

    pub fn to_json(&self, nf: &GarsideNormalForm) -> NormalFormJson {
        NormalFormJson {
            inf: nf.inf,
            factors: nf
                .factors
                .iter()
                .map(|&f| self.group.reduced_word(f).into_iter().map(|s| s + 1).collect())
                .collect(),
        }
    }

    /// Parses and re-normalizes; the input need not be in normal form.
    pub fn from_json(&self, json: &NormalFormJson) -> Result<GarsideNormalForm> {
        let mut nf = self.delta_pow(json.inf);
        for f in &json.factors {
            if f.contains(&0) {
                return Err(Error::Domain("generators are 1-based".into()));
            }
            let w = self.group.element_from_word(&f.iter().map(|&s| s - 1).collect::<Vec<_>>())?;
            if self.group.length(w) != f.len() {
                return Err(Error::Domain(format!("factor {f:?} is not reduced")));
            }
            self.push_simple(&mut nf, w);
        }
        Ok(nf)
    }

    /// Checks the normal-form invariants; used by tests and integrity checks.
    pub fn is_normal(&self, nf: &GarsideNormalForm) -> bool {
        let g = &self.group;
        let ok_ends = nf.factors.first() != Some(&g.longest_element()) && nf.factors.last() != Some(&g.identity());
        ok_ends
            && nf
                .factors
                .windows(2)
                .all(|p| g.left_descents(p[1]).is_subset(g.right_descents(p[0])))
    }
}

/// Strand labels by position after the letters peeled so far, with the
/// pairwise exponent sums of the whole braid.
#[derive(Clone)]
pub(crate) struct StrandSigns {
    at: Vec<usize>,
    exponents: Vec<Vec<i32>>,
}

impl StrandSigns {
    /// Exponent sum of the pair at positions `p, p+1`.
    pub(crate) fn sign(&self, p: usize) -> i32 {
        self.exponents[self.at[p]][self.at[p + 1]]
    }

    pub(crate) fn cross(&self, p: usize) -> StrandSigns {
        let mut next = self.clone();
        next.at.swap(p, p + 1);
        next
    }
}
