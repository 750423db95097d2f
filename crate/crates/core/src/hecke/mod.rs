//! The Iwahori–Hecke algebra over `Z[v, v⁻¹]` with
//! `T_s² = (v⁻² − 1) T_s + v⁻²`.

mod kl;

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::coxeter::{CoxeterElement, CoxeterGroup};
use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;
use crate::scalar::Coefficient;

pub(crate) use kl::word_key;
pub use kl::{KlTable, PositivityItem, KL_CACHE_ENV, KL_DEFAULT_MAX_ORDER};

/// Coordinates in the standard basis `{T_w}`, indexed densely by element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HeckeElement<C> {
    coeffs: Vec<LaurentPolynomial<C>>,
}

impl<C: Coefficient> HeckeElement<C> {
    pub fn coeff(&self, w: CoxeterElement) -> &LaurentPolynomial<C> {
        &self.coeffs[w.index()]
    }

    pub fn coeff_mut(&mut self, w: CoxeterElement) -> &mut LaurentPolynomial<C> {
        &mut self.coeffs[w.index()]
    }

    /// Nonzero coordinates in element order.
    pub fn support(&self) -> impl Iterator<Item = (CoxeterElement, &LaurentPolynomial<C>)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, p)| !Zero::is_zero(*p))
            .map(|(i, p)| (CoxeterElement::from_index(i), p))
    }

    pub fn is_zero(&self) -> bool {
        self.support().next().is_none()
    }

    pub fn scale(&self, p: &LaurentPolynomial<C>) -> Self {
        HeckeElement { coeffs: self.coeffs.iter().map(|c| c * p).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        HeckeElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        HeckeElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    /// `self += p · other`.
    pub fn add_scaled(&mut self, p: &LaurentPolynomial<C>, other: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !Zero::is_zero(b) {
                *a += &(p * b);
            }
        }
    }
}

impl<C: Coefficient> std::fmt::Debug for HeckeElement<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map()
            .entries(self.support().map(|(w, p)| (w.index(), p.to_string())))
            .finish()
    }
}

/// The Hecke algebra of a finite Coxeter group.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra {
    group: Arc<CoxeterGroup>,
}

impl HeckeAlgebra {
    pub fn new(group: Arc<CoxeterGroup>) -> Self {
        HeckeAlgebra { group }
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<CoxeterGroup> {
        &self.group
    }

    pub fn zero<C: Coefficient>(&self) -> HeckeElement<C> {
        HeckeElement { coeffs: vec![LaurentPolynomial::zero(); self.group.order()] }
    }

    pub fn one<C: Coefficient>(&self) -> HeckeElement<C> {
        self.t(self.group.identity())
    }

    /// The basis element `T_w`.
    pub fn t<C: Coefficient>(&self, w: CoxeterElement) -> HeckeElement<C> {
        let mut h = self.zero();
        h.coeffs[w.index()] = LaurentPolynomial::one();
        h
    }

    pub fn monomial<C: Coefficient>(&self, p: LaurentPolynomial<C>, w: CoxeterElement) -> HeckeElement<C> {
        let mut h = self.zero();
        h.coeffs[w.index()] = p;
        h
    }

    /// `h · T_s`.
    pub fn mul_t_right<C: Coefficient>(&self, h: &HeckeElement<C>, s: usize) -> HeckeElement<C> {
        let g = &self.group;
        let q = LaurentPolynomial::<C>::v_pow(-2);
        let q_minus_one = &q - &LaurentPolynomial::one();
        let mut out = self.zero();
        for (w, p) in h.support() {
            let ws = g.mul_gen_right(w, s);
            if g.length(ws) > g.length(w) {
                out.coeffs[ws.index()] += p;
            } else {
                out.coeffs[w.index()] += &(p * &q_minus_one);
                out.coeffs[ws.index()] += &(p * &q);
            }
        }
        out
    }

    /// `T_s · h`.
    pub fn mul_t_left<C: Coefficient>(&self, s: usize, h: &HeckeElement<C>) -> HeckeElement<C> {
        let g = &self.group;
        let q = LaurentPolynomial::<C>::v_pow(-2);
        let q_minus_one = &q - &LaurentPolynomial::one();
        let mut out = self.zero();
        for (w, p) in h.support() {
            let sw = g.mul_gen_left(s, w);
            if g.length(sw) > g.length(w) {
                out.coeffs[sw.index()] += p;
            } else {
                out.coeffs[w.index()] += &(p * &q_minus_one);
                out.coeffs[sw.index()] += &(p * &q);
            }
        }
        out
    }

    /// `h · T_s⁻¹`, with `T_s⁻¹ = v² T_s + (v² − 1)`.
    pub fn mul_t_inv_right<C: Coefficient>(&self, h: &HeckeElement<C>, s: usize) -> HeckeElement<C> {
        let v2 = LaurentPolynomial::<C>::v_pow(2);
        let mut out = self.mul_t_right(h, s).scale(&v2);
        out.add_scaled(&(&v2 - &LaurentPolynomial::one()), h);
        out
    }

    pub fn mul<C: Coefficient>(&self, a: &HeckeElement<C>, b: &HeckeElement<C>) -> HeckeElement<C> {
        let mut out = self.zero();
        for (w, p) in b.support() {
            let aw = self.group.reduced_word(w).into_iter().fold(a.clone(), |acc, s| self.mul_t_right(&acc, s));
            out.add_scaled(p, &aw);
        }
        out
    }

    /// Image of a signed braid word under `σ_s ↦ T_s`.
    pub fn braid_image_a<C: Coefficient>(&self, letters: &[i32]) -> Result<HeckeElement<C>> {
        self.braid_image(letters, false)
    }

    /// Image under `σ_s ↦ v T_s`.
    pub fn braid_image_a_prime<C: Coefficient>(&self, letters: &[i32]) -> Result<HeckeElement<C>> {
        self.braid_image(letters, true)
    }

    fn braid_image<C: Coefficient>(&self, letters: &[i32], twisted: bool) -> Result<HeckeElement<C>> {
        let n = self.group.rank() as i32;
        if let Some(l) = letters.iter().find(|&&l| l == 0 || l.abs() > n) {
            return Err(Error::Domain(format!("letter {l} outside ±1..±{n}")));
        }
        let mut h = self.one();
        let mut shift = 0;
        for &l in letters {
            let s = l.unsigned_abs() as usize - 1;
            h = if l > 0 { self.mul_t_right(&h, s) } else { self.mul_t_inv_right(&h, s) };
            shift += l.signum();
        }
        Ok(if twisted { h.scale(&LaurentPolynomial::v_pow(shift)) } else { h })
    }

    /// Semilinear involution with `j_H(T_s) = −v² T_s`.
    pub fn j_h<C: Coefficient>(&self, h: &HeckeElement<C>) -> HeckeElement<C> {
        let mut out = self.zero();
        for (w, p) in h.support() {
            let l = self.group.length(w) as i32;
            let sign = if l % 2 == 0 { C::one() } else { -C::one() };
            out.coeffs[w.index()] = p.bar().shift(2 * l).scale(&sign);
        }
        out
    }

    /// `bar(T_w)` for every `w`, computed along BFS parents.
    pub fn bar_basis<C: Coefficient>(&self) -> Vec<HeckeElement<C>> {
        let g = &self.group;
        let mut by_length: Vec<CoxeterElement> = g.elements().collect();
        by_length.sort_by_key(|&w| g.length(w));
        let mut table: HashMap<CoxeterElement, HeckeElement<C>> = HashMap::new();
        for w in by_length {
            let value = match g.reduced_word(w).split_last() {
                None => self.one(),
                Some((&s, _)) => {
                    let parent = g.mul_gen_right(w, s);
                    self.mul_t_inv_right(&table[&parent], s)
                }
            };
            table.insert(w, value);
        }
        g.elements().map(|w| table.remove(&w).expect("every element visited")).collect()
    }

    /// Bar involution: `v ↦ v⁻¹`, `T_w ↦ T_{w⁻¹}⁻¹`.
    pub fn bar<C: Coefficient>(&self, h: &HeckeElement<C>, basis: &[HeckeElement<C>]) -> HeckeElement<C> {
        let mut out = self.zero();
        for (w, p) in h.support() {
            out.add_scaled(&p.bar(), &basis[w.index()]);
        }
        out
    }
}
