//! Weak, Bruhat and absolute orders, standard Coxeter elements and the
//! folding of type B into type A.

use itertools::Itertools;

use super::{CoxeterElement, CoxeterGroup, CoxeterType, Family, Payload};
use crate::error::{Error, Result};

/// A standard Coxeter element with the generator ordering that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardCoxeterElement {
    pub element: CoxeterElement,
    /// 0-based generator indices, `element = s_{o[0]} ⋯ s_{o[n−1]}`.
    pub ordering: Vec<usize>,
}

impl CoxeterGroup {
    /// `u ≼ w` in the prefix order: `ℓ(u) + ℓ(u⁻¹w) = ℓ(w)`.
    pub fn is_prefix(&self, u: CoxeterElement, w: CoxeterElement) -> bool {
        self.length(u) + self.length(self.mul(self.inverse(u), w)) == self.length(w)
    }

    /// `u` is a suffix of `w`: `ℓ(wu⁻¹) + ℓ(u) = ℓ(w)`.
    pub fn is_suffix(&self, u: CoxeterElement, w: CoxeterElement) -> bool {
        self.length(self.mul(w, self.inverse(u))) + self.length(u) == self.length(w)
    }

    /// Greatest common prefix of `a` and `b`.
    pub fn weak_meet_left(&self, mut a: CoxeterElement, mut b: CoxeterElement) -> CoxeterElement {
        let mut meet = self.identity();
        while let Some(s) = self.left_descents(a).intersection(self.left_descents(b)).first() {
            meet = self.mul_gen_right(meet, s);
            a = self.mul_gen_left(s, a);
            b = self.mul_gen_left(s, b);
        }
        meet
    }

    /// Greatest common suffix of `a` and `b`.
    pub fn weak_meet_right(&self, a: CoxeterElement, b: CoxeterElement) -> CoxeterElement {
        let m = self.weak_meet_left(self.inverse(a), self.inverse(b));
        self.inverse(m)
    }

    /// Bruhat order, by peeling left descents of `w`.
    pub fn bruhat_leq(&self, mut u: CoxeterElement, mut w: CoxeterElement) -> bool {
        loop {
            if self.length(u) > self.length(w) {
                return false;
            }
            let Some(s) = self.left_descents(w).first() else {
                return u == w;
            };
            if self.left_descents(u).contains(s) {
                u = self.mul_gen_left(s, u);
            }
            w = self.mul_gen_left(s, w);
        }
    }

    /// Bruhat order as the subword property on a fixed reduced word of `w`.
    /// Exponential; oracle for [`CoxeterGroup::bruhat_leq`].
    pub fn bruhat_leq_by_subwords(&self, u: CoxeterElement, w: CoxeterElement) -> bool {
        let word = self.reduced_word(w);
        (0u64..1 << word.len()).any(|mask| {
            let sub: Vec<usize> = (0..word.len()).filter(|&i| mask >> i & 1 == 1).map(|i| word[i]).collect();
            self.element_from_word(&sub).is_ok_and(|x| x == u)
        })
    }

    /// `u ≤_T w` in the absolute order: `ℓ_T(u) + ℓ_T(u⁻¹w) = ℓ_T(w)`.
    pub fn abs_divides(&self, u: CoxeterElement, w: CoxeterElement) -> bool {
        self.reflection_length(u) + self.reflection_length(self.mul(self.inverse(u), w))
            == self.reflection_length(w)
    }

    /// All distinct standard Coxeter elements, each with the first generator
    /// ordering (lexicographically) that produces it.
    pub fn standard_coxeter_elements(&self) -> Result<Vec<StandardCoxeterElement>> {
        let n = self.rank();
        if n > 9 {
            return Err(Error::Resource(format!("{n}! generator orderings")));
        }
        let mut out: Vec<StandardCoxeterElement> = Vec::new();
        for ordering in (0..n).permutations(n) {
            let element = self.element_from_word(&ordering)?;
            if !out.iter().any(|c| c.element == element) {
                out.push(StandardCoxeterElement { element, ordering });
            }
        }
        Ok(out)
    }

    /// `s_1 s_2 ⋯ s_n` in generator order.
    pub fn default_coxeter_element(&self) -> StandardCoxeterElement {
        let ordering: Vec<usize> = (0..self.rank()).collect();
        StandardCoxeterElement {
            element: self.element_from_word(&ordering).expect("generators in range"),
            ordering,
        }
    }

    /// Checks that `ordering` is a permutation of the generators with product `c`.
    pub fn check_coxeter_ordering(&self, c: CoxeterElement, ordering: &[usize]) -> Result<()> {
        let n = self.rank();
        if ordering.iter().copied().sorted().ne(0..n) {
            return Err(Error::Precondition(format!("{ordering:?} is not an ordering of the {n} generators")));
        }
        if self.element_from_word(ordering)? != c {
            return Err(Error::Precondition(format!("{ordering:?} does not multiply to the given element")));
        }
        Ok(())
    }

    /// The reflections `s_{i_1} ⋯ s_{i_{k−1}} s_{i_k} s_{i_{k−1}} ⋯ s_{i_1}`
    /// read along the word `ordering^∞`, for `k = 1..=count`.
    pub fn reflection_sequence(&self, ordering: &[usize], count: usize) -> Vec<CoxeterElement> {
        let mut prefix = self.identity();
        let mut out = Vec::with_capacity(count);
        for &s in ordering.iter().cycle().take(count) {
            out.push(self.conjugate(prefix, self.generator(s)));
            prefix = self.mul_gen_right(prefix, s);
        }
        out
    }

    /// The set `{c^k s_1 ⋯ s_{i−1} s_i s_{i−1} ⋯ s_1 c^{−k}}` over `k ≥ 0` and
    /// `1 ≤ i ≤ n`, in order of first appearance.
    pub fn reflections_from_coxeter(&self, c: CoxeterElement, ordering: &[usize]) -> Result<Vec<CoxeterElement>> {
        self.check_coxeter_ordering(c, ordering)?;
        let base = self.reflection_sequence(ordering, ordering.len());
        let mut out: Vec<CoxeterElement> = Vec::new();
        let mut power = self.identity();
        for _ in 0..self.element_order(c) {
            out.extend(base.iter().map(|&t| self.conjugate(power, t)));
            power = self.mul(power, c);
        }
        Ok(out.into_iter().unique().collect())
    }
}

/// Bruhat order of a whole group as per-element bitsets.
///
/// `below(w) = below(sw) ∪ s·below(sw)` for any left descent `s` of `w`.
pub struct BruhatTable {
    words: usize,
    bits: Vec<u64>,
}

impl BruhatTable {
    pub fn new(group: &CoxeterGroup) -> Self {
        let n = group.order();
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        let mut by_length: Vec<CoxeterElement> = group.elements().collect();
        by_length.sort_by_key(|&w| group.length(w));
        for w in by_length {
            let wi = w.index();
            bits[wi * words + wi / 64] |= 1 << (wi % 64);
            let Some(s) = group.left_descents(w).first() else {
                continue;
            };
            let sw = group.mul_gen_left(s, w).index();
            for x in 0..n {
                if bits[sw * words + x / 64] >> (x % 64) & 1 == 1 {
                    let y = group.mul_gen_left(s, CoxeterElement(x as u32)).index();
                    bits[wi * words + x / 64] |= 1 << (x % 64);
                    bits[wi * words + y / 64] |= 1 << (y % 64);
                }
            }
        }
        BruhatTable { words, bits }
    }

    pub fn leq(&self, u: CoxeterElement, w: CoxeterElement) -> bool {
        let (u, w) = (u.index(), w.index());
        self.bits[w * self.words + u / 64] >> (u % 64) & 1 == 1
    }
}

/// Images of the generators of `B_n` as words in `A_{2n−1}` (0-based).
///
/// The sign change `t_0` goes to the middle generator, and the `i`-th
/// transposition generator to the commuting pair placed symmetrically about it.
pub fn type_b_embedding(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|i| if i == 0 { vec![n - 1] } else { vec![n - 1 - i, n - 1 + i] })
        .collect()
}

/// Position of a signed label among the `2n` points `−n < ⋯ < −1 < 1 < ⋯ < n`.
fn folded_position(n: usize, label: i8) -> usize {
    let n = n as i64;
    let l = label as i64;
    (if l < 0 { n + l } else { n + l - 1 }) as usize
}

/// The image of an element of `B_n` in `A_{2n−1}` under [`type_b_embedding`],
/// computed on payloads.
pub fn type_b_to_a(b: &CoxeterGroup, a: &CoxeterGroup, w: CoxeterElement) -> Result<CoxeterElement> {
    let n = b.rank();
    let want = CoxeterType { family: Family::A, rank: 2 * n - 1, m: None };
    if b.coxeter_type().family != Family::B || a.coxeter_type() != want {
        return Err(Error::TypeMismatch(format!(
            "expected B{n} and {want}, got {} and {}",
            b.coxeter_type(),
            a.coxeter_type()
        )));
    }
    let Payload::Signed(sp) = b.payload(w) else {
        return Err(Error::Integrity("type B element without a signed permutation".into()));
    };
    let mut perm = vec![0u8; 2 * n];
    for l in (-(n as i8)..=n as i8).filter(|&l| l != 0) {
        perm[folded_position(n, l)] = folded_position(n, sp.apply(l)) as u8;
    }
    a.element_of_payload(&Payload::Perm(perm))
}
