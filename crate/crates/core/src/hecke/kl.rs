//! Kazhdan–Lusztig polynomials and the canonical bases `C′_w`, `C_w`.
//!
//! Normalization: `C′_w = v^{ℓ(w)} Σ_y P_{y,w}(v⁻²) T_y` and
//! `C_w = (−1)^{ℓ(w)} j_H(C′_w)`.

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{HeckeAlgebra, HeckeElement};
use crate::coxeter::{BruhatTable, CoxeterElement, CoxeterGroup, CoxeterType};
use crate::dual::DualMonoid;
use crate::error::{Error, Result};
use crate::Laurent;

/// Largest group whose table is built without an explicit budget.
pub const KL_DEFAULT_MAX_ORDER: usize = 1200;

/// Directory for on-disk tables, keyed by type and crate version.
pub const KL_CACHE_ENV: &str = "ARTIN_KL_CACHE";

type Hecke = HeckeElement<i64>;

/// Polynomial in `q` as its coefficient list from `q^0`; no trailing zeros.
type QPoly = Vec<i64>;

fn add_shifted(acc: &mut QPoly, p: &[i64], shift: usize, factor: i64) {
    if p.is_empty() || factor == 0 {
        return;
    }
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, &c) in p.iter().enumerate() {
        acc[i + shift] += factor * c;
    }
    while acc.last() == Some(&0) {
        acc.pop();
    }
}

/// Sorted reduced word as a report key: `"e"` or `"1.2.1"`.
pub(crate) fn word_key(g: &CoxeterGroup, w: CoxeterElement) -> String {
    let word = g.reduced_word(w);
    if word.is_empty() {
        "e".into()
    } else {
        word.iter().map(|s| (s + 1).to_string()).collect::<Vec<_>>().join(".")
    }
}

/// C-expansion of the image of one simple dual braid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityItem {
    /// `T`-reduced factorization, each reflection as a 1-based reduced word.
    pub divisor: Vec<Vec<usize>>,
    pub coefficients: BTreeMap<String, String>,
    pub positive: bool,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    group: CoxeterType,
    version: String,
    order: usize,
    /// `(y, w, P_{y,w})` for every nonzero polynomial.
    entries: Vec<(u32, u32, QPoly)>,
}

/// Kazhdan–Lusztig data of a whole group. Immutable once built.
pub struct KlTable {
    algebra: HeckeAlgebra,
    bruhat: BruhatTable,
    /// `p[w][y] = P_{y,w}`, empty unless `y ≤ w`.
    p: Vec<Vec<QPoly>>,
    c_prime: Vec<Hecke>,
    c: Vec<Hecke>,
}

impl KlTable {
    pub fn new(algebra: &HeckeAlgebra) -> Result<Self> {
        Self::with_max_order(algebra, KL_DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(algebra: &HeckeAlgebra, max_order: usize) -> Result<Self> {
        let g = algebra.group();
        if g.order() > max_order {
            return Err(Error::Resource(format!(
                "KL table of {} needs |W| = {} > budget {max_order}",
                g.coxeter_type(),
                g.order()
            )));
        }
        let bruhat = BruhatTable::new(g);
        let p = match Self::load_cache(g) {
            Some(p) => p,
            None => {
                let p = Self::compute_polynomials(g, &bruhat);
                Self::store_cache(g, &p);
                p
            }
        };
        let mut table = KlTable { algebra: algebra.clone(), bruhat, p, c_prime: Vec::new(), c: Vec::new() };
        let (c_prime, c): (Vec<Hecke>, Vec<Hecke>) =
            g.elements().map(|w| (table.build_c_prime(w), table.build_c(w))).unzip();
        table.c_prime = c_prime;
        table.c = c;
        Ok(table)
    }

    /// The classical recursion: for `s` a left descent of `w` and `v = sw`,
    /// `P_{x,w} = q^{1−c} P_{sx,v} + q^c P_{x,v} − Σ μ(z,v) q^{(ℓ(w)−ℓ(z))/2} P_{x,z}`
    /// over `z < v` with `sz < z`, where `c = 1` iff `sx < x`.
    fn compute_polynomials(g: &CoxeterGroup, bruhat: &BruhatTable) -> Vec<Vec<QPoly>> {
        let n = g.order();
        let mut p: Vec<Vec<QPoly>> = vec![Vec::new(); n];
        let mut mu: Vec<Vec<(CoxeterElement, i64)>> = vec![Vec::new(); n];
        let mut by_length: Vec<CoxeterElement> = g.elements().collect();
        by_length.sort_by_key(|&w| (g.length(w), w));
        for w in by_length {
            let mut row: Vec<QPoly> = vec![Vec::new(); n];
            match g.left_descents(w).first() {
                None => row[w.index()] = vec![1],
                Some(s) => {
                    let v = g.mul_gen_left(s, w);
                    let lw = g.length(w);
                    for x in g.elements().filter(|&x| bruhat.leq(x, w)) {
                        let sx = g.mul_gen_left(s, x);
                        let c = usize::from(g.length(sx) < g.length(x));
                        let mut acc = QPoly::new();
                        add_shifted(&mut acc, &p[v.index()][sx.index()], 1 - c, 1);
                        add_shifted(&mut acc, &p[v.index()][x.index()], c, 1);
                        for &(z, m) in &mu[v.index()] {
                            if g.left_descents(z).contains(s) {
                                let shift = (lw - g.length(z)) / 2;
                                add_shifted(&mut acc, &p[z.index()][x.index()], shift, -m);
                            }
                        }
                        row[x.index()] = acc;
                    }
                }
            }
            let lw = g.length(w);
            for (z, poly) in row.iter().enumerate() {
                let z = CoxeterElement::from_index(z);
                let lz = g.length(z);
                if z != w && lz < lw && (lw - lz) % 2 == 1 {
                    let m = poly.get((lw - lz - 1) / 2).copied().unwrap_or(0);
                    if m != 0 {
                        mu[w.index()].push((z, m));
                    }
                }
            }
            p[w.index()] = row;
        }
        p
    }

    fn cache_path(g: &CoxeterGroup) -> Option<PathBuf> {
        let dir = std::env::var_os(KL_CACHE_ENV)?;
        let name: String = g
            .coxeter_type()
            .to_string()
            .chars()
            .map(|ch| if ch.is_ascii_alphanumeric() { ch } else { '_' })
            .collect();
        Some(PathBuf::from(dir).join(format!("kl-{name}-{}.json", env!("CARGO_PKG_VERSION"))))
    }

    fn load_cache(g: &CoxeterGroup) -> Option<Vec<Vec<QPoly>>> {
        let text = std::fs::read_to_string(Self::cache_path(g)?).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        if file.group != g.coxeter_type() || file.order != g.order() || file.version != env!("CARGO_PKG_VERSION") {
            return None;
        }
        let n = g.order();
        let mut p = vec![vec![QPoly::new(); n]; n];
        for (y, w, poly) in file.entries {
            *p.get_mut(w as usize)?.get_mut(y as usize)? = poly;
        }
        Some(p)
    }

    /// Best effort; an unwritable cache directory only costs recomputation.
    fn store_cache(g: &CoxeterGroup, p: &[Vec<QPoly>]) {
        let Some(path) = Self::cache_path(g) else { return };
        let entries = p
            .iter()
            .enumerate()
            .flat_map(|(w, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(_, poly)| !poly.is_empty())
                    .map(move |(y, poly)| (y as u32, w as u32, poly.clone()))
            })
            .collect();
        let file = CacheFile {
            group: g.coxeter_type(),
            version: env!("CARGO_PKG_VERSION").into(),
            order: g.order(),
            entries,
        };
        if let Ok(text) = serde_json::to_string(&file) {
            let _ = std::fs::create_dir_all(path.parent().unwrap_or(&path));
            let _ = std::fs::write(path, text);
        }
    }

    fn build_c_prime(&self, w: CoxeterElement) -> Hecke {
        let g = self.group();
        let lw = g.length(w) as i32;
        let mut h = self.algebra.zero();
        for (y, poly) in self.p[w.index()].iter().enumerate() {
            if !poly.is_empty() {
                *h.coeff_mut(CoxeterElement::from_index(y)) =
                    Laurent::from_terms(poly.iter().enumerate().map(|(k, &c)| (lw - 2 * k as i32, c)));
            }
        }
        h
    }

    fn build_c(&self, w: CoxeterElement) -> Hecke {
        let g = self.group();
        let lw = g.length(w) as i32;
        let mut h = self.algebra.zero();
        for (y, poly) in self.p[w.index()].iter().enumerate() {
            if poly.is_empty() {
                continue;
            }
            let y = CoxeterElement::from_index(y);
            let ly = g.length(y) as i32;
            let sign = if (lw + ly) % 2 == 0 { 1 } else { -1 };
            *h.coeff_mut(y) =
                Laurent::from_terms(poly.iter().enumerate().map(|(k, &c)| (2 * ly - lw + 2 * k as i32, sign * c)));
        }
        h
    }

    pub fn algebra(&self) -> &HeckeAlgebra {
        &self.algebra
    }

    pub fn group(&self) -> &CoxeterGroup {
        self.algebra.group()
    }

    pub fn bruhat(&self) -> &BruhatTable {
        &self.bruhat
    }

    /// `P_{y,w}` as coefficients of `q^0, q^1, …`.
    pub fn polynomial(&self, y: CoxeterElement, w: CoxeterElement) -> &[i64] {
        &self.p[w.index()][y.index()]
    }

    pub fn mu(&self, z: CoxeterElement, w: CoxeterElement) -> i64 {
        let g = self.group();
        let (lw, lz) = (g.length(w), g.length(z));
        if lz >= lw || (lw - lz) % 2 == 0 {
            return 0;
        }
        self.polynomial(z, w).get((lw - lz - 1) / 2).copied().unwrap_or(0)
    }

    pub fn c_prime(&self, w: CoxeterElement) -> &Hecke {
        &self.c_prime[w.index()]
    }

    pub fn c(&self, w: CoxeterElement) -> &Hecke {
        &self.c[w.index()]
    }

    fn expand(&self, h: &Hecke, basis: &[Hecke], lead_shift: impl Fn(usize) -> i32) -> Result<BTreeMap<CoxeterElement, Laurent>> {
        let g = self.group();
        let mut rest = h.clone();
        let mut out = BTreeMap::new();
        let mut order: Vec<CoxeterElement> = g.elements().collect();
        order.sort_by_key(|&w| (std::cmp::Reverse(g.length(w)), w));
        for w in order {
            let top = rest.coeff(w);
            if top.is_zero() {
                continue;
            }
            let a = top.shift(-lead_shift(g.length(w)));
            rest.add_scaled(&-a.clone(), &basis[w.index()]);
            out.insert(w, a);
        }
        if !rest.is_zero() {
            return Err(Error::Integrity("triangular elimination left a remainder".into()));
        }
        Ok(out)
    }

    /// Coordinates in `{C_w}`, by elimination from the longest elements down.
    pub fn expand_in_c(&self, h: &Hecke) -> Result<BTreeMap<CoxeterElement, Laurent>> {
        // leading coefficient of C_w on T_w is v^{ℓ(w)}
        self.expand(h, &self.c, |l| l as i32)
    }

    pub fn expand_in_c_prime(&self, h: &Hecke) -> Result<BTreeMap<CoxeterElement, Laurent>> {
        self.expand(h, &self.c_prime, |l| l as i32)
    }

    /// `T_x⁻¹ T_y`.
    pub fn standard_quotient(&self, x: CoxeterElement, y: CoxeterElement) -> Hecke {
        let alg = &self.algebra;
        let g = self.group();
        let mut h = alg.one();
        for s in g.reduced_word(x).into_iter().rev() {
            h = alg.mul_t_inv_right(&h, s);
        }
        for s in g.reduced_word(y) {
            h = alg.mul_t_right(&h, s);
        }
        h
    }

    /// Pairs `(x, y)` whose `T_x⁻¹ T_y` has a coefficient outside `N[v, v⁻¹]`.
    pub fn quotient_positivity_failures(&self) -> Result<Vec<(CoxeterElement, CoxeterElement)>> {
        let g = self.group();
        let pairs: Vec<(CoxeterElement, CoxeterElement)> =
            g.elements().flat_map(|x| g.elements().map(move |y| (x, y))).collect();
        let results: Result<Vec<Option<(CoxeterElement, CoxeterElement)>>> = pairs
            .par_iter()
            .map(|&(x, y)| {
                let exp = self.expand_in_c(&self.standard_quotient(x, y))?;
                Ok((!exp.values().all(Laurent::is_nonnegative)).then_some((x, y)))
            })
            .collect();
        Ok(results?.into_iter().flatten().collect())
    }

    /// Expands `a(b(u))` in `{C_w}` for every divisor `u` of the dual monoid.
    pub fn positivity_report(&self, dual: &DualMonoid) -> Result<Vec<PositivityItem>> {
        let g = self.group();
        if dual.group().coxeter_type() != g.coxeter_type() {
            return Err(Error::TypeMismatch("dual monoid over another group".into()));
        }
        dual.divisors()
            .par_iter()
            .map(|&u| {
                let nf = dual.embed_simple(u)?;
                let letters = dual.braids().to_letters(&nf);
                let image = self.algebra.braid_image_a::<i64>(&letters)?;
                let exp = self.expand_in_c(&image)?;
                let positive = exp.values().all(Laurent::is_nonnegative);
                Ok(PositivityItem {
                    divisor: dual
                        .t_reduced_factorization(u)?
                        .into_iter()
                        .map(|t| g.reduced_word(t).into_iter().map(|s| s + 1).collect())
                        .collect(),
                    coefficients: exp.iter().map(|(&w, p)| (word_key(g, w), p.to_string())).collect(),
                    positive,
                })
            })
            .collect()
    }

    /// Elements whose `C′_w` is not bar-invariant.
    pub fn bar_invariance_failures(&self) -> Vec<CoxeterElement> {
        let basis = self.algebra.bar_basis::<i64>();
        self.group()
            .elements()
            .filter(|&w| self.algebra.bar(self.c_prime(w), &basis) != *self.c_prime(w))
            .collect()
    }

    /// Elements with `C_w ≠ (−1)^{ℓ(w)} j_H(C′_w)`.
    pub fn sign_twist_failures(&self) -> Vec<CoxeterElement> {
        let g = self.group();
        self.group()
            .elements()
            .filter(|&w| {
                let sign = Laurent::constant(if g.length(w) % 2 == 0 { 1 } else { -1 });
                self.algebra.j_h(self.c_prime(w)).scale(&sign) != *self.c(w)
            })
            .collect()
    }

    /// Elements where `C′_w` is not `v^{ℓ(w)} T_w` plus terms `T_y` with `y < w`.
    pub fn unitriangularity_failures(&self) -> Vec<CoxeterElement> {
        let g = self.group();
        g.elements()
            .filter(|&w| {
                let h = self.c_prime(w);
                *h.coeff(w) != Laurent::v_pow(g.length(w) as i32)
                    || h.support().any(|(y, _)| !self.bruhat.leq(y, w))
            })
            .collect()
    }

    /// Pairs violating `deg P_{y,w} ≤ (ℓ(w) − ℓ(y) − 1)/2` for `y < w`, or
    /// `P_{w,w} = 1`, or `P_{y,w}(0) = 1` for `y ≤ w`.
    pub fn degree_bound_failures(&self) -> Vec<(CoxeterElement, CoxeterElement)> {
        let g = self.group();
        let mut out = Vec::new();
        for w in g.elements() {
            for y in g.elements() {
                let poly = self.polynomial(y, w);
                let ok = if y == w {
                    poly == [1]
                } else if self.bruhat.leq(y, w) {
                    let d = g.length(w) - g.length(y);
                    poly.first() == Some(&1) && 2 * (poly.len() - 1) < d
                } else {
                    poly.is_empty()
                };
                if !ok {
                    out.push((y, w));
                }
            }
        }
        out
    }

    /// Elements where `C′_s C′_v ≠ C′_{sv} + Σ μ(z,v) C′_z` (sum over
    /// `z < v` with `sz < z`), for the first left descent `s` of `sv`.
    pub fn multiplication_rule_failures(&self) -> Vec<CoxeterElement> {
        let g = self.group();
        let alg = &self.algebra;
        g.elements()
            .filter(|&w| {
                let Some(s) = g.left_descents(w).first() else { return false };
                let v = g.mul_gen_left(s, w);
                let cv = self.c_prime(v);
                // C′_s = v (T_s + 1)
                let mut lhs = alg.mul_t_left(s, cv).add(cv).scale(&Laurent::v());
                for z in g.elements() {
                    let m = self.mu(z, v);
                    if m != 0 && g.left_descents(z).contains(s) {
                        lhs.add_scaled(&Laurent::constant(-m), self.c_prime(z));
                    }
                }
                lhs != *self.c_prime(w)
            })
            .collect()
    }
}

impl std::fmt::Debug for KlTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "KlTable({})", self.group().coxeter_type())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use std::sync::Arc;

    fn table(ty: CoxeterType) -> KlTable {
        KlTable::new(&HeckeAlgebra::new(Arc::new(CoxeterGroup::new(ty).unwrap()))).unwrap()
    }

    #[test]
    fn small_canonical_elements() {
        let kl = table(CoxeterType::a(2).unwrap());
        let g = kl.group();
        let alg = kl.algebra();
        let s = g.generator(0);
        assert_eq!(*kl.c_prime(g.identity()), alg.one());
        // C′_s = v T_s + v
        let mut expected: Hecke = alg.monomial(Laurent::v(), s);
        *expected.coeff_mut(g.identity()) = Laurent::v();
        assert_eq!(*kl.c_prime(s), expected);
        assert_eq!(kl.polynomial(g.identity(), g.longest_element()), [1]);
    }

    #[test]
    fn internal_consistency_in_rank_three() {
        for ty in [CoxeterType::a(3).unwrap(), CoxeterType::b(3).unwrap()] {
            let kl = table(ty);
            assert!(kl.bar_invariance_failures().is_empty(), "{ty}");
            assert!(kl.sign_twist_failures().is_empty(), "{ty}");
            assert!(kl.unitriangularity_failures().is_empty(), "{ty}");
            assert!(kl.degree_bound_failures().is_empty(), "{ty}");
            assert!(kl.multiplication_rule_failures().is_empty(), "{ty}");
        }
    }

    #[test]
    fn nontrivial_polynomial_in_a3() {
        // P_{s2, s2 s1 s3 s2} = 1 + q
        let kl = table(CoxeterType::a(3).unwrap());
        let g = kl.group();
        let w = g.element_from_word(&[1, 0, 2, 1]).unwrap();
        assert_eq!(kl.polynomial(g.generator(1), w), [1, 1]);
        assert_eq!(kl.polynomial(g.identity(), w), [1, 1]);
    }

    #[test]
    fn expansion_of_basis_elements() {
        let kl = table(CoxeterType::a(2).unwrap());
        let g = kl.group();
        for w in g.elements() {
            let exp = kl.expand_in_c(kl.c(w)).unwrap();
            assert_eq!(exp.len(), 1);
            assert_eq!(exp[&w], Laurent::one());
        }
        let unit = kl.expand_in_c(&kl.algebra().one()).unwrap();
        assert_eq!(unit.into_iter().collect::<Vec<_>>(), vec![(g.identity(), Laurent::one())]);
    }

    #[test]
    fn quotients_are_positive_in_a2() {
        assert!(table(CoxeterType::a(2).unwrap()).quotient_positivity_failures().unwrap().is_empty());
    }

    #[test]
    fn budget() {
        let alg = HeckeAlgebra::new(Arc::new(CoxeterGroup::new(CoxeterType::a(3).unwrap()).unwrap()));
        assert!(matches!(KlTable::with_max_order(&alg, 10), Err(Error::Resource(_))));
    }
}
