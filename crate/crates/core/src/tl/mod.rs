//! The Temperley–Lieb quotient of the type A Hecke algebra, realized as the
//! diagram algebra on `n + 1` strands with loop value `v + v⁻¹`.

mod zinno;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::coxeter::{CoxeterElement, CoxeterGroup, Family, Payload};
use crate::error::{Error, Result};
use crate::hecke::HeckeAlgebra;
use crate::{Hecke, Laurent};

pub use zinno::{
    fg_projection_failures, positivity_tl_report, triangularity_check, zinno_matrix, TlPositivityItem,
    TriangularityReport, ZinnoMatrix, ZinnoRow,
};

/// Planar perfect matching of `N` top points `0..N` and `N` bottom points
/// `N..2N`, both numbered left to right.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TlDiagram {
    partner: Vec<u8>,
}

impl TlDiagram {
    pub fn identity(strands: usize) -> Self {
        let partner = (0..2 * strands).map(|p| ((p + strands) % (2 * strands)) as u8).collect();
        TlDiagram { partner }
    }

    /// Cup-cap joining strands `i` and `i + 1` (0-based).
    pub fn cup_cap(strands: usize, i: usize) -> Self {
        let mut d = Self::identity(strands);
        let n = strands;
        d.partner[i] = (i + 1) as u8;
        d.partner[i + 1] = i as u8;
        d.partner[n + i] = (n + i + 1) as u8;
        d.partner[n + i + 1] = (n + i) as u8;
        d
    }

    pub fn from_partner(partner: Vec<u8>) -> Result<Self> {
        let d = TlDiagram { partner };
        let m = d.partner.len();
        let involutive = m % 2 == 0
            && d.partner
                .iter()
                .enumerate()
                .all(|(p, &q)| (q as usize) < m && q as usize != p && d.partner[q as usize] as usize == p);
        if !involutive || !d.is_planar() {
            return Err(Error::Domain("not a planar perfect matching".into()));
        }
        Ok(d)
    }

    pub fn strands(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn partner(&self, p: usize) -> usize {
        self.partner[p] as usize
    }

    /// Position on the boundary circle: tops left to right, then bottoms
    /// right to left.
    fn circle(&self, p: usize) -> usize {
        let n = self.strands();
        if p < n {
            p
        } else {
            3 * n - 1 - p
        }
    }

    pub fn is_planar(&self) -> bool {
        let chords: Vec<(usize, usize)> = (0..self.partner.len())
            .filter(|&p| p < self.partner(p))
            .map(|p| {
                let (a, b) = (self.circle(p), self.circle(self.partner(p)));
                (a.min(b), a.max(b))
            })
            .collect();
        chords
            .iter()
            .all(|&(a, b)| chords.iter().all(|&(c, d)| !(a < c && c < b && b < d)))
    }

    /// Stacks `self` above `below`; returns the diagram and the number of
    /// closed loops.
    pub fn compose(&self, below: &Self) -> (TlDiagram, u32) {
        let n = self.strands();
        let mut partner = vec![0u8; 2 * n];
        let mut seen = vec![false; n];
        // outer endpoints: tops of `self` and bottoms of `below`
        for (start_above, start) in (0..n).map(|p| (true, p)).chain((n..2 * n).map(|p| (false, p))) {
            let (mut above, mut p) = (start_above, start);
            loop {
                let q = if above { self.partner(p) } else { below.partner(p) };
                if above && q >= n {
                    seen[q - n] = true;
                    above = false;
                    p = q - n;
                } else if !above && q < n {
                    seen[q] = true;
                    above = true;
                    p = n + q;
                } else {
                    partner[start] = q as u8;
                    break;
                }
            }
        }
        let mut loops = 0;
        for j in 0..n {
            if seen[j] {
                continue;
            }
            loops += 1;
            let mut k = j;
            loop {
                seen[k] = true;
                let a = self.partner(n + k) - n;
                seen[a] = true;
                k = below.partner(a);
                if k == j {
                    break;
                }
            }
        }
        (TlDiagram { partner }, loops)
    }
}

/// All planar diagrams on `strands` strands, sorted.
pub fn planar_diagrams(strands: usize) -> Vec<TlDiagram> {
    fn matchings(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
        if points.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for k in (1..points.len()).step_by(2) {
            for inner in matchings(&points[1..k]) {
                for outer in matchings(&points[k + 1..]) {
                    let mut m = vec![(points[0], points[k])];
                    m.extend(inner.iter().copied());
                    m.extend(outer);
                    out.push(m);
                }
            }
        }
        out
    }
    let n = strands;
    let from_circle = |c: usize| if c < n { c } else { 3 * n - 1 - c };
    let circle: Vec<usize> = (0..2 * n).collect();
    let mut out: Vec<TlDiagram> = matchings(&circle)
        .into_iter()
        .map(|m| {
            let mut partner = vec![0u8; 2 * n];
            for (a, b) in m {
                partner[from_circle(a)] = from_circle(b) as u8;
                partner[from_circle(b)] = from_circle(a) as u8;
            }
            TlDiagram { partner }
        })
        .collect();
    out.sort();
    out
}

/// Linear combination of diagrams; never stores a zero coefficient.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct TlElement {
    terms: BTreeMap<TlDiagram, Laurent>,
}

impl TlElement {
    pub fn monomial(p: Laurent, d: TlDiagram) -> Self {
        let mut x = TlElement::default();
        x.add_term(d, &p);
        x
    }

    pub fn add_term(&mut self, d: TlDiagram, p: &Laurent) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(d).or_insert_with(Laurent::zero);
        *entry += p;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TlDiagram, &Laurent)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &TlDiagram) -> Laurent {
        self.terms.get(d).cloned().unwrap_or_else(Laurent::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, p: &Laurent) -> Self {
        let mut out = TlElement::default();
        for (d, c) in &self.terms {
            out.add_term(d.clone(), &(c * p));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Laurent::one()))
    }
}

impl std::fmt::Debug for TlElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(d, c)| (&d.partner, c.to_string()))).finish()
    }
}

/// Whether the one-line notation contains no decreasing subsequence of length 3.
pub fn is_321_avoiding(perm: &[u8]) -> bool {
    // a 321 pattern exists iff some middle entry has a larger entry before it
    // and a smaller one after it
    let n = perm.len();
    let mut prefix_max = vec![0u8; n];
    let mut suffix_min = vec![u8::MAX; n];
    for i in 1..n {
        prefix_max[i] = prefix_max[i - 1].max(perm[i - 1]);
    }
    for i in (0..n.saturating_sub(1)).rev() {
        suffix_min[i] = suffix_min[i + 1].min(perm[i + 1]);
    }
    (0..n).all(|j| !(j > 0 && j + 1 < n && prefix_max[j] > perm[j] && suffix_min[j] < perm[j]))
}

fn require_type_a(g: &CoxeterGroup) -> Result<()> {
    if g.coxeter_type().family != Family::A {
        return Err(Error::TypeMismatch(format!("Temperley–Lieb quotient needs type A, got {}", g.coxeter_type())));
    }
    Ok(())
}

/// Fully commutative elements by 321-avoidance, sorted by length then index.
pub fn fully_commutative(g: &CoxeterGroup) -> Result<Vec<CoxeterElement>> {
    require_type_a(g)?;
    let mut out: Vec<CoxeterElement> = g
        .elements()
        .filter(|&w| match g.payload(w) {
            Payload::Perm(p) => is_321_avoiding(p),
            _ => false,
        })
        .collect();
    out.sort_by_key(|&w| (g.length(w), w));
    Ok(out)
}

/// Definitional oracle: the commutation class of one reduced word contains
/// every reduced word.
pub fn fully_commutative_by_commutation(g: &CoxeterGroup) -> Vec<CoxeterElement> {
    let m = g.coxeter_matrix();
    let mut out: Vec<CoxeterElement> = g
        .elements()
        .filter(|&w| {
            let start = g.reduced_word(w);
            let mut class = BTreeSet::from([start.clone()]);
            let mut queue = VecDeque::from([start]);
            while let Some(word) = queue.pop_front() {
                for i in 0..word.len().saturating_sub(1) {
                    if m[word[i]][word[i + 1]] == 2 {
                        let mut next = word.clone();
                        next.swap(i, i + 1);
                        if class.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
            }
            class.len() == g.all_reduced_words(w).len()
        })
        .collect();
    out.sort_by_key(|&w| (g.length(w), w));
    out
}

/// `TL_n` together with the quotient maps from `H(A_n)`.
pub struct TemperleyLieb {
    hecke: HeckeAlgebra,
    strands: usize,
    fc: Vec<CoxeterElement>,
    diagram_of: BTreeMap<CoxeterElement, TlDiagram>,
    element_of: BTreeMap<TlDiagram, CoxeterElement>,
    /// `θ(T_w)` and `θ′(T_w)` for every `w`.
    theta_t: Vec<TlElement>,
    theta_prime_t: Vec<TlElement>,
}

impl TemperleyLieb {
    pub fn new(group: Arc<CoxeterGroup>) -> Result<Self> {
        require_type_a(&group)?;
        let strands = group.rank() + 1;
        let fc = fully_commutative(&group)?;
        let mut tl = TemperleyLieb {
            hecke: HeckeAlgebra::new(group),
            strands,
            fc: Vec::new(),
            diagram_of: BTreeMap::new(),
            element_of: BTreeMap::new(),
            theta_t: Vec::new(),
            theta_prime_t: Vec::new(),
        };
        let g = tl.hecke.group_arc().clone();
        for &w in &fc {
            let words = g.all_reduced_words(w);
            let first = tl.word_product(&words[0]);
            let last = tl.word_product(&words[words.len() - 1]);
            if first != last {
                return Err(Error::Integrity("b_w depends on the reduced word".into()));
            }
            let mut terms = first.terms();
            let d = match (terms.next(), terms.next()) {
                (Some((d, c)), None) if c.is_one() => d.clone(),
                _ => return Err(Error::Integrity("b_w is not a single diagram".into())),
            };
            if tl.element_of.insert(d.clone(), w).is_some() {
                return Err(Error::Integrity("two fully commutative elements share a diagram".into()));
            }
            tl.diagram_of.insert(w, d);
        }
        if tl.element_of.len() != planar_diagrams(strands).len() {
            return Err(Error::Integrity("fully commutative elements do not index all diagrams".into()));
        }
        tl.fc = fc;
        let (theta, theta_prime) = tl.standard_images();
        tl.theta_t = theta;
        tl.theta_prime_t = theta_prime;
        Ok(tl)
    }

    fn standard_images(&self) -> (Vec<TlElement>, Vec<TlElement>) {
        let g = self.group();
        let v_inv = Laurent::v_pow(-1);
        let mut by_length: Vec<CoxeterElement> = g.elements().collect();
        by_length.sort_by_key(|&w| g.length(w));
        let mut theta = vec![TlElement::default(); g.order()];
        let mut theta_prime = vec![TlElement::default(); g.order()];
        for w in by_length {
            match g.reduced_word(w).last() {
                None => {
                    theta[w.index()] = self.unit();
                    theta_prime[w.index()] = self.unit();
                }
                Some(&s) => {
                    let parent = g.mul_gen_right(w, s);
                    let b = self.b(s);
                    // θ(T_s) = v⁻¹ b_s − 1, θ′(T_s) = v⁻² − v⁻¹ b_s
                    let t = b.scale(&v_inv).sub(&self.unit());
                    let t_prime = self.unit().scale(&Laurent::v_pow(-2)).sub(&b.scale(&v_inv));
                    theta[w.index()] = self.mul(&theta[parent.index()], &t);
                    theta_prime[w.index()] = self.mul(&theta_prime[parent.index()], &t_prime);
                }
            }
        }
        (theta, theta_prime)
    }

    pub fn group(&self) -> &CoxeterGroup {
        self.hecke.group()
    }

    pub fn hecke(&self) -> &HeckeAlgebra {
        &self.hecke
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn dimension(&self) -> usize {
        self.fc.len()
    }

    /// `W_f`, sorted by length then index.
    pub fn fully_commutative(&self) -> &[CoxeterElement] {
        &self.fc
    }

    pub fn is_fully_commutative(&self, w: CoxeterElement) -> bool {
        self.diagram_of.contains_key(&w)
    }

    pub fn unit(&self) -> TlElement {
        TlElement::monomial(Laurent::one(), TlDiagram::identity(self.strands))
    }

    /// The generator `b_s` for the 0-based simple reflection `s`.
    pub fn b(&self, s: usize) -> TlElement {
        TlElement::monomial(Laurent::one(), TlDiagram::cup_cap(self.strands, s))
    }

    pub fn b_w(&self, w: CoxeterElement) -> Result<TlElement> {
        self.diagram_of
            .get(&w)
            .map(|d| TlElement::monomial(Laurent::one(), d.clone()))
            .ok_or_else(|| Error::Domain("b_w needs a fully commutative w".into()))
    }

    fn word_product(&self, word: &[usize]) -> TlElement {
        word.iter().fold(self.unit(), |acc, &s| self.mul(&acc, &self.b(s)))
    }

    /// `b_{s_1} ⋯ b_{s_k}` for a 0-based word.
    pub fn b_word(&self, word: &[usize]) -> Result<TlElement> {
        if let Some(s) = word.iter().find(|&&s| s >= self.group().rank()) {
            return Err(Error::Domain(format!("generator {s} out of range")));
        }
        Ok(self.word_product(word))
    }

    pub fn mul(&self, a: &TlElement, b: &TlElement) -> TlElement {
        let loop_value = Laurent::v() + Laurent::v_pow(-1);
        let mut out = TlElement::default();
        for (da, ca) in a.terms() {
            for (db, cb) in b.terms() {
                let (d, loops) = da.compose(db);
                out.add_term(d, &(&(ca * cb) * &loop_value.pow(loops)));
            }
        }
        out
    }

    /// Semilinear involution fixing every `b_s`.
    pub fn j_tl(&self, x: &TlElement) -> TlElement {
        let mut out = TlElement::default();
        for (d, c) in x.terms() {
            out.add_term(d.clone(), &c.bar());
        }
        out
    }

    pub fn theta_t(&self, w: CoxeterElement) -> &TlElement {
        &self.theta_t[w.index()]
    }

    pub fn theta(&self, h: &Hecke) -> TlElement {
        h.support().fold(TlElement::default(), |acc, (w, p)| acc.add(&self.theta_t[w.index()].scale(p)))
    }

    pub fn theta_prime(&self, h: &Hecke) -> TlElement {
        h.support().fold(TlElement::default(), |acc, (w, p)| acc.add(&self.theta_prime_t[w.index()].scale(p)))
    }

    /// Image of a signed braid word: `σ_i ↦ v⁻¹ − b_{s_i}`, `σ_i⁻¹ ↦ v − b_{s_i}`.
    pub fn omega(&self, letters: &[i32]) -> Result<TlElement> {
        let n = self.group().rank() as i32;
        let mut out = self.unit();
        for &l in letters {
            if l == 0 || l.abs() > n {
                return Err(Error::Domain(format!("letter {l} outside ±1..±{n}")));
            }
            let scalar = Laurent::v_pow(-l.signum());
            let image = self.unit().scale(&scalar).sub(&self.b(l.unsigned_abs() as usize - 1));
            out = self.mul(&out, &image);
        }
        Ok(out)
    }

    /// Coordinates on `{b_w}`.
    pub fn coordinates(&self, x: &TlElement) -> BTreeMap<CoxeterElement, Laurent> {
        x.terms().map(|(d, c)| (self.element_of[d], c.clone())).collect()
    }

    /// Failed instances among the three presentation relation families.
    pub fn relation_failures(&self) -> Vec<String> {
        let n = self.group().rank();
        let loop_value = Laurent::v() + Laurent::v_pow(-1);
        let mut out = Vec::new();
        for i in 0..n {
            let bi = self.b(i);
            if self.mul(&bi, &bi) != bi.scale(&loop_value) {
                out.push(format!("b{0}b{0} = (v+v^-1)b{0}", i + 1));
            }
            for j in 0..n {
                let bj = self.b(j);
                if i.abs_diff(j) == 1 && self.mul(&self.mul(&bi, &bj), &bi) != bi {
                    out.push(format!("b{0}b{1}b{0} = b{0}", i + 1, j + 1));
                }
                if i.abs_diff(j) > 1 && self.mul(&bi, &bj) != self.mul(&bj, &bi) {
                    out.push(format!("b{}b{} = b{}b{}", i + 1, j + 1, j + 1, i + 1));
                }
            }
        }
        out
    }

    /// Failures of θ and θ′ as algebra maps: quadratic and braid relations of
    /// `H`, and vanishing on the ideal generators.
    pub fn quotient_map_failures(&self) -> Vec<String> {
        let g = self.group();
        let alg = &self.hecke;
        let n = g.rank();
        let mut out = Vec::new();
        let maps: [(&str, &dyn Fn(&Hecke) -> TlElement); 2] =
            [("theta", &|h| self.theta(h)), ("theta'", &|h| self.theta_prime(h))];
        for (name, map) in maps {
            for s in 0..n {
                let ts: Hecke = alg.t(g.generator(s));
                let lhs = self.mul(&map(&ts), &map(&ts));
                if lhs != map(&alg.mul(&ts, &ts)) {
                    out.push(format!("{name}: quadratic relation at s{}", s + 1));
                }
                for t in 0..n {
                    let m = g.coxeter_matrix()[s][t] as usize;
                    if s >= t {
                        continue;
                    }
                    let alt = |a: usize, b: usize| -> Vec<usize> { (0..m).map(|k| if k % 2 == 0 { a } else { b }).collect() };
                    let image = |word: &[usize]| {
                        word.iter().fold(self.unit(), |acc, &u| self.mul(&acc, &map(&alg.t(g.generator(u)))))
                    };
                    if image(&alt(s, t)) != image(&alt(t, s)) {
                        out.push(format!("{name}: braid relation s{} s{}", s + 1, t + 1));
                    }
                }
            }
            for i in 0..n.saturating_sub(1) {
                let mut ideal: Hecke = alg.zero();
                for word in [&[][..], &[i], &[i + 1], &[i, i + 1], &[i + 1, i], &[i, i + 1, i]] {
                    let w = g.element_from_word(word).expect("valid word");
                    let l = word.len() as i32;
                    let c = if name == "theta" {
                        Laurent::one()
                    } else {
                        Laurent::monomial(if l % 2 == 0 { 1 } else { -1 }, 2 * l)
                    };
                    *ideal.coeff_mut(w) = c;
                }
                if !map(&ideal).is_zero() {
                    out.push(format!("{name}: ideal generator at s{} s{}", i + 1, i + 2));
                }
            }
        }
        out
    }
}

impl std::fmt::Debug for TemperleyLieb {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TemperleyLieb({} strands)", self.strands)
    }
}
