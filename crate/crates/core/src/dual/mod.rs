//! The dual braid monoid of a standard Coxeter element, realized inside the
//! classical braid group.

mod ncp;

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::hash::Hash;

use serde::Serialize;

use crate::coxeter::{CoxeterElement, CoxeterGroup, StandardCoxeterElement};
use crate::error::{Error, Result};
use crate::garside::{BraidGroup, GarsideNormalForm};

pub use ncp::{all_noncrossing_partitions, circle_sequence, ncp_decode, ncp_encode, NoncrossingPartition};

/// `DIV(c)`, by breadth-first search from `e` along reflections that keep
/// the product below `c`. Sorted by reflection length, then index.
pub fn divisors_of(g: &CoxeterGroup, c: CoxeterElement) -> Result<Vec<CoxeterElement>> {
    ensure_standard(g, c)?;
    let mut seen = HashSet::from([g.identity()]);
    let mut queue = VecDeque::from([g.identity()]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        out.push(x);
        let lx = g.reflection_length(x);
        for &t in g.reflections() {
            let y = g.mul(x, t);
            if g.reflection_length(y) == lx + 1 && g.abs_divides(y, c) && seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    out.sort_by_key(|&x| (g.reflection_length(x), x));
    Ok(out)
}

fn ensure_standard(g: &CoxeterGroup, c: CoxeterElement) -> Result<()> {
    if g.standard_coxeter_elements()?.iter().any(|s| s.element == c) {
        Ok(())
    } else {
        Err(Error::Precondition("not a standard Coxeter element".into()))
    }
}

/// Breadth-first closure of a tuple under the Hurwitz moves and their
/// inverses. `forward(a, b) = (a b a⁻¹, a)`, `backward(a, b) = (b, b⁻¹ a b)`.
pub fn hurwitz_orbit<E, F, B>(start: Vec<E>, forward: F, backward: B) -> BTreeSet<Vec<E>>
where
    E: Clone + Eq + Hash + Ord,
    F: Fn(&E, &E) -> (E, E),
    B: Fn(&E, &E) -> (E, E),
{
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(tuple) = queue.pop_front() {
        for i in 0..tuple.len().saturating_sub(1) {
            for (a, b) in [forward(&tuple[i], &tuple[i + 1]), backward(&tuple[i], &tuple[i + 1])] {
                let mut next = tuple.clone();
                next[i] = a;
                next[i + 1] = b;
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    seen
}

/// Hurwitz orbit of a tuple of group elements.
pub fn hurwitz_orbit_in_group(g: &CoxeterGroup, start: Vec<CoxeterElement>) -> BTreeSet<Vec<CoxeterElement>> {
    hurwitz_orbit(
        start,
        |&a, &b| (g.conjugate(a, b), a),
        |&a, &b| (b, g.conjugate(g.inverse(b), a)),
    )
}

/// Hurwitz orbit of a tuple of braids, deduplicated by normal form.
pub fn hurwitz_orbit_in_braids(b: &BraidGroup, start: Vec<GarsideNormalForm>) -> BTreeSet<Vec<GarsideNormalForm>> {
    hurwitz_orbit(
        start,
        |x, y| (b.mul(&b.mul(x, y), &b.inverse(x)), x.clone()),
        |x, y| (y.clone(), b.mul(&b.mul(&b.inverse(y), x), y)),
    )
}

/// Every factorization of `x` into `ℓ_T(x)` reflections, by exhaustive
/// search over `T^{ℓ_T(x)}` without pruning.
pub fn reduced_reflection_factorizations(g: &CoxeterGroup, x: CoxeterElement) -> Vec<Vec<CoxeterElement>> {
    let k = g.reflection_length(x);
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(k);
    fn rec(
        g: &CoxeterGroup,
        k: usize,
        acc: CoxeterElement,
        target: CoxeterElement,
        stack: &mut Vec<CoxeterElement>,
        out: &mut Vec<Vec<CoxeterElement>>,
    ) {
        if stack.len() == k {
            if acc == target {
                out.push(stack.clone());
            }
            return;
        }
        for &t in g.reflections() {
            stack.push(t);
            rec(g, k, g.mul(acc, t), target, stack, out);
            stack.pop();
        }
    }
    rec(g, k, g.identity(), x, &mut stack, &mut out);
    out
}

/// One atom of the dual monoid.
#[derive(Clone, Debug)]
pub struct DualAtom {
    pub reflection: CoxeterElement,
    /// The formula word for the smallest index producing this reflection.
    pub letters: Vec<i32>,
    pub braid: GarsideNormalForm,
    /// All formula indices `0 ≤ i < 2|T|` producing this reflection.
    pub indices: Vec<usize>,
}

/// Result of checking one dual braid relation `b(t1) b(t2) = b(t2) b(t3)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualRelation {
    pub t1: Vec<usize>,
    pub t2: Vec<usize>,
    pub t3: Vec<usize>,
    pub holds: bool,
}

/// Outcome of the Bruhat comparison for one divisor of the linear Coxeter element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruhatWitness {
    pub divisor: Vec<usize>,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    /// The left-coprime fraction already satisfies `x < y`.
    pub coprime: bool,
    pub holds: bool,
}

/// Dual structure attached to a standard Coxeter element.
pub struct DualMonoid {
    braids: BraidGroup,
    coxeter: StandardCoxeterElement,
    divisors: Vec<CoxeterElement>,
    is_divisor: Vec<bool>,
    atoms: BTreeMap<CoxeterElement, DualAtom>,
}

impl DualMonoid {
    pub fn new(braids: &BraidGroup, coxeter: &StandardCoxeterElement) -> Result<Self> {
        let g = braids.group();
        g.check_coxeter_ordering(coxeter.element, &coxeter.ordering)?;
        let divisors = divisors_of(g, coxeter.element)?;
        let mut is_divisor = vec![false; g.order()];
        for &d in &divisors {
            is_divisor[d.index()] = true;
        }
        let atoms = dual_atoms(braids, &coxeter.ordering)?;
        Ok(DualMonoid {
            braids: braids.clone(),
            coxeter: coxeter.clone(),
            divisors,
            is_divisor,
            atoms,
        })
    }

    pub fn braids(&self) -> &BraidGroup {
        &self.braids
    }

    pub fn group(&self) -> &CoxeterGroup {
        self.braids.group()
    }

    pub fn coxeter_element(&self) -> &StandardCoxeterElement {
        &self.coxeter
    }

    pub fn divisors(&self) -> &[CoxeterElement] {
        &self.divisors
    }

    pub fn is_divisor(&self, x: CoxeterElement) -> bool {
        self.is_divisor[x.index()]
    }

    pub fn atoms(&self) -> &BTreeMap<CoxeterElement, DualAtom> {
        &self.atoms
    }

    pub fn atom(&self, t: CoxeterElement) -> Result<&DualAtom> {
        self.atoms
            .get(&t)
            .ok_or_else(|| Error::Domain("not a reflection".into()))
    }

    fn ensure_divisor(&self, x: CoxeterElement) -> Result<()> {
        if self.is_divisor(x) {
            Ok(())
        } else {
            Err(Error::Domain("element does not divide the Coxeter element".into()))
        }
    }

    /// Greedy `T`-reduced factorization of a divisor.
    pub fn t_reduced_factorization(&self, x: CoxeterElement) -> Result<Vec<CoxeterElement>> {
        self.ensure_divisor(x)?;
        let g = self.group();
        let mut rest = x;
        let mut out = Vec::new();
        while rest != g.identity() {
            let t = *g
                .reflections()
                .iter()
                .find(|&&t| g.abs_divides(t, rest))
                .ok_or_else(|| Error::Integrity("no reflection divides a nontrivial element".into()))?;
            out.push(t);
            rest = g.mul(t, rest);
        }
        Ok(out)
    }

    /// The simple dual braid lifting `x`, as a product of atoms along a
    /// `T`-reduced factorization.
    pub fn embed_simple(&self, x: CoxeterElement) -> Result<GarsideNormalForm> {
        let factors = self.t_reduced_factorization(x)?;
        self.embed_factorization(&factors)
    }

    pub fn embed_factorization(&self, factors: &[CoxeterElement]) -> Result<GarsideNormalForm> {
        let mut out = self.braids.identity();
        for &t in factors {
            out = self.braids.mul(&out, &self.atom(t)?.braid);
        }
        Ok(out)
    }

    /// Checks `b(t1) b(t2) = b(t2) b(t3)` for every pair with
    /// `t1 t2 = t2 t3 ≼_T c` of reflection length 2.
    pub fn verify_dual_relations(&self) -> Vec<DualRelation> {
        let g = self.group();
        let mut out = Vec::new();
        for &t1 in g.reflections() {
            for &t2 in g.reflections() {
                let p = g.mul(t1, t2);
                if g.reflection_length(p) != 2 || !self.is_divisor(p) {
                    continue;
                }
                let t3 = g.conjugate(g.inverse(t2), t1);
                let b = &self.braids;
                let lhs = b.mul(&self.atoms[&t1].braid, &self.atoms[&t2].braid);
                let rhs = b.mul(&self.atoms[&t2].braid, &self.atoms[&t3].braid);
                out.push(DualRelation {
                    t1: g.reduced_word(t1),
                    t2: g.reduced_word(t2),
                    t3: g.reduced_word(t3),
                    holds: lhs == rhs,
                });
            }
        }
        out
    }

    /// For every nontrivial divisor `u`, finds `x < y` (Bruhat) with
    /// `b(u) = b(x)⁻¹ b(y)`; the coprime fraction is tried first, then every
    /// `(mx, my)` with lengths adding up.
    pub fn bruhat_fraction_check(&self) -> Result<Vec<BruhatWitness>> {
        let g = self.group();
        let b = &self.braids;
        let mut out = Vec::new();
        for &u in self.divisors.iter().filter(|&&u| u != g.identity()) {
            let nf = self.embed_simple(u)?;
            let (x, y) = b.fraction_form(&nf)?;
            let strict = |x: CoxeterElement, y: CoxeterElement| x != y && g.bruhat_leq(x, y);
            let witness = if strict(x, y) {
                Some((x, y, true))
            } else {
                g.elements()
                    .map(|m| (g.mul(m, x), g.mul(m, y), m))
                    .find(|&(mx, my, m)| {
                        g.length(mx) == g.length(m) + g.length(x)
                            && g.length(my) == g.length(m) + g.length(y)
                            && strict(mx, my)
                    })
                    .map(|(mx, my, _)| (mx, my, false))
            };
            let (wx, wy, coprime, holds) = match witness {
                Some((wx, wy, coprime)) => (wx, wy, coprime, true),
                None => (x, y, true, false),
            };
            out.push(BruhatWitness {
                divisor: g.reduced_word(u),
                x: g.reduced_word(wx),
                y: g.reduced_word(wy),
                coprime,
                holds,
            });
        }
        Ok(out)
    }

    /// Divisor lattice as `(element, ℓ_T, covers)` with covers by index
    /// into [`DualMonoid::divisors`].
    pub fn lattice(&self) -> Vec<(CoxeterElement, usize, Vec<usize>)> {
        let g = self.group();
        self.divisors
            .iter()
            .map(|&x| {
                let lx = g.reflection_length(x);
                let covers = self
                    .divisors
                    .iter()
                    .enumerate()
                    .filter(|&(_, &y)| g.reflection_length(y) == lx + 1 && g.abs_divides(x, y))
                    .map(|(i, _)| i)
                    .collect();
                (x, lx, covers)
            })
            .collect()
    }
}

/// Letters of `σ_{s_1} ⋯ σ_{s_i} σ_{s_{i+1}} σ_{s_i}⁻¹ ⋯ σ_{s_1}⁻¹`, indices mod `n`.
pub fn dual_atom_word(ordering: &[usize], i: usize) -> Vec<i32> {
    let n = ordering.len();
    let letter = |j: usize| ordering[j % n] as i32 + 1;
    let mut w: Vec<i32> = (0..i).map(letter).collect();
    w.push(letter(i));
    w.extend((0..i).rev().map(|j| -letter(j)));
    w
}

/// The atom table from the conjugation formula over `0 ≤ i < 2|T|`.
/// Indices giving the same reflection must give the same braid.
pub fn dual_atoms(braids: &BraidGroup, ordering: &[usize]) -> Result<BTreeMap<CoxeterElement, DualAtom>> {
    let g = braids.group();
    let mut atoms: BTreeMap<CoxeterElement, DualAtom> = BTreeMap::new();
    for i in 0..2 * g.reflections().len() {
        let letters = dual_atom_word(ordering, i);
        let braid = braids.normal_form(&letters)?;
        let t = braids.image(&braid);
        match atoms.get_mut(&t) {
            Some(atom) if atom.braid == braid => atom.indices.push(i),
            Some(atom) => {
                return Err(Error::Integrity(format!(
                    "formula indices {} and {i} give different lifts of one reflection",
                    atom.indices[0]
                )))
            }
            None => {
                atoms.insert(t, DualAtom { reflection: t, letters, braid, indices: vec![i] });
            }
        }
    }
    if atoms.len() != g.reflections().len() || atoms.keys().any(|&t| !g.is_reflection(t)) {
        return Err(Error::Integrity(format!(
            "formula produced {} atoms for {} reflections",
            atoms.len(),
            g.reflections().len()
        )));
    }
    Ok(atoms)
}

/// Dihedral atoms `(sts⋯)_k (sts⋯)_{k−1}⁻¹`, `1 ≤ k ≤ m`, for `c = st`.
pub fn dihedral_atoms_closed_form(braids: &BraidGroup) -> Result<Vec<GarsideNormalForm>> {
    let m = braids
        .coxeter_type()
        .m
        .ok_or_else(|| Error::TypeMismatch("closed form is for dihedral groups".into()))?;
    let alt = |k: usize| -> Vec<i32> { (0..k).map(|j| if j % 2 == 0 { 1 } else { 2 }).collect() };
    (1..=m as usize)
        .map(|k| {
            let mut w = alt(k);
            w.extend(alt(k - 1).into_iter().rev().map(|l| -l));
            braids.normal_form(&w)
        })
        .collect()
}
