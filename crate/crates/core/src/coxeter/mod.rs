//! Finite Coxeter groups with exact element arithmetic.
//!
//! A [`CoxeterGroup`] is built once from its type by closing the generator
//! payloads under multiplication. After that every element is a dense index
//! ([`CoxeterElement`]) and the common operations are table lookups.

mod backend;
mod order;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use backend::{Payload, SignedPerm};
pub use order::{type_b_embedding, type_b_to_a, BruhatTable, StandardCoxeterElement};

/// Largest group the enumerator will build without an explicit budget.
pub const DEFAULT_MAX_ORDER: usize = 50_000;

/// Multiplication tables are kept only up to this order.
const FULL_TABLE_LIMIT: usize = 1_500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    D,
    I2,
    H3,
    F4,
}

/// Type label of a finite irreducible Coxeter system.
///
/// Serializes as `{"family": "A", "rank": 3}` or
/// `{"family": "I2", "rank": 2, "m": 5}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoxeterType {
    pub family: Family,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
}

impl CoxeterType {
    pub fn new(family: Family, rank: usize, m: Option<u32>) -> Result<Self> {
        let ty = CoxeterType { family, rank, m };
        ty.validate()?;
        Ok(ty)
    }

    pub fn a(n: usize) -> Result<Self> {
        Self::new(Family::A, n, None)
    }

    pub fn b(n: usize) -> Result<Self> {
        Self::new(Family::B, n, None)
    }

    pub fn d(n: usize) -> Result<Self> {
        Self::new(Family::D, n, None)
    }

    pub fn i2(m: u32) -> Result<Self> {
        Self::new(Family::I2, 2, Some(m))
    }

    pub fn h3() -> Self {
        CoxeterType { family: Family::H3, rank: 3, m: None }
    }

    pub fn f4() -> Self {
        CoxeterType { family: Family::F4, rank: 4, m: None }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidType(format!("{self:?}: {why}")));
        match (self.family, self.rank, self.m) {
            (Family::I2, 2, Some(m)) if m >= 3 => Ok(()),
            (Family::I2, _, _) => bad("I2 needs rank 2 and m >= 3"),
            (_, _, Some(_)) => bad("only I2 takes m"),
            (Family::A, n, _) if (1..=20).contains(&n) => Ok(()),
            (Family::B, n, _) if (2..=20).contains(&n) => Ok(()),
            (Family::D, n, _) if (4..=20).contains(&n) => Ok(()),
            (Family::H3, 3, _) | (Family::F4, 4, _) => Ok(()),
            _ => bad("rank outside the family's range"),
        }
    }

    /// Classical group order, used as a budget estimate before enumeration.
    pub fn expected_order(&self) -> u128 {
        let fact = |k: usize| (1..=k as u128).product::<u128>();
        match self.family {
            Family::A => fact(self.rank + 1),
            Family::B => (1u128 << self.rank) * fact(self.rank),
            Family::D => (1u128 << (self.rank - 1)) * fact(self.rank),
            Family::I2 => 2 * self.m.unwrap_or(0) as u128,
            Family::H3 => 120,
            Family::F4 => 1152,
        }
    }

    /// Classical number of reflections.
    pub fn expected_reflection_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B => n * n,
            Family::D => n * (n - 1),
            Family::I2 => self.m.unwrap_or(0) as usize,
            Family::H3 => 15,
            Family::F4 => 24,
        }
    }

    /// Coxeter matrix `m_{s,t}` read off the Dynkin diagram of this labeling.
    pub fn coxeter_diagram(&self) -> Vec<Vec<u32>> {
        let n = self.rank;
        let mut m = vec![vec![2u32; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        let mut edge = |i: usize, j: usize, label: u32| {
            m[i][j] = label;
            m[j][i] = label;
        };
        match self.family {
            Family::A => (0..n - 1).for_each(|i| edge(i, i + 1, 3)),
            Family::B => {
                edge(0, 1, 4);
                (1..n - 1).for_each(|i| edge(i, i + 1, 3));
            }
            Family::D => {
                edge(0, 2, 3);
                (1..n - 1).for_each(|i| edge(i, i + 1, 3));
            }
            Family::I2 => edge(0, 1, self.m.unwrap_or(2)),
            Family::H3 => {
                edge(0, 1, 5);
                edge(1, 2, 3);
            }
            Family::F4 => {
                edge(0, 1, 3);
                edge(1, 2, 4);
                edge(2, 3, 3);
            }
        }
        m
    }
}

impl fmt::Display for CoxeterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.family, self.m) {
            (Family::I2, Some(m)) => write!(f, "I2({m})"),
            (Family::H3, _) => write!(f, "H3"),
            (Family::F4, _) => write!(f, "F4"),
            (fam, _) => write!(f, "{:?}{}", fam, self.rank),
        }
    }
}

impl FromStr for CoxeterType {
    type Err = Error;

    /// Accepts `A3`, `B4`, `D4`, `I2(5)`, `H3`, `F4`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("unknown Coxeter type {s:?}"));
        if let Some(rest) = s.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            return Self::i2(rest.parse().map_err(|_| bad())?);
        }
        match s {
            "H3" => return Ok(Self::h3()),
            "F4" => return Ok(Self::f4()),
            _ => {}
        }
        let (fam, rank) = s.split_at(1);
        let rank: usize = rank.parse().map_err(|_| bad())?;
        match fam {
            "A" => Self::a(rank),
            "B" => Self::b(rank),
            "D" => Self::d(rank),
            _ => Err(bad()),
        }
    }
}

/// An element of a specific [`CoxeterGroup`], as a dense index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CoxeterElement(u32);

impl CoxeterElement {
    pub const IDENTITY: CoxeterElement = CoxeterElement(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(i: usize) -> Self {
        CoxeterElement(i as u32)
    }
}

/// A subset of the simple generators, as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DescentSet(pub u32);

impl DescentSet {
    pub fn contains(self, s: usize) -> bool {
        self.0 >> s & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn intersection(self, other: DescentSet) -> DescentSet {
        DescentSet(self.0 & other.0)
    }

    pub fn difference(self, other: DescentSet) -> DescentSet {
        DescentSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: DescentSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&s| self.contains(s))
    }
}

/// A finite Coxeter group with all elements enumerated.
///
/// Immutable after construction; share it behind an `Arc`.
pub struct CoxeterGroup {
    ty: CoxeterType,
    payloads: Vec<Payload>,
    lookup: HashMap<Vec<i64>, u32>,
    lengths: Vec<u16>,
    reflection_lengths: Vec<u16>,
    /// `right[w * rank + s] = w·s`
    right: Vec<u32>,
    /// `left[w * rank + s] = s·w`
    left: Vec<u32>,
    inverses: Vec<u32>,
    /// BFS parent: `w = parent[w] · s` with `s = last_letter[w]`.
    parent: Vec<u32>,
    last_letter: Vec<u8>,
    left_desc: Vec<DescentSet>,
    right_desc: Vec<DescentSet>,
    table: Option<Vec<u32>>,
    longest: CoxeterElement,
    reflections: Vec<CoxeterElement>,
    is_reflection: Vec<bool>,
    coxeter_matrix: Vec<Vec<u32>>,
}

impl fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterGroup({}, order {})", self.ty, self.order())
    }
}

impl CoxeterGroup {
    pub fn new(ty: CoxeterType) -> Result<Self> {
        Self::with_max_order(ty, DEFAULT_MAX_ORDER)
    }

    /// Builds the group, refusing types whose order exceeds `max_order`.
    pub fn with_max_order(ty: CoxeterType, max_order: usize) -> Result<Self> {
        ty.validate()?;
        if ty.expected_order() > max_order as u128 {
            return Err(Error::Resource(format!(
                "{ty} has order {} > budget {max_order}",
                ty.expected_order()
            )));
        }
        let rank = ty.rank;
        let gens = backend::generators(&ty);
        let id = backend::identity(&ty);

        let mut payloads = vec![id.clone()];
        let mut lookup = HashMap::new();
        lookup.insert(id.key(), 0u32);
        let mut lengths = vec![0u16];
        let mut parent = vec![0u32];
        let mut last_letter = vec![0u8];
        let mut right: Vec<u32> = Vec::new();
        let mut queue = VecDeque::from([0u32]);
        let mut right_rows: Vec<Vec<u32>> = vec![Vec::new()];
        while let Some(w) = queue.pop_front() {
            let mut row = Vec::with_capacity(rank);
            for (s, g) in gens.iter().enumerate() {
                let p = payloads[w as usize].compose(g)?;
                let key = p.key();
                let idx = match lookup.get(&key) {
                    Some(&i) => i,
                    None => {
                        let i = payloads.len() as u32;
                        if payloads.len() >= max_order {
                            return Err(Error::Resource(format!("{ty} exceeds {max_order} elements")));
                        }
                        lookup.insert(key, i);
                        payloads.push(p);
                        lengths.push(lengths[w as usize] + 1);
                        parent.push(w);
                        last_letter.push(s as u8);
                        right_rows.push(Vec::new());
                        queue.push_back(i);
                        i
                    }
                };
                row.push(idx);
            }
            right_rows[w as usize] = row;
        }
        for row in &right_rows {
            right.extend_from_slice(row);
        }
        let order = payloads.len();

        let find = |p: &Payload| -> Result<u32> {
            lookup
                .get(&p.key())
                .copied()
                .ok_or_else(|| Error::Integrity(format!("{ty}: payload outside the enumerated group")))
        };
        let mut left = vec![0u32; order * rank];
        let mut inverses = vec![0u32; order];
        for w in 0..order {
            for (s, g) in gens.iter().enumerate() {
                left[w * rank + s] = find(&g.compose(&payloads[w])?)?;
            }
            inverses[w] = find(&payloads[w].inverse())?;
        }

        let mut left_desc = vec![DescentSet::default(); order];
        let mut right_desc = vec![DescentSet::default(); order];
        for w in 0..order {
            for s in 0..rank {
                if lengths[right[w * rank + s] as usize] < lengths[w] {
                    right_desc[w].0 |= 1 << s;
                }
                if lengths[left[w * rank + s] as usize] < lengths[w] {
                    left_desc[w].0 |= 1 << s;
                }
            }
        }
        let reflection_lengths = payloads.iter().map(|p| p.reflection_length() as u16).collect();

        let longest_idx = (0..order).max_by_key(|&w| lengths[w]).unwrap_or(0);

        let mut group = CoxeterGroup {
            ty,
            payloads,
            lookup,
            lengths,
            reflection_lengths,
            right,
            left,
            inverses,
            parent,
            last_letter,
            left_desc,
            right_desc,
            table: None,
            longest: CoxeterElement(longest_idx as u32),
            reflections: Vec::new(),
            is_reflection: vec![false; order],
            coxeter_matrix: Vec::new(),
        };

        if order <= FULL_TABLE_LIMIT {
            let mut table = vec![0u32; order * order];
            for a in 0..order {
                for b in 0..order {
                    table[a * order + b] = group.mul_by_word(CoxeterElement(a as u32), CoxeterElement(b as u32)).0;
                }
            }
            group.table = Some(table);
        }

        let mut refl = Vec::new();
        for w in 0..order {
            let we = CoxeterElement(w as u32);
            for s in 0..rank {
                let t = group.mul(group.mul(we, group.generator(s)), group.inverse(we));
                if !group.is_reflection[t.index()] {
                    group.is_reflection[t.index()] = true;
                    refl.push(t);
                }
            }
        }
        refl.sort();
        group.reflections = refl;

        let mut cm = vec![vec![1u32; rank]; rank];
        for s in 0..rank {
            for t in 0..rank {
                if s != t {
                    cm[s][t] = group.element_order(group.mul(group.generator(s), group.generator(t)));
                }
            }
        }
        group.coxeter_matrix = cm;
        Ok(group)
    }

    pub fn coxeter_type(&self) -> CoxeterType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn order(&self) -> usize {
        self.payloads.len()
    }

    pub fn identity(&self) -> CoxeterElement {
        CoxeterElement::IDENTITY
    }

    /// The simple reflection with 0-based index `s`.
    pub fn generator(&self, s: usize) -> CoxeterElement {
        CoxeterElement(self.right[s])
    }

    pub fn generators(&self) -> Vec<CoxeterElement> {
        (0..self.rank()).map(|s| self.generator(s)).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = CoxeterElement> + '_ {
        (0..self.order() as u32).map(CoxeterElement)
    }

    /// Validates an index coming from outside.
    pub fn element(&self, index: usize) -> Result<CoxeterElement> {
        if index < self.order() {
            Ok(CoxeterElement(index as u32))
        } else {
            Err(Error::Domain(format!("index {index} outside {} of order {}", self.ty, self.order())))
        }
    }

    pub fn payload(&self, w: CoxeterElement) -> &Payload {
        &self.payloads[w.index()]
    }

    pub fn element_of_payload(&self, p: &Payload) -> Result<CoxeterElement> {
        self.lookup
            .get(&p.key())
            .map(|&i| CoxeterElement(i))
            .filter(|_| p.kind() == self.payloads[0].kind())
            .ok_or_else(|| Error::Domain(format!("payload {p:?} is not an element of {}", self.ty)))
    }

    pub fn mul(&self, a: CoxeterElement, b: CoxeterElement) -> CoxeterElement {
        match &self.table {
            Some(t) => CoxeterElement(t[a.index() * self.order() + b.index()]),
            None => self.mul_by_word(a, b),
        }
    }

    fn mul_by_word(&self, a: CoxeterElement, b: CoxeterElement) -> CoxeterElement {
        self.reduced_word(b).into_iter().fold(a, |acc, s| self.mul_gen_right(acc, s))
    }

    /// Product through the payloads, bypassing the tables.
    pub fn mul_payloads(&self, a: &Payload, b: &Payload) -> Result<CoxeterElement> {
        self.element_of_payload(&a.compose(b)?)
    }

    pub fn mul_gen_right(&self, w: CoxeterElement, s: usize) -> CoxeterElement {
        CoxeterElement(self.right[w.index() * self.rank() + s])
    }

    pub fn mul_gen_left(&self, s: usize, w: CoxeterElement) -> CoxeterElement {
        CoxeterElement(self.left[w.index() * self.rank() + s])
    }

    pub fn inverse(&self, w: CoxeterElement) -> CoxeterElement {
        CoxeterElement(self.inverses[w.index()])
    }

    pub fn conjugate(&self, by: CoxeterElement, w: CoxeterElement) -> CoxeterElement {
        self.mul(self.mul(by, w), self.inverse(by))
    }

    pub fn pow(&self, w: CoxeterElement, k: usize) -> CoxeterElement {
        (0..k).fold(self.identity(), |acc, _| self.mul(acc, w))
    }

    pub fn element_order(&self, w: CoxeterElement) -> u32 {
        let mut k = 1;
        let mut x = w;
        while x != self.identity() {
            x = self.mul(x, w);
            k += 1;
        }
        k
    }

    /// Coxeter length `ℓ_S`.
    pub fn length(&self, w: CoxeterElement) -> usize {
        self.lengths[w.index()] as usize
    }

    /// Reflection length `ℓ_T`.
    pub fn reflection_length(&self, w: CoxeterElement) -> usize {
        self.reflection_lengths[w.index()] as usize
    }

    pub fn left_descents(&self, w: CoxeterElement) -> DescentSet {
        self.left_desc[w.index()]
    }

    pub fn right_descents(&self, w: CoxeterElement) -> DescentSet {
        self.right_desc[w.index()]
    }

    /// A fixed reduced word (0-based generator indices).
    pub fn reduced_word(&self, w: CoxeterElement) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length(w));
        let mut x = w.index();
        while x != 0 {
            word.push(self.last_letter[x] as usize);
            x = self.parent[x] as usize;
        }
        word.reverse();
        word
    }

    /// Every reduced word of `w`, in lexicographic order.
    pub fn all_reduced_words(&self, w: CoxeterElement) -> Vec<Vec<usize>> {
        if w == self.identity() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for s in self.left_descents(w).iter() {
            for mut tail in self.all_reduced_words(self.mul_gen_left(s, w)) {
                tail.insert(0, s);
                out.push(tail);
            }
        }
        out
    }

    pub fn element_from_word(&self, word: &[usize]) -> Result<CoxeterElement> {
        word.iter().try_fold(self.identity(), |acc, &s| {
            if s < self.rank() {
                Ok(self.mul_gen_right(acc, s))
            } else {
                Err(Error::Domain(format!("generator {s} outside rank {}", self.rank())))
            }
        })
    }

    pub fn is_reduced_word(&self, word: &[usize]) -> bool {
        self.element_from_word(word)
            .is_ok_and(|w| self.length(w) == word.len())
    }

    pub fn longest_element(&self) -> CoxeterElement {
        self.longest
    }

    /// All reflections (conjugates of simple reflections), sorted.
    pub fn reflections(&self) -> &[CoxeterElement] {
        &self.reflections
    }

    pub fn is_reflection(&self, w: CoxeterElement) -> bool {
        self.is_reflection[w.index()]
    }

    /// `m_{s,t}`, computed as orders of products of generators.
    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter_matrix
    }

    /// Coxeter number `h = 2|T|/n`.
    pub fn coxeter_number(&self) -> usize {
        2 * self.reflections.len() / self.rank()
    }

    /// Reflection length of every element by breadth-first search in the
    /// Cayley graph generated by all reflections. Oracle for the payload
    /// formulas.
    pub fn reflection_length_by_search(&self) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order()];
        dist[0] = 0;
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(w) = queue.pop_front() {
            for &t in &self.reflections {
                let x = self.mul(w, t);
                if dist[x.index()] == usize::MAX {
                    dist[x.index()] = dist[w.index()] + 1;
                    queue.push_back(x);
                }
            }
        }
        dist
    }

    /// The diagram automorphism `s ↦ w0 s w0`, as a permutation of generator indices.
    pub fn delta_twist_generators(&self) -> Vec<usize> {
        let w0 = self.longest;
        (0..self.rank())
            .map(|s| {
                let img = self.conjugate(w0, self.generator(s));
                (0..self.rank())
                    .find(|&t| self.generator(t) == img)
                    .expect("w0 normalizes S")
            })
            .collect()
    }

    /// `w ↦ w0 w w0`.
    pub fn delta_twist(&self, w: CoxeterElement) -> CoxeterElement {
        self.conjugate(self.longest, w)
    }
}
