//! Concrete element representations for each family.
//!
//! Products follow function composition: `(u·v)(x) = u(v(x))`.

use crate::error::{Error, Result};
use crate::scalar::{GoldenInt, Matrix, Scalar};

use super::{CoxeterType, Family};

/// Signed permutation of `{±1, …, ±n}`, stored as the images of `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    pub images: Vec<i8>,
    /// Restricted to the even-sign-change subgroup (type D).
    pub even: bool,
}

impl SignedPerm {
    pub fn apply(&self, x: i8) -> i8 {
        let y = self.images[(x.unsigned_abs() - 1) as usize];
        if x < 0 {
            -y
        } else {
            y
        }
    }

    pub fn negative_count(&self) -> usize {
        self.images.iter().filter(|&&y| y < 0).count()
    }

    /// Cycles on `{±1, …, ±n}`, each starting at its smallest label.
    pub fn cycles(&self) -> Vec<Vec<i8>> {
        let n = self.images.len() as i8;
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for start in (-n..=n).filter(|&x| x != 0) {
            if seen.contains(&start) {
                continue;
            }
            let mut cyc = vec![start];
            seen.insert(start);
            let mut y = self.apply(start);
            while y != start {
                seen.insert(y);
                cyc.push(y);
                y = self.apply(y);
            }
            out.push(cyc);
        }
        out
    }
}

/// Payload of an element of a finite Coxeter group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Payload {
    /// Permutation of `{0, …, N−1}` as its image vector (type A on `N` points).
    Perm(Vec<u8>),
    Signed(SignedPerm),
    /// `r^rotation · s^reflection` in `I2(m)`, with `r = st`.
    Dihedral { m: u32, rotation: u32, reflection: bool },
    /// Action on simple roots with entries in `Z[φ]`.
    Golden(Matrix<GoldenInt>),
    /// Action on simple roots with integer entries.
    Integer(Matrix<i64>),
}

fn mismatch(a: &Payload, b: &Payload) -> Error {
    Error::TypeMismatch(format!("cannot combine {} and {} elements", a.kind(), b.kind()))
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Perm(_) => "permutation",
            Payload::Signed(s) if s.even => "even signed permutation",
            Payload::Signed(_) => "signed permutation",
            Payload::Dihedral { .. } => "dihedral",
            Payload::Golden(_) => "golden matrix",
            Payload::Integer(_) => "integer matrix",
        }
    }

    pub fn compose(&self, other: &Payload) -> Result<Payload> {
        Ok(match (self, other) {
            (Payload::Perm(u), Payload::Perm(v)) if u.len() == v.len() => {
                Payload::Perm(v.iter().map(|&x| u[x as usize]).collect())
            }
            (Payload::Signed(u), Payload::Signed(v))
                if u.images.len() == v.images.len() && u.even == v.even =>
            {
                Payload::Signed(SignedPerm {
                    images: v.images.iter().map(|&x| u.apply(x)).collect(),
                    even: u.even,
                })
            }
            (
                Payload::Dihedral { m, rotation: a, reflection: f },
                Payload::Dihedral { m: m2, rotation: b, reflection: g },
            ) if m == m2 => {
                // r^a s^f r^b s^g = r^(a ± b) s^(f+g)
                let b = if *f { (m - b) % m } else { *b };
                Payload::Dihedral {
                    m: *m,
                    rotation: (a + b) % m,
                    reflection: f ^ g,
                }
            }
            (Payload::Golden(u), Payload::Golden(v)) if u.rows() == v.rows() => Payload::Golden(u.mul(v)),
            (Payload::Integer(u), Payload::Integer(v)) if u.rows() == v.rows() => Payload::Integer(u.mul(v)),
            _ => return Err(mismatch(self, other)),
        })
    }

    /// Hashable canonical key.
    pub fn key(&self) -> Vec<i64> {
        match self {
            Payload::Perm(p) => p.iter().map(|&x| x as i64).collect(),
            Payload::Signed(s) => s.images.iter().map(|&x| x as i64).collect(),
            Payload::Dihedral { rotation, reflection, .. } => vec![*rotation as i64, *reflection as i64],
            Payload::Golden(m) => m.entries().iter().flat_map(|g| [g.a, g.b]).collect(),
            Payload::Integer(m) => m.entries().to_vec(),
        }
    }

    /// Structural validity of the payload as a group element.
    pub fn is_valid(&self) -> bool {
        match self {
            Payload::Perm(p) => {
                let mut seen = vec![false; p.len()];
                p.iter().all(|&x| (x as usize) < p.len() && !std::mem::replace(&mut seen[x as usize], true))
            }
            Payload::Signed(s) => {
                let n = s.images.len();
                let mut seen = vec![false; n];
                let bij = s.images.iter().all(|&x| {
                    let a = x.unsigned_abs() as usize;
                    x != 0 && a <= n && !std::mem::replace(&mut seen[a - 1], true)
                });
                bij && (!s.even || s.negative_count() % 2 == 0)
            }
            Payload::Dihedral { m, rotation, .. } => rotation < m,
            Payload::Golden(m) => unit_determinant(m, GoldenInt::new(1, 0)),
            Payload::Integer(m) => unit_determinant(m, 1),
        }
    }

    /// Coxeter length from the combinatorial inversion formulas, when the
    /// backend has one.
    pub fn inversion_length(&self) -> Option<usize> {
        match self {
            Payload::Perm(p) => Some(inversions(p.iter().map(|&x| x as i32))),
            Payload::Signed(s) => {
                let w: Vec<i32> = s.images.iter().map(|&x| x as i32).collect();
                let inv = inversions(w.iter().copied());
                if s.even {
                    let nsp = (0..w.len())
                        .flat_map(|i| (i + 1..w.len()).map(move |j| (i, j)))
                        .filter(|&(i, j)| w[i] + w[j] < 0)
                        .count();
                    Some(inv + nsp)
                } else {
                    let neg: i32 = w.iter().filter(|&&x| x < 0).map(|x| -x).sum();
                    Some(inv + neg as usize)
                }
            }
            Payload::Dihedral { m, rotation: k, reflection } => {
                let (m, k) = (*m as usize, *k as usize);
                Some(match (reflection, k) {
                    (false, 0) => 0,
                    (false, k) => (2 * k).min(2 * (m - k)),
                    (true, k) => (2 * k + 1).min(2 * (m - k) - 1),
                })
            }
            Payload::Golden(_) | Payload::Integer(_) => None,
        }
    }

    /// Reflection length from cycle structure or from the corank of `M − I`.
    pub fn reflection_length(&self) -> usize {
        match self {
            Payload::Perm(p) => {
                let mut seen = vec![false; p.len()];
                let mut cycles = 0;
                for start in 0..p.len() {
                    if seen[start] {
                        continue;
                    }
                    cycles += 1;
                    let mut x = start;
                    while !seen[x] {
                        seen[x] = true;
                        x = p[x] as usize;
                    }
                }
                p.len() - cycles
            }
            Payload::Signed(s) => {
                // n minus the number of pairs {C, −C} of non-balanced cycles
                let paired = s.cycles().iter().filter(|c| !c.contains(&-c[0])).count() / 2;
                s.images.len() - paired
            }
            Payload::Dihedral { rotation, reflection, .. } => match (reflection, rotation) {
                (true, _) => 1,
                (false, 0) => 0,
                (false, _) => 2,
            },
            Payload::Golden(m) => m.sub(&Matrix::identity(m.rows())).rank(),
            Payload::Integer(m) => m.sub(&Matrix::identity(m.rows())).rank(),
        }
    }

    /// Integer matrix of the natural linear action, for backends with one.
    /// Used to cross-check reflection length through fixed-space codimension.
    pub fn permutation_matrix(&self) -> Option<Matrix<i64>> {
        match self {
            Payload::Perm(p) => {
                let mut m = Matrix::zeros(p.len(), p.len());
                for (i, &x) in p.iter().enumerate() {
                    m[(x as usize, i)] = 1;
                }
                Some(m)
            }
            Payload::Signed(s) => {
                let n = s.images.len();
                let mut m = Matrix::zeros(n, n);
                for (i, &x) in s.images.iter().enumerate() {
                    m[(x.unsigned_abs() as usize - 1, i)] = x.signum() as i64;
                }
                Some(m)
            }
            _ => None,
        }
    }
}

fn unit_determinant<S: Scalar>(m: &Matrix<S>, one: S) -> bool {
    let d = m.determinant();
    d == one || d == -one
}

fn inversions(seq: impl Iterator<Item = i32>) -> usize {
    let w: Vec<i32> = seq.collect();
    (0..w.len())
        .flat_map(|i| (i + 1..w.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| w[i] > w[j])
        .count()
}

/// `2cos(π/m)` for the non-crystallographic labels that occur (`m ∈ {2, 3, 5}`).
fn golden_cosine(m: u32) -> GoldenInt {
    match m {
        2 => GoldenInt::new(0, 0),
        3 => GoldenInt::new(1, 0),
        5 => GoldenInt::PHI,
        _ => unreachable!("label {m} has no Z[φ] cosine"),
    }
}

/// Generator payloads for a validated type, in generator order.
pub(crate) fn generators(ty: &CoxeterType) -> Vec<Payload> {
    let n = ty.rank;
    match ty.family {
        Family::A => (0..n)
            .map(|g| {
                let mut p: Vec<u8> = (0..=n as u8).collect();
                p.swap(g, g + 1);
                Payload::Perm(p)
            })
            .collect(),
        Family::B | Family::D => {
            let even = ty.family == Family::D;
            (0..n)
                .map(|g| {
                    let mut images: Vec<i8> = (1..=n as i8).collect();
                    match (g, even) {
                        (0, false) => images[0] = -1,
                        (0, true) => {
                            images[0] = -2;
                            images[1] = -1;
                        }
                        _ => images.swap(g - 1, g),
                    }
                    Payload::Signed(SignedPerm { images, even })
                })
                .collect()
        }
        Family::I2 => {
            let m = ty.m.expect("validated I2 carries m");
            vec![
                Payload::Dihedral { m, rotation: 0, reflection: true },
                Payload::Dihedral { m, rotation: m - 1, reflection: true },
            ]
        }
        Family::H3 => {
            let labels = ty.coxeter_diagram();
            (0..n)
                .map(|i| {
                    let mut m = Matrix::<GoldenInt>::identity(n);
                    m[(i, i)] = GoldenInt::new(-1, 0);
                    for j in (0..n).filter(|&j| j != i) {
                        m[(i, j)] = golden_cosine(labels[i][j]);
                    }
                    Payload::Golden(m)
                })
                .collect()
        }
        Family::F4 => {
            let cartan = [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]];
            (0..n)
                .map(|i| {
                    let mut m = Matrix::<i64>::identity(n);
                    for j in 0..n {
                        m[(i, j)] -= cartan[i][j];
                    }
                    Payload::Integer(m)
                })
                .collect()
        }
    }
}

/// Identity payload matching the generators of `ty`.
pub(crate) fn identity(ty: &CoxeterType) -> Payload {
    let n = ty.rank;
    match ty.family {
        Family::A => Payload::Perm((0..=n as u8).collect()),
        Family::B | Family::D => Payload::Signed(SignedPerm {
            images: (1..=n as i8).collect(),
            even: ty.family == Family::D,
        }),
        Family::I2 => Payload::Dihedral {
            m: ty.m.expect("validated I2 carries m"),
            rotation: 0,
            reflection: false,
        },
        Family::H3 => Payload::Golden(Matrix::identity(n)),
        Family::F4 => Payload::Integer(Matrix::identity(n)),
    }
}

impl Payload {
    pub fn inverse(&self) -> Payload {
        match self {
            Payload::Perm(p) => {
                let mut inv = vec![0u8; p.len()];
                for (i, &x) in p.iter().enumerate() {
                    inv[x as usize] = i as u8;
                }
                Payload::Perm(inv)
            }
            Payload::Signed(s) => {
                let mut inv = vec![0i8; s.images.len()];
                for (i, &x) in s.images.iter().enumerate() {
                    let v = (i + 1) as i8;
                    inv[x.unsigned_abs() as usize - 1] = if x < 0 { -v } else { v };
                }
                Payload::Signed(SignedPerm { images: inv, even: s.even })
            }
            Payload::Dihedral { m, rotation, reflection } => Payload::Dihedral {
                m: *m,
                rotation: if *reflection { *rotation } else { (m - rotation) % m },
                reflection: *reflection,
            },
            // Finite-order matrices: invert by powering up to the identity.
            Payload::Golden(_) | Payload::Integer(_) => {
                let mut prev = self.clone();
                let mut cur = self.compose(self).expect("same backend");
                let id_key = match self {
                    Payload::Golden(m) => Payload::Golden(Matrix::identity(m.rows())).key(),
                    Payload::Integer(m) => Payload::Integer(Matrix::identity(m.rows())).key(),
                    _ => unreachable!(),
                };
                if self.key() == id_key {
                    return self.clone();
                }
                while cur.key() != id_key {
                    prev = cur.clone();
                    cur = cur.compose(self).expect("same backend");
                }
                prev
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mismatched_backends_are_rejected() {
        let a = identity(&CoxeterType::a(2).unwrap());
        let b = identity(&CoxeterType::b(2).unwrap());
        assert!(matches!(a.compose(&b), Err(Error::TypeMismatch(_))));
        let d = identity(&CoxeterType::d(4).unwrap());
        let b4 = identity(&CoxeterType::b(4).unwrap());
        assert!(d.compose(&b4).is_err());
    }

    #[test]
    fn signed_cycles_and_reflection_length() {
        let s = SignedPerm { images: vec![-1, 2], even: false };
        assert_eq!(s.cycles(), vec![vec![-2], vec![-1, 1], vec![2]]);
        assert_eq!(Payload::Signed(s).reflection_length(), 1);
    }

    #[test]
    fn generator_payloads_are_valid_involutions() {
        for ty in [
            CoxeterType::a(3).unwrap(),
            CoxeterType::b(3).unwrap(),
            CoxeterType::d(4).unwrap(),
            CoxeterType::i2(7).unwrap(),
            CoxeterType::h3(),
            CoxeterType::f4(),
        ] {
            let id = identity(&ty);
            for g in generators(&ty) {
                assert!(g.is_valid(), "{ty}: {g:?}");
                assert_eq!(g.compose(&g).unwrap(), id, "{ty}");
                assert_eq!(g.inverse(), g);
                assert_eq!(g.reflection_length(), 1);
            }
        }
    }
}
