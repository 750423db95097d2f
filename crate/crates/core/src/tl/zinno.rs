//! The Zinno basis `Z_x = ω(bx)` of `TL_n` attached to a dual braid monoid.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::TemperleyLieb;
use crate::coxeter::{BruhatTable, CoxeterElement, CoxeterGroup};
use crate::dual::DualMonoid;
use crate::error::{Error, Result};
use crate::hecke::{word_key, KlTable};
use crate::Laurent;

const PRIME: u64 = 1_000_000_007;
const EVALUATION_POINTS: [u64; 3] = [2, 3, 987_654_321];

fn check_same_group(tl: &TemperleyLieb, g: &CoxeterGroup) -> Result<()> {
    if tl.group().coxeter_type() != g.coxeter_type() {
        return Err(Error::TypeMismatch(format!(
            "{} against Temperley–Lieb algebra of {}",
            g.coxeter_type(),
            tl.group().coxeter_type()
        )));
    }
    Ok(())
}

fn t_word(dual: &DualMonoid, x: CoxeterElement) -> Result<Vec<Vec<usize>>> {
    let g = dual.group();
    Ok(dual
        .t_reduced_factorization(x)?
        .into_iter()
        .map(|t| g.reduced_word(t).into_iter().map(|s| s + 1).collect())
        .collect())
}

fn z_image(tl: &TemperleyLieb, dual: &DualMonoid, x: CoxeterElement) -> Result<BTreeMap<CoxeterElement, Laurent>> {
    let nf = dual.embed_simple(x)?;
    let z = tl.omega(&dual.braids().to_letters(&nf))?;
    Ok(tl.coordinates(&z))
}

/// One row of the matrix dump.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZinnoRow {
    pub divisor: Vec<Vec<usize>>,
    pub coeffs: BTreeMap<String, String>,
}

/// Coefficients of `Z_x` on `b_w`; rows follow the divisor order of the
/// dual monoid, columns `W_f` by length.
#[derive(Clone, Debug)]
pub struct ZinnoMatrix {
    pub ordering: Vec<usize>,
    pub rows: Vec<CoxeterElement>,
    pub columns: Vec<CoxeterElement>,
    pub entries: Vec<Vec<Laurent>>,
    row_words: Vec<Vec<Vec<usize>>>,
}

pub fn zinno_matrix(tl: &TemperleyLieb, dual: &DualMonoid) -> Result<ZinnoMatrix> {
    check_same_group(tl, dual.group())?;
    let columns = tl.fully_commutative().to_vec();
    let rows = dual.divisors().to_vec();
    let computed: Result<Vec<(Vec<Laurent>, Vec<Vec<usize>>)>> = rows
        .par_iter()
        .map(|&x| {
            let coords = z_image(tl, dual, x)?;
            let row = columns.iter().map(|w| coords.get(w).cloned().unwrap_or_else(Laurent::zero)).collect();
            Ok((row, t_word(dual, x)?))
        })
        .collect();
    let (entries, row_words) = computed?.into_iter().unzip();
    Ok(ZinnoMatrix { ordering: dual.coxeter_element().ordering.clone(), rows, columns, entries, row_words })
}

fn eval_mod(p: &Laurent, v: u64, v_inv: u64) -> u64 {
    p.terms().fold(0, |acc, (e, &c)| {
        let base = if e >= 0 { v } else { v_inv };
        let power = pow_mod(base, e.unsigned_abs() as u64);
        let c = c.rem_euclid(PRIME as i64) as u64;
        (acc + c * power % PRIME) % PRIME
    })
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= PRIME;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    r
}

impl ZinnoMatrix {
    pub fn is_square(&self) -> bool {
        self.rows.len() == self.columns.len()
    }

    pub fn dump(&self, g: &CoxeterGroup) -> Vec<ZinnoRow> {
        self.entries
            .iter()
            .zip(&self.row_words)
            .map(|(row, words)| ZinnoRow {
                divisor: words.clone(),
                coeffs: row
                    .iter()
                    .zip(&self.columns)
                    .filter(|(p, _)| !p.is_zero())
                    .map(|(p, &w)| (word_key(g, w), p.to_string()))
                    .collect(),
            })
            .collect()
    }

    /// Column matched to each row by peeling rows with a single remaining
    /// nonzero entry. Such a peeling exists iff some row and column orders
    /// make the matrix triangular, and the matching is then unique.
    pub fn triangular_matching(&self) -> Option<Vec<usize>> {
        if !self.is_square() {
            return None;
        }
        let k = self.rows.len();
        let mut row_done = vec![false; k];
        let mut col_done = vec![false; k];
        let mut matching = vec![usize::MAX; k];
        for _ in 0..k {
            let (r, c) = (0..k).filter(|&r| !row_done[r]).find_map(|r| {
                let mut live = (0..k).filter(|&c| !col_done[c] && !self.entries[r][c].is_zero());
                match (live.next(), live.next()) {
                    (Some(c), None) => Some((r, c)),
                    _ => None,
                }
            })?;
            row_done[r] = true;
            col_done[c] = true;
            matching[r] = c;
        }
        Some(matching)
    }

    /// `sgn(π) Π M[x][π(x)]` over the triangular matching `π`.
    pub fn determinant(&self) -> Option<Laurent> {
        let matching = self.triangular_matching()?;
        let mut seen = vec![false; matching.len()];
        let mut sign = 1i64;
        for start in 0..matching.len() {
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = matching[i];
                len += 1;
            }
            if len > 0 && len % 2 == 0 {
                sign = -sign;
            }
        }
        Some(
            matching
                .iter()
                .enumerate()
                .fold(Laurent::constant(sign), |acc, (r, &c)| &acc * &self.entries[r][c]),
        )
    }

    /// Determinant of the matrix evaluated at `v` modulo a fixed prime, by
    /// Gaussian elimination.
    pub fn determinant_mod(&self, v: u64) -> u64 {
        let k = self.rows.len();
        let v_inv = pow_mod(v, PRIME - 2);
        let mut m: Vec<Vec<u64>> =
            self.entries.iter().map(|row| row.iter().map(|p| eval_mod(p, v, v_inv)).collect()).collect();
        let mut det = 1u64;
        for col in 0..k {
            let Some(pivot) = (col..k).find(|&r| m[r][col] != 0) else { return 0 };
            if pivot != col {
                m.swap(pivot, col);
                det = (PRIME - det) % PRIME;
            }
            det = det * m[col][col] % PRIME;
            let inv = pow_mod(m[col][col], PRIME - 2);
            for r in col + 1..k {
                let f = m[r][col] * inv % PRIME;
                if f == 0 {
                    continue;
                }
                for c in col..k {
                    m[r][c] = (m[r][c] + PRIME - f * m[col][c] % PRIME) % PRIME;
                }
            }
        }
        det
    }
}

/// Invertibility and triangularity data for one Coxeter element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangularityReport {
    /// 1-based generator order of `c`.
    pub coxeter: Vec<usize>,
    pub square: bool,
    pub triangular: bool,
    pub diagonal_units: bool,
    pub determinant: Option<String>,
    pub determinant_is_unit: bool,
    pub modular_agreement: bool,
    /// Row `x` is supported on columns matched to divisors `y ≤ x` in Bruhat order.
    pub bruhat_compatible: bool,
    /// `c = s_1 s_2 ⋯ s_n`, where Bruhat compatibility is required.
    pub linear: bool,
    pub pass: bool,
}

pub fn triangularity_check(m: &ZinnoMatrix, g: &CoxeterGroup) -> TriangularityReport {
    let matching = m.triangular_matching();
    let determinant = m.determinant();
    let diagonal_units = matching
        .as_ref()
        .is_some_and(|mt| mt.iter().enumerate().all(|(r, &c)| m.entries[r][c].is_unit()));
    let modular_agreement = determinant.as_ref().is_some_and(|d| {
        EVALUATION_POINTS
            .iter()
            .all(|&v| eval_mod(d, v, pow_mod(v, PRIME - 2)) == m.determinant_mod(v))
    });
    let bruhat_compatible = matching.as_ref().is_some_and(|mt| {
        let bruhat = BruhatTable::new(g);
        let mut row_of_col = vec![0; mt.len()];
        for (r, &c) in mt.iter().enumerate() {
            row_of_col[c] = r;
        }
        m.entries.iter().enumerate().all(|(r, row)| {
            row.iter()
                .enumerate()
                .all(|(c, p)| p.is_zero() || bruhat.leq(m.rows[row_of_col[c]], m.rows[r]))
        })
    });
    let linear = m.ordering.iter().copied().eq(0..g.rank());
    let determinant_is_unit = determinant.as_ref().is_some_and(Laurent::is_unit);
    let triangular = matching.is_some();
    TriangularityReport {
        coxeter: m.ordering.iter().map(|s| s + 1).collect(),
        square: m.is_square(),
        triangular,
        diagonal_units,
        determinant: determinant.map(|d| d.to_string()),
        determinant_is_unit,
        modular_agreement,
        bruhat_compatible,
        linear,
        pass: m.is_square()
            && triangular
            && diagonal_units
            && determinant_is_unit
            && modular_agreement
            && (!linear || bruhat_compatible),
    }
}

/// Elements violating `θ(C′_w) = b_w` on `W_f` and `θ(C′_w) = 0` off it.
pub fn fg_projection_failures(tl: &TemperleyLieb, kl: &KlTable) -> Result<Vec<CoxeterElement>> {
    check_same_group(tl, kl.group())?;
    let g = kl.group();
    let failures: Result<Vec<Option<CoxeterElement>>> = g
        .elements()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&w| {
            let image = tl.theta(kl.c_prime(w));
            let ok = if tl.is_fully_commutative(w) { image == tl.b_w(w)? } else { image.is_zero() };
            Ok((!ok).then_some(w))
        })
        .collect();
    Ok(failures?.into_iter().flatten().collect())
}

/// Sign-twisted positivity of one `Z_x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TlPositivityItem {
    pub divisor: Vec<Vec<usize>>,
    pub coeffs: BTreeMap<String, String>,
    pub positive: bool,
}

/// Checks that the coefficient of `b_w` in `Z_x` lies in `(−1)^{ℓ(w)} N[v, v⁻¹]`.
pub fn positivity_tl_report(tl: &TemperleyLieb, dual: &DualMonoid) -> Result<Vec<TlPositivityItem>> {
    check_same_group(tl, dual.group())?;
    let g = dual.group();
    dual.divisors()
        .par_iter()
        .map(|&x| {
            let coords = z_image(tl, dual, x)?;
            let positive = coords.iter().all(|(&w, p)| {
                let sign = if g.length(w) % 2 == 0 { Laurent::one() } else { -Laurent::one() };
                (p * &sign).is_nonnegative()
            });
            Ok(TlPositivityItem {
                divisor: t_word(dual, x)?,
                coeffs: coords.iter().map(|(&w, p)| (word_key(g, w), p.to_string())).collect(),
                positive,
            })
        })
        .collect()
}
