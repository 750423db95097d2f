//! Oracles for the integration tests. None of them goes through Garside
//! normal forms.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use artin_core::{CoxeterElement, CoxeterGroup, CoxeterType};
use rand::Rng;

/// Defining braid relations as pairs of alternating words of length `m_st`.
pub fn braid_relations(g: &CoxeterGroup) -> Vec<(Vec<usize>, Vec<usize>)> {
    let m = g.coxeter_matrix();
    let mut out = Vec::new();
    for s in 0..g.rank() {
        for t in s + 1..g.rank() {
            let len = m[s][t] as usize;
            let alt = |a: usize, b: usize| (0..len).map(|k| if k % 2 == 0 { a } else { b }).collect::<Vec<_>>();
            out.push((alt(s, t), alt(t, s)));
        }
    }
    out
}

/// Every positive word equal to `word` in the positive monoid. Relations are
/// homogeneous, so this is a finite closure; `None` past `cap` words.
pub fn positive_class(word: &[usize], rels: &[(Vec<usize>, Vec<usize>)], cap: usize) -> Option<BTreeSet<Vec<usize>>> {
    let mut seen = BTreeSet::from([word.to_vec()]);
    let mut queue = VecDeque::from([word.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for (a, b) in rels {
            for (from, to) in [(a, b), (b, a)] {
                if from.len() > w.len() {
                    continue;
                }
                for p in 0..=w.len() - from.len() {
                    if w[p..p + from.len()] == from[..] {
                        let mut next = w.clone();
                        next[p..p + from.len()].copy_from_slice(to);
                        if seen.insert(next.clone()) {
                            if seen.len() > cap {
                                return None;
                            }
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
    }
    Some(seen)
}

/// Left-greedy factors of a positive word: the longest element of `W` with
/// a reduced word that is a prefix of some word in the positive class,
/// stripped repeatedly.
pub fn greedy_by_prefixes(g: &CoxeterGroup, word: &[usize]) -> Vec<CoxeterElement> {
    let rels = braid_relations(g);
    let mut rest = word.to_vec();
    let mut out = Vec::new();
    while !rest.is_empty() {
        let class = positive_class(&rest, &rels, 2_000_000).expect("positive class within cap");
        let mut best: Option<(usize, CoxeterElement, Vec<usize>)> = None;
        let mut prefixes = HashSet::new();
        for w in &class {
            let mut x = g.identity();
            for (k, &s) in w.iter().enumerate() {
                let next = g.mul_gen_right(x, s);
                if g.length(next) < g.length(x) {
                    break;
                }
                x = next;
                prefixes.insert(x);
                if best.as_ref().is_none_or(|(len, _, _)| k + 1 > *len) {
                    best = Some((k + 1, x, w[k + 1..].to_vec()));
                }
            }
        }
        let (_, head, tail) = best.expect("nonempty word has a simple prefix");
        // Every simple prefix divides the greedy one.
        assert!(prefixes.iter().all(|&u| g.is_prefix(u, head)));
        out.push(head);
        rest = tail;
    }
    out
}

/// First handle by end position: `σ_i^e ⋯ σ_i^{−e}` with only higher
/// generators inside.
fn first_handle(w: &[i32]) -> Option<(usize, usize)> {
    for q in 0..w.len() {
        let i = w[q].abs();
        for p in (0..q).rev() {
            let a = w[p].abs();
            if a < i {
                break;
            }
            if a == i {
                if w[p] == -w[q] {
                    return Some((p, q));
                }
                break;
            }
        }
    }
    None
}

/// Handle reduction of a type A braid word. The input is trivial iff the
/// result is empty. `None` if `max_steps` is exceeded.
pub fn handle_reduce(mut w: Vec<i32>, max_steps: usize) -> Option<Vec<i32>> {
    for _ in 0..max_steps {
        let Some((p, q)) = first_handle(&w) else {
            return Some(w);
        };
        let i = w[p].abs();
        let e = w[p].signum();
        let mut out = w[..p].to_vec();
        for &l in &w[p + 1..q] {
            if l.abs() == i + 1 {
                out.extend([-e * (i + 1), l.signum() * i, e * (i + 1)]);
            } else {
                out.push(l);
            }
        }
        out.extend_from_slice(&w[q + 1..]);
        w = out;
    }
    None
}

pub fn inverse_word(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|&l| -l).collect()
}

/// `B_n → A_{2n−1}` on letters: `t_0 ↦ σ_n`, `t_i ↦ σ_{n−i} σ_{n+i}`.
pub fn b_to_a(n: usize, w: &[i32]) -> Vec<i32> {
    let n = n as i32;
    w.iter()
        .flat_map(|&l| {
            let i = l.abs() - 1;
            let images = if i == 0 { vec![n] } else { vec![n - i, n + i] };
            images.into_iter().map(move |a| l.signum() * a)
        })
        .collect()
}

/// Word equality decided by handle reduction (types A and B).
pub fn words_equal(ty: CoxeterType, u: &[i32], w: &[i32]) -> Option<bool> {
    let mut q = u.to_vec();
    q.extend(inverse_word(w));
    let q = match ty.family {
        artin_core::Family::A => q,
        artin_core::Family::B => b_to_a(ty.rank, &q),
        _ => panic!("handle reduction is a type A procedure"),
    };
    handle_reduce(q, 1_000_000).map(|r| r.is_empty())
}

pub fn random_word(rng: &mut impl Rng, rank: usize, max_len: usize) -> Vec<i32> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let s = rng.gen_range(1..=rank as i32);
            if rng.gen_bool(0.5) {
                s
            } else {
                -s
            }
        })
        .collect()
}

pub fn random_positive_word(rng: &mut impl Rng, rank: usize, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..rank)).collect()
}

/// One random relation move, free insertion or free cancellation; the
/// braid is unchanged.
pub fn random_move(rng: &mut impl Rng, g: &CoxeterGroup, w: &mut Vec<i32>) {
    let rels = braid_relations(g);
    match rng.gen_range(0..3) {
        0 => {
            let p = rng.gen_range(0..=w.len());
            let s = rng.gen_range(1..=g.rank() as i32);
            let s = if rng.gen_bool(0.5) { s } else { -s };
            w.splice(p..p, [s, -s]);
        }
        1 => {
            if let Some(p) = (0..w.len().saturating_sub(1)).find(|&p| w[p] == -w[p + 1]) {
                w.drain(p..p + 2);
            }
        }
        _ => {
            let (a, b) = &rels[rng.gen_range(0..rels.len())];
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            let lift = |x: &[usize]| x.iter().map(|&s| sign * (s as i32 + 1)).collect::<Vec<_>>();
            let (from, to) = if rng.gen_bool(0.5) { (lift(a), lift(b)) } else { (lift(b), lift(a)) };
            if let Some(p) = (0..(w.len() + 1).saturating_sub(from.len())).find(|&p| w[p..p + from.len()] == from[..]) {
                w.splice(p..p + from.len(), to);
            } else {
                let p = rng.gen_range(0..=w.len());
                let mut pair = from.clone();
                pair.extend(inverse_word(&to));
                w.splice(p..p, pair);
            }
        }
    }
}

/// All reflections, as the conjugacy closure of the generators.
pub fn reflections_by_conjugation(g: &CoxeterGroup) -> BTreeSet<CoxeterElement> {
    let mut out = BTreeSet::new();
    for w in g.elements() {
        for s in g.generators() {
            out.insert(g.conjugate(w, s));
        }
    }
    out
}

/// `ℓ_T` by breadth-first search over right multiplication by reflections.
pub fn reflection_length_bfs(g: &CoxeterGroup) -> Vec<usize> {
    let t: Vec<_> = reflections_by_conjugation(g).into_iter().collect();
    let mut dist = vec![usize::MAX; g.order()];
    dist[g.identity().index()] = 0;
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(w) = queue.pop_front() {
        for &r in &t {
            let x = g.mul(w, r);
            if dist[x.index()] == usize::MAX {
                dist[x.index()] = dist[w.index()] + 1;
                queue.push_back(x);
            }
        }
    }
    dist
}

/// `x ≼_T w` by reflection lengths.
pub fn t_divides(g: &CoxeterGroup, lt: &[usize], x: CoxeterElement, w: CoxeterElement) -> bool {
    lt[x.index()] + lt[g.mul(g.inverse(x), w).index()] == lt[w.index()]
}

/// Bruhat order by the subword property on one reduced word of `w`.
pub fn bruhat_by_subwords(g: &CoxeterGroup, u: CoxeterElement, w: CoxeterElement) -> bool {
    let word = g.reduced_word(w);
    let mut reach = BTreeSet::from([g.identity()]);
    for &s in &word {
        let next: Vec<_> = reach.iter().map(|&x| g.mul_gen_right(x, s)).collect();
        reach.extend(next);
    }
    reach.contains(&u)
}
