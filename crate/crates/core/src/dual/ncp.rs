//! Noncrossing partitions of the circle labeled by a Coxeter element, for
//! types A and B.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxeterElement, CoxeterGroup, Family, Payload, SignedPerm};
use crate::error::{Error, Result};

/// Blocks on the labeled circle. Labels are 1-based; type B uses `±1..±n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NoncrossingPartition {
    /// The cycle of `c` starting at label 1, in clockwise order.
    pub sequence: Vec<i32>,
    /// Each block in clockwise order from its first point; blocks sorted by
    /// their first point.
    pub blocks: Vec<Vec<i32>>,
}

impl NoncrossingPartition {
    /// No two blocks interleave along the circle.
    pub fn is_noncrossing(&self) -> bool {
        let pos: HashMap<i32, usize> = self.sequence.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let block_of = self.block_index(&pos);
        let n = self.sequence.len();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        if block_of[a] == block_of[c] && block_of[b] == block_of[d] && block_of[a] != block_of[b] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Invariant under negation of labels (the type B condition).
    pub fn is_symmetric(&self) -> bool {
        let mut negated: Vec<Vec<i32>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut v: Vec<i32> = b.iter().map(|&l| -l).collect();
                v.sort();
                v
            })
            .collect();
        let mut sorted: Vec<Vec<i32>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut v = b.clone();
                v.sort();
                v
            })
            .collect();
        negated.sort();
        sorted.sort();
        negated == sorted
    }

    fn block_index(&self, pos: &HashMap<i32, usize>) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.sequence.len()];
        for (k, block) in self.blocks.iter().enumerate() {
            for l in block {
                if let Some(&p) = pos.get(l) {
                    out[p] = k;
                }
            }
        }
        out
    }
}

/// Labels of the natural representation and the action of `w` on them.
fn action(g: &CoxeterGroup, w: CoxeterElement) -> Result<Vec<(i32, i32)>> {
    match g.payload(w) {
        Payload::Perm(p) => Ok(p.iter().enumerate().map(|(i, &x)| (i as i32 + 1, x as i32 + 1)).collect()),
        Payload::Signed(sp) if !sp.even => {
            let n = sp.images.len() as i8;
            Ok((-n..=n)
                .filter(|&l| l != 0)
                .map(|l| (l as i32, sp.apply(l) as i32))
                .collect())
        }
        _ => Err(Error::TypeMismatch(format!(
            "noncrossing partitions are modeled for types A and B, not {}",
            g.coxeter_type()
        ))),
    }
}

/// The circle sequence of `c`: its cycle through label 1.
pub fn circle_sequence(g: &CoxeterGroup, c: CoxeterElement) -> Result<Vec<i32>> {
    let map: HashMap<i32, i32> = action(g, c)?.into_iter().collect();
    let mut seq = vec![1];
    let mut x = map[&1];
    while x != 1 {
        seq.push(x);
        x = map[&x];
    }
    if seq.len() != map.len() {
        return Err(Error::Precondition("the Coxeter element is not a full cycle".into()));
    }
    Ok(seq)
}

/// Partition of `x` into its cycles, drawn on the circle of `c`.
pub fn ncp_encode(g: &CoxeterGroup, x: CoxeterElement, c: CoxeterElement) -> Result<NoncrossingPartition> {
    if !g.abs_divides(x, c) {
        return Err(Error::Domain("element does not divide the Coxeter element".into()));
    }
    let sequence = circle_sequence(g, c)?;
    let pos: HashMap<i32, usize> = sequence.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let map: HashMap<i32, i32> = action(g, x)?.into_iter().collect();
    let mut seen = HashMap::new();
    let mut blocks = Vec::new();
    for &start in &sequence {
        if seen.contains_key(&start) {
            continue;
        }
        let mut block = vec![start];
        seen.insert(start, ());
        let mut y = map[&start];
        while y != start {
            seen.insert(y, ());
            block.push(y);
            y = map[&y];
        }
        if block.windows(2).any(|p| pos[&p[0]] > pos[&p[1]]) {
            return Err(Error::Integrity(format!("cycle {block:?} of a divisor is not clockwise")));
        }
        blocks.push(block);
    }
    Ok(NoncrossingPartition { sequence, blocks })
}

/// The element whose cycles are the blocks, each read clockwise.
pub fn ncp_decode(g: &CoxeterGroup, p: &NoncrossingPartition, c: CoxeterElement) -> Result<CoxeterElement> {
    let sequence = circle_sequence(g, c)?;
    if sequence != p.sequence {
        return Err(Error::Domain("partition drawn on a different circle".into()));
    }
    let pos: HashMap<i32, usize> = sequence.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut map: HashMap<i32, i32> = HashMap::new();
    for block in &p.blocks {
        let mut b = block.clone();
        if b.iter().any(|l| !pos.contains_key(l)) {
            return Err(Error::Domain(format!("block {block:?} has labels off the circle")));
        }
        b.sort_by_key(|l| pos[l]);
        for (i, &l) in b.iter().enumerate() {
            if map.insert(l, b[(i + 1) % b.len()]).is_some() {
                return Err(Error::Domain(format!("label {l} in two blocks")));
            }
        }
    }
    if map.len() != sequence.len() {
        return Err(Error::Domain("blocks do not cover the circle".into()));
    }
    let payload = match g.coxeter_type().family {
        Family::A => {
            let mut perm = vec![0u8; sequence.len()];
            for (&l, &img) in &map {
                perm[l as usize - 1] = img as u8 - 1;
            }
            Payload::Perm(perm)
        }
        _ => {
            let n = sequence.len() / 2;
            let images: Vec<i8> = (1..=n as i32).map(|l| map[&l] as i8).collect();
            let sp = SignedPerm { images, even: false };
            if (1..=n as i8).any(|l| sp.apply(-l) as i32 != map[&(-(l as i32))]) {
                return Err(Error::Domain("partition is not symmetric".into()));
            }
            Payload::Signed(sp)
        }
    };
    let x = g.element_of_payload(&payload)?;
    if !g.abs_divides(x, c) {
        return Err(Error::Domain("partition is crossing".into()));
    }
    Ok(x)
}

/// Every noncrossing (and, in type B, symmetric) partition of the circle,
/// enumerated directly from set partitions.
pub fn all_noncrossing_partitions(g: &CoxeterGroup, c: CoxeterElement) -> Result<Vec<NoncrossingPartition>> {
    let sequence = circle_sequence(g, c)?;
    let symmetric = g.coxeter_type().family == Family::B;
    let n = sequence.len();
    let mut out = Vec::new();
    let mut assign = vec![0usize; n];
    fn rec(
        i: usize,
        blocks: usize,
        assign: &mut Vec<usize>,
        seq: &[i32],
        symmetric: bool,
        out: &mut Vec<NoncrossingPartition>,
    ) {
        if i == seq.len() {
            let mut bl: Vec<Vec<i32>> = vec![Vec::new(); blocks];
            for (k, &b) in assign.iter().enumerate() {
                bl[b].push(seq[k]);
            }
            let p = NoncrossingPartition { sequence: seq.to_vec(), blocks: bl };
            if p.is_noncrossing() && (!symmetric || p.is_symmetric()) {
                out.push(p);
            }
            return;
        }
        for b in 0..=blocks {
            assign[i] = b;
            rec(i + 1, blocks.max(b + 1), assign, seq, symmetric, out);
        }
    }
    rec(0, 0, &mut assign, &sequence, symmetric, &mut out);
    Ok(out)
}
