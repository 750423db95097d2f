//! Standalone SVG renderings of wiring diagrams and noncrossing partitions.

use std::fmt::Write as _;
use std::path::Path;

use super::WiringDiagram;
use crate::dual::NoncrossingPartition;
use crate::error::Result;

const PITCH: f64 = 40.0;
/// Length of the break in an under-strand.
const GAP: f64 = 6.0;
const RADIUS: f64 = 150.0;

fn header(width: f64, height: f64) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\">\n"
    )
}

fn line(out: &mut String, (x1, y1): (f64, f64), (x2, y2): (f64, f64)) {
    let _ = writeln!(
        out,
        "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" stroke=\"black\" stroke-width=\"2\"/>"
    );
}

/// Strands run top to bottom, one crossing per row; the under-strand is
/// broken around the crossing point.
pub fn wiring_svg(d: &WiringDiagram) -> String {
    let n = d.strand_count();
    let letters = d.letters();
    let width = PITCH * (n as f64 + 1.0);
    let height = PITCH * (letters.len() as f64 + 2.0);
    let x = |slot: usize| PITCH * (slot as f64 + 1.0);
    let y = |row: usize| PITCH * (row as f64 + 1.0);
    let mut out = header(width, height);
    for (row, &l) in letters.iter().enumerate() {
        let i = l.unsigned_abs() as usize - 1;
        for slot in (0..n).filter(|&s| s != i && s != i + 1) {
            line(&mut out, (x(slot), y(row)), (x(slot), y(row + 1)));
        }
        // the strand moving up-slot starts at i, the other at i + 1
        let rising = ((x(i), y(row)), (x(i + 1), y(row + 1)));
        let falling = ((x(i + 1), y(row)), (x(i), y(row + 1)));
        let (over, under) = if l > 0 { (falling, rising) } else { (rising, falling) };
        line(&mut out, over.0, over.1);
        let mid = ((under.0 .0 + under.1 .0) / 2.0, (under.0 .1 + under.1 .1) / 2.0);
        let len = ((under.1 .0 - under.0 .0).powi(2) + (under.1 .1 - under.0 .1).powi(2)).sqrt();
        let (ux, uy) = ((under.1 .0 - under.0 .0) / len, (under.1 .1 - under.0 .1) / len);
        let h = GAP / 2.0;
        line(&mut out, under.0, (mid.0 - ux * h, mid.1 - uy * h));
        line(&mut out, (mid.0 + ux * h, mid.1 + uy * h), under.1);
    }
    if letters.is_empty() {
        for slot in 0..n {
            line(&mut out, (x(slot), y(0)), (x(slot), y(1)));
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Point positions on the circle.
///
/// Type A (positive labels): label 1 on top, `N` at the bottom, height
/// decreasing with the label; the increasing run of the sequence sits on the
/// right and the rest on the left. Signed labels: evenly spaced clockwise
/// from the top in sequence order.
fn circle_points(p: &NoncrossingPartition) -> Vec<(i32, f64, f64)> {
    let (cx, cy) = (RADIUS + PITCH, RADIUS + PITCH);
    let n = p.sequence.len();
    if p.sequence.iter().any(|&l| l < 0) {
        return p
            .sequence
            .iter()
            .enumerate()
            .map(|(j, &l)| {
                let th = std::f64::consts::TAU * j as f64 / n as f64;
                (l, cx + RADIUS * th.sin(), cy - RADIUS * th.cos())
            })
            .collect();
    }
    let peak = p.sequence.iter().position(|&l| l == n as i32).unwrap_or(0);
    p.sequence
        .iter()
        .enumerate()
        .map(|(j, &l)| {
            let t = if n > 1 { (l - 1) as f64 / (n - 1) as f64 } else { 0.0 };
            let y = cy - RADIUS + 2.0 * RADIUS * t;
            let half = (RADIUS * RADIUS - (y - cy) * (y - cy)).max(0.0).sqrt();
            let x = if j <= peak { cx + half } else { cx - half };
            (l, x, y)
        })
        .collect()
}

pub fn partition_svg(p: &NoncrossingPartition) -> String {
    let size = 2.0 * (RADIUS + PITCH);
    let (cx, cy) = (size / 2.0, size / 2.0);
    let pts = circle_points(p);
    let at = |l: i32| pts.iter().find(|q| q.0 == l).map(|q| (q.1, q.2)).unwrap_or((cx, cy));
    let mut out = header(size, size);
    let _ = writeln!(
        out,
        "  <circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"{RADIUS:.2}\" fill=\"none\" stroke=\"black\"/>"
    );
    for block in p.blocks.iter().filter(|b| b.len() > 1) {
        let coords: Vec<String> = block
            .iter()
            .map(|&l| {
                let (x, y) = at(l);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            out,
            "  <polygon points=\"{}\" fill=\"gray\" fill-opacity=\"0.5\" stroke=\"gray\" stroke-width=\"2\"/>",
            coords.join(" ")
        );
    }
    for &(l, x, y) in &pts {
        let _ = writeln!(out, "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"black\"/>");
        let (dx, dy) = (x - cx, y - cy);
        let norm = (dx * dx + dy * dy).sqrt().max(1.0);
        let (tx, ty) = (x + 16.0 * dx / norm, y + 16.0 * dy / norm);
        let _ = writeln!(
            out,
            "  <text x=\"{tx:.2}\" y=\"{ty:.2}\" font-size=\"12\" text-anchor=\"middle\" dominant-baseline=\"middle\">{l}</text>"
        );
    }
    out.push_str("</svg>\n");
    out
}

pub fn write_svg(svg: &str, path: &Path) -> Result<()> {
    std::fs::write(path, svg)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_draws_parallel_strands() {
        let d = WiringDiagram::from_letters(3, &[]).unwrap();
        let svg = wiring_svg(&d);
        assert_eq!(svg.matches("<line").count(), 3);
        assert_eq!(svg, wiring_svg(&d));
    }

    #[test]
    fn crossing_breaks_the_under_strand() {
        let svg = wiring_svg(&WiringDiagram::from_letters(2, &[1]).unwrap());
        assert_eq!(svg.matches("<line").count(), 3);
    }

    #[test]
    fn single_block_is_one_polygon() {
        let p = NoncrossingPartition { sequence: vec![1, 2, 4, 3], blocks: vec![vec![1, 2, 4, 3]] };
        let svg = partition_svg(&p);
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches("<text").count(), 4);
    }
}
