//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use tlcat_core::diagram::{Point, Side};

/// All perfect matchings of the points `0..total`, with no planarity
/// restriction at all.
pub fn all_matchings(total: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(free: &mut Vec<usize>, acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if free.is_empty() {
            out.push(acc.clone());
            return;
        }
        let a = free.remove(0);
        for k in 0..free.len() {
            let b = free.remove(k);
            acc.push((a, b));
            go(free, acc, out);
            acc.pop();
            free.insert(k, b);
        }
        free.insert(0, a);
    }
    let mut out = Vec::new();
    if total % 2 == 0 {
        go(&mut (0..total).collect(), &mut Vec::new(), &mut out);
    }
    out
}

/// Crossing test in the cyclic boundary order of a rectangle: bottom
/// points left to right, then top points right to left.  Two chords
/// cross exactly when their endpoints interleave around that circle.
pub fn chords_cross(a: (usize, usize), b: (usize, usize)) -> bool {
    let (lo, hi) = (a.0.min(a.1), a.0.max(a.1));
    let inside0 = lo < b.0 && b.0 < hi;
    let inside1 = lo < b.1 && b.1 < hi;
    inside0 != inside1
}

pub fn is_noncrossing(m: &[(usize, usize)]) -> bool {
    for (i, &a) in m.iter().enumerate() {
        for &b in &m[i + 1..] {
            if chords_cross(a, b) {
                return false;
            }
        }
    }
    true
}

/// Canonical key of an arc set, independent of arc and endpoint order.
pub fn arc_key(arcs: &[(Point, Point)]) -> Vec<((u8, usize), (u8, usize))> {
    let pt = |p: Point| (if p.side == Side::B { 0u8 } else { 1u8 }, p.index);
    let mut key: Vec<_> = arcs
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (pt(a), pt(b));
            (x.min(y), x.max(y))
        })
        .collect();
    key.sort();
    key
}
