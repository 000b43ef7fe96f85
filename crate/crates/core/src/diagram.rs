//! Planar diagrams: the morphisms of the diagram category.
//!
//! A diagram with `bot` bottom points and `top` top points is a perfect
//! non-crossing matching of the `bot + top` boundary points of a
//! rectangle. Non-crossing is taken with respect to the clockwise cyclic
//! order B1..B_bot, T_top..T1. Composition glues the top row of the
//! first diagram to the bottom row of the second; every closed loop
//! produced by the gluing contributes one factor of delta.
//!
//! Arcs are stored canonically: each arc's endpoints are sorted (bottom
//! side before top side, then by index) and the arc list is sorted
//! lexicographically, so equal diagrams compare equal structurally.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::render::Canvas;
use crate::scalar::{Mode, Scalar};

/// Which row of the rectangle a point lies on.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Side {
    B,
    T,
}

/// A boundary point: row plus 1-based index within the row.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Point {
    pub side: Side,
    pub index: usize,
}

impl Point {
    pub fn b(index: usize) -> Self {
        Point {
            side: Side::B,
            index,
        }
    }

    pub fn t(index: usize) -> Self {
        Point {
            side: Side::T,
            index,
        }
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let side = match self.side {
            Side::B => "B",
            Side::T => "T",
        };
        (side, self.index).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let (side, index): (String, usize) = Deserialize::deserialize(deserializer)?;
        let side = match side.as_str() {
            "B" => Side::B,
            "T" => Side::T,
            other => return Err(D::Error::custom(format!("unknown side {other:?}"))),
        };
        Ok(Point { side, index })
    }
}

pub type Arc = (Point, Point);

/// Planar non-crossing perfect matching on `bot` bottom and `top` top points,
/// read as a morphism from `bot` to `top`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PlanarDiagram {
    bot: usize,
    top: usize,
    arcs: Vec<Arc>,
}

impl<'de> Deserialize<'de> for PlanarDiagram {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            bot: usize,
            top: usize,
            arcs: Vec<Arc>,
        }
        let raw = Raw::deserialize(deserializer)?;
        PlanarDiagram::new(raw.bot, raw.top, raw.arcs).map_err(|e| D::Error::custom(format!("{e}")))
    }
}

impl PlanarDiagram {
    /// Validates and canonicalizes an arc list.
    pub fn new(bot: usize, top: usize, arcs: Vec<Arc>) -> Result<Self> {
        let n = bot + top;
        if n % 2 != 0 {
            return Err(Error::InvalidDiagram(format!(
                "odd number of boundary points: {bot} + {top}"
            )));
        }
        if arcs.len() * 2 != n {
            return Err(Error::InvalidDiagram(format!(
                "expected {} arcs for {} points, got {}",
                n / 2,
                n,
                arcs.len()
            )));
        }
        let mut seen = vec![false; n];
        let mut canon: Vec<Arc> = Vec::with_capacity(arcs.len());
        for (a, b) in arcs {
            for p in [a, b] {
                let row = match p.side {
                    Side::B => bot,
                    Side::T => top,
                };
                if p.index == 0 || p.index > row {
                    return Err(Error::InvalidDiagram(format!(
                        "point {p:?} out of range for bot={bot}, top={top}"
                    )));
                }
            }
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            if a == b {
                return Err(Error::InvalidDiagram(format!("degenerate arc at {a:?}")));
            }
            for p in [a, b] {
                let pos = position(bot, top, p);
                if seen[pos] {
                    return Err(Error::InvalidDiagram(format!("point {p:?} used twice")));
                }
                seen[pos] = true;
            }
            canon.push((a, b));
        }
        canon.sort();
        let d = PlanarDiagram {
            bot,
            top,
            arcs: canon,
        };
        if let Some(((a, b), (c, e))) = d.crossing_pair() {
            return Err(Error::InvalidDiagram(format!(
                "arcs cross: {a:?}-{b:?} and {c:?}-{e:?}"
            )));
        }
        Ok(d)
    }

    /// Constructor for internally produced arc lists that are planar by
    /// construction (composition, juxtaposition, bending).
    fn from_arcs_unchecked(bot: usize, top: usize, mut arcs: Vec<Arc>) -> Self {
        for arc in arcs.iter_mut() {
            if arc.0 > arc.1 {
                *arc = (arc.1, arc.0);
            }
        }
        arcs.sort();
        let d = PlanarDiagram { bot, top, arcs };
        debug_assert!(d.crossing_pair().is_none(), "internal diagram crosses");
        d
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// The identity morphism on n points.
    pub fn identity(n: usize) -> Self {
        let arcs = (1..=n).map(|i| (Point::b(i), Point::t(i))).collect();
        PlanarDiagram::from_arcs_unchecked(n, n, arcs)
    }

    /// The i-th cap/cup generator of the algebra on n points, 1 <= i < n:
    /// a cup joining B_i,B_{i+1}, a cap joining T_i,T_{i+1}, vertical
    /// strands elsewhere.
    pub fn e(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i + 1 <= n, "generator index out of range");
        let mut arcs = vec![
            (Point::b(i), Point::b(i + 1)),
            (Point::t(i), Point::t(i + 1)),
        ];
        for k in (1..=n).filter(|&k| k != i && k != i + 1) {
            arcs.push((Point::b(k), Point::t(k)));
        }
        PlanarDiagram::from_arcs_unchecked(n, n, arcs)
    }

    fn crossing_pair(&self) -> Option<(Arc, Arc)> {
        for (i, &(a, b)) in self.arcs.iter().enumerate() {
            let (pa, pb) = (
                position(self.bot, self.top, a),
                position(self.bot, self.top, b),
            );
            let (pa, pb) = (pa.min(pb), pa.max(pb));
            for &(c, d) in &self.arcs[i + 1..] {
                let (pc, pd) = (
                    position(self.bot, self.top, c),
                    position(self.bot, self.top, d),
                );
                let (pc, pd) = (pc.min(pd), pc.max(pd));
                let inside_c = pa < pc && pc < pb;
                let inside_d = pa < pd && pd < pb;
                if inside_c != inside_d {
                    return Some(((a, b), (c, d)));
                }
            }
        }
        None
    }

    /// Vertical flip: the anti-involution of the category. Bottom and top
    /// rows exchange; indices within each row are preserved.
    pub fn involution(&self) -> Self {
        let flip = |p: Point| Point {
            side: match p.side {
                Side::B => Side::T,
                Side::T => Side::B,
            },
            index: p.index,
        };
        let arcs = self.arcs.iter().map(|&(a, b)| (flip(a), flip(b))).collect();
        PlanarDiagram::from_arcs_unchecked(self.top, self.bot, arcs)
    }

    /// Glues `g`'s bottom row onto this diagram's top row, returning the
    /// composite and the number of closed loops swallowed by the gluing.
    pub fn compose_with_loops(&self, g: &PlanarDiagram) -> Result<(PlanarDiagram, usize)> {
        if self.top != g.bot {
            return Err(Error::NonComposable {
                f_top: self.top,
                g_bot: g.bot,
            });
        }
        let mid = self.top;
        // Node layout: [0, bot) result bottom, [bot, bot+mid) interface,
        // [bot+mid, bot+mid+g.top) result top.
        let f_node = |p: Point| match p.side {
            Side::B => p.index - 1,
            Side::T => self.bot + p.index - 1,
        };
        let g_node = |p: Point| match p.side {
            Side::B => self.bot + p.index - 1,
            Side::T => self.bot + mid + p.index - 1,
        };
        let total = self.bot + mid + g.top;
        let mut uf = UnionFind::new(total);
        for &(a, b) in &self.arcs {
            uf.union(f_node(a), f_node(b));
        }
        for &(a, b) in &g.arcs {
            uf.union(g_node(a), g_node(b));
        }
        // Classify components: two boundary endpoints give an arc, none
        // (interface-only cycles) give a loop.
        let mut endpoints: Vec<Vec<Point>> = vec![vec![]; total];
        for i in 0..self.bot {
            endpoints[uf.find(i)].push(Point::b(i + 1));
        }
        for j in 0..g.top {
            endpoints[uf.find(self.bot + mid + j)].push(Point::t(j + 1));
        }
        let mut arcs = vec![];
        let mut interface_roots = vec![];
        for i in 0..total {
            if uf.find(i) != i {
                continue;
            }
            match endpoints[i].len() {
                0 => interface_roots.push(i),
                2 => arcs.push((endpoints[i][0], endpoints[i][1])),
                k => unreachable!("component with {k} boundary points"),
            }
        }
        let loops = interface_roots.len();
        Ok((
            PlanarDiagram::from_arcs_unchecked(self.bot, g.top, arcs),
            loops,
        ))
    }

    /// Places `g` to the right of this diagram (tensor product of
    /// morphisms): indices of `g` shift by the respective row widths.
    pub fn juxtapose(&self, g: &PlanarDiagram) -> PlanarDiagram {
        let shift = |p: Point| match p.side {
            Side::B => Point::b(p.index + self.bot),
            Side::T => Point::t(p.index + self.top),
        };
        let mut arcs = self.arcs.clone();
        arcs.extend(g.arcs.iter().map(|&(a, b)| (shift(a), shift(b))));
        PlanarDiagram::from_arcs_unchecked(self.bot + g.bot, self.top + g.top, arcs)
    }

    /// Fixed-width ASCII rendering: top and bottom rows of points, cups
    /// and caps as box-drawn hooks, through strands as dog-legs.
    pub fn render_ascii(&self) -> String {
        let col_b = |i: usize| 2 * (i - 1);
        let col_t = |j: usize| 2 * (j - 1);
        let mut tops = vec![];
        let mut bots = vec![];
        let mut throughs = vec![];
        for &(a, b) in &self.arcs {
            match (a.side, b.side) {
                (Side::T, Side::T) => tops.push((a.index.min(b.index), a.index.max(b.index))),
                (Side::B, Side::B) => bots.push((a.index.min(b.index), a.index.max(b.index))),
                (Side::B, Side::T) => throughs.push((a.index, b.index)),
                (Side::T, Side::B) => throughs.push((b.index, a.index)),
            }
        }
        let depth = |arcs: &[(usize, usize)], (i, j): (usize, usize)| {
            1 + arcs
                .iter()
                .filter(|&&(k, l)| k > i && l < j)
                .count()
        };
        let dt: Vec<usize> = tops.iter().map(|&a| depth(&tops, a)).collect();
        let db: Vec<usize> = bots.iter().map(|&a| depth(&bots, a)).collect();
        let top_h = dt.iter().max().copied().unwrap_or(0);
        let bot_h = db.iter().max().copied().unwrap_or(0);
        let bent: Vec<&(usize, usize)> = throughs.iter().filter(|&&(i, j)| i != j).collect();
        let mid_h = bent.len().max(usize::from(!throughs.is_empty() && bent.is_empty()));
        let height = 1 + top_h + mid_h.max(1) + bot_h + 1;
        let width = 2 * self.bot.max(self.top).max(1) - 1;
        let mut canvas = Canvas::new(height, width);
        let top_row = 0;
        let bot_row = height - 1;
        for j in 1..=self.top {
            canvas.set(top_row, col_t(j), 'o');
        }
        for i in 1..=self.bot {
            canvas.set(bot_row, col_b(i), 'o');
        }
        for (&(i, j), &d) in tops.iter().zip(&dt) {
            let r = top_row + d;
            canvas.vline(top_row + 1, r, col_t(i));
            canvas.vline(top_row + 1, r, col_t(j));
            canvas.hook(r, col_t(i), col_t(j));
        }
        for (&(i, j), &d) in bots.iter().zip(&db) {
            let r = bot_row - d;
            canvas.vline(r, bot_row - 1, col_b(i));
            canvas.vline(r, bot_row - 1, col_b(j));
            canvas.hook(r, col_b(i), col_b(j));
        }
        let mut lane = top_row + top_h + 1;
        for &(i, j) in &throughs {
            if i == j {
                canvas.vline(top_row + 1, bot_row - 1, col_b(i));
            } else {
                canvas.vline(top_row + 1, lane, col_t(j));
                canvas.hook(lane, col_t(j).min(col_b(i)), col_t(j).max(col_b(i)));
                canvas.vline(lane, bot_row - 1, col_b(i));
                lane += 1;
            }
        }
        canvas.to_string()
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}->{}:", self.bot, self.top)?;
        for (a, b) in &self.arcs {
            let p = |p: &Point| {
                format!(
                    "{}{}",
                    match p.side {
                        Side::B => 'B',
                        Side::T => 'T',
                    },
                    p.index
                )
            };
            write!(f, " {}-{}", p(a), p(b))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Cyclic clockwise position of a point: B1..B_bot then T_top..T1.
pub(crate) fn position(bot: usize, top: usize, p: Point) -> usize {
    match p.side {
        Side::B => p.index - 1,
        Side::T => bot + (top - p.index),
    }
}

/// The n-th Catalan number, the size of the diagram basis on n points.
pub fn catalan(n: usize) -> usize {
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    usize::try_from(c).expect("catalan overflow")
}

/// All planar diagrams from `bot` to `top` points, canonically ordered.
/// Empty when `bot + top` is odd; the count is the Catalan number of
/// half the total otherwise.
pub fn enumerate_diagrams(bot: usize, top: usize) -> Vec<PlanarDiagram> {
    let n = bot + top;
    if n % 2 != 0 {
        return vec![];
    }
    let positions: Vec<usize> = (0..n).collect();
    let mut out: Vec<PlanarDiagram> = noncrossing_matchings(&positions)
        .into_iter()
        .map(|m| {
            let arcs = m
                .iter()
                .map(|&(a, b)| (point_at(bot, top, a), point_at(bot, top, b)))
                .collect();
            PlanarDiagram::from_arcs_unchecked(bot, top, arcs)
        })
        .collect();
    out.sort();
    out
}

/// All non-crossing perfect matchings of an ordered position list. The
/// first position pairs with a partner at odd distance; non-crossing
/// forces the enclosed and remaining stretches to match internally.
pub(crate) fn noncrossing_matchings(free: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if free.is_empty() {
        return vec![vec![]];
    }
    let first = free[0];
    let mut out = vec![];
    for k in (1..free.len()).step_by(2) {
        let partner = free[k];
        for inner in noncrossing_matchings(&free[1..k]) {
            for outer in noncrossing_matchings(&free[k + 1..]) {
                let mut m = Vec::with_capacity(free.len() / 2);
                m.push((first, partner));
                m.extend_from_slice(&inner);
                m.extend_from_slice(&outer);
                out.push(m);
            }
        }
    }
    out
}

pub(crate) fn point_at(bot: usize, top: usize, pos: usize) -> Point {
    if pos < bot {
        Point::b(pos + 1)
    } else {
        Point::t(top - (pos - bot))
    }
}

/// A diagram together with a coefficient.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize, Debug)]
pub struct ScaledDiagram {
    pub coeff: Scalar,
    pub diagram: PlanarDiagram,
}

impl ScaledDiagram {
    pub fn unit(mode: &Mode, diagram: PlanarDiagram) -> Self {
        ScaledDiagram {
            coeff: Scalar::one(mode),
            diagram,
        }
    }
}

/// Composition with delta-power bookkeeping: glue `g` above `f`, multiply
/// coefficients, and multiply by delta per closed loop.
pub fn compose(mode: &Mode, f: &ScaledDiagram, g: &ScaledDiagram) -> Result<ScaledDiagram> {
    let (diagram, loops) = f.diagram.compose_with_loops(&g.diagram)?;
    let coeff = &(&f.coeff * &g.coeff) * &Scalar::delta_pow(mode, loops);
    Ok(ScaledDiagram { coeff, diagram })
}

/// Side-by-side tensor of scaled diagrams.
pub fn juxtapose(f: &ScaledDiagram, g: &ScaledDiagram) -> ScaledDiagram {
    ScaledDiagram {
        coeff: &f.coeff * &g.coeff,
        diagram: f.diagram.juxtapose(&g.diagram),
    }
}

/// Disjoint-set forest used for strand tracing.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}
