//! Cap diagrams, cell modules and their invariant bilinear forms.
//!
//! A cap diagram on n points with r caps is a non-crossing partial
//! matching in which no unmatched point (defect) sits under a cap; the
//! n - 2r defects are the through strands of the half diagram. Cap
//! diagrams with r caps form the standard basis of the r-th cell module
//! of the algebra on n points. The algebra acts by gluing a diagram
//! beneath the cap diagram... any result with more caps than r is
//! truncated to zero, which realizes the action modulo lower cells
//! (more caps = lower cell).
//!
//! Pairing two cap diagrams through the anti-involution yields the Gram
//! form of the cell module; its determinant (computed fraction-free, so
//! polynomial entries stay polynomial) decides semisimplicity.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::diagram::{PlanarDiagram, Point, Side, UnionFind};
use crate::error::{Error, Result};
use crate::linalg::{bareiss_det, Echelon};
use crate::render::Canvas;
use crate::scalar::{DeltaPoly, Mode, Rational, Scalar};

/// Non-crossing partial matching with no enclosed defects: `caps` are
/// 1-based index pairs (i < j), sorted; unmatched points are defects.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CapDiagram {
    n: usize,
    caps: Vec<(usize, usize)>,
}

impl<'de> Deserialize<'de> for CapDiagram {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            caps: Vec<(usize, usize)>,
        }
        let raw = Raw::deserialize(deserializer)?;
        CapDiagram::new(raw.n, raw.caps).map_err(|e| D::Error::custom(format!("{e}")))
    }
}

impl CapDiagram {
    pub fn new(n: usize, caps: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut canon = Vec::with_capacity(caps.len());
        for (a, b) in caps {
            let (a, b) = (a.min(b), a.max(b));
            if a == 0 || b > n || a == b {
                return Err(Error::InvalidDiagram(format!(
                    "cap ({a},{b}) out of range for n={n}"
                )));
            }
            for p in [a, b] {
                if seen[p] {
                    return Err(Error::InvalidDiagram(format!("point {p} used twice")));
                }
                seen[p] = true;
            }
            canon.push((a, b));
        }
        canon.sort();
        for (i, &(a, b)) in canon.iter().enumerate() {
            for &(c, d) in &canon[i + 1..] {
                let inside_c = a < c && c < b;
                let inside_d = a < d && d < b;
                if inside_c != inside_d {
                    return Err(Error::InvalidDiagram(format!(
                        "caps ({a},{b}) and ({c},{d}) cross"
                    )));
                }
            }
        }
        let d = CapDiagram { n, caps: canon };
        for p in d.defects() {
            if d.caps.iter().any(|&(a, b)| a < p && p < b) {
                return Err(Error::InvalidDiagram(format!("defect {p} enclosed by a cap")));
            }
        }
        Ok(d)
    }

    fn from_caps_unchecked(n: usize, mut caps: Vec<(usize, usize)>) -> Self {
        caps.sort();
        let d = CapDiagram { n, caps };
        debug_assert!(
            CapDiagram::new(d.n, d.caps.clone()).is_ok(),
            "invalid internal cap diagram"
        );
        d
    }

    /// The all-defect diagram (zero caps).
    pub fn trivial(n: usize) -> Self {
        CapDiagram { n, caps: vec![] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.caps.len()
    }

    pub fn caps(&self) -> &[(usize, usize)] {
        &self.caps
    }

    /// Unmatched points in increasing order; there are n - 2r of them.
    pub fn defects(&self) -> Vec<usize> {
        let mut used = vec![false; self.n + 1];
        for &(a, b) in &self.caps {
            used[a] = true;
            used[b] = true;
        }
        (1..=self.n).filter(|&p| !used[p]).collect()
    }

    /// One row of points with caps hanging below and defects as stubs.
    pub fn render_ascii(&self) -> String {
        let col = |i: usize| 2 * (i - 1);
        let depth = |(i, j): (usize, usize)| {
            1 + self
                .caps
                .iter()
                .filter(|&&(k, l)| k > i && l < j)
                .count()
        };
        let max_depth = self.caps.iter().map(|&c| depth(c)).max().unwrap_or(0);
        let height = 1 + max_depth.max(usize::from(self.r() * 2 < self.n));
        let width = 2 * self.n.max(1) - 1;
        let mut canvas = Canvas::new(height, width);
        for i in 1..=self.n {
            canvas.set(0, col(i), 'o');
        }
        for &(i, j) in &self.caps {
            let d = depth((i, j));
            canvas.vline(1, d, col(i));
            canvas.vline(1, d, col(j));
            canvas.hook(d, col(i), col(j));
        }
        for p in self.defects() {
            canvas.vline(1, height - 1, col(p));
        }
        canvas.to_string()
    }
}

impl fmt::Display for CapDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}:", self.n)?;
        for &(a, b) in &self.caps {
            write!(f, " {a}-{b}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for CapDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// All (n, r)-cap diagrams in canonical order. The count is
/// binom(n, r) - binom(n, r - 1).
pub fn enumerate_caps(n: usize, r: usize) -> Vec<CapDiagram> {
    if 2 * r > n {
        return vec![];
    }
    let points: Vec<usize> = (1..=n).collect();
    let mut out: Vec<CapDiagram> = caps_rec(&points, r)
        .into_iter()
        .map(|caps| CapDiagram::from_caps_unchecked(n, caps))
        .collect();
    out.sort();
    out
}

/// Leftmost point is either a defect (everything placed later lies to its
/// right, so it can never become enclosed) or opens a cap whose interior
/// must be perfectly matched.
fn caps_rec(points: &[usize], r: usize) -> Vec<Vec<(usize, usize)>> {
    if r == 0 {
        return vec![vec![]];
    }
    if points.len() < 2 * r {
        return vec![];
    }
    let mut out = vec![];
    // First point stays a defect.
    for rest in caps_rec(&points[1..], r) {
        out.push(rest);
    }
    // First point opens a cap; the enclosed stretch matches internally.
    for k in (1..points.len()).step_by(2) {
        let inner_caps = (k - 1) / 2;
        if inner_caps + 1 > r {
            continue;
        }
        for inner in crate::diagram::noncrossing_matchings(&points[1..k]) {
            for outer in caps_rec(&points[k + 1..], r - 1 - inner_caps) {
                let mut m = Vec::with_capacity(r);
                m.push((points[0], points[k]));
                m.extend(inner.iter().copied());
                m.extend_from_slice(&outer);
                out.push(m);
            }
        }
    }
    out
}

/// Formal linear combination of cap diagrams with scalar coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CellVector {
    terms: BTreeMap<CapDiagram, Scalar>,
}

impl CellVector {
    pub fn zero() -> Self {
        CellVector::default()
    }

    pub fn single(cap: CapDiagram, coeff: Scalar) -> Self {
        let mut v = CellVector::zero();
        v.add_term(cap, coeff);
        v
    }

    pub fn add_term(&mut self, cap: CapDiagram, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(cap) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CapDiagram, &Scalar)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut v = CellVector::zero();
        for (cap, coeff) in &self.terms {
            v.add_term(cap.clone(), coeff * c);
        }
        v
    }

    pub fn add(&self, rhs: &CellVector) -> Self {
        let mut v = self.clone();
        for (cap, coeff) in &rhs.terms {
            v.add_term(cap.clone(), coeff.clone());
        }
        v
    }
}

impl Serialize for CellVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            coeff: &'a Scalar,
            cap: &'a CapDiagram,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(cap, coeff)| Term { coeff, cap })
            .collect();
        terms.serialize(serializer)
    }
}

/// Action of a diagram on a cap diagram: glue `x` (points up) beneath
/// `a`'s bottom row and read the result off `a`'s top row. Each closed
/// loop contributes delta; if two defects of `x` become joined, the cap
/// count rises and the result is truncated to zero.
///
/// `a` may change arity (bot = x.n, any top of equal parity); the common
/// cell label is the defect count, preserved by every nonzero action.
pub fn act(mode: &Mode, a: &PlanarDiagram, x: &CapDiagram) -> Result<CellVector> {
    if a.bot() != x.n() {
        return Err(Error::NonComposable {
            f_top: x.n(),
            g_bot: a.bot(),
        });
    }
    let n = x.n();
    let m = a.top();
    // Nodes: [0, n) shared bottom row, [n, n + m) top row.
    let node = |p: Point| match p.side {
        Side::B => p.index - 1,
        Side::T => n + p.index - 1,
    };
    let mut uf = UnionFind::new(n + m);
    for &(u, v) in a.arcs() {
        uf.union(node(u), node(v));
    }
    for &(i, j) in x.caps() {
        uf.union(i - 1, j - 1);
    }
    // Path endpoints: defects of x (degree-1 bottom nodes) and top nodes.
    #[derive(Default, Clone)]
    struct Comp {
        tops: Vec<usize>,
        defects: usize,
        size: usize,
    }
    let mut comps: BTreeMap<usize, Comp> = BTreeMap::new();
    for d in x.defects() {
        comps.entry(uf.find(d - 1)).or_default().defects += 1;
    }
    for t in 1..=m {
        comps.entry(uf.find(n + t - 1)).or_default().tops.push(t);
    }
    for i in 0..n + m {
        let root = uf.find(i);
        comps.entry(root).or_default().size += 1;
    }
    let mut caps = vec![];
    let mut loops = 0usize;
    for comp in comps.values() {
        match (comp.tops.len(), comp.defects) {
            (2, 0) => caps.push((comp.tops[0], comp.tops[1])),
            (1, 1) => {} // through strand: defect survives at the top
            (0, 2) => return Ok(CellVector::zero()), // defects joined: truncated
            (0, 0) => loops += 1, // closed loop in the interior
            other => unreachable!("impossible strand endpoints {other:?}"),
        }
    }
    let result = CapDiagram::from_caps_unchecked(m, caps);
    debug_assert_eq!(result.r(), (m - (x.n() - 2 * x.r())) / 2);
    Ok(CellVector::single(
        result,
        Scalar::delta_pow(mode, loops),
    ))
}

/// Extends [`act`] linearly to cell vectors.
pub fn act_vector(mode: &Mode, a: &PlanarDiagram, v: &CellVector) -> Result<CellVector> {
    let mut out = CellVector::zero();
    for (cap, coeff) in v.terms() {
        let image = act(mode, a, cap)?;
        for (c, s) in image.terms() {
            out.add_term(c.clone(), &(coeff * s) * &Scalar::one(mode));
        }
    }
    Ok(out)
}

/// Builds the basis diagram with `s` as the top half, `t` flipped as the
/// bottom half, and defects joined in order left to right. Acting on a
/// cap diagram glues it beneath, so the bottom half `t` is the one that
/// pairs with the module element while `s` survives:
/// `act(assemble(s,t), u) = gram_pair(t,u) . s`.
pub fn assemble(s: &CapDiagram, t: &CapDiagram) -> Result<PlanarDiagram> {
    if s.n() != t.n() || s.r() != t.r() {
        return Err(Error::InvalidArgument(format!(
            "assemble needs matching shape: got ({}, {}) and ({}, {})",
            s.n(),
            s.r(),
            t.n(),
            t.r()
        )));
    }
    let mut arcs: Vec<(Point, Point)> = vec![];
    for &(a, b) in s.caps() {
        arcs.push((Point::t(a), Point::t(b)));
    }
    for &(a, b) in t.caps() {
        arcs.push((Point::b(a), Point::b(b)));
    }
    for (d_t, d_s) in t.defects().into_iter().zip(s.defects()) {
        arcs.push((Point::b(d_t), Point::t(d_s)));
    }
    PlanarDiagram::new(s.n(), t.n(), arcs)
}

/// Splits a square diagram into its top and bottom half diagrams plus the
/// shared cap count; inverse of [`assemble`].
pub fn decompose(d: &PlanarDiagram) -> Result<(CapDiagram, CapDiagram, usize)> {
    if d.bot() != d.top() {
        return Err(Error::InvalidArgument(format!(
            "decompose needs a square diagram, got {} -> {}",
            d.bot(),
            d.top()
        )));
    }
    let mut s_caps = vec![];
    let mut t_caps = vec![];
    for &(a, b) in d.arcs() {
        match (a.side, b.side) {
            (Side::T, Side::T) => s_caps.push((a.index, b.index)),
            (Side::B, Side::B) => t_caps.push((a.index, b.index)),
            _ => {}
        }
    }
    let r = s_caps.len();
    Ok((
        CapDiagram::from_caps_unchecked(d.top(), s_caps),
        CapDiagram::from_caps_unchecked(d.bot(), t_caps),
        r,
    ))
}

/// Value of the invariant form: flip `t` above `x`, glue the n points,
/// and demand that all n - 2r defects pair through; otherwise the product
/// drops to a lower cell and the form value is exactly zero.
pub fn gram_pair(mode: &Mode, t: &CapDiagram, x: &CapDiagram) -> Result<Scalar> {
    match gram_pair_loops(t, x)? {
        Some(loops) => Ok(Scalar::delta_pow(mode, loops)),
        None => Ok(Scalar::zero(mode)),
    }
}

/// Loop count of the pairing, or None when the through strands fail to
/// connect the two defect sets bijectively.
fn gram_pair_loops(t: &CapDiagram, x: &CapDiagram) -> Result<Option<usize>> {
    if t.n() != x.n() || t.r() != x.r() {
        return Err(Error::InvalidArgument(format!(
            "gram pairing needs matching shape: got ({}, {}) and ({}, {})",
            t.n(),
            t.r(),
            x.n(),
            x.r()
        )));
    }
    let n = t.n();
    let mut uf = UnionFind::new(2 * n);
    // Nodes [0, n): the glued row as seen from x; [n, 2n): as seen from t.
    for i in 0..n {
        uf.union(i, n + i);
    }
    for &(a, b) in x.caps() {
        uf.union(a - 1, b - 1);
    }
    for &(a, b) in t.caps() {
        uf.union(n + a - 1, n + b - 1);
    }
    // Count loops: components containing no defect of either side.
    let t_defects = t.defects();
    let x_defects = x.defects();
    let mut has_defect = std::collections::BTreeSet::new();
    for &d in &x_defects {
        has_defect.insert(uf.find(d - 1));
    }
    let mut mixed = 0usize;
    for &d in &t_defects {
        let root = uf.find(n + d - 1);
        if has_defect.contains(&root) {
            mixed += 1;
        }
    }
    // All defects must pair through: t-defects hitting x-defect components
    // exactly n - 2r times, with no defect component reused twice by the
    // same side. Components are paths, so a mixed component has exactly
    // one defect from each side; mixed == n - 2r certifies the bijection.
    if mixed != n - 2 * t.r() {
        return Ok(None);
    }
    let mut roots = std::collections::BTreeSet::new();
    for i in 0..2 * n {
        roots.insert(uf.find(i));
    }
    let mut defect_roots = std::collections::BTreeSet::new();
    for &d in &x_defects {
        defect_roots.insert(uf.find(d - 1));
    }
    for &d in &t_defects {
        defect_roots.insert(uf.find(n + d - 1));
    }
    Ok(Some(roots.len() - defect_roots.len()))
}

/// Gram matrix of the (n, r) cell module over the chosen coefficient mode,
/// rows and columns indexed by [`enumerate_caps`] order.
#[derive(Clone, Serialize)]
pub struct GramMatrix {
    pub n: usize,
    pub r: usize,
    pub basis: Vec<CapDiagram>,
    pub entries: Vec<Vec<Scalar>>,
}

pub fn gram_matrix(mode: &Mode, n: usize, r: usize) -> Result<GramMatrix> {
    let basis = enumerate_caps(n, r);
    let mut entries = vec![];
    for t in &basis {
        let mut row = vec![];
        for x in &basis {
            row.push(gram_pair(mode, t, x)?);
        }
        entries.push(row);
    }
    Ok(GramMatrix {
        n,
        r,
        basis,
        entries,
    })
}

/// Gram determinant via fraction-free elimination. In generic mode the
/// entries are delta powers, so the whole computation stays polynomial.
pub fn gram_det(mode: &Mode, n: usize, r: usize) -> Result<Scalar> {
    let basis = enumerate_caps(n, r);
    match mode {
        Mode::Generic => {
            let mut m = vec![];
            for t in &basis {
                let mut row = vec![];
                for x in &basis {
                    row.push(match gram_pair_loops(t, x)? {
                        Some(loops) => DeltaPoly::delta_pow(loops),
                        None => DeltaPoly::zero(),
                    });
                }
                m.push(row);
            }
            Ok(Scalar::from_poly(bareiss_det(m)))
        }
        Mode::At(q) => {
            let mut m = vec![];
            for t in &basis {
                let mut row = vec![];
                for x in &basis {
                    row.push(match gram_pair_loops(t, x)? {
                        Some(loops) => q.pow(loops as u32),
                        None => Rational::zero(),
                    });
                }
                m.push(row);
            }
            Ok(Scalar::Numeric(bareiss_det(m)))
        }
    }
}

/// Dimension of the radical of the form at delta = q: corank of the
/// specialized Gram matrix.
pub fn radical_dim(n: usize, r: usize, q: &Rational) -> Result<usize> {
    let mode = Mode::At(q.clone());
    let gram = gram_matrix(&mode, n, r)?;
    let dim = gram.basis.len();
    let mut ech = Echelon::new(mode, dim);
    for row in gram.entries {
        ech.insert(row);
    }
    Ok(dim - ech.rank())
}

/// Per-cell record in a semisimplicity certificate.
#[derive(Clone, Serialize)]
pub struct CellCertificate {
    pub r: usize,
    pub dim: usize,
    pub det: Scalar,
    pub nonzero: bool,
}

/// Semisimplicity of the algebra on n points over the given mode: the
/// algebra is semisimple exactly when every cell determinant is nonzero.
/// Returns the verdict with one determinant per cell.
pub fn is_semisimple(mode: &Mode, n: usize) -> Result<(bool, Vec<CellCertificate>)> {
    let mut certs = vec![];
    for r in 0..=n / 2 {
        let det = gram_det(mode, n, r)?;
        certs.push(CellCertificate {
            r,
            dim: enumerate_caps(n, r).len(),
            nonzero: !det.is_zero(),
            det,
        });
    }
    Ok((certs.iter().all(|c| c.nonzero), certs))
}

/// Quasi-heredity over the given mode: every cell form must be nonzero,
/// i.e. each Gram matrix has at least one nonzero entry.
pub fn is_quasi_hereditary(mode: &Mode, n: usize) -> Result<(bool, Vec<(usize, bool)>)> {
    let mut cells = vec![];
    for r in 0..=n / 2 {
        let gram = gram_matrix(mode, n, r)?;
        let nonzero = gram
            .entries
            .iter()
            .any(|row| row.iter().any(|s| !s.is_zero()));
        cells.push((r, nonzero));
    }
    Ok((cells.iter().all(|&(_, nz)| nz), cells))
}
