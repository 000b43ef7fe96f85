//! Modules over the diagram algebras: explicit action matrices,
//! intertwiner (hom) spaces, and semisimple decompositions.
//!
//! An algebra here is a tensor product of diagram algebras, described by
//! its factor arities; a module is described structurally (cell module,
//! regular module, outer tensor product, or restriction along the
//! juxtaposition embedding), and its action matrices are materialized on
//! demand. Hom spaces are cut out by the intertwiner equations against
//! the generators, which generate each factor as a unital algebra.

use std::fmt;

use crate::cell::{act, enumerate_caps, CapDiagram};
use crate::diagram::{enumerate_diagrams, PlanarDiagram};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::scalar::{Mode, Scalar};

pub type Matrix = Vec<Vec<Scalar>>;

/// Tensor product of diagram algebras, one factor per arity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Algebra {
    arities: Vec<usize>,
}

/// Basis element of an [`Algebra`]: one square diagram per factor.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct AlgebraElement {
    pub factors: Vec<PlanarDiagram>,
}

impl Algebra {
    pub fn single(n: usize) -> Self {
        Algebra { arities: vec![n] }
    }

    pub fn pair(k: usize, l: usize) -> Self {
        Algebra {
            arities: vec![k, l],
        }
    }

    pub fn arities(&self) -> &[usize] {
        &self.arities
    }

    pub fn identity(&self) -> AlgebraElement {
        AlgebraElement {
            factors: self
                .arities
                .iter()
                .map(|&n| PlanarDiagram::identity(n))
                .collect(),
        }
    }

    /// Full diagram basis: the cartesian product over the factors.
    pub fn basis(&self) -> Vec<AlgebraElement> {
        let mut out = vec![AlgebraElement { factors: vec![] }];
        for &n in &self.arities {
            let diagrams = enumerate_diagrams(n, n);
            let mut next = Vec::with_capacity(out.len() * diagrams.len());
            for partial in &out {
                for d in &diagrams {
                    let mut factors = partial.factors.clone();
                    factors.push(d.clone());
                    next.push(AlgebraElement { factors });
                }
            }
            out = next;
        }
        out
    }

    /// The hook generators of each factor, embedded with identities
    /// elsewhere. Together with the identity they generate the algebra,
    /// so commuting with them decides every intertwiner equation.
    pub fn generators(&self) -> Vec<AlgebraElement> {
        let mut out = vec![];
        for (slot, &n) in self.arities.iter().enumerate() {
            for i in 1..n {
                let mut factors: Vec<PlanarDiagram> = self
                    .arities
                    .iter()
                    .map(|&m| PlanarDiagram::identity(m))
                    .collect();
                factors[slot] = PlanarDiagram::e(n, i);
                out.push(AlgebraElement { factors });
            }
        }
        out
    }

    /// Product `a . b` (a stacked on top of b) per factor; the scalar
    /// collects the delta power from closed loops.
    pub fn multiply(
        &self,
        mode: &Mode,
        a: &AlgebraElement,
        b: &AlgebraElement,
    ) -> Result<(Scalar, AlgebraElement)> {
        let mut coeff = Scalar::one(mode);
        let mut factors = vec![];
        for (x, y) in a.factors.iter().zip(&b.factors) {
            let (diagram, loops) = y.compose_with_loops(x)?;
            coeff = &coeff * &Scalar::delta_pow(mode, loops);
            factors.push(diagram);
        }
        Ok((coeff, AlgebraElement { factors }))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for d in &self.factors {
            if !first {
                write!(f, " (x) ")?;
            }
            first = false;
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// A finite-dimensional left module described structurally.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ModuleRep {
    /// Cell module of the algebra on `n` points with `r` caps.
    Cell {
        mode: Mode,
        n: usize,
        r: usize,
        basis: Vec<CapDiagram>,
    },
    /// The algebra on `n` points acting on itself from the left.
    Regular {
        mode: Mode,
        n: usize,
        basis: Vec<PlanarDiagram>,
    },
    /// Outer tensor product; the algebra factors concatenate.
    Tensor(Box<ModuleRep>, Box<ModuleRep>),
    /// Module on `k + l` points seen over the pair algebra `(k, l)`
    /// through the side-by-side embedding.
    Restrict {
        inner: Box<ModuleRep>,
        k: usize,
        l: usize,
    },
}

impl ModuleRep {
    pub fn cell(mode: &Mode, n: usize, r: usize) -> Self {
        ModuleRep::Cell {
            mode: mode.clone(),
            n,
            r,
            basis: enumerate_caps(n, r),
        }
    }

    pub fn regular(mode: &Mode, n: usize) -> Self {
        ModuleRep::Regular {
            mode: mode.clone(),
            n,
            basis: enumerate_diagrams(n, n),
        }
    }

    pub fn tensor(a: ModuleRep, b: ModuleRep) -> Result<Self> {
        if a.mode() != b.mode() {
            return Err(Error::InvalidArgument(
                "tensor factors use different coefficient modes".into(),
            ));
        }
        Ok(ModuleRep::Tensor(Box::new(a), Box::new(b)))
    }

    pub fn restrict(inner: ModuleRep, k: usize, l: usize) -> Result<Self> {
        match inner.algebra().arities() {
            [n] if *n == k + l => Ok(ModuleRep::Restrict {
                inner: Box::new(inner),
                k,
                l,
            }),
            other => Err(Error::InvalidArgument(format!(
                "restriction to ({k}, {l}) needs a module on {} points, got arities {other:?}",
                k + l
            ))),
        }
    }

    pub fn mode(&self) -> &Mode {
        match self {
            ModuleRep::Cell { mode, .. } | ModuleRep::Regular { mode, .. } => mode,
            ModuleRep::Tensor(a, _) => a.mode(),
            ModuleRep::Restrict { inner, .. } => inner.mode(),
        }
    }

    pub fn algebra(&self) -> Algebra {
        match self {
            ModuleRep::Cell { n, .. } | ModuleRep::Regular { n, .. } => Algebra::single(*n),
            ModuleRep::Tensor(a, b) => {
                let mut arities = a.algebra().arities.clone();
                arities.extend(b.algebra().arities.iter().copied());
                Algebra { arities }
            }
            ModuleRep::Restrict { k, l, .. } => Algebra::pair(*k, *l),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ModuleRep::Cell { basis, .. } => basis.len(),
            ModuleRep::Regular { basis, .. } => basis.len(),
            ModuleRep::Tensor(a, b) => a.dim() * b.dim(),
            ModuleRep::Restrict { inner, .. } => inner.dim(),
        }
    }

    /// Matrix of the element acting on the chosen basis (columns are
    /// images of basis vectors). Every diagram sends a basis vector to a
    /// scalar multiple of a basis vector, so columns have at most one
    /// nonzero entry.
    pub fn action_matrix(&self, a: &AlgebraElement) -> Result<Matrix> {
        match self {
            ModuleRep::Cell { mode, basis, .. } => {
                let [d] = a.factors.as_slice() else {
                    return Err(Error::InvalidArgument(format!(
                        "expected 1 algebra factor, got {}",
                        a.factors.len()
                    )));
                };
                let dim = basis.len();
                let mut m = zero_matrix(mode, dim, dim);
                for (j, x) in basis.iter().enumerate() {
                    for (capd, coeff) in act(mode, d, x)?.terms() {
                        let i = basis.binary_search(capd).map_err(|_| {
                            Error::InvalidDiagram(format!("image {capd} not in basis"))
                        })?;
                        m[i][j] = coeff.clone();
                    }
                }
                Ok(m)
            }
            ModuleRep::Regular { mode, basis, .. } => {
                let [d] = a.factors.as_slice() else {
                    return Err(Error::InvalidArgument(format!(
                        "expected 1 algebra factor, got {}",
                        a.factors.len()
                    )));
                };
                let dim = basis.len();
                let mut m = zero_matrix(mode, dim, dim);
                for (j, x) in basis.iter().enumerate() {
                    let (diagram, loops) = x.compose_with_loops(d)?;
                    let i = basis
                        .binary_search(&diagram)
                        .map_err(|_| Error::InvalidDiagram(format!("image {diagram} not in basis")))?;
                    m[i][j] = Scalar::delta_pow(mode, loops);
                }
                Ok(m)
            }
            ModuleRep::Tensor(ma, mb) => {
                let split = ma.algebra().arities.len();
                if a.factors.len() != split + mb.algebra().arities.len() {
                    return Err(Error::InvalidArgument(format!(
                        "expected {} algebra factors, got {}",
                        split + mb.algebra().arities.len(),
                        a.factors.len()
                    )));
                }
                let left = AlgebraElement {
                    factors: a.factors[..split].to_vec(),
                };
                let right = AlgebraElement {
                    factors: a.factors[split..].to_vec(),
                };
                Ok(kron(
                    self.mode(),
                    &ma.action_matrix(&left)?,
                    &mb.action_matrix(&right)?,
                ))
            }
            ModuleRep::Restrict { inner, .. } => {
                let [x, y] = a.factors.as_slice() else {
                    return Err(Error::InvalidArgument(format!(
                        "expected 2 algebra factors, got {}",
                        a.factors.len()
                    )));
                };
                let glued = AlgebraElement {
                    factors: vec![x.juxtapose(y)],
                };
                inner.action_matrix(&glued)
            }
        }
    }

    /// Checks the action is multiplicative over the full diagram basis:
    /// rho(a . b) = rho(a) rho(b) including loop factors.
    pub fn audit_multiplicative(&self) -> Result<()> {
        let algebra = self.algebra();
        let mode = self.mode();
        let basis = algebra.basis();
        let mats: Vec<Matrix> = basis
            .iter()
            .map(|a| self.action_matrix(a))
            .collect::<Result<_>>()?;
        for (a, ma) in basis.iter().zip(&mats) {
            for (b, mb) in basis.iter().zip(&mats) {
                let (coeff, ab) = algebra.multiply(mode, a, b)?;
                let lhs = scale_matrix(&self.action_matrix(&ab)?, &coeff);
                let rhs = mat_mul(mode, ma, mb);
                if lhs != rhs {
                    return Err(Error::InvalidArgument(format!(
                        "action not multiplicative at {a} . {b}"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for ModuleRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleRep::Cell { n, r, .. } => write!(f, "cell:{n}:{r}"),
            ModuleRep::Regular { n, .. } => write!(f, "reg:{n}"),
            ModuleRep::Tensor(a, b) => write!(f, "tensor({a},{b})"),
            ModuleRep::Restrict { inner, k, l } => write!(f, "res({inner},{k},{l})"),
        }
    }
}

fn zero_matrix(mode: &Mode, rows: usize, cols: usize) -> Matrix {
    vec![vec![Scalar::zero(mode); cols]; rows]
}

pub fn mat_mul(mode: &Mode, a: &Matrix, b: &Matrix) -> Matrix {
    let rows = a.len();
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = zero_matrix(mode, rows, cols);
    for (i, arow) in a.iter().enumerate() {
        for (k, brow) in b.iter().enumerate() {
            if arow[k].is_zero() {
                continue;
            }
            for (j, bval) in brow.iter().enumerate() {
                if !bval.is_zero() {
                    out[i][j] = &out[i][j] + &(&arow[k] * bval);
                }
            }
        }
    }
    out
}

fn scale_matrix(a: &Matrix, c: &Scalar) -> Matrix {
    a.iter()
        .map(|row| row.iter().map(|x| x * c).collect())
        .collect()
}

pub fn kron(mode: &Mode, a: &Matrix, b: &Matrix) -> Matrix {
    let (ar, ac) = (a.len(), a.first().map_or(0, |r| r.len()));
    let (br, bc) = (b.len(), b.first().map_or(0, |r| r.len()));
    let mut out = zero_matrix(mode, ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            if a[i][j].is_zero() {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    if !b[k][l].is_zero() {
                        out[i * br + k][j * bc + l] = &a[i][j] * &b[k][l];
                    }
                }
            }
        }
    }
    out
}

/// Basis of intertwiners f: M -> N, returned as dim(N) x dim(M)
/// matrices. f must satisfy f(rho_M(g) x) = rho_N(g) f(x) for the
/// generators g, which suffices for the whole algebra.
pub fn hom_space(m: &ModuleRep, n: &ModuleRep) -> Result<Vec<Matrix>> {
    let algebra = m.algebra();
    if algebra != n.algebra() {
        return Err(Error::InvalidArgument(format!(
            "hom between modules over different algebras: {:?} vs {:?}",
            algebra.arities(),
            n.algebra().arities()
        )));
    }
    let mode = m.mode();
    if mode != n.mode() {
        return Err(Error::InvalidArgument(
            "hom between modules with different coefficient modes".into(),
        ));
    }
    let (dm, dn) = (m.dim(), n.dim());
    let unknowns = dm * dn;
    // Unknown F[i][k] (i < dn, k < dm) sits at column i * dm + k.
    let mut ech = Echelon::new(mode.clone(), unknowns);
    for g in algebra.generators() {
        let rm = m.action_matrix(&g)?;
        let rn = n.action_matrix(&g)?;
        // (F rho_M - rho_N F)[i][j] = 0
        for i in 0..dn {
            for j in 0..dm {
                let mut row = vec![Scalar::zero(mode); unknowns];
                for k in 0..dm {
                    if !rm[k][j].is_zero() {
                        row[i * dm + k] = &row[i * dm + k] + &rm[k][j];
                    }
                }
                for k in 0..dn {
                    if !rn[i][k].is_zero() {
                        row[k * dm + j] = &row[k * dm + j] - &rn[i][k];
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    ech.insert(row);
                }
            }
        }
    }
    let basis = ech
        .kernel_basis()
        .into_iter()
        .map(|v| {
            (0..dn)
                .map(|i| v[i * dm..(i + 1) * dm].to_vec())
                .collect::<Matrix>()
        })
        .collect();
    Ok(basis)
}

pub fn hom_dim(m: &ModuleRep, n: &ModuleRep) -> Result<usize> {
    Ok(hom_space(m, n)?.len())
}

/// Multiplicity of one simple summand in a decomposition report.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Summand {
    /// Cap count of the cell module in each algebra factor.
    pub labels: Vec<usize>,
    pub dim: usize,
    pub mult: usize,
}

/// Decomposes a module over a semisimple (tensor of) diagram algebra(s)
/// into cell modules: the multiplicity of each candidate simple is the
/// hom dimension into `m`. Fails if the multiplicities do not account
/// for the full dimension.
pub fn decompose_semisimple(m: &ModuleRep) -> Result<Vec<Summand>> {
    let algebra = m.algebra();
    let mode = m.mode();
    let mut label_sets: Vec<Vec<usize>> = vec![vec![]];
    for &n in algebra.arities() {
        let mut next = vec![];
        for partial in &label_sets {
            for r in 0..=n / 2 {
                let mut labels = partial.clone();
                labels.push(r);
                next.push(labels);
            }
        }
        label_sets = next;
    }
    let mut out = vec![];
    let mut accounted = 0usize;
    for labels in label_sets {
        let mut simple: Option<ModuleRep> = None;
        for (&n, &r) in algebra.arities().iter().zip(&labels) {
            let cell = ModuleRep::cell(mode, n, r);
            simple = Some(match simple {
                None => cell,
                Some(acc) => ModuleRep::tensor(acc, cell)?,
            });
        }
        let simple = simple.expect("at least one algebra factor");
        let mult = hom_dim(&simple, m)?;
        if mult > 0 {
            accounted += mult * simple.dim();
            out.push(Summand {
                labels,
                dim: simple.dim(),
                mult,
            });
        }
    }
    if accounted != m.dim() {
        return Err(Error::NotSemisimple {
            accounted,
            expected: m.dim(),
        });
    }
    Ok(out)
}
