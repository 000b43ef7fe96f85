//! Aggregated invariant suites with a machine-readable report.
//!
//! `verify_all` reruns every cross-module consistency check up to a
//! caller-chosen bound and reports one pass/fail line per suite.  The
//! sweeps clamp themselves to per-suite caps where the cost grows
//! steeply (hom solving, full-basis enumerations), and each clamp is
//! stated in the detail string so a report never overstates what ran.

use serde::Serialize;

use crate::cell::{
    enumerate_caps, gram_det, gram_matrix, is_semisimple, radical_dim,
};
use crate::diagram::{catalan, enumerate_diagrams};
use crate::g0::{
    composition_series, coproduct_coassociative, mackey_check, product_associative,
    sigma_add_through, struct_const_verified, walled_action, G0Vector,
};
use crate::rep::{hom_dim, ModuleRep};
use crate::scalar::{Mode, Rational, Scalar};
use crate::tower::{
    check_axioms, eq1_route, ind_cell, ind_cell_solver, res_cell, res_cell_solver,
};

/// Outcome of one named invariant suite.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of a full verification run.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub max_n: usize,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn from_checks(max_n: usize, checks: Vec<CheckResult>) -> Self {
        VerifyReport {
            max_n,
            pass: checks.iter().all(|c| c.pass),
            checks,
        }
    }
}

fn check(name: &str, body: impl FnOnce() -> Result<String, String>) -> CheckResult {
    match body() {
        Ok(detail) => CheckResult {
            name: name.to_string(),
            pass: true,
            detail,
        },
        Err(witness) => CheckResult {
            name: name.to_string(),
            pass: false,
            detail: witness,
        },
    }
}

fn binom(n: usize, k: isize) -> u128 {
    if k < 0 || k as usize > n {
        return 0;
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn check_catalan_counts(max_n: usize) -> CheckResult {
    let bound = max_n.min(10);
    check("diagram-count-catalan", || {
        for n in 0..=bound {
            let got = enumerate_diagrams(n, n).len();
            if got != catalan(n) {
                return Err(format!("n={n}: enumerated {got}, catalan says {}", catalan(n)));
            }
        }
        Ok(format!("square-diagram counts match catalan numbers for n <= {bound}"))
    })
}

fn check_cap_counts(max_n: usize) -> CheckResult {
    let bound = max_n.min(12);
    check("cap-count-formula", || {
        for n in 0..=bound {
            for r in 0..=n / 2 {
                let got = enumerate_caps(n, r).len() as u128;
                let want = binom(n, r as isize) - binom(n, r as isize - 1);
                if got != want {
                    return Err(format!("(n,r)=({n},{r}): enumerated {got}, formula {want}"));
                }
            }
        }
        Ok(format!("cap counts match binomial differences for n <= {bound}"))
    })
}

fn check_composition_associativity(max_n: usize) -> CheckResult {
    let bound = max_n.min(3);
    check("composition-associativity", || {
        for n in 0..=bound {
            let basis = enumerate_diagrams(n, n);
            for f in &basis {
                for g in &basis {
                    for h in &basis {
                        let (fg, l1) = f.compose_with_loops(g).map_err(|e| e.to_string())?;
                        let (fg_h, l2) = fg.compose_with_loops(h).map_err(|e| e.to_string())?;
                        let (gh, r1) = g.compose_with_loops(h).map_err(|e| e.to_string())?;
                        let (f_gh, r2) = f.compose_with_loops(&gh).map_err(|e| e.to_string())?;
                        if fg_h != f_gh || l1 + l2 != r1 + r2 {
                            return Err(format!("n={n}: ({f} . {g}) . {h} differs"));
                        }
                    }
                }
            }
        }
        Ok(format!("triple compositions agree (diagram and loop count) for n <= {bound}"))
    })
}

fn check_gram_certificates(max_n: usize) -> CheckResult {
    check("gram-determinants", || {
        let generic = Mode::Generic;
        if max_n >= 2 {
            let det = gram_det(&generic, 2, 1).map_err(|e| e.to_string())?;
            if det != Scalar::delta_pow(&generic, 1) {
                return Err(format!("gram_det(2,1) = {det}, expected δ"));
            }
        }
        if max_n >= 3 {
            let det = gram_det(&generic, 3, 1).map_err(|e| e.to_string())?;
            let want = crate::scalar::DeltaPoly::from_ints(&[-1, 0, 1]);
            if det != Scalar::from_poly(want) {
                return Err(format!("gram_det(3,1) = {det}, expected δ^2 - 1"));
            }
            if radical_dim(3, 1, &Rational::from_int(1)).map_err(|e| e.to_string())? != 1 {
                return Err("radical of the 3-point middle cell at δ=1 is not 1-dimensional".into());
            }
        }
        for n in 0..=max_n.min(8) {
            let det = gram_det(&generic, n, 0).map_err(|e| e.to_string())?;
            if !det.is_one() {
                return Err(format!("gram_det({n},0) = {det}, expected 1"));
            }
            let gm = gram_matrix(&generic, n, n / 2).map_err(|e| e.to_string())?;
            for i in 0..gm.basis.len() {
                for j in 0..i {
                    if gm.entries[i][j] != gm.entries[j][i] {
                        return Err(format!("gram({n},{}) not symmetric at ({i},{j})", n / 2));
                    }
                }
            }
        }
        Ok(format!(
            "fixed determinants, defect-free dets, symmetry, and the δ=1 radical agree (n <= {})",
            max_n.min(8)
        ))
    })
}

fn check_semisimplicity(max_n: usize) -> CheckResult {
    let bound = max_n.min(8);
    check("semisimplicity-certificates", || {
        for n in 0..=bound {
            let (ok, certs) = is_semisimple(&Mode::Generic, n).map_err(|e| e.to_string())?;
            if !ok {
                return Err(format!("generic δ: n={n} reported non-semisimple"));
            }
            for c in &certs {
                if !c.nonzero {
                    return Err(format!("generic δ: n={n}, cell {} has zero determinant", c.r));
                }
            }
            let (ok3, _) = is_semisimple(&Mode::at_int(3), n).map_err(|e| e.to_string())?;
            if !ok3 {
                return Err(format!("δ=3: n={n} reported non-semisimple"));
            }
        }
        if bound >= 3 {
            let (bad, _) = is_semisimple(&Mode::at_int(1), 3).map_err(|e| e.to_string())?;
            if bad {
                return Err("δ=1: the 3-point algebra passed but must fail".into());
            }
        }
        Ok(format!("generic and δ=3 certificates all nonzero for n <= {bound}; δ=1 fails at n=3"))
    })
}

fn check_branching(max_n: usize) -> CheckResult {
    let bound = max_n.min(6);
    check("branching-rules", || {
        for n in 1..=bound {
            for p in 0..=n / 2 {
                let expect = res_cell(n, p).map_err(|e| e.to_string())?;
                let got = res_cell_solver(n, p).map_err(|e| e.to_string())?;
                if got != expect {
                    return Err(format!("restriction of ({n},{p}): solver {got:?} vs rule {expect:?}"));
                }
            }
        }
        for n in 0..=bound.saturating_sub(1) {
            for p in 0..=n / 2 {
                let expect = ind_cell(n, p).map_err(|e| e.to_string())?;
                let got = ind_cell_solver(n, p).map_err(|e| e.to_string())?;
                if got != expect {
                    return Err(format!("induction of ({n},{p}): solver {got:?} vs rule {expect:?}"));
                }
            }
        }
        Ok(format!("solver reproduces the two-term branching rules for n <= {bound}"))
    })
}

fn check_two_step_induction(max_n: usize) -> CheckResult {
    let bound = max_n.min(6);
    check("two-step-induction-route", || {
        for n in 0..=bound.saturating_sub(2) {
            for p in 0..=n / 2 {
                let got = eq1_route(n, p).map_err(|e| e.to_string())?;
                let expect = ind_cell(n, p).map_err(|e| e.to_string())?;
                if got != expect {
                    return Err(format!("({n},{p}): route gives {got:?}, rule gives {expect:?}"));
                }
            }
        }
        Ok(format!(
            "gluing isomorphism plus one restriction equals induction for n <= {}",
            bound.saturating_sub(2)
        ))
    })
}

fn check_tower_axioms(max_n: usize) -> CheckResult {
    let bound = max_n.min(6);
    check("tower-axioms", || {
        let report = check_axioms(bound).map_err(|e| e.to_string())?;
        if !report.pass {
            return Err(format!("axiom sweep failed: {report:?}"));
        }
        Ok(format!(
            "bending bijections, support bounds, adjunction witnesses, and pairing ranks pass for n <= {bound}"
        ))
    })
}

fn check_series_dimensions(max_n: usize) -> CheckResult {
    let bound = max_n.min(12);
    check("walled-series-dimensions", || {
        for m in 0..=bound {
            for n in 0..=bound - m {
                for r in 0..=(m + n) / 2 {
                    let total: usize = composition_series(m, n, r)
                        .map_err(|e| e.to_string())?
                        .iter()
                        .map(|(_, d)| d)
                        .sum();
                    let want = enumerate_caps(m + n, r).len();
                    if total != want {
                        return Err(format!("({m}|{n},{r}): layers sum to {total}, module has {want}"));
                    }
                }
            }
        }
        Ok(format!("filtration layer dimensions sum to the cell dimension for m+n <= {bound}"))
    })
}

fn check_struct_consts(max_n: usize) -> CheckResult {
    let bound = max_n.min(10);
    let hom_bound = max_n.min(7);
    check("structure-constant-agreement", || {
        for m in 0..=bound {
            for n in 0..=bound - m {
                for r in 0..=(m + n) / 2 {
                    for p in 0..=m / 2 {
                        for q in 0..=n / 2 {
                            let with_hom = m + n <= hom_bound;
                            struct_const_verified(m, n, p, q, r, with_hom)
                                .map_err(|e| e.to_string())?;
                        }
                    }
                }
            }
        }
        Ok(format!(
            "closed, walled{} constants agree for m+n <= {bound}",
            if hom_bound >= 2 {
                format!(", and hom (m+n <= {hom_bound})")
            } else {
                String::new()
            }
        ))
    })
}

fn check_filtration_monotonicity(max_n: usize) -> CheckResult {
    let bound = max_n.min(7);
    check("filtration-monotonicity", || {
        let mode = Mode::at_int(3);
        for m in 1..=bound.saturating_sub(1) {
            for n in 1..=bound - m {
                let left = enumerate_diagrams(m, m);
                let right = enumerate_diagrams(n, n);
                for r in 0..=(m + n) / 2 {
                    for (w, t) in crate::g0::enumerate_walled(m, n, r) {
                        for a in &left {
                            for b in &right {
                                for (out, _) in
                                    walled_action(&mode, a, b, &w).map_err(|e| e.to_string())?
                                {
                                    let t2 = out.triple();
                                    if t2.s > t.s || t2.l_m < t.l_m || t2.l_n < t.l_n || t2 > t {
                                        return Err(format!(
                                            "{a} x {b} on {w}: index {t} -> {t2}"
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(format!(
            "through strings never increase, side caps never decrease, for m+n <= {bound}"
        ))
    })
}

fn check_sigma_layers(max_n: usize) -> CheckResult {
    let bound = max_n.min(7);
    check("sigma-layer-bijections", || {
        for m in 0..=bound {
            for n in 0..=bound - m {
                for r in 0..=(m + n) / 2 {
                    for (t, dim) in composition_series(m, n, r).map_err(|e| e.to_string())? {
                        let mut images = std::collections::BTreeSet::new();
                        for u in enumerate_caps(m, t.l_m) {
                            for v in enumerate_caps(n, t.l_n) {
                                let w =
                                    sigma_add_through(&u, &v, t.s).map_err(|e| e.to_string())?;
                                if w.triple() != t {
                                    return Err(format!("σ image of ({u}, {v}) left layer {t}"));
                                }
                                images.insert(w);
                            }
                        }
                        if images.len() != dim {
                            return Err(format!(
                                "layer {t} of ({m}|{n},{r}): {} distinct images, dim {dim}",
                                images.len()
                            ));
                        }
                    }
                }
            }
        }
        Ok(format!("σ is injective onto every layer for m+n <= {bound}"))
    })
}

fn check_mackey(max_n: usize) -> CheckResult {
    let bound = max_n.min(8);
    check("mackey-defect", || {
        for n in 1..=bound {
            for p in 0..=n / 2 {
                let interior = p > 0 && 2 * (p + 1) <= n + 1;
                let report = mackey_check(n, p).map_err(|e| e.to_string())?;
                if interior {
                    if report.equal || report.difference != G0Vector::class(n, p) {
                        return Err(format!(
                            "({n},{p}): difference {} instead of one copy of the input class",
                            report.difference
                        ));
                    }
                } else if p == 0 && !report.equal {
                    return Err(format!("({n},0): boundary sides differ: {}", report.difference));
                }
            }
        }
        Ok(format!(
            "restriction-after-induction exceeds the bialgebra expansion by exactly one class, n <= {bound}"
        ))
    })
}

fn check_bialgebra_laws(max_n: usize) -> CheckResult {
    let bound = max_n.min(4);
    check("product-coproduct-laws", || {
        let mut classes = Vec::new();
        for n in 0..=bound {
            for r in 0..=n / 2 {
                classes.push(G0Vector::class(n, r));
            }
        }
        for x in &classes {
            for y in &classes {
                for z in &classes {
                    if !product_associative(x, y, z) {
                        return Err(format!("associativity fails on {x}, {y}, {z}"));
                    }
                }
            }
        }
        for x in &classes {
            if !coproduct_coassociative(x) {
                return Err(format!("coassociativity fails on {x}"));
            }
        }
        Ok(format!("product associative and coproduct coassociative on grades <= {bound}"))
    })
}

fn check_hom_vanishing(max_n: usize) -> CheckResult {
    let bound = max_n.min(6);
    check("hom-vanishing-between-cells", || {
        let mode = Mode::Generic;
        for n in 0..=bound {
            for a in 0..=n / 2 {
                for b in 0..=n / 2 {
                    let d = hom_dim(
                        &ModuleRep::cell(&mode, n, a),
                        &ModuleRep::cell(&mode, n, b),
                    )
                    .map_err(|e| e.to_string())?;
                    let want = usize::from(a == b);
                    if d != want {
                        return Err(format!("hom(Δ_{n}({a}), Δ_{n}({b})) has dimension {d}"));
                    }
                }
            }
        }
        Ok(format!(
            "hom between distinct cells vanishes and endomorphisms are scalars for n <= {bound}"
        ))
    })
}

/// Runs every invariant suite up to `max_n` (clamped per suite where the
/// cost explodes) and aggregates the outcomes.
pub fn verify_all(max_n: usize) -> VerifyReport {
    let checks = vec![
        check_catalan_counts(max_n),
        check_cap_counts(max_n),
        check_composition_associativity(max_n),
        check_gram_certificates(max_n),
        check_semisimplicity(max_n),
        check_branching(max_n),
        check_two_step_induction(max_n),
        check_tower_axioms(max_n),
        check_series_dimensions(max_n),
        check_struct_consts(max_n),
        check_filtration_monotonicity(max_n),
        check_sigma_layers(max_n),
        check_mackey(max_n),
        check_bialgebra_laws(max_n),
        check_hom_vanishing(max_n),
    ];
    VerifyReport::from_checks(max_n, checks)
}
