//! Randomized algebraic laws.  Each property states an identity that
//! must hold for every input, then hammers it with generated cases.

use proptest::prelude::*;

use tlcat_core::diagram::enumerate_diagrams;
use tlcat_core::g0::{struct_const, StructMethod};
use tlcat_core::scalar::{DeltaPoly, Mode, Rational, Scalar};

fn small_poly() -> impl Strategy<Value = DeltaPoly> {
    prop::collection::vec(-6i64..=6, 0..5).prop_map(|c| DeltaPoly::from_ints(&c))
}

/// Full rational functions p/q with q != 0.
fn generic_fraction() -> impl Strategy<Value = Scalar> {
    (small_poly(), small_poly())
        .prop_filter("nonzero denominator", |(_, q)| !q.is_zero())
        .prop_map(|(p, q)| &Scalar::from_poly(p) / &Scalar::from_poly(q))
}

fn numeric_scalar() -> impl Strategy<Value = Scalar> {
    (-30i64..=30, 1i64..=12).prop_map(|(a, b)| Scalar::from_rational(Rational::new(a, b)))
}

proptest! {
    #[test]
    fn generic_scalars_form_a_commutative_ring(
        a in generic_fraction(),
        b in generic_fraction(),
        c in generic_fraction(),
    ) {
        let mode = Mode::Generic;
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &Scalar::zero(&mode), a.clone());
        prop_assert_eq!(&a * &Scalar::one(&mode), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn nonzero_generic_scalars_invert(a in generic_fraction()) {
        prop_assume!(!a.is_zero());
        let inv = a.recip().unwrap();
        prop_assert!((&(&a * &inv) - &Scalar::one(&Mode::Generic)).is_zero());
    }

    #[test]
    fn division_round_trips(a in generic_fraction(), b in generic_fraction()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(&(&a / &b) * &b, a);
    }

    #[test]
    fn numeric_scalars_form_a_field(
        a in numeric_scalar(),
        b in numeric_scalar(),
        c in numeric_scalar(),
    ) {
        let mode = Mode::at_int(0);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
        }
        prop_assert_eq!(&a * &Scalar::one(&mode), a);
    }

    #[test]
    fn specialization_is_a_ring_homomorphism(
        p in small_poly(),
        q in small_poly(),
        num in -9i64..=9,
        den in 1i64..=4,
    ) {
        let x = Rational::new(num, den);
        let (a, b) = (Scalar::from_poly(p), Scalar::from_poly(q));
        let sum = (&a + &b).specialize(&x).unwrap();
        let prod = (&a * &b).specialize(&x).unwrap();
        let (ax, bx) = (a.specialize(&x).unwrap(), b.specialize(&x).unwrap());
        prop_assert_eq!(sum, &ax + &bx);
        prop_assert_eq!(prod, &ax * &bx);
    }

    #[test]
    fn polynomial_division_recombines(a in small_poly(), b in small_poly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn gcd_divides_both_arguments(a in small_poly(), b in small_poly()) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = a.gcd(&b);
        prop_assert!(!g.is_zero());
        prop_assert!(a.div_rem(&g).1.is_zero());
        prop_assert!(b.div_rem(&g).1.is_zero());
    }

    #[test]
    fn polynomial_evaluation_is_a_homomorphism(
        a in small_poly(),
        b in small_poly(),
        num in -9i64..=9,
        den in 1i64..=4,
    ) {
        let x = Rational::new(num, den);
        prop_assert_eq!((&a + &b).eval(&x), &a.eval(&x) + &b.eval(&x));
        prop_assert_eq!((&a * &b).eval(&x), &a.eval(&x) * &b.eval(&x));
    }

    /// Composition of rectangular diagrams is associative, including the
    /// count of closed loops swallowed at each gluing.  Point counts are
    /// built parity-consistent so every generated triple composes.
    #[test]
    fn composition_is_associative_across_mixed_shapes(
        a in 0usize..=4,
        steps in (0usize..=2, 0usize..=2, 0usize..=2),
        picks in (any::<u32>(), any::<u32>(), any::<u32>()),
    ) {
        let b = a % 2 + 2 * steps.0;
        let c = b % 2 + 2 * steps.1;
        let d = c % 2 + 2 * steps.2;
        let fs = enumerate_diagrams(a, b);
        let gs = enumerate_diagrams(b, c);
        let hs = enumerate_diagrams(c, d);
        let f = &fs[picks.0 as usize % fs.len()];
        let g = &gs[picks.1 as usize % gs.len()];
        let h = &hs[picks.2 as usize % hs.len()];
        let (fg, l1) = f.compose_with_loops(g).unwrap();
        let (left, l2) = fg.compose_with_loops(h).unwrap();
        let (gh, l3) = g.compose_with_loops(h).unwrap();
        let (right, l4) = f.compose_with_loops(&gh).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(l1 + l2, l3 + l4);
    }

    /// Flipping a diagram upside down reverses composition order and
    /// squares to the identity.
    #[test]
    fn involution_reverses_composition(
        a in 0usize..=4,
        steps in (0usize..=2, 0usize..=2),
        picks in (any::<u32>(), any::<u32>()),
    ) {
        let b = a % 2 + 2 * steps.0;
        let c = b % 2 + 2 * steps.1;
        let fs = enumerate_diagrams(a, b);
        let gs = enumerate_diagrams(b, c);
        let f = &fs[picks.0 as usize % fs.len()];
        let g = &gs[picks.1 as usize % gs.len()];
        prop_assert_eq!(f.involution().involution(), f.clone());
        let (fg, l1) = f.compose_with_loops(g).unwrap();
        let (star, l2) = g.involution().compose_with_loops(&f.involution()).unwrap();
        prop_assert_eq!(fg.involution(), star);
        prop_assert_eq!(l1, l2);
    }

    /// Reflecting the wall swaps the two sides of every count.
    #[test]
    fn structure_constants_have_mirror_symmetry(
        m in 0usize..=4,
        n in 0usize..=4,
        raw in (any::<u8>(), any::<u8>(), any::<u8>()),
    ) {
        let p = raw.0 as usize % (m / 2 + 1);
        let q = raw.1 as usize % (n / 2 + 1);
        let r = raw.2 as usize % ((m + n) / 2 + 1);
        let lhs = struct_const(m, n, p, q, r, StructMethod::Walled).unwrap();
        let rhs = struct_const(n, m, q, p, r, StructMethod::Walled).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
