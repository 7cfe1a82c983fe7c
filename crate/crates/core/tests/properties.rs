use diagram_gram::determinant::{det_at, det_direct};
use diagram_gram::gram::build_gram;
use diagram_gram::polynomials::parse_rational;
use diagram_gram::reduction::{reduce, reduce_sequential, CoarseningPoset};
use diagram_gram::stirling::{b_z2, StirlingParams};
use diagram_gram::{Algebra, Params, PartitionDiagram, Poly, SetPartition, Z2Diagram};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-20i64..=20, 0..6).prop_map(|c| Poly::from_ints(&c))
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=7).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn partition(n: usize) -> impl Strategy<Value = SetPartition> {
    prop::collection::vec(0..n.max(1), n).prop_map(|l| SetPartition::from_labels(&l))
}

fn partition_diagram(k: usize) -> impl Strategy<Value = PartitionDiagram> {
    partition(2 * k).prop_map(move |p| PartitionDiagram::new(k, p).unwrap())
}

/// Random partition closed under the e/g swap.
fn z2_diagram(k: usize) -> impl Strategy<Value = Z2Diagram> {
    partition(4 * k).prop_map(move |p| {
        let closed = p.join(&p.map(|v| v ^ 1)).unwrap();
        Z2Diagram::new(k, closed).unwrap()
    })
}

fn admissible() -> impl Strategy<Value = Params> {
    let all: Vec<Params> = (1..=3)
        .flat_map(|k| [Algebra::Partition, Algebra::Z2, Algebra::Signed].into_iter().flat_map(move |a| Params::admissible(a, k)))
        .collect();
    prop::sample::select(all)
}

proptest! {
    #[test]
    fn poly_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
    }

    #[test]
    fn poly_eval_is_homomorphism(a in poly(), b in poly(), q in rational()) {
        prop_assert_eq!((&a + &b).eval(&q), a.eval(&q) + b.eval(&q));
        prop_assert_eq!((&a * &b).eval(&q), a.eval(&q) * b.eval(&q));
    }

    #[test]
    fn poly_degree_of_product(a in poly(), b in poly()) {
        let p = &a * &b;
        match (a.degree(), b.degree()) {
            (Some(x), Some(y)) => prop_assert_eq!(p.degree(), Some(x + y)),
            _ => prop_assert!(p.is_zero()),
        }
    }

    #[test]
    fn poly_text_roundtrip(a in poly()) {
        let back: Poly = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn rational_text_roundtrip(q in rational()) {
        prop_assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn join_is_least_upper_bound(a in partition(7), b in partition(7)) {
        let j = a.join(&b).unwrap();
        prop_assert_eq!(&j, &b.join(&a).unwrap());
        prop_assert_eq!(&a.join(&a).unwrap(), &a);
        prop_assert!(j.is_coarser(&a).unwrap());
        prop_assert!(j.is_coarser(&b).unwrap());
        prop_assert!(a.is_coarser(&a).unwrap());
        prop_assert!(a.is_coarser(&SetPartition::discrete(7)).unwrap());
    }

    #[test]
    fn labels_roundtrip(a in partition(8)) {
        prop_assert_eq!(SetPartition::from_labels(&a.labels()), a);
    }

    #[test]
    fn partition_diagram_associative(a in partition_diagram(3), b in partition_diagram(3), c in partition_diagram(3)) {
        let (ab, l1) = a.multiply(&b).unwrap();
        let (ab_c, l2) = ab.multiply(&c).unwrap();
        let (bc, l3) = b.multiply(&c).unwrap();
        let (a_bc, l4) = a.multiply(&bc).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(l1 + l2, l3 + l4);
    }

    #[test]
    fn partition_diagram_identity(a in partition_diagram(4)) {
        let id = PartitionDiagram::identity(4);
        prop_assert_eq!(a.multiply(&id).unwrap(), (a.clone(), 0));
        prop_assert_eq!(id.multiply(&a).unwrap(), (a.clone(), 0));
    }

    #[test]
    fn propagating_number_never_grows(a in partition_diagram(4), b in partition_diagram(4)) {
        let (ab, _) = a.multiply(&b).unwrap();
        prop_assert!(ab.propagating_number() <= a.propagating_number().min(b.propagating_number()));
    }

    #[test]
    fn z2_diagram_associative(a in z2_diagram(2), b in z2_diagram(2), c in z2_diagram(2)) {
        let (ab, l1) = a.multiply(&b).unwrap();
        let (ab_c, l2) = ab.multiply(&c).unwrap();
        let (bc, l3) = b.multiply(&c).unwrap();
        let (a_bc, l4) = a.multiply(&bc).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(l1 + l2, l3 + l4);
    }

    #[test]
    fn z2_product_stays_swap_stable(a in z2_diagram(3), b in z2_diagram(3)) {
        let (ab, _) = a.multiply(&b).unwrap();
        let p = ab.partition();
        prop_assert_eq!(&p.map(|v| v ^ 1), p);
        prop_assert!(Z2Diagram::new(3, p.clone()).is_ok());
    }

    #[test]
    fn z2_identity(a in z2_diagram(3)) {
        let id = Z2Diagram::identity(3);
        prop_assert_eq!(a.multiply(&id).unwrap(), (a.clone(), 0));
    }

    #[test]
    fn stirling_window(s1 in 0usize..4, s2 in 0usize..4, r1 in 0usize..4, r2 in 0usize..4, p1 in 0usize..4, p2 in 0usize..9) {
        let sp = StirlingParams::new(s1, s2, r1, r2, p1, p2);
        let v = b_z2(&sp);
        if sp.is_diagonal() {
            prop_assert!(v.is_one());
        } else if !sp.in_window() {
            prop_assert!(v.is_zero());
        }
        prop_assert!(v >= BigInt::zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gram_symmetric_with_monic_det(p in admissible()) {
        let g = build_gram(&p).unwrap();
        let n = g.dim();
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(g.exponents[u][v], g.exponents[v][u]);
            }
        }
        let d = det_direct(&g.entries());
        prop_assert!(d.is_monic());
        prop_assert!(d.is_integral());
    }

    #[test]
    fn det_direct_agrees_with_evaluation(p in admissible(), q in rational()) {
        let g = build_gram(&p).unwrap();
        let e = g.entries();
        prop_assert_eq!(det_direct(&e).eval(&q), det_at(&e, &q));
    }

    #[test]
    fn closed_form_and_sequential_reductions_agree(p in admissible()) {
        let g = build_gram(&p).unwrap();
        let poset = CoarseningPoset::new(&g.basis);
        prop_assert!(poset.is_upper_triangular());
        let d = reduce(&g, &poset).unwrap();
        prop_assert_eq!(&d.reduced, &reduce_sequential(&g, &poset));
        prop_assert!(d.off_block_zero());
        prop_assert!(d.strict_diffs().is_empty());
    }
}
